use clap::Parser;
use engel_cli::app::{Cli, EXIT_INPUT};
use engel_cli::Io;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let code = engel_cli::run(cli, &mut Io { out: &mut out, err: &mut err });
    std::process::exit(code);
}
