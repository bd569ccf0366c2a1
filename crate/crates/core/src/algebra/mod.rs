//! Exact arithmetic kernel: Gaussian rationals, polynomials and rational
//! functions in `(x, y, u1, u2)`, the extension by `B^{1/2}`, and the
//! expression parser.

pub mod ext;
pub mod gaussian;
pub mod gcd;
pub mod modular;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod rational;
pub mod sqrt;

pub use ext::ExtScalar;
pub use gaussian::GaussianRational;
pub use gcd::{gcd, gcd_cofactors};
pub use monomial::{Monomial, Var};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use rational::RationalFunction;
pub use sqrt::{Branch, SqrtContext};
