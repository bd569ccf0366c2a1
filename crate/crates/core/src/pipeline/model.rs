use std::fmt;

use num_traits::Zero;

use crate::algebra::{ExtScalar, GaussianRational};
use crate::error::PipelineError;
use crate::exterior::{BundleForm, DIM};

use super::bundle::{LAMBDA, RHO, SIGMA, ZETA, ZETA_BAR};

/// Structure constants `[e_a, e_b] = Σ_k c^k_ab e_k` on the basis
/// `(e_α, e_σ, e_ρ, e_ζ, e_ζ̄)`, indexed like the bundle coframe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelAlgebra {
    table: Vec<Vec<[GaussianRational; DIM]>>,
}

fn zero_vec() -> [GaussianRational; DIM] {
    std::array::from_fn(|_| GaussianRational::from_integer(0))
}

impl ModelAlgebra {
    fn empty() -> Self {
        Self { table: vec![vec![zero_vec(); DIM]; DIM] }
    }

    fn set(&mut self, a: usize, b: usize, k: usize, c: GaussianRational) {
        self.table[b][a][k] = -&c;
        self.table[a][b][k] = c;
    }

    /// The algebra dual to constant-coefficient structure equations:
    /// `[e_a, e_b] = −Σ_k W^k_ab e_k` where `dω^k = Σ_{a<b} W^k_ab ω^a∧ω^b`.
    pub fn from_structure(structure: &[BundleForm<ExtScalar>; DIM]) -> Result<Self, PipelineError> {
        let mut alg = Self::empty();
        for (k, dw) in structure.iter().enumerate() {
            for a in 0..DIM {
                for b in a + 1..DIM {
                    let c = dw.coeff(&[a, b]);
                    let w = c.at_weight(0).and_then(|s| s.as_constant()).ok_or_else(|| PipelineError::Consistency {
                        check: "structure equations have constant coefficients".into(),
                        residual: c.to_string(),
                    })?;
                    alg.set(a, b, k, -&w);
                }
            }
        }
        Ok(alg)
    }

    /// The bracket table of the flat model.
    pub fn flat_model() -> Self {
        let mut alg = Self::empty();
        let n = GaussianRational::from_integer;
        alg.set(LAMBDA, SIGMA, SIGMA, n(-3));
        alg.set(LAMBDA, RHO, RHO, n(-2));
        alg.set(LAMBDA, ZETA, ZETA, n(-1));
        alg.set(LAMBDA, ZETA_BAR, ZETA_BAR, n(-1));
        alg.set(RHO, ZETA, SIGMA, n(-1));
        alg.set(RHO, ZETA_BAR, SIGMA, n(-1));
        alg.set(ZETA, ZETA_BAR, RHO, -&GaussianRational::i());
        alg
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[GaussianRational; DIM] {
        &self.table[a][b]
    }

    fn bracket_vec(&self, u: &[GaussianRational; DIM], v: &[GaussianRational; DIM]) -> [GaussianRational; DIM] {
        let mut out = zero_vec();
        for a in 0..DIM {
            for b in 0..DIM {
                let uv = &u[a] * &v[b];
                if uv.is_zero() {
                    continue;
                }
                for k in 0..DIM {
                    out[k] = &out[k] + &(&uv * &self.table[a][b][k]);
                }
            }
        }
        out
    }

    /// Basis triples `(a, b, c)` where the Jacobi identity fails.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let basis = |i: usize| -> [GaussianRational; DIM] { std::array::from_fn(|k| GaussianRational::from_integer(i64::from(k == i))) };
        let mut bad = Vec::new();
        for a in 0..DIM {
            for b in a + 1..DIM {
                for c in b + 1..DIM {
                    let (ea, eb, ec) = (basis(a), basis(b), basis(c));
                    let t1 = self.bracket_vec(&ea, &self.bracket_vec(&eb, &ec));
                    let t2 = self.bracket_vec(&eb, &self.bracket_vec(&ec, &ea));
                    let t3 = self.bracket_vec(&ec, &self.bracket_vec(&ea, &eb));
                    if (0..DIM).any(|k| !(&(&t1[k] + &t2[k]) + &t3[k]).is_zero()) {
                        bad.push((a, b, c));
                    }
                }
            }
        }
        bad
    }
}

const NAMES: [&str; DIM] = ["e_alpha", "e_sigma", "e_rho", "e_zeta", "e_zetabar"];

impl fmt::Display for ModelAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..DIM {
            for b in a + 1..DIM {
                let terms: Vec<String> =
                    (0..DIM).filter(|&k| !self.table[a][b][k].is_zero()).map(|k| format!("{}*{}", self.table[a][b][k], NAMES[k])).collect();
                if !terms.is_empty() {
                    writeln!(f, "[{}, {}] = {}", NAMES[a], NAMES[b], terms.join(" + "))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_model_satisfies_jacobi() {
        let m = ModelAlgebra::flat_model();
        assert!(m.jacobi_violations().is_empty());
        assert_eq!(m.bracket(ZETA, ZETA_BAR)[RHO], -&GaussianRational::i());
        assert_eq!(m.bracket(SIGMA, LAMBDA)[SIGMA], GaussianRational::from_integer(3));
    }
}
