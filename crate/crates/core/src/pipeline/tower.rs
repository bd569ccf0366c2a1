use crate::error::PipelineError;
use crate::exterior::{conj_form, BundleForm, Coframe};
use crate::scalar::Scalar;

use super::checks::CheckLog;
use super::frame::Frame;
use super::normalize::Normalizations;
use super::structure::StructureFunctions;

/// A base coframe `(σ, ρ, ζ, ζ̄)` over the basis `ω₀`.
pub type BaseCoframe<S> = [BundleForm<S>; 4];

/// The coframes `ω₀ → ω₁ → ω₂ → ω₃`, each expressed over `ω₀`.
#[derive(Clone, Debug)]
pub struct CoframeTower<S> {
    pub levels: [BaseCoframe<S>; 4],
}

impl<S: Scalar> CoframeTower<S> {
    pub fn omega3(&self) -> &BaseCoframe<S> {
        &self.levels[3]
    }
}

fn scaled<S: Scalar>(w: &BundleForm<S>, s: &S) -> BundleForm<S> {
    w.scale_base(s)
}

fn with_conj<S: Scalar>(frame: &Frame<S>, sigma: BundleForm<S>, rho: BundleForm<S>, zeta: BundleForm<S>) -> BaseCoframe<S> {
    let zeta_bar = conj_form(&zeta, &frame.calculus);
    [sigma, rho, zeta, zeta_bar]
}

/// Applies `σ₁ = σ₀/β`, `ζ₁ = ζ₀/β`, `ρ₂ = ρ₁ + C₀σ₁`, `ζ₂ = ζ₁ + B₀ρ₁`,
/// `ζ₃ = ζ₂ + D₀σ₂`.
pub fn build_coframe_tower<S: Scalar>(
    frame: &Frame<S>,
    sf: &StructureFunctions<S>,
    n: &Normalizations<S>,
    log: &mut CheckLog,
) -> Result<CoframeTower<S>, PipelineError> {
    let inv_beta = sf.beta.try_inv()?;
    let basis = |i: usize| BundleForm::<S>::basis(i + 1);
    let omega0: BaseCoframe<S> = std::array::from_fn(basis);

    let sigma1 = scaled(&omega0[0], &inv_beta);
    let zeta1 = scaled(&omega0[2], &inv_beta);
    let omega1 = with_conj(frame, sigma1.clone(), omega0[1].clone(), zeta1.clone());

    let rho2 = omega1[1].add(&scaled(&sigma1, &n.c0));
    let zeta2 = zeta1.add(&scaled(&omega1[1], &n.b0));
    let omega2 = with_conj(frame, sigma1.clone(), rho2.clone(), zeta2.clone());

    let zeta3 = zeta2.add(&scaled(&sigma1, &n.d0));
    let omega3 = with_conj(frame, sigma1, rho2, zeta3);

    let tower = CoframeTower { levels: [omega0, omega1, omega2, omega3] };
    if log.enabled() {
        check_tower(frame, sf, &tower, log)?;
    }
    Ok(tower)
}

/// Coordinates of a base form given over `ω₀`.
fn coordinates<S: Scalar>(frame: &Frame<S>, w: &BundleForm<S>) -> [S; 4] {
    let mut out: [S; 4] = std::array::from_fn(|_| S::zero());
    for i in 0..4 {
        let c = w.coeff(&[i + 1]).coeff(0);
        if c.is_zero() {
            continue;
        }
        let dual = frame.calculus.dual_form(i);
        for k in 0..4 {
            out[k] = out[k].clone() + c.clone() * dual[k].clone();
        }
    }
    out
}

fn real_residual<S: Scalar>(coords: &[S; 4]) -> S {
    coords.iter().fold(S::zero(), |acc, c| if acc.is_zero() { c.conj() - c.clone() } else { acc })
}

fn check_tower<S: Scalar>(
    frame: &Frame<S>,
    sf: &StructureFunctions<S>,
    tower: &CoframeTower<S>,
    log: &mut CheckLog,
) -> Result<(), PipelineError> {
    log.require_that(
        "omega0 is dual to (S, T, L, conj L)",
        || {
            (0..4).all(|i| {
                let dual = frame.calculus.dual_form(i);
                (0..4).all(|j| {
                    let f = frame.field(j);
                    let pairing = (0..4).fold(S::zero(), |acc, k| acc + dual[k].clone() * f.coeffs[k].clone());
                    if i == j {
                        (pairing - S::one()).is_zero()
                    } else {
                        pairing.is_zero()
                    }
                })
            })
        },
        || "nonzero off-diagonal pairing".into(),
    );
    let [_, omega1, omega2, omega3] = &tower.levels;
    log.require_zero("sigma1 is real", || real_residual(&coordinates(frame, &omega1[0])));
    log.require_zero("rho2 is real", || real_residual(&coordinates(frame, &omega2[1])));
    log.require_zero_form("conj(zeta1) = B^(1/2) conj(zeta0)", || omega1[3].sub(&BundleForm::basis(4).scale_base(&sf.beta)));
    for (k, level) in tower.levels.iter().enumerate() {
        let forms = [BundleForm::basis(0), level[0].clone(), level[1].clone(), level[2].clone(), level[3].clone()];
        log.require_that(&format!("omega{k} is a coframe"), || Coframe::new(forms).is_ok(), || "singular".into());
    }
    check_g1(omega3, log);
    Ok(())
}

/// `ω₃ = g·ω₀` with `g` in the lower-triangular group of the G-structure.
fn check_g1<S: Scalar>(omega3: &BaseCoframe<S>, log: &mut CheckLog) {
    let g = |r: usize, c: usize| omega3[r].coeff(&[c + 1]).coeff(0);
    let a = g(2, 2);
    let a_bar = g(3, 3);
    let zeros = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 2)];
    log.require_that(
        "omega3 = g omega0 with g in G1",
        || {
            zeros.iter().all(|&(r, c)| g(r, c).is_zero())
                && (a_bar.clone() - a.conj()).is_zero()
                && (g(1, 1) - a.clone() * a_bar.clone()).is_zero()
                && (g(0, 0) - a.clone() * a.clone() * a_bar.clone()).is_zero()
                && (g(3, 1) - g(2, 1).conj()).is_zero()
        },
        || {
            let rows: Vec<String> = (0..4).map(|r| (0..4).map(|c| g(r, c).to_string()).collect::<Vec<_>>().join(", ")).collect();
            format!("[{}]", rows.join("; "))
        },
    );
}
