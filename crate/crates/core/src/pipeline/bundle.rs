use crate::calculus::LinalgError;
use crate::error::PipelineError;
use crate::exterior::{ext_d, BundleForm, BundleScalar, Coframe, DualFrameCalculus, DIM};
use crate::scalar::{imaginary, q, rational, Scalar};

use super::checks::CheckLog;
use super::tower::BaseCoframe;

/// Positions of `(Λ, σ, ρ, ζ, ζ̄)` in the bundle coframe.
pub const LAMBDA: usize = 0;
pub const SIGMA: usize = 1;
pub const RHO: usize = 2;
pub const ZETA: usize = 3;
pub const ZETA_BAR: usize = 4;

/// `a`-weights of `I₀, …, I₅`: the coefficient of slot `k` is `Iₖ / a^{w_k}`.
pub const INVARIANT_WEIGHTS: [i32; 6] = [5, 4, 3, 3, 2, 2];

/// Slots of `I₁, …, I₅` in `dζ − Λ∧ζ`.
const INVARIANT_SLOTS: [[usize; 2]; 5] = [[SIGMA, RHO], [SIGMA, ZETA], [SIGMA, ZETA_BAR], [RHO, ZETA], [RHO, ZETA_BAR]];

/// Coefficients of `Λ = da/a + x_σ σ + x_ρ ρ + x_ζ ζ + x_ζ̄ ζ̄`.
#[derive(Clone, Debug)]
pub struct LambdaSolution<S> {
    pub x_sigma: BundleScalar<S>,
    pub x_rho: BundleScalar<S>,
    pub x_zeta: BundleScalar<S>,
    pub x_zeta_bar: BundleScalar<S>,
}

/// The coframe `(Λ, σ, ρ, ζ, ζ̄)` on the bundle with its differentials.
#[derive(Clone, Debug)]
pub struct BundleCoframe<S> {
    pub lambda: LambdaSolution<S>,
    /// The coframe over the calculus basis `(da, σ₀, ρ₀, ζ₀, ζ̄₀)`.
    pub coframe: Coframe<S>,
    /// `dθ` over the calculus basis, for each coframe form `θ`.
    pub d: [BundleForm<S>; DIM],
    /// `dθ` in the wedge basis of the coframe.
    pub structure: [BundleForm<S>; DIM],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Read off the structure equations of the bundle coframe.
    Structural,
    /// Evaluated from closed-form expressions.
    Explicit,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Structural => "structural",
            Route::Explicit => "explicit",
        }
    }
}

/// `I₀, …, I₅` at weight zero.
#[derive(Clone, Debug)]
pub struct InvariantSet<S> {
    pub values: [S; 6],
    pub route: Route,
}

impl<S: Scalar> InvariantSet<S> {
    pub fn get(&self, k: usize) -> &S {
        &self.values[k]
    }

    /// Whether `I₂ = I₃ = I₄ = I₅ = 0`.
    pub fn is_flat(&self) -> bool {
        self.values[2..].iter().all(S::is_zero)
    }
}

fn mono<S: Scalar>(idx: &[usize], c: BundleScalar<S>) -> BundleForm<S> {
    BundleForm::monomial(idx, c)
}

fn consistency(check: &str, residual: impl std::fmt::Display) -> PipelineError {
    PipelineError::Consistency { check: check.into(), residual: residual.to_string() }
}

fn coframe<S: Scalar>(forms: [BundleForm<S>; DIM], what: &str) -> Result<Coframe<S>, PipelineError> {
    Coframe::new(forms).map_err(|e| match e {
        LinalgError::Singular => consistency(what, "singular"),
        LinalgError::Algebra(a) => a.into(),
    })
}

/// `dσ = 3Λ∧σ + ρ∧ζ + ρ∧ζ̄` and `dρ = 2Λ∧ρ + iζ∧ζ̄` in the coframe basis.
pub fn sigma_rho_templates<S: Scalar>() -> (BundleForm<S>, BundleForm<S>) {
    let one = BundleScalar::<S>::one;
    let d_sigma =
        mono(&[LAMBDA, SIGMA], BundleScalar::constant(q(3, 1))).add(&mono(&[RHO, ZETA], one())).add(&mono(&[RHO, ZETA_BAR], one()));
    let d_rho =
        mono(&[LAMBDA, RHO], BundleScalar::constant(q(2, 1))).add(&mono(&[ZETA, ZETA_BAR], BundleScalar::from_base(imaginary(1, 1))));
    (d_sigma, d_rho)
}

/// `dζ` and `dζ̄` from `I₁, …, I₅` (index 0 unused).
pub fn zeta_templates<S: Scalar>(inv: &[S; 6]) -> (BundleForm<S>, BundleForm<S>) {
    let at = |k: usize, v: &S| BundleScalar::term(-INVARIANT_WEIGHTS[k], v.clone());
    let mut dz = mono(&[LAMBDA, ZETA], BundleScalar::one());
    let mut dzb = mono(&[LAMBDA, ZETA_BAR], BundleScalar::one());
    let conj_order = [1, 3, 2, 5, 4];
    for (slot, k) in INVARIANT_SLOTS.iter().zip(1..=5) {
        dz = dz.add(&mono(slot, at(k, &inv[k])));
    }
    for (slot, &k) in INVARIANT_SLOTS.iter().zip(conj_order.iter()) {
        dzb = dzb.add(&mono(slot, at(k, &inv[k].conj())));
    }
    (dz, dzb)
}

/// `dΛ` from `I₀, I₁, I₂, I₃`.
pub fn lambda_template<S: Scalar>(inv: &[S; 6]) -> BundleForm<S> {
    let w = |k: usize, v: S| BundleScalar::term(-INVARIANT_WEIGHTS[k], v);
    let half_i: S = imaginary(1, 2);
    let third: S = rational(1, 3);
    mono(&[SIGMA, ZETA_BAR], w(1, half_i.clone() * inv[1].clone()))
        .sub(&mono(&[SIGMA, ZETA], w(1, half_i * inv[1].conj())))
        .sub(&mono(&[RHO, ZETA], w(2, third.clone() * (inv[2].clone() + inv[3].conj()))))
        .sub(&mono(&[RHO, ZETA_BAR], w(2, third * (inv[2].conj() + inv[3].clone()))))
        .add(&mono(&[SIGMA, RHO], w(0, inv[0].clone())))
}

/// Lifts `ω₃` to the bundle with weights `(a³, a², a, a)` and determines
/// `Λ` by absorbing the `σ`-torsion of `dσ` and the `σ∧ρ`-torsion of `dρ`.
pub fn solve_lambda<S: Scalar>(
    calc: &DualFrameCalculus<S>,
    omega3: &BaseCoframe<S>,
    log: &mut CheckLog,
) -> Result<BundleCoframe<S>, PipelineError> {
    let lifted: [BundleForm<S>; 4] = std::array::from_fn(|k| omega3[k].scale(&BundleScalar::a_pow([3, 2, 1, 1][k])));
    let da_over_a = BundleForm::basis(0).scale(&BundleScalar::a_pow(-1));
    let provisional = coframe(
        [da_over_a.clone(), lifted[0].clone(), lifted[1].clone(), lifted[2].clone(), lifted[3].clone()],
        "lifted coframe is invertible",
    )?;
    let d_sigma = ext_d(&lifted[0], calc);
    let d_rho = ext_d(&lifted[1], calc);
    let ws = provisional.expand(&d_sigma);
    let wr = provisional.expand(&d_rho);
    let minus_third = q(-1, 3);
    let lambda = LambdaSolution {
        x_sigma: wr.coeff(&[SIGMA, RHO]).scale(&q(1, 2)),
        x_rho: ws.coeff(&[SIGMA, RHO]).scale(&minus_third),
        x_zeta: ws.coeff(&[SIGMA, ZETA]).scale(&minus_third),
        x_zeta_bar: ws.coeff(&[SIGMA, ZETA_BAR]).scale(&minus_third),
    };
    let xs = [&lambda.x_sigma, &lambda.x_rho, &lambda.x_zeta, &lambda.x_zeta_bar];
    let lambda_form = xs.iter().zip(&lifted).fold(da_over_a, |acc, (x, f)| acc.add(&f.scale(x)));
    log.require_that(
        "Lambda has weight-zero base components",
        || xs.iter().zip([-3, -2, -1, -1]).all(|(x, w)| x.at_weight(w).is_some()),
        || xs.iter().map(|x| format!("{:?}", x.weights())).collect::<Vec<_>>().join(", "),
    );

    let forms = [lambda_form, lifted[0].clone(), lifted[1].clone(), lifted[2].clone(), lifted[3].clone()];
    let final_coframe = coframe(forms.clone(), "bundle coframe is invertible")?;
    let d = [ext_d(&forms[0], calc), d_sigma, d_rho, ext_d(&forms[3], calc), ext_d(&forms[4], calc)];
    let structure = std::array::from_fn(|k| final_coframe.expand(&d[k]));

    let (t_sigma, t_rho) = sigma_rho_templates::<S>();
    log.require_zero_form("d(sigma) = 3 Lambda^sigma + rho^zeta + rho^conj(zeta)", || structure[SIGMA].sub(&t_sigma));
    log.require_zero_form("d(rho) = 2 Lambda^rho + i zeta^conj(zeta)", || structure[RHO].sub(&t_rho));
    Ok(BundleCoframe { lambda, coframe: final_coframe, d, structure })
}

fn extract<S: Scalar>(c: &BundleScalar<S>, weight: i32, name: &str) -> Result<S, PipelineError> {
    c.at_weight(-weight).ok_or_else(|| consistency(&format!("{name} has a-weight {weight}"), c))
}

/// Reads `I₁, …, I₅` from `dζ`, `I₀` from `dΛ`, and verifies the `dζ̄`
/// pattern, the `dΛ` template, the Bianchi value of `I₁` and `d² = 0`.
pub fn invariants_structural<S: Scalar>(
    calc: &DualFrameCalculus<S>,
    bundle: &BundleCoframe<S>,
    log: &mut CheckLog,
) -> Result<InvariantSet<S>, PipelineError> {
    let dz = &bundle.structure[ZETA];
    let d_lambda = &bundle.structure[LAMBDA];
    let slots: Vec<BundleScalar<S>> =
        std::iter::once(d_lambda.coeff(&[SIGMA, RHO])).chain(INVARIANT_SLOTS.iter().map(|s| dz.coeff(s))).collect();
    log.require_that(
        "invariant slots have a-weights (5, 4, 3, 3, 2, 2)",
        || slots.iter().zip(INVARIANT_WEIGHTS).all(|(c, w)| c.at_weight(-w).is_some()),
        || slots.iter().map(|c| format!("{:?}", c.weights())).collect::<Vec<_>>().join(", "),
    );
    let mut values: [S; 6] = std::array::from_fn(|_| S::zero());
    for (k, slot) in (1..=5).zip(INVARIANT_SLOTS.iter()) {
        values[k] = extract(&dz.coeff(slot), INVARIANT_WEIGHTS[k], &format!("I{k}"))?;
    }
    values[0] = extract(&d_lambda.coeff(&[SIGMA, RHO]), INVARIANT_WEIGHTS[0], "I0")?;

    if log.enabled() {
        let (t_zeta, t_zeta_bar) = zeta_templates(&values);
        log.require_zero_form("d(zeta) has only the five invariant slots", || dz.sub(&t_zeta));
        log.require_zero_form("d(conj zeta) is the conjugate pattern", || bundle.structure[ZETA_BAR].sub(&t_zeta_bar));
        log.require_zero_form("d(Lambda) matches the I0..I3 template", || d_lambda.sub(&lambda_template(&values)));
        let bianchi = bianchi_i1(&bundle.structure[LAMBDA], &values)?;
        log.require_zero("Bianchi: I1 forced by d(d rho) = 0", || bianchi - values[1].clone());
        let names = ["Lambda", "sigma", "rho", "zeta", "conj(zeta)"];
        for (k, name) in names.iter().enumerate() {
            log.require_zero_form(&format!("closure: d(d {name}) = 0"), || ext_d(&bundle.d[k], calc));
        }
    }
    Ok(InvariantSet { values, route: Route::Structural })
}

/// Solves `d(dρ) = 0` for the `σ∧ρ` coefficient of `dζ`, given `dΛ` and
/// `I₂, …, I₅`; the whole 3-form is then required to vanish.
pub fn bianchi_i1<S: Scalar>(d_lambda: &BundleForm<S>, values: &[S; 6]) -> Result<S, PipelineError> {
    let rho = BundleForm::<S>::basis(RHO);
    let lambda = BundleForm::<S>::basis(LAMBDA);
    let zeta = BundleForm::<S>::basis(ZETA);
    let zeta_bar = BundleForm::<S>::basis(ZETA_BAR);
    let (_, t_rho) = sigma_rho_templates::<S>();
    let i: S = imaginary(1, 1);
    let residual = |x: &S| {
        let mut v = values.clone();
        v[1] = x.clone();
        let (dz, dzb) = zeta_templates(&v);
        let d2 = d_lambda.wedge(&rho).scale_const(&q(2, 1)).sub(&lambda.wedge(&t_rho).scale_const(&q(2, 1)));
        d2.add(&dz.wedge(&zeta_bar).sub(&zeta.wedge(&dzb)).scale_base(&i))
    };
    let slot = [SIGMA, RHO, ZETA_BAR];
    let r0 = residual(&S::zero());
    let r1 = residual(&S::one());
    let k = &r1.coeff(&slot) - &r0.coeff(&slot);
    let x = -(&r0.coeff(&slot) * &k.try_inv().map_err(|_| consistency("Bianchi: I1 is determined", &k))?);
    let x = extract(&x, 0, "Bianchi I1")?;
    let full = residual(&x);
    if !full.is_zero() {
        return Err(consistency("Bianchi: d(d rho) = 0", full));
    }
    Ok(x)
}
