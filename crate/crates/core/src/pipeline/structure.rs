use crate::error::PipelineError;
use crate::exterior::{BundleForm, BundleScalar, FrameCalculus};
use crate::scalar::{div, imaginary, q, Domain, Scalar};

use super::checks::CheckLog;
use super::frame::{Frame, L_FIELD, S_FIELD};

/// `S̄ = A·T + B·S`, `[L, S] = P·T + Q·S`, and the coefficients
/// `E, F, G, H` of `dσ₀, dρ₀`, together with `β = B^{1/2}`.
#[derive(Clone, Debug)]
pub struct StructureFunctions<S> {
    pub a: S,
    pub b: S,
    pub p: S,
    pub q: S,
    pub e: S,
    pub f: S,
    pub g: S,
    pub h: S,
    pub beta: S,
}

fn coeff<S: Scalar>(w: &BundleForm<S>, idx: &[usize]) -> S {
    w.coeff(idx).coeff(0)
}

/// The template for `(dσ₀, dρ₀)` with the given `E, F, G, H`.
pub fn frame_template<S: Scalar>(sf: &StructureFunctions<S>) -> (BundleForm<S>, BundleForm<S>) {
    let m = |idx: &[usize], v: &S| BundleForm::monomial(idx, BundleScalar::from_base(v.clone()));
    let d_sigma = m(&[1, 2], &sf.h).add(&m(&[1, 4], &sf.f)).add(&m(&[1, 3], &sf.q)).add(&m(&[2, 4], &sf.b)).add(&m(&[2, 3], &S::one()));
    let d_rho =
        m(&[1, 2], &sf.g).add(&m(&[1, 4], &sf.e)).add(&m(&[1, 3], &sf.p)).add(&m(&[2, 4], &sf.a)).add(&m(&[3, 4], &imaginary(1, 1)));
    (d_sigma, d_rho)
}

/// Reads `A, B, P, Q` from frame expansions and `E, F, G, H` from the
/// structure constants of `ω₀`, then checks the conjugation relations and
/// the closed forms of E, F, G, H.
pub fn solve_structure_functions<D: Domain>(
    frame: &Frame<D::Scalar>,
    dom: &D,
    log: &mut CheckLog,
) -> Result<StructureFunctions<D::Scalar>, PipelineError> {
    let calc = &frame.calculus;
    let sbar = calc.conj_field(S_FIELD);
    let ls = calc.bracket(L_FIELD, S_FIELD);
    log.require_zero("conj(S) has no L component", || sbar[2].clone());
    log.require_zero("conj(S) has no conj(L) component", || sbar[3].clone());
    log.require_zero("[L, S] has no L component", || ls[2].clone());
    log.require_zero("[L, S] has no conj(L) component", || ls[3].clone());

    let (beta, b) = dom.adjoin_sqrt(&sbar[0])?;
    dom.require_nonzero(&b, "B")?;
    let a = sbar[1].clone();
    let (p, qq) = (ls[1].clone(), ls[0].clone());

    let d_sigma = calc.d_basis(0);
    let d_rho = calc.d_basis(1);
    let sf = StructureFunctions {
        h: coeff(d_sigma, &[1, 2]),
        f: coeff(d_sigma, &[1, 4]),
        g: coeff(d_rho, &[1, 2]),
        e: coeff(d_rho, &[1, 4]),
        a,
        b,
        p,
        q: qq,
        beta,
    };

    if log.enabled() {
        check_relations(frame, &sf, log)?;
        let (ts, tr) = frame_template(&sf);
        log.require_zero_form("frame: d(sigma0) pattern", || d_sigma.sub(&ts));
        log.require_zero_form("frame: d(rho0) pattern", || d_rho.sub(&tr));
        log.require_zero_form("frame: d(zeta0) = 0", || calc.d_basis(2).clone());
        log.require_zero_form("frame: d(conj zeta0) = 0", || calc.d_basis(3).clone());
    }
    Ok(sf)
}

fn check_relations<S: Scalar>(frame: &Frame<S>, sf: &StructureFunctions<S>, log: &mut CheckLog) -> Result<(), PipelineError> {
    let StructureFunctions { a, b, p, q: qq, .. } = sf;
    let l = |f: &S| frame.l(f);
    let lb = |f: &S| frame.l_bar(f);
    let (lb_b, l_b, l_a) = (lb(b), l(b), l(a));
    let lb_b_over_b = div(lb_b.clone(), b)?;

    log.require_zero("conjugation: B conj(B) = 1", || b.clone() * b.conj() - S::one());
    log.require_zero("conjugation: conj(A) + conj(B) A = 0", || a.conj() + b.conj() * a.clone());
    log.require_zero("conjugation: conj(Q)", || {
        qq.conj() - (l_b.clone() + b.clone() * qq.clone() + a.scale(&q(2, 1)) + lb_b_over_b.clone())
    });
    log.require_zero("conjugation: conj(P)", || {
        let rhs = b.clone() * l_a.clone()
            - a.clone() * l_b.clone()
            - b.clone() * a.clone() * qq.clone()
            - a.clone() * a.clone()
            - a.clone() * lb_b_over_b.clone()
            + lb(a)
            + b.clone() * b.clone() * p.clone();
        p.conj() - rhs
    });

    let i = imaginary::<S>(1, 1);
    let ll_a = l(&l_a);
    let (l_p, l_q, lb_p, lb_q) = (l(p), l(qq), lb(p), lb(qq));
    let e_formula = l_a.clone() + b.clone() * p.clone();
    let f_formula = l_b.clone() + b.clone() * qq.clone() + a.clone();
    log.require_zero("structure: E = L(A) + B P", || sf.e.clone() - e_formula);
    log.require_zero("structure: F = L(B) + B Q + A", || sf.f.clone() - f_formula);

    let g_common = ll_a.clone() + p.clone() * l_b.clone() - qq.clone() * l_a.clone() + p.clone() * l_b.clone() + b.clone() * l_p.clone();
    let g_with_l = i.clone() * (g_common.clone() - l_p.clone());
    let g_corrected = i.clone() * (g_common - lb_p);
    let ll_b = l(&l_b);
    let h_common = ll_b + qq.clone() * l_b.clone() + b.clone() * l_q.clone() + l_a.scale(&q(2, 1));
    let h_with_l = i.clone() * (h_common.clone() - l_q);
    let h_corrected = i * (h_common - lb_q);
    log.compare("structure: G with L(P) in the last term", || sf.g.clone() - g_with_l);
    log.compare("structure: H with L(Q) in the last term", || sf.h.clone() - h_with_l);
    log.require_zero("structure: G with conj(L)(P) in the last term", || sf.g.clone() - g_corrected);
    log.require_zero("structure: H with conj(L)(Q) in the last term", || sf.h.clone() - h_corrected);
    Ok(())
}
