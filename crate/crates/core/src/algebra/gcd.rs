//! Multivariate GCD over `ℚ(i)` by Brown's dense modular algorithm.
//!
//! For a prime `p ≡ 1 (mod 4)` the ring `ℤ[i]/(p)` splits as `ℤ_p × ℤ_p`
//! through `i ↦ ±ι`. The monic GCD is computed in both images, which are
//! recombined into real and imaginary parts, lifted by Chinese remaindering
//! and recovered by rational reconstruction. The result is accepted only
//! after exact trial division over `ℚ(i)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::modular::{crt_step, primes, rational_reconstruct, PrimeField};
use super::monomial::{Monomial, Var};
use super::polynomial::Polynomial;

type ModPoly = Vec<(Monomial, u64)>;
type UPoly = Vec<u64>;

/// Monic GCD (leading grevlex coefficient 1); `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    gcd_cofactors(f, g).0
}

/// Returns `(h, f/h, g/h)` with `h` the monic GCD.
pub fn gcd_cofactors(f: &Polynomial, g: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
    if f.is_zero() && g.is_zero() {
        return (Polynomial::zero(), Polynomial::zero(), Polynomial::zero());
    }
    if f.is_zero() {
        let h = g.monic();
        return (h, Polynomial::zero(), Polynomial::constant(g.leading_coeff()));
    }
    if g.is_zero() {
        let h = f.monic();
        return (h, Polynomial::constant(f.leading_coeff()), Polynomial::zero());
    }
    if f.is_constant() || g.is_constant() {
        return (Polynomial::one(), f.clone(), g.clone());
    }
    if f == g {
        let lc = Polynomial::constant(f.leading_coeff());
        return (f.monic(), lc.clone(), lc);
    }
    let h = gcd_nontrivial(f, g);
    if h.is_one() {
        return (h, f.clone(), g.clone());
    }
    let fq = f.div_exact(&h).expect("verified divisor");
    let gq = g.div_exact(&h).expect("verified divisor");
    (h, fq, gq)
}

fn monomial_content(p: &Polynomial) -> Monomial {
    let mut it = p.terms().iter();
    let first = it.next().map(|t| t.0).unwrap_or(Monomial::ONE);
    it.fold(first, |acc, (m, _)| acc.gcd(m))
}

fn strip_monomial(p: &Polynomial, m: &Monomial) -> Polynomial {
    if m.is_one() {
        return p.clone();
    }
    let mut v: Vec<_> = p.terms().iter().map(|(t, c)| (t.div(m).expect("content divides"), c.clone())).collect();
    v.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    Polynomial::from_terms(v)
}

fn gcd_nontrivial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let mf = monomial_content(f);
    let mg = monomial_content(g);
    let mono = mf.gcd(&mg);
    let f = strip_monomial(f, &mf);
    let g = strip_monomial(g, &mg);
    let mono_poly = Polynomial::monomial(mono, GaussianRational::one());
    if f.is_constant() || g.is_constant() {
        return mono_poly;
    }
    if f.len() == 1 || g.len() == 1 {
        // A single term without monomial content is a constant after stripping.
        return mono_poly;
    }
    let core = modular_gcd(&f, &g);
    &mono_poly * &core
}

fn image(p: &Polynomial, fld: &PrimeField, iota: u64) -> Option<ModPoly> {
    let mut out = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let a = fld.image(c.re())?;
        let b = fld.image(c.im())?;
        let v = fld.add(a, fld.mul(b, iota));
        if v != 0 {
            out.push((*m, v));
        }
    }
    Some(out)
}

fn modular_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let mut vars: Vec<Var> = f.variables();
    for v in g.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();

    let mut acc: HashMap<Monomial, (BigInt, BigInt)> = HashMap::new();
    let mut modulus = BigInt::one();
    let mut acc_lead: Option<Monomial> = None;
    let mut last: Option<Polynomial> = None;

    for fld in primes() {
        let mut imgs = Vec::with_capacity(2);
        let mut ok = true;
        for iota in [fld.iota, fld.neg(fld.iota)] {
            let (Some(fi), Some(gi)) = (image(f, fld, iota), image(g, fld, iota)) else {
                ok = false;
                break;
            };
            // Leading terms must survive reduction.
            if fi.first().map(|t| t.0) != f.leading_term().map(|t| t.0) || gi.first().map(|t| t.0) != g.leading_term().map(|t| t.0) {
                ok = false;
                break;
            }
            let h = gcd_rec(&fi, &gi, &vars, fld);
            imgs.push(make_monic_grevlex(h, fld));
        }
        if !ok {
            continue;
        }
        let (h1, h2) = (&imgs[0], &imgs[1]);
        if h1.first().map(|t| t.0) != h2.first().map(|t| t.0) {
            continue;
        }
        let lead = h1[0].0;
        if lead.is_one() {
            return Polynomial::one();
        }
        match acc_lead.map(|l| lead.cmp(&l)) {
            Some(Ordering::Greater) => continue,
            Some(Ordering::Less) | None => {
                acc.clear();
                modulus = BigInt::one();
                acc_lead = Some(lead);
                last = None;
            }
            Some(Ordering::Equal) => {}
        }
        // Split into real and imaginary images.
        let m1: HashMap<Monomial, u64> = h1.iter().cloned().collect();
        let m2: HashMap<Monomial, u64> = h2.iter().cloned().collect();
        let mut keys: Vec<Monomial> = m1.keys().chain(m2.keys()).chain(acc.keys()).cloned().collect();
        keys.sort_unstable();
        keys.dedup();
        let half = fld.inv(2);
        let inv_2iota = fld.inv(fld.mul(2, fld.iota));
        let p_big = BigInt::from(fld.p);
        for k in keys {
            let a1 = m1.get(&k).copied().unwrap_or(0);
            let a2 = m2.get(&k).copied().unwrap_or(0);
            let re = fld.mul(fld.add(a1, a2), half);
            let im = fld.mul(fld.sub(a1, a2), inv_2iota);
            let entry = acc.entry(k).or_insert_with(|| (BigInt::zero(), BigInt::zero()));
            entry.0 = crt_step(&entry.0, &modulus, re, fld);
            entry.1 = crt_step(&entry.1, &modulus, im, fld);
        }
        modulus *= p_big;

        let Some(candidate) = reconstruct(&acc, &modulus) else {
            continue;
        };
        if last.as_ref() == Some(&candidate) {
            if f.div_exact(&candidate).is_some() && g.div_exact(&candidate).is_some() {
                return candidate;
            }
            // Stable but wrong: the accumulated images were unlucky.
            acc.clear();
            modulus = BigInt::one();
            acc_lead = None;
            last = None;
            continue;
        }
        last = Some(candidate);
    }
    panic!("modular GCD exhausted the prime table");
}

fn reconstruct(acc: &HashMap<Monomial, (BigInt, BigInt)>, m: &BigInt) -> Option<Polynomial> {
    let mut terms = Vec::with_capacity(acc.len());
    for (k, (re, im)) in acc {
        let a = rational_reconstruct(re, m)?;
        let b = rational_reconstruct(im, m)?;
        terms.push((*k, GaussianRational::new(a, b)));
    }
    Some(Polynomial::from_terms(terms))
}

fn make_monic_grevlex(mut h: ModPoly, fld: &PrimeField) -> ModPoly {
    h.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    if let Some(&(_, lc)) = h.first() {
        if lc != 1 {
            let inv = fld.inv(lc);
            for t in h.iter_mut() {
                t.1 = fld.mul(t.1, inv);
            }
        }
    }
    h
}

// ---------------------------------------------------------------------------
// Univariate helpers over ℤ_p (dense, index = degree, no trailing zeros).

fn u_trim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn u_eval(a: &UPoly, x: u64, fld: &PrimeField) -> u64 {
    a.iter().rev().fold(0, |acc, &c| fld.add(fld.mul(acc, x), c))
}

fn u_mul(a: &UPoly, b: &UPoly, fld: &PrimeField) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fld.add(out[i + j], fld.mul(x, y));
        }
    }
    u_trim(out)
}

fn u_divrem(a: &UPoly, b: &UPoly, fld: &PrimeField) -> (UPoly, UPoly) {
    debug_assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = fld.inv(b[db]);
    let mut q = vec![0; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = fld.mul(r[k + db], inv);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = fld.sub(r[k + j], fld.mul(c, bj));
        }
    }
    r.truncate(db);
    (u_trim(q), u_trim(r))
}

fn u_monic(a: UPoly, fld: &PrimeField) -> UPoly {
    match a.last() {
        None => a,
        Some(&1) => a,
        Some(&lc) => {
            let inv = fld.inv(lc);
            a.into_iter().map(|c| fld.mul(c, inv)).collect()
        }
    }
}

fn u_gcd(a: &UPoly, b: &UPoly, fld: &PrimeField) -> UPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = u_divrem(&a, &b, fld);
        a = b;
        b = r;
    }
    u_monic(a, fld)
}

// ---------------------------------------------------------------------------
// Recursive Brown GCD over ℤ_p.

fn lex_cmp(a: &Monomial, b: &Monomial, vars: &[Var]) -> Ordering {
    for &v in vars {
        match a.exp(v).cmp(&b.exp(v)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn lex_lead<'a>(p: &'a ModPoly, vars: &[Var]) -> Option<&'a (Monomial, u64)> {
    p.iter().max_by(|a, b| lex_cmp(&a.0, &b.0, vars))
}

fn monic_lex(mut p: ModPoly, vars: &[Var], fld: &PrimeField) -> ModPoly {
    if let Some(&(_, lc)) = lex_lead(&p, vars) {
        if lc != 1 {
            let inv = fld.inv(lc);
            for t in p.iter_mut() {
                t.1 = fld.mul(t.1, inv);
            }
        }
    }
    p
}

/// Groups terms by their exponents outside `v`, as univariate polynomials in `v`.
fn group(p: &ModPoly, v: Var) -> BTreeMap<Monomial, UPoly> {
    let mut out: BTreeMap<Monomial, UPoly> = BTreeMap::new();
    for (m, c) in p {
        let e = m.exp(v) as usize;
        let u = out.entry(m.with_exp(v, 0)).or_default();
        if u.len() <= e {
            u.resize(e + 1, 0);
        }
        u[e] = *c;
    }
    out
}

fn ungroup(g: &BTreeMap<Monomial, UPoly>, v: Var) -> ModPoly {
    let mut out = Vec::new();
    for (m, u) in g {
        for (e, &c) in u.iter().enumerate() {
            if c != 0 {
                out.push((m.with_exp(v, e as u16), c));
            }
        }
    }
    out
}

fn mp_div_exact(a: &ModPoly, b: &ModPoly, fld: &PrimeField) -> Option<ModPoly> {
    let mut bs = b.clone();
    bs.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    let (blm, blc) = *bs.first()?;
    let binv = fld.inv(blc);
    let mut rem: BTreeMap<Monomial, u64> = a.iter().cloned().collect();
    let mut quot = Vec::new();
    while let Some((&m, &c)) = rem.iter().next_back() {
        rem.remove(&m);
        let qm = m.div(&blm)?;
        let qc = fld.mul(c, binv);
        for (tm, tc) in bs.iter().skip(1) {
            let key = tm.mul(&qm);
            let delta = fld.mul(*tc, qc);
            let e = rem.entry(key).or_insert(0);
            *e = fld.sub(*e, delta);
            if *e == 0 {
                rem.remove(&key);
            }
        }
        quot.push((qm, qc));
    }
    Some(quot)
}

fn gcd_rec(f: &ModPoly, g: &ModPoly, vars: &[Var], fld: &PrimeField) -> ModPoly {
    if f.is_empty() {
        return monic_lex(g.clone(), vars, fld);
    }
    if g.is_empty() {
        return monic_lex(f.clone(), vars, fld);
    }
    if vars.is_empty() {
        return vec![(Monomial::ONE, 1)];
    }
    if vars.len() == 1 {
        let v = vars[0];
        let fu = group(f, v).remove(&Monomial::ONE).unwrap_or_default();
        let gu = group(g, v).remove(&Monomial::ONE).unwrap_or_default();
        let h = u_gcd(&u_trim(fu), &u_trim(gu), fld);
        let mut gm = BTreeMap::new();
        gm.insert(Monomial::ONE, h);
        return ungroup(&gm, v);
    }
    let v = vars[vars.len() - 1];
    let rest = &vars[..vars.len() - 1];

    let fg = group(f, v);
    let gg = group(g, v);
    let cf = fg.values().fold(Vec::new(), |acc: UPoly, u| u_gcd(&acc, u, fld));
    let cg = gg.values().fold(Vec::new(), |acc: UPoly, u| u_gcd(&acc, u, fld));
    let content = u_gcd(&cf, &cg, fld);
    let f1: BTreeMap<Monomial, UPoly> = fg.iter().map(|(m, u)| (*m, u_divrem(u, &cf, fld).0)).collect();
    let g1: BTreeMap<Monomial, UPoly> = gg.iter().map(|(m, u)| (*m, u_divrem(u, &cg, fld).0)).collect();

    let lead_of = |gm: &BTreeMap<Monomial, UPoly>| -> UPoly {
        gm.iter().max_by(|a, b| lex_cmp(a.0, b.0, rest)).map(|(_, u)| u.clone()).unwrap_or_default()
    };
    let lcf = lead_of(&f1);
    let lcg = lead_of(&g1);
    let gamma = u_gcd(&lcf, &lcg, fld);
    let degv = |gm: &BTreeMap<Monomial, UPoly>| gm.values().map(|u| u.len().saturating_sub(1)).max().unwrap_or(0);
    let bound = (gamma.len() - 1) + degv(&f1).min(degv(&g1));

    let f1p = ungroup(&f1, v);
    let g1p = ungroup(&g1, v);
    let eval_at = |gm: &BTreeMap<Monomial, UPoly>, a: u64| -> ModPoly {
        gm.iter()
            .filter_map(|(m, u)| {
                let c = u_eval(u, a, fld);
                (c != 0).then_some((*m, c))
            })
            .collect()
    };

    let mut interp: Option<(Monomial, BTreeMap<Monomial, UPoly>, UPoly, usize)> = None;
    let mut alpha: u64 = 0;
    loop {
        alpha += 1;
        if u_eval(&lcf, alpha, fld) == 0 || u_eval(&lcg, alpha, fld) == 0 {
            continue;
        }
        let ga = u_eval(&gamma, alpha, fld);
        let fa = eval_at(&f1, alpha);
        let gaa = eval_at(&g1, alpha);
        let ha = gcd_rec(&fa, &gaa, rest, fld);
        let (lk, _) = *lex_lead(&ha, rest).expect("nonzero gcd image");
        if lk.is_one() {
            let mut gm = BTreeMap::new();
            gm.insert(Monomial::ONE, content.clone());
            return monic_lex(ungroup(&gm, v), vars, fld);
        }
        let scaled: ModPoly = ha.iter().map(|(m, c)| (*m, fld.mul(*c, ga))).collect();
        let restart = match &interp {
            None => true,
            Some((cur, ..)) => match lex_cmp(&lk, cur, rest) {
                Ordering::Less => true,
                Ordering::Greater => continue,
                Ordering::Equal => false,
            },
        };
        if restart {
            let mut gm: BTreeMap<Monomial, UPoly> = BTreeMap::new();
            for (m, c) in scaled {
                gm.insert(m, vec![c]);
            }
            interp = Some((lk, gm, vec![fld.neg(alpha), 1], 1));
        } else {
            let (_, gm, q, npts) = interp.as_mut().expect("interpolation state");
            let qa_inv = fld.inv(u_eval(q, alpha, fld));
            let sv: HashMap<Monomial, u64> = scaled.into_iter().collect();
            let mut keys: Vec<Monomial> = gm.keys().cloned().chain(sv.keys().cloned()).collect();
            keys.sort_unstable();
            keys.dedup();
            for k in keys {
                let cur = gm.get(&k).map(|u| u_eval(u, alpha, fld)).unwrap_or(0);
                let target = sv.get(&k).copied().unwrap_or(0);
                let diff = fld.mul(fld.sub(target, cur), qa_inv);
                if diff == 0 {
                    continue;
                }
                let add: UPoly = q.iter().map(|&c| fld.mul(c, diff)).collect();
                let entry = gm.entry(k).or_default();
                let n = entry.len().max(add.len());
                entry.resize(n, 0);
                for (i, c) in add.into_iter().enumerate() {
                    entry[i] = fld.add(entry[i], c);
                }
                *entry = u_trim(std::mem::take(entry));
                if entry.is_empty() {
                    gm.remove(&k);
                }
            }
            *q = u_mul(q, &vec![fld.neg(alpha), 1], fld);
            *npts += 1;
        }
        let (_, gm, _, npts) = interp.as_ref().expect("interpolation state");
        if *npts > bound {
            let cont = gm.values().fold(Vec::new(), |acc: UPoly, u| u_gcd(&acc, u, fld));
            let prim: BTreeMap<Monomial, UPoly> = gm.iter().map(|(m, u)| (*m, u_divrem(u, &cont, fld).0)).collect();
            let cand = ungroup(&prim, v);
            if mp_div_exact(&f1p, &cand, fld).is_some() && mp_div_exact(&g1p, &cand, fld).is_some() {
                let mut full: BTreeMap<Monomial, UPoly> = BTreeMap::new();
                for (m, u) in prim {
                    full.insert(m, u_mul(&u, &content, fld));
                }
                return monic_lex(ungroup(&full, v), vars, fld);
            }
            interp = None;
        }
    }
}
