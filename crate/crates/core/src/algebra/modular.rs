//! Word-sized prime fields, Chinese remaindering and rational reconstruction.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arithmetic in `ℤ/pℤ` for a prime `p < 2⁶³`, with a fixed `ι = √−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
    /// A square root of `−1`; exists because `p ≡ 1 (mod 4)`.
    pub iota: u64,
}

impl PrimeField {
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// Reduces a big integer into the field.
    pub fn reduce(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    }

    /// Image of a rational, `None` when the denominator vanishes mod `p`.
    pub fn image(&self, r: &BigRational) -> Option<u64> {
        let d = self.reduce(r.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.reduce(r.numer()), self.inv(d)))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for b in BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

const PRIME_COUNT: usize = 256;

/// Primes `p ≡ 1 (mod 4)` just below `2⁶²`, in decreasing order.
pub fn primes() -> &'static [PrimeField] {
    static PRIMES: OnceLock<Vec<PrimeField>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n: u64 = (1u64 << 62) - 3;
        while out.len() < PRIME_COUNT {
            if is_prime_u64(n) {
                out.push(PrimeField { p: n, iota: sqrt_minus_one(n) });
            }
            n -= 4;
        }
        out
    })
}

fn sqrt_minus_one(p: u64) -> u64 {
    for c in 2u64.. {
        let r = pow_mod(c, (p - 1) / 4, p);
        if mul_mod(r, r, p) == p - 1 {
            return r;
        }
    }
    unreachable!("p ≡ 1 mod 4 always has a square root of -1")
}

/// Lifts `(r₁ mod m₁, r₂ mod p)` to the residue modulo `m₁·p`.
pub fn crt_step(r1: &BigInt, m1: &BigInt, r2: u64, f: &PrimeField) -> BigInt {
    let r1_mod = f.reduce(r1);
    let m1_mod = f.reduce(m1);
    let t = f.mul(f.sub(r2, r1_mod), f.inv(m1_mod));
    r1 + m1 * BigInt::from(t)
}

/// Wang's rational reconstruction: finds `a/b ≡ r (mod m)` with
/// `|a|, |b| < √(m/2)`, or `None` if no such fraction exists.
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let r = r.mod_floor(m);
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_table() {
        let ps = primes();
        assert_eq!(ps.len(), PRIME_COUNT);
        for f in &ps[..8] {
            assert_eq!(f.p % 4, 1);
            assert!(is_prime_u64(f.p));
            assert_eq!(f.mul(f.iota, f.iota), f.p - 1);
        }
    }

    #[test]
    fn reconstruction_roundtrip() {
        let ps = primes();
        let target = BigRational::new(BigInt::from(-123456789i64), BigInt::from(987654321i64));
        let mut m = BigInt::one();
        let mut r = BigInt::zero();
        for f in &ps[..2] {
            let img = f.image(&target).unwrap();
            r = crt_step(&r, &m, img, f);
            m *= BigInt::from(f.p);
        }
        assert_eq!(rational_reconstruct(&r, &m), Some(target));
    }

    #[test]
    fn field_inverse() {
        let f = primes()[0];
        let a = 1234567u64;
        assert_eq!(f.mul(a, f.inv(a)), 1);
    }
}
