//! Base variables and exponent vectors under graded reverse-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

/// The real coordinates of `M`: `x`, `y`, `u1`, `u2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    U1,
    U2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::U1, Var::U2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::U1 => "u1",
            Var::U2 => "u2",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over `(x, y, u1, u2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut e = [0; 4];
        for k in 0..4 {
            e[k] = self.0[k].checked_sub(o.0[k])?;
        }
        Some(Monomial(e))
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..4).all(|k| self.0[k] <= o.0[k])
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|k| self.0[k].min(o.0[k])))
    }

    pub fn with_exp(&self, v: Var, e: u16) -> Monomial {
        let mut m = *self;
        m.0[v.index()] = e;
        m
    }
}

/// Graded reverse-lexicographic order with `x > y > u1 > u2`.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for k in (0..4).rev() {
            match self.0[k].cmp(&o.0[k]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        let x = Monomial::var(Var::X);
        let y = Monomial::var(Var::Y);
        let u1 = Monomial::var(Var::U1);
        let u2 = Monomial::var(Var::U2);
        assert!(x > y && y > u1 && u1 > u2);
        // x*u2 < y^2 in grevlex: the smaller power of the last variable wins.
        assert!(Monomial([1, 0, 0, 1]) < Monomial([0, 2, 0, 0]));
        assert!(Monomial([0, 0, 0, 1]) > Monomial::ONE);
        assert!(Monomial([1, 1, 0, 0]) > Monomial([1, 0, 1, 0]));
    }

    #[test]
    fn division() {
        let m = Monomial([2, 1, 0, 3]);
        assert_eq!(m.div(&Monomial([1, 1, 0, 0])), Some(Monomial([1, 0, 0, 3])));
        assert_eq!(m.div(&Monomial([0, 2, 0, 0])), None);
        assert_eq!(m.to_string(), "x^2*y*u2^3");
    }
}
