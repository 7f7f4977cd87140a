use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

/// Sparse polynomial in the twist variables m and n with rational coefficients.
///
/// Keys are exponent pairs `(i, j)` for `m^i n^j`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        BiPoly::monomial(rat(c), 0, 0)
    }

    pub fn m() -> Self {
        BiPoly::monomial(rat(1), 1, 0)
    }

    pub fn n() -> Self {
        BiPoly::monomial(rat(1), 0, 1)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    /// `r·m + s·n + t`.
    pub fn linear(r: i64, s: i64, t: i64) -> Self {
        &(&BiPoly::monomial(rat(r), 1, 0) + &BiPoly::monomial(rat(s), 0, 1)) + &BiPoly::constant(t)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn eval(&self, m: &BigRational, n: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * num::pow(m.clone(), i as usize) * num::pow(n.clone(), j as usize);
        }
        acc
    }

    pub fn eval_int(&self, m: i64, n: i64) -> BigRational {
        self.eval(&rat(m), &rat(n))
    }

    /// Substitute `m ↦ m+u`, `n ↦ n+v`.
    pub fn shift(&self, u: i64, v: i64) -> BiPoly {
        let mu = &BiPoly::m() + &BiPoly::constant(u);
        let nv = &BiPoly::n() + &BiPoly::constant(v);
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = BiPoly::monomial(c.clone(), 0, 0);
            for _ in 0..i {
                t = &t * &mu;
            }
            for _ in 0..j {
                t = &t * &nv;
            }
            out = &out + &t;
        }
        out
    }

    /// `(r, s, t)` when the polynomial is `rm + sn + t` with integer coefficients.
    pub fn as_linear(&self) -> Option<(i64, i64, i64)> {
        use num::ToPrimitive;
        let mut out = [0i64; 3];
        for (&(i, j), c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            let slot = match (i, j) {
                (1, 0) => 0,
                (0, 1) => 1,
                (0, 0) => 2,
                _ => return None,
            };
            out[slot] = c.to_integer().to_i64()?;
        }
        Some((out[0], out[1], out[2]))
    }

    fn insert_add(&mut self, key: (u32, u32), c: BigRational) {
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.insert_add((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::zero(), |a, b| a + b)
    }
}

fn monomial_name(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    format!("{}{}", part("m", i), part("n", j))
}

impl fmt::Display for BiPoly {
    /// Highest total degree first: `mn+2m+n+2`, `4m+2n-2`, `3/2m`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        for (idx, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            if c.is_negative() {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            let name = monomial_name(i, j);
            if name.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{a}{name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_structure_sheaf_polynomial() {
        let m = BiPoly::m();
        let n = BiPoly::n();
        let one = BiPoly::constant(1);
        let a = (&m + &one) * (&n + &one);
        let b = (&m - &one) * (&n - &BiPoly::constant(3));
        assert_eq!(a - b, BiPoly::linear(4, 2, -2));
    }

    #[test]
    fn display() {
        assert_eq!(BiPoly::linear(4, 2, -2).to_string(), "4m+2n-2");
        assert_eq!(BiPoly::linear(0, 0, 0).to_string(), "0");
        let p = (BiPoly::m() + BiPoly::constant(1)) * (BiPoly::n() + BiPoly::constant(1));
        assert_eq!(p.to_string(), "mn+m+n+1");
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = (BiPoly::m() + BiPoly::constant(1)) * (BiPoly::n() - BiPoly::constant(2));
        let q = p.shift(3, -1);
        assert_eq!(q.eval_int(2, 5), p.eval_int(5, 4));
    }

    #[test]
    fn as_linear() {
        assert_eq!(BiPoly::linear(3, 2, -1).as_linear(), Some((3, 2, -1)));
        assert_eq!((BiPoly::m() * BiPoly::n()).as_linear(), None);
    }
}
