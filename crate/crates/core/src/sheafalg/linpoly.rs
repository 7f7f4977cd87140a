use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use super::SheafError;
use crate::exactpoly::BiPoly;

/// The linear Hilbert polynomial `r·m + s·n + t` of a sheaf with one-dimensional support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinPoly {
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

impl LinPoly {
    pub const fn new(r: i64, s: i64, t: i64) -> Self {
        LinPoly { r, s, t }
    }

    pub fn from_bipoly(p: &BiPoly) -> Option<LinPoly> {
        p.as_linear().map(|(r, s, t)| LinPoly { r, s, t })
    }

    pub fn to_bipoly(self) -> BiPoly {
        BiPoly::linear(self.r, self.s, self.t)
    }

    /// `r + s`, the degree against `O(1, 1)`.
    pub fn multiplicity(self) -> i64 {
        self.r + self.s
    }

    /// Reduced Hilbert polynomial constant `t / (r + s)`.
    pub fn slope(self) -> Result<BigRational, SheafError> {
        let k = self.multiplicity();
        if k == 0 {
            return Err(SheafError::ZeroMultiplicity);
        }
        Ok(BigRational::new(BigInt::from(self.t), BigInt::from(k)))
    }

    /// Hilbert polynomial of the twist by `O(u, v)`.
    pub fn twist(self, u: i64, v: i64) -> LinPoly {
        LinPoly { t: self.t + self.r * u + self.s * v, ..self }
    }
}

pub fn slope(p: LinPoly) -> Result<BigRational, SheafError> {
    p.slope()
}

pub fn compare_reduced(p1: LinPoly, p2: LinPoly) -> Result<Ordering, SheafError> {
    Ok(p1.slope()?.cmp(&p2.slope()?))
}

pub fn twist_hilbert(p: LinPoly, u: i64, v: i64) -> LinPoly {
    p.twist(u, v)
}

impl std::ops::Add for LinPoly {
    type Output = LinPoly;
    fn add(self, o: LinPoly) -> LinPoly {
        LinPoly::new(self.r + o.r, self.s + o.s, self.t + o.t)
    }
}

impl std::ops::Sub for LinPoly {
    type Output = LinPoly;
    fn sub(self, o: LinPoly) -> LinPoly {
        LinPoly::new(self.r - o.r, self.s - o.s, self.t - o.t)
    }
}

impl fmt::Display for LinPoly {
    /// `3m+2n+0`, `m+1`, `4m+2n-1`; the constant always carries a sign.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, v) in [(self.r, "m"), (self.s, "n")] {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(v);
        }
        if out.is_empty() {
            out = self.t.to_string();
        } else {
            out.push_str(&format!("{:+}", self.t));
        }
        write!(f, "{out}")
    }
}

impl std::str::FromStr for LinPoly {
    type Err = SheafError;

    /// Accepts `4m+2n+1`, `m-1`, `3m+2n+0`, `2n`, `-3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SheafError::BadPolynomial(s.to_string());
        let src: String = s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        if src.is_empty() {
            return Err(bad());
        }
        let mut out = LinPoly::new(0, 0, 0);
        let mut seen = [false; 3];
        let mut rest = src.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1.min(body.len())..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (coef, slot) = if let Some(c) = term.strip_suffix('m') {
                (c, 0)
            } else if let Some(c) = term.strip_suffix('n') {
                (c, 1)
            } else {
                (term, 2)
            };
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let v: i64 = if coef.is_empty() && slot < 2 { 1 } else { coef.parse().map_err(|_| bad())? };
            if seen[slot] {
                return Err(bad());
            }
            seen[slot] = true;
            match slot {
                0 => out.r = sign * v,
                1 => out.s = sign * v,
                _ => out.t = sign * v,
            }
        }
        Ok(out)
    }
}
