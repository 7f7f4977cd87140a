//! Cohomology of line bundles on P¹ and P¹×P¹, of their restrictions to
//! curves and lines, and the matching Hilbert polynomials.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::exactpoly::BiPoly;
use crate::lesolve::{self, Dim, ExactSeq, MapKind, Term};

/// The twist `O(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BiDegree {
    pub a: i64,
    pub b: i64,
}

impl BiDegree {
    pub const fn new(a: i64, b: i64) -> Self {
        BiDegree { a, b }
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.a, -self.b)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// The canonical twist `O(-2, -2)`.
pub const CANONICAL: BiDegree = BiDegree::new(-2, -2);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohError {
    #[error("curve class ({0}, {1}) must be nonnegative and nonzero")]
    BadCurveClass(i64, i64),
}

/// A curve cut out by a section of `O(c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurveClass {
    c: i64,
    d: i64,
}

impl CurveClass {
    pub fn new(c: i64, d: i64) -> Result<Self, CohError> {
        if c < 0 || d < 0 || (c == 0 && d == 0) {
            return Err(CohError::BadCurveClass(c, d));
        }
        Ok(CurveClass { c, d })
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn degree(&self) -> BiDegree {
        BiDegree::new(self.c, self.d)
    }

    pub fn as_line(&self) -> Option<LineClass> {
        match (self.c, self.d) {
            (0, 1) => Some(LineClass::ZeroOne),
            (1, 0) => Some(LineClass::OneZero),
            _ => None,
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c, self.d)
    }
}

/// One of the two rulings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LineClass {
    /// A line of class (0, 1): `O(a, b)` restricts to `O(a)`.
    ZeroOne,
    /// A line of class (1, 0): `O(a, b)` restricts to `O(b)`.
    OneZero,
}

impl LineClass {
    pub fn class(self) -> CurveClass {
        match self {
            LineClass::ZeroOne => CurveClass { c: 0, d: 1 },
            LineClass::OneZero => CurveClass { c: 1, d: 0 },
        }
    }

    pub fn restrict(self, t: BiDegree) -> i64 {
        match self {
            LineClass::ZeroOne => t.a,
            LineClass::OneZero => t.b,
        }
    }
}

/// `(h⁰, h¹, h²)`, each possibly unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CohDims {
    pub h0: Dim,
    pub h1: Dim,
    pub h2: Dim,
}

impl CohDims {
    pub fn known(h0: u64, h1: u64, h2: u64) -> Self {
        CohDims { h0: h0.into(), h1: h1.into(), h2: h2.into() }
    }

    pub fn unknown() -> Self {
        CohDims { h0: Dim::Unknown, h1: Dim::Unknown, h2: Dim::Unknown }
    }

    pub fn get(&self, i: usize) -> Dim {
        [self.h0, self.h1, self.h2][i]
    }

    pub fn all_known(&self) -> Option<[u64; 3]> {
        Some([self.h0.known()?, self.h1.known()?, self.h2.known()?])
    }

    pub fn euler(&self) -> Option<i64> {
        self.all_known().map(|[a, b, c]| a as i64 - b as i64 + c as i64)
    }

    /// Termwise sum; unknown if either side is.
    pub fn plus(&self, o: &CohDims) -> CohDims {
        let add = |x: Dim, y: Dim| match (x, y) {
            (Dim::Known(p), Dim::Known(q)) => Dim::Known(p + q),
            _ => Dim::Unknown,
        };
        CohDims { h0: add(self.h0, o.h0), h1: add(self.h1, o.h1), h2: add(self.h2, o.h2) }
    }
}

impl fmt::Display for CohDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h0={} h1={} h2={}", self.h0, self.h1, self.h2)
    }
}

/// `(h⁰, h¹)` of `O_{P¹}(a)`.
pub fn h_p1(a: i64) -> (u64, u64) {
    let h0 = if a >= 0 { (a + 1) as u64 } else { 0 };
    let h1 = if a <= -2 { (-a - 1) as u64 } else { 0 };
    (h0, h1)
}

/// Künneth on P¹×P¹.
pub fn h_surface(t: BiDegree) -> CohDims {
    let (x0, x1) = h_p1(t.a);
    let (y0, y1) = h_p1(t.b);
    CohDims::known(x0 * y0, x0 * y1 + x1 * y0, x1 * y1)
}

pub fn chi_surface(t: BiDegree) -> i64 {
    (t.a + 1) * (t.b + 1)
}

pub fn serre_dual(t: BiDegree) -> BiDegree {
    CANONICAL - t
}

/// `(h⁰, h¹)` of `O(a, b)` restricted to a line.
pub fn h_line(l: LineClass, t: BiDegree) -> (u64, u64) {
    h_p1(l.restrict(t))
}

/// The long exact sequence of `0 → O(t − C) → O(t) → O_C(t) → 0`, with the
/// first map injective on global sections.
pub fn curve_sequence(c: CurveClass, t: BiDegree) -> ExactSeq {
    let k = h_surface(t - c.degree());
    let s = h_surface(t);
    let mut terms = Vec::new();
    for i in 0..3 {
        terms.push(Term::new(format!("H{i}(K)"), k.get(i)));
        terms.push(Term::new(format!("H{i}(O)"), s.get(i)));
        terms.push(Term::new(format!("H{i}(O_C)"), Dim::Unknown));
    }
    let mut maps = vec![MapKind::None; terms.len() - 1];
    maps[0] = MapKind::Injective;
    ExactSeq::new(terms, maps).expect("nine terms, eight maps")
}

/// Cohomology of `O_C(t)`; entries the exact sequence does not force stay unknown.
pub fn h_curve(c: CurveClass, t: BiDegree) -> CohDims {
    let seq = curve_sequence(c, t);
    let sol = lesolve::solve(&seq).expect("well-formed sequence");
    CohDims { h0: sol.dim(2), h1: sol.dim(5), h2: sol.dim(8) }
}

/// `(m + a + 1)(n + b + 1)`.
pub fn hilbert_line_bundle(t: BiDegree) -> BiPoly {
    (BiPoly::m() + BiPoly::constant(t.a + 1)) * (BiPoly::n() + BiPoly::constant(t.b + 1))
}

pub fn hilbert_curve(c: CurveClass, t: BiDegree) -> BiPoly {
    hilbert_line_bundle(t) - hilbert_line_bundle(t - c.degree())
}

pub fn hilbert_line(l: LineClass, t: BiDegree) -> BiPoly {
    match l {
        LineClass::ZeroOne => BiPoly::m() + BiPoly::constant(t.a + 1),
        LineClass::OneZero => BiPoly::n() + BiPoly::constant(t.b + 1),
    }
}

pub fn hilbert_skyscraper(len: u64) -> BiPoly {
    BiPoly::constant(len as i64)
}
