//! Walls for α-semistable pairs with linear Hilbert polynomial, the table of
//! known moduli spaces, and the projective fibers of the flipping loci.

use std::fmt;

use num::{BigInt, BigRational, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::extcalc::{pairs, solve_pair, ExtError, HomFacts, PairExpr};
use crate::lesolve::Dim;
use crate::sheafalg::LinPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WallError {
    #[error("pair slope undefined for {0}: zero multiplicity")]
    ZeroMultiplicity(LinPoly),
    #[error("gamma must be 0 or 1, got {0}")]
    Gamma(u8),
    #[error("{0} is not in the table of known moduli")]
    NotInTable(String),
    #[error("no representative pair recorded for {0}")]
    NoRepresentative(String),
    #[error("Ext^1 between {0} and {1} is not forced")]
    UnknownFiber(String, String),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

pub(crate) fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// A linear Hilbert polynomial together with the dimension of the chosen sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PairPoly {
    pub poly: LinPoly,
    pub gamma: u8,
}

impl PairPoly {
    pub fn new(poly: LinPoly, gamma: u8) -> Result<Self, WallError> {
        if gamma > 1 {
            return Err(WallError::Gamma(gamma));
        }
        Ok(PairPoly { poly, gamma })
    }

    pub fn with_section(poly: LinPoly) -> Self {
        PairPoly { poly, gamma: 1 }
    }

    pub fn without_section(poly: LinPoly) -> Self {
        PairPoly { poly, gamma: 0 }
    }
}

impl fmt::Display for PairPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gamma == 0 {
            write!(f, "{}", self.poly)
        } else {
            write!(f, "({}, γ={})", self.poly, self.gamma)
        }
    }
}

/// `(t + γ·α) / (r + s)`.
pub fn pair_slope(pp: PairPoly, alpha: &BigRational) -> Result<BigRational, WallError> {
    let k = pp.poly.multiplicity();
    if k == 0 {
        return Err(WallError::ZeroMultiplicity(pp.poly));
    }
    let num = BigRational::from_integer(BigInt::from(pp.poly.t)) + alpha * BigInt::from(pp.gamma);
    Ok(num / BigInt::from(k))
}

/// The shape of a known moduli space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Descriptor {
    Empty,
    Proj {
        n: u32,
    },
    Prod {
        factors: Vec<Descriptor>,
    },
    Bundle {
        fiber: Box<Descriptor>,
        base: Box<Descriptor>,
    },
    /// Hilbert scheme of `n` points on the quadric.
    Hilb {
        n: u32,
    },
    /// Incidence variety of points on curves of class `(c, d)`.
    UniversalCurve {
        c: u32,
        d: u32,
    },
}

impl Descriptor {
    pub fn dim(&self) -> Option<u64> {
        match self {
            Descriptor::Empty => None,
            Descriptor::Proj { n } => Some(*n as u64),
            Descriptor::Prod { factors } => factors.iter().map(Descriptor::dim).sum(),
            Descriptor::Bundle { fiber, base } => Some(fiber.dim()? + base.dim()?),
            Descriptor::Hilb { n } => Some(2 * *n as u64),
            Descriptor::UniversalCurve { c, d } => Some(((c + 1) * (d + 1)) as u64),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Empty => write!(f, "EMPTY"),
            Descriptor::Proj { n } => write!(f, "P^{n}"),
            Descriptor::Prod { factors } => {
                let parts: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
            Descriptor::Bundle { fiber, base } => write!(f, "{fiber}-bundle over ({base})"),
            Descriptor::Hilb { n } => write!(f, "Hilb^{n}(P1 x P1)"),
            Descriptor::UniversalCurve { c, d } => write!(f, "universal curve ({c},{d})"),
        }
    }
}

/// Which moduli space of the given polynomial is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuliKind {
    /// Semistable sheaves.
    Sheaf,
    /// Pairs with one section, α just above zero.
    PairSmall,
    /// Pairs with one section, α beyond the last wall.
    PairLarge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModuliKey {
    pub poly: LinPoly,
    pub kind: ModuliKind,
}

impl fmt::Display for ModuliKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModuliKind::Sheaf => write!(f, "M({})", self.poly),
            ModuliKind::PairSmall => write!(f, "M^0+({})", self.poly),
            ModuliKind::PairLarge => write!(f, "M^inf({})", self.poly),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliFact {
    pub key: ModuliKey,
    pub descriptor: Descriptor,
    /// A typical point, used to compute Ext groups across walls.
    pub representative: Option<PairExpr>,
    pub citation: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModuliTable {
    facts: Vec<ModuliFact>,
}

fn lin(r: i64, s: i64, t: i64) -> LinPoly {
    LinPoly::new(r, s, t)
}

impl ModuliTable {
    pub fn new() -> Self {
        ModuliTable::default()
    }

    pub fn insert(&mut self, fact: ModuliFact) {
        self.facts.retain(|f| f.key != fact.key);
        self.facts.push(fact);
    }

    pub fn facts(&self) -> &[ModuliFact] {
        &self.facts
    }

    pub fn lookup(&self, key: ModuliKey) -> Result<&ModuliFact, WallError> {
        self.facts.iter().find(|f| f.key == key).ok_or_else(|| WallError::NotInTable(key.to_string()))
    }

    pub fn without(&self, key: ModuliKey) -> ModuliTable {
        ModuliTable { facts: self.facts.iter().filter(|f| f.key != key).cloned().collect() }
    }

    /// The moduli spaces that appear at the walls of `4m+2n±1`.
    pub fn paper() -> ModuliTable {
        use Descriptor::*;
        use ModuliKind::*;
        let mut t = ModuliTable::new();
        let mut add = |poly, kind, descriptor, representative: Option<PairExpr>, citation: &str| {
            t.insert(ModuliFact {
                key: ModuliKey { poly, kind },
                descriptor,
                representative,
                citation: citation.into(),
            });
        };
        add(lin(2, 0, 1), Sheaf, Empty, None, "Prop. walls, M(2m+1) is empty");
        add(
            lin(3, 2, -1),
            PairSmall,
            Proj { n: 11 },
            Some(pairs::quintic_pair()),
            "Remark flipping_base, M^0+(3m+2n-1) = P^11",
        );
        add(
            lin(3, 2, 0),
            PairSmall,
            UniversalCurve { c: 2, d: 3 },
            Some(pairs::quintic_point_pair()),
            "Prop. universal_quintic, P^10-bundle over P1 x P1",
        );
        add(
            lin(1, 0, 0),
            Sheaf,
            Proj { n: 1 },
            Some(pairs::line_minus_one()),
            "Wall of 4m+2n-1, O_L(-1,0) over the lines of class (0,1)",
        );
        add(
            lin(1, 0, 1),
            Sheaf,
            Proj { n: 1 },
            Some(pairs::line_zero()),
            "Remark flipping_base, O_L over the lines of class (0,1)",
        );
        add(
            lin(1, 0, 2),
            Sheaf,
            Proj { n: 1 },
            Some(pairs::line_plus_one()),
            "Remark flipping_base, O_L(1,0) over the lines of class (0,1)",
        );
        add(
            lin(4, 2, 1),
            PairLarge,
            Bundle { fiber: Box::new(Proj { n: 11 }), base: Box::new(Hilb { n: 3 }) },
            None,
            "Prop. M_infinity, P^11-bundle over Hilb^3",
        );
        add(
            lin(4, 2, -1),
            PairLarge,
            UniversalCurve { c: 2, d: 4 },
            None,
            "Prop. M_large, universal curve of bidegree (2,4)",
        );
        t
    }
}

/// `known_moduli` against the curated table.
pub fn known_moduli(poly: LinPoly, kind: ModuliKind) -> Result<ModuliFact, WallError> {
    ModuliTable::paper().lookup(ModuliKey { poly, kind }).cloned()
}

/// What the table says about the two sides of a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TableStatus {
    /// Both sides are listed and non-empty.
    Verified,
    /// At least one side is not listed; kept, but not confirmed.
    Unverified,
    /// One side is listed as empty.
    Empty,
}

/// A sub-pair with one section whose α-slope meets that of the whole pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    #[serde(serialize_with = "ser_ratio")]
    pub alpha: BigRational,
    pub sub: PairPoly,
    pub quot: PairPoly,
}

impl Candidate {
    pub fn sub_key(&self) -> ModuliKey {
        ModuliKey { poly: self.sub.poly, kind: ModuliKind::PairSmall }
    }

    pub fn quot_key(&self) -> ModuliKey {
        ModuliKey { poly: self.quot.poly, kind: ModuliKind::Sheaf }
    }

    pub fn table_status(&self, table: &ModuliTable) -> TableStatus {
        let sides = [table.lookup(self.sub_key()), table.lookup(self.quot_key())];
        if sides.iter().any(|s| matches!(s, Ok(f) if f.descriptor == Descriptor::Empty)) {
            TableStatus::Empty
        } else if sides.iter().all(Result::is_ok) {
            TableStatus::Verified
        } else {
            TableStatus::Unverified
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    #[serde(serialize_with = "ser_ratio")]
    pub alpha: BigRational,
    pub sub: PairPoly,
    pub quot: PairPoly,
    /// Further decompositions with the same α.
    pub also: Vec<(PairPoly, PairPoly)>,
    pub status: TableStatus,
    /// Fiber dimension of the flipping locus just above the wall.
    pub fiber_above: Option<u64>,
    /// Fiber dimension of the flipping locus just below the wall.
    pub fiber_below: Option<u64>,
    pub base: Option<Descriptor>,
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α = {} [sub {} | quot {}]", self.alpha, self.sub.poly, self.quot.poly)
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Every `(r, s, t)` with `0 ≤ r ≤ R`, `0 ≤ s ≤ S`, `(r, s) ∉ {(0,0), (R,S)}`,
/// `t ≥ r + s − rs`, whose sub-pair with one section has the α-slope of
/// `whole` at some `α > 0`, sorted by α.
pub fn wall_candidates(whole: PairPoly, bounds: (i64, i64)) -> Vec<Candidate> {
    let (rr, ss) = bounds;
    let w = whole.poly;
    let k = w.multiplicity();
    let mut out = Vec::new();
    if k <= 0 {
        return out;
    }
    for r in 0..=rr {
        for s in 0..=ss {
            if (r, s) == (0, 0) || (r, s) == (rr, ss) {
                continue;
            }
            let j = r + s;
            if j >= k {
                continue;
            }
            // α = (j·t_w − k·t) / (k − j) > 0  ⇔  k·t < j·t_w
            let mut t = r + s - r * s;
            while k * t < j * w.t {
                let alpha = ratio(j * w.t - k * t, k - j);
                let sub = PairPoly::with_section(lin(r, s, t));
                let quot = PairPoly::without_section(w - sub.poly);
                out.push(Candidate { alpha, sub, quot });
                t += 1;
            }
        }
    }
    out.sort_by(|a, b| a.alpha.cmp(&b.alpha).then(a.sub.cmp(&b.sub)));
    out
}

/// Walls of `whole` (which must carry a section), after discarding decompositions
/// with an empty side according to `table`.
pub fn find_walls_with(whole: PairPoly, bounds: (i64, i64), table: &ModuliTable) -> Vec<Wall> {
    let mut walls: Vec<Wall> = Vec::new();
    for c in wall_candidates(whole, bounds) {
        let status = c.table_status(table);
        if status == TableStatus::Empty {
            continue;
        }
        match walls.last_mut() {
            Some(w) if w.alpha == c.alpha => {
                w.also.push((c.sub, c.quot));
                if status == TableStatus::Unverified {
                    w.status = status;
                }
            }
            _ => walls.push(Wall {
                alpha: c.alpha,
                sub: c.sub,
                quot: c.quot,
                also: Vec::new(),
                status,
                fiber_above: None,
                fiber_below: None,
                base: None,
            }),
        }
    }
    walls
}

pub fn find_walls(whole: PairPoly, bounds: (i64, i64)) -> Vec<Wall> {
    find_walls_with(whole, bounds, &ModuliTable::paper())
}

/// The α at which a sub-pair `sub` and the complementary `quot` have equal α-slope,
/// whichever of them carries the section.
pub fn crossing_alpha(sub: PairPoly, quot: PairPoly) -> Result<Option<BigRational>, WallError> {
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::zero();
    // slope(sub) − slope(quot) is affine in α
    let f0 = pair_slope(sub, &zero)? - pair_slope(quot, &zero)?;
    let f1 = pair_slope(sub, &one)? - pair_slope(quot, &one)?;
    let slope = &f1 - &f0;
    if slope.is_zero() {
        return Ok(None);
    }
    let alpha = -f0 / slope;
    Ok(alpha.is_positive().then_some(alpha))
}

fn ext1(a: &PairExpr, b: &PairExpr, facts: &HomFacts) -> Result<u64, WallError> {
    match solve_pair(a, b, facts)?.pair[1] {
        Dim::Known(x) => Ok(x),
        Dim::Unknown => Err(WallError::UnknownFiber(a.to_string(), b.to_string())),
    }
}

/// Fills the flipping fibers and base of `w`. Above the wall the locus has fiber
/// `P(Ext¹(sub, quot))`, below it `P(Ext¹(quot, sub))`.
pub fn flip_data(w: &Wall, facts: &HomFacts, table: &ModuliTable) -> Result<Wall, WallError> {
    let sub_key = ModuliKey { poly: w.sub.poly, kind: ModuliKind::PairSmall };
    let quot_key = ModuliKey { poly: w.quot.poly, kind: ModuliKind::Sheaf };
    let sub = table.lookup(sub_key)?;
    let quot = table.lookup(quot_key)?;
    let rep = |f: &ModuliFact| f.representative.clone().ok_or_else(|| WallError::NoRepresentative(f.key.to_string()));
    let (a, b) = (rep(sub)?, rep(quot)?);
    let above = ext1(&a, &b, facts)?;
    let below = ext1(&b, &a, facts)?;
    let mut out = w.clone();
    out.fiber_above = Some(above.saturating_sub(1));
    out.fiber_below = Some(below.saturating_sub(1));
    out.base = Some(Descriptor::Prod { factors: vec![sub.descriptor.clone(), quot.descriptor.clone()] });
    Ok(out)
}
