//! Poincaré polynomials in `ξ = t²` of spaces built from projective spaces,
//! bundles, blow-ups, wall crossings and Hilbert schemes of points, and the
//! assembly of the Poincaré polynomial of `M(4m+2n+1)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::exactpoly::{geometric_poly, trunc_product, Factor, PolyError, UPoly};
use crate::extcalc::HomFacts;
use crate::sexpr::{self, ParseError, SExpr};
use crate::sheafalg::LinPoly;
use crate::wallfind::{
    find_walls_with, flip_data, Descriptor, ModuliKey, ModuliKind, ModuliTable, PairPoly, Wall, WallError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BettiError {
    #[error("Hilbert scheme formula needs vanishing odd Betti numbers, got b1 = {0}, b3 = {1}")]
    OddBetti(u32, u32),
    #[error("blow-up codimension must be at least 1")]
    Codim,
    #[error("the empty space has no Poincaré polynomial")]
    EmptySpace,
    #[error("wall at α = {alpha}: flip data gives {computed}, expected {displayed}")]
    CrossCheck { alpha: String, computed: String, displayed: String },
    #[error("wall at α = {0} has no flip data")]
    MissingFlip(String),
    #[error("expected walls {expected:?}, found {found:?}")]
    Walls { expected: Vec<String>, found: Vec<String> },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Wall(#[from] WallError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Betti numbers `b0..b4` of the quadric surface.
pub const QUADRIC_BETTI: [u32; 5] = [1, 0, 2, 0, 1];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpaceExpr {
    Proj {
        n: u32,
    },
    Prod {
        factors: Vec<SpaceExpr>,
    },
    Bundle {
        fiber: Box<SpaceExpr>,
        base: Box<SpaceExpr>,
    },
    Hilb {
        betti: [u32; 5],
        n: u32,
    },
    /// Blow-up of `x` along `z` of codimension `codim`.
    Blowup {
        x: Box<SpaceExpr>,
        z: Box<SpaceExpr>,
        codim: u32,
    },
    /// `x` with a `P^from`-bundle over `base` replaced by a `P^to`-bundle.
    CrossWall {
        x: Box<SpaceExpr>,
        from: u32,
        to: u32,
        base: Box<SpaceExpr>,
    },
    Literal {
        poly: UPoly,
    },
}

impl SpaceExpr {
    pub fn proj(n: u32) -> Self {
        SpaceExpr::Proj { n }
    }

    pub fn prod(factors: Vec<SpaceExpr>) -> Self {
        SpaceExpr::Prod { factors }
    }

    pub fn bundle(fiber: SpaceExpr, base: SpaceExpr) -> Self {
        SpaceExpr::Bundle { fiber: Box::new(fiber), base: Box::new(base) }
    }

    pub fn hilb(n: u32) -> Self {
        SpaceExpr::Hilb { betti: QUADRIC_BETTI, n }
    }

    pub fn blowup(x: SpaceExpr, z: SpaceExpr, codim: u32) -> Self {
        SpaceExpr::Blowup { x: Box::new(x), z: Box::new(z), codim }
    }

    pub fn cross_wall(x: SpaceExpr, from: u32, to: u32, base: SpaceExpr) -> Self {
        SpaceExpr::CrossWall { x: Box::new(x), from, to, base: Box::new(base) }
    }

    /// `P¹ × P¹`.
    pub fn quadric() -> Self {
        SpaceExpr::prod(vec![SpaceExpr::proj(1), SpaceExpr::proj(1)])
    }

    /// The space described by a moduli descriptor, with Hilbert schemes taken on
    /// a surface with Betti numbers `betti`.
    pub fn from_descriptor(d: &Descriptor, betti: [u32; 5]) -> Result<SpaceExpr, BettiError> {
        Ok(match d {
            Descriptor::Empty => return Err(BettiError::EmptySpace),
            Descriptor::Proj { n } => SpaceExpr::proj(*n),
            Descriptor::Prod { factors } => {
                SpaceExpr::prod(factors.iter().map(|f| SpaceExpr::from_descriptor(f, betti)).collect::<Result<_, _>>()?)
            }
            Descriptor::Bundle { fiber, base } => {
                SpaceExpr::bundle(SpaceExpr::from_descriptor(fiber, betti)?, SpaceExpr::from_descriptor(base, betti)?)
            }
            Descriptor::Hilb { n } => SpaceExpr::Hilb { betti, n: *n },
            Descriptor::UniversalCurve { c, d } => {
                SpaceExpr::bundle(SpaceExpr::proj((c + 1) * (d + 1) - 2), SpaceExpr::quadric())
            }
        })
    }

    pub fn to_sexpr(&self) -> SExpr {
        let a = |s: &str| SExpr::Atom(s.to_string());
        let n = |k: u32| SExpr::Atom(k.to_string());
        match self {
            SpaceExpr::Proj { n: k } => SExpr::List(vec![a("proj"), n(*k)]),
            SpaceExpr::Prod { factors } => {
                let mut v = vec![a("prod")];
                v.extend(factors.iter().map(SpaceExpr::to_sexpr));
                SExpr::List(v)
            }
            SpaceExpr::Bundle { fiber, base } => SExpr::List(vec![a("bundle"), fiber.to_sexpr(), base.to_sexpr()]),
            SpaceExpr::Hilb { betti, n: k } => {
                if *betti == QUADRIC_BETTI {
                    SExpr::List(vec![a("hilb"), n(*k)])
                } else {
                    SExpr::List(vec![a("hilb"), SExpr::List(betti.iter().map(|&b| n(b)).collect()), n(*k)])
                }
            }
            SpaceExpr::Blowup { x, z, codim } => SExpr::List(vec![a("blowup"), x.to_sexpr(), z.to_sexpr(), n(*codim)]),
            SpaceExpr::CrossWall { x, from, to, base } => {
                SExpr::List(vec![a("cross"), x.to_sexpr(), n(*from), n(*to), base.to_sexpr()])
            }
            SpaceExpr::Literal { poly } => {
                let mut v = vec![a("poly")];
                v.extend(poly.coeffs().iter().map(|c| SExpr::Atom(c.to_string())));
                SExpr::List(v)
            }
        }
    }

    /// Parses `(proj N)`, `(prod X ...)`, `(bundle F B)`, `(hilb N)`,
    /// `(hilb (b0 b1 b2 b3 b4) N)`, `(blowup X Z C)`, `(cross X FROM TO B)`
    /// and `(poly c0 c1 ...)`.
    pub fn from_sexpr(e: &SExpr) -> Result<SpaceExpr, BettiError> {
        let bad = || ParseError::Expected { expected: "space expression".into(), found: e.to_string() };
        let items = e.list().ok_or_else(bad)?;
        let head = e.head().ok_or_else(bad)?;
        let args = &items[1..];
        let u32_at = |i: usize| -> Result<u32, BettiError> {
            let v = args.get(i).ok_or_else(bad)?.uint()?;
            Ok(u32::try_from(v).map_err(|_| ParseError::Int(v.to_string()))?)
        };
        let sub = |i: usize| -> Result<SpaceExpr, BettiError> { SpaceExpr::from_sexpr(args.get(i).ok_or_else(bad)?) };
        let arity = |k: usize| -> Result<(), BettiError> {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad().into())
            }
        };
        Ok(match head {
            "proj" => {
                arity(1)?;
                SpaceExpr::proj(u32_at(0)?)
            }
            "prod" => SpaceExpr::prod(args.iter().map(SpaceExpr::from_sexpr).collect::<Result<_, _>>()?),
            "bundle" => {
                arity(2)?;
                SpaceExpr::bundle(sub(0)?, sub(1)?)
            }
            "hilb" if args.len() == 1 => SpaceExpr::hilb(u32_at(0)?),
            "hilb" => {
                arity(2)?;
                let bs = args[0].list().filter(|v| v.len() == 5).ok_or_else(bad)?;
                let mut betti = [0u32; 5];
                for (slot, b) in betti.iter_mut().zip(bs) {
                    let v = b.uint()?;
                    *slot = u32::try_from(v).map_err(|_| ParseError::Int(v.to_string()))?;
                }
                SpaceExpr::Hilb { betti, n: u32_at(1)? }
            }
            "blowup" => {
                arity(3)?;
                SpaceExpr::blowup(sub(0)?, sub(1)?, u32_at(2)?)
            }
            "cross" => {
                arity(4)?;
                SpaceExpr::cross_wall(sub(0)?, u32_at(1)?, u32_at(2)?, sub(3)?)
            }
            "poly" => {
                let cs: Vec<i64> = args.iter().map(SExpr::int).collect::<Result<_, _>>()?;
                SpaceExpr::Literal { poly: UPoly::from_i64s(&cs) }
            }
            other => return Err(ParseError::UnknownForm(other.to_string()).into()),
        })
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

impl FromStr for SpaceExpr {
    type Err = BettiError;

    /// Also accepts a bare form without the outer parentheses, as in `hilb 3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let e = if t.starts_with('(') { sexpr::parse(t)? } else { sexpr::parse(&format!("({t})"))? };
        SpaceExpr::from_sexpr(&e)
    }
}

/// Göttsche's generating function truncated after `z^n`; entry `k` is `P(Hilb^k)`.
pub fn goettsche_series(betti: [u32; 5], n: u32) -> Result<Vec<UPoly>, BettiError> {
    if betti[1] != 0 || betti[3] != 0 {
        return Err(BettiError::OddBetti(betti[1], betti[3]));
    }
    let mut factors = Vec::new();
    for k in 1..=n as usize {
        for (shift, b) in [(0, betti[0]), (1, betti[2]), (2, betti[4])] {
            for _ in 0..b {
                factors.push(Factor::denominator(UPoly::monomial(1, k - 1 + shift), k));
            }
        }
    }
    Ok(trunc_product(&factors, n as usize)?.coeffs().to_vec())
}

pub fn poincare(x: &SpaceExpr) -> Result<UPoly, BettiError> {
    Ok(match x {
        SpaceExpr::Proj { n } => geometric_poly(*n as usize),
        SpaceExpr::Prod { factors } => factors.iter().map(poincare).product::<Result<UPoly, _>>()?,
        SpaceExpr::Bundle { fiber, base } => poincare(fiber)? * poincare(base)?,
        SpaceExpr::Hilb { betti, n } => goettsche_series(*betti, *n)?.swap_remove(*n as usize),
        SpaceExpr::Blowup { x, z, codim } => {
            if *codim == 0 {
                return Err(BettiError::Codim);
            }
            poincare(x)? + (geometric_poly(*codim as usize - 1) - UPoly::one()) * poincare(z)?
        }
        SpaceExpr::CrossWall { x, from, to, base } => {
            poincare(x)? + (geometric_poly(*to as usize) - geometric_poly(*from as usize)) * poincare(base)?
        }
        SpaceExpr::Literal { poly } => poly.clone(),
    })
}

/// Inputs of the assembly that a caller may perturb.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub surface_betti: [u32; 5],
    pub table: ModuliTable,
    pub facts: HomFacts,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { surface_betti: QUADRIC_BETTI, table: ModuliTable::paper(), facts: HomFacts::paper() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assembly {
    pub walls: Vec<Wall>,
    pub space: SpaceExpr,
    pub poly: UPoly,
}

fn lin(r: i64, s: i64, t: i64) -> LinPoly {
    LinPoly::new(r, s, t)
}

/// Starts from the large-α moduli space of `whole` and crosses every wall in
/// decreasing α, replacing the fiber above each wall by the one below.
fn assemble_small_alpha(whole: LinPoly, cfg: &PipelineConfig) -> Result<Assembly, BettiError> {
    let start = cfg.table.lookup(ModuliKey { poly: whole, kind: ModuliKind::PairLarge })?;
    let mut space = SpaceExpr::from_descriptor(&start.descriptor, cfg.surface_betti)?;
    let bounds = (whole.r, whole.s);
    let mut walls = Vec::new();
    for w in find_walls_with(PairPoly::with_section(whole), bounds, &cfg.table).iter().rev() {
        let w = flip_data(w, &cfg.facts, &cfg.table)?;
        let (Some(above), Some(below), Some(base)) = (w.fiber_above, w.fiber_below, w.base.as_ref()) else {
            return Err(BettiError::MissingFlip(w.alpha.to_string()));
        };
        let base = SpaceExpr::from_descriptor(base, cfg.surface_betti)?;
        space = SpaceExpr::cross_wall(space, above as u32, below as u32, base);
        walls.push(w);
    }
    walls.reverse();
    let poly = poincare(&space)?;
    Ok(Assembly { walls, space, poly })
}

fn wall_delta(w: &Wall, betti: [u32; 5]) -> Result<UPoly, BettiError> {
    let (Some(above), Some(below), Some(base)) = (w.fiber_above, w.fiber_below, w.base.as_ref()) else {
        return Err(BettiError::MissingFlip(w.alpha.to_string()));
    };
    let base = poincare(&SpaceExpr::from_descriptor(base, betti)?)?;
    Ok((geometric_poly(below as usize) - geometric_poly(above as usize)) * base)
}

fn expect_walls(walls: &[Wall], expected: &[i64]) -> Result<(), BettiError> {
    let found: Vec<String> = walls.iter().map(|w| w.alpha.to_string()).collect();
    let want: Vec<String> = expected.iter().map(|a| a.to_string()).collect();
    if found != want {
        return Err(BettiError::Walls { expected: want, found });
    }
    Ok(())
}

fn cross_check(w: &Wall, displayed: UPoly, betti: [u32; 5]) -> Result<(), BettiError> {
    let computed = wall_delta(w, betti)?;
    if computed != displayed {
        return Err(BettiError::CrossCheck {
            alpha: w.alpha.to_string(),
            computed: computed.to_string(),
            displayed: displayed.to_string(),
        });
    }
    Ok(())
}

/// `P(M^{0+}(4m+2n+1))` through the walls at 11 and 5.
pub fn assemble_m0plus_4m2n1(cfg: &PipelineConfig) -> Result<Assembly, BettiError> {
    let a = assemble_small_alpha(lin(4, 2, 1), cfg)?;
    expect_walls(&a.walls, &[5, 11])?;
    let p = |n| geometric_poly(n);
    cross_check(&a.walls[1], (p(1) - p(3)) * p(11) * p(1), cfg.surface_betti)?;
    cross_check(&a.walls[0], (p(1) - p(2)) * p(10) * p(1) * p(1) * p(1), cfg.surface_betti)?;
    Ok(a)
}

/// `P(M^{0+}(4m+2n-1))` through the wall at 1.
pub fn assemble_m0plus_4m2n_minus1(cfg: &PipelineConfig) -> Result<Assembly, BettiError> {
    let a = assemble_small_alpha(lin(4, 2, -1), cfg)?;
    expect_walls(&a.walls, &[1])?;
    cross_check(&a.walls[0], UPoly::zero(), cfg.surface_betti)?;
    Ok(a)
}

/// The printed Poincaré polynomial of `M(4m+2n+1)`, lowest degree first.
pub const THEOREM_COEFFS: [i64; 18] = [1, 3, 8, 16, 21, 23, 24, 24, 24, 24, 24, 24, 23, 21, 16, 8, 3, 1];

pub fn theorem_polynomial() -> UPoly {
    UPoly::from_i64s(&THEOREM_COEFFS)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    /// Lowest exponent at which computed and expected differ.
    pub first_mismatch: Option<usize>,
}

pub fn compare(computed: &UPoly, expected: &UPoly) -> Verdict {
    let len = computed.coeffs().len().max(expected.coeffs().len());
    let first_mismatch = (0..len).find(|&k| computed.coeff(k) != expected.coeff(k));
    Verdict { pass: first_mismatch.is_none(), first_mismatch }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremResult {
    pub plus: Assembly,
    pub minus: Assembly,
    pub computed: UPoly,
    pub expected: UPoly,
    pub verdict: Verdict,
}

/// `P(M) = P(M^{0+}(4m+2n+1)) − ξ·P(M^{0+}(4m+2n−1))`, compared with the printed polynomial.
pub fn assemble_moduli_poincare(cfg: &PipelineConfig) -> Result<TheoremResult, BettiError> {
    let plus = assemble_m0plus_4m2n1(cfg)?;
    let minus = assemble_m0plus_4m2n_minus1(cfg)?;
    let computed = &plus.poly - &minus.poly.shift(1);
    let expected = theorem_polynomial();
    let verdict = compare(&computed, &expected);
    Ok(TheoremResult { plus, minus, computed, expected, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UPoly {
        UPoly::from_i64s(cs)
    }

    #[test]
    fn hilbert_schemes() {
        assert_eq!(poincare(&SpaceExpr::hilb(1)).unwrap(), p(&[1, 2, 1]));
        assert_eq!(poincare(&SpaceExpr::hilb(2)).unwrap(), p(&[1, 3, 6, 3, 1]));
        assert_eq!(poincare(&SpaceExpr::hilb(3)).unwrap(), p(&[1, 3, 9, 14, 9, 3, 1]));
        assert_eq!(poincare(&SpaceExpr::hilb(0)).unwrap(), UPoly::one());
        let odd = SpaceExpr::Hilb { betti: [1, 2, 2, 0, 1], n: 2 };
        assert_eq!(poincare(&odd), Err(BettiError::OddBetti(2, 0)));
    }

    #[test]
    fn assemblies() {
        let cfg = PipelineConfig::default();
        let plus = assemble_m0plus_4m2n1(&cfg).unwrap();
        assert_eq!(plus.poly.eval_int(1), 344.into());
        assert_eq!(plus.poly.degree(), Some(17));
        assert_eq!(plus.poly.leading(), 1.into());
        let minus = assemble_m0plus_4m2n_minus1(&cfg).unwrap();
        assert_eq!(minus.poly, geometric_poly(13) * p(&[1, 2, 1]));
        assert_eq!(minus.poly.eval_int(1), 56.into());
        let t = assemble_moduli_poincare(&cfg).unwrap();
        assert!(t.verdict.pass);
        assert!(t.computed.is_palindromic());
        assert_eq!(t.computed.eval_int(1), 288.into());
    }

    #[test]
    fn tampered_betti_fails_comparison() {
        let cfg = PipelineConfig { surface_betti: [1, 0, 3, 0, 1], ..PipelineConfig::default() };
        let t = assemble_moduli_poincare(&cfg).unwrap();
        assert!(!t.verdict.pass);
        assert!(t.verdict.first_mismatch.is_some());
    }

    #[test]
    fn parse_roundtrip() {
        for s in [
            "(proj 3)",
            "(bundle (proj 11) (hilb 3))",
            "(hilb (1 0 3 0 1) 2)",
            "(cross (proj 5) 3 1 (prod (proj 11) (proj 1)))",
            "(blowup (proj 4) (proj 1) 3)",
            "(poly 1 2 1)",
        ] {
            let x: SpaceExpr = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("hilb 3".parse::<SpaceExpr>().unwrap(), SpaceExpr::hilb(3));
        assert!("(torus 2)".parse::<SpaceExpr>().is_err());
        assert!("(proj)".parse::<SpaceExpr>().is_err());
    }
}
