//! Symbolic sheaves on P¹×P¹: Hilbert polynomials, cohomology through exact
//! sequences, slopes, and the kernel bookkeeping for the Beilinson-type
//! classification.

pub mod catalog;
mod linpoly;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::exactpoly::BiPoly;
use crate::lesolve::{self, ExactSeq, MapKind, SolveError, Term};
use crate::sexpr::{self, ParseError, SExpr};
use crate::surfcoh::{self, BiDegree, CohDims, CohError, CurveClass, LineClass};

pub use linpoly::{compare_reduced, slope, twist_hilbert, LinPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SheafError {
    #[error("reduced slope undefined for zero multiplicity")]
    ZeroMultiplicity,
    #[error("deg(g) = ({0}, {1}) lies outside the kernel table")]
    OutOfTable(i64, i64),
    #[error("cannot parse Hilbert polynomial `{0}`")]
    BadPolynomial(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Coh(#[from] CohError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// A map in the three-column long exact sequence
/// `… → X_i → Y_i → Z_i → X_{i+1} → …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LesMap {
    /// `X_i → Y_i`
    Left(usize),
    /// `Y_i → Z_i`
    Right(usize),
    /// `Z_i → X_{i+1}`
    Connecting(usize),
}

impl LesMap {
    pub fn index(self) -> usize {
        match self {
            LesMap::Left(i) => 3 * i,
            LesMap::Right(i) => 3 * i + 1,
            LesMap::Connecting(i) => 3 * i + 2,
        }
    }

    fn name(self) -> String {
        match self {
            LesMap::Left(i) => format!("left{i}"),
            LesMap::Right(i) => format!("right{i}"),
            LesMap::Connecting(i) => format!("conn{i}"),
        }
    }

    fn parse(s: &str) -> Option<LesMap> {
        let (kind, idx) = s.split_at(s.find(|c: char| c.is_ascii_digit())?);
        let i: usize = idx.parse().ok()?;
        match kind {
            "left" if i <= 2 => Some(LesMap::Left(i)),
            "right" if i <= 2 => Some(LesMap::Right(i)),
            "conn" if i <= 1 => Some(LesMap::Connecting(i)),
            _ => None,
        }
    }
}

/// A named cohomological assumption, entered into the solver as a map annotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub map: LesMap,
    pub kind: MapKind,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, map: LesMap, kind: MapKind) -> Self {
        Hypothesis { name: name.into(), map, kind }
    }
}

fn kind_name(k: MapKind) -> &'static str {
    match k {
        MapKind::None => "none",
        MapKind::Zero => "zero",
        MapKind::Injective => "injective",
        MapKind::Surjective => "surjective",
    }
}

/// `… X_0 → Y_0 → Z_0 → X_1 → …` with hypotheses applied.
pub fn three_column_les(x: [Term; 3], y: [Term; 3], z: [Term; 3], hyps: &[Hypothesis]) -> ExactSeq {
    let [x0, x1, x2] = x;
    let [y0, y1, y2] = y;
    let [z0, z1, z2] = z;
    let terms = vec![x0, y0, z0, x1, y1, z1, x2, y2, z2];
    let mut seq = ExactSeq::new(terms, vec![MapKind::None; 8]).expect("nine terms");
    for h in hyps {
        seq.set_map(h.map.index(), h.kind);
    }
    seq
}

/// A symbolic coherent sheaf on P¹×P¹.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SheafExpr {
    LineBundle(BiDegree),
    CurveSheaf(CurveClass, BiDegree),
    LineSheaf(LineClass, BiDegree),
    Skyscraper(u64),
    DirectSum(Vec<SheafExpr>),
    /// `0 → ⊕O(left) → ⊕O(right) → F → 0`.
    Resolution {
        left: Vec<BiDegree>,
        right: Vec<BiDegree>,
        hyps: Vec<Hypothesis>,
    },
    /// `0 → sub → F → quot → 0`.
    Extension {
        sub: Box<SheafExpr>,
        quot: Box<SheafExpr>,
        hyps: Vec<Hypothesis>,
    },
}

fn h_sum(ds: &[BiDegree]) -> CohDims {
    ds.iter().fold(CohDims::known(0, 0, 0), |acc, &d| acc.plus(&surfcoh::h_surface(d)))
}

fn col(prefix: &str, name: &str, h: CohDims) -> [Term; 3] {
    [0, 1, 2].map(|i| Term::new(format!("{prefix}{i}({name})"), h.get(i)))
}

impl SheafExpr {
    pub fn line_bundle(a: i64, b: i64) -> Self {
        SheafExpr::LineBundle(BiDegree::new(a, b))
    }

    pub fn curve(c: i64, d: i64, a: i64, b: i64) -> Result<Self, SheafError> {
        Ok(SheafExpr::CurveSheaf(CurveClass::new(c, d)?, BiDegree::new(a, b)))
    }

    pub fn line(l: LineClass, a: i64, b: i64) -> Self {
        SheafExpr::LineSheaf(l, BiDegree::new(a, b))
    }

    pub fn resolution(left: &[(i64, i64)], right: &[(i64, i64)], hyps: Vec<Hypothesis>) -> Self {
        let conv = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| BiDegree::new(a, b)).collect();
        SheafExpr::Resolution { left: conv(left), right: conv(right), hyps }
    }

    pub fn extension(sub: SheafExpr, quot: SheafExpr, hyps: Vec<Hypothesis>) -> Self {
        SheafExpr::Extension { sub: Box::new(sub), quot: Box::new(quot), hyps }
    }

    pub fn hilbert(&self) -> BiPoly {
        match self {
            SheafExpr::LineBundle(t) => surfcoh::hilbert_line_bundle(*t),
            SheafExpr::CurveSheaf(c, t) => surfcoh::hilbert_curve(*c, *t),
            SheafExpr::LineSheaf(l, t) => surfcoh::hilbert_line(*l, *t),
            SheafExpr::Skyscraper(n) => surfcoh::hilbert_skyscraper(*n),
            SheafExpr::DirectSum(v) => v.iter().map(SheafExpr::hilbert).sum(),
            SheafExpr::Resolution { left, right, .. } => {
                let r: BiPoly = right.iter().map(|&d| surfcoh::hilbert_line_bundle(d)).sum();
                let l: BiPoly = left.iter().map(|&d| surfcoh::hilbert_line_bundle(d)).sum();
                r - l
            }
            SheafExpr::Extension { sub, quot, .. } => sub.hilbert() + quot.hilbert(),
        }
    }

    /// The Hilbert polynomial as `rm + sn + t`, when it is linear.
    pub fn linear_hilbert(&self) -> Option<LinPoly> {
        LinPoly::from_bipoly(&self.hilbert())
    }

    pub fn support_dim(&self) -> u32 {
        self.hilbert().total_degree().unwrap_or(0)
    }

    /// Tensor with `O(u, v)`.
    pub fn twist(&self, t: BiDegree) -> SheafExpr {
        match self {
            SheafExpr::LineBundle(d) => SheafExpr::LineBundle(*d + t),
            SheafExpr::CurveSheaf(c, d) => SheafExpr::CurveSheaf(*c, *d + t),
            SheafExpr::LineSheaf(l, d) => SheafExpr::LineSheaf(*l, *d + t),
            SheafExpr::Skyscraper(n) => SheafExpr::Skyscraper(*n),
            SheafExpr::DirectSum(v) => SheafExpr::DirectSum(v.iter().map(|x| x.twist(t)).collect()),
            SheafExpr::Resolution { left, right, hyps } => SheafExpr::Resolution {
                left: left.iter().map(|&d| d + t).collect(),
                right: right.iter().map(|&d| d + t).collect(),
                hyps: hyps.clone(),
            },
            SheafExpr::Extension { sub, quot, hyps } => {
                SheafExpr::Extension { sub: Box::new(sub.twist(t)), quot: Box::new(quot.twist(t)), hyps: hyps.clone() }
            }
        }
    }

    /// The long exact cohomology sequence attached to a resolution or extension.
    pub fn cohomology_sequence(&self) -> Option<ExactSeq> {
        match self {
            SheafExpr::Resolution { left, right, hyps } => Some(three_column_les(
                col("H", "left", h_sum(left)),
                col("H", "right", h_sum(right)),
                col("H", "F", CohDims::unknown()),
                hyps,
            )),
            SheafExpr::Extension { sub, quot, hyps } => Some(three_column_les(
                col("H", "sub", sub.h_dims()),
                col("H", "F", CohDims::unknown()),
                col("H", "quot", quot.h_dims()),
                hyps,
            )),
            _ => None,
        }
    }

    pub fn h_dims(&self) -> CohDims {
        match self {
            SheafExpr::LineBundle(t) => surfcoh::h_surface(*t),
            SheafExpr::CurveSheaf(c, t) => match c.as_line() {
                Some(l) => {
                    let (h0, h1) = surfcoh::h_line(l, *t);
                    CohDims::known(h0, h1, 0)
                }
                None => surfcoh::h_curve(*c, *t),
            },
            SheafExpr::LineSheaf(l, t) => {
                let (h0, h1) = surfcoh::h_line(*l, *t);
                CohDims::known(h0, h1, 0)
            }
            SheafExpr::Skyscraper(n) => CohDims::known(*n, 0, 0),
            SheafExpr::DirectSum(v) => v.iter().fold(CohDims::known(0, 0, 0), |acc, x| acc.plus(&x.h_dims())),
            SheafExpr::Resolution { .. } | SheafExpr::Extension { .. } => {
                let seq = self.cohomology_sequence().expect("composite sheaf");
                let sol = lesolve::solve(&seq).expect("well-formed sequence");
                let base = if matches!(self, SheafExpr::Resolution { .. }) { 2 } else { 1 };
                CohDims { h0: sol.dim(base), h1: sol.dim(base + 3), h2: sol.dim(base + 6) }
            }
        }
    }

    /// Left and right terms of a two-term locally free resolution, when one is known.
    pub fn resolution_parts(&self) -> Option<(Vec<BiDegree>, Vec<BiDegree>)> {
        match self {
            SheafExpr::LineBundle(t) => Some((vec![], vec![*t])),
            SheafExpr::CurveSheaf(c, t) => Some((vec![*t - c.degree()], vec![*t])),
            SheafExpr::LineSheaf(l, t) => Some((vec![*t - l.class().degree()], vec![*t])),
            SheafExpr::Resolution { left, right, .. } => Some((left.clone(), right.clone())),
            SheafExpr::DirectSum(v) => {
                let mut l = Vec::new();
                let mut r = Vec::new();
                for x in v {
                    let (a, b) = x.resolution_parts()?;
                    l.extend(a);
                    r.extend(b);
                }
                Some((l, r))
            }
            SheafExpr::Skyscraper(_) | SheafExpr::Extension { .. } => None,
        }
    }

    pub fn hyps(&self) -> &[Hypothesis] {
        match self {
            SheafExpr::Resolution { hyps, .. } | SheafExpr::Extension { hyps, .. } => hyps,
            _ => &[],
        }
    }

    pub fn to_sexpr(&self) -> SExpr {
        let a = |s: &str| SExpr::Atom(s.to_string());
        let i = |x: i64| SExpr::Atom(x.to_string());
        let bd = |d: &BiDegree| SExpr::List(vec![a("O"), i(d.a), i(d.b)]);
        let hyp = |h: &Hypothesis| SExpr::List(vec![a("hyp"), a(&h.name), a(&h.map.name()), a(kind_name(h.kind))]);
        match self {
            SheafExpr::LineBundle(d) => bd(d),
            SheafExpr::CurveSheaf(c, d) => SExpr::List(vec![a("curve"), i(c.c()), i(c.d()), i(d.a), i(d.b)]),
            SheafExpr::LineSheaf(l, d) => {
                let c = l.class();
                SExpr::List(vec![a("line"), i(c.c()), i(c.d()), i(d.a), i(d.b)])
            }
            SheafExpr::Skyscraper(n) => SExpr::List(vec![a("pt"), i(*n as i64)]),
            SheafExpr::DirectSum(v) => {
                let mut items = vec![a("sum")];
                items.extend(v.iter().map(SheafExpr::to_sexpr));
                SExpr::List(items)
            }
            SheafExpr::Resolution { left, right, hyps } => {
                let mut items = vec![a("res")];
                items.extend(left.iter().map(bd));
                items.push(a("=>"));
                items.extend(right.iter().map(bd));
                items.extend(hyps.iter().map(hyp));
                SExpr::List(items)
            }
            SheafExpr::Extension { sub, quot, hyps } => {
                let mut items = vec![a("ext"), sub.to_sexpr(), quot.to_sexpr()];
                items.extend(hyps.iter().map(hyp));
                SExpr::List(items)
            }
        }
    }

    pub fn from_sexpr(e: &SExpr) -> Result<SheafExpr, SheafError> {
        let items =
            e.list().ok_or_else(|| ParseError::Expected { expected: "sheaf form".into(), found: e.to_string() })?;
        let head = e.head().ok_or_else(|| ParseError::Invalid("empty form".into()))?;
        let args = &items[1..];
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(ParseError::Invalid(format!("`{head}` takes {n} arguments, got {}", args.len())))
            }
        };
        Ok(match head {
            "O" => {
                arity(2)?;
                SheafExpr::line_bundle(args[0].int()?, args[1].int()?)
            }
            "curve" => {
                arity(4)?;
                SheafExpr::curve(args[0].int()?, args[1].int()?, args[2].int()?, args[3].int()?)?
            }
            "line" => {
                arity(4)?;
                let l = match (args[0].int()?, args[1].int()?) {
                    (0, 1) => LineClass::ZeroOne,
                    (1, 0) => LineClass::OneZero,
                    (c, d) => return Err(ParseError::Invalid(format!("({c}, {d}) is not a line class")).into()),
                };
                SheafExpr::line(l, args[2].int()?, args[3].int()?)
            }
            "pt" => {
                arity(1)?;
                SheafExpr::Skyscraper(args[0].uint()?)
            }
            "sum" => SheafExpr::DirectSum(args.iter().map(SheafExpr::from_sexpr).collect::<Result<_, _>>()?),
            "res" => {
                let arrow = args
                    .iter()
                    .position(|x| x.atom() == Some("=>"))
                    .ok_or_else(|| ParseError::Invalid("`res` needs `=>`".into()))?;
                let mut left = Vec::new();
                for x in &args[..arrow] {
                    left.push(parse_degree(x)?);
                }
                let mut right = Vec::new();
                let mut hyps = Vec::new();
                for x in &args[arrow + 1..] {
                    if x.head() == Some("hyp") {
                        hyps.push(parse_hyp(x)?);
                    } else {
                        right.push(parse_degree(x)?);
                    }
                }
                if right.is_empty() {
                    return Err(ParseError::Invalid("`res` needs right-hand terms".into()).into());
                }
                SheafExpr::Resolution { left, right, hyps }
            }
            "ext" => {
                if args.len() < 2 {
                    return Err(ParseError::Invalid("`ext` takes a sub and a quotient".into()).into());
                }
                let hyps = args[2..].iter().map(parse_hyp).collect::<Result<_, _>>()?;
                SheafExpr::extension(SheafExpr::from_sexpr(&args[0])?, SheafExpr::from_sexpr(&args[1])?, hyps)
            }
            other => return Err(ParseError::UnknownForm(other.to_string()).into()),
        })
    }
}

fn parse_degree(e: &SExpr) -> Result<BiDegree, SheafError> {
    match SheafExpr::from_sexpr(e)? {
        SheafExpr::LineBundle(d) => Ok(d),
        _ => Err(ParseError::Expected { expected: "(O a b)".into(), found: e.to_string() }.into()),
    }
}

fn parse_hyp(e: &SExpr) -> Result<Hypothesis, SheafError> {
    let bad = || ParseError::Expected { expected: "(hyp NAME MAP KIND)".into(), found: e.to_string() };
    let items = e.list().ok_or_else(bad)?;
    if items.len() != 4 || items[0].atom() != Some("hyp") {
        return Err(bad().into());
    }
    let name = items[1].atom().ok_or_else(bad)?;
    let map = items[2].atom().and_then(LesMap::parse).ok_or_else(bad)?;
    let kind = match items[3].atom() {
        Some("zero") => MapKind::Zero,
        Some("injective") => MapKind::Injective,
        Some("surjective") => MapKind::Surjective,
        Some("none") => MapKind::None,
        _ => return Err(bad().into()),
    };
    Ok(Hypothesis::new(name, map, kind))
}

/// Parse the `O(a,b)` shorthand.
fn parse_shorthand(s: &str) -> Option<SheafExpr> {
    let inner = s.strip_prefix("O(")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some(SheafExpr::line_bundle(a.trim().parse().ok()?, b.trim().parse().ok()?))
}

impl FromStr for SheafExpr {
    type Err = SheafError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(x) = parse_shorthand(&s.replace(' ', "")) {
            return Ok(x);
        }
        SheafExpr::from_sexpr(&sexpr::parse(s)?)
    }
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

pub fn hilbert(f: &SheafExpr) -> BiPoly {
    f.hilbert()
}

pub fn h_dims(f: &SheafExpr) -> CohDims {
    f.h_dims()
}

/// Kernel `O(i, j)` of the Beilinson map and the Hilbert polynomial of the
/// cokernel of `O(i, j) → O`, given the bidegree of the gcd of its minors.
pub fn kernel_table_row(deg_g: (i64, i64)) -> Result<(BiDegree, BiPoly), SheafError> {
    let (p, q) = deg_g;
    if !(0..=1).contains(&p) || !(0..=3).contains(&q) || (p, q) == (0, 0) {
        return Err(SheafError::OutOfTable(p, q));
    }
    let ij = BiDegree::new(p - 2, q - 4);
    let coker = surfcoh::hilbert_line_bundle(BiDegree::new(0, 0)) - surfcoh::hilbert_line_bundle(ij);
    Ok((ij, coker))
}
