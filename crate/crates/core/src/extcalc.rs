//! Ext dimensions between sheaves (through resolutions and Serre duality) and
//! between pairs (through the long exact sequence relating pair and sheaf Ext).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::lesolve::{Dim, ExactSeq, MapKind, SeqSystem, SolveError, Status, Term};
use crate::sexpr::{self, ParseError, SExpr};
use crate::sheafalg::{catalog, three_column_les, Hypothesis, SheafError, SheafExpr};
use crate::surfcoh::{BiDegree, CohDims, CANONICAL};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtError {
    #[error("Ext degree {0} out of range")]
    Degree(usize),
    #[error("no two-term locally free resolution known for {0}")]
    NoResolution(String),
    #[error("pair has gamma = {0}; only 0 or 1 is supported")]
    Gamma(u8),
    #[error("{gamma} sections requested but h0({sheaf}) = {h0}")]
    TooFewSections { gamma: u8, h0: u64, sheaf: String },
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// `Ext^degree(source, target)`, possibly after one Serre duality step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtProblem {
    pub degree: usize,
    pub source: SheafExpr,
    pub target: SheafExpr,
    pub dual_applied: bool,
}

impl ExtProblem {
    pub fn new(degree: usize, source: SheafExpr, target: SheafExpr) -> Self {
        ExtProblem { degree, source, target, dual_applied: false }
    }
}

/// Serre duality with `ω = O(-2, -2)`.
///
/// A primal problem `Ext^i(F, G)` becomes `Ext^{2-i}(G, F ⊗ ω)`; a dualized
/// problem `Ext^j(A, B)` goes back to `Ext^{2-j}(B ⊗ ω^{-1}, A)`, so applying
/// the reduction twice returns the original problem.
pub fn serre_reduce(p: &ExtProblem) -> ExtProblem {
    let degree = 2usize.saturating_sub(p.degree);
    if p.dual_applied {
        ExtProblem { degree, source: p.target.twist(-CANONICAL), target: p.source.clone(), dual_applied: false }
    } else {
        ExtProblem { degree, source: p.target.clone(), target: p.source.twist(CANONICAL), dual_applied: true }
    }
}

/// Label shared by every sequence mentioning `Ext^i(F, G)` of sheaves.
pub fn sheaf_ext_label(i: usize, f: &SheafExpr, g: &SheafExpr) -> String {
    format!("Ext{i}[{f} ; {g}]")
}

/// Label for `Ext^i` of pairs.
pub fn pair_ext_label(i: usize, a: &PairExpr, b: &PairExpr) -> String {
    format!("PExt{i}[{a} ; {b}]")
}

fn sum_h(g: &SheafExpr, twists: &[BiDegree]) -> (CohDims, String) {
    let parts: Vec<SheafExpr> = twists.iter().map(|&t| g.twist(-t)).collect();
    let h = parts.iter().fold(CohDims::known(0, 0, 0), |acc, x| acc.plus(&x.h_dims()));
    let name = match parts.len() {
        1 => parts[0].to_string(),
        _ => SheafExpr::DirectSum(parts).to_string(),
    };
    (h, name)
}

/// `0 → Hom(F,G) → H⁰(G(-B)) → H⁰(G(-A)) → Ext¹(F,G) → … → H²(G(-A)) → 0`
/// for `0 → ⊕O(A) → ⊕O(B) → F → 0`. The Ext terms carry the labels produced
/// by `ext_label`.
pub fn ext_sequence_sheaf_labelled(
    f: &SheafExpr,
    g: &SheafExpr,
    hyps: &[Hypothesis],
    ext_label: impl Fn(usize) -> String,
) -> Result<ExactSeq, ExtError> {
    let (left, right) = f.resolution_parts().ok_or_else(|| ExtError::NoResolution(f.to_string()))?;
    let (hb, nb) = sum_h(g, &right);
    let (ha, na) = sum_h(g, &left);
    let x = [0, 1, 2].map(|i| Term::new(ext_label(i), Dim::Unknown));
    let y =
        [0, 1, 2].map(|i| Term::new(if right.is_empty() { String::new() } else { format!("H{i}({nb})") }, hb.get(i)));
    let z =
        [0, 1, 2].map(|i| Term::new(if left.is_empty() { String::new() } else { format!("H{i}({na})") }, ha.get(i)));
    Ok(three_column_les(x, y, z, hyps))
}

pub fn ext_sequence_sheaf(f: &SheafExpr, g: &SheafExpr, hyps: &[Hypothesis]) -> Result<ExactSeq, ExtError> {
    ext_sequence_sheaf_labelled(f, g, hyps, |i| sheaf_ext_label(i, f, g))
}

/// The Serre-dual route for `Ext^•(F, G)`: the sequence of `Ext^•(G, F ⊗ ω)`,
/// with `Ext^j` labelled as the primal `Ext^{2-j}(F, G)`.
pub fn dual_sequence_sheaf(f: &SheafExpr, g: &SheafExpr) -> Result<ExactSeq, ExtError> {
    let fw = f.twist(CANONICAL);
    ext_sequence_sheaf_labelled(g, &fw, &[], |j| sheaf_ext_label(2 - j, f, g))
}

fn check_degree(i: usize, max: usize) -> Result<(), ExtError> {
    if i > max {
        Err(ExtError::Degree(i))
    } else {
        Ok(())
    }
}

/// All three sheaf Ext dimensions from the direct route alone.
pub fn ext_all_sheaf(f: &SheafExpr, g: &SheafExpr, hyps: &[Hypothesis]) -> Result<[Dim; 3], ExtError> {
    let seq = ext_sequence_sheaf(f, g, hyps)?;
    let sol = crate::lesolve::solve(&seq)?;
    Ok([sol.dim(0), sol.dim(3), sol.dim(6)])
}

/// `dim Ext^i(F, G)` from the resolution of `F`; unknown when not forced.
pub fn ext_dims_sheaf(i: usize, f: &SheafExpr, g: &SheafExpr) -> Result<Dim, ExtError> {
    ext_dims_sheaf_with(i, f, g, &[])
}

pub fn ext_dims_sheaf_with(i: usize, f: &SheafExpr, g: &SheafExpr, hyps: &[Hypothesis]) -> Result<Dim, ExtError> {
    check_degree(i, 2)?;
    Ok(ext_all_sheaf(f, g, hyps)?[i])
}

/// Direct route and, when `G` is resolvable, the Serre-dual route, solved jointly
/// together with any matching entries of `facts`.
pub fn ext_all_sheaf_combined(
    f: &SheafExpr,
    g: &SheafExpr,
    hyps: &[Hypothesis],
    facts: &HomFacts,
) -> Result<[Dim; 3], ExtError> {
    let mut sys = SeqSystem::new();
    add_sheaf_routes(&mut sys, f, g, hyps)?;
    facts.pin_into(&mut sys);
    let sol = sys.solve()?;
    Ok([0, 1, 2].map(|i| sol.label_dim(&sheaf_ext_label(i, f, g))))
}

fn add_sheaf_routes(sys: &mut SeqSystem, f: &SheafExpr, g: &SheafExpr, hyps: &[Hypothesis]) -> Result<(), ExtError> {
    sys.add(ext_sequence_sheaf(f, g, hyps)?);
    if g.resolution_parts().is_some() {
        sys.add(dual_sequence_sheaf(f, g)?);
    }
    Ok(())
}

/// A pair `(Γ, F)` with `dim Γ = gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairExpr {
    pub gamma: u8,
    pub sheaf: SheafExpr,
    pub known_h: Option<CohDims>,
}

impl PairExpr {
    pub fn new(gamma: u8, sheaf: SheafExpr) -> Result<Self, ExtError> {
        if gamma > 1 {
            return Err(ExtError::Gamma(gamma));
        }
        if let Dim::Known(h0) = sheaf.h_dims().h0 {
            if u64::from(gamma) > h0 {
                return Err(ExtError::TooFewSections { gamma, h0, sheaf: sheaf.to_string() });
            }
        }
        Ok(PairExpr { gamma, sheaf, known_h: None })
    }

    pub fn h(&self) -> CohDims {
        self.known_h.unwrap_or_else(|| self.sheaf.h_dims())
    }

    pub fn from_sexpr(e: &SExpr) -> Result<Self, ExtError> {
        let items = e
            .list()
            .filter(|v| v.len() == 3 && e.head() == Some("pair"))
            .ok_or_else(|| ParseError::Expected { expected: "(pair GAMMA SHEAF)".into(), found: e.to_string() })?;
        let gamma = items[1].uint()?;
        let gamma = u8::try_from(gamma).map_err(|_| ExtError::Gamma(u8::MAX))?;
        PairExpr::new(gamma, SheafExpr::from_sexpr(&items[2])?)
    }
}

impl fmt::Display for PairExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(pair {} {})", self.gamma, self.sheaf)
    }
}

impl FromStr for PairExpr {
    type Err = ExtError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PairExpr::from_sexpr(&sexpr::parse(s)?)
    }
}

fn times(gamma: u8, d: Dim) -> Dim {
    match (gamma, d) {
        (0, _) => Dim::Known(0),
        (_, Dim::Known(x)) => Dim::Known(gamma as u64 * x),
        _ => Dim::Unknown,
    }
}

/// The long exact sequence relating pair and sheaf Ext groups:
/// `0 → Hom(Λ,Λ') → Hom(F,F') → Hom(Γ, H⁰(F')/Γ') → Ext¹(Λ,Λ') → Ext¹(F,F')
/// → Hom(Γ, H¹(F')) → Ext²(Λ,Λ') → Ext²(F,F') → Hom(Γ, H²(F')) → Ext³(Λ,Λ') → 0`.
pub fn pair_sequence(a: &PairExpr, b: &PairExpr) -> ExactSeq {
    let h = b.h();
    let quotient = match h.h0 {
        Dim::Known(x) => Dim::Known(x.saturating_sub(b.gamma as u64)),
        Dim::Unknown => Dim::Unknown,
    };
    let gamma_terms = [times(a.gamma, quotient), times(a.gamma, h.h1), times(a.gamma, h.h2)];
    let mut terms = Vec::new();
    for (i, g) in gamma_terms.into_iter().enumerate() {
        terms.push(Term::new(pair_ext_label(i, a, b), Dim::Unknown));
        terms.push(Term::new(sheaf_ext_label(i, &a.sheaf, &b.sheaf), Dim::Unknown));
        terms.push(Term::new("", g));
    }
    terms.push(Term::new(pair_ext_label(3, a, b), Dim::Unknown));
    let maps = vec![MapKind::None; terms.len() - 1];
    ExactSeq::new(terms, maps).expect("ten terms")
}

/// Pair and sheaf Ext dimensions from the joint system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairExt {
    pub status: Status,
    /// `Hom`, `Ext¹`, `Ext²`, `Ext³` of the pairs.
    pub pair: [Dim; 4],
    /// `Hom`, `Ext¹`, `Ext²` of the underlying sheaves.
    pub sheaf: [Dim; 3],
}

impl PairExt {
    /// Status of one pair Ext dimension: unique when the chase forces it, even if
    /// other terms in the joint system stay free.
    pub fn pair_status(&self, i: usize) -> Status {
        match (self.status, self.pair.get(i)) {
            (Status::Inconsistent, _) => Status::Inconsistent,
            (_, Some(Dim::Known(_))) => Status::Unique,
            _ => Status::Ambiguous,
        }
    }
}

pub fn solve_pair(a: &PairExpr, b: &PairExpr, facts: &HomFacts) -> Result<PairExt, ExtError> {
    let mut sys = SeqSystem::new();
    sys.add(pair_sequence(a, b));
    add_sheaf_routes(&mut sys, &a.sheaf, &b.sheaf, &[])?;
    facts.pin_into(&mut sys);
    let sol = sys.solve()?;
    Ok(PairExt {
        status: sol.status,
        pair: [0, 1, 2, 3].map(|i| sol.label_dim(&pair_ext_label(i, a, b))),
        sheaf: [0, 1, 2].map(|i| sol.label_dim(&sheaf_ext_label(i, &a.sheaf, &b.sheaf))),
    })
}

pub fn ext_dims_pair(i: usize, a: &PairExpr, b: &PairExpr, facts: &HomFacts) -> Result<Dim, ExtError> {
    check_degree(i, 3)?;
    Ok(solve_pair(a, b, facts)?.pair[i])
}

/// Why a recorded dimension is trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Justification {
    /// Vanishing or scalar endomorphisms from stability.
    Stability,
    /// Asserted in the source, for example as a tangent-space dimension.
    Paper,
    /// Produced by this library.
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FactObject {
    Sheaf(SheafExpr),
    Pair(PairExpr),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FactKey {
    pub degree: usize,
    pub source: FactObject,
    pub target: FactObject,
}

impl FactKey {
    pub fn label(&self) -> String {
        match (&self.source, &self.target) {
            (FactObject::Sheaf(f), FactObject::Sheaf(g)) => sheaf_ext_label(self.degree, f, g),
            (FactObject::Pair(a), FactObject::Pair(b)) => pair_ext_label(self.degree, a, b),
            (s, t) => format!("Mixed{}[{s:?} ; {t:?}]", self.degree),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomFact {
    pub key: FactKey,
    pub dim: u64,
    pub justification: Justification,
    pub citation: String,
}

/// Recorded Hom/Ext dimensions that the chase cannot derive by itself.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomFacts {
    entries: Vec<HomFact>,
}

/// The pairs and sheaves meeting at the walls.
pub mod pairs {
    use super::*;

    /// `(H⁰(O_Q), O_Q)`, the pair side at the walls 11 and 1.
    pub fn quintic_pair() -> PairExpr {
        PairExpr::new(1, catalog::quintic(0, 0)).expect("gamma 1")
    }

    /// `(0, O_L(1, 0))`.
    pub fn line_plus_one() -> PairExpr {
        PairExpr::new(0, catalog::ruling_line(1, 0)).expect("gamma 0")
    }

    /// `(Γ, E)` with `E` an extension of a point sheaf by `O_Q`.
    pub fn quintic_point_pair() -> PairExpr {
        PairExpr::new(1, catalog::quintic_with_point()).expect("gamma 1")
    }

    /// `(0, O_L)`.
    pub fn line_zero() -> PairExpr {
        PairExpr::new(0, catalog::ruling_line(0, 0)).expect("gamma 0")
    }

    /// `(0, O_L(-1, 0))`.
    pub fn line_minus_one() -> PairExpr {
        PairExpr::new(0, catalog::ruling_line(-1, 0)).expect("gamma 0")
    }
}

impl HomFacts {
    pub fn new() -> Self {
        HomFacts::default()
    }

    pub fn insert(&mut self, key: FactKey, dim: u64, justification: Justification, citation: impl Into<String>) {
        self.entries.push(HomFact { key, dim, justification, citation: citation.into() });
    }

    pub fn insert_pair(&mut self, degree: usize, a: PairExpr, b: PairExpr, dim: u64, j: Justification, cite: &str) {
        let key = FactKey { degree, source: FactObject::Pair(a), target: FactObject::Pair(b) };
        self.insert(key, dim, j, cite);
    }

    pub fn insert_sheaf(&mut self, degree: usize, f: SheafExpr, g: SheafExpr, dim: u64, j: Justification, cite: &str) {
        let key = FactKey { degree, source: FactObject::Sheaf(f), target: FactObject::Sheaf(g) };
        self.insert(key, dim, j, cite);
    }

    pub fn entries(&self) -> &[HomFact] {
        &self.entries
    }

    pub fn without(&self, pred: impl Fn(&HomFact) -> bool) -> HomFacts {
        HomFacts { entries: self.entries.iter().filter(|e| !pred(e)).cloned().collect() }
    }

    pub fn pin_into(&self, sys: &mut SeqSystem) {
        for e in &self.entries {
            sys.pin(e.key.label(), e.dim);
        }
    }

    /// The stability and tangent-space facts used at the walls.
    pub fn paper() -> HomFacts {
        use pairs::*;
        use Justification::*;
        let mut f = HomFacts::new();
        let q = catalog::quintic(0, 0);
        let e = catalog::quintic_with_point();
        f.insert_pair(
            0,
            quintic_pair(),
            line_plus_one(),
            0,
            Stability,
            "Prop. flipping_bundles, stable systems of different slopes",
        );
        f.insert_pair(
            0,
            quintic_point_pair(),
            line_zero(),
            0,
            Stability,
            "Prop. flipping_bundles, stable systems of different slopes",
        );
        f.insert_sheaf(0, q.clone(), q, 1, Stability, "Lemma ext^2, Hom(O_Q, O_Q) is the scalars");
        f.insert_sheaf(0, e.clone(), e.clone(), 1, Stability, "Lemma ext^2, Hom(E, E) is the scalars");
        f.insert_pair(1, quintic_pair(), quintic_pair(), 11, Paper, "Lemma ext^2, tangent space of P^11");
        f.insert_pair(
            1,
            quintic_point_pair(),
            quintic_point_pair(),
            12,
            Paper,
            "Lemma ext^2, tangent space of the universal quintic",
        );
        f.insert_sheaf(1, e.clone(), e, 13, Paper, "Lemma ext^2, dim Ext^1(E, E) = 13");
        f
    }
}

#[cfg(test)]
mod tests {
    use super::pairs::*;
    use super::*;
    use crate::sheafalg::LesMap;

    fn dual_once(i: usize, f: SheafExpr, g: SheafExpr) -> ExtProblem {
        serre_reduce(&ExtProblem::new(i, f, g))
    }

    #[test]
    fn serre_examples() {
        let p = dual_once(1, catalog::ruling_line(-1, 0), catalog::quintic(0, 1));
        assert_eq!(p.degree, 1);
        assert_eq!(p.source, catalog::quintic(0, 1));
        assert_eq!(p.target, catalog::ruling_line(-3, -2));
        assert!(p.dual_applied);
        let p = dual_once(1, catalog::ruling_line(1, 0), catalog::quintic(0, 0));
        assert_eq!(p.target, catalog::ruling_line(-1, -2));
        let p = dual_once(0, SheafExpr::line_bundle(0, 0), SheafExpr::line_bundle(0, 0));
        assert_eq!((p.degree, p.target.clone()), (2, SheafExpr::line_bundle(-2, -2)));
        assert_eq!(ext_dims_sheaf(2, &p.source, &p.target).unwrap(), Dim::Known(1));
        assert_eq!(
            ext_dims_sheaf(0, &SheafExpr::line_bundle(0, 0), &SheafExpr::line_bundle(0, 0)).unwrap(),
            Dim::Known(1)
        );
    }

    #[test]
    fn involution() {
        let p = ExtProblem::new(1, catalog::quintic_with_point(), catalog::ruling_line(-2, -2));
        assert_eq!(serre_reduce(&serre_reduce(&p)), p);
    }

    #[test]
    fn sheaf_ext_examples() {
        let l = catalog::ruling_line(-3, 0);
        assert_eq!(ext_dims_sheaf(1, &catalog::quintic(0, 0), &l).unwrap(), Dim::Known(2));
        let e = catalog::quintic_with_point();
        assert_eq!(ext_dims_sheaf(1, &e, &catalog::ruling_line(-2, -2)).unwrap(), Dim::Known(2));
        let c = SheafExpr::curve(2, 4, 0, 0).unwrap();
        let p = SheafExpr::Skyscraper(1);
        assert_eq!(ext_dims_sheaf(1, &c, &p).unwrap(), Dim::Unknown);
        let on_curve = [Hypothesis::new("point-on-curve", LesMap::Right(0), MapKind::Zero)];
        assert_eq!(ext_dims_sheaf_with(1, &c, &p, &on_curve).unwrap(), Dim::Known(1));
    }

    #[test]
    fn pair_ext_examples() {
        let facts = HomFacts::paper();
        assert_eq!(ext_dims_pair(1, &quintic_pair(), &line_plus_one(), &facts).unwrap(), Dim::Known(4));
        assert_eq!(ext_dims_pair(1, &line_zero(), &quintic_point_pair(), &facts).unwrap(), Dim::Known(2));
        assert_eq!(ext_dims_pair(2, &line_minus_one(), &line_minus_one(), &facts).unwrap(), Dim::Known(0));
    }

    #[test]
    fn all_wall_pairs_unique() {
        let facts = HomFacts::paper();
        let (l1, l2, l3, l4, l5) =
            (quintic_pair(), line_plus_one(), quintic_point_pair(), line_zero(), line_minus_one());
        let ext1 = [(&l1, &l2, 4), (&l2, &l1, 2), (&l3, &l4, 3), (&l4, &l3, 2), (&l1, &l5, 2), (&l5, &l1, 2)];
        for (a, b, want) in ext1 {
            let r = solve_pair(a, b, &facts).unwrap();
            assert_eq!(r.pair_status(1), Status::Unique, "{a} {b}");
            assert_eq!(r.pair[1], Dim::Known(want), "{a} {b}");
        }
        let ext2 = [
            (&l1, &l2),
            (&l2, &l1),
            (&l2, &l2),
            (&l1, &l1),
            (&l3, &l4),
            (&l4, &l3),
            (&l4, &l4),
            (&l3, &l3),
            (&l1, &l5),
            (&l5, &l1),
            (&l5, &l5),
        ];
        for (a, b) in ext2 {
            let r = solve_pair(a, b, &facts).unwrap();
            assert_eq!(r.pair_status(2), Status::Unique, "{a} {b}");
            assert_eq!(r.pair[2], Dim::Known(0), "{a} {b}");
        }
    }

    #[test]
    fn parse_pair() {
        let p: PairExpr = "(pair 1 (curve 2 3 0 0))".parse().unwrap();
        assert_eq!(p, quintic_pair());
        assert!("(pair 2 (O 0 0))".parse::<PairExpr>().is_err());
        assert!("(pair 1)".parse::<PairExpr>().is_err());
    }
}
