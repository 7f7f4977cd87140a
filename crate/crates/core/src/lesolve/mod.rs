//! Dimension solving for exact sequences of finite-dimensional vector spaces.
//!
//! The unknowns are the ranks of the maps. Exactness at a term says its
//! dimension is the rank of the incoming map plus the rank of the outgoing
//! map. Map annotations pin ranks to zero. Several sequences can be linked
//! through terms sharing a nonempty label.

mod lp;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use lp::{Bound, IntOpt, IntProgram, LinEq};

/// A dimension that is either known or explicitly unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Known(u64),
    Unknown,
}

impl Dim {
    pub fn known(self) -> Option<u64> {
        match self {
            Dim::Known(d) => Some(d),
            Dim::Unknown => None,
        }
    }

    pub fn is_known(self) -> bool {
        matches!(self, Dim::Known(_))
    }
}

impl From<u64> for Dim {
    fn from(d: u64) -> Self {
        Dim::Known(d)
    }
}

impl From<Option<u64>> for Dim {
    fn from(d: Option<u64>) -> Self {
        d.map_or(Dim::Unknown, Dim::Known)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Known(d) => write!(f, "{d}"),
            Dim::Unknown => write!(f, "UNKNOWN"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dim::Known(d) => s.serialize_u64(*d),
            Dim::Unknown => s.serialize_str("UNKNOWN"),
        }
    }
}

/// What is asserted about a map between consecutive terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MapKind {
    None,
    Zero,
    Injective,
    Surjective,
}

impl MapKind {
    /// The annotation of the same map read in the opposite direction.
    pub fn mirrored(self) -> MapKind {
        match self {
            MapKind::Injective => MapKind::Surjective,
            MapKind::Surjective => MapKind::Injective,
            k => k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub label: String,
    pub dim: Dim,
}

impl Term {
    pub fn new(label: impl Into<String>, dim: impl Into<Dim>) -> Self {
        Term { label: label.into(), dim: dim.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("sequence has {terms} terms but {maps} map annotations (expected {})", terms.saturating_sub(1))]
    LengthMismatch { terms: usize, maps: usize },
    #[error("sequence has no terms")]
    Empty,
    #[error("branch-and-bound exceeded {0} nodes")]
    SearchLimit(usize),
    #[error("integer overflow in dimension arithmetic")]
    Overflow,
}

/// `0 → T_0 → T_1 → … → T_k → 0`, exact everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSeq {
    terms: Vec<Term>,
    maps: Vec<MapKind>,
}

impl ExactSeq {
    pub fn new(terms: Vec<Term>, maps: Vec<MapKind>) -> Result<Self, SolveError> {
        if terms.is_empty() {
            return Err(SolveError::Empty);
        }
        if maps.len() + 1 != terms.len() {
            return Err(SolveError::LengthMismatch { terms: terms.len(), maps: maps.len() });
        }
        Ok(ExactSeq { terms, maps })
    }

    /// Unlabelled terms with unannotated maps.
    pub fn from_dims(dims: &[Option<u64>]) -> Result<Self, SolveError> {
        let terms = dims.iter().map(|&d| Term::new("", d)).collect::<Vec<_>>();
        let maps = vec![MapKind::None; dims.len().saturating_sub(1)];
        ExactSeq::new(terms, maps)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn maps(&self) -> &[MapKind] {
        &self.maps
    }

    pub fn set_map(&mut self, idx: usize, kind: MapKind) {
        self.maps[idx] = kind;
    }

    pub fn set_dim(&mut self, idx: usize, dim: Dim) {
        self.terms[idx].dim = dim;
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }

    /// The dual reading: terms reversed, injective and surjective swapped.
    pub fn reversed(&self) -> ExactSeq {
        ExactSeq {
            terms: self.terms.iter().rev().cloned().collect(),
            maps: self.maps.iter().rev().map(|m| m.mirrored()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Unique,
    Ambiguous,
    Inconsistent,
}

/// Integer interval `[lo, hi]`; `hi = None` means unbounded above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl Interval {
    pub fn point(d: u64) -> Self {
        Interval { lo: d, hi: Some(d) }
    }

    pub fn as_dim(self) -> Dim {
        match self.hi {
            Some(h) if h == self.lo => Dim::Known(h),
            _ => Dim::Unknown,
        }
    }

    pub fn contains(self, x: u64) -> bool {
        x >= self.lo && self.hi.is_none_or(|h| x <= h)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) if h == self.lo => write!(f, "{h}"),
            Some(h) => write!(f, "[{}, {h}]", self.lo),
            None => write!(f, "[{}, ∞)", self.lo),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub status: Status,
    pub dims: Vec<Interval>,
    pub ranks: Vec<Interval>,
}

impl Solution {
    pub fn dim(&self, i: usize) -> Dim {
        if self.status == Status::Inconsistent {
            return Dim::Unknown;
        }
        self.dims[i].as_dim()
    }
}

/// Solve one sequence in isolation; labels are not linked.
pub fn solve(seq: &ExactSeq) -> Result<Solution, SolveError> {
    let mut sys = SeqSystem::new();
    sys.link_labels = false;
    sys.add(seq.clone());
    Ok(sys.solve()?.seqs.remove(0))
}

/// Several exact sequences whose equally-labelled terms have equal dimension.
#[derive(Clone, Debug)]
pub struct SeqSystem {
    seqs: Vec<ExactSeq>,
    pins: Vec<(String, u64)>,
    link_labels: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSolution {
    pub status: Status,
    pub seqs: Vec<Solution>,
    labels: BTreeMap<String, Interval>,
}

impl SystemSolution {
    pub fn label(&self, label: &str) -> Option<Interval> {
        self.labels.get(label).copied()
    }

    pub fn label_dim(&self, label: &str) -> Dim {
        if self.status == Status::Inconsistent {
            return Dim::Unknown;
        }
        self.label(label).map_or(Dim::Unknown, Interval::as_dim)
    }
}

impl Default for SeqSystem {
    fn default() -> Self {
        SeqSystem::new()
    }
}

const PROPAGATION_SWEEPS: usize = 10_000;
const NODE_CAP: usize = 20_000;

impl SeqSystem {
    pub fn new() -> Self {
        SeqSystem { seqs: Vec::new(), pins: Vec::new(), link_labels: true }
    }

    pub fn add(&mut self, seq: ExactSeq) -> usize {
        self.seqs.push(seq);
        self.seqs.len() - 1
    }

    /// Assert the dimension of every term carrying `label`.
    pub fn pin(&mut self, label: impl Into<String>, dim: u64) {
        self.pins.push((label.into(), dim));
    }

    pub fn seqs(&self) -> &[ExactSeq] {
        &self.seqs
    }

    pub fn solve(&self) -> Result<SystemSolution, SolveError> {
        let model = Model::build(self);
        let bounds = model.solve()?;
        let status = match &bounds {
            None => Status::Inconsistent,
            Some(b) => {
                let all_fixed = model.term_var.iter().flatten().all(|&v| b[v].hi == Some(b[v].lo));
                if all_fixed {
                    Status::Unique
                } else {
                    Status::Ambiguous
                }
            }
        };
        let to_iv = |b: &Bound| Interval { lo: b.lo as u64, hi: b.hi.map(|h| h as u64) };
        let fallback: Vec<Bound> = model.initial.clone();
        let b = bounds.as_ref().unwrap_or(&fallback);
        let seqs = self
            .seqs
            .iter()
            .enumerate()
            .map(|(s, seq)| Solution {
                status,
                dims: (0..seq.terms.len()).map(|i| to_iv(&b[model.term_var[s][i]])).collect(),
                ranks: (0..seq.maps.len()).map(|j| to_iv(&b[model.rank_var[s][j]])).collect(),
            })
            .collect();
        let labels = model.label_var.iter().map(|(l, &v)| (l.clone(), to_iv(&b[v]))).collect();
        Ok(SystemSolution { status, seqs, labels })
    }
}

/// Linear model: rank and dimension variables, equality rows, bounds.
struct Model {
    initial: Vec<Bound>,
    eqs: Vec<LinEq>,
    term_var: Vec<Vec<usize>>,
    rank_var: Vec<Vec<usize>>,
    label_var: BTreeMap<String, usize>,
    /// Dimension variables occurring in exactly one row.
    sinks: Vec<usize>,
}

impl Model {
    fn build(sys: &SeqSystem) -> Model {
        let mut bounds: Vec<Bound> = Vec::new();
        let fresh = |bounds: &mut Vec<Bound>| {
            bounds.push(Bound { lo: 0, hi: None });
            bounds.len() - 1
        };
        let mut label_var: BTreeMap<String, usize> = BTreeMap::new();
        let mut term_var = Vec::new();
        let mut rank_var = Vec::new();
        let mut eqs = Vec::new();
        let pin_var = |bounds: &mut Vec<Bound>, v: usize, d: u64| {
            let d = d as i128;
            let b = &mut bounds[v];
            b.lo = b.lo.max(d);
            b.hi = Some(b.hi.map_or(d, |h| h.min(d)));
        };
        for seq in &sys.seqs {
            let ranks: Vec<usize> = seq.maps.iter().map(|_| fresh(&mut bounds)).collect();
            let mut tv = Vec::new();
            for t in &seq.terms {
                let v = if sys.link_labels && !t.label.is_empty() {
                    match label_var.get(&t.label) {
                        Some(&v) => v,
                        None => {
                            let v = fresh(&mut bounds);
                            label_var.insert(t.label.clone(), v);
                            v
                        }
                    }
                } else {
                    fresh(&mut bounds)
                };
                if let Dim::Known(d) = t.dim {
                    pin_var(&mut bounds, v, d);
                }
                tv.push(v);
            }
            for (j, kind) in seq.maps.iter().enumerate() {
                let zero = match kind {
                    MapKind::None => None,
                    MapKind::Zero => Some(j),
                    MapKind::Injective => j.checked_sub(1),
                    MapKind::Surjective => (j + 1 < ranks.len()).then_some(j + 1),
                };
                if let Some(z) = zero {
                    bounds[ranks[z]].hi = Some(0);
                }
            }
            for (i, &v) in tv.iter().enumerate() {
                let mut terms = vec![(v, 1i64)];
                if i > 0 {
                    terms.push((ranks[i - 1], -1));
                }
                if i < ranks.len() {
                    terms.push((ranks[i], -1));
                }
                eqs.push(LinEq { terms, rhs: 0 });
            }
            term_var.push(tv);
            rank_var.push(ranks);
        }
        if !sys.link_labels {
            label_var.clear();
        }
        for (l, d) in &sys.pins {
            let v = match label_var.get(l) {
                Some(&v) => v,
                None => {
                    let v = fresh(&mut bounds);
                    label_var.insert(l.clone(), v);
                    v
                }
            };
            pin_var(&mut bounds, v, *d);
        }
        let mut occurrences = vec![0usize; bounds.len()];
        for eq in &eqs {
            for &(v, _) in &eq.terms {
                occurrences[v] += 1;
            }
        }
        let is_dim: Vec<bool> = {
            let mut d = vec![false; bounds.len()];
            for &v in term_var.iter().flatten() {
                d[v] = true;
            }
            d
        };
        let sinks = (0..bounds.len()).filter(|&v| is_dim[v] && occurrences[v] == 1).collect();
        Model { initial: bounds, eqs, term_var, rank_var, label_var, sinks }
    }

    /// `None` when no nonnegative integer solution exists; otherwise the
    /// exact per-variable integer ranges.
    fn solve(&self) -> Result<Option<Vec<Bound>>, SolveError> {
        let mut b = self.initial.clone();
        let converged = match propagate(&self.eqs, &mut b) {
            Propagation::Infeasible => return Ok(None),
            Propagation::Converged => true,
            Propagation::Capped => false,
        };
        if converged && self.is_tree_exact(&b) {
            return Ok(Some(b));
        }
        self.solve_by_search(b)
    }

    /// Bounds consistency is exact when the equalities left after fixing
    /// variables form a forest of two-variable rows, and each free
    /// single-use dimension sums ranks from distinct components.
    fn is_tree_exact(&self, b: &[Bound]) -> bool {
        let free = |v: usize| b[v].hi != Some(b[v].lo);
        let mut is_sink = vec![false; b.len()];
        for &s in &self.sinks {
            is_sink[s] = true;
        }
        let mut uf = UnionFind::new(b.len());
        let mut sink_rows = Vec::new();
        for eq in &self.eqs {
            let vars: Vec<usize> = eq.terms.iter().map(|&(v, _)| v).filter(|&v| free(v)).collect();
            if let Some(&s) = vars.iter().find(|&&v| is_sink[v]) {
                sink_rows.push((s, vars));
                continue;
            }
            match vars.len() {
                0 | 1 => {}
                2 => {
                    if !uf.union(vars[0], vars[1]) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        for (s, vars) in sink_rows {
            let mut roots = Vec::new();
            for v in vars.into_iter().filter(|&v| v != s) {
                let r = uf.find(v);
                if roots.contains(&r) {
                    return false;
                }
                roots.push(r);
            }
        }
        true
    }

    fn solve_by_search(&self, b: Vec<Bound>) -> Result<Option<Vec<Bound>>, SolveError> {
        let free: Vec<usize> = (0..b.len()).filter(|&v| b[v].hi != Some(b[v].lo)).collect();
        let mut index = vec![usize::MAX; b.len()];
        for (k, &v) in free.iter().enumerate() {
            index[v] = k;
        }
        let mut eqs = Vec::new();
        for eq in &self.eqs {
            let mut rhs = eq.rhs;
            let mut terms = Vec::new();
            for &(v, c) in &eq.terms {
                if index[v] == usize::MAX {
                    rhs -= c as i128 * b[v].lo;
                } else {
                    terms.push((index[v], c));
                }
            }
            if terms.is_empty() {
                if rhs != 0 {
                    return Ok(None);
                }
            } else {
                eqs.push(LinEq { terms, rhs });
            }
        }
        let root: Vec<Bound> = free.iter().map(|&v| b[v].clone()).collect();
        let prog = IntProgram { eqs: &eqs, nvars: free.len(), node_cap: NODE_CAP };
        let zero = vec![0i64; free.len()];
        if prog.minimize(&root, &zero)? == IntOpt::Infeasible {
            return Ok(None);
        }
        let mut out = b;
        for (k, &v) in free.iter().enumerate() {
            let mut obj = zero.clone();
            obj[k] = 1;
            let lo = match prog.minimize(&root, &obj)? {
                IntOpt::Value(x) => x,
                _ => return Ok(None),
            };
            obj[k] = -1;
            let hi = match prog.minimize(&root, &obj)? {
                IntOpt::Value(x) => Some(-x),
                IntOpt::Unbounded => None,
                IntOpt::Infeasible => return Ok(None),
            };
            out[v] = Bound { lo, hi };
        }
        Ok(Some(out))
    }
}

enum Propagation {
    Converged,
    Capped,
    Infeasible,
}

fn div_floor(a: i128, b: i128) -> i128 {
    let d = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        d - 1
    } else {
        d
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Interval bounds propagation over the equality rows to a fixed point.
fn propagate(eqs: &[LinEq], b: &mut [Bound]) -> Propagation {
    for _ in 0..PROPAGATION_SWEEPS {
        let mut changed = false;
        for eq in eqs {
            for (k, &(vk, ak)) in eq.terms.iter().enumerate() {
                // ak·x_k = rhs − Σ_{j≠k} a_j x_j
                let mut smin: Option<i128> = Some(0);
                let mut smax: Option<i128> = Some(0);
                for (j, &(vj, aj)) in eq.terms.iter().enumerate() {
                    if j == k {
                        continue;
                    }
                    let aj = aj as i128;
                    let (lo, hi) = (b[vj].lo, b[vj].hi);
                    if aj > 0 {
                        smin = smin.map(|s| s + aj * lo);
                        smax = smax.and_then(|s| hi.map(|h| s + aj * h));
                    } else {
                        smin = smin.and_then(|s| hi.map(|h| s + aj * h));
                        smax = smax.map(|s| s + aj * lo);
                    }
                }
                let ak = ak as i128;
                let tlo = smax.map(|s| eq.rhs - s);
                let thi = smin.map(|s| eq.rhs - s);
                let (nlo, nhi) = if ak > 0 {
                    (tlo.map(|t| div_ceil(t, ak)), thi.map(|t| div_floor(t, ak)))
                } else {
                    (thi.map(|t| div_ceil(t, ak)), tlo.map(|t| div_floor(t, ak)))
                };
                let bk = &mut b[vk];
                if let Some(l) = nlo {
                    if l > bk.lo {
                        bk.lo = l;
                        changed = true;
                    }
                }
                if let Some(h) = nhi {
                    if bk.hi.is_none_or(|old| h < old) {
                        bk.hi = Some(h);
                        changed = true;
                    }
                }
                if bk.hi.is_some_and(|h| h < bk.lo) {
                    return Propagation::Infeasible;
                }
            }
        }
        if !changed {
            return Propagation::Converged;
        }
    }
    Propagation::Capped
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent[x] = r;
        r
    }

    /// False when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(dims: &[Option<u64>]) -> ExactSeq {
        ExactSeq::from_dims(dims).unwrap()
    }

    #[test]
    fn rank_nullity_middle() {
        let s = solve(&seq(&[Some(1), None, Some(2)])).unwrap();
        assert_eq!(s.status, Status::Unique);
        assert_eq!(s.dim(1), Dim::Known(3));
    }

    #[test]
    fn zero_flanks_force_isomorphism() {
        let s = solve(&seq(&[Some(0), None, Some(2), Some(0)])).unwrap();
        assert_eq!(s.dim(1), Dim::Known(2));
    }

    #[test]
    fn underdetermined_is_unbounded() {
        let s = solve(&seq(&[Some(1), None, None, Some(1)])).unwrap();
        assert_eq!(s.status, Status::Ambiguous);
        assert_eq!(s.dims[1], Interval { lo: 1, hi: None });
        assert_eq!(s.dims[2], Interval { lo: 1, hi: None });
    }

    #[test]
    fn inconsistent_value() {
        let s = solve(&seq(&[Some(2), Some(1)])).unwrap();
        assert_eq!(s.status, Status::Inconsistent);
        assert_eq!(s.dim(0), Dim::Unknown);
    }

    #[test]
    fn length_mismatch_is_error() {
        let e = ExactSeq::new(vec![Term::new("a", 1)], vec![MapKind::None]);
        assert_eq!(e, Err(SolveError::LengthMismatch { terms: 1, maps: 1 }));
    }

    #[test]
    fn annotations() {
        // 0 → A → B(3) → C(2) → 0 with A → B injective: A = 1
        let mut s = seq(&[None, Some(3), Some(2)]);
        s.set_map(0, MapKind::Injective);
        assert_eq!(solve(&s).unwrap().dim(0), Dim::Known(1));
        // 0 → 2 → ? → 1 → ? → 0, map into the last term zero
        let mut s = seq(&[Some(2), None, Some(1), None]);
        s.set_map(2, MapKind::Zero);
        let sol = solve(&s).unwrap();
        assert_eq!(sol.dim(1), Dim::Known(3));
        assert_eq!(sol.dim(3), Dim::Known(0));
    }

    #[test]
    fn bounded_ambiguity() {
        // 0 → ? → 2 → 4 → ? → 0
        let s = solve(&seq(&[None, Some(2), Some(4), None])).unwrap();
        assert_eq!(s.dims[0], Interval { lo: 0, hi: Some(2) });
        assert_eq!(s.dims[3], Interval { lo: 2, hi: Some(4) });
    }

    #[test]
    fn linked_system_forces_combination() {
        // sheaf: 0 → h → 2 → 4 → e → 0 ; pair: 0 → 0 → h → 2 → X → e → 0
        let sheaf = ExactSeq::new(
            vec![Term::new("h", None), Term::new("", 2), Term::new("", 4), Term::new("e", None)],
            vec![MapKind::None; 3],
        )
        .unwrap();
        let pair = ExactSeq::new(
            vec![Term::new("", 0), Term::new("h", None), Term::new("", 2), Term::new("X", None), Term::new("e", None)],
            vec![MapKind::None; 4],
        )
        .unwrap();
        let mut sys = SeqSystem::new();
        sys.add(sheaf.clone());
        sys.add(pair);
        let sol = sys.solve().unwrap();
        assert_eq!(sol.label_dim("X"), Dim::Known(4));
        assert_eq!(sol.label_dim("h"), Dim::Unknown);
        assert_eq!(sol.status, Status::Ambiguous);

        let single = solve(&sheaf).unwrap();
        assert_eq!(single.dim(0), Dim::Unknown);
    }

    #[test]
    fn pins_and_conflicts() {
        let s = ExactSeq::new(vec![Term::new("a", None), Term::new("b", 3)], vec![MapKind::None]).unwrap();
        let mut sys = SeqSystem::new();
        sys.add(s.clone());
        sys.pin("a", 3);
        assert_eq!(sys.solve().unwrap().status, Status::Unique);
        let mut sys = SeqSystem::new();
        sys.add(s);
        sys.pin("b", 4);
        assert_eq!(sys.solve().unwrap().status, Status::Inconsistent);
    }

    #[test]
    fn reversal_mirrors() {
        let mut s = seq(&[None, Some(3), Some(2)]);
        s.set_map(0, MapKind::Injective);
        let a = solve(&s).unwrap();
        let b = solve(&s.reversed()).unwrap();
        let mut rd = b.dims.clone();
        rd.reverse();
        assert_eq!(a.dims, rd);
    }
}
