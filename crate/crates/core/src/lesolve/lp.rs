//! Exact two-phase simplex over the rationals (Bland's rule) and a small
//! branch-and-bound driver for integer optima.

use num::{BigInt, BigRational, One, Signed, Zero};

use super::SolveError;

/// `Σ coef·x = rhs` over variable indices.
#[derive(Clone, Debug)]
pub(crate) struct LinEq {
    pub terms: Vec<(usize, i64)>,
    pub rhs: i128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bound {
    pub lo: i128,
    pub hi: Option<i128>,
}

#[derive(Debug)]
enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: BigRational, x: Vec<BigRational> },
}

fn q(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Minimize `c·y` subject to `A y = b`, `y ≥ 0`.
fn simplex_min(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // columns: n originals, m artificials, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row = vec![BigRational::zero(); width];
        for j in 0..n {
            row[j] = if neg { -&a[i][j] } else { a[i][j].clone() };
        }
        row[n + i] = BigRational::one();
        row[width - 1] = if neg { -&b[i] } else { b[i].clone() };
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase one: minimize the sum of artificials
    let mut cost1 = vec![BigRational::zero(); n + m];
    for c1 in cost1.iter_mut().skip(n) {
        *c1 = BigRational::one();
    }
    if !run_simplex(&mut t, &mut basis, &cost1, n + m) {
        unreachable!("phase one is bounded below by zero");
    }
    let infeas: BigRational =
        basis.iter().enumerate().filter(|(_, &bv)| bv >= n).map(|(i, _)| t[i][width - 1].clone()).sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
                i += 1;
            } else {
                t.remove(i);
                basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    // phase two on the original columns only
    for row in t.iter_mut() {
        let rhs = row[width - 1].clone();
        row.truncate(n);
        row.push(rhs);
    }
    if !run_simplex(&mut t, &mut basis, c, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        x[bv] = t[i].last().unwrap().clone();
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { value, x }
}

fn pivot(t: &mut [Vec<BigRational>], basis: &mut [usize], r: usize, col: usize) {
    let p = t[r][col].clone();
    for v in t[r].iter_mut() {
        *v /= &p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[col].is_zero() {
            continue;
        }
        let f = row[col].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    basis[r] = col;
}

/// Returns false when the objective is unbounded below.
fn run_simplex(t: &mut [Vec<BigRational>], basis: &mut [usize], cost: &[BigRational], ncols: usize) -> bool {
    let last = t.first().map_or(0, |r| r.len() - 1);
    loop {
        let entering = (0..ncols).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut d = cost[j].clone();
            for (i, &bv) in basis.iter().enumerate() {
                if !t[i][j].is_zero() && !cost[bv].is_zero() {
                    d -= &cost[bv] * &t[i][j];
                }
            }
            d.is_negative()
        });
        let Some(j) = entering else { return true };
        let mut best: Option<(usize, BigRational)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][last] / &t[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = best else { return false };
        pivot(t, basis, r, j);
    }
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum IntOpt {
    Infeasible,
    Unbounded,
    Value(i128),
}

/// Integer program over variables with bounds and equality rows.
pub(crate) struct IntProgram<'a> {
    pub eqs: &'a [LinEq],
    pub nvars: usize,
    pub node_cap: usize,
}

impl IntProgram<'_> {
    fn relax(&self, bounds: &[Bound], obj: &[i64]) -> LpOutcome {
        // y = x − lo; upper bounds become slack rows
        let ups: Vec<(usize, i128)> =
            bounds.iter().enumerate().filter_map(|(k, b)| b.hi.map(|h| (k, h - b.lo))).collect();
        if ups.iter().any(|&(_, u)| u < 0) {
            return LpOutcome::Infeasible;
        }
        let ncols = self.nvars + ups.len();
        let mut a = Vec::new();
        let mut rhs = Vec::new();
        for eq in self.eqs {
            let mut row = vec![BigRational::zero(); ncols];
            let mut r = eq.rhs;
            for &(k, c) in &eq.terms {
                row[k] += q(c as i128);
                r -= c as i128 * bounds[k].lo;
            }
            a.push(row);
            rhs.push(q(r));
        }
        for (s, &(k, u)) in ups.iter().enumerate() {
            let mut row = vec![BigRational::zero(); ncols];
            row[k] = BigRational::one();
            row[self.nvars + s] = BigRational::one();
            a.push(row);
            rhs.push(q(u));
        }
        let mut c = vec![BigRational::zero(); ncols];
        for (k, &ck) in obj.iter().enumerate() {
            c[k] = q(ck as i128);
        }
        match simplex_min(&a, &rhs, &c) {
            LpOutcome::Optimal { value, x } => {
                let shift: i128 = obj.iter().zip(bounds).map(|(&ck, b)| ck as i128 * b.lo).sum();
                let xs = (0..self.nvars).map(|k| &x[k] + q(bounds[k].lo)).collect();
                LpOutcome::Optimal { value: value + q(shift), x: xs }
            }
            other => other,
        }
    }

    /// Minimize the integer objective `obj·x`.
    pub fn minimize(&self, root: &[Bound], obj: &[i64]) -> Result<IntOpt, SolveError> {
        let mut stack = vec![root.to_vec()];
        let mut incumbent: Option<i128> = None;
        let mut nodes = 0usize;
        while let Some(bounds) = stack.pop() {
            nodes += 1;
            if nodes > self.node_cap {
                return Err(SolveError::SearchLimit(self.node_cap));
            }
            match self.relax(&bounds, obj) {
                LpOutcome::Infeasible => continue,
                LpOutcome::Unbounded => {
                    let zero = vec![0; self.nvars];
                    if self.minimize(&bounds, &zero)? != IntOpt::Infeasible {
                        return Ok(IntOpt::Unbounded);
                    }
                }
                LpOutcome::Optimal { value, x } => {
                    let lp_bound = value.ceil().to_integer();
                    if let Some(best) = incumbent {
                        if BigInt::from(best) <= lp_bound {
                            continue;
                        }
                    }
                    match x.iter().position(|v| !v.is_integer()) {
                        None => {
                            let v: i128 = i128::try_from(value.to_integer()).map_err(|_| SolveError::Overflow)?;
                            incumbent = Some(v);
                            if obj.iter().all(|&c| c == 0) {
                                return Ok(IntOpt::Value(0));
                            }
                        }
                        Some(k) => {
                            let fl = i128::try_from(x[k].floor().to_integer()).map_err(|_| SolveError::Overflow)?;
                            let mut down = bounds.clone();
                            down[k].hi = Some(fl);
                            let mut up = bounds;
                            up[k].lo = fl + 1;
                            stack.push(up);
                            stack.push(down);
                        }
                    }
                }
            }
        }
        Ok(incumbent.map_or(IntOpt::Infeasible, IntOpt::Value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(n: usize) -> Vec<Bound> {
        vec![Bound { lo: 0, hi: None }; n]
    }

    #[test]
    fn simple_min_and_max() {
        // x + y = 3, x ≤ 2
        let eqs = vec![LinEq { terms: vec![(0, 1), (1, 1)], rhs: 3 }];
        let p = IntProgram { eqs: &eqs, nvars: 2, node_cap: 100 };
        let mut b = free(2);
        b[0].hi = Some(2);
        assert_eq!(p.minimize(&b, &[0, 1]).unwrap(), IntOpt::Value(1));
        assert_eq!(p.minimize(&b, &[0, -1]).unwrap(), IntOpt::Value(-3));
    }

    #[test]
    fn unbounded_detected() {
        let eqs = vec![LinEq { terms: vec![(0, 1), (1, -1)], rhs: 1 }];
        let p = IntProgram { eqs: &eqs, nvars: 2, node_cap: 100 };
        assert_eq!(p.minimize(&free(2), &[-1, 0]).unwrap(), IntOpt::Unbounded);
        assert_eq!(p.minimize(&free(2), &[1, 0]).unwrap(), IntOpt::Value(1));
    }

    #[test]
    fn integrality_matters() {
        // 2x = 1 has a rational but no integer solution
        let eqs = vec![LinEq { terms: vec![(0, 2)], rhs: 1 }];
        let p = IntProgram { eqs: &eqs, nvars: 1, node_cap: 100 };
        assert_eq!(p.minimize(&free(1), &[1]).unwrap(), IntOpt::Infeasible);
    }

    #[test]
    fn infeasible_detected() {
        let eqs = vec![LinEq { terms: vec![(0, 1)], rhs: 1 }, LinEq { terms: vec![(0, 1)], rhs: 2 }];
        let p = IntProgram { eqs: &eqs, nvars: 1, node_cap: 100 };
        assert_eq!(p.minimize(&free(1), &[1]).unwrap(), IntOpt::Infeasible);
    }
}
