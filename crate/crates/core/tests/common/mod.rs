//! Generators and brute-force scans shared by several test targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Signed};
use quadmod::lesolve::{solve, Term};
use quadmod::{ExactSeq, LinPoly, MapKind, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A random exact sequence built from ranks, with some true annotations.
pub struct Truth {
    /// `ranks[j]` is the rank of map j (term j → term j+1).
    pub ranks: Vec<u64>,
    pub maps: Vec<MapKind>,
}

impl Truth {
    pub fn rank(&self, j: i64) -> u64 {
        if j < 0 {
            0
        } else {
            self.ranks.get(j as usize).copied().unwrap_or(0)
        }
    }

    pub fn dims(&self) -> Vec<u64> {
        (0..=self.ranks.len() as i64).map(|i| self.rank(i - 1) + self.rank(i)).collect()
    }

    pub fn random(rng: &mut ChaCha8Rng, terms: usize) -> Truth {
        let ranks: Vec<u64> = (0..terms - 1).map(|_| rng.gen_range(0..=4)).collect();
        let mut t = Truth { ranks, maps: Vec::new() };
        t.maps = (0..terms as i64 - 1)
            .map(|j| {
                let mut options = vec![MapKind::None];
                if t.rank(j) == 0 {
                    options.push(MapKind::Zero);
                }
                if t.rank(j - 1) == 0 {
                    options.push(MapKind::Injective);
                }
                if t.rank(j + 1) == 0 {
                    options.push(MapKind::Surjective);
                }
                if rng.gen_bool(0.6) {
                    MapKind::None
                } else {
                    options[rng.gen_range(0..options.len())]
                }
            })
            .collect();
        t
    }
}

pub fn build(dims: &[Option<u64>], maps: &[MapKind]) -> ExactSeq {
    let terms = dims.iter().enumerate().map(|(i, &d)| Term::new(format!("T{i}"), d)).collect();
    ExactSeq::new(terms, maps.to_vec()).unwrap()
}

/// Every admissible sub-pair `(r, s, t)` with one section whose slope meets the whole
/// pair's at some `α > 0`, found by scanning `t` over a wide window and solving
/// `(t + α)·k = (t_w + α)·j` for `α`.
pub fn wall_scan(whole: LinPoly, bounds: (i64, i64)) -> BTreeSet<(i64, i64, i64, BigRational)> {
    let k = whole.r + whole.s;
    let mut out = BTreeSet::new();
    for r in 0..=bounds.0 {
        for s in 0..=bounds.1 {
            if (r, s) == (0, 0) || (r, s) == bounds {
                continue;
            }
            let j = r + s;
            let lowest = r + s - r * s;
            assert!(lowest > -60, "scan window too narrow for {whole}");
            for t in lowest..=60 {
                let alpha = q(j * whole.t - k * t, k - j);
                if alpha.is_positive() {
                    out.insert((r, s, t, alpha));
                }
            }
        }
    }
    out
}

/// Solves `cases` random sequences with hidden terms and checks every forced
/// dimension against the hidden truth. Returns the number of cases checked.
pub fn hidden_truth_oracle(seed: u64, cases: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let n = rng.gen_range(2..=8);
        let truth = Truth::random(&mut rng, n);
        let dims = truth.dims();
        let shown: Vec<Option<u64>> = dims.iter().map(|&d| (!rng.gen_bool(0.4)).then_some(d)).collect();
        let sol = solve(&build(&shown, &truth.maps)).map_err(|e| e.to_string())?;
        if sol.status == Status::Inconsistent {
            return Err(format!("case {case} reported inconsistent"));
        }
        for (i, iv) in sol.dims.iter().enumerate() {
            if !iv.contains(dims[i]) || (sol.status == Status::Unique && iv.as_dim().known() != Some(dims[i])) {
                return Err(format!("case {case}, term {i}: truth {} vs {iv}", dims[i]));
            }
        }
    }
    Ok(cases)
}
