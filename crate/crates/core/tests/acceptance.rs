//! One line per acceptance criterion; exits non-zero if any criterion fails.

mod common;

use common::q;
use num::BigInt;
use quadmod::betticalc::{assemble_moduli_poincare, THEOREM_COEFFS};
use quadmod::extcalc::{pairs, solve_pair};
use quadmod::report::{strata, StratumShape, MODULI_DIM};
use quadmod::sheafalg::kernel_table_row;
use quadmod::surfcoh::{h_surface, serre_dual};
use quadmod::wallfind::{find_walls, wall_candidates, ModuliTable, TableStatus};
use quadmod::{
    poincare, verify_all, BiDegree, BiPoly, CheckStatus, Dim, HomFacts, LinPoly, PairPoly, PipelineConfig, SpaceExpr,
    Status, UPoly,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn kernel_table() -> Outcome {
    let rows = [
        ((0, 1), (-2, -3), (3, 2, -1)),
        ((1, 0), (-1, -4), (4, 1, 1)),
        ((0, 2), (-2, -2), (2, 2, 0)),
        ((1, 1), (-1, -3), (3, 1, 1)),
        ((0, 3), (-2, -1), (1, 2, 1)),
        ((1, 2), (-1, -2), (2, 1, 1)),
        ((1, 3), (-1, -1), (1, 1, 1)),
    ];
    let mut equal = 0;
    for (g, (i, j), (r, s, t)) in rows {
        let (ij, p) = kernel_table_row(g).map_err(|e| e.to_string())?;
        ensure(ij == BiDegree::new(i, j), format!("deg(g) = {g:?}: (i,j) = {ij:?}"))?;
        ensure(p == BiPoly::linear(r, s, t), format!("deg(g) = {g:?}: cokernel {p}"))?;
        equal += 1;
    }
    Ok(format!("{equal}/7 rows equal"))
}

fn walls() -> Outcome {
    let alphas = |t| {
        find_walls(PairPoly::with_section(LinPoly::new(4, 2, t)), (4, 2))
            .into_iter()
            .map(|w| w.alpha)
            .collect::<Vec<_>>()
    };
    let (plus, minus) = (alphas(1), alphas(-1));
    ensure(plus == vec![q(5, 1), q(11, 1)], format!("4m+2n+1 walls {plus:?}"))?;
    ensure(minus == vec![q(1, 1)], format!("4m+2n-1 walls {minus:?}"))?;
    let candidates = wall_candidates(PairPoly::with_section(LinPoly::new(4, 2, 1)), (4, 2));
    let two: Vec<_> = candidates.iter().filter(|c| c.alpha == q(2, 1)).collect();
    ensure(!two.is_empty(), "no candidate at 2 before filtering")?;
    let table = ModuliTable::paper();
    ensure(two.iter().all(|c| c.table_status(&table) == TableStatus::Empty), "candidate at 2 not discarded")?;
    Ok("{5, 11} and {1}; candidate at 2 present before filtering, absent after".into())
}

fn pair_ext() -> Outcome {
    let facts = HomFacts::paper();
    let (l1, l2, l3, l4, l5) = (
        pairs::quintic_pair(),
        pairs::line_plus_one(),
        pairs::quintic_point_pair(),
        pairs::line_zero(),
        pairs::line_minus_one(),
    );
    let ext1 = [(&l1, &l2, 4), (&l2, &l1, 2), (&l3, &l4, 3), (&l4, &l3, 2), (&l1, &l5, 2), (&l5, &l1, 2)];
    let ext2 = [
        (&l1, &l2),
        (&l2, &l1),
        (&l1, &l1),
        (&l2, &l2),
        (&l3, &l4),
        (&l4, &l3),
        (&l3, &l3),
        (&l4, &l4),
        (&l1, &l5),
        (&l5, &l1),
        (&l5, &l5),
    ];
    let cases = ext1.iter().map(|&(a, b, d)| (1, a, b, d)).chain(ext2.iter().map(|&(a, b)| (2, a, b, 0)));
    let mut n = 0;
    for (i, a, b, want) in cases {
        let r = solve_pair(a, b, &facts).map_err(|e| e.to_string())?;
        ensure(
            r.pair_status(i) == Status::Unique && r.pair[i] == Dim::Known(want),
            format!("Ext{i}({a}, {b}) = {} ({:?}), expected {want}", r.pair[i], r.pair_status(i)),
        )?;
        n += 1;
    }
    Ok(format!("{n} values unique: Ext1 = 4, 2, 3, 2, 2, 2 and eleven Ext2 = 0"))
}

fn goettsche() -> Outcome {
    let hilb = |n| poincare(&SpaceExpr::hilb(n)).map_err(|e| e.to_string());
    let one_plus_x = UPoly::from_i64s(&[1, 1]);
    ensure(hilb(1)? == &one_plus_x * &one_plus_x, format!("Hilb1 = {}", hilb(1)?))?;
    ensure(hilb(2)? == UPoly::from_i64s(&[1, 3, 6, 3, 1]), format!("Hilb2 = {}", hilb(2)?))?;
    ensure(hilb(3)? == UPoly::from_i64s(&[1, 3, 9, 14, 9, 3, 1]), format!("Hilb3 = {}", hilb(3)?))?;
    Ok(format!("Hilb3 = {}", hilb(3)?))
}

fn final_polynomial() -> Outcome {
    let t = assemble_moduli_poincare(&PipelineConfig::default()).map_err(|e| e.to_string())?;
    let p = &t.computed;
    ensure(p.coeffs().iter().cloned().eq(THEOREM_COEFFS.iter().map(|&c| BigInt::from(c))), format!("computed {p}"))?;
    ensure(p.is_palindromic(), "not palindromic")?;
    ensure(p.eval_int(1) == BigInt::from(288), format!("value at 1 is {}", p.eval_int(1)))?;
    ensure(p.degree() == Some(2 * 4 * 2 + 1), format!("degree {:?}", p.degree()))?;
    Ok("18 coefficients equal, palindromic, value 288, degree 17".into())
}

fn strata_check() -> Outcome {
    let strata = strata().map_err(|e| e.to_string())?;
    let dims: Vec<u64> = strata.iter().map(|s| s.expected_dim).collect();
    let codims: Vec<u64> = strata.iter().map(|s| s.expected_codim).collect();
    ensure(dims == [17, 15, 15, 13, 13, 13], format!("dims {dims:?}"))?;
    ensure(codims == [0, 2, 2, 4, 4, 4], format!("codims {codims:?}"))?;
    let mut bundles = 0;
    for s in &strata {
        ensure(s.expected_dim + s.expected_codim == MODULI_DIM, format!("{}: dim + codim", s.name))?;
        ensure(s.sheaf.hilbert() == BiPoly::linear(4, 2, 1), format!("{}: hilbert {}", s.name, s.sheaf.hilbert()))?;
        if let StratumShape::Space { space } = &s.shape {
            let deg = poincare(space).map_err(|e| e.to_string())?.degree();
            ensure(deg == Some(s.expected_dim as usize), format!("{}: bundle dimension {deg:?}", s.name))?;
            bundles += 1;
        }
    }
    Ok(format!("dims and codims match; {bundles} bundle descriptions; all six sheaves have P = 4m+2n+1"))
}

fn properties() -> Outcome {
    let (mut serre, mut kunneth) = (0, 0);
    for a in -6..=6 {
        for b in -6..=6 {
            let t = BiDegree::new(a, b);
            let h = h_surface(t).all_known().ok_or("unknown line bundle cohomology")?;
            let d = h_surface(serre_dual(t)).all_known().ok_or("unknown line bundle cohomology")?;
            for i in 0..3 {
                ensure(h[i] == d[2 - i], format!("Serre duality at {t:?}"))?;
                serre += 1;
            }
            ensure(h[0] as i64 - h[1] as i64 + h[2] as i64 == (a + 1) * (b + 1), format!("Kunneth at {t:?}"))?;
            kunneth += 1;
        }
    }
    let oracle = common::hidden_truth_oracle(0xacce_7e57, 1000)?;
    let mut scanned = 0;
    for (t, bounds) in [(1, (4, 2)), (-1, (4, 2)), (0, (3, 2))] {
        let whole = LinPoly::new(bounds.0, bounds.1, t);
        let found: std::collections::BTreeSet<_> = wall_candidates(PairPoly::with_section(whole), bounds)
            .into_iter()
            .map(|c| (c.sub.poly.r, c.sub.poly.s, c.sub.poly.t, c.alpha))
            .collect();
        ensure(found == common::wall_scan(whole, bounds), format!("wall scan of {whole}"))?;
        scanned += 1;
    }
    Ok(format!(
        "Serre {serre} equalities on 169 twists, Kunneth {kunneth}, lesolve oracle {oracle} sequences, {scanned} wall grids"
    ))
}

fn discrepancy() -> Outcome {
    let r = verify_all();
    ensure(r.summary.fail == 0, format!("{} checks fail", r.summary.fail))?;
    let c = r.get("stratum.M_2.h0").ok_or("no M_2 h0 check")?;
    ensure(c.status == CheckStatus::NotForced, format!("status {}", c.status))?;
    ensure(c.computed == "2" && c.expected == "3", format!("computed {} expected {}", c.computed, c.expected))?;
    ensure(c.citation.contains("Theorem 1.1, final sentence"), format!("citation {}", c.citation))?;
    Ok(format!("NOT_FORCED, computed 2 vs claimed 3; suite {} PASS, 0 FAIL", r.summary.pass))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("kernel table reproduction", kernel_table),
        ("wall lists", walls),
        ("pair Ext dimensions", pair_ext),
        ("Goettsche", goettsche),
        ("final Poincaré polynomial", final_polynomial),
        ("stratum arithmetic", strata_check),
        ("property suites", properties),
        ("documented discrepancy", discrepancy),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
