use std::collections::BTreeSet;
use std::sync::OnceLock;

use quadmod::report::{strata, verify_with, StratumShape, MODULI_DIM};
use quadmod::wallfind::{ModuliKey, ModuliKind};
use quadmod::{poincare, verify_all, BiPoly, CheckStatus, LinPoly, PipelineConfig, Report};

fn report() -> &'static Report {
    static REPORT: OnceLock<Report> = OnceLock::new();
    REPORT.get_or_init(verify_all)
}

#[test]
fn verification_is_deterministic() {
    let (a, b) = (report(), &verify_all());
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.to_string(), b.to_string());
}

#[test]
fn every_check_is_cited_and_uniquely_named() {
    let r = report();
    let mut ids = BTreeSet::new();
    for c in &r.checks {
        assert!(!c.citation.trim().is_empty(), "{}", c.id);
        assert!(!c.description.trim().is_empty(), "{}", c.id);
        assert!(ids.insert(c.id.clone()), "duplicate id {}", c.id);
    }
}

#[test]
fn summary_and_outcome() {
    let r = report();
    let s = r.summary;
    assert_eq!(s.pass + s.fail + s.not_forced, r.checks.len());
    assert_eq!(s.fail, 0, "{r}");
    assert!(r.ok());
    let not_forced: Vec<_> = r.checks.iter().filter(|c| c.status == CheckStatus::NotForced).collect();
    assert_eq!(not_forced.len(), 1);
    let bn = not_forced[0];
    assert_eq!((bn.id.as_str(), bn.computed.as_str(), bn.expected.as_str()), ("stratum.M_2.h0", "2", "3"));
    assert!(bn.citation.contains("Theorem 1.1, final sentence"));
    assert!(r.to_string().contains("[NOT_FORCED] stratum.M_2.h0"));
}

#[test]
fn json_schema() {
    let v = serde_json::to_value(report()).unwrap();
    let keys = |o: &serde_json::Value| o.as_object().unwrap().keys().cloned().collect::<BTreeSet<_>>();
    assert_eq!(keys(&v), ["checks", "summary"].map(String::from).into());
    assert_eq!(keys(&v["summary"]), ["fail", "not_forced", "pass"].map(String::from).into());
    let check_keys: BTreeSet<String> =
        ["citation", "computed", "description", "expected", "id", "status"].map(String::from).into();
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(keys(c), check_keys);
        assert!(["PASS", "FAIL", "NOT_FORCED"].contains(&c["status"].as_str().unwrap()));
    }
}

#[test]
fn strata_arithmetic() {
    let strata = strata().unwrap();
    let dims: Vec<u64> = strata.iter().map(|s| s.expected_dim).collect();
    let codims: Vec<u64> = strata.iter().map(|s| s.expected_codim).collect();
    assert_eq!(dims, vec![17, 15, 15, 13, 13, 13]);
    assert_eq!(codims, vec![0, 2, 2, 4, 4, 4]);
    let mut described = 0;
    for s in &strata {
        assert_eq!(s.expected_dim + s.expected_codim, MODULI_DIM, "{}", s.name);
        assert_eq!(s.sheaf.hilbert(), BiPoly::linear(4, 2, 1), "{}", s.name);
        if let StratumShape::Space { space } = &s.shape {
            let p = poincare(space).unwrap();
            assert_eq!(p.degree(), Some(s.expected_dim as usize), "{}", s.name);
            assert!(p.is_palindromic(), "{}", s.name);
            described += 1;
        }
    }
    assert_eq!(described, 4);
}

#[test]
fn perturbed_betti_numbers_fail_with_both_values() {
    let cfg = PipelineConfig { surface_betti: [1, 0, 3, 0, 1], ..PipelineConfig::default() };
    let r = verify_with(&cfg);
    assert!(!r.ok());
    let t = r.get("poincare.polynomial").unwrap();
    assert_eq!(t.status, CheckStatus::Fail);
    assert!(t.description.contains("first mismatch at exponent 1"), "{}", t.description);
    for c in r.checks.iter().filter(|c| c.status == CheckStatus::Fail) {
        assert!(!c.computed.is_empty() && !c.expected.is_empty(), "{}", c.id);
        assert_ne!(c.computed, c.expected, "{}", c.id);
    }
}

#[test]
fn removing_an_empty_moduli_space_flags_the_extra_wall() {
    let mut cfg = PipelineConfig::default();
    cfg.table = cfg.table.without(ModuliKey { poly: LinPoly::new(2, 0, 1), kind: ModuliKind::Sheaf });
    let r = verify_with(&cfg);
    let w = r.get("walls.4m+2n+1").unwrap();
    assert_eq!(w.status, CheckStatus::Fail);
    assert_eq!((w.computed.as_str(), w.expected.as_str()), ("{2, 5, 11}", "{5, 11}"));
    assert_eq!(r.get("walls.4m+2n-1").unwrap().status, CheckStatus::Pass);
}
