use num::{BigInt, BigRational};
use quadmod::surfcoh::{
    chi_surface, h_curve, h_line, h_p1, h_surface, hilbert_curve, hilbert_line, hilbert_line_bundle,
    hilbert_skyscraper, serre_dual,
};
use quadmod::{BiDegree, BiPoly, CohDims, CurveClass, Dim, LineClass};

const SWEEP: std::ops::RangeInclusive<i64> = -6..=6;

/// Cohomology of O(a) on P¹ by counting monomials: H⁰ has the monomials of degree a,
/// H¹ the Laurent monomials x^i y^j with i, j ≤ −1 and i + j = a.
fn p1_by_monomials(a: i64) -> [u64; 2] {
    let h0 = (0..=a.max(-1)).count() as u64;
    let h1 = (a + 1..=-1).filter(|&i| a - i <= -1).count() as u64;
    [h0, h1]
}

fn kunneth_oracle(a: i64, b: i64) -> [u64; 3] {
    let (x, y) = (p1_by_monomials(a), p1_by_monomials(b));
    [x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[1] * y[1]]
}

fn known(h: CohDims) -> [u64; 3] {
    h.all_known().expect("line bundle cohomology is always known")
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[test]
fn p1_examples() {
    assert_eq!(h_p1(0), (1, 0));
    assert_eq!(h_p1(-1), (0, 0));
    assert_eq!(h_p1(-3), (0, 2));
    for a in -10..=10 {
        let [h0, h1] = p1_by_monomials(a);
        assert_eq!(h_p1(a), (h0, h1), "a = {a}");
    }
}

#[test]
fn surface_examples() {
    assert_eq!(known(h_surface(BiDegree::new(0, 0))), [1, 0, 0]);
    assert_eq!(known(h_surface(BiDegree::new(-2, -3))), [0, 0, 2]);
    assert_eq!(known(h_surface(BiDegree::new(2, 3))), [12, 0, 0]);
    assert_eq!(chi_surface(BiDegree::new(0, 0)), 1);
    assert_eq!(chi_surface(BiDegree::new(-1, 7)), 0);
    assert_eq!(chi_surface(BiDegree::new(2, 4)), 15);
    assert_eq!(serre_dual(BiDegree::new(-1, -1)), BiDegree::new(-1, -1));
    assert_eq!(serre_dual(BiDegree::new(0, 0)), BiDegree::new(-2, -2));
    assert_eq!(serre_dual(BiDegree::new(1, 3)), BiDegree::new(-3, -5));
}

#[test]
fn kunneth_sweep_matches_monomial_count() {
    let mut checked = 0;
    for a in SWEEP {
        for b in SWEEP {
            let t = BiDegree::new(a, b);
            let h = known(h_surface(t));
            assert_eq!(h, kunneth_oracle(a, b), "{t:?}");
            assert_eq!(h[0] as i64 - h[1] as i64 + h[2] as i64, (a + 1) * (b + 1), "{t:?}");
            assert_eq!(chi_surface(t), (a + 1) * (b + 1));
            checked += 1;
        }
    }
    assert_eq!(checked, 169);
}

#[test]
fn serre_duality_sweep() {
    let mut checked = 0;
    for a in SWEEP {
        for b in SWEEP {
            let t = BiDegree::new(a, b);
            let (h, d) = (known(h_surface(t)), known(h_surface(serre_dual(t))));
            for i in 0..3 {
                assert_eq!(h[i], d[2 - i], "h^{i} of {t:?}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 507);
}

#[test]
fn hilbert_polynomial_of_line_bundle_is_chi_of_twist() {
    for a in SWEEP {
        for b in SWEEP {
            let p = hilbert_line_bundle(BiDegree::new(a, b));
            for u in -4..=4 {
                for v in -4..=4 {
                    assert_eq!(p.eval_int(u, v), int(chi_surface(BiDegree::new(a + u, b + v))));
                }
            }
        }
    }
}

#[test]
fn line_examples() {
    let l = LineClass::ZeroOne;
    assert_eq!(h_line(l, BiDegree::new(1, 3)), (2, 0));
    assert_eq!(h_line(l, BiDegree::new(-3, 0)), (0, 2));
    assert_eq!(h_line(l, BiDegree::new(-1, 0)), (0, 0));
    assert_eq!(hilbert_line(l, BiDegree::new(-1, 0)), BiPoly::linear(1, 0, 0));
    assert_eq!(hilbert_line(LineClass::OneZero, BiDegree::new(0, 2)), BiPoly::linear(0, 1, 3));
    assert_eq!(hilbert_skyscraper(1), BiPoly::constant(1));
}

#[test]
fn curve_examples() {
    let q = CurveClass::new(2, 3).unwrap();
    assert_eq!(h_curve(q, BiDegree::new(0, 0)).all_known(), Some([1, 2, 0]));
    assert_eq!(h_curve(q, BiDegree::new(2, 3)).all_known(), Some([11, 0, 0]));
    let c = CurveClass::new(2, 4).unwrap();
    assert_eq!(h_curve(c, BiDegree::new(0, 1)).all_known(), Some([2, 2, 0]));
    assert_eq!(hilbert_curve(c, BiDegree::new(0, 0)), BiPoly::linear(4, 2, -2));
    assert!(CurveClass::new(0, 0).is_err());
}

#[test]
fn curve_euler_characteristic_matches_hilbert() {
    let mut fully_known = 0;
    for c in 0..=3 {
        for d in 0..=5 {
            let Ok(class) = CurveClass::new(c, d) else { continue };
            for a in -4..=4 {
                for b in -4..=4 {
                    let t = BiDegree::new(a, b);
                    let h = h_curve(class, t);
                    let p = hilbert_curve(class, t);
                    // (m+a+1)(n+b+1) − (m+a−c+1)(n+b−d+1) evaluated independently
                    let oracle = (a + 1) * (b + 1) - (a - c + 1) * (b - d + 1);
                    assert_eq!(p.eval_int(0, 0), int(oracle), "{class:?} {t:?}");
                    if let Some([h0, h1, h2]) = h.all_known() {
                        assert_eq!(h0 as i64 - h1 as i64 + h2 as i64, oracle, "{class:?} {t:?}");
                        fully_known += 1;
                    }
                    for i in 0..3 {
                        if let Dim::Known(x) = h.get(i) {
                            assert!(x <= 64, "{class:?} {t:?}");
                        }
                    }
                }
            }
        }
    }
    assert!(fully_known > 0);
}
