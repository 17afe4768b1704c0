mod common;

use macrotab_core::complex::{reference_simplex, SimplicialComplex, SplitKind};
use macrotab_core::quadrature::{facet_rule, macro_rule, simplex_rule};
use proptest::prelude::*;

const SPLITS: [SplitKind; 5] = [SplitKind::None, SplitKind::Alfeld, SplitKind::PowellSabin6, SplitKind::PowellSabin12, SplitKind::Iso(2)];

fn fact(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// ∫ x^a y^b over the unit triangle.
fn exact(a: usize, b: usize) -> f64 {
    fact(a) * fact(b) / fact(a + b + 2)
}

#[test]
fn simplex_rules_are_exact_through_degree_12() {
    for k in 0..=12 {
        let r = simplex_rule(2, k).unwrap();
        assert!((r.weights().iter().sum::<f64>() - 0.5).abs() <= 1e-13 * 0.5);
        for a in 0..=k {
            for b in 0..=k - a {
                let q = r.integrate(|x| x[0].powi(a as i32) * x[1].powi(b as i32));
                assert!((q - exact(a, b)).abs() <= 1e-12 * exact(a, b), "k={k} a={a} b={b}");
            }
        }
    }
}

#[test]
fn macro_rules_on_reference_splits_are_exact() {
    let k = reference_simplex(2).unwrap();
    for kind in SPLITS {
        let s = kind.apply(&k).unwrap();
        for deg in 0..=8 {
            let r = macro_rule(s.child(), deg).unwrap();
            assert_eq!(r.len(), simplex_rule(2, deg).unwrap().len() * s.child().num_cells());
            for a in 0..=deg {
                for b in 0..=deg - a {
                    let q = r.integrate(|x| x[0].powi(a as i32) * x[1].powi(b as i32));
                    assert!((q - exact(a, b)).abs() <= 1e-12 * exact(a, b), "{kind:?} deg={deg} a={a} b={b}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn macro_rules_on_physical_splits_pull_back_exactly(v in common::triangle(), deg in 0usize..=8, a in 0usize..=8, b in 0usize..=8) {
        prop_assume!(a + b <= deg);
        let k = SimplicialComplex::simplex(v).unwrap();
        let area = k.total_volume();
        let map = k.cell_map(0).clone();
        for kind in SPLITS {
            let s = kind.apply(&k).unwrap();
            let r = macro_rule(s.child(), deg).unwrap();
            prop_assert!((r.weights().iter().sum::<f64>() - area).abs() <= 1e-13 * area);
            let q = r.integrate(|x| {
                let xh = map.to_reference(x);
                xh[0].powi(a as i32) * xh[1].powi(b as i32)
            });
            let want = 2.0 * area * exact(a, b);
            prop_assert!((q - want).abs() <= 1e-12 * want, "{kind:?}");
        }
    }

    #[test]
    fn edge_rules_integrate_edge_polynomials(v in common::triangle(), deg in 0usize..10, e in 0usize..3) {
        let k = SimplicialComplex::simplex(v).unwrap();
        let r = facet_rule(&k, (1, e), deg).unwrap();
        let ends = k.entity_points((1, e)).unwrap();
        let len = k.measure((1, e)).unwrap();
        let (p0, p1) = (ends[0].to_vec(), ends[1].to_vec());
        // s ∈ [0, 1] along the edge: ∫ s^deg = len / (deg + 1)
        let q = r.integrate(|x| {
            let d = [p1[0] - p0[0], p1[1] - p0[1]];
            let s = ((x[0] - p0[0]) * d[0] + (x[1] - p0[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1]);
            s.powi(deg as i32)
        });
        prop_assert!((q - len / (deg as f64 + 1.0)).abs() <= 1e-12 * len);
    }
}
