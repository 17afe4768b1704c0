//! Collapsed-coordinate Gauss-Jacobi rules on simplices and their tilings.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::complex::{is_refinement_of, EntityId, SimplicialComplex};
use crate::polyset::jacobi_with_derivative;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    points: Vec<Vec<f64>>,
    weights: Vec<f64>,
    exact_degree: usize,
    /// Subcell holding each point, for macro rules.
    cells: Option<Vec<usize>>,
    entity: Option<EntityId>,
}

impl QuadratureRule {
    pub fn new(points: Vec<Vec<f64>>, weights: Vec<f64>, exact_degree: usize) -> Self {
        Self {
            points,
            weights,
            exact_degree,
            cells: None,
            entity: None,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exact_degree(&self) -> usize {
        self.exact_degree
    }

    pub fn entity(&self) -> Option<EntityId> {
        self.entity
    }

    pub fn cells(&self) -> Option<&[usize]> {
        self.cells.as_deref()
    }

    /// Per-point subcell hints suitable for `ExpansionSet::tabulate`.
    pub fn cell_hints(&self) -> Vec<Option<usize>> {
        match &self.cells {
            Some(c) => c.iter().map(|&i| Some(i)).collect(),
            None => vec![None; self.len()],
        }
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }
}

/// Gauss-Jacobi nodes and weights for `(1-x)^α (1+x)^β` on [−1, 1].
///
/// Golub-Welsch for the initial nodes, then Newton on `P_n` to full precision;
/// weights from the closed-form expression in `P_n'`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let ab = alpha + beta;
    let mut t = DMatrix::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        t[(k, k)] = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        if k + 1 < n {
            let j = kf + 1.0;
            let num = 4.0 * j * (j + alpha) * (j + beta) * (j + ab);
            let den = (2.0 * j + ab).powi(2) * (2.0 * j + ab + 1.0) * (2.0 * j + ab - 1.0);
            let b = (num / den).sqrt();
            t[(k, k + 1)] = b;
            t[(k + 1, k)] = b;
        }
    }
    let mut x: Vec<f64> = SymmetricEigen::new(t).eigenvalues.iter().copied().collect();
    x.sort_by(f64::total_cmp);
    for xi in x.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = jacobi_with_derivative(n, alpha, beta, *xi);
            *xi -= p / dp;
        }
    }
    let lg = |m: f64| ln_gamma(m);
    let nf = n as f64;
    let lc = lg(nf + alpha + 1.0) + lg(nf + beta + 1.0) - lg(nf + ab + 1.0) - lg(nf + 1.0)
        + (ab + 1.0) * std::f64::consts::LN_2;
    let c = lc.exp();
    let w = x
        .iter()
        .map(|&xi| {
            let (_, dp) = jacobi_with_derivative(n, alpha, beta, xi);
            c / ((1.0 - xi * xi) * dp * dp)
        })
        .collect();
    (x, w)
}

/// `ln Γ(m)` for positive integers (the only weights used here).
fn ln_gamma(m: f64) -> f64 {
    debug_assert!((m - m.round()).abs() < 1e-12 && m >= 1.0);
    (1..m.round() as usize).map(|k| (k as f64).ln()).sum()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Rule on the unit `d`-simplex exact for total degree ≤ `degree`.
pub fn simplex_rule(d: usize, degree: usize) -> Result<QuadratureRule> {
    let m = degree / 2 + 1;
    let (x0, w0) = gauss_jacobi(m, 0.0, 0.0);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    match d {
        1 => {
            for (x, w) in x0.iter().zip(&w0) {
                points.push(vec![0.5 * (1.0 + x)]);
                weights.push(0.5 * w);
            }
        }
        2 => {
            let (x1, w1) = gauss_jacobi(m, 1.0, 0.0);
            for (a, wa) in x0.iter().zip(&w0) {
                for (b, wb) in x1.iter().zip(&w1) {
                    points.push(vec![0.25 * (1.0 + a) * (1.0 - b), 0.5 * (1.0 + b)]);
                    weights.push(wa * wb / 8.0);
                }
            }
        }
        3 => {
            let (x1, w1) = gauss_jacobi(m, 1.0, 0.0);
            let (x2, w2) = gauss_jacobi(m, 2.0, 0.0);
            for (a, wa) in x0.iter().zip(&w0) {
                for (b, wb) in x1.iter().zip(&w1) {
                    for (c, wc) in x2.iter().zip(&w2) {
                        points.push(vec![
                            0.125 * (1.0 + a) * (1.0 - b) * (1.0 - c),
                            0.25 * (1.0 + b) * (1.0 - c),
                            0.5 * (1.0 + c),
                        ]);
                        weights.push(wa * wb * wc / 64.0);
                    }
                }
            }
        }
        _ => return Err(Error::UnsupportedDimension(d)),
    }
    Ok(QuadratureRule::new(points, weights, degree))
}

/// The unit-simplex rule mapped onto every cell of `complex`.
pub fn macro_rule(complex: &SimplicialComplex, degree: usize) -> Result<QuadratureRule> {
    let base = simplex_rule(complex.dim(), degree)?;
    let mut points = Vec::with_capacity(base.len() * complex.num_cells());
    let mut weights = Vec::with_capacity(points.capacity());
    let mut cells = Vec::with_capacity(points.capacity());
    for c in 0..complex.num_cells() {
        let map = complex.cell_map(c);
        let jac = map.det().abs();
        for (x, w) in base.points().iter().zip(base.weights()) {
            points.push(map.to_physical(x));
            weights.push(w * jac);
            cells.push(c);
        }
    }
    Ok(QuadratureRule {
        points,
        weights,
        exact_degree: degree,
        cells: Some(cells),
        entity: Some((complex.dim(), 0)),
    })
}

/// Rule on one entity of `complex`, exact in the entity's own coordinates.
pub fn facet_rule(complex: &SimplicialComplex, entity: EntityId, degree: usize) -> Result<QuadratureRule> {
    let pts = complex.entity_points(entity)?;
    let m = entity.0;
    let mut rule = if m == 0 {
        QuadratureRule::new(vec![pts[0].to_vec()], vec![1.0], degree)
    } else {
        let base = simplex_rule(m, degree)?;
        let scale = complex.measure(entity)? * factorial(m);
        let d = complex.dim();
        let points = base
            .points()
            .iter()
            .map(|xh| {
                (0..d)
                    .map(|k| pts[0][k] + (0..m).map(|i| xh[i] * (pts[i + 1][k] - pts[0][k])).sum::<f64>())
                    .collect()
            })
            .collect();
        let weights = base.weights().iter().map(|w| w * scale).collect();
        QuadratureRule::new(points, weights, degree)
    };
    rule.entity = Some(entity);
    Ok(rule)
}

/// Macro rule on whichever of `a`, `b` refines the other.
pub fn common_rule(a: &SimplicialComplex, b: &SimplicialComplex, degree: usize) -> Result<QuadratureRule> {
    if is_refinement_of(a, b) {
        macro_rule(a, degree)
    } else if is_refinement_of(b, a) {
        macro_rule(b, degree)
    } else {
        Err(Error::IncompatibleComplexes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{alfeld_split, iso_split, reference_simplex, SplitKind};

    fn exact_monomial(a: usize, b: usize) -> f64 {
        factorial(a) * factorial(b) / factorial(a + b + 2)
    }

    #[test]
    fn gauss_legendre_and_jacobi() {
        let (x, w) = gauss_jacobi(3, 0.0, 0.0);
        let s = (0.6f64).sqrt();
        assert!((x[0] + s).abs() < 1e-15 && (x[2] - s).abs() < 1e-15);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        let (x, w) = gauss_jacobi(5, 2.0, 0.0);
        // ∫(1-x)^2 x^4 dx over [-1,1] = 2/5 + 2/7 = 24/35
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        assert!((v - 24.0 / 35.0).abs() < 1e-14);
    }

    #[test]
    fn simplex_rule_examples() {
        let r = simplex_rule(2, 1).unwrap();
        assert!((r.integrate(|_| 1.0) - 0.5).abs() < 1e-15);
        let r = simplex_rule(2, 4).unwrap();
        assert!((r.integrate(|x| x[0].powi(2) * x[1].powi(2)) - 1.0 / 180.0).abs() < 1e-15);
        let r = simplex_rule(1, 3).unwrap();
        assert!((r.integrate(|x| x[0].powi(3)) - 0.25).abs() < 1e-15);
        let r = simplex_rule(3, 5).unwrap();
        // ∫ x y z² over the unit tet = 1!1!2!/(4+3)! = 2/5040
        assert!((r.integrate(|x| x[0] * x[1] * x[2] * x[2]) - 2.0 / 5040.0).abs() < 1e-16);
        assert!(simplex_rule(4, 2).is_err());
    }

    #[test]
    fn macro_rules_are_exact() {
        let k = reference_simplex(2).unwrap();
        for s in [SplitKind::Alfeld, SplitKind::PowellSabin6, SplitKind::PowellSabin12, SplitKind::Iso(2)] {
            let sp = s.apply(&k).unwrap();
            for deg in 0..=8 {
                let r = macro_rule(sp.child(), deg).unwrap();
                assert_eq!(r.len(), simplex_rule(2, deg).unwrap().len() * sp.child().num_cells());
                for a in 0..=deg {
                    let b = deg - a;
                    let v = r.integrate(|x| x[0].powi(a as i32) * x[1].powi(b as i32));
                    let e = exact_monomial(a, b);
                    assert!(((v - e) / e).abs() < 1e-12, "{s:?} x^{a} y^{b}");
                }
            }
        }
    }

    #[test]
    fn facet_rules() {
        let k = reference_simplex(2).unwrap();
        let h = facet_rule(&k, (1, 0), 0).unwrap();
        assert!((h.weights().iter().sum::<f64>() - 2f64.sqrt()).abs() < 1e-15);
        let e = facet_rule(&k, (1, 2), 2).unwrap();
        assert!((e.integrate(|x| x[0] * x[0]) - 1.0 / 3.0).abs() < 1e-15);
        let a = alfeld_split(&k).unwrap();
        let ie = a.child().find_entity(&[0, 3]).unwrap();
        let r = facet_rule(a.child(), ie, 3).unwrap();
        assert!((r.weights().iter().sum::<f64>() - 2f64.sqrt() / 3.0).abs() < 1e-15);
        assert!(facet_rule(&k, (1, 7), 1).is_err());
    }

    #[test]
    fn common_rules() {
        let k = reference_simplex(2).unwrap();
        let a = alfeld_split(&k).unwrap();
        let ps12 = SplitKind::PowellSabin12.apply(&k).unwrap();
        let iso = iso_split(&k, 2).unwrap();
        assert_eq!(common_rule(a.child(), &k, 2).unwrap().len(), macro_rule(a.child(), 2).unwrap().len());
        assert_eq!(common_rule(ps12.child(), a.child(), 2).unwrap().len(), 12 * 4);
        assert!(matches!(common_rule(a.child(), iso.child(), 2), Err(Error::IncompatibleComplexes)));
    }
}
