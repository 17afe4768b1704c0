#![allow(dead_code)]

use proptest::prelude::*;

/// Vertices uniform in [-1, 1]² with |det J| ≥ 0.05.
pub fn triangle() -> impl Strategy<Value = Vec<Vec<f64>>> {
    proptest::array::uniform6(-1.0f64..1.0).prop_map(|c| vec![vec![c[0], c[1]], vec![c[2], c[3]], vec![c[4], c[5]]]).prop_filter("degenerate", |v| det(v).abs() >= 0.05)
}

pub fn det(v: &[Vec<f64>]) -> f64 {
    (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1])
}

/// Barycentric point strictly inside the triangle.
pub fn interior_point(v: &[Vec<f64>], l: [f64; 3]) -> Vec<f64> {
    let s: f64 = l.iter().sum();
    (0..2).map(|i| (0..3).map(|k| l[k] / s * v[k][i]).sum()).collect()
}

pub fn reference() -> Vec<Vec<f64>> {
    vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]
}

/// Dense bivariate polynomial `Σ c_ab x^a y^b`, `a + b ≤ degree`.
#[derive(Clone, Debug)]
pub struct Poly {
    pub terms: Vec<(usize, usize, f64)>,
}

impl Poly {
    pub fn new(degree: usize, coeffs: &[f64]) -> Self {
        let mut terms = Vec::new();
        let mut k = 0;
        for a in 0..=degree {
            for b in 0..=degree - a {
                terms.push((a, b, coeffs[k % coeffs.len()]));
                k += 1;
            }
        }
        Self { terms }
    }

    /// `∂^alpha p (x)`.
    pub fn eval(&self, x: &[f64], alpha: &[usize]) -> f64 {
        let falling = |n: usize, k: usize| -> f64 { (0..k).map(|i| (n - i) as f64).product() };
        self.terms
            .iter()
            .filter(|&&(a, b, _)| a >= alpha[0] && b >= alpha[1])
            .map(|&(a, b, c)| c * falling(a, alpha[0]) * falling(b, alpha[1]) * x[0].powi((a - alpha[0]) as i32) * x[1].powi((b - alpha[1]) as i32))
            .sum()
    }
}
