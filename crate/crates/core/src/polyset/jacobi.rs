//! Jacobi polynomials by three-term recurrence.
//!
//! Standard convention: `P_n^{(α,β)}` is orthogonal under `(1-x)^α (1+x)^β`
//! on [−1, 1] with `P_n(1) = binom(n+α, n)`. Only `α = β` occurs in the
//! element nodes, where the two weight orderings coincide.

use crate::{Error, Result};

/// Value and first derivative of `P_n^{(α,β)}(x)`.
///
/// The derivative is carried through the differentiated recurrence, not via
/// the `P_{n-1}^{(α+1,β+1)}` identity, so the identity can be tested.
pub fn jacobi_with_derivative(n: usize, alpha: f64, beta: f64, x: f64) -> (f64, f64) {
    let (mut p0, mut d0) = (1.0, 0.0);
    if n == 0 {
        return (p0, d0);
    }
    let mut p1 = 0.5 * ((alpha + beta + 2.0) * x + (alpha - beta));
    let mut d1 = 0.5 * (alpha + beta + 2.0);
    for k in 1..n {
        let k = k as f64;
        let c = 2.0 * k + alpha + beta;
        let a1 = 2.0 * (k + 1.0) * (k + alpha + beta + 1.0) * c;
        let a2 = (c + 1.0) * (alpha * alpha - beta * beta);
        let a3 = c * (c + 1.0) * (c + 2.0);
        let a4 = 2.0 * (k + alpha) * (k + beta) * (c + 2.0);
        let p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        let d2 = ((a2 + a3 * x) * d1 + a3 * p1 - a4 * d0) / a1;
        (p0, d0, p1, d1) = (p1, d1, p2, d2);
    }
    (p1, d1)
}

pub fn jacobi(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    jacobi_with_derivative(n, alpha, beta, x).0
}

/// `P_n` on [0, 1] scaled to unit L2 norm: `sqrt(2n+1) P_n(2x-1)`.
pub fn legendre_unit(n: usize, x: f64) -> f64 {
    (2.0 * n as f64 + 1.0).sqrt() * jacobi(n, 0.0, 0.0, 2.0 * x - 1.0)
}

fn ln_gamma_int(m: f64) -> f64 {
    // Γ(m) for positive integer or half-integer-free integer arguments.
    let mut acc = 0.0;
    let mut k = 1.0;
    while k < m - 0.5 {
        acc += k.ln();
        k += 1.0;
    }
    acc
}

/// Squared norm `c_n = ∫ (1-x)^α (1+x)^β P_n² dx` for integer weights.
pub fn jacobi_norm_squared(n: usize, alpha: usize, beta: usize) -> f64 {
    let (n, a, b) = (n as f64, alpha as f64, beta as f64);
    let ln = (a + b + 1.0) * std::f64::consts::LN_2 - (2.0 * n + a + b + 1.0).ln()
        + ln_gamma_int(n + a + 1.0)
        + ln_gamma_int(n + b + 1.0)
        - ln_gamma_int(n + a + b + 1.0)
        - ln_gamma_int(n + 1.0);
    ln.exp()
}

/// Recurrence coefficients `(a_n, b_n, c_n)` of `P_{n+1} = (a_n x + b_n) P_n - c_n P_{n-1}`.
pub(crate) fn jrc(a: f64, b: f64, n: usize) -> (f64, f64, f64) {
    let n = n as f64;
    let an = (2.0 * n + 1.0 + a + b) * (2.0 * n + 2.0 + a + b) / (2.0 * (n + 1.0) * (n + 1.0 + a + b));
    let bn = if a == b {
        0.0
    } else {
        (a * a - b * b) * (2.0 * n + 1.0 + a + b)
            / (2.0 * (n + 1.0) * (2.0 * n + a + b) * (n + 1.0 + a + b))
    };
    let cn = (n + a) * (n + b) * (2.0 * n + 2.0 + a + b)
        / ((n + 1.0) * (n + 1.0 + a + b) * (2.0 * n + a + b));
    (an, bn, cn)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobiBasis {
    pub alpha: usize,
    pub beta: usize,
    pub max_degree: usize,
}

impl JacobiBasis {
    pub fn new(alpha: usize, beta: usize, max_degree: usize) -> Self {
        Self {
            alpha,
            beta,
            max_degree,
        }
    }

    /// `P_i` (deriv 0) or `dP_i/dŝ` (deriv 1) at `shat`.
    pub fn eval(&self, i: usize, shat: f64, deriv: usize) -> Result<f64> {
        if i > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "Jacobi index {i} exceeds max degree {}",
                self.max_degree
            )));
        }
        let (p, dp) = jacobi_with_derivative(i, self.alpha as f64, self.beta as f64, shat);
        match deriv {
            0 => Ok(p),
            1 => Ok(dp),
            _ => Err(Error::InvalidArgument(format!("derivative order {deriv} > 1"))),
        }
    }

    pub fn norm_squared(&self, i: usize) -> f64 {
        jacobi_norm_squared(i, self.alpha, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_jacobi;

    #[test]
    fn low_degree_values() {
        let b = JacobiBasis::new(1, 1, 4);
        for s in [-1.0, -0.3, 0.2, 1.0] {
            assert_eq!(b.eval(0, s, 0).unwrap(), 1.0);
        }
        for i in 0..5 {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert!((b.eval(i, 1.0, 0).unwrap() - (i as f64 + 1.0)).abs() < 1e-13);
            assert!((b.eval(i, -1.0, 0).unwrap() - sign * (i as f64 + 1.0)).abs() < 1e-13);
        }
        assert!(b.eval(5, 0.0, 0).is_err());
    }

    #[test]
    fn derivative_identity_with_fitted_constant() {
        let b11 = JacobiBasis::new(1, 1, 5);
        let b22 = JacobiBasis::new(2, 2, 5);
        for i in 1..=4 {
            let pts: Vec<f64> = (0..20).map(|k| -0.95 + 1.9 * k as f64 / 19.0).collect();
            let num: f64 = pts.iter().map(|&s| b11.eval(i, s, 1).unwrap() * b22.eval(i - 1, s, 0).unwrap()).sum();
            let den: f64 = pts.iter().map(|&s| b22.eval(i - 1, s, 0).unwrap().powi(2)).sum();
            let d = num / den;
            assert!((d - (i as f64 + 3.0) / 2.0).abs() < 1e-12);
            for &s in &pts {
                let lhs = b11.eval(i, s, 1).unwrap();
                assert!((lhs - d * b22.eval(i - 1, s, 0).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn orthogonality_under_gauss_jacobi() {
        let (x, w) = gauss_jacobi(8, 1.0, 1.0);
        let b = JacobiBasis::new(1, 1, 6);
        for i in 0..=6 {
            for j in 0..=6 {
                let g: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(&s, &wt)| wt * b.eval(i, s, 0).unwrap() * b.eval(j, s, 0).unwrap())
                    .sum();
                let expect = if i == j { b.norm_squared(i) } else { 0.0 };
                assert!((g - expect).abs() < 1e-12, "({i},{j}) {g} vs {expect}");
            }
        }
    }

    #[test]
    fn legendre_recurrence_coefficients() {
        let (a, b, c) = jrc(0.0, 0.0, 1);
        assert!((a - 1.5).abs() < 1e-15 && b.abs() < 1e-15 && (c - 0.5).abs() < 1e-15);
    }
}
