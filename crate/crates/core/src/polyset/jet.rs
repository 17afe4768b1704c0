//! Truncated Taylor expansions ("jets") in up to three variables.
//!
//! The simplex recurrences only ever multiply by affine functions, so a jet
//! needs no general product: `mul_affine` is the whole algebra.

/// Multi-index layout shared by every jet of a given dimension and order.
#[derive(Clone, Debug)]
pub(crate) struct JetSpace {
    dim: usize,
    alphas: Vec<Vec<usize>>,
    /// Index of `alpha - e_i`, if `alpha_i > 0`.
    minus: Vec<[Option<usize>; 3]>,
    factorial: Vec<f64>,
}

/// Multi-indices of total degree ≤ `order`, graded, descending lexicographic within a degree.
pub fn multi_indices(dim: usize, order: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == dim - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(dim, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for n in 0..=order {
        rec(dim, n, &mut Vec::new(), &mut out);
    }
    out
}

impl JetSpace {
    pub(crate) fn new(dim: usize, order: usize) -> Self {
        let alphas = multi_indices(dim, order);
        let pos = |a: &Vec<usize>| alphas.iter().position(|b| b == a);
        let minus = alphas
            .iter()
            .map(|a| {
                let mut m = [None; 3];
                for i in 0..dim {
                    if a[i] > 0 {
                        let mut b = a.clone();
                        b[i] -= 1;
                        m[i] = pos(&b);
                    }
                }
                m
            })
            .collect();
        let factorial = alphas
            .iter()
            .map(|a| a.iter().map(|&k| (1..=k).map(|j| j as f64).product::<f64>()).product())
            .collect();
        Self {
            dim,
            alphas,
            minus,
            factorial,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.alphas.len()
    }

    #[cfg(test)]
    pub(crate) fn alphas(&self) -> &[Vec<usize>] {
        &self.alphas
    }

    pub(crate) fn constant(&self, c: f64) -> Vec<f64> {
        let mut j = vec![0.0; self.len()];
        j[0] = c;
        j
    }

    /// `out = a * src` where `a` is affine with value `a.0` and gradient `a.1`.
    pub(crate) fn mul_affine(&self, src: &[f64], a: &Affine, out: &mut [f64]) {
        for k in 0..self.len() {
            let mut v = a.value * src[k];
            for i in 0..self.dim {
                if let Some(m) = self.minus[k][i] {
                    v += a.grad[i] * src[m];
                }
            }
            out[k] = v;
        }
    }

    pub(crate) fn times_affine(&self, src: &[f64], a: &Affine) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        self.mul_affine(src, a, &mut out);
        out
    }

    /// Partial derivative `∂^alpha` at the expansion point, by position in `alphas`.
    pub(crate) fn derivative(&self, jet: &[f64], k: usize) -> f64 {
        jet[k] * self.factorial[k]
    }
}

/// Affine function `value + grad · h` of the jet variables.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Affine {
    pub value: f64,
    pub grad: [f64; 3],
}

impl Affine {
    pub(crate) fn constant(value: f64) -> Self {
        Self {
            value,
            grad: [0.0; 3],
        }
    }

    /// `sum_i c_i * f_i + c0`.
    pub(crate) fn combo(c0: f64, terms: &[(f64, &Affine)]) -> Self {
        let mut out = Self::constant(c0);
        for (c, f) in terms {
            out.value += c * f.value;
            for i in 0..3 {
                out.grad[i] += c * f.grad[i];
            }
        }
        out
    }
}

/// `out = a * x - b * y`.
pub(crate) fn lincomb(a: f64, x: &[f64], b: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(p, q)| a * p - b * q).collect()
}
