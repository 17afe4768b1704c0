//! Jacobi and Dubiner polynomials, and macro expansion sets over split cells.

mod dubiner;
mod expansion;
mod jacobi;
pub(crate) mod jet;

pub use dubiner::{dubiner_degree, dubiner_dim, dubiner_tabulate};
pub use expansion::{constrained_expansion, macro_expansion, NULL_SPACE_TOL, Continuity, ExpansionSet};
pub use jacobi::{jacobi, jacobi_norm_squared, jacobi_with_derivative, legendre_unit, JacobiBasis};
pub use jet::multi_indices;

/// Values and derivatives of a family of functions at a set of points.
///
/// Indexed `(derivative, basis, point, component)`; derivative multi-indices
/// are graded with descending lexicographic order inside each degree, so in
/// 2D the order-2 layout is `(0,0) (1,0) (0,1) (2,0) (1,1) (0,2)`.
#[derive(Clone, Debug)]
pub struct TabulatedValues {
    max_deriv: usize,
    derivs: Vec<Vec<usize>>,
    nbasis: usize,
    points: Vec<Vec<f64>>,
    ncomp: usize,
    data: Vec<f64>,
}

impl TabulatedValues {
    pub fn zeros(dim: usize, max_deriv: usize, nbasis: usize, points: Vec<Vec<f64>>, ncomp: usize) -> Self {
        let derivs = multi_indices(dim, max_deriv);
        let len = derivs.len() * nbasis * points.len() * ncomp;
        Self {
            max_deriv,
            derivs,
            nbasis,
            points,
            ncomp,
            data: vec![0.0; len],
        }
    }

    #[inline]
    fn offset(&self, k: usize, b: usize, p: usize, c: usize) -> usize {
        ((k * self.nbasis + b) * self.points.len() + p) * self.ncomp + c
    }

    #[inline]
    pub fn get(&self, k: usize, b: usize, p: usize, c: usize) -> f64 {
        self.data[self.offset(k, b, p, c)]
    }

    #[inline]
    pub fn set(&mut self, k: usize, b: usize, p: usize, c: usize, v: f64) {
        let o = self.offset(k, b, p, c);
        self.data[o] = v;
    }

    #[inline]
    pub fn add(&mut self, k: usize, b: usize, p: usize, c: usize, v: f64) {
        let o = self.offset(k, b, p, c);
        self.data[o] += v;
    }

    /// Position of a derivative multi-index in the layout.
    pub fn deriv_index(&self, alpha: &[usize]) -> Option<usize> {
        self.derivs.iter().position(|a| a == alpha)
    }

    pub fn derivs(&self) -> &[Vec<usize>] {
        &self.derivs
    }

    pub fn max_deriv(&self) -> usize {
        self.max_deriv
    }

    pub fn nbasis(&self) -> usize {
        self.nbasis
    }

    pub fn npoints(&self) -> usize {
        self.points.len()
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Apply a linear map to the basis index: `out_i = Σ_j m_ij f_j`.
    pub fn transform_basis(&self, m: &nalgebra::DMatrix<f64>) -> TabulatedValues {
        assert_eq!(m.ncols(), self.nbasis, "basis count mismatch");
        let np = self.points.len();
        let nc = self.ncomp;
        let mut out = TabulatedValues {
            max_deriv: self.max_deriv,
            derivs: self.derivs.clone(),
            nbasis: m.nrows(),
            points: self.points.clone(),
            ncomp: nc,
            data: vec![0.0; self.derivs.len() * m.nrows() * np * nc],
        };
        let block = np * nc;
        for k in 0..self.derivs.len() {
            for i in 0..m.nrows() {
                let dst = (k * m.nrows() + i) * block;
                for j in 0..self.nbasis {
                    let w = m[(i, j)];
                    if w == 0.0 {
                        continue;
                    }
                    let src = (k * self.nbasis + j) * block;
                    for t in 0..block {
                        out.data[dst + t] += w * self.data[src + t];
                    }
                }
            }
        }
        out
    }
}
