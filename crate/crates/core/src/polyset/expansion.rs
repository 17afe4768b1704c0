use nalgebra::DMatrix;
use serde::Serialize;

use super::dubiner::{dubiner_dim, dubiner_jets, dubiner_tabulate};
use super::jacobi::jacobi;
use super::jet::{Affine, JetSpace};
use super::TabulatedValues;
use crate::complex::{SimplicialComplex, SplitSimplicialComplex};
use crate::dualset::{evaluate_functionals, Functional};
use crate::linalg::null_space;
use crate::quadrature::simplex_rule;
use crate::{Error, Result};

/// Relative singular-value cutoff for null-space extraction.
pub const NULL_SPACE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Continuity {
    Dg,
    C0,
    Constrained,
}

/// A computable basis of piecewise polynomials over the cells of a complex.
///
/// Every member is stored as coefficients over the broken orthonormal basis:
/// per cell, the unit-simplex Dubiner polynomials composed with the cell's
/// inverse affine map and scaled by `sqrt(|K_ref| / |τ|)`.
#[derive(Clone, Debug)]
pub struct ExpansionSet {
    complex: SimplicialComplex,
    degree: usize,
    continuity: Continuity,
    ncomp: usize,
    /// `size × (ncomp · dg_dim)`, component-major columns.
    coeffs: DMatrix<f64>,
    /// Null-space coefficients over the base set, for constrained sets.
    constraint: Option<DMatrix<f64>>,
}

impl ExpansionSet {
    /// Broken orthonormal basis with `ncomp` components per member.
    pub fn dg(complex: &SimplicialComplex, degree: usize, ncomp: usize) -> Self {
        let n = ncomp * complex.num_cells() * dubiner_dim(complex.dim(), degree);
        Self {
            complex: complex.clone(),
            degree,
            continuity: Continuity::Dg,
            ncomp,
            coeffs: DMatrix::identity(n, n),
            constraint: None,
        }
    }

    /// Continuous piecewise polynomials built from vertex, edge, face and cell modes.
    pub fn c0(complex: &SimplicialComplex, degree: usize, ncomp: usize) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidArgument("C0 expansion needs degree >= 1".into()));
        }
        let scalar = c0_scalar_coeffs(complex, degree)?;
        Ok(Self {
            complex: complex.clone(),
            degree,
            continuity: Continuity::C0,
            ncomp,
            coeffs: component_copies(&scalar, ncomp),
            constraint: None,
        })
    }

    /// Subspace of `base` annihilated by every constraint functional.
    pub fn constrained(base: &ExpansionSet, constraints: &[Functional]) -> Result<Self> {
        let mut l = evaluate_functionals(constraints, base)?;
        // unit rows: derivative jumps of high order scale like h^-order on
        // physical cells and would otherwise swamp the value constraints.
        // Rows already below the rank cutoff are roundoff and are dropped.
        let big = l.row_iter().map(|r| r.norm()).fold(0.0, f64::max);
        for mut row in l.row_iter_mut() {
            let n = row.norm();
            if n > NULL_SPACE_TOL * big {
                row /= n;
            } else {
                row.fill(0.0);
            }
        }
        let ns = null_space(&l, NULL_SPACE_TOL);
        let coeffs = &ns * &base.coeffs;
        Ok(Self {
            complex: base.complex.clone(),
            degree: base.degree,
            continuity: Continuity::Constrained,
            ncomp: base.ncomp,
            coeffs,
            constraint: Some(ns),
        })
    }

    /// Component-wise copies of a scalar set.
    pub fn vectorize(&self, ncomp: usize) -> Result<Self> {
        if self.ncomp != 1 {
            return Err(Error::InvalidArgument("vectorize expects a scalar set".into()));
        }
        Ok(Self {
            coeffs: component_copies(&self.coeffs, ncomp),
            ncomp,
            constraint: None,
            ..self.clone()
        })
    }

    pub fn size(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn continuity(&self) -> Continuity {
        self.continuity
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn coeffs(&self) -> &DMatrix<f64> {
        &self.coeffs
    }

    pub fn constraint_matrix(&self) -> Option<&DMatrix<f64>> {
        self.constraint.as_ref()
    }

    fn cell_dim(&self) -> usize {
        dubiner_dim(self.complex.dim(), self.degree)
    }

    fn dg_dim(&self) -> usize {
        self.complex.num_cells() * self.cell_dim()
    }

    /// Tabulate every member at `points`.
    ///
    /// `cells[i]` picks the subcell used for point `i`; `None` falls back to
    /// the smallest-id subcell containing the point.
    pub fn tabulate(&self, points: &[Vec<f64>], cells: Option<&[Option<usize>]>, max_deriv: usize) -> Result<TabulatedValues> {
        let d = self.complex.dim();
        let space = JetSpace::new(d, max_deriv);
        let nk = self.cell_dim();
        let dg = self.dg_dim();
        let nd = space.len();
        let mut tab = TabulatedValues::zeros(d, max_deriv, self.size(), points.to_vec(), self.ncomp);
        let mut local = vec![0.0; nk * nd];
        for (ip, x) in points.iter().enumerate() {
            let hint = cells.and_then(|c| c[ip]);
            let cell = match hint {
                Some(c) => c,
                None => self.complex.locate(x).ok_or_else(|| Error::PointOutside(x.clone()))?,
            };
            let map = self.complex.cell_map(cell);
            let xhat = map.to_reference(x);
            let inv = map.inverse();
            let seeds: Vec<Affine> = (0..d)
                .map(|i| {
                    let mut g = [0.0; 3];
                    for j in 0..d {
                        g[j] = inv[(i, j)];
                    }
                    Affine { value: xhat[i], grad: g }
                })
                .collect();
            let jets = dubiner_jets(&space, self.degree, &seeds);
            let scale = 1.0 / map.det().abs().sqrt();
            for (j, jet) in jets.iter().enumerate() {
                for k in 0..nd {
                    local[j * nd + k] = scale * space.derivative(jet, k);
                }
            }
            for c in 0..self.ncomp {
                let off = c * dg + cell * nk;
                for m in 0..self.size() {
                    let row = self.coeffs.row(m);
                    for k in 0..nd {
                        let mut v = 0.0;
                        for j in 0..nk {
                            v += row[off + j] * local[j * nd + k];
                        }
                        if v != 0.0 {
                            tab.set(k, m, ip, c, v);
                        }
                    }
                }
            }
        }
        Ok(tab)
    }
}

/// Scalar expansion of the requested continuity over a split cell.
pub fn macro_expansion(split: &SplitSimplicialComplex, degree: usize, continuity: Continuity) -> Result<ExpansionSet> {
    match continuity {
        Continuity::Dg => Ok(ExpansionSet::dg(split.child(), degree, 1)),
        Continuity::C0 => ExpansionSet::c0(split.child(), degree, 1),
        Continuity::Constrained => Err(Error::InvalidArgument(
            "constrained sets come from constrained_expansion".into(),
        )),
    }
}

/// Subspace of `base` on which every constraint functional vanishes.
pub fn constrained_expansion(base: &ExpansionSet, constraints: &[Functional]) -> Result<ExpansionSet> {
    ExpansionSet::constrained(base, constraints)
}

fn component_copies(scalar: &DMatrix<f64>, ncomp: usize) -> DMatrix<f64> {
    let (n, dg) = scalar.shape();
    let mut out = DMatrix::zeros(n * ncomp, dg * ncomp);
    for c in 0..ncomp {
        out.view_mut((c * n, c * dg), (n, dg)).copy_from(scalar);
    }
    out
}

/// Value of the mode attached to `entity` (sorted child vertex ids) with
/// index `j`, given barycentric coordinates on a cell containing it.
fn mode_value(entity: &[usize], j: usize, degree: usize, cell_verts: &[usize], lam: &[f64]) -> f64 {
    let l = |v: usize| lam[cell_verts.iter().position(|&w| w == v).unwrap()];
    let bubble: f64 = entity.iter().map(|&v| l(v)).product();
    match entity.len() {
        1 => bubble,
        2 => bubble * jacobi(j, 1.0, 1.0, l(entity[1]) - l(entity[0])),
        m => {
            let x: Vec<f64> = entity[1..].iter().map(|&v| l(v)).collect();
            let t = dubiner_tabulate(m - 1, degree - m, &[x], 0).expect("entity dim checked");
            bubble * t.get(0, j, 0, 0)
        }
    }
}

fn modes_per_entity(m: usize, degree: usize) -> usize {
    // m = entity dimension; polynomial degree left after the bubble is k - m - 1.
    if degree < m + 1 {
        0
    } else if m == 0 {
        1
    } else {
        dubiner_dim(m, degree - m - 1)
    }
}

fn c0_scalar_coeffs(complex: &SimplicialComplex, degree: usize) -> Result<DMatrix<f64>> {
    let d = complex.dim();
    let nk = dubiner_dim(d, degree);
    let dg = complex.num_cells() * nk;
    let rule = simplex_rule(d, 2 * degree)?;
    let phi = dubiner_tabulate(d, degree, rule.points(), 0)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for m in 0..=d {
        let nmodes = modes_per_entity(m, degree);
        for e in 0..complex.num_entities(m) {
            let ent = complex.topology(m)[e].clone();
            for j in 0..nmodes {
                let mut row = vec![0.0; dg];
                for c in 0..complex.num_cells() {
                    let cv = &complex.topology(d)[c];
                    if !ent.iter().all(|v| cv.contains(v)) {
                        continue;
                    }
                    let s = complex.cell_map(c).det().abs().sqrt();
                    for (q, xh) in rule.points().iter().enumerate() {
                        let mut lam = vec![1.0 - xh.iter().sum::<f64>()];
                        lam.extend_from_slice(xh);
                        let w = rule.weights()[q] * s * mode_value(&ent, j, degree, cv, &lam);
                        for b in 0..nk {
                            row[c * nk + b] += w * phi.get(0, b, q, 0);
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(DMatrix::from_fn(rows.len(), dg, |i, j| rows[i][j]))
}
