//! Mapping reference nodal bases to physical triangles.
//!
//! `F` maps the physical cell onto the reference cell and `J` is its
//! Jacobian. A plan produces `M` with `φ = M · F*(φ̂)`, where `F*` is the
//! pullback (composition with `F`, plus the double Piola factor for
//! symmetric tensors). For constrained elements the reference basis is the
//! extended one, so `M` is `dim × extended dim`.

use nalgebra::{DMatrix, Matrix2};

use crate::complex::{reference_simplex, simplex_measure, CellMap, SimplicialComplex};
use crate::dualset::{evaluate_with, Functional, NodeLabel};
use crate::elements::{CiarletElement, ElementSpec, MappingKind};
use crate::polyset::{jacobi, TabulatedValues};
use crate::{Error, Result};

/// Affine geometry of a physical triangle.
#[derive(Clone, Debug)]
pub struct CellGeometry {
    vertices: Vec<Vec<f64>>,
    map: CellMap,
    /// Jacobian of the physical→reference map.
    j: Matrix2<f64>,
    det_j: f64,
    edge_lengths: [f64; 3],
    /// Rows `(n_i, t_i)` for physical edge `i`.
    frames: [Matrix2<f64>; 3],
    ref_frames: [Matrix2<f64>; 3],
}

fn frames_of(k: &SimplicialComplex) -> [Matrix2<f64>; 3] {
    std::array::from_fn(|e| {
        let f = k.facet_frame(e);
        Matrix2::new(f.normal[0], f.normal[1], f.tangents[0][0], f.tangents[0][1])
    })
}

impl CellGeometry {
    pub fn new(vertices: &[Vec<f64>]) -> Result<Self> {
        if vertices.len() != 3 || vertices.iter().any(|v| v.len() != 2) {
            return Err(Error::UnsupportedDimension(vertices.len().saturating_sub(1)));
        }
        let k = SimplicialComplex::simplex(vertices.to_vec())?;
        let map = k.cell_map(0).clone();
        let inv = map.inverse();
        let j = Matrix2::new(inv[(0, 0)], inv[(0, 1)], inv[(1, 0)], inv[(1, 1)]);
        let edge_lengths = std::array::from_fn(|e| {
            let pts = k.entity_points((1, e)).expect("triangle has three edges");
            simplex_measure(&pts)
        });
        let reference = reference_simplex(2)?;
        Ok(Self {
            vertices: vertices.to_vec(),
            map,
            det_j: j.determinant(),
            j,
            edge_lengths,
            frames: frames_of(&k),
            ref_frames: frames_of(&reference),
        })
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn j(&self) -> &Matrix2<f64> {
        &self.j
    }

    pub fn det_j(&self) -> f64 {
        self.det_j
    }

    pub fn j_inv_t(&self) -> Matrix2<f64> {
        self.j.try_inverse().expect("non-degenerate").transpose()
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        self.edge_lengths[e]
    }

    pub fn edge_lengths(&self) -> [f64; 3] {
        self.edge_lengths
    }

    /// `G_e = [n t]ᵀ` of physical edge `e`.
    pub fn frame(&self, e: usize) -> &Matrix2<f64> {
        &self.frames[e]
    }

    pub fn reference_frame(&self, e: usize) -> &Matrix2<f64> {
        &self.ref_frames[e]
    }

    pub fn to_reference(&self, x: &[f64]) -> Vec<f64> {
        self.map.to_reference(x)
    }

    pub fn to_physical(&self, xhat: &[f64]) -> Vec<f64> {
        self.map.to_physical(xhat)
    }

    /// `B_e = Ĝ_e J^{-T} G_eᵀ diag(1, 1/|e|)`: reference (normal average,
    /// tangential average) from physical (normal average, tangential raw).
    pub fn edge_block(&self, e: usize) -> Matrix2<f64> {
        let b = self.ref_frames[e] * self.j_inv_t() * self.frames[e].transpose();
        b * Matrix2::new(1.0, 0.0, 0.0, 1.0 / self.edge_lengths[e])
    }
}

pub fn geometry(vertices: &[Vec<f64>]) -> Result<CellGeometry> {
    CellGeometry::new(vertices)
}

/// Index helpers for HCT-type node layouts: three vertices with value and
/// gradient, then per-edge groups.
fn vertex_value(v: usize) -> usize {
    3 * v
}

fn vertex_grad(v: usize, i: usize) -> usize {
    3 * v + 1 + i
}

fn edge_ends(e: usize) -> (usize, usize) {
    let mut o = (0..3).filter(|&v| v != e);
    (o.next().expect("two ends"), o.next().expect("two ends"))
}

fn vertex_blocks(v: &mut DMatrix<f64>, geom: &CellGeometry) {
    let jit = geom.j_inv_t();
    for vert in 0..3 {
        v[(vertex_value(vert), vertex_value(vert))] = 1.0;
        for a in 0..2 {
            for b in 0..2 {
                v[(vertex_grad(vert, a), vertex_grad(vert, b))] = jit[(a, b)];
            }
        }
    }
}

/// Block-diagonal `M` for value and Cartesian gradient nodes at the vertices.
pub fn hermite_transform(geom: &CellGeometry, el: &CiarletElement) -> Result<DMatrix<f64>> {
    let labels: Vec<NodeLabel> = el.dual().nodes().iter().map(|n| n.label).collect();
    let vertex_only = labels.len() == 9
        && el.dual().nodes().iter().all(|n| n.entity.0 == 0)
        && labels
            .iter()
            .all(|l| matches!(l, NodeLabel::PointEval | NodeLabel::GradientComponent));
    if !vertex_only {
        return Err(Error::Incompatible(format!("{} has non-vertex nodes", el.name())));
    }
    let mut v = DMatrix::zeros(9, 9);
    vertex_blocks(&mut v, geom);
    Ok(v.transpose())
}

/// Extra couplings of one edge's normal node through its tangential completion.
///
/// `tangential` lists `(physical node column, coefficient)` pairs expressing the
/// raw tangential moment in physical nodes.
fn edge_rows(v: &mut DMatrix<f64>, geom: &CellGeometry, e: usize, row: usize, tangential: &[(usize, f64)]) {
    let b = geom.edge_block(e);
    v[(row, row)] += b[(0, 0)];
    for &(col, c) in tangential {
        v[(row, col)] += b[(0, 1)] * c;
    }
}

/// `M = (E Vᶜ D)ᵀ` for the cubic HCT element and the PS12 element.
///
/// The tangential completion of edge `e = (a, b)` is `δ_b − δ_a`.
pub fn hct_transform(geom: &CellGeometry) -> Result<DMatrix<f64>> {
    let mut v = DMatrix::zeros(12, 12);
    vertex_blocks(&mut v, geom);
    for e in 0..3 {
        let (a, b) = edge_ends(e);
        edge_rows(&mut v, geom, e, 9 + e, &[(vertex_value(b), 1.0), (vertex_value(a), -1.0)]);
    }
    Ok(v.transpose())
}

/// `M` of the extended reduced-HCT element, `9 × 12` after extraction.
///
/// The extended nodes are the vertex nodes and the averaged normal moments
/// against `P_2`. On a cubic trace the raw tangential moment against `P_2` is
/// `|e|/10 (∂_t f(a) + ∂_t f(b)) − (f(b) − f(a))/5`.
pub fn reduced_hct_transform(geom: &CellGeometry) -> Result<DMatrix<f64>> {
    let mut v = DMatrix::zeros(12, 12);
    vertex_blocks(&mut v, geom);
    for e in 0..3 {
        let (a, b) = edge_ends(e);
        let t = geom.frame(e).row(1).transpose();
        let h = geom.edge_length(e) / 10.0;
        let tangential = [
            (vertex_value(b), -0.2),
            (vertex_value(a), 0.2),
            (vertex_grad(a, 0), h * t[0]),
            (vertex_grad(a, 1), h * t[1]),
            (vertex_grad(b, 0), h * t[0]),
            (vertex_grad(b, 1), h * t[1]),
        ];
        edge_rows(&mut v, geom, e, 9 + e, &tangential);
    }
    Ok(v.transpose().rows(0, 9).into_owned())
}

/// `M` for HCT of degree `k ≥ 4`.
///
/// Per edge the nodes are normal averages against `P_i^{(1,1)}`, `i = 0..=k−3`,
/// then raw trace moments against `d/ds P_i^{(1,1)}`, `i = 1..=k−3`. The
/// tangential completion is `−μ_i + P_i(1) δ_b − P_i(−1) δ_a`; trace moments
/// are invariant and interior moments scale by `|det J|`.
pub fn highorder_hct_transform(geom: &CellGeometry, k: usize) -> Result<DMatrix<f64>> {
    if k < 4 {
        return Err(Error::InvalidArgument(format!("high-order HCT needs degree >= 4, got {k}")));
    }
    let per_edge = 2 * (k - 3) + 1;
    let n_int = (k - 3) * (k - 2) / 2;
    let n = 9 + 3 * per_edge + n_int;
    let mut v = DMatrix::zeros(n, n);
    vertex_blocks(&mut v, geom);
    for e in 0..3 {
        let (a, b) = edge_ends(e);
        let base = 9 + e * per_edge;
        for i in 0..=k - 3 {
            let row = base + i;
            let p1 = jacobi(i, 1.0, 1.0, 1.0);
            let pm1 = jacobi(i, 1.0, 1.0, -1.0);
            let mut tangential = vec![(vertex_value(b), p1), (vertex_value(a), -pm1)];
            if i >= 1 {
                tangential.push((base + (k - 3) + i, -1.0));
            }
            edge_rows(&mut v, geom, e, row, &tangential);
        }
        for i in 1..=k - 3 {
            let row = base + (k - 3) + i;
            v[(row, row)] = 1.0;
        }
    }
    for i in 0..n_int {
        let row = 9 + 3 * per_edge + i;
        v[(row, row)] = geom.det_j().abs();
    }
    Ok(v.transpose())
}

/// Double contravariant Piola on (xx, xy, yy): `τ = det(J)² J⁻¹ τ̂ J⁻ᵀ`.
pub fn piola_value_matrix(geom: &CellGeometry) -> Matrix2Sym {
    let a = geom.j.try_inverse().expect("non-degenerate");
    let s = geom.det_j * geom.det_j;
    let mut p = [[0.0; 3]; 3];
    // Column c: image of the unit symmetric tensor for component c.
    let units = [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 1.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 1.0]]];
    for (c, u) in units.iter().enumerate() {
        let t = Matrix2::new(u[0][0], u[0][1], u[1][0], u[1][1]);
        let img = a * t * a.transpose() * s;
        p[0][c] = img[(0, 0)];
        p[1][c] = img[(0, 1)];
        p[2][c] = img[(1, 1)];
    }
    Matrix2Sym(p)
}

/// Linear map on the three independent components of a symmetric 2×2 tensor.
#[derive(Clone, Copy, Debug)]
pub struct Matrix2Sym(pub [[f64; 3]; 3]);

#[derive(Clone, Copy, Debug)]
enum Pullback {
    Scalar,
    Vector,
    Piola(Matrix2Sym),
}

/// Reference basis composed with `F`, at physical points, with physical
/// derivatives up to order 2.
fn pullback_tabulate(
    geom: &CellGeometry,
    ref_el: &CiarletElement,
    pullback: Pullback,
    points: &[Vec<f64>],
    cells: &[Option<usize>],
    max_deriv: usize,
) -> Result<TabulatedValues> {
    if max_deriv > 2 {
        return Err(Error::InvalidArgument("derivatives above order 2 are not mapped".into()));
    }
    let xhat: Vec<Vec<f64>> = points.iter().map(|x| geom.to_reference(x)).collect();
    let rt = ref_el.tabulate_in(&xhat, Some(cells), max_deriv)?;
    let nb = rt.nbasis();
    let nc = rt.ncomp();
    let mut out = TabulatedValues::zeros(2, max_deriv, nb, points.to_vec(), nc);
    let j = geom.j;
    let derivs: Vec<Vec<usize>> = out.derivs().to_vec();
    for (k, alpha) in derivs.iter().enumerate() {
        let dirs: Vec<usize> = (0..2).flat_map(|i| std::iter::repeat_n(i, alpha[i])).collect();
        // ∂^α (f̂∘F) = Σ over reference multi-indices of the J-products.
        let mut terms: Vec<(usize, f64)> = Vec::new();
        match dirs.len() {
            0 => terms.push((0, 1.0)),
            1 => {
                for a in 0..2 {
                    let mut beta = vec![0; 2];
                    beta[a] = 1;
                    terms.push((rt.deriv_index(&beta).expect("order 1"), j[(a, dirs[0])]));
                }
            }
            _ => {
                for a in 0..2 {
                    for b in 0..2 {
                        let mut beta = vec![0; 2];
                        beta[a] += 1;
                        beta[b] += 1;
                        terms.push((rt.deriv_index(&beta).expect("order 2"), j[(a, dirs[0])] * j[(b, dirs[1])]));
                    }
                }
            }
        }
        for m in 0..nb {
            for p in 0..points.len() {
                let mut vals = vec![0.0; nc];
                for &(kr, w) in &terms {
                    for (c, val) in vals.iter_mut().enumerate() {
                        *val += w * rt.get(kr, m, p, c);
                    }
                }
                match pullback {
                    Pullback::Scalar | Pullback::Vector => {
                        for (c, val) in vals.iter().enumerate() {
                            out.set(k, m, p, c, *val);
                        }
                    }
                    Pullback::Piola(Matrix2Sym(pm)) => {
                        for (r, row) in pm.iter().enumerate() {
                            out.set(k, m, p, r, (0..3).map(|c| row[c] * vals[c]).sum());
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn pullback_of(kind: MappingKind, geom: &CellGeometry) -> Pullback {
    match kind {
        MappingKind::PiolaDouble => Pullback::Piola(piola_value_matrix(geom)),
        MappingKind::OracleRebuild => Pullback::Vector,
        _ => Pullback::Scalar,
    }
}

/// `M = W^{-T}` with `W_ij = n_i(F*φ̂_j)` for physical nodes `n_i`.
pub fn numerical_transform(geom: &CellGeometry, el: &CiarletElement) -> Result<DMatrix<f64>> {
    let (_, nodes) = el.spec().dual_on(geom.vertices())?;
    let w = physical_node_matrix(geom, el, &nodes)?;
    let inv = w.clone().try_inverse().ok_or_else(|| Error::SingularSystem(format!("{} push-forward matrix", el.name())))?;
    Ok(inv.transpose())
}

fn physical_node_matrix(geom: &CellGeometry, el: &CiarletElement, nodes: &[Functional]) -> Result<DMatrix<f64>> {
    let pullback = pullback_of(el.mapping_kind(), geom);
    evaluate_with(nodes, |pts, hints, order| pullback_tabulate(geom, el, pullback, pts, hints, order))
}

/// Double-Piola plan for Johnson–Mercier, computed from physical node push-forwards.
pub fn piola_double_transform(geom: &CellGeometry, el: &CiarletElement) -> Result<DMatrix<f64>> {
    if el.mapping_kind() != MappingKind::PiolaDouble {
        return Err(Error::Incompatible(format!("{} is not Piola-mapped", el.name())));
    }
    numerical_transform(geom, el)
}

/// The element built directly on the physical cell.
pub fn oracle_rebuild(spec: ElementSpec, vertices: &[Vec<f64>]) -> Result<CiarletElement> {
    spec.build_on(vertices)
}

/// A reference element together with the rule producing `M` per cell.
#[derive(Clone, Debug)]
pub struct TransformPlan {
    element: CiarletElement,
}

impl TransformPlan {
    pub fn new(element: CiarletElement) -> Self {
        Self { element }
    }

    pub fn element(&self) -> &CiarletElement {
        &self.element
    }

    pub fn kind(&self) -> MappingKind {
        self.element.mapping_kind()
    }

    /// The basis `M` multiplies: the extended basis for constrained elements.
    pub fn reference_basis(&self) -> &CiarletElement {
        self.element.extended().unwrap_or(&self.element)
    }

    /// `M` for one cell; `None` when the element is rebuilt per cell instead.
    pub fn matrix(&self, geom: &CellGeometry) -> Result<Option<DMatrix<f64>>> {
        let el = &self.element;
        let m = match el.spec() {
            _ if el.mapping_kind() == MappingKind::OracleRebuild => return Ok(None),
            ElementSpec::Lagrange { .. } => DMatrix::identity(el.dim(), el.dim()),
            ElementSpec::PowellSabin(crate::complex::PowellSabin::Ps6) => hermite_transform(geom, el)?,
            ElementSpec::PowellSabin(crate::complex::PowellSabin::Ps12) => hct_transform(geom)?,
            ElementSpec::Hct { reduced: true, .. } => reduced_hct_transform(geom)?,
            ElementSpec::Hct { degree: 3, .. } => hct_transform(geom)?,
            ElementSpec::Hct { degree, .. } => highorder_hct_transform(geom, degree)?,
            ElementSpec::JohnsonMercier => piola_double_transform(geom, el)?,
            ElementSpec::AlfeldSorokina => unreachable!("rebuilt per cell"),
        };
        Ok(Some(m))
    }

    /// Physical basis values at physical points. Points on internal facets of
    /// the physical split use the smallest-id incident subcell unless `cells`
    /// says otherwise.
    pub fn tabulate(&self, geom: &CellGeometry, points: &[Vec<f64>], cells: Option<&[Option<usize>]>, max_deriv: usize) -> Result<TabulatedValues> {
        match self.matrix(geom)? {
            None => {
                let el = oracle_rebuild(self.element.spec(), geom.vertices())?;
                el.tabulate_in(points, cells, max_deriv)
            }
            Some(m) => {
                let hints: Vec<Option<usize>> = match cells {
                    Some(c) => c.to_vec(),
                    None => physical_hints(geom, &self.element, points)?,
                };
                let pullback = pullback_of(self.kind(), geom);
                let t = pullback_tabulate(geom, self.reference_basis(), pullback, points, &hints, max_deriv)?;
                Ok(t.transform_basis(&m))
            }
        }
    }
}

/// Subcell ids located in the physical split, which matches the reference
/// split cell-for-cell.
fn physical_hints(geom: &CellGeometry, el: &CiarletElement, points: &[Vec<f64>]) -> Result<Vec<Option<usize>>> {
    let phys = el.spec().split_kind().apply(&SimplicialComplex::simplex(geom.vertices().to_vec())?)?;
    points
        .iter()
        .map(|x| phys.child().locate(x).map(Some).ok_or_else(|| Error::PointOutside(x.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::PowellSabin;

    fn tri(h: f64) -> Vec<Vec<f64>> {
        vec![vec![0.0, 0.0], vec![h, 0.0], vec![0.0, h]]
    }

    fn skew() -> Vec<Vec<f64>> {
        vec![vec![0.2, -0.3], vec![1.4, 0.1], vec![0.5, 0.9]]
    }

    #[test]
    fn geometry_examples() {
        let g = geometry(&tri(1.0)).unwrap();
        assert_eq!(*g.j(), Matrix2::identity());
        assert_eq!(g.det_j(), 1.0);
        let l = g.edge_lengths();
        assert!((l[0] - 2f64.sqrt()).abs() < 1e-15 && l[1] == 1.0 && l[2] == 1.0);
        let g = geometry(&tri(4.0)).unwrap();
        assert!((g.j() - Matrix2::identity() * 0.25).amax() < 1e-15);
        for e in 0..3 {
            let f = g.frame(e);
            assert!((f * f.transpose() - Matrix2::identity()).amax() < 1e-13);
        }
        assert!(matches!(
            geometry(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]),
            Err(Error::DegenerateCell(_))
        ));
    }

    #[test]
    fn identity_geometry_gives_identity() {
        let g = geometry(&tri(1.0)).unwrap();
        assert!((hct_transform(&g).unwrap() - DMatrix::identity(12, 12)).amax() < 1e-12);
        let r = reduced_hct_transform(&g).unwrap();
        assert!((r - DMatrix::identity(12, 12).rows(0, 9)).amax() < 1e-12);
        assert!((highorder_hct_transform(&g, 4).unwrap() - DMatrix::identity(19, 19)).amax() < 1e-12);
        let ps6 = ElementSpec::PowellSabin(PowellSabin::Ps6).build().unwrap();
        assert!((hermite_transform(&g, &ps6).unwrap() - DMatrix::identity(9, 9)).amax() < 1e-12);
        let jm = ElementSpec::JohnsonMercier.build().unwrap();
        assert!((piola_double_transform(&g, &jm).unwrap() - DMatrix::identity(15, 15)).amax() < 1e-12);
    }

    #[test]
    fn hermite_gradient_blocks_scale_with_h() {
        let g = geometry(&tri(3.0)).unwrap();
        let ps6 = ElementSpec::PowellSabin(PowellSabin::Ps6).build().unwrap();
        let m = hermite_transform(&g, &ps6).unwrap();
        assert!((m[(1, 1)] - 3.0).abs() < 1e-14 && (m[(0, 0)] - 1.0).abs() < 1e-15);
        let hct = ElementSpec::Hct { degree: 3, reduced: false }.build().unwrap();
        assert!(matches!(hermite_transform(&g, &hct), Err(Error::Incompatible(_))));
    }

    #[test]
    fn point_eval_columns_of_v_are_sparse() {
        let g = geometry(&skew()).unwrap();
        let v = hct_transform(&g).unwrap().transpose();
        for vert in 0..3 {
            // Each vertex value feeds its own row and the normal rows of its two edges.
            let nnz = (0..12).filter(|&r| v[(r, 3 * vert)].abs() > 0.0).count();
            assert!(nnz <= 3);
            assert_eq!(v[(3 * vert, 3 * vert)], 1.0);
        }
        for r in 0..9 {
            assert!((0..12).filter(|&c| v[(r, c)] != 0.0).count() <= 2);
        }
        for r in 9..12 {
            assert!((0..12).filter(|&c| v[(r, c)] != 0.0).count() <= 5);
        }
    }

    #[test]
    fn tangential_completion_for_i0_is_fundamental_theorem() {
        // With i = 0 the coefficients are P_0(1) = 1 and P_0(-1) = 1.
        assert_eq!(jacobi(0, 1.0, 1.0, 1.0), 1.0);
        assert_eq!(jacobi(0, 1.0, 1.0, -1.0), 1.0);
        let g = geometry(&skew()).unwrap();
        let a = highorder_hct_transform(&g, 4).unwrap().transpose();
        let b = hct_transform(&g).unwrap().transpose();
        // The i = 0 normal row of edge 0 couples to vertex values exactly as in the cubic plan.
        for v in 0..3 {
            assert!((a[(9, 3 * v)] - b[(9, 3 * v)]).abs() < 1e-14);
        }
    }

    fn compare_with_oracle(spec: ElementSpec, verts: &[Vec<f64>]) {
        let plan = TransformPlan::new(spec.build().unwrap());
        let g = geometry(verts).unwrap();
        let oracle = oracle_rebuild(spec, verts).unwrap();
        let pts: Vec<Vec<f64>> = [(0.2, 0.3), (0.6, 0.1), (0.1, 0.7), (0.33, 0.33)]
            .iter()
            .map(|&(a, b)| g.to_physical(&[a, b]))
            .collect();
        let fast = plan.tabulate(&g, &pts, None, 1).unwrap();
        let slow = oracle.tabulate(&pts, 1).unwrap();
        for k in 0..3 {
            for j in 0..oracle.dim() {
                for p in 0..pts.len() {
                    for c in 0..fast.ncomp() {
                        let d = (fast.get(k, j, p, c) - slow.get(k, j, p, c)).abs();
                        assert!(d < if k == 0 { 1e-8 } else { 1e-6 }, "{} k={k} j={j}: {d}", spec.name());
                    }
                }
            }
        }
    }

    #[test]
    fn fast_paths_match_oracle() {
        for spec in [
            ElementSpec::PowellSabin(PowellSabin::Ps6),
            ElementSpec::PowellSabin(PowellSabin::Ps12),
            ElementSpec::Hct { degree: 3, reduced: false },
            ElementSpec::Hct { degree: 3, reduced: true },
            ElementSpec::Hct { degree: 4, reduced: false },
            ElementSpec::JohnsonMercier,
        ] {
            compare_with_oracle(spec, &skew());
            let s = skew();
            compare_with_oracle(spec, &[s[0].clone(), s[2].clone(), s[1].clone()]);
        }
    }

    #[test]
    fn oracle_on_reference_is_catalogue() {
        let spec = ElementSpec::Hct { degree: 3, reduced: false };
        let a = spec.build().unwrap();
        let b = oracle_rebuild(spec, &tri(1.0)).unwrap();
        assert!((a.coeffs() - b.coeffs()).amax() < 1e-10);
    }

    #[test]
    fn gradient_basis_scales_with_h() {
        // On a 2x cell the vertex-gradient functions are twice as large
        // relative to the value functions.
        let spec = ElementSpec::Hct { degree: 3, reduced: false };
        let sup = |h: f64, j: usize| {
            let el = oracle_rebuild(spec, &tri(h)).unwrap();
            let pts: Vec<Vec<f64>> = (0..40)
                .flat_map(|a| (0..40 - a).map(move |b| vec![a as f64 * h / 40.0, b as f64 * h / 40.0]))
                .collect();
            let t = el.tabulate(&pts, 0).unwrap();
            (0..pts.len()).map(|p| t.get(0, j, p, 0).abs()).fold(0.0, f64::max)
        };
        let r1 = sup(1.0, 1) / sup(1.0, 0);
        let r2 = sup(2.0, 1) / sup(2.0, 0);
        assert!((r2 / r1 - 2.0).abs() < 1e-8);
    }
}
