//! Reference simplices, their splits, and facet geometry.
//!
//! Entities of dimension ≥ 1 are numbered by descending lexicographic order of
//! their sorted vertex tuples. On a single simplex this numbers facet `i`
//! opposite vertex `i`, and every cell lists its sub-entities in that same
//! order, so local edge `i` of a triangle is always the one opposite local
//! vertex `i`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::{Error, Result};

/// `(dimension, id)` of an entity.
pub type EntityId = (usize, usize);

/// Absolute tolerance for barycentric containment tests.
pub const CONTAINMENT_TOL: f64 = 1e-12;

/// Affine map between the unit reference simplex and one cell.
#[derive(Clone, Debug)]
pub struct CellMap {
    origin: Vec<f64>,
    /// Columns are `v_i - v_0`; maps reference coordinates to physical offsets.
    forward: DMatrix<f64>,
    inverse: DMatrix<f64>,
    det: f64,
}

impl CellMap {
    pub fn new(vertices: &[Vec<f64>]) -> Result<Self> {
        let d = vertices.len() - 1;
        let origin = vertices[0].clone();
        let mut forward = DMatrix::zeros(d, d);
        for j in 0..d {
            for i in 0..d {
                forward[(i, j)] = vertices[j + 1][i] - origin[i];
            }
        }
        let det = forward.determinant();
        let scale = (0..d)
            .map(|j| forward.column(j).norm())
            .fold(0.0_f64, f64::max);
        if det.abs() <= 1e-14 * scale.powi(d as i32) || !det.is_finite() {
            return Err(Error::DegenerateCell(det.abs()));
        }
        let inverse = forward
            .clone()
            .try_inverse()
            .ok_or(Error::DegenerateCell(det.abs()))?;
        Ok(Self {
            origin,
            forward,
            inverse,
            det,
        })
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    /// Reference coordinates of a physical point.
    pub fn to_reference(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.inverse[(i, j)] * (x[j] - self.origin[j])).sum())
            .collect()
    }

    pub fn to_physical(&self, xhat: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| self.origin[i] + (0..d).map(|j| self.forward[(i, j)] * xhat[j]).sum::<f64>())
            .collect()
    }

    /// Barycentric coordinates `(λ_0, …, λ_d)` of a physical point.
    pub fn barycentric(&self, x: &[f64]) -> Vec<f64> {
        let xhat = self.to_reference(x);
        let mut lam = Vec::with_capacity(xhat.len() + 1);
        lam.push(1.0 - xhat.iter().sum::<f64>());
        lam.extend(xhat);
        lam
    }

    /// Jacobian of the physical→reference map.
    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    /// Jacobian of the reference→physical map.
    pub fn forward(&self) -> &DMatrix<f64> {
        &self.forward
    }

    /// Signed determinant of the reference→physical Jacobian.
    pub fn det(&self) -> f64 {
        self.det
    }
}

/// Orthonormal frame of a codimension-1 entity.
#[derive(Clone, Debug, Serialize)]
pub struct FacetFrame {
    pub entity: EntityId,
    pub normal: Vec<f64>,
    pub tangents: Vec<Vec<f64>>,
    pub measure: f64,
}

/// JSON layout used by `dump-complex`.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexDump {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub topology: BTreeMap<String, BTreeMap<String, Vec<usize>>>,
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    topology: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
    /// `[d][id][d']` → ids of the `d'`-dimensional sub-entities, `d' ≤ d`.
    connectivity: Vec<Vec<Vec<Vec<usize>>>>,
    /// Cells incident to each codimension-1 entity, ascending.
    cofacets: Vec<Vec<usize>>,
    maps: Vec<CellMap>,
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Sort descending lexicographically.
fn sort_entities(list: &mut [Vec<usize>]) {
    list.sort_by(|a, b| b.cmp(a));
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Measure of the simplex spanned by `points` (any codimension).
pub fn simplex_measure(points: &[&[f64]]) -> f64 {
    let m = points.len() - 1;
    if m == 0 {
        return 1.0;
    }
    let d = points[0].len();
    let edges: Vec<Vec<f64>> = (1..=m)
        .map(|i| (0..d).map(|k| points[i][k] - points[0][k]).collect())
        .collect();
    if m == d {
        // the Gram determinant squares the conditioning; use the edge matrix directly
        return DMatrix::from_fn(m, m, |i, j| edges[i][j]).determinant().abs() / factorial(m);
    }
    if m == 1 {
        return edges[0].iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    let gram = DMatrix::from_fn(m, m, |i, j| (0..d).map(|k| edges[i][k] * edges[j][k]).sum::<f64>());
    gram.determinant().max(0.0).sqrt() / factorial(m)
}

fn centroid(points: &[&[f64]]) -> Vec<f64> {
    let d = points[0].len();
    let n = points.len() as f64;
    (0..d).map(|k| points.iter().map(|p| p[k]).sum::<f64>() / n).collect()
}

impl SimplicialComplex {
    /// Build a complex from vertex coordinates and top-dimensional cells.
    pub fn from_cells(vertices: Vec<Vec<f64>>, cells: Vec<Vec<usize>>) -> Result<Self> {
        let dim = vertices
            .first()
            .map(|v| v.len())
            .ok_or_else(|| Error::InvalidArgument("complex without vertices".into()))?;
        if !(1..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidArgument("mixed vertex dimensions".into()));
        }
        let nv = vertices.len();
        let mut per_dim: Vec<std::collections::BTreeSet<Vec<usize>>> =
            vec![Default::default(); dim + 1];
        for c in &cells {
            if c.len() != dim + 1 || c.iter().any(|&v| v >= nv) {
                return Err(Error::InvalidArgument(format!("bad cell {c:?}")));
            }
            let mut s = c.clone();
            s.sort_unstable();
            for d in 1..=dim {
                for sub in subsets(&s, d + 1) {
                    per_dim[d].insert(sub);
                }
            }
        }
        let mut topology: Vec<Vec<Vec<usize>>> = Vec::with_capacity(dim + 1);
        topology.push((0..nv).map(|v| vec![v]).collect());
        for set in per_dim.iter().skip(1) {
            let mut list: Vec<Vec<usize>> = set.iter().cloned().collect();
            sort_entities(&mut list);
            topology.push(list);
        }
        let lookup: Vec<HashMap<Vec<usize>, usize>> = topology
            .iter()
            .map(|ents| ents.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect())
            .collect();
        let mut connectivity = Vec::with_capacity(dim + 1);
        for d in 0..=dim {
            let mut per_entity = Vec::with_capacity(topology[d].len());
            for ent in &topology[d] {
                let mut per_sub = Vec::with_capacity(d + 1);
                for dd in 0..=d {
                    let mut subs = subsets(ent, dd + 1);
                    sort_entities(&mut subs);
                    per_sub.push(subs.iter().map(|s| lookup[dd][s]).collect::<Vec<_>>());
                }
                per_entity.push(per_sub);
            }
            connectivity.push(per_entity);
        }
        let mut cofacets = vec![Vec::new(); topology[dim - 1].len()];
        for (c, per_sub) in connectivity[dim].iter().enumerate() {
            for &f in &per_sub[dim - 1] {
                cofacets[f].push(c);
            }
        }
        let maps = topology[dim]
            .iter()
            .map(|cell| {
                let vs: Vec<Vec<f64>> = cell.iter().map(|&v| vertices[v].clone()).collect();
                CellMap::new(&vs)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim,
            vertices,
            topology,
            lookup,
            connectivity,
            cofacets,
            maps,
        })
    }

    /// A single simplex with the given vertices.
    pub fn simplex(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let n = vertices.len();
        Self::from_cells(vertices, vec![(0..n).collect()])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &[f64] {
        &self.vertices[v]
    }

    pub fn num_entities(&self, d: usize) -> usize {
        self.topology.get(d).map_or(0, |t| t.len())
    }

    pub fn num_cells(&self) -> usize {
        self.num_entities(self.dim)
    }

    pub fn topology(&self, d: usize) -> &[Vec<usize>] {
        &self.topology[d]
    }

    pub fn entity_vertices(&self, (d, id): EntityId) -> Result<&[usize]> {
        self.topology
            .get(d)
            .and_then(|t| t.get(id))
            .map(|v| v.as_slice())
            .ok_or(Error::InvalidEntity { dim: d, id })
    }

    pub fn entity_points(&self, e: EntityId) -> Result<Vec<&[f64]>> {
        Ok(self
            .entity_vertices(e)?
            .iter()
            .map(|&v| self.vertices[v].as_slice())
            .collect())
    }

    /// Id of the entity with the given (unsorted) vertex set.
    pub fn find_entity(&self, verts: &[usize]) -> Option<EntityId> {
        let mut key = verts.to_vec();
        key.sort_unstable();
        let d = key.len().checked_sub(1)?;
        self.lookup.get(d)?.get(&key).map(|&id| (d, id))
    }

    /// Ids of the `sub_dim`-dimensional sub-entities of `e`.
    pub fn sub_entities(&self, (d, id): EntityId, sub_dim: usize) -> &[usize] {
        &self.connectivity[d][id][sub_dim]
    }

    /// Cells incident to a codimension-1 entity, in ascending id order.
    pub fn facet_cells(&self, facet: usize) -> &[usize] {
        &self.cofacets[facet]
    }

    pub fn is_interior_facet(&self, facet: usize) -> bool {
        self.cofacets.get(facet).is_some_and(|c| c.len() == 2)
    }

    pub fn cell_map(&self, cell: usize) -> &CellMap {
        &self.maps[cell]
    }

    pub fn measure(&self, e: EntityId) -> Result<f64> {
        Ok(simplex_measure(&self.entity_points(e)?))
    }

    pub fn total_volume(&self) -> f64 {
        (0..self.num_cells()).map(|c| self.maps[c].det().abs() / factorial(self.dim)).sum()
    }

    pub fn entity_centroid(&self, e: EntityId) -> Result<Vec<f64>> {
        Ok(centroid(&self.entity_points(e)?))
    }

    /// True when the point lies in the closure of `cell`.
    pub fn cell_contains(&self, cell: usize, x: &[f64]) -> bool {
        self.maps[cell]
            .barycentric(x)
            .iter()
            .all(|&l| l >= -CONTAINMENT_TOL)
    }

    /// Smallest-id cell whose closure contains `x`.
    pub fn locate(&self, x: &[f64]) -> Option<usize> {
        (0..self.num_cells()).find(|&c| self.cell_contains(c, x))
    }

    /// Cells whose closure contains `x`, ascending.
    pub fn cells_containing(&self, x: &[f64]) -> Vec<usize> {
        (0..self.num_cells()).filter(|&c| self.cell_contains(c, x)).collect()
    }

    /// Frame of every codimension-1 entity, in id order.
    pub fn facet_frames(&self) -> Vec<FacetFrame> {
        (0..self.num_entities(self.dim - 1))
            .map(|f| self.facet_frame(f))
            .collect()
    }

    /// Frame of one codimension-1 entity.
    ///
    /// Tangents follow increasing vertex id. The normal is the tangent rotated
    /// by −90° in 2D (the cross product of the tangents in 3D) and is flipped
    /// outward on boundary facets.
    pub fn facet_frame(&self, facet: usize) -> FacetFrame {
        let d = self.dim;
        let verts = &self.topology[d - 1][facet];
        let pts: Vec<&[f64]> = verts.iter().map(|&v| self.vertices[v].as_slice()).collect();
        let measure = simplex_measure(&pts);
        let mut tangents: Vec<Vec<f64>> = Vec::new();
        for p in pts.iter().skip(1) {
            let mut t: Vec<f64> = (0..d).map(|k| p[k] - pts[0][k]).collect();
            for q in &tangents {
                let dot: f64 = (0..d).map(|k| t[k] * q[k]).sum();
                for k in 0..d {
                    t[k] -= dot * q[k];
                }
            }
            let n = t.iter().map(|a| a * a).sum::<f64>().sqrt();
            tangents.push(t.iter().map(|a| a / n).collect());
        }
        let mut normal = match d {
            1 => vec![1.0],
            2 => vec![tangents[0][1], -tangents[0][0]],
            _ => {
                let (a, b) = (&tangents[0], &tangents[1]);
                vec![
                    a[1] * b[2] - a[2] * b[1],
                    a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0],
                ]
            }
        };
        if !self.is_interior_facet(facet) {
            let cell = self.cofacets[facet][0];
            let cpts: Vec<&[f64]> = self.topology[d][cell]
                .iter()
                .map(|&v| self.vertices[v].as_slice())
                .collect();
            let cc = centroid(&cpts);
            let fc = centroid(&pts);
            let out: f64 = (0..d).map(|k| (fc[k] - cc[k]) * normal[k]).sum();
            if out < 0.0 {
                normal.iter_mut().for_each(|a| *a = -*a);
            }
        }
        FacetFrame {
            entity: (d - 1, facet),
            normal,
            tangents,
            measure,
        }
    }

    pub fn dump(&self) -> ComplexDump {
        let topology = self
            .topology
            .iter()
            .enumerate()
            .map(|(d, ents)| {
                let m = ents
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (i.to_string(), e.clone()))
                    .collect();
                (d.to_string(), m)
            })
            .collect();
        ComplexDump {
            dim: self.dim,
            vertices: self.vertices.clone(),
            topology,
        }
    }
}

/// The unit simplex with vertices at the origin and the unit points.
pub fn reference_simplex(d: usize) -> Result<SimplicialComplex> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let mut verts = vec![vec![0.0; d]];
    for i in 0..d {
        let mut v = vec![0.0; d];
        v[i] = 1.0;
        verts.push(v);
    }
    SimplicialComplex::simplex(verts)
}

/// True when every cell of `fine` lies in the closure of some cell of `coarse`.
pub fn is_refinement_of(fine: &SimplicialComplex, coarse: &SimplicialComplex) -> bool {
    if fine.dim() != coarse.dim() {
        return false;
    }
    (0..fine.num_cells()).all(|c| {
        let e = (fine.dim(), c);
        let Ok(cen) = fine.entity_centroid(e) else {
            return false;
        };
        let Some(host) = coarse.locate(&cen) else {
            return false;
        };
        fine.entity_points(e)
            .map(|pts| pts.iter().all(|p| coarse.cell_contains(host, p)))
            .unwrap_or(false)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SplitKind {
    None,
    Alfeld,
    Iso(usize),
    PowellSabin6,
    PowellSabin12,
}

impl SplitKind {
    pub fn apply(self, k: &SimplicialComplex) -> Result<SplitSimplicialComplex> {
        match self {
            SplitKind::None => SplitSimplicialComplex::trivial(k),
            SplitKind::Alfeld => alfeld_split(k),
            SplitKind::Iso(l) => iso_split(k, l),
            SplitKind::PowellSabin6 => powell_sabin_split(k, PowellSabin::Ps6),
            SplitKind::PowellSabin12 => powell_sabin_split(k, PowellSabin::Ps12),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowellSabin {
    Ps6,
    Ps12,
}

/// A parent simplex together with a subdivision of it.
#[derive(Clone, Debug)]
pub struct SplitSimplicialComplex {
    kind: SplitKind,
    parent: SimplicialComplex,
    child: SimplicialComplex,
    /// `[d][id]` → parent entity whose relative interior holds the child entity.
    parent_entity_of: Vec<Vec<EntityId>>,
}

impl SplitSimplicialComplex {
    fn new(kind: SplitKind, parent: SimplicialComplex, child: SimplicialComplex) -> Result<Self> {
        let pmap = parent.cell_map(0).clone();
        let mut parent_entity_of = Vec::with_capacity(child.dim() + 1);
        for d in 0..=child.dim() {
            let mut row = Vec::with_capacity(child.num_entities(d));
            for id in 0..child.num_entities(d) {
                let c = child.entity_centroid((d, id))?;
                let lam = pmap.barycentric(&c);
                if lam.iter().any(|&l| l < -CONTAINMENT_TOL) {
                    return Err(Error::InvalidSplit(format!(
                        "child entity ({d}, {id}) leaves the parent"
                    )));
                }
                let support: Vec<usize> = lam
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| l > CONTAINMENT_TOL)
                    .map(|(i, _)| i)
                    .collect();
                let pe = parent.find_entity(&support).ok_or_else(|| {
                    Error::InvalidSplit(format!("no parent entity for support {support:?}"))
                })?;
                row.push(pe);
            }
            parent_entity_of.push(row);
        }
        Ok(Self {
            kind,
            parent,
            child,
            parent_entity_of,
        })
    }

    /// The unsplit simplex viewed as a split with one subcell.
    pub fn trivial(k: &SimplicialComplex) -> Result<Self> {
        require_single_simplex(k)?;
        Self::new(SplitKind::None, k.clone(), k.clone())
    }

    /// Pair an arbitrary subdivision with the simplex it tiles.
    pub(crate) fn from_parts(parent: SimplicialComplex, child: SimplicialComplex) -> Result<Self> {
        require_single_simplex(&parent)?;
        Self::new(SplitKind::None, parent, child)
    }

    pub fn kind(&self) -> SplitKind {
        self.kind
    }

    pub fn parent(&self) -> &SimplicialComplex {
        &self.parent
    }

    pub fn child(&self) -> &SimplicialComplex {
        &self.child
    }

    pub fn dim(&self) -> usize {
        self.parent.dim()
    }

    /// Parent entity containing a child entity; `(dim, 0)` for the parent interior.
    pub fn parent_entity_of(&self, (d, id): EntityId) -> EntityId {
        self.parent_entity_of[d][id]
    }

    /// Child entities of dimension `d` lying inside parent entity `pe`.
    pub fn children_in(&self, pe: EntityId, d: usize) -> Vec<usize> {
        (0..self.child.num_entities(d))
            .filter(|&id| self.parent_entity_of[d][id] == pe)
            .collect()
    }
}

fn require_single_simplex(k: &SimplicialComplex) -> Result<()> {
    if k.num_cells() != 1 || k.vertices().len() != k.dim() + 1 {
        return Err(Error::InvalidSplit("input is not a single simplex".into()));
    }
    Ok(())
}

fn affine_combo(k: &SimplicialComplex, weights: &[f64]) -> Vec<f64> {
    let d = k.dim();
    (0..d)
        .map(|i| {
            weights
                .iter()
                .enumerate()
                .map(|(v, w)| w * k.vertex(v)[i])
                .sum()
        })
        .collect()
}

/// Cone every facet to the barycenter.
pub fn alfeld_split(k: &SimplicialComplex) -> Result<SplitSimplicialComplex> {
    require_single_simplex(k)?;
    let d = k.dim();
    let mut verts = k.vertices().to_vec();
    verts.push(affine_combo(k, &vec![1.0 / (d + 1) as f64; d + 1]));
    let b = d + 1;
    let cells = (0..=d)
        .map(|skip| {
            let mut c: Vec<usize> = (0..=d).filter(|&v| v != skip).collect();
            c.push(b);
            c
        })
        .collect();
    let child = SimplicialComplex::from_cells(verts, cells)?;
    SplitSimplicialComplex::new(SplitKind::Alfeld, k.clone(), child)
}

/// Uniform subdivision of a triangle through the degree-`ell` lattice.
pub fn iso_split(k: &SimplicialComplex, ell: usize) -> Result<SplitSimplicialComplex> {
    require_single_simplex(k)?;
    if k.dim() != 2 {
        return Err(Error::UnsupportedDimension(k.dim()));
    }
    if ell < 2 {
        return Err(Error::InvalidArgument(format!("iso split needs ell >= 2, got {ell}")));
    }
    let l = ell as f64;
    // Parent vertices keep ids 0, 1, 2.
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    ids.insert((0, 0), 0);
    ids.insert((ell, 0), 1);
    ids.insert((0, ell), 2);
    let mut verts = k.vertices().to_vec();
    for j in 0..=ell {
        for i in 0..=ell - j {
            if ids.contains_key(&(i, j)) {
                continue;
            }
            let (a, b) = (i as f64 / l, j as f64 / l);
            ids.insert((i, j), verts.len());
            verts.push(affine_combo(k, &[1.0 - a - b, a, b]));
        }
    }
    let mut cells = Vec::new();
    for j in 0..ell {
        for i in 0..ell - j {
            cells.push(vec![ids[&(i, j)], ids[&(i + 1, j)], ids[&(i, j + 1)]]);
            if i + j + 2 <= ell {
                cells.push(vec![ids[&(i + 1, j)], ids[&(i + 1, j + 1)], ids[&(i, j + 1)]]);
            }
        }
    }
    let child = SimplicialComplex::from_cells(verts, cells)?;
    SplitSimplicialComplex::new(SplitKind::Iso(ell), k.clone(), child)
}

/// Powell-Sabin 6- and 12-way splits with the barycenter as split point.
///
/// Vertex ids: parent vertices 0–2, midpoints of parent edges 0–2 (edge `i`
/// opposite vertex `i`) as 3–5, barycenter 6. PS12 adds the midpoints of the
/// medial-triangle edges as 7–9, vertex `7 + i` lying on the median through
/// parent vertex `i`.
pub fn powell_sabin_split(k: &SimplicialComplex, variant: PowellSabin) -> Result<SplitSimplicialComplex> {
    require_single_simplex(k)?;
    if k.dim() != 2 {
        return Err(Error::UnsupportedDimension(k.dim()));
    }
    let mut verts = k.vertices().to_vec();
    verts.push(affine_combo(k, &[0.0, 0.5, 0.5]));
    verts.push(affine_combo(k, &[0.5, 0.0, 0.5]));
    verts.push(affine_combo(k, &[0.5, 0.5, 0.0]));
    let third = 1.0 / 3.0;
    verts.push(affine_combo(k, &[third, third, third]));
    let b = 6;
    let mid = |e: usize| 3 + e;
    // Parent edges through vertex v are the two edges not opposite it.
    let edges_at = |v: usize| -> [usize; 2] {
        let mut e = [0; 2];
        let mut n = 0;
        for i in 0..3 {
            if i != v {
                e[n] = i;
                n += 1;
            }
        }
        e
    };
    let (cells, kind) = match variant {
        PowellSabin::Ps6 => {
            let mut cells = Vec::new();
            for v in 0..3 {
                for e in edges_at(v) {
                    cells.push(vec![v, mid(e), b]);
                }
            }
            (cells, SplitKind::PowellSabin6)
        }
        PowellSabin::Ps12 => {
            for v in 0..3 {
                let w: Vec<f64> = (0..3).map(|i| if i == v { 0.5 } else { 0.25 }).collect();
                verts.push(affine_combo(k, &w));
            }
            let mut cells = Vec::new();
            for v in 0..3 {
                let p = 7 + v;
                let [e1, e2] = edges_at(v);
                cells.push(vec![v, mid(e1), p]);
                cells.push(vec![v, mid(e2), p]);
                cells.push(vec![b, mid(e1), p]);
                cells.push(vec![b, mid(e2), p]);
            }
            (cells, SplitKind::PowellSabin12)
        }
    };
    let child = SimplicialComplex::from_cells(verts, cells)?;
    SplitSimplicialComplex::new(kind, k.clone(), child)
}
