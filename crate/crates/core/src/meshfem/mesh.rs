use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::simplex_measure;
use crate::{Error, Result};

/// Seed for vertex perturbation when none is given.
pub const DEFAULT_SEED: u64 = 2024;

/// Conforming triangle mesh. Cell vertex triples are sorted by global id,
/// so every local edge runs from lower to higher global vertex like the
/// global edge it maps to. Local edge `i` is opposite local vertex `i`.
#[derive(Clone, Debug, Serialize)]
pub struct Mesh {
    vertices: Vec<[f64; 2]>,
    cells: Vec<[usize; 3]>,
    /// Sorted vertex pairs.
    edges: Vec<[usize; 2]>,
    cell_edges: Vec<[usize; 3]>,
    edge_cells: Vec<Vec<usize>>,
    boundary_vertex: Vec<bool>,
    boundary_edge: Vec<bool>,
}

impl Mesh {
    pub fn new(vertices: Vec<[f64; 2]>, cells: Vec<[usize; 3]>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(cells.len());
        for c in cells {
            if c.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidArgument(format!("cell {c:?} references a missing vertex")));
            }
            let mut s = c;
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(Error::InvalidArgument(format!("cell {c:?} repeats a vertex")));
            }
            sorted.push(s);
        }
        let mut edge_ids: HashMap<[usize; 2], usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut edge_cells: Vec<Vec<usize>> = Vec::new();
        let mut cell_edges = Vec::with_capacity(sorted.len());
        for (ci, c) in sorted.iter().enumerate() {
            let mut ce = [0; 3];
            for (i, e) in ce.iter_mut().enumerate() {
                let key = [c[(i + 1) % 3].min(c[(i + 2) % 3]), c[(i + 1) % 3].max(c[(i + 2) % 3])];
                let id = *edge_ids.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edge_cells.push(Vec::new());
                    edges.len() - 1
                });
                edge_cells[id].push(ci);
                *e = id;
            }
            cell_edges.push(ce);
        }
        if let Some(e) = edge_cells.iter().position(|c| c.len() > 2) {
            return Err(Error::InvalidArgument(format!("edge {:?} is shared by more than two cells", edges[e])));
        }
        let boundary_edge: Vec<bool> = edge_cells.iter().map(|c| c.len() == 1).collect();
        let mut boundary_vertex = vec![false; vertices.len()];
        for (e, &b) in edges.iter().zip(&boundary_edge) {
            if b {
                boundary_vertex[e[0]] = true;
                boundary_vertex[e[1]] = true;
            }
        }
        Ok(Self {
            vertices,
            cells: sorted,
            edges,
            cell_edges,
            edge_cells,
            boundary_vertex,
            boundary_edge,
        })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn cells(&self) -> &[[usize; 3]] {
        &self.cells
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Global edge ids of a cell, local edge `i` opposite local vertex `i`.
    pub fn cell_edges(&self, c: usize) -> [usize; 3] {
        self.cell_edges[c]
    }

    pub fn edge_cells(&self, e: usize) -> &[usize] {
        &self.edge_cells[e]
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.boundary_edge[e]
    }

    pub fn cell_vertices(&self, c: usize) -> Vec<Vec<f64>> {
        self.cells[c].iter().map(|&v| self.vertices[v].to_vec()).collect()
    }

    /// Signed area of a cell in its stored vertex order.
    pub fn signed_area(&self, c: usize) -> f64 {
        let [a, b, d] = self.cells[c].map(|v| self.vertices[v]);
        0.5 * ((b[0] - a[0]) * (d[1] - a[1]) - (b[1] - a[1]) * (d[0] - a[0]))
    }

    pub fn area(&self, c: usize) -> f64 {
        let p = self.cell_vertices(c);
        simplex_measure(&[&p[0], &p[1], &p[2]])
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let [a, b] = self.edges[e].map(|v| self.vertices[v]);
        (b[0] - a[0]).hypot(b[1] - a[1])
    }

    /// Unit tangent from lower to higher vertex id.
    pub fn edge_tangent(&self, e: usize) -> [f64; 2] {
        let [a, b] = self.edges[e].map(|v| self.vertices[v]);
        let l = self.edge_length(e);
        [(b[0] - a[0]) / l, (b[1] - a[1]) / l]
    }

    /// Global edge normal `(t_y, −t_x)`.
    pub fn edge_normal(&self, e: usize) -> [f64; 2] {
        let t = self.edge_tangent(e);
        [t[1], -t[0]]
    }

    /// Largest edge length.
    pub fn h(&self) -> f64 {
        (0..self.num_edges()).map(|e| self.edge_length(e)).fold(0.0, f64::max)
    }

    pub fn min_abs_area(&self) -> f64 {
        (0..self.num_cells()).map(|c| self.signed_area(c).abs()).fold(f64::INFINITY, f64::min)
    }

    /// Uniform refinement: every cell is cut into four by its edge midpoints.
    pub fn refine(&self) -> Result<Mesh> {
        let nv = self.num_vertices();
        let mut vertices = self.vertices.clone();
        for [a, b] in &self.edges {
            let (pa, pb) = (self.vertices[*a], self.vertices[*b]);
            vertices.push([0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])]);
        }
        let mut cells = Vec::with_capacity(4 * self.num_cells());
        for (c, v) in self.cells.iter().enumerate() {
            let m = self.cell_edges[c].map(|e| nv + e);
            cells.push([v[0], m[2], m[1]]);
            cells.push([v[1], m[0], m[2]]);
            cells.push([v[2], m[1], m[0]]);
            cells.push(m);
        }
        Mesh::new(vertices, cells)
    }
}

/// `N × N` squares on the unit square, each cut along the `(0,0)–(1,1)`
/// diagonal direction. Interior vertices move by uniform offsets of at most
/// `perturb / N` per coordinate.
pub fn structured_mesh(n: usize, perturb: f64) -> Result<Mesh> {
    structured_mesh_seeded(n, perturb, DEFAULT_SEED)
}

pub fn structured_mesh_seeded(n: usize, perturb: f64, seed: u64) -> Result<Mesh> {
    if n == 0 {
        return Err(Error::InvalidArgument("mesh needs N >= 1".into()));
    }
    if !(0.0..0.5).contains(&perturb) {
        return Err(Error::InvalidArgument(format!("perturbation {perturb} outside [0, 0.5)")));
    }
    let h = 1.0 / n as f64;
    let id = |i: usize, j: usize| j * (n + 1) + i;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
    for j in 0..=n {
        for i in 0..=n {
            let mut p = [i as f64 * h, j as f64 * h];
            if perturb > 0.0 && i > 0 && i < n && j > 0 && j < n {
                for x in &mut p {
                    *x += rng.random_range(-1.0..=1.0) * perturb * h;
                }
            }
            vertices.push(p);
        }
    }
    let mut cells = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            cells.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            cells.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    Mesh::new(vertices, cells)
}

/// A perturbed `coarse × coarse` mesh followed by `levels − 1` uniform
/// refinements, so the sequence is nested and shares one perturbation.
pub fn nested_meshes(coarse: usize, levels: usize, perturb: f64, seed: u64) -> Result<Vec<Mesh>> {
    let mut out = vec![structured_mesh_seeded(coarse, perturb, seed)?];
    for _ in 1..levels {
        let next = out.last().expect("at least one level").refine()?;
        out.push(next);
    }
    Ok(out)
}
