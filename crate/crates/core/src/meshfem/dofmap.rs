use serde::Serialize;

use super::mesh::Mesh;
use crate::dualset::Functional;
use crate::{Error, Result};

/// Mesh entity a global dof is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DofEntity {
    Vertex(usize),
    Edge(usize),
    Cell(usize),
}

/// Local-to-global numbering with orientation signs.
///
/// Global dofs are numbered entity-major: all vertex dofs, then edge dofs,
/// then cell-interior dofs. A local node equals `sign` times the global
/// functional, so local basis functions enter the global ones with the same
/// sign.
#[derive(Clone, Debug, Serialize)]
pub struct DofMap {
    cell_dofs: Vec<Vec<usize>>,
    cell_signs: Vec<Vec<f64>>,
    entities: Vec<DofEntity>,
}

impl DofMap {
    /// Build from the physical nodes of every cell, in mesh cell order.
    pub fn new(mesh: &Mesh, cell_nodes: &[Vec<Functional>]) -> Result<Self> {
        if cell_nodes.len() != mesh.num_cells() {
            return Err(Error::InvalidArgument("one node list per cell expected".into()));
        }
        let per_dim = entity_counts(&cell_nodes[0])?;
        let offsets = [0, mesh.num_vertices() * per_dim[0], mesh.num_vertices() * per_dim[0] + mesh.num_edges() * per_dim[1]];
        let total = offsets[2] + mesh.num_cells() * per_dim[2];
        let mut entities = vec![DofEntity::Cell(0); total];
        let mut cell_dofs = Vec::with_capacity(mesh.num_cells());
        let mut cell_signs = Vec::with_capacity(mesh.num_cells());
        for (c, nodes) in cell_nodes.iter().enumerate() {
            if entity_counts(nodes)? != per_dim {
                return Err(Error::InvalidArgument(format!("cell {c} has a different node layout")));
            }
            let verts = mesh.cells()[c];
            let edges = mesh.cell_edges(c);
            let mut dofs = vec![0; nodes.len()];
            let mut signs = vec![1.0; nodes.len()];
            // group local nodes by local entity, keeping local order
            for dim in 0..3 {
                for local in 0..if dim == 2 { 1 } else { 3 } {
                    let mut ids: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].entity == (dim, local)).collect();
                    let (global, ent) = match dim {
                        0 => (verts[local], DofEntity::Vertex(verts[local])),
                        1 => (edges[local], DofEntity::Edge(edges[local])),
                        _ => (c, DofEntity::Cell(c)),
                    };
                    if dim == 1 {
                        let e = global;
                        let a = mesh.vertices()[mesh.edges()[e][0]];
                        let t = mesh.edge_tangent(e);
                        let param = |i: usize| {
                            let x = &nodes[i].anchor;
                            ((x[0] - a[0]) * t[0] + (x[1] - a[1]) * t[1]) / mesh.edge_length(e)
                        };
                        // shared nodes are ordered along the global edge; ties keep local order
                        ids.sort_by(|&i, &j| {
                            let (pi, pj) = (param(i), param(j));
                            if (pi - pj).abs() < 1e-9 {
                                std::cmp::Ordering::Equal
                            } else {
                                pi.total_cmp(&pj)
                            }
                        });
                        for &i in &ids {
                            signs[i] = edge_sign(mesh, e, &nodes[i]);
                        }
                    }
                    for (slot, &i) in ids.iter().enumerate() {
                        let g = offsets[dim] + global * per_dim[dim] + slot;
                        dofs[i] = g;
                        entities[g] = ent;
                    }
                }
            }
            cell_dofs.push(dofs);
            cell_signs.push(signs);
        }
        Ok(Self {
            cell_dofs,
            cell_signs,
            entities,
        })
    }

    pub fn total_dofs(&self) -> usize {
        self.entities.len()
    }

    pub fn cell_dofs(&self, c: usize) -> &[usize] {
        &self.cell_dofs[c]
    }

    pub fn cell_signs(&self, c: usize) -> &[f64] {
        &self.cell_signs[c]
    }

    pub fn entity(&self, dof: usize) -> DofEntity {
        self.entities[dof]
    }

    /// Dofs on boundary vertices and boundary edges.
    pub fn boundary_dofs(&self, mesh: &Mesh) -> Vec<bool> {
        self.entities
            .iter()
            .map(|e| match *e {
                DofEntity::Vertex(v) => mesh.is_boundary_vertex(v),
                DofEntity::Edge(e) => mesh.is_boundary_edge(e),
                DofEntity::Cell(_) => false,
            })
            .collect()
    }
}

/// Nodes per vertex, per edge and per cell interior.
fn entity_counts(nodes: &[Functional]) -> Result<[usize; 3]> {
    let mut counts = [[0usize; 3]; 3];
    for n in nodes {
        let (d, id) = n.entity;
        if d > 2 || id > 2 || (d == 2 && id > 0) {
            return Err(Error::InvalidEntity { dim: d, id });
        }
        counts[d][id] += 1;
    }
    for d in 0..2 {
        if counts[d].iter().any(|&c| c != counts[d][0]) {
            return Err(Error::InvalidArgument(format!("uneven node counts on dimension {d} entities")));
        }
    }
    Ok([counts[0][0], counts[1][0], counts[2][0]])
}

/// `(−1)^p` for each oriented direction the node disagrees with the global edge on.
fn edge_sign(mesh: &Mesh, e: usize, node: &Functional) -> f64 {
    let o = &node.orientation;
    let dot = |v: &[f64], w: [f64; 2]| v[0] * w[0] + v[1] * w[1];
    let mut s = 1.0;
    if o.tangent_power % 2 == 1 {
        if let Some(t) = &o.tangent {
            if dot(t, mesh.edge_tangent(e)) < 0.0 {
                s = -s;
            }
        }
    }
    if o.normal_power % 2 == 1 {
        if let Some(n) = &o.normal {
            if dot(n, mesh.edge_normal(e)) < 0.0 {
                s = -s;
            }
        }
    }
    s
}
