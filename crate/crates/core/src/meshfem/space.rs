use super::dofmap::DofMap;
use super::mesh::Mesh;
use crate::complex::SplitSimplicialComplex;
use crate::dualset::Functional;
use crate::elements::ElementSpec;
use crate::polyset::TabulatedValues;
use crate::quadrature::{macro_rule, QuadratureRule};
use crate::transform::{geometry, CellGeometry, TransformPlan};
use crate::Result;

/// One element type placed on every cell of a mesh.
#[derive(Clone, Debug)]
pub struct FeSpace {
    mesh: Mesh,
    plan: TransformPlan,
    geoms: Vec<CellGeometry>,
    splits: Vec<SplitSimplicialComplex>,
    nodes: Vec<Vec<Functional>>,
    dofmap: DofMap,
}

impl FeSpace {
    pub fn new(mesh: &Mesh, spec: ElementSpec) -> Result<Self> {
        let plan = TransformPlan::new(spec.build()?);
        let mut geoms = Vec::with_capacity(mesh.num_cells());
        let mut splits = Vec::with_capacity(mesh.num_cells());
        let mut nodes = Vec::with_capacity(mesh.num_cells());
        for c in 0..mesh.num_cells() {
            let verts = mesh.cell_vertices(c);
            geoms.push(geometry(&verts)?);
            let (sp, n) = spec.dual_on(&verts)?;
            splits.push(sp);
            nodes.push(n);
        }
        let dofmap = DofMap::new(mesh, &nodes)?;
        Ok(Self {
            mesh: mesh.clone(),
            plan,
            geoms,
            splits,
            nodes,
            dofmap,
        })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn spec(&self) -> ElementSpec {
        self.plan.element().spec()
    }

    pub fn plan(&self) -> &TransformPlan {
        &self.plan
    }

    pub fn dofmap(&self) -> &DofMap {
        &self.dofmap
    }

    pub fn ndofs(&self) -> usize {
        self.dofmap.total_dofs()
    }

    pub fn ncomp(&self) -> usize {
        self.plan.element().value_shape().ncomp()
    }

    pub fn geometry(&self, c: usize) -> &CellGeometry {
        &self.geoms[c]
    }

    /// The split of physical cell `c`.
    pub fn split(&self, c: usize) -> &SplitSimplicialComplex {
        &self.splits[c]
    }

    /// Physical nodes of cell `c`, in local order.
    pub fn nodes(&self, c: usize) -> &[Functional] {
        &self.nodes[c]
    }

    /// Macro rule over the subcells of physical cell `c`.
    pub fn cell_rule(&self, c: usize, degree: usize) -> Result<QuadratureRule> {
        macro_rule(self.splits[c].child(), degree)
    }

    /// Local physical basis of cell `c`, without orientation signs.
    pub fn tabulate(&self, c: usize, points: &[Vec<f64>], hints: Option<&[Option<usize>]>, max_deriv: usize) -> Result<TabulatedValues> {
        self.plan.tabulate(&self.geoms[c], points, hints, max_deriv)
    }

    /// Global dof values of `f(x, alpha, component)`.
    pub fn interpolate(&self, f: impl Fn(&[f64], &[usize], usize) -> f64) -> Vec<f64> {
        let mut out = vec![0.0; self.ndofs()];
        for c in 0..self.mesh.num_cells() {
            let dofs = self.dofmap.cell_dofs(c);
            let signs = self.dofmap.cell_signs(c);
            for (i, n) in self.nodes[c].iter().enumerate() {
                out[dofs[i]] = signs[i] * n.apply(&f);
            }
        }
        out
    }

    /// Signed local coefficients of a global vector on cell `c`.
    pub fn local_coeffs(&self, c: usize, global: &[f64]) -> Vec<f64> {
        let dofs = self.dofmap.cell_dofs(c);
        let signs = self.dofmap.cell_signs(c);
        dofs.iter().zip(signs).map(|(&g, &s)| s * global[g]).collect()
    }

    /// Values and derivatives of the global function `coeffs` restricted to
    /// cell `c`, indexed `[point][component][derivative]`.
    pub fn evaluate(&self, c: usize, coeffs: &[f64], points: &[Vec<f64>], hints: Option<&[Option<usize>]>, max_deriv: usize) -> Result<Vec<Vec<Vec<f64>>>> {
        let tab = self.tabulate(c, points, hints, max_deriv)?;
        let u = self.local_coeffs(c, coeffs);
        let nd = tab.derivs().len();
        let mut out = vec![vec![vec![0.0; nd]; tab.ncomp()]; points.len()];
        for (p, row) in out.iter_mut().enumerate() {
            for (comp, vals) in row.iter_mut().enumerate() {
                for (k, v) in vals.iter_mut().enumerate() {
                    *v = u.iter().enumerate().map(|(b, ub)| ub * tab.get(k, b, p, comp)).sum();
                }
            }
        }
        Ok(out)
    }
}
