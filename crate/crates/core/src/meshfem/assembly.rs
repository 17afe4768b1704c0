use super::mesh::Mesh;
use super::space::FeSpace;
use super::system::LinearSystem;
use crate::complex::SplitKind;
use crate::elements::ElementSpec;
use crate::polyset::Continuity;
use crate::{Error, Result};

// Derivative slots of a 2D order-2 tabulation.
const DX: usize = 1;
const DY: usize = 2;
const DXX: usize = 3;
const DXY: usize = 4;
const DYY: usize = 5;

/// Plate bilinear form
/// `∫ ΔuΔv − (1−ν)(2u_xx v_yy + 2u_yy v_xx − 4u_xy v_xy)`
/// with load `∫ f v`, clamped on the whole boundary.
///
/// The stiffness uses a macro rule of degree `quad_degree` (default `2k`),
/// the load one two degrees higher. Every dof on a boundary vertex or edge is
/// eliminated.
pub fn assemble_biharmonic(space: &FeSpace, nu: f64, quad_degree: Option<usize>, f: impl Fn(&[f64]) -> f64) -> Result<LinearSystem> {
    if !matches!(space.spec(), ElementSpec::Hct { .. } | ElementSpec::PowellSabin(_)) {
        return Err(Error::Incompatible(format!("{} is not C1 and lacks second derivatives", space.spec().name())));
    }
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::InvalidArgument(format!("Poisson ratio {nu} outside (0, 1)")));
    }
    let q_stiff = quad_degree.unwrap_or(2 * space.spec().degree());
    let mesh = space.mesh();
    let n = space.ndofs();
    let mut entries = Vec::new();
    let mut rhs = vec![0.0; n];
    for c in 0..mesh.num_cells() {
        let dofs = space.dofmap().cell_dofs(c);
        let signs = space.dofmap().cell_signs(c);
        let nb = dofs.len();
        let rule = space.cell_rule(c, q_stiff)?;
        let hints = rule.cell_hints();
        let tab = space.tabulate(c, rule.points(), Some(&hints), 2)?;
        let mut local = vec![0.0; nb * nb];
        for (q, w) in rule.weights().iter().enumerate() {
            let h: Vec<[f64; 3]> = (0..nb).map(|b| [tab.get(DXX, b, q, 0), tab.get(DXY, b, q, 0), tab.get(DYY, b, q, 0)]).collect();
            for i in 0..nb {
                let [ixx, ixy, iyy] = h[i];
                for j in 0..nb {
                    let [jxx, jxy, jyy] = h[j];
                    let lap = (ixx + iyy) * (jxx + jyy);
                    let cross = 2.0 * ixx * jyy + 2.0 * iyy * jxx - 4.0 * ixy * jxy;
                    local[i * nb + j] += w * (lap - (1.0 - nu) * cross);
                }
            }
        }
        let load_rule = space.cell_rule(c, q_stiff + 2)?;
        let load_hints = load_rule.cell_hints();
        let vals = space.tabulate(c, load_rule.points(), Some(&load_hints), 0)?;
        for (q, (x, w)) in load_rule.points().iter().zip(load_rule.weights()).enumerate() {
            let fx = f(x) * w;
            for i in 0..nb {
                rhs[dofs[i]] += signs[i] * fx * vals.get(0, i, q, 0);
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                entries.push((dofs[i], dofs[j], signs[i] * signs[j] * local[i * nb + j]));
            }
        }
    }
    let fixed = space.dofmap().boundary_dofs(mesh);
    LinearSystem::from_triplets(n, entries, rhs, fixed)
}

/// Scott–Vogelius discretization with its spaces and block layout.
///
/// Unknowns are ordered `[u_x | u_y | p | λ]`, where `λ` multiplies the
/// pressure mean.
#[derive(Clone, Debug)]
pub struct StokesSystem {
    pub velocity: FeSpace,
    pub pressure: FeSpace,
    pub system: LinearSystem,
}

impl StokesSystem {
    /// Velocity and pressure dofs, excluding the multiplier.
    pub fn total_dofs(&self) -> usize {
        2 * self.velocity.ndofs() + self.pressure.ndofs()
    }

    pub fn velocity_block(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let nv = self.velocity.ndofs();
        (x[..nv].to_vec(), x[nv..2 * nv].to_vec())
    }

    pub fn pressure_block(&self, x: &[f64]) -> Vec<f64> {
        let nv = self.velocity.ndofs();
        x[2 * nv..2 * nv + self.pressure.ndofs()].to_vec()
    }
}

pub fn velocity_spec(k: usize) -> ElementSpec {
    ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: k, continuity: Continuity::C0 }
}

pub fn pressure_spec(k: usize) -> ElementSpec {
    ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: k - 1, continuity: Continuity::Dg }
}

/// `[A Bᵀ 0; B 0 c; 0 cᵀ 0]` for `a(u, v) = (2ε(u), ε(v))`,
/// `b(v, q) = −(div v, q)` and `c_i = ∫ q_i`, with `f` given per component.
/// One macro rule of degree `quad_degree` (default `2k + 2`) serves every term.
pub fn assemble_stokes_sv(
    mesh: &Mesh,
    k: usize,
    quad_degree: Option<usize>,
    f: impl Fn(&[f64], usize) -> f64,
) -> Result<StokesSystem> {
    if k != 2 {
        return Err(Error::InvalidArgument(format!("the 2D Scott–Vogelius pair here is k = 2, got {k}")));
    }
    let velocity = FeSpace::new(mesh, velocity_spec(k))?;
    let pressure = FeSpace::new(mesh, pressure_spec(k))?;
    let nv = velocity.ndofs();
    let np = pressure.ndofs();
    let n = 2 * nv + np + 1;
    let lam = n - 1;
    let mut entries = Vec::new();
    let mut rhs = vec![0.0; n];
    for c in 0..mesh.num_cells() {
        let vd = velocity.dofmap().cell_dofs(c);
        let pd = pressure.dofmap().cell_dofs(c);
        let vs = velocity.dofmap().cell_signs(c);
        let ps = pressure.dofmap().cell_signs(c);
        let rule = velocity.cell_rule(c, quad_degree.unwrap_or(2 * k + 2))?;
        let hints = rule.cell_hints();
        let vt = velocity.tabulate(c, rule.points(), Some(&hints), 1)?;
        let pt = pressure.tabulate(c, rule.points(), Some(&hints), 0)?;
        let (nb, mb) = (vd.len(), pd.len());
        let mut a = vec![0.0; 4 * nb * nb];
        let mut b = vec![0.0; 2 * mb * nb];
        let mut mean = vec![0.0; mb];
        for (q, (x, &w)) in rule.points().iter().zip(rule.weights()).enumerate() {
            let grad: Vec<[f64; 2]> = (0..nb).map(|i| [vt.get(DX, i, q, 0), vt.get(DY, i, q, 0)]).collect();
            for ca in 0..2 {
                for cb in 0..2 {
                    for i in 0..nb {
                        for j in 0..nb {
                            // 2ε(φ_i e_a):ε(φ_j e_b) = δ_ab ∇φ_i·∇φ_j + ∂_b φ_i ∂_a φ_j
                            let mut v = grad[i][cb] * grad[j][ca];
                            if ca == cb {
                                v += grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1];
                            }
                            a[((ca * 2 + cb) * nb + i) * nb + j] += w * v;
                        }
                    }
                }
            }
            for m in 0..mb {
                let qm = pt.get(0, m, q, 0);
                mean[m] += w * qm;
                for ca in 0..2 {
                    for j in 0..nb {
                        b[(ca * mb + m) * nb + j] -= w * qm * grad[j][ca];
                    }
                }
            }
            for ca in 0..2 {
                let fx = f(x, ca) * w;
                for i in 0..nb {
                    rhs[ca * nv + vd[i]] += vs[i] * fx * vt.get(0, i, q, 0);
                }
            }
        }
        for ca in 0..2 {
            for cb in 0..2 {
                for i in 0..nb {
                    for j in 0..nb {
                        entries.push((ca * nv + vd[i], cb * nv + vd[j], vs[i] * vs[j] * a[((ca * 2 + cb) * nb + i) * nb + j]));
                    }
                }
            }
            for m in 0..mb {
                for j in 0..nb {
                    let v = ps[m] * vs[j] * b[(ca * mb + m) * nb + j];
                    entries.push((2 * nv + pd[m], ca * nv + vd[j], v));
                    entries.push((ca * nv + vd[j], 2 * nv + pd[m], v));
                }
            }
        }
        for m in 0..mb {
            entries.push((2 * nv + pd[m], lam, ps[m] * mean[m]));
            entries.push((lam, 2 * nv + pd[m], ps[m] * mean[m]));
        }
    }
    let bc = velocity.dofmap().boundary_dofs(mesh);
    let mut fixed = vec![false; n];
    for ca in 0..2 {
        fixed[ca * nv..(ca + 1) * nv].copy_from_slice(&bc);
    }
    let system = LinearSystem::from_triplets(n, entries, rhs, fixed)?;
    Ok(StokesSystem { velocity, pressure, system })
}
