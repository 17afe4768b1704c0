use serde::Serialize;

use super::assembly::{assemble_biharmonic, assemble_stokes_sv};
use super::manufactured::{plate_load, plate_solution, stokes_load, stokes_pressure, stokes_velocity};
use super::mesh::nested_meshes;
use super::norms::{div_norm, error_norms, Field};
use super::space::FeSpace;
use super::system::solve_direct;
use crate::elements::ElementSpec;
use crate::Result;

/// Poisson ratio of the plate studies.
pub const PLATE_NU: f64 = 0.3;
/// Interior vertex displacement of the coarse study mesh, relative to `h`.
pub const STUDY_PERTURB: f64 = 0.1;
const COARSE: usize = 2;

#[derive(Clone, Debug, Serialize)]
pub struct BiharmonicLevel {
    pub n: usize,
    pub ndof: usize,
    pub h: f64,
    pub l2: f64,
    pub h1: f64,
    pub h2: f64,
}

/// Clamped plate with `u = (x(1−x)y(1−y))²` on `levels` nested meshes
/// starting from a perturbed 2×2 mesh (N = 2, 4, 8, ...).
/// `quad_degree` overrides the assembly rule degree.
pub fn biharmonic_study(spec: ElementSpec, levels: usize, seed: u64, quad_degree: Option<usize>) -> Result<Vec<BiharmonicLevel>> {
    let meshes = nested_meshes(COARSE, levels, STUDY_PERTURB, seed)?;
    let mut out = Vec::with_capacity(levels);
    for (l, mesh) in meshes.iter().enumerate() {
        let space = FeSpace::new(mesh, spec)?;
        let sys = assemble_biharmonic(&space, PLATE_NU, quad_degree, plate_load)?;
        let u = solve_direct(&sys)?;
        let parts = [(&space, u.as_slice())];
        let e = error_norms(&Field::new(&parts)?, |x, a, _| plate_solution(x, a))?;
        let n = COARSE << l;
        out.push(BiharmonicLevel {
            n,
            ndof: space.ndofs(),
            h: 1.0 / n as f64,
            l2: e.l2,
            h1: e.h1,
            h2: e.h2,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct StokesLevel {
    pub n: usize,
    pub dofs: usize,
    pub h: f64,
    pub velocity_l2: f64,
    pub pressure_l2: f64,
    pub div_l2: f64,
    pub jump_l2: f64,
}

/// Scott–Vogelius `k = 2` with `u = curl(x²(1−x)²y²(1−y)²)`,
/// `p = x³ + y³ − 1/2` on the same nested meshes as the plate study.
pub fn stokes_study(levels: usize, seed: u64, quad_degree: Option<usize>) -> Result<Vec<StokesLevel>> {
    let meshes = nested_meshes(COARSE, levels, STUDY_PERTURB, seed)?;
    let mut out = Vec::with_capacity(levels);
    for (l, mesh) in meshes.iter().enumerate() {
        let st = assemble_stokes_sv(mesh, 2, quad_degree, stokes_load)?;
        let x = solve_direct(&st.system)?;
        let (ux, uy) = st.velocity_block(&x);
        let p = st.pressure_block(&x);
        let vparts = [(&st.velocity, ux.as_slice()), (&st.velocity, uy.as_slice())];
        let vel = Field::new(&vparts)?;
        let ve = error_norms(&vel, stokes_velocity)?;
        let pparts = [(&st.pressure, p.as_slice())];
        let pe = error_norms(&Field::new(&pparts)?, |x, a, _| stokes_pressure(x, a))?;
        let dn = div_norm(&vel)?;
        let n = COARSE << l;
        out.push(StokesLevel {
            n,
            dofs: st.total_dofs(),
            h: 1.0 / n as f64,
            velocity_l2: ve.l2,
            pressure_l2: pe.l2,
            div_l2: dn.total,
            jump_l2: dn.jump,
        });
    }
    Ok(out)
}
