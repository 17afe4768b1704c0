//! Mesh-level harness: structured meshes, global numbering, biharmonic and
//! Scott–Vogelius assembly, direct solves, error norms and rate fits.

mod assembly;
mod dofmap;
pub mod manufactured;
mod mesh;
mod norms;
mod space;
mod study;
mod system;

pub use assembly::{assemble_biharmonic, assemble_stokes_sv, pressure_spec, velocity_spec, StokesSystem};
pub use dofmap::{DofEntity, DofMap};
pub use mesh::{nested_meshes, structured_mesh, structured_mesh_seeded, Mesh, DEFAULT_SEED};
pub use norms::{convergence_rates, div_norm, error_norms, max_interface_jump, max_tensor_normal_jump, DivNorm, ErrorNorms, Field};
pub use space::FeSpace;
pub use study::{biharmonic_study, stokes_study, BiharmonicLevel, StokesLevel, PLATE_NU, STUDY_PERTURB};
pub use system::{solve_direct, sparsity_report, LinearSystem, SparsityReport};

#[cfg(test)]
mod tests;
