use macrotab_core::complex::PowellSabin;
use macrotab_core::elements::ElementSpec;
use macrotab_core::meshfem::{
    assemble_biharmonic, assemble_stokes_sv, div_norm, max_interface_jump, solve_direct, structured_mesh, structured_mesh_seeded, DofEntity, FeSpace, Field,
    Mesh,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const HCT: [ElementSpec; 4] = [
    ElementSpec::PowellSabin(PowellSabin::Ps12),
    ElementSpec::Hct { degree: 3, reduced: true },
    ElementSpec::Hct { degree: 3, reduced: false },
    ElementSpec::Hct { degree: 4, reduced: false },
];

fn random_coeffs(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn gradient_jump(mesh: &Mesh, spec: ElementSpec, seed: u64) -> f64 {
    let space = FeSpace::new(mesh, spec).unwrap();
    let u = random_coeffs(space.ndofs(), seed);
    let parts = [(&space, u.as_slice())];
    max_interface_jump(&Field::new(&parts).unwrap(), 10, 1).unwrap()
}

#[test]
fn ps6_is_c1_on_the_structured_mesh() {
    for n in [2, 4] {
        let mesh = structured_mesh(n, 0.0).unwrap();
        assert!(gradient_jump(&mesh, ElementSpec::PowellSabin(PowellSabin::Ps6), 3) <= 1e-8);
    }
}

#[test]
fn scott_vogelius_is_divergence_free_at_every_level() {
    for n in [2, 4, 8] {
        let mesh = structured_mesh(n, 0.1).unwrap();
        let st = assemble_stokes_sv(&mesh, 2, None, |x, c| if c == 0 { x[1] } else { x[0] * x[0] }).unwrap();
        let x = solve_direct(&st.system).unwrap();
        let (ux, uy) = st.velocity_block(&x);
        let parts = [(&st.velocity, ux.as_slice()), (&st.velocity, uy.as_slice())];
        let d = div_norm(&Field::new(&parts).unwrap()).unwrap();
        assert!(d.total <= 1e-8 && d.jump <= 1e-10, "N={n}: {d:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn c1_spaces_are_conforming(seed in 0u64..10_000, perturb in 0.0f64..0.3, n in 2usize..4) {
        let mesh = structured_mesh_seeded(n, perturb, seed).unwrap();
        for spec in HCT {
            prop_assert!(gradient_jump(&mesh, spec, seed) <= 1e-8, "{}", spec.name());
        }
    }

    #[test]
    fn biharmonic_matrix_is_symmetric_psd_with_affine_kernel(seed in 0u64..10_000, perturb in 0.0f64..0.3, which in 0usize..4) {
        let mesh = structured_mesh_seeded(2, perturb, seed).unwrap();
        let space = FeSpace::new(&mesh, HCT[which]).unwrap();
        let sys = assemble_biharmonic(&space, 0.3, None, |_| 0.0).unwrap();
        let a = sys.to_dense();
        let scale = a.amax();
        prop_assert!(sys.symmetry_error() <= 1e-10 * scale);
        let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let top = ev[ev.len() - 1];
        // exactly three null eigenvalues, well separated from the rest; the
        // HCT4 interior moments make the spectrum wide, hence the loose floor
        prop_assert!(ev[0] >= -1e-12 * top);
        prop_assert!(ev[2].abs() <= 1e-12 * top);
        prop_assert!(ev[3] >= 1e-10 * top, "kernel larger than affine functions");
        let affine: [fn(&[f64]) -> f64; 3] = [|_| 1.0, |x| x[0], |x| x[1]];
        for f in affine {
            let u = space.interpolate(|x, a, _| match (a[0], a[1]) {
                (0, 0) => f(x),
                (1, 0) => f(&[1.0, 0.0]) - f(&[0.0, 0.0]),
                (0, 1) => f(&[0.0, 1.0]) - f(&[0.0, 0.0]),
                _ => 0.0,
            });
            let r = sys.apply(&u);
            prop_assert!(r.iter().all(|v| v.abs() <= 1e-10 * scale));
        }
    }

    #[test]
    fn shared_entities_share_dofs(seed in 0u64..10_000, which in 0usize..4) {
        let mesh = structured_mesh_seeded(3, 0.2, seed).unwrap();
        let space = FeSpace::new(&mesh, HCT[which]).unwrap();
        let dm = space.dofmap();
        for e in 0..mesh.num_edges() {
            let cells = mesh.edge_cells(e);
            if cells.len() < 2 {
                continue;
            }
            let [v0, v1] = mesh.edges()[e];
            let on = |c: usize| {
                let mut d: Vec<usize> = dm
                    .cell_dofs(c)
                    .iter()
                    .copied()
                    .filter(|&g| matches!(dm.entity(g), DofEntity::Edge(x) if x == e) || matches!(dm.entity(g), DofEntity::Vertex(v) if v == v0 || v == v1))
                    .collect();
                d.sort();
                d
            };
            prop_assert_eq!(on(cells[0]), on(cells[1]));
        }
    }

    #[test]
    fn stokes_saddle_point_is_symmetric(seed in 0u64..10_000) {
        let mesh = structured_mesh_seeded(2, 0.2, seed).unwrap();
        let st = assemble_stokes_sv(&mesh, 2, None, |_, _| 1.0).unwrap();
        prop_assert!(st.system.symmetry_error() <= 1e-12 * st.system.max_abs());
    }
}
