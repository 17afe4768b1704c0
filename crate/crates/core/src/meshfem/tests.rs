use super::*;
use crate::complex::{PowellSabin, SplitKind};
use crate::elements::ElementSpec;
use crate::polyset::Continuity;

fn c1_specs() -> [ElementSpec; 5] {
    [
        ElementSpec::PowellSabin(PowellSabin::Ps6),
        ElementSpec::PowellSabin(PowellSabin::Ps12),
        ElementSpec::Hct { degree: 3, reduced: true },
        ElementSpec::Hct { degree: 3, reduced: false },
        ElementSpec::Hct { degree: 4, reduced: false },
    ]
}

fn poly(x: &[f64], alpha: &[usize], c: &[(f64, usize, usize)]) -> f64 {
    // Σ coef x^a y^b differentiated by alpha
    let mut s = 0.0;
    for &(k, a, b) in c {
        if alpha[0] > a || alpha[1] > b {
            continue;
        }
        let fa: f64 = ((a - alpha[0] + 1)..=a).map(|v| v as f64).product();
        let fb: f64 = ((b - alpha[1] + 1)..=b).map(|v| v as f64).product();
        s += k * fa * fb * x[0].powi((a - alpha[0]) as i32) * x[1].powi((b - alpha[1]) as i32);
    }
    s
}

fn random_vector(n: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

#[test]
fn biharmonic_kernel_and_symmetry() {
    let mesh = structured_mesh(3, 0.2).unwrap();
    for spec in c1_specs() {
        let space = FeSpace::new(&mesh, spec).unwrap();
        let sys = assemble_biharmonic(&space, 0.3, None, |_| 1.0).unwrap();
        assert!(sys.symmetry_error() < 1e-10, "{}", spec.name());
        let norm = sys.max_abs();
        for c in [vec![(1.0, 0, 0)], vec![(1.0, 1, 0)], vec![(1.0, 0, 1)]] {
            let u = space.interpolate(|x, a, _| poly(x, a, &c));
            let r = sys.apply(&u);
            let worst = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(worst <= 1e-8 * norm, "{} {c:?}: {worst:e}", spec.name());
        }
        // x² is not in the kernel
        let u = space.interpolate(|x, a, _| poly(x, a, &[(1.0, 2, 0)]));
        let energy: f64 = sys.apply(&u).iter().zip(&u).map(|(a, b)| a * b).sum();
        assert!(energy > 1e-3);
    }
}

#[test]
fn biharmonic_positive_semidefinite_with_three_dim_kernel() {
    let mesh = structured_mesh(2, 0.1).unwrap();
    let space = FeSpace::new(&mesh, ElementSpec::Hct { degree: 3, reduced: false }).unwrap();
    let sys = assemble_biharmonic(&space, 0.3, None, |_| 0.0).unwrap();
    let a = sys.to_dense();
    let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let scale = ev.last().copied().unwrap();
    assert!(ev[0] > -1e-10 * scale);
    assert!(ev[2].abs() < 1e-10 * scale && ev[3] > 1e-8 * scale, "{:?}", &ev[..4]);
}

#[test]
fn biharmonic_rejects_c0_elements_and_bad_ratio() {
    let mesh = structured_mesh(1, 0.0).unwrap();
    let lag = FeSpace::new(&mesh, ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 2, continuity: Continuity::C0 }).unwrap();
    assert!(matches!(assemble_biharmonic(&lag, 0.3, None, |_| 1.0), Err(crate::Error::Incompatible(_))));
    let hct = FeSpace::new(&mesh, ElementSpec::Hct { degree: 3, reduced: false }).unwrap();
    assert!(assemble_biharmonic(&hct, 1.0, None, |_| 1.0).is_err());
}

#[test]
fn table_dof_counts() {
    let mesh = structured_mesh(8, 0.0).unwrap();
    let expect = [243, 451, 243, 451, 995];
    for (spec, n) in c1_specs().into_iter().zip(expect) {
        assert_eq!(FeSpace::new(&mesh, spec).unwrap().ndofs(), n, "{}", spec.name());
    }
}

#[test]
fn global_c1_conformity() {
    // PS6 needs the segment joining adjacent split points to cross the shared
    // edge at its split point; barycenters and midpoints satisfy that on the
    // structured mesh but not on perturbed ones
    let structured = structured_mesh(3, 0.0).unwrap();
    let perturbed = structured_mesh_seeded(3, 0.2, 5).unwrap();
    for spec in c1_specs() {
        let meshes: Vec<&Mesh> = match spec {
            ElementSpec::PowellSabin(PowellSabin::Ps6) => vec![&structured],
            _ => vec![&structured, &perturbed],
        };
        for mesh in meshes {
            assert!(c1_jump(mesh, spec) <= 1e-8, "{}", spec.name());
        }
    }
}

#[test]
fn ps6_is_not_c1_without_collinear_split_points() {
    let mesh = structured_mesh_seeded(3, 0.2, 5).unwrap();
    assert!(c1_jump(&mesh, ElementSpec::PowellSabin(PowellSabin::Ps6)) > 1e-3);
}

fn c1_jump(mesh: &Mesh, spec: ElementSpec) -> f64 {
    let space = FeSpace::new(mesh, spec).unwrap();
    let u = random_vector(space.ndofs(), 11);
    let parts = [(&space, u.as_slice())];
    max_interface_jump(&Field::new(&parts).unwrap(), 10, 1).unwrap()
}

#[test]
fn johnson_mercier_normal_continuity() {
    let mesh = structured_mesh_seeded(3, 0.2, 6).unwrap();
    let space = FeSpace::new(&mesh, ElementSpec::JohnsonMercier).unwrap();
    let u = random_vector(space.ndofs(), 12);
    let parts = [(&space, u.as_slice())];
    let field = Field::new(&parts).unwrap();
    assert!(max_tensor_normal_jump(&field, 10).unwrap() <= 1e-8);
    // the full tensor does jump, so the check is not vacuous
    assert!(max_interface_jump(&field, 10, 0).unwrap() > 1e-3);
}

#[test]
fn lagrange_spaces_are_continuous() {
    let mesh = structured_mesh_seeded(3, 0.2, 7).unwrap();
    for spec in [
        ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 2, continuity: Continuity::C0 },
        ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 3, continuity: Continuity::C0 },
        ElementSpec::Lagrange { split: SplitKind::Iso(2), degree: 1, continuity: Continuity::C0 },
    ] {
        let space = FeSpace::new(&mesh, spec).unwrap();
        let u = random_vector(space.ndofs(), 3);
        let parts = [(&space, u.as_slice())];
        assert!(max_interface_jump(&Field::new(&parts).unwrap(), 10, 0).unwrap() <= 1e-9, "{}", spec.name());
    }
}

#[test]
fn interpolant_reproduction_and_zero() {
    let mesh = structured_mesh(2, 0.2).unwrap();
    let cubic = [(1.0, 3, 0), (-2.0, 1, 2), (0.5, 0, 1), (1.0, 0, 0)];
    let space = FeSpace::new(&mesh, ElementSpec::Hct { degree: 3, reduced: false }).unwrap();
    let u = space.interpolate(|x, a, _| poly(x, a, &cubic));
    let parts = [(&space, u.as_slice())];
    let e = error_norms(&Field::new(&parts).unwrap(), |x, a, _| poly(x, a, &cubic)).unwrap();
    assert!(e.l2 <= 1e-9 && e.h1 <= 1e-9 && e.h2 <= 1e-9, "{e:?}");
    let zero = vec![0.0; space.ndofs()];
    let parts = [(&space, zero.as_slice())];
    let e = error_norms(&Field::new(&parts).unwrap(), |_, _, _| 0.0).unwrap();
    assert_eq!((e.l2, e.h1, e.h2), (0.0, 0.0, 0.0));
}

#[test]
fn hct3_interpolation_order() {
    use std::f64::consts::PI;
    let f = |x: &[f64], a: &[usize], _: usize| {
        let d = |t: f64, k: usize| match k % 4 {
            0 => (PI * t).sin(),
            1 => (PI * t).cos(),
            2 => -(PI * t).sin(),
            _ => -(PI * t).cos(),
        } * PI.powi(k as i32);
        d(x[0], a[0]) * d(x[1], a[1])
    };
    let l2 = |n: usize| {
        let mesh = structured_mesh(n, 0.0).unwrap();
        let space = FeSpace::new(&mesh, ElementSpec::Hct { degree: 3, reduced: false }).unwrap();
        let u = space.interpolate(f);
        let parts = [(&space, u.as_slice())];
        error_norms(&Field::new(&parts).unwrap(), f).unwrap().l2
    };
    let ratio = l2(4) / l2(8);
    assert!((ratio - 16.0).abs() <= 0.2 * 16.0, "ratio {ratio}");
}

#[test]
fn biharmonic_solve_residual() {
    let mesh = structured_mesh(4, 0.1).unwrap();
    let space = FeSpace::new(&mesh, ElementSpec::Hct { degree: 3, reduced: false }).unwrap();
    let sys = assemble_biharmonic(&space, 0.3, None, manufactured::plate_load).unwrap();
    let u = solve_direct(&sys).unwrap();
    let r = sys.apply(&u);
    let (mut rn, mut bn) = (0.0, 0.0);
    for i in 0..sys.dim() {
        if !sys.fixed()[i] {
            rn += (r[i] - sys.rhs()[i]).powi(2);
            bn += sys.rhs()[i].powi(2);
        }
    }
    assert!(rn.sqrt() <= 1e-10 * bn.sqrt());
    assert!(u.iter().zip(sys.fixed()).all(|(v, &f)| !f || *v == 0.0));
}

#[test]
fn divergence_norm_examples() {
    let mesh = structured_mesh(2, 0.15).unwrap();
    let space = FeSpace::new(&mesh, velocity_spec(2)).unwrap();
    let lin = |c: usize, sx: f64, sy: f64| space.interpolate(move |x, a, _| match (a[0], a[1]) {
        (0, 0) => if c == 0 { sx * x[1] + (1.0 - sx) * x[0] } else { sy * x[0] + (1.0 - sy) * x[1] },
        (1, 0) => if c == 0 { 1.0 - sx } else { sy },
        (0, 1) => if c == 0 { sx } else { 1.0 - sy },
        _ => 0.0,
    });
    // (y, x)
    let (ux, uy) = (lin(0, 1.0, 1.0), lin(1, 1.0, 1.0));
    let parts = [(&space, ux.as_slice()), (&space, uy.as_slice())];
    let d = div_norm(&Field::new(&parts).unwrap()).unwrap();
    assert!(d.cell <= 1e-10 && d.jump <= 1e-10);
    // (x, y)
    let (ux, uy) = (lin(0, 0.0, 0.0), lin(1, 0.0, 0.0));
    let parts = [(&space, ux.as_slice()), (&space, uy.as_slice())];
    let d = div_norm(&Field::new(&parts).unwrap()).unwrap();
    // div = 2 on the unit square: 2 * area^(1/2) = 2
    assert!((d.total - 2.0).abs() < 1e-12, "{d:?}");
}

#[test]
fn stokes_structure() {
    let mesh = structured_mesh(8, 0.0).unwrap();
    let st = assemble_stokes_sv(&mesh, 2, None, |_, _| 0.0).unwrap();
    assert_eq!(st.total_dofs(), 2754);
    assert_eq!(st.system.dim(), 2755);
    assert!(st.system.symmetry_error() < 1e-12);
    assert!(assemble_stokes_sv(&mesh, 3, None, |_, _| 0.0).is_err());
}

#[test]
fn stokes_rigid_motion_is_divergence_free() {
    let mesh = structured_mesh(3, 0.2).unwrap();
    let st = assemble_stokes_sv(&mesh, 2, None, |_, _| 0.0).unwrap();
    let ux = st.velocity.interpolate(|x, a, _| match (a[0], a[1]) {
        (0, 0) => -x[1],
        (0, 1) => -1.0,
        _ => 0.0,
    });
    let uy = st.velocity.interpolate(|x, a, _| match (a[0], a[1]) {
        (0, 0) => x[0],
        (1, 0) => 1.0,
        _ => 0.0,
    });
    let mut full = ux;
    full.extend(uy);
    full.resize(st.system.dim(), 0.0);
    let r = st.system.apply(&full);
    let nv = st.velocity.ndofs();
    let bu = r[2 * nv..2 * nv + st.pressure.ndofs()].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(bu <= 1e-9, "{bu:e}");
}

#[test]
fn stokes_solution_is_exactly_divergence_free() {
    for n in [2, 4] {
        let mesh = structured_mesh(n, 0.1).unwrap();
        let st = assemble_stokes_sv(&mesh, 2, None, manufactured::stokes_load).unwrap();
        let x = solve_direct(&st.system).unwrap();
        let (ux, uy) = st.velocity_block(&x);
        let parts = [(&st.velocity, ux.as_slice()), (&st.velocity, uy.as_slice())];
        let d = div_norm(&Field::new(&parts).unwrap()).unwrap();
        assert!(d.total <= 1e-8 && d.jump <= 1e-10, "{d:?}");
        let p = st.pressure_block(&x);
        let mean: f64 = (0..mesh.num_cells())
            .map(|c| {
                let rule = st.pressure.cell_rule(c, 2).unwrap();
                let h = rule.cell_hints();
                let v = st.pressure.evaluate(c, &p, rule.points(), Some(&h), 0).unwrap();
                rule.weights().iter().zip(&v).map(|(w, v)| w * v[0][0]).sum::<f64>()
            })
            .sum();
        assert!(mean.abs() < 1e-12);
    }
}

#[test]
fn dofmap_shares_entities() {
    let mesh = structured_mesh(2, 0.0).unwrap();
    let space = FeSpace::new(&mesh, ElementSpec::Hct { degree: 4, reduced: false }).unwrap();
    let dm = space.dofmap();
    for e in 0..mesh.num_edges() {
        let cells = mesh.edge_cells(e);
        if cells.len() < 2 {
            continue;
        }
        let on_edge = |c: usize| {
            let mut d: Vec<usize> = dm.cell_dofs(c).iter().copied().filter(|&g| dm.entity(g) == DofEntity::Edge(e)).collect();
            d.sort();
            d
        };
        assert_eq!(on_edge(cells[0]).len(), 3);
        assert_eq!(on_edge(cells[0]), on_edge(cells[1]));
    }
    // every dof is reached by some cell
    let mut seen = vec![false; dm.total_dofs()];
    for c in 0..mesh.num_cells() {
        for &g in dm.cell_dofs(c) {
            seen[g] = true;
        }
    }
    assert!(seen.iter().all(|&s| s));
}
