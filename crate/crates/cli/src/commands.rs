use std::collections::BTreeMap;

use macrotab_core::complex::{reference_simplex, ComplexDump};
use macrotab_core::dualset::{NodeLabel, Term};
use macrotab_core::elements::{cost_table, ElementSpec, MappingKind, ValueShape};
use macrotab_core::meshfem::{
    assemble_biharmonic, assemble_stokes_sv, biharmonic_study, convergence_rates, sparsity_report, stokes_study, structured_mesh,
    FeSpace, SparsityReport, PLATE_NU,
};
use macrotab_core::polyset::TabulatedValues;
use macrotab_core::quadrature::macro_rule;
use macrotab_core::transform::{geometry, TransformPlan};
use macrotab_core::Error;
use serde::Serialize;

use crate::config::{parse_cell, parse_floats, parse_split, resolve_seed, Cli, CliError, Command, ElementArgs, Study};

const BIHARMONIC_LEVELS: usize = 4;
const STOKES_LEVELS: usize = 3;
/// Polynomial degree of the Scott–Vogelius velocity.
const SV_DEGREE: usize = 2;

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Element { element, dump } => element_report(&element.spec()?, *dump),
        Command::Tabulate { element, points, deriv, cell } => tabulate(&element.spec()?, points, *deriv, cell.as_deref()),
        Command::Transform { element, cell } => transform(&element.spec()?, cell),
        Command::DumpRule { split, degree } => dump_rule(split, *degree),
        Command::DumpComplex { split } => dump_complex(split),
        Command::Cost => cost(),
        Command::Convergence { study, element, levels, seed, quad_degree } => {
            let seed = resolve_seed(*seed)?;
            match study {
                Study::Biharmonic => biharmonic(&element.spec()?, levels.unwrap_or(BIHARMONIC_LEVELS), seed, *quad_degree),
                Study::Stokes => {
                    if element.name.is_some() && !element.is_scott_vogelius() {
                        return Err(Error::Incompatible(format!(
                            "the Stokes study uses the Scott–Vogelius pair; got '{}'",
                            element.name.as_deref().unwrap_or_default()
                        ))
                        .into());
                    }
                    stokes(levels.unwrap_or(STOKES_LEVELS), seed, *quad_degree)
                }
            }
        }
        Command::Sparsity { element, mesh_size, quad_degree } => sparsity(element, *mesh_size, *quad_degree),
    }
}

fn to_json(value: &impl Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Shortest round-trip form; exponent notation away from unit scale keeps
/// roundoff-sized values short.
fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e6).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

#[derive(Serialize)]
struct NodeReport {
    index: usize,
    label: NodeLabel,
    entity: [usize; 2],
    points: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<Term>>,
}

#[derive(Serialize)]
struct ElementReport {
    name: String,
    dim: usize,
    degree: usize,
    value_shape: ValueShape,
    mapping: MappingKind,
    subcells: usize,
    cond_vandermonde: f64,
    nodes: Vec<NodeReport>,
    /// `{entity dim: {entity id: [node indices]}}` on the unsplit cell.
    entity_dofs: BTreeMap<usize, BTreeMap<usize, Vec<usize>>>,
}

fn element_report(spec: &ElementSpec, dump: bool) -> Result<String, CliError> {
    let el = spec.build()?;
    let nodes = el
        .dual()
        .nodes()
        .iter()
        .enumerate()
        .map(|(index, n)| {
            let mut points: Vec<Vec<f64>> = Vec::new();
            for t in &n.terms {
                if !points.contains(&t.point) {
                    points.push(t.point.clone());
                }
            }
            NodeReport {
                index,
                label: n.label,
                entity: [n.entity.0, n.entity.1],
                points,
                terms: dump.then(|| n.terms.clone()),
            }
        })
        .collect();
    let mut entity_dofs: BTreeMap<usize, BTreeMap<usize, Vec<usize>>> = BTreeMap::new();
    for (&(d, id), dofs) in el.dual().entity_dofs() {
        entity_dofs.entry(d).or_default().insert(id, dofs.clone());
    }
    to_json(&ElementReport {
        name: el.name(),
        dim: el.dim(),
        degree: el.degree(),
        value_shape: el.value_shape(),
        mapping: el.mapping_kind(),
        subcells: el.num_subcells(),
        cond_vandermonde: el.cond(),
        nodes,
        entity_dofs,
    })
}

/// `lattice:n` gives the points `(i/n, j/n)` with `i + j ≤ n`, row by row.
fn parse_points(s: &str) -> Result<Vec<Vec<f64>>, CliError> {
    if let Some(n) = s.strip_prefix("lattice:") {
        let n: usize = n.trim().parse().map_err(|_| CliError::Usage(format!("bad lattice size '{n}'")))?;
        if n == 0 {
            return Ok(vec![vec![1.0 / 3.0, 1.0 / 3.0]]);
        }
        let h = 1.0 / n as f64;
        return Ok((0..=n).flat_map(|j| (0..=n - j).map(move |i| vec![i as f64 * h, j as f64 * h])).collect());
    }
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let v = parse_floats(p)?;
            if v.len() != 2 {
                return Err(CliError::Usage(format!("point '{p}' needs 2 coordinates")));
            }
            Ok(v)
        })
        .collect()
}

fn tabulate(spec: &ElementSpec, points: &str, deriv: usize, cell: Option<&str>) -> Result<String, CliError> {
    let el = spec.build()?;
    let pts = parse_points(points)?;
    let table = match cell {
        None => el.tabulate(&pts, deriv)?,
        Some(c) => {
            let geom = geometry(&parse_cell(c)?)?;
            // lattice points live on the reference cell; explicit points are physical
            let phys: Vec<Vec<f64>> = if points.starts_with("lattice:") { pts.iter().map(|x| geom.to_physical(x)).collect() } else { pts };
            TransformPlan::new(el).tabulate(&geom, &phys, None, deriv)?
        }
    };
    write_table(&table)
}

fn write_table(t: &TabulatedValues) -> Result<String, CliError> {
    let mut w = csv_writer();
    let mut header: Vec<String> = ["dx", "dy", "basis", "point", "x", "y"].map(String::from).to_vec();
    header.extend((0..t.ncomp()).map(|c| format!("c{c}")));
    w.write_record(&header)?;
    for (k, alpha) in t.derivs().iter().enumerate() {
        for b in 0..t.nbasis() {
            for (p, x) in t.points().iter().enumerate() {
                let mut row = vec![alpha[0].to_string(), alpha[1].to_string(), b.to_string(), p.to_string(), num(x[0]), num(x[1])];
                row.extend((0..t.ncomp()).map(|c| num(t.get(k, b, p, c))));
                w.write_record(&row)?;
            }
        }
    }
    finish(w)
}

#[derive(Serialize)]
struct TransformReport {
    name: String,
    mapping: MappingKind,
    rows: usize,
    cols: usize,
    dense: Vec<Vec<f64>>,
    /// Nonzero entries as `[row, col, value]`.
    triplets: Vec<(usize, usize, f64)>,
}

fn transform(spec: &ElementSpec, cell: &str) -> Result<String, CliError> {
    let geom = geometry(&parse_cell(cell)?)?;
    let plan = TransformPlan::new(spec.build()?);
    let m = plan
        .matrix(&geom)?
        .ok_or_else(|| Error::Incompatible(format!("{} is rebuilt on each cell and has no transformation matrix", spec.name())))?;
    let dense: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
    let triplets = dense
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, v)| **v != 0.0).map(move |(j, &v)| (i, j, v)))
        .collect();
    to_json(&TransformReport {
        name: spec.name(),
        mapping: plan.kind(),
        rows: m.nrows(),
        cols: m.ncols(),
        dense,
        triplets,
    })
}

fn dump_rule(split: &str, degree: usize) -> Result<String, CliError> {
    let sp = parse_split(split)?.apply(&reference_simplex(2)?)?;
    let rule = macro_rule(sp.child(), degree)?;
    let cells = rule.cells().expect("macro rules record subcells");
    let mut w = csv_writer();
    w.write_record(["x", "y", "weight", "cell"])?;
    for ((x, wt), c) in rule.points().iter().zip(rule.weights()).zip(cells) {
        w.write_record([num(x[0]), num(x[1]), num(*wt), c.to_string()])?;
    }
    finish(w)
}

#[derive(Serialize)]
struct SplitReport {
    split: String,
    parent: ComplexDump,
    child: ComplexDump,
    /// `{dim: {id: [parent dim, parent id]}}` for every child entity.
    parent_entity: BTreeMap<usize, BTreeMap<usize, [usize; 2]>>,
}

fn dump_complex(split: &str) -> Result<String, CliError> {
    let sp = parse_split(split)?.apply(&reference_simplex(2)?)?;
    let child = sp.child();
    let mut parent_entity: BTreeMap<usize, BTreeMap<usize, [usize; 2]>> = BTreeMap::new();
    for d in 0..=child.dim() {
        for id in 0..child.topology(d).len() {
            let (pd, pid) = sp.parent_entity_of((d, id));
            parent_entity.entry(d).or_default().insert(id, [pd, pid]);
        }
    }
    to_json(&SplitReport {
        split: split.to_ascii_lowercase(),
        parent: sp.parent().dump(),
        child: child.dump(),
        parent_entity,
    })
}

fn cost() -> Result<String, CliError> {
    let mut w = csv_writer();
    for row in cost_table()? {
        w.serialize(row)?;
    }
    finish(w)
}

/// Rates between consecutive levels; the first level has none.
fn rate_column(levels: &[(f64, f64)]) -> Result<Vec<String>, CliError> {
    if levels.len() < 2 {
        return Ok(vec![String::new(); levels.len()]);
    }
    let mut col = vec![String::new()];
    col.extend(convergence_rates(levels)?.iter().map(|&r| num(r)));
    Ok(col)
}

fn biharmonic(spec: &ElementSpec, levels: usize, seed: u64, quad_degree: Option<usize>) -> Result<String, CliError> {
    let rows = biharmonic_study(*spec, levels, seed, quad_degree)?;
    let col = |f: fn(&macrotab_core::meshfem::BiharmonicLevel) -> f64| rows.iter().map(|l| (l.h, f(l))).collect::<Vec<_>>();
    let rates = [rate_column(&col(|l| l.l2))?, rate_column(&col(|l| l.h1))?, rate_column(&col(|l| l.h2))?];
    let mut w = csv_writer();
    w.write_record(["N", "NDOF", "h", "ErrorL2", "ErrorH1", "ErrorH2", "RateL2", "RateH1", "RateH2"])?;
    for (i, l) in rows.iter().enumerate() {
        w.write_record([
            l.n.to_string(),
            l.ndof.to_string(),
            num(l.h),
            format!("{:e}", l.l2),
            format!("{:e}", l.h1),
            format!("{:e}", l.h2),
            rates[0][i].clone(),
            rates[1][i].clone(),
            rates[2][i].clone(),
        ])?;
    }
    finish(w)
}

fn stokes(levels: usize, seed: u64, quad_degree: Option<usize>) -> Result<String, CliError> {
    let rows = stokes_study(levels, seed, quad_degree)?;
    let col = |f: fn(&macrotab_core::meshfem::StokesLevel) -> f64| rows.iter().map(|l| (l.h, f(l))).collect::<Vec<_>>();
    let rates = [rate_column(&col(|l| l.velocity_l2))?, rate_column(&col(|l| l.pressure_l2))?];
    let mut w = csv_writer();
    w.write_record(["N", "NDOF", "h", "ErrorVelocityL2", "ErrorPressureL2", "DivNorm", "RateVelocityL2", "RatePressureL2"])?;
    for (i, l) in rows.iter().enumerate() {
        w.write_record([
            l.n.to_string(),
            l.dofs.to_string(),
            num(l.h),
            format!("{:e}", l.velocity_l2),
            format!("{:e}", l.pressure_l2),
            format!("{:e}", l.div_l2),
            rates[0][i].clone(),
            rates[1][i].clone(),
        ])?;
    }
    finish(w)
}

#[derive(Serialize)]
struct SparsityOutput {
    element: String,
    mesh_size: usize,
    total_dofs: usize,
    before_bc: SparsityReport,
    after_bc: SparsityReport,
}

fn sparsity(element: &ElementArgs, n: usize, quad_degree: Option<usize>) -> Result<String, CliError> {
    let mesh = structured_mesh(n, 0.0)?;
    // the Stokes system has one extra row for the pressure mean, not a dof
    let (name, total_dofs, sys) = if element.is_scott_vogelius() {
        let st = assemble_stokes_sv(&mesh, SV_DEGREE, quad_degree, |_, _| 0.0)?;
        ("sv".to_owned(), st.total_dofs(), st.system)
    } else {
        let spec = element.spec()?;
        let space = FeSpace::new(&mesh, spec)?;
        let sys = assemble_biharmonic(&space, PLATE_NU, quad_degree, |_| 0.0)?;
        (spec.name(), sys.dim(), sys)
    };
    to_json(&SparsityOutput {
        element: name,
        mesh_size: n,
        total_dofs,
        before_bc: sparsity_report(&sys, false),
        after_bc: sparsity_report(&sys, true),
    })
}
