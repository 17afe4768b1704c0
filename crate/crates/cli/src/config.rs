use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use macrotab_core::complex::SplitKind;
use macrotab_core::elements::ElementSpec;
use macrotab_core::meshfem::DEFAULT_SEED;
use macrotab_core::Error;

/// Environment variable that takes precedence over `--seed`.
pub const SEED_ENV: &str = "MACROTAB_SEED";

#[derive(Debug, Parser)]
#[command(name = "macrotab", version, about = "Construct, tabulate and verify simplicial macroelement bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// JSON report of an element: dimension, nodes, entity dofs, Vandermonde conditioning.
    Element {
        #[command(flatten)]
        element: ElementArgs,
        /// Include the discretized terms of every node.
        #[arg(long)]
        dump: bool,
    },
    /// CSV of basis values and derivatives at points.
    Tabulate {
        #[command(flatten)]
        element: ElementArgs,
        /// `lattice:n` or `x,y;x,y;...`, in the reference triangle or on `--cell`.
        #[arg(long, default_value = "lattice:4")]
        points: String,
        /// Highest derivative order.
        #[arg(long, default_value_t = 0)]
        deriv: usize,
        /// Physical triangle `x0,y0,x1,y1,x2,y2`; values are mapped there.
        #[arg(long)]
        cell: Option<String>,
    },
    /// Transformation matrix M for one physical triangle, dense and as triplets.
    Transform {
        #[command(flatten)]
        element: ElementArgs,
        /// Physical triangle `x0,y0,x1,y1,x2,y2`.
        #[arg(long)]
        cell: String,
    },
    /// CSV of the macro quadrature rule on a split of the reference triangle.
    DumpRule {
        #[arg(long, default_value = "alfeld")]
        split: String,
        #[arg(long)]
        degree: usize,
    },
    /// JSON of a split reference triangle and its map to parent entities.
    DumpComplex {
        #[arg(long, default_value = "alfeld")]
        split: String,
    },
    /// CSV of the elementwise matrix cost model.
    Cost,
    /// CSV of errors and fitted rates over nested perturbed meshes.
    Convergence {
        #[arg(long, value_enum)]
        study: Study,
        #[command(flatten)]
        element: ElementArgs,
        /// Number of meshes, N = 2, 4, 8, ...
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Quadrature degree for assembly; defaults depend on the study.
        #[arg(long)]
        quad_degree: Option<usize>,
    },
    /// JSON of system rows and nonzeros on an N×N structured mesh.
    Sparsity {
        #[command(flatten)]
        element: ElementArgs,
        /// Cells per side of the unit square.
        #[arg(long, default_value_t = 8)]
        mesh_size: usize,
        #[arg(long)]
        quad_degree: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Study {
    Biharmonic,
    #[value(alias = "stokes_sv", alias = "stokes-sv")]
    Stokes,
}

#[derive(Debug, Args)]
pub struct ElementArgs {
    /// Element family or short name: lagrange, dg, hct, hct3, hct-red, ps6, ps12, jm, as, sv.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub degree: Option<usize>,
    /// Split or variant: alfeld, iso, iso3, ps6, ps12, reduced.
    #[arg(long)]
    pub variant: Option<String>,
}

impl ElementArgs {
    pub fn spec(&self) -> Result<ElementSpec, CliError> {
        let name = self.name.as_deref().ok_or_else(|| CliError::Usage("--name is required".into()))?;
        Ok(ElementSpec::lookup(name, self.degree, self.variant.as_deref())?)
    }

    /// True when the arguments name the Scott–Vogelius pair, given either as
    /// `sv` or as its velocity element.
    pub fn is_scott_vogelius(&self) -> bool {
        match self.name.as_deref() {
            None => false,
            Some(n) if n.eq_ignore_ascii_case("sv") => self.variant.is_none() && self.degree.is_none_or(|k| k == 2),
            Some(_) => matches!(
                self.spec(),
                Ok(ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 2, continuity: macrotab_core::polyset::Continuity::C0 })
            ),
        }
    }
}

pub fn parse_split(s: &str) -> Result<SplitKind, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "none" => Ok(SplitKind::None),
        "alfeld" => Ok(SplitKind::Alfeld),
        "iso" | "iso2" => Ok(SplitKind::Iso(2)),
        "iso3" => Ok(SplitKind::Iso(3)),
        "ps6" => Ok(SplitKind::PowellSabin6),
        "ps12" => Ok(SplitKind::PowellSabin12),
        _ => Err(CliError::Usage(format!("unknown split '{s}'"))),
    }
}

/// Three vertices from `x0,y0,x1,y1,x2,y2`.
pub fn parse_cell(s: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let v = parse_floats(s)?;
    if v.len() != 6 {
        return Err(CliError::Usage(format!("--cell needs 6 numbers, got {}", v.len())));
    }
    Ok(v.chunks(2).map(<[f64]>::to_vec).collect())
}

pub fn parse_floats(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("'{t}' is not a number"))))
        .collect()
}

/// `--seed` unless the environment overrides it.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV}='{v}' is not an unsigned integer"))),
        Err(_) => Ok(flag.unwrap_or(DEFAULT_SEED)),
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(String),
}

impl CliError {
    /// 2 for bad input, 3 for numerical breakdown, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(Error::UnknownElement(_) | Error::Incompatible(_) | Error::InvalidArgument(_) | Error::InvalidSplit(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
