use serde::Serialize;

use super::CiarletElement;
use crate::{Error, Result};

/// Element-matrix work estimate `C = N_dof² · N_q^ref · |Δ(K)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CostModel {
    pub n_dof: u64,
    pub n_q_ref: u64,
    pub subcells: u64,
    pub c: u64,
}

impl CostModel {
    pub fn new(n_dof: u64, n_q_ref: u64, subcells: u64) -> Result<Self> {
        if n_q_ref == 0 {
            return Err(Error::InvalidArgument("reference rule needs at least one point".into()));
        }
        Ok(Self {
            n_dof,
            n_q_ref,
            subcells,
            c: n_dof * n_dof * n_q_ref * subcells,
        })
    }

    pub fn n_q(&self) -> u64 {
        self.n_q_ref * self.subcells
    }
}

pub fn cost(el: &CiarletElement, n_q_ref: u64) -> Result<CostModel> {
    CostModel::new(el.dim() as u64, n_q_ref, el.num_subcells() as u64)
}

/// Point counts of the Xiao–Gimbutas triangle rules exact to `degree`.
///
/// These are the published rule sizes; the crate's own collapsed rules are
/// larger and are not what the cost table assumes.
pub fn reference_rule_size(degree: usize) -> Option<u64> {
    const SIZES: [u64; 11] = [1, 1, 3, 6, 6, 7, 12, 15, 16, 19, 25];
    SIZES.get(degree).copied()
}

#[derive(Clone, Debug, Serialize)]
pub struct CostRow {
    pub element: String,
    pub degree: usize,
    pub n_dof: u64,
    pub subcells: u64,
    pub n_q_ref: u64,
    pub n_q: u64,
    pub c: u64,
}

/// Cost rows for PS6, PS12, HCT3, HCT4 and the quintic Argyris triangle,
/// each with a rule exact to twice the degree.
pub fn cost_table() -> Result<Vec<CostRow>> {
    use super::ElementSpec;
    use crate::complex::PowellSabin;
    let specs = [
        ("PS6", ElementSpec::PowellSabin(PowellSabin::Ps6)),
        ("PS12", ElementSpec::PowellSabin(PowellSabin::Ps12)),
        ("HCT3", ElementSpec::Hct { degree: 3, reduced: false }),
        ("HCT4", ElementSpec::Hct { degree: 4, reduced: false }),
    ];
    let mut rows = Vec::new();
    for (name, spec) in specs {
        let el = spec.build()?;
        let k = spec.degree();
        let nq = reference_rule_size(2 * k).expect("table covers degree 10");
        let m = cost(&el, nq)?;
        rows.push(row(name, k, m));
    }
    // Argyris is not a macroelement and is not built here; its 21 nodes are
    // 6 per vertex plus one normal derivative per edge.
    let argyris = CostModel::new(3 * 6 + 3, reference_rule_size(10).expect("degree 10 listed"), 1)?;
    rows.push(row("A5", 5, argyris));
    Ok(rows)
}

fn row(name: &str, degree: usize, m: CostModel) -> CostRow {
    CostRow {
        element: name.into(),
        degree,
        n_dof: m.n_dof,
        subcells: m.subcells,
        n_q_ref: m.n_q_ref,
        n_q: m.n_q(),
        c: m.c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let rows = cost_table().unwrap();
        let c: Vec<u64> = rows.iter().map(|r| r.c).collect();
        assert_eq!(c, vec![2916, 10368, 5184, 17328, 11025]);
        let hct3 = &rows[2];
        assert_eq!((hct3.degree, hct3.n_dof, hct3.subcells, hct3.n_q_ref, hct3.n_q), (3, 12, 3, 12, 36));
        assert!(CostModel::new(3, 0, 1).is_err());
    }
}
