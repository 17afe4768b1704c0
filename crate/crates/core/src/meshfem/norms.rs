use serde::Serialize;

use super::space::FeSpace;
use crate::quadrature::gauss_jacobi;
use crate::{Error, Result};

/// A discrete field made of one or more spaces sharing a mesh; each part
/// contributes its components in order. A product velocity space is two
/// parts over the same scalar space.
#[derive(Clone, Copy, Debug)]
pub struct Field<'a> {
    parts: &'a [(&'a FeSpace, &'a [f64])],
}

impl<'a> Field<'a> {
    pub fn new(parts: &'a [(&'a FeSpace, &'a [f64])]) -> Result<Self> {
        let Some((first, _)) = parts.first() else {
            return Err(Error::InvalidArgument("a field needs at least one part".into()));
        };
        for (s, u) in parts {
            if u.len() != s.ndofs() {
                return Err(Error::InvalidArgument(format!("coefficient vector has {} entries for {} dofs", u.len(), s.ndofs())));
            }
            if s.mesh().num_cells() != first.mesh().num_cells() {
                return Err(Error::InvalidArgument("field parts live on different meshes".into()));
            }
        }
        Ok(Self { parts })
    }

    fn space(&self) -> &FeSpace {
        self.parts[0].0
    }

    pub fn ncomp(&self) -> usize {
        self.parts.iter().map(|(s, _)| s.ncomp()).sum()
    }

    /// `[point][component][derivative]` on cell `c`.
    pub fn evaluate(&self, c: usize, points: &[Vec<f64>], hints: Option<&[Option<usize>]>, max_deriv: usize) -> Result<Vec<Vec<Vec<f64>>>> {
        let mut out: Vec<Vec<Vec<f64>>> = vec![Vec::new(); points.len()];
        for (s, u) in self.parts {
            let vals = s.evaluate(c, u, points, hints, max_deriv)?;
            for (o, v) in out.iter_mut().zip(vals) {
                o.extend(v);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ErrorNorms {
    pub l2: f64,
    /// Full `H¹` norm.
    pub h1: f64,
    /// Full broken `H²` norm.
    pub h2: f64,
}

/// Errors against `exact(x, alpha, component)` with a macro rule of degree
/// `2k + 2` on every cell.
pub fn error_norms(field: &Field, exact: impl Fn(&[f64], &[usize], usize) -> f64) -> Result<ErrorNorms> {
    let space = field.space();
    let degree = 2 * space.spec().degree() + 2;
    let mut sums = [0.0; 3];
    for c in 0..space.mesh().num_cells() {
        let rule = space.cell_rule(c, degree)?;
        let hints = rule.cell_hints();
        let vals = field.evaluate(c, rule.points(), Some(&hints), 2)?;
        let derivs = crate::polyset::multi_indices(2, 2);
        for ((x, w), v) in rule.points().iter().zip(rule.weights()).zip(&vals) {
            for (comp, vc) in v.iter().enumerate() {
                for (k, alpha) in derivs.iter().enumerate() {
                    let e = vc[k] - exact(x, alpha, comp);
                    sums[alpha.iter().sum::<usize>()] += w * e * e;
                }
            }
        }
    }
    Ok(ErrorNorms {
        l2: sums[0].sqrt(),
        h1: (sums[0] + sums[1]).sqrt(),
        h2: (sums[0] + sums[1] + sums[2]).sqrt(),
    })
}

/// Divergence functional: cell terms and the normal-jump audit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct DivNorm {
    /// `(Σ_K ‖div u‖²_K)^{1/2}`.
    pub cell: f64,
    /// `(Σ_e h_e^{-1} ‖⟦u·n⟧‖²_e)^{1/2}` over interior edges.
    pub jump: f64,
    pub total: f64,
}

/// `(Σ_K ‖div u‖²_K + Σ_e h_e^{-1}‖⟦u·n⟧‖²_e)^{1/2}` for a two-component field.
pub fn div_norm(field: &Field) -> Result<DivNorm> {
    if field.ncomp() != 2 {
        return Err(Error::Incompatible(format!("divergence needs 2 components, field has {}", field.ncomp())));
    }
    let space = field.space();
    let mesh = space.mesh();
    let degree = 2 * space.spec().degree() + 2;
    let mut cell = 0.0;
    for c in 0..mesh.num_cells() {
        let rule = space.cell_rule(c, degree)?;
        let hints = rule.cell_hints();
        let vals = field.evaluate(c, rule.points(), Some(&hints), 1)?;
        for (w, v) in rule.weights().iter().zip(&vals) {
            let div = v[0][1] + v[1][2];
            cell += w * div * div;
        }
    }
    let (s, ws) = gauss_jacobi(space.spec().degree() + 2, 0.0, 0.0);
    let mut jump = 0.0;
    for e in 0..mesh.num_edges() {
        let cells = mesh.edge_cells(e);
        if cells.len() != 2 {
            continue;
        }
        let [a, b] = mesh.edges()[e].map(|v| mesh.vertices()[v]);
        let len = mesh.edge_length(e);
        let n = mesh.edge_normal(e);
        let pts: Vec<Vec<f64>> = s
            .iter()
            .map(|&t| {
                let l = 0.5 * (t + 1.0);
                vec![a[0] + l * (b[0] - a[0]), a[1] + l * (b[1] - a[1])]
            })
            .collect();
        let u0 = field.evaluate(cells[0], &pts, None, 0)?;
        let u1 = field.evaluate(cells[1], &pts, None, 0)?;
        let mut sum = 0.0;
        for (q, w) in ws.iter().enumerate() {
            let d = (u0[q][0][0] - u1[q][0][0]) * n[0] + (u0[q][1][0] - u1[q][1][0]) * n[1];
            sum += 0.5 * len * w * d * d;
        }
        jump += sum / len;
    }
    Ok(DivNorm {
        cell: cell.sqrt(),
        jump: jump.sqrt(),
        total: (cell + jump).sqrt(),
    })
}

/// Field values on both sides of every interior edge at `samples`
/// equispaced interior points, passed to `visit(edge, side0, side1)`.
fn for_each_interface(field: &Field, samples: usize, max_deriv: usize, mut visit: impl FnMut(usize, &[Vec<Vec<f64>>], &[Vec<Vec<f64>>])) -> Result<()> {
    let mesh = field.space().mesh();
    for e in 0..mesh.num_edges() {
        let cells = mesh.edge_cells(e);
        if cells.len() != 2 {
            continue;
        }
        let [a, b] = mesh.edges()[e].map(|v| mesh.vertices()[v]);
        let pts: Vec<Vec<f64>> = (1..=samples)
            .map(|i| {
                let t = i as f64 / (samples + 1) as f64;
                vec![a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
            })
            .collect();
        let u0 = field.evaluate(cells[0], &pts, None, max_deriv)?;
        let u1 = field.evaluate(cells[1], &pts, None, max_deriv)?;
        visit(e, &u0, &u1);
    }
    Ok(())
}

/// Largest jump of any component or partial derivative up to `max_deriv`
/// across interior edges.
pub fn max_interface_jump(field: &Field, samples: usize, max_deriv: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for_each_interface(field, samples, max_deriv, |_, u0, u1| {
        for (p0, p1) in u0.iter().zip(u1) {
            for (c0, c1) in p0.iter().zip(p1) {
                for (v0, v1) in c0.iter().zip(c1) {
                    worst = worst.max((v0 - v1).abs());
                }
            }
        }
    })?;
    Ok(worst)
}

/// Largest jump of `τn` across interior edges for a symmetric tensor field
/// stored as `(xx, xy, yy)`.
pub fn max_tensor_normal_jump(field: &Field, samples: usize) -> Result<f64> {
    if field.ncomp() != 3 {
        return Err(Error::Incompatible(format!("τn needs 3 tensor components, field has {}", field.ncomp())));
    }
    let mesh = field.space().mesh();
    let mut worst = 0.0f64;
    for_each_interface(field, samples, 0, |e, u0, u1| {
        let n = mesh.edge_normal(e);
        for (p0, p1) in u0.iter().zip(u1) {
            let d: Vec<f64> = (0..3).map(|c| p0[c][0] - p1[c][0]).collect();
            let tn = [d[0] * n[0] + d[1] * n[1], d[1] * n[0] + d[2] * n[1]];
            worst = worst.max(tn[0].abs()).max(tn[1].abs());
        }
    })?;
    Ok(worst)
}

/// `rate_i = log(e_i / e_{i+1}) / log(h_i / h_{i+1})` between successive levels.
pub fn convergence_rates(levels: &[(f64, f64)]) -> Result<Vec<f64>> {
    if levels.len() < 2 {
        return Err(Error::InvalidArgument("rates need at least two levels".into()));
    }
    if let Some(i) = levels.iter().position(|&(_, e)| e == 0.0) {
        return Err(Error::ZeroError(i));
    }
    Ok(levels.windows(2).map(|w| (w[0].1 / w[1].1).ln() / (w[0].0 / w[1].0).ln()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let hs = [0.5, 0.25, 0.125];
        let sq: Vec<(f64, f64)> = hs.iter().map(|&h| (h, h * h)).collect();
        assert!(convergence_rates(&sq).unwrap().iter().all(|r| (r - 2.0).abs() < 1e-12));
        let q: Vec<(f64, f64)> = hs.iter().map(|&h| (h, 3.0 * h.powi(4))).collect();
        assert!(convergence_rates(&q).unwrap().iter().all(|r| (r - 4.0).abs() < 1e-12));
        assert!(matches!(convergence_rates(&[(1.0, 1.0), (0.5, 0.0)]), Err(Error::ZeroError(1))));
        assert!(convergence_rates(&[(1.0, 1.0)]).is_err());
    }
}
