//! Nodes as discretized functionals, and the generalized Vandermonde solve.
//!
//! A functional is a finite sum `Σ w · ∂^α p_c(x)` over terms; moments carry
//! their quadrature in the terms. Terms may pin the subcell used for
//! evaluation, which is how one-sided traces and jumps are expressed.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::complex::{EntityId, SimplicialComplex, SplitSimplicialComplex};
use crate::linalg::{condition_number, near_null_vector};
use crate::polyset::{dubiner_degree, dubiner_tabulate, jacobi_with_derivative, multi_indices, ExpansionSet, TabulatedValues};
use crate::quadrature::facet_rule;
use crate::{Error, Result};

/// Vandermonde matrices above this condition number are rejected.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub point: Vec<f64>,
    pub deriv: Vec<usize>,
    pub component: usize,
    pub weight: f64,
    /// Subcell to evaluate from; `None` uses the smallest containing subcell.
    pub cell: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NodeLabel {
    PointEval,
    PointDeriv,
    GradientComponent,
    TraceMoment,
    NormalDerivMoment,
    TangentialDerivMoment,
    ComponentMoment,
    PointDivergence,
    Jump,
}

/// How a node changes sign when an edge's tangent or normal is reversed.
///
/// Reversing the tangent multiplies the node by `(-1)^tangent_power`;
/// reversing the normal multiplies it by `(-1)^normal_power`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Orientation {
    pub tangent: Option<Vec<f64>>,
    pub normal: Option<Vec<f64>>,
    pub tangent_power: u32,
    pub normal_power: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Functional {
    pub terms: Vec<Term>,
    pub label: NodeLabel,
    /// Entity of the unsplit cell the node belongs to.
    pub entity: EntityId,
    /// Representative location, used to order nodes shared between cells.
    pub anchor: Vec<f64>,
    pub orientation: Orientation,
}

impl Functional {
    /// Apply to a function given by its partial derivatives `f(x, alpha, component)`.
    pub fn apply(&self, f: impl Fn(&[f64], &[usize], usize) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight * f(&t.point, &t.deriv, t.component))
            .sum()
    }

    pub fn with_label(mut self, label: NodeLabel) -> Self {
        self.label = label;
        self
    }

    pub fn with_entity(mut self, entity: EntityId) -> Self {
        self.entity = entity;
        self
    }

    pub fn max_deriv(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.deriv.iter().sum::<usize>())
            .max()
            .unwrap_or(0)
    }

    fn point_node(split: &SplitSimplicialComplex, v: &[f64], terms: Vec<Term>, label: NodeLabel) -> Result<Self> {
        Ok(Self {
            terms,
            label,
            entity: entity_of_point(split, v)?,
            anchor: v.to_vec(),
            orientation: Orientation::default(),
        })
    }
}

/// Lowest-dimensional parent entity whose closure holds `v`.
pub fn entity_of_point(split: &SplitSimplicialComplex, v: &[f64]) -> Result<EntityId> {
    let parent = split.parent();
    if v.len() != parent.dim() {
        return Err(Error::InvalidArgument(format!("point {v:?} has wrong dimension")));
    }
    let lam = parent.cell_map(0).barycentric(v);
    if lam.iter().any(|&l| l < -crate::complex::CONTAINMENT_TOL) {
        return Err(Error::PointOutside(v.to_vec()));
    }
    let support: Vec<usize> = lam
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > crate::complex::CONTAINMENT_TOL)
        .map(|(i, _)| i)
        .collect();
    parent
        .find_entity(&support)
        .ok_or_else(|| Error::PointOutside(v.to_vec()))
}

fn zero_alpha(d: usize) -> Vec<usize> {
    vec![0; d]
}

fn unit_alpha(d: usize, i: usize) -> Vec<usize> {
    let mut a = vec![0; d];
    a[i] = 1;
    a
}

/// `p ↦ p_component(v)`.
pub fn point_eval_component(split: &SplitSimplicialComplex, v: &[f64], component: usize) -> Result<Functional> {
    let d = split.dim();
    let t = Term {
        point: v.to_vec(),
        deriv: zero_alpha(d),
        component,
        weight: 1.0,
        cell: None,
    };
    Functional::point_node(split, v, vec![t], NodeLabel::PointEval)
}

/// `p ↦ p(v)`.
pub fn point_eval(split: &SplitSimplicialComplex, v: &[f64]) -> Result<Functional> {
    point_eval_component(split, v, 0)
}

/// `p ↦ ∂p/∂x_i (v)`.
pub fn gradient_component(split: &SplitSimplicialComplex, v: &[f64], i: usize) -> Result<Functional> {
    let t = Term {
        point: v.to_vec(),
        deriv: unit_alpha(split.dim(), i),
        component: 0,
        weight: 1.0,
        cell: None,
    };
    Functional::point_node(split, v, vec![t], NodeLabel::GradientComponent)
}

/// `p ↦ s · ∇p(v)`.
pub fn point_directional_deriv(split: &SplitSimplicialComplex, v: &[f64], s: &[f64]) -> Result<Functional> {
    if s.iter().all(|&c| c == 0.0) {
        return Err(Error::InvalidArgument("zero direction vector".into()));
    }
    let d = split.dim();
    let terms = (0..d)
        .filter(|&i| s[i] != 0.0)
        .map(|i| Term {
            point: v.to_vec(),
            deriv: unit_alpha(d, i),
            component: 0,
            weight: s[i],
            cell: None,
        })
        .collect();
    Functional::point_node(split, v, terms, NodeLabel::PointDeriv)
}

/// `u ↦ div u(v)` averaged over the subcells meeting at `v`.
pub fn point_divergence(split: &SplitSimplicialComplex, v: &[f64]) -> Result<Functional> {
    let d = split.dim();
    let cells = split.child().cells_containing(v);
    if cells.is_empty() {
        return Err(Error::PointOutside(v.to_vec()));
    }
    let w = 1.0 / cells.len() as f64;
    let mut terms = Vec::new();
    for &c in &cells {
        for i in 0..d {
            terms.push(Term {
                point: v.to_vec(),
                deriv: unit_alpha(d, i),
                component: i,
                weight: w,
                cell: Some(c),
            });
        }
    }
    Functional::point_node(split, v, terms, NodeLabel::PointDivergence)
}

/// Where a moment integrates.
#[derive(Clone, Copy, Debug)]
pub enum MomentDomain {
    /// A parent entity, tiled by the child entities lying in it.
    Parent(EntityId),
    /// A single child entity, optionally evaluated from a chosen subcell.
    Child(EntityId, Option<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentWeight {
    Constant,
    /// `P_n^{(α,β)}(ŝ)` along the oriented edge.
    Jacobi { alpha: usize, beta: usize, n: usize },
    /// `d/ds P_n^{(α,β)}(ŝ)` with `s` the arclength.
    JacobiArcDerivative { alpha: usize, beta: usize, n: usize },
    /// Unit-simplex Dubiner member composed with the domain cell's affine map.
    Dubiner(usize),
}

impl MomentWeight {
    pub fn degree(&self, dim: usize) -> usize {
        match *self {
            MomentWeight::Constant => 0,
            MomentWeight::Jacobi { n, .. } => n,
            MomentWeight::JacobiArcDerivative { n, .. } => n.saturating_sub(1),
            MomentWeight::Dubiner(i) => dubiner_degree(dim, i),
        }
    }

    /// Sign exponent picked up when the parametrization direction flips.
    fn parity(&self) -> u32 {
        match *self {
            MomentWeight::Jacobi { n, .. } => n as u32,
            MomentWeight::JacobiArcDerivative { n, .. } => (n as u32).saturating_sub(1),
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentKind {
    /// Component `c` of the function.
    Value(usize),
    NormalDeriv,
    TangentialDeriv,
    /// `u · n` for vector fields.
    VectorNormal,
    /// `(τ n)_row` for symmetric tensors stored as (xx, xy, yy).
    TensorNormal(usize),
    /// `div u` for vector fields.
    Divergence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    Raw,
    Average,
}

struct Piece {
    entity: EntityId,
    cell: Option<usize>,
}

/// Integral moment `∫_f q · (op p)` discretized with an exact rule.
///
/// The rule is exact for `deg q + element_degree`, rounded up to even.
pub fn moment(
    split: &SplitSimplicialComplex,
    domain: MomentDomain,
    weight: MomentWeight,
    kind: MomentKind,
    normalization: Normalization,
    element_degree: usize,
) -> Result<Functional> {
    let d = split.dim();
    let child = split.child();
    let parent = split.parent();
    let (owner, geo_pts, pieces, parent_entity, frame): (&SimplicialComplex, Vec<Vec<f64>>, Vec<Piece>, EntityId, Option<(Vec<f64>, Vec<f64>)>) =
        match domain {
            MomentDomain::Parent(pe) => {
                let pts: Vec<Vec<f64>> = parent.entity_points(pe)?.iter().map(|p| p.to_vec()).collect();
                if pe.0 == 0 {
                    return Err(Error::InvalidArgument("moments need an entity of dimension >= 1".into()));
                }
                let pieces = split
                    .children_in(pe, pe.0)
                    .into_iter()
                    .map(|id| Piece {
                        entity: (pe.0, id),
                        cell: if pe.0 == d {
                            Some(id)
                        } else if pe.0 == d - 1 {
                            Some(child.facet_cells(id)[0])
                        } else {
                            None
                        },
                    })
                    .collect();
                let frame = (pe.0 == d - 1).then(|| {
                    let f = parent.facet_frame(pe.1);
                    (f.normal, f.tangents.first().cloned().unwrap_or_default())
                });
                (parent, pts, pieces, pe, frame)
            }
            MomentDomain::Child(ce, cell) => {
                let pts: Vec<Vec<f64>> = child.entity_points(ce)?.iter().map(|p| p.to_vec()).collect();
                if ce.0 == 0 {
                    return Err(Error::InvalidArgument("moments need an entity of dimension >= 1".into()));
                }
                let cell = cell.or(if ce.0 == d { Some(ce.1) } else { None });
                let frame = (ce.0 == d - 1).then(|| {
                    let f = child.facet_frame(ce.1);
                    (f.normal, f.tangents.first().cloned().unwrap_or_default())
                });
                (child, pts, vec![Piece { entity: ce, cell }], split.parent_entity_of(ce), frame)
            }
        };
    let edim = match domain {
        MomentDomain::Parent(e) | MomentDomain::Child(e, _) => e.0,
    };
    let needs_frame = matches!(
        kind,
        MomentKind::NormalDeriv | MomentKind::TangentialDeriv | MomentKind::VectorNormal | MomentKind::TensorNormal(_)
    );
    if needs_frame && frame.is_none() {
        return Err(Error::InvalidArgument("moment kind needs a facet frame".into()));
    }
    let is_edge_weight = matches!(weight, MomentWeight::Jacobi { .. } | MomentWeight::JacobiArcDerivative { .. });
    if is_edge_weight && edim != 1 {
        return Err(Error::InvalidArgument("Jacobi weights live on edges".into()));
    }
    let measure = crate::complex::simplex_measure(&geo_pts.iter().map(|p| p.as_slice()).collect::<Vec<_>>());
    let qdeg = {
        let q = weight.degree(edim) + element_degree;
        q + q % 2
    };
    let scale = match normalization {
        Normalization::Raw => 1.0,
        Normalization::Average => 1.0 / measure,
    };
    let domain_map = if edim == d {
        Some(owner.cell_map(match domain {
            MomentDomain::Parent(_) => 0,
            MomentDomain::Child(ce, _) => ce.1,
        }))
    } else {
        None
    };
    let eval_weight = |x: &[f64]| -> f64 {
        match weight {
            MomentWeight::Constant => 1.0,
            MomentWeight::Jacobi { alpha, beta, n } | MomentWeight::JacobiArcDerivative { alpha, beta, n } => {
                let t: Vec<f64> = (0..d).map(|k| geo_pts[1][k] - geo_pts[0][k]).collect();
                let s: f64 = (0..d).map(|k| (x[k] - geo_pts[0][k]) * t[k]).sum::<f64>() / (measure * measure);
                let shat = 2.0 * s - 1.0;
                let (p, dp) = jacobi_with_derivative(n, alpha as f64, beta as f64, shat);
                if matches!(weight, MomentWeight::Jacobi { .. }) {
                    p
                } else {
                    dp * 2.0 / measure
                }
            }
            MomentWeight::Dubiner(i) => {
                let xh = domain_map.expect("dubiner weights need a cell domain").to_reference(x);
                let deg = dubiner_degree(d, i);
                dubiner_tabulate(d, deg, &[xh], 0).expect("dimension checked").get(0, i, 0, 0)
            }
        }
    };
    let (n, t) = frame.clone().unwrap_or_default();
    let mut terms = Vec::new();
    for piece in &pieces {
        let rule = facet_rule(child, piece.entity, qdeg)?;
        for (x, w) in rule.points().iter().zip(rule.weights()) {
            let wq = w * scale * eval_weight(x);
            let mut push = |alpha: Vec<usize>, comp: usize, c: f64| {
                if c != 0.0 {
                    terms.push(Term {
                        point: x.clone(),
                        deriv: alpha,
                        component: comp,
                        weight: wq * c,
                        cell: piece.cell,
                    });
                }
            };
            match kind {
                MomentKind::Value(c) => push(zero_alpha(d), c, 1.0),
                MomentKind::NormalDeriv => (0..d).for_each(|i| push(unit_alpha(d, i), 0, n[i])),
                MomentKind::TangentialDeriv => (0..d).for_each(|i| push(unit_alpha(d, i), 0, t[i])),
                MomentKind::VectorNormal => (0..d).for_each(|i| push(zero_alpha(d), i, n[i])),
                MomentKind::TensorNormal(row) => {
                    // (τn)_0 = τxx nx + τxy ny, (τn)_1 = τxy nx + τyy ny
                    if row == 0 {
                        push(zero_alpha(d), 0, n[0]);
                        push(zero_alpha(d), 1, n[1]);
                    } else {
                        push(zero_alpha(d), 1, n[0]);
                        push(zero_alpha(d), 2, n[1]);
                    }
                }
                MomentKind::Divergence => (0..d).for_each(|i| push(unit_alpha(d, i), i, 1.0)),
            }
        }
    }
    let label = match kind {
        MomentKind::Value(_) if edim == d => NodeLabel::ComponentMoment,
        MomentKind::Value(_) => NodeLabel::TraceMoment,
        MomentKind::NormalDeriv => NodeLabel::NormalDerivMoment,
        MomentKind::TangentialDeriv => NodeLabel::TangentialDerivMoment,
        _ => NodeLabel::ComponentMoment,
    };
    let uses_normal = matches!(kind, MomentKind::NormalDeriv | MomentKind::VectorNormal | MomentKind::TensorNormal(_));
    let orientation = if frame.is_some() {
        Orientation {
            tangent: Some(t),
            normal: Some(n),
            tangent_power: weight.parity() + u32::from(kind == MomentKind::TangentialDeriv),
            normal_power: u32::from(uses_normal),
        }
    } else {
        Orientation::default()
    };
    let anchor = {
        let k = geo_pts.len() as f64;
        (0..d).map(|i| geo_pts.iter().map(|p| p[i]).sum::<f64>() / k).collect()
    };
    Ok(Functional {
        terms,
        label,
        entity: parent_entity,
        anchor,
        orientation,
    })
}

/// `ℓ(p) = base(p|τ⁺) − base(p|τ⁻)` across an interior facet, `τ⁺` the lower id.
pub fn jump_functional(complex: &SimplicialComplex, facet: usize, base: &Functional) -> Result<Functional> {
    let d = complex.dim();
    if facet >= complex.num_entities(d - 1) {
        return Err(Error::InvalidEntity { dim: d - 1, id: facet });
    }
    if !complex.is_interior_facet(facet) {
        return Err(Error::NotInterior { dim: d - 1, id: facet });
    }
    let cells = complex.facet_cells(facet);
    let (plus, minus) = (cells[0], cells[1]);
    let mut terms = Vec::with_capacity(2 * base.terms.len());
    for t in &base.terms {
        if !complex.cell_contains(plus, &t.point) || !complex.cell_contains(minus, &t.point) {
            return Err(Error::InvalidArgument(format!(
                "jump term at {:?} is off facet {facet}",
                t.point
            )));
        }
        terms.push(Term { cell: Some(plus), ..t.clone() });
        terms.push(Term {
            cell: Some(minus),
            weight: -t.weight,
            ..t.clone()
        });
    }
    Ok(Functional {
        terms,
        label: NodeLabel::Jump,
        entity: base.entity,
        anchor: base.anchor.clone(),
        orientation: Orientation::default(),
    })
}

fn interior_facets(complex: &SimplicialComplex) -> impl Iterator<Item = usize> + '_ {
    let d = complex.dim();
    (0..complex.num_entities(d - 1)).filter(move |&f| complex.is_interior_facet(f))
}

/// Treat a child complex as its own split for functional construction.
fn self_split(complex: &SimplicialComplex) -> Result<SplitSimplicialComplex> {
    // Every split keeps the parent vertices first.
    let d = complex.dim();
    let hull = SimplicialComplex::simplex(complex.vertices()[..=d].to_vec())?;
    SplitSimplicialComplex::from_parts(hull, complex.clone())
}

/// Value jumps against `P_j`, `j ≤ k`, and normal-derivative jumps against
/// `P_j`, `j ≤ k−1`, on every interior edge.
pub fn c1_jump_constraints(complex: &SimplicialComplex, k: usize) -> Result<Vec<Functional>> {
    let split = self_split(complex)?;
    let d = complex.dim();
    let mut out = Vec::new();
    for f in interior_facets(complex) {
        for j in 0..k {
            let w = MomentWeight::Jacobi { alpha: 0, beta: 0, n: j };
            let base = moment(&split, MomentDomain::Child((d - 1, f), None), w, MomentKind::NormalDeriv, Normalization::Raw, k)?;
            out.push(jump_functional(complex, f, &base)?);
        }
        for j in 0..=k {
            let w = MomentWeight::Jacobi { alpha: 0, beta: 0, n: j };
            let base = moment(&split, MomentDomain::Child((d - 1, f), None), w, MomentKind::Value(0), Normalization::Raw, k)?;
            out.push(jump_functional(complex, f, &base)?);
        }
    }
    Ok(out)
}

/// Jumps of every partial derivative of order ≤ `order` at `point`, across
/// each interior facet whose closure holds the point.
pub fn supersmooth_constraints(complex: &SimplicialComplex, point: &[f64], order: usize) -> Result<Vec<Functional>> {
    let split = self_split(complex)?;
    let d = complex.dim();
    let mut out = Vec::new();
    for f in interior_facets(complex) {
        let cells = complex.facet_cells(f);
        if !complex.cell_contains(cells[0], point) || !complex.cell_contains(cells[1], point) {
            continue;
        }
        for alpha in multi_indices(d, order) {
            let base = Functional {
                terms: vec![Term {
                    point: point.to_vec(),
                    deriv: alpha,
                    component: 0,
                    weight: 1.0,
                    cell: None,
                }],
                label: NodeLabel::PointDeriv,
                entity: entity_of_point(&split, point)?,
                anchor: point.to_vec(),
                orientation: Orientation::default(),
            };
            out.push(jump_functional(complex, f, &base)?);
        }
    }
    Ok(out)
}

/// Jumps of a moment kind against `P_j`, `j ≤ max_j`, on every interior edge.
pub fn moment_jump_constraints(complex: &SimplicialComplex, kind: MomentKind, max_j: usize, degree: usize) -> Result<Vec<Functional>> {
    let split = self_split(complex)?;
    let d = complex.dim();
    let mut out = Vec::new();
    for f in interior_facets(complex) {
        for j in 0..=max_j {
            let w = MomentWeight::Jacobi { alpha: 0, beta: 0, n: j };
            let base = moment(&split, MomentDomain::Child((d - 1, f), None), w, kind, Normalization::Raw, degree)?;
            out.push(jump_functional(complex, f, &base)?);
        }
    }
    Ok(out)
}

/// Matrix `L_ij = ℓ_i(p_j)` of functionals against an expansion set.
pub fn evaluate_functionals(functionals: &[Functional], exp: &ExpansionSet) -> Result<DMatrix<f64>> {
    evaluate_with(functionals, |pts, hints, order| exp.tabulate(pts, Some(hints), order))
}

/// Apply functionals to any basis given by a tabulation callback
/// `(points, cell hints, max derivative order) -> values`.
pub fn evaluate_with(
    functionals: &[Functional],
    tabulate: impl FnOnce(&[Vec<f64>], &[Option<usize>], usize) -> Result<TabulatedValues>,
) -> Result<DMatrix<f64>> {
    let mut keys: HashMap<(Vec<u64>, Option<usize>), usize> = HashMap::new();
    let mut points = Vec::new();
    let mut hints = Vec::new();
    let mut max_deriv = 0;
    for f in functionals {
        max_deriv = max_deriv.max(f.max_deriv());
        for t in &f.terms {
            let key = (t.point.iter().map(|x| x.to_bits()).collect(), t.cell);
            keys.entry(key).or_insert_with(|| {
                points.push(t.point.clone());
                hints.push(t.cell);
                points.len() - 1
            });
        }
    }
    let tab = tabulate(&points, &hints, max_deriv)?;
    let nb = tab.nbasis();
    let mut l = DMatrix::zeros(functionals.len(), nb);
    for (i, f) in functionals.iter().enumerate() {
        for t in &f.terms {
            let key = (t.point.iter().map(|x| x.to_bits()).collect::<Vec<_>>(), t.cell);
            let p = keys[&key];
            let k = tab
                .deriv_index(&t.deriv)
                .ok_or_else(|| Error::InvalidArgument(format!("bad derivative {:?}", t.deriv)))?;
            for j in 0..nb {
                l[(i, j)] += t.weight * tab.get(k, j, p, t.component);
            }
        }
    }
    Ok(l)
}

#[derive(Clone, Debug)]
pub struct DualSet {
    nodes: Vec<Functional>,
    entity_dofs: BTreeMap<EntityId, Vec<usize>>,
}

impl DualSet {
    pub fn new(nodes: Vec<Functional>) -> Self {
        let mut entity_dofs: BTreeMap<EntityId, Vec<usize>> = BTreeMap::new();
        for (i, n) in nodes.iter().enumerate() {
            entity_dofs.entry(n.entity).or_default().push(i);
        }
        Self { nodes, entity_dofs }
    }

    pub fn nodes(&self) -> &[Functional] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn entity_dofs(&self) -> &BTreeMap<EntityId, Vec<usize>> {
        &self.entity_dofs
    }
}

#[derive(Clone, Debug)]
pub struct Vandermonde {
    /// `V_ij = n_i(p_j)`.
    pub matrix: DMatrix<f64>,
    pub cond: f64,
    /// `A = V^{-T}`, so the nodal basis is `φ_i = Σ_j A_ij p_j`.
    pub coeffs: DMatrix<f64>,
}

pub fn vandermonde(dual: &DualSet, exp: &ExpansionSet) -> Result<Vandermonde> {
    if dual.len() != exp.size() {
        return Err(Error::InvalidArgument(format!(
            "{} nodes for an expansion of size {}",
            dual.len(),
            exp.size()
        )));
    }
    let v = evaluate_functionals(dual.nodes(), exp)?;
    let cond = condition_number(&v);
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Err(Error::NotUnisolvent {
            cond,
            null_vector: near_null_vector(&v),
        });
    }
    let inv = v.clone().try_inverse().ok_or_else(|| Error::NotUnisolvent {
        cond,
        null_vector: near_null_vector(&v),
    })?;
    Ok(Vandermonde {
        matrix: v,
        cond,
        coeffs: inv.transpose(),
    })
}
