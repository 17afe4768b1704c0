//! Element catalogue: Ciarlet triples built from an expansion set, a node
//! list and a generalized Vandermonde solve.

mod cost;

pub use cost::{cost, cost_table, reference_rule_size, CostModel, CostRow};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::complex::{reference_simplex, PowellSabin, SimplicialComplex, SplitKind, SplitSimplicialComplex};
use crate::dualset::{
    c1_jump_constraints, evaluate_functionals, gradient_component, moment, moment_jump_constraints,
    point_divergence, point_eval, point_eval_component, supersmooth_constraints, vandermonde, DualSet,
    Functional, MomentDomain, MomentKind, MomentWeight, Normalization, NodeLabel,
};
use crate::polyset::{dubiner_dim, macro_expansion, Continuity, ExpansionSet, TabulatedValues};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ValueShape {
    Scalar,
    Vector(usize),
    /// Stored as the `d(d+1)/2` independent components, (xx, xy, yy) in 2D.
    SymmetricTensor(usize),
}

impl ValueShape {
    pub fn ncomp(&self) -> usize {
        match *self {
            ValueShape::Scalar => 1,
            ValueShape::Vector(d) => d,
            ValueShape::SymmetricTensor(d) => d * (d + 1) / 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MappingKind {
    Affine,
    HermiteType,
    HctType,
    PiolaDouble,
    OracleRebuild,
}

/// Parameters identifying a catalogue element independent of the cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementSpec {
    Lagrange { split: SplitKind, degree: usize, continuity: Continuity },
    Hct { degree: usize, reduced: bool },
    PowellSabin(PowellSabin),
    JohnsonMercier,
    AlfeldSorokina,
}

impl ElementSpec {
    /// Short name used in reports, e.g. `hct3`, `ps12`, `lagrange2-alfeld`.
    pub fn name(&self) -> String {
        match *self {
            ElementSpec::Lagrange { split, degree, continuity } => {
                let base = if continuity == Continuity::Dg { "dg" } else { "lagrange" };
                match split {
                    SplitKind::None => format!("{base}{degree}"),
                    SplitKind::Alfeld => format!("{base}{degree}-alfeld"),
                    SplitKind::Iso(l) => format!("{base}{degree}-iso{l}"),
                    SplitKind::PowellSabin6 => format!("{base}{degree}-ps6"),
                    SplitKind::PowellSabin12 => format!("{base}{degree}-ps12"),
                }
            }
            ElementSpec::Hct { reduced: true, .. } => "hct-red".into(),
            ElementSpec::Hct { degree, .. } => format!("hct{degree}"),
            ElementSpec::PowellSabin(PowellSabin::Ps6) => "ps6".into(),
            ElementSpec::PowellSabin(PowellSabin::Ps12) => "ps12".into(),
            ElementSpec::JohnsonMercier => "jm".into(),
            ElementSpec::AlfeldSorokina => "as".into(),
        }
    }

    pub fn degree(&self) -> usize {
        match *self {
            ElementSpec::Lagrange { degree, .. } | ElementSpec::Hct { degree, .. } => degree,
            ElementSpec::PowellSabin(_) | ElementSpec::AlfeldSorokina => 2,
            ElementSpec::JohnsonMercier => 1,
        }
    }

    /// Resolve a user-facing name. `name` is either a family (`lagrange`,
    /// `dg`, `hct`, `ps`, `jm`, `as`) completed by `degree` and `variant`, or a
    /// short name as produced by [`ElementSpec::name`]. Explicit `degree` and
    /// `variant` arguments must agree with a short name that already fixes them.
    pub fn lookup(name: &str, degree: Option<usize>, variant: Option<&str>) -> Result<ElementSpec> {
        let unknown = || Error::UnknownElement(Self::describe(name, degree, variant));
        let lower = name.trim().to_ascii_lowercase();
        let (head, suffix) = match lower.as_str() {
            "hct-red" | "hct-reduced" => ("hct", Some("reduced")),
            s => match s.split_once('-') {
                Some((h, v)) => (h, Some(v)),
                None => (s, None),
            },
        };
        let family = head.trim_end_matches(|c: char| c.is_ascii_digit());
        let digits = &head[family.len()..];
        // `ps6`/`ps12` name the split; elsewhere the digits are the degree.
        let named_degree = if digits.is_empty() || family == "ps" {
            None
        } else {
            Some(digits.parse::<usize>().map_err(|_| unknown())?)
        };
        let degree = merge(named_degree, degree).ok_or_else(unknown)?;
        let variant = merge(suffix.map(str::to_owned), variant.map(str::to_ascii_lowercase)).ok_or_else(unknown)?;
        let spec = match family {
            "lagrange" | "p" | "dg" => {
                let split = match variant.as_deref() {
                    None | Some("none") => SplitKind::None,
                    Some("alfeld") => SplitKind::Alfeld,
                    Some("iso") | Some("iso2") => SplitKind::Iso(2),
                    Some("iso3") => SplitKind::Iso(3),
                    Some("ps6") => SplitKind::PowellSabin6,
                    Some("ps12") => SplitKind::PowellSabin12,
                    Some(_) => return Err(unknown()),
                };
                let continuity = if family == "dg" { Continuity::Dg } else { Continuity::C0 };
                ElementSpec::Lagrange { split, degree: degree.unwrap_or(1), continuity }
            }
            "hct" => {
                let reduced = match variant.as_deref() {
                    None => false,
                    Some("reduced") | Some("red") => true,
                    Some(_) => return Err(unknown()),
                };
                ElementSpec::Hct { degree: degree.unwrap_or(3), reduced }
            }
            "ps" if degree.is_none_or(|k| k == 2) => {
                let which = match (digits, variant.as_deref()) {
                    ("6", None) | ("", None) | ("", Some("ps6")) => PowellSabin::Ps6,
                    ("12", None) | ("", Some("ps12")) => PowellSabin::Ps12,
                    _ => return Err(unknown()),
                };
                ElementSpec::PowellSabin(which)
            }
            "jm" if degree.is_none_or(|k| k == 1) && variant.is_none() => ElementSpec::JohnsonMercier,
            "as" if degree.is_none_or(|k| k == 2) && variant.is_none() => ElementSpec::AlfeldSorokina,
            _ => return Err(unknown()),
        };
        spec.validate().map_err(|_| unknown())?;
        Ok(spec)
    }

    fn describe(name: &str, degree: Option<usize>, variant: Option<&str>) -> String {
        let mut s = name.to_owned();
        if let Some(k) = degree {
            s.push_str(&format!(" degree {k}"));
        }
        if let Some(v) = variant {
            s.push_str(&format!(" variant {v}"));
        }
        s
    }

    /// Build on the reference triangle.
    pub fn build(&self) -> Result<CiarletElement> {
        self.build_on(reference_simplex(2)?.vertices())
    }

    pub fn split_kind(&self) -> SplitKind {
        match *self {
            ElementSpec::Lagrange { split, .. } => split,
            ElementSpec::PowellSabin(PowellSabin::Ps6) => SplitKind::PowellSabin6,
            ElementSpec::PowellSabin(PowellSabin::Ps12) => SplitKind::PowellSabin12,
            ElementSpec::Hct { .. } | ElementSpec::JohnsonMercier | ElementSpec::AlfeldSorokina => SplitKind::Alfeld,
        }
    }

    pub fn value_shape(&self) -> ValueShape {
        match *self {
            ElementSpec::JohnsonMercier => ValueShape::SymmetricTensor(2),
            ElementSpec::AlfeldSorokina => ValueShape::Vector(2),
            _ => ValueShape::Scalar,
        }
    }

    pub fn mapping_kind(&self) -> MappingKind {
        match *self {
            ElementSpec::Lagrange { .. } => MappingKind::Affine,
            ElementSpec::PowellSabin(PowellSabin::Ps6) => MappingKind::HermiteType,
            ElementSpec::PowellSabin(PowellSabin::Ps12) | ElementSpec::Hct { .. } => MappingKind::HctType,
            ElementSpec::JohnsonMercier => MappingKind::PiolaDouble,
            ElementSpec::AlfeldSorokina => MappingKind::OracleRebuild,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ElementSpec::Hct { degree, reduced } if degree < 3 || (reduced && degree != 3) => Err(Error::InvalidArgument(
                format!("no HCT element with degree {degree} (reduced: {reduced})"),
            )),
            ElementSpec::Lagrange { degree: 0, continuity: Continuity::C0, .. } => {
                Err(Error::InvalidArgument("C0 Lagrange needs degree >= 1".into()))
            }
            ElementSpec::Lagrange { continuity: Continuity::Constrained, .. } => {
                Err(Error::InvalidArgument("Lagrange continuity is C0 or DG".into()))
            }
            _ => Ok(()),
        }
    }

    /// The split cell and the nodes on it, without solving for the basis.
    pub fn dual_on(&self, vertices: &[Vec<f64>]) -> Result<(SplitSimplicialComplex, Vec<Functional>)> {
        self.validate()?;
        let cell = SimplicialComplex::simplex(vertices.to_vec())?;
        if cell.dim() != 2 {
            return Err(Error::UnsupportedDimension(cell.dim()));
        }
        let sp = self.split_kind().apply(&cell)?;
        let nodes = make_nodes(*self, &sp)?;
        Ok((sp, nodes))
    }

    /// Build directly on the simplex with the given vertices.
    pub fn build_on(&self, vertices: &[Vec<f64>]) -> Result<CiarletElement> {
        let (sp, nodes) = self.dual_on(vertices)?;
        let shape = self.value_shape();
        let mapping = self.mapping_kind();
        let exp = make_expansion(*self, &sp)?;
        if let ElementSpec::Hct { reduced: true, .. } = *self {
            let retained = nodes.len();
            let mut ext_nodes = nodes;
            ext_nodes.extend(reduced_hct_constraints(&sp)?);
            let ext = CiarletElement::assemble(
                ElementSpec::Hct { degree: 3, reduced: false },
                sp.clone(),
                shape,
                exp.clone(),
                ext_nodes.clone(),
                mapping,
            )?;
            let coeffs = ext.coeffs.rows(0, retained).into_owned();
            ext_nodes.truncate(retained);
            return Ok(CiarletElement {
                spec: *self,
                split: sp,
                value_shape: shape,
                expansion: exp,
                dual: DualSet::new(ext_nodes),
                coeffs,
                mapping_kind: mapping,
                cond: ext.cond,
                extended: Some(Box::new(ext)),
            });
        }
        CiarletElement::assemble(*self, sp, shape, exp, nodes, mapping)
    }
}

/// Combine a value fixed by a short name with an explicit one; `None` on conflict.
fn merge<T: PartialEq>(named: Option<T>, explicit: Option<T>) -> Option<Option<T>> {
    match (named, explicit) {
        (Some(a), Some(b)) if a != b => None,
        (a, b) => Some(a.or(b)),
    }
}

/// Every element exercised by the duality and dimension checks.
pub fn catalogue() -> Vec<ElementSpec> {
    vec![
        ElementSpec::Lagrange { split: SplitKind::None, degree: 1, continuity: Continuity::C0 },
        ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 2, continuity: Continuity::C0 },
        ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 3, continuity: Continuity::C0 },
        ElementSpec::Lagrange { split: SplitKind::Iso(2), degree: 1, continuity: Continuity::C0 },
        ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 1, continuity: Continuity::Dg },
        ElementSpec::PowellSabin(PowellSabin::Ps6),
        ElementSpec::PowellSabin(PowellSabin::Ps12),
        ElementSpec::Hct { degree: 3, reduced: false },
        ElementSpec::Hct { degree: 3, reduced: true },
        ElementSpec::Hct { degree: 4, reduced: false },
        ElementSpec::JohnsonMercier,
        ElementSpec::AlfeldSorokina,
    ]
}

/// A finite element `(K, P, N)` with its nodal basis.
#[derive(Clone, Debug)]
pub struct CiarletElement {
    spec: ElementSpec,
    split: SplitSimplicialComplex,
    value_shape: ValueShape,
    expansion: ExpansionSet,
    dual: DualSet,
    /// `dim × expansion.size()`; nodal basis `φ_i = Σ_j A_ij p_j`.
    coeffs: DMatrix<f64>,
    mapping_kind: MappingKind,
    cond: f64,
    /// For constrained spaces, the unconstrained element carrying the
    /// constraints as extra nodes after the retained ones.
    extended: Option<Box<CiarletElement>>,
}

impl CiarletElement {
    fn assemble(
        spec: ElementSpec,
        split: SplitSimplicialComplex,
        value_shape: ValueShape,
        expansion: ExpansionSet,
        nodes: Vec<Functional>,
        mapping_kind: MappingKind,
    ) -> Result<Self> {
        let dual = DualSet::new(nodes);
        let v = vandermonde(&dual, &expansion)?;
        Ok(Self {
            spec,
            split,
            value_shape,
            expansion,
            dual,
            coeffs: v.coeffs,
            mapping_kind,
            cond: v.cond,
            extended: None,
        })
    }

    pub fn spec(&self) -> ElementSpec {
        self.spec
    }

    pub fn name(&self) -> String {
        self.spec.name()
    }

    pub fn split(&self) -> &SplitSimplicialComplex {
        &self.split
    }

    /// The subdivided cell the basis is piecewise polynomial on.
    pub fn complex(&self) -> &SimplicialComplex {
        self.split.child()
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        self.split.parent().vertices()
    }

    pub fn degree(&self) -> usize {
        self.spec.degree()
    }

    pub fn value_shape(&self) -> ValueShape {
        self.value_shape
    }

    pub fn expansion(&self) -> &ExpansionSet {
        &self.expansion
    }

    pub fn dual(&self) -> &DualSet {
        &self.dual
    }

    pub fn coeffs(&self) -> &DMatrix<f64> {
        &self.coeffs
    }

    pub fn mapping_kind(&self) -> MappingKind {
        self.mapping_kind
    }

    /// Condition number of the Vandermonde matrix.
    pub fn cond(&self) -> f64 {
        self.cond
    }

    pub fn extended(&self) -> Option<&CiarletElement> {
        self.extended.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dual.len()
    }

    pub fn num_subcells(&self) -> usize {
        self.split.child().num_cells()
    }

    /// Nodal basis values and derivatives; points on internal facets use the
    /// smallest-id incident subcell.
    pub fn tabulate(&self, points: &[Vec<f64>], max_deriv: usize) -> Result<TabulatedValues> {
        self.tabulate_in(points, None, max_deriv)
    }

    pub fn tabulate_in(&self, points: &[Vec<f64>], cells: Option<&[Option<usize>]>, max_deriv: usize) -> Result<TabulatedValues> {
        Ok(self.expansion.tabulate(points, cells, max_deriv)?.transform_basis(&self.coeffs))
    }

    /// Node values of `f`, given through its partial derivatives `f(x, alpha, component)`.
    pub fn interpolate(&self, f: impl Fn(&[f64], &[usize], usize) -> f64) -> Vec<f64> {
        self.dual.nodes().iter().map(|n| n.apply(&f)).collect()
    }

    /// `max |n_i(φ_j) − δ_ij|`.
    pub fn duality_error(&self) -> Result<f64> {
        let v = evaluate_functionals(self.dual.nodes(), &self.expansion)?;
        let g = v * self.coeffs.transpose();
        Ok((g - DMatrix::identity(self.dim(), self.dim())).amax())
    }
}

fn vertex_hermite_nodes(split: &SplitSimplicialComplex) -> Result<Vec<Functional>> {
    let mut nodes = Vec::new();
    for v in 0..3 {
        let x = split.parent().vertex(v).to_vec();
        nodes.push(point_eval(split, &x)?);
        nodes.push(gradient_component(split, &x, 0)?);
        nodes.push(gradient_component(split, &x, 1)?);
    }
    Ok(nodes)
}

fn edge_normal_average(split: &SplitSimplicialComplex, e: usize, n: usize, degree: usize) -> Result<Functional> {
    moment(
        split,
        MomentDomain::Parent((1, e)),
        MomentWeight::Jacobi { alpha: 1, beta: 1, n },
        MomentKind::NormalDeriv,
        Normalization::Average,
        degree,
    )
}

fn make_expansion(spec: ElementSpec, sp: &SplitSimplicialComplex) -> Result<ExpansionSet> {
    match spec {
        ElementSpec::Lagrange { degree, continuity, .. } => macro_expansion(sp, degree, continuity),
        ElementSpec::PowellSabin(_) => c1_expansion(sp, 2, false),
        ElementSpec::Hct { degree, .. } => c1_expansion(sp, degree, true),
        ElementSpec::JohnsonMercier => {
            let base = ExpansionSet::dg(sp.child(), 1, 3);
            let mut constraints = Vec::new();
            for row in 0..2 {
                constraints.extend(moment_jump_constraints(sp.child(), MomentKind::TensorNormal(row), 1, 1)?);
            }
            ExpansionSet::constrained(&base, &constraints)
        }
        ElementSpec::AlfeldSorokina => {
            let base = ExpansionSet::c0(sp.child(), 2, 2)?;
            let constraints = moment_jump_constraints(sp.child(), MomentKind::Divergence, 1, 2)?;
            ExpansionSet::constrained(&base, &constraints)
        }
    }
}

fn c1_expansion(sp: &SplitSimplicialComplex, k: usize, supersmooth: bool) -> Result<ExpansionSet> {
    let base = macro_expansion(sp, k, Continuity::C0)?;
    let mut constraints = c1_jump_constraints(sp.child(), k)?;
    if supersmooth && k > 3 {
        let b = sp.child().vertex(3).to_vec();
        constraints.extend(supersmooth_constraints(sp.child(), &b, k - 1)?);
    }
    ExpansionSet::constrained(&base, &constraints)
}

fn make_nodes(spec: ElementSpec, sp: &SplitSimplicialComplex) -> Result<Vec<Functional>> {
    match spec {
        ElementSpec::Lagrange { degree, continuity, .. } => lagrange_nodes(sp, degree, continuity),
        ElementSpec::PowellSabin(PowellSabin::Ps6) | ElementSpec::Hct { reduced: true, .. } => vertex_hermite_nodes(sp),
        ElementSpec::PowellSabin(PowellSabin::Ps12) => {
            let mut nodes = vertex_hermite_nodes(sp)?;
            for e in 0..3 {
                nodes.push(edge_normal_average(sp, e, 0, 2)?);
            }
            Ok(nodes)
        }
        ElementSpec::Hct { degree, .. } => hct_nodes(sp, degree),
        ElementSpec::JohnsonMercier => johnson_mercier_nodes(sp),
        ElementSpec::AlfeldSorokina => alfeld_sorokina_nodes(sp),
    }
}

fn lagrange_nodes(sp: &SplitSimplicialComplex, k: usize, continuity: Continuity) -> Result<Vec<Functional>> {
    let child = sp.child();
    let d = child.dim();
    let mut nodes = Vec::new();
    if continuity == Continuity::Dg {
        for c in 0..child.num_cells() {
            for i in 0..dubiner_dim(d, k) {
                let m = moment(sp, MomentDomain::Child((d, c), None), MomentWeight::Dubiner(i), MomentKind::Value(0), Normalization::Average, k)?;
                nodes.push(m.with_entity((d, 0)));
            }
        }
        return Ok(nodes);
    }
    for v in 0..child.num_entities(0) {
        nodes.push(point_eval(sp, child.vertex(v))?);
    }
    for e in 0..child.num_entities(1) {
        for j in 0..k.saturating_sub(1) {
            let w = MomentWeight::Jacobi { alpha: 0, beta: 0, n: j };
            nodes.push(moment(sp, MomentDomain::Child((1, e), None), w, MomentKind::Value(0), Normalization::Average, k)?);
        }
    }
    if k > 2 {
        for c in 0..child.num_cells() {
            for i in 0..dubiner_dim(d, k - 3) {
                let m = moment(sp, MomentDomain::Child((d, c), None), MomentWeight::Dubiner(i), MomentKind::Value(0), Normalization::Average, k)?;
                nodes.push(m);
            }
        }
    }
    Ok(nodes)
}

/// Constraint nodes of the reduced cubic: averaged normal-derivative moments
/// against the degree-2 Legendre polynomial vanish on every edge.
pub(crate) fn reduced_hct_constraints(sp: &SplitSimplicialComplex) -> Result<Vec<Functional>> {
    (0..3)
        .map(|e| {
            moment(
                sp,
                MomentDomain::Parent((1, e)),
                MomentWeight::Jacobi { alpha: 0, beta: 0, n: 2 },
                MomentKind::NormalDeriv,
                Normalization::Average,
                3,
            )
        })
        .collect()
}

fn hct_nodes(sp: &SplitSimplicialComplex, k: usize) -> Result<Vec<Functional>> {
    let mut nodes = vertex_hermite_nodes(sp)?;
    for e in 0..3 {
        for i in 0..=k - 3 {
            nodes.push(edge_normal_average(sp, e, i, k)?);
        }
        for i in 1..=k - 3 {
            let w = MomentWeight::JacobiArcDerivative { alpha: 1, beta: 1, n: i };
            nodes.push(moment(sp, MomentDomain::Parent((1, e)), w, MomentKind::Value(0), Normalization::Raw, k)?);
        }
    }
    if k >= 4 {
        for i in 0..dubiner_dim(2, k - 4) {
            nodes.push(moment(sp, MomentDomain::Parent((2, 0)), MomentWeight::Dubiner(i), MomentKind::Value(0), Normalization::Raw, k)?);
        }
    }
    Ok(nodes)
}

fn johnson_mercier_nodes(sp: &SplitSimplicialComplex) -> Result<Vec<Functional>> {
    let mut nodes = Vec::new();
    for e in 0..3 {
        for j in 0..2 {
            let w = MomentWeight::Jacobi { alpha: 0, beta: 0, n: j };
            for row in 0..2 {
                nodes.push(moment(sp, MomentDomain::Parent((1, e)), w, MomentKind::TensorNormal(row), Normalization::Raw, 1)?);
            }
        }
    }
    for c in 0..3 {
        nodes.push(moment(sp, MomentDomain::Parent((2, 0)), MomentWeight::Constant, MomentKind::Value(c), Normalization::Average, 1)?);
    }
    Ok(nodes)
}

fn alfeld_sorokina_nodes(sp: &SplitSimplicialComplex) -> Result<Vec<Functional>> {
    let parent = sp.parent();
    let mut points: Vec<Vec<f64>> = parent.vertices().to_vec();
    for e in 0..3 {
        points.push(parent.entity_centroid((1, e))?);
    }
    let mut nodes = Vec::new();
    for x in &points {
        for c in 0..2 {
            nodes.push(point_eval_component(sp, x, c)?);
        }
    }
    for v in 0..3 {
        nodes.push(point_divergence(sp, parent.vertex(v))?);
    }
    Ok(nodes)
}

/// Labels of the nodes, in order.
pub fn node_labels(el: &CiarletElement) -> Vec<NodeLabel> {
    el.dual().nodes().iter().map(|n| n.label).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(el: &CiarletElement, n: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = el.vertices();
        (0..n)
            .map(|_| {
                let (mut a, mut b): (f64, f64) = (rng.random(), rng.random());
                if a + b > 1.0 {
                    (a, b) = (1.0 - a, 1.0 - b);
                }
                (0..2).map(|i| v[0][i] + a * (v[1][i] - v[0][i]) + b * (v[2][i] - v[0][i])).collect()
            })
            .collect()
    }

    #[test]
    fn lookup_resolves_names() {
        let alfeld2 = ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 2, continuity: Continuity::C0 };
        assert_eq!(ElementSpec::lookup("lagrange", Some(2), Some("alfeld")).unwrap(), alfeld2);
        assert_eq!(ElementSpec::lookup("lagrange2-alfeld", None, None).unwrap(), alfeld2);
        assert_eq!(ElementSpec::lookup("HCT", Some(3), None).unwrap(), ElementSpec::Hct { degree: 3, reduced: false });
        assert_eq!(ElementSpec::lookup("hct", None, Some("reduced")).unwrap(), ElementSpec::Hct { degree: 3, reduced: true });
        assert_eq!(ElementSpec::lookup("ps", None, Some("ps12")).unwrap(), ElementSpec::PowellSabin(PowellSabin::Ps12));
        assert_eq!(
            ElementSpec::lookup("lagrange", Some(1), Some("iso")).unwrap(),
            ElementSpec::Lagrange { split: SplitKind::Iso(2), degree: 1, continuity: Continuity::C0 }
        );
        for spec in catalogue() {
            assert_eq!(ElementSpec::lookup(&spec.name(), None, None).unwrap(), spec);
        }
    }

    #[test]
    fn lookup_rejects_unknown_and_conflicting() {
        for (name, degree, variant) in [
            ("bogus", None, None),
            ("hct3", Some(4), None),
            ("hct", Some(2), None),
            ("hct-red", Some(4), None),
            ("lagrange", Some(2), Some("ps9")),
            ("jm", Some(2), None),
            ("ps6", Some(3), None),
            ("ps6", None, Some("ps12")),
        ] {
            assert!(matches!(ElementSpec::lookup(name, degree, variant), Err(Error::UnknownElement(_))), "{name}");
        }
    }

    #[test]
    fn dimensions() {
        let cases = [
            (ElementSpec::PowellSabin(PowellSabin::Ps6), 9),
            (ElementSpec::PowellSabin(PowellSabin::Ps12), 12),
            (ElementSpec::Hct { degree: 3, reduced: false }, 12),
            (ElementSpec::Hct { degree: 3, reduced: true }, 9),
            (ElementSpec::Hct { degree: 4, reduced: false }, 19),
            (ElementSpec::JohnsonMercier, 15),
            (ElementSpec::AlfeldSorokina, 15),
            (ElementSpec::Lagrange { split: SplitKind::Iso(2), degree: 1, continuity: Continuity::C0 }, 6),
            (ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 2, continuity: Continuity::C0 }, 10),
            (ElementSpec::Lagrange { split: SplitKind::Alfeld, degree: 1, continuity: Continuity::Dg }, 9),
        ];
        for (spec, dim) in cases {
            let el = spec.build().unwrap();
            assert_eq!(el.dim(), dim, "{}", spec.name());
            assert_eq!(el.expansion().size(), if spec == (ElementSpec::Hct { degree: 3, reduced: true }) { 12 } else { dim });
        }
    }

    #[test]
    fn duality_for_catalogue() {
        for spec in catalogue() {
            let el = spec.build().unwrap();
            let err = el.duality_error().unwrap();
            assert!(err < 1e-8, "{}: {err}", spec.name());
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(ElementSpec::Hct { degree: 2, reduced: false }.build().is_err());
        assert!(ElementSpec::Hct { degree: 4, reduced: true }.build().is_err());
        let tet = reference_simplex(3).unwrap();
        assert!(matches!(
            ElementSpec::JohnsonMercier.build_on(tet.vertices()),
            Err(Error::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn hct3_condition_and_vertex_duality() {
        let el = ElementSpec::Hct { degree: 3, reduced: false }.build().unwrap();
        assert!(el.cond() < 1e6);
        let tab = el.tabulate(el.vertices(), 0).unwrap();
        for v in 0..3 {
            for j in 0..12 {
                let want = if j == 3 * v { 1.0 } else { 0.0 };
                assert!((tab.get(0, j, v, 0) - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn p1_at_barycenter() {
        let el = ElementSpec::Lagrange { split: SplitKind::None, degree: 1, continuity: Continuity::C0 }.build().unwrap();
        let tab = el.tabulate(&[vec![1.0 / 3.0, 1.0 / 3.0]], 0).unwrap();
        for j in 0..3 {
            assert!((tab.get(0, j, 0, 0) - 1.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn partitions_of_unity() {
        let iso = ElementSpec::Lagrange { split: SplitKind::Iso(2), degree: 1, continuity: Continuity::C0 }.build().unwrap();
        let pts = random_points(&iso, 10, 7);
        let tab = iso.tabulate(&pts, 0).unwrap();
        for p in 0..pts.len() {
            let s: f64 = (0..iso.dim()).map(|j| tab.get(0, j, p, 0)).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
        let ps6 = ElementSpec::PowellSabin(PowellSabin::Ps6).build().unwrap();
        let pts = random_points(&ps6, 20, 8);
        let tab = ps6.tabulate(&pts, 0).unwrap();
        let labels = node_labels(&ps6);
        for p in 0..pts.len() {
            let s: f64 = (0..ps6.dim())
                .filter(|&j| labels[j] == NodeLabel::PointEval)
                .map(|j| tab.get(0, j, p, 0))
                .sum();
            assert!((s - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn johnson_mercier_reproduces_identity() {
        let el = ElementSpec::JohnsonMercier.build().unwrap();
        let c = el.interpolate(|_, _, comp| if comp == 1 { 0.0 } else { 1.0 });
        let pts = random_points(&el, 20, 3);
        let tab = el.tabulate(&pts, 0).unwrap();
        for p in 0..pts.len() {
            for comp in 0..3 {
                let v: f64 = (0..15).map(|j| c[j] * tab.get(0, j, p, comp)).sum();
                let want = if comp == 1 { 0.0 } else { 1.0 };
                assert!((v - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn alfeld_sorokina_reproduces_divergence_free_linear() {
        let el = ElementSpec::AlfeldSorokina.build().unwrap();
        let f = |x: &[f64], a: &[usize], c: usize| -> f64 {
            let sign = if c == 0 { 1.0 } else { -1.0 };
            match (a[0], a[1]) {
                (0, 0) => sign * x[c],
                (1, 0) if c == 0 => 1.0,
                (0, 1) if c == 1 => -1.0,
                _ => 0.0,
            }
        };
        let coef = el.interpolate(f);
        assert!(coef[12..].iter().all(|d| d.abs() < 1e-12));
        let pts = random_points(&el, 20, 5);
        let tab = el.tabulate(&pts, 0).unwrap();
        for (p, x) in pts.iter().enumerate() {
            for comp in 0..2 {
                let v: f64 = (0..15).map(|j| coef[j] * tab.get(0, j, p, comp)).sum();
                assert!((v - f(x, &[0, 0], comp)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn tie_break_is_immaterial_for_c1() {
        let el = ElementSpec::Hct { degree: 3, reduced: false }.build().unwrap();
        let ch = el.complex();
        for f in 0..ch.num_entities(1) {
            if !ch.is_interior_facet(f) {
                continue;
            }
            let [c0, c1] = [ch.facet_cells(f)[0], ch.facet_cells(f)[1]];
            let pts = ch.entity_points((1, f)).unwrap();
            let x: Vec<Vec<f64>> = (1..4)
                .map(|s| {
                    let t = s as f64 / 4.0;
                    (0..2).map(|i| (1.0 - t) * pts[0][i] + t * pts[1][i]).collect()
                })
                .collect();
            let a = el.tabulate_in(&x, Some(&[Some(c0); 3]), 1).unwrap();
            let b = el.tabulate_in(&x, Some(&[Some(c1); 3]), 1).unwrap();
            for k in 0..3 {
                for j in 0..12 {
                    for p in 0..3 {
                        assert!((a.get(k, j, p, 0) - b.get(k, j, p, 0)).abs() < 1e-9);
                    }
                }
            }
        }
    }
}
