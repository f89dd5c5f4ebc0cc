//! The worked example over the crossed lines `{xy = 0}`: Clifford tables,
//! exterior tables and generator actions, computed symbolically and compared
//! term by term with the printed formulas.
//!
//! Elements are written as points `(x, y, z, w, u0, u2)` of ℝ⁶: base
//! coordinates, then the `e_z` and `e_w` components, the scalar part and the
//! `e_z e_w` component. Products are bilinear, so the computed side expands
//! `Σ a_A b_B (e_A e_B)` with symbolic coefficients `a_A`, `b_B`; the printed
//! side is parsed from the formulas below with `x`, `y` substituted.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use pseudocliff_core::absring::Polynomial;
use pseudocliff_core::cliffbundle::{clifford_bundle, CliffordAction};
use pseudocliff_core::clifford::{CliffordAlgebra, CliffordConvention, Multivector};
use pseudocliff_core::crossed_lines::{self, chart_action, chart_v0, chart_v1, chart_v2};
use pseudocliff_core::linalg::Matrix;
use pseudocliff_core::multilinear::ExteriorElement;
use pseudocliff_core::pseudobundle::{BasePoint, Chart, PseudoBundle};
use pseudocliff_core::rational::int;
use pseudocliff_core::Rational;
use serde_json::{json, Value};

use crate::expr::{parse_polynomial, Variables};
use crate::json;

/// Every symbol appearing in the formulas.
pub const NAMES: [&str; 15] = [
    "x", "y", "z", "w", "u0", "u2", "z1", "w1", "u0'", "u2'", "z2", "w2", "u0''", "u2''", "u1",
];

pub const SLOTS: [&str; 6] = ["x", "y", "z", "w", "u0", "u2"];

const U0: usize = 4;

type Slots = [&'static str; 6];

mod printed {
    use super::Slots;

    pub const CL_V0: Slots = [
        "0",
        "0",
        "u0'*z2 + u0''*z1 + 2*w1*u2'' - 2*u2'*w2",
        "u0''*w1 + u0'*w2 - 2*z1*u2'' + 2*u2'*z2",
        "u0'*u0'' - 2*z1*z2 - 2*w1*w2 - u2'*u2''",
        "u0'*u2'' + u0''*u2' + z1*w2 - w1*z2",
    ];
    pub const CL_V1: Slots = ["x", "0", "u0''*z1 + u0'*z2", "0", "u0'*u0'' - 2*z1*z2*(x*x + 1)", "0"];
    /// Printed with the vector part in the `z` slot; stored in the `w` slot.
    pub const CL_V2: Slots = ["0", "y", "0", "u0''*w1 + u0'*w2", "u0'*u0'' - 2*w1*w2*(y*y + 1)", "0"];
    pub const CL_V2_AS_PRINTED: Slots = ["0", "y", "u0''*w1 + u0'*w2", "0", "u0'*u0'' - 2*w1*w2*(y*y + 1)", "0"];

    pub const EXT_V0: Slots = [
        "0",
        "0",
        "u0'*z2 + u0''*z1",
        "u0'*w2 + u0''*w1",
        "u0'*u0''",
        "u0'*u2'' + u0''*u2' + z1*w2 - z2*w1",
    ];
    pub const EXT_V1: Slots = ["x", "0", "u2*z1 + u1*z2", "0", "u1*u2", "0"];
    pub const EXT_V2: Slots = ["0", "y", "0", "u2*w1 + u1*w2", "u1*u2", "0"];
    /// The glued display repeats `EXT_V0` and `EXT_V2` but writes the `y = 0`
    /// branch with a literal `y`.
    pub const EXT_GLUED_Y0: Slots = ["x", "y", "u2*z1 + u1*z2", "0", "u1*u2", "0"];

    pub const C0_EZ: Slots = ["0", "0", "u0", "-u2", "-z", "w"];
    pub const C0_EW: Slots = ["0", "0", "u2", "u0", "-w", "-z"];
    pub const C1_EZ: Slots = ["x", "0", "u0", "0", "-z*(x*x + 1)", "0"];
    pub const C2_EW: Slots = ["0", "y", "0", "u0", "-w*(y*y + 1)", "0"];
}

/// How one chart's fibre blades sit in the six slots, and which symbols
/// name the coefficients of the two factors.
struct Layout {
    /// `(blade, slot)`.
    blades: &'static [(u32, usize)],
    left: &'static [&'static str],
    right: &'static [&'static str],
}

const V0_BLADES: &[(u32, usize)] = &[(0, 4), (1, 2), (2, 3), (3, 5)];
const V1_BLADES: &[(u32, usize)] = &[(0, 4), (1, 2)];
const V2_BLADES: &[(u32, usize)] = &[(0, 4), (1, 3)];

fn clifford_layout(chart: &str) -> Layout {
    match chart {
        "V0" => Layout { blades: V0_BLADES, left: &["u0'", "z1", "w1", "u2'"], right: &["u0''", "z2", "w2", "u2''"] },
        "V1" => Layout { blades: V1_BLADES, left: &["u0'", "z1"], right: &["u0''", "z2"] },
        _ => Layout { blades: V2_BLADES, left: &["u0'", "w1"], right: &["u0''", "w2"] },
    }
}

fn exterior_layout(chart: &str) -> Layout {
    match chart {
        "V0" => clifford_layout("V0"),
        "V1" => Layout { blades: V1_BLADES, left: &["u1", "z1"], right: &["u2", "z2"] },
        _ => Layout { blades: V2_BLADES, left: &["u1", "w1"], right: &["u2", "w2"] },
    }
}

fn action_layout(chart: &str) -> Layout {
    match chart {
        "V0" => Layout { blades: V0_BLADES, left: &["u0", "z", "w", "u2"], right: &[] },
        "V1" => Layout { blades: V1_BLADES, left: &["u0", "z"], right: &[] },
        _ => Layout { blades: V2_BLADES, left: &["u0", "w"], right: &[] },
    }
}

fn var(name: &str) -> Polynomial {
    let i = NAMES.iter().position(|n| *n == name).expect("known symbol");
    Polynomial::var(NAMES.len(), i)
}

fn constant(c: &Rational) -> Polynomial {
    Polynomial::constant(NAMES.len(), c.clone())
}

/// Writes a polynomial with the symbol names.
pub fn render(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.sorted_terms().into_iter().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let factors = monomial_name(e);
        let mag = c.abs();
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&factors);
        } else {
            out.push_str(&format!("{mag}*{factors}"));
        }
    }
    out
}

fn monomial_name(e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        for _ in 0..k {
            parts.push(NAMES[i]);
        }
    }
    parts.join("*")
}

/// `(x, y)` on the crossed lines.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AxisPoint {
    pub x: Rational,
    pub y: Rational,
}

impl AxisPoint {
    fn new(x: Rational, y: Rational) -> AxisPoint {
        AxisPoint { x, y }
    }

    fn origin() -> AxisPoint {
        AxisPoint::new(Rational::zero(), Rational::zero())
    }

    fn base_point(&self) -> BasePoint {
        crossed_lines::base_point(&self.x, &self.y).expect("points lie on the axes")
    }

    fn json(&self) -> Value {
        json!({ "x": json::rational(&self.x), "y": json::rational(&self.y) })
    }
}

/// One coefficient where the computed and printed polynomials differ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermMismatch {
    pub slot: &'static str,
    pub monomial: String,
    pub computed: Rational,
    pub printed: Rational,
}

impl TermMismatch {
    fn json(&self) -> Value {
        json!({
            "slot": self.slot,
            "monomial": self.monomial,
            "computed": json::rational(&self.computed),
            "printed": json::rational(&self.printed),
        })
    }
}

/// One formula compared at one point.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub formula: String,
    pub point: AxisPoint,
    pub computed: [Polynomial; 6],
    pub printed_text: Slots,
    pub printed: [Polynomial; 6],
    pub mismatches: Vec<TermMismatch>,
}

impl Comparison {
    fn new(formula: impl Into<String>, point: &AxisPoint, computed: [Polynomial; 6], printed_text: Slots) -> Comparison {
        let subst: Vec<Option<Rational>> = (0..NAMES.len())
            .map(|i| match i {
                0 => Some(point.x.clone()),
                1 => Some(point.y.clone()),
                _ => None,
            })
            .collect();
        let printed: [Polynomial; 6] = std::array::from_fn(|s| {
            parse_polynomial(printed_text[s], &Variables::Named(&NAMES))
                .expect("printed formulas are well formed")
                .substitute(&subst)
        });
        let mut mismatches = Vec::new();
        for s in 0..6 {
            let diff = &computed[s] - &printed[s];
            for (e, _) in diff.terms() {
                mismatches.push(TermMismatch {
                    slot: SLOTS[s],
                    monomial: monomial_name(e),
                    computed: computed[s].coefficient(e),
                    printed: printed[s].coefficient(e),
                });
            }
        }
        Comparison {
            formula: formula.into(),
            point: point.clone(),
            computed,
            printed_text,
            printed,
            mismatches,
        }
    }

    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn json(&self) -> Value {
        json!({
            "formula": self.formula,
            "point": self.point.json(),
            "computed": self.computed.iter().map(render).collect::<Vec<_>>(),
            "printed": self.printed_text.to_vec(),
            "matches": self.matches(),
            "mismatches": self.mismatches.iter().map(TermMismatch::json).collect::<Vec<_>>(),
        })
    }
}

fn base_slots(point: &AxisPoint) -> [Polynomial; 6] {
    let mut out: [Polynomial; 6] = std::array::from_fn(|_| Polynomial::zero(NAMES.len()));
    out[0] = constant(&point.x);
    out[1] = constant(&point.y);
    out
}

fn symbolic(names: &[&str]) -> Vec<Polynomial> {
    names.iter().map(|n| var(n)).collect()
}

/// Expands a bilinear product blade by blade.
fn bilinear(
    point: &AxisPoint,
    layout: &Layout,
    product: impl Fn(u32, u32) -> Vec<(u32, Rational)>,
) -> [Polynomial; 6] {
    let (a, b) = (symbolic(layout.left), symbolic(layout.right));
    let mut out = base_slots(point);
    for (ia, &(ma, _)) in layout.blades.iter().enumerate() {
        for (ib, &(mb, _)) in layout.blades.iter().enumerate() {
            let coeff = &a[ia] * &b[ib];
            for (m, c) in product(ma, mb) {
                let slot = layout.blades.iter().find(|(bm, _)| *bm == m).expect("blade of the fibre").1;
                out[slot] = &out[slot] + &coeff.scale(&c);
            }
        }
    }
    out
}

fn clifford_slots(alg: &CliffordAlgebra, chart: &str, point: &AxisPoint) -> [Polynomial; 6] {
    bilinear(point, &clifford_layout(chart), |a, b| {
        let x = Multivector::blade(alg, a).and_then(|x| x.mul(&Multivector::blade(alg, b)?)).expect("blades of the fibre");
        x.components().map(|(m, c)| (m, c.clone())).collect()
    })
}

fn exterior_slots(n: usize, chart: &str, point: &AxisPoint) -> [Polynomial; 6] {
    bilinear(point, &exterior_layout(chart), |a, b| {
        let x = ExteriorElement::blade(n, a)
            .and_then(|x| x.wedge(&ExteriorElement::blade(n, b)?))
            .expect("blades of the fibre");
        x.components().map(|(m, c)| (m, c.clone())).collect()
    })
}

/// `c(e_i)` applied to the symbolic fibre element.
fn action_slots(op: &Matrix, chart: &str, point: &AxisPoint) -> [Polynomial; 6] {
    let layout = action_layout(chart);
    let input = symbolic(layout.left);
    let mut out = base_slots(point);
    for (row, &(mr, slot)) in layout.blades.iter().enumerate() {
        debug_assert_eq!(mr as usize, row);
        for (col, v) in input.iter().enumerate() {
            out[slot] = &out[slot] + &v.scale(op.get(row, col));
        }
    }
    out
}

fn chart_of(point: &AxisPoint) -> &'static str {
    match (point.x.is_zero(), point.y.is_zero()) {
        (true, true) => "V0",
        (false, true) => "V1",
        _ => "V2",
    }
}

/// The points `(v, 0)` and `(0, v)` for every sample value, origin first.
pub fn axis_points(values: &[Rational]) -> Vec<AxisPoint> {
    let mut pts: Vec<AxisPoint> = values
        .iter()
        .flat_map(|v| [AxisPoint::new(v.clone(), Rational::zero()), AxisPoint::new(Rational::zero(), v.clone())])
        .collect();
    pts.sort_by_key(|p| (!(p.x.is_zero() && p.y.is_zero()), p.x.is_zero(), p.clone()));
    pts.dedup();
    pts
}

pub fn default_sample_values() -> Vec<Rational> {
    [0, 1, 2, -3].into_iter().map(int).collect()
}

fn single(chart: Chart) -> PseudoBundle {
    PseudoBundle::single(chart)
}

fn chart_algebra(chart: Chart, lambda: &Rational, bp: &BasePoint) -> CliffordAlgebra {
    let conv = CliffordConvention::new(lambda.clone()).expect("positive scale");
    clifford_bundle(&single(chart), conv)
        .and_then(|cb| cb.fibre_at(bp))
        .expect("chart carries a metric")
}

fn chart_point(chart: &str, point: &AxisPoint) -> BasePoint {
    match chart {
        "V0" => BasePoint::new("V0", vec![]),
        "V1" => BasePoint::new("V1", vec![point.x.clone()]),
        _ => BasePoint::new("V2", vec![point.y.clone()]),
    }
}

/// Chart Clifford tables at the given scale: `V0` once, `V1` at every
/// sample `x`, `V2` at every sample `y`.
pub fn clifford_chart_tables(values: &[Rational], lambda: &Rational) -> Vec<Comparison> {
    let mut out = Vec::new();
    let o = AxisPoint::origin();
    let alg = chart_algebra(chart_v0(), lambda, &chart_point("V0", &o));
    out.push(Comparison::new("Cl(V0,g0)", &o, clifford_slots(&alg, "V0", &o), printed::CL_V0));
    for v in values {
        let p = AxisPoint::new(v.clone(), Rational::zero());
        let alg = chart_algebra(chart_v1(), lambda, &chart_point("V1", &p));
        out.push(Comparison::new("Cl(V1,g1)", &p, clifford_slots(&alg, "V1", &p), printed::CL_V1));
    }
    for v in values {
        let p = AxisPoint::new(Rational::zero(), v.clone());
        let alg = chart_algebra(chart_v2(), lambda, &chart_point("V2", &p));
        out.push(Comparison::new("Cl(V2,g2)", &p, clifford_slots(&alg, "V2", &p), printed::CL_V2));
    }
    out
}

/// The glued Clifford bundle against the piecewise printed table.
pub fn clifford_glued_tables(bundle: &PseudoBundle, values: &[Rational], lambda: &Rational) -> Vec<Comparison> {
    let conv = CliffordConvention::new(lambda.clone()).expect("positive scale");
    let cb = clifford_bundle(bundle, conv).expect("metrics present");
    axis_points(values)
        .into_iter()
        .map(|p| {
            let alg = cb.fibre_at(&p.base_point()).expect("point of the bundle");
            let chart = chart_of(&p);
            let formula = match chart {
                "V0" => printed::CL_V0,
                "V1" => printed::CL_V1,
                _ => printed::CL_V2,
            };
            Comparison::new(format!("Cl(V,g) branch {chart}"), &p, clifford_slots(&alg, chart, &p), formula)
        })
        .collect()
}

pub fn exterior_tables(bundle: &PseudoBundle, values: &[Rational]) -> Vec<Comparison> {
    let o = AxisPoint::origin();
    let mut out = vec![Comparison::new("ΛV0", &o, exterior_slots(2, "V0", &o), printed::EXT_V0)];
    for v in values {
        let p = AxisPoint::new(v.clone(), Rational::zero());
        out.push(Comparison::new("ΛV1", &p, exterior_slots(1, "V1", &p), printed::EXT_V1));
    }
    for v in values {
        let p = AxisPoint::new(Rational::zero(), v.clone());
        out.push(Comparison::new("ΛV2", &p, exterior_slots(1, "V2", &p), printed::EXT_V2));
    }
    let ext = pseudocliff_core::cliffbundle::exterior_bundle(bundle).expect("valid bundle");
    for p in axis_points(values) {
        let chart = chart_of(&p);
        let dim = ext.fibre_dim_at(&p.base_point()).expect("point of the bundle");
        let n = dim.trailing_zeros() as usize;
        let formula = match chart {
            "V0" => printed::EXT_V0,
            "V1" => printed::EXT_GLUED_Y0,
            _ => printed::EXT_V2,
        };
        out.push(Comparison::new(format!("ΛV branch {chart}"), &p, exterior_slots(n, chart, &p), formula));
    }
    out
}

/// Chart actions `c0`, `c1`, `c2` on their generators, then the glued action
/// against the concatenated formulas.
pub fn action_tables(values: &[Rational]) -> Vec<Comparison> {
    let mut out = Vec::new();
    let o = AxisPoint::origin();
    let c0 = chart_action(chart_v0()).expect("scale 1").generators_at(&chart_point("V0", &o)).expect("point");
    out.push(Comparison::new("c0(e_z)", &o, action_slots(&c0[0], "V0", &o), printed::C0_EZ));
    out.push(Comparison::new("c0(e_w)", &o, action_slots(&c0[1], "V0", &o), printed::C0_EW));
    let c1 = chart_action(chart_v1()).expect("scale 1");
    let c2 = chart_action(chart_v2()).expect("scale 1");
    for v in values {
        let p = AxisPoint::new(v.clone(), Rational::zero());
        let g = c1.generators_at(&chart_point("V1", &p)).expect("point");
        out.push(Comparison::new("c1(e_z)", &p, action_slots(&g[0], "V1", &p), printed::C1_EZ));
    }
    for v in values {
        let p = AxisPoint::new(Rational::zero(), v.clone());
        let g = c2.generators_at(&chart_point("V2", &p)).expect("point");
        out.push(Comparison::new("c2(e_w)", &p, action_slots(&g[0], "V2", &p), printed::C2_EW));
    }
    let glued = crossed_lines::glued_action().expect("compatible actions");
    for p in axis_points(values) {
        let chart = chart_of(&p);
        let g = glued.generators_at(&p.base_point()).expect("point of the bundle");
        let branches: &[(&str, Slots)] = match chart {
            "V0" => &[("c(e_z) branch V0", printed::C0_EZ), ("c(e_w) branch V0", printed::C0_EW)],
            "V1" => &[("c(e_z) branch V1", printed::C1_EZ)],
            _ => &[("c(e_w) branch V2", printed::C2_EW)],
        };
        for (op, (name, formula)) in g.iter().zip(branches) {
            out.push(Comparison::new(*name, &p, action_slots(op, chart, &p), *formula));
        }
    }
    out
}

/// A disagreement between computation and print that survives every
/// sample point.
#[derive(Debug, Clone)]
pub struct Deviation {
    pub id: &'static str,
    pub description: String,
    pub detail: Value,
}

impl Deviation {
    fn json(&self) -> Value {
        json!({ "id": self.id, "description": self.description, "detail": self.detail })
    }
}

/// Distinct mismatching terms across comparisons, each with where it occurs.
pub fn distinct_mismatches(comparisons: &[Comparison]) -> BTreeMap<TermMismatch, Vec<(String, AxisPoint)>> {
    let mut out: BTreeMap<TermMismatch, Vec<(String, AxisPoint)>> = BTreeMap::new();
    for c in comparisons {
        for m in &c.mismatches {
            out.entry(m.clone()).or_default().push((c.formula.clone(), c.point.clone()));
        }
    }
    out
}

/// `c(e_1)² = −λ q₁₁` decides which scale an action formula is written in.
fn action_scale_holds(lambda: &Rational) -> bool {
    let c1 = chart_action(chart_v1()).expect("scale 1");
    let bp = BasePoint::new("V1", vec![int(1)]);
    let g = &c1.generators_at(&bp).expect("point")[0];
    let q = c1.form_at(&bp).expect("point");
    g.mul(g) == Matrix::identity(2).scale(&-(lambda * q.get(0, 0)))
}

pub struct Sec7Report {
    pub bundle: PseudoBundle,
    /// The shipped description parses to the bundle the library builds.
    pub embedded_matches: bool,
    pub sample_values: Vec<Rational>,
    pub clifford_charts: Vec<Comparison>,
    pub clifford_glued: Vec<Comparison>,
    pub exterior: Vec<Comparison>,
    pub actions: Vec<Comparison>,
    pub deviations: Vec<Deviation>,
    pub presentation_notes: Vec<Value>,
}

impl Sec7Report {
    /// Term mismatches over all Clifford tables, chart and glued.
    pub fn clifford_mismatches(&self) -> BTreeMap<TermMismatch, Vec<(String, AxisPoint)>> {
        let all: Vec<Comparison> = self.clifford_charts.iter().chain(&self.clifford_glued).cloned().collect();
        distinct_mismatches(&all)
    }

    /// Everything matches apart from Clifford-table terms listed as
    /// deviations.
    pub fn reproduced(&self) -> bool {
        let listed: Vec<&Value> = self
            .deviations
            .iter()
            .filter(|d| d.id == "scalar-term-of-e12-squared")
            .map(|d| &d.detail)
            .collect();
        self.embedded_matches
            && self.exterior.iter().all(Comparison::matches)
            && self.actions.iter().all(Comparison::matches)
            && self.clifford_mismatches().len() == listed.len()
    }

    pub fn json(&self) -> Value {
        let list = |cs: &[Comparison]| cs.iter().map(Comparison::json).collect::<Vec<_>>();
        json!({
            "command": "reproduce-sec7",
            "bundle": crate::bundle_file::bundle_json(&self.bundle),
            "embedded_description_matches": self.embedded_matches,
            "crossing_blade_table": crossing_blade_table(),
            "sample_values": json::rationals(&self.sample_values),
            "clifford_tables": { "lambda": "2", "charts": list(&self.clifford_charts), "glued": list(&self.clifford_glued) },
            "exterior_tables": list(&self.exterior),
            "action_tables": { "lambda": "1", "checks": list(&self.actions) },
            "paper_deviations": self.deviations.iter().map(Deviation::json).collect::<Vec<_>>(),
            "presentation_notes": self.presentation_notes,
            "status": if self.reproduced() { "pass" } else { "fail" },
        })
    }
}

/// The shipped description of the crossed-lines bundle.
pub const EMBEDDED_BUNDLE: &str = include_str!("../data/crossed_lines.bundle");

pub fn reproduce(values: &[Rational]) -> Sec7Report {
    let bundle = crate::bundle_file::parse_bundle(EMBEDDED_BUNDLE).expect("shipped description is valid");
    let embedded_matches = bundle == crossed_lines::bundle();
    let two = int(2);
    let clifford_charts = clifford_chart_tables(values, &two);
    let clifford_glued = clifford_glued_tables(&bundle, values, &two);
    let exterior = exterior_tables(&bundle, values);
    let actions = action_tables(values);

    let mut deviations = Vec::new();
    let all: Vec<Comparison> = clifford_charts.iter().chain(&clifford_glued).cloned().collect();
    for (m, places) in distinct_mismatches(&all) {
        let occurrences: Vec<Value> = places
            .iter()
            .map(|(f, p)| json!({ "formula": f, "point": p.json() }))
            .collect();
        let id = if m.slot == SLOTS[U0] && m.monomial == "u2'*u2''" {
            "scalar-term-of-e12-squared"
        } else {
            "clifford-table-term"
        };
        deviations.push(Deviation {
            id,
            description: format!(
                "coefficient of {} in the {} slot: computed {}, printed {}",
                m.monomial, m.slot, m.computed, m.printed
            ),
            detail: json!({
                "slot": m.slot,
                "monomial": m.monomial,
                "computed": json::rational(&m.computed),
                "printed": json::rational(&m.printed),
                "occurrences": occurrences,
            }),
        });
    }

    let one = Rational::one();
    let at_one = distinct_mismatches(&clifford_chart_tables(values, &one)).len();
    let at_two = distinct_mismatches(&clifford_charts).len();
    deviations.push(Deviation {
        id: "scale-mixing",
        description: "the Clifford tables are written with e_i e_i = -2 q_ii, the actions with c(e_i)^2 = -q_ii".into(),
        detail: json!({
            "table_term_mismatches": { "1": at_one, "2": at_two },
            "action_square_matches": { "1": action_scale_holds(&one), "2": action_scale_holds(&two) },
            "computed": "tables reproduced at scale 2, actions at scale 1",
            "printed": "one algebra throughout",
        }),
    });

    let presentation_notes = vec![json!({
        "formula": "Cl(V2,g2)",
        "note": "the vector part of the product is printed in the z slot; the fibre of V2 is spanned by e_w, so it is compared in the w slot",
        "printed_as": printed::CL_V2_AS_PRINTED.to_vec(),
        "compared_as": printed::CL_V2.to_vec(),
    })];

    Sec7Report {
        bundle,
        embedded_matches,
        sample_values: values.to_vec(),
        clifford_charts,
        clifford_glued,
        exterior,
        actions,
        deviations,
        presentation_notes,
    }
}

/// The full blade table of the crossing fibre at scale 2.
pub fn crossing_blade_table() -> Value {
    let alg = chart_algebra(chart_v0(), &int(2), &BasePoint::new("V0", vec![]));
    crate::commands::table_json(&alg)
}
