//! The bundle over the two coordinate axes `{xy = 0}` of the plane: fibre
//! `ℝ²` (coordinates `z, w`) over the crossing, `ℝ` (coordinate `z`) along the
//! rest of the `x`-axis and `ℝ` (coordinate `w`) along the rest of the
//! `y`-axis. It is glued from three trivial pieces:
//!
//! | chart | base | fibre | metric          |
//! |-------|------|-------|-----------------|
//! | `V0`  | point| `ℝ²`  | `dz² + dw²`     |
//! | `V1`  | `x`  | `ℝ`   | `(x² + 1) dz²`  |
//! | `V2`  | `y`  | `ℝ`   | `(y² + 1) dw²`  |
//!
//! `V1` is glued to `V0` at `x = 0` by `z ↦ (z, 0)`, then `V2` to the result
//! at `y = 0` by `w ↦ (0, w)`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::absring::Polynomial;
use crate::cliffbundle::{
    clifford_bundle, exterior_lift, induced_action, standard_action, GluedAction, StandardAction,
};
use crate::clifford::CliffordConvention;
use crate::linalg::Matrix;
use crate::pseudobundle::{column, glue, BasePoint, Chart, Gluing, LocusPoint, PseudoBundle, PseudoMetricChart};
use crate::rational::int;
use crate::{Rational, Result};

fn one_plus_square() -> PseudoMetricChart {
    let t = Polynomial::var(1, 0);
    PseudoMetricChart::new(1, vec![vec![&(&t * &t) + &Polynomial::one(1)]]).expect("1×1 is symmetric")
}

pub fn chart_v0() -> Chart {
    Chart::new("V0", 0, 2)
        .with_metric(PseudoMetricChart::constant(0, &Matrix::identity(2)).expect("identity is symmetric"))
        .expect("sizes agree")
}

pub fn chart_v1() -> Chart {
    Chart::new("V1", 1, 1).with_metric(one_plus_square()).expect("sizes agree")
}

pub fn chart_v2() -> Chart {
    Chart::new("V2", 1, 1).with_metric(one_plus_square()).expect("sizes agree")
}

/// `V1 → V0` at `x = 0`, `e_z ↦ e_z`.
pub fn first_gluing() -> Gluing {
    Gluing::new("V1", "V0", vec![LocusPoint::new(vec![int(0)], vec![], column(&[1, 0]))])
}

/// `V2 → V0` at `y = 0`, `e_w ↦ e_w`.
pub fn second_gluing() -> Gluing {
    Gluing::new("V2", "V0", vec![LocusPoint::new(vec![int(0)], vec![], column(&[0, 1]))])
}

/// `V1 ∪ V0`.
pub fn half_bundle() -> PseudoBundle {
    glue(
        &PseudoBundle::single(chart_v1()),
        &PseudoBundle::single(chart_v0()),
        first_gluing(),
    )
    .expect("valid gluing")
}

/// `V2 ∪ (V1 ∪ V0)`.
pub fn bundle() -> PseudoBundle {
    glue(&PseudoBundle::single(chart_v2()), &half_bundle(), second_gluing()).expect("valid gluing")
}

/// The chart point representing `(x, y)`, or `None` off the axes. The
/// crossing is represented in `V0`.
pub fn base_point(x: &Rational, y: &Rational) -> Option<BasePoint> {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => Some(BasePoint::new("V0", vec![])),
        (false, true) => Some(BasePoint::new("V1", vec![x.clone()])),
        (true, false) => Some(BasePoint::new("V2", vec![y.clone()])),
        (false, false) => None,
    }
}

/// `(0,0)`, `(1,0)`, `(3,0)`, `(0,2)`.
pub fn sample_points() -> Vec<(Rational, Rational)> {
    [(0, 0), (1, 0), (3, 0), (0, 2)]
        .into_iter()
        .map(|(x, y)| (int(x), int(y)))
        .collect()
}

/// Chart-local standard action `c = ε − i` of one piece.
pub fn chart_action(chart: Chart) -> Result<StandardAction> {
    standard_action(&clifford_bundle(&PseudoBundle::single(chart), CliffordConvention::action())?)
}

/// The action on `ΛV` glued from `c₁`, `c₀`, `c₂` in the same two steps as
/// the bundle, with exterior module lifts.
pub fn glued_action() -> Result<GluedAction<'static>> {
    let (g1, g2) = (first_gluing(), second_gluing());
    let lifts1: Vec<Matrix> = g1.locus.iter().map(|lp| exterior_lift(&lp.lift)).collect();
    let lifts2: Vec<Matrix> = g2.locus.iter().map(|lp| exterior_lift(&lp.lift)).collect();
    let half = induced_action(chart_action(chart_v1())?, chart_action(chart_v0())?, &g1, &lifts1)?;
    induced_action(chart_action(chart_v2())?, half, &g2, &lifts2)
}
