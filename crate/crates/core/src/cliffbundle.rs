//! Clifford-algebra and Clifford-module bundles over glued pseudo-bundles.
//!
//! Over a point `x` the Clifford fibre is `Cl(π⁻¹(x), g(x))`. A gluing lift
//! `f̃` between compatible metrics extends to algebra morphisms `F^Cl`
//! between Clifford fibres. Modules are the exterior algebras of the fibres
//! with the action `c(v) = ε(v) − i(v)`, and module lifts default to `Λf̃`.

use alloc::boxed::Box;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::clifford::{
    action_operator, universal_extend, AlgebraMorphism, BilinearForm, CliffordAlgebra,
    CliffordConvention, Multivector,
};
use crate::linalg::Matrix;
use crate::multilinear::ExteriorElement;
use crate::pseudobundle::{
    glue, BasePoint, Chart, Gluing, InducedMetric, PseudoBundle, Resolved,
};
use crate::{Error, Rational, Result, Verdict};

/// A pseudo-bundle with metrics, viewed through its Clifford fibres.
#[derive(Debug, Clone)]
pub struct CliffordBundle {
    bundle: PseudoBundle,
    convention: CliffordConvention,
}

/// Needs a metric on every chart.
pub fn clifford_bundle(b: &PseudoBundle, convention: CliffordConvention) -> Result<CliffordBundle> {
    if let Some(c) = b.charts().iter().find(|c| c.metric().is_none()) {
        return Err(Error::MissingMetric(c.id().to_string()));
    }
    Ok(CliffordBundle {
        bundle: b.clone(),
        convention,
    })
}

impl CliffordBundle {
    pub fn bundle(&self) -> &PseudoBundle {
        &self.bundle
    }

    pub fn convention(&self) -> &CliffordConvention {
        &self.convention
    }

    /// Chart-local metric at a point, ignoring identifications.
    pub fn chart_form(&self, bp: &BasePoint) -> Result<BilinearForm> {
        let chart = self.bundle.chart(&bp.chart)?;
        chart.check_point(&bp.point)?;
        let m = chart.metric().ok_or_else(|| Error::MissingMetric(bp.chart.clone()))?;
        BilinearForm::new(m.eval(&bp.point))
    }

    /// Clifford algebra of the chart's own fibre at `bp`.
    pub fn chart_fibre(&self, bp: &BasePoint) -> Result<CliffordAlgebra> {
        Ok(CliffordAlgebra::new(self.chart_form(bp)?, self.convention.clone()))
    }

    /// Clifford fibre of the glued bundle over the class of `bp`, i.e. the
    /// algebra over the representative that owns the fibre.
    pub fn fibre_at(&self, bp: &BasePoint) -> Result<CliffordAlgebra> {
        let r = self.bundle.resolve(bp)?;
        self.chart_fibre(&r.terminal)
    }
}

/// `F^Cl` at every point of one gluing's locus.
#[derive(Debug, Clone)]
pub struct CliffordLift {
    morphisms: Vec<AlgebraMorphism<CliffordAlgebra>>,
}

impl CliffordLift {
    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn morphism(&self, locus_index: usize) -> &AlgebraMorphism<CliffordAlgebra> {
        &self.morphisms[locus_index]
    }

    /// `2^{k₂} × 2^{k₁}` matrix in blade bases.
    pub fn matrix(&self, locus_index: usize) -> Matrix {
        self.morphisms[locus_index].to_matrix()
    }

    /// Unit to unit and `F(e_a e_b) = F(e_a) F(e_b)` on all blade pairs;
    /// the witness is the first failing pair.
    pub fn check_multiplicative(&self, locus_index: usize) -> Verdict<(u32, u32)> {
        let f = &self.morphisms[locus_index];
        let (src, tgt) = (f.source(), f.target());
        if *f.blade_image(0) != Multivector::one(tgt) {
            return Verdict::Fails((0, 0));
        }
        for a in 0..src.total_dim() as u32 {
            for b in 0..src.total_dim() as u32 {
                let ab = Multivector::blade(src, a)
                    .and_then(|x| x.mul(&Multivector::blade(src, b)?))
                    .expect("blades of the source");
                let lhs = f.apply(&ab).expect("source element");
                let rhs = f.blade_image(a).mul(f.blade_image(b)).expect("target elements");
                if lhs != rhs {
                    return Verdict::Fails((a, b));
                }
            }
        }
        Verdict::Holds
    }
}

/// Vector images `L eᵢ` as elements of a target algebra.
fn column_images(target: &CliffordAlgebra, lift: &Matrix) -> Result<Vec<Multivector>> {
    (0..lift.cols())
        .map(|i| Multivector::vector(target, &lift.column(i)))
        .collect()
}

/// Extends the lift of gluing `gluing` to Clifford fibres. Refuses when the
/// metrics are incompatible, since then `f̃` does not respect the relation.
pub fn induced_clifford_lift(cb: &CliffordBundle, gluing: usize) -> Result<CliffordLift> {
    let g = cb
        .bundle
        .gluings()
        .get(gluing)
        .ok_or(Error::IndexOutOfRange {
            index: gluing,
            n: cb.bundle.gluings().len(),
        })?;
    let mut morphisms = Vec::with_capacity(g.locus.len());
    for lp in &g.locus {
        let src = cb.chart_fibre(&BasePoint::new(g.source.clone(), lp.source.clone()))?;
        let tgt = cb.chart_fibre(&BasePoint::new(g.target.clone(), lp.target.clone()))?;
        let f = universal_extend(&src, &tgt, column_images(&tgt, &lp.lift)?).map_err(|e| match e {
            Error::RelationViolated { .. } => Error::IncompatibleMetrics { gluing },
            other => other,
        })?;
        morphisms.push(f);
    }
    Ok(CliffordLift { morphisms })
}

/// A field of bilinear forms on the base of a glued bundle.
pub trait MetricField {
    fn metric_at(&self, bp: &BasePoint) -> Result<Matrix>;
}

impl MetricField for InducedMetric {
    fn metric_at(&self, bp: &BasePoint) -> Result<Matrix> {
        self.at(bp)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiMismatch {
    Dimension { clifford_then_glue: usize, glue_then_clifford: usize },
    Product {
        left_blade: u32,
        right_blade: u32,
        clifford_then_glue: Vec<Rational>,
        glue_then_clifford: Vec<Rational>,
    },
    /// The composite `F^Cl` into the identified fibre does not exist or is
    /// not multiplicative.
    Lift { left_blade: u32, right_blade: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiWitness {
    pub point: BasePoint,
    pub mismatch: PhiMismatch,
}

/// Compares `Cl(V₁) ∪_{F^Cl} Cl(V₂)` with `Cl(V₁ ∪_f̃ V₂, g̃)` at each sample
/// point. The left fibre at an identified point is the Clifford fibre of the
/// target chart, reached from the source fibre through the composite
/// `F^Cl`, which must exist and be multiplicative; elsewhere it is the
/// chart's own Clifford fibre. The right fibre is `Cl(g̃(x))` with `g̃`
/// taken from `glued_metric`. Tables are compared entrywise in blade bases.
pub fn verify_phi_iso(
    cb: &CliffordBundle,
    glued_metric: &dyn MetricField,
    samples: &[BasePoint],
) -> Result<Verdict<PhiWitness>> {
    for bp in samples {
        let r = cb.bundle.resolve(bp)?;
        let fail = |mismatch| Ok(Verdict::Fails(PhiWitness { point: bp.clone(), mismatch }));
        let left = cb.chart_fibre(&r.terminal)?;
        if r.steps > 0 {
            if let Some((a, b)) = composite_lift_defect(cb, bp, &r, &left)? {
                return fail(PhiMismatch::Lift { left_blade: a, right_blade: b });
            }
        }
        let right = CliffordAlgebra::new(BilinearForm::new(glued_metric.metric_at(bp)?)?, cb.convention.clone());
        if left.dim() != right.dim() {
            return fail(PhiMismatch::Dimension {
                clifford_then_glue: left.total_dim(),
                glue_then_clifford: right.total_dim(),
            });
        }
        for a in 0..left.total_dim() as u32 {
            for b in 0..left.total_dim() as u32 {
                let l = Multivector::blade(&left, a)?.mul(&Multivector::blade(&left, b)?)?.to_dense();
                let rr = Multivector::blade(&right, a)?.mul(&Multivector::blade(&right, b)?)?.to_dense();
                if l != rr {
                    return fail(PhiMismatch::Product {
                        left_blade: a,
                        right_blade: b,
                        clifford_then_glue: l,
                        glue_then_clifford: rr,
                    });
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

fn composite_lift_defect(
    cb: &CliffordBundle,
    bp: &BasePoint,
    r: &Resolved,
    target: &CliffordAlgebra,
) -> Result<Option<(u32, u32)>> {
    let src = cb.chart_fibre(bp)?;
    match universal_extend(&src, target, column_images(target, &r.lift)?) {
        Err(Error::RelationViolated { i, j }) => Ok(Some((1 << i, 1 << j))),
        Err(e) => Err(e),
        Ok(f) => {
            let lift = CliffordLift { morphisms: alloc::vec![f] };
            Ok(lift.check_multiplicative(0).witness().copied())
        }
    }
}

/// `Λ^k L` for all `k` at once: column `A` is `L e_{a₁} ∧ … ∧ L e_{a_m}`.
pub fn exterior_lift(lift: &Matrix) -> Matrix {
    let (k2, k1) = (lift.rows(), lift.cols());
    let mut m = Matrix::zeros(1 << k2, 1 << k1);
    for a in 0..1u32 << k1 {
        let img = (0..k1)
            .filter(|i| a & 1 << i != 0)
            .fold(ExteriorElement::one(k2), |acc, i| {
                acc.wedge(&ExteriorElement::vector(&lift.column(i))).expect("same dimension")
            });
        for (row, c) in img.components() {
            m.set(row as usize, a as usize, c.clone());
        }
    }
    m
}

/// The bundle of exterior algebras: fibre `ΛV` of dimension `2^k`, lifts
/// `Λf̃`.
pub fn exterior_bundle(b: &PseudoBundle) -> Result<PseudoBundle> {
    let charts = b
        .charts()
        .iter()
        .map(|c| Chart::new(c.id(), c.base_dim(), 1 << c.fibre_dim()))
        .collect();
    let gluings = b
        .gluings()
        .iter()
        .map(|g| g.with_lifts(g.locus.iter().map(|lp| exterior_lift(&lp.lift))))
        .collect();
    PseudoBundle::new(charts, gluings)
}

/// Fibrewise Clifford action on a module bundle.
pub trait CliffordAction {
    /// The bundle whose base points the action is defined on.
    fn bundle(&self) -> &PseudoBundle;
    /// `c(e₁), …, c(e_k)` on the module fibre over the class of `bp`.
    fn generators_at(&self, bp: &BasePoint) -> Result<Vec<Matrix>>;
    /// The form `q` the generators are meant to satisfy at `bp`.
    fn form_at(&self, bp: &BasePoint) -> Result<BilinearForm>;
}

/// `c = ε − i` on the exterior algebra of each fibre.
#[derive(Debug, Clone)]
pub struct StandardAction {
    cb: CliffordBundle,
}

/// Refuses unless `λ = 1`: only then does `c(v)² = −q(v, v)` match the
/// algebra relation.
pub fn standard_action(cb: &CliffordBundle) -> Result<StandardAction> {
    let lambda = cb.convention.lambda();
    if !lambda.is_one() {
        return Err(Error::ConventionConflict(lambda.clone()));
    }
    Ok(StandardAction { cb: cb.clone() })
}

impl CliffordAction for StandardAction {
    fn bundle(&self) -> &PseudoBundle {
        &self.cb.bundle
    }

    fn generators_at(&self, bp: &BasePoint) -> Result<Vec<Matrix>> {
        let q = self.form_at(bp)?;
        let n = q.dim();
        (0..n)
            .map(|i| {
                let mut v = alloc::vec![Rational::zero(); n];
                v[i] = Rational::one();
                action_operator(&v, &q)
            })
            .collect()
    }

    fn form_at(&self, bp: &BasePoint) -> Result<BilinearForm> {
        let r = self.cb.bundle.resolve(bp)?;
        self.cb.chart_form(&r.terminal)
    }
}

/// `f̃′ c₁(eᵢ) ≠ c₂(F^Cl(eᵢ)) f̃′` at one locus point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionWitness {
    pub locus_index: usize,
    pub generator: usize,
    /// `f̃′ · c₁(eᵢ)`.
    pub lhs: Matrix,
    /// `c₂(F^Cl(eᵢ)) · f̃′`.
    pub rhs: Matrix,
}

fn target_is_terminal(c2: &dyn CliffordAction, bp: &BasePoint) -> Result<()> {
    if c2.bundle().resolve(bp)?.steps == 0 {
        Ok(())
    } else {
        Err(Error::ConflictingIdentification {
            chart: bp.chart.clone(),
            reason: "gluing target point is itself glued further".to_string(),
        })
    }
}

/// Checks `f̃′ · c₁(eᵢ) = c₂(f̃ eᵢ) · f̃′` for every generator at every locus
/// point. Both sides are algebra morphisms in `v`, so generators suffice.
/// `module_lifts[k]` is `f̃′` at locus point `k`.
pub fn check_action_compat(
    c1: &dyn CliffordAction,
    c2: &dyn CliffordAction,
    gl: &Gluing,
    module_lifts: &[Matrix],
) -> Result<Verdict<ActionWitness>> {
    if module_lifts.len() != gl.locus.len() {
        return Err(Error::DimensionMismatch {
            expected: gl.locus.len(),
            actual: module_lifts.len(),
        });
    }
    for (k, (lp, m)) in gl.locus.iter().zip(module_lifts).enumerate() {
        let (sp, tp) = (
            BasePoint::new(gl.source.clone(), lp.source.clone()),
            BasePoint::new(gl.target.clone(), lp.target.clone()),
        );
        target_is_terminal(c2, &tp)?;
        let (g1, g2) = (c1.generators_at(&sp)?, c2.generators_at(&tp)?);
        lp.lift.check_shape(g2.len(), g1.len())?;
        if let (Some(a), Some(b)) = (g1.first(), g2.first()) {
            m.check_shape(b.rows(), a.cols())?;
        }
        for (i, ci) in g1.iter().enumerate() {
            let lhs = m.mul(ci);
            let image = g2
                .iter()
                .enumerate()
                .fold(Matrix::zeros(m.rows(), m.rows()), |acc, (j, cj)| acc.add(&cj.scale(lp.lift.get(j, i))));
            let rhs = image.mul(m);
            if lhs != rhs {
                return Ok(Verdict::Fails(ActionWitness {
                    locus_index: k,
                    generator: i,
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Action on the glued module bundle: over a class whose representative
/// lies in the target bundle, the target action; otherwise the source
/// action.
pub struct GluedAction<'a> {
    source: Box<dyn CliffordAction + 'a>,
    target: Box<dyn CliffordAction + 'a>,
    glued: PseudoBundle,
}

/// Glues `c1` and `c2` along `gl` after [`check_action_compat`] passes.
pub fn induced_action<'a>(
    c1: impl CliffordAction + 'a,
    c2: impl CliffordAction + 'a,
    gl: &Gluing,
    module_lifts: &[Matrix],
) -> Result<GluedAction<'a>> {
    if !check_action_compat(&c1, &c2, gl, module_lifts)?.holds() {
        return Err(Error::IncompatibleActions);
    }
    let glued = glue(c1.bundle(), c2.bundle(), gl.clone())?;
    Ok(GluedAction {
        source: Box::new(c1),
        target: Box::new(c2),
        glued,
    })
}

impl GluedAction<'_> {
    fn side(&self, bp: &BasePoint) -> Result<(&dyn CliffordAction, BasePoint)> {
        let r = self.glued.resolve(bp)?;
        if self.target.bundle().has_chart(&r.terminal.chart) {
            Ok((self.target.as_ref(), r.terminal))
        } else {
            Ok((self.source.as_ref(), bp.clone()))
        }
    }
}

impl CliffordAction for GluedAction<'_> {
    fn bundle(&self) -> &PseudoBundle {
        &self.glued
    }

    fn generators_at(&self, bp: &BasePoint) -> Result<Vec<Matrix>> {
        let (side, p) = self.side(bp)?;
        side.generators_at(&p)
    }

    fn form_at(&self, bp: &BasePoint) -> Result<BilinearForm> {
        let (side, p) = self.side(bp)?;
        side.form_at(&p)
    }
}

/// `c(eᵢ)c(eⱼ) + c(eⱼ)c(eᵢ) ≠ −2λ q_ij` at some point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationWitness {
    pub point: BasePoint,
    pub i: usize,
    pub j: usize,
}

pub fn check_generator_relations(
    action: &dyn CliffordAction,
    lambda: &Rational,
    samples: &[BasePoint],
) -> Result<Verdict<RelationWitness>> {
    for bp in samples {
        let gens = action.generators_at(bp)?;
        let q = action.form_at(bp)?;
        for i in 0..gens.len() {
            for j in i..gens.len() {
                let lhs = gens[i].mul(&gens[j]).add(&gens[j].mul(&gens[i]));
                let scale = -(Rational::from_integer(2.into()) * lambda * q.get(i, j));
                if lhs != Matrix::identity(lhs.rows()).scale(&scale) {
                    return Ok(Verdict::Fails(RelationWitness { point: bp.clone(), i, j }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absring::Polynomial;
    use crate::pseudobundle::{column, induced_pseudometric, LocusPoint, PseudoMetricChart};
    use crate::rational::int;
    use alloc::vec;

    fn curve(id: &str) -> Chart {
        let x = Polynomial::var(1, 0);
        let m = PseudoMetricChart::new(1, vec![vec![&(&x * &x) + &Polynomial::one(1)]]).unwrap();
        Chart::new(id, 1, 1).with_metric(m).unwrap()
    }

    fn point2() -> Chart {
        Chart::new("V0", 0, 2)
            .with_metric(PseudoMetricChart::constant(0, &Matrix::identity(2)).unwrap())
            .unwrap()
    }

    fn g1() -> Gluing {
        Gluing::new("V1", "V0", vec![LocusPoint::new(vec![int(0)], vec![], column(&[1, 0]))])
    }

    fn half() -> PseudoBundle {
        glue(&PseudoBundle::single(curve("V1")), &PseudoBundle::single(point2()), g1()).unwrap()
    }

    #[test]
    fn fibre_algebras() {
        let cb = clifford_bundle(&half(), CliffordConvention::tensor_ideal()).unwrap();
        assert_eq!(cb.fibre_at(&BasePoint::new("V0", vec![])).unwrap().total_dim(), 4);
        assert_eq!(cb.chart_fibre(&BasePoint::new("V1", vec![int(0)])).unwrap().total_dim(), 2);
        assert_eq!(cb.fibre_at(&BasePoint::new("V1", vec![int(0)])).unwrap().total_dim(), 4);
        let empty = PseudoBundle::single(Chart::new("P", 0, 0).with_metric(PseudoMetricChart::constant(0, &Matrix::zeros(0, 0)).unwrap()).unwrap());
        let cb = clifford_bundle(&empty, CliffordConvention::action()).unwrap();
        assert_eq!(cb.fibre_at(&BasePoint::new("P", vec![])).unwrap().total_dim(), 1);
        assert!(matches!(
            clifford_bundle(&PseudoBundle::single(Chart::new("A", 0, 1)), CliffordConvention::action()),
            Err(Error::MissingMetric(_))
        ));
    }

    #[test]
    fn induced_lift_embeds_generator() {
        let cb = clifford_bundle(&half(), CliffordConvention::action()).unwrap();
        let f = induced_clifford_lift(&cb, 0).unwrap();
        let expected = Matrix::from_rows(
            vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(0), int(0)], vec![int(0), int(0)]],
            2,
        )
        .unwrap();
        assert_eq!(f.matrix(0), expected);
        assert!(f.check_multiplicative(0).holds());
    }

    #[test]
    fn zero_lift_into_zero_metric() {
        let zero_metric = Chart::new("A", 0, 1).with_metric(PseudoMetricChart::constant(0, &Matrix::zeros(1, 1)).unwrap()).unwrap();
        let b = glue(
            &PseudoBundle::single(zero_metric),
            &PseudoBundle::single(point2()),
            Gluing::new("A", "V0", vec![LocusPoint::new(vec![], vec![], Matrix::zeros(2, 1))]),
        )
        .unwrap();
        let cb = clifford_bundle(&b, CliffordConvention::action()).unwrap();
        let f = induced_clifford_lift(&cb, 0).unwrap();
        let mut expected = Matrix::zeros(4, 2);
        expected.set(0, 0, int(1));
        assert_eq!(f.matrix(0), expected);
    }

    #[test]
    fn incompatible_metrics_refused() {
        let b = glued_with_lift(column(&[2, 0]));
        let cb = clifford_bundle(&b, CliffordConvention::action()).unwrap();
        assert_eq!(induced_clifford_lift(&cb, 0).unwrap_err(), Error::IncompatibleMetrics { gluing: 0 });
    }

    fn glued_with_lift(l: Matrix) -> PseudoBundle {
        let g = Gluing::new("V1", "V0", vec![LocusPoint::new(vec![int(0)], vec![], l)]);
        glue(&PseudoBundle::single(curve("V1")), &PseudoBundle::single(point2()), g).unwrap()
    }

    #[test]
    fn phi_iso_on_half_bundle() {
        let b = half();
        let cb = clifford_bundle(&b, CliffordConvention::tensor_ideal()).unwrap();
        let g = induced_pseudometric(&b).unwrap();
        assert!(verify_phi_iso(&cb, &g, &b.sample_points(10)).unwrap().holds());
    }

    struct SourceBranch(InducedMetric, PseudoBundle);

    impl MetricField for SourceBranch {
        fn metric_at(&self, bp: &BasePoint) -> Result<Matrix> {
            if bp.chart == "V1" && bp.point == [int(0)] {
                // wrong branch: pad the source metric instead of using g₀
                let m = self.1.chart("V1")?.metric().unwrap().eval(&bp.point);
                Ok(m.direct_sum(&Matrix::diagonal(&[int(3)])))
            } else {
                self.0.at(bp)
            }
        }
    }

    #[test]
    fn phi_iso_detects_wrong_branch() {
        let b = half();
        let cb = clifford_bundle(&b, CliffordConvention::tensor_ideal()).unwrap();
        let bad = SourceBranch(induced_pseudometric(&b).unwrap(), b.clone());
        let v = verify_phi_iso(&cb, &bad, &b.sample_points(10)).unwrap();
        assert_eq!(v.witness().unwrap().point, BasePoint::new("V1", vec![int(0)]));
    }

    #[test]
    fn exterior_lift_is_minors() {
        let l = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]], 2).unwrap();
        let e = exterior_lift(&l);
        assert_eq!(*e.get(0, 0), int(1));
        assert_eq!(*e.get(3, 3), int(-2));
        assert_eq!(*e.get(1, 2), int(2));
        assert_eq!(exterior_lift(&column(&[1, 0])).to_rows()[1], vec![int(0), int(1)]);
    }

    #[test]
    fn standard_action_needs_lambda_one() {
        let cb = clifford_bundle(&half(), CliffordConvention::tensor_ideal()).unwrap();
        assert_eq!(standard_action(&cb).unwrap_err(), Error::ConventionConflict(int(2)));
    }

    #[test]
    fn curve_action_at_two() {
        // c(e_w)(w e_w + u₀) = u₀ e_w − 5w at y = 2
        let cb = clifford_bundle(&PseudoBundle::single(curve("V2")), CliffordConvention::action()).unwrap();
        let c = standard_action(&cb).unwrap();
        let gens = c.generators_at(&BasePoint::new("V2", vec![int(2)])).unwrap();
        let (u0, w) = (int(3), int(7));
        assert_eq!(gens[0].apply(&[u0.clone(), w.clone()]), vec![-(int(5) * w), u0]);
    }

    #[test]
    fn compat_and_induced_action() {
        let s = clifford_bundle(&PseudoBundle::single(curve("V1")), CliffordConvention::action()).unwrap();
        let t = clifford_bundle(&PseudoBundle::single(point2()), CliffordConvention::action()).unwrap();
        let (c1, c2) = (standard_action(&s).unwrap(), standard_action(&t).unwrap());
        let lift = vec![exterior_lift(&column(&[1, 0]))];
        assert!(check_action_compat(&c1, &c2, &g1(), &lift).unwrap().holds());
        assert!(check_action_compat(&c1, &c2, &g1(), &[Matrix::zeros(4, 2)]).unwrap().holds());
        let doubled = vec![lift[0].scale(&int(2))];
        assert!(check_action_compat(&c1, &c2, &g1(), &doubled).unwrap().holds());
        let mut grade_one_doubled = lift[0].clone();
        grade_one_doubled.set(1, 1, int(2));
        let v = check_action_compat(&c1, &c2, &g1(), &[grade_one_doubled.clone()]).unwrap();
        assert_eq!(v.witness().unwrap().generator, 0);
        assert!(matches!(
            induced_action(c1.clone(), c2.clone(), &g1(), &[grade_one_doubled]),
            Err(Error::IncompatibleActions)
        ));

        let glued = induced_action(c1.clone(), c2.clone(), &g1(), &lift).unwrap();
        let origin = BasePoint::new("V1", vec![int(0)]);
        assert_eq!(glued.generators_at(&origin).unwrap(), c2.generators_at(&BasePoint::new("V0", vec![])).unwrap());
        let one = BasePoint::new("V1", vec![int(1)]);
        assert_eq!(glued.generators_at(&one).unwrap(), c1.generators_at(&one).unwrap());
        let samples = glued.bundle().sample_points(10);
        assert!(check_generator_relations(&glued, &Rational::one(), &samples).unwrap().holds());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Constant-metric gluing `A → B` with `g_A = Lᵀ g_B L`, `g_B = MᵀM`.
        fn compatible_gluing() -> impl Strategy<Value = PseudoBundle> {
            (1usize..=3, 1usize..=3)
                .prop_flat_map(|(k1, k2)| {
                    (
                        proptest::collection::vec(-2i64..=2, k1 * k2),
                        proptest::collection::vec(-2i64..=2, k2 * k2),
                        Just((k1, k2)),
                    )
                })
                .prop_map(|(l, m, (k1, k2))| {
                    let lift = Matrix::from_fn(k2, k1, |i, j| int(l[i * k1 + j]));
                    let m = Matrix::from_fn(k2, k2, |i, j| int(m[i * k2 + j]));
                    let g2 = m.transpose().mul(&m);
                    let g1 = lift.transpose().mul(&g2).mul(&lift);
                    let a = Chart::new("A", 1, k1).with_metric(PseudoMetricChart::constant(1, &g1).unwrap()).unwrap();
                    let b = Chart::new("B", 1, k2).with_metric(PseudoMetricChart::constant(1, &g2).unwrap()).unwrap();
                    let gl = Gluing::new("A", "B", vec![LocusPoint::new(vec![int(0)], vec![int(1)], lift)]);
                    glue(&PseudoBundle::single(a), &PseudoBundle::single(b), gl).unwrap()
                })
        }

        proptest! {
            #[test]
            fn lifts_are_multiplicative_and_phi_is_iso(b in compatible_gluing(), lambda in 1i64..=2) {
                let cb = clifford_bundle(&b, CliffordConvention::new(int(lambda)).unwrap()).unwrap();
                let f = induced_clifford_lift(&cb, 0).unwrap();
                prop_assert!(f.check_multiplicative(0).holds());
                let g = induced_pseudometric(&b).unwrap();
                prop_assert!(verify_phi_iso(&cb, &g, &b.sample_points(5)).unwrap().holds());
            }

            #[test]
            fn exterior_lift_intertwines_standard_actions(b in compatible_gluing()) {
                let gl = b.gluings()[0].clone();
                let part = |id: &str| clifford_bundle(&PseudoBundle::single(b.chart(id).unwrap().clone()), CliffordConvention::action()).unwrap();
                let (c1, c2) = (standard_action(&part("A")).unwrap(), standard_action(&part("B")).unwrap());
                let lifts = vec![exterior_lift(&gl.locus[0].lift)];
                prop_assert!(check_action_compat(&c1, &c2, &gl, &lifts).unwrap().holds());
                let glued = induced_action(c1.clone(), c2, &gl, &lifts).unwrap();
                let samples = glued.bundle().sample_points(5);
                prop_assert!(check_generator_relations(&glued, &Rational::one(), &samples).unwrap().holds());
                let away = BasePoint::new("A", vec![int(7)]);
                prop_assert_eq!(glued.generators_at(&away).unwrap(), c1.generators_at(&away).unwrap());
            }
        }
    }
}
