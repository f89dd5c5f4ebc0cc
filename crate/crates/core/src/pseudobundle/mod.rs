//! Vector pseudo-bundles presented by finitely many trivial charts and
//! gluings along finite loci.
//!
//! A chart is a trivial piece `ℚⁿ × ℚᵏ → ℚⁿ`. A gluing identifies finitely
//! many base points of one chart with points of another and maps the fibres
//! linearly. Identified points form chains `p → f(p) → f(f(p)) → …`; the
//! fibre over the class is the fibre at the end of the chain, reached through
//! the product of the lifts along the way.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::absring::Polynomial;
use crate::linalg::Matrix;
use crate::rational::{frac, int};
use crate::{Error, Rational, Result};

mod commute;
mod metric;
mod ops;

pub use commute::{
    compare_glued, glue_then_op, op_then_glue, verify_operation_gluing_commutes, BundlePair,
    CommuteMismatch, MismatchKind, OperationKind,
};
pub use metric::{
    check_compatible, induced_pseudometric, rank_profile_realizable, realizing_metric,
    validate_pseudometric,
    CompatibilityWitness, InducedMetric, MetricDefect,
};
pub use ops::{direct_sum, dual, tensor_product};

/// Rank of the smooth dual of each fibre: a default value with finitely many
/// exceptional base points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualProfile {
    default_rank: usize,
    exceptions: BTreeMap<Vec<Rational>, usize>,
}

impl DualProfile {
    pub fn constant(rank: usize) -> DualProfile {
        DualProfile {
            default_rank: rank,
            exceptions: BTreeMap::new(),
        }
    }

    /// Adds (or replaces) the rank at one point.
    pub fn with_exception(mut self, point: Vec<Rational>, rank: usize) -> DualProfile {
        self.exceptions.insert(point, rank);
        self
    }

    pub fn default_rank(&self) -> usize {
        self.default_rank
    }

    pub fn exceptions(&self) -> impl Iterator<Item = (&[Rational], usize)> {
        self.exceptions.iter().map(|(p, r)| (p.as_slice(), *r))
    }

    pub fn is_constant(&self) -> bool {
        self.exceptions.values().all(|&r| r == self.default_rank)
    }

    pub fn rank_at(&self, point: &[Rational]) -> usize {
        self.exceptions.get(point).copied().unwrap_or(self.default_rank)
    }

    pub fn max_rank(&self) -> usize {
        self.exceptions.values().copied().fold(self.default_rank, usize::max)
    }

    fn combine(&self, other: &DualProfile, op: impl Fn(usize, usize) -> usize) -> DualProfile {
        let points: BTreeSet<&Vec<Rational>> =
            self.exceptions.keys().chain(other.exceptions.keys()).collect();
        DualProfile {
            default_rank: op(self.default_rank, other.default_rank),
            exceptions: points
                .into_iter()
                .map(|p| (p.clone(), op(self.rank_at(p), other.rank_at(p))))
                .collect(),
        }
    }

    /// Pointwise sum (profile of a direct sum).
    pub fn sum(&self, other: &DualProfile) -> DualProfile {
        self.combine(other, |a, b| a + b)
    }

    /// Pointwise product (profile of a tensor product).
    pub fn product(&self, other: &DualProfile) -> DualProfile {
        self.combine(other, |a, b| a * b)
    }
}

/// Symmetric matrix of polynomials in the base coordinates of a chart.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PseudoMetricChart {
    num_vars: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl PseudoMetricChart {
    pub fn new(num_vars: usize, entries: Vec<Vec<Polynomial>>) -> Result<PseudoMetricChart> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            if let Some(p) = row.iter().find(|p| p.num_vars() != num_vars) {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    actual: p.num_vars(),
                });
            }
        }
        let asym = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| entries[i][j] != entries[j][i]);
        if let Some((row, col)) = asym {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(PseudoMetricChart { num_vars, entries })
    }

    /// The constant metric given by a rational matrix.
    pub fn constant(num_vars: usize, m: &Matrix) -> Result<PseudoMetricChart> {
        let rows = m
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|c| Polynomial::constant(num_vars, c)).collect())
            .collect();
        PseudoMetricChart::new(num_vars, rows)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    /// Panics if `point` has the wrong arity.
    pub fn eval(&self, point: &[Rational]) -> Matrix {
        assert_eq!(point.len(), self.num_vars);
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| self.entries[i][j].eval(point))
    }

    pub(crate) fn block_diagonal(&self, other: &PseudoMetricChart) -> PseudoMetricChart {
        let (a, b) = (self.dim(), other.dim());
        let zero = Polynomial::zero(self.num_vars);
        let entries = (0..a + b)
            .map(|i| {
                (0..a + b)
                    .map(|j| match (i < a, j < a) {
                        (true, true) => self.entries[i][j].clone(),
                        (false, false) => other.entries[i - a][j - a].clone(),
                        _ => zero.clone(),
                    })
                    .collect()
            })
            .collect();
        PseudoMetricChart {
            num_vars: self.num_vars,
            entries,
        }
    }

    pub(crate) fn kron(&self, other: &PseudoMetricChart) -> PseudoMetricChart {
        let (a, b) = (self.dim(), other.dim());
        let entries = (0..a * b)
            .map(|r| {
                (0..a * b)
                    .map(|c| &self.entries[r / b][c / b] * &other.entries[r % b][c % b])
                    .collect()
            })
            .collect();
        PseudoMetricChart {
            num_vars: self.num_vars,
            entries,
        }
    }
}

impl fmt::Debug for PseudoMetricChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// A trivial piece `ℚ^base_dim × ℚ^fibre_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    id: String,
    base_dim: usize,
    fibre_dim: usize,
    dual_profile: DualProfile,
    metric: Option<PseudoMetricChart>,
}

impl Chart {
    /// Chart whose fibres are standard, i.e. the dual has full rank.
    pub fn new(id: impl Into<String>, base_dim: usize, fibre_dim: usize) -> Chart {
        Chart {
            id: id.into(),
            base_dim,
            fibre_dim,
            dual_profile: DualProfile::constant(fibre_dim),
            metric: None,
        }
    }

    pub fn with_dual_profile(mut self, profile: DualProfile) -> Result<Chart> {
        let ranks = core::iter::once(profile.default_rank()).chain(profile.exceptions().map(|(_, r)| r));
        if let Some(rank) = ranks.into_iter().find(|&r| r > self.fibre_dim) {
            return Err(Error::DualRankTooLarge {
                chart: self.id.clone(),
                rank,
                fibre_dim: self.fibre_dim,
            });
        }
        for (p, _) in profile.exceptions() {
            self.check_point(p)?;
        }
        self.dual_profile = profile;
        Ok(self)
    }

    pub fn with_metric(mut self, metric: PseudoMetricChart) -> Result<Chart> {
        if metric.dim() != self.fibre_dim {
            return Err(Error::ShapeMismatch {
                expected_rows: self.fibre_dim,
                expected_cols: self.fibre_dim,
                rows: metric.dim(),
                cols: metric.dim(),
            });
        }
        if metric.num_vars() != self.base_dim {
            return Err(Error::DimensionMismatch {
                expected: self.base_dim,
                actual: metric.num_vars(),
            });
        }
        self.metric = Some(metric);
        Ok(self)
    }

    pub fn without_metric(mut self) -> Chart {
        self.metric = None;
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fibre_dim(&self) -> usize {
        self.fibre_dim
    }

    pub fn dual_profile(&self) -> &DualProfile {
        &self.dual_profile
    }

    pub fn metric(&self) -> Option<&PseudoMetricChart> {
        self.metric.as_ref()
    }

    pub fn check_point(&self, point: &[Rational]) -> Result<()> {
        if point.len() == self.base_dim {
            Ok(())
        } else {
            Err(Error::PointOutsideBase {
                chart: self.id.clone(),
                expected: self.base_dim,
                actual: point.len(),
            })
        }
    }
}

/// One identified pair of a gluing with the fibre map over it,
/// a `fibre_dim(target) × fibre_dim(source)` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocusPoint {
    pub source: Vec<Rational>,
    pub target: Vec<Rational>,
    pub lift: Matrix,
}

impl LocusPoint {
    pub fn new(source: Vec<Rational>, target: Vec<Rational>, lift: Matrix) -> LocusPoint {
        LocusPoint {
            source,
            target,
            lift,
        }
    }
}

/// Gluing of `source` into `target` along a finite locus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub source: String,
    pub target: String,
    pub locus: Vec<LocusPoint>,
}

impl Gluing {
    pub fn new(source: impl Into<String>, target: impl Into<String>, locus: Vec<LocusPoint>) -> Gluing {
        Gluing {
            source: source.into(),
            target: target.into(),
            locus,
        }
    }

    /// Same charts and points, lifts replaced.
    pub fn with_lifts(&self, lifts: impl IntoIterator<Item = Matrix>) -> Gluing {
        Gluing {
            source: self.source.clone(),
            target: self.target.clone(),
            locus: self
                .locus
                .iter()
                .zip(lifts)
                .map(|(lp, lift)| LocusPoint::new(lp.source.clone(), lp.target.clone(), lift))
                .collect(),
        }
    }
}

/// A point of one chart's base.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasePoint {
    pub chart: String,
    pub point: Vec<Rational>,
}

impl BasePoint {
    pub fn new(chart: impl Into<String>, point: Vec<Rational>) -> BasePoint {
        BasePoint {
            chart: chart.into(),
            point,
        }
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.chart)?;
        for (i, c) in self.point.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Where a base point ends up after following its identification chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved {
    /// The representative whose chart owns the fibre.
    pub terminal: BasePoint,
    /// Composite lift from the fibre at the point to the terminal fibre.
    pub lift: Matrix,
    /// Number of gluing steps taken.
    pub steps: usize,
}

type NodeKey = (usize, Vec<Rational>);

#[derive(Clone, Default)]
struct Identification {
    nodes: BTreeMap<NodeKey, usize>,
    keys: Vec<NodeKey>,
    /// `(terminal node, composite lift, steps)` per node.
    resolved: Vec<(usize, Matrix, usize)>,
}

/// Charts plus gluings, with the identification they generate.
#[derive(Clone)]
pub struct PseudoBundle {
    charts: Vec<Chart>,
    gluings: Vec<Gluing>,
    index: BTreeMap<String, usize>,
    ident: Identification,
}

impl PseudoBundle {
    pub fn new(charts: Vec<Chart>, gluings: Vec<Gluing>) -> Result<PseudoBundle> {
        let mut index = BTreeMap::new();
        for (i, c) in charts.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::DuplicateChart(c.id.clone()));
            }
        }
        let mut b = PseudoBundle {
            charts,
            gluings,
            index,
            ident: Identification::default(),
        };
        b.ident = b.identify()?;
        Ok(b)
    }

    pub fn single(chart: Chart) -> PseudoBundle {
        PseudoBundle::new(alloc::vec![chart], Vec::new()).expect("one chart, no gluings")
    }

    pub fn disjoint_union(b1: &PseudoBundle, b2: &PseudoBundle) -> Result<PseudoBundle> {
        let charts = b1.charts.iter().chain(&b2.charts).cloned().collect();
        let gluings = b1.gluings.iter().chain(&b2.gluings).cloned().collect();
        PseudoBundle::new(charts, gluings)
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn chart(&self, id: &str) -> Result<&Chart> {
        self.index
            .get(id)
            .map(|&i| &self.charts[i])
            .ok_or_else(|| Error::UnknownChart(id.to_string()))
    }

    pub fn has_chart(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    fn chart_index(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownChart(id.to_string()))
    }

    /// Replaces one lift matrix. Shapes are rechecked.
    pub fn with_lift(&self, gluing: usize, locus_index: usize, lift: Matrix) -> Result<PseudoBundle> {
        let mut gluings = self.gluings.clone();
        let lp = gluings
            .get_mut(gluing)
            .and_then(|g| g.locus.get_mut(locus_index))
            .ok_or(Error::IndexOutOfRange {
                index: gluing,
                n: self.gluings.len(),
            })?;
        lp.lift = lift;
        PseudoBundle::new(self.charts.clone(), gluings)
    }

    fn identify(&self) -> Result<Identification> {
        let mut id = Identification::default();
        let node = |id: &mut Identification, chart: usize, p: &[Rational]| -> usize {
            let key = (chart, p.to_vec());
            if let Some(&n) = id.nodes.get(&key) {
                return n;
            }
            let n = id.keys.len();
            id.nodes.insert(key.clone(), n);
            id.keys.push(key);
            n
        };
        let mut out: BTreeMap<usize, (usize, &Matrix)> = BTreeMap::new();
        let mut parent: Vec<usize> = Vec::new();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.gluings {
            let (si, ti) = (self.chart_index(&g.source)?, self.chart_index(&g.target)?);
            let (sc, tc) = (&self.charts[si], &self.charts[ti]);
            let mut seen_src = BTreeSet::new();
            let mut seen_tgt = BTreeSet::new();
            for lp in &g.locus {
                sc.check_point(&lp.source)?;
                tc.check_point(&lp.target)?;
                lp.lift.check_shape(tc.fibre_dim, sc.fibre_dim)?;
                if !seen_src.insert(&lp.source) || !seen_tgt.insert(&lp.target) {
                    return Err(Error::ConflictingIdentification {
                        chart: g.source.clone(),
                        reason: "base map is not injective on the locus".to_string(),
                    });
                }
                let u = node(&mut id, si, &lp.source);
                let v = node(&mut id, ti, &lp.target);
                while parent.len() < id.keys.len() {
                    parent.push(parent.len());
                }
                if out.insert(u, (v, &lp.lift)).is_some() {
                    return Err(Error::ConflictingIdentification {
                        chart: g.source.clone(),
                        reason: format!("{} is glued twice", self.display_key(&id.keys[u])),
                    });
                }
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru == rv {
                    return Err(Error::ConflictingIdentification {
                        chart: g.source.clone(),
                        reason: format!("gluing {} closes a cycle", self.display_key(&id.keys[u])),
                    });
                }
                parent[ru] = rv;
            }
        }
        for n in 0..id.keys.len() {
            let fibre = self.charts[id.keys[n].0].fibre_dim;
            let mut lift = Matrix::identity(fibre);
            let mut cur = n;
            let mut steps = 0;
            while let Some(&(next, l)) = out.get(&cur) {
                lift = l.mul(&lift);
                cur = next;
                steps += 1;
            }
            id.resolved.push((cur, lift, steps));
        }
        Ok(id)
    }

    fn display_key(&self, key: &NodeKey) -> String {
        BasePoint::new(self.charts[key.0].id.clone(), key.1.clone()).to_string()
    }

    pub fn resolve(&self, bp: &BasePoint) -> Result<Resolved> {
        let ci = self.chart_index(&bp.chart)?;
        let chart = &self.charts[ci];
        chart.check_point(&bp.point)?;
        match self.ident.nodes.get(&(ci, bp.point.clone())) {
            None => Ok(Resolved {
                terminal: bp.clone(),
                lift: Matrix::identity(chart.fibre_dim),
                steps: 0,
            }),
            Some(&n) => {
                let (t, lift, steps) = &self.ident.resolved[n];
                let (tc, tp) = &self.ident.keys[*t];
                Ok(Resolved {
                    terminal: BasePoint::new(self.charts[*tc].id.clone(), tp.clone()),
                    lift: lift.clone(),
                    steps: *steps,
                })
            }
        }
    }

    /// Fibre dimension over the class of `bp`: the terminal chart's fibre.
    pub fn fibre_dim_at(&self, bp: &BasePoint) -> Result<usize> {
        let r = self.resolve(bp)?;
        Ok(self.chart(&r.terminal.chart)?.fibre_dim)
    }

    /// Dual rank over the class of `bp`, read at the terminal point.
    pub fn dual_rank_at(&self, bp: &BasePoint) -> Result<usize> {
        let r = self.resolve(bp)?;
        Ok(self.chart(&r.terminal.chart)?.dual_profile.rank_at(&r.terminal.point))
    }

    /// Every point appearing in a locus, then `per_chart` fixed rational
    /// points in each chart (a zero-dimensional base contributes its single
    /// point). No duplicates; order is deterministic.
    pub fn sample_points(&self, per_chart: usize) -> Vec<BasePoint> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut push = |bp: BasePoint| {
            if seen.insert(bp.clone()) {
                out.push(bp);
            }
        };
        for g in &self.gluings {
            for lp in &g.locus {
                push(BasePoint::new(g.source.clone(), lp.source.clone()));
                push(BasePoint::new(g.target.clone(), lp.target.clone()));
            }
        }
        for (ci, c) in self.charts.iter().enumerate() {
            for k in 0..per_chart {
                let point = (0..c.base_dim)
                    .map(|j| {
                        let num = ((k * 5 + j * 3 + ci) % 13) as i64 - 6;
                        let den = (k % 4) as i64 + 1;
                        frac(num, den)
                    })
                    .collect();
                push(BasePoint::new(c.id.clone(), point));
            }
        }
        out
    }
}

impl PartialEq for PseudoBundle {
    fn eq(&self, other: &Self) -> bool {
        self.charts == other.charts && self.gluings == other.gluings
    }
}

impl Eq for PseudoBundle {}

impl fmt::Debug for PseudoBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PseudoBundle")
            .field("charts", &self.charts)
            .field("gluings", &self.gluings)
            .finish()
    }
}

/// Glues chart `g.source` of `b1` into chart `g.target` of `b2`. Over an
/// identified point the fibre is the target fibre.
pub fn glue(b1: &PseudoBundle, b2: &PseudoBundle, g: Gluing) -> Result<PseudoBundle> {
    b1.chart(&g.source)?;
    b2.chart(&g.target)?;
    let mut gluings: Vec<Gluing> = b1.gluings.iter().chain(&b2.gluings).cloned().collect();
    gluings.push(g);
    let charts = b1.charts.iter().chain(&b2.charts).cloned().collect();
    PseudoBundle::new(charts, gluings)
}

/// `[[a]]`-style one-column lift from rationals.
pub fn column(entries: &[i64]) -> Matrix {
    Matrix::column_vector(&entries.iter().map(|&c| int(c)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn crossed() -> PseudoBundle {
        let v0 = PseudoBundle::single(Chart::new("V0", 0, 2));
        let v1 = PseudoBundle::single(Chart::new("V1", 1, 1));
        let v2 = PseudoBundle::single(Chart::new("V2", 1, 1));
        let g1 = Gluing::new("V1", "V0", vec![LocusPoint::new(vec![int(0)], vec![], column(&[1, 0]))]);
        let b = glue(&v1, &v0, g1).unwrap();
        let g2 = Gluing::new("V2", "V0", vec![LocusPoint::new(vec![int(0)], vec![], column(&[0, 1]))]);
        glue(&v2, &b, g2).unwrap()
    }

    #[test]
    fn glued_fibre_is_target_fibre() {
        let b = crossed();
        assert_eq!(b.fibre_dim_at(&BasePoint::new("V1", vec![int(0)])).unwrap(), 2);
        assert_eq!(b.fibre_dim_at(&BasePoint::new("V1", vec![int(1)])).unwrap(), 1);
        assert_eq!(b.fibre_dim_at(&BasePoint::new("V2", vec![int(0)])).unwrap(), 2);
        let r = b.resolve(&BasePoint::new("V2", vec![int(0)])).unwrap();
        assert_eq!(r.terminal, BasePoint::new("V0", vec![]));
        assert_eq!(r.lift, column(&[0, 1]));
    }

    #[test]
    fn empty_locus_is_disjoint_union() {
        let a = PseudoBundle::single(Chart::new("A", 1, 2));
        let b = PseudoBundle::single(Chart::new("B", 1, 3));
        let glued = glue(&a, &b, Gluing::new("A", "B", vec![])).unwrap();
        assert_eq!(glued.fibre_dim_at(&BasePoint::new("A", vec![int(0)])).unwrap(), 2);
        assert_eq!(glued.fibre_dim_at(&BasePoint::new("B", vec![int(0)])).unwrap(), 3);
    }

    #[test]
    fn chains_compose_lifts() {
        let charts = vec![Chart::new("A", 1, 1), Chart::new("B", 1, 2), Chart::new("C", 0, 3)];
        let gl = vec![
            Gluing::new("A", "B", vec![LocusPoint::new(vec![int(0)], vec![int(5)], column(&[1, 2]))]),
            Gluing::new(
                "B",
                "C",
                vec![LocusPoint::new(
                    vec![int(5)],
                    vec![],
                    Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(1), int(1)]], 2).unwrap(),
                )],
            ),
        ];
        let b = PseudoBundle::new(charts, gl).unwrap();
        let r = b.resolve(&BasePoint::new("A", vec![int(0)])).unwrap();
        assert_eq!(r.steps, 2);
        assert_eq!(r.lift, column(&[1, 2, 3]));
    }

    #[test]
    fn rejects_bad_gluings() {
        let a = PseudoBundle::single(Chart::new("A", 1, 1));
        let b = PseudoBundle::single(Chart::new("B", 1, 2));
        let bad_shape = Gluing::new("A", "B", vec![LocusPoint::new(vec![int(0)], vec![int(0)], column(&[1]))]);
        assert!(matches!(glue(&a, &b, bad_shape), Err(Error::ShapeMismatch { .. })));
        let bad_point = Gluing::new("A", "B", vec![LocusPoint::new(vec![], vec![int(0)], column(&[1, 0]))]);
        assert!(matches!(glue(&a, &b, bad_point), Err(Error::PointOutsideBase { .. })));
        let not_injective = Gluing::new(
            "A",
            "B",
            vec![
                LocusPoint::new(vec![int(0)], vec![int(0)], column(&[1, 0])),
                LocusPoint::new(vec![int(1)], vec![int(0)], column(&[1, 0])),
            ],
        );
        assert!(matches!(glue(&a, &b, not_injective), Err(Error::ConflictingIdentification { .. })));
        assert!(matches!(glue(&a, &a, Gluing::new("A", "A", vec![])), Err(Error::DuplicateChart(_))));
        assert!(matches!(glue(&a, &b, Gluing::new("B", "A", vec![])), Err(Error::UnknownChart(_))));
    }

    #[test]
    fn rejects_double_and_cyclic_identification() {
        let charts = vec![Chart::new("A", 1, 1), Chart::new("B", 1, 1)];
        let lp = |s: i64, t: i64| LocusPoint::new(vec![int(s)], vec![int(t)], column(&[1]));
        let twice = vec![Gluing::new("A", "B", vec![lp(0, 0)]), Gluing::new("A", "B", vec![lp(0, 1)])];
        assert!(matches!(
            PseudoBundle::new(charts.clone(), twice),
            Err(Error::ConflictingIdentification { .. })
        ));
        let cycle = vec![Gluing::new("A", "B", vec![lp(0, 0)]), Gluing::new("B", "A", vec![lp(0, 0)])];
        assert!(matches!(
            PseudoBundle::new(charts, cycle),
            Err(Error::ConflictingIdentification { .. })
        ));
    }

    #[test]
    fn dual_profile_rank_bounds() {
        let p = DualProfile::constant(0).with_exception(vec![int(0)], 2);
        assert!(matches!(
            Chart::new("A", 1, 1).with_dual_profile(p),
            Err(Error::DualRankTooLarge { rank: 2, .. })
        ));
        let p = DualProfile::constant(1).with_exception(vec![int(0), int(0)], 0);
        assert!(matches!(
            Chart::new("A", 1, 1).with_dual_profile(p),
            Err(Error::PointOutsideBase { .. })
        ));
    }

    #[test]
    fn sample_points_are_deterministic_and_distinct() {
        let b = crossed();
        let s = b.sample_points(10);
        assert_eq!(s, b.sample_points(10));
        assert_eq!(s.iter().collect::<BTreeSet<_>>().len(), s.len());
        assert_eq!(s[0], BasePoint::new("V1", vec![int(0)]));
        assert_eq!(s.iter().filter(|p| p.chart == "V0").count(), 1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// Every identified class has one terminal and all its members
            /// agree on the fibre dimension.
            #[test]
            fn identification_is_consistent(
                dims in proptest::collection::vec(1usize..4, 3),
                edges in proptest::collection::vec((0usize..3, 0usize..3, -2i64..3, -2i64..3), 0..6)
            ) {
                let charts: Vec<Chart> = dims.iter().enumerate().map(|(i, &d)| Chart::new(format!("C{i}"), 1, d)).collect();
                let gluings: Vec<Gluing> = edges.iter().filter(|(s, t, _, _)| s < t).map(|&(s, t, ps, pt)| {
                    Gluing::new(format!("C{s}"), format!("C{t}"), vec![LocusPoint::new(vec![int(ps)], vec![int(pt)], Matrix::zeros(dims[t], dims[s]))])
                }).collect();
                if let Ok(b) = PseudoBundle::new(charts, gluings) {
                    for g in b.gluings() {
                        for lp in &g.locus {
                            let s = b.resolve(&BasePoint::new(g.source.clone(), lp.source.clone())).unwrap();
                            let t = b.resolve(&BasePoint::new(g.target.clone(), lp.target.clone())).unwrap();
                            prop_assert_eq!(&s.terminal, &t.terminal);
                            prop_assert_eq!(s.steps, t.steps + 1);
                            let ft = b.fibre_dim_at(&t.terminal).unwrap();
                            prop_assert_eq!(b.fibre_dim_at(&BasePoint::new(g.source.clone(), lp.source.clone())).unwrap(), ft);
                        }
                    }
                }
            }
        }
    }
}
