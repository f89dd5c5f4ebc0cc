//! Pseudo-metrics: compatibility along gluings, the induced metric on a
//! glued bundle, and the rank-profile obstruction.

use alloc::vec::Vec;

use super::{BasePoint, DualProfile, Gluing, PseudoBundle, PseudoMetricChart};
use crate::absring::Polynomial;
use crate::linalg::Matrix;
use crate::rational::{one, zero};
use crate::{Error, Rational, Result, Verdict};

/// First entry where `g₁(y) ≠ Lᵀ g₂(f(y)) L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityWitness {
    pub locus_index: usize,
    pub row: usize,
    pub col: usize,
    /// `g₁(y)[row][col]`.
    pub source_value: Rational,
    /// `(Lᵀ g₂(f(y)) L)[row][col]`.
    pub target_value: Rational,
}

pub fn check_compatible(
    g1: &PseudoMetricChart,
    g2: &PseudoMetricChart,
    gl: &Gluing,
) -> Result<Verdict<CompatibilityWitness>> {
    for (k, lp) in gl.locus.iter().enumerate() {
        lp.lift.check_shape(g2.dim(), g1.dim())?;
        for (p, vars) in [(&lp.source, g1.num_vars()), (&lp.target, g2.num_vars())] {
            if p.len() != vars {
                return Err(Error::DimensionMismatch {
                    expected: vars,
                    actual: p.len(),
                });
            }
        }
        let lhs = g1.eval(&lp.source);
        let rhs = lp.lift.transpose().mul(&g2.eval(&lp.target)).mul(&lp.lift);
        for row in 0..lhs.rows() {
            for col in 0..lhs.cols() {
                if lhs.get(row, col) != rhs.get(row, col) {
                    return Ok(Verdict::Fails(CompatibilityWitness {
                        locus_index: k,
                        row,
                        col,
                        source_value: lhs.get(row, col).clone(),
                        target_value: rhs.get(row, col).clone(),
                    }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

impl PseudoBundle {
    fn metric_of(&self, chart: &str) -> Result<&PseudoMetricChart> {
        self.chart(chart)?
            .metric()
            .ok_or_else(|| Error::MissingMetric(chart.into()))
    }

    /// Compatibility of every gluing; the witness carries the gluing index.
    pub fn check_metrics_compatible(&self) -> Result<Verdict<(usize, CompatibilityWitness)>> {
        for (i, g) in self.gluings.iter().enumerate() {
            let v = check_compatible(self.metric_of(&g.source)?, self.metric_of(&g.target)?, g)?;
            if let Verdict::Fails(w) = v {
                return Ok(Verdict::Fails((i, w)));
            }
        }
        Ok(Verdict::Holds)
    }
}

/// The pseudo-metric `g̃` of a glued bundle: at a point, the metric of the
/// chart that owns the fibre there.
#[derive(Debug, Clone)]
pub struct InducedMetric {
    bundle: PseudoBundle,
}

impl InducedMetric {
    pub fn at(&self, bp: &BasePoint) -> Result<Matrix> {
        let r = self.bundle.resolve(bp)?;
        Ok(self.bundle.metric_of(&r.terminal.chart)?.eval(&r.terminal.point))
    }

    pub fn bundle(&self) -> &PseudoBundle {
        &self.bundle
    }
}

/// Refuses unless every chart has a metric and every gluing is compatible.
pub fn induced_pseudometric(b: &PseudoBundle) -> Result<InducedMetric> {
    if let Verdict::Fails((gluing, _)) = b.check_metrics_compatible()? {
        return Err(Error::IncompatibleMetrics { gluing });
    }
    for c in b.charts() {
        b.metric_of(c.id())?;
    }
    Ok(InducedMetric { bundle: b.clone() })
}

/// A sample point where the metric is not PSD of the declared dual rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricDefect {
    pub point: BasePoint,
    pub expected_rank: usize,
    /// `None` when the matrix is not positive semidefinite.
    pub actual_rank: Option<usize>,
}

/// At each sample point: the metric over the fibre is PSD with rank equal to
/// the dual rank there.
pub fn validate_pseudometric(b: &PseudoBundle, samples: &[BasePoint]) -> Result<Verdict<MetricDefect>> {
    for bp in samples {
        let r = b.resolve(bp)?;
        let m = b.metric_of(&r.terminal.chart)?.eval(&r.terminal.point);
        let expected_rank = b.dual_rank_at(bp)?;
        let actual_rank = m.psd_rank();
        if actual_rank != Some(expected_rank) {
            return Ok(Verdict::Fails(MetricDefect {
                point: bp.clone(),
                expected_rank,
                actual_rank,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Whether some continuous PSD matrix field can have this rank profile. The
/// rank of such a field can only drop on closed sets, so an isolated point
/// of higher rank is impossible. On a zero-dimensional base the only
/// exception is the whole base.
pub fn rank_profile_realizable(p: &DualProfile, base_dim: usize) -> bool {
    base_dim == 0 || p.exceptions().all(|(_, r)| r <= p.default_rank())
}

/// A polynomial metric of size `default_rank` realizing `p`, when one
/// exists: diagonal entry `i` is the product of `|x − pₖ|²` over the
/// exceptions `pₖ` whose rank is at most `i`.
pub fn realizing_metric(p: &DualProfile, base_dim: usize) -> Option<PseudoMetricChart> {
    if base_dim == 0 {
        let rank = p.rank_at(&[]);
        let d = p.default_rank().max(rank);
        let diag: Vec<Rational> = (0..d)
            .map(|i| if i < rank { one() } else { zero() })
            .collect();
        return PseudoMetricChart::constant(0, &Matrix::diagonal(&diag)).ok();
    }
    if !rank_profile_realizable(p, base_dim) {
        return None;
    }
    let d = p.default_rank();
    let dist2 = |pt: &[Rational]| -> Polynomial {
        (0..base_dim).fold(Polynomial::zero(base_dim), |acc, j| {
            let diff = &Polynomial::var(base_dim, j) - &Polynomial::constant(base_dim, pt[j].clone());
            &acc + &(&diff * &diff)
        })
    };
    let diag: Vec<Polynomial> = (0..d)
        .map(|i| {
            p.exceptions()
                .filter(|&(_, r)| r <= i)
                .fold(Polynomial::one(base_dim), |acc, (pt, _)| &acc * &dist2(pt))
        })
        .collect();
    let zero = Polynomial::zero(base_dim);
    let rows = (0..d)
        .map(|i| (0..d).map(|j| if i == j { diag[i].clone() } else { zero.clone() }).collect())
        .collect();
    PseudoMetricChart::new(base_dim, rows).ok()
}
