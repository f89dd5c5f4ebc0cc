//! Fibrewise direct sum, tensor product and dual.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{Chart, DualProfile, PseudoBundle};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Both bundles must have the same charts (ids and base dimensions, in the
/// same order) and the same gluing loci.
fn check_same_base(b1: &PseudoBundle, b2: &PseudoBundle) -> Result<()> {
    if b1.charts.len() != b2.charts.len() || b1.gluings.len() != b2.gluings.len() {
        return Err(Error::BaseMismatch("different numbers of charts or gluings".to_string()));
    }
    for (c1, c2) in b1.charts.iter().zip(&b2.charts) {
        if c1.id != c2.id || c1.base_dim != c2.base_dim {
            return Err(Error::BaseMismatch(format!("chart `{}` vs `{}`", c1.id, c2.id)));
        }
    }
    for (k, (g1, g2)) in b1.gluings.iter().zip(&b2.gluings).enumerate() {
        let same_points = g1.locus.len() == g2.locus.len()
            && g1
                .locus
                .iter()
                .zip(&g2.locus)
                .all(|(p, q)| p.source == q.source && p.target == q.target);
        if g1.source != g2.source || g1.target != g2.target || !same_points {
            return Err(Error::BaseMismatch(format!("gluing {k} differs")));
        }
    }
    Ok(())
}

fn combine(
    b1: &PseudoBundle,
    b2: &PseudoBundle,
    fibre: impl Fn(usize, usize) -> usize,
    profile: impl Fn(&DualProfile, &DualProfile) -> DualProfile,
    metric: impl Fn(&super::PseudoMetricChart, &super::PseudoMetricChart) -> super::PseudoMetricChart,
    lift: impl Fn(&Matrix, &Matrix) -> Matrix,
) -> Result<PseudoBundle> {
    check_same_base(b1, b2)?;
    let charts = b1
        .charts
        .iter()
        .zip(&b2.charts)
        .map(|(c1, c2)| {
            let c = Chart::new(c1.id.clone(), c1.base_dim, fibre(c1.fibre_dim, c2.fibre_dim))
                .with_dual_profile(profile(&c1.dual_profile, &c2.dual_profile))?;
            match (&c1.metric, &c2.metric) {
                (Some(m1), Some(m2)) => c.with_metric(metric(m1, m2)),
                _ => Ok(c),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let gluings = b1
        .gluings
        .iter()
        .zip(&b2.gluings)
        .map(|(g1, g2)| g1.with_lifts(g1.locus.iter().zip(&g2.locus).map(|(p, q)| lift(&p.lift, &q.lift))))
        .collect();
    PseudoBundle::new(charts, gluings)
}

/// Fibrewise `⊕`: dimensions add, lifts `A ⊕ B`, metrics block-diagonal.
pub fn direct_sum(b1: &PseudoBundle, b2: &PseudoBundle) -> Result<PseudoBundle> {
    combine(
        b1,
        b2,
        |a, b| a + b,
        DualProfile::sum,
        |m1, m2| m1.block_diagonal(m2),
        Matrix::direct_sum,
    )
}

/// Fibrewise `⊗`: dimensions multiply, lifts and metrics by Kronecker
/// product.
pub fn tensor_product(b1: &PseudoBundle, b2: &PseudoBundle) -> Result<PseudoBundle> {
    combine(
        b1,
        b2,
        |a, b| a * b,
        DualProfile::product,
        |m1, m2| m1.kron(m2),
        Matrix::kron,
    )
}

/// Fibrewise smooth dual. The dual of a chart has dimension equal to its
/// (constant) dual rank, spanned by the duals of the first `r` fibre
/// coordinates. Over a locus point with lift `L`, the dual lift is
/// `(Bᵀ)⁻¹` where `B` is the top-left `r₂×r₁` block of `L`; it exists only
/// when `r₁ = r₂` and `B` is invertible. Metrics are dropped.
pub fn dual(b: &PseudoBundle) -> Result<PseudoBundle> {
    let charts = b
        .charts
        .iter()
        .map(|c| {
            if !c.dual_profile.is_constant() {
                return Err(Error::NonConstantDual(c.id.clone()));
            }
            Ok(Chart::new(c.id.clone(), c.base_dim, c.dual_profile.default_rank))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut gluings = Vec::with_capacity(b.gluings.len());
    for (gi, g) in b.gluings.iter().enumerate() {
        let r1 = b.chart(&g.source)?.dual_profile.default_rank;
        let r2 = b.chart(&g.target)?.dual_profile.default_rank;
        let mut lifts = Vec::with_capacity(g.locus.len());
        for (li, lp) in g.locus.iter().enumerate() {
            if r1 != r2 {
                return Err(Error::DualGluingObstructed {
                    gluing: gi,
                    locus_index: li,
                    reason: format!("dual dimensions differ: {r1} (source) vs {r2} (target)"),
                });
            }
            let inv = lp.lift.block(r2, r1).transpose().inverse().ok_or_else(|| {
                Error::DualGluingObstructed {
                    gluing: gi,
                    locus_index: li,
                    reason: "restricted lift is not invertible".to_string(),
                }
            })?;
            lifts.push(inv);
        }
        gluings.push(g.with_lifts(lifts));
    }
    PseudoBundle::new(charts, gluings)
}
