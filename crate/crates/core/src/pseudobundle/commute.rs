//! Gluing versus fibrewise operations: `glue(A₁ ⊕ B₁, A₂ ⊕ B₂)` against
//! `glue(A₁, A₂) ⊕ glue(B₁, B₂)`, and likewise for `⊗`.

use alloc::string::ToString;

use super::{direct_sum, glue, tensor_product, BasePoint, Gluing, PseudoBundle};
use crate::linalg::Matrix;
use crate::{Error, Result, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperationKind {
    Sum,
    Tensor,
}

impl OperationKind {
    pub fn apply(self, b1: &PseudoBundle, b2: &PseudoBundle) -> Result<PseudoBundle> {
        match self {
            OperationKind::Sum => direct_sum(b1, b2),
            OperationKind::Tensor => tensor_product(b1, b2),
        }
    }

    pub fn apply_lift(self, a: &Matrix, b: &Matrix) -> Matrix {
        match self {
            OperationKind::Sum => a.direct_sum(b),
            OperationKind::Tensor => a.kron(b),
        }
    }
}

/// A gluing of a chart of `source` into a chart of `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundlePair {
    pub source: PseudoBundle,
    pub target: PseudoBundle,
    pub gluing: Gluing,
}

impl BundlePair {
    pub fn glued(&self) -> Result<PseudoBundle> {
        glue(&self.source, &self.target, self.gluing.clone())
    }
}

/// `op(glue(a), glue(b))`.
pub fn glue_then_op(kind: OperationKind, a: &BundlePair, b: &BundlePair) -> Result<PseudoBundle> {
    kind.apply(&a.glued()?, &b.glued()?)
}

/// `glue(op(a.source, b.source), op(a.target, b.target))` along the combined
/// lift.
pub fn op_then_glue(kind: OperationKind, a: &BundlePair, b: &BundlePair) -> Result<PseudoBundle> {
    let (ga, gb) = (&a.gluing, &b.gluing);
    let same = ga.source == gb.source
        && ga.target == gb.target
        && ga.locus.len() == gb.locus.len()
        && ga.locus.iter().zip(&gb.locus).all(|(p, q)| p.source == q.source && p.target == q.target);
    if !same {
        return Err(Error::BaseMismatch("gluings differ in charts or locus".to_string()));
    }
    let g = ga.with_lifts(ga.locus.iter().zip(&gb.locus).map(|(p, q)| kind.apply_lift(&p.lift, &q.lift)));
    glue(&kind.apply(&a.source, &b.source)?, &kind.apply(&a.target, &b.target)?, g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MismatchKind {
    Terminal { left: BasePoint, right: BasePoint },
    FibreDim { left: usize, right: usize },
    Lift { left: Matrix, right: Matrix },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommuteMismatch {
    pub point: BasePoint,
    pub kind: MismatchKind,
}

/// Compares two glued bundles over the same charts: at each sample point
/// both must resolve to the same representative, with equal fibre dimension
/// and equal composite lift.
pub fn compare_glued(
    lhs: &PseudoBundle,
    rhs: &PseudoBundle,
    samples: &[BasePoint],
) -> Result<Verdict<CommuteMismatch>> {
    for bp in samples {
        let (l, r) = (lhs.resolve(bp)?, rhs.resolve(bp)?);
        let fail = |kind| Ok(Verdict::Fails(CommuteMismatch { point: bp.clone(), kind }));
        if l.terminal != r.terminal {
            return fail(MismatchKind::Terminal {
                left: l.terminal,
                right: r.terminal,
            });
        }
        let (dl, dr) = (lhs.fibre_dim_at(bp)?, rhs.fibre_dim_at(bp)?);
        if dl != dr {
            return fail(MismatchKind::FibreDim { left: dl, right: dr });
        }
        if l.lift != r.lift {
            return fail(MismatchKind::Lift {
                left: l.lift,
                right: r.lift,
            });
        }
    }
    Ok(Verdict::Holds)
}

/// Builds both sides and compares them at `samples`, or at the glue-then-op
/// bundle's default sample points when `samples` is `None`.
pub fn verify_operation_gluing_commutes(
    kind: OperationKind,
    a: &BundlePair,
    b: &BundlePair,
    samples: Option<&[BasePoint]>,
) -> Result<Verdict<CommuteMismatch>> {
    let lhs = glue_then_op(kind, a, b)?;
    let rhs = op_then_glue(kind, a, b)?;
    match samples {
        Some(s) => compare_glued(&lhs, &rhs, s),
        None => compare_glued(&lhs, &rhs, &lhs.sample_points(10)),
    }
}
