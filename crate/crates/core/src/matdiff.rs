//! Matrix algebras with diffeologies generated by non-smooth plots.
//!
//! Plots of these diffeologies have entries of the form `f + g·|h|`. What
//! matters for every question asked about them is which entries may carry a
//! smooth term and which may carry an absolute-value term, so a diffeology is
//! represented by an [`EntryPattern`] per matrix entry. Products follow the
//! rule `poly·poly → poly`, `poly·abs → abs`, `abs·abs → poly` (because
//! `|x|² = x²`), sums take the union of flags.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::absring::{AbsElement, AbsRing};
use crate::{Error, Result};

/// Which kinds of terms an entry of a plot may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EntryPattern {
    pub has_poly: bool,
    pub has_abs: bool,
}

impl EntryPattern {
    /// Forced-zero entry.
    pub const ZERO: EntryPattern = EntryPattern {
        has_poly: false,
        has_abs: false,
    };
    /// Ordinary smooth entries only.
    pub const POLY: EntryPattern = EntryPattern {
        has_poly: true,
        has_abs: false,
    };
    /// Pure absolute-value terms `g·|h|`, as in a generating plot.
    pub const ABS: EntryPattern = EntryPattern {
        has_poly: false,
        has_abs: true,
    };
    /// General `f + g·|h|`.
    pub const ABS_ALLOWED: EntryPattern = EntryPattern {
        has_poly: true,
        has_abs: true,
    };

    pub fn is_zero(self) -> bool {
        self == EntryPattern::ZERO
    }

    pub fn union(self, other: EntryPattern) -> EntryPattern {
        EntryPattern {
            has_poly: self.has_poly || other.has_poly,
            has_abs: self.has_abs || other.has_abs,
        }
    }

    pub fn intersect(self, other: EntryPattern) -> EntryPattern {
        EntryPattern {
            has_poly: self.has_poly && other.has_poly,
            has_abs: self.has_abs && other.has_abs,
        }
    }

    /// Flag inclusion.
    pub fn le(self, other: EntryPattern) -> bool {
        (!self.has_poly || other.has_poly) && (!self.has_abs || other.has_abs)
    }

    pub fn product(self, other: EntryPattern) -> EntryPattern {
        EntryPattern {
            has_poly: (self.has_poly && other.has_poly) || (self.has_abs && other.has_abs),
            has_abs: (self.has_poly && other.has_abs) || (self.has_abs && other.has_poly),
        }
    }

    /// Smallest pattern a concrete entry conforms to.
    pub fn of(e: &AbsElement) -> EntryPattern {
        EntryPattern {
            has_poly: !e.smooth_part().is_zero(),
            has_abs: !e.abs_part().is_zero(),
        }
    }

    pub fn admits(self, e: &AbsElement) -> bool {
        EntryPattern::of(e).le(self)
    }
}

impl fmt::Display for EntryPattern {
    /// `Z`, `P`, `A` (abs allowed) and `B` (bare abs).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.has_poly, self.has_abs) {
            (false, false) => "Z",
            (true, false) => "P",
            (true, true) => "A",
            (false, true) => "B",
        };
        f.write_str(c)
    }
}

/// Square grid of entry patterns (row-major, zero-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixPattern {
    n: usize,
    entries: Vec<EntryPattern>,
}

impl MatrixPattern {
    pub fn filled(n: usize, p: EntryPattern) -> MatrixPattern {
        assert!(n >= 1, "pattern size must be at least 1");
        MatrixPattern {
            n,
            entries: vec![p; n * n],
        }
    }

    pub fn zeros(n: usize) -> MatrixPattern {
        MatrixPattern::filled(n, EntryPattern::ZERO)
    }

    pub fn all_poly(n: usize) -> MatrixPattern {
        MatrixPattern::filled(n, EntryPattern::POLY)
    }

    pub fn from_rows(rows: Vec<Vec<EntryPattern>>) -> Result<MatrixPattern> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::SizeMismatch { left: 1, right: 0 });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(MatrixPattern { n, entries })
    }

    /// Lower-triangular structural mask (entries with `i >= j` allowed).
    pub fn lower_triangular(n: usize) -> MatrixPattern {
        let mut p = MatrixPattern::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                p.set(i, j, EntryPattern::POLY);
            }
        }
        p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> EntryPattern {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: EntryPattern) {
        self.entries[i * self.n + j] = p;
    }

    pub fn with(mut self, i: usize, j: usize, p: EntryPattern) -> MatrixPattern {
        self.set(i, j, p);
        self
    }

    pub fn rows(&self) -> Vec<Vec<EntryPattern>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    fn check_size(&self, other: &MatrixPattern) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn union(&self, other: &MatrixPattern) -> Result<MatrixPattern> {
        self.check_size(other)?;
        Ok(MatrixPattern {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.union(*b))
                .collect(),
        })
    }

    pub fn le(&self, other: &MatrixPattern) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a.le(*b))
    }

    /// Constant plots allowed by this pattern's structure: `POLY` wherever the
    /// entry is not forced to zero.
    pub fn constants(&self) -> MatrixPattern {
        MatrixPattern {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|e| {
                    if e.is_zero() {
                        EntryPattern::ZERO
                    } else {
                        EntryPattern::POLY
                    }
                })
                .collect(),
        }
    }

    /// Pattern of matrix-times-vector for conforming plots.
    pub fn act(&self, v: &VectorPattern) -> Result<VectorPattern> {
        if v.len() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        let entries = (0..self.n)
            .map(|i| {
                (0..self.n).fold(EntryPattern::ZERO, |acc, j| {
                    acc.union(self.get(i, j).product(v.get(j)))
                })
            })
            .collect();
        Ok(VectorPattern { entries })
    }

    /// Least pattern a concrete matrix plot conforms to.
    pub fn of(m: &AbsMatrix) -> MatrixPattern {
        MatrixPattern {
            n: m.n,
            entries: m.entries.iter().map(EntryPattern::of).collect(),
        }
    }

    pub fn admits(&self, m: &AbsMatrix) -> bool {
        m.n == self.n && MatrixPattern::of(m).le(self)
    }
}

impl fmt::Display for MatrixPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// Per-coordinate patterns of the plots of a diffeological vector space
/// `V ≅ ℝⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorPattern {
    entries: Vec<EntryPattern>,
}

impl VectorPattern {
    pub fn new(entries: Vec<EntryPattern>) -> VectorPattern {
        VectorPattern { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> EntryPattern {
        self.entries[i]
    }

    pub fn entries(&self) -> &[EntryPattern] {
        &self.entries
    }

    pub fn le(&self, other: &VectorPattern) -> bool {
        self.len() == other.len() && self.entries.iter().zip(&other.entries).all(|(a, b)| a.le(*b))
    }

    pub fn admits(&self, v: &[AbsElement]) -> bool {
        v.len() == self.len() && v.iter().zip(&self.entries).all(|(e, p)| p.admits(e))
    }
}

pub fn pattern_product(a: &MatrixPattern, b: &MatrixPattern) -> Result<MatrixPattern> {
    a.check_size(b)?;
    let n = a.n;
    let mut out = MatrixPattern::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let e = (0..n).fold(EntryPattern::ZERO, |acc, j| {
                acc.union(a.get(i, j).product(b.get(j, k)))
            });
            out.set(i, k, e);
        }
    }
    Ok(out)
}

/// Algebra diffeology generated by `generators` on the full `n×n` algebra.
pub fn algebra_closure(generators: &[MatrixPattern], n: usize) -> Result<MatrixPattern> {
    algebra_closure_within(generators, &MatrixPattern::all_poly(n))
}

/// Algebra diffeology generated by `generators` inside the subalgebra whose
/// structurally nonzero entries are those of `ambient`.
///
/// Least fixpoint of `U ↦ U ∪ U·U` starting from the generators and the
/// constant plots of the ambient algebra. The lattice is finite, so this
/// terminates.
pub fn algebra_closure_within(
    generators: &[MatrixPattern],
    ambient: &MatrixPattern,
) -> Result<MatrixPattern> {
    let mut closure = ambient.constants();
    for g in generators {
        closure = closure.union(g)?;
    }
    loop {
        let next = closure.union(&pattern_product(&closure, &closure)?)?;
        if next == closure {
            return Ok(closure);
        }
        closure = next;
    }
}

/// Largest pattern inside `constraint` whose plots act smoothly on `v` by
/// left multiplication.
///
/// An entry `(i, j)` may carry a flag only if multiplying it into coordinate
/// `j` lands inside coordinate `i`'s pattern. An absolute-value flag in
/// column `j` additionally requires coordinate `j` itself to admit
/// absolute-value plots: probing with the constant plot `e_j` of a standard
/// coordinate must return smooth functions. The result is then shrunk until
/// multiplying by the constant plots of `constraint` on either side never
/// produces a flag the target entry lacks.
pub fn max_smooth_action_pattern(
    v: &VectorPattern,
    constraint: &MatrixPattern,
) -> Result<MatrixPattern> {
    let n = constraint.size();
    if v.len() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: v.len(),
        });
    }
    let mut p = MatrixPattern::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if constraint.get(i, j).is_zero() {
                continue;
            }
            let poly_ok = EntryPattern::POLY.product(v.get(j)).le(v.get(i));
            let abs_ok = v.get(j).has_abs && EntryPattern::ABS.product(v.get(j)).le(v.get(i));
            p.set(
                i,
                j,
                EntryPattern {
                    has_poly: poly_ok,
                    has_abs: abs_ok,
                },
            );
        }
    }

    let consts = constraint.constants();
    loop {
        let mut next = p.clone();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // (P·C)_ik gets P_ij whenever C_jk is a constant entry.
                    if consts.get(j, k).has_poly {
                        let target = p.get(i, k);
                        let src = next.get(i, j);
                        next.set(i, j, src.intersect(target));
                    }
                    // (C·P)_ik gets P_jk whenever C_ij is a constant entry.
                    if consts.get(i, j).has_poly {
                        let target = p.get(i, k);
                        let src = next.get(j, k);
                        next.set(j, k, src.intersect(target));
                    }
                }
            }
        }
        if next == p {
            return Ok(p);
        }
        p = next;
    }
}

/// Square matrix of elements of one [`AbsRing`]: a concrete plot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsMatrix {
    n: usize,
    ring: AbsRing,
    entries: Vec<AbsElement>,
}

impl AbsMatrix {
    pub fn from_rows(ring: AbsRing, rows: Vec<Vec<AbsElement>>) -> Result<AbsMatrix> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for e in row {
                if e.ring() != ring {
                    return Err(Error::RingMismatch {
                        left_vars: ring.num_vars(),
                        left_abs: ring.abs_var(),
                        right_vars: e.ring().num_vars(),
                        right_abs: e.ring().abs_var(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(AbsMatrix { n, ring, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> AbsRing {
        self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &AbsElement {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &AbsMatrix) -> Result<AbsMatrix> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                let mut acc = self.ring.zero();
                for j in 0..n {
                    acc = acc.add(&self.get(i, j).mul(other.get(j, k))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(AbsMatrix {
            n,
            ring: self.ring,
            entries,
        })
    }

    pub fn act(&self, v: &[AbsElement]) -> Result<Vec<AbsElement>> {
        if v.len() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        (0..self.n)
            .map(|i| {
                (0..self.n).try_fold(self.ring.zero(), |acc, j| acc.add(&self.get(i, j).mul(&v[j])?))
            })
            .collect()
    }

    pub fn trace(&self) -> AbsElement {
        (0..self.n).fold(self.ring.zero(), |acc, i| {
            acc.add(self.get(i, i)).expect("entries share the matrix ring")
        })
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> AbsElement {
        let idx: Vec<usize> = (0..self.n).collect();
        self.minor_det(&idx, &idx)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> AbsElement {
        match rows.len() {
            0 => self.ring.one(),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let r = rows[0];
                let sub_rows = &rows[1..];
                let mut acc = self.ring.zero();
                for (pos, &c) in cols.iter().enumerate() {
                    let entry = self.get(r, c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> =
                        cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry
                        .mul(&self.minor_det(sub_rows, &sub_cols))
                        .expect("entries share the matrix ring");
                    acc = if pos % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    }
                    .expect("entries share the matrix ring");
                }
                acc
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFunction {
    Trace,
    Det,
}

/// Whether `function ∘ plot` is a smooth function.
pub fn check_function_smooth(function: MatrixFunction, plot: &AbsMatrix) -> bool {
    let value = match function {
        MatrixFunction::Trace => plot.trace(),
        MatrixFunction::Det => plot.det(),
    };
    value.is_smooth()
}
