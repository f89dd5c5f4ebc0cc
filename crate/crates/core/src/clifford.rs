//! Clifford algebras `Cl(V, q)` for an arbitrary symmetric form `q` on `ℚⁿ`,
//! with relation `v·w + w·v = −2λ q(v, w)`.
//!
//! Elements are combinations of blades `e_A`, the ordered products of
//! ascending basis vectors, so `Cl` and `ΛV` share the bitmask basis. Products
//! are normalized by rewriting adjacent pairs:
//!
//! ```text
//! e_i e_i -> −λ q_ii
//! e_i e_j -> −e_j e_i − 2λ q_ij     (i > j)
//! ```
//!
//! Nothing here diagonalizes `q`, so degenerate and non-diagonal forms go
//! through the same code path.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::Matrix;
use crate::multilinear::{blade_name, ExteriorElement};
use crate::rational::{binomial, int};
use crate::{Error, Rational, Result};

/// Largest dimension for which the full blade table is cached.
const TABLE_DIM: usize = 6;

/// Largest supported dimension (blades are `u32` masks, dense vectors have
/// `2ⁿ` entries).
pub const MAX_DIM: usize = 12;

/// A symmetric bilinear form on `ℚⁿ`, stored by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    q: Matrix,
}

impl BilinearForm {
    pub fn new(q: Matrix) -> Result<BilinearForm> {
        if !q.is_square() {
            return Err(Error::NotSquare {
                rows: q.rows(),
                cols: q.cols(),
            });
        }
        if let Some((row, col)) = q.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(BilinearForm { q })
    }

    pub fn identity(n: usize) -> BilinearForm {
        BilinearForm { q: Matrix::identity(n) }
    }

    pub fn zero(n: usize) -> BilinearForm {
        BilinearForm { q: Matrix::zeros(n, n) }
    }

    pub fn diagonal(entries: &[Rational]) -> BilinearForm {
        BilinearForm {
            q: Matrix::diagonal(entries),
        }
    }

    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.q
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.q.get(i, j)
    }

    /// `q(v, w)`.
    pub fn eval(&self, v: &[Rational], w: &[Rational]) -> Result<Rational> {
        for x in [v, w] {
            if x.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    actual: x.len(),
                });
            }
        }
        let qw = self.q.apply(w);
        Ok(v.iter().zip(&qw).map(|(a, b)| a * b).sum())
    }

    pub fn rank(&self) -> usize {
        self.q.rank()
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank() < self.dim()
    }

    /// Rank if `q` is positive semidefinite, `None` otherwise.
    pub fn psd_rank(&self) -> Option<usize> {
        self.q.psd_rank()
    }
}

impl fmt::Debug for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BilinearForm({:?})", self.q)
    }
}

/// The scale `λ > 0` in `v·w + w·v = −2λ q(v, w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordConvention {
    lambda: Rational,
}

impl CliffordConvention {
    pub fn new(lambda: Rational) -> Result<CliffordConvention> {
        if lambda.is_positive() {
            Ok(CliffordConvention { lambda })
        } else {
            Err(Error::NonPositiveScale(lambda))
        }
    }

    /// `λ = 1`: `c(v)² = −q(v, v)`, the exterior-algebra module convention.
    pub fn action() -> CliffordConvention {
        CliffordConvention { lambda: Rational::one() }
    }

    /// `λ = 2`: the ideal generated by `v⊗w + w⊗v + 4q(v, w)`.
    pub fn tensor_ideal() -> CliffordConvention {
        CliffordConvention { lambda: int(2) }
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }
}

impl Default for CliffordConvention {
    fn default() -> Self {
        CliffordConvention::action()
    }
}

type Terms = Vec<(u32, Rational)>;

struct Inner {
    form: BilinearForm,
    convention: CliffordConvention,
    table: Option<Vec<Terms>>,
}

/// Handle to `Cl(ℚⁿ, q)` under a fixed convention. Cloning is cheap.
#[derive(Clone)]
pub struct CliffordAlgebra(Arc<Inner>);

impl CliffordAlgebra {
    /// Panics if `n > MAX_DIM`.
    pub fn new(form: BilinearForm, convention: CliffordConvention) -> CliffordAlgebra {
        let n = form.dim();
        assert!(n <= MAX_DIM, "Clifford dimension {n} exceeds {MAX_DIM}");
        let table = (n <= TABLE_DIM).then(|| {
            let size = 1u32 << n;
            let mut t = Vec::with_capacity((size * size) as usize);
            for a in 0..size {
                for b in 0..size {
                    t.push(blade_product(&form, convention.lambda(), a, b));
                }
            }
            t
        });
        CliffordAlgebra(Arc::new(Inner {
            form,
            convention,
            table,
        }))
    }

    pub fn with_lambda(form: BilinearForm, lambda: Rational) -> Result<CliffordAlgebra> {
        Ok(CliffordAlgebra::new(form, CliffordConvention::new(lambda)?))
    }

    pub fn dim(&self) -> usize {
        self.0.form.dim()
    }

    /// `2ⁿ`.
    pub fn total_dim(&self) -> usize {
        1 << self.dim()
    }

    pub fn form(&self) -> &BilinearForm {
        &self.0.form
    }

    pub fn convention(&self) -> &CliffordConvention {
        &self.0.convention
    }

    pub fn lambda(&self) -> &Rational {
        self.0.convention.lambda()
    }

    /// `e_a · e_b` as a list of `(blade, coefficient)`.
    pub fn blade_mul(&self, a: u32, b: u32) -> Terms {
        match &self.0.table {
            Some(t) => t[((a as usize) << self.dim()) | b as usize].clone(),
            None => blade_product(&self.0.form, self.lambda(), a, b),
        }
    }

    fn blade_mul_each(&self, a: u32, b: u32, mut f: impl FnMut(u32, &Rational)) {
        match &self.0.table {
            Some(t) => t[((a as usize) << self.dim()) | b as usize]
                .iter()
                .for_each(|(m, c)| f(*m, c)),
            None => blade_product(&self.0.form, self.lambda(), a, b)
                .iter()
                .for_each(|(m, c)| f(*m, c)),
        }
    }

    /// Dimensions of `Cl⁰ ⊆ Cl¹ ⊆ … ⊆ Clⁿ`, measured by spanning products of
    /// generators inside the algebra rather than by counting blades.
    pub fn filtration_ranks(&self) -> Vec<usize> {
        let n = self.dim();
        let size = self.total_dim();
        let mut span: Vec<Vec<Rational>> = vec![Multivector::one(self).to_dense()];
        let mut frontier = span.clone();
        let mut ranks = vec![1];
        for _ in 1..=n {
            let mut next = Vec::new();
            for f in &frontier {
                let elem = Multivector::from_dense(self, f);
                for i in 0..n {
                    let g = Multivector::basis_vector(self, i);
                    let p = elem.mul(&g).expect("same algebra").to_dense();
                    let mut trial = span.clone();
                    trial.push(p.clone());
                    let m = Matrix::from_rows(trial, size).expect("rows have 2ⁿ entries");
                    if m.rank() > span.len() {
                        span.push(p.clone());
                        next.push(p);
                    }
                }
            }
            ranks.push(span.len());
            frontier = next;
        }
        ranks
    }

    /// Full multiplication table, blade pairs in ascending bitmask order.
    pub fn multiplication_table(&self) -> Vec<TableEntry> {
        let size = self.total_dim() as u32;
        let mut out = Vec::with_capacity((size * size) as usize);
        for a in 0..size {
            for b in 0..size {
                let product = Multivector::blade(self, a)
                    .and_then(|x| x.mul(&Multivector::blade(self, b)?))
                    .expect("blades of this algebra");
                out.push(TableEntry {
                    left: a,
                    right: b,
                    product,
                });
            }
        }
        out
    }
}

impl PartialEq for CliffordAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.form == other.0.form && self.0.convention == other.0.convention)
    }
}

impl Eq for CliffordAlgebra {}

impl fmt::Debug for CliffordAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CliffordAlgebra")
            .field("q", self.form().matrix())
            .field("lambda", self.lambda())
            .finish()
    }
}

/// One row of a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub left: u32,
    pub right: u32,
    pub product: Multivector,
}

/// `e_A · e_i` for an ascending blade `A`.
fn right_mul_generator(form: &BilinearForm, lambda: &Rational, a: u32, i: u32) -> Terms {
    if a == 0 {
        return vec![(1 << i, Rational::one())];
    }
    let m = 31 - a.leading_zeros();
    let rest = a & !(1 << m);
    if m < i {
        return vec![(a | 1 << i, Rational::one())];
    }
    if m == i {
        let c = -(lambda * form.get(i as usize, i as usize));
        return if c.is_zero() { vec![] } else { vec![(rest, c)] };
    }
    // e_rest e_m e_i = −e_rest e_i e_m − 2λ q_mi e_rest; everything in
    // e_rest e_i sits below m, so appending e_m is a plain union.
    let mut out: Terms = right_mul_generator(form, lambda, rest, i)
        .into_iter()
        .map(|(b, c)| (b | 1 << m, -c))
        .collect();
    let c = -(int(2) * lambda * form.get(m as usize, i as usize));
    if !c.is_zero() {
        out.push((rest, c));
    }
    out
}

fn blade_product(form: &BilinearForm, lambda: &Rational, a: u32, b: u32) -> Terms {
    let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
    acc.insert(a, Rational::one());
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        let mut next: BTreeMap<u32, Rational> = BTreeMap::new();
        for (blade, c) in &acc {
            for (m, d) in right_mul_generator(form, lambda, *blade, i) {
                *next.entry(m).or_insert_with(Rational::zero) += c * d;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc.into_iter().collect()
}

/// Element of a [`CliffordAlgebra`].
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector {
    alg: CliffordAlgebra,
    components: BTreeMap<u32, Rational>,
}

impl Multivector {
    pub fn zero(alg: &CliffordAlgebra) -> Multivector {
        Multivector {
            alg: alg.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn one(alg: &CliffordAlgebra) -> Multivector {
        Multivector::scalar(alg, Rational::one())
    }

    pub fn scalar(alg: &CliffordAlgebra, c: Rational) -> Multivector {
        Multivector::zero(alg).plus_blade(0, c)
    }

    /// `e_{i+1}`. Panics if `i ≥ n`.
    pub fn basis_vector(alg: &CliffordAlgebra, i: usize) -> Multivector {
        assert!(i < alg.dim());
        Multivector::zero(alg).plus_blade(1 << i, Rational::one())
    }

    pub fn blade(alg: &CliffordAlgebra, mask: u32) -> Result<Multivector> {
        if (mask as usize) >= alg.total_dim() {
            return Err(Error::IndexOutOfRange {
                index: mask as usize,
                n: alg.total_dim(),
            });
        }
        Ok(Multivector::zero(alg).plus_blade(mask, Rational::one()))
    }

    /// `Σ vᵢ eᵢ`.
    pub fn vector(alg: &CliffordAlgebra, v: &[Rational]) -> Result<Multivector> {
        if v.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                actual: v.len(),
            });
        }
        Ok(v.iter()
            .enumerate()
            .fold(Multivector::zero(alg), |acc, (i, c)| acc.plus_blade(1 << i, c.clone())))
    }

    /// From coefficients indexed by blade mask. Panics on a length other
    /// than `2ⁿ`.
    pub fn from_dense(alg: &CliffordAlgebra, coeffs: &[Rational]) -> Multivector {
        assert_eq!(coeffs.len(), alg.total_dim());
        coeffs
            .iter()
            .enumerate()
            .fold(Multivector::zero(alg), |acc, (m, c)| acc.plus_blade(m as u32, c.clone()))
    }

    /// The exterior element with the same blade coefficients.
    pub fn from_exterior(alg: &CliffordAlgebra, x: &ExteriorElement) -> Result<Multivector> {
        if x.dim() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                actual: x.dim(),
            });
        }
        Ok(x.components()
            .fold(Multivector::zero(alg), |acc, (m, c)| acc.plus_blade(m, c.clone())))
    }

    pub fn to_exterior(&self) -> ExteriorElement {
        ExteriorElement::from_dense(self.alg.dim(), &self.to_dense())
    }

    pub fn plus_blade(mut self, mask: u32, c: Rational) -> Multivector {
        debug_assert!((mask as usize) < self.alg.total_dim());
        if c.is_zero() {
            return self;
        }
        let slot = self.components.entry(mask).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.components.remove(&mask);
        }
        self
    }

    pub fn algebra(&self) -> &CliffordAlgebra {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn coefficient(&self, mask: u32) -> Rational {
        self.components.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.components.iter().map(|(m, c)| (*m, c))
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        (0..self.alg.total_dim() as u32).map(|m| self.coefficient(m)).collect()
    }

    fn check(&self, other: &Multivector) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        Ok(other
            .components
            .iter()
            .fold(self.clone(), |acc, (m, c)| acc.plus_blade(*m, c.clone())))
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Multivector {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Multivector {
        Multivector {
            alg: self.alg.clone(),
            components: self
                .components
                .iter()
                .map(|(m, c)| (*m, c * s))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (a, ca) in &self.components {
            for (b, cb) in &other.components {
                let cab = ca * cb;
                self.alg.blade_mul_each(*a, *b, |m, d| {
                    *acc.entry(m).or_insert_with(Rational::zero) += &cab * d;
                });
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Multivector {
            alg: self.alg.clone(),
            components: acc,
        })
    }

    /// Part spanned by blades of exactly `k` vectors.
    pub fn grade(&self, k: u32) -> Multivector {
        self.filter(|m| m.count_ones() == k)
    }

    fn filter(&self, keep: impl Fn(u32) -> bool) -> Multivector {
        Multivector {
            alg: self.alg.clone(),
            components: self
                .components
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// `0` or `1` if every blade has the same parity; `None` for mixed
    /// elements. Zero counts as even.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.components.keys().map(|m| m.count_ones() % 2);
        match it.next() {
            None => Some(0),
            Some(p) => it.all(|q| q == p).then_some(p),
        }
    }

    /// Least `k` with `self ∈ Clᵏ`.
    pub fn filtration_degree(&self) -> u32 {
        self.components.keys().map(|m| m.count_ones()).max().unwrap_or(0)
    }
}

pub fn clifford_mul(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.mul(b)
}

/// `(even, odd)` with `even + odd = a`.
pub fn grade_split(a: &Multivector) -> (Multivector, Multivector) {
    (
        a.filter(|m| m.count_ones() % 2 == 0),
        a.filter(|m| m.count_ones() % 2 == 1),
    )
}

/// Dimensions attached to one filtration step of `Cl(ℚⁿ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiltrationDims {
    /// `dim Clᵏ`.
    pub cumulative: usize,
    /// `dim Clᵏ / Clᵏ⁻¹`.
    pub quotient: usize,
}

pub fn filtration_dims(n: usize, k: usize) -> Result<FiltrationDims> {
    if k > n {
        return Err(Error::FiltrationOutOfRange { k, n });
    }
    Ok(FiltrationDims {
        cumulative: (0..=k).map(|r| binomial(n, r)).sum(),
        quotient: binomial(n, k),
    })
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.components.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&blade_name(*m))?;
            } else {
                write!(f, "{mag}*{}", blade_name(*m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({self})")
    }
}

/// A unital associative algebra over `ℚ` in which universal extensions can
/// land.
pub trait UnitalAlgebra {
    type Element: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Element;
    fn unit(&self) -> Self::Element;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn scale(&self, a: &Self::Element, s: &Rational) -> Self::Element;
}

impl UnitalAlgebra for CliffordAlgebra {
    type Element = Multivector;

    fn zero(&self) -> Multivector {
        Multivector::zero(self)
    }

    fn unit(&self) -> Multivector {
        Multivector::one(self)
    }

    fn add(&self, a: &Multivector, b: &Multivector) -> Multivector {
        a.add(b).expect("elements of this algebra")
    }

    fn mul(&self, a: &Multivector, b: &Multivector) -> Multivector {
        a.mul(b).expect("elements of this algebra")
    }

    fn scale(&self, a: &Multivector, s: &Rational) -> Multivector {
        a.scale(s)
    }
}

/// `End(ℚᵈ)` as `d×d` matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorAlgebra {
    pub dim: usize,
}

impl UnitalAlgebra for OperatorAlgebra {
    type Element = Matrix;

    fn zero(&self) -> Matrix {
        Matrix::zeros(self.dim, self.dim)
    }

    fn unit(&self) -> Matrix {
        Matrix::identity(self.dim)
    }

    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.add(b)
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b)
    }

    fn scale(&self, a: &Matrix, s: &Rational) -> Matrix {
        a.scale(s)
    }
}

/// The unital algebra morphism `Cl(V, q) → A` determined by the images of
/// the basis vectors.
#[derive(Clone)]
pub struct AlgebraMorphism<A: UnitalAlgebra> {
    source: CliffordAlgebra,
    target: A,
    blade_images: Vec<A::Element>,
}

/// Extends `images[i] = f(eᵢ)` to `Cl(V, q) → A`, after checking
/// `f(eᵢ)f(eⱼ) + f(eⱼ)f(eᵢ) = −2λ q_ij · 1` for every pair.
pub fn universal_extend<A: UnitalAlgebra + Clone>(
    source: &CliffordAlgebra,
    target: &A,
    images: Vec<A::Element>,
) -> Result<AlgebraMorphism<A>> {
    let n = source.dim();
    if images.len() != n {
        return Err(Error::WrongImageCount {
            expected: n,
            actual: images.len(),
        });
    }
    let unit = target.unit();
    for i in 0..n {
        for j in i..n {
            let lhs = target.add(
                &target.mul(&images[i], &images[j]),
                &target.mul(&images[j], &images[i]),
            );
            let rhs = target.scale(&unit, &-(int(2) * source.lambda() * source.form().get(i, j)));
            if lhs != rhs {
                return Err(Error::RelationViolated { i, j });
            }
        }
    }
    let mut blade_images = Vec::with_capacity(source.total_dim());
    blade_images.push(unit);
    for mask in 1..source.total_dim() {
        let top = 31 - (mask as u32).leading_zeros() as usize;
        let prefix = &blade_images[mask & !(1 << top)];
        let img = target.mul(prefix, &images[top]);
        blade_images.push(img);
    }
    Ok(AlgebraMorphism {
        source: source.clone(),
        target: target.clone(),
        blade_images,
    })
}

impl<A: UnitalAlgebra> AlgebraMorphism<A> {
    pub fn source(&self) -> &CliffordAlgebra {
        &self.source
    }

    pub fn target(&self) -> &A {
        &self.target
    }

    /// Image of the blade `e_mask`.
    pub fn blade_image(&self, mask: u32) -> &A::Element {
        &self.blade_images[mask as usize]
    }

    pub fn apply(&self, x: &Multivector) -> Result<A::Element> {
        if *x.algebra() != self.source {
            return Err(Error::AlgebraMismatch);
        }
        Ok(x.components().fold(self.target.zero(), |acc, (m, c)| {
            self.target
                .add(&acc, &self.target.scale(&self.blade_images[m as usize], c))
        }))
    }
}

impl AlgebraMorphism<CliffordAlgebra> {
    /// Matrix in blade bases: column `A` holds the coefficients of `F(e_A)`.
    pub fn to_matrix(&self) -> Matrix {
        let rows = self.target.total_dim();
        let mut m = Matrix::zeros(rows, self.source.total_dim());
        for (col, img) in self.blade_images.iter().enumerate() {
            for (r, c) in img.components() {
                m.set(r as usize, col, c.clone());
            }
        }
        m
    }
}

impl<A: UnitalAlgebra> fmt::Debug for AlgebraMorphism<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraMorphism")
            .field("source", &self.source)
            .field("blade_images", &self.blade_images)
            .finish()
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

/// `i(e_k)(e_A) = Σ_p (−1)^p q(e_k, e_{a_p}) e_{A∖a_p}`, positions `p`
/// counted from zero in ascending order.
fn contract_blade(q: &BilinearForm, k: usize, a: u32) -> Terms {
    let mut out = Vec::new();
    let mut rest = a;
    let mut p = 0;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let c = q.get(k, j as usize);
        if !c.is_zero() {
            let c = if p % 2 == 0 { c.clone() } else { -c.clone() };
            out.push((a & !(1 << j), c));
        }
        p += 1;
    }
    out
}

/// `c(v)a = v∧a − i(v)a`.
pub fn action_c(v: &[Rational], a: &ExteriorElement, q: &BilinearForm) -> Result<ExteriorElement> {
    check_len(q.dim(), v.len())?;
    check_len(q.dim(), a.dim())?;
    let mut out = ExteriorElement::vector(v).wedge(a)?;
    for (k, vk) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (m, c) in a.components() {
            for (r, d) in contract_blade(q, k, m) {
                out = out.plus_blade(r, -(vk * c * d));
            }
        }
    }
    Ok(out)
}

/// `c(v)` as a `2ⁿ×2ⁿ` matrix on dense blade coordinates.
pub fn action_operator(v: &[Rational], q: &BilinearForm) -> Result<Matrix> {
    check_len(q.dim(), v.len())?;
    let n = q.dim();
    let size = 1usize << n;
    let mut m = Matrix::zeros(size, size);
    for col in 0..size as u32 {
        let img = action_c(v, &ExteriorElement::zero(n).plus_blade(col, Rational::one()), q)?;
        for (r, c) in img.components() {
            m.set(r as usize, col as usize, c.clone());
        }
    }
    Ok(m)
}

/// Extension of `v ↦ c(v)` to `Cl(V, q) → End(ΛV)`. Needs `λ = 1`.
pub fn module_action(alg: &CliffordAlgebra) -> Result<AlgebraMorphism<OperatorAlgebra>> {
    if !alg.lambda().is_one() {
        return Err(Error::ConventionConflict(alg.lambda().clone()));
    }
    let n = alg.dim();
    let images = (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            action_operator(&v, alg.form())
        })
        .collect::<Result<Vec<_>>>()?;
    universal_extend(alg, &OperatorAlgebra { dim: alg.total_dim() }, images)
}

/// `σ(x) = c(x)(1)`.
pub fn sigma(x: &Multivector) -> Result<ExteriorElement> {
    let action = module_action(x.algebra())?;
    let op = action.apply(x)?;
    Ok(ExteriorElement::from_dense(x.algebra().dim(), &op.column(0)))
}

/// `σ` in blade bases, with its bijectivity decided by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaMap {
    pub matrix: Matrix,
    pub bijective: bool,
}

pub fn sigma_matrix(alg: &CliffordAlgebra) -> Result<SigmaMap> {
    let action = module_action(alg)?;
    let size = alg.total_dim();
    let mut matrix = Matrix::zeros(size, size);
    for col in 0..size {
        let image = action.blade_image(col as u32).column(0);
        for (r, c) in image.into_iter().enumerate() {
            matrix.set(r, col, c);
        }
    }
    let bijective = matrix.rank() == size;
    Ok(SigmaMap { matrix, bijective })
}
