//! Polynomials over ℚ and their extension by one absolute-value generator.
//!
//! An [`AbsElement`] represents the function `f(x) + g(x)·|x_k|` with
//! polynomial `f`, `g` and a coordinate `x_k` fixed by the ring. Since
//! `|x_k|² = x_k²`, products stay in this form, so the ring is closed and every
//! element has exactly one representation. Such a function is infinitely
//! differentiable iff `g = 0`: otherwise the one-sided Taylor expansions of
//! `g·|x_k|` at `x_k = 0` differ in sign.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored. Arithmetic between polynomials with a
/// different number of variables is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Polynomial {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Polynomial {
        Polynomial::constant(num_vars, Rational::one())
    }

    pub fn constant(num_vars: usize, c: Rational) -> Polynomial {
        Polynomial::monomial(num_vars, vec![0; num_vars], c)
    }

    /// The coordinate function `x_i`. Panics if `i >= num_vars`.
    pub fn var(num_vars: usize, i: usize) -> Polynomial {
        assert!(i < num_vars, "variable x{i} out of range");
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Polynomial::monomial(num_vars, e, Rational::one())
    }

    pub fn monomial(num_vars: usize, exponents: Exponents, c: Rational) -> Polynomial {
        assert_eq!(exponents.len(), num_vars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Polynomial { num_vars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.num_vars, "evaluation point has wrong arity");
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc + t
        })
    }

    /// Substitutes values for some variables, keeping the arity. `None`
    /// entries stay symbolic.
    pub fn substitute(&self, values: &[Option<Rational>]) -> Polynomial {
        assert_eq!(values.len(), self.num_vars);
        Polynomial::from_terms(
            self.num_vars,
            self.terms.iter().map(|(e, c)| {
                let mut coeff = c.clone();
                let mut exps = e.clone();
                for (i, v) in values.iter().enumerate() {
                    if let Some(v) = v {
                        for _ in 0..exps[i] {
                            coeff *= v;
                        }
                        exps[i] = 0;
                    }
                }
                (exps, coeff)
            }),
        )
    }

    /// Multiplies by `x_i` once.
    pub fn shift(&self, i: usize) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Terms in printing order: higher total degree first, then
    /// lexicographically larger exponents first.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    fn check_arity(&self, other: &Polynomial) {
        assert_eq!(
            self.num_vars, other.num_vars,
            "polynomials over different variable sets"
        );
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_arity(rhs);
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial {
            num_vars: self.num_vars,
            terms: acc,
        }
    }
}

/// Writes `c·m` in the expression grammar, where `m` is a product of
/// variables. `first` controls whether a leading `+` is emitted.
fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    exps: &[u32],
    abs_var: Option<usize>,
) -> fmt::Result {
    let negative = c.is_negative();
    let mag = c.abs();
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let mut factors: Vec<alloc::string::String> = Vec::new();
    for (i, &k) in exps.iter().enumerate() {
        for _ in 0..k {
            factors.push(alloc::format!("x{i}"));
        }
    }
    if let Some(k) = abs_var {
        factors.push(alloc::format!("abs(x{k})"));
    }
    if factors.is_empty() || !mag.is_one() {
        write!(f, "{mag}")?;
        if !factors.is_empty() {
            f.write_str("*")?;
        }
    }
    for (i, factor) in factors.iter().enumerate() {
        if i > 0 {
            f.write_str("*")?;
        }
        f.write_str(factor)?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            write_term(f, i == 0, c, e, None)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// The ring `ℚ[x_0, …, x_{n-1}] ⊕ ℚ[x_0, …, x_{n-1}]·|x_k|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbsRing {
    num_vars: usize,
    abs_var: usize,
}

impl AbsRing {
    pub fn new(num_vars: usize, abs_var: usize) -> Result<AbsRing> {
        if abs_var >= num_vars {
            return Err(Error::AbsVarOutOfRange { num_vars, abs_var });
        }
        Ok(AbsRing { num_vars, abs_var })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn abs_var(&self) -> usize {
        self.abs_var
    }

    pub fn zero(&self) -> AbsElement {
        self.smooth(Polynomial::zero(self.num_vars))
    }

    pub fn one(&self) -> AbsElement {
        self.smooth(Polynomial::one(self.num_vars))
    }

    pub fn constant(&self, c: Rational) -> AbsElement {
        self.smooth(Polynomial::constant(self.num_vars, c))
    }

    pub fn var(&self, i: usize) -> AbsElement {
        self.smooth(Polynomial::var(self.num_vars, i))
    }

    /// `|x_k|`.
    pub fn abs_generator(&self) -> AbsElement {
        AbsElement {
            ring: *self,
            smooth: Polynomial::zero(self.num_vars),
            abs: Polynomial::one(self.num_vars),
        }
    }

    pub fn smooth(&self, f: Polynomial) -> AbsElement {
        assert_eq!(f.num_vars(), self.num_vars);
        AbsElement {
            ring: *self,
            smooth: f,
            abs: Polynomial::zero(self.num_vars),
        }
    }

    /// `smooth + abs·|x_k|`.
    pub fn element(&self, smooth: Polynomial, abs: Polynomial) -> Result<AbsElement> {
        for p in [&smooth, &abs] {
            if p.num_vars() != self.num_vars {
                return Err(Error::RingMismatch {
                    left_vars: self.num_vars,
                    left_abs: self.abs_var,
                    right_vars: p.num_vars(),
                    right_abs: self.abs_var,
                });
            }
        }
        Ok(AbsElement {
            ring: *self,
            smooth,
            abs,
        })
    }
}

/// The function `smooth + abs·|x_k|`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbsElement {
    ring: AbsRing,
    smooth: Polynomial,
    abs: Polynomial,
}

impl AbsElement {
    pub fn ring(&self) -> AbsRing {
        self.ring
    }

    pub fn smooth_part(&self) -> &Polynomial {
        &self.smooth
    }

    pub fn abs_part(&self) -> &Polynomial {
        &self.abs
    }

    pub fn is_zero(&self) -> bool {
        self.smooth.is_zero() && self.abs.is_zero()
    }

    /// Infinitely differentiable iff the `|x_k|` coefficient vanishes.
    pub fn is_smooth(&self) -> bool {
        self.abs.is_zero()
    }

    fn check_ring(&self, other: &AbsElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left_vars: self.ring.num_vars,
                left_abs: self.ring.abs_var,
                right_vars: other.ring.num_vars,
                right_abs: other.ring.abs_var,
            })
        }
    }

    pub fn add(&self, other: &AbsElement) -> Result<AbsElement> {
        self.check_ring(other)?;
        Ok(AbsElement {
            ring: self.ring,
            smooth: &self.smooth + &other.smooth,
            abs: &self.abs + &other.abs,
        })
    }

    pub fn sub(&self, other: &AbsElement) -> Result<AbsElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AbsElement {
        AbsElement {
            ring: self.ring,
            smooth: -&self.smooth,
            abs: -&self.abs,
        }
    }

    pub fn scale(&self, s: &Rational) -> AbsElement {
        AbsElement {
            ring: self.ring,
            smooth: self.smooth.scale(s),
            abs: self.abs.scale(s),
        }
    }

    /// `(f₁ + g₁|x|)(f₂ + g₂|x|) = (f₁f₂ + g₁g₂x²) + (f₁g₂ + f₂g₁)|x|`.
    pub fn mul(&self, other: &AbsElement) -> Result<AbsElement> {
        self.check_ring(other)?;
        let k = self.ring.abs_var;
        let gg = &self.abs * &other.abs;
        let smooth = &(&self.smooth * &other.smooth) + &gg.shift(k).shift(k);
        let abs = &(&self.smooth * &other.abs) + &(&other.smooth * &self.abs);
        Ok(AbsElement {
            ring: self.ring,
            smooth,
            abs,
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let a = point[self.ring.abs_var].abs();
        self.smooth.eval(point) + self.abs.eval(point) * a
    }
}

impl fmt::Display for AbsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.smooth.sorted_terms() {
            write_term(f, first, c, e, None)?;
            first = false;
        }
        for (e, c) in self.abs.sorted_terms() {
            write_term(f, first, c, e, Some(self.ring.abs_var))?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for AbsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbsElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::string::ToString;

    fn ring() -> AbsRing {
        AbsRing::new(1, 0).unwrap()
    }

    fn x() -> Polynomial {
        Polynomial::var(1, 0)
    }

    fn c(v: i64) -> Polynomial {
        Polynomial::constant(1, int(v))
    }

    /// Coefficients of the Taylor expansion in `x` at 0 of the branch
    /// `f ± g·x` (right branch `+`, left branch `-`). Independent of the ring
    /// multiplication: it just reads the univariate polynomial.
    fn branch_jet(a: &AbsElement, sign: i64) -> Vec<Rational> {
        let branch = &a.smooth + &a.abs.shift(0).scale(&int(sign));
        let deg = branch.degree().unwrap_or(0) as usize;
        (0..=deg).map(|k| branch.coefficient(&[k as u32])).collect()
    }

    /// Infinitely differentiable at 0 iff both branches have identical jets
    /// (the branches are polynomials, so agreement of all coefficients is the
    /// whole story).
    fn jets_agree(a: &AbsElement) -> bool {
        let (r, l) = (branch_jet(a, 1), branch_jet(a, -1));
        let n = r.len().max(l.len());
        (0..n).all(|k| r.get(k).cloned().unwrap_or_default() == l.get(k).cloned().unwrap_or_default())
    }

    #[test]
    fn add_examples() {
        let r = ring();
        let a = r.smooth(x());
        let sum = a.add(&r.abs_generator()).unwrap();
        assert_eq!(sum.smooth_part(), &x());
        assert_eq!(sum.abs_part(), &c(1));
        assert_eq!(sum.to_string(), "x0 + abs(x0)");

        let p = r.element(c(0), x()).unwrap();
        let q = r.element(c(0), -&x()).unwrap();
        assert!(p.add(&q).unwrap().is_zero());

        // (x², 3) + (1, -3) = (x² + 1, 0)
        let a = r.element(&x() * &x(), c(3)).unwrap();
        let b = r.element(c(1), c(-3)).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.smooth_part(), &(&(&x() * &x()) + &c(1)));
        assert!(s.is_smooth());
    }

    #[test]
    fn abs_squared_is_smooth() {
        let r = ring();
        let sq = r.abs_generator().mul(&r.abs_generator()).unwrap();
        assert_eq!(sq.smooth_part(), &(&x() * &x()));
        assert!(sq.is_smooth());
    }

    #[test]
    fn mul_examples() {
        let r = ring();
        let f = r.element(&x() + &c(2), x()).unwrap();
        assert_eq!(r.one().mul(&f).unwrap(), f);

        // (x + |x|)(x - |x|) = x² - |x|² = 0
        let a = r.element(x(), c(1)).unwrap();
        let b = r.element(x(), c(-1)).unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn smoothness_examples() {
        let r = ring();
        let cubic = r.smooth(&(&(&x() * &x()) * &x()) + &c(1));
        assert!(cubic.is_smooth());
        assert!(jets_agree(&cubic));

        let abs = r.abs_generator();
        assert!(!abs.is_smooth());
        assert!(!jets_agree(&abs));

        let x_abs = r.element(c(0), x()).unwrap();
        assert!(!x_abs.is_smooth());
        assert!(!jets_agree(&x_abs));
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let a = AbsRing::new(2, 0).unwrap().one();
        let b = AbsRing::new(2, 1).unwrap().one();
        assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch { .. })));
        assert!(AbsRing::new(1, 1).is_err());
    }

    #[test]
    fn eval_matches_definition() {
        let r = ring();
        let a = r.element(x(), &x() + &c(1)).unwrap();
        // x + (x+1)|x| at x = -2: -2 + (-1)(2) = -4
        assert_eq!(a.eval(&[int(-2)]), int(-4));
    }

    #[test]
    fn printing_is_sorted() {
        let p = Polynomial::from_terms(
            2,
            [
                (vec![0, 0], int(-1)),
                (vec![1, 0], int(1)),
                (vec![0, 2], crate::rational::frac(3, 2)),
            ],
        );
        assert_eq!(p.to_string(), "3/2*x1*x1 + x0 - 1");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly2() -> impl Strategy<Value = Polynomial> {
            proptest::collection::vec(((0u32..3, 0u32..3), -5i64..6), 0..4).prop_map(|ts| {
                Polynomial::from_terms(2, ts.into_iter().map(|((a, b), c)| (vec![a, b], int(c))))
            })
        }

        fn elem() -> impl Strategy<Value = AbsElement> {
            (poly2(), poly2())
                .prop_map(|(f, g)| AbsRing::new(2, 1).unwrap().element(f, g).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn ring_axioms(a in elem(), b in elem(), c in elem()) {
                prop_assert_eq!(a.mul(&b.mul(&c).unwrap()).unwrap(), a.mul(&b).unwrap().mul(&c).unwrap());
                prop_assert_eq!(a.add(&b.add(&c).unwrap()).unwrap(), a.add(&b).unwrap().add(&c).unwrap());
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                prop_assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
            }

            #[test]
            fn pure_abs_squares_are_smooth(g in poly2()) {
                let a = AbsRing::new(2, 1).unwrap().element(Polynomial::zero(2), g).unwrap();
                prop_assert!(a.mul(&a).unwrap().is_smooth());
            }

            #[test]
            fn smooth_is_closed(f in poly2(), g in poly2()) {
                let r = AbsRing::new(2, 1).unwrap();
                let (a, b) = (r.smooth(f), r.smooth(g));
                prop_assert!(a.mul(&b).unwrap().is_smooth());
                prop_assert!(a.add(&b).unwrap().is_smooth());
            }

            #[test]
            fn eval_is_a_homomorphism(a in elem(), b in elem(), x0 in -4i64..5, x1 in -4i64..5) {
                let p = [int(x0), int(x1)];
                prop_assert_eq!(a.mul(&b).unwrap().eval(&p), a.eval(&p) * b.eval(&p));
            }
        }
    }
}
