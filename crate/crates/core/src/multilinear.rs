//! Tensor words, (anti)symmetrization and the exterior algebra on `ℝⁿ`.
//!
//! Basis vectors are zero-based internally and printed one-based (`e1`, `e2`,
//! …). Exterior blades are bitmasks; the canonical orientation of a blade is
//! ascending index order, and reordering signs come from inversion counts.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::rational::{binomial, int};
use crate::{Error, Rational, Result};

/// Sign (`+1`/`-1`) of the permutation that sorts the concatenation of two
/// ascending blades `a`, `b` (assumed disjoint).
pub fn merge_sign(a: u32, b: u32) -> i64 {
    let mut swaps = 0u32;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        // elements of b strictly below i must move past this element of a
        swaps += (b & ((1u32 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps & 1 == 0 {
        1
    } else {
        -1
    }
}

/// `e12`-style name of a blade; `1` for the empty blade. Indices above 9 are
/// separated by underscores to stay unambiguous.
pub fn blade_name(mask: u32) -> String {
    if mask == 0 {
        return String::from("1");
    }
    let idx: Vec<u32> = (0..32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
    let mut s = String::from("e");
    let wide = idx.iter().any(|&i| i > 9);
    for (k, i) in idx.iter().enumerate() {
        if wide && k > 0 {
            s.push('_');
        }
        s.push_str(&alloc::format!("{i}"));
    }
    s
}

/// All permutations of `0..d` with their parity (`true` = odd), by Heap's
/// algorithm.
pub fn permutations(d: usize) -> Vec<(Vec<usize>, bool)> {
    let mut perm: Vec<usize> = (0..d).collect();
    let mut out = Vec::new();
    let mut c = alloc::vec![0usize; d];
    let mut odd = false;
    out.push((perm.clone(), odd));
    let mut i = 1;
    while i < d {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            out.push((perm.clone(), odd));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn factorial(d: usize) -> Rational {
    (1..=d as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// Element of `⊕_{r ≤ cap} (ℝⁿ)^{⊗r}`, keyed by index words.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    n: usize,
    degree_cap: usize,
    components: BTreeMap<Vec<u8>, Rational>,
}

impl TensorElement {
    /// Zero tensor; the degree cap defaults to `n`.
    pub fn zero(n: usize) -> TensorElement {
        TensorElement {
            n,
            degree_cap: n,
            components: BTreeMap::new(),
        }
    }

    pub fn with_degree_cap(mut self, cap: usize) -> TensorElement {
        self.degree_cap = cap;
        self
    }

    /// `e_{w_1} ⊗ … ⊗ e_{w_k}` for a zero-based word `w`.
    pub fn word(n: usize, word: &[usize]) -> Result<TensorElement> {
        TensorElement::zero(n).with_degree_cap(n.max(word.len())).plus_word(word, Rational::one())
    }

    /// Adds `c · word`.
    pub fn plus_word(mut self, word: &[usize], c: Rational) -> Result<TensorElement> {
        if let Some(&bad) = word.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                n: self.n,
            });
        }
        if word.len() > self.degree_cap {
            return Err(Error::DegreeCapExceeded {
                degree: word.len(),
                cap: self.degree_cap,
            });
        }
        let key: Vec<u8> = word.iter().map(|&i| i as u8).collect();
        let slot = self.components.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.components.remove(&key);
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&[u8], &Rational)> {
        self.components.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, word: &[usize]) -> Rational {
        let key: Vec<u8> = word.iter().map(|&i| i as u8).collect();
        self.components.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Common length of all words, or `None` if lengths differ. The zero
    /// tensor is homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut lens = self.components.keys().map(Vec::len);
        match lens.next() {
            None => Some(0),
            Some(d) => lens.all(|l| l == d).then_some(d),
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let mut out = self.clone();
        out.degree_cap = self.degree_cap.max(other.degree_cap);
        for (w, c) in &other.components {
            let slot = out.components.entry(w.clone()).or_insert_with(Rational::zero);
            *slot += c;
        }
        out.components.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> TensorElement {
        let mut out = self.clone();
        out.components = self
            .components
            .iter()
            .map(|(w, c)| (w.clone(), c * s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        out
    }

    fn symmetrize(&self, signed: bool) -> Result<TensorElement> {
        let d = self.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if d > self.degree_cap {
            return Err(Error::DegreeCapExceeded {
                degree: d,
                cap: self.degree_cap,
            });
        }
        let norm = factorial(d).recip();
        let perms = permutations(d);
        let mut acc: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
        for (w, c) in &self.components {
            for (p, odd) in &perms {
                let permuted: Vec<u8> = p.iter().map(|&k| w[k]).collect();
                let mut term = c * &norm;
                if signed && *odd {
                    term = -term;
                }
                *acc.entry(permuted).or_insert_with(Rational::zero) += term;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TensorElement {
            n: self.n,
            degree_cap: self.degree_cap,
            components: acc,
        })
    }
}

/// `1/d! Σ_σ w_σ(1) ⊗ … ⊗ w_σ(d)`.
pub fn sym(t: &TensorElement) -> Result<TensorElement> {
    t.symmetrize(false)
}

/// `1/d! Σ_σ sgn(σ) w_σ(1) ⊗ … ⊗ w_σ(d)`.
pub fn alt(t: &TensorElement) -> Result<TensorElement> {
    t.symmetrize(true)
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*")?;
            if w.is_empty() {
                f.write_str("1")?;
            }
            for (k, l) in w.iter().enumerate() {
                if k > 0 {
                    f.write_str("⊗")?;
                }
                write!(f, "e{}", l + 1)?;
            }
        }
        Ok(())
    }
}

/// Element of the exterior algebra `Λ(ℝⁿ)`, keyed by blade bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    n: usize,
    components: BTreeMap<u32, Rational>,
}

impl ExteriorElement {
    pub fn zero(n: usize) -> ExteriorElement {
        assert!(n <= 16, "exterior dimension too large");
        ExteriorElement {
            n,
            components: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> ExteriorElement {
        ExteriorElement::zero(n).plus_blade(0, Rational::one())
    }

    pub fn blade(n: usize, mask: u32) -> Result<ExteriorElement> {
        if mask >> n != 0 {
            return Err(Error::IndexOutOfRange {
                index: (32 - mask.leading_zeros()) as usize - 1,
                n,
            });
        }
        Ok(ExteriorElement::zero(n).plus_blade(mask, Rational::one()))
    }

    pub fn vector(v: &[Rational]) -> ExteriorElement {
        let mut out = ExteriorElement::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            out = out.plus_blade(1 << i, c.clone());
        }
        out
    }

    /// Builds from a dense coefficient vector indexed by blade mask.
    pub fn from_dense(n: usize, coeffs: &[Rational]) -> ExteriorElement {
        assert_eq!(coeffs.len(), 1 << n);
        let mut out = ExteriorElement::zero(n);
        for (mask, c) in coeffs.iter().enumerate() {
            out = out.plus_blade(mask as u32, c.clone());
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        (0..1u32 << self.n).map(|m| self.coefficient(m)).collect()
    }

    pub(crate) fn plus_blade(mut self, mask: u32, c: Rational) -> ExteriorElement {
        debug_assert!(mask >> self.n == 0);
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

    pub fn dim(&self) -> usize {
        self.n
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

    /// Part of grade `k`.
    pub fn grade(&self, k: u32) -> ExteriorElement {
        ExteriorElement {
            n: self.n,
            components: self
                .components
                .iter()
                .filter(|(m, _)| m.count_ones() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    fn check_dim(&self, other: &ExteriorElement) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            })
        }
    }

    pub fn add(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.check_dim(other)?;
        Ok(other
            .components
            .iter()
            .fold(self.clone(), |acc, (m, c)| acc.plus_blade(*m, c.clone())))
    }

    pub fn sub(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> ExteriorElement {
        ExteriorElement {
            n: self.n,
            components: self
                .components
                .iter()
                .map(|(m, c)| (*m, c * s))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn wedge(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.check_dim(other)?;
        let mut out = ExteriorElement::zero(self.n);
        for (a, ca) in &self.components {
            for (b, cb) in &other.components {
                if a & b != 0 {
                    continue;
                }
                let c = ca * cb * int(merge_sign(*a, *b));
                out = out.plus_blade(a | b, c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{}", blade_name(*m))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExteriorElement({self})")
    }
}

pub fn wedge(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
    a.wedge(b)
}

/// `dim Λᵏ(ℝⁿ) = C(n, k)`.
pub fn exterior_dim(n: usize, k: usize) -> usize {
    binomial(n, k)
}

/// `dim (ℝⁿ)^{⊗k} = nᵏ`.
pub fn tensor_dim(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}
