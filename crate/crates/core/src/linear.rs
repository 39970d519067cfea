//! Finite linear combinations of graded basis monomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, norm_exponent, NormExponent, Rational};

/// A monomial of a graded basis.
pub trait Monomial: Ord + Clone + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn weight(&self) -> u32;

    /// The basis element representing the vacuum.
    fn vacuum() -> Self;
}

/// Finite map monomial -> coefficient with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Monomial> Default for Combination<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Monomial> Combination<K> {
    pub fn zero() -> Self {
        Combination { terms: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        Self::monomial(K::vacuum())
    }

    pub fn monomial(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Combination { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut weights = self.terms.keys().map(Monomial::weight);
        match weights.next() {
            None => true,
            Some(w) => weights.all(|x| x == w),
        }
    }

    /// Weight of a nonzero homogeneous state.
    pub fn weight(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroState);
        }
        if !self.is_homogeneous() {
            return Err(Error::Inhomogeneous);
        }
        Ok(self.max_weight().expect("nonzero"))
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.weight()).or_default().add_term(k.clone(), c.clone());
        }
        out
    }

    /// Components of weight at most `cutoff`.
    pub fn truncate(&self, cutoff: u32) -> Self {
        Combination {
            terms: self.terms.iter().filter(|(k, _)| k.weight() <= cutoff).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// `max_I -v_p(a_I)`, the exponent of the sup-norm.
    pub fn sup_norm_exponent(&self, p: u64) -> NormExponent {
        self.terms.values().map(|c| norm_exponent(c, p)).max().unwrap_or(NormExponent::NegInfinity)
    }

    /// `max_I (-v_p(a_I) + e |I|)`, the exponent of the norm with `r = p^e`.
    pub fn r_norm_exponent(&self, p: u64, e: i64) -> NormExponent {
        self.terms
            .iter()
            .map(|(k, c)| norm_exponent(c, p).shift(e * k.weight() as i64))
            .max()
            .unwrap_or(NormExponent::NegInfinity)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }
}

impl<K: Monomial> fmt::Display for Combination<K> {
    /// Highest-weight terms first: `1/2 h(-3) h(-1) |0> - 1/12 |0>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 {}", K::vacuum());
        }
        let mut terms: Vec<(&K, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.weight().cmp(&a.0.weight()).then_with(|| b.0.cmp(a.0)));
        for (idx, (k, c)) in terms.into_iter().enumerate() {
            let magnitude = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{} ", format_rational(&magnitude))?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl<K: Monomial> fmt::Debug for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Combination({self})")
    }
}

impl<K: Monomial> Add for &Combination<K> {
    type Output = Combination<K>;

    fn add(self, other: Self) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }
}

impl<K: Monomial> Sub for &Combination<K> {
    type Output = Combination<K>;

    fn sub(self, other: Self) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }
}

impl<K: Monomial> Neg for &Combination<K> {
    type Output = Combination<K>;

    fn neg(self) -> Combination<K> {
        self.scale(&-Rational::one())
    }
}

impl<K: Monomial> Mul<&Combination<K>> for &Rational {
    type Output = Combination<K>;

    fn mul(self, state: &Combination<K>) -> Combination<K> {
        state.scale(self)
    }
}
