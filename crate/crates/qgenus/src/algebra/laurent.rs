//! Sparse Laurent polynomials in the equivariant parameter `q`.
//!
//! The coefficient ring is generic: plain `BigInt` for the symmetric-function
//! machinery, or [`BivarPoly`] for the numerators of localization terms
//! (see [`QPoly`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bivar::BivarPoly;

/// Minimal coefficient-ring bound for [`LaurentPoly`].
pub trait Coeff:
    Clone + Eq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone + Eq + Zero + One + Neg<Output = T> + Sub<Output = T> + Mul<Output = T>
{
}

/// A Laurent polynomial `sum_e c_e q^e` with signed integer exponents.
///
/// Canonical sparse form: no stored coefficient is zero, so `==` on the
/// term maps decides equality of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<C = BigInt> {
    terms: BTreeMap<i64, C>,
}

/// Laurent polynomial in `q` whose coefficients live in `Z[x, y]`; the
/// numerator type of [`super::rational::RationalFn`].
pub type QPoly = LaurentPoly<BivarPoly>;

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// The monomial `c * q^exp`.
    pub fn monomial(exp: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.insert_add(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `q^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some(c)` iff the value is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, exp: i64, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(&e, v)| (e, v.clone() * c.clone())))
    }

    /// Multiply by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Non-negative integer power by repeated multiplication; exponents in
    /// this crate stay tiny.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl LaurentPoly<BigInt> {
    /// Reinterpret integer coefficients as constant `Z[x, y]` polynomials.
    pub fn lift(&self) -> QPoly {
        QPoly::from_terms(
            self.terms
                .iter()
                .map(|(&e, c)| (e, BivarPoly::constant(c.clone()))),
        )
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, C::zero() - c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.insert_add(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{e}")?,
            }
        }
        Ok(())
    }
}
