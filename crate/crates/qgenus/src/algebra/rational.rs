//! Rational functions in `q` over `Z[x, y]` whose denominators are kept
//! factored as products of binomials `(1 - q^w)`.
//!
//! Every localization term has this shape, and the factored form keeps
//! cancellation between fixed points exact without any polynomial GCD:
//! equivalence and constancy are decided by cross-multiplication.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::bivar::BivarPoly;
use super::laurent::{LaurentPoly, QPoly};
use super::series::{geometric_expand, QSeries};

/// A multiset of nonzero integer weights `w`, denoting the product
/// `prod (1 - q^w)` over the multiset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DenomFactors {
    factors: BTreeMap<i64, u32>,
}

impl DenomFactors {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_weights(weights: &[i64]) -> Self {
        let mut out = Self::empty();
        for &w in weights {
            out.push(w);
        }
        out
    }

    pub fn push(&mut self, w: i64) {
        assert!(w != 0, "denominator factor (1 - q^0) would vanish");
        *self.factors.entry(w).or_insert(0) += 1;
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total number of binomial factors, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.factors.values().map(|&m| m as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.factors.iter().map(|(&w, &m)| (w, m))
    }

    /// Common denominator: each shared factor taken once per multiplicity.
    pub fn union_max(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&w, &m) in &other.factors {
            let e = factors.entry(w).or_insert(0);
            *e = (*e).max(m);
        }
        Self { factors }
    }

    /// Shared factors of two denominators (multiset intersection).
    pub fn intersect_min(&self, other: &Self) -> Self {
        let mut factors = BTreeMap::new();
        for (&w, &m) in &self.factors {
            if let Some(&n) = other.factors.get(&w) {
                let k = m.min(n);
                if k > 0 {
                    factors.insert(w, k);
                }
            }
        }
        Self { factors }
    }

    /// Multiset difference `self \ other`; panics unless `other <= self`.
    pub fn difference(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&w, &m) in &other.factors {
            let e = factors
                .get_mut(&w)
                .unwrap_or_else(|| panic!("difference removes absent factor (1 - q^{w})"));
            assert!(*e >= m, "difference removes factor (1 - q^{w}) too often");
            *e -= m;
            if *e == 0 {
                factors.remove(&w);
            }
        }
        Self { factors }
    }

    /// Expand the product `prod (1 - q^w)` into a `q`-polynomial.
    pub fn expand(&self) -> QPoly {
        let mut out = QPoly::one();
        for (w, mult) in self.iter() {
            let binomial = QPoly::from_terms([(0, BivarPoly::one()), (w, -&BivarPoly::one())]);
            for _ in 0..mult {
                out = &out * &binomial;
            }
        }
        out
    }

    /// Largest `|w|` among the factors (zero when empty).
    pub fn max_abs_weight(&self) -> i64 {
        self.factors.keys().map(|w| w.abs()).max().unwrap_or(0)
    }
}

/// A ratio of a `q`-Laurent polynomial over `Z[x, y]` by a factored product
/// of `(1 - q^w)` binomials.
///
/// Two values are equivalent iff cross-multiplied numerators agree; `equiv`
/// decides that exactly, cancelling shared factors first.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: QPoly,
    den: DenomFactors,
}

impl RationalFn {
    pub fn zero() -> Self {
        Self {
            num: QPoly::zero(),
            den: DenomFactors::empty(),
        }
    }

    pub fn new(num: QPoly, den: DenomFactors) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        Self { num, den }
    }

    pub fn from_poly(num: QPoly) -> Self {
        Self::new(num, DenomFactors::empty())
    }

    pub fn constant(c: BivarPoly) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &DenomFactors {
        &self.den
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Sum over the multiset-union common denominator.
    pub fn add(&self, other: &Self) -> Self {
        let common = self.den.union_max(&other.den);
        let left = &self.num * &common.difference(&self.den).expand();
        let right = &other.num * &common.difference(&other.den).expand();
        Self::new(&left + &right, common)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply by a polynomial in `q` (integer coefficients).
    pub fn mul_laurent(&self, p: &LaurentPoly<BigInt>) -> Self {
        Self::new(&self.num * &p.lift(), self.den.clone())
    }

    pub fn scale_int(&self, c: i64) -> Self {
        Self::new(self.num.scale(&BivarPoly::constant(c)), self.den.clone())
    }

    /// Exact equivalence by cross-multiplication, shared denominator
    /// factors cancelled first.
    pub fn equiv(&self, other: &Self) -> bool {
        let shared = self.den.intersect_min(&other.den);
        let self_only = self.den.difference(&shared);
        let other_only = other.den.difference(&shared);
        &self.num * &other_only.expand() == &other.num * &self_only.expand()
    }

    /// `Some(c)` iff the value equals the constant `c` in `Z[x, y]`.
    ///
    /// The candidate is the constant term of the series expansion; the
    /// verdict is the exact polynomial identity
    /// `numerator == c * expanded denominator`.
    pub fn is_constant(&self) -> Option<BivarPoly> {
        let candidate = self.series(0).constant_term();
        let expanded = self.den.expand();
        if self.num == expanded.scale(&candidate) {
            Some(candidate)
        } else {
            None
        }
    }

    /// Expand near `q = 0` up to `order`, the lowest exponent tracked
    /// exactly. Each denominator factor is expanded far enough that the
    /// numerator's negative exponents cannot eat into the requested window.
    pub fn series(&self, order: i64) -> QSeries {
        assert!(order >= 0, "series order must be nonnegative");
        let num_min = self.num.min_exp().unwrap_or(0).min(0);
        let factor_order = order - num_min;
        let mut acc = QSeries::from_poly(&self.num);
        for (w, mult) in self.den.iter() {
            let geo = geometric_expand(w, factor_order);
            for _ in 0..mult {
                acc = acc.mul(&geo);
            }
        }
        acc.truncate(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x_plus_yq(w: i64) -> QPoly {
        QPoly::from_terms([(0, BivarPoly::var_x()), (w, BivarPoly::var_y())])
    }

    #[test]
    fn add_telescopes_to_one() {
        // 1/(1-q) + 1/(1-q^{-1}) = 1
        let a = RationalFn::new(QPoly::one(), DenomFactors::from_weights(&[1]));
        let b = RationalFn::new(QPoly::one(), DenomFactors::from_weights(&[-1]));
        let sum = a.add(&b);
        assert_eq!(sum.is_constant(), Some(BivarPoly::one()));
    }

    #[test]
    fn add_zero_is_identity() {
        let f = RationalFn::new(x_plus_yq(1), DenomFactors::from_weights(&[1]));
        let sum = f.add(&RationalFn::zero());
        assert!(sum.equiv(&f));
        assert_eq!(sum.numerator(), f.numerator());
    }

    #[test]
    fn cp1_chi1_terms_sum_to_minus_one() {
        // q/(1-q) + (-1)/(1-q) = -1
        let a = RationalFn::new(
            QPoly::monomial(1, BivarPoly::one()),
            DenomFactors::from_weights(&[1]),
        );
        let b = RationalFn::new(
            QPoly::constant(-&BivarPoly::one()),
            DenomFactors::from_weights(&[1]),
        );
        let sum = a.add(&b);
        assert_eq!(sum.is_constant(), Some(BivarPoly::constant(-1)));
    }

    #[test]
    fn constant_multiple_of_denominator() {
        // x(1-q)/(1-q) = x
        let num = QPoly::from_terms([(0, BivarPoly::var_x()), (1, -&BivarPoly::var_x())]);
        let f = RationalFn::new(num, DenomFactors::from_weights(&[1]));
        assert_eq!(f.is_constant(), Some(BivarPoly::var_x()));
    }

    #[test]
    fn non_constant_detected() {
        // (x + y q)/(1 - q) is not constant
        let f = RationalFn::new(x_plus_yq(1), DenomFactors::from_weights(&[1]));
        assert_eq!(f.is_constant(), None);
    }

    #[test]
    fn cp1_equivariant_sum_is_x_minus_y() {
        // (x+yq)/(1-q) + (x+yq^{-1})/(1-q^{-1}) = x - y
        let a = RationalFn::new(x_plus_yq(1), DenomFactors::from_weights(&[1]));
        let b = RationalFn::new(x_plus_yq(-1), DenomFactors::from_weights(&[-1]));
        let sum = a.add(&b);
        let expected = &BivarPoly::var_x() - &BivarPoly::var_y();
        assert_eq!(sum.is_constant(), Some(expected));
    }

    #[test]
    fn series_of_simple_pole() {
        // 1/(1-q) to order 2 -> 1 + q + q^2
        let f = RationalFn::new(QPoly::one(), DenomFactors::from_weights(&[1]));
        let s = f.series(2);
        for e in 0..=2 {
            assert_eq!(s.coeff(e), BivarPoly::one());
        }
    }

    #[test]
    fn series_of_negative_weight_pole() {
        // 1/(1-q^{-1}) to order 2 -> -q - q^2
        let f = RationalFn::new(QPoly::one(), DenomFactors::from_weights(&[-1]));
        let s = f.series(2);
        assert!(s.coeff(0).is_zero());
        assert_eq!(s.coeff(1), -&BivarPoly::one());
        assert_eq!(s.coeff(2), -&BivarPoly::one());
    }

    #[test]
    fn series_with_bivariate_numerator() {
        // (x + yq)/(1-q) to order 1 -> x + (x+y) q
        let f = RationalFn::new(x_plus_yq(1), DenomFactors::from_weights(&[1]));
        let s = f.series(1);
        assert_eq!(s.coeff(0), BivarPoly::var_x());
        assert_eq!(s.coeff(1), &BivarPoly::var_x() + &BivarPoly::var_y());
    }

    fn arb_rf() -> impl Strategy<Value = RationalFn> {
        let num = proptest::collection::vec(((-4i64..=4), (-5i64..=5), 0u32..2, 0u32..2), 0..4)
            .prop_map(|ts| {
                QPoly::from_terms(
                    ts.into_iter()
                        .map(|(e, c, xd, yd)| (e, BivarPoly::monomial(xd, yd, c))),
                )
            });
        let den = proptest::collection::vec((-4i64..=4).prop_filter("nonzero", |&w| w != 0), 0..3);
        (num, den).prop_map(|(num, den)| RationalFn::new(num, DenomFactors::from_weights(&den)))
    }

    proptest! {
        // rf_add followed by series equals the sum of the addends' series.
        #[test]
        fn series_is_additive(a in arb_rf(), b in arb_rf(), order in 0i64..=8) {
            let lhs = a.add(&b).series(order);
            let rhs = a.series(order).add(&b.series(order));
            let lo = lhs.min_exp().into_iter().chain(rhs.min_exp()).min().unwrap_or(0);
            for e in lo..=order {
                prop_assert_eq!(lhs.coeff(e), rhs.coeff(e));
            }
        }

        // is_constant agrees with exponent-independence of the series. A
        // non-constant value first deviates no later than
        // max(num.max_exp, sum of positive weights) + sum of |negative
        // weights|: the deviation is the lowest term of
        // (num - c * den) / den, and each negative-weight geometric factor
        // shifts it up by |w| at most.
        #[test]
        fn constancy_matches_series(f in arb_rf()) {
            let pos_sum: i64 = f.denominator().iter()
                .filter(|&(w, _)| w > 0)
                .map(|(w, m)| w * i64::from(m))
                .sum();
            let neg_sum: i64 = f.denominator().iter()
                .filter(|&(w, _)| w < 0)
                .map(|(w, m)| -w * i64::from(m))
                .sum();
            let bound = f.numerator().max_exp().unwrap_or(0).max(pos_sum) + neg_sum + 1;
            let s = f.series(bound.max(0));
            let series_constant = s.is_constant_within_truncation();
            match f.is_constant() {
                Some(c) => {
                    prop_assert!(series_constant);
                    prop_assert_eq!(s.constant_term(), c);
                }
                None => prop_assert!(!series_constant),
            }
        }

        // Addition is associative up to equivalence.
        #[test]
        fn add_is_associative(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            let lhs = a.add(&b).add(&c);
            let rhs = a.add(&b.add(&c));
            prop_assert!(lhs.equiv(&rhs));
        }
    }
}
