//! Truncated `q`-series with `Z[x, y]` coefficients.
//!
//! A series is exact from its lowest exponent upward; truncation only hides
//! the top. The truncation order is recorded in every value and arithmetic
//! propagates it, so a coefficient is never read past the point where it is
//! actually known.

use std::collections::BTreeMap;

use super::bivar::BivarPoly;
use super::laurent::QPoly;

/// A `q`-series with [`BivarPoly`] coefficients, exact for all exponents
/// `<= trunc` (`trunc == None` means the value is an exact Laurent
/// polynomial and every omitted coefficient is genuinely zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<i64, BivarPoly>,
    trunc: Option<i64>,
}

impl QSeries {
    /// The exact zero series.
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
            trunc: None,
        }
    }

    pub fn one() -> Self {
        Self::from_poly(&QPoly::one())
    }

    /// An exact polynomial viewed as a series (unbounded validity).
    pub fn from_poly(p: &QPoly) -> Self {
        Self {
            coeffs: p.terms().map(|(&e, c)| (e, c.clone())).collect(),
            trunc: None,
        }
    }

    /// The recorded truncation order; `None` for exact values.
    pub fn truncation(&self) -> Option<i64> {
        self.trunc
    }

    /// Lowest exponent carrying a nonzero known coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// True when the value is known to be exactly zero.
    pub fn is_exactly_zero(&self) -> bool {
        self.coeffs.is_empty() && self.trunc.is_none()
    }

    /// Lower bound for the exponent where *unknown* content could start:
    /// the known support's minimum, or just past the truncation order when
    /// every known coefficient vanishes. `None` means plus infinity (the
    /// series is exactly zero).
    fn support_floor(&self) -> Option<i64> {
        match self.min_exp() {
            Some(m) => Some(m),
            None => self.trunc.map(|t| t + 1),
        }
    }

    /// The coefficient of `q^exp`.
    ///
    /// Panics when `exp` lies beyond the truncation order: that coefficient
    /// was never computed and reading it would silently extend the series.
    pub fn coeff(&self, exp: i64) -> BivarPoly {
        if let Some(t) = self.trunc {
            assert!(
                exp <= t,
                "q-series coefficient at exponent {exp} requested past truncation order {t}"
            );
        }
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BivarPoly)> {
        self.coeffs.iter()
    }

    /// True iff no known nonzero coefficient sits at a nonzero exponent.
    pub fn is_constant_within_truncation(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    pub fn constant_term(&self) -> BivarPoly {
        self.coeff(0)
    }

    fn drop_past_trunc(&mut self) {
        if let Some(t) = self.trunc {
            self.coeffs.retain(|&e, c| e <= t && !c.is_zero());
        } else {
            self.coeffs.retain(|_, c| !c.is_zero());
        }
    }

    /// Restrict to exponents `<= order` and record that order.
    ///
    /// Panics if the series is not actually known that far.
    pub fn truncate(mut self, order: i64) -> Self {
        if let Some(t) = self.trunc {
            assert!(
                order <= t,
                "cannot extend a q-series truncated at {t} to order {order}"
            );
        }
        self.trunc = Some(order);
        self.drop_past_trunc();
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = match (self.trunc, other.trunc) {
            (None, t) | (t, None) => t,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &other.coeffs {
            let entry = coeffs.entry(e).or_default();
            *entry = &*entry + c;
        }
        let mut out = Self { coeffs, trunc };
        out.drop_past_trunc();
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product with exact truncation bookkeeping: unknown content of one
    /// factor first pollutes the product at (truncation + 1) + (lowest
    /// possible exponent of the other factor).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_exactly_zero() || other.is_exactly_zero() {
            return Self::zero();
        }
        let mut trunc: Option<i64> = None;
        let mut consider = |t: Option<i64>, other_floor: Option<i64>| {
            if let (Some(t), Some(m)) = (t, other_floor) {
                let bound = t + m;
                trunc = Some(trunc.map_or(bound, |cur| cur.min(bound)));
            }
        };
        consider(self.trunc, other.support_floor());
        consider(other.trunc, self.support_floor());

        let mut coeffs: BTreeMap<i64, BivarPoly> = BTreeMap::new();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if trunc.is_some_and(|t| e > t) {
                    continue;
                }
                let entry = coeffs.entry(e).or_default();
                *entry = &*entry + &(ca * cb);
            }
        }
        let mut out = Self { coeffs, trunc };
        out.drop_past_trunc();
        out
    }
}

/// The `q`-series of `1 / (1 - q^w)` near `q = 0`, truncated at `order`.
///
/// For `w > 0` this is the geometric series `1 + q^w + q^{2w} + ...`; for
/// `w < 0` the identity `1/(1 - q^{-a}) = -q^a/(1 - q^a)` gives
/// `-(q^a + q^{2a} + ...)` with `a = -w`.
pub fn geometric_expand(w: i64, order: i64) -> QSeries {
    assert!(w != 0, "geometric_expand requires a nonzero weight");
    assert!(order >= 0, "geometric_expand requires a nonnegative order");
    let mut coeffs = BTreeMap::new();
    if w > 0 {
        let mut e = 0;
        while e <= order {
            coeffs.insert(e, BivarPoly::one());
            e += w;
        }
    } else {
        let a = -w;
        let mut e = a;
        while e <= order {
            coeffs.insert(e, -&BivarPoly::one());
            e += a;
        }
    }
    QSeries {
        coeffs,
        trunc: Some(order),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn int_series(s: &QSeries) -> Vec<(i64, BigInt)> {
        s.terms()
            .map(|(&e, c)| (e, c.as_constant().expect("constant coefficient")))
            .collect()
    }

    #[test]
    fn geometric_positive_weight() {
        // w=1, order=3 -> 1 + q + q^2 + q^3
        let s = geometric_expand(1, 3);
        let got = int_series(&s);
        let want: Vec<_> = (0..=3).map(|e| (e, BigInt::from(1))).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn geometric_negative_weight() {
        // w=-1, order=3 -> -q - q^2 - q^3
        let s = geometric_expand(-1, 3);
        let got = int_series(&s);
        let want: Vec<_> = (1..=3).map(|e| (e, BigInt::from(-1))).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn geometric_weight_two() {
        // w=2, order=5 -> 1 + q^2 + q^4
        let s = geometric_expand(2, 5);
        let got = int_series(&s);
        let want: Vec<_> = [0, 2, 4].iter().map(|&e| (e, BigInt::from(1))).collect();
        assert_eq!(got, want);
    }

    #[test]
    #[should_panic(expected = "nonzero weight")]
    fn geometric_rejects_zero_weight() {
        geometric_expand(0, 3);
    }

    #[test]
    #[should_panic(expected = "past truncation order")]
    fn coeff_read_past_truncation_panics() {
        let s = geometric_expand(1, 3);
        let _ = s.coeff(4);
    }

    proptest! {
        // geometric_expand(w, N) * (1 - q^w), truncated to N - |w|, is 1.
        #[test]
        fn geometric_inverts_binomial(w in (-9i64..=9).prop_filter("nonzero", |&w| w != 0),
                                      order in 0i64..=30) {
            let geo = geometric_expand(w, order);
            let one_minus = QSeries::from_poly(&QPoly::from_terms([
                (0, BivarPoly::one()),
                (w, -&BivarPoly::one()),
            ]));
            let prod = geo.mul(&one_minus);
            let check_to = order - w.abs();
            prop_assume!(check_to >= 0);
            let prod = prod.truncate(check_to);
            for (&e, c) in prod.terms() {
                if e == 0 {
                    prop_assert_eq!(c.clone(), BivarPoly::one());
                } else {
                    prop_assert!(c.is_zero());
                }
            }
            prop_assert_eq!(prod.constant_term(), BivarPoly::one());
        }
    }
}
