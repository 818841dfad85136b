//! Sparse polynomials in the two genus parameters `x` and `y` over
//! arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

/// A polynomial in `x` and `y` with `BigInt` coefficients.
///
/// Stored sparsely as a map from `(x_degree, y_degree)` to coefficient.
/// No zero coefficient is ever stored, so structural equality of the term
/// maps is equality of polynomials. Looking up an absent monomial yields
/// zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(0, 0, c)
    }

    /// The monomial `c * x^xd * y^yd`.
    pub fn monomial<C: Into<BigInt>>(xd: u32, yd: u32, c: C) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((xd, yd), c);
        }
        Self { terms }
    }

    pub fn var_x() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn var_y() -> Self {
        Self::monomial(0, 1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `x^xd * y^yd` (zero when absent).
    pub fn coeff(&self, xd: u32, yd: u32) -> BigInt {
        self.terms.get(&(xd, yd)).cloned().unwrap_or_default()
    }

    /// `Some(c)` iff the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Evaluate at integer arguments, e.g. `(1, 1)` for the signature
    /// specialization or `(1, -1)` for the top Chern number.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(xd, yd), c) in &self.terms {
            acc += c * x.pow(xd) * y.pow(yd);
        }
        acc
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            out.insert_add(k, v.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            out.insert_add(k, -v.clone());
        }
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(xa, ya), ca) in &self.terms {
            for (&(xb, yb), cb) in &rhs.terms {
                out.insert_add((xa + xb, ya + yb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

// By-value forms, mostly so that `Zero`/`One` can be implemented and the
// type can serve as a coefficient ring for `LaurentPoly`.
impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: BivarPoly) -> BivarPoly {
        &self + &rhs
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: BivarPoly) -> BivarPoly {
        &self - &rhs
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl Zero for BivarPoly {
    fn zero() -> Self {
        BivarPoly::zero()
    }
    fn is_zero(&self) -> bool {
        BivarPoly::is_zero(self)
    }
}

impl One for BivarPoly {
    fn one() -> Self {
        BivarPoly::one()
    }
}

/// Serializes as a list of `[x_degree, y_degree, coefficient]` triples with
/// the coefficient rendered as a decimal string, so arbitrary-precision
/// values never pass through a native number type.
impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&(xd, yd), c) in &self.terms {
            seq.serialize_element(&(xd, yd, c.to_string()))?;
        }
        seq.end()
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(xd, yd), c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match (xd, yd) {
                (0, 0) => write!(f, "{c}")?,
                _ => {
                    if c.is_one() {
                        let mut sep = "";
                        if xd > 0 {
                            write!(f, "x^{xd}")?;
                            sep = "*";
                        }
                        if yd > 0 {
                            write!(f, "{sep}y^{yd}")?;
                        }
                    } else {
                        write!(f, "{c}")?;
                        if xd > 0 {
                            write!(f, "*x^{xd}")?;
                        }
                        if yd > 0 {
                            write!(f, "*y^{yd}")?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absent_monomial_is_zero() {
        let p = BivarPoly::var_x();
        assert_eq!(p.coeff(0, 1), BigInt::zero());
        assert_eq!(p.coeff(1, 0), BigInt::one());
    }

    #[test]
    fn cancelling_add_drops_term() {
        let p = &BivarPoly::var_x() + &BivarPoly::var_y();
        let q = &p - &BivarPoly::var_x();
        assert_eq!(q, BivarPoly::var_y());
        assert!((&q - &BivarPoly::var_y()).is_zero());
    }

    #[test]
    fn product_expands() {
        // (x + y)(x - y) = x^2 - y^2
        let s = &BivarPoly::var_x() + &BivarPoly::var_y();
        let d = &BivarPoly::var_x() - &BivarPoly::var_y();
        let p = &s * &d;
        let expected = &BivarPoly::monomial(2, 0, 1) - &BivarPoly::monomial(0, 2, 1);
        assert_eq!(p, expected);
    }

    #[test]
    fn eval_specializations() {
        // x^2 - x*y + y^2 at (1,1) = 1, at (1,-1) = 3
        let p = &(&BivarPoly::monomial(2, 0, 1) - &BivarPoly::monomial(1, 1, 1))
            + &BivarPoly::monomial(0, 2, 1);
        assert_eq!(p.eval(&BigInt::one(), &BigInt::one()), BigInt::from(1));
        assert_eq!(p.eval(&BigInt::one(), &BigInt::from(-1)), BigInt::from(3));
    }

    #[test]
    fn json_form_is_degree_sorted_triples() {
        let p = &BivarPoly::monomial(1, 0, 1) - &BivarPoly::monomial(0, 1, 1);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[0,1,"-1"],[1,0,"1"]]"#);
    }
}
