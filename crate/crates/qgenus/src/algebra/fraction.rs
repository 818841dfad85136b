//! Formal fractions of `q`-Laurent polynomials with integer coefficients.
//!
//! Unlike [`RationalFn`](super::rational::RationalFn), the denominator here
//! is an arbitrary Laurent polynomial. These arise as closed-form solution
//! coefficients whose denominators are differences like `sigma - 1`, which
//! do not factor into `(1 - q^w)` binomials. No reduction is attempted;
//! equality is cross-multiplication.

use num_bigint::BigInt;

use super::laurent::LaurentPoly;

pub type ZPoly = LaurentPoly<BigInt>;

/// `num / den` with `den != 0`, compared by cross-multiplication.
#[derive(Clone, Debug)]
pub struct LaurentFraction {
    num: ZPoly,
    den: ZPoly,
}

impl LaurentFraction {
    pub fn new(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "fraction with zero denominator");
        Self { num, den }
    }

    pub fn from_poly(num: ZPoly) -> Self {
        Self::new(num, ZPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(ZPoly::constant(BigInt::from(c)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.num, self.den.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_poly(&self, p: &ZPoly) -> Self {
        Self::new(&self.num * p, self.den.clone())
    }

    /// `a/b == c/d` iff `a d == c b`.
    pub fn equiv(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}
