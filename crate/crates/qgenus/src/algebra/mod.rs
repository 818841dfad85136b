//! Exact polynomial and rational-function arithmetic underlying the
//! localization computations: bivariate integer polynomials in `x, y`,
//! Laurent polynomials in `q` over a generic coefficient ring, truncated
//! `q`-series with explicit truncation tracking, and two fraction types
//! (binomial-factored denominators and free Laurent denominators).

mod bivar;
mod fraction;
mod laurent;
mod rational;
mod series;

pub use bivar::BivarPoly;
pub use fraction::{LaurentFraction, ZPoly};
pub use laurent::{Coeff, LaurentPoly, QPoly};
pub use rational::{DenomFactors, RationalFn};
pub use series::{geometric_expand, QSeries};
