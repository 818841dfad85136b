//! Exact equivariant genus computations for circle-action fixed-point
//! data: localization sums over fixed points, rigidity decisions, the
//! coefficient identities relating the genus to fixed-point counts, and
//! enumeration utilities for probing the point-count lower bound.

pub mod algebra;
pub mod data;
pub mod genus;
pub mod proof;
pub mod search;
