//! Fixed-point data of a unitary circle action: weight multisets with
//! orientation signs, canonicalization, surgery reduction, and the JSON
//! file format used by the CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum DataError {
    #[error("half_dim must be at least 1, got {0}")]
    BadHalfDim(i64),
    #[error("point {index} has {got} weights, expected {expected}")]
    WrongWeightCount {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("point {index} contains a zero weight")]
    ZeroWeight { index: usize },
    #[error("point {index} has sign {got}, expected 1 or -1")]
    BadSign { index: usize, got: i64 },
    #[error("malformed dataset JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Orientation comparison at a fixed point: +1 when the induced and given
/// orientations agree, -1 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn from_int(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.as_int())
    }
}

/// One fixed point: the weight multiset of the tangent representation
/// (stored sorted ascending) and the orientation sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    sign: Sign,
    weights: Vec<i64>,
}

impl Ord for FixedPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for FixedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl FixedPoint {
    /// Sorts the weights; rejects zero weights.
    pub fn new(mut weights: Vec<i64>, sign: Sign) -> Result<Self, DataError> {
        if weights.iter().any(|&w| w == 0) {
            return Err(DataError::ZeroWeight { index: 0 });
        }
        weights.sort_unstable();
        Ok(Self { weights, sign })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Key used for point ordering and surgery pairing.
    fn sort_key(&self) -> (i64, &[i64]) {
        (self.sign.as_int(), &self.weights)
    }
}

/// Weight multiset split by sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSplit {
    pub positives: Vec<i64>,
    pub negatives: Vec<i64>,
}

impl WeightSplit {
    pub fn pos_count(&self) -> usize {
        self.positives.len()
    }

    pub fn neg_count(&self) -> usize {
        self.negatives.len()
    }
}

/// Partition the weights of a point by sign.
pub fn split_weights(p: &FixedPoint) -> WeightSplit {
    let (positives, negatives) = p.weights.iter().partition(|&&w| w > 0);
    WeightSplit {
        positives,
        negatives,
    }
}

/// A complete fixed-point dataset: `half_dim = n` (so the manifold has
/// dimension `2n`) and `m >= 0` points. Always held in canonical form:
/// weights sorted within each point, points sorted by (sign, weights).
///
/// `m = 0` is legal and encodes bounding (fully cancelled) data; every
/// genus built from it is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDataset")]
pub struct FixedPointData {
    half_dim: usize,
    points: Vec<FixedPoint>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDataset {
    half_dim: i64,
    points: Vec<RawPoint>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    weights: Vec<i64>,
    sign: i64,
}

impl TryFrom<RawDataset> for FixedPointData {
    type Error = DataError;

    fn try_from(raw: RawDataset) -> Result<Self, DataError> {
        if raw.half_dim < 1 {
            return Err(DataError::BadHalfDim(raw.half_dim));
        }
        let half_dim = raw.half_dim as usize;
        let points = raw
            .points
            .into_iter()
            .enumerate()
            .map(|(index, p)| {
                let sign = Sign::from_int(p.sign).ok_or(DataError::BadSign {
                    index,
                    got: p.sign,
                })?;
                Ok((p.weights, sign))
            })
            .collect::<Result<Vec<_>, DataError>>()?;
        FixedPointData::validate(half_dim, points)
    }
}

impl FixedPointData {
    /// Checks all invariants and returns the canonical form.
    pub fn validate(
        half_dim: usize,
        points: Vec<(Vec<i64>, Sign)>,
    ) -> Result<Self, DataError> {
        if half_dim < 1 {
            return Err(DataError::BadHalfDim(half_dim as i64));
        }
        let mut canonical = Vec::with_capacity(points.len());
        for (index, (weights, sign)) in points.into_iter().enumerate() {
            if weights.len() != half_dim {
                return Err(DataError::WrongWeightCount {
                    index,
                    expected: half_dim,
                    got: weights.len(),
                });
            }
            if weights.iter().any(|&w| w == 0) {
                return Err(DataError::ZeroWeight { index });
            }
            let mut weights = weights;
            weights.sort_unstable();
            canonical.push(FixedPoint { weights, sign });
        }
        canonical.sort();
        Ok(Self {
            half_dim,
            points: canonical,
        })
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Surgery reduction: repeatedly delete pairs of points with identical
    /// weight multisets and opposite signs. Each deleted pair contributes
    /// cancelling terms to the localization sum, so every genus is
    /// unchanged. Implemented by net-sign counting, which makes the result
    /// independent of cancellation order.
    pub fn reduce(&self) -> Self {
        let mut net: BTreeMap<&[i64], i64> = BTreeMap::new();
        for p in &self.points {
            *net.entry(p.weights()).or_insert(0) += p.sign().as_int();
        }
        let mut points = Vec::new();
        for (weights, count) in net {
            let sign = if count >= 0 { Sign::Plus } else { Sign::Minus };
            for _ in 0..count.abs() {
                points.push(FixedPoint {
                    weights: weights.to_vec(),
                    sign,
                });
            }
        }
        points.sort();
        Self {
            half_dim: self.half_dim,
            points,
        }
    }

    /// Precompose the action with circle inversion: negate every weight,
    /// then re-canonicalize.
    pub fn negate_action(&self) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| {
                let mut weights: Vec<i64> = p.weights.iter().map(|&w| -w).collect();
                weights.sort_unstable();
                (weights, p.sign)
            })
            .map(|(weights, sign)| FixedPoint { weights, sign })
            .collect::<Vec<_>>();
        let mut points = points;
        points.sort();
        Self {
            half_dim: self.half_dim,
            points,
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, DataError> {
        let raw: RawDataset = serde_json::from_str(s)?;
        raw.try_into()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serialization cannot fail")
    }

    /// SHA-256 of the compact canonical JSON form, as lowercase hex.
    pub fn content_hash(&self) -> String {
        let compact = serde_json::to_string(self).expect("dataset serialization cannot fail");
        hex::encode(Sha256::digest(compact.as_bytes()))
    }
}

impl fmt::Display for FixedPointData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={} [", self.half_dim, self.points.len())?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let sign = if p.sign == Sign::Plus { '+' } else { '-' };
            write!(f, "({:?},{sign})", p.weights)?;
        }
        write!(f, "]")
    }
}

/// The standard rotation datum of complex projective `n`-space: point `i`
/// has weights `(j - i for j != i)`, all signs positive.
pub fn cpn_dataset(n: usize) -> FixedPointData {
    let points = (0..=n as i64)
        .map(|i| {
            let weights = (0..=n as i64).filter(|&j| j != i).map(|j| j - i).collect();
            (weights, Sign::Plus)
        })
        .collect();
    FixedPointData::validate(n, points).expect("projective-space datum is always valid")
}
