//! The identity machinery behind the fixed-point-count bound, packaged as
//! executable checks: Newton reductions of symmetric functions, the power
//! row identities, the closed-form solution of the diagonal linear system,
//! cyclic-equality defects, Vandermonde ranks, and impossibility
//! certificates for small configurations.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BivarPoly, DenomFactors, LaurentFraction, QPoly, RationalFn, ZPoly};
use crate::data::FixedPointData;
use crate::genus::{chi_vector_combinatorial, chi_vector_series, GenusError};

#[derive(Error, Debug)]
pub enum ProofError {
    #[error("dataset is not rigid: coefficient vector undefined")]
    NotRigid,
    #[error("cyclic construction needs m <= k, got m = {m}, k = {k}")]
    TooManyClasses { m: usize, k: usize },
    #[error("closed-form solution needs at least 2 classes, got {m}")]
    TooFewClasses { m: usize },
    #[error("sigma values must be pairwise distinct")]
    DuplicateSigma,
    #[error("sigma value equal to the constant 1: solution denominators would vanish")]
    SigmaIsOne,
}

impl From<GenusError> for ProofError {
    fn from(e: GenusError) -> Self {
        match e {
            GenusError::NotRigid => ProofError::NotRigid,
        }
    }
}

/// `sigma_l` evaluated at `(q^(w_1), ..., q^(w_n))`; `sigma_0 = 1`.
pub fn eval_sigma(weights: &[i64], l: usize) -> ZPoly {
    assert!(l <= weights.len(), "sigma index {l} out of range");
    let mut e: Vec<ZPoly> = Vec::with_capacity(l + 1);
    e.push(ZPoly::one());
    for _ in 0..l {
        e.push(ZPoly::zero());
    }
    for &w in weights {
        let qw = ZPoly::monomial(w, BigInt::from(1));
        for j in (1..=l).rev() {
            let bump = &e[j - 1] * &qw;
            e[j] = &e[j] + &bump;
        }
    }
    e.pop().expect("vector was built with l + 1 entries")
}

/// Power sum `s_l = sum_j q^(l w_j)`, `l >= 1`.
pub fn eval_power_sum(weights: &[i64], l: usize) -> ZPoly {
    assert!(l >= 1, "power sum index must be at least 1");
    let l = l as i64;
    ZPoly::from_terms(weights.iter().map(|&w| (l * w, BigInt::from(1))))
}

/// The Newton remainder `F_l = l sigma_l - (-1)^l sigma_1^l`, the part of
/// `l sigma_l` not explained by the pure power of `sigma_1`. Satisfies
/// `F_2 = -s_2` and `F_3 = 3 sigma_1 sigma_2 + s_3` identically.
pub fn newton_f(weights: &[i64], l: usize) -> ZPoly {
    assert!(l >= 2, "newton remainder defined for l >= 2");
    let sigma_l = if l <= weights.len() {
        eval_sigma(weights, l)
    } else {
        ZPoly::zero()
    };
    let l_sigma = sigma_l.scale(&BigInt::from(l as i64));
    let sigma1_pow = eval_sigma(weights, 1).pow(l as u32);
    if l % 2 == 0 {
        &l_sigma - &sigma1_pow
    } else {
        &l_sigma + &sigma1_pow
    }
}

/// One merged point class: a distinct weight multiset, its net signed
/// multiplicity, and `sigma_1` evaluated on it.
#[derive(Clone, Debug)]
pub struct WeightClass {
    weights: Vec<i64>,
    multiplicity: i64,
    sigma1: ZPoly,
}

impl WeightClass {
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    pub fn sigma1(&self) -> &ZPoly {
        &self.sigma1
    }

    /// The localization denominator term `1 / prod_j (1 - q^(w_j))`,
    /// scaled by the class multiplicity.
    fn weighted_f(&self) -> RationalFn {
        RationalFn::new(
            QPoly::constant(BivarPoly::constant(self.multiplicity)),
            DenomFactors::from_weights(&self.weights),
        )
    }
}

/// Dataset prepared for the linear-system argument: surgery-reduced, with
/// same-sign duplicate points merged into classes so that the `sigma_1`
/// values are pairwise distinct (`sigma_1` determines the weight multiset:
/// the coefficient of `q^w` is the multiplicity of `w`).
#[derive(Clone, Debug)]
pub struct ProofContext {
    data: FixedPointData,
    classes: Vec<WeightClass>,
    k: usize,
}

impl ProofContext {
    pub fn new(d: &FixedPointData) -> Self {
        let data = d.reduce();
        let mut classes: Vec<WeightClass> = Vec::new();
        for p in data.points() {
            match classes.last_mut() {
                Some(last) if last.weights == p.weights() => {
                    last.multiplicity += p.sign().as_int();
                }
                _ => classes.push(WeightClass {
                    weights: p.weights().to_vec(),
                    multiplicity: p.sign().as_int(),
                    sigma1: eval_sigma(p.weights(), 1),
                }),
            }
        }
        debug_assert!(
            classes
                .iter()
                .enumerate()
                .all(|(i, a)| classes[i + 1..].iter().all(|b| a.sigma1 != b.sigma1)),
            "distinct weight multisets must give distinct sigma_1"
        );
        let k = data.half_dim() / 2;
        Self { data, classes, k }
    }

    /// Build directly from classes; test hook for degenerate cases such as
    /// zero net multiplicity, which cannot survive `reduce`.
    pub fn from_classes(half_dim: usize, classes: Vec<(Vec<i64>, i64)>) -> Self {
        let points = classes
            .iter()
            .flat_map(|(weights, mult)| {
                let sign = if *mult >= 0 {
                    crate::data::Sign::Plus
                } else {
                    crate::data::Sign::Minus
                };
                std::iter::repeat((weights.clone(), sign)).take(mult.unsigned_abs() as usize)
            })
            .collect();
        let data = FixedPointData::validate(half_dim, points).expect("classes must be valid");
        let classes = classes
            .into_iter()
            .map(|(mut weights, multiplicity)| {
                weights.sort_unstable();
                let sigma1 = eval_sigma(&weights, 1);
                WeightClass {
                    weights,
                    multiplicity,
                    sigma1,
                }
            })
            .collect();
        Self {
            data,
            classes,
            k: half_dim / 2,
        }
    }

    pub fn data(&self) -> &FixedPointData {
        &self.data
    }

    pub fn classes(&self) -> &[WeightClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sigma1_list(&self) -> Vec<ZPoly> {
        self.classes.iter().map(|c| c.sigma1.clone()).collect()
    }
}

/// `sum_i eps_i F_l(point i) f_i(q)`, the aggregated Newton remainder.
pub fn cal_f(ctx: &ProofContext, l: usize) -> RationalFn {
    assert!(l >= 2, "aggregated remainder defined for l >= 2");
    ctx.classes
        .iter()
        .map(|c| c.weighted_f().mul_laurent(&newton_f(&c.weights, l)))
        .fold(RationalFn::zero(), |acc, t| acc.add(&t))
}

/// Right-hand sides of the power-row system: `b_0 = chi^0`, `b_1 = chi^1`
/// as constants, and `b_l = (-1)^l (l chi^l - F_l-aggregate)` for
/// `l = 2..k`.
#[derive(Clone, Debug)]
pub struct BVector {
    entries: Vec<RationalFn>,
}

impl BVector {
    pub fn entries(&self) -> &[RationalFn] {
        &self.entries
    }

    pub fn entry(&self, l: usize) -> &RationalFn {
        &self.entries[l]
    }
}

fn b_vector_from_chi(ctx: &ProofContext, chi: &[i64]) -> BVector {
    let k = ctx.k();
    let mut entries = Vec::with_capacity(k + 1);
    for l in 0..=k {
        let entry = match l {
            0 | 1 => RationalFn::constant(BivarPoly::constant(chi[l])),
            _ => {
                let l_chi = RationalFn::constant(BivarPoly::constant(l as i64 * chi[l]));
                let diff = l_chi.sub(&cal_f(ctx, l));
                if l % 2 == 0 {
                    diff
                } else {
                    diff.neg()
                }
            }
        };
        entries.push(entry);
    }
    BVector { entries }
}

/// One left-hand side of the power-row system:
/// `sum_i eps_i sigma_(1,i)^l f_i(q)`.
pub fn power_row(ctx: &ProofContext, l: usize) -> RationalFn {
    ctx.classes
        .iter()
        .map(|c| c.weighted_f().mul_laurent(&c.sigma1.pow(l as u32)))
        .fold(RationalFn::zero(), |acc, t| acc.add(&t))
}

/// The b vector for rigid data, with the coefficient vector taken from the
/// series route. Every row identity
/// `sum_i eps_i sigma_(1,i)^l f_i = b_l` is verified exactly before
/// returning; these hold by the Newton reduction, so a failure would mean
/// an internal fault.
pub fn b_vector(ctx: &ProofContext) -> Result<BVector, ProofError> {
    let chi = chi_vector_series(ctx.data())?;
    let b = b_vector_from_chi(ctx, &chi);
    for l in 0..=ctx.k() {
        assert!(
            power_row(ctx, l).equiv(b.entry(l)),
            "power row {l} disagrees with its b entry on rigid data"
        );
    }
    Ok(b)
}

/// The b vector under the hypothesis that the dataset were rigid, with the
/// coefficient vector taken from the counting route. Used by certificates,
/// where the data is typically not rigid and the hypothesis is what gets
/// refuted; no row identities are checked.
pub fn b_vector_hypothesized(ctx: &ProofContext) -> BVector {
    let (chi, _) = chi_vector_combinatorial(ctx.data());
    b_vector_from_chi(ctx, &chi)
}

/// Closed-form solution coefficients of the diagonal system, `u_0..u_m`
/// for `m` sigma values.
#[derive(Clone, Debug)]
pub struct UCoefficients {
    entries: Vec<LaurentFraction>,
}

impl UCoefficients {
    pub fn entries(&self) -> &[LaurentFraction] {
        &self.entries
    }

    pub fn from_entries(entries: Vec<LaurentFraction>) -> Self {
        Self { entries }
    }
}

/// Closed-form nonzero solution of the diagonal system for pairwise
/// distinct sigma values, none equal to 1:
/// `u_0 = 1`, `u_1 = (s1 - s2)/(s2 - 1)`,
/// `u_j = (s1 - 1)(s_j - s_(j+1)) / ((s_j - 1)(s_(j+1) - 1))` for
/// `2 <= j <= m-1`, and `u_m = s_m (1 - s1)/(s_m - 1)`.
pub fn u_coefficients(sigma1: &[ZPoly]) -> Result<UCoefficients, ProofError> {
    let m = sigma1.len();
    if m < 2 {
        return Err(ProofError::TooFewClasses { m });
    }
    let one = ZPoly::one();
    for (i, s) in sigma1.iter().enumerate() {
        if *s == one {
            return Err(ProofError::SigmaIsOne);
        }
        if sigma1[i + 1..].contains(s) {
            return Err(ProofError::DuplicateSigma);
        }
    }

    let s = |j: usize| &sigma1[j - 1];
    let mut entries = vec![LaurentFraction::one()];
    entries.push(LaurentFraction::new(s(1) - s(2), s(2) - &one));
    for j in 2..m {
        let num = &(s(1) - &one) * &(s(j) - s(j + 1));
        let den = &(s(j) - &one) * &(s(j + 1) - &one);
        entries.push(LaurentFraction::new(num, den));
    }
    if m >= 2 {
        let num = s(m) * &(&one - s(1));
        entries.push(LaurentFraction::new(num, s(m) - &one));
    }
    debug_assert!(entries.iter().all(|u| !u.is_zero()));
    Ok(UCoefficients { entries })
}

/// Checks every row of the diagonal system:
/// `sigma_(1,i) (u_0 + ... + u_(i-1)) + (u_i + ... + u_m) = 0` for
/// `i = 1..m`.
pub fn verify_diagonal_system(sigma1: &[ZPoly], u: &UCoefficients) -> bool {
    let m = sigma1.len();
    assert_eq!(
        u.entries.len(),
        m + 1,
        "solution vector must have one more entry than sigma list"
    );
    for i in 1..=m {
        let mut head = LaurentFraction::zero();
        for uj in &u.entries[..i] {
            head = head.add(uj);
        }
        let mut tail = LaurentFraction::zero();
        for uj in &u.entries[i..] {
            tail = tail.add(uj);
        }
        let row = head.mul_poly(&sigma1[i - 1]).add(&tail);
        if !row.is_zero() && !row.equiv(&LaurentFraction::zero()) {
            return false;
        }
    }
    true
}

/// Defects of the cyclic equalities: `d_l = b_l - sigma_(1,l) b_(l-1)` for
/// `l = 1..m`. Requires `m <= k`; rigid nonbounding data would force every
/// defect to vanish, which the constant entries `b_0, b_1` and the
/// nonconstant `sigma_1` make impossible.
pub fn cyclic_defects(ctx: &ProofContext, b: &BVector) -> Result<Vec<RationalFn>, ProofError> {
    let m = ctx.num_classes();
    let k = ctx.k();
    if m > k {
        return Err(ProofError::TooManyClasses { m, k });
    }
    Ok((1..=m).map(|l| cyclic_defect(ctx, b, l)).collect())
}

fn cyclic_defect(ctx: &ProofContext, b: &BVector, l: usize) -> RationalFn {
    let shifted = b.entry(l - 1).mul_laurent(&ctx.classes[l - 1].sigma1);
    b.entry(l).sub(&shifted)
}

/// Rank over the rational-function field of the `(k+1) x m` matrix with
/// rows `sigma_(1,i)^l`, `l = 0..k`. The matrix is a Vandermonde in the
/// sigma values, so the rank is witnessed by a maximal minor with
/// pairwise distinct nodes, whose determinant
/// `prod_(i<j) (sigma_j - sigma_i)` is checked to be nonzero exactly.
pub fn vandermonde_rank(sigma1: &[ZPoly], k: usize) -> usize {
    let mut nodes: Vec<&ZPoly> = Vec::new();
    for s in sigma1 {
        if !nodes.contains(&s) {
            nodes.push(s);
        }
    }
    nodes.truncate(k + 1);
    let mut det = ZPoly::one();
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            det = &det * &(*b - *a);
        }
    }
    assert!(
        !det.is_zero(),
        "minor on distinct nodes has nonzero determinant"
    );
    nodes.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Some cyclic defect is nonzero: rigid nonbounding data with this
    /// configuration cannot exist.
    Contradiction,
    /// All defects vanish and every hypothesized coefficient is zero:
    /// consistent only with bounding data.
    Bounding,
    /// Defects vanish but some coefficient is nonzero; the argument makes
    /// no claim.
    Indeterminate,
    /// Forced run with more classes than the construction covers.
    Inapplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectStatus {
    pub l: usize,
    pub zero: bool,
}

/// Machine-checkable record of one run of the cyclic-equality argument.
/// `m` counts merged point classes after surgery reduction; the defect
/// list covers `l = 1..min(m, k)`.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub dataset_hash: String,
    pub defects: Vec<DefectStatus>,
    pub failing_index: Option<usize>,
    pub k: usize,
    pub m: usize,
    pub verdict: Verdict,
}

/// Run the cyclic-equality argument on a dataset with few classes.
///
/// Refuses when `m > k` unless `force` is set; a forced run evaluates the
/// defects that are defined (`l <= k`) and reports the verdict
/// `inapplicable`.
pub fn certificate(d: &FixedPointData, force: bool) -> Result<Certificate, ProofError> {
    let ctx = ProofContext::new(d);
    let m = ctx.num_classes();
    let k = ctx.k();
    if m > k && !force {
        return Err(ProofError::TooManyClasses { m, k });
    }
    let b = b_vector_hypothesized(&ctx);
    let upper = m.min(k);
    let defects: Vec<DefectStatus> = (1..=upper)
        .map(|l| DefectStatus {
            l,
            zero: cyclic_defect(&ctx, &b, l).is_exactly_zero(),
        })
        .collect();
    let failing_index = defects.iter().find(|s| !s.zero).map(|s| s.l);

    let verdict = if m > k {
        Verdict::Inapplicable
    } else if failing_index.is_some() {
        Verdict::Contradiction
    } else {
        let (chi, _) = chi_vector_combinatorial(ctx.data());
        if chi.iter().all(|&c| c == 0) {
            Verdict::Bounding
        } else {
            Verdict::Indeterminate
        }
    };

    Ok(Certificate {
        dataset_hash: d.content_hash(),
        defects,
        failing_index,
        k,
        m,
        verdict,
    })
}
