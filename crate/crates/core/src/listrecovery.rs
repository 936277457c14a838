//! Exact list recovery, Johnson-bound calculators, and the parameter and
//! hypothesis calculus of the random-puncturing theorem.
//!
//! The recovery radius comparison `distance <= rho * n` is performed on
//! exact rationals. Hypothesis checks use exact rational arithmetic except
//! where a square root or logarithm is unavoidable; logarithms are natural.

use crate::code::{distance_to_lists, Codeword, ExplicitCode, ReedSolomonCode};
use crate::gf::{FieldElement, FieldSpec};
use crate::rat::{rat_int, rat_one, serialize_rat, Rat};
use itertools::Itertools;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Default cap on interpolations performed by the Reed-Solomon solver.
pub const DEFAULT_WORK_CAP: u64 = 10_000_000;

/// Default cap on the number of list families examined by the exhaustive
/// zero-error search.
pub const DEFAULT_FAMILY_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RecoveryError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("coordinate {0} has an empty list")]
    EmptyList(usize),
    #[error("list element {0} is not in the field")]
    ElementOutOfField(u64),
    #[error("rho must satisfy 0 <= rho < 1, got {0}")]
    BadRho(String),
    #[error("radius too large: (1 - rho) * n = {available} < d + 1 = {needed}, exactness cannot be certified")]
    RadiusTooLarge { available: String, needed: usize },
    #[error("work of {estimated} interpolations exceeds cap {cap}")]
    WorkCapExceeded { estimated: u128, cap: u64 },
    #[error("search space of {families} list families exceeds cap {cap}")]
    SearchSpaceTooLarge { families: u128, cap: u64 },
    #[error("epsilon must satisfy {0}")]
    BadEpsilon(String),
    #[error("Johnson denominator (1-rho)^2 - epsilon*ell = {0} is not positive")]
    DenominatorNonpositive(String),
    #[error("alpha must satisfy 0 < alpha <= 1, got {0}")]
    BadAlpha(String),
    #[error("rho = {rho} too large: gamma = (1+alpha)(1-rho)^2 - 1 = {gamma} <= 0")]
    RhoTooLarge { rho: String, gamma: String },
}

/// Per-coordinate candidate lists `A_1, ..., A_n`; `ell` is the largest
/// list size, the input list size of a recovery query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListFamily {
    lists: Vec<BTreeSet<FieldElement>>,
    ell: usize,
}

impl ListFamily {
    pub fn new(field: &FieldSpec, lists: Vec<Vec<u64>>) -> Result<Self, RecoveryError> {
        let mut out = Vec::with_capacity(lists.len());
        for (i, list) in lists.into_iter().enumerate() {
            if list.is_empty() {
                return Err(RecoveryError::EmptyList(i));
            }
            let mut set = BTreeSet::new();
            for idx in list {
                let e = field
                    .element(idx)
                    .map_err(|_| RecoveryError::ElementOutOfField(idx))?;
                set.insert(e);
            }
            out.push(set);
        }
        Ok(Self::from_sets(out))
    }

    pub fn from_sets(lists: Vec<BTreeSet<FieldElement>>) -> Self {
        let ell = lists.iter().map(BTreeSet::len).max().unwrap_or(0);
        ListFamily { lists, ell }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// Maximum list size.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn lists(&self) -> &[BTreeSet<FieldElement>] {
        &self.lists
    }

    /// Restriction to the kept coordinates of a puncturing.
    pub fn restrict(&self, kept: &[usize]) -> ListFamily {
        Self::from_sets(kept.iter().map(|&i| self.lists[i].clone()).collect())
    }

    /// Stable digest of the family contents, for trial records.
    pub fn digest(&self) -> String {
        let mut h = Fnv1a::new();
        h.write_u64(self.lists.len() as u64);
        for list in &self.lists {
            h.write_u64(list.len() as u64);
            for e in list {
                h.write_u64(e.index());
            }
        }
        format!("{:016x}", h.finish())
    }
}

struct Fnv1a(u64);

impl Fnv1a {
    fn new() -> Self {
        Fnv1a(0xcbf29ce484222325)
    }
    fn write_u64(&mut self, v: u64) {
        for b in v.to_le_bytes() {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }
    fn finish(&self) -> u64 {
        self.0
    }
}

/// A list-recovery query: error fraction and optional output-size bound.
#[derive(Debug, Clone, Serialize)]
pub struct RecoveryQuery {
    #[serde(serialize_with = "serialize_rat")]
    pub rho: Rat,
    pub output_cap: Option<u64>,
}

impl RecoveryQuery {
    pub fn new(rho: Rat, output_cap: Option<u64>) -> Result<Self, RecoveryError> {
        if rho.is_negative() || rho >= rat_one() {
            return Err(RecoveryError::BadRho(rho.to_string()));
        }
        Ok(RecoveryQuery { rho, output_cap })
    }

    pub fn zero_error() -> Self {
        RecoveryQuery {
            rho: Rat::zero(),
            output_cap: None,
        }
    }
}

/// One recovered codeword; Reed-Solomon recoveries carry the coefficient
/// vector of the interpolated polynomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RecoveredCodeword {
    pub coeffs: Option<Vec<FieldElement>>,
    pub codeword: Codeword,
}

/// Interpolation/tuple counters for the solver.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct WorkCounters {
    pub subsets: u64,
    pub interpolations: u64,
}

/// The exact set of codewords within relative distance rho of the product
/// of the lists, in canonical order.
#[derive(Debug, Clone, Serialize)]
pub struct RecoveryResult {
    pub found: Vec<RecoveredCodeword>,
    pub count: usize,
    pub exceeded_cap: bool,
    pub work: WorkCounters,
}

impl RecoveryResult {
    fn finish(
        found: Vec<RecoveredCodeword>,
        query: &RecoveryQuery,
        work: WorkCounters,
    ) -> RecoveryResult {
        let count = found.len();
        let exceeded_cap = query.output_cap.is_some_and(|cap| count as u64 > cap);
        RecoveryResult {
            found,
            count,
            exceeded_cap,
            work,
        }
    }
}

fn check_family(code_len: usize, lists: &ListFamily) -> Result<(), RecoveryError> {
    if code_len != lists.len() {
        return Err(RecoveryError::LengthMismatch {
            left: code_len,
            right: lists.len(),
        });
    }
    Ok(())
}

/// Whether `distance <= rho * n`, compared exactly.
pub fn within_radius(distance: usize, rho: &Rat, n: usize) -> bool {
    rat_int(distance as u64) <= rho * rat_int(n as u64)
}

/// Filters an explicit code by exact distance to the lists.
pub fn recover_explicit(
    code: &ExplicitCode,
    lists: &ListFamily,
    query: &RecoveryQuery,
) -> Result<RecoveryResult, RecoveryError> {
    check_family(code.len(), lists)?;
    let n = code.len();
    let mut found: Vec<RecoveredCodeword> = code
        .codewords
        .iter()
        .filter(|c| {
            let d = distance_to_lists(c, lists).expect("lengths checked");
            within_radius(d, &query.rho, n)
        })
        .map(|c| RecoveredCodeword {
            coeffs: None,
            codeword: c.clone(),
        })
        .collect();
    found.sort();
    Ok(RecoveryResult::finish(found, query, WorkCounters::default()))
}

/// Exact list recovery of a Reed-Solomon code by interpolation enumeration.
///
/// A codeword within radius `rho * n` of the product set agrees with the
/// lists on at least `(1-rho) n >= d+1` coordinates, so some (d+1)-subset of
/// coordinates is fully in agreement and interpolating every tuple of list
/// values on every such subset finds every candidate. Two distinct
/// polynomials of degree at most d cannot both survive interpolation on d+1
/// points, which makes the enumeration exact. When `rho = 0` a single
/// cheapest subset suffices: a surviving codeword hits every list.
pub fn recover_rs(
    code: &ReedSolomonCode,
    lists: &ListFamily,
    query: &RecoveryQuery,
    work_cap: u64,
) -> Result<RecoveryResult, RecoveryError> {
    check_family(code.len(), lists)?;
    for (i, list) in lists.lists().iter().enumerate() {
        if list.is_empty() {
            return Err(RecoveryError::EmptyList(i));
        }
    }
    let n = code.len();
    let d = code.degree;
    // (1 - rho) * n >= d + 1, exactly.
    let available = (rat_one() - &query.rho) * rat_int(n as u64);
    if available < rat_int(d as u64 + 1) {
        return Err(RecoveryError::RadiusTooLarge {
            available: available.to_string(),
            needed: d + 1,
        });
    }

    let field = &code.field;
    let coords: Vec<usize> = (0..n).collect();
    let subsets: Vec<Vec<usize>> = if query.rho.is_zero() {
        // The d+1 coordinates with the smallest lists minimize tuple count.
        let mut order = coords.clone();
        order.sort_by_key(|&i| (lists.lists()[i].len(), i));
        let mut subset: Vec<usize> = order[..=d].to_vec();
        subset.sort_unstable();
        vec![subset]
    } else {
        coords.into_iter().combinations(d + 1).collect()
    };

    // Exact work estimate before doing anything.
    let mut estimated: u128 = 0;
    for subset in &subsets {
        let mut tuples: u128 = 1;
        for &i in subset {
            tuples = tuples.saturating_mul(lists.lists()[i].len() as u128);
        }
        estimated = estimated.saturating_add(tuples);
        if estimated > work_cap as u128 {
            return Err(RecoveryError::WorkCapExceeded {
                estimated,
                cap: work_cap,
            });
        }
    }

    let mut work = WorkCounters {
        subsets: subsets.len() as u64,
        interpolations: 0,
    };
    let mut seen: BTreeSet<Vec<FieldElement>> = BTreeSet::new();
    for subset in &subsets {
        let xs: Vec<FieldElement> = subset.iter().map(|&i| code.eval_points[i]).collect();
        let choices: Vec<Vec<FieldElement>> = subset
            .iter()
            .map(|&i| lists.lists()[i].iter().copied().collect())
            .collect();
        for ys in choices.into_iter().multi_cartesian_product() {
            work.interpolations += 1;
            let coeffs = lagrange_interpolate(field, &xs, &ys, d);
            if seen.contains(&coeffs) {
                continue;
            }
            let cw = code.encode(&coeffs).expect("coefficient width fixed");
            let dist = distance_to_lists(&cw, lists).expect("lengths checked");
            if within_radius(dist, &query.rho, n) {
                seen.insert(coeffs);
            }
        }
    }

    let found: Vec<RecoveredCodeword> = seen
        .into_iter()
        .map(|coeffs| {
            let codeword = code.encode(&coeffs).expect("coefficient width fixed");
            RecoveredCodeword {
                coeffs: Some(coeffs),
                codeword,
            }
        })
        .collect();
    Ok(RecoveryResult::finish(found, query, work))
}

/// Coefficients (low degree first, padded to d+1) of the unique polynomial
/// of degree <= d through the given points with distinct x's.
fn lagrange_interpolate(
    field: &FieldSpec,
    xs: &[FieldElement],
    ys: &[FieldElement],
    d: usize,
) -> Vec<FieldElement> {
    debug_assert_eq!(xs.len(), d + 1);
    let k = xs.len();
    let mut coeffs = vec![FieldElement::ZERO; k];
    // basis accumulation buffer: prod_{j != i} (X - x_j)
    let mut num = vec![FieldElement::ZERO; k];
    for i in 0..k {
        // numerator polynomial
        num.iter_mut().for_each(|c| *c = FieldElement::ZERO);
        num[0] = FieldElement::ONE;
        let mut deg = 0;
        for (j, &xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            // multiply by (X - x_j)
            deg += 1;
            let neg_xj = field.neg(xj);
            let mut carry = FieldElement::ZERO;
            for c in num.iter_mut().take(deg + 1) {
                let shifted = carry;
                carry = *c;
                *c = field.add(field.mul(*c, neg_xj), shifted);
            }
        }
        // denominator prod_{j != i} (x_i - x_j)
        let mut den = FieldElement::ONE;
        for (j, &xj) in xs.iter().enumerate() {
            if j != i {
                den = field.mul(den, field.sub(xs[i], xj));
            }
        }
        let scale = field.mul(ys[i], field.inv(den).expect("distinct points"));
        for (c, &b) in coeffs.iter_mut().zip(num.iter()) {
            *c = field.add(*c, field.mul(b, scale));
        }
    }
    coeffs
}

/// Outcome of the exhaustive zero-error recoverability search.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroErrorReport {
    pub recoverable: bool,
    /// On failure: a family of size-<=ell lists and the codewords it captures.
    pub witness: Option<(ListFamily, Vec<Codeword>)>,
    pub families_checked: u64,
    /// True when every size-ell family was examined (not caller-supplied).
    pub exhaustive: bool,
}

/// Decides `(ell, L)` zero-error list recoverability.
///
/// With `candidates = None` the search is exhaustive over all families with
/// every list of size exactly ell (captures are monotone in the lists, so
/// maximal lists suffice); this requires `C(q, ell)^n <= cap`. Otherwise only
/// the supplied families are tested. On failure the returned witness is a
/// family capturing the most codewords.
pub fn is_zero_error_recoverable(
    code: &ExplicitCode,
    ell: usize,
    l_bound: u64,
    candidates: Option<&[ListFamily]>,
    cap: u64,
) -> Result<ZeroErrorReport, RecoveryError> {
    let n = code.len();
    let captured = |family: &ListFamily| -> Vec<Codeword> {
        code.codewords
            .iter()
            .filter(|c| distance_to_lists(c, family).expect("validated") == 0)
            .cloned()
            .collect()
    };

    let mut best: Option<(ListFamily, Vec<Codeword>)> = None;
    let mut checked = 0u64;
    let exhaustive = candidates.is_none();
    match candidates {
        Some(families) => {
            for family in families {
                check_family(n, family)?;
                if family.ell() > ell {
                    continue;
                }
                checked += 1;
                let caught = captured(family);
                if best.as_ref().is_none_or(|(_, b)| caught.len() > b.len()) {
                    best = Some((family.clone(), caught));
                }
            }
        }
        None => {
            let q = code.field.order();
            let ell = ell.min(q as usize);
            let per_coord = binomial(q as u128, ell as u128);
            let total = checked_pow_u128(per_coord, n as u32);
            match total {
                Some(t) if t <= cap as u128 => {}
                _ => {
                    return Err(RecoveryError::SearchSpaceTooLarge {
                        families: total.unwrap_or(u128::MAX),
                        cap,
                    })
                }
            }
            let elements: Vec<FieldElement> = code.field.elements().collect();
            let subsets: Vec<BTreeSet<FieldElement>> = elements
                .into_iter()
                .combinations(ell)
                .map(|c| c.into_iter().collect())
                .collect();
            let mut odometer = vec![0usize; n];
            loop {
                let family = ListFamily::from_sets(
                    odometer.iter().map(|&i| subsets[i].clone()).collect(),
                );
                checked += 1;
                let caught = captured(&family);
                if best.as_ref().is_none_or(|(_, b)| caught.len() > b.len()) {
                    best = Some((family, caught));
                }
                // advance
                let mut pos = n;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    odometer[pos] += 1;
                    if odometer[pos] < subsets.len() {
                        break;
                    }
                    odometer[pos] = 0;
                }
                if odometer.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
    }

    let worst = best.filter(|(_, caught)| caught.len() as u64 > l_bound);
    Ok(ZeroErrorReport {
        recoverable: worst.is_none(),
        witness: worst,
        families_checked: checked,
        exhaustive,
    })
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn checked_pow_u128(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Johnson bound for list decoding: a code of distance at least
/// `n(1 - 1/q - eps^2)` is list decodable at relative radius
/// `1 - 1/q - eps` with list size O(1/eps).
#[derive(Debug, Clone, Serialize)]
pub struct JohnsonDecoding {
    #[serde(serialize_with = "serialize_rat")]
    pub radius: Rat,
    /// Nominal 1/eps; the theorem's constant is unspecified.
    #[serde(serialize_with = "serialize_rat")]
    pub nominal_list_bound: Rat,
    pub constant_unspecified: bool,
    /// The distance hypothesis n(1 - 1/q - eps^2) for the given n.
    #[serde(serialize_with = "serialize_rat")]
    pub required_distance: Rat,
}

pub fn johnson_decoding(q: u64, n: u64, epsilon: &Rat) -> Result<JohnsonDecoding, RecoveryError> {
    if !epsilon.is_positive() || *epsilon >= rat_one() {
        return Err(RecoveryError::BadEpsilon(format!(
            "0 < epsilon < 1, got {epsilon}"
        )));
    }
    let one_over_q = Rat::new(1.into(), q.into());
    let radius = rat_one() - &one_over_q - epsilon;
    if radius.is_negative() {
        return Err(RecoveryError::BadEpsilon(format!(
            "radius 1 - 1/q - epsilon = {radius} < 0"
        )));
    }
    let required_distance = rat_int(n) * (rat_one() - &one_over_q - epsilon * epsilon);
    Ok(JohnsonDecoding {
        radius,
        nominal_list_bound: epsilon.recip(),
        constant_unspecified: true,
        required_distance,
    })
}

/// Johnson bound for list recovery: a code of relative distance `1 - eps`
/// is (rho, ell, L)-list recoverable with `L = ell / ((1-rho)^2 - eps*ell)`.
/// Requires strictly `ell < (1-rho)^2 / eps`; the boundary makes the
/// denominator zero and the bound vacuous.
pub fn johnson_recovery(epsilon: &Rat, rho: &Rat, ell: u64) -> Result<Rat, RecoveryError> {
    if epsilon.is_negative() {
        return Err(RecoveryError::BadEpsilon(format!(
            "epsilon >= 0, got {epsilon}"
        )));
    }
    if rho.is_negative() || *rho >= rat_one() {
        return Err(RecoveryError::BadRho(rho.to_string()));
    }
    let one_minus_rho_sq = (rat_one() - rho) * (rat_one() - rho);
    let denom = &one_minus_rho_sq - epsilon * rat_int(ell);
    if !denom.is_positive() {
        return Err(RecoveryError::DenominatorNonpositive(denom.to_string()));
    }
    Ok(rat_int(ell) / denom)
}

/// The scalar calculus of the puncturing theorem.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremParams {
    #[serde(serialize_with = "serialize_rat")]
    pub alpha: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub rho: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub gamma: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub sigma: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub epsilon: Rat,
    /// floor(eps^-2 sigma^2 gamma), the input list size the simple theorem
    /// affords.
    pub ell: u64,
    pub m: u64,
}

/// gamma = (1+alpha)(1-rho)^2 - 1 and sigma = (1-rho)/(2-rho), exactly.
/// Fails with RhoTooLarge when gamma <= 0, i.e. rho >= 1 - (1+alpha)^{-1/2}.
pub fn gamma_sigma(alpha: &Rat, rho: &Rat) -> Result<(Rat, Rat), RecoveryError> {
    if !alpha.is_positive() || *alpha > rat_one() {
        return Err(RecoveryError::BadAlpha(alpha.to_string()));
    }
    if rho.is_negative() || *rho >= rat_one() {
        return Err(RecoveryError::BadRho(rho.to_string()));
    }
    let one_minus_rho = rat_one() - rho;
    let gamma = (rat_one() + alpha) * &one_minus_rho * &one_minus_rho - rat_one();
    if !gamma.is_positive() {
        return Err(RecoveryError::RhoTooLarge {
            rho: rho.to_string(),
            gamma: gamma.to_string(),
        });
    }
    let sigma = &one_minus_rho / (rat_int(2) - rho);
    Ok((gamma, sigma))
}

pub fn theorem_params(
    alpha: &Rat,
    rho: &Rat,
    epsilon: &Rat,
    m: u64,
) -> Result<TheoremParams, RecoveryError> {
    if !epsilon.is_positive() {
        return Err(RecoveryError::BadEpsilon(format!(
            "epsilon > 0, got {epsilon}"
        )));
    }
    let (gamma, sigma) = gamma_sigma(alpha, rho)?;
    let ell_rat = epsilon.recip() * epsilon.recip() * &sigma * &sigma * &gamma;
    let ell = ell_rat.floor().to_integer().to_u64().unwrap_or(u64::MAX);
    Ok(TheoremParams {
        alpha: alpha.clone(),
        rho: rho.clone(),
        gamma,
        sigma,
        epsilon: epsilon.clone(),
        ell,
        m,
    })
}

/// One hypothesis inequality: display values plus the exact verdict.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// Whether the verdict came from exact rational arithmetic.
    pub exact: bool,
}

/// Pass/fail of each hypothesis inequality plus the failure probability the
/// conclusion affords when all of them hold.
#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub checks: Vec<InequalityRecord>,
    pub all_satisfied: bool,
    /// exp(-sigma m / 64); present only when every inequality passed.
    pub failure_probability_bound: Option<f64>,
    #[serde(serialize_with = "serialize_rat")]
    pub gamma: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub sigma: Rat,
    /// Input list size implied by the epsilon calculus, when derived.
    pub implied_ell: Option<u64>,
    /// Nominal rate epsilon / ln q; the theorem's constant is unspecified.
    pub nominal_rate: Option<f64>,
}

/// Code size, possibly far beyond native integer range.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum CodeSize {
    Count(u128),
    /// base^exp, e.g. q^(d+1) for Reed-Solomon codes.
    Power { base: u64, exp: u64 },
}

impl CodeSize {
    /// Natural logarithm of the code size.
    pub fn ln(&self) -> f64 {
        match self {
            CodeSize::Count(c) => (*c as f64).ln(),
            CodeSize::Power { base, exp } => *exp as f64 * (*base as f64).ln(),
        }
    }
}

impl std::fmt::Display for CodeSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodeSize::Count(c) => write!(f, "{c}"),
            CodeSize::Power { base, exp } => write!(f, "{base}^{exp}"),
        }
    }
}

/// Evaluates the four hypothesis inequalities of the random-puncturing
/// theorem for a code of distance at least `n - n/q - d`:
///
///   d >= n/q,
///   4/gamma <= ell <= sigma gamma n / (800 d),
///   sigma m >= 1280 sqrt(ell/gamma) ln|C|,
///   m < n.
///
/// Failures are data, not errors. The first, second, and fourth are decided
/// with exact rationals; the third needs a square root and a logarithm and
/// is decided in floating point (natural log).
#[allow(clippy::too_many_arguments)]
pub fn check_main_theorem(
    q: u64,
    n: u64,
    d: u64,
    ell: u64,
    m: u64,
    alpha: &Rat,
    rho: &Rat,
    code_size: CodeSize,
) -> Result<HypothesisReport, RecoveryError> {
    let (gamma, sigma) = gamma_sigma(alpha, rho)?;
    let mut checks = Vec::new();

    let n_over_q = Rat::new(n.into(), q.into());
    checks.push(exact_check(
        "d >= n/q",
        rat_int(d),
        n_over_q,
        |l, r| l >= r,
    ));

    let four_over_gamma = rat_int(4) / &gamma;
    checks.push(exact_check(
        "4/gamma <= ell",
        four_over_gamma,
        rat_int(ell),
        |l, r| l <= r,
    ));

    let upper = &sigma * &gamma * rat_int(n) / (rat_int(800) * rat_int(d.max(1)));
    checks.push(exact_check(
        "ell <= sigma*gamma*n/(800 d)",
        rat_int(ell),
        upper,
        |l, r| l <= r,
    ));

    let lhs3 = sigma.to_f64().unwrap() * m as f64;
    let rhs3 = 1280.0 * (ell as f64 / gamma.to_f64().unwrap()).sqrt() * code_size.ln();
    checks.push(InequalityRecord {
        name: "sigma*m >= 1280*sqrt(ell/gamma)*ln|C|".into(),
        lhs: lhs3,
        rhs: rhs3,
        satisfied: lhs3 >= rhs3,
        exact: false,
    });

    checks.push(exact_check("m < n", rat_int(m), rat_int(n), |l, r| l < r));

    let all = checks.iter().all(|c| c.satisfied);
    let bound = all.then(|| (-(sigma.to_f64().unwrap()) * m as f64 / 64.0).exp());
    Ok(HypothesisReport {
        checks,
        all_satisfied: all,
        failure_probability_bound: bound,
        gamma,
        sigma,
        implied_ell: None,
        nominal_rate: None,
    })
}

/// Checks the epsilon window of the simplified theorem,
/// `q^{-1/2} < eps < min(c, gamma sigma / 2)`, and reports the implied input
/// list size `floor(eps^{-2} sigma^2 gamma)` and the nominal rate
/// `eps / ln q`. The absolute constant c is never specified by the
/// statement; it is an explicit input with default 1. The lower window
/// check is performed exactly as `q * eps^2 > 1`.
pub fn check_simple_theorem(
    q: u64,
    _n: u64,
    alpha: &Rat,
    rho: &Rat,
    epsilon: &Rat,
    c_constant: &Rat,
) -> Result<HypothesisReport, RecoveryError> {
    if !epsilon.is_positive() {
        return Err(RecoveryError::BadEpsilon(format!(
            "epsilon > 0, got {epsilon}"
        )));
    }
    let (gamma, sigma) = gamma_sigma(alpha, rho)?;
    let mut checks = Vec::new();

    // eps > q^{-1/2}  <=>  q eps^2 > 1 (strict), exactly.
    let q_eps_sq = rat_int(q) * epsilon * epsilon;
    checks.push(exact_check(
        "epsilon > q^(-1/2)  [as q*eps^2 > 1]",
        q_eps_sq,
        rat_one(),
        |l, r| l > r,
    ));

    checks.push(exact_check(
        "epsilon < c",
        epsilon.clone(),
        c_constant.clone(),
        |l, r| l < r,
    ));

    let half_gamma_sigma = &gamma * &sigma / rat_int(2);
    checks.push(exact_check(
        "epsilon < gamma*sigma/2",
        epsilon.clone(),
        half_gamma_sigma,
        |l, r| l < r,
    ));

    let ell_rat = epsilon.recip() * epsilon.recip() * &sigma * &sigma * &gamma;
    let implied_ell = ell_rat.floor().to_integer().to_u64().unwrap_or(u64::MAX);
    let nominal_rate = epsilon.to_f64().unwrap() / (q as f64).ln();

    let all = checks.iter().all(|c| c.satisfied);
    Ok(HypothesisReport {
        checks,
        all_satisfied: all,
        failure_probability_bound: None,
        gamma,
        sigma,
        implied_ell: Some(implied_ell),
        nominal_rate: Some(nominal_rate),
    })
}

fn exact_check(name: &str, lhs: Rat, rhs: Rat, cmp: impl Fn(&Rat, &Rat) -> bool) -> InequalityRecord {
    InequalityRecord {
        name: name.into(),
        satisfied: cmp(&lhs, &rhs),
        lhs: lhs.to_f64().unwrap_or(f64::NAN),
        rhs: rhs.to_f64().unwrap_or(f64::NAN),
        exact: true,
    }
}

/// Restriction of recovered codewords to a puncturing, for the
/// puncturing-monotonicity property: every codeword recovered for the full
/// code projects into the recovery set of the punctured code under the
/// restricted lists.
pub fn project_found(found: &[RecoveredCodeword], kept: &[usize]) -> BTreeSet<Codeword> {
    found
        .iter()
        .map(|rc| Codeword::new(kept.iter().map(|&i| rc.codeword.symbols[i]).collect()))
        .collect()
}

/// Convenience map from coefficient vectors to codewords for set comparison.
pub fn found_coeff_set(result: &RecoveryResult) -> BTreeSet<Vec<FieldElement>> {
    result
        .found
        .iter()
        .filter_map(|rc| rc.coeffs.clone())
        .collect()
}

/// Brute-force reference recovery: filter the full enumeration of the code.
/// This is the oracle the solver is validated against.
pub fn recover_rs_by_enumeration(
    code: &ReedSolomonCode,
    lists: &ListFamily,
    query: &RecoveryQuery,
    cap: u64,
) -> Result<BTreeMap<Vec<FieldElement>, Codeword>, RecoveryError> {
    check_family(code.len(), lists)?;
    let n = code.len();
    let mut out = BTreeMap::new();
    let iter = code
        .enumerate(cap)
        .map_err(|_| RecoveryError::WorkCapExceeded {
            estimated: code.size(),
            cap,
        })?;
    for (coeffs, cw) in iter {
        let dist = distance_to_lists(&cw, lists).expect("lengths checked");
        if within_radius(dist, &query.rho, n) {
            out.insert(coeffs, cw);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Codeword;
    use crate::gf::make_field;
    use crate::rat::rat;

    fn fe(field: &FieldSpec, i: u64) -> FieldElement {
        field.element(i).unwrap()
    }

    fn two_word_code() -> (FieldSpec, ExplicitCode) {
        let f = make_field(2, 1, None).unwrap();
        let code = ExplicitCode::new(
            f.clone(),
            vec![
                Codeword::new(vec![fe(&f, 0); 3]),
                Codeword::new(vec![fe(&f, 1); 3]),
            ],
        )
        .unwrap();
        (f, code)
    }

    #[test]
    fn recover_explicit_zero_error() {
        let (f, code) = two_word_code();
        let both = ListFamily::new(&f, vec![vec![0, 1]; 3]).unwrap();
        let r = recover_explicit(&code, &both, &RecoveryQuery::zero_error()).unwrap();
        assert_eq!(r.count, 2);

        let zeros = ListFamily::new(&f, vec![vec![0]; 3]).unwrap();
        let r = recover_explicit(&code, &zeros, &RecoveryQuery::zero_error()).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.found[0].codeword.symbols[0].index(), 0);
    }

    #[test]
    fn recover_explicit_radius_one_third() {
        // lists ({1},{0},{0}): (0,0,0) misses only coordinate 0 (distance 1),
        // (1,1,1) misses coordinates 1 and 2 (distance 2); radius is
        // rho*n = 1, so only (0,0,0) survives. Confirmed by brute force over
        // the product set.
        let (f, code) = two_word_code();
        let lists = ListFamily::new(&f, vec![vec![1], vec![0], vec![0]]).unwrap();
        let q = RecoveryQuery::new(rat(1, 3), None).unwrap();
        let r = recover_explicit(&code, &lists, &q).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.found[0].codeword.symbols[0].index(), 0);

        // Brute-force check of distance_to_lists == min over the product.
        for c in &code.codewords {
            let direct = distance_to_lists(c, &lists).unwrap();
            let mut best = usize::MAX;
            for y0 in lists.lists()[0].iter() {
                for y1 in lists.lists()[1].iter() {
                    for y2 in lists.lists()[2].iter() {
                        let y = Codeword::new(vec![*y0, *y1, *y2]);
                        best = best.min(crate::code::hamming_distance(c, &y).unwrap());
                    }
                }
            }
            assert_eq!(direct, best);
        }
    }

    #[test]
    fn recover_rs_constants_only() {
        let f = make_field(5, 1, None).unwrap();
        let code =
            ReedSolomonCode::new(f.clone(), 1, vec![fe(&f, 0), fe(&f, 1), fe(&f, 2)]).unwrap();
        let lists = ListFamily::new(&f, vec![vec![0, 1]; 3]).unwrap();
        let r = recover_rs(&code, &lists, &RecoveryQuery::zero_error(), 1_000_000).unwrap();
        // Brute force over all 25 degree-<=1 polynomials: only the constants
        // 0 and 1 land in {0,1} at all three points.
        assert_eq!(r.count, 2);
        let coeffs: Vec<Vec<u64>> = r
            .found
            .iter()
            .map(|rc| rc.coeffs.as_ref().unwrap().iter().map(|c| c.index()).collect())
            .collect();
        assert_eq!(coeffs, vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn recover_rs_full_lists_gives_whole_code() {
        let f = make_field(3, 1, None).unwrap();
        let code = ReedSolomonCode::new(f.clone(), 1, vec![fe(&f, 0), fe(&f, 1)]).unwrap();
        let lists = ListFamily::new(&f, vec![vec![0, 1, 2]; 2]).unwrap();
        let r = recover_rs(&code, &lists, &RecoveryQuery::zero_error(), 1_000_000).unwrap();
        assert_eq!(r.count, 9);
    }

    #[test]
    fn recover_rs_matches_enumeration_oracle() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(424242);
        for trial in 0..200 {
            let qs = [5u64, 7, 8, 9, 11, 13];
            let q = qs[trial % qs.len()];
            let (p, e) = match q {
                8 => (2, 3),
                9 => (3, 2),
                _ => (q, 1),
            };
            let f = make_field(p, e, None).unwrap();
            let d = rng.random_range(0..=2usize);
            let n = rng.random_range(d + 1..=q as usize);
            let mut points: Vec<FieldElement> = f.elements().collect();
            for i in 0..n {
                let j = rng.random_range(i..points.len());
                points.swap(i, j);
            }
            let code = ReedSolomonCode::new(f.clone(), d, points[..n].to_vec()).unwrap();
            let lists = ListFamily::new(
                &f,
                (0..n)
                    .map(|_| {
                        let size = rng.random_range(1..=4usize.min(q as usize));
                        let mut elems: Vec<u64> = (0..q).collect();
                        for i in 0..size {
                            let j = rng.random_range(i..elems.len());
                            elems.swap(i, j);
                        }
                        elems[..size].to_vec()
                    })
                    .collect(),
            )
            .unwrap();
            let rho = match trial % 3 {
                0 => rat(0, 1),
                1 => rat(1, n as i64),
                _ => rat(2, n as i64),
            };
            if (rat_one() - &rho) * rat_int(n as u64) < rat_int(d as u64 + 1) {
                continue;
            }
            let query = RecoveryQuery::new(rho, None).unwrap();
            let fast = recover_rs(&code, &lists, &query, 10_000_000).unwrap();
            let oracle = recover_rs_by_enumeration(&code, &lists, &query, 1_000_000).unwrap();
            let fast_set = found_coeff_set(&fast);
            let oracle_set: BTreeSet<Vec<FieldElement>> = oracle.into_keys().collect();
            assert_eq!(fast_set, oracle_set, "q={q} d={d} n={n}");
        }
    }

    #[test]
    fn recover_rs_radius_too_large() {
        let f = make_field(5, 1, None).unwrap();
        let code =
            ReedSolomonCode::new(f.clone(), 1, vec![fe(&f, 0), fe(&f, 1), fe(&f, 2)]).unwrap();
        let lists = ListFamily::new(&f, vec![vec![0]; 3]).unwrap();
        // (1 - 2/3) * 3 = 1 < d + 1 = 2.
        let q = RecoveryQuery::new(rat(2, 3), None).unwrap();
        assert!(matches!(
            recover_rs(&code, &lists, &q, 1_000_000),
            Err(RecoveryError::RadiusTooLarge { .. })
        ));
    }

    #[test]
    fn work_cap_refuses_silent_truncation() {
        let f = make_field(13, 1, None).unwrap();
        let pts: Vec<FieldElement> = f.elements().collect();
        let code = ReedSolomonCode::new(f.clone(), 2, pts).unwrap();
        let lists = ListFamily::new(&f, vec![(0..4).collect::<Vec<u64>>(); 13]).unwrap();
        let q = RecoveryQuery::new(rat(1, 13), None).unwrap();
        assert!(matches!(
            recover_rs(&code, &lists, &q, 10),
            Err(RecoveryError::WorkCapExceeded { .. })
        ));
    }

    #[test]
    fn zero_error_trivial_and_witness() {
        let (_f, code) = two_word_code();
        // ell = q, L = |C|: cannot exceed the code size.
        let report = is_zero_error_recoverable(&code, 2, 2, None, 1_000_000).unwrap();
        assert!(report.recoverable);
        assert!(report.exhaustive);

        // Singleton lists over the three-codeword repetition-ish code.
        let f3 = make_field(3, 1, None).unwrap();
        let code3 = ExplicitCode::new(
            f3.clone(),
            vec![
                Codeword::new(vec![fe(&f3, 0), fe(&f3, 0)]),
                Codeword::new(vec![fe(&f3, 0), fe(&f3, 1)]),
                Codeword::new(vec![fe(&f3, 0), fe(&f3, 2)]),
            ],
        )
        .unwrap();
        let report = is_zero_error_recoverable(&code3, 1, 2, None, 1_000_000).unwrap();
        assert!(report.recoverable);
        assert_eq!(report.families_checked, 9);

        // But L = 0 fails with a singleton witness capturing 1 codeword.
        let report = is_zero_error_recoverable(&code3, 1, 0, None, 1_000_000).unwrap();
        assert!(!report.recoverable);
        let (family, caught) = report.witness.unwrap();
        assert_eq!(caught.len(), 1);
        assert_eq!(family.ell(), 1);

        assert!(matches!(
            is_zero_error_recoverable(&code3, 1, 0, None, 2),
            Err(RecoveryError::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn johnson_decoding_examples() {
        let j = johnson_decoding(100, 1000, &rat(1, 10)).unwrap();
        assert_eq!(j.radius, rat(89, 100));
        assert_eq!(j.nominal_list_bound, rat(10, 1));
        assert!(j.constant_unspecified);

        // epsilon -> 1 would give a negative radius for small q.
        assert!(matches!(
            johnson_decoding(2, 10, &rat(99, 100)),
            Err(RecoveryError::BadEpsilon(_))
        ));

        // Monotone: larger epsilon, smaller radius and bound.
        let a = johnson_decoding(100, 10, &rat(1, 10)).unwrap();
        let b = johnson_decoding(100, 10, &rat(2, 10)).unwrap();
        assert!(b.radius < a.radius);
        assert!(b.nominal_list_bound < a.nominal_list_bound);
    }

    #[test]
    fn johnson_recovery_examples() {
        assert_eq!(johnson_recovery(&rat(1, 10), &rat(0, 1), 5).unwrap(), rat(10, 1));
        // Single list, epsilon -> 0: L -> 1.
        assert_eq!(johnson_recovery(&rat(0, 1), &rat(0, 1), 1).unwrap(), rat(1, 1));
        // Boundary ell = eps^-1 (1-rho)^2 is rejected.
        assert!(matches!(
            johnson_recovery(&rat(1, 10), &rat(0, 1), 10),
            Err(RecoveryError::DenominatorNonpositive(_))
        ));
    }

    #[test]
    fn theorem_params_examples() {
        let p = theorem_params(&rat(1, 1), &rat(0, 1), &rat(1, 10), 100).unwrap();
        assert_eq!(p.gamma, rat(1, 1));
        assert_eq!(p.sigma, rat(1, 2));
        assert_eq!(p.ell, 25); // 100 * 1/4 * 1

        let p = theorem_params(&rat(1, 2), &rat(0, 1), &rat(1, 10), 100).unwrap();
        assert_eq!(p.gamma, rat(1, 2));
        assert_eq!(p.sigma, rat(1, 2));

        // alpha = 1, rho = 0.3 > 1 - 2^{-1/2} ~ 0.293: gamma = -1/50.
        let err = theorem_params(&rat(1, 1), &rat(3, 10), &rat(1, 10), 100).unwrap_err();
        match err {
            RecoveryError::RhoTooLarge { gamma, .. } => assert_eq!(gamma, "-1/50"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gamma_positive_iff_rho_below_threshold() {
        // gamma > 0 <=> rho < 1 - (1+alpha)^{-1/2}, over a rational grid.
        for a_num in 1..=10i64 {
            let alpha = rat(a_num, 10);
            for r_num in 0..10i64 {
                let rho = rat(r_num, 10);
                let thresh = 1.0 - 1.0 / (1.0 + a_num as f64 / 10.0).sqrt();
                let rho_f = r_num as f64 / 10.0;
                // Grid points sit well away from the boundary.
                if (rho_f - thresh).abs() < 1e-9 {
                    continue;
                }
                let got = gamma_sigma(&alpha, &rho).is_ok();
                assert_eq!(got, rho_f < thresh, "alpha={alpha} rho={rho}");
            }
        }
    }

    #[test]
    fn check_main_theorem_examples() {
        // m = n fails the fourth inequality.
        let r = check_main_theorem(
            100,
            50,
            1,
            4,
            50,
            &rat(1, 1),
            &rat(0, 1),
            CodeSize::Power { base: 100, exp: 2 },
        )
        .unwrap();
        let m_check = r.checks.iter().find(|c| c.name == "m < n").unwrap();
        assert!(!m_check.satisfied);

        // d = n/q exactly passes the first inequality at equality.
        let r = check_main_theorem(
            100,
            100,
            1,
            4,
            10,
            &rat(1, 1),
            &rat(0, 1),
            CodeSize::Power { base: 100, exp: 2 },
        )
        .unwrap();
        assert!(r.checks[0].satisfied);

        // ell >= 4/gamma passes at the boundary ell = 4, gamma = 1.
        let r = check_main_theorem(
            1_000_000,
            1_000_000,
            1000,
            4,
            1000,
            &rat(1, 1),
            &rat(0, 1),
            CodeSize::Power {
                base: 1_000_000,
                exp: 1001,
            },
        )
        .unwrap();
        let lower = r.checks.iter().find(|c| c.name == "4/gamma <= ell").unwrap();
        assert!(lower.satisfied);
    }

    #[test]
    fn check_simple_theorem_examples() {
        // alpha=1, rho=0, q=10^4, eps=0.02: window (0.01, 0.25), ell = 625.
        let r = check_simple_theorem(
            10_000,
            10_000,
            &rat(1, 1),
            &rat(0, 1),
            &rat(2, 100),
            &rat(1, 1),
        )
        .unwrap();
        assert!(r.all_satisfied);
        assert_eq!(r.implied_ell, Some(625));

        // eps = q^{-1/2} exactly fails the strict lower window.
        let r = check_simple_theorem(
            10_000,
            10_000,
            &rat(1, 1),
            &rat(0, 1),
            &rat(1, 100),
            &rat(1, 1),
        )
        .unwrap();
        assert!(!r.checks[0].satisfied);

        // rho beyond the threshold propagates RhoTooLarge.
        assert!(matches!(
            check_simple_theorem(100, 100, &rat(1, 1), &rat(1, 2), &rat(1, 5), &rat(1, 1)),
            Err(RecoveryError::RhoTooLarge { .. })
        ));
    }

    #[test]
    fn monotone_in_rho_and_lists() {
        let f = make_field(7, 1, None).unwrap();
        let pts: Vec<FieldElement> = f.elements().take(5).collect();
        let code = ReedSolomonCode::new(f.clone(), 1, pts).unwrap();
        let lists = ListFamily::new(&f, vec![vec![0, 1], vec![2], vec![3, 4], vec![0], vec![1, 5]])
            .unwrap();
        let q0 = RecoveryQuery::zero_error();
        let q1 = RecoveryQuery::new(rat(1, 5), None).unwrap();
        let q2 = RecoveryQuery::new(rat(2, 5), None).unwrap();
        let r0 = found_coeff_set(&recover_rs(&code, &lists, &q0, 1_000_000).unwrap());
        let r1 = found_coeff_set(&recover_rs(&code, &lists, &q1, 1_000_000).unwrap());
        let r2 = found_coeff_set(&recover_rs(&code, &lists, &q2, 1_000_000).unwrap());
        assert!(r0.is_subset(&r1));
        assert!(r1.is_subset(&r2));

        // Larger lists recover a superset.
        let bigger = ListFamily::new(
            &f,
            vec![vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![0, 6], vec![1, 5]],
        )
        .unwrap();
        let b1 = found_coeff_set(&recover_rs(&code, &bigger, &q1, 1_000_000).unwrap());
        assert!(r1.is_subset(&b1));
    }
}
