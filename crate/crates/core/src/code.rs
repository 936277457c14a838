//! Codes as first-class values: Reed-Solomon codes given by (field, degree,
//! evaluation set), explicit codes given by codeword lists, plus puncturing,
//! distances, and rate.
//!
//! Coordinates are 0-indexed internally; CLI-facing I/O renders them
//! 1-indexed.

use crate::gf::{FieldElement, FieldSpec};
use crate::listrecovery::ListFamily;
use crate::rat::Rat;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Default cap on full-code enumerations (`q^(d+1)` codewords).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("expected {expected} coefficients, got {got}")]
    WrongCoefficientCount { expected: usize, got: usize },
    #[error("enumeration of {size} codewords exceeds cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("coordinate {0} has an empty candidate list")]
    EmptyList(usize),
    #[error("coordinate index {index} out of range for block length {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("puncture size {m} invalid for block length {n}")]
    BadSize { m: usize, n: usize },
    #[error("evaluation points must be pairwise distinct")]
    DuplicateEvalPoints,
    #[error("degree {degree} out of range for block length {n}")]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error("symbol index {0} is not an element of the field")]
    SymbolOutOfField(u64),
    #[error("explicit code must be nonempty with pairwise distinct codewords of one length")]
    MalformedExplicitCode,
}

/// A length-n vector of field symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Codeword {
    pub symbols: Vec<FieldElement>,
}

impl Codeword {
    pub fn new(symbols: Vec<FieldElement>) -> Self {
        Codeword { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Number of coordinates where the two words differ.
pub fn hamming_distance(c1: &Codeword, c2: &Codeword) -> Result<usize, CodeError> {
    if c1.len() != c2.len() {
        return Err(CodeError::LengthMismatch {
            left: c1.len(),
            right: c2.len(),
        });
    }
    Ok(c1
        .symbols
        .iter()
        .zip(&c2.symbols)
        .filter(|(a, b)| a != b)
        .count())
}

/// Distance from `c` to the combinatorial rectangle `A_1 x ... x A_n`:
/// the number of coordinates whose symbol is outside its list. Equals the
/// minimum Hamming distance to any member of the product set.
pub fn distance_to_lists(c: &Codeword, lists: &ListFamily) -> Result<usize, CodeError> {
    if c.len() != lists.len() {
        return Err(CodeError::LengthMismatch {
            left: c.len(),
            right: lists.len(),
        });
    }
    for (i, list) in lists.lists().iter().enumerate() {
        if list.is_empty() {
            return Err(CodeError::EmptyList(i));
        }
    }
    Ok(c.symbols
        .iter()
        .zip(lists.lists())
        .filter(|(s, list)| !list.contains(s))
        .count())
}

/// The degree-d Reed-Solomon code on a set of distinct evaluation points:
/// evaluations of all univariate polynomials of degree at most d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReedSolomonCode {
    pub field: FieldSpec,
    pub degree: usize,
    pub eval_points: Vec<FieldElement>,
}

impl ReedSolomonCode {
    pub fn new(
        field: FieldSpec,
        degree: usize,
        eval_points: Vec<FieldElement>,
    ) -> Result<Self, CodeError> {
        let n = eval_points.len();
        if degree >= n || n > field.order() as usize {
            return Err(CodeError::DegreeOutOfRange { degree, n });
        }
        for p in &eval_points {
            if !field.contains(*p) {
                return Err(CodeError::SymbolOutOfField(p.index()));
            }
        }
        let mut sorted: Vec<u64> = eval_points.iter().map(|p| p.index()).collect();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CodeError::DuplicateEvalPoints);
        }
        Ok(ReedSolomonCode {
            field,
            degree,
            eval_points,
        })
    }

    /// Block length n.
    pub fn len(&self) -> usize {
        self.eval_points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of codewords, `q^(d+1)`.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128).pow(self.degree as u32 + 1)
    }

    /// Evaluates the polynomial with the given coefficients (low degree
    /// first, exactly d+1 of them) at every evaluation point via Horner.
    pub fn encode(&self, coeffs: &[FieldElement]) -> Result<Codeword, CodeError> {
        if coeffs.len() != self.degree + 1 {
            return Err(CodeError::WrongCoefficientCount {
                expected: self.degree + 1,
                got: coeffs.len(),
            });
        }
        let symbols = self
            .eval_points
            .iter()
            .map(|&x| horner(&self.field, coeffs, x))
            .collect();
        Ok(Codeword::new(symbols))
    }

    /// Streams all `q^(d+1)` (coefficients, codeword) pairs in lexicographic
    /// coefficient order (`c_0` compared first). Codewords are pairwise
    /// distinct because d < n.
    pub fn enumerate(
        &self,
        cap: u64,
    ) -> Result<impl Iterator<Item = (Vec<FieldElement>, Codeword)> + '_, CodeError> {
        let size = self.size();
        if size > cap as u128 {
            return Err(CodeError::EnumerationTooLarge { size, cap });
        }
        let width = self.degree + 1;
        let q = self.field.order();
        let mut coeffs = vec![FieldElement::ZERO; width];
        let mut done = false;
        Ok(std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = (coeffs.clone(), self.encode(&coeffs).expect("width fixed"));
            // Odometer: last coefficient moves fastest, so tuples ascend
            // lexicographically with c_0 most significant.
            let mut j = width;
            loop {
                if j == 0 {
                    done = true;
                    break;
                }
                j -= 1;
                let next = coeffs[j].index() + 1;
                if next < q {
                    coeffs[j] = self.field.element(next).expect("in range");
                    break;
                }
                coeffs[j] = FieldElement::ZERO;
            }
            Some(out)
        }))
    }

    /// Exact minimum distance, n - d: two distinct degree-<=d polynomials
    /// agree on at most d of the n distinct points, and a difference of
    /// degree exactly d realizes it whenever d roots lie in the
    /// evaluation set (tightness is exercised in tests by exhaustion).
    pub fn min_distance(&self) -> usize {
        self.len() - self.degree
    }

    /// Restriction to the kept coordinates; still a Reed-Solomon code.
    pub fn puncture(&self, map: &PunctureMap) -> Result<ReedSolomonCode, CodeError> {
        map.validate(self.len())?;
        let eval_points: Vec<FieldElement> =
            map.kept.iter().map(|&i| self.eval_points[i]).collect();
        ReedSolomonCode::new(self.field.clone(), self.degree, eval_points)
    }

    /// Rate (d+1)/n.
    pub fn rate(&self) -> Rate {
        Rate::Exact(Rat::new(
            (self.degree as u64 + 1).into(),
            (self.len() as u64).into(),
        ))
    }

    /// Materializes the codeword list.
    pub fn to_explicit(&self, cap: u64) -> Result<ExplicitCode, CodeError> {
        let codewords: Vec<Codeword> = self.enumerate(cap)?.map(|(_, c)| c).collect();
        Ok(ExplicitCode {
            field: self.field.clone(),
            codewords,
        })
    }
}

fn horner(field: &FieldSpec, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    for &c in coeffs.iter().rev() {
        acc = field.add(field.mul(acc, x), c);
    }
    acc
}

/// An arbitrary code given by its (pairwise distinct) codeword list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplicitCode {
    pub field: FieldSpec,
    pub codewords: Vec<Codeword>,
}

impl ExplicitCode {
    pub fn new(field: FieldSpec, codewords: Vec<Codeword>) -> Result<Self, CodeError> {
        if codewords.is_empty() {
            return Err(CodeError::MalformedExplicitCode);
        }
        let n = codewords[0].len();
        for c in &codewords {
            if c.len() != n {
                return Err(CodeError::MalformedExplicitCode);
            }
            for s in &c.symbols {
                if !field.contains(*s) {
                    return Err(CodeError::SymbolOutOfField(s.index()));
                }
            }
        }
        let mut sorted = codewords.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CodeError::MalformedExplicitCode);
        }
        Ok(ExplicitCode { field, codewords })
    }

    pub fn len(&self) -> usize {
        self.codewords[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    /// Exact minimum pairwise distance. Quadratic; guarded by `cap` on the
    /// number of codeword pairs examined.
    pub fn min_distance(&self, cap: u64) -> Result<usize, CodeError> {
        let k = self.codewords.len() as u128;
        let pairs = k * (k - 1) / 2;
        if pairs > cap as u128 {
            return Err(CodeError::EnumerationTooLarge { size: pairs, cap });
        }
        let mut best = self.len();
        for (i, c1) in self.codewords.iter().enumerate() {
            for c2 in &self.codewords[i + 1..] {
                let d = hamming_distance(c1, c2).expect("equal lengths");
                best = best.min(d);
            }
        }
        Ok(best)
    }

    /// Projects every codeword onto the kept coordinates, keeping
    /// multiplicity. Colliding projections are flagged, not merged: counts
    /// of captured codewords always refer to original codewords.
    pub fn puncture(&self, map: &PunctureMap) -> Result<ExplicitProjection, CodeError> {
        map.validate(self.len())?;
        let rows: Vec<Codeword> = self
            .codewords
            .iter()
            .map(|c| Codeword::new(map.kept.iter().map(|&i| c.symbols[i]).collect()))
            .collect();
        let mut sorted = rows.clone();
        sorted.sort();
        let collided = sorted.windows(2).any(|w| w[0] == w[1]);
        Ok(ExplicitProjection {
            field: self.field.clone(),
            rows,
            collided,
        })
    }

    /// Rate log_q |C| / n; exact when |C| is an integer power of q.
    pub fn rate(&self) -> Rate {
        let q = self.field.order() as u128;
        let size = self.codewords.len() as u128;
        let mut pow = 1u128;
        let mut k = 0u64;
        loop {
            if pow == size {
                return Rate::Exact(Rat::new(k.into(), (self.len() as u64).into()));
            }
            if pow > size {
                break;
            }
            match pow.checked_mul(q) {
                Some(next) => {
                    pow = next;
                    k += 1;
                }
                None => break,
            }
        }
        let value = (size as f64).ln() / (self.len() as f64 * (q as f64).ln());
        Rate::Approx(value)
    }
}

/// Result of puncturing an explicit code: same-kind rows with multiplicity
/// preserved, plus a collision flag.
#[derive(Debug, Clone, Serialize)]
pub struct ExplicitProjection {
    pub field: FieldSpec,
    pub rows: Vec<Codeword>,
    pub collided: bool,
}

impl ExplicitProjection {
    /// Deduplicates the rows into a valid explicit code.
    pub fn dedup_code(&self) -> ExplicitCode {
        let mut rows = self.rows.clone();
        rows.sort();
        rows.dedup();
        ExplicitCode {
            field: self.field.clone(),
            codewords: rows,
        }
    }
}

/// A puncturing: the strictly increasing list of kept coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PunctureMap {
    pub kept: Vec<usize>,
}

impl PunctureMap {
    pub fn new(kept: Vec<usize>) -> Result<Self, CodeError> {
        if kept.is_empty() {
            return Err(CodeError::BadSize { m: 0, n: 0 });
        }
        if kept.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CodeError::DuplicateEvalPoints);
        }
        Ok(PunctureMap { kept })
    }

    pub fn identity(n: usize) -> Self {
        PunctureMap {
            kept: (0..n).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.kept.len()
    }

    fn validate(&self, n: usize) -> Result<(), CodeError> {
        match self.kept.last() {
            Some(&last) if last >= n => Err(CodeError::IndexOutOfRange { index: last, n }),
            _ => Ok(()),
        }
    }

    /// Uniformly random m-subset of [0, n) by partial Fisher-Yates,
    /// deterministic for a fixed generator state.
    pub fn random(n: usize, m: usize, rng: &mut impl Rng) -> Result<Self, CodeError> {
        if m == 0 || m > n {
            return Err(CodeError::BadSize { m, n });
        }
        let mut arr: Vec<usize> = (0..n).collect();
        for i in 0..m {
            let j = rng.random_range(i..n);
            arr.swap(i, j);
        }
        let mut kept: Vec<usize> = arr[..m].to_vec();
        kept.sort_unstable();
        Ok(PunctureMap { kept })
    }

    /// Composition: `second` indexes into this map's kept positions, and
    /// the result punctures the original code directly.
    pub fn then(&self, second: &PunctureMap) -> Result<PunctureMap, CodeError> {
        second.validate(self.kept.len())?;
        Ok(PunctureMap {
            kept: second.kept.iter().map(|&i| self.kept[i]).collect(),
        })
    }
}

/// Rate log|C| / (n log q): exact rational when |C| is a power of q,
/// otherwise a float approximation.
#[derive(Debug, Clone, PartialEq)]
pub enum Rate {
    Exact(Rat),
    Approx(f64),
}

impl Rate {
    pub fn value(&self) -> f64 {
        match self {
            Rate::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Rate::Approx(v) => *v,
        }
    }
}

impl std::fmt::Display for Rate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rate::Exact(r) => write!(f, "{r}"),
            Rate::Approx(v) => write!(f, "~{v}"),
        }
    }
}

/// Either kind of code, for CLI-level plumbing.
#[derive(Debug, Clone, Serialize)]
pub enum Code {
    Rs(ReedSolomonCode),
    Explicit(ExplicitCode),
}

impl Code {
    pub fn field(&self) -> &FieldSpec {
        match self {
            Code::Rs(c) => &c.field,
            Code::Explicit(c) => &c.field,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Code::Rs(c) => c.len(),
            Code::Explicit(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn size(&self) -> u128 {
        match self {
            Code::Rs(c) => c.size(),
            Code::Explicit(c) => c.size() as u128,
        }
    }

    pub fn rate(&self) -> Rate {
        match self {
            Code::Rs(c) => c.rate(),
            Code::Explicit(c) => c.rate(),
        }
    }

    pub fn min_distance(&self, cap: u64) -> Result<usize, CodeError> {
        match self {
            Code::Rs(c) => Ok(c.min_distance()),
            Code::Explicit(c) => c.min_distance(cap),
        }
    }

    /// Punctures to the kept coordinates. Explicit projections are
    /// deduplicated into a code; the flag reports whether any collision
    /// was merged away.
    pub fn puncture(&self, map: &PunctureMap) -> Result<(Code, bool), CodeError> {
        match self {
            Code::Rs(c) => Ok((Code::Rs(c.puncture(map)?), false)),
            Code::Explicit(c) => {
                let proj = c.puncture(map)?;
                let collided = proj.collided;
                Ok((Code::Explicit(proj.dedup_code()), collided))
            }
        }
    }

    pub fn to_explicit(&self, cap: u64) -> Result<ExplicitCode, CodeError> {
        match self {
            Code::Rs(c) => c.to_explicit(cap),
            Code::Explicit(c) => Ok(c.clone()),
        }
    }
}

/// Draws a uniformly random puncturing of size m (seeded, reproducible)
/// and applies it.
pub fn random_puncture(
    code: &Code,
    m: usize,
    seed: u64,
) -> Result<(PunctureMap, Code, bool), CodeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let map = PunctureMap::random(code.len(), m, &mut rng)?;
    let (punctured, collided) = code.puncture(&map)?;
    Ok((map, punctured, collided))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::listrecovery::ListFamily;

    fn f5() -> FieldSpec {
        make_field(5, 1, None).unwrap()
    }

    fn fe(field: &FieldSpec, i: u64) -> FieldElement {
        field.element(i).unwrap()
    }

    fn rs_f5_d1() -> ReedSolomonCode {
        let f = f5();
        let pts = vec![fe(&f, 0), fe(&f, 1), fe(&f, 2)];
        ReedSolomonCode::new(f, 1, pts).unwrap()
    }

    #[test]
    fn encode_evaluates_polynomial() {
        // 1 + 2x at 0, 1, 2 over F_5: 1, 3, 5 = 0.
        let code = rs_f5_d1();
        let f = code.field.clone();
        let cw = code.encode(&[fe(&f, 1), fe(&f, 2)]).unwrap();
        let got: Vec<u64> = cw.symbols.iter().map(|s| s.index()).collect();
        assert_eq!(got, vec![1, 3, 0]);
    }

    #[test]
    fn encode_zero_and_identity() {
        let code = rs_f5_d1();
        let f = code.field.clone();
        let zero = code.encode(&[fe(&f, 0), fe(&f, 0)]).unwrap();
        assert!(zero.symbols.iter().all(|s| *s == FieldElement::ZERO));

        let f4 = make_field(2, 2, None).unwrap();
        let pts: Vec<FieldElement> = f4.elements().collect();
        let id = ReedSolomonCode::new(f4.clone(), 1, pts.clone()).unwrap();
        let cw = id.encode(&[fe(&f4, 0), fe(&f4, 1)]).unwrap();
        assert_eq!(cw.symbols, pts);
    }

    #[test]
    fn wrong_coefficient_count() {
        let code = rs_f5_d1();
        let f = code.field.clone();
        assert!(matches!(
            code.encode(&[fe(&f, 1)]),
            Err(CodeError::WrongCoefficientCount { .. })
        ));
    }

    #[test]
    fn enumerate_counts_and_distinctness() {
        let code = rs_f5_d1();
        let all: Vec<_> = code.enumerate(1_000_000).unwrap().collect();
        assert_eq!(all.len(), 25);
        let mut words: Vec<Codeword> = all.into_iter().map(|(_, c)| c).collect();
        words.sort();
        words.dedup();
        assert_eq!(words.len(), 25);

        let f2 = make_field(2, 1, None).unwrap();
        // d=0, n hastily bounded by q: use both points of F_2, constants only.
        let consts =
            ReedSolomonCode::new(f2.clone(), 0, vec![fe(&f2, 0), fe(&f2, 1)]).unwrap();
        let words: Vec<Vec<u64>> = consts
            .enumerate(100)
            .unwrap()
            .map(|(_, c)| c.symbols.iter().map(|s| s.index()).collect())
            .collect();
        assert_eq!(words, vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn enumeration_cap_enforced() {
        let code = rs_f5_d1();
        assert!(matches!(
            code.enumerate(10),
            Err(CodeError::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn hamming_distance_basics() {
        let code = rs_f5_d1();
        let f = code.field.clone();
        let c1 = code.encode(&[fe(&f, 1), fe(&f, 2)]).unwrap();
        assert_eq!(hamming_distance(&c1, &c1).unwrap(), 0);
        let c2 = Codeword::new(vec![fe(&f, 1), fe(&f, 0), fe(&f, 0)]);
        assert_eq!(hamming_distance(&c1, &c2).unwrap(), 1);
        let short = Codeword::new(vec![fe(&f, 1)]);
        assert!(hamming_distance(&c1, &short).is_err());
    }

    #[test]
    fn distance_to_lists_counts_misses() {
        let code = rs_f5_d1();
        let f = code.field.clone();
        let c = code.encode(&[fe(&f, 1), fe(&f, 2)]).unwrap(); // (1, 3, 0)
        let lists = ListFamily::new(&f, vec![vec![1], vec![1], vec![1]]).unwrap();
        assert_eq!(distance_to_lists(&c, &lists).unwrap(), 2);
        let full = ListFamily::new(&f, vec![vec![1], vec![3], vec![0]]).unwrap();
        assert_eq!(distance_to_lists(&c, &full).unwrap(), 0);
    }

    #[test]
    fn rs_min_distance_is_n_minus_d() {
        let code = rs_f5_d1();
        assert_eq!(code.min_distance(), 2);
        // Exhaustive pairwise oracle.
        let explicit = code.to_explicit(1_000_000).unwrap();
        assert_eq!(explicit.min_distance(1_000_000).unwrap(), 2);

        // d = 0, n = q: distinct constants differ everywhere.
        let f3 = make_field(3, 1, None).unwrap();
        let pts: Vec<FieldElement> = f3.elements().collect();
        let consts = ReedSolomonCode::new(f3, 0, pts).unwrap();
        assert_eq!(consts.min_distance(), 3);
    }

    #[test]
    fn explicit_min_distance() {
        let f2 = make_field(2, 1, None).unwrap();
        let code = ExplicitCode::new(
            f2.clone(),
            vec![
                Codeword::new(vec![fe(&f2, 0); 3]),
                Codeword::new(vec![fe(&f2, 1); 3]),
            ],
        )
        .unwrap();
        assert_eq!(code.min_distance(100).unwrap(), 3);
    }

    #[test]
    fn puncture_identity_and_rs() {
        let code = rs_f5_d1();
        let id = PunctureMap::identity(3);
        assert_eq!(code.puncture(&id).unwrap(), code);

        let map = PunctureMap::new(vec![0, 2]).unwrap();
        let punctured = code.puncture(&map).unwrap();
        assert_eq!(punctured.degree, 1);
        let pts: Vec<u64> = punctured.eval_points.iter().map(|p| p.index()).collect();
        assert_eq!(pts, vec![0, 2]);
    }

    #[test]
    fn puncture_explicit_collision_flagged() {
        let f2 = make_field(2, 1, None).unwrap();
        let code = ExplicitCode::new(
            f2.clone(),
            vec![
                Codeword::new(vec![fe(&f2, 0), fe(&f2, 0)]),
                Codeword::new(vec![fe(&f2, 0), fe(&f2, 1)]),
            ],
        )
        .unwrap();
        let proj = code.puncture(&PunctureMap::new(vec![0]).unwrap()).unwrap();
        assert!(proj.collided);
        assert_eq!(proj.rows.len(), 2);
        assert_eq!(proj.dedup_code().size(), 1);
    }

    #[test]
    fn puncture_out_of_range() {
        let code = rs_f5_d1();
        let map = PunctureMap::new(vec![0, 5]).unwrap();
        assert!(matches!(
            code.puncture(&map),
            Err(CodeError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn puncture_composition() {
        let f = make_field(7, 1, None).unwrap();
        let pts: Vec<FieldElement> = f.elements().collect();
        let code = ReedSolomonCode::new(f, 2, pts).unwrap();
        let s1 = PunctureMap::new(vec![0, 2, 3, 5, 6]).unwrap();
        let s2 = PunctureMap::new(vec![1, 2, 4]).unwrap();
        let two_step = code.puncture(&s1).unwrap().puncture(&s2).unwrap();
        let composed = code.puncture(&s1.then(&s2).unwrap()).unwrap();
        assert_eq!(two_step, composed);
    }

    #[test]
    fn random_puncture_deterministic_and_full() {
        let code = Code::Rs(rs_f5_d1());
        let (m1, _, _) = random_puncture(&code, 2, 99).unwrap();
        let (m2, _, _) = random_puncture(&code, 2, 99).unwrap();
        assert_eq!(m1, m2);
        let (full, _, _) = random_puncture(&code, 3, 7).unwrap();
        assert_eq!(full.kept, vec![0, 1, 2]);
    }

    #[test]
    fn random_puncture_marginals_uniform() {
        // Each index kept with empirical frequency m/n = 0.3 +- 0.02.
        let n = 10;
        let m = 3;
        let trials = 10_000;
        let mut counts = vec![0u32; n];
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        for _ in 0..trials {
            let map = PunctureMap::random(n, m, &mut rng).unwrap();
            for &i in &map.kept {
                counts[i] += 1;
            }
        }
        for &c in &counts {
            let freq = c as f64 / trials as f64;
            assert!((freq - 0.3).abs() <= 0.02, "freq {freq}");
        }
    }

    #[test]
    fn rates() {
        let f5 = f5();
        let pts: Vec<FieldElement> = f5.elements().take(4).collect();
        let rs = ReedSolomonCode::new(f5.clone(), 1, pts).unwrap();
        assert_eq!(rs.rate(), Rate::Exact(crate::rat::rat(1, 2)));

        // Full space q^n has rate 1.
        let f2 = make_field(2, 1, None).unwrap();
        let all: Vec<Codeword> = (0..4u64)
            .map(|b| {
                Codeword::new(vec![
                    fe(&f2, b >> 1),
                    fe(&f2, b & 1),
                ])
            })
            .collect();
        let code = ExplicitCode::new(f2, all).unwrap();
        assert_eq!(code.rate(), Rate::Exact(crate::rat::rat(1, 1)));

        // d = 0, n = q gives rate 1/q.
        let f3 = make_field(3, 1, None).unwrap();
        let pts: Vec<FieldElement> = f3.elements().collect();
        let consts = ReedSolomonCode::new(f3, 0, pts).unwrap();
        assert_eq!(consts.rate(), Rate::Exact(crate::rat::rat(1, 3)));
    }
}
