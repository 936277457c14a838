//! Adversarial list constructions: the subfield lists that trap many
//! codewords of a high-degree Reed-Solomon code, and the sumset line family
//! that defeats zero-error list recovery of low-degree punctured codes.

use crate::code::{Codeword, ReedSolomonCode};
use crate::gf::{make_field, FieldElement, FieldSpec, GfError};
use crate::listrecovery::ListFamily;
use crate::rat::Rat;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdversarialError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("enumeration of {size} polynomials exceeds cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },
    #[error("t = {t} too large for field of order {q}")]
    TTooLarge { t: u64, q: u64 },
    #[error("t must be at least 2, got {0}")]
    BadT(u64),
    #[error("collision guard violated: 8 t^(2m-4) = {lhs} > q = {q}")]
    GuardViolated { lhs: u128, q: u64 },
    #[error("invalid point set: {0}")]
    PointsInvalid(String),
    #[error("containment broken at line {line} coordinate {coord}: construction bug")]
    ContainmentBroken { line: usize, coord: usize },
    #[error("function count p^{nullity} overflows")]
    CountOverflow { nullity: usize },
}

/// The degree-((q-1)/(p-1)) Reed-Solomon code over F_{p^e} evaluated on all
/// of F_q, with the prime subfield as the candidate list at every
/// coordinate.
#[derive(Debug, Clone, Serialize)]
pub struct SubfieldInstance {
    pub field: FieldSpec,
    pub code: ReedSolomonCode,
    pub lists: ListFamily,
}

pub fn gr06_build(p: u64, e: u32) -> Result<SubfieldInstance, AdversarialError> {
    let field = make_field(p, e, None)?;
    let q = field.order();
    let degree = ((q - 1) / (p - 1)) as usize;
    let eval_points: Vec<FieldElement> = field.elements().collect();
    let code = ReedSolomonCode::new(field.clone(), degree, eval_points)
        .expect("degree (q-1)/(p-1) < q");
    let subfield: Vec<u64> = field
        .subfield_elements()
        .iter()
        .map(|e| e.index())
        .collect();
    let lists = ListFamily::new(&field, vec![subfield; q as usize]).expect("valid subfield lists");
    Ok(SubfieldInstance { field, code, lists })
}

/// How to count the codewords trapped by the subfield lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CountMethod {
    /// Ground truth: enumerate all q^(d+1) polynomials and test every
    /// evaluation for membership in the subfield.
    Enumerate,
    /// Exact linear-algebra route: membership of every evaluation in F_p is
    /// the F_p-linear constraint f(s)^p = f(s), so the trapped codewords
    /// form the kernel of an F_p matrix and number p^nullity.
    FunctionCount,
}

/// Exact number of codewords all of whose symbols lie in the prime
/// subfield. The two methods agree wherever both run.
pub fn gr06_count(
    instance: &SubfieldInstance,
    method: CountMethod,
    cap: u64,
) -> Result<u128, AdversarialError> {
    match method {
        CountMethod::Enumerate => gr06_enumerate_count(instance, cap),
        CountMethod::FunctionCount => gr06_function_count(instance),
    }
}

/// Full enumeration of all q^(d+1) polynomials with tabled field addition:
/// a depth-first walk over coefficients keeps the running evaluation vector,
/// so each polynomial costs n table additions instead of a Horner pass.
fn gr06_enumerate_count(
    instance: &SubfieldInstance,
    cap: u64,
) -> Result<u128, AdversarialError> {
    let size = instance.code.size();
    if size > cap as u128 {
        return Err(AdversarialError::EnumerationTooLarge { size, cap });
    }
    let field = &instance.field;
    let q = field.order() as usize;
    let n = instance.code.len();
    let d = instance.code.degree;

    let mut add_table = vec![0u64; q * q];
    for a in 0..q as u64 {
        for b in 0..q as u64 {
            add_table[a as usize * q + b as usize] = field
                .add(field.element(a).unwrap(), field.element(b).unwrap())
                .index();
        }
    }
    let mut in_subfield = vec![false; q];
    for e in field.subfield_elements() {
        in_subfield[e.index() as usize] = true;
    }
    // contribution[k][c] = the evaluation vector of the monomial c X^k.
    let contribution: Vec<Vec<Vec<u64>>> = (0..=d)
        .map(|k| {
            (0..q as u64)
                .map(|c| {
                    let ce = field.element(c).unwrap();
                    instance
                        .code
                        .eval_points
                        .iter()
                        .map(|&s| field.mul(ce, field.pow(s, k as u64)).index() as u64)
                        .collect()
                })
                .collect()
        })
        .collect();

    fn walk(
        k: usize,
        sum: &[u64],
        contribution: &[Vec<Vec<u64>>],
        add_table: &[u64],
        in_subfield: &[bool],
        q: usize,
    ) -> u128 {
        if k == contribution.len() {
            return sum.iter().all(|&s| in_subfield[s as usize]) as u128;
        }
        let mut total = 0u128;
        let mut next = vec![0u64; sum.len()];
        for c in 0..q {
            for (slot, (&acc, &add)) in next
                .iter_mut()
                .zip(sum.iter().zip(contribution[k][c].iter()))
            {
                *slot = add_table[acc as usize * q + add as usize];
            }
            total += walk(k + 1, &next, contribution, add_table, in_subfield, q);
        }
        total
    }

    Ok(walk(
        0,
        &vec![0u64; n],
        &contribution,
        &add_table,
        &in_subfield,
        q,
    ))
}

/// Counts polynomials f of degree <= d with f(F_q) contained in F_p by
/// Gaussian elimination over F_p.
///
/// Writing each coefficient in the power basis of F_q over F_p gives
/// e(d+1) unknowns in F_p; the condition f(s)^p - f(s) = 0 for a fixed s is
/// F_p-linear in them (evaluation is linear, Frobenius is F_p-linear), so
/// each s contributes e scalar equations. The answer is p^nullity.
fn gr06_function_count(instance: &SubfieldInstance) -> Result<u128, AdversarialError> {
    let field = &instance.field;
    let p = field.characteristic();
    let e = field.extension_degree() as usize;
    let d = instance.code.degree;
    let cols = e * (d + 1);
    let mut rows: Vec<Vec<u64>> = Vec::new();

    // Basis element x^j has index p^j.
    let basis: Vec<FieldElement> = (0..e)
        .map(|j| field.element(p.pow(j as u32)).expect("basis in range"))
        .collect();

    for s in field.elements() {
        // Row block for this evaluation point: e scalar equations.
        let mut block = vec![vec![0u64; cols]; e];
        for k in 0..=d {
            let sk = field.pow(s, k as u64);
            for (j, &bj) in basis.iter().enumerate() {
                let v = field.mul(bj, sk);
                let w = field.sub(field.pow(v, p), v);
                // Decompose w into base-p digits: coordinates over F_p.
                let mut idx = w.index();
                for row in block.iter_mut() {
                    row[k * e + j] = idx % p;
                    idx /= p;
                }
            }
        }
        rows.extend(block);
    }

    let rank = rank_mod_p(&mut rows, cols, p);
    let nullity = cols - rank;
    let mut count: u128 = 1;
    for _ in 0..nullity {
        count = count
            .checked_mul(p as u128)
            .ok_or(AdversarialError::CountOverflow { nullity })?;
    }
    Ok(count)
}

fn rank_mod_p(rows: &mut [Vec<u64>], cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows.len()).find(|&r| rows[r][col] % p != 0);
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][col] % p, p);
        for c in col..cols {
            rows[rank][c] = rows[rank][c] * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for c in col..cols {
                    rows[r][c] = (rows[r][c] + (p - factor) * rows[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p: a^(p-2).
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// The scaled interval {scalar*1, scalar*2, ..., scalar*t} in F_q.
pub fn sumset_interval(
    field: &FieldSpec,
    scalar: FieldElement,
    t: u64,
) -> Result<BTreeSet<FieldElement>, AdversarialError> {
    if t >= field.order() {
        return Err(AdversarialError::TTooLarge {
            t,
            q: field.order(),
        });
    }
    let mut out = BTreeSet::new();
    let mut acc = FieldElement::ZERO;
    for _ in 0..t {
        acc = field.add(acc, FieldElement::ONE);
        out.insert(field.mul(scalar, acc));
    }
    Ok(out)
}

fn sumset_add(
    field: &FieldSpec,
    a: &BTreeSet<FieldElement>,
    b: &BTreeSet<FieldElement>,
) -> BTreeSet<FieldElement> {
    let mut out = BTreeSet::new();
    for &x in a {
        for &y in b {
            out.insert(field.add(x, y));
        }
    }
    out
}

/// A line Y = slope*X + intercept over the prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Line {
    pub slope: FieldElement,
    pub intercept: FieldElement,
}

/// The sumset construction: points s_0 = 0, s_1 = 1, s_2, ..., s_{m-1},
/// the sumsets A_0 and A_1, and the family of all lines through
/// {0} x A_0 and {1} x A_1, together with the per-coordinate value lists.
#[derive(Debug, Clone, Serialize)]
pub struct SumsetInstance {
    pub field: FieldSpec,
    pub points: Vec<FieldElement>,
    pub t: u64,
    pub a0: BTreeSet<FieldElement>,
    pub a1: BTreeSet<FieldElement>,
    pub lines: Vec<Line>,
    pub lists: ListFamily,
}

/// Verified sizes and bounds of a sumset instance.
#[derive(Debug, Clone, Serialize)]
pub struct SumsetReport {
    pub a0_size: usize,
    pub a1_size: usize,
    pub line_count: usize,
    pub list_sizes: Vec<usize>,
    /// 2 t^(2m-5), the claimed cap on every list size at coordinates >= 2.
    pub bound_2t_pow: u128,
    /// t^(2m-4), the order of the claimed trapped-codeword family.
    pub family_pow: u128,
    /// Ordered pairs of distinct coefficient tuples for A_0 whose scaled
    /// sums collide; 0 means |A_0| hit t^(m-2) exactly.
    pub collision_count: Option<u64>,
    pub lines_verified: usize,
    pub per_list_bound_ok: bool,
    /// m = 3 makes the exponent 2m-5 equal 1 and the bound chain vacuous.
    pub degenerate: bool,
}

/// Builds the instance. `points` are element indices with points[0] = 0 and
/// points[1] = 1; the remaining points are distinct and avoid 0 and 1.
///
/// The collision guard `8 t^(2m-4) <= q` keeps the expected number of A_0
/// collisions at most 1/8, so the sumsets stay near full size with high
/// probability over random points.
pub fn sumset_build(q: u64, points: &[u64], t: u64) -> Result<SumsetInstance, AdversarialError> {
    if !crate::gf::is_prime(q) {
        return Err(AdversarialError::Field(GfError::NotPrime(q)));
    }
    let field = make_field(q, 1, None)?;
    let m = points.len();
    if m < 3 {
        return Err(AdversarialError::PointsInvalid(format!(
            "need at least 3 points, got {m}"
        )));
    }
    if points[0] != 0 || points[1] != 1 {
        return Err(AdversarialError::PointsInvalid(
            "points must start 0, 1".into(),
        ));
    }
    let mut seen = BTreeSet::new();
    for (i, &s) in points.iter().enumerate() {
        if s >= q {
            return Err(AdversarialError::PointsInvalid(format!(
                "point {s} outside F_{q}"
            )));
        }
        if i >= 2 && (s == 0 || s == 1) {
            return Err(AdversarialError::PointsInvalid(
                "points after the first two must avoid 0 and 1".into(),
            ));
        }
        if !seen.insert(s) {
            return Err(AdversarialError::PointsInvalid(format!(
                "duplicate point {s}"
            )));
        }
    }
    if t < 2 {
        return Err(AdversarialError::BadT(t));
    }
    if t >= q {
        return Err(AdversarialError::TTooLarge { t, q });
    }
    let exponent = 2 * (m as u32) - 4;
    let lhs = checked_pow_u128(t as u128, exponent)
        .and_then(|v| v.checked_mul(8))
        .unwrap_or(u128::MAX);
    if lhs > q as u128 {
        return Err(AdversarialError::GuardViolated { lhs, q });
    }

    let points: Vec<FieldElement> = points
        .iter()
        .map(|&s| field.element(s).expect("range checked"))
        .collect();

    // A_0 = sum over j >= 2 of (1 - s_j)^{-1} [t]; A_1 uses s_j^{-1}.
    let mut a0: Option<BTreeSet<FieldElement>> = None;
    let mut a1: Option<BTreeSet<FieldElement>> = None;
    for &s in &points[2..] {
        let inv_one_minus = field
            .inv(field.sub(FieldElement::ONE, s))
            .expect("s != 1");
        let inv_s = field.inv(s).expect("s != 0");
        let i0 = sumset_interval(&field, inv_one_minus, t)?;
        let i1 = sumset_interval(&field, inv_s, t)?;
        a0 = Some(match a0 {
            None => i0,
            Some(prev) => sumset_add(&field, &prev, &i0),
        });
        a1 = Some(match a1 {
            None => i1,
            Some(prev) => sumset_add(&field, &prev, &i1),
        });
    }
    let a0 = a0.expect("m >= 3");
    let a1 = a1.expect("m >= 3");

    // Lines through (0, b in A_0) and (1, a in A_1): Y = (a - b) X + b.
    let mut lines = Vec::with_capacity(a0.len() * a1.len());
    for &b in &a0 {
        for &a in &a1 {
            lines.push(Line {
                slope: field.sub(a, b),
                intercept: b,
            });
        }
    }

    // Lists: the exact value sets of the line family at every coordinate.
    // By construction these are A_0 at s_0 = 0 and A_1 at s_1 = 1.
    let mut lists: Vec<BTreeSet<FieldElement>> = Vec::with_capacity(m);
    lists.push(a0.clone());
    lists.push(a1.clone());
    for &s in &points[2..] {
        let values: BTreeSet<FieldElement> = lines
            .iter()
            .map(|l| field.add(field.mul(l.slope, s), l.intercept))
            .collect();
        lists.push(values);
    }
    let lists = ListFamily::from_sets(lists);

    Ok(SumsetInstance {
        field,
        points,
        t,
        a0,
        a1,
        lines,
        lists,
    })
}

/// The codeword of a line: its evaluations at the instance's points.
pub fn line_codeword(instance: &SumsetInstance, line: &Line) -> Codeword {
    let f = &instance.field;
    Codeword::new(
        instance
            .points
            .iter()
            .map(|&s| f.add(f.mul(line.slope, s), line.intercept))
            .collect(),
    )
}

/// Checks containment of every line in the lists (failure is a bug, not a
/// data condition), the per-list size bounds, the line-count identity, and
/// the collision statistic for A_0.
pub fn sumset_verify(
    instance: &SumsetInstance,
    cap: u64,
) -> Result<SumsetReport, AdversarialError> {
    let m = instance.points.len();
    let t = instance.t;
    let field = &instance.field;

    for (li, line) in instance.lines.iter().enumerate() {
        let cw = line_codeword(instance, line);
        for (i, s) in cw.symbols.iter().enumerate() {
            if !instance.lists.lists()[i].contains(s) {
                return Err(AdversarialError::ContainmentBroken { line: li, coord: i });
            }
        }
    }

    let bound_2t_pow = checked_pow_u128(t as u128, 2 * m as u32 - 5)
        .and_then(|v| v.checked_mul(2))
        .unwrap_or(u128::MAX);
    let family_pow = checked_pow_u128(t as u128, 2 * m as u32 - 4).unwrap_or(u128::MAX);
    let list_sizes: Vec<usize> = instance.lists.lists().iter().map(BTreeSet::len).collect();
    let per_list_bound_ok = list_sizes[2..]
        .iter()
        .all(|&sz| (sz as u128) <= bound_2t_pow);

    // Collision pairs among the coefficient tuples of A_0.
    let tuple_count = checked_pow_u128(t as u128, m as u32 - 2).unwrap_or(u128::MAX);
    let pair_count = tuple_count.checked_mul(tuple_count).unwrap_or(u128::MAX);
    let collision_count = if pair_count <= cap as u128 {
        let scalars: Vec<FieldElement> = instance.points[2..]
            .iter()
            .map(|&s| field.inv(field.sub(FieldElement::ONE, s)).expect("s != 1"))
            .collect();
        let mut sums: BTreeMap<FieldElement, u64> = BTreeMap::new();
        let mut tuple = vec![1u64; m - 2];
        loop {
            let mut acc = FieldElement::ZERO;
            for (j, &scalar) in scalars.iter().enumerate() {
                let a = field.element(tuple[j]).expect("tuple entry < t < q");
                acc = field.add(acc, field.mul(scalar, a));
            }
            *sums.entry(acc).or_insert(0) += 1;
            // odometer over [1, t]
            let mut pos = m - 2;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] <= t {
                    break;
                }
                tuple[pos] = 1;
            }
            if tuple.iter().all(|&v| v == 1) {
                break;
            }
        }
        Some(sums.values().map(|&c| c * (c - 1)).sum())
    } else {
        None
    };

    Ok(SumsetReport {
        a0_size: instance.a0.len(),
        a1_size: instance.a1.len(),
        line_count: instance.lines.len(),
        list_sizes,
        bound_2t_pow,
        family_pow,
        collision_count,
        lines_verified: instance.lines.len(),
        per_list_bound_ok,
        degenerate: m == 3,
    })
}

/// Draws m points (0, 1, then m-2 distinct others) for a random sumset
/// instance, sorted ascending beyond the first two.
pub fn sumset_random_points(q: u64, m: usize, rng: &mut impl rand::Rng) -> Vec<u64> {
    assert!(m >= 3 && (m as u64) < q);
    let mut chosen = BTreeSet::new();
    while chosen.len() < m - 2 {
        let s = rng.random_range(2..q);
        chosen.insert(s);
    }
    let mut points = vec![0u64, 1];
    points.extend(chosen);
    points
}

/// The relative-distance epsilon of the instance's code (degree d on n = q
/// points has relative distance 1 - d/n), for Johnson comparisons.
pub fn gr06_epsilon(instance: &SubfieldInstance) -> Rat {
    Rat::new(
        (instance.code.degree as u64).into(),
        (instance.code.len() as u64).into(),
    )
}

fn checked_pow_u128(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
