//! The bipartite graph of a code (left: codewords; right: (coordinate,
//! symbol) pairs; codeword c adjacent to (i, c[i])) and verification of
//! unbalanced-expander parameters.

use crate::code::{Code, Codeword, ExplicitCode};
use crate::gf::FieldElement;
use crate::listrecovery::{
    is_zero_error_recoverable, ListFamily, RecoveryError,
};
use crate::rat::{rat_int, rat_one, serialize_rat, Rat};
use itertools::Itertools;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Default cap on the number of k-subsets the exhaustive search visits.
pub const DEFAULT_SUBSET_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpanderError {
    #[error("enumeration of {size} codewords exceeds cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },
    #[error("search over {subsets} subsets exceeds cap {cap}")]
    SearchSpaceTooLarge { subsets: u128, cap: u64 },
    #[error("k = {k} invalid for {left} left vertices")]
    BadK { k: usize, left: usize },
    #[error(transparent)]
    Recovery(#[from] RecoveryError),
}

/// G(C): left vertices are codeword ids (positions in `codewords`), the
/// neighbors of codeword c are the n pairs (i, c[i]). Only right vertices
/// adjacent to some codeword are materialized.
#[derive(Debug, Clone, Serialize)]
pub struct BipartiteCodeGraph {
    pub codewords: Vec<Codeword>,
    pub right: BTreeSet<(usize, FieldElement)>,
}

impl BipartiteCodeGraph {
    /// Left degree: the block length n.
    pub fn degree(&self) -> usize {
        self.codewords[0].len()
    }

    pub fn left_size(&self) -> usize {
        self.codewords.len()
    }

    /// N(S) for a set of codeword ids: the distinct (coordinate, symbol)
    /// pairs they touch.
    pub fn neighborhood(&self, set: &[usize]) -> BTreeSet<(usize, FieldElement)> {
        let mut out = BTreeSet::new();
        for &id in set {
            for (i, &s) in self.codewords[id].symbols.iter().enumerate() {
                out.insert((i, s));
            }
        }
        out
    }
}

/// Materializes G(C) for an enumerable code.
pub fn code_graph(code: &Code, cap: u64) -> Result<BipartiteCodeGraph, ExpanderError> {
    let explicit = code
        .to_explicit(cap)
        .map_err(|_| ExpanderError::EnumerationTooLarge {
            size: code.size(),
            cap,
        })?;
    graph_of_explicit(&explicit)
}

pub fn graph_of_explicit(code: &ExplicitCode) -> Result<BipartiteCodeGraph, ExpanderError> {
    let mut right = BTreeSet::new();
    for c in &code.codewords {
        for (i, &s) in c.symbols.iter().enumerate() {
            right.insert((i, s));
        }
    }
    Ok(BipartiteCodeGraph {
        codewords: code.codewords.clone(),
        right,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    Exhaustive,
    Sampled,
}

/// Measured expansion at one set size k.
#[derive(Debug, Clone, Serialize)]
pub struct ExpansionReport {
    pub k: usize,
    /// Left degree d = block length.
    pub d: usize,
    pub min_neighborhood: usize,
    /// 1 - min_neighborhood / (d k). In sampled mode this is an estimate,
    /// not a certificate: the true minimum can only be smaller.
    #[serde(serialize_with = "serialize_rat")]
    pub achieved_epsilon: Rat,
    pub worst_set: Vec<usize>,
    pub mode: SearchMode,
    pub trials: Option<u64>,
}

fn report(
    graph: &BipartiteCodeGraph,
    k: usize,
    min_neighborhood: usize,
    worst_set: Vec<usize>,
    mode: SearchMode,
    trials: Option<u64>,
) -> ExpansionReport {
    let d = graph.degree();
    let achieved_epsilon =
        rat_one() - rat_int(min_neighborhood as u64) / rat_int((d * k) as u64);
    ExpansionReport {
        k,
        d,
        min_neighborhood,
        achieved_epsilon,
        worst_set,
        mode,
        trials,
    }
}

/// Exact minimum of |N(S)| over every k-set of left vertices.
pub fn expansion_exhaustive(
    graph: &BipartiteCodeGraph,
    k: usize,
    cap: u64,
) -> Result<ExpansionReport, ExpanderError> {
    let left = graph.left_size();
    if k == 0 || k > left {
        return Err(ExpanderError::BadK { k, left });
    }
    let subsets = binomial(left as u128, k as u128);
    if subsets > cap as u128 {
        return Err(ExpanderError::SearchSpaceTooLarge { subsets, cap });
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for set in (0..left).combinations(k) {
        let size = graph.neighborhood(&set).len();
        if best.as_ref().is_none_or(|(b, _)| size < *b) {
            best = Some((size, set));
        }
    }
    let (min_neighborhood, worst_set) = best.expect("k >= 1");
    Ok(report(
        graph,
        k,
        min_neighborhood,
        worst_set,
        SearchMode::Exhaustive,
        None,
    ))
}

/// Minimum of |N(S)| over `trials` uniformly sampled k-sets. This is an
/// upper bound on the true minimum, never a certificate of expansion.
pub fn expansion_sampled(
    graph: &BipartiteCodeGraph,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<ExpansionReport, ExpanderError> {
    let left = graph.left_size();
    if k == 0 || k > left {
        return Err(ExpanderError::BadK { k, left });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut arr: Vec<usize> = (0..left).collect();
    for _ in 0..trials.max(1) {
        for i in 0..k {
            let j = rng.random_range(i..left);
            arr.swap(i, j);
        }
        let mut set: Vec<usize> = arr[..k].to_vec();
        set.sort_unstable();
        let size = graph.neighborhood(&set).len();
        if best.as_ref().is_none_or(|(b, _)| size < *b) {
            best = Some((size, set));
        }
    }
    let (min_neighborhood, worst_set) = best.expect("trials >= 1");
    Ok(report(
        graph,
        k,
        min_neighborhood,
        worst_set,
        SearchMode::Sampled,
        Some(trials.max(1)),
    ))
}

/// The (k, d, eps) triple the puncturing corollary predicts for G(C_S):
/// k = floor(alpha * eps^-2), d = |S| = m, eps = alpha.
pub fn corollary_params(epsilon: &Rat, alpha: &Rat, m: u64) -> (u64, u64, Rat) {
    let k_rat = alpha * epsilon.recip() * epsilon.recip();
    let k = k_rat.floor().to_integer().to_u64().unwrap_or(u64::MAX);
    (k, m, alpha.clone())
}

/// The two directions of the zero-error bridge at one set size k.
///
/// Expansion side: the global minimum of |N(S)| over k-sets, with its worst
/// set and that set's per-coordinate value lists (which capture all k
/// members by construction).
///
/// Recovery side: over every list family of per-coordinate size ell* (the
/// worst set's largest value-list size), the minimum of |N(S')| over
/// k-subsets of the family's captured codewords. The two minima agree: the
/// worst set's own value lists extend to such a family, and any captured
/// k-subset is itself a candidate k-set.
#[derive(Debug, Clone, Serialize)]
pub struct BridgeReport {
    pub k: usize,
    pub ell_star: usize,
    pub expansion_min: usize,
    pub worst_set: Vec<usize>,
    pub worst_family_captures: usize,
    pub recovery_min: usize,
    pub witness_kset: Vec<usize>,
    pub matched: bool,
}

pub fn bridge_check(
    code: &ExplicitCode,
    k: usize,
    subset_cap: u64,
    family_cap: u64,
) -> Result<BridgeReport, ExpanderError> {
    let graph = graph_of_explicit(code)?;
    let expansion = expansion_exhaustive(&graph, k, subset_cap)?;

    // Value lists of the worst set.
    let n = code.len();
    let mut value_sets: Vec<BTreeSet<FieldElement>> = vec![BTreeSet::new(); n];
    for &id in &expansion.worst_set {
        for (i, &s) in code.codewords[id].symbols.iter().enumerate() {
            value_sets[i].insert(s);
        }
    }
    let ell_star = value_sets.iter().map(BTreeSet::len).max().unwrap_or(0);
    let worst_family = ListFamily::from_sets(value_sets);
    let worst_family_captures = code
        .codewords
        .iter()
        .filter(|c| {
            crate::code::distance_to_lists(c, &worst_family).expect("same length") == 0
        })
        .count();

    // The captured set always contains the worst set itself, so the
    // exhaustive zero-error search at (ell*, k-1) must fail.
    let zero_error =
        is_zero_error_recoverable(code, ell_star, k as u64 - 1, None, family_cap)?;
    debug_assert!(!zero_error.recoverable);

    // Recovery-side minimum over all exact-size-ell* families.
    let q = code.field.order();
    let per_coord = binomial(q as u128, ell_star as u128);
    let total = per_coord.checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > family_cap as u128 {
        return Err(ExpanderError::SearchSpaceTooLarge {
            subsets: total,
            cap: family_cap,
        });
    }
    let elements: Vec<FieldElement> = code.field.elements().collect();
    let subsets: Vec<BTreeSet<FieldElement>> = elements
        .into_iter()
        .combinations(ell_star)
        .map(|c| c.into_iter().collect())
        .collect();
    let mut odometer = vec![0usize; n];
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let family =
            ListFamily::from_sets(odometer.iter().map(|&i| subsets[i].clone()).collect());
        let captured: Vec<usize> = code
            .codewords
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                crate::code::distance_to_lists(c, &family).expect("same length") == 0
            })
            .map(|(id, _)| id)
            .collect();
        if captured.len() >= k {
            for set in captured.iter().copied().combinations(k) {
                let size = graph.neighborhood(&set).len();
                if best.as_ref().is_none_or(|(b, _)| size < *b) {
                    best = Some((size, set));
                }
            }
        }
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
    let (recovery_min, witness_kset) = best.expect("worst family captures k");

    Ok(BridgeReport {
        k,
        ell_star,
        expansion_min: expansion.min_neighborhood,
        worst_set: expansion.worst_set,
        worst_family_captures,
        recovery_min,
        witness_kset,
        matched: recovery_min == expansion.min_neighborhood,
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
