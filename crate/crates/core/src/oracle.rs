//! Brute-force cross-check of the catalog.
//!
//! Instead of descending through tight intervals, this module walks a
//! plain grid of candidate shortened J-vectors — every slot value allowed
//! by the parity laws — and keeps the candidates that survive two checks:
//!
//! 1. the pairwise bound |J(t)| + |J(t')| ≤ n for subsets whose symmetric
//!    difference has size between 1 and d (plus the n − 4 cap on proper
//!    subsets when d = 2 and the index is odd), and
//! 2. exact feasibility: inverting the would-be J-vector must produce a
//!    counting vector of nonnegative integers.
//!
//! Survivors are grouped into isomorphism classes by explicit orbit
//! minimization over all 2^m sign switches and all head permutations —
//! no canonical-form theory involved — so the result is an independent
//! reference for both the class count and the class representatives.
//!
//! The grid is exponential in m and the index, so everything here is
//! guarded by a size limit; this is a verification aid, not the engine.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::canon::{canonicalize, JShort, JStar};
use crate::error::{Error, Result};
use crate::jchar::{check_pair_bound, n_from_j};
use crate::subsets::ArrayParams;

/// Upper bound on grid cells explored by [`feasible_jshorts`].
const MAX_GRID: u128 = 20_000_000;

/// Every shortened J-vector (in slot order) that could belong to an array
/// of the given shape: right parities, pair bounds, and an integral
/// nonnegative counting vector. Unreduced — isomorphic vectors all appear.
///
/// # Errors
///
/// [`Error::SizeLimit`] when the candidate grid exceeds [`MAX_GRID`].
pub fn feasible_jshorts(params: &ArrayParams) -> Result<Vec<JShort>> {
    let m = params.m();
    let n = params.n() as i64;
    let d = params.d();
    let lambda = i64::from(params.lambda());
    let odd_index = lambda % 2 == 1;
    let head_values: Vec<i64> = if odd_index {
        // Odd multiples of 2^d up to n in magnitude.
        (-lambda..=lambda)
            .filter(|v| v.rem_euclid(2) == 1)
            .map(|v| v << d)
            .collect()
    } else {
        // Even multiples of 2^d, i.e. any multiple of 2^(d+1).
        (-lambda / 2..=lambda / 2).map(|v| v << (d + 1)).collect()
    };
    let tail_values: Vec<i64> = if odd_index && d % 2 == 1 {
        // Odd strength with odd index flips the parity on the full set.
        (-lambda..=lambda)
            .filter(|v| v.rem_euclid(2) == 0)
            .map(|v| v << d)
            .collect()
    } else {
        head_values.clone()
    };
    let mut slots: Vec<&[i64]> = vec![&head_values; m as usize];
    slots.push(&tail_values);
    let cells: u128 = slots.iter().map(|s| s.len() as u128).product();
    if cells > MAX_GRID {
        return Err(Error::SizeLimit(format!(
            "candidate grid would have {cells} cells (limit {MAX_GRID})"
        )));
    }
    let mut out = Vec::new();
    for candidate in slots
        .iter()
        .map(|s| s.iter().copied())
        .multi_cartesian_product()
    {
        let short = JShort::new(candidate, m).expect("slot count matches by construction");
        let full = short.to_full(n);
        let bounds = check_pair_bound(&full, d).expect("tracked subsets all exceed size d");
        if !bounds.is_empty() {
            continue;
        }
        if n_from_j(&full).is_err() {
            continue;
        }
        out.push(short);
    }
    Ok(out)
}

/// The lexicographically smallest shortened vector in the isomorphism
/// orbit of `js`: minimum over all 2^m sign switches of the head sorted
/// ascending (the head minimum over column permutations) with the forced
/// last slot appended. Computed from the group action alone.
#[must_use]
pub fn orbit_min(js: &JShort) -> JShort {
    let m = js.m() as usize;
    let tracked = JShort::subsets(js.m());
    let mut best: Option<Vec<i64>> = None;
    for switch in 0u32..(1 << m) {
        let mut moved: Vec<i64> = js
            .entries()
            .iter()
            .zip(&tracked)
            .map(|(&v, t)| {
                let sign = if (switch & t.mask()).count_ones() % 2 == 0 {
                    1
                } else {
                    -1
                };
                v * sign
            })
            .collect();
        moved[..m].sort_unstable();
        if best.as_ref().is_none_or(|b| moved < *b) {
            best = Some(moved);
        }
    }
    JShort::new(best.expect("orbit is never empty"), js.m())
        .expect("orbit action preserves the slot count")
}

/// One canonical representative per isomorphism class, derived from the
/// brute-force survivors by orbit reduction.
///
/// # Errors
///
/// [`Error::SizeLimit`] when the candidate grid is too large.
pub fn oracle_jstars(params: &ArrayParams) -> Result<BTreeSet<JStar>> {
    let mut orbits: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = BTreeSet::new();
    for short in feasible_jshorts(params)? {
        let key = orbit_min(&short);
        if orbits.insert(key.entries().to_vec()) {
            out.insert(canonicalize(&key));
        }
    }
    Ok(out)
}

/// Independent class count; compare with [`crate::enumerate::class_count`].
///
/// # Errors
///
/// [`Error::SizeLimit`] when the candidate grid is too large.
pub fn oracle_class_count(params: &ArrayParams) -> Result<u64> {
    Ok(oracle_jstars(params)?.len() as u64)
}
