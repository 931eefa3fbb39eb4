//! Explicit arrays from J-vectors, and direct strength verification.
//!
//! The counting vector of an array whose only nonzero J-characteristics
//! sit on the m + 1 tracked subsets is recovered cell by cell:
//!
//! ```text
//!     N(s) = 2^-m · ( n + Σ_j (−1)^|s ∩ t_j| · J(t_j) )
//! ```
//!
//! Every cell must come out a nonnegative integer — that is exactly the
//! feasibility of the J-vector — and emitting N(s) copies of each run in
//! ascending Yates order yields a concrete array realizing it.

use itertools::Itertools;

use crate::canon::{JShort, JStar};
use crate::error::{Error, Result};
use crate::jchar::Design;
use crate::subsets::{hadamard_entry, run_row, ArrayParams, SubsetIndex};

/// Materializes the array with canonical J-vector `jstar` and the given
/// shape. Rows come out in ascending Yates order of their run masks, so
/// the result is deterministic.
///
/// # Errors
///
/// [`Error::ShapeMismatch`] if `jstar` and `params` disagree on the column
/// count; [`Error::InfeasibleJ`] if some cell of the counting vector fails
/// to be a nonnegative integer.
pub fn build(jstar: &JStar, params: &ArrayParams) -> Result<Design> {
    if jstar.m() != params.m() {
        return Err(Error::ShapeMismatch(format!(
            "J-vector is for {} columns, parameters ask for {}",
            jstar.m(),
            params.m()
        )));
    }
    let m = params.m();
    let n = params.n() as i64;
    let tracked = JShort::subsets(m);
    let entries = jstar.entries();
    let cells = 1i64 << m;
    let mut rows = Vec::with_capacity(params.n() as usize);
    for mask in 0..(1u32 << m) {
        let s = SubsetIndex::from_mask(mask);
        let mut acc = n;
        for (&t, &j) in tracked.iter().zip(entries) {
            acc += hadamard_entry(s, t) * j;
        }
        if acc < 0 || acc % cells != 0 {
            return Err(Error::InfeasibleJ {
                subset: mask,
                numerator: acc,
                denominator: cells,
            });
        }
        for _ in 0..acc / cells {
            rows.push(run_row(s, m)?);
        }
    }
    Design::new(rows, m)
}

/// Builds one explicit representative of every isomorphism class at the
/// given shape, in the order [`crate::enumerate::solutions`] emits them.
///
/// # Errors
///
/// Propagates any construction failure (none is expected for enumerated
/// classes; a failure indicates an internal inconsistency).
pub fn build_catalog(params: &ArrayParams) -> Result<Vec<Design>> {
    crate::enumerate::jstars(params)
        .iter()
        .map(|jstar| build(jstar, params))
        .collect()
}

/// Materializes the strength-d array on d + 1 columns with single
/// J-value u·2^d on the full column set: the cells of the counting vector
/// are k = (λ + u)/2 on even-size run masks and k − u on odd ones.
///
/// # Errors
///
/// Rejects parameters outside the supported range and u outside
/// −λ ≤ u ≤ 0 or with u ≢ λ (mod 2).
pub fn build_one_extra(d: u32, lambda: u32, u: i64) -> Result<Design> {
    let _ = ArrayParams::new(d, lambda)?;
    let l = i64::from(lambda);
    if u > 0 || u < -l || (l + u) % 2 != 0 {
        return Err(Error::InvalidParams(format!(
            "single J-value {u} must lie in [{}, 0] and have the parity of the index {lambda}",
            -l
        )));
    }
    let m = d + 1;
    let k = (l + u) / 2;
    let mut rows = Vec::new();
    for mask in 0..(1u32 << m) {
        let s = SubsetIndex::from_mask(mask);
        let copies = if s.card().is_multiple_of(2) { k } else { k - u };
        for _ in 0..copies {
            rows.push(run_row(s, m)?);
        }
    }
    Design::new(rows, m)
}

/// Checks the strength-d property directly from the definition: every set
/// of d columns carries every ±1 pattern equally often. This is a
/// deliberately independent check — it never looks at J-characteristics.
#[must_use]
pub fn verify_oa(design: &Design, d: u32) -> bool {
    if d == 0 {
        return true;
    }
    let m = design.m() as usize;
    if d as usize > m {
        return false;
    }
    let n = design.n();
    if !n.is_multiple_of(1usize << d) {
        return false;
    }
    let expected = (n >> d) as i64;
    for cols in (0..m).combinations(d as usize) {
        let mut counts = vec![0i64; 1 << d];
        for row in design.rows() {
            let mut pattern = 0usize;
            for (bit, &c) in cols.iter().enumerate() {
                if row[c] < 0 {
                    pattern |= 1 << bit;
                }
            }
            counts[pattern] += 1;
        }
        if counts.iter().any(|&c| c != expected) {
            return false;
        }
    }
    true
}
