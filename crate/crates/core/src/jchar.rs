//! Designs, counting vectors, and J-characteristics.
//!
//! An n × m array with entries ±1 is summarized losslessly by its *counting
//! vector* N: slot s (a subset of column labels in Yates order) holds the
//! number of rows equal to the run row of s. The *J-characteristic* of a
//! column subset t is the sum over rows of the product of the row's entries
//! in the columns of t; collecting all 2^m of them gives the J-vector
//!
//! ```text
//!     J(t) = Σ_s h(s, t) · N(s),
//! ```
//!
//! i.e. the image of N under the natural 2^m Hadamard transform. The
//! transform is an involution up to the factor 2^m, so N is recoverable
//! from J by one more transform and an exact division — which is also the
//! feasibility test for candidate J-vectors: an integral, nonnegative
//! preimage exists exactly when the candidate is realizable.
//!
//! Strength has a clean characterization in these terms: an array has
//! strength at least d if and only if J(t) = 0 for every nonempty t with at
//! most d columns. [`strength`] uses that criterion; direct pattern counting
//! (see [`crate::construct::verify_oa`]) serves as the independent check.

use crate::error::{Error, Result};
use crate::subsets::{check_m, ArrayParams, SubsetIndex};

/// An explicit n × m array with entries −1/+1, rows in no particular order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Design {
    rows: Vec<Vec<i8>>,
    m: u32,
}

impl Design {
    /// Wraps explicit rows, validating that each has length `m` and every
    /// entry is −1 or +1.
    ///
    /// # Errors
    ///
    /// Rejects an unsupported column count, a ragged row, or any entry
    /// outside {−1, +1}.
    pub fn new(rows: Vec<Vec<i8>>, m: u32) -> Result<Self> {
        check_m(m)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m as usize {
                return Err(Error::MalformedDesign(format!(
                    "row {} has {} entries, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|&&e| e != 1 && e != -1) {
                return Err(Error::MalformedDesign(format!(
                    "row {} contains {bad}; entries must be -1 or 1",
                    i + 1
                )));
            }
        }
        Ok(Design { rows, m })
    }

    /// Number of rows.
    #[must_use]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    #[must_use]
    pub const fn m(&self) -> u32 {
        self.m
    }

    /// The rows, in stored order.
    #[must_use]
    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    /// Reorders rows so that row i of the result is row `perm[i]` of self.
    ///
    /// # Errors
    ///
    /// `perm` must be a permutation of 0..n.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Design> {
        check_permutation(perm, self.n(), "row")?;
        let rows = perm.iter().map(|&i| self.rows[i].clone()).collect();
        Ok(Design { rows, m: self.m })
    }

    /// Reorders columns so that column i of the result is column `perm[i]`
    /// of self.
    ///
    /// # Errors
    ///
    /// `perm` must be a permutation of 0..m.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Design> {
        check_permutation(perm, self.m as usize, "column")?;
        let rows = self
            .rows
            .iter()
            .map(|row| perm.iter().map(|&j| row[j]).collect())
            .collect();
        Ok(Design { rows, m: self.m })
    }

    /// Multiplies column j by `signs[j]` for every column.
    ///
    /// # Errors
    ///
    /// `signs` must have one ±1 entry per column.
    pub fn switch_signs(&self, signs: &[i8]) -> Result<Design> {
        if signs.len() != self.m as usize {
            return Err(Error::ShapeMismatch(format!(
                "{} signs supplied for {} columns",
                signs.len(),
                self.m
            )));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParams("column signs must be -1 or 1".into()));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().zip(signs).map(|(&e, &s)| e * s).collect())
            .collect();
        Ok(Design { rows, m: self.m })
    }
}

fn check_permutation(perm: &[usize], len: usize, what: &str) -> Result<()> {
    if perm.len() != len {
        return Err(Error::ShapeMismatch(format!(
            "{what} permutation has length {}, expected {len}",
            perm.len()
        )));
    }
    let mut seen = vec![false; len];
    for &i in perm {
        if i >= len || seen[i] {
            return Err(Error::InvalidParams(format!(
                "{what} permutation is not a bijection on 0..{len}"
            )));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Counting vector of a design: slot s holds how many rows equal the run
/// row of s. Length 2^m; entries are nonnegative and sum to n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NVector {
    counts: Vec<i64>,
    m: u32,
}

impl NVector {
    /// Wraps explicit counts, validating length and nonnegativity.
    ///
    /// # Errors
    ///
    /// Rejects an unsupported `m`, a length other than 2^m, or a negative
    /// count.
    pub fn new(counts: Vec<i64>, m: u32) -> Result<Self> {
        check_m(m)?;
        if counts.len() != 1usize << m {
            return Err(Error::ShapeMismatch(format!(
                "counting vector has {} slots, expected 2^{m}",
                counts.len()
            )));
        }
        if let Some(idx) = counts.iter().position(|&c| c < 0) {
            return Err(Error::InvalidParams(format!(
                "count for subset mask {idx} is negative"
            )));
        }
        Ok(NVector { counts, m })
    }

    /// Count for one subset.
    #[must_use]
    pub fn count(&self, s: SubsetIndex) -> i64 {
        self.counts[s.mask() as usize]
    }

    /// All counts in Yates order.
    #[must_use]
    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// Column count.
    #[must_use]
    pub const fn m(&self) -> u32 {
        self.m
    }

    /// Total number of runs (the design's n).
    #[must_use]
    pub fn total(&self) -> i64 {
        self.counts.iter().sum()
    }
}

/// Full J-characteristic vector of a design, indexed by subset in Yates
/// order. Slot 0 (the empty subset) always holds n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JFull {
    values: Vec<i64>,
    m: u32,
}

impl JFull {
    /// Wraps explicit values, validating only the length.
    ///
    /// # Errors
    ///
    /// Rejects an unsupported `m` or a length other than 2^m.
    pub fn new(values: Vec<i64>, m: u32) -> Result<Self> {
        check_m(m)?;
        if values.len() != 1usize << m {
            return Err(Error::ShapeMismatch(format!(
                "J-vector has {} slots, expected 2^{m}",
                values.len()
            )));
        }
        Ok(JFull { values, m })
    }

    /// J-characteristic of one column subset.
    #[must_use]
    pub fn value(&self, t: SubsetIndex) -> i64 {
        self.values[t.mask() as usize]
    }

    /// All values in Yates order.
    #[must_use]
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Column count.
    #[must_use]
    pub const fn m(&self) -> u32 {
        self.m
    }

    /// The run count n, i.e. the empty-subset characteristic.
    #[must_use]
    pub fn n(&self) -> i64 {
        self.values[0]
    }
}

/// Tallies the rows of a design into its counting vector.
#[must_use]
pub fn n_vector(design: &Design) -> NVector {
    let mut counts = vec![0i64; 1usize << design.m];
    for row in &design.rows {
        let mut mask = 0u32;
        for (j, &e) in row.iter().enumerate() {
            if e == -1 {
                mask |= 1 << j;
            }
        }
        counts[mask as usize] += 1;
    }
    NVector {
        counts,
        m: design.m,
    }
}

/// In-place natural Hadamard (Walsh) transform: butterfly passes over each
/// bit position, 2^m · m additions total. Overflow is checked; under the
/// crate's m and n caps it cannot fire.
fn transform_in_place(values: &mut [i64]) {
    let len = values.len();
    let mut h = 1;
    while h < len {
        for block in values.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for i in 0..h {
                let a = lo[i];
                let b = hi[i];
                lo[i] = a.checked_add(b).expect("Hadamard transform overflowed i64");
                hi[i] = a.checked_sub(b).expect("Hadamard transform overflowed i64");
            }
        }
        h *= 2;
    }
}

/// Transforms a counting vector into the full J-vector.
#[must_use]
pub fn j_full(nv: &NVector) -> JFull {
    let mut values = nv.counts.clone();
    transform_in_place(&mut values);
    JFull { values, m: nv.m }
}

/// Inverts a J-vector back to a counting vector: one more transform plus an
/// exact division by 2^m. This is the feasibility test for candidate
/// J-vectors.
///
/// # Errors
///
/// Returns [`Error::InfeasibleJ`] naming the first run whose count would be
/// negative or fractional.
pub fn n_from_j(j: &JFull) -> Result<NVector> {
    let mut values = j.values.clone();
    transform_in_place(&mut values);
    let denominator = 1i64 << j.m;
    let mut counts = Vec::with_capacity(values.len());
    for (mask, v) in values.iter().enumerate() {
        if v % denominator != 0 || *v < 0 {
            return Err(Error::InfeasibleJ {
                subset: mask as u32,
                numerator: *v,
                denominator,
            });
        }
        counts.push(v / denominator);
    }
    Ok(NVector { counts, m: j.m })
}

/// Strength of a design: the largest d such that every nonempty column
/// subset of size at most d has a zero J-characteristic. Ranges from 0 (some
/// single column is unbalanced) to m (the design is a stack of full
/// factorials).
#[must_use]
pub fn strength(design: &Design) -> u32 {
    strength_of_j(&j_full(&n_vector(design)))
}

pub(crate) fn strength_of_j(j: &JFull) -> u32 {
    let mut min_nonzero_card = j.m + 1;
    for mask in 1..j.values.len() {
        if j.values[mask] != 0 {
            min_nonzero_card = min_nonzero_card.min((mask as u32).count_ones());
        }
    }
    min_nonzero_card - 1
}

/// What a single parity violation broke.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityRequirement {
    /// J(t) must be an integer multiple of 2^d; `value` is J(t).
    MultipleOfStrengthPower,
    /// The quotient μ(t) = J(t) / 2^d must be even; `value` is μ(t).
    EvenQuotient,
    /// The quotient μ(t) = J(t) / 2^d must be odd; `value` is μ(t).
    OddQuotient,
}

impl std::fmt::Display for ParityRequirement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParityRequirement::MultipleOfStrengthPower => {
                write!(f, "must be a multiple of 2^d")
            }
            ParityRequirement::EvenQuotient => write!(f, "quotient must be even"),
            ParityRequirement::OddQuotient => write!(f, "quotient must be odd"),
        }
    }
}

/// One subset that failed a parity requirement.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParityViolation {
    pub subset: SubsetIndex,
    pub requirement: ParityRequirement,
    /// J(t) for divisibility failures, μ(t) for quotient-parity failures.
    pub value: i64,
}

/// Outcome of the divisibility/parity screen of a J-vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParityReport {
    /// μ(t) = J(t) / 2^d per subset, `None` where the division is inexact.
    pub mu: Vec<Option<i64>>,
    pub violations: Vec<ParityViolation>,
}

impl ParityReport {
    /// True when every requirement held.
    #[must_use]
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Screens a J-vector against the divisibility and quotient-parity laws
/// that every strength-d array obeys:
///
/// * every J(t) is a multiple of 2^d;
/// * λ even: every quotient μ(t) is even;
/// * λ odd, d even: μ(t) is odd for |t| ∈ {d+1, d+2};
/// * λ odd, d odd: μ(t) is odd for |t| = d+1 and even for |t| = d+2.
///
/// The caller asserts that the underlying design has strength ≥ d; the
/// screen itself does not re-derive strength. Works for any column count —
/// subset sizes that do not occur are simply not constrained.
#[must_use]
pub fn check_parity(j: &JFull, params: &ArrayParams) -> ParityReport {
    let d = params.d();
    let lambda_even = params.lambda().is_multiple_of(2);
    let d_even = d.is_multiple_of(2);
    let divisor = 1i64 << d;
    let mut mu = Vec::with_capacity(j.values.len());
    let mut violations = Vec::new();
    for (mask, &v) in j.values.iter().enumerate() {
        let t = SubsetIndex::from_mask(mask as u32);
        if v % divisor != 0 {
            mu.push(None);
            violations.push(ParityViolation {
                subset: t,
                requirement: ParityRequirement::MultipleOfStrengthPower,
                value: v,
            });
            continue;
        }
        let q = v / divisor;
        mu.push(Some(q));
        let card = t.card();
        let required = if lambda_even {
            Some(ParityRequirement::EvenQuotient)
        } else if card == d + 1 {
            Some(ParityRequirement::OddQuotient)
        } else if card == d + 2 {
            if d_even {
                Some(ParityRequirement::OddQuotient)
            } else {
                Some(ParityRequirement::EvenQuotient)
            }
        } else {
            None
        };
        match required {
            Some(ParityRequirement::EvenQuotient) if q % 2 != 0 => {
                violations.push(ParityViolation {
                    subset: t,
                    requirement: ParityRequirement::EvenQuotient,
                    value: q,
                });
            }
            Some(ParityRequirement::OddQuotient) if q % 2 == 0 => {
                violations.push(ParityViolation {
                    subset: t,
                    requirement: ParityRequirement::OddQuotient,
                    value: q,
                });
            }
            _ => {}
        }
    }
    ParityReport { mu, violations }
}

/// One magnitude-bound failure found by [`check_pair_bound`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundViolation {
    /// Two subsets whose symmetric difference has between 1 and d columns
    /// must have |J| values summing to at most n.
    PairSum {
        t1: SubsetIndex,
        t2: SubsetIndex,
        sum: i64,
        limit: i64,
    },
    /// For d = 2 and odd λ, a proper nonempty subset can never reach the
    /// full magnitude n; the cap is n − 4.
    ProperSubsetCap {
        t: SubsetIndex,
        value: i64,
        limit: i64,
    },
}

/// Checks the pairwise magnitude bound: for every pair of subsets whose
/// symmetric difference has between 1 and d columns, |J(t1)| + |J(t2)| ≤ n.
/// For d = 2 with λ odd it additionally flags any proper nonempty subset
/// whose magnitude exceeds n − 4.
///
/// # Errors
///
/// The bound presumes strength ≥ d, which is re-derived from the J-vector;
/// an input of lower strength is refused with
/// [`Error::InsufficientStrength`].
pub fn check_pair_bound(j: &JFull, d: u32) -> Result<Vec<BoundViolation>> {
    let actual = strength_of_j(j);
    if actual < d {
        return Err(Error::InsufficientStrength {
            required: d,
            actual,
        });
    }
    let m = j.m;
    let n = j.n();
    let size = 1u32 << m;
    let mut violations = Vec::new();
    // Enumerate unordered pairs as (t, t ^ delta) over all nonzero deltas
    // with at most d bits; t < t ^ delta dedupes each pair.
    for delta in 1..size {
        if delta.count_ones() > d {
            continue;
        }
        for t1 in 0..size {
            let t2 = t1 ^ delta;
            if t1 >= t2 {
                continue;
            }
            let sum = j.values[t1 as usize]
                .abs()
                .checked_add(j.values[t2 as usize].abs())
                .expect("pair-bound sum overflowed i64");
            if sum > n {
                violations.push(BoundViolation::PairSum {
                    t1: SubsetIndex::from_mask(t1),
                    t2: SubsetIndex::from_mask(t2),
                    sum,
                    limit: n,
                });
            }
        }
    }
    if d == 2 && (n / 4) % 2 == 1 {
        let limit = n - 4;
        for t in 1..size - 1 {
            let value = j.values[t as usize].abs();
            if value > limit {
                violations.push(BoundViolation::ProperSubsetCap {
                    t: SubsetIndex::from_mask(t),
                    value,
                    limit,
                });
            }
        }
    }
    Ok(violations)
}
