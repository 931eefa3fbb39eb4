//! Subset indexing in Yates order and the implicit ±1 sign kernel.
//!
//! Columns of an n × m array are labelled 1..=m. A subset of column labels
//! is packed into a bitmask — label j occupies bit j − 1 — and the integer
//! value of that mask is the subset's rank in Yates order: ∅ = 0, {1} = 1,
//! {2} = 2, {1,2} = 3, and so on up to the full set at 2^m − 1.
//!
//! Two derived objects drive everything else in this crate:
//!
//! * the *run row* of a subset s, the ±1 row of length m holding −1 exactly
//!   in the columns named by s (the rows of the full 2^m factorial in Yates
//!   order are the run rows of all subsets in mask order), and
//! * the *sign kernel* h(s, t) = (−1)^|s ∩ t|, the entry of the natural
//!   2^m × 2^m Hadamard matrix at positions (s, t).
//!
//! The kernel entry equals the product of the run row of s over the columns
//! in t, and it is evaluated directly from the two masks, so the Hadamard
//! matrix itself is never materialized.

use crate::error::{Error, Result};

/// Largest supported column count. Counting vectors are dense with 2^m
/// slots, so this cap keeps memory use sane.
pub const MAX_M: u32 = 30;

/// Smallest supported column count.
pub const MIN_M: u32 = 2;

/// A subset of the column labels 1..=m, stored as a bitmask in Yates order.
///
/// The mask value is the subset's Yates rank, so `SubsetIndex` doubles as an
/// index into counting and J-characteristic vectors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SubsetIndex(u32);

impl SubsetIndex {
    /// The empty subset (Yates rank 0).
    pub const EMPTY: SubsetIndex = SubsetIndex(0);

    /// Wraps a raw bitmask.
    #[must_use]
    pub const fn from_mask(mask: u32) -> Self {
        SubsetIndex(mask)
    }

    /// The full set {1, …, m}.
    #[must_use]
    pub const fn full(m: u32) -> Self {
        SubsetIndex(((1u64 << m) - 1) as u32)
    }

    /// The underlying bitmask / Yates rank.
    #[must_use]
    pub const fn mask(self) -> u32 {
        self.0
    }

    /// Number of elements in the subset.
    #[must_use]
    pub const fn card(self) -> u32 {
        self.0.count_ones()
    }

    /// Whether the 1-based column label is a member.
    #[must_use]
    pub const fn contains(self, label: u32) -> bool {
        label >= 1 && label <= 32 && self.0 & (1 << (label - 1)) != 0
    }

    /// Symmetric difference with another subset.
    #[must_use]
    pub const fn symmetric_difference(self, other: Self) -> Self {
        SubsetIndex(self.0 ^ other.0)
    }

    /// Member labels in ascending order.
    pub fn labels(self) -> impl Iterator<Item = u32> {
        (1..=32u32).filter(move |j| self.contains(*j))
    }
}

/// The ±1 row of length `m` associated with subset `s`: −1 in the columns
/// named by `s`, +1 elsewhere.
///
/// # Errors
///
/// Rejects a column count outside [`MIN_M`], [`MAX_M`] or a mask with bits
/// above `m`.
pub fn run_row(s: SubsetIndex, m: u32) -> Result<Vec<i8>> {
    check_m(m)?;
    if s.mask() >= (1u32 << m) {
        return Err(Error::InvalidParams(format!(
            "subset mask {} has labels above the column count {m}",
            s.mask()
        )));
    }
    Ok((1..=m)
        .map(|j| if s.contains(j) { -1 } else { 1 })
        .collect())
}

/// Entry of the natural Hadamard matrix at `(s, t)`: (−1)^|s ∩ t|.
///
/// Equivalently, the product of the run row of `s` over the columns in `t`.
#[must_use]
pub const fn hadamard_entry(s: SubsetIndex, t: SubsetIndex) -> i64 {
    if (s.0 & t.0).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub(crate) fn check_m(m: u32) -> Result<()> {
    if !(MIN_M..=MAX_M).contains(&m) {
        return Err(Error::InvalidParams(format!(
            "column count {m} outside the supported range {MIN_M}..={MAX_M}"
        )));
    }
    Ok(())
}

/// Run count cap: every |J| is bounded by n, and the in-place transform adds
/// up to 2^m of them, so keeping n below 2^30 makes 64-bit overflow
/// impossible for all supported m.
pub const MAX_N: u64 = 1 << 30;

/// Joint parity of the strength d and the index λ.
///
/// The feasible J-characteristic patterns split into four regimes along
/// these two parities, so the pair is carried around as a first-class label.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityClass {
    EvenStrengthOddIndex,
    EvenStrengthEvenIndex,
    OddStrengthOddIndex,
    OddStrengthEvenIndex,
}

impl ParityClass {
    /// Human-readable label used by the command line output.
    #[must_use]
    pub const fn label(self) -> &'static str {
        match self {
            ParityClass::EvenStrengthOddIndex => "even strength, odd index",
            ParityClass::EvenStrengthEvenIndex => "even strength, even index",
            ParityClass::OddStrengthOddIndex => "odd strength, odd index",
            ParityClass::OddStrengthEvenIndex => "odd strength, even index",
        }
    }
}

/// Parameters of the array family under study: strength `d`, index `λ`,
/// column count `m = d + 2`, and run count `n = λ · 2^d`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ArrayParams {
    d: u32,
    lambda: u32,
    m: u32,
    n: u64,
}

impl ArrayParams {
    /// Validates and derives the family parameters from strength and index.
    ///
    /// # Errors
    ///
    /// Requires d ≥ 2, λ ≥ 1, d + 2 ≤ [`MAX_M`], and λ · 2^d ≤ [`MAX_N`].
    pub fn new(d: u32, lambda: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!(
                "strength {d} is below the supported minimum of 2"
            )));
        }
        if lambda == 0 {
            return Err(Error::InvalidParams("index must be at least 1".into()));
        }
        let m = d + 2;
        check_m(m)?;
        let n = (lambda as u64) << d;
        if n > MAX_N {
            return Err(Error::InvalidParams(format!(
                "run count {n} exceeds the supported maximum {MAX_N}"
            )));
        }
        Ok(ArrayParams { d, lambda, m, n })
    }

    /// Derives the parameters from a run count and column count, inferring
    /// d = m − 2 and λ = n / 2^d.
    ///
    /// # Errors
    ///
    /// Fails when n is not a positive multiple of 2^(m−2), or when the
    /// derived (d, λ) fall outside the supported range.
    pub fn from_n_m(n: u64, m: u32) -> Result<Self> {
        check_m(m)?;
        let d = m - 2;
        if n == 0 || !n.is_multiple_of(1u64 << d) {
            return Err(Error::InvalidParams(format!(
                "run count {n} is not a positive multiple of 2^{d}"
            )));
        }
        let lambda = n >> d;
        let lambda = u32::try_from(lambda)
            .map_err(|_| Error::InvalidParams(format!("index {lambda} is too large")))?;
        Self::new(d, lambda)
    }

    /// Strength of the arrays in this family.
    #[must_use]
    pub const fn d(&self) -> u32 {
        self.d
    }

    /// Index λ = n / 2^d.
    #[must_use]
    pub const fn lambda(&self) -> u32 {
        self.lambda
    }

    /// Column count, always d + 2.
    #[must_use]
    pub const fn m(&self) -> u32 {
        self.m
    }

    /// Run count, always λ · 2^d.
    #[must_use]
    pub const fn n(&self) -> u64 {
        self.n
    }

    /// Half the index, available exactly when λ is even.
    #[must_use]
    pub const fn lambda_star(&self) -> Option<u32> {
        if self.lambda.is_multiple_of(2) {
            Some(self.lambda / 2)
        } else {
            None
        }
    }

    /// Joint parity regime of (d, λ).
    #[must_use]
    pub const fn parity_class(&self) -> ParityClass {
        match (self.d.is_multiple_of(2), self.lambda.is_multiple_of(2)) {
            (true, false) => ParityClass::EvenStrengthOddIndex,
            (true, true) => ParityClass::EvenStrengthEvenIndex,
            (false, false) => ParityClass::OddStrengthOddIndex,
            (false, true) => ParityClass::OddStrengthEvenIndex,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_follow_yates_order() {
        // ∅, {1}, {2}, {1,2}, {3}, ...
        assert_eq!(SubsetIndex::EMPTY.mask(), 0);
        assert_eq!(SubsetIndex::from_mask(1).labels().collect::<Vec<_>>(), [1]);
        assert_eq!(SubsetIndex::from_mask(2).labels().collect::<Vec<_>>(), [2]);
        assert_eq!(
            SubsetIndex::from_mask(3).labels().collect::<Vec<_>>(),
            [1, 2]
        );
        assert_eq!(SubsetIndex::from_mask(4).labels().collect::<Vec<_>>(), [3]);
        assert_eq!(SubsetIndex::full(4).mask(), 0b1111);
        assert_eq!(SubsetIndex::full(4).card(), 4);
    }

    #[test]
    fn run_row_places_minus_one_on_members() {
        // s = {1, 3} in a 4-column array.
        let s = SubsetIndex::from_mask(0b0101);
        assert_eq!(run_row(s, 4).unwrap(), vec![-1, 1, -1, 1]);
        assert_eq!(run_row(SubsetIndex::EMPTY, 4).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(
            run_row(SubsetIndex::full(4), 4).unwrap(),
            vec![-1, -1, -1, -1]
        );
    }

    #[test]
    fn run_row_rejects_bad_shapes() {
        assert!(run_row(SubsetIndex::EMPTY, 1).is_err());
        assert!(run_row(SubsetIndex::EMPTY, MAX_M + 1).is_err());
        // Mask names label 5 but m = 4.
        assert!(run_row(SubsetIndex::from_mask(0b10000), 4).is_err());
    }

    #[test]
    fn all_run_rows_of_a_full_factorial_are_distinct() {
        let m = 3;
        let rows: Vec<_> = (0..1u32 << m)
            .map(|mask| run_row(SubsetIndex::from_mask(mask), m).unwrap())
            .collect();
        for (i, a) in rows.iter().enumerate() {
            for b in rows.iter().skip(i + 1) {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn kernel_is_symmetric() {
        for m in [2u32, 3, 5] {
            for s in 0..1u32 << m {
                for t in 0..1u32 << m {
                    let s = SubsetIndex::from_mask(s);
                    let t = SubsetIndex::from_mask(t);
                    assert_eq!(hadamard_entry(s, t), hadamard_entry(t, s));
                }
            }
        }
    }

    #[test]
    fn kernel_rows_are_orthogonal_up_to_m_8() {
        for m in [2u32, 4, 8] {
            let size = 1u32 << m;
            for t1 in 0..size {
                for t2 in 0..size {
                    let dot: i64 = (0..size)
                        .map(|s| {
                            let s = SubsetIndex::from_mask(s);
                            hadamard_entry(s, SubsetIndex::from_mask(t1))
                                * hadamard_entry(s, SubsetIndex::from_mask(t2))
                        })
                        .sum();
                    let expected = if t1 == t2 { i64::from(size) } else { 0 };
                    assert_eq!(
                        dot, expected,
                        "m={m} t1={t1} t2={t2}: kernel rows not orthogonal"
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_entry_matches_run_row_product() {
        // h(s, t) must equal the product of the run row of s over the
        // columns named by t.
        for m in [2u32, 4, 6] {
            for s in 0..1u32 << m {
                let s = SubsetIndex::from_mask(s);
                let row = run_row(s, m).unwrap();
                for t in 0..1u32 << m {
                    let t = SubsetIndex::from_mask(t);
                    let prod: i64 = t
                        .labels()
                        .map(|j| i64::from(row[(j - 1) as usize]))
                        .product();
                    assert_eq!(hadamard_entry(s, t), prod);
                }
            }
        }
    }

    #[test]
    fn params_derive_counts_and_parity() {
        let p = ArrayParams::new(2, 3).unwrap();
        assert_eq!((p.d(), p.lambda(), p.m(), p.n()), (2, 3, 4, 12));
        assert_eq!(p.lambda_star(), None);
        assert_eq!(p.parity_class(), ParityClass::EvenStrengthOddIndex);

        let p = ArrayParams::new(3, 4).unwrap();
        assert_eq!((p.d(), p.lambda(), p.m(), p.n()), (3, 4, 5, 32));
        assert_eq!(p.lambda_star(), Some(2));
        assert_eq!(p.parity_class(), ParityClass::OddStrengthEvenIndex);
    }

    #[test]
    fn params_reject_out_of_range_inputs() {
        assert!(ArrayParams::new(1, 3).is_err());
        assert!(ArrayParams::new(2, 0).is_err());
        // m = d + 2 would exceed the cap.
        assert!(ArrayParams::new(MAX_M - 1, 1).is_err());
        // n = λ 2^d would exceed the cap.
        assert!(ArrayParams::new(28, 5).is_err());
    }

    #[test]
    fn params_from_run_and_column_counts() {
        let p = ArrayParams::from_n_m(52, 4).unwrap();
        assert_eq!((p.d(), p.lambda()), (2, 13));
        assert!(ArrayParams::from_n_m(50, 4).is_err());
        assert!(ArrayParams::from_n_m(0, 4).is_err());
    }
}
