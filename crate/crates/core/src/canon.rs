//! Shortened J-vectors and the canonical representative of an isomorphism
//! class.
//!
//! For a strength-d array with m = d + 2 columns, every J-characteristic on
//! d or fewer columns vanishes, so the whole J-vector is pinned down by the
//! m + 1 values on the subsets of size m − 1 and m. This module fixes, once
//! and for all, the order in which those slots are read:
//!
//! ```text
//!     slot j (1 ≤ j ≤ m):  all columns except m + 1 − j
//!     slot m + 1:          all m columns
//! ```
//!
//! so slot 1 omits the last column, slot m omits the first, and the full
//! set comes last.
//!
//! Isomorphism (column permutation + column sign switching; row order never
//! matters because J-characteristics are row-order free) acts on the
//! shortened vector very simply: a column permutation permutes slots 1..m
//! arbitrarily and fixes slot m+1, while a sign switch multiplies each slot
//! by an induced ±1 sign. Those induced signs are not free: each is the
//! product of the switched column signs over the slot's subset, which works
//! out to `induced[j] = P · δ(m+1−j)` for j ≤ m and `induced[m+1] = P`,
//! where P is the product of all column signs. Consequently the product of
//! all m+1 induced signs is +1 when m is even, and the product of the first
//! m is +1 when m is odd — one slot is always forced by the others.
//! [`solve_signs`] inverts that relation in O(m) instead of searching the
//! 2^m switch vectors.
//!
//! [`canonicalize`] picks the orbit representative with every slot driven
//! nonpositive except the single slot the forced sign lands on, then sorts
//! what a column permutation is free to sort. Two arrays are isomorphic
//! exactly when their canonical vectors are equal.

use crate::error::{Error, Result};
use crate::jchar::{j_full, n_vector, strength_of_j, Design, JFull};
use crate::subsets::SubsetIndex;

/// The m + 1 informative J-characteristics of a strength-d array with
/// m = d + 2 columns, in the slot order fixed by this module.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct JShort {
    entries: Vec<i64>,
    m: u32,
}

impl JShort {
    /// Wraps explicit entries; `entries.len()` must be m + 1.
    ///
    /// # Errors
    ///
    /// Rejects a length mismatch or an unsupported column count.
    pub fn new(entries: Vec<i64>, m: u32) -> Result<Self> {
        crate::subsets::check_m(m)?;
        if entries.len() != m as usize + 1 {
            return Err(Error::ShapeMismatch(format!(
                "shortened J-vector has {} slots, expected {}",
                entries.len(),
                m + 1
            )));
        }
        Ok(JShort { entries, m })
    }

    /// The column subsets read by slots 1..=m+1, in slot order.
    #[must_use]
    pub fn subsets(m: u32) -> Vec<SubsetIndex> {
        let full = SubsetIndex::full(m);
        let mut out: Vec<SubsetIndex> = (1..=m)
            .map(|j| SubsetIndex::from_mask(full.mask() ^ (1 << (m - j))))
            .collect();
        out.push(full);
        out
    }

    /// Extracts the shortened vector from a full J-vector.
    #[must_use]
    pub fn from_full(j: &JFull) -> JShort {
        let entries = Self::subsets(j.m()).iter().map(|&t| j.value(t)).collect();
        JShort { entries, m: j.m() }
    }

    /// Expands back to a full J-vector with run count `n`: zero everywhere
    /// except the empty set (n) and the m + 1 tracked slots.
    #[must_use]
    pub fn to_full(&self, n: i64) -> JFull {
        let mut values = vec![0i64; 1usize << self.m];
        values[0] = n;
        for (slot, &t) in Self::subsets(self.m).iter().enumerate() {
            values[t.mask() as usize] = self.entries[slot];
        }
        JFull::new(values, self.m).expect("slot count is consistent by construction")
    }

    /// Slot values in slot order.
    #[must_use]
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Column count m (the vector has m + 1 slots).
    #[must_use]
    pub const fn m(&self) -> u32 {
        self.m
    }
}

/// A column sign switch together with the ±1 signs it induces on the
/// shortened slots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignAssignment {
    delta: Vec<i8>,
    induced: Vec<i8>,
}

impl SignAssignment {
    /// Builds the assignment induced by explicit column signs.
    ///
    /// # Errors
    ///
    /// Every sign must be ±1 and the column count supported.
    pub fn from_delta(delta: Vec<i8>) -> Result<SignAssignment> {
        crate::subsets::check_m(delta.len() as u32)?;
        if delta.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParams("column signs must be -1 or 1".into()));
        }
        let induced = induced_of(&delta);
        Ok(SignAssignment { delta, induced })
    }

    /// Per-column signs δ(1), …, δ(m).
    #[must_use]
    pub fn delta(&self) -> &[i8] {
        &self.delta
    }

    /// Signs picked up by shortened slots 1..=m+1.
    #[must_use]
    pub fn induced(&self) -> &[i8] {
        &self.induced
    }
}

/// Induced slot signs of a column switch, computed from first principles:
/// slot j ≤ m is the product over every column except m + 1 − j, slot m + 1
/// over all columns.
fn induced_of(delta: &[i8]) -> Vec<i8> {
    let m = delta.len();
    let mut out = Vec::with_capacity(m + 1);
    for j in 1..=m {
        let skipped = m - j;
        out.push(
            delta
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skipped)
                .map(|(_, &d)| d)
                .product(),
        );
    }
    out.push(delta.iter().product());
    out
}

/// Finds the column signs whose induced slot signs hit the requested
/// targets. Exactly one slot must be left unconstrained (`None`); its sign
/// is forced by the others and reported in the result.
///
/// For even m any slot may float. For odd m the floating slot must be one
/// of the first m: the last slot's sign is the product of all column signs,
/// which the first m constraints already pin down.
///
/// # Errors
///
/// Rejects target vectors without exactly one `None`, with non-±1 values,
/// of unsupported length, or (odd m) with the `None` on the last slot.
pub fn solve_signs(targets: &[Option<i8>]) -> Result<SignAssignment> {
    if targets.is_empty() {
        return Err(Error::ShapeMismatch("empty sign-target vector".into()));
    }
    let m = (targets.len() - 1) as u32;
    crate::subsets::check_m(m)?;
    for t in targets.iter().flatten() {
        if *t != 1 && *t != -1 {
            return Err(Error::InvalidParams("sign targets must be -1 or 1".into()));
        }
    }
    let floats: Vec<usize> = targets
        .iter()
        .enumerate()
        .filter_map(|(i, t)| t.is_none().then_some(i))
        .collect();
    let &[float] = floats.as_slice() else {
        return Err(Error::InvalidParams(format!(
            "exactly one slot must be unconstrained, found {}",
            floats.len()
        )));
    };
    let last = m as usize;
    if m % 2 == 1 && float == last {
        return Err(Error::UnsupportedDrop {
            m,
            position: last + 1,
        });
    }
    let mut induced: Vec<i8> = targets.iter().map(|t| t.unwrap_or(1)).collect();
    induced[float] = if float == last {
        // Even m: the product of all m + 1 slot signs is +1.
        induced[..last].iter().product()
    } else if m.is_multiple_of(2) {
        targets
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != float)
            .map(|(_, t)| t.unwrap())
            .product()
    } else {
        // Odd m: the product of the first m slot signs is +1.
        induced[..last]
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != float)
            .map(|(_, &s)| s)
            .product()
    };
    // Invert: δ(i) = P · induced(m + 1 − i), with P the sign of the last slot.
    let p = induced[last];
    let delta: Vec<i8> = (1..=last).map(|i| p * induced[last - i]).collect();
    debug_assert_eq!(induced_of(&delta), induced, "sign solve is inconsistent");
    Ok(SignAssignment { delta, induced })
}

/// Canonical shortened J-vector: the distinguished representative of an
/// isomorphism class. Two arrays (of the same shape and strength) are
/// isomorphic exactly when their canonical vectors are equal.
///
/// The invariant shape, writing the slots as e(1), …, e(m+1):
///
/// * m even, exactly one of:
///   - e(1) ≤ … ≤ e(m) ≤ −|e(m+1)|,
///   - e(1) ≤ … ≤ e(m−1) ≤ −|e(m)| and e(m+1) < −|e(m)|;
/// * m odd: e(1) ≤ … ≤ e(m−1) ≤ −|e(m)| and e(m+1) ≤ 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct JStar {
    entries: Vec<i64>,
    m: u32,
}

impl JStar {
    /// Wraps entries that are already in canonical form.
    ///
    /// # Errors
    ///
    /// Rejects a shape mismatch or entries violating the invariant above.
    pub fn new(entries: Vec<i64>, m: u32) -> Result<Self> {
        crate::subsets::check_m(m)?;
        if entries.len() != m as usize + 1 {
            return Err(Error::ShapeMismatch(format!(
                "canonical J-vector has {} slots, expected {}",
                entries.len(),
                m + 1
            )));
        }
        if !canonical_form_holds(&entries, m as usize) {
            return Err(Error::InvalidParams(format!(
                "entries {entries:?} are not in canonical form"
            )));
        }
        Ok(JStar { entries, m })
    }

    /// Slot values in slot order.
    #[must_use]
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Column count m.
    #[must_use]
    pub const fn m(&self) -> u32 {
        self.m
    }

    /// Reinterprets the canonical vector as a plain shortened vector.
    #[must_use]
    pub fn as_short(&self) -> JShort {
        JShort {
            entries: self.entries.clone(),
            m: self.m,
        }
    }

    pub(crate) fn from_canonical_entries(entries: Vec<i64>, m: u32) -> JStar {
        debug_assert!(
            canonical_form_holds(&entries, m as usize),
            "entries {entries:?} are not canonical"
        );
        JStar { entries, m }
    }
}

fn canonical_form_holds(e: &[i64], m: usize) -> bool {
    let ascending = |k: usize| e[..k].windows(2).all(|w| w[0] <= w[1]);
    if m.is_multiple_of(2) {
        let whole_head = ascending(m) && e[m - 1] <= -e[m].abs();
        let split_head = ascending(m - 1) && e[m - 2] <= -e[m - 1].abs() && e[m] < -e[m - 1].abs();
        whole_head ^ split_head
    } else {
        ascending(m - 1) && e[m - 2] <= -e[m - 1].abs() && e[m] <= 0
    }
}

/// Reads the shortened J-vector off an explicit array, verifying that the
/// array has m = d + 2 columns and strength at least d.
///
/// # Errors
///
/// [`Error::ShapeMismatch`] when the column count is not d + 2;
/// [`Error::InsufficientStrength`] when the strength premise fails.
pub fn short_j(design: &Design, d: u32) -> Result<JShort> {
    if design.m() != d + 2 {
        return Err(Error::ShapeMismatch(format!(
            "design has {} columns, expected d + 2 = {}",
            design.m(),
            d + 2
        )));
    }
    let j = j_full(&n_vector(design));
    let actual = strength_of_j(&j);
    if actual < d {
        return Err(Error::InsufficientStrength {
            required: d,
            actual,
        });
    }
    Ok(JShort::from_full(&j))
}

/// Canonicalizes a shortened J-vector.
///
/// One slot's sign is always forced (see [`solve_signs`]). The slot chosen
/// to absorb the forced sign is the one of smallest magnitude: when m is
/// even and the last slot is minimal it absorbs it in place; otherwise the
/// minimal head slot (smallest index on ties) absorbs it and moves to
/// position m, where the invariant lets it keep either sign. Every other
/// slot is driven nonpositive and the freely permutable head is sorted.
#[must_use]
pub fn canonicalize(js: &JShort) -> JStar {
    let m = js.m as usize;
    let e = js.entries();
    let nonpositive = |v: i64| -> i8 {
        if v > 0 {
            -1
        } else {
            1
        }
    };
    let min_head = e[..m].iter().map(|v| v.abs()).min().expect("m >= 2");
    let float = if js.m.is_multiple_of(2) && e[m].abs() <= min_head {
        m
    } else {
        e[..m]
            .iter()
            .position(|v| v.abs() == min_head)
            .expect("a minimum exists")
    };
    let targets: Vec<Option<i8>> = e
        .iter()
        .enumerate()
        .map(|(i, &v)| (i != float).then(|| nonpositive(v)))
        .collect();
    let signs = solve_signs(&targets).expect("one slot floats by construction");
    let flipped: Vec<i64> = e
        .iter()
        .zip(signs.induced())
        .map(|(&v, &s)| v * i64::from(s))
        .collect();
    let mut entries: Vec<i64>;
    if float == m {
        entries = flipped[..m].to_vec();
        entries.sort_unstable();
        entries.push(flipped[m]);
    } else {
        entries = (0..m).filter(|&i| i != float).map(|i| flipped[i]).collect();
        entries.sort_unstable();
        entries.push(flipped[float]);
        entries.push(flipped[m]);
    }
    JStar::from_canonical_entries(entries, js.m)
}

/// Whether two arrays of the same shape are isomorphic as strength-d
/// arrays: equal canonical J-vectors.
///
/// # Errors
///
/// [`Error::ShapeMismatch`] unless both are n × (d+2) for the same n;
/// [`Error::InsufficientStrength`] if either has strength below d.
pub fn isomorphic(a: &Design, b: &Design, d: u32) -> Result<bool> {
    if a.m() != b.m() || a.n() != b.n() {
        return Err(Error::ShapeMismatch(format!(
            "cannot compare a {}x{} design with a {}x{} design",
            a.n(),
            a.m(),
            b.n(),
            b.m()
        )));
    }
    Ok(canonicalize(&short_j(a, d)?) == canonicalize(&short_j(b, d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::run_row;

    /// Expands a counting vector into an explicit design.
    fn design_from_counts(counts: &[i64], m: u32) -> Design {
        let mut rows = Vec::new();
        for (mask, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                rows.push(run_row(SubsetIndex::from_mask(mask as u32), m).unwrap());
            }
        }
        Design::new(rows, m).unwrap()
    }

    /// The unique 12-run strength-2 array on 4 columns.
    fn twelve_run_design() -> Design {
        let counts: Vec<i64> = (0u32..16)
            .map(|mask| match mask.count_ones() {
                0 | 3 => 0,
                1 | 2 => 1,
                _ => 2,
            })
            .collect();
        design_from_counts(&counts, 4)
    }

    /// 8-run design defined by forcing the product of columns 1..3 to −1,
    /// column 4 free.
    fn eight_run_word_design() -> Design {
        let counts: Vec<i64> = (0u32..16)
            .map(|mask| i64::from((mask & 0b0111).count_ones() % 2))
            .collect();
        design_from_counts(&counts, 4)
    }

    #[test]
    fn slot_subsets_drop_columns_from_the_back() {
        let masks: Vec<u32> = JShort::subsets(4).iter().map(|t| t.mask()).collect();
        assert_eq!(masks, vec![0b0111, 0b1011, 0b1101, 0b1110, 0b1111]);
    }

    #[test]
    fn short_j_reads_slots_in_the_documented_order() {
        // The only nonzero characteristic sits on columns {1,2,3}, the
        // subset that omits the *last* column — slot 1 by convention.
        let js = short_j(&eight_run_word_design(), 2).unwrap();
        assert_eq!(js.entries(), &[-8, 0, 0, 0, 0]);
    }

    #[test]
    fn short_j_round_trips_through_full_vectors() {
        let js = short_j(&twelve_run_design(), 2).unwrap();
        assert_eq!(js.entries(), &[-4, -4, -4, -4, 4]);
        let full = js.to_full(12);
        assert_eq!(full.n(), 12);
        assert_eq!(JShort::from_full(&full), js);
    }

    #[test]
    fn short_j_checks_shape_and_strength() {
        assert!(matches!(
            short_j(&twelve_run_design(), 3),
            Err(Error::ShapeMismatch(_))
        ));
        let weak = Design::new(vec![vec![1, 1, 1, 1], vec![-1, -1, -1, -1]], 4).unwrap();
        assert!(matches!(
            short_j(&weak, 2),
            Err(Error::InsufficientStrength { required: 2, .. })
        ));
    }

    #[test]
    fn sign_solve_forces_the_even_m_tail() {
        let t = vec![Some(-1), Some(-1), Some(-1), Some(-1), None];
        let s = solve_signs(&t).unwrap();
        assert_eq!(s.induced(), &[-1, -1, -1, -1, 1]);
        assert_eq!(s.delta(), &[-1, -1, -1, -1]);
    }

    #[test]
    fn sign_solve_forces_a_head_slot() {
        let t = vec![None, Some(-1), Some(-1), Some(-1), Some(-1)];
        let s = solve_signs(&t).unwrap();
        // Product of all five induced signs must be +1 for even m.
        assert_eq!(s.induced(), &[1, -1, -1, -1, -1]);
        assert_eq!(s.delta(), &[1, 1, 1, -1]);
    }

    #[test]
    fn sign_solve_odd_m_pins_the_head_product() {
        // m = 5: the first five induced signs must multiply to +1.
        let t = vec![None, Some(1), Some(1), Some(-1), Some(1), Some(-1)];
        let s = solve_signs(&t).unwrap();
        assert_eq!(s.induced(), &[-1, 1, 1, -1, 1, -1]);
        let head: i8 = s.induced()[..5].iter().product();
        assert_eq!(head, 1);
        assert_eq!(s.induced()[5], s.delta().iter().product::<i8>());
    }

    #[test]
    fn sign_solve_rejects_bad_requests() {
        assert!(matches!(
            solve_signs(&[None, Some(1), Some(1), Some(1), Some(1), None]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            solve_signs(&[Some(1); 5]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            solve_signs(&[Some(1), Some(2), Some(1), Some(1), None]),
            Err(Error::InvalidParams(_))
        ));
        // Odd m cannot float the last slot.
        assert!(matches!(
            solve_signs(&[Some(1), Some(1), Some(1), Some(1), Some(1), None]),
            Err(Error::UnsupportedDrop { m: 5, position: 6 })
        ));
    }

    #[test]
    fn induced_signs_match_first_principles() {
        let s = SignAssignment::from_delta(vec![-1, 1, 1, -1]).unwrap();
        // Slot 1 reads {1,2,3}: product -1. Slot 4 reads {2,3,4}: -1.
        // Slot 5 reads everything: +1.
        assert_eq!(s.induced(), &[-1, 1, 1, -1, 1]);
    }

    #[test]
    fn canonicalize_flips_and_sorts_an_even_head() {
        let js = JShort::new(vec![4, -4, 4, -4, 4], 4).unwrap();
        assert_eq!(canonicalize(&js).entries(), &[-4, -4, -4, -4, 4]);
    }

    #[test]
    fn canonicalize_fixed_points() {
        for (entries, m) in [
            (vec![-8, 0, 0, 0, 0], 4u32),
            (vec![0, 0, 0, 0, -8], 4),
            (vec![-4, -4, -4, -4, 4], 4),
            (vec![-8, -8, -8, -8, 8, 0], 5),
        ] {
            let js = JShort::new(entries.clone(), m).unwrap();
            assert_eq!(canonicalize(&js).entries(), entries.as_slice(), "m={m}");
        }
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for (entries, m) in [
            (vec![12, -4, 4, -4, 4], 4u32),
            (vec![0, 8, 0, 0, -16], 4),
            (vec![8, -8, 8, -8, -8, 2], 5),
            (vec![-6, 2, -2, 4, 0, -2], 5),
        ] {
            let once = canonicalize(&JShort::new(entries, m).unwrap());
            let twice = canonicalize(&once.as_short());
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn canonical_vectors_are_orbit_invariants() {
        let base = twelve_run_design();
        let star = canonicalize(&short_j(&base, 2).unwrap());
        let moved = base
            .switch_signs(&[-1, 1, -1, 1])
            .unwrap()
            .permute_columns(&[3, 1, 0, 2])
            .unwrap()
            .permute_rows(&(0..base.n()).rev().collect::<Vec<_>>())
            .unwrap();
        // The raw shortened vector moves …
        assert_ne!(short_j(&moved, 2).unwrap().entries(), &[-4, -4, -4, -4, 4]);
        // … but its canonical form does not.
        assert_eq!(canonicalize(&short_j(&moved, 2).unwrap()), star);
    }

    #[test]
    fn sign_switch_flips_exactly_the_slots_containing_the_column() {
        // Column 1 sits in every tracked subset except slot m (which omits
        // the first column).
        let js = short_j(
            &twelve_run_design().switch_signs(&[-1, 1, 1, 1]).unwrap(),
            2,
        )
        .unwrap();
        assert_eq!(js.entries(), &[4, 4, 4, -4, -4]);
    }

    #[test]
    fn isomorphism_distinguishes_the_two_eight_run_classes() {
        let a = eight_run_word_design();
        // The stacked half-replicate: two copies of each run with an odd
        // number of −1s across all four columns.
        let counts: Vec<i64> = (0u32..16)
            .map(|mask| i64::from(mask.count_ones() % 2))
            .collect();
        let b = design_from_counts(&counts, 4);
        assert_eq!(short_j(&b, 2).unwrap().entries(), &[0, 0, 0, 0, -8]);
        assert!(!isomorphic(&a, &b, 2).unwrap());
        assert!(isomorphic(&a, &a.permute_columns(&[1, 2, 0, 3]).unwrap(), 2).unwrap());
    }

    #[test]
    fn isomorphism_requires_matching_shapes() {
        let a = twelve_run_design();
        let b = eight_run_word_design();
        assert!(matches!(
            isomorphic(&a, &b, 2),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn jstar_validation_enforces_the_invariant() {
        assert!(JStar::new(vec![-4, -4, -4, -4, 4], 4).is_ok());
        assert!(JStar::new(vec![0, 0, 0, 0, -8], 4).is_ok());
        assert!(JStar::new(vec![4, -4, 4, -4, 4], 4).is_err());
        // Head must dominate the tail magnitude in the sorted case.
        assert!(JStar::new(vec![-4, -4, -4, -4, 5], 4).is_err());
        assert!(JStar::new(vec![-8, -8, -8, -8, 8, 0], 5).is_ok());
        assert!(JStar::new(vec![-8, -8, -8, -8, 8, 2], 5).is_err());
        assert!(JStar::new(vec![-4, -4, -4, -4], 4).is_err());
    }
}
