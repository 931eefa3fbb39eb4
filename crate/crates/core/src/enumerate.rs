//! Enumeration of all isomorphism classes of strength-d arrays with
//! m = d + 2 columns at a given index λ (run count n = λ·2^d).
//!
//! Every class is produced exactly once, directly in canonical form, by
//! enumerating integer tuples (u(1), …, u(m+1); k) that scale to canonical
//! shortened J-vectors: J = 2^d·u when λ is odd, J = 2^(d+1)·u when λ is
//! even. Here k is the number of complete replicates of the full factorial
//! (for even λ, of the doubled factorial) contained in the array, which
//! ties the tuple to the run count through a single linear identity:
//!
//! ```text
//!     λ  + u(1) + … + u(m+1) = 4k   (λ odd)
//!     λ* + u(1) + … + u(m+1) = 2k   (λ even, λ* = λ/2)
//! ```
//!
//! The search space splits by the parities of d and λ into four regimes.
//! Within each, tuples are generated by interval descent: the outermost
//! variables range over closed intervals with rational endpoints (and a
//! parity restriction when λ is odd), each later variable is boxed in by
//! the ones already chosen, and u(1) is forced by the sum identity. The
//! intervals are exactly tight, so no feasibility re-checking or
//! deduplication happens afterwards.
//!
//! For even d the canonical form has two mutually exclusive shapes — the
//! fully sorted head u(1) ≤ … ≤ u(m) ≤ −|u(m+1)|, and the "gap" shape
//! where u(m+1) hangs strictly below −|u(m)| — and both scans run, sorted
//! first. For odd d there is a single shape with u(m+1) ≤ 0 free of the
//! head ordering (and even when λ is odd, while the head entries are odd).
//!
//! Emission order is deterministic and documented: scans in the order
//! above, k ascending outermost, then each displayed variable ascending.

use num_rational::Ratio;

use crate::canon::JStar;
use crate::error::Result;
use crate::subsets::{ArrayParams, ParityClass};

/// Parity restriction on the integers drawn from an interval.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    /// Every integer.
    Any,
    /// Odd integers only.
    Odd,
    /// Even integers only.
    Even,
}

/// The integers of a given parity inside a closed interval with rational
/// endpoints.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IntervalSet {
    lower: Ratio<i64>,
    upper: Ratio<i64>,
    parity: Parity,
}

impl IntervalSet {
    /// The members of `[lower, upper]` with parity `parity`.
    #[must_use]
    pub fn new(parity: Parity, lower: Ratio<i64>, upper: Ratio<i64>) -> IntervalSet {
        IntervalSet {
            lower,
            upper,
            parity,
        }
    }

    /// The member integers in ascending order; empty when the interval
    /// contains none.
    #[must_use]
    pub fn members(&self) -> Vec<i64> {
        let mut lo = self.lower.ceil().to_integer();
        let mut hi = self.upper.floor().to_integer();
        let keep_residue = match self.parity {
            Parity::Any => return (lo..=hi).collect(),
            Parity::Odd => 1,
            Parity::Even => 0,
        };
        if lo.rem_euclid(2) != keep_residue {
            lo += 1;
        }
        if hi.rem_euclid(2) != keep_residue {
            hi -= 1;
        }
        if lo > hi {
            return Vec::new();
        }
        (lo..=hi).step_by(2).collect()
    }
}

/// One isomorphism class, as the integer tuple (u(1), …, u(m+1); k) whose
/// scaled form is the class's canonical shortened J-vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SolutionTuple {
    u: Vec<i64>,
    k: i64,
}

impl SolutionTuple {
    /// The unscaled J-values u(1), …, u(m+1).
    #[must_use]
    pub fn u(&self) -> &[i64] {
        &self.u
    }

    /// Number of complete (λ odd) or doubled (λ even) factorial replicates.
    #[must_use]
    pub const fn k(&self) -> i64 {
        self.k
    }
}

/// Which canonical shape a scan emits; used to self-check every tuple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Shape {
    Sorted,
    Gap(i64),
    FreeTail,
}

struct Scan<'a> {
    head: Parity,
    shape: Shape,
    lambda: i64,
    k: i64,
    b: i64,
    out: &'a mut Vec<SolutionTuple>,
}

/// All solution tuples for the given shape, in the documented order.
#[must_use]
pub fn solutions(params: &ArrayParams) -> Vec<SolutionTuple> {
    let m = params.m() as usize;
    let lambda = i64::from(params.lambda());
    let d = i64::from(params.d());
    let mut out = Vec::new();
    match params.parity_class() {
        ParityClass::EvenStrengthOddIndex | ParityClass::EvenStrengthEvenIndex => {
            sorted_scan(m, lambda, d, &mut out);
            gap_scan(m, lambda, d, &mut out);
        }
        ParityClass::OddStrengthOddIndex | ParityClass::OddStrengthEvenIndex => {
            free_tail_scan(m, lambda, d, &mut out);
        }
    }
    out
}

/// Number of isomorphism classes of strength-d arrays on d + 2 columns
/// with n = λ·2^d runs.
#[must_use]
pub fn class_count(params: &ArrayParams) -> u64 {
    solutions(params).len() as u64
}

/// The canonical shortened J-vectors of every class, in solution order.
#[must_use]
pub fn jstars(params: &ArrayParams) -> Vec<JStar> {
    let scale = j_scale(params);
    solutions(params)
        .iter()
        .map(|t| {
            let entries = t.u().iter().map(|&v| v * scale).collect();
            JStar::from_canonical_entries(entries, params.m())
        })
        .collect()
}

/// Factor between a solution tuple and its J-vector: 2^d for odd λ,
/// 2^(d+1) for even λ.
#[must_use]
pub fn j_scale(params: &ArrayParams) -> i64 {
    if params.lambda() % 2 == 1 {
        1i64 << params.d()
    } else {
        1i64 << (params.d() + 1)
    }
}

/// The analogous (and much simpler) classification one column earlier:
/// strength-d arrays with d + 1 columns and n = λ·2^d runs. Each class is
/// pinned down by the single J-value on all d + 1 columns, u·2^d, tied to
/// the factorial-replicate count k by λ + u = 2k; so u runs over
/// −λ, −λ+2, …, capped at 0, and there are ⌊λ/2⌋ + 1 classes.
///
/// Returned tuples have a one-entry `u`, ascending (k ascending).
///
/// # Errors
///
/// Rejects parameters outside the supported range.
pub fn one_extra_solutions(d: u32, lambda: u32) -> Result<Vec<SolutionTuple>> {
    // Same parameter domain as the two-extra-column problem.
    let _ = ArrayParams::new(d, lambda)?;
    let l = i64::from(lambda);
    let mut u = -l;
    let mut out = Vec::new();
    while u <= 0 {
        out.push(SolutionTuple {
            u: vec![u],
            k: (l + u) / 2,
        });
        u += 2;
    }
    Ok(out)
}

/// Fills u(j), u(j−1), …, u(2) with the generic descent interval
/// `[−(b + Σ_{i>j} u(i)) / j, u(j+1)]`, then closes u(1) from the sum
/// identity and emits.
fn descend(slots: &mut Vec<i64>, j: usize, scan: &mut Scan<'_>) {
    if j == 1 {
        let rest: i64 = slots[1..].iter().sum();
        slots[0] = -(scan.b + rest);
        emit(slots, scan);
        return;
    }
    let suffix: i64 = slots[j..].iter().sum();
    let interval = IntervalSet::new(
        scan.head,
        Ratio::new(-(scan.b + suffix), j as i64),
        Ratio::from_integer(slots[j]),
    );
    for v in interval.members() {
        slots[j - 1] = v;
        descend(slots, j - 1, scan);
    }
}

fn emit(slots: &[i64], scan: &mut Scan<'_>) {
    debug_assert!(
        tuple_invariants_hold(slots, scan),
        "enumerated tuple {slots:?} (k={}) violates its invariants",
        scan.k
    );
    scan.out.push(SolutionTuple {
        u: slots.to_vec(),
        k: scan.k,
    });
}

/// Sorted-head shape: u(1) ≤ … ≤ u(m) ≤ −|u(m+1)| (even d only).
fn sorted_scan(m: usize, lambda: i64, d: i64, out: &mut Vec<SolutionTuple>) {
    let odd = lambda % 2 == 1;
    let head = if odd { Parity::Odd } else { Parity::Any };
    let k_max = if odd {
        (lambda - d - 1).div_euclid(4)
    } else {
        (lambda / 2).div_euclid(2)
    };
    for k in 0..=k_max {
        let b = if odd {
            lambda - 4 * k
        } else {
            lambda / 2 - 2 * k
        };
        let mut scan = Scan {
            head,
            shape: Shape::Sorted,
            lambda,
            k,
            b,
            out,
        };
        let mut slots = vec![0i64; m + 1];
        let tail = IntervalSet::new(
            head,
            Ratio::new(-b, m as i64 + 1),
            Ratio::new(b, m as i64 - 1),
        );
        for ul in tail.members() {
            slots[m] = ul;
            let um_range = IntervalSet::new(
                head,
                Ratio::new(-(b + ul), m as i64),
                Ratio::from_integer(-ul.abs()),
            );
            for um in um_range.members() {
                slots[m - 1] = um;
                descend(&mut slots, m - 1, &mut scan);
            }
        }
    }
}

/// Gap shape: u(1) ≤ … ≤ u(m−1) ≤ −|u(m)| with u(m+1) ≤ −|u(m)| − g,
/// where the gap g is 2 for odd λ and 1 for even λ (even d only).
fn gap_scan(m: usize, lambda: i64, d: i64, out: &mut Vec<SolutionTuple>) {
    let odd = lambda % 2 == 1;
    let head = if odd { Parity::Odd } else { Parity::Any };
    let g = if odd { 2 } else { 1 };
    let k_max = if odd {
        (lambda - d - 3).div_euclid(4)
    } else {
        (lambda / 2 - 1).div_euclid(2)
    };
    for k in 0..=k_max {
        let b = if odd {
            lambda - 4 * k
        } else {
            lambda / 2 - 2 * k
        };
        let mut scan = Scan {
            head,
            shape: Shape::Gap(g),
            lambda,
            k,
            b,
            out,
        };
        let mut slots = vec![0i64; m + 1];
        let um_range = IntervalSet::new(
            head,
            Ratio::new(-(b - g), m as i64 + 1),
            Ratio::new(b - g, m as i64 - 1),
        );
        for um in um_range.members() {
            slots[m - 1] = um;
            let tail = IntervalSet::new(
                head,
                Ratio::from_integer((m as i64 - 1) * um.abs() - um - b),
                Ratio::from_integer(-um.abs() - g),
            );
            for ul in tail.members() {
                slots[m] = ul;
                let next = IntervalSet::new(
                    head,
                    Ratio::new(-(b + um + ul), m as i64 - 1),
                    Ratio::from_integer(-um.abs()),
                );
                for v in next.members() {
                    slots[m - 2] = v;
                    descend(&mut slots, m - 2, &mut scan);
                }
            }
        }
    }
}

/// Odd-d shape: u(1) ≤ … ≤ u(m−1) ≤ −|u(m)| with u(m+1) ≤ 0 outside the
/// ordering; for odd λ the head entries are odd and u(m+1) is even.
fn free_tail_scan(m: usize, lambda: i64, d: i64, out: &mut Vec<SolutionTuple>) {
    let odd = lambda % 2 == 1;
    let head = if odd { Parity::Odd } else { Parity::Any };
    let tail_parity = if odd { Parity::Even } else { Parity::Any };
    let k_max = if odd {
        (lambda - d).div_euclid(4)
    } else {
        (lambda / 2).div_euclid(2)
    };
    for k in 0..=k_max {
        let b = if odd {
            lambda - 4 * k
        } else {
            lambda / 2 - 2 * k
        };
        let mut scan = Scan {
            head,
            shape: Shape::FreeTail,
            lambda,
            k,
            b,
            out,
        };
        let mut slots = vec![0i64; m + 1];
        let tail_lower = if odd { -(b - d) } else { -b };
        let tail = IntervalSet::new(
            tail_parity,
            Ratio::from_integer(tail_lower),
            Ratio::from_integer(0),
        );
        for ul in tail.members() {
            slots[m] = ul;
            let um_range = IntervalSet::new(
                head,
                Ratio::new(-(b + ul), m as i64),
                Ratio::new(b + ul, m as i64 - 2),
            );
            for um in um_range.members() {
                slots[m - 1] = um;
                let next = IntervalSet::new(
                    head,
                    Ratio::new(-(b + um + ul), m as i64 - 1),
                    Ratio::from_integer(-um.abs()),
                );
                for v in next.members() {
                    slots[m - 2] = v;
                    descend(&mut slots, m - 2, &mut scan);
                }
            }
        }
    }
}

/// Self-check applied (in debug builds) to every emitted tuple: the sum
/// identity, entry parities, and exactly the canonical shape the emitting
/// scan is responsible for.
fn tuple_invariants_hold(u: &[i64], scan: &Scan<'_>) -> bool {
    let m = u.len() - 1;
    let odd = scan.lambda % 2 == 1;
    let total: i64 = u.iter().sum();
    let sum_ok = if odd {
        scan.lambda + total == 4 * scan.k
    } else {
        scan.lambda / 2 + total == 2 * scan.k
    };
    let parity_ok = if odd {
        let head = u[..m].iter().all(|v| v.rem_euclid(2) == 1);
        let tail_residue = if scan.shape == Shape::FreeTail { 0 } else { 1 };
        head && u[m].rem_euclid(2) == tail_residue
    } else {
        true
    };
    let bounded = u.iter().all(|v| v.abs() <= scan.lambda);
    let ascending = |xs: &[i64]| xs.windows(2).all(|w| w[0] <= w[1]);
    let sorted_shape = ascending(&u[..m]) && u[m - 1] <= -u[m].abs();
    let gap_shape = |g: i64| {
        ascending(&u[..m - 1]) && u[m - 2] <= -u[m - 1].abs() && u[m] <= -u[m - 1].abs() - g
    };
    let shape_ok = match scan.shape {
        Shape::Sorted => sorted_shape && !gap_shape(if odd { 2 } else { 1 }),
        Shape::Gap(g) => gap_shape(g) && !sorted_shape,
        Shape::FreeTail => ascending(&u[..m - 1]) && u[m - 2] <= -u[m - 1].abs() && u[m] <= 0,
    };
    sum_ok && parity_ok && bounded && shape_ok && scan.k >= 0
}
