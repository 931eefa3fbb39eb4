//! Complete catalogs of two-level orthogonal arrays that have two more
//! columns than their strength.
//!
//! For any strength d ≥ 2 and index λ (run count n = λ·2^d), the arrays
//! OA(n, d+2, 2, d) fall into finitely many classes under row permutation,
//! column permutation, and column sign switching. Because the column count
//! exceeds the strength by exactly two, each class is pinned down by m + 1
//! J-characteristics (m = d + 2), and the classes can be enumerated
//! completely — every class exactly once, no isomorphism testing — by the
//! interval descent in [`enumerate`]. The other modules turn those
//! canonical J-vectors into explicit arrays, verify and canonicalize
//! user-supplied arrays, and cross-check the whole pipeline by brute
//! force.
//!
//! * [`subsets`] — column subsets in Yates order, run rows, the ±1 kernel.
//! * [`jchar`] — counting vectors, J-characteristics, strength, parity and
//!   pairwise-bound screens.
//! * [`canon`] — shortened J-vectors, sign solving, the canonical class
//!   representative, isomorphism testing.
//! * [`enumerate`] — the catalog itself, as solution tuples / J-vectors.
//! * [`construct`] — explicit arrays from J-vectors; direct verification.
//! * [`oracle`] — independent brute-force reference for small cases.
//! * [`format`] — plain-text array files.
//!
//! # Quick tour
//!
//! ```
//! use oacat::{build_catalog, isomorphic, strength, verify_oa, ArrayParams};
//!
//! // All strength-2 arrays with 12 runs and 4 columns, up to isomorphism.
//! let params = ArrayParams::new(2, 3)?;
//! let catalog = build_catalog(&params)?;
//! assert_eq!(catalog.len(), 1);
//!
//! let only = &catalog[0];
//! assert!(verify_oa(only, 2));
//! assert_eq!(strength(only), 2);
//!
//! // Any rearrangement of it is isomorphic to it.
//! let moved = only.permute_columns(&[2, 0, 3, 1])?.switch_signs(&[-1, 1, 1, -1])?;
//! assert!(isomorphic(only, &moved, 2)?);
//! # Ok::<(), oacat::Error>(())
//! ```

pub mod canon;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod jchar;
pub mod oracle;
pub mod subsets;

pub use canon::{canonicalize, isomorphic, short_j, solve_signs, JShort, JStar, SignAssignment};
pub use construct::{build, build_catalog, build_one_extra, verify_oa};
pub use enumerate::{
    class_count, j_scale, jstars, one_extra_solutions, solutions, IntervalSet, Parity,
    SolutionTuple,
};
pub use error::{Error, Result};
pub use format::{parse_design, read_design_file, render_design, write_design_file};
pub use jchar::{
    check_pair_bound, check_parity, j_full, n_from_j, n_vector, strength, BoundViolation, Design,
    JFull, NVector, ParityReport,
};
pub use oracle::{feasible_jshorts, oracle_class_count, oracle_jstars, orbit_min};
pub use subsets::{
    hadamard_entry, run_row, ArrayParams, ParityClass, SubsetIndex, MAX_M, MAX_N, MIN_M,
};
