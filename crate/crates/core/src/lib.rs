//! Exact weighted Catalan numbers and their 2-adic valuations.
//!
//! Given integer weights `b(0), b(1), ...`, the weighted Catalan number
//! `C_n^b` sums `b(h_1) ... b(h_n)` over Dyck paths of length `2n`, where
//! `h_i` is the height at which the `i`-th up step starts. When `b(0)` is odd
//! and `2^(n+1)` divides every `n`-th forward difference of `b`, the 2-adic
//! valuation of `C_n^b` equals `s(n+1) - 1` with `s` the binary digit sum.
//!
//! - [`weight`]: weight sequences, shift/difference/bracket calculus, membership checks
//! - [`catalan`]: `C_n`, `C_n^b` by lattice DP, continued fraction and enumeration
//! - [`trees`]: binary trees, unordered shapes, orbit sizes and reduced orbit weights
//! - [`valuation`]: valuations, digit sums, verification sweeps, zero blocks mod `p`
//! - [`cli`]: the `wcat` command line

pub mod catalan;
pub mod cli;
pub mod error;
pub mod report;
pub mod trees;
pub mod valuation;
pub mod weight;

pub use catalan::{
    catalan, catalan_sequence, morse_link_number, q_catalan, weighted_catalan_bruteforce,
    weighted_catalan_dp, weighted_catalan_dp_upto, weighted_catalan_series, DyckPath, Method, Step,
    WeightedCount,
};
pub use error::{Error, Result};
pub use trees::{
    canonical_shape, enumerate_trees, orbit_census, orbit_decomposition_check, reduced_weight,
    shape_census, tree_to_path, tree_weight, BinaryTree, OrbitCensus, OrbitRecord, TreeShape,
};
pub use valuation::{
    digit_sum, verify_classical, verify_weighted, xi, zero_blocks, ValuationReport, ZeroBlockReport,
};
pub use weight::{
    check_membership, CheckWindow, FunctionWindow, IntPolynomial, MembershipVerdict,
    WeightSequence, Witness,
};

pub use num_bigint::BigInt;
