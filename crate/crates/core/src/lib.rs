//! Exact realizability of integer sequences as periodic-point counts.
//!
//! A nonnegative integer sequence `U_1, U_2, ...` counts the period-`n`
//! points of some bijection exactly when every Möbius sum
//! `s_n = Σ_{d|n} μ(n/d) U_d` is nonnegative and divisible by `n`. This
//! crate checks that criterion exactly, builds finite witness
//! permutations, counts periodic points of subshifts of finite type, and
//! verifies the Lucas/Fibonacci congruences that follow from the
//! golden-mean shift realizing the Lucas numbers.
//!
//! All arithmetic is exact; indices are 1-based throughout.

pub mod arith;
pub mod cli;
pub mod congruence;
mod error;
pub mod explore;
pub mod realizability;
pub mod recurrence;
pub mod sft;

pub use error::{Error, Result};
pub use realizability::{
    CycleSpec, Failure, FailureKind, RealizabilityReport, SequencePrefix, Verdict,
    WitnessPermutation,
};
pub use sft::ZeroOneMatrix;
