//! Scans over recurrence seeds.
//!
//! For Fibonacci-type seeds `(a, b)` the realizability criterion fails
//! unless `b = 3a`: at any prime `p ≡ ±2 (mod 5)` the Möbius sum at `p` is
//! `U_p - U_1 ≡ b - 3a (mod p)`, so a prime of that form not dividing
//! `b - 3a` forces a failure at or before index `p`. [`obstruct`] locates
//! that prime, confirms the residue identity there, and cross-checks it
//! against the criterion itself.
//!
//! [`kbonacci_scan`] gathers evidence on the order-`k` analogue, where
//! `a_j = 2^j - 1` is realized by the `k`-step shift. Its output is
//! empirical only.

use std::fmt;

use rayon::prelude::*;

use crate::arith::{is_prime, sub_mod};
use crate::realizability::{check_exact_realizability, RealizabilityReport};
use crate::recurrence::{fib_like_prefix, kbonacci_prefix, residue_stream, FibPair, KStepSeed};
use crate::{Error, Result};

pub const DEFAULT_HORIZON: usize = 50;

/// Largest number of seed tuples [`kbonacci_scan`] will enumerate.
pub const DEFAULT_KSCAN_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionStatus {
    RealizablePrefix,
    Obstructed,
}

impl ObstructionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObstructionStatus::RealizablePrefix => "realizable_prefix",
            ObstructionStatus::Obstructed => "obstructed",
        }
    }
}

impl fmt::Display for ObstructionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionResult {
    pub seed: FibPair,
    pub horizon: usize,
    pub status: ObstructionStatus,
    pub report: RealizabilityReport,
    /// Smallest prime `p ≡ ±2 (mod 5)` with `p ∤ (b - 3a)`; absent when
    /// `b = 3a`.
    pub obstructing_prime: Option<u64>,
}

impl ObstructionResult {
    pub fn first_failure_n(&self) -> Option<usize> {
        self.report.first_failure_n()
    }
}

/// Smallest prime `p` with `p mod 5 ∈ {2, 3}` not dividing `defect`, or
/// `None` when `defect = 0`.
pub fn obstructing_prime(defect: i128) -> Option<u64> {
    if defect == 0 {
        return None;
    }
    let magnitude = defect.unsigned_abs();
    (2u64..)
        .filter(|&p| matches!(p % 5, 2 | 3) && is_prime(p))
        .find(|&p| !magnitude.is_multiple_of(p as u128))
}

/// Checks `U_p - U_1 ≡ b - 3a (mod p)` from a residue stream.
fn residue_identity_holds(seed: FibPair, p: u64) -> Result<bool> {
    let stream = residue_stream(seed, p, p as usize)?;
    let lhs = sub_mod(stream[p as usize - 1], stream[0], p);
    let defect = seed.lucas_defect().rem_euclid(p as i128) as u64;
    Ok(lhs == defect)
}

/// Runs the criterion on `U_1..U_horizon` and locates the obstructing prime.
pub fn obstruct(seed: FibPair, horizon: usize) -> Result<ObstructionResult> {
    let prefix = fib_like_prefix(seed, horizon)?;
    let report = check_exact_realizability(&prefix);
    let prime = obstructing_prime(seed.lucas_defect());
    if let Some(p) = prime {
        if !residue_identity_holds(seed, p)? {
            return Err(Error::Invariant(format!(
                "U_p - U_1 is not b - 3a mod {p} for seed ({}, {})",
                seed.a(),
                seed.b()
            )));
        }
        let within = p as usize <= horizon;
        let failed_by_p = report.first_failure_n().is_some_and(|n| n as u64 <= p);
        if within && !failed_by_p {
            return Err(Error::Invariant(format!(
                "seed ({}, {}) survives past its obstructing prime {p}",
                seed.a(),
                seed.b()
            )));
        }
    }
    let status = if report.passed() {
        ObstructionStatus::RealizablePrefix
    } else {
        ObstructionStatus::Obstructed
    };
    Ok(ObstructionResult {
        seed,
        horizon,
        status,
        report,
        obstructing_prime: prime,
    })
}

/// [`obstruct`] over `[1, a_max] x [1, b_max]`, ordered by `(a, b)`.
pub fn scan_theorem(a_max: u64, b_max: u64, horizon: usize) -> Result<Vec<ObstructionResult>> {
    if a_max == 0 || b_max == 0 {
        return Err(Error::domain("scan bounds must be positive"));
    }
    let cells: Vec<(u64, u64)> = (1..=a_max)
        .flat_map(|a| (1..=b_max).map(move |b| (a, b)))
        .collect();
    cells
        .into_par_iter()
        .map(|(a, b)| obstruct(FibPair::new(a, b)?, horizon))
        .collect()
}

/// `(2^1 - 1, ..., 2^k - 1)`.
pub fn kbonacci_realizable_seed(k: usize) -> Result<KStepSeed> {
    if k == 0 || k > 63 {
        return Err(Error::domain("k must be between 1 and 63"));
    }
    KStepSeed::new((1..=k as u32).map(|j| (1u64 << j) - 1).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KScanResult {
    pub k: usize,
    pub bound: u64,
    pub horizon: usize,
    pub survivors: Vec<KStepSeed>,
}

impl KScanResult {
    /// Regression fixture: a comment header then one survivor per line.
    pub fn fixture_text(&self) -> String {
        let mut out = format!(
            "# kscan k={} bound={} horizon={} (empirical evidence)\n",
            self.k, self.bound, self.horizon
        );
        for s in &self.survivors {
            out.push_str(&join_seed(s.initial()));
            out.push('\n');
        }
        out
    }
}

pub fn join_seed(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses a survivor fixture: comma-separated tuples, `#` comments.
pub fn parse_fixture(text: &str) -> Result<Vec<Vec<u64>>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(line, l)| {
            l.split(',')
                .map(|tok| {
                    tok.trim().parse::<u64>().map_err(|_| Error::Parse {
                        line,
                        message: format!("{tok:?} is not a nonnegative integer"),
                    })
                })
                .collect()
        })
        .collect()
}

/// Every seed in `[1, bound]^k` whose length-`horizon` prefix passes the
/// criterion, in lexicographic order.
pub fn kbonacci_scan(k: usize, bound: u64, horizon: usize) -> Result<KScanResult> {
    kbonacci_scan_with_budget(k, bound, horizon, DEFAULT_KSCAN_BUDGET)
}

pub fn kbonacci_scan_with_budget(
    k: usize,
    bound: u64,
    horizon: usize,
    budget: u64,
) -> Result<KScanResult> {
    if k < 2 {
        return Err(Error::domain("k-bonacci scans need k >= 2"));
    }
    if bound == 0 || horizon == 0 {
        return Err(Error::domain("bound and horizon must be positive"));
    }
    let total = u32::try_from(k)
        .ok()
        .and_then(|e| bound.checked_pow(e))
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::Budget {
            what: "k-bonacci seed enumeration",
            needed: format!("{bound}^{k} seeds"),
            limit: budget.to_string(),
        })?;
    let survivors: Vec<KStepSeed> = (0..total)
        .into_par_iter()
        .map(|index| {
            // index in base `bound`, most significant digit first
            let mut digits = vec![0u64; k];
            let mut rest = index;
            for slot in digits.iter_mut().rev() {
                *slot = rest % bound + 1;
                rest /= bound;
            }
            let seed = KStepSeed::new(digits)?;
            let prefix = kbonacci_prefix(&seed, horizon)?;
            Ok(check_exact_realizability(&prefix).passed().then_some(seed))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(KScanResult {
        k,
        bound,
        horizon,
        survivors,
    })
}
