//! The exact-realizability criterion and witness permutations.
//!
//! A prefix `U_1..U_N` is realizable as the periodic-point counts of a
//! bijection iff every Möbius sum `s_n` is nonnegative and divisible by
//! `n`. When it is, `c_n = s_n / n` disjoint `n`-cycles give a finite
//! permutation whose `n`-th power fixes exactly `U_n` points for `n <= N`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{mobius_inversion_sums, mobius_table};
use crate::{Error, Result};

/// Default cap on the number of points in a witness permutation.
pub const DEFAULT_WITNESS_BUDGET: usize = 1 << 26;

/// A finite, nonempty, 1-indexed prefix `U_1..U_N` of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequencePrefix {
    values: Vec<BigUint>,
}

impl SequencePrefix {
    pub fn new(values: Vec<BigUint>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("sequence prefix must have length >= 1"));
        }
        Ok(SequencePrefix { values })
    }

    pub fn from_u64s(values: &[u64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// `U_n`, 1-indexed.
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The first `len` terms.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        if len > self.len() {
            return Err(Error::domain(format!(
                "cannot truncate a length-{} prefix to {len}",
                self.len()
            )));
        }
        Self::new(self.values[..len].to_vec())
    }

    pub fn into_values(self) -> Vec<BigUint> {
        self.values
    }
}

impl fmt::Display for SequencePrefix {
    /// One value per line, the sequence file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for SequencePrefix {
    type Err = Error;

    /// One nonnegative integer per line. `#` starts a comment; lines that
    /// are blank after stripping comments are skipped and do not consume an
    /// index.
    fn from_str(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let v = body.parse::<BigUint>().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("{body:?} is not a nonnegative integer"),
            })?;
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "sequence file has no values".into(),
            });
        }
        Self::new(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Negativity,
    NonDivisibility,
}

impl FailureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureKind::Negativity => "negativity",
            FailureKind::NonDivisibility => "non_divisibility",
        }
    }
}

/// Outcome of [`check_exact_realizability`] with the first failing index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityReport {
    pub checked_up_to: usize,
    pub failure: Option<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub n: usize,
    pub kind: FailureKind,
    /// The Möbius sum `s_n` at the failing index.
    pub value: BigInt,
}

impl RealizabilityReport {
    pub fn verdict(&self) -> Verdict {
        if self.failure.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn first_failure_n(&self) -> Option<usize> {
        self.failure.as_ref().map(|f| f.n)
    }

    pub fn failure_kind(&self) -> Option<FailureKind> {
        self.failure.as_ref().map(|f| f.kind)
    }

    pub fn failure_value(&self) -> Option<&BigInt> {
        self.failure.as_ref().map(|f| &f.value)
    }
}

impl fmt::Display for RealizabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass (checked up to n={})", self.checked_up_to),
            Some(x) => write!(
                f,
                "fail at n={} ({}, s_n={}) (checked up to n={})",
                x.n,
                x.kind.as_str(),
                x.value,
                self.checked_up_to
            ),
        }
    }
}

/// Classifies a single Möbius sum; negativity wins when both conditions fail.
fn classify(n: usize, s: &BigInt) -> Option<FailureKind> {
    if s.is_negative() {
        Some(FailureKind::Negativity)
    } else if !s.is_multiple_of(&BigInt::from(n)) {
        Some(FailureKind::NonDivisibility)
    } else {
        None
    }
}

/// Tests `0 <= s_n ≡ 0 (mod n)` for `n = 1..N`, stopping at the first
/// failing index.
pub fn check_exact_realizability(prefix: &SequencePrefix) -> RealizabilityReport {
    let len = prefix.len();
    let mu = mobius_table(len);
    let values = prefix.values();
    for n in 1..=len {
        let mut s = BigInt::zero();
        // divisors of n in pairs (d, n/d)
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                add_term(&mut s, mu[n / d], &values[d - 1]);
                let e = n / d;
                if e != d {
                    add_term(&mut s, mu[d], &values[e - 1]);
                }
            }
            d += 1;
        }
        if let Some(kind) = classify(n, &s) {
            return RealizabilityReport {
                checked_up_to: len,
                failure: Some(Failure { n, kind, value: s }),
            };
        }
    }
    RealizabilityReport {
        checked_up_to: len,
        failure: None,
    }
}

fn add_term(acc: &mut BigInt, mu: i8, u: &BigUint) {
    match mu {
        1 => *acc += BigInt::from(u.clone()),
        -1 => *acc -= BigInt::from(u.clone()),
        _ => {}
    }
}

/// Cycle counts `c_1..c_N` of a witness permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSpec {
    counts: Vec<BigUint>,
}

impl CycleSpec {
    pub fn new(counts: Vec<BigUint>) -> Self {
        CycleSpec { counts }
    }

    pub fn from_u64s(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// `c_1..c_N`; entry `i` is the number of `(i+1)`-cycles.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn horizon(&self) -> usize {
        self.counts.len()
    }

    /// `Σ n c_n`.
    pub fn domain_size(&self) -> BigUint {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, c)| c * (i + 1))
            .sum()
    }

    /// `Σ_{d|n} d c_d` for each `n`, the fixed-point counts of the
    /// corresponding permutation's powers.
    pub fn periodic_counts(&self) -> Vec<BigUint> {
        let len = self.counts.len();
        let mut out = vec![BigUint::zero(); len];
        for d in 1..=len {
            let orbit_points = &self.counts[d - 1] * d;
            let mut n = d;
            while n <= len {
                out[n - 1] += &orbit_points;
                n += d;
            }
        }
        out
    }
}

/// `c_n = s_n / n`; requires the prefix to pass the criterion.
pub fn cycle_counts(prefix: &SequencePrefix) -> Result<CycleSpec> {
    let report = check_exact_realizability(prefix);
    if !report.passed() {
        return Err(Error::NotRealizable(Box::new(report)));
    }
    let sums = mobius_inversion_sums(prefix.values())?;
    let counts = sums
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let (q, r) = s.div_rem(&BigInt::from(i + 1));
            debug_assert!(r.is_zero());
            q.into_parts().1
        })
        .collect();
    Ok(CycleSpec::new(counts))
}

/// A permutation of `{1..domain_size}` as a 1-based image table, together
/// with the prefix length it was built to realize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPermutation {
    horizon: usize,
    images: Vec<u32>,
}

impl WitnessPermutation {
    /// Validates that `images` is a bijection of `{1..images.len()}`.
    pub fn new(horizon: usize, images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let i = (x as usize)
                .checked_sub(1)
                .filter(|&i| i < n)
                .ok_or_else(|| Error::domain(format!("image {x} outside 1..={n}")))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::domain(format!("image {x} repeated")));
            }
        }
        Ok(WitnessPermutation { horizon, images })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    /// `images()[i]` is the image of point `i + 1`.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Disjoint cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32 + 1);
                x = self.images[x] as usize - 1;
            }
            out.push(cycle);
        }
        out
    }
}

/// Lays out `c_n` consecutive-integer `n`-cycles for ascending `n`.
pub fn build_witness(spec: &CycleSpec) -> Result<WitnessPermutation> {
    build_witness_with_budget(spec, DEFAULT_WITNESS_BUDGET)
}

pub fn build_witness_with_budget(spec: &CycleSpec, budget: usize) -> Result<WitnessPermutation> {
    let size = spec.domain_size();
    let limit = budget.min(u32::MAX as usize);
    let size = size
        .to_usize()
        .filter(|&s| s <= limit)
        .ok_or_else(|| Error::Budget {
            what: "witness permutation",
            needed: format!("{size} points"),
            limit: limit.to_string(),
        })?;
    let mut images = Vec::with_capacity(size);
    let mut next = 1u32;
    for (i, count) in spec.counts().iter().enumerate() {
        let len = i as u32 + 1;
        // fits: count * len <= size
        let count = count.to_u64().expect("bounded by domain size");
        for _ in 0..count {
            let start = next;
            for offset in 1..len {
                images.push(start + offset);
            }
            images.push(start);
            next += len;
        }
    }
    debug_assert_eq!(images.len(), size);
    Ok(WitnessPermutation {
        horizon: spec.horizon(),
        images,
    })
}

/// Counts the fixed points of `w^n` for `n = 1..N` by iterating the image
/// table, and compares with `U_n`.
pub fn verify_witness(witness: &WitnessPermutation, prefix: &SequencePrefix) -> Result<bool> {
    if witness.horizon() != prefix.len() {
        return Err(Error::domain(format!(
            "witness realizes {} terms but the prefix has {}",
            witness.horizon(),
            prefix.len()
        )));
    }
    let counts = fixed_point_counts(witness, prefix.len());
    Ok(counts
        .iter()
        .zip(prefix.values())
        .all(|(&c, u)| BigUint::from(c) == *u))
}

/// `#{x : w^n(x) = x}` for `n = 1..len`.
pub fn fixed_point_counts(witness: &WitnessPermutation, len: usize) -> Vec<u64> {
    let images = witness.images();
    let mut power: Vec<u32> = images.to_vec();
    let mut out = Vec::with_capacity(len);
    for n in 1..=len {
        let fixed = power
            .par_iter()
            .enumerate()
            .filter(|&(i, &y)| y as usize == i + 1)
            .count();
        out.push(fixed as u64);
        if n < len {
            power
                .par_iter_mut()
                .for_each(|y| *y = images[*y as usize - 1]);
        }
    }
    out
}

/// `a U_n` termwise: the periodic-point counts of `f` times an `a`-point set.
pub fn scale_sequence(prefix: &SequencePrefix, factor: u64) -> Result<SequencePrefix> {
    if factor == 0 {
        return Err(Error::domain("scale factor must be positive"));
    }
    SequencePrefix::new(prefix.values().iter().map(|v| v * factor).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{fib_like_prefix, lucas_prefix, FibPair};

    fn prefix(v: &[u64]) -> SequencePrefix {
        SequencePrefix::from_u64s(v).unwrap()
    }

    #[test]
    fn prefix_requires_a_value() {
        assert!(SequencePrefix::new(vec![]).is_err());
        assert_eq!(prefix(&[4, 5]).get(2), Some(&BigUint::from(5u32)));
        assert_eq!(prefix(&[4, 5]).get(0), None);
    }

    #[test]
    fn lucas_passes() {
        let r = check_exact_realizability(&prefix(&[1, 3, 4, 7, 11, 18, 29, 47, 76, 123]));
        assert_eq!(r.verdict(), Verdict::Pass);
        assert_eq!(r.checked_up_to, 10);
        assert_eq!(r.first_failure_n(), None);
    }

    #[test]
    fn fibonacci_fails_at_three() {
        let r = check_exact_realizability(&prefix(&[1, 1, 2, 3, 5]));
        assert_eq!(r.verdict(), Verdict::Fail);
        assert_eq!(r.first_failure_n(), Some(3));
        assert_eq!(r.failure_kind(), Some(FailureKind::NonDivisibility));
        assert_eq!(r.failure_value(), Some(&BigInt::from(1)));
    }

    #[test]
    fn zero_sequence_passes() {
        assert!(check_exact_realizability(&prefix(&[0, 0, 0, 0])).passed());
    }

    #[test]
    fn negativity_beats_non_divisibility() {
        // s_2 = 0 - 3 = -3: negative and odd
        let r = check_exact_realizability(&prefix(&[3, 0]));
        assert_eq!(r.failure_kind(), Some(FailureKind::Negativity));
        assert_eq!(r.failure_value(), Some(&BigInt::from(-3)));
        // s_2 = 0 - 2 = -2: negative but even
        let r = check_exact_realizability(&prefix(&[2, 0]));
        assert_eq!(r.first_failure_n(), Some(2));
        assert_eq!(r.failure_kind(), Some(FailureKind::Negativity));
    }

    #[test]
    fn report_agrees_with_full_inversion() {
        for seed in [(1, 1), (2, 5), (1, 3), (4, 9), (3, 9)] {
            let p = fib_like_prefix(FibPair::new(seed.0, seed.1).unwrap(), 40).unwrap();
            let sums = mobius_inversion_sums(p.values()).unwrap();
            let expected = sums
                .iter()
                .enumerate()
                .find_map(|(i, s)| classify(i + 1, s).map(|k| (i + 1, k)));
            let r = check_exact_realizability(&p);
            assert_eq!(
                r.failure.as_ref().map(|f| (f.n, f.kind)),
                expected,
                "{seed:?}"
            );
        }
    }

    #[test]
    fn report_minimality() {
        for v in [
            &[1u64, 1, 2, 3, 5][..],
            &[2, 0],
            &[1, 3, 4, 7, 12],
            &[5, 5, 6],
        ] {
            let p = prefix(v);
            let r = check_exact_realizability(&p);
            let n = r.first_failure_n().unwrap();
            if n > 1 {
                assert!(check_exact_realizability(&p.truncated(n - 1).unwrap()).passed());
            }
        }
    }

    #[test]
    fn cycle_count_examples() {
        let lucas = cycle_counts(&prefix(&[1, 3, 4, 7, 11, 18])).unwrap();
        assert_eq!(lucas, CycleSpec::from_u64s(&[1, 1, 1, 1, 2, 2]));
        assert_eq!(
            cycle_counts(&prefix(&[3, 3, 3])).unwrap(),
            CycleSpec::from_u64s(&[3, 0, 0])
        );
        assert_eq!(
            cycle_counts(&prefix(&[0, 2, 0, 2])).unwrap(),
            CycleSpec::from_u64s(&[0, 1, 0, 0])
        );
    }

    #[test]
    fn cycle_counts_reject_with_report() {
        match cycle_counts(&prefix(&[1, 1, 2])) {
            Err(Error::NotRealizable(r)) => assert_eq!(r.first_failure_n(), Some(3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cycle_counts_reaggregate() {
        let p = lucas_prefix(40).unwrap();
        let spec = cycle_counts(&p).unwrap();
        assert_eq!(spec.periodic_counts(), p.values());
    }

    #[test]
    fn witness_layout() {
        let w = build_witness(&CycleSpec::from_u64s(&[1, 1, 1])).unwrap();
        assert_eq!(w.domain_size(), 6);
        assert_eq!(w.images(), &[1, 3, 2, 5, 6, 4]);
        assert_eq!(w.cycles(), vec![vec![1], vec![2, 3], vec![4, 5, 6]]);

        let empty = build_witness(&CycleSpec::from_u64s(&[0, 0, 0])).unwrap();
        assert_eq!(empty.domain_size(), 0);

        let id = build_witness(&CycleSpec::from_u64s(&[2, 0, 0])).unwrap();
        assert_eq!(id.images(), &[1, 2]);
    }

    #[test]
    fn witness_budget() {
        let spec = CycleSpec::from_u64s(&[5, 5]);
        assert!(matches!(
            build_witness_with_budget(&spec, 14),
            Err(Error::Budget { .. })
        ));
        assert_eq!(
            build_witness_with_budget(&spec, 15).unwrap().domain_size(),
            15
        );
    }

    #[test]
    fn witness_verification_examples() {
        let lucas = prefix(&[1, 3, 4, 7, 11, 18]);
        let w = build_witness(&cycle_counts(&lucas).unwrap()).unwrap();
        assert!(verify_witness(&w, &lucas).unwrap());

        let threes = prefix(&[3, 3, 3]);
        let id = build_witness(&cycle_counts(&threes).unwrap()).unwrap();
        assert_eq!(id.images(), &[1, 2, 3]);
        assert!(verify_witness(&id, &threes).unwrap());

        assert!(!verify_witness(&w, &prefix(&[1, 1, 2, 3, 5, 8])).unwrap());
        assert!(verify_witness(&w, &prefix(&[1, 1, 2, 3, 5])).is_err());
    }

    #[test]
    fn permutation_validation() {
        assert!(WitnessPermutation::new(1, vec![2, 1]).is_ok());
        assert!(WitnessPermutation::new(1, vec![1, 1]).is_err());
        assert!(WitnessPermutation::new(1, vec![0]).is_err());
        assert!(WitnessPermutation::new(1, vec![3, 1]).is_err());
    }

    #[test]
    fn scaling_examples() {
        let lucas4 = prefix(&[1, 3, 4, 7]);
        let doubled = scale_sequence(&lucas4, 2).unwrap();
        assert_eq!(doubled, prefix(&[2, 6, 8, 14]));
        assert!(check_exact_realizability(&doubled).passed());
        assert_eq!(scale_sequence(&lucas4, 1).unwrap(), lucas4);
        assert_eq!(
            scale_sequence(&prefix(&[1, 1, 2]), 3).unwrap(),
            prefix(&[3, 3, 6])
        );
        assert!(scale_sequence(&lucas4, 0).is_err());
    }

    #[test]
    fn sequence_file_format() {
        let p: SequencePrefix = "# lucas\n1\n3 # second\n\n4\n".parse().unwrap();
        assert_eq!(p, prefix(&[1, 3, 4]));
        assert_eq!(p.to_string().parse::<SequencePrefix>().unwrap(), p);
        let big: SequencePrefix = "340282366920938463463374607431768211457\n".parse().unwrap();
        assert_eq!(big.values()[0], BigUint::from(u128::MAX) + 2u32);
        assert!(matches!(
            "1\n-2\n".parse::<SequencePrefix>(),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            "1\nx\n".parse::<SequencePrefix>(),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!("# nothing\n".parse::<SequencePrefix>().is_err());
    }
}
