//! Fibonacci-type recurrences: `U_{n+2} = U_{n+1} + U_n` from a seed
//! `(a, b)`, the order-`k` all-ones generalization, and residue streams.
//!
//! Fibonacci numbers use `F_0 = 0, F_1 = F_2 = 1`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::add_mod;
use crate::realizability::SequencePrefix;
use crate::{Error, Result};

/// Seed `U_1 = a, U_2 = b` of a Fibonacci-type sequence, both positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibPair {
    a: u64,
    b: u64,
}

impl FibPair {
    pub const LUCAS: FibPair = FibPair { a: 1, b: 3 };
    pub const FIBONACCI: FibPair = FibPair { a: 1, b: 1 };

    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::domain(format!(
                "seed ({a}, {b}) must have both entries positive"
            )));
        }
        Ok(FibPair { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `b - 3a`, zero exactly for multiples of the Lucas seed.
    pub fn lucas_defect(&self) -> i128 {
        self.b as i128 - 3 * self.a as i128
    }
}

/// Seed `a_1..a_k` of the order-`k` recurrence
/// `U_{n+k} = U_{n+k-1} + ... + U_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KStepSeed {
    initial: Vec<u64>,
}

impl KStepSeed {
    pub fn new(initial: Vec<u64>) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::domain("k-step seed needs k >= 1 entries"));
        }
        if initial.contains(&0) {
            return Err(Error::domain("k-step seed entries must be positive"));
        }
        Ok(KStepSeed { initial })
    }

    pub fn k(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[u64] {
        &self.initial
    }
}

impl From<FibPair> for KStepSeed {
    fn from(seed: FibPair) -> Self {
        KStepSeed {
            initial: vec![seed.a, seed.b],
        }
    }
}

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(format!("{what} is indexed from 1")));
    }
    Ok(())
}

/// `U_n` for the seed, by direct iteration.
pub fn fib_like(seed: FibPair, n: u64) -> Result<BigUint> {
    require_positive(n, "fib_like")?;
    let mut prev = BigUint::from(seed.a);
    let mut cur = BigUint::from(seed.b);
    if n == 1 {
        return Ok(prev);
    }
    for _ in 2..n {
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `U_1..U_len` for the seed.
pub fn fib_like_prefix(seed: FibPair, len: usize) -> Result<SequencePrefix> {
    kbonacci_prefix(&seed.into(), len)
}

/// `(F_n, F_{n+1})` by fast doubling.
fn fib_pair(n: u64) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::zero(), BigUint::one());
    }
    let (f, g) = fib_pair(n / 2);
    // F_{2m} = F_m (2F_{m+1} - F_m), F_{2m+1} = F_m^2 + F_{m+1}^2
    let even = &f * ((&g << 1usize) - &f);
    let odd = &f * &f + &g * &g;
    if n.is_multiple_of(2) {
        (even, odd)
    } else {
        let next = &even + &odd;
        (odd, next)
    }
}

/// `F_n` with `F_0 = 0, F_1 = 1`.
pub fn fib(n: u64) -> BigUint {
    fib_pair(n).0
}

/// `L_n` with `L_1 = 1, L_2 = 3`.
pub fn lucas(n: u64) -> Result<BigUint> {
    fib_like(FibPair::LUCAS, n)
}

pub fn lucas_prefix(len: usize) -> Result<SequencePrefix> {
    fib_like_prefix(FibPair::LUCAS, len)
}

/// `a F_{n-2} + b F_{n-1}`, which must agree with [`fib_like`] for `n >= 3`.
pub fn closed_form_check(seed: FibPair, n: u64) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::domain("closed form holds for n >= 3"));
    }
    Ok(fib(n - 2) * seed.a + fib(n - 1) * seed.b)
}

/// `U_n^{(k)}`: the seed values for `n <= k`, the order-`k` sum beyond.
pub fn kbonacci(seed: &KStepSeed, n: u64) -> Result<BigUint> {
    require_positive(n, "kbonacci")?;
    let n = usize::try_from(n).map_err(|_| Error::domain("index exceeds address space"))?;
    let prefix = kbonacci_prefix(seed, n)?;
    Ok(prefix.values()[n - 1].clone())
}

/// `U_1..U_len` of the order-`k` sequence, using a running window sum.
pub fn kbonacci_prefix(seed: &KStepSeed, len: usize) -> Result<SequencePrefix> {
    if len == 0 {
        return Err(Error::domain("prefix length must be at least 1"));
    }
    let k = seed.k();
    let mut values: Vec<BigUint> = Vec::with_capacity(len);
    let mut window = BigUint::zero();
    for n in 0..len {
        let next = if n < k {
            BigUint::from(seed.initial[n])
        } else {
            window.clone()
        };
        window += &next;
        if n >= k {
            window -= &values[n - k];
        }
        values.push(next);
    }
    SequencePrefix::new(values)
}

/// `U_1..U_count mod m`, two residues of state.
pub fn residue_stream(seed: FibPair, modulus: u64, count: usize) -> Result<Vec<u64>> {
    if modulus < 2 {
        return Err(Error::domain("residue modulus must be at least 2"));
    }
    if count == 0 {
        return Err(Error::domain("residue stream count must be at least 1"));
    }
    let mut out = Vec::with_capacity(count);
    let (mut prev, mut cur) = (seed.a % modulus, seed.b % modulus);
    out.push(prev);
    for _ in 1..count {
        out.push(cur);
        let next = add_mod(prev, cur, modulus);
        prev = cur;
        cur = next;
    }
    Ok(out)
}
