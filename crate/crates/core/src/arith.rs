//! Elementary number theory: divisors, the Möbius function, Möbius
//! inversion of sequence prefixes, primes and small modular helpers.
//!
//! Factorization is trial division. Everything here is sized for
//! arguments up to roughly `10^12`.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::realizability::SequencePrefix;
use crate::{Error, Result};

/// The ascending list of positive divisors of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisors {
    n: u64,
    list: Vec<u64>,
}

impl Divisors {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.list
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u64> {
        self.list.iter()
    }
}

impl<'a> IntoIterator for &'a Divisors {
    type Item = &'a u64;
    type IntoIter = std::slice::Iter<'a, u64>;

    fn into_iter(self) -> Self::IntoIter {
        self.list.iter()
    }
}

/// The Möbius function: `1` at `1`, `0` when `n` has a squared prime
/// factor, `(-1)^r` when `n` is a product of `r` distinct primes.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("mobius is defined for n >= 1"));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// `μ(0..=limit)` by a linear sieve. Index 0 holds 0 and is never a valid
/// argument.
pub fn mobius_table(limit: usize) -> Vec<i8> {
    let mut mu = vec![0i8; limit + 1];
    if limit == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > limit {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu
}

pub fn divisors(n: u64) -> Result<Divisors> {
    if n == 0 {
        return Err(Error::domain("divisors are defined for n >= 1"));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(Divisors { n, list: small })
}

/// `s_n = Σ_{d|n} μ(n/d) U_d` for every `1 <= n <= N`, as exact signed
/// integers. When `U` counts periodic points, `s_n` counts points of
/// least period `n`.
pub fn mobius_inversion_sums(values: &[BigUint]) -> Result<Vec<BigInt>> {
    if values.is_empty() {
        return Err(Error::domain("Möbius inversion needs a nonempty prefix"));
    }
    let len = values.len();
    let mu = mobius_table(len);
    let mut sums = vec![BigInt::zero(); len];
    // Dirichlet-style sieve: each U_d contributes μ(m) U_d to s_{m d}.
    for d in 1..=len {
        let u = BigInt::from(values[d - 1].clone());
        let mut m = 1;
        while m * d <= len {
            match mu[m] {
                1 => sums[m * d - 1] += &u,
                -1 => sums[m * d - 1] -= &u,
                _ => {}
            }
            m += 1;
        }
    }
    Ok(sums)
}

/// Inverts the Möbius sums back to the prefix via `v_n = Σ_{d|n} s_d`.
/// Always reproduces the input exactly.
pub fn inversion_roundtrip(prefix: &SequencePrefix) -> Result<SequencePrefix> {
    let sums = mobius_inversion_sums(prefix.values())?;
    let len = sums.len();
    let mut totals = vec![BigInt::zero(); len];
    for d in 1..=len {
        let mut n = d;
        while n <= len {
            totals[n - 1] += &sums[d - 1];
            n += d;
        }
    }
    let values = totals
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.to_biguint().ok_or_else(|| {
                Error::Invariant(format!("divisor sum at n={} came out negative", i + 1))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SequencePrefix::new(values)
}

/// All primes `<= limit` by the sieve of Eratosthenes. Empty when
/// `limit < 2`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = usize::try_from(limit).expect("prime sieve limit exceeds address space");
    let mut sieve = vec![true; limit + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= limit {
        if sieve[i] {
            let mut j = i * i;
            while j <= limit {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &is_p)| is_p.then_some(i as u64))
        .collect()
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    let (a, b) = (a % m, b % m);
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

/// Least nonnegative residue of a signed big integer.
pub fn bigint_mod(x: &BigInt, m: u64) -> u64 {
    let m = BigInt::from(m);
    let r = ((x % &m) + &m) % &m;
    u64::try_from(&r).expect("residue below a u64 modulus")
}

pub fn biguint_mod(x: &BigUint, m: u64) -> u64 {
    u64::try_from(x % m).expect("residue below a u64 modulus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prefix(v: &[u64]) -> SequencePrefix {
        SequencePrefix::from_u64s(v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(97).unwrap(), -1);
        assert!(matches!(mobius(0), Err(Error::Domain(_))));
    }

    #[test]
    fn mobius_table_matches_trial_division() {
        let table = mobius_table(5000);
        for n in 1..=5000u64 {
            assert_eq!(table[n as usize], mobius(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn mobius_is_multiplicative_on_coprime_pairs() {
        let mu = mobius_table(10_000);
        for m in 1..=100usize {
            for n in 1..=100usize {
                if num_integer::gcd(m, n) == 1 {
                    assert_eq!(mu[m * n], mu[m] * mu[n], "m={m} n={n}");
                }
            }
        }
        // sparse check further out
        for m in (1..=10_000usize).step_by(37) {
            for n in (1..=10_000 / m).step_by(7) {
                if num_integer::gcd(m, n) == 1 {
                    assert_eq!(mobius((m * n) as u64).unwrap(), mu[m] * mu[n]);
                }
            }
        }
    }

    #[test]
    fn mobius_divisor_sum_vanishes_above_one() {
        let mu = mobius_table(10_000);
        for n in 1..=10_000u64 {
            let total: i64 = divisors(n)
                .unwrap()
                .iter()
                .map(|&d| mu[d as usize] as i64)
                .sum();
            assert_eq!(total, i64::from(n == 1), "n={n}");
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap().as_slice(), &[1]);
        assert_eq!(divisors(12).unwrap().as_slice(), &[1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(13).unwrap().as_slice(), &[1, 13]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn divisor_list_shape() {
        for n in 1..=3000u64 {
            let d = divisors(n).unwrap();
            let list = d.as_slice();
            assert_eq!(list[0], 1);
            assert_eq!(*list.last().unwrap(), n);
            assert!(list.windows(2).all(|w| w[0] < w[1]));
            assert!(list.iter().all(|&x| n % x == 0 && list.contains(&(n / x))));
            assert_eq!(list.len(), (1..=n).filter(|x| n % x == 0).count());
            let root = (n as f64).sqrt() as u64;
            let square = root * root == n || (root + 1) * (root + 1) == n;
            assert_eq!(list.len() % 2 == 1, square, "n={n}");
        }
    }

    #[test]
    fn inversion_examples() {
        let lucas = mobius_inversion_sums(prefix(&[1, 3, 4, 7, 11, 18]).values()).unwrap();
        assert_eq!(lucas, ints(&[1, 2, 3, 4, 10, 12]));
        let constant = mobius_inversion_sums(prefix(&[1, 1, 1, 1]).values()).unwrap();
        assert_eq!(constant, ints(&[1, 0, 0, 0]));
        let fib = mobius_inversion_sums(prefix(&[1, 1, 2, 3, 5]).values()).unwrap();
        assert_eq!(fib, ints(&[1, 0, 1, 2, 4]));
        assert!(mobius_inversion_sums(&[]).is_err());
    }

    #[test]
    fn inversion_sums_can_be_negative() {
        let s = mobius_inversion_sums(prefix(&[5, 0]).values()).unwrap();
        assert_eq!(s, ints(&[5, -5]));
    }

    #[test]
    fn roundtrip_examples() {
        for v in [&[1u64, 3, 4, 7][..], &[5, 5, 5, 5, 5], &[0, 2, 0, 4]] {
            assert_eq!(inversion_roundtrip(&prefix(v)).unwrap(), prefix(v));
        }
    }

    #[test]
    fn prime_examples() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(primes_up_to(1).is_empty());
        assert!(primes_up_to(0).is_empty());
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let sieved = primes_up_to(20_000);
        let trial: Vec<u64> = (0..=20_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, trial);
    }

    #[test]
    fn residue_helpers() {
        assert_eq!(sub_mod(2, 5, 7), 4);
        assert_eq!(bigint_mod(&BigInt::from(-2), 13), 11);
        assert_eq!(mul_mod(u64::MAX - 1, u64::MAX - 1, u64::MAX), 1);
    }

    fn big_prefix() -> impl Strategy<Value = Vec<BigUint>> {
        prop::collection::vec(
            prop::collection::vec(any::<u32>(), 0..=4).prop_map(BigUint::new),
            1..=64,
        )
    }

    proptest! {
        #[test]
        fn roundtrip_is_identity(values in big_prefix()) {
            let p = SequencePrefix::new(values).unwrap();
            prop_assert_eq!(inversion_roundtrip(&p).unwrap(), p);
        }
    }
}
