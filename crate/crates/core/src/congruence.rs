//! Lucas and Fibonacci congruences implied by the golden-mean shift
//! realizing the Lucas numbers, checked over parameter ranges.
//!
//! Prime-indexed checks work with residues from modular fast doubling.
//! The Möbius-sum check over all `n` uses exact Lucas values, and the
//! Cassini-type identity is compared as exact integers.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;

use crate::arith::{
    add_mod, bigint_mod, is_prime, mobius_inversion_sums, mul_mod, primes_up_to, sub_mod,
};
use crate::recurrence::{fib, lucas_prefix};
use crate::{Error, Result};

/// Largest modulus accepted by [`check_prime_power`] unless overridden.
pub const DEFAULT_MODULUS_BOUND: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    /// `Σ_{d|n} μ(n/d) L_d ≡ 0 (mod n)`
    Corollary,
    /// `L_p = F_{p-2} + 3F_{p-1} ≡ 1 (mod p)`
    A,
    /// `F_{p-1} ≡ 1 ⇔ F_{p-2} ≡ -2 (mod p)`
    BEquiv,
    /// `L_{p^k} ≡ L_{p^{k-1}} (mod p^k)`
    CPrimePower,
    /// `L_{pq} + 1 ≡ L_p + L_q (mod pq)`
    DProduct,
    /// `F_{p-1} ≡ 1 (mod p)` for `p ≡ ±2 (mod 5)`, with `F_{p+1} ≡ 0`
    Lemma31,
    /// `F_{p-2} F_p = F_{p-1}^2 + 1` for odd `p`
    RemarkBIdentity,
    /// `F_{p-1} ≡ 0 or 1 (mod p)` for `p ≠ 2, 5`
    RemarkBDichotomy,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::Corollary,
        IdentityId::A,
        IdentityId::BEquiv,
        IdentityId::CPrimePower,
        IdentityId::DProduct,
        IdentityId::Lemma31,
        IdentityId::RemarkBIdentity,
        IdentityId::RemarkBDichotomy,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Corollary => "corollary",
            IdentityId::A => "a",
            IdentityId::BEquiv => "b_equiv",
            IdentityId::CPrimePower => "c_prime_power",
            IdentityId::DProduct => "d_product",
            IdentityId::Lemma31 => "lemma31",
            IdentityId::RemarkBIdentity => "remark_b_identity",
            IdentityId::RemarkBDichotomy => "remark_b_dichotomy",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The parameters a check was run at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Context {
    N(u64),
    P(u64),
    PrimePower { p: u64, k: u32 },
    Product { p: u64, q: u64 },
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::N(n) => write!(f, "n={n}"),
            Context::P(p) => write!(f, "p={p}"),
            Context::PrimePower { p, k } => write!(f, "p={p};k={k}"),
            Context::Product { p, q } => write!(f, "p={p};q={q}"),
        }
    }
}

/// A secondary comparison folded into a report, such as the cited
/// ingredient of a lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCheck {
    pub label: &'static str,
    pub lhs: u64,
    pub rhs: u64,
}

impl SideCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// One verified congruence instance. `holds` is true exactly when
/// `lhs == rhs` and every side check agrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub identity: IdentityId,
    pub context: Context,
    pub modulus: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub side_checks: Vec<SideCheck>,
    pub holds: bool,
}

impl CongruenceReport {
    fn new(
        identity: IdentityId,
        context: Context,
        modulus: u64,
        lhs: u64,
        rhs: u64,
        side_checks: Vec<SideCheck>,
    ) -> Self {
        let holds = lhs == rhs && side_checks.iter().all(SideCheck::holds);
        CongruenceReport {
            identity,
            context,
            modulus,
            lhs,
            rhs,
            side_checks,
            holds,
        }
    }
}

/// `(F_n mod m, F_{n+1} mod m)` by fast doubling over the bits of `n`.
pub fn fib_pair_mod(n: u64, m: u64) -> Result<(u64, u64)> {
    if m < 2 {
        return Err(Error::domain("modulus must be at least 2"));
    }
    let (mut f, mut g) = (0u64, 1u64);
    for bit in (0..64 - n.leading_zeros()).rev() {
        // F_{2j} = F_j (2F_{j+1} - F_j), F_{2j+1} = F_j^2 + F_{j+1}^2
        let two_g_minus_f = sub_mod(add_mod(g, g, m), f, m);
        let even = mul_mod(f, two_g_minus_f, m);
        let odd = add_mod(mul_mod(f, f, m), mul_mod(g, g, m), m);
        if n >> bit & 1 == 1 {
            f = odd;
            g = add_mod(even, odd, m);
        } else {
            f = even;
            g = odd;
        }
    }
    Ok((f, g))
}

/// `F_n mod m`, allowing `m = 1`.
fn fib_mod(n: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    fib_pair_mod(n, m).expect("modulus >= 2").0
}

/// `L_n mod m` for `n >= 1` via `L_n = 2F_{n+1} - F_n`.
pub fn lucas_mod(n: u64, m: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("Lucas numbers are indexed from 1"));
    }
    if m == 1 {
        return Ok(0);
    }
    let (f, g) = fib_pair_mod(n, m)?;
    Ok(sub_mod(add_mod(g, g, m), f, m))
}

fn require_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(())
}

/// `Σ_{d|n} μ(n/d) L_d mod n` against 0 for every `n <= max_n`, from exact
/// Lucas values.
pub fn check_corollary(max_n: usize) -> Result<Vec<CongruenceReport>> {
    let lucas = lucas_prefix(max_n)?;
    let sums = mobius_inversion_sums(lucas.values())?;
    Ok(sums
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let n = i as u64 + 1;
            CongruenceReport::new(
                IdentityId::Corollary,
                Context::N(n),
                n,
                bigint_mod(s, n),
                0,
                vec![],
            )
        })
        .collect())
}

/// `L_p ≡ 1 (mod p)`, with `F_{p-2} + 3F_{p-1}` as a side check.
pub fn check_identity_a(p: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    let lhs = lucas_mod(p, p)?;
    let decomposed = add_mod(fib_mod(p - 2, p), mul_mod(3, fib_mod(p - 1, p), p), p);
    Ok(CongruenceReport::new(
        IdentityId::A,
        Context::P(p),
        p,
        lhs,
        1 % p,
        vec![SideCheck {
            label: "F_{p-2}+3F_{p-1}",
            lhs: decomposed,
            rhs: 1 % p,
        }],
    ))
}

/// `F_{p-1} ≡ 1 ⇔ F_{p-2} ≡ -2 (mod p)`. The report compares the truth
/// values (0 or 1) of the two sides; the residues go in side checks that
/// compare each against itself.
pub fn check_identity_b(p: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    if p == 2 || p == 5 {
        return Err(Error::domain("identity (b) excludes p = 2 and p = 5"));
    }
    let f1 = fib_mod(p - 1, p);
    let f2 = fib_mod(p - 2, p);
    let left = u64::from(f1 == 1);
    let right = u64::from(f2 == p - 2);
    Ok(CongruenceReport::new(
        IdentityId::BEquiv,
        Context::P(p),
        p,
        left,
        right,
        vec![
            SideCheck {
                label: "F_{p-1}",
                lhs: f1,
                rhs: f1,
            },
            SideCheck {
                label: "F_{p-2}",
                lhs: f2,
                rhs: f2,
            },
        ],
    ))
}

/// `L_{p^k} ≡ L_{p^{k-1}} (mod p^k)` with `p^k <= DEFAULT_MODULUS_BOUND`.
pub fn check_prime_power(p: u64, k: u32) -> Result<CongruenceReport> {
    check_prime_power_with_bound(p, k, DEFAULT_MODULUS_BOUND)
}

pub fn check_prime_power_with_bound(p: u64, k: u32, bound: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::domain("prime power exponent must be at least 1"));
    }
    let modulus = p
        .checked_pow(k)
        .filter(|&m| m <= bound)
        .ok_or_else(|| Error::Budget {
            what: "prime power modulus",
            needed: format!("{p}^{k}"),
            limit: bound.to_string(),
        })?;
    let lower = modulus / p;
    Ok(CongruenceReport::new(
        IdentityId::CPrimePower,
        Context::PrimePower { p, k },
        modulus,
        lucas_mod(modulus, modulus)?,
        lucas_mod(lower, modulus)?,
        vec![],
    ))
}

/// `L_{pq} + 1 ≡ L_p + L_q (mod pq)` for distinct primes.
pub fn check_product(p: u64, q: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    require_prime(q)?;
    if p == q {
        return Err(Error::domain("product identity needs distinct primes"));
    }
    let m = p
        .checked_mul(q)
        .ok_or_else(|| Error::domain("pq overflows u64"))?;
    Ok(CongruenceReport::new(
        IdentityId::DProduct,
        Context::Product { p, q },
        m,
        add_mod(lucas_mod(m, m)?, 1, m),
        add_mod(lucas_mod(p, m)?, lucas_mod(q, m)?, m),
        vec![],
    ))
}

/// `F_{p-1} ≡ 1 (mod p)` for primes `p ≡ 2, 3 (mod 5)`, with the ingredient
/// `F_{p+1} ≡ 0 (mod p)` as a side check.
pub fn check_lemma31(p: u64) -> Result<CongruenceReport> {
    require_prime(p)?;
    if !matches!(p % 5, 2 | 3) {
        return Err(Error::domain(format!("{p} is not 2 or 3 mod 5")));
    }
    Ok(CongruenceReport::new(
        IdentityId::Lemma31,
        Context::P(p),
        p,
        fib_mod(p - 1, p),
        1,
        vec![SideCheck {
            label: "F_{p+1}",
            lhs: fib_mod(p + 1, p),
            rhs: 0,
        }],
    ))
}

fn remark_b_identity_report(
    p: u64,
    f_pm2: &BigUint,
    f_pm1: &BigUint,
    f_p: &BigUint,
) -> CongruenceReport {
    let left = f_pm2 * f_p;
    let right = f_pm1 * f_pm1 + 1u32;
    let exact = BigInt::from(left.clone()) - BigInt::from(right.clone());
    CongruenceReport::new(
        IdentityId::RemarkBIdentity,
        Context::P(p),
        p,
        u64::try_from(left % p).expect("residue"),
        u64::try_from(right % p).expect("residue"),
        vec![SideCheck {
            label: "exact difference is zero",
            lhs: u64::from(exact != BigInt::from(0)),
            rhs: 0,
        }],
    )
}

fn remark_b_dichotomy_report(p: u64) -> CongruenceReport {
    let alpha = fib_mod(p - 1, p);
    // α ∈ {0, 1} mod p ⇔ α² - α ≡ 0
    CongruenceReport::new(
        IdentityId::RemarkBDichotomy,
        Context::P(p),
        p,
        sub_mod(mul_mod(alpha, alpha, p), alpha, p),
        0,
        vec![SideCheck {
            label: "F_{p-1}",
            lhs: alpha,
            rhs: alpha,
        }],
    )
}

/// For an odd prime: the exact identity `F_{p-2}F_p = F_{p-1}^2 + 1`, and
/// unless `p = 5` the dichotomy `F_{p-1} mod p ∈ {0, 1}`.
pub fn check_remark_b(p: u64) -> Result<Vec<CongruenceReport>> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::domain("remark (b) needs an odd prime"));
    }
    let mut out = vec![remark_b_identity_report(
        p,
        &fib(p - 2),
        &fib(p - 1),
        &fib(p),
    )];
    if p != 5 {
        out.push(remark_b_dichotomy_report(p));
    }
    Ok(out)
}

/// Identity (a) for every prime `<= max_prime`.
pub fn sweep_identity_a(max_prime: u64) -> Result<Vec<CongruenceReport>> {
    primes_up_to(max_prime)
        .into_par_iter()
        .map(check_identity_a)
        .collect()
}

/// Identity (b) for every prime `<= max_prime` other than 2 and 5.
pub fn sweep_identity_b(max_prime: u64) -> Result<Vec<CongruenceReport>> {
    primes_up_to(max_prime)
        .into_par_iter()
        .filter(|&p| p != 2 && p != 5)
        .map(check_identity_b)
        .collect()
}

/// `F_{p-1} ≡ 1` and `F_{p+1} ≡ 0 (mod p)` for every prime `<= max_prime` that is 2 or 3 mod 5.
pub fn sweep_lemma31(max_prime: u64) -> Result<Vec<CongruenceReport>> {
    primes_up_to(max_prime)
        .into_par_iter()
        .filter(|p| matches!(p % 5, 2 | 3))
        .map(check_lemma31)
        .collect()
}

/// Identity (c) for every prime power `p^k <= max_modulus`, ordered by
/// `(p, k)`.
pub fn sweep_prime_powers(max_modulus: u64) -> Result<Vec<CongruenceReport>> {
    let mut params = Vec::new();
    for p in primes_up_to(max_modulus) {
        let mut k = 1u32;
        let mut m = p;
        loop {
            params.push((p, k));
            match m.checked_mul(p) {
                Some(next) if next <= max_modulus => {
                    m = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
    params
        .into_par_iter()
        .map(|(p, k)| check_prime_power_with_bound(p, k, max_modulus))
        .collect()
}

/// Identity (d) for every prime pair `p < q` with `pq <= max_modulus`.
pub fn sweep_products(max_modulus: u64) -> Result<Vec<CongruenceReport>> {
    let primes = primes_up_to(max_modulus / 2);
    let mut params = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if p * q > max_modulus {
                break;
            }
            params.push((p, q));
        }
    }
    params
        .into_par_iter()
        .map(|(p, q)| check_product(p, q))
        .collect()
}

/// The `F_{p-2} F_p = F_{p-1}^2 + 1` identity and the residue dichotomy for every odd prime `<= max_prime`.
/// Walks the Fibonacci numbers once, so each exact comparison costs two
/// big multiplications.
pub fn sweep_remark_b(max_prime: u64) -> Result<Vec<CongruenceReport>> {
    let primes = primes_up_to(max_prime);
    let mut out = Vec::new();
    // (F_{n-2}, F_{n-1}, F_n), starting at n = 2
    let mut f_nm2 = BigUint::ZERO;
    let mut f_nm1 = BigUint::one();
    let mut f_n = BigUint::one();
    let mut n = 2u64;
    for p in primes.into_iter().filter(|&p| p != 2) {
        while n < p {
            let next = &f_nm1 + &f_n;
            f_nm2 = std::mem::replace(&mut f_nm1, std::mem::replace(&mut f_n, next));
            n += 1;
        }
        out.push(remark_b_identity_report(p, &f_nm2, &f_nm1, &f_n));
        if p != 5 {
            out.push(remark_b_dichotomy_report(p));
        }
    }
    Ok(out)
}

/// Sweep bounds for [`sweep_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepBounds {
    pub max_n: usize,
    pub max_prime: u64,
    pub max_prime_power: u64,
    pub max_product: u64,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_n: 2000,
            max_prime: 100_000,
            max_prime_power: 1_000_000,
            max_product: 100_000,
        }
    }
}

/// Runs the sweep for one identity.
pub fn sweep(identity: IdentityId, bounds: &SweepBounds) -> Result<Vec<CongruenceReport>> {
    match identity {
        IdentityId::Corollary => check_corollary(bounds.max_n),
        IdentityId::A => sweep_identity_a(bounds.max_prime),
        IdentityId::BEquiv => sweep_identity_b(bounds.max_prime),
        IdentityId::CPrimePower => sweep_prime_powers(bounds.max_prime_power),
        IdentityId::DProduct => sweep_products(bounds.max_product),
        IdentityId::Lemma31 => sweep_lemma31(bounds.max_prime),
        IdentityId::RemarkBIdentity | IdentityId::RemarkBDichotomy => {
            Ok(sweep_remark_b(bounds.max_prime)?
                .into_iter()
                .filter(|r| r.identity == identity)
                .collect())
        }
    }
}

/// Every identity in [`IdentityId::ALL`] order.
pub fn sweep_all(bounds: &SweepBounds) -> Result<Vec<CongruenceReport>> {
    let mut out = Vec::new();
    for id in IdentityId::ALL {
        if id == IdentityId::RemarkBDichotomy {
            continue;
        }
        if id == IdentityId::RemarkBIdentity {
            let mut both = sweep_remark_b(bounds.max_prime)?;
            both.sort_by_key(|r| r.identity);
            out.extend(both);
            continue;
        }
        out.extend(sweep(id, bounds)?);
    }
    Ok(out)
}
