//! Periodic points of subshifts of finite type.
//!
//! A 0-1 matrix `A` allows symbol `i` to be followed by symbol `j` when
//! `A[i][j] = 1`. Points of period `n` are the cyclic admissible words of
//! length `n`, and their number is `trace(A^n)`. [`trace_power`] computes
//! that exactly; [`enumerate_periodic_points`] counts the words one by one
//! and serves as the independent oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::mobius_inversion_sums;
use crate::realizability::SequencePrefix;
use crate::{Error, Result};

/// Default cap on `size^n` for [`enumerate_periodic_points`].
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 26;

/// Square adjacency matrix with entries in `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix {
    size: usize,
    entries: Vec<bool>,
}

impl ZeroOneMatrix {
    pub fn new(rows: &[Vec<u8>]) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::domain("matrix must have at least one row"));
        }
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::domain(format!(
                    "row {} has {} entries, expected {size}",
                    i + 1,
                    row.len()
                )));
            }
            for &x in row {
                match x {
                    0 => entries.push(false),
                    1 => entries.push(true),
                    _ => return Err(Error::domain(format!("entry {x} is not 0 or 1"))),
                }
            }
        }
        Ok(ZeroOneMatrix { size, entries })
    }

    /// The matrix whose row-major entries are the low `size^2` bits of
    /// `bits`, bit 0 first. Enumerates every matrix of a given size.
    pub fn from_bits(size: usize, bits: u64) -> Result<Self> {
        if size == 0 || size * size > 64 {
            return Err(Error::domain("bit-packed matrices need 1 <= size <= 8"));
        }
        let entries = (0..size * size).map(|i| bits >> i & 1 == 1).collect();
        Ok(ZeroOneMatrix { size, entries })
    }

    /// All `2^(size^2)` matrices of the given size (size at most 4).
    pub fn all_of_size(size: usize) -> Result<Vec<Self>> {
        if size == 0 || size > 4 {
            return Err(Error::domain("exhaustive matrix lists need 1 <= size <= 4"));
        }
        (0..1u64 << (size * size))
            .map(|bits| Self::from_bits(size, bits))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.entries
            .chunks(self.size)
            .map(|r| r.iter().map(|&b| u8::from(b)).collect())
            .collect()
    }

    pub fn diagonal_ones(&self) -> usize {
        (0..self.size).filter(|&i| self.get(i, i)).count()
    }

    fn to_big(&self) -> BigMatrix {
        BigMatrix {
            size: self.size,
            cells: self
                .entries
                .iter()
                .map(|&b| if b { BigUint::one() } else { BigUint::zero() })
                .collect(),
        }
    }
}

impl fmt::Display for ZeroOneMatrix {
    /// Writes the matrix text format: the size, then one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.size)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for ZeroOneMatrix {
    type Err = Error;

    /// Parses the size on the first significant line followed by that many
    /// rows of whitespace-separated 0/1 tokens. Blank lines and lines
    /// starting with `#` are skipped.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing matrix size".into(),
        })?;
        let size: usize = header.parse().map_err(|_| Error::Parse {
            line,
            message: format!("matrix size {header:?} is not a positive integer"),
        })?;
        if size == 0 {
            return Err(Error::Parse {
                line,
                message: "matrix size must be at least 1".into(),
            });
        }
        let mut rows = Vec::with_capacity(size);
        for (line, text) in lines {
            if rows.len() == size {
                return Err(Error::Parse {
                    line,
                    message: format!("extra row beyond declared size {size}"),
                });
            }
            let row = text
                .split_whitespace()
                .map(|tok| match tok {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    _ => Err(Error::Parse {
                        line,
                        message: format!("token {tok:?} is not 0 or 1"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != size {
                return Err(Error::Parse {
                    line,
                    message: format!("row has {} entries, expected {size}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != size {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("expected {size} rows, found {}", rows.len()),
            });
        }
        ZeroOneMatrix::new(&rows)
    }
}

/// `[[1,1],[1,0]]`: symbol 1 must be followed by 0.
pub fn golden_mean_matrix() -> ZeroOneMatrix {
    ZeroOneMatrix {
        size: 2,
        entries: vec![true, true, true, false],
    }
}

/// The `k x k` companion-style matrix: first row all ones, a single one at
/// column `i - 1` of every later row `i`.
pub fn kstep_matrix(k: usize) -> Result<ZeroOneMatrix> {
    if k == 0 {
        return Err(Error::domain("k-step matrix needs k >= 1"));
    }
    let mut entries = vec![false; k * k];
    entries[..k].fill(true);
    for i in 1..k {
        entries[i * k + i - 1] = true;
    }
    Ok(ZeroOneMatrix { size: k, entries })
}

#[derive(Clone)]
struct BigMatrix {
    size: usize,
    cells: Vec<BigUint>,
}

impl BigMatrix {
    fn identity(size: usize) -> Self {
        let mut cells = vec![BigUint::zero(); size * size];
        for i in 0..size {
            cells[i * size + i] = BigUint::one();
        }
        BigMatrix { size, cells }
    }

    fn mul(&self, other: &BigMatrix) -> BigMatrix {
        let s = self.size;
        let mut cells = vec![BigUint::zero(); s * s];
        for i in 0..s {
            for k in 0..s {
                let left = &self.cells[i * s + k];
                if left.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let right = &other.cells[k * s + j];
                    if !right.is_zero() {
                        cells[i * s + j] += left * right;
                    }
                }
            }
        }
        BigMatrix { size: s, cells }
    }

    fn trace(&self) -> BigUint {
        (0..self.size)
            .map(|i| &self.cells[i * self.size + i])
            .fold(BigUint::zero(), |acc, x| acc + x)
    }
}

/// `trace(A^n)`, the number of period-`n` points, by binary exponentiation.
pub fn trace_power(matrix: &ZeroOneMatrix, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::domain("periodic points are counted for n >= 1"));
    }
    let mut base = matrix.to_big();
    let mut acc = BigMatrix::identity(matrix.size);
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    Ok(acc.trace())
}

/// `trace(A^1), ..., trace(A^len)` by repeated multiplication.
pub fn trace_prefix(matrix: &ZeroOneMatrix, len: usize) -> Result<SequencePrefix> {
    if len == 0 {
        return Err(Error::domain("prefix length must be at least 1"));
    }
    let base = matrix.to_big();
    let mut power = base.clone();
    let mut values = Vec::with_capacity(len);
    for n in 1..=len {
        values.push(power.trace());
        if n < len {
            power = power.mul(&base);
        }
    }
    SequencePrefix::new(values)
}

/// Counts cyclic admissible words of length `n` by visiting all `size^n`
/// symbol strings. Fails with [`Error::Budget`] when `size^n` exceeds
/// [`DEFAULT_ENUMERATION_BUDGET`].
pub fn enumerate_periodic_points(matrix: &ZeroOneMatrix, n: u64) -> Result<u64> {
    enumerate_periodic_points_with_budget(matrix, n, DEFAULT_ENUMERATION_BUDGET)
}

pub fn enumerate_periodic_points_with_budget(
    matrix: &ZeroOneMatrix,
    n: u64,
    budget: u64,
) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("periodic points are counted for n >= 1"));
    }
    let size = matrix.size as u64;
    let words = u32::try_from(n)
        .ok()
        .and_then(|e| size.checked_pow(e))
        .filter(|&w| w <= budget)
        .ok_or_else(|| Error::Budget {
            what: "periodic point enumeration",
            needed: format!("{size}^{n} words"),
            limit: budget.to_string(),
        })?;
    let n = n as usize;
    let mut word = vec![0usize; n];
    let mut count = 0u64;
    for _ in 0..words {
        let admissible = (0..n).all(|i| matrix.get(word[i], word[(i + 1) % n]));
        if admissible {
            count += 1;
        }
        // odometer increment
        for digit in word.iter_mut() {
            *digit += 1;
            if *digit < matrix.size {
                break;
            }
            *digit = 0;
        }
    }
    Ok(count)
}

/// `LPer_1..LPer_len`: Möbius sums of the traces. Each is checked to be
/// nonnegative and divisible by its index; a violation means a bug.
pub fn least_period_counts(matrix: &ZeroOneMatrix, len: usize) -> Result<Vec<BigUint>> {
    let traces = trace_prefix(matrix, len)?;
    let sums = mobius_inversion_sums(traces.values())?;
    sums.into_iter()
        .enumerate()
        .map(|(i, s)| {
            let n = i + 1;
            if s.is_negative() || !s.is_multiple_of(&BigInt::from(n)) {
                return Err(Error::Invariant(format!(
                    "least-period count {s} at n={n} is not a nonnegative multiple of {n}"
                )));
            }
            Ok(s.into_parts().1)
        })
        .collect()
}
