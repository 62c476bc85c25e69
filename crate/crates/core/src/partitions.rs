//! Generating functions for a_r(n) and c(n), plus independent oracles.
//!
//! a_r(n) counts partitions of n whose even parts come in one color while
//! odd parts carry one of r colors; the generating function is
//! f_2^(r-1) / f_1^r. The auxiliary series c(n) is defined by f_1 f_2^2.
//! Two oracles keep the series pipeline honest: exhaustive colored-partition
//! enumeration at small n, and the classical pentagonal recurrence for p(n).

use num_bigint::BigInt;
use thiserror::Error;

use crate::series::{self, euler_factor, TruncatedSeries};

/// Enumeration beyond this blows up combinatorially; the series path takes
/// over well before that.
pub const ORACLE_MAX_N: u64 = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("n = {0} too large for the enumeration oracle (max {ORACLE_MAX_N})")]
    OracleTooLarge(u64),
    #[error("r must be >= 1")]
    InvalidColorCount,
    #[error(transparent)]
    Series(#[from] series::SeriesError),
}

/// Parameters for an a_r expansion request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionSeriesRequest {
    /// Number of colors available to odd parts.
    pub r: u32,
    /// Highest coefficient index to compute.
    pub trunc: usize,
    /// Modulus, 0 for exact integers.
    pub modulus: u64,
}

/// Coefficients of f_1 f_2^2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSeries {
    series: TruncatedSeries,
}

impl CSeries {
    pub fn trunc(&self) -> usize {
        self.series.trunc()
    }

    pub fn modulus(&self) -> u64 {
        self.series.modulus()
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        self.series.coeff(n)
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }
}

/// Expansion of sum a_r(n) q^n = f_2^(r-1) / f_1^r as a product of two
/// sparse-backed Euler factors.
pub fn a_r_series(req: PartitionSeriesRequest) -> Result<TruncatedSeries, PartitionError> {
    if req.r == 0 {
        return Err(PartitionError::InvalidColorCount);
    }
    let even = euler_factor(2, req.r as i64 - 1, req.trunc, req.modulus)?;
    let odd = euler_factor(1, -(req.r as i64), req.trunc, req.modulus)?;
    Ok(even.mul(&odd)?)
}

/// Coefficients c(0..trunc) of f_1 f_2^2.
pub fn c_series(trunc: usize, modulus: u64) -> Result<CSeries, PartitionError> {
    let f1 = euler_factor(1, 1, trunc, modulus)?;
    let f2sq = euler_factor(2, 2, trunc, modulus)?;
    Ok(CSeries {
        series: f1.mul(&f2sq)?,
    })
}

/// Exact count of partitions of n with uncolored even parts and r-colored
/// odd parts, by exhaustive recursion over part sizes. A part size s used
/// with multiplicity k contributes C(k + r - 1, k) color multisets when s
/// is odd and a single choice when s is even.
pub fn enumerate_colored_partitions(n: u64, r: u32) -> Result<u128, PartitionError> {
    if n > ORACLE_MAX_N {
        return Err(PartitionError::OracleTooLarge(n));
    }
    if r == 0 {
        return Err(PartitionError::InvalidColorCount);
    }
    fn binom(n: u64, k: u64) -> u128 {
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc
    }
    fn count(n: u64, max_part: u64, r: u32) -> u128 {
        if n == 0 {
            return 1;
        }
        if max_part == 0 {
            return 0;
        }
        let mut total = 0u128;
        for k in 0..=n / max_part {
            let colorings = if max_part % 2 == 1 {
                binom(k + r as u64 - 1, k)
            } else {
                1
            };
            total += colorings * count(n - k * max_part, max_part - 1, r);
        }
        total
    }
    Ok(count(n, n.max(1), r))
}

/// p(0..n_max) by Euler's pentagonal recurrence
/// p(n) = sum_k (-1)^(k+1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
pub fn p_euler_oracle(n_max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::ZERO; n_max + 1];
    p[0] = BigInt::from(1);
    for n in 1..=n_max {
        let mut acc = BigInt::ZERO;
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > n {
                break;
            }
            let sign = k % 2 == 1;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if sign {
                acc += term;
            } else {
                acc -= term;
            }
            k += 1;
        }
        p[n] = acc;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_r_exact(r: u32, trunc: usize) -> TruncatedSeries {
        a_r_series(PartitionSeriesRequest {
            r,
            trunc,
            modulus: 0,
        })
        .unwrap()
    }

    #[test]
    fn a3_of_2_is_7() {
        assert_eq!(a_r_exact(3, 4).coeff(2), BigInt::from(7));
        assert_eq!(enumerate_colored_partitions(2, 3).unwrap(), 7);
    }

    #[test]
    fn a1_is_the_partition_function() {
        let s = a_r_exact(1, 200);
        let p = p_euler_oracle(200);
        for n in 0..=200 {
            assert_eq!(s.coeff(n), p[n], "p({n})");
        }
        assert_eq!(p[5], BigInt::from(7));
        assert_eq!(p[0], BigInt::from(1));
    }

    #[test]
    fn oracle_base_cases() {
        for r in 1..=6 {
            assert_eq!(enumerate_colored_partitions(0, r).unwrap(), 1);
        }
        assert_eq!(enumerate_colored_partitions(1, 5).unwrap(), 5);
        assert!(matches!(
            enumerate_colored_partitions(15, 2),
            Err(PartitionError::OracleTooLarge(15))
        ));
        assert!(matches!(
            enumerate_colored_partitions(3, 0),
            Err(PartitionError::InvalidColorCount)
        ));
    }

    #[test]
    fn series_matches_enumeration_all_small_cases() {
        for r in 1..=5u32 {
            let s = a_r_exact(r, 12);
            for n in 0..=12u64 {
                let count = enumerate_colored_partitions(n, r).unwrap();
                assert_eq!(s.coeff(n as usize), BigInt::from(count), "a_{r}({n})");
            }
        }
    }

    #[test]
    fn a2_counts_overpartitions() {
        // overpartition numbers 1, 2, 4, 8, 14, 24, 40, 64, 100, ...
        let s = a_r_exact(2, 8);
        for (n, expect) in [1i64, 2, 4, 8, 14, 24, 40, 64, 100].iter().enumerate() {
            assert_eq!(s.coeff(n), BigInt::from(*expect));
            assert_eq!(
                enumerate_colored_partitions(n as u64, 2).unwrap(),
                *expect as u128
            );
        }
    }

    #[test]
    fn c_series_two_routes_agree() {
        // brute force via the literal truncated products, two groupings
        let t = 10;
        let c = c_series(t, 0).unwrap();
        assert_eq!(c.coeff(0), BigInt::from(1));
        let f1 = crate::pentagonal(1, t, 0);
        let f2 = crate::pentagonal(2, t, 0);
        let route_a = f1.mul(&f2).unwrap().mul(&f2).unwrap();
        let route_b = f2.mul(&f2).unwrap().mul(&f1).unwrap();
        assert_eq!(route_a, route_b);
        for n in 0..=t {
            assert_eq!(c.coeff(n), route_a.coeff(n));
        }
    }

    #[test]
    fn c_of_5_is_2() {
        // xi(5) = c(5) + (10/5)_L = c(5), and the paper gives xi(5) = 2
        assert_eq!(c_series(5, 0).unwrap().coeff(5), BigInt::from(2));
    }

    #[test]
    fn c_series_f1_f2_squared_matches_a3_eq_3_1() {
        // a_3(5n+1) = 3 c(n) mod 5 for n <= 2000
        let n_max = 2000usize;
        let a3 = a_r_series(PartitionSeriesRequest {
            r: 3,
            trunc: 5 * n_max + 1,
            modulus: 5,
        })
        .unwrap();
        let c = c_series(n_max, 5).unwrap();
        let lhs = a3.progression(5, 1).unwrap();
        let rhs = c.series().scalar_mul(3);
        for n in 0..=n_max {
            assert_eq!(lhs.coeff(n), rhs.coeff(n), "n = {n}");
        }
    }

    #[test]
    fn c_exact_reduces_to_modular() {
        let exact = c_series(300, 0).unwrap();
        for m in [3u64, 5, 7] {
            let modular = c_series(300, m).unwrap();
            assert_eq!(exact.series().reduce(m).unwrap(), *modular.series());
        }
    }
}
