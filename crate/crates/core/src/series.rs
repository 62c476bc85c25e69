//! Exact truncated power-series arithmetic over Z and Z/mZ.
//!
//! A [`TruncatedSeries`] stores the coefficients of q^0 .. q^trunc of a
//! formal power series, together with a leading-exponent offset counted in
//! 1/24 units (so eta-quotient prefactors q^(sum delta r_delta / 24) stay
//! integral bookkeeping). Coefficients are arbitrary-precision integers in
//! exact mode (modulus 0) and canonical residues in [0, m) otherwise.
//!
//! Truncation is explicit: operations never extend precision, and the
//! result order of a binary operation is the minimum of the operand orders.
//! Multiplication has a sparse fast path keyed on the nonzero count of the
//! sparser operand, which is what makes pentagonal-factor products
//! (q^d;q^d)_inf of length 10^5..10^6 cheap.
//!
//! Powering modulo a prime t uses the Frobenius identity
//! (sum a_n q^n)^t = sum a_n q^(tn) (mod t) to split the exponent, so
//! things like (q;q)_inf^1701 mod 3 at length ~35000 cost a handful of
//! sparse multiplications instead of log2(1701) dense ones. The naive
//! binary-powering path is kept and cross-checked in tests.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith;

/// Largest supported modulus: residues and their products must fit u64.
const MAX_MODULUS: u64 = 1 << 32;

/// Nonzero-count threshold for the sparse multiplication path, as a
/// fraction of the dense length.
const SPARSE_FRACTION: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("offset mismatch: {0}/24 vs {1}/24 (shift explicitly before adding)")]
    OffsetMismatch(i64, i64),
    #[error("constant term is not invertible")]
    NonInvertibleConstant,
    #[error("offset {0}/24 is not an integral power of q")]
    NonIntegralOffset(i64),
    #[error("cannot divide by q^{0}: lower coefficients are nonzero")]
    NegativeShiftLoss(i64),
    #[error("insufficient truncation: have {have}, need {need}")]
    InsufficientTruncation { have: usize, need: usize },
    #[error("modulus {0} too large (must be < 2^32)")]
    ModulusTooLarge(u64),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Coeffs {
    Exact(Vec<BigInt>),
    Modular { m: u64, c: Vec<u64> },
}

/// Truncated formal power series q^(offset24/24) * sum coeffs[n] q^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    offset24: i64,
    coeffs: Coeffs,
}

impl TruncatedSeries {
    /// Exact series from arbitrary-precision coefficients.
    pub fn exact(coeffs: Vec<BigInt>, offset24: i64) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries {
            offset24,
            coeffs: Coeffs::Exact(coeffs),
        }
    }

    /// Exact series from small integer coefficients.
    pub fn exact_i64(coeffs: &[i64], offset24: i64) -> Self {
        Self::exact(coeffs.iter().map(|&v| BigInt::from(v)).collect(), offset24)
    }

    /// Modular series; coefficients are reduced to canonical residues.
    pub fn modular(m: u64, coeffs: Vec<i64>, offset24: i64) -> Result<Self> {
        if m >= MAX_MODULUS {
            return Err(SeriesError::ModulusTooLarge(m));
        }
        assert!(m > 0 && !coeffs.is_empty());
        let c = coeffs
            .into_iter()
            .map(|v| v.rem_euclid(m as i64) as u64)
            .collect();
        Ok(TruncatedSeries {
            offset24,
            coeffs: Coeffs::Modular { m, c },
        })
    }

    /// The series 1, in exact mode (m = 0) or modular mode.
    pub fn one(trunc: usize, m: u64) -> Self {
        let mut s = Self::zero(trunc, m);
        match &mut s.coeffs {
            Coeffs::Exact(c) => c[0] = BigInt::one(),
            Coeffs::Modular { m, c } => c[0] = 1 % *m,
        }
        s
    }

    /// The zero series to the given order.
    pub fn zero(trunc: usize, m: u64) -> Self {
        let coeffs = if m == 0 {
            Coeffs::Exact(vec![BigInt::zero(); trunc + 1])
        } else {
            assert!(m < MAX_MODULUS);
            Coeffs::Modular {
                m,
                c: vec![0; trunc + 1],
            }
        };
        TruncatedSeries {
            offset24: 0,
            coeffs,
        }
    }

    /// Highest valid coefficient index.
    pub fn trunc(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(c) => c.len() - 1,
            Coeffs::Modular { c, .. } => c.len() - 1,
        }
    }

    /// Modulus, 0 meaning exact integers.
    pub fn modulus(&self) -> u64 {
        match &self.coeffs {
            Coeffs::Exact(_) => 0,
            Coeffs::Modular { m, .. } => *m,
        }
    }

    pub fn offset24(&self) -> i64 {
        self.offset24
    }

    /// Coefficient of q^n (relative to the offset prefactor), as a BigInt
    /// in either mode.
    pub fn coeff(&self, n: usize) -> BigInt {
        match &self.coeffs {
            Coeffs::Exact(c) => c[n].clone(),
            Coeffs::Modular { c, .. } => BigInt::from(c[n]),
        }
    }

    /// Residue view of a modular series.
    pub fn residues(&self) -> Option<&[u64]> {
        match &self.coeffs {
            Coeffs::Modular { c, .. } => Some(c),
            Coeffs::Exact(_) => None,
        }
    }

    /// Exact coefficient view.
    pub fn exact_coeffs(&self) -> Option<&[BigInt]> {
        match &self.coeffs {
            Coeffs::Exact(c) => Some(c),
            Coeffs::Modular { .. } => None,
        }
    }

    fn nonzero_count(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(c) => c.iter().filter(|v| !v.is_zero()).count(),
            Coeffs::Modular { c, .. } => c.iter().filter(|&&v| v != 0).count(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_count() == 0
    }

    /// Drop coefficients above new_trunc (which must not exceed trunc).
    pub fn truncate(&self, new_trunc: usize) -> Self {
        assert!(new_trunc <= self.trunc());
        let coeffs = match &self.coeffs {
            Coeffs::Exact(c) => Coeffs::Exact(c[..=new_trunc].to_vec()),
            Coeffs::Modular { m, c } => Coeffs::Modular {
                m: *m,
                c: c[..=new_trunc].to_vec(),
            },
        };
        TruncatedSeries {
            offset24: self.offset24,
            coeffs,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus() != other.modulus() {
            return Err(SeriesError::ModulusMismatch(
                self.modulus(),
                other.modulus(),
            ));
        }
        Ok(())
    }

    /// Coefficient-wise sum; operands must share modulus and offset.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.offset24 != other.offset24 {
            return Err(SeriesError::OffsetMismatch(self.offset24, other.offset24));
        }
        let t = self.trunc().min(other.trunc());
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                Coeffs::Exact((0..=t).map(|n| &a[n] + &b[n]).collect())
            }
            (Coeffs::Modular { m, c: a }, Coeffs::Modular { c: b, .. }) => Coeffs::Modular {
                m: *m,
                c: (0..=t).map(|n| (a[n] + b[n]) % *m).collect(),
            },
            _ => unreachable!(),
        };
        Ok(TruncatedSeries {
            offset24: self.offset24,
            coeffs,
        })
    }

    /// Coefficient-wise difference, same contract as [`Self::add`].
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = match &self.coeffs {
            Coeffs::Exact(c) => Coeffs::Exact(c.iter().map(|v| -v).collect()),
            Coeffs::Modular { m, c } => Coeffs::Modular {
                m: *m,
                c: c.iter().map(|&v| if v == 0 { 0 } else { *m - v }).collect(),
            },
        };
        TruncatedSeries {
            offset24: self.offset24,
            coeffs,
        }
    }

    /// Multiply every coefficient by an integer scalar.
    pub fn scalar_mul(&self, k: i64) -> Self {
        let coeffs = match &self.coeffs {
            Coeffs::Exact(c) => Coeffs::Exact(c.iter().map(|v| v * k).collect()),
            Coeffs::Modular { m, c } => {
                let kr = k.rem_euclid(*m as i64) as u64;
                Coeffs::Modular {
                    m: *m,
                    c: c.iter().map(|&v| (v as u128 * kr as u128 % *m as u128) as u64).collect(),
                }
            }
        };
        TruncatedSeries {
            offset24: self.offset24,
            coeffs,
        }
    }

    /// Cauchy product to order min(trunc, other.trunc); offsets add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let t = self.trunc().min(other.trunc());
        let offset24 = self.offset24 + other.offset24;
        // route the sparser operand to the outer loop when it is sparse
        // enough to beat the dense convolution
        let (na, nb) = (self.nonzero_count(), other.nonzero_count());
        let (sparse, dense, nnz) = if na <= nb {
            (self, other, na)
        } else {
            (other, self, nb)
        };
        let coeffs = match (&sparse.coeffs, &dense.coeffs) {
            (Coeffs::Modular { m, c: a }, Coeffs::Modular { c: b, .. }) => {
                let m = *m;
                let mut acc = vec![0u128; t + 1];
                if nnz * SPARSE_FRACTION <= t + 1 {
                    for (i, &ai) in a.iter().enumerate().take(t + 1) {
                        if ai == 0 {
                            continue;
                        }
                        let ai = ai as u128;
                        for (j, &bj) in b.iter().enumerate().take(t + 1 - i) {
                            acc[i + j] += ai * bj as u128;
                        }
                        // keep partial sums comfortably inside u128
                        if i % 1024 == 1023 {
                            for v in acc.iter_mut() {
                                *v %= m as u128;
                            }
                        }
                    }
                } else {
                    for (n, slot) in acc.iter_mut().enumerate() {
                        let mut s = 0u128;
                        for i in 0..=n {
                            s += a[i] as u128 * b[n - i] as u128;
                        }
                        *slot = s;
                    }
                }
                Coeffs::Modular {
                    m,
                    c: acc.into_iter().map(|v| (v % m as u128) as u64).collect(),
                }
            }
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                let mut acc = vec![BigInt::zero(); t + 1];
                for (i, ai) in a.iter().enumerate().take(t + 1) {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in b.iter().enumerate().take(t + 1 - i) {
                        if !bj.is_zero() {
                            acc[i + j] += ai * bj;
                        }
                    }
                }
                Coeffs::Exact(acc)
            }
            _ => unreachable!(),
        };
        Ok(TruncatedSeries { offset24, coeffs })
    }

    /// a^e by binary exponentiation, no Frobenius shortcut.
    pub fn pow_naive(&self, e: u64) -> Self {
        let t = self.trunc();
        let mut result = Self::one(t, self.modulus());
        let mut base = self.with_offset(0);
        let mut e_left = e;
        while e_left > 0 {
            if e_left & 1 == 1 {
                result = result.mul(&base).expect("same modulus");
            }
            e_left >>= 1;
            if e_left > 0 {
                base = base.mul(&base).expect("same modulus");
            }
        }
        result.offset24 = self.offset24 * e as i64;
        result
    }

    /// a^e. Modulo a prime t the exponent is split as e = t e' + e0 via the
    /// Frobenius identity; results are identical to [`Self::pow_naive`].
    pub fn pow(&self, e: u64) -> Self {
        let mut result = self.with_offset(0).pow_raw(e);
        result.offset24 = self.offset24 * e as i64;
        result
    }

    fn pow_raw(&self, e: u64) -> Self {
        let m = self.modulus();
        if m > 0 && e >= m && arith::is_prime(m) {
            let q = e / m;
            let r = e % m;
            let t = self.trunc();
            let inner_trunc = t / m as usize;
            let inner = self.truncate(inner_trunc).pow_raw(q);
            let dilated = inner.dilate_to(m as usize, t);
            let mut out = if r == 0 {
                dilated
            } else {
                dilated.mul(&self.pow_naive(r)).expect("same modulus")
            };
            out.offset24 = 0;
            out
        } else {
            self.pow_naive(e)
        }
    }

    /// Substitute q -> q^t; coefficients move to indices t*n and the offset
    /// scales by t. The result stays valid through order t*trunc + t - 1.
    pub fn dilate(&self, t: usize) -> Self {
        assert!(t >= 1);
        self.dilate_to(t, self.trunc() * t + t - 1)
    }

    fn dilate_to(&self, t: usize, new_trunc: usize) -> Self {
        let mut out = Self::zero(new_trunc, self.modulus());
        out.offset24 = self.offset24 * t as i64;
        match (&self.coeffs, &mut out.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                for (n, v) in a.iter().enumerate() {
                    if n * t > new_trunc {
                        break;
                    }
                    b[n * t] = v.clone();
                }
            }
            (Coeffs::Modular { c: a, .. }, Coeffs::Modular { c: b, .. }) => {
                for (n, &v) in a.iter().enumerate() {
                    if n * t > new_trunc {
                        break;
                    }
                    b[n * t] = v;
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// Multiplicative inverse to the truncation order, by the standard
    /// recurrence b_n = -a_0^{-1} sum_{j>=1} a_j b_{n-j}. Cost is
    /// O(trunc * nnz), so inverting a pentagonal factor is O(n^1.5).
    pub fn invert(&self) -> Result<Self> {
        let t = self.trunc();
        match &self.coeffs {
            Coeffs::Exact(a) => {
                let a0 = &a[0];
                if !(a0 == &BigInt::one() || a0 == &(-BigInt::one())) {
                    return Err(SeriesError::NonInvertibleConstant);
                }
                let neg = a0 == &(-BigInt::one());
                let nz: Vec<(usize, &BigInt)> = a
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                let mut b = vec![BigInt::zero(); t + 1];
                b[0] = a0.clone(); // 1^{-1} = 1, (-1)^{-1} = -1
                for n in 1..=t {
                    let mut s = BigInt::zero();
                    for &(j, aj) in nz.iter().take_while(|&&(j, _)| j <= n) {
                        s += aj * &b[n - j];
                    }
                    b[n] = if neg { s } else { -s };
                }
                Ok(TruncatedSeries {
                    offset24: -self.offset24,
                    coeffs: Coeffs::Exact(b),
                })
            }
            Coeffs::Modular { m, c: a } => {
                let m = *m;
                let a0inv =
                    arith::mod_inverse(a[0], m).ok_or(SeriesError::NonInvertibleConstant)?;
                let nz: Vec<(usize, u64)> = a
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v))
                    .collect();
                let mut b = vec![0u64; t + 1];
                b[0] = a0inv;
                for n in 1..=t {
                    let mut s = 0u128;
                    for &(j, aj) in nz.iter().take_while(|&&(j, _)| j <= n) {
                        s += aj as u128 * b[n - j] as u128;
                    }
                    let s = (s % m as u128) as u64;
                    let neg_s = if s == 0 { 0 } else { m - s };
                    b[n] = (neg_s as u128 * a0inv as u128 % m as u128) as u64;
                }
                Ok(TruncatedSeries {
                    offset24: -self.offset24,
                    coeffs: Coeffs::Modular { m, c: b },
                })
            }
        }
    }

    /// Adjust the 1/24-unit offset without touching coefficients.
    pub fn shift_offset(&self, delta24: i64) -> Self {
        let mut out = self.clone();
        out.offset24 += delta24;
        out
    }

    fn with_offset(&self, offset24: i64) -> Self {
        let mut out = self.clone();
        out.offset24 = offset24;
        out
    }

    /// Fold an integral offset into the coefficient array: the result has
    /// offset24 = 0 and represents the same series. A positive offset
    /// prepends zeros (extending the valid order); a negative one divides
    /// by a power of q and fails if that would drop nonzero coefficients.
    pub fn materialize(&self) -> Result<Self> {
        if self.offset24 % 24 != 0 {
            return Err(SeriesError::NonIntegralOffset(self.offset24));
        }
        let j = self.offset24 / 24;
        if j == 0 {
            return Ok(self.clone());
        }
        if j > 0 {
            let j = j as usize;
            let coeffs = match &self.coeffs {
                Coeffs::Exact(c) => {
                    let mut v = vec![BigInt::zero(); j];
                    v.extend_from_slice(c);
                    Coeffs::Exact(v)
                }
                Coeffs::Modular { m, c } => {
                    let mut v = vec![0u64; j];
                    v.extend_from_slice(c);
                    Coeffs::Modular { m: *m, c: v }
                }
            };
            Ok(TruncatedSeries {
                offset24: 0,
                coeffs,
            })
        } else {
            let j = (-j) as usize;
            if j > self.trunc() {
                return Err(SeriesError::NegativeShiftLoss(self.offset24 / 24));
            }
            for n in 0..j {
                if !self.coeff(n).is_zero() {
                    return Err(SeriesError::NegativeShiftLoss(self.offset24 / 24));
                }
            }
            let coeffs = match &self.coeffs {
                Coeffs::Exact(c) => Coeffs::Exact(c[j..].to_vec()),
                Coeffs::Modular { m, c } => Coeffs::Modular {
                    m: *m,
                    c: c[j..].to_vec(),
                },
            };
            Ok(TruncatedSeries {
                offset24: 0,
                coeffs,
            })
        }
    }

    /// Extract the subsequence b(n) = a(step*n + start). Requires a
    /// materialized series (offset 0) and start <= trunc.
    pub fn progression(&self, step: usize, start: usize) -> Result<Self> {
        assert!(step >= 1);
        if self.offset24 != 0 {
            return Err(SeriesError::NonIntegralOffset(self.offset24));
        }
        if start > self.trunc() {
            return Err(SeriesError::InsufficientTruncation {
                have: self.trunc(),
                need: start,
            });
        }
        let t = (self.trunc() - start) / step;
        let coeffs = match &self.coeffs {
            Coeffs::Exact(c) => {
                Coeffs::Exact((0..=t).map(|n| c[step * n + start].clone()).collect())
            }
            Coeffs::Modular { m, c } => Coeffs::Modular {
                m: *m,
                c: (0..=t).map(|n| c[step * n + start]).collect(),
            },
        };
        Ok(TruncatedSeries {
            offset24: 0,
            coeffs,
        })
    }

    /// Reduce an exact series modulo m. On a series that is already
    /// modular this is only allowed for the same modulus.
    pub fn reduce(&self, m: u64) -> Result<Self> {
        if m == 0 || m >= MAX_MODULUS {
            return Err(SeriesError::ModulusTooLarge(m));
        }
        match &self.coeffs {
            Coeffs::Exact(c) => {
                let mb = BigInt::from(m);
                let reduced = c
                    .iter()
                    .map(|v| {
                        let r = v % &mb;
                        let r = if r.is_negative() { r + &mb } else { r };
                        r.to_u64().unwrap()
                    })
                    .collect();
                Ok(TruncatedSeries {
                    offset24: self.offset24,
                    coeffs: Coeffs::Modular { m, c: reduced },
                })
            }
            Coeffs::Modular { m: m0, .. } if *m0 == m => Ok(self.clone()),
            Coeffs::Modular { m: m0, .. } => Err(SeriesError::ModulusMismatch(*m0, m)),
        }
    }
}

/// Pentagonal-number-theorem expansion of (q^delta; q^delta)_inf:
/// sum_{k in Z} (-1)^k q^(delta k(3k-1)/2). About 2 sqrt(2n/(3 delta))
/// nonzero terms up to order n.
pub fn pentagonal(delta: u64, trunc: usize, m: u64) -> TruncatedSeries {
    assert!(delta >= 1);
    let mut s = TruncatedSeries::zero(trunc, m);
    let mut put = |idx: u128, neg: bool| -> bool {
        if idx > trunc as u128 {
            return false;
        }
        let idx = idx as usize;
        match &mut s.coeffs {
            Coeffs::Exact(c) => c[idx] = if neg { -BigInt::one() } else { BigInt::one() },
            Coeffs::Modular { m, c } => c[idx] = if neg { (*m - 1) % *m } else { 1 % *m },
        }
        true
    };
    put(0, false);
    let mut k: u128 = 1;
    loop {
        let g1 = delta as u128 * (k * (3 * k - 1) / 2); // k > 0
        let g2 = delta as u128 * (k * (3 * k + 1) / 2); // k < 0 mirror
        let neg = k % 2 == 1;
        let in1 = put(g1, neg);
        let in2 = put(g2, neg);
        if !in1 && !in2 {
            break;
        }
        k += 1;
    }
    s
}

/// Expansion of (q^delta; q^delta)_inf^r to the given order, exact (m = 0)
/// or modular. The offset24 of the result is 0; eta prefactors are the
/// caller's business.
pub fn euler_factor(delta: u64, r: i64, trunc: usize, m: u64) -> Result<TruncatedSeries> {
    assert!(delta >= 1);
    if m >= MAX_MODULUS {
        return Err(SeriesError::ModulusTooLarge(m));
    }
    match r {
        0 => Ok(TruncatedSeries::one(trunc, m)),
        1 => Ok(pentagonal(delta, trunc, m)),
        r if r > 1 => Ok(pentagonal(delta, trunc, m).pow(r as u64)),
        -1 => pentagonal(delta, trunc, m).invert(),
        _ => {
            let s = (-r) as u64;
            if m > 0 && arith::is_prime(m) {
                euler_neg_prime(delta, s, trunc, m)
            } else {
                pentagonal(delta, trunc, m).pow(s).invert()
            }
        }
    }
}

/// Reference implementation of [`euler_factor`] without the Frobenius or
/// dilation shortcuts; used to cross-check the fast paths.
pub fn euler_factor_naive(delta: u64, r: i64, trunc: usize, m: u64) -> Result<TruncatedSeries> {
    assert!(delta >= 1);
    if r == 0 {
        return Ok(TruncatedSeries::one(trunc, m));
    }
    let pent = pentagonal(delta, trunc, m);
    if r > 0 {
        Ok(pent.pow_naive(r as u64))
    } else {
        pent.pow_naive((-r) as u64).invert()
    }
}

/// f^{-s} mod a prime t, for f = (q^delta;q^delta)_inf: write
/// f^{-s} = f^{t m0 - s} * (f^t)^{-m0} and use f^t = f(q^t) mod t, which
/// shrinks the exponent by a factor of t per level and grows delta, so the
/// recursion bottoms out quickly and every multiplication stays sparse.
fn euler_neg_prime(delta: u64, s: u64, trunc: usize, t: u64) -> Result<TruncatedSeries> {
    debug_assert!(s >= 1);
    if delta as u128 > trunc as u128 {
        // (q^delta;q^delta)^{-s} = 1 + O(q^delta)
        return Ok(TruncatedSeries::one(trunc, t));
    }
    if s == 1 {
        return pentagonal(delta, trunc, t).invert();
    }
    let m0 = s.div_ceil(t);
    let pos = t * m0 - s; // in [0, t)
    let tail = match delta.checked_mul(t) {
        Some(d) if (d as u128) <= trunc as u128 => euler_neg_prime(d, m0, trunc, t)?,
        _ => TruncatedSeries::one(trunc, t),
    };
    if pos == 0 {
        Ok(tail)
    } else {
        pentagonal(delta, trunc, t).pow(pos).mul(&tail)
    }
}
