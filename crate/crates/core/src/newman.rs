//! Newman-recurrence machinery for c(n) = [q^n] f_1 f_2^2 and the
//! congruence families mod 5 for a_3(n) that fall out of it.
//!
//! For a prime p >= 5 let D = 5(p^2-1)/24. Newman's identity, with the
//! constant eliminated through the n = 0 instance, reads
//!
//!   c(p^2 n + D) = (xi(p) - ((-2n + 2D)/p)_L) c(n) - p c((n - D)/p^2),
//!
//! where xi(p) = c(D) + ((2D)/p)_L and the last term is 0 unless
//! (n - D)/p^2 is a non-negative integer. The residue of xi(p) mod 5
//! together with p mod 5 selects the exponent period omega(p) in
//! {4, 6, 8, 10, 12}, and each case yields arithmetic progressions on
//! which c (and through a_3(5n+1) = 3 c(n) mod 5, also a_3) vanishes mod 5.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::partitions::CSeries;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NewmanError {
    #[error("{0} is not a prime >= 5")]
    BadPrime(u64),
    #[error("c-series must be exact (modulus 0) for this computation")]
    NeedExactSeries,
    #[error("insufficient c-series truncation: have {have}, need {need}")]
    InsufficientTruncation { have: usize, need: usize },
    #[error("omega(p) is undefined for p = 5")]
    OmegaUndefinedAtFive,
    #[error("part-1/part-2 families need p >= 7; use the part-3 relation for p = 5")]
    WrongPartForFive,
    #[error("part-2 families need xi(p) != 0 mod 5")]
    XiZeroMod5,
    #[error("family index exceeds u64 range (p = {p}, exponent = {exp})")]
    IndexOverflow { p: u64, exp: u64 },
}

/// D = 5(p^2 - 1)/24, the index shift of the recurrence.
pub fn shift_d(p: u64) -> u64 {
    5 * (p * p - 1) / 24
}

/// Per-prime record of xi(p) and the derived classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewmanProfile {
    pub p: u64,
    /// Exact xi(p) = c(D) + ((2D)/p)_L.
    #[serde(serialize_with = "crate::serialize_display")]
    pub xi: BigInt,
    /// Balanced residue of xi mod 5, in {-2, -1, 0, 1, 2}.
    pub xi_mod5: i8,
    pub p_mod5: u8,
    /// Exponent period from the five-case table; None when p = 5.
    pub omega: Option<u8>,
}

/// Exact xi(p) from an exact c-series of sufficient length.
pub fn xi(p: u64, c: &CSeries) -> Result<BigInt, NewmanError> {
    if p < 5 || !arith::is_prime(p) {
        return Err(NewmanError::BadPrime(p));
    }
    if c.modulus() != 0 {
        return Err(NewmanError::NeedExactSeries);
    }
    let d = shift_d(p) as usize;
    if c.trunc() < d {
        return Err(NewmanError::InsufficientTruncation {
            have: c.trunc(),
            need: d,
        });
    }
    let sym = arith::legendre((2 * shift_d(p)) as i64, p).expect("odd prime");
    Ok(c.coeff(d) + BigInt::from(sym))
}

fn balanced_mod5(v: &BigInt) -> i8 {
    let r = v.mod_floor(&BigInt::from(5)).to_i8().unwrap();
    if r > 2 {
        r - 5
    } else {
        r
    }
}

/// Exponent period omega(p) from the five-case table on
/// (xi mod 5, p mod 5). Undefined when p = 0 mod 5.
pub fn omega(xi_mod5: i8, p_mod5: u8) -> Result<u8, NewmanError> {
    if p_mod5 == 0 {
        return Err(NewmanError::OmegaUndefinedAtFive);
    }
    debug_assert!((-2..=2).contains(&xi_mod5) && p_mod5 < 5);
    Ok(match (xi_mod5.unsigned_abs(), p_mod5) {
        (0, _) => 4,
        (1, 1) | (2, 4) => 6,
        (2, 2) | (1, 3) => 8,
        (2, 1) | (1, 4) => 10,
        (1, 2) | (2, 3) => 12,
        _ => unreachable!(),
    })
}

/// Literal transcription of the same table as an if-chain, case by case in
/// source order; kept as an independent implementation for cross-checking.
pub fn omega_decision_tree(xi_mod5: i8, p_mod5: u8) -> Result<u8, NewmanError> {
    if p_mod5 == 0 {
        return Err(NewmanError::OmegaUndefinedAtFive);
    }
    let xi_pm1 = xi_mod5 == 1 || xi_mod5 == -1;
    let xi_pm2 = xi_mod5 == 2 || xi_mod5 == -2;
    if xi_mod5 == 0 {
        Ok(4)
    } else if (xi_pm1 && p_mod5 == 1) || (xi_pm2 && p_mod5 == 4) {
        Ok(6)
    } else if (xi_pm2 && p_mod5 == 2) || (xi_pm1 && p_mod5 == 3) {
        Ok(8)
    } else if (xi_pm2 && p_mod5 == 1) || (xi_pm1 && p_mod5 == 4) {
        Ok(10)
    } else if (xi_pm1 && p_mod5 == 2) || (xi_pm2 && p_mod5 == 3) {
        Ok(12)
    } else {
        unreachable!()
    }
}

impl NewmanProfile {
    pub fn compute(p: u64, c: &CSeries) -> Result<Self, NewmanError> {
        let xi = xi(p, c)?;
        let xi_mod5 = balanced_mod5(&xi);
        let p_mod5 = (p % 5) as u8;
        let omega = if p_mod5 == 0 {
            None
        } else {
            Some(omega(xi_mod5, p_mod5)?)
        };
        Ok(NewmanProfile {
            p,
            xi,
            xi_mod5,
            p_mod5,
            omega,
        })
    }
}

/// Outcome of checking the recurrence on 0 <= n <= n_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub p: u64,
    pub n_max: u64,
    pub first_counterexample: Option<(u64, BigInt, BigInt)>,
}

impl RecurrenceReport {
    pub fn passed(&self) -> bool {
        self.first_counterexample.is_none()
    }
}

/// Check c(p^2 n + D) = (xi(p) - ((-2n + 2D)/p)_L) c(n) - p c((n-D)/p^2)
/// as exact integer equality for 0 <= n <= n_max.
pub fn verify_recurrence(p: u64, n_max: u64, c: &CSeries) -> Result<RecurrenceReport, NewmanError> {
    let xi_p = xi(p, c)?;
    let d = shift_d(p);
    let need = (p * p * n_max + d) as usize;
    if c.trunc() < need {
        return Err(NewmanError::InsufficientTruncation {
            have: c.trunc(),
            need,
        });
    }
    let mut first_counterexample = None;
    for n in 0..=n_max {
        let lhs = c.coeff((p * p * n + d) as usize);
        let sym = arith::legendre(-2 * n as i64 + 2 * d as i64, p).expect("odd prime");
        let mut rhs = (&xi_p - BigInt::from(sym)) * c.coeff(n as usize);
        if n >= d && (n - d) % (p * p) == 0 {
            rhs -= BigInt::from(p) * c.coeff(((n - d) / (p * p)) as usize);
        }
        if lhs != rhs {
            first_counterexample = Some((n, lhs, rhs));
            break;
        }
    }
    Ok(RecurrenceReport {
        p,
        n_max,
        first_counterexample,
    })
}

/// Residue filter on the family variable: n is admissible iff
/// n mod p lies in the allowed set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueFilter {
    pub p: u64,
    pub residues: BTreeSet<u64>,
}

impl ResidueFilter {
    pub fn admits(&self, n: u64) -> bool {
        self.residues.contains(&(n % self.p))
    }

    /// Every nonzero residue class: the "p does not divide n" condition.
    pub fn coprime(p: u64) -> Self {
        ResidueFilter {
            p,
            residues: (1..p).collect(),
        }
    }
}

/// Arithmetic progression A n + B on which a_r is claimed to vanish mod m,
/// optionally restricted to residue classes of n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceFamily {
    pub r: u32,
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    #[serde(rename = "mod")]
    pub modulus: u64,
    #[serde(rename = "filter", default, skip_serializing_if = "Option::is_none")]
    pub n_filter: Option<ResidueFilter>,
}

/// Like [`CongruenceFamily`] but indexing the c-series directly; these are
/// the section-3 intermediate results, checked independently of the a_3
/// repackaging.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFamily {
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    #[serde(rename = "mod")]
    pub modulus: u64,
    #[serde(rename = "filter", default, skip_serializing_if = "Option::is_none")]
    pub n_filter: Option<ResidueFilter>,
}

fn pow_u64(p: u64, e: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// B = (25 p^e - 1)/24 for even e; asserts the integrality the families
/// rely on.
fn family_b(p: u64, e: u64) -> Result<u64, NewmanError> {
    let pe = pow_u64(p, e).ok_or(NewmanError::IndexOverflow { p, exp: e })?;
    let num = 25u64
        .checked_mul(pe)
        .ok_or(NewmanError::IndexOverflow { p, exp: e })?
        - 1;
    assert_eq!(num % 24, 0, "24 must divide 25 p^e - 1");
    Ok(num / 24)
}

fn check_part12_prime(p: u64) -> Result<(), NewmanError> {
    if p < 5 || !arith::is_prime(p) {
        return Err(NewmanError::BadPrime(p));
    }
    if p == 5 {
        return Err(NewmanError::WrongPartForFive);
    }
    Ok(())
}

/// Part-1 family: a_3(5 p^(omega(k+1)-1) n + (25 p^(omega(k+1)) - 1)/24) = 0
/// mod 5 whenever p does not divide n.
pub fn families_part1(p: u64, k: u64, profile: &NewmanProfile) -> Result<CongruenceFamily, NewmanError> {
    check_part12_prime(p)?;
    let omega = profile.omega.ok_or(NewmanError::OmegaUndefinedAtFive)? as u64;
    let e = omega * (k + 1);
    let a = 5u64
        .checked_mul(pow_u64(p, e - 1).ok_or(NewmanError::IndexOverflow { p, exp: e - 1 })?)
        .ok_or(NewmanError::IndexOverflow { p, exp: e })?;
    let b = family_b(p, e)?;
    debug_assert_eq!(b % 5, 1);
    Ok(CongruenceFamily {
        r: 3,
        a,
        b,
        modulus: 5,
        n_filter: Some(ResidueFilter::coprime(p)),
    })
}

/// Residues j mod p on which the part-2 Legendre condition
/// xi(p) = ((-2j + 2D)/p)_L (mod 5) holds. Empty when xi = +-2 mod 5:
/// the symbol only takes values in {-1, 0, 1}, so the condition is then
/// unsatisfiable as stated and the family is vacuous.
pub fn part2_residues(p: u64, xi_mod5: i8) -> BTreeSet<u64> {
    let target: i8 = match xi_mod5 {
        1 => 1,
        -1 => -1,
        _ => return BTreeSet::new(),
    };
    let two_d = 2 * shift_d(p) as i64;
    (0..p)
        .filter(|&j| arith::legendre(-2 * j as i64 + two_d, p).expect("odd prime") == target)
        .collect()
}

/// Part-2 family: a_3(5 p^(omega k + 2) n + (25 p^(omega k + 2) - 1)/24) = 0
/// mod 5 on the residue classes of n selected by the Legendre condition.
pub fn families_part2(p: u64, k: u64, profile: &NewmanProfile) -> Result<CongruenceFamily, NewmanError> {
    check_part12_prime(p)?;
    if profile.xi_mod5 == 0 {
        return Err(NewmanError::XiZeroMod5);
    }
    let omega = profile.omega.ok_or(NewmanError::OmegaUndefinedAtFive)? as u64;
    let e = omega * k + 2;
    let a = 5u64
        .checked_mul(pow_u64(p, e).ok_or(NewmanError::IndexOverflow { p, exp: e })?)
        .ok_or(NewmanError::IndexOverflow { p, exp: e })?;
    let b = family_b(p, e)?;
    debug_assert_eq!(b % 5, 1);
    Ok(CongruenceFamily {
        r: 3,
        a,
        b,
        modulus: 5,
        n_filter: Some(ResidueFilter {
            p,
            residues: part2_residues(p, profile.xi_mod5),
        }),
    })
}

/// The p = 5 proportionality relation (part 3):
/// a_3(25 * 5^(2(k+1)) n + B) = 2^(k+1) a_3(25n + 26) mod 5 with
/// B = (25 * 5^(2(k+2)) - 1)/24.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Part3Relation {
    pub k: u64,
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    /// 2^(k+1) mod 5.
    pub factor: u64,
}

pub fn part3_relation(k: u64) -> Result<Part3Relation, NewmanError> {
    let a = 25u64
        .checked_mul(pow_u64(5, 2 * (k + 1)).ok_or(NewmanError::IndexOverflow { p: 5, exp: 2 * (k + 1) })?)
        .ok_or(NewmanError::IndexOverflow { p: 5, exp: 2 * (k + 1) })?;
    let b = family_b(5, 2 * (k + 2))?;
    Ok(Part3Relation {
        k,
        a,
        b,
        factor: arith::mod_pow(2, k + 1, 5),
    })
}

/// The section-3 intermediate families at the c(n) level for this profile:
/// the "p does not divide n" family with exponent omega(k+1)-1 on c, and
/// the Legendre-conditioned family with exponent omega k + 2.
pub fn derived_section3_families(
    p: u64,
    k: u64,
    profile: &NewmanProfile,
) -> Result<Vec<CFamily>, NewmanError> {
    check_part12_prime(p)?;
    let omega = profile.omega.ok_or(NewmanError::OmegaUndefinedAtFive)? as u64;
    let mut out = Vec::new();
    // c(p^(omega(k+1)-1) n + 5(p^(omega(k+1)) - 1)/24) = 0 mod 5, p not | n
    {
        let e = omega * (k + 1);
        let a = pow_u64(p, e - 1).ok_or(NewmanError::IndexOverflow { p, exp: e - 1 })?;
        let pe = pow_u64(p, e).ok_or(NewmanError::IndexOverflow { p, exp: e })?;
        assert_eq!(5 * (pe - 1) % 24, 0);
        out.push(CFamily {
            a,
            b: 5 * (pe - 1) / 24,
            modulus: 5,
            n_filter: Some(ResidueFilter::coprime(p)),
        });
    }
    // c(p^(omega k + 2) n + 5(p^(omega k + 2) - 1)/24) = 0 mod 5 under the
    // Legendre condition (vacuous for xi = +-2 profiles)
    if profile.xi_mod5 != 0 {
        let e = omega * k + 2;
        let pe = pow_u64(p, e).ok_or(NewmanError::IndexOverflow { p, exp: e })?;
        assert_eq!(5 * (pe - 1) % 24, 0);
        out.push(CFamily {
            a: pe,
            b: 5 * (pe - 1) / 24,
            modulus: 5,
            n_filter: Some(ResidueFilter {
                p,
                residues: part2_residues(p, profile.xi_mod5),
            }),
        });
    }
    Ok(out)
}
