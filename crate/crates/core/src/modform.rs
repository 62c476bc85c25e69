//! Eta-quotients and the modular-form machinery applied to them: the
//! Gordon-Hughes-Newman-Ligozat conditions, the quotient's character,
//! Sturm bounds, q-expansions, and the Hecke operator T_p.
//!
//! An eta-quotient is prod_{delta | N} eta(delta z)^(r_delta). It belongs
//! to M_k(Gamma_0(N), chi) with k = (1/2) sum r_delta when k is a positive
//! integer, sum delta r_delta = 0 (mod 24), sum (N/delta) r_delta = 0
//! (mod 24), and the cusp-order sums sum gcd(d,delta)^2 r_delta / delta
//! are non-negative for every d | N. The character is
//! chi(d) = ((-1)^k prod delta^(r_delta) / d), a Kronecker symbol.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, SymbolValue};
use crate::series::{self, euler_factor, TruncatedSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModformError {
    #[error("divisor {0} does not divide the level {1}")]
    BadDivisor(u64, u64),
    #[error("eta-quotient has no nonzero exponents")]
    EmptyQuotient,
    #[error("insufficient truncation: have {have}, need {need}")]
    InsufficientTruncation { have: usize, need: usize },
    #[error("Hecke operator needs a materialized series (offset24 = 0)")]
    UnmaterializedInput,
    #[error("Hecke operator needs weight k >= 1")]
    BadWeight,
    #[error(transparent)]
    Series(#[from] series::SeriesError),
}

/// Level N together with the exponent map delta -> r_delta.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaQuotient {
    #[serde(rename = "N")]
    pub level: u64,
    pub factors: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    pub fn new(level: u64, factors: &[(u64, i64)]) -> Result<Self, ModformError> {
        let eq = EtaQuotient {
            level,
            factors: factors.iter().copied().collect(),
        };
        eq.validate()?;
        Ok(eq)
    }

    pub fn validate(&self) -> Result<(), ModformError> {
        for &delta in self.factors.keys() {
            if delta == 0 || self.level % delta != 0 {
                return Err(ModformError::BadDivisor(delta, self.level));
            }
        }
        if self.factors.values().all(|&r| r == 0) {
            return Err(ModformError::EmptyQuotient);
        }
        Ok(())
    }

    /// sum delta r_delta, the leading exponent in 1/24 units.
    pub fn offset24(&self) -> i64 {
        self.factors.iter().map(|(&d, &r)| d as i64 * r).sum()
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// Everything the Ligozat-style verdict needs, plus the derived data the
/// section-4 arguments consume.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormMeta {
    /// Twice the weight (sum of exponents); the weight itself only exists
    /// as an integer when this is even.
    pub weight2: i64,
    pub offset24: i64,
    /// (-1)^k prod delta^(r_delta) with denominator squares cleared; the
    /// Kronecker symbol of this integer is the quotient's character.
    /// None when the weight is not an integer.
    #[serde(serialize_with = "crate::serialize_display_opt")]
    pub character_disc: Option<BigInt>,
    /// sum delta r_delta mod 24 (condition on the first cusp sum).
    pub cond_sum1: i64,
    /// sum (N/delta) r_delta mod 24.
    pub cond_sum2: i64,
    /// For each d | N, the order sum gcd(d,delta)^2 r_delta / delta.
    #[serde(serialize_with = "serialize_cusp_orders")]
    pub cusp_orders: Vec<(u64, Ratio<i64>)>,
    /// Sturm bound for (weight, level), when the weight is a positive integer.
    pub sturm: Option<u64>,
    pub integer_weight: bool,
    pub cond1_ok: bool,
    pub cond2_ok: bool,
    pub cusps_ok: bool,
}

impl FormMeta {
    /// The holomorphic-modular-form verdict: integer weight plus the three
    /// divisor/cusp conditions.
    pub fn passes(&self) -> bool {
        self.integer_weight && self.cond1_ok && self.cond2_ok && self.cusps_ok
    }

    /// Integer weight, if it is one.
    pub fn weight(&self) -> Option<i64> {
        (self.weight2 % 2 == 0).then_some(self.weight2 / 2)
    }
}

/// Compute the full [`FormMeta`] record for an eta-quotient.
fn serialize_cusp_orders<S: serde::Serializer>(
    v: &[(u64, Ratio<i64>)],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(v.len()))?;
    for (d, ord) in v {
        map.serialize_entry(&d.to_string(), &ord.to_string())?;
    }
    map.end()
}

pub fn analyze(eq: &EtaQuotient) -> Result<FormMeta, ModformError> {
    eq.validate()?;
    let n = eq.level;
    let weight2: i64 = eq.factors.values().sum();
    let integer_weight = weight2 % 2 == 0;
    let offset24 = eq.offset24();
    let cond_sum1 = offset24.rem_euclid(24);
    let cond_sum2 = eq
        .factors
        .iter()
        .map(|(&d, &r)| (n / d) as i64 * r)
        .sum::<i64>()
        .rem_euclid(24);
    let cusp_orders: Vec<(u64, Ratio<i64>)> = divisors(n)
        .into_iter()
        .map(|d| {
            let sum = eq
                .factors
                .iter()
                .map(|(&delta, &r)| {
                    let g = num_integer::gcd(d, delta) as i64;
                    Ratio::new(g * g * r, delta as i64)
                })
                .sum();
            (d, sum)
        })
        .collect();
    let cusps_ok = cusp_orders.iter().all(|(_, v)| *v >= Ratio::zero());
    let character_disc = if integer_weight {
        let k = weight2 / 2;
        // prod delta^(r_delta) as a fraction; the symbol only sees the
        // squarefree part, so numerator * denominator carries the same
        // character.
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&delta, &r) in &eq.factors {
            let p = BigInt::from(delta).pow(r.unsigned_abs() as u32);
            if r >= 0 {
                num *= p;
            } else {
                den *= p;
            }
        }
        let mut disc = num * den;
        if k % 2 != 0 {
            disc = -disc;
        }
        Some(disc)
    } else {
        None
    };
    let sturm = if integer_weight && weight2 > 0 {
        Some(sturm_bound((weight2 / 2) as u64, n))
    } else {
        None
    };
    Ok(FormMeta {
        weight2,
        offset24,
        character_disc,
        cond_sum1,
        cond_sum2,
        cusp_orders,
        sturm,
        integer_weight,
        cond1_ok: cond_sum1 == 0,
        cond2_ok: cond_sum2 == 0,
        cusps_ok,
    })
}

/// chi(d) for the quotient's character, evaluated through the Kronecker
/// symbol of the discriminant.
pub fn character_at(eq: &EtaQuotient, d: i64) -> Result<SymbolValue, ModformError> {
    let meta = analyze(eq)?;
    let disc = meta.character_disc.ok_or(ModformError::BadWeight)?;
    Ok(arith::kronecker_big(&disc, d))
}

/// floor(k N / 12 * prod_{prime t | N} (1 + t)/t).
pub fn sturm_bound(k: u64, n: u64) -> u64 {
    let mut num = k as u128 * n as u128;
    let mut den = 12u128;
    let mut rest = n;
    let mut t = 2u64;
    while t as u128 * t as u128 <= rest as u128 {
        if rest % t == 0 {
            num *= (t + 1) as u128;
            den *= t as u128;
            while rest % t == 0 {
                rest /= t;
            }
        }
        t += 1;
    }
    if rest > 1 {
        num *= (rest + 1) as u128;
        den *= rest as u128;
    }
    (num / den) as u64
}

/// q-expansion of the eta-quotient: prod (q^delta;q^delta)^(r_delta) with
/// offset24 = sum delta r_delta, folded into integral q-powers whenever the
/// offset is a multiple of 24.
pub fn eta_expansion(
    eq: &EtaQuotient,
    trunc: usize,
    modulus: u64,
) -> Result<TruncatedSeries, ModformError> {
    eq.validate()?;
    let mut acc = TruncatedSeries::one(trunc, modulus);
    for (&delta, &r) in &eq.factors {
        if r == 0 {
            continue;
        }
        acc = acc.mul(&euler_factor(delta, r, trunc, modulus)?)?;
    }
    let acc = acc.shift_offset(eq.offset24());
    if acc.offset24() % 24 == 0 {
        Ok(acc.materialize()?)
    } else {
        Ok(acc)
    }
}

/// The classical weight-4 Eisenstein series E_4 = 1 + 240 sum sigma_3(n) q^n.
pub fn eisenstein_e4(trunc: usize, modulus: u64) -> TruncatedSeries {
    let mut sigma3 = vec![0u128; trunc + 1];
    for d in 1..=trunc as u128 {
        let cube = d * d * d;
        let mut n = d as usize;
        while n <= trunc {
            sigma3[n] += cube;
            n += d as usize;
        }
    }
    if modulus == 0 {
        let mut coeffs = vec![BigInt::one(); 1];
        coeffs.extend(
            sigma3[1..]
                .iter()
                .map(|&s| BigInt::from(240u32) * BigInt::from(s)),
        );
        TruncatedSeries::exact(coeffs, 0)
    } else {
        let m = modulus as u128;
        let mut coeffs = vec![1i64; 1];
        coeffs.extend(sigma3[1..].iter().map(|&s| (240 * (s % m) % m) as i64));
        TruncatedSeries::modular(modulus, coeffs, 0).expect("modulus checked by callers")
    }
}

/// T_p on a q-expansion: b(n) = a(pn) + chi(p) p^(k-1) a(n/p), with
/// a(n/p) = 0 when p does not divide n. The input must be materialized and
/// long enough for the requested output order.
pub fn hecke_tp(
    f: &TruncatedSeries,
    p: u64,
    k: u64,
    chi_p: SymbolValue,
    out_trunc: usize,
) -> Result<TruncatedSeries, ModformError> {
    if f.offset24() != 0 {
        return Err(ModformError::UnmaterializedInput);
    }
    if k < 1 {
        return Err(ModformError::BadWeight);
    }
    let need = p as usize * out_trunc;
    if f.trunc() < need {
        return Err(ModformError::InsufficientTruncation {
            have: f.trunc(),
            need,
        });
    }
    let m = f.modulus();
    if m == 0 {
        let scale = BigInt::from(chi_p) * BigInt::from(p).pow((k - 1) as u32);
        let mut coeffs = Vec::with_capacity(out_trunc + 1);
        for n in 0..=out_trunc {
            let mut b = f.coeff(p as usize * n);
            if n as u64 % p == 0 {
                b += &scale * f.coeff(n / p as usize);
            }
            coeffs.push(b);
        }
        Ok(TruncatedSeries::exact(coeffs, 0))
    } else {
        let pk1 = arith::mod_pow(p, k - 1, m);
        let chi = (chi_p as i64).rem_euclid(m as i64) as u64;
        let scale = (chi as u128 * pk1 as u128 % m as u128) as u64;
        let a = f.residues().expect("modular");
        let mut coeffs = Vec::with_capacity(out_trunc + 1);
        for n in 0..=out_trunc {
            let mut b = a[p as usize * n] as u128;
            if n as u64 % p == 0 {
                b += scale as u128 * a[n / p as usize] as u128;
            }
            coeffs.push((b % m as u128) as i64);
        }
        Ok(TruncatedSeries::modular(m, coeffs, 0)?)
    }
}

/// The four eta-quotients driving the section-4 congruence proofs.
pub mod section4 {
    use super::EtaQuotient;

    /// eta^4(2z)/eta^5(z) * eta^189(z): weight 94, leading exponent 8.
    pub fn f1() -> EtaQuotient {
        EtaQuotient::new(4, &[(1, 184), (2, 4)]).unwrap()
    }

    /// eta^4(2z)/eta^5(z) * eta^1701(z): weight 850, leading exponent 71.
    pub fn h3() -> EtaQuotient {
        EtaQuotient::new(4, &[(1, 1696), (2, 4)]).unwrap()
    }

    /// eta^4(2z)/eta^5(z) * eta^45(z): weight 22, leading exponent 2.
    pub fn f2() -> EtaQuotient {
        EtaQuotient::new(4, &[(1, 40), (2, 4)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{a_r_series, PartitionSeriesRequest};

    #[test]
    fn section4_f1_analyzes_to_weight_94() {
        let meta = analyze(&section4::f1()).unwrap();
        assert_eq!(meta.weight(), Some(94));
        assert!(meta.passes(), "{meta:?}");
        assert_eq!(meta.sturm, Some(47));
        assert_eq!(meta.character_disc, Some(BigInt::from(16)));
    }

    #[test]
    fn section4_f2_and_h3_weights() {
        let meta = analyze(&section4::f2()).unwrap();
        assert_eq!(meta.weight(), Some(22));
        assert!(meta.passes());
        assert_eq!(meta.sturm, Some(11));
        let meta = analyze(&section4::h3()).unwrap();
        assert_eq!(meta.weight(), Some(850));
        assert!(meta.passes());
        assert_eq!(meta.sturm, Some(425));
    }

    #[test]
    fn inverse_eta_fails_cusp_condition() {
        let eq = EtaQuotient::new(1, &[(1, -1)]).unwrap();
        let meta = analyze(&eq).unwrap();
        assert!(!meta.cusps_ok);
        assert!(!meta.passes());
    }

    #[test]
    fn character_values() {
        let eq = section4::f2();
        assert_eq!(character_at(&eq, 1).unwrap(), 1);
        for d in [1i64, 5, 9, 13] {
            assert_eq!(character_at(&eq, d).unwrap(), 1, "chi({d})");
        }
        // disc is 16 = 2^4, so chi(3) = (16/3) = +1
        assert_eq!(
            character_at(&eq, 3).unwrap(),
            arith::kronecker(16, 3)
        );
    }

    #[test]
    fn sturm_examples_and_weight_monotonicity() {
        assert_eq!(sturm_bound(94, 4), 47);
        assert_eq!(sturm_bound(850, 4), 425);
        assert_eq!(sturm_bound(22, 4), 11);
        // monotone in the weight at fixed level (not in the level: the
        // index factor prod (1+1/p) makes level 6 exceed level 7)
        for k in 1..40 {
            assert!(sturm_bound(k, 6) <= sturm_bound(k + 1, 6));
        }
        assert!(sturm_bound(12, 6) > sturm_bound(12, 7));
    }

    #[test]
    fn expansions_have_the_stated_leading_exponents() {
        for (eq, lead) in [
            (section4::f1(), 8usize),
            (section4::h3(), 71),
            (section4::f2(), 2),
        ] {
            let s = eta_expansion(&eq, 200, 0).unwrap();
            assert_eq!(s.offset24(), 0);
            for n in 0..lead {
                assert!(s.coeff(n).is_zero(), "coeff {n} of {eq:?}");
            }
            assert_eq!(s.coeff(lead), BigInt::one(), "leading term of {eq:?}");
        }
    }

    #[test]
    fn f1_expansion_is_a5_times_eta_power() {
        // f1 = q^8 (sum a_5(n) q^n) (q;q)^189
        let t = 120;
        let lhs = eta_expansion(&section4::f1(), t, 0).unwrap();
        let a5 = a_r_series(PartitionSeriesRequest {
            r: 5,
            trunc: t,
            modulus: 0,
        })
        .unwrap();
        let rhs = a5
            .mul(&euler_factor(1, 189, t, 0).unwrap())
            .unwrap()
            .shift_offset(192)
            .materialize()
            .unwrap();
        assert_eq!(lhs.truncate(t), rhs.truncate(t));
    }

    #[test]
    fn e4_first_coefficients() {
        let e4 = eisenstein_e4(4, 0);
        assert_eq!(e4.coeff(0), BigInt::one());
        assert_eq!(e4.coeff(1), BigInt::from(240)); // sigma_3(1) = 1
        assert_eq!(e4.coeff(2), BigInt::from(240 * 9)); // sigma_3(2) = 1 + 8
    }

    #[test]
    fn e4_is_one_mod_3_and_5() {
        for m in [3u64, 5] {
            let e4 = eisenstein_e4(200, m);
            assert_eq!(e4, TruncatedSeries::one(200, m), "mod {m}");
        }
    }

    #[test]
    fn hecke_on_zero_is_zero() {
        let z = TruncatedSeries::zero(30, 0);
        let out = hecke_tp(&z, 3, 4, 1, 10).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn hecke_mod_p_is_pure_dilation_extract() {
        // for k >= 2 the p^(k-1) term vanishes mod p
        let t = 90;
        let f = a_r_series(PartitionSeriesRequest {
            r: 5,
            trunc: t,
            modulus: 3,
        })
        .unwrap();
        let out = hecke_tp(&f, 3, 94, -1, t / 3).unwrap();
        let dilated = f.progression(3, 0).unwrap();
        assert_eq!(out, dilated.truncate(t / 3));
    }

    #[test]
    fn hecke_insufficient_truncation_is_an_error() {
        let f = TruncatedSeries::zero(10, 5);
        assert!(matches!(
            hecke_tp(&f, 5, 4, 1, 3),
            Err(ModformError::InsufficientTruncation { have: 10, need: 15 })
        ));
    }

    #[test]
    fn hecke_exact_includes_lower_term() {
        // f = q^p: (f | T_p)(n) picks up chi(p) p^(k-1) at n = 1
        let p = 3usize;
        let mut v = vec![0i64; 10];
        v[p] = 1;
        let f = TruncatedSeries::exact_i64(&v, 0);
        let out = hecke_tp(&f, p as u64, 4, -1, 3).unwrap();
        // b(1) = a(3) + chi(3) 3^3 a(1/3 -> 0 index) : a(p*1)=0, plus term a(1/p) undefined;
        // b(1): 1 not divisible by 3 -> b(1) = a(3) = 1
        assert_eq!(out.coeff(1), BigInt::one());
        // b(3) = a(9) + chi * 27 * a(1) = 0
        assert_eq!(out.coeff(3), BigInt::zero());
        // b(0) = a(0) + chi * 27 * a(0) = 0
        assert_eq!(out.coeff(0), BigInt::zero());
    }

    #[test]
    fn eta_quotient_json_round_trip() {
        let eq = section4::f1();
        let json = serde_json::to_string(&eq).unwrap();
        assert_eq!(json, r#"{"N":4,"factors":{"1":184,"2":4}}"#);
        let back: EtaQuotient = serde_json::from_str(&json).unwrap();
        assert_eq!(back, eq);
    }

    #[test]
    fn bad_divisor_is_rejected() {
        assert!(matches!(
            EtaQuotient::new(4, &[(3, 1)]),
            Err(ModformError::BadDivisor(3, 4))
        ));
        assert!(matches!(
            EtaQuotient::new(4, &[(1, 0)]),
            Err(ModformError::EmptyQuotient)
        ));
    }
}
