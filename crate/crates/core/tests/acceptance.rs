//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N: PASS` line (run with `--nocapture` to see them live).
//!
//! Every congruence here is checked by exact residue/integer equality.
//! Randomized criteria use fixed ChaCha seeds and are fully deterministic.

use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use etaq::arith;
use etaq::modform::{self, EtaQuotient};
use etaq::newman::{self, CongruenceFamily, NewmanProfile};
use etaq::partitions::{
    a_r_series, c_series, enumerate_colored_partitions, PartitionSeriesRequest,
};
use etaq::verify::{self, CheckResult, ScanConfig};
use etaq::{euler_factor, TruncatedSeries};

fn line(n: u32, ok: bool, started: Instant) {
    println!(
        "criterion {n}: {} ({} ms)",
        if ok { "PASS" } else { "FAIL" },
        started.elapsed().as_millis()
    );
    assert!(ok, "criterion {n} failed");
}

#[test]
fn criterion_01_oracle_agreement() {
    let t = Instant::now();
    let mut ok = true;
    for r in 1..=5u32 {
        let s = a_r_series(PartitionSeriesRequest {
            r,
            trunc: 13,
            modulus: 0,
        })
        .unwrap();
        for n in 0..=12u64 {
            ok &= s.coeff(n as usize) == enumerate_colored_partitions(n, r).unwrap().into();
        }
        if r == 3 {
            ok &= s.coeff(2) == BigInt::from(7);
        }
        if r == 1 {
            ok &= s.coeff(5) == BigInt::from(7);
        }
    }
    line(1, ok, t);
}

#[test]
fn criterion_02_mod7_families() {
    let t = Instant::now();
    let config = ScanConfig::default();
    let mut ok = true;
    for (r, b) in [(1u32, 5u64), (3, 2), (4, 4), (5, 6), (7, 3)] {
        let fam = CongruenceFamily {
            r,
            a: 7,
            b,
            modulus: 7,
            n_filter: None,
        };
        let rep = verify::check_family(&fam, 500, &config).unwrap();
        ok &= rep.result == CheckResult::Pass;
    }
    line(2, ok, t);
}

#[test]
fn criterion_03_a3_vs_c_mod5() {
    let t = Instant::now();
    let rep = verify::check_eq_3_1(2000, &ScanConfig::default()).unwrap();
    line(3, rep.result == CheckResult::Pass, t);
}

#[test]
fn criterion_04_recurrence_exact() {
    let t = Instant::now();
    let need = 13 * 13 * 60 + newman::shift_d(13);
    let c = c_series(need as usize, 0).unwrap();
    let mut ok = true;
    for p in [5u64, 7, 11, 13] {
        let rep = newman::verify_recurrence(p, 60, &c).unwrap();
        ok &= rep.passed();
    }
    line(4, ok, t);
}

#[test]
fn criterion_05_xi_omega_values() {
    let t = Instant::now();
    let c = c_series(newman::shift_d(11) as usize + 1, 0).unwrap();
    let p5 = NewmanProfile::compute(5, &c).unwrap();
    let p11 = NewmanProfile::compute(11, &c).unwrap();
    let ok = p5.xi == BigInt::from(2)
        && p11.xi_mod5 == 1
        && p11.omega == Some(6)
        && newman::omega(1, 1).unwrap() == 6;
    line(5, ok, t);
}

#[test]
fn criterion_06_remark_family_via_c() {
    let t = Instant::now();
    // a_3(6655n + 605j + 126), j in {1,4,6,7,8}, scanned as the single
    // progression a_3(605m + 126) over admissible m = 11n + j <= 33;
    // the reduction a_3(5n+1) = 3c(n) mod 5 routes it through c(121m + 25)
    let c = c_series(121 * 33 + 26, 5).unwrap();
    let coeffs = c.series().residues().unwrap();
    let mut ok = true;
    let mut checked = 0;
    for m in 0..=33u64 {
        if [1, 4, 6, 7, 8].contains(&(m % 11)) {
            ok &= coeffs[(121 * m + 25) as usize] == 0;
            checked += 1;
        }
    }
    ok &= checked == 15;
    // the generated family must agree with the literal one
    let prof = NewmanProfile::compute(
        11,
        &c_series(newman::shift_d(11) as usize + 1, 0).unwrap(),
    )
    .unwrap();
    let fam = newman::families_part2(11, 0, &prof).unwrap();
    ok &= fam.a == 605 && fam.b == 126 && fam.modulus == 5;
    let filt = fam.n_filter.as_ref().unwrap();
    ok &= (0..11).filter(|&j| filt.admits(j)).collect::<Vec<_>>() == vec![1, 4, 6, 7, 8];
    let rep = verify::check_family(&fam, 33, &ScanConfig::default()).unwrap();
    ok &= rep.result == CheckResult::Pass;
    line(6, ok, t);
}

#[test]
fn criterion_07_proportional_family_k0() {
    let t = Instant::now();
    let rel = newman::part3_relation(0).unwrap();
    assert_eq!((rel.a, rel.b, rel.factor), (625, 651, 2));
    let rep = verify::check_part3(&rel, 30, &ScanConfig::default()).unwrap();
    line(7, rep.result == CheckResult::Pass, t);
}

#[test]
fn criterion_08_a5_mod5() {
    let t = Instant::now();
    let fam = CongruenceFamily {
        r: 5,
        a: 5,
        b: 3,
        modulus: 5,
        n_filter: None,
    };
    let rep = verify::check_family(&fam, 1000, &ScanConfig::default()).unwrap();
    line(8, rep.result == CheckResult::Pass, t);
}

#[test]
fn criterion_09_a5_mod3_instances() {
    let t = Instant::now();
    let config = ScanConfig::default();
    let mut ok = true;
    for (a, b, n_max) in [(27u64, 19u64, 370u64), (243, 172, 40)] {
        let fam = CongruenceFamily {
            r: 5,
            a,
            b,
            modulus: 3,
            n_filter: None,
        };
        ok &= verify::check_family(&fam, n_max, &config).unwrap().result == CheckResult::Pass;
    }
    ok &= verify::check_selfsimilar(120, &config).unwrap().result == CheckResult::Pass;
    line(9, ok, t);
}

#[test]
fn criterion_10_hecke_images() {
    let t = Instant::now();
    let config = ScanConfig::default();
    let mut ok = modform::sturm_bound(94, 4) == 47
        && modform::sturm_bound(850, 4) == 425
        && modform::sturm_bound(22, 4) == 11;
    for rep in verify::reproduce_section4(&config).unwrap() {
        ok &= rep.result == CheckResult::Pass;
    }
    line(10, ok, t);
}

#[test]
fn criterion_11_eta_quotient_verdicts() {
    let t = Instant::now();
    let mut ok = true;
    for (eq, weight2) in [
        (modform::section4::f1(), 94 * 2),
        (modform::section4::h3(), 850 * 2),
        (modform::section4::f2(), 22 * 2),
    ] {
        let meta = modform::analyze(&eq).unwrap();
        ok &= meta.passes() && meta.weight2 == weight2;
        // discriminant is 2^4 times an odd square
        let disc = meta.character_disc.clone().unwrap();
        let q = &disc / BigInt::from(16);
        ok &= &q * BigInt::from(16) == disc;
        let root = q.sqrt();
        ok &= &root * &root == q && (&root % BigInt::from(2)) == BigInt::from(1);
    }
    // the fourth form has weight 94 + 756 (E4^189 multiplier), matching h3
    ok &= 94 + 4 * 189 == 850;
    // a deliberately broken quotient: eta(z)^-1 at level 1
    let bad = EtaQuotient::new(1, &[(1, -1)]).unwrap();
    ok &= !modform::analyze(&bad).unwrap().passes();
    line(11, ok, t);
}

#[test]
fn criterion_12_dissection_exact() {
    let t = Instant::now();
    let rep = verify::verify_dissection(30, &ScanConfig::default()).unwrap();
    line(12, rep.result == CheckResult::Pass, t);
}

/// Random modular series valid through the inclusive order `trunc`.
fn random_series(rng: &mut ChaCha8Rng, trunc: usize, m: u64) -> TruncatedSeries {
    TruncatedSeries::modular(m, (0..=trunc).map(|_| rng.gen_range(0..m as i64)).collect(), 0)
        .unwrap()
}

#[test]
fn criterion_13_property_suites() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut ok = true;

    // ring axioms at order 64
    for _ in 0..25 {
        let m = [3u64, 5, 7, 97][rng.gen_range(0..4)];
        let (a, b, c) = (
            random_series(&mut rng, 64, m),
            random_series(&mut rng, 64, m),
            random_series(&mut rng, 64, m),
        );
        ok &= a.add(&b).unwrap() == b.add(&a).unwrap();
        ok &= a.add(&b).unwrap().add(&c).unwrap() == a.add(&b.add(&c).unwrap()).unwrap();
        ok &= a.mul(&b).unwrap() == b.mul(&a).unwrap();
        ok &= a.mul(&b.mul(&c).unwrap()).unwrap() == a.mul(&b).unwrap().mul(&c).unwrap();
        ok &= a.mul(&b.add(&c).unwrap()).unwrap()
            == a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
    }

    // Frobenius powering equals naive powering mod p
    for _ in 0..20 {
        let m = [3u64, 5, 7][rng.gen_range(0..3)];
        let e = rng.gen_range(1..60u64);
        let s = random_series(&mut rng, 48, m);
        ok &= s.pow(e) == s.pow_naive(e);
    }

    // invert round-trip for unit-constant series
    for _ in 0..20 {
        let m = [3u64, 5, 7, 97][rng.gen_range(0..4)];
        let mut s = random_series(&mut rng, 64, m);
        s = s.add(&TruncatedSeries::one(64, m)).unwrap(); // may still be non-unit
        if let Ok(inv) = s.invert() {
            ok &= s.mul(&inv).unwrap() == TruncatedSeries::one(64, m);
        }
        let u = euler_factor(1, rng.gen_range(-6..7i64), 64, m).unwrap();
        ok &= u.mul(&u.invert().unwrap()).unwrap() == TruncatedSeries::one(64, m);
    }

    // the Hecke multiplicativity identity on 50 random (f, g) pairs:
    // (f g(q^p)) | T_p = (f | T_p) g(q) mod p, for k > 1
    for _ in 0..50 {
        let p = [3u64, 5][rng.gen_range(0..2)];
        let k = rng.gen_range(2..6u64);
        let out = 60usize;
        let f = random_series(&mut rng, out * p as usize, p);
        let g = random_series(&mut rng, out, p);
        let g_dilated = g.dilate(p as usize).truncate(out * p as usize);
        let chi = [1i8, -1][rng.gen_range(0..2)];
        let lhs = modform::hecke_tp(&f.mul(&g_dilated).unwrap(), p, k, chi, out).unwrap();
        let rhs = modform::hecke_tp(&f, p, k, chi, out)
            .unwrap()
            .mul(&g)
            .unwrap();
        ok &= lhs == rhs;
    }

    // Legendre multiplicativity (ab/p) = (a/p)(b/p)
    for _ in 0..200 {
        let p = [3u64, 5, 7, 11, 13, 97][rng.gen_range(0..6)];
        let a = rng.gen_range(-50..50i64);
        let b = rng.gen_range(-50..50i64);
        ok &= arith::legendre(a * b, p).unwrap()
            == arith::legendre(a, p).unwrap() * arith::legendre(b, p).unwrap();
    }

    line(13, ok, t);
}
