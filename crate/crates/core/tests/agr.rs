use pff::agr::{agr_scan, agr_search, AgrMap, AgrQuery, AgrReport, ScanOptions};
use pff::algebra::{rat, rat_int, Field, Rational};
use pff::finite_field::{Fq, PrimePower, ProjValue};
use pff::maps::MapState;
use pff::MathError;
use rand::{Rng, SeedableRng};

fn search(map: AgrMap, p: u64, x: Rational, y: Rational, n: i64) -> AgrReport {
    agr_search(&AgrQuery::new(map, p, MapState::new(x, y), n)).unwrap()
}

fn expect(r: &AgrReport, m: usize, p: u64, x: Fq, y: Fq) {
    assert!(r.found, "not found: {:?}", r.valuation_trace);
    assert_eq!(r.m, Some(m));
    let want = MapState::new(ProjValue::Finite(x), ProjValue::Finite(y));
    assert_eq!(r.upstairs.as_ref(), Some(&want), "p={p}");
    assert_eq!(r.downstairs.as_ref(), Some(&want));
}

fn f(p: u64) -> impl Fn(i64) -> Fq {
    let ctx = PrimePower::prime(p).unwrap();
    move |n| Fq::new(&ctx, n)
}

#[test]
fn psi2_x_zero() {
    let r = search(AgrMap::Psi { a: 1, gamma: 2 }, 7, rat_int(7), rat_int(3), 0);
    // 1/(1²·3) = 3⁻¹ ≡ 5 (mod 7)
    expect(&r, 3, 7, f(7)(5), f(7)(0));
}

#[test]
fn psi2_both_zero() {
    let r = search(AgrMap::Psi { a: 1, gamma: 2 }, 7, rat_int(7), rat_int(7), 0);
    expect(&r, 8, 7, f(7)(0), f(7)(0));
}

#[test]
fn psi3_diverges() {
    for e in [1, 2, 3] {
        let r = search(AgrMap::Psi { a: 1, gamma: 3 }, 7, rat_int(7 * e), rat_int(3), 0);
        assert!(!r.found);
        let mv = r.min_valuation_trace();
        assert_eq!(mv.len(), 33);
        assert!(mv.windows(2).all(|w| w[1] <= w[0]));
        assert!(*mv.last().unwrap() < -100, "{mv:?}");
    }
}

#[test]
fn qp1_cases() {
    let (a, b, q) = (2i64, 3i64, 5i64);
    let map = AgrMap::Qp1 { a, b, q };
    for p in [7u64, 11, 13] {
        let c = f(p);
        let (ca, cb, cq) = (c(a), c(b), c(q));
        let pi = p as i64;
        // (i): (0̃, ỹ) → (b²/(a²q²ỹ), 0)
        for yt in 1..pi {
            let r = search(map.clone(), p, rat_int(pi * 4), rat_int(yt + pi), 0);
            let want = cb.mul(&cb).div(&ca.mul(&ca).mul(&cq).mul(&cq).mul(&c(yt))).unwrap();
            expect(&r, 3, p, want, c(0));
        }
        // (ii): (x̃, 0̃) → (0, a²q⁴/(bx̃)) unless ax̃ + b ≡ 0
        for xt in 1..pi {
            if ca.mul(&c(xt)).add(&cb).is_zero() {
                continue;
            }
            let r = search(map.clone(), p, rat_int(xt), rat_int(pi * 2), 0);
            let want = ca.mul(&ca).mul(&cq.pow(4).unwrap()).div(&cb.mul(&c(xt))).unwrap();
            expect(&r, 5, p, c(0), want);
        }
        // (iii): (0̃, 0̃) → (0, 0)
        let r = search(map.clone(), p, rat_int(pi), rat_int(-pi), 0);
        expect(&r, 8, p, c(0), c(0));
    }
}

#[test]
fn qp2_case_v() {
    let (a, q, tau0) = (3i64, 2i64, 5i64);
    let p = 11u64;
    let c = f(p);
    for xt in 1..11i64 {
        // x̃ỹ + 1 ≡ 0 and x̃ ≠ τ
        let yt = c(-1).div(&c(xt)).unwrap();
        if c(xt) == c(tau0) {
            continue;
        }
        let y = rat_int(yt.index() as i64);
        // some lifts land exactly on q^k τ₀ (e.g. 40 = 2³·5)
        let r = (1..10)
            .find_map(|e| {
                let pt = MapState::new(rat_int(xt + 11 * e), y.clone());
                agr_search(&AgrQuery::new(AgrMap::Qp2 { a, q, tau0 }, p, pt, 0)).ok()
            })
            .unwrap();
        let t = c(tau0);
        let v = c(a).mul(&c(q).pow(12).unwrap()).mul(&t.pow(4).unwrap()).mul(&yt);
        expect(&r, 7, p, v.inv().unwrap().neg(), v);
    }
}

#[test]
fn dp2_cases() {
    let p = 7u64;
    let c = f(p);
    let half = c(2).inv().unwrap();
    let alpha = |n: i64, a: i64, d: i64, z0: i64| c(n * d + z0 + a).mul(&half);
    let beta = |n: i64, a: i64, d: i64, z0: i64| c(-n * d - z0 + a).mul(&half);
    // a = −8, δ = z₀ = 2: α̃_n = n − 3, β̃_n = −n − 5
    let (a, d, z0) = (-8i64, 2i64, 2i64);
    let map = AgrMap::Dp2 { a, delta: d, z0 };
    for yt in 0..7i64 {
        let y = rat_int(yt + 7);
        // (i) at n = 3 where α vanishes: x̃_{n+1} = β̃_n/2 − ỹ
        let r = search(map.clone(), p, rat_int(8), y.clone(), 3);
        expect(&r, 1, p, beta(3, a, d, z0).mul(&half).sub(&c(yt)), c(1));
        // (ii) at n = 1
        let num = c(2).mul(&alpha(1, a, d, z0)).mul(&c(yt))
            .add(&c(2 * d).mul(&beta(2, a, d, z0)))
            .add(&c(2 - d).mul(&c(a)));
        let want = num.div(&c(2).mul(&beta(3, a, d, z0))).unwrap();
        let r = search(map.clone(), p, rat_int(1 - 14), y.clone(), 1);
        expect(&r, 3, p, want, c(-1));
        // (iii) at n = 0 where β̃_2 = 0 and a + δ ≢ 0
        assert!(beta(2, a, d, z0).is_zero());
        let want = c(a * d).sub(&c(a - d).mul(&c(yt))).neg().div(&c(a + d)).unwrap();
        let r = search(map.clone(), p, rat_int(1 + 7 * 5), y.clone(), 0);
        expect(&r, 5, p, want, c(1));
    }
    // (iv): a = −δ and β̃_2 = 0 with z₀ = −3δ
    let (a, d, z0) = (-1i64, 1i64, -3i64);
    assert!(beta(2, a, d, z0).is_zero() && !alpha(0, a, d, z0).is_zero());
    for yt in 0..7i64 {
        let r = search(AgrMap::Dp2 { a, delta: d, z0 }, p, rat_int(1 + 7), rat_int(yt), 0);
        expect(&r, 7, p, c(1 + 2 * yt).mul(&half), c(-1));
    }
}

#[test]
fn generic_points_reduce_in_one_step() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let maps = [
        AgrMap::Psi { a: 2, gamma: 2 },
        AgrMap::Qp1 { a: 1, b: 2, q: 4 },
        AgrMap::Qp2 { a: 1, q: 2, tau0: 4 },
        AgrMap::Dp2 { a: 3, delta: 1, z0: 1 },
    ];
    for p in [3u64, 5, 7, 11] {
        let ctx = PrimePower::prime(p).unwrap();
        for map in &maps {
            let mut done = 0;
            while done < 500 {
                let (x, y) = (rat(rng.gen_range(-500..500), 1), rat(rng.gen_range(-500..500), 1));
                let n = rng.gen_range(0..5);
                let pred = pff::agr::predict(
                    map,
                    &ctx,
                    &Fq::from_bigint(&ctx, x.numer()),
                    &Fq::from_bigint(&ctx, y.numer()),
                    n,
                );
                if pred.stratum != "generic" {
                    continue;
                }
                let Ok(r) = agr_search(&AgrQuery::new(map.clone(), p, MapState::new(x, y), n)) else { continue };
                assert_eq!(r.m, Some(1), "{map:?} p={p}");
                done += 1;
            }
        }
    }
}

#[test]
fn exponent_independent_of_lift() {
    let p = 7u64;
    let pi = p as i64;
    for k in 1..=3u32 {
        let pk = pi.pow(k);
        for e in (1..40).filter(|e| e % pi != 0).take(20) {
            let r = search(AgrMap::Psi { a: 3, gamma: 2 }, p, rat_int(pk * e), rat_int(4), 0);
            assert_eq!(r.m, Some(3));
            let r = search(AgrMap::Psi { a: 3, gamma: 2 }, p, rat_int(pk * e), rat_int(pk * (e + 1)), 0);
            assert_eq!(r.m, Some(8));
            let r = search(AgrMap::Qp1 { a: 1, b: 2, q: 3 }, p, rat_int(pk * e), rat_int(5), 0);
            assert_eq!(r.m, Some(3));
        }
    }
}

#[test]
fn domain_violations() {
    let q = |map, x, y| agr_search(&AgrQuery::new(map, 7, MapState::new(x, y), 0));
    let psi = AgrMap::Psi { a: 1, gamma: 2 };
    assert!(matches!(q(psi.clone(), rat_int(0), rat_int(3)), Err(MathError::DomainViolation(_))));
    assert!(matches!(q(psi, rat(1, 7), rat_int(3)), Err(MathError::DomainViolation(_))));
    let dp2 = AgrMap::Dp2 { a: 1, delta: 1, z0: 0 };
    assert!(matches!(q(dp2, rat_int(-1), rat_int(3)), Err(MathError::DomainViolation(_))));
    let qp1 = AgrMap::Qp1 { a: 1, b: 14, q: 1 };
    assert!(matches!(q(qp1, rat_int(2), rat_int(3)), Err(MathError::DomainViolation(_))));
    let qp2 = AgrMap::Qp2 { a: 1, q: 2, tau0: 3 };
    assert!(matches!(q(qp2.clone(), rat_int(12), rat_int(3)), Err(MathError::DomainViolation(_))));
    assert!(matches!(q(qp2, rat_int(2), rat(-1, 2)), Err(MathError::DomainViolation(_))));
}

#[test]
fn scan_is_deterministic() {
    let opts = ScanOptions { samples: 10, seed: 42, ..Default::default() };
    let a = agr_scan(&AgrMap::Psi { a: 2, gamma: 2 }, 5, &opts).unwrap();
    let b = agr_scan(&AgrMap::Psi { a: 2, gamma: 2 }, 5, &opts).unwrap();
    assert_eq!(a, b);
    for row in &a.rows {
        assert_eq!(row.matched, row.asserted, "{}", row.stratum);
    }
}

#[test]
fn scan_rejects_bad_params() {
    let opts = ScanOptions { samples: 2, ..Default::default() };
    assert!(matches!(
        agr_scan(&AgrMap::Qp1 { a: 1, b: 5, q: 1 }, 5, &opts),
        Err(MathError::DomainViolation(_))
    ));
}
