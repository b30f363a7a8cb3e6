use num_rational::BigRational;
use pff::algebra::{field_arith, poly_gcd, rat, rat_int, ArithOp, Field, Matrix, Poly};
use pff::finite_field::{Fq, PrimePower};
use pff::MathError;
use proptest::prelude::*;
use std::sync::Arc;

fn fq_poly(ctx: &Arc<PrimePower>, c: &[i64]) -> Poly<Fq> {
    Poly::new(c.iter().map(|&x| Fq::new(ctx, x)).collect(), &Fq::new(ctx, 0))
}

/// Brute-force root set over F_p, used to factor small polynomials.
fn roots(f: &Poly<Fq>, ctx: &Arc<PrimePower>) -> Vec<u64> {
    Fq::all(ctx).filter(|x| f.eval(x).is_zero()).map(|x| x.index()).collect()
}

#[test]
fn rational_addition() {
    assert_eq!(field_arith(&rat(2, 3), &rat(1, 6), ArithOp::Add).unwrap(), rat(5, 6));
}

#[test]
fn self_subtraction_is_zero() {
    let ctx = PrimePower::new(3, 2).unwrap();
    for x in Fq::all(&ctx) {
        assert!(field_arith(&x, &x, ArithOp::Sub).unwrap().is_zero());
    }
    let q = rat(-17, 4);
    assert!(Field::is_zero(&field_arith(&q, &q, ArithOp::Sub).unwrap()));
}

#[test]
fn divide_by_zero() {
    assert_eq!(
        field_arith(&rat_int(5), &rat_int(0), ArithOp::Div),
        Err(MathError::DivisionByZero)
    );
    let ctx = PrimePower::prime(7).unwrap();
    assert_eq!(
        field_arith(&Fq::new(&ctx, 5), &Fq::new(&ctx, 0), ArithOp::Div),
        Err(MathError::DivisionByZero)
    );
}

#[test]
fn rationals_stay_reduced() {
    let q = rat(6, -8);
    assert_eq!(q.numer().to_string(), "-3");
    assert_eq!(q.denom().to_string(), "4");
}

#[test]
fn gcd_shared_root() {
    let ctx = PrimePower::prime(7).unwrap();
    let f = fq_poly(&ctx, &[-1, 0, 1]);
    let g = fq_poly(&ctx, &[-1, 1]);
    assert_eq!(poly_gcd(&f, &g).unwrap(), fq_poly(&ctx, &[6, 1]));
}

#[test]
fn gcd_with_one() {
    let ctx = PrimePower::prime(5).unwrap();
    let f = fq_poly(&ctx, &[3, 1, 4, 1]);
    let one = fq_poly(&ctx, &[1]);
    assert_eq!(poly_gcd(&f, &one).unwrap(), one);
}

#[test]
fn gcd_both_zero() {
    let ctx = PrimePower::prime(5).unwrap();
    let z = Poly::zero(&Fq::new(&ctx, 0));
    assert_eq!(poly_gcd(&z, &z), Err(MathError::BothZero));
}

#[test]
fn gcd_of_squares_over_f7() {
    let ctx = PrimePower::prime(7).unwrap();
    let a = fq_poly(&ctx, &[1, 5]);
    let f = a.mul(&a);
    let g = a.mul(&fq_poly(&ctx, &[2, 1]));
    let h = poly_gcd(&f, &g).unwrap();
    // roots by exhaustion: (1+5δ) vanishes at δ=4, (2+δ) at δ=5
    assert_eq!(roots(&f, &ctx), vec![4]);
    assert_eq!(roots(&g, &ctx), vec![4, 5]);
    assert_eq!(h.degree(), Some(1));
    assert_eq!(roots(&h, &ctx), vec![4]);
    assert!(h.leading().unwrap().is_one());
}

#[test]
fn small_tridiagonal_dets() {
    let (q, x) = (rat(3, 2), rat(-5, 7));
    let qx = q.clone() * x.clone();
    let m1 = Matrix::new(1, 1, vec![qx.clone()]).unwrap();
    assert_eq!(m1.det().unwrap(), qx);
    let q2x = q.clone() * q.clone() * x.clone();
    let m2 = Matrix::new(2, 2, vec![qx, rat_int(-1), rat_int(-1), q2x]).unwrap();
    let expect = q.clone() * q.clone() * q * x.clone() * x - rat_int(1);
    assert_eq!(m2.det().unwrap(), expect);
    assert_eq!(m2.det_cofactor().unwrap(), expect);
}

#[test]
fn non_square() {
    let m = Matrix::new(2, 3, vec![rat_int(1); 6]).unwrap();
    assert_eq!(m.det(), Err(MathError::NonSquare { rows: 2, cols: 3 }));
}

#[test]
fn random_f11_dets_match_cofactor() {
    use rand::{Rng, SeedableRng};
    let ctx = PrimePower::prime(11).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let m = Matrix::from_fn(4, 4, |_, _| Ok(Fq::new(&ctx, rng.gen_range(0..11)))).unwrap();
        assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
    }
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-30i64..30, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn poly_strategy(p: u64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..p as i64, 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !Field::is_zero(&b) {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
    }

    #[test]
    fn gcd_scales(p in prop::sample::select(vec![3u64, 5, 7]),
                  f in poly_strategy(7), g in poly_strategy(7), h in poly_strategy(7)) {
        let ctx = PrimePower::prime(p).unwrap();
        let (f, g, h) = (fq_poly(&ctx, &f), fq_poly(&ctx, &g), fq_poly(&ctx, &h));
        prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
        let lhs = poly_gcd(&f.mul(&h), &g.mul(&h)).unwrap();
        let rhs = h.mul(&poly_gcd(&f, &g).unwrap()).monic().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn triangular_det(n in 1usize..=6, seed in any::<u64>(), upper in any::<bool>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::from_fn(n, n, |i, j| {
            let zero = if upper { i > j } else { i < j };
            Ok(if zero { rat_int(0) } else { rat(rng.gen_range(-9..10), rng.gen_range(1..5)) })
        }).unwrap();
        let diag = (0..n).fold(rat_int(1), |acc, i| acc * m.get(i, i));
        prop_assert_eq!(m.det().unwrap(), diag);
    }

    #[test]
    fn bareiss_matches_cofactor(n in 1usize..=6, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::from_fn(n, n, |_, _| {
            Ok(if rng.gen_bool(0.3) { rat_int(0) } else { rat(rng.gen_range(-9..10), rng.gen_range(1..5)) })
        }).unwrap();
        prop_assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
    }
}
