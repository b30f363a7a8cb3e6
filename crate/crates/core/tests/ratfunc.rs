use pff::algebra::{Field, Poly};
use pff::finite_field::{proj_eval, EvalOutcome, Fq, PrimePower, ProjExpr, ProjValue};
use pff::ratfunc::RatFunc;
use pff::MathError;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

fn f7() -> Arc<PrimePower> {
    PrimePower::prime(7).unwrap()
}

fn poly(ctx: &Arc<PrimePower>, c: &[i64]) -> Poly<Fq> {
    Poly::new(c.iter().map(|&x| Fq::new(ctx, x)).collect(), &Fq::new(ctx, 0))
}

fn rf(ctx: &Arc<PrimePower>, n: &[i64], d: &[i64]) -> RatFunc<Fq> {
    RatFunc::new(poly(ctx, n), poly(ctx, d)).unwrap()
}

fn val(ctx: &Arc<PrimePower>, n: i64) -> ProjValue<Fq> {
    ProjValue::Finite(Fq::new(ctx, n))
}

#[test]
fn cancellation() {
    let c = f7();
    let a = rf(&c, &[2, 2], &[1, 5]);
    let b = rf(&c, &[1, 5], &[2]);
    assert_eq!(a.mul(&b), RatFunc::from_poly(poly(&c, &[1, 1])));
    assert!(a.add(&a.neg()).is_zero());
}

#[test]
fn canonical_form() {
    let c = f7();
    let a = rf(&c, &[3, 3], &[2, 4]);
    // (3+3δ)/(2+4δ) = 5·(1+δ)/(4+δ)
    assert_eq!(a.den(), &poly(&c, &[4, 1]));
    assert_eq!(a.num(), &poly(&c, &[6, 6]));
    assert_eq!(a.display_in("d"), "6*(1 + d)/(4 + d)");
    assert_eq!(RatFunc::new(poly(&c, &[1]), poly(&c, &[0])), Err(MathError::DivisionByZero));
    assert_eq!(a.inv().unwrap().inv().unwrap(), a);
}

#[test]
fn known_reductions() {
    let c = f7();
    let one = Fq::new(&c, 1);
    // 6(1+δ)(1+5δ)/(1+3δ+3δ²)
    let x21 = RatFunc::new(poly(&c, &[1, 1]).mul(&poly(&c, &[1, 5])).scale(&Fq::new(&c, 6)),
        poly(&c, &[1, 3, 3])).unwrap();
    assert_eq!(x21.reduce_at(&one), ProjValue::Infinity);
    // 2(1+2δ+4δ²)/(1+5δ)²
    let y21 = RatFunc::new(poly(&c, &[2, 4, 8]), poly(&c, &[1, 5]).mul(&poly(&c, &[1, 5]))).unwrap();
    assert_eq!(y21.reduce_at(&one), val(&c, 0));
    // 4(1+δ)(2+δ)(3+2δ)/((1+5δ)(5+5δ+2δ²))
    let n = poly(&c, &[1, 1]).mul(&poly(&c, &[2, 1])).mul(&poly(&c, &[3, 2])).scale(&Fq::new(&c, 4));
    let d = poly(&c, &[1, 5]).mul(&poly(&c, &[5, 5, 2]));
    let x22 = RatFunc::new(n, d).unwrap();
    assert_eq!(x22.reduce_at(&one), val(&c, 4));
    assert_eq!(x22.order_at(&one), Some(0));
    assert_eq!(x21.order_at(&one), Some(-1));
}

#[test]
fn zero_reduces_to_zero() {
    let c = f7();
    let z = RatFunc::constant(Fq::new(&c, 0));
    assert_eq!(z.reduce_at(&Fq::new(&c, 3)), val(&c, 0));
    assert_eq!(z.order_at(&Fq::new(&c, 3)), None);
}

fn random_rf(c: &Arc<PrimePower>, rng: &mut impl Rng) -> RatFunc<Fq> {
    loop {
        let n: Vec<i64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..7)).collect();
        let d: Vec<i64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..7)).collect();
        if let Ok(r) = RatFunc::new(poly(c, &n), poly(c, &d)) {
            if !r.is_zero() {
                return r;
            }
        }
    }
}

#[test]
fn reduction_multiplicative_and_substitution() {
    let c = f7();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let (a, b) = (random_rf(&c, &mut rng), random_rf(&c, &mut rng));
        let d0 = Fq::new(&c, rng.gen_range(0..7));
        let ra = a.reduce_at(&d0);
        let rb = b.reduce_at(&d0);
        let e = ProjExpr::mul(ProjExpr::leaf(ra.clone()), ProjExpr::leaf(rb));
        if let EvalOutcome::Determinate(v) = proj_eval(&e) {
            assert_eq!(a.mul(&b).reduce_at(&d0), v);
        }
        let dv = a.den().eval(&d0);
        if !dv.is_zero() {
            let direct = a.num().eval(&d0).div(&dv).unwrap();
            if !direct.is_zero() || a.order_at(&d0) == Some(0) {
                assert_eq!(ra, ProjValue::Finite(direct));
            }
        }
    }
}

#[test]
fn normalization_idempotent() {
    let c = f7();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let a = random_rf(&c, &mut rng);
        let again = RatFunc::new(a.num().clone(), a.den().clone()).unwrap();
        assert_eq!(again, a);
    }
}

#[test]
fn over_f9() {
    let c = PrimePower::new(3, 2).unwrap();
    let t = Fq::from_coeffs(&c, &[0, 1]).unwrap();
    let d = RatFunc::variable(&t);
    let x = d.sub(&RatFunc::constant(t.clone())).inv().unwrap();
    assert_eq!(x.reduce_at(&t), ProjValue::Infinity);
    assert_eq!(x.order_at(&t), Some(-1));
}
