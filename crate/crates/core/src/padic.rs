//! Truncated p-adic numbers with exact valuation tracking.

use crate::algebra::{int_valuation, Field, Rational};
use crate::error::{MathError, Result};
use crate::finite_field::{Fq, PrimePower, ProjValue};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub const DEFAULT_PRECISION: u32 = 64;
pub const MAX_PRECISION: u32 = 1024;

#[derive(Clone, Debug)]
enum Repr {
    Zero,
    /// Known only to lie in p^abs Z_p; every digit cancelled.
    Small(i64),
    Unit { val: i64, unit: BigUint, prec: u32 },
}

/// x = p^val * unit, with `prec` known base-p digits of the unit.
/// `cap` is the working precision used for constants built from this value.
#[derive(Clone, Debug)]
pub struct PAdic {
    p: u64,
    cap: u32,
    repr: Repr,
}

fn ppow(p: u64, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), k as usize)
}

fn big_mod(n: &BigInt, m: &BigUint) -> BigUint {
    let mi = BigInt::from_biguint(Sign::Plus, m.clone());
    n.mod_floor(&mi).to_biguint().expect("non-negative")
}

fn inv_mod(a: &BigUint, m: &BigUint) -> BigUint {
    let ai = BigInt::from_biguint(Sign::Plus, a.clone());
    let mi = BigInt::from_biguint(Sign::Plus, m.clone());
    let e = ai.extended_gcd(&mi);
    debug_assert!(e.gcd.is_one());
    big_mod(&e.x, m)
}

impl PAdic {
    pub fn zero(p: u64, cap: u32) -> Self {
        PAdic {
            p,
            cap,
            repr: Repr::Zero,
        }
    }

    pub fn from_rational(q: &Rational, p: u64, precision: u32) -> Self {
        let precision = precision.max(1);
        if Zero::is_zero(q) {
            return Self::zero(p, precision);
        }
        let (vn, n) = int_valuation(q.numer(), p);
        let (vd, d) = int_valuation(q.denom(), p);
        let pk = ppow(p, precision);
        let n = big_mod(&n, &pk);
        let d = big_mod(&d, &pk);
        PAdic {
            p,
            cap: precision,
            repr: Repr::Unit {
                val: vn - vd,
                unit: n * inv_mod(&d, &pk) % &pk,
                prec: precision,
            },
        }
    }

    pub fn from_int(n: i64, p: u64, precision: u32) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)), p, precision)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// `Ok(None)` for exact zero; `PrecisionExhausted` when every digit cancelled.
    pub fn valuation(&self) -> Result<Option<i64>> {
        match &self.repr {
            Repr::Zero => Ok(None),
            Repr::Small(_) => Err(MathError::PrecisionExhausted),
            Repr::Unit { val, .. } => Ok(Some(*val)),
        }
    }

    /// Exact valuation, or the known lower bound after total cancellation.
    pub fn valuation_bound(&self) -> i64 {
        match &self.repr {
            Repr::Zero => i64::MAX,
            Repr::Small(a) => *a,
            Repr::Unit { val, .. } => *val,
        }
    }

    /// Number of known unit digits (0 for zero values).
    pub fn precision(&self) -> u32 {
        match &self.repr {
            Repr::Unit { prec, .. } => *prec,
            _ => 0,
        }
    }

    pub fn unit_digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Unit { unit, prec, .. } => {
                let pb = BigUint::from(self.p);
                let mut u = unit.clone();
                (0..*prec)
                    .map(|_| {
                        let d = (&u % &pb).to_u64().unwrap();
                        u /= &pb;
                        d
                    })
                    .collect()
            }
            _ => Vec::new(),
        }
    }

    /// Reduction Z_p -> F_p.
    pub fn reduce_zp(&self) -> Result<Fq> {
        let ctx = PrimePower::prime(self.p)?;
        match &self.repr {
            Repr::Zero => Ok(Fq::new(&ctx, 0)),
            Repr::Small(a) if *a >= 1 => Ok(Fq::new(&ctx, 0)),
            Repr::Small(_) => Err(MathError::PrecisionExhausted),
            Repr::Unit { val, .. } if *val < 0 => Err(MathError::NotPAdicInteger),
            Repr::Unit { val, .. } if *val > 0 => Ok(Fq::new(&ctx, 0)),
            Repr::Unit { unit, .. } => {
                let d = (unit % BigUint::from(self.p)).to_i64().unwrap();
                Ok(Fq::new(&ctx, d))
            }
        }
    }

    /// Reduction Q_p -> PF_p (negative valuation goes to infinity).
    pub fn reduce_qp(&self) -> Result<ProjValue<Fq>> {
        match &self.repr {
            Repr::Unit { val, .. } if *val < 0 => Ok(ProjValue::Infinity),
            _ => self.reduce_zp().map(ProjValue::Finite),
        }
    }

    /// Same value carried at a different working precision.
    pub fn with_cap(&self, cap: u32) -> Self {
        PAdic {
            cap,
            ..self.clone()
        }
    }

    fn make(&self, repr: Repr) -> Self {
        PAdic {
            p: self.p,
            cap: self.cap,
            repr,
        }
    }

    fn abs_prec(&self) -> i64 {
        match &self.repr {
            Repr::Zero => i64::MAX,
            Repr::Small(a) => *a,
            Repr::Unit { val, prec, .. } => val + *prec as i64,
        }
    }

    fn add_impl(&self, o: &Self) -> Self {
        match (&self.repr, &o.repr) {
            (Repr::Zero, _) => o.with_cap(self.cap),
            (_, Repr::Zero) => self.clone(),
            (Repr::Small(a), Repr::Small(b)) => self.make(Repr::Small(*a.min(b))),
            (Repr::Small(a), Repr::Unit { .. }) => o.absorb(*a).with_cap(self.cap),
            (Repr::Unit { .. }, Repr::Small(b)) => self.absorb(*b),
            (
                Repr::Unit {
                    val: va, unit: ua, ..
                },
                Repr::Unit {
                    val: vb, unit: ub, ..
                },
            ) => {
                let n = self.abs_prec().min(o.abs_prec());
                let vmin = *va.min(vb);
                let width = (n - vmin) as u32;
                let pk = ppow(self.p, width);
                let term = |u: &BigUint, v: i64| -> BigUint {
                    let shift = v - vmin;
                    if shift >= width as i64 {
                        BigUint::zero()
                    } else {
                        u * ppow(self.p, shift as u32) % &pk
                    }
                };
                let s = (term(ua, *va) + term(ub, *vb)) % &pk;
                self.normalize(vmin, s, width)
            }
        }
    }

    /// Adds an unknown element of p^abs Z_p to a unit value.
    fn absorb(&self, abs: i64) -> Self {
        match &self.repr {
            Repr::Unit { val, unit, prec } => {
                if *val >= abs {
                    self.make(Repr::Small(abs))
                } else {
                    let k = (*prec as i64).min(abs - val) as u32;
                    self.make(Repr::Unit {
                        val: *val,
                        unit: unit % ppow(self.p, k),
                        prec: k,
                    })
                }
            }
            _ => unreachable!(),
        }
    }

    /// Builds p^v0 * s where s is known modulo p^width.
    fn normalize(&self, v0: i64, mut s: BigUint, width: u32) -> Self {
        if s.is_zero() {
            return self.make(Repr::Small(v0 + width as i64));
        }
        let pb = BigUint::from(self.p);
        let mut t = 0u32;
        while (&s % &pb).is_zero() {
            s /= &pb;
            t += 1;
        }
        self.make(Repr::Unit {
            val: v0 + t as i64,
            unit: s,
            prec: width - t,
        })
    }
}

impl PartialEq for PAdic {
    fn eq(&self, o: &Self) -> bool {
        if self.p != o.p {
            return false;
        }
        match (&self.repr, &o.repr) {
            (Repr::Zero, Repr::Zero) => true,
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (
                Repr::Unit {
                    val: va,
                    unit: ua,
                    prec: pa,
                },
                Repr::Unit {
                    val: vb,
                    unit: ub,
                    prec: pb,
                },
            ) => {
                let m = ppow(self.p, *pa.min(pb));
                va == vb && ua % &m == ub % &m
            }
            _ => false,
        }
    }
}

impl Field for PAdic {
    fn zero_like(&self) -> Self {
        self.make(Repr::Zero)
    }
    fn one_like(&self) -> Self {
        Self::from_int(1, self.p, self.cap)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_int(n, self.p, self.cap)
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.add_impl(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add_impl(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        match (&self.repr, &o.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => self.make(Repr::Zero),
            (Repr::Small(a), Repr::Small(b)) => self.make(Repr::Small(a + b)),
            (Repr::Small(a), Repr::Unit { val, .. }) | (Repr::Unit { val, .. }, Repr::Small(a)) => {
                self.make(Repr::Small(a + val))
            }
            (
                Repr::Unit {
                    val: va,
                    unit: ua,
                    prec: pa,
                },
                Repr::Unit {
                    val: vb,
                    unit: ub,
                    prec: pb,
                },
            ) => {
                let k = *pa.min(pb);
                self.make(Repr::Unit {
                    val: va + vb,
                    unit: ua * ub % ppow(self.p, k),
                    prec: k,
                })
            }
        }
    }
    fn neg(&self) -> Self {
        match &self.repr {
            Repr::Unit { val, unit, prec } => {
                let pk = ppow(self.p, *prec);
                self.make(Repr::Unit {
                    val: *val,
                    unit: (&pk - unit) % &pk,
                    prec: *prec,
                })
            }
            _ => self.clone(),
        }
    }
    fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Zero => Err(MathError::DivisionByZero),
            Repr::Small(_) => Err(MathError::PrecisionExhausted),
            Repr::Unit { val, unit, prec } => Ok(self.make(Repr::Unit {
                val: -val,
                unit: inv_mod(unit, &ppow(self.p, *prec)),
                prec: *prec,
            })),
        }
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Small(a) => write!(f, "O({}^{})", self.p, a),
            Repr::Unit { val, prec, .. } => {
                let d: Vec<String> = self
                    .unit_digits()
                    .iter()
                    .enumerate()
                    .map(|(i, d)| match i {
                        0 => d.to_string(),
                        1 => format!("{d}·p"),
                        _ => format!("{d}·p^{i}"),
                    })
                    .collect();
                write!(f, "{}^{} * ({}) [{} digits]", self.p, val, d.join(" + "), prec)
            }
        }
    }
}

pub use crate::algebra::ArithOp;

/// Checked arithmetic: reports total cancellation instead of carrying it.
pub fn padic_arith(a: &PAdic, b: &PAdic, op: ArithOp) -> Result<PAdic> {
    if a.p != b.p {
        return Err(MathError::FieldMismatch);
    }
    let r = match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    };
    match r.repr {
        Repr::Small(_) => Err(MathError::PrecisionExhausted),
        _ => Ok(r),
    }
}

/// Reduction of a rational number to PF_p: p^s g/f with s > 0 -> 0, s < 0 -> ∞.
pub fn reduce_rational(q: &Rational, ctx: &std::sync::Arc<PrimePower>) -> ProjValue<Fq> {
    let p = ctx.p();
    if Zero::is_zero(q) {
        return ProjValue::Finite(Fq::new(ctx, 0));
    }
    let (vn, n) = int_valuation(q.numer(), p);
    let (vd, d) = int_valuation(q.denom(), p);
    match (vn - vd).signum() {
        1 => ProjValue::Finite(Fq::new(ctx, 0)),
        -1 => ProjValue::Infinity,
        _ => {
            let n = Fq::from_bigint(ctx, &n);
            let d = Fq::from_bigint(ctx, &d);
            ProjValue::Finite(n.div(&d).expect("unit denominator"))
        }
    }
}

/// v_p of a nonzero rational.
pub fn rational_valuation(q: &Rational, p: u64) -> Option<i64> {
    if Zero::is_zero(q) {
        return None;
    }
    Some(int_valuation(q.numer(), p).0 - int_valuation(&q.denom().abs(), p).0)
}
