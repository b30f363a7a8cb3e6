//! The rational function field F(δ) and its reduction at a point δ₀.

use crate::algebra::{poly_gcd, Field, Poly};
use crate::error::{MathError, Result};
use crate::finite_field::ProjValue;
use std::fmt;

/// num/den in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<F>, den: Poly<F>) -> Self {
        let like = den.like().clone();
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::constant(like.one_like()),
            };
        }
        let g = poly_gcd(&num, &den).expect("den nonzero");
        let (mut n, _) = num.div_rem(&g).expect("gcd nonzero");
        let (mut d, _) = den.div_rem(&g).expect("gcd nonzero");
        let l = d.leading().expect("nonzero").inv().expect("nonzero");
        if !l.is_one() {
            n = n.scale(&l);
            d = d.scale(&l);
        }
        RatFunc { num: n, den: d }
    }

    pub fn constant(c: F) -> Self {
        let one = c.one_like();
        RatFunc {
            num: Poly::constant(c),
            den: Poly::constant(one),
        }
    }

    /// The indeterminate δ itself.
    pub fn variable(like: &F) -> Self {
        RatFunc {
            num: Poly::monomial(like.one_like(), 1),
            den: Poly::constant(like.one_like()),
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let one = p.like().one_like();
        RatFunc {
            num: p,
            den: Poly::constant(one),
        }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn like(&self) -> &F {
        self.den.like()
    }

    /// max(deg num, deg den)
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Substitutes a field element; `Infinity` at a pole.
    pub fn reduce_at(&self, d0: &F) -> ProjValue<F> {
        if self.num.is_zero() {
            return ProjValue::Finite(d0.zero_like());
        }
        let (sn, gn) = deflate(&self.num, d0);
        let (sd, gd) = deflate(&self.den, d0);
        match sn.cmp(&sd) {
            std::cmp::Ordering::Greater => ProjValue::Finite(d0.zero_like()),
            std::cmp::Ordering::Less => ProjValue::Infinity,
            std::cmp::Ordering::Equal => ProjValue::Finite(
                gn.eval(d0)
                    .div(&gd.eval(d0))
                    .expect("deflated denominator is nonzero at d0"),
            ),
        }
    }

    /// Order of vanishing at d0 (negative for poles); `None` for zero.
    pub fn order_at(&self, d0: &F) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        Some(deflate(&self.num, d0).0 as i64 - deflate(&self.den, d0).0 as i64)
    }

    /// Coefficient list display in a named variable.
    pub fn display_in(&self, var: &str) -> String
    where
        F: fmt::Display,
    {
        if self.num.is_zero() {
            return "0".into();
        }
        let c = self.num.leading().unwrap().clone();
        let n = self.num.scale(&c.inv().unwrap());
        format!(
            "{}*({})/({})",
            c,
            poly_string(&n, var),
            poly_string(&self.den, var)
        )
    }
}

fn deflate<F: Field>(p: &Poly<F>, d0: &F) -> (usize, Poly<F>) {
    let lin = Poly::linear_root(d0);
    let mut s = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.div_rem(&lin).expect("linear divisor");
        if !r.is_zero() {
            return (s, cur);
        }
        cur = q;
        s += 1;
    }
}

fn poly_string<F: Field + fmt::Display>(p: &Poly<F>, var: &str) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => c.to_string(),
            1 if c.is_one() => var.to_string(),
            1 => format!("{c}{var}"),
            _ if c.is_one() => format!("{var}^{k}"),
            _ => format!("{c}{var}^{k}"),
        })
        .collect();
    terms.join(" + ")
}

impl<F: Field + fmt::Display> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("d"))
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero_like(&self) -> Self {
        Self::constant(self.like().zero_like())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.like().one_like())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(self.like().from_i64_like(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }
}
