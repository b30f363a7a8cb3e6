use super::Field;
use crate::error::{MathError, Result};
use std::fmt;

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> Poly<F> {
    pub fn new(coeffs: Vec<F>, like: &F) -> Self {
        let mut p = Poly {
            coeffs,
            zero: like.zero_like(),
        };
        p.trim();
        p
    }

    pub fn zero(like: &F) -> Self {
        Self::new(Vec::new(), like)
    }

    pub fn constant(c: F) -> Self {
        let like = c.clone();
        Self::new(vec![c], &like)
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let like = c.clone();
        let mut v = vec![like.zero_like(); k];
        v.push(c);
        Self::new(v, &like)
    }

    /// `t - a`
    pub fn linear_root(a: &F) -> Self {
        Self::new(vec![a.neg(), a.one_like()], a)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn like(&self) -> &F {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        Self::new(v, &self.zero)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect();
        Self::new(v, &self.zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(F::neg).collect(), &self.zero)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v, &self.zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.zero)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(MathError::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(&self.zero), self.clone()));
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&dl);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(b));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q, &self.zero), Self::new(r, &self.zero)))
    }

    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => Ok(self.scale(&l.inv()?)),
        }
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn poly_gcd<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<Poly<F>> {
    if f.is_zero() && g.is_zero() {
        return Err(MathError::BothZero);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    a.monic()
}
