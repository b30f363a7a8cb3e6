//! Truncated Laurent series over a prime field, used to follow curve germs
//! through the reduced map without the degree growth of exact rational
//! functions.

use crate::finite_field::{Fq, ProjValue};
use crate::maps::Arith;
use std::sync::Arc;

use crate::finite_field::PrimePower;

pub(crate) const SERIES_PRECISION: usize = 40;

/// ε^val · (c0 + c1 ε + …), known modulo ε^(val + coeffs.len()).
/// With no coefficients the series is only known to be O(ε^val).
#[derive(Clone, Debug)]
pub(crate) struct Series {
    p: u64,
    val: i64,
    coeffs: Vec<u64>,
}

/// `None` once a division by an unresolved series has happened.
#[derive(Clone, Debug)]
pub(crate) struct SeriesArith(pub Option<Series>);

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut nt, mut r, mut nr) = (0i128, 1i128, p as i128, a as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    t.rem_euclid(p as i128) as u64
}

impl Series {
    pub fn from_poly(p: u64, c: &[u64]) -> Self {
        let mut coeffs = c.to_vec();
        coeffs.resize(SERIES_PRECISION, 0);
        Series { p, val: 0, coeffs }.normalized()
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_poly(p, &[c % p])
    }

    fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().position(|&c| c != 0);
        match lead {
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
            None => {
                self.val += self.coeffs.len() as i64;
                self.coeffs.clear();
            }
        }
        self
    }

    fn abs_prec(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    fn add(&self, o: &Series) -> Series {
        let prec = self.abs_prec().min(o.abs_prec());
        let start = self.val.min(o.val).min(prec);
        let len = (prec - start) as usize;
        let mut c = vec![0u64; len];
        for s in [self, o] {
            for (i, &v) in s.coeffs.iter().enumerate() {
                let k = s.val + i as i64 - start;
                if (k as usize) < len {
                    c[k as usize] = (c[k as usize] + v) % self.p;
                }
            }
        }
        Series { p: self.p, val: start, coeffs: c }.normalized()
    }

    fn neg(&self) -> Series {
        let p = self.p;
        Series {
            p,
            val: self.val,
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }

    fn mul(&self, o: &Series) -> Series {
        let val = self.val + o.val;
        let len = self.coeffs.len().min(o.coeffs.len());
        let mut c = vec![0u64; len];
        for (i, &a) in self.coeffs.iter().take(len).enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().take(len - i).enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Series { p: self.p, val, coeffs: c }
    }

    fn inv(&self) -> Option<Series> {
        let a = &self.coeffs;
        let lead = *a.first()?;
        let p = self.p;
        let li = inv_mod(lead, p);
        let mut b = vec![0u64; a.len()];
        b[0] = li;
        for k in 1..a.len() {
            let mut s = 0u64;
            for j in 1..=k {
                s = (s + mulmod(a[j], b[k - j], p)) % p;
            }
            b[k] = mulmod((p - s) % p, li, p);
        }
        Some(Series { p, val: -self.val, coeffs: b })
    }

    /// Value at ε = 0, if the known terms decide it.
    pub fn limit(&self, ctx: &Arc<PrimePower>) -> Option<ProjValue<Fq>> {
        if self.val > 0 {
            Some(ProjValue::Finite(Fq::from_index(ctx, 0)))
        } else if self.coeffs.is_empty() {
            None
        } else if self.val < 0 {
            Some(ProjValue::Infinity)
        } else {
            Some(ProjValue::Finite(Fq::from_index(ctx, self.coeffs[0])))
        }
    }
}

impl SeriesArith {
    fn zip(&self, o: &Self, f: impl FnOnce(&Series, &Series) -> Option<Series>) -> Self {
        match (&self.0, &o.0) {
            (Some(a), Some(b)) => SeriesArith(f(a, b)),
            _ => SeriesArith(None),
        }
    }
}

impl Arith for SeriesArith {
    fn plus(&self, o: &Self) -> Self {
        self.zip(o, |a, b| Some(a.add(b)))
    }
    fn minus(&self, o: &Self) -> Self {
        self.zip(o, |a, b| Some(a.add(&b.neg())))
    }
    fn times(&self, o: &Self) -> Self {
        self.zip(o, |a, b| Some(a.mul(b)))
    }
    fn over(&self, o: &Self) -> Self {
        self.zip(o, |a, b| Some(a.mul(&b.inv()?)))
    }
    fn int(&self, n: i64) -> Self {
        SeriesArith(
            self.0
                .as_ref()
                .map(|s| Series::constant(s.p, n.rem_euclid(s.p as i64) as u64)),
        )
    }
}
