//! F_p, F_{p^m} and the projective line over them.

mod proj;

pub use proj::{proj_eval, EvalOutcome, ProjExpr, ProjValue};

use crate::algebra::{Field, Poly};
use crate::error::{MathError, Result};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field F_r with r = p^m. For m > 1 elements are polynomials in t of
/// degree < m modulo a fixed irreducible `modulus`.
#[derive(Debug, PartialEq, Eq)]
pub struct PrimePower {
    p: u64,
    m: u32,
    r: u64,
    /// monic, lowest degree first, length m + 1 (empty when m = 1)
    modulus: Vec<u64>,
}

impl PrimePower {
    pub fn new(p: u64, m: u32) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(MathError::NotPrime(p));
        }
        if m == 0 {
            return Err(MathError::InvalidArgument("m must be positive".into()));
        }
        let r = p
            .checked_pow(m)
            .filter(|&r| r < (1 << 31))
            .ok_or_else(|| MathError::InvalidArgument(format!("{p}^{m} is too large")))?;
        let modulus = if m == 1 {
            Vec::new()
        } else {
            irreducible_raw(p, m as usize)
        };
        Ok(Arc::new(PrimePower { p, m, r, modulus }))
    }

    pub fn prime(p: u64) -> Result<Arc<Self>> {
        Self::new(p, 1)
    }

    /// Factors `r` as a prime power.
    pub fn from_order(r: u64) -> Result<Arc<Self>> {
        let p = (2..=r)
            .find(|d| r.is_multiple_of(*d))
            .ok_or_else(|| MathError::InvalidArgument(format!("{r} is not a prime power")))?;
        let mut m = 0;
        let mut k = r;
        while k.is_multiple_of(p) {
            k /= p;
            m += 1;
        }
        if k != 1 {
            return Err(MathError::InvalidArgument(format!("{r} is not a prime power")));
        }
        Self::new(p, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn digits(&self, mut v: u64) -> Vec<u64> {
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        if self.m == 1 {
            return a * b % p;
        }
        let m = self.m as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                prod[k - m + j] = (prod[k - m + j] + (p - c) * self.modulus[j]) % p;
            }
            prod[k] = 0;
        }
        self.pack(&prod[..m])
    }

    fn add_raw(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    fn neg_raw(&self, a: u64) -> u64 {
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u64> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.pack(&d)
    }
}

/// Element of F_{p^m}. The value is packed: coefficient c_i of t^i is the
/// i-th base-p digit.
#[derive(Clone)]
pub struct Fq {
    ctx: Arc<PrimePower>,
    v: u64,
}

impl Fq {
    /// Integer embedding (reduced mod p).
    pub fn new(ctx: &Arc<PrimePower>, n: i64) -> Self {
        let v = n.rem_euclid(ctx.p as i64) as u64;
        Fq {
            ctx: ctx.clone(),
            v,
        }
    }

    /// Coefficient list, lowest degree first; length must be m.
    pub fn from_coeffs(ctx: &Arc<PrimePower>, c: &[i64]) -> Result<Self> {
        if c.len() != ctx.m as usize {
            return Err(MathError::BadCoefficients {
                expected: ctx.m as usize,
                got: c.len(),
            });
        }
        let d: Vec<u64> = c.iter().map(|x| x.rem_euclid(ctx.p as i64) as u64).collect();
        Ok(Fq {
            ctx: ctx.clone(),
            v: ctx.pack(&d),
        })
    }

    /// The element with packed index `i` in `0..r`.
    pub fn from_index(ctx: &Arc<PrimePower>, i: u64) -> Self {
        Fq {
            ctx: ctx.clone(),
            v: i % ctx.r,
        }
    }

    pub fn from_bigint(ctx: &Arc<PrimePower>, n: &num_bigint::BigInt) -> Self {
        use num_traits::ToPrimitive;
        let p = num_bigint::BigInt::from(ctx.p);
        let r = ((n % &p) + &p) % &p;
        Fq::new(ctx, r.to_i64().expect("residue fits"))
    }

    /// All r elements in index order.
    pub fn all(ctx: &Arc<PrimePower>) -> impl Iterator<Item = Fq> + '_ {
        (0..ctx.r).map(move |i| Fq::from_index(ctx, i))
    }

    pub fn ctx(&self) -> &Arc<PrimePower> {
        &self.ctx
    }

    pub fn index(&self) -> u64 {
        self.v
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.ctx.digits(self.v)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self) -> Option<u64> {
        if self.v == 0 {
            return None;
        }
        let one = self.one_like();
        let mut x = self.clone();
        let mut k = 1;
        while x != one {
            x = x.mul(self);
            k += 1;
        }
        Some(k)
    }
}

impl PartialEq for Fq {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v && (Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx)
    }
}

impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.ctx.r.hash(h);
        self.v.hash(h);
    }
}

impl PartialOrd for Fq {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Fq {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.v.cmp(&o.v)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.m == 1 {
            write!(f, "{}", self.v)
        } else {
            let c: Vec<String> = self.coeffs().iter().map(u64::to_string).collect();
            write!(f, "[{}]", c.join(","))
        }
    }
}

impl Field for Fq {
    fn zero_like(&self) -> Self {
        Fq::from_index(&self.ctx, 0)
    }
    fn one_like(&self) -> Self {
        Fq::from_index(&self.ctx, 1)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fq::new(&self.ctx, n)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fq {
            ctx: self.ctx.clone(),
            v: self.ctx.add_raw(self.v, o.v),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Fq {
            ctx: self.ctx.clone(),
            v: self.ctx.add_raw(self.v, self.ctx.neg_raw(o.v)),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Fq {
            ctx: self.ctx.clone(),
            v: self.ctx.mul_raw(self.v, o.v),
        }
    }
    fn neg(&self) -> Self {
        Fq {
            ctx: self.ctx.clone(),
            v: self.ctx.neg_raw(self.v),
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.v == 0 {
            return Err(MathError::DivisionByZero);
        }
        // a^(r-2)
        let mut e = self.ctx.r - 2;
        let mut base = self.v;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.ctx.mul_raw(acc, base);
            }
            base = self.ctx.mul_raw(base, base);
            e >>= 1;
        }
        Ok(Fq {
            ctx: self.ctx.clone(),
            v: acc,
        })
    }
}

fn raw_rem(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    // d monic
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    while r.len() > dd {
        let c = *r.last().unwrap();
        let k = r.len() - 1 - dd;
        if c != 0 {
            for (j, &b) in d.iter().enumerate() {
                r[k + j] = (r[k + j] + (p - c) * b % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_from_index(mut idx: u64, deg: usize, p: u64) -> Vec<u64> {
    // most significant digit is the constant term
    let mut c = vec![0; deg + 1];
    for k in (0..deg).rev() {
        c[k] = idx % p;
        idx /= p;
    }
    c[deg] = 1;
    c
}

fn irreducible_raw(p: u64, m: usize) -> Vec<u64> {
    for idx in 0..p.pow(m as u32) {
        let f = monic_from_index(idx, m, p);
        let reducible = (1..=m / 2).any(|d| {
            (0..p.pow(d as u32)).any(|j| {
                let g = monic_from_index(j, d, p);
                raw_rem(&f, &g, p).iter().all(|&c| c == 0)
            })
        });
        if !reducible {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// Lexicographically smallest (constant term first) monic irreducible
/// polynomial of degree m over F_p.
pub fn find_irreducible(p: u64, m: u32) -> Result<Poly<Fq>> {
    if m < 2 {
        return Err(MathError::InvalidArgument("degree must be at least 2".into()));
    }
    let base = PrimePower::prime(p)?;
    let f = irreducible_raw(p, m as usize);
    let zero = Fq::new(&base, 0);
    Ok(Poly::new(
        f.iter().map(|&c| Fq::new(&base, c as i64)).collect(),
        &zero,
    ))
}
