use crate::algebra::{rat_int, Field, Matrix, Rational};
use crate::error::{MathError, Result};
use num_traits::Zero;
use std::collections::HashMap;

/// P_n(x;q): tridiagonal determinant with diagonal q^i x (i = 1..n) and
/// off-diagonal −1. P_0 = 1, P_{−1} = 0.
#[allow(non_snake_case)]
pub fn qairy_P(n: i64, x: &Rational, q: &Rational) -> Result<Rational> {
    match n {
        -1 => return Ok(rat_int(0)),
        0 => return Ok(rat_int(1)),
        n if n < -1 => {
            return Err(MathError::InvalidArgument("P_n needs n ≥ −1".into()));
        }
        _ => {}
    }
    let n = n as usize;
    let m = Matrix::from_fn(n, n, |i, j| {
        Ok(if i == j {
            Field::pow(q, i as i64 + 1)? * x
        } else if i.abs_diff(j) == 1 {
            rat_int(-1)
        } else {
            rat_int(0)
        })
    })?;
    m.det()
}

/// P_n by the three-term recurrence P_{k+1} = q^{k+1} x P_k − P_{k−1}.
fn p_rec(n: i64, x: &Rational, q: &Rational) -> Rational {
    if n < 0 {
        return rat_int(0);
    }
    let (mut prev, mut cur) = (rat_int(0), rat_int(1));
    let mut qk = rat_int(1);
    for _ in 0..n {
        qk *= q;
        let next = &qk * x * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// a_{n;k}(q) = Σ q^{n(n+1)/2 − Σ(2j_r+1)} over 1 ≤ j₁ ≪ … ≪ j_k ≤ n−1,
/// where i ≪ j means i < j − 1. Enumerates the index tuples directly.
pub fn qairy_coeff(n: i64, k: usize, q: &Rational) -> Result<Rational> {
    fn walk(start: i64, last: i64, left: usize, c: i64, out: &mut Vec<i64>) {
        if left == 0 {
            out.push(c);
            return;
        }
        for j in start..=last {
            walk(j + 2, last, left - 1, c + 2 * j + 1, out);
        }
    }
    let mut cs = Vec::new();
    walk(1, n - 1, k, 0, &mut cs);
    let top = n * (n + 1) / 2;
    cs.iter()
        .try_fold(rat_int(0), |acc, c| Ok(acc + Field::pow(q, top - c)?))
}

/// Σ_k (−1)^k a_{n;k}(q) x^{n−2k}
#[allow(non_snake_case)]
pub fn qairy_P_expanded(n: i64, x: &Rational, q: &Rational) -> Result<Rational> {
    let mut acc = rat_int(0);
    for k in 0..=(n.max(0) / 2) {
        let t = qairy_coeff(n, k as usize, q)? * Field::pow(x, n - 2 * k)?;
        acc = if k % 2 == 0 { acc + t } else { acc - t };
    }
    Ok(acc)
}

/// w(q^{n+1} τ₀) = c₁ P_n(τ₀;q) + c₀ P_{n−1}(qτ₀;q), continued backwards for
/// n < 0 by the q-Airy recurrence.
pub fn qairy_w(n: i64, c0: &Rational, c1: &Rational, tau0: &Rational, q: &Rational) -> Result<Rational> {
    let s = QAirySolution::new(0, q.clone(), tau0.clone(), c0.clone(), c1.clone())?;
    s.w(n + 1)
}

/// A q-Airy solution w and the qP_II solution z^{(N)} built from it, with
/// a = q^{2N+1}. Arguments k index the lattice τ = q^k τ₀.
#[derive(Clone, Debug)]
pub struct QAirySolution {
    pub big_n: i64,
    pub q: Rational,
    pub tau0: Rational,
    pub c0: Rational,
    pub c1: Rational,
    w_cache: HashMap<i64, Rational>,
}

impl QAirySolution {
    pub fn new(big_n: i64, q: Rational, tau0: Rational, c0: Rational, c1: Rational) -> Result<Self> {
        if Zero::is_zero(&q) || Zero::is_zero(&tau0) {
            return Err(MathError::InvalidArgument("q and τ₀ must be nonzero".into()));
        }
        Ok(QAirySolution {
            big_n,
            q,
            tau0,
            c0,
            c1,
            w_cache: HashMap::new(),
        })
    }

    pub fn a(&self) -> Result<Rational> {
        Field::pow(&self.q, 2 * self.big_n + 1)
    }

    pub fn tau(&self, k: i64) -> Result<Rational> {
        Ok(Field::pow(&self.q, k)? * &self.tau0)
    }

    /// w(q^k τ₀)
    pub fn w(&self, k: i64) -> Result<Rational> {
        if let Some(v) = self.w_cache.get(&k) {
            return Ok(v.clone());
        }
        if k >= 1 {
            let qt = &self.q * &self.tau0;
            return Ok(&self.c1 * p_rec(k - 1, &self.tau0, &self.q)
                + &self.c0 * p_rec(k - 2, &qt, &self.q));
        }
        // w(q^{k}τ₀) = q^{k+1}τ₀ w(q^{k+1}τ₀) − w(q^{k+2}τ₀)
        let (mut hi, mut lo) = (self.w(2)?, self.w(1)?);
        let mut j = 1;
        while j > k {
            let next = self.tau(j)? * &lo - &hi;
            hi = lo;
            lo = next;
            j -= 1;
        }
        Ok(lo)
    }

    /// Fills the cache for k in lo..=hi so repeated determinants are cheap.
    pub fn warm(&mut self, lo: i64, hi: i64) -> Result<()> {
        for k in lo..=hi {
            let v = self.w(k)?;
            self.w_cache.insert(k, v);
        }
        Ok(())
    }

    /// g^{(N)}(q^k τ₀)
    pub fn g(&self, big_n: i64, k: i64) -> Result<Rational> {
        if big_n == 0 {
            return Ok(rat_int(1));
        }
        let size = big_n.unsigned_abs() as usize;
        let m = Matrix::from_fn(size, size, |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            if big_n > 0 {
                self.w(k - i + 2 * j - 1)
            } else {
                self.w(k + i - 2 * j)
            }
        })?;
        m.det()
    }

    /// z^{(N)}(q^k τ₀)
    pub fn z(&self, k: i64) -> Result<Rational> {
        let n = self.big_n;
        let den = self.g(n, k + 1)? * self.g(n + 1, k)?;
        if Zero::is_zero(&den) {
            return Err(MathError::ZeroDeterminant);
        }
        let qpow = Field::pow(&self.q, if n >= 0 { n } else { n + 1 })?;
        Ok(self.g(n, k)? * self.g(n + 1, k + 1)? / (qpow * den))
    }
}

/// z^{(N)}(q^k τ₀) for the given q-Airy data.
pub fn qp2_solution(big_n: i64, k: i64, sol: &QAirySolution) -> Result<Rational> {
    if sol.big_n == big_n {
        return sol.z(k);
    }
    let mut s = sol.clone();
    s.big_n = big_n;
    s.z(k)
}
