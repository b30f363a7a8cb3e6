use crate::algebra::{rat_int, Matrix, Rational};
use crate::error::{MathError, Result};
use crate::finite_field::{EvalOutcome, Fq, PrimePower, ProjValue};
use crate::kdv::period_detect;
use crate::padic::reduce_rational;
use num_traits::Zero;
use std::sync::Arc;

/// Generalised binomial C(m, j) = m(m−1)…(m−j+1)/j! for any integer m.
fn binom(m: i64, j: i64) -> Rational {
    if j < 0 {
        return rat_int(0);
    }
    let mut acc = rat_int(1);
    for i in 0..j {
        acc = acc * rat_int(m - i) / rat_int(i + 1);
    }
    acc
}

/// L_k^{(ν)}(λ) = Σ_{r=0}^k (−1)^r C(k+ν, k−r) λ^r / r!, zero for k < 0.
pub fn laguerre(k: i64, nu: i64, lambda: &Rational) -> Rational {
    let mut acc = rat_int(0);
    let mut lam_r = rat_int(1);
    let mut fact = rat_int(1);
    for r in 0..=k {
        if r > 0 {
            lam_r = &lam_r * lambda;
            fact *= rat_int(r);
        }
        let term = binom(k + nu, k - r) * &lam_r / &fact;
        acc = if r % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn tau_matrix(big_n: usize, n: i64, lambda: &Rational) -> Result<Matrix<Rational>> {
    let nn = big_n as i64;
    Matrix::from_fn(big_n, big_n, |i, j| {
        let (i, j) = (i as i64 + 1, j as i64 + 1);
        Ok(laguerre(nn + 1 - 2 * i + j, n, lambda))
    })
}

/// τ_N^n = det(L_{N+1−2i+j}^{(n)}(λ)), 1 ≤ i, j ≤ N.
pub fn tau(big_n: usize, n: i64, lambda: &Rational) -> Result<Rational> {
    if big_n == 0 {
        return Err(MathError::InvalidArgument("N must be positive".into()));
    }
    tau_matrix(big_n, n, lambda)?.det()
}

/// Cofactor-expansion evaluation of the same determinant.
pub fn tau_cofactor(big_n: usize, n: i64, lambda: &Rational) -> Result<Rational> {
    tau_matrix(big_n, n, lambda)?.det_cofactor()
}

/// u_n = τ_{N+1}^{n+1} τ_N^{n−1} / (τ_{N+1}^n τ_N^n) − 1
pub fn dp2_rational_solution(big_n: usize, lambda: &Rational, n: i64) -> Result<Rational> {
    let d1 = tau(big_n + 1, n, lambda)?;
    let d2 = tau(big_n, n, lambda)?;
    if Zero::is_zero(&d1) || Zero::is_zero(&d2) {
        return Err(MathError::ZeroTau(n));
    }
    let num = tau(big_n + 1, n + 1, lambda)? * tau(big_n, n - 1, lambda)?;
    Ok(num / (d1 * d2) - rat_int(1))
}

/// Tau functions for fixed N and λ, with the dP_II parameters they solve.
#[derive(Clone, Debug)]
pub struct LaguerreTau {
    pub big_n: usize,
    pub lambda: Rational,
}

impl LaguerreTau {
    pub fn new(big_n: usize, lambda: Rational) -> Result<Self> {
        if big_n == 0 || Zero::is_zero(&lambda) {
            return Err(MathError::InvalidArgument("need N ≥ 1 and λ ≠ 0".into()));
        }
        Ok(LaguerreTau { big_n, lambda })
    }

    pub fn tau(&self, big_n: usize, n: i64) -> Result<Rational> {
        tau(big_n, n, &self.lambda)
    }

    pub fn u(&self, n: i64) -> Result<Rational> {
        dp2_rational_solution(self.big_n, &self.lambda, n)
    }

    /// (a, δ, z₀) = (−2(N+1)/λ, 2/λ, 2/λ)
    pub fn params(&self) -> (Rational, Rational, Rational) {
        let two = rat_int(2) / &self.lambda;
        (
            -rat_int(2 * (self.big_n as i64 + 1)) / &self.lambda,
            two.clone(),
            two,
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TauCond {
    /// reduction of τ_{N+1}^{−N−1} τ_N^{−N−3}
    pub first: EvalOutcome<Fq>,
    /// reduction of τ_{N+1}^{N+1} τ_N^{N−1} / (τ_{N+1}^N τ_N^N)
    pub second: EvalOutcome<Fq>,
    pub holds: bool,
    /// every τ entering the two quantities, reduced: (N', n, value)
    pub taus: Vec<(usize, i64, ProjValue<Fq>)>,
}

fn reduce_product(
    factors: &[(usize, i64, bool)],
    lambda: &Rational,
    ctx: &Arc<PrimePower>,
    taus: &mut Vec<(usize, i64, ProjValue<Fq>)>,
) -> Result<EvalOutcome<Fq>> {
    let mut exact = rat_int(1);
    let mut proj = EvalOutcome::finite(Fq::new(ctx, 1));
    let mut any_zero = false;
    for &(nn, n, inverse) in factors {
        let t = tau(nn, n, lambda)?;
        let r = reduce_rational(&t, ctx);
        taus.push((nn, n, r.clone()));
        let ro = EvalOutcome::Determinate(r);
        if Zero::is_zero(&t) {
            any_zero = true;
        } else if inverse {
            exact /= &t;
        } else {
            exact *= &t;
        }
        proj = if inverse { proj.div(&ro) } else { proj.mul(&ro) };
    }
    Ok(if any_zero {
        proj
    } else {
        EvalOutcome::Determinate(reduce_rational(&exact, ctx))
    })
}

/// The two reduced quantities of the tau condition; `holds` when the first
/// is not 0 and the second is not 2.
pub fn taucond_check(big_n: usize, lambda: &Rational, p: u64) -> Result<TauCond> {
    let ctx = PrimePower::prime(p)?;
    let nn = big_n as i64;
    let mut taus = Vec::new();
    let first = reduce_product(
        &[(big_n + 1, -nn - 1, false), (big_n, -nn - 3, false)],
        lambda,
        &ctx,
        &mut taus,
    )?;
    let second = reduce_product(
        &[
            (big_n + 1, nn + 1, false),
            (big_n, nn - 1, false),
            (big_n + 1, nn, true),
            (big_n, nn, true),
        ],
        lambda,
        &ctx,
        &mut taus,
    )?;
    let zero = EvalOutcome::finite(Fq::new(&ctx, 0));
    let two = EvalOutcome::finite(Fq::new(&ctx, 2));
    let holds = first.is_determinate() && first != zero && second != two;
    Ok(TauCond {
        first,
        second,
        holds,
        taus,
    })
}

#[derive(Clone, Debug)]
pub struct Dp2TableRow {
    pub p: u64,
    pub cond: TauCond,
    /// ũ_1, ũ_2, …
    pub sequence: Vec<ProjValue<Fq>>,
    pub period: Option<usize>,
}

/// One row of the reduced rational-solution table.
pub fn dp2_table_row(big_n: usize, lambda: &Rational, p: u64, steps: usize) -> Result<Dp2TableRow> {
    let ctx = PrimePower::prime(p)?;
    if p < 3 {
        return Err(MathError::InvalidArgument("p must be an odd prime".into()));
    }
    let cond = taucond_check(big_n, lambda, p)?;
    let sequence = (1..=steps as i64)
        .map(|n| dp2_rational_solution(big_n, lambda, n).map(|u| reduce_rational(&u, &ctx)))
        .collect::<Result<Vec<_>>>()?;
    let period = period_detect(&sequence);
    Ok(Dp2TableRow {
        p,
        cond,
        sequence,
        period,
    })
}

