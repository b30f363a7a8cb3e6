use crate::algebra::{Field, Matrix};
use crate::error::{MathError, Result};

/// σ_n^t = det(δ_ij + γ_i/(l_i + l_j − 1) ((1−l_i)/l_i)^t ((l_i+δ)/(1+δ−l_i))^n)
#[derive(Clone, Debug, PartialEq)]
pub struct SolitonParams<F> {
    pub gammas: Vec<F>,
    pub ls: Vec<F>,
}

impl<F: Field> SolitonParams<F> {
    pub fn new(gammas: Vec<F>, ls: Vec<F>) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != ls.len() {
            return Err(MathError::InvalidArgument(
                "need equally many γ and l values".into(),
            ));
        }
        for i in 0..ls.len() {
            for j in 0..i {
                if ls[i] == ls[j] {
                    return Err(MathError::InvalidArgument("l values must be distinct".into()));
                }
            }
        }
        Ok(SolitonParams { gammas, ls })
    }

    pub fn len(&self) -> usize {
        self.ls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ls.is_empty()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SolitonParams<G> {
        SolitonParams {
            gammas: self.gammas.iter().map(&f).collect(),
            ls: self.ls.iter().map(&f).collect(),
        }
    }
}

fn ratio<F: Field>(a: &F, b: &F) -> Result<F> {
    if b.is_zero() {
        Err(MathError::SingularEntry)
    } else {
        a.div(b)
    }
}

pub fn soliton_sigma<F: Field>(params: &SolitonParams<F>, n: i64, t: i64, delta: &F) -> Result<F> {
    let one = delta.one_like();
    let size = params.len();
    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        let l = &params.ls[i];
        let a = ratio(&one.sub(l), l)?;
        let b = ratio(&l.add(delta), &one.add(delta).sub(l))?;
        let at = a.pow(t).map_err(|_| MathError::SingularEntry)?;
        let bn = b.pow(n).map_err(|_| MathError::SingularEntry)?;
        rows.push(params.gammas[i].mul(&at).mul(&bn));
    }
    let m = Matrix::from_fn(size, size, |i, j| {
        let c = ratio(&rows[i], &params.ls[i].add(&params.ls[j]).sub(&one))?;
        Ok(if i == j { c.add(&one) } else { c })
    })?;
    m.det()
}

/// x_n^t = σ_n^t σ_{n+1}^{t−1} / (σ_{n+1}^t σ_n^{t−1})
pub fn soliton_x<F: Field>(params: &SolitonParams<F>, n: i64, t: i64, delta: &F) -> Result<F> {
    let s = |n, t| soliton_sigma(params, n, t, delta);
    let den = s(n + 1, t)?.mul(&s(n, t - 1)?);
    if den.is_zero() {
        return Err(MathError::ZeroSigma);
    }
    s(n, t)?.mul(&s(n + 1, t - 1)?).div(&den)
}
