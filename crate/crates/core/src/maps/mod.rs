//! dP_II, Ψ_γ, qP_I, qP_II and the discrete KdV cell update, each written once
//! over the `Arith` abstraction.

mod arith;

pub use arith::{Arith, Strict};

use crate::algebra::{rat_int, Field, Rational};
use crate::error::{MathError, Result};
use crate::finite_field::{is_prime, EvalOutcome, ProjValue};

#[derive(Clone, Debug, PartialEq)]
pub struct MapState<F> {
    pub x: F,
    pub y: F,
}

impl<F> MapState<F> {
    pub fn new(x: F, y: F) -> Self {
        MapState { x, y }
    }
}

pub type ProjState<F> = MapState<EvalOutcome<F>>;

/// Shift data making the dP_II coefficients periodic with period p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicShift {
    pub p: u64,
    pub n_alpha: i64,
    pub n_beta: i64,
    pub i_alpha: u64,
    pub i_beta: u64,
}

/// α_n = (z_n + a)/2, β_n = (−z_n + a)/2, z_n = δn + z₀; with a periodic
/// shift, n is read modulo p and n_α p, n_β p are added to the numerators.
#[derive(Clone, Debug, PartialEq)]
pub struct DP2Schedule<F> {
    pub a: F,
    pub delta: F,
    pub z0: F,
    pub shift: Option<PeriodicShift>,
}

impl<F: Field> DP2Schedule<F> {
    pub fn plain(a: F, delta: F, z0: F) -> Self {
        DP2Schedule {
            a,
            delta,
            z0,
            shift: None,
        }
    }

    /// Schedule over any field from integer data, periodic in n mod p.
    pub fn periodic(a: i64, delta: i64, z0: i64, p: u64, like: &F) -> Result<Self> {
        if !is_prime(p) {
            return Err(MathError::NotPrime(p));
        }
        if p < 3 {
            return Err(MathError::InvalidArgument("p must be odd".into()));
        }
        let pi = p as i64;
        let zero_at = |sign: i64, c: i64| -> Result<(u64, i64)> {
            let i = (0..pi)
                .find(|i| (sign * i * delta + c).rem_euclid(pi) == 0)
                .ok_or(MathError::NoZeroAchievable)?;
            Ok((i as u64, -(sign * i * delta + c) / pi))
        };
        let (i_alpha, n_alpha) = zero_at(1, z0 + a)?;
        let (i_beta, n_beta) = zero_at(-1, a - z0)?;
        Ok(DP2Schedule {
            a: like.from_i64_like(a),
            delta: like.from_i64_like(delta),
            z0: like.from_i64_like(z0),
            shift: Some(PeriodicShift {
                p,
                n_alpha,
                n_beta,
                i_alpha,
                i_beta,
            }),
        })
    }

    fn index(&self, n: i64) -> (F, i64, i64) {
        match &self.shift {
            None => (self.a.from_i64_like(n), 0, 0),
            Some(s) => {
                let i = n.rem_euclid(s.p as i64);
                (self.a.from_i64_like(i), s.n_alpha * s.p as i64, s.n_beta * s.p as i64)
            }
        }
    }

    pub fn z(&self, n: i64) -> F {
        let (i, _, _) = self.index(n);
        self.delta.mul(&i).add(&self.z0)
    }

    pub fn alpha(&self, n: i64) -> Result<F> {
        let (i, sa, _) = self.index(n);
        let num = self
            .delta
            .mul(&i)
            .add(&self.z0)
            .add(&self.a)
            .add(&self.a.from_i64_like(sa));
        num.div(&self.a.from_i64_like(2))
    }

    pub fn beta(&self, n: i64) -> Result<F> {
        let (i, _, sb) = self.index(n);
        let num = self
            .a
            .sub(&self.delta.mul(&i))
            .sub(&self.z0)
            .add(&self.a.from_i64_like(sb));
        num.div(&self.a.from_i64_like(2))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> DP2Schedule<G> {
        DP2Schedule {
            a: f(&self.a),
            delta: f(&self.delta),
            z0: f(&self.z0),
            shift: self.shift.clone(),
        }
    }
}

/// Periodic dP_II schedule over Q from integer data.
pub fn dp2_schedule_build(a: i64, delta: i64, z0: i64, p: u64) -> Result<DP2Schedule<Rational>> {
    DP2Schedule::periodic(a, delta, z0, p, &rat_int(0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsiGammaParams<F> {
    pub a: F,
    pub gamma: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QP1Params<F> {
    pub a: F,
    pub b: F,
    pub q: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QP2Params<F> {
    pub a: F,
    pub q: F,
    pub tau0: F,
}

impl<F: Field> QP2Params<F> {
    pub fn tau(&self, n: i64) -> Result<F> {
        Ok(self.q.pow(n)?.mul(&self.tau0))
    }
}

/// A map family with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum MapSpec<F> {
    Dp2(DP2Schedule<F>),
    Psi(PsiGammaParams<F>),
    Qp1(QP1Params<F>),
    Qp2(QP2Params<F>),
}

impl<F: Field> MapSpec<F> {
    pub fn name(&self) -> &'static str {
        match self {
            MapSpec::Dp2(_) => "dp2",
            MapSpec::Psi(_) => "psi",
            MapSpec::Qp1(_) => "qp1",
            MapSpec::Qp2(_) => "qp2",
        }
    }

    /// One step on any `Arith` carrier; `embed` lifts parameters.
    pub fn step_with<S: Arith>(
        &self,
        x: &S,
        y: &S,
        n: i64,
        embed: impl Fn(&F) -> S,
    ) -> Result<(S, S)> {
        let one = x.int(1);
        let xn = match self {
            MapSpec::Dp2(s) => dp2_formula(x, y, &embed(&s.alpha(n)?), &embed(&s.beta(n)?), &one),
            MapSpec::Psi(p) => psi_formula(x, y, &embed(&p.a), p.gamma, &one),
            MapSpec::Qp1(p) => {
                let aqn = p.a.mul(&p.q.pow(n)?);
                qp1_formula(x, y, &embed(&aqn), &embed(&p.b))
            }
            MapSpec::Qp2(p) => qp2_formula(x, y, &embed(&p.a), &embed(&p.tau(n)?), &one),
        };
        Ok((xn, x.clone()))
    }

    /// Strict step: singular inputs are errors.
    pub fn step(&self, s: &MapState<F>, n: i64) -> Result<MapState<F>> {
        let (x, y) = self.step_with(&Strict::of(&s.x), &Strict::of(&s.y), n, Strict::of)?;
        let x = x.0.map_err(|e| match e {
            MathError::DivisionByZero => MathError::SingularInput(format!("{} at n={n}", self.name())),
            e => e,
        })?;
        Ok(MapState::new(x, y.0?))
    }

    /// Projective step over PF: may produce ∞ or Indeterminate.
    pub fn step_proj(&self, s: &ProjState<F>, n: i64) -> Result<ProjState<F>> {
        let template = match (&s.x, &s.y) {
            (EvalOutcome::Determinate(ProjValue::Finite(v)), _)
            | (_, EvalOutcome::Determinate(ProjValue::Finite(v))) => v.clone(),
            _ => match self.template() {
                Some(t) => t,
                None => return Ok(MapState::new(EvalOutcome::Indeterminate, s.x.clone())),
            },
        };
        let lift = |v: &EvalOutcome<F>| v.clone();
        let one = EvalOutcome::finite(template.one_like());
        // constants are built from `one`, so the formulas never see a non-finite template
        let x = s.x.clone();
        let y = s.y.clone();
        let xn = match self {
            MapSpec::Dp2(sc) => dp2_formula(
                &x,
                &y,
                &EvalOutcome::finite(sc.alpha(n)?),
                &EvalOutcome::finite(sc.beta(n)?),
                &one,
            ),
            MapSpec::Psi(p) => psi_formula(&x, &y, &EvalOutcome::finite(p.a.clone()), p.gamma, &one),
            MapSpec::Qp1(p) => qp1_formula(
                &x,
                &y,
                &EvalOutcome::finite(p.a.mul(&p.q.pow(n)?)),
                &EvalOutcome::finite(p.b.clone()),
            ),
            MapSpec::Qp2(p) => qp2_formula(
                &x,
                &y,
                &EvalOutcome::finite(p.a.clone()),
                &EvalOutcome::finite(p.tau(n)?),
                &one,
            ),
        };
        Ok(MapState::new(xn, lift(&s.x)))
    }

    fn template(&self) -> Option<F> {
        Some(match self {
            MapSpec::Dp2(s) => s.a.clone(),
            MapSpec::Psi(p) => p.a.clone(),
            MapSpec::Qp1(p) => p.a.clone(),
            MapSpec::Qp2(p) => p.a.clone(),
        })
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MapSpec<G> {
        match self {
            MapSpec::Dp2(s) => MapSpec::Dp2(s.map(f)),
            MapSpec::Psi(p) => MapSpec::Psi(PsiGammaParams {
                a: f(&p.a),
                gamma: p.gamma,
            }),
            MapSpec::Qp1(p) => MapSpec::Qp1(QP1Params {
                a: f(&p.a),
                b: f(&p.b),
                q: f(&p.q),
            }),
            MapSpec::Qp2(p) => MapSpec::Qp2(QP2Params {
                a: f(&p.a),
                q: f(&p.q),
                tau0: f(&p.tau0),
            }),
        }
    }

    /// Strict trajectory of `steps` steps starting at time n0; row k is the
    /// state at time n0 + k.
    pub fn trajectory(&self, s: &MapState<F>, n0: i64, steps: usize) -> Result<Vec<MapState<F>>> {
        let mut out = vec![s.clone()];
        for k in 0..steps {
            let next = self.step(out.last().unwrap(), n0 + k as i64)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn trajectory_proj(
        &self,
        s: &ProjState<F>,
        n0: i64,
        steps: usize,
    ) -> Result<Vec<ProjState<F>>> {
        let mut out = vec![s.clone()];
        for k in 0..steps {
            let next = self.step_proj(out.last().unwrap(), n0 + k as i64)?;
            out.push(next);
        }
        Ok(out)
    }
}

/// x' = α/(1−x) + β/(1+x) − y
pub fn dp2_formula<S: Arith>(x: &S, y: &S, alpha: &S, beta: &S, one: &S) -> S {
    alpha
        .over(&one.minus(x))
        .plus(&beta.over(&one.plus(x)))
        .minus(y)
}

/// x' = (a x + 1)/(x^γ y)
pub fn psi_formula<S: Arith>(x: &S, y: &S, a: &S, gamma: u32, one: &S) -> S {
    let mut xg = one.clone();
    for _ in 0..gamma {
        xg = xg.times(x);
    }
    a.times(x).plus(one).over(&xg.times(y))
}

/// x' = (a q^n x + b)/(x² y)
pub fn qp1_formula<S: Arith>(x: &S, y: &S, aqn: &S, b: &S) -> S {
    aqn.times(x).plus(b).over(&x.times(x).times(y))
}

/// x' = (a τ² x − (τ − x)(1 + x y)) / (x (τ − x)(x y + 1))
pub fn qp2_formula<S: Arith>(x: &S, y: &S, a: &S, tau: &S, one: &S) -> S {
    let xy1 = one.plus(&x.times(y));
    let tmx = tau.minus(x);
    let num = a.times(tau).times(tau).times(x).minus(&tmx.times(&xy1));
    let den = x.times(&tmx).times(&x.times(y).plus(one));
    num.over(&den)
}

/// x' = (1+δ) y/(1 + δ x y), y' = (1 + δ x y) x/(1+δ)
pub fn kdv_formula<S: Arith>(x: &S, y: &S, delta: &S, one: &S) -> (S, S) {
    let opd = one.plus(delta);
    let w = one.plus(&delta.times(x).times(y));
    (opd.times(y).over(&w), w.times(x).over(&opd))
}

/// Strict dKdV cell update.
pub fn kdv_step<F: Field>(x: &F, y: &F, delta: &F) -> Result<(F, F)> {
    let (a, b) = kdv_formula(
        &Strict::of(x),
        &Strict::of(y),
        &Strict::of(delta),
        &Strict::of(&x.one_like()),
    );
    Ok((a.0?, b.0?))
}

/// Projective dKdV cell update.
pub fn kdv_step_proj<F: Field>(
    x: &EvalOutcome<F>,
    y: &EvalOutcome<F>,
    delta: &F,
) -> (EvalOutcome<F>, EvalOutcome<F>) {
    let one = EvalOutcome::finite(delta.one_like());
    kdv_formula(x, y, &EvalOutcome::finite(delta.clone()), &one)
}

pub fn dp2_step<F: Field>(s: &MapState<F>, n: i64, sched: &DP2Schedule<F>) -> Result<MapState<F>> {
    MapSpec::Dp2(sched.clone()).step(s, n)
}

pub fn psi_step<F: Field>(s: &MapState<F>, params: &PsiGammaParams<F>) -> Result<MapState<F>> {
    MapSpec::Psi(params.clone()).step(s, 0)
}

pub fn qp1_step<F: Field>(s: &MapState<F>, n: i64, params: &QP1Params<F>) -> Result<MapState<F>> {
    MapSpec::Qp1(params.clone()).step(s, n)
}

pub fn qp2_step<F: Field>(s: &MapState<F>, n: i64, params: &QP2Params<F>) -> Result<MapState<F>> {
    MapSpec::Qp2(params.clone()).step(s, n)
}
