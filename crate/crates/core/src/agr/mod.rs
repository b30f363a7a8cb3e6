//! Almost good reduction: follow a lifted orbit over Q_p until it returns
//! to Z_p² and compare its reduction with the value of the reduced map.

mod cases;
mod germ;
mod scan;

pub use cases::{predict, Prediction};
pub use scan::{agr_scan, lift_residue, strata, ScanOptions, ScanSummary, Stratum, StratumRow};

use crate::algebra::{Field, Rational};
use crate::error::{MathError, Result};
use crate::finite_field::{EvalOutcome, Fq, PrimePower, ProjValue};
use crate::maps::{DP2Schedule, MapSpec, MapState, ProjState, PsiGammaParams, QP1Params, QP2Params, Strict};
use crate::padic::{rational_valuation, PAdic, DEFAULT_PRECISION, MAX_PRECISION};
use crate::ratfunc::RatFunc;
use germ::{Series, SeriesArith};
use std::sync::Arc;

pub const DEFAULT_M_MAX: usize = 32;
const GERM_DEGREE_CAP: usize = 2048;

/// Map family with integer parameters, usable over Q_p and F_p alike.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AgrMap {
    Dp2 { a: i64, delta: i64, z0: i64 },
    Psi { a: i64, gamma: u32 },
    Qp1 { a: i64, b: i64, q: i64 },
    Qp2 { a: i64, q: i64, tau0: i64 },
}

impl AgrMap {
    pub fn name(&self) -> &'static str {
        match self {
            AgrMap::Dp2 { .. } => "dp2",
            AgrMap::Psi { .. } => "psi",
            AgrMap::Qp1 { .. } => "qp1",
            AgrMap::Qp2 { .. } => "qp2",
        }
    }

    /// The map over Q_p at working precision `cap`.
    pub fn upstairs(&self, p: u64, cap: u32) -> Result<MapSpec<PAdic>> {
        let c = |n: i64| PAdic::from_int(n, p, cap);
        Ok(match *self {
            AgrMap::Dp2 { a, delta, z0 } => {
                MapSpec::Dp2(DP2Schedule::periodic(a, delta, z0, p, &c(0))?)
            }
            AgrMap::Psi { a, gamma } => MapSpec::Psi(PsiGammaParams { a: c(a), gamma }),
            AgrMap::Qp1 { a, b, q } => MapSpec::Qp1(QP1Params {
                a: c(a),
                b: c(b),
                q: c(q),
            }),
            AgrMap::Qp2 { a, q, tau0 } => MapSpec::Qp2(QP2Params {
                a: c(a),
                q: c(q),
                tau0: c(tau0),
            }),
        })
    }

    /// The reduced map over F_p.
    pub fn downstairs(&self, ctx: &Arc<PrimePower>) -> MapSpec<Fq> {
        let c = |n: i64| Fq::new(ctx, n);
        match *self {
            AgrMap::Dp2 { a, delta, z0 } => MapSpec::Dp2(DP2Schedule::plain(c(a), c(delta), c(z0))),
            AgrMap::Psi { a, gamma } => MapSpec::Psi(PsiGammaParams { a: c(a), gamma }),
            AgrMap::Qp1 { a, b, q } => MapSpec::Qp1(QP1Params {
                a: c(a),
                b: c(b),
                q: c(q),
            }),
            AgrMap::Qp2 { a, q, tau0 } => MapSpec::Qp2(QP2Params {
                a: c(a),
                q: c(q),
                tau0: c(tau0),
            }),
        }
    }

    /// The map over Q (exact rationals), with the periodic schedule for dP_II.
    pub fn rational(&self, p: u64) -> Result<MapSpec<Rational>> {
        let c = crate::algebra::rat_int;
        Ok(match *self {
            AgrMap::Dp2 { a, delta, z0 } => {
                MapSpec::Dp2(DP2Schedule::periodic(a, delta, z0, p, &c(0))?)
            }
            AgrMap::Psi { a, gamma } => MapSpec::Psi(PsiGammaParams { a: c(a), gamma }),
            AgrMap::Qp1 { a, b, q } => MapSpec::Qp1(QP1Params {
                a: c(a),
                b: c(b),
                q: c(q),
            }),
            AgrMap::Qp2 { a, q, tau0 } => MapSpec::Qp2(QP2Params {
                a: c(a),
                q: c(q),
                tau0: c(tau0),
            }),
        })
    }

    fn check_params(&self, p: u64) -> Result<()> {
        let unit = |v: i64, name: &str| {
            if v.rem_euclid(p as i64) == 0 {
                Err(MathError::DomainViolation(format!("{name} must not be divisible by p")))
            } else {
                Ok(())
            }
        };
        match *self {
            AgrMap::Dp2 { .. } if p < 3 => {
                Err(MathError::InvalidArgument("dP_II needs p ≥ 3".into()))
            }
            AgrMap::Dp2 { .. } => Ok(()),
            AgrMap::Psi { a, .. } => unit(a, "a"),
            AgrMap::Qp1 { a, b, q } => unit(a, "a").and(unit(b, "b")).and(unit(q, "q")),
            AgrMap::Qp2 { a, q, tau0 } => unit(a, "a").and(unit(q, "q")).and(unit(tau0, "tau0")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AgrQuery {
    pub map: AgrMap,
    pub p: u64,
    /// exact lift of the starting point
    pub point: MapState<Rational>,
    pub n: i64,
    pub m_max: usize,
    pub precision: u32,
}

impl AgrQuery {
    pub fn new(map: AgrMap, p: u64, point: MapState<Rational>, n: i64) -> Self {
        AgrQuery {
            map,
            p,
            point,
            n,
            m_max: DEFAULT_M_MAX,
            precision: DEFAULT_PRECISION,
        }
    }

    fn check_domain(&self) -> Result<()> {
        self.map.check_params(self.p)?;
        let (x, y) = (&self.point.x, &self.point.y);
        for v in [x, y] {
            if rational_valuation(v, self.p).is_some_and(|k| k < 0) {
                return Err(MathError::DomainViolation("point not in Z_p²".into()));
            }
        }
        let one = crate::algebra::rat_int(1);
        let bad = match self.map {
            AgrMap::Dp2 { .. } => *x == one || *x == -one.clone(),
            AgrMap::Psi { .. } | AgrMap::Qp1 { .. } => x.is_zero() || y.is_zero(),
            AgrMap::Qp2 { q, tau0, .. } => {
                let hits_tau = (-16..=16).any(|k| {
                    let t = Field::pow(&crate::algebra::rat_int(q), k).unwrap()
                        * crate::algebra::rat_int(tau0);
                    t == *x
                });
                x.is_zero() || hits_tau || (x * y + &one).is_zero()
            }
        };
        if bad {
            return Err(MathError::DomainViolation(format!(
                "({x}, {y}) is on the singular set of {}",
                self.map.name()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct AgrReport {
    pub found: bool,
    pub m: Option<usize>,
    /// reduction of the Q_p orbit at step m (or at the last step tried)
    pub upstairs: Option<MapState<ProjValue<Fq>>>,
    /// the reduced map's value at step m, when determinate
    pub downstairs: Option<MapState<ProjValue<Fq>>>,
    /// (v_p(x_k), v_p(y_k)) for k = 0..; i64::MAX stands for an exact zero
    pub valuation_trace: Vec<(i64, i64)>,
    /// naive step-by-step iteration on PF_p
    pub projective_trace: Vec<ProjState<Fq>>,
    pub precision_used: u32,
}

impl AgrReport {
    /// Running minimum of v_p over the coordinates of the orbit.
    pub fn min_valuation_trace(&self) -> Vec<i64> {
        let mut cur = i64::MAX;
        self.valuation_trace
            .iter()
            .map(|&(a, b)| {
                cur = cur.min(a).min(b);
                cur
            })
            .collect()
    }
}

/// Starting directions for the germs, reduced mod p.
fn germ_directions(p: i64) -> Vec<(i64, i64)> {
    let mut dirs: Vec<(i64, i64)> = Vec::new();
    for d in [(1i64, 0i64), (0, 1), (1, 1), (1, -1), (2, 1), (1, 3)] {
        let r = (d.0.rem_euclid(p), d.1.rem_euclid(p));
        if r != (0, 0) && !dirs.contains(&r) {
            dirs.push(r);
        }
    }
    dirs
}

/// Orbit of the reduced map through curve germs at the starting point,
/// x = x̃ + d1 ε + ε², y = ỹ + d2 ε − ε³.
/// The downstairs value at a step is determinate when every germ survives
/// and all germs have the same limit. Germs are followed as truncated
/// Laurent series; when precision runs out the exact rational functions
/// take over.
struct GermBundle {
    spec: MapSpec<Fq>,
    ctx: Arc<PrimePower>,
    n0: i64,
    start: (Fq, Fq),
    series: Vec<Option<(SeriesArith, SeriesArith)>>,
    series_steps: usize,
    exact: Option<ExactGerms>,
}

struct ExactGerms {
    germs: Vec<Option<MapState<RatFunc<Fq>>>>,
    steps: usize,
}

impl GermBundle {
    fn new(spec: MapSpec<Fq>, x0: &Fq, y0: &Fq, n0: i64) -> Self {
        let ctx = x0.ctx().clone();
        let p = ctx.p();
        let series = germ_directions(p as i64)
            .into_iter()
            .map(|(d1, d2)| {
                let x = Series::from_poly(p, &[x0.index(), d1 as u64, 1]);
                let y = Series::from_poly(p, &[y0.index(), d2 as u64, 0, p - 1]);
                Some((SeriesArith(Some(x)), SeriesArith(Some(y))))
            })
            .collect();
        GermBundle {
            spec,
            ctx,
            n0,
            start: (x0.clone(), y0.clone()),
            series,
            series_steps: 0,
            exact: None,
        }
    }

    fn advance_series(&mut self, k: usize) {
        let p = self.ctx.p();
        while self.series_steps < k {
            let n = self.n0 + self.series_steps as i64;
            for g in self.series.iter_mut() {
                let next = g.as_ref().and_then(|(x, y)| {
                    let (x, y) = self
                        .spec
                        .step_with(x, y, n, |v| SeriesArith(Some(Series::constant(p, v.index()))))
                        .ok()?;
                    (x.0.is_some() && y.0.is_some()).then_some((x, y))
                });
                *g = next;
            }
            self.series_steps += 1;
        }
    }

    fn series_value(&mut self, k: usize) -> std::result::Result<Option<MapState<ProjValue<Fq>>>, ()> {
        self.advance_series(k);
        let mut out: Option<MapState<ProjValue<Fq>>> = None;
        for g in &self.series {
            let (x, y) = g.as_ref().ok_or(())?;
            let lx = x.0.as_ref().and_then(|s| s.limit(&self.ctx)).ok_or(())?;
            let ly = y.0.as_ref().and_then(|s| s.limit(&self.ctx)).ok_or(())?;
            let v = MapState::new(lx, ly);
            match &out {
                None => out = Some(v),
                Some(o) if *o == v => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(out)
    }

    fn exact_value(&mut self, k: usize) -> Option<MapState<ProjValue<Fq>>> {
        let (x0, y0) = self.start.clone();
        let ctx = self.ctx.clone();
        let exact = self.exact.get_or_insert_with(|| {
            let c = |v: i64| Fq::new(&ctx, v);
            let eps = RatFunc::variable(&x0);
            let eps2 = eps.mul(&eps);
            let germs = germ_directions(ctx.p() as i64)
                .into_iter()
                .map(|(d1, d2)| {
                    let x = RatFunc::constant(x0.clone())
                        .add(&eps.mul(&RatFunc::constant(c(d1))))
                        .add(&eps2);
                    let y = RatFunc::constant(y0.clone())
                        .add(&eps.mul(&RatFunc::constant(c(d2))))
                        .sub(&eps2.mul(&eps));
                    Some(MapState::new(x, y))
                })
                .collect();
            ExactGerms { germs, steps: 0 }
        });
        while exact.steps < k {
            let n = self.n0 + exact.steps as i64;
            for g in exact.germs.iter_mut() {
                let next = g.as_ref().and_then(|s| {
                    let (x, y) = self
                        .spec
                        .step_with(&Strict::of(&s.x), &Strict::of(&s.y), n, |v| {
                            Strict(Ok(RatFunc::constant(v.clone())))
                        })
                        .ok()?;
                    let st = MapState::new(x.0.ok()?, y.0.ok()?);
                    (st.x.degree() <= GERM_DEGREE_CAP).then_some(st)
                });
                *g = next;
            }
            exact.steps += 1;
        }
        let zero = Fq::new(&ctx, 0);
        let mut out: Option<MapState<ProjValue<Fq>>> = None;
        for g in &exact.germs {
            let g = g.as_ref()?;
            let v = MapState::new(g.x.reduce_at(&zero), g.y.reduce_at(&zero));
            match &out {
                None => out = Some(v),
                Some(o) if *o == v => {}
                Some(_) => return None,
            }
        }
        out
    }

    fn value_at(&mut self, k: usize) -> Option<MapState<ProjValue<Fq>>> {
        match self.series_value(k) {
            Ok(v) => v,
            Err(()) => self.exact_value(k),
        }
    }
}

fn lift(v: &Rational, p: u64, cap: u32) -> PAdic {
    PAdic::from_rational(v, p, cap)
}

fn search_at(q: &AgrQuery, cap: u32, ctx: &Arc<PrimePower>) -> Result<AgrReport> {
    let up = q.map.upstairs(q.p, cap)?;
    let down = q.map.downstairs(ctx);
    let mut state = MapState::new(lift(&q.point.x, q.p, cap), lift(&q.point.y, q.p, cap));
    let x0 = state.x.reduce_zp()?;
    let y0 = state.y.reduce_zp()?;
    let mut bundle = GermBundle::new(down.clone(), &x0, &y0, q.n);
    let start = MapState::new(EvalOutcome::finite(x0), EvalOutcome::finite(y0));
    let projective_trace = down.trajectory_proj(&start, q.n, q.m_max)?;
    let mut trace = vec![(state.x.valuation_bound(), state.y.valuation_bound())];
    let mut last_up = None;
    for k in 1..=q.m_max {
        state = up.step(&state, q.n + k as i64 - 1)?;
        trace.push((state.x.valuation_bound(), state.y.valuation_bound()));
        if state.x.valuation_bound() < 0 || state.y.valuation_bound() < 0 {
            continue;
        }
        let red = MapState::new(
            ProjValue::Finite(state.x.reduce_zp()?),
            ProjValue::Finite(state.y.reduce_zp()?),
        );
        last_up = Some(red.clone());
        if let Some(d) = bundle.value_at(k) {
            if d == red {
                return Ok(AgrReport {
                    found: true,
                    m: Some(k),
                    upstairs: Some(red),
                    downstairs: Some(d),
                    valuation_trace: trace,
                    projective_trace,
                    precision_used: cap,
                });
            }
        }
    }
    Ok(AgrReport {
        found: false,
        m: None,
        upstairs: last_up,
        downstairs: None,
        valuation_trace: trace,
        projective_trace,
        precision_used: cap,
    })
}

/// Minimal m ≤ m_max at which the reduced Q_p orbit equals the determinate
/// value of the reduced map. Precision doubles on exhaustion up to the cap.
pub fn agr_search(q: &AgrQuery) -> Result<AgrReport> {
    q.check_domain()?;
    let ctx = PrimePower::prime(q.p)?;
    let mut cap = q.precision.max(1);
    loop {
        match search_at(q, cap, &ctx) {
            Err(MathError::PrecisionExhausted) if cap < MAX_PRECISION => {
                cap = (cap * 2).min(MAX_PRECISION);
            }
            other => return other,
        }
    }
}
