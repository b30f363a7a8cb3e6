use super::{agr_search, predict, AgrMap, AgrQuery, Prediction};
use crate::algebra::{rat_int, Field, Rational};
use crate::error::Result;
use crate::finite_field::{Fq, PrimePower};
use crate::maps::MapState;
use crate::padic::DEFAULT_PRECISION;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub samples: usize,
    pub seed: u64,
    pub m_max: usize,
    pub precision: u32,
    /// lifts are x̃ + p^k e with a random unit e
    pub lift_exponent: u32,
    /// draw fresh dP_II parameters (a, δ, z₀) for every sample
    pub randomize_params: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            samples: 100,
            seed: 0,
            m_max: super::DEFAULT_M_MAX,
            precision: DEFAULT_PRECISION,
            lift_exponent: 1,
            randomize_params: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratumRow {
    pub stratum: String,
    pub samples: usize,
    pub found: usize,
    pub m_hist: BTreeMap<usize, usize>,
    /// samples carrying an asserted closed form
    pub asserted: usize,
    pub matched: usize,
    /// boundary samples whose closed form nevertheless matched
    pub unasserted_matched: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanSummary {
    pub map: AgrMap,
    pub p: u64,
    pub rows: Vec<StratumRow>,
}

/// Stratum names scanned for a map family.
pub fn strata(map: &AgrMap) -> Vec<String> {
    let v: &[&str] = match map {
        AgrMap::Psi { .. } => &["generic", "x0", "y0", "y0*", "00"],
        AgrMap::Qp1 { .. } => &["generic", "i", "ii", "ii*", "iii"],
        AgrMap::Qp2 { .. } => &["generic", "i", "ii", "iii", "iv", "v"],
        AgrMap::Dp2 { .. } => &[
            "generic",
            "+1(i)",
            "+1(ii)",
            "+1(iii)",
            "+1(iv)",
            "-1(i)",
            "-1(ii)",
            "-1(iii)",
            "-1(iv)",
            "+1(ii) boundary",
            "+1(iii) boundary",
            "+1(iv) boundary",
            "-1(ii) boundary",
            "-1(iii) boundary",
            "-1(iv) boundary",
        ],
    };
    v.iter().map(|s| s.to_string()).collect()
}

/// A candidate starting configuration.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub map: AgrMap,
    pub xt: Fq,
    pub yt: Fq,
    pub n: i64,
    pub prediction: Prediction,
}

fn propose(map: &AgrMap, ctx: &Arc<PrimePower>, rng: &mut ChaCha8Rng, opts: &ScanOptions) -> Stratum {
    let p = ctx.p() as i64;
    let c = |v: i64| Fq::new(ctx, v);
    let mut map = map.clone();
    if let AgrMap::Dp2 { a, delta, z0 } = &mut map {
        if opts.randomize_params {
            *delta = loop {
                let d = rng.gen_range(1..=30);
                if d % p != 0 {
                    break d;
                }
            };
            *a = match rng.gen_range(0..4) {
                0 => -*delta + p * rng.gen_range(-3..=3),
                1 => *delta + p * rng.gen_range(-3..=3),
                _ => rng.gen_range(-30..=30),
            };
            *z0 = rng.gen_range(-30..=30);
        }
    }
    let n = match map {
        AgrMap::Dp2 { .. } => rng.gen_range(0..3 * p),
        AgrMap::Psi { .. } => 0,
        _ => rng.gen_range(0..6),
    };
    let uniform = |rng: &mut ChaCha8Rng| c(rng.gen_range(0..p));
    let specials: Vec<Fq> = match &map {
        AgrMap::Psi { .. } | AgrMap::Qp1 { .. } => vec![c(0)],
        AgrMap::Qp2 { q, tau0, .. } => vec![c(0), c(*q).pow(n).unwrap().mul(&c(*tau0))],
        AgrMap::Dp2 { .. } => vec![c(1), c(-1)],
    };
    let xt = if rng.gen_bool(0.5) {
        specials[rng.gen_range(0..specials.len())].clone()
    } else {
        uniform(rng)
    };
    let mut yspecials = vec![c(0)];
    if !xt.is_zero() {
        yspecials.push(xt.inv().unwrap().neg());
    }
    if let AgrMap::Qp2 { a, q, tau0 } = &map {
        let (a, q) = (c(*a), c(*q));
        let t = q.pow(n).unwrap().mul(&c(*tau0));
        let q2 = q.mul(&q);
        let t2 = t.mul(&t);
        let k0 = q2.sub(&c(1)).sub(&a.mul(&q2).mul(&t2)).add(&q2.mul(&q).mul(&t2));
        yspecials.push(k0.mul(&q2.mul(&t).inv().unwrap()));
    }
    let yt = if rng.gen_bool(0.4) {
        yspecials[rng.gen_range(0..yspecials.len())].clone()
    } else {
        uniform(rng)
    };
    let prediction = predict(&map, ctx, &xt, &yt, n);
    Stratum {
        map,
        xt,
        yt,
        n,
        prediction,
    }
}

fn random_unit(p: u64, rng: &mut ChaCha8Rng) -> i64 {
    let hi = (p as i64).pow(6);
    loop {
        let e = rng.gen_range(1..hi);
        if e % p as i64 != 0 {
            return e;
        }
    }
}

/// Lifts a residue to x̃ + p^k e, using the representative −1 for p − 1 so
/// that lifts of −1 keep the exponent k.
pub fn lift_residue(v: &Fq, k: u32, e: i64) -> Rational {
    let p = v.ctx().p() as i64;
    let mut base = v.index() as i64;
    if base == p - 1 {
        base = -1;
    }
    rat_int(base) + Rational::from_integer(BigInt::from(p).pow(k) * BigInt::from(e))
}

const MAX_PROPOSALS: usize = 200_000;

/// Samples every stratum of `map` and tabulates the observed exponents
/// against the closed forms.
pub fn agr_scan(map: &AgrMap, p: u64, opts: &ScanOptions) -> Result<ScanSummary> {
    let ctx = PrimePower::prime(p)?;
    map.check_params(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows = Vec::new();
    for name in strata(map) {
        let mut row = StratumRow {
            stratum: name.clone(),
            samples: 0,
            found: 0,
            m_hist: BTreeMap::new(),
            asserted: 0,
            matched: 0,
            unasserted_matched: 0,
            errors: 0,
        };
        let mut tries = 0;
        while row.samples < opts.samples && tries < MAX_PROPOSALS {
            tries += 1;
            let s = propose(map, &ctx, &mut rng, opts);
            if s.prediction.stratum != name {
                continue;
            }
            row.samples += 1;
            let x = lift_residue(&s.xt, opts.lift_exponent, random_unit(p, &mut rng));
            let y = lift_residue(&s.yt, opts.lift_exponent, random_unit(p, &mut rng));
            let q = AgrQuery {
                map: s.map.clone(),
                p,
                point: MapState::new(x, y),
                n: s.n,
                m_max: opts.m_max,
                precision: opts.precision,
            };
            let report = match agr_search(&q) {
                Ok(r) => r,
                Err(_) => {
                    row.errors += 1;
                    continue;
                }
            };
            if let Some(m) = report.m {
                row.found += 1;
                *row.m_hist.entry(m).or_default() += 1;
            }
            let hit = match (&s.prediction.expected, &report.upstairs, report.m) {
                (Some((m, (px, py))), Some(up), Some(om)) => {
                    *m == om
                        && up.x == crate::finite_field::ProjValue::Finite(px.clone())
                        && up.y == crate::finite_field::ProjValue::Finite(py.clone())
                }
                _ => false,
            };
            if s.prediction.asserted {
                row.asserted += 1;
                row.matched += hit as usize;
            } else if hit {
                row.unasserted_matched += 1;
            }
        }
        rows.push(row);
    }
    Ok(ScanSummary {
        map: map.clone(),
        p,
        rows,
    })
}
