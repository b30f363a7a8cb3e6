use super::agr::agr_map;
use super::require;
use crate::error::{invalid, CliResult};
use crate::output::emit;
use crate::{parse, Format, MapArgs, Mode};
use pff::agr::AgrMap;
use pff::algebra::rat_int;
use pff::finite_field::{EvalOutcome, PrimePower, ProjValue};
use pff::maps::{DP2Schedule, MapSpec, MapState};
use pff::padic::{reduce_rational, PAdic};
use serde_json::json;
use std::path::PathBuf;

#[allow(clippy::too_many_arguments)]
pub fn run(
    m: &MapArgs,
    p: u64,
    mode: Mode,
    x: &str,
    y: &str,
    n: i64,
    steps: usize,
    precision: u32,
    format: Format,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    require(format, &[Format::Tsv, Format::Json], "traj")?;
    let map = agr_map(m);
    let ctx = PrimePower::prime(p)?;
    let (xr, yr) = (parse::rational(x)?, parse::rational(y)?);
    // one row per time step: values, plus valuations in qp mode
    let mut rows: Vec<Vec<String>> = Vec::new();
    match mode {
        Mode::Fp => {
            let (ProjValue::Finite(x0), ProjValue::Finite(y0)) =
                (reduce_rational(&xr, &ctx), reduce_rational(&yr, &ctx))
            else {
                return invalid("fp mode needs a starting point in F_p²; use --mode pfp");
            };
            let spec = map.downstairs(&ctx);
            for s in spec.trajectory(&MapState::new(x0, y0), n, steps)? {
                rows.push(vec![s.x.to_string(), s.y.to_string()]);
            }
        }
        Mode::Pfp => {
            let spec = map.downstairs(&ctx);
            let start = MapState::new(
                EvalOutcome::Determinate(reduce_rational(&xr, &ctx)),
                EvalOutcome::Determinate(reduce_rational(&yr, &ctx)),
            );
            for s in spec.trajectory_proj(&start, n, steps)? {
                rows.push(vec![s.x.to_string(), s.y.to_string()]);
            }
        }
        Mode::Qp => {
            let spec = map.upstairs(p, precision)?;
            let mut s = MapState::new(
                PAdic::from_rational(&xr, p, precision),
                PAdic::from_rational(&yr, p, precision),
            );
            let val = |v: &PAdic| {
                let b = v.valuation_bound();
                if b == i64::MAX {
                    "inf".to_string()
                } else {
                    b.to_string()
                }
            };
            for k in 0..=steps {
                if k > 0 {
                    s = spec.step(&s, n + k as i64 - 1)?;
                }
                rows.push(vec![
                    s.x.reduce_qp()?.to_string(),
                    s.y.reduce_qp()?.to_string(),
                    val(&s.x),
                    val(&s.y),
                ]);
            }
        }
        Mode::Rational => {
            let spec = match map {
                AgrMap::Dp2 { a, delta, z0 } => {
                    MapSpec::Dp2(DP2Schedule::plain(rat_int(a), rat_int(delta), rat_int(z0)))
                }
                _ => map.rational(p)?,
            };
            for s in spec.trajectory(&MapState::new(xr, yr), n, steps)? {
                rows.push(vec![s.x.to_string(), s.y.to_string()]);
            }
        }
        Mode::Ratfunc => return invalid("ratfunc mode applies to kdv only"),
    }
    let header: &[&str] = if mode == Mode::Qp {
        &["n", "x", "y", "vx", "vy"]
    } else {
        &["n", "x", "y"]
    };
    let text = if format == Format::Json {
        let v: Vec<_> = rows
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let mut o = serde_json::Map::new();
                o.insert("n".into(), json!(n + k as i64));
                for (h, c) in header[1..].iter().zip(r) {
                    o.insert(h.to_string(), json!(c));
                }
                serde_json::Value::Object(o)
            })
            .collect();
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
    } else {
        let mut s = format!("{}\n", header.join("\t"));
        for (k, r) in rows.iter().enumerate() {
            s.push_str(&format!("{}\t{}\n", n + k as i64, r.join("\t")));
        }
        s
    };
    emit(out, &text)
}
