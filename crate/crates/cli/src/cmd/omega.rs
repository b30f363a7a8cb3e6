use super::require;
use crate::error::CliResult;
use crate::output::emit;
use crate::{parse, Format};
use pff::initial_space::{build_space, omega_step, orbit_decomposition, to_dot, OmegaPoint};
use pff::maps::DP2Schedule;
use serde_json::json;
use std::path::PathBuf;

#[allow(clippy::too_many_arguments)]
pub fn run(
    p: u64,
    m: u32,
    n: i64,
    [a, delta, z0]: [&String; 3],
    minimal: bool,
    orbits: bool,
    format: Format,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    require(format, &[Format::Tsv, Format::Json, Format::Dot], "omega")?;
    let ctx = parse::field(p, m)?;
    let sched = DP2Schedule::plain(parse::fq(&ctx, a)?, parse::fq(&ctx, delta)?, parse::fq(&ctx, z0)?);
    let space = build_space(&ctx, n, &sched, minimal)?;
    if format == Format::Dot {
        return emit(out, &to_dot(&space)?);
    }
    let images = space
        .points
        .iter()
        .map(|pt| omega_step(pt, &space))
        .collect::<Result<Vec<_>, _>>()?;
    let cycles = if orbits {
        Some(orbit_decomposition(&space, space.is_autonomous())?)
    } else {
        None
    };
    let name = |c: &[OmegaPoint]| c.iter().map(ToString::to_string).collect::<Vec<_>>();
    let text = if format == Format::Json {
        let pts: Vec<_> = space
            .points
            .iter()
            .zip(&images)
            .map(|(pt, im)| json!({ "point": pt.to_string(), "stratum": pt.stratum(), "image": im.to_string() }))
            .collect();
        let mut v = json!({
            "r": ctx.r(),
            "n": n,
            "minimal": minimal,
            "count": space.len(),
            "points": pts,
        });
        if let Some(c) = &cycles {
            v["cycles"] = json!(c.iter().map(|c| name(c)).collect::<Vec<_>>());
        }
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
    } else {
        let mut s = format!("{} points\n", space.len());
        match &cycles {
            Some(c) => {
                for cyc in c {
                    s.push_str(&format!("{}\t{}\n", cyc.len(), name(cyc).join(" ")));
                }
            }
            None => {
                for (pt, im) in space.points.iter().zip(&images) {
                    s.push_str(&format!("{pt}\t{im}\n"));
                }
            }
        }
        s
    };
    emit(out, &text)
}
