use super::require;
use crate::error::{invalid, CliResult};
use crate::output::{emit, pgm, tsv_rows};
use crate::{parse, Format, Mode};
use pff::finite_field::{EvalOutcome, Fq, PrimePower, ProjValue};
use pff::kdv::{
    kdv_evolve, kdv_evolve_proj, kdv_reduce, soliton_x, symbolic_lattice, SolitonParams,
    DEFAULT_DEGREE_CAP,
};
use pff::ratfunc::RatFunc;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// First non-empty line: x_1^0..x_N^0. Every later non-empty line: y_1^t.
pub fn read_init(ctx: &Arc<PrimePower>, path: &Path) -> CliResult<(Vec<Fq>, Vec<Fq>)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let Some(first) = lines.next() else {
        return invalid("empty init file");
    };
    let init = first
        .split_whitespace()
        .map(|t| parse::fq(ctx, t))
        .collect::<CliResult<Vec<_>>>()?;
    let mut boundary = Vec::new();
    for line in lines {
        let mut fields = line.split_whitespace();
        let v = fields.next().expect("nonempty line");
        if fields.next().is_some() {
            return invalid(format!("boundary line {line:?} must hold one value"));
        }
        boundary.push(parse::fq(ctx, v)?);
    }
    if boundary.is_empty() {
        return invalid("init file needs at least one boundary value y_1^t");
    }
    Ok((init, boundary))
}

fn render<T: ToString>(
    x: &[Vec<T>],
    y: Option<&[Vec<T>]>,
    format: Format,
    pixels: impl Fn() -> CliResult<Vec<Vec<ProjValue<Fq>>>>,
    r: u64,
    comment: &str,
) -> CliResult<String> {
    Ok(match format {
        Format::Pgm => pgm(&pixels()?, r, comment),
        Format::Json => {
            let s = |rows: &[Vec<T>]| -> Vec<Vec<String>> {
                rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
            };
            let mut v = json!({ "config": comment, "x": s(x) });
            if let Some(y) = y {
                v["y"] = json!(s(y));
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        _ => match y {
            Some(y) => format!("# {comment}\n# x\n{}# y\n{}", tsv_rows(x), tsv_rows(y)),
            None => format!("# {comment}\n{}", tsv_rows(x)),
        },
    })
}

pub fn run_init(
    ctx: &Arc<PrimePower>,
    d0: &Fq,
    path: &Path,
    steps: usize,
    mode: Mode,
    format: Format,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    require(format, &[Format::Tsv, Format::Json, Format::Pgm], "kdv")?;
    let (init, boundary) = read_init(ctx, path)?;
    let comment = format!(
        "pff kdv p={} m={} delta0={d0} init={} steps={steps} mode={}",
        ctx.p(),
        ctx.m(),
        path.display(),
        format!("{mode:?}").to_lowercase()
    );
    let text = match mode {
        Mode::Ratfunc => {
            let lattice = symbolic_lattice(&init, &boundary)?;
            let grid = kdv_reduce(&kdv_evolve(&lattice, steps, DEFAULT_DEGREE_CAP)?, d0);
            render(&grid.x, Some(&grid.y), format, || Ok(grid.x.clone()), ctx.r(), &comment)?
        }
        Mode::Pfp => {
            let lift = |v: &Vec<Fq>| v.iter().cloned().map(EvalOutcome::finite).collect::<Vec<_>>();
            let grid = kdv_evolve_proj(d0, &lift(&init), &lift(&boundary), steps);
            let pixels = || {
                grid.x
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| match v.value() {
                                Some(v) => Ok(v.clone()),
                                None => invalid("indeterminate cells cannot be drawn; use --mode ratfunc"),
                            })
                            .collect()
                    })
                    .collect()
            };
            render(&grid.x, Some(&grid.y), format, pixels, ctx.r(), &comment)?
        }
        other => return invalid(format!("kdv supports --mode ratfunc or pfp, not {other:?}")),
    };
    emit(out, &text)
}

#[allow(clippy::too_many_arguments)]
pub fn run_soliton(
    ctx: &Arc<PrimePower>,
    d0: &Fq,
    gammas: &str,
    ls: &str,
    width: usize,
    steps: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    require(format, &[Format::Tsv, Format::Json, Format::Pgm], "kdv")?;
    let g = parse::list(gammas)
        .iter()
        .map(|t| parse::fq(ctx, t))
        .collect::<CliResult<Vec<_>>>()?;
    let l = parse::list(ls)
        .iter()
        .map(|t| parse::fq(ctx, t))
        .collect::<CliResult<Vec<_>>>()?;
    let params = SolitonParams::new(g, l)?.map(|v| RatFunc::constant(v.clone()));
    let delta = RatFunc::variable(d0);
    let mut grid = Vec::with_capacity(steps + 1);
    for t in 0..=steps as i64 {
        let row = (1..=width as i64)
            .map(|n| soliton_x(&params, n, t, &delta).map(|v| v.reduce_at(d0)))
            .collect::<Result<Vec<_>, _>>()?;
        grid.push(row);
    }
    let comment = format!(
        "pff kdv soliton p={} m={} delta0={d0} gammas={gammas} ls={ls} width={width} steps={steps}",
        ctx.p(),
        ctx.m()
    );
    let text = render(&grid, None, format, || Ok(grid.clone()), ctx.r(), &comment)?;
    emit(out, &text)
}
