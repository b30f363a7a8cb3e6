use super::require;
use crate::error::CliResult;
use crate::output::emit;
use crate::{parse, Format, MapArgs, MapKind};
use pff::agr::{agr_scan, agr_search, AgrMap, AgrQuery, AgrReport, ScanOptions, ScanSummary};
use pff::finite_field::{Fq, ProjValue};
use pff::maps::MapState;
use serde_json::json;
use std::path::PathBuf;

pub struct AgrOpts {
    pub samples: usize,
    pub seed: u64,
    pub m_max: usize,
    pub precision: u32,
    pub randomize_params: bool,
}

pub fn agr_map(m: &MapArgs) -> AgrMap {
    match m.map {
        MapKind::Dp2 => AgrMap::Dp2 {
            a: m.a,
            delta: m.delta,
            z0: m.z0,
        },
        MapKind::Psi => AgrMap::Psi {
            a: m.a,
            gamma: m.gamma,
        },
        MapKind::Qp1 => AgrMap::Qp1 {
            a: m.a,
            b: m.b,
            q: m.q,
        },
        MapKind::Qp2 => AgrMap::Qp2 {
            a: m.a,
            q: m.q,
            tau0: m.tau0,
        },
    }
}

fn describe(map: &AgrMap) -> String {
    match map {
        AgrMap::Dp2 { a, delta, z0 } => format!("dp2 a={a} delta={delta} z0={z0}"),
        AgrMap::Psi { a, gamma } => format!("psi a={a} gamma={gamma}"),
        AgrMap::Qp1 { a, b, q } => format!("qp1 a={a} b={b} q={q}"),
        AgrMap::Qp2 { a, q, tau0 } => format!("qp2 a={a} q={q} tau0={tau0}"),
    }
}

fn hist(s: &ScanSummary, i: usize) -> String {
    let h: Vec<String> = s.rows[i].m_hist.iter().map(|(m, c)| format!("{m}:{c}")).collect();
    if h.is_empty() {
        "-".into()
    } else {
        h.join(",")
    }
}

pub fn run_scan(m: &MapArgs, p: u64, o: &AgrOpts, format: Format, out: &Option<PathBuf>) -> CliResult<()> {
    require(format, &[Format::Tsv, Format::Json], "agr")?;
    let map = agr_map(m);
    let opts = ScanOptions {
        samples: o.samples,
        seed: o.seed,
        m_max: o.m_max,
        precision: o.precision,
        randomize_params: o.randomize_params,
        ..ScanOptions::default()
    };
    let s = agr_scan(&map, p, &opts)?;
    let text = if format == Format::Json {
        let rows: Vec<_> = s
            .rows
            .iter()
            .map(|r| {
                json!({
                    "stratum": r.stratum,
                    "samples": r.samples,
                    "found": r.found,
                    "m_hist": r.m_hist.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                    "asserted": r.asserted,
                    "matched": r.matched,
                    "errors": r.errors,
                })
            })
            .collect();
        let v = json!({
            "map": describe(&map),
            "p": p,
            "seed": o.seed,
            "m_max": o.m_max,
            "rows": rows,
        });
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
    } else {
        let mut t = format!(
            "# {} p={p} samples={} seed={} m_max={}\nstratum\tsamples\tfound\tm_hist\tasserted\tmatched\terrors\n",
            describe(&map),
            o.samples,
            o.seed,
            o.m_max
        );
        for (i, r) in s.rows.iter().enumerate() {
            t.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.stratum,
                r.samples,
                r.found,
                hist(&s, i),
                r.asserted,
                r.matched,
                r.errors
            ));
        }
        t
    };
    emit(out, &text)
}

fn state_str(s: &Option<MapState<ProjValue<Fq>>>) -> String {
    s.as_ref().map_or("-".into(), |s| format!("({},{})", s.x, s.y))
}

fn valuation(v: i64) -> String {
    if v == i64::MAX {
        "inf".into()
    } else {
        v.to_string()
    }
}

#[allow(clippy::too_many_arguments)]
pub fn run_point(
    m: &MapArgs,
    p: u64,
    x: &str,
    y: &str,
    n: i64,
    o: &AgrOpts,
    format: Format,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    require(format, &[Format::Tsv, Format::Json], "agr")?;
    let map = agr_map(m);
    let mut q = AgrQuery::new(map.clone(), p, MapState::new(parse::rational(x)?, parse::rational(y)?), n);
    q.m_max = o.m_max;
    q.precision = o.precision;
    let r: AgrReport = agr_search(&q)?;
    let trace: Vec<String> = r
        .valuation_trace
        .iter()
        .map(|&(a, b)| format!("({},{})", valuation(a), valuation(b)))
        .collect();
    let text = if format == Format::Json {
        let v = json!({
            "map": describe(&map),
            "p": p,
            "found": r.found,
            "m": r.m,
            "upstairs": state_str(&r.upstairs),
            "downstairs": state_str(&r.downstairs),
            "valuations": trace,
            "precision": r.precision_used,
        });
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
    } else {
        format!(
            "# {} p={p} x={x} y={y} n={n}\nfound\tm\tupstairs\tdownstairs\tvaluations\n{}\t{}\t{}\t{}\t{}\n",
            describe(&map),
            r.found,
            r.m.map_or("-".into(), |m| m.to_string()),
            state_str(&r.upstairs),
            state_str(&r.downstairs),
            trace.join(",")
        )
    };
    emit(out, &text)
}
