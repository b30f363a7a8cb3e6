use super::require;
use crate::error::{invalid, CliResult};
use crate::output::emit;
use crate::{parse, Format};
use pff::solutions::dp2_table_row;
use serde_json::json;
use std::path::PathBuf;

pub fn run(
    primes: &[u64],
    big_n: usize,
    lambda: &str,
    steps: Option<usize>,
    format: Format,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    require(format, &[Format::Tsv, Format::Json], "dp2-table")?;
    let lambda = parse::rational(lambda)?;
    let mut rows = Vec::new();
    for &p in primes {
        if p < 3 || !pff::finite_field::is_prime(p) {
            return invalid(format!("p = {p} is not an odd prime"));
        }
        rows.push(dp2_table_row(big_n, &lambda, p, steps.unwrap_or(2 * p as usize))?);
    }
    let text = match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "p": r.p,
                        "cond1": r.cond.first.to_string(),
                        "cond2": r.cond.second.to_string(),
                        "holds": r.cond.holds,
                        "sequence": r.sequence.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "period": r.period,
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        _ => {
            let mut s = String::from("p\tcond1\tcond2\tsequence\tperiod\n");
            for r in &rows {
                let seq: Vec<String> = r.sequence.iter().map(|v| v.to_string()).collect();
                let period = r.period.map_or("-".to_string(), |p| p.to_string());
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    r.p,
                    r.cond.first,
                    r.cond.second,
                    seq.join(","),
                    period
                ));
            }
            s
        }
    };
    emit(out, &text)
}
