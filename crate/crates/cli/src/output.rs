use crate::error::CliResult;
use pff::finite_field::{Fq, ProjValue};
use std::path::PathBuf;

/// Writes to the file when given, stdout otherwise.
pub fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// ASCII PGM: finite v becomes r − index(v), ∞ becomes 0, maxval r.
pub fn pgm(rows: &[Vec<ProjValue<Fq>>], r: u64, comment: &str) -> String {
    let w = rows.first().map_or(0, Vec::len);
    let mut s = format!("P2\n# {comment}\n{w} {}\n{r}\n", rows.len());
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .map(|v| match v {
                ProjValue::Finite(f) => (r - f.index()).to_string(),
                ProjValue::Infinity => "0".to_string(),
            })
            .collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn tsv_rows<T: ToString>(rows: &[Vec<T>]) -> String {
    let mut s = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        s.push_str(&line.join("\t"));
        s.push('\n');
    }
    s
}
