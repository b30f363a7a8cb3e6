use crate::error::{invalid, CliResult};
use num_bigint::BigInt;
use num_rational::BigRational;
use pff::finite_field::{Fq, PrimePower};
use std::sync::Arc;

/// Integers, fractions "n/d".
pub fn rational(s: &str) -> CliResult<BigRational> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().or_else(|_| invalid(format!("bad number {s:?}")))?;
            let d: BigInt = d.trim().parse().or_else(|_| invalid(format!("bad number {s:?}")))?;
            if d == BigInt::from(0) {
                return invalid(format!("zero denominator in {s:?}"));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(
            s.parse().or_else(|_| invalid(format!("bad number {s:?}")))?,
        ),
    };
    Ok(r)
}

/// An element of F_r: an integer (read in the prime field) or a coefficient
/// vector "[c0,c1,...]" in the polynomial basis.
pub fn fq(ctx: &Arc<PrimePower>, s: &str) -> CliResult<Fq> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let coeffs = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .or_else(|_| invalid(format!("bad field element {s:?}")))?;
        return Ok(Fq::from_coeffs(ctx, &coeffs)?);
    }
    match s.parse::<i64>() {
        Ok(n) => Ok(Fq::new(ctx, n)),
        Err(_) => invalid(format!("bad field element {s:?}")),
    }
}

pub fn field(p: u64, m: u32) -> CliResult<Arc<PrimePower>> {
    Ok(PrimePower::new(p, m)?)
}

/// Comma-separated list, brackets allowed around field elements.
pub fn list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out.into_iter().map(|t| t.trim().to_string()).collect()
}
