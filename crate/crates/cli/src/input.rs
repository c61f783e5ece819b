//! Parsers for command-line values.

use anyhow::{anyhow, bail, Context, Result};
use crystalframe::arith::{parse_rational, Rat};
use num_traits::Signed;

#[derive(Debug, PartialEq, Eq)]
pub enum SummandSpec {
	Zero,
	Rows(Vec<Vec<i64>>),
}

/// `zero` / `{0}`, or integer rows split by newlines or `;`. A leading `@` names a file.
pub fn parse_summand(arg: &str) -> Result<SummandSpec> {
	let text = match arg.strip_prefix('@') {
		Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
		None => arg.to_string(),
	};
	let trimmed = text.trim();
	if matches!(trimmed, "zero" | "{0}" | "0" | "") {
		return Ok(SummandSpec::Zero);
	}
	let mut rows = Vec::new();
	for (lineno, line) in text.lines().enumerate() {
		for part in line.split('#').next().unwrap_or("").split(';') {
			let part = part.trim();
			if part.is_empty() {
				continue;
			}
			let row = part
				.split(|c: char| c.is_whitespace() || c == ',')
				.filter(|t| !t.is_empty())
				.map(|t| t.parse::<i64>().map_err(|_| anyhow!("summand line {}: bad integer {t:?}", lineno + 1)))
				.collect::<Result<Vec<_>>>()?;
			if let Some(first) = rows.first().map(Vec::len) {
				if first != row.len() {
					bail!("summand line {}: row has {} entries, expected {first}", lineno + 1, row.len());
				}
			}
			rows.push(row);
		}
	}
	Ok(SummandSpec::Rows(rows))
}

/// Returns `h²` for a bound written as an integer, `p/q`, a decimal, or `sqrt(n)`.
pub fn parse_height_bound(arg: &str) -> Result<Rat> {
	let s = arg.trim();
	if s.starts_with('-') {
		bail!("height bound must be non-negative");
	}
	let h_sq = if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
		parse_rational(inner)?
	} else if let Some((int_part, frac_part)) = s.split_once('.') {
		let digits = format!("{int_part}{frac_part}");
		let scale = format!("1{}", "0".repeat(frac_part.len()));
		let h = parse_rational(&format!("{digits}/{scale}")).with_context(|| format!("bad height bound {s:?}"))?;
		&h * &h
	} else {
		let h = parse_rational(s)?;
		&h * &h
	};
	if h_sq.is_negative() {
		bail!("height bound must be non-negative");
	}
	Ok(h_sq)
}
