use serde::{Deserialize, Serialize};

use super::Frame;
use crate::arith::{denominator_lcm, format_rational, int, parse_rational, rat_from_int, Rat};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;

/// Axis `j`: entry `i` is `entries[i] / (m sqrt(D))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnJson {
	#[serde(rename = "D")]
	pub d: u64,
	pub m: String,
	pub entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
	pub dim: usize,
	pub size: usize,
	#[serde(default, skip_serializing_if = "Option::is_none")]
	pub columns: Option<Vec<ColumnJson>>,
	/// Row vectors of a frame without an exact form.
	#[serde(default, skip_serializing_if = "Option::is_none")]
	pub approximate: Option<Vec<Vec<f64>>>,
}

impl Frame {
	pub fn to_json(&self) -> FrameJson {
		let (dim, size) = (self.dim(), self.size());
		match self.exact_parts() {
			Some((c, surds)) => {
				let columns = c
					.columns()
					.iter()
					.zip(surds)
					.map(|(col, &d)| {
						let m = denominator_lcm(col);
						let mr = rat_from_int(&m);
						ColumnJson {
							d,
							m: m.to_string(),
							entries: col.iter().map(|x| format_rational(&(x * &mr))).collect(),
						}
					})
					.collect();
				FrameJson { dim, size, columns: Some(columns), approximate: None }
			}
			None => FrameJson { dim, size, columns: None, approximate: Some(self.vectors_f64()) },
		}
	}

	pub fn from_json(src: &str) -> Result<Frame> {
		let raw: FrameJson = serde_json::from_str(src)?;
		raw.into_frame()
	}
}

impl FrameJson {
	pub fn into_frame(self) -> Result<Frame> {
		let mismatch = |what: &str| Error::DimensionMismatch(what.to_string());
		match (self.columns, self.approximate) {
			(Some(cols), None) => {
				if cols.len() != self.dim {
					return Err(mismatch("column count differs from dim"));
				}
				let mut coeffs = RatMatrix::zeros(self.size, self.dim);
				let mut surds = Vec::with_capacity(self.dim);
				for (j, col) in cols.iter().enumerate() {
					if col.entries.len() != self.size {
						return Err(mismatch("entry count differs from size"));
					}
					let m = parse_rational(&col.m)?;
					if m <= Rat::from_integer(int(0)) {
						return Err(Error::Parse(format!("column scale {} must be positive", col.m)));
					}
					for (i, e) in col.entries.iter().enumerate() {
						coeffs[(i, j)] = parse_rational(e)? / &m;
					}
					surds.push(col.d);
				}
				Frame::exact(coeffs, surds)
			}
			(None, Some(rows)) => {
				if rows.len() != self.size || rows.iter().any(|r| r.len() != self.dim) {
					return Err(mismatch("approximate rows do not match size and dim"));
				}
				Frame::approximate(rows)
			}
			_ => Err(Error::Parse("frame needs exactly one of `columns` and `approximate`".into())),
		}
	}
}
