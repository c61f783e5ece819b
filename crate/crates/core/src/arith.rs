//! Exact scalar helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
	Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
	Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_from_int(n: &Int) -> Rat {
	Rat::from_integer(n.clone())
}

/// Parses `"p/q"`, `"p"` or a plain integer literal.
pub fn parse_rational(s: &str) -> Result<Rat> {
	let s = s.trim();
	let bad = || Error::Parse(format!("not a rational number: {s:?}"));
	match s.split_once('/') {
		Some((p, q)) => {
			let p: Int = p.trim().parse().map_err(|_| bad())?;
			let q: Int = q.trim().parse().map_err(|_| bad())?;
			if q.is_zero() {
				return Err(bad());
			}
			Ok(Rat::new(p, q))
		}
		None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
	}
}

pub fn parse_integer(s: &str) -> Result<Int> {
	s.trim()
		.parse()
		.map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// `"p/q"` in lowest terms, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rat) -> String {
	if r.denom().is_one() {
		r.numer().to_string()
	} else {
		format!("{}/{}", r.numer(), r.denom())
	}
}

pub fn rat_to_f64(r: &Rat) -> f64 {
	r.to_f64().unwrap_or_else(|| {
		// fall back to a scaled division for huge numerators
		let n = r.numer().to_f64().unwrap_or(f64::NAN);
		let d = r.denom().to_f64().unwrap_or(f64::NAN);
		n / d
	})
}

pub fn int_to_f64(n: &Int) -> f64 {
	n.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
	values
		.into_iter()
		.fold(Int::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a rational vector to integers by the lcm of its denominators.
pub fn clear_denominators(values: &[Rat]) -> (Vec<Int>, Int) {
	let l = denominator_lcm(values);
	let ints = values
		.iter()
		.map(|r| (r * rat_from_int(&l)).to_integer())
		.collect();
	(ints, l)
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a Int>) -> Int {
	values.into_iter().fold(Int::zero(), |acc, v| acc.gcd(v))
}

/// Divides by the content and makes the first nonzero entry positive.
pub fn primitive(values: &[Int]) -> Vec<Int> {
	let g = gcd_all(values);
	if g.is_zero() {
		return values.to_vec();
	}
	let mut out: Vec<Int> = values.iter().map(|v| v / &g).collect();
	if let Some(first) = out.iter().find(|v| !v.is_zero()) {
		if first.is_negative() {
			out.iter_mut().for_each(|v| *v = -v.clone());
		}
	}
	out
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
	a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
	a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

/// Exact integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &Int) -> Option<Int> {
	if n.is_negative() {
		return None;
	}
	let r = n.sqrt();
	(&r * &r == *n).then_some(r)
}

/// Exact rational square root if both parts are perfect squares.
pub fn exact_sqrt_rat(r: &Rat) -> Option<Rat> {
	Some(Rat::new(exact_sqrt(r.numer())?, exact_sqrt(r.denom())?))
}

/// Integer power of a rational.
pub fn rat_pow(r: &Rat, e: u32) -> Rat {
	let mut acc = Rat::one();
	for _ in 0..e {
		acc *= r;
	}
	acc
}

pub mod serde_rat {
	//! Rationals as `"p/q"` strings.
	use super::{format_rational, parse_rational, Rat};
	use serde::{Deserialize, Deserializer, Serializer};

	pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
		s.serialize_str(&format_rational(r))
	}

	pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
		let s = String::deserialize(d)?;
		parse_rational(&s).map_err(serde::de::Error::custom)
	}

	pub mod vec {
		use super::*;
		use serde::ser::SerializeSeq;

		pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
			let mut seq = s.serialize_seq(Some(v.len()))?;
			for r in v {
				seq.serialize_element(&format_rational(r))?;
			}
			seq.end()
		}

		pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
			let raw = Vec::<String>::deserialize(d)?;
			raw.iter()
				.map(|s| parse_rational(s).map_err(serde::de::Error::custom))
				.collect()
		}
	}
}

pub mod serde_int {
	//! Big integers as decimal strings.
	use super::{parse_integer, Int};
	use serde::{Deserialize, Deserializer, Serializer};

	pub fn serialize<S: Serializer>(n: &Int, s: S) -> Result<S::Ok, S::Error> {
		s.serialize_str(&n.to_string())
	}

	pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
		let s = String::deserialize(d)?;
		parse_integer(&s).map_err(serde::de::Error::custom)
	}

	pub mod vec {
		use super::*;
		use serde::ser::SerializeSeq;

		pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
			let mut seq = s.serialize_seq(Some(v.len()))?;
			for n in v {
				seq.serialize_element(&n.to_string())?;
			}
			seq.end()
		}

		pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
			let raw = Vec::<String>::deserialize(d)?;
			raw.iter()
				.map(|s| parse_integer(s).map_err(serde::de::Error::custom))
				.collect()
		}
	}
}

#[cfg(test)]
mod tests {
	use super::*;

	#[test]
	fn rational_round_trip() {
		for s in ["3/4", "-7/2", "5", "0"] {
			assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
		}
		assert_eq!(format_rational(&parse_rational("6/8").unwrap()), "3/4");
		assert!(parse_rational("1/0").is_err());
		assert!(parse_rational("x").is_err());
	}

	#[test]
	fn primitive_normalizes_sign_and_content() {
		let v = primitive(&[int(0), int(-4), int(6)]);
		assert_eq!(v, vec![int(0), int(2), int(-3)]);
	}

	#[test]
	fn clearing_denominators() {
		let (v, l) = clear_denominators(&[rat(1, 2), rat(2, 3), rat(0, 1)]);
		assert_eq!(l, int(6));
		assert_eq!(v, vec![int(3), int(4), int(0)]);
	}
}
