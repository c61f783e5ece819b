//! Sums of three squares, rational points on the quadric `z1² + z2² + z3² = 0`,
//! rational rotations and the Cayley map.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, int, rat, rat_from_int, serde_rat, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{index_in, is_square_free, lattice_intersection, square_free_part, IntLattice};
use crate::matrix::{IntMatrix, RatMatrix};

/// `re + im sqrt(-D)` with `D` square-free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurdComplex {
	#[serde(with = "serde_rat")]
	pub re: Rat,
	#[serde(with = "serde_rat")]
	pub im: Rat,
	#[serde(rename = "D")]
	pub d: u64,
}

impl SurdComplex {
	pub fn new(re: Rat, im: Rat, d: u64) -> Result<Self> {
		if !is_square_free(d) {
			return Err(Error::NotSquareFree(d.to_string()));
		}
		Ok(SurdComplex { re, im, d })
	}

	pub fn real(re: Rat, d: u64) -> Self {
		SurdComplex { re, im: Rat::zero(), d }
	}

	pub fn conj(&self) -> Self {
		SurdComplex { re: self.re.clone(), im: -self.im.clone(), d: self.d }
	}

	pub fn is_zero(&self) -> bool {
		self.re.is_zero() && self.im.is_zero()
	}

	pub fn scale(&self, r: &Rat) -> Self {
		SurdComplex { re: &self.re * r, im: &self.im * r, d: self.d }
	}

	pub fn to_f64_pair(&self) -> (f64, f64) {
		let im = crate::arith::rat_to_f64(&self.im) * (self.d as f64).sqrt();
		(crate::arith::rat_to_f64(&self.re), im)
	}
}

impl std::fmt::Display for SurdComplex {
	fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
		use crate::arith::format_rational as fr;
		if self.im.is_zero() {
			return write!(f, "{}", fr(&self.re));
		}
		let sign = if self.im.is_negative() { "-" } else { "+" };
		write!(f, "{} {} {}*sqrt(-{})", fr(&self.re), sign, fr(&self.im.abs()), self.d)
	}
}

impl Add for &SurdComplex {
	type Output = SurdComplex;
	fn add(self, o: &SurdComplex) -> SurdComplex {
		assert_eq!(self.d, o.d, "surd fields differ");
		SurdComplex { re: &self.re + &o.re, im: &self.im + &o.im, d: self.d }
	}
}

impl Sub for &SurdComplex {
	type Output = SurdComplex;
	fn sub(self, o: &SurdComplex) -> SurdComplex {
		self + &(-o)
	}
}

impl Neg for &SurdComplex {
	type Output = SurdComplex;
	fn neg(self) -> SurdComplex {
		SurdComplex { re: -self.re.clone(), im: -self.im.clone(), d: self.d }
	}
}

impl Mul for &SurdComplex {
	type Output = SurdComplex;
	fn mul(self, o: &SurdComplex) -> SurdComplex {
		assert_eq!(self.d, o.d, "surd fields differ");
		let dd = rat(self.d as i64, 1);
		SurdComplex {
			re: &self.re * &o.re - &self.im * &o.im * dd,
			im: &self.re * &o.im + &self.im * &o.re,
			d: self.d,
		}
	}
}

/// Whether a square-free `D` is a sum of three integer squares.
pub fn three_squares_representable(d: u64) -> Result<bool> {
	if !is_square_free(d) {
		return Err(Error::NotSquareFree(d.to_string()));
	}
	Ok(d % 8 != 7)
}

/// Some `(a, b, c)` with `a ≥ b ≥ c ≥ 0` and `a² + b² + c² = n`, by direct search.
pub fn three_squares(n: u64) -> Option<[u64; 3]> {
	let isqrt = |v: u64| -> u64 {
		let mut r = (v as f64).sqrt() as u64;
		while r * r > v {
			r -= 1;
		}
		while (r + 1) * (r + 1) <= v {
			r += 1;
		}
		r
	};
	let mut a = isqrt(n);
	loop {
		let rest = n - a * a;
		let mut b = isqrt(rest).min(a);
		loop {
			let c2 = rest - b * b;
			let c = isqrt(c2);
			if c * c == c2 && c <= b {
				return Some([a, b, c]);
			}
			if b == 0 || 2 * b * b < rest {
				break;
			}
			b -= 1;
		}
		if a == 0 || 3 * a * a < n {
			return None;
		}
		a -= 1;
	}
}

/// A conjugate pair of points on the quadric orthogonal to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricPoint {
	pub point: [SurdComplex; 3],
	pub conjugate: [SurdComplex; 3],
	#[serde(rename = "D")]
	pub d: u64,
}

/// Point `z` with `Σ z_i² = 0` and `Σ n_i z_i = 0`, over `Q(sqrt(-D))` with `D` the
/// square-free part of `|n|²`. The branch with positive imaginary part comes first.
pub fn q3_point(n: [i64; 3]) -> Result<QuadricPoint> {
	let nv: Vec<Int> = n.iter().map(|&x| int(x)).collect();
	if nv.iter().all(Zero::is_zero) || !gcd_all(&nv).is_one() {
		return Err(Error::NotPrimitive(format!("{},{},{}", n[0], n[1], n[2])));
	}
	let norm: Int = nv.iter().map(|x| x * x).sum();
	let (m, d) = square_free_part(&norm)?;
	// rotate so that the first coordinate of the point is nonzero
	let shift = (0..3).find(|&k| !(n[(k + 1) % 3] == 0 && n[(k + 2) % 3] == 0)).expect("n is nonzero");
	let r = |i: usize| rat_from_int(&nv[(i + shift) % 3]);
	let (a, b, c) = (r(0), r(1), r(2));
	let mr = rat_from_int(&m);
	let z1 = SurdComplex::real(&b * &b + &c * &c, d);
	let z2 = SurdComplex { re: -(&a * &b), im: &c * &mr, d };
	let z3 = SurdComplex { re: -(&a * &c), im: -(&b * &mr), d };
	let rotated = [z1, z2, z3];
	let mut point: [SurdComplex; 3] = std::array::from_fn(|_| SurdComplex::real(Rat::zero(), d));
	for (i, z) in rotated.into_iter().enumerate() {
		point[(i + shift) % 3] = z;
	}
	if point.iter().find(|z| !z.im.is_zero()).is_some_and(|z| z.im.is_negative()) {
		point = point.map(|z| z.conj());
	}
	let conjugate = point.clone().map(|z| z.conj());
	Ok(QuadricPoint { point, conjugate, d })
}

/// `Σ z_i²`.
pub fn quadric_value(z: &[SurdComplex]) -> SurdComplex {
	let d = z.first().map_or(1, |x| x.d);
	z.iter().fold(SurdComplex::real(Rat::zero(), d), |acc, x| &acc + &(x * x))
}

/// `Σ n_i z_i`.
pub fn pairing(n: &[i64], z: &[SurdComplex]) -> SurdComplex {
	let d = z.first().map_or(1, |x| x.d);
	n.iter()
		.zip(z)
		.fold(SurdComplex::real(Rat::zero(), d), |acc, (&k, x)| &acc + &x.scale(&rat(k, 1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoincidenceLattice {
	/// The square lattice `Z²`.
	Square,
	/// The hexagonal lattice, in the oblique basis `(1,0), (-1/2, sqrt(3)/2)`.
	Hexagonal,
}

impl CoincidenceLattice {
	/// Gram matrix of the lattice basis.
	pub fn metric(self) -> RatMatrix {
		match self {
			CoincidenceLattice::Square => RatMatrix::identity(2),
			CoincidenceLattice::Hexagonal => {
				RatMatrix::from_rows(vec![vec![rat(1, 1), rat(-1, 2)], vec![rat(-1, 2), rat(1, 1)]])
			}
		}
	}
}

/// Rational matrix preserving the quadratic form `metric`, with determinant one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRotation {
	pub matrix: RatMatrix,
	pub metric: RatMatrix,
}

impl RationalRotation {
	pub fn new(matrix: RatMatrix, metric: RatMatrix) -> Option<Self> {
		let ok = matrix.rows() == metric.rows()
			&& matrix.cols() == metric.cols()
			&& matrix.transpose().mul(&metric).mul(&matrix) == metric
			&& matrix.det().is_one();
		ok.then_some(RationalRotation { matrix, metric })
	}

	pub fn compose(&self, other: &RationalRotation) -> Option<RationalRotation> {
		(self.metric == other.metric).then(|| RationalRotation {
			matrix: self.matrix.mul(&other.matrix),
			metric: self.metric.clone(),
		})
	}

	pub fn is_identity(&self) -> bool {
		self.matrix == RatMatrix::identity(self.matrix.rows())
	}

	/// Index `[L : L ∩ gL]` for `L = Z^d` in the frame of the metric.
	pub fn coincidence_index(&self) -> Result<Int> {
		let l = crate::arith::denominator_lcm(self.matrix.to_rows().iter().flatten());
		let scaled = self.matrix.scale(&rat_from_int(&l)).to_int().expect("denominators cleared");
		let d = self.matrix.rows();
		let big = IntLattice::from_generators(&IntMatrix::identity(d).map(|x| x * &l));
		let image = IntLattice::from_generators(&scaled);
		let meet = lattice_intersection(&big, &image)?;
		index_in(&meet, &big).ok_or(Error::DegeneratePeriodLattice)
	}
}

/// Element of the coincidence group with parameters `(p, q)`, if the defining relation holds.
pub fn coincidence_member(kind: CoincidenceLattice, p: &Rat, q: &Rat) -> Option<RationalRotation> {
	let matrix = match kind {
		CoincidenceLattice::Square => {
			if p * p + q * q != Rat::one() {
				return None;
			}
			RatMatrix::from_rows(vec![vec![p.clone(), -q.clone()], vec![q.clone(), p.clone()]])
		}
		CoincidenceLattice::Hexagonal => {
			if p * p - p * q + q * q != Rat::one() {
				return None;
			}
			RatMatrix::from_rows(vec![vec![p.clone(), -q.clone()], vec![q.clone(), p - q]])
		}
	};
	RationalRotation::new(matrix, kind.metric())
}

/// `(I - X)(I + X)^{-1}` for `X` with `XᵗS + SX = 0`.
pub fn cayley_rotation(s: &RatMatrix, x: &RatMatrix) -> Result<RationalRotation> {
	let d = s.rows();
	if s.cols() != d || x.rows() != d || x.cols() != d {
		return Err(Error::DimensionMismatch("metric and generator must be d x d".into()));
	}
	if !s.is_symmetric() {
		return Err(Error::BadParameters("metric is not symmetric".into()));
	}
	if !x.transpose().mul(s).add(&s.mul(x)).is_zero() {
		return Err(Error::NotInLieAlgebra);
	}
	let id = RatMatrix::identity(d);
	let minus = id.add(&x.scale(&rat(-1, 1)));
	let inv = id.add(x).inverse().ok_or(Error::SingularIplusX)?;
	let phi = minus.mul(&inv);
	RationalRotation::new(phi, s.clone()).ok_or_else(|| Error::BadParameters("metric is degenerate".into()))
}

/// Rotation taking `(1,0)` to `(x/z, y/z)`.
pub fn pythagorean_rotation(x: i64, y: i64, z: i64) -> Result<RationalRotation> {
	let bad = || Error::NotPythagorean(format!("{x},{y},{z}"));
	if x <= 0 || y <= 0 || z <= 0 {
		return Err(bad());
	}
	let (xi, yi, zi) = (int(x), int(y), int(z));
	if &xi * &xi + &yi * &yi != &zi * &zi || !gcd_all(&[xi, yi]).is_one() {
		return Err(bad());
	}
	coincidence_member(CoincidenceLattice::Square, &rat(x, z), &rat(y, z)).ok_or_else(bad)
}

#[cfg(test)]
mod tests {
	use super::*;

	#[test]
	fn surd_arithmetic() {
		let i = SurdComplex::new(rat(0, 1), rat(1, 1), 1).unwrap();
		assert_eq!(&i * &i, SurdComplex::real(rat(-1, 1), 1));
		let w = SurdComplex::new(rat(-1, 2), rat(1, 2), 3).unwrap();
		// a primitive cube root of unity
		assert_eq!(&(&w * &w) * &w, SurdComplex::real(rat(1, 1), 3));
		assert!(SurdComplex::new(rat(0, 1), rat(1, 1), 12).is_err());
		assert_eq!(w.to_string(), "-1/2 + 1/2*sqrt(-3)");
		let json = serde_json::to_string(&w).unwrap();
		assert_eq!(json, r#"{"re":"-1/2","im":"1/2","D":3}"#);
	}

	#[test]
	fn three_squares_examples() {
		assert_eq!(three_squares_representable(7), Ok(false));
		assert_eq!(three_squares_representable(3), Ok(true));
		assert_eq!(three_squares_representable(12), Err(Error::NotSquareFree("12".into())));
		assert_eq!(three_squares(3), Some([1, 1, 1]));
		assert_eq!(three_squares(7), None);
		assert_eq!(three_squares(0), Some([0, 0, 0]));
		for n in 0..2000u64 {
			if let Some([a, b, c]) = three_squares(n) {
				assert_eq!(a * a + b * b + c * c, n);
			}
		}
	}

	#[test]
	fn quadric_points() {
		let q = q3_point([1, 1, 1]).unwrap();
		assert_eq!(q.d, 3);
		let expect = [(2, 0), (-1, 1), (-1, -1)];
		for (z, (re, im)) in q.point.iter().zip(expect) {
			assert_eq!((z.re.clone(), z.im.clone()), (rat(re, 1), rat(im, 1)));
		}
		let e = q3_point([1, 0, 0]).unwrap();
		assert_eq!(e.d, 1);
		assert!(e.point[0].is_zero());
		assert_eq!(e.point[1], SurdComplex::real(rat(1, 1), 1));
		assert_eq!(e.point[2], SurdComplex::new(rat(0, 1), rat(1, 1), 1).unwrap());
		assert!(matches!(q3_point([2, 0, 2]), Err(Error::NotPrimitive(_))));
		assert!(matches!(q3_point([0, 0, 0]), Err(Error::NotPrimitive(_))));
		for n in [[1, 2, 2], [0, 3, 4], [2, -3, 5], [0, 0, -1], [4, 4, 1]] {
			let q = q3_point(n).unwrap();
			let (_, d) = square_free_part(&int(n.iter().map(|x| x * x).sum())).unwrap();
			assert_eq!(q.d, d);
			for z in [&q.point, &q.conjugate] {
				assert!(quadric_value(z).is_zero());
				assert!(pairing(&n, z).is_zero());
				assert!(z.iter().any(|c| !c.is_zero()));
			}
		}
	}

	#[test]
	fn coincidence_members() {
		let g = coincidence_member(CoincidenceLattice::Square, &rat(3, 5), &rat(4, 5)).unwrap();
		assert_eq!(g.matrix.col(0), vec![rat(3, 5), rat(4, 5)]);
		assert_eq!(g.matrix.col(1), vec![rat(-4, 5), rat(3, 5)]);
		assert!(coincidence_member(CoincidenceLattice::Square, &rat(1, 1), &rat(0, 1)).unwrap().is_identity());
		assert!(coincidence_member(CoincidenceLattice::Square, &rat(1, 2), &rat(1, 2)).is_none());
		let h = coincidence_member(CoincidenceLattice::Hexagonal, &rat(1, 1), &rat(1, 1)).unwrap();
		assert!(!h.is_identity());
		// rotation by 60 degrees has order six
		let mut acc = h.clone();
		for _ in 0..5 {
			acc = acc.compose(&h).unwrap();
		}
		assert!(acc.is_identity());
		assert_eq!(h.coincidence_index().unwrap(), int(1));
		let seven = coincidence_member(CoincidenceLattice::Hexagonal, &rat(8, 7), &rat(3, 7)).unwrap();
		assert_eq!(seven.coincidence_index().unwrap(), int(7));
	}

	#[test]
	fn cayley_map() {
		let s = RatMatrix::identity(2);
		assert!(cayley_rotation(&s, &RatMatrix::zeros(2, 2)).unwrap().is_identity());
		let x = RatMatrix::from_rows(vec![vec![rat(0, 1), rat(-1, 2)], vec![rat(1, 2), rat(0, 1)]]);
		let g = cayley_rotation(&s, &x).unwrap();
		assert_eq!(g.matrix, RatMatrix::from_rows(vec![vec![rat(3, 5), rat(4, 5)], vec![rat(-4, 5), rat(3, 5)]]));
		let sym = RatMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]]);
		assert_eq!(cayley_rotation(&s, &sym), Err(Error::NotInLieAlgebra));
		let x = RatMatrix::from_rows(vec![vec![rat(0, 1), rat(-1, 1)], vec![rat(1, 1), rat(0, 1)]]);
		assert!(cayley_rotation(&s, &x).is_ok());
	}

	#[test]
	fn pythagorean_rotations() {
		let g = pythagorean_rotation(3, 4, 5).unwrap();
		assert_eq!(g.matrix, RatMatrix::from_rows(vec![vec![rat(3, 5), rat(-4, 5)], vec![rat(4, 5), rat(3, 5)]]));
		assert_eq!(g.coincidence_index().unwrap(), int(5));
		assert_eq!(pythagorean_rotation(5, 12, 13).unwrap().coincidence_index().unwrap(), int(13));
		assert!(matches!(pythagorean_rotation(3, 4, 6), Err(Error::NotPythagorean(_))));
		assert!(matches!(pythagorean_rotation(6, 8, 10), Err(Error::NotPythagorean(_))));
	}
}
