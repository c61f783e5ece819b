//! Two-dimensional realizations as points `z(e) = x(e) + i y(e)` over `Q(sqrt(-D))`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{standard_realization, Realization, VanishingSummand};
use crate::arith::{int, rat, Rat};
use crate::diophantine::{q3_point, QuadricPoint, SurdComplex};
use crate::error::{Error, Result};
use crate::frame::{frame_from_summand, Frame};
use crate::graph::corpus;
use crate::lattice::{square_free_part, IntLattice};

/// Projective point with the first nonzero coordinate scaled to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadricPoint2D {
	#[serde(rename = "D")]
	pub d: u64,
	/// Orientation whose first non-real coordinate has positive imaginary part.
	pub coords: Vec<SurdComplex>,
	pub conjugate: Vec<SurdComplex>,
	/// Whether `coords` is the orientation of the realization itself.
	pub realization_orientation: bool,
}

fn divide(z: &SurdComplex, w: &SurdComplex) -> SurdComplex {
	let norm = &w.re * &w.re + &w.im * &w.im * rat(w.d as i64, 1);
	(z * &w.conj()).scale(&(Rat::from_integer(int(1)) / norm))
}

/// Scales so that the first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize_projective(z: &[SurdComplex]) -> Option<Vec<SurdComplex>> {
	let lead = z.iter().find(|c| !c.is_zero())?;
	Some(z.iter().map(|c| divide(c, lead)).collect())
}

/// Equality in projective space over the same field.
pub fn projectively_equal(a: &[SurdComplex], b: &[SurdComplex]) -> bool {
	a.len() == b.len()
		&& a.iter().chain(b).all(|z| z.d == a[0].d)
		&& normalize_projective(a).is_some()
		&& normalize_projective(a) == normalize_projective(b)
}

pub fn quadric_point_2d(r: &Realization) -> Result<QuadricPoint2D> {
	if r.dim() != 2 {
		return Err(Error::NotTwoDimensional);
	}
	let c = &r.cochain().coeffs;
	let (d1, d2) = (r.cochain().surds[0], r.cochain().surds[1]);
	let (s, d) = square_free_part(&int((d1 * d2) as i64))?;
	// sqrt(D1) z = c1 + c2 sqrt(-D1/D2) = c1 + (c2 s / D2) sqrt(-D)
	let factor = Rat::new(s, int(d2 as i64));
	let raw: Vec<SurdComplex> = (0..c.rows())
		.map(|e| SurdComplex { re: c[(e, 0)].clone(), im: &c[(e, 1)] * &factor, d })
		.collect();
	let normalized = normalize_projective(&raw).ok_or(Error::DegeneratePeriodLattice)?;
	let flip = normalized.iter().find(|z| !z.im.is_zero()).is_some_and(|z| z.im.is_negative());
	let conj: Vec<SurdComplex> = normalized.iter().map(SurdComplex::conj).collect();
	let (coords, conjugate) = if flip { (conj, normalized) } else { (normalized, conj) };
	Ok(QuadricPoint2D { d, coords, conjugate, realization_orientation: !flip })
}

/// A plane pattern cut from the cubic lattice by a primitive normal vector.
#[derive(Clone, Debug)]
pub struct CubicProjection {
	/// Standard realization of the three-loop bouquet with `H = Z n`.
	pub realization: Realization,
	pub frame: Frame,
	pub q3: QuadricPoint,
	pub point: QuadricPoint2D,
}

pub fn cubic_projection(n: [i64; 3]) -> Result<CubicProjection> {
	let q3 = q3_point(n)?;
	let h = IntLattice::from_vectors(3, &[n.iter().map(|&x| int(x)).collect()]);
	let frame = frame_from_summand(&h, 2)?;
	let vs = VanishingSummand::new(corpus::bouquet(3), h)?;
	let realization = standard_realization(&vs)?;
	let point = quadric_point_2d(&realization)?;
	Ok(CubicProjection { realization, frame, q3, point })
}
