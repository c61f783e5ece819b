//! Verification block attached to every exported realization.

use serde::Serialize;

use super::{quadric_point_2d, realism_check, torus_volume, QuadricPoint2D, Realization, RealismReport};
use crate::arith::{format_rational, rat, rat_from_int};
use crate::error::Result;
use crate::lattice::square_free_part;

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
	pub dim: usize,
	pub harmonic: bool,
	/// Tight constant of the bond vectors over the forward edges, if tight.
	pub tight_constant: Option<String>,
	/// `Σ |v(e)|²` over both orientations of every edge.
	pub sum_of_squares: String,
	/// Whether that sum equals `2d`, as it does for a 1-tight harmonic cochain.
	pub energy_identity: bool,
	pub energy: f64,
	pub distortion_ratio: f64,
	pub height_squared: String,
	pub torus_volume_squared: String,
	#[serde(rename = "D", skip_serializing_if = "Option::is_none")]
	pub d: Option<u64>,
	#[serde(skip_serializing_if = "Option::is_none")]
	pub quadric_point: Option<QuadricPoint2D>,
	pub realism: RealismReport,
	/// Harmonic, 1-tight and undistorted.
	pub passes: bool,
}

impl RealizationReport {
	pub fn new(r: &Realization, realism_radius: u32) -> Result<Self> {
		let vs = r.summand();
		let cochain = r.cochain();
		let harmonic = cochain.is_harmonic(vs.graph());
		let tight = cochain.tight_constant();
		let energy = r.energy();
		let distortion = r.distortion();
		let h_sq = vs.covolume_squared();
		let (d, quadric_point) = if r.dim() == 2 {
			let (_, sf) = square_free_part(&(vs.graph().tree_number() * &h_sq))?;
			(Some(sf), Some(quadric_point_2d(r)?))
		} else {
			(None, None)
		};
		let energy_identity = energy.sum_of_squares == rat(2 * r.dim() as i64, 1);
		let one_tight = tight.as_ref().is_some_and(|t| *t == rat(1, 1));
		Ok(RealizationReport {
			dim: r.dim(),
			harmonic,
			tight_constant: tight.as_ref().map(format_rational),
			sum_of_squares: format_rational(&energy.sum_of_squares),
			energy_identity,
			energy: energy.value,
			distortion_ratio: distortion.ratio,
			height_squared: format_rational(&rat_from_int(&h_sq)),
			torus_volume_squared: format_rational(&torus_volume(vs)),
			d,
			quadric_point,
			realism: realism_check(r, realism_radius, 1.0)?,
			passes: harmonic && one_tight && energy_identity && distortion.ratio == 1.0,
		})
	}
}
