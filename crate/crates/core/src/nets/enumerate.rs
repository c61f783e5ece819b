//! Topological crystals over a fixed graph, listed by the height of `H`.

use serde::Serialize;

use super::{quadric_point_2d, standard_realization, torus_volume, QuadricPoint2D, VanishingSummand};
use crate::arith::{format_rational, rat_from_int, Rat};
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::lattice::{enumerate_summands_with_gram, square_free_part, EnumerationLimits, IntLattice};

#[derive(Clone, Debug, Serialize)]
pub struct NetRow {
	/// Basis of `H` in homology coordinates.
	pub summand: Vec<Vec<String>>,
	pub height_squared: String,
	pub torus_volume_squared: String,
	#[serde(rename = "D", skip_serializing_if = "Option::is_none")]
	pub d: Option<u64>,
	#[serde(skip_serializing_if = "Option::is_none")]
	pub quadric_point: Option<QuadricPoint2D>,
}

/// One row per summand of rank `b - d` with `vol(H_R/H)² <= height_sq_bound`, ordered by
/// height and then by Hermite basis.
pub fn enumerate_nets(g: &FiniteGraph, d: usize, height_sq_bound: &Rat) -> Result<Vec<NetRow>> {
	let b = g.betti_number();
	if d == 0 || d > b {
		return Err(Error::InvalidRank(format!("dimension {d} for homology rank {b}")));
	}
	let gram = g.homology_basis().gram;
	let summands = enumerate_summands_with_gram(&gram, b - d, height_sq_bound, EnumerationLimits::default())?;
	summands.into_iter().map(|s| net_row(g, s.lattice)).collect()
}

fn net_row(g: &FiniteGraph, h: IntLattice) -> Result<NetRow> {
	let vs = VanishingSummand::new(g.clone(), h)?;
	let h_sq = vs.covolume_squared();
	let (d, quadric_point) = if vs.dim() == 2 {
		let r = standard_realization(&vs)?;
		let q = quadric_point_2d(&r)?;
		let (_, sf) = square_free_part(&(g.tree_number() * &h_sq))?;
		debug_assert_eq!(sf, q.d);
		(Some(sf), Some(q))
	} else {
		(None, None)
	};
	Ok(NetRow {
		summand: vs.h().basis_vectors().iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(),
		height_squared: format_rational(&rat_from_int(&h_sq)),
		torus_volume_squared: format_rational(&torus_volume(&vs)),
		d,
		quadric_point,
	})
}
