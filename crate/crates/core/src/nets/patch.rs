//! Finite windows onto a realization, the realism test, and geometry export.

use std::collections::{HashMap, HashSet};

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::Realization;
use crate::arith::format_rational;
use crate::error::{Error, Result};

const MAX_PATCH_VERTICES: usize = 2_000_000;
const COLLISION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatchVertex {
	pub vertex: usize,
	pub offset: Vec<i64>,
	pub position: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatchEdge {
	pub edge: i64,
	pub from: usize,
	pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Patch {
	pub radius: u32,
	pub vertices: Vec<PatchVertex>,
	pub edges: Vec<PatchEdge>,
}

fn offsets(d: usize, radius: i64) -> Vec<Vec<i64>> {
	let mut out = vec![vec![]];
	for _ in 0..d {
		out = out.into_iter().flat_map(|p| (-radius..=radius).map(move |k| [p.clone(), vec![k]].concat())).collect();
	}
	out
}

/// Translates of the fundamental vertices by period vectors with coefficients in
/// `[-radius, radius]`, ordered by offset (lexicographic) and then vertex.
pub fn realize_patch(r: &Realization, radius: u32) -> Result<Patch> {
	let d = r.dim();
	let n = r.graph().vertex_count();
	let side = 2 * radius as usize + 1;
	let total = side.checked_pow(d as u32).and_then(|c| c.checked_mul(n));
	if total.map_or(true, |t| t > MAX_PATCH_VERTICES) {
		return Err(Error::InputTooLarge(format!("patch of radius {radius} in dimension {d}")));
	}
	let base = r.positions_f64();
	let periods = r.period().vectors_f64();
	let all = offsets(d, radius as i64);
	let index_of = |k: &[i64]| -> Option<usize> {
		let mut idx = 0usize;
		for &x in k {
			if x.unsigned_abs() > radius as u64 {
				return None;
			}
			idx = idx * side + (x + radius as i64) as usize;
		}
		Some(idx)
	};
	let mut vertices = Vec::with_capacity(all.len() * n);
	for k in &all {
		for (x, p) in base.iter().enumerate() {
			let mut pos = p.clone();
			for (a, &ka) in k.iter().enumerate() {
				for (pj, bj) in pos.iter_mut().zip(&periods[a]) {
					*pj += ka as f64 * bj;
				}
			}
			vertices.push(PatchVertex { vertex: x, offset: k.clone(), position: pos });
		}
	}
	let jumps: Vec<Vec<i64>> = r
		.edge_offsets()
		.iter()
		.map(|o| o.iter().map(|x| x.to_i64().expect("offset fits")).collect())
		.collect();
	let mut edges = Vec::new();
	for (ki, k) in all.iter().enumerate() {
		for (e, edge) in r.graph().edges().iter().enumerate() {
			let target: Vec<i64> = k.iter().zip(&jumps[e]).map(|(a, b)| a + b).collect();
			if let Some(ti) = index_of(&target) {
				edges.push(PatchEdge { edge: edge.id, from: ki * n + edge.origin, to: ti * n + edge.terminus });
			}
		}
	}
	Ok(Patch { radius, vertices, edges })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealismReport {
	pub vertices: usize,
	pub interior: usize,
	/// Patch vertex pairs at the same position.
	pub collisions: Vec<(usize, usize)>,
	/// Interior vertex and a non-adjacent vertex closer than the cutoff.
	pub close_non_adjacent: Vec<(usize, usize)>,
	/// Ids of edges with a zero bond vector.
	pub degenerate_edges: Vec<i64>,
	pub injective: bool,
	pub locally_faithful: bool,
	pub passes: bool,
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
	a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Checks injectivity on a patch and that, around every interior vertex, each vertex
/// within `c` times the longest incident bond is a neighbour.
pub fn realism_check(r: &Realization, radius: u32, c: f64) -> Result<RealismReport> {
	if !(c > 0.0 && c <= 1.0) {
		return Err(Error::BadParameters(format!("cutoff factor {c} must lie in (0, 1]")));
	}
	let patch = realize_patch(r, radius)?;
	let g = r.graph();
	let bonds = r.cochain().vectors_f64();
	let bond_len: Vec<f64> = bonds.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
	let degenerate_edges: Vec<i64> =
		g.edges().iter().enumerate().filter(|(k, _)| r.cochain().coeffs.row(*k).iter().all(Zero::is_zero)).map(|(_, e)| e.id).collect();
	let reach: Vec<f64> = (0..g.vertex_count())
		.map(|x| c * g.outgoing(x).iter().map(|de| bond_len[de.edge]).fold(0.0, f64::max))
		.collect();
	let cell = reach.iter().copied().fold(0.0, f64::max).max(1e-6);
	let key = |p: &[f64]| -> Vec<i64> { p.iter().map(|x| (x / cell).floor() as i64).collect() };
	let mut grid: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
	for (i, v) in patch.vertices.iter().enumerate() {
		grid.entry(key(&v.position)).or_default().push(i);
	}
	let adjacent: HashSet<(usize, usize)> =
		patch.edges.iter().map(|e| (e.from.min(e.to), e.from.max(e.to))).collect();
	let d = r.dim();
	let around = offsets(d, 1);
	let mut collisions = Vec::new();
	let mut close_non_adjacent = Vec::new();
	let mut interior = 0;
	for (i, v) in patch.vertices.iter().enumerate() {
		let is_interior = v.offset.iter().all(|k| k.unsigned_abs() < radius as u64);
		interior += usize::from(is_interior);
		let cutoff = reach[v.vertex] + COLLISION_TOLERANCE;
		let home = key(&v.position);
		for delta in &around {
			let cell_key: Vec<i64> = home.iter().zip(delta).map(|(a, b)| a + b).collect();
			for &j in grid.get(&cell_key).into_iter().flatten() {
				if j == i {
					continue;
				}
				let dd = dist2(&v.position, &patch.vertices[j].position);
				if j > i && dd <= COLLISION_TOLERANCE * COLLISION_TOLERANCE {
					collisions.push((i, j));
				}
				if is_interior && dd <= cutoff * cutoff && !adjacent.contains(&(i.min(j), i.max(j))) {
					close_non_adjacent.push((i, j));
				}
			}
		}
	}
	collisions.sort_unstable();
	close_non_adjacent.sort_unstable();
	let injective = collisions.is_empty();
	let locally_faithful = close_non_adjacent.is_empty();
	Ok(RealismReport {
		vertices: patch.vertices.len(),
		interior,
		collisions,
		close_non_adjacent,
		degenerate_edges,
		injective,
		locally_faithful,
		passes: injective && locally_faithful,
	})
}

#[derive(Clone, Debug, Serialize)]
pub struct ExportVertex {
	pub id: usize,
	pub vertex: usize,
	pub offset: Vec<i64>,
	pub pos: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactGeometry {
	/// Axis `j` of any coefficient vector is divided by `sqrt(surds[j])`.
	pub surds: Vec<u64>,
	/// Coefficients of the fundamental vertex positions.
	pub positions: Vec<Vec<String>>,
	/// Coefficients of the period basis vectors.
	pub period_vectors: Vec<Vec<String>>,
}

/// Net geometry for external viewers.
#[derive(Clone, Debug, Serialize)]
pub struct NetExport {
	pub dim: usize,
	pub vertices: Vec<ExportVertex>,
	pub edges: Vec<PatchEdge>,
	pub period_vectors: Vec<Vec<f64>>,
	/// Gram matrix of the period basis.
	pub gram: Vec<Vec<String>>,
	pub exact: ExactGeometry,
}

impl NetExport {
	pub fn new(r: &Realization, radius: u32) -> Result<Self> {
		let patch = realize_patch(r, radius)?;
		let period = r.period();
		let scale = crate::arith::rat_from_int(&period.scale);
		let period_vectors_exact = (0..period.basis.cols())
			.map(|k| {
				(0..period.basis.rows())
					.map(|j| format_rational(&(crate::arith::rat_from_int(&period.basis[(j, k)]) / &scale)))
					.collect()
			})
			.collect();
		Ok(NetExport {
			dim: r.dim(),
			vertices: patch
				.vertices
				.into_iter()
				.enumerate()
				.map(|(id, v)| ExportVertex { id, vertex: v.vertex, offset: v.offset, pos: v.position })
				.collect(),
			edges: patch.edges,
			period_vectors: period.vectors_f64(),
			gram: period.gram.to_strings(),
			exact: ExactGeometry {
				surds: r.cochain().surds.clone(),
				positions: r.positions_exact().iter().map(|p| p.iter().map(format_rational).collect()).collect(),
				period_vectors: period_vectors_exact,
			},
		})
	}

	pub fn to_json(&self) -> String {
		serde_json::to_string_pretty(self).expect("export serializes")
	}

	/// Wavefront OBJ with `v` records (padded or truncated to three coordinates) and `l` segments.
	pub fn to_obj(&self) -> String {
		let mut s = format!("# crystal net patch, dimension {}\n", self.dim);
		if self.dim > 3 {
			s.push_str("# only the first three coordinates are written\n");
		}
		for v in &self.vertices {
			let c: Vec<f64> = (0..3).map(|j| v.pos.get(j).copied().unwrap_or(0.0)).collect();
			s.push_str(&format!("v {:.12} {:.12} {:.12}\n", c[0], c[1], c[2]));
		}
		for e in &self.edges {
			s.push_str(&format!("l {} {}\n", e.from + 1, e.to + 1));
		}
		s
	}
}
