//! Periodic realizations of abelian covers of a finite graph.
//!
//! Bond vectors live in an orthonormal frame of `H^⊥` inside `H_1(X, R)`. Axis `j` is
//! spanned by an integer cycle `U_j` with `|U_j|² = m_j² D_j`, so edge `e` has coordinate
//! `U_j[e] / (m_j sqrt(D_j))`; everything except the final per-axis square root is rational.

mod enumerate;
mod patch;
mod report;
mod quadric;

pub use enumerate::{enumerate_nets, NetRow};
pub use report::RealizationReport;
pub use patch::{realism_check, realize_patch, NetExport, Patch, PatchEdge, PatchVertex, RealismReport};
pub use quadric::{cubic_projection, normalize_projective, projectively_equal, quadric_point_2d, CubicProjection, QuadricPoint2D};

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{int, rat, rat_from_int, rat_to_f64, Int, Rat};
use crate::error::{Error, Result};
use crate::frame::{gram_schmidt_integral, period_lattice_of, Frame, PeriodLattice};
use crate::graph::{FiniteGraph, HomologyBasis};
use crate::lattice::{integer_kernel, orth_complement_with, square_free_part, IntLattice};
use crate::matrix::{IntMatrix, RatMatrix};

/// A summand `H` of `H_1(X, Z)` in the coordinates of the cycle basis.
#[derive(Clone, Debug)]
pub struct VanishingSummand {
	graph: FiniteGraph,
	basis: HomologyBasis,
	h: IntLattice,
}

impl VanishingSummand {
	pub fn new(graph: FiniteGraph, h: IntLattice) -> Result<Self> {
		let basis = graph.homology_basis();
		if h.ambient() != basis.rank() {
			return Err(Error::DimensionMismatch(format!(
				"summand lives in Z^{}, homology has rank {}",
				h.ambient(),
				basis.rank()
			)));
		}
		if !h.is_summand() {
			return Err(Error::NotASummand);
		}
		if h.rank() >= basis.rank() {
			return Err(Error::InvalidRank(format!("summand of rank {} leaves no dimensions", h.rank())));
		}
		Ok(VanishingSummand { graph, basis, h })
	}

	/// `H = {0}`: the maximal abelian cover.
	pub fn zero(graph: FiniteGraph) -> Result<Self> {
		let b = graph.betti_number();
		Self::new(graph, IntLattice::zero(b))
	}

	/// Generators given as rows in homology coordinates.
	pub fn from_rows(graph: FiniteGraph, rows: &[Vec<i64>]) -> Result<Self> {
		let b = graph.betti_number();
		if let Some(r) = rows.iter().find(|r| r.len() != b) {
			return Err(Error::DimensionMismatch(format!("row of length {} for homology rank {b}", r.len())));
		}
		let vs: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
		let h = IntLattice::from_vectors(b, &vs);
		if h.rank() < rows.len() {
			return Err(Error::NotASummand);
		}
		Self::new(graph, h)
	}

	pub fn graph(&self) -> &FiniteGraph {
		&self.graph
	}

	pub fn basis(&self) -> &HomologyBasis {
		&self.basis
	}

	pub fn h(&self) -> &IntLattice {
		&self.h
	}

	pub fn dim(&self) -> usize {
		self.basis.rank() - self.h.rank()
	}

	/// `vol(H_R / H)²` in the chain metric.
	pub fn covolume_squared(&self) -> Int {
		self.h.covolume_squared_with(&self.basis.gram)
	}

	/// Generators of `H` as edge chains.
	pub fn chains(&self) -> Vec<Vec<Int>> {
		self.h
			.basis_vectors()
			.iter()
			.map(|coords| {
				let m = self.graph.edge_count();
				let mut c = vec![Int::zero(); m];
				for (x, cyc) in coords.iter().zip(&self.basis.cycles) {
					for (ci, yi) in c.iter_mut().zip(cyc) {
						*ci += x * yi;
					}
				}
				c
			})
			.collect()
	}
}

/// `v₀(e)` in cycle-basis coordinates, with the cycle Gram matrix as metric.
#[derive(Clone, Debug)]
pub struct HomologyCochain {
	/// Row `e` holds the coordinates of `v₀(e)`.
	pub coords: RatMatrix,
	pub gram: IntMatrix,
}

impl HomologyCochain {
	/// `<v₀(e), v₀(f)>` for all forward edges.
	pub fn gram_of_vectors(&self) -> RatMatrix {
		self.coords.mul(&self.gram.to_rat()).mul(&self.coords.transpose())
	}

	/// Frame operator `y -> Σ <v, y> v` as a matrix in cycle coordinates.
	pub fn frame_operator(&self) -> RatMatrix {
		self.coords.transpose().mul(&self.coords).mul(&self.gram.to_rat())
	}

	pub fn is_one_tight(&self) -> bool {
		self.frame_operator() == RatMatrix::identity(self.gram.rows())
	}

	/// Integer relations among the `v₀(e)`.
	pub fn vanishing_group(&self) -> IntLattice {
		let rows: Vec<Vec<Int>> =
			self.coords.columns().iter().map(|c| crate::arith::clear_denominators(c).0).collect();
		integer_kernel(&IntMatrix::from_rows(rows))
	}

	/// Sum of `v₀` over the outgoing edges of each vertex, in cycle coordinates.
	pub fn vertex_sums(&self, g: &FiniteGraph) -> Vec<Vec<Rat>> {
		vertex_sums(g, &self.coords)
	}
}

/// Orthogonal projection of each edge onto the cycle space.
pub fn harmonic_cochain_v0(g: &FiniteGraph) -> HomologyCochain {
	let hb = g.homology_basis();
	let inv = hb.gram.to_rat().inverse().expect("cycle Gram matrix is nonsingular");
	// <c_i, e> is the coefficient of e in c_i
	let pairings = IntMatrix::from_columns(g.edge_count(), &hb.cycles).to_rat();
	HomologyCochain { coords: pairings.mul(&inv), gram: hb.gram }
}

/// Edge vectors over the forward edges; `v(ē) = -v(e)` is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct BuildingCochain {
	/// Row `e`, axis `j`: the value is `coeffs[e][j] / sqrt(surds[j])`.
	pub coeffs: RatMatrix,
	pub surds: Vec<u64>,
}

impl BuildingCochain {
	pub fn dim(&self) -> usize {
		self.surds.len()
	}

	pub fn vectors_f64(&self) -> Vec<Vec<f64>> {
		(0..self.coeffs.rows()).map(|e| coeff_row_f64(self.coeffs.row(e), &self.surds)).collect()
	}

	/// Exact `<v(e), v(f)>`.
	pub fn gram_exact(&self) -> RatMatrix {
		let w = self.axis_weights();
		let m = self.coeffs.rows();
		let mut g = RatMatrix::zeros(m, m);
		for a in 0..m {
			for b in a..m {
				let s: Rat = (0..self.dim()).map(|j| &self.coeffs[(a, j)] * &self.coeffs[(b, j)] * &w[j]).sum();
				g[(a, b)] = s.clone();
				g[(b, a)] = s;
			}
		}
		g
	}

	fn axis_weights(&self) -> Vec<Rat> {
		self.surds.iter().map(|&d| rat(1, d as i64)).collect()
	}

	/// `Σ_{e ∈ E⁰} |v(e)|²`.
	pub fn sum_of_squares(&self) -> Rat {
		let w = self.axis_weights();
		self.coeffs
			.to_rows()
			.iter()
			.map(|r| r.iter().zip(&w).map(|(c, wj)| c * c * wj).sum::<Rat>())
			.sum()
	}

	pub fn frame(&self) -> Result<Frame> {
		Frame::exact(self.coeffs.clone(), self.surds.clone())
	}

	/// Tight constant over `E⁰`, when the frame operator is scalar.
	pub fn tight_constant(&self) -> Option<Rat> {
		let c = self.coeffs.transpose().mul(&self.coeffs);
		let d = self.dim();
		for j in 0..d {
			for l in 0..d {
				if j != l && !c[(j, l)].is_zero() {
					return None;
				}
			}
		}
		let a = &c[(0, 0)] / rat(self.surds[0] as i64, 1);
		(1..d).all(|j| &c[(j, j)] / rat(self.surds[j] as i64, 1) == a).then_some(a)
	}

	/// Resultant force `Σ_{e ∈ E_x} v(e)` at every vertex.
	pub fn forces(&self, g: &FiniteGraph) -> Vec<Vec<Rat>> {
		vertex_sums(g, &self.coeffs)
	}

	pub fn is_harmonic(&self, g: &FiniteGraph) -> bool {
		self.forces(g).iter().flatten().all(Zero::is_zero)
	}

	/// `ρ(c_i) = Σ_e c_i[e] v(e)` for each basis cycle.
	pub fn periods(&self, hb: &HomologyBasis) -> Vec<Vec<Rat>> {
		hb.cycles.iter().map(|c| combine(c, &self.coeffs)).collect()
	}

	/// Eigenvalue ratio of the frame operator over `E⁰`; 1 exactly when tight.
	pub fn distortion_ratio(&self) -> f64 {
		if self.tight_constant().is_some() {
			return 1.0;
		}
		let v = self.vectors_f64();
		let d = self.dim();
		let m = DMatrix::from_fn(d, d, |j, l| v.iter().map(|x| x[j] * x[l]).sum::<f64>());
		let ev = SymmetricEigen::new(m).eigenvalues;
		let max = ev.iter().copied().fold(f64::MIN, f64::max);
		let min = ev.iter().copied().fold(f64::MAX, f64::min);
		if min <= 0.0 {
			f64::INFINITY
		} else {
			max / min
		}
	}

	/// Applies the linear map `t` on coefficients; `t` may only mix axes with equal surds.
	pub fn transformed(&self, t: &RatMatrix) -> Result<BuildingCochain> {
		let d = self.dim();
		if t.rows() != d || t.cols() != d {
			return Err(Error::DimensionMismatch("transform must be d x d".into()));
		}
		if (0..d).any(|j| (0..d).any(|l| !t[(j, l)].is_zero() && self.surds[j] != self.surds[l])) {
			return Err(Error::BadParameters("transform mixes axes with different square classes".into()));
		}
		Ok(BuildingCochain { coeffs: self.coeffs.mul(&t.transpose()), surds: self.surds.clone() })
	}
}

fn coeff_row_f64(row: &[Rat], surds: &[u64]) -> Vec<f64> {
	row.iter().zip(surds).map(|(c, &d)| rat_to_f64(c) / (d as f64).sqrt()).collect()
}

fn combine(chain: &[Int], coeffs: &RatMatrix) -> Vec<Rat> {
	let mut out = vec![Rat::zero(); coeffs.cols()];
	for (e, c) in chain.iter().enumerate() {
		if c.is_zero() {
			continue;
		}
		let cr = rat_from_int(c);
		for (j, o) in out.iter_mut().enumerate() {
			*o += &cr * &coeffs[(e, j)];
		}
	}
	out
}

fn vertex_sums(g: &FiniteGraph, rows: &RatMatrix) -> Vec<Vec<Rat>> {
	let mut out = vec![vec![Rat::zero(); rows.cols()]; g.vertex_count()];
	for (k, e) in g.edges().iter().enumerate() {
		for j in 0..rows.cols() {
			let v = &rows[(k, j)];
			out[e.origin][j] += v;
			out[e.terminus][j] -= v;
		}
	}
	out
}

/// `vol(J(X, H))² = κ / vol(H_R / H)²`.
pub fn torus_volume(vs: &VanishingSummand) -> Rat {
	Rat::new(vs.graph.tree_number(), vs.covolume_squared())
}

/// Energy ingredients; `value = sum_of_squares / volume_squared^(1/d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Energy {
	/// `Σ_{e ∈ E₀} |v(e)|²`, both orientations.
	pub sum_of_squares: Rat,
	pub volume_squared: Rat,
	pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Distortion {
	/// Resultant force per vertex, coefficients over the realization's surds.
	pub forces: Vec<Vec<Rat>>,
	pub ratio: f64,
	/// Harmonic and exactly tight.
	pub standard: bool,
}

#[derive(Clone, Debug)]
pub struct Realization {
	vs: VanishingSummand,
	cochain: BuildingCochain,
	period: PeriodLattice,
	/// Coefficients of `Φ(x)`; the root of the spanning tree sits at the origin.
	positions: Vec<Vec<Rat>>,
	/// Lattice offset reached by each forward edge, in the period basis.
	edge_offsets: Vec<Vec<Int>>,
}

impl Realization {
	/// Realization with a given building cochain; its class must vanish on `H`.
	pub fn from_cochain(vs: VanishingSummand, cochain: BuildingCochain) -> Result<Self> {
		if cochain.coeffs.rows() != vs.graph.edge_count() {
			return Err(Error::DimensionMismatch("cochain needs one row per edge".into()));
		}
		for h in vs.chains() {
			if combine(&h, &cochain.coeffs).iter().any(|x| !x.is_zero()) {
				return Err(Error::PeriodHomDoesNotKillH);
			}
		}
		let periods = cochain.periods(&vs.basis);
		let period = period_lattice_of(&periods, &cochain.surds)?;
		let positions: Vec<Vec<Rat>> = vs.basis.root_paths.iter().map(|p| combine(p, &cochain.coeffs)).collect();
		let mut edge_offsets = Vec::with_capacity(vs.graph.edge_count());
		for (k, e) in vs.graph.edges().iter().enumerate() {
			let jump: Vec<Rat> = (0..cochain.dim())
				.map(|j| &positions[e.origin][j] + &cochain.coeffs[(k, j)] - &positions[e.terminus][j])
				.collect();
			edge_offsets.push(period.coordinates(&jump).ok_or(Error::DegeneratePeriodLattice)?);
		}
		Ok(Realization { vs, cochain, period, positions, edge_offsets })
	}

	pub fn summand(&self) -> &VanishingSummand {
		&self.vs
	}

	pub fn graph(&self) -> &FiniteGraph {
		&self.vs.graph
	}

	pub fn cochain(&self) -> &BuildingCochain {
		&self.cochain
	}

	pub fn period(&self) -> &PeriodLattice {
		&self.period
	}

	pub fn dim(&self) -> usize {
		self.cochain.dim()
	}

	pub fn positions_exact(&self) -> &[Vec<Rat>] {
		&self.positions
	}

	pub fn positions_f64(&self) -> Vec<Vec<f64>> {
		self.positions.iter().map(|p| coeff_row_f64(p, &self.cochain.surds)).collect()
	}

	pub fn edge_offsets(&self) -> &[Vec<Int>] {
		&self.edge_offsets
	}

	pub fn energy(&self) -> Energy {
		let sum_of_squares = self.cochain.sum_of_squares() * rat(2, 1);
		let volume_squared = self.period.volume_squared.clone();
		let value = rat_to_f64(&sum_of_squares) / rat_to_f64(&volume_squared).powf(1.0 / self.dim() as f64);
		Energy { sum_of_squares, volume_squared, value }
	}

	pub fn distortion(&self) -> Distortion {
		let forces = self.cochain.forces(&self.vs.graph);
		let harmonic = forces.iter().flatten().all(Zero::is_zero);
		let tight = self.cochain.tight_constant().is_some();
		Distortion { ratio: self.cochain.distortion_ratio(), standard: harmonic && tight, forces }
	}

	/// Uniform scaling of all bond vectors by `sqrt(r)`.
	pub fn scaled(&self, r: &Rat) -> Result<Realization> {
		let frame = Frame::exact(self.cochain.coeffs.clone(), self.cochain.surds.clone())
			.map_err(|_| Error::DegeneratePeriodLattice)?;
		let scaled = frame.scale_sqrt(r)?;
		let (c, s) = scaled.exact_parts().expect("exact input stays exact");
		Realization::from_cochain(self.vs.clone(), BuildingCochain { coeffs: c.clone(), surds: s.to_vec() })
	}
}

/// Normalized standard realization: harmonic and 1-tight over the forward edges.
pub fn standard_realization(vs: &VanishingSummand) -> Result<Realization> {
	let gram = &vs.basis.gram;
	let complement = orth_complement_with(&vs.h, gram);
	let ortho = gram_schmidt_integral(&complement.basis_vectors(), Some(gram));
	let m = vs.graph.edge_count();
	let mut coeffs = RatMatrix::zeros(m, ortho.len());
	let mut surds = Vec::with_capacity(ortho.len());
	for (j, u) in ortho.iter().enumerate() {
		// edge chain of the cycle with coordinates u
		let mut chain = vec![Int::zero(); m];
		for (x, cyc) in u.iter().zip(&vs.basis.cycles) {
			for (ci, yi) in chain.iter_mut().zip(cyc) {
				*ci += x * yi;
			}
		}
		let norm: Int = chain.iter().map(|x| x * x).sum();
		let (mj, dj) = square_free_part(&norm)?;
		for e in 0..m {
			coeffs[(e, j)] = Rat::new(chain[e].clone(), mj.clone());
		}
		surds.push(dj);
	}
	Realization::from_cochain(vs.clone(), BuildingCochain { coeffs, surds })
}

/// The unique cochain with resultant forces `force` whose periods on the basis cycles are
/// the columns of `period_hom` (d x b). All data share the per-axis surds.
pub fn harmonic_realization_from_force(
	vs: &VanishingSummand,
	period_hom: &RatMatrix,
	surds: &[u64],
	force: &[Vec<Rat>],
) -> Result<BuildingCochain> {
	let g = &vs.graph;
	let b = vs.basis.rank();
	let d = surds.len();
	if period_hom.rows() != d || period_hom.cols() != b {
		return Err(Error::DimensionMismatch(format!("period map must be {d} x {b}")));
	}
	if force.len() != g.vertex_count() || force.iter().any(|f| f.len() != d) {
		return Err(Error::DimensionMismatch("force needs one d-vector per vertex".into()));
	}
	for j in 0..d {
		if !force.iter().map(|f| &f[j]).sum::<Rat>().is_zero() {
			return Err(Error::UnbalancedForce);
		}
	}
	for h in vs.h.basis_vectors() {
		let hv: Vec<Rat> = h.iter().map(rat_from_int).collect();
		if period_hom.mul_vec(&hv).iter().any(|x| !x.is_zero()) {
			return Err(Error::PeriodHomDoesNotKillH);
		}
	}
	let m = g.edge_count();
	// rows: one per cycle, then one per vertex other than 0
	let mut system = RatMatrix::zeros(m, m);
	for (i, c) in vs.basis.cycles.iter().enumerate() {
		for e in 0..m {
			system[(i, e)] = rat_from_int(&c[e]);
		}
	}
	for (k, e) in g.edges().iter().enumerate() {
		for (x, sign) in [(e.origin, 1), (e.terminus, -1)] {
			if x > 0 {
				system[(b + x - 1, k)] += rat(sign, 1);
			}
		}
	}
	let inv = system.inverse().expect("cycle and vertex constraints are independent");
	let mut coeffs = RatMatrix::zeros(m, d);
	for j in 0..d {
		let mut rhs: Vec<Rat> = (0..b).map(|i| period_hom[(j, i)].clone()).collect();
		rhs.extend(force.iter().skip(1).map(|f| f[j].clone()));
		for (e, v) in inv.mul_vec(&rhs).into_iter().enumerate() {
			coeffs[(e, j)] = v;
		}
	}
	Ok(BuildingCochain { coeffs, surds: surds.to_vec() })
}

/// Period map of a cochain as a d x b matrix.
pub fn period_map(cochain: &BuildingCochain, hb: &HomologyBasis) -> RatMatrix {
	RatMatrix::from_rows(cochain.periods(hb)).transpose()
}

/// Seeded perturbation of a realization: a diagonal stretch of the period map and a
/// balanced force with entries in `{-2,...,2}/4`. At least one of them is non-trivial.
pub fn perturbed_realization(r: &Realization, seed: u64) -> Result<Realization> {
	let mut rng = ChaCha8Rng::seed_from_u64(seed);
	let d = r.dim();
	let n = r.graph().vertex_count();
	let choices = [rat(3, 4), rat(1, 1), rat(5, 4), rat(3, 2)];
	let mut stretch: Vec<Rat> = (0..d).map(|_| choices[rng.gen_range(0..choices.len())].clone()).collect();
	let mut force: Vec<Vec<Rat>> = (0..n).map(|_| (0..d).map(|_| rat(rng.gen_range(-2..=2), 4)).collect()).collect();
	for j in 0..d {
		let total: Rat = force.iter().skip(1).map(|f| &f[j]).sum();
		force[0][j] = -total;
	}
	let trivial_force = force.iter().flatten().all(Zero::is_zero);
	if trivial_force && stretch.iter().all(|s| *s == stretch[0]) {
		stretch[0] = &stretch[0] * rat(2, 1);
		if d == 1 && n > 1 {
			force[0][0] = rat(1, 4);
			force[1][0] = rat(-1, 4);
		}
	}
	let t = RatMatrix::from_rows(
		(0..d).map(|j| (0..d).map(|l| if j == l { stretch[j].clone() } else { Rat::zero() }).collect()).collect(),
	);
	let rho = t.mul(&period_map(&r.cochain, &r.vs.basis));
	let cochain = harmonic_realization_from_force(&r.vs, &rho, &r.cochain.surds, &force)?;
	Realization::from_cochain(r.vs.clone(), cochain)
}

impl Realization {
	/// Whether the cochain is harmonic and 1-tight over `E⁰`.
	pub fn is_standard(&self) -> bool {
		self.cochain.is_harmonic(&self.vs.graph) && self.cochain.tight_constant().is_some_and(|a| a.is_one())
	}
}
