//! Finite frames with exact per-axis surd coordinates.
//!
//! An exact frame stores a rational coefficient `c[i][j]` and a square-free
//! `D_j` per axis; vector `i` has coordinate `c[i][j] / sqrt(D_j)`. Gram
//! matrices are then rational, and the frame operator is rational up to the
//! factor `1/sqrt(D_j D_l)`.

mod catalog;
mod json;

pub use catalog::{catalog_frame, parse_catalog_name, CatalogFrame, RootFamily};
pub use json::FrameJson;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Signed, Zero};

use crate::arith::{clear_denominators, denominator_lcm, int, rat_from_int, rat_pow, rat_to_f64, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{
	integer_kernel, is_square_free, lattice_sum_intersection, orth_complement_int, square_free_part, IntLattice,
};
use crate::matrix::{IntMatrix, RatMatrix};

/// Absolute tolerance for floating-point frames.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
enum Repr {
	Exact { coeffs: RatMatrix, surds: Vec<u64> },
	Approximate { rows: Vec<Vec<f64>>, dim: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
	repr: Repr,
}

/// Tight-frame constant, exact when the frame is.
#[derive(Clone, Debug, PartialEq)]
pub enum TightConstant {
	Exact(Rat),
	Approximate(f64),
}

impl TightConstant {
	pub fn to_f64(&self) -> f64 {
		match self {
			TightConstant::Exact(r) => rat_to_f64(r),
			TightConstant::Approximate(v) => *v,
		}
	}

	pub fn is_one(&self) -> bool {
		match self {
			TightConstant::Exact(r) => r.is_one(),
			TightConstant::Approximate(v) => (v - 1.0).abs() <= FLOAT_TOLERANCE,
		}
	}
}

/// `S = Σ v vᵗ`; exact entries are `coeffs[j][l] / sqrt(D_j D_l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameOperator {
	pub exact: Option<(RatMatrix, Vec<u64>)>,
	pub approximate: Vec<Vec<f64>>,
}

impl FrameOperator {
	/// `det S`, exact when available.
	pub fn determinant(&self) -> Option<Rat> {
		let (c, surds) = self.exact.as_ref()?;
		let prod: Rat = surds.iter().map(|&d| Rat::from_integer(int(d as i64))).product();
		Some(c.det() / prod)
	}

	pub fn trace_f64(&self) -> f64 {
		(0..self.approximate.len()).map(|i| self.approximate[i][i]).sum()
	}

	pub fn eigenvalues(&self) -> Vec<f64> {
		let d = self.approximate.len();
		let m = DMatrix::from_fn(d, d, |i, j| self.approximate[i][j]);
		let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
		ev.sort_by(f64::total_cmp);
		ev
	}
}

/// Period lattice `ρ(Z^N)` in coefficient space scaled by `scale`.
#[derive(Clone, Debug)]
pub struct PeriodLattice {
	/// Common denominator of the coefficients.
	pub scale: Int,
	/// Integer basis columns; basis vector `k` has coordinate `basis[j][k] / (scale sqrt(D_j))`.
	pub basis: IntMatrix,
	pub surds: Vec<u64>,
	/// Exact Gram matrix of the basis.
	pub gram: RatMatrix,
	pub volume_squared: Rat,
}

impl PeriodLattice {
	pub fn integer_lattice(&self) -> IntLattice {
		IntLattice::from_generators(&self.basis)
	}

	/// Basis vectors in floating point, one per entry.
	pub fn vectors_f64(&self) -> Vec<Vec<f64>> {
		let s = crate::arith::int_to_f64(&self.scale);
		(0..self.basis.cols())
			.map(|k| {
				(0..self.basis.rows())
					.map(|j| crate::arith::int_to_f64(&self.basis[(j, k)]) / s / (self.surds[j] as f64).sqrt())
					.collect()
			})
			.collect()
	}

	/// Integer coordinates of a coefficient vector, if it lies in the lattice.
	pub fn coordinates(&self, coeffs: &[Rat]) -> Option<Vec<Int>> {
		let target: Vec<Rat> = coeffs.iter().map(|c| c * rat_from_int(&self.scale)).collect();
		let x = self.basis.to_rat().solve(&target)?;
		x.iter().all(|v| v.is_integer()).then(|| x.iter().map(|v| v.to_integer()).collect())
	}
}

/// Both sides of the minimal-energy inequality with the `d`-th roots cleared.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyGap {
	pub sum_of_squares: Rat,
	pub volume_squared: Rat,
	pub height_squared: Int,
	/// `(Σ‖v‖²)^d`.
	pub lhs_power: Rat,
	/// `d^d vol² h²`.
	pub rhs_power: Rat,
	pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
	pub permutations: Vec<Vec<usize>>,
	pub isotropic: bool,
	pub strongly_isotropic: bool,
}

impl Frame {
	/// Exact frame from coefficients and per-axis square-free surds.
	pub fn exact(coeffs: RatMatrix, surds: Vec<u64>) -> Result<Self> {
		if surds.len() != coeffs.cols() {
			return Err(Error::DimensionMismatch(format!("{} surds for {} axes", surds.len(), coeffs.cols())));
		}
		if let Some(&bad) = surds.iter().find(|&&d| !is_square_free(d)) {
			return Err(Error::NotSquareFree(bad.to_string()));
		}
		if coeffs.cols() == 0 || coeffs.rank() < coeffs.cols() {
			return Err(Error::NotAFrame);
		}
		Ok(Frame { repr: Repr::Exact { coeffs, surds } })
	}

	/// Frame with rational coordinates.
	pub fn rational(rows: Vec<Vec<Rat>>) -> Result<Self> {
		let m = RatMatrix::from_rows(rows);
		let d = m.cols();
		Self::exact(m, vec![1; d])
	}

	pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
		Self::exact(RatMatrix::from_i64(rows), vec![1; rows.first().map_or(0, Vec::len)])
	}

	/// Floating-point frame; comparisons use [`FLOAT_TOLERANCE`].
	pub fn approximate(rows: Vec<Vec<f64>>) -> Result<Self> {
		let dim = rows.first().map_or(0, Vec::len);
		if dim == 0 || rows.iter().any(|r| r.len() != dim) {
			return Err(Error::DimensionMismatch("ragged or empty frame".into()));
		}
		let f = Frame { repr: Repr::Approximate { rows, dim } };
		if f.frame_operator().eigenvalues()[0] <= FLOAT_TOLERANCE {
			return Err(Error::NotAFrame);
		}
		Ok(f)
	}

	pub fn size(&self) -> usize {
		match &self.repr {
			Repr::Exact { coeffs, .. } => coeffs.rows(),
			Repr::Approximate { rows, .. } => rows.len(),
		}
	}

	pub fn dim(&self) -> usize {
		match &self.repr {
			Repr::Exact { coeffs, .. } => coeffs.cols(),
			Repr::Approximate { dim, .. } => *dim,
		}
	}

	pub fn is_exact(&self) -> bool {
		matches!(self.repr, Repr::Exact { .. })
	}

	/// Coefficients and surds of an exact frame.
	pub fn exact_parts(&self) -> Option<(&RatMatrix, &[u64])> {
		match &self.repr {
			Repr::Exact { coeffs, surds } => Some((coeffs, surds)),
			Repr::Approximate { .. } => None,
		}
	}

	fn require_exact(&self) -> Result<(&RatMatrix, &[u64])> {
		self.exact_parts().ok_or(Error::NotExact)
	}

	pub fn vectors_f64(&self) -> Vec<Vec<f64>> {
		match &self.repr {
			Repr::Exact { coeffs, surds } => (0..coeffs.rows())
				.map(|i| (0..coeffs.cols()).map(|j| rat_to_f64(&coeffs[(i, j)]) / (surds[j] as f64).sqrt()).collect())
				.collect(),
			Repr::Approximate { rows, .. } => rows.clone(),
		}
	}

	/// Exact squared norms.
	pub fn norms_squared(&self) -> Option<Vec<Rat>> {
		let g = self.gram_exact()?;
		Some((0..self.size()).map(|i| g[(i, i)].clone()).collect())
	}

	pub fn gram_exact(&self) -> Option<RatMatrix> {
		let (c, surds) = self.exact_parts()?;
		let n = c.rows();
		let inv: Vec<Rat> = surds.iter().map(|&d| Rat::new(int(1), int(d as i64))).collect();
		let mut g = RatMatrix::zeros(n, n);
		for i in 0..n {
			for k in i..n {
				let mut s = Rat::zero();
				for (j, w) in inv.iter().enumerate() {
					if !c[(i, j)].is_zero() && !c[(k, j)].is_zero() {
						s += &c[(i, j)] * &c[(k, j)] * w;
					}
				}
				g[(k, i)] = s.clone();
				g[(i, k)] = s;
			}
		}
		Some(g)
	}

	pub fn gram_f64(&self) -> Vec<Vec<f64>> {
		if let Some(g) = self.gram_exact() {
			return g.to_rows().iter().map(|r| r.iter().map(rat_to_f64).collect()).collect();
		}
		let v = self.vectors_f64();
		v.iter().map(|a| v.iter().map(|b| dot_f64(a, b)).collect()).collect()
	}

	pub fn frame_operator(&self) -> FrameOperator {
		let v = self.vectors_f64();
		let d = self.dim();
		let approximate: Vec<Vec<f64>> =
			(0..d).map(|j| (0..d).map(|l| v.iter().map(|x| x[j] * x[l]).sum()).collect()).collect();
		let exact = self.exact_parts().map(|(c, surds)| (c.transpose().mul(c), surds.to_vec()));
		FrameOperator { exact, approximate }
	}

	/// `tr S`, which equals `Σ‖v_i‖²`.
	pub fn trace(&self) -> Option<Rat> {
		let (s, surds) = self.frame_operator().exact?;
		Some(surds.iter().enumerate().map(|(j, &d)| &s[(j, j)] / rat_from_int(&int(d as i64))).sum())
	}

	/// `α` with `S = α I`, if the frame is tight.
	pub fn tight_constant(&self) -> Option<TightConstant> {
		let op = self.frame_operator();
		if let Some((s, surds)) = &op.exact {
			let d = surds.len();
			for j in 0..d {
				for l in 0..d {
					if j != l && !s[(j, l)].is_zero() {
						return None;
					}
				}
			}
			let alpha = &s[(0, 0)] / rat_from_int(&int(surds[0] as i64));
			return (1..d)
				.all(|j| &s[(j, j)] / rat_from_int(&int(surds[j] as i64)) == alpha)
				.then_some(TightConstant::Exact(alpha));
		}
		let d = self.dim();
		let alpha = op.trace_f64() / d as f64;
		let ok = (0..d).all(|j| {
			(0..d).all(|l| {
				let target = if j == l { alpha } else { 0.0 };
				(op.approximate[j][l] - target).abs() <= FLOAT_TOLERANCE
			})
		});
		ok.then_some(TightConstant::Approximate(alpha))
	}

	pub fn is_tight(&self) -> bool {
		self.tight_constant().is_some()
	}

	/// Multiplies every vector by `sqrt(r)`.
	pub fn scale_sqrt(&self, r: &Rat) -> Result<Frame> {
		if !r.is_positive() {
			return Err(Error::BadParameters("scale must be positive".into()));
		}
		match &self.repr {
			Repr::Exact { coeffs, surds } => {
				let mut out = coeffs.clone();
				let mut new_surds = Vec::with_capacity(surds.len());
				for (j, &dj) in surds.iter().enumerate() {
					let (p, q) = (r.numer().clone(), r.denom().clone());
					let (s, dn) = square_free_part(&(&p * &q * int(dj as i64)))?;
					let factor = Rat::new(s * int(dn as i64), q * int(dj as i64));
					for i in 0..out.rows() {
						out[(i, j)] = &out[(i, j)] * &factor;
					}
					new_surds.push(dn);
				}
				Frame::exact(out, new_surds)
			}
			Repr::Approximate { rows, .. } => {
				let f = rat_to_f64(r).sqrt();
				Frame::approximate(rows.iter().map(|v| v.iter().map(|x| x * f).collect()).collect())
			}
		}
	}

	/// Scales a tight frame to be 1-tight.
	pub fn normalized(&self) -> Result<Frame> {
		match self.tight_constant().ok_or(Error::NotTight)? {
			TightConstant::Exact(a) => self.scale_sqrt(&a.recip()),
			TightConstant::Approximate(a) => {
				let f = 1.0 / a.sqrt();
				Frame::approximate(self.vectors_f64().iter().map(|v| v.iter().map(|x| x * f).collect()).collect())
			}
		}
	}

	/// Applies `v -> M v`; stays exact when `M` only mixes axes with equal surds.
	pub fn transform(&self, m: &RatMatrix) -> Result<Frame> {
		let d = self.dim();
		if m.rows() != d || m.cols() != d {
			return Err(Error::DimensionMismatch("transform must be d x d".into()));
		}
		if let Some((c, surds)) = self.exact_parts() {
			let compatible = (0..d).all(|j| (0..d).all(|l| m[(j, l)].is_zero() || surds[j] == surds[l]));
			if compatible {
				return Frame::exact(c.mul(&m.transpose()), surds.to_vec());
			}
		}
		let mf: Vec<Vec<f64>> = m.to_rows().iter().map(|r| r.iter().map(rat_to_f64).collect()).collect();
		let rows = self
			.vectors_f64()
			.iter()
			.map(|v| (0..d).map(|j| dot_f64(&mf[j], v)).collect())
			.collect();
		Frame::approximate(rows)
	}

	/// Reorders the vectors: result `i` is input `perm[i]`.
	pub fn permuted(&self, perm: &[usize]) -> Frame {
		let repr = match &self.repr {
			Repr::Exact { coeffs, surds } => Repr::Exact { coeffs: coeffs.select_rows(perm), surds: surds.clone() },
			Repr::Approximate { rows, dim } => {
				Repr::Approximate { rows: perm.iter().map(|&i| rows[i].clone()).collect(), dim: *dim }
			}
		};
		Frame { repr }
	}

	/// Multiplies vector `i` by the rational `r`.
	pub fn with_vector_scaled(&self, i: usize, r: &Rat) -> Result<Frame> {
		match &self.repr {
			Repr::Exact { coeffs, surds } => {
				let mut c = coeffs.clone();
				for j in 0..c.cols() {
					c[(i, j)] = &c[(i, j)] * r;
				}
				Frame::exact(c, surds.clone())
			}
			Repr::Approximate { rows, .. } => {
				let mut rows = rows.clone();
				rows[i].iter_mut().for_each(|x| *x *= rat_to_f64(r));
				Frame::approximate(rows)
			}
		}
	}

	/// The integer relation module `ker ρ ∩ Z^N`.
	pub fn vanishing_group(&self) -> Result<IntLattice> {
		if !self.is_crystallographic() {
			return Err(Error::NotCrystallographic);
		}
		let (c, _) = self.require_exact()?;
		Ok(integer_kernel(&axis_rows(c)))
	}

	pub fn period_lattice(&self) -> Result<PeriodLattice> {
		if !self.is_crystallographic() {
			return Err(Error::NotCrystallographic);
		}
		let (c, surds) = self.require_exact()?;
		let rows: Vec<Vec<Rat>> = c.to_rows();
		period_lattice_of(&rows, surds)
	}

	/// Whether the Gram matrix is a real multiple of a rational matrix.
	pub fn is_crystallographic(&self) -> bool {
		if let Some(g) = self.gram_exact() {
			return g.rows() > 0;
		}
		essentially_rational(&self.gram_f64())
	}

	pub fn naimark_check(&self) -> bool {
		if let Some(g) = self.gram_exact() {
			return g.mul(&g) == g && g.rank() == self.dim();
		}
		let g = self.gram_f64();
		let n = g.len();
		let idempotent = (0..n).all(|i| {
			(0..n).all(|k| ((0..n).map(|j| g[i][j] * g[j][k]).sum::<f64>() - g[i][k]).abs() <= FLOAT_TOLERANCE)
		});
		let trace: f64 = (0..n).map(|i| g[i][i]).sum();
		idempotent && (trace - self.dim() as f64).abs() <= FLOAT_TOLERANCE
	}

	pub fn minimal_energy_gap(&self) -> Result<EnergyGap> {
		let h = self.vanishing_group()?;
		let period = self.period_lattice()?;
		let d = self.dim() as u32;
		let sum_of_squares = self.trace().ok_or(Error::NotExact)?;
		let height_squared = h.covolume_squared();
		let lhs_power = rat_pow(&sum_of_squares, d);
		let rhs_power = rat_pow(&Rat::from_integer(int(d as i64)), d)
			* &period.volume_squared
			* rat_from_int(&height_squared);
		Ok(EnergyGap {
			equality: lhs_power == rhs_power,
			sum_of_squares,
			volume_squared: period.volume_squared,
			height_squared,
			lhs_power,
			rhs_power,
		})
	}

	pub fn automorphism_group(&self, limit: usize) -> Result<AutomorphismGroup> {
		let n = self.size();
		if n > limit {
			return Err(Error::SizeTooLarge { size: n, limit });
		}
		let (c, _) = self.require_exact()?;
		if !self.is_tight() {
			return Err(Error::NotTight);
		}
		let m = to_i128(&axis_rows(c))?;
		let w: Vec<Vec<i128>> = integer_kernel(&axis_rows(c))
			.basis_vectors()
			.iter()
			.map(|v| v.iter().map(|x| i128::try_from(x).map_err(|_| Error::InputTooLarge("relation".into()))).collect())
			.collect::<Result<_>>()?;
		let mut perms = Vec::new();
		let mut p: Vec<usize> = (0..n).collect();
		loop {
			let keeps = w.iter().all(|wv| m.iter().all(|row| (0..n).map(|i| row[p[i]] * wv[i]).sum::<i128>() == 0));
			if keeps {
				perms.push(p.clone());
			}
			if !next_permutation(&mut p) {
				break;
			}
		}
		let mut reached = vec![false; n];
		for q in &perms {
			reached[q[0]] = true;
		}
		let factorial: usize = (1..=n).product();
		Ok(AutomorphismGroup {
			isotropic: reached.iter().all(|&r| r),
			strongly_isotropic: perms.len() == factorial,
			permutations: perms,
		})
	}
}

/// Exact congruence: equal Gram matrices.
pub fn congruent(f1: &Frame, f2: &Frame) -> Result<bool> {
	if f1.size() != f2.size() || f1.dim() != f2.dim() {
		return Err(Error::DimensionMismatch("frames differ in size or dimension".into()));
	}
	if let (Some(a), Some(b)) = (f1.gram_exact(), f2.gram_exact()) {
		return Ok(a == b);
	}
	let (a, b) = (f1.gram_f64(), f2.gram_f64());
	Ok(a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| (x - y).abs() <= FLOAT_TOLERANCE))
}

/// Concatenation of two frames in the same space.
pub fn join(f1: &Frame, f2: &Frame) -> Result<Frame> {
	if f1.dim() != f2.dim() {
		return Err(Error::DimensionMismatch(format!("dimensions {} and {}", f1.dim(), f2.dim())));
	}
	if let (Some((c1, s1)), Some((c2, s2))) = (f1.exact_parts(), f2.exact_parts()) {
		if s1 == s2 {
			let mut rows = c1.to_rows();
			rows.extend(c2.to_rows());
			return Frame::exact(RatMatrix::from_rows(rows), s1.to_vec());
		}
	}
	let mut rows = f1.vectors_f64();
	rows.extend(f2.vectors_f64());
	Frame::approximate(rows)
}

/// Whether the period lattices of two frames are commensurable.
pub fn periods_commensurable(f1: &Frame, f2: &Frame) -> Result<bool> {
	if f1.dim() != f2.dim() {
		return Err(Error::DimensionMismatch(format!("dimensions {} and {}", f1.dim(), f2.dim())));
	}
	match (f1.exact_parts(), f2.exact_parts()) {
		(Some((c1, s1)), Some((c2, s2))) => {
			if s1 != s2 {
				// some axis is rational over different square classes
				return Ok(false);
			}
			let l = denominator_lcm(c1.to_rows().iter().flatten().chain(c2.to_rows().iter().flatten()));
			let lift = |c: &RatMatrix| {
				IntLattice::from_generators(&c.scale(&rat_from_int(&l)).transpose().to_int().expect("cleared"))
			};
			Ok(lattice_sum_intersection(&lift(c1), &lift(c2))?.commensurable)
		}
		_ => Ok(join(f1, f2)?.is_crystallographic()),
	}
}

/// The unique 1-tight frame with vanishing group `h`, from an orthogonal basis of `h^⊥`.
pub fn frame_from_summand(h: &IntLattice, d: usize) -> Result<Frame> {
	let n = h.ambient();
	if h.rank() + d != n {
		return Err(Error::InvalidRank(format!("summand of rank {} in Z^{n} cannot give dimension {d}", h.rank())));
	}
	if !h.is_summand() {
		return Err(Error::NotASummand);
	}
	let complement = orth_complement_int(h);
	let ortho = gram_schmidt_integral(&complement.basis_vectors(), None);
	let mut coeffs = RatMatrix::zeros(n, d);
	let mut surds = Vec::with_capacity(d);
	for (j, v) in ortho.iter().enumerate() {
		let norm: Int = v.iter().map(|x| x * x).sum();
		let (m, dj) = square_free_part(&norm)?;
		for i in 0..n {
			coeffs[(i, j)] = Rat::new(v[i].clone(), m.clone());
		}
		surds.push(dj);
	}
	Frame::exact(coeffs, surds)
}

/// Rational Gram-Schmidt of integer vectors under `metric` (standard when `None`),
/// each output scaled to a primitive integer vector.
pub fn gram_schmidt_integral(vectors: &[Vec<Int>], metric: Option<&IntMatrix>) -> Vec<Vec<Int>> {
	let form = |a: &[Rat], b: &[Rat]| -> Rat {
		match metric {
			None => crate::arith::dot_rat(a, b),
			Some(g) => {
				let gb = g.to_rat().mul_vec(b);
				crate::arith::dot_rat(a, &gb)
			}
		}
	};
	let mut done: Vec<Vec<Rat>> = Vec::new();
	let mut out = Vec::new();
	for v in vectors {
		let mut w: Vec<Rat> = v.iter().map(rat_from_int).collect();
		for u in &done {
			let f = form(&w, u) / form(u, u);
			for (wi, ui) in w.iter_mut().zip(u) {
				*wi -= &f * ui;
			}
		}
		if w.iter().all(Zero::is_zero) {
			continue;
		}
		let (ints, _) = clear_denominators(&w);
		let prim = crate::arith::primitive(&ints);
		// keep the orientation of the input vector
		let flip = crate::arith::dot_rat(&w, &prim.iter().map(rat_from_int).collect::<Vec<_>>()).is_negative();
		let prim: Vec<Int> = if flip { prim.iter().map(|x| -x.clone()).collect() } else { prim };
		done.push(prim.iter().map(rat_from_int).collect());
		out.push(prim);
	}
	out
}

/// Per-axis integer rows: row `j` is axis `j` of every vector with denominators cleared.
fn axis_rows(c: &RatMatrix) -> IntMatrix {
	let rows: Vec<Vec<Int>> = c.columns().iter().map(|col| clear_denominators(col).0).collect();
	IntMatrix::from_rows(rows)
}

fn to_i128(m: &IntMatrix) -> Result<Vec<Vec<i128>>> {
	m.to_rows()
		.iter()
		.map(|r| r.iter().map(|x| i128::try_from(x).map_err(|_| Error::InputTooLarge("entry".into()))).collect())
		.collect()
}

/// Period lattice generated by coefficient rows over the given surds.
pub(crate) fn period_lattice_of(rows: &[Vec<Rat>], surds: &[u64]) -> Result<PeriodLattice> {
	let d = surds.len();
	let scale = denominator_lcm(rows.iter().flatten());
	let s = rat_from_int(&scale);
	let gens: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|x| (x * &s).to_integer()).collect()).collect();
	let lattice = IntLattice::from_vectors(d, &gens);
	if lattice.rank() < d {
		return Err(Error::DegeneratePeriodLattice);
	}
	let basis = lattice.basis().clone();
	let mut gram = RatMatrix::zeros(d, d);
	let s2 = &s * &s;
	for a in 0..d {
		for b in 0..d {
			let mut acc = Rat::zero();
			for (j, &dj) in surds.iter().enumerate() {
				acc += rat_from_int(&(&basis[(j, a)] * &basis[(j, b)])) / rat_from_int(&int(dj as i64));
			}
			gram[(a, b)] = acc / &s2;
		}
	}
	let volume_squared = gram.det();
	Ok(PeriodLattice { scale, basis, surds: surds.to_vec(), gram, volume_squared })
}

fn dot_f64(a: &[f64], b: &[f64]) -> f64 {
	a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Best rational approximation with bounded denominator, if within `tol`.
fn approx_rational(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
	let (mut h0, mut h1) = (0i64, 1i64);
	let (mut k0, mut k1) = (1i64, 0i64);
	let mut r = x;
	for _ in 0..64 {
		let a = r.floor();
		if a.abs() > 1e15 {
			break;
		}
		let a = a as i64;
		let (h2, k2) = (a * h1 + h0, a * k1 + k0);
		if k2 > max_den {
			break;
		}
		(h0, h1, k0, k1) = (h1, h2, k1, k2);
		if (x - h1 as f64 / k1 as f64).abs() <= tol {
			return Some((h1, k1));
		}
		let frac = r - a as f64;
		if frac.abs() < 1e-15 {
			break;
		}
		r = 1.0 / frac;
	}
	None
}

/// Floating-point test for `G ∈ λ Q^{N x N}` with denominators up to 1000.
fn essentially_rational(g: &[Vec<f64>]) -> bool {
	let Some(reference) = g.iter().flatten().copied().filter(|x| x.abs() > FLOAT_TOLERANCE).reduce(|a, b| {
		if b.abs() > a.abs() {
			b
		} else {
			a
		}
	}) else {
		return false;
	};
	g.iter()
		.flatten()
		.all(|&x| x.abs() <= FLOAT_TOLERANCE || approx_rational(x / reference, 1000, FLOAT_TOLERANCE).is_some())
}

fn next_permutation(p: &mut [usize]) -> bool {
	let n = p.len();
	if n < 2 {
		return false;
	}
	let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
		return false;
	};
	let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
	p.swap(i, j);
	p[i + 1..].reverse();
	true
}

#[cfg(test)]
mod tests;
