//! Integer lattices, summands and their finite quotients.

mod enumerate;
mod normal_form;

pub use enumerate::{
	count_rank1_summands, enumerate_summands, enumerate_summands_with_gram, rank1_asymptotic,
	EnumerationLimits, RankedSummand,
};
pub use normal_form::{column_hermite, smith, ColumnHermite, Smith};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, Int};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Subgroup of `Z^n` stored by its canonical column Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntLattice {
	ambient: usize,
	basis: IntMatrix,
}

impl IntLattice {
	/// Lattice generated by the columns of `generators`.
	pub fn from_generators(generators: &IntMatrix) -> Self {
		let hf = column_hermite(generators);
		let cols: Vec<usize> = (0..hf.rank()).collect();
		IntLattice { ambient: generators.rows(), basis: hf.h.select_cols(&cols) }
	}

	pub fn from_vectors(ambient: usize, vectors: &[Vec<Int>]) -> Self {
		Self::from_generators(&IntMatrix::from_columns(ambient, vectors))
	}

	pub fn zero(ambient: usize) -> Self {
		IntLattice { ambient, basis: IntMatrix::zeros(ambient, 0) }
	}

	pub fn full(ambient: usize) -> Self {
		IntLattice { ambient, basis: IntMatrix::identity(ambient) }
	}

	pub fn ambient(&self) -> usize {
		self.ambient
	}

	pub fn rank(&self) -> usize {
		self.basis.cols()
	}

	/// Canonical basis, one column per generator.
	pub fn basis(&self) -> &IntMatrix {
		&self.basis
	}

	pub fn basis_vectors(&self) -> Vec<Vec<Int>> {
		self.basis.columns()
	}

	pub fn gram(&self) -> IntMatrix {
		self.basis.gram()
	}

	/// Squared covolume under the standard inner product.
	pub fn covolume_squared(&self) -> Int {
		self.gram().det()
	}

	/// Squared covolume under the inner product with matrix `metric`.
	pub fn covolume_squared_with(&self, metric: &IntMatrix) -> Int {
		self.basis.transpose().mul(metric).mul(&self.basis).det()
	}

	pub fn contains(&self, v: &[Int]) -> bool {
		let ext = self.basis.hcat(&IntMatrix::from_columns(self.ambient, &[v.to_vec()]));
		IntLattice::from_generators(&ext) == *self
	}

	pub fn is_summand(&self) -> bool {
		saturate(self) == *self
	}

	/// Smallest summand containing the lattice.
	pub fn saturation(&self) -> IntLattice {
		saturate(self)
	}
}

/// `L_Q ∩ Z^n`.
pub fn saturate(l: &IntLattice) -> IntLattice {
	orth_complement_int(&orth_complement_int(l))
}

/// Integer kernel of `a`, always a summand of `Z^cols`.
pub fn integer_kernel(a: &IntMatrix) -> IntLattice {
	let hf = column_hermite(a);
	let free: Vec<usize> = (hf.rank()..a.cols()).collect();
	IntLattice::from_generators(&hf.u.select_cols(&free))
}

/// `{x in Z^n : <x, h> = 0 for all h in H}`.
pub fn orth_complement_int(h: &IntLattice) -> IntLattice {
	if h.rank() == 0 {
		return IntLattice::full(h.ambient);
	}
	integer_kernel(&h.basis.transpose())
}

/// Orthogonal complement under a symmetric integer form.
pub fn orth_complement_with(h: &IntLattice, metric: &IntMatrix) -> IntLattice {
	if h.rank() == 0 {
		return IntLattice::full(h.ambient);
	}
	integer_kernel(&h.basis.transpose().mul(metric))
}

/// `L1 + L2`.
pub fn lattice_sum(l1: &IntLattice, l2: &IntLattice) -> Result<IntLattice> {
	check_ambient(l1, l2)?;
	Ok(IntLattice::from_generators(&l1.basis.hcat(&l2.basis)))
}

/// `L1 ∩ L2`.
pub fn lattice_intersection(l1: &IntLattice, l2: &IntLattice) -> Result<IntLattice> {
	check_ambient(l1, l2)?;
	let (k1, k2) = (l1.rank(), l2.rank());
	if k1 == 0 || k2 == 0 {
		return Ok(IntLattice::zero(l1.ambient));
	}
	let neg = l2.basis.map(|v| -v.clone());
	let ker = integer_kernel(&l1.basis.hcat(&neg));
	let coeffs = ker.basis.select_rows(&(0..k1).collect::<Vec<_>>());
	Ok(IntLattice::from_generators(&l1.basis.mul(&coeffs)))
}

/// Sum, intersection and commensurability of two lattices.
#[derive(Clone, Debug)]
pub struct SumIntersection {
	pub sum: IntLattice,
	pub intersection: IntLattice,
	pub commensurable: bool,
}

pub fn lattice_sum_intersection(l1: &IntLattice, l2: &IntLattice) -> Result<SumIntersection> {
	let sum = lattice_sum(l1, l2)?;
	let intersection = lattice_intersection(l1, l2)?;
	let commensurable =
		l1.rank() == l2.rank() && sum.rank() == l1.rank() && intersection.rank() == l1.rank();
	Ok(SumIntersection { sum, intersection, commensurable })
}

/// Index `[outer : inner]` of a full-rank sublattice, or `None` when not of finite index.
pub fn index_in(inner: &IntLattice, outer: &IntLattice) -> Option<Int> {
	if inner.rank() != outer.rank() || lattice_sum(inner, outer).ok()? != *outer {
		return None;
	}
	let vi = inner.covolume_squared();
	let vo = outer.covolume_squared();
	if vo.is_zero() || !vi.is_multiple_of(&vo) {
		return None;
	}
	crate::arith::exact_sqrt(&(vi / vo))
}

fn check_ambient(l1: &IntLattice, l2: &IntLattice) -> Result<()> {
	if l1.ambient != l2.ambient {
		return Err(Error::DimensionMismatch(format!(
			"ambient ranks {} and {}",
			l1.ambient, l2.ambient
		)));
	}
	Ok(())
}

/// Invariant factors `d_1 | d_2 | ...` of a finite abelian group, units included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
	#[serde(with = "crate::arith::serde_int::vec")]
	factors: Vec<Int>,
}

impl AbelianInvariants {
	pub fn new(factors: Vec<Int>) -> Result<Self> {
		if factors.iter().any(|f| !f.is_positive()) {
			return Err(Error::InvalidRank("invariant factors must be positive".into()));
		}
		if factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
			return Err(Error::InvalidRank("invariant factors must form a divisibility chain".into()));
		}
		Ok(AbelianInvariants { factors })
	}

	pub fn factors(&self) -> &[Int] {
		&self.factors
	}

	/// Factors greater than one.
	pub fn nontrivial(&self) -> Vec<Int> {
		self.factors.iter().filter(|f| !f.is_one()).cloned().collect()
	}

	pub fn order(&self) -> Int {
		self.factors.iter().product()
	}

	pub fn is_trivial(&self) -> bool {
		self.factors.iter().all(One::is_one)
	}

	/// Same group up to isomorphism.
	pub fn isomorphic(&self, other: &Self) -> bool {
		self.nontrivial() == other.nontrivial()
	}

	pub fn factors_u64(&self) -> Vec<u64> {
		self.factors.iter().map(|f| f.to_u64().unwrap_or(u64::MAX)).collect()
	}
}

impl std::fmt::Display for AbelianInvariants {
	fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
		let nt = self.nontrivial();
		if nt.is_empty() {
			return write!(f, "0");
		}
		let parts: Vec<String> = nt.iter().map(|d| format!("Z/{d}")).collect();
		write!(f, "{}", parts.join(" + "))
	}
}

/// `H^#/H` computed from the Smith form of the Gram matrix of `basis`.
pub fn dual_quotient(basis: &IntMatrix) -> Result<AbelianInvariants> {
	dual_quotient_with(basis, &IntMatrix::identity(basis.rows()))
}

/// `H^#/H` under the inner product with matrix `metric`.
pub fn dual_quotient_with(basis: &IntMatrix, metric: &IntMatrix) -> Result<AbelianInvariants> {
	let gram = basis.transpose().mul(metric).mul(basis);
	if gram.det().is_zero() {
		return Err(Error::NotFullColumnRank);
	}
	AbelianInvariants::new(smith(&gram).diagonal)
}

/// Invariants of `Z^n / L` for a full-rank `L`.
pub fn finite_quotient(l: &IntLattice) -> Result<AbelianInvariants> {
	if l.rank() != l.ambient {
		return Err(Error::NotFullColumnRank);
	}
	AbelianInvariants::new(smith(&l.basis).diagonal)
}

/// Writes `n = m^2 D` with `D` square-free; returns `(m, D)`.
pub fn square_free_part(n: &Int) -> Result<(Int, u64)> {
	if !n.is_positive() {
		return Err(Error::InputTooLarge(format!("{n} is not a positive integer")));
	}
	let Some(v) = n.to_u128() else {
		return Err(Error::InputTooLarge(format!("{n} exceeds 128 bits")));
	};
	let mut m = Int::one();
	let mut core: u128 = 1;
	for (p, e) in num_prime::nt_funcs::factorize128(v) {
		m *= Int::from(p).pow(e as u32 / 2);
		if e % 2 == 1 {
			core *= p;
		}
	}
	let core = u64::try_from(core).map_err(|_| Error::InputTooLarge(format!("square-free part of {n} exceeds 64 bits")))?;
	Ok((m, core))
}

pub fn is_square_free(n: u64) -> bool {
	n > 0 && square_free_part(&int(n as i64)).map_or(false, |(m, _)| m.is_one())
}

#[cfg(test)]
mod tests {
	use super::*;

	fn lat(ambient: usize, vs: &[&[i64]]) -> IntLattice {
		IntLattice::from_vectors(ambient, &vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
	}

	#[test]
	fn dual_quotient_examples() {
		let h = IntMatrix::from_i64(&[vec![1], vec![0], vec![0]]);
		assert!(dual_quotient(&h).unwrap().is_trivial());
		let h = IntMatrix::from_i64(&[vec![1], vec![1], vec![1]]);
		assert_eq!(dual_quotient(&h).unwrap().nontrivial(), vec![int(3)]);
		let g = IntMatrix::from_i64(&[vec![2, 0], vec![0, 6]]);
		let sm = smith(&g);
		assert_eq!(sm.diagonal, vec![int(2), int(6)]);
		let dep = IntMatrix::from_i64(&[vec![1, 2], vec![1, 2]]);
		assert_eq!(dual_quotient(&dep), Err(Error::NotFullColumnRank));
	}

	#[test]
	fn saturation_and_complement() {
		let l = lat(3, &[&[2, 2, 0]]);
		assert!(!l.is_summand());
		assert_eq!(l.saturation(), lat(3, &[&[1, 1, 0]]));
		let h = lat(3, &[&[1, 1, 1]]);
		let c = orth_complement_int(&h);
		assert_eq!(c.rank(), 2);
		assert_eq!(orth_complement_int(&c), h);
		for v in c.basis_vectors() {
			assert_eq!(v.iter().sum::<Int>(), int(0));
		}
	}

	#[test]
	fn complement_quotient_matches_dual_quotient() {
		let h = lat(4, &[&[1, 2, 0, 1], &[0, 1, 3, -1]]).saturation();
		let c = orth_complement_int(&h);
		let both = lattice_sum(&h, &c).unwrap();
		let q = finite_quotient(&both).unwrap();
		assert!(q.isomorphic(&dual_quotient(h.basis()).unwrap()));
	}

	#[test]
	fn sum_and_intersection() {
		let a = lat(2, &[&[2, 0], &[0, 1]]);
		let b = lat(2, &[&[1, 0], &[0, 3]]);
		let si = lattice_sum_intersection(&a, &b).unwrap();
		assert_eq!(si.sum, IntLattice::full(2));
		assert_eq!(si.intersection, lat(2, &[&[2, 0], &[0, 3]]));
		assert!(si.commensurable);
		let line = lat(2, &[&[1, 0]]);
		assert!(!lattice_sum_intersection(&a, &line).unwrap().commensurable);
		assert_eq!(index_in(&si.intersection, &a), Some(int(3)));
	}

	#[test]
	fn square_free_examples() {
		assert_eq!(square_free_part(&int(12)).unwrap(), (int(2), 3));
		assert_eq!(square_free_part(&int(1)).unwrap(), (int(1), 1));
		assert_eq!(square_free_part(&int(49 * 5)).unwrap(), (int(7), 5));
		assert_eq!(square_free_part(&int(999_983)).unwrap(), (int(1), 999_983));
		assert!(square_free_part(&int(0)).is_err());
		assert_eq!(square_free_part(&int(10).pow(13)).unwrap(), (int(10).pow(6), 10));
		let p = int(1_000_000_007);
		assert_eq!(square_free_part(&(&p * &p * int(3945))).unwrap(), (p, 3945));
		assert!(square_free_part(&int(2).pow(130)).is_err());
		assert!(is_square_free(30) && !is_square_free(18));
	}

	#[test]
	fn invariants_validation() {
		assert!(AbelianInvariants::new(vec![int(2), int(3)]).is_err());
		let a = AbelianInvariants::new(vec![int(1), int(4), int(4)]).unwrap();
		assert_eq!(a.order(), int(16));
		assert_eq!(a.to_string(), "Z/4 + Z/4");
	}

	mod props {
		use super::*;
		use proptest::prelude::*;

		fn generators() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
			(2usize..6).prop_flat_map(|n| {
				(Just(n), proptest::collection::vec(proptest::collection::vec(-4i64..5, n), 1..n))
			})
		}

		proptest! {
			#[test]
			fn double_complement_of_summand((n, gens) in generators()) {
				let vs: Vec<Vec<Int>> = gens.iter().map(|g| g.iter().map(|&x| int(x)).collect()).collect();
				let h = IntLattice::from_vectors(n, &vs).saturation();
				prop_assert!(h.is_summand());
				let c = orth_complement_int(&h);
				prop_assert_eq!(c.rank() + h.rank(), n);
				prop_assert_eq!(orth_complement_int(&c), h.clone());
				if h.rank() > 0 && c.rank() > 0 {
					prop_assert_eq!(h.covolume_squared(), c.covolume_squared());
					let q = finite_quotient(&lattice_sum(&h, &c).unwrap()).unwrap();
					prop_assert!(q.isomorphic(&dual_quotient(h.basis()).unwrap()));
				}
			}

			#[test]
			fn dual_quotient_order_is_gram_determinant((n, gens) in generators()) {
				let vs: Vec<Vec<Int>> = gens.iter().map(|g| g.iter().map(|&x| int(x)).collect()).collect();
				let h = IntLattice::from_vectors(n, &vs);
				prop_assume!(h.rank() > 0);
				let q = dual_quotient(h.basis()).unwrap();
				prop_assert_eq!(q.order(), h.covolume_squared());
			}
		}
	}
}
