//! The Jacobian `H_1^#/H_1` of a finite graph, its Picard group, and the Abel–Jacobi and
//! Albanese maps between them.
//!
//! An element of `H_1^#` is stored by its coordinates `x` over the cycle basis, so that
//! `A x` is integral for the cycle Gram matrix `A`. With `P A Q = D` in Smith form, the
//! class of `x` has canonical coordinates `(P A x)_i mod d_i`.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{format_rational, rat_from_int, Int, Rat};
use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, FiniteGraph, HomologyBasis};
use crate::lattice::{smith, AbelianInvariants, IntLattice, Smith};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::nets::{harmonic_cochain_v0, HomologyCochain};

#[derive(Clone, Debug)]
pub struct JacobianData {
	/// Smith diagonal of the cycle Gram matrix, units included.
	pub invariants: AbelianInvariants,
	pub gram: IntMatrix,
	/// `(P, Q)` with `P A Q` diagonal.
	pub snf_transforms: (IntMatrix, IntMatrix),
	pub kappa: Int,
}

/// A degree-zero divisor and its class in `Pic`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
	#[serde(with = "crate::arith::serde_int::vec")]
	pub representative: Vec<Int>,
	/// Coordinates over the nontrivial Smith factors of the reduced Laplacian.
	#[serde(with = "crate::arith::serde_int::vec")]
	pub canonical_form: Vec<Int>,
}

/// A class in `H_1^#/H_1`, reduced to `[0,1)` in every cycle coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JacobianElement {
	#[serde(with = "crate::arith::serde_rat::vec")]
	pub coords: Vec<Rat>,
}

fn frac(r: &Rat) -> Rat {
	r - r.floor()
}

impl JacobianElement {
	pub fn zero(b: usize) -> Self {
		JacobianElement { coords: vec![Rat::zero(); b] }
	}

	pub fn reduce(coords: Vec<Rat>) -> Self {
		JacobianElement { coords: coords.iter().map(frac).collect() }
	}

	pub fn is_zero(&self) -> bool {
		self.coords.iter().all(Zero::is_zero)
	}

	pub fn add(&self, other: &Self) -> Self {
		Self::reduce(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
	}

	pub fn neg(&self) -> Self {
		Self::reduce(self.coords.iter().map(|a| -a).collect())
	}

	pub fn times(&self, k: &Int) -> Self {
		let k = rat_from_int(k);
		Self::reduce(self.coords.iter().map(|a| a * &k).collect())
	}

	/// Smallest `k > 0` with `k x = 0`.
	pub fn order(&self) -> Int {
		self.coords.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()))
	}
}

fn mod_pos(a: &Int, m: &Int) -> Int {
	a.mod_floor(m)
}

/// Everything needed to move between divisors, cycle coordinates and canonical forms.
#[derive(Clone, Debug)]
pub struct JacobianContext {
	graph: FiniteGraph,
	basis: HomologyBasis,
	data: JacobianData,
	v0: HomologyCochain,
	gram_inverse: RatMatrix,
	p_inverse: RatMatrix,
	laplacian_smith: Smith,
	laplacian_p_inverse: IntMatrix,
}

impl JacobianContext {
	pub fn new(g: &FiniteGraph) -> Self {
		let basis = g.homology_basis();
		let gram = basis.gram.clone();
		let s = smith(&gram);
		let invariants = AbelianInvariants::new(s.diagonal.clone()).expect("cycle Gram matrix is nonsingular");
		let kappa = g.tree_number();
		assert_eq!(invariants.order(), kappa, "Jacobian order differs from the tree number");
		let gram_inverse = gram.to_rat().inverse().expect("cycle Gram matrix is nonsingular");
		let p_inverse = s.p.to_rat().inverse().expect("unimodular");
		let laplacian_smith = smith(&g.reduced_laplacian());
		let laplacian_p_inverse =
			laplacian_smith.p.to_rat().inverse().and_then(|m| m.to_int()).expect("unimodular");
		JacobianContext {
			graph: g.clone(),
			v0: harmonic_cochain_v0(g),
			data: JacobianData { invariants, gram, snf_transforms: (s.p, s.q), kappa },
			basis,
			gram_inverse,
			p_inverse,
			laplacian_smith,
			laplacian_p_inverse,
		}
	}

	pub fn data(&self) -> &JacobianData {
		&self.data
	}

	pub fn graph(&self) -> &FiniteGraph {
		&self.graph
	}

	pub fn betti(&self) -> usize {
		self.basis.rank()
	}

	/// Smith factors of the reduced Laplacian, units included.
	pub fn picard_invariants(&self) -> AbelianInvariants {
		AbelianInvariants::new(self.laplacian_smith.diagonal.clone()).expect("reduced Laplacian is nonsingular")
	}

	fn check_vertex(&self, x: usize) -> Result<()> {
		let n = self.graph.vertex_count();
		if x >= n {
			return Err(Error::BadVertex { vertex: x, vertices: n });
		}
		Ok(())
	}

	fn jacobian_nontrivial(&self) -> Vec<usize> {
		nontrivial_indices(&self.data.invariants)
	}

	fn picard_nontrivial(&self) -> Vec<usize> {
		nontrivial_indices(&self.picard_invariants())
	}

	/// Class of a degree-zero divisor.
	pub fn divisor_class(&self, divisor: &[Int]) -> Result<DivisorClass> {
		let n = self.graph.vertex_count();
		if divisor.len() != n {
			return Err(Error::DimensionMismatch(format!("divisor of length {} on {n} vertices", divisor.len())));
		}
		if !divisor.iter().sum::<Int>().is_zero() {
			return Err(Error::BadParameters("divisor has nonzero degree".into()));
		}
		// a degree-zero divisor is determined by its entries away from vertex 0
		let y = self.laplacian_smith.p.mul_vec(&divisor[1..]);
		let d = &self.laplacian_smith.diagonal;
		let canonical_form = self.picard_nontrivial().into_iter().map(|i| mod_pos(&y[i], &d[i])).collect();
		Ok(DivisorClass { representative: divisor.to_vec(), canonical_form })
	}

	/// Class of `x - x0`.
	pub fn abel_jacobi(&self, x: usize, x0: usize) -> Result<DivisorClass> {
		self.check_vertex(x)?;
		self.check_vertex(x0)?;
		let mut divisor = vec![Int::zero(); self.graph.vertex_count()];
		divisor[x] += 1;
		divisor[x0] -= 1;
		self.divisor_class(&divisor)
	}

	/// Image of an edge chain under `e -> v0(e)`.
	pub fn chain_image(&self, chain: &[Int]) -> JacobianElement {
		let b = self.betti();
		let mut out = vec![Rat::zero(); b];
		for (e, c) in chain.iter().enumerate() {
			if c.is_zero() {
				continue;
			}
			let c = rat_from_int(c);
			for (o, v) in out.iter_mut().zip(self.v0.coords.row(e)) {
				*o += &c * v;
			}
		}
		JacobianElement::reduce(out)
	}

	/// Sum of `v0` along a walk.
	pub fn albanese_along(&self, walk: &[DirectedEdge]) -> Result<JacobianElement> {
		Ok(self.chain_image(&self.graph.walk_chain(walk)?))
	}

	/// Albanese image of `x`, summed along the tree path from `x0`.
	pub fn albanese(&self, x: usize, x0: usize) -> Result<JacobianElement> {
		self.check_vertex(x)?;
		self.check_vertex(x0)?;
		self.albanese_along(&self.basis.tree_walk(&self.graph, x0, x))
	}

	/// Lifts a divisor to the chain of root paths and maps it through `v0`.
	fn phi_of_divisor(&self, divisor: &[Int]) -> JacobianElement {
		let mut chain = vec![Int::zero(); self.graph.edge_count()];
		for (x, n) in divisor.iter().enumerate() {
			for (c, p) in chain.iter_mut().zip(&self.basis.root_paths[x]) {
				*c += n * p;
			}
		}
		self.chain_image(&chain)
	}

	/// Divisors representing the canonical generators of `Pic`.
	pub fn picard_generators(&self) -> Vec<Vec<Int>> {
		let n = self.graph.vertex_count();
		self.picard_nontrivial()
			.into_iter()
			.map(|i| {
				let col = self.laplacian_p_inverse.col(i);
				let mut d = vec![Int::zero(); n];
				d[0] = -col.iter().sum::<Int>();
				for (k, c) in col.into_iter().enumerate() {
					d[k + 1] = c;
				}
				d
			})
			.collect()
	}

	/// `φ: Pic -> J` evaluated on canonical forms through the images of the generators.
	pub fn phi(&self, class: &DivisorClass) -> JacobianElement {
		self.picard_generators().iter().zip(&class.canonical_form).fold(
			JacobianElement::zero(self.betti()),
			|acc, (gen, k)| acc.add(&self.phi_of_divisor(gen).times(k)),
		)
	}

	/// Canonical coordinates of a Jacobian class over the nontrivial Smith factors.
	pub fn canonical_coordinates(&self, a: &JacobianElement) -> Vec<Int> {
		let y = self.data.snf_transforms.0.to_rat().mul(&self.data.gram.to_rat()).mul_vec(&a.coords);
		let d = self.data.invariants.factors();
		self.jacobian_nontrivial()
			.into_iter()
			.map(|i| {
				assert!(y[i].is_integer(), "element is not in the dual lattice");
				mod_pos(&y[i].to_integer(), &d[i])
			})
			.collect()
	}

	/// Element with the given canonical coordinates.
	pub fn from_canonical(&self, coords: &[Int]) -> JacobianElement {
		let b = self.betti();
		let mut y = vec![Rat::zero(); b];
		for (i, c) in self.jacobian_nontrivial().into_iter().zip(coords) {
			y[i] = rat_from_int(c);
		}
		JacobianElement::reduce(self.gram_inverse.mul_vec(&self.p_inverse.mul_vec(&y)))
	}

	pub fn generators(&self) -> Vec<JacobianElement> {
		let k = self.jacobian_nontrivial().len();
		(0..k)
			.map(|i| {
				let mut e = vec![Int::zero(); k];
				e[i] = Int::one();
				self.from_canonical(&e)
			})
			.collect()
	}

	/// Every element, in lexicographic order of canonical coordinates.
	pub fn elements(&self, limit: usize) -> Result<Vec<JacobianElement>> {
		if self.data.kappa > Int::from(limit) {
			return Err(Error::InputTooLarge(format!("Jacobian of order {}", self.data.kappa)));
		}
		let d: Vec<Int> = self.data.invariants.nontrivial();
		let mut out = Vec::new();
		let mut current = vec![Int::zero(); d.len()];
		loop {
			out.push(self.from_canonical(&current));
			let mut i = d.len();
			loop {
				if i == 0 {
					return Ok(out);
				}
				i -= 1;
				current[i] += 1;
				if current[i] < d[i] {
					break;
				}
				current[i] = Int::zero();
			}
		}
	}

	/// `<a, b>` in `Q/Z`, returned in `[0, 1)`.
	pub fn pairing(&self, a: &JacobianElement, b: &JacobianElement) -> Rat {
		let ab = self.data.gram.to_rat().mul_vec(&b.coords);
		frac(&a.coords.iter().zip(&ab).fold(Rat::zero(), |acc, (x, y)| acc + x * y))
	}

	/// Whether the images of the `Pic` generators have the right orders and generate `J`.
	pub fn phi_is_isomorphism(&self) -> bool {
		let pic = self.picard_invariants().nontrivial();
		let gens = self.picard_generators();
		let d = self.data.invariants.nontrivial();
		if pic != d {
			return false;
		}
		let mut vectors: Vec<Vec<Int>> = Vec::new();
		for (gen, k) in gens.iter().zip(&pic) {
			let img = self.phi_of_divisor(gen);
			if !img.times(k).is_zero() {
				return false;
			}
			vectors.push(self.canonical_coordinates(&img));
		}
		let r = d.len();
		for (i, di) in d.iter().enumerate() {
			let mut v = vec![Int::zero(); r];
			v[i] = di.clone();
			vectors.push(v);
		}
		let l = IntLattice::from_vectors(r, &vectors);
		l.rank() == r && l.covolume_squared().is_one()
	}

	/// Abel's theorem at every vertex, with `φ` also checked on generators.
	pub fn abel_theorem_check(&self, x0: usize) -> Result<bool> {
		self.check_vertex(x0)?;
		if !self.phi_is_isomorphism() {
			return Ok(false);
		}
		for x in 0..self.graph.vertex_count() {
			let lhs = self.phi(&self.abel_jacobi(x, x0)?);
			if lhs != self.albanese(x, x0)? {
				return Ok(false);
			}
		}
		Ok(true)
	}
}

fn nontrivial_indices(inv: &AbelianInvariants) -> Vec<usize> {
	inv.factors().iter().enumerate().filter(|(_, f)| !f.is_one()).map(|(i, _)| i).collect()
}

pub fn jacobian(g: &FiniteGraph) -> JacobianData {
	JacobianContext::new(g).data
}

pub fn tree_number(g: &FiniteGraph) -> Int {
	g.tree_number()
}

pub fn abel_jacobi(g: &FiniteGraph, x: usize, x0: usize) -> Result<DivisorClass> {
	JacobianContext::new(g).abel_jacobi(x, x0)
}

pub fn albanese(g: &FiniteGraph, x: usize, x0: usize) -> Result<JacobianElement> {
	JacobianContext::new(g).albanese(x, x0)
}

pub fn abel_theorem_check(g: &FiniteGraph, x0: usize) -> Result<bool> {
	JacobianContext::new(g).abel_theorem_check(x0)
}

pub fn jacobian_pairing(g: &FiniteGraph, a: &JacobianElement, b: &JacobianElement) -> Rat {
	JacobianContext::new(g).pairing(a, b)
}

/// Summary used by the command line.
#[derive(Clone, Debug, Serialize)]
pub struct JacobianReport {
	pub invariants: Vec<String>,
	pub kappa: String,
	pub abel_jacobi_table: Vec<AbelJacobiRow>,
	/// Pairings of the canonical generators.
	pub pairing_table: Vec<Vec<String>>,
	pub abel_theorem: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelJacobiRow {
	pub vertex: usize,
	#[serde(with = "crate::arith::serde_int::vec")]
	pub divisor_class: Vec<Int>,
	#[serde(with = "crate::arith::serde_rat::vec")]
	pub albanese: Vec<Rat>,
	#[serde(with = "crate::arith::serde_int::vec")]
	pub jacobian_class: Vec<Int>,
}

impl JacobianReport {
	pub fn new(g: &FiniteGraph, x0: usize) -> Result<Self> {
		let ctx = JacobianContext::new(g);
		let mut rows = Vec::new();
		for x in 0..g.vertex_count() {
			let al = ctx.albanese(x, x0)?;
			rows.push(AbelJacobiRow {
				vertex: x,
				divisor_class: ctx.abel_jacobi(x, x0)?.canonical_form,
				jacobian_class: ctx.canonical_coordinates(&al),
				albanese: al.coords,
			});
		}
		let gens = ctx.generators();
		let pairing_table =
			gens.iter().map(|a| gens.iter().map(|b| format_rational(&ctx.pairing(a, b))).collect()).collect();
		Ok(JacobianReport {
			invariants: ctx.data.invariants.nontrivial().iter().map(Int::to_string).collect(),
			kappa: ctx.data.kappa.to_string(),
			abel_jacobi_table: rows,
			pairing_table,
			abel_theorem: ctx.abel_theorem_check(x0)?,
		})
	}
}

#[cfg(test)]
mod tests;
