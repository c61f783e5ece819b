//! Self-check suites run by `crystalframe verify`.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{int, rat, rat_from_int, Int, Rat};
use crate::diophantine::{
	coincidence_member, pythagorean_rotation, three_squares, three_squares_representable, CoincidenceLattice,
	RationalRotation,
};
use crate::error::{Error, Result};
use crate::frame::{catalog_frame, congruent, parse_catalog_name, Frame};
use crate::graph::{corpus, FiniteGraph};
use crate::jacobian::JacobianContext;
use crate::lattice::{
	count_rank1_summands, dual_quotient, finite_quotient, is_square_free, lattice_sum, orth_complement_int,
	rank1_asymptotic, IntLattice,
};
use crate::nets::{
	enumerate_nets, harmonic_cochain_v0, perturbed_realization, standard_realization, VanishingSummand,
};

/// Frames exercised by the frame suite.
pub const FRAME_CORPUS: &[&str] = &[
	"polygon:3",
	"polygon:4",
	"polygon:5",
	"polygon:6",
	"polygon:8",
	"simplex:1",
	"simplex:2",
	"simplex:3",
	"simplex:4",
	"root:A:2",
	"root:A:3",
	"root:B:2",
	"root:B:3",
	"root:C:3",
	"root:D:4",
	"g2",
	"pythagorean:3:4:5",
	"pythagorean:5:12:13",
	"tetrahedron",
	"cube",
	"octahedron",
	"orthonormal:3",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
	Lattice,
	Frames,
	Diophantine,
	Nets,
	Jacobian,
	Heights,
	All,
}

impl Suite {
	pub const NAMED: [Suite; 6] =
		[Suite::Lattice, Suite::Frames, Suite::Diophantine, Suite::Nets, Suite::Jacobian, Suite::Heights];

	pub fn name(self) -> &'static str {
		match self {
			Suite::Lattice => "lattice",
			Suite::Frames => "frames",
			Suite::Diophantine => "diophantine",
			Suite::Nets => "nets",
			Suite::Jacobian => "jacobian",
			Suite::Heights => "heights",
			Suite::All => "all",
		}
	}
}

impl FromStr for Suite {
	type Err = Error;

	fn from_str(s: &str) -> Result<Self> {
		Suite::NAMED
			.into_iter()
			.chain([Suite::All])
			.find(|suite| suite.name() == s)
			.ok_or_else(|| Error::UnknownSuite(s.to_string()))
	}
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
	pub name: String,
	pub passed: bool,
	pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
	pub suite: Suite,
	pub seed: u64,
	pub passed: bool,
	pub checks: Vec<Check>,
}

struct Collector {
	checks: Vec<Check>,
}

impl Collector {
	fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
		let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
		self.checks.push(Check { name: name.to_string(), passed, detail });
	}
}

pub fn run_suite(suite: Suite, seed: u64) -> VerifyReport {
	let mut c = Collector { checks: Vec::new() };
	let suites: Vec<Suite> = if suite == Suite::All { Suite::NAMED.to_vec() } else { vec![suite] };
	for s in suites {
		match s {
			Suite::Lattice => lattice_suite(&mut c, seed),
			Suite::Frames => frame_suite(&mut c),
			Suite::Diophantine => diophantine_suite(&mut c),
			Suite::Nets => net_suite(&mut c, seed),
			Suite::Jacobian => jacobian_suite(&mut c, seed),
			Suite::Heights => height_suite(&mut c),
			Suite::All => unreachable!(),
		}
	}
	let passed = c.checks.iter().all(|k| k.passed);
	VerifyReport { suite, seed, passed, checks: c.checks }
}

/// A saturated sublattice of `Z^n` from random small generators; may be `{0}`.
pub fn random_summand(rng: &mut ChaCha8Rng, max_ambient: usize) -> IntLattice {
	let n = rng.gen_range(2..=max_ambient.max(2));
	let k = rng.gen_range(1..n);
	let gens: Vec<Vec<Int>> = (0..k).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
	IntLattice::from_vectors(n, &gens).saturation()
}

fn lattice_suite(c: &mut Collector, seed: u64) {
	c.run("complement identity on 100 random summands", || {
		let mut rng = ChaCha8Rng::seed_from_u64(seed);
		let mut tested = 0;
		while tested < 100 {
			let h = random_summand(&mut rng, 8);
			if h.rank() == 0 {
				continue;
			}
			tested += 1;
			let perp = orth_complement_int(&h);
			let sum = lattice_sum(&h, &perp)?;
			let lhs = finite_quotient(&sum)?;
			let rhs = dual_quotient(h.basis())?;
			if !lhs.isomorphic(&rhs) {
				return Ok((false, format!("quotient {lhs} vs dual quotient {rhs} for {:?}", h.basis_vectors())));
			}
		}
		Ok((true, "100 summands".into()))
	});
}

fn frame_corpus() -> Result<Vec<(&'static str, Frame)>> {
	FRAME_CORPUS.iter().map(|&n| Ok((n, catalog_frame(parse_catalog_name(n)?)?))).collect()
}

fn frame_suite(c: &mut Collector) {
	c.run("Naimark criterion agrees with 1-tightness", || {
		let mut count = 0;
		for (name, f) in frame_corpus()? {
			let mut variants = vec![f.clone(), f.with_vector_scaled(0, &rat(2, 1))?];
			if f.is_tight() {
				variants.push(f.normalized()?);
			}
			for v in variants {
				let one_tight = v.tight_constant().is_some_and(|t| t.is_one());
				if v.naimark_check() != one_tight {
					return Ok((false, format!("{name}: Naimark {} but 1-tight {one_tight}", v.naimark_check())));
				}
				count += 1;
			}
		}
		Ok((true, format!("{count} frames")))
	});
	c.run("congruence under rational rotations", || {
		let mut rotations: Vec<RationalRotation> =
			[(3, 4, 5), (5, 12, 13), (8, 15, 17)].iter().map(|&(x, y, z)| pythagorean_rotation(x, y, z)).collect::<Result<_>>()?;
		rotations.extend(coincidence_member(CoincidenceLattice::Square, &rat(-7, 25), &rat(24, 25)));
		let mut count = 0;
		for name in ["root:B:2", "polygon:4", "pythagorean:3:4:5"] {
			let f = catalog_frame(parse_catalog_name(name)?)?;
			for g in &rotations {
				let moved = f.transform(&g.matrix)?;
				if !congruent(&f, &moved)? || f.gram_exact() != moved.gram_exact() {
					return Ok((false, format!("{name} not congruent to its rotation")));
				}
				if congruent(&f, &moved.with_vector_scaled(1, &rat(3, 2))?)? {
					return Ok((false, format!("{name} congruent to a distorted copy")));
				}
				count += 1;
			}
		}
		Ok((true, format!("{count} rotated frames")))
	});
}

fn diophantine_suite(c: &mut Collector) {
	c.run("three squares for square-free D <= 100", || {
		for d in (1..=100u64).filter(|&d| is_square_free(d)) {
			let lib = three_squares_representable(d)?;
			let criterion = d % 8 != 7;
			let witness = three_squares(d).is_some_and(|[a, b, c]| a * a + b * b + c * c == d);
			if lib != criterion || lib != witness {
				return Ok((false, format!("D = {d}")));
			}
		}
		Ok((true, "all agree".into()))
	});
}

fn net_suite(c: &mut Collector, seed: u64) {
	c.run("harmonic cochain v0 is 1-tight with cut relations", || {
		for (name, g) in corpus::named() {
			let v0 = harmonic_cochain_v0(&g);
			let cuts: Vec<Vec<Int>> = (0..g.vertex_count()).map(|x| g.vertex_coboundary(x)).collect();
			if !v0.is_one_tight() || v0.vanishing_group() != IntLattice::from_vectors(g.edge_count(), &cuts) {
				return Ok((false, name.into()));
			}
		}
		Ok((true, "corpus".into()))
	});
	c.run("standard realizations minimize energy", || {
		for (name, g) in corpus::named() {
			let r = standard_realization(&VanishingSummand::zero(g)?)?;
			let e0 = r.energy().value;
			if !r.is_standard() || r.distortion().ratio != 1.0 {
				return Ok((false, format!("{name} is not standard")));
			}
			for k in 0..20 {
				let p = perturbed_realization(&r, seed.wrapping_add(k))?;
				if p.energy().value <= e0 {
					return Ok((false, format!("{name} perturbation {k}")));
				}
			}
		}
		Ok((true, "corpus, 20 perturbations each".into()))
	});
	c.run("torus volume times covolume is the tree number", || {
		let mut rows = 0;
		for (name, g) in corpus::named() {
			let kappa = rat_from_int(&g.tree_number());
			for d in 1..=g.betti_number() {
				for row in enumerate_nets(&g, d, &rat(6, 1))? {
					let h: Rat = row.height_squared.parse().map_err(|_| Error::Parse(row.height_squared.clone()))?;
					let v: Rat = row.torus_volume_squared.parse().map_err(|_| Error::Parse(row.torus_volume_squared.clone()))?;
					if h * v != kappa {
						return Ok((false, format!("{name}, d = {d}")));
					}
					rows += 1;
				}
			}
		}
		Ok((true, format!("{rows} summands")))
	});
}

fn jacobian_suite(c: &mut Collector, seed: u64) {
	c.run("Jacobians of dipoles and complete graphs", || {
		for k in 2..=7 {
			let ctx = JacobianContext::new(&corpus::dipole(k));
			if ctx.data().invariants.nontrivial() != vec![int(k as i64)] {
				return Ok((false, format!("dipole({k})")));
			}
		}
		for n in 3..=6 {
			let ctx = JacobianContext::new(&corpus::complete(n));
			if ctx.data().invariants.nontrivial() != vec![int(n as i64); n - 2] {
				return Ok((false, format!("K{n}")));
			}
		}
		Ok((true, "exact".into()))
	});
	let random: Vec<FiniteGraph> = (0..50).map(|i| corpus::random_graph(seed.wrapping_mul(1000).wrapping_add(i), 8)).collect();
	c.run("Jacobian order equals the tree number", || {
		for g in corpus::named().into_iter().map(|(_, g)| g).chain(random.iter().cloned()) {
			let ctx = JacobianContext::new(&g);
			if ctx.data().invariants.order() != g.tree_number() || !ctx.picard_invariants().isomorphic(&ctx.data().invariants) {
				return Ok((false, format!("{g:?}")));
			}
		}
		Ok((true, "corpus and 50 random graphs".into()))
	});
	c.run("Abel's theorem", || {
		for g in corpus::named().into_iter().map(|(_, g)| g).chain(random.iter().take(20).cloned()) {
			if !JacobianContext::new(&g).abel_theorem_check(0)? {
				return Ok((false, format!("{g:?}")));
			}
		}
		Ok((true, "corpus and 20 random graphs".into()))
	});
}

fn height_suite(c: &mut Collector) {
	for n in [2usize, 3] {
		c.run(&format!("rank-one height count in Z^{n}"), || {
			let h = 1000u64;
			let count = count_rank1_summands(n, h * h)? as f64;
			let expected = rank1_asymptotic(n, h as f64);
			let err = (count - expected).abs() / expected;
			Ok((err < 0.1, format!("{count} vs {expected:.1}, relative error {err:.4}")))
		});
	}
}

#[cfg(test)]
mod tests {
	use super::*;

	#[test]
	fn suite_names() {
		assert_eq!("jacobian".parse::<Suite>().unwrap(), Suite::Jacobian);
		assert_eq!("nosuch".parse::<Suite>(), Err(Error::UnknownSuite("nosuch".into())));
	}

	#[test]
	fn fast_suites_pass() {
		for s in [Suite::Lattice, Suite::Frames, Suite::Diophantine, Suite::Jacobian, Suite::Heights] {
			let r = run_suite(s, 0);
			assert!(r.passed, "{:?}", r.checks);
		}
	}

	#[test]
	fn net_suite_passes() {
		let r = run_suite(Suite::Nets, 0);
		assert!(r.passed, "{:?}", r.checks);
	}

	#[test]
	fn random_summands_are_saturated() {
		let mut rng = ChaCha8Rng::seed_from_u64(3);
		for _ in 0..20 {
			let h = random_summand(&mut rng, 6);
			assert!(h.is_summand());
		}
	}
}
