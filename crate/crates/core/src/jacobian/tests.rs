use super::*;
use crate::arith::{int, rat};
use crate::graph::corpus;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ints(v: &[i64]) -> Vec<Int> {
	v.iter().map(|&x| int(x)).collect()
}

#[test]
fn dipoles_and_complete_graphs() {
	for k in 2..=7 {
		let j = jacobian(&corpus::dipole(k));
		assert_eq!(j.invariants.nontrivial(), ints(&[k as i64]));
		assert_eq!(j.kappa, int(k as i64));
	}
	for n in 4..=6 {
		let j = jacobian(&corpus::complete(n));
		assert_eq!(j.invariants.nontrivial(), vec![int(n as i64); n - 2]);
	}
	let t = jacobian(&corpus::theta());
	assert_eq!(t.invariants.nontrivial(), ints(&[3]));
	assert_eq!(tree_number(&corpus::k4()), int(16));
	assert_eq!(tree_number(&corpus::dipole(4)), int(4));
}

#[test]
fn picard_matches_jacobian_on_random_graphs() {
	for seed in 0..30 {
		let g = corpus::random_graph(seed, 8);
		let ctx = JacobianContext::new(&g);
		assert_eq!(ctx.picard_invariants().nontrivial(), ctx.data().invariants.nontrivial(), "seed {seed}");
		assert!(ctx.abel_theorem_check(0).unwrap(), "seed {seed}");
	}
}

#[test]
fn abel_jacobi_classes() {
	let ctx = JacobianContext::new(&corpus::dipole(4));
	assert_eq!(ctx.abel_jacobi(0, 0).unwrap().canonical_form, ints(&[0]));
	let c = ctx.abel_jacobi(1, 0).unwrap();
	// x - x0 generates Z/4: its multiples 1, 2, 3 are nonzero
	for k in 1..4 {
		let multiple: Vec<Int> = c.representative.iter().map(|v| v * k).collect();
		assert!(!ctx.divisor_class(&multiple).unwrap().canonical_form[0].is_zero());
	}
	let four: Vec<Int> = c.representative.iter().map(|v| v * 4).collect();
	assert!(ctx.divisor_class(&four).unwrap().canonical_form[0].is_zero());
	assert_eq!(ctx.abel_jacobi(5, 0), Err(Error::BadVertex { vertex: 5, vertices: 2 }));

	// on K4 the sum of classes equals the class of (sum of vertices) - 4 x0
	let k4 = JacobianContext::new(&corpus::k4());
	let d: Vec<Int> = ints(&[-3, 1, 1, 1]);
	let direct = k4.divisor_class(&d).unwrap().canonical_form;
	let dims = k4.picard_invariants().nontrivial();
	let mut summed = vec![int(0); dims.len()];
	for x in 0..4 {
		for (s, (c, m)) in summed.iter_mut().zip(k4.abel_jacobi(x, 0).unwrap().canonical_form.iter().zip(&dims)) {
			*s = (&*s + c).mod_floor(m);
		}
	}
	assert_eq!(summed, direct);
	// principal divisors are trivial
	let lap = crate::graph::corpus::k4().laplacian();
	for x in 0..4 {
		assert!(k4.divisor_class(lap.row(x)).unwrap().canonical_form.iter().all(Zero::is_zero));
	}
}

#[test]
fn albanese_is_path_independent() {
	let mut rng = ChaCha8Rng::seed_from_u64(7);
	for (name, g) in corpus::named() {
		let ctx = JacobianContext::new(&g);
		let hb = g.homology_basis();
		for _ in 0..20 {
			let a = rng.gen_range(0..g.vertex_count());
			let b = rng.gen_range(0..g.vertex_count());
			let direct = hb.tree_walk(&g, a, b);
			// detour through a random cycle based at a
			let i = rng.gen_range(0..hb.rank());
			let k = hb.non_tree_edges[i];
			let start = g.edges()[k].origin;
			let mut detour = hb.tree_walk(&g, a, start);
			detour.extend(hb.cycle_walk(&g, i));
			detour.extend(hb.tree_walk(&g, start, b));
			assert_eq!(ctx.albanese_along(&direct).unwrap(), ctx.albanese_along(&detour).unwrap(), "{name}");
		}
		assert!(ctx.albanese(0, 0).unwrap().is_zero());
	}
}

#[test]
fn albanese_far_vertex_of_dipole_has_order_four() {
	let ctx = JacobianContext::new(&corpus::dipole(4));
	let a = ctx.albanese(1, 0).unwrap();
	assert_eq!(a.order(), int(4));
	assert!(ctx.generators().iter().all(|g| g.times(&int(4)).is_zero()));
}

#[test]
fn abel_theorem_on_corpus() {
	for (name, g) in corpus::named() {
		let ctx = JacobianContext::new(&g);
		for x0 in 0..g.vertex_count() {
			assert!(ctx.abel_theorem_check(x0).unwrap(), "{name} at {x0}");
		}
	}
}

#[test]
fn pairing_is_a_nondegenerate_form() {
	for (name, g) in corpus::named() {
		let ctx = JacobianContext::new(&g);
		let all = ctx.elements(256).unwrap();
		assert_eq!(Int::from(all.len()), ctx.data().kappa, "{name}");
		for a in &all {
			assert_eq!(ctx.from_canonical(&ctx.canonical_coordinates(a)), *a);
			assert!(ctx.pairing(&JacobianElement::zero(ctx.betti()), a).is_zero());
			let mut degenerate = true;
			for b in &all {
				let ab = ctx.pairing(a, b);
				assert_eq!(ab, ctx.pairing(b, a));
				degenerate &= ab.is_zero();
			}
			assert_eq!(degenerate, a.is_zero(), "{name}");
		}
		let gens = ctx.generators();
		for a in &gens {
			for b in &gens {
				let c = a.add(b);
				for d in &gens {
					assert_eq!(ctx.pairing(&c, d), frac(&(ctx.pairing(a, d) + ctx.pairing(b, d))));
				}
			}
		}
	}
	let ctx = JacobianContext::new(&corpus::dipole(4));
	let g = &ctx.generators()[0];
	let self_pair = ctx.pairing(g, g);
	assert_eq!(self_pair.denom(), &int(4));
	assert!([rat(1, 4), rat(3, 4)].contains(&self_pair));
}

#[test]
fn report_is_consistent() {
	let r = JacobianReport::new(&corpus::k4(), 0).unwrap();
	assert_eq!(r.invariants, vec!["4", "4"]);
	assert_eq!(r.kappa, "16");
	assert!(r.abel_theorem);
	assert_eq!(r.abel_jacobi_table.len(), 4);
	assert_eq!(r.pairing_table.len(), 2);
	assert!(r.abel_jacobi_table[0].jacobian_class.iter().all(Zero::is_zero));
}

mod properties {
	use super::*;
	use proptest::prelude::*;

	proptest! {
		#![proptest_config(ProptestConfig::with_cases(24))]

		#[test]
		fn order_is_tree_number_and_abel_holds(seed in any::<u64>()) {
			let g = corpus::random_graph(seed, 6);
			let ctx = JacobianContext::new(&g);
			prop_assert_eq!(ctx.data().invariants.order(), g.tree_number());
			prop_assert!(ctx.abel_theorem_check(0).unwrap());
		}

		#[test]
		fn canonical_coordinates_round_trip(seed in any::<u64>(), k in -5i64..6) {
			let g = corpus::random_graph(seed, 6);
			let ctx = JacobianContext::new(&g);
			let x = seed as usize % g.vertex_count();
			let a = ctx.albanese(x, 0).unwrap().times(&int(k));
			prop_assert_eq!(ctx.from_canonical(&ctx.canonical_coordinates(&a)), a.clone());
			prop_assert!(a.times(&ctx.data().kappa).is_zero());
		}
	}
}
