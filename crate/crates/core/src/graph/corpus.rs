//! Small named graphs and a seeded random generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteGraph, GraphOptions};

fn build(n: usize, pairs: &[(usize, usize)]) -> FiniteGraph {
	FiniteGraph::from_pairs(n, pairs, GraphOptions::relaxed()).expect("corpus graph is valid")
}

/// Two vertices joined by `k` parallel edges, all oriented `0 -> 1`.
pub fn dipole(k: usize) -> FiniteGraph {
	build(2, &vec![(0, 1); k])
}

/// Quotient of the honeycomb net: the dipole with three edges.
pub fn theta() -> FiniteGraph {
	dipole(3)
}

/// Complete graph, edges `i -> j` for `i < j` in lexicographic order.
pub fn complete(n: usize) -> FiniteGraph {
	let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
	build(n, &pairs)
}

/// Complete graph on four vertices: a hub `0` with spokes `e1,e2,e3` to `1,2,3`,
/// then rim edges `f1: 2->3`, `f2: 3->1`, `f3: 1->2`.
pub fn k4() -> FiniteGraph {
	build(4, &[(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)])
}

/// Three vertices, two edges between each pair; quotient of the kagome net.
pub fn kagome_base() -> FiniteGraph {
	build(3, &[(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)])
}

/// A hub joined by three edges to each of two other vertices; quotient of the dice net.
pub fn dice_base() -> FiniteGraph {
	build(3, &[(1, 0), (1, 0), (1, 0), (2, 0), (2, 0), (2, 0)])
}

/// One vertex with `k` loops.
pub fn bouquet(k: usize) -> FiniteGraph {
	build(1, &vec![(0, 0); k])
}

/// Graphs used by the verification suites.
pub fn named() -> Vec<(&'static str, FiniteGraph)> {
	vec![
		("theta", theta()),
		("dipole4", dipole(4)),
		("k4", k4()),
		("kagome", kagome_base()),
		("dice", dice_base()),
		("bouquet3", bouquet(3)),
	]
}

/// Connected graph on at most `max_vertices` vertices with every degree at least 3.
pub fn random_graph(seed: u64, max_vertices: usize) -> FiniteGraph {
	let mut rng = ChaCha8Rng::seed_from_u64(seed);
	let n = rng.gen_range(1..=max_vertices.max(1));
	let mut pairs: Vec<(usize, usize)> = Vec::new();
	let mut degree = vec![0usize; n];
	let add = |a: usize, b: usize, pairs: &mut Vec<(usize, usize)>, degree: &mut Vec<usize>| {
		pairs.push((a, b));
		degree[a] += 1;
		degree[b] += 1;
	};
	for v in 1..n {
		let u = rng.gen_range(0..v);
		if rng.gen_bool(0.5) {
			add(u, v, &mut pairs, &mut degree);
		} else {
			add(v, u, &mut pairs, &mut degree);
		}
	}
	while let Some(v) = (0..n).find(|&v| degree[v] < 3) {
		let w = if n == 1 || rng.gen_bool(0.1) { v } else { rng.gen_range(0..n) };
		if rng.gen_bool(0.5) {
			add(v, w, &mut pairs, &mut degree);
		} else {
			add(w, v, &mut pairs, &mut degree);
		}
	}
	FiniteGraph::from_pairs(n, &pairs, GraphOptions::default()).expect("random graph is valid")
}

#[cfg(test)]
mod tests {
	use super::*;

	#[test]
	fn named_graphs_satisfy_the_degree_bound() {
		for (name, g) in named() {
			assert!((0..g.vertex_count()).all(|v| g.degree(v) >= 3), "{name}");
		}
	}

	#[test]
	fn random_graphs_are_reproducible() {
		for seed in 0..20 {
			let g = random_graph(seed, 8);
			assert_eq!(g, random_graph(seed, 8));
			assert!(g.vertex_count() <= 8);
			assert!((0..g.vertex_count()).all(|v| g.degree(v) >= 3));
		}
	}
}
