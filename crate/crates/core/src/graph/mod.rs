//! Finite graphs, chains and the integral homology basis.

pub mod corpus;
mod io;

pub use io::{parse_graph, parse_graph_json, parse_graph_text, GraphFormat};

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat_from_int, Int, Rat};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Forward edge `origin -> terminus` with a user-visible id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
	pub id: i64,
	pub origin: usize,
	pub terminus: usize,
}

impl Edge {
	pub fn is_loop(&self) -> bool {
		self.origin == self.terminus
	}
}

/// An edge of `E_0`: a forward edge or its reversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedEdge {
	pub edge: usize,
	pub reversed: bool,
}

impl DirectedEdge {
	pub fn forward(edge: usize) -> Self {
		DirectedEdge { edge, reversed: false }
	}

	pub fn backward(edge: usize) -> Self {
		DirectedEdge { edge, reversed: true }
	}

	pub fn inverse(self) -> Self {
		DirectedEdge { edge: self.edge, reversed: !self.reversed }
	}

	/// `+1` for forward, `-1` for reversed.
	pub fn sign(self) -> i64 {
		if self.reversed {
			-1
		} else {
			1
		}
	}
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphOptions {
	/// Accept vertices of degree one or two.
	pub allow_low_degree: bool,
}

impl GraphOptions {
	pub fn relaxed() -> Self {
		GraphOptions { allow_low_degree: true }
	}
}

/// 1-chain over the forward edges.
pub type Chain1 = Vec<Rat>;
/// 0-chain over the vertices.
pub type Chain0 = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
	vertex_count: usize,
	edges: Vec<Edge>,
}

impl FiniteGraph {
	pub fn new(vertex_count: usize, edges: Vec<Edge>, options: GraphOptions) -> Result<Self> {
		if vertex_count == 0 {
			return Err(Error::Parse("graph needs at least one vertex".into()));
		}
		let mut ids = BTreeSet::new();
		for e in &edges {
			if !ids.insert(e.id) {
				return Err(Error::DuplicateEdgeId(e.id));
			}
			for endpoint in [e.origin, e.terminus] {
				if endpoint >= vertex_count {
					return Err(Error::EndpointOutOfRange { edge: e.id, endpoint, vertices: vertex_count });
				}
			}
		}
		let g = FiniteGraph { vertex_count, edges };
		if !g.is_connected() {
			return Err(Error::DisconnectedGraph);
		}
		if !options.allow_low_degree {
			if let Some(v) = (0..vertex_count).find(|&v| g.degree(v) < 3) {
				return Err(Error::DegreeTooLow { vertex: v, degree: g.degree(v) });
			}
		}
		Ok(g)
	}

	/// Edges given as endpoint pairs, ids numbered from 1.
	pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)], options: GraphOptions) -> Result<Self> {
		let edges = pairs
			.iter()
			.enumerate()
			.map(|(i, &(a, b))| Edge { id: i as i64 + 1, origin: a, terminus: b })
			.collect();
		Self::new(vertex_count, edges, options)
	}

	pub fn vertex_count(&self) -> usize {
		self.vertex_count
	}

	pub fn edge_count(&self) -> usize {
		self.edges.len()
	}

	pub fn edges(&self) -> &[Edge] {
		&self.edges
	}

	pub fn edge_index(&self, id: i64) -> Option<usize> {
		self.edges.iter().position(|e| e.id == id)
	}

	pub fn origin(&self, e: DirectedEdge) -> usize {
		let fe = &self.edges[e.edge];
		if e.reversed {
			fe.terminus
		} else {
			fe.origin
		}
	}

	pub fn terminus(&self, e: DirectedEdge) -> usize {
		self.origin(e.inverse())
	}

	/// `E_x`: directed edges leaving `x`, loops counted in both directions.
	pub fn outgoing(&self, x: usize) -> Vec<DirectedEdge> {
		let mut out = Vec::new();
		for (k, e) in self.edges.iter().enumerate() {
			if e.origin == x {
				out.push(DirectedEdge::forward(k));
			}
			if e.terminus == x {
				out.push(DirectedEdge::backward(k));
			}
		}
		out
	}

	pub fn degree(&self, x: usize) -> usize {
		self.edges
			.iter()
			.map(|e| usize::from(e.origin == x) + usize::from(e.terminus == x))
			.sum()
	}

	pub fn betti_number(&self) -> usize {
		self.edges.len() + 1 - self.vertex_count
	}

	fn is_connected(&self) -> bool {
		let mut seen = vec![false; self.vertex_count];
		let mut stack = vec![0];
		seen[0] = true;
		while let Some(v) = stack.pop() {
			for e in &self.edges {
				for (a, b) in [(e.origin, e.terminus), (e.terminus, e.origin)] {
					if a == v && !seen[b] {
						seen[b] = true;
						stack.push(b);
					}
				}
			}
		}
		seen.into_iter().all(|s| s)
	}

	/// `∂`, from edge chains to vertex chains.
	pub fn boundary(&self, chain: &[Rat]) -> Chain0 {
		let mut out = vec![Rat::zero(); self.vertex_count];
		for (e, c) in self.edges.iter().zip(chain) {
			out[e.terminus] += c;
			out[e.origin] -= c;
		}
		out
	}

	/// `∂*`, the adjoint of the boundary.
	pub fn coboundary_adjoint(&self, alpha: &[Rat]) -> Chain1 {
		self.edges.iter().map(|e| &alpha[e.terminus] - &alpha[e.origin]).collect()
	}

	/// Integer `∂*` of the indicator of one vertex.
	pub fn vertex_coboundary(&self, x: usize) -> Vec<Int> {
		self.edges
			.iter()
			.map(|e| int(i64::from(e.terminus == x) - i64::from(e.origin == x)))
			.collect()
	}

	/// Combinatorial Laplacian `D - A`; loops do not contribute.
	pub fn laplacian(&self) -> IntMatrix {
		let n = self.vertex_count;
		let mut l = IntMatrix::zeros(n, n);
		for e in &self.edges {
			if e.is_loop() {
				continue;
			}
			let (a, b) = (e.origin, e.terminus);
			l[(a, a)] += 1;
			l[(b, b)] += 1;
			l[(a, b)] -= 1;
			l[(b, a)] -= 1;
		}
		l
	}

	/// Laplacian with the row and column of vertex 0 removed.
	pub fn reduced_laplacian(&self) -> IntMatrix {
		let keep: Vec<usize> = (1..self.vertex_count).collect();
		self.laplacian().select_rows(&keep).select_cols(&keep)
	}

	/// Number of spanning trees.
	pub fn tree_number(&self) -> Int {
		self.reduced_laplacian().det()
	}

	pub fn homology_basis(&self) -> HomologyBasis {
		HomologyBasis::new(self)
	}

	pub fn to_chain(&self, e: DirectedEdge) -> Vec<Int> {
		let mut c = vec![Int::zero(); self.edges.len()];
		c[e.edge] = int(e.sign());
		c
	}

	/// Sum of the directed edges of a walk; errors if the walk is broken.
	pub fn walk_chain(&self, walk: &[DirectedEdge]) -> Result<Vec<Int>> {
		let mut c = vec![Int::zero(); self.edges.len()];
		for (i, e) in walk.iter().enumerate() {
			if e.edge >= self.edges.len() {
				return Err(Error::DimensionMismatch(format!("edge index {}", e.edge)));
			}
			if i > 0 && self.origin(*e) != self.terminus(walk[i - 1]) {
				return Err(Error::DimensionMismatch("walk is not connected".into()));
			}
			c[e.edge] += e.sign();
		}
		Ok(c)
	}
}

pub fn inner_product(a: &[Rat], b: &[Rat]) -> Rat {
	crate::arith::dot_rat(a, b)
}

pub fn to_rat_chain(c: &[Int]) -> Chain1 {
	c.iter().map(rat_from_int).collect()
}

/// Cycle basis from a breadth-first spanning tree rooted at vertex 0.
///
/// Cycle `i` runs along the `i`-th non-tree edge (input order) and back through the tree,
/// so `<c_i, e_j> = δ_ij` for the non-tree edges `e_j`.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
	pub tree_edges: Vec<usize>,
	pub non_tree_edges: Vec<usize>,
	/// Integer chains over the forward edges.
	pub cycles: Vec<Vec<Int>>,
	pub gram: IntMatrix,
	/// Tree edge reaching each vertex from its parent, `None` at the root.
	pub parent: Vec<Option<DirectedEdge>>,
	/// Chain of the tree path from the root to each vertex.
	pub root_paths: Vec<Vec<Int>>,
}

impl HomologyBasis {
	fn new(g: &FiniteGraph) -> Self {
		let n = g.vertex_count();
		let m = g.edge_count();
		let mut parent: Vec<Option<DirectedEdge>> = vec![None; n];
		let mut seen = vec![false; n];
		let mut in_tree = vec![false; m];
		let mut order = Vec::with_capacity(n);
		let mut queue = VecDeque::from([0usize]);
		seen[0] = true;
		while let Some(u) = queue.pop_front() {
			order.push(u);
			for (k, e) in g.edges().iter().enumerate() {
				let step = if e.origin == u {
					Some((e.terminus, DirectedEdge::forward(k)))
				} else if e.terminus == u {
					Some((e.origin, DirectedEdge::backward(k)))
				} else {
					None
				};
				if let Some((w, de)) = step {
					if !seen[w] {
						seen[w] = true;
						parent[w] = Some(de);
						in_tree[k] = true;
						queue.push_back(w);
					}
				}
			}
		}
		let mut root_paths = vec![vec![Int::zero(); m]; n];
		for &v in &order {
			if let Some(de) = parent[v] {
				let mut p = root_paths[g.origin(de)].clone();
				p[de.edge] += de.sign();
				root_paths[v] = p;
			}
		}
		let tree_edges: Vec<usize> = (0..m).filter(|&k| in_tree[k]).collect();
		let non_tree_edges: Vec<usize> = (0..m).filter(|&k| !in_tree[k]).collect();
		let cycles: Vec<Vec<Int>> = non_tree_edges
			.iter()
			.map(|&k| {
				let e = g.edges()[k];
				let mut c: Vec<Int> =
					root_paths[e.origin].iter().zip(&root_paths[e.terminus]).map(|(a, b)| a - b).collect();
				c[k] += 1;
				c
			})
			.collect();
		let b = cycles.len();
		let mut gram = IntMatrix::zeros(b, b);
		for i in 0..b {
			for j in 0..b {
				gram[(i, j)] = crate::arith::dot_int(&cycles[i], &cycles[j]);
			}
		}
		HomologyBasis { tree_edges, non_tree_edges, cycles, gram, parent, root_paths }
	}

	pub fn rank(&self) -> usize {
		self.cycles.len()
	}

	/// `(<c_i, chain>)_i`.
	pub fn pairings(&self, chain: &[Rat]) -> Vec<Rat> {
		self.cycles
			.iter()
			.map(|c| c.iter().zip(chain).fold(Rat::zero(), |acc, (a, b)| acc + rat_from_int(a) * b))
			.collect()
	}

	/// Edge chain of `Σ x_i c_i`.
	pub fn to_chain(&self, coords: &[Rat]) -> Chain1 {
		let m = self.cycles.first().map_or(0, Vec::len);
		let mut out = vec![Rat::zero(); m];
		for (x, c) in coords.iter().zip(&self.cycles) {
			for (o, ci) in out.iter_mut().zip(c) {
				*o += x * rat_from_int(ci);
			}
		}
		out
	}

	/// Coordinates of a cycle in this basis; `None` if the chain is not an integral cycle.
	pub fn coordinates(&self, g: &FiniteGraph, chain: &[Int]) -> Option<Vec<Int>> {
		if g.boundary(&to_rat_chain(chain)).iter().any(|v| !v.is_zero()) {
			return None;
		}
		// the coefficient on each non-tree edge is the coordinate
		let coords: Vec<Int> = self.non_tree_edges.iter().map(|&k| chain[k].clone()).collect();
		let back = self.to_chain(&coords.iter().map(rat_from_int).collect::<Vec<_>>());
		(back == to_rat_chain(chain)).then_some(coords)
	}

	/// Walk of cycle `i`: its non-tree edge followed by the tree path back.
	pub fn cycle_walk(&self, g: &FiniteGraph, i: usize) -> Vec<DirectedEdge> {
		let k = self.non_tree_edges[i];
		let e = g.edges()[k];
		let mut walk = vec![DirectedEdge::forward(k)];
		walk.extend(self.tree_walk(g, e.terminus, e.origin));
		walk
	}

	/// Directed tree path from `a` to `b`.
	pub fn tree_walk(&self, g: &FiniteGraph, a: usize, b: usize) -> Vec<DirectedEdge> {
		let up = |mut v: usize| {
			let mut chain = vec![v];
			while let Some(de) = self.parent[v] {
				v = g.origin(de);
				chain.push(v);
			}
			chain
		};
		let pa = up(a);
		let pb = up(b);
		let lca = *pa.iter().find(|v| pb.contains(v)).expect("tree is connected");
		let mut walk = Vec::new();
		let mut v = a;
		while v != lca {
			let de = self.parent[v].expect("non-root");
			walk.push(de.inverse());
			v = g.origin(de);
		}
		let mut down = Vec::new();
		let mut v = b;
		while v != lca {
			let de = self.parent[v].expect("non-root");
			down.push(de);
			v = g.origin(de);
		}
		walk.extend(down.into_iter().rev());
		walk
	}
}

/// Lists the unit vector of one coordinate.
pub fn unit(n: usize, i: usize) -> Vec<Rat> {
	let mut v = vec![Rat::zero(); n];
	v[i] = Rat::one();
	v
}
