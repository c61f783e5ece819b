//! Hermite and Smith normal forms over the integers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Int;
use crate::matrix::IntMatrix;

/// Column Hermite form `H = M U` with `U` unimodular.
///
/// Pivot rows strictly increase from left to right, pivots are positive,
/// entries left of a pivot lie in `[0, pivot)` and entries right of it are zero.
/// Zero columns come last.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
	pub h: IntMatrix,
	pub u: IntMatrix,
	pub pivot_rows: Vec<usize>,
}

impl ColumnHermite {
	pub fn rank(&self) -> usize {
		self.pivot_rows.len()
	}
}

fn col_combine(m: &mut IntMatrix, c: usize, j: usize, coef: [&Int; 4]) {
	// (col_c, col_j) <- (a col_c + b col_j, e col_c + f col_j)
	let [a, b, e, f] = coef;
	for i in 0..m.rows() {
		let x = m[(i, c)].clone();
		let y = m[(i, j)].clone();
		m[(i, c)] = a * &x + b * &y;
		m[(i, j)] = e * &x + f * &y;
	}
}

fn col_axpy(m: &mut IntMatrix, dst: usize, q: &Int, src: usize) {
	// col_dst -= q col_src
	for i in 0..m.rows() {
		let t = q * &m[(i, src)];
		m[(i, dst)] -= t;
	}
}

fn row_axpy(m: &mut IntMatrix, dst: usize, q: &Int, src: usize) {
	for j in 0..m.cols() {
		let t = q * &m[(src, j)];
		m[(dst, j)] -= t;
	}
}

fn negate_col(m: &mut IntMatrix, c: usize) {
	for i in 0..m.rows() {
		m[(i, c)] = -m[(i, c)].clone();
	}
}

fn negate_row(m: &mut IntMatrix, r: usize) {
	for j in 0..m.cols() {
		m[(r, j)] = -m[(r, j)].clone();
	}
}

pub fn column_hermite(m: &IntMatrix) -> ColumnHermite {
	let (n, k) = (m.rows(), m.cols());
	let mut h = m.clone();
	let mut u = IntMatrix::identity(k);
	let mut pivot_rows = Vec::new();
	let mut c = 0;
	for r in 0..n {
		if c == k {
			break;
		}
		for j in c + 1..k {
			if h[(r, j)].is_zero() {
				continue;
			}
			let a = h[(r, c)].clone();
			let b = h[(r, j)].clone();
			let eg = a.extended_gcd(&b);
			let (g, s, t) = (eg.gcd, eg.x, eg.y);
			let e = -(&b / &g);
			let f = &a / &g;
			col_combine(&mut h, c, j, [&s, &t, &e, &f]);
			col_combine(&mut u, c, j, [&s, &t, &e, &f]);
		}
		if h[(r, c)].is_zero() {
			continue;
		}
		if h[(r, c)].is_negative() {
			negate_col(&mut h, c);
			negate_col(&mut u, c);
		}
		let p = h[(r, c)].clone();
		for j in 0..c {
			let q = h[(r, j)].div_floor(&p);
			if !q.is_zero() {
				col_axpy(&mut h, j, &q, c);
				col_axpy(&mut u, j, &q, c);
			}
		}
		pivot_rows.push(r);
		c += 1;
	}
	ColumnHermite { h, u, pivot_rows }
}

/// Smith form `P A Q = D`.
#[derive(Clone, Debug)]
pub struct Smith {
	pub p: IntMatrix,
	pub q: IntMatrix,
	/// Diagonal of `D`, length `min(rows, cols)`, each entry divides the next.
	pub diagonal: Vec<Int>,
}

impl Smith {
	pub fn rank(&self) -> usize {
		self.diagonal.iter().filter(|d| !d.is_zero()).count()
	}

	/// Nonzero diagonal entries, i.e. the torsion part of the cokernel with units kept.
	pub fn nonzero_diagonal(&self) -> Vec<Int> {
		self.diagonal.iter().filter(|d| !d.is_zero()).cloned().collect()
	}
}

pub fn smith(a: &IntMatrix) -> Smith {
	let (m, n) = (a.rows(), a.cols());
	let mut d = a.clone();
	let mut p = IntMatrix::identity(m);
	let mut q = IntMatrix::identity(n);
	let size = m.min(n);
	for t in 0..size {
		loop {
			let mut best: Option<(usize, usize)> = None;
			for i in t..m {
				for j in t..n {
					if d[(i, j)].is_zero() {
						continue;
					}
					if best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
						best = Some((i, j));
					}
				}
			}
			let Some((bi, bj)) = best else {
				return Smith { p, q, diagonal: (0..size).map(|i| d[(i, i)].clone()).collect() };
			};
			d.swap_rows(t, bi);
			p.swap_rows(t, bi);
			d.swap_cols(t, bj);
			q.swap_cols(t, bj);

			let mut clean = true;
			for i in t + 1..m {
				if d[(i, t)].is_zero() {
					continue;
				}
				let f = &d[(i, t)] / &d[(t, t)];
				row_axpy(&mut d, i, &f, t);
				row_axpy(&mut p, i, &f, t);
				clean &= d[(i, t)].is_zero();
			}
			for j in t + 1..n {
				if d[(t, j)].is_zero() {
					continue;
				}
				let f = &d[(t, j)] / &d[(t, t)];
				col_axpy(&mut d, j, &f, t);
				col_axpy(&mut q, j, &f, t);
				clean &= d[(t, j)].is_zero();
			}
			if !clean {
				continue;
			}
			let piv = d[(t, t)].clone();
			let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&piv)));
			match offender {
				Some(i) => {
					let minus_one = -Int::one();
					row_axpy(&mut d, t, &minus_one, i);
					row_axpy(&mut p, t, &minus_one, i);
				}
				None => break,
			}
		}
		if d[(t, t)].is_negative() {
			negate_row(&mut d, t);
			negate_row(&mut p, t);
		}
	}
	Smith { p, q, diagonal: (0..size).map(|i| d[(i, i)].clone()).collect() }
}

#[cfg(test)]
mod tests {
	use super::*;
	use crate::arith::int;

	fn check_hermite(m: &IntMatrix) {
		let hf = column_hermite(m);
		assert_eq!(m.mul(&hf.u), hf.h);
		assert_eq!(hf.u.det().abs(), int(1));
		for (c, &r) in hf.pivot_rows.iter().enumerate() {
			assert!(hf.h[(r, c)] > int(0));
			for j in 0..c {
				assert!(hf.h[(r, j)] >= int(0) && hf.h[(r, j)] < hf.h[(r, c)]);
			}
			for j in c + 1..m.cols() {
				assert!(hf.h[(r, j)].is_zero());
			}
			for i in 0..r {
				assert!(hf.h[(i, c)].is_zero());
			}
		}
		for c in hf.rank()..m.cols() {
			assert!((0..m.rows()).all(|i| hf.h[(i, c)].is_zero()));
		}
	}

	fn check_smith(a: &IntMatrix) {
		let s = smith(a);
		let d = s.p.mul(a).mul(&s.q);
		for i in 0..d.rows() {
			for j in 0..d.cols() {
				if i == j {
					assert_eq!(d[(i, j)], s.diagonal[i]);
				} else {
					assert!(d[(i, j)].is_zero());
				}
			}
		}
		assert_eq!(s.p.det().abs(), int(1));
		assert_eq!(s.q.det().abs(), int(1));
		for w in s.diagonal.windows(2) {
			assert!(w[0] >= int(0));
			if !w[0].is_zero() {
				assert!(w[1].is_multiple_of(&w[0]));
			} else {
				assert!(w[1].is_zero());
			}
		}
	}

	#[test]
	fn hermite_examples() {
		check_hermite(&IntMatrix::from_i64(&[vec![2, 4], vec![6, 8], vec![1, 3]]));
		check_hermite(&IntMatrix::from_i64(&[vec![0, 0, 3], vec![2, 4, 1], vec![1, 2, 5]]));
		check_hermite(&IntMatrix::from_i64(&[vec![-3, 5, 7, 1]]));
	}

	#[test]
	fn smith_of_diagonal_example() {
		let s = smith(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]));
		assert_eq!(s.diagonal, vec![int(1), int(6)]);
		let s = smith(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 6]]));
		assert_eq!(s.diagonal, vec![int(2), int(6)]);
	}

	#[test]
	fn smith_of_cycle_gram_of_complete_graph_on_four_vertices() {
		let a = IntMatrix::from_i64(&[vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]]);
		check_smith(&a);
		assert_eq!(smith(&a).diagonal, vec![int(1), int(4), int(4)]);
	}

	#[test]
	fn smith_rectangular_and_singular() {
		check_smith(&IntMatrix::from_i64(&[vec![4, 6, 2], vec![2, 3, 1]]));
		check_smith(&IntMatrix::from_i64(&[vec![0, 0], vec![0, 0], vec![5, 10]]));
	}

	mod props {
		use super::*;
		use proptest::prelude::*;

		fn small_matrix() -> impl Strategy<Value = IntMatrix> {
			(1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
				proptest::collection::vec(-6i64..7, r * c).prop_map(move |v| {
					IntMatrix::from_i64(&v.chunks(c).map(|ch| ch.to_vec()).collect::<Vec<_>>())
				})
			})
		}

		proptest! {
			#[test]
			fn hermite_is_valid(m in small_matrix()) { check_hermite(&m); }

			#[test]
			fn smith_is_valid(m in small_matrix()) { check_smith(&m); }

			#[test]
			fn hermite_is_invariant_under_unimodular_change(m in small_matrix(), seed in 0u64..1000) {
				let k = m.cols();
				let mut u = IntMatrix::identity(k);
				if k > 1 {
					let (a, b) = ((seed % k as u64) as usize, ((seed / 7 + 1) % k as u64) as usize);
					if a != b {
						for i in 0..k {
							let t = &u[(i, b)] * int((seed % 5) as i64 - 2);
							u[(i, a)] += t;
						}
					}
					u.swap_cols(0, k - 1);
				}
				let h1 = column_hermite(&m).h;
				let h2 = column_hermite(&m.mul(&u)).h;
				prop_assert_eq!(h1, h2);
			}
		}
	}
}
