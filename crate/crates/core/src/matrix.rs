//! Dense row-major matrices over exact rings.

use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::arith::{rat_from_int, Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
	rows: usize,
	cols: usize,
	data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

impl<T: Clone> Matrix<T> {
	pub fn filled(rows: usize, cols: usize, value: T) -> Self {
		Matrix { rows, cols, data: vec![value; rows * cols] }
	}

	/// Builds from rows; panics on ragged input.
	pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
		let r = rows.len();
		let c = rows.first().map_or(0, Vec::len);
		assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
		Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
	}

	/// Builds an `rows x columns.len()` matrix from column vectors.
	pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self
	where
		T: Zero,
	{
		let mut m = Matrix::filled(rows, columns.len(), T::zero());
		for (j, col) in columns.iter().enumerate() {
			assert_eq!(col.len(), rows, "column length");
			for (i, v) in col.iter().enumerate() {
				m[(i, j)] = v.clone();
			}
		}
		m
	}

	pub fn rows(&self) -> usize {
		self.rows
	}

	pub fn cols(&self) -> usize {
		self.cols
	}

	pub fn row(&self, i: usize) -> &[T] {
		&self.data[i * self.cols..(i + 1) * self.cols]
	}

	pub fn col(&self, j: usize) -> Vec<T> {
		(0..self.rows).map(|i| self[(i, j)].clone()).collect()
	}

	pub fn columns(&self) -> Vec<Vec<T>> {
		(0..self.cols).map(|j| self.col(j)).collect()
	}

	pub fn to_rows(&self) -> Vec<Vec<T>> {
		(0..self.rows).map(|i| self.row(i).to_vec()).collect()
	}

	pub fn transpose(&self) -> Self {
		let mut data = Vec::with_capacity(self.data.len());
		for j in 0..self.cols {
			for i in 0..self.rows {
				data.push(self[(i, j)].clone());
			}
		}
		Matrix { rows: self.cols, cols: self.rows, data }
	}

	pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
		Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
	}

	pub fn swap_rows(&mut self, a: usize, b: usize) {
		if a == b {
			return;
		}
		for j in 0..self.cols {
			self.data.swap(a * self.cols + j, b * self.cols + j);
		}
	}

	pub fn swap_cols(&mut self, a: usize, b: usize) {
		if a == b {
			return;
		}
		for i in 0..self.rows {
			self.data.swap(i * self.cols + a, i * self.cols + b);
		}
	}

	/// Horizontal concatenation.
	pub fn hcat(&self, other: &Self) -> Self {
		assert_eq!(self.rows, other.rows, "hcat row mismatch");
		let rows = (0..self.rows)
			.map(|i| {
				let mut r = self.row(i).to_vec();
				r.extend_from_slice(other.row(i));
				r
			})
			.collect();
		let mut m = Matrix::from_rows(rows);
		if self.rows == 0 {
			m.cols = self.cols + other.cols;
		}
		m
	}

	/// Keeps the listed columns in order.
	pub fn select_cols(&self, cols: &[usize]) -> Self {
		let mut data = Vec::with_capacity(self.rows * cols.len());
		for i in 0..self.rows {
			for &j in cols {
				data.push(self[(i, j)].clone());
			}
		}
		Matrix { rows: self.rows, cols: cols.len(), data }
	}

	pub fn select_rows(&self, rows: &[usize]) -> Self {
		let mut data = Vec::with_capacity(self.cols * rows.len());
		for &i in rows {
			data.extend_from_slice(self.row(i));
		}
		Matrix { rows: rows.len(), cols: self.cols, data }
	}
}

impl<T: Clone + Zero + One> Matrix<T> {
	pub fn zeros(rows: usize, cols: usize) -> Self {
		Matrix::filled(rows, cols, T::zero())
	}

	pub fn identity(n: usize) -> Self {
		let mut m = Matrix::zeros(n, n);
		for i in 0..n {
			m[(i, i)] = T::one();
		}
		m
	}

	pub fn is_zero(&self) -> bool {
		self.data.iter().all(Zero::is_zero)
	}

	pub fn mul(&self, other: &Self) -> Self {
		assert_eq!(self.cols, other.rows, "matrix product shape");
		let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
		for i in 0..self.rows {
			for k in 0..self.cols {
				let a = &self[(i, k)];
				if a.is_zero() {
					continue;
				}
				for j in 0..other.cols {
					let t = a.clone() * other[(k, j)].clone();
					out[(i, j)] = out[(i, j)].clone() + t;
				}
			}
		}
		out
	}

	pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
		assert_eq!(self.cols, v.len(), "matrix-vector shape");
		(0..self.rows)
			.map(|i| {
				self.row(i)
					.iter()
					.zip(v)
					.fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
			})
			.collect()
	}

	pub fn add(&self, other: &Self) -> Self {
		assert_eq!((self.rows, self.cols), (other.rows, other.cols));
		Matrix {
			rows: self.rows,
			cols: self.cols,
			data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
		}
	}

	pub fn is_symmetric(&self) -> bool
	where
		T: PartialEq,
	{
		self.rows == self.cols
			&& (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
	}
}

impl<T> Index<(usize, usize)> for Matrix<T> {
	type Output = T;
	fn index(&self, (i, j): (usize, usize)) -> &T {
		debug_assert!(i < self.rows && j < self.cols);
		&self.data[i * self.cols + j]
	}
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
	fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
		debug_assert!(i < self.rows && j < self.cols);
		&mut self.data[i * self.cols + j]
	}
}

impl IntMatrix {
	pub fn from_i64(rows: &[Vec<i64>]) -> Self {
		Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect())
	}

	pub fn to_rat(&self) -> RatMatrix {
		self.map(rat_from_int)
	}

	/// `MᵗM`.
	pub fn gram(&self) -> IntMatrix {
		self.transpose().mul(self)
	}

	/// Fraction-free determinant.
	pub fn det(&self) -> Int {
		assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
		let n = self.rows;
		if n == 0 {
			return Int::one();
		}
		let mut m = self.clone();
		let mut sign = Int::one();
		let mut prev = Int::one();
		for k in 0..n - 1 {
			if m[(k, k)].is_zero() {
				let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
					return Int::zero();
				};
				m.swap_rows(k, p);
				sign = -sign;
			}
			for i in k + 1..n {
				for j in k + 1..n {
					let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
					m[(i, j)] = v / &prev;
				}
			}
			prev = m[(k, k)].clone();
		}
		sign * m[(n - 1, n - 1)].clone()
	}
}

/// Reduced row echelon form with pivot columns.
pub struct Rref {
	pub matrix: RatMatrix,
	pub pivots: Vec<usize>,
}

impl RatMatrix {
	pub fn from_i64(rows: &[Vec<i64>]) -> Self {
		IntMatrix::from_i64(rows).to_rat()
	}

	pub fn scale(&self, s: &Rat) -> RatMatrix {
		self.map(|v| v * s)
	}

	pub fn rref(&self) -> Rref {
		let mut m = self.clone();
		let mut pivots = Vec::new();
		let mut r = 0;
		for c in 0..m.cols {
			if r == m.rows {
				break;
			}
			let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
				continue;
			};
			m.swap_rows(r, p);
			let inv = m[(r, c)].recip();
			for j in c..m.cols {
				m[(r, j)] = &m[(r, j)] * &inv;
			}
			for i in 0..m.rows {
				if i == r || m[(i, c)].is_zero() {
					continue;
				}
				let f = m[(i, c)].clone();
				for j in c..m.cols {
					let t = &f * &m[(r, j)];
					m[(i, j)] -= t;
				}
			}
			pivots.push(c);
			r += 1;
		}
		Rref { matrix: m, pivots }
	}

	pub fn rank(&self) -> usize {
		self.rref().pivots.len()
	}

	/// Basis of the right null space, one vector per free column.
	pub fn kernel(&self) -> Vec<Vec<Rat>> {
		let Rref { matrix, pivots } = self.rref();
		let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
		free.iter()
			.map(|&f| {
				let mut v = vec![Rat::zero(); self.cols];
				v[f] = Rat::one();
				for (r, &p) in pivots.iter().enumerate() {
					v[p] = -matrix[(r, f)].clone();
				}
				v
			})
			.collect()
	}

	pub fn det(&self) -> Rat {
		assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
		let mut m = self.clone();
		let n = m.rows;
		let mut det = Rat::one();
		for c in 0..n {
			let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
				return Rat::zero();
			};
			if p != c {
				m.swap_rows(p, c);
				det = -det;
			}
			let piv = m[(c, c)].clone();
			det *= &piv;
			for i in c + 1..n {
				if m[(i, c)].is_zero() {
					continue;
				}
				let f = &m[(i, c)] / &piv;
				for j in c..n {
					let t = &f * &m[(c, j)];
					m[(i, j)] -= t;
				}
			}
		}
		det
	}

	pub fn inverse(&self) -> Option<RatMatrix> {
		let n = self.rows;
		assert_eq!(n, self.cols, "inverse of a non-square matrix");
		if n == 0 {
			return Some(self.clone());
		}
		let aug = self.hcat(&RatMatrix::identity(n));
		let Rref { matrix, pivots } = aug.rref();
		if pivots.len() < n || pivots[n - 1] >= n {
			return None;
		}
		Some(matrix.select_cols(&(n..2 * n).collect::<Vec<_>>()))
	}

	/// Some solution of `self * x = b`, or `None` when inconsistent.
	pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
		assert_eq!(self.rows, b.len(), "right-hand side length");
		let col = RatMatrix::from_columns(self.rows, &[b.to_vec()]);
		let Rref { matrix, pivots } = self.hcat(&col).rref();
		if pivots.last() == Some(&self.cols) {
			return None;
		}
		let mut x = vec![Rat::zero(); self.cols];
		for (r, &p) in pivots.iter().enumerate() {
			x[p] = matrix[(r, self.cols)].clone();
		}
		Some(x)
	}

	/// Entrywise integer conversion when every entry is integral.
	pub fn to_int(&self) -> Option<IntMatrix> {
		self.data
			.iter()
			.all(|r| r.is_integer())
			.then(|| self.map(|r| r.to_integer()))
	}

	/// Entries as `p/q` strings, row by row.
	pub fn to_strings(&self) -> Vec<Vec<String>> {
		self.to_rows().iter().map(|r| r.iter().map(crate::arith::format_rational).collect()).collect()
	}

	pub fn max_abs_f64(&self) -> f64 {
		self.data
			.iter()
			.map(|r| crate::arith::rat_to_f64(&r.abs()))
			.fold(0.0, f64::max)
	}
}

#[cfg(test)]
mod tests {
	use super::*;
	use crate::arith::{int, rat};

	#[test]
	fn bareiss_matches_known_determinants() {
		let m = IntMatrix::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
		assert_eq!(m.det(), int(4));
		let s = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
		assert_eq!(s.det(), int(-1));
		let z = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
		assert_eq!(z.det(), int(0));
	}

	#[test]
	fn rational_inverse_and_kernel() {
		let m = RatMatrix::from_i64(&[vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]]);
		let inv = m.inverse().unwrap();
		assert_eq!(m.mul(&inv), RatMatrix::identity(3));
		assert_eq!(m.det(), rat(16, 1));
		let k = RatMatrix::from_i64(&[vec![1, 1, 1]]).kernel();
		assert_eq!(k.len(), 2);
		for v in &k {
			assert_eq!(v.iter().sum::<Rat>(), rat(0, 1));
		}
	}

	#[test]
	fn solve_detects_inconsistency() {
		let m = RatMatrix::from_i64(&[vec![1, 1], vec![2, 2]]);
		assert!(m.solve(&[rat(1, 1), rat(3, 1)]).is_none());
		let x = m.solve(&[rat(1, 1), rat(2, 1)]).unwrap();
		assert_eq!(&x[0] + &x[1], rat(1, 1));
	}
}
