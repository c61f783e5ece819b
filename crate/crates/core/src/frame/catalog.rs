//! Named frames: polygons, simplices, root systems, Pythagorean pairs, Platonic solids.

use num_integer::Integer;

use super::{frame_from_summand, Frame};
use crate::arith::{int, rat, Rat};
use crate::error::{Error, Result};
use crate::lattice::IntLattice;
use crate::matrix::RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootFamily {
	A,
	B,
	C,
	D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogFrame {
	/// `n` unit vectors at angles `2πk/n`, scaled to be 1-tight.
	RegularPolygon(usize),
	/// `d + 1` vectors of the equilateral simplex, 1-tight.
	Simplex(usize),
	/// Positive roots of a classical root system.
	RootSystem(RootFamily, usize),
	G2,
	/// `(1,0), (x/z, y/z), (0,1), (-y/z, x/z)`.
	Pythagorean(i64, i64, i64),
	Tetrahedron,
	Cube,
	Octahedron,
	OrthonormalBasis(usize),
}

/// Parses `polygon:6`, `simplex:3`, `root:A:2`, `g2`, `pythagorean:3:4:5`,
/// `tetrahedron`, `cube`, `octahedron`, `orthonormal:3`.
pub fn parse_catalog_name(s: &str) -> Result<CatalogFrame> {
	let parts: Vec<&str> = s.trim().split(':').collect();
	let num = |t: &str| -> Result<usize> { t.parse().map_err(|_| Error::Parse(format!("bad number {t:?} in {s:?}"))) };
	let signed = |t: &str| -> Result<i64> { t.parse().map_err(|_| Error::Parse(format!("bad number {t:?} in {s:?}"))) };
	let lower: Vec<String> = parts.iter().map(|p| p.to_ascii_lowercase()).collect();
	let lower: Vec<&str> = lower.iter().map(String::as_str).collect();
	Ok(match lower.as_slice() {
		["polygon", n] => CatalogFrame::RegularPolygon(num(n)?),
		["simplex", d] => CatalogFrame::Simplex(num(d)?),
		["g2"] | ["root", "g", "2"] => CatalogFrame::G2,
		["root", fam, r] => {
			let family = match *fam {
				"a" => RootFamily::A,
				"b" => RootFamily::B,
				"c" => RootFamily::C,
				"d" => RootFamily::D,
				_ => return Err(Error::Parse(format!("unknown root family in {s:?}"))),
			};
			CatalogFrame::RootSystem(family, num(r)?)
		}
		["pythagorean", x, y, z] => CatalogFrame::Pythagorean(signed(x)?, signed(y)?, signed(z)?),
		["tetrahedron"] => CatalogFrame::Tetrahedron,
		["cube"] => CatalogFrame::Cube,
		["octahedron"] => CatalogFrame::Octahedron,
		["orthonormal", d] => CatalogFrame::OrthonormalBasis(num(d)?),
		_ => return Err(Error::Parse(format!("unknown catalog frame {s:?}"))),
	})
}

pub fn catalog_frame(name: CatalogFrame) -> Result<Frame> {
	match name {
		CatalogFrame::RegularPolygon(n) => regular_polygon(n),
		CatalogFrame::Simplex(d) => {
			if d == 0 {
				return Err(Error::BadParameters("simplex needs d >= 1".into()));
			}
			frame_from_summand(&IntLattice::from_vectors(d + 1, &[vec![int(1); d + 1]]), d)
		}
		CatalogFrame::RootSystem(family, r) => root_system(family, r),
		CatalogFrame::G2 => {
			let roots = [[1, -1, 0], [-2, 1, 1], [-1, 0, 1], [0, -1, 1], [1, -2, 1], [-1, -1, 2]];
			in_sum_zero_plane(&roots.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
		}
		CatalogFrame::Pythagorean(x, y, z) => pythagorean(x, y, z),
		CatalogFrame::Tetrahedron => {
			Frame::from_i64(&[vec![1, 1, 1], vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]])
		}
		CatalogFrame::Cube => {
			let rows: Vec<Vec<i64>> = (0..8)
				.map(|k| (0..3).map(|b| if k >> (2 - b) & 1 == 0 { 1 } else { -1 }).collect())
				.collect();
			Frame::from_i64(&rows)
		}
		CatalogFrame::Octahedron => {
			let rows: Vec<Vec<i64>> = (0..6)
				.map(|k| (0..3).map(|j| if j == k % 3 { if k < 3 { 1 } else { -1 } } else { 0 }).collect())
				.collect();
			Frame::from_i64(&rows)
		}
		CatalogFrame::OrthonormalBasis(d) => {
			if d == 0 {
				return Err(Error::BadParameters("dimension must be positive".into()));
			}
			Frame::exact(RatMatrix::identity(d), vec![1; d])
		}
	}
}

fn regular_polygon(n: usize) -> Result<Frame> {
	if n < 3 {
		return Err(Error::BadParameters(format!("polygon needs at least 3 vertices, got {n}")));
	}
	let scale = rat(2, n as i64);
	// the sine column is written over sqrt(3): sqrt(3)/2 = (3/2)/sqrt(3)
	let (cos, sin3): (Vec<Rat>, Vec<Rat>) = match n {
		3 => (vec![rat(1, 1), rat(-1, 2), rat(-1, 2)], vec![rat(0, 1), rat(3, 2), rat(-3, 2)]),
		6 => (
			vec![rat(1, 1), rat(1, 2), rat(-1, 2), rat(-1, 1), rat(-1, 2), rat(1, 2)],
			vec![rat(0, 1), rat(3, 2), rat(3, 2), rat(0, 1), rat(-3, 2), rat(-3, 2)],
		),
		4 => {
			let base = Frame::from_i64(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]])?;
			return base.scale_sqrt(&scale);
		}
		_ => {
			let f = (2.0 / n as f64).sqrt();
			let rows = (0..n)
				.map(|k| {
					let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
					vec![f * t.cos(), f * t.sin()]
				})
				.collect();
			return Frame::approximate(rows);
		}
	};
	let coeffs = RatMatrix::from_rows(cos.into_iter().zip(sin3).map(|(c, s)| vec![c, s]).collect());
	Frame::exact(coeffs, vec![1, 3])?.scale_sqrt(&scale)
}

fn root_system(family: RootFamily, r: usize) -> Result<Frame> {
	let min = match family {
		RootFamily::A => 1,
		RootFamily::B => 2,
		RootFamily::C => 3,
		RootFamily::D => 4,
	};
	if r < min {
		return Err(Error::BadParameters(format!("{family:?}_{r} needs rank at least {min}")));
	}
	if family == RootFamily::A {
		let mut roots = Vec::new();
		for i in 0..=r {
			for j in i + 1..=r {
				let mut v = vec![0i64; r + 1];
				v[i] = 1;
				v[j] = -1;
				roots.push(v);
			}
		}
		return in_sum_zero_plane(&roots);
	}
	let unit = |i: usize, c: i64| {
		let mut v = vec![0i64; r];
		v[i] = c;
		v
	};
	let mut roots = Vec::new();
	for i in 0..r {
		for j in i + 1..r {
			for s in [-1, 1] {
				let mut v = unit(i, 1);
				v[j] = s;
				roots.push(v);
			}
		}
	}
	match family {
		RootFamily::B => roots.extend((0..r).map(|i| unit(i, 1))),
		RootFamily::C => roots.extend((0..r).map(|i| unit(i, 2))),
		_ => {}
	}
	Frame::from_i64(&roots)
}

/// Re-expresses vectors of the sum-zero hyperplane of `R^{n}` in the orthonormal basis
/// given by the columns of the simplex frame.
fn in_sum_zero_plane(vectors: &[Vec<i64>]) -> Result<Frame> {
	let n = vectors[0].len();
	let simplex = catalog_frame(CatalogFrame::Simplex(n - 1))?;
	let (basis, surds) = simplex.exact_parts().expect("simplex is exact");
	let v = RatMatrix::from_i64(vectors);
	Frame::exact(v.mul(basis), surds.to_vec())
}

fn pythagorean(x: i64, y: i64, z: i64) -> Result<Frame> {
	let valid = x > 0
		&& y > 0
		&& z > 0
		&& x.checked_mul(x).zip(y.checked_mul(y)).and_then(|(a, b)| a.checked_add(b)) == z.checked_mul(z)
		&& x.gcd(&y) == 1;
	if !valid {
		return Err(Error::BadParameters(format!("({x},{y},{z}) is not a primitive Pythagorean triple")));
	}
	let rows = vec![
		vec![rat(1, 1), rat(0, 1)],
		vec![rat(x, z), rat(y, z)],
		vec![rat(0, 1), rat(1, 1)],
		vec![rat(-y, z), rat(x, z)],
	];
	Frame::rational(rows)
}
