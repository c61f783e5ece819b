//! Summands of bounded height.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive};

use super::{smith, IntLattice};
use crate::arith::{int, rat, rat_pow, Int, Rat};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug)]
pub struct EnumerationLimits {
	/// Short vectors kept for the basis search.
	pub max_vectors: usize,
	pub max_results: usize,
}

impl Default for EnumerationLimits {
	fn default() -> Self {
		EnumerationLimits { max_vectors: 200_000, max_results: 100_000 }
	}
}

/// A summand together with its squared height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedSummand {
	pub lattice: IntLattice,
	pub height_squared: Int,
}

/// Rank `rank` summands of `Z^n` with squared covolume at most `height_sq_bound`.
pub fn enumerate_summands(n: usize, rank: usize, height_sq_bound: &Rat) -> Result<Vec<RankedSummand>> {
	enumerate_summands_with_gram(&IntMatrix::identity(n), rank, height_sq_bound, EnumerationLimits::default())
}

/// `gamma_k^k` for the Hermite constant, exact for `k <= 8`.
fn hermite_power(k: usize) -> Rat {
	match k {
		0 | 1 => Rat::one(),
		2 => rat(4, 3),
		3 => rat(2, 1),
		4 => rat(4, 1),
		5 => rat(8, 1),
		6 => rat(64, 3),
		7 => rat(64, 1),
		8 => rat(256, 1),
		// gamma_k <= 1 + k/4
		_ => rat_pow(&rat(4 + k as i64, 4), k as u32),
	}
}

/// Largest integer `t` with `t^e <= bound`.
fn integer_root_floor(bound: &Rat, e: u32) -> i64 {
	let approx = crate::arith::rat_to_f64(bound).powf(1.0 / e as f64).floor() as i64;
	let mut t = approx.max(0) + 2;
	while t > 0 && rat_pow(&Rat::from_integer(int(t)), e) > *bound {
		t -= 1;
	}
	t
}

/// Summands of `Z^n` with metric `gram` (integral, positive definite).
///
/// Every summand has a reduced basis whose norms are bounded in terms of the
/// covolume, so scanning tuples of short primitive vectors is exhaustive.
pub fn enumerate_summands_with_gram(
	gram: &IntMatrix,
	rank: usize,
	height_sq_bound: &Rat,
	limits: EnumerationLimits,
) -> Result<Vec<RankedSummand>> {
	let n = gram.rows();
	if !gram.is_symmetric() {
		return Err(Error::DimensionMismatch("metric must be a symmetric square matrix".into()));
	}
	if rank > n {
		return Err(Error::InvalidRank(format!("rank {rank} exceeds ambient rank {n}")));
	}
	if height_sq_bound.is_negative() {
		return Ok(Vec::new());
	}
	if rank == 0 {
		return Ok(if *height_sq_bound >= Rat::one() {
			vec![RankedSummand { lattice: IntLattice::zero(n), height_squared: Int::one() }]
		} else {
			Vec::new()
		});
	}
	let g64: Vec<Vec<i64>> = gram
		.to_rows()
		.iter()
		.map(|r| r.iter().map(|v| v.to_i64().ok_or_else(|| Error::InputTooLarge("metric entry".into()))).collect())
		.collect::<Result<_>>()?;

	let k = rank;
	let core = hermite_power(k) * height_sq_bound;
	let norm_limits: Vec<i64> = (1..=k)
		.map(|j| {
			let e = (k - j + 1) as u32;
			let slack = if j > 4 { rat_pow(&rat(5, 4), (j - 4) as u32) } else { Rat::one() };
			integer_root_floor(&(core.clone() * rat_pow(&slack, e)), e)
		})
		.collect();
	let longest = *norm_limits.iter().max().unwrap_or(&0);
	let vectors = short_vectors(&g64, longest, limits.max_vectors)?;

	let mut found: BTreeMap<IntLattice, Int> = BTreeMap::new();
	let mut chosen: Vec<usize> = Vec::with_capacity(k);
	search(&g64, &vectors, &norm_limits, height_sq_bound, &mut chosen, 0, &mut found, &limits)?;

	let mut out: Vec<RankedSummand> = found
		.into_iter()
		.map(|(lattice, height_squared)| RankedSummand { lattice, height_squared })
		.collect();
	out.sort_by(|a, b| a.height_squared.cmp(&b.height_squared).then_with(|| a.lattice.cmp(&b.lattice)));
	Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
	g: &[Vec<i64>],
	vectors: &[(i64, Vec<i64>)],
	norm_limits: &[i64],
	bound: &Rat,
	chosen: &mut Vec<usize>,
	start: usize,
	found: &mut BTreeMap<IntLattice, Int>,
	limits: &EnumerationLimits,
) -> Result<()> {
	let depth = chosen.len();
	let k = norm_limits.len();
	for idx in start..vectors.len() {
		if vectors[idx].0 > norm_limits[depth] {
			break;
		}
		chosen.push(idx);
		let gm = gram_of(g, vectors, chosen);
		let det = det_i128(&gm);
		if det > 0 {
			if depth + 1 == k {
				if Rat::from_integer(Int::from(det)) <= *bound {
					record(vectors, chosen, g.len(), det, found, limits)?;
				}
			} else {
				search(g, vectors, norm_limits, bound, chosen, idx + 1, found, limits)?;
			}
		}
		chosen.pop();
	}
	Ok(())
}

fn record(
	vectors: &[(i64, Vec<i64>)],
	chosen: &[usize],
	n: usize,
	det: i128,
	found: &mut BTreeMap<IntLattice, Int>,
	limits: &EnumerationLimits,
) -> Result<()> {
	let cols: Vec<Vec<Int>> = chosen.iter().map(|&i| vectors[i].1.iter().map(|&x| int(x)).collect()).collect();
	let m = IntMatrix::from_columns(n, &cols);
	if !smith(&m).diagonal.iter().all(One::is_one) {
		return Ok(());
	}
	let lattice = IntLattice::from_generators(&m);
	found.entry(lattice).or_insert_with(|| Int::from(det));
	if found.len() > limits.max_results {
		return Err(Error::BoundTooLarge(format!("more than {} summands", limits.max_results)));
	}
	Ok(())
}

fn gram_of(g: &[Vec<i64>], vectors: &[(i64, Vec<i64>)], chosen: &[usize]) -> Vec<Vec<i128>> {
	chosen
		.iter()
		.map(|&a| chosen.iter().map(|&b| form(g, &vectors[a].1, &vectors[b].1)).collect())
		.collect()
}

fn form(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i128 {
	let mut s: i128 = 0;
	for (i, row) in g.iter().enumerate() {
		if x[i] == 0 {
			continue;
		}
		let mut t: i128 = 0;
		for (j, &gij) in row.iter().enumerate() {
			t += gij as i128 * y[j] as i128;
		}
		s += x[i] as i128 * t;
	}
	s
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
	let n = m.len();
	let mut a = m.to_vec();
	let mut sign = 1;
	let mut prev: i128 = 1;
	for k in 0..n {
		if a[k][k] == 0 {
			match (k + 1..n).find(|&i| a[i][k] != 0) {
				Some(p) => {
					a.swap(k, p);
					sign = -sign;
				}
				None => return 0,
			}
		}
		for i in k + 1..n {
			for j in k + 1..n {
				a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
			}
		}
		prev = a[k][k];
	}
	if n == 0 {
		1
	} else {
		sign * a[n - 1][n - 1]
	}
}

/// Nonzero vectors with `x^t G x <= limit`, first nonzero entry positive,
/// sorted by norm then lexicographically.
fn short_vectors(g: &[Vec<i64>], limit: i64, max: usize) -> Result<Vec<(i64, Vec<i64>)>> {
	let n = g.len();
	// G = U^t D U with U unit upper triangular, in floating point for pruning only.
	let mut d = vec![0.0f64; n];
	let mut u = vec![vec![0.0f64; n]; n];
	for i in 0..n {
		let mut di = g[i][i] as f64;
		for kk in 0..i {
			di -= d[kk] * u[kk][i] * u[kk][i];
		}
		if di <= 0.0 {
			return Err(Error::DimensionMismatch("metric is not positive definite".into()));
		}
		d[i] = di;
		u[i][i] = 1.0;
		for j in i + 1..n {
			let mut s = g[i][j] as f64;
			for kk in 0..i {
				s -= d[kk] * u[kk][i] * u[kk][j];
			}
			u[i][j] = s / di;
		}
	}
	let mut out = Vec::new();
	let mut x = vec![0i64; n];
	let budget = limit as f64 * (1.0 + 1e-9) + 1e-9;
	fn walk(
		i: usize,
		rest: f64,
		x: &mut Vec<i64>,
		d: &[f64],
		u: &[Vec<f64>],
		g: &[Vec<i64>],
		limit: i64,
		out: &mut Vec<(i64, Vec<i64>)>,
		max: usize,
	) -> Result<()> {
		let n = x.len();
		let center: f64 = -(i + 1..n).map(|j| u[i][j] * x[j] as f64).sum::<f64>();
		let radius = (rest.max(0.0) / d[i]).sqrt();
		let lo = (center - radius - 1e-9).ceil() as i64;
		let hi = (center + radius + 1e-9).floor() as i64;
		for v in lo..=hi {
			x[i] = v;
			let used = d[i] * (v as f64 - center).powi(2);
			let left = rest - used;
			if left < -1e-7 {
				continue;
			}
			if i == 0 {
				let norm = form(g, x, x);
				if norm == 0 || norm > limit as i128 {
					continue;
				}
				if x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
					out.push((norm as i64, x.clone()));
					if out.len() > max {
						return Err(Error::BoundTooLarge(format!("more than {max} short vectors")));
					}
				}
			} else {
				walk(i - 1, left, x, d, u, g, limit, out, max)?;
			}
		}
		x[i] = 0;
		Ok(())
	}
	if n > 0 {
		walk(n - 1, budget, &mut x, &d, &u, g, limit, &mut out, max)?;
	}
	out.sort();
	Ok(out)
}

fn ball_count(n: usize, r2: u64) -> u128 {
	let isqrt = |v: u64| -> u64 {
		let mut s = (v as f64).sqrt() as u64;
		while s * s > v {
			s -= 1;
		}
		while (s + 1) * (s + 1) <= v {
			s += 1;
		}
		s
	};
	match n {
		0 => 1,
		1 => 2 * isqrt(r2) as u128 + 1,
		_ => {
			let r = isqrt(r2);
			let mut total = ball_count(n - 1, r2);
			for x in 1..=r {
				total += 2 * ball_count(n - 1, r2 - x * x);
			}
			total
		}
	}
}

fn mobius_table(limit: usize) -> Vec<i8> {
	let mut mu = vec![1i8; limit + 1];
	let mut is_comp = vec![false; limit + 1];
	for p in 2..=limit {
		if is_comp[p] {
			continue;
		}
		for m in (p..=limit).step_by(p) {
			if m > p {
				is_comp[m] = true;
			}
			mu[m] = -mu[m];
		}
		let sq = p * p;
		for m in (sq..=limit).step_by(sq) {
			mu[m] = 0;
		}
	}
	mu
}

/// Exact number of rank-one summands of `Z^n` with squared height at most `h_sq`.
pub fn count_rank1_summands(n: usize, h_sq: u64) -> Result<u128> {
	if n == 0 {
		return Ok(0);
	}
	let r = (h_sq as f64).sqrt().floor() as u64;
	let work = (2.0 * r as f64 + 1.0).powi(n as i32 - 1);
	if work > 5e8 {
		return Err(Error::BoundTooLarge(format!("ball of squared radius {h_sq} in dimension {n}")));
	}
	let mu = mobius_table(r as usize);
	let mut signed: i128 = 0;
	for k in 1..=r {
		let m = mu[k as usize];
		if m == 0 {
			continue;
		}
		let inner = ball_count(n, h_sq / (k * k)) as i128 - 1;
		signed += m as i128 * inner;
	}
	Ok((signed / 2) as u128)
}

fn zeta(s: usize) -> f64 {
	let k = 1000.0f64;
	let sf = s as f64;
	let head: f64 = (1..1000).map(|i| (i as f64).powf(-sf)).sum();
	head + k.powf(1.0 - sf) / (sf - 1.0) + 0.5 * k.powf(-sf) + sf * k.powf(-sf - 1.0) / 12.0
}

fn gamma_one_plus_half(n: usize) -> f64 {
	if n % 2 == 0 {
		(1..=n / 2).map(|i| i as f64).product()
	} else {
		let m = (n - 1) / 2;
		std::f64::consts::PI.sqrt() * (0..=m).map(|j| j as f64 + 0.5).product::<f64>()
	}
}

/// Leading term of the count of rank-one summands of height at most `h` in `Z^n`, `n >= 2`.
pub fn rank1_asymptotic(n: usize, h: f64) -> f64 {
	let ball = std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_one_plus_half(n);
	0.5 / zeta(n) * ball * h.powi(n as i32)
}
