use criterion::{black_box, criterion_group, criterion_main, Criterion};

use crystalframe::arith::rat;
use crystalframe::graph::corpus;
use crystalframe::jacobian::JacobianContext;
use crystalframe::lattice::{column_hermite, count_rank1_summands, smith};
use crystalframe::matrix::IntMatrix;
use crystalframe::nets::{enumerate_nets, standard_realization, VanishingSummand};

fn sample_matrix(n: usize) -> IntMatrix {
	// deterministic, full rank, mixed signs
	let rows: Vec<Vec<i64>> =
		(0..n).map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5 + if i == j { 9 } else { 0 }).collect()).collect();
	IntMatrix::from_i64(&rows)
}

fn normal_forms(c: &mut Criterion) {
	for n in [6, 10] {
		let m = sample_matrix(n);
		c.bench_function(&format!("hermite {n}x{n}"), |b| b.iter(|| column_hermite(black_box(&m))));
		c.bench_function(&format!("smith {n}x{n}"), |b| b.iter(|| smith(black_box(&m))));
	}
}

fn graphs(c: &mut Criterion) {
	let k6 = corpus::complete(6);
	c.bench_function("homology basis K6", |b| b.iter(|| black_box(&k6).homology_basis()));
	c.bench_function("jacobian K6", |b| b.iter(|| JacobianContext::new(black_box(&k6))));
	let kagome = corpus::kagome_base();
	let vs = VanishingSummand::zero(kagome.clone()).unwrap();
	c.bench_function("standard realization kagome", |b| b.iter(|| standard_realization(black_box(&vs)).unwrap()));
	let bound = rat(12, 1);
	c.bench_function("enumerate kagome d=2 h^2<=12", |b| b.iter(|| enumerate_nets(black_box(&kagome), 2, &bound).unwrap()));
}

fn heights(c: &mut Criterion) {
	c.bench_function("rank-1 count N=3 h=100", |b| b.iter(|| count_rank1_summands(3, black_box(10_000)).unwrap()));
}

criterion_group! {
	name = benches;
	config = Criterion::default().sample_size(20);
	targets = normal_forms, graphs, heights
}
criterion_main!(benches);
