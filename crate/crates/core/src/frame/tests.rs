use proptest::prelude::*;

use super::*;
use crate::arith::rat;
use crate::lattice::saturate;

fn lat(n: usize, vs: &[&[i64]]) -> IntLattice {
	IntLattice::from_vectors(n, &vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
}

fn cat(name: &str) -> Frame {
	catalog_frame(parse_catalog_name(name).unwrap()).unwrap()
}

fn alpha(f: &Frame) -> Option<Rat> {
	match f.tight_constant()? {
		TightConstant::Exact(a) => Some(a),
		TightConstant::Approximate(_) => panic!("expected an exact frame"),
	}
}

fn rat_rows(rows: &[&[(i64, i64)]]) -> RatMatrix {
	RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect()).collect())
}

#[test]
fn orthonormal_basis_is_one_tight() {
	let f = cat("orthonormal:3");
	let op = f.frame_operator();
	assert_eq!(op.exact.as_ref().unwrap().0, RatMatrix::identity(3));
	assert_eq!(alpha(&f), Some(rat(1, 1)));
	assert_eq!(op.determinant(), Some(rat(1, 1)));
}

#[test]
fn equilateral_triangle_has_identity_frame_operator() {
	let f = cat("polygon:3");
	assert!(f.is_exact());
	assert_eq!(alpha(&f), Some(rat(1, 1)));
	for v in f.vectors_f64() {
		assert!((v[0] * v[0] + v[1] * v[1] - 2.0 / 3.0).abs() < 1e-12);
	}
	let g = f.gram_exact().unwrap();
	assert_eq!(g[(0, 1)], rat(-1, 3));
}

#[test]
fn pythagorean_frame_operator_is_twice_identity() {
	let f = cat("pythagorean:3:4:5");
	assert_eq!(alpha(&f), Some(rat(2, 1)));
	let (c, _) = f.exact_parts().unwrap();
	assert_eq!(c, &rat_rows(&[&[(1, 1), (0, 1)], &[(3, 5), (4, 5)], &[(0, 1), (1, 1)], &[(-4, 5), (3, 5)]]));
	let h = f.vanishing_group().unwrap();
	let listed = lat(4, &[&[5, -3, 0, 4], &[0, 4, -5, 3]]);
	// the two listed relations span the relation module over Q, with index z
	assert_eq!(saturate(&listed), h);
	assert_eq!(crate::lattice::index_in(&listed, &h), Some(int(5)));
	assert!(h.contains(&[int(1), int(1), int(-2), int(2)]));
	assert!(catalog_frame(CatalogFrame::Pythagorean(6, 8, 10)).is_err());
	assert!(catalog_frame(CatalogFrame::Pythagorean(3, 4, 6)).is_err());
}

#[test]
fn tight_constants_add_and_perturbations_break_tightness() {
	let e = cat("orthonormal:2");
	assert_eq!(alpha(&join(&e, &e).unwrap()), Some(rat(2, 1)));
	let bumped = cat("polygon:6").with_vector_scaled(0, &rat(2, 1)).unwrap();
	assert!(!bumped.is_tight());
	assert!(!bumped.naimark_check());
}

#[test]
fn trace_equals_sum_of_squared_norms() {
	for name in ["polygon:3", "polygon:6", "simplex:4", "root:B:3", "g2", "cube", "pythagorean:5:12:13"] {
		let f = cat(name);
		let total: Rat = f.norms_squared().unwrap().into_iter().sum();
		assert_eq!(f.trace().unwrap(), total, "{name}");
		let float_trace = f.frame_operator().trace_f64();
		assert!((float_trace - rat_to_f64(&total)).abs() < 1e-9);
	}
}

#[test]
fn naimark_agrees_with_unit_tightness_on_the_catalog() {
	let names = [
		"polygon:3", "polygon:4", "polygon:5", "polygon:6", "polygon:8", "simplex:1", "simplex:2", "simplex:5",
		"root:A:1", "root:A:3", "root:B:2", "root:C:3", "root:D:4", "g2", "pythagorean:3:4:5", "tetrahedron",
		"cube", "octahedron", "orthonormal:4",
	];
	for name in names {
		let f = cat(name);
		let unit = f.tight_constant().is_some_and(|a| a.is_one());
		assert_eq!(f.naimark_check(), unit, "{name}");
		let normalized = f.normalized().unwrap();
		assert!(normalized.naimark_check(), "{name}");
	}
}

#[test]
fn crystallographic_polygons_are_three_four_six() {
	for n in 3..=12 {
		let f = catalog_frame(CatalogFrame::RegularPolygon(n)).unwrap();
		assert!(f.is_tight());
		assert_eq!(f.is_crystallographic(), matches!(n, 3 | 4 | 6), "n = {n}");
	}
	let sevenths = Frame::approximate(vec![vec![1.0 / 7.0, 0.0], vec![0.0, 3.0 / 7.0], vec![2.0 / 7.0, -1.0 / 7.0]]);
	assert!(sevenths.unwrap().is_crystallographic());
}

#[test]
fn polygons_and_simplices_sum_to_zero() {
	for name in ["polygon:3", "polygon:4", "polygon:6", "simplex:2", "simplex:3", "simplex:6"] {
		let f = cat(name);
		let (c, _) = f.exact_parts().unwrap();
		for col in c.columns() {
			assert!(col.iter().sum::<Rat>().is_zero(), "{name}");
		}
	}
}

#[test]
fn summand_frames_examples() {
	let f = frame_from_summand(&lat(3, &[&[1, 0, 0]]), 2).unwrap();
	let g = f.gram_exact().unwrap();
	assert!(g.row(0).iter().all(Zero::is_zero));
	assert_eq!(g.select_rows(&[1, 2]).select_cols(&[1, 2]), RatMatrix::identity(2));

	let tri = frame_from_summand(&lat(3, &[&[1, 1, 1]]), 2).unwrap();
	let g = tri.gram_exact().unwrap();
	for i in 0..3 {
		for j in 0..3 {
			assert_eq!(g[(i, j)], if i == j { rat(2, 3) } else { rat(-1, 3) });
		}
	}
	assert_eq!(tri.vanishing_group().unwrap(), lat(3, &[&[1, 1, 1]]));

	let basis = frame_from_summand(&IntLattice::zero(3), 3).unwrap();
	assert_eq!(basis.gram_exact().unwrap(), RatMatrix::identity(3));
	assert_eq!(basis.vanishing_group().unwrap().rank(), 0);

	assert_eq!(frame_from_summand(&lat(3, &[&[2, 0, 0]]), 2), Err(Error::NotASummand));
	assert!(matches!(frame_from_summand(&lat(3, &[&[1, 0, 0]]), 1), Err(Error::InvalidRank(_))));
}

#[test]
fn simplex_gram_and_root_systems() {
	let g = cat("simplex:3").gram_exact().unwrap();
	assert_eq!(g[(0, 0)], rat(3, 4));
	assert_eq!(g[(0, 3)], rat(-1, 4));
	let a2 = cat("root:A:2");
	assert_eq!(a2.size(), 3);
	assert!(a2.is_tight() && a2.is_crystallographic());
	assert_eq!(a2.norms_squared().unwrap(), vec![rat(2, 1); 3]);
	let sizes = [("root:A:3", 6), ("root:B:3", 9), ("root:C:3", 9), ("root:D:4", 12), ("g2", 6)];
	for (name, n) in sizes {
		let f = cat(name);
		assert_eq!(f.size(), n, "{name}");
		assert!(f.is_tight(), "{name}");
	}
	assert!(catalog_frame(CatalogFrame::RootSystem(RootFamily::D, 3)).is_err());
	assert!(catalog_frame(CatalogFrame::RootSystem(RootFamily::C, 2)).is_err());
}

#[test]
fn congruence_is_gram_equality() {
	let f = cat("pythagorean:3:4:5");
	let rot = rat_rows(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]]);
	let rotated = f.transform(&rot).unwrap();
	assert!(rotated.is_exact());
	assert!(congruent(&f, &rotated).unwrap());
	assert!(!congruent(&f, &f.permuted(&[1, 0, 2, 3])).unwrap());
	let a = frame_from_summand(&lat(3, &[&[1, 1, 1]]), 2).unwrap();
	let b = frame_from_summand(&lat(3, &[&[1, 1, 0]]), 2).unwrap();
	assert!(!congruent(&a, &b).unwrap());
	assert!(matches!(congruent(&a, &f), Err(Error::DimensionMismatch(_))));
}

#[test]
fn energy_gap_equality_iff_tight() {
	let f = frame_from_summand(&lat(4, &[&[1, 2, 0, -1]]), 3).unwrap();
	let gap = f.minimal_energy_gap().unwrap();
	assert!(gap.equality);
	assert_eq!(gap.sum_of_squares, rat(3, 1));
	let doubled = f.with_vector_scaled(0, &rat(2, 1)).unwrap();
	let gap = doubled.minimal_energy_gap().unwrap();
	assert!(!gap.equality && gap.lhs_power > gap.rhs_power);
	let e = cat("orthonormal:3").minimal_energy_gap().unwrap();
	assert!(e.equality && e.lhs_power == rat(27, 1));
}

#[test]
fn joins_and_commensurability() {
	let tri = cat("polygon:3");
	// rotation of the hexagonal lattice with cos = 11/14, sin = 5 sqrt(3)/14
	let s = 5.0 * 3f64.sqrt() / 14.0;
	let rotated = Frame::approximate(
		tri.vectors_f64().iter().map(|v| vec![11.0 / 14.0 * v[0] - s * v[1], s * v[0] + 11.0 / 14.0 * v[1]]).collect(),
	)
	.unwrap();
	let both = join(&tri, &rotated).unwrap();
	assert_eq!(both.size(), 6);
	assert!(both.is_tight() && both.is_crystallographic());
	assert!(periods_commensurable(&tri, &rotated).unwrap());

	let square = cat("polygon:4");
	let mixed = join(&square, &tri).unwrap();
	assert!(mixed.is_tight());
	assert!(!mixed.is_crystallographic());
	assert!(!periods_commensurable(&square, &tri).unwrap());
	assert!(periods_commensurable(&tri, &tri.scale_sqrt(&rat(4, 1)).unwrap()).unwrap());
	// same angles, side lengths in ratio sqrt(2)
	assert!(!periods_commensurable(&tri, &cat("polygon:6")).unwrap());
}

#[test]
fn automorphism_scan() {
	for d in 1..=4 {
		let g = cat(&format!("simplex:{d}")).automorphism_group(8).unwrap();
		assert!(g.strongly_isotropic && g.isotropic, "d = {d}");
	}
	let sq = cat("polygon:4").automorphism_group(8).unwrap();
	assert!(sq.isotropic && !sq.strongly_isotropic);
	assert_eq!(sq.permutations.len(), 8);
	let e = cat("orthonormal:2");
	let uneven = join(&e, &e.scale_sqrt(&rat(4, 1)).unwrap()).unwrap();
	assert!(!uneven.automorphism_group(8).unwrap().isotropic);
	assert_eq!(
		cat("cube").automorphism_group(8).map(|g| g.isotropic),
		Ok(true)
	);
	assert_eq!(cat("root:D:4").automorphism_group(8), Err(Error::SizeTooLarge { size: 12, limit: 8 }));
	assert_eq!(cat("polygon:5").automorphism_group(8), Err(Error::NotExact));
}

#[test]
fn period_lattice_of_the_square_frame() {
	let p = cat("polygon:4").period_lattice().unwrap();
	assert_eq!(p.volume_squared, rat(1, 4));
	let tri = cat("polygon:3").period_lattice().unwrap();
	// the hexagonal lattice with minimal vectors of squared length 2/3
	assert_eq!(tri.volume_squared, rat(1, 3));
	assert!(p.coordinates(&[rat(1, 1), rat(-1, 1)]).is_some());
	assert_eq!(p.coordinates(&[rat(1, 2), rat(0, 1)]), None);
}

#[test]
fn json_round_trip() {
	for name in ["polygon:6", "g2", "pythagorean:3:4:5", "polygon:5"] {
		let f = cat(name);
		let text = serde_json::to_string(&f.to_json()).unwrap();
		let back = Frame::from_json(&text).unwrap();
		assert!(congruent(&f, &back).unwrap(), "{name}");
		assert_eq!(back.is_exact(), f.is_exact());
	}
	let bad = r#"{"dim":1,"size":1,"columns":[{"D":1,"m":"1","entries":["1"],"x":0}]}"#;
	assert!(matches!(Frame::from_json(bad), Err(Error::Parse(_))));
	let not_sqfree = r#"{"dim":1,"size":1,"columns":[{"D":8,"m":"1","entries":["1"]}]}"#;
	assert!(matches!(Frame::from_json(not_sqfree), Err(Error::NotSquareFree(_))));
}

#[test]
fn scaling_moves_square_classes() {
	let f = cat("orthonormal:2").scale_sqrt(&rat(3, 2)).unwrap();
	let (_, surds) = f.exact_parts().unwrap();
	assert_eq!(surds, &[6, 6]);
	assert_eq!(alpha(&f), Some(rat(3, 2)));
}

fn summand_strategy() -> impl Strategy<Value = (usize, IntLattice)> {
	(2usize..=5)
		.prop_flat_map(|n| (Just(n), 1..n))
		.prop_flat_map(|(n, k)| (Just(n), prop::collection::vec(prop::collection::vec(-3i64..=3, n), k)))
		.prop_filter_map("rank deficient", |(n, vs)| {
			let l = saturate(&IntLattice::from_vectors(
				n,
				&vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>(),
			));
			(l.rank() == vs.len()).then_some((n, l))
		})
}

proptest! {
	#![proptest_config(ProptestConfig::with_cases(100))]

	#[test]
	fn summand_round_trip((n, h) in summand_strategy()) {
		let f = frame_from_summand(&h, n - h.rank()).unwrap();
		prop_assert_eq!(f.vanishing_group().unwrap(), h);
		prop_assert!(f.naimark_check());
		prop_assert!(f.tight_constant().unwrap().is_one());
		prop_assert!(f.gram_exact().is_some());
		prop_assert!(f.minimal_energy_gap().unwrap().equality);
		let bumped = f.with_vector_scaled(0, &rat(3, 2)).unwrap();
		// in one dimension every frame is tight
		if f.dim() > 1 && !f.norms_squared().unwrap()[0].is_zero() {
			prop_assert!(!bumped.minimal_energy_gap().unwrap().equality);
			prop_assert!(!bumped.naimark_check());
		}
	}
}
