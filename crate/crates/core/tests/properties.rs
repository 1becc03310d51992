//! Property tests: lattice polytope invariants and one-variable residue sums.

use adjtor_core::num_complex::Complex;
use adjtor_core::poly::{roots_of, CPoly};
use adjtor_core::residue::{minkowski_sum, residue_sum, strict_containment, LatticePolytope};
use proptest::prelude::*;

fn points() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, 2), 1..10)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #[test]
    fn hull_vertices_are_input_points_and_support_is_exact(pts in points(), n in prop::collection::vec(-5i64..=5, 2)) {
        let p = LatticePolytope::hull(2, &pts).unwrap();
        for v in p.vertices() {
            prop_assert!(pts.contains(v));
        }
        let brute = pts.iter().map(|q| dot(q, &n)).max().unwrap();
        prop_assert_eq!(p.support(&n), brute);
    }

    #[test]
    fn hull_is_counterclockwise(pts in points()) {
        let p = LatticePolytope::hull(2, &pts).unwrap();
        let v = p.vertices();
        if v.len() >= 3 {
            for i in 0..v.len() {
                let (a, b, c) = (&v[i], &v[(i + 1) % v.len()], &v[(i + 2) % v.len()]);
                let cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
                prop_assert!(cross > 0);
            }
        }
    }

    #[test]
    fn minkowski_sum_is_hull_of_vertex_sums(a in points(), b in points()) {
        let (pa, pb) = (LatticePolytope::hull(2, &a).unwrap(), LatticePolytope::hull(2, &b).unwrap());
        let sums: Vec<Vec<i64>> = pa
            .vertices()
            .iter()
            .flat_map(|u| pb.vertices().iter().map(move |v| vec![u[0] + v[0], u[1] + v[1]]))
            .collect();
        prop_assert_eq!(minkowski_sum(&pa, &pb).unwrap(), LatticePolytope::hull(2, &sums).unwrap());
    }

    #[test]
    fn support_is_additive(a in points(), b in points(), n in prop::collection::vec(-5i64..=5, 2)) {
        let (pa, pb) = (LatticePolytope::hull(2, &a).unwrap(), LatticePolytope::hull(2, &b).unwrap());
        let s = minkowski_sum(&pa, &pb).unwrap();
        prop_assert_eq!(s.support(&n), pa.support(&n) + pb.support(&n));
    }

    #[test]
    fn containment_of_a_point_matches_brute_force(pts in points(), c in prop::collection::vec(-6i64..=6, 2)) {
        let outer = LatticePolytope::hull(2, &pts).unwrap();
        let inner = LatticePolytope::hull(2, std::slice::from_ref(&c)).unwrap();
        let got = strict_containment(&inner, &outer).unwrap();
        // interior iff strictly inside every edge's half-plane (and the polygon is full-dimensional)
        let v = outer.vertices();
        let brute = v.len() >= 3
            && (0..v.len()).all(|i| {
                let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
                (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) > 0
            });
        prop_assert_eq!(got.strict, brute);
        if let Some(w) = got.witness {
            prop_assert!(inner.support(&w) >= outer.support(&w) || v.len() < 3);
        }
    }

    #[test]
    fn interior_residues_vanish_in_one_variable(
        re in prop::collection::vec(-3.0f64..3.0, 3..9),
        im in prop::collection::vec(-3.0f64..3.0, 3..9),
        k_frac in 0.0f64..1.0,
    ) {
        let d = re.len().min(im.len()) - 1;
        let coeffs: Vec<Complex<f64>> = (0..=d).map(|i| Complex::new(re[i], im[i])).collect();
        prop_assume!(coeffs[0].norm() > 0.1 && coeffs[d].norm() > 0.1);
        let roots = roots_of(&coeffs).unwrap();
        prop_assume!(roots.clusters.len() == d);
        let mut f: CPoly<f64> = CPoly::zero(&["z"]);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(vec![i as i32], *c);
        }
        // Δ(h) = {k} with 0 < k < d lies inside Δ(f) = [0, d]
        let k = 1 + ((d - 1) as f64 * k_frac) as i32 % (d as i32 - 1).max(1);
        let mut h: CPoly<f64> = CPoly::zero(&["z"]);
        h.add_term(vec![k], Complex::new(1.0, 0.0));
        let zeros: Vec<Vec<Complex<f64>>> = roots.roots.iter().map(|r| vec![*r]).collect();
        if let Ok(s) = residue_sum(&[f], &h, &zeros) {
            prop_assert!(s.normalized() < 1e-8, "normalized sum {}", s.normalized());
        }
    }
}
