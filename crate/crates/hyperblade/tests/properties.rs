//! Randomized property tests for the core algebraic invariants.

use proptest::prelude::*;

use hyperblade::heights::{all_ksubsets, hmin, hmin_oracle};
use hyperblade::json::{
    arrangement_from_json, arrangement_to_json, vertex_vector_from_json, vertex_vector_to_json,
};
use hyperblade::tropical::{face_weights, face_weights_from_plucker, to_blades};
use hyperblade::{rat, GroundFrame, Subset, VertexVector, WeightedBladeArrangement};

/// Strategy: a random grade-0 arrangement on Δ_{k,n} with small integer
/// coefficients (possibly zero after normalization).
fn arb_arrangement(k: u32, n: u32) -> impl Strategy<Value = WeightedBladeArrangement> {
    let subs = all_ksubsets(k, n);
    let len = subs.len();
    proptest::collection::vec((0..len, -5i64..=5), 0..8).prop_map(move |picks| {
        let mut a = WeightedBladeArrangement::zero(k, n);
        for (i, c) in picks {
            a.add_term(Subset::EMPTY, subs[i], rat(c)).unwrap();
        }
        a
    })
}

/// Strategy: a random vertex vector in R^{C(n,k)} with entries in [−5,5].
fn arb_vertex_vector(k: u32, n: u32) -> impl Strategy<Value = VertexVector> {
    let subs = all_ksubsets(k, n);
    let len = subs.len();
    proptest::collection::vec(-5i64..=5, len).prop_map(move |coords| {
        let mut v = VertexVector::zero(k, n);
        for (j, c) in subs.iter().zip(coords) {
            v.set(*j, rat(c)).unwrap();
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_j_squares_to_zero(a in arb_arrangement(3, 7), j in 1u32..=7) {
        let once = a.boundary_j(j).unwrap();
        let twice = once.boundary_j(j).unwrap();
        prop_assert!(twice.is_zero());
    }

    #[test]
    fn boundary_operators_commute(a in arb_arrangement(3, 7), i in 1u32..=7, j in 1u32..=7) {
        let ij = a.boundary_j(i).unwrap().boundary_j(j).unwrap();
        let ji = a.boundary_j(j).unwrap().boundary_j(i).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn hmin_matches_oracle(raw in proptest::collection::vec(-6i64..=6, 2..8)) {
        // Project onto the sum-zero hyperplane by shifting the last entry.
        let mut x = raw;
        let s: i64 = x.iter().sum();
        let last = x.len() - 1;
        x[last] -= s;
        prop_assert_eq!(hmin(&x).unwrap(), hmin_oracle(&x).unwrap());
    }

    #[test]
    fn weak_separation_is_symmetric_and_dihedral_invariant(
        xi in 0usize..15, yi in 0usize..15, r in 0u32..6, flip in any::<bool>(),
    ) {
        let frame = GroundFrame::ambient(6).unwrap();
        let subs = all_ksubsets(2, 6);
        let (x, y) = (subs[xi], subs[yi]);
        let ws = frame.weakly_separated(x, y).unwrap();
        prop_assert_eq!(ws, frame.weakly_separated(y, x).unwrap());
        // Rotations and the reflection of the cycle preserve weak separation.
        let map = |i: u32| -> u32 {
            let rotated = (i - 1 + r) % 6 + 1;
            if flip { 7 - rotated } else { rotated }
        };
        let relabel = |s: Subset| -> Subset { s.iter().map(map).collect() };
        prop_assert_eq!(ws, frame.weakly_separated(relabel(x), relabel(y)).unwrap());
    }

    #[test]
    fn face_weight_routes_agree(p in arb_vertex_vector(3, 6), l in 1u32..=6) {
        let l = Subset::singleton(l);
        let via_blades = face_weights(&to_blades(&p).unwrap(), l).unwrap();
        let direct = face_weights_from_plucker(&p, l).unwrap();
        prop_assert_eq!(via_blades, direct);
    }

    #[test]
    fn blade_map_kills_lineality(p in arb_vertex_vector(2, 5), a in 1u32..=5, c in -3i64..=3) {
        let shift = VertexVector::lineality(2, 5, a).unwrap().scale(&rat(c));
        let shifted = p.add(&shift).unwrap();
        prop_assert_eq!(to_blades(&p).unwrap(), to_blades(&shifted).unwrap());
    }

    #[test]
    fn face_restriction_of_l_elements(ji in 0usize..20, j in 1u32..=6) {
        // ∂_j(𝓛_J) is 𝓛 of J∖{j} on the face frame when j ∈ J, zero otherwise.
        let subs = all_ksubsets(3, 6);
        let big_j = subs[ji];
        let l_elt = WeightedBladeArrangement::l_element(3, 6, Subset::EMPTY, big_j).unwrap();
        let restricted = l_elt.boundary_j(j).unwrap();
        let expected = if big_j.contains(j) {
            WeightedBladeArrangement::l_element(3, 6, Subset::singleton(j), big_j.without(j))
                .unwrap()
        } else {
            WeightedBladeArrangement::zero(3, 6)
        };
        prop_assert_eq!(restricted, expected);
    }

    #[test]
    fn arrangement_json_roundtrip(a in arb_arrangement(3, 6)) {
        let text = serde_json::to_string(&arrangement_to_json(&a)).unwrap();
        let back = arrangement_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &a);
        // Canonical form is byte-stable under reserialization.
        let again = serde_json::to_string(&arrangement_to_json(&back)).unwrap();
        prop_assert_eq!(again, text);
    }

    #[test]
    fn vertex_vector_json_roundtrip(v in arb_vertex_vector(2, 6)) {
        let text = serde_json::to_string(&vertex_vector_to_json(&v)).unwrap();
        let back = vertex_vector_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }
}
