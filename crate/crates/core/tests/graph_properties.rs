mod common;

use common::{random_invertible, rng};
use grzh_core::extremal::{
    alpha_bounds, build_family, classify_maximum_clique, clique_number, ekr_bound, Classification, FamilyDescriptor,
};
use grzh_core::graph::{
    brute_force_max_clique, brute_force_max_independent_set, build_graph, is_clique, materialize_vertices,
    max_clique, max_independent_set, GraphSpec,
};
use grzh_core::subspace::materialize_subspaces;
use grzh_core::{MatrixZh, RingContext, Subspace};
use num_bigint::BigUint;

fn spec(h: u64, n: usize, m: usize, r: usize) -> GraphSpec {
    GraphSpec::new(RingContext::new(h).unwrap(), n, m, r).unwrap()
}

const SMALL: &[(u64, usize, usize, usize)] =
    &[(2, 4, 2, 2), (3, 4, 2, 2), (4, 3, 1, 2), (2, 3, 1, 2), (6, 2, 1, 2), (2, 5, 2, 2), (4, 4, 2, 2), (6, 3, 1, 2)];

#[test]
fn clique_number_matches_solver() {
    for &(h, n, m, r) in SMALL {
        let s = spec(h, n, m, r);
        let found = brute_force_max_clique(&s, 2000).unwrap();
        assert!(found.complete);
        assert_eq!(BigUint::from(found.size), clique_number(&s), "G_{r}({m},{n},Z_{h})");
        assert!(is_clique(&s, &found.witness).unwrap());
    }
}

// exact independence numbers are only cheap on the smaller graphs
const ALPHA: &[(u64, usize, usize, usize)] = &[(2, 4, 2, 2), (3, 4, 2, 2), (2, 3, 1, 2), (6, 2, 1, 2), (2, 5, 2, 2), (3, 3, 1, 2)];

#[test]
fn alpha_times_omega_at_most_vertices() {
    for &(h, n, m, r) in ALPHA {
        let s = spec(h, n, m, r);
        let alpha = brute_force_max_independent_set(&s, 2000).unwrap();
        assert!(alpha.complete);
        let omega = clique_number(&s);
        assert!(BigUint::from(alpha.size) * &omega <= s.vertex_count());
        let b = alpha_bounds(&s, None, 2000, None).unwrap();
        let a = BigUint::from(alpha.size);
        assert!(b.alpha_lower.as_ref().is_none_or(|l| *l <= a));
        assert!(a <= b.alpha_upper_transitive);
        assert!(b.alpha_upper_floor_chain.as_ref().is_none_or(|u| a <= *u));
        assert!(b.alpha_exact.as_ref().is_none_or(|e| *e == a));
    }
}

#[test]
fn solver_sizes_invariant_under_coordinate_change() {
    let mut rng = rng(11);
    for &(h, n, m, r) in &[(2u64, 4usize, 2usize, 2usize), (4, 3, 1, 2), (6, 3, 1, 2)] {
        let s = spec(h, n, m, r);
        let ctx = s.ctx().clone();
        let vertices = materialize_vertices(&s, 2000).unwrap();
        let t = random_invertible(&ctx, n, &mut rng);
        let moved: Vec<Subspace> =
            vertices.iter().map(|v| Subspace::from_matrix(&ctx, &v.rep().mul(&t).unwrap()).unwrap()).collect();
        let mut sorted = moved.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), vertices.len());
        let g0 = build_graph(&s, &vertices).unwrap();
        let g1 = build_graph(&s, &moved).unwrap();
        assert_eq!(g0.edge_count(), g1.edge_count());
        assert_eq!(max_clique(&g0, None).clique.len(), max_clique(&g1, None).clique.len());
        assert_eq!(max_independent_set(&g0, None).clique.len(), max_independent_set(&g1, None).clique.len());
    }
}

#[test]
fn graphs_are_connected() {
    for &(h, n, m, r) in SMALL {
        let s = spec(h, n, m, r);
        assert!(build_graph(&s, &materialize_vertices(&s, 2000).unwrap()).unwrap().is_connected());
    }
}

#[test]
fn families_round_trip_through_classification() {
    for h in [2u64, 3, 4, 6] {
        let s = spec(h, 4, 2, 2);
        let ctx = s.ctx().clone();
        let line = Subspace::from_matrix(&ctx, &MatrixZh::from_rows(h, &[vec![1, 1, 0, 1]]).unwrap()).unwrap();
        let solid = Subspace::from_matrix(
            &ctx,
            &MatrixZh::from_rows(h, &[vec![1, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap(),
        )
        .unwrap();
        let mut descs = vec![FamilyDescriptor::Star { p: line }, FamilyDescriptor::Within { q: solid }];
        if ctx.num_primes() > 1 {
            let t = random_invertible(&ctx, 4, &mut rng(h));
            descs.push(FamilyDescriptor::Mixed { star_primes: vec![3], t });
        }
        for desc in descs {
            let fam = build_family(&s, &desc, 10_000).unwrap();
            assert_eq!(BigUint::from(fam.len()), clique_number(&s));
            assert!(is_clique(&s, &fam).unwrap());
            match (classify_maximum_clique(&s, &fam).unwrap(), &desc) {
                (Classification::Maximum { family: FamilyDescriptor::Mixed { star_primes, t } }, FamilyDescriptor::Mixed { star_primes: want, .. }) => {
                    assert_eq!(&star_primes, want);
                    let mut a = build_family(&s, &FamilyDescriptor::Mixed { star_primes, t }, 10_000).unwrap();
                    let mut b = fam.clone();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b);
                }
                (Classification::Maximum { family }, _) => assert_eq!(&family, &desc),
                (other, _) => panic!("h={h}: {other:?}"),
            }
        }
    }
}

#[test]
fn every_maximum_clique_over_a_field_is_star_or_within() {
    let s = spec(2, 4, 2, 2);
    let vertices = materialize_vertices(&s, 2000).unwrap();
    let g = build_graph(&s, &vertices).unwrap();
    let all = grzh_core::graph::all_maximum_cliques(&g, 7, 10_000).unwrap();
    // 15 points and 15 solids of PG(3, 2)
    assert_eq!(all.len(), 30);
    for c in all {
        let fam: Vec<Subspace> = c.iter().map(|&i| vertices[i].clone()).collect();
        assert!(matches!(
            classify_maximum_clique(&s, &fam).unwrap(),
            Classification::Maximum { family: FamilyDescriptor::Star { .. } | FamilyDescriptor::Within { .. } }
        ));
    }
}

#[test]
fn ekr_bound_is_a_clique_number() {
    for h in [2u64, 3, 4, 6, 12, 30] {
        let ctx = RingContext::new(h).unwrap();
        for n in 2..=8 {
            for m in 1..=n / 2 {
                for r in 0..m {
                    let s = GraphSpec::new(ctx.clone(), n, m, m - r + 1).unwrap();
                    assert_eq!(ekr_bound(&ctx, n, m, r).unwrap(), clique_number(&s));
                }
            }
        }
    }
}

#[test]
fn enumeration_is_sorted_free_of_duplicates() {
    let ctx = RingContext::new(12).unwrap();
    let all = materialize_subspaces(&ctx, 3, 1, 10_000).unwrap();
    let mut s = all.clone();
    s.sort();
    s.dedup();
    assert_eq!(s.len(), all.len());
}
