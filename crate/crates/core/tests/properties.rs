use std::collections::BTreeSet;

use proptest::prelude::*;

use msnring::closed_forms::{
    cn_energy_clique_union, eq1_spectrum, eq2_energy, predict, reference_energies, Params, TheoremId,
};
use msnring::graph::{clique_decomposition, delta2_all, second_neighborhood, CliqueDecomposition};
use msnring::ring::{center, centralizer, direct_product, matrix_ring_2x2, ring_noncomm_p2, ring_zn, upper_triangular_ring, FiniteRing};
use msnring::spectra::{
    cn_matrix, exact_spectrum, msn_matrix, msn_spectrum_of_clique_union, numeric_spectrum, ExactOutcome,
};
use msnring::{CliqueUnion, SimpleGraph};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            SimpleGraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn union_strategy() -> impl Strategy<Value = CliqueUnion> {
    proptest::collection::btree_map(1u64..=8, 1u64..=4, 1..=4)
        .prop_map(|parts| CliqueUnion::new(parts).unwrap())
}

fn small_rings() -> Vec<FiniteRing> {
    vec![
        ring_noncomm_p2(2).unwrap(),
        ring_noncomm_p2(3).unwrap(),
        upper_triangular_ring(2).unwrap(),
        matrix_ring_2x2(2).unwrap(),
        direct_product(&upper_triangular_ring(2).unwrap(), &ring_zn(3).unwrap()).unwrap(),
    ]
}

/// N²(v) straight from the definition, on explicit sets.
fn n2_oracle(g: &SimpleGraph, v: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for u in g.neighbors(v) {
        out.extend(g.neighbors(u));
    }
    out.remove(&v);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn second_neighborhood_matches_definition(g in graph_strategy(12)) {
        let d2 = delta2_all(&g);
        for v in 0..g.n() {
            let oracle = n2_oracle(&g, v);
            let got: BTreeSet<usize> = second_neighborhood(&g, v).unwrap().into_iter().collect();
            prop_assert!(!got.contains(&v));
            prop_assert_eq!(&got, &oracle);
            let sum: u64 = oracle.iter().map(|&x| g.degree(x) as u64).sum();
            prop_assert_eq!(d2[v], sum);
        }
    }

    #[test]
    fn matrices_are_symmetric_with_zero_diagonal(g in graph_strategy(12)) {
        let d2 = delta2_all(&g);
        let msn = msn_matrix(&g);
        let cn = cn_matrix(&g);
        for i in 0..g.n() {
            prop_assert_eq!(msn.get(i, i), 0);
            prop_assert_eq!(cn.get(i, i), 0);
            for j in 0..g.n() {
                prop_assert_eq!(msn.get(i, j), msn.get(j, i));
                let expected = if i != j && g.has_edge(i, j) { d2[i].min(d2[j]) as i64 } else { 0 };
                prop_assert_eq!(msn.get(i, j), expected);
                if i != j {
                    let common = g.neighbors(i).filter(|&w| g.has_edge(j, w)).count() as i64;
                    prop_assert_eq!(cn.get(i, j), common);
                }
            }
        }
    }

    #[test]
    fn exact_spectra_satisfy_trace_identities(g in graph_strategy(10)) {
        for m in [msn_matrix(&g), cn_matrix(&g)] {
            let ExactOutcome::Integral(s) = exact_spectrum(&m).unwrap() else { continue };
            prop_assert_eq!(s.n(), g.n() as u64);
            prop_assert_eq!(s.trace(), 0);
            let frobenius: i128 = (0..m.n()).flat_map(|i| (0..m.n()).map(move |j| (i, j)))
                .map(|(i, j)| (m.get(i, j) as i128).pow(2)).sum();
            let squares: i128 = s.pairs().iter().map(|&(v, k)| (v as i128).pow(2) * k as i128).sum();
            prop_assert_eq!(squares, frobenius);
            let numeric = numeric_spectrum(&m).unwrap();
            prop_assert!(numeric.matches_exact(s.pairs(), 1e-6));
        }
    }

    #[test]
    fn spectra_are_invariant_under_relabeling(g in graph_strategy(9), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let h = g.relabeled(&perm).unwrap();
        prop_assert_eq!(exact_spectrum(&msn_matrix(&g)).unwrap(), exact_spectrum(&msn_matrix(&h)).unwrap());
        prop_assert_eq!(exact_spectrum(&cn_matrix(&g)).unwrap(), exact_spectrum(&cn_matrix(&h)).unwrap());
    }

    #[test]
    fn graph_formats_round_trip(g in graph_strategy(15)) {
        let text = g.to_edge_list();
        let back = SimpleGraph::parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.to_edge_list(), text);
        let json = g.to_json();
        prop_assert_eq!(SimpleGraph::from_json(&json).unwrap().to_json(), json);
    }

    #[test]
    fn clique_unions_decompose_and_match_their_spectra(parts in union_strategy()) {
        let g = parts.to_graph().unwrap();
        prop_assert_eq!(clique_decomposition(&g), CliqueDecomposition::Union(parts.clone()));
        let ExactOutcome::Integral(s) = exact_spectrum(&msn_matrix(&g)).unwrap() else {
            return Err(TestCaseError::fail("clique union is not MSN-integral"));
        };
        prop_assert_eq!(&s, &msn_spectrum_of_clique_union(&parts));
        // Eq. (1)/(2) hold exactly when no component is a single edge
        if parts.parts().iter().all(|p| p.size != 2) {
            prop_assert_eq!(&s, &eq1_spectrum(&parts));
            prop_assert_eq!(s.energy(), eq2_energy(&parts));
        }
        let ExactOutcome::Integral(c) = exact_spectrum(&cn_matrix(&g)).unwrap() else {
            return Err(TestCaseError::fail("CN spectrum of a clique union is not integral"));
        };
        prop_assert_eq!(c.energy(), cn_energy_clique_union(&parts));
    }

    #[test]
    fn energies_stay_below_the_complete_graph(parts in union_strategy()) {
        prop_assume!(!parts.is_single_clique());
        let n = parts.vertex_count();
        let (msn_ref, cn_ref) = reference_energies(n).unwrap();
        prop_assert!(eq2_energy(&parts) < msn_ref);
        prop_assert!(msn_spectrum_of_clique_union(&parts).energy() < msn_ref);
        // the only tie is two isolated vertices, where both sides vanish
        if parts != CliqueUnion::new([(1, 2)]).unwrap() {
            prop_assert!(cn_energy_clique_union(&parts) < cn_ref);
        }
    }

    #[test]
    fn predictions_are_internally_consistent(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        q in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
        m in 1u64..6,
    ) {
        for &id in TheoremId::ALL {
            let params = Params { p: Some(p), q: Some(q), m: Some(m), t: None, centralizer_sizes: Some(vec![m + 1, m + 3]) };
            let Ok(pred) = predict(id, &params) else { continue };
            prop_assert!(!pred.alternatives.is_empty());
            for alt in &pred.alternatives {
                prop_assert_eq!(&alt.spectrum, &eq1_spectrum(&alt.decomposition));
                prop_assert_eq!(alt.energy, eq2_energy(&alt.decomposition));
                prop_assert_eq!(alt.spectrum.energy(), alt.energy);
            }
        }
    }

    #[test]
    fn ring_arithmetic_laws(idx in 0usize..5, a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let rings = small_rings();
        let r = &rings[idx];
        let (a, b, c) = (a % r.order(), b % r.order(), c % r.order());
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.mul(r.add(a, b), c), r.add(r.mul(a, c), r.mul(b, c)));
        prop_assert_eq!(r.commutes(a, b), r.commutes(b, a));
        prop_assert!(centralizer(r, a).contains(a));
        prop_assert!(center(r).elements().iter().all(|&z| r.commutes(z, b)));
    }
}
