use mtgraph::classes::{brute_clique_number, is_threshold};
use mtgraph::line::line_graph;
use mtgraph::mt::{clique_number, is_k_mt, recognize_with};
use mtgraph::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs)).prop_map(|(n, bits)| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for j in 0..n {
                for i in 0..j {
                    if bits[k] {
                        g.add_edge(i, j);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
    g.permute(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(11), seed in any::<u64>()) {
        let h = shuffled(&g, seed);
        prop_assert_eq!(canonical_graph(&g), canonical_graph(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn graph6_round_trips(g in graph_strategy(64)) {
        prop_assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn membership_is_label_and_complement_invariant(g in graph_strategy(14), seed in any::<u64>()) {
        let mt = is_mt(&g);
        prop_assert_eq!(is_mt(&shuffled(&g, seed)), mt);
        prop_assert_eq!(is_mt(&g.complement()), mt);
    }

    #[test]
    fn removal_order_does_not_matter(g in graph_strategy(14), seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let r = recognize_with(&g, 1, |set| {
            let choices: Vec<usize> = (0..64).filter(|v| set >> v & 1 == 1).collect();
            *choices.choose(&mut rng).unwrap()
        });
        prop_assert_eq!(r.is_member(), is_mt(&g));
        if let Some(cert) = r.certificate() {
            prop_assert!(verify_order(&g, cert));
        }
    }

    #[test]
    fn membership_is_hereditary(g in graph_strategy(13)) {
        if is_mt(&g) {
            for v in 0..g.n() {
                prop_assert!(is_mt(&g.delete_vertex(v)));
            }
        }
    }

    #[test]
    fn k_classes_are_nested(g in graph_strategy(12), k in 1usize..5) {
        if is_k_mt(&g, k) {
            prop_assert!(is_k_mt(&g, k + 1));
        }
    }

    #[test]
    fn threshold_graphs_are_mt(g in graph_strategy(14)) {
        if is_threshold(&g) {
            prop_assert!(is_mt(&g));
        }
    }

    #[test]
    fn clique_algorithm_matches_search(g in graph_strategy(16)) {
        if let Some(cert) = recognize(&g, 1).certificate() {
            prop_assert_eq!(clique_number(&g, cert).unwrap(), brute_clique_number(&g).unwrap());
        }
    }

    #[test]
    fn line_graph_sizes(g in graph_strategy(10)) {
        let l = line_graph(&g).unwrap();
        let expected: usize = (0..g.n()).map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2).sum();
        prop_assert_eq!(l.n(), g.edge_count());
        prop_assert_eq!(l.edge_count(), expected);
    }

    #[test]
    fn edge_deletion_keeps_line_graph_mt(g in graph_strategy(9)) {
        if is_mt(&line_graph(&g).unwrap()) {
            for (u, v) in g.edges() {
                prop_assert!(is_mt(&line_graph(&g.without_edge(u, v)).unwrap()));
            }
        }
    }

    #[test]
    fn induced_subgraphs_are_contained(g in graph_strategy(10), set in any::<u16>()) {
        let s = u64::from(set) & g.vertex_set();
        prop_assert!(contains(&g, &g.induced(s), ContainmentMode::Induced));
        prop_assert!(contains(&g, &g.induced(s), ContainmentMode::Subgraph));
    }
}
