use proptest::prelude::*;
use w2pack::bench::{parse_metis, write_metis};
use w2pack::mwis::greedy_mwis;
use w2pack::oracle::{brute_mw2ps, brute_mwis, is_2packing, OracleBudget};
use w2pack::peel::{red_w2pack, PeelAction, PeelConfig, PeelMode, Rating};
use w2pack::reductions::ConfigName;
use w2pack::{lift, reduce_and_transform, square, LinkGraph, Vertex, WeightedGraph};

fn graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec((0..n, 0..n), 0..=n * 2),
            prop::collection::vec(1u64..=30, n),
        )
            .prop_map(move |(pairs, w)| {
                let mut edges: Vec<(Vertex, Vertex)> = pairs
                    .into_iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (a.min(b), a.max(b)))
                    .collect();
                edges.sort_unstable();
                edges.dedup();
                WeightedGraph::from_edges(n, &edges, w).unwrap()
            })
    })
}

#[derive(Debug, Clone)]
enum Op {
    Hide(usize),
    Preserve(Vec<usize>),
    Link(usize, usize),
    Weight(usize, u64),
    AddVertex(u64),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        any::<usize>().prop_map(Op::Hide),
        prop::collection::vec(any::<usize>(), 1..4).prop_map(Op::Preserve),
        (any::<usize>(), any::<usize>()).prop_map(|(a, b)| Op::Link(a, b)),
        (any::<usize>(), 1u64..50).prop_map(|(v, w)| Op::Weight(v, w)),
        (1u64..50).prop_map(Op::AddVertex),
    ]
}

fn pick(lg: &LinkGraph, i: usize) -> Option<Vertex> {
    let live: Vec<Vertex> = lg.live_vertices().collect();
    (!live.is_empty()).then(|| live[i % live.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bulk_hide_equals_sequential_hides(g in graph(14), picks in prop::collection::vec(any::<usize>(), 0..8)) {
        let mut bulk = LinkGraph::from_graph(g.clone());
        let mut seq = LinkGraph::from_graph(g);
        let mut set: Vec<Vertex> = picks.iter().filter_map(|&i| pick(&bulk, i)).collect();
        set.sort_unstable();
        set.dedup();
        bulk.bulk_hide(&set).unwrap();
        for &v in &set {
            seq.hide_vertex(v).unwrap();
        }
        prop_assert!(bulk.same_structure(&seq));
        prop_assert!(bulk.audit_aggregates().is_empty());
    }

    #[test]
    fn aggregates_survive_random_operations(g in graph(12), ops in prop::collection::vec(op(), 0..20)) {
        let mut lg = LinkGraph::from_graph(g);
        for op in ops {
            match op {
                Op::Hide(i) => if let Some(v) = pick(&lg, i) { lg.hide_vertex(v).unwrap(); },
                Op::Preserve(is) => {
                    let mut set: Vec<Vertex> = is.iter().filter_map(|&i| pick(&lg, i)).collect();
                    set.sort_unstable();
                    set.dedup();
                    lg.remove_preserving(&set).unwrap();
                }
                Op::Link(a, b) => if let (Some(u), Some(v)) = (pick(&lg, a), pick(&lg, b)) {
                    if u != v && !lg.has_edge(u, v) {
                        lg.add_link(u, v).unwrap();
                    }
                },
                Op::Weight(i, w) => if let Some(v) = pick(&lg, i) { lg.set_weight(v, w).unwrap(); },
                Op::AddVertex(w) => { lg.add_vertex(w); }
            }
            prop_assert!(lg.check_structure().is_ok());
            prop_assert!(lg.audit_aggregates().is_empty());
        }
    }

    #[test]
    fn square_independence_matches_packing_optimum(g in graph(12)) {
        let lg = LinkGraph::from_graph(g.clone());
        let sq = square(&lg);
        let (a, witness) = brute_mw2ps(&lg, OracleBudget::default()).unwrap();
        let (b, _) = brute_mwis(&sq.graph, OracleBudget::default()).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(is_2packing(&g, &witness));
    }

    #[test]
    fn every_config_lifts_greedy_solutions_to_packings(g in graph(14), seed in any::<u64>()) {
        for config in ConfigName::ALL {
            let (inst, ri, _) = reduce_and_transform(g.clone(), config, seed);
            let s = lift(&inst, greedy_mwis(&inst.graph).vertices(), &ri).unwrap();
            prop_assert!(is_2packing(&g, s.vertices()));
            prop_assert!(s.weight() >= ri.offset);
        }
    }

    #[test]
    fn peeling_gives_maximal_packings(g in graph(14), seed in any::<u64>(), k in 1usize..6) {
        let cfgs = [
            PeelConfig::new(Rating::WeightDiff, PeelMode::Adaptive { k }, PeelAction::Exclude, seed).unwrap(),
            PeelConfig::new(Rating::Weight, PeelMode::NonAdaptive { p: 0.6 }, PeelAction::Include, seed).unwrap(),
            PeelConfig::new(Rating::Degree, PeelMode::Adaptive { k }, PeelAction::Exclude, seed).unwrap(),
        ];
        for cfg in &cfgs {
            let s = red_w2pack(&g, cfg);
            prop_assert!(is_2packing(&g, s.vertices()));
            for v in 0..g.n() {
                let blocked = s.vertices().iter().any(|&x| {
                    x == v || g.has_edge(x, v) || g.neighbors(x).iter().any(|&c| g.has_edge(c, v))
                });
                prop_assert!(blocked, "vertex {} could be added", v);
            }
        }
    }

    #[test]
    fn metis_round_trip(g in graph(20)) {
        let text = write_metis(&g, true);
        prop_assert_eq!(parse_metis(&text).unwrap().graph, g);
    }
}
