use super::*;
use crate::generators;
use crate::graph::WeightedGraph;
use crate::oracle::{brute_mw2ps, OracleBudget};

fn lg(n: usize, edges: &[(Vertex, Vertex)], w: &[Weight]) -> LinkGraph {
    LinkGraph::from_graph(WeightedGraph::from_edges(n, edges, w.to_vec()).unwrap())
}

fn reducer(g: LinkGraph) -> Reducer {
    Reducer::new(g, EngineOptions::default())
}

fn alpha(g: &LinkGraph) -> Weight {
    brute_mw2ps(g, OracleBudget::default()).unwrap().0
}

/// Applies `f` and checks that the optimum is preserved up to the offset.
fn check_sound(g: LinkGraph, f: impl FnOnce(&mut Reducer) -> Outcome) -> (Outcome, Reducer) {
    let before = alpha(&g);
    let mut r = reducer(g);
    let out = f(&mut r);
    assert_eq!(before, alpha(r.graph()) + r.instance().offset);
    (out, r)
}

fn p3(w: [Weight; 3]) -> LinkGraph {
    lg(3, &[(0, 1), (1, 2)], &w)
}

fn star(center: Weight, leaves: &[Weight]) -> LinkGraph {
    let edges: Vec<_> = (1..=leaves.len()).map(|i| (0, i)).collect();
    let mut w = vec![center];
    w.extend_from_slice(leaves);
    lg(leaves.len() + 1, &edges, &w)
}

fn heavy_center() -> LinkGraph {
    LinkGraph::from_graph(generators::heavy_center_example())
}

#[test]
fn neighbor_removal_examples() {
    let (out, r) = check_sound(p3([5, 2, 1]), |r| r.try_neighbor_removal(0, 1));
    assert_eq!(out, Outcome::Applied);
    assert!(!r.graph().is_alive(1));

    let (out, _) = check_sound(p3([5, 2, 1]), |r| r.try_neighbor_removal(0, 2));
    assert_eq!(out, Outcome::Applied);

    let (out, _) = check_sound(p3([1, 1, 1]), |r| r.try_neighbor_removal(0, 2));
    assert_eq!(out, Outcome::Applied);
}

#[test]
fn neighborhood_removal_examples() {
    let (out, r) = check_sound(heavy_center(), |r| r.try_neighborhood_removal(0));
    assert_eq!(out, Outcome::Applied);
    assert_eq!(r.instance().offset, 10);
    assert!(r.graph().has_link(6, 7));

    let (out, r) = check_sound(star(10, &[1, 1, 1]), |r| r.try_neighborhood_removal(0));
    assert_eq!(out, Outcome::Applied);
    assert!(r.graph().is_empty());
    assert_eq!(r.instance().offset, 10);

    let (out, r) = check_sound(lg(1, &[], &[0]), |r| r.try_neighborhood_removal(0));
    assert_eq!(out, Outcome::Applied);
    assert_eq!(r.instance().offset, 0);
}

#[test]
fn split_neighbor_removal_examples() {
    let (out, _) = check_sound(p3([5, 2, 1]), |r| r.try_split_neighbor_removal(0, 1));
    assert_eq!(out, Outcome::Applied);

    let (out, r) = check_sound(star(1, &[9, 3, 3]), |r| r.try_split_neighbor_removal(1, 0));
    assert_eq!(out, Outcome::Applied);
    assert!(!r.graph().is_alive(0));

    // N₂[0] \ N₂[2] is empty on the unit P4, so the bound is 0 and 0 + 1 <= 1.
    let p4 = LinkGraph::from_graph(generators::path(4));
    let (out, _) = check_sound(p4, |r| r.try_split_neighbor_removal(0, 2));
    assert_eq!(out, Outcome::Applied);
}

#[test]
fn intersection_removal_examples() {
    let (out, r) = check_sound(p3([3, 2, 5]), |r| r.try_intersection_removal(0, 2));
    assert_eq!(out, Outcome::Applied);
    assert!(!r.graph().is_alive(1));
    assert!(r.graph().has_link(0, 2));

    let tri = lg(3, &[(0, 1), (1, 2), (0, 2)], &[1, 1, 1]);
    let (out, r) = check_sound(tri, |r| r.try_intersection_removal(0, 1));
    assert_eq!(out, Outcome::Applied);
    assert!(!r.graph().is_alive(2));

    let pair = lg(2, &[(0, 1)], &[3, 1]);
    let (out, _) = check_sound(pair, |r| r.try_intersection_removal(0, 1));
    assert_eq!(out, Outcome::NoChange);
}

#[test]
fn split_intersection_removal_examples() {
    let pair = lg(3, &[(0, 1), (1, 2)], &[1, 4, 1]);
    let (out, r) = check_sound(pair, |r| r.try_split_intersection_removal(0, 1));
    assert_eq!(out, Outcome::Applied);
    assert!(!r.graph().is_alive(2));

    // u in L(v) with L(v) = {u}: condition reduces to w(v) >= w_max(N(v)).
    let (out, r) = check_sound(lg(4, &[(0, 1), (1, 2), (1, 3)], &[5, 5, 1, 9]), |r| {
        r.try_split_intersection_removal(0, 2)
    });
    assert_eq!(out, Outcome::NotApplicable);
    drop(r);
    let (out, r) = check_sound(lg(3, &[(0, 1), (1, 2)], &[5, 5, 1]), |r| {
        r.try_split_intersection_removal(0, 2)
    });
    assert_eq!(out, Outcome::Applied);
    assert!(!r.graph().is_alive(1));
}

#[test]
fn domination_examples() {
    let (out, r) = check_sound(star(1, &[1, 1, 1]), |r| r.try_domination(1, 0));
    assert_eq!(out, Outcome::Applied);
    assert!(r.graph().is_empty());

    let (out, _) = check_sound(star(5, &[1, 1, 1]), |r| r.try_domination(1, 0));
    assert_eq!(out, Outcome::NotApplicable);

    let (out, r) = check_sound(star(1, &[4, 1, 1]), |r| r.try_domination(1, 0));
    assert_eq!(out, Outcome::Applied);
    assert_eq!(r.instance().offset, 4);
}

#[test]
fn weighted_clique_examples() {
    let tri = lg(3, &[(0, 1), (1, 2), (0, 2)], &[3, 2, 1]);
    let (out, r) = check_sound(tri, |r| r.try_weighted_clique(0));
    assert_eq!(out, Outcome::Applied);
    assert!(r.graph().is_empty());
    assert_eq!(r.instance().offset, 3);

    let p4 = LinkGraph::from_graph(generators::path(4));
    let (out, _) = check_sound(p4, |r| r.try_weighted_clique(1));
    assert_eq!(out, Outcome::NotApplicable);

    let (out, _) = check_sound(lg(1, &[], &[7]), |r| r.try_weighted_clique(0));
    assert_eq!(out, Outcome::Applied);
}

#[test]
fn weight_transfer_examples() {
    // v x y z q
    let g = lg(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)], &[3, 1, 5, 4, 2]);
    assert_eq!(alpha(&g), 5);
    let (out, r) = check_sound(g, |r| r.try_weight_transfer(0));
    assert_eq!(out, Outcome::Applied);
    assert_eq!(r.graph().weight(2), 2);
    assert_eq!(r.graph().weight(3), 1);
    assert_eq!(r.instance().offset, 3);
    assert!(!r.graph().is_alive(1));

    let tri = lg(3, &[(0, 1), (1, 2), (0, 2)], &[3, 2, 1]);
    let (out, r) = check_sound(tri, |r| r.try_weight_transfer(0));
    assert_eq!(out, Outcome::Applied);
    assert!(r.graph().is_empty());

    // Leaf 1 is simplicial and heavier than leaf 2.
    let (out, _) = check_sound(star(1, &[5, 2]), |r| r.try_weight_transfer(2));
    assert_eq!(out, Outcome::NotApplicable);
}

#[test]
fn neighborhood_folding_examples() {
    let mut linked = lg(2, &[], &[2, 3]);
    linked.add_link(0, 1).unwrap();
    let (out, r) = check_sound(linked, |r| r.try_neighborhood_folding(0));
    assert_eq!(out, Outcome::Applied);
    let g = r.graph();
    assert_eq!(g.n_alive(), 1);
    assert_eq!(g.weight(2), 1);
    assert_eq!(g.link_count(), 0);

    let edge = lg(2, &[(0, 1)], &[2, 3]);
    let (out, r) = check_sound(edge, |r| r.try_neighborhood_folding(0));
    assert_eq!(out, Outcome::Applied);
    let ri = r.into_instance();
    let with_new = restore(&ri, &[2]).unwrap();
    assert_eq!(with_new.vertices(), &[1]);
    let without = restore(&ri, &[]).unwrap();
    assert_eq!(without.vertices(), &[0]);

    let p3 = LinkGraph::from_graph(generators::path(3));
    let (out, _) = check_sound(p3, |r| r.try_neighborhood_folding(1));
    assert_eq!(out, Outcome::NotApplicable);
}

#[test]
fn fold_reconstruction_takes_whole_neighborhood() {
    // v with two link partners that do not conflict with each other.
    let mut g = lg(3, &[], &[4, 3, 2]);
    g.add_link(0, 1).unwrap();
    g.add_link(0, 2).unwrap();
    let mut r = reducer(g);
    assert_eq!(r.try_neighborhood_folding(0), Outcome::Applied);
    let ri = r.into_instance();
    let EventKind::NeighborhoodFold { new_vertex, .. } = ri.stack[0].kind else {
        panic!("expected a fold");
    };
    let mut inside = vec![false; new_vertex + 1];
    inside[new_vertex] = true;
    unwind(&ri.stack, &mut inside);
    let members: Vec<Vertex> = (0..inside.len()).filter(|&x| inside[x]).collect();
    assert_eq!(members, vec![1, 2]);
}

#[test]
fn fast_degree1_examples() {
    // u v x z
    let g = lg(4, &[(0, 1), (0, 2), (0, 3)], &[3, 4, 2, 5]);
    let (out, r) = check_sound(g, |r| r.try_fast_degree1(0));
    assert_eq!(out, Outcome::Applied);
    assert!(r.graph().is_empty());
    assert_eq!(r.instance().offset, 5);

    let (out, r) = check_sound(star(1, &[1, 1]), |r| r.try_fast_degree1(0));
    assert_eq!(out, Outcome::Applied);
    assert_eq!(r.instance().offset, 1);

    let p3 = LinkGraph::from_graph(generators::path(3));
    let mut r = reducer(p3);
    assert_eq!(r.fast_degree1_at(1), Outcome::NotApplicable);
}

#[test]
fn fast_degree2_examples() {
    // v u y a b
    let edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)];
    let (out, r) = check_sound(lg(5, &edges, &[10, 1, 1, 3, 2]), |r| r.try_fast_degree2(1, 2));
    assert_eq!(out, Outcome::Applied);
    assert_eq!(r.instance().offset, 10);

    let (out, _) = check_sound(lg(5, &edges, &[4, 1, 1, 3, 2]), |r| r.try_fast_degree2(1, 2));
    assert_eq!(out, Outcome::NotApplicable);

    // Two twins of v between u and y.
    let g = lg(5, &[(0, 1), (0, 2), (3, 1), (3, 2), (4, 1), (4, 2)], &[1, 9, 9, 3, 3]);
    let (out, r) = check_sound(g, |r| r.try_fast_degree2(1, 2));
    assert_eq!(out, Outcome::Applied);
    assert_eq!(r.instance().offset, 0);
    assert_eq!(r.graph().n_alive(), 3);
}

#[test]
fn fast_neighborhood_removal_examples() {
    let (out, r) = check_sound(p3([1, 10, 1]), |r| r.try_fast_neighborhood_removal(1));
    assert_eq!(out, Outcome::Applied);
    assert_eq!(r.instance().offset, 10);

    let (out, _) = check_sound(p3([1, 1, 1]), |r| r.try_fast_neighborhood_removal(1));
    assert_eq!(out, Outcome::Applied);

    let (out, _) = check_sound(star(1, &[1, 1, 1]), |r| r.try_fast_neighborhood_removal(1));
    assert_eq!(out, Outcome::NotApplicable);
}

#[test]
fn engine_examples() {
    let ri = reduce_exhaustively(
        LinkGraph::from_graph(generators::star(3)),
        &ReductionConfig::strong(),
        0,
    );
    assert!(ri.is_fully_reduced());
    assert_eq!(ri.offset, 1);

    let ri = reduce_exhaustively(
        LinkGraph::from_graph(generators::path(6)),
        &ReductionConfig::strong(),
        0,
    );
    assert!(ri.is_fully_reduced());
    assert_eq!(ri.offset, 2);

    let g = LinkGraph::from_graph(generators::cycle(7));
    let ri = reduce_exhaustively(g.clone(), &ReductionConfig::custom(vec![]), 0);
    assert!(ri.graph.same_structure(&g));
    assert_eq!(ri.offset, 0);
}

#[test]
fn restore_of_empty_kernel_has_offset_weight() {
    let g = LinkGraph::from_graph(generators::path(6));
    let ri = reduce_exhaustively(g, &ReductionConfig::full(), 3);
    let s = restore(&ri, &[]).unwrap();
    assert_eq!(s.weight(), ri.offset);
    assert!(crate::oracle::is_2packing(ri.graph.base(), s.vertices()));
}

#[test]
fn engine_is_deterministic_and_idempotent() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let g = generators::random_sparse(300, 3.0, &mut rng);
    let g = generators::with_random_weights(&g, 1, 50, &mut rng);
    let a = reduce_exhaustively(LinkGraph::from_graph(g.clone()), &ReductionConfig::full(), 9);
    let b = reduce_exhaustively(LinkGraph::from_graph(g), &ReductionConfig::full(), 9);
    assert_eq!(a.stack, b.stack);
    assert!(a.graph.same_structure(&b.graph));

    let again = reduce_exhaustively(a.graph.clone(), &ReductionConfig::full(), 1);
    assert!(again.stack.is_empty());
}
