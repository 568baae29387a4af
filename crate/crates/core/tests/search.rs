use std::collections::HashSet;

use lazy_astar::domain::tile::{random_instance, CostMode, TilePuzzle, TileState};
use lazy_astar::domain::tree::{ErrorModel, SyntheticTree, TreeConfig};
use lazy_astar::heuristic::manhattan::{AxisDistance, WeightedManhattan};
use lazy_astar::heuristic::{FnHeuristic, Heuristic, Zero};
use lazy_astar::oracle::{compare_expansion_sets, uniform_cost_optimal};
use lazy_astar::search::{
    solve, Edge, EventKind, Limits, NodeClass, SearchError, SearchOptions, StateSpace, Transitions,
};
use lazy_astar::strategy::{DecisionPolicy, Enhancements, RationalConfig, Strategy};
use lazy_astar::Cost;

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn start_is_goal() {
    let p = TilePuzzle::new(TileState::goal(3, 3).unwrap(), CostMode::Unit);
    let md = WeightedManhattan::unit(3, 3);
    for s in [Strategy::AStarMax, Strategy::Lazy] {
        let r = solve(&p, &md, &md, &s, &opts()).unwrap();
        assert_eq!(r.cost, 0);
        assert_eq!(r.counters.expanded, 0);
        assert_eq!(r.counters.generated, 1);
        assert_eq!(r.counters.h1_evals + r.counters.h2_evals, 0);
        assert_eq!(r.path.len(), 1);
        assert!(r.step_costs.is_empty());
    }
}

#[test]
fn binary_tree_hand_trace() {
    let tree = SyntheticTree::generate(&TreeConfig::default()).unwrap();
    let r = solve(&tree, &tree.h1(), &tree.h2(), &Strategy::Lazy, &opts()).unwrap();
    let c = r.counters;
    assert_eq!(r.cost, 3);
    assert_eq!((c.er, c.sr, c.sg, c.goals), (3, 2, 0, 2));
    assert_eq!(c.generated, 7);
    assert_eq!(c.h2_evals, c.er + c.sr);
    assert_eq!(r.path, vec![0, 1, 3, 7]);
}

#[test]
fn three_node_tree() {
    // root with a goal child and a child whose h1 already exceeds C*
    let tree = SyntheticTree::explicit(
        2,
        vec![0, 1, 1],
        vec![false, true, false],
        vec![0, 0, 0],
        vec![1, 0, 0],
    )
    .unwrap();
    let h1 = FnHeuristic::new("h1", false, |s: &usize| if *s == 2 { 5 } else { 0 });
    let r = solve(&tree, &h1, &tree.h2(), &Strategy::Lazy, &opts()).unwrap();
    let c = r.counters;
    assert_eq!((c.er, c.sr, c.sg, c.goals), (1, 0, 1, 1));
    assert_eq!(r.node_classes[&2], NodeClass::SurplusGood);
    assert_eq!(r.node_classes[&0], NodeClass::ExpandedRegular);
    assert_eq!(c.good1, 1);
}

#[test]
fn chain_with_perfect_h1() {
    let cfg = TreeConfig {
        branching: 1,
        depth: 5,
        h1: ErrorModel::PERFECT,
        ..TreeConfig::default()
    };
    let tree = SyntheticTree::generate(&cfg).unwrap();
    let r = solve(&tree, &tree.h1(), &Zero, &Strategy::AStarH1, &opts()).unwrap();
    assert_eq!(r.counters.expanded, 5);
    assert_eq!(r.cost, 5);
}

#[test]
fn open_push_pop_conservation_and_identities() {
    let dx = AxisDistance::columns(3, 3);
    let dy = AxisDistance::rows(3, 3);
    for seed in 0..30 {
        let s = random_instance(3, 3, seed, 40).unwrap();
        let p = TilePuzzle::new(s, CostMode::Unit);
        let oracle = uniform_cost_optimal(&p, None).unwrap();
        let max = solve(&p, &dx, &dy, &Strategy::AStarMax, &opts()).unwrap();
        let lazy = solve(&p, &dx, &dy, &Strategy::Lazy, &opts()).unwrap();
        assert_eq!(max.cost, oracle);
        assert_eq!(lazy.cost, oracle);
        let c = lazy.counters;
        assert_eq!(c.h2_evals, c.er + c.sr);
        assert_eq!(c.generated, c.er + c.sr + c.sg + c.goals);
        assert_eq!(c.h2_evals, max.counters.h2_evals - c.sg);
        let open_left = c.sr + c.sg + c.goals - 1;
        assert_eq!(c.open_pushes - c.open_pops, open_left);
        assert!(compare_expansion_sets(&lazy, &max).unwrap().pass());
        let path_cost: Cost = lazy.step_costs.iter().sum();
        assert_eq!(path_cost, lazy.cost);
        assert_eq!(lazy.node_classes.len() as u64, c.generated);
    }
}

/// A small graph whose heuristic is admissible but inconsistent, so a
/// closed node is later reached more cheaply.
struct Diamond;

impl Transitions for Diamond {
    type State = u8;
    fn successors(&self, s: &u8, out: &mut Vec<Edge<u8>>) {
        let edges: &[(u8, Cost)] = match s {
            0 => &[(1, 1), (2, 4)],
            1 => &[(3, 5)],
            2 => &[(3, 1)],
            3 => &[(4, 5)],
            _ => &[],
        };
        out.extend(edges.iter().map(|&(t, c)| Edge { state: t, cost: c, bidirectional: false }));
    }
    fn is_goal(&self, s: &u8) -> bool {
        *s == 4
    }
}

impl StateSpace for Diamond {
    fn initial_state(&self) -> u8 {
        0
    }
}

#[test]
fn reopening_keeps_optimality() {
    // true distances 10, 10, 6, 5, 0; h(2) = 6 delays the cheap branch until
    // node 3 has been closed through node 1
    let h = FnHeuristic::new("h", false, |s: &u8| [0, 0, 6, 0, 0][*s as usize]);
    for s in [Strategy::AStarH1, Strategy::AStarMax, Strategy::Lazy] {
        let r = solve(&Diamond, &h, &Zero, &s, &opts()).unwrap();
        assert_eq!(r.cost, 10);
        assert_eq!(r.path, vec![0, 2, 3, 4]);
        assert!(r.counters.reopened >= 1, "{s}: expected a reopening");
    }
}

#[test]
fn limits_are_errors() {
    let s = random_instance(3, 3, 5, 60).unwrap();
    let p = TilePuzzle::new(s, CostMode::Unit);
    let options = SearchOptions {
        limits: Limits { max_expansions: Some(3), max_generated: None },
        ..opts()
    };
    let err = solve(&p, &Zero, &Zero, &Strategy::Lazy, &options).unwrap_err();
    match err {
        SearchError::ResourceLimit { counters, .. } => assert_eq!(counters.expanded, 3),
        other => panic!("unexpected {other:?}"),
    }
    let options = SearchOptions {
        limits: Limits { max_expansions: None, max_generated: Some(10) },
        ..opts()
    };
    assert!(matches!(
        solve(&p, &Zero, &Zero, &Strategy::AStarMax, &options),
        Err(SearchError::ResourceLimit { .. })
    ));
}

#[test]
fn unsolvable_instance_reports_no_solution() {
    let s = TileState::from_tiles_unchecked_parity(3, 3, &[0, 2, 1, 3, 4, 5, 6, 7, 8]).unwrap();
    let p = TilePuzzle::new(s, CostMode::Unit);
    let md = WeightedManhattan::unit(3, 3);
    let err = solve(&p, &md, &md, &Strategy::Lazy, &opts()).unwrap_err();
    match err {
        SearchError::NoSolution { counters } => assert_eq!(counters.generated, 181_440),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn key_never_decreases_for_a_node() {
    let dx = AxisDistance::columns(3, 3);
    let dy = AxisDistance::rows(3, 3);
    let s = random_instance(3, 3, 77, 50).unwrap();
    let p = TilePuzzle::new(s, CostMode::Unit);
    let options = SearchOptions { trace: true, ..opts() };
    let r = solve(&p, &dx, &dy, &Strategy::Lazy, &options).unwrap();
    // evaluating h2 and reinserting never lowers the key the node was popped with
    let mut last = std::collections::HashMap::new();
    let mut checked = 0;
    for e in r.trace.unwrap() {
        if matches!(e.kind, EventKind::EvalH2 | EventKind::Reinsert | EventKind::Expand) {
            if let Some(&(EventKind::Pop | EventKind::EvalH2, prev)) = last.get(&e.state_id) {
                assert!(e.f >= prev);
                checked += 1;
            }
        }
        last.insert(e.state_id, (e.kind, e.f));
    }
    assert!(checked > 0);
}

#[test]
fn results_cross_threads() {
    fn send<T: Send + Sync>(_: &T) {}
    let p = TilePuzzle::new(random_instance(3, 3, 1, 20).unwrap(), CostMode::Unit);
    let md = WeightedManhattan::unit(3, 3);
    let r = solve(&p, &md, &md, &Strategy::Lazy, &opts()).unwrap();
    send(&r);
    send(&md);
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let md = &md;
            let p = &p;
            std::thread::scope(|sc| sc.spawn(move || solve(p, md, md, &Strategy::AStarMax, &SearchOptions::default()).unwrap().cost).join().unwrap())
        })
        .collect();
    assert!(handles.iter().all(|&c| c == r.cost));
}

#[test]
fn rational_always_bypass_matches_h1_expansions() {
    let md = WeightedManhattan::unit(3, 3);
    let h2: &dyn Heuristic<TileState> = &md;
    let dx = AxisDistance::columns(3, 3);
    let bypass = Strategy::RationalLazy(RationalConfig::with_policy(DecisionPolicy::AlwaysBypass));
    for seed in 0..10 {
        let p = TilePuzzle::new(random_instance(3, 3, seed, 40).unwrap(), CostMode::Unit);
        let a = solve(&p, &dx, h2, &bypass, &opts()).unwrap();
        let b = solve(&p, &dx, h2, &Strategy::AStarH1, &opts()).unwrap();
        assert!(compare_expansion_sets(&a, &b).unwrap().pass());
        assert_eq!(a.counters.h2_evals, 1);
        assert_eq!(a.counters.good2, a.counters.eb);
    }
}

#[test]
fn hbp_skips_on_axis_split() {
    let dx = AxisDistance::columns(3, 3);
    let dy = AxisDistance::rows(3, 3);
    let mut skips = 0;
    let mut seen = HashSet::new();
    for seed in 0..50 {
        let p = TilePuzzle::new(random_instance(3, 3, seed, 60).unwrap(), CostMode::Unit);
        let oracle = uniform_cost_optimal(&p, None).unwrap();
        for s in [Strategy::Lazy, Strategy::AStarMax] {
            let r = solve(&p, &dx, &dy, &s, &SearchOptions::with_enhancements(Enhancements::hbp())).unwrap();
            assert_eq!(r.cost, oracle);
            skips += r.counters.hbp1_skips;
            seen.insert(r.counters.hbp2_delays > 0);
        }
    }
    assert!(skips > 0);
}

#[test]
fn redundant_h2_matches_h1_alone() {
    let md = WeightedManhattan::tile_number(3, 3);
    for seed in 0..20 {
        let p = TilePuzzle::new(random_instance(3, 3, 300 + seed, 60).unwrap(), CostMode::TileNumber);
        let alone = solve(&p, &md, &md, &Strategy::AStarH1, &opts()).unwrap();
        let max = solve(&p, &md, &md, &Strategy::AStarMax, &opts()).unwrap();
        assert!(compare_expansion_sets(&alone, &max).unwrap().pass(), "seed {seed}");
    }
}
