mod common;

use common::*;
use pvgkit::recognize::{
    check_realization, grid_graph, grid_spacing_defect, isomorphism, recognize_on_grid, search_incidence_pattern,
    IncidencePattern, RealizationQuery, SearchStatus,
};
use pvgkit::visibility::visibility_graph;

fn found(g: pvgkit::visibility::VisibilityGraph, k: usize) -> bool {
    let r = recognize_on_grid(&RealizationQuery::new(g.clone(), k)).unwrap();
    if let Some(ps) = &r.realization {
        assert!(check_realization(ps, &g, true).unwrap().passed);
        assert!(visibility_graph(ps).same_labeled(&naive_graph(ps)));
    }
    r.status == SearchStatus::Found
}

#[test]
fn complete_graphs_and_paths() {
    for n in 2..=5 {
        assert!(found(complete(n), 4), "K{n}");
        assert!(found(path(n), n), "P{n}");
    }
    assert!(!found(path(4), 3));
}

#[test]
fn claw_is_never_a_visibility_graph_on_small_grids() {
    for k in 2..=5 {
        assert!(!found(claw(), k));
    }
}

#[test]
fn enumeration_matches_first_hit() {
    let mut q = RealizationQuery::new(path(3), 3);
    q.enumerate_all = true;
    let all = recognize_on_grid(&q).unwrap();
    assert!(!all.all.is_empty());
    assert_eq!(all.stats.realizations as usize, all.all.len());
    for ps in &all.all {
        assert!(check_realization(ps, &path(3), true).unwrap().passed);
    }
    q.parallel = true;
    assert_eq!(recognize_on_grid(&q).unwrap().all.len(), all.all.len());
}

#[test]
fn caps_are_enforced() {
    let mut q = RealizationQuery::new(complete(3), 40);
    assert!(recognize_on_grid(&q).is_err());
    q.k = 3;
    q.vertex_cap = 2;
    assert!(recognize_on_grid(&q).is_err());
}

#[test]
fn unlabeled_check_finds_a_relabeling() {
    let (ps, g) = grid_graph(2, 3);
    let mut relabeled = pvgkit::visibility::VisibilityGraph::empty((0..6).map(|i| format!("v{i}")).collect());
    let perm = [3, 5, 0, 4, 1, 2];
    for (a, b) in g.labeled_edges() {
        let (a, b) = (ps.index_of(a).unwrap(), ps.index_of(b).unwrap());
        relabeled.add_edge(perm[a], perm[b]);
    }
    assert!(isomorphism(&g, &relabeled).is_some());
    assert!(check_realization(&ps, &relabeled, false).unwrap().passed);
    assert!(!check_realization(&ps, &complete(6), false).unwrap().passed);
}

#[test]
fn grid_spacing() {
    let grid: Vec<(i64, i64)> = (0..3).flat_map(|r| (0..3).map(move |c| (c, r))).collect();
    assert_eq!(grid_spacing_defect(&grid, 3, 3), None);
    let sheared: Vec<(i64, i64)> = (0..3).flat_map(|r| (0..3).map(move |c| (2 * c + r, 3 * r))).collect();
    assert_eq!(grid_spacing_defect(&sheared, 3, 3), None);
    // a perspective image: columns meet at (0, 4), rows at heights -2, 1, 2
    let persp = vec![(0, -2), (6, -2), (12, -2), (0, 1), (3, 1), (6, 1), (0, 2), (2, 2), (4, 2)];
    assert_eq!(grid_spacing_defect(&persp, 3, 3), None);
    let wrong_heights = vec![(0, 0), (4, 0), (8, 0), (0, 2), (2, 2), (4, 2), (0, 3), (1, 3), (2, 3)];
    assert!(grid_spacing_defect(&wrong_heights, 3, 3).is_some());
    let uneven = vec![(0, 0), (1, 0), (3, 0), (0, 1), (1, 1), (3, 1), (0, 2), (1, 2), (3, 2)];
    assert!(grid_spacing_defect(&uneven, 3, 3).is_some());
    let tilted = vec![(0, 0), (1, 1), (2, 0), (0, 1), (1, 2), (2, 1), (0, 2), (1, 3), (2, 2)];
    assert!(grid_spacing_defect(&tilted, 3, 3).is_some());
}

#[test]
fn incidence_patterns() {
    // three collinear triples through a common point: a "star" of lines
    let star = IncidencePattern::exact(7, vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]]);
    let r = search_incidence_pattern(&star, 3).unwrap();
    assert_eq!(r.status, SearchStatus::Found);
    assert_eq!(star.violation(r.placement.as_ref().unwrap()), None);
    // four points, two lines of three sharing two points: impossible
    let bad = IncidencePattern::exact(4, vec![vec![0, 1, 2], vec![0, 1, 3]]);
    assert_eq!(search_incidence_pattern(&bad, 4).unwrap().status, SearchStatus::Exhausted);
}
