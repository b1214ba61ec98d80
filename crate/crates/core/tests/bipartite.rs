use kfactor::harness::oracle::{brute_force_k_factor, DEFAULT_EDGE_CAP};
use kfactor::solver::{SolveError, TrailLog};
use kfactor::{compute_bipartite_k_factor, compute_k_factor, Graph};

fn bipartite_graphs(a: usize, b: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        Graph::from_edges(a + b, &edges).unwrap()
    })
}

#[test]
fn k33_has_a_hamiltonian_2_factor() {
    let g = Graph::complete_bipartite(3, 3);
    let mut log = TrailLog::default();
    let outcome = kfactor::solver::compute_bipartite_k_factor_with(&g, None, 2, &mut log).unwrap();
    assert!(outcome.is_factor_found());
    assert_eq!(outcome.factor.as_ref().unwrap().len(), 6);
    assert!(brute_force_k_factor(&g, 2, DEFAULT_EDGE_CAP).unwrap().is_some());
    assert_eq!(log.sigmas, vec![12, 10, 8, 6, 4, 2, 0]);
    assert!(log.trails.iter().all(|t| t.is_vertex_simple(&g) && !t.is_closed(&g)));
}

#[test]
fn general_and_bipartite_solvers_agree() {
    for (a, b) in [(2, 3), (3, 3), (3, 4)] {
        for g in bipartite_graphs(a, b) {
            for k in 1..=3 {
                let general = compute_k_factor(&g, k).unwrap();
                let paths = compute_bipartite_k_factor(&g, None, k).unwrap();
                assert_eq!(general.status, paths.status, "{} k={k}", g.to_edge_list());
            }
        }
    }
}

#[test]
fn rejects_bad_bipartitions() {
    let triangle = Graph::cycle(3);
    assert!(matches!(compute_bipartite_k_factor(&triangle, None, 1), Err(SolveError::NotBipartite)));
    let square = Graph::cycle(4);
    let sides = [false, false, true, true];
    assert!(matches!(compute_bipartite_k_factor(&square, Some(&sides), 1), Err(SolveError::InvalidBipartition { .. })));
    assert!(matches!(
        compute_bipartite_k_factor(&square, Some(&sides[..3]), 1),
        Err(SolveError::BipartitionSize { .. })
    ));
}
