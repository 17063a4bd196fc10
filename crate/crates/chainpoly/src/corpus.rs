//! Named small graphs and matroids used by the verification suites, tests
//! and benches.

use crate::graph::Graph;
use crate::matroid::Matroid;

/// Complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::new(n, edges).expect("complete graph is valid")
}

/// Cycle on `n >= 1` vertices (`n = 1` is a loop, `n = 2` a parallel pair).
pub fn cycle_graph(n: usize) -> Graph {
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, edges).expect("cycle is valid")
}

/// Path with `n` edges on `n + 1` vertices.
pub fn path_graph(n: usize) -> Graph {
    let edges = (0..n).map(|i| (i, i + 1)).collect();
    Graph::new(n + 1, edges).expect("path is valid")
}

/// One entry of the small-matroid corpus.
pub struct ZooEntry {
    pub name: &'static str,
    pub matroid: Matroid,
}

/// A fixed corpus of small matroids covering uniforms, graphic matroids,
/// duals, sums, minors, loops and parallel elements. Every entry has at
/// most 8 ground elements.
pub fn zoo() -> Vec<ZooEntry> {
    let k4 = Matroid::graphic(complete_graph(4));
    let k3 = Matroid::graphic(complete_graph(3));
    let entry = |name: &'static str, matroid: Matroid| ZooEntry { name, matroid };
    vec![
        entry("U_{0,1} (loop)", Matroid::uniform(0, 1).unwrap()),
        entry("U_{1,1} (coloop)", Matroid::uniform(1, 1).unwrap()),
        entry("U_{1,2} (parallel pair)", Matroid::uniform(1, 2).unwrap()),
        entry("U_{2,2}", Matroid::uniform(2, 2).unwrap()),
        entry("U_{1,3}", Matroid::uniform(1, 3).unwrap()),
        entry("U_{2,3}", Matroid::uniform(2, 3).unwrap()),
        entry("U_{3,3}", Matroid::uniform(3, 3).unwrap()),
        entry("U_{2,4}", Matroid::uniform(2, 4).unwrap()),
        entry("U_{2,5}", Matroid::uniform(2, 5).unwrap()),
        entry("U_{3,6}", Matroid::uniform(3, 6).unwrap()),
        entry("U_{2,7}", Matroid::uniform(2, 7).unwrap()),
        entry("U_{2,8}", Matroid::uniform(2, 8).unwrap()),
        entry("M(K3)", k3.clone()),
        entry("M(K4)", k4.clone()),
        entry("M(C4)", Matroid::graphic(cycle_graph(4))),
        entry("M(C5)", Matroid::graphic(cycle_graph(5))),
        entry("M(P3) (Boolean)", Matroid::graphic(path_graph(3))),
        entry(
            "M(K3 + parallel edge)",
            Matroid::graphic(
                Graph::new(3, vec![(0, 1), (1, 2), (0, 2), (0, 1)]).unwrap(),
            ),
        ),
        entry(
            "M(triangle + loop)",
            Matroid::graphic(
                Graph::new(3, vec![(0, 1), (1, 2), (0, 2), (2, 2)]).unwrap(),
            ),
        ),
        entry("M(K4) dual", k4.dual()),
        entry("U_{2,4} dual", Matroid::uniform(2, 4).unwrap().dual()),
        entry("M(K3) (+) U_{1,1}", k3.direct_sum(&Matroid::uniform(1, 1).unwrap()).unwrap()),
        entry("loop (+) coloop", {
            Matroid::uniform(0, 1)
                .unwrap()
                .direct_sum(&Matroid::uniform(1, 1).unwrap())
                .unwrap()
        }),
        entry("M(K4) / e", k4.contract(0).unwrap()),
        entry("M(K4) \\ e", k4.delete(0).unwrap()),
        entry(
            "M(K4) + bridge",
            Matroid::graphic(
                Graph::new(5, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
                    .unwrap(),
            ),
        ),
    ]
}

/// Zoo entries with at most `max_ground` elements.
pub fn zoo_up_to(max_ground: usize) -> Vec<ZooEntry> {
    zoo()
        .into_iter()
        .filter(|e| e.matroid.ground_size() <= max_ground)
        .collect()
}

/// Simple zoo entries with at most `max_ground` elements.
pub fn simple_zoo_up_to(max_ground: usize) -> Vec<ZooEntry> {
    zoo()
        .into_iter()
        .filter(|e| e.matroid.ground_size() <= max_ground && e.matroid.is_simple())
        .collect()
}

/// All labelled simple graphs on `n` vertices (one per edge subset of the
/// complete graph).
pub fn all_simple_graphs(n: usize) -> Vec<Graph> {
    let all_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let m = all_edges.len();
    (0..1u64 << m)
        .map(|mask| {
            let edges = all_edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(n, edges).expect("subgraph is valid")
        })
        .collect()
}
