//! Cycle structure of bicyclic graphs. A connected graph with n+1 edges has
//! cycle rank two: it contains either exactly two cycles (edge-disjoint,
//! meeting in at most one vertex) or exactly three (pairwise sharing edges,
//! a theta subdivision).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, GraphClass};

/// Description of the two defining cycles of a bicyclic graph: lengths
/// a <= b sharing t common edges. With t = 0 the cycles are disjoint and
/// `l` is the distance between them; with t >= 1 the third cycle has length
/// c = a + b - 2t and the pair is chosen so that a - t >= t and b - t >= t,
/// breaking ties by the lexicographically smallest (t, a, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BicyclicStructure {
    pub a: usize,
    pub b: usize,
    pub t: usize,
    /// Distance between the cycles when t = 0.
    pub l: Option<usize>,
    /// Length of the third cycle when t >= 1.
    pub c: Option<usize>,
}

/// Sorted edge set of a cycle, as (u, v) pairs with u < v.
type EdgeSet = Vec<(usize, usize)>;

pub fn cycle_structure(g: &Graph) -> Result<BicyclicStructure> {
    if g.classify()? != GraphClass::Bicyclic {
        return Err(Error::NotBicyclic);
    }
    let (f1, f2) = fundamental_cycles(g);
    let shared = intersect(&f1, &f2);
    if shared.is_empty() {
        let (a_edges, b_edges) = if f1.len() <= f2.len() { (&f1, &f2) } else { (&f2, &f1) };
        let l = cycle_distance(g, a_edges, b_edges);
        Ok(BicyclicStructure { a: a_edges.len(), b: b_edges.len(), t: 0, l: Some(l), c: None })
    } else {
        let f3 = symmetric_difference(&f1, &f2);
        let cycles = [f1, f2, f3];
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let (a, b) = (cycles[i].len(), cycles[j].len());
                if a > b {
                    continue;
                }
                let t = intersect(&cycles[i], &cycles[j]).len();
                if t >= 1 && a - t >= t && b - t >= t {
                    let c = a + b - 2 * t;
                    let cand = (t, a, b, c);
                    if best.map_or(true, |cur| (cand.0, cand.1, cand.2) < (cur.0, cur.1, cur.2)) {
                        best = Some(cand);
                    }
                }
            }
        }
        let (t, a, b, c) = best.expect("a theta graph always has an admissible cycle pair");
        Ok(BicyclicStructure { a, b, t, l: None, c: Some(c) })
    }
}

/// The two fundamental cycles relative to a BFS spanning tree.
fn fundamental_cycles(g: &Graph) -> (EdgeSet, EdgeSet) {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut in_tree = vec![0u32; n];
    let mut visited = 1u32;
    let mut queue = vec![0usize];
    parent[0] = 0;
    while let Some(v) = queue.pop() {
        for w in g.neighbors(v) {
            if visited >> w & 1 == 0 {
                visited |= 1 << w;
                parent[w] = v;
                in_tree[v] |= 1 << w;
                in_tree[w] |= 1 << v;
                queue.push(w);
            }
        }
    }
    let mut extra = Vec::new();
    for (u, v) in g.edges() {
        if in_tree[u] >> v & 1 == 0 {
            extra.push((u, v));
        }
    }
    debug_assert_eq!(extra.len(), 2);
    let cyc = |&(u, v): &(usize, usize)| -> EdgeSet {
        // tree paths from u and v to the root, trimmed at their meeting point
        let path_to_root = |mut x: usize| {
            let mut p = vec![x];
            while parent[x] != x {
                x = parent[x];
                p.push(x);
            }
            p
        };
        let pu = path_to_root(u);
        let pv = path_to_root(v);
        let on_pv: u32 = pv.iter().fold(0, |m, &x| m | 1 << x);
        let meet = *pu.iter().find(|&&x| on_pv >> x & 1 == 1).unwrap();
        let mut edges = vec![(u.min(v), u.max(v))];
        for p in [&pu, &pv] {
            for w in p.windows(2) {
                if w[0] == meet {
                    break;
                }
                edges.push((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        edges.sort_unstable();
        edges
    };
    (cyc(&extra[0]), cyc(&extra[1]))
}

fn intersect(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    a.iter().filter(|e| b.binary_search(e).is_ok()).copied().collect()
}

fn symmetric_difference(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    let mut out: EdgeSet = a.iter().filter(|e| b.binary_search(e).is_err()).copied().collect();
    out.extend(b.iter().filter(|e| a.binary_search(e).is_err()));
    out.sort_unstable();
    out
}

fn vertices_of(edges: &EdgeSet) -> u32 {
    edges.iter().fold(0, |m, &(u, v)| m | 1 << u | 1 << v)
}

/// Least BFS distance from any vertex of one cycle to any vertex of the other.
fn cycle_distance(g: &Graph, a: &EdgeSet, b: &EdgeSet) -> usize {
    let target = vertices_of(b);
    let mut best = usize::MAX;
    for v in BitIter(vertices_of(a)) {
        let dist = g.bfs_distances(v as usize);
        for w in BitIter(target) {
            best = best.min(dist[w as usize]);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges).unwrap()
    }

    #[test]
    fn rejects_non_bicyclic_graphs() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(matches!(cycle_structure(&p4), Err(Error::NotBicyclic)));
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(matches!(cycle_structure(&c4), Err(Error::NotBicyclic)));
        let disconnected = g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(cycle_structure(&disconnected).is_err());
    }

    #[test]
    fn theta_k4_minus_edge() {
        let k4e = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        let s = cycle_structure(&k4e).unwrap();
        assert_eq!(s, BicyclicStructure { a: 3, b: 3, t: 1, l: None, c: Some(4) });
    }

    #[test]
    fn two_triangles_joined_by_a_path() {
        // triangles {0,1,2} and {5,6,7} joined by the path 2-3-4-5
        let h = g(8, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)]);
        let s = cycle_structure(&h).unwrap();
        assert_eq!(s, BicyclicStructure { a: 3, b: 3, t: 0, l: Some(3), c: None });
    }

    #[test]
    fn two_cycles_sharing_one_vertex() {
        let h = g(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (2, 5), (5, 6)]);
        let s = cycle_structure(&h).unwrap();
        assert_eq!(s, BicyclicStructure { a: 3, b: 3, t: 0, l: Some(0), c: None });
    }

    #[test]
    fn bi_path_structure() {
        let b71 = build(&FamilySpec::BiPath { n: 7, s: 1 }).unwrap();
        let s = cycle_structure(&b71).unwrap();
        assert_eq!(s, BicyclicStructure { a: 3, b: 3, t: 1, l: None, c: Some(4) });
    }

    #[test]
    fn bi_min_is_a_theta_of_three_square_cycles() {
        let b = build(&FamilySpec::BiMin { n: 9, d: 4 }).unwrap();
        let s = cycle_structure(&b).unwrap();
        assert_eq!(s, BicyclicStructure { a: 4, b: 4, t: 2, l: None, c: Some(4) });
    }

    /// All simple cycles by DFS, for cross-checking the fundamental-cycle route.
    fn brute_cycles(g: &Graph) -> Vec<EdgeSet> {
        let mut out: Vec<EdgeSet> = Vec::new();
        let n = g.n();
        for start in 0..n {
            let mut stack = vec![(start, 1u32 << start, vec![start])];
            while let Some((v, seen, path)) = stack.pop() {
                for w in g.neighbors(v) {
                    if w == start && path.len() >= 3 {
                        let mut edges: EdgeSet = path
                            .windows(2)
                            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
                            .collect();
                        edges.push((start.min(v), start.max(v)));
                        edges.sort_unstable();
                        edges.dedup();
                        if !out.contains(&edges) {
                            out.push(edges);
                        }
                    } else if w > start && seen >> w & 1 == 0 {
                        let mut p = path.clone();
                        p.push(w);
                        stack.push((w, seen | 1 << w, p));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn agrees_with_brute_force_cycle_listing() {
        let samples = [
            build(&FamilySpec::BiMin { n: 8, d: 3 }).unwrap(),
            build(&FamilySpec::BiMin { n: 9, d: 5 }).unwrap(),
            build(&FamilySpec::BiPath { n: 8, s: 0 }).unwrap(),
            build(&FamilySpec::BiPath { n: 9, s: 2 }).unwrap(),
            build(&FamilySpec::Bn2a { n: 8 }).unwrap(),
            build(&FamilySpec::Bn2b { n: 8 }).unwrap(),
            g(8, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)]),
            g(9, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 4)]),
        ];
        for h in &samples {
            let cycles = brute_cycles(h);
            let s = cycle_structure(h).unwrap();
            let mut lens: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
            lens.sort_unstable();
            if s.t == 0 {
                assert_eq!(cycles.len(), 2, "{h:?}");
                assert_eq!(lens, vec![s.a, s.b], "{h:?}");
            } else {
                assert_eq!(cycles.len(), 3, "{h:?}");
                assert!(lens.contains(&s.a) && lens.contains(&s.b) && lens.contains(&s.c.unwrap()));
                assert_eq!(s.a + s.b - 2 * s.t, s.c.unwrap());
                // the chosen pair really shares t edges
                let found = cycles.iter().enumerate().any(|(i, x)| {
                    cycles.iter().enumerate().any(|(j, y)| {
                        i != j && x.len() == s.a && y.len() == s.b && intersect(x, y).len() == s.t
                    })
                });
                assert!(found, "{h:?}");
            }
        }
    }
}
