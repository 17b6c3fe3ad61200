//! Simple undirected graphs on at most 32 vertices, stored as bitset adjacency rows.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

/// Coarse class of a connected graph by cycle rank m - n + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum GraphClass {
    Tree,
    Unicyclic,
    Bicyclic,
    Other,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphClass::Tree => "tree",
            GraphClass::Unicyclic => "unicyclic",
            GraphClass::Bicyclic => "bicyclic",
            GraphClass::Other => "other",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for GraphClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(GraphClass::Tree),
            "unicyclic" => Ok(GraphClass::Unicyclic),
            "bicyclic" => Ok(GraphClass::Bicyclic),
            "other" => Ok(GraphClass::Other),
            _ => Err(Error::Parse(format!("unknown graph class {s:?}"))),
        }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.n });
        }
        Ok(())
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn adjacency_row(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[v]).map(|b| b as usize)
    }

    /// Edges as (u, v) with u < v, ordered lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// New graph with the edge (u, v) added; errors if it is already present.
    pub fn adding_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        if g.has_edge(u, v) {
            return Err(Error::EdgePresent(u.min(v), u.max(v)));
        }
        g.insert_edge(u, v)?;
        Ok(g)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        Ok(g)
    }

    /// Deletes the given vertices (with incident edges) and relabels the rest,
    /// preserving their relative order.
    pub fn delete_vertices(&self, vs: &[usize]) -> Result<Graph> {
        let mut drop_mask = 0u32;
        for &v in vs {
            self.check_vertex(v)?;
            drop_mask |= 1 << v;
        }
        Ok(self.induced_subgraph(!drop_mask & self.full_mask()))
    }

    /// Induced subgraph on the vertices of `mask`, relabelled in increasing label order.
    pub fn induced_subgraph(&self, mask: u32) -> Graph {
        let mask = mask & self.full_mask();
        let mut map = [0usize; MAX_VERTICES];
        let mut k = 0;
        for v in 0..self.n {
            if mask >> v & 1 == 1 {
                map[v] = k;
                k += 1;
            }
        }
        let mut adj = vec![0u32; k];
        for v in BitIter(mask) {
            let v = v as usize;
            for w in BitIter(self.adj[v] & mask) {
                adj[map[v]] |= 1 << map[w as usize];
            }
        }
        Graph { n: k, adj }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row << self.n));
        Ok(Graph { n, adj })
    }

    fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Vertex masks of the connected components, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<u32> {
        let mut seen = 0u32;
        let mut comps = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 1u32 << v;
            loop {
                let mut next = comp;
                for u in BitIter(comp) {
                    next |= self.adj[u as usize];
                }
                if next == comp {
                    break;
                }
                comp = next;
            }
            seen |= comp;
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// BFS distances from `src`; unreachable vertices get usize::MAX.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut frontier = 1u32 << src;
        let mut visited = frontier;
        let mut level = 0;
        while frontier != 0 {
            level += 1;
            let mut next = 0u32;
            for v in BitIter(frontier) {
                next |= self.adj[v as usize];
            }
            next &= !visited;
            for v in BitIter(next) {
                dist[v as usize] = level;
            }
            visited |= next;
            frontier = next;
        }
        dist
    }

    /// Largest BFS eccentricity; errors on disconnected graphs. The
    /// single-vertex graph has diameter 0.
    pub fn diameter(&self) -> Result<usize> {
        if self.n == 0 || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut best = 0;
        for v in 0..self.n {
            let ecc = *self.bfs_distances(v).iter().max().unwrap();
            if ecc == usize::MAX {
                return Err(Error::Disconnected);
            }
            best = best.max(ecc);
        }
        Ok(best)
    }

    /// Classifies a connected graph by its cycle rank; errors on disconnected input.
    pub fn classify(&self) -> Result<GraphClass> {
        if self.n == 0 || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(match (self.edge_count() + 1).checked_sub(self.n) {
            Some(0) => GraphClass::Tree,
            Some(1) => GraphClass::Unicyclic,
            Some(2) => GraphClass::Bicyclic,
            _ => GraphClass::Other,
        })
    }

    /// Parses the plain text format: first significant line is the order,
    /// each following line one edge "u v". `#` starts a comment; blank lines
    /// are skipped.
    pub fn from_text(text: &str) -> Result<Graph> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            if n.is_none() {
                let v = parts.next().unwrap();
                if parts.next().is_some() {
                    return Err(Error::Parse(format!("line {}: expected a single order", lineno + 1)));
                }
                n = Some(v.parse().map_err(|_| Error::Parse(format!("line {}: bad order {v:?}", lineno + 1)))?);
            } else {
                let u = parts
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {}: expected an edge", lineno + 1)))?;
                let v = parts
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {}: expected two endpoints", lineno + 1)))?;
                if parts.next().is_some() {
                    return Err(Error::Parse(format!("line {}: trailing tokens", lineno + 1)));
                }
                let u = u.parse().map_err(|_| Error::Parse(format!("line {}: bad vertex {u:?}", lineno + 1)))?;
                let v = v.parse().map_err(|_| Error::Parse(format!("line {}: bad vertex {v:?}", lineno + 1)))?;
                edges.push((u, v));
            }
        }
        let n = n.ok_or_else(|| Error::Parse("empty graph file".into()))?;
        Graph::from_edge_list(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Iterates the set bit positions of a u32, ascending.
pub(crate) struct BitIter(pub u32);

impl Iterator for BitIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros();
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(Graph::empty(33), Err(Error::TooManyVertices(33))));
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        ));
        assert!(matches!(Graph::from_edge_list(3, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
    }

    #[test]
    fn empty_graph_of_order_zero_is_fine() {
        let g = Graph::empty(0).unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edges_round_trip() {
        let g = Graph::from_edge_list(5, &[(2, 0), (0, 1), (3, 4)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (3, 4)]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0), 2);
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn delete_edge_requires_presence() {
        let p3 = path(3);
        assert!(matches!(p3.delete_edge(0, 2), Err(Error::MissingEdge(0, 2))));
        let g = p3.delete_edge(1, 0).unwrap();
        assert_eq!(g.edges(), vec![(1, 2)]);
    }

    #[test]
    fn delete_vertices_relabels_in_order() {
        let c5 = cycle(5);
        let g = c5.delete_vertices(&[1, 3]).unwrap();
        // remaining vertices 0, 2, 4 become 0, 1, 2; only edge 4-0 survives
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 2)]);
    }

    #[test]
    fn disjoint_union_offsets_labels() {
        let g = path(2).disjoint_union(&path(3)).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 1), (2, 3), (3, 4)]);
        assert!(path(20).disjoint_union(&path(20)).is_err());
    }

    #[test]
    fn components_and_connectivity() {
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (4, 5)]).unwrap();
        assert_eq!(g.connected_components(), vec![0b000111, 0b001000, 0b110000]);
        assert!(!g.is_connected());
        assert!(path(4).is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(path(7).diameter().unwrap(), 6);
        assert_eq!(cycle(5).diameter().unwrap(), 2);
        assert_eq!(cycle(8).diameter().unwrap(), 4);
        let star = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.diameter().unwrap(), 2);
        assert_eq!(Graph::empty(1).unwrap().diameter().unwrap(), 0);
        assert!(Graph::empty(2).unwrap().diameter().is_err());
        assert!(Graph::empty(0).unwrap().diameter().is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(path(5).classify().unwrap(), GraphClass::Tree);
        assert_eq!(cycle(4).classify().unwrap(), GraphClass::Unicyclic);
        let theta = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(theta.classify().unwrap(), GraphClass::Bicyclic);
        let k4 = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.classify().unwrap(), GraphClass::Other);
        assert!(Graph::empty(3).unwrap().classify().is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let text = "# sample\n5\n0 1  # pendant\n\n1 2\n2 3\n3 4\n";
        let g = Graph::from_text(text).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        let again = Graph::from_text(&g.to_text()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn text_format_rejects_garbage() {
        assert!(Graph::from_text("").is_err());
        assert!(Graph::from_text("three\n").is_err());
        assert!(Graph::from_text("3\n0\n").is_err());
        assert!(Graph::from_text("3\n0 1 2\n").is_err());
        assert!(Graph::from_text("2\n0 1\n0 1\n").is_err());
    }
}
