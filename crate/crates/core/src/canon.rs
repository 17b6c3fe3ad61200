//! Canonical labelling by equitable refinement with individualization and
//! pruning through discovered automorphisms. The canonical form of a graph is
//! the lexicographically smallest relabelled adjacency matrix reachable from a
//! refinement-respecting labelling; two graphs are isomorphic iff their
//! canonical keys agree.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

/// Canonical key bytes: order n followed by the packed upper triangle
/// (row major, MSB first) of the canonical adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    pub fn from_hex(hex: &str) -> Result<CanonicalKey> {
        if hex.is_empty() || hex.len() % 2 != 0 {
            return Err(Error::Parse(format!("bad key length in {hex:?}")));
        }
        let mut bytes = Vec::with_capacity(hex.len() / 2);
        for i in (0..hex.len()).step_by(2) {
            let b = u8::from_str_radix(&hex[i..i + 2], 16)
                .map_err(|_| Error::Parse(format!("bad hex in key {hex:?}")))?;
            bytes.push(b);
        }
        Ok(CanonicalKey(bytes))
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    /// The canonical representative itself: the graph whose adjacency matrix
    /// this key encodes. Round trip: `canonical_key(&key.to_graph()?) == key`.
    pub fn to_graph(&self) -> Result<Graph> {
        let n = self.0[0] as usize;
        let bits = n * n.saturating_sub(1) / 2;
        if n > 32 || self.0.len() != 1 + bits.div_ceil(8) {
            return Err(Error::Parse(format!("malformed graph key {self}")));
        }
        let mut edges = Vec::new();
        let mut pos = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[1 + pos / 8] & (0x80 >> (pos % 8)) != 0 {
                    edges.push((i, j));
                }
                pos += 1;
            }
        }
        Graph::from_edge_list(n, &edges)
    }

    fn pack(n: usize, rows: &[u32]) -> CanonicalKey {
        let bits = n * n.saturating_sub(1) / 2;
        let mut bytes = vec![0u8; 1 + bits.div_ceil(8)];
        bytes[0] = n as u8;
        let mut pos = 0;
        for i in 0..n {
            for j in i + 1..n {
                if rows[i] >> j & 1 == 1 {
                    bytes[1 + pos / 8] |= 0x80 >> (pos % 8);
                }
                pos += 1;
            }
        }
        CanonicalKey(bytes)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    let n = g.n();
    if n == 0 {
        return CanonicalKey(vec![0]);
    }
    let adj: Vec<u32> = (0..n).map(|v| g.adjacency_row(v)).collect();
    let mut search = Search {
        n,
        adj: &adj,
        best: None,
        best_lab: Vec::new(),
        autos: Vec::new(),
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    search.run(vec![full], &mut Vec::new());
    CanonicalKey::pack(n, &search.best.unwrap())
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edge_count() == h.edge_count() && canonical_key(g) == canonical_key(h)
}

/// Ordered partition as a list of vertex masks. Refinement splits cells by
/// neighbour counts against every cell until stable; split order depends only
/// on the partition structure and the counts, never on vertex labels.
fn refine(cells: &mut Vec<u32>, adj: &[u32]) {
    let mut stable = false;
    while !stable {
        stable = true;
        let mut si = 0;
        while si < cells.len() {
            let splitter = cells[si];
            let mut ci = 0;
            while ci < cells.len() {
                let cell = cells[ci];
                if cell.count_ones() > 1 {
                    let mut buckets = [0u32; 33];
                    let mut used = 0u64;
                    for v in BitIter(cell) {
                        let c = (adj[v as usize] & splitter).count_ones() as usize;
                        buckets[c] |= 1 << v;
                        used |= 1 << c;
                    }
                    if used.count_ones() > 1 {
                        let parts: Vec<u32> = (0..=32).filter(|&c| used >> c & 1 == 1).map(|c| buckets[c]).collect();
                        cells.splice(ci..=ci, parts.iter().copied());
                        stable = false;
                        ci += used.count_ones() as usize;
                        continue;
                    }
                }
                ci += 1;
            }
            si += 1;
        }
    }
}

struct Search<'a> {
    n: usize,
    adj: &'a [u32],
    best: Option<Vec<u32>>,
    best_lab: Vec<u8>,
    autos: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<u32>, base: &mut Vec<u8>) {
        refine(&mut cells, self.adj);
        if let Some(ti) = cells.iter().position(|c| c.count_ones() > 1) {
            let target = cells[ti];
            let mut tried = 0u32;
            for v in BitIter(target) {
                if self.pruned(base, v, tried) {
                    continue;
                }
                tried |= 1 << v;
                let mut child = cells.clone();
                child.splice(ti..=ti, [1u32 << v, target & !(1 << v)]);
                base.push(v as u8);
                self.run(child, base);
                base.pop();
            }
        } else {
            self.leaf(&cells);
        }
    }

    /// Candidate v is redundant if a known automorphism fixes the current
    /// base pointwise and maps v onto an already-explored candidate.
    fn pruned(&self, base: &[u8], v: u32, tried: u32) -> bool {
        if tried == 0 {
            return false;
        }
        self.autos.iter().any(|auto| {
            tried >> auto[v as usize] & 1 == 1 && base.iter().all(|&b| auto[b as usize] == b)
        })
    }

    fn leaf(&mut self, cells: &[u32]) {
        let mut lab = [0u8; 32];
        let mut pos = [0u8; 32];
        for (i, cell) in cells.iter().enumerate() {
            let v = cell.trailing_zeros() as u8;
            lab[i] = v;
            pos[v as usize] = i as u8;
        }
        let mut rows = vec![0u32; self.n];
        for i in 0..self.n {
            let mut row = 0u32;
            for w in BitIter(self.adj[lab[i] as usize]) {
                row |= 1 << pos[w as usize];
            }
            rows[i] = row;
        }
        match &self.best {
            None => {
                self.best = Some(rows);
                self.best_lab = lab[..self.n].to_vec();
            }
            Some(best) => {
                if rows < *best {
                    self.best = Some(rows);
                    self.best_lab = lab[..self.n].to_vec();
                } else if rows == *best && self.autos.len() < 512 {
                    // equal strings certify an automorphism best_lab[i] -> lab[i]
                    let mut auto = vec![0u8; self.n];
                    for i in 0..self.n {
                        auto[self.best_lab[i] as usize] = lab[i];
                    }
                    if auto.iter().enumerate().any(|(v, &w)| v as u8 != w) {
                        self.autos.push(auto);
                    }
                }
            }
        }
    }
}
