//! Exact matching counts. m_k(G) is the number of k-edge matchings; the
//! sequence (m_0, ..., m_{floor(n/2)}) is computed by edge deletion
//!
//! ```text
//! m_k(G) = m_k(G - uv) + m_{k-1}(G - u - v)
//! ```
//!
//! applied per connected component, with results memoized under the
//! component's canonical key and combined by convolution.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::canon::{canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::IntPolynomial;

/// Matching counts (m_0, m_1, ..., m_{floor(n/2)}) of a graph of order n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchingVector(Vec<BigUint>);

impl MatchingVector {
    pub fn as_slice(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// m_k, zero beyond the stored range.
    pub fn get(&self, k: usize) -> BigUint {
        self.0.get(k).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn from_u64(values: &[u64]) -> Self {
        MatchingVector(values.iter().map(|&v| BigUint::from(v)).collect())
    }
}

impl fmt::Display for MatchingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Concurrent memo store keyed by canonical keys of connected graphs.
/// Lookups and inserts are idempotent, so racing computations of the same
/// key are harmless.
#[derive(Default)]
pub struct MatchingCache {
    map: DashMap<CanonicalKey, Arc<Vec<BigUint>>>,
    /// Keys present when a cache file was loaded; `append_to_file` skips them.
    preloaded: DashMap<CanonicalKey, ()>,
}

impl MatchingCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Loads `hexkey:m0,m1,...` lines; missing file is an empty cache.
    pub fn load_file(&self, path: &Path) -> Result<usize> {
        let file = match std::fs::File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let mut loaded = 0;
        for line in std::io::BufReader::new(file).lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key_hex, values) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("cache line without ':': {line:?}")))?;
            let key = CanonicalKey::from_hex(key_hex)?;
            let mut vec = Vec::new();
            for tok in values.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let v: BigUint = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad cache value {tok:?}")))?;
                vec.push(v);
            }
            if vec.is_empty() {
                return Err(Error::Parse(format!("cache line without values: {line:?}")));
            }
            self.preloaded.insert(key.clone(), ());
            self.map.insert(key, Arc::new(vec));
            loaded += 1;
        }
        Ok(loaded)
    }

    /// Appends entries that were not loaded from the file. Returns the number
    /// of lines written.
    pub fn append_to_file(&self, path: &Path) -> Result<usize> {
        let mut entries: Vec<(CanonicalKey, Arc<Vec<BigUint>>)> = self
            .map
            .iter()
            .filter(|e| !self.preloaded.contains_key(e.key()))
            .map(|e| (e.key().clone(), e.value().clone()))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
        for (key, vec) in &entries {
            let mut line = format!("{}:", key.hex());
            for v in vec.iter() {
                line.push_str(&v.to_string());
                line.push(',');
            }
            line.push('\n');
            file.write_all(line.as_bytes())?;
        }
        Ok(entries.len())
    }

    fn get(&self, key: &CanonicalKey) -> Option<Arc<Vec<BigUint>>> {
        self.map.get(key).map(|e| e.value().clone())
    }

    fn insert(&self, key: CanonicalKey, value: Arc<Vec<BigUint>>) {
        self.map.entry(key).or_insert(value);
    }
}

/// Matching counts of `g`, always of length floor(n/2) + 1.
pub fn matching_vector(g: &Graph, cache: &MatchingCache) -> MatchingVector {
    let mut v = raw_vector(g, cache);
    v.resize(g.n() / 2 + 1, BigUint::zero());
    MatchingVector(v)
}

/// The matching polynomial sum_k (-1)^k m_k x^{n-2k}.
pub fn matching_polynomial(g: &Graph, cache: &MatchingCache) -> IntPolynomial {
    let m = matching_vector(g, cache);
    let n = g.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (k, c) in m.as_slice().iter().enumerate() {
        let signed = BigInt::from(c.clone());
        coeffs[2 * k] = if k % 2 == 0 { signed } else { -signed };
    }
    IntPolynomial::new(coeffs)
}

/// Trimmed matching counts: convolution over connected components, isolated
/// vertices contribute nothing.
fn raw_vector(g: &Graph, cache: &MatchingCache) -> Vec<BigUint> {
    let mut acc = vec![BigUint::one()];
    for mask in g.connected_components() {
        if mask.count_ones() < 2 {
            continue;
        }
        let sub = g.induced_subgraph(mask);
        let v = component_vector(&sub, cache);
        acc = convolve(&acc, &v);
    }
    acc
}

fn component_vector(sub: &Graph, cache: &MatchingCache) -> Arc<Vec<BigUint>> {
    let key = canonical_key(sub);
    if let Some(hit) = cache.get(&key) {
        return hit;
    }
    let (u, v) = pivot_edge(sub);
    let without_edge = raw_vector(&sub.delete_edge(u, v).expect("pivot edge exists"), cache);
    let without_ends = raw_vector(&sub.delete_vertices(&[u, v]).expect("pivot endpoints exist"), cache);
    let mut out = without_edge;
    for (k, c) in without_ends.into_iter().enumerate() {
        if k + 1 >= out.len() {
            out.resize(k + 2, BigUint::zero());
        }
        out[k + 1] += c;
    }
    let out = Arc::new(out);
    cache.insert(key, out.clone());
    out
}

/// An edge at a maximum-degree vertex; among its neighbours, one of maximum
/// degree. Both choices take the lowest label on ties.
fn pivot_edge(g: &Graph) -> (usize, usize) {
    let u = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
    let v = g
        .neighbors(u)
        .max_by_key(|&w| (g.degree(w), std::cmp::Reverse(w)))
        .expect("pivot vertex has a neighbour");
    (u, v)
}

fn convolve(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};

    fn mv(g: &Graph) -> MatchingVector {
        matching_vector(g, &MatchingCache::new())
    }

    fn path(n: usize) -> Graph {
        build(&FamilySpec::Path { n }).unwrap()
    }

    /// Counts matchings by backtracking over the edge list, independent of
    /// the deletion recurrence.
    pub(crate) fn oracle(g: &Graph) -> Vec<u64> {
        fn go(edges: &[(usize, usize)], from: usize, used: u32, size: usize, out: &mut Vec<u64>) {
            if size >= out.len() {
                out.resize(size + 1, 0);
            }
            out[size] += 1;
            for i in from..edges.len() {
                let (u, v) = edges[i];
                if used & (1 << u) == 0 && used & (1 << v) == 0 {
                    go(edges, i + 1, used | 1 << u | 1 << v, size + 1, out);
                }
            }
        }
        let mut out = vec![0u64];
        go(&g.edges(), 0, 0, 0, &mut out);
        out.resize(g.n() / 2 + 1, 0);
        out
    }

    #[test]
    fn small_closed_forms() {
        assert_eq!(mv(&path(4)), MatchingVector::from_u64(&[1, 3, 1]));
        let s5 = build(&FamilySpec::Star { n: 5 }).unwrap();
        assert_eq!(mv(&s5), MatchingVector::from_u64(&[1, 4, 0]));
        let c4 = build(&FamilySpec::Cycle { n: 4 }).unwrap();
        assert_eq!(mv(&c4), MatchingVector::from_u64(&[1, 4, 2]));
        assert_eq!(mv(&Graph::empty(0).unwrap()), MatchingVector::from_u64(&[1]));
        assert_eq!(mv(&Graph::empty(7).unwrap()), MatchingVector::from_u64(&[1, 0, 0, 0]));
    }

    #[test]
    fn quadrangle_family_value() {
        let u86 = build(&FamilySpec::UniMin { n: 8, d: 6 }).unwrap();
        assert_eq!(mv(&u86), MatchingVector::from_u64(&[1, 8, 18, 11, 0]));
        let u97 = build(&FamilySpec::UniMin { n: 9, d: 7 }).unwrap();
        assert_eq!(mv(&u97), MatchingVector::from_u64(&[1, 9, 25, 23, 4]));
    }

    #[test]
    fn vector_is_invariant_under_relabelling() {
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let perm = [4usize, 2, 0, 5, 1, 3];
        let relabeled: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let h = Graph::from_edge_list(6, &relabeled).unwrap();
        assert_eq!(mv(&g), mv(&h));
    }

    #[test]
    fn isolated_vertices_do_not_change_counts() {
        let p4 = path(4);
        let padded = p4.disjoint_union(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(mv(&padded).as_slice()[..3], mv(&p4).as_slice()[..3]);
        assert_eq!(mv(&padded).len(), 4);
    }

    #[test]
    fn union_counts_multiply() {
        let g = path(4).disjoint_union(&path(3)).unwrap();
        // (1,3,1) * (1,2) convolved
        assert_eq!(mv(&g), MatchingVector::from_u64(&[1, 5, 7, 2]));
    }

    #[test]
    fn deletion_recurrences_hold_on_all_graphs_up_to_six() {
        let cache = MatchingCache::new();
        for n in 2..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for bits in 0..(1u32 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                if edges.is_empty() {
                    continue;
                }
                let g = Graph::from_edge_list(n, &edges).unwrap();
                let m = matching_vector(&g, &cache);
                // edge rule on the first edge
                let (u, v) = edges[0];
                let me = matching_vector(&g.delete_edge(u, v).unwrap(), &cache);
                let mu = matching_vector(&g.delete_vertices(&[u, v]).unwrap(), &cache);
                for k in 0..m.len() {
                    let expect = me.get(k) + if k > 0 { mu.get(k - 1) } else { BigUint::zero() };
                    assert_eq!(m.get(k), expect, "edge rule fails on {g:?} at k={k}");
                }
                // vertex rule on vertex u
                let gu = matching_vector(&g.delete_vertices(&[u]).unwrap(), &cache);
                for k in 1..m.len() {
                    let mut expect = gu.get(k);
                    for w in g.neighbors(u) {
                        expect += matching_vector(&g.delete_vertices(&[u, w]).unwrap(), &cache).get(k - 1);
                    }
                    assert_eq!(m.get(k), expect, "vertex rule fails on {g:?} at k={k}");
                }
            }
        }
    }

    #[test]
    fn matches_backtracking_oracle_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let cache = MatchingCache::new();
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let expect = MatchingVector::from_u64(&oracle(&g));
            assert_eq!(matching_vector(&g, &cache), expect, "mismatch on {g:?}");
        }
    }

    #[test]
    fn polynomial_layout() {
        let u86 = build(&FamilySpec::UniMin { n: 8, d: 6 }).unwrap();
        let p = matching_polynomial(&u86, &MatchingCache::new());
        assert_eq!(p.display_with('u'), "u^8 - 8u^6 + 18u^4 - 11u^2");
        let p1 = matching_polynomial(&path(1), &MatchingCache::new());
        assert_eq!(p1.display_with('u'), "u");
        let p0 = matching_polynomial(&Graph::empty(0).unwrap(), &MatchingCache::new());
        assert_eq!(p0.display_with('u'), "1");
    }

    #[test]
    fn subgraph_counts_never_exceed_supergraph() {
        let c6 = build(&FamilySpec::Cycle { n: 6 }).unwrap();
        let cache = MatchingCache::new();
        let full = matching_vector(&c6, &cache);
        for (u, v) in c6.edges() {
            let sub = matching_vector(&c6.delete_edge(u, v).unwrap(), &cache);
            for k in 0..full.len() {
                assert!(sub.get(k) <= full.get(k));
            }
        }
    }

    #[test]
    fn cache_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("mecache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("cache.txt");
        let _ = std::fs::remove_file(&file);

        let cache = MatchingCache::new();
        let u86 = build(&FamilySpec::UniMin { n: 8, d: 6 }).unwrap();
        matching_vector(&u86, &cache);
        let written = cache.append_to_file(&file).unwrap();
        assert!(written > 0);

        let reloaded = MatchingCache::new();
        let loaded = reloaded.load_file(&file).unwrap();
        assert_eq!(loaded, written);
        assert_eq!(matching_vector(&u86, &reloaded), matching_vector(&u86, &cache));
        // a second append with nothing new writes nothing
        assert_eq!(reloaded.append_to_file(&file).unwrap(), 0);

        let text = std::fs::read_to_string(&file).unwrap();
        let first = text.lines().next().unwrap();
        assert!(first.contains(':') && first.ends_with(','));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
