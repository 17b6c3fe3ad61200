//! Exhaustive generation of graphs up to isomorphism.
//!
//! Trees are grown by leaf attachment (every tree on k+1 vertices arises from
//! a tree on k vertices by adding one leaf), unicyclic graphs by adding one
//! edge to a tree (deleting a cycle edge of a unicyclic graph leaves a
//! spanning tree), and bicyclic graphs by adding one edge to a unicyclic
//! graph. Duplicates are removed through canonical keys, and results are the
//! canonical representatives in ascending key order, so the output is
//! deterministic no matter how the work is scheduled.

use dashmap::DashMap;
use rayon::prelude::*;

use crate::canon::{canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphClass};

/// Largest order for class enumeration (trees / unicyclic / bicyclic).
pub const MAX_CLASS_ORDER: usize = 12;
/// Largest order for enumeration of all connected graphs.
pub const MAX_EXHAUSTIVE_ORDER: usize = 7;

#[derive(Clone, Debug)]
pub struct EnumQuery {
    pub kind: GraphClass,
    pub n: usize,
    /// Keep only graphs of exactly this diameter.
    pub diameter: Option<usize>,
}

/// All pairwise nonisomorphic connected graphs of the given class and order,
/// as canonical representatives in ascending key order.
pub fn enumerate_class(q: &EnumQuery) -> Result<Vec<Graph>> {
    if q.n == 0 || q.n > MAX_CLASS_ORDER {
        return Err(Error::EnumLimit(format!(
            "class enumeration supports 1..={MAX_CLASS_ORDER} vertices, not {}",
            q.n
        )));
    }
    let base = match q.kind {
        GraphClass::Tree => trees(q.n),
        GraphClass::Unicyclic => augment(&trees(q.n)),
        GraphClass::Bicyclic => augment(&augment(&trees(q.n))),
        GraphClass::Other => {
            return Err(Error::EnumLimit(
                "only tree, unicyclic and bicyclic classes can be enumerated".into(),
            ))
        }
    };
    match q.diameter {
        None => Ok(base),
        Some(d) => Ok(base
            .into_iter()
            .filter(|g| g.diameter().expect("enumerated graphs are connected") == d)
            .collect()),
    }
}

pub fn count_class(kind: GraphClass, n: usize) -> Result<usize> {
    Ok(enumerate_class(&EnumQuery { kind, n, diameter: None })?.len())
}

/// Every connected graph on up to 7 vertices, by scanning all edge subsets.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::EnumLimit(format!(
            "exhaustive enumeration supports 1..={MAX_EXHAUSTIVE_ORDER} vertices, not {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let keys: DashMap<CanonicalKey, ()> = DashMap::new();
    (0u32..1 << pairs.len()).into_par_iter().for_each(|subset| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| subset >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edge_list(n, &edges).expect("pairs are simple edges");
        if g.is_connected() {
            keys.insert(canonical_key(&g), ());
        }
    });
    Ok(sorted_representatives(keys))
}

fn trees(n: usize) -> Vec<Graph> {
    let mut gen = vec![Graph::empty(1).expect("one vertex fits")];
    for _ in 2..=n {
        let keys: DashMap<CanonicalKey, ()> = DashMap::new();
        gen.par_iter().for_each(|t| {
            let edges = t.edges();
            for v in 0..t.n() {
                let mut grown = edges.clone();
                grown.push((v, t.n()));
                let g = Graph::from_edge_list(t.n() + 1, &grown).expect("leaf attachment is simple");
                keys.insert(canonical_key(&g), ());
            }
        });
        gen = sorted_representatives(keys);
    }
    gen
}

/// All nonisomorphic results of adding one edge to any graph of the base set.
fn augment(base: &[Graph]) -> Vec<Graph> {
    let keys: DashMap<CanonicalKey, ()> = DashMap::new();
    base.par_iter().for_each(|g| {
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if !g.has_edge(u, v) {
                    let h = g.adding_edge(u, v).expect("non-edge addition");
                    keys.insert(canonical_key(&h), ());
                }
            }
        }
    });
    sorted_representatives(keys)
}

fn sorted_representatives(keys: DashMap<CanonicalKey, ()>) -> Vec<Graph> {
    let mut ks: Vec<CanonicalKey> = keys.into_iter().map(|(k, ())| k).collect();
    ks.sort();
    ks.iter()
        .map(|k| k.to_graph().expect("canonical keys decode"))
        .collect()
}
