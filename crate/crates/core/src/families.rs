//! Named graph families. Diameter-d minimizers are built around a fixed
//! quadrangle or theta core:
//!
//! * `Broom` T(n,d): path on d vertices with n-d extra leaves on one end.
//! * `UniMin` U(n,d): quadrangle v'-a-b-c-v', a path of d-3 vertices hanging
//!   off b and n-d-1 leaves on v'.
//! * `BiMin` B(n,d): U(n,d) plus an edge joining one leaf of v' to b, which
//!   turns the core into theta(2,2,2) = K_{2,3} with hubs v' and b.
//! * `BiPath` B(n,s): path u_0..u_{n-2} plus a vertex adjacent to
//!   u_s, u_{s+1}, u_{s+2}; diameter n-2.
//! * diameter-2 specials: `TriMinD2` (triangle with leaves), `U42a`/`U42b`
//!   (the two unicyclic graphs of order 4, diameter 2), `Bn2a` (two triangles
//!   sharing a vertex, leaves there), `Bn2b` (K_4 minus an edge, leaves on a
//!   degree-3 vertex).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilySpec {
    Path { n: usize },
    Star { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Broom { n: usize, d: usize },
    UniMin { n: usize, d: usize },
    BiMin { n: usize, d: usize },
    BiPath { n: usize, s: usize },
    TriMinD2 { n: usize },
    U42a,
    U42b,
    Bn2a { n: usize },
    Bn2b { n: usize },
}

impl FamilySpec {
    /// Parses the CLI syntax, e.g. "U:n=8,d=6", "Bs:n=9,s=1", "P:n=6", "U42a".
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let (code, args) = match text.split_once(':') {
            Some((c, a)) => (c, Some(a)),
            None => (text, None),
        };
        let mut n: Option<usize> = None;
        let mut d: Option<usize> = None;
        let mut s: Option<usize> = None;
        if let Some(args) = args {
            for part in args.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Family(format!("expected key=value, got {part:?}")))?;
                let value: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::Family(format!("bad value in {part:?}")))?;
                match key.trim() {
                    "n" => n = Some(value),
                    "d" => d = Some(value),
                    "s" => s = Some(value),
                    other => return Err(Error::Family(format!("unknown parameter {other:?}"))),
                }
            }
        }
        let need =
            |p: Option<usize>, name: &str| p.ok_or_else(|| Error::Family(format!("{code} needs {name}")));
        let spec = match code {
            "P" => FamilySpec::Path { n: need(n, "n")? },
            "S" => FamilySpec::Star { n: need(n, "n")? },
            "C" => FamilySpec::Cycle { n: need(n, "n")? },
            "K" => FamilySpec::Complete { n: need(n, "n")? },
            "T" => FamilySpec::Broom { n: need(n, "n")?, d: need(d, "d")? },
            "U" => FamilySpec::UniMin { n: need(n, "n")?, d: need(d, "d")? },
            "B" => FamilySpec::BiMin { n: need(n, "n")?, d: need(d, "d")? },
            "Bs" => FamilySpec::BiPath { n: need(n, "n")?, s: need(s, "s")? },
            "Tri" => FamilySpec::TriMinD2 { n: need(n, "n")? },
            "U42a" => FamilySpec::U42a,
            "U42b" => FamilySpec::U42b,
            "B2a" => FamilySpec::Bn2a { n: need(n, "n")? },
            "B2b" => FamilySpec::Bn2b { n: need(n, "n")? },
            other => return Err(Error::Family(format!("unknown family code {other:?}"))),
        };
        Ok(spec)
    }

    pub fn to_string_spec(&self) -> String {
        match *self {
            FamilySpec::Path { n } => format!("P:n={n}"),
            FamilySpec::Star { n } => format!("S:n={n}"),
            FamilySpec::Cycle { n } => format!("C:n={n}"),
            FamilySpec::Complete { n } => format!("K:n={n}"),
            FamilySpec::Broom { n, d } => format!("T:n={n},d={d}"),
            FamilySpec::UniMin { n, d } => format!("U:n={n},d={d}"),
            FamilySpec::BiMin { n, d } => format!("B:n={n},d={d}"),
            FamilySpec::BiPath { n, s } => format!("Bs:n={n},s={s}"),
            FamilySpec::TriMinD2 { n } => format!("Tri:n={n}"),
            FamilySpec::U42a => "U42a".to_string(),
            FamilySpec::U42b => "U42b".to_string(),
            FamilySpec::Bn2a { n } => format!("B2a:n={n}"),
            FamilySpec::Bn2b { n } => format!("B2b:n={n}"),
        }
    }
}

fn fail(spec: &FamilySpec, constraint: &str) -> Error {
    Error::Family(format!("{} requires {constraint}", spec.to_string_spec()))
}

pub fn build(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::Path { n } => path(n),
        FamilySpec::Star { n } => {
            if n < 1 {
                return Err(fail(spec, "n >= 1"));
            }
            let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            Graph::from_edge_list(n, &edges)
        }
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(fail(spec, "n >= 3"));
            }
            let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            edges.push((n - 1, 0));
            Graph::from_edge_list(n, &edges)
        }
        FamilySpec::Complete { n } => {
            if n < 1 {
                return Err(fail(spec, "n >= 1"));
            }
            let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            Graph::from_edge_list(n, &edges)
        }
        FamilySpec::Broom { n, d } => {
            if n < 2 || d < 1 || d > n - 1 {
                return Err(fail(spec, "1 <= d <= n-1"));
            }
            broom(n, d)
        }
        FamilySpec::UniMin { n, d } => {
            if !(3 <= d && d + 2 <= n) {
                return Err(fail(spec, "3 <= d <= n-2"));
            }
            uni_min(n, d)
        }
        FamilySpec::BiMin { n, d } => {
            if !(3 <= d && d + 3 <= n) {
                return Err(fail(spec, "3 <= d <= n-3"));
            }
            bi_min(n, d)
        }
        FamilySpec::BiPath { n, s } => {
            if n < 5 || s + 2 > n / 2 {
                return Err(fail(spec, "n >= 5 and 0 <= s <= floor(n/2)-2"));
            }
            bi_path(n, s)
        }
        FamilySpec::TriMinD2 { n } => {
            if n < 5 {
                return Err(fail(spec, "n >= 5"));
            }
            let mut edges = vec![(0, 1), (1, 2), (2, 0)];
            edges.extend((3..n).map(|v| (0, v)));
            Graph::from_edge_list(n, &edges)
        }
        FamilySpec::U42a => Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]),
        FamilySpec::U42b => build(&FamilySpec::Cycle { n: 4 }),
        FamilySpec::Bn2a { n } => {
            if n < 6 {
                return Err(fail(spec, "n >= 6"));
            }
            let mut edges = vec![(0, 1), (1, 2), (2, 0), (0, 3), (0, 4), (3, 4)];
            edges.extend((5..n).map(|v| (0, v)));
            Graph::from_edge_list(n, &edges)
        }
        FamilySpec::Bn2b { n } => {
            if n < 6 {
                return Err(fail(spec, "n >= 6"));
            }
            // K_4 minus the edge 2-3, pendants at the degree-3 vertex 0
            let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
            edges.extend((4..n).map(|v| (0, v)));
            Graph::from_edge_list(n, &edges)
        }
    }
}

fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edge_list(n, &edges)
}

/// Path 0..d-1 plus n-d leaves attached to vertex d-1.
fn broom(n: usize, d: usize) -> Result<Graph> {
    let mut edges: Vec<_> = (1..d).map(|v| (v - 1, v)).collect();
    edges.extend((d..n).map(|v| (d - 1, v)));
    Graph::from_edge_list(n, &edges)
}

/// Vertices: 0 = v', 1 = a, 2 = b, 3 = c, then the path off b, then the
/// leaves of v'.
fn uni_min(n: usize, d: usize) -> Result<Graph> {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
    let mut prev = 2;
    for p in 4..4 + (d - 3) {
        edges.push((prev, p));
        prev = p;
    }
    edges.extend((d + 1..n).map(|v| (0, v)));
    Graph::from_edge_list(n, &edges)
}

/// U(n,d) with the first leaf of v' joined to b; that leaf is vertex d+1.
fn bi_min(n: usize, d: usize) -> Result<Graph> {
    let u = uni_min(n, d)?;
    u.adding_edge(d + 1, 2)
}

/// Path 0..n-2 plus vertex n-1 adjacent to s, s+1, s+2.
fn bi_path(n: usize, s: usize) -> Result<Graph> {
    let mut edges: Vec<_> = (1..n - 1).map(|v| (v - 1, v)).collect();
    edges.extend([(n - 1, s), (n - 1, s + 1), (n - 1, s + 2)]);
    Graph::from_edge_list(n, &edges)
}

/// One row of the machine-readable catalog of supported families.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FamilyTemplate {
    pub code: &'static str,
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub constraint: &'static str,
}

pub fn list_supported() -> Vec<FamilyTemplate> {
    vec![
        FamilyTemplate { code: "P", name: "path", params: &["n"], constraint: "n >= 0" },
        FamilyTemplate { code: "S", name: "star", params: &["n"], constraint: "n >= 1" },
        FamilyTemplate { code: "C", name: "cycle", params: &["n"], constraint: "n >= 3" },
        FamilyTemplate { code: "K", name: "complete", params: &["n"], constraint: "n >= 1" },
        FamilyTemplate {
            code: "T",
            name: "broom: path of d vertices, n-d extra leaves at one end",
            params: &["n", "d"],
            constraint: "1 <= d <= n-1",
        },
        FamilyTemplate {
            code: "U",
            name: "diameter-d unicyclic minimizer: quadrangle with path and leaves",
            params: &["n", "d"],
            constraint: "3 <= d <= n-2",
        },
        FamilyTemplate {
            code: "B",
            name: "diameter-d bicyclic minimizer: K_{2,3} core with path and leaves",
            params: &["n", "d"],
            constraint: "3 <= d <= n-3",
        },
        FamilyTemplate {
            code: "Bs",
            name: "path on n-1 vertices plus a vertex over positions s..s+2",
            params: &["n", "s"],
            constraint: "n >= 5, 0 <= s <= floor(n/2)-2",
        },
        FamilyTemplate {
            code: "Tri",
            name: "triangle with n-3 leaves at one vertex",
            params: &["n"],
            constraint: "n >= 5",
        },
        FamilyTemplate { code: "U42a", name: "triangle with one leaf", params: &[], constraint: "" },
        FamilyTemplate { code: "U42b", name: "quadrangle", params: &[], constraint: "" },
        FamilyTemplate {
            code: "B2a",
            name: "two triangles sharing a vertex, n-5 leaves there",
            params: &["n"],
            constraint: "n >= 6",
        },
        FamilyTemplate {
            code: "B2b",
            name: "K_4 minus an edge, n-4 leaves at a degree-3 vertex",
            params: &["n"],
            constraint: "n >= 6",
        },
    ]
}
