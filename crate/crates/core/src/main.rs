//! Command-line front end: matching polynomials and energies of single
//! graphs, class enumeration, quasi-order comparison, and the batch
//! verification harness. Exit status: 0 all checks pass, 1 any check fails,
//! 2 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use matchenergy_core::canon::canonical_key;
use matchenergy_core::enumerate::{enumerate_class, enumerate_connected, EnumQuery};
use matchenergy_core::error::{Error, Result};
use matchenergy_core::families::{build, FamilySpec};
use matchenergy_core::graph::{Graph, GraphClass};
use matchenergy_core::matching::{matching_polynomial, matching_vector, MatchingCache};
use matchenergy_core::order::{compare_coeff, compare_matching};
use matchenergy_core::spectral::{char_poly, energy_report, MeMethod};
use matchenergy_core::verify::{
    all_pass, emit_report_csv, emit_report_json, verify_identity, verify_theorem, ClaimId,
    IdentityId, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "matchenergy",
    version,
    about = "Matching polynomials, matching energy, and extremal-class verification for small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A single input graph: either a text file or a named family member.
#[derive(Args)]
struct GraphInput {
    /// Graph file (first line the order, then one "u v" edge per line).
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Family spec, e.g. "U:n=8,d=6", "Bs:n=9,s=1", "P:n=6", "U42a".
    #[arg(long, value_name = "SPEC")]
    family: Option<String>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        load_graph(&self.graph, &self.family)
    }
}

#[derive(Args)]
struct CacheOpt {
    /// Matching-count cache file (also via MATCHENERGY_CACHE); optional.
    #[arg(long, value_name = "FILE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct OutOpt {
    /// Write output to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the matching polynomial and the matching-count vector.
    Poly {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        cache: CacheOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Print the characteristic polynomial of the adjacency matrix.
    Charpoly {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Print eigenvalues, graph energy, matching energy and their difference.
    Energy {
        #[command(flatten)]
        input: GraphInput,
        /// Matching-energy method: roots, quad, or both.
        #[arg(long, default_value = "roots")]
        method: String,
        /// Quadrature tolerance (must be positive).
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        cache: CacheOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Compare two graphs in the matching-count quasi-order.
    Compare {
        #[command(flatten)]
        input: GraphInput,
        /// Second graph file.
        #[arg(long, value_name = "FILE")]
        graph2: Option<PathBuf>,
        /// Second family spec.
        #[arg(long, value_name = "SPEC")]
        family2: Option<String>,
        #[command(flatten)]
        cache: CacheOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Dump an isomorphism-free class as line-delimited JSON.
    Enum {
        /// Class: tree, unicyclic, bicyclic, or connected.
        #[arg(long)]
        class: String,
        /// Order (number of vertices).
        #[arg(long)]
        n: usize,
        /// Keep only graphs of this diameter.
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Build a named family member and print it in the graph text format.
    Family {
        /// Family spec, e.g. "U:n=8,d=6".
        #[arg(long, value_name = "SPEC")]
        family: String,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Run the claim-verification harness.
    Verify {
        /// Claim id (e.g. thm-U, lem-paths) or "all".
        #[arg(long, default_value = "all")]
        claim: String,
        /// Restrict to an inclusive order range, e.g. "8..10" or "9".
        #[arg(long)]
        n: Option<String>,
        /// Restrict to an inclusive diameter (or s) range.
        #[arg(long)]
        d: Option<String>,
        /// Worker threads for the harness.
        #[arg(long)]
        jobs: Option<usize>,
        /// Report format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        #[command(flatten)]
        cache: CacheOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Check the exact matching-count identities that pin the family shapes.
    Identities {
        /// Identity id (e.g. U-split, Bs-split) or "all".
        #[arg(long, default_value = "all")]
        identity: String,
        /// Restrict to an inclusive order range, e.g. "8..10" or "9".
        #[arg(long)]
        n: Option<String>,
        /// Restrict to an inclusive diameter (or s) range.
        #[arg(long)]
        d: Option<String>,
        /// Worker threads for the harness.
        #[arg(long)]
        jobs: Option<usize>,
        /// Report format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        #[command(flatten)]
        cache: CacheOpt,
        #[command(flatten)]
        out: OutOpt,
    },
}

fn load_graph(file: &Option<PathBuf>, family: &Option<String>) -> Result<Graph> {
    match (file, family) {
        (Some(p), None) => Graph::from_text(&std::fs::read_to_string(p)?),
        (None, Some(s)) => build(&FamilySpec::parse(s)?),
        _ => Err(Error::Parse(
            "provide exactly one of --graph FILE / --family SPEC".into(),
        )),
    }
}

/// "8..10" -> (8, 10); "9" -> (9, 9). Both bounds inclusive.
fn parse_range(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("bad range {text:?}; expected N or LO..HI"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        Ok((lo, hi))
    } else {
        let n = text.trim().parse().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn parse_opt_range(text: &Option<String>) -> Result<Option<(usize, usize)>> {
    text.as_deref().map(parse_range).transpose()
}

fn open_cache(opt: &CacheOpt) -> Result<(MatchingCache, Option<PathBuf>)> {
    let path = opt
        .cache
        .clone()
        .or_else(|| std::env::var_os("MATCHENERGY_CACHE").map(PathBuf::from));
    let cache = MatchingCache::new();
    if let Some(p) = &path {
        if p.exists() {
            cache.load_file(p)?;
        }
    }
    Ok((cache, path))
}

fn save_cache(cache: &MatchingCache, path: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = path {
        cache.append_to_file(p)?;
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_class(text: &str) -> Result<GraphClass> {
    match text {
        "tree" => Ok(GraphClass::Tree),
        "unicyclic" => Ok(GraphClass::Unicyclic),
        "bicyclic" => Ok(GraphClass::Bicyclic),
        other => Err(Error::Parse(format!(
            "unknown class {other:?}; expected tree, unicyclic, bicyclic, or connected"
        ))),
    }
}

fn graph_json_line(g: &Graph) -> String {
    json!({
        "n": g.n(),
        "edges": g.edges(),
        "key": canonical_key(g).hex(),
    })
    .to_string()
}

fn run_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => work(),
        Some(0) => Err(Error::Parse("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?
            .install(work),
    }
}

fn format_reports(reports: &[VerificationReport], format: &str) -> Result<String> {
    match format {
        "json" => Ok(emit_report_json(reports) + "\n"),
        "csv" => Ok(emit_report_csv(reports)),
        other => Err(Error::Parse(format!("unknown format {other:?}; expected json or csv"))),
    }
}

fn cmd_verify(
    claim: &str,
    n: Option<(usize, usize)>,
    d: Option<(usize, usize)>,
    jobs: Option<usize>,
    format: &str,
    cache_opt: &CacheOpt,
    out: &Option<PathBuf>,
) -> Result<u8> {
    let claims: Vec<ClaimId> = if claim == "all" {
        if n.is_some() || d.is_some() {
            return Err(Error::Parse("--n/--d filters need a single --claim".into()));
        }
        ClaimId::all().to_vec()
    } else {
        vec![claim.parse()?]
    };
    let (cache, cache_path) = open_cache(cache_opt)?;
    let mut reports = run_pool(jobs, || {
        let mut all = Vec::new();
        for c in &claims {
            all.extend(verify_theorem(*c, n, d, &cache)?);
        }
        Ok(all)
    })?;
    reports.sort_by(|a, b| (&a.claim, a.n, a.d).cmp(&(&b.claim, b.n, b.d)));
    emit(out, &format_reports(&reports, format)?)?;
    save_cache(&cache, &cache_path)?;
    Ok(if all_pass(&reports) { 0 } else { 1 })
}

fn cmd_identities(
    identity: &str,
    n: Option<(usize, usize)>,
    d: Option<(usize, usize)>,
    jobs: Option<usize>,
    format: &str,
    cache_opt: &CacheOpt,
    out: &Option<PathBuf>,
) -> Result<u8> {
    let ids: Vec<IdentityId> = if identity == "all" {
        if n.is_some() || d.is_some() {
            return Err(Error::Parse("--n/--d filters need a single --identity".into()));
        }
        IdentityId::all().to_vec()
    } else {
        vec![identity.parse()?]
    };
    let (cache, cache_path) = open_cache(cache_opt)?;
    let mut reports = run_pool(jobs, || {
        let mut all = Vec::new();
        for id in &ids {
            all.extend(verify_identity(*id, n, d, &cache)?);
        }
        Ok(all)
    })?;
    reports.sort_by(|a, b| (&a.claim, a.n, a.d).cmp(&(&b.claim, b.n, b.d)));
    emit(out, &format_reports(&reports, format)?)?;
    save_cache(&cache, &cache_path)?;
    Ok(if all_pass(&reports) { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Poly { input, cache, out } => {
            let g = input.load()?;
            let (c, path) = open_cache(cache)?;
            let poly = matching_polynomial(&g, &c);
            let vector = matching_vector(&g, &c);
            emit(&out.out, &format!("{}\n{}\n", poly.display_with('u'), vector))?;
            save_cache(&c, &path)?;
            Ok(0)
        }
        Command::Charpoly { input, out } => {
            let g = input.load()?;
            let p = char_poly(&g).to_polynomial();
            emit(&out.out, &format!("{}\n", p.display_with('x')))?;
            Ok(0)
        }
        Command::Energy { input, method, tol, cache, out } => {
            let g = input.load()?;
            let method: MeMethod = method.parse()?;
            if !(*tol > 0.0) {
                return Err(Error::Parse("--tol must be positive".into()));
            }
            let (c, path) = open_cache(cache)?;
            let report = energy_report(&g, method, *tol, &c)?;
            emit(&out.out, &(report.to_json() + "\n"))?;
            save_cache(&c, &path)?;
            Ok(0)
        }
        Command::Compare { input, graph2, family2, cache, out } => {
            let left = input.load()?;
            let right = load_graph(graph2, family2)?;
            let (c, path) = open_cache(cache)?;
            let matching = compare_matching(&left, &right, &c);
            let coefficient = compare_coeff(&left, &right).ok();
            let body = serde_json::to_string_pretty(&json!({
                "matching": matching,
                "coefficient": coefficient,
            }))
            .expect("comparison serializes");
            emit(&out.out, &(body + "\n"))?;
            save_cache(&c, &path)?;
            Ok(0)
        }
        Command::Enum { class, n, d, out } => {
            let graphs = if class == "connected" {
                let gs = enumerate_connected(*n)?;
                match d {
                    None => gs,
                    Some(dd) => gs
                        .into_iter()
                        .filter(|g| g.diameter().map(|x| x == *dd).unwrap_or(false))
                        .collect(),
                }
            } else {
                enumerate_class(&EnumQuery { kind: parse_class(class)?, n: *n, diameter: *d })?
            };
            let mut body = String::new();
            for g in &graphs {
                body.push_str(&graph_json_line(g));
                body.push('\n');
            }
            emit(&out.out, &body)?;
            Ok(0)
        }
        Command::Family { family, out } => {
            let spec = FamilySpec::parse(family)?;
            let g = build(&spec)?;
            let body = format!("# {} key {}\n{}", spec.to_string_spec(), canonical_key(&g).hex(), g.to_text());
            emit(&out.out, &body)?;
            Ok(0)
        }
        Command::Verify { claim, n, d, jobs, format, cache, out } => cmd_verify(
            claim,
            parse_opt_range(n)?,
            parse_opt_range(d)?,
            *jobs,
            format,
            cache,
            &out.out,
        ),
        Command::Identities { identity, n, d, jobs, format, cache, out } => cmd_identities(
            identity,
            parse_opt_range(n)?,
            parse_opt_range(d)?,
            *jobs,
            format,
            cache,
            &out.out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
