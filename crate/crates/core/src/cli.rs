//! Command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 success, 1 usage or internal error, 2 refuted target,
//! 3 search ended without a realization.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::catalog::{verify_entry, Catalog, Param};
use crate::error::{Error, Result};
use crate::gencyc::{charpoly_direct, charpoly_via_gencyc, max_hollow_rank, mr0_lower_bound};
use crate::graph::{build_family, graph6, longest_induced_path, FamilyKind, FamilySpec, Graph};
use crate::obstructions::{check_target, q0_bounds, KnownBounds, Verdict};
use crate::realizers::{realize_complete_bipartite, realize_path, seeded};
use crate::search::{
    brute_force_oracle, estimate_extremes, search_oml, search_spectrum, SearchConfig, SearchOutcome, SearchStatus,
};
use crate::spectra::HollowMatrix;
use crate::target::{Target, TargetSpectrum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hollow-iep", version, about = "Spectra of hollow symmetric matrices with a given graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Combinatorial parameters, bounds and catalog entries for a graph.
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also bracket q0, M0 and MM0 by search.
        #[arg(long)]
        extremes: bool,
        #[command(flatten)]
        opts: Options,
    },
    /// Find a matrix with the given spectrum or multiplicity list.
    Realize {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        opts: Options,
    },
    /// Try to prove that a target cannot be realized.
    Certify {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        opts: Options,
    },
    /// Characteristic polynomial from generalized cycles and from the matrix.
    Charpoly {
        #[command(flatten)]
        graph: GraphArgs,
        /// Edge weights in edge order; random weights from --seed if absent.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[command(flatten)]
        opts: Options,
    },
    /// Largest rank of a hollow matrix with this graph.
    MrMax {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        opts: Options,
    },
    /// Catalog entries matching a graph, or the whole catalog.
    Catalog {
        #[command(flatten)]
        graph: GraphArgs,
        /// Check the claims of this entry on its small members.
        #[arg(long)]
        verify: Option<String>,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub graph6: Option<String>,
    /// Family member such as `wheel:5` or `kmn:2,3`.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Comma-separated eigenvalues, `^k` for multiplicity: "-2^2,1,3".
    #[arg(long, allow_hyphen_values = true)]
    pub spectrum: Option<String>,
    /// Ordered multiplicity list: "2,1,2".
    #[arg(long)]
    pub oml: Option<String>,
}

#[derive(Debug, Args)]
pub struct Options {
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Weight grid for the exhaustive oracle: "-2,-1,1,2".
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Write the JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Options {
    fn config(&self) -> Result<SearchConfig> {
        let mut cfg = SearchConfig::with_seed(self.seed);
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(r) = self.restarts {
            cfg.restarts = r;
        }
        if let Some(g) = &self.grid {
            cfg.grid = parse_floats(g)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        let v = part
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::parse(offset, format!("expected a number, got `{part}`")))?;
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}

struct Input {
    graph: Graph,
    family: Option<FamilySpec>,
}

impl GraphArgs {
    fn read(&self) -> Result<Option<Input>> {
        match (&self.graph6, &self.family) {
            (Some(_), Some(_)) => Err(Error::param("give either --graph6 or --family, not both")),
            (Some(s), None) => Ok(Some(Input { graph: graph6::decode(s.trim())?, family: None })),
            (None, Some(f)) => {
                let spec: FamilySpec = f.parse()?;
                Ok(Some(Input { graph: build_family(&spec)?, family: Some(spec) }))
            }
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<Input> {
        self.read()?.ok_or_else(|| Error::param("a graph is required: use --graph6 or --family"))
    }
}

impl TargetArgs {
    fn read(&self) -> Result<Target> {
        match (&self.spectrum, &self.oml) {
            (Some(s), None) => Ok(Target::Spectrum(s.parse()?)),
            (None, Some(o)) => Ok(Target::Oml(o.parse()?)),
            _ => Err(Error::param("give exactly one of --spectrum or --oml")),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. JSON goes to `out` (or the `--out` file), messages to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok((doc, code)) => match emit(&cli.command, &doc, out) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn options(cmd: &Command) -> &Options {
    match cmd {
        Command::Analyze { opts, .. }
        | Command::Realize { opts, .. }
        | Command::Certify { opts, .. }
        | Command::Charpoly { opts, .. }
        | Command::MrMax { opts, .. }
        | Command::Catalog { opts, .. } => opts,
    }
}

fn emit(cmd: &Command, doc: &Json, out: &mut dyn Write) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(doc).map_err(std::io::Error::other)?;
    match &options(cmd).out {
        Some(path) => std::fs::write(path, text + "\n"),
        None => writeln!(out, "{text}"),
    }
}

fn to_json<T: Serialize>(x: &T) -> Result<Json> {
    serde_json::to_value(x).map_err(|e| Error::Numeric(format!("serialization failed: {e}")))
}

fn execute(cmd: &Command) -> Result<(Json, i32)> {
    let cfg = options(cmd).config()?;
    match cmd {
        Command::Analyze { graph, extremes, opts } => {
            analyze(&graph.require()?.graph, *extremes, opts.grid.is_some(), &cfg)
        }
        Command::Realize { graph, target, .. } => realize(&graph.require()?, &target.read()?, &cfg),
        Command::Certify { graph, target, .. } => certify(&graph.require()?.graph, &target.read()?),
        Command::Charpoly { graph, weights, .. } => charpoly(&graph.require()?.graph, weights.as_deref(), &cfg),
        Command::MrMax { graph, .. } => Ok((json!({ "MR0": max_hollow_rank(&graph.require()?.graph)? }), EXIT_OK)),
        Command::Catalog { graph, verify, .. } => catalog(graph.read()?, verify.as_deref(), &cfg),
    }
}

fn analyze(g: &Graph, extremes: bool, grid: bool, cfg: &SearchConfig) -> Result<(Json, i32)> {
    let catalog = Catalog::builtin();
    let hits = catalog.lookup(g)?;
    let ranges = catalog.ranges(g)?;
    let known = KnownBounds {
        q0: ranges.get(&Param::Q0).map(|r| (r.lo, r.hi)),
        mm0_upper: ranges.get(&Param::MM0).map(|r| r.hi),
        mr0_upper: ranges.get(&Param::Mr0).map(|r| r.hi),
    };
    let (q_lo, q_hi) = q0_bounds(g, &known)?;
    let (mr0_lower, _) = mr0_lower_bound(g)?;
    let mut doc = json!({
        "graph": g.graph6(),
        "order": g.order(),
        "edges": g.edge_count(),
        "connected": g.is_connected(),
        "bipartite": g.is_bipartite(),
        "longest_induced_path": longest_induced_path(g),
        "MR0": max_hollow_rank(g)?,
        "mr0_lower": mr0_lower,
        "q0": { "lo": q_lo, "hi": q_hi },
        "catalog": to_json(&hits)?,
    });
    if extremes {
        let ext = estimate_extremes(g, cfg, &catalog.known_values(g)?)?;
        doc["extremes"] = to_json(&ext)?;
    }
    if grid {
        doc["grid_lists"] = to_json(&brute_force_oracle(g, cfg)?)?;
    }
    Ok((doc, EXIT_OK))
}

fn outcome_code(o: &SearchOutcome) -> i32 {
    match o.status {
        SearchStatus::Realized => EXIT_OK,
        SearchStatus::Refuted => EXIT_REFUTED,
        SearchStatus::NotFound => EXIT_NOT_FOUND,
    }
}

fn realize(input: &Input, target: &Target, cfg: &SearchConfig) -> Result<(Json, i32)> {
    let g = &input.graph;
    if target.order() != g.order() {
        return Err(Error::param(format!("target has order {}, graph has {}", target.order(), g.order())));
    }
    let outcome = match target {
        Target::Oml(o) => search_oml(g, o, cfg)?,
        Target::Spectrum(s) => match search_spectrum_constructive(input, s, cfg)? {
            Some(o) => o,
            None => search_spectrum(g, s, cfg)?,
        },
    };
    Ok((to_json(&outcome)?, outcome_code(&outcome)))
}

/// Direct constructions for paths and complete bipartite graphs, after the
/// obstruction rules have had their say.
fn search_spectrum_constructive(input: &Input, s: &TargetSpectrum, cfg: &SearchConfig) -> Result<Option<SearchOutcome>> {
    let Some(spec) = &input.family else { return Ok(None) };
    let built = match spec.kind {
        FamilyKind::Path => realize_path(s, spec.params[0]),
        FamilyKind::CompleteBipartite => realize_complete_bipartite(spec.params[0], spec.params[1], s, cfg.seed),
        _ => return Ok(None),
    };
    match check_target(&input.graph, &Target::Spectrum(s.clone()))? {
        Verdict::Refuted(cert) => {
            return Ok(Some(SearchOutcome { status: SearchStatus::Refuted, best: None, bound_certificates: vec![*cert] }))
        }
        Verdict::Pass => {}
    }
    match built {
        Ok(r) => {
            let status = if r.residual <= cfg.tol * s.spectral_radius().max(1.0) {
                SearchStatus::Realized
            } else {
                SearchStatus::NotFound
            };
            Ok(Some(SearchOutcome { status, best: Some(r), bound_certificates: Vec::new() }))
        }
        // the construction rejected it but no certificate exists: fall back
        Err(Error::Infeasible { .. } | Error::Numeric(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn certify(g: &Graph, target: &Target) -> Result<(Json, i32)> {
    if target.order() != g.order() {
        return Err(Error::param(format!("target has order {}, graph has {}", target.order(), g.order())));
    }
    match check_target(g, target)? {
        Verdict::Refuted(cert) => Ok((to_json(&cert)?, EXIT_REFUTED)),
        Verdict::Pass => Ok((json!({ "verdict": "inconclusive" }), EXIT_OK)),
    }
}

fn charpoly(g: &Graph, weights: Option<&str>, cfg: &SearchConfig) -> Result<(Json, i32)> {
    let w = match weights {
        Some(s) => parse_floats(s)?,
        None => {
            let mut rng = seeded(cfg.seed);
            (0..g.edge_count())
                .map(|_| {
                    let x: f64 = rng.random_range(0.5..2.0);
                    if rng.random_bool(0.5) { x } else { -x }
                })
                .collect()
        }
    };
    let a = HollowMatrix::from_edge_weights(g, &w)?;
    let via = charpoly_via_gencyc(&a)?;
    let direct = charpoly_direct(&a);
    let doc = json!({
        "graph": g.graph6(),
        "weights": w,
        "generalized_cycles": via.polynomial(),
        "determinant": direct.polynomial(),
        "max_discrepancy": via.max_difference(&direct),
    });
    Ok((doc, EXIT_OK))
}

fn catalog(input: Option<Input>, verify: Option<&str>, cfg: &SearchConfig) -> Result<(Json, i32)> {
    let catalog = Catalog::builtin();
    if let Some(id) = verify {
        let entry = catalog.get(id).ok_or_else(|| Error::param(format!("no catalog entry `{id}`")))?;
        let report = verify_entry(entry, cfg)?;
        let code = if report.is_consistent() { EXIT_OK } else { EXIT_REFUTED };
        return Ok((to_json(&report)?, code));
    }
    match input {
        Some(i) => Ok((to_json(&catalog.lookup(&i.graph)?)?, EXIT_OK)),
        None => Ok((to_json(&catalog.entries())?, EXIT_OK)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["hollow-iep"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn mr_max_k4() {
        let (code, out, _) = call(&["mr-max", "--graph6", "C~"]);
        assert_eq!(code, 0);
        let v: Json = serde_json::from_str(&out).unwrap();
        assert_eq!(v, json!({ "MR0": 4 }));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["mr-max"]).0, EXIT_USAGE);
        assert_eq!(call(&["mr-max", "--graph6", "C~", "--family", "path:4"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["certify", "--family", "path:3", "--spectrum", "1,x,2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("offset 2"), "{err}");
    }

    #[test]
    fn certify_and_realize_codes() {
        let (code, out, _) = call(&["certify", "--family", "wheel:5", "--oml", "1,3,1"]);
        assert_eq!(code, EXIT_REFUTED);
        let v: Json = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "refuted");
        let (code, out, _) = call(&["certify", "--family", "wheel:5", "--oml", "2,1,2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("inconclusive"));
        let (code, out, _) = call(&["realize", "--family", "path:4", "--spectrum", "-2,-1,1,2"]);
        assert_eq!(code, EXIT_OK);
        let v: Json = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "realized");
        let (code, _, _) = call(&["realize", "--family", "path:4", "--spectrum", "-2,-1,1,3"]);
        assert_eq!(code, EXIT_REFUTED);
    }
}
