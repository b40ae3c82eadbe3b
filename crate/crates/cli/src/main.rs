//! `haarrep`: group inspection, HDR synthesis and verification, searches,
//! digraph automorphism groups and the reproduction suites.
//!
//! Exit codes: 0 success, 1 refuted or false, 2 usage error, 3 inconclusive
//! (a budget, cap or guard stopped the computation).

mod reproduce;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use haarrep::aut::{automorphism_group, SolverError};
use haarrep::digraph::Digraph;
use haarrep::group::{automorphisms, build_group, FiniteGroup, GroupError, Subset};
use haarrep::representations::{verify_report, RepError};
use haarrep::synthesis::{
    exhaustive_drr_search, exhaustive_hdr_search, exhaustive_hgr_search, find_small_drr, find_trr, synthesize_hdr,
    SearchMode, Strategy, SynthesisConfig, SynthesisError,
};
use serde_json::{json, Value};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "haarrep", version, about = "Haar digraphical representations of finite groups")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, element orders, |Aut(G)| and generator names.
    Group { spec: String },
    /// Produce a certified HDR connection pair.
    Synthesize {
        spec: String,
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
        /// Wall-clock budget in milliseconds.
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Report on Haar(G,S,T).
    Verify {
        spec: String,
        /// Comma-separated words, e.g. `1,a,b`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Search for HDR pairs, DRR, TRR or HGR connection sets.
    Search {
        spec: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Sweep every candidate (with Aut(G)-orbit reduction).
        #[arg(long)]
        exhaustive: bool,
        /// With --exhaustive, list every witness instead of the least one.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Automorphism group of a digraph in edge-list format.
    Aut {
        #[arg(long)]
        edges: String,
        /// Ignore the vertex colors line.
        #[arg(long)]
        ignore_colors: bool,
    },
    /// Run a reproduction suite.
    Reproduce {
        #[arg(default_value = "all")]
        case: reproduce::Case,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Hdr,
    Drr,
    Trr,
    Hgr,
}

/// A command failure, classified by exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    False(String),
    Inconclusive(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::False(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Inconclusive(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::False(m) | Failure::Inconclusive(m) => m,
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::AutCap(_) => Failure::Inconclusive(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Group(g) => g.into(),
            e if e.is_inconclusive() => Failure::Inconclusive(e.to_string()),
            RepError::Universe { .. } => Failure::Usage(e.to_string()),
            e => Failure::False(e.to_string()),
        }
    }
}

impl From<SynthesisError> for Failure {
    fn from(e: SynthesisError) -> Self {
        match e {
            SynthesisError::Group(g) => g.into(),
            SynthesisError::Rep(r) => r.into(),
            e if e.is_inconclusive() => Failure::Inconclusive(e.to_string()),
            SynthesisError::Precondition(_) => Failure::Usage(e.to_string()),
            e => Failure::False(e.to_string()),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Budget { .. } | SolverError::VertexCap { .. } => Failure::Inconclusive(e.to_string()),
            e => Failure::False(e.to_string()),
        }
    }
}

/// What a command prints, plus whether its answer was negative.
struct Output {
    json: Value,
    text: String,
    negative: bool,
}

fn deadline(budget_ms: Option<u64>) -> Option<Instant> {
    budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms))
}

fn names(g: &FiniteGroup, s: &Subset) -> Vec<String> {
    s.names(g)
}

fn cmd_group(spec: &str) -> Result<Output, Failure> {
    let g = build_group(spec)?;
    let aut_order = match automorphisms(&g) {
        Ok(a) => Some(a.len()),
        Err(GroupError::AutCap(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let hist = g.order_histogram();
    let text = format!(
        "group {spec}\norder {}\ngenerators {}\nelement orders {}\n|Aut(G)| {}",
        g.order(),
        g.gen_names().join(" "),
        hist.iter().map(|(o, c)| format!("{o}:{c}")).collect::<Vec<_>>().join(" "),
        aut_order.map_or_else(|| "not computed (cap)".to_string(), |a| a.to_string()),
    );
    let json = json!({
        "group_spec": spec,
        "order": g.order(),
        "generators": g.gen_names(),
        "element_orders": hist.iter().map(|&(o, c)| json!({"order": o, "count": c})).collect::<Vec<_>>(),
        "aut_order": aut_order,
        "abelian": g.is_abelian(),
    });
    Ok(Output { json, text, negative: false })
}

fn cmd_synthesize(spec: &str, strategy: Strategy, seed: u64, budget_ms: Option<u64>) -> Result<Output, Failure> {
    let g = build_group(spec)?;
    let config = SynthesisConfig { strategy, seed, deadline: deadline(budget_ms), ..SynthesisConfig::default() };
    let cert = synthesize_hdr(&g, &config)?;
    let report = cert.report(&g);
    let text = format!(
        "S = {}\nT = {}\nstrategy {}\n|Aut| {}\nverified {}",
        cert.s.display(&g),
        cert.t.display(&g),
        report.strategy,
        report.aut_order.as_deref().unwrap_or("not solved"),
        report.verified
    );
    Ok(Output { json: serde_json::to_value(&report).expect("serializable"), text, negative: false })
}

fn cmd_verify(spec: &str, s: &str, t: &str) -> Result<Output, Failure> {
    let g = build_group(spec)?;
    let (s, t) = (g.parse_subset(s)?, g.parse_subset(t)?);
    let r = verify_report(&g, &s, &t)?;
    let text = format!(
        "Haar({spec}, {}, {}) on {} vertices\n|Aut| {}\n|Aut : G| {}\nHDR {}",
        s.display(&g),
        t.display(&g),
        r.n_vertices,
        r.aut_order,
        r.index_over_g,
        r.is_hdr
    );
    Ok(Output { negative: !r.is_hdr, json: serde_json::to_value(&r).expect("serializable"), text })
}

fn cmd_search(
    spec: &str,
    mode: Mode,
    exhaustive: bool,
    all: bool,
    seed: u64,
    budget_ms: Option<u64>,
) -> Result<Output, Failure> {
    let g = build_group(spec)?;
    let dl = deadline(budget_ms);
    let smode = if all { SearchMode::All } else { SearchMode::First };
    if all && !exhaustive && mode != Mode::Hgr {
        return Err(Failure::Usage("--all needs --exhaustive".into()));
    }
    let config = SynthesisConfig { seed, deadline: dl, ..SynthesisConfig::default() };
    let solver = &config.solver;
    let (results, candidates, solved): (Vec<Value>, Option<u64>, Option<u64>) = match mode {
        Mode::Hdr if exhaustive => {
            let auts = automorphisms(&g)?;
            let out = exhaustive_hdr_search(solver, &g, &auts, smode, dl)?;
            let res = out.witnesses.iter().map(|(s, t)| json!({"s": names(&g, s), "t": names(&g, t)})).collect();
            (res, Some(out.candidates), Some(out.solved))
        }
        Mode::Hdr => {
            let cfg = SynthesisConfig { strategy: Strategy::Search, ..config.clone() };
            match synthesize_hdr(&g, &cfg) {
                Ok(c) => (vec![json!({"s": names(&g, &c.s), "t": names(&g, &c.t)})], None, None),
                Err(SynthesisError::NoHdr(_) | SynthesisError::NoneExists { .. }) => (vec![], None, None),
                Err(e) => return Err(e.into()),
            }
        }
        Mode::Drr if exhaustive => {
            let auts = automorphisms(&g)?;
            let out = exhaustive_drr_search(solver, &g, &auts, smode, dl)?;
            (out.witnesses.iter().map(|r| json!(names(&g, r))).collect(), Some(out.candidates), Some(out.solved))
        }
        Mode::Drr => match find_small_drr(&g, &config) {
            Ok(d) => (vec![json!(names(&g, &d.r))], None, None),
            Err(SynthesisError::NoDrr(_)) => (vec![], None, None),
            Err(e) => return Err(e.into()),
        },
        Mode::Trr => match find_trr(solver, &g) {
            Ok(t) => (vec![json!(names(&g, &t.r))], Some(t.candidates), Some(t.solved)),
            Err(SynthesisError::NoneExists { candidates, solved }) => (vec![], Some(candidates), Some(solved)),
            Err(e) => return Err(e.into()),
        },
        Mode::Hgr => {
            let auts = automorphisms(&g)?;
            let out = exhaustive_hgr_search(solver, &g, &auts, smode, dl)?;
            (out.witnesses.iter().map(|s| json!(names(&g, s))).collect(), Some(out.candidates), Some(out.solved))
        }
    };
    let mut text = format!("{} result(s)", results.len());
    for r in &results {
        text.push('\n');
        text.push_str(&r.to_string());
    }
    let json = json!({
        "group_spec": spec,
        "mode": format!("{mode:?}").to_lowercase(),
        "exhaustive": exhaustive,
        "results": results,
        "count": results.len(),
        "candidates": candidates,
        "solved": solved,
    });
    Ok(Output { json, text, negative: false })
}

fn cmd_aut(path: &str, ignore_colors: bool) -> Result<Output, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let mut d = Digraph::from_edge_list(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    if ignore_colors {
        d = d.without_colors();
    }
    let group = automorphism_group(&d)?;
    let gens: Vec<String> = group.generators().iter().map(ToString::to_string).collect();
    let order = group.order().to_string();
    let text = format!("order {order}\ngenerators {}\n{}", gens.len(), gens.join("\n"));
    let json = json!({
        "n_vertices": d.n_vertices(),
        "order": order,
        "generators": gens,
        "base": group.base(),
        "orbits": group.orbits(),
    });
    Ok(Output { json, text, negative: false })
}

fn cmd_reproduce(case: reproduce::Case, seed: u64) -> Result<Output, Failure> {
    let report = reproduce::run(case, seed);
    let mut text = String::new();
    for it in &report.items {
        let status = serde_json::to_value(it.status).expect("serializable");
        text.push_str(&format!("{:<13} {:<20} {} ({} ms)\n", status.as_str().unwrap_or(""), it.id, it.claim, it.elapsed_ms));
        if let Some(x) = &it.counterexample {
            text.push_str(&format!("{:13} counterexample {x}\n", ""));
        }
        if let Some(r) = &it.reason {
            text.push_str(&format!("{:13} reason {r}\n", ""));
        }
    }
    let s = &report.summary;
    text.push_str(&format!("{} confirmed, {} refuted, {} inconclusive", s.confirmed, s.refuted, s.inconclusive));
    Ok(Output { negative: report.any_refuted(), json: serde_json::to_value(&report).expect("serializable"), text })
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("HAARREP_THREADS") {
        let n: usize = v.parse().map_err(|_| Failure::Usage(format!("HAARREP_THREADS={v:?} is not a count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Group { spec } => cmd_group(spec),
        Command::Synthesize { spec, strategy, budget_ms } => cmd_synthesize(spec, *strategy, seed, *budget_ms),
        Command::Verify { spec, s, t } => cmd_verify(spec, s, t),
        Command::Search { spec, mode, exhaustive, all, budget_ms } => {
            cmd_search(spec, *mode, *exhaustive, *all, seed, *budget_ms)
        }
        Command::Aut { edges, ignore_colors } => cmd_aut(edges, *ignore_colors),
        Command::Reproduce { case } => cmd_reproduce(*case, seed),
    });
    match result {
        Ok(out) => {
            if cli.json {
                let mut v = out.json;
                if let Value::Object(m) = &mut v {
                    m.insert("version".into(), json!(VERSION));
                    m.insert("seed".into(), json!(seed));
                }
                emit(&serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                emit(&out.text);
            }
            if out.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            if cli.json {
                let v = json!({"version": VERSION, "seed": seed, "error": f.message(), "exit_code": f.code()});
                emit(&serde_json::to_string_pretty(&v).expect("serializable"));
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
