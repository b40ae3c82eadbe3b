//! The `reproduce` suites: each item re-derives one published claim and
//! reports it as confirmed, refuted (with a counterexample) or inconclusive
//! (with the limit that stopped it).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use haarrep::aut::Solver;
use haarrep::group::{automorphisms, build_group, FiniteGroup, Subset};
use haarrep::representations::{is_hgr_with, is_trr};
use haarrep::synthesis::{
    exhaustive_drr_search, exhaustive_hdr_search, exhaustive_hgr_search, find_trr, SearchMode, SynthesisError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    All,
    Examples,
    Exceptions,
    Drr,
    Trr,
    Hgr,
}

impl FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => Case::All,
            "examples" => Case::Examples,
            "exceptions" => Case::Exceptions,
            "drr" => Case::Drr,
            "trr" => Case::Trr,
            "hgr" => Case::Hgr,
            other => return Err(format!("unknown suite {other:?}; expected all, examples, exceptions, drr, trr or hgr")),
        })
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::All => "all",
            Case::Examples => "examples",
            Case::Exceptions => "exceptions",
            Case::Drr => "drr",
            Case::Trr => "trr",
            Case::Hgr => "hgr",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Confirmed,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub id: String,
    pub claim: String,
    pub anchor: String,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub confirmed: usize,
    pub refuted: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproductionReport {
    pub suite: String,
    pub seed: u64,
    pub items: Vec<Item>,
    pub summary: Summary,
}

impl ReproductionReport {
    pub fn any_refuted(&self) -> bool {
        self.summary.refuted > 0
    }
}

/// What an item's check found.
enum Verdict {
    Confirmed(BTreeMap<String, u64>),
    Refuted(BTreeMap<String, u64>, Value),
    Inconclusive(String),
}

type Check = Box<dyn Fn(u64) -> Verdict + Send + Sync>;

struct Spec {
    id: &'static str,
    claim: String,
    anchor: &'static str,
    check: Check,
}

fn counts<const N: usize>(pairs: [(&str, u64); N]) -> BTreeMap<String, u64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn group(spec: &str) -> Result<FiniteGroup, Verdict> {
    build_group(spec).map_err(|e| Verdict::Inconclusive(format!("group {spec}: {e}")))
}

fn from_synthesis(e: SynthesisError) -> Verdict {
    Verdict::Inconclusive(e.to_string())
}

macro_rules! tryv {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(v) => return v,
        }
    };
}

fn names(g: &FiniteGroup, s: &Subset) -> Value {
    json!(s.names(g))
}

fn example_item(id: &'static str, spec: &'static str, s: &'static str, t: &'static str) -> Spec {
    Spec {
        id,
        claim: format!("Haar({spec}, {{{s}}}, {{{t}}}) is an HDR"),
        anchor: "no-DRR groups: explicit HDR sets",
        check: Box::new(move |_| {
            let g = tryv!(group(spec));
            let parse = |w: &str| g.parse_subset(w).map_err(|e| Verdict::Inconclusive(e.to_string()));
            let (ss, tt) = (tryv!(parse(s)), tryv!(parse(t)));
            let order = match haarrep::representations::haar_aut_order(&g, &ss, &tt) {
                Ok(o) => o,
                Err(e) => return Verdict::Inconclusive(e.to_string()),
            };
            let c = counts([("group_order", g.order() as u64), ("aut_order", order.try_into().unwrap_or(u64::MAX))]);
            if c["aut_order"] == g.order() as u64 {
                Verdict::Confirmed(c)
            } else {
                Verdict::Refuted(c, json!({ "s": s, "t": t }))
            }
        }),
    }
}

fn exception_item(id: &'static str, spec: &'static str) -> Spec {
    Spec {
        id,
        claim: format!("{spec} admits no HDR"),
        anchor: "main theorem: exception list",
        check: Box::new(move |_| {
            let g = tryv!(group(spec));
            let auts = tryv!(automorphisms(&g).map_err(|e| Verdict::Inconclusive(e.to_string())));
            let out = tryv!(exhaustive_hdr_search(&Solver::default(), &g, &auts, SearchMode::All, None).map_err(from_synthesis));
            let c = counts([
                ("pairs", out.candidates),
                ("solved", out.solved),
                ("hdr_pairs", out.witnesses.len() as u64),
            ]);
            match out.witnesses.first() {
                None => Verdict::Confirmed(c),
                Some((s, t)) => Verdict::Refuted(c, json!({ "s": names(&g, s), "t": names(&g, t) })),
            }
        }),
    }
}

fn drr_item(id: &'static str, spec: &'static str) -> Spec {
    Spec {
        id,
        claim: format!("{spec} admits no DRR"),
        anchor: "DRR classification: five exceptional groups",
        check: Box::new(move |_| {
            let g = tryv!(group(spec));
            let auts = tryv!(automorphisms(&g).map_err(|e| Verdict::Inconclusive(e.to_string())));
            let out = tryv!(exhaustive_drr_search(&Solver::default(), &g, &auts, SearchMode::First, None).map_err(from_synthesis));
            let c = counts([("subsets", out.candidates), ("solved", out.solved)]);
            match out.witnesses.first() {
                None => Verdict::Confirmed(c),
                Some(r) => Verdict::Refuted(c, json!({ "r": names(&g, r) })),
            }
        }),
    }
}

fn trr_item(id: &'static str, spec: &'static str, expect: bool) -> Spec {
    Spec {
        id,
        claim: if expect { format!("{spec} admits a TRR") } else { format!("{spec} admits no TRR") },
        anchor: "TRR classification for odd order",
        check: Box::new(move |_| {
            let g = tryv!(group(spec));
            let solver = Solver::default();
            match find_trr(&solver, &g) {
                Ok(found) => {
                    let c = counts([("candidates", found.candidates), ("solved", found.solved)]);
                    let verified = is_trr(&g, &found.r).unwrap_or(false);
                    match (expect, verified) {
                        (true, true) => Verdict::Confirmed(c),
                        (true, false) => Verdict::Inconclusive("search returned a set that does not re-verify".into()),
                        (false, _) => Verdict::Refuted(c, json!({ "r": names(&g, &found.r) })),
                    }
                }
                Err(SynthesisError::NoneExists { candidates, solved }) => {
                    let c = counts([("candidates", candidates), ("solved", solved)]);
                    if expect {
                        Verdict::Refuted(c, json!({ "exhausted": candidates }))
                    } else {
                        Verdict::Confirmed(c)
                    }
                }
                Err(e) => from_synthesis(e),
            }
        }),
    }
}

fn hgr_sweep_item(id: &'static str, spec: &'static str, expect: bool) -> Spec {
    Spec {
        id,
        claim: if expect { format!("{spec} admits an HGR") } else { format!("{spec} admits no HGR") },
        anchor: "dihedral HGR classification",
        check: Box::new(move |_| {
            let g = tryv!(group(spec));
            let auts = tryv!(automorphisms(&g).map_err(|e| Verdict::Inconclusive(e.to_string())));
            let out = tryv!(exhaustive_hgr_search(&Solver::default(), &g, &auts, SearchMode::First, None).map_err(from_synthesis));
            let c = counts([("subsets", out.candidates), ("solved", out.solved), ("found", out.witnesses.len() as u64)]);
            match (expect, out.witnesses.first()) {
                (true, Some(_)) | (false, None) => Verdict::Confirmed(c),
                (false, Some(s)) => Verdict::Refuted(c, json!({ "s": names(&g, s) })),
                (true, None) => Verdict::Refuted(c, json!({ "exhausted": out.candidates })),
            }
        }),
    }
}

const ABELIAN_CATALOG: [&str; 8] = [
    "cyclic:4",
    "cyclic:5",
    "cyclic:7",
    "cyclic:8",
    "cyclic:12",
    "product:cyclic:2,cyclic:4",
    "product:cyclic:3,cyclic:3",
    "ea2:3",
];

fn abelian_hgr_item() -> Spec {
    Spec {
        id: "hgr-abelian",
        claim: "no abelian group gives an HGR (100 random connection sets)".into(),
        anchor: "abelian groups admit no HGR",
        check: Box::new(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let solver = Solver::default();
            let groups: Vec<FiniteGroup> = ABELIAN_CATALOG.iter().map(|s| build_group(s).expect("catalog")).collect();
            for trial in 0..100u64 {
                let g = &groups[rng.gen_range(0..groups.len())];
                let s = Subset::from_elems(g.order(), g.elements().filter(|_| rng.gen_bool(0.5)));
                match is_hgr_with(&solver, g, &s) {
                    Ok(false) => {}
                    Ok(true) => {
                        return Verdict::Refuted(
                            counts([("trials", trial + 1)]),
                            json!({ "group": g.spec(), "s": names(g, &s) }),
                        )
                    }
                    Err(e) => return Verdict::Inconclusive(e.to_string()),
                }
            }
            Verdict::Confirmed(counts([("trials", 100)]))
        }),
    }
}

fn specs(case: Case) -> Vec<Spec> {
    let examples = || {
        vec![
            example_item("example-q8", "q:8", "1,a,b", "a^2,b^3,a*b"),
            example_item("example-z3xz3", "product:cyclic:3,cyclic:3", "1,a,b", "a,b^2,a*b"),
            example_item("example-z2^4", "ea2:4", "1,a,b,c,d,a*b", "1,a,c,b*d,a*b*c,b*c*d"),
            example_item(
                "example-z2^5",
                "ea2:5",
                "1,a1,a2,a3,a4,a1*a2,a5",
                "1,a1,a3,a2*a4,a1*a2*a3,a2*a3*a4,a5",
            ),
        ]
    };
    let exceptions = || {
        vec![
            exception_item("exception-z1", "cyclic:1"),
            exception_item("exception-z2", "cyclic:2"),
            exception_item("exception-z3", "cyclic:3"),
            exception_item("exception-z2^2", "ea2:2"),
            exception_item("exception-z2^3", "ea2:3"),
        ]
    };
    let drr = || {
        vec![
            drr_item("no-drr-z2^2", "ea2:2"),
            drr_item("no-drr-z2^3", "ea2:3"),
            drr_item("no-drr-q8", "q:8"),
            drr_item("no-drr-z3xz3", "product:cyclic:3,cyclic:3"),
            drr_item("no-drr-z2^4", "ea2:4"),
        ]
    };
    let trr = || {
        vec![
            trr_item("no-trr-z3xz3", "product:cyclic:3,cyclic:3", false),
            trr_item("trr-z3", "cyclic:3", true),
            trr_item("trr-z5", "cyclic:5", true),
            trr_item("trr-z7", "cyclic:7", true),
            trr_item("trr-z9", "cyclic:9", true),
            trr_item("trr-z15", "cyclic:15", true),
            trr_item("trr-z7:z3", "perm:gens=[(1,2,3,4,5,6,7);(2,3,5)(4,7,6)]", true),
            trr_item("trr-z5xz5", "product:cyclic:5,cyclic:5", true),
            trr_item("trr-z3xz9", "product:cyclic:3,cyclic:9", true),
            trr_item("trr-z3^3", "product:cyclic:3,cyclic:3,cyclic:3", true),
        ]
    };
    let hgr = || {
        vec![
            hgr_sweep_item("no-hgr-d14", "dihedral:14", false),
            hgr_sweep_item("hgr-d16", "dihedral:16", true),
            abelian_hgr_item(),
        ]
    };
    match case {
        Case::Examples => examples(),
        Case::Exceptions => exceptions(),
        Case::Drr => drr(),
        Case::Trr => trr(),
        Case::Hgr => hgr(),
        Case::All => [examples(), exceptions(), drr(), trr(), hgr()].into_iter().flatten().collect(),
    }
}

/// Runs a suite; items run in parallel but are reported in a fixed order.
pub fn run(case: Case, seed: u64) -> ReproductionReport {
    let items: Vec<Item> = specs(case)
        .into_par_iter()
        .map(|spec| {
            let start = Instant::now();
            let verdict = (spec.check)(seed);
            let elapsed_ms = start.elapsed().as_millis() as u64;
            let (status, counts, counterexample, reason) = match verdict {
                Verdict::Confirmed(c) => (Status::Confirmed, c, None, None),
                Verdict::Refuted(c, x) => (Status::Refuted, c, Some(x), None),
                Verdict::Inconclusive(r) => (Status::Inconclusive, BTreeMap::new(), None, Some(r)),
            };
            Item {
                id: spec.id.to_string(),
                claim: spec.claim,
                anchor: spec.anchor.to_string(),
                status,
                counts,
                counterexample,
                reason,
                elapsed_ms,
            }
        })
        .collect();
    let mut summary = Summary::default();
    for it in &items {
        match it.status {
            Status::Confirmed => summary.confirmed += 1,
            Status::Refuted => summary.refuted += 1,
            Status::Inconclusive => summary.inconclusive += 1,
        }
    }
    ReproductionReport { suite: case.to_string(), seed, items, summary }
}
