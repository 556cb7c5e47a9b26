//! Command-line front end.
//!
//! Every verb reads its maps as JSON (inline, from a file, or `-` for
//! standard input) and writes one pretty-printed JSON report. Object keys are
//! sorted and sets are emitted in increasing order, so identical invocations
//! produce identical bytes.
//!
//! Exit codes: 0 on success, 1 when a self-check inside a report fails,
//! 2 when an operation's precondition is violated, 3 when arguments or input
//! cannot be parsed or read.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::analysis::{self, classify, complements, fiber_decomposition, profile};
use crate::constructions::{
    class_inverse, fibers_match, reduce_to_injection, reduce_to_surjection, repair_to_bijection,
    synthesize_lambda_rho, synthesize_rho_exact,
};
use crate::error::MapError;
use crate::finiteness::FinitenessResult;
use crate::maps::SelfMap;
use crate::oracle::{self, FiniteSelfMap};
use crate::quotient::{class_of, noncentrality_demo, splitting};
use crate::sample::{random_near_bijection, SampleSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cofinite",
    version,
    about = "Index calculus for near-bijections of ℕ"
)]
pub struct Cli {
    /// Scan bound for window cross-checks, as a multiple of the stability window.
    #[arg(long, global = true, default_value_t = 4)]
    pub window_multiplier: u64,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReduceTarget {
    Injection,
    Surjection,
}

/// Map arguments accept inline JSON, a file path, or `-` for standard input.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a map at the given points.
    Eval {
        map: String,
        #[arg(required = true)]
        points: Vec<u64>,
    },
    /// Complements, index and injectivity flags.
    Classify { map: String },
    /// The integer index of a near-bijection.
    Index { map: String },
    /// `outer ∘ inner`.
    Compose { outer: String, inner: String },
    /// An almost inverse of a near-bijection.
    Invert { map: String },
    /// Repair an index-zero map into a bijection.
    Repair { map: String },
    /// Reduce to an injection (index ≤ 0) or a surjection (index ≥ 0).
    Reduce {
        #[arg(long, value_enum)]
        to: ReduceTarget,
        map: String,
    },
    /// Permutations λ, ρ with λ∘f ≡ g ≡ f∘ρ for maps of equal index.
    Synth { f: String, g: String },
    /// Fiber decomposition; with a second map, the exact right factor when fibers match.
    Fibers { f: String, g: Option<String> },
    /// The set of points where two maps differ.
    Disagreement { f: String, g: String },
    /// The quotient-group class of a near-bijection.
    Class { map: String },
    /// The index of a class.
    Ind { map: String },
    /// The splitting homomorphism ℤ → classes.
    Split {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// The pair swap and the successor do not commute up to finite disagreement.
    DemoNoncentral,
    /// Finite-carrier checks; with a finite map, its profile and optional edit replay.
    Oracle {
        /// A finite map `{"n":…,"table":[…]}` to profile instead of running the sweep.
        #[arg(long)]
        map: Option<String>,
        /// Replay the single-point edit `POINT:VALUE` on `--map`.
        #[arg(long, requires = "map", value_parser = parse_edit)]
        edit: Option<(u64, u64)>,
        #[arg(long, default_value_t = 4)]
        exhaustive_max: u64,
        #[arg(long, default_value_t = 100_000)]
        random: u64,
        #[arg(long, default_value_t = 12)]
        random_max: u64,
        /// Representable maps whose exact sets are cross-checked against window scans.
        #[arg(long, default_value_t = 500)]
        representable: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_edit(s: &str) -> Result<(u64, u64), String> {
    let (p, v) = s.split_once(':').ok_or("expected POINT:VALUE")?;
    Ok((
        p.trim().parse().map_err(|e| format!("{e}"))?,
        v.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Precondition(MapError),
}

impl From<MapError> for Failure {
    fn from(e: MapError) -> Self {
        Failure::Precondition(e)
    }
}

/// A report plus whether its internal self-checks all held.
struct Report {
    body: Value,
    ok: bool,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report { body, ok: true }
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn text(&mut self, arg: &str) -> Result<String, Failure> {
        if arg == "-" {
            if self.stdin_used {
                return Err(Failure::Parse(
                    "standard input can be read only once".into(),
                ));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Parse(format!("reading standard input: {e}")))?;
            Ok(s)
        } else if arg.trim_start().starts_with('{') {
            Ok(arg.to_owned())
        } else {
            std::fs::read_to_string(arg).map_err(|e| Failure::Parse(format!("reading {arg}: {e}")))
        }
    }

    fn parse<T: DeserializeOwned>(&mut self, arg: &str) -> Result<T, Failure> {
        let text = self.text(arg)?;
        serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("invalid map {arg:?}: {e}")))
    }

    fn map(&mut self, arg: &str) -> Result<SelfMap, Failure> {
        self.parse(arg)
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdin),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            Outcome {
                code,
                stdout,
                stderr,
            }
        }
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let mut inputs = Inputs {
        stdin,
        stdin_used: false,
    };
    let report = match execute(cli, &mut inputs) {
        Ok(r) => r,
        Err(Failure::Parse(msg)) => return failure(EXIT_PARSE, msg),
        Err(Failure::Precondition(e)) => return failure(EXIT_PRECONDITION, e.to_string()),
    };
    let mut text = serde_json::to_string_pretty(&report.body).expect("reports are plain JSON");
    text.push('\n');
    let code = if report.ok {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => failure(EXIT_PARSE, format!("writing {}: {e}", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

fn failure(code: i32, msg: String) -> Outcome {
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn summary(d: &FinitenessResult) -> String {
    match d {
        FinitenessResult::Finite(s) => format!("Finite disagreement of size {}", s.len()),
        FinitenessResult::Infinite(w) => format!("Infinite disagreement; witness: {w}"),
    }
}

fn window_check(f: &SelfMap, multiplier: u64) -> Value {
    let bound = multiplier.max(1) * f.stability_window();
    let scan = oracle::window_scan_profile(f, bound);
    let restrict = |r: FinitenessResult| {
        r.into_finite().map(|s| {
            s.into_iter()
                .filter(|&n| n < bound)
                .collect::<BTreeSet<u64>>()
        })
    };
    let agrees = restrict(analysis::monoset_complement(f))
        .is_none_or(|s| s == scan.monoset_complement)
        && restrict(analysis::range_complement(f)).is_none_or(|s| s == scan.range_complement);
    json!({ "bound": bound, "agrees": agrees })
}

fn execute(cli: &Cli, inputs: &mut Inputs<'_>) -> Result<Report, Failure> {
    let m = cli.window_multiplier;
    Ok(match &cli.command {
        Command::Eval { map, points } => {
            let f = inputs.map(map)?;
            let values: Vec<(u64, u64)> = points.iter().map(|&n| (n, f.evaluate(n))).collect();
            Report::ok(json!({ "map": f, "values": values }))
        }
        Command::Classify { map } => {
            let f = inputs.map(map)?;
            let check = window_check(&f, m);
            let ok = check["agrees"] == json!(true);
            Report {
                body: json!({
                    "map": f,
                    "classification": classify(&f),
                    "profile": profile(&f),
                    "stability_window": f.stability_window(),
                    "window_check": check,
                }),
                ok,
            }
        }
        Command::Index { map } => {
            Report::ok(json!({ "index": analysis::index(&inputs.map(map)?)? }))
        }
        Command::Compose { outer, inner } => {
            let (f, g) = (inputs.map(outer)?, inputs.map(inner)?);
            Report::ok(json!({ "composite": f.compose(&g) }))
        }
        Command::Invert { map } => {
            let f = inputs.map(map)?;
            let inv = class_inverse(&f)?;
            let id = SelfMap::identity();
            let left = inv.compose(&f).almost_equal(&id);
            let right = f.compose(&inv).almost_equal(&id);
            Report {
                body: json!({ "map": f, "inverse": inv, "checks": { "left_inverse": left, "right_inverse": right } }),
                ok: left && right,
            }
        }
        Command::Repair { map } => {
            let f = inputs.map(map)?;
            let out = repair_to_bijection(&f)?;
            let range = complements(&f)?.range;
            let c = classify(&out);
            let d = f.disagreement(&out);
            let size_matches = d.finite().is_some_and(|s| s.len() == range.len());
            Report {
                body: json!({
                    "map": f,
                    "bijection": out,
                    "range_complement": range,
                    "disagreement": d,
                    "checks": { "injective": c.injective, "surjective": c.surjective, "disagreement_size_equals_range_complement": size_matches },
                }),
                ok: c.injective && c.surjective && size_matches,
            }
        }
        Command::Reduce { to, map } => {
            let f = inputs.map(map)?;
            let before = complements(&f)?;
            let (out, target) = match to {
                ReduceTarget::Injection => (reduce_to_injection(&f)?, "injection"),
                ReduceTarget::Surjection => (reduce_to_surjection(&f)?, "surjection"),
            };
            let after = complements(&out)?;
            let c = classify(&out);
            let (shape, cardinality) = match to {
                ReduceTarget::Injection => {
                    (c.injective, after.range.len() as i64 == -before.index())
                }
                ReduceTarget::Surjection => (
                    c.surjective,
                    after.monoset.len() as i64 - after.image_of_monoset.len() as i64
                        == before.index(),
                ),
            };
            let almost = f.almost_equal(&out);
            Report {
                body: json!({
                    "map": f,
                    "target": target,
                    "output": out,
                    "index": before.index(),
                    "monoset_complement": after.monoset,
                    "range_complement": after.range,
                    "checks": { "shape": shape, "cardinality": cardinality, "almost_equal": almost },
                }),
                ok: shape && cardinality && almost,
            }
        }
        Command::Synth { f, g } => {
            let (f, g) = (inputs.map(f)?, inputs.map(g)?);
            let cert = synthesize_lambda_rho(&f, &g)?;
            let ok = cert.verified();
            let mut body = to_value(&cert);
            body["verified"] = json!(ok);
            Report { body, ok }
        }
        Command::Fibers { f, g } => {
            let f = inputs.map(f)?;
            let f_fibers = fiber_decomposition(&f)?;
            match g {
                None => Report::ok(json!({ "map": f, "fibers": f_fibers })),
                Some(g) => {
                    let g = inputs.map(g)?;
                    let g_fibers = fiber_decomposition(&g)?;
                    let matched = fibers_match(&f, &g)?;
                    let rho = if matched {
                        Some(synthesize_rho_exact(&f, &g)?)
                    } else {
                        None
                    };
                    Report::ok(
                        json!({ "f_fibers": f_fibers, "g_fibers": g_fibers, "match": matched, "rho": rho }),
                    )
                }
            }
        }
        Command::Disagreement { f, g } => {
            let (f, g) = (inputs.map(f)?, inputs.map(g)?);
            let d = f.disagreement(&g);
            Report::ok(json!({
                "disagreement": d,
                "witness": d.witness(),
                "almost_equal": d.is_finite(),
                "summary": summary(&d),
            }))
        }
        Command::Class { map } => Report::ok(to_value(&class_of(&inputs.map(map)?)?)),
        Command::Ind { map } => Report::ok(json!({ "ind": class_of(&inputs.map(map)?)?.ind() })),
        Command::Split { n } => Report::ok(json!({ "n": n, "class": splitting(*n) })),
        Command::DemoNoncentral => demo_noncentral(),
        Command::Oracle {
            map: Some(map),
            edit,
            ..
        } => {
            let fm: FiniteSelfMap = inputs.parse(map)?;
            let mut ok = oracle::check_finite_identity(&fm)
                && oracle::check_comp_identity(&fm)
                && oracle::check_inj_iff_surj(&fm);
            let mut body = json!({
                "map": fm,
                "profile": oracle::oracle_profile(&fm),
                "finite_identity": oracle::check_finite_identity(&fm),
                "comp_identity": oracle::check_comp_identity(&fm),
                "inj_iff_surj": oracle::check_inj_iff_surj(&fm),
            });
            if let Some((point, value)) = edit {
                let r = oracle::check_edit_invariance(&fm, *point, *value)?;
                ok &= r.holds();
                body["edit"] =
                    json!({ "report": r, "holds": r.holds(), "bookkeeping": r.bookkeeping() });
            }
            Report { body, ok }
        }
        Command::Oracle {
            map: None,
            exhaustive_max,
            random,
            random_max,
            representable,
            seed,
            ..
        } => {
            let mut rng = StdRng::seed_from_u64(*seed);
            let suite = oracle::run_suite(&mut rng, *exhaustive_max, *random, *random_max);
            let spec = SampleSpec::default();
            let mut discrepancies = 0u64;
            for _ in 0..*representable {
                let f = random_near_bijection(&mut rng, &spec);
                discrepancies += u64::from(window_check(&f, m)["agrees"] != json!(true));
            }
            let failed = suite.failures() + discrepancies;
            let checks = suite.exhaustive_maps
                + suite.random_maps
                + suite.edit_replays
                + suite.permutation_pairs
                + *representable;
            Report {
                body: json!({
                    "suite": suite,
                    "window_agreement": { "maps": representable, "discrepancies": discrepancies },
                    "passed": checks - failed,
                    "failed": failed,
                }),
                ok: failed == 0,
            }
        }
    })
}

fn demo_noncentral() -> Report {
    let (pi, u) = (SelfMap::pair_swap(), SelfMap::successor());
    let (pu, up) = (pi.compose(&u), u.compose(&pi));
    let d = noncentrality_demo();
    let fixes = |h: &SelfMap, parity: u64| {
        let bound = 2 * h.stability_window();
        (0..bound)
            .filter(|n| n % 2 == parity)
            .all(|n| h.evaluate(n) == n)
    };
    let ok = !d.is_finite() && fixes(&pu, 0) && fixes(&up, 1);
    Report {
        body: json!({
            "pi_after_u": pu,
            "u_after_pi": up,
            "pi_after_u_fixes_evens": fixes(&pu, 0),
            "u_after_pi_fixes_odds": fixes(&up, 1),
            "disagreement": d,
            "witness": d.witness(),
            "summary": summary(&d),
        }),
        ok,
    }
}
