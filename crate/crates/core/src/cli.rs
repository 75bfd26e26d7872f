//! Command-line front end. Every subcommand builds a JSON report; text output
//! is rendered from that report.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::certificates::{
    amalgam_ranks, irreducibility_check, nst_check, simplicity_certificate, CertOptions, Outcome,
    Verdict,
};
use crate::complex::{Side, SquareComplex};
use crate::coset::{enumerate, quotient_structure, EnumError, EnumOptions, Strategy, DEFAULT_COSET_CAP};
use crate::fp::{abelianization, index4_hom, presentation_from_complex, Presentation, Word};
use crate::group::{recognize, DEFAULT_SIMPLICITY_BOUND};
use crate::local::local_group;
use crate::parse::parse_complex;
use crate::rs::{is_perfect, parity_kernel_table, subgroup_presentation, tietze_simplify, TietzeLimits, DEFAULT_LENGTH_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "vhcx", version, about = "Checks and certificates for VH square complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Complex file in the `.vh` format.
    complex: PathBuf,
    /// Emit JSON on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct Enumeration {
    /// Word in the complex's generators, e.g. `a2*a1^-1*a3*a4^-1`.
    #[arg(long)]
    word: String,
    /// Maximum number of live cosets.
    #[arg(long, default_value_t = DEFAULT_COSET_CAP, value_parser = positive)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
    strategy: StrategyArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Hlt,
    Felsch,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    #[value(alias = "horizontal")]
    H,
    #[value(alias = "vertical")]
    V,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the link condition (every corner in exactly one square).
    CheckLink(Common),
    /// Euler characteristic of the complex and of the index-4 subgroup.
    Euler(Common),
    /// Local permutation group on a sphere of one tree factor.
    Local {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = SideArg::H)]
        side: SideArg,
        #[arg(long, default_value_t = 1, value_parser = depth)]
        depth: usize,
    },
    /// Irreducibility criterion via the order of P_v^(2).
    Irreducible(Common),
    /// Hypotheses of the normal subgroup theorem.
    Nst {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SIMPLICITY_BOUND)]
        bound: u64,
    },
    /// Index of the normal closure of a word.
    ClosureIndex {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        enumeration: Enumeration,
    },
    /// Structure of the finite quotient by the normal closure of a word.
    Quotient {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        enumeration: Enumeration,
    },
    /// Abelian invariants of the fundamental group.
    Abelianize(Common),
    /// Reidemeister–Schreier presentation of the index-4 subgroup.
    Rs(Common),
    /// Tietze-simplified presentation of the index-4 subgroup.
    Simplify {
        #[command(flatten)]
        common: Common,
        /// Total relator length budget.
        #[arg(long, default_value_t = DEFAULT_LENGTH_BUDGET)]
        budget: usize,
    },
    /// Ranks of the two amalgam splittings of the index-4 subgroup.
    Amalgam {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Simplicity certificate for the normal closure of a word.
    SimpleCert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        enumeration: Enumeration,
        #[arg(long, default_value_t = DEFAULT_SIMPLICITY_BOUND)]
        bound: u64,
        /// Acknowledge the external assumption that w lies in Δ*.
        #[arg(long)]
        assume_nrf: bool,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn depth(s: &str) -> Result<usize, String> {
    match positive(s)? {
        d @ 1..=3 => Ok(d),
        _ => Err("depth must be 1, 2 or 3".into()),
    }
}

struct Report {
    json: Value,
    text: String,
    code: i32,
}

impl Report {
    fn json_text(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("report serializes") + "\n"
    }
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let as_json = match &cli.command {
        Command::Amalgam { json, .. } => *json,
        Command::Local { common, .. }
        | Command::Nst { common, .. }
        | Command::ClosureIndex { common, .. }
        | Command::Quotient { common, .. }
        | Command::Simplify { common, .. }
        | Command::SimpleCert { common, .. } => common.json,
        Command::CheckLink(c)
        | Command::Euler(c)
        | Command::Irreducible(c)
        | Command::Abelianize(c)
        | Command::Rs(c) => c.json,
    };
    match dispatch(cli.command) {
        Ok(report) => {
            let body = if as_json {
                report.json_text()
            } else {
                report.text
            };
            let _ = out.write_all(body.as_bytes());
            report.code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn load(path: &PathBuf) -> Result<SquareComplex, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_complex(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn options(e: &Enumeration) -> EnumOptions {
    EnumOptions {
        cap: e.cap,
        strategy: match e.strategy {
            StrategyArg::Hlt => Strategy::Hlt,
            StrategyArg::Felsch => Strategy::Felsch,
        },
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_OK,
        Verdict::Unknown => EXIT_EXHAUSTED,
        _ => EXIT_FAIL,
    }
}

fn dispatch(cmd: Command) -> Result<Report, UsageError> {
    match cmd {
        Command::CheckLink(c) => check_link(&load(&c.complex)?),
        Command::Euler(c) => {
            let cx = load(&c.complex)?;
            let chi = cx.euler_characteristic();
            Ok(Report {
                text: format!("chi = {chi}\nchi(index-4 subgroup) = {}\n", 4 * chi),
                json: json!({ "complex": cx.name, "m": cx.m(), "n": cx.n(), "euler_characteristic": chi, "index4_euler_characteristic": 4 * chi }),
                code: EXIT_OK,
            })
        }
        Command::Local { common, side, depth } => {
            let cx = load(&common.complex)?;
            if let Some(r) = link_failure(&cx) {
                return Ok(r);
            }
            let side = match side {
                SideArg::H => Side::Horizontal,
                SideArg::V => Side::Vertical,
            };
            local(&cx, side, depth)
        }
        Command::Irreducible(c) => {
            let cx = load(&c.complex)?;
            let irr = irreducibility_check(&cx)?;
            let step = irr.step();
            let mut text = format!("irreducibility: {}\n", verdict_name(irr.verdict));
            if let Some(r) = &irr.reason {
                text += &format!("reason: {r}\n");
            }
            if let (Some(o), Some(t)) = (&irr.order, &irr.target) {
                text += &format!("|P_v^(2)| = {o}\ntarget    = {t}\n");
            }
            Ok(Report {
                json: json!({ "complex": cx.name, "verdict": irr.verdict, "values": step.values }),
                text,
                code: verdict_code(irr.verdict),
            })
        }
        Command::Nst { common, bound } => {
            let cx = load(&common.complex)?;
            if let Some(r) = link_failure(&cx) {
                return Ok(r);
            }
            let nst = nst_check(&cx, bound)?;
            let step = nst.step();
            let mut text = format!("normal subgroup theorem hypotheses: {}\n", verdict_name(nst.verdict));
            for h in [&nst.horizontal, &nst.vertical] {
                text += &format!(
                    "{:?}: {} (order {}), 2-transitive {}, stabilizer {} (order {}) simple {}\n",
                    h.side, h.recognized, h.order, h.two_transitive, h.stabilizer_recognized, h.stabilizer_order, h.stabilizer_simple
                );
            }
            if let Some(f) = &nst.failed_at {
                text += &format!("failed at: {f}\n");
            }
            if let Some(c) = nst.conclusion() {
                text += &format!("{c}\n");
            }
            Ok(Report {
                json: json!({ "complex": cx.name, "verdict": nst.verdict, "values": step.values }),
                text,
                code: verdict_code(nst.verdict),
            })
        }
        Command::ClosureIndex { common, enumeration } => {
            let cx = load(&common.complex)?;
            let (p, w) = word_of(&cx, &enumeration.word)?;
            let word = p.word_text(&w);
            match enumerate(&p.with_relator(w), &[], options(&enumeration)) {
                Ok(t) => Ok(Report {
                    text: format!("index of <<{word}>>: {}\n", t.index()),
                    json: json!({ "complex": cx.name, "word": word, "result": "closed", "table": t.summary_json() }),
                    code: EXIT_OK,
                }),
                Err(e) => exhausted(&cx, &word, e),
            }
        }
        Command::Quotient { common, enumeration } => {
            let cx = load(&common.complex)?;
            let (p, w) = word_of(&cx, &enumeration.word)?;
            let word = p.word_text(&w);
            match enumerate(&p.with_relator(w), &[], options(&enumeration)) {
                Ok(t) => {
                    let q = quotient_structure(&t)?;
                    let reps: Vec<String> = q.representatives.iter().map(|r| p.word_text(r)).collect();
                    let mut text = format!("order {}\nabelian {}\n", q.order, q.abelian);
                    if let Some(inv) = &q.invariants {
                        text += &format!("invariants {inv}\n");
                    }
                    text += &format!("representatives {}\n", reps.join(" "));
                    let mut json = q.to_json();
                    json["complex"] = json!(cx.name);
                    json["word"] = json!(word);
                    json["representatives"] = json!(reps);
                    json["group_axioms"] = json!(q.satisfies_group_axioms());
                    Ok(Report { json, text, code: EXIT_OK })
                }
                Err(e) => exhausted(&cx, &word, e),
            }
        }
        Command::Abelianize(c) => {
            let cx = load(&c.complex)?;
            let inv = abelianization(&presentation_from_complex(&cx));
            Ok(Report {
                text: format!("{inv}\n"),
                json: json!({ "complex": cx.name, "abelianization": inv }),
                code: EXIT_OK,
            })
        }
        Command::Rs(c) => {
            let cx = load(&c.complex)?;
            let sub = index4_subgroup(&cx)?;
            let reps: Vec<String> = sub.1.iter().map(|r| sub.2.word_text(r)).collect();
            let q = &sub.0;
            Ok(Report {
                text: format!(
                    "transversal {}\ngenerators {}\nrelators {}\ntotal length {}\n{q}\n",
                    reps.join(" "),
                    q.generator_count(),
                    q.relator_count(),
                    q.total_length()
                ),
                json: json!({ "complex": cx.name, "transversal": reps, "presentation": q.to_json() }),
                code: EXIT_OK,
            })
        }
        Command::Simplify { common, budget } => {
            let cx = load(&common.complex)?;
            let (raw, _, _) = index4_subgroup(&cx)?;
            let limits = TietzeLimits {
                length_budget: budget,
                ..Default::default()
            };
            let out = tietze_simplify(&raw, limits);
            let q = &out.presentation;
            let perfect = is_perfect(q);
            let deficiency = q.relator_count() as i64 - q.generator_count() as i64;
            Ok(Report {
                text: format!(
                    "raw: {} generators, {} relators\nsimplified: {} generators, {} relators, total length {}\nr - g = {deficiency}\nperfect {perfect}\n",
                    raw.generator_count(),
                    raw.relator_count(),
                    q.generator_count(),
                    q.relator_count(),
                    q.total_length()
                ),
                json: json!({
                    "complex": cx.name,
                    "raw": { "generators": raw.generator_count(), "relators": raw.relator_count() },
                    "presentation": q.to_json(),
                    "moves": out.moves.len(),
                    "deficiency": deficiency,
                    "perfect": perfect,
                    "abelianization": abelianization(q),
                }),
                code: EXIT_OK,
            })
        }
        Command::Amalgam { m, n, .. } => {
            let r = amalgam_ranks(m, n)?;
            Ok(Report {
                text: format!(
                    "{} (edge index {})\n{} (edge index {})\neuler {} consistent {}\n",
                    r.horizontal_cut.notation(),
                    r.horizontal_cut.edge_index,
                    r.vertical_cut.notation(),
                    r.vertical_cut.edge_index,
                    r.euler_characteristic,
                    r.euler_consistent
                ),
                code: if r.euler_consistent { EXIT_OK } else { EXIT_FAIL },
                json: json!({ "m": m, "n": n, "ranks": r }),
            })
        }
        Command::SimpleCert { common, enumeration, bound, assume_nrf } => {
            let cx = load(&common.complex)?;
            let (_, w) = word_of(&cx, &enumeration.word)?;
            let opts = CertOptions {
                assume_nrf,
                enumeration: options(&enumeration),
                simplicity_bound: bound,
            };
            let cert = simplicity_certificate(&cx, &w, opts)?;
            let mut text = String::new();
            for s in &cert.steps {
                text += &format!("{:<24} {}\n", s.name, verdict_name(s.verdict));
            }
            for a in &cert.assumptions {
                text += &format!(
                    "assumption{}: {} ({})\n",
                    if a.acknowledged { "" } else { " (not acknowledged)" },
                    a.statement,
                    a.citation
                );
            }
            text += &format!("conclusion: {}\n", cert.conclusion);
            let code = match &cert.outcome {
                Outcome::Simple { index, gamma0 } => {
                    if *gamma0 {
                        text += &format!("{}_0 simple, index {index}\n", cx.name);
                    } else {
                        text += &format!("{}* simple, index {index}\n", cx.name);
                    }
                    EXIT_OK
                }
                Outcome::Partial | Outcome::NstOnly => EXIT_OK,
                Outcome::Aborted { verdict, .. } => verdict_code(*verdict).max(EXIT_FAIL),
            };
            Ok(Report {
                json: serde_json::to_value(&cert).expect("certificate serializes"),
                text,
                code,
            })
        }
    }
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn check_link(cx: &SquareComplex) -> Result<Report, UsageError> {
    let r = cx.check_link();
    let mut text = format!("{}/{} corners\n", r.covered, r.expected);
    for (a, b) in &r.missing_corners {
        text += &format!("missing corner ({a}, {b})\n");
    }
    for d in &r.duplicate_corners {
        text += &format!("corner ({}, {}) in {} squares: {}\n", d.corner.0, d.corner.1, d.squares.len(), d.squares.join("; "));
    }
    text += if r.ok { "link condition holds\n" } else { "link condition fails\n" };
    Ok(Report {
        json: json!({ "complex": cx.name, "link": r }),
        text,
        code: if r.ok { EXIT_OK } else { EXIT_FAIL },
    })
}

/// Local groups are only defined when the link condition holds.
fn link_failure(cx: &SquareComplex) -> Option<Report> {
    let r = cx.check_link();
    (!r.ok).then(|| Report {
        text: format!("link condition fails ({}/{} corners)\n", r.covered, r.expected),
        json: json!({ "complex": cx.name, "verdict": Verdict::Fail, "link": r }),
        code: EXIT_FAIL,
    })
}

fn local(cx: &SquareComplex, side: Side, depth: usize) -> Result<Report, UsageError> {
    let lg = local_group(cx, side, depth)?;
    let rec = recognize(&lg.group);
    let stab = lg.group.point_stabilizer(0);
    let gens: Vec<(String, String)> = lg
        .generators
        .iter()
        .map(|(l, p)| (cx.letter_name(*l), p.to_string()))
        .collect();
    let label = match side {
        Side::Horizontal => "P_h",
        Side::Vertical => "P_v",
    };
    let mut text = format!(
        "{label}^({depth}) on {} points: order {}, {rec}\n",
        lg.group.degree(),
        lg.order()
    );
    if depth == 1 {
        text += &format!("2-transitive {}\n", lg.group.is_k_transitive(2));
        text += &format!("stabilizer of 1: order {}, {}\n", stab.order(), recognize(&stab));
        for (l, p) in &gens {
            text += &format!("{l}: {p}\n");
        }
    }
    Ok(Report {
        json: json!({
            "complex": cx.name,
            "side": side,
            "depth": depth,
            "degree": lg.group.degree(),
            "order": lg.order().to_string(),
            "recognized": rec,
            "stabilizer_order": stab.order().to_string(),
            "generators": gens.iter().map(|(l, p)| json!({ "letter": l, "permutation": p })).collect::<Vec<_>>(),
        }),
        text,
        code: EXIT_OK,
    })
}

fn word_of(cx: &SquareComplex, text: &str) -> Result<(Presentation, Word), UsageError> {
    let p = presentation_from_complex(cx);
    let w = p.parse_word(text)?;
    Ok((p, w))
}

fn exhausted(cx: &SquareComplex, word: &str, e: EnumError) -> Result<Report, UsageError> {
    match e {
        EnumError::Exhausted { cap } => Ok(Report {
            text: format!("unknown: enumeration of <<{word}>> exhausted its cap of {cap} cosets\n"),
            json: json!({ "complex": cx.name, "word": word, "result": "exhausted", "cap": cap }),
            code: EXIT_EXHAUSTED,
        }),
        other => Err(other.into()),
    }
}

/// Raw subgroup presentation, transversal, and parent presentation.
fn index4_subgroup(cx: &SquareComplex) -> Result<(Presentation, Vec<Word>, Presentation), UsageError> {
    let p = presentation_from_complex(cx);
    let hom = index4_hom(&p)?;
    let sub = subgroup_presentation(&p, &parity_kernel_table(&hom));
    Ok((sub.presentation, sub.transversal.representatives, p))
}
