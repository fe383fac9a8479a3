//! `hurwitz`: stability checks, Hadamard products, idealizer membership,
//! property suites and the counterexample search from the command line.
//!
//! Exit codes: 0 affirmative, 1 negative, 2 usage or input error,
//! 3 violation or internal failure.

mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hurwitz_core::idealizer::Family;
use hurwitz_core::poly::format_rational;
use hurwitz_core::roots::{
    find_roots, verdict_from_root_set, OracleVerdict, DEFAULT_EPS, DEFAULT_ROOT_TOL,
};
use hurwitz_core::search::{
    manifest_path, probe_conjecture, reproduce_example_1, reproduce_example_2, run_suite,
    write_findings, CheckRow, Suite,
};
use hurwitz_core::stability::{
    hermite_biehler_classify, hurwitz_minors, is_stable_routh_hurwitz, quasi_stability_agt,
    StabilityKind,
};
use hurwitz_core::{hadamard, Error};

use input::parse_poly;
use render::{decimals, emit, minors_line};

const AFFIRMATIVE: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const FAILURE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hurwitz",
    version,
    about = "Exact Hurwitz stability and Hadamard-product idealizers"
)]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficients are given highest degree first.
    #[arg(long, global = true)]
    descending: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide stability (or quasi-stability) of a polynomial.
    Check(CheckArgs),
    /// Coefficient-wise product of two polynomials and its stability.
    Hadamard(HadamardArgs),
    /// Membership in one of the idealizer families.
    Idealizer(IdealizerArgs),
    /// Run a seeded property suite.
    Verify(VerifyArgs),
    /// Search for pairs (f, g), g in Y_n, with an unstable product.
    Search(SearchArgs),
    /// Reproduce the two worked examples.
    Examples,
}

#[derive(Args)]
struct CheckArgs {
    /// Comma-separated coefficients, lowest degree first, or {"coeffs": [...]}.
    #[arg(allow_hyphen_values = true)]
    poly: String,
    /// Affirm quasi-stability instead of stability.
    #[arg(long)]
    quasi: bool,
    /// Half-plane threshold for the root oracle.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
}

#[derive(Args)]
struct HadamardArgs {
    #[arg(allow_hyphen_values = true)]
    f: String,
    #[arg(allow_hyphen_values = true)]
    g: String,
}

#[derive(Args)]
struct IdealizerArgs {
    #[arg(allow_hyphen_values = true)]
    poly: String,
    /// W, Wbar, Y, Y4, Y5 or Ystar.
    #[arg(long, default_value = "Y", value_parser = parse_family)]
    family: Family,
    /// Degree parameter; defaults to the degree of the polynomial.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// criteria, gw, hb, lemmas, theorems or lemma3.
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, env = "HURWITZ_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, env = "HURWITZ_SEED", default_value_t = 0)]
    seed: u64,
    /// JSON-lines findings file; a manifest is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
        .map_err(|_| format!("unknown family {s:?} (W, Wbar, Y, Y4, Y5, Ystar)"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A command failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self {
            code: FAILURE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => Failure::internal(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { AFFIRMATIVE });
        }
    };
    let result = match &cli.command {
        Command::Check(a) => cmd_check(&cli, a),
        Command::Hadamard(a) => cmd_hadamard(&cli, a),
        Command::Idealizer(a) => cmd_idealizer(&cli, a),
        Command::Verify(a) => cmd_verify(&cli, a),
        Command::Search(a) => cmd_search(&cli, a),
        Command::Examples => cmd_examples(&cli),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_check(cli: &Cli, a: &CheckArgs) -> CmdResult {
    let f = parse_poly(&a.poly, cli.descending)?;
    if f.degree() == 0 {
        return Err(Failure::usage(
            "a constant has no stability verdict; give degree >= 1",
        ));
    }
    let rh = is_stable_routh_hurwitz(&f)?;
    // Outside the quasi-stable shape (a_0, a_n > 0, no negative coefficient)
    // there is no AGT verdict: the polynomial is simply not quasi-stable.
    let agt = quasi_stability_agt(&f).ok();
    let kind = agt
        .as_ref()
        .map_or(StabilityKind::NotQuasiStable, |v| v.kind);
    let hb = hermite_biehler_classify(&f);
    let roots = find_roots(&f, DEFAULT_ROOT_TOL)?;
    let oracle = verdict_from_root_set(&roots, a.eps);
    let consistent = match oracle {
        OracleVerdict::Stable => kind == StabilityKind::Stable,
        OracleVerdict::NotQuasiStable => kind == StabilityKind::NotQuasiStable,
        _ => true,
    };
    let stable = kind == StabilityKind::Stable;
    let quasi = kind != StabilityKind::NotQuasiStable;
    let affirmative = if a.quasi { quasi } else { stable };
    if cli.json {
        emit(&json!({
            "coeffs": f.to_strings(),
            "decimal_display_only": decimals(&f),
            "degree": f.degree(),
            "stable": stable,
            "quasi_stable": quasi,
            "stability_index": agt.as_ref().filter(|_| quasi).map(|v| v.index),
            "routh_hurwitz": rh,
            "agt": agt,
            "hermite_biehler": hb,
            "root_oracle": {
                "eps": a.eps,
                "verdict": oracle,
                "roots": roots,
                "summary": hurwitz_core::roots::classify_halfplane(&roots, a.eps),
            },
            "oracle_consistent": consistent,
        }));
    } else {
        println!("f(x) = {f}");
        println!(
            "Routh-Hurwitz: {}",
            if rh.stable { "stable" } else { "not stable" }
        );
        println!("minors: {}", minors_line(&rh.minors));
        match &agt {
            Some(v) if quasi => {
                println!("quasi-stability: {:?}, stability index {}", v.kind, v.index)
            }
            _ => println!("quasi-stability: not quasi-stable"),
        }
        println!("Hermite-Biehler: {}", hb.name());
        let s = hurwitz_core::roots::classify_halfplane(&roots, a.eps);
        println!(
            "root oracle (eps {:e}): {:?}; left {}, boundary {}, right {}",
            a.eps, oracle, s.strictly_left, s.boundary, s.strictly_right
        );
        println!("(decimals are display-only; exact values are rationals)");
        let word = match (a.quasi, affirmative) {
            (false, true) => "STABLE",
            (false, false) => "NOT STABLE",
            (true, true) => "QUASI-STABLE",
            (true, false) => "NOT QUASI-STABLE",
        };
        println!("verdict: {word}");
    }
    if !consistent {
        return Err(Failure::internal(format!(
            "root oracle ({oracle:?}) contradicts the exact verdict ({kind:?})"
        )));
    }
    Ok(if affirmative { AFFIRMATIVE } else { NEGATIVE })
}

fn cmd_hadamard(cli: &Cli, a: &HadamardArgs) -> CmdResult {
    let f = parse_poly(&a.f, cli.descending)?;
    let g = parse_poly(&a.g, cli.descending)?;
    let product = hadamard(&f, &g)?;
    let k = f.degree().min(g.degree());
    let note = (f.degree() != g.degree())
        .then(|| format!("degrees differ; product truncated to degree {k}"));
    let (stable, minors) = if product.degree() == 0 {
        (false, None)
    } else {
        let rh = is_stable_routh_hurwitz(&product)?;
        (rh.stable, Some(rh.minors))
    };
    if cli.json {
        emit(&json!({
            "f": f,
            "g": g,
            "product": product,
            "decimal_display_only": decimals(&product),
            "degree": product.degree(),
            "note": note,
            "stable": stable,
            "minors": minors,
        }));
    } else {
        println!("f*g = {product}");
        println!("coefficients: {}", product.to_strings().join(", "));
        if let Some(n) = &note {
            println!("note: {n}");
        }
        if let Some(m) = &minors {
            println!("minors: {}", minors_line(m));
        }
        println!("verdict: {}", if stable { "STABLE" } else { "NOT STABLE" });
    }
    Ok(if stable { AFFIRMATIVE } else { NEGATIVE })
}

fn cmd_idealizer(cli: &Cli, a: &IdealizerArgs) -> CmdResult {
    let g = parse_poly(&a.poly, cli.descending)?;
    let n = a.n.unwrap_or(g.degree());
    let report = a.family.test(n, &g)?;
    if cli.json {
        emit(&report);
    } else {
        println!("g(x) = {g}");
        println!(
            "family {} (n = {n}): {}",
            a.family,
            if report.member {
                "member"
            } else {
                "not a member"
            }
        );
        if let Some(b) = &report.branch {
            println!("branch: {b}");
        }
        for c in &report.inequality_trace {
            println!(
                "  [{}] {}: {} vs {}",
                if c.holds { "ok" } else { "FAIL" },
                c.description,
                format_rational(&c.lhs),
                format_rational(&c.rhs)
            );
        }
        if let Some(w) = &report.witness {
            println!(
                "witness: k = {}, m = {}: g*Q^{}_{} / x^{} = {} is {:?} (minors {})",
                w.k,
                w.m,
                w.k,
                w.m,
                w.m,
                w.product,
                w.verdict.kind,
                minors_line(&w.verdict.minors)
            );
        }
    }
    Ok(if report.member { AFFIRMATIVE } else { NEGATIVE })
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> CmdResult {
    let report = run_suite(a.suite, a.samples, a.seed);
    if cli.json {
        emit(&report);
    } else {
        println!("suite {} ({} samples, seed {})", a.suite, a.samples, a.seed);
        for (k, v) in &report.counters {
            println!("  {k}: {v}");
        }
        for v in report.violations.iter().take(10) {
            let polys: Vec<String> = v.polys.iter().map(|p| p.to_strings().join(",")).collect();
            println!(
                "  violation #{}: {} [{}]",
                v.index,
                v.description,
                polys.join(" | ")
            );
        }
        println!("{} violations", report.violations.len());
    }
    Ok(if report.passed() {
        AFFIRMATIVE
    } else {
        FAILURE
    })
}

fn cmd_search(cli: &Cli, a: &SearchArgs) -> CmdResult {
    if a.n < 3 {
        return Err(Failure::usage("--n must be at least 3"));
    }
    let report = probe_conjecture(a.n, a.samples, a.seed)?;
    let manifest = match &a.out {
        Some(out) => Some(write_findings(&report, out)?),
        None => None,
    };
    if cli.json {
        emit(&json!({
            "n": report.n,
            "samples": report.samples,
            "seed": report.seed,
            "records": report.records,
            "g_proposals": report.g_proposals,
            "acceptance_rate": report.acceptance_rate(),
            "oracle_disagreements": report.oracle_disagreements,
            "manifest": manifest,
        }));
    } else {
        println!(
            "n = {}: {} samples, {} records, Y_{} acceptance rate {:.3}",
            report.n,
            report.samples,
            report.records.len(),
            report.n,
            report.acceptance_rate()
        );
        if let Some(out) = &a.out {
            println!("findings: {}", out.display());
            println!("manifest: {}", manifest_path(out).display());
        }
        for r in report.records.iter().take(5) {
            println!("  f = {} ; g = {} ; f*g = {}", r.f, r.g, r.product);
        }
    }
    if report.is_theorem_violation() {
        return Err(Failure::internal(format!(
            "{} unstable products for n = {} contradict a proven case",
            report.records.len(),
            report.n
        )));
    }
    if report.oracle_disagreements > 0 {
        return Err(Failure::internal(format!(
            "root oracle contradicted {} exact verdicts",
            report.oracle_disagreements
        )));
    }
    Ok(AFFIRMATIVE)
}

fn print_rows(title: &str, rows: &[CheckRow]) {
    println!("{title}");
    let width = rows
        .iter()
        .map(|r| r.quantity.chars().count())
        .max()
        .unwrap_or(0);
    for r in rows {
        println!(
            "  {:<width$}  expected {:<18} computed {:<24} {}",
            r.quantity,
            r.expected,
            r.computed,
            if r.matches { "ok" } else { "MISMATCH" }
        );
    }
}

fn cmd_examples(cli: &Cli) -> CmdResult {
    let one = reproduce_example_1()?;
    let two = reproduce_example_2()?;
    if cli.json {
        emit(&json!({ "example_1": one, "example_2": two }));
    } else {
        print_rows("W5 member with an unstable product:", &one.rows);
        print_rows("Y5 member with a negative 3x3 minor:", &two.rows);
    }
    let minors = hurwitz_minors(&one.record.product)?;
    let ok = one.all_match() && two.all_match() && minors == one.record.minor_evidence;
    if ok {
        Ok(AFFIRMATIVE)
    } else {
        Err(Failure::internal("an example did not reproduce"))
    }
}
