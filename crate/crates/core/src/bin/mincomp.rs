//! `mincomp`: decide whether an eventually periodic set has a minimal
//! additive complement, build and check window witnesses, and run the
//! inductive non-periodic construction.
//!
//! Exit codes: 0 exists / success, 1 does not exist, 2 bad input,
//! 3 inconclusive, 4 verification failure.

use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mincomp::record::{
    check_witness, RunRecord, SetEcho, Thm4Config, Thm4Result, WitnessBundle, WitnessChecks,
};
use mincomp::{
    build_witness, decide, parse_set, thm4_init, thm4_resume, thm4_verify, write_canonical,
    CanonicalSet, Outcome, Reason, SearchConfig, SlackSpec, Thm4Error, Thm4State, Verdict,
};

const EXIT_EXISTS: u8 = 0;
const EXIT_NOT_EXISTS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "mincomp",
    version,
    about = "Minimal additive complements of eventually periodic sets"
)]
struct Cli {
    /// Output style; both carry the same information.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical form of a set description.
    Canonicalize { file: PathBuf },
    /// Decide whether the set has a minimal complement.
    Decide {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Build a window of a minimal complement and check it.
    Witness {
        file: PathBuf,
        /// Window as LO:HI.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: (i64, i64),
        #[command(flatten)]
        search: SearchArgs,
        /// Also write the JSON record here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run both window verifiers on a saved witness.
    VerifyWitness { file: PathBuf },
    /// Generate and verify a prefix of the inductive construction.
    Thm4 {
        #[arg(long)]
        steps: usize,
        /// const:N, cycle:A,B,.., seq:A,B,.. or random:SEED[:MAX].
        #[arg(long, default_value = "const:1")]
        slack: SlackSpec,
        /// Last point of the coverage window; defaults to -c_k - 1.
        #[arg(long, allow_hyphen_values = true)]
        window_hi: Option<i64>,
        /// Largest period probed by the non-periodicity heuristic.
        #[arg(long, default_value_t = 50)]
        p_max: i64,
        /// Continue from a saved state or thm4 record.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Largest working modulus (default 8m).
    #[arg(long)]
    t_max: Option<usize>,
    #[arg(long, default_value_t = 24)]
    exhaustive_limit: usize,
    #[arg(long, default_value_t = 2_000_000)]
    heuristic_budget: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            t_max: self.t_max,
            exhaustive_limit: self.exhaustive_limit,
            heuristic_budget: self.heuristic_budget,
            workers: self.workers.max(1),
        }
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("LO: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("HI: {e}"))?;
    if lo > hi {
        return Err(format!("LO {lo} exceeds HI {hi}"));
    }
    Ok((lo, hi))
}

/// Failure carrying its exit code.
struct Fail(u8, String);

type Run = Result<(RunRecord, String, u8), Fail>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Canonicalize { file } => canonicalize(file),
        Command::Decide { file, search } => run_decide(file, search),
        Command::Witness {
            file,
            window,
            search,
            out,
        } => run_witness(file, *window, search, out.as_deref()),
        Command::VerifyWitness { file } => verify_witness(file),
        Command::Thm4 {
            steps,
            slack,
            window_hi,
            p_max,
            resume,
            out,
        } => run_thm4(
            *steps,
            slack,
            *window_hi,
            *p_max,
            resume.as_deref(),
            out.as_deref(),
        ),
    };
    match outcome {
        Ok((record, text, code)) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&record).expect("records serialize")
                ),
                Format::Text => print!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Fail> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load_set(path: &Path) -> Result<SetEcho, Fail> {
    let text = read_input(path)?;
    let given =
        parse_set(&text).map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    let resolved = given
        .resolve()
        .map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    Ok(SetEcho::new(&given, &resolved))
}

fn write_out(path: Option<&Path>, record: &RunRecord) -> Result<(), Fail> {
    if let Some(p) = path {
        let json = serde_json::to_string_pretty(record).expect("records serialize");
        fs::write(p, json + "\n").map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn describe_set(set: &CanonicalSet) -> String {
    let mut s = String::new();
    for line in write_canonical(set).lines() {
        let _ = writeln!(s, "  {line}");
    }
    s
}

fn canonicalize(file: &Path) -> Run {
    let echo = load_set(file)?;
    let mut text = String::new();
    if echo.reflected {
        text.push_str("# reflected: the input was bounded above, this is -W\n");
    }
    text.push_str(&write_canonical(&echo.canonical));
    Ok((RunRecord::canonicalize(&echo), text, EXIT_EXISTS))
}

fn verdict_code(outcome: Outcome) -> u8 {
    match outcome {
        Outcome::Exists => EXIT_EXISTS,
        Outcome::NotExists => EXIT_NOT_EXISTS,
        Outcome::Unknown => EXIT_UNKNOWN,
    }
}

fn verdict_text(echo: &SetEcho, v: &Verdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "outcome: {}", v.outcome);
    let _ = writeln!(s, "reason: {}", v.reason);
    if let Some(c) = &v.certificate {
        let _ = writeln!(s, "certificate: {c}");
    }
    let _ = writeln!(
        s,
        "canonical set{}:",
        if echo.reflected { " (reflected)" } else { "" }
    );
    s.push_str(&describe_set(&echo.canonical));
    for tr in &v.stats.searches {
        let _ = writeln!(
            s,
            "search: T={} {} {:?} complete={} found={} nodes={}",
            tr.t, tr.variant, tr.mode, tr.complete, tr.found, tr.nodes
        );
    }
    let _ = writeln!(s, "subsets examined: {}", v.stats.subsets_examined);
    let _ = writeln!(s, "wall time: {:.3} ms", v.stats.wall_time_ms);
    s
}

fn run_decide(file: &Path, search: &SearchArgs) -> Run {
    let echo = load_set(file)?;
    let cfg = search.config();
    let verdict = decide(&echo.canonical, &cfg);
    let text = verdict_text(&echo, &verdict);
    Ok((
        RunRecord::decide(&echo, &cfg, &verdict),
        text,
        verdict_code(verdict.outcome),
    ))
}

fn checks_text(b: &WitnessBundle, c: &WitnessChecks) -> String {
    let w = &b.witness;
    let mut s = String::new();
    let (a, z) = w.safe_window();
    let _ = writeln!(s, "window: [{}, {}], safe window [{a}, {z}]", w.lo, w.hi);
    let _ = writeln!(s, "certificate: {}", b.certificate);
    let _ = writeln!(s, "C1: {}", w.c1);
    let _ = writeln!(s, "C2: {}", w.c2);
    let _ = writeln!(s, "elements ({}): {:?}", w.d_elements.len(), w.d_elements);
    let targets: Vec<String> = w
        .d_elements
        .iter()
        .zip(&w.private_targets)
        .map(|(d, t)| match t {
            Some(t) => format!("{d}->{t}"),
            None => format!("{d}->-"),
        })
        .collect();
    let _ = writeln!(s, "private targets: {}", targets.join(" "));
    let cov = &c.coverage;
    let _ = writeln!(
        s,
        "coverage: {} ({} checked on [{}, {}]; first uncovered {:?}; misrouted {:?})",
        pass(cov.passed),
        cov.checked,
        cov.checked_lo,
        cov.checked_hi,
        cov.first_uncovered,
        cov.misrouted
    );
    let min = &c.minimality;
    let _ = writeln!(
        s,
        "minimality: {} ({} checked)",
        pass(min.passed),
        min.checked
    );
    for f in &min.failures {
        let _ = writeln!(s, "  {}: {}", f.d, f.reason);
    }
    s
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn run_witness(file: &Path, window: (i64, i64), search: &SearchArgs, out: Option<&Path>) -> Run {
    let echo = load_set(file)?;
    let cfg = search.config();
    let verdict = decide(&echo.canonical, &cfg);
    let certificate = match (verdict.outcome, verdict.certificate) {
        (Outcome::Exists, Some(c)) => c,
        (Outcome::Exists, None) => {
            debug_assert_eq!(verdict.reason, Reason::FiniteSet);
            return Err(Fail(
                EXIT_INPUT,
                "finite sets have no periodic witness structure".into(),
            ));
        }
        (outcome, _) => {
            return Err(Fail(
                verdict_code(outcome),
                format!("no certificate: {outcome} ({})", verdict.reason),
            ));
        }
    };
    let witness = build_witness(&echo.canonical, &certificate, window.0, window.1)
        .map_err(|e| Fail(EXIT_INPUT, e.to_string()))?;
    let bundle = WitnessBundle {
        set: echo.canonical.clone(),
        certificate,
        witness,
    };
    let checks = check_witness(&bundle).map_err(|e| Fail(EXIT_VERIFY, e))?;
    let record = RunRecord::witness(&echo, window, &bundle, &checks);
    write_out(out, &record)?;
    let code = if checks.passed() {
        EXIT_EXISTS
    } else {
        EXIT_VERIFY
    };
    Ok((record, checks_text(&bundle, &checks), code))
}

fn verify_witness(file: &Path) -> Run {
    let text = read_input(file)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", file.display())))?;
    let bundle: WitnessBundle = if value.get("command").is_some() {
        let record: RunRecord =
            serde_json::from_value(value).map_err(|e| Fail(EXIT_INPUT, format!("record: {e}")))?;
        record
            .witness_bundle()
            .ok_or_else(|| Fail(EXIT_INPUT, "record holds no readable witness".into()))?
    } else {
        serde_json::from_value(value).map_err(|e| Fail(EXIT_INPUT, format!("witness: {e}")))?
    };
    if !bundle.certificate.verify_for(&bundle.set) {
        return Err(Fail(EXIT_VERIFY, "certificate fails the conditions".into()));
    }
    let checks = check_witness(&bundle).map_err(|e| Fail(EXIT_VERIFY, e))?;
    let code = if checks.passed() {
        EXIT_EXISTS
    } else {
        EXIT_VERIFY
    };
    let text = checks_text(&bundle, &checks);
    Ok((RunRecord::verify_witness(&bundle, &checks), text, code))
}

fn load_state(path: &Path) -> Result<Thm4State, Fail> {
    let text = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    let state = match value.get("command") {
        Some(_) => value
            .get("result")
            .and_then(|r| r.get("state"))
            .cloned()
            .unwrap_or_default(),
        None => value,
    };
    serde_json::from_value(state).map_err(|e| Fail(EXIT_INPUT, format!("state: {e}")))
}

fn thm4_fail(e: Thm4Error) -> Fail {
    match e {
        Thm4Error::InvalidSlack(_)
        | Thm4Error::PrefixTooShort { .. }
        | Thm4Error::InvalidState(_) => Fail(EXIT_INPUT, e.to_string()),
        _ => Fail(EXIT_VERIFY, e.to_string()),
    }
}

fn run_thm4(
    steps: usize,
    slack: &SlackSpec,
    window_hi: Option<i64>,
    p_max: i64,
    resume: Option<&Path>,
    out: Option<&Path>,
) -> Run {
    let clock = Instant::now();
    let start = match resume {
        Some(p) => load_state(p)?,
        None => thm4_init(),
    };
    let state = thm4_resume(start, steps, |i| slack.value(i)).map_err(thm4_fail)?;
    let window_hi = window_hi.unwrap_or(-state.c_seq()[state.k() - 1] - 1);
    let report = thm4_verify(&state, window_hi, p_max).map_err(thm4_fail)?;
    let elapsed = clock.elapsed().as_secs_f64() * 1e3;

    let mut s = String::new();
    let _ = writeln!(s, "k = {}", state.k());
    let _ = writeln!(s, "d = {:?}", state.d_seq());
    let _ = writeln!(s, "c = {:?}", state.c_seq());
    let _ = writeln!(s, "slack = {:?}", state.slack_seq());
    let runs: Vec<String> = state
        .runs()
        .iter()
        .take(12)
        .map(|(a, b)| format!("[{a},{b}]"))
        .collect();
    let more = state.runs().len().saturating_sub(12);
    let _ = writeln!(
        s,
        "W runs ({}): {}{}",
        state.runs().len(),
        runs.join(" "),
        if more > 0 {
            format!(" ... +{more}")
        } else {
            String::new()
        }
    );
    let _ = writeln!(s, "gaps in {{1,2}}: {}", pass(report.gaps_ok));
    let _ = writeln!(s, "sequence invariants: {}", pass(report.sequences_ok));
    for f in &report.sequence_failures {
        let _ = writeln!(s, "  {f}");
    }
    let (lo, hi) = report.coverage_window;
    let _ = writeln!(
        s,
        "coverage on [{lo}, {hi}]: {} (first uncovered {:?})",
        pass(report.coverage_ok),
        report.first_uncovered
    );
    let _ = writeln!(
        s,
        "unique representation: {} {:?}",
        pass(report.uniqueness_ok),
        report.uniqueness_failures
    );
    let periodic = report.periodic_looking();
    let (tl, th) = report.tail_window;
    if periodic.is_empty() {
        let _ = writeln!(s, "no period <= {p_max} fits the tail [{tl}, {th}]");
    } else {
        let _ = writeln!(
            s,
            "periods <= {p_max} not ruled out on [{tl}, {th}]: {periodic:?}"
        );
    }
    let _ = writeln!(s, "wall time: {elapsed:.3} ms");

    let cfg = Thm4Config {
        steps,
        slack: slack.to_string(),
        window_hi,
        p_max,
    };
    let passed = report.passed();
    let record = RunRecord::thm4(&cfg, &Thm4Result { state, report }, elapsed);
    write_out(out, &record)?;
    Ok((record, s, if passed { EXIT_EXISTS } else { EXIT_VERIFY }))
}
