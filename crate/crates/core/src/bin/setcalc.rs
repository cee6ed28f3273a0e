//! `setcalc`: magnification ratios, Ruzsa coverings, theorem verification
//! and fuzz campaigns from the command line.
//!
//! Exit codes: 0 success, 2 a violated inequality or failed check, 3 bad
//! input or configuration.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use setcalc::covering::{ruzsa_cover_with_order, ScanOrder};
use setcalc::harness::{emit_report, run_fuzz, ExperimentConfig, Format, Overrides};
use setcalc::magnification::{magnification_brute, magnification_flow};
use setcalc::setops::{GSet, Sign};
use setcalc::verify::{self, Instance, Status, TheoremId, TheoremParams, TheoremReport, Verifier};
use setcalc::{Error, Group, Rational};

#[derive(Parser)]
#[command(name = "setcalc", version, about = "Exact product-set growth computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Flow,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Canonical,
    Reverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args)]
struct Sets {
    /// Group spec, e.g. `zn:30`, `zprod:2,3,5`, `dihedral:8`, `sym:5`, `gl2:7`, `free:2:12`.
    #[arg(long)]
    group: String,
    /// Set literal: `{0,1,2}`, `subgroup:<g1>;<g2>`, `all`, `identity`, or unions joined by `|`.
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    c: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Magnification ratio K = min |ZB|/|Z| over nonempty Z in A, with a minimizer.
    Ratio {
        #[command(flatten)]
        sets: Sets,
        #[arg(long, value_enum, default_value = "flow")]
        method: MethodArg,
    },
    /// Ruzsa covering T in B with B in A^-1 A T.
    Cover {
        #[command(flatten)]
        sets: Sets,
        #[arg(long, value_enum, default_value = "canonical")]
        order: OrderArg,
    },
    /// Check one inequality on concrete sets and print its report.
    Verify {
        /// Theorem id, e.g. `triple`, `plunnecke_h`, `sb_h`.
        theorem: String,
        #[command(flatten)]
        sets: Sets,
        #[arg(long)]
        h: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        /// Sign pattern such as `+,-,+`.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        /// Larger hypothesis constants to use instead of the tight ones.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
        /// Accept h > 6 and k, l > 3.
        #[arg(long)]
        allow_large: bool,
    },
    /// Run both fixed constructions and print their exact cardinalities.
    Gallery {
        #[arg(long, default_value_t = 3)]
        h: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Run a seeded fuzz campaign described by a TOML config.
    Fuzz {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        /// Worker threads; defaults to $SETCALC_JOBS, then the number of CPUs.
        #[arg(long, env = "SETCALC_JOBS")]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    /// Bad input; exit 3.
    Input(String),
    /// The computation ran and found a violation; exit 2, after printing.
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn group_and_set(sets: &Sets, which: &str) -> Result<(Arc<Group>, GSet), Failure> {
    let g = Group::parse(&sets.group)?;
    let lit = match which {
        "a" => &sets.a,
        "b" => &sets.b,
        _ => &sets.c,
    };
    let lit = lit.as_ref().ok_or_else(|| Failure::Input(format!("--{which} is required")))?;
    let s = GSet::parse(&g, lit)?;
    Ok((g, s))
}

fn optional(g: &Arc<Group>, lit: &Option<String>) -> Result<Option<GSet>, Failure> {
    Ok(lit.as_deref().map(|l| GSet::parse(g, l)).transpose()?)
}

fn print_json(v: &impl serde::Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Input(e.to_string()))?;
    print_text(&text);
    Ok(())
}

fn print_text(text: &str) {
    use std::io::Write;
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn ratio(sets: &Sets, method: MethodArg) -> Outcome {
    let (_, a) = group_and_set(sets, "a")?;
    let (_, b) = group_and_set(sets, "b")?;
    match method {
        MethodArg::Brute => print_json(&magnification_brute(&a, &b)?),
        MethodArg::Flow => print_json(&magnification_flow(&a, &b)?),
        MethodArg::Both => {
            let (f, br) = (magnification_flow(&a, &b)?, magnification_brute(&a, &b)?);
            let agree = f.k == br.k;
            print_json(&json!({ "K": f.k, "X": f.x, "method": "both", "verified": f.verified && br.verified,
                "agree": agree, "flow": f, "brute": br }))?;
            if agree {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
    }
}

fn cover(sets: &Sets, order: OrderArg) -> Outcome {
    let (_, a) = group_and_set(sets, "a")?;
    let (_, b) = group_and_set(sets, "b")?;
    let order = match order {
        OrderArg::Canonical => ScanOrder::Canonical,
        OrderArg::Reverse => ScanOrder::Reverse,
    };
    let cert = ruzsa_cover_with_order(&a, &b, order)?;
    print_json(&cert)?;
    if cert.is_valid() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn rational(flag: &str, v: &Option<String>) -> Result<Option<Rational>, Failure> {
    v.as_deref()
        .map(|s| s.parse::<Rational>().map_err(|e| Failure::Input(format!("--{flag}: {e}"))))
        .transpose()
}

fn any_failed(reports: &[TheoremReport]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail)
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    theorem: &str,
    sets: &Sets,
    h: Option<u32>,
    k: Option<u32>,
    l: Option<u32>,
    signs: &Option<String>,
    alpha: &Option<String>,
    beta: &Option<String>,
    gamma: &Option<String>,
    allow_large: bool,
) -> Outcome {
    let theorem: TheoremId = theorem.parse()?;
    let g = Group::parse(&sets.group)?;
    let inst = Instance { a: optional(&g, &sets.a)?, b: optional(&g, &sets.b)?, c: optional(&g, &sets.c)? };
    let signs = signs.as_deref().map(Sign::parse_list).transpose()?;
    let verifier = Verifier {
        alpha: rational("alpha", alpha)?,
        beta: rational("beta", beta)?,
        gamma: rational("gamma", gamma)?,
        allow_large,
        mutation: false,
    };
    let reports = verifier.run(theorem, &inst, &TheoremParams { h, k, l, signs })?;
    if let [one] = reports.as_slice() {
        print_json(one)?;
    } else {
        print_json(&reports)?;
    }
    if any_failed(&reports) {
        Err(Failure::Violation)
    } else {
        Ok(())
    }
}

macro_rules! outln {
    ($out:ident, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        let _ = writeln!($out, $($arg)*);
    }};
}

fn gallery(h: u32, format: FormatArg) -> Outcome {
    let counter = verify::gallery_counterexample()?;
    let sharp = Verifier::default().run(TheoremId::GallerySharpness, &Instance::default(), &TheoremParams {
        h: Some(h),
        ..TheoremParams::default()
    })?;
    let mut out = String::new();
    match format {
        FormatArg::Json => print_json(&json!({ "counterexample": counter, "sharpness": sharp }))?,
        FormatArg::Csv => {
            outln!(out, "construction,instance,h,actual,bound,slack,status");
            outln!(out, 
                "counterexample,sym:6,,{},{},{},{}",
                counter.actual,
                counter.bound,
                counter.slack,
                status(&counter)
            );
            for r in &sharp {
                outln!(out, 
                    "sharpness,{},{},{},{},{},{}",
                    r.params["instance"].as_str().unwrap_or(""),
                    r.params["h"],
                    r.actual,
                    r.bound,
                    r.slack,
                    status(r)
                );
            }
        }
        FormatArg::Text => {
            let p = &counter.params;
            outln!(out, "counterexample in sym:6: H = Sym{{1,2,3}}, x = (1 4)(2 5)(3 6), A = H u {{x}}");
            outln!(out, 
                "  |H| = {}  |HxH| = {}  |A| = {}  |AA| = {} (<= 3|A| = {})  |AAA| = {} (>= (|A|-1)^2 = {})  {}",
                p["h_size"],
                p["hxh_size"],
                counter.reference_size,
                p["aa_size"],
                3 * counter.reference_size,
                counter.actual,
                counter.bound,
                status(&counter)
            );
            outln!(out, "sharpness: A a subgroup, B generic points in distinct cosets");
            outln!(out, "  {:<12} {:>2} {:>8} {:>14} {:>10} {:>10}  status", "instance", "h", "|A+hB|", "binomial|X|", "bound", "slack");
            for r in &sharp {
                outln!(out, 
                    "  {:<12} {:>2} {:>8} {:>14} {:>10} {:>10}  {}",
                    r.params["instance"].as_str().unwrap_or(""),
                    r.params["h"].to_string(),
                    r.actual,
                    r.params["binomial_size"].to_string(),
                    r.bound.to_string(),
                    r.slack.to_sig_string(6),
                    status(r)
                );
            }
        }
    }
    if !out.is_empty() {
        print_text(out.trim_end());
    }
    if any_failed(&sharp) || counter.status == Status::Fail {
        Err(Failure::Violation)
    } else {
        Ok(())
    }
}

fn status(r: &TheoremReport) -> &'static str {
    match r.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::HypothesisNotMet => "hypothesis not met",
    }
}

fn fuzz(
    path: &PathBuf,
    seed: Option<u64>,
    trials: Option<u64>,
    jobs: Option<usize>,
    format: FormatArg,
    output: &Option<PathBuf>,
) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut config = ExperimentConfig::from_toml(&text)?;
    config.apply(&Overrides { seed, trials, jobs })?;
    let summary = run_fuzz(&config)?;
    let format = match format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Text => Format::Text,
    };
    let doc = emit_report(&summary, format)?;
    match output {
        Some(p) => fs::write(p, doc + "\n").map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => print_text(&doc),
    }
    if summary.violation_count() > 0 {
        Err(Failure::Violation)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Ratio { sets, method } => ratio(sets, *method),
        Command::Cover { sets, order } => cover(sets, *order),
        Command::Verify { theorem, sets, h, k, l, signs, alpha, beta, gamma, allow_large } => {
            verify_cmd(theorem, sets, *h, *k, *l, signs, alpha, beta, gamma, *allow_large)
        }
        Command::Gallery { h, format } => gallery(*h, *format),
        Command::Fuzz { config, seed, trials, jobs, format, output } => fuzz(config, *seed, *trials, *jobs, *format, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(2),
        Err(Failure::Input(msg)) => {
            eprintln!("setcalc: {msg}");
            ExitCode::from(3)
        }
    }
}
