use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use semix_core::{run_scenario, Report, RunOptions, Scenario};

#[derive(Parser)]
#[command(
    name = "semix",
    about = "Invariants, orbit divisors and minimal models of mixed quotient surfaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonFlags {
    /// Emit the full report as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Cap on enumerated generating vectors in search modes.
    #[arg(long, default_value_t = 1_000_000)]
    limit: usize,
    /// Thread-pool size (suite parallelism); 0 picks the default.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Include wall-clock timing in reports (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a scenario and assemble its surface data.
    Validate {
        scenario: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Print numerical invariants (genus, q, chi, K^2, branch locus).
    Invariants {
        scenario: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Print the orbit-divisor tables with intersection numbers.
    Divisors {
        scenario: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Print the (-1)-curves and their disjointness.
    Exceptional {
        scenario: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Print the verified lifts of the datum.
    Lift {
        scenario: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Run the full pipeline and check the expected block.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Run every scenario in a directory; fails if any expected block fails.
    Suite {
        #[arg(default_value = "scenarios")]
        dir: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { scenario, flags } => stage(&scenario, &flags, print_validate),
        Command::Invariants { scenario, flags } => stage(&scenario, &flags, print_invariants),
        Command::Divisors { scenario, flags } => stage(&scenario, &flags, print_divisors),
        Command::Exceptional { scenario, flags } => stage(&scenario, &flags, print_exceptional),
        Command::Lift { scenario, flags } => stage(&scenario, &flags, print_lift),
        Command::Run { scenario, flags } => {
            let report = execute(&scenario, &flags)?;
            if flags.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_table());
            }
            Ok(report.expected_ok)
        }
        Command::Suite { dir, flags } => suite(&dir, &flags),
    }
}

fn options(flags: &CommonFlags) -> RunOptions {
    RunOptions {
        limit: flags.limit,
        timing: flags.timing,
    }
}

fn init_threads(flags: &CommonFlags) {
    if flags.threads > 0 {
        // ignore the error when a pool already exists (tests call this twice)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(flags.threads)
            .build_global();
    }
}

fn execute(path: &Path, flags: &CommonFlags) -> Result<Report> {
    init_threads(flags);
    let sc = Scenario::load(path).with_context(|| format!("loading {}", path.display()))?;
    let report = run_scenario(&sc, &options(flags))
        .with_context(|| format!("running scenario `{}`", sc.name))?;
    Ok(report)
}

/// Runs the pipeline and prints one stage of the report. The stage commands
/// succeed when data assembled; only `run`/`suite` check the expected block.
fn stage(path: &Path, flags: &CommonFlags, printer: fn(&Report)) -> Result<bool> {
    let report = execute(path, flags)?;
    if flags.json {
        print!("{}", report.to_json());
    } else {
        printer(&report);
    }
    Ok(!report.data.is_empty())
}

fn print_validate(r: &Report) {
    println!("scenario {} ({})", r.scenario, r.mode);
    println!("group: order {}", r.group_order);
    let extra = if r.truncated { ", truncated" } else { "" };
    println!(
        "data: {} valid of {} examined{}",
        r.data.len(),
        r.candidates_examined,
        extra
    );
    for (i, d) in r.data.iter().enumerate() {
        println!(
            "datum {}: subgroup order {}, tau' = {}, type {}",
            i + 1,
            d.g0_order,
            d.tau_prime,
            d.signature
        );
        for [a, b] in &d.hyperbolic {
            println!("  hyperbolic pair: {a}, {b}");
        }
        for c in &d.branch_entries {
            println!("  branch entry: {c}");
        }
    }
}

fn print_invariants(r: &Report) {
    println!("scenario {} ({})", r.scenario, r.mode);
    for (i, d) in r.data.iter().enumerate() {
        println!(
            "datum {}: g(C) = {}  q = {}  chi = {}  K^2 = {}",
            i + 1,
            d.genus,
            d.q,
            d.chi,
            d.k2
        );
        println!("  branch locus: {}", d.branch_locus);
        for b in &d.branch_components {
            println!(
                "    {}: genus {}, self-intersection {}, class size {}",
                b.rep, b.genus, b.self_int, b.class_size
            );
        }
    }
}

fn print_divisors(r: &Report) {
    println!("scenario {} ({})", r.scenario, r.mode);
    for (i, d) in r.data.iter().enumerate() {
        for a in &d.analyses {
            println!(
                "datum {}: cover order {}, type {}{}",
                i + 1,
                a.cover_order,
                a.cover_signature,
                if a.lifted { " (lifted)" } else { "" }
            );
            println!(
                "  {} orbit divisors ({} non-branch, {} branch)",
                a.orbit_count, a.non_branch_count, a.branch_count
            );
            for o in &a.orbits {
                println!(
                    "  {:<12} n={:<3} {} D^2={:<4} K.D={:<4} pa={}",
                    o.rep,
                    o.n,
                    if o.branch { "branch" } else { "graph " },
                    o.d2,
                    o.kd,
                    o.pa
                );
            }
        }
    }
}

fn print_exceptional(r: &Report) {
    println!("scenario {} ({})", r.scenario, r.mode);
    for (i, d) in r.data.iter().enumerate() {
        for a in &d.analyses {
            let what = if a.exceptional.is_empty() {
                "minimal: no (-1)-curves".to_string()
            } else {
                let tail = match a.exceptional_disjoint {
                    Some(true) => " (pairwise disjoint)",
                    Some(false) => " (not pairwise disjoint)",
                    None => "",
                };
                format!("(-1)-curves: {}{}", a.exceptional.join(", "), tail)
            };
            println!(
                "datum {}: cover order {}: {}  K^2_min = {}",
                i + 1,
                a.cover_order,
                what,
                a.k2_min
            );
        }
    }
}

fn print_lift(r: &Report) {
    println!("scenario {} ({})", r.scenario, r.mode);
    for (i, d) in r.data.iter().enumerate() {
        match &d.lift_note {
            Some(note) => println!("datum {}: {}", i + 1, note),
            None => println!("datum {}: no lift directive applied", i + 1),
        }
        for a in d.analyses.iter().filter(|a| a.lifted) {
            println!(
                "  lifted cover: order {}, type {}",
                a.cover_order, a.cover_signature
            );
        }
    }
}

fn suite(dir: &Path, flags: &CommonFlags) -> Result<bool> {
    init_threads(flags);
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    if paths.is_empty() {
        bail!("no scenario files in {}", dir.display());
    }
    paths.sort();

    let opts = options(flags);
    let mut reports: Vec<(String, Result<Report>)> = paths
        .par_iter()
        .map(|p| {
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let r = Scenario::load(p)
                .map_err(anyhow::Error::from)
                .and_then(|sc| run_scenario(&sc, &opts).map_err(anyhow::Error::from));
            (name, r)
        })
        .collect();
    reports.sort_by(|a, b| a.0.cmp(&b.0));

    let mut all_ok = true;
    if flags.json {
        let mut body = String::from("[\n");
        for (i, (name, r)) in reports.iter().enumerate() {
            match r {
                Ok(rep) => {
                    all_ok &= rep.expected_ok;
                    let json = rep.to_json();
                    body.push_str(json.trim_end());
                }
                Err(e) => {
                    all_ok = false;
                    body.push_str(&format!(
                        "{{\n  \"scenario\": {name:?},\n  \"error\": {:?}\n}}",
                        format!("{e:#}")
                    ));
                }
            }
            body.push_str(if i + 1 < reports.len() { ",\n" } else { "\n" });
        }
        body.push_str("]\n");
        print!("{body}");
    } else {
        let mut passed = 0usize;
        for (name, r) in &reports {
            match r {
                Ok(rep) => {
                    print!("{}", rep.to_table());
                    println!();
                    if rep.expected_ok {
                        passed += 1;
                    } else {
                        all_ok = false;
                    }
                }
                Err(e) => {
                    println!("scenario {name}: error: {e:#}");
                    println!();
                    all_ok = false;
                }
            }
        }
        println!(
            "suite: {} scenario{}, {} passed, {} failed",
            reports.len(),
            if reports.len() == 1 { "" } else { "s" },
            passed,
            reports.len() - passed
        );
    }
    Ok(all_ok)
}
