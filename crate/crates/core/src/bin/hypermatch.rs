use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hypermatch::campaign::{verify_threshold_campaign, Verdict};
use hypermatch::exact::{matching_number, SolveStatus, SolverBudget};
use hypermatch::format::{read_khg, write_khg};
use hypermatch::generators::{barrier, planted_extremal, random_with_min_codegree};
use hypermatch::greedy::greedy_matching;
use hypermatch::{matching_at_least_delta, near_perfect_matching, Branch, Error, PipelineConfig, RunReport};

#[derive(Parser)]
#[command(name = "hypermatch", version, about = "Matchings in k-uniform hypergraphs")]
struct Cli {
    /// Write a JSON report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct SolverArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node limit for each exact search.
    #[arg(long, default_value_t = 10_000_000)]
    node_limit: u64,
    /// Time limit in seconds for each exact search.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Do not fall back to the exact solver.
    #[arg(long)]
    no_fallback: bool,
}

impl SolverArgs {
    fn config(&self) -> Result<PipelineConfig, Error> {
        if self.time_limit.is_nan() || self.time_limit <= 0.0 {
            return Err(Error::BadParameters("time limit must be positive".into()));
        }
        Ok(PipelineConfig {
            gamma: self.gamma,
            epsilon: self.epsilon,
            budget: SolverBudget::new(Some(self.node_limit), Some(Duration::from_secs_f64(self.time_limit)))?,
            seed: self.seed,
            fallback_to_exact: !self.no_fallback,
            ..Default::default()
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Greedy,
    Pipeline,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Barrier,
    Random,
    Planted,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum d-degree of a hypergraph (codegree by default).
    Degree {
        file: PathBuf,
        #[arg(short)]
        d: Option<usize>,
    },
    /// Find a matching.
    Match {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Pipeline)]
        method: Method,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Generate an instance.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        /// Barrier side size; defaults to ⌊n/k⌋ - 1.
        #[arg(long)]
        d: Option<usize>,
        /// Codegree floor of random instances; defaults to ⌊n/k⌋.
        #[arg(long)]
        target: Option<usize>,
        /// Deletion attempts for random instances; all edges by default.
        #[arg(long)]
        max_tries: Option<usize>,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        noise: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        o: PathBuf,
    },
    /// Threshold verification campaign.
    Verify {
        #[arg(long)]
        k: usize,
        /// Comma separated orders.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000_000)]
        node_limit: u64,
    },
    /// Matching of size at least the minimum codegree, below n/k.
    ReduceCorollary {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Precondition(_) | Error::Infeasible { .. } | Error::DivisibleOrder { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), Error> {
    if let Some(p) = path {
        std::fs::write(p, serde_json::to_string_pretty(value).expect("json"))?;
    }
    Ok(())
}

fn write_report(path: &Option<PathBuf>, report: &RunReport) -> Result<(), Error> {
    if let Some(p) = path {
        report.write_json(p)?;
    }
    Ok(())
}

fn print_report(report: &RunReport) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "method={} branch={} success={} size={} target={} uncovered={}",
        report.method,
        report.branch.as_str(),
        report.success,
        report.matching_size,
        report.target,
        report.uncovered
    );
    for e in &report.matching {
        let _ = writeln!(out, "  {e:?}");
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Degree { file, d } => {
            let h = read_khg(&file)?;
            let d = d.unwrap_or(h.k() - 1);
            let min = h.min_d_degree(d)?;
            println!("k={} n={} edges={} d={} min_degree={}", h.k(), h.n(), h.edge_count(), d, min);
            write_json(
                &cli.json,
                &json!({"k": h.k(), "n": h.n(), "edges": h.edge_count(), "d": d, "min_degree": min}),
            )?;
            Ok(Outcome::Ok)
        }
        Command::Match { file, method, solver } => {
            let h = read_khg(&file)?;
            let cfg = solver.config()?;
            let mut report = match method {
                Method::Pipeline => near_perfect_matching(&h, &cfg),
                Method::Greedy => {
                    let start = Instant::now();
                    let m = greedy_matching(&h);
                    let target = h.min_codegree().min(h.n() / h.k());
                    let mut r = RunReport::new(&h, "greedy", target, cfg.seed);
                    r.set_matching(&h, &m);
                    r.branch = Branch::Greedy;
                    r.success = m.len() >= target;
                    r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    r
                }
                Method::Exact => {
                    let start = Instant::now();
                    let out = matching_number(&h, cfg.budget);
                    let mut r = RunReport::new(&h, "exact", h.n() / h.k(), cfg.seed);
                    if let Some(m) = &out.payload {
                        r.set_matching(&h, m);
                    }
                    r.bump("exact_nodes", out.nodes);
                    r.branch = Branch::Exact;
                    r.success = out.status == SolveStatus::Optimal;
                    if !r.success {
                        r.warnings.push("budget exhausted; size is a lower bound".into());
                    }
                    r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    r
                }
            };
            report.instance.label = file.display().to_string();
            print_report(&report);
            write_report(&cli.json, &report)?;
            Ok(if report.success { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Gen { kind, k, n, d, target, max_tries, epsilon, noise, seed, o } => {
            let (h, extra) = match kind {
                Kind::Barrier => {
                    let d = d.unwrap_or((n / k.max(1)).saturating_sub(1));
                    (barrier(k, n, d)?, json!({"d": d}))
                }
                Kind::Random => {
                    let t = target.unwrap_or(n / k.max(1));
                    let tries = max_tries.unwrap_or(usize::MAX);
                    (random_with_min_codegree(k, n, t, seed, tries)?, json!({"target": t, "seed": seed}))
                }
                Kind::Planted => {
                    let p = planted_extremal(k, n, epsilon, noise, seed)?;
                    let extra = serde_json::to_value(&p).expect("json");
                    (p.hypergraph, extra)
                }
            };
            write_khg(&h, &o)?;
            println!(
                "wrote {} (k={} n={} edges={} min_codegree={})",
                o.display(),
                k,
                n,
                h.edge_count(),
                h.min_codegree()
            );
            write_json(
                &cli.json,
                &json!({"k": k, "n": n, "edges": h.edge_count(), "min_codegree": h.min_codegree(), "params": extra}),
            )?;
            Ok(Outcome::Ok)
        }
        Command::Verify { k, n_list, samples, seed, node_limit } => {
            if k < 2 {
                return Err(Error::BadParameters("k must be at least 2".into()));
            }
            let cfg = PipelineConfig { seed, budget: SolverBudget::new(Some(node_limit), None)?, ..Default::default() };
            let report = verify_threshold_campaign(k, &n_list, samples, &cfg);
            println!(
                "{:>4} {:>9} {:>9} {:>8} {:>8} {:>10} {:>11}  branches",
                "n", "instances", "confirmed", "refuted", "unknown", "successes", "exceptions"
            );
            for row in &report.rows {
                let hist: Vec<String> = row.branch_histogram.iter().map(|(b, c)| format!("{b}:{c}")).collect();
                println!(
                    "{:>4} {:>9} {:>9} {:>8} {:>8} {:>10} {:>11}  {}",
                    row.n,
                    row.instances,
                    row.exact_confirmed,
                    row.exact_refuted,
                    row.exact_unknown,
                    row.pipeline_successes,
                    row.finite_size_exceptions,
                    hist.join(" ")
                );
                if let Some(t) = &row.tightness {
                    let nu = t.matching_number.map_or("?".to_string(), |v| v.to_string());
                    println!(
                        "     tightness: barrier d={} min_codegree={} matching_number={}",
                        t.d, t.min_codegree, nu
                    );
                }
            }
            if !report.skipped_divisible.is_empty() {
                println!("skipped (k divides n): {:?}", report.skipped_divisible);
            }
            write_json(&cli.json, &serde_json::to_value(&report).expect("json"))?;
            let missed = report
                .rows
                .iter()
                .flat_map(|r| &r.records)
                .any(|rec| rec.exact != Verdict::Refuted && !rec.pipeline_success);
            Ok(if missed { Outcome::Failed } else { Outcome::Ok })
        }
        Command::ReduceCorollary { file, solver } => {
            let h = read_khg(Path::new(&file))?;
            let mut report = matching_at_least_delta(&h, &solver.config()?)?;
            report.instance.label = file.display().to_string();
            if let Some(red) = &report.reduction {
                println!(
                    "c={} r={} case={} dummies={} reduced_n={}",
                    red.c, red.r, red.case, red.dummies, red.reduced_n
                );
            }
            print_report(&report);
            write_report(&cli.json, &report)?;
            Ok(if report.success { Outcome::Ok } else { Outcome::Failed })
        }
    }
}
