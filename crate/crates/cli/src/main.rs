//! Batch front door for the decomposition library: decide instances, verify
//! certificates, run the SAT reduction pipeline, and generate graphs.
//!
//! Exit codes: 0 = YES/valid, 1 = NO/invalid, 2 = usage or input error,
//! 3 = budget exceeded.

mod files;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use decomp_core::exact::{solve, SolveOutcome, SolverConfig};
use decomp_core::poly::decide_family;
use decomp_core::reduce::{
    attach_cofish_all_marked, brute_sat, reduce_nae, reduce_one_in_three, saturate_nets,
    SatMode, SaturationOutcome, Stage,
};
use decomp_core::{verify_with, AllowedSet, Graph, NamedGraph};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "decomp",
    about = "Edge decompositions of cubic graphs into claws, triangles and paths",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph decomposes into the given shape family.
    Decide {
        /// Shape family: k13, k3, p4, k13k3, k3p4, k13p4 or all.
        #[arg(long)]
        family: String,
        /// Graph in edge format (`p edge N M`, then `e u v` lines).
        #[arg(long)]
        input: PathBuf,
        /// Optional marked-edge list (`m u v` lines); forces the exact
        /// solver with marked-edge constraints.
        #[arg(long)]
        marks: Option<PathBuf>,
        /// Use the exact solver even for families with polynomial deciders
        /// (also accepts graphs that are not connected and cubic).
        #[arg(long)]
        exact: bool,
        /// Node budget for the exact solver.
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads for the exact solver (default 1; the env var
        /// DECOMP_THREADS is the fallback).
        #[arg(long)]
        threads: Option<usize>,
        /// Write the YES certificate to this file instead of stdout.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Check a decomposition file against a graph.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
        /// Shape family the certificate must stay within (default all).
        #[arg(long, default_value = "all")]
        family: String,
        /// Optional marked-edge list to enforce the marked-instance rules.
        #[arg(long)]
        marks: Option<PathBuf>,
    },
    /// Reduce a monotone CNF formula to a decomposition instance.
    Reduce {
        /// Source problem: 1in3 (cubic monotone 1-in-3 SAT) or nae
        /// (monotone not-all-equal 3-SAT).
        #[arg(long)]
        from: String,
        /// DIMACS CNF with positive literals, three per clause.
        #[arg(long)]
        cnf: PathBuf,
        /// Pipeline stage to emit: marked, cubic-marked or final.
        #[arg(long)]
        stage: String,
        /// Output prefix; writes PREFIX.edg, PREFIX.marks and PREFIX.map.
        #[arg(long)]
        out: String,
    },
    /// Emit a named or random cubic graph in edge format.
    Gen {
        /// One of: k4, k33, cube, prism, petersen, diamond, cofish, net,
        /// claw, triangle, p4.
        #[arg(long, conflicts_with = "random")]
        name: Option<String>,
        /// Random connected cubic graph: N SEED.
        #[arg(long, num_args = 2, value_names = ["N", "SEED"])]
        random: Option<Vec<u64>>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force satisfiability of a monotone formula.
    Sat {
        /// Clause predicate: 1in3 or nae.
        #[arg(long)]
        mode: String,
        #[arg(long)]
        cnf: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Decide {
            family,
            input,
            marks,
            exact,
            budget,
            threads,
            certificate,
        } => {
            let g = files::parse_edg(&read(&input)?)?;
            let family = AllowedSet::parse_code(&family).map_err(|e| anyhow!("{e}"))?;
            let marks = marks
                .map(|p| files::parse_marks(&read(&p)?, &g))
                .transpose()?;
            let threads = threads
                .or_else(|| {
                    std::env::var("DECOMP_THREADS")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(1);
            if threads == 0 {
                bail!("--threads must be at least 1");
            }
            let cfg = SolverConfig {
                node_budget: budget.unwrap_or(u64::MAX).max(1),
                threads,
                ..SolverConfig::default()
            };
            let outcome = if exact || marks.is_some() {
                solve(&g, family, marks.as_ref(), &cfg)
            } else {
                decide_family(&g, family, &cfg).map_err(|e| {
                    anyhow!("{e} (pass --exact to search graphs outside the deciders' domain)")
                })?
            };
            match outcome {
                SolveOutcome::Found(d) => {
                    let report = verify_with(&g, &d, family, marks.as_ref());
                    if !report.valid {
                        bail!("internal error: certificate failed verification");
                    }
                    println!("YES");
                    let text = files::emit_decomposition(&d);
                    match certificate {
                        Some(path) => {
                            fs::write(&path, text)
                                .with_context(|| format!("writing {}", path.display()))?;
                            println!("certificate written to {}", path.display());
                        }
                        None => print!("{text}"),
                    }
                    Ok(0)
                }
                SolveOutcome::NoDecomposition => {
                    println!("NO");
                    Ok(1)
                }
                SolveOutcome::BudgetExceeded => {
                    println!("UNKNOWN (budget exceeded)");
                    Ok(3)
                }
            }
        }
        Command::Verify {
            input,
            decomposition,
            family,
            marks,
        } => {
            let g = files::parse_edg(&read(&input)?)?;
            let d = files::parse_decomposition(&read(&decomposition)?)?;
            let family = AllowedSet::parse_code(&family).map_err(|e| anyhow!("{e}"))?;
            let marks = marks
                .map(|p| files::parse_marks(&read(&p)?, &g))
                .transpose()?;
            let report = verify_with(&g, &d, family, marks.as_ref());
            if report.valid {
                println!(
                    "VALID ({} parts: {} claws, {} triangles, {} paths)",
                    d.len(),
                    report.stats.claws,
                    report.stats.triangles,
                    report.stats.paths
                );
                Ok(0)
            } else {
                println!("INVALID");
                for v in &report.violations {
                    println!("  {v}");
                }
                Ok(1)
            }
        }
        Command::Reduce {
            from,
            cnf,
            stage,
            out,
        } => {
            let phi = files::parse_cnf(&read(&cnf)?)?;
            let (mut inst, mut map) = match from.as_str() {
                "1in3" => reduce_one_in_three(&phi).map_err(|e| anyhow!("{e}"))?,
                "nae" => reduce_nae(&phi).map_err(|e| anyhow!("{e}"))?,
                other => bail!("unknown reduction source {other:?} (expected 1in3 or nae)"),
            };
            if stage != "marked" {
                match saturate_nets(&inst).map_err(|e| anyhow!("{e}"))? {
                    SaturationOutcome::Cubic { instance, nets } => {
                        inst = instance;
                        map.nets = nets;
                        map.stage = Stage::CubicMarked;
                    }
                    SaturationOutcome::TriviallyNo { degree_two_left } => {
                        println!(
                            "TRIVIALLY-NO ({degree_two_left} degree-2 vertices remain after saturation)"
                        );
                        return Ok(1);
                    }
                }
            }
            let (graph, marks, target) = match stage.as_str() {
                "marked" | "cubic-marked" => (inst.graph.clone(), inst.marks.clone(), "all"),
                "final" => {
                    let (g, records) =
                        attach_cofish_all_marked(&inst).map_err(|e| anyhow!("{e}"))?;
                    map.cofish = records;
                    map.stage = Stage::Final;
                    // The appendix pipeline lands in the full family, the
                    // main one in claws+paths.
                    let target = if from == "nae" { "all" } else { "k13p4" };
                    (g, Default::default(), target)
                }
                other => bail!("unknown stage {other:?} (expected marked, cubic-marked or final)"),
            };
            fs::write(format!("{out}.edg"), files::emit_edg(&graph))?;
            fs::write(format!("{out}.marks"), files::emit_marks(&marks))?;
            fs::write(format!("{out}.map"), files::emit_map(&map))?;
            println!(
                "wrote {out}.edg ({} vertices, {} edges), {out}.marks ({} marks), {out}.map; decide with --family {target}",
                graph.n(),
                graph.edge_count(),
                marks.len()
            );
            Ok(0)
        }
        Command::Gen { name, random, out } => {
            let g = match (name, random) {
                (Some(name), None) => {
                    let which: NamedGraph = name.parse().map_err(|e| anyhow!("{e}"))?;
                    Graph::named(which)
                }
                (None, Some(args)) => {
                    let n = usize::try_from(args[0]).context("vertex count out of range")?;
                    Graph::random_cubic(n, args[1]).map_err(|e| anyhow!("{e}"))?
                }
                _ => bail!("exactly one of --name or --random is required"),
            };
            let text = files::emit_edg(&g);
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Sat { mode, cnf } => {
            let phi = files::parse_cnf(&read(&cnf)?)?;
            if phi.vars() > 24 {
                bail!("brute-force oracle handles at most 24 variables");
            }
            let mode = match mode.as_str() {
                "1in3" => SatMode::OneInThree,
                "nae" => SatMode::NotAllEqual,
                other => bail!("unknown mode {other:?} (expected 1in3 or nae)"),
            };
            match brute_sat(&phi, mode) {
                Some(a) => {
                    println!("SAT");
                    let lits: Vec<String> = a
                        .0
                        .iter()
                        .enumerate()
                        .map(|(i, &b)| {
                            if b {
                                format!("{}", i + 1)
                            } else {
                                format!("-{}", i + 1)
                            }
                        })
                        .collect();
                    println!("v {} 0", lits.join(" "));
                    Ok(0)
                }
                None => {
                    println!("UNSAT");
                    Ok(1)
                }
            }
        }
    }
}
