use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use gvb_core::braided::{builtin_by_name, check_axioms, prop_vic_report, BraidedAlgebra};
use gvb_core::perm::{bubble_decompose, enumerate_shuffles};
use gvb_core::qshuffle::{qqs_inductive, qqs_section, quantum_shuffle, verify_theorem_upto};
use gvb_core::qthat::{check_gvb_relations, fundamental_pair, pair_reports, Assignment};
use gvb_core::section::{recursion_check, section_table, SectionKind};
use gvb_core::verify::{run, Group, VerifyConfig};
use gvb_core::{Exec, VerificationReport};
use serde_json::json;

/// Generalized virtual braid words and quantum quasi-shuffle products.
#[derive(Parser)]
#[command(name = "gvb", version)]
struct Cli {
    /// Worker threads for the parallel sweeps.
    #[arg(long, global = true, env = "GVB_WORKERS")]
    workers: Option<usize>,
    /// Run every sweep on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the (p,q)-shuffles with their bubble profiles.
    Shuffles {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Print the section values over all (p,q)-shuffles.
    Section {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value = "q", value_parser = parse_kind)]
        kind: SectionKind,
        /// Also check the shuffle recursion identity for this (p,q).
        #[arg(long)]
        check_recursion: bool,
    },
    /// Check the braided algebra axioms.
    Axioms {
        /// Built-in name (e.g. `qpoly:4`) or path to a JSON spec.
        #[arg(long)]
        algebra: String,
    },
    /// Multiply two pure tensors written as comma-separated labels.
    Product {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value_t = ProductMode::Inductive)]
        mode: ProductMode,
    },
    /// Compare the inductive product with the section formula up to a total degree.
    VerifyTheorem {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value_t = 2013)]
        seed: u64,
        /// Largest input count compared exhaustively before sampling.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Check the R-matrix and twist representation on tensor powers.
    VerifyGvbRep {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        strands: usize,
        #[arg(long, value_enum, default_value_t = AssignmentArg::Swapped)]
        assignment: AssignmentArg,
        /// Write the generator matrices as JSON to this file.
        #[arg(long)]
        export_matrices: Option<PathBuf>,
    },
    /// Run the verification groups and stream one JSON report per line.
    VerifyAll {
        /// Comma-separated groups; `literal` is only run when named.
        #[arg(long, value_delimiter = ',')]
        only: Vec<Group>,
        #[arg(long, requires = "q")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        q: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value_t = 2013)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4])]
        strands: Vec<usize>,
        /// Restrict the algebra-dependent groups to these algebras.
        #[arg(long)]
        algebra: Vec<String>,
    },
    /// Print an algebra as a JSON spec.
    AlgebraExport {
        #[arg(long)]
        algebra: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductMode {
    Inductive,
    Section,
    Shuffle,
}

#[derive(Clone, Copy, ValueEnum)]
enum AssignmentArg {
    /// σ ↦ Ř, ξ ↦ F̌.
    Standard,
    /// σ ↦ F̌, ξ ↦ Ř.
    Swapped,
}

fn parse_kind(s: &str) -> Result<SectionKind, String> {
    s.parse()
        .map_err(|_| format!("unknown section kind `{s}` (expected q, t or v)"))
}

/// Input the user got wrong; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn load_algebra(arg: &str) -> anyhow::Result<BraidedAlgebra> {
    if let Some(a) = builtin_by_name(arg) {
        return Ok(a);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(usage(format!(
            "`{arg}` is neither a built-in algebra nor a file"
        )));
    }
    BraidedAlgebra::load(path).map_err(|e| usage(format!("{arg}: {e}")))
}

fn emit(r: &VerificationReport) -> bool {
    println!("{}", serde_json::to_string(r).expect("reports serialize"));
    r.pass
}

fn emit_all(reports: impl IntoIterator<Item = VerificationReport>) -> bool {
    let mut ok = true;
    for r in reports {
        ok &= emit(&r);
    }
    ok
}

fn execute(cli: Cli) -> anyhow::Result<bool> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    match cli.command {
        Command::Shuffles { p, q } => {
            let shuffles: Vec<_> = enumerate_shuffles(p, q)
                .into_iter()
                .map(|s| {
                    let bd = bubble_decompose(&s);
                    json!({ "images": s.images(), "reduced_word": s.reduced_word(), "profile": (1..p + q).map(|k| bd.t(k)).collect::<Vec<_>>() })
                })
                .collect();
            println!(
                "{}",
                json!({ "p": p, "q": q, "count": shuffles.len(), "shuffles": shuffles })
            );
            Ok(true)
        }
        Command::Section {
            p,
            q,
            kind,
            check_recursion,
        } => {
            println!("{}", serde_json::to_string(&section_table(p, q, kind))?);
            if check_recursion {
                let ok = recursion_check(p, q);
                println!("{}", json!({ "recursion": { "p": p, "q": q, "pass": ok } }));
                return Ok(ok);
            }
            Ok(true)
        }
        Command::Axioms { algebra } => {
            let a = load_algebra(&algebra)?;
            let mut reports = check_axioms(&a, exec);
            reports.push(prop_vic_report(&a, exec));
            Ok(emit_all(reports))
        }
        Command::Product {
            algebra,
            left,
            right,
            mode,
        } => {
            let a = load_algebra(&algebra)?;
            let x = a.parse_pure(&left).map_err(|e| usage(e.to_string()))?;
            let y = a.parse_pure(&right).map_err(|e| usage(e.to_string()))?;
            let z = match mode {
                ProductMode::Inductive => qqs_inductive(&a, &x, &y),
                ProductMode::Section => qqs_section(&a, &x, &y),
                ProductMode::Shuffle => quantum_shuffle(&a, &x, &y),
            }
            .map_err(|e| usage(e.to_string()))?;
            println!("{}", a.display(&z));
            Ok(true)
        }
        Command::VerifyTheorem {
            algebra,
            max_degree,
            seed,
            cap,
            samples,
        } => {
            let a = load_algebra(&algebra)?;
            Ok(emit_all(verify_theorem_upto(
                &a, max_degree, cap, samples, seed, exec,
            )))
        }
        Command::VerifyGvbRep {
            rank,
            strands,
            assignment,
            export_matrices,
        } => {
            if rank == 0 || strands < 2 {
                return Err(usage("need --rank ≥ 1 and --strands ≥ 2"));
            }
            let assignment = match assignment {
                AssignmentArg::Standard => Assignment::Standard,
                AssignmentArg::Swapped => Assignment::Swapped,
            };
            let (rcheck, fcheck, _) = fundamental_pair(rank);
            let g = assignment.generators(strands, &rcheck, &fcheck)?;
            if let Some(path) = export_matrices {
                let export = json!({
                    "strands": strands,
                    "dim": g.d,
                    "sigma": g.sigma.iter().map(|m| m.to_export()).collect::<Vec<_>>(),
                    "xi": g.xi.iter().map(|m| m.to_export()).collect::<Vec<_>>(),
                });
                std::fs::write(&path, serde_json::to_string_pretty(&export)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let ok = emit_all(pair_reports(rank)?);
            Ok(emit_all(check_gvb_relations(&g, exec)) && ok)
        }
        Command::VerifyAll {
            only,
            p,
            q,
            max_degree,
            seed,
            strands,
            algebra,
        } => {
            let mut cfg = VerifyConfig {
                max_degree,
                seed,
                strands,
                ..VerifyConfig::default()
            };
            if let (Some(p), Some(q)) = (p, q) {
                cfg.only_pq = Some((p, q));
            }
            if !algebra.is_empty() {
                cfg.algebras = algebra
                    .iter()
                    .map(|a| load_algebra(a))
                    .collect::<anyhow::Result<_>>()?;
            }
            let groups = if only.is_empty() {
                Group::DEFAULT.to_vec()
            } else {
                only
            };
            let mut ok = true;
            run(&groups, &cfg, exec, |r| ok &= emit(&r))?;
            Ok(ok)
        }
        Command::AlgebraExport { algebra } => {
            println!("{}", load_algebra(&algebra)?.to_json());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
