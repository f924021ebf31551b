//! `wdr`: analyze digraphs as weakly distance-regular structures, generate
//! the six classified Cayley families, verify the classification on concrete
//! instances, and run the exhaustive small-order census.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use wdr_core::{
    analyze, census, isomorphism, parse_digraph, verify_theorem, write_digraph, build_family,
    CensusConfig, FamilyId, FamilyVariant, GroupFamily, TheoremError, DEFAULT_ORDER_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "wdr",
    version,
    about = "Weakly distance-regular digraph analysis",
    long_about = "Analyze finite strongly connected digraphs as weakly distance-regular \
                  structures, construct the six classified Cayley families, and verify the \
                  classification on concrete instances.\n\nThe environment variable \
                  WDR_ISO_LIMIT overrides the canonical-form order limit (default 64)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Kv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GroupsArg {
    /// Cyclic groups Z_n.
    Cyclic,
    /// Products Z_m x Z_2.
    Z2,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a digraph file; exits 1 when it is not strongly connected.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Generate a member of one of the six families (i..vi).
    Generate {
        #[arg(long, value_parser = parse_family)]
        family: FamilyVariant,
        #[arg(long)]
        param: usize,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check the classification on a digraph. Exit codes: 0 pass,
    /// 1 theorem failure, 2 precondition failure.
    VerifyTheorem {
        file: PathBuf,
        /// Directory for the spanned subdigraph and quotient of every
        /// candidate I, each with a sidecar vertex-class mapping file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate Cayley digraphs up to isomorphism and check the theorem
    /// properties on every commutative thick weakly distance-regular
    /// instance. Exits 1 when any property violation is found.
    Census {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_valency: usize,
        #[arg(long, value_enum, default_value = "cyclic")]
        groups: GroupsArg,
        /// Worker threads for candidate evaluation.
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory for per-instance digraph and report files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide isomorphism of two digraph files. Exit codes: 0 isomorphic,
    /// 1 not isomorphic.
    Isomorphic {
        file1: PathBuf,
        file2: PathBuf,
        /// Print the vertex mapping when one is found.
        #[arg(short, long)]
        verbose: bool,
    },
}

fn parse_family(s: &str) -> Result<FamilyVariant, String> {
    FamilyVariant::from_str(s)
}

fn iso_limit() -> anyhow::Result<usize> {
    match std::env::var("WDR_ISO_LIMIT") {
        Ok(value) => value
            .parse()
            .with_context(|| format!("invalid WDR_ISO_LIMIT `{value}`")),
        Err(_) => Ok(DEFAULT_ORDER_LIMIT),
    }
}

fn load(path: &PathBuf) -> anyhow::Result<wdr_core::Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_digraph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn mapping_file(blocks: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for (idx, block) in blocks.iter().enumerate() {
        let members: Vec<String> = block.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("# block {idx}: {}\n", members.join(" ")));
    }
    out
}

/// Emits `delta_<I>.dg` / `quotient_<I>.dg` plus `.map` sidecars for every
/// candidate subset the verdict tried.
fn write_theorem_artifacts(
    dir: &PathBuf,
    verdict: &wdr_core::TheoremVerdict,
) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for attempt in &verdict.attempts {
        let key: Vec<String> = attempt.i_set.iter().map(|q| q.to_string()).collect();
        let key = key.join("-");
        fs::write(
            dir.join(format!("delta_i{key}.dg")),
            write_digraph(&attempt.delta.digraph),
        )?;
        let delta_blocks: Vec<Vec<usize>> =
            attempt.delta.vertices.iter().map(|&v| vec![v]).collect();
        fs::write(
            dir.join(format!("delta_i{key}.map")),
            mapping_file(&delta_blocks),
        )?;
        fs::write(
            dir.join(format!("quotient_i{key}.dg")),
            write_digraph(&attempt.quotient),
        )?;
        fs::write(
            dir.join(format!("quotient_i{key}.map")),
            mapping_file(&attempt.blocks),
        )?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Analyze { file, format } => {
            let g = load(&file)?;
            let report = analyze(&g);
            print!(
                "{}",
                match format {
                    OutputFormat::Text => report.render_text(),
                    OutputFormat::Kv => report.render_kv(),
                }
            );
            Ok(if report.strongly_connected {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Generate { family, param, out } => {
            let id = FamilyId::new(family, param);
            let g = build_family(id)?;
            let text = format!("# family {family}, parameter {param}\n{}", write_digraph(&g));
            match out {
                Some(path) => fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTheorem { file, out } => {
            let g = load(&file)?;
            match verify_theorem(&g, iso_limit()?) {
                Ok(verdict) => {
                    print!("{}", verdict.render_text());
                    if let Some(dir) = &out {
                        write_theorem_artifacts(dir, &verdict)?;
                    }
                    Ok(if verdict.pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    })
                }
                Err(e @ (TheoremError::NotStronglyConnected
                | TheoremError::NotWeaklyDistanceRegular
                | TheoremError::NotCommutative
                | TheoremError::NotThick
                | TheoremError::NoArcTypes)) => {
                    println!("precondition = {e}");
                    Ok(ExitCode::from(2))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Census {
            max_order,
            max_valency,
            groups,
            jobs,
            out,
        } => {
            let entries = census(&CensusConfig {
                max_order,
                max_valency,
                groups: match groups {
                    GroupsArg::Cyclic => GroupFamily::Cyclic,
                    GroupsArg::Z2 => GroupFamily::CyclicTimesZ2,
                },
                jobs,
                iso_limit: iso_limit()?.max(max_order),
            });
            if let Some(dir) = &out {
                fs::create_dir_all(dir)
                    .with_context(|| format!("creating {}", dir.display()))?;
            }
            let mut violations = 0usize;
            for (idx, entry) in entries.iter().enumerate() {
                println!("{idx:04} {}", entry.summary());
                for v in &entry.violations {
                    violations += 1;
                    println!("violation: {} {v}", entry.spec);
                }
                if let Some(dir) = &out {
                    let g = entry.spec.digraph().expect("census entries are valid");
                    let digraph_text =
                        format!("# {}\n{}", entry.spec, write_digraph(&g));
                    fs::write(dir.join(format!("{idx:04}.dg")), digraph_text)?;
                    let mut report = entry.report.render_text();
                    if let Some(verdict) = &entry.verdict {
                        report.push_str(&verdict.render_text());
                    }
                    fs::write(dir.join(format!("{idx:04}.report")), report)?;
                }
            }
            println!(
                "census: {} non-isomorphic instances, {} commutative thick wdr, {violations} violations",
                entries.len(),
                entries.iter().filter(|e| e.verdict.is_some()).count()
            );
            Ok(if violations == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Isomorphic {
            file1,
            file2,
            verbose,
        } => {
            let g1 = load(&file1)?;
            let g2 = load(&file2)?;
            match isomorphism(&g1, &g2, iso_limit()?)? {
                Some(mapping) => {
                    println!("isomorphic");
                    if verbose {
                        for (u, v) in mapping.iter().enumerate() {
                            println!("{u} -> {v}");
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not isomorphic");
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}
