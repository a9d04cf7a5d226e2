use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use twistcert::format::{parse_family, parse_group, parse_instance, parse_module};
use twistcert::report::{
    to_json, AdmissibleReport, BatchItem, CohomologyReport, ErrorReport, OracleReport, ShaReport, VerdictReport,
};
use twistcert::suite::{run_suite, SuiteOptions};
use twistcert_core::cohomology::{cohomology, default_family, sha_finite};
use twistcert_core::lgp::decide;
use twistcert_core::oracle::{brute_h1, brute_h2, brute_sha, OracleBudget, DEFAULT_BUDGET};
use twistcert_core::VerdictStatus;

const EXIT_HOLDS: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;

#[derive(Parser)]
#[command(name = "twistcert")]
#[command(about = "Finite group cohomology and local-global certificates for m-atic twists")]
#[command(version)]
struct Cli {
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance file, or every *.json file in a directory
    Decide {
        path: PathBuf,
    },
    /// Compute H^n(G, M) for n in {0, 1, 2}
    Cohomology {
        /// Group name (e.g. S3, C2xC4) or JSON document; @FILE reads a file
        #[arg(long)]
        group: String,
        /// Module JSON document; @FILE reads a file
        #[arg(long)]
        module: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        degree: u8,
        /// Cross-check with brute-force enumeration
        #[arg(long)]
        oracle: bool,
        /// Node cap for the enumeration
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Classes of H^1(G, M) that vanish on every subgroup of a family
    Sha {
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: String,
        /// cyclic, all, trivial, whole, or a JSON list of element lists
        #[arg(long, default_value = "cyclic")]
        family: String,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// List odd m >= 3 with phi(m) | 2g
    AdmissibleM {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        genus: u64,
    },
    /// Recompute the published tables and examples
    VerifyPaper {
        /// Run only checks whose id or tag contains this text
        filter: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        budget: Option<u64>,
        /// Replace an expected admissible list, as G=M1,M2,...
        #[arg(long, hide = true)]
        expect_admissible: Vec<String>,
    },
}

fn read_arg(value: &str) -> Result<String> {
    match value.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(value.to_string()),
    }
}

/// Writes to stdout, treating a closed pipe as the reader being done.
fn out(text: &str) {
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn emit(json: bool, text: String, json_text: String) {
    if json {
        out(&format!("{json_text}\n"));
    } else {
        out(&text);
    }
}

fn instance_files(path: &Path) -> Result<Vec<PathBuf>> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .with_context(|| format!("reading directory {}", path.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"));
    files.sort();
    Ok(files)
}

fn decide_file(path: &Path) -> Result<VerdictReport> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let instance = parse_instance(&text).with_context(|| format!("parsing {}", path.display()))?;
    let verdict = decide(&instance).with_context(|| format!("deciding {}", path.display()))?;
    Ok(VerdictReport::new(Some(path.display().to_string()), &verdict))
}

fn run_decide(path: &Path, json: bool) -> Result<u8> {
    let batch = path.is_dir();
    let files = instance_files(path)?;
    if batch && files.is_empty() {
        bail!("no .json instance files in {}", path.display());
    }
    let mut items = Vec::new();
    let mut code = EXIT_HOLDS;
    for file in &files {
        match decide_file(file) {
            Ok(report) => {
                if report.status == VerdictStatus::Unknown.as_str() && code == EXIT_HOLDS {
                    code = EXIT_UNKNOWN;
                }
                items.push(BatchItem::Verdict(report));
            }
            Err(e) if batch => {
                code = EXIT_ERROR;
                items.push(BatchItem::Error(ErrorReport { source: file.display().to_string(), error: format!("{e:#}") }));
            }
            Err(e) => return Err(e),
        }
    }
    if json {
        match (batch, items.as_slice()) {
            (false, [item]) => out(&format!("{}\n", to_json(item))),
            _ => out(&format!("{}\n", to_json(&items))),
        }
    } else {
        for item in &items {
            match item {
                BatchItem::Verdict(v) => out(&v.render()),
                BatchItem::Error(e) => out(&format!("== {}\nERROR: {}\n", e.source, e.error)),
            }
        }
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Decide { path } => run_decide(&path, cli.json),
        Command::Cohomology { group, module, degree, oracle, budget } => {
            let g = parse_group(&read_arg(&group)?)?;
            let m = parse_module(&g, &read_arg(&module)?)?;
            let h = cohomology(&m, degree as usize)?;
            let check = oracle.then(|| {
                let budget = OracleBudget { max_functions: budget };
                let brute = match degree {
                    1 => brute_h1(&m, budget).map_err(|e| e.to_string()),
                    2 => brute_h2(&m, budget).map_err(|e| e.to_string()),
                    _ => Ok(h.module().invariants().orders().to_vec()),
                };
                OracleReport::new(h.invariant_factors(), brute)
            });
            let report = CohomologyReport::new(&h, check);
            emit(cli.json, report.render(), to_json(&report));
            Ok(if report.oracle_disagrees() { EXIT_ERROR } else { EXIT_HOLDS })
        }
        Command::Sha { group, module, family, oracle, budget } => {
            let g = parse_group(&read_arg(&group)?)?;
            let m = parse_module(&g, &read_arg(&module)?)?;
            let family = match family.as_str() {
                "cyclic" => default_family(&g, &[]),
                other => parse_family(&g, &read_arg(other)?)?,
            };
            let sha = sha_finite(&m, &family)?;
            let check = oracle.then(|| {
                let brute = brute_sha(&m, &family, OracleBudget { max_functions: budget }).map_err(|e| e.to_string());
                OracleReport::new(sha.invariant_factors(), brute)
            });
            let report = ShaReport::new(&sha, &family, check);
            emit(cli.json, report.render(), to_json(&report));
            Ok(if report.oracle_disagrees() { EXIT_ERROR } else { EXIT_HOLDS })
        }
        Command::AdmissibleM { genus } => {
            let report = AdmissibleReport::new(genus);
            emit(cli.json, report.render(), to_json(&report));
            Ok(EXIT_HOLDS)
        }
        Command::VerifyPaper { filter, budget, expect_admissible } => {
            let mut options = SuiteOptions::default();
            if let Some(b) = budget {
                options.budget = OracleBudget { max_functions: b };
            }
            for spec in &expect_admissible {
                let (g, list) = spec.split_once('=').context("expected G=M1,M2,...")?;
                let g: u64 = g.trim().parse().context("genus")?;
                let list = list
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .context("admissible list")?;
                options.admissible.retain(|(h, _)| *h != g);
                options.admissible.push((g, list));
            }
            let report = run_suite(filter.as_deref(), &options);
            emit(cli.json, report.render(), to_json(&report));
            Ok(if report.passed { EXIT_HOLDS } else { EXIT_ERROR })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
