//! The `ringlab` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{classify, Predicate};
use crate::error::{Error, Result};
use crate::harness::catalog::catalog_get;
use crate::harness::corpus::{predicate_lines, report_line, run_corpus, CorpusSpec};
use crate::harness::report::{Agreement, TheoremReport};
use crate::harness::theorems::{verify_all, verify_theorem};
use crate::ideal::{quotient_map, Ideal};
use crate::ring::spec::{parse_ring, RingSpec};
use crate::ring::Ring;
use crate::ultra::{ultra_ring, SetIdeal};

#[derive(Parser, Debug)]
#[command(name = "ringlab", version, about = "Ring-class decisions and theorem checks for finite rings and Z-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Args, Debug)]
pub struct RingArg {
    /// A spec file, inline JSON, or `catalog:NAME`.
    #[arg(long)]
    pub ring: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide every ring class for one ring.
    Classify {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Exit with 2 if a verdict is unknown.
        #[arg(long)]
        strict: bool,
    },
    /// Evaluate the clauses of one theorem, or of all applicable ones.
    Verify {
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        strict: bool,
    },
    /// Classify and verify a generated corpus.
    Corpus {
        #[arg(long, default_value_t = 64)]
        max_zmod: u32,
        /// Only the catalog entries.
        #[arg(long)]
        catalog_only: bool,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Build a ring and print its spec.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Direct product of the given rings.
    Product {
        #[arg(long = "factor", required = true)]
        factors: Vec<String>,
    },
    /// Quotient by the ideal generated by the given elements.
    Quotient {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
    },
    /// `R[x]/(x^k)`.
    Truncate {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        k: usize,
    },
    /// `(R_1 x ... x R_n) / I*` for the power-set ideal generated by `--points`.
    Ultra {
        #[arg(long = "factor", required = true)]
        factors: Vec<String>,
        /// 1-based points of the union of the ideal, comma separated.
        #[arg(long, value_delimiter = ',')]
        points: Vec<usize>,
    },
}

/// Resolves `catalog:NAME`, inline JSON, or a spec file.
pub fn load_ring(arg: &str) -> Result<Ring> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return catalog_get(name)?.ring();
    }
    if arg.trim_start().starts_with('{') {
        return parse_ring(arg);
    }
    let path = PathBuf::from(arg);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_ring(&text)
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn emit_line(line: &str) {
    emit(&format!("{line}\n"));
}

fn print_reports(reports: &[TheoremReport], format: Format) {
    for r in reports {
        match format {
            Format::Text => emit(&r.to_string()),
            Format::Machine => emit_line(&report_line(r)),
        }
    }
}

fn reports_exit(reports: &[TheoremReport], strict: bool) -> i32 {
    match reports.iter().map(|r| r.agreement).max() {
        Some(Agreement::Fail) => 1,
        Some(Agreement::Indeterminate) if strict => 2,
        _ => 0,
    }
}

fn construct(what: Construct) -> Result<RingSpec> {
    let ring = match what {
        Construct::Product { factors } => Ring::product(factors.iter().map(|f| load_ring(f)).collect::<Result<_>>()?)?,
        Construct::Quotient { ring, generators } => {
            let r = load_ring(&ring.ring)?;
            let gens = generators.iter().map(|g| r.parse(g)).collect::<Result<Vec<_>>>()?;
            quotient_map(&Ideal::new(&r, &gens)?)?.target().clone()
        }
        Construct::Truncate { ring, k } => Ring::truncated(&load_ring(&ring.ring)?, k)?,
        Construct::Ultra { factors, points } => {
            let fs = factors.iter().map(|f| load_ring(f)).collect::<Result<Vec<_>>>()?;
            let i = SetIdeal::from_generators(fs.len(), &[points])?;
            ultra_ring(&fs, &i)?.quotient().clone()
        }
    };
    Ok(ring.spec())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Classify { ring, format, strict } => {
            let r = load_ring(&ring.ring)?;
            let c = classify(&r)?;
            match format {
                Format::Machine => predicate_lines(r.name(), &c).iter().for_each(|l| emit_line(l)),
                Format::Text => {
                    emit_line(r.name());
                    for p in Predicate::ALL {
                        let note = c.witnesses.get(&p).map(|w| format!("  {}", w.note)).unwrap_or_default();
                        emit_line(&format!("  {:<18} {:<8}{note}", p.name(), c.get(p).to_string()));
                    }
                }
            }
            let open = c.verdicts.values().any(|v| !v.is_decided());
            Ok(if strict && open { 2 } else { 0 })
        }
        Command::Verify { theorem, ring, format, strict } => {
            let r = load_ring(&ring.ring)?;
            let reports = if theorem == "all" { verify_all(&r)? } else { vec![verify_theorem(&theorem, &r)?] };
            print_reports(&reports, format);
            Ok(reports_exit(&reports, strict))
        }
        Command::Corpus { max_zmod, catalog_only, strict, jobs, format } => {
            let spec = if catalog_only {
                CorpusSpec::catalog_only()
            } else {
                CorpusSpec { max_zmod, ..CorpusSpec::default() }
            };
            let run = run_corpus(&spec, jobs)?;
            match format {
                Format::Text => emit(&run.text()),
                Format::Machine => run.machine_lines().iter().for_each(|l| emit_line(l)),
            }
            Ok(run.summary.exit_code(strict))
        }
        Command::Construct { what } => {
            emit_line(&construct(what)?.to_json());
            Ok(0)
        }
    }
}

/// Parses the process arguments, runs, and returns the exit status.
pub fn main() -> i32 {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::spec::construct_ring;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("ringlab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn verify_exit_codes() {
        let cli = parse(&["verify", "--theorem", "all", "--ring", "catalog:deligne"]);
        assert_eq!(run(cli).unwrap(), 0);
        let cli = parse(&["verify", "--theorem", "all", "--ring", "catalog:z_x_x2", "--strict"]);
        assert_eq!(run(cli).unwrap(), 2);
    }

    #[test]
    fn construct_specs() {
        let spec = construct(Construct::Truncate { ring: RingArg { ring: "catalog:zmod4".into() }, k: 2 }).unwrap();
        assert_eq!(construct_ring(&spec).unwrap().finite().unwrap().size(), 16);
        let spec = construct(Construct::Ultra {
            factors: vec!["catalog:zmod4".into(), "catalog:zmod6".into()],
            points: vec![1],
        })
        .unwrap();
        assert_eq!(construct_ring(&spec).unwrap().finite().unwrap().size(), 6);
    }

    #[test]
    fn unknown_ring() {
        assert!(matches!(load_ring("catalog:nope"), Err(Error::UnknownName(_))));
        assert!(matches!(load_ring("/nonexistent/spec.json"), Err(Error::Io(_))));
    }
}
