//! `latpoly`: command-line front end for the `latpoly` library.
//!
//! Exit codes: 0 when the command ran and the property holds, 1 when the
//! property fails (a witness is printed), 2 on input or usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use latpoly::format::{parse_point, LatticeDescriptor, PolynomialFile};
use latpoly::harness::{search_counterexample, verify_theorem};
use latpoly::{
    classify, commute, is_self_commuting_fast, strongly_bisymmetric, table_of, BoundedLattice, Commutation,
    CommutationWitness, DnfPolynomial, FamilyVerdict, HarnessConfig, HarnessError,
};

#[derive(Parser)]
#[command(name = "latpoly", version, about = "Lattice polynomial functions: structure and self-commutation")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Fast,
    Oracle,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial at a point given as comma-separated element ids.
    Eval { file: PathBuf, point: String },
    /// Print the canonical form and its essential terms.
    Canon { file: PathBuf },
    /// Weighted disjunction, chain form, or neither.
    Classify { file: PathBuf },
    /// Decide whether a polynomial commutes with itself.
    Selfcommute {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Decide whether two polynomials commute.
    Commute { f: PathBuf, g: PathBuf },
    /// Check that every pair of polynomials in a family commutes.
    Family {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compare the structural test with the oracle on every polynomial over a chain.
    Verify {
        #[arg(long)]
        arity: usize,
        /// Chain size.
        #[arg(long)]
        chain: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        limits: Limits,
    },
    /// Look for self-commuting polynomials of neither shape over a non-chain lattice.
    Search {
        #[arg(long)]
        arity: usize,
        /// Product of chains, e.g. `2,2`.
        #[arg(long, value_delimiter = ',', conflicts_with = "lattice", required_unless_present = "lattice")]
        product: Option<Vec<usize>>,
        /// JSON lattice descriptor file.
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        limits: Limits,
    },
}

/// Harness size caps.
#[derive(clap::Args)]
struct Limits {
    /// Largest arity the harness accepts.
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
    /// Largest lattice the harness accepts.
    #[arg(long, default_value_t = 4)]
    max_size: usize,
}

impl Limits {
    fn config(&self, jobs: usize) -> HarnessConfig {
        HarnessConfig {
            max_arity: self.max_arity,
            max_lattice_size: self.max_size,
            ..HarnessConfig::default()
        }
        .with_jobs(jobs)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let machine = cli.format == Format::Machine;
    match &cli.command {
        Command::Eval { file, point } => {
            let p = load(file)?;
            let l = p.lattice();
            let x = parse_point(point, l).context("bad point")?;
            let v = p.eval(&x)?;
            if machine {
                println!("{}", v.id());
            } else {
                println!("{}", l.format_element(v));
            }
            Ok(0)
        }
        Command::Canon { file } => {
            let p = load(file)?;
            let c = p.canonicalize();
            if machine {
                println!("{}", serde_json::to_string(&PolynomialFile::from_polynomial(&c))?);
                return Ok(0);
            }
            println!("{c}");
            let l = c.lattice();
            let terms: Vec<String> = c
                .essential_terms()
                .iter()
                .map(|t| format!("{}={}", t.subset, l.format_element(t.coefficient)))
                .collect();
            println!("essential terms: {}", if terms.is_empty() { "none".into() } else { terms.join(" ") });
            let vars: Vec<String> = c.essential_variables().iter().map(|j| format!("x{}", j + 1)).collect();
            println!("essential variables: {}", if vars.is_empty() { "none".into() } else { vars.join(" ") });
            Ok(0)
        }
        Command::Classify { file } => {
            let p = load(file)?;
            let class = classify(&p);
            if machine {
                let coeffs: Vec<String> =
                    p.canonicalize().coefficients().iter().map(|a| a.id().to_string()).collect();
                println!("class={} coeffs={}", class.name(), coeffs.join(","));
                println!("{}", class.headline());
            } else {
                println!("{}", class.headline());
                if let Some(line) = class.coefficient_line(p.lattice()) {
                    println!("{line}");
                }
                println!("(computed on the canonical form {})", p.canonicalize());
            }
            Ok(0)
        }
        Command::Selfcommute { file, method } => selfcommute(&load(file)?, *method, machine),
        Command::Commute { f, g } => {
            let (p, q) = (load(f)?, load(g)?);
            same_lattice(&p, &q, f, g)?;
            let verdict = commute(&table_of(&p)?, &table_of(&q)?)?;
            print_verdict("commute", &verdict, machine);
            Ok(if verdict.holds() { 0 } else { 1 })
        }
        Command::Family { files } => {
            let polys = files.iter().map(|f| load(f)).collect::<Result<Vec<_>>>()?;
            for (p, f) in polys.iter().zip(files).skip(1) {
                same_lattice(&polys[0], p, &files[0], f)?;
            }
            let tables = polys.iter().map(table_of).collect::<Result<Vec<_>, _>>()?;
            match strongly_bisymmetric(&tables)? {
                FamilyVerdict::Holds => {
                    println!("{}", if machine { "family=true" } else { "true" });
                    Ok(0)
                }
                FamilyVerdict::Fails { first, second, witness } => {
                    if machine {
                        println!(
                            "family=false pair={},{} {}",
                            first + 1,
                            second + 1,
                            witness_fields(&witness)
                        );
                    } else {
                        println!("false: f{} and f{} do not commute", first + 1, second + 1);
                        print_witness(&witness);
                    }
                    Ok(1)
                }
            }
        }
        Command::Verify { arity, chain, jobs, limits } => {
            let l = Arc::new(BoundedLattice::chain(*chain)?);
            let report = verify_theorem(*arity, l, &limits.config(*jobs))?;
            if machine {
                report.machine_lines().iter().for_each(|l| println!("{l}"));
            } else {
                println!("{}", report.human());
            }
            Ok(if report.mismatch_count() == 0 { 0 } else { 1 })
        }
        Command::Search { arity, product, lattice, jobs, limits } => {
            let l = match (product, lattice) {
                (Some(factors), _) => BoundedLattice::product(factors)?,
                (None, Some(path)) => LatticeDescriptor::parse(&read(path)?)?.build()?,
                (None, None) => bail!("give --product or --lattice"),
            };
            let cfg = limits.config(*jobs);
            let report = match search_counterexample(*arity, Arc::new(l), &cfg) {
                Err(HarnessError::IsAChain(name)) => {
                    bail!("{name} is a chain; use verify for chains")
                }
                other => other?,
            };
            if machine {
                report.machine_lines().iter().for_each(|l| println!("{l}"));
            } else {
                println!("{}", report.human());
            }
            Ok(0)
        }
    }
}

fn selfcommute(p: &DnfPolynomial, method: Method, machine: bool) -> Result<u8> {
    let fast = match method {
        Method::Oracle => None,
        _ => {
            if !p.lattice().is_chain() {
                bail!(
                    "the structural test needs a chain, {} is not one; use --method oracle",
                    p.lattice().describe()
                );
            }
            Some(is_self_commuting_fast(p)?.0)
        }
    };
    let oracle = match method {
        Method::Fast => None,
        _ => Some(commute(&table_of(p)?, &table_of(p)?)?),
    };
    match (fast, &oracle) {
        (Some(fast), None) => {
            println!("{}", if machine { format!("fast={fast}") } else { fast.to_string() });
            Ok(if fast { 0 } else { 1 })
        }
        (None, Some(verdict)) => {
            print_verdict("oracle", verdict, machine);
            Ok(if verdict.holds() { 0 } else { 1 })
        }
        (Some(fast), Some(verdict)) => {
            let holds = verdict.holds();
            if machine {
                let mut line = format!("fast={fast} oracle={holds}");
                if let Some(w) = verdict.witness() {
                    line.push(' ');
                    line.push_str(&witness_fields(w));
                }
                println!("{line}");
            } else {
                println!("fast: {fast}, oracle: {holds}");
                if let Some(w) = verdict.witness() {
                    print_witness(w);
                }
                if fast != holds {
                    println!("structural test and oracle disagree");
                }
            }
            Ok(if fast && holds { 0 } else { 1 })
        }
        (None, None) => unreachable!(),
    }
}

fn print_verdict(key: &str, verdict: &Commutation, machine: bool) {
    match (verdict, machine) {
        (Commutation::Holds, true) => println!("{key}=true"),
        (Commutation::Holds, false) => println!("true"),
        (Commutation::Fails(w), true) => println!("{key}=false {}", witness_fields(w)),
        (Commutation::Fails(w), false) => {
            println!("false");
            print_witness(w);
        }
    }
}

fn witness_fields(w: &CommutationWitness) -> String {
    format!(
        "witness={} row_first={} column_first={}",
        w.matrix_lines().join(";"),
        w.row_first.id(),
        w.column_first.id()
    )
}

fn print_witness(w: &CommutationWitness) {
    println!(
        "witness ({}x{}, row-first {} vs column-first {}):",
        w.rows, w.cols, w.row_first, w.column_first
    );
    for line in w.matrix_lines() {
        println!("{line}");
    }
}

fn same_lattice(p: &DnfPolynomial, q: &DnfPolynomial, a: &Path, b: &Path) -> Result<()> {
    if LatticeDescriptor::describe(p.lattice()) != LatticeDescriptor::describe(q.lattice()) {
        bail!(
            "{} is over {} but {} is over {}",
            a.display(),
            p.lattice().describe(),
            b.display(),
            q.lattice().describe()
        );
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<DnfPolynomial> {
    let file = PolynomialFile::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    file.to_polynomial().with_context(|| format!("in {}", path.display()))
}
