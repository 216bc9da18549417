use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bidisk::arith::set_default_pi2_digits;
use bidisk::invariants::{core_eigenvalues, invariant_report};
use bidisk::toeplitz::{det_sequence, first_row_cofactors, last_row_cofactors};
use bidisk::verify::{run_suite, Fault, Suite, VerifyOptions};
use bidisk::{Error, Generator, HomogeneousSymbol};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const PI2_DIGITS_VAR: &str = "BIDISK_PI2_DIGITS";

#[derive(Debug, Parser)]
#[command(name = "bidisk", version, about = "Exact invariants of homogeneous submodules of the bidisk Hardy space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Σ_k table for k = 0..=k_max.
    Invariants {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        /// Partial sums run to n = max(truncation, k) for named submodules.
        #[arg(long, default_value_t = 100)]
        truncation: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Toeplitz determinants D_0..D_{n_max}.
    Determinants {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// First or last cofactor row of the Gram matrix A^n.
    Cofactors {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Row::Last)]
        row: Row,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Nonzero eigenvalue pairs ±λ_n of the core operator.
    Eigenvalues {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a property suite; JSON results go to --out or standard output.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Range of the exact monotonicity certificate and S_k enclosures.
        #[arg(long, default_value_t = 500)]
        k_max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GeneratorArgs {
    /// Named submodule: zw for z−w, zw2 for (z−w)².
    #[arg(long)]
    submodule: Option<String>,
    /// Coefficients c_0,...,c_k of Σ c_j z^j w^(k−j); rationals as a/b.
    #[arg(long, allow_hyphen_values = true)]
    symbol: Option<String>,
}

impl GeneratorArgs {
    fn parse(&self) -> bidisk::Result<Generator> {
        match (&self.submodule, &self.symbol) {
            (Some(name), _) => Ok(Generator::Named(name.parse()?)),
            (None, Some(symbol)) => Ok(Generator::Symbol(symbol.parse()?)),
            (None, None) => Err(Error::InvalidSymbol("one of --submodule or --symbol is required".into())),
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Row {
    First,
    Last,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FaultArg {
    PCoefficient,
}

#[derive(Serialize)]
struct InvariantRow {
    k: usize,
    pi2_coeff: Option<String>,
    const_coeff: Option<String>,
    partial_sum: String,
    tail_bound: Option<String>,
    float_value: f64,
    asymptote: Option<f64>,
    residual_k3: Option<f64>,
}

#[derive(Serialize)]
struct DeterminantRow {
    n: usize,
    numerator: String,
    denominator: String,
}

#[derive(Serialize)]
struct CofactorRowOut {
    j: usize,
    value: String,
}

#[derive(Serialize)]
struct EigenvalueRowOut {
    n: usize,
    lambda_sq: String,
    lambda_float: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::SingularGram { .. } | Error::ZeroDeterminantInRange { .. }) => 3,
        Some(Error::IdentityViolation(_) | Error::CertificateFailure { .. }) => 1,
        _ => 2,
    }
}

fn configure_precision() -> anyhow::Result<()> {
    if let Ok(raw) = std::env::var(PI2_DIGITS_VAR) {
        let digits: u32 = raw
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("{PI2_DIGITS_VAR} must be a positive integer, got {raw:?}")))?;
        if digits == 0 {
            return Err(Error::Domain(format!("{PI2_DIGITS_VAR} must be positive")).into());
        }
        let _ = set_default_pi2_digits(digits);
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    configure_precision()?;
    match cli.command {
        Command::Invariants { generator, k_max, truncation, output } => {
            let generator = generator.parse()?;
            let rows: Vec<InvariantRow> = invariant_report(&generator, k_max, truncation)?
                .into_iter()
                .map(|r| InvariantRow {
                    k: r.k,
                    pi2_coeff: r.closed.as_ref().map(|c| c.pi2_coeff.to_string()),
                    const_coeff: r.closed.as_ref().map(|c| c.const_coeff.to_string()),
                    partial_sum: r.partial.to_string(),
                    tail_bound: r.tail_bound.map(|t| t.to_string()),
                    float_value: r.float_value,
                    asymptote: r.asymptote,
                    residual_k3: r.residual_k3,
                })
                .collect();
            emit(&rows, &output)?;
        }
        Command::Determinants { generator, n_max, output } => {
            let p = symbol_of(&generator.parse()?);
            let seq = det_sequence(&p, n_max);
            let rows: Vec<DeterminantRow> = (0..=n_max)
                .map(|n| {
                    let d = seq.get(n);
                    DeterminantRow { n, numerator: d.numer().to_string(), denominator: d.denom().to_string() }
                })
                .collect();
            emit(&rows, &output)?;
        }
        Command::Cofactors { generator, n, row, output } => {
            let p = symbol_of(&generator.parse()?);
            let cofactors = match row {
                Row::First => first_row_cofactors(&p, n)?,
                Row::Last => last_row_cofactors(&p, n)?,
            };
            let rows: Vec<CofactorRowOut> =
                cofactors.values.iter().enumerate().map(|(j, v)| CofactorRowOut { j, value: v.to_string() }).collect();
            emit(&rows, &output)?;
        }
        Command::Eigenvalues { generator, n_max, output } => {
            let spectrum = core_eigenvalues(&generator.parse()?, n_max)?;
            let rows: Vec<EigenvalueRowOut> = spectrum
                .pairs
                .into_iter()
                .map(|r| EigenvalueRowOut { n: r.n, lambda_sq: r.lambda_sq.to_string(), lambda_float: r.lambda_float })
                .collect();
            emit(&rows, &output)?;
        }
        Command::Verify { suite, k_max, out, inject_fault } => {
            let suite: Suite = suite.parse()?;
            let fault = inject_fault.map(|FaultArg::PCoefficient| Fault::CorruptPCoefficient);
            let results = run_suite(suite, &VerifyOptions { k_max, fault });
            for r in &results {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                match &r.first_counterexample {
                    Some(cx) => eprintln!("{status} {}/{}: {cx}", r.suite, r.property),
                    None => eprintln!("{status} {}/{}", r.suite, r.property),
                }
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            eprintln!("{} properties, {failed} failed", results.len());
            write_json(&results, out.as_ref())?;
            return Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn symbol_of(generator: &Generator) -> HomogeneousSymbol {
    match generator {
        Generator::Named(sub) => sub.symbol(),
        Generator::Symbol(p) => p.clone(),
    }
}

fn sink(out: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            Box::new(BufWriter::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit<T: Serialize>(rows: &[T], output: &OutputArgs) -> anyhow::Result<()> {
    match output.format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(sink(output.out.as_ref())?);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => write_json(rows, output.out.as_ref())?,
    }
    Ok(())
}

fn write_json<T: Serialize + ?Sized>(value: &T, out: Option<&PathBuf>) -> anyhow::Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
