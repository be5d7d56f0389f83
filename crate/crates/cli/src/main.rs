use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hypercircle_cli::{
    bench, compute, definable, gen, minfield, parse_degrees, parse_kind, read_field,
    write_bench_csv, CliError, CliResult, FieldSource, Status,
};

#[derive(Parser)]
#[command(
    name = "hypercircle",
    version,
    about = "Fields of definition of rational curves over number fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the standard parametrization and the unit of every class.
    Compute {
        file: PathBuf,
        /// Check the result against the Weil system (extension degree ≤ 3, curve degree ≤ 6).
        #[arg(long)]
        verify_witness: bool,
    },
    /// Decide whether the curve is defined over ℚ; exits 1 when it is not.
    Definable { file: PathBuf },
    /// Print the minimum field of definition.
    Minfield { file: PathBuf },
    /// Generate an instance.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        degree: usize,
        #[arg(
            long,
            conflicts_with = "ext_degree",
            required_unless_present = "ext_degree"
        )]
        minpoly_file: Option<PathBuf>,
        #[arg(long)]
        ext_degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the pipeline on generated instances and write CSV.
    Bench {
        /// Comma-separated curve degrees.
        #[arg(long, allow_hyphen_values = true)]
        degrees: String,
        #[arg(long)]
        minpoly_file: Vec<PathBuf>,
        #[arg(long)]
        ext_degree: Vec<usize>,
        /// Number of seeds, starting from 0.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, default_value = "defined")]
        kind: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::input(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<Status> {
    let report = match cli.command {
        Command::Compute {
            file,
            verify_witness,
        } => compute(&read(&file)?, verify_witness)?,
        Command::Definable { file } => definable(&read(&file)?)?,
        Command::Minfield { file } => minfield(&read(&file)?)?,
        Command::Gen {
            kind,
            degree,
            minpoly_file,
            ext_degree,
            seed,
            output,
        } => {
            let source = match (minpoly_file, ext_degree) {
                (Some(p), _) => FieldSource::Fixed(read_field(&read(&p)?)?),
                (None, Some(n)) => FieldSource::Random(n),
                (None, None) => {
                    return Err(CliError::input(
                        "either --minpoly-file or --ext-degree is required",
                    ))
                }
            };
            let (file, relations) = gen(parse_kind(&kind)?, degree, &source, seed)?;
            emit(output.as_deref(), &file)?;
            if output.is_some() {
                print!("{relations}");
            } else {
                eprint!("{relations}");
            }
            return Ok(Status::Success);
        }
        Command::Bench {
            degrees,
            minpoly_file,
            ext_degree,
            seeds,
            kind,
            output,
        } => {
            let mut sources = minpoly_file
                .iter()
                .map(|p| Ok(FieldSource::Fixed(read_field(&read(p)?)?)))
                .collect::<CliResult<Vec<_>>>()?;
            sources.extend(ext_degree.into_iter().map(FieldSource::Random));
            if sources.is_empty() {
                return Err(CliError::input(
                    "at least one --minpoly-file or --ext-degree is required",
                ));
            }
            let records = bench(
                parse_kind(&kind)?,
                &parse_degrees(&degrees)?,
                &sources,
                seeds,
            );
            let mut buf = Vec::new();
            write_bench_csv(&records, &mut buf)?;
            emit(
                output.as_deref(),
                &String::from_utf8(buf).expect("csv is UTF-8"),
            )?;
            return Ok(Status::Success);
        }
    };
    print!("{}", report.text);
    Ok(report.status)
}

fn main() -> ExitCode {
    let status = match Cli::try_parse() {
        Ok(cli) => run(cli).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            e.status
        }),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                Status::InputError
            } else {
                Status::Success
            }
        }
    };
    ExitCode::from(status as u8)
}
