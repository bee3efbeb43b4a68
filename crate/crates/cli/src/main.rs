//! `galilei`: evaluate 6j-symbols, build and verify the length-3 modules, and
//! run the classification searches.
//!
//! Exit status is 0 on success, 1 when a verification or search does not
//! match its expected outcome, and 2 on usage or parameter errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galilei_core::acceptance;
use galilei_core::block_rep::{
    block_rep_json, block_rep_markdown, is_faithful, is_uniserial, verify_funca, verify_homomorphism,
};
use galilei_core::classifier::{length4_search, length_ge5_check, search_length3};
use galilei_core::report::{Format, Report};
use galilei_core::sixj;
use galilei_core::{build_construction, AlgebraSpec, Error, HalfInt, SixJArgs};

#[derive(Parser)]
#[command(name = "galilei", version, about = "Uniserial representations of sl(2) ⋉ h_n, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the 6j-symbol {j1 j2 j3; j4 j5 j6} exactly.
    Sixj {
        /// Six half-integers written as `k` or `k/2`.
        #[arg(num_args = 6, value_names = ["J1", "J2", "J3", "J4", "J5", "J6"], allow_hyphen_values = true)]
        j: Vec<String>,
    },
    /// Print one of the six length-3 constructions.
    Construct {
        #[command(flatten)]
        params: CaseParams,
        /// `json` (generator matrices) or `md` (block table of the radical).
        #[arg(long, value_enum, default_value_t = ConstructFormat::Json)]
        format: ConstructFormat,
    },
    /// Build a construction and run every structural check on it.
    Verify {
        #[command(flatten)]
        params: CaseParams,
    },
    /// Exhaustive search for faithful uniserial modules of a given length.
    Classify {
        /// Odd m = 2n−1.
        #[arg(long)]
        m: u32,
        /// Largest highest weight considered for each socle factor.
        #[arg(long, default_value_t = 12)]
        bound: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(3..=6))]
        length: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write every classification report in every format to a directory.
    Report {
        #[arg(long, default_value = "reports")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 12)]
        bound: u32,
    },
    /// Run the acceptance suite, one line per criterion.
    Selftest,
}

#[derive(Args)]
struct CaseParams {
    /// Construction number, 1 to 6.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    case: u8,
    /// Odd m; defaults to 1 for cases 4 and 5 and to 3 otherwise.
    #[arg(long)]
    m: Option<u32>,
    /// Highest weight `a` for cases 4 and 5.
    #[arg(long)]
    a: Option<u32>,
}

impl CaseParams {
    fn m(&self) -> u32 {
        self.m.unwrap_or(match self.case {
            4 | 5 => 1,
            _ => 3,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructFormat {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Md,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Md => Format::Md,
        }
    }
}

enum Failure {
    Mismatch,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sixj { j } => cmd_sixj(&j),
        Command::Construct { params, format } => cmd_construct(&params, format),
        Command::Verify { params } => cmd_verify(&params),
        Command::Classify {
            m,
            bound,
            length,
            format,
            out,
        } => cmd_classify(m, bound, length, format.into(), out.as_deref()),
        Command::Report { out_dir, bound } => cmd_report(&out_dir, bound),
        Command::Selftest => cmd_selftest(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_sixj(raw: &[String]) -> Outcome {
    let j: Vec<HalfInt> = raw.iter().map(|s| s.parse()).collect::<Result<_, Error>>()?;
    let args = SixJArgs::new(j.try_into().expect("clap enforces six values"));
    let value = sixj::eval(&args);
    println!("{value}");
    println!("≈ {:.12}", value.to_f64());
    Ok(())
}

fn cmd_construct(params: &CaseParams, format: ConstructFormat) -> Outcome {
    let rep = build_construction(params.case, params.m(), params.a)?;
    match format {
        ConstructFormat::Json => println!("{}", serde_json::to_string_pretty(&block_rep_json(&rep)).expect("json")),
        ConstructFormat::Md => print!("{}", block_rep_markdown(&rep)),
    }
    Ok(())
}

fn cmd_verify(params: &CaseParams) -> Outcome {
    let rep = build_construction(params.case, params.m(), params.a)?;
    println!("case {} with m = {}: socle {}, dim {}", params.case, params.m(), rep.socle(), rep.dim());
    let funca = verify_funca(&rep)?;
    let hom = verify_homomorphism(&rep);
    let checks = [
        ("length-3 bracket identities", funca.holds()),
        ("homomorphism on all basis pairs", hom.holds()),
        ("uniserial", is_uniserial(&rep)),
        ("faithful", is_faithful(&rep)),
    ];
    for (name, ok) in checks {
        println!("{} {name}", if ok { "pass" } else { "FAIL" });
    }
    if checks.iter().all(|c| c.1) {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

/// Rendered report and whether it matches the known answer.
fn classification(m: u32, bound: u32, length: u32, format: Format) -> Result<(String, bool), Error> {
    let spec = AlgebraSpec::from_m(m)?;
    Ok(match length {
        3 => {
            let r = search_length3(spec, bound);
            (r.render(format), r.matches_expected() && r.all_found_verified())
        }
        4 => {
            let r = length4_search(spec, bound);
            (r.render(format), r.no_survivors())
        }
        ell => {
            let r = length_ge5_check(spec, ell as usize, bound)?;
            (r.render(format), r.no_faithful_candidates())
        }
    })
}

fn cmd_classify(m: u32, bound: u32, length: u32, format: Format, out: Option<&Path>) -> Outcome {
    let (text, matches) = classification(m, bound, length, format)?;
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if matches {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_report(out_dir: &Path, bound: u32) -> Outcome {
    let io_err = |e: std::io::Error| Failure::Usage(format!("{}: {e}", out_dir.display()));
    fs::create_dir_all(out_dir).map_err(io_err)?;
    let mut all_match = true;
    for length in 3..=6 {
        for m in [1, 3, 5, 7] {
            // Longer sequences grow quickly; the windows bound them anyway.
            let bound = if length >= 5 { bound.min(15) } else { bound };
            let mut matches_here = true;
            for (format, ext) in [(Format::Json, "json"), (Format::Csv, "csv"), (Format::Md, "md")] {
                let (text, matches) = classification(m, bound, length, format)?;
                matches_here &= matches;
                let path = out_dir.join(format!("length{length}_m{m}.{ext}"));
                fs::write(&path, text).map_err(io_err)?;
            }
            all_match &= matches_here;
            println!("length {length}, m = {m}: {}", if matches_here { "as expected" } else { "MISMATCH" });
        }
    }
    if all_match {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_selftest() -> Outcome {
    let mut failed = 0;
    for id in acceptance::CRITERIA.iter().map(|c| c.0) {
        let r = acceptance::run(id).expect("listed criterion");
        println!("{r}");
        failed += usize::from(!r.passed);
    }
    println!("{} of {} criteria passed", acceptance::CRITERIA.len() - failed, acceptance::CRITERIA.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}
