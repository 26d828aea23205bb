use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fibersum::family::{format_verification, geography_rows, verify, write_csv, CorruptedElbow, Verification};
use fibersum::{exit, groups};
use fibersum_core::blocks::Catalog;
use fibersum_core::constructions::Pipeline;
use fibersum_core::fpgroup::{abelianization, tietze_simplify, Presentation};

#[derive(Parser)]
#[command(name = "fibersum", version, about = "Symbolic fiber-sum calculus for symplectic 4-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a construction file and print its reports.
    Eval {
        file: String,
        /// Print the canonical form of the file instead of evaluating it.
        #[arg(long)]
        canonical: bool,
    },
    /// Check engine-built M(G,n) against the closed forms.
    Verify {
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        /// Builtin name, `all`, an inline presentation, or a file.
        #[arg(long = "group", default_value = "all")]
        groups: Vec<String>,
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Write the geography of a family as CSV.
    Geography {
        #[arg(long, value_enum, default_value_t = Family::Theorem1)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long = "group", default_value = "trivial")]
        groups: Vec<String>,
        /// Output path, `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Operate on a finite presentation.
    Group {
        #[arg(value_enum)]
        action: GroupAction,
        presentation: String,
        #[arg(long, default_value_t = fibersum::report::GROUP_BUDGET)]
        budget: usize,
    },
    /// Export catalog entries with provenance as JSON.
    Catalog {
        /// Parameter used for the parametrized families.
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Theorem1,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupAction {
    Simplify,
    Abelianize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    ElbowChi,
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(exit::INPUT_ERROR)
}

fn check_range(n_min: u32, n_max: u32) -> Result<(), String> {
    if n_min > n_max {
        Err(format!("--n-min {n_min} exceeds --n-max {n_max}"))
    } else {
        Ok(())
    }
}

fn run_verify<C: Catalog>(p: &Pipeline<C>, n_min: u32, n_max: u32, g: &[(String, Presentation)]) -> Result<Verification, String> {
    verify(p, n_min, n_max, g).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { file, canonical } => {
            let src = match fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => return input_error(format!("{file}: {e}")),
            };
            let parsed = match fibersum::parse(&src) {
                Ok(f) => f,
                Err(e) => return input_error(format!("{file}:{e}")),
            };
            if canonical {
                print!("{parsed}");
                return ExitCode::SUCCESS;
            }
            match fibersum::evaluate(&parsed) {
                Ok(out) => {
                    print!("{out}");
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(format!("{file}:{e}")),
            }
        }
        Command::Verify { n_min, n_max, groups: specs, inject_fault } => {
            if let Err(e) = check_range(n_min, n_max) {
                return input_error(e);
            }
            let g = match groups::resolve_all(&specs) {
                Ok(g) => g,
                Err(e) => return input_error(e),
            };
            let result = match inject_fault {
                None => run_verify(&Pipeline::standard(), n_min, n_max, &g),
                Some(Fault::ElbowChi) => run_verify(&Pipeline::new(CorruptedElbow { delta: 4 }), n_min, n_max, &g),
            };
            match result {
                Ok(v) => {
                    print!("{}", format_verification(&v));
                    if v.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(exit::MISMATCH)
                    }
                }
                Err(e) => input_error(e),
            }
        }
        Command::Geography { family: Family::Theorem1, n_min, n_max, groups: specs, out } => {
            if let Err(e) = check_range(n_min, n_max) {
                return input_error(e);
            }
            let g = match groups::resolve_all(&specs) {
                Ok(g) => g,
                Err(e) => return input_error(e),
            };
            let rows = match geography_rows(&Pipeline::standard(), n_min, n_max, &g) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            let written = if out == "-" {
                write_csv(&rows, io::stdout().lock())
            } else {
                match fs::File::create(&out) {
                    Ok(f) => write_csv(&rows, f),
                    Err(e) => return input_error(format!("{out}: {e}")),
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => input_error(e),
            }
        }
        Command::Group { action, presentation, budget } => {
            let p: Presentation = match presentation.parse() {
                Ok(p) => p,
                Err(e) => return input_error(format!("presentation: {e}")),
            };
            let mut stdout = io::stdout().lock();
            let res = match action {
                GroupAction::Simplify => {
                    let out = tietze_simplify(&p, budget);
                    writeln!(stdout, "{}", out.presentation).and_then(|()| {
                        if out.exhausted {
                            writeln!(stdout, "budget of {budget} moves exhausted")
                        } else {
                            Ok(())
                        }
                    })
                }
                GroupAction::Abelianize => writeln!(stdout, "{}", abelianization(&p)),
            };
            match res {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => input_error(e),
            }
        }
        Command::Catalog { n } => match fibersum::catalog_json::export(n) {
            Ok(v) => {
                println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
                ExitCode::SUCCESS
            }
            Err(e) => input_error(e),
        },
    }
}
