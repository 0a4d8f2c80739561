//! `filippov-lab`: build 3-Lie algebra fixtures, validate identities,
//! compute derivation algebras, check extension data and solve derivation
//! lifts, from JSON-shaped input files.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on
//! malformed input. Reports are deterministic: identical inputs and flags
//! produce byte-identical output regardless of `--jobs`.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use filippov_core::constructions::{
    abelian, functional3, functional4, gl_trace_form, metric_so3, simple4,
};
use filippov_core::cube::cube;
use filippov_core::extendability::{build_delta, solve_extendability, verify_diagram, verify_gamma};
use filippov_core::extension::{
    check_central_case, check_conditional_identities, check_exact_sequence,
    check_extension_conditions, check_module_criterion, heisenberg_spec,
};
use filippov_core::io;
use filippov_core::report::CheckReport;
use filippov_core::representation::{check_module_consequences, check_representation};
use filippov_core::trilie::random_bracket_probes;
use filippov_core::{Error, Witness};

use render::{Document, ReportFormat};

#[derive(Debug, Parser)]
#[command(name = "filippov-lab", version, about)]
struct Cli {
    /// Input file; repeat for commands that take several.
    #[arg(long = "input", global = true)]
    inputs: Vec<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,

    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Trial count for randomized spot checks.
    #[arg(long, global = true, default_value_t = 200)]
    trials: u64,

    /// Witnesses rendered per failed check.
    #[arg(long = "witness-cap", global = true, default_value_t = filippov_core::report::DEFAULT_WITNESS_CAP)]
    witness_cap: usize,

    /// Parallel sweep workers.
    #[arg(long, global = true, default_value_t = 1, env = "FILIPPOV_LAB_JOBS")]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a named fixture to stdout in the algebra (or extension) format.
    Make {
        #[arg(value_enum)]
        fixture: Fixture,
        /// Dimension or matrix size, where the fixture takes one.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Exhaustive fundamental-identity check plus seeded random probes.
    Validate,
    /// Canonical basis of the derivation algebra.
    Derivations,
    /// Representation identities of a pair action against an algebra.
    RepCheck,
    /// Compatibility-condition ledger for an extension document.
    CheckExtension,
    /// Solve the derivation-lift system for an extension and a pair.
    Extend,
    /// Exterior direct sum of an algebra, written to stdout.
    Cube,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fixture {
    Abelian,
    Simple4,
    GlTrace,
    MetricSo3,
    Functional3,
    Functional4,
    HeisenbergSpec,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run_with_jobs(&cli);
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

#[cfg(feature = "parallel")]
fn run_with_jobs(cli: &Cli) -> Result<ExitCode, Error> {
    if cli.jobs == 0 {
        return Err(Error::Invalid("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Error::Invalid(format!("cannot build worker pool: {e}")))?;
    pool.install(|| run(cli))
}

#[cfg(not(feature = "parallel"))]
fn run_with_jobs(cli: &Cli) -> Result<ExitCode, Error> {
    if cli.jobs == 0 {
        return Err(Error::Invalid("--jobs must be at least 1".into()));
    }
    // built without the parallel feature: sweeps run sequentially
    run(cli)
}

fn want_inputs(cli: &Cli, n: usize) -> Result<(), Error> {
    if cli.inputs.len() != n {
        return Err(Error::Invalid(format!(
            "expected {n} --input file(s), got {}",
            cli.inputs.len()
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Make { fixture, dim } => {
            want_inputs(cli, 0)?;
            let text = make_fixture(*fixture, *dim)?;
            println!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Cube => {
            want_inputs(cli, 1)?;
            let a = io::read_algebra(&cli.inputs[0])?;
            let c = cube(&a)?;
            println!("{}", io::write_algebra_string(c.carrier()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate => {
            want_inputs(cli, 1)?;
            let a = io::read_algebra(&cli.inputs[0])?;
            let mut doc = Document::new("validate");
            doc.push(a.check_fundamental_identity());
            doc.push(random_bracket_probes(&a, cli.seed, cli.trials));
            Ok(finish(cli, doc))
        }
        Command::Derivations => {
            want_inputs(cli, 1)?;
            let a = io::read_algebra(&cli.inputs[0])?;
            let basis = a.derivation_algebra();
            let mut doc = Document::new("derivations");
            doc.derivation_dimension = Some(basis.len());
            doc.derivations = Some(
                basis
                    .iter()
                    .map(|d| render::matrix_rows(d.matrix()))
                    .collect(),
            );
            let mut parts = Vec::new();
            for d in &basis {
                parts.push(a.is_derivation(d)?);
            }
            doc.push(CheckReport::merge("derivation_basis_sound", parts));
            Ok(finish(cli, doc))
        }
        Command::RepCheck => {
            want_inputs(cli, 2)?;
            let a = io::read_algebra(&cli.inputs[0])?;
            let rho = io::read_pair_action(&cli.inputs[1], a.dim())?;
            let mut doc = Document::new("rep-check");
            doc.push(check_representation(&a, &rho)?);
            doc.push(check_module_consequences(&a, &rho)?);
            Ok(finish(cli, doc))
        }
        Command::CheckExtension => {
            want_inputs(cli, 1)?;
            let spec = io::read_extension(&cli.inputs[0])?;
            let mut doc = Document::new("check-extension");
            let ledger = check_extension_conditions(&spec);
            let direct = spec.assemble().check_fundamental_identity();
            let agree = ledger.passed() == direct.passed;
            for report in ledger.reports() {
                doc.push(report.clone());
            }
            doc.push(direct.clone());
            doc.push(CheckReport::new(
                "conditions_match_direct",
                1,
                if agree {
                    vec![]
                } else {
                    vec![Witness::new("conditions_match_direct", vec![], vec![], vec![])]
                },
            ));
            doc.push(check_conditional_identities(&spec));
            if direct.passed {
                doc.push(check_exact_sequence(&spec)?);
                let crit = check_module_criterion(&spec)?;
                doc.module_criterion = Some(crit);
                doc.push(CheckReport::new(
                    "module_criterion_consistent",
                    1,
                    if crit.is_module == crit.beta_mu_zero {
                        vec![]
                    } else {
                        vec![Witness::new(
                            "module_criterion_consistent",
                            vec![],
                            vec![],
                            vec![],
                        )]
                    },
                ));
                if spec.beta().is_zero() && crit.is_module {
                    doc.push(check_central_case(&spec)?);
                }
            }
            Ok(finish(cli, doc))
        }
        Command::Extend => {
            want_inputs(cli, 2)?;
            let spec = io::read_extension(&cli.inputs[0])?;
            let pair = io::read_pair(&cli.inputs[1], &spec)?;
            let sol = solve_extendability(&spec, &pair)?;
            let mut doc = Document::new("extend");
            doc.solvable = Some(sol.solvable);
            if let Some(gamma) = &sol.particular {
                doc.gamma = Some(render::matrix_rows(gamma.matrix()));
                doc.push(verify_gamma(&spec, &pair, gamma));
                let delta = build_delta(&pair, gamma)?;
                doc.delta = Some(render::matrix_rows(delta.matrix()));
                doc.push(verify_diagram(&spec, &pair, &delta)?);
            } else {
                doc.push(CheckReport::new(
                    "extendable",
                    1,
                    vec![Witness::new("extendable", vec![], vec![], vec![])],
                ));
            }
            Ok(finish(cli, doc))
        }
    }
}

fn make_fixture(fixture: Fixture, dim: Option<usize>) -> Result<String, Error> {
    let algebra = match fixture {
        Fixture::Abelian => {
            let n = dim.ok_or_else(|| Error::Invalid("abelian requires --dim".into()))?;
            abelian(n)
        }
        Fixture::Simple4 => simple4(),
        Fixture::GlTrace => {
            let m = dim.unwrap_or(2);
            if m == 0 {
                return Err(Error::Invalid("gl-trace requires --dim >= 1".into()));
            }
            gl_trace_form(m)
        }
        Fixture::MetricSo3 => metric_so3(),
        Fixture::Functional3 => functional3(),
        Fixture::Functional4 => functional4(),
        Fixture::HeisenbergSpec => {
            return Ok(io::write_extension_string(&heisenberg_spec()));
        }
    };
    Ok(io::write_algebra_string(&algebra))
}

fn finish(cli: &Cli, doc: Document) -> ExitCode {
    let passed = doc.passed();
    print!("{}", doc.render(cli.report, cli.witness_cap));
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
