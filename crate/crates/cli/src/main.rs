use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coorbit_core::io::{emit_report, fixtures, parse_algebra, AlgebraDocument, ReportDocument};
use coorbit_core::numeric::{
    affine_residual, fixture_invariant_check, midpoint_witness_check, orbit_sample, tangent_rank, write_samples_csv,
    SampleParams, MEMBERSHIP_TOL, RANK_RTOL,
};
use coorbit_core::orbit::describe_subspace;
use coorbit_core::spectrum::{DEFAULT_SAMPLE_COUNT, DEFAULT_SEED};
use coorbit_core::{classify_with, cs_witness_check, stabilizer, ClassifyOptions, LieAlgebra};

mod render;

#[derive(Parser)]
#[command(
    name = "coorbit",
    version,
    about = "Coadjoint orbit classification for rational Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and check the Jacobi identity.
    Validate {
        /// Path to an algebra document, or the name of a built-in fixture.
        input: String,
    },
    /// Classify the coadjoint orbit of a functional.
    Classify {
        input: String,
        /// Functional name from the document, or inline `name=p/q,...`.
        #[arg(long)]
        ell: String,
        #[arg(long)]
        json: bool,
        /// Exit with status 1 when the report carries warnings.
        #[arg(long)]
        strict: bool,
        /// Random elements tested for purely imaginary ad-spectrum.
        #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
        spectrum_samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Sample the orbit numerically and cross-check it against the exact classification.
    Orbit {
        input: String,
        #[arg(long)]
        ell: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = MEMBERSHIP_TOL)]
        tol: f64,
        /// Number of one-parameter flows composed per sample.
        #[arg(long, default_value_t = 8)]
        word_length: usize,
        /// Write the sampled points to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check whether `f` certifies a symplectic coherent-state orbit for the orbit of `ell`.
    Witness {
        input: String,
        #[arg(long)]
        ell: String,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = MEMBERSHIP_TOL)]
        tol: f64,
    },
    /// List, print or export the built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        action: Option<FixtureAction>,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    /// Print a human-readable summary.
    Show {
        name: String,
    },
    /// Print the fixture document as JSON.
    Export {
        name: String,
    },
}

/// Failures that map to exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        Self(e.to_string())
    }
}

type CmdResult = Result<ExitCode, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Validate { input } => validate(&input),
        Command::Classify {
            input,
            ell,
            json,
            strict,
            spectrum_samples,
            seed,
        } => classify(
            &input,
            &ell,
            json,
            strict,
            ClassifyOptions {
                sample_count: spectrum_samples,
                seed,
            },
        ),
        Command::Orbit {
            input,
            ell,
            samples,
            seed,
            tol,
            word_length,
            csv,
        } => orbit(&input, &ell, samples, seed, tol, word_length, csv.as_deref()),
        Command::Witness { input, ell, f, tol } => witness(&input, &ell, &f, tol),
        Command::Fixtures { action } => fixtures_cmd(action.unwrap_or(FixtureAction::List)),
    }
}

/// Reads `input` as a file if it exists, otherwise as a fixture name.
fn load(input: &str) -> Result<AlgebraDocument, InputError> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{input}: {e}")))?;
        return parse_algebra(&text).map_err(|e| InputError(format!("{input}:{e}")));
    }
    fixtures::fixture(input).ok_or_else(|| InputError(format!("{input}: no such file or built-in fixture")))
}

fn load_valid(input: &str) -> Result<(AlgebraDocument, LieAlgebra), InputError> {
    let doc = load(input)?;
    let alg = doc.to_algebra()?;
    let report = alg.validate();
    if !report.is_valid() {
        return Err(InputError(render::jacobi_failure(&alg, &report)));
    }
    Ok((doc, alg))
}

fn validate(input: &str) -> CmdResult {
    let (doc, alg) = load_valid(input)?;
    println!("{}: dim {}, Jacobi identity holds", doc.name, alg.dim());
    Ok(ExitCode::SUCCESS)
}

fn classify(input: &str, ell: &str, json: bool, strict: bool, opts: ClassifyOptions) -> CmdResult {
    let (doc, alg) = load_valid(input)?;
    let ell = doc.resolve_functional(ell)?;
    let report = classify_with(&alg, &ell, opts)?;
    let rd = ReportDocument::new(&doc, &alg, &ell, &opts, &report);
    if json {
        print!("{}", emit_report(&rd));
    } else {
        print!("{}", render::report_text(&rd)?);
    }
    Ok(if strict && report.has_warnings() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn orbit(
    input: &str,
    ell_spec: &str,
    samples: usize,
    seed: u64,
    tol: f64,
    word_length: usize,
    csv: Option<&Path>,
) -> CmdResult {
    let (doc, alg) = load_valid(input)?;
    let ell = doc.resolve_functional(ell_spec)?;
    let report = classify_with(&alg, &ell, ClassifyOptions::default())?;
    let sample = orbit_sample(
        &alg,
        &ell,
        SampleParams {
            n_points: samples,
            word_length,
            seed,
            tolerance: tol,
            ..SampleParams::default()
        },
    )?;
    let mut ok = true;
    let mut line = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    };

    let base_rank = tangent_rank(&alg, &sample.base, RANK_RTOL);
    line(
        "base rank",
        base_rank == report.orbit_dim,
        format!("numeric {base_rank}, exact {}", report.orbit_dim),
    );
    let rank_failures = sample
        .points
        .iter()
        .filter(|p| tangent_rank(&alg, p, RANK_RTOL) != report.orbit_dim)
        .count();
    line(
        "sample ranks",
        rank_failures == 0,
        format!("{} of {} samples off rank", rank_failures, sample.points.len()),
    );

    // Orbits with ideal stabilizer lie inside their affine hull.
    if report.stabilizer_is_ideal {
        let worst = sample
            .points
            .iter()
            .map(|p| affine_residual(p, &ell, &report.affine_hull_direction))
            .fold(0.0, f64::max);
        line(
            "affine hull membership",
            worst < tol,
            format!("max residual {worst:.3e} over {} samples", sample.points.len()),
        );
    }

    if let Some(data) = doc.orbit_fixture_data()? {
        if data.base == ell {
            let inv = fixture_invariant_check(&sample, &data.invariants, tol);
            for o in &inv.outcomes {
                line(
                    &format!("invariant {}", o.name),
                    o.passed,
                    format!(
                        "max deviation {:.3e} over {} samples ({} skipped)",
                        o.max_deviation, o.evaluated, o.skipped
                    ),
                );
            }
            for w in &inv.warnings {
                eprintln!("warning: {w}");
            }
        }
    }

    if let Some(path) = csv {
        let file = File::create(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        write_samples_csv(&alg, &sample, BufWriter::new(file))?;
        println!("wrote {} samples to {}", sample.points.len(), path.display());
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn witness(input: &str, ell_spec: &str, f_spec: &str, tol: f64) -> CmdResult {
    let (doc, alg) = load_valid(input)?;
    let ell = doc.resolve_functional(ell_spec)?;
    let f = doc.resolve_functional(f_spec)?;
    let holds = cs_witness_check(&alg, &ell, &f)?;
    let report = classify_with(&alg, &ell, ClassifyOptions::default())?;
    println!("stabilizer of f: {}", describe_subspace(&alg, &stabilizer(&alg, &f)?));
    println!("pker algebra of ell: {}", describe_subspace(&alg, &report.pker_algebra));
    println!("witness: {holds}");

    let mut ok = true;
    if let Some(data) = doc.orbit_fixture_data()? {
        if let (Some(m), true) = (&data.midpoint, data.base == ell) {
            let out = midpoint_witness_check(&alg, &ell, &m.fixture, m.p, m.a, &m.target, tol)?;
            println!(
                "midpoint of {} and {} at p = {}, a = {}: error {:.3e}, endpoint invariant deviation {:.3e}, ranks match: {}",
                m.fixture.first.name,
                m.fixture.second.name,
                m.p,
                m.a,
                out.midpoint_error,
                out.endpoint_invariant_deviation,
                out.ranks_match
            );
            println!("midpoint check: {}", if out.passed { "pass" } else { "fail" });
            ok = out.passed;
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn fixtures_cmd(action: FixtureAction) -> CmdResult {
    let mut out = std::io::stdout().lock();
    match action {
        FixtureAction::List => {
            for name in fixtures::names() {
                let doc = fixtures::fixture(name).expect("listed fixture");
                writeln!(out, "{name}\tdim {}", doc.dim)?;
            }
        }
        FixtureAction::Show { name } => {
            let doc = fixtures::fixture(&name).ok_or_else(|| InputError(format!("unknown fixture `{name}`")))?;
            write!(out, "{}", render::document_text(&doc)?)?;
        }
        FixtureAction::Export { name } => {
            let doc = fixtures::fixture(&name).ok_or_else(|| InputError(format!("unknown fixture `{name}`")))?;
            write!(out, "{}", doc.emit())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
