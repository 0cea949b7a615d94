//! `orbitsum` — exact polyhedral spectra of sums of admissible coadjoint
//! orbits of su(p,q), with a Monte Carlo containment oracle.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input,
//! 3 verification found violations.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use orbitsum_core::error::Error;
use orbitsum_core::json::{
    self, HPolyhedronJson, HornTriplesJson, LatticeJson, OrbitSumJson, PlotDataJson,
    SampleReportJson,
};
use orbitsum_core::polyhedra::{FloatHRep, HPolyhedron, Truncation};
use orbitsum_core::rational::{format_rat, parse_rat, parse_rat_vec, rat_int, Rat};
use orbitsum_core::rootsys::{RealFormData, Spectrum};
use orbitsum_core::{horn, oracle, sum};

#[derive(Parser)]
#[command(
    name = "orbitsum",
    about = "Possible spectra of sums of admissible coadjoint orbits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Algebra designator, e.g. su(2,1)
    #[arg(long)]
    algebra: String,
    /// Spectrum of A: comma-separated exact rationals, e.g. 4,1,-5 or 7/2,1,-9/2
    #[arg(long)]
    a: String,
    /// Spectrum of B, same format
    #[arg(long)]
    b: String,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact polyhedron of possible sum spectra (JSON report).
    Polytope {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write vertex/ray/sample-cloud JSON for external plotting
        #[arg(long, value_name = "FILE")]
        emit_plot_data: Option<PathBuf>,
        /// Sample-cloud size for --emit-plot-data
        #[arg(long, default_value_t = 2000)]
        plot_samples: u64,
        /// Seed for the plot sample cloud
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo containment check of sampled sum spectra.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Membership tolerance
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Test against this H-representation (JSON) instead of the computed one
        #[arg(long, value_name = "FILE")]
        hrep: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the sampled spectrum cloud
        #[arg(long, value_name = "FILE")]
        emit_plot_data: Option<PathBuf>,
    },
    /// Integer points of the truncated polyhedron (candidate highest weights).
    Lattice {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Truncation bound (exact rational)
        #[arg(long)]
        truncate: String,
        /// Truncation functional, comma-separated rationals; defaults to the
        /// total pairing with the non-compact positive roots
        #[arg(long)]
        functional: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Torus moment image of a single orbit: conv(W_k x) + Cone(nc).
    OrbitImage {
        /// Algebra designator, e.g. su(2,1)
        #[arg(long)]
        algebra: String,
        /// Spectrum, comma-separated exact rationals
        #[arg(long)]
        a: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump Horn triples (--n/--r) or the compact polytope (--algebra/--a/--b).
    Horn {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn parse_spectrum(form: &RealFormData, text: &str) -> Result<Spectrum, Error> {
    let coords: Vec<Rat> = parse_rat_vec(text)?;
    let x = Spectrum::new(coords);
    form.check_dim(&x)?;
    Ok(x)
}

fn emit(payload: &impl serde::Serialize, out: Option<&Path>) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(payload)
        .map_err(|e| Error::Numerical(format!("serialization failed: {e}")))?;
    text.push('\n');
    match out {
        None => {
            print!("{text}");
            std::io::stdout()
                .flush()
                .map_err(|e| Error::Numerical(format!("stdout: {e}")))?;
        }
        Some(path) => write_atomic(path, text.as_bytes())?,
    }
    Ok(())
}

/// Write to a sibling temp file and rename into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    std::fs::write(&tmp, bytes).map_err(|e| Error::Numerical(format!("write {tmp:?}: {e}")))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::Numerical(format!("rename to {path:?}: {e}")))?;
    Ok(())
}

fn load_hrep(path: &Path) -> Result<HPolyhedron, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path:?}: {e}")))?;
    if let Ok(h) = serde_json::from_str::<HPolyhedronJson>(&text) {
        return HPolyhedron::try_from(&h);
    }
    let report: OrbitSumJson = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{path:?} is neither an H-polyhedron nor a polytope report: {e}")))?;
    HPolyhedron::try_from(&report.s_ab)
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Polytope { algebra, out, emit_plot_data, plot_samples, seed } => {
            let form = json::parse_algebra(&algebra.algebra)?;
            let a = parse_spectrum(&form, &algebra.a)?;
            let b = parse_spectrum(&form, &algebra.b)?;
            let result = sum::sum_spectra(&form, &a, &b)?;
            let checks = if result.exactness {
                Some(json::ChecksJson {
                    vertex_criterion: (&sum::check_vertex_criterion(&result)?).into(),
                    recession_law: (&sum::check_recession_law(&result)?).into(),
                })
            } else {
                None
            };
            emit(&OrbitSumJson::new(&result, checks), out.as_deref())?;
            if let Some(plot_path) = emit_plot_data {
                let samples = if result.exactness && plot_samples > 0 {
                    oracle::sample_sum_spectra(&form, &a, &b, plot_samples, seed)?
                } else {
                    vec![]
                };
                emit(&PlotDataJson::new(&result, samples), Some(&plot_path))?;
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { algebra, samples, seed, tol, hrep, out, emit_plot_data } => {
            if samples == 0 {
                return Err(Error::InvalidParameter("sample count must be >= 1".into()));
            }
            if !(tol >= 0.0) {
                return Err(Error::InvalidParameter("tolerance must be nonnegative".into()));
            }
            let form = json::parse_algebra(&algebra.algebra)?;
            let a = parse_spectrum(&form, &algebra.a)?;
            let b = parse_spectrum(&form, &algebra.b)?;
            let report = match &hrep {
                Some(path) => {
                    let target = load_hrep(path)?;
                    if target.dim != form.ambient_dim {
                        return Err(Error::DimensionMismatch {
                            expected: form.ambient_dim,
                            got: target.dim,
                        });
                    }
                    oracle::verify_containment_against(
                        &FloatHRep::new(&target),
                        &form,
                        &a,
                        &b,
                        samples,
                        seed,
                        tol,
                    )?
                }
                None => {
                    let result = sum::sum_spectra(&form, &a, &b)?;
                    oracle::verify_containment(&result, samples, seed, tol)?
                }
            };
            let all_inside = report.inside == report.total;
            emit(&SampleReportJson::new(&form, &a, &b, report), out.as_deref())?;
            if let Some(plot_path) = emit_plot_data {
                let cloud = oracle::sample_sum_spectra(&form, &a, &b, samples.min(5000), seed)?;
                let result = sum::sum_spectra(&form, &a, &b)?;
                emit(&PlotDataJson::new(&result, cloud), Some(&plot_path))?;
            }
            if all_inside {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }

        Command::Lattice { algebra, truncate, functional, out } => {
            let form = json::parse_algebra(&algebra.algebra)?;
            let a = parse_spectrum(&form, &algebra.a)?;
            let b = parse_spectrum(&form, &algebra.b)?;
            let result = sum::sum_spectra(&form, &a, &b)?;
            let functional: Vec<Rat> = match functional {
                Some(text) => {
                    let f = parse_rat_vec(&text)?;
                    if f.len() != form.ambient_dim {
                        return Err(Error::DimensionMismatch {
                            expected: form.ambient_dim,
                            got: f.len(),
                        });
                    }
                    f
                }
                // Total pairing with the non-compact positive roots: depth
                // into the cone.
                None => {
                    let mut f = vec![rat_int(0); form.ambient_dim];
                    for &i in &form.noncompact_positive {
                        for (fi, &ri) in f.iter_mut().zip(&form.positive_roots[i]) {
                            *fi += rat_int(ri);
                        }
                    }
                    f
                }
            };
            let bound = parse_rat(&truncate)?;
            let truncation = Truncation { functional: functional.clone(), bound: bound.clone() };
            let points = result.s_ab.lattice_points(&truncation)?;
            let payload = LatticeJson {
                schema: json::SCHEMA_LATTICE.to_string(),
                algebra: form.algebra_name(),
                lambda_a: a.coords.iter().map(format_rat).collect(),
                lambda_b: b.coords.iter().map(format_rat).collect(),
                functional: functional.iter().map(format_rat).collect(),
                bound: format_rat(&bound),
                points: json::lattice_points_to_i64(&points)?,
            };
            emit(&payload, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::OrbitImage { algebra, a, out } => {
            let form = json::parse_algebra(&algebra)?;
            let x = parse_spectrum(&form, &a)?;
            let image = sum::orbit_image(&form, &x)?;
            #[derive(serde::Serialize)]
            struct OrbitImageJson {
                schema: String,
                algebra: String,
                x: Vec<String>,
                image: HPolyhedronJson,
            }
            let payload = OrbitImageJson {
                schema: json::SCHEMA_HPOLY.to_string(),
                algebra: form.algebra_name(),
                x: x.coords.iter().map(format_rat).collect(),
                image: HPolyhedronJson::from(&image),
            };
            emit(&payload, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Horn { n, r, algebra, a, b, out } => match (n, r, algebra) {
            (Some(n), Some(r), None) => {
                let triples = horn::horn_triples(n, r)?;
                emit(&HornTriplesJson::new(n, r, &triples), out.as_deref())?;
                Ok(ExitCode::SUCCESS)
            }
            (None, None, Some(algebra)) => {
                let form = json::parse_algebra(&algebra)?;
                let (a, b) = match (a, b) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        return Err(Error::InvalidParameter(
                            "horn with --algebra needs --a and --b".into(),
                        ))
                    }
                };
                let a = parse_spectrum(&form, &a)?;
                let b = parse_spectrum(&form, &b)?;
                let pi = horn::compact_polytope(&form, &a, &b)?;
                #[derive(serde::Serialize)]
                struct CompactJson {
                    schema: String,
                    algebra: String,
                    exact: bool,
                    hrep: HPolyhedronJson,
                }
                let payload = CompactJson {
                    schema: json::SCHEMA_HPOLY.to_string(),
                    algebra: form.algebra_name(),
                    exact: pi.exact,
                    hrep: HPolyhedronJson::from(&pi.hrep.canonicalize()),
                };
                emit(&payload, out.as_deref())?;
                Ok(ExitCode::SUCCESS)
            }
            _ => Err(Error::InvalidParameter(
                "horn needs either --n and --r, or --algebra with --a/--b".into(),
            )),
        },
    }
}
