//! Command dispatch for the `qspectra` binary.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qspectra_core::calculus::{auto_contour, funcalc};
use qspectra_core::decomposition::{cex_truncation, spectral_decomposition, taylor_funcalc};
use qspectra_core::linalg::s_spectrum;
use qspectra_core::resolvent::right_resolvent_field;
use qspectra_core::{Error, QMatrix, QuadratureConfig, SpectrumInfo, Tolerances};

use crate::json::{self, Json};
use crate::verify::{self, VerifyConfig};
use crate::{fnspec, CliError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One-line JSON.
    #[default]
    Json,
    /// Indented JSON.
    Pretty,
}

/// Spectral theory of quaternionic matrices: S-spectra, the S-functional
/// calculus, spectral systems and the scalar/radical decomposition.
#[derive(Debug, Parser)]
#[command(name = "qspectra", version)]
pub struct RunConfig {
    /// Relative clustering tolerance for spectral points (try 1e-6 for
    /// defective matrices).
    #[arg(long, global = true, env = "QSPECTRA_TOL")]
    pub tol: Option<f64>,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// S-spectrum as spectral spheres (u, v) with multiplicities.
    Sspectrum {
        /// Matrix file (`-` for standard input).
        matrix: PathBuf,
    },
    /// f(T) by the S-functional calculus.
    Funcalc {
        matrix: PathBuf,
        /// Function spec: poly:c0,c1,.. | exp | exp:rate | rat:n0,../d0,..
        #[arg(long = "fn")]
        function: String,
        /// Use the spectral (Taylor) route and report its distance to the
        /// contour route.
        #[arg(long)]
        taylor: bool,
    },
    /// Spectral system and the decomposition T = S + N.
    Decompose { matrix: PathBuf },
    /// Run the property suite on random matrices.
    Verify {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Orientation growth of the unbounded counterexample family.
    Cex {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Evaluate R_s(T; v) = Q_s(T)⁻¹ v s̄ − T Q_s(T)⁻¹ v.
    Resolvent {
        matrix: PathBuf,
        /// The point s as [w, x, y, z].
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// The vector as inline JSON [[w,x,y,z], ...] or a file path.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
}

impl RunConfig {
    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0 && t < 1.0) {
                return Err(CliError::Parse(format!("--tol must lie in (0, 1), got {t}")));
            }
            tol.cluster_rel = t;
        }
        Ok(tol)
    }
}

/// Result of a command: the document and whether it counts as success.
pub struct Outcome {
    pub doc: Json,
    pub error: Option<CliError>,
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

pub fn load_matrix(path: &Path) -> Result<QMatrix, CliError> {
    json::parse_qmatrix(&json::parse_str(&read_input(path)?)?)
}

fn describe_spectrum(spec: &SpectrumInfo) -> String {
    let parts: Vec<String> = spec
        .spheres
        .iter()
        .map(|e| format!("({:.6e}, {:.6e})x{}", e.sphere.u, e.sphere.v, e.mult))
        .collect();
    format!("spectrum spheres [{}]", parts.join(", "))
}

fn with_spectrum(e: Error, spec: &SpectrumInfo) -> CliError {
    match e {
        Error::Domain(msg) => CliError::Core(Error::Domain(format!("{msg}; {}", describe_spectrum(spec)))),
        other => CliError::Core(other),
    }
}

/// Runs one command and builds its output document.
pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let tol = cfg.tolerances()?;
    let doc = match &cfg.command {
        Command::Sspectrum { matrix } => json::spectrum(&s_spectrum(&load_matrix(matrix)?, &tol)?),
        Command::Funcalc {
            matrix,
            function,
            taylor,
        } => {
            let f = fnspec::parse(function)?;
            let t = load_matrix(matrix)?;
            let spec = s_spectrum(&t, &tol)?;
            let contour = auto_contour(&spec, Some(&f), &tol).map_err(|e| with_spectrum(e, &spec))?;
            let ft = funcalc(&t, &f, &contour, &QuadratureConfig::default(), &tol)
                .map_err(|e| with_spectrum(e, &spec))?;
            if *taylor {
                let dec = spectral_decomposition(&t, &tol)?;
                let ft_taylor = taylor_funcalc(&dec, &f)?;
                let cross = ft_taylor.sub(&ft).norm() / ft.norm().max(1.0);
                let mut doc = json::qmatrix(&ft_taylor);
                doc.push_field("route", Json::str("spectral"));
                doc.push_field("cross_residual", Json::from(cross));
                doc
            } else {
                let mut doc = json::qmatrix(&ft);
                doc.push_field("route", Json::str("contour"));
                doc
            }
        }
        Command::Decompose { matrix } => json::decomposition(&spectral_decomposition(&load_matrix(matrix)?, &tol)?),
        Command::Verify { trials, dim, seed } => {
            let report = verify::run(&VerifyConfig {
                trials: *trials as usize,
                dim: *dim as usize,
                seed: *seed,
                tol,
            });
            let failures = report.failures();
            let doc = report.to_json();
            return Ok(Outcome {
                doc,
                error: (failures > 0).then_some(CliError::VerifyFailed(failures)),
            });
        }
        Command::Cex { m } => cex_doc(&cex_truncation(*m as usize, &tol)?),
        Command::Resolvent { matrix, s, vector } => {
            let t = load_matrix(matrix)?;
            let s = json::parse_quaternion(&json::parse_str(s)?, "--s")?;
            let text = if vector.trim_start().starts_with('[') {
                vector.clone()
            } else {
                read_input(Path::new(vector))?
            };
            let v = json::parse_qvector(&json::parse_str(&text)?)?;
            if v.len() != t.n() {
                return Err(CliError::Dimension(format!(
                    "vector has length {}, matrix has size {}",
                    v.len(),
                    t.n()
                )));
            }
            json::qvector(&right_resolvent_field(&t, s, &v, &tol)?)
        }
    };
    Ok(Outcome { doc, error: None })
}

fn cex_doc(rows: &[qspectra_core::decomposition::CexRow]) -> Json {
    let monotone = rows.windows(2).all(|w| w[1].j_norm > w[0].j_norm);
    let series = rows
        .iter()
        .map(|r| {
            Json::obj([
                ("m", Json::from(r.m)),
                ("j_norm", Json::from(r.j_norm)),
                ("lower_bound", Json::from(r.lower_bound)),
                ("ratio", Json::from(r.j_norm / r.m as f64)),
                ("spectrum_error", Json::from(r.spectrum_error)),
                ("multiplicity", Json::from(r.multiplicity)),
                ("eigvec_residual", Json::from(r.eigvec_residual)),
                ("orientation_error", Json::from(r.orientation_error)),
                ("norm_bound", Json::from(r.norm_bound)),
            ])
        })
        .collect();
    Json::obj([
        ("m_max", Json::from(rows.len())),
        ("monotone", Json::from(monotone)),
        ("bound_holds", Json::from(rows.iter().all(|r| r.j_norm >= r.lower_bound))),
        ("rows", Json::Arr(series)),
    ])
}

fn render(doc: &Json, format: Format) -> String {
    let mut s = match format {
        Format::Json => doc.to_compact(),
        Format::Pretty => doc.to_pretty(),
    };
    s.push('\n');
    s
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("standard output: {e}"))),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cfg).and_then(|outcome| {
        emit(&cfg, &render(&outcome.doc, cfg.format))?;
        match outcome.error {
            Some(e) => Err(e),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qspectra: {e}");
            e.exit_code()
        }
    }
}
