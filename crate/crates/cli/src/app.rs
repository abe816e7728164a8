//! Subcommands. Every command returns its exit code and stdout text so the
//! binary, the tests and the HTTP service share one code path.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cpos_core::check::run_checks;
use cpos_core::chords::count_midpoint_chords;
use cpos_core::io::{self, InputError, Refusal};
use cpos_core::kernel::{parse_rational, Rational};
use cpos_core::polygon::{validate, CposPolygon};
use cpos_core::scene::{layer, render_svg, Feature, Mu, Params};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cpos",
    version,
    about = "Exact geometry of convex polygons with parallel opposite sides"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Polygon JSON file, or `-` for stdin.
    pub file: PathBuf,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SvgOut {
    /// Also write an SVG rendering to this path.
    #[arg(long, value_name = "OUT")]
    pub svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that the file holds a CPOS polygon.
    Validate(Input),
    /// Area evolute as a chain with cusp flags.
    Evolute {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Central symmetry set as a chain with cusp flags.
    Css {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Number of chord families with midpoint x.
    Nchords {
        #[command(flatten)]
        input: Input,
        /// Query point as `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Faces of the cell arrangement with their chord counts.
    NchordsMap {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Equidistant at level t.
    Equidistant {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Equidistant symmetry set, branch by branch.
    Ess {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Parallel-diagonal transform.
    Pdtransform {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "auto")]
        mu: Option<String>,
        /// Pick a mu making the transform convex around the area evolute (default).
        #[arg(long)]
        auto: bool,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Rectified area parallel at a level.
    AreaParallel {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Almost-symmetry certificate.
    AlmostSymmetry {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Rectified area symmetry set with its sampled check.
    Rass {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Run the theorem suite.
    Check(Input),
    /// Render any combination of layers.
    Svg {
        #[command(flatten)]
        input: Input,
        /// Comma separated: ae,css,diagonals,midparallels,equidistant,ess,pd,n_points,area_parallel,almost_symmetry,rass,nchords_map
        #[arg(long, default_value = "diagonals,ae,css")]
        features: String,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        level: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Output path; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Serve the JSON API.
    Serve {
        #[arg(long, env = "CPOS_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
    },
}

/// Exit code plus what goes to stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(v: &Value) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout: io::to_string(v),
        }
    }

    fn refused(r: &Refusal) -> Self {
        Outcome {
            code: EXIT_REFUSED,
            stdout: io::to_string(&r.to_json()),
        }
    }

    fn malformed(msg: impl std::fmt::Display) -> Self {
        let v = json!({ "error": { "kind": "MalformedInput", "message": msg.to_string() } });
        Outcome {
            code: EXIT_MALFORMED,
            stdout: io::to_string(&v),
        }
    }
}

enum Failure {
    Malformed(String),
    Refused(Refusal),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Malformed(e.to_string())
    }
}

impl From<Refusal> for Failure {
    fn from(r: Refusal) -> Self {
        Failure::Refused(r)
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Failure::Malformed(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

/// Parses polygon JSON text into a validated polygon.
pub fn load_polygon_text(text: &str) -> Result<CposPolygon, Result<InputError, Refusal>> {
    let pts = io::parse_vertices(text).map_err(Ok)?;
    validate(&pts).map_err(|e| Err(Refusal::from(e)))
}

fn load(input: &Input) -> Result<CposPolygon, Failure> {
    let text = read_text(&input.file)?;
    load_polygon_text(&text).map_err(|e| match e {
        Ok(m) => Failure::from(m),
        Err(r) => Failure::Refused(r),
    })
}

fn rational_arg(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|_| Failure::Malformed(format!("invalid rational: {s}")))
}

fn mu_arg(s: &str) -> Result<Mu, Failure> {
    s.parse::<Mu>().map_err(Failure::from)
}

fn write_svg(
    p: &CposPolygon,
    out: &SvgOut,
    features: &[Feature],
    params: &Params,
) -> Result<(), Failure> {
    if let Some(path) = &out.svg {
        let text = render_svg(p, features, params)?;
        std::fs::write(path, text)
            .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn layer_command(
    input: &Input,
    out: &SvgOut,
    main: Feature,
    overlays: &[Feature],
    params: Params,
) -> Result<Value, Failure> {
    let p = load(input)?;
    let v = layer(&p, main, &params)?;
    write_svg(&p, out, overlays, &params)?;
    Ok(v)
}

fn execute(cmd: &Command) -> Result<Outcome, Failure> {
    use Feature::*;
    let none = Params::default();
    let value = match cmd {
        Command::Validate(input) => io::validation(&load(input)?),
        Command::Evolute { input, out } => {
            layer_command(input, out, Ae, &[Diagonals, Ae, Css], none)?
        }
        Command::Css { input, out } => layer_command(input, out, Css, &[Diagonals, Ae, Css], none)?,
        Command::Nchords { input, at } => {
            let p = load(input)?;
            let x = io::parse_point_arg(at)?;
            let count = count_midpoint_chords(&p, &x).map_err(Refusal::from)?;
            json!(count)
        }
        Command::NchordsMap { input, out } => {
            layer_command(input, out, NchordsMap, &[NchordsMap, Ae], none)?
        }
        Command::Equidistant { input, t, out } => {
            let params = Params {
                t: Some(rational_arg(t)?),
                ..Params::default()
            };
            layer_command(
                input,
                out,
                Equidistant,
                &[Diagonals, Ae, Equidistant],
                params,
            )?
        }
        Command::Ess { input, out } => layer_command(input, out, Ess, &[Ae, Css, Ess], none)?,
        Command::Pdtransform {
            input,
            mu,
            auto: _,
            out,
        } => {
            let mu = match mu {
                Some(m) => mu_arg(m)?,
                None => Mu::Auto,
            };
            let params = Params {
                mu: Some(mu),
                ..Params::default()
            };
            layer_command(input, out, Pd, &[Midparallels, Ae, Pd], params)?
        }
        Command::AreaParallel { input, level, out } => {
            let params = Params {
                level: Some(rational_arg(level)?),
                ..Params::default()
            };
            layer_command(input, out, AreaParallel, &[Ae, AreaParallel], params)?
        }
        Command::AlmostSymmetry { input, out } => {
            layer_command(input, out, AlmostSymmetry, &[Ae, AlmostSymmetry], none)?
        }
        Command::Rass { input, out } => layer_command(input, out, Rass, &[Ae, Rass], none)?,
        Command::Check(input) => {
            let report = run_checks(&load(input)?);
            let code = if report.pass() { EXIT_OK } else { EXIT_REFUSED };
            return Ok(Outcome {
                code,
                stdout: io::to_string(&report.to_json()),
            });
        }
        Command::Svg {
            input,
            features,
            t,
            level,
            mu,
            output,
        } => {
            let p = load(input)?;
            let features = cpos_core::scene::parse_features(features)?;
            let params = Params {
                t: t.as_deref().map(rational_arg).transpose()?,
                level: level.as_deref().map(rational_arg).transpose()?,
                mu: mu.as_deref().map(mu_arg).transpose()?,
            };
            let text = render_svg(&p, &features, &params)?;
            return match output {
                Some(path) => {
                    std::fs::write(path, text)
                        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
                    Ok(Outcome {
                        code: EXIT_OK,
                        stdout: String::new(),
                    })
                }
                None => Ok(Outcome {
                    code: EXIT_OK,
                    stdout: text,
                }),
            };
        }
        Command::Serve { .. } => {
            return Err(Failure::Malformed("serve is handled by the binary".into()))
        }
    };
    Ok(Outcome::ok(&value))
}

/// Runs a parsed command (everything except `serve`).
pub fn run_command(cmd: &Command) -> Outcome {
    match execute(cmd) {
        Ok(o) => o,
        Err(Failure::Malformed(m)) => Outcome::malformed(m),
        Err(Failure::Refused(r)) => Outcome::refused(&r),
    }
}

/// Parses `argv` (including the program name) and runs it. Usage errors exit 2.
pub fn run_cli<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run_command(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_OK
            };
            Outcome {
                code,
                stdout: e.to_string(),
            }
        }
    }
}
