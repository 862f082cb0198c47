//! The `mubsic` command line.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage or I/O error. Text output
//! uses 12 significant digits; JSON files carry full `f64` precision. `MUBSIC_TOL` overrides
//! the default verification tolerance when `--tol` is not given.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{fmt_g, fmt_list};
use crate::frames::{
    line_ops_from_points, point_frame_from_hg, point_frame_from_mub, point_ops_from_lines,
    quasi_distribution, verify_point_line_products, FrameJson, LineFrame, PointFrame,
};
use crate::matrix::{ComplexMatrix, HermitianOp};
use crate::plane::{
    build_apg, build_dapg, export_apg, export_incidence, import_incidence_json, verify_incidence,
    Dapg, ExportFormat,
};
use crate::sic::{
    assert_column_constant, extract_mu_pom, generate_hw_sic, group_columns_by_spectrum,
    read_fiducial, search_fiducial, solve_cyclic_probability, verify_sic, Fiducial, FiducialJson,
    SearchConfig, SicFamily, SpectraTable, GROUP_TOL, SIC_TOL,
};
use crate::weyl::{build_hg_basis, build_mub, build_weyl_pair, require_prime, verify_mub};

pub const TOL_ENV: &str = "MUBSIC_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "mubsic",
    version,
    about = "MUBs, SICs and dual affine planes in prime dimension"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutually unbiased bases
    Mub {
        #[command(subcommand)]
        cmd: MubCmd,
    },
    /// Affine and dual affine planes
    Plane {
        #[command(subcommand)]
        cmd: PlaneCmd,
    },
    /// Point and line operator frames
    Frame {
        #[command(subcommand)]
        cmd: FrameCmd,
    },
    /// SIC families, MU-POM spectra and fiducial search
    Sic {
        #[command(subcommand)]
        cmd: SicCmd,
    },
    /// Quasi-probabilities of a state on the points of a frame
    Quasiprob(QuasiArgs),
}

#[derive(Debug, Subcommand)]
pub enum MubCmd {
    /// Print the bases as JSON
    Build {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check unbiasedness
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlaneKind {
    Apg,
    Dapg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExportArg {
    Dot,
    Json,
}

impl From<ExportArg> for ExportFormat {
    fn from(e: ExportArg) -> Self {
        match e {
            ExportArg::Dot => ExportFormat::Dot,
            ExportArg::Json => ExportFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum PlaneCmd {
    /// Build a plane and print or export it
    Build {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "dapg")]
        kind: PlaneKind,
        #[arg(long, value_enum, default_value = "json")]
        export: ExportArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the incidence axioms
    Verify {
        #[arg(long)]
        d: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FrameCmd {
    /// Points from MUB projectors
    FromMub {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Points from the h/g basis with |zeta|^2 = 1/(2d)
    FromHg {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Points to lines (or lines to points, for an `alpha` file)
    Bridge {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a point file against a line file
    Verify {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        lines: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Builtin {
    Qubit,
    Qutrit,
}

#[derive(Debug, Subcommand)]
pub enum SicCmd {
    /// Generate the d² projectors from a fiducial
    Generate {
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        fiducial: Option<PathBuf>,
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a fiducial file or a generated family file
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// MU-POM spectra of every point, as CSV
    Spectra {
        #[arg(long = "in")]
        input: PathBuf,
        /// `auto` or a dual-plane incidence JSON file
        #[arg(long, default_value = "auto")]
        geom: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Group columns of a spectra CSV by spectrum
    Group {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the cyclic probability conditions
    SolveProb {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        attempts: usize,
    },
    /// Numerical fiducial search
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub restarts: usize,
    /// Success threshold on the objective
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuasiArgs {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Output of `quasiprob`: point values in `(j, m)` order and line probabilities in `(a, b)`
/// order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiJson {
    pub d: usize,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

/// Family file written by `sic generate`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub d: usize,
    pub fiducial: FiducialJson,
    pub projectors: Vec<HermitianOp>,
}

enum Status {
    Pass,
    Fail,
}

struct Io<'a> {
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref())?;
        Ok(())
    }

    /// Write `text` to `path`, or to stdout when no path is given.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<()> {
        match path {
            Some(p) => fs::write(p, text)?,
            None => {
                self.out.write_all(text.as_bytes())?;
                if !text.ends_with('\n') {
                    self.out.write_all(b"\n")?;
                }
            }
        }
        Ok(())
    }
}

fn tolerance(flag: Option<f64>, default: f64) -> Result<f64> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(TOL_ENV) {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && t.is_finite())
            .ok_or_else(|| {
                Error::Invalid(format!("{TOL_ENV} must be a positive decimal, got '{s}'"))
            }),
        Err(_) => Ok(default),
    }
}

fn verdict(io: &mut Io, what: &str, dev: f64, tol: f64) -> Result<Status> {
    let pass = dev <= tol;
    io.line(format!(
        "{what}: max deviation {} (tol {}) {}",
        fmt_g(dev),
        fmt_g(tol),
        if pass { "PASS" } else { "FAIL" }
    ))?;
    Ok(if pass { Status::Pass } else { Status::Fail })
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn read_frame(path: &Path) -> Result<FrameJson> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn geometry(spec: &str, d: usize) -> Result<Dapg> {
    if spec == "auto" {
        return build_dapg(d);
    }
    let g = import_incidence_json(&fs::read_to_string(spec)?)?;
    if g.order() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: g.order(),
        });
    }
    Ok(g)
}

/// Load a SIC family from a fiducial file or a family file.
fn load_family(path: &Path) -> Result<SicFamily> {
    let text = fs::read_to_string(path)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    if v.get("projectors").is_some() {
        let fam: FamilyJson = serde_json::from_value(v)?;
        let f = Fiducial::new(
            fam.fiducial
                .ket
                .iter()
                .map(|&[re, im]| num_complex::Complex64::new(re, im))
                .collect(),
            crate::sic::FiducialSource::Ingested,
        )?;
        SicFamily::from_projectors(f, fam.projectors)
    } else {
        Ok(generate_hw_sic(&read_fiducial(path)?))
    }
}

fn run_mub(io: &mut Io, cmd: MubCmd) -> Result<Status> {
    match cmd {
        MubCmd::Build { d, out } => {
            let m = build_mub(d)?;
            io.emit(out.as_deref(), &to_json(&m)?)?;
            Ok(Status::Pass)
        }
        MubCmd::Verify { d, tol } => {
            let tol = tolerance(tol, 1e-12)?;
            let dev = verify_mub(&build_mub(d)?);
            verdict(io, &format!("mub d={d}"), dev, tol)
        }
    }
}

fn run_plane(io: &mut Io, cmd: PlaneCmd) -> Result<Status> {
    match cmd {
        PlaneCmd::Build {
            d,
            kind,
            export,
            out,
        } => {
            let text = match kind {
                PlaneKind::Apg => export_apg(&build_apg(d)?, export.into()),
                PlaneKind::Dapg => export_incidence(&build_dapg(d)?, export.into()),
            };
            io.emit(out.as_deref(), &text)?;
            Ok(Status::Pass)
        }
        PlaneCmd::Verify { d } => {
            let report = verify_incidence(&build_dapg(d)?);
            io.line(report.to_string())?;
            Ok(if report.passed() {
                Status::Pass
            } else {
                Status::Fail
            })
        }
    }
}

fn run_frame(io: &mut Io, cmd: FrameCmd) -> Result<Status> {
    match cmd {
        FrameCmd::FromMub { d, out } => {
            let pf = point_frame_from_mub(&build_mub(d)?)?;
            io.emit(out.as_deref(), &to_json(&pf.to_json())?)?;
            Ok(Status::Pass)
        }
        FrameCmd::FromHg { d, out } => {
            let wp = build_weyl_pair(d)?;
            let basis = build_hg_basis(&wp, None, (1.0 / (2 * d) as f64).sqrt())?;
            let pf = point_frame_from_hg(&basis)?;
            io.emit(out.as_deref(), &to_json(&pf.to_json())?)?;
            Ok(Status::Pass)
        }
        FrameCmd::Bridge { points, out } => {
            let fj = read_frame(&points)?;
            let geom = build_dapg(fj.d)?;
            let text = if fj.beta.is_some() {
                to_json(&line_ops_from_points(&PointFrame::from_json(fj)?, &geom)?.to_json())?
            } else {
                to_json(&point_ops_from_lines(&LineFrame::from_json(fj)?, &geom)?.to_json())?
            };
            io.emit(out.as_deref(), &text)?;
            Ok(Status::Pass)
        }
        FrameCmd::Verify { points, lines, tol } => {
            let tol = tolerance(tol, 1e-10)?;
            let pf = PointFrame::from_json(read_frame(&points)?)?;
            let lf = LineFrame::from_json(read_frame(&lines)?)?;
            let geom = build_dapg(pf.d())?;
            let mut ok = true;
            ok &= matches!(verdict(io, "point frame", pf.verify()?, tol)?, Status::Pass);
            ok &= matches!(verdict(io, "line frame", lf.verify()?, tol)?, Status::Pass);
            let bridge = (lf.alpha() - pf.beta() * (pf.d() + 1) as f64).abs();
            ok &= matches!(verdict(io, "alpha = beta(d+1)", bridge, tol)?, Status::Pass);
            let rep = verify_point_line_products(&pf, &lf, &geom)?;
            ok &= matches!(
                verdict(io, "point-line products", rep.max_deviation(), tol)?,
                Status::Pass
            );
            Ok(if ok { Status::Pass } else { Status::Fail })
        }
    }
}

fn run_sic(io: &mut Io, cmd: SicCmd) -> Result<Status> {
    match cmd {
        SicCmd::Generate {
            fiducial,
            builtin,
            out,
        } => {
            let f = match (fiducial, builtin) {
                (_, Some(Builtin::Qubit)) => Fiducial::qubit(),
                (_, Some(Builtin::Qutrit)) => Fiducial::qutrit(),
                (Some(p), None) => read_fiducial(p)?,
                (None, None) => return Err(Error::Invalid("need --fiducial or --builtin".into())),
            };
            let fam = generate_hw_sic(&f);
            let j = FamilyJson {
                d: fam.d(),
                fiducial: f.to_json(),
                projectors: fam.projectors().to_vec(),
            };
            io.emit(out.as_deref(), &to_json(&j)?)?;
            Ok(Status::Pass)
        }
        SicCmd::Verify { input, tol } => {
            let tol = tolerance(tol, 1e-10)?;
            let fam = load_family(&input)?;
            verdict(io, &format!("sic d={}", fam.d()), verify_sic(&fam)?, tol)
        }
        SicCmd::Spectra {
            input,
            geom,
            out,
            tol,
        } => {
            let tol = tolerance(tol, SIC_TOL)?;
            let fam = load_family(&input)?;
            let g = geometry(&geom, fam.d())?;
            let table = extract_mu_pom(&fam, &g, tol)?.spectra_table();
            io.emit(out.as_deref(), &table.to_csv_string())?;
            if out.is_some() {
                let rep = assert_column_constant(&table, 1e-8);
                io.line(format!("column spread {}", fmt_g(rep.max_spread)))?;
            }
            Ok(Status::Pass)
        }
        SicCmd::Group { input, tol, out } => {
            let tol = tolerance(tol, GROUP_TOL)?;
            let table = SpectraTable::read_csv(fs::File::open(&input)?)?;
            let rep = assert_column_constant(&table, tol);
            let grouping = group_columns_by_spectrum(&table, tol);
            io.emit(out.as_deref(), &to_json(&grouping)?)?;
            if out.is_some() {
                for (g, s) in grouping.groups.iter().zip(&grouping.spectra) {
                    let labels: Vec<String> = g.iter().map(usize::to_string).collect();
                    io.line(format!("j = {}: {}", labels.join(","), fmt_list(s)))?;
                }
            }
            if rep.passed() {
                Ok(Status::Pass)
            } else {
                io.line(format!(
                    "column spread {} exceeds {}",
                    fmt_g(rep.max_spread),
                    fmt_g(tol)
                ))?;
                Ok(Status::Fail)
            }
        }
        SicCmd::SolveProb { d, seed, attempts } => {
            let sols = solve_cyclic_probability(d, seed, attempts)?;
            if let Some((lo, hi)) = sols.family_range {
                io.line(format!(
                    "family: p0 = (1 - p1 + sqrt(2 p1 - 3 p1^2))/2, p1 in [{}, {}]",
                    fmt_g(lo),
                    fmt_g(hi)
                ))?;
            }
            for p in &sols.solutions {
                io.line(fmt_list(p.entries()))?;
            }
            if sols.solutions.is_empty() {
                io.line("no solution found")?;
                return Ok(Status::Fail);
            }
            Ok(Status::Pass)
        }
        SicCmd::Search(a) => {
            let mut cfg = SearchConfig {
                seed: a.seed,
                restarts: a.restarts,
                ..SearchConfig::default()
            };
            cfg.objective_tol = tolerance(a.tol, cfg.objective_tol)?;
            if let Some(m) = a.max_iters {
                cfg.max_iters = m;
            }
            require_prime(a.d)?;
            let res = search_fiducial(a.d, &cfg)?;
            io.emit(a.out.as_deref(), &to_json(&res.fiducial.to_json())?)?;
            if a.out.is_some() {
                io.line(format!(
                    "F = {} (restart {}, {} run) {}",
                    fmt_g(res.objective),
                    res.restart,
                    res.restarts_run,
                    if res.success {
                        "fiducial"
                    } else {
                        "not a fiducial"
                    }
                ))?;
            }
            Ok(if res.success {
                Status::Pass
            } else {
                Status::Fail
            })
        }
    }
}

fn run_quasi(io: &mut Io, a: QuasiArgs) -> Result<Status> {
    let m: ComplexMatrix = serde_json::from_str(&fs::read_to_string(&a.rho)?)?;
    let rho = HermitianOp::new(m)?;
    let pf = PointFrame::from_json(read_frame(&a.points)?)?;
    let geom = build_dapg(pf.d())?;
    let q = quasi_distribution(&rho, &pf)?;
    let p = q.line_probabilities(&geom)?;
    let j = QuasiJson { d: q.d, q: q.q, p };
    io.emit(a.out.as_deref(), &to_json(&j)?)?;
    Ok(Status::Pass)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification { .. } => 1,
        _ => 2,
    }
}

/// Parse `args` (including the program name) and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let mut io = Io { out };
    let res = match cli.command {
        Command::Mub { cmd } => run_mub(&mut io, cmd),
        Command::Plane { cmd } => run_plane(&mut io, cmd),
        Command::Frame { cmd } => run_frame(&mut io, cmd),
        Command::Sic { cmd } => run_sic(&mut io, cmd),
        Command::Quasiprob(a) => run_quasi(&mut io, a),
    };
    match res {
        Ok(Status::Pass) => 0,
        Ok(Status::Fail) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
