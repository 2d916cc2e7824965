//! Command-line front end. Every experiment is a subcommand; a JSON config
//! file is translated into the same flags, so both paths share one parser
//! and one validation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::acceptance;
use crate::equilibrium::{self, Branching, PointCloud};
use crate::error::{Error, Result};
use crate::green;
use crate::height;
use crate::io::write_atomic;
use crate::locus::{self, Family, Viewport};
use crate::map::{ProjPointC, ProjPointQ, RationalMapC, RationalMapQ};
use crate::parameter::{self, CubicParam, Per1Param};
use crate::rational::BigRat;

/// Exit code when `selftest` ran but some criteria failed.
pub const EXIT_CRITERIA_FAILED: i32 = 5;

const AFTER_HELP: &str = "\
All logarithms are natural. All tolerances are absolute.
Complex numbers are written 3, -2i, 1.5-2i or 0.25+0.5i.
Points of P^1(Q) are written as a reduced or unreduced fraction (3/4, -2) or inf.
Random streams are ChaCha8 (rand_chacha) seeded with the 64-bit --seed.

Exit codes: 0 success, 1 I/O failure, 2 invalid config or input,
3 numeric non-convergence or undecided value (partial results flagged),
4 resource budget exceeded, 5 selftest criteria failed.";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexArg(pub C);

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_complex(s).map(ComplexArg).ok_or_else(|| format!("not a complex number: {s:?}"))
    }
}

impl fmt::Display for ComplexArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let C { re, im } = self.0;
        if im == 0.0 {
            write!(f, "{re}")
        } else if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl Serialize for ComplexArg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_complex(s: &str) -> Option<C> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| C::new(re, 0.0));
    };
    // split at the last sign that is not the exponent sign of a float
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse().ok()?,
    };
    Some(C::new(re, im))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalArg(pub BigRat);

impl FromStr for RationalArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.trim().parse().map(RationalArg).map_err(|e: Error| e.to_string())
    }
}

impl Serialize for RationalArg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointArg(pub ProjPointQ);

impl FromStr for PointArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "inf" {
            return Ok(PointArg(ProjPointQ::infinity()));
        }
        let r: BigRat = s.parse().map_err(|e: Error| e.to_string())?;
        Ok(PointArg(ProjPointQ::from_rat(&r)))
    }
}

impl Serialize for PointArg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "arithdyn", version, about = "Green functions, heights and equidistribution experiments for rational maps on P^1", after_help = AFTER_HELP)]
pub struct Cli {
    /// Read the subcommand and its options from a JSON file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print the resolved config as JSON and exit without computing.
    #[arg(long, global = true)]
    pub dry_run: bool,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for artifacts.
    #[arg(long, global = true, default_value = "arithdyn-out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Archimedean Green function G_F(z, 1) of the lift.
    Green(GreenArgs),
    /// p-adic Green function at a rational point, as a multiple of log p.
    GreenPadic(GreenPadicArgs),
    /// Canonical height of a rational point.
    Height(HeightArgs),
    /// Certified preperiodicity verdict for a rational point.
    Preper(PointArgs),
    /// All preperiodic points up to a naive-height bound.
    Search(SearchArgs),
    /// Equilibrium-measure sample: backward tree or periodic points.
    Cloud(CloudArgs),
    /// Lyapunov exponent from Birkhoff averages.
    Lyapunov(LyapunovArgs),
    /// Potential gap between backward clouds from several base points.
    Compare(CompareArgs),
    /// Green function of the Mandelbrot set.
    Mandelbrot(MandelbrotArgs),
    /// Adelic parameter height h_M(c) of a rational parameter.
    ParamHeight(ParamHeightArgs),
    /// Roots of f_c^n(0) = f_c^k(0).
    Percrit(PercritArgs),
    /// Potential of Percrit roots against G_M at probes outside M.
    Equidist(EquidistArgs),
    /// Critical Green values of the cubic P_{c,a}, or a Branner-Hubbard sweep.
    Cubic(CubicArgs),
    /// G+ and G- on the curve Per1(kappa).
    Per1(Per1Args),
    /// Green-value grid over a parameter or dynamical plane.
    Locus(LocusArgs),
    /// Box-counting dimension of a grid's boundary.
    Boxdim(BoxdimArgs),
    /// Run the acceptance suite and write its artifacts.
    Selftest(SelftestArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Green(_) => "green",
            Command::GreenPadic(_) => "green-padic",
            Command::Height(_) => "height",
            Command::Preper(_) => "preper",
            Command::Search(_) => "search",
            Command::Cloud(_) => "cloud",
            Command::Lyapunov(_) => "lyapunov",
            Command::Compare(_) => "compare",
            Command::Mandelbrot(_) => "mandelbrot",
            Command::ParamHeight(_) => "param-height",
            Command::Percrit(_) => "percrit",
            Command::Equidist(_) => "equidist",
            Command::Cubic(_) => "cubic",
            Command::Per1(_) => "per1",
            Command::Locus(_) => "locus",
            Command::Boxdim(_) => "boxdim",
            Command::Selftest(_) => "selftest",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapFamily {
    /// z^d
    Power,
    /// z^2 + c with rational c
    Z2c,
    /// explicit integer or rational coefficient lists
    Coeffs,
    /// (z^2 + 1)^2 / (4z(z^2 - 1))
    Lattes,
}

/// A map over Q. Coefficient lists run from the pure y^d term to the pure
/// x^d term.
#[derive(Args, Debug, Clone, Serialize)]
pub struct MapArgs {
    #[arg(long, value_enum, default_value = "z2c")]
    pub map: MapFamily,
    /// Degree for the power family.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Parameter of z^2 + c.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: RationalArg,
    /// Numerator coefficients for the coeffs family.
    #[arg(long = "p", value_delimiter = ',', allow_hyphen_values = true)]
    pub p: Vec<RationalArg>,
    /// Denominator coefficients for the coeffs family.
    #[arg(long = "q", value_delimiter = ',', allow_hyphen_values = true)]
    pub q: Vec<RationalArg>,
}

impl MapArgs {
    pub fn build(&self) -> Result<RationalMapQ> {
        match self.map {
            MapFamily::Power => RationalMapQ::power(self.degree),
            MapFamily::Z2c => RationalMapQ::quadratic(&self.c.0),
            MapFamily::Lattes => Ok(RationalMapQ::lattes()),
            MapFamily::Coeffs => {
                if self.p.is_empty() || self.p.len() != self.q.len() {
                    return Err(Error::Config("coeffs needs --p and --q of equal length".into()));
                }
                let p: Vec<BigRat> = self.p.iter().map(|r| r.0.clone()).collect();
                let q: Vec<BigRat> = self.q.iter().map(|r| r.0.clone()).collect();
                RationalMapQ::from_rationals(&p, &q)
            }
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct GreenArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    /// Affine point z; the vector is (z, 1).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub z: ComplexArg,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct GreenPadicArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub x: PointArg,
    #[arg(long, default_value_t = green::PADIC_DEPTH)]
    pub depth: usize,
    /// Polynomial maps only: lim d^-n log+|f^n(x)|_p instead of the lift's G.
    #[arg(long)]
    pub affine: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeightAlgorithm {
    Global,
    Adelic,
    Both,
}

#[derive(Args, Debug, Serialize)]
pub struct HeightArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub x: PointArg,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "adelic")]
    pub method: HeightAlgorithm,
}

#[derive(Args, Debug, Serialize)]
pub struct PointArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub x: PointArg,
}

#[derive(Args, Debug, Serialize)]
pub struct SearchArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    /// Bound on the naive height (log max(|a|, |b|)).
    #[arg(long, default_value_t = 100f64.ln())]
    pub bound: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CloudKind {
    Backward,
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchingArg {
    Full,
    Random,
}

#[derive(Args, Debug, Serialize)]
pub struct CloudArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    #[arg(long, value_enum, default_value = "backward")]
    pub kind: CloudKind,
    /// Base point of the backward tree.
    #[arg(long, default_value = "0.3+0.1i", allow_hyphen_values = true)]
    pub z0: ComplexArg,
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
    #[arg(long, value_enum, default_value = "full")]
    pub branching: BranchingArg,
    /// Number of random branches.
    #[arg(long, default_value_t = 4096)]
    pub width: usize,
    /// Period for the periodic cloud.
    #[arg(long, default_value_t = 8)]
    pub period: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct LyapunovArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    #[arg(long, default_value = "0.3+0.1i", allow_hyphen_values = true)]
    pub z0: ComplexArg,
    /// Depth of the random backward tree the orbits start from.
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
    #[arg(long, default_value_t = 4096)]
    pub width: usize,
    #[arg(long, default_value_t = 5)]
    pub n_burn: usize,
    #[arg(long, default_value_t = 20)]
    pub n_avg: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CompareArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    /// Base points, at least two.
    #[arg(long, value_delimiter = ',', default_value = "0.5,5,2i", allow_hyphen_values = true)]
    pub z0: Vec<ComplexArg>,
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
    /// Radius of the probe circle.
    #[arg(long, default_value_t = 3.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 64)]
    pub probes: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct MandelbrotArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: ComplexArg,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = green::POLY_MAX_DEPTH)]
    pub depth: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ParamHeightArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: RationalArg,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct PercritArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct EquidistArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Probe parameters outside the Mandelbrot set.
    #[arg(long, value_delimiter = ',', default_value = "3", allow_hyphen_values = true)]
    pub probes: Vec<ComplexArg>,
}

#[derive(Args, Debug, Serialize)]
pub struct CubicArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: ComplexArg,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: ComplexArg,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Instead of one parameter, sweep this many seeded samples.
    #[arg(long, default_value_t = 0)]
    pub sweep: usize,
    #[arg(long, default_value_t = 1e3)]
    pub r_min: f64,
    #[arg(long, default_value_t = 1e6)]
    pub r_max: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct Per1Args {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub s: ComplexArg,
    #[arg(long, default_value = "4", allow_hyphen_values = true)]
    pub kappa: ComplexArg,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    /// parameter plane of z^2 + c
    Quadratic,
    /// cubic P_{c,a} at fixed a = --param
    CubicSlice,
    /// Per1(kappa = --param), s plane
    Per1,
    /// dynamical plane of z^2 + c with c = --param
    Julia,
}

#[derive(Args, Debug, Serialize)]
pub struct GridArgs {
    #[arg(long, value_enum, default_value = "quadratic")]
    pub family: FamilyArg,
    /// a, kappa or c, depending on the family.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub param: ComplexArg,
    /// re_min,re_max,im_min,im_max
    #[arg(long = "box", value_delimiter = ',', default_value = "-2.5,1.5,-2,2", allow_hyphen_values = true)]
    #[serde(rename = "box")]
    pub viewport: Vec<f64>,
    #[arg(long, default_value_t = 512)]
    pub width: usize,
    #[arg(long, default_value_t = 512)]
    pub height: usize,
    #[arg(long, default_value_t = green::POLY_MAX_DEPTH)]
    pub depth: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

impl GridArgs {
    fn family(&self) -> Family {
        let p = self.param.0;
        match self.family {
            FamilyArg::Quadratic => Family::Quadratic,
            FamilyArg::CubicSlice => Family::CubicSlice { a_re: p.re, a_im: p.im },
            FamilyArg::Per1 => Family::Per1 {
                kappa_re: p.re,
                kappa_im: p.im,
            },
            FamilyArg::Julia => Family::Julia { c_re: p.re, c_im: p.im },
        }
    }

    fn grid(&self) -> Result<locus::LocusGrid> {
        let [a, b, c, d] = self.viewport[..] else {
            return Err(Error::Config("--box needs four numbers".into()));
        };
        let v = Viewport::new(a, b, c, d)?;
        locus::locus_grid(self.family(), v, self.width, self.height, self.tol, self.depth)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct LocusArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: GridArgs,
    /// Green value drawn as white in the PGM.
    #[arg(long, default_value_t = 4.0)]
    pub pgm_max: f64,
    /// Also write the per-pixel CSV.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct BoxdimArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: GridArgs,
    /// Box sizes in pixels.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32,64")]
    pub scales: Vec<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

/// What a subcommand produced: its JSON result and the files it wrote.
struct Output {
    result: Value,
    artifacts: Vec<String>,
    exit_code: i32,
}

impl Output {
    fn new(result: Value) -> Self {
        Output {
            result,
            artifacts: Vec::new(),
            exit_code: 0,
        }
    }
}

struct Artifacts<'a> {
    dir: &'a Path,
    written: Vec<String>,
}

impl Artifacts<'_> {
    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        write_atomic(&self.dir.join(name), bytes)?;
        self.written.push(name.to_string());
        Ok(())
    }
}

fn unit(z: C) -> ProjPointC {
    ProjPointC::from_complex(z)
}

fn execute(cmd: &Command, out: &Path) -> Result<Output> {
    let mut art = Artifacts {
        dir: out,
        written: Vec::new(),
    };
    let mut output = match cmd {
        Command::Green(a) => {
            let f = RationalMapC::from_q(&a.map.build()?);
            let g = green::green_arch_vector(&f, a.z.0, C::new(1.0, 0.0), 0.0, a.tol)?;
            Output::new(g.to_json())
        }
        Command::GreenPadic(a) => {
            let f = a.map.build()?;
            let g = if a.affine {
                let z = a.x.0.to_rat().ok_or_else(|| Error::domain("affine Green function needs a finite point"))?;
                green::green_padic_affine(&f, a.prime, &z, a.depth)?
            } else {
                green::green_padic(&f, a.prime, &a.x.0, a.depth)?
            };
            Output::new(g.to_json())
        }
        Command::Height(a) => {
            let f = a.map.build()?;
            let x = &a.x.0;
            let mut res = json!({"point": x.to_string(), "naive": height::naive_height(x)});
            if matches!(a.method, HeightAlgorithm::Global | HeightAlgorithm::Both) {
                res["global"] = height::canonical_height_global(&f, x, a.tol)?.to_json();
            }
            if matches!(a.method, HeightAlgorithm::Adelic | HeightAlgorithm::Both) {
                res["adelic"] = height::canonical_height_adelic(&f, x, a.tol)?.to_json();
            }
            let main = if a.method == HeightAlgorithm::Global { "global" } else { "adelic" };
            res["value"] = res[main]["value"].clone();
            res["error"] = res[main]["error"].clone();
            Output::new(res)
        }
        Command::Preper(a) => {
            let f = a.map.build()?;
            let cert = height::is_preperiodic(&f, &a.x.0)?;
            let orbit: Vec<String> = cert.orbit.iter().map(ToString::to_string).collect();
            let verdict = match cert.verdict {
                height::Verdict::Preperiodic { tail, period } => {
                    json!({"verdict": "preperiodic", "tail": tail, "period": period})
                }
                height::Verdict::Wandering { index, height, bound } => {
                    json!({"verdict": "wandering", "index": index, "height": height, "bound": bound})
                }
            };
            Output::new(json!({"certificate": verdict, "orbit": orbit}))
        }
        Command::Search(a) => {
            let f = a.map.build()?;
            let pts: Vec<String> = height::preperiodic_search(&f, a.bound)?.iter().map(ToString::to_string).collect();
            let csv = crate::io::csv(&["point"], pts.iter().map(|p| vec![p.clone()]));
            art.write("search.csv", csv.as_bytes())?;
            Output::new(json!({"count": pts.len(), "points": pts}))
        }
        Command::Cloud(a) => {
            let f = RationalMapC::from_q(&a.map.build()?);
            let cloud = match a.kind {
                CloudKind::Backward => {
                    let branching = match a.branching {
                        BranchingArg::Full => Branching::Full,
                        BranchingArg::Random => Branching::Random { width: a.width },
                    };
                    equilibrium::backward_cloud(&f, &unit(a.z0.0), a.depth, branching, a.seed)?
                }
                CloudKind::Periodic => equilibrium::periodic_cloud(&f, a.period)?,
            };
            art.write("cloud.csv", cloud.to_csv().as_bytes())?;
            art.write("cloud.bin", &cloud.to_binary())?;
            Output::new(json!({"atoms": cloud.len(), "covering_radius": equilibrium::covering_radius(&cloud, 64)}))
        }
        Command::Lyapunov(a) => {
            let f = RationalMapC::from_q(&a.map.build()?);
            let cloud = equilibrium::backward_cloud(&f, &unit(a.z0.0), a.depth, Branching::Random { width: a.width }, a.seed)?;
            let est = equilibrium::lyapunov(&f, &cloud, a.n_burn, a.n_avg, a.seed)?;
            let mut res = est.to_json();
            res["half_log_degree"] = json!((f.degree() as f64).ln() / 2.0);
            Output::new(res)
        }
        Command::Compare(a) => {
            if a.z0.len() < 2 {
                return Err(Error::Config("compare needs at least two base points".into()));
            }
            let f = RationalMapC::from_q(&a.map.build()?);
            let clouds: Vec<PointCloud> = a
                .z0
                .iter()
                .map(|z| equilibrium::backward_cloud(&f, &unit(z.0), a.depth, Branching::Full, 0))
                .collect::<Result<_>>()?;
            let probes = equilibrium::probe_ring(a.radius, a.probes);
            let mut rows = Vec::new();
            let mut worst: f64 = 0.0;
            for i in 0..clouds.len() {
                for j in i + 1..clouds.len() {
                    let gap = equilibrium::compare_clouds(&clouds[i], &clouds[j], &probes)?;
                    worst = worst.max(gap);
                    rows.push(json!({"a": a.z0[i], "b": a.z0[j], "gap": gap}));
                }
            }
            Output::new(json!({"max_gap": worst, "pairs": rows}))
        }
        Command::Mandelbrot(a) => {
            let r = parameter::mandelbrot_green_full(a.c.0, a.tol, a.depth)?;
            let mut res = r.green.to_json();
            res["escape_time"] = json!(r.escape_time);
            res["distance_estimate"] = json!(r.distance_estimate());
            Output::new(res)
        }
        Command::ParamHeight(a) => Output::new(parameter::mandelbrot_param_height(&a.c.0, a.tol)?.to_json()),
        Command::Percrit(a) => {
            let r = parameter::percrit_roots(a.n, a.k)?;
            art.write("percrit.csv", r.to_csv().as_bytes())?;
            Output::new(json!({
                "n": r.n,
                "k": r.k,
                "degree": r.degree,
                "count": r.count(),
                "distinct": r.roots.len(),
                "residual": r.residual,
            }))
        }
        Command::Equidist(a) => {
            let probes: Vec<C> = a.probes.iter().map(|p| p.0).collect();
            Output::new(parameter::percrit_equidistribution_test(a.n, a.k, &probes)?.to_json())
        }
        Command::Cubic(a) => {
            if a.sweep > 0 {
                let sup = parameter::branner_hubbard_sweep(a.sweep, a.r_min, a.r_max, a.seed, a.tol)?;
                Output::new(json!({"samples": a.sweep, "sup_gap": sup}))
            } else {
                let g = parameter::cubic_green(&CubicParam::new(a.c.0, a.a.0), a.tol)?;
                Output::new(g.to_json())
            }
        }
        Command::Per1(a) => {
            let p = Per1Param::new(a.s.0, a.kappa.0)?;
            let (plus, minus) = parameter::per1_greens(&p, a.tol)?;
            Output::new(json!({
                "g_plus": plus.to_json(),
                "g_minus": minus.to_json(),
                "asymptotic_constant": parameter::per1_asymptotic_constant(a.kappa.0),
            }))
        }
        Command::Locus(a) => {
            let g = a.grid.grid()?;
            art.write("locus.pgm", &g.to_pgm(a.pgm_max))?;
            if a.csv {
                art.write("locus.csv", g.to_csv().as_bytes())?;
            }
            Output::new(g.summary())
        }
        Command::Boxdim(a) => {
            let g = a.grid.grid()?;
            let d = locus::boundary_box_dimension(&g, &a.scales)?;
            Output::new(d.to_json())
        }
        Command::Selftest(a) => {
            let reports = acceptance::run_suite(a.seed, Some(out), |r| eprintln!("{}", r.line()))?;
            for r in &reports {
                art.written.push(format!("criterion-{:02}.json", r.id));
            }
            art.written.push("report.json".into());
            let failed: Vec<usize> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
            let mut o = Output::new(json!({
                "seed": a.seed,
                "passed": reports.len() - failed.len(),
                "failed": failed,
            }));
            if !failed.is_empty() {
                o.exit_code = EXIT_CRITERIA_FAILED;
            }
            o
        }
    };
    let bytes = serde_json::to_vec_pretty(&output.result).expect("json");
    art.write(&format!("{}.json", cmd.name()), &bytes)?;
    output.artifacts = art.written;
    Ok(output)
}

/// Turns a JSON config object into command-line arguments: the `command`
/// key names the subcommand and every other key becomes `--key=value`.
pub fn config_to_args(config: &Value) -> Result<Vec<String>> {
    let obj = config
        .as_object()
        .ok_or_else(|| Error::Config("config must be a JSON object".into()))?;
    let command = obj
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Config("config needs a string \"command\"".into()))?;
    let mut args = vec![command.to_string()];
    for (key, value) in obj {
        if key == "command" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        let scalar = |v: &Value| -> Result<String> {
            match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::Config(format!("unsupported value for {key}: {v}"))),
            }
        };
        match value {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => args.push(flag),
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect::<Result<_>>()?;
                args.push(format!("{flag}={}", parts.join(",")));
            }
            v => args.push(format!("{flag}={}", scalar(v)?)),
        }
    }
    Ok(args)
}

fn summary(status: &str, command: Option<&str>, body: Value) -> String {
    let mut v = json!({"status": status, "command": command});
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v.to_string()
}

fn fail(command: Option<&str>, e: &Error) -> i32 {
    let code = e.exit_code();
    let mut body = json!({"error": e.to_string(), "exit_code": code});
    if let Error::Numeric { best, bound, .. } = e {
        body["partial"] = json!({"best": best, "bound": bound});
    }
    if let Error::Undecided { lo, hi, depth } = e {
        body["partial"] = json!({"lo": lo, "hi": hi, "depth": depth});
    }
    println!("{}", summary("error", command, body));
    code
}

/// Parses arguments, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return fail(None, &Error::Config(e.kind().to_string()));
        }
    };
    let cli = match &cli.config {
        None => cli,
        Some(path) => match load_config(path, &cli) {
            Ok(c) => c,
            Err(e) => return fail(None, &e),
        },
    };
    let Some(command) = &cli.command else {
        return fail(None, &Error::Config("no subcommand given; see --help".into()));
    };
    if cli.dry_run {
        let config = serde_json::to_value(command).expect("json");
        println!(
            "{}",
            summary("dry-run", Some(command.name()), json!({"config": config, "out": cli.out}))
        );
        return 0;
    }
    if let Some(n) = cli.threads {
        if n == 0 {
            return fail(Some(command.name()), &Error::Config("--threads must be positive".into()));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    match execute(command, &cli.out) {
        Ok(o) => {
            let status = if o.exit_code == 0 { "ok" } else { "failed" };
            println!(
                "{}",
                summary(
                    status,
                    Some(command.name()),
                    json!({
                        "result": o.result,
                        "artifacts": o.artifacts,
                        "out": cli.out,
                        "elapsed_s": start.elapsed().as_secs_f64(),
                    })
                )
            );
            o.exit_code
        }
        Err(e) => fail(Some(command.name()), &e),
    }
}

fn load_config(path: &Path, cli: &Cli) -> Result<Cli> {
    if cli.command.is_some() {
        return Err(Error::Config("give either --config or a subcommand, not both".into()));
    }
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let mut args = vec!["arithdyn".to_string()];
    args.extend(config_to_args(&value)?);
    let mut parsed = Cli::try_parse_from(&args).map_err(|e| Error::Config(e.to_string().trim().to_string()))?;
    if parsed.config.is_some() {
        return Err(Error::Config("a config file cannot name another config".into()));
    }
    parsed.dry_run |= cli.dry_run;
    if cli.threads.is_some() {
        parsed.threads = cli.threads;
    }
    if cli.out != Path::new("arithdyn-out") {
        parsed.out = cli.out.clone();
    }
    Ok(parsed)
}

/// JSON Schema for config files, derived from the argument definitions.
pub fn config_schema() -> Value {
    let cmd = Cli::command();
    let globals: Vec<&clap::Arg> = cmd.get_arguments().filter(|a| a.is_global_set()).collect();
    let mut variants = Vec::new();
    for sub in cmd.get_subcommands() {
        let mut props = serde_json::Map::new();
        props.insert("command".into(), json!({"const": sub.get_name()}));
        for arg in sub.get_arguments().chain(globals.iter().copied()) {
            let id = arg.get_id().as_str();
            if matches!(id, "help" | "version" | "config") {
                continue;
            }
            let long = arg.get_long().unwrap_or(id).replace('-', "_");
            let is_flag = matches!(arg.get_action(), clap::ArgAction::SetTrue);
            let multi = arg.get_value_delimiter().is_some();
            let possible: Vec<String> = arg.get_possible_values().iter().map(|p| p.get_name().to_string()).collect();
            let mut schema = if is_flag {
                json!({"type": "boolean"})
            } else if !possible.is_empty() {
                json!({"enum": possible})
            } else if multi {
                json!({"type": ["array", "string"], "items": {"type": ["string", "number"]}})
            } else {
                json!({"type": ["string", "number"]})
            };
            if let Some(help) = arg.get_help() {
                schema["description"] = json!(help.to_string());
            }
            let defaults: Vec<String> = arg
                .get_default_values()
                .iter()
                .map(|v| v.to_string_lossy().into_owned())
                .collect();
            if !defaults.is_empty() && !is_flag {
                schema["default"] = json!(defaults.join(","));
            }
            props.insert(long, schema);
        }
        let required: Vec<String> = std::iter::once("command".to_string())
            .chain(
                sub.get_arguments()
                    .filter(|a| a.is_required_set())
                    .map(|a| a.get_long().unwrap_or(a.get_id().as_str()).replace('-', "_")),
            )
            .collect();
        variants.push(json!({
            "title": sub.get_name(),
            "description": sub.get_about().map(|s| s.to_string()),
            "type": "object",
            "properties": props,
            "required": required,
            "additionalProperties": false,
        }));
    }
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "arithdyn experiment config",
        "oneOf": variants,
    })
}
