//! `bidisk`: figures, experiments and verification suites for equidistant
//! hypersurfaces in H²×H².
//!
//! Exit codes: 0 success, 1 check failure or I/O error, 2 usage error or
//! invalid input, 3 search found nothing.

mod svg;
mod verify;

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bidisk_core::bidisk::{rho, BidiskIsometry, BidiskPoint};
use bidisk_core::config::SearchConfig;
use bidisk_core::dirichlet::{face_count, offaxis_search, on_axis, CyclicDomainSpec, FaceSampling};
use bidisk_core::equidistant::{intersection_search, Hypersurface};
use bidisk_core::export;
use bidisk_core::hplane::{dist, HPoint, Mobius};
use bidisk_core::intersect::SampledCurve;
use bidisk_core::sqhyperbola::{CurveSample, SquareHyperbola};
use bidisk_core::GeomError;
use clap::{Args, Parser, Subcommand};

use svg::{PlotSpec, Style, Svg};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "bidisk", version, about = "Equidistant hypersurfaces and Dirichlet domains in H²×H²")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance in H² (points "x,y") or in the bidisk (points "x1,y1,x2,y2").
    Distance {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Plot SH^k(z, w) for a list of k, with optional overlay family.
    Curve(CurveArgs),
    /// Off-axis curve met twice by a ray from the origin.
    Fig4(Fig4Args),
    /// Run an invariant suite.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Count faces of a truncated Dirichlet domain for a cyclic group.
    Faces(FacesArgs),
    /// Grid search for common points of E(z1, w1) and E(z2, w2).
    Intersect(IntersectArgs),
}

/// Search parameters: defaults, then `--config FILE`, then these flags.
#[derive(Args, Debug, Clone, Default)]
struct SearchArgs {
    /// key=value file with search parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    k_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    k_max: Option<f64>,
    #[arg(long)]
    k_step: Option<f64>,
    #[arg(long)]
    t_scan: Option<f64>,
    #[arg(long)]
    residual_tol: Option<f64>,
    #[arg(long)]
    max_bisect: Option<usize>,
    #[arg(long)]
    curve_samples: Option<usize>,
    #[arg(long)]
    y_floor: Option<f64>,
    /// Disable same-sign pruning.
    #[arg(long)]
    no_prune: bool,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

impl SearchArgs {
    fn resolve(&self) -> Result<SearchConfig> {
        let mut cfg = match &self.config {
            Some(path) => SearchConfig::from_file(path)?,
            None => SearchConfig::default(),
        };
        let set = |field: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *field = v;
            }
        };
        set(&mut cfg.k_min, self.k_min);
        set(&mut cfg.k_max, self.k_max);
        set(&mut cfg.k_step, self.k_step);
        set(&mut cfg.t_scan, self.t_scan);
        set(&mut cfg.residual_tol, self.residual_tol);
        set(&mut cfg.y_floor, self.y_floor);
        if let Some(v) = self.max_bisect {
            cfg.max_bisect = v;
        }
        if let Some(v) = self.curve_samples {
            cfg.curve_samples = v;
        }
        if self.no_prune {
            cfg.prune_samesign = false;
        }
        if self.sequential {
            cfg.parallel = false;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long, default_value = "0,1", allow_hyphen_values = true, value_parser = parse_hpoint)]
    z: HPoint,
    #[arg(long, default_value = "0,2", allow_hyphen_values = true, value_parser = parse_hpoint)]
    w: HPoint,
    #[arg(long, default_value = "4,0,-4", value_delimiter = ',', allow_hyphen_values = true)]
    k: Vec<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_hpoint, requires = "overlay_w")]
    overlay_z: Option<HPoint>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_hpoint, requires = "overlay_z")]
    overlay_w: Option<HPoint>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    overlay_k: Vec<f64>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// x_min,x_max,y_min,y_max
    #[arg(long, default_value = "-2,2,0,2", allow_hyphen_values = true, value_parser = parse_window)]
    window: [f64; 4],
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 400)]
    height: u32,
    /// Samples per branch.
    #[arg(long, default_value_t = 400)]
    samples: usize,
    /// Curves stop at this height relative to the defining points.
    #[arg(long, default_value_t = 1e-3)]
    cutoff: f64,
}

#[derive(Args, Debug)]
struct Fig4Args {
    #[arg(long, default_value = "1,0.25", allow_hyphen_values = true, value_parser = parse_hpoint)]
    z0: HPoint,
    /// g is z ↦ scale·z.
    #[arg(long, default_value_t = 2.0)]
    scale: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    m: f64,
    #[arg(long, default_value = "fig4.svg")]
    out: PathBuf,
    #[arg(long, default_value = "0,6,0,1.5", allow_hyphen_values = true, value_parser = parse_window)]
    window: [f64; 4],
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 200)]
    height: u32,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
struct FacesArgs {
    /// Matrix entries a,b,c,d of the first factor.
    #[arg(long, default_value = "2,0,0,1", allow_hyphen_values = true, value_parser = parse_mobius)]
    g1: Mobius,
    #[arg(long, default_value = "3,0,0,1", allow_hyphen_values = true, value_parser = parse_mobius)]
    g2: Mobius,
    #[arg(long, default_value = "0,1,0,1", allow_hyphen_values = true, value_parser = parse_bidisk)]
    p: BidiskPoint,
    /// Powers ±1..±N.
    #[arg(long, default_value_t = 6)]
    n: u32,
    #[arg(long, default_value_t = FaceSampling::default().k_values)]
    k_values: usize,
    #[arg(long, default_value_t = FaceSampling::default().t_values)]
    t_values: usize,
    #[arg(long, default_value_t = FaceSampling::default().k_scale)]
    k_scale: f64,
    #[arg(long, default_value_t = FaceSampling::default().y_floor)]
    cutoff: f64,
    #[arg(long, default_value_t = FaceSampling::default().margin)]
    margin: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct IntersectArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_bidisk)]
    z1: BidiskPoint,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_bidisk)]
    w1: BidiskPoint,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_bidisk)]
    z2: BidiskPoint,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_bidisk)]
    w2: BidiskPoint,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("{p:?} is not a number")))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", v.len()));
    }
    if !v.iter().all(|x| x.is_finite()) {
        return Err("values must be finite".into());
    }
    Ok(v)
}

fn parse_hpoint(s: &str) -> Result<HPoint, String> {
    let v = parse_floats(s, 2)?;
    HPoint::new(v[0], v[1]).map_err(|e| e.to_string())
}

fn parse_bidisk(s: &str) -> Result<BidiskPoint, String> {
    let v = parse_floats(s, 4)?;
    let p = HPoint::new(v[0], v[1]).map_err(|e| e.to_string())?;
    let q = HPoint::new(v[2], v[3]).map_err(|e| e.to_string())?;
    Ok(BidiskPoint::new(p, q))
}

fn parse_mobius(s: &str) -> Result<Mobius, String> {
    let v = parse_floats(s, 4)?;
    Mobius::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

fn parse_window(s: &str) -> Result<[f64; 4], String> {
    let v = parse_floats(s, 4)?;
    Ok([v[0], v[1], v[2], v[3]])
}

/// Marks errors caused by the invocation rather than the environment.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<GeomError>().is_some() || e.downcast_ref::<UsageError>().is_some();
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_FAILURE })
        }
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Distance { z, w } => distance(&z, &w),
        Command::Curve(args) => curve(&args),
        Command::Fig4(args) => fig4(&args),
        Command::Verify { suite, search } => {
            let report = verify::run(suite, &search.resolve()?)?;
            print!("{report}");
            Ok(if report.passed() { 0 } else { EXIT_FAILURE })
        }
        Command::Faces(args) => faces(&args),
        Command::Intersect(args) => intersect(&args),
    }
}

fn distance(z: &str, w: &str) -> Result<u8> {
    let arity = |s: &str| s.split(',').count();
    match (arity(z), arity(w)) {
        (2, 2) => {
            let (z, w) = (parse_hpoint(z).map_err(UsageError)?, parse_hpoint(w).map_err(UsageError)?);
            println!("{}", export::fmt_f64(dist(z, w)));
        }
        (4, 4) => {
            let (z, w) = (parse_bidisk(z).map_err(UsageError)?, parse_bidisk(w).map_err(UsageError)?);
            println!("{}", export::fmt_f64(rho(z, w)));
        }
        _ => bail!(UsageError("points must both be \"x,y\" or both \"x1,y1,x2,y2\"".into())),
    }
    Ok(0)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn sample_curve(h: &SquareHyperbola, samples: usize, cutoff: f64) -> Result<Vec<CurveSample>> {
    if !(cutoff > 0.0 && cutoff < 1.0) {
        bail!(UsageError("cutoff must lie in (0, 1)".into()));
    }
    let t_max = h.trace()?.t_for_height(cutoff);
    Ok(h.sample(samples, Some(t_max))?)
}

fn xy(samples: &[CurveSample]) -> Vec<(f64, f64)> {
    samples.iter().map(|s| (s.point.x(), s.point.y())).collect()
}

fn curve(a: &CurveArgs) -> Result<u8> {
    let spec = PlotSpec::new(a.window, a.width, a.height).map_err(|e| UsageError(e.to_string()))?;
    if a.k.is_empty() {
        bail!(UsageError("at least one k is required".into()));
    }
    fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    let mut svg = Svg::new(spec);
    let mut families = vec![("curve", a.z, a.w, &a.k)];
    if let (Some(z), Some(w)) = (a.overlay_z, a.overlay_w) {
        if a.overlay_k.is_empty() {
            bail!(UsageError("--overlay-k is required with an overlay".into()));
        }
        families.push(("overlay", z, w, &a.overlay_k));
    }
    for (class, z, w, ks) in families {
        for &k in ks {
            let h = SquareHyperbola::new(z, w, k)?;
            let samples = sample_curve(&h, a.samples, a.cutoff)?;
            let csv = a.out_dir.join(format!("{class}_k{k}.csv"));
            let mut out = create(&csv)?;
            export::write_curve_samples(&mut out, &samples).with_context(|| format!("writing {}", csv.display()))?;
            out.flush().with_context(|| format!("writing {}", csv.display()))?;
            let style = if k == 0.0 { Style::Dashed } else { Style::Solid };
            svg.polyline(&xy(&samples), style, class, &[("k", format!("{k}"))]);
            println!("{class} k={k}: {} samples -> {}", samples.len(), csv.display());
        }
        svg.marker(z.x(), z.y(), "site");
        svg.marker(w.x(), w.y(), "site");
    }
    let path = a.out_dir.join("curve.svg");
    write_text(&path, &svg.finish(&[]))?;
    println!("wrote {}", path.display());
    Ok(0)
}

fn fig4(a: &Fig4Args) -> Result<u8> {
    let cfg = a.search.resolve()?;
    let spec = PlotSpec::new(a.window, a.width, a.height).map_err(|e| UsageError(e.to_string()))?;
    let g = Mobius::scaling(a.scale)?;
    let z0 = a.z0;
    if on_axis(&g, z0)? {
        eprintln!("z0 lies on the axis of g: a ray meets each branch at most once, nothing to draw");
        return Ok(EXIT_NOT_FOUND);
    }
    let report = offaxis_search(&g, z0, &[a.m], &cfg)?;
    let Some(w) = report
        .witnesses
        .iter()
        .min_by(|p, q| dist(p.point, z0).total_cmp(&dist(q.point, z0)))
    else {
        eprintln!("no witness at m = {}", a.m);
        return Ok(EXIT_NOT_FOUND);
    };
    let gw = g.apply(w.point);
    let kappa = w.kappa;
    let b = SquareHyperbola::new(z0, g.apply(z0), a.m)?;

    // g fixes 0 and ∞, so the ray is y = κx in the given coordinates
    let on_ray = |p: HPoint| p.y() - kappa * p.x();
    let walked = SampledCurve::new(b, &cfg)?;
    let values = walked.values(on_ray);
    let extrema = walked.extrema(on_ray, &values);
    let crossings: Vec<HPoint> = walked
        .roots(on_ray, &values, &extrema, 0.0, cfg.max_bisect)
        .into_iter()
        .filter_map(|s| walked.point(s))
        .filter(|p| p.x() > 0.0)
        .collect();

    let mut svg = Svg::new(spec);
    let samples = sample_curve(&b, a.samples, cfg.y_floor.max(1e-6))?;
    svg.polyline(&xy(&samples), Style::Thick, "curve", &[("k", format!("{}", a.m))]);
    // long enough to leave the window
    let x_end = 4.0 * (a.window[0].abs() + a.window[1].abs() + a.window[3] / kappa.abs().max(1e-3));
    svg.polyline(&[(0.0, 0.0), (x_end, kappa * x_end)], Style::Dashed, "ray", &[]);
    svg.marker(z0.x(), z0.y(), "site");
    svg.marker(g.apply(z0).x(), g.apply(z0).y(), "site");
    svg.marker(w.point.x(), w.point.y(), "mark");
    svg.marker(gw.x(), gw.y(), "mark");
    write_text(
        &a.out,
        &svg.finish(&[("m", format!("{}", a.m)), ("kappa", format!("{kappa:.16e}"))]),
    )?;

    println!("m = {}", a.m);
    println!("kappa = {kappa:.6}");
    println!("w = {:.6} + {:.6}i", w.point.x(), w.point.y());
    println!("g(w) = {:.6} + {:.6}i", gw.x(), gw.y());
    let others: Vec<String> = crossings
        .iter()
        .filter(|p| dist(**p, w.point) > 1e-6 && dist(**p, gw) > 1e-6)
        .map(|p| format!("{:.4} + {:.4}i", p.x(), p.y()))
        .collect();
    println!("ray crossings: {} ({} unmarked: {})", crossings.len(), others.len(), others.join(", "));
    println!("wrote {}", a.out.display());
    Ok(0)
}

fn faces(a: &FacesArgs) -> Result<u8> {
    let gamma = BidiskIsometry::product(a.g1, a.g2);
    let spec = CyclicDomainSpec::new(gamma, a.p, a.n)?;
    let sampling = FaceSampling {
        k_values: a.k_values,
        t_values: a.t_values,
        k_scale: a.k_scale,
        y_floor: a.cutoff,
        margin: a.margin,
        parallel: !a.sequential,
        ..FaceSampling::default()
    };
    let report = face_count(&spec, &sampling)?;
    if let Some(path) = &a.out {
        let mut out = create(path)?;
        export::write_face_witnesses(&mut out, &report.witnesses).with_context(|| format!("writing {}", path.display()))?;
        out.flush().with_context(|| format!("writing {}", path.display()))?;
    }
    println!("faces: {}", report.count());
    println!("powers: {:?}", report.powers);
    println!("walls examined: {}", 2 * a.n);
    println!("samples: {}", report.samples);
    for w in &report.witnesses {
        println!("  n={:>3}  k={:+.4}  margin {:.3e}  residual {:.3e}", w.n, w.k, w.margin, w.residual);
    }
    Ok(0)
}

fn intersect(a: &IntersectArgs) -> Result<u8> {
    let cfg = a.search.resolve()?;
    let h1 = Hypersurface::new(a.z1, a.w1)?;
    let h2 = Hypersurface::new(a.z2, a.w2)?;
    let s = intersection_search(&h1, &h2, &cfg)?;
    if let Some(path) = &a.out {
        let mut out = create(path)?;
        export::write_intersection_witnesses(&mut out, &s.witnesses).with_context(|| format!("writing {}", path.display()))?;
        out.flush().with_context(|| format!("writing {}", path.display()))?;
    }
    println!("cells: {}  pruned: {}  witnesses: {}", s.cells, s.pruned, s.witnesses.len());
    if s.chain.is_some() {
        println!("same-sign pruning active");
    }
    for w in s.witnesses.iter().take(20) {
        println!("  k={:+} l={:+}  point {}  residual {:.3e}", w.k, w.l, w.point, w.residual);
    }
    Ok(if s.witnesses.is_empty() { EXIT_NOT_FOUND } else { 0 })
}
