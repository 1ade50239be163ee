//! Invariant suites behind `bidisk verify`. Random instances come from a
//! fixed seed so reports are reproducible.

use std::f64::consts::LN_2;
use std::fmt;

use anyhow::Result;
use bidisk_core::bidisk::{rho, BidiskIsometry, BidiskPoint, Flat};
use bidisk_core::config::SearchConfig;
use bidisk_core::dirichlet::{face_count, offaxis_search, theorem_check, CyclicDomainSpec, FaceSampling};
use bidisk_core::equidistant::{
    between, invisible_hypersurface, leaves_intersect, samevalue_reduce, spines_equal, Hypersurface, Verdict,
};
use bidisk_core::hplane::{dist, equidistant_line, geodesics_disjoint, normalize_pair, HPoint, Mobius};
use bidisk_core::sqhyperbola::{Branch, SquareHyperbola};
use clap::ValueEnum;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SEED: u64 = 0x5eed_b1d1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Metric,
    Hyperbola,
    Foliation,
    Lemmas,
    Theorem,
    Offaxis,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    /// `None` for informational lines.
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            passed: Some(passed),
            detail,
        });
    }

    /// `measured < bound`, reported with both numbers.
    fn below(&mut self, name: &str, measured: f64, bound: f64) {
        self.check(name, measured < bound, format!("max {measured:.3e} (bound {bound:.0e})"));
    }

    fn info(&mut self, name: &str, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            passed: None,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.passed {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INFO",
            };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

pub fn run(suite: Suite, cfg: &SearchConfig) -> Result<Report> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut r = Report::default();
    match suite {
        Suite::Metric => metric(&mut r, &mut rng)?,
        Suite::Hyperbola => hyperbola(&mut r, &mut rng)?,
        Suite::Foliation => foliation(&mut r, &mut rng)?,
        Suite::Lemmas => lemmas(&mut r, &mut rng, cfg)?,
        Suite::Theorem => theorem(&mut r, &mut rng, cfg)?,
        Suite::Offaxis => offaxis(&mut r, cfg)?,
    }
    Ok(r)
}

pub fn random_point(rng: &mut StdRng) -> HPoint {
    HPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..3.0)).expect("positive height")
}

pub fn random_mobius(rng: &mut StdRng) -> Mobius {
    loop {
        let [a, b, c, d]: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        if a * d - b * c > 0.2 {
            return Mobius::new(a, b, c, d).expect("positive determinant");
        }
    }
}

/// A hyperbolic element with translation length in `[0.3, 3]` and its
/// conjugator `h`, so that the axis is `h(0, ∞)`.
pub fn random_hyperbolic(rng: &mut StdRng) -> (Mobius, Mobius) {
    let h = random_mobius(rng);
    let g = Mobius::scaling(rng.gen_range(0.3f64..3.0).exp()).expect("positive");
    (g.conjugate_by(&h), h)
}

/// The point at distance `r` from `y` in direction `theta`.
pub fn offset(y: HPoint, r: f64, theta: f64) -> HPoint {
    let to_y = Mobius::translation(y.x()).compose(&Mobius::scaling(y.y()).expect("positive"));
    let p = Mobius::rotation(theta / 2.0).apply(HPoint::on_axis(r.exp()).expect("positive"));
    to_y.apply(p)
}

/// `x, y, z` with `y` between `x` and `z`: in each factor `x` and `z` leave
/// `y` in roughly opposite directions. Rejection-sampled against
/// [`between`].
pub fn random_between(rng: &mut StdRng) -> (BidiskPoint, BidiskPoint, BidiskPoint) {
    loop {
        let pick = |rng: &mut StdRng| {
            let y = random_point(rng);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let x = offset(y, rng.gen_range(0.3..2.5), theta);
            let z = offset(y, rng.gen_range(0.3..2.5), theta + std::f64::consts::PI + rng.gen_range(-0.6..0.6));
            (x, y, z)
        };
        let (x1, y1, z1) = pick(rng);
        let (x2, y2, z2) = pick(rng);
        let (x, y, z) = (BidiskPoint::new(x1, x2), BidiskPoint::new(y1, y2), BidiskPoint::new(z1, z2));
        if between(x, y, z).unwrap_or(false) {
            return (x, y, z);
        }
    }
}

fn metric(r: &mut Report, rng: &mut StdRng) -> Result<()> {
    let i = HPoint::i();
    r.below("dist(I, 2I) = ln 2", (dist(i, HPoint::on_axis(2.0)?) - LN_2).abs(), 1e-12);
    let mut worst = 0f64;
    for _ in 0..100 {
        let (a, b) = (rng.gen_range(0.01..100.0), rng.gen_range(0.01..100.0));
        worst = worst.max((dist(HPoint::on_axis(a)?, HPoint::on_axis(b)?) - (b / a).ln().abs()).abs());
    }
    r.below("dist(aI, bI) = |ln(b/a)|", worst, 1e-12);

    let mut worst = 0f64;
    for _ in 0..1000 {
        let (z, w) = (random_point(rng), random_point(rng));
        let g = random_mobius(rng);
        worst = worst.max((dist(g.apply(z), g.apply(w)) - dist(z, w)).abs());
    }
    r.below("dist invariant under Mobius maps", worst, 1e-10);

    let bp = |rng: &mut StdRng| BidiskPoint::new(random_point(rng), random_point(rng));
    let mut excess = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let (p, q, s) = (bp(rng), bp(rng), bp(rng));
        excess = excess.max(rho(p, s) - rho(p, q) - rho(q, s));
    }
    r.check("rho triangle inequality", excess <= 1e-12, format!("max excess {excess:.3e}"));

    let mut worst = 0f64;
    let mut iota_sq = 0f64;
    let mut normalizes = 0f64;
    for n in 0..200 {
        let g = BidiskIsometry::new(random_mobius(rng), random_mobius(rng), n % 2 == 1);
        let (p, q) = (bp(rng), bp(rng));
        worst = worst.max((rho(g.apply(p), g.apply(q)) - rho(p, q)).abs());
        let iota = BidiskIsometry::iota();
        iota_sq = iota_sq.max(rho(iota.apply(iota.apply(p)), p));
        let lhs = iota.compose(&BidiskIsometry::product(g.g1, g.g2)).apply(p);
        let rhs = BidiskIsometry::product(g.g2, g.g1).compose(&iota).apply(p);
        normalizes = normalizes.max(rho(lhs, rhs));
    }
    r.below("bidisk isometries preserve rho", worst, 1e-10);
    r.below("iota squared is the identity", iota_sq, 1e-15);
    r.below("iota (g1,g2) = (g2,g1) iota", normalizes, 1e-12);

    let mut worst = 0f64;
    for _ in 0..10 {
        let flat = Flat::new(equidistant_line(random_point(rng), random_point(rng))?, equidistant_line(random_point(rng), random_point(rng))?);
        for _ in 0..20 {
            let (a, b, c, d): (f64, f64, f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            worst = worst.max((rho(flat.point_at(a, b), flat.point_at(c, d)) - (a - c).hypot(b - d)).abs());
        }
    }
    r.below("flats are Euclidean", worst, 1e-9);

    let mut crossing = 0;
    for n in 0..200 {
        let g = if n % 2 == 0 {
            random_hyperbolic(rng).0
        } else {
            Mobius::translation(rng.gen_range(0.2..3.0)).conjugate_by(&random_mobius(rng))
        };
        let z = random_point(rng);
        let (gz, ggz) = (g.apply(z), g.pow(2).apply(z));
        if !geodesics_disjoint(&equidistant_line(z, gz)?, &equidistant_line(gz, ggz)?) {
            crossing += 1;
        }
    }
    r.check("consecutive equidistant lines are disjoint", crossing == 0, format!("{crossing} of 200 cross"));

    let mut worst = 0f64;
    for _ in 0..200 {
        let (z, w) = (random_point(rng), random_point(rng));
        let (g, d) = normalize_pair(z, w)?;
        let (gz, gw) = (g.apply(z), g.apply(w));
        worst = worst.max(gz.x().abs()).max((gz.y() - 1.0).abs()).max(gw.x().abs()).max((gw.y() - d.exp()).abs() / d.exp());
    }
    r.below("normalize_pair sends the pair to (I, e^d I)", worst, 1e-9);
    Ok(())
}

fn random_hyperbola(rng: &mut StdRng) -> Result<SquareHyperbola> {
    let k = rng.gen_range(0.2..20.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    Ok(SquareHyperbola::new(random_point(rng), random_point(rng), k)?)
}

fn hyperbola(r: &mut Report, rng: &mut StdRng) -> Result<()> {
    let mut worst = 0f64;
    let mut mirrored = 0f64;
    let mut equivariant = 0f64;
    let mut count = 0;
    for _ in 0..50 {
        let h = random_hyperbola(rng)?;
        let mirror = SquareHyperbola::new(h.w(), h.z(), -h.k())?;
        let g = random_mobius(rng);
        let moved = SquareHyperbola::new(g.apply(h.z()), g.apply(h.w()), h.k())?;
        for s in h.sample(100, None)? {
            count += 1;
            worst = worst.max(h.implicit_value(s.point).abs());
            mirrored = mirrored.max(mirror.implicit_value(s.point).abs());
            equivariant = equivariant.max(moved.implicit_value(g.apply(s.point)).abs());
        }
    }
    r.below(&format!("parametrization residual over {count} samples"), worst, 1e-8);
    r.below("SH^k(z,w) = SH^-k(w,z)", mirrored, 1e-8);
    r.below("equivariance under Mobius maps", equivariant, 1e-8);

    let mut worst = 0f64;
    for _ in 0..20 {
        let (a, b): (f64, f64) = (rng.gen_range(0.2..5.0), rng.gen_range(0.2..5.0));
        let k = rng.gen_range(-20.0..20.0);
        if k == 0.0 || (a - b).abs() < 1e-3 {
            continue;
        }
        let p = SquareHyperbola::new(HPoint::on_axis(a)?, HPoint::on_axis(b)?, k)?.parametrize()?;
        let target = (a * b).sqrt();
        for branch in [Branch::Minus, Branch::Plus] {
            let mut t = p.t0() + 1.0;
            let mut prev = f64::NAN;
            let (x, ln_y) = loop {
                let (x, ln_y) = p.log_point(t, branch)?;
                if ln_y < (1e-3f64).ln() && (x - prev).abs() < 1e-7 || t > p.t0() + 40.0 {
                    break (x, ln_y);
                }
                prev = x;
                t += 1.0;
            };
            worst = worst.max((x.abs() - target).abs()).max(ln_y.exp());
        }
    }
    r.below("far points approach (±sqrt(ab), 0)", worst, 1e-3);

    let mut worst_t0 = 0f64;
    let mut min_slope = f64::INFINITY;
    for _ in 0..20 {
        let b = rng.gen_range(1.2..6.0);
        let k = rng.gen_range(0.2..20.0);
        let p = SquareHyperbola::new(HPoint::i(), HPoint::on_axis(b)?, k)?.parametrize()?;
        let dd = b.ln();
        let closed = ((dd * dd + k) / (2.0 * dd * k.sqrt())).acosh();
        worst_t0 = worst_t0.max((p.t0() - closed).abs());
        let t_end = p.t_for_height(1e-3);
        let ratio = |t: f64| p.normalized_point(t, Branch::Plus).map(|(x, y)| x / y);
        for j in 1..=200 {
            let t = p.t0() + (t_end - p.t0()) * j as f64 / 201.0;
            let h = 1e-6 * (t_end - p.t0());
            let slope = (ratio(t + h)? - ratio(t - h)?) / (2.0 * h);
            min_slope = min_slope.min(slope);
        }
    }
    r.below("t0 matches the closed form", worst_t0, 1e-9);
    r.check("x/y strictly increasing on the plus branch", min_slope > 0.0, format!("min slope {min_slope:.3e}"));

    let mut mixed = 0;
    for _ in 0..20 {
        if random_hyperbola(rng)?.side_sign().is_err() {
            mixed += 1;
        }
    }
    r.check("each curve lies on one side of SH^0", mixed == 0, format!("{mixed} of 20 mixed"));
    Ok(())
}

fn foliation(r: &mut Report, rng: &mut StdRng) -> Result<()> {
    let bp = |rng: &mut StdRng| BidiskPoint::new(random_point(rng), random_point(rng));
    let (mut leaf_res, mut rev_res, mut iota_res) = (0f64, 0f64, 0f64);
    for _ in 0..20 {
        let (z, w) = (bp(rng), bp(rng));
        let h = Hypersurface::new(z, w)?;
        let k = rng.gen_range(-10.0..10.0);
        let rev = Hypersurface::new(w, z)?.leaf(-k)?;
        let iota = Hypersurface::new(z.swapped(), w.swapped())?.leaf(-k)?;
        for x in h.leaf(k)?.sample_grid(10, 1e-3)? {
            leaf_res = leaf_res.max(h.residual(x).abs() / (1.0 + rho(x, z).powi(2)));
            rev_res = rev_res.max(rev.first.implicit_value(x.first).abs()).max(rev.second.implicit_value(x.second).abs());
            let ix = x.swapped();
            iota_res = iota_res.max(iota.first.implicit_value(ix.first).abs()).max(iota.second.implicit_value(ix.second).abs());
        }
    }
    r.below("leaf points are equidistant (relative residual)", leaf_res, 1e-7);
    r.below("E^k(z,w) = E^-k(w,z)", rev_res, 1e-8);
    r.below("iota E^k(z,w) = E^-k(iota z, iota w)", iota_res, 1e-8);

    let mut worst = 0f64;
    for _ in 0..10 {
        let spine = Hypersurface::new(bp(rng), bp(rng))?.spine()?;
        for _ in 0..20 {
            let s: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
            let d = rho(spine.flat.point_at(s[0], s[1]), spine.flat.point_at(s[2], s[3]));
            worst = worst.max((d - (s[0] - s[2]).hypot(s[1] - s[3])).abs());
        }
    }
    r.below("spines are flat", worst, 1e-9);

    let diag = |a: f64| HPoint::on_axis(a).map(BidiskPoint::diagonal);
    let shared = spines_equal(
        &Hypersurface::new(diag(0.5)?, diag(2.0)?)?,
        &Hypersurface::new(diag(0.25)?, diag(4.0)?)?,
    )?;
    r.check("E((i/2,i/2),(2i,2i)) and E((i/4,i/4),(4i,4i)) share a spine", shared, format!("{shared}"));
    Ok(())
}

fn lemmas(r: &mut Report, rng: &mut StdRng, cfg: &SearchConfig) -> Result<()> {
    let mut opposite = 0;
    let mut same_found = 0;
    let mut reduced = 0;
    for n in 0..100 {
        let (x, y, z) = random_between(rng);
        let k: f64 = rng.gen_range(0.25..12.0) * if n % 2 == 0 { 1.0 } else { -1.0 };
        let l = rng.gen_range(0.25..12.0) * k.signum();
        let a = Hypersurface::new(x, y)?;
        let b = Hypersurface::new(y, z)?;
        opposite += leaves_intersect(&a.leaf(k)?, &b.leaf(-l)?, cfg)?.len();
        if !leaves_intersect(&a.leaf(k)?, &b.leaf(l)?, cfg)?.is_empty() {
            same_found += 1;
            if !samevalue_reduce(x, y, z, k, l)?.search(cfg)?.is_empty() {
                reduced += 1;
            }
        }
    }
    r.check("opposite-sign leaves never meet (100 configurations)", opposite == 0, format!("{opposite} witnesses"));
    r.check(
        "same-sign meetings reduce to a single factor",
        reduced == same_found,
        format!("{reduced} of {same_found} reduced"),
    );

    let g = BidiskIsometry::product(Mobius::scaling(2.0)?, Mobius::scaling(3.0)?);
    let x = BidiskPoint::diagonal(HPoint::i());
    let h = Hypersurface::new(x, g.pow(2).apply(x))?;
    let small = SearchConfig {
        k_min: -20.0,
        k_max: 20.0,
        k_step: 1.0,
        ..cfg.clone()
    };
    let inv = invisible_hypersurface(x, &g, &h, 41, &small)?;
    r.check(
        "E(x, γ²x) is γ-invisible to x",
        inv.verdict == Verdict::Invisible,
        format!("{:?}, min margin {:.3e}", inv.verdict, inv.min_margin),
    );
    Ok(())
}

/// A random on-axis configuration: `γ = (g1, g2)` hyperbolic with the
/// basepoint on both axes.
pub fn random_on_axis(rng: &mut StdRng) -> (BidiskIsometry, BidiskPoint) {
    let (g1, h1) = random_hyperbolic(rng);
    let (g2, h2) = random_hyperbolic(rng);
    let on = |h: Mobius, rng: &mut StdRng| h.apply(HPoint::on_axis(rng.gen_range(-1.5f64..1.5).exp()).expect("positive"));
    let z = BidiskPoint::new(on(h1, rng), on(h2, rng));
    (BidiskIsometry::product(g1, g2), z)
}

fn theorem(r: &mut Report, rng: &mut StdRng, cfg: &SearchConfig) -> Result<()> {
    let mut configs = vec![(
        BidiskIsometry::product(Mobius::scaling(2.0)?, Mobius::scaling(3.0)?),
        BidiskPoint::diagonal(HPoint::i()),
    )];
    configs.extend((0..20).map(|_| random_on_axis(rng)));
    let mut witnesses = 0;
    let mut violations = 0;
    let mut faces = Vec::new();
    for (g, z) in &configs {
        let rep = theorem_check(g, *z, cfg)?;
        witnesses += rep.search.witnesses.len();
        violations += rep.ray_violations.len();
        let spec = CyclicDomainSpec::new(*g, *z, 6)?;
        faces.push(face_count(&spec, &FaceSampling::default())?.count());
    }
    r.check(
        &format!("no intersection over k,l in [{}, {}] ({} configurations)", cfg.k_min, cfg.k_max, configs.len()),
        witnesses == 0,
        format!("{witnesses} witnesses"),
    );
    r.check("on-axis rays meet each branch at most once", violations == 0, format!("{violations} violations"));
    r.check(
        "face count is 2",
        faces.iter().all(|&c| c == 2),
        format!("counts {faces:?}"),
    );
    Ok(())
}

fn offaxis(r: &mut Report, cfg: &SearchConfig) -> Result<()> {
    let g = Mobius::scaling(2.0)?;
    let z0 = HPoint::new(1.0, 0.25)?;
    let rep = offaxis_search(&g, z0, &[10.0], cfg)?;
    let worst = rep
        .witnesses
        .iter()
        .flat_map(|w| w.residuals)
        .fold(0f64, |m, v| m.max(v.abs()));
    r.check(
        "SH^10(g⁻¹z0, z0) meets SH^10(z0, g z0) for z0 = 1 + I/4",
        !rep.witnesses.is_empty() && worst < 1e-8,
        format!("{} witnesses, max residual {worst:.3e}", rep.witnesses.len()),
    );
    let levels: Vec<f64> = cfg.k_grid().into_iter().filter(|&k| k != 0.0).collect();
    let on_axis = offaxis_search(&g, HPoint::on_axis(1.5)?, &levels, cfg)?;
    r.check(
        "no witness for a basepoint on the axis",
        on_axis.witnesses.is_empty(),
        format!("{} witnesses over {} levels", on_axis.witnesses.len(), levels.len()),
    );
    for h in [0.25, 0.5, 1.0] {
        let rep = offaxis_search(&g, HPoint::new(1.0, h)?, &levels, cfg)?;
        let detail = match rep.smallest() {
            Some(w) => format!("smallest witnessing k = {} (kappa {:.4})", w.k, w.kappa),
            None => "no witness in range".into(),
        };
        r.info(&format!("z0 = 1 + {h}I"), detail);
    }
    Ok(())
}
