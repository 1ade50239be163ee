//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Distances and residuals are recomputed here from the
//! closed form `cosh d = 1 + |z - w|² / (2 y_z y_w)` rather than taken from
//! the library.

use std::f64::consts::{LN_2, PI, TAU};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bidisk_core::bidisk::{BidiskIsometry, BidiskPoint};
use bidisk_core::config::SearchConfig;
use bidisk_core::dirichlet::{face_count, offaxis_search, theorem_check, CyclicDomainSpec, FaceSampling};
use bidisk_core::equidistant::{between, leaves_intersect, samevalue_reduce, spines_equal, Hypersurface};
use bidisk_core::hplane::{dist, Geodesic, HPoint, Mobius};
use bidisk_core::sqhyperbola::{Branch, SquareHyperbola};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn d2(p: (f64, f64), q: (f64, f64)) -> f64 {
    let e = ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)) / (2.0 * p.1 * q.1);
    (1.0 + e).acosh().powi(2)
}

fn xy(p: HPoint) -> (f64, f64) {
    (p.x(), p.y())
}

fn level(p: (f64, f64), z: HPoint, w: HPoint) -> f64 {
    d2(p, xy(z)) - d2(p, xy(w))
}

fn pt(x: f64, y: f64) -> HPoint {
    HPoint::new(x, y).unwrap()
}

fn random_point(rng: &mut StdRng) -> HPoint {
    pt(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..3.0))
}

fn signed(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }
}

fn random_mobius(rng: &mut StdRng) -> Mobius {
    loop {
        let [a, b, c, d]: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        if a * d - b * c > 0.2 {
            return Mobius::new(a, b, c, d).unwrap();
        }
    }
}

fn crit1(rng: &mut StdRng) -> Outcome {
    let mut worst = (dist(HPoint::i(), pt(0.0, 2.0)) - LN_2).abs();
    for _ in 0..100 {
        let a = 10f64.powf(rng.gen_range(-3.0..3.0));
        let b = 10f64.powf(rng.gen_range(-3.0..3.0));
        worst = worst.max((dist(pt(0.0, a), pt(0.0, b)) - (b / a).ln().abs()).abs());
    }
    outcome(worst < 1e-12, format!("max error {worst:.2e} (tol 1e-12)"))
}

fn crit2(rng: &mut StdRng) -> Outcome {
    let mut worst = 0f64;
    let mut consistency = 0f64;
    for _ in 0..20 {
        let (a, b) = loop {
            let (a, b): (f64, f64) = (rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0));
            if (b / a).ln().abs() > 0.05 {
                break (a, b);
            }
        };
        let k = signed(rng, 0.1, 20.0);
        let p = SquareHyperbola::new(pt(0.0, a), pt(0.0, b), k)
            .unwrap()
            .parametrize()
            .unwrap();
        // log_point against point_at where the height is still representable
        let t_mid = p.t_for_height(1e-2);
        let q = p.point_at(t_mid, Branch::Plus).unwrap();
        let (x, ln_y) = p.log_point(t_mid, Branch::Plus).unwrap();
        consistency = consistency.max((x - q.x()).abs()).max((ln_y - q.y().ln()).abs());

        let target = (a * b).sqrt();
        let mut ends = Vec::new();
        for branch in [Branch::Minus, Branch::Plus] {
            // march until the point is low and x has settled
            let mut t = p.t0() + 1.0;
            let mut prev = f64::NAN;
            let (x, ln_y) = loop {
                let (x, ln_y) = p.log_point(t, branch).unwrap();
                if (ln_y < (1e-4f64).ln() && (x - prev).abs() < 1e-9) || t > p.t0() + 60.0 {
                    break (x, ln_y);
                }
                prev = x;
                t += 0.5;
            };
            ends.push((x, ln_y.exp()));
        }
        ends.sort_by(|u, v| u.0.total_cmp(&v.0));
        for ((x, y), s) in ends.into_iter().zip([-1.0, 1.0]) {
            worst = worst.max((x - s * target).hypot(y));
        }
    }
    outcome(
        worst < 1e-3 && consistency < 1e-9,
        format!("max distance to (±sqrt(ab), 0) {worst:.2e} (tol 1e-3); log/linear agreement {consistency:.1e}"),
    )
}

fn random_curve(rng: &mut StdRng) -> SquareHyperbola {
    loop {
        let (z, w) = (random_point(rng), random_point(rng));
        if dist(z, w) > 0.05 {
            return SquareHyperbola::new(z, w, signed(rng, 0.05, 20.0)).unwrap();
        }
    }
}

fn crit3(rng: &mut StdRng) -> Outcome {
    let mut worst = 0f64;
    let mut count = 0;
    for _ in 0..50 {
        let h = random_curve(rng);
        for s in h.sample(100, None).unwrap() {
            count += 1;
            worst = worst.max((level(xy(s.point), h.z(), h.w()) - h.k()).abs());
        }
    }
    outcome(
        count >= 10_000 && worst < 1e-8,
        format!("{count} samples, max residual {worst:.2e} (tol 1e-8)"),
    )
}

/// Contour points of `f = 0` on an `n × n` grid by marching squares, with
/// linear interpolation along cell edges.
fn marching_squares<F: Fn(f64, f64) -> f64>(f: F, win: [f64; 4], n: usize) -> Vec<(f64, f64)> {
    let (dx, dy) = ((win[1] - win[0]) / n as f64, (win[3] - win[2]) / n as f64);
    let node = |i: usize, j: usize| (win[0] + i as f64 * dx, win[2] + j as f64 * dy);
    let vals: Vec<Vec<f64>> = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    let (x, y) = node(i, j);
                    f(x, y)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut edge = |(i0, j0): (usize, usize), (i1, j1): (usize, usize)| {
        let (a, b) = (vals[i0][j0], vals[i1][j1]);
        if (a > 0.0) != (b > 0.0) {
            let s = a / (a - b);
            let (p, q) = (node(i0, j0), node(i1, j1));
            out.push((p.0 + s * (q.0 - p.0), p.1 + s * (q.1 - p.1)));
        }
    };
    for i in 0..=n {
        for j in 0..=n {
            if i < n {
                edge((i, j), (i + 1, j));
            }
            if j < n {
                edge((i, j), (i, j + 1));
            }
        }
    }
    out
}

fn seg_dist(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (vx, vy) = (b.0 - a.0, b.1 - a.1);
    let len2 = vx * vx + vy * vy;
    let s = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * vx + (p.1 - a.1) * vy) / len2).clamp(0.0, 1.0)
    };
    (p.0 - a.0 - s * vx).hypot(p.1 - a.1 - s * vy)
}

/// The parametrized curve as a polyline whose vertices inside (or near)
/// `win` are at most `step` apart.
fn densify(h: &SquareHyperbola, win: [f64; 4], step: f64) -> Vec<(f64, f64)> {
    let trace = h.trace().unwrap();
    let span = trace.sigma_span(1e-6);
    let at = |s: f64| xy(trace.point_signed(s).unwrap());
    let near = |p: (f64, f64)| {
        let m = 2.0 * step;
        p.0 >= win[0] - m && p.0 <= win[1] + m && p.1 >= win[2] - m && p.1 <= win[3] + m
    };
    let coarse: Vec<f64> = (0..=4000).map(|i| span * (i as f64 / 2000.0 - 1.0)).collect();
    let mut out = vec![at(coarse[0])];
    for pair in coarse.windows(2) {
        let mut stack = vec![(pair[0], pair[1], 0)];
        while let Some((a, b, depth)) = stack.pop() {
            let (pa, pb) = (at(a), at(b));
            let far = (pa.0 - pb.0).hypot(pa.1 - pb.1) > step;
            if far && depth < 40 && (near(pa) || near(pb)) {
                let m = 0.5 * (a + b);
                // right half first so the left half is processed next
                stack.push((m, b, depth + 1));
                stack.push((a, m, depth + 1));
            } else {
                out.push(pb);
            }
        }
    }
    out
}

fn crit4(rng: &mut StdRng) -> Outcome {
    const N: usize = 512;
    let mut worst = 0f64;
    for _ in 0..10 {
        let h = random_curve(rng);
        let samples = h.sample(3000, None).unwrap();
        let poly: Vec<(f64, f64)> = samples.iter().map(|s| xy(s.point)).collect();
        let top = poly.iter().map(|p| p.1).fold(0.0, f64::max);
        let shown: Vec<&(f64, f64)> = poly.iter().filter(|p| p.1 > 0.05 * top).collect();
        let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &shown {
            x0 = x0.min(p.0);
            x1 = x1.max(p.0);
        }
        let pad = 0.1 * (x1 - x0).max(top);
        let win = [x0 - pad, x1 + pad, 0.05 * top, top + pad];
        let cell = ((win[1] - win[0]) / N as f64).max((win[3] - win[2]) / N as f64);
        let poly = densify(&h, win, 0.25 * cell);
        let contour = marching_squares(|x, y| level((x, y), h.z(), h.w()) - h.k(), win, N);
        let inside = |p: &(f64, f64)| p.0 >= win[0] && p.0 <= win[1] && p.1 >= win[2] && p.1 <= win[3];
        let to_poly = contour
            .iter()
            .map(|&c| {
                poly.windows(2)
                    .map(|s| seg_dist(c, s[0], s[1]))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0f64, f64::max);
        let to_contour = poly
            .iter()
            .filter(|p| inside(p))
            .map(|&p| contour.iter().map(|c| (c.0 - p.0).hypot(c.1 - p.1)).fold(f64::INFINITY, f64::min))
            .fold(0f64, f64::max);
        if contour.is_empty() {
            return outcome(false, "empty contour");
        }
        worst = worst.max(to_poly.max(to_contour) / cell);
    }
    outcome(worst <= 2.0, format!("max Hausdorff distance {worst:.3} cells (tol 2)"))
}

fn crit5(rng: &mut StdRng) -> Outcome {
    let mut min_slope = f64::INFINITY;
    let mut most_hits = 0;
    for _ in 0..20 {
        let (a, b): (f64, f64) = (rng.gen_range(0.2..3.0), rng.gen_range(0.2..3.0));
        if (a - b).abs() < 0.05 {
            continue;
        }
        let k = signed(rng, 0.1, 20.0);
        let p = SquareHyperbola::new(pt(0.0, a), pt(0.0, b), k)
            .unwrap()
            .parametrize()
            .unwrap();
        let ratio = |t: f64| {
            let (x, y) = p.normalized_point(t, Branch::Plus).unwrap();
            x / y
        };
        let t_end = p.t_for_height(1e-3);
        let h = 1e-5 * (t_end - p.t0());
        for j in 1..=200 {
            let t = p.t0() + (t_end - p.t0()) * j as f64 / 201.0;
            min_slope = min_slope.min((ratio(t + h) - ratio(t - h)) / (2.0 * h));
        }
        for kappa in [0.01, 0.05, 0.1, 0.3, 1.0, 3.0, 10.0, -0.1, -1.0, -10.0] {
            let hits = p.ray_intersections(kappa);
            for branch in [Branch::Minus, Branch::Plus] {
                most_hits = most_hits.max(hits.iter().filter(|(_, b)| *b == branch).count());
            }
        }
    }
    outcome(
        min_slope > 0.0 && most_hits <= 1,
        format!("min d(x/y)/dt {min_slope:.3e}; max ray hits per branch {most_hits}"),
    )
}

fn random_on_axis(rng: &mut StdRng) -> (BidiskIsometry, BidiskPoint) {
    let factor = |rng: &mut StdRng| {
        let h = random_mobius(rng);
        let g = Mobius::scaling(rng.gen_range(0.3f64..3.0).exp()).unwrap().conjugate_by(&h);
        (g, h.apply(pt(0.0, rng.gen_range(-1.5f64..1.5).exp())))
    };
    let (g1, z1) = factor(rng);
    let (g2, z2) = factor(rng);
    (BidiskIsometry::product(g1, g2), BidiskPoint::new(z1, z2))
}

fn crit6(rng: &mut StdRng) -> Outcome {
    let cfg = SearchConfig::default();
    assert_eq!((cfg.k_min, cfg.k_max), (-50.0, 50.0));
    let mut configs = vec![(
        BidiskIsometry::product(Mobius::scaling(2.0).unwrap(), Mobius::scaling(3.0).unwrap()),
        BidiskPoint::diagonal(HPoint::i()),
    )];
    configs.extend((0..20).map(|_| random_on_axis(rng)));
    let mut witnesses = 0;
    let mut counts = Vec::new();
    for (g, z) in &configs {
        let rep = theorem_check(g, *z, &cfg).unwrap();
        witnesses += rep.search.witnesses.len() + rep.ray_violations.len();
        let spec = CyclicDomainSpec::new(*g, *z, 6).unwrap();
        counts.push(face_count(&spec, &FaceSampling::default()).unwrap().count());
    }
    outcome(
        witnesses == 0 && counts.iter().all(|&c| c == 2),
        format!(
            "{} configurations, k,l in [-50, 50] step {}: {witnesses} witnesses, face counts {:?}",
            configs.len(),
            cfg.k_step,
            counts.iter().collect::<std::collections::BTreeSet<_>>()
        ),
    )
}

fn crit7() -> Outcome {
    let g = Mobius::scaling(2.0).unwrap();
    let z0 = pt(1.0, 0.25);
    let rep = offaxis_search(&g, z0, &[10.0], &SearchConfig::default()).unwrap();
    let (before, after) = (pt(0.5, 0.125), pt(2.0, 0.5));
    let worst = rep
        .witnesses
        .iter()
        .map(|w| {
            let p = xy(w.point);
            (level(p, before, z0) - 10.0).abs().max((level(p, z0, after) - 10.0).abs())
        })
        .fold(0f64, f64::max);
    let pts: Vec<String> = rep
        .witnesses
        .iter()
        .map(|w| format!("{:.4}+{:.4}i", w.point.x(), w.point.y()))
        .collect();
    outcome(
        !rep.witnesses.is_empty() && worst < 1e-8,
        format!("witnesses {}; max residual {worst:.2e} (tol 1e-8)", pts.join(", ")),
    )
}

/// The point at distance `r` from `y` in direction `theta`.
fn offset(y: HPoint, r: f64, theta: f64) -> HPoint {
    let to_y = Mobius::translation(y.x()).compose(&Mobius::scaling(y.y()).unwrap());
    to_y.apply(Mobius::rotation(theta / 2.0).apply(pt(0.0, r.exp())))
}

fn random_between(rng: &mut StdRng) -> (BidiskPoint, BidiskPoint, BidiskPoint) {
    loop {
        let pick = |rng: &mut StdRng| {
            let y = random_point(rng);
            let theta = rng.gen_range(0.0..TAU);
            let x = offset(y, rng.gen_range(0.3..2.5), theta);
            let z = offset(y, rng.gen_range(0.3..2.5), theta + PI + rng.gen_range(-0.6..0.6));
            (x, y, z)
        };
        let (x1, y1, z1) = pick(rng);
        let (x2, y2, z2) = pick(rng);
        let (x, y, z) = (BidiskPoint::new(x1, x2), BidiskPoint::new(y1, y2), BidiskPoint::new(z1, z2));
        if between(x, y, z).unwrap() {
            return (x, y, z);
        }
    }
}

fn crit8(rng: &mut StdRng) -> Outcome {
    let cfg = SearchConfig::default();
    let mut opposite = 0;
    let (mut same, mut reduced) = (0, 0);
    for _ in 0..200 {
        let (x, y, z) = random_between(rng);
        let k = signed(rng, 0.25, 12.0);
        let l = rng.gen_range(0.25..12.0) * k.signum();
        let a = Hypersurface::new(x, y).unwrap();
        let b = Hypersurface::new(y, z).unwrap();
        opposite += leaves_intersect(&a.leaf(k).unwrap(), &b.leaf(-l).unwrap(), &cfg)
            .unwrap()
            .len();
        if !leaves_intersect(&a.leaf(k).unwrap(), &b.leaf(l).unwrap(), &cfg)
            .unwrap()
            .is_empty()
        {
            same += 1;
            let red = samevalue_reduce(x, y, z, k, l).unwrap();
            if !red.search(&cfg).unwrap().is_empty() {
                reduced += 1;
            }
        }
    }
    outcome(
        opposite == 0 && reduced == same,
        format!("kl < 0: {opposite} witnesses over 200 configurations; kl > 0: {reduced} of {same} reduced"),
    )
}

fn crit9() -> Outcome {
    let diag = |a: f64| BidiskPoint::diagonal(pt(0.0, a));
    let h1 = Hypersurface::new(diag(0.5), diag(2.0)).unwrap();
    let h2 = Hypersurface::new(diag(0.25), diag(4.0)).unwrap();
    let equal = spines_equal(&h1, &h2).unwrap();
    let unit = Geodesic::finite(-1.0, 1.0).unwrap();
    let flats = [h1.spine().unwrap().flat, h2.spine().unwrap().flat];
    let on_unit = flats.iter().all(|f| f.l1.approx_eq(&unit) && f.l2.approx_eq(&unit));
    outcome(equal && on_unit, format!("spines_equal = {equal}; factor geodesics on |z| = 1: {on_unit}"))
}

struct SvgDoc {
    window: [f64; 4],
    size: (f64, f64),
    text: String,
}

fn attr<'a>(tag: &'a str, name: &str) -> Option<&'a str> {
    let key = format!(" {name}=\"");
    let start = tag.find(&key)? + key.len();
    let end = tag[start..].find('"')? + start;
    Some(&tag[start..end])
}

impl SvgDoc {
    fn load(path: &Path) -> SvgDoc {
        let text = std::fs::read_to_string(path).unwrap();
        let root = text.lines().find(|l| l.starts_with("<svg")).unwrap().to_string();
        let window: Vec<f64> = attr(&root, "data-window")
            .unwrap()
            .split(' ')
            .map(|v| v.parse().unwrap())
            .collect();
        let size = (
            attr(&root, "width").unwrap().parse().unwrap(),
            attr(&root, "height").unwrap().parse().unwrap(),
        );
        SvgDoc {
            window: [window[0], window[1], window[2], window[3]],
            size,
            text,
        }
    }

    fn tags(&self, element: &str) -> Vec<&str> {
        let open = format!("<{element} ");
        self.text.lines().filter(|l| l.starts_with(&open)).collect()
    }

    /// Polyline vertices in plane coordinates.
    fn vertices(&self, tag: &str) -> Vec<(f64, f64)> {
        let w = self.window;
        attr(tag, "points")
            .unwrap()
            .split(' ')
            .map(|pair| {
                let (a, b) = pair.split_once(',').unwrap();
                let (a, b): (f64, f64) = (a.parse().unwrap(), b.parse().unwrap());
                (
                    w[0] + a / self.size.0 * (w[1] - w[0]),
                    w[2] + (self.size.1 - b) / self.size.1 * (w[3] - w[2]),
                )
            })
            .collect()
    }
}

fn segments_cross(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> bool {
    let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
        let v = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    };
    let (o1, o2) = (orient(p, q, r), orient(p, q, s));
    let (o3, o4) = (orient(r, s, p), orient(r, s, q));
    o1 * o2 <= 0 && o3 * o4 <= 0 && !(o1 == 0 && o2 == 0)
}

fn polylines_cross(a: &[(f64, f64)], b: &[(f64, f64)]) -> bool {
    a.windows(2)
        .any(|s| b.windows(2).any(|t| segments_cross(s[0], s[1], t[0], t[1])))
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bidisk"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn crit10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    if let Err(e) = run_cli(&["curve", "--z", "0,1", "--w", "0,2", "--k", "4,0,-4", "--out-dir", d]) {
        return outcome(false, e);
    }
    let doc = SvgDoc::load(&dir.path().join("curve.svg"));
    let curves: Vec<(f64, Vec<(f64, f64)>)> = doc
        .tags("polyline")
        .into_iter()
        .map(|t| (attr(t, "data-k").unwrap().parse().unwrap(), doc.vertices(t)))
        .collect();
    let three = curves.len() == 3;
    let mut disjoint = true;
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            disjoint &= !polylines_cross(&curves[i].1, &curves[j].1);
        }
    }
    // x² + y² - 2 is positive above the k = 0 semicircle and negative below
    let ordered = curves.iter().all(|(k, pts)| {
        pts.iter().all(|&(x, y)| {
            let s = x * x + y * y - 2.0;
            match k.partial_cmp(&0.0).unwrap() {
                std::cmp::Ordering::Greater => s > 0.0,
                std::cmp::Ordering::Less => s < 0.0,
                std::cmp::Ordering::Equal => s.abs() < 1e-2,
            }
        })
    });

    let fig = dir.path().join("fig4.svg");
    if let Err(e) = run_cli(&["fig4", "--out", fig.to_str().unwrap()]) {
        return outcome(false, e);
    }
    let doc = SvgDoc::load(&fig);
    let root = doc.text.lines().find(|l| l.starts_with("<svg")).unwrap();
    let kappa: f64 = attr(root, "data-kappa").unwrap().parse().unwrap();
    let marks: Vec<(f64, f64)> = doc
        .tags("circle")
        .into_iter()
        .filter(|t| attr(t, "class") == Some("mark"))
        .map(|t| (attr(t, "data-x").unwrap().parse().unwrap(), attr(t, "data-y").unwrap().parse().unwrap()))
        .collect();
    let (z0, gz0) = (pt(1.0, 0.25), pt(2.0, 0.5));
    let marks_ok = marks.len() == 2
        && marks
            .iter()
            .all(|&(x, y)| (y - kappa * x).abs() < 1e-9 * x && (level((x, y), z0, gz0) - 10.0).abs() < 1e-7);
    let kappa_ok = (0.10..=0.20).contains(&kappa);
    outcome(
        three && disjoint && ordered && marks_ok && kappa_ok,
        format!(
            "curve: {} polylines, disjoint {disjoint}, ordered by sign of k {ordered}; fig4: {} marks on ray and curve {marks_ok}, kappa {kappa:.4} (range [0.10, 0.20])",
            curves.len(),
            marks.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(20_240_601);
    type Crit<'a> = (&'a str, Duration, Box<dyn FnOnce(&mut StdRng) -> Outcome>);
    let criteria: Vec<Crit> = vec![
        ("distance formula", Duration::from_secs(1), Box::new(crit1)),
        ("endpoint limit (±sqrt(ab), 0)", Duration::from_secs(5), Box::new(crit2)),
        ("parametrization residual", Duration::from_secs(5), Box::new(crit3)),
        ("marching-squares oracle", Duration::from_secs(30), Box::new(crit4)),
        ("monotonicity of x/y", Duration::MAX, Box::new(crit5)),
        ("on-axis two faces", Duration::from_secs(120), Box::new(crit6)),
        ("off-axis k = 10 witness", Duration::from_secs(10), Box::new(|_| crit7())),
        ("same-sign and same-value lemmas", Duration::from_secs(120), Box::new(crit8)),
        ("shared spine", Duration::MAX, Box::new(|_| crit9())),
        ("figure reproduction", Duration::MAX, Box::new(|_| crit10())),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = check(&mut rng);
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let passed = out.passed && in_time;
        if !passed {
            failed += 1;
        }
        let limit = if budget == Duration::MAX {
            String::new()
        } else {
            format!(", limit {:.0} s", budget.as_secs_f64())
        };
        println!(
            "[{}] {:>2} {name}: {} ({:.2} s{limit})",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
