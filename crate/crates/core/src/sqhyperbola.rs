//! Square hyperbolae `SH^k(z, w) = { x : d²(x, z) - d²(x, w) = k }`.
//!
//! For `k > 0` the pair is normalized to `(aI, bI)` with `a = 1 < b`, and the
//! curve is traced as the intersection of the hyperbolic circles of radius
//! `√k cosh t` about `aI` and `√k sinh t` about `bI`. Negative `k` goes
//! through the identity `SH^k(z, w) = SH^{-k}(w, z)`. Branch labels refer to
//! the sign of the real part in normalized coordinates only; the
//! denormalizing isometry may reverse the boundary orientation.

use crate::error::{GeomError, Result};
use crate::hplane::{self, dist, Geodesic, HPoint, IdealPoint, Mobius};
use crate::roots::{self, Bracket};

/// Default upper end of the scan for the first feasible parameter.
pub const T_SCAN: f64 = 20.0;
/// Step of that scan.
pub const T_SCAN_STEP: f64 = 1e-3;
/// Radicands within this distance below zero are clamped to zero.
pub const TANGENCY_CLAMP: f64 = 1e-13;
/// Relative normalized height used for the default `t_max`.
pub const DEFAULT_HEIGHT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareHyperbola {
    z: HPoint,
    w: HPoint,
    k: f64,
}

/// One sampled point of a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub branch: Branch,
    pub point: HPoint,
}

impl SquareHyperbola {
    pub fn new(z: HPoint, w: HPoint, k: f64) -> Result<Self> {
        if z == w {
            return Err(GeomError::CoincidentPoints);
        }
        if !k.is_finite() {
            return Err(GeomError::InvalidArgument(format!("k = {k}")));
        }
        Ok(Self { z, w, k })
    }

    pub fn z(&self) -> HPoint {
        self.z
    }

    pub fn w(&self) -> HPoint {
        self.w
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `d²(x, z) - d²(x, w) - k`.
    pub fn implicit_value(&self, x: HPoint) -> f64 {
        self.level(x) - self.k
    }

    /// `d²(x, z) - d²(x, w)`, the function whose level sets are the curves.
    pub fn level(&self, x: HPoint) -> f64 {
        let a = dist(x, self.z);
        let b = dist(x, self.w);
        (a - b) * (a + b)
    }

    /// Same locus, including the `SH^k(z,w) = SH^{-k}(w,z)` identification.
    pub fn same_locus(&self, other: &SquareHyperbola) -> bool {
        (self.z == other.z && self.w == other.w && self.k == other.k)
            || (self.z == other.w && self.w == other.z && self.k == -other.k)
    }

    /// `SH^0(z, w)`.
    pub fn equidistant_line(&self) -> Geodesic {
        hplane::equidistant_line(self.z, self.w).expect("z != w by construction")
    }

    /// The ideal endpoints, which are those of `SH^0(z, w)` for every `k`.
    pub fn endpoints(&self) -> (IdealPoint, IdealPoint) {
        self.equidistant_line().endpoints()
    }

    pub fn parametrize(&self) -> Result<HyperbolaParam> {
        self.parametrize_with(T_SCAN)
    }

    pub fn parametrize_with(&self, t_scan: f64) -> Result<HyperbolaParam> {
        HyperbolaParam::new(*self, t_scan)
    }

    /// A tracer valid for every `k`; `k = 0` traces the equidistant line.
    pub fn trace(&self) -> Result<CurveTrace> {
        self.trace_with(T_SCAN)
    }

    pub fn trace_with(&self, t_scan: f64) -> Result<CurveTrace> {
        if self.k == 0.0 {
            Ok(CurveTrace::Line(self.equidistant_line()))
        } else {
            Ok(CurveTrace::Hyperbola(self.parametrize_with(t_scan)?))
        }
    }

    /// `n` points per branch for `t` from `t0` to `t_max`, minus branch
    /// reversed first so the polyline runs continuously through the apex.
    /// For `k = 0` returns `n` points of the line for arclength in
    /// `[-t_max, t_max]`. `t_max` defaults to the parameter where the
    /// normalized height drops to [`DEFAULT_HEIGHT`].
    pub fn sample(&self, n: usize, t_max: Option<f64>) -> Result<Vec<CurveSample>> {
        if n < 2 {
            return Err(GeomError::InvalidArgument("need at least two samples".into()));
        }
        let trace = self.trace()?;
        let t_max = t_max.unwrap_or_else(|| trace.t_for_height(DEFAULT_HEIGHT));
        match &trace {
            CurveTrace::Line(line) => Ok((0..n)
                .map(|i| {
                    let s = -t_max + 2.0 * t_max * i as f64 / (n - 1) as f64;
                    let branch = if s < 0.0 { Branch::Minus } else { Branch::Plus };
                    CurveSample {
                        t: s.abs(),
                        branch,
                        point: line.point_at_arclength(s),
                    }
                })
                .collect()),
            CurveTrace::Hyperbola(p) => {
                if !(t_max > p.t0) {
                    return Err(GeomError::OutOfDomain { t: t_max, t0: p.t0 });
                }
                let ts: Vec<f64> = (0..n)
                    .map(|i| p.t0 + (t_max - p.t0) * i as f64 / (n - 1) as f64)
                    .collect();
                let mut out = Vec::with_capacity(2 * n);
                for &t in ts.iter().rev() {
                    out.push(CurveSample {
                        t,
                        branch: Branch::Minus,
                        point: p.point_at(t, Branch::Minus)?,
                    });
                }
                for &t in &ts {
                    out.push(CurveSample {
                        t,
                        branch: Branch::Plus,
                        point: p.point_at(t, Branch::Plus)?,
                    });
                }
                Ok(out)
            }
        }
    }

    /// Side of `SH^0(z, w)` on which the curve lies, as reported by
    /// [`hplane::side_of`]: for `k > 0` the side of `w`, for `k < 0` the side
    /// of `z`, and `0` for `k = 0`.
    pub fn side_sign(&self) -> Result<i8> {
        if self.k == 0.0 {
            return Ok(0);
        }
        let line = self.equidistant_line();
        let trace = self.trace()?;
        let samples = self.sample(100, Some(trace.t_for_height(1e-3)))?;
        let mut side = 0i8;
        for s in samples {
            let v = hplane::side_of(&line, s.point);
            if v == 0 || (side != 0 && v != side) {
                return Err(GeomError::MixedSides);
            }
            side = v;
        }
        Ok(side)
    }
}

/// Normalization and circle-intersection data of a square hyperbola with
/// `k ≠ 0`.
#[derive(Clone, Copy, Debug)]
pub struct HyperbolaParam {
    source: SquareHyperbola,
    a: f64,
    b: f64,
    k: f64,
    sqrt_k: f64,
    t0: f64,
    g: Mobius,
    g_inv: Mobius,
    swapped: bool,
}

impl HyperbolaParam {
    fn new(source: SquareHyperbola, t_scan: f64) -> Result<Self> {
        if source.k == 0.0 {
            return Err(GeomError::ZeroK);
        }
        let swapped = source.k < 0.0;
        let (z, w, k) = if swapped {
            (source.w, source.z, -source.k)
        } else {
            (source.z, source.w, source.k)
        };
        let (g, d) = hplane::normalize_pair(z, w)?;
        let mut p = Self {
            source,
            a: 1.0,
            b: d.exp(),
            k,
            sqrt_k: k.sqrt(),
            t0: 0.0,
            g,
            g_inv: g.inverse(),
            swapped,
        };
        p.t0 = p.first_feasible(t_scan)?;
        Ok(p)
    }

    /// Scan `[0, t_scan]` for the first `t` where the two circles meet, then
    /// bisect the boundary.
    fn first_feasible(&self, t_scan: f64) -> Result<f64> {
        let feasible = |t: f64| self.discriminant(t) >= 0.0;
        if feasible(0.0) {
            return Ok(0.0);
        }
        let steps = (t_scan / T_SCAN_STEP).ceil() as usize;
        let mut prev = 0.0;
        for i in 1..=steps {
            let t = (i as f64 * T_SCAN_STEP).min(t_scan);
            if feasible(t) {
                return Ok(roots::bisect_boundary(feasible, prev, t, 1e-12, roots::MAX_BISECT));
            }
            prev = t;
        }
        Err(GeomError::NoFeasibleParameter { t_scan })
    }

    pub fn source(&self) -> &SquareHyperbola {
        &self.source
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// The positive level after the swap identity.
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// The isometry taking the (possibly swapped) pair to `(aI, bI)`.
    pub fn normalizer(&self) -> Mobius {
        self.g
    }

    /// Euclidean centers and radii `(c1, c2, r1, r2)` of the two circles.
    pub fn circles(&self, t: f64) -> (f64, f64, f64, f64) {
        let u1 = self.sqrt_k * t.cosh();
        let u2 = self.sqrt_k * t.sinh();
        (
            self.a * u1.cosh(),
            self.b * u2.cosh(),
            self.a * u1.sinh(),
            self.b * u2.sinh(),
        )
    }

    /// `(c2/c1 - 1, 2·y·c1)` evaluated without overflow. The identities
    /// `c_i² - r_i² = a², b²` reduce the radical axis to
    /// `2y(c2 - c1) = b² - a²`.
    fn radical(&self, t: f64) -> (f64, f64) {
        let u1 = self.sqrt_k * t.cosh();
        let u2 = self.sqrt_k * t.sinh();
        // u2 - u1 = -√k e^{-t}
        let ln_ratio = (self.b / self.a).ln() - self.sqrt_k * (-t).exp()
            + (-2.0 * u2).exp().ln_1p()
            - (-2.0 * u1).exp().ln_1p();
        let rm1 = ln_ratio.exp_m1();
        (rm1, (self.b * self.b - self.a * self.a) / rm1)
    }

    /// Normalized `x(t)²`; negative when the circles miss each other.
    pub fn discriminant(&self, t: f64) -> f64 {
        let (rm1, two_yc1) = self.radical(t);
        if !(rm1 > 0.0) || !two_yc1.is_finite() {
            return f64::NEG_INFINITY;
        }
        let y = self.height_from(t, two_yc1);
        two_yc1 - self.a * self.a - y * y
    }

    fn height_from(&self, t: f64, two_yc1: f64) -> f64 {
        let c1 = self.a * (self.sqrt_k * t.cosh()).cosh();
        if c1.is_finite() {
            two_yc1 / (2.0 * c1)
        } else {
            0.0
        }
    }

    /// Normalized `y(t) = (b² - a²) / (2(c2 - c1))`.
    pub fn height(&self, t: f64) -> f64 {
        let (_, two_yc1) = self.radical(t);
        self.height_from(t, two_yc1)
    }

    /// The point `±sqrt(r1² - (y - c1)²) + y·i` in normalized coordinates.
    pub fn normalized_point(&self, t: f64, branch: Branch) -> Result<(f64, f64)> {
        if !(t >= self.t0) {
            return Err(GeomError::OutOfDomain { t, t0: self.t0 });
        }
        let (rm1, two_yc1) = self.radical(t);
        if !(rm1 > 0.0) {
            return Err(GeomError::NegativeDiscriminant(f64::NEG_INFINITY));
        }
        let y = self.height_from(t, two_yc1);
        let mut disc = two_yc1 - self.a * self.a - y * y;
        if disc < 0.0 {
            if disc >= -TANGENCY_CLAMP * self.a * self.a {
                disc = 0.0;
            } else {
                return Err(GeomError::NegativeDiscriminant(disc));
            }
        }
        if !(y > 0.0 && y.is_finite()) {
            return Err(GeomError::OutOfDomain { t, t0: self.t0 });
        }
        Ok((branch.sign() * disc.sqrt(), y))
    }

    pub fn point_at(&self, t: f64, branch: Branch) -> Result<HPoint> {
        let (x, y) = self.normalized_point(t, branch)?;
        Ok(self.g_inv.apply(HPoint::new(x, y)?))
    }

    /// `(x, ln y)` of the point at `t` in the original coordinates. Stays
    /// finite after the height itself underflows, which happens long before
    /// `x` settles near the ideal endpoint.
    pub fn log_point(&self, t: f64, branch: Branch) -> Result<(f64, f64)> {
        if !(t >= self.t0) {
            return Err(GeomError::OutOfDomain { t, t0: self.t0 });
        }
        let (rm1, two_yc1) = self.radical(t);
        if !(rm1 > 0.0 && two_yc1.is_finite()) {
            return Err(GeomError::NegativeDiscriminant(f64::NEG_INFINITY));
        }
        let u1 = self.sqrt_k * t.cosh();
        // ln c1 = ln a + u1 + ln((1 + e^{-2u1}) / 2)
        let ln_c1 = self.a.ln() + u1 + (-2.0 * u1).exp().ln_1p() - std::f64::consts::LN_2;
        let ln_y = two_yc1.ln() - std::f64::consts::LN_2 - ln_c1;
        let y = ln_y.exp();
        let disc = (two_yc1 - self.a * self.a - y * y).max(0.0);
        let x = branch.sign() * disc.sqrt();
        let [a, b, c, d] = self.g_inv.entries();
        let (re, im) = (c * x + d, c * y);
        let q = re * re + im * im;
        let xo = ((a * x + b) * re + a * c * y * y) / q;
        Ok((xo, ln_y - q.ln()))
    }

    /// Parameter where the normalized height falls to `rel·sqrt(ab)`, or to
    /// `rel` times the apex height when the apex is lower than that.
    pub fn t_for_height(&self, rel: f64) -> f64 {
        let target = rel * (self.a * self.b).sqrt().min(self.height(self.t0));
        let mut span = 1.0;
        while self.height(self.t0 + span) > target && span < 64.0 {
            span *= 2.0;
        }
        roots::bisect_boundary(
            |t| self.height(t) <= target,
            self.t0,
            self.t0 + span,
            1e-12,
            roots::MAX_BISECT,
        )
    }

    /// Parameters where the curve meets the Euclidean ray `y = κx` in the
    /// original coordinates (`x > 0` for `κ > 0`, `x < 0` for `κ < 0`), found
    /// by a sign-change scan of `y - κx` along each branch plus bisection.
    /// Sorted by `t`.
    pub fn ray_intersections(&self, kappa: f64) -> Vec<(f64, Branch)> {
        if kappa == 0.0 || !kappa.is_finite() {
            return Vec::new();
        }
        let t_end = self.t_for_height(1e-10);
        let n = 4000;
        let mut out = Vec::new();
        for branch in [Branch::Minus, Branch::Plus] {
            let f = |t: f64| match self.point_at(t, branch) {
                Ok(p) if (p.x() > 0.0) == (kappa > 0.0) => p.y() - kappa * p.x(),
                Ok(p) => p.y().max(f64::MIN_POSITIVE),
                Err(_) => f64::NAN,
            };
            let ts: Vec<f64> = (0..=n)
                .map(|i| self.t0 + (t_end - self.t0) * i as f64 / n as f64)
                .collect();
            let vals: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
            for br in roots::sign_changes(&vals) {
                let t = match br {
                    Bracket::Exact(i) => ts[i],
                    Bracket::Between(i) => roots::bisect(f, ts[i], ts[i + 1], roots::MAX_BISECT),
                };
                out.push((t, branch));
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        out
    }
}

/// A uniform way to walk along any `SH^k`, including the `k = 0` line.
///
/// The signed parameter `σ` runs over the minus branch for `σ < 0` and the
/// plus branch for `σ > 0`, with `σ = 0` at the apex: `t = t0 + |σ|` for a
/// hyperbola and arclength `σ` for a line.
#[derive(Clone, Copy, Debug)]
pub enum CurveTrace {
    Hyperbola(HyperbolaParam),
    Line(Geodesic),
}

impl CurveTrace {
    pub fn t_start(&self) -> f64 {
        match self {
            CurveTrace::Hyperbola(p) => p.t0,
            CurveTrace::Line(_) => 0.0,
        }
    }

    pub fn point(&self, t: f64, branch: Branch) -> Result<HPoint> {
        match self {
            CurveTrace::Hyperbola(p) => p.point_at(t, branch),
            CurveTrace::Line(l) => Ok(l.point_at_arclength(branch.sign() * t)),
        }
    }

    /// `(t, branch)` for a signed parameter.
    pub fn split(&self, sigma: f64) -> (f64, Branch) {
        let branch = if sigma < 0.0 { Branch::Minus } else { Branch::Plus };
        (self.t_start() + sigma.abs(), branch)
    }

    pub fn point_signed(&self, sigma: f64) -> Result<HPoint> {
        let (t, b) = self.split(sigma);
        self.point(t, b)
    }

    /// Parameter at which the curve comes within relative height `rel` of
    /// its endpoints.
    pub fn t_for_height(&self, rel: f64) -> f64 {
        match self {
            CurveTrace::Hyperbola(p) => p.t_for_height(rel),
            CurveTrace::Line(_) => (1.0 / rel).acosh(),
        }
    }

    /// Half-width of the signed parameter range reaching height `rel`.
    pub fn sigma_span(&self, rel: f64) -> f64 {
        self.t_for_height(rel) - self.t_start()
    }
}
