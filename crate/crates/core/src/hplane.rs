//! Upper half-plane model of the hyperbolic plane.
//!
//! Points are `x + iy` with `y > 0`. Orientation-preserving isometries are
//! real 2×2 matrices of determinant one acting by Möbius transformations.
//! Geodesics are stored by their ideal endpoints, with `∞` an explicit
//! variant rather than a large float.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{GeomError, Result};

/// Default tolerance on `|trace| - 2` used by [`Mobius::classify`].
pub const CLASSIFY_TOL: f64 = 1e-10;

/// Relative tolerance under which [`side_of`] reports a point as on the line.
pub const SIDE_TOL: f64 = 1e-12;

/// Relative tolerance for comparing ideal points.
pub const IDEAL_TOL: f64 = 1e-12;

/// A point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint {
    x: f64,
    y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && y > 0.0 {
            Ok(Self { x, y })
        } else {
            Err(GeomError::NotInUpperHalfPlane { x, y })
        }
    }

    /// The point `a·i` on the imaginary axis.
    pub fn on_axis(a: f64) -> Result<Self> {
        Self::new(0.0, a)
    }

    /// The point `i`.
    pub const fn i() -> Self {
        Self { x: 0.0, y: 1.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }
}

impl fmt::Display for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x < 0.0 {
            write!(f, "-{}+{}i", -self.x, self.y)
        } else {
            write!(f, "{}+{}i", self.x, self.y)
        }
    }
}

/// A point of the ideal boundary `ℝ ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IdealPoint {
    Finite(f64),
    Infinity,
}

impl IdealPoint {
    pub fn approx_eq(&self, other: &IdealPoint) -> bool {
        match (self, other) {
            (IdealPoint::Infinity, IdealPoint::Infinity) => true,
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => {
                (a - b).abs() <= IDEAL_TOL * a.abs().max(b.abs()).max(1.0)
            }
            _ => false,
        }
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            IdealPoint::Finite(v) => Some(v),
            IdealPoint::Infinity => None,
        }
    }

    /// Order on the boundary circle cut open at `∞`, which sorts last.
    fn cmp_line(&self, other: &IdealPoint) -> Ordering {
        if self.approx_eq(other) {
            return Ordering::Equal;
        }
        match (self, other) {
            (IdealPoint::Infinity, _) => Ordering::Greater,
            (_, IdealPoint::Infinity) => Ordering::Less,
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => a.total_cmp(b),
        }
    }
}

impl fmt::Display for IdealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealPoint::Finite(v) => write!(f, "{v}"),
            IdealPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Type of a non-trivial orientation-preserving isometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryClass {
    Hyperbolic,
    Parabolic,
    Elliptic,
    Identity,
}

/// An element of PSL(2,ℝ), stored with determinant one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Mobius {
    /// Builds `z ↦ (az+b)/(cz+d)`, rescaled to determinant one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.is_finite() && det > 0.0) || ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(GeomError::NonPositiveDeterminant(det));
        }
        let s = det.sqrt().recip();
        Ok(Self {
            a: a * s,
            b: b * s,
            c: c * s,
            d: d * s,
        })
    }

    pub const fn identity() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// `z ↦ λz`, hyperbolic with axis `(0, ∞)` for `λ ≠ 1`.
    pub fn scaling(lambda: f64) -> Result<Self> {
        Self::new(lambda, 0.0, 0.0, 1.0)
    }

    /// `z ↦ z + t`.
    pub fn translation(t: f64) -> Self {
        Self {
            a: 1.0,
            b: t,
            c: 0.0,
            d: 1.0,
        }
    }

    /// Rotation by `2θ` about `i`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            a: c,
            b: s,
            c: -s,
            d: c,
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn apply(&self, z: HPoint) -> HPoint {
        let (x, y) = (z.x, z.y);
        let cx_d = self.c * x + self.d;
        let cy = self.c * y;
        let denom = cx_d * cx_d + cy * cy;
        let re = ((self.a * x + self.b) * cx_d + self.a * self.c * y * y) / denom;
        HPoint { x: re, y: y / denom }
    }

    pub fn apply_ideal(&self, p: IdealPoint) -> IdealPoint {
        match p {
            IdealPoint::Finite(x) => {
                let den = self.c * x + self.d;
                let scale = (self.c * x).abs() + self.d.abs();
                if den.abs() <= 1e-15 * scale {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite((self.a * x + self.b) / den)
                }
            }
            IdealPoint::Infinity => {
                if self.c == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite(self.a / self.c)
                }
            }
        }
    }

    pub fn apply_geodesic(&self, l: &Geodesic) -> Geodesic {
        Geodesic::new(self.apply_ideal(l.p), self.apply_ideal(l.q))
            .expect("isometries map distinct ideal points to distinct ideal points")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self^n`; negative powers use the inverse.
    pub fn pow(&self, n: i32) -> Mobius {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(Mobius::identity(), |acc, _| acc.compose(&base))
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &Mobius) -> Mobius {
        h.compose(self).compose(&h.inverse())
    }

    pub fn classify(&self) -> IsometryClass {
        self.classify_with(CLASSIFY_TOL)
    }

    pub fn classify_with(&self, tol: f64) -> IsometryClass {
        // ±Id: off-diagonal vanishes and the diagonal entries agree.
        if self.b.abs() <= tol && self.c.abs() <= tol && (self.a - self.d).abs() <= tol {
            return IsometryClass::Identity;
        }
        let t = self.trace().abs();
        if t > 2.0 + tol {
            IsometryClass::Hyperbolic
        } else if (t - 2.0).abs() <= tol {
            IsometryClass::Parabolic
        } else {
            IsometryClass::Elliptic
        }
    }

    /// Ideal fixed points, in increasing boundary order.
    pub fn ideal_fixed_points(&self) -> Vec<IdealPoint> {
        let class = self.classify();
        if matches!(class, IsometryClass::Identity | IsometryClass::Elliptic) {
            return Vec::new();
        }
        let mut out = if self.c == 0.0 {
            // a·d = 1 with a ≠ d: z = b/(d-a); parabolic translations fix only ∞
            if (self.a - self.d).abs() <= CLASSIFY_TOL {
                vec![IdealPoint::Infinity]
            } else {
                vec![
                    IdealPoint::Finite(self.b / (self.d - self.a)),
                    IdealPoint::Infinity,
                ]
            }
        } else {
            // c z² + (d - a) z - b = 0
            let disc = ((self.a - self.d).powi(2) + 4.0 * self.b * self.c).max(0.0);
            let s = disc.sqrt();
            if class == IsometryClass::Parabolic {
                vec![IdealPoint::Finite((self.a - self.d) / (2.0 * self.c))]
            } else {
                let r1 = (self.a - self.d - s) / (2.0 * self.c);
                let r2 = (self.a - self.d + s) / (2.0 * self.c);
                vec![IdealPoint::Finite(r1), IdealPoint::Finite(r2)]
            }
        };
        out.sort_by(|p, q| p.cmp_line(q));
        out
    }

    /// The invariant axis of a hyperbolic isometry.
    pub fn axis(&self) -> Result<Geodesic> {
        match self.classify() {
            IsometryClass::Hyperbolic => {
                let fp = self.ideal_fixed_points();
                Geodesic::new(fp[0], fp[1])
            }
            other => Err(GeomError::NotHyperbolic(other)),
        }
    }

    /// Translation length `2 acosh(|tr|/2)` of a hyperbolic isometry.
    pub fn translation_length(&self) -> f64 {
        2.0 * (self.trace().abs() / 2.0).max(1.0).acosh()
    }
}

/// Euclidean description of a geodesic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeodesicShape {
    Vertical { x: f64 },
    Semicircle { center: f64, radius: f64 },
}

/// A complete geodesic, stored by its ideal endpoints with `p < q`
/// (`∞` sorts last).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    p: IdealPoint,
    q: IdealPoint,
}

impl Geodesic {
    pub fn new(p: IdealPoint, q: IdealPoint) -> Result<Self> {
        if let IdealPoint::Finite(v) = p {
            if !v.is_finite() {
                return Err(GeomError::InvalidArgument(format!("endpoint {v}")));
            }
        }
        if let IdealPoint::Finite(v) = q {
            if !v.is_finite() {
                return Err(GeomError::InvalidArgument(format!("endpoint {v}")));
            }
        }
        match p.cmp_line(&q) {
            Ordering::Equal => Err(GeomError::DegenerateGeodesic),
            Ordering::Less => Ok(Self { p, q }),
            Ordering::Greater => Ok(Self { p: q, q: p }),
        }
    }

    pub fn finite(p: f64, q: f64) -> Result<Self> {
        Self::new(IdealPoint::Finite(p), IdealPoint::Finite(q))
    }

    pub fn vertical(x: f64) -> Result<Self> {
        Self::new(IdealPoint::Finite(x), IdealPoint::Infinity)
    }

    pub fn endpoints(&self) -> (IdealPoint, IdealPoint) {
        (self.p, self.q)
    }

    pub fn shape(&self) -> GeodesicShape {
        match (self.p, self.q) {
            (IdealPoint::Finite(x), IdealPoint::Infinity) => GeodesicShape::Vertical { x },
            (IdealPoint::Finite(p), IdealPoint::Finite(q)) => GeodesicShape::Semicircle {
                center: 0.5 * (p + q),
                radius: 0.5 * (q - p),
            },
            // canonical ordering puts ∞ second
            _ => unreachable!("geodesic with infinite first endpoint"),
        }
    }

    pub fn approx_eq(&self, other: &Geodesic) -> bool {
        self.p.approx_eq(&other.p) && self.q.approx_eq(&other.q)
    }

    /// The point at signed hyperbolic arclength `s` from the apex (the
    /// highest point, or `x + i` on a vertical line); `s > 0` heads to `q`.
    pub fn point_at_arclength(&self, s: f64) -> HPoint {
        match self.shape() {
            GeodesicShape::Vertical { x } => HPoint { x, y: s.exp() },
            GeodesicShape::Semicircle { center, radius } => HPoint {
                x: center + radius * s.tanh(),
                y: radius / s.cosh(),
            },
        }
    }

    /// Signed arclength of the orthogonal projection of `z` onto the line,
    /// measured as in [`Geodesic::point_at_arclength`].
    pub fn arclength_of_projection(&self, z: HPoint) -> f64 {
        let g = normalize_line(self);
        // g sends the line to the imaginary axis and the apex to i; lines
        // orthogonal to the axis are circles about 0
        let zz = g.apply(z);
        zz.norm_sqr().sqrt().ln() * self.orientation_under(&g)
    }

    fn orientation_under(&self, g: &Mobius) -> f64 {
        match g.apply_ideal(self.q) {
            IdealPoint::Infinity => 1.0,
            _ => -1.0,
        }
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Geodesic({}, {})", self.p, self.q)
    }
}

/// Hyperbolic distance, `2 artanh(|z-w| / |z-w̄|)`.
///
/// Evaluated as `2 asinh(|z-w| / (2 sqrt(y_z y_w)))`, the same quantity
/// without the cancellation near `|z-w| ≈ |z-w̄|`.
pub fn dist(z: HPoint, w: HPoint) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    let chord = dx.hypot(dy);
    2.0 * (chord / (2.0 * (z.y * w.y).sqrt())).asinh()
}

fn coincident(z: HPoint, w: HPoint) -> bool {
    z.x == w.x && z.y == w.y
}

/// The geodesic containing `z` and `w`.
pub fn geodesic_through(z: HPoint, w: HPoint) -> Result<Geodesic> {
    if coincident(z, w) {
        return Err(GeomError::CoincidentPoints);
    }
    let scale = z.x.abs().max(w.x.abs()).max(1.0);
    if (z.x - w.x).abs() <= 1e-14 * scale {
        return Geodesic::vertical(0.5 * (z.x + w.x));
    }
    let c = (z.norm_sqr() - w.norm_sqr()) / (2.0 * (z.x - w.x));
    let r = (z.x - c).hypot(z.y);
    Geodesic::finite(c - r, c + r)
}

/// The perpendicular bisector of `z` and `w`: points `x` with
/// `y_w |x - z|² = y_z |x - w|²`.
pub fn equidistant_line(z: HPoint, w: HPoint) -> Result<Geodesic> {
    if coincident(z, w) {
        return Err(GeomError::CoincidentPoints);
    }
    let dy = w.y - z.y;
    if dy.abs() <= 1e-14 * z.y.max(w.y) {
        return Geodesic::vertical(0.5 * (z.x + w.x));
    }
    let c = (w.y * z.x - z.y * w.x) / dy;
    let k = (w.y * z.norm_sqr() - z.y * w.norm_sqr()) / dy;
    let r = (c * c - k).max(0.0).sqrt();
    Geodesic::finite(c - r, c + r)
}

/// Side of `z` relative to `line`: for a semicircle `sign((x-c)² + y² - r²)`,
/// for a vertical line `sign(x - v)`; `0` means on the line.
pub fn side_of(line: &Geodesic, z: HPoint) -> i8 {
    let (v, scale) = match line.shape() {
        GeodesicShape::Vertical { x } => (z.x - x, x.abs().max(z.x.abs()).max(1.0)),
        GeodesicShape::Semicircle { center, radius } => {
            let dx = z.x - center;
            let lhs = dx * dx + z.y * z.y;
            let r2 = radius * radius;
            (lhs - r2, lhs.max(r2))
        }
    };
    if v.abs() <= SIDE_TOL * scale {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// An isometry taking `line` to the imaginary axis.
pub fn normalize_line(line: &Geodesic) -> Mobius {
    match line.shape() {
        GeodesicShape::Vertical { x } => Mobius::translation(-x),
        GeodesicShape::Semicircle { center, radius } => {
            let (p, q) = (center - radius, center + radius);
            // z ↦ (z - q)/(z - p): q ↦ 0, p ↦ ∞, determinant q - p > 0
            Mobius::new(1.0, -q, 1.0, -p).expect("q > p")
        }
    }
}

/// Returns `(g, d)` with `g(z) = i`, `g(w) = e^d i` and `d = dist(z, w)`.
pub fn normalize_pair(z: HPoint, w: HPoint) -> Result<(Mobius, f64)> {
    let line = geodesic_through(z, w)?;
    let mut g = normalize_line(&line);
    let (gz, gw) = (g.apply(z), g.apply(w));
    if gw.norm_sqr() < gz.norm_sqr() {
        // z ↦ -1/z swaps 0 and ∞
        let flip = Mobius {
            a: 0.0,
            b: -1.0,
            c: 1.0,
            d: 0.0,
        };
        g = flip.compose(&g);
    }
    let s = g.apply(z).norm_sqr().sqrt();
    let scale = Mobius::new(1.0, 0.0, 0.0, s).expect("s > 0");
    Ok((scale.compose(&g), dist(z, w)))
}

/// True iff the lines do not cross in `H²`. Asymptotic lines (one shared
/// endpoint) count as disjoint; coincident lines do not.
pub fn geodesics_disjoint(l1: &Geodesic, l2: &Geodesic) -> bool {
    if l1.approx_eq(l2) {
        return false;
    }
    let lt = |a: &IdealPoint, b: &IdealPoint| a.cmp_line(b) == Ordering::Less;
    let interleave = (lt(&l1.p, &l2.p) && lt(&l2.p, &l1.q) && lt(&l1.q, &l2.q))
        || (lt(&l2.p, &l1.p) && lt(&l1.p, &l2.q) && lt(&l2.q, &l1.q));
    !interleave
}
