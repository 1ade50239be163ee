//! Curve–curve intersection: walk one curve, watch another curve's implicit
//! function for sign changes, bisect.
//!
//! Crossing pairs that fall between two samples leave no sign change. Each
//! sampled local extremum of the watched function is therefore refined by a
//! golden-section search once per curve; any level lying between the sampled
//! and the refined extreme value gets its two crossings bisected separately.

use crate::config::SearchConfig;
use crate::error::Result;
use crate::hplane::{dist, HPoint};
use crate::roots::{self, Bracket};
use crate::sqhyperbola::{Branch, CurveTrace, SquareHyperbola};

const GOLDEN_ITERS: usize = 60;
/// Two roots closer than this (in the curve parameter) are the same root.
const SIGMA_DEDUP: f64 = 1e-9;
/// Two witnesses closer than this (hyperbolic distance) are the same point.
pub const POINT_DEDUP: f64 = 1e-7;

/// A curve sampled uniformly in its signed parameter.
#[derive(Clone, Debug)]
pub struct SampledCurve {
    curve: SquareHyperbola,
    trace: CurveTrace,
    sigmas: Vec<f64>,
    points: Vec<HPoint>,
}

/// A refined local extremum of a function sampled along a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub sigma: f64,
    pub value: f64,
}

/// One root found along a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveHit {
    pub sigma: f64,
    pub t: f64,
    pub branch: Branch,
    pub point: HPoint,
}

impl SampledCurve {
    /// `2n + 1` samples with `σ ∈ [-S, S]`, `S` reaching relative height
    /// `cfg.y_floor`.
    pub fn new(curve: SquareHyperbola, cfg: &SearchConfig) -> Result<Self> {
        let trace = curve.trace_with(cfg.t_scan)?;
        let span = trace.sigma_span(cfg.y_floor);
        let n = cfg.curve_samples;
        let mut sigmas = Vec::with_capacity(2 * n + 1);
        let mut points = Vec::with_capacity(2 * n + 1);
        for i in 0..=2 * n {
            let sigma = span * (i as f64 / n as f64 - 1.0);
            points.push(trace.point_signed(sigma)?);
            sigmas.push(sigma);
        }
        Ok(Self {
            curve,
            trace,
            sigmas,
            points,
        })
    }

    pub fn curve(&self) -> &SquareHyperbola {
        &self.curve
    }

    pub fn trace(&self) -> &CurveTrace {
        &self.trace
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn points(&self) -> &[HPoint] {
        &self.points
    }

    pub fn point(&self, sigma: f64) -> Option<HPoint> {
        self.trace.point_signed(sigma).ok()
    }

    pub fn hit(&self, sigma: f64) -> Option<CurveHit> {
        let (t, branch) = self.trace.split(sigma);
        self.point(sigma).map(|point| CurveHit {
            sigma,
            t,
            branch,
            point,
        })
    }

    fn eval<F: Fn(HPoint) -> f64>(&self, f: &F, sigma: f64) -> f64 {
        self.point(sigma).map_or(f64::NAN, f)
    }

    pub fn values<F: Fn(HPoint) -> f64>(&self, f: F) -> Vec<f64> {
        self.points.iter().map(|&p| f(p)).collect()
    }

    /// Interior local extrema of `values`, each refined on the two adjacent
    /// sample intervals.
    pub fn extrema<F: Fn(HPoint) -> f64>(&self, f: F, values: &[f64]) -> Vec<Extremum> {
        let mut out = Vec::new();
        for i in 1..values.len().saturating_sub(1) {
            let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
            if !(a.is_finite() && b.is_finite() && c.is_finite()) {
                continue;
            }
            let is_min = b <= a && b <= c;
            let is_max = b >= a && b >= c;
            if !(is_min || is_max) || (a == b && b == c) {
                continue;
            }
            let sign = if is_min { 1.0 } else { -1.0 };
            let (sigma, v) = roots::golden_min(
                |s| {
                    let y = self.eval(&f, s);
                    if y.is_finite() {
                        sign * y
                    } else {
                        f64::INFINITY
                    }
                },
                self.sigmas[i - 1],
                self.sigmas[i + 1],
                GOLDEN_ITERS,
            );
            let value = sign * v;
            let (sigma, value) = if sign * value <= sign * b {
                (sigma, value)
            } else {
                (self.sigmas[i], b)
            };
            out.push(Extremum {
                index: i,
                sigma,
                value,
            });
        }
        out
    }

    /// Parameters where `f = level`, from the sign-change scan of
    /// `values - level` plus double crossings hidden next to `extrema`.
    pub fn roots<F: Fn(HPoint) -> f64>(
        &self,
        f: F,
        values: &[f64],
        extrema: &[Extremum],
        level: f64,
        max_bisect: usize,
    ) -> Vec<f64> {
        let g = |s: f64| self.eval(&f, s) - level;
        let shifted: Vec<f64> = values.iter().map(|v| v - level).collect();
        let mut out = Vec::new();
        for br in roots::sign_changes(&shifted) {
            match br {
                Bracket::Exact(i) => out.push(self.sigmas[i]),
                Bracket::Between(i) => {
                    out.push(roots::bisect(g, self.sigmas[i], self.sigmas[i + 1], max_bisect))
                }
            }
        }
        for e in extrema {
            let i = e.index;
            let side = shifted[i] > 0.0;
            if shifted[i] == 0.0
                || (shifted[i - 1] > 0.0) != side
                || (shifted[i + 1] > 0.0) != side
                || shifted[i - 1] == 0.0
                || shifted[i + 1] == 0.0
            {
                continue;
            }
            let ve = e.value - level;
            if ve == 0.0 {
                out.push(e.sigma);
            } else if (ve > 0.0) != side {
                out.push(roots::bisect(g, self.sigmas[i - 1], e.sigma, max_bisect));
                out.push(roots::bisect(g, e.sigma, self.sigmas[i + 1], max_bisect));
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() < SIGMA_DEDUP);
        out
    }

    /// Points of this curve on `other`, with both residuals below `tol`.
    pub fn meet(&self, other: &SquareHyperbola, cfg: &SearchConfig) -> Vec<CurveHit> {
        let f = |p: HPoint| other.level(p);
        let values = self.values(f);
        let extrema = self.extrema(f, &values);
        self.hits_at_level(other, &values, &extrema, other.k(), cfg)
    }

    /// Roots of `other.level = level` along this curve, filtered by the
    /// residuals of both curves' equations.
    pub fn hits_at_level(
        &self,
        other: &SquareHyperbola,
        values: &[f64],
        extrema: &[Extremum],
        level: f64,
        cfg: &SearchConfig,
    ) -> Vec<CurveHit> {
        let f = |p: HPoint| other.level(p);
        let mut hits: Vec<CurveHit> = Vec::new();
        for sigma in self.roots(f, values, extrema, level, cfg.max_bisect) {
            let Some(hit) = self.hit(sigma) else { continue };
            let own = self.curve.implicit_value(hit.point).abs();
            let theirs = (other.level(hit.point) - level).abs();
            if own < cfg.residual_tol
                && theirs < cfg.residual_tol
                && !hits.iter().any(|h| dist(h.point, hit.point) < POINT_DEDUP)
            {
                hits.push(hit);
            }
        }
        hits
    }
}

/// Which curve gets parametrized: the one whose feasible interval
/// `[t0, t_scan]` is longer (smaller `t0`; lines count as `t0 = 0`). Ties go
/// to the first argument. Returns `true` when `b` should be walked.
pub fn walk_second(a: &SquareHyperbola, b: &SquareHyperbola, t_scan: f64) -> Result<bool> {
    let ta = a.trace_with(t_scan)?.t_start();
    let tb = b.trace_with(t_scan)?.t_start();
    Ok(tb < ta)
}

/// Intersection points of two square hyperbolae found by the sampled scan.
/// Coinciding loci return their apex as the single witness.
pub fn intersect_curves(
    a: &SquareHyperbola,
    b: &SquareHyperbola,
    cfg: &SearchConfig,
) -> Result<Vec<HPoint>> {
    let (walk, watch) = if walk_second(a, b, cfg.t_scan)? {
        (b, a)
    } else {
        (a, b)
    };
    let sampled = SampledCurve::new(*walk, cfg)?;
    if walk.same_locus(watch)
        || sampled
            .points()
            .iter()
            .all(|&p| watch.implicit_value(p).abs() < cfg.residual_tol)
    {
        return Ok(vec![sampled.trace().point_signed(0.0)?]);
    }
    Ok(sampled.meet(watch, cfg).into_iter().map(|h| h.point).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hplane::Mobius;

    fn p(x: f64, y: f64) -> HPoint {
        HPoint::new(x, y).unwrap()
    }

    fn sh(z: HPoint, w: HPoint, k: f64) -> SquareHyperbola {
        SquareHyperbola::new(z, w, k).unwrap()
    }

    #[test]
    fn identical_curves_meet() {
        let a = sh(HPoint::i(), p(0.0, 2.0), 3.0);
        let b = sh(p(0.0, 2.0), HPoint::i(), -3.0);
        let hits = intersect_curves(&a, &b, &SearchConfig::default()).unwrap();
        assert_eq!(hits.len(), 1);
        assert!(a.implicit_value(hits[0]).abs() < 1e-8);
    }

    #[test]
    fn line_crosses_hyperbola() {
        // the imaginary axis meets SH^k(i, 2i) once, at its apex
        let axis = sh(p(-1.0, 1.0), p(1.0, 1.0), 0.0);
        let h = sh(HPoint::i(), p(0.0, 2.0), 2.0);
        let hits = intersect_curves(&axis, &h, &SearchConfig::default()).unwrap();
        assert_eq!(hits.len(), 1);
        assert!(hits[0].x().abs() < 1e-9);
        assert!(h.implicit_value(hits[0]).abs() < 1e-8);
    }

    #[test]
    fn nested_leaves_are_disjoint() {
        let cfg = SearchConfig::default();
        let a = sh(HPoint::i(), p(0.0, 2.0), 1.0);
        let b = sh(HPoint::i(), p(0.0, 2.0), 2.0);
        assert!(intersect_curves(&a, &b, &cfg).unwrap().is_empty());
    }

    #[test]
    fn off_axis_pair_meets_at_level_ten() {
        let g = Mobius::scaling(2.0).unwrap();
        let z0 = p(1.0, 0.25);
        let a = sh(g.inverse().apply(z0), z0, 10.0);
        let b = sh(z0, g.apply(z0), 10.0);
        let hits = intersect_curves(&a, &b, &SearchConfig::default()).unwrap();
        assert!(!hits.is_empty());
        for w in hits {
            assert!(a.implicit_value(w).abs() < 1e-8 && b.implicit_value(w).abs() < 1e-8);
        }
    }

    #[test]
    fn hidden_double_crossing_is_recovered() {
        // a circle around a point just off a line, coarse sampling
        let cfg = SearchConfig {
            curve_samples: 3,
            ..SearchConfig::default()
        };
        let line = sh(p(-1.0, 1.0), p(1.0, 1.0), 0.0);
        let sampled = SampledCurve::new(line, &cfg).unwrap();
        let c = p(0.0, 1.0);
        let f = |x: HPoint| dist(x, c);
        let values = sampled.values(f);
        let ext = sampled.extrema(f, &values);
        let found = sampled.roots(f, &values, &ext, 0.5, 80);
        assert_eq!(found.len(), 2, "{found:?}");
        for s in found {
            assert!((s.abs() - 0.5).abs() < 1e-9);
        }
    }
}
