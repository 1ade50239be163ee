//! Equidistant hypersurfaces `E(z, w)` in the bidisk and their foliation by
//! leaves `E^k(z, w) = SH^k(z1, w1) × SH^k(w2, z2)`.
//!
//! Intersection searches are bounded: a `(k, l)` grid from [`SearchConfig`]
//! and sampled curve scans. An empty result means nothing was found within
//! those bounds.

use crate::bidisk::{rho, BidiskIsometry, BidiskPoint, Flat};
use crate::config::SearchConfig;
use crate::error::{GeomError, Result};
use crate::hplane::{self, geodesics_disjoint, side_of, HPoint};
use crate::intersect::{intersect_curves, Extremum, SampledCurve};
use crate::par;
use crate::sqhyperbola::{Branch, SquareHyperbola};

/// Points closer than this (product distance) are treated as equal when
/// looking for a shared point between two hypersurfaces.
const SAME_POINT: f64 = 1e-12;
/// Margin separating an invisible spine from a tangent one.
pub const INVISIBLE_MARGIN: f64 = 1e-6;
/// Arclength half-width of the spine grid used by the invisibility test.
pub const SPINE_SPAN: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hypersurface {
    z: BidiskPoint,
    w: BidiskPoint,
}

impl Hypersurface {
    pub fn new(z: BidiskPoint, w: BidiskPoint) -> Result<Self> {
        if z == w {
            return Err(GeomError::CoincidentPoints);
        }
        Ok(Self { z, w })
    }

    pub fn z(&self) -> BidiskPoint {
        self.z
    }

    pub fn w(&self) -> BidiskPoint {
        self.w
    }

    /// The first factor in which `z` and `w` agree, if any. Such a
    /// hypersurface is a product of `H²` with a line.
    pub fn degenerate_factor(&self) -> Option<usize> {
        if self.z.first == self.w.first {
            Some(1)
        } else if self.z.second == self.w.second {
            Some(2)
        } else {
            None
        }
    }

    fn check(&self) -> Result<()> {
        match self.degenerate_factor() {
            Some(i) => Err(GeomError::DegenerateFactor(i)),
            None => Ok(()),
        }
    }

    /// `rho(x, z)² - rho(x, w)²`.
    pub fn residual(&self, x: BidiskPoint) -> f64 {
        let a = rho(x, self.z);
        let b = rho(x, self.w);
        (a - b) * (a + b)
    }

    pub fn contains(&self, x: BidiskPoint, tol: f64) -> bool {
        (rho(x, self.z) - rho(x, self.w)).abs() <= tol
    }

    /// `SH^k(z1, w1)`.
    pub fn first_curve(&self, k: f64) -> Result<SquareHyperbola> {
        SquareHyperbola::new(self.z.first, self.w.first, k)
    }

    /// `SH^k(w2, z2)`, with the points reversed.
    pub fn second_curve(&self, k: f64) -> Result<SquareHyperbola> {
        SquareHyperbola::new(self.w.second, self.z.second, k)
    }

    pub fn leaf(&self, k: f64) -> Result<Leaf> {
        self.check()?;
        Ok(Leaf {
            k,
            first: self.first_curve(k)?,
            second: self.second_curve(k)?,
        })
    }

    pub fn spine(&self) -> Result<Spine> {
        self.check()?;
        Ok(Spine {
            flat: Flat::new(
                hplane::equidistant_line(self.z.first, self.w.first)?,
                hplane::equidistant_line(self.w.second, self.z.second)?,
            ),
        })
    }

    /// `E(w, z)`, the same set.
    pub fn reversed(&self) -> Hypersurface {
        Hypersurface {
            z: self.w,
            w: self.z,
        }
    }

    pub fn image(&self, g: &BidiskIsometry) -> Hypersurface {
        Hypersurface {
            z: g.apply(self.z),
            w: g.apply(self.w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Leaf {
    pub k: f64,
    pub first: SquareHyperbola,
    pub second: SquareHyperbola,
}

impl Leaf {
    /// `n × n` product points, each factor sampled uniformly in its signed
    /// parameter down to relative height `rel`.
    pub fn sample_grid(&self, n: usize, rel: f64) -> Result<Vec<BidiskPoint>> {
        let a = factor_samples(&self.first, n, rel)?;
        let b = factor_samples(&self.second, n, rel)?;
        Ok(a
            .iter()
            .flat_map(|&p| b.iter().map(move |&q| BidiskPoint::new(p, q)))
            .collect())
    }
}

fn factor_samples(c: &SquareHyperbola, n: usize, rel: f64) -> Result<Vec<HPoint>> {
    let trace = c.trace()?;
    let span = trace.sigma_span(rel);
    (0..n)
        .map(|i| {
            let u = if n == 1 { 0.5 } else { i as f64 / (n - 1) as f64 };
            trace.point_signed(span * (2.0 * u - 1.0))
        })
        .collect()
}

/// The leaf `E^0`, a flat.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spine {
    pub flat: Flat,
}

pub fn spines_equal(h1: &Hypersurface, h2: &Hypersurface) -> Result<bool> {
    Ok(h1.spine()?.flat.approx_eq(&h2.spine()?.flat))
}

/// Whether `y` lies in the slab between the equidistant lines of `(x, y)`
/// and `(y, z)`. The lines must be disjoint.
pub fn between_plane(x: HPoint, y: HPoint, z: HPoint) -> Result<bool> {
    if x == y || y == z || x == z {
        return Err(GeomError::CoincidentPoints);
    }
    let l1 = hplane::equidistant_line(x, y)?;
    let l2 = hplane::equidistant_line(y, z)?;
    if !geodesics_disjoint(&l1, &l2) {
        return Ok(false);
    }
    let on1 = l1.point_at_arclength(0.0);
    let on2 = l2.point_at_arclength(0.0);
    let s1 = side_of(&l1, y);
    let s2 = side_of(&l2, y);
    Ok(s1 != 0 && s2 != 0 && s1 == side_of(&l1, on2) && s2 == side_of(&l2, on1))
}

/// Factor-wise slab betweenness of `y` relative to `x` and `z`.
pub fn between(x: BidiskPoint, y: BidiskPoint, z: BidiskPoint) -> Result<bool> {
    Ok(between_plane(x.first, y.first, z.first)? && between_plane(x.second, y.second, z.second)?)
}

/// `y` is strictly closer to `γx` or to `γ⁻¹x` than to `x`.
pub fn invisible_point(x: BidiskPoint, gamma: &BidiskIsometry, y: BidiskPoint) -> bool {
    visibility_margin(x, gamma, y) > 0.0
}

/// `max(rho(y,x) - rho(y,γx), rho(y,x) - rho(y,γ⁻¹x))`; positive iff `y` is
/// invisible.
pub fn visibility_margin(x: BidiskPoint, gamma: &BidiskIsometry, y: BidiskPoint) -> f64 {
    let d = rho(y, x);
    let a = d - rho(y, gamma.apply(x));
    let b = d - rho(y, gamma.inverse().apply(x));
    a.max(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Invisible,
    Visible,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvisibilityReport {
    pub verdict: Verdict,
    /// Minimum [`visibility_margin`] over the spine grid; `NaN` when the
    /// grid was not evaluated.
    pub min_margin: f64,
    /// Witnesses against each disjointness hypothesis (`γ`, then `γ⁻¹`).
    pub blocking: [usize; 2],
}

/// Invisibility of `h` to `x` through its spine, valid when `h` misses both
/// `E(x, γx)` and `E(x, γ⁻¹x)`. Those hypotheses are checked by the bounded
/// search first; a witness against either gives `Inconclusive`.
pub fn invisible_hypersurface(
    x: BidiskPoint,
    gamma: &BidiskIsometry,
    h: &Hypersurface,
    samples: usize,
    cfg: &SearchConfig,
) -> Result<InvisibilityReport> {
    let fwd = Hypersurface::new(x, gamma.apply(x))?;
    let back = Hypersurface::new(x, gamma.inverse().apply(x))?;
    let blocking = [
        hypersurfaces_intersect(h, &fwd, cfg)?.len(),
        hypersurfaces_intersect(h, &back, cfg)?.len(),
    ];
    if blocking != [0, 0] {
        return Ok(InvisibilityReport {
            verdict: Verdict::Inconclusive,
            min_margin: f64::NAN,
            blocking,
        });
    }
    let flat = h.spine()?.flat;
    let n = samples.max(2);
    let s = |i: usize| SPINE_SPAN * (2.0 * i as f64 / (n - 1) as f64 - 1.0);
    let mut min_margin = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            min_margin = min_margin.min(visibility_margin(x, gamma, flat.point_at(s(i), s(j))));
        }
    }
    let verdict = if min_margin > INVISIBLE_MARGIN {
        Verdict::Invisible
    } else {
        Verdict::Visible
    };
    Ok(InvisibilityReport {
        verdict,
        min_margin,
        blocking,
    })
}

/// Common points of two leaves, found factor by factor.
pub fn leaves_intersect(l1: &Leaf, l2: &Leaf, cfg: &SearchConfig) -> Result<Vec<BidiskPoint>> {
    let a = intersect_curves(&l1.first, &l2.first, cfg)?;
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let b = intersect_curves(&l1.second, &l2.second, cfg)?;
    Ok(a.iter()
        .flat_map(|&p| b.iter().map(move |&q| BidiskPoint::new(p, q)))
        .take(cfg.max_witnesses_per_cell.max(1))
        .collect())
}

/// The single-factor intersection singled out by the same-value argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SameValueReduction {
    /// `1`: `SH^m(x1, y1) ∩ SH^m(y1, z1)`; `2`: `SH^m(y2, x2) ∩ SH^m(z2, y2)`.
    pub factor: usize,
    pub m: f64,
    /// Negative `k, l` were first moved to the positive case by `ι`.
    pub via_iota: bool,
    pub curves: [SquareHyperbola; 2],
}

/// Height floor for [`SameValueReduction::search`]. The reduced pair meets
/// closer to the ideal boundary than the leaves it came from.
pub const REDUCTION_Y_FLOOR: f64 = 1e-14;

impl SameValueReduction {
    pub fn search(&self, cfg: &SearchConfig) -> Result<Vec<HPoint>> {
        let cfg = SearchConfig {
            y_floor: cfg.y_floor.min(REDUCTION_Y_FLOOR),
            ..cfg.clone()
        };
        intersect_curves(&self.curves[0], &self.curves[1], &cfg)
    }
}

/// Given `y` between `x` and `z` and a common point of `E^k(x,y)` and
/// `E^l(y,z)` with `kl > 0`, names the single-factor pair that must meet.
pub fn samevalue_reduce(
    x: BidiskPoint,
    y: BidiskPoint,
    z: BidiskPoint,
    k: f64,
    l: f64,
) -> Result<SameValueReduction> {
    if !(k * l > 0.0) {
        return Err(GeomError::PreconditionFailed(format!("kl = {} is not positive", k * l)));
    }
    if !between(x, y, z)? {
        return Err(GeomError::PreconditionFailed("y is not between x and z".into()));
    }
    let via_iota = k < 0.0;
    // in the ι-image the levels are -k, -l and factor i becomes factor 3 - i
    let (kp, lp) = if via_iota { (-k, -l) } else { (k, l) };
    let (factor_p, m) = if kp <= lp { (1, l) } else { (2, k) };
    let factor = if via_iota { 3 - factor_p } else { factor_p };
    let curves = if factor == 1 {
        [
            SquareHyperbola::new(x.first, y.first, m)?,
            SquareHyperbola::new(y.first, z.first, m)?,
        ]
    } else {
        [
            SquareHyperbola::new(y.second, x.second, m)?,
            SquareHyperbola::new(z.second, y.second, m)?,
        ]
    };
    Ok(SameValueReduction {
        factor,
        m,
        via_iota,
        curves,
    })
}

/// A common point of `E^k` of the first hypersurface and `E^l` of the
/// second, with the curve parameters that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub k: f64,
    pub l: f64,
    pub point: BidiskPoint,
    pub t1: f64,
    pub branch1: Branch,
    pub t2: f64,
    pub branch2: Branch,
    /// Largest absolute residual among the four curve equations.
    pub residual: f64,
}

/// Shared-point configuration `h1 = E^{s1}(x, y)`, `h2 = E^{s2}(y, z)`, where
/// `E^{-1}(a, b)` stands for `E(b, a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chain {
    pub x: BidiskPoint,
    pub y: BidiskPoint,
    pub z: BidiskPoint,
    pub s1: f64,
    pub s2: f64,
}

pub fn shared_chain(h1: &Hypersurface, h2: &Hypersurface) -> Option<Chain> {
    let same = |a: BidiskPoint, b: BidiskPoint| rho(a, b) < SAME_POINT;
    let (p, q, pp, qp) = (h1.z, h1.w, h2.z, h2.w);
    let chain = |x, y, z, s1, s2| Chain { x, y, z, s1, s2 };
    if same(q, pp) {
        Some(chain(p, q, qp, 1.0, 1.0))
    } else if same(q, qp) {
        Some(chain(p, q, pp, 1.0, -1.0))
    } else if same(p, pp) {
        Some(chain(q, p, qp, -1.0, 1.0))
    } else if same(p, qp) {
        Some(chain(q, p, pp, -1.0, -1.0))
    } else {
        None
    }
}

/// Outcome of a grid search, with bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionSearch {
    pub witnesses: Vec<Witness>,
    pub cells: usize,
    pub pruned: usize,
    /// Set when a betweenness chain enabled same-sign pruning.
    pub chain: Option<Chain>,
}

/// Factor data that does not depend on `l`: the walked curve, the watched
/// level function along it and its refined extrema.
struct FactorCache {
    curve: SampledCurve,
    values: Vec<f64>,
    extrema: Vec<Extremum>,
}

impl FactorCache {
    fn new(curve: SquareHyperbola, a: HPoint, b: HPoint, cfg: &SearchConfig) -> Result<Self> {
        let curve = SampledCurve::new(curve, cfg)?;
        let f = |p: HPoint| {
            let (da, db) = (hplane::dist(p, a), hplane::dist(p, b));
            (da - db) * (da + db)
        };
        let values = curve.values(f);
        let extrema = curve.extrema(f, &values);
        Ok(Self {
            curve,
            values,
            extrema,
        })
    }
}

/// Witnesses for `h1 ∩ h2` over the `(k, l)` grid.
pub fn hypersurfaces_intersect(
    h1: &Hypersurface,
    h2: &Hypersurface,
    cfg: &SearchConfig,
) -> Result<Vec<Witness>> {
    Ok(intersection_search(h1, h2, cfg)?.witnesses)
}

/// The grid search. For each `k` the curves of `E^k(h1)` are sampled once;
/// each `l` then only needs a scan against the cached level values of the
/// curves of `h2`. When the hypersurfaces share a point in betweenness
/// position, cells that the same-sign lemma rules out are skipped.
pub fn intersection_search(
    h1: &Hypersurface,
    h2: &Hypersurface,
    cfg: &SearchConfig,
) -> Result<IntersectionSearch> {
    cfg.validate()?;
    h1.check()?;
    h2.check()?;
    let chain = match shared_chain(h1, h2) {
        Some(c) if cfg.prune_samesign && between(c.x, c.y, c.z).unwrap_or(false) => Some(c),
        _ => None,
    };
    let grid = cfg.k_grid();
    let n = grid.len();
    let caches = par::map_indexed(n, cfg.parallel, |i| -> Result<[FactorCache; 2]> {
        let k = grid[i];
        Ok([
            FactorCache::new(h1.first_curve(k)?, h2.z.first, h2.w.first, cfg)?,
            FactorCache::new(h1.second_curve(k)?, h2.w.second, h2.z.second, cfg)?,
        ])
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let rows = par::map_indexed(n, cfg.parallel, |i| -> Result<(Vec<Witness>, usize)> {
        let k = grid[i];
        let [c1, c2] = &caches[i];
        let mut found = Vec::new();
        let mut pruned = 0;
        for &l in &grid {
            if let Some(c) = &chain {
                if (c.s1 * k) * (c.s2 * l) <= 0.0 {
                    pruned += 1;
                    continue;
                }
            }
            let b1 = h2.first_curve(l)?;
            let hits1 = c1.curve.hits_at_level(&b1, &c1.values, &c1.extrema, l, cfg);
            if hits1.is_empty() {
                continue;
            }
            let b2 = h2.second_curve(l)?;
            let hits2 = c2.curve.hits_at_level(&b2, &c2.values, &c2.extrema, l, cfg);
            let a1 = c1.curve.curve();
            let a2 = c2.curve.curve();
            let cell = hits1
                .iter()
                .flat_map(|p| hits2.iter().map(move |q| (p, q)))
                .take(cfg.max_witnesses_per_cell.max(1))
                .map(|(p, q)| Witness {
                    k,
                    l,
                    point: BidiskPoint::new(p.point, q.point),
                    t1: p.t,
                    branch1: p.branch,
                    t2: q.t,
                    branch2: q.branch,
                    residual: [
                        a1.implicit_value(p.point),
                        b1.implicit_value(p.point),
                        a2.implicit_value(q.point),
                        b2.implicit_value(q.point),
                    ]
                    .iter()
                    .fold(0.0f64, |m, v| m.max(v.abs())),
                });
            found.extend(cell);
        }
        Ok((found, pruned))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let pruned = rows.iter().map(|r| r.1).sum();
    Ok(IntersectionSearch {
        witnesses: rows.into_iter().flat_map(|r| r.0).collect(),
        cells: n * n,
        pruned,
        chain,
    })
}
