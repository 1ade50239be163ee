//! Dirichlet domains for cyclic groups `⟨γ⟩` acting on the bidisk: half-spaces,
//! membership, sampled face counting, the on-axis disjointness check and the
//! off-axis square-hyperbola experiment.

use crate::bidisk::{invariant_flat, rho, BidiskIsometry, BidiskPoint};
use crate::config::SearchConfig;
use crate::equidistant::{intersection_search, Hypersurface, IntersectionSearch};
use crate::error::{GeomError, Result};
use crate::hplane::{self, dist, HPoint, IsometryClass, Mobius};
use crate::intersect::SampledCurve;
use crate::par;
use crate::sqhyperbola::{Branch, SquareHyperbola};

/// Slack on the `≤` of half-space membership.
pub const HALFSPACE_TOL: f64 = 1e-12;
/// Distance from an axis below which a point counts as lying on it.
pub const ON_AXIS_TOL: f64 = 1e-9;

/// Points at least as close to `p` as to `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfSpace {
    pub p: BidiskPoint,
    pub q: BidiskPoint,
}

impl HalfSpace {
    pub fn boundary(&self) -> Result<Hypersurface> {
        Hypersurface::new(self.p, self.q)
    }
}

pub fn halfspace_contains(hs: &HalfSpace, x: BidiskPoint) -> bool {
    rho(x, hs.p) <= rho(x, hs.q) + HALFSPACE_TOL
}

/// `⟨γ⟩` acting on basepoint `p`, truncated to powers `0 < |n| ≤ n_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CyclicDomainSpec {
    gamma: BidiskIsometry,
    p: BidiskPoint,
    n_max: u32,
}

impl CyclicDomainSpec {
    pub fn new(gamma: BidiskIsometry, p: BidiskPoint, n_max: u32) -> Result<Self> {
        if !gamma.is_hyperbolic_pair() {
            return Err(GeomError::NotHyperbolicPair);
        }
        if n_max == 0 {
            return Err(GeomError::InvalidArgument("power bound must be positive".into()));
        }
        let spec = Self { gamma, p, n_max };
        let orbit: Vec<BidiskPoint> = spec.powers().iter().map(|&n| spec.orbit_point(n)).collect();
        for (i, a) in orbit.iter().enumerate() {
            if rho(*a, p) < 1e-12 || orbit[i + 1..].iter().any(|b| rho(*a, *b) < 1e-12) {
                return Err(GeomError::PreconditionFailed("orbit points are not distinct".into()));
            }
        }
        Ok(spec)
    }

    pub fn gamma(&self) -> BidiskIsometry {
        self.gamma
    }

    pub fn basepoint(&self) -> BidiskPoint {
        self.p
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// `-N, ..., -1, 1, ..., N`.
    pub fn powers(&self) -> Vec<i32> {
        let n = self.n_max as i32;
        (-n..=n).filter(|&i| i != 0).collect()
    }

    pub fn orbit_point(&self, n: i32) -> BidiskPoint {
        self.gamma.pow(n).apply(self.p)
    }

    pub fn halfspace(&self, n: i32) -> HalfSpace {
        HalfSpace {
            p: self.p,
            q: self.orbit_point(n),
        }
    }

    /// The spec seen through the isometry `h`.
    pub fn conjugate_by(&self, h: &BidiskIsometry) -> Result<Self> {
        Self::new(self.gamma.conjugate_by(h), h.apply(self.p), self.n_max)
    }
}

pub fn domain_membership(spec: &CyclicDomainSpec, x: BidiskPoint) -> bool {
    spec.powers()
        .into_iter()
        .all(|n| halfspace_contains(&spec.halfspace(n), x))
}

/// Grid used by [`face_count`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceSampling {
    pub k_values: usize,
    /// Parameter values per factor branch.
    pub t_values: usize,
    /// Leaf levels span `[-k_scale·ρ², k_scale·ρ²]`, `ρ = rho(p, γⁿp)`.
    pub k_scale: f64,
    /// Relative height at which factor curves are cut off.
    pub y_floor: f64,
    /// Required strict interiority in every other half-space.
    pub margin: f64,
    pub residual_tol: f64,
    pub parallel: bool,
}

impl Default for FaceSampling {
    fn default() -> Self {
        Self {
            k_values: 41,
            t_values: 61,
            k_scale: 2.0,
            y_floor: 1e-4,
            margin: 1e-6,
            residual_tol: 1e-7,
            parallel: true,
        }
    }
}

/// A sample point of the wall `E(p, γⁿp)` inside every other half-space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceWitness {
    pub n: i32,
    pub k: f64,
    pub t1: f64,
    pub branch1: Branch,
    pub t2: f64,
    pub branch2: Branch,
    pub point: BidiskPoint,
    /// `|rho(x, p)² - rho(x, γⁿp)²|`.
    pub residual: f64,
    /// Smallest `rho(x, γᵐp) - rho(x, p)` over the other walls.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaceReport {
    /// Powers whose walls contribute a face, in increasing order.
    pub powers: Vec<i32>,
    pub witnesses: Vec<FaceWitness>,
    pub sampling: FaceSampling,
    pub n_max: u32,
    /// Product sample points examined.
    pub samples: usize,
}

impl FaceReport {
    pub fn count(&self) -> usize {
        self.powers.len()
    }
}

/// One factor of a wall sampled at a fixed level, with squared distances to
/// the matching factor of every orbit point.
struct FactorSamples {
    points: Vec<(f64, Branch, HPoint)>,
    sq: Vec<Vec<f64>>,
}

fn factor_samples(
    curve: SquareHyperbola,
    per_branch: usize,
    y_floor: f64,
    orbit: &[HPoint],
) -> Result<FactorSamples> {
    let trace = curve.trace()?;
    let span = trace.sigma_span(y_floor);
    let n = per_branch.max(2) - 1;
    let mut points = Vec::with_capacity(2 * n + 1);
    for i in 0..=2 * n {
        let sigma = span * (i as f64 / n as f64 - 1.0);
        let (t, branch) = trace.split(sigma);
        points.push((t, branch, trace.point_signed(sigma)?));
    }
    let sq = points
        .iter()
        .map(|(_, _, x)| orbit.iter().map(|&o| dist(*x, o).powi(2)).collect())
        .collect();
    Ok(FactorSamples { points, sq })
}

/// Walls of the truncated Dirichlet domain that show up as faces on the
/// sample grid. Undersampling can only undercount.
pub fn face_count(spec: &CyclicDomainSpec, sampling: &FaceSampling) -> Result<FaceReport> {
    let powers = spec.powers();
    // index 0 is the basepoint, then one entry per power
    let orbit: Vec<BidiskPoint> = std::iter::once(spec.p)
        .chain(powers.iter().map(|&n| spec.orbit_point(n)))
        .collect();
    let first: Vec<HPoint> = orbit.iter().map(|o| o.first).collect();
    let second: Vec<HPoint> = orbit.iter().map(|o| o.second).collect();

    let per_wall = par::map_indexed(powers.len(), sampling.parallel, |wi| -> Result<(Option<FaceWitness>, usize)> {
        let n = powers[wi];
        let own = wi + 1;
        let wall = Hypersurface::new(spec.p, orbit[own])?;
        let r = rho(spec.p, orbit[own]);
        let kmax = sampling.k_scale * r * r;
        let mut tested = 0;
        for ki in 0..sampling.k_values {
            let k = if sampling.k_values == 1 {
                0.0
            } else {
                -kmax + 2.0 * kmax * ki as f64 / (sampling.k_values - 1) as f64
            };
            let leaf = wall.leaf(k)?;
            let a = factor_samples(leaf.first, sampling.t_values, sampling.y_floor, &first)?;
            let b = factor_samples(leaf.second, sampling.t_values, sampling.y_floor, &second)?;
            for (i, pa) in a.points.iter().enumerate() {
                for (j, pb) in b.points.iter().enumerate() {
                    tested += 1;
                    let d = |m: usize| (a.sq[i][m] + b.sq[j][m]).sqrt();
                    let d0 = d(0);
                    let dn = d(own);
                    let residual = (d0 * d0 - dn * dn).abs();
                    if residual >= sampling.residual_tol {
                        continue;
                    }
                    let mut margin = f64::INFINITY;
                    for m in 1..orbit.len() {
                        if m != own {
                            margin = margin.min(d(m) - d0);
                            if margin <= sampling.margin {
                                break;
                            }
                        }
                    }
                    if margin > sampling.margin {
                        return Ok((
                            Some(FaceWitness {
                                n,
                                k,
                                t1: pa.0,
                                branch1: pa.1,
                                t2: pb.0,
                                branch2: pb.1,
                                point: BidiskPoint::new(pa.2, pb.2),
                                residual,
                                margin,
                            }),
                            tested,
                        ));
                    }
                }
            }
        }
        Ok((None, tested))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let samples = per_wall.iter().map(|w| w.1).sum();
    let witnesses: Vec<FaceWitness> = per_wall.into_iter().filter_map(|w| w.0).collect();
    Ok(FaceReport {
        powers: witnesses.iter().map(|w| w.n).collect(),
        witnesses,
        sampling: *sampling,
        n_max: spec.n_max,
        samples,
    })
}

/// Levels and ray slopes used by the single-factor ray check.
pub const RAY_LEVELS: [f64; 12] = [-50.0, -20.0, -10.0, -4.0, -1.0, -0.25, 0.25, 1.0, 4.0, 10.0, 20.0, 50.0];
pub const RAY_SLOPES: [f64; 14] = [
    -8.0, -2.0, -1.0, -0.4, -0.15, -0.05, -0.01, 0.01, 0.05, 0.15, 0.4, 1.0, 2.0, 8.0,
];

/// A ray meeting one branch of `SH^m(g z, z)` more than once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayViolation {
    pub factor: usize,
    pub m: f64,
    pub kappa: f64,
    pub branch: Branch,
    pub hits: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub basepoint: BidiskPoint,
    pub search: IntersectionSearch,
    pub ray_checks: usize,
    pub ray_violations: Vec<RayViolation>,
}

impl TheoremReport {
    /// No witness within the search bounds and no ray violation.
    pub fn passed(&self) -> bool {
        self.search.witnesses.is_empty() && self.ray_violations.is_empty()
    }
}

/// Signed distance-free test that `z` lies on the axis of `g`.
pub fn on_axis(g: &Mobius, z: HPoint) -> Result<bool> {
    let axis = g.axis()?;
    let foot = axis.point_at_arclength(axis.arclength_of_projection(z));
    Ok(dist(foot, z) < ON_AXIS_TOL)
}

/// Rays through the origin crossing one branch of `SH^m(g z, z)` more than
/// once, in coordinates where the axis of `g` is the imaginary axis.
pub fn ray_check(g: &Mobius, z: HPoint, levels: &[f64], slopes: &[f64]) -> Result<(usize, Vec<RayViolation>)> {
    let h = hplane::normalize_line(&g.axis()?);
    let (gz, z) = (h.apply(g.apply(z)), h.apply(z));
    let mut checks = 0;
    let mut bad = Vec::new();
    for &m in levels {
        let curve = SquareHyperbola::new(gz, z, m)?.parametrize()?;
        for &kappa in slopes {
            let hits = curve.ray_intersections(kappa);
            for branch in [Branch::Minus, Branch::Plus] {
                checks += 1;
                let count = hits.iter().filter(|h| h.1 == branch).count();
                if count > 1 {
                    bad.push(RayViolation {
                        factor: 0,
                        m,
                        kappa,
                        branch,
                        hits: count,
                    });
                }
            }
        }
    }
    Ok((checks, bad))
}

/// Bounded check that `E(z, γz)` and `E(z, γ⁻¹z)` are disjoint for a basepoint
/// on the invariant flat, plus the ray argument in each factor.
pub fn theorem_check(gamma: &BidiskIsometry, z: BidiskPoint, cfg: &SearchConfig) -> Result<TheoremReport> {
    invariant_flat(gamma)?;
    for (i, (g, zi)) in [(gamma.g1, z.first), (gamma.g2, z.second)].into_iter().enumerate() {
        if !on_axis(&g, zi)? {
            return Err(GeomError::PreconditionFailed(format!(
                "factor {} of the basepoint is off the axis",
                i + 1
            )));
        }
    }
    let h1 = Hypersurface::new(z, gamma.apply(z))?;
    let h2 = Hypersurface::new(z, gamma.inverse().apply(z))?;
    let search = intersection_search(&h1, &h2, cfg)?;
    let mut ray_checks = 0;
    let mut ray_violations = Vec::new();
    for (i, (g, zi)) in [(gamma.g1, z.first), (gamma.g2, z.second)].into_iter().enumerate() {
        let (c, bad) = ray_check(&g, zi, &RAY_LEVELS, &RAY_SLOPES)?;
        ray_checks += c;
        ray_violations.extend(bad.into_iter().map(|v| RayViolation { factor: i + 1, ..v }));
    }
    Ok(TheoremReport {
        basepoint: z,
        search,
        ray_checks,
        ray_violations,
    })
}

/// A point of `SH^k(g⁻¹z0, z0) ∩ SH^k(z0, g z0)`, located on the second curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OffAxisWitness {
    pub k: f64,
    pub point: HPoint,
    pub t: f64,
    pub branch: Branch,
    /// Residuals of both curve equations.
    pub residuals: [f64; 2],
    /// Slope of the ray through the witness and its `g`-image, in
    /// coordinates where the axis of `g` is the imaginary axis.
    pub kappa: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OffAxisReport {
    pub witnesses: Vec<OffAxisWitness>,
    /// Levels scanned.
    pub levels: Vec<f64>,
}

impl OffAxisReport {
    /// The witness with the smallest `|k|` (then smallest `k`).
    pub fn smallest(&self) -> Option<&OffAxisWitness> {
        self.witnesses
            .iter()
            .min_by(|a, b| a.k.abs().total_cmp(&b.k.abs()).then(a.k.total_cmp(&b.k)))
    }

    pub fn at_level(&self, k: f64) -> Vec<&OffAxisWitness> {
        self.witnesses.iter().filter(|w| w.k == k).collect()
    }
}

/// `κ = y/x` after moving the axis of `g` to the imaginary axis.
pub fn ray_slope(g: &Mobius, w: HPoint) -> Result<f64> {
    let p = hplane::normalize_line(&g.axis()?).apply(w);
    Ok(p.y() / p.x())
}

/// Scans `SH^k(g⁻¹z0, z0) ∩ SH^k(z0, g z0)` over `levels`.
pub fn offaxis_search(g: &Mobius, z0: HPoint, levels: &[f64], cfg: &SearchConfig) -> Result<OffAxisReport> {
    let class = g.classify();
    if class != IsometryClass::Hyperbolic {
        return Err(GeomError::NotHyperbolic(class));
    }
    let (before, after) = (g.inverse().apply(z0), g.apply(z0));
    let per_level = par::map_indexed(levels.len(), cfg.parallel, |i| -> Result<Vec<OffAxisWitness>> {
        let k = levels[i];
        let a = SquareHyperbola::new(before, z0, k)?;
        let b = SquareHyperbola::new(z0, after, k)?;
        let walked = SampledCurve::new(b, cfg)?;
        walked
            .meet(&a, cfg)
            .into_iter()
            .map(|h| {
                Ok(OffAxisWitness {
                    k,
                    point: h.point,
                    t: h.t,
                    branch: h.branch,
                    residuals: [a.implicit_value(h.point), b.implicit_value(h.point)],
                    kappa: ray_slope(g, h.point)?,
                })
            })
            .collect()
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(OffAxisReport {
        witnesses: per_level.into_iter().flatten().collect(),
        levels: levels.to_vec(),
    })
}
