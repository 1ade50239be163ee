//! The bidisk `H² × H²` with the product metric, isometries `(g1, g2)` and
//! the factor swap `ι`.

use std::fmt;

use crate::error::{GeomError, Result};
use crate::hplane::{dist, Geodesic, HPoint, IsometryClass, Mobius};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BidiskPoint {
    pub first: HPoint,
    pub second: HPoint,
}

impl BidiskPoint {
    pub const fn new(first: HPoint, second: HPoint) -> Self {
        Self { first, second }
    }

    /// `(z, z)`.
    pub const fn diagonal(z: HPoint) -> Self {
        Self::new(z, z)
    }

    /// `ι(z1, z2) = (z2, z1)`.
    pub const fn swapped(self) -> Self {
        Self::new(self.second, self.first)
    }

    pub fn approx_eq(&self, other: &BidiskPoint, tol: f64) -> bool {
        rho(*self, *other) <= tol
    }
}

impl fmt::Display for BidiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// Product distance `sqrt(d(p1, q1)² + d(p2, q2)²)`.
pub fn rho(p: BidiskPoint, q: BidiskPoint) -> f64 {
    dist(p.first, q.first).hypot(dist(p.second, q.second))
}

/// `π_i`, for `i` in `{1, 2}`.
pub fn project(p: BidiskPoint, i: usize) -> Result<HPoint> {
    match i {
        1 => Ok(p.first),
        2 => Ok(p.second),
        _ => Err(GeomError::BadIndex(i)),
    }
}

/// `(g1, g2) ∘ ι^swap`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BidiskIsometry {
    pub g1: Mobius,
    pub g2: Mobius,
    pub swap: bool,
}

impl BidiskIsometry {
    pub const fn new(g1: Mobius, g2: Mobius, swap: bool) -> Self {
        Self { g1, g2, swap }
    }

    pub const fn product(g1: Mobius, g2: Mobius) -> Self {
        Self::new(g1, g2, false)
    }

    pub const fn identity() -> Self {
        Self::product(Mobius::identity(), Mobius::identity())
    }

    pub const fn iota() -> Self {
        Self::new(Mobius::identity(), Mobius::identity(), true)
    }

    pub fn apply(&self, p: BidiskPoint) -> BidiskPoint {
        let q = if self.swap { p.swapped() } else { p };
        BidiskPoint::new(self.g1.apply(q.first), self.g2.apply(q.second))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BidiskIsometry) -> BidiskIsometry {
        let (h1, h2) = if self.swap {
            (other.g2, other.g1)
        } else {
            (other.g1, other.g2)
        };
        Self::new(
            self.g1.compose(&h1),
            self.g2.compose(&h2),
            self.swap ^ other.swap,
        )
    }

    pub fn inverse(&self) -> BidiskIsometry {
        if self.swap {
            Self::new(self.g2.inverse(), self.g1.inverse(), true)
        } else {
            Self::product(self.g1.inverse(), self.g2.inverse())
        }
    }

    pub fn pow(&self, n: i32) -> BidiskIsometry {
        if !self.swap {
            return Self::product(self.g1.pow(n), self.g2.pow(n));
        }
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    pub fn is_identity(&self) -> bool {
        !self.swap
            && self.g1.classify() == IsometryClass::Identity
            && self.g2.classify() == IsometryClass::Identity
    }

    /// Both factors hyperbolic and no swap.
    pub fn is_hyperbolic_pair(&self) -> bool {
        !self.swap
            && self.g1.classify() == IsometryClass::Hyperbolic
            && self.g2.classify() == IsometryClass::Hyperbolic
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &BidiskIsometry) -> BidiskIsometry {
        h.compose(self).compose(&h.inverse())
    }
}

/// The flat `l1 × l2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Flat {
    pub l1: Geodesic,
    pub l2: Geodesic,
}

impl Flat {
    pub const fn new(l1: Geodesic, l2: Geodesic) -> Self {
        Self { l1, l2 }
    }

    /// The point with arclength coordinates `(s1, s2)`.
    pub fn point_at(&self, s1: f64, s2: f64) -> BidiskPoint {
        BidiskPoint::new(self.l1.point_at_arclength(s1), self.l2.point_at_arclength(s2))
    }

    pub fn approx_eq(&self, other: &Flat) -> bool {
        self.l1.approx_eq(&other.l1) && self.l2.approx_eq(&other.l2)
    }
}

/// `axis(g1) × axis(g2)`, invariant under `(g1, g2)`.
pub fn invariant_flat(gamma: &BidiskIsometry) -> Result<Flat> {
    if !gamma.is_hyperbolic_pair() {
        return Err(GeomError::NotHyperbolicPair);
    }
    Ok(Flat::new(gamma.g1.axis()?, gamma.g2.axis()?))
}
