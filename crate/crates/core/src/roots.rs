//! Derivative-free root finding: sign-change scans, bisection and a
//! golden-section minimizer for locating near-tangent double crossings.

/// Maximum bisection steps.
pub const MAX_BISECT: usize = 80;

/// Convergence threshold on `|f|`.
pub const ROOT_FTOL: f64 = 1e-12;

/// Bisects `f` on `[lo, hi]`, where `f(lo)` and `f(hi)` have opposite signs.
/// Stops after `max_iter` halvings, when `|f| < ROOT_FTOL`, or when the
/// bracket can no longer be split.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, max_iter: usize) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    let fhi = f(hi);
    if fhi == 0.0 {
        return hi;
    }
    let mut best = if flo.abs() < fhi.abs() { (lo, flo) } else { (hi, fhi) };
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let fm = f(mid);
        if !fm.is_finite() {
            break;
        }
        if fm.abs() < best.1.abs() {
            best = (mid, fm);
        }
        if fm.abs() < ROOT_FTOL {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    best.0
}

/// Bisects a monotone predicate, `pred(lo) == false` and `pred(hi) == true`,
/// down to width `xtol`. Returns the `true` end.
pub fn bisect_boundary<P: FnMut(f64) -> bool>(
    mut pred: P,
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
    max_iter: usize,
) -> f64 {
    for _ in 0..max_iter {
        if (hi - lo).abs() <= xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// A root location found by a scan over sampled values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bracket {
    /// The sample itself is an exact zero.
    Exact(usize),
    /// The sign flips between samples `i` and `i + 1`.
    Between(usize),
}

/// Scans sampled values for sign changes. Non-finite samples break the scan.
pub fn sign_changes(values: &[f64]) -> Vec<Bracket> {
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if v == 0.0 {
            out.push(Bracket::Exact(i));
            continue;
        }
        if let Some(&next) = values.get(i + 1) {
            if v.is_finite() && next.is_finite() && next != 0.0 && (v < 0.0) != (next < 0.0) {
                out.push(Bracket::Between(i));
            }
        }
    }
    out
}

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, MAX_BISECT);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bisect_boundary_of_threshold() {
        let b = bisect_boundary(|x| x >= 0.3, 0.0, 1.0, 1e-12, MAX_BISECT);
        assert!((b - 0.3).abs() <= 1e-12 && b >= 0.3);
    }

    #[test]
    fn scan_reports_changes_and_zeros() {
        let v = [1.0, -1.0, -2.0, 0.0, 3.0, 4.0, -1.0];
        assert_eq!(
            sign_changes(&v),
            vec![Bracket::Between(0), Bracket::Exact(3), Bracket::Between(5)]
        );
        assert!(sign_changes(&[1.0, f64::NAN, -1.0]).is_empty());
    }

    #[test]
    fn golden_min_parabola() {
        let (x, fx) = golden_min(|x| (x - 0.7).powi(2) - 1.0, 0.0, 2.0, 80);
        assert!((x - 0.7).abs() < 1e-7);
        assert!((fx + 1.0).abs() < 1e-12);
    }
}
