//! The Brauer-state plane (f, b) = (tr ρF, tr ρb̂) and its reference sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull_tagged, Point, Region, DEFAULT_TOL};

/// A point (f, b) of the Brauer plane.
pub type BrauerPoint = Point;

/// Weights (μ1, μ2) of the antisymmetric projector and the traceless symmetric projector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuParams {
    pub mu1: f64,
    pub mu2: f64,
}

/// True when `p` satisfies −1 ≤ f ≤ 1, 0 ≤ b ≤ 1 and b ≤ (f + 1)/2, up to `tol`.
pub fn is_physical(p: BrauerPoint, tol: f64) -> bool {
    p.f >= -1.0 - tol && p.f <= 1.0 + tol && p.b >= -tol && p.b <= 1.0 + tol && p.b <= (p.f + 1.0) / 2.0 + tol
}

/// (μ1, μ2) ↦ (1 − 2μ1, 1 − μ1 − μ2).
pub fn mu_to_fb(m: MuParams) -> Result<BrauerPoint> {
    let tol = 1e-12;
    if m.mu1 < -tol || m.mu2 < -tol || m.mu1 + m.mu2 > 1.0 + tol {
        return Err(Error::OutOfRange(format!("μ = ({}, {}) is not a probability pair", m.mu1, m.mu2)));
    }
    Ok(Point::new(1.0 - 2.0 * m.mu1, 1.0 - m.mu1 - m.mu2))
}

/// Inverse of [`mu_to_fb`] on the physical triangle.
pub fn fb_to_mu(p: BrauerPoint) -> Result<MuParams> {
    if !is_physical(p, 1e-12) {
        return Err(Error::OutOfRange(format!("({}, {}) is outside the Brauer triangle", p.f, p.b)));
    }
    let mu1 = (1.0 - p.f) / 2.0;
    Ok(MuParams { mu1, mu2: 1.0 - p.b - mu1 })
}

/// The set of all Brauer states: the triangle (−1,0), (1,0), (1,1) for every d.
pub fn brauer_triangle() -> Region {
    convex_hull_tagged(
        &[
            (Point::new(-1.0, 0.0), Some("pi11".into())),
            (Point::new(1.0, 0.0), Some("pi2".into())),
            (Point::new(1.0, 1.0), Some("pi0".into())),
        ],
        DEFAULT_TOL,
    )
    .with_meta("set", "brauer-triangle")
}

/// Separable Brauer states: the rectangle [0, 1] × [0, 1/d].
pub fn separable_region(d: usize) -> Result<Region> {
    check_dimension(d)?;
    let h = 1.0 / d as f64;
    let pts = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, h), Point::new(0.0, h)];
    Ok(convex_hull_tagged(&pts.map(|p| (p, None)), DEFAULT_TOL).with_meta("set", "separable").with_meta("d", d))
}

fn check_dimension(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension {d} < 2")));
    }
    Ok(())
}

/// A straight segment in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub start: BrauerPoint,
    pub end: BrauerPoint,
}

impl Segment {
    /// Point at parameter t ∈ [0, 1].
    pub fn at(&self, t: f64) -> BrauerPoint {
        Point::new(self.start.f + t * (self.end.f - self.start.f), self.start.b + t * (self.end.b - self.start.b))
    }

    pub fn distance(&self, p: BrauerPoint) -> f64 {
        convex_hull_tagged(&[(self.start, None), (self.end, None)], 0.0).distance(p)
    }
}

/// Werner states Π_sym/dim and Π_anti/dim mixed: b = (f + 1)/(d(d + 1)), f ∈ [−1, 1].
pub fn werner_line(d: usize) -> Result<Segment> {
    check_dimension(d)?;
    let df = d as f64;
    Ok(Segment { start: Point::new(-1.0, 0.0), end: Point::new(1.0, 2.0 / (df * (df + 1.0))) })
}

/// b on the Werner line at a given f.
pub fn werner_b(f: f64, d: usize) -> f64 {
    let df = d as f64;
    (f + 1.0) / (df * (df + 1.0))
}

/// Isotropic states, mixtures of the maximally entangled state and its complement:
/// f = (d·b + 1)/(d + 1), b ∈ [0, 1].
pub fn isotropic_line(d: usize) -> Result<Segment> {
    check_dimension(d)?;
    let df = d as f64;
    Ok(Segment { start: Point::new(1.0 / (df + 1.0), 0.0), end: Point::new(1.0, 1.0) })
}

/// f on the isotropic line at a given b.
pub fn isotropic_f(b: f64, d: usize) -> f64 {
    let df = d as f64;
    (df * b + 1.0) / (df + 1.0)
}

/// The maximally mixed state (1/d, 1/d²).
pub fn maximally_mixed(d: usize) -> BrauerPoint {
    let df = d as f64;
    Point::new(1.0 / df, 1.0 / (df * df))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point, b: Point) -> bool {
        a.dist(b) < 1e-14
    }

    #[test]
    fn mu_examples() {
        let m = |mu1, mu2| mu_to_fb(MuParams { mu1, mu2 }).unwrap();
        assert!(close(m(0.0, 0.0), Point::new(1.0, 1.0)));
        assert!(close(m(1.0, 0.0), Point::new(-1.0, 0.0)));
        assert!(close(m(0.0, 1.0), Point::new(1.0, 0.0)));
        assert!(mu_to_fb(MuParams { mu1: 0.7, mu2: 0.7 }).is_err());
        assert!(fb_to_mu(Point::new(0.0, 0.6)).is_err());
    }

    #[test]
    fn triangle_membership() {
        let t = brauer_triangle();
        assert!(t.contains(maximally_mixed(3), 1e-12));
        assert!(!t.contains(Point::new(0.0, 0.6), 1e-12));
        assert!(t.contains(Point::new(-1.0, 0.0), 1e-12));
    }

    #[test]
    fn separable_rectangles() {
        let r = separable_region(3).unwrap();
        assert!((r.area() - 1.0 / 3.0).abs() < 1e-15);
        assert!(!r.contains(Point::new(1.0, 0.5), 1e-12));
        assert!(separable_region(2).unwrap().contains(Point::new(1.0, 0.5), 1e-12));
        assert!(separable_region(1).is_err());
    }

    #[test]
    fn line_endpoints() {
        let w = werner_line(3).unwrap();
        assert!(close(w.end, Point::new(1.0, 1.0 / 6.0)));
        assert!(close(w.start, Point::new(-1.0, 0.0)));
        assert!((werner_b(1.0, 2) - 1.0 / 3.0).abs() < 1e-15);
        let i = isotropic_line(3).unwrap();
        assert!(close(i.start, Point::new(0.25, 0.0)));
        assert!(close(i.end, Point::new(1.0, 1.0)));
        assert!((isotropic_f(0.0, 2) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lines_meet_at_maximally_mixed_point() {
        let t = brauer_triangle();
        for d in 2..=12 {
            let mm = maximally_mixed(d);
            assert!(werner_line(d).unwrap().distance(mm) < 1e-14);
            assert!(isotropic_line(d).unwrap().distance(mm) < 1e-14);
            for k in 0..=10 {
                let s = k as f64 / 10.0;
                assert!(t.contains(werner_line(d).unwrap().at(s), 1e-12));
                assert!(t.contains(isotropic_line(d).unwrap().at(s), 1e-12));
            }
        }
    }
}
