//! The unified convex-body type and the operations shared by both
//! representations.

use super::halfplane::{sorted_halfplane_intersection, Constraint, Halfplane};
use super::point::{AffineMap2, Point2};
use super::polygon::Polygon;
use super::smooth::{PolygonMode, SmoothBody, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::solve;
use std::f64::consts::TAU;

/// Grid used when comparing support functions of two bodies.
pub const COMPARE_GRID: usize = 2048;

/// Resolution at which smooth bodies are flattened inside overlap
/// evaluations. Coarser than the body grid; the area-corrected flattening
/// keeps the induced radial error near 1e-5.
const OVERLAP_GRID: usize = 512;

/// A planar convex body.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    Poly(Polygon),
    Smooth(SmoothBody),
}

/// A boundary point with its outer unit normal and arc-length quadrature
/// weight.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySample {
    pub point: Point2,
    pub normal: Point2,
    pub arc_weight: f64,
}

impl From<Polygon> for ConvexBody {
    fn from(p: Polygon) -> Self {
        ConvexBody::Poly(p)
    }
}

impl From<SmoothBody> for ConvexBody {
    fn from(s: SmoothBody) -> Self {
        ConvexBody::Smooth(s)
    }
}

impl ConvexBody {
    pub fn area(&self) -> f64 {
        match self {
            ConvexBody::Poly(p) => p.area(),
            ConvexBody::Smooth(s) => s.area(),
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            ConvexBody::Poly(p) => p.perimeter(),
            ConvexBody::Smooth(s) => s.perimeter(),
        }
    }

    pub fn support(&self, theta: f64) -> f64 {
        match self {
            ConvexBody::Poly(p) => p.support(theta),
            ConvexBody::Smooth(s) => s.support(theta),
        }
    }

    pub fn centroid(&self) -> Point2 {
        match self {
            ConvexBody::Poly(p) => p.centroid(),
            ConvexBody::Smooth(s) => {
                s.polygonize(DEFAULT_GRID.min(s.grid_size()), PolygonMode::Inscribed).centroid()
            }
        }
    }

    /// Largest support value; a radius bound for tolerance scaling.
    pub fn scale(&self) -> f64 {
        match self {
            ConvexBody::Poly(p) => p.scale(),
            ConvexBody::Smooth(s) => s.max_support(),
        }
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        match self {
            ConvexBody::Poly(poly) => poly.contains(p, tol),
            ConvexBody::Smooth(s) => s.max_separation(p) <= tol,
        }
    }

    /// Polygon snapshot of the body: the polygon itself, or the smooth
    /// body flattened at its own grid resolution with vertices on the
    /// boundary.
    pub fn polygonize(&self) -> Polygon {
        match self {
            ConvexBody::Poly(p) => p.clone(),
            ConvexBody::Smooth(s) => s.polygonize(s.grid_size(), PolygonMode::Inscribed),
        }
    }

    /// K ∩ H as a polygon. Smooth bodies are flattened first at their own
    /// grid resolution (area-corrected, so the flattening does not bias
    /// areas at leading order).
    pub fn clip(&self, h: &Halfplane) -> Result<Polygon> {
        match self {
            ConvexBody::Poly(p) => p.clip(h),
            ConvexBody::Smooth(s) => {
                s.polygonize(s.grid_size(), PolygonMode::AreaCorrected).clip(h)
            }
        }
    }

    /// Area of { x in K : <u(theta), x> >= a }.
    pub fn cut_area(&self, theta: f64, a: f64) -> f64 {
        match self {
            ConvexBody::Poly(p) => p.cut_area(theta, a),
            ConvexBody::Smooth(s) => s.cut_area(theta, a),
        }
    }

    /// The unique offset whose cut has area `t`.
    pub fn cut_offset_for_area(&self, theta: f64, t: f64) -> Result<f64> {
        match self {
            ConvexBody::Poly(p) => p.cut_offset_for_area(theta, t),
            ConvexBody::Smooth(s) => s.cut_offset_for_area(theta, t),
        }
    }

    /// Area of the polar body (K - x)^0 for x interior.
    pub fn polar_area_about(&self, x: Point2) -> Result<f64> {
        match self {
            ConvexBody::Poly(p) => p.polar_area_about(x),
            ConvexBody::Smooth(s) => s.polar_area_about(x),
        }
    }

    /// |co[x, K]| - |K|; zero iff x lies in K.
    pub fn illuminated_area(&self, x: Point2) -> f64 {
        match self {
            ConvexBody::Poly(p) => p.illuminated_area(x),
            ConvexBody::Smooth(s) => s.illuminated_area(x),
        }
    }

    /// Area of K ∩ (K + x).
    ///
    /// Both translates share edge normals, so the intersection is the
    /// halfplane system of K with offsets tightened by min(0, <n, x>).
    pub fn overlap_area(&self, x: Point2) -> f64 {
        let poly;
        let p = match self {
            ConvexBody::Poly(p) => p,
            ConvexBody::Smooth(s) => {
                poly = s.polygonize(OVERLAP_GRID.min(s.grid_size()), PolygonMode::AreaCorrected);
                &poly
            }
        };
        let mut cons = p.edge_constraints();
        for c in cons.iter_mut() {
            c.offset += c.normal.dot(x).min(0.0);
        }
        match sorted_halfplane_intersection(&cons, p.scale()) {
            Ok(verts) => {
                let n = verts.len();
                let mut s = 0.0;
                for i in 0..n {
                    s += verts[i].cross(verts[(i + 1) % n]);
                }
                (0.5 * s).max(0.0)
            }
            Err(_) => 0.0,
        }
    }

    /// Image under an invertible affine map.
    pub fn transform(&self, map: &AffineMap2) -> Result<ConvexBody> {
        if map.det.abs() < 1e-12 {
            return Err(Error::SingularMap(map.det.abs()));
        }
        Ok(match self {
            ConvexBody::Poly(p) => ConvexBody::Poly(p.transform(map)?),
            ConvexBody::Smooth(s) => ConvexBody::Smooth(s.transform(map)?),
        })
    }

    /// Radius of curvature at normal angle theta (smooth bodies only).
    pub fn radius_of_curvature(&self, theta: f64) -> Option<f64> {
        match self {
            ConvexBody::Poly(_) => None,
            ConvexBody::Smooth(s) => Some(s.radius_of_curvature(theta)),
        }
    }

    /// Boundary samples with outer normals and arc-length weights.
    ///
    /// Smooth bodies sample midpoints of the angle grid with weights
    /// ρ(θ)Δθ. Polygon samples are placed strictly inside edges (midpoint
    /// rule per edge), so every sample has the unique normal of its edge;
    /// weights sum to the perimeter exactly.
    pub fn boundary_samples(&self, count: usize) -> Vec<BoundarySample> {
        let count = count.max(16);
        match self {
            ConvexBody::Smooth(s) => {
                let dt = TAU / count as f64;
                (0..count)
                    .map(|j| {
                        let th = (j as f64 + 0.5) * dt;
                        BoundarySample {
                            point: s.boundary_point(th),
                            normal: Point2::unit(th),
                            arc_weight: s.radius_of_curvature(th) * dt,
                        }
                    })
                    .collect()
            }
            ConvexBody::Poly(p) => {
                let v = p.vertices();
                let n = v.len();
                let perim = p.perimeter();
                let mut out = Vec::with_capacity(count + n);
                for i in 0..n {
                    let a = v[i];
                    let b = v[(i + 1) % n];
                    let e = b - a;
                    let len = e.norm();
                    let k = ((count as f64 * len / perim).round() as usize).max(1);
                    let normal = Point2::new(e.y, -e.x).normalized();
                    let w = len / k as f64;
                    for j in 0..k {
                        let t = (j as f64 + 0.5) / k as f64;
                        out.push(BoundarySample { point: a + e * t, normal, arc_weight: w });
                    }
                }
                out
            }
        }
    }

    /// Largest r so that the disk of radius r tangent at `s` from the
    /// inside stays in K. Bisection on r with a support-dominance
    /// containment test; returns 0 at polygon corners.
    pub fn rolling_radius(&self, s: &BoundarySample) -> f64 {
        let hi = self.scale() * 2.0;
        let contains_disk = |r: f64| -> bool {
            let c = s.point - s.normal * r;
            match self {
                ConvexBody::Poly(p) => p
                    .edge_constraints()
                    .iter()
                    .all(|e| e.normal.dot(c) + r <= e.offset + 1e-13 * hi),
                ConvexBody::Smooth(b) => {
                    let m = b.grid_size();
                    let h = b.support_samples();
                    (0..m).all(|j| {
                        let u = Point2::unit(j as f64 * TAU / m as f64);
                        u.dot(c) + r <= h[j] + 1e-13 * hi
                    })
                }
            }
        };
        if !contains_disk(0.0) {
            return 0.0;
        }
        let mut lo = 0.0;
        let mut hi_r = hi;
        if contains_disk(hi_r) {
            return hi_r;
        }
        while hi_r - lo > 1e-9 {
            let mid = 0.5 * (lo + hi_r);
            if contains_disk(mid) {
                lo = mid;
            } else {
                hi_r = mid;
            }
        }
        0.5 * (lo + hi_r)
    }

    /// Support-function sup-distance on the comparison grid; equals the
    /// Hausdorff distance for convex bodies.
    pub fn hausdorff_distance(&self, other: &ConvexBody) -> f64 {
        (0..COMPARE_GRID)
            .map(|j| {
                let th = j as f64 * TAU / COMPARE_GRID as f64;
                (self.support(th) - other.support(th)).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Max over the comparison grid of h_self - h_other (positive when
    /// self pokes outside other somewhere).
    pub fn support_excess_over(&self, other: &ConvexBody) -> f64 {
        (0..COMPARE_GRID)
            .map(|j| {
                let th = j as f64 * TAU / COMPARE_GRID as f64;
                self.support(th) - other.support(th)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Exit radius of the ray from the origin in direction `phi`
    /// (requires the origin inside the body).
    pub fn ray_exit_radius(&self, phi: f64) -> f64 {
        match self {
            ConvexBody::Smooth(s) => s.ray_exit(phi).1,
            ConvexBody::Poly(p) => {
                let d = Point2::unit(phi);
                let v = p.vertices();
                let n = v.len();
                let mut best = f64::INFINITY;
                for i in 0..n {
                    let a = v[i];
                    let b = v[(i + 1) % n];
                    let e = b - a;
                    let den = d.cross(e);
                    if den.abs() < 1e-300 {
                        continue;
                    }
                    let s = a.cross(e) / den;
                    let t = a.cross(d) / -den;
                    if s > 0.0 && (-1e-12..=1.0 + 1e-12).contains(&t) {
                        best = best.min(s);
                    }
                }
                best
            }
        }
    }

    /// Reflection through the origin.
    pub fn reflected(&self) -> ConvexBody {
        let neg = AffineMap2 { linear: [[-1.0, 0.0], [0.0, -1.0]], shift: Point2::ZERO, det: 1.0 };
        self.transform(&neg).expect("reflection is invertible")
    }

    /// Hausdorff asymmetry ||K - (-K)||; zero for origin-symmetric bodies.
    pub fn asymmetry(&self) -> f64 {
        (0..COMPARE_GRID)
            .map(|j| {
                let th = j as f64 * TAU / COMPARE_GRID as f64;
                (self.support(th) - self.support(th + std::f64::consts::PI)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Intersection of the halfplanes { <u(θ_i), p> <= offsets[i] } for N
/// uniformly spaced directions θ_i = base + 2πi/N.
pub fn directional_intersection(
    base: f64,
    offsets: &[f64],
    scale: f64,
) -> Result<Polygon> {
    let n = offsets.len();
    let cons: Vec<Constraint> = (0..n)
        .map(|i| Constraint::new(Point2::unit(base + i as f64 * TAU / n as f64), offsets[i]))
        .collect();
    let verts = sorted_halfplane_intersection(&cons, scale)?;
    Polygon::new(verts).map_err(|_| Error::EmptyBody("directional intersection degenerate".into()))
}

/// Largest r with B(c, r) ⊆ K for a fixed center (used by tests).
pub fn inscribed_radius_at(body: &ConvexBody, c: Point2) -> f64 {
    let probe = |r: f64| -> bool {
        (0..COMPARE_GRID).all(|j| {
            let th = j as f64 * TAU / COMPARE_GRID as f64;
            Point2::unit(th).dot(c) + r <= body.support(th) + 1e-13 * body.scale()
        })
    };
    if !probe(0.0) {
        return 0.0;
    }
    let r = solve::bisect(
        |r| if probe(r) { -1.0 } else { 1.0 },
        0.0,
        2.0 * body.scale(),
        1e-10,
        0.5,
    );
    match r {
        Ok(root) => root.x,
        Err(_) => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn disk(r: f64) -> ConvexBody {
        ConvexBody::Smooth(SmoothBody::disk(r, 2048))
    }

    fn square() -> ConvexBody {
        ConvexBody::Poly(Polygon::square(1.0))
    }

    #[test]
    fn areas() {
        assert_relative_eq!(square().area(), 4.0);
        assert_relative_eq!(disk(1.0).area(), PI, epsilon = 1e-10);
    }

    #[test]
    fn support_examples() {
        assert_relative_eq!(square().support(0.0), 1.0);
        assert_relative_eq!(square().support(FRAC_PI_4), SQRT_2, epsilon = 1e-14);
        assert_relative_eq!(disk(1.0).support(2.5), 1.0, epsilon = 1e-13);
    }

    #[test]
    fn clip_tangent_halfplane_keeps_disk() {
        // flattening at 16384 keeps the residual well under 1e-6
        let d = ConvexBody::Smooth(SmoothBody::disk(1.0, 16384));
        let kept = d.clip(&Halfplane::new(0.0, 1.0)).unwrap();
        assert!((kept.area() - PI).abs() < 1e-6, "area {}", kept.area());
    }

    #[test]
    fn clip_disk_cap() {
        let d = disk(1.0);
        // frozen root of the segment equation for cap area 0.1
        let a = 0.856_758_156_310_901_3;
        let kept = d.clip(&Halfplane::new(0.0, a)).unwrap();
        assert!((kept.area() - (PI - 0.1)).abs() < 1e-4);
        let rect = square().clip(&Halfplane::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(rect.area(), 2.0, epsilon = 1e-13);
    }

    #[test]
    fn cut_area_matches_clip_complement() {
        let d = disk(1.0);
        assert_relative_eq!(d.cut_area(1.0, 0.0), PI / 2.0, epsilon = 1e-10);
        assert_relative_eq!(d.cut_area(0.0, 0.856_758_156_310_901_3), 0.1, epsilon = 1e-10);
        let off = d.cut_offset_for_area(0.0, PI / 2.0).unwrap();
        assert!(off.abs() < 1e-10);
    }

    #[test]
    fn overlap_square_translates() {
        let sq = square();
        assert_relative_eq!(sq.overlap_area(Point2::ZERO), 4.0, epsilon = 1e-12);
        assert_relative_eq!(
            sq.overlap_area(Point2::new(0.5, -1.0)),
            1.5 * 1.0,
            epsilon = 1e-12
        );
        assert_eq!(sq.overlap_area(Point2::new(2.5, 0.0)), 0.0);
    }

    #[test]
    fn overlap_disk_lens() {
        let d = disk(1.0);
        assert_relative_eq!(d.overlap_area(Point2::ZERO), PI, epsilon = 1e-8);
        // lens of two unit disks at distance 1
        let lens = 2.0 * PI / 3.0 - 3.0f64.sqrt() / 2.0;
        assert!((d.overlap_area(Point2::new(1.0, 0.0)) - lens).abs() < 1e-5);
        assert_eq!(d.overlap_area(Point2::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn transform_examples() {
        let d = disk(1.0);
        let id = AffineMap2::identity();
        assert!(d.transform(&id).unwrap().hausdorff_distance(&d) < 1e-12);
        let a = AffineMap2::scaling(2.0, 0.5).unwrap();
        assert_relative_eq!(d.transform(&a).unwrap().area(), PI, epsilon = 1e-8);
    }

    #[test]
    fn boundary_samples_weights() {
        let d = ConvexBody::Smooth(SmoothBody::disk(1.0, 2048));
        let s: f64 = d.boundary_samples(1024).iter().map(|b| b.arc_weight).sum();
        assert_relative_eq!(s, TAU, epsilon = 1e-8);
        let sq: f64 = square().boundary_samples(64).iter().map(|b| b.arc_weight).sum();
        assert_relative_eq!(sq, 8.0, epsilon = 1e-12);
        // outward normals
        for b in square().boundary_samples(64) {
            assert!(b.normal.dot(b.point) > 0.0);
            assert_relative_eq!(b.normal.norm(), 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn rolling_radius_disk_and_square() {
        let d = disk(1.0);
        let s = BoundarySample {
            point: Point2::new(1.0, 0.0),
            normal: Point2::new(1.0, 0.0),
            arc_weight: 1.0,
        };
        assert!((d.rolling_radius(&s) - 1.0).abs() < 1e-8);

        let sq = square();
        let mid = BoundarySample {
            point: Point2::new(1.0, 0.0),
            normal: Point2::new(1.0, 0.0),
            arc_weight: 1.0,
        };
        assert!((sq.rolling_radius(&mid) - 1.0).abs() < 1e-8);
        let near_corner = BoundarySample {
            point: Point2::new(1.0, 0.9),
            normal: Point2::new(1.0, 0.0),
            arc_weight: 1.0,
        };
        assert!((sq.rolling_radius(&near_corner) - 0.1).abs() < 1e-6);
    }

    #[test]
    fn hausdorff_examples() {
        let d = disk(1.0);
        assert_eq!(d.hausdorff_distance(&d), 0.0);
        assert_relative_eq!(d.hausdorff_distance(&disk(1.5)), 0.5, epsilon = 1e-12);
        let s1 = square();
        let s2 = ConvexBody::Poly(Polygon::square(2.0));
        assert_relative_eq!(s1.hausdorff_distance(&s2), SQRT_2, epsilon = 1e-4);
    }

    #[test]
    fn ray_exit_square() {
        assert_relative_eq!(square().ray_exit_radius(0.0), 1.0, epsilon = 1e-12);
        assert_relative_eq!(square().ray_exit_radius(FRAC_PI_4), SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn symmetry_detection() {
        assert!(square().asymmetry() < 1e-12);
        let tri = ConvexBody::Poly(
            Polygon::new(vec![
                Point2::new(-1.0, -1.0),
                Point2::new(2.0, -1.0),
                Point2::new(-1.0, 2.0),
            ])
            .unwrap(),
        );
        assert!(tri.asymmetry() > 0.5);
    }
}
