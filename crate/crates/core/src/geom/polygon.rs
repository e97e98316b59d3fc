//! Convex polygons and their exact primitives.

use super::halfplane::{clip_loop, Constraint, Halfplane};
use super::point::{AffineMap2, Point2};
use crate::error::{Error, Result};
use crate::solve;
use serde::{Deserialize, Serialize};

/// A convex polygon with counterclockwise vertices.
///
/// Construction removes collinear points (cross products within 1e-12 of
/// zero relative to the polygon scale) and rejects reflex turns and
/// non-positive areas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBody("polygon: non-finite vertex coordinate".into()));
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidBody("polygon: fewer than 3 vertices".into()));
        }
        let scale = vertices
            .iter()
            .map(|v| v.x.abs().max(v.y.abs()))
            .fold(0.0f64, f64::max)
            .max(1e-300);
        let tol = 1e-12 * scale * scale;

        // drop collinear/duplicate points, keep strictly convex turns
        let n = vertices.len();
        let mut kept: Vec<Point2> = Vec::with_capacity(n);
        for i in 0..n {
            let prev = if kept.is_empty() { vertices[(i + n - 1) % n] } else { kept[kept.len() - 1] };
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let turn = (cur - prev).cross(next - cur);
            if turn < -tol {
                return Err(Error::InvalidBody("polygon: reflex turn (not convex ccw)".into()));
            }
            if turn > tol {
                kept.push(cur);
            }
        }
        if kept.len() < 3 {
            return Err(Error::InvalidBody("polygon: degenerate after collinear removal".into()));
        }
        // re-check the wrap-around turns on the kept loop
        let m = kept.len();
        for i in 0..m {
            let turn =
                (kept[i] - kept[(i + m - 1) % m]).cross(kept[(i + 1) % m] - kept[i]);
            if turn < -tol {
                return Err(Error::InvalidBody("polygon: reflex turn (not convex ccw)".into()));
            }
        }
        let poly = Polygon { vertices: kept };
        if poly.area() <= 0.0 {
            return Err(Error::InvalidBody("polygon: signed area must be positive".into()));
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Shoelace area (exact for the stored loop).
    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        let mut s = 0.0;
        for i in 0..n {
            s += v[i].cross(v[(i + 1) % n]);
        }
        0.5 * s
    }

    pub fn perimeter(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| (v[(i + 1) % n] - v[i]).norm()).sum()
    }

    pub fn centroid(&self) -> Point2 {
        let v = &self.vertices;
        let n = v.len();
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        for i in 0..n {
            let c = v[i].cross(v[(i + 1) % n]);
            a += c;
            cx += (v[i].x + v[(i + 1) % n].x) * c;
            cy += (v[i].y + v[(i + 1) % n].y) * c;
        }
        Point2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    /// Support function: max over vertices of <u(theta), v>.
    pub fn support(&self, theta: f64) -> f64 {
        let u = Point2::unit(theta);
        self.vertices.iter().map(|v| u.dot(*v)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Vertex attaining the support in direction `theta`.
    pub fn support_point(&self, theta: f64) -> Point2 {
        let u = Point2::unit(theta);
        *self
            .vertices
            .iter()
            .max_by(|a, b| u.dot(**a).partial_cmp(&u.dot(**b)).unwrap())
            .unwrap()
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        let v = &self.vertices;
        let n = v.len();
        (0..n).all(|i| (v[(i + 1) % n] - v[i]).cross(p - v[i]) >= -tol)
    }

    /// Outward unit edge normals and offsets: the polygon is
    /// { p : <n_i, p> <= c_i for all edges i }.
    pub fn edge_constraints(&self) -> Vec<Constraint> {
        let v = &self.vertices;
        let n = v.len();
        (0..n)
            .map(|i| {
                let e = v[(i + 1) % n] - v[i];
                let normal = Point2::new(e.y, -e.x).normalized();
                Constraint::new(normal, normal.dot(v[i]))
            })
            .collect()
    }

    /// Clip by a halfplane. Errors with `EmptyIntersection` when the
    /// result has no area.
    pub fn clip(&self, h: &Halfplane) -> Result<Polygon> {
        let scale = self.scale();
        let c = Constraint::new(h.normal(), h.offset);
        let out = clip_loop(&self.vertices, &c, 1e-12 * scale);
        if out.len() < 3 {
            return Err(Error::EmptyIntersection("clip left fewer than 3 vertices".into()));
        }
        Polygon::new(out).map_err(|_| Error::EmptyIntersection("clip result degenerate".into()))
    }

    /// Area of { x in K : <u(theta), x> >= a }, exact.
    pub fn cut_area(&self, theta: f64, a: f64) -> f64 {
        let u = Point2::unit(theta);
        let v = &self.vertices;
        let n = v.len();
        let mut kept: Vec<Point2> = Vec::with_capacity(n + 2);
        let mut prev = v[n - 1];
        let mut prev_e = u.dot(prev) - a;
        for &cur in v {
            let cur_e = u.dot(cur) - a;
            if cur_e >= 0.0 {
                if prev_e < 0.0 {
                    let t = prev_e / (prev_e - cur_e);
                    kept.push(prev + (cur - prev) * t);
                }
                kept.push(cur);
            } else if prev_e >= 0.0 {
                let t = prev_e / (prev_e - cur_e);
                kept.push(prev + (cur - prev) * t);
            }
            prev = cur;
            prev_e = cur_e;
        }
        let m = kept.len();
        if m < 3 {
            return 0.0;
        }
        let mut area2 = 0.0;
        for i in 0..m {
            area2 += kept[i].cross(kept[(i + 1) % m]);
        }
        (0.5 * area2).max(0.0)
    }

    /// The offset `a` with `cut_area(theta, a) = t`, by bisection to an
    /// absolute area tolerance of 1e-12 * |K|.
    pub fn cut_offset_for_area(&self, theta: f64, t: f64) -> Result<f64> {
        let total = self.area();
        if !(t > 0.0 && t < total) {
            return Err(Error::DomainError(format!(
                "cut area t = {t:e} outside (0, |K| = {total:e})"
            )));
        }
        let hi = self.support(theta);
        let lo = -self.support(theta + std::f64::consts::PI);
        let root = solve::bisect(
            |a| self.cut_area(theta, a) - t,
            lo,
            hi,
            0.0,
            1e-12 * total,
        )?;
        Ok(root.x)
    }

    /// Area of the polar body (K - x)^0, exact.
    ///
    /// The polar of a convex polygon about an interior point is the convex
    /// hull of the edge normals scaled by inverse slack; its shoelace area
    /// evaluates the polar-area integral exactly.
    pub fn polar_area_about(&self, x: Point2) -> Result<f64> {
        let cons = self.edge_constraints();
        let mut dual: Vec<Point2> = Vec::with_capacity(cons.len());
        for c in &cons {
            let slack = c.offset - c.normal.dot(x);
            if slack <= 0.0 {
                return Err(Error::OutsideBody(format!(
                    "polar undefined: support slack {slack:e} at normal angle {:.6}",
                    c.normal.angle()
                )));
            }
            dual.push(c.normal.scale(1.0 / slack));
        }
        let n = dual.len();
        let mut s = 0.0;
        for i in 0..n {
            s += dual[i].cross(dual[(i + 1) % n]);
        }
        Ok(0.5 * s)
    }

    /// Indices of edges visible from an exterior point.
    fn visible_edges(&self, x: Point2) -> Vec<usize> {
        let v = &self.vertices;
        let n = v.len();
        (0..n)
            .filter(|&i| (v[(i + 1) % n] - v[i]).cross(x - v[i]) < 0.0)
            .collect()
    }

    /// Area added to the convex hull when `x` is joined to the polygon:
    /// |co[x, K]| - |K|. Zero when `x` is inside.
    pub fn illuminated_area(&self, x: Point2) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        let mut added = 0.0;
        for i in self.visible_edges(x) {
            added += 0.5 * (v[(i + 1) % n] - x).cross(v[i] - x).abs();
        }
        added
    }

    pub fn transform(&self, map: &AffineMap2) -> Result<Polygon> {
        let mut verts: Vec<Point2> = self.vertices.iter().map(|&p| map.apply(p)).collect();
        if map.det < 0.0 {
            verts.reverse();
        }
        Polygon::new(verts)
    }

    /// Largest coordinate magnitude, used for tolerance scaling.
    pub fn scale(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.x.abs().max(v.y.abs()))
            .fold(0.0f64, f64::max)
    }

    /// Exterior turn angle at each vertex.
    pub fn turn_angles(&self) -> Vec<f64> {
        let v = &self.vertices;
        let n = v.len();
        (0..n)
            .map(|i| {
                let e0 = v[i] - v[(i + n - 1) % n];
                let e1 = v[(i + 1) % n] - v[i];
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .collect()
    }

    /// Shoelace area plus the sliver estimate between each chord and the
    /// smooth arc it approximates. For a polygon whose vertices lie on a
    /// convex curve, the chord misses `ℓ²(ψ_i + ψ_j)/24` per edge, where
    /// ψ are the adjacent exterior turn angles.
    pub fn area_inscribed_corrected(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        let psi = self.turn_angles();
        let mut corr = 0.0;
        for i in 0..n {
            let l2 = (v[(i + 1) % n] - v[i]).norm_sq();
            corr += l2 * (psi[i] + psi[(i + 1) % n]) / 24.0;
        }
        self.area() + corr
    }

    /// Shoelace area minus the sliver estimate between each corner and the
    /// smooth arc its two tangent edges support: `ℓ_i ℓ_j ψ / 24` per
    /// corner with adjacent edge lengths ℓ and turn angle ψ.
    pub fn area_tangent_corrected(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        let psi = self.turn_angles();
        let mut corr = 0.0;
        for i in 0..n {
            let l_in = (v[i] - v[(i + n - 1) % n]).norm();
            let l_out = (v[(i + 1) % n] - v[i]).norm();
            corr += l_in * l_out * psi[i] / 24.0;
        }
        self.area() - corr
    }

    /// Axis-aligned square [-h, h]^2.
    pub fn square(h: f64) -> Polygon {
        Polygon::new(vec![
            Point2::new(-h, -h),
            Point2::new(h, -h),
            Point2::new(h, h),
            Point2::new(-h, h),
        ])
        .unwrap()
    }

    /// Regular n-gon inscribed in a circle of radius r.
    pub fn regular(n: usize, r: f64) -> Polygon {
        Polygon::new(
            (0..n)
                .map(|k| Point2::unit(k as f64 * std::f64::consts::TAU / n as f64).scale(r))
                .collect(),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2, TAU};

    fn unit_square() -> Polygon {
        Polygon::square(1.0)
    }

    #[test]
    fn shoelace_square() {
        assert_relative_eq!(unit_square().area(), 4.0);
        assert_relative_eq!(unit_square().perimeter(), 8.0);
    }

    #[test]
    fn collinear_points_removed() {
        let p = Polygon::new(vec![
            Point2::new(-1.0, -1.0),
            Point2::new(0.0, -1.0),
            Point2::new(1.0, -1.0),
            Point2::new(1.0, 1.0),
            Point2::new(-1.0, 1.0),
        ])
        .unwrap();
        assert_eq!(p.len(), 4);
        assert_relative_eq!(p.area(), 4.0);
    }

    #[test]
    fn reflex_rejected() {
        let r = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.5),
            Point2::new(2.0, 1.0),
            Point2::new(0.0, 1.0),
        ]);
        assert!(matches!(r, Err(Error::InvalidBody(_))));
    }

    #[test]
    fn clockwise_rejected() {
        let r = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 0.0),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn support_square() {
        let sq = unit_square();
        assert_relative_eq!(sq.support(0.0), 1.0);
        assert_relative_eq!(sq.support(FRAC_PI_4), SQRT_2, epsilon = 1e-14);
        // supporting line always touches the vertex set
        for k in 0..64 {
            let th = k as f64 * TAU / 64.0;
            let p = sq.support_point(th);
            assert!((Point2::unit(th).dot(p) - sq.support(th)).abs() < 1e-14);
        }
    }

    #[test]
    fn clip_square_in_half() {
        let sq = unit_square();
        let clipped = sq.clip(&Halfplane::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(clipped.area(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn clip_away_everything_errors() {
        let sq = unit_square();
        assert!(matches!(
            sq.clip(&Halfplane::new(0.0, -1.5)),
            Err(Error::EmptyIntersection(_))
        ));
    }

    #[test]
    fn cut_area_square() {
        let sq = unit_square();
        // strip x >= 0.5 has width 0.5, height 2
        assert_relative_eq!(sq.cut_area(0.0, 0.5), 1.0, epsilon = 1e-14);
        assert_relative_eq!(sq.cut_area(0.0, 1.0), 0.0, epsilon = 1e-14);
        assert_relative_eq!(sq.cut_area(0.0, -1.5), 4.0, epsilon = 1e-14);
        // clip + cut partition the area exactly
        let h = Halfplane::new(0.3, 0.2);
        let kept = sq.clip(&h).unwrap().area();
        assert_relative_eq!(kept + sq.cut_area(0.3, 0.2), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn cut_offset_square() {
        let sq = unit_square();
        let a = sq.cut_offset_for_area(0.0, 1.0).unwrap();
        assert_relative_eq!(a, 0.5, epsilon = 1e-12);
        assert!(sq.cut_offset_for_area(0.0, 5.0).is_err());
    }

    #[test]
    fn polar_of_square_is_diamond() {
        let sq = unit_square();
        assert_relative_eq!(sq.polar_area_about(Point2::ZERO).unwrap(), 2.0, epsilon = 1e-14);
        assert!(sq.polar_area_about(Point2::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn illuminated_square_triangle() {
        let sq = unit_square();
        assert_relative_eq!(sq.illuminated_area(Point2::new(2.0, 0.0)), 1.0, epsilon = 1e-14);
        assert_eq!(sq.illuminated_area(Point2::new(0.3, -0.2)), 0.0);
    }

    #[test]
    fn transform_scales_area_by_det() {
        let sq = unit_square();
        let a = AffineMap2::scaling(3.0, 3.0).unwrap();
        assert_relative_eq!(sq.transform(&a).unwrap().area(), 36.0, epsilon = 1e-12);
        // reflections re-orient
        let r = AffineMap2::scaling(-1.0, 1.0).unwrap();
        assert_relative_eq!(sq.transform(&r).unwrap().area(), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn corrected_areas_recover_circle() {
        // vertices on the unit circle: inscribed correction recovers pi
        let n = 64;
        let ins = Polygon::regular(n, 1.0);
        let err_raw = (ins.area() - PI).abs();
        let err_corr = (ins.area_inscribed_corrected() - PI).abs();
        assert!(err_corr < err_raw * 1e-2, "corr {err_corr:e} raw {err_raw:e}");

        // tangent polygon: edges touch the unit circle
        let r = 1.0 / (PI / n as f64).cos();
        let tang = Polygon::new(
            (0..n)
                .map(|k| Point2::unit((k as f64 + 0.5) * TAU / n as f64).scale(r))
                .collect(),
        )
        .unwrap();
        let err_raw = (tang.area() - PI).abs();
        let err_corr = (tang.area_tangent_corrected() - PI).abs();
        assert!(err_corr < err_raw * 1e-2, "corr {err_corr:e} raw {err_raw:e}");
    }

    #[test]
    fn centroid_of_offset_square() {
        let p = Polygon::new(vec![
            Point2::new(1.0, 1.0),
            Point2::new(3.0, 1.0),
            Point2::new(3.0, 2.0),
            Point2::new(1.0, 2.0),
        ])
        .unwrap();
        let c = p.centroid();
        assert_relative_eq!(c.x, 2.0, epsilon = 1e-14);
        assert_relative_eq!(c.y, 1.5, epsilon = 1e-14);
    }

    #[test]
    fn turn_angles_sum_to_tau() {
        let p = Polygon::regular(17, 2.0);
        let s: f64 = p.turn_angles().iter().sum();
        assert_relative_eq!(s, TAU, epsilon = 1e-12);
        let sq: f64 = unit_square().turn_angles().iter().sum();
        assert_relative_eq!(sq, 4.0 * FRAC_PI_2, epsilon = 1e-12);
    }
}
