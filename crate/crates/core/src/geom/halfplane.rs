//! Halfplanes and intersections of many halfplanes.

use super::point::Point2;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::f64::consts::TAU;

/// The halfplane { p : <u(normal_angle), p> <= offset }.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Halfplane {
    /// Outward normal angle, canonicalized to [0, 2π).
    pub normal_angle: f64,
    pub offset: f64,
}

impl Halfplane {
    pub fn new(normal_angle: f64, offset: f64) -> Self {
        let mut a = normal_angle % TAU;
        if a < 0.0 {
            a += TAU;
        }
        Halfplane { normal_angle: a, offset }
    }

    pub fn normal(&self) -> Point2 {
        Point2::unit(self.normal_angle)
    }

    /// Signed violation of `p`: positive outside the halfplane.
    pub fn excess(&self, p: Point2) -> f64 {
        self.normal().dot(p) - self.offset
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.excess(p) <= tol
    }
}

/// A constraint <u, p> <= c with the normal stored as a vector.
#[derive(Debug, Clone, Copy)]
pub struct Constraint {
    pub normal: Point2,
    pub offset: f64,
}

impl Constraint {
    pub fn new(normal: Point2, offset: f64) -> Self {
        Constraint { normal, offset }
    }

    fn excess(&self, p: Point2) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Intersection point of two constraint boundary lines.
fn line_cross(a: &Constraint, b: &Constraint) -> Option<Point2> {
    let det = a.normal.cross(b.normal);
    if det.abs() < 1e-14 {
        return None;
    }
    Some(Point2::new(
        (a.offset * b.normal.y - b.offset * a.normal.y) / det,
        (b.offset * a.normal.x - a.offset * b.normal.x) / det,
    ))
}

/// Intersection of halfplanes whose normals are sorted by angle over the
/// full circle, as a counterclockwise vertex loop.
///
/// Deque sweep: each incoming constraint pops trailing and leading
/// constraints whose mutual intersection point it excludes. Consecutive
/// parallel constraints must be pre-merged to the tighter offset by the
/// caller (or they are merged here when angles coincide exactly).
///
/// `scale` sets the violation tolerance; it should be of the order of the
/// diameter of the expected region.
pub fn sorted_halfplane_intersection(
    constraints: &[Constraint],
    scale: f64,
) -> Result<Vec<Point2>> {
    if constraints.len() < 3 {
        return Err(Error::EmptyBody("fewer than 3 halfplanes".into()));
    }
    let tol = 1e-12 * scale.max(1.0);
    let mut dq: VecDeque<Constraint> = VecDeque::with_capacity(constraints.len());

    let violates = |h: &Constraint, a: &Constraint, b: &Constraint| -> bool {
        match line_cross(a, b) {
            Some(p) => h.excess(p) > tol,
            // parallel neighbours: treat as violated so the looser is dropped
            None => true,
        }
    };

    for &h in constraints {
        if let Some(&back) = dq.back() {
            // same normal direction: keep the tighter offset
            if back.normal.cross(h.normal).abs() < 1e-15 && back.normal.dot(h.normal) > 0.0 {
                if h.offset < back.offset {
                    dq.pop_back();
                } else {
                    continue;
                }
            }
        }
        while dq.len() >= 2 && violates(&h, &dq[dq.len() - 2], &dq[dq.len() - 1]) {
            dq.pop_back();
        }
        while dq.len() >= 2 && violates(&h, &dq[0], &dq[1]) {
            dq.pop_front();
        }
        dq.push_back(h);
    }
    loop {
        let n = dq.len();
        if n < 3 {
            return Err(Error::EmptyBody("halfplane intersection collapsed".into()));
        }
        if violates(&dq[0], &dq[n - 2], &dq[n - 1]) {
            dq.pop_back();
        } else if violates(&dq[n - 1], &dq[0], &dq[1]) {
            dq.pop_front();
        } else {
            break;
        }
    }

    let n = dq.len();
    let mut verts = Vec::with_capacity(n);
    for i in 0..n {
        let a = &dq[i];
        let b = &dq[(i + 1) % n];
        match line_cross(a, b) {
            Some(p) => verts.push(p),
            None => return Err(Error::EmptyBody("degenerate halfplane pair".into())),
        }
    }
    // collapsed or inverted loops mean the true intersection is empty
    let mut area2 = 0.0;
    for i in 0..n {
        area2 += verts[i].cross(verts[(i + 1) % n]);
    }
    if area2 <= tol * tol {
        return Err(Error::EmptyBody("zero-area halfplane intersection".into()));
    }
    Ok(verts)
}

/// Clip a convex counterclockwise loop by one halfplane constraint,
/// Sutherland–Hodgman style. Points within `tol` of the boundary line are
/// treated as on it. Returns the (possibly empty) clipped loop.
pub fn clip_loop(verts: &[Point2], c: &Constraint, tol: f64) -> Vec<Point2> {
    let n = verts.len();
    let mut out = Vec::with_capacity(n + 1);
    if n == 0 {
        return out;
    }
    let mut prev = verts[n - 1];
    let mut prev_e = c.excess(prev);
    for &cur in verts {
        let cur_e = c.excess(cur);
        let prev_in = prev_e <= tol;
        let cur_in = cur_e <= tol;
        if cur_in {
            if !prev_in {
                let t = prev_e / (prev_e - cur_e);
                out.push(prev + (cur - prev) * t);
            }
            out.push(cur);
        } else if prev_in {
            let t = prev_e / (prev_e - cur_e);
            out.push(prev + (cur - prev) * t);
        }
        prev = cur;
        prev_e = cur_e;
    }
    out
}

/// Reference halfplane intersection: sequential clipping of a large box.
/// O(n * output); used as an independent oracle for the deque sweep and
/// for small direction counts.
pub fn sequential_halfplane_intersection(
    constraints: &[Constraint],
    bound: f64,
) -> Result<Vec<Point2>> {
    let b = bound.abs().max(1.0);
    let mut verts = vec![
        Point2::new(-b, -b),
        Point2::new(b, -b),
        Point2::new(b, b),
        Point2::new(-b, b),
    ];
    let tol = 1e-12 * b;
    for c in constraints {
        verts = clip_loop(&verts, c, tol);
        if verts.len() < 3 {
            return Err(Error::EmptyBody("sequential halfplane intersection empty".into()));
        }
    }
    Ok(verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_area(verts: &[Point2]) -> f64 {
        let n = verts.len();
        let mut s = 0.0;
        for i in 0..n {
            s += verts[i].cross(verts[(i + 1) % n]);
        }
        0.5 * s
    }

    fn square_constraints() -> Vec<Constraint> {
        (0..4)
            .map(|k| Constraint::new(Point2::unit(k as f64 * TAU / 4.0), 1.0))
            .collect()
    }

    #[test]
    fn unit_square_from_four_halfplanes() {
        let v = sorted_halfplane_intersection(&square_constraints(), 2.0).unwrap();
        assert_eq!(v.len(), 4);
        assert!((loop_area(&v) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn regular_polygon_area_matches_sequential() {
        let n = 257;
        let cons: Vec<Constraint> = (0..n)
            .map(|k| Constraint::new(Point2::unit(k as f64 * TAU / n as f64), 1.0))
            .collect();
        let fast = sorted_halfplane_intersection(&cons, 2.0).unwrap();
        let slow = sequential_halfplane_intersection(&cons, 4.0).unwrap();
        assert!((loop_area(&fast) - loop_area(&slow)).abs() < 1e-10);
    }

    #[test]
    fn redundant_constraints_dropped() {
        let mut cons = square_constraints();
        // insert a loose diagonal constraint that never binds
        cons.insert(1, Constraint::new(Point2::unit(TAU / 8.0), 10.0));
        let v = sorted_halfplane_intersection(&cons, 2.0).unwrap();
        assert!((loop_area(&v) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn empty_intersection_detected() {
        // x <= -1 and -x <= -1 cannot both hold
        let cons = vec![
            Constraint::new(Point2::new(1.0, 0.0), -1.0),
            Constraint::new(Point2::unit(TAU / 4.0), 1.0),
            Constraint::new(Point2::new(-1.0, 0.0), -1.0),
            Constraint::new(Point2::unit(3.0 * TAU / 4.0), 1.0),
        ];
        assert!(sorted_halfplane_intersection(&cons, 2.0).is_err());
    }

    #[test]
    fn parallel_constraints_keep_tighter() {
        let mut cons = square_constraints();
        cons.insert(1, Constraint::new(Point2::new(1.0, 0.0), 0.25));
        let v = sorted_halfplane_intersection(&cons, 2.0).unwrap();
        assert!((loop_area(&v) - 2.5).abs() < 1e-12);
    }
}
