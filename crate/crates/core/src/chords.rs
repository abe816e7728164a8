//! Midpoint cells and the chord-counting function `N(x)`.
//!
//! A chord joining edge `i` to edge `j` has its midpoint in the cell
//! `M(i+½, j+½) = ½(e(i+½) + e(j+½))`. Chords with endpoints on the same pair
//! of edges are identified, so `N(x)` counts chord families rather than chords.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::evolute::{area_evolute, EvoluteError};
use crate::kernel::{
    boxes_overlap, convex_contains, cross, half, int, orient, padded_box, rat, Point, Rational,
    Segment, SegmentHit, Vector,
};
use crate::polygon::CposPolygon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("point is not strictly inside the polygon")]
    Outside,
    #[error(transparent)]
    Evolute(#[from] EvoluteError),
}

impl ChordError {
    pub fn kind(&self) -> &'static str {
        match self {
            ChordError::Outside => "Outside",
            ChordError::Evolute(e) => e.kind(),
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            ChordError::Outside => None,
            ChordError::Evolute(e) => e.index(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MidpointCell {
    pub i: usize,
    pub j: usize,
    /// `½(P_i+P_j), ½(P_{i+1}+P_j), ½(P_{i+1}+P_{j+1}), ½(P_i+P_{j+1})`.
    pub vertices: [Point; 4],
    pub degenerate: bool,
}

impl MidpointCell {
    /// Boundary pieces: four sides, or the single segment of a degenerate cell.
    pub fn boundary(&self) -> Vec<Segment> {
        let v = &self.vertices;
        if self.degenerate {
            let mut pts = v.to_vec();
            pts.sort();
            return vec![Segment::new(pts[0].clone(), pts[3].clone())];
        }
        (0..4)
            .map(|k| Segment::new(v[k].clone(), v[(k + 1) % 4].clone()))
            .collect()
    }
}

/// All `n(2n-1)` cells for unordered pairs `i < j` of edge labels.
pub fn midpoint_cells(p: &CposPolygon) -> Vec<MidpointCell> {
    let m = p.len() as i64;
    let n = p.n() as i64;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let mid = |a: i64, b: i64| Point::midpoint(p.vertex(a), p.vertex(b));
            out.push(MidpointCell {
                i: i as usize,
                j: j as usize,
                vertices: [mid(i, j), mid(i + 1, j), mid(i + 1, j + 1), mid(i, j + 1)],
                degenerate: j - i == n,
            });
        }
    }
    out
}

fn reflect_segment(s: &Segment, x: &Point) -> Segment {
    Segment::new(s.a.reflect(x), s.b.reflect(x))
}

/// Chord endpoints on edge `i` whose reflection through `x` lands on edge `j`.
fn chord_family(p: &CposPolygon, i: i64, j: i64, x: &Point) -> Option<Segment> {
    let ei = Segment::new(p.vertex(i).clone(), p.vertex(i + 1).clone());
    let ej = Segment::new(p.vertex(j).clone(), p.vertex(j + 1).clone());
    match ei.intersect(&reflect_segment(&ej, x))? {
        SegmentHit::Point(y) => Some(Segment::new(y.clone(), y)),
        SegmentHit::Overlap(s) => Some(s),
    }
}

/// Every chord family with midpoint `x`, one representative per edge pair.
pub fn chord_families(p: &CposPolygon, x: &Point) -> Vec<Segment> {
    let m = p.len() as i64;
    let edge_boxes: Vec<[f64; 4]> = (1..=m)
        .map(|i| padded_box(p.vertex(i), p.vertex(i + 1)))
        .collect();
    let xb = padded_box(x, x);
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            // the family exists only when x lies in the cell (edge_i + edge_j) / 2
            let (a, b) = (&edge_boxes[i as usize - 1], &edge_boxes[j as usize - 1]);
            let cell = [
                (a[0] + b[0]) / 2.0,
                (a[1] + b[1]) / 2.0,
                (a[2] + b[2]) / 2.0,
                (a[3] + b[3]) / 2.0,
            ];
            if !boxes_overlap(&cell, &xb) {
                continue;
            }
            if let Some(y) = chord_family(p, i, j, x) {
                out.push(y);
            }
        }
    }
    out
}

fn family_within(y: &Segment, z: &Segment, x: &Point) -> bool {
    let inside = |s: &Segment| s.contains(&y.a) && s.contains(&y.b);
    inside(z) || inside(&reflect_segment(z, x))
}

/// `N(x)`: the number of maximal chord families with midpoint `x`.
///
/// Where cells meet, a chord through a polygon vertex belongs to the families of
/// both incident edges; families contained in another one are merged into it.
pub fn count_midpoint_chords(p: &CposPolygon, x: &Point) -> Result<usize, ChordError> {
    if !convex_contains(p.vertices(), x, true) {
        return Err(ChordError::Outside);
    }
    Ok(count_interior(p, x))
}

fn count_interior(p: &CposPolygon, x: &Point) -> usize {
    let families = chord_families(p, x);
    let mut uniq: Vec<Segment> = Vec::new();
    for y in families {
        if !uniq
            .iter()
            .any(|z| family_within(&y, z, x) && family_within(z, &y, x))
        {
            uniq.push(y);
        }
    }
    uniq.iter()
        .enumerate()
        .filter(|(k, y)| {
            !uniq
                .iter()
                .enumerate()
                .any(|(l, z)| l != *k && family_within(y, z, x))
        })
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpSample {
    pub at: Point,
    pub epsilon: Rational,
    pub inner: usize,
    pub outer: usize,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeJump {
    /// AE edge `M_i M_{i+1}`.
    pub index: usize,
    pub samples: Vec<JumpSample>,
    pub skipped: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpReport {
    pub edges: Vec<EdgeJump>,
}

impl JumpReport {
    pub fn pass(&self) -> bool {
        self.edges.iter().all(|e| e.pass)
    }
}

/// Every cell boundary piece together with the polygon's own edges.
pub fn arrangement_segments(p: &CposPolygon) -> Vec<Segment> {
    let mut segs: Vec<Segment> = midpoint_cells(p)
        .iter()
        .flat_map(|c| c.boundary())
        .collect();
    let m = p.len() as i64;
    segs.extend((1..=m).map(|i| Segment::new(p.vertex(i).clone(), p.vertex(i + 1).clone())));
    segs
}

/// Distance parameter to the nearest arrangement piece along `z + τ·normal`,
/// or `None` when a piece crosses the AE edge at `z` itself.
fn straddle_epsilon(
    segs: &[Segment],
    z: &Point,
    along: &Vector,
    normal: &Vector,
) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for s in segs {
        let d = s.direction();
        if s.is_degenerate() {
            continue;
        }
        let den = cross(normal, &d);
        let w = &s.a - z;
        if den.is_zero() {
            if cross(normal, &w).is_zero() {
                return None;
            }
            continue;
        }
        // z + τ normal = s.a + σ d
        let tau = cross(&w, &d) / &den;
        let sigma = cross(&w, normal) / &den;
        if sigma.is_negative() || sigma > int(1) {
            continue;
        }
        if tau.is_zero() {
            if cross(along, &d).is_zero() {
                continue;
            }
            return None;
        }
        let t = tau.abs();
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    best.map(|b| b * half())
}

/// Straddles each open AE edge at `samples_per_edge` evenly spaced points.
///
/// At each sample `z` the offset `ε` is half the distance (in units of the edge
/// normal) to the nearest other piece of the cell arrangement, so `z ± ε·normal`
/// and `z ± ε/2·normal` share a face. Samples where another piece crosses the
/// AE edge are skipped.
pub fn verify_jump_law(p: &CposPolygon, samples_per_edge: usize) -> Result<JumpReport, ChordError> {
    let ae = area_evolute(p)?;
    if ae.points.len() < 2 {
        return Ok(JumpReport { edges: Vec::new() });
    }
    let segs = arrangement_segments(p);
    let m = ae.points.len();
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let a = &ae.points[k];
        let b = &ae.points[(k + 1) % m];
        let along = b - a;
        let normal = along.perp();
        let mut samples = Vec::new();
        let mut skipped = 0;
        let grid = (samples_per_edge + 1) as i64;
        for slot in 1..grid {
            // nudge off the slot position when another piece crosses there
            let found = (1..=8).find_map(|q: i64| {
                let t = rat(slot * q + q / 2, grid * q);
                let z = Point::lerp(a, b, &t);
                let eps = straddle_epsilon(&segs, &z, &along, &normal);
                if eps.is_none() {
                    skipped += 1;
                }
                eps.map(|e| (z, e))
            });
            let Some((z, eps)) = found else { continue };
            let at = |k: Rational| &z + &(&normal * &k);
            let plus = count_interior(p, &at(eps.clone()));
            let minus = count_interior(p, &at(-eps.clone()));
            let plus_half = count_interior(p, &at(&eps * half()));
            let minus_half = count_interior(p, &at(-(&eps * half())));
            samples.push(JumpSample {
                at: z,
                epsilon: eps,
                inner: plus,
                outer: minus,
                stable: plus == plus_half && minus == minus_half,
            });
        }
        let pass = !samples.is_empty()
            && samples
                .iter()
                .all(|s| s.stable && s.inner.abs_diff(s.outer) == 2);
        edges.push(EdgeJump {
            index: k + 1,
            samples,
            skipped,
            pass,
        });
    }
    Ok(JumpReport { edges })
}

/// Convex pieces of the polygon, each with its `N` value. A piece is cut by the
/// line of a cell boundary segment only where that segment enters its interior.
///
/// Every piece avoids all cell boundaries in its interior, so `N` is constant on it.
pub fn nchords_faces(p: &CposPolygon) -> Vec<(Vec<Point>, usize)> {
    let mut segs: Vec<Segment> = Vec::new();
    for s in arrangement_segments(p) {
        let key = if s.a <= s.b {
            s.clone()
        } else {
            Segment::new(s.b.clone(), s.a.clone())
        };
        if !key.is_degenerate() && !segs.contains(&key) {
            segs.push(key);
        }
    }
    let cells: Vec<[Point; 4]> = midpoint_cells(p)
        .into_iter()
        .filter(|c| !c.degenerate)
        .map(|c| {
            let mut v = c.vertices;
            if orient(&v[0], &v[1], &v[2]).is_negative() {
                v.reverse();
            }
            v
        })
        .collect();
    let boxed = |poly: Vec<Point>| {
        let b = poly.iter().fold(
            [
                f64::INFINITY,
                f64::NEG_INFINITY,
                f64::INFINITY,
                f64::NEG_INFINITY,
            ],
            |acc, q| {
                let x = padded_box(q, q);
                [
                    acc[0].min(x[0]),
                    acc[1].max(x[1]),
                    acc[2].min(x[2]),
                    acc[3].max(x[3]),
                ]
            },
        );
        (poly, b)
    };
    let mut pieces = vec![boxed(p.vertices().to_vec())];
    for s in &segs {
        let dir = s.direction();
        let sb = padded_box(&s.a, &s.b);
        let mut next = Vec::with_capacity(pieces.len());
        for (poly, pb) in pieces {
            if !boxes_overlap(&sb, &pb) || !crosses_interior(&poly, s) {
                next.push((poly, pb));
                continue;
            }
            let (l, r) = split_convex(&poly, &s.a, &dir);
            next.extend(l.into_iter().chain(r).map(boxed));
        }
        pieces = next;
    }
    pieces
        .into_iter()
        .map(|(poly, _)| {
            let c = centroid(&poly);
            let count = cells
                .iter()
                .filter(|v| convex_contains(&v[..], &c, true))
                .count();
            (poly, count)
        })
        .collect()
}

/// Whether `s` meets the interior of the convex polygon `poly` (counter-clockwise).
fn crosses_interior(poly: &[Point], s: &Segment) -> bool {
    let d = s.direction();
    let (mut lo, mut hi) = (Rational::zero(), Rational::from_integer(1.into()));
    let m = poly.len();
    for k in 0..m {
        let (a, b) = (&poly[k], &poly[(k + 1) % m]);
        let e = b - a;
        // inside: cross(e, x - a) >= 0 with x = s.a + τ d
        let c0 = cross(&e, &(&s.a - a));
        let c1 = cross(&e, &d);
        if c1.is_zero() {
            if c0.is_negative() {
                return false;
            }
            continue;
        }
        let tau = -&c0 / &c1;
        if c1.is_positive() {
            if tau > lo {
                lo = tau;
            }
        } else if tau < hi {
            hi = tau;
        }
        if lo >= hi {
            return false;
        }
    }
    let mid = Point::lerp(&s.a, &s.b, &((&lo + &hi) / int(2)));
    convex_contains(poly, &mid, true)
}

fn centroid(poly: &[Point]) -> Point {
    let k = Rational::from_integer((poly.len() as i64).into());
    let sx: Rational = poly.iter().map(|p| p.x.clone()).sum();
    let sy: Rational = poly.iter().map(|p| p.y.clone()).sum();
    Point::new(sx / &k, sy / k)
}

type Piece = Option<Vec<Point>>;

fn split_convex(poly: &[Point], base: &Point, dir: &Vector) -> (Piece, Piece) {
    let side: Vec<Rational> = poly.iter().map(|q| cross(dir, &(q - base))).collect();
    if side.iter().all(|s| !s.is_negative()) || side.iter().all(|s| !s.is_positive()) {
        return (Some(poly.to_vec()), None);
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    let m = poly.len();
    for k in 0..m {
        let (a, b) = (&poly[k], &poly[(k + 1) % m]);
        let (sa, sb) = (&side[k], &side[(k + 1) % m]);
        if !sa.is_negative() {
            left.push(a.clone());
        }
        if !sa.is_positive() {
            right.push(a.clone());
        }
        if (sa.is_positive() && sb.is_negative()) || (sa.is_negative() && sb.is_positive()) {
            let t = sa / (sa - sb);
            let x = Point::lerp(a, b, &t);
            left.push(x.clone());
            right.push(x);
        }
    }
    (Some(left), Some(right))
}
