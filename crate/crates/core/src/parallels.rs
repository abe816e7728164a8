//! Chord areas, rectified area parallels, almost symmetry and the RASS.
//!
//! For an ordered pair of non-parallel edges `(i, j)` let `O` be the apex where
//! their support lines meet. A chord from `y1 = O + 2ξ e(i+½)` to
//! `y2 = O + 2η e(j+½)` has midpoint `O + ξ e(i+½) + η e(j+½)` and cuts off
//! (walking forward from `y1` to `y2`) the area `base + 2[e(j+½), e(i+½)] ξη`,
//! so level sets are hyperbolas `ξη = K` in wedge coordinates. The midpoint
//! cell is the box spanned by the two edges, and each hyperbola arc is replaced
//! by the segment joining its two exact crossings with the box walls.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::equidistant::{ess_trace, polyline_self_intersections, EquidistantError, EssBranch};
use crate::evolute::{area_evolute, mid_parallel, EvoluteError, PolyChain};
use crate::kernel::{
    boxes_overlap, convex_contains, cross, half, int, line_intersect, padded_box, rat, shoelace,
    simplest_between, Line, Point, Rational, Segment, SegmentHit, Vector,
};
use crate::pd::{eval_affine, pd_affine, u, PdError};
use crate::polygon::{validate, wrap, CposPolygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParallelError {
    #[error("level {0} is outside (0, area/2]")]
    LevelOutOfRange(Rational),
    #[error("level curve meets cell ({}, {}) in a non-generic way", .0.0, .0.1)]
    NonGenericTangency((usize, usize)),
    #[error("point is not on edge {0}")]
    PointOffEdge(usize),
    #[error("edges {0} and {1} are parallel or equal")]
    ParallelPair(usize, usize),
    #[error("tracing the rectified parallel broke at cell ({}, {})", .0.0, .0.1)]
    TraceFailed((usize, usize)),
    #[error("no almost-symmetry certificate exists")]
    NoCertificate,
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error(transparent)]
    Equidistant(#[from] EquidistantError),
    #[error(transparent)]
    Evolute(#[from] EvoluteError),
}

impl ParallelError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParallelError::LevelOutOfRange(_) => "LevelOutOfRange",
            ParallelError::NonGenericTangency(_) => "NonGenericTangency",
            ParallelError::PointOffEdge(_) => "PointOffEdge",
            ParallelError::ParallelPair(..) => "ParallelPair",
            ParallelError::TraceFailed(_) => "TraceFailed",
            ParallelError::NoCertificate => "NoCertificate",
            ParallelError::Pd(e) => e.kind(),
            ParallelError::Equidistant(e) => e.kind(),
            ParallelError::Evolute(e) => e.kind(),
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            ParallelError::NonGenericTangency(c) | ParallelError::TraceFailed(c) => Some(c.0),
            ParallelError::PointOffEdge(i) | ParallelError::ParallelPair(i, _) => Some(*i),
            ParallelError::Pd(e) => e.index(),
            ParallelError::Equidistant(e) => e.index(),
            ParallelError::Evolute(e) => e.index(),
            _ => None,
        }
    }
}

fn edge_segment(p: &CposPolygon, i: i64) -> Segment {
    Segment::new(p.vertex(i).clone(), p.vertex(i + 1).clone())
}

/// Area of the region bounded by the chord `y2 -> y1` and the boundary walked
/// forward from `y1` (on edge `i`) to `y2` (on edge `j`).
pub fn chord_cut_area(
    p: &CposPolygon,
    i: i64,
    y1: &Point,
    j: i64,
    y2: &Point,
) -> Result<Rational, ParallelError> {
    if !edge_segment(p, i).contains(y1) {
        return Err(ParallelError::PointOffEdge(wrap(i, p.len())));
    }
    if !edge_segment(p, j).contains(y2) {
        return Err(ParallelError::PointOffEdge(wrap(j, p.len())));
    }
    Ok(cut_area_unchecked(p, i, y1, j, y2))
}

fn cut_area_unchecked(p: &CposPolygon, i: i64, y1: &Point, j: i64, y2: &Point) -> Rational {
    let mut region = vec![y1.clone()];
    if wrap(i, p.len()) != wrap(j, p.len()) {
        region.extend(p.boundary_walk(i + 1, j));
    }
    region.push(y2.clone());
    shoelace(&region)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeFrame {
    pub i: usize,
    pub j: usize,
    pub apex: Point,
    pub axis_u: Vector,
    pub axis_v: Vector,
    /// `P_i = apex + p_i axis_u`.
    pub p_i: Rational,
    /// `P_j = apex + q_j axis_v`.
    pub q_j: Rational,
    /// Area of `apex, P_{i+1}, ..., P_j` (zero for adjacent edges).
    pub base_area: Rational,
    /// `2 [axis_v, axis_u]`: cut area is `base_area + scale ξη`.
    pub scale: Rational,
}

impl WedgeFrame {
    pub fn new(p: &CposPolygon, i: i64, j: i64) -> Result<Self, ParallelError> {
        let m = p.len();
        let (iw, jw) = (wrap(i, m), wrap(j, m));
        let (ei, ej) = (p.edge(i), p.edge(j));
        let li = Line {
            base: p.vertex(i).clone(),
            dir: ei.clone(),
        };
        let lj = Line {
            base: p.vertex(j).clone(),
            dir: ej.clone(),
        };
        let apex = line_intersect(&li, &lj).ok_or(ParallelError::ParallelPair(iw, jw))?;
        let param = |x: &Point, d: &Vector| (x - &apex).dot(d) / d.dot(d);
        let adjacent = wrap(i + 1, m) == jw;
        let base_area = if adjacent {
            Rational::zero()
        } else {
            let mut pts = vec![apex.clone()];
            pts.extend(p.boundary_walk(i + 1, j));
            shoelace(&pts)
        };
        Ok(WedgeFrame {
            i: iw,
            j: jw,
            p_i: param(p.vertex(i), &ei),
            q_j: param(p.vertex(j), &ej),
            scale: int(2) * cross(&ej, &ei),
            apex,
            axis_u: ei,
            axis_v: ej,
            base_area,
        })
    }

    /// Wedge coordinates to the chord midpoint.
    pub fn midpoint(&self, xi: &Rational, eta: &Rational) -> Point {
        &(&self.apex + &(&self.axis_u * xi)) + &(&self.axis_v * eta)
    }

    pub fn chord(&self, xi: &Rational, eta: &Rational) -> (Point, Point) {
        let two = int(2);
        (
            &self.apex + &(&self.axis_u * &(&two * xi)),
            &self.apex + &(&self.axis_v * &(&two * eta)),
        )
    }

    pub fn area_at(&self, xi: &Rational, eta: &Rational) -> Rational {
        &self.base_area + &self.scale * xi * eta
    }
}

/// Cell wall an arc endpoint lies on: `S0`/`S1` fix `ξ` at `P_i`/`P_{i+1}`,
/// `R0`/`R1` fix `η` at `P_j`/`P_{j+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wall {
    S0,
    S1,
    R0,
    R1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcEnd {
    pub wall: Wall,
    /// `(y1, y2)` with `y1` on edge `i` and `y2` on edge `j`.
    pub chord: (Point, Point),
    pub midpoint: Point,
}

/// The segment `L(i+½, j+½, a)` joining the two wall crossings of the level-`a` arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSegment {
    pub cell: (usize, usize),
    pub ends: [ArcEnd; 2],
}

impl LSegment {
    pub fn segment(&self) -> Segment {
        Segment::new(self.ends[0].midpoint.clone(), self.ends[1].midpoint.clone())
    }
}

/// All `L` segments at level `a`, one per ordered cell the level curve crosses.
pub fn level_segments(p: &CposPolygon, a: &Rational) -> Result<Vec<LSegment>, ParallelError> {
    level_segments_in(&Frames::new(p)?, a)
}

/// Wedge frames of every non-parallel edge pair with the range of cut areas over
/// the cell, shared by all levels of one polygon.
pub struct Frames {
    cells: Vec<(WedgeFrame, Rational, Rational)>,
}

impl Frames {
    pub fn new(p: &CposPolygon) -> Result<Self, ParallelError> {
        let m = p.len() as i64;
        let n = p.n() as i64;
        let mut cells = Vec::new();
        for i in 1..=m {
            for j in 1..=m {
                let d = (j - i).rem_euclid(m);
                if d == 0 || d == n {
                    continue;
                }
                let w = WedgeFrame::new(p, i, j)?;
                let xs = [&w.p_i * half(), (&w.p_i + int(1)) * half()];
                let es = [&w.q_j * half(), (&w.q_j + int(1)) * half()];
                let corners: Vec<Rational> = xs
                    .iter()
                    .flat_map(|x| es.iter().map(|e| w.area_at(x, e)))
                    .collect();
                let lo = corners.iter().min().unwrap().clone();
                let hi = corners.iter().max().unwrap().clone();
                cells.push((w, lo, hi));
            }
        }
        Ok(Frames { cells })
    }
}

fn level_segments_in(frames: &Frames, a: &Rational) -> Result<Vec<LSegment>, ParallelError> {
    let mut out = Vec::new();
    for (w, lo, hi) in &frames.cells {
        if a < lo || a > hi {
            continue;
        }
        let k = (a - &w.base_area) / &w.scale;
        let xs = [
            (Wall::S0, &w.p_i * half()),
            (Wall::S1, (&w.p_i + int(1)) * half()),
        ];
        let es = [
            (Wall::R0, &w.q_j * half()),
            (Wall::R1, (&w.q_j + int(1)) * half()),
        ];
        let within = |v: &Rational, pair: &[(Wall, Rational); 2]| {
            let (lo, hi) = if pair[0].1 <= pair[1].1 {
                (&pair[0].1, &pair[1].1)
            } else {
                (&pair[1].1, &pair[0].1)
            };
            lo <= v && v <= hi
        };
        let mut hits: Vec<ArcEnd> = Vec::new();
        let mut push = |wall: Wall, xi: Rational, eta: Rational| {
            let chord = w.chord(&xi, &eta);
            if hits.iter().all(|h| h.chord != chord) {
                hits.push(ArcEnd {
                    wall,
                    midpoint: w.midpoint(&xi, &eta),
                    chord,
                });
            }
        };
        for (wall, xv) in &xs {
            if !xv.is_zero() {
                let eta = &k / xv;
                if within(&eta, &es) {
                    push(*wall, xv.clone(), eta);
                }
            }
        }
        for (wall, ev) in &es {
            if !ev.is_zero() {
                let xi = &k / ev;
                if within(&xi, &xs) {
                    push(*wall, xi, ev.clone());
                }
            }
        }
        // a lone hit is the arc grazing a corner; the cells around that corner carry the curve
        match hits.len() {
            0 | 1 => {}
            2 => {
                let [e0, e1]: [ArcEnd; 2] = hits.try_into().unwrap();
                out.push(LSegment {
                    cell: (w.i, w.j),
                    ends: [e0, e1],
                });
            }
            _ => return Err(ParallelError::NonGenericTangency((w.i, w.j))),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectifiedParallel {
    pub level: Rational,
    /// One closed chain per connected component; vertices are `L` endpoints.
    pub chains: Vec<PolyChain>,
    pub segments: Vec<LSegment>,
}

fn reflect(y: &Point, x: &Point) -> Point {
    y.reflect(x)
}

/// Where the chain continues after leaving `l` through `end`: the target chord and,
/// when the neighbouring cell is a parallel-edge strip, its family index.
fn continuation(p: &CposPolygon, l: &LSegment, end: usize) -> (Point, Point, Option<usize>) {
    let m = p.len() as i64;
    let n = p.n();
    let (i, j) = (l.cell.0 as i64, l.cell.1 as i64);
    let e = &l.ends[end];
    let (ni, nj) = match e.wall {
        Wall::S0 => (i - 1, j),
        Wall::S1 => (i + 1, j),
        Wall::R0 => (i, j - 1),
        Wall::R1 => (i, j + 1),
    };
    let (ni, nj) = (wrap(ni, m as usize), wrap(nj, m as usize));
    let (y1, y2) = e.chord.clone();
    if (nj as i64 - ni as i64).rem_euclid(m) as usize != n {
        return (y1, y2, None);
    }
    let x = &e.midpoint;
    let fam = edge_segment(p, ni as i64);
    let other = match fam.intersect(&Segment::new(
        reflect(p.vertex(nj as i64), x),
        reflect(p.vertex(nj as i64 + 1), x),
    )) {
        Some(SegmentHit::Overlap(s)) => {
            if s.a == y1 {
                s.b
            } else {
                s.a
            }
        }
        _ => y1.clone(),
    };
    let mirrored = reflect(&other, x);
    (other, mirrored, Some(ni))
}

/// The rectified area parallel at level `a`, `0 < a <= area / 2`.
pub fn rectified_parallel(
    p: &CposPolygon,
    a: &Rational,
) -> Result<RectifiedParallel, ParallelError> {
    trace(p, &Frames::new(p)?, a)
}

/// Rectified parallels at several levels, sharing the wedge frames.
pub fn rectified_parallels(
    p: &CposPolygon,
    levels: &[Rational],
) -> Result<Vec<RectifiedParallel>, ParallelError> {
    let frames = Frames::new(p)?;
    levels.iter().map(|a| trace(p, &frames, a)).collect()
}

fn trace(
    p: &CposPolygon,
    frames: &Frames,
    a: &Rational,
) -> Result<RectifiedParallel, ParallelError> {
    let total = p.area();
    if !a.is_positive() || *a > &total * half() {
        return Err(ParallelError::LevelOutOfRange(a.clone()));
    }
    let segs = level_segments_in(frames, a)?;
    let mut by_chord: HashMap<(Point, Point), Vec<(usize, usize)>> = HashMap::new();
    for (k, l) in segs.iter().enumerate() {
        for e in 0..2 {
            by_chord
                .entry(l.ends[e].chord.clone())
                .or_default()
                .push((k, e));
        }
    }
    let mut visited = vec![false; segs.len()];
    let mut chains: Vec<PolyChain> = Vec::new();
    for start in 0..segs.len() {
        if visited[start] {
            continue;
        }
        let mut points = Vec::new();
        let mut cusps = Vec::new();
        let (mut li, mut e) = (start, 0usize);
        loop {
            if visited[li] && li != start {
                return Err(ParallelError::TraceFailed(segs[li].cell));
            }
            visited[li] = true;
            let out_end = 1 - e;
            let (y1, y2, family) = continuation(p, &segs[li], out_end);
            let candidates: Vec<(usize, usize)> = by_chord
                .get(&(y1, y2))
                .into_iter()
                .flatten()
                .copied()
                .filter(|(k, _)| *k != li)
                .collect();
            let [(lj, ej)] = candidates[..] else {
                return Err(ParallelError::TraceFailed(segs[li].cell));
            };
            let cusp = match family {
                Some(k) => {
                    let mline = mid_parallel(p, k as i64);
                    let s1 = mline.side(&segs[li].segment().midpoint());
                    let s2 = mline.side(&segs[lj].segment().midpoint());
                    (s1 * s2).is_positive()
                }
                None => false,
            };
            points.push(segs[li].ends[out_end].midpoint.clone());
            cusps.push(cusp);
            li = lj;
            e = ej;
            if li == start {
                break;
            }
            if points.len() > segs.len() {
                return Err(ParallelError::TraceFailed(segs[start].cell));
            }
        }
        let chain = PolyChain {
            points,
            closed: true,
            cusp_flags: cusps,
            degenerate: None,
        };
        // at the half level every chord is seen from both sides; keep one copy
        let dup = chains.iter().any(|c| {
            c.points.len() == chain.points.len()
                && chain.points.iter().all(|x| c.points.contains(x))
        });
        if !dup {
            chains.push(chain);
        }
    }
    Ok(RectifiedParallel {
        level: a.clone(),
        chains,
        segments: segs,
    })
}

/// Regimes of an `L` segment by the walls its ends lie on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LClass {
    /// Both ends on `ξ` walls: the support line passes through the midpoint of `P_i P_{i+1}`.
    ThroughE,
    /// Ends on `S0` and `R1`: parallel to `P_i P_{j+1}`.
    ParallelToCrossDiagonal1,
    /// Ends on `S1` and `R0`: parallel to `P_{i+1} P_j`.
    ParallelToCrossDiagonal2,
    /// Both ends on `η` walls: through the midpoint of `P_j P_{j+1}`.
    ThroughF,
    /// Wall pair not covered by the regimes above.
    Other,
}

/// Classifies `l` and checks the matching exact property.
pub fn classify_l_segment(p: &CposPolygon, l: &LSegment) -> (LClass, bool) {
    let (i, j) = (l.cell.0 as i64, l.cell.1 as i64);
    let walls = (l.ends[0].wall, l.ends[1].wall);
    let dir = &l.ends[1].midpoint - &l.ends[0].midpoint;
    let on_line = |x: &Point| cross(&dir, &(x - &l.ends[0].midpoint)).is_zero();
    use Wall::*;
    match walls {
        (S0, S1) | (S1, S0) => (
            LClass::ThroughE,
            on_line(&Point::midpoint(p.vertex(i), p.vertex(i + 1))),
        ),
        (R0, R1) | (R1, R0) => (
            LClass::ThroughF,
            on_line(&Point::midpoint(p.vertex(j), p.vertex(j + 1))),
        ),
        (S0, R1) | (R1, S0) => (
            LClass::ParallelToCrossDiagonal1,
            cross(&dir, &(p.vertex(j + 1) - p.vertex(i))).is_zero(),
        ),
        (S1, R0) | (R0, S1) => (
            LClass::ParallelToCrossDiagonal2,
            cross(&dir, &(p.vertex(j) - p.vertex(i + 1))).is_zero(),
        ),
        _ => (LClass::Other, true),
    }
}

/// Level of the chord in the parallel family `(i, i+n)` with midpoint `x` on `m(i+½)`,
/// as the smaller of the two areas it cuts. `None` if no such chord fits the edges.
pub fn level_of_mid_parallel_point(p: &CposPolygon, i: i64, x: &Point) -> Option<Rational> {
    let j = i + p.n() as i64;
    let fam = edge_segment(p, i).intersect(&Segment::new(
        reflect(p.vertex(j), x),
        reflect(p.vertex(j + 1), x),
    ))?;
    let y1 = match fam {
        SegmentHit::Point(y) => y,
        SegmentHit::Overlap(s) => s.a,
    };
    let y2 = reflect(&y1, x);
    let f = cut_area_unchecked(p, i, &y1, j, &y2);
    let rest = p.area() - &f;
    Some(if f < rest { f } else { rest })
}

/// Midpoints of the 1-diagonals `P_i P_{i+n+1}`, i = 1..2n.
pub fn one_diagonal_midpoints(p: &CposPolygon) -> Vec<Point> {
    let n = p.n() as i64;
    (1..=p.len() as i64)
        .map(|i| Point::midpoint(p.vertex(i), p.vertex(i + n + 1)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostSymmetryCertificate {
    pub mu0: Rational,
    pub q: CposPolygon,
    pub ae_inside: bool,
    pub one_diag_midpoints_outside: bool,
    /// Open `μ` interval around `mu0` on which every tested predicate is constant.
    pub window: (Option<Rational>, Option<Rational>),
}

impl AlmostSymmetryCertificate {
    pub fn valid(&self) -> bool {
        self.ae_inside && self.one_diag_midpoints_outside
    }
}

/// Searches for `μ0` such that `Q_{μ0}` is convex, holds the area evolute of `P`
/// strictly inside and keeps every 1-diagonal midpoint outside.
///
/// Each predicate changes only where a side length of `Q_μ` or the side of a
/// test point relative to a side of `Q_μ` changes sign; all of these are roots
/// of affine functions of `μ`. One sample per interval between consecutive
/// roots therefore decides the whole search exactly.
pub fn almost_symmetry(
    p: &CposPolygon,
) -> Result<Option<AlmostSymmetryCertificate>, ParallelError> {
    let qa = pd_affine(p)?;
    let m = qa.len();
    let ae: Vec<Point> = area_evolute(p)?.points;
    let od = one_diagonal_midpoints(p);
    let mut crit: Vec<Rational> = Vec::new();
    for k in 0..m {
        let (a0, a1) = &qa[k];
        let (b0, b1) = &qa[(k + 1) % m];
        let uk = u(p, k as i64 + 2);
        let (e0, e1) = (b0 - a0, b1 - a1);
        // side length along u_k: (e0 + μ e1)·u_k
        let (r0, r1) = (e0.dot(&uk), e1.dot(&uk));
        if !r1.is_zero() {
            crit.push(-r0 / r1);
        }
        for z in ae.iter().chain(&od) {
            let g0 = cross(&uk, &(z - a0));
            let g1 = -cross(&uk, a1);
            if !g1.is_zero() {
                crit.push(-g0 / g1);
            }
        }
    }
    crit.sort();
    crit.dedup();
    if crit.is_empty() {
        return Ok(None);
    }
    let mut windows: Vec<(Option<Rational>, Option<Rational>, Rational)> = Vec::new();
    windows.push((
        None,
        Some(crit[0].clone()),
        -simplest_between(&-&crit[0], None),
    ));
    for w in crit.windows(2) {
        windows.push((
            Some(w[0].clone()),
            Some(w[1].clone()),
            simplest_between(&w[0], Some(&w[1])),
        ));
    }
    let last = &crit[crit.len() - 1];
    windows.push((Some(last.clone()), None, simplest_between(last, None)));
    for (lo, hi, mu) in windows {
        let q = eval_affine(&qa, &mu);
        let Ok(qp) = validate(&q) else { continue };
        let ae_inside = ae.iter().all(|z| convex_contains(&q, z, true));
        let outside = od.iter().all(|z| !convex_contains(&q, z, false));
        if ae_inside && outside {
            return Ok(Some(AlmostSymmetryCertificate {
                mu0: mu,
                q: qp,
                ae_inside,
                one_diag_midpoints_outside: outside,
                window: (lo, hi),
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RassResult {
    pub certificate: AlmostSymmetryCertificate,
    pub branches: Vec<EssBranch>,
    pub levels: Vec<Rational>,
    /// Sampled self-intersections of rectified parallels, with whether each lies on a branch.
    pub crossings: Vec<(Rational, Point, bool)>,
}

impl RassResult {
    pub fn all_on_branches(&self) -> bool {
        self.crossings.iter().all(|(_, _, ok)| *ok)
    }
}

/// Levels `(area / 2) k / (count + 1)`, `k = 1..=count`.
pub fn sample_levels(p: &CposPolygon, count: usize) -> Vec<Rational> {
    let half_area = p.area() * half();
    (1..=count as i64)
        .map(|k| &half_area * rat(k, count as i64 + 1))
        .collect()
}

/// The rectified area symmetry set, computed as the ESS of `Q_{μ0}` and checked
/// against the self-intersections of rectified parallels at `sample_count` levels.
pub fn rass(p: &CposPolygon, sample_count: usize) -> Result<RassResult, ParallelError> {
    let certificate = almost_symmetry(p)?.ok_or(ParallelError::NoCertificate)?;
    let parallels = rectified_parallels(p, &sample_levels(p, sample_count))?;
    rass_from(certificate, &parallels)
}

/// [`rass`] over already traced parallels.
pub fn rass_from(
    certificate: AlmostSymmetryCertificate,
    parallels: &[RectifiedParallel],
) -> Result<RassResult, ParallelError> {
    let branches = ess_trace(&certificate.q)?;
    let mut crossings = Vec::new();
    for rp in parallels {
        for chain in &rp.chains {
            for x in polyline_self_intersections(&chain.points) {
                let ok = branches.iter().any(|b| b.contains(&x));
                crossings.push((rp.level.clone(), x, ok));
            }
        }
    }
    let levels = parallels.iter().map(|rp| rp.level.clone()).collect();
    Ok(RassResult {
        certificate,
        branches,
        levels,
        crossings,
    })
}

/// Whether every vertex of `q` (a transform of `p`) sits on one common level,
/// and that level's rectified parallel has exactly `q`'s vertices and edges.
pub fn q_is_rectified_parallel(p: &CposPolygon, q: &CposPolygon) -> Result<bool, ParallelError> {
    let n = p.n() as i64;
    let levels: Vec<Option<Rational>> = (1..=q.len() as i64)
        .map(|k| level_of_mid_parallel_point(p, wrap(k, n as usize) as i64, q.vertex(k)))
        .collect();
    let Some(Some(level)) = levels.first().cloned() else {
        return Ok(false);
    };
    if levels.iter().any(|l| l.as_ref() != Some(&level)) {
        return Ok(false);
    }
    let rp = rectified_parallel(p, &level)?;
    let [chain] = &rp.chains[..] else {
        return Ok(false);
    };
    let same_vertices =
        chain.points.len() == q.len() && q.vertices().iter().all(|v| chain.points.contains(v));
    let edges = chain.segments();
    let same_edges = (1..=q.len() as i64).all(|k| {
        let (a, b) = (q.vertex(k), q.vertex(k + 1));
        edges
            .iter()
            .any(|s| (&s.a == a && &s.b == b) || (&s.a == b && &s.b == a))
    });
    Ok(same_vertices && same_edges)
}

/// Closed point-on-area-evolute test.
pub fn on_area_evolute(p: &CposPolygon, x: &Point) -> Result<bool, EvoluteError> {
    Ok(area_evolute(p)?.contains(x))
}

/// Do two closed chains share a point.
pub fn chains_touch(a: &PolyChain, b: &PolyChain) -> bool {
    let sa = a.segments();
    let sb = b.segments();
    let ba: Vec<[f64; 4]> = sa.iter().map(|s| padded_box(&s.a, &s.b)).collect();
    let bb: Vec<[f64; 4]> = sb.iter().map(|s| padded_box(&s.a, &s.b)).collect();
    sa.iter().zip(&ba).any(|(s, x)| {
        sb.iter()
            .zip(&bb)
            .any(|(t, y)| boxes_overlap(x, y) && s.intersect(t).is_some())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::half_area_midpoints;
    use crate::polygon::{hex_ea2, hex_sym, random_cpos};
    use proptest::prelude::*;

    #[test]
    fn chord_area_examples() {
        let p = hex_ea2();
        for (a, b) in [
            (rat(0, 1), rat(0, 1)),
            (rat(1, 2), rat(-1, 1)),
            (rat(1, 4), rat(-3, 2)),
        ] {
            let y1 = Point::new(a.clone(), int(0));
            let y2 = Point::new(b.clone(), int(3));
            let area = chord_cut_area(&p, 1, &y1, 4, &y2).unwrap();
            assert_eq!(area, (int(5) - int(3) * (a + b)) * half());
        }
        assert_eq!(
            chord_cut_area(&p, 1, &Point::origin(), 4, &Point::from_ints(0, 3)).unwrap(),
            rat(5, 2)
        );
        let v = p.vertex(2).clone();
        assert_eq!(chord_cut_area(&p, 1, &v, 2, &v).unwrap(), int(0));
        assert_eq!(
            chord_cut_area(&p, 1, &Point::from_ints(5, 5), 4, &Point::from_ints(0, 3)),
            Err(ParallelError::PointOffEdge(1))
        );
    }

    #[test]
    fn wedge_area_matches_shoelace() {
        let p = hex_ea2();
        let w = WedgeFrame::new(&p, 1, 3).unwrap();
        for (xi, eta) in [
            (rat(1, 3), rat(1, 5)),
            (rat(2, 7), rat(-1, 3)),
            (rat(1, 2), rat(1, 2)),
        ] {
            let (y1, y2) = w.chord(&xi, &eta);
            assert_eq!(cut_area_unchecked(&p, 1, &y1, 3, &y2), w.area_at(&xi, &eta));
        }
    }

    #[test]
    fn small_level_has_no_cusps() {
        let rp = rectified_parallel(&hex_ea2(), &rat(1, 100)).unwrap();
        assert_eq!(rp.chains.len(), 1);
        assert_eq!(rp.chains[0].points.len(), 12);
        assert_eq!(rp.chains[0].cusp_count(), 0);
    }

    #[test]
    fn half_level_passes_through_n_points() {
        let p = hex_ea2();
        let rp = rectified_parallel(&p, &rat(13, 4)).unwrap();
        let npts = half_area_midpoints(&p);
        let chain = &rp.chains[0];
        assert!(npts.iter().all(|x| chain.points.contains(x)));
        assert!(chain.points.iter().all(|x| npts.contains(x)));
        assert!(chain.cusp_flags.iter().all(|c| *c));
        assert!(matches!(
            rectified_parallel(&p, &int(4)),
            Err(ParallelError::LevelOutOfRange(_))
        ));
    }

    #[test]
    fn symmetric_parallels_have_no_cusps() {
        let p = hex_sym();
        for a in [int(1), int(3), int(5)] {
            let rp = rectified_parallel(&p, &a).unwrap();
            for c in &rp.chains {
                assert_eq!(c.cusp_count(), 0);
                for x in &c.points {
                    assert!(c.points.contains(&x.reflect(&Point::origin())));
                }
            }
        }
    }

    #[test]
    fn corner_touching_levels_trace() {
        for p in [hex_ea2(), hex_sym()] {
            let ae = area_evolute(&p).unwrap();
            for a in sample_levels(&p, 20) {
                let rp = rectified_parallel(&p, &a).unwrap();
                assert_eq!(rp.chains.len(), 1, "level {a}");
                let c = &rp.chains[0];
                assert!(c
                    .points
                    .iter()
                    .zip(&c.cusp_flags)
                    .all(|(x, f)| *f == ae.contains(x)));
            }
        }
    }

    #[test]
    fn lemma_regimes_hold() {
        let p = hex_ea2();
        for a in sample_levels(&p, 20) {
            for l in level_segments(&p, &a).unwrap() {
                let (_, ok) = classify_l_segment(&p, &l);
                assert!(ok, "{l:?}");
            }
        }
    }

    #[test]
    fn fixture_certificate() {
        let p = hex_ea2();
        let cert = almost_symmetry(&p).unwrap().unwrap();
        assert!(cert.valid());
        assert!(q_is_rectified_parallel(&p, &cert.q).unwrap());
        let od = one_diagonal_midpoints(&p);
        assert_eq!(od[0], Point::new(int(-1), rat(3, 2)));
        assert_eq!(od[1], Point::new(rat(-1, 2), int(1)));
        let r = rass(&p, 20).unwrap();
        assert!(r.all_on_branches());
        assert!(matches!(
            almost_symmetry(&hex_sym()),
            Err(ParallelError::Pd(PdError::SymmetricInput))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn cusps_are_exactly_on_the_evolute(seed in 0u64..3000, k in 1i64..20) {
            let p = random_cpos(3 + (seed % 4) as usize, seed).unwrap();
            let a = p.area() * half() * rat(k, 20);
            let ae = area_evolute(&p).unwrap();
            for chain in rectified_parallel(&p, &a).unwrap().chains {
                for (x, c) in chain.points.iter().zip(&chain.cusp_flags) {
                    prop_assert_eq!(*c, ae.contains(x));
                }
            }
        }

        #[test]
        fn every_l_segment_fits_a_regime(seed in 0u64..3000, k in 1i64..20) {
            let p = random_cpos(3 + (seed % 4) as usize, seed).unwrap();
            let a = p.area() * half() * rat(k, 20);
            for l in level_segments(&p, &a).unwrap() {
                let (class, ok) = classify_l_segment(&p, &l);
                prop_assert!(ok, "{:?}", class);
            }
        }
    }
}
