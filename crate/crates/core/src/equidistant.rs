//! Equidistants `P_i(t) = P_i + t (P_{i+n} - P_i)`, their cusps, and the
//! equidistant symmetry set (ESS) traced branch by branch.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::evolute::{
    central_symmetry_set, css_cusp_flags, css_vertex, lambda_at, lambda_sequence, Degeneracy,
    EvoluteError, PolyChain,
};
use crate::kernel::{
    boxes_overlap, cross, int, padded_box, rat, Point, Rational, Segment, SegmentHit, Vector,
};
use crate::polygon::{is_symmetric, wrap, CposPolygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquidistantError {
    #[error("central symmetry set is degenerate at index {0}")]
    DegenerateCss(usize),
    #[error("lambda sequence has a plateau at index {0}")]
    PlateauLambda(usize),
    #[error("non-generic coincidence for edge pair ({}, {}) at t = {t}", .pair.0, .pair.1)]
    NonGenericCoincidence { pair: (usize, usize), t: Rational },
    #[error("edge pair ({}, {}) stays crossed for unbounded t", .0.0, .0.1)]
    Unbounded((usize, usize)),
    #[error(transparent)]
    Evolute(#[from] EvoluteError),
}

impl EquidistantError {
    pub fn kind(&self) -> &'static str {
        match self {
            EquidistantError::DegenerateCss(_) => "DegenerateCss",
            EquidistantError::PlateauLambda(_) => "PlateauLambda",
            EquidistantError::NonGenericCoincidence { .. } => "NonGenericCoincidence",
            EquidistantError::Unbounded(_) => "Unbounded",
            EquidistantError::Evolute(e) => e.kind(),
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            EquidistantError::DegenerateCss(i) | EquidistantError::PlateauLambda(i) => Some(*i),
            EquidistantError::NonGenericCoincidence { pair, .. }
            | EquidistantError::Unbounded(pair) => Some(pair.0),
            EquidistantError::Evolute(e) => e.index(),
        }
    }
}

/// `P_i(t)`.
pub fn equidistant_vertex(p: &CposPolygon, i: i64, t: &Rational) -> Point {
    Point::lerp(p.vertex(i), p.vertex(i + p.n() as i64), t)
}

/// `f_i(t) = [e(i-½)(t), e(i+½)(t)]`.
pub fn cusp_function(p: &CposPolygon, i: i64, t: &Rational) -> Rational {
    let prev = equidistant_vertex(p, i - 1, t);
    let cur = equidistant_vertex(p, i, t);
    let next = equidistant_vertex(p, i + 1, t);
    cross(&(&cur - &prev), &(&next - &cur))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equidistant {
    pub t: Rational,
    pub points: Vec<Point>,
    pub cusp_flags: Vec<bool>,
}

impl Equidistant {
    pub fn chain(&self) -> PolyChain {
        PolyChain {
            points: self.points.clone(),
            closed: true,
            cusp_flags: self.cusp_flags.clone(),
            degenerate: None,
        }
    }
}

pub fn equidistant(p: &CposPolygon, t: &Rational) -> Equidistant {
    let m = p.len() as i64;
    Equidistant {
        t: t.clone(),
        points: (1..=m).map(|i| equidistant_vertex(p, i, t)).collect(),
        cusp_flags: (1..=m)
            .map(|i| cusp_function(p, i, t).is_negative())
            .collect(),
    }
}

/// Self-intersection points of the equidistant at level `t` (non-adjacent edges only).
pub fn equidistant_self_intersections(p: &CposPolygon, t: &Rational) -> Vec<Point> {
    let eq = equidistant(p, t);
    polyline_self_intersections(&eq.points)
}

/// Crossings between non-adjacent edges of a closed polyline, deduplicated.
pub fn polyline_self_intersections(pts: &[Point]) -> Vec<Point> {
    let m = pts.len();
    let boxes: Vec<[f64; 4]> = (0..m)
        .map(|k| padded_box(&pts[k], &pts[(k + 1) % m]))
        .collect();
    let mut out: Vec<Point> = Vec::new();
    for i in 0..m {
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            if !boxes_overlap(&boxes[i], &boxes[j]) {
                continue;
            }
            let s1 = Segment::new(pts[i].clone(), pts[(i + 1) % m].clone());
            let s2 = Segment::new(pts[j].clone(), pts[(j + 1) % m].clone());
            if let Some(SegmentHit::Point(x)) = s1.intersect(&s2) {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspInterval {
    /// Vertex index `i` in `1..=2n`.
    pub index: usize,
    /// Open interval of `t` where `P_i(t)` is a cusp; `None` when empty.
    pub interval: Option<(Rational, Rational)>,
    /// `P_i(λ(i-½)) = D(i-½)` and `P_i(λ(i+½)) = D(i+½)`.
    pub sweep: Segment,
}

/// For every vertex, the cusp interval and the CSS edge swept by `P_i(t)` over it.
pub fn cusp_locus(p: &CposPolygon) -> Result<Vec<CuspInterval>, EquidistantError> {
    let chain = central_symmetry_set(p)?;
    if let Some(Degeneracy::DegenerateCss(i)) = chain.degenerate {
        return Err(EquidistantError::DegenerateCss(i));
    }
    let seq = lambda_sequence(p)?;
    let m = p.len() as i64;
    (1..=m)
        .map(|i| {
            let lo = lambda_at(&seq, i - 1);
            let hi = lambda_at(&seq, i);
            let interval = match lo.cmp(hi) {
                std::cmp::Ordering::Less => Some((lo.clone(), hi.clone())),
                std::cmp::Ordering::Greater => Some((hi.clone(), lo.clone())),
                std::cmp::Ordering::Equal => None,
            };
            Ok(CuspInterval {
                index: i as usize,
                interval,
                sweep: Segment::new(css_vertex(p, i - 1)?.1, css_vertex(p, i)?.1),
            })
        })
        .collect()
}

/// Affine function `c0 + c1 t`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Affine(Rational, Rational);

impl Affine {
    fn at(&self, t: &Rational) -> Rational {
        &self.0 + &self.1 * t
    }

    fn root(&self) -> Option<Rational> {
        (!self.1.is_zero()).then(|| -&self.0 / &self.1)
    }
}

/// How an ESS branch ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EndpointKind {
    CssCusp,
    AeCusp,
}

impl EndpointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EndpointKind::CssCusp => "CssCusp",
            EndpointKind::AeCusp => "AeCusp",
        }
    }
}

/// One piece of the ESS: where edges `pair.0` and `pair.1` of `P_t` cross, for `t` in `t_range`.
///
/// Inside a branch, `t_range` is listed in traversal order and may be decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssSegment {
    pub pair: (usize, usize),
    pub t_range: (Rational, Rational),
    /// Crossing point at `t_range.0` and at `t_range.1`.
    pub segment: Segment,
    /// Equidistant vertices the crossing sits on at each end of `t_range`.
    tight: [Vec<usize>; 2],
}

impl EssSegment {
    pub fn tight_vertices(&self, end: usize) -> &[usize] {
        &self.tight[end]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssBranch {
    /// Segments in chain order; each is oriented so it starts where the previous one ends.
    pub segments: Vec<EssSegment>,
    /// `[start, end]` kinds for an open branch, `None` for a closed loop.
    pub endpoint_kinds: Option<[EndpointKind; 2]>,
    /// Junction points between consecutive segments (and last-to-first when closed).
    pub junctions: Vec<Point>,
    /// Junction on `d_m` is a cusp when both adjacent segments lie on the same side of `d_m`.
    pub cusp_vertices: Vec<bool>,
}

impl EssBranch {
    pub fn closed(&self) -> bool {
        self.endpoint_kinds.is_none()
    }

    pub fn endpoints(&self) -> Option<[Point; 2]> {
        self.endpoint_kinds?;
        let first = self.segments.first()?;
        let last = self.segments.last()?;
        Some([first.segment.a.clone(), last.segment.b.clone()])
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.segments.iter().any(|s| s.segment.contains(x))
    }
}

struct Pieces<'a> {
    p: &'a CposPolygon,
    lambdas: Vec<Rational>,
}

impl Pieces<'_> {
    fn two_n(&self) -> usize {
        self.p.len()
    }

    fn norm(&self, i: i64) -> usize {
        wrap(i, self.two_n())
    }

    /// `[a, c_k - a, b, c_l - b]` where the crossing is `P_k(t) + a e_k = P_l(t) + b e_l`
    /// and `e_k(t) = c_k(t) e_k`.
    fn functions(&self, k: i64, l: i64) -> [Affine; 4] {
        let p = self.p;
        let (ek, el) = (p.edge(k), p.edge(l));
        let den = cross(&ek, &el);
        let base = p.vertex(l) - p.vertex(k);
        let slope = &p.diagonal(l) - &p.diagonal(k);
        let a = Affine(cross(&base, &el) / &den, cross(&slope, &el) / &den);
        let b = Affine(cross(&base, &ek) / &den, cross(&slope, &ek) / &den);
        let c = |i: i64| Affine(int(1), -(int(1) / lambda_at(&self.lambdas, i)));
        let ck = c(k);
        let cl = c(l);
        [
            a.clone(),
            Affine(&ck.0 - &a.0, &ck.1 - &a.1),
            b.clone(),
            Affine(&cl.0 - &b.0, &cl.1 - &b.1),
        ]
    }

    fn inside(fs: &[Affine; 4], t: &Rational) -> bool {
        !(fs[0].at(t) * fs[1].at(t)).is_negative() && !(fs[2].at(t) * fs[3].at(t)).is_negative()
    }

    fn pair_segments(&self, k: usize, l: usize) -> Result<Vec<EssSegment>, EquidistantError> {
        let (ki, li) = (k as i64, l as i64);
        let fs = self.functions(ki, li);
        let mut crit: Vec<Rational> = fs.iter().filter_map(Affine::root).collect();
        crit.sort();
        crit.dedup();
        if crit.is_empty() {
            return Ok(Vec::new());
        }
        let one = Rational::one();
        if Self::inside(&fs, &(&crit[0] - &one))
            || Self::inside(&fs, &(&crit[crit.len() - 1] + &one))
        {
            return Err(EquidistantError::Unbounded((k, l)));
        }
        let mut ranges: Vec<(Rational, Rational)> = Vec::new();
        for w in crit.windows(2) {
            let mid = (&w[0] + &w[1]) / int(2);
            if !Self::inside(&fs, &mid) {
                continue;
            }
            match ranges.last_mut() {
                Some(last) if last.1 == w[0] => last.1 = w[1].clone(),
                _ => ranges.push((w[0].clone(), w[1].clone())),
            }
        }
        let ek = self.p.edge(ki);
        let verts = [ki, ki + 1, li, li + 1];
        Ok(ranges
            .into_iter()
            .map(|(t0, t1)| {
                let at = |t: &Rational| &equidistant_vertex(self.p, ki, t) + &(&ek * &fs[0].at(t));
                let tight = |t: &Rational| -> Vec<usize> {
                    let mut v: Vec<usize> = fs
                        .iter()
                        .zip(verts)
                        .filter(|(f, _)| f.at(t).is_zero())
                        .map(|(_, v)| self.norm(v))
                        .collect();
                    v.sort();
                    v.dedup();
                    v
                };
                EssSegment {
                    pair: (k, l),
                    segment: Segment::new(at(&t0), at(&t1)),
                    tight: [tight(&t0), tight(&t1)],
                    t_range: (t0, t1),
                }
            })
            .collect())
    }
}

/// Every ESS segment, one per maximal crossing interval of each non-adjacent, non-opposite edge pair.
pub fn ess_segments(p: &CposPolygon) -> Result<Vec<EssSegment>, EquidistantError> {
    let pieces = Pieces {
        p,
        lambdas: lambda_sequence(p)?,
    };
    let m = p.len();
    let n = p.n();
    let mut out = Vec::new();
    for k in 1..=m {
        for l in k + 1..=m {
            let d = l - k;
            if d == 1 || d == m - 1 || d == n {
                continue;
            }
            out.extend(pieces.pair_segments(k, l)?);
        }
    }
    Ok(out)
}

enum End {
    Continue(usize, usize),
    Stop(EndpointKind),
}

struct Tracer<'a> {
    p: &'a CposPolygon,
    segs: Vec<EssSegment>,
    by_pair: HashMap<(usize, usize), Vec<usize>>,
}

impl Tracer<'_> {
    fn key(&self, a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }

    fn at_end(&self, idx: usize, end: usize) -> Result<End, EquidistantError> {
        let s = &self.segs[idx];
        let m = self.p.len();
        let n = self.p.n();
        let tight = &s.tight[end];
        let t = if end == 0 { &s.t_range.0 } else { &s.t_range.1 };
        let x = if end == 0 { &s.segment.a } else { &s.segment.b };
        let nongeneric = || EquidistantError::NonGenericCoincidence {
            pair: s.pair,
            t: t.clone(),
        };
        match tight.as_slice() {
            [v] => {
                let (k, l) = s.pair;
                let norm = |i: i64| wrap(i, m);
                let next = if *v == k {
                    (norm(k as i64 - 1), l)
                } else if *v == norm(k as i64 + 1) {
                    (norm(k as i64 + 1), l)
                } else if *v == l {
                    (k, norm(l as i64 - 1))
                } else {
                    (k, norm(l as i64 + 1))
                };
                let key = self.key(next.0, next.1);
                let mut found = Vec::new();
                for &j in self.by_pair.get(&key).into_iter().flatten() {
                    let o = &self.segs[j];
                    if &o.t_range.0 == t && &o.segment.a == x {
                        found.push((j, 0));
                    }
                    if &o.t_range.1 == t && &o.segment.b == x {
                        found.push((j, 1));
                    }
                }
                match found.as_slice() {
                    [(j, e)] => Ok(End::Continue(*j, *e)),
                    _ => Err(nongeneric()),
                }
            }
            [a, b] => {
                let d = a.abs_diff(*b);
                if d == 1 || d == m - 1 {
                    Ok(End::Stop(EndpointKind::CssCusp))
                } else if d == n {
                    Ok(End::Stop(EndpointKind::AeCusp))
                } else {
                    Err(nongeneric())
                }
            }
            _ => Err(nongeneric()),
        }
    }

    fn mirror(&self, idx: usize) -> Option<usize> {
        let s = &self.segs[idx];
        let m = self.p.len() as i64;
        let n = self.p.n() as i64;
        let a = wrap(s.pair.0 as i64 + n, m as usize);
        let b = wrap(s.pair.1 as i64 + n, m as usize);
        let range = (int(1) - &s.t_range.1, int(1) - &s.t_range.0);
        self.by_pair
            .get(&self.key(a, b))?
            .iter()
            .copied()
            .find(|&j| self.segs[j].t_range == range)
    }
}

/// Orients a segment so that `end` becomes its start.
fn oriented(s: &EssSegment, start_end: usize) -> EssSegment {
    if start_end == 0 {
        return s.clone();
    }
    EssSegment {
        pair: s.pair,
        t_range: (s.t_range.1.clone(), s.t_range.0.clone()),
        segment: Segment::new(s.segment.b.clone(), s.segment.a.clone()),
        tight: [s.tight[1].clone(), s.tight[0].clone()],
    }
}

/// The ESS as branches, each walked from one cusp endpoint to the other (or around a loop).
///
/// Each crossing is seen twice, as pair `{k, l}` at `t` and as `{k+n, l+n}` at `1-t`;
/// only one copy of each branch is returned.
pub fn ess_trace(p: &CposPolygon) -> Result<Vec<EssBranch>, EquidistantError> {
    if is_symmetric(p).is_some() {
        return Ok(Vec::new());
    }
    match css_cusp_flags(p)? {
        Err(Degeneracy::DegenerateCss(i)) => return Err(EquidistantError::DegenerateCss(i)),
        Err(Degeneracy::PlateauLambda(i)) => return Err(EquidistantError::PlateauLambda(i)),
        _ => {}
    }
    let segs = ess_segments(p)?;
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (k, s) in segs.iter().enumerate() {
        by_pair.entry(s.pair).or_default().push(k);
    }
    let tracer = Tracer { p, segs, by_pair };
    let mut visited = vec![false; tracer.segs.len()];
    let mut branches = Vec::new();
    for start in 0..tracer.segs.len() {
        if visited[start] {
            continue;
        }
        // walk backwards from `start` to a cusp endpoint, or detect a loop
        let (mut cur, mut end) = (start, 0usize);
        let mut closed = false;
        let mut steps = 0;
        loop {
            match tracer.at_end(cur, end)? {
                End::Stop(_) => break,
                End::Continue(j, e) => {
                    if j == start {
                        closed = true;
                        break;
                    }
                    cur = j;
                    end = 1 - e;
                    steps += 1;
                    if steps > tracer.segs.len() {
                        closed = true;
                        break;
                    }
                }
            }
        }
        if closed {
            cur = start;
            end = 0;
        }
        let start_kind = match tracer.at_end(cur, end)? {
            End::Stop(k) => Some(k),
            End::Continue(..) => None,
        };
        let first = cur;
        let mut order = vec![(cur, end)];
        let mut end_kind = None;
        let (mut c, mut e) = (cur, 1 - end);
        loop {
            match tracer.at_end(c, e)? {
                End::Stop(k) => {
                    end_kind = Some(k);
                    break;
                }
                End::Continue(j, je) => {
                    if j == first {
                        break;
                    }
                    order.push((j, je));
                    c = j;
                    e = 1 - je;
                }
            }
        }
        for &(j, _) in &order {
            visited[j] = true;
            if let Some(mj) = tracer.mirror(j) {
                visited[mj] = true;
            }
        }
        let segments: Vec<EssSegment> = order
            .iter()
            .map(|&(j, e)| oriented(&tracer.segs[j], e))
            .collect();
        let endpoint_kinds = match (start_kind, end_kind) {
            (Some(a), Some(b)) if !closed => Some([a, b]),
            _ => None,
        };
        let (junctions, cusp_vertices) = junction_flags(p, &segments, endpoint_kinds.is_none());
        branches.push(EssBranch {
            segments,
            endpoint_kinds,
            junctions,
            cusp_vertices,
        });
    }
    Ok(branches)
}

fn junction_flags(p: &CposPolygon, segs: &[EssSegment], closed: bool) -> (Vec<Point>, Vec<bool>) {
    let count = if closed {
        segs.len()
    } else {
        segs.len().saturating_sub(1)
    };
    let mut points = Vec::with_capacity(count);
    let mut flags = Vec::with_capacity(count);
    for k in 0..count {
        let s = &segs[k];
        let next = &segs[(k + 1) % segs.len()];
        let x = s.segment.b.clone();
        let vertex = s.tight[1].first().copied().unwrap_or(1) as i64;
        let base = p.vertex(vertex);
        let dir: Vector = p.diagonal(vertex);
        let side = |q: &Point| cross(&dir, &(q - base));
        let a = side(&s.segment.midpoint());
        let b = side(&next.segment.midpoint());
        flags.push((a * b).is_positive());
        points.push(x);
    }
    (points, flags)
}

/// Closed point-on-CSS test.
pub fn on_central_symmetry_set(p: &CposPolygon, x: &Point) -> Result<bool, EvoluteError> {
    Ok(central_symmetry_set(p)?.contains(x))
}

/// Evenly spaced sweep levels `k / (count + 1)`, `k = 1..=count`.
pub fn sweep_levels(count: usize) -> Vec<Rational> {
    (1..=count as i64)
        .map(|k| rat(k, count as i64 + 1))
        .collect()
}

/// Sweep oracle: every crossing of a sampled equidistant must lie on a traced branch.
/// Returns the crossings that do not.
pub fn sweep_misses(
    p: &CposPolygon,
    branches: &[EssBranch],
    levels: &[Rational],
) -> Vec<(Rational, Point)> {
    let mut misses = Vec::new();
    for t in levels {
        if *t == Rational::new(1.into(), 2.into()) {
            continue;
        }
        for x in equidistant_self_intersections(p, t) {
            if !branches.iter().any(|b| b.contains(&x)) {
                misses.push((t.clone(), x));
            }
        }
    }
    misses
}
