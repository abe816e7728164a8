//! JSON documents: polygons, chains, ESS branches, transforms and error diagnostics.
//!
//! Rationals travel as canonical `"p/q"` strings, points as two-element arrays.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::chords::ChordError;
use crate::equidistant::{EndpointKind, Equidistant, EquidistantError, EssBranch};
use crate::evolute::{Degeneracy, EvoluteError, PolyChain};
use crate::kernel::{parse_rational, Point, Rational, Segment};
use crate::parallels::{
    classify_l_segment, AlmostSymmetryCertificate, LClass, ParallelError, RassResult,
    RectifiedParallel,
};
use crate::pd::PdConstructionTrace;
use crate::polygon::{CposPolygon, PolygonError};

/// Input that could not be read at all (as opposed to a geometric refusal).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unexpected document shape: {0}")]
    Shape(String),
    #[error("invalid rational: {0}")]
    Rational(String),
}

/// A geometric refusal, ready to be reported as `{"error": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refusal {
    pub kind: String,
    pub index: Option<usize>,
    pub message: String,
}

impl Refusal {
    pub fn new(kind: &str, index: Option<usize>, message: impl Into<String>) -> Self {
        Refusal {
            kind: kind.to_string(),
            index,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut e = Map::new();
        e.insert("kind".into(), json!(self.kind));
        if let Some(i) = self.index {
            e.insert("index".into(), json!(i));
        }
        e.insert("message".into(), json!(self.message));
        json!({ "error": e })
    }
}

impl std::fmt::Display for Refusal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

macro_rules! refusal_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Refusal {
            fn from(e: $t) -> Self {
                Refusal::new(e.kind(), e.index(), e.to_string())
            }
        }
    )*};
}

refusal_from!(
    crate::edit::EditError,
    PolygonError,
    EvoluteError,
    ChordError,
    EquidistantError,
    ParallelError,
    crate::pd::PdError
);

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn point(p: &Point) -> Value {
    json!([rational(&p.x), rational(&p.y)])
}

pub fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

pub fn segment(s: &Segment) -> Value {
    json!([point(&s.a), point(&s.b)])
}

pub fn parse_rational_value(v: &Value) -> Result<Rational, InputError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => {
            return Err(InputError::Shape(format!(
                "expected a rational, got {other}"
            )))
        }
    };
    parse_rational(&text).map_err(|_| InputError::Rational(text))
}

pub fn parse_point_value(v: &Value) -> Result<Point, InputError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(
            parse_rational_value(x)?,
            parse_rational_value(y)?,
        )),
        _ => Err(InputError::Shape(format!("expected [x, y], got {v}"))),
    }
}

/// Reads `{"vertices": [[x, y], ...]}` or a bare `[[x, y], ...]`.
pub fn parse_vertices(text: &str) -> Result<Vec<Point>, InputError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    vertices_from_value(&doc)
}

pub fn vertices_from_value(doc: &Value) -> Result<Vec<Point>, InputError> {
    let list = match doc {
        Value::Object(m) => m
            .get("vertices")
            .ok_or_else(|| InputError::Shape("missing \"vertices\"".into()))?,
        v => v,
    };
    list.as_array()
        .ok_or_else(|| InputError::Shape("\"vertices\" must be an array".into()))?
        .iter()
        .map(parse_point_value)
        .collect()
}

/// Parses `"x,y"` as used on the command line.
pub fn parse_point_arg(s: &str) -> Result<Point, InputError> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| InputError::Shape(format!("expected x,y, got {s}")))?;
    let r = |t: &str| parse_rational(t).map_err(|_| InputError::Rational(t.to_string()));
    Ok(Point::new(r(x)?, r(y)?))
}

pub fn polygon(p: &CposPolygon) -> Value {
    json!({ "vertices": points(p.vertices()) })
}

pub fn validation(p: &CposPolygon) -> Value {
    json!({ "valid": true, "n": p.n() })
}

pub fn chain(c: &PolyChain) -> Value {
    match &c.degenerate {
        Some(Degeneracy::Point) => json!({ "points": points(&c.points), "degenerate": "point" }),
        Some(d) => {
            let mut m = Map::new();
            m.insert("points".into(), points(&c.points));
            m.insert("closed".into(), json!(c.closed));
            m.insert("degenerate".into(), json!(d.kind()));
            if let Some(i) = d.index() {
                m.insert("index".into(), json!(i));
            }
            Value::Object(m)
        }
        None => json!({ "points": points(&c.points), "closed": c.closed, "cusps": c.cusp_flags }),
    }
}

pub fn equidistant(e: &Equidistant) -> Value {
    json!({
        "t": rational(&e.t),
        "points": points(&e.points),
        "closed": true,
        "cusps": e.cusp_flags,
    })
}

fn junction_kind(cusp: bool) -> &'static str {
    if cusp {
        "Cusp"
    } else {
        "Smooth"
    }
}

fn end_kind(k: EndpointKind) -> &'static str {
    k.as_str()
}

/// A branch as an array of segments; each segment's `endpoint_kinds` names what
/// sits at its two ends: a branch end (`CssCusp`/`AeCusp`) or a junction (`Cusp`/`Smooth`).
pub fn ess_branch(b: &EssBranch) -> Value {
    let count = b.segments.len();
    let segs: Vec<Value> = b
        .segments
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let start = if k == 0 {
                match (&b.endpoint_kinds, b.cusp_vertices.last()) {
                    (Some(ks), _) => end_kind(ks[0]),
                    (None, Some(c)) => junction_kind(*c),
                    (None, None) => "Smooth",
                }
            } else {
                junction_kind(b.cusp_vertices[k - 1])
            };
            let end = if k + 1 == count {
                match &b.endpoint_kinds {
                    Some(ks) => end_kind(ks[1]),
                    None => junction_kind(b.cusp_vertices[k]),
                }
            } else {
                junction_kind(b.cusp_vertices[k])
            };
            json!({
                "pair": [s.pair.0, s.pair.1],
                "t_range": [rational(&s.t_range.0), rational(&s.t_range.1)],
                "points": segment(&s.segment),
                "endpoint_kinds": [start, end],
            })
        })
        .collect();
    Value::Array(segs)
}

pub fn ess(branches: &[EssBranch]) -> Value {
    json!({ "branches": branches.iter().map(ess_branch).collect::<Vec<_>>() })
}

pub fn pd(trace: &PdConstructionTrace, n_points: &[Point]) -> Value {
    json!({
        "vertices": points(&trace.q),
        "mu": rational(&trace.mu),
        "mu_seq": trace.mu_seq.iter().map(rational).collect::<Vec<_>>(),
        "N": points(n_points),
    })
}

pub fn l_class(c: LClass) -> &'static str {
    match c {
        LClass::ThroughE => "ThroughE",
        LClass::ParallelToCrossDiagonal1 => "ParallelToCrossDiagonal1",
        LClass::ParallelToCrossDiagonal2 => "ParallelToCrossDiagonal2",
        LClass::ThroughF => "ThroughF",
        LClass::Other => "Other",
    }
}

pub fn rectified_parallel(p: &CposPolygon, rp: &RectifiedParallel) -> Value {
    let segs: Vec<Value> = rp
        .segments
        .iter()
        .map(|l| {
            let (class, holds) = classify_l_segment(p, l);
            json!({
                "cell": [l.cell.0, l.cell.1],
                "points": segment(&l.segment()),
                "class": l_class(class),
                "class_holds": holds,
            })
        })
        .collect();
    json!({
        "level": rational(&rp.level),
        "chains": rp.chains.iter().map(chain).collect::<Vec<_>>(),
        "segments": segs,
    })
}

fn opt_rational(r: &Option<Rational>) -> Value {
    r.as_ref().map(rational).unwrap_or(Value::Null)
}

pub fn certificate(cert: Option<&AlmostSymmetryCertificate>, one_diag: &[Point]) -> Value {
    match cert {
        None => json!({ "certified": false, "one_diagonal_midpoints": points(one_diag) }),
        Some(c) => json!({
            "certified": c.valid(),
            "mu0": rational(&c.mu0),
            "window": [opt_rational(&c.window.0), opt_rational(&c.window.1)],
            "Q": polygon(&c.q),
            "ae_inside": c.ae_inside,
            "one_diag_midpoints_outside": c.one_diag_midpoints_outside,
            "one_diagonal_midpoints": points(one_diag),
        }),
    }
}

pub fn rass(r: &RassResult) -> Value {
    let crossings: Vec<Value> = r
        .crossings
        .iter()
        .map(|(a, x, ok)| json!({ "level": rational(a), "point": point(x), "on_branch": ok }))
        .collect();
    json!({
        "mu0": rational(&r.certificate.mu0),
        "Q": polygon(&r.certificate.q),
        "branches": r.branches.iter().map(ess_branch).collect::<Vec<_>>(),
        "levels": r.levels.iter().map(rational).collect::<Vec<_>>(),
        "crossings": crossings,
        "pass": r.all_on_branches(),
    })
}

pub fn faces(fs: &[(Vec<Point>, usize)]) -> Value {
    json!({
        "faces": fs.iter().map(|(poly, n)| json!({ "polygon": points(poly), "n": n })).collect::<Vec<_>>()
    })
}

/// Compact, deterministic rendering shared by the CLI and the HTTP service.
pub fn to_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolute::{area_evolute, central_symmetry_set};
    use crate::kernel::{int, rat};
    use crate::polygon::{hex_ea2, hex_sym, validate};

    #[test]
    fn polygon_round_trip() {
        let p = hex_ea2();
        let text = to_string(&polygon(&p));
        assert_eq!(validate(&parse_vertices(&text).unwrap()).unwrap(), p);
        let mixed =
            r#"{"vertices": [[0, 0], ["1", 0.0], [1, "2"], ["0", 3], [-2, 3], ["-4/2", "2"]]}"#;
        assert_eq!(validate(&parse_vertices(mixed).unwrap()).unwrap(), p);
        assert_eq!(
            parse_vertices("[[0,0],[1,\"x\"]]"),
            Err(InputError::Rational("x".into()))
        );
        assert!(matches!(parse_vertices("{"), Err(InputError::Json(_))));
        assert!(matches!(
            parse_vertices("{\"v\":1}"),
            Err(InputError::Shape(_))
        ));
    }

    #[test]
    fn documented_shapes() {
        assert_eq!(
            to_string(&validation(&hex_ea2())),
            r#"{"valid":true,"n":3}"#
        );
        assert_eq!(
            to_string(&chain(&central_symmetry_set(&hex_sym()).unwrap())),
            r#"{"points":[["0","0"]],"degenerate":"point"}"#
        );
        assert_eq!(
            to_string(&chain(&area_evolute(&hex_ea2()).unwrap())),
            r#"{"points":[["0","3/2"],["-1/2","3/2"],["-1/2","2"]],"closed":true,"cusps":[true,true,true]}"#
        );
        let err = Refusal::from(PolygonError::NotConvex(4));
        assert_eq!(
            err.to_json()["error"],
            json!({"kind": "NotConvex", "index": 4, "message": "polygon is not strictly convex at edge 4"})
        );
        assert_eq!(
            parse_point_arg("-1/2, 7/4").unwrap(),
            Point::new(rat(-1, 2), rat(7, 4))
        );
        assert_eq!(rational(&int(-3)), json!("-3"));
    }
}
