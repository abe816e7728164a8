//! Feature layers of a scene, as JSON and as SVG. The CLI and the HTTP service
//! both render through here so their output is identical.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::chords::nchords_faces;
use crate::equidistant::{equidistant, ess_trace};
use crate::evolute::{area_evolute, central_symmetry_set, mid_parallel};
use crate::io::{self, InputError, Refusal};
use crate::kernel::{
    cross, line_intersect, parse_rational, to_f64, Line, Point, Rational, Segment,
};
use crate::parallels::{
    almost_symmetry, one_diagonal_midpoints, rass, rectified_parallel, rectified_parallels,
    WedgeFrame,
};
use crate::pd::{choose_convex_mu, half_area_midpoints, pd_transform};
use crate::polygon::CposPolygon;
use crate::svg::{self, Canvas};

/// Levels sampled when checking the RASS.
pub const RASS_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Ae,
    Css,
    Diagonals,
    Midparallels,
    Equidistant,
    Ess,
    Pd,
    NPoints,
    AreaParallel,
    AlmostSymmetry,
    Rass,
    NchordsMap,
}

impl Feature {
    pub const ALL: [Feature; 12] = [
        Feature::Ae,
        Feature::Css,
        Feature::Diagonals,
        Feature::Midparallels,
        Feature::Equidistant,
        Feature::Ess,
        Feature::Pd,
        Feature::NPoints,
        Feature::AreaParallel,
        Feature::AlmostSymmetry,
        Feature::Rass,
        Feature::NchordsMap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Ae => "ae",
            Feature::Css => "css",
            Feature::Diagonals => "diagonals",
            Feature::Midparallels => "midparallels",
            Feature::Equidistant => "equidistant",
            Feature::Ess => "ess",
            Feature::Pd => "pd",
            Feature::NPoints => "n_points",
            Feature::AreaParallel => "area_parallel",
            Feature::AlmostSymmetry => "almost_symmetry",
            Feature::Rass => "rass",
            Feature::NchordsMap => "nchords_map",
        }
    }
}

impl FromStr for Feature {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| InputError::Shape(format!("unknown feature {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mu {
    Value(Rational),
    Auto,
}

impl FromStr for Mu {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "auto" {
            return Ok(Mu::Auto);
        }
        parse_rational(s)
            .map(Mu::Value)
            .map_err(|_| InputError::Rational(s.to_string()))
    }
}

/// Parameters shared by the parametrised features.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub t: Option<Rational>,
    pub level: Option<Rational>,
    pub mu: Option<Mu>,
}

pub fn parse_features(list: &str) -> Result<Vec<Feature>, InputError> {
    let mut out: Vec<Feature> = Vec::new();
    for part in list.split(',').filter(|s| !s.trim().is_empty()) {
        let f: Feature = part.parse()?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

fn missing(name: &str) -> Refusal {
    Refusal::new(
        "MissingParameter",
        None,
        format!("parameter {name} is required"),
    )
}

fn resolve_mu(p: &CposPolygon, mu: &Option<Mu>) -> Result<Rational, Refusal> {
    match mu {
        Some(Mu::Value(m)) => Ok(m.clone()),
        Some(Mu::Auto) | None => Ok(choose_convex_mu(p)?),
    }
}

/// Portion of the mid-parallel `m(i+½)` inside the polygon.
pub fn mid_parallel_segment(p: &CposPolygon, i: i64) -> Segment {
    let line = mid_parallel(p, i);
    let mut hits: Vec<(Rational, Point)> = Vec::new();
    for k in 1..=p.len() as i64 {
        let edge = Segment::new(p.vertex(k).clone(), p.vertex(k + 1).clone());
        let Ok(el) = Line::new(edge.a.clone(), edge.direction()) else {
            continue;
        };
        if let Some(x) = line_intersect(&line, &el) {
            if edge.contains(&x) {
                let s = (&x - &line.base).dot(&line.dir);
                hits.push((s, x));
            }
        }
    }
    hits.sort_by(|a, b| a.0.cmp(&b.0));
    match (hits.first(), hits.last()) {
        (Some(a), Some(b)) => Segment::new(a.1.clone(), b.1.clone()),
        _ => Segment::new(line.base.clone(), line.base.clone()),
    }
}

/// JSON for one feature; the CLI prints exactly this value.
pub fn layer(p: &CposPolygon, f: Feature, params: &Params) -> Result<Value, Refusal> {
    let n = p.n() as i64;
    Ok(match f {
        Feature::Ae => io::chain(&area_evolute(p)?),
        Feature::Css => io::chain(&central_symmetry_set(p)?),
        Feature::Diagonals => json!({
            "segments": (1..=n)
                .map(|i| io::segment(&Segment::new(p.vertex(i).clone(), p.vertex(i + n).clone())))
                .collect::<Vec<_>>()
        }),
        Feature::Midparallels => json!({
            "lines": (1..=n)
                .map(|i| json!({
                    "through": io::point(&p.diagonal_midpoint(i)),
                    "direction": [io::rational(&p.edge(i).x), io::rational(&p.edge(i).y)],
                    "segment": io::segment(&mid_parallel_segment(p, i)),
                }))
                .collect::<Vec<_>>()
        }),
        Feature::Equidistant => {
            let t = params.t.as_ref().ok_or_else(|| missing("t"))?;
            io::equidistant(&equidistant(p, t))
        }
        Feature::Ess => io::ess(&ess_trace(p)?),
        Feature::Pd => {
            let mu = resolve_mu(p, &params.mu)?;
            io::pd(&pd_transform(p, &mu)?, &half_area_midpoints(p))
        }
        Feature::NPoints => json!({ "points": io::points(&half_area_midpoints(p)) }),
        Feature::AreaParallel => {
            let a = params.level.as_ref().ok_or_else(|| missing("level"))?;
            io::rectified_parallel(p, &rectified_parallel(p, a)?)
        }
        Feature::AlmostSymmetry => {
            io::certificate(almost_symmetry(p)?.as_ref(), &one_diagonal_midpoints(p))
        }
        Feature::Rass => io::rass(&rass(p, RASS_SAMPLES)?),
        Feature::NchordsMap => io::faces(&nchords_faces(p)),
    })
}

/// Scene document: requested layers that could be computed, refusals for the rest.
pub fn scene(id: &str, p: &CposPolygon, features: &[Feature], params: &Params) -> Value {
    let mut layers = Map::new();
    let mut refusals = Map::new();
    for f in features {
        match layer(p, *f, params) {
            Ok(v) => {
                layers.insert(f.name().into(), v);
            }
            Err(r) => {
                refusals.insert(f.name().into(), r.to_json()["error"].clone());
            }
        }
    }
    let mut ps = Map::new();
    if let Some(t) = &params.t {
        ps.insert("t".into(), io::rational(t));
    }
    if let Some(a) = &params.level {
        ps.insert("level".into(), io::rational(a));
    }
    match &params.mu {
        Some(Mu::Value(m)) => {
            ps.insert("mu".into(), io::rational(m));
        }
        Some(Mu::Auto) => {
            ps.insert("mu".into(), json!("auto"));
        }
        None => {}
    }
    json!({
        "id": id,
        "polygon": io::polygon(p),
        "features": features.iter().map(|f| f.name()).collect::<Vec<_>>(),
        "params": ps,
        "layers": layers,
        "refusals": refusals,
    })
}

fn draw_chain_cusps(c: &mut Canvas, chain: &crate::evolute::PolyChain, colour: &str, class: &str) {
    if chain.points.len() == 1 {
        c.dot(&chain.points[0], colour, class);
        return;
    }
    c.polyline(&chain.points, chain.closed, colour, class);
    for x in chain.cusp_points() {
        c.dot(&x, colour, &format!("{class} cusp"));
    }
}

/// Sampled hyperbola arc between the ends of an `L` segment (display only).
fn approximate_arc(
    p: &CposPolygon,
    cell: (usize, usize),
    a: &Point,
    b: &Point,
) -> Option<Vec<(f64, f64)>> {
    let w = WedgeFrame::new(p, cell.0 as i64, cell.1 as i64).ok()?;
    let det = cross(&w.axis_u, &w.axis_v);
    let coords = |x: &Point| {
        let d = x - &w.apex;
        (
            to_f64(&(cross(&d, &w.axis_v) / &det)),
            to_f64(&(cross(&w.axis_u, &d) / &det)),
        )
    };
    let ((x0, y0), (x1, _)) = (coords(a), coords(b));
    let k = x0 * y0;
    let (ax, ay) = w.apex.to_f64();
    let (ux, uy) = (to_f64(&w.axis_u.x), to_f64(&w.axis_u.y));
    let (vx, vy) = (to_f64(&w.axis_v.x), to_f64(&w.axis_v.y));
    Some(
        (0..=16)
            .map(|s| {
                let xi = x0 + (x1 - x0) * s as f64 / 16.0;
                let eta = if xi == 0.0 { 0.0 } else { k / xi };
                (ax + xi * ux + eta * vx, -(ay + xi * uy + eta * vy))
            })
            .collect(),
    )
}

fn draw(c: &mut Canvas, p: &CposPolygon, f: Feature, params: &Params) -> Result<(), Refusal> {
    let n = p.n() as i64;
    match f {
        Feature::Ae => draw_chain_cusps(c, &area_evolute(p)?, svg::AE, "ae"),
        Feature::Css => draw_chain_cusps(c, &central_symmetry_set(p)?, svg::CSS, "css"),
        Feature::Diagonals => {
            for i in 1..=n {
                let s = Segment::new(p.vertex(i).clone(), p.vertex(i + n).clone());
                c.segment(&s, svg::DIAGONAL, "diagonal", true);
            }
        }
        Feature::Midparallels => {
            for i in 1..=n {
                c.segment(
                    &mid_parallel_segment(p, i),
                    svg::DIAGONAL,
                    "midparallel",
                    false,
                );
            }
        }
        Feature::Equidistant => {
            let t = params.t.as_ref().ok_or_else(|| missing("t"))?;
            draw_chain_cusps(
                c,
                &equidistant(p, t).chain(),
                svg::EQUIDISTANT,
                "equidistant",
            );
        }
        Feature::Ess => {
            for b in ess_trace(p)? {
                for s in &b.segments {
                    c.segment(&s.segment, svg::ESS, "ess", false);
                }
            }
        }
        Feature::Pd => {
            let mu = resolve_mu(p, &params.mu)?;
            let trace = pd_transform(p, &mu)?;
            c.polygon(&trace.q, svg::PD, None, "pd");
            for x in half_area_midpoints(p) {
                c.dot(&x, svg::PD, "n-point");
            }
        }
        Feature::NPoints => {
            for x in half_area_midpoints(p) {
                c.dot(&x, svg::PD, "n-point");
            }
        }
        Feature::AreaParallel => {
            let a = params.level.as_ref().ok_or_else(|| missing("level"))?;
            let rp = rectified_parallel(p, a)?;
            for l in &rp.segments {
                if let Some(arc) =
                    approximate_arc(p, l.cell, &l.ends[0].midpoint, &l.ends[1].midpoint)
                {
                    c.polyline_f64(&arc, svg::APPROXIMATE, "approximate", Some(1.0));
                }
            }
            for chain in &rp.chains {
                draw_chain_cusps(c, chain, svg::PARALLEL, "area-parallel");
            }
        }
        Feature::AlmostSymmetry => {
            if let Some(cert) = almost_symmetry(p)? {
                c.polygon(cert.q.vertices(), svg::PD, None, "q-mu0");
            }
            for x in one_diagonal_midpoints(p) {
                c.ring(&x, svg::POLYGON, "one-diagonal-midpoint");
            }
        }
        Feature::Rass => {
            let r = rass(p, RASS_SAMPLES)?;
            c.polygon(r.certificate.q.vertices(), svg::PD, None, "q-mu0");
            for rp in rectified_parallels(p, &r.levels)? {
                for chain in &rp.chains {
                    c.polyline(&chain.points, true, svg::APPROXIMATE, "sampled-parallel");
                }
            }
            for b in &r.branches {
                for s in &b.segments {
                    c.segment(&s.segment, svg::ESS, "rass", false);
                }
            }
        }
        Feature::NchordsMap => {
            for (face, count) in nchords_faces(p) {
                c.polygon(
                    &face,
                    svg::APPROXIMATE,
                    Some(svg::face_colour(count)),
                    &format!("face n{count}"),
                );
            }
        }
    }
    Ok(())
}

/// SVG of the polygon with `features` drawn on top in the given order.
pub fn render_svg(
    p: &CposPolygon,
    features: &[Feature],
    params: &Params,
) -> Result<String, Refusal> {
    let mut c = Canvas::new(p);
    let (under, over): (Vec<Feature>, Vec<Feature>) =
        features.iter().partition(|f| **f == Feature::NchordsMap);
    for f in under {
        draw(&mut c, p, f, params)?;
    }
    c.polygon(p.vertices(), svg::POLYGON, None, "polygon");
    for f in over {
        draw(&mut c, p, f, params)?;
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use crate::polygon::{hex_ea2, hex_sym};

    #[test]
    fn features_parse() {
        assert_eq!(
            parse_features("ae, css,ae").unwrap(),
            vec![Feature::Ae, Feature::Css]
        );
        assert!(parse_features("ae,bogus").is_err());
        assert_eq!("auto".parse::<Mu>().unwrap(), Mu::Auto);
        assert_eq!("3/2".parse::<Mu>().unwrap(), Mu::Value(rat(3, 2)));
    }

    #[test]
    fn scene_layers_and_refusals() {
        let p = hex_ea2();
        let params = Params {
            t: Some(rat(1, 2)),
            level: Some(rat(13, 4)),
            mu: None,
        };
        let doc = scene(
            "s1",
            &p,
            &parse_features("ae,css,ess,equidistant,area_parallel").unwrap(),
            &params,
        );
        assert_eq!(
            doc["layers"]["ae"],
            layer(&p, Feature::Ae, &params).unwrap()
        );
        assert_eq!(
            doc["layers"]["equidistant"]["points"],
            doc["layers"]["ae"]["points"]
                .clone()
                .as_array()
                .map(|a| {
                    let mut v = a.clone();
                    v.extend(a.iter().cloned());
                    Value::Array(v)
                })
                .unwrap()
        );
        let sym = scene(
            "s2",
            &hex_sym(),
            &[Feature::Ess, Feature::Pd, Feature::Equidistant],
            &Params::default(),
        );
        assert_eq!(sym["layers"]["ess"], json!({"branches": []}));
        assert_eq!(sym["refusals"]["pd"]["kind"], json!("SymmetricInput"));
        assert_eq!(
            sym["refusals"]["equidistant"]["kind"],
            json!("MissingParameter")
        );
    }

    #[test]
    fn midparallel_segments_span_the_polygon() {
        let p = hex_ea2();
        let s = mid_parallel_segment(&p, 1);
        let ends = [
            Point::new(rat(-3, 2), rat(3, 2)),
            Point::new(rat(1, 1), rat(3, 2)),
        ];
        assert!(ends.contains(&s.a) && ends.contains(&s.b) && s.a != s.b);
    }

    #[test]
    fn svg_is_deterministic() {
        let p = hex_ea2();
        let params = Params {
            t: Some(rat(1, 4)),
            level: Some(rat(2, 1)),
            mu: Some(Mu::Auto),
        };
        let all = Feature::ALL.to_vec();
        let a = render_svg(&p, &all, &params).unwrap();
        assert_eq!(a, render_svg(&p, &all, &params).unwrap());
        assert!(a.contains(r#"class="ae cusp""#));
        assert!(a.contains(r#"class="approximate""#));
        assert!(a.contains("stroke-dasharray"));
    }
}
