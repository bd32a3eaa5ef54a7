//! JSON file formats. Rationals are canonical `"p/q"` strings.
//!
//! Parsing is split in two: anything that is not the expected shape is an
//! [`Error::Parse`]; well-formed data that describes an invalid object
//! (a non-convex grid, an unbalanced honeycomb) gets the domain error.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::axis::{Axis, Sign};
use crate::error::{Error, Result};
use crate::honeycomb::{DualPoint, Edge, HLine, Honeycomb, LineKind};
use crate::lattice::{Cocirculation, ConvexGrid, GridEdge, GridPoint, Triangle};
use crate::rational::{self, Rational};

/// Coordinates beyond this are rejected so lattice arithmetic cannot
/// overflow.
const MAX_COORD: i64 = 1 << 40;
const MAX_WEIGHT: i64 = 1 << 40;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    pub triangles: Vec<TriangleRec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleRec {
    pub up: bool,
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocircFile {
    pub edges: Vec<EdgeValueRec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeValueRec {
    pub a: i64,
    pub b: i64,
    pub dir: u8,
    pub value: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgesFile {
    pub edges: Vec<EdgeRec>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EdgeRec {
    pub a: i64,
    pub b: i64,
    pub dir: u8,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoneycombFile {
    pub vertices: Vec<VertexRec>,
    pub edges: Vec<HEdgeRec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRec {
    pub d1: String,
    pub d2: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HEdgeRec {
    pub class: u8,
    pub weight: i64,
    pub kind: String,
    /// Vertex indices: both ends of a finite edge, the end of a ray.
    pub ends: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
}

fn parse_json<'a, T: Deserialize<'a>>(s: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("plain data serializes")
}

fn point(a: i64, b: i64) -> Result<GridPoint> {
    if a.abs() > MAX_COORD || b.abs() > MAX_COORD {
        return Err(Error::Parse(format!("coordinate out of range: ({a},{b})")));
    }
    Ok(GridPoint::new(a, b))
}

fn axis(dir: u8) -> Result<Axis> {
    Axis::from_label(dir).ok_or_else(|| Error::Parse(format!("dir must be 1, 2 or 3, got {dir}")))
}

fn sign(s: &str) -> Result<Sign> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(Error::Parse(format!("sign must be \"+\" or \"-\", got {s:?}"))),
    }
}

pub fn parse_grid(s: &str) -> Result<ConvexGrid> {
    let f: GridFile = parse_json(s, "grid")?;
    let tris = f
        .triangles
        .iter()
        .map(|t| point(t.a, t.b).map(|p| Triangle { up: t.up, base: p }))
        .collect::<Result<Vec<_>>>()?;
    ConvexGrid::new(tris)
}

pub fn grid_json(g: &ConvexGrid) -> String {
    to_json(&GridFile {
        triangles: g.triangles().map(|t| TriangleRec { up: t.up, a: t.base.a, b: t.base.b }).collect(),
    })
}

/// Values as given; checking them against a grid is up to the caller.
pub fn parse_cocirculation(s: &str) -> Result<Cocirculation> {
    let f: CocircFile = parse_json(s, "cocirculation")?;
    let mut values = std::collections::BTreeMap::new();
    for r in &f.edges {
        let e = GridEdge::new(point(r.a, r.b)?, axis(r.dir)?);
        let v = rational::parse(&r.value)?;
        if values.insert(e, v).is_some() {
            return Err(Error::Parse(format!("edge {e} listed twice")));
        }
    }
    Ok(Cocirculation::new(values))
}

pub fn cocirculation_json(h: &Cocirculation) -> String {
    to_json(&CocircFile {
        edges: h
            .iter()
            .map(|(e, v)| EdgeValueRec {
                a: e.tail.a,
                b: e.tail.b,
                dir: e.axis.label(),
                value: rational::format(v),
            })
            .collect(),
    })
}

pub fn parse_edges(s: &str) -> Result<BTreeSet<GridEdge>> {
    let f: EdgesFile = parse_json(s, "edge set")?;
    f.edges.iter().map(|r| Ok(GridEdge::new(point(r.a, r.b)?, axis(r.dir)?))).collect()
}

pub fn edges_json(edges: &BTreeSet<GridEdge>) -> String {
    to_json(&EdgesFile {
        edges: edges.iter().map(|e| EdgeRec { a: e.tail.a, b: e.tail.b, dir: e.axis.label() }).collect(),
    })
}

pub fn parse_honeycomb(s: &str) -> Result<Honeycomb> {
    let f: HoneycombFile = parse_json(s, "honeycomb")?;
    let verts = f
        .vertices
        .iter()
        .map(|v| Ok(DualPoint::new(rational::parse(&v.d1)?, rational::parse(&v.d2)?)))
        .collect::<Result<Vec<_>>>()?;
    let vertex = |i: usize| {
        verts
            .get(i)
            .ok_or_else(|| Error::Parse(format!("edge end {i} is not a vertex index")))
    };
    let mut edges = Vec::with_capacity(f.edges.len());
    for r in &f.edges {
        let ax = axis(r.class)?;
        if !(1..=MAX_WEIGHT).contains(&r.weight) {
            return Err(Error::Parse(format!("edge weight out of range: {}", r.weight)));
        }
        let line = match (r.kind.as_str(), &r.ends[..], &r.sign) {
            ("finite", [i, j], None) => {
                let (p, q) = (vertex(*i)?, vertex(*j)?);
                if p == q || p.d(ax) != q.d(ax) {
                    return Err(Error::Parse(format!("ends {i}, {j} do not span a class-{ax} edge")));
                }
                HLine::segment(ax, p.d(ax).clone(), p.param(ax).clone(), q.param(ax).clone())
            }
            ("ray", [i], Some(s)) => HLine::ray_from(vertex(*i)?, ax, sign(s)?),
            _ => {
                return Err(Error::Parse(format!(
                    "edge must be finite with two ends or a ray with one end and a sign, got {:?}",
                    r.kind
                )))
            }
        };
        edges.push(Edge::new(line, r.weight));
    }
    Honeycomb::from_edges(edges)
}

pub fn honeycomb_json(hc: &Honeycomb) -> String {
    let vertices = hc
        .vertices()
        .iter()
        .map(|v| VertexRec {
            d1: rational::format(v.d(Axis::One)),
            d2: rational::format(v.d(Axis::Two)),
        })
        .collect();
    let edges = (0..hc.edges().len())
        .map(|k| {
            let e = hc.edge(k);
            let (lo, hi) = hc.ends(k);
            let ends: Vec<usize> = [lo, hi].into_iter().flatten().collect();
            let (kind, sign) = match e.line.kind() {
                LineKind::Ray(s) => ("ray", Some(s.symbol().to_string())),
                _ => ("finite", None),
            };
            HEdgeRec { class: e.axis().label(), weight: e.weight, kind: kind.into(), ends, sign }
        })
        .collect();
    to_json(&HoneycombFile { vertices, edges })
}

/// Parse a single fraction, for callers that only want the number format.
pub fn parse_rational(s: &str) -> Result<Rational> {
    rational::parse(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{counterexample_instance, three_vertex_honeycomb};
    use crate::lattice::random_concave;

    #[test]
    fn grid_and_cocirculation_round_trip() {
        let g = ConvexGrid::hexagon(2, 3, 1, 2).unwrap();
        let h = random_concave(&g, 4, 6);
        assert_eq!(parse_grid(&grid_json(&g)).unwrap(), g);
        assert_eq!(parse_cocirculation(&cocirculation_json(&h)).unwrap(), h);
    }

    #[test]
    fn honeycomb_round_trip() {
        let hc = three_vertex_honeycomb().unwrap();
        assert_eq!(parse_honeycomb(&honeycomb_json(&hc)).unwrap(), hc);
        let (g, h) = counterexample_instance().unwrap();
        let hc = crate::duality::grid_to_honeycomb(&g, &h).unwrap();
        assert_eq!(parse_honeycomb(&honeycomb_json(&hc)).unwrap(), hc);
    }

    #[test]
    fn edges_round_trip() {
        let g = ConvexGrid::three_side(3).unwrap();
        let set: BTreeSet<GridEdge> = g.boundary_edges().collect();
        assert_eq!(parse_edges(&edges_json(&set)).unwrap(), set);
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        for bad in [
            "",
            "{}",
            r#"{"triangles":[{"up":1,"a":0,"b":0}]}"#,
            r#"{"triangles":[],"x":1}"#,
            r#"{"triangles":[{"up":true,"a":9223372036854775807,"b":0}]}"#,
        ] {
            assert!(matches!(parse_grid(bad), Err(Error::Parse(_))), "{bad}");
        }
        assert!(matches!(
            parse_cocirculation(r#"{"edges":[{"a":0,"b":0,"dir":4,"value":"1/2"}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_cocirculation(r#"{"edges":[{"a":0,"b":0,"dir":1,"value":"1/0"}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_honeycomb(r#"{"vertices":[],"edges":[{"class":1,"weight":1,"kind":"ray","ends":[0],"sign":"+"}]}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn well_formed_but_invalid_is_a_domain_error() {
        let e = parse_grid(r#"{"triangles":[]}"#).unwrap_err();
        assert!(!e.is_input_error());
        let lone_ray = r#"{"vertices":[{"d1":"0/1","d2":"0/1"}],
            "edges":[{"class":1,"weight":1,"kind":"ray","ends":[0],"sign":"+"}]}"#;
        assert!(!parse_honeycomb(lone_ray).unwrap_err().is_input_error());
    }
}
