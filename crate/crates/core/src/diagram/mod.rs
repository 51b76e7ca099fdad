//! MOY graphs with a plane embedding, their file format, and colorings.
//!
//! A diagram is a set of trivalent vertices whose three flags `l`, `m`, `r`
//! are declared explicitly, directed edges joining flags (drawn as
//! polylines), and vertexless oriented circles. Edge ids and circle ids share
//! one namespace so that a coloring can be written as `id=value` pairs.

mod builtin;
pub mod geometry;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use builtin::{builtin, builtin_text, BUILTIN_NAMES};
pub use geometry::Point;
use geometry::{on_segment, segment_contact, SegmentContact};

pub type VertexId = u32;
pub type EdgeId = u32;
pub type CircleId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    L,
    M,
    R,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::L, Side::M, Side::R];

    pub fn as_str(self) -> &'static str {
        match self {
            Side::L => "l",
            Side::M => "m",
            Side::R => "r",
        }
    }
}

/// A half-edge `(v, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(VertexId, Side)", into = "(VertexId, Side)")]
pub struct Flag {
    pub vertex: VertexId,
    pub side: Side,
}

impl Flag {
    pub const fn new(vertex: VertexId, side: Side) -> Self {
        Self { vertex, side }
    }
}

impl From<(VertexId, Side)> for Flag {
    fn from((vertex, side): (VertexId, Side)) -> Self {
        Flag { vertex, side }
    }
}

impl From<Flag> for (VertexId, Side) {
    fn from(f: Flag) -> Self {
        (f.vertex, f.side)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.vertex, self.side.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    /// `l` and `r` incoming, `m` outgoing.
    Merge,
    /// `m` incoming, `l` and `r` outgoing.
    Split,
}

impl VertexKind {
    /// Whether the flag on `side` carries an incoming edge.
    pub fn is_incoming(self, side: Side) -> bool {
        match self {
            VertexKind::Merge => side != Side::M,
            VertexKind::Split => side == Side::M,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub kind: VertexKind,
    pub pos: Point,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: Flag,
    pub head: Flag,
    #[serde(default)]
    pub waypoints: Vec<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn rot(self) -> i64 {
        match self {
            Orientation::Ccw => 1,
            Orientation::Cw => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub id: CircleId,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagramError {
    #[error("malformed diagram file: {0}")]
    Syntax(String),
    #[error("duplicate {kind} id {id}")]
    DuplicateId { kind: &'static str, id: u32 },
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    DanglingEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("flag {flag} is used by edges {first} and {second}")]
    DuplicateFlag {
        flag: Flag,
        first: EdgeId,
        second: EdgeId,
    },
    #[error("flag {flag} is not attached to any edge")]
    UnusedFlag { flag: Flag },
    #[error("vertex {vertex} is a sink: all three flags are incoming")]
    Sink { vertex: VertexId },
    #[error("vertex {vertex} is a source: all three flags are outgoing")]
    Source { vertex: VertexId },
    #[error("edge {edge} is {actual} at flag {flag}, but a {kind:?} vertex needs it {expected}")]
    FlagDirection {
        edge: EdgeId,
        flag: Flag,
        kind: VertexKind,
        expected: &'static str,
        actual: &'static str,
    },
    #[error("non-finite coordinate at {0}")]
    BadCoordinate(String),
    #[error("vertices {0} and {1} share a position")]
    CoincidentVertices(VertexId, VertexId),
    #[error("edge {0} has a zero-length segment")]
    DegenerateSegment(EdgeId),
    #[error("edge {edge} passes through vertex {vertex}")]
    ThroughVertex { edge: EdgeId, vertex: VertexId },
    #[error("edges {0} and {1} cross")]
    Crossing(EdgeId, EdgeId),
    #[error("edge {0} crosses itself")]
    SelfCrossing(EdgeId),
    #[error("unknown builtin diagram {0:?}")]
    UnknownBuiltin(String),
}

/// Raw file shape; validated into a [`PlanarDiagram`].
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    #[serde(default)]
    vertices: Vec<Vertex>,
    #[serde(default)]
    edges: Vec<Edge>,
    #[serde(default)]
    circles: Vec<Circle>,
}

/// A validated plane MOY graph. Vertices, edges and circles are kept sorted
/// by id; id order is the total order used for normal forms.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarDiagram {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    circles: Vec<Circle>,
    flag_edge: BTreeMap<Flag, EdgeId>,
}

pub fn parse_diagram(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let file: DiagramFile =
        serde_json::from_str(text).map_err(|e| DiagramError::Syntax(e.to_string()))?;
    PlanarDiagram::new(file.vertices, file.edges, file.circles)
}

impl PlanarDiagram {
    pub fn new(
        mut vertices: Vec<Vertex>,
        mut edges: Vec<Edge>,
        mut circles: Vec<Circle>,
    ) -> Result<Self, DiagramError> {
        vertices.sort_by_key(|v| v.id);
        edges.sort_by_key(|e| e.id);
        circles.sort_by_key(|c| c.id);

        for w in vertices.windows(2) {
            if w[0].id == w[1].id {
                return Err(DiagramError::DuplicateId {
                    kind: "vertex",
                    id: w[0].id,
                });
            }
        }
        let mut seen = BTreeSet::new();
        for id in edges
            .iter()
            .map(|e| e.id)
            .chain(circles.iter().map(|c| c.id))
        {
            if !seen.insert(id) {
                return Err(DiagramError::DuplicateId {
                    kind: "edge/circle",
                    id,
                });
            }
        }

        let kinds: BTreeMap<VertexId, VertexKind> =
            vertices.iter().map(|v| (v.id, v.kind)).collect();

        let mut flag_edge = BTreeMap::new();
        // flag -> (edge, incoming?)
        let mut usage: BTreeMap<Flag, (EdgeId, bool)> = BTreeMap::new();
        for e in &edges {
            for (flag, incoming) in [(e.tail, false), (e.head, true)] {
                if !kinds.contains_key(&flag.vertex) {
                    return Err(DiagramError::DanglingEndpoint {
                        edge: e.id,
                        vertex: flag.vertex,
                    });
                }
                if let Some((first, _)) = usage.insert(flag, (e.id, incoming)) {
                    return Err(DiagramError::DuplicateFlag {
                        flag,
                        first,
                        second: e.id,
                    });
                }
                flag_edge.insert(flag, e.id);
            }
        }

        for v in &vertices {
            let dirs: Vec<Option<(EdgeId, bool)>> = Side::ALL
                .iter()
                .map(|&s| usage.get(&Flag::new(v.id, s)).copied())
                .collect();
            if dirs.iter().all(|d| matches!(d, Some((_, true)))) {
                return Err(DiagramError::Sink { vertex: v.id });
            }
            if dirs.iter().all(|d| matches!(d, Some((_, false)))) {
                return Err(DiagramError::Source { vertex: v.id });
            }
            for (&side, dir) in Side::ALL.iter().zip(&dirs) {
                let flag = Flag::new(v.id, side);
                let Some((edge, incoming)) = *dir else {
                    return Err(DiagramError::UnusedFlag { flag });
                };
                let expected = v.kind.is_incoming(side);
                if incoming != expected {
                    let word = |b: bool| if b { "incoming" } else { "outgoing" };
                    return Err(DiagramError::FlagDirection {
                        edge,
                        flag,
                        kind: v.kind,
                        expected: word(expected),
                        actual: word(incoming),
                    });
                }
            }
        }

        let d = PlanarDiagram {
            vertices,
            edges,
            circles,
            flag_edge,
        };
        d.check_geometry()?;
        Ok(d)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertices
            .binary_search_by_key(&id, |v| v.id)
            .ok()
            .map(|i| &self.vertices[i])
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn circle(&self, id: CircleId) -> Option<&Circle> {
        self.circles
            .binary_search_by_key(&id, |c| c.id)
            .ok()
            .map(|i| &self.circles[i])
    }

    /// The edge attached at a flag.
    pub fn edge_at(&self, flag: Flag) -> EdgeId {
        self.flag_edge[&flag]
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.circles.is_empty()
    }

    /// Full polyline of an edge: tail position, waypoints, head position.
    pub fn polyline(&self, e: &Edge) -> Vec<Point> {
        let mut pts = Vec::with_capacity(e.waypoints.len() + 2);
        pts.push(self.vertex(e.tail.vertex).expect("validated").pos);
        pts.extend_from_slice(&e.waypoints);
        pts.push(self.vertex(e.head.vertex).expect("validated").pos);
        pts
    }

    pub fn to_json(&self) -> String {
        let file = DiagramFile {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            circles: self.circles.clone(),
        };
        serde_json::to_string_pretty(&file).expect("diagram serializes")
    }

    fn check_geometry(&self) -> Result<(), DiagramError> {
        for v in &self.vertices {
            if !(v.pos.x.is_finite() && v.pos.y.is_finite()) {
                return Err(DiagramError::BadCoordinate(format!("vertex {}", v.id)));
            }
        }
        for e in &self.edges {
            if e.waypoints
                .iter()
                .any(|p| !(p.x.is_finite() && p.y.is_finite()))
            {
                return Err(DiagramError::BadCoordinate(format!("edge {}", e.id)));
            }
        }
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                if a.pos == b.pos {
                    return Err(DiagramError::CoincidentVertices(a.id, b.id));
                }
            }
        }

        let lines: Vec<(&Edge, Vec<Point>)> =
            self.edges.iter().map(|e| (e, self.polyline(e))).collect();

        for (e, pts) in &lines {
            if pts.windows(2).any(|w| w[0] == w[1]) {
                return Err(DiagramError::DegenerateSegment(e.id));
            }
            // a polyline may only meet the vertices it ends at, and only there
            for v in &self.vertices {
                let ends = [e.tail.vertex, e.head.vertex];
                for (k, w) in pts.windows(2).enumerate() {
                    if !on_segment(w[0], w[1], v.pos) {
                        continue;
                    }
                    let at_tail = k == 0 && w[0] == v.pos && ends[0] == v.id;
                    let at_head = k == pts.len() - 2 && w[1] == v.pos && ends[1] == v.id;
                    if !(at_tail || at_head) {
                        return Err(DiagramError::ThroughVertex {
                            edge: e.id,
                            vertex: v.id,
                        });
                    }
                }
            }
            check_simple(e, pts)?;
        }

        for (i, (e1, p1)) in lines.iter().enumerate() {
            for (e2, p2) in &lines[i + 1..] {
                let shared: Vec<Point> = [e1.tail.vertex, e1.head.vertex]
                    .into_iter()
                    .filter(|v| *v == e2.tail.vertex || *v == e2.head.vertex)
                    .map(|v| self.vertex(v).expect("validated").pos)
                    .collect();
                for s1 in p1.windows(2) {
                    for s2 in p2.windows(2) {
                        match segment_contact(s1[0], s1[1], s2[0], s2[1]) {
                            SegmentContact::Disjoint => {}
                            SegmentContact::Touch(pt) if shared.contains(&pt) => {}
                            _ => return Err(DiagramError::Crossing(e1.id, e2.id)),
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_simple(e: &Edge, pts: &[Point]) -> Result<(), DiagramError> {
    let closed = e.tail.vertex == e.head.vertex;
    let nseg = pts.len() - 1;
    if closed && nseg < 2 {
        return Err(DiagramError::SelfCrossing(e.id));
    }
    for i in 0..nseg {
        for j in i + 1..nseg {
            let contact = segment_contact(pts[i], pts[i + 1], pts[j], pts[j + 1]);
            let ok = match contact {
                SegmentContact::Disjoint => true,
                SegmentContact::Overlap => false,
                SegmentContact::Touch(p) => {
                    (j == i + 1 && p == pts[j])
                        || (closed && i == 0 && j == nseg - 1 && p == pts[0])
                }
            };
            if !ok {
                return Err(DiagramError::SelfCrossing(e.id));
            }
        }
    }
    Ok(())
}

/// A flow on the diagram: a natural number per edge and per circle.
///
/// Every edge and circle of the diagram it was built for has an entry.
/// Ordering is by total flow, then lexicographically by values in id order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub edges: BTreeMap<EdgeId, u64>,
    pub circles: BTreeMap<CircleId, u64>,
}

impl Coloring {
    pub fn zero(d: &PlanarDiagram) -> Self {
        Self {
            edges: d.edges.iter().map(|e| (e.id, 0)).collect(),
            circles: d.circles.iter().map(|c| (c.id, 0)).collect(),
        }
    }

    /// Parse `id=value,id=value,...`; unspecified ids are 0.
    pub fn parse(d: &PlanarDiagram, text: &str) -> Result<Self, ColoringError> {
        let mut out = Self::zero(d);
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| ColoringError::Syntax(item.to_string()))?;
            let id: u32 = k
                .trim()
                .parse()
                .map_err(|_| ColoringError::Syntax(item.to_string()))?;
            let val: u64 = v
                .trim()
                .parse()
                .map_err(|_| ColoringError::Syntax(item.to_string()))?;
            if let Some(slot) = out.edges.get_mut(&id) {
                *slot = val;
            } else if let Some(slot) = out.circles.get_mut(&id) {
                *slot = val;
            } else {
                return Err(ColoringError::UnknownId(id));
            }
        }
        Ok(out)
    }

    pub fn edge(&self, id: EdgeId) -> u64 {
        self.edges.get(&id).copied().unwrap_or(0)
    }

    pub fn circle(&self, id: CircleId) -> u64 {
        self.circles.get(&id).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.edges.values().sum::<u64>() + self.circles.values().sum::<u64>()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// Values in canonical order: edges by id, then circles by id.
    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.edges.values().chain(self.circles.values()).copied()
    }

    pub fn add_assign(&mut self, other: &Coloring) {
        for (id, v) in &other.edges {
            *self.edges.entry(*id).or_insert(0) += v;
        }
        for (id, v) in &other.circles {
            *self.circles.entry(*id).or_insert(0) += v;
        }
    }
}

impl Ord for Coloring {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.values().cmp(other.values()))
            .then_with(|| self.edges.keys().cmp(other.edges.keys()))
            .then_with(|| self.circles.keys().cmp(other.circles.keys()))
    }
}

impl PartialOrd for Coloring {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges
            .iter()
            .chain(self.circles.iter())
            .map(|(id, v)| format!("{id}={v}"))
            .collect();
        if parts.is_empty() {
            f.write_str("(empty)")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub vertex: VertexId,
    pub incoming: u64,
    pub outgoing: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("malformed coloring assignment {0:?}")]
    Syntax(String),
    #[error("no edge or circle with id {0}")]
    UnknownId(u32),
    #[error("coloring has no value for id {0}")]
    MissingValue(u32),
    #[error("flow not conserved at {}", fmt_violations(.0))]
    NotConserved(Vec<Violation>),
}

fn fmt_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| {
            format!(
                "vertex {} (in {}, out {})",
                v.vertex, v.incoming, v.outgoing
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Check flow conservation: at every vertex the incoming values sum to the
/// outgoing values, i.e. `γ(l-edge) + γ(r-edge) = γ(m-edge)`.
pub fn validate_coloring(d: &PlanarDiagram, c: &Coloring) -> Result<(), ColoringError> {
    for id in c.edges.keys() {
        if d.edge(*id).is_none() {
            return Err(ColoringError::UnknownId(*id));
        }
    }
    for id in c.circles.keys() {
        if d.circle(*id).is_none() {
            return Err(ColoringError::UnknownId(*id));
        }
    }
    for e in &d.edges {
        if !c.edges.contains_key(&e.id) {
            return Err(ColoringError::MissingValue(e.id));
        }
    }
    for ci in &d.circles {
        if !c.circles.contains_key(&ci.id) {
            return Err(ColoringError::MissingValue(ci.id));
        }
    }
    let violations: Vec<Violation> = d
        .vertices
        .iter()
        .filter_map(|v| {
            let val = |s| c.edge(d.edge_at(Flag::new(v.id, s)));
            let (incoming, outgoing) = match v.kind {
                VertexKind::Merge => (val(Side::L) + val(Side::R), val(Side::M)),
                VertexKind::Split => (val(Side::M), val(Side::L) + val(Side::R)),
            };
            (incoming != outgoing).then_some(Violation {
                vertex: v.id,
                incoming,
                outgoing,
            })
        })
        .collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ColoringError::NotConserved(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_json() -> String {
        builtin_text("theta").unwrap()
    }

    fn edit(f: impl FnOnce(&mut serde_json::Value)) -> Result<PlanarDiagram, DiagramError> {
        let mut v: serde_json::Value = serde_json::from_str(&theta_json()).unwrap();
        f(&mut v);
        parse_diagram(&v.to_string())
    }

    #[test]
    fn empty_text_is_empty_diagram() {
        let d = parse_diagram("{}").unwrap();
        assert!(d.is_empty());
        let d = parse_diagram(r#"{"vertices":[],"edges":[],"circles":[]}"#).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn malformed_syntax() {
        assert!(matches!(parse_diagram("{"), Err(DiagramError::Syntax(_))));
        assert!(matches!(
            parse_diagram(r#"{"vertices":[{"id":0,"kind":"fork","pos":[0,0]}]}"#),
            Err(DiagramError::Syntax(_))
        ));
    }

    #[test]
    fn duplicate_flag() {
        let r = edit(|v| v["edges"][1]["tail"] = serde_json::json!([0, "r"]));
        assert!(
            matches!(r, Err(DiagramError::DuplicateFlag { .. })),
            "{r:?}"
        );
    }

    #[test]
    fn dangling_endpoint() {
        let r = edit(|v| v["edges"][1]["head"] = serde_json::json!([7, "l"]));
        assert_eq!(
            r,
            Err(DiagramError::DanglingEndpoint { edge: 1, vertex: 7 })
        );
    }

    #[test]
    fn sink_and_source() {
        // reverse both thin edges: vertex 0 becomes a sink, vertex 1 a source
        let r = edit(|v| {
            for i in [1, 2] {
                let t = v["edges"][i]["tail"].clone();
                v["edges"][i]["tail"] = v["edges"][i]["head"].clone();
                v["edges"][i]["head"] = t;
                v["edges"][i]["waypoints"].as_array_mut().unwrap().reverse();
            }
        });
        assert!(
            matches!(
                r,
                Err(DiagramError::Sink { vertex: 0 }) | Err(DiagramError::Source { vertex: 1 })
            ),
            "{r:?}"
        );
    }

    #[test]
    fn wrong_kind_direction() {
        let r = edit(|v| v["vertices"][0]["kind"] = serde_json::json!("merge"));
        assert!(
            matches!(r, Err(DiagramError::FlagDirection { .. })),
            "{r:?}"
        );
    }

    #[test]
    fn crossing_polylines_rejected() {
        // thin edge 1 swings right and back left across the thick edge
        let r = edit(|v| v["edges"][1]["waypoints"] = serde_json::json!([[1, 0.5], [-1, -0.5]]));
        assert_eq!(r, Err(DiagramError::Crossing(0, 1)));
    }

    #[test]
    fn edge_through_vertex_rejected() {
        let r = edit(|v| v["edges"][1]["waypoints"] = serde_json::json!([[0, -1], [-1, 0]]));
        assert!(
            matches!(
                r,
                Err(DiagramError::ThroughVertex { .. }) | Err(DiagramError::Crossing(..))
            ),
            "{r:?}"
        );
    }

    #[test]
    fn duplicate_ids() {
        let r = edit(|v| v["circles"] = serde_json::json!([{"id": 1, "orientation": "ccw"}]));
        assert!(matches!(r, Err(DiagramError::DuplicateId { id: 1, .. })));
    }

    use crate::test_fixtures::TWO_LOOPS;

    #[test]
    fn loop_edges_accepted() {
        let d = parse_diagram(TWO_LOOPS).unwrap();
        assert_eq!(d.edge_at(Flag::new(0, Side::L)), 0);
        assert_eq!(d.edge_at(Flag::new(0, Side::M)), 0);
        // a loop whose polyline returns through its first segment is not simple
        let bad = TWO_LOOPS.replace("[[0, 1], [-1, 1], [-1, 0]]", "[[0, 1]]");
        assert_eq!(parse_diagram(&bad), Err(DiagramError::SelfCrossing(0)));
    }

    #[test]
    fn coloring_conservation() {
        let d = builtin("tetrahedron").unwrap();
        let (a, b, c) = (1u64, 1u64, 1u64);
        let flows = [a + b + c, a + b, c, a, b + c, b];
        let mut col = Coloring::zero(&d);
        for (id, f) in flows.iter().enumerate() {
            col.edges.insert(id as u32, *f);
        }
        assert_eq!(validate_coloring(&d, &col), Ok(()));

        let mut bad = Coloring::zero(&d);
        bad.edges.insert(0, 1);
        match validate_coloring(&d, &bad) {
            Err(ColoringError::NotConserved(vs)) => {
                let ids: Vec<_> = vs.iter().map(|v| v.vertex).collect();
                assert_eq!(ids, vec![0, 1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coloring_vacuous_on_unknot() {
        let d = builtin("unknot").unwrap();
        let c = Coloring::parse(&d, "0=3").unwrap();
        assert_eq!(validate_coloring(&d, &c), Ok(()));
        assert_eq!(Coloring::parse(&d, "4=1"), Err(ColoringError::UnknownId(4)));
        assert!(matches!(
            Coloring::parse(&d, "0:1"),
            Err(ColoringError::Syntax(_))
        ));
    }

    #[test]
    fn coloring_order_is_total_then_lex() {
        let d = builtin("theta").unwrap();
        let c = |s| Coloring::parse(&d, s).unwrap();
        let mut v = vec![c("0=2,1=1,2=1"), c("0=1,2=1"), c("0=1,1=1"), c("")];
        v.sort();
        assert_eq!(v, vec![c(""), c("0=1,2=1"), c("0=1,1=1"), c("0=2,1=1,2=1")]);
    }
}
