//! The cycle set of a diagram: enumeration, rotation numbers, the
//! intersection pairing and positivity.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::geometry::{
    doubled_signed_area, end_direction, interior_turning, start_direction, turning_angle,
};
use crate::diagram::{
    CircleId, Coloring, EdgeId, Flag, PlanarDiagram, Point, Side, VertexId, VertexKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error(
        "circuit through edges {0:?} encloses zero signed area; add waypoints so its rotation number is defined"
    )]
    DegenerateRotation(Vec<EdgeId>),
}

/// One connected piece of a cycle: either a directed circuit of edges (in
/// flow order, starting at the edge leaving its smallest vertex) or a circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub edges: Vec<EdgeId>,
    pub circle: Option<CircleId>,
    pub rot: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub edges: BTreeSet<EdgeId>,
    pub circles: BTreeSet<CircleId>,
    pub halfedges: BTreeSet<Flag>,
    pub components: Vec<Component>,
    pub rot: i64,
}

impl Cycle {
    pub fn empty() -> Self {
        Cycle {
            edges: BTreeSet::new(),
            circles: BTreeSet::new(),
            halfedges: BTreeSet::new(),
            components: Vec::new(),
            rot: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.circles.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.halfedges.iter().map(|f| f.vertex).collect()
    }

    /// Disjoint union; the caller guarantees vertex-disjointness.
    pub fn union(&self, other: &Cycle) -> Cycle {
        let mut out = self.clone();
        out.edges.extend(other.edges.iter().copied());
        out.circles.extend(other.circles.iter().copied());
        out.halfedges.extend(other.halfedges.iter().copied());
        out.components.extend(other.components.iter().cloned());
        out.components
            .sort_by(|a, b| (&a.edges, a.circle).cmp(&(&b.edges, b.circle)));
        out.rot += other.rot;
        out
    }

    /// Indicator flow of the cycle.
    pub fn flow(&self, d: &PlanarDiagram) -> Coloring {
        let mut c = Coloring::zero(d);
        for e in &self.edges {
            c.edges.insert(*e, 1);
        }
        for ci in &self.circles {
            c.circles.insert(*ci, 1);
        }
        c
    }

    fn key(&self) -> (usize, Vec<EdgeId>, Vec<CircleId>) {
        (
            self.edges.len() + self.circles.len(),
            self.edges.iter().copied().collect(),
            self.circles.iter().copied().collect(),
        )
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let mut parts: Vec<String> = self.edges.iter().map(|e| format!("e{e}")).collect();
        parts.extend(self.circles.iter().map(|c| format!("o{c}")));
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All cycles of a diagram in canonical order; index 0 is the empty cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSet {
    cycles: Vec<Cycle>,
}

impl CycleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn get(&self, i: usize) -> &Cycle {
        &self.cycles[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cycle> {
        self.cycles.iter()
    }

    pub fn as_slice(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Index of the cycle with exactly these edges and circles.
    pub fn position(&self, edges: &[EdgeId], circles: &[CircleId]) -> Option<usize> {
        let e: BTreeSet<_> = edges.iter().copied().collect();
        let c: BTreeSet<_> = circles.iter().copied().collect();
        self.cycles
            .iter()
            .position(|cy| cy.edges == e && cy.circles == c)
    }

    /// Matrix of `2⟨C_i, C_j⟩`.
    pub fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        self.cycles
            .iter()
            .map(|a| {
                self.cycles
                    .iter()
                    .map(|b| intersection_pairing(a, b))
                    .collect()
            })
            .collect()
    }
}

impl<'a> IntoIterator for &'a CycleSet {
    type Item = &'a Cycle;
    type IntoIter = std::slice::Iter<'a, Cycle>;
    fn into_iter(self) -> Self::IntoIter {
        self.cycles.iter()
    }
}

/// Connected cycles: every vertex-simple directed circuit, and every circle.
pub fn elementary_circuits(d: &PlanarDiagram) -> Result<Vec<Cycle>, CycleError> {
    let mut out_edges: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for e in d.edges() {
        out_edges.entry(e.tail.vertex).or_default().push(e.id);
    }

    let mut circuits: Vec<Vec<EdgeId>> = Vec::new();
    for start in d.vertices().iter().map(|v| v.id) {
        let mut path = Vec::new();
        let mut on_path = BTreeSet::from([start]);
        search(
            d,
            &out_edges,
            start,
            start,
            &mut path,
            &mut on_path,
            &mut circuits,
        );
    }

    let mut out = Vec::with_capacity(circuits.len() + d.circles().len());
    for edges in circuits {
        let rot = rotation_number(d, &edges)?;
        let halfedges = edges
            .iter()
            .flat_map(|&e| {
                let e = d.edge(e).expect("edge exists");
                [e.tail, e.head]
            })
            .collect();
        out.push(Cycle {
            edges: edges.iter().copied().collect(),
            circles: BTreeSet::new(),
            halfedges,
            components: vec![Component {
                edges,
                circle: None,
                rot,
            }],
            rot,
        });
    }
    for c in d.circles() {
        let rot = c.orientation.rot();
        out.push(Cycle {
            edges: BTreeSet::new(),
            circles: BTreeSet::from([c.id]),
            halfedges: BTreeSet::new(),
            components: vec![Component {
                edges: Vec::new(),
                circle: Some(c.id),
                rot,
            }],
            rot,
        });
    }
    out.sort_by_key(Cycle::key);
    Ok(out)
}

/// Depth-first search for circuits whose smallest vertex is `start`.
fn search(
    d: &PlanarDiagram,
    out_edges: &BTreeMap<VertexId, Vec<EdgeId>>,
    start: VertexId,
    at: VertexId,
    path: &mut Vec<EdgeId>,
    on_path: &mut BTreeSet<VertexId>,
    found: &mut Vec<Vec<EdgeId>>,
) {
    let Some(edges) = out_edges.get(&at) else {
        return;
    };
    for &eid in edges {
        let next = d.edge(eid).expect("edge exists").head.vertex;
        if next == start {
            let mut c = path.clone();
            c.push(eid);
            found.push(c);
        } else if next > start && !on_path.contains(&next) {
            path.push(eid);
            on_path.insert(next);
            search(d, out_edges, start, next, path, on_path, found);
            on_path.remove(&next);
            path.pop();
        }
    }
}

/// Closed polygon traced by a circuit given in flow order.
fn circuit_polygon(d: &PlanarDiagram, edges: &[EdgeId]) -> Vec<Point> {
    let mut pts = Vec::new();
    for &e in edges {
        let line = d.polyline(d.edge(e).expect("edge exists"));
        pts.extend_from_slice(&line[..line.len() - 1]);
    }
    pts
}

/// Rotation number of a connected circuit from the sign of its shoelace area.
pub fn rotation_number(d: &PlanarDiagram, circuit: &[EdgeId]) -> Result<i64, CycleError> {
    let area = doubled_signed_area(&circuit_polygon(d, circuit));
    if area > 0.0 {
        Ok(1)
    } else if area < 0.0 {
        Ok(-1)
    } else {
        Err(CycleError::DegenerateRotation(circuit.to_vec()))
    }
}

/// Every cycle: the empty cycle plus all unions of pairwise vertex-disjoint
/// elementary circuits, in canonical order.
pub fn all_cycles(d: &PlanarDiagram) -> Result<CycleSet, CycleError> {
    let circuits = elementary_circuits(d)?;
    let verts: Vec<BTreeSet<VertexId>> = circuits.iter().map(Cycle::vertices).collect();
    let mut cycles = Vec::new();
    let mut chosen = Vec::new();
    independent_sets(&circuits, &verts, 0, &mut chosen, &mut cycles);
    cycles.sort_by_key(Cycle::key);
    Ok(CycleSet { cycles })
}

fn independent_sets(
    circuits: &[Cycle],
    verts: &[BTreeSet<VertexId>],
    from: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Cycle>,
) {
    out.push(
        chosen
            .iter()
            .fold(Cycle::empty(), |acc, &i| acc.union(&circuits[i])),
    );
    for i in from..circuits.len() {
        if chosen.iter().all(|&j| verts[i].is_disjoint(&verts[j])) {
            chosen.push(i);
            independent_sets(circuits, verts, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// `2⟨C, C'⟩ = #{v : (v,l) ∈ C, (v,r) ∈ C'} − #{v : (v,r) ∈ C, (v,l) ∈ C'}`.
pub fn intersection_pairing(c: &Cycle, c2: &Cycle) -> i64 {
    let count = |a: &Cycle, b: &Cycle| {
        a.halfedges
            .iter()
            .filter(|f| f.side == Side::L && b.halfedges.contains(&Flag::new(f.vertex, Side::R)))
            .count() as i64
    };
    count(c, c2) - count(c2, c)
}

/// Every nonempty cycle has positive rotation number, i.e. every connected
/// one turns counter-clockwise.
pub fn is_positive(cycles: &CycleSet) -> bool {
    cycles
        .iter()
        .all(|c| c.components.iter().all(|k| k.rot == 1))
}

/// Rotation number of an arbitrary flow, computed from turning angles.
///
/// For a flow `γ` this is `1/2π` times the total turning of `γ` copies of
/// every edge plus the turning at each vertex from the incoming to the
/// outgoing edge, weighted by the thin edge's flow, plus the circles. On the
/// indicator of a cycle it equals `rot`, and it is additive in the flow, so
/// on `Σ α_C 1_C` it returns `Σ α_C rot(C)` independently of how the flow is
/// decomposed.
pub fn flow_rotation(d: &PlanarDiagram, gamma: &Coloring) -> i64 {
    let mut turning = 0.0;
    for e in d.edges() {
        let g = gamma.edge(e.id);
        if g > 0 {
            turning += g as f64 * interior_turning(&d.polyline(e));
        }
    }
    for v in d.vertices() {
        let m_edge = d
            .edge(d.edge_at(Flag::new(v.id, Side::M)))
            .expect("edge exists");
        let m_line = d.polyline(m_edge);
        for s in [Side::L, Side::R] {
            let e = d.edge(d.edge_at(Flag::new(v.id, s))).expect("edge exists");
            let g = gamma.edge(e.id);
            if g == 0 {
                continue;
            }
            let line = d.polyline(e);
            let t = match v.kind {
                VertexKind::Merge => turning_angle(end_direction(&line), start_direction(&m_line)),
                VertexKind::Split => turning_angle(end_direction(&m_line), start_direction(&line)),
            };
            turning += g as f64 * t;
        }
    }
    let circles: i64 = d
        .circles()
        .iter()
        .map(|c| gamma.circle(c.id) as i64 * c.orientation.rot())
        .sum();
    (turning / (2.0 * PI)).round() as i64 + circles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{builtin, parse_diagram};
    use crate::test_fixtures::TWO_LOOPS;

    fn flags(list: &[(u32, Side)]) -> BTreeSet<Flag> {
        list.iter().map(|&f| Flag::from(f)).collect()
    }

    /// Tetrahedron cycles `(C_r, C_g, C_b)`.
    fn rgb(cs: &CycleSet) -> (&Cycle, &Cycle, &Cycle) {
        let r = cs.position(&[0, 1, 4, 5], &[]).unwrap();
        let g = cs.position(&[0, 1, 3], &[]).unwrap();
        let b = cs.position(&[0, 2, 4], &[]).unwrap();
        (cs.get(r), cs.get(g), cs.get(b))
    }

    #[test]
    fn counts() {
        for (name, n) in [("unknot", 2), ("tetrahedron", 4), ("theta", 3)] {
            let cs = all_cycles(&builtin(name).unwrap()).unwrap();
            assert_eq!(cs.len(), n, "{name}");
            assert!(cs.get(0).is_empty());
        }
        let d = parse_diagram(TWO_LOOPS).unwrap();
        let cs = all_cycles(&d).unwrap();
        assert_eq!(cs.len(), 4);
        assert_eq!(cs.get(3).components.len(), 2);
        assert_eq!(cs.get(3).rot, 2);
        assert!(is_positive(&cs));
    }

    #[test]
    fn two_disjoint_circles() {
        let d = parse_diagram(
            r#"{"circles":[{"id":0,"orientation":"ccw"},{"id":1,"orientation":"ccw"}]}"#,
        )
        .unwrap();
        let cs = all_cycles(&d).unwrap();
        let sets: Vec<Vec<u32>> = cs
            .iter()
            .map(|c| c.circles.iter().copied().collect())
            .collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn tetrahedron_halfedges_and_rotation() {
        use Side::*;
        let cs = all_cycles(&builtin("tetrahedron").unwrap()).unwrap();
        let (r, g, b) = rgb(&cs);
        assert_eq!(
            r.halfedges,
            flags(&[
                (0, L),
                (0, M),
                (1, M),
                (1, R),
                (2, L),
                (2, M),
                (3, M),
                (3, R)
            ])
        );
        assert_eq!(
            g.halfedges,
            flags(&[(0, L), (0, M), (1, L), (1, M), (3, L), (3, M)])
        );
        assert_eq!(
            b.halfedges,
            flags(&[(0, M), (0, R), (1, M), (1, R), (2, M), (2, R)])
        );
        assert_eq!((r.rot, g.rot, b.rot), (-1, 1, -1));
        assert!(!is_positive(&cs));
    }

    #[test]
    fn tetrahedron_pairing() {
        let cs = all_cycles(&builtin("tetrahedron").unwrap()).unwrap();
        let (r, g, b) = rgb(&cs);
        assert_eq!(intersection_pairing(r, g), -2);
        assert_eq!(intersection_pairing(r, b), 2);
        assert_eq!(intersection_pairing(g, b), 2);
        for c in &cs {
            assert_eq!(intersection_pairing(c, c), 0);
            assert_eq!(intersection_pairing(c, cs.get(0)), 0);
        }
    }

    #[test]
    fn positivity_of_fixtures() {
        let pos = |n| is_positive(&all_cycles(&builtin(n).unwrap()).unwrap());
        assert!(pos("unknot"));
        assert!(pos("theta"));
        assert!(!pos("tetrahedron"));
    }

    #[test]
    fn cycle_pattern_at_vertices() {
        for name in ["theta", "tetrahedron"] {
            let d = builtin(name).unwrap();
            let circuits = elementary_circuits(&d).unwrap();
            for c in &circuits {
                for v in c.vertices() {
                    let at: BTreeSet<Side> = c
                        .halfedges
                        .iter()
                        .filter(|f| f.vertex == v)
                        .map(|f| f.side)
                        .collect();
                    assert!(
                        at == BTreeSet::from([Side::M, Side::L])
                            || at == BTreeSet::from([Side::M, Side::R])
                    );
                }
            }
            for (i, a) in circuits.iter().enumerate() {
                for b in &circuits[i + 1..] {
                    for v in a.vertices().intersection(&b.vertices()) {
                        let m = d.edge_at(Flag::new(*v, Side::M));
                        assert!(a.edges.contains(&m) && b.edges.contains(&m));
                    }
                }
            }
        }
    }

    #[test]
    fn turning_rotation_matches_area() {
        let mut diagrams: Vec<PlanarDiagram> = ["unknot", "theta", "tetrahedron"]
            .into_iter()
            .map(|n| builtin(n).unwrap())
            .collect();
        diagrams.push(parse_diagram(TWO_LOOPS).unwrap());
        for d in &diagrams {
            for c in &all_cycles(d).unwrap() {
                assert_eq!(flow_rotation(d, &c.flow(d)), c.rot, "{c}");
            }
        }
    }
}
