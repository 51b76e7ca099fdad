//! Builtin fixture diagrams.

use super::{
    Circle, DiagramError, Edge, Flag, Orientation, PlanarDiagram, Point, Side, Vertex, VertexKind,
};

pub const BUILTIN_NAMES: [&str; 3] = ["unknot", "theta", "tetrahedron"];

fn vertex(id: u32, kind: VertexKind, x: f64, y: f64) -> Vertex {
    Vertex {
        id,
        kind,
        pos: Point::new(x, y),
    }
}

fn edge(id: u32, tail: (u32, Side), head: (u32, Side), waypoints: &[(f64, f64)]) -> Edge {
    Edge {
        id,
        tail: Flag::from(tail),
        head: Flag::from(head),
        waypoints: waypoints.iter().map(|&(x, y)| Point::new(x, y)).collect(),
    }
}

/// A single counter-clockwise circle with id 0.
fn unknot() -> PlanarDiagram {
    PlanarDiagram::new(
        vec![],
        vec![],
        vec![Circle {
            id: 0,
            orientation: Orientation::Ccw,
        }],
    )
    .expect("unknot fixture is valid")
}

/// Split vertex 0 above merge vertex 1; the thick edge 0 runs upward from 1
/// to 0 and both thin edges return on its left, so both circuits turn
/// counter-clockwise.
fn theta() -> PlanarDiagram {
    use Side::*;
    use VertexKind::*;
    PlanarDiagram::new(
        vec![vertex(0, Split, 0.0, 1.0), vertex(1, Merge, 0.0, -1.0)],
        vec![
            edge(0, (1, M), (0, M), &[]),
            edge(1, (0, L), (1, L), &[(-1.0, 0.0)]),
            edge(2, (0, R), (1, R), &[(-2.0, 0.0)]),
        ],
        vec![],
    )
    .expect("theta fixture is valid")
}

/// Vertices 0, 3 split and 1, 2 merge. With a coloring `(a, b, c)` the edge
/// flows are `(a+b+c, a+b, c, a, b+c, b)` on edges 0..=5. The cycle through
/// `(1,l)` turns counter-clockwise and the other two clockwise; this is the
/// orientation for which the evaluations are the q-multinomials
/// `[N; a, b, c, N-a-b-c]` (the mirror drawing gives different values).
fn tetrahedron() -> PlanarDiagram {
    use Side::*;
    use VertexKind::*;
    PlanarDiagram::new(
        vec![
            vertex(0, Split, 0.0, 1.0),
            vertex(1, Merge, 0.0, -1.0),
            vertex(2, Merge, 2.0, 0.0),
            vertex(3, Split, -2.0, 0.0),
        ],
        vec![
            edge(0, (1, M), (0, M), &[]),
            edge(1, (0, L), (3, M), &[]),
            edge(2, (0, R), (2, R), &[]),
            edge(3, (3, L), (1, L), &[]),
            edge(4, (2, M), (1, R), &[]),
            edge(5, (3, R), (2, L), &[(0.0, 3.0)]),
        ],
        vec![],
    )
    .expect("tetrahedron fixture is valid")
}

pub fn builtin(name: &str) -> Result<PlanarDiagram, DiagramError> {
    match name {
        "unknot" => Ok(unknot()),
        "theta" => Ok(theta()),
        "tetrahedron" => Ok(tetrahedron()),
        other => Err(DiagramError::UnknownBuiltin(other.to_string())),
    }
}

pub fn builtin_text(name: &str) -> Result<String, DiagramError> {
    builtin(name).map(|d| d.to_json())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn fixture_shapes() {
        let u = builtin("unknot").unwrap();
        assert_eq!(
            (u.vertices().len(), u.edges().len(), u.circles().len()),
            (0, 0, 1)
        );
        assert_eq!(u.circles()[0].orientation, Orientation::Ccw);
        let t = builtin("tetrahedron").unwrap();
        assert_eq!(
            (t.vertices().len(), t.edges().len(), t.circles().len()),
            (4, 6, 0)
        );
        let th = builtin("theta").unwrap();
        assert_eq!((th.vertices().len(), th.edges().len()), (2, 3));
        assert!(matches!(
            builtin("trefoil"),
            Err(DiagramError::UnknownBuiltin(_))
        ));
    }

    #[test]
    fn tetrahedron_pairing() {
        use Side::*;
        let t = builtin("tetrahedron").unwrap();
        let pairs = [
            ((0, M), (1, M)),
            ((0, L), (3, M)),
            ((0, R), (2, R)),
            ((1, L), (3, L)),
            ((1, R), (2, M)),
            ((2, L), (3, R)),
        ];
        for (a, b) in pairs {
            let ea = t.edge_at(Flag::from(a));
            let eb = t.edge_at(Flag::from(b));
            assert_eq!(ea, eb, "{a:?} and {b:?} should share an edge");
        }
    }

    #[test]
    fn round_trip() {
        for name in BUILTIN_NAMES {
            let d = builtin(name).unwrap();
            let text = d.to_json();
            let back = parse_diagram(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(back.to_json(), text);
        }
    }
}
