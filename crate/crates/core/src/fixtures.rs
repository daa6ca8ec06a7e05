//! The three worked surfaces: four-holed sphere, one-holed torus and the
//! closed genus-2 surface, with the base triples used in their normal forms.

use crate::projective::ProjectivePoint;
use crate::surface::{Edge, End, PantsSurface, Vertex, VertexKind};

fn tri(id: usize, incident: &[(usize, End)]) -> Vertex {
    Vertex { id, kind: VertexKind::Trivalent, incident: incident.to_vec() }
}

fn uni(id: usize, edge: usize, end: End) -> Vertex {
    Vertex { id, kind: VertexKind::Univalent, incident: vec![(edge, end)] }
}

fn edge(id: usize, tail: usize, head: usize) -> Edge {
    Edge { id, tail, head }
}

use End::{Head, Tail};

/// Two pants glued along edge 1 (vertex 0 → vertex 1); boundary edges
/// 2, 3 leave vertex 0 and 4, 5 leave vertex 1.
pub fn four_holed() -> PantsSurface {
    PantsSurface {
        genus: 0,
        boundary: 4,
        vertices: vec![
            tri(0, &[(1, Tail), (2, Tail), (3, Tail)]),
            tri(1, &[(1, Head), (4, Tail), (5, Tail)]),
            uni(2, 2, Head),
            uni(3, 3, Head),
            uni(4, 4, Head),
            uni(5, 5, Head),
        ],
        edges: vec![edge(1, 0, 1), edge(2, 0, 2), edge(3, 0, 3), edge(4, 1, 4), edge(5, 1, 5)],
        tree: None,
    }
}

/// One vertex carrying the loop edge 1 and the boundary edge 2.
pub fn one_holed() -> PantsSurface {
    PantsSurface {
        genus: 1,
        boundary: 1,
        vertices: vec![tri(0, &[(1, Tail), (2, Tail), (1, Head)]), uni(1, 2, Head)],
        edges: vec![edge(1, 0, 0), edge(2, 0, 1)],
        tree: None,
    }
}

/// Theta graph: edges 1, 2, 3 all run from vertex 0 to vertex 1; the
/// maximal tree is edge 3.
pub fn genus_two() -> PantsSurface {
    PantsSurface {
        genus: 2,
        boundary: 0,
        vertices: vec![
            tri(0, &[(3, Tail), (1, Tail), (2, Tail)]),
            tri(1, &[(3, Head), (2, Head), (1, Head)]),
        ],
        edges: vec![edge(1, 0, 1), edge(2, 0, 1), edge(3, 0, 1)],
        tree: Some(vec![3]),
    }
}

fn triple(a: ProjectivePoint, b: ProjectivePoint, c: ProjectivePoint) -> [ProjectivePoint; 3] {
    [a, b, c]
}

/// (∞, 1, 0) on the root slots, as in the four-holed normal form.
pub fn four_holed_base() -> [ProjectivePoint; 3] {
    triple(ProjectivePoint::infinity(), ProjectivePoint::one(), ProjectivePoint::zero())
}

/// (∞, 0, 1) on the root slots.
pub fn one_holed_base() -> [ProjectivePoint; 3] {
    triple(ProjectivePoint::infinity(), ProjectivePoint::zero(), ProjectivePoint::one())
}

pub fn genus_two_base() -> [ProjectivePoint; 3] {
    one_holed_base()
}

/// Default base triple (0, 1, ∞).
pub fn default_base() -> [ProjectivePoint; 3] {
    triple(ProjectivePoint::zero(), ProjectivePoint::one(), ProjectivePoint::infinity())
}

pub fn by_name(name: &str) -> Option<(PantsSurface, [ProjectivePoint; 3])> {
    match name {
        "four-holed" => Some((four_holed(), four_holed_base())),
        "one-holed" => Some((one_holed(), one_holed_base())),
        "genus2" => Some((genus_two(), genus_two_base())),
        _ => None,
    }
}
