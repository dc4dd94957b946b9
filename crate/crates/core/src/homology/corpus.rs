//! Standard triangulations and golden maps.

use super::complex::SimplicialComplex;
use super::lefschetz::SimplicialMap;

pub fn point() -> SimplicialComplex {
    SimplicialComplex::new(1, vec![]).expect("point")
}

/// Boundary of an `n`-gon, `n >= 3`.
pub fn circle(n: usize) -> SimplicialComplex {
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::from_maximal(n, &edges).expect("circle")
}

pub fn filled_triangle() -> SimplicialComplex {
    SimplicialComplex::from_maximal(3, &[vec![0, 1, 2]]).expect("triangle")
}

/// Boundary of the tetrahedron.
pub fn sphere() -> SimplicialComplex {
    SimplicialComplex::from_maximal(
        4,
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .expect("sphere")
}

fn torus_triangles(offset: usize) -> Vec<Vec<usize>> {
    let v = |i: usize, j: usize| offset + (i % 3) * 3 + (j % 3);
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            out.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            out.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    out
}

/// The 3x3 grid triangulation of the torus: 9 vertices, 27 edges, 18 triangles.
pub fn torus() -> SimplicialComplex {
    SimplicialComplex::from_maximal(9, &torus_triangles(0)).expect("torus")
}

/// Connected sum of two grid tori along the triangle `[0, 1, 4]`:
/// 15 vertices, 51 edges, 34 triangles.
pub fn genus_two() -> SimplicialComplex {
    let removed = [0usize, 1, 4];
    let mut tris: Vec<Vec<usize>> = torus_triangles(0)
        .into_iter()
        .filter(|t| t.as_slice() != removed)
        .collect();
    // second torus: vertices 9.. with its copy of the removed triangle
    // glued onto 0, 1, 4
    let mut next = 9;
    let relabel: Vec<usize> = (0..9)
        .map(|v| {
            if let Some(p) = removed.iter().position(|&r| r == v) {
                removed[p]
            } else {
                next += 1;
                next - 1
            }
        })
        .collect();
    for t in torus_triangles(0) {
        if t.as_slice() == removed {
            continue;
        }
        tris.push(t.iter().map(|&v| relabel[v]).collect());
    }
    SimplicialComplex::from_maximal(15, &tris).expect("genus two surface")
}

pub fn bundled_complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("point", point()),
        ("circle", circle(3)),
        ("hexagon", circle(6)),
        ("filled_triangle", filled_triangle()),
        ("sphere", sphere()),
        ("torus", torus()),
        ("genus_two", genus_two()),
    ]
}

/// The hexagon as a subdivision of the 3-vertex circle: even vertices are
/// the original ones, odd vertices are edge midpoints.
pub fn hexagon_subdivision_of_triangle() -> (SimplicialComplex, SimplicialMap) {
    let approx = SimplicialMap::new((0..6).map(|j| j / 2).collect());
    (circle(6), approx)
}

/// A map wrapping the subdivided circle twice around the 3-vertex circle.
pub fn degree_two_circle_map() -> SimplicialMap {
    SimplicialMap::new((0..6).map(|j| j % 3).collect())
}
