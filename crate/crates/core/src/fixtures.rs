//! The complexes and group actions used in tests, examples and golden reports.

use crate::equivariant::{FiniteGroup, GroupAction};
use crate::simplicial::SimplicialComplex;

fn complex(n: usize, faces: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::with_vertices(n, faces).expect("fixture is well formed")
}

pub fn point() -> SimplicialComplex {
    complex(1, &[])
}

/// Three vertices, three edges.
pub fn circle() -> SimplicialComplex {
    complex(3, &[&[0, 1], &[0, 2], &[1, 2]])
}

/// `∂Δ³`, a 2-sphere.
pub fn boundary_tetrahedron() -> SimplicialComplex {
    complex(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

/// The 6-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    complex(6, &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 5, 1], &[1, 2, 4], &[2, 3, 5], &[3, 4, 1], &[4, 5, 2], &[5, 1, 3]])
}

/// The 7-vertex (Möbius) torus.
pub fn torus() -> SimplicialComplex {
    let mut faces = Vec::new();
    for i in 0..7 {
        faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    let refs: Vec<&[usize]> = faces.iter().map(Vec::as_slice).collect();
    complex(7, &refs)
}

/// `∂Δ⁴`, a 3-sphere.
pub fn boundary_4simplex() -> SimplicialComplex {
    let faces: Vec<Vec<usize>> = (0..5).map(|m| (0..5).filter(|&v| v != m).collect()).collect();
    let refs: Vec<&[usize]> = faces.iter().map(Vec::as_slice).collect();
    complex(5, &refs)
}

/// An icosahedron whose antipodal map is `i ↦ i + 6 (mod 12)`.
pub fn icosahedron() -> SimplicialComplex {
    complex(12, &ICOSAHEDRON)
}

const ICOSAHEDRON: [&[usize]; 20] = [
    &[0, 1, 2],
    &[0, 1, 3],
    &[0, 2, 4],
    &[0, 3, 5],
    &[0, 4, 5],
    &[1, 2, 11],
    &[1, 3, 10],
    &[1, 10, 11],
    &[2, 4, 9],
    &[2, 9, 11],
    &[3, 5, 8],
    &[3, 8, 10],
    &[4, 5, 7],
    &[4, 7, 9],
    &[5, 7, 8],
    &[6, 7, 8],
    &[6, 7, 9],
    &[6, 8, 10],
    &[6, 9, 11],
    &[6, 10, 11],
];

/// The complexes on which the classification properties are exercised.
pub fn all_complexes() -> Vec<SimplicialComplex> {
    vec![point(), circle(), boundary_tetrahedron(), rp2(), torus(), boundary_4simplex()]
}

/// The four surfaces and the 3-sphere, with display names.
pub fn named_manifolds() -> Vec<(&'static str, SimplicialComplex)> {
    vec![("sphere2", boundary_tetrahedron()), ("rp2", rp2()), ("torus", torus()), ("sphere3", boundary_4simplex())]
}

/// `ℤ/n` acting trivially on `x`.
pub fn trivial_action(n: usize, x: SimplicialComplex) -> GroupAction {
    let perms = vec![x.vertices(); n];
    GroupAction::new(FiniteGroup::cyclic(n), x, perms).expect("trivial action")
}

/// `ℤ/2` acting on the icosahedron by the antipodal map.
pub fn antipodal_action() -> GroupAction {
    let id: Vec<usize> = (0..12).collect();
    let anti: Vec<usize> = (0..12).map(|i| (i + 6) % 12).collect();
    GroupAction::new(FiniteGroup::cyclic(2), icosahedron(), vec![id, anti]).expect("antipodal action")
}

/// The quotient of the icosahedron by the antipodal map, labelled by `i mod 6`.
pub fn icosahedron_quotient() -> SimplicialComplex {
    let faces: Vec<Vec<usize>> = ICOSAHEDRON.iter().map(|f| f.iter().map(|v| v % 6).collect()).collect();
    let refs: Vec<&[usize]> = faces.iter().map(Vec::as_slice).collect();
    complex(6, &refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristics() {
        assert_eq!(boundary_tetrahedron().euler_characteristic(), 2);
        assert_eq!(rp2().euler_characteristic(), 1);
        assert_eq!(torus().euler_characteristic(), 0);
        assert_eq!(boundary_4simplex().euler_characteristic(), 0);
        assert_eq!(icosahedron().euler_characteristic(), 2);
        assert_eq!(icosahedron_quotient().euler_characteristic(), 1);
    }

    #[test]
    fn icosahedron_is_a_closed_surface() {
        let x = icosahedron();
        assert_eq!((x.count(0), x.count(1), x.count(2)), (12, 30, 20));
        for e in x.simplices(1) {
            let n = x.simplices(2).iter().filter(|t| e.iter().all(|v| t.contains(v))).count();
            assert_eq!(n, 2, "edge {e:?}");
        }
    }
}
