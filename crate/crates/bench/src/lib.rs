//! Shared fixtures for the criterion benchmarks in `benches/`.

use polystab_core::convex::Piece;
use polystab_core::{HPolyhedron, ParametricProblem, PolyhedralFunction, PolyhedralMap, Rat, RatVec};

/// `min { y : y >= x, y >= -x }`, whose value function is `|x|`.
pub fn running_example() -> ParametricProblem {
    let graph = HPolyhedron::from_constraints(
        2,
        vec![],
        vec![
            (RatVec::from_ints(&[1, -1]), Rat::zero()),
            (RatVec::from_ints(&[-1, -1]), Rat::zero()),
        ],
    )
    .unwrap();
    ParametricProblem::new(
        PolyhedralFunction::affine(RatVec::from_ints(&[0, 1]), Rat::zero()),
        PolyhedralMap::new(1, 1, graph).unwrap(),
    )
    .unwrap()
}

/// The unit hypercube in the given dimension.
pub fn hypercube(dim: usize) -> HPolyhedron {
    let mut ineqs = Vec::new();
    for i in 0..dim {
        let mut lo = vec![0i64; dim];
        lo[i] = -1;
        let mut hi = vec![0i64; dim];
        hi[i] = 1;
        ineqs.push((RatVec::from_ints(&lo), Rat::zero()));
        ineqs.push((RatVec::from_ints(&hi), Rat::one()));
    }
    HPolyhedron::from_constraints(dim, vec![], ineqs).unwrap()
}

/// The cross-polytope (unit ball of the 1-norm) in the given dimension.
pub fn cross_polytope(dim: usize) -> HPolyhedron {
    let mut ineqs = Vec::new();
    for mask in 0u32..(1 << dim) {
        let row: Vec<i64> = (0..dim)
            .map(|i| if mask & (1 << i) != 0 { 1 } else { -1 })
            .collect();
        ineqs.push((RatVec::from_ints(&row), Rat::one()));
    }
    HPolyhedron::from_constraints(dim, vec![], ineqs).unwrap()
}

/// A fixed two-piece objective over a planar graph, used by the
/// verification benchmark.
pub fn two_piece_example() -> ParametricProblem {
    let graph = HPolyhedron::from_constraints(
        3,
        vec![],
        vec![
            (RatVec::from_ints(&[1, -1, 0]), Rat::zero()),
            (RatVec::from_ints(&[-1, 0, -1]), Rat::zero()),
            (RatVec::from_ints(&[0, 1, 1]), Rat::from_int(4)),
        ],
    )
    .unwrap();
    let phi = PolyhedralFunction::max_of(vec![
        Piece::new(RatVec::from_ints(&[0, 1, 1]), Rat::zero()),
        Piece::new(RatVec::from_ints(&[1, -1, 2]), Rat::one()),
    ])
    .unwrap();
    ParametricProblem::new(phi, PolyhedralMap::new(1, 2, graph).unwrap()).unwrap()
}
