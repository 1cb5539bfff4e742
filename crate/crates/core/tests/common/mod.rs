#![allow(dead_code)]

//! Shared test utilities: independent oracles and seeded random data.
//!
//! The oracles here deliberately avoid the double description path used by
//! the library. Feasibility is decided by Fourier-Motzkin elimination and
//! vertices are enumerated by brute force over constraint subsets, so the
//! conversion code is checked against genuinely different algorithms.

use polystab_core::convex::Piece;
use polystab_core::linalg::{solve_linear, LinearSolution};
use polystab_core::rational::dot;
use polystab_core::stability::ValueFunction;
use polystab_core::{
    HPolyhedron, ParametricProblem, PolyhedralFunction, PolyhedralMap, Rat, RatMat, RatVec,
    VPolyhedron,
};
use rand::rngs::StdRng;
use rand::Rng;

/// Fourier-Motzkin feasibility test for an H-polyhedron.
pub fn fm_feasible(h: &HPolyhedron) -> bool {
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (row, rhs) in h.ineq_lhs().rows().iter().zip(h.ineq_rhs().iter()) {
        rows.push((row.entries().to_vec(), rhs.clone()));
    }
    for (row, rhs) in h.eq_lhs().rows().iter().zip(h.eq_rhs().iter()) {
        rows.push((row.entries().to_vec(), rhs.clone()));
        rows.push((
            row.entries().iter().map(|e| -e).collect(),
            -rhs,
        ));
    }
    let mut dim = h.dim();
    while dim > 0 {
        let k = dim - 1;
        let mut next: Vec<(Vec<Rat>, Rat)> = Vec::new();
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for (lhs, rhs) in rows {
            let c = lhs[k].clone();
            let head = lhs[..k].to_vec();
            if c.is_zero() {
                next.push((head, rhs));
            } else if c.is_positive() {
                upper.push((head, rhs, c));
            } else {
                lower.push((head, rhs, c));
            }
        }
        for (u_lhs, u_rhs, u_c) in &upper {
            for (l_lhs, l_rhs, l_c) in &lower {
                let pos = -l_c; // positive
                let lhs: Vec<Rat> = u_lhs
                    .iter()
                    .zip(l_lhs)
                    .map(|(a, b)| &(a * &pos) + &(b * u_c))
                    .collect();
                let rhs = &(u_rhs * &pos) + &(l_rhs * u_c);
                next.push((lhs, rhs));
            }
        }
        rows = next;
        dim = k;
    }
    rows.iter().all(|(_, rhs)| !rhs.is_negative())
}

/// Brute-force vertex candidates: every subset of inequality rows is turned
/// into equalities together with the equality block; unique feasible
/// solutions are collected. For bounded polyhedra this is the vertex set.
pub fn brute_vertices(h: &HPolyhedron) -> Vec<RatVec> {
    let n_ineq = h.ineq_lhs().n_rows();
    let mut found: Vec<RatVec> = Vec::new();
    for mask in 0u32..(1 << n_ineq) {
        let mut rows: Vec<RatVec> = h.eq_lhs().rows().to_vec();
        let mut rhs: Vec<Rat> = h.eq_rhs().entries().to_vec();
        for i in 0..n_ineq {
            if mask & (1 << i) != 0 {
                rows.push(h.ineq_lhs().row(i).clone());
                rhs.push(h.ineq_rhs()[i].clone());
            }
        }
        let a = RatMat::new(rows, h.dim()).unwrap();
        let b = RatVec::new(rhs);
        if let LinearSolution::Solution {
            particular,
            null_basis,
        } = solve_linear(&a, &b).unwrap()
        {
            if null_basis.is_empty()
                && h.contains_point(&particular).unwrap()
                && !found.contains(&particular)
            {
                found.push(particular);
            }
        }
    }
    found.sort();
    found
}

pub fn rat(rng: &mut StdRng, bound: i64) -> Rat {
    Rat::from_int(rng.gen_range(-bound..=bound))
}

pub fn int_vec(rng: &mut StdRng, dim: usize, bound: i64) -> RatVec {
    RatVec::new((0..dim).map(|_| rat(rng, bound)).collect())
}

fn nonzero_int_vec(rng: &mut StdRng, dim: usize, bound: i64) -> RatVec {
    loop {
        let v = int_vec(rng, dim, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A random H-polyhedron guaranteed to contain `anchor`: each inequality
/// gets a nonnegative slack at the anchor, and equalities pass through it.
pub fn random_h_through(
    rng: &mut StdRng,
    anchor: &RatVec,
    max_ineq: usize,
    eq_prob: f64,
    bound: i64,
) -> HPolyhedron {
    let dim = anchor.dim();
    let n_ineq = rng.gen_range(0..=max_ineq);
    let mut ineqs = Vec::new();
    for _ in 0..n_ineq {
        let row = nonzero_int_vec(rng, dim, bound);
        let slack = Rat::from_int(rng.gen_range(0..=bound));
        let rhs = dot(&row, anchor).unwrap() + slack;
        ineqs.push((row, rhs));
    }
    let mut eqs = Vec::new();
    if dim > 0 && rng.gen_bool(eq_prob) {
        let row = nonzero_int_vec(rng, dim, bound);
        let rhs = dot(&row, anchor).unwrap();
        eqs.push((row, rhs));
    }
    HPolyhedron::from_constraints(dim, eqs, ineqs).unwrap()
}

/// A random proper polyhedral function whose domain contains `anchor`.
pub fn random_function_through(
    rng: &mut StdRng,
    anchor: &RatVec,
    max_pieces: usize,
    max_constraints: usize,
    bound: i64,
) -> PolyhedralFunction {
    let dim = anchor.dim();
    let domain = random_h_through(rng, anchor, max_constraints, 0.3, bound);
    let n_pieces = rng.gen_range(1..=max_pieces);
    let pieces = (0..n_pieces)
        .map(|_| Piece::new(int_vec(rng, dim, bound), rat(rng, bound)))
        .collect();
    PolyhedralFunction::new(dim, domain, pieces).unwrap()
}

/// A random parametric problem anchored at parameter zero: the planted
/// point `(0, y0)` is feasible, so `mu(0) < +infinity`; instances whose
/// value function is improper are rejected and resampled.
pub fn random_problem(rng: &mut StdRng, dim_x: usize, dim_y: usize, bound: i64) -> ParametricProblem {
    for _ in 0..1000 {
        let y0 = int_vec(rng, dim_y, bound);
        let anchor = RatVec::zeros(dim_x).concat(&y0);
        let graph = random_h_through(rng, &anchor, 4, 0.25, bound);
        let mut phi = random_function_through(rng, &anchor, 3, 3, bound);
        // a flat decision block with some probability, to make wide argmin
        // sets reasonably common
        if rng.gen_bool(0.3) {
            let pieces = phi
                .pieces()
                .iter()
                .map(|p| {
                    let slope: RatVec = p
                        .slope
                        .iter()
                        .enumerate()
                        .map(|(i, e)| if i < dim_x { e.clone() } else { Rat::zero() })
                        .collect();
                    Piece::new(slope, p.offset.clone())
                })
                .collect();
            phi = PolyhedralFunction::new(phi.dim(), phi.domain().clone(), pieces).unwrap();
        }
        let problem =
            ParametricProblem::new(phi, PolyhedralMap::new(dim_x, dim_y, graph).unwrap()).unwrap();
        if matches!(problem.value_function().unwrap(), ValueFunction::Proper(_)) {
            return problem;
        }
    }
    panic!("failed to generate a proper instance in 1000 attempts");
}

/// Random points of a nonempty polyhedron: rational convex combinations of
/// the vertices plus nonnegative ray and free line contributions.
pub fn sample_points(rng: &mut StdRng, v: &VPolyhedron, count: usize) -> Vec<RatVec> {
    assert!(!v.is_empty());
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut weights: Vec<Rat> = v
            .vertices()
            .iter()
            .map(|_| Rat::from_int(rng.gen_range(0..=4)))
            .collect();
        let total: Rat = weights
            .iter()
            .fold(Rat::zero(), |acc, w| acc + w.clone());
        if total.is_zero() {
            weights[0] = Rat::one();
        }
        let total: Rat = weights
            .iter()
            .fold(Rat::zero(), |acc, w| acc + w.clone());
        let mut point = RatVec::zeros(v.dim());
        for (vertex, w) in v.vertices().iter().zip(&weights) {
            point = point.add(&vertex.scale(&(w / &total)));
        }
        for ray in v.rays() {
            let c = Rat::from_int(rng.gen_range(0..=3));
            point = point.add(&ray.scale(&c));
        }
        for line in v.lines() {
            let c = rat(rng, 3);
            point = point.add(&line.scale(&c));
        }
        out.push(point);
    }
    out
}
