//! Seeded random instance generation.
//!
//! Every instance plants an anchor point `(0, y0)` that satisfies all
//! constraints, so the problem is feasible at parameter zero and the
//! verification hypotheses hold there. Instances whose value function is
//! improper (unbounded below somewhere) are rejected and resampled, so a
//! returned instance always has a proper polyhedral value function. The
//! whole construction is a deterministic function of the seed.

use polystab_core::convex::Piece;
use polystab_core::rational::dot;
use polystab_core::stability::ValueFunction;
use polystab_core::{
    HPolyhedron, ParametricProblem, PolyhedralFunction, PolyhedralMap, Rat, RatVec,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::io::{CliError, ErrorCode};

const MAX_ATTEMPTS: usize = 1000;

/// Generation parameters. Dimensions and sizes are capped at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub seed: u64,
    pub dim_x: usize,
    pub dim_y: usize,
    pub max_constraints: usize,
    pub max_pieces: usize,
    pub coefficient_bound: i64,
}

impl InstanceSpec {
    pub fn new(seed: u64, dim_x: usize, dim_y: usize) -> Self {
        InstanceSpec {
            seed,
            dim_x,
            dim_y,
            max_constraints: 6,
            max_pieces: 4,
            coefficient_bound: 5,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let ok = self.dim_x <= 3
            && self.dim_y <= 3
            && self.max_constraints >= 1
            && self.max_constraints <= 6
            && self.max_pieces >= 1
            && self.max_pieces <= 4
            && self.coefficient_bound >= 1;
        if !ok {
            return Err(CliError::new(
                ErrorCode::BadRequest,
                format!("instance spec out of range: {self:?}"),
            ));
        }
        Ok(())
    }
}

fn int_in(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

fn int_vec(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> RatVec {
    RatVec::new((0..dim).map(|_| Rat::from_int(int_in(rng, bound))).collect())
}

fn nonzero_int_vec(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> RatVec {
    loop {
        let v = int_vec(rng, dim, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A constraint system through the anchor: inequalities get a nonnegative
/// slack there (zero slack with positive probability, so the anchor lands on
/// boundaries too), and an occasional equality passes through it exactly.
fn anchored_polyhedron(
    rng: &mut ChaCha8Rng,
    anchor: &RatVec,
    max_constraints: usize,
    bound: i64,
) -> HPolyhedron {
    let dim = anchor.dim();
    let n_ineq = rng.gen_range(0..=max_constraints);
    let mut ineqs = Vec::with_capacity(n_ineq);
    for _ in 0..n_ineq {
        let row = nonzero_int_vec(rng, dim, bound);
        let slack = Rat::from_int(rng.gen_range(0..=bound));
        let rhs = dot(&row, anchor).expect("dims agree") + slack;
        ineqs.push((row, rhs));
    }
    let mut eqs = Vec::new();
    if dim > 0 && rng.gen_bool(0.25) {
        let row = nonzero_int_vec(rng, dim, bound);
        let rhs = dot(&row, anchor).expect("dims agree");
        eqs.push((row, rhs));
    }
    HPolyhedron::from_constraints(dim, eqs, ineqs).expect("consistent dims")
}

fn candidate(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> ParametricProblem {
    let dim = spec.dim_x + spec.dim_y;
    let bound = spec.coefficient_bound;
    let y0 = int_vec(rng, spec.dim_y, bound);
    let anchor = RatVec::zeros(spec.dim_x).concat(&y0);

    let graph = anchored_polyhedron(rng, &anchor, spec.max_constraints, bound);
    let domain = anchored_polyhedron(rng, &anchor, spec.max_constraints, bound);

    // With some probability the objective ignores the decision block, which
    // makes wide argmin sets (needed by the choice-independence suite)
    // reasonably common.
    let flat = rng.gen_bool(0.3);
    let n_pieces = rng.gen_range(1..=spec.max_pieces);
    let pieces = (0..n_pieces)
        .map(|_| {
            let mut slope = int_vec(rng, dim, bound);
            if flat {
                slope = RatVec::new(
                    slope
                        .iter()
                        .enumerate()
                        .map(|(i, e)| {
                            if i < spec.dim_x {
                                e.clone()
                            } else {
                                Rat::zero()
                            }
                        })
                        .collect(),
                );
            }
            Piece::new(slope, Rat::from_int(int_in(rng, bound)))
        })
        .collect();

    let phi = PolyhedralFunction::new(dim, domain, pieces).expect("anchored domain is feasible");
    let map = PolyhedralMap::new(spec.dim_x, spec.dim_y, graph).expect("consistent dims");
    ParametricProblem::new(phi, map).expect("consistent dims")
}

/// Deterministically generates a proper instance for the given spec.
pub fn generate_instance(spec: &InstanceSpec) -> Result<ParametricProblem, CliError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_ATTEMPTS {
        let problem = candidate(&mut rng, spec);
        if matches!(problem.value_function()?, ValueFunction::Proper(_)) {
            return Ok(problem);
        }
    }
    Err(CliError::new(
        ErrorCode::GenerationFailure,
        format!("no proper instance found in {MAX_ATTEMPTS} attempts for {spec:?}"),
    ))
}
