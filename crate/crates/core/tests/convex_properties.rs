//! Property suite for subdifferentials: the direct active-piece formula is
//! checked against the epigraph route, against the subgradient inequality
//! itself, and against the exact sum rule.

mod common;

use common::{random_function_through, sample_points};
use polystab_core::rational::dot;
use polystab_core::{Rat, RatVec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const INSTANCES: usize = 60;

fn instance_rng(case: usize) -> StdRng {
    StdRng::seed_from_u64(0x5eed_0000 + case as u64)
}

/// Both subdifferential routes agree at random domain points, for both the
/// plain and the singular subdifferential.
#[test]
fn epigraph_oracle_equivalence() {
    for case in 0..INSTANCES {
        let mut rng = instance_rng(case);
        let dim = rng.gen_range(1..=3);
        let anchor = common::int_vec(&mut rng, dim, 2);
        let f = random_function_through(&mut rng, &anchor, 4, 4, 3);
        let dom = f.domain().to_v().unwrap();
        for x in sample_points(&mut rng, &dom, 3) {
            let direct = f.subdifferential(&x).unwrap();
            let via_epi = f.subdifferential_via_epigraph(&x).unwrap();
            assert!(
                direct.set_eq(&via_epi).unwrap(),
                "case {case}: subdifferential routes disagree at {x:?}"
            );

            let sing = f.singular_subdifferential(&x).unwrap();
            let sing_epi = f.singular_subdifferential_via_epigraph(&x).unwrap();
            assert!(
                sing.set_eq(&sing_epi).unwrap(),
                "case {case}: singular routes disagree at {x:?}"
            );
        }
    }
}

/// Every reported subgradient satisfies the subgradient inequality exactly,
/// at 50 sampled domain points. Rays are exercised as `vertex + t * ray` for
/// t in { 1, 10 }, lines in both directions.
#[test]
fn subgradient_inequality_holds_exactly() {
    for case in 0..INSTANCES {
        let mut rng = instance_rng(1_000 + case);
        let dim = rng.gen_range(1..=2);
        let anchor = common::int_vec(&mut rng, dim, 2);
        let f = random_function_through(&mut rng, &anchor, 3, 3, 3);
        let dom = f.domain().to_v().unwrap();
        let x_bar = sample_points(&mut rng, &dom, 1).remove(0);
        let f_bar = f.eval(&x_bar).unwrap().finite().unwrap().clone();
        let sub = f.subdifferential(&x_bar).unwrap();

        let mut candidates: Vec<RatVec> = sub.vertices().to_vec();
        let stretches = [Rat::from_int(1), Rat::from_int(10)];
        for w in sub.vertices() {
            for r in sub.rays() {
                for t in &stretches {
                    candidates.push(w.add(&r.scale(t)));
                }
            }
            for l in sub.lines() {
                for t in &stretches {
                    candidates.push(w.add(&l.scale(t)));
                    candidates.push(w.sub(&l.scale(t)));
                }
            }
        }

        for x in sample_points(&mut rng, &dom, 50) {
            let fx = f.eval(&x).unwrap().finite().unwrap().clone();
            let gap = &fx - &f_bar;
            for g in &candidates {
                let pairing = dot(g, &x.sub(&x_bar)).unwrap();
                assert!(
                    pairing <= gap,
                    "case {case}: subgradient {g:?} violates the inequality at {x:?}"
                );
            }
        }
    }
}

/// Exact sum rule: the subdifferential of a sum is the Minkowski sum of the
/// subdifferentials, with no closure adjustment needed.
#[test]
fn sum_rule_is_exact() {
    for case in 0..INSTANCES {
        let mut rng = instance_rng(2_000 + case);
        let dim = rng.gen_range(1..=2);
        let anchor = common::int_vec(&mut rng, dim, 2);
        let f1 = random_function_through(&mut rng, &anchor, 3, 3, 3);
        let f2 = random_function_through(&mut rng, &anchor, 3, 3, 3);
        let sum = f1.sum(&f2).unwrap();
        let dom = sum.domain().to_v().unwrap();
        assert!(!dom.is_empty());
        for x in sample_points(&mut rng, &dom, 3) {
            let lhs = sum.subdifferential(&x).unwrap();
            let rhs = f1
                .subdifferential(&x)
                .unwrap()
                .minkowski_sum(&f2.subdifferential(&x).unwrap())
                .unwrap();
            assert!(
                lhs.set_eq(&rhs).unwrap(),
                "case {case}: sum rule failed at {x:?}"
            );
        }
    }
}

/// The sum evaluates pointwise to the sum of values on the intersection.
#[test]
fn sum_evaluates_pointwise() {
    for case in 0..30 {
        let mut rng = instance_rng(3_000 + case);
        let dim = rng.gen_range(1..=2);
        let anchor = common::int_vec(&mut rng, dim, 2);
        let f1 = random_function_through(&mut rng, &anchor, 3, 3, 3);
        let f2 = random_function_through(&mut rng, &anchor, 3, 3, 3);
        let sum = f1.sum(&f2).unwrap();
        let dom = sum.domain().to_v().unwrap();
        for x in sample_points(&mut rng, &dom, 5) {
            let a = f1.eval(&x).unwrap().finite().unwrap().clone();
            let b = f2.eval(&x).unwrap().finite().unwrap().clone();
            assert_eq!(sum.eval(&x).unwrap().finite().unwrap(), &(a + b));
        }
    }
}

/// Normal cones are cones based at the origin whenever the point is inside.
#[test]
fn normal_cone_shape() {
    for case in 0..30 {
        let mut rng = instance_rng(4_000 + case);
        let dim = rng.gen_range(1..=3);
        let anchor = common::int_vec(&mut rng, dim, 2);
        let c = common::random_h_through(&mut rng, &anchor, 4, 0.3, 3);
        let n = polystab_core::convex::normal_cone(&c, &anchor).unwrap();
        assert!(!n.is_empty());
        assert_eq!(n.vertices(), &[RatVec::zeros(dim)]);
    }
}
