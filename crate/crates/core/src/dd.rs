//! Incremental double description for polyhedral cones.
//!
//! Computes a minimal generator description `span(lines) + cone(rays)` of a
//! cone given by homogeneous rows `{ y : e_j . y = 0, c_i . y >= 0 }`.
//! Constraints are inserted one at a time into an initially free space. The
//! state keeps `lines` equal to the exact lineality space of the cone seen so
//! far and `rays` equal to the extreme rays of the pointed quotient, so the
//! description stays minimal after every insertion. Adjacency of two rays is
//! decided by an exact rank test on the constraints tight at both.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::rational::{dot, Rat, RatMat, RatVec};

/// Hard cap on the number of rays kept at any point of the computation.
pub(crate) const MAX_GENERATORS: usize = 100_000;

/// One homogeneous constraint row.
#[derive(Debug, Clone)]
pub(crate) struct ConeRow {
    pub coeffs: RatVec,
    pub is_eq: bool,
}

impl ConeRow {
    pub fn ineq(coeffs: RatVec) -> Self {
        ConeRow {
            coeffs,
            is_eq: false,
        }
    }

    pub fn eq(coeffs: RatVec) -> Self {
        ConeRow {
            coeffs,
            is_eq: true,
        }
    }
}

/// Generator description of a cone: `span(lines) + cone(rays)`.
#[derive(Debug, Clone)]
pub(crate) struct ConeGenerators {
    pub lines: Vec<RatVec>,
    pub rays: Vec<RatVec>,
}

/// Scales a vector by a positive rational so its entries become coprime
/// integers. Returns `None` for the zero vector. Direction is preserved.
pub(crate) fn canonical_ray(v: &RatVec) -> Option<RatVec> {
    if v.is_zero() {
        return None;
    }
    let mut denom_lcm = BigInt::one();
    for e in v.iter() {
        denom_lcm = denom_lcm.lcm(e.denominator());
    }
    let scale = Rat::new(denom_lcm, BigInt::one()).expect("lcm is nonzero");
    let ints: Vec<BigInt> = v
        .iter()
        .map(|e| {
            let s = e * &scale;
            debug_assert!(s.denominator().is_one());
            s.numerator().clone()
        })
        .collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    debug_assert!(!g.is_zero());
    Some(RatVec::new(
        ints.into_iter()
            .map(|n| Rat::new(n / &g, BigInt::one()).expect("unit denominator"))
            .collect(),
    ))
}

/// Like [`canonical_ray`] but additionally flips the sign so the first
/// nonzero entry is positive; lines are direction-free.
pub(crate) fn canonical_line(v: &RatVec) -> Option<RatVec> {
    let c = canonical_ray(v)?;
    let flip = c
        .iter()
        .find(|e| !e.is_zero())
        .map(|e| e.is_negative())
        .unwrap_or(false);
    Some(if flip { c.neg() } else { c })
}

struct DdState {
    dim: usize,
    lines: Vec<RatVec>,
    rays: Vec<RatVec>,
    inserted: Vec<ConeRow>,
}

impl DdState {
    fn new(dim: usize) -> Self {
        let lines = RatMat::identity(dim).rows().to_vec();
        DdState {
            dim,
            lines,
            rays: Vec::new(),
            inserted: Vec::new(),
        }
    }

    fn insert(&mut self, row: ConeRow) -> Result<()> {
        let c = &row.coeffs;
        debug_assert_eq!(c.dim(), self.dim);

        let hit = self
            .lines
            .iter()
            .position(|l| !dot(c, l).expect("dims match").is_zero());

        if let Some(idx) = hit {
            self.consume_line(idx, &row);
        } else {
            self.cut_rays(&row)?;
        }
        self.inserted.push(row);
        if self.rays.len() > MAX_GENERATORS {
            return Err(Error::ResourceLimit(format!(
                "double description exceeded {MAX_GENERATORS} generators"
            )));
        }
        Ok(())
    }

    /// The new constraint is nonzero on a lineality direction: one line is
    /// consumed and every other generator is shifted into the constraint's
    /// kernel. No combinatorial step is needed.
    fn consume_line(&mut self, idx: usize, row: &ConeRow) {
        let c = &row.coeffs;
        let mut pivot = self.lines.swap_remove(idx);
        let mut pivot_val = dot(c, &pivot).expect("dims match");
        if pivot_val.is_negative() {
            pivot = pivot.neg();
            pivot_val = -pivot_val;
        }
        for l in self.lines.iter_mut() {
            let v = dot(c, l).expect("dims match");
            if !v.is_zero() {
                *l = l.sub(&pivot.scale(&(&v / &pivot_val)));
            }
        }
        for r in self.rays.iter_mut() {
            let v = dot(c, r).expect("dims match");
            if !v.is_zero() {
                *r = r.sub(&pivot.scale(&(&v / &pivot_val)));
            }
        }
        if !row.is_eq {
            // The halfspace cuts the consumed line down to a ray.
            let ray = canonical_ray(&pivot).expect("consumed line is nonzero");
            if !self.rays.contains(&ray) {
                self.rays.push(ray);
            }
        }
    }

    /// All lines lie in the constraint's kernel: partition the rays by sign
    /// and combine adjacent opposite-sign pairs on the cutting hyperplane.
    fn cut_rays(&mut self, row: &ConeRow) -> Result<()> {
        let c = &row.coeffs;
        let values: Vec<Rat> = self
            .rays
            .iter()
            .map(|r| dot(c, r).expect("dims match"))
            .collect();
        let pos: Vec<usize> = (0..self.rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..self.rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if neg.is_empty() && (!row.is_eq || pos.is_empty()) {
            return Ok(());
        }

        let tight = self.tight_sets();
        let target_rank = self
            .dim
            .checked_sub(self.lines.len() + 2)
            .unwrap_or(usize::MAX);

        let mut next: Vec<RatVec> = Vec::new();
        for (i, r) in self.rays.iter().enumerate() {
            let keep = values[i].is_zero() || (!row.is_eq && values[i].is_positive());
            if keep {
                next.push(r.clone());
            }
        }
        for &p in &pos {
            for &m in &neg {
                if !self.adjacent(&tight, p, m, target_rank) {
                    continue;
                }
                let combo = self.rays[m]
                    .scale(&values[p])
                    .sub(&self.rays[p].scale(&values[m]));
                let ray = canonical_ray(&combo).expect("adjacent rays are not opposite");
                if !next.contains(&ray) {
                    next.push(ray);
                }
            }
        }
        self.rays = next;
        Ok(())
    }

    /// For each ray, which of the inserted rows hold with equality.
    fn tight_sets(&self) -> Vec<Vec<bool>> {
        self.rays
            .iter()
            .map(|r| {
                self.inserted
                    .iter()
                    .map(|row| dot(&row.coeffs, r).expect("dims match").is_zero())
                    .collect()
            })
            .collect()
    }

    /// Exact algebraic adjacency: the rows tight at both rays (equality rows
    /// are tight everywhere) must have rank `dim - dim(lineality) - 2`.
    fn adjacent(
        &self,
        tight: &[Vec<bool>],
        p: usize,
        m: usize,
        target_rank: usize,
    ) -> bool {
        if target_rank == usize::MAX {
            return false;
        }
        let common: Vec<RatVec> = self
            .inserted
            .iter()
            .enumerate()
            .filter(|(j, row)| row.is_eq || (tight[p][*j] && tight[m][*j]))
            .map(|(_, row)| row.coeffs.clone())
            .collect();
        rank(&common, self.dim) == target_rank
    }
}

/// Runs the double description method over the given rows.
pub(crate) fn cone_generators(dim: usize, rows: &[ConeRow]) -> Result<ConeGenerators> {
    let mut state = DdState::new(dim);
    for row in rows {
        state.insert(row.clone())?;
    }
    Ok(ConeGenerators {
        lines: state.lines,
        rays: state.rays,
    })
}
