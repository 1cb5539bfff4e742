//! Polyhedral convex functions and their first-order objects.
//!
//! A [`PolyhedralFunction`] is a maximum of finitely many affine pieces over
//! a polyhedral domain, `+infinity` outside. Properness is enforced by
//! construction: the piece list must be nonempty and the domain feasible.
//!
//! Subdifferentials are computed two ways on purpose. The direct route uses
//! the active pieces plus the domain normal cone; the epigraph route slices
//! the normal cone of the epigraph at last coordinate `-1` (or `0` for the
//! singular subdifferential). The two routes are checked against each other
//! by the property suites, which is what makes the direct formula
//! trustworthy at domain boundary points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedron::{HPolyhedron, VPolyhedron};
use crate::rational::{dot, Rat, RatVec};

/// One affine piece `x -> <slope, x> + offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    #[serde(rename = "v")]
    pub slope: RatVec,
    #[serde(rename = "beta")]
    pub offset: Rat,
}

impl Piece {
    pub fn new(slope: RatVec, offset: Rat) -> Self {
        Piece { slope, offset }
    }

    fn value_at(&self, x: &RatVec) -> Result<Rat> {
        Ok(dot(&self.slope, x)? + self.offset.clone())
    }
}

/// Value of an extended-real-valued proper function at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionValue {
    Finite(Rat),
    PlusInfinity,
}

impl FunctionValue {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            FunctionValue::Finite(v) => Some(v),
            FunctionValue::PlusInfinity => None,
        }
    }
}

/// A proper polyhedral convex function: `max` of affine pieces on `domain`,
/// `+infinity` off it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFunction", into = "RawFunction")]
pub struct PolyhedralFunction {
    dim: usize,
    domain: HPolyhedron,
    pieces: Vec<Piece>,
}

#[derive(Serialize, Deserialize)]
struct RawFunction {
    dim: usize,
    domain: HPolyhedron,
    pieces: Vec<Piece>,
}

impl TryFrom<RawFunction> for PolyhedralFunction {
    type Error = Error;
    fn try_from(raw: RawFunction) -> Result<Self> {
        PolyhedralFunction::new(raw.dim, raw.domain, raw.pieces)
    }
}

impl From<PolyhedralFunction> for RawFunction {
    fn from(f: PolyhedralFunction) -> RawFunction {
        RawFunction {
            dim: f.dim,
            domain: f.domain,
            pieces: f.pieces,
        }
    }
}

impl PolyhedralFunction {
    /// Properness is checked here: at least one piece and a feasible domain.
    pub fn new(dim: usize, domain: HPolyhedron, pieces: Vec<Piece>) -> Result<Self> {
        if domain.dim() != dim {
            return Err(Error::dim(dim, domain.dim(), "function domain"));
        }
        if pieces.is_empty() {
            return Err(Error::ImproperFunction(
                "a polyhedral function needs at least one affine piece".into(),
            ));
        }
        for p in &pieces {
            if p.slope.dim() != dim {
                return Err(Error::dim(dim, p.slope.dim(), "piece slope length"));
            }
        }
        if !domain.is_feasible()? {
            return Err(Error::ImproperFunction("empty effective domain".into()));
        }
        Ok(PolyhedralFunction {
            dim,
            domain,
            pieces,
        })
    }

    /// The indicator of `c`: zero on `c`, `+infinity` outside.
    pub fn indicator(c: &HPolyhedron) -> Result<Self> {
        PolyhedralFunction::new(
            c.dim(),
            c.clone(),
            vec![Piece::new(RatVec::zeros(c.dim()), Rat::zero())],
        )
    }

    /// A single affine function on all of space.
    pub fn affine(slope: RatVec, offset: Rat) -> Self {
        let dim = slope.dim();
        PolyhedralFunction {
            dim,
            domain: HPolyhedron::whole_space(dim),
            pieces: vec![Piece::new(slope, offset)],
        }
    }

    /// A max of affine pieces on all of space.
    pub fn max_of(pieces: Vec<Piece>) -> Result<Self> {
        let dim = pieces
            .first()
            .ok_or_else(|| Error::ImproperFunction("no pieces".into()))?
            .slope
            .dim();
        PolyhedralFunction::new(dim, HPolyhedron::whole_space(dim), pieces)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &HPolyhedron {
        &self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Exact evaluation.
    pub fn eval(&self, x: &RatVec) -> Result<FunctionValue> {
        if x.dim() != self.dim {
            return Err(Error::dim(self.dim, x.dim(), "eval"));
        }
        if !self.domain.contains_point(x)? {
            return Ok(FunctionValue::PlusInfinity);
        }
        let mut best = self.pieces[0].value_at(x)?;
        for p in &self.pieces[1..] {
            let v = p.value_at(x)?;
            if v > best {
                best = v;
            }
        }
        Ok(FunctionValue::Finite(best))
    }

    /// The epigraph `{ (x, t) : x in domain, pieces(x) <= t }` as a
    /// polyhedron in dimension `dim + 1`.
    pub fn epigraph(&self) -> HPolyhedron {
        let d = self.dim;
        let pad = |v: &RatVec| v.push(Rat::zero());
        let eqs = self
            .domain
            .eq_lhs()
            .rows()
            .iter()
            .zip(self.domain.eq_rhs().iter())
            .map(|(row, rhs)| (pad(row), rhs.clone()))
            .collect();
        let mut ineqs: Vec<(RatVec, Rat)> = self
            .domain
            .ineq_lhs()
            .rows()
            .iter()
            .zip(self.domain.ineq_rhs().iter())
            .map(|(row, rhs)| (pad(row), rhs.clone()))
            .collect();
        for p in &self.pieces {
            // <v, x> + beta <= t  reads  (v, -1) . (x, t) <= -beta
            ineqs.push((p.slope.push(Rat::from_int(-1)), -&p.offset));
        }
        HPolyhedron::from_constraints(d + 1, eqs, ineqs).expect("consistent dims")
    }

    /// Subdifferential at `x`: the convex hull of the active piece slopes
    /// plus the normal cone of the domain. Empty off the domain.
    pub fn subdifferential(&self, x: &RatVec) -> Result<VPolyhedron> {
        if x.dim() != self.dim {
            return Err(Error::dim(self.dim, x.dim(), "subdifferential"));
        }
        let FunctionValue::Finite(fx) = self.eval(x)? else {
            return Ok(VPolyhedron::empty(self.dim));
        };
        let active: Vec<RatVec> = self
            .pieces
            .iter()
            .filter(|p| p.value_at(x).expect("dims checked") == fx)
            .map(|p| p.slope.clone())
            .collect();
        debug_assert!(!active.is_empty());
        let hull = VPolyhedron::new(self.dim, active, vec![], vec![])?;
        hull.minkowski_sum(&normal_cone(&self.domain, x)?)
    }

    /// Singular subdifferential at `x`: the normal cone of the domain.
    /// Empty off the domain.
    pub fn singular_subdifferential(&self, x: &RatVec) -> Result<VPolyhedron> {
        if x.dim() != self.dim {
            return Err(Error::dim(self.dim, x.dim(), "singular subdifferential"));
        }
        normal_cone(&self.domain, x)
    }

    /// Subdifferential computed through the epigraph: the dual vectors whose
    /// pairing with `(x*, -1)` lies in the epigraph normal cone. This is the
    /// independent route used to cross-check [`Self::subdifferential`].
    pub fn subdifferential_via_epigraph(&self, x: &RatVec) -> Result<VPolyhedron> {
        self.epigraph_slice(x, Rat::from_int(-1))
    }

    /// Singular subdifferential through the epigraph: horizontal normals
    /// `(x*, 0)` at `(x, f(x))`.
    pub fn singular_subdifferential_via_epigraph(&self, x: &RatVec) -> Result<VPolyhedron> {
        self.epigraph_slice(x, Rat::zero())
    }

    fn epigraph_slice(&self, x: &RatVec, last: Rat) -> Result<VPolyhedron> {
        if x.dim() != self.dim {
            return Err(Error::dim(self.dim, x.dim(), "epigraph slice"));
        }
        let FunctionValue::Finite(fx) = self.eval(x)? else {
            return Ok(VPolyhedron::empty(self.dim));
        };
        let cone = normal_cone(&self.epigraph(), &x.push(fx))?;
        slice_cone_at_last(&cone, last)
    }

    /// Pointwise sum. The domains must intersect; the result's pieces are
    /// all pairwise sums, which evaluates to the exact sum everywhere on the
    /// intersection.
    pub fn sum(&self, other: &PolyhedralFunction) -> Result<PolyhedralFunction> {
        if self.dim != other.dim {
            return Err(Error::dim(self.dim, other.dim, "function sum"));
        }
        let domain = self.domain.intersect(&other.domain)?;
        if !domain.is_feasible()? {
            return Err(Error::ImproperFunction(
                "sum of functions with disjoint domains".into(),
            ));
        }
        let mut pieces = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for a in &self.pieces {
            for b in &other.pieces {
                pieces.push(Piece::new(a.slope.add(&b.slope), &a.offset + &b.offset));
            }
        }
        PolyhedralFunction::new(self.dim, domain, pieces)
    }
}

/// Normal cone of a polyhedron at a point: the cone of the active inequality
/// rows plus the span of the equality rows, or the empty set off `c`.
pub fn normal_cone(c: &HPolyhedron, x: &RatVec) -> Result<VPolyhedron> {
    if x.dim() != c.dim() {
        return Err(Error::dim(c.dim(), x.dim(), "normal cone"));
    }
    if !c.contains_point(x)? {
        return Ok(VPolyhedron::empty(c.dim()));
    }
    let mut rays = Vec::new();
    for (row, rhs) in c.ineq_lhs().rows().iter().zip(c.ineq_rhs().iter()) {
        if &dot(row, x)? == rhs && !row.is_zero() {
            rays.push(row.clone());
        }
    }
    let lines: Vec<RatVec> = c
        .eq_lhs()
        .rows()
        .iter()
        .filter(|row| !row.is_zero())
        .cloned()
        .collect();
    VPolyhedron::cone(c.dim(), rays, lines)?.normalize()
}

/// Intersects a cone in `R^(d+1)` with the hyperplane fixing the last
/// coordinate to `value` and projects onto the first `d` coordinates.
pub(crate) fn slice_cone_at_last(cone: &VPolyhedron, value: Rat) -> Result<VPolyhedron> {
    let d = cone
        .dim()
        .checked_sub(1)
        .expect("slice needs at least one coordinate");
    if cone.is_empty() {
        return Ok(VPolyhedron::empty(d));
    }
    let sliced = cone.to_h()?.fix_coords(&[(d, value)])?.to_v()?;
    let keep: Vec<usize> = (0..d).collect();
    sliced.project(&keep)
}
