//! Polyhedral convex sets in constraint (H) and generator (V) form, plus the
//! geometric kernel every set formula above reduces to: conversion in both
//! directions, projection and linear images, Minkowski sums, intersection,
//! exact membership, and exact inclusion/equality of sets.
//!
//! All conversions run the exact double description method; there is no
//! floating-point pre-pass anywhere. The empty set is a first-class value.

use serde::{Deserialize, Serialize};

use crate::dd::{canonical_line, canonical_ray, cone_generators, ConeGenerators, ConeRow};
use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::rational::{dot, Rat, RatMat, RatVec};

/// Dimension guardrail: double description is exponential in the worst case.
pub const MAX_DIM: usize = 12;

fn check_dim(dim: usize) -> Result<()> {
    if dim > MAX_DIM {
        return Err(Error::ResourceLimit(format!(
            "dimension {dim} exceeds the supported maximum of {MAX_DIM}"
        )));
    }
    Ok(())
}

/// Constraint form `{ x : eq_lhs x = eq_rhs, ineq_lhs x <= ineq_rhs }`.
///
/// The equality block plays the role of the ambient affine subspace; in
/// finite dimensions that is all the extra generality there is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawH", into = "RawH")]
pub struct HPolyhedron {
    dim: usize,
    eq_lhs: RatMat,
    eq_rhs: RatVec,
    ineq_lhs: RatMat,
    ineq_rhs: RatVec,
}

#[derive(Serialize, Deserialize)]
struct RawH {
    dim: usize,
    eq: Vec<RatVec>,
    eq_rhs: RatVec,
    ineq: Vec<RatVec>,
    ineq_rhs: RatVec,
}

impl TryFrom<RawH> for HPolyhedron {
    type Error = Error;
    fn try_from(raw: RawH) -> Result<Self> {
        HPolyhedron::new(
            raw.dim,
            RatMat::new(raw.eq, raw.dim)?,
            raw.eq_rhs,
            RatMat::new(raw.ineq, raw.dim)?,
            raw.ineq_rhs,
        )
    }
}

impl From<HPolyhedron> for RawH {
    fn from(h: HPolyhedron) -> RawH {
        RawH {
            dim: h.dim,
            eq: h.eq_lhs.rows().to_vec(),
            eq_rhs: h.eq_rhs,
            ineq: h.ineq_lhs.rows().to_vec(),
            ineq_rhs: h.ineq_rhs,
        }
    }
}

impl HPolyhedron {
    pub fn new(
        dim: usize,
        eq_lhs: RatMat,
        eq_rhs: RatVec,
        ineq_lhs: RatMat,
        ineq_rhs: RatVec,
    ) -> Result<Self> {
        if eq_lhs.n_cols() != dim {
            return Err(Error::dim(dim, eq_lhs.n_cols(), "equality row length"));
        }
        if ineq_lhs.n_cols() != dim {
            return Err(Error::dim(dim, ineq_lhs.n_cols(), "inequality row length"));
        }
        if eq_lhs.n_rows() != eq_rhs.dim() {
            return Err(Error::dim(
                eq_lhs.n_rows(),
                eq_rhs.dim(),
                "equality rhs length",
            ));
        }
        if ineq_lhs.n_rows() != ineq_rhs.dim() {
            return Err(Error::dim(
                ineq_lhs.n_rows(),
                ineq_rhs.dim(),
                "inequality rhs length",
            ));
        }
        Ok(HPolyhedron {
            dim,
            eq_lhs,
            eq_rhs,
            ineq_lhs,
            ineq_rhs,
        })
    }

    /// All of `R^dim`: no constraints.
    pub fn whole_space(dim: usize) -> Self {
        HPolyhedron {
            dim,
            eq_lhs: RatMat::empty(dim),
            eq_rhs: RatVec::new(vec![]),
            ineq_lhs: RatMat::empty(dim),
            ineq_rhs: RatVec::new(vec![]),
        }
    }

    /// A trivially infeasible system `0 . x <= -1`.
    pub fn infeasible(dim: usize) -> Self {
        HPolyhedron {
            dim,
            eq_lhs: RatMat::empty(dim),
            eq_rhs: RatVec::new(vec![]),
            ineq_lhs: RatMat::new(vec![RatVec::zeros(dim)], dim).expect("zero row"),
            ineq_rhs: RatVec::new(vec![Rat::from_int(-1)]),
        }
    }

    /// Builds from `(row, rhs)` pairs.
    pub fn from_constraints(
        dim: usize,
        eqs: Vec<(RatVec, Rat)>,
        ineqs: Vec<(RatVec, Rat)>,
    ) -> Result<Self> {
        let (eq_rows, eq_rhs): (Vec<_>, Vec<_>) = eqs.into_iter().unzip();
        let (ineq_rows, ineq_rhs): (Vec<_>, Vec<_>) = ineqs.into_iter().unzip();
        HPolyhedron::new(
            dim,
            RatMat::new(eq_rows, dim)?,
            RatVec::new(eq_rhs),
            RatMat::new(ineq_rows, dim)?,
            RatVec::new(ineq_rhs),
        )
    }

    /// The single point `{ v }` as a system of equalities.
    pub fn single_point(v: &RatVec) -> Self {
        let dim = v.dim();
        let eqs = (0..dim)
            .map(|i| {
                let mut row = vec![Rat::zero(); dim];
                row[i] = Rat::one();
                (RatVec::new(row), v[i].clone())
            })
            .collect();
        HPolyhedron::from_constraints(dim, eqs, vec![]).expect("consistent dims")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eq_lhs(&self) -> &RatMat {
        &self.eq_lhs
    }

    pub fn eq_rhs(&self) -> &RatVec {
        &self.eq_rhs
    }

    pub fn ineq_lhs(&self) -> &RatMat {
        &self.ineq_lhs
    }

    pub fn ineq_rhs(&self) -> &RatVec {
        &self.ineq_rhs
    }

    pub fn n_constraints(&self) -> usize {
        self.eq_lhs.n_rows() + self.ineq_lhs.n_rows()
    }

    /// Exact membership test.
    pub fn contains_point(&self, x: &RatVec) -> Result<bool> {
        if x.dim() != self.dim {
            return Err(Error::dim(self.dim, x.dim(), "contains_point"));
        }
        for (row, rhs) in self.eq_lhs.rows().iter().zip(self.eq_rhs.iter()) {
            if &dot(row, x)? != rhs {
                return Ok(false);
            }
        }
        for (row, rhs) in self.ineq_lhs.rows().iter().zip(self.ineq_rhs.iter()) {
            if &dot(row, x)? > rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Concatenates two constraint systems over the same space.
    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        if self.dim != other.dim {
            return Err(Error::dim(self.dim, other.dim, "intersect"));
        }
        let mut eq_lhs = self.eq_lhs.clone();
        for row in other.eq_lhs.rows() {
            eq_lhs.push_row(row.clone())?;
        }
        let mut ineq_lhs = self.ineq_lhs.clone();
        for row in other.ineq_lhs.rows() {
            ineq_lhs.push_row(row.clone())?;
        }
        Ok(HPolyhedron {
            dim: self.dim,
            eq_lhs,
            eq_rhs: self.eq_rhs.concat(&other.eq_rhs),
            ineq_lhs,
            ineq_rhs: self.ineq_rhs.concat(&other.ineq_rhs),
        })
    }

    /// Adds the equalities `x[coord] = value` for each pair.
    pub fn fix_coords(&self, fixed: &[(usize, Rat)]) -> Result<HPolyhedron> {
        let eqs = fixed
            .iter()
            .map(|(i, v)| {
                let mut row = vec![Rat::zero(); self.dim];
                row[*i] = Rat::one();
                (RatVec::new(row), v.clone())
            })
            .collect();
        let fixer = HPolyhedron::from_constraints(self.dim, eqs, vec![])?;
        self.intersect(&fixer)
    }

    /// Converts to generator form via double description on the
    /// homogenization cone. The empty flag is set exactly when the system is
    /// infeasible.
    pub fn to_v(&self) -> Result<VPolyhedron> {
        check_dim(self.dim)?;
        let d = self.dim + 1;
        let mut rows = Vec::with_capacity(1 + self.n_constraints());
        // homogenization coordinate first: x0 >= 0
        let mut first = vec![Rat::zero(); d];
        first[0] = Rat::one();
        rows.push(ConeRow::ineq(RatVec::new(first)));
        for (row, rhs) in self.eq_lhs.rows().iter().zip(self.eq_rhs.iter()) {
            rows.push(ConeRow::eq(homogenize_row(row, rhs)));
        }
        for (row, rhs) in self.ineq_lhs.rows().iter().zip(self.ineq_rhs.iter()) {
            rows.push(ConeRow::ineq(homogenize_row(row, rhs)));
        }
        let gens = cone_generators(d, &rows)?;

        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in &gens.rays {
            let x0 = &r[0];
            debug_assert!(!x0.is_negative());
            let rest: RatVec = r.iter().skip(1).cloned().collect();
            if x0.is_zero() {
                rays.push(rest);
            } else {
                vertices.push(rest.scale(&x0.recip()));
            }
        }
        let lines: Vec<RatVec> = gens
            .lines
            .iter()
            .map(|l| {
                debug_assert!(l[0].is_zero());
                l.iter().skip(1).cloned().collect()
            })
            .collect();

        if vertices.is_empty() {
            return Ok(VPolyhedron::empty(self.dim));
        }
        Ok(canonicalize_generators(self.dim, vertices, rays, lines))
    }

    /// Exact inclusion `Q subseteq self` for `Q` in generator form.
    pub fn contains_set(&self, q: &VPolyhedron) -> Result<bool> {
        if self.dim != q.dim() {
            return Err(Error::dim(self.dim, q.dim(), "contains_set"));
        }
        if q.is_empty() {
            return Ok(true);
        }
        for v in q.vertices() {
            if !self.contains_point(v)? {
                return Ok(false);
            }
        }
        let recession_ok = |r: &RatVec, two_sided: bool| -> Result<bool> {
            for row in self.eq_lhs.rows() {
                if !dot(row, r)?.is_zero() {
                    return Ok(false);
                }
            }
            for row in self.ineq_lhs.rows() {
                let v = dot(row, r)?;
                if v.is_positive() || (two_sided && !v.is_zero()) {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        for r in q.rays() {
            if !recession_ok(r, false)? {
                return Ok(false);
            }
        }
        for l in q.lines() {
            if !recession_ok(l, true)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Feasibility, decided by conversion.
    pub fn is_feasible(&self) -> Result<bool> {
        Ok(!self.to_v()?.is_empty())
    }
}

fn homogenize_row(lhs: &RatVec, rhs: &Rat) -> RatVec {
    // lhs . x (<=|=) rhs becomes (rhs, -lhs) . (x0, x) (>=|=) 0
    let mut v = Vec::with_capacity(lhs.dim() + 1);
    v.push(rhs.clone());
    for e in lhs.iter() {
        v.push(-e);
    }
    RatVec::new(v)
}

/// Generator form `conv(vertices) + cone(rays) + span(lines)`, with a
/// first-class empty flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawV", into = "RawV")]
pub struct VPolyhedron {
    dim: usize,
    vertices: Vec<RatVec>,
    rays: Vec<RatVec>,
    lines: Vec<RatVec>,
    empty: bool,
}

#[derive(Serialize, Deserialize)]
struct RawV {
    dim: usize,
    vertices: Vec<RatVec>,
    rays: Vec<RatVec>,
    lines: Vec<RatVec>,
    empty: bool,
}

impl TryFrom<RawV> for VPolyhedron {
    type Error = Error;
    fn try_from(raw: RawV) -> Result<Self> {
        if raw.empty {
            if !(raw.vertices.is_empty() && raw.rays.is_empty() && raw.lines.is_empty()) {
                return Err(Error::InvalidConstruction(
                    "empty polyhedron with generators".into(),
                ));
            }
            return Ok(VPolyhedron::empty(raw.dim));
        }
        VPolyhedron::new(raw.dim, raw.vertices, raw.rays, raw.lines)
    }
}

impl From<VPolyhedron> for RawV {
    fn from(v: VPolyhedron) -> RawV {
        RawV {
            dim: v.dim,
            vertices: v.vertices,
            rays: v.rays,
            lines: v.lines,
            empty: v.empty,
        }
    }
}

impl VPolyhedron {
    /// A nonempty generator form. Vertices must be nonempty; rays and lines
    /// must be nonzero.
    pub fn new(
        dim: usize,
        vertices: Vec<RatVec>,
        rays: Vec<RatVec>,
        lines: Vec<RatVec>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidConstruction(
                "nonempty polyhedron needs at least one vertex".into(),
            ));
        }
        for v in vertices.iter().chain(&rays).chain(&lines) {
            if v.dim() != dim {
                return Err(Error::dim(dim, v.dim(), "generator length"));
            }
        }
        if rays.iter().any(RatVec::is_zero) || lines.iter().any(RatVec::is_zero) {
            return Err(Error::InvalidConstruction(
                "zero vector as ray or line".into(),
            ));
        }
        Ok(VPolyhedron {
            dim,
            vertices,
            rays,
            lines,
            empty: false,
        })
    }

    pub fn empty(dim: usize) -> Self {
        VPolyhedron {
            dim,
            vertices: Vec::new(),
            rays: Vec::new(),
            lines: Vec::new(),
            empty: true,
        }
    }

    /// The singleton `{ v }`.
    pub fn point(v: RatVec) -> Self {
        VPolyhedron {
            dim: v.dim(),
            vertices: vec![v],
            rays: Vec::new(),
            lines: Vec::new(),
            empty: false,
        }
    }

    /// The origin-based cone `cone(rays) + span(lines)`.
    pub fn cone(dim: usize, rays: Vec<RatVec>, lines: Vec<RatVec>) -> Result<Self> {
        VPolyhedron::new(dim, vec![RatVec::zeros(dim)], rays, lines)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn rays(&self) -> &[RatVec] {
        &self.rays
    }

    pub fn lines(&self) -> &[RatVec] {
        &self.lines
    }

    /// True when the set is exactly `{ 0 }`.
    pub fn is_origin_only(&self) -> bool {
        !self.empty
            && self.rays.is_empty()
            && self.lines.is_empty()
            && self.vertices.len() == 1
            && self.vertices[0].is_zero()
    }

    /// Converts to constraint form: the facets are the extreme rays of the
    /// polar of the homogenization cone, found by the same double
    /// description engine.
    pub fn to_h(&self) -> Result<HPolyhedron> {
        check_dim(self.dim)?;
        if self.empty {
            return Ok(HPolyhedron::infeasible(self.dim));
        }
        let d = self.dim + 1;
        let mut rows = Vec::new();
        for v in &self.vertices {
            rows.push(ConeRow::ineq(RatVec::new(vec![Rat::one()]).concat(v)));
        }
        for r in &self.rays {
            rows.push(ConeRow::ineq(RatVec::new(vec![Rat::zero()]).concat(r)));
        }
        for l in &self.lines {
            rows.push(ConeRow::eq(RatVec::new(vec![Rat::zero()]).concat(l)));
        }
        let polar: ConeGenerators = cone_generators(d, &rows)?;

        let mut eqs = Vec::new();
        let mut ineqs = Vec::new();
        for w in &polar.rays {
            // w . (x0, x) >= 0 on the homogenization reads (-w_rest) . x <= w_0
            let lhs: RatVec = w.iter().skip(1).map(|e| -e).collect();
            let rhs = w[0].clone();
            if lhs.is_zero() {
                debug_assert!(!rhs.is_negative());
                continue;
            }
            ineqs.push((lhs, rhs));
        }
        for m in &polar.lines {
            let lhs: RatVec = m.iter().skip(1).cloned().collect();
            let rhs = -&m[0];
            if lhs.is_zero() {
                debug_assert!(rhs.is_zero());
                continue;
            }
            eqs.push((lhs, rhs));
        }
        HPolyhedron::from_constraints(self.dim, eqs, ineqs)
    }

    /// Minimal canonical form: duplicate and redundant generators removed,
    /// rays and vertices reduced modulo the line space, everything sorted.
    /// Equal sets normalize to identical values.
    pub fn normalize(&self) -> Result<VPolyhedron> {
        if self.empty {
            return Ok(VPolyhedron::empty(self.dim));
        }
        self.to_h()?.to_v()
    }

    /// Image under the linear map given by `map` (rows = output coords).
    pub fn linear_image(&self, map: &RatMat) -> Result<VPolyhedron> {
        if map.n_cols() != self.dim {
            return Err(Error::dim(self.dim, map.n_cols(), "linear image"));
        }
        let out_dim = map.n_rows();
        if self.empty {
            return Ok(VPolyhedron::empty(out_dim));
        }
        let vertices: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| map.apply(v))
            .collect::<Result<_>>()?;
        let rays: Vec<RatVec> = self
            .rays
            .iter()
            .map(|r| map.apply(r))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|r| !r.is_zero())
            .collect();
        let lines: Vec<RatVec> = self
            .lines
            .iter()
            .map(|l| map.apply(l))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|l| !l.is_zero())
            .collect();
        VPolyhedron::new(out_dim, vertices, rays, lines)?.normalize()
    }

    /// Coordinate projection keeping the listed coordinates in order.
    pub fn project(&self, keep: &[usize]) -> Result<VPolyhedron> {
        for &i in keep {
            if i >= self.dim {
                return Err(Error::dim(self.dim, i, "projection index"));
            }
        }
        let rows: Vec<RatVec> = keep
            .iter()
            .map(|&i| {
                let mut row = vec![Rat::zero(); self.dim];
                row[i] = Rat::one();
                RatVec::new(row)
            })
            .collect();
        self.linear_image(&RatMat::new(rows, self.dim)?)
    }

    /// Set sum `{ p + q }`: pairwise vertex sums, union of rays and lines.
    /// An empty operand gives an empty result. Finite-dimensional Minkowski
    /// sums of polyhedra are closed, so no closure step is needed.
    pub fn minkowski_sum(&self, other: &VPolyhedron) -> Result<VPolyhedron> {
        if self.dim != other.dim {
            return Err(Error::dim(self.dim, other.dim, "minkowski_sum"));
        }
        if self.empty || other.empty {
            return Ok(VPolyhedron::empty(self.dim));
        }
        let mut vertices = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                vertices.push(a.add(b));
            }
        }
        let rays: Vec<RatVec> = self.rays.iter().chain(&other.rays).cloned().collect();
        let lines: Vec<RatVec> = self.lines.iter().chain(&other.lines).cloned().collect();
        VPolyhedron::new(self.dim, vertices, rays, lines)?.normalize()
    }

    /// Translate by a fixed vector.
    pub fn translate(&self, shift: &RatVec) -> Result<VPolyhedron> {
        if self.dim != shift.dim() {
            return Err(Error::dim(self.dim, shift.dim(), "translate"));
        }
        if self.empty {
            return Ok(self.clone());
        }
        VPolyhedron::new(
            self.dim,
            self.vertices.iter().map(|v| v.add(shift)).collect(),
            self.rays.clone(),
            self.lines.clone(),
        )
    }

    /// Exact set equality via inclusion both ways.
    pub fn set_eq(&self, other: &VPolyhedron) -> Result<bool> {
        Ok(self.to_h()?.contains_set(other)? && other.to_h()?.contains_set(self)?)
    }
}

/// Canonical generator form used by every conversion output: the line basis
/// in scaled reduced echelon form, rays and vertices reduced modulo the line
/// space, canonical ray scaling, duplicates dropped, everything sorted.
pub(crate) fn canonicalize_generators(
    dim: usize,
    vertices: Vec<RatVec>,
    rays: Vec<RatVec>,
    lines: Vec<RatVec>,
) -> VPolyhedron {
    let (line_basis, pivots) = rref(&lines, dim);
    let mut canon_lines: Vec<RatVec> = line_basis
        .iter()
        .map(|l| canonical_line(l).expect("rref rows are nonzero"))
        .collect();
    canon_lines.sort();

    let reduce = |v: &RatVec| -> RatVec {
        let mut out = v.clone();
        for (basis, &p) in line_basis.iter().zip(&pivots) {
            if !out[p].is_zero() {
                let factor = &out[p] / &basis[p];
                out = out.sub(&basis.scale(&factor));
            }
        }
        out
    };

    let mut canon_rays: Vec<RatVec> = rays
        .iter()
        .filter_map(|r| canonical_ray(&reduce(r)))
        .collect();
    canon_rays.sort();
    canon_rays.dedup();

    let mut canon_vertices: Vec<RatVec> = vertices.iter().map(reduce).collect();
    canon_vertices.sort();
    canon_vertices.dedup();

    VPolyhedron {
        dim,
        vertices: canon_vertices,
        rays: canon_rays,
        lines: canon_lines,
        empty: false,
    }
}

/// A polyhedron in whichever representation is at hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Polyhedron {
    H(HPolyhedron),
    V(VPolyhedron),
}

impl Polyhedron {
    pub fn dim(&self) -> usize {
        match self {
            Polyhedron::H(h) => h.dim(),
            Polyhedron::V(v) => v.dim(),
        }
    }

    pub fn to_h(&self) -> Result<HPolyhedron> {
        match self {
            Polyhedron::H(h) => Ok(h.clone()),
            Polyhedron::V(v) => v.to_h(),
        }
    }

    pub fn to_v(&self) -> Result<VPolyhedron> {
        match self {
            Polyhedron::H(h) => h.to_v(),
            Polyhedron::V(v) => Ok(v.clone()),
        }
    }
}

impl From<HPolyhedron> for Polyhedron {
    fn from(h: HPolyhedron) -> Self {
        Polyhedron::H(h)
    }
}

impl From<VPolyhedron> for Polyhedron {
    fn from(v: VPolyhedron) -> Self {
        Polyhedron::V(v)
    }
}

/// `Q subseteq P` for sets in any representation.
pub fn includes(p: &Polyhedron, q: &Polyhedron) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::dim(p.dim(), q.dim(), "includes"));
    }
    p.to_h()?.contains_set(&q.to_v()?)
}

/// Coordinate projection of a set in any representation.
pub fn project(p: &Polyhedron, keep: &[usize]) -> Result<VPolyhedron> {
    p.to_v()?.project(keep)
}

/// Exact set equality for sets in any representation.
pub fn set_equal(p: &Polyhedron, q: &Polyhedron) -> Result<bool> {
    Ok(includes(p, q)? && includes(q, p)?)
}
