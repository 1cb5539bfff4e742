//! Parametric polyhedral programs and differential stability of their
//! optimal value function.
//!
//! The data is a problem `min { phi(x, y) : y in G(x) }` with a polyhedral
//! objective and a polyhedral constraint map. For a base parameter with a
//! finite optimal value, this module computes:
//!
//! * the optimal value function `mu` itself, by projecting the lifted
//!   epigraph and recovering its facets;
//! * `d(mu)` and the singular subdifferential at the base point, through the
//!   epigraph of `mu` (the oracle route);
//! * the estimate sets assembled from the objective subdifferential and the
//!   graph normal cone: the projection-formula sets (`B0`, and `B` as its
//!   closure, which is the identity in finite dimensions) and the
//!   coderivative-union sets (`A0`), computed by a genuinely different
//!   pipeline so their coincidence is a real check;
//! * a [`StabilityReport`] whose verdicts assert the exact equality chains
//!   and inclusions between all of these sets.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::convex::{normal_cone, FunctionValue, Piece, PolyhedralFunction};
use crate::error::{Error, Result};
use crate::polyhedron::{HPolyhedron, VPolyhedron};
use crate::rational::{dot, Rat, RatMat, RatVec};

/// A polyhedral convex set-valued map `G(x) = { y : (x, y) in graph }`,
/// with coordinates ordered parameter block first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralMap {
    dim_x: usize,
    dim_y: usize,
    graph: HPolyhedron,
}

impl PolyhedralMap {
    pub fn new(dim_x: usize, dim_y: usize, graph: HPolyhedron) -> Result<Self> {
        if graph.dim() != dim_x + dim_y {
            return Err(Error::dim(dim_x + dim_y, graph.dim(), "map graph"));
        }
        Ok(PolyhedralMap {
            dim_x,
            dim_y,
            graph,
        })
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn dim_y(&self) -> usize {
        self.dim_y
    }

    pub fn graph(&self) -> &HPolyhedron {
        &self.graph
    }

    /// The value `G(x)` in generator form: the graph sliced at the given
    /// parameter, projected onto the decision block.
    pub fn value(&self, x: &RatVec) -> Result<VPolyhedron> {
        if x.dim() != self.dim_x {
            return Err(Error::dim(self.dim_x, x.dim(), "map value"));
        }
        let fixed: Vec<(usize, Rat)> = (0..self.dim_x).map(|i| (i, x[i].clone())).collect();
        let keep: Vec<usize> = (self.dim_x..self.dim_x + self.dim_y).collect();
        self.graph.fix_coords(&fixed)?.to_v()?.project(&keep)
    }

    /// Coderivative at `(x_bar, y_bar)` applied to `y_star`: all `x*` with
    /// `(x*, -y*)` in the graph normal cone. Empty off the graph.
    pub fn coderivative(
        &self,
        x_bar: &RatVec,
        y_bar: &RatVec,
        y_star: &RatVec,
    ) -> Result<VPolyhedron> {
        if y_star.dim() != self.dim_y {
            return Err(Error::dim(self.dim_y, y_star.dim(), "coderivative argument"));
        }
        let point = x_bar.concat(y_bar);
        let cone = normal_cone(&self.graph, &point)?;
        if cone.is_empty() {
            return Ok(VPolyhedron::empty(self.dim_x));
        }
        let fixed: Vec<(usize, Rat)> = (0..self.dim_y)
            .map(|j| (self.dim_x + j, -&y_star[j]))
            .collect();
        let keep: Vec<usize> = (0..self.dim_x).collect();
        cone.to_h()?.fix_coords(&fixed)?.to_v()?.project(&keep)
    }
}

/// The parametric problem `min { phi(x, y) : y in G(x) }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProblem", into = "RawProblem")]
pub struct ParametricProblem {
    objective: PolyhedralFunction,
    map: PolyhedralMap,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    graph: HPolyhedron,
}

#[derive(Serialize, Deserialize)]
struct RawProblem {
    dim_x: usize,
    dim_y: usize,
    phi: PolyhedralFunction,
    #[serde(rename = "G")]
    map: RawMap,
}

impl TryFrom<RawProblem> for ParametricProblem {
    type Error = Error;
    fn try_from(raw: RawProblem) -> Result<Self> {
        ParametricProblem::new(
            raw.phi,
            PolyhedralMap::new(raw.dim_x, raw.dim_y, raw.map.graph)?,
        )
    }
}

impl From<ParametricProblem> for RawProblem {
    fn from(p: ParametricProblem) -> RawProblem {
        RawProblem {
            dim_x: p.map.dim_x,
            dim_y: p.map.dim_y,
            phi: p.objective,
            map: RawMap { graph: p.map.graph },
        }
    }
}

/// Value of the optimal value function at one parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuValue {
    Finite(Rat),
    /// The feasible section is empty (`inf` over the empty set).
    PlusInfinity,
    /// The objective is unbounded below on the feasible section.
    MinusInfinity,
}

impl MuValue {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            MuValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl std::fmt::Display for MuValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MuValue::Finite(v) => write!(f, "{v}"),
            MuValue::PlusInfinity => write!(f, "+infinity"),
            MuValue::MinusInfinity => write!(f, "-infinity"),
        }
    }
}

impl std::str::FromStr for MuValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+infinity" => Ok(MuValue::PlusInfinity),
            "-infinity" => Ok(MuValue::MinusInfinity),
            other => Ok(MuValue::Finite(other.parse()?)),
        }
    }
}

impl Serialize for MuValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MuValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Why the optimal value function is not a proper polyhedral function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImproperValue {
    /// `mu` is `-infinity` somewhere.
    UnboundedBelow,
    /// `mu` is `+infinity` everywhere.
    EmptyDomain,
}

/// The optimal value function, or the reason it is improper.
#[derive(Debug, Clone)]
pub enum ValueFunction {
    Proper(PolyhedralFunction),
    Improper(ImproperValue),
}

impl ValueFunction {
    pub fn proper(self) -> Result<PolyhedralFunction> {
        match self {
            ValueFunction::Proper(f) => Ok(f),
            ValueFunction::Improper(ImproperValue::UnboundedBelow) => Err(
                Error::HypothesisViolation("the optimal value function takes -infinity".into()),
            ),
            ValueFunction::Improper(ImproperValue::EmptyDomain) => Err(
                Error::HypothesisViolation("the problem is infeasible for every parameter".into()),
            ),
        }
    }
}

/// The named identity verdicts, always recomputed from the stored sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    /// The coderivative-union sets equal the projection-formula sets.
    #[serde(rename = "A0_eq_B0")]
    pub a0_eq_b0: bool,
    /// Subdifferential chain: `d(mu) = A0 = B0 = B`.
    pub chain_sub: bool,
    /// Singular chain: `d_inf(mu) = A0_inf = B0_inf = B_inf`.
    pub chain_sing: bool,
    /// Two-sided estimate `A0 subset d(mu) subset B`.
    pub inclusion_sub: bool,
    /// Two-sided estimate for the singular subdifferential.
    pub inclusion_sing: bool,
}

impl Verdicts {
    pub fn all_true(&self) -> bool {
        self.a0_eq_b0
            && self.chain_sub
            && self.chain_sing
            && self.inclusion_sub
            && self.inclusion_sing
    }

    /// Names of the verdicts that failed, for batch reporting.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.a0_eq_b0 {
            out.push("A0_eq_B0");
        }
        if !self.chain_sub {
            out.push("chain_sub");
        }
        if !self.chain_sing {
            out.push("chain_sing");
        }
        if !self.inclusion_sub {
            out.push("inclusion_sub");
        }
        if !self.inclusion_sing {
            out.push("inclusion_sing");
        }
        out
    }
}

const CLOSURE_NOTE: &str = "closure bars realized as identity: in finite dimensions \
Minkowski sums and linear images of polyhedral convex sets are closed, so B equals B0 \
and A equals A0 by construction";

/// Everything computed at one base parameter, with the sets stored in
/// canonical generator form and the verdicts derived from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub x_bar: RatVec,
    pub y_bar: RatVec,
    pub mu_at_x_bar: MuValue,
    /// Subdifferential of the value function (epigraph oracle route).
    pub sub_mu: VPolyhedron,
    /// Singular subdifferential of the value function (domain normal cone).
    pub sing_mu: VPolyhedron,
    /// Coderivative-union estimate, computed as the linear image of the
    /// witness polyhedron of the coderivative definition.
    #[serde(rename = "A0")]
    pub a0: VPolyhedron,
    /// Projection-formula estimate without the closure bar.
    #[serde(rename = "B0")]
    pub b0: VPolyhedron,
    /// Closed projection-formula estimate; equals `B0` here (see the note).
    #[serde(rename = "B")]
    pub b: VPolyhedron,
    #[serde(rename = "Ainf0")]
    pub a0_inf: VPolyhedron,
    #[serde(rename = "Binf0")]
    pub b0_inf: VPolyhedron,
    #[serde(rename = "Binf")]
    pub b_inf: VPolyhedron,
    pub verdicts: Verdicts,
    pub closure_note: String,
}

impl StabilityReport {
    /// Recomputes every verdict from the stored sets; the constructor uses
    /// this, so the booleans can never go stale.
    pub fn recompute_verdicts(&self) -> Result<Verdicts> {
        let eq = |a: &VPolyhedron, b: &VPolyhedron| a.set_eq(b);
        let subset = |inner: &VPolyhedron, outer: &VPolyhedron| outer.to_h()?.contains_set(inner);
        Ok(Verdicts {
            a0_eq_b0: eq(&self.a0, &self.b0)? && eq(&self.a0_inf, &self.b0_inf)?,
            chain_sub: eq(&self.sub_mu, &self.a0)?
                && eq(&self.a0, &self.b0)?
                && eq(&self.b0, &self.b)?,
            chain_sing: eq(&self.sing_mu, &self.a0_inf)?
                && eq(&self.a0_inf, &self.b0_inf)?
                && eq(&self.b0_inf, &self.b_inf)?,
            inclusion_sub: subset(&self.a0, &self.sub_mu)? && subset(&self.sub_mu, &self.b)?,
            inclusion_sing: subset(&self.a0_inf, &self.sing_mu)?
                && subset(&self.sing_mu, &self.b_inf)?,
        })
    }
}

impl ParametricProblem {
    pub fn new(objective: PolyhedralFunction, map: PolyhedralMap) -> Result<Self> {
        if objective.dim() != map.dim_x + map.dim_y {
            return Err(Error::dim(
                map.dim_x + map.dim_y,
                objective.dim(),
                "objective dimension",
            ));
        }
        Ok(ParametricProblem { objective, map })
    }

    pub fn objective(&self) -> &PolyhedralFunction {
        &self.objective
    }

    pub fn map(&self) -> &PolyhedralMap {
        &self.map
    }

    pub fn dim_x(&self) -> usize {
        self.map.dim_x
    }

    pub fn dim_y(&self) -> usize {
        self.map.dim_y
    }

    /// The feasible region `dom phi  intersect  gph G` in `(x, y)` space.
    fn feasible_region(&self) -> Result<HPolyhedron> {
        self.objective.domain().intersect(&self.map.graph)
    }

    /// The section polyhedron at a fixed parameter, over `(y, t)`:
    /// feasibility constraints with `x` substituted, plus one row per
    /// objective piece forcing `piece(x, y) <= t`.
    fn section(&self, x: &RatVec) -> Result<HPolyhedron> {
        let dx = self.map.dim_x;
        let dy = self.map.dim_y;
        if x.dim() != dx {
            return Err(Error::dim(dx, x.dim(), "parameter"));
        }
        let region = self.feasible_region()?;
        let sub = |row: &RatVec, rhs: &Rat| -> Result<(RatVec, Rat)> {
            let head: RatVec = row.iter().take(dx).cloned().collect();
            let tail: RatVec = row.iter().skip(dx).cloned().collect();
            Ok((tail.push(Rat::zero()), rhs - &dot(&head, x)?))
        };
        let mut eqs = Vec::new();
        for (row, rhs) in region.eq_lhs().rows().iter().zip(region.eq_rhs().iter()) {
            eqs.push(sub(row, rhs)?);
        }
        let mut ineqs = Vec::new();
        for (row, rhs) in region.ineq_lhs().rows().iter().zip(region.ineq_rhs().iter()) {
            ineqs.push(sub(row, rhs)?);
        }
        for p in self.objective.pieces() {
            let head: RatVec = p.slope.iter().take(dx).cloned().collect();
            let tail: RatVec = p.slope.iter().skip(dx).cloned().collect();
            ineqs.push((
                tail.push(Rat::from_int(-1)),
                -&p.offset - dot(&head, x)?,
            ));
        }
        HPolyhedron::from_constraints(dy + 1, eqs, ineqs)
    }

    /// Exact optimal value at one parameter.
    pub fn optimal_value(&self, x: &RatVec) -> Result<MuValue> {
        let dy = self.map.dim_y;
        let section = self.section(x)?.to_v()?;
        if section.is_empty() {
            return Ok(MuValue::PlusInfinity);
        }
        for r in section.rays() {
            if r[dy].is_negative() {
                return Ok(MuValue::MinusInfinity);
            }
        }
        for l in section.lines() {
            if !l[dy].is_zero() {
                return Ok(MuValue::MinusInfinity);
            }
        }
        let best = section
            .vertices()
            .iter()
            .map(|v| v[dy].clone())
            .min()
            .expect("nonempty polyhedron has vertices");
        Ok(MuValue::Finite(best))
    }

    /// The argmin set at one parameter, in canonical generator form.
    /// Errors when the optimal value is infinite; nonempty otherwise, since
    /// polyhedral programs attain finite infima.
    pub fn solution_set(&self, x: &RatVec) -> Result<VPolyhedron> {
        let dy = self.map.dim_y;
        let mu = self.optimal_value(x)?;
        let MuValue::Finite(mu) = mu else {
            return Err(Error::NoSolution(format!(
                "optimal value at the given parameter is {mu}"
            )));
        };
        let keep: Vec<usize> = (0..dy).collect();
        let sliced = self.section(x)?.fix_coords(&[(dy, mu)])?.to_v()?;
        debug_assert!(!sliced.is_empty());
        sliced.project(&keep)
    }

    /// The optimal value function, built by projecting the lifted epigraph
    /// `{ (x, y, t) : (x, y) feasible, pieces <= t }` onto `(x, t)` and
    /// reading the facets back as affine pieces and domain constraints.
    pub fn value_function(&self) -> Result<ValueFunction> {
        let dx = self.map.dim_x;
        let dy = self.map.dim_y;
        let region = self.feasible_region()?;
        let pad = |v: &RatVec| v.push(Rat::zero());
        let mut eqs: Vec<(RatVec, Rat)> = Vec::new();
        for (row, rhs) in region.eq_lhs().rows().iter().zip(region.eq_rhs().iter()) {
            eqs.push((pad(row), rhs.clone()));
        }
        let mut ineqs: Vec<(RatVec, Rat)> = Vec::new();
        for (row, rhs) in region.ineq_lhs().rows().iter().zip(region.ineq_rhs().iter()) {
            ineqs.push((pad(row), rhs.clone()));
        }
        for p in self.objective.pieces() {
            ineqs.push((p.slope.push(Rat::from_int(-1)), -&p.offset));
        }
        let lifted = HPolyhedron::from_constraints(dx + dy + 1, eqs, ineqs)?;

        let keep: Vec<usize> = (0..dx).chain([dx + dy]).collect();
        let projected = lifted.to_v()?.project(&keep)?;
        if projected.is_empty() {
            return Ok(ValueFunction::Improper(ImproperValue::EmptyDomain));
        }

        // mu takes -infinity somewhere iff the straight-down direction lies
        // in the recession cone of the projected epigraph.
        let recession = VPolyhedron::cone(
            dx + 1,
            projected.rays().to_vec(),
            projected.lines().to_vec(),
        )?;
        let mut down = RatVec::zeros(dx + 1);
        down = RatVec::new(
            down.iter()
                .enumerate()
                .map(|(i, v)| if i == dx { Rat::from_int(-1) } else { v.clone() })
                .collect(),
        );
        if recession.to_h()?.contains_point(&down)? {
            return Ok(ValueFunction::Improper(ImproperValue::UnboundedBelow));
        }

        // Facet recovery: rows with a zero t-coefficient constrain the
        // domain; rows with a negative t-coefficient are epigraph pieces.
        let h = projected.to_h()?;
        let mut dom_eqs = Vec::new();
        for (row, rhs) in h.eq_lhs().rows().iter().zip(h.eq_rhs().iter()) {
            debug_assert!(row[dx].is_zero(), "vertical equality in an epigraph");
            dom_eqs.push((
                row.iter().take(dx).cloned().collect::<RatVec>(),
                rhs.clone(),
            ));
        }
        let mut dom_ineqs = Vec::new();
        let mut pieces = Vec::new();
        for (row, rhs) in h.ineq_lhs().rows().iter().zip(h.ineq_rhs().iter()) {
            let t_coeff = &row[dx];
            let head: RatVec = row.iter().take(dx).cloned().collect();
            if t_coeff.is_zero() {
                dom_ineqs.push((head, rhs.clone()));
            } else {
                debug_assert!(
                    t_coeff.is_negative(),
                    "epigraphs are unbounded upward, so t-coefficients cannot be positive"
                );
                let scale = (-t_coeff).recip();
                pieces.push(Piece::new(head.scale(&scale), -&(rhs * &scale)));
            }
        }
        debug_assert!(!pieces.is_empty(), "proper value function with no pieces");
        let domain = HPolyhedron::from_constraints(dx, dom_eqs, dom_ineqs)?;
        Ok(ValueFunction::Proper(PolyhedralFunction::new(
            dx, domain, pieces,
        )?))
    }

    /// Checks `mu(x_bar)` finite and `y_bar in M(x_bar)` without building
    /// the solution set: membership in the feasible section plus equality of
    /// the objective value with the optimal value.
    fn check_minimizer(&self, x_bar: &RatVec, y_bar: &RatVec) -> Result<Rat> {
        let mu = self.optimal_value(x_bar)?;
        let MuValue::Finite(mu) = mu else {
            return Err(Error::HypothesisViolation(format!(
                "optimal value at the base parameter is {mu}"
            )));
        };
        let point = x_bar.concat(y_bar);
        let feasible = self.map.graph.contains_point(&point)?
            && self.objective.eval(&point)? == FunctionValue::Finite(mu.clone());
        if !feasible {
            return Err(Error::PreconditionViolation(
                "the proposed minimizer is not optimal at the base parameter".into(),
            ));
        }
        Ok(mu)
    }

    /// Projection-formula estimate for `d(mu)(x_bar)`: the objective
    /// subdifferential plus the graph normal cone, sliced at a zero dual
    /// decision block and projected onto the dual parameter block.
    pub fn estimate_b0(&self, x_bar: &RatVec, y_bar: &RatVec) -> Result<VPolyhedron> {
        self.check_minimizer(x_bar, y_bar)?;
        let point = x_bar.concat(y_bar);
        let sub_phi = self.objective.subdifferential(&point)?;
        self.project_zero_slice(&sub_phi, &point)
    }

    /// Same pipeline with the singular subdifferential of the objective.
    pub fn estimate_b0_singular(&self, x_bar: &RatVec, y_bar: &RatVec) -> Result<VPolyhedron> {
        self.check_minimizer(x_bar, y_bar)?;
        let point = x_bar.concat(y_bar);
        let sub_phi = self.objective.singular_subdifferential(&point)?;
        self.project_zero_slice(&sub_phi, &point)
    }

    fn project_zero_slice(&self, sub_phi: &VPolyhedron, point: &RatVec) -> Result<VPolyhedron> {
        let dx = self.map.dim_x;
        let dy = self.map.dim_y;
        let cone = normal_cone(&self.map.graph, point)?;
        let sum = sub_phi.minkowski_sum(&cone)?;
        if sum.is_empty() {
            return Ok(VPolyhedron::empty(dx));
        }
        let fixed: Vec<(usize, Rat)> = (0..dy).map(|j| (dx + j, Rat::zero())).collect();
        let keep: Vec<usize> = (0..dx).collect();
        sum.to_h()?.fix_coords(&fixed)?.to_v()?.project(&keep)
    }

    /// Coderivative-union estimate for `d(mu)(x_bar)`, computed from the
    /// coderivative definition: the witness polyhedron
    /// `{ (x*, y*, w) : (x*, y*) in d(phi), (w, -y*) in N(gph G) }`
    /// mapped through `(x*, y*, w) -> x* + w`. This pipeline shares no
    /// intermediate set with [`Self::estimate_b0`], so their equality is a
    /// meaningful verdict rather than a tautology.
    pub fn estimate_a0(&self, x_bar: &RatVec, y_bar: &RatVec) -> Result<VPolyhedron> {
        self.check_minimizer(x_bar, y_bar)?;
        let point = x_bar.concat(y_bar);
        let sub_phi = self.objective.subdifferential(&point)?;
        self.coderivative_union(&sub_phi, &point)
    }

    /// Singular variant of [`Self::estimate_a0`].
    pub fn estimate_a0_singular(&self, x_bar: &RatVec, y_bar: &RatVec) -> Result<VPolyhedron> {
        self.check_minimizer(x_bar, y_bar)?;
        let point = x_bar.concat(y_bar);
        let sub_phi = self.objective.singular_subdifferential(&point)?;
        self.coderivative_union(&sub_phi, &point)
    }

    fn coderivative_union(&self, sub_phi: &VPolyhedron, point: &RatVec) -> Result<VPolyhedron> {
        let dx = self.map.dim_x;
        let dy = self.map.dim_y;
        if sub_phi.is_empty() {
            return Ok(VPolyhedron::empty(dx));
        }
        let cone = normal_cone(&self.map.graph, point)?;
        if cone.is_empty() {
            return Ok(VPolyhedron::empty(dx));
        }
        let total = dx + dy + dx; // blocks: x*, y*, w

        // (x*, y*) in d(phi): pad the subdifferential constraints with zeros
        // on the w block.
        let sub_h = sub_phi.to_h()?;
        let pad_tail = |row: &RatVec| -> RatVec {
            let mut v = row.entries().to_vec();
            v.resize(row.dim() + dx, Rat::zero());
            RatVec::new(v)
        };
        let mut eqs: Vec<(RatVec, Rat)> = sub_h
            .eq_lhs()
            .rows()
            .iter()
            .zip(sub_h.eq_rhs().iter())
            .map(|(row, rhs)| (pad_tail(row), rhs.clone()))
            .collect();
        let mut ineqs: Vec<(RatVec, Rat)> = sub_h
            .ineq_lhs()
            .rows()
            .iter()
            .zip(sub_h.ineq_rhs().iter())
            .map(|(row, rhs)| (pad_tail(row), rhs.clone()))
            .collect();

        // (w, -y*) in N(gph G): a normal-cone row (n_x, n_y) becomes
        // n_x . w - n_y . y* on the witness coordinates.
        let cone_h = cone.to_h()?;
        let rewrite = |row: &RatVec| -> RatVec {
            let mut v = vec![Rat::zero(); total];
            for j in 0..dy {
                v[dx + j] = -&row[dx + j];
            }
            for i in 0..dx {
                v[dx + dy + i] = row[i].clone();
            }
            RatVec::new(v)
        };
        for (row, rhs) in cone_h.eq_lhs().rows().iter().zip(cone_h.eq_rhs().iter()) {
            eqs.push((rewrite(row), rhs.clone()));
        }
        for (row, rhs) in cone_h
            .ineq_lhs()
            .rows()
            .iter()
            .zip(cone_h.ineq_rhs().iter())
        {
            ineqs.push((rewrite(row), rhs.clone()));
        }

        let witness = HPolyhedron::from_constraints(total, eqs, ineqs)?;
        // u = x* + w
        let map_rows: Vec<RatVec> = (0..dx)
            .map(|i| {
                let mut v = vec![Rat::zero(); total];
                v[i] = Rat::one();
                v[dx + dy + i] = Rat::one();
                RatVec::new(v)
            })
            .collect();
        witness
            .to_v()?
            .linear_image(&RatMat::new(map_rows, total)?)
    }

    /// Membership test for the coderivative-union set done pointwise: is
    /// there `(x*, y*)` in the objective subdifferential with
    /// `(u* - x*, -y*)` in the graph normal cone?
    pub fn membership_witness(
        &self,
        x_bar: &RatVec,
        y_bar: &RatVec,
        u_star: &RatVec,
    ) -> Result<bool> {
        let dx = self.map.dim_x;
        let dy = self.map.dim_y;
        if u_star.dim() != dx {
            return Err(Error::dim(dx, u_star.dim(), "witness point"));
        }
        let point = x_bar.concat(y_bar);
        let sub_phi = self.objective.subdifferential(&point)?;
        let cone = normal_cone(&self.map.graph, &point)?;
        if sub_phi.is_empty() || cone.is_empty() {
            return Ok(false);
        }
        let sub_h = sub_phi.to_h()?;
        let mut eqs: Vec<(RatVec, Rat)> = sub_h
            .eq_lhs()
            .rows()
            .iter()
            .zip(sub_h.eq_rhs().iter())
            .map(|(row, rhs)| (row.clone(), rhs.clone()))
            .collect();
        let mut ineqs: Vec<(RatVec, Rat)> = sub_h
            .ineq_lhs()
            .rows()
            .iter()
            .zip(sub_h.ineq_rhs().iter())
            .map(|(row, rhs)| (row.clone(), rhs.clone()))
            .collect();

        // (u* - x*, -y*) in N: row (n_x, n_y) . (u* - x*, -y*) <= rhs reads
        // -n_x . x* - n_y . y* <= rhs - n_x . u*
        let cone_h = cone.to_h()?;
        let rewrite = |row: &RatVec, rhs: &Rat| -> Result<(RatVec, Rat)> {
            let head: RatVec = row.iter().take(dx).cloned().collect();
            Ok((row.neg(), rhs - &dot(&head, u_star)?))
        };
        for (row, rhs) in cone_h.eq_lhs().rows().iter().zip(cone_h.eq_rhs().iter()) {
            eqs.push(rewrite(row, rhs)?);
        }
        for (row, rhs) in cone_h
            .ineq_lhs()
            .rows()
            .iter()
            .zip(cone_h.ineq_rhs().iter())
        {
            ineqs.push(rewrite(row, rhs)?);
        }
        HPolyhedron::from_constraints(dx + dy, eqs, ineqs)?.is_feasible()
    }

    /// Subdifferential and singular subdifferential of the value function at
    /// `x_bar`, through the value function itself: the epigraph slice at
    /// `-1` and the domain normal cone. This route never touches the
    /// estimate formulas.
    pub fn mu_subdifferentials(&self, x_bar: &RatVec) -> Result<(VPolyhedron, VPolyhedron)> {
        let mu_fn = self.value_function()?.proper()?;
        if mu_fn.eval(x_bar)?.finite().is_none() {
            return Err(Error::HypothesisViolation(
                "the base parameter lies outside the domain of the value function".into(),
            ));
        }
        let sub = mu_fn.subdifferential_via_epigraph(x_bar)?;
        let sing = normal_cone(mu_fn.domain(), x_bar)?;
        Ok((sub, sing))
    }

    /// Full verification at one base parameter. The minimizer is the given
    /// one (validated) or the lexicographically smallest vertex of the
    /// solution set. All verdicts must come out true; a false verdict
    /// indicates a bug in one of the two computation routes.
    pub fn verify_stability(
        &self,
        x_bar: &RatVec,
        y_bar_choice: Option<&RatVec>,
    ) -> Result<StabilityReport> {
        let mu = self.optimal_value(x_bar)?;
        let MuValue::Finite(_) = &mu else {
            return Err(Error::HypothesisViolation(format!(
                "optimal value at the base parameter is {mu}"
            )));
        };
        let y_bar = match y_bar_choice {
            Some(y) => {
                self.check_minimizer(x_bar, y)?;
                y.clone()
            }
            None => {
                let solutions = self.solution_set(x_bar)?;
                solutions.vertices()[0].clone()
            }
        };

        let (sub_mu, sing_mu) = self.mu_subdifferentials(x_bar)?;
        let b0 = self.estimate_b0(x_bar, &y_bar)?;
        let b0_inf = self.estimate_b0_singular(x_bar, &y_bar)?;
        let a0 = self.estimate_a0(x_bar, &y_bar)?;
        let a0_inf = self.estimate_a0_singular(x_bar, &y_bar)?;

        let mut report = StabilityReport {
            x_bar: x_bar.clone(),
            y_bar,
            mu_at_x_bar: mu,
            sub_mu,
            sing_mu,
            a0,
            b: b0.clone(),
            b0,
            a0_inf,
            b_inf: b0_inf.clone(),
            b0_inf,
            verdicts: Verdicts {
                a0_eq_b0: false,
                chain_sub: false,
                chain_sing: false,
                inclusion_sub: false,
                inclusion_sing: false,
            },
            closure_note: CLOSURE_NOTE.to_string(),
        };
        report.verdicts = report.recompute_verdicts()?;
        Ok(report)
    }

    /// The estimate sets must not depend on which minimizer is chosen:
    /// recompute them at every vertex of the solution set and at its
    /// centroid, and require all results set-equal.
    pub fn choice_independence(&self, x_bar: &RatVec) -> Result<bool> {
        let solutions = self.solution_set(x_bar)?;
        let vertices = solutions.vertices();
        let mut candidates: Vec<RatVec> = vertices.to_vec();
        if vertices.len() >= 2 {
            let sum = vertices
                .iter()
                .fold(RatVec::zeros(self.map.dim_y), |acc, v| acc.add(v));
            let count = Rat::from_int(vertices.len() as i64);
            candidates.push(sum.scale(&count.recip()));
        }
        let base_b0 = self.estimate_b0(x_bar, &candidates[0])?;
        let base_b0_inf = self.estimate_b0_singular(x_bar, &candidates[0])?;
        for y in &candidates[1..] {
            if !base_b0.set_eq(&self.estimate_b0(x_bar, y)?)? {
                return Ok(false);
            }
            if !base_b0_inf.set_eq(&self.estimate_b0_singular(x_bar, y)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
