//! Exact decision procedure for the semiring preorder generated by
//! `Xi >= 1`, with constructive transport-plan witnesses.
//!
//! `p <= q` holds exactly when the coefficient mass of `p` can be moved
//! upwards (componentwise nondecreasing exponent moves) so that it
//! reproduces `q`. After clearing denominators this is a bipartite
//! feasibility question settled by an integral max-flow.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exponent::ExponentVec;
use crate::flow::FlowNetwork;
use crate::poly::SparsePoly;
use crate::rational::{rat_from_str, rat_to_string, Rat};
use crate::{Error, Result};

/// Witness of `p <= q`: upward mass moves whose source marginal is `p` and
/// target marginal is `q`. Moves are kept sorted by (source, target) in
/// graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportPlan {
    moves: BTreeMap<(ExponentVec, ExponentVec), Rat>,
}

impl TransportPlan {
    pub fn new(moves: impl IntoIterator<Item = (ExponentVec, ExponentVec, Rat)>) -> Self {
        let mut map = BTreeMap::new();
        for (from, to, mass) in moves {
            if mass.is_zero() {
                continue;
            }
            *map.entry((from, to)).or_insert_with(Rat::zero) += mass;
        }
        TransportPlan { moves: map }
    }

    /// The identity plan of a polynomial: every term stays in place.
    pub fn identity(p: &SparsePoly) -> Self {
        TransportPlan::new(p.terms().map(|(e, c)| (e.clone(), e.clone(), c.clone())))
    }

    pub fn moves(&self) -> impl Iterator<Item = (&ExponentVec, &ExponentVec, &Rat)> {
        self.moves.iter().map(|((f, t), m)| (f, t, m))
    }

    pub fn num_moves(&self) -> usize {
        self.moves.len()
    }

    pub fn source_marginal(&self) -> BTreeMap<ExponentVec, Rat> {
        let mut out: BTreeMap<ExponentVec, Rat> = BTreeMap::new();
        for ((f, _), m) in &self.moves {
            *out.entry(f.clone()).or_insert_with(Rat::zero) += m;
        }
        out
    }

    pub fn target_marginal(&self) -> BTreeMap<ExponentVec, Rat> {
        let mut out: BTreeMap<ExponentVec, Rat> = BTreeMap::new();
        for ((_, t), m) in &self.moves {
            *out.entry(t.clone()).or_insert_with(Rat::zero) += m;
        }
        out
    }
}

impl Serialize for TransportPlan {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct MoveRepr<'a> {
            from: &'a [u32],
            to: &'a [u32],
            mass: String,
        }
        #[derive(Serialize)]
        struct PlanRepr<'a> {
            moves: Vec<MoveRepr<'a>>,
        }
        PlanRepr {
            moves: self
                .moves
                .iter()
                .map(|((f, t), m)| MoveRepr {
                    from: f.entries(),
                    to: t.entries(),
                    mass: rat_to_string(m),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TransportPlan {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct MoveRepr {
            from: Vec<u32>,
            to: Vec<u32>,
            mass: String,
        }
        #[derive(Deserialize)]
        struct PlanRepr {
            moves: Vec<MoveRepr>,
        }
        let repr = PlanRepr::deserialize(de)?;
        let mut moves = Vec::new();
        for mv in repr.moves {
            let mass = rat_from_str(&mv.mass).map_err(D::Error::custom)?;
            if !mass.is_positive() {
                return Err(D::Error::custom("move mass must be positive"));
            }
            moves.push((ExponentVec::new(mv.from), ExponentVec::new(mv.to), mass));
        }
        Ok(TransportPlan::new(moves))
    }
}

/// Cause of a negative dominance verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    #[serde(rename = "mass-mismatch")]
    MassMismatch,
    #[serde(rename = "flow-infeasible")]
    FlowInfeasible,
}

/// Outcome of [`decide`]: `comparable` iff a valid plan exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceVerdict {
    pub comparable: bool,
    pub reason: Option<Reason>,
    pub plan: Option<TransportPlan>,
}

impl DominanceVerdict {
    fn yes(plan: TransportPlan) -> Self {
        DominanceVerdict {
            comparable: true,
            reason: None,
            plan: Some(plan),
        }
    }

    fn no(reason: Reason) -> Self {
        DominanceVerdict {
            comparable: false,
            reason: Some(reason),
            plan: None,
        }
    }
}

/// Decides `p <= q` exactly and returns a witnessing plan on success.
///
/// Mass equality is necessary; after that, denominators are cleared and a
/// max-flow instance is solved on the bipartite graph whose cross arcs join
/// componentwise-comparable support points. Shared support is matched in
/// place first, which keeps `decide(p, p)` on the identity plan and shrinks
/// the flow instance.
pub fn decide(p: &SparsePoly, q: &SparsePoly) -> Result<DominanceVerdict> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    if p.mass() != q.mass() {
        return Ok(DominanceVerdict::no(Reason::MassMismatch));
    }

    // common denominator over both coefficient maps
    let mut denom_lcm = BigInt::one();
    for (_, c) in p.terms().chain(q.terms()) {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let scaled = |c: &Rat| -> BigInt {
        let v = c * Rat::from_integer(denom_lcm.clone());
        debug_assert!(v.denom().is_one());
        v.to_integer()
    };

    // match shared support in place, then solve the residual instance
    let mut diagonal: Vec<(ExponentVec, BigInt)> = Vec::new();
    let mut sources: Vec<(ExponentVec, BigInt)> = Vec::new();
    let mut sinks: Vec<(ExponentVec, BigInt)> = Vec::new();
    for (exp, c) in p.terms() {
        let pc = scaled(c);
        let qc = scaled(&q.coeff(exp));
        let matched = pc.clone().min(qc);
        if matched > BigInt::zero() {
            diagonal.push((exp.clone(), matched.clone()));
        }
        let residual = pc - &matched;
        if residual > BigInt::zero() {
            sources.push((exp.clone(), residual));
        }
    }
    for (exp, c) in q.terms() {
        let qc = scaled(c);
        let pc = scaled(&p.coeff(exp));
        let residual = qc.clone() - pc.min(qc);
        if residual > BigInt::zero() {
            sinks.push((exp.clone(), residual));
        }
    }

    let residual_total: BigInt = sources.iter().map(|(_, c)| c.clone()).sum();
    let mut moves: Vec<(ExponentVec, ExponentVec, Rat)> = Vec::new();
    let denom_rat = Rat::from_integer(denom_lcm.clone());
    for (exp, m) in &diagonal {
        moves.push((
            exp.clone(),
            exp.clone(),
            Rat::from_integer(m.clone()) / &denom_rat,
        ));
    }

    if !residual_total.is_zero() {
        // node layout: 0 = source, 1..=ns sources, then sinks, then sink
        let ns = sources.len();
        let nt = sinks.len();
        let sink_node = 1 + ns + nt;
        let mut net = FlowNetwork::new(sink_node + 1);
        for (i, (_, cap)) in sources.iter().enumerate() {
            net.add_edge(0, 1 + i, cap.clone());
        }
        for (j, (_, cap)) in sinks.iter().enumerate() {
            net.add_edge(1 + ns + j, sink_node, cap.clone());
        }
        let mut cross = Vec::new();
        for (i, (se, _)) in sources.iter().enumerate() {
            for (j, (te, _)) in sinks.iter().enumerate() {
                if se.le_componentwise(te) {
                    let e = net.add_edge(1 + i, 1 + ns + j, residual_total.clone());
                    cross.push((i, j, e));
                }
            }
        }
        let pushed = net.max_flow(0, sink_node);
        if pushed != residual_total {
            return Ok(DominanceVerdict::no(Reason::FlowInfeasible));
        }
        for (i, j, e) in &cross {
            let f = net.flow_on(e);
            if f > BigInt::zero() {
                moves.push((
                    sources[*i].0.clone(),
                    sinks[*j].0.clone(),
                    Rat::from_integer(f) / &denom_rat,
                ));
            }
        }
    }

    let plan = TransportPlan::new(moves);
    debug_assert!(validate_plan(p, q, &plan));
    Ok(DominanceVerdict::yes(plan))
}

/// True iff the plan's marginals reproduce `p` and `q` exactly and every
/// move is componentwise nondecreasing with positive mass.
pub fn validate_plan(p: &SparsePoly, q: &SparsePoly, plan: &TransportPlan) -> bool {
    for (from, to, mass) in plan.moves() {
        if !mass.is_positive() || !from.le_componentwise(to) {
            return false;
        }
    }
    let src = plan.source_marginal();
    let tgt = plan.target_marginal();
    let matches = |marg: &BTreeMap<ExponentVec, Rat>, poly: &SparsePoly| {
        marg.len() == poly.num_terms() && poly.terms().all(|(e, c)| marg.get(e) == Some(c))
    };
    matches(&src, p) && matches(&tgt, q)
}

/// Composes two plans along their shared marginal (the Riesz decomposition
/// step behind transitivity). Requires `t1`'s target marginal to equal
/// `t2`'s source marginal.
pub fn compose_plans(t1: &TransportPlan, t2: &TransportPlan) -> Result<TransportPlan> {
    if t1.target_marginal() != t2.source_marginal() {
        return Err(Error::MarginalMismatch);
    }
    // split each intermediate point's inflow against its outflow, in
    // graded-lex order on both sides for deterministic output
    let mut inflows: BTreeMap<ExponentVec, Vec<(ExponentVec, Rat)>> = BTreeMap::new();
    for (from, to, mass) in t1.moves() {
        inflows
            .entry(to.clone())
            .or_default()
            .push((from.clone(), mass.clone()));
    }
    let mut outflows: BTreeMap<ExponentVec, Vec<(ExponentVec, Rat)>> = BTreeMap::new();
    for (from, to, mass) in t2.moves() {
        outflows
            .entry(from.clone())
            .or_default()
            .push((to.clone(), mass.clone()));
    }
    let mut composed = Vec::new();
    for (mid, ins) in inflows {
        let outs = outflows.get_mut(&mid).expect("marginals already checked");
        let mut oi = 0usize;
        for (src, mut need) in ins {
            while need.is_positive() {
                let (dst, avail) = &mut outs[oi];
                let take = if *avail <= need {
                    avail.clone()
                } else {
                    need.clone()
                };
                composed.push((src.clone(), dst.clone(), take.clone()));
                *avail -= &take;
                need -= &take;
                if avail.is_zero() {
                    oi += 1;
                }
            }
        }
    }
    Ok(TransportPlan::new(composed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::rat;

    fn poly(s: &str, d: usize) -> SparsePoly {
        parse_poly(s, d).unwrap()
    }

    #[test]
    fn generator_relation_has_unit_plan() {
        let v = decide(&poly("1", 1), &poly("x1", 1)).unwrap();
        assert!(v.comparable);
        let plan = v.plan.unwrap();
        let mv: Vec<_> = plan.moves().collect();
        assert_eq!(mv.len(), 1);
        assert_eq!(mv[0].0, &ExponentVec::new(vec![0]));
        assert_eq!(mv[0].1, &ExponentVec::new(vec![1]));
        assert_eq!(mv[0].2, &rat(1));
    }

    #[test]
    fn reflexivity_returns_identity_plan() {
        let p = poly("1 + 2*x1 + 3/2*x1^3", 1);
        let v = decide(&p, &p).unwrap();
        assert!(v.comparable);
        assert_eq!(v.plan.unwrap(), TransportPlan::identity(&p));
    }

    #[test]
    fn downward_move_is_infeasible() {
        let v = decide(&poly("x1", 1), &poly("1", 1)).unwrap();
        assert!(!v.comparable);
        assert_eq!(v.reason, Some(Reason::FlowInfeasible));
        assert!(v.plan.is_none());
    }

    #[test]
    fn mass_mismatch_is_reported() {
        let v = decide(&poly("1", 1), &poly("2", 1)).unwrap();
        assert!(!v.comparable);
        assert_eq!(v.reason, Some(Reason::MassMismatch));
    }

    #[test]
    fn two_variable_join() {
        // x1 + x2 <= 2*x1*x2
        let v = decide(&poly("x1 + x2", 2), &poly("2*x1*x2", 2)).unwrap();
        assert!(v.comparable);
        let plan = v.plan.unwrap();
        assert!(validate_plan(&poly("x1 + x2", 2), &poly("2*x1*x2", 2), &plan));
    }

    #[test]
    fn incomparable_in_both_directions() {
        let p = poly("1 + x1^2", 1);
        let q = poly("2*x1", 1);
        assert!(!decide(&p, &q).unwrap().comparable);
        assert!(!decide(&q, &p).unwrap().comparable);
    }

    #[test]
    fn rejects_zero_and_mismatched_inputs() {
        let z = SparsePoly::zero(1);
        assert_eq!(decide(&z, &poly("1", 1)), Err(Error::ZeroPolynomial));
        assert_eq!(
            decide(&poly("1", 1), &poly("x2", 2)),
            Err(Error::DimensionMismatch(1, 2))
        );
    }

    #[test]
    fn validate_rejects_downward_and_perturbed_plans() {
        let p = poly("1", 1);
        let q = poly("x1", 1);
        let good = decide(&p, &q).unwrap().plan.unwrap();
        assert!(validate_plan(&p, &q, &good));

        let down = TransportPlan::new([(
            ExponentVec::new(vec![1]),
            ExponentVec::new(vec![0]),
            rat(1),
        )]);
        assert!(!validate_plan(&q, &p, &down));

        let wrong_mass = TransportPlan::new([(
            ExponentVec::new(vec![0]),
            ExponentVec::new(vec![1]),
            rat(2),
        )]);
        assert!(!validate_plan(&p, &q, &wrong_mass));
    }

    #[test]
    fn composition_chains_moves() {
        let a = TransportPlan::new([(
            ExponentVec::new(vec![0]),
            ExponentVec::new(vec![1]),
            rat(1),
        )]);
        let b = TransportPlan::new([(
            ExponentVec::new(vec![1]),
            ExponentVec::new(vec![2]),
            rat(1),
        )]);
        let c = compose_plans(&a, &b).unwrap();
        let mv: Vec<_> = c.moves().collect();
        assert_eq!(mv.len(), 1);
        assert_eq!(mv[0].0, &ExponentVec::new(vec![0]));
        assert_eq!(mv[0].1, &ExponentVec::new(vec![2]));
    }

    #[test]
    fn composition_with_identity() {
        let p = poly("1 + x1", 1);
        let q = poly("2*x1", 1);
        let t = decide(&p, &q).unwrap().plan.unwrap();
        let id = TransportPlan::identity(&p);
        assert_eq!(compose_plans(&id, &t).unwrap(), t);
        let id_q = TransportPlan::identity(&q);
        assert_eq!(compose_plans(&t, &id_q).unwrap(), t);
    }

    #[test]
    fn composition_rejects_marginal_mismatch() {
        let a = TransportPlan::new([(
            ExponentVec::new(vec![0]),
            ExponentVec::new(vec![1]),
            rat(1),
        )]);
        let b = TransportPlan::new([(
            ExponentVec::new(vec![2]),
            ExponentVec::new(vec![3]),
            rat(1),
        )]);
        assert_eq!(compose_plans(&a, &b), Err(Error::MarginalMismatch));
    }

    #[test]
    fn plan_json_round_trip() {
        let p = poly("1 + x1", 1);
        let q = poly("2*x1", 1);
        let t = decide(&p, &q).unwrap().plan.unwrap();
        let js = serde_json::to_string(&t).unwrap();
        let back: TransportPlan = serde_json::from_str(&js).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn fractional_coefficients_clear_exactly() {
        let p = poly("1/3 + 2/3*x1", 1);
        let q = poly("x1", 1);
        let v = decide(&p, &q).unwrap();
        assert!(v.comparable);
        assert!(validate_plan(&p, &q, &v.plan.unwrap()));
    }
}
