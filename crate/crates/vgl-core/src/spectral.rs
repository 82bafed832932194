//! Spectral conditions for the polynomial semiring: mass equality,
//! per-axis derivative comparisons at the all-ones point, tropical
//! support-function dominance over the simplex, and evaluation dominance
//! over the boxes `[1,oo)^d` and `(0,1]^d`.
//!
//! Evaluation conditions are verified in three tiers and the tier is
//! reported: `exact` (d = 1, Sturm sequences), `exact-sufficient` (the
//! shift substitution `Xi -> 1 + Ti` with nonnegative expansion), and
//! `sampled` (seeded grid plus random rational points; a violation found
//! this way is still an exact counterexample, but a "holds" verdict is
//! not a proof). Strict verdicts consumed downstream must come from the
//! exact tiers unless explicitly overridden.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exponent::ExponentVec;
use crate::lp::{maximize, LpConstraint, LpOutcome};
use crate::poly::SparsePoly;
use crate::rational::{rat_snap, rat_to_f64, rat_to_string, serde_rat_vec, Rat};
use crate::sturm::{interval_sign, RootLocation, UniPoly};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalSide {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TropicalSide {
    Max,
    Min,
}

/// Point of the test spectrum: an evaluation point off the all-ones vector,
/// a tropical direction on the unit simplex, or a derivation direction on
/// the simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpectrumPoint {
    Eval {
        #[serde(with = "serde_rat_vec")]
        r: Vec<Rat>,
        side: EvalSide,
    },
    Tropical {
        #[serde(with = "serde_rat_vec")]
        beta: Vec<Rat>,
        side: TropicalSide,
    },
    Derivation {
        #[serde(with = "serde_rat_vec")]
        gamma: Vec<Rat>,
    },
}

impl SpectrumPoint {
    /// Evaluation point; the side is inferred from the coordinates, which
    /// must lie in one of the two boxes and differ from the all-ones point.
    pub fn eval(r: Vec<Rat>) -> Result<Self> {
        let one = Rat::one();
        if r.is_empty() {
            return Err(Error::InvalidPoint("empty coordinate vector".into()));
        }
        if r.iter().any(|v| !v.is_positive()) {
            return Err(Error::NonpositiveCoordinate);
        }
        if r.iter().all(|v| *v == one) {
            return Err(Error::InvalidPoint(
                "the all-ones point is excluded from the spectrum".into(),
            ));
        }
        if r.iter().all(|v| *v >= one) {
            Ok(SpectrumPoint::Eval {
                r,
                side: EvalSide::Upper,
            })
        } else if r.iter().all(|v| *v <= one) {
            Ok(SpectrumPoint::Eval {
                r,
                side: EvalSide::Lower,
            })
        } else {
            Err(Error::InvalidPoint(
                "evaluation point must lie in [1,oo)^d or (0,1]^d".into(),
            ))
        }
    }

    /// Tropical direction; `beta` must lie on the unit simplex.
    pub fn tropical(beta: Vec<Rat>, side: TropicalSide) -> Result<Self> {
        check_simplex(&beta)?;
        Ok(SpectrumPoint::Tropical { beta, side })
    }

    /// Derivation direction; `gamma` must lie on the unit simplex.
    pub fn derivation(gamma: Vec<Rat>) -> Result<Self> {
        check_simplex(&gamma)?;
        Ok(SpectrumPoint::Derivation { gamma })
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        let len = match self {
            SpectrumPoint::Eval { r, .. } => {
                Self::eval(r.clone())?;
                r.len()
            }
            SpectrumPoint::Tropical { beta, .. } => {
                check_simplex(beta)?;
                beta.len()
            }
            SpectrumPoint::Derivation { gamma } => {
                check_simplex(gamma)?;
                gamma.len()
            }
        };
        if len != dim {
            return Err(Error::DimensionMismatch(dim, len));
        }
        Ok(())
    }
}

fn check_simplex(v: &[Rat]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidPoint("empty coordinate vector".into()));
    }
    if v.iter().any(|x| x.is_negative()) {
        return Err(Error::InvalidPoint(
            "simplex coordinates must be nonnegative".into(),
        ));
    }
    let total: Rat = v.iter().sum();
    if !total.is_one() {
        return Err(Error::InvalidPoint(
            "simplex coordinates must sum to 1".into(),
        ));
    }
    Ok(())
}

/// Exact form of a logarithmic comparison value. Evaluation points carry
/// the two rationals whose logarithms are taken, so the cocycle and
/// rescaling laws can be checked without floating point.
#[derive(Debug, Clone, PartialEq)]
pub enum LcValue {
    /// `log(num) / log(den)` with exact `num` and `den != 1`.
    LogRatio { num: Rat, den: Rat },
    Exact(Rat),
}

impl LcValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            LcValue::LogRatio { num, den } => rat_to_f64(num).ln() / rat_to_f64(den).ln(),
            LcValue::Exact(v) => rat_to_f64(v),
        }
    }
}

/// Logarithmic comparison map at a spectrum point, with the sign convention
/// `x <= y  =>  lc(x, y) >= 0` in every family and `lc(1, u) = 1`.
pub fn lc_exact(x: &SparsePoly, y: &SparsePoly, pt: &SpectrumPoint) -> Result<LcValue> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    if x.mass() != y.mass() {
        return Err(Error::MassMismatch);
    }
    pt.validate(x.dim())?;
    match pt {
        SpectrumPoint::Eval { r, .. } => {
            let num = y.eval(r)? / x.eval(r)?;
            let den: Rat = r.iter().product();
            debug_assert!(!den.is_one());
            Ok(LcValue::LogRatio { num, den })
        }
        SpectrumPoint::Tropical { beta, side } => {
            // h_u(beta) = sum(beta) = 1 on the simplex, for max and min alike
            let (hx, hy) = match side {
                TropicalSide::Max => (x.support_max(beta)?, y.support_max(beta)?),
                TropicalSide::Min => (x.support_min(beta)?, y.support_min(beta)?),
            };
            Ok(LcValue::Exact(hy - hx))
        }
        SpectrumPoint::Derivation { gamma } => {
            let gx = x.gradient_at_one();
            let gy = y.gradient_at_one();
            let mut diff = Rat::zero();
            for ((g, dx), dy) in gamma.iter().zip(&gx).zip(&gy) {
                diff += g * (dy - dx);
            }
            Ok(LcValue::Exact(diff / x.mass()))
        }
    }
}

pub fn lc(x: &SparsePoly, y: &SparsePoly, pt: &SpectrumPoint) -> Result<f64> {
    Ok(lc_exact(x, y, pt)?.to_f64())
}

/// Exact mass-equality test `p(1,..,1) = q(1,..,1)`.
pub fn check_mass(p: &SparsePoly, q: &SparsePoly) -> Result<bool> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p.mass() == q.mass())
}

#[derive(Debug, Clone, Serialize)]
pub struct AxisComparison {
    pub axis: usize,
    #[serde(with = "crate::rational::serde_rat")]
    pub lhs: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub rhs: Rat,
}

#[derive(Debug, Clone)]
pub struct DerivationCheck {
    pub per_axis: Vec<AxisComparison>,
    pub nonstrict: bool,
    pub strict: bool,
    /// first axis violating the reported level, if any
    pub witness_axis: Option<usize>,
}

/// Exact comparison of gradients at the all-ones point, axis by axis.
/// Simplex-interior derivation directions follow by linearity, so the
/// basis vectors decide the whole family.
pub fn check_derivations(p: &SparsePoly, q: &SparsePoly) -> Result<DerivationCheck> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    if p.mass() != q.mass() {
        return Err(Error::MassMismatch);
    }
    let gp = p.gradient_at_one();
    let gq = q.gradient_at_one();
    let mut per_axis = Vec::with_capacity(p.dim());
    let mut nonstrict = true;
    let mut strict = true;
    let mut witness_axis = None;
    for (i, (l, r)) in gp.iter().zip(&gq).enumerate() {
        per_axis.push(AxisComparison {
            axis: i + 1,
            lhs: l.clone(),
            rhs: r.clone(),
        });
        if l > r && nonstrict {
            nonstrict = false;
            witness_axis.get_or_insert(i);
        }
        if l >= r && strict {
            strict = false;
            witness_axis.get_or_insert(i);
        }
    }
    Ok(DerivationCheck {
        per_axis,
        nonstrict,
        strict,
        witness_axis,
    })
}

#[derive(Debug, Clone)]
pub struct TropicalWitness {
    pub beta: Vec<Rat>,
    /// support-function value on the `p` side at `beta`
    pub lhs: Rat,
    /// support-function value on the `q` side at `beta`
    pub rhs: Rat,
}

#[derive(Debug, Clone)]
pub struct TropicalSideResult {
    pub nonstrict: bool,
    pub strict: bool,
    /// maximizer of the support-function gap when the side fails at the
    /// strict or non-strict level
    pub witness: Option<TropicalWitness>,
}

#[derive(Debug, Clone)]
pub struct TropicalCheck {
    pub max_side: TropicalSideResult,
    pub min_side: TropicalSideResult,
}

/// Exact tropical dominance over the unit simplex.
///
/// Both support functions are homogeneous of degree 1 in `beta`, so the
/// simplex normalization loses nothing. Each subproblem maximizes a concave
/// piecewise-linear gap, expressed as a single LP per support point of the
/// appropriate side; the condition holds non-strictly iff every optimum is
/// `<= 0` and strictly iff every optimum is `< 0`.
pub fn check_tropical(p: &SparsePoly, q: &SparsePoly) -> Result<TropicalCheck> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    let d = p.dim();
    let supp_p = p.newton_support()?;
    let supp_q = q.newton_support()?;

    // variables: beta_1..beta_d, t_plus, t_minus (t = t_plus - t_minus free)
    let nv = d + 2;
    let simplex_row = {
        let mut row = vec![Rat::zero(); nv];
        for v in row.iter_mut().take(d) {
            *v = Rat::one();
        }
        row
    };

    let solve_side = |own: &[ExponentVec],
                      other: &[ExponentVec],
                      max_side: bool|
     -> TropicalSideResult {
        let mut best: Option<(Rat, Vec<Rat>)> = None;
        for s in own {
            let mut objective = vec![Rat::zero(); nv];
            for (i, &e) in s.entries().iter().enumerate() {
                objective[i] = Rat::from_integer(e.into());
            }
            if max_side {
                // max <s,beta> - t  st  <s',beta> - t <= 0 for s' in other
                objective[d] = -Rat::one();
                objective[d + 1] = Rat::one();
            } else {
                // max t - <s,beta>  st  t - <s',beta> <= 0 for s' in other
                for v in objective.iter_mut().take(d) {
                    *v = -v.clone();
                }
                objective[d] = Rat::one();
                objective[d + 1] = -Rat::one();
            }
            let mut constraints = vec![LpConstraint::eq(simplex_row.clone(), Rat::one())];
            for s2 in other {
                let mut row = vec![Rat::zero(); nv];
                for (i, &e) in s2.entries().iter().enumerate() {
                    row[i] = Rat::from_integer(e.into());
                }
                if max_side {
                    row[d] = -Rat::one();
                    row[d + 1] = Rat::one();
                } else {
                    for v in row.iter_mut().take(d) {
                        *v = -v.clone();
                    }
                    row[d] = Rat::one();
                    row[d + 1] = -Rat::one();
                }
                constraints.push(LpConstraint::le(row, Rat::zero()));
            }
            match maximize(&objective, &constraints) {
                LpOutcome::Optimal(sol) => {
                    let beta = sol.point[..d].to_vec();
                    let replace = match &best {
                        None => true,
                        Some((v, _)) => sol.value > *v,
                    };
                    if replace {
                        best = Some((sol.value, beta));
                    }
                }
                other => unreachable!("tropical LP must be solvable: {other:?}"),
            }
        }
        let (value, beta) = best.expect("nonzero polynomial has support");
        let nonstrict = !value.is_positive();
        let strict = value.is_negative();
        let witness = if strict {
            None
        } else {
            let (lhs, rhs) = if max_side {
                (
                    p.support_max(&beta).expect("nonzero"),
                    q.support_max(&beta).expect("nonzero"),
                )
            } else {
                (
                    p.support_min(&beta).expect("nonzero"),
                    q.support_min(&beta).expect("nonzero"),
                )
            };
            Some(TropicalWitness { beta, lhs, rhs })
        };
        TropicalSideResult {
            nonstrict,
            strict,
            witness,
        }
    };

    Ok(TropicalCheck {
        // max side: gaps of p's support points against q's upper envelope
        max_side: solve_side(&supp_p, &supp_q, true),
        // min side: gaps of p's lower envelope against q's support points
        min_side: solve_side(&supp_q, &supp_p, false),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerificationMode {
    Exact,
    ExactSufficient,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalCheckMode {
    /// exact tiers first (Sturm for d = 1, shift certificate otherwise),
    /// sampling as a last resort
    Auto,
    /// same tier order as `Auto`; requesting it documents the intent
    Exact,
    /// sampling only
    Sampled,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalWitness {
    /// exact rational point with the two evaluation values
    Point { r: Vec<Rat>, lhs: Rat, rhs: Rat },
    /// `p - q` vanishes at an irrational point inside this interval (d = 1)
    EqualityRoot { lo: Rat, hi: Rat },
}

#[derive(Debug, Clone)]
pub struct EvalSideResult {
    pub nonstrict: bool,
    pub strict: bool,
    pub mode: VerificationMode,
    pub witness: Option<EvalWitness>,
}

#[derive(Debug, Clone)]
pub struct EvaluationCheck {
    pub upper: EvalSideResult,
    pub lower: EvalSideResult,
}

/// Sampling parameters for the evaluation conditions.
#[derive(Debug, Clone)]
pub struct SamplingConfig {
    pub seed: u64,
    /// box radius R: upper box sampled in [1, R]^d, lower in [1/R, 1]^d
    pub box_radius: u32,
    pub grid_per_axis: usize,
    pub random_per_box: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            seed: 42,
            box_radius: 8,
            grid_per_axis: 5,
            random_per_box: 200,
        }
    }
}

/// Verifies `p(r) < q(r)` on the upper box and `p(r) > q(r)` on the lower
/// box (and their non-strict forms), through the tier policy described at
/// module level.
pub fn check_evaluations(
    p: &SparsePoly,
    q: &SparsePoly,
    mode: EvalCheckMode,
    cfg: &SamplingConfig,
) -> Result<EvaluationCheck> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    if p.mass() != q.mass() {
        return Err(Error::MassMismatch);
    }
    let d = p.dim();

    if p == q {
        let equal_witness = |r: Vec<Rat>| {
            let v = p.eval(&r).expect("positive point");
            EvalWitness::Point {
                r,
                lhs: v.clone(),
                rhs: v,
            }
        };
        let upper = EvalSideResult {
            nonstrict: true,
            strict: false,
            mode: VerificationMode::Exact,
            witness: Some(equal_witness(vec![Rat::from_integer(2.into()); d])),
        };
        let lower = EvalSideResult {
            nonstrict: true,
            strict: false,
            mode: VerificationMode::Exact,
            witness: Some(equal_witness(vec![Rat::new(1.into(), 2.into()); d])),
        };
        return Ok(EvaluationCheck { upper, lower });
    }

    if d == 1 && mode != EvalCheckMode::Sampled {
        return Ok(check_evaluations_sturm(p, q));
    }
    if mode != EvalCheckMode::Sampled {
        if let Some(result) = check_evaluations_shift(p, q, cfg) {
            return Ok(result);
        }
    }
    Ok(EvaluationCheck {
        upper: sample_side(p, q, EvalSide::Upper, cfg),
        lower: sample_side(p, q, EvalSide::Lower, cfg),
    })
}

/// d = 1 exact tier: sign analysis of `diff = q - p` via Sturm sequences.
fn check_evaluations_sturm(p: &SparsePoly, q: &SparsePoly) -> EvaluationCheck {
    let mut coeffs: BTreeMap<u32, Rat> = BTreeMap::new();
    for (e, c) in q.terms() {
        *coeffs.entry(e.entries()[0]).or_insert_with(Rat::zero) += c;
    }
    for (e, c) in p.terms() {
        *coeffs.entry(e.entries()[0]).or_insert_with(Rat::zero) -= c;
    }
    let deg = *coeffs.keys().max().unwrap() as usize;
    let mut dense = vec![Rat::zero(); deg + 1];
    for (e, c) in coeffs {
        dense[e as usize] = c;
    }
    let diff = UniPoly::new(dense);
    debug_assert!(!diff.is_zero(), "p == q handled by the caller");

    // diff = X^k (X-1)^m h with h(0) != 0, h(1) != 0;
    // sign(diff) = sign(h) on (1,oo) and (-1)^m sign(h) on (0,1)
    let (h1, _k) = diff.strip_root(&Rat::zero());
    let (h, m) = h1.strip_root(&Rat::one());

    let witness_at = |r: &Rat| EvalWitness::Point {
        r: vec![r.clone()],
        lhs: p.eval(std::slice::from_ref(r)).expect("positive point"),
        rhs: q.eval(std::slice::from_ref(r)).expect("positive point"),
    };
    let root_witness = |loc: &RootLocation| match loc {
        RootLocation::Exact(r) => witness_at(r),
        RootLocation::Isolated(lo, hi) => EvalWitness::EqualityRoot {
            lo: lo.clone(),
            hi: hi.clone(),
        },
    };

    // upper box (1, oo): need diff >= 0 resp. > 0
    let up = interval_sign(&h, &Rat::one(), None);
    let upper = EvalSideResult {
        nonstrict: up.nonneg,
        strict: up.pos,
        mode: VerificationMode::Exact,
        witness: if !up.nonneg {
            up.neg_witness.as_ref().map(|r| witness_at(r))
        } else if !up.pos {
            up.interior_root.as_ref().map(root_witness)
        } else {
            None
        },
    };

    // lower box (0, 1): need diff <= 0 resp. < 0
    let low = interval_sign(&h, &Rat::zero(), Some(&Rat::one()));
    let flip = m % 2 == 1; // sign(diff) = (-1)^m sign(h) there
    let (lower_nonstrict, lower_strict, bad_point) = if flip {
        (low.nonneg, low.pos, low.neg_witness.clone())
    } else {
        (low.nonpos, low.neg, low.pos_witness.clone())
    };
    let lower = EvalSideResult {
        nonstrict: lower_nonstrict,
        strict: lower_strict,
        mode: VerificationMode::Exact,
        witness: if !lower_nonstrict {
            bad_point.as_ref().map(|r| witness_at(r))
        } else if !lower_strict {
            low.interior_root.as_ref().map(root_witness)
        } else {
            None
        },
    };

    EvaluationCheck { upper, lower }
}

/// Signed exponent-indexed coefficient map of `q - p`.
fn signed_diff(p: &SparsePoly, q: &SparsePoly) -> BTreeMap<ExponentVec, Rat> {
    let mut diff: BTreeMap<ExponentVec, Rat> = BTreeMap::new();
    for (e, c) in q.terms() {
        *diff.entry(e.clone()).or_insert_with(Rat::zero) += c;
    }
    for (e, c) in p.terms() {
        *diff.entry(e.clone()).or_insert_with(Rat::zero) -= c;
    }
    diff.retain(|_, c| !c.is_zero());
    diff
}

enum ShiftOutcome {
    /// all expansion coefficients nonnegative; strict additionally certified
    /// when every pure-linear coefficient is positive
    Certified { strict_certified: bool },
    /// a negative pure-linear coefficient refutes the non-strict condition
    /// along this axis
    Refuted { axis: usize },
    /// the condition degenerates to equality along this axis, which refutes
    /// strictness exactly while the non-strict side stays certified
    AxisEquality { axis: usize },
    Inconclusive,
}

/// Expands `sum_a c_a prod_i (1 + T_i)^{n_i(a)}` and classifies the result.
/// `n_i(a) = a_i` certifies the upper box; `n_i(a) = D_i - a_i` (with the
/// overall sign flipped) certifies the lower box.
fn classify_shift(terms: &BTreeMap<ExponentVec, Rat>, dim: usize, exps_of: impl Fn(&ExponentVec) -> Vec<u32>) -> ShiftOutcome {
    // budget on the dense expansion size
    let mut budget: u64 = 0;
    for exp in terms.keys() {
        let mut prod: u64 = 1;
        for &e in exps_of(exp).iter() {
            prod = prod.saturating_mul(e as u64 + 1);
        }
        budget = budget.saturating_add(prod);
        if budget > 4_000_000 {
            return ShiftOutcome::Inconclusive;
        }
    }

    let mut expansion: BTreeMap<ExponentVec, Rat> = BTreeMap::new();
    for (exp, coeff) in terms {
        let shifted = exps_of(exp);
        // iterate over all componentwise-below multi-indices
        let mut idx = vec![0u32; dim];
        loop {
            let mut binom = BigInt::one();
            for (i, &b) in idx.iter().enumerate() {
                binom *= binomial(BigInt::from(shifted[i]), BigInt::from(b));
            }
            let key = ExponentVec::new(idx.clone());
            *expansion.entry(key).or_insert_with(Rat::zero) +=
                coeff * Rat::from_integer(binom);
            // odometer over the box prod [0, shifted_i]
            let mut carry = true;
            for i in 0..dim {
                if !carry {
                    break;
                }
                if idx[i] < shifted[i] {
                    idx[i] += 1;
                    carry = false;
                } else {
                    idx[i] = 0;
                }
            }
            if carry {
                break;
            }
        }
    }
    expansion.retain(|_, c| !c.is_zero());

    let mut linear = vec![Rat::zero(); dim];
    for (i, l) in linear.iter_mut().enumerate() {
        *l = expansion
            .get(&ExponentVec::unit(dim, i))
            .cloned()
            .unwrap_or_else(Rat::zero);
    }
    for (i, l) in linear.iter().enumerate() {
        if l.is_negative() {
            return ShiftOutcome::Refuted { axis: i };
        }
    }
    if expansion.values().any(|c| c.is_negative()) {
        return ShiftOutcome::Inconclusive;
    }
    if linear.iter().all(|l| l.is_positive()) {
        return ShiftOutcome::Certified {
            strict_certified: true,
        };
    }
    // some axis has zero derivative: if the expansion has no mass on that
    // axis at all, the condition is an exact equality along it
    for i in 0..dim {
        if linear[i].is_zero() {
            let axis_has_mass = expansion.keys().any(|e| {
                e.entries()[i] > 0 && e.entries().iter().enumerate().all(|(j, &v)| j == i || v == 0)
            });
            if !axis_has_mass {
                return ShiftOutcome::AxisEquality { axis: i };
            }
        }
    }
    ShiftOutcome::Certified {
        strict_certified: false,
    }
}

/// Multi-d exact-sufficient tier. Returns `None` when either side stays
/// inconclusive and the caller should fall back to sampling for the
/// undecided claims.
fn check_evaluations_shift(
    p: &SparsePoly,
    q: &SparsePoly,
    cfg: &SamplingConfig,
) -> Option<EvaluationCheck> {
    let d = p.dim();
    let diff = signed_diff(p, q);

    // upper box: substitute X_i -> 1 + T_i into q - p, want >= 0
    let upper_shift = classify_shift(&diff, d, |e| e.entries().to_vec());
    // lower box: substitute X_i -> 1/(1+T_i) into p - q and clear
    // denominators: sum_a (p-q)_a prod (1+T_i)^{D_i - a_i} must be >= 0
    let mut max_deg = vec![0u32; d];
    for e in diff.keys() {
        for (m, &v) in max_deg.iter_mut().zip(e.entries()) {
            *m = (*m).max(v);
        }
    }
    let neg_diff: BTreeMap<ExponentVec, Rat> =
        diff.iter().map(|(e, c)| (e.clone(), -c)).collect();
    let lower_shift = classify_shift(&neg_diff, d, |e| {
        max_deg
            .iter()
            .zip(e.entries())
            .map(|(m, v)| m - v)
            .collect()
    });

    let resolve = |outcome: ShiftOutcome, side: EvalSide| -> Option<EvalSideResult> {
        match outcome {
            ShiftOutcome::Certified { strict_certified } => {
                if strict_certified {
                    Some(EvalSideResult {
                        nonstrict: true,
                        strict: true,
                        mode: VerificationMode::ExactSufficient,
                        witness: None,
                    })
                } else {
                    // non-strict certified; hunt for an exact equality point
                    // by sampling before claiming strictness at sampled trust
                    let found = sample_violation(p, q, side, cfg);
                    match found {
                        Some(w) => Some(EvalSideResult {
                            nonstrict: true,
                            strict: false,
                            mode: VerificationMode::Sampled,
                            witness: Some(w),
                        }),
                        None => Some(EvalSideResult {
                            nonstrict: true,
                            strict: true,
                            mode: VerificationMode::Sampled,
                            witness: None,
                        }),
                    }
                }
            }
            ShiftOutcome::Refuted { axis } => {
                let w = refutation_witness(p, q, side, axis);
                Some(EvalSideResult {
                    nonstrict: false,
                    strict: false,
                    mode: VerificationMode::ExactSufficient,
                    witness: Some(w),
                })
            }
            ShiftOutcome::AxisEquality { axis } => {
                let mut r = vec![Rat::one(); d];
                r[axis] = match side {
                    EvalSide::Upper => Rat::from_integer(2.into()),
                    EvalSide::Lower => Rat::new(1.into(), 2.into()),
                };
                let lhs = p.eval(&r).expect("positive point");
                let rhs = q.eval(&r).expect("positive point");
                Some(EvalSideResult {
                    nonstrict: true,
                    strict: false,
                    mode: VerificationMode::ExactSufficient,
                    witness: Some(EvalWitness::Point { r, lhs, rhs }),
                })
            }
            ShiftOutcome::Inconclusive => None,
        }
    };

    let upper = resolve(upper_shift, EvalSide::Upper);
    let lower = resolve(lower_shift, EvalSide::Lower);
    match (upper, lower) {
        (Some(upper), Some(lower)) => Some(EvaluationCheck { upper, lower }),
        _ => None,
    }
}

/// Exact violation point after a negative linear shift coefficient: walk
/// toward the all-ones point along the axis until the exact evaluation
/// confirms the violation predicted by the derivative sign.
fn refutation_witness(p: &SparsePoly, q: &SparsePoly, side: EvalSide, axis: usize) -> EvalWitness {
    let d = p.dim();
    let mut eps = Rat::one();
    let half = Rat::new(1.into(), 2.into());
    loop {
        let mut r = vec![Rat::one(); d];
        match side {
            EvalSide::Upper => r[axis] = Rat::one() + &eps,
            EvalSide::Lower => r[axis] = Rat::one() / (Rat::one() + &eps),
        }
        let lhs = p.eval(&r).expect("positive point");
        let rhs = q.eval(&r).expect("positive point");
        let violated = match side {
            EvalSide::Upper => lhs > rhs,
            EvalSide::Lower => lhs < rhs,
        };
        if violated {
            return EvalWitness::Point { r, lhs, rhs };
        }
        eps *= &half;
    }
}

/// Seeded rational sample points in the given box, off the all-ones point.
pub fn sample_eval_points(
    dim: usize,
    side: EvalSide,
    radius: u32,
    count: usize,
    seed: u64,
) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ln_r = (radius.max(2) as f64).ln();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut point = Vec::with_capacity(dim);
        for _ in 0..dim {
            let t: f64 = rng.gen_range(0.0..=1.0);
            let v = (t * ln_r).exp();
            let snapped = rat_snap(v, 4096);
            let coord = match side {
                EvalSide::Upper => {
                    if snapped < Rat::one() {
                        Rat::one()
                    } else {
                        snapped
                    }
                }
                EvalSide::Lower => {
                    let s = if snapped < Rat::one() {
                        Rat::one()
                    } else {
                        snapped
                    };
                    Rat::one() / s
                }
            };
            point.push(coord);
        }
        if point.iter().all(|v| v.is_one()) {
            continue;
        }
        out.push(point);
    }
    out
}

fn grid_points(dim: usize, side: EvalSide, cfg: &SamplingConfig) -> Vec<Vec<Rat>> {
    let g = cfg.grid_per_axis.max(2);
    // full grid only while it stays desk-sized
    if g.saturating_pow(dim as u32) > 8192 {
        return Vec::new();
    }
    let mut axis_vals = Vec::with_capacity(g);
    let ln_r = (cfg.box_radius.max(2) as f64).ln();
    for i in 0..g {
        let v = ((i as f64 / (g - 1) as f64) * ln_r).exp();
        let snapped = rat_snap(v, 4096);
        let snapped = if snapped < Rat::one() {
            Rat::one()
        } else {
            snapped
        };
        axis_vals.push(match side {
            EvalSide::Upper => snapped,
            EvalSide::Lower => Rat::one() / snapped,
        });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let point: Vec<Rat> = idx.iter().map(|&i| axis_vals[i].clone()).collect();
        if !point.iter().all(|v| v.is_one()) {
            out.push(point);
        }
        let mut carry = true;
        for slot in idx.iter_mut() {
            if !carry {
                break;
            }
            if *slot + 1 < g {
                *slot += 1;
                carry = false;
            } else {
                *slot = 0;
            }
        }
        if carry {
            break;
        }
    }
    out
}

/// First sampled point violating the side's strict condition, with exact
/// evaluations. Equality counts as a strictness violation.
fn sample_violation(
    p: &SparsePoly,
    q: &SparsePoly,
    side: EvalSide,
    cfg: &SamplingConfig,
) -> Option<EvalWitness> {
    let d = p.dim();
    let seed = cfg.seed ^ 0x5eed_0001;
    let mut points = grid_points(d, side, cfg);
    points.extend(sample_eval_points(d, side, cfg.box_radius, cfg.random_per_box, seed));
    for r in points {
        let lhs = p.eval(&r).expect("positive point");
        let rhs = q.eval(&r).expect("positive point");
        let strict_ok = match side {
            EvalSide::Upper => lhs < rhs,
            EvalSide::Lower => lhs > rhs,
        };
        if !strict_ok {
            return Some(EvalWitness::Point { r, lhs, rhs });
        }
    }
    None
}

fn sample_side(
    p: &SparsePoly,
    q: &SparsePoly,
    side: EvalSide,
    cfg: &SamplingConfig,
) -> EvalSideResult {
    match sample_violation(p, q, side, cfg) {
        Some(EvalWitness::Point { r, lhs, rhs }) => {
            let equality = lhs == rhs;
            EvalSideResult {
                nonstrict: equality,
                strict: false,
                mode: VerificationMode::Sampled,
                witness: Some(EvalWitness::Point { r, lhs, rhs }),
            }
        }
        _ => EvalSideResult {
            nonstrict: true,
            strict: true,
            mode: VerificationMode::Sampled,
            witness: None,
        },
    }
}

/// Witness serialization for reports: the point, and the two compared
/// values as exact rational strings (`lhs` from `p`, `rhs` from `q`).
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub point: serde_json_point::PointRepr,
    pub lhs: String,
    pub rhs: String,
}

/// Serializable spectrum/report point forms.
pub mod serde_json_point {
    use super::*;

    #[derive(Debug, Clone, Serialize)]
    #[serde(tag = "kind", rename_all = "kebab-case")]
    pub enum PointRepr {
        Eval {
            r: Vec<String>,
            side: EvalSide,
        },
        Tropical {
            beta: Vec<String>,
            side: TropicalSide,
        },
        Derivation {
            gamma: Vec<String>,
        },
        RootInterval {
            lo: String,
            hi: String,
        },
        Equality,
    }
}

use serde_json_point::PointRepr;

#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub name: String,
    pub family: String,
    pub holds: bool,
    pub strict: bool,
    pub mode: VerificationMode,
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub mass_equal: bool,
    pub mass_p: String,
    pub mass_q: String,
    pub strict_requested: bool,
    pub conditions: Vec<ConditionReport>,
}

impl SpectralReport {
    /// Every condition holds non-strictly (and masses agree).
    pub fn passes_nonstrict(&self) -> bool {
        self.mass_equal && self.conditions.iter().all(|c| c.holds)
    }

    /// Every condition holds strictly; when `require_exact_modes` is set,
    /// strict evaluation verdicts resting on sampling are rejected.
    pub fn passes_strict(&self, require_exact_modes: bool) -> bool {
        self.mass_equal
            && self.conditions.iter().all(|c| {
                c.strict && (!require_exact_modes || c.mode != VerificationMode::Sampled)
            })
    }
}

fn rat_vec_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

/// Aggregates all spectral conditions for the pair. Tropical conditions
/// need no mass equality and always run; derivation and evaluation
/// conditions apply only to mass-equal pairs and are skipped (with
/// `mass_equal = false` making the report fail) otherwise.
pub fn spectral_report(
    p: &SparsePoly,
    q: &SparsePoly,
    strict: bool,
    cfg: &SamplingConfig,
    eval_mode: EvalCheckMode,
) -> Result<SpectralReport> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    let mass_p = p.mass();
    let mass_q = q.mass();
    let mass_equal = mass_p == mass_q;
    let mut conditions = Vec::new();

    let tropical = check_tropical(p, q)?;
    for (name, side_result, side) in [
        ("tropical-max", &tropical.max_side, TropicalSide::Max),
        ("tropical-min", &tropical.min_side, TropicalSide::Min),
    ] {
        conditions.push(ConditionReport {
            name: name.into(),
            family: "tropical".into(),
            holds: side_result.nonstrict,
            strict: side_result.strict,
            mode: VerificationMode::Exact,
            witness: side_result.witness.as_ref().map(|w| WitnessReport {
                point: PointRepr::Tropical {
                    beta: rat_vec_strings(&w.beta),
                    side,
                },
                lhs: rat_to_string(&w.lhs),
                rhs: rat_to_string(&w.rhs),
            }),
        });
    }

    if mass_equal {
        let deriv = check_derivations(p, q)?;
        conditions.push(ConditionReport {
            name: "derivations".into(),
            family: "derivation".into(),
            holds: deriv.nonstrict,
            strict: deriv.strict,
            mode: VerificationMode::Exact,
            witness: deriv.witness_axis.map(|i| {
                let axis = &deriv.per_axis[i];
                let mut gamma = vec![Rat::zero(); p.dim()];
                gamma[i] = Rat::one();
                WitnessReport {
                    point: PointRepr::Derivation {
                        gamma: rat_vec_strings(&gamma),
                    },
                    lhs: rat_to_string(&axis.lhs),
                    rhs: rat_to_string(&axis.rhs),
                }
            }),
        });

        let evals = check_evaluations(p, q, eval_mode, cfg)?;
        for (name, side_result, side) in [
            ("evaluation-upper", &evals.upper, EvalSide::Upper),
            ("evaluation-lower", &evals.lower, EvalSide::Lower),
        ] {
            conditions.push(ConditionReport {
                name: name.into(),
                family: "evaluation".into(),
                holds: side_result.nonstrict,
                strict: side_result.strict,
                mode: side_result.mode,
                witness: side_result.witness.as_ref().map(|w| match w {
                    EvalWitness::Point { r, lhs, rhs } => WitnessReport {
                        point: PointRepr::Eval {
                            r: rat_vec_strings(r),
                            side,
                        },
                        lhs: rat_to_string(lhs),
                        rhs: rat_to_string(rhs),
                    },
                    EvalWitness::EqualityRoot { lo, hi } => WitnessReport {
                        point: PointRepr::RootInterval {
                            lo: rat_to_string(lo),
                            hi: rat_to_string(hi),
                        },
                        lhs: "0".into(),
                        rhs: "0".into(),
                    },
                }),
            });
        }
    }

    Ok(SpectralReport {
        mass_equal,
        mass_p: rat_to_string(&mass_p),
        mass_q: rat_to_string(&mass_q),
        strict_requested: strict,
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::{rat, rat_frac};

    fn poly(s: &str, d: usize) -> SparsePoly {
        parse_poly(s, d).unwrap()
    }

    #[test]
    fn mass_check_examples() {
        assert!(check_mass(&poly("1 + x1", 1), &poly("2*x1", 1)).unwrap());
        assert!(!check_mass(&poly("1", 1), &poly("2", 1)).unwrap());
        let p = poly("1 + 3*x1", 1);
        let px = p.checked_mul(&poly("x1", 1)).unwrap();
        assert!(check_mass(&p, &px).unwrap());
        assert!(check_mass(&SparsePoly::zero(1), &p).is_err());
    }

    #[test]
    fn derivation_check_examples() {
        // p = 1 + x^2, q = 2x: derivatives 2 and 2 -> non-strict only
        let c = check_derivations(&poly("1 + x1^2", 1), &poly("2*x1", 1)).unwrap();
        assert!(c.nonstrict && !c.strict);
        assert_eq!(c.per_axis[0].lhs, rat(2));
        assert_eq!(c.per_axis[0].rhs, rat(2));

        // p = 2, q = 1 + x: 0 < 1 strict
        let c = check_derivations(&poly("2", 1), &poly("1 + x1", 1)).unwrap();
        assert!(c.nonstrict && c.strict);

        // p = q: equality on every axis
        let p = poly("1 + x1 + x2", 2);
        let c = check_derivations(&p, &p).unwrap();
        assert!(c.nonstrict && !c.strict);

        assert!(matches!(
            check_derivations(&poly("1", 1), &poly("2", 1)),
            Err(Error::MassMismatch)
        ));
    }

    #[test]
    fn tropical_one_point_simplex() {
        // d=1: p = 1 + x^2 vs q = 2x: h_p(1) = 2 > h_q(1) = 1 -> max fails
        let t = check_tropical(&poly("1 + x1^2", 1), &poly("2*x1", 1)).unwrap();
        assert!(!t.max_side.nonstrict);
        let w = t.max_side.witness.unwrap();
        assert_eq!(w.lhs, rat(2));
        assert_eq!(w.rhs, rat(1));

        // p = 2x, q = 1 + x^2: max side 1 < 2 strict; min side 1 < 0 fails
        let t = check_tropical(&poly("2*x1", 1), &poly("1 + x1^2", 1)).unwrap();
        assert!(t.max_side.strict);
        assert!(!t.min_side.nonstrict);
        let w = t.min_side.witness.unwrap();
        assert_eq!(w.lhs, rat(1));
        assert_eq!(w.rhs, rat(0));
    }

    #[test]
    fn tropical_two_dim_vertices_touch() {
        // p = x1 + x2, q = 2 x1 x2: at simplex vertices the support maxima
        // agree (1 = 1), so the max side holds non-strictly but not strictly;
        // the min side is strict (gap -1/2 at the barycenter is the best).
        let p = poly("x1 + x2", 2);
        let q = poly("2*x1*x2", 2);
        let t = check_tropical(&p, &q).unwrap();
        assert!(t.max_side.nonstrict);
        assert!(!t.max_side.strict);
        let w = t.max_side.witness.unwrap();
        assert_eq!(w.lhs, w.rhs);
        assert!(t.min_side.nonstrict && t.min_side.strict);
    }

    #[test]
    fn evaluation_square_difference_d1() {
        // p = 2x, q = 1 + x^2: diff = (x-1)^2, upper strict holds, lower
        // fails with an exact witness
        let e = check_evaluations(
            &poly("2*x1", 1),
            &poly("1 + x1^2", 1),
            EvalCheckMode::Auto,
            &SamplingConfig::default(),
        )
        .unwrap();
        assert!(e.upper.nonstrict && e.upper.strict);
        assert_eq!(e.upper.mode, VerificationMode::Exact);
        assert!(!e.lower.nonstrict && !e.lower.strict);
        match e.lower.witness.unwrap() {
            EvalWitness::Point { r, lhs, rhs } => {
                assert!(r[0] < rat(1));
                assert!(lhs < rhs);
            }
            other => panic!("expected point witness, got {other:?}"),
        }
    }

    #[test]
    fn evaluation_equal_pair() {
        let p = poly("1 + x1", 1);
        let e = check_evaluations(&p, &p, EvalCheckMode::Auto, &SamplingConfig::default())
            .unwrap();
        assert!(e.upper.nonstrict && !e.upper.strict);
        assert!(e.lower.nonstrict && !e.lower.strict);
    }

    #[test]
    fn evaluation_touching_root_off_one() {
        // q - p = (x-2)^2: nonstrict holds on (1,oo), strict fails at x=2
        // p = 4x + x^2, q = 4 + 2x^2 - ... construct directly:
        // (x-2)^2 = x^2 - 4x + 4 -> q = x^2 + 4, p = 4x
        let p = poly("4*x1", 1);
        let q = poly("4 + x1^2", 1);
        let e = check_evaluations(&p, &q, EvalCheckMode::Auto, &SamplingConfig::default())
            .unwrap();
        assert!(e.upper.nonstrict && !e.upper.strict);
        match e.upper.witness.unwrap() {
            EvalWitness::Point { r, lhs, rhs } => {
                assert_eq!(r[0], rat(2));
                assert_eq!(lhs, rhs);
            }
            other => panic!("expected exact equality point, got {other:?}"),
        }
    }

    #[test]
    fn evaluation_shift_certificate_d2() {
        // p = 1 + x1 x2, q = x1 + x2 fails the upper box (witness at (2,2));
        // the reverse orientation is certified by the shift test
        let p = poly("1 + x1*x2", 2);
        let q = poly("x1 + x2", 2);
        let e = check_evaluations(&p, &q, EvalCheckMode::Auto, &SamplingConfig::default())
            .unwrap();
        assert!(!e.upper.nonstrict);
        match e.upper.witness.unwrap() {
            EvalWitness::Point { r, lhs, rhs } => {
                let rv = p.eval(&r).unwrap();
                assert_eq!(rv, lhs);
                assert!(lhs > rhs);
            }
            other => panic!("expected point witness, got {other:?}"),
        }
    }

    #[test]
    fn evaluation_shift_strict_d2() {
        // p = x1 + x2, q = 1 + x1 x2: diff = 1 + x1 x2 - x1 - x2 = (1-x1)(1-x2)
        // expands to T1 T2 >= 0 with zero linear coefficients; the T1-axis is
        // flat, so strictness fails exactly with an axis witness
        let p = poly("x1 + x2", 2);
        let q = poly("1 + x1*x2", 2);
        let e = check_evaluations(&p, &q, EvalCheckMode::Auto, &SamplingConfig::default())
            .unwrap();
        assert!(e.upper.nonstrict && !e.upper.strict);
        assert_eq!(e.upper.mode, VerificationMode::ExactSufficient);
    }

    #[test]
    fn lc_normalization_and_derivation_example() {
        // lc(1, u) = 1 at an upper evaluation point
        let one = SparsePoly::one(2);
        let u = SparsePoly::all_vars_product(2);
        let pt = SpectrumPoint::eval(vec![rat(2), rat(2)]).unwrap();
        let v = lc(&one, &u, &pt).unwrap();
        assert!((v - 1.0).abs() < 1e-12);

        // derivation point e1 with x = 1 + X, y = 2X: (2 - 1) / 2
        let x = poly("1 + x1", 1);
        let y = poly("2*x1", 1);
        let pt = SpectrumPoint::derivation(vec![rat(1)]).unwrap();
        assert_eq!(
            lc_exact(&x, &y, &pt).unwrap(),
            LcValue::Exact(rat_frac(1, 2))
        );
    }

    #[test]
    fn lc_normalization_all_families() {
        let one = SparsePoly::one(2);
        let u = SparsePoly::all_vars_product(2);
        let half = rat_frac(1, 2);
        let points = [
            SpectrumPoint::eval(vec![rat(2), rat(2)]).unwrap(),
            SpectrumPoint::eval(vec![half.clone(), half.clone()]).unwrap(),
            SpectrumPoint::tropical(vec![half.clone(), half.clone()], TropicalSide::Max).unwrap(),
            SpectrumPoint::tropical(vec![half.clone(), half.clone()], TropicalSide::Min).unwrap(),
            SpectrumPoint::derivation(vec![half.clone(), half.clone()]).unwrap(),
        ];
        for pt in &points {
            let v = lc(&one, &u, pt).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "lc(1,u) != 1 at {pt:?}");
        }
    }

    #[test]
    fn lc_rejects_invalid_points() {
        let p = poly("1 + x1", 1);
        assert!(SpectrumPoint::eval(vec![rat(1)]).is_err());
        assert!(SpectrumPoint::eval(vec![rat(0)]).is_err());
        assert!(SpectrumPoint::tropical(vec![rat_frac(1, 2)], TropicalSide::Max).is_err());
        let pt = SpectrumPoint::derivation(vec![rat(1)]).unwrap();
        assert_eq!(
            lc(&p, &poly("3*x1", 1), &pt),
            Err(Error::MassMismatch)
        );
    }

    #[test]
    fn spectral_report_failing_trio() {
        // (1 + x^2, 2x): derivation strict fails, tropical max fails,
        // lower evaluation fails
        let rep = spectral_report(
            &poly("1 + x1^2", 1),
            &poly("2*x1", 1),
            true,
            &SamplingConfig::default(),
            EvalCheckMode::Auto,
        )
        .unwrap();
        assert!(rep.mass_equal);
        let by_name = |n: &str| rep.conditions.iter().find(|c| c.name == n).unwrap();
        assert!(!by_name("tropical-max").holds);
        assert!(by_name("derivations").holds && !by_name("derivations").strict);
        assert!(!by_name("evaluation-lower").holds);
        assert!(!rep.passes_strict(true));
        assert!(!rep.passes_nonstrict());
    }

    #[test]
    fn spectral_report_generator_pair() {
        // (1, x): everything strict
        let rep = spectral_report(
            &poly("1", 1),
            &poly("x1", 1),
            true,
            &SamplingConfig::default(),
            EvalCheckMode::Auto,
        )
        .unwrap();
        assert!(rep.passes_nonstrict());
        assert!(rep.passes_strict(true));
        for c in &rep.conditions {
            assert_eq!(c.mode, VerificationMode::Exact);
        }
    }

    #[test]
    fn spectral_report_identical_pair_strict_fails() {
        let p = poly("1 + 2*x1", 1);
        let rep = spectral_report(
            &p,
            &p,
            true,
            &SamplingConfig::default(),
            EvalCheckMode::Auto,
        )
        .unwrap();
        assert!(rep.passes_nonstrict());
        assert!(!rep.passes_strict(false));
        let eq_witness = rep
            .conditions
            .iter()
            .filter(|c| c.family == "evaluation")
            .all(|c| c.witness.is_some());
        assert!(eq_witness);
    }

    #[test]
    fn mass_mismatch_skips_derivation_conditions() {
        let rep = spectral_report(
            &poly("1", 1),
            &poly("2", 1),
            false,
            &SamplingConfig::default(),
            EvalCheckMode::Auto,
        )
        .unwrap();
        assert!(!rep.mass_equal);
        assert!(!rep.passes_nonstrict());
        assert!(rep.conditions.iter().all(|c| c.family == "tropical"));
    }
}
