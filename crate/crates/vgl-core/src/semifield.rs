//! The five model preordered semifields, the ambient preorder, the type
//! classifier and logarithmic evaluation rates.
//!
//! All five models compute with exact rationals: the real pair with plain
//! arithmetic, the tropical pair in the multiplicative picture `(max, *)`,
//! and the arctic model as dual numbers `r + s*eps` with `eps^2 = 0`. Only
//! order direction distinguishes a model from its `-op` twin.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::rational::{rat_snap, rat_to_f64, rat_to_string, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Real,
    RealOp,
    Tropical,
    TropicalOp,
    Arctic,
}

impl Model {
    pub const ALL: [Model; 5] = [
        Model::Real,
        Model::RealOp,
        Model::Tropical,
        Model::TropicalOp,
        Model::Arctic,
    ];

    /// The model with the reversed order (arctic is its own opposite).
    pub fn opposite(self) -> Model {
        match self {
            Model::Real => Model::RealOp,
            Model::RealOp => Model::Real,
            Model::Tropical => Model::TropicalOp,
            Model::TropicalOp => Model::Tropical,
            Model::Arctic => Model::Arctic,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Real => "real",
            Model::RealOp => "real-op",
            Model::Tropical => "tropical",
            Model::TropicalOp => "tropical-op",
            Model::Arctic => "arctic",
        }
    }

    pub fn parse(s: &str) -> Option<Model> {
        Model::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Element of one of the five models. Real and tropical values are
/// nonnegative rationals (zero is the semifield zero); arctic values are
/// dual numbers `r + s*eps` with `r > 0`, or the zero `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemifieldValue {
    Real(Rat),
    RealOp(Rat),
    Tropical(Rat),
    TropicalOp(Rat),
    Arctic { r: Rat, s: Rat },
}

/// Exact partial-order verdict. `Le` and `Ge` are strict; `Eq` carries both
/// directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PartialOrderResult {
    Le,
    Ge,
    Eq,
    Incomparable,
}

impl PartialOrderResult {
    /// `x <= y` in the preorder sense.
    pub fn le(self) -> bool {
        matches!(self, PartialOrderResult::Le | PartialOrderResult::Eq)
    }

    pub fn ge(self) -> bool {
        matches!(self, PartialOrderResult::Ge | PartialOrderResult::Eq)
    }

    fn flip(self) -> Self {
        match self {
            PartialOrderResult::Le => PartialOrderResult::Ge,
            PartialOrderResult::Ge => PartialOrderResult::Le,
            other => other,
        }
    }
}

impl SemifieldValue {
    pub fn model(&self) -> Model {
        match self {
            SemifieldValue::Real(_) => Model::Real,
            SemifieldValue::RealOp(_) => Model::RealOp,
            SemifieldValue::Tropical(_) => Model::Tropical,
            SemifieldValue::TropicalOp(_) => Model::TropicalOp,
            SemifieldValue::Arctic { .. } => Model::Arctic,
        }
    }

    pub fn zero(model: Model) -> Self {
        Self::from_rat(model, Rat::zero())
    }

    pub fn one(model: Model) -> Self {
        Self::from_rat(model, Rat::one())
    }

    /// The image of the natural number `n` under the unique homomorphism
    /// from the naturals: `n`-fold sum of ones. Tropically that saturates
    /// at one.
    pub fn nat(model: Model, n: u64) -> Self {
        match model {
            Model::Real | Model::RealOp => Self::from_rat(model, Rat::from_integer(n.into())),
            Model::Tropical | Model::TropicalOp => {
                Self::from_rat(model, if n == 0 { Rat::zero() } else { Rat::one() })
            }
            Model::Arctic => SemifieldValue::Arctic {
                r: Rat::from_integer(n.into()),
                s: Rat::zero(),
            },
        }
    }

    /// Wraps a nonnegative rational as a scalar of the model (the `r`
    /// component for arctic).
    pub fn from_rat(model: Model, v: Rat) -> Self {
        debug_assert!(!v.is_negative());
        match model {
            Model::Real => SemifieldValue::Real(v),
            Model::RealOp => SemifieldValue::RealOp(v),
            Model::Tropical => SemifieldValue::Tropical(v),
            Model::TropicalOp => SemifieldValue::TropicalOp(v),
            Model::Arctic => SemifieldValue::Arctic {
                r: v,
                s: Rat::zero(),
            },
        }
    }

    pub fn arctic(r: Rat, s: Rat) -> Self {
        debug_assert!(r.is_positive() || (r.is_zero() && s.is_zero()));
        SemifieldValue::Arctic { r, s }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SemifieldValue::Real(v)
            | SemifieldValue::RealOp(v)
            | SemifieldValue::Tropical(v)
            | SemifieldValue::TropicalOp(v) => v.is_zero(),
            SemifieldValue::Arctic { r, .. } => r.is_zero(),
        }
    }

    fn same_model(&self, other: &Self) -> Result<()> {
        if self.model() != other.model() {
            return Err(Error::ModelMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        Ok(match (self, other) {
            (SemifieldValue::Real(a), SemifieldValue::Real(b)) => SemifieldValue::Real(a + b),
            (SemifieldValue::RealOp(a), SemifieldValue::RealOp(b)) => {
                SemifieldValue::RealOp(a + b)
            }
            (SemifieldValue::Tropical(a), SemifieldValue::Tropical(b)) => {
                SemifieldValue::Tropical(a.max(b).clone())
            }
            (SemifieldValue::TropicalOp(a), SemifieldValue::TropicalOp(b)) => {
                SemifieldValue::TropicalOp(a.max(b).clone())
            }
            (
                SemifieldValue::Arctic { r: r1, s: s1 },
                SemifieldValue::Arctic { r: r2, s: s2 },
            ) => SemifieldValue::Arctic {
                r: r1 + r2,
                s: s1 + s2,
            },
            _ => unreachable!("models already matched"),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        Ok(match (self, other) {
            (SemifieldValue::Real(a), SemifieldValue::Real(b)) => SemifieldValue::Real(a * b),
            (SemifieldValue::RealOp(a), SemifieldValue::RealOp(b)) => {
                SemifieldValue::RealOp(a * b)
            }
            (SemifieldValue::Tropical(a), SemifieldValue::Tropical(b)) => {
                SemifieldValue::Tropical(a * b)
            }
            (SemifieldValue::TropicalOp(a), SemifieldValue::TropicalOp(b)) => {
                SemifieldValue::TropicalOp(a * b)
            }
            (
                SemifieldValue::Arctic { r: r1, s: s1 },
                SemifieldValue::Arctic { r: r2, s: s2 },
            ) => SemifieldValue::Arctic {
                r: r1 * r2,
                s: r1 * s2 + s1 * r2,
            },
            _ => unreachable!("models already matched"),
        })
    }

    /// Multiplicative inverse; arctic uses `(r + s eps)^-1 = r^-2 (r - s eps)`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match self {
            SemifieldValue::Real(v) => SemifieldValue::Real(Rat::one() / v),
            SemifieldValue::RealOp(v) => SemifieldValue::RealOp(Rat::one() / v),
            SemifieldValue::Tropical(v) => SemifieldValue::Tropical(Rat::one() / v),
            SemifieldValue::TropicalOp(v) => SemifieldValue::TropicalOp(Rat::one() / v),
            SemifieldValue::Arctic { r, s } => SemifieldValue::Arctic {
                r: Rat::one() / r,
                s: -s / (r * r),
            },
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(self.model());
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Exact partial-order verdict in the model's own order.
    pub fn compare(&self, other: &Self) -> Result<PartialOrderResult> {
        self.same_model(other)?;
        let cmp_rat = |a: &Rat, b: &Rat| match a.cmp(b) {
            std::cmp::Ordering::Less => PartialOrderResult::Le,
            std::cmp::Ordering::Greater => PartialOrderResult::Ge,
            std::cmp::Ordering::Equal => PartialOrderResult::Eq,
        };
        Ok(match (self, other) {
            (SemifieldValue::Real(a), SemifieldValue::Real(b))
            | (SemifieldValue::Tropical(a), SemifieldValue::Tropical(b)) => cmp_rat(a, b),
            (SemifieldValue::RealOp(a), SemifieldValue::RealOp(b))
            | (SemifieldValue::TropicalOp(a), SemifieldValue::TropicalOp(b)) => {
                cmp_rat(a, b).flip()
            }
            (
                SemifieldValue::Arctic { r: r1, s: s1 },
                SemifieldValue::Arctic { r: r2, s: s2 },
            ) => {
                if r1 != r2 {
                    PartialOrderResult::Incomparable
                } else {
                    cmp_rat(s1, s2)
                }
            }
            _ => unreachable!("models already matched"),
        })
    }

    pub fn le(&self, other: &Self) -> Result<bool> {
        Ok(self.compare(other)?.le())
    }
}

impl fmt::Display for SemifieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemifieldValue::Real(v) => write!(f, "real({})", rat_to_string(v)),
            SemifieldValue::RealOp(v) => write!(f, "real-op({})", rat_to_string(v)),
            SemifieldValue::Tropical(v) => write!(f, "tropical({})", rat_to_string(v)),
            SemifieldValue::TropicalOp(v) => write!(f, "tropical-op({})", rat_to_string(v)),
            SemifieldValue::Arctic { r, s } => {
                write!(f, "arctic({} + {}*eps)", rat_to_string(r), rat_to_string(s))
            }
        }
    }
}

/// Classification of a preordered semifield by where `x + x^-1` falls in
/// the order interval `[2x^-1, 2x]` for `x > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SemifieldType {
    MaxTropical,
    MaxTemperate,
    Arctic,
    MinTemperate,
    MinTropical,
    Untyped,
}

impl SemifieldType {
    /// Type of the opposite model: Max and Min swap, Arctic is fixed.
    pub fn opposite(self) -> SemifieldType {
        match self {
            SemifieldType::MaxTropical => SemifieldType::MinTropical,
            SemifieldType::MaxTemperate => SemifieldType::MinTemperate,
            SemifieldType::Arctic => SemifieldType::Arctic,
            SemifieldType::MinTemperate => SemifieldType::MaxTemperate,
            SemifieldType::MinTropical => SemifieldType::MaxTropical,
            SemifieldType::Untyped => SemifieldType::Untyped,
        }
    }
}

fn type_of_sample(x: &SemifieldValue) -> Result<SemifieldType> {
    let two = SemifieldValue::nat(x.model(), 2);
    let xinv = x.inv()?;
    let v = x.add(&xinv)?;
    let against_two = v.compare(&two)?;
    let against_2x = v.compare(&two.mul(x)?)?;
    let against_2xinv = v.compare(&two.mul(&xinv)?)?;
    Ok(match (against_2xinv, against_two, against_2x) {
        (_, _, PartialOrderResult::Eq) => SemifieldType::MaxTropical,
        (_, PartialOrderResult::Eq, _) => SemifieldType::Arctic,
        (PartialOrderResult::Eq, _, _) => SemifieldType::MinTropical,
        (_, PartialOrderResult::Ge, PartialOrderResult::Le) => SemifieldType::MaxTemperate,
        (PartialOrderResult::Ge, PartialOrderResult::Le, _) => SemifieldType::MinTemperate,
        _ => SemifieldType::Untyped,
    })
}

/// Samples `x > 1` in the model's own order, compares `x + x^-1` against
/// `2x^-1, 2, 2x` exactly, and returns the unanimous type (or `Untyped`).
pub fn classify_type(model: Model, sample_count: usize, seed: u64) -> SemifieldType {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verdict: Option<SemifieldType> = None;
    for _ in 0..sample_count.max(1) {
        let x = sample_above_one(model, &mut rng);
        let t = type_of_sample(&x).expect("nonzero sample");
        match verdict {
            None => verdict = Some(t),
            Some(prev) if prev == t => {}
            Some(_) => return SemifieldType::Untyped,
        }
    }
    verdict.unwrap_or(SemifieldType::Untyped)
}

/// Log-uniform magnitude in `[10^-3, 10^3]`, snapped to a rational.
fn sample_magnitude(rng: &mut ChaCha8Rng) -> Rat {
    let e: f64 = rng.gen_range(-3.0..=3.0);
    let v = 10f64.powf(e);
    rat_snap(v, 4096)
}

/// `x > 1` in the model order: `1 + t` on the plain side, `1/(1 + t)` on
/// the op side, `1 + t*eps` in arctic.
pub fn sample_above_one(model: Model, rng: &mut ChaCha8Rng) -> SemifieldValue {
    let t = sample_magnitude(rng);
    let above = Rat::one() + &t;
    match model {
        Model::Real | Model::Tropical => SemifieldValue::from_rat(model, above),
        Model::RealOp | Model::TropicalOp => {
            SemifieldValue::from_rat(model, Rat::one() / above)
        }
        Model::Arctic => SemifieldValue::Arctic {
            r: Rat::one(),
            s: t,
        },
    }
}

/// Generic nonzero sample: above or below one, occasionally exactly one;
/// arctic samples take a positive `r` (pinned to 1 half the time so the
/// order-nontrivial slice is exercised).
pub fn sample_value(model: Model, rng: &mut ChaCha8Rng) -> SemifieldValue {
    let t = sample_magnitude(rng);
    match model {
        Model::Real | Model::RealOp | Model::Tropical | Model::TropicalOp => {
            let v = match rng.gen_range(0..10u32) {
                0 => Rat::one(),
                n if n < 6 => Rat::one() + &t,
                _ => Rat::one() / (Rat::one() + &t),
            };
            SemifieldValue::from_rat(model, v)
        }
        Model::Arctic => {
            let r = if rng.gen_bool(0.5) {
                Rat::one()
            } else {
                Rat::one() + sample_magnitude(rng)
            };
            let s = if rng.gen_bool(0.5) { t } else { -t };
            SemifieldValue::Arctic { r, s }
        }
    }
}

/// The ambient relation `x <<_{a,b} y : a y + b x <= a x + b y`, evaluated
/// exactly in the model; the returned verdict compares the two sides.
pub fn ambient_le(
    x: &SemifieldValue,
    y: &SemifieldValue,
    a: &SemifieldValue,
    b: &SemifieldValue,
) -> Result<PartialOrderResult> {
    let lhs = a.mul(y)?.add(&b.mul(x)?)?;
    let rhs = a.mul(x)?.add(&b.mul(y)?)?;
    lhs.compare(&rhs)
}

/// Logarithmic evaluation rate of `x` relative to a power universal `u > 1`:
/// the unique exponent `r` with `x^q` against `u^p` cut at `p/q = r`.
/// Ordered models give `log x / log u`; arctic dual numbers give `s_x / s_u`.
pub fn lev(x: &SemifieldValue, u: &SemifieldValue) -> Result<f64> {
    match lev_exact(x, u)? {
        LevValue::Exact(v) => Ok(rat_to_f64(&v)),
        LevValue::LogRatio { x, u } => Ok(rat_to_f64(&x).ln() / rat_to_f64(&u).ln()),
    }
}

/// Exact representation of a `lev` value, mirroring the two formula shapes.
#[derive(Debug, Clone, PartialEq)]
pub enum LevValue {
    Exact(Rat),
    LogRatio { x: Rat, u: Rat },
}

pub fn lev_exact(x: &SemifieldValue, u: &SemifieldValue) -> Result<LevValue> {
    if x.model() != u.model() {
        return Err(Error::ModelMismatch);
    }
    if x.is_zero() || u.is_zero() {
        return Err(Error::InvalidPoint("lev requires nonzero arguments".into()));
    }
    let one = SemifieldValue::one(u.model());
    if u.compare(&one)? != PartialOrderResult::Ge {
        return Err(Error::InvalidPoint("u must satisfy u > 1".into()));
    }
    match (x, u) {
        (SemifieldValue::Arctic { r, s }, SemifieldValue::Arctic { s: su, .. }) => {
            if !r.is_one() {
                return Err(Error::NotEquivalentToOne);
            }
            Ok(LevValue::Exact(s / su))
        }
        (
            SemifieldValue::Real(v) | SemifieldValue::RealOp(v),
            SemifieldValue::Real(uv) | SemifieldValue::RealOp(uv),
        )
        | (
            SemifieldValue::Tropical(v) | SemifieldValue::TropicalOp(v),
            SemifieldValue::Tropical(uv) | SemifieldValue::TropicalOp(uv),
        ) => Ok(LevValue::LogRatio {
            x: v.clone(),
            u: uv.clone(),
        }),
        _ => unreachable!("models already matched"),
    }
}

/// The semiring `N / (5 ~ 6)`: naturals with everything above 5 identified
/// with 5, under saturating arithmetic, totally ordered as inherited from
/// the naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SaturatedNat(u8);

impl SaturatedNat {
    pub const MAX: u8 = 5;

    pub fn new(v: u64) -> Self {
        SaturatedNat(v.min(Self::MAX as u64) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn add(self, other: Self) -> Self {
        SaturatedNat(((self.0 as u64) + (other.0 as u64)).min(Self::MAX as u64) as u8)
    }

    pub fn mul(self, other: Self) -> Self {
        SaturatedNat(((self.0 as u64) * (other.0 as u64)).min(Self::MAX as u64) as u8)
    }
}

/// Ambient relation in the saturated-nat semiring (inherited total order).
pub fn ambient_le_saturated(
    x: SaturatedNat,
    y: SaturatedNat,
    a: SaturatedNat,
    b: SaturatedNat,
) -> bool {
    a.mul(y).add(b.mul(x)) <= a.mul(x).add(b.mul(y))
}
