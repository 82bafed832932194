//! Sparse multivariate polynomials with exact nonnegative rational
//! coefficients, the semiring elements everything else operates on.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exponent::ExponentVec;
use crate::rational::{rat_from_str, rat_to_f64, rat_to_string, Rat};
use crate::{Error, Result};

/// Element of `R+[X1..Xd]`: a finite map from multi-indices to strictly
/// positive rationals. The empty map is the zero polynomial.
///
/// Terms are kept in graded-lexicographic order, so iteration and
/// serialization are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    dim: usize,
    terms: BTreeMap<ExponentVec, Rat>,
}

impl SparsePoly {
    pub fn zero(dim: usize) -> Self {
        SparsePoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(ExponentVec::zeros(dim), Rat::one()).unwrap()
    }

    pub fn constant(dim: usize, c: Rat) -> Result<Self> {
        Self::monomial(ExponentVec::zeros(dim), c)
    }

    /// The variable `x_{i+1}` as a polynomial.
    pub fn variable(dim: usize, i: usize) -> Self {
        Self::monomial(ExponentVec::unit(dim, i), Rat::one()).unwrap()
    }

    /// The power universal element `u = x1 * x2 * ... * xd`.
    pub fn all_vars_product(dim: usize) -> Self {
        Self::monomial(ExponentVec::new(vec![1; dim]), Rat::one()).unwrap()
    }

    pub fn monomial(exp: ExponentVec, coeff: Rat) -> Result<Self> {
        let dim = exp.dim();
        let mut terms = BTreeMap::new();
        if coeff.is_negative() {
            return Err(Error::Parse {
                pos: 0,
                msg: "negative coefficient".into(),
            });
        }
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Ok(SparsePoly { dim, terms })
    }

    /// Builds from raw terms, merging duplicates and pruning zeros.
    /// Rejects negative coefficients and mismatched exponent lengths.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (ExponentVec, Rat)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<ExponentVec, Rat> = BTreeMap::new();
        for (exp, coeff) in terms {
            if exp.dim() != dim {
                return Err(Error::DimensionMismatch(dim, exp.dim()));
            }
            if coeff.is_negative() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "negative coefficient".into(),
                });
            }
            if coeff.is_zero() {
                continue;
            }
            *map.entry(exp).or_insert_with(Rat::zero) += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SparsePoly { dim, terms: map })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVec, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExponentVec) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut terms = self.terms.clone();
        for (exp, coeff) in &other.terms {
            *terms.entry(exp.clone()).or_insert_with(Rat::zero) += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SparsePoly {
            dim: self.dim,
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut terms: BTreeMap<ExponentVec, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.add(eb);
                *terms.entry(exp).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SparsePoly {
            dim: self.dim,
            terms,
        })
    }

    pub fn scale(&self, c: &Rat) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::Parse {
                pos: 0,
                msg: "negative coefficient".into(),
            });
        }
        if c.is_zero() {
            return Ok(Self::zero(self.dim));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v * c))
            .collect();
        Ok(SparsePoly {
            dim: self.dim,
            terms,
        })
    }

    /// Exact power by repeated squaring; `pow(p, 0) = 1`.
    pub fn pow(&self, n: u32) -> Self {
        self.pow_guarded(n, usize::MAX)
            .expect("unbounded power cannot exceed the guard")
    }

    /// Power with a support-size guard: errors out (reporting the size
    /// reached) once any intermediate product exceeds `max_terms`.
    pub fn pow_guarded(&self, n: u32, max_terms: usize) -> std::result::Result<Self, usize> {
        let mut base = self.clone();
        let mut acc = Self::one(self.dim);
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same dimension");
                if acc.num_terms() > max_terms {
                    return Err(acc.num_terms());
                }
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base).expect("same dimension");
                if base.num_terms() > max_terms {
                    return Err(base.num_terms());
                }
            }
        }
        Ok(acc)
    }

    /// Exact evaluation at a point with strictly positive rational
    /// coordinates.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, point.len()));
        }
        if point.iter().any(|r| !r.is_positive()) {
            return Err(Error::NonpositiveCoordinate);
        }
        let mut acc = Rat::zero();
        for (exp, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (r, &e) in point.iter().zip(exp.entries()) {
                if e > 0 {
                    term *= pow_rat(r, e);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Float evaluation for sampling paths.
    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, point.len()));
        }
        if point.iter().any(|&r| !(r > 0.0)) {
            return Err(Error::NonpositiveCoordinate);
        }
        let mut acc = 0.0;
        for (exp, coeff) in &self.terms {
            let mut term = rat_to_f64(coeff);
            for (r, &e) in point.iter().zip(exp.entries()) {
                term *= r.powi(e as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Component `i` is `sum_a a_i * coeff(a)`, the partial derivative at the
    /// all-ones point.
    pub fn gradient_at_one(&self) -> Vec<Rat> {
        let mut grad = vec![Rat::zero(); self.dim];
        for (exp, coeff) in &self.terms {
            for (g, &e) in grad.iter_mut().zip(exp.entries()) {
                if e > 0 {
                    *g += coeff * Rat::from_integer(e.into());
                }
            }
        }
        grad
    }

    /// The exact exponent support. Support functions over the Newton
    /// polytope are maximized at support points, so the hull is not needed.
    pub fn newton_support(&self) -> Result<Vec<ExponentVec>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.terms.keys().cloned().collect())
    }

    /// Total coefficient mass `p(1,...,1)`.
    pub fn mass(&self) -> Rat {
        let mut acc = Rat::zero();
        for coeff in self.terms.values() {
            acc += coeff;
        }
        acc
    }

    /// `max_{s in supp} <beta, s>` with exact rational arithmetic.
    pub fn support_max(&self, beta: &[Rat]) -> Result<Rat> {
        self.support_extreme(beta, true)
    }

    /// `min_{s in supp} <beta, s>` with exact rational arithmetic.
    pub fn support_min(&self, beta: &[Rat]) -> Result<Rat> {
        self.support_extreme(beta, false)
    }

    fn support_extreme(&self, beta: &[Rat], max: bool) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if beta.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, beta.len()));
        }
        let mut best: Option<Rat> = None;
        for exp in self.terms.keys() {
            let v = dot(beta, exp);
            best = Some(match best {
                None => v,
                Some(b) => {
                    if (v > b) == max {
                        v
                    } else {
                        b
                    }
                }
            });
        }
        Ok(best.unwrap())
    }
}

pub(crate) fn dot(beta: &[Rat], exp: &ExponentVec) -> Rat {
    let mut acc = Rat::zero();
    for (b, &e) in beta.iter().zip(exp.entries()) {
        if e > 0 {
            acc += b * Rat::from_integer(e.into());
        }
    }
    acc
}

pub(crate) fn pow_rat(x: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    acc
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("dimension mismatch in +")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("dimension mismatch in *")
    }
}

impl fmt::Display for SparsePoly {
    /// Canonical text form: descending graded-lex terms joined by ` + `,
    /// e.g. `3/2*x1^2*x2 + x2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coeff) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            for (i, &e) in exp.entries().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", rat_to_string(coeff))?;
            } else if coeff.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_to_string(coeff), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    exp: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            vars: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    coeff: rat_to_string(c),
                    exp: e.entries().to_vec(),
                })
                .collect(),
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(de)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| {
                let coeff = rat_from_str(&t.coeff).map_err(D::Error::custom)?;
                Ok((ExponentVec::new(t.exp), coeff))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        SparsePoly::from_terms(repr.vars, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};

    fn p1(pairs: &[(u32, i64)]) -> SparsePoly {
        SparsePoly::from_terms(
            1,
            pairs
                .iter()
                .map(|&(e, c)| (ExponentVec::new(vec![e]), rat(c))),
        )
        .unwrap()
    }

    #[test]
    fn add_merges_coefficients() {
        // (1 + X) + X = 1 + 2X
        let a = p1(&[(0, 1), (1, 1)]);
        let b = p1(&[(1, 1)]);
        assert_eq!(a.checked_add(&b).unwrap(), p1(&[(0, 1), (1, 2)]));
    }

    #[test]
    fn add_zero_is_identity() {
        let a = p1(&[(0, 1), (3, 2)]);
        assert_eq!(a.checked_add(&SparsePoly::zero(1)).unwrap(), a);
    }

    #[test]
    fn add_same_monomial() {
        let m = SparsePoly::from_terms(2, [(ExponentVec::new(vec![1, 1]), rat(1))]).unwrap();
        let sum = m.checked_add(&m).unwrap();
        assert_eq!(sum.coeff(&ExponentVec::new(vec![1, 1])), rat(2));
    }

    #[test]
    fn add_rejects_dimension_mismatch() {
        let a = p1(&[(0, 1)]);
        let b = SparsePoly::one(2);
        assert_eq!(a.checked_add(&b), Err(Error::DimensionMismatch(1, 2)));
    }

    #[test]
    fn mul_expands_binomial_square() {
        let a = p1(&[(0, 1), (1, 1)]);
        assert_eq!(a.checked_mul(&a).unwrap(), p1(&[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn mul_identities() {
        let p = p1(&[(0, 3), (2, 1)]);
        assert_eq!(p.checked_mul(&SparsePoly::one(1)).unwrap(), p);
        assert!(p.checked_mul(&SparsePoly::zero(1)).unwrap().is_zero());
    }

    #[test]
    fn pow_matches_examples() {
        let a = p1(&[(0, 1), (1, 1)]);
        assert_eq!(a.pow(2), p1(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(a.pow(0), SparsePoly::one(1));
        assert_eq!(p1(&[(1, 2)]).pow(3), p1(&[(3, 8)]));
    }

    #[test]
    fn pow_guard_reports_blowup() {
        let a = p1(&[(0, 1), (1, 1)]);
        assert!(a.pow_guarded(64, 8).is_err());
    }

    #[test]
    fn eval_examples() {
        let a = p1(&[(0, 1), (1, 1)]);
        assert_eq!(a.eval(&[rat(2)]).unwrap(), rat(3));
        // 2*x1*x2^2 at (1/2, 2) = 4
        let m = SparsePoly::from_terms(2, [(ExponentVec::new(vec![1, 2]), rat(2))]).unwrap();
        assert_eq!(m.eval(&[rat_frac(1, 2), rat(2)]).unwrap(), rat(4));
        assert_eq!(m.eval(&[rat(1), rat(1)]).unwrap(), m.mass());
    }

    #[test]
    fn eval_rejects_nonpositive_point() {
        let a = p1(&[(1, 1)]);
        assert_eq!(a.eval(&[rat(0)]), Err(Error::NonpositiveCoordinate));
        assert_eq!(a.eval(&[rat(-2)]), Err(Error::NonpositiveCoordinate));
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(p1(&[(2, 1)]).gradient_at_one(), vec![rat(2)]);
        assert_eq!(p1(&[(0, 5)]).gradient_at_one(), vec![rat(0)]);
        // 1 + x1 + 3*x1*x2 -> (4, 3)
        let p = SparsePoly::from_terms(
            2,
            [
                (ExponentVec::new(vec![0, 0]), rat(1)),
                (ExponentVec::new(vec![1, 0]), rat(1)),
                (ExponentVec::new(vec![1, 1]), rat(3)),
            ],
        )
        .unwrap();
        assert_eq!(p.gradient_at_one(), vec![rat(4), rat(3)]);
    }

    #[test]
    fn newton_support_examples() {
        let p = SparsePoly::from_terms(
            2,
            [
                (ExponentVec::new(vec![1, 2]), rat(2)),
                (ExponentVec::new(vec![0, 0]), rat(3)),
            ],
        )
        .unwrap();
        let supp = p.newton_support().unwrap();
        assert_eq!(
            supp,
            vec![ExponentVec::new(vec![0, 0]), ExponentVec::new(vec![1, 2])]
        );
        assert_eq!(p1(&[(3, 7)]).newton_support().unwrap().len(), 1);
        let sq = p1(&[(0, 1), (1, 1)]).pow(2);
        assert_eq!(sq.newton_support().unwrap().len(), 3);
        assert!(SparsePoly::zero(1).newton_support().is_err());
    }

    #[test]
    fn mass_examples() {
        assert_eq!(p1(&[(0, 1), (1, 2)]).mass(), rat(3));
        assert_eq!(SparsePoly::zero(1).mass(), rat(0));
        assert_eq!(p1(&[(0, 1), (1, 1)]).pow(3).mass(), rat(8));
    }

    #[test]
    fn display_is_canonical() {
        let p = SparsePoly::from_terms(
            2,
            [
                (ExponentVec::new(vec![2, 1]), rat_frac(3, 2)),
                (ExponentVec::new(vec![0, 1]), rat(1)),
                (ExponentVec::new(vec![0, 0]), rat(1)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "3/2*x1^2*x2 + x2 + 1");
        assert_eq!(SparsePoly::zero(3).to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = SparsePoly::from_terms(
            2,
            [
                (ExponentVec::new(vec![2, 1]), rat_frac(3, 2)),
                (ExponentVec::new(vec![0, 0]), rat(1)),
            ],
        )
        .unwrap();
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(
            js,
            r#"{"vars":2,"terms":[{"coeff":"1","exp":[0,0]},{"coeff":"3/2","exp":[2,1]}]}"#
        );
        let back: SparsePoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn json_rejects_negative_coeff() {
        let js = r#"{"vars":1,"terms":[{"coeff":"-1","exp":[0]}]}"#;
        assert!(serde_json::from_str::<SparsePoly>(js).is_err());
    }
}
