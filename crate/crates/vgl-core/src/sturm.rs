//! Univariate polynomials over exact rationals: Sturm chains, square-free
//! splitting and sign analysis on intervals.
//!
//! This is the `d = 1` exact tier of the evaluation checks: the sign of
//! `q - p` on `(1, oo)` and `(0, 1)` is settled by counting distinct roots
//! (Sturm) and odd-multiplicity roots (Yun square-free decomposition), so
//! strict and non-strict verdicts are certificates, not samples.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

/// Dense univariate polynomial; `coeffs[i]` multiplies `X^i`, trailing
/// zeros trimmed, empty = zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UniPoly::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len() - dd + 1];
        let lead = divisor.coeffs.last().unwrap();
        for k in (0..quot.len()).rev() {
            let factor = &rem[k + dd - 1] / lead;
            if factor.is_zero() {
                continue;
            }
            quot[k] = factor.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let delta = &factor * dc;
                rem[k + j] -= delta;
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => UniPoly::zero(),
            Some(lead) => UniPoly::new(self.coeffs.iter().map(|c| c / lead).collect()),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic(); // keeps coefficient growth in check
        }
        a.monic()
    }

    /// Yun square-free decomposition: nonconstant factors with their
    /// multiplicities, so `self = lead * prod f_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let f = self.monic();
        let fp = f.derivative();
        let g = f.gcd(&fp);
        if g.degree() == Some(0) {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let (mut w, _) = f.divrem(&g);
        let (mut y, _) = fp.divrem(&g);
        let mut i = 1u32;
        while w.degree().unwrap_or(0) > 0 {
            let z = y.sub(&w.derivative());
            let a = w.gcd(&z);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            w = w.divrem(&a).0;
            y = z.divrem(&a).0;
            i += 1;
        }
        out
    }

    /// Product of the square-free factors with odd multiplicity: the locus
    /// where the polynomial changes sign.
    pub fn odd_multiplicity_part(&self) -> UniPoly {
        let mut out = UniPoly::new(vec![Rat::one()]);
        for (f, m) in self.squarefree_decomposition() {
            if m % 2 == 1 {
                out = out.mul(&f);
            }
        }
        out
    }

    /// Radical: product of all square-free factors (distinct root locus).
    pub fn radical(&self) -> UniPoly {
        let mut out = UniPoly::new(vec![Rat::one()]);
        for (f, _) in self.squarefree_decomposition() {
            out = out.mul(&f);
        }
        out
    }

    /// Divides out `(X - at)^m` and returns the quotient and multiplicity.
    pub fn strip_root(&self, at: &Rat) -> (UniPoly, u32) {
        let linear = UniPoly::new(vec![-at, Rat::one()]);
        let mut f = self.clone();
        let mut m = 0u32;
        while !f.is_zero() && f.eval(at).is_zero() {
            let (q, r) = f.divrem(&linear);
            debug_assert!(r.is_zero());
            f = q;
            m += 1;
        }
        (f, m)
    }

    /// Strict upper bound on the absolute value of every real root.
    pub fn cauchy_bound(&self) -> Rat {
        if self.coeffs.len() <= 1 {
            return Rat::one();
        }
        let lead = self.coeffs.last().unwrap();
        let mut max_ratio = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = (c / lead).abs();
            if r > max_ratio {
                max_ratio = r;
            }
        }
        Rat::one() + max_ratio
    }

    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                return chain;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                return chain;
            }
            chain.push(r.neg().monic());
        }
    }

    /// Number of distinct real roots in `(a, b]`; `a` and `b` must not be
    /// roots of `self`.
    pub fn count_roots(&self, a: &Rat, b: &Rat) -> u32 {
        debug_assert!(!self.eval(a).is_zero() && !self.eval(b).is_zero());
        let chain = self.sturm_chain();
        sign_variations(&chain, a) - sign_variations(&chain, b)
    }
}

fn sign_variations(chain: &[UniPoly], x: &Rat) -> u32 {
    let mut count = 0u32;
    let mut last = 0i8;
    for f in chain {
        let v = f.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Sign of a nonzero polynomial on an open interval `(lo, hi)`
/// (`hi = None` means unbounded above). Requires `f(lo) != 0`, and
/// `f(hi) != 0` when finite.
#[derive(Debug, Clone)]
pub struct IntervalSign {
    pub nonneg: bool,
    pub pos: bool,
    pub nonpos: bool,
    pub neg: bool,
    /// exact rational point with a strictly negative value, when one exists
    pub neg_witness: Option<Rat>,
    /// exact rational point with a strictly positive value, when one exists
    pub pos_witness: Option<Rat>,
    /// a root location inside the interval, when the polynomial vanishes
    /// there: either an exact rational root or an isolating interval
    pub interior_root: Option<RootLocation>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RootLocation {
    Exact(Rat),
    Isolated(Rat, Rat),
}

pub fn interval_sign(f: &UniPoly, lo: &Rat, hi: Option<&Rat>) -> IntervalSign {
    assert!(!f.is_zero(), "interval_sign needs a nonzero polynomial");
    assert!(!f.eval(lo).is_zero(), "lo must not be a root");
    if let Some(h) = hi {
        assert!(!f.eval(h).is_zero(), "hi must not be a root");
    }
    let bound = {
        let b = f.cauchy_bound() + Rat::one();
        if b > lo.clone() {
            b
        } else {
            lo + Rat::one()
        }
    };
    let hi_eff = hi.cloned().unwrap_or(bound);

    let radical = f.radical();
    let odd = f.odd_multiplicity_part();
    let distinct = if radical.degree().unwrap_or(0) == 0 {
        0
    } else {
        radical.count_roots(lo, &hi_eff)
    };
    let sign_changes = if odd.degree().unwrap_or(0) == 0 {
        0
    } else {
        odd.count_roots(lo, &hi_eff)
    };

    let sample = match hi {
        None => hi_eff.clone(),
        Some(h) => pick_nonroot_between(f, lo, h),
    };
    let sample_sign = f.eval(&sample).is_positive();

    let mut out = IntervalSign {
        nonneg: sign_changes == 0 && sample_sign,
        pos: distinct == 0 && sample_sign,
        nonpos: sign_changes == 0 && !sample_sign,
        neg: distinct == 0 && !sample_sign,
        neg_witness: None,
        pos_witness: None,
        interior_root: None,
    };
    if !sample_sign {
        out.neg_witness = Some(sample.clone());
    } else {
        out.pos_witness = Some(sample.clone());
    }
    if sign_changes > 0 {
        // both signs occur: chase the missing one across a sign change
        let loc = isolate_sign_change(f, &odd, lo, &hi_eff);
        match f.eval(&loc.0).is_positive() {
            true => {
                out.pos_witness = Some(loc.0.clone());
                out.neg_witness = Some(loc.1.clone());
            }
            false => {
                out.neg_witness = Some(loc.0.clone());
                out.pos_witness = Some(loc.1.clone());
            }
        }
    }
    if distinct > 0 {
        out.interior_root = Some(isolate_root(&radical, lo, &hi_eff));
    }
    out
}

/// Rational point in `(lo, hi)` where `f` does not vanish; tries a spread of
/// interior points, which must succeed within `deg + 2` attempts.
fn pick_nonroot_between(f: &UniPoly, lo: &Rat, hi: &Rat) -> Rat {
    let width = hi - lo;
    let deg = f.degree().unwrap_or(0);
    for k in 2..(deg + 4) {
        let cand = lo + &width / Rat::from_integer(k.into());
        if !f.eval(&cand).is_zero() {
            return cand;
        }
    }
    unreachable!("more candidate points than roots");
}

/// Bisects until the endpoints of a subinterval take opposite signs; the
/// odd part guarantees such a crossing exists in `(lo, hi)`.
fn isolate_sign_change(f: &UniPoly, odd: &UniPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut a = lo.clone();
    let mut b = hi.clone();
    loop {
        let fa = f.eval(&a);
        let fb = f.eval(&b);
        if fa.is_positive() != fb.is_positive() && !fa.is_zero() && !fb.is_zero() {
            return (a, b);
        }
        // roots of the odd part are roots of f, so a and mid are non-roots
        let mid = pick_nonroot_between(f, &a, &b);
        if odd.count_roots(&a, &mid) > 0 {
            b = mid;
        } else {
            a = mid;
        }
    }
}

/// Isolates one root of a square-free polynomial in `(lo, hi)`, returning an
/// exact rational root when bisection lands on it.
fn isolate_root(radical: &UniPoly, lo: &Rat, hi: &Rat) -> RootLocation {
    let mut a = lo.clone();
    let mut b = hi.clone();
    let narrow = Rat::new(1.into(), 1024.into());
    loop {
        if &b - &a < narrow && radical.count_roots(&a, &b) == 1 {
            return RootLocation::Isolated(a, b);
        }
        let mid = (&a + &b) / Rat::from_integer(2.into());
        if radical.eval(&mid).is_zero() {
            return RootLocation::Exact(mid);
        }
        if radical.count_roots(&a, &mid) > 0 {
            b = mid;
        } else {
            a = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};

    fn upoly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let f = upoly(&[-2, 0, 1]); // x^2 - 2
        let g = upoly(&[1, 1]); // x + 1
        let (q, r) = f.divrem(&g);
        assert_eq!(f.sub(&q.mul(&g)), r);
        assert!(r.degree() < g.degree());
    }

    #[test]
    fn counts_roots_of_quadratic() {
        let f = upoly(&[-2, 0, 1]); // roots +-sqrt(2)
        assert_eq!(f.count_roots(&rat(0), &rat(2)), 1);
        assert_eq!(f.count_roots(&rat(-2), &rat(2)), 2);
        assert_eq!(f.count_roots(&rat(2), &rat(9)), 0);
    }

    #[test]
    fn counts_distinct_roots_despite_multiplicity() {
        // (x-1)^2 (x-3)
        let f = upoly(&[1, -1]).mul(&upoly(&[1, -1])).mul(&upoly(&[-3, 1]));
        assert_eq!(f.count_roots(&rat(0), &rat(4)), 2);
        assert_eq!(f.odd_multiplicity_part().count_roots(&rat(0), &rat(4)), 1);
    }

    #[test]
    fn squarefree_decomposition_shapes() {
        // (x-1)^2 (x+2)
        let f = upoly(&[-1, 1]).mul(&upoly(&[-1, 1])).mul(&upoly(&[2, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0].1, 1);
        assert_eq!(dec[1].1, 2);
    }

    #[test]
    fn strip_root_divides_out() {
        // (x-1)^3 (x+5)
        let lin = upoly(&[-1, 1]);
        let f = lin.mul(&lin).mul(&lin).mul(&upoly(&[5, 1]));
        let (rest, m) = f.strip_root(&rat(1));
        assert_eq!(m, 3);
        assert_eq!(rest.monic(), upoly(&[5, 1]).monic());
    }

    #[test]
    fn interval_sign_positive_square() {
        // (x-1)^2 stripped at 1 is the constant 1: check (x-2)^2 on (1, oo)
        let f = upoly(&[-2, 1]).mul(&upoly(&[-2, 1]));
        let s = interval_sign(&f, &rat(1), None);
        assert!(s.nonneg && !s.pos);
        assert!(matches!(s.interior_root, Some(RootLocation::Exact(ref r)) if *r == rat(2)));
    }

    #[test]
    fn interval_sign_crossing() {
        // x - 2 crosses on (1, oo)
        let f = upoly(&[-2, 1]);
        let s = interval_sign(&f, &rat(1), None);
        assert!(!s.nonneg && !s.nonpos);
        let w = s.neg_witness.unwrap();
        assert!(f.eval(&w).is_negative());
        let w = s.pos_witness.unwrap();
        assert!(f.eval(&w).is_positive());
    }

    #[test]
    fn interval_sign_bounded_interval() {
        // x(1-x) is positive on (0,1); shifted: -x^2 + x
        let f = upoly(&[0, 1, -1]);
        let (h, k) = f.strip_root(&rat(0));
        assert_eq!(k, 1);
        let s = interval_sign(&h, &rat_frac(1, 100), Some(&rat_frac(99, 100)));
        assert!(s.pos);
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let f = upoly(&[-6, 11, -6, 1]); // roots 1, 2, 3
        let b = f.cauchy_bound();
        assert!(b > rat(3));
        assert_eq!(f.count_roots(&rat(0), &b), 3);
    }
}
