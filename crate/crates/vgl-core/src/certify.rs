//! Search for catalytic and asymptotic certificates.
//!
//! The underlying existence theorems are not effective: they guarantee a
//! certificate for spectrally-strict pairs without bounding the exponents
//! involved. The searches here are therefore semi-decision procedures with
//! explicit budgets that report `inconclusive` rather than "no".
//!
//! The catalytic search uses the explicit candidate family
//! `a = u^k * sum_{j=0}^n p^j q^(n-j)` with `u = x1...xd`, scanning `(n, k)`
//! in lexicographic order; this family is known to suffice.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::dominance::{decide, validate_plan, TransportPlan};
use crate::poly::SparsePoly;
use crate::rational::Rat;
use crate::spectral::{spectral_report, EvalCheckMode, SamplingConfig};
use crate::{Error, Result};

/// Default cap on the support size of any intermediate power or product.
pub const DEFAULT_SUPPORT_GUARD: usize = 200_000;

/// Gating of the strict spectral precondition for certificate searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralGate {
    /// no precondition: search unconditionally
    Off,
    /// strict spectral report must pass with exact or exact-sufficient modes
    ExactOnly,
    /// strict spectral report must pass, sampled verdicts accepted
    AllowSampled,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalyticCertificate {
    pub a: SparsePoly,
    pub k: u32,
    pub n: u32,
    pub plan: TransportPlan,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticCertificate {
    #[serde(with = "crate::rational::serde_rat")]
    pub eps: Rat,
    pub n_start: u32,
    pub window: u32,
    /// plans witnessing `p^n <= u^floor(eps n) q^n` for
    /// `n = n_start ..= n_start + window`
    pub plans: Vec<TransportPlan>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UkCertificate {
    pub k: u32,
    pub n_start: u32,
    pub window: u32,
    /// plans witnessing `u^k p^n <= u^k q^n` for
    /// `n = n_start ..= n_start + window`
    pub plans: Vec<TransportPlan>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    Catalytic(CatalyticCertificate),
    Asymptotic(AsymptoticCertificate),
    AsymptoticUk(UkCertificate),
}

/// Why a bounded search stopped without a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum InconclusiveReason {
    /// the whole budget was scanned without success; the theorems bound
    /// neither the exponent nor the catalyst power
    BudgetExhausted,
    /// a power's support outgrew the guard at exponent `n`
    SupportGuardExceeded { n: u32, terms: usize },
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum SearchOutcome<C> {
    Found(C),
    Inconclusive(InconclusiveReason),
}

impl<C> SearchOutcome<C> {
    pub fn found(&self) -> Option<&C> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Inconclusive(_) => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.found().is_some()
    }
}

fn check_pair(p: &SparsePoly, q: &SparsePoly) -> Result<()> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    if p.mass() != q.mass() {
        return Err(Error::MassMismatch);
    }
    Ok(())
}

fn gate_spectral(p: &SparsePoly, q: &SparsePoly, gate: SpectralGate) -> Result<()> {
    let require_exact = match gate {
        SpectralGate::Off => return Ok(()),
        SpectralGate::ExactOnly => true,
        SpectralGate::AllowSampled => false,
    };
    let report = spectral_report(p, q, true, &SamplingConfig::default(), EvalCheckMode::Auto)?;
    if !report.passes_strict(require_exact) {
        let failing: Vec<String> = report
            .conditions
            .iter()
            .filter(|c| !c.strict)
            .map(|c| c.name.clone())
            .collect();
        let detail = if report.mass_equal {
            failing.join(", ")
        } else {
            "mass mismatch".into()
        };
        return Err(Error::SpectralPrecondition(detail));
    }
    Ok(())
}

/// The candidate catalyst `u^k sum_{j=0}^n p^j q^(n-j)`.
pub fn candidate_catalyst(p: &SparsePoly, q: &SparsePoly, n: u32, k: u32) -> SparsePoly {
    let u = SparsePoly::all_vars_product(p.dim());
    let mut sum = SparsePoly::zero(p.dim());
    for j in 0..=n {
        let term = p.pow(j).checked_mul(&q.pow(n - j)).expect("same dim");
        sum = sum.checked_add(&term).expect("same dim");
    }
    u.pow(k).checked_mul(&sum).expect("same dim")
}

/// Scans `(n, k)` lexicographically for the least pair whose candidate
/// catalyst `a` satisfies `a p <= a q`, and returns the witnessing plan.
pub fn find_catalytic(
    p: &SparsePoly,
    q: &SparsePoly,
    max_n: u32,
    max_k: u32,
    gate: SpectralGate,
) -> Result<SearchOutcome<CatalyticCertificate>> {
    find_catalytic_guarded(p, q, max_n, max_k, gate, DEFAULT_SUPPORT_GUARD)
}

pub fn find_catalytic_guarded(
    p: &SparsePoly,
    q: &SparsePoly,
    max_n: u32,
    max_k: u32,
    gate: SpectralGate,
    guard: usize,
) -> Result<SearchOutcome<CatalyticCertificate>> {
    check_pair(p, q)?;
    gate_spectral(p, q, gate)?;
    for n in 0..=max_n {
        let a = match guarded_catalyst(p, q, n, guard) {
            Ok(a) => a,
            Err(terms) => {
                return Ok(SearchOutcome::Inconclusive(
                    InconclusiveReason::SupportGuardExceeded { n, terms },
                ))
            }
        };
        let u = SparsePoly::all_vars_product(p.dim());
        let mut a_k = a;
        for k in 0..=max_k {
            let lhs = a_k.checked_mul(p).expect("same dim");
            let rhs = a_k.checked_mul(q).expect("same dim");
            let verdict = decide(&lhs, &rhs)?;
            if verdict.comparable {
                return Ok(SearchOutcome::Found(CatalyticCertificate {
                    a: a_k,
                    k,
                    n,
                    plan: verdict.plan.expect("comparable verdict carries a plan"),
                }));
            }
            if k < max_k {
                a_k = a_k.checked_mul(&u).expect("same dim");
                if a_k.num_terms() > guard {
                    return Ok(SearchOutcome::Inconclusive(
                        InconclusiveReason::SupportGuardExceeded {
                            n,
                            terms: a_k.num_terms(),
                        },
                    ));
                }
            }
        }
    }
    Ok(SearchOutcome::Inconclusive(
        InconclusiveReason::BudgetExhausted,
    ))
}

fn guarded_catalyst(
    p: &SparsePoly,
    q: &SparsePoly,
    n: u32,
    guard: usize,
) -> std::result::Result<SparsePoly, usize> {
    let mut sum = SparsePoly::zero(p.dim());
    for j in 0..=n {
        let pj = p.pow_guarded(j, guard)?;
        let qn = q.pow_guarded(n - j, guard)?;
        let term = pj.checked_mul(&qn).expect("same dim");
        if term.num_terms() > guard {
            return Err(term.num_terms());
        }
        sum = sum.checked_add(&term).expect("same dim");
        if sum.num_terms() > guard {
            return Err(sum.num_terms());
        }
    }
    Ok(sum)
}

/// Least `N <= n_max` such that `p^n <= u^floor(eps n) q^n` holds for every
/// `n` in `[N, N + window]`, with the witnessing plans.
pub fn find_asymptotic(
    p: &SparsePoly,
    q: &SparsePoly,
    eps: &Rat,
    n_max: u32,
    window: u32,
) -> Result<SearchOutcome<AsymptoticCertificate>> {
    find_asymptotic_guarded(p, q, eps, n_max, window, DEFAULT_SUPPORT_GUARD)
}

pub fn find_asymptotic_guarded(
    p: &SparsePoly,
    q: &SparsePoly,
    eps: &Rat,
    n_max: u32,
    window: u32,
    guard: usize,
) -> Result<SearchOutcome<AsymptoticCertificate>> {
    check_pair(p, q)?;
    if eps.is_negative() {
        return Err(Error::InvalidPoint("eps must be nonnegative".into()));
    }
    let u = SparsePoly::all_vars_product(p.dim());
    let mut run: Vec<TransportPlan> = Vec::new();
    let mut run_start = 1u32;
    for n in 1..=n_max.saturating_add(window) {
        let lhs = match p.pow_guarded(n, guard) {
            Ok(v) => v,
            Err(terms) => {
                return Ok(SearchOutcome::Inconclusive(
                    InconclusiveReason::SupportGuardExceeded { n, terms },
                ))
            }
        };
        let uk = (eps * Rat::from_integer(n.into())).floor().to_integer();
        let uk = uk.to_u32().unwrap_or(u32::MAX);
        let rhs = match q
            .pow_guarded(n, guard)
            .and_then(|qn| u.pow_guarded(uk, guard).map(|up| (qn, up)))
        {
            Ok((qn, up)) => {
                let r = qn.checked_mul(&up).expect("same dim");
                if r.num_terms() > guard {
                    return Ok(SearchOutcome::Inconclusive(
                        InconclusiveReason::SupportGuardExceeded {
                            n,
                            terms: r.num_terms(),
                        },
                    ));
                }
                r
            }
            Err(terms) => {
                return Ok(SearchOutcome::Inconclusive(
                    InconclusiveReason::SupportGuardExceeded { n, terms },
                ))
            }
        };
        let verdict = decide(&lhs, &rhs)?;
        if verdict.comparable {
            if run.is_empty() {
                run_start = n;
            }
            run.push(verdict.plan.expect("comparable verdict carries a plan"));
            if run.len() == window as usize + 1 {
                return Ok(SearchOutcome::Found(AsymptoticCertificate {
                    eps: eps.clone(),
                    n_start: run_start,
                    window,
                    plans: run,
                }));
            }
        } else {
            run.clear();
            if n >= n_max {
                break;
            }
        }
    }
    Ok(SearchOutcome::Inconclusive(
        InconclusiveReason::BudgetExhausted,
    ))
}

/// Scans `(k, N)` lexicographically for `u^k p^n <= u^k q^n` over the window.
pub fn find_asymptotic_uk(
    p: &SparsePoly,
    q: &SparsePoly,
    k_max: u32,
    n_max: u32,
    window: u32,
) -> Result<SearchOutcome<UkCertificate>> {
    check_pair(p, q)?;
    let u = SparsePoly::all_vars_product(p.dim());
    let guard = DEFAULT_SUPPORT_GUARD;
    let mut guard_hit: Option<InconclusiveReason> = None;
    for k in 0..=k_max {
        let uk = u.pow(k);
        let mut run: Vec<TransportPlan> = Vec::new();
        let mut run_start = 1u32;
        'scan: for n in 1..=n_max.saturating_add(window) {
            let (lhs, rhs) = match p
                .pow_guarded(n, guard)
                .and_then(|pn| q.pow_guarded(n, guard).map(|qn| (pn, qn)))
            {
                Ok((pn, qn)) => (
                    uk.checked_mul(&pn).expect("same dim"),
                    uk.checked_mul(&qn).expect("same dim"),
                ),
                Err(terms) => {
                    guard_hit = Some(InconclusiveReason::SupportGuardExceeded { n, terms });
                    break 'scan;
                }
            };
            let verdict = decide(&lhs, &rhs)?;
            if verdict.comparable {
                if run.is_empty() {
                    run_start = n;
                }
                run.push(verdict.plan.expect("comparable verdict carries a plan"));
                if run.len() == window as usize + 1 {
                    return Ok(SearchOutcome::Found(UkCertificate {
                        k,
                        n_start: run_start,
                        window,
                        plans: run,
                    }));
                }
            } else {
                run.clear();
                if n >= n_max {
                    break 'scan;
                }
            }
        }
    }
    Ok(SearchOutcome::Inconclusive(
        guard_hit.unwrap_or(InconclusiveReason::BudgetExhausted),
    ))
}

/// Checks a user-supplied catalyst: returns the plan for `a p <= a q` when
/// the relation holds.
pub fn certify_with_catalyst(
    p: &SparsePoly,
    q: &SparsePoly,
    a: &SparsePoly,
) -> Result<Option<TransportPlan>> {
    check_pair(p, q)?;
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lhs = a.checked_mul(p)?;
    let rhs = a.checked_mul(q)?;
    Ok(decide(&lhs, &rhs)?.plan)
}

/// Re-derives every claimed product and power and validates every plan
/// exactly; also re-checks that `a` matches the candidate family for the
/// claimed `(n, k)`.
pub fn verify_catalytic(p: &SparsePoly, q: &SparsePoly, cert: &CatalyticCertificate) -> bool {
    if p.is_zero() || q.is_zero() || cert.a.is_zero() {
        return false;
    }
    if cert.a != candidate_catalyst(p, q, cert.n, cert.k) {
        return false;
    }
    let lhs = match cert.a.checked_mul(p) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let rhs = match cert.a.checked_mul(q) {
        Ok(v) => v,
        Err(_) => return false,
    };
    validate_plan(&lhs, &rhs, &cert.plan)
}

pub fn verify_asymptotic(p: &SparsePoly, q: &SparsePoly, cert: &AsymptoticCertificate) -> bool {
    if p.is_zero() || q.is_zero() || cert.eps.is_negative() {
        return false;
    }
    if cert.plans.len() != cert.window as usize + 1 {
        return false;
    }
    let u = SparsePoly::all_vars_product(p.dim());
    for (i, plan) in cert.plans.iter().enumerate() {
        let n = cert.n_start + i as u32;
        let uk = (&cert.eps * Rat::from_integer(n.into())).floor().to_integer();
        let Some(uk) = uk.to_u32() else { return false };
        let lhs = p.pow(n);
        let rhs = match q.pow(n).checked_mul(&u.pow(uk)) {
            Ok(v) => v,
            Err(_) => return false,
        };
        if !validate_plan(&lhs, &rhs, plan) {
            return false;
        }
    }
    true
}

pub fn verify_uk(p: &SparsePoly, q: &SparsePoly, cert: &UkCertificate) -> bool {
    if p.is_zero() || q.is_zero() {
        return false;
    }
    if cert.plans.len() != cert.window as usize + 1 {
        return false;
    }
    let u = SparsePoly::all_vars_product(p.dim()).pow(cert.k);
    for (i, plan) in cert.plans.iter().enumerate() {
        let n = cert.n_start + i as u32;
        let lhs = match u.checked_mul(&p.pow(n)) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let rhs = match u.checked_mul(&q.pow(n)) {
            Ok(v) => v,
            Err(_) => return false,
        };
        if !validate_plan(&lhs, &rhs, plan) {
            return false;
        }
    }
    true
}

pub fn verify_certificate(p: &SparsePoly, q: &SparsePoly, cert: &Certificate) -> bool {
    match cert {
        Certificate::Catalytic(c) => verify_catalytic(p, q, c),
        Certificate::Asymptotic(c) => verify_asymptotic(p, q, c),
        Certificate::AsymptoticUk(c) => verify_uk(p, q, c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::{rat, rat_frac};

    fn poly(s: &str, d: usize) -> SparsePoly {
        parse_poly(s, d).unwrap()
    }

    /// The recorded pair: strict spectral pass, direct dominance fails.
    fn fixture_pair() -> (SparsePoly, SparsePoly) {
        (poly("2 + 2*x1^2", 1), poly("3*x1 + x1^4", 1))
    }

    #[test]
    fn directly_comparable_pair_needs_no_catalyst() {
        let out = find_catalytic(&poly("1", 1), &poly("x1", 1), 4, 2, SpectralGate::Off).unwrap();
        let cert = out.found().expect("found");
        assert_eq!((cert.n, cert.k), (0, 0));
        assert_eq!(cert.a, SparsePoly::one(1));
        assert!(verify_catalytic(&poly("1", 1), &poly("x1", 1), cert));
    }

    #[test]
    fn identical_pair_gets_identity_certificate() {
        let p = poly("1 + 2*x1", 1);
        let out = find_catalytic(&p, &p, 4, 2, SpectralGate::Off).unwrap();
        let cert = out.found().expect("found");
        assert_eq!((cert.n, cert.k), (0, 0));
        assert!(verify_catalytic(&p, &p, cert));
    }

    #[test]
    fn fixture_pair_requires_a_real_catalyst() {
        let (p, q) = fixture_pair();
        assert!(!decide(&p, &q).unwrap().comparable);
        let out = find_catalytic(&p, &q, 12, 6, SpectralGate::ExactOnly).unwrap();
        let cert = out.found().expect("certificate within budget");
        assert!(cert.n >= 1);
        assert_eq!((cert.n, cert.k), (1, 0));
        assert!(verify_catalytic(&p, &q, cert));
    }

    #[test]
    fn fixture_pair_asymptotic_eps_zero() {
        let (p, q) = fixture_pair();
        let out = find_asymptotic(&p, &q, &rat(0), 20, 3).unwrap();
        let cert = out.found().expect("certificate within budget");
        assert_eq!(cert.n_start, 2);
        assert_eq!(cert.plans.len(), 4);
        assert!(verify_asymptotic(&p, &q, cert));
    }

    #[test]
    fn asymptotic_identity_pair() {
        let p = poly("1 + x1", 1);
        let out = find_asymptotic(&p, &p, &rat_frac(1, 2), 5, 2).unwrap();
        let cert = out.found().expect("found");
        assert_eq!(cert.n_start, 1);
        assert!(verify_asymptotic(&p, &p, cert));
    }

    #[test]
    fn asymptotic_monomial_chain() {
        // p = 1, q = x: p^n <= q^n for all n with single moves
        let out = find_asymptotic(&poly("1", 1), &poly("x1", 1), &rat(0), 5, 2).unwrap();
        let cert = out.found().expect("found");
        assert_eq!(cert.n_start, 1);
        for (i, plan) in cert.plans.iter().enumerate() {
            let mv: Vec<_> = plan.moves().collect();
            assert_eq!(mv.len(), 1);
            assert_eq!(mv[0].1.entries(), &[1 + i as u32]);
        }
    }

    #[test]
    fn asymptotic_uk_on_fixture() {
        let (p, q) = fixture_pair();
        let out = find_asymptotic_uk(&p, &q, 2, 20, 3).unwrap();
        let cert = out.found().expect("found");
        assert_eq!((cert.k, cert.n_start), (0, 2));
        assert!(verify_uk(&p, &q, cert));
    }

    #[test]
    fn uk_direct_pair() {
        let out = find_asymptotic_uk(&poly("1", 1), &poly("x1", 1), 2, 5, 1).unwrap();
        let cert = out.found().expect("found");
        assert_eq!((cert.k, cert.n_start), (0, 1));
    }

    #[test]
    fn mass_mismatch_is_an_error() {
        assert!(matches!(
            find_asymptotic_uk(&poly("1", 1), &poly("2*x1", 1), 1, 3, 1),
            Err(Error::MassMismatch)
        ));
        assert!(matches!(
            find_catalytic(&poly("1", 1), &poly("2*x1", 1), 1, 1, SpectralGate::Off),
            Err(Error::MassMismatch)
        ));
    }

    #[test]
    fn spectral_gate_rejects_failing_pairs() {
        // reversed fixture fails the strict (and non-strict) spectral report
        let (p, q) = fixture_pair();
        let err = find_catalytic(&q, &p, 3, 2, SpectralGate::ExactOnly).unwrap_err();
        assert!(matches!(err, Error::SpectralPrecondition(_)));
    }

    #[test]
    fn inconclusive_for_spectrally_failing_pair() {
        // reversed fixture: a non-strict condition fails exactly, so no
        // certificate may exist at any budget
        let (p, q) = fixture_pair();
        let out = find_catalytic(&q, &p, 4, 3, SpectralGate::Off).unwrap();
        assert!(!out.is_found());
        let out = find_asymptotic(&q, &p, &rat(0), 8, 2).unwrap();
        assert!(!out.is_found());
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let (p, q) = fixture_pair();
        let cert = find_catalytic(&p, &q, 12, 6, SpectralGate::Off)
            .unwrap()
            .found()
            .unwrap()
            .clone();
        let mut tampered_k = cert.clone();
        tampered_k.k += 1;
        assert!(!verify_catalytic(&p, &q, &tampered_k));

        let mut tampered_plan = cert.clone();
        let moves: Vec<_> = tampered_plan
            .plan
            .moves()
            .map(|(f, t, m)| (f.clone(), t.clone(), m + rat(1)))
            .collect();
        tampered_plan.plan = TransportPlan::new(moves);
        assert!(!verify_catalytic(&p, &q, &tampered_plan));
        assert!(verify_catalytic(&p, &q, &cert));
    }

    #[test]
    fn support_guard_reports_gracefully() {
        // `(1 + x1 + x2 + x3)^n` grows quickly; a tiny guard must trip
        let p = poly("1 + x1 + x2 + x3", 3);
        let q = poly("x1 + x2 + x3 + x1*x2*x3", 3);
        let out = find_asymptotic_guarded(&p, &q, &rat(0), 30, 2, 50).unwrap();
        match out {
            SearchOutcome::Inconclusive(InconclusiveReason::SupportGuardExceeded {
                ..
            }) => {}
            other => panic!("expected guard trip, got {other:?}"),
        }
    }
}
