//! Executable lemma bench: inequality lemmas about preordered semifields,
//! instantiated in the five models and checked exactly on seeded samples.
//!
//! Each lemma samples candidate instances, filters by the lemma's
//! hypotheses (evaluated in the model's own order), and asserts the
//! conclusion with exact arithmetic. Hypotheses that are only satisfiable
//! degenerately in a model (for example `x + x^-1 >= 2` forces `x = 1` in
//! the opposite real order) simply check fewer instances there.

use num_integer::binomial;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::semifield::{sample_value, Model, PartialOrderResult, SemifieldValue};

type V = SemifieldValue;

fn add(a: &V, b: &V) -> V {
    a.add(b).expect("same model")
}

fn mul(a: &V, b: &V) -> V {
    a.mul(b).expect("same model")
}

fn pw(x: &V, e: i64) -> V {
    x.pow(e).expect("nonzero base")
}

fn nat(m: Model, k: u64) -> V {
    V::nat(m, k)
}

fn cmp(a: &V, b: &V) -> PartialOrderResult {
    a.compare(b).expect("same model")
}

fn ge(a: &V, b: &V) -> bool {
    cmp(a, b).ge()
}

fn gt(a: &V, b: &V) -> bool {
    cmp(a, b) == PartialOrderResult::Ge
}

fn le(a: &V, b: &V) -> bool {
    cmp(a, b).le()
}

fn eq(a: &V, b: &V) -> bool {
    cmp(a, b) == PartialOrderResult::Eq
}

enum Outcome {
    Skip,
    Pass,
    Fail(String),
}

fn verdict(ok: bool, describe: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(describe())
    }
}

struct Lemma {
    name: &'static str,
    applies: &'static [Model],
    run: fn(&mut ChaCha8Rng, Model) -> Outcome,
}

const ALL: &[Model] = &Model::ALL;
const REAL_PAIR: &[Model] = &[Model::Real, Model::RealOp];
const TROPICAL_PAIR: &[Model] = &[Model::Tropical, Model::TropicalOp];
const ARCTIC_ONLY: &[Model] = &[Model::Arctic];

fn two(m: Model) -> V {
    nat(m, 2)
}

/// `x + x^-1 >= 2`, the hypothesis shared by most of the bench.
fn hyp_norder(x: &V, m: Model) -> bool {
    ge(&add(x, &pw(x, -1)), &two(m))
}

fn small(rng: &mut ChaCha8Rng, lo: u32, hi: u32) -> i64 {
    rng.gen_range(lo..=hi) as i64
}

fn power_lemma_i(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    if !hyp_norder(&x, m) {
        return Outcome::Skip;
    }
    let (mm, nn) = (small(rng, 0, 5), small(rng, 0, 5));
    let lhs = add(
        &mul(&nat(m, mm as u64), &pw(&x, nn)),
        &mul(&nat(m, nn as u64), &pw(&x, -mm)),
    );
    let rhs = nat(m, (mm + nn) as u64);
    verdict(ge(&lhs, &rhs), || format!("x = {x}, m = {mm}, n = {nn}"))
}

fn power_lemma_ii(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    if !hyp_norder(&x, m) {
        return Outcome::Skip;
    }
    let n = small(rng, 0, 5);
    let lhs = mul(
        &pw(&two(m), n - 1),
        &add(&pw(&x, n), &pw(&x, -n)),
    );
    let rhs = pw(&add(&x, &pw(&x, -1)), n);
    verdict(ge(&lhs, &rhs), || format!("x = {x}, n = {n}"))
}

fn power_lemma_iii(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    if !hyp_norder(&x, m) {
        return Outcome::Skip;
    }
    let (mm, nn) = (small(rng, 0, 5), small(rng, 0, 5));
    let lhs = add(&pw(&x, mm + nn), &nat(m, 1));
    let rhs = add(&pw(&x, mm), &pw(&x, nn));
    verdict(ge(&lhs, &rhs), || format!("x = {x}, m = {mm}, n = {nn}"))
}

/// Strict variants of the three power-lemma items under `x + x^-2 > 2`,
/// benched only where strictness is decidable exactly over the rationals.
fn power_lemma_strict(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    if !gt(&add(&x, &pw(&x, -2)), &two(m)) {
        return Outcome::Skip;
    }
    let (mm, nn) = (small(rng, 1, 5), small(rng, 2, 5));
    let i_ok = gt(
        &add(
            &mul(&nat(m, mm as u64), &pw(&x, nn)),
            &mul(&nat(m, nn as u64), &pw(&x, -mm)),
        ),
        &nat(m, (mm + nn) as u64),
    );
    let ii_ok = gt(
        &mul(&pw(&two(m), nn - 1), &add(&pw(&x, nn), &pw(&x, -nn))),
        &pw(&add(&x, &pw(&x, -1)), nn),
    );
    let iii_ok = gt(
        &add(&pw(&x, mm + nn), &nat(m, 1)),
        &add(&pw(&x, mm), &pw(&x, nn)),
    );
    verdict(i_ok && ii_ok && iii_ok, || {
        format!("x = {x}, m = {mm}, n = {nn}")
    })
}

fn norder(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    if !hyp_norder(&x, m) {
        return Outcome::Skip;
    }
    let n = small(rng, 0, 6);
    verdict(ge(&add(&pw(&x, n), &pw(&x, -n)), &two(m)), || {
        format!("x = {x}, n = {n}")
    })
}

fn norder_strict(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    if !gt(&add(&x, &pw(&x, -1)), &two(m)) {
        return Outcome::Skip;
    }
    let n = small(rng, 1, 6);
    verdict(gt(&add(&pw(&x, n), &pw(&x, -n)), &two(m)), || {
        format!("x = {x}, n = {n}")
    })
}

fn other_power_lemma(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    let one = nat(m, 1);
    if !ge(&x, &one) {
        return Outcome::Skip;
    }
    let n = small(rng, 0, 4);
    if !le(&add(&pw(&x, n + 1), &one), &add(&pw(&x, n), &one)) {
        return Outcome::Skip;
    }
    let mm = small(rng, 0, 4);
    let lhs = pw(&add(&x, &one), mm);
    let rhs = mul(&pw(&two(m), mm), &pw(&x, n));
    verdict(le(&lhs, &rhs), || format!("x = {x}, n = {n}, m = {mm}"))
}

fn nonarctic_bound(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    let one = nat(m, 1);
    if !ge(&x, &one) {
        return Outcome::Skip;
    }
    if !ge(&add(&pw(&x, 2), &two(m)), &mul(&nat(m, 3), &x)) {
        return Outcome::Skip;
    }
    let n = small(rng, 0, 5);
    let lhs = add(&pw(&x, n + 1), &one);
    let rhs = mul(&two(m), &pw(&x, n));
    verdict(ge(&lhs, &rhs), || format!("x = {x}, n = {n}"))
}

fn power_square(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    if !eq(&add(&x, &pw(&x, -1)), &two(m)) {
        return Outcome::Skip;
    }
    let (mm, nn) = (small(rng, 0, 5), small(rng, 0, 5));
    let i_ok = eq(&add(&pw(&x, nn), &pw(&x, -nn)), &two(m));
    let ii_ok = eq(
        &add(
            &mul(&nat(m, mm as u64), &pw(&x, nn)),
            &mul(&nat(m, nn as u64), &pw(&x, -mm)),
        ),
        &nat(m, (mm + nn) as u64),
    );
    let iii_ok = eq(
        &add(&pw(&x, mm), &pw(&x, nn)),
        &add(&pw(&x, mm + nn), &nat(m, 1)),
    );
    verdict(i_ok && ii_ok && iii_ok, || {
        format!("x = {x}, m = {mm}, n = {nn}")
    })
}

/// `n -> a + x^n` is multiplicatively supermodular, with equality under the
/// arctic hypothesis.
fn super_general(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    let hyp = cmp(&add(&x, &pw(&x, -1)), &two(m));
    if !hyp.ge() {
        return Outcome::Skip;
    }
    let a = if rng.gen_range(0..8u32) == 0 {
        V::zero(m)
    } else {
        sample_value(m, rng)
    };
    let l = rng.gen_range(-3..=3i64);
    let (mm, nn) = (small(rng, 0, 4), small(rng, 0, 4));
    let lhs = mul(&add(&a, &pw(&x, l + mm + nn)), &add(&a, &pw(&x, l)));
    let rhs = mul(&add(&a, &pw(&x, l + mm)), &add(&a, &pw(&x, l + nn)));
    let ok = if hyp == PartialOrderResult::Eq {
        eq(&lhs, &rhs)
    } else {
        ge(&lhs, &rhs)
    };
    verdict(ok, || {
        format!("x = {x}, a = {a}, l = {l}, m = {mm}, n = {nn}")
    })
}

fn cancel1(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    let y = sample_value(m, rng);
    let one = nat(m, 1);
    if !hyp_norder(&x, m) || !ge(&y, &one) {
        return Outcome::Skip;
    }
    if !le(&add(&x, &one), &add(&y, &one)) {
        return Outcome::Skip;
    }
    let n = small(rng, 0, 5);
    verdict(le(&pw(&x, n), &pw(&y, n + 1)), || {
        format!("x = {x}, y = {y}, n = {n}")
    })
}

fn cancel2(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    let y = sample_value(m, rng);
    let a = sample_value(m, rng);
    let one = nat(m, 1);
    if !hyp_norder(&x, m) || !ge(&y, &one) {
        return Outcome::Skip;
    }
    let ainv = pw(&a, -1);
    if !le(&add(&a, &x), &add(&a, &y)) || !le(&add(&ainv, &x), &add(&ainv, &y)) {
        return Outcome::Skip;
    }
    let n = small(rng, 0, 5);
    verdict(le(&pw(&x, n), &pw(&y, n + 1)), || {
        format!("x = {x}, y = {y}, a = {a}, n = {n}")
    })
}

/// `x + 1 <= y + 1` propagates through any gap-free polynomial with
/// positive natural coefficients.
fn add_to_mult(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    let y = sample_value(m, rng);
    let one = nat(m, 1);
    if !le(&add(&x, &one), &add(&y, &one)) {
        return Outcome::Skip;
    }
    let deg = rng.gen_range(0..=4usize);
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(1..=3u64)).collect();
    let eval = |v: &V| {
        let mut acc = V::zero(m);
        for (i, &c) in coeffs.iter().enumerate() {
            acc = add(&acc, &mul(&nat(m, c), &pw(v, i as i64)));
        }
        acc
    };
    verdict(le(&eval(&x), &eval(&y)), || {
        format!("x = {x}, y = {y}, p = {coeffs:?}")
    })
}

fn power_skew3(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    if !hyp_norder(&x, m) {
        return Outcome::Skip;
    }
    let n = small(rng, 0, 5);
    let c_big = binomial((n + 2) as u64, 2);
    let c_small = binomial((n + 1) as u64, 2);
    let lhs = mul(&nat(m, c_big), &pw(&x, n));
    let mut rhs = mul(&nat(m, c_small), &pw(&x, n + 1));
    for j in 0..=n {
        rhs = add(&rhs, &pw(&x, j));
    }
    verdict(le(&lhs, &rhs), || format!("x = {x}, n = {n}"))
}

/// In a tropical model, mass addition saturates at the order maximum.
fn tropical_add_full(rng: &mut ChaCha8Rng, m: Model) -> Outcome {
    let x = sample_value(m, rng);
    let y = sample_value(m, rng);
    let max = if cmp(&x, &y).ge() { &x } else { &y };
    let lhs = add(&x, &y);
    let rhs = mul(&two(m), max);
    verdict(eq(&lhs, &rhs), || format!("x = {x}, y = {y}"))
}

fn sample_arctic_unit(rng: &mut ChaCha8Rng, nonneg: bool) -> V {
    use crate::rational::{rat_snap, Rat};
    let e: f64 = rng.gen_range(-3.0..=3.0);
    let t = rat_snap(10f64.powf(e), 4096);
    let s = if nonneg || rng.gen_bool(0.5) { t } else { -t };
    V::arctic(Rat::from_integer(1.into()), s)
}

fn arctic_main(rng: &mut ChaCha8Rng, _m: Model) -> Outcome {
    let x = sample_arctic_unit(rng, false);
    let y = sample_arctic_unit(rng, false);
    let lhs = add(&x, &y);
    let rhs = add(&mul(&x, &y), &nat(Model::Arctic, 1));
    verdict(eq(&lhs, &rhs), || format!("x = {x}, y = {y}"))
}

/// Random Laurent polynomial with positive natural coefficients:
/// exponent -> coefficient, at least one term.
fn sample_laurent(rng: &mut ChaCha8Rng) -> Vec<(i64, u64)> {
    let terms = rng.gen_range(1..=4usize);
    let mut out: std::collections::BTreeMap<i64, u64> = std::collections::BTreeMap::new();
    for _ in 0..terms {
        let e = rng.gen_range(-3..=4i64);
        let c = rng.gen_range(1..=3u64);
        *out.entry(e).or_insert(0) += c;
    }
    out.into_iter().collect()
}

fn laurent_eval(p: &[(i64, u64)], x: &V) -> V {
    let m = x.model();
    let mut acc = V::zero(m);
    for &(e, c) in p {
        acc = add(&acc, &mul(&nat(m, c), &pw(x, e)));
    }
    acc
}

fn laurent_mass(p: &[(i64, u64)]) -> u64 {
    p.iter().map(|&(_, c)| c).sum()
}

fn laurent_derivative_at_one(p: &[(i64, u64)]) -> i64 {
    p.iter().map(|&(e, c)| e * c as i64).sum()
}

/// `p(x) ~ x^{p'(1)} + (p(1) - 1)` for arctic `x ~ 1`.
fn arctic_formula_i(rng: &mut ChaCha8Rng, _m: Model) -> Outcome {
    let x = sample_arctic_unit(rng, false);
    let p = sample_laurent(rng);
    let lhs = laurent_eval(&p, &x);
    let rhs = add(
        &pw(&x, laurent_derivative_at_one(&p)),
        &nat(Model::Arctic, laurent_mass(&p) - 1),
    );
    verdict(eq(&lhs, &rhs), || format!("x = {x}, p = {p:?}"))
}

/// `p(x) ~ q(x)` iff the mass and derivative data agree.
fn arctic_formula_ii(rng: &mut ChaCha8Rng, _m: Model) -> Outcome {
    let x = sample_arctic_unit(rng, false);
    if matches!(&x, V::Arctic { s, .. } if num_traits::Zero::is_zero(s)) {
        return Outcome::Skip;
    }
    let p = sample_laurent(rng);
    let q = sample_laurent(rng);
    let lhs = eq(&laurent_eval(&p, &x), &laurent_eval(&q, &x));
    let rhs = laurent_mass(&p) == laurent_mass(&q)
        && laurent_derivative_at_one(&p) == laurent_derivative_at_one(&q);
    verdict(lhs == rhs, || format!("x = {x}, p = {p:?}, q = {q:?}"))
}

/// For `x > 1`: `p(x) <= q(x)` iff `p(1) = q(1)` and `p'(1) <= q'(1)`.
fn arctic_formula_iii(rng: &mut ChaCha8Rng, _m: Model) -> Outcome {
    let x = sample_arctic_unit(rng, true);
    if matches!(&x, V::Arctic { s, .. } if num_traits::Zero::is_zero(s)) {
        return Outcome::Skip;
    }
    let p = sample_laurent(rng);
    let q = sample_laurent(rng);
    let lhs = le(&laurent_eval(&p, &x), &laurent_eval(&q, &x));
    let rhs = laurent_mass(&p) == laurent_mass(&q)
        && laurent_derivative_at_one(&p) <= laurent_derivative_at_one(&q);
    verdict(lhs == rhs, || format!("x = {x}, p = {p:?}, q = {q:?}"))
}

const LEMMAS: &[Lemma] = &[
    Lemma { name: "power_lemma_i", applies: ALL, run: power_lemma_i },
    Lemma { name: "power_lemma_ii", applies: ALL, run: power_lemma_ii },
    Lemma { name: "power_lemma_iii", applies: ALL, run: power_lemma_iii },
    Lemma { name: "power_lemma_strict", applies: REAL_PAIR, run: power_lemma_strict },
    Lemma { name: "norder", applies: ALL, run: norder },
    Lemma { name: "norder_strict", applies: REAL_PAIR, run: norder_strict },
    Lemma { name: "other_power_lemma", applies: ALL, run: other_power_lemma },
    Lemma { name: "nonarctic_bound", applies: ALL, run: nonarctic_bound },
    Lemma { name: "power_square", applies: ALL, run: power_square },
    Lemma { name: "super_general", applies: ALL, run: super_general },
    Lemma { name: "cancel1", applies: ALL, run: cancel1 },
    Lemma { name: "cancel2", applies: ALL, run: cancel2 },
    Lemma { name: "add_to_mult", applies: ALL, run: add_to_mult },
    Lemma { name: "power_skew3", applies: ALL, run: power_skew3 },
    Lemma { name: "tropical_add_full", applies: TROPICAL_PAIR, run: tropical_add_full },
    Lemma { name: "arctic_main", applies: ARCTIC_ONLY, run: arctic_main },
    Lemma { name: "arctic_formula_i", applies: ARCTIC_ONLY, run: arctic_formula_i },
    Lemma { name: "arctic_formula_ii", applies: ARCTIC_ONLY, run: arctic_formula_ii },
    Lemma { name: "arctic_formula_iii", applies: ARCTIC_ONLY, run: arctic_formula_iii },
];

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub name: String,
    /// sampling attempts
    pub samples: usize,
    /// attempts that satisfied the lemma's hypotheses
    pub checked: usize,
    pub passes: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub model: Model,
    pub seed: u64,
    pub samples: usize,
    pub lemmas: Vec<LemmaReport>,
}

impl BenchReport {
    pub fn all_pass(&self) -> bool {
        self.lemmas.iter().all(|l| l.counterexample.is_none())
    }
}

fn lemma_seed(seed: u64, name: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ seed
}

/// Runs every applicable lemma against `samples` seeded attempts in the
/// model, reporting pass counts and the first counterexample, if any.
pub fn lemma_bench(model: Model, samples: usize, seed: u64) -> BenchReport {
    let mut lemmas = Vec::new();
    for lemma in LEMMAS {
        if !lemma.applies.contains(&model) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(lemma_seed(seed, lemma.name));
        let mut checked = 0usize;
        let mut passes = 0usize;
        let mut counterexample = None;
        for _ in 0..samples {
            match (lemma.run)(&mut rng, model) {
                Outcome::Skip => {}
                Outcome::Pass => {
                    checked += 1;
                    passes += 1;
                }
                Outcome::Fail(msg) => {
                    checked += 1;
                    if counterexample.is_none() {
                        counterexample = Some(format!("{}: {msg}", lemma.name));
                    }
                }
            }
        }
        lemmas.push(LemmaReport {
            name: lemma.name.to_string(),
            samples,
            checked,
            passes,
            counterexample,
        });
    }
    BenchReport {
        model,
        seed,
        samples,
        lemmas,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};

    #[test]
    fn spot_check_power_lemma_real() {
        // x = 2, m = n = 1: 2.5 >= 2
        let x = V::Real(rat(2));
        let lhs = add(&x, &pw(&x, -1));
        assert!(ge(&lhs, &V::Real(rat(2))));
        assert_eq!(lhs, V::Real(rat_frac(5, 2)));
    }

    #[test]
    fn arctic_main_identity_spot_check() {
        // (1 + 2 eps) + (1 + 3 eps) = 2 + 5 eps = (1 + 2 eps)(1 + 3 eps) + 1
        let x = V::arctic(rat(1), rat(2));
        let y = V::arctic(rat(1), rat(3));
        let lhs = add(&x, &y);
        let rhs = add(&mul(&x, &y), &nat(Model::Arctic, 1));
        assert_eq!(lhs, V::arctic(rat(2), rat(5)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn arctic_formula_spot_check() {
        // p = 1 + 2T at x = 1 + s eps: p(x) = 3 + 2s eps = x^2 + 2
        let p = vec![(0i64, 1u64), (1, 2)];
        let x = V::arctic(rat(1), rat_frac(7, 3));
        let lhs = laurent_eval(&p, &x);
        let rhs = add(
            &pw(&x, laurent_derivative_at_one(&p)),
            &nat(Model::Arctic, laurent_mass(&p) - 1),
        );
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, V::arctic(rat(3), rat_frac(14, 3)));
    }

    #[test]
    fn bench_passes_on_a_small_run() {
        for model in Model::ALL {
            let report = lemma_bench(model, 300, 42);
            assert!(
                report.all_pass(),
                "model {model:?}: {:?}",
                report
                    .lemmas
                    .iter()
                    .find(|l| l.counterexample.is_some())
                    .map(|l| l.counterexample.clone())
            );
            // the bench must actually exercise instances
            assert!(report.lemmas.iter().any(|l| l.checked > 0));
        }
    }

    #[test]
    fn bench_is_deterministic() {
        let a = lemma_bench(Model::Real, 100, 7);
        let b = lemma_bench(Model::Real, 100, 7);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
