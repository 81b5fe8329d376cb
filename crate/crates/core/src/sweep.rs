//! Exhaustive and randomized cross-checks of the closed-form solvers
//! against the linear oracle.
//!
//! Each suite maps instances to outcomes in parallel and folds them in
//! instance order, so reports are identical across runs and thread counts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cline::{ClineContext, ClineProblem};
use crate::gen_inverse::{all_one_inverses, index, one_inverse};
use crate::generator::AffineGenerator;
use crate::kcomm::{find_kcomm_inverse, KCommContext, KCommProblem};
use crate::matrix::Matrix;
use crate::oracle::{AffineSolutionSet, DEFAULT_ENUMERATION_CAP};
use crate::penrose::{PenroseContext, PenroseProblem};
use crate::random;
use crate::report::{EquationError, PowerPolicy};
use crate::scalar::FieldSpec;

/// Failures listed in a report beyond this count are only counted.
const MAX_LISTED_FAILURES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Cline,
    Penrose,
    KComm,
    Reproductivity,
    Witness,
    Primitives,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Cline,
        Suite::Penrose,
        Suite::KComm,
        Suite::Reproductivity,
        Suite::Witness,
        Suite::Primitives,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Cline => "cline",
            Suite::Penrose => "penrose",
            Suite::KComm => "kcomm",
            Suite::Reproductivity => "repro",
            Suite::Witness => "witness",
            Suite::Primitives => "primitives",
        }
    }

    pub fn run(self, seed: u64) -> SuiteReport {
        match self {
            Suite::Cline => cline_suite(),
            Suite::Penrose => penrose_suite(),
            Suite::KComm => kcomm_suite(),
            Suite::Reproductivity => reproductivity_suite(seed, 100),
            Suite::Witness => witness_suite(),
            Suite::Primitives => primitives_suite(seed, 500),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| format!("unknown suite \"{s}\", expected one of cline, penrose, kcomm, repro, witness, primitives"))
    }
}

/// Aggregated result of one suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub instances: u64,
    /// Instances the oracle found solvable.
    pub consistent: u64,
    /// Individual comparisons performed.
    pub checks: u64,
    pub defects: u64,
    /// Suite-specific tallies, e.g. `witnesses`.
    pub counters: BTreeMap<String, u64>,
    /// The first few defects, in instance order.
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn counter(&self, name: &str) -> u64 {
        self.counters.get(name).copied().unwrap_or(0)
    }
}

#[derive(Default)]
struct Outcome {
    consistent: bool,
    checks: u64,
    defects: u64,
    counters: BTreeMap<&'static str, u64>,
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.defects += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn bump(&mut self, name: &'static str) {
        *self.counters.entry(name).or_default() += 1;
    }
}

fn aggregate(suite: Suite, outcomes: Vec<Outcome>, started: Instant) -> SuiteReport {
    let mut report = SuiteReport {
        suite: suite.as_str().to_string(),
        passed: false,
        instances: outcomes.len() as u64,
        consistent: 0,
        checks: 0,
        defects: 0,
        counters: BTreeMap::new(),
        failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for o in outcomes {
        report.consistent += o.consistent as u64;
        report.checks += o.checks;
        report.defects += o.defects;
        for (k, v) in o.counters {
            *report.counters.entry(k.to_string()).or_default() += v;
        }
        for f in o.failures {
            if report.failures.len() < MAX_LISTED_FAILURES {
                report.failures.push(f);
            }
        }
    }
    report.passed = report.defects == 0;
    report.elapsed = started.elapsed();
    report
}

/// Every `rows × cols` matrix over a prime field, in odometer order.
pub fn all_matrices(field: FieldSpec, rows: usize, cols: usize) -> Vec<Matrix> {
    let q = field.order().expect("finite field") as usize;
    let n = rows * cols;
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let digits: Vec<i64> = (0..n)
                .map(|_| {
                    let d = code % q;
                    code /= q;
                    d as i64
                })
                .collect();
            Matrix::from_fn(field, rows, cols, |i, j| field.from_i64(digits[i * cols + j]))
        })
        .collect()
}

fn enumerate_set(set: &AffineSolutionSet) -> BTreeSet<Matrix> {
    set.enumerate(DEFAULT_ENUMERATION_CAP)
        .expect("finite solution sets in the suites are small")
        .collect()
}

/// Compares a generator with an oracle solution set: same affine set, and
/// (when `all_params` is given) `{h(Y)}` over every parameter equals the
/// enumerated oracle set.
fn compare_with_oracle(
    out: &mut Outcome,
    key: &str,
    h: &AffineGenerator,
    oracle: &AffineSolutionSet,
    all_params: Option<&[Matrix]>,
) {
    out.check(h.image().sets_equal(oracle).unwrap_or(false), || format!("{key}: image differs from oracle set"));
    if let Some(params) = all_params {
        let images: BTreeSet<Matrix> = params.iter().map(|y| h.apply(y).expect("parameter shape")).collect();
        out.check(images == enumerate_set(oracle), || format!("{key}: enumerated images differ from oracle"));
    }
}

fn cline_instance(p: &ClineProblem, policy: PowerPolicy, params: &[Matrix]) -> Option<Outcome> {
    let ctx = match ClineContext::new(p, None, None, policy) {
        Ok(ctx) => ctx,
        Err(EquationError::IndexTooSmall { .. }) => return None,
        Err(e) => panic!("unexpected error {e}"),
    };
    let key = format!("cline m={} n={} A={} B={} C={}", p.m, p.n, p.a, p.b, p.c);
    let mut out = Outcome::default();
    let oracle = p.system().solve().expect("well-formed system");
    let verdict = ctx.consistency().consistent;
    out.consistent = oracle.is_consistent();
    out.check(verdict == out.consistent, || format!("{key}: verdict {verdict} vs oracle"));
    if verdict && out.consistent {
        let f = ctx.f_generator().expect("consistent");
        out.check(f.is_reproductive().map(|v| v.reproductive).unwrap_or(false), || {
            format!("{key}: f not reproductive")
        });
        compare_with_oracle(&mut out, &key, &f, &oracle, Some(params));
    }
    Some(out)
}

/// GF(2), 2×2: all triples with `m = n = 1` (powers below the index are
/// allowed, the criterion does not need them) and every triple passing
/// index validation with `m = n = 2`.
pub fn cline_suite() -> SuiteReport {
    let started = Instant::now();
    let field = FieldSpec::Prime(2);
    let mats = all_matrices(field, 2, 2);
    let mut outcomes = Vec::new();
    for (power, policy) in [(1, PowerPolicy::AllowSmall), (2, PowerPolicy::Strict)] {
        let batch: Vec<Option<Outcome>> = (0..mats.len().pow(3))
            .into_par_iter()
            .map(|code| {
                let (a, b, c) = (&mats[code % 16], &mats[(code / 16) % 16], &mats[code / 256]);
                let p = ClineProblem::new(a.clone(), b.clone(), c.clone(), power, power).expect("2x2 shapes");
                cline_instance(&p, policy, &mats)
            })
            .collect();
        outcomes.extend(batch.into_iter().flatten());
    }
    aggregate(Suite::Cline, outcomes, started)
}

/// GF(2), 2×2, `m = n = 1`: all 65536 quadruples.
pub fn penrose_suite() -> SuiteReport {
    let started = Instant::now();
    let field = FieldSpec::Prime(2);
    let mats = all_matrices(field, 2, 2);
    let outcomes: Vec<Outcome> = (0..16usize.pow(4))
        .into_par_iter()
        .map(|code| {
            let pick = |shift: usize| mats[(code >> (4 * shift)) & 15].clone();
            let p = PenroseProblem::new(pick(0), pick(1), pick(2), pick(3), 1, 1).expect("2x2 shapes");
            penrose_instance(&p, PowerPolicy::AllowSmall)
        })
        .collect();
    aggregate(Suite::Penrose, outcomes, started)
}

fn penrose_instance(p: &PenroseProblem, policy: PowerPolicy) -> Outcome {
    let key = format!("penrose A={} B={} D={} E={}", p.a, p.b, p.d, p.e);
    let mut out = Outcome::default();
    let oracle = p.system().solve().expect("well-formed system");
    out.consistent = oracle.is_consistent();
    let ctx = match PenroseContext::new(p, None, None, policy) {
        Ok(ctx) => ctx,
        Err(e) => {
            out.check(false, || format!("{key}: {e}"));
            return out;
        }
    };
    let verdict = ctx.consistency().consistent;
    out.check(verdict == out.consistent, || format!("{key}: verdict {verdict} vs oracle"));
    if verdict && out.consistent {
        out.check(ctx.x1().is_ok_and(|x| p.is_solution(&x)), || format!("{key}: X1 does not solve"));
        let f = ctx.f_generator().expect("consistent");
        compare_with_oracle(&mut out, &key, &f, &oracle, None);
        if ctx.literal_x1_differs() {
            out.bump("literal_x1_differs");
        }
        if !ctx.literal_x1_solves() {
            out.bump("literal_x1_fails");
        }
    }
    out
}

/// Brute force over every candidate matrix, using nothing but the two
/// defining identities.
fn kcomm_brute_force(p: &KCommProblem, candidates: &[Matrix]) -> Vec<Matrix> {
    let a = &p.a;
    let ak = a.power(p.k).expect("square");
    candidates
        .iter()
        .filter(|x| &(a * *x) * a == *a && &ak * *x == *x * &ak)
        .cloned()
        .collect()
}

fn kcomm_instance(p: &KCommProblem, candidates: &[Matrix]) -> Outcome {
    let key = format!("kcomm k={} A={}", p.k, p.a);
    let mut out = Outcome::default();
    let brute = kcomm_brute_force(p, candidates);
    let oracle = p.system().solve().expect("well-formed system");
    out.consistent = !brute.is_empty();
    out.check(oracle.is_consistent() == out.consistent, || format!("{key}: oracle disagrees with brute force"));
    out.check(enumerate_set(&oracle) == brute.iter().cloned().collect(), || {
        format!("{key}: oracle set differs from brute force")
    });
    let found = match find_kcomm_inverse(p) {
        Ok(found) => found,
        Err(e) => {
            out.check(false, || format!("{key}: {e}"));
            return out;
        }
    };
    out.check(found.is_some() == out.consistent, || format!("{key}: find_kcomm_inverse verdict"));
    let Some(ctx) = found else { return out };
    let f = ctx.f_generator();
    for x0 in &brute {
        let lemmas = ctx.lemma_report(Some(x0)).expect("x0 solves");
        out.check(lemmas.all_hold(), || format!("{key}: lemma fails for x0={x0}"));
        out.check(f.apply(x0).as_ref() == Ok(x0), || format!("{key}: f(x0) != x0 for x0={x0}"));
    }
    // every solution can serve as Ā
    for abar in &brute {
        match KCommContext::with_inverse(p, abar.clone(), crate::gen_inverse::Construction::UserSupplied) {
            Ok(c) => {
                out.check(c.lemma_report(None).is_ok_and(|r| r.all_hold()), || format!("{key}: lemma fails for Ā={abar}"));
                let f = c.f_generator();
                out.check(f.is_reproductive().is_ok_and(|v| v.reproductive), || format!("{key}: f not reproductive for Ā={abar}"));
                compare_with_oracle(&mut out, &key, &f, &oracle, None);
            }
            Err(e) => out.check(false, || format!("{key}: Ā={abar} rejected: {e}")),
        }
    }
    out
}

/// GF(3) 2×2 and GF(2) 3×3, every matrix, `k ∈ {1, 2, 3}`.
pub fn kcomm_suite() -> SuiteReport {
    let started = Instant::now();
    let mut outcomes = Vec::new();
    for (field, n) in [(FieldSpec::Prime(3), 2), (FieldSpec::Prime(2), 3)] {
        let mats = all_matrices(field, n, n);
        let batch: Vec<Outcome> = (1..=3u32)
            .flat_map(|k| mats.iter().map(move |a| (a, k)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(a, k)| kcomm_instance(&KCommProblem::new(a.clone(), k).expect("square"), &mats))
            .collect();
        outcomes.extend(batch);
    }
    aggregate(Suite::KComm, outcomes, started)
}

/// Checks `f` and `g` reproductivity for one consistent instance: `g` with
/// the canonical constant must be reproductive, `g` with any other solution
/// must not be.
fn classify(out: &mut Outcome, key: &str, f: &AffineGenerator, canonical: &Matrix, oracle: &AffineSolutionSet, g: impl Fn(&Matrix) -> AffineGenerator) {
    out.check(f.is_reproductive().is_ok_and(|v| v.reproductive), || format!("{key}: f not reproductive"));
    let mut candidates = vec![canonical.clone()];
    candidates.extend(oracle.particular().cloned());
    if let Some(direction) = oracle.basis().first() {
        candidates.push(canonical + direction);
        out.bump("distinct_x0_tested");
    }
    for x0 in candidates {
        out.check(oracle.contains(&x0).unwrap_or(false), || format!("{key}: x0 is not a solution"));
        let verdict = g(&x0).is_reproductive().map(|v| v.reproductive);
        let expected = x0 == *canonical;
        out.check(verdict == Ok(expected), || format!("{key}: g reproductive {verdict:?}, x0 canonical {expected}"));
    }
}

/// `per_family` random consistent instances of each family over ℚ.
pub fn reproductivity_suite(seed: u64, per_family: usize) -> SuiteReport {
    let started = Instant::now();
    let field = FieldSpec::Rationals;
    let outcomes: Vec<Outcome> = (0..3 * per_family)
        .into_par_iter()
        .map(|i| {
            let mut rng = random::seeded(seed.wrapping_mul(0x9e37_79b9).wrapping_add(i as u64));
            let (p, q) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
            let mut out = Outcome { consistent: true, ..Outcome::default() };
            match i % 3 {
                0 => {
                    let prob = random::consistent_cline(&mut rng, field, p, q);
                    let key = format!("cline #{i}");
                    let ctx = ClineContext::new(&prob, None, None, PowerPolicy::Strict).expect("m, n at least the index");
                    out.check(ctx.consistency().consistent, || format!("{key}: planted instance reported inconsistent"));
                    let oracle = prob.system().solve().expect("well-formed");
                    let f = ctx.f_generator().expect("consistent");
                    classify(&mut out, &key, &f, &ctx.canonical_particular(), &oracle, |x0| ctx.g_generator(x0).expect("solution"));
                }
                1 => {
                    let prob = random::consistent_penrose(&mut rng, field, p, q);
                    let key = format!("penrose #{i}");
                    let ctx = PenroseContext::new(&prob, None, None, PowerPolicy::Strict).expect("m, n at least the index");
                    let oracle = prob.system().solve().expect("well-formed");
                    let f = ctx.f_generator().expect("consistent");
                    classify(&mut out, &key, &f, &ctx.x1, &oracle, |x0| ctx.g_generator(x0).expect("solution"));
                }
                _ => {
                    let prob = random::consistent_kcomm(&mut rng, field, p);
                    let key = format!("kcomm #{i}");
                    let ctx = find_kcomm_inverse(&prob).expect("well-formed").expect("consistent");
                    let oracle = prob.system().solve().expect("well-formed");
                    classify(&mut out, &key, &ctx.f_generator(), ctx.xhat(), &oracle, |x0| ctx.g_generator(x0).expect("solution"));
                }
            }
            out
        })
        .collect();
    aggregate(Suite::Reproductivity, outcomes, started)
}

/// Searches GF(2) Cline instances (2×2, `m = n ∈ {1, 2}`, index-valid) for a
/// solution that is not `G·C·G'` for any pair of {1}-inverses. Passing needs
/// at least one such witness and no `G·C·G'` that fails to solve.
pub fn witness_suite() -> SuiteReport {
    let started = Instant::now();
    let field = FieldSpec::Prime(2);
    let mats = all_matrices(field, 2, 2);
    let mut outcomes = Vec::new();
    for power in [1u32, 2] {
        let batch: Vec<Option<Outcome>> = (0..16usize.pow(3))
            .into_par_iter()
            .map(|code| {
                let (a, b, c) = (&mats[code % 16], &mats[(code / 16) % 16], &mats[code / 256]);
                let p = ClineProblem::new(a.clone(), b.clone(), c.clone(), power, power).expect("2x2 shapes");
                ClineContext::new(&p, None, None, PowerPolicy::Strict).ok()?;
                Some(witness_instance(&p))
            })
            .collect();
        outcomes.extend(batch.into_iter().flatten());
    }
    let mut report = aggregate(Suite::Witness, outcomes, started);
    report.passed = report.defects == 0 && report.counter("witnesses") >= 1;
    report
}

fn witness_instance(p: &ClineProblem) -> Outcome {
    let mut out = Outcome::default();
    let oracle = p.system().solve().expect("well-formed");
    out.consistent = oracle.is_consistent();
    if !out.consistent {
        return out;
    }
    let am = p.a.power(p.m).expect("square");
    let bn = p.b.power(p.n).expect("square");
    let gs = enumerate_set(&all_one_inverses(&am).expect("square"));
    let hs = enumerate_set(&all_one_inverses(&bn).expect("square"));
    let reachable: BTreeSet<Matrix> = gs.iter().flat_map(|g| hs.iter().map(move |h| &(g * &p.c) * h)).collect();
    let key = format!("cline m={} A={} B={} C={}", p.m, p.a, p.b, p.c);
    for x in &reachable {
        out.check(p.is_solution(x), || format!("{key}: G C G' = {x} does not solve"));
    }
    let mut found = false;
    for x0 in enumerate_set(&oracle) {
        if !reachable.contains(&x0) {
            out.bump("witnesses");
            if !found {
                out.bump("instances_with_witness");
                found = true;
            }
        }
    }
    out
}

/// Rank-stabilization index by direct iteration: the first `k` with
/// `rank(A^k) = rank(A^{k+1})`.
pub fn naive_index(a: &Matrix) -> usize {
    let mut power = Matrix::identity(a.field(), a.rows());
    let mut k = 0;
    loop {
        let next = &power * a;
        if power.rank() == next.rank() {
            return k;
        }
        power = next;
        k += 1;
    }
}

fn mixed_field(rng: &mut impl Rng) -> FieldSpec {
    match rng.gen_range(0..5) {
        0 | 1 => FieldSpec::Rationals,
        2 => FieldSpec::Prime(2),
        3 => FieldSpec::Prime(3),
        _ => FieldSpec::Prime(7),
    }
}

/// `count` random {1}-inverse memberships (shapes up to 4×5) and `count`
/// index comparisons on 4×4 matrices, over ℚ and several prime fields.
pub fn primitives_suite(seed: u64, count: usize) -> SuiteReport {
    let started = Instant::now();
    let outcomes: Vec<Outcome> = (0..2 * count)
        .into_par_iter()
        .map(|i| {
            let mut rng = random::seeded(seed ^ (0x5bd1_e995u64.wrapping_mul(i as u64 + 1)));
            let field = mixed_field(&mut rng);
            let mut out = Outcome { consistent: true, ..Outcome::default() };
            if i < count {
                let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=5));
                let rank = rng.gen_range(0..=r.min(c));
                let a = if rng.gen_bool(0.5) {
                    random::random_matrix(&mut rng, field, r, c)
                } else {
                    random::random_low_rank(&mut rng, field, r, c, rank)
                };
                let g = one_inverse(&a).g;
                out.check(&(&a * &g) * &a == a, || format!("A G A != A for A={a}"));
                out.check(all_one_inverses(&a).and_then(|s| s.contains(&g)).unwrap_or(false), || {
                    format!("one_inverse({a}) not in the oracle set")
                });
            } else {
                let a = random::random_square(&mut rng, field, 4);
                let (fast, naive) = (index(&a).expect("square"), naive_index(&a));
                out.check(fast == naive, || format!("index {fast} vs naive {naive} for A={a}"));
                out.bump(match naive {
                    0 => "index_0",
                    1 => "index_1",
                    2 => "index_2",
                    _ => "index_3_or_more",
                });
            }
            out
        })
        .collect();
    aggregate(Suite::Primitives, outcomes, started)
}

/// For every GF(2) 2×2 Cline triple with `m = n = 1`, checks that
/// `A·G·C·G'·B = C` gives the same verdict for every pair of {1}-inverses.
pub fn cline_choice_independence() -> SuiteReport {
    let started = Instant::now();
    let field = FieldSpec::Prime(2);
    let mats = all_matrices(field, 2, 2);
    let outcomes: Vec<Outcome> = (0..16usize.pow(3))
        .into_par_iter()
        .map(|code| {
            let (a, b, c) = (&mats[code % 16], &mats[(code / 16) % 16], &mats[code / 256]);
            let mut out = Outcome::default();
            let p = ClineProblem::new(a.clone(), b.clone(), c.clone(), 1, 1).expect("2x2 shapes");
            out.consistent = p.system().solve().expect("well-formed").is_consistent();
            let gs = enumerate_set(&all_one_inverses(a).expect("square"));
            let hs = enumerate_set(&all_one_inverses(b).expect("square"));
            for g in &gs {
                for h in &hs {
                    let holds = &(&(&(a * g) * c) * h) * b == *c;
                    out.check(holds == out.consistent, || format!("A={a} B={b} C={c}: G={g} H={h} gives {holds}"));
                }
            }
            out
        })
        .collect();
    aggregate(Suite::Cline, outcomes, started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_matrices_counts() {
        assert_eq!(all_matrices(FieldSpec::Prime(2), 2, 2).len(), 16);
        let m = all_matrices(FieldSpec::Prime(3), 1, 2);
        assert_eq!(m.len(), 9);
        assert_eq!(m.iter().collect::<BTreeSet<_>>().len(), 9);
    }

    #[test]
    fn naive_index_examples() {
        let q = FieldSpec::Rationals;
        assert_eq!(naive_index(&Matrix::identity(q, 3)), 0);
        assert_eq!(naive_index(&Matrix::from_i64(q, &[&[0, 1], &[0, 0]])), 2);
        assert_eq!(naive_index(&Matrix::diag(q, &[1, 0])), 1);
    }

    #[test]
    fn small_randomized_suites_pass() {
        let r = reproductivity_suite(1, 5);
        assert!(r.passed, "{:?}", r.failures);
        let p = primitives_suite(1, 20);
        assert!(p.passed, "{:?}", p.failures);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>(), Ok(s));
        }
    }
}
