//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs as a plain binary so the report reads top to bottom.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cigenera::arith::{binomial, binomial_int, binomial_reflect_check, Rational};
use cigenera::oracles::{self, build_q_series, chi_y_polynomial, genus_chern_root, SeriesLabel};
use cigenera::query::{evaluate, GenusKind, Oracle};
use cigenera::verify::{self, CheckId, FourTermInstance, SweepConfig, SweepReport};
use cigenera::{closed, CompleteIntersection, Series, TwistedGenusQuery};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    ok: bool,
    detail: String,
    problems: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, detail: String::new(), problems: Vec::new() }
    }

    fn expect(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if !cond {
            self.ok = false;
            if self.problems.len() < 20 {
                self.problems.push(what());
            }
        }
    }

    fn report(&mut self, r: &SweepReport) {
        let ok = r.passed();
        self.expect(ok, || format!("{r}"));
        for v in r.violations.iter().take(10) {
            self.problems.push(v.to_string());
        }
    }
}

fn cfg() -> SweepConfig {
    SweepConfig::default()
}

fn rat(v: i64) -> Rational {
    Rational::from(v)
}

fn level_pairs(cfg: &SweepConfig) -> Vec<(u32, u32)> {
    cfg.levels.iter().flat_map(|&l| (0..=l).map(move |k| (k, l))).collect()
}

fn within(o: &mut Outcome, label: &str, elapsed: Duration, budget: Duration) {
    o.expect(elapsed <= budget, || format!("{label} took {elapsed:.1?}, budget {budget:?}"));
}

fn todd_four_routes() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let xs = cfg().intersections();
    let q = build_q_series(SeriesLabel::Todd, 8).unwrap();
    for x in &xs {
        let a = closed::todd_closed(x).unwrap();
        let b = oracles::todd_genfun(x).unwrap();
        let c = genus_chern_root(x, &q).unwrap();
        o.expect(a == b && a == c, || format!("{x}: closed={a} genfun={b} chern-root={c}"));
        if x.codim() > 0 {
            let d = closed::todd_recurrence(x).unwrap();
            o.expect(a == d, || format!("{x}: closed={a} recurrence={d}"));
        }
    }
    let elapsed = start.elapsed();
    within(&mut o, "Todd agreement", elapsed, Duration::from_secs(30));
    o.detail = format!("{} intersections, {elapsed:.2?}", xs.len());
    o
}

fn level_n_routes() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let c = cfg();
    let pairs = level_pairs(&c);
    let cache: Vec<_> =
        pairs.iter().map(|&(k, level)| build_q_series(SeriesLabel::Level { k, level }, 8).unwrap()).collect();
    let mut compared = 0usize;
    for x in c.intersections() {
        let n = x.dim();
        let c1 = x.first_chern_coefficient();
        for (&(k, level), q) in pairs.iter().zip(&cache) {
            if c1 % level as i64 != 0 {
                continue;
            }
            compared += 1;
            let query = TwistedGenusQuery::new(x.clone(), k, level).unwrap();
            let closed_v = closed::chi_k_closed(&query).unwrap();
            let m = query.line_bundle_exponent().expect("integral twist");
            let genfun_v = oracles::chi_twist_genfun(&x, m).unwrap();
            let root_v = genus_chern_root(&x, q).unwrap();
            o.expect(closed_v == genfun_v && closed_v == root_v, || {
                format!("{x} k/N={k}/{level}: closed={closed_v} genfun={genfun_v} chern-root={root_v}")
            });
            o.expect(closed_v.is_integer(), || format!("{x} k/N={k}/{level}: {closed_v} not integral"));
            let mirror = closed::chi_k_closed(&TwistedGenusQuery::new(x.clone(), level - k, level).unwrap()).unwrap();
            let signed = Rational::sign_power(n as i64) * mirror;
            o.expect(closed_v == signed, || format!("{x} k/N={k}/{level}: symmetry {closed_v} vs {signed}"));
        }
    }
    let elapsed = start.elapsed();
    within(&mut o, "level-N agreement", elapsed, Duration::from_secs(60));
    o.detail = format!("{compared} (ci, k/N) pairs with N | c1, {elapsed:.2?}");
    o
}

fn from_sweep(reports: &[SweepReport], check: CheckId) -> Outcome {
    let mut o = Outcome::new();
    let r = reports.iter().find(|r| r.check == check).expect("check ran");
    o.report(r);
    o.detail = format!("{} instances, {} comparisons, {} violations", r.instances, r.comparisons, r.violations.len());
    o
}

fn chi_k_theorem(reports: &[SweepReport]) -> Outcome {
    let mut o = from_sweep(reports, CheckId::ChiK);
    let x: CompleteIntersection = "X2(6)".parse().unwrap();
    let v = closed::chi_k_closed(&TwistedGenusQuery::new(x.clone(), 1, 2).unwrap()).unwrap();
    o.expect(v == rat(8), || format!("chi(X2(6), K^(1/2)) = {v}, expected 8"));
    // k/N = 1/2, n = 2, c1 = -2: bound 2 C(n+1 - c1/2, n+1)
    let bound = rat(2) * binomial_int(3 + 1, 3);
    o.expect(v == bound, || format!("X2(6) k/N=1/2: value {v} does not saturate bound {bound}"));
    o.detail.push_str(&format!("; X2(6) k/N=1/2 -> {v} = bound {bound}"));
    o
}

fn ak_theorem(reports: &[SweepReport]) -> Outcome {
    let o = from_sweep(reports, CheckId::Ak);
    let mut o2 = from_sweep(reports, CheckId::Ahat);
    o2.ok &= o.ok;
    o2.problems.extend(o.problems);
    o2.detail = format!("ak: {}; ahat: {}", o.detail, o2.detail);
    o2
}

fn golden() -> Outcome {
    let mut o = Outcome::new();
    let get = |s: &str, kind: GenusKind| -> Vec<(Oracle, Rational)> {
        let x: CompleteIntersection = s.parse().unwrap();
        cigenera::query::evaluate_all(&x, kind).unwrap()
    };
    let mut golden_check = |s: &str, kind: GenusKind, expect: i64| {
        let vals = get(s, kind);
        o.expect(!vals.is_empty(), || format!("{s} {kind}: no route applies"));
        for (oracle, v) in vals {
            o.expect(v == rat(expect), || format!("{s} {kind} via {}: {v}, expected {expect}", oracle.name()));
        }
    };
    golden_check("X2(4)", GenusKind::Todd, 2);
    golden_check("X3(5)", GenusKind::Todd, 0);
    golden_check("X2(4)", GenusKind::Ahat, 2);
    golden_check("X2(2,2)", GenusKind::Signature, -4);
    for m in 1..=3 {
        golden_check(&format!("CP{}", 2 * m), GenusKind::Signature, 1);
    }
    golden_check("X2(2)", GenusKind::Signature, 0);
    golden_check("X1(3)", GenusKind::Euler, 0);

    let mut positive = 0usize;
    for x in cfg().intersections() {
        if x.total_degree() <= 2u32.into() {
            continue;
        }
        let e = oracles::euler_characteristic(&x).unwrap();
        let signed = Rational::sign_power(x.dim() as i64) * e;
        o.expect(!signed.is_negative(), || format!("{x}: (-1)^n Euler = {signed}"));
        positive += 1;
    }
    o.detail = format!("11 golden values, Euler sign on {positive} intersections");
    o
}

fn four_term(reports: &[SweepReport]) -> Outcome {
    let mut o = from_sweep(reports, CheckId::FourTerm);
    let r = reports.iter().find(|r| r.check == CheckId::FourTerm).unwrap();
    let sampled = r.instances * level_pairs(&cfg()).len();
    o.expect(sampled >= 100, || format!("only {sampled} (n, d, k/N) samples"));
    let inst = FourTermInstance { n: 4, degrees: vec![4, 3, 2] };
    let (lhs, rhs) = inst.sides(&Rational::new(2, 3)).unwrap();
    o.expect(lhs == rhs, || format!("n=4 (4,3,2) k/N=2/3: {lhs} != {rhs}"));
    o.detail = format!("{sampled} (n, d, k/N) samples; {}", o.detail);
    o
}

fn binomial_claim(reports: &[SweepReport]) -> Outcome {
    let mut o = from_sweep(reports, CheckId::Binomial);
    let c = cfg();
    o.expect(c.binomial_a == (-10, 15) && c.binomial_b == (-10, 15) && c.binomial_n == (1, 12), || {
        "default binomial ranges changed".into()
    });
    // small cases listed alongside the claim, printed with their exact values
    for (a, b, n) in [(5i64, 3i64, 4i64), (3, -1, 3), (1, 1, 1)] {
        let lhs = binomial_int(a + 1, n) + binomial_int(b - 1, n);
        let rhs = binomial_int(a, n) + binomial_int(b, n);
        o.expect(lhs >= rhs, || format!("a={a} b={b} n={n}: {lhs} < {rhs}"));
        o.detail.push_str(&format!("; (a,b,n)=({a},{b},{n}): {lhs} >= {rhs}"));
    }
    o
}

fn run_prop<S: Strategy>(o: &mut Outcome, name: &str, cases: u32, strat: S, test: impl Fn(S::Value) -> bool) {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let result = runner.run(&strat, |v| {
        prop_assert!(test(v));
        Ok(())
    });
    o.expect(result.is_ok(), || format!("{name}: {result:?}"));
}

fn property_suites() -> Outcome {
    let mut o = Outcome::new();
    let r = || (-60i64..60, 1i64..13).prop_map(|(p, q)| Rational::new(p, q));
    run_prop(&mut o, "pascal", 10_000, (r(), 1i64..16), |(a, k)| {
        let a1 = &a - Rational::one();
        binomial(&a, k) == binomial(&a1, k) + binomial(&a1, k - 1)
    });
    run_prop(&mut o, "reflection", 10_000, (r(), 0i64..16), |(a, k)| binomial_reflect_check(&a, k));

    let series = move |order: usize| prop::collection::vec(r(), order + 1).prop_map(Series::from_coeffs);
    let triple = (0usize..=12).prop_flat_map(move |o| (series(o), series(o), series(o)));
    run_prop(&mut o, "ring laws", 500, triple, |(s, t, u)| {
        s.mul(&t).unwrap() == t.mul(&s).unwrap()
            && s.mul(&t).unwrap().mul(&u).unwrap() == s.mul(&t.mul(&u).unwrap()).unwrap()
            && s.mul(&t.add(&u).unwrap()).unwrap() == s.mul(&t).unwrap().add(&s.mul(&u).unwrap()).unwrap()
    });
    run_prop(&mut o, "exp homomorphism", 500, (r(), r(), 0usize..=12), |(a, b, ord)| {
        Series::exp_linear(&a, ord).mul(&Series::exp_linear(&b, ord)).unwrap() == Series::exp_linear(&(&a + &b), ord)
    });
    run_prop(&mut o, "binomial-power homomorphism", 500, (r(), r(), 0usize..=12), |(a, b, ord)| {
        Series::binomial_power(&a, ord).mul(&Series::binomial_power(&b, ord)).unwrap()
            == Series::binomial_power(&(&a + &b), ord)
    });

    let xs = cfg().intersections();
    for x in &xs {
        let poly = chi_y_polynomial(x, 0).unwrap();
        o.expect(poly.is_palindromic(), || format!("{x}: chi_y = {poly} not palindromic"));
    }

    let padded = (1i64..=6, prop::collection::vec(2i64..=6, 0..=3), 1usize..4, any::<prop::sample::Index>());
    run_prop(&mut o, "normalization invariance", 300, padded, |(n, degrees, ones, pos)| {
        let base = CompleteIntersection::normalize(n, &degrees).unwrap();
        let mut raw = degrees.clone();
        for _ in 0..ones {
            raw.insert(pos.index(raw.len() + 1), 1);
        }
        let raw_u: Vec<u32> = raw.iter().map(|&d| d as u32).collect();
        let t = Rational::new(1, 3);
        CompleteIntersection::normalize(n, &raw).unwrap() == base
            && closed::chi_k_raw(n as u32, &raw_u, &t).unwrap() == closed::chi_k_fraction(&base, &t).unwrap()
            && oracles::chi_twist_genfun_raw(n as u32, &raw_u, 1).unwrap()
                == oracles::chi_twist_genfun(&base, 1).unwrap()
    });
    o.detail = format!("2 x 10^4 binomial cases, series laws at order <= 12, palindrome on {} intersections", xs.len());
    o
}

fn determinism(first: &str) -> Outcome {
    let mut o = Outcome::new();
    let c = cfg();
    let second = verify::sweep_json(&c, &verify::run_sweep(&c).unwrap());
    o.expect(first == second, || "two default sweeps produced different JSON".into());
    o.detail = format!("{} bytes, identical", first.len());
    o
}

fn main() -> ExitCode {
    // keep the unit-style check that every route is reachable from `evaluate`
    let probe: CompleteIntersection = "X2(4)".parse().unwrap();
    assert!(evaluate(&probe, GenusKind::Todd, Oracle::Recurrence).unwrap().is_some());

    let c = cfg();
    let sweep_start = Instant::now();
    let reports = verify::run_sweep(&c).expect("default config is valid");
    let sweep_time = sweep_start.elapsed();
    let first_json = verify::sweep_json(&c, &reports);

    let criteria: Vec<(&str, Criterion)> = vec![
        ("oracle agreement (Todd, four routes)", Box::new(todd_four_routes)),
        ("level-N cusp values", Box::new(level_n_routes)),
        ("Todd vanishing and lower bounds", Box::new(|| from_sweep(&reports, CheckId::Todd))),
        ("cusp-value theorem", Box::new(|| chi_k_theorem(&reports))),
        ("A_k theorem and bridges", Box::new(|| ak_theorem(&reports))),
        ("golden values", Box::new(golden)),
        ("four-term identity", Box::new(|| four_term(&reports))),
        ("binomial claim", Box::new(|| binomial_claim(&reports))),
        ("property suites", Box::new(property_suites)),
        ("determinism", Box::new(|| determinism(&first_json))),
    ];

    println!("default sweep: {sweep_time:.2?}");
    for r in &reports {
        println!("  {r}");
    }
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("{tag} [{:>2}] {name}: {}", i + 1, out.detail);
        for p in &out.problems {
            println!("        {p}");
        }
        if !out.ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
