//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use jantzen_core::arith::Order;
use jantzen_core::duality::{intertwiner, invariance_failures, Intertwiner};
use jantzen_core::jantzen::{analyze_with_coordinate, RationalInterval};
use jantzen_core::{
    analyze_at, build_family, distinguished_points, filtration_oracle, BigRational, FamilyModule, GaussianRational,
    JantzenAnalysis, Poly, RatFunc, RationalPoint, SpectrumReport, SweepConfig, Verdict,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 1000;

type Criterion = fn() -> Check;

#[derive(Default)]
struct Check {
    failures: Vec<String>,
}

impl Check {
    fn ensure(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 20 {
            self.failures.push(msg());
        }
    }

    fn timed(&mut self, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"));
    }
}

fn pt(n: i64, d: i64) -> RationalPoint {
    RationalPoint::from_ratio(n, d)
}

fn contraction_casimir() -> RatFunc {
    RatFunc::new(Poly::from_integers(&[-1, -1]), Poly::z()).unwrap()
}

fn discrete_casimir() -> RatFunc {
    RatFunc::new(Poly::from_integers(&[1, -1]), Poly::z()).unwrap()
}

fn setup(c: &RatFunc, bound: i64) -> (FamilyModule, Intertwiner) {
    let family = build_family(c, bound).unwrap();
    let phi = intertwiner(&family).unwrap();
    (family, phi)
}

/// Uniform-ish rational in `[lo, hi]` with denominator at most `max_den`.
fn random_rational(rng: &mut ChaCha8Rng, lo: (i64, i64), hi: (i64, i64), max_den: i64) -> RationalPoint {
    loop {
        let q = rng.gen_range(1..=max_den);
        let from = (lo.0 * q).div_euclid(lo.1) + 1;
        let to = (hi.0 * q).div_euclid(hi.1);
        if from <= to {
            return pt(rng.gen_range(from..=to), q);
        }
    }
}

fn random_ratio(rng: &mut ChaCha8Rng, span: i64) -> GaussianRational {
    GaussianRational::from_ratio(rng.gen_range(-span..=span), rng.gen_range(1..=4))
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    &random_ratio(rng, 6) + &(&GaussianRational::i() * &random_ratio(rng, 3))
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize, real: bool) -> Poly {
    let degree = rng.gen_range(0..=max_degree);
    Poly::new((0..=degree).map(|_| if real { random_ratio(rng, 6) } else { random_gaussian(rng) }).collect())
}

fn random_ratfunc(rng: &mut ChaCha8Rng, real: bool) -> RatFunc {
    loop {
        let den = random_poly(rng, 2, real);
        if !den.is_zero() {
            return RatFunc::new(random_poly(rng, 3, real), den).unwrap();
        }
    }
}

/// A valid real Casimir `(α + βz + γz²)/z`, or a polynomial one.
fn random_family(rng: &mut ChaCha8Rng, max_bound: i64) -> (RatFunc, FamilyModule, Intertwiner) {
    loop {
        let alpha = if rng.gen_bool(0.8) { random_ratio(rng, 5) } else { GaussianRational::zero() };
        let beta = random_ratio(rng, 8);
        let gamma = if rng.gen_bool(0.3) { random_ratio(rng, 3) } else { GaussianRational::zero() };
        let num = Poly::new(vec![alpha, beta, gamma]);
        let Ok(c) = RatFunc::new(num, Poly::z()) else { continue };
        let bound = 2 * rng.gen_range(1..=max_bound / 2);
        if let Ok(family) = build_family(&c, bound) {
            let phi = intertwiner(&family).unwrap();
            return (c, family, phi);
        }
    }
}

fn random_point_for(rng: &mut ChaCha8Rng, family: &FamilyModule, phi: &Intertwiner) -> (RationalPoint, bool) {
    let range = RationalInterval::new(pt(-2, 1), pt(2, 1)).unwrap();
    let special = distinguished_points(family, phi, &range).unwrap().points;
    if !special.is_empty() && rng.gen_bool(0.5) {
        (special[rng.gen_range(0..special.len())].clone(), true)
    } else {
        let x = random_rational(rng, (-2, 1), (2, 1), 60);
        let is_special = special.contains(&x);
        (x, is_special)
    }
}

fn weights(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).step_by(2).collect()
}

fn odd_square(m: i64) -> i64 {
    (2 * m + 1) * (2 * m + 1)
}

fn definite_levels(a: &JantzenAnalysis) -> Vec<i64> {
    a.verdicts().iter().filter(|(_, v)| v.is_definite()).map(|(&n, _)| n).collect()
}

fn criterion_1() -> Check {
    let mut check = Check::default();
    let start = Instant::now();
    let c = contraction_casimir();
    let (family, phi) = setup(&c, 40);
    let range = RationalInterval::new(pt(-6, 5), pt(1, 1)).unwrap();
    let found = distinguished_points(&family, &phi, &range).unwrap().points;

    let expected: Vec<RationalPoint> = (0..=9).rev().map(|m| pt(-1, odd_square(m))).collect::<BTreeSet<_>>().into_iter().collect();
    check.ensure(found == expected, || {
        let extra: Vec<String> = found.iter().filter(|x| !expected.contains(x)).map(|x| x.to_string()).collect();
        let missing: Vec<String> = expected.iter().filter(|x| !found.contains(x)).map(|x| x.to_string()).collect();
        format!("distinguished points differ from -1/(2m+1)^2, m = 0..9: extra {extra:?}, missing {missing:?}")
    });

    for m in 0..=9 {
        let x = pt(-1, odd_square(m));
        let a = analyze_at(&family, &phi, &x).unwrap();
        let level0 = a.layers().get(&0).cloned().unwrap_or_default();
        check.ensure(level0 == weights(-2 * m, 2 * m), || format!("m = {m}: level 0 is {level0:?}"));
        check.ensure(definite_levels(&a) == vec![0], || format!("m = {m}: definite levels {:?}", definite_levels(&a)));
        check.ensure(a.verdict(1) == Some(Verdict::Indefinite), || format!("m = {m}: level 1 verdict {:?}", a.verdict(1)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut positives: Vec<RationalPoint> = (0..10).map(|_| random_rational(&mut rng, (0, 1), (1, 1), 97)).collect();
    positives.push(pt(0, 1));
    let all = weights(-40, 40);
    for x in &positives {
        let a = analyze_at(&family, &phi, x).unwrap();
        check.ensure(a.is_trivial() && a.layers()[&0] == all, || format!("x = {x}: layers {:?}", a.layers().keys().collect::<Vec<_>>()));
        check.ensure(a.verdict(0) == Some(Verdict::PositiveDefinite), || format!("x = {x}: verdict {:?}", a.verdict(0)));
    }

    // Below -1/1521 every window weight up to 40 sees a sign change; closer to 0
    // the window is too small to show one.
    let mut negatives = Vec::new();
    while negatives.len() < 50 {
        let x = random_rational(&mut rng, (-6, 5), (-1, 1521), 2000);
        if !found.contains(&x) && x != pt(-1, 1521) {
            negatives.push(x);
        }
    }
    for x in &negatives {
        let a = analyze_at(&family, &phi, x).unwrap();
        check.ensure(definite_levels(&a).is_empty(), || format!("x = {x}: definite levels {:?}", definite_levels(&a)));
    }
    check.timed(start, Duration::from_secs(10));
    check
}

fn criterion_2() -> Check {
    let mut check = Check::default();
    let start = Instant::now();
    let (family, phi) = setup(&contraction_casimir(), 40);
    let a = analyze_at(&family, &phi, &pt(-1, 9)).unwrap();
    for k in weights(-40, 40) {
        let want = i64::from(k.abs() > 2);
        check.ensure(a.orders().get(&k) == Some(&want), || format!("k = {k}: order {:?}, want {want}", a.orders().get(&k)));
        check.ensure(a.raw_order(k) == Some(want), || format!("k = {k}: raw order {:?}", a.raw_order(k)));
    }
    check.timed(start, Duration::from_secs(1));
    check
}

fn criterion_3() -> Check {
    let mut check = Check::default();
    let (_, phi) = setup(&contraction_casimir(), 40);
    let quarter = GaussianRational::from_ratio(1, 4);
    let mut product = RatFunc::one();
    for k in (2..=40).step_by(2) {
        let i = k / 2 - 1;
        let factor = Poly::from_integers(&[1, (2 * i + 1) * (2 * i + 1)]).scale(&quarter);
        product = &product * &RatFunc::from_poly(factor);
        check.ensure(phi.phi(k) == Some(&product), || format!("k = {k}: phi = {:?}", phi.phi(k).map(|p| p.to_string())));
    }
    check
}

fn criterion_4() -> Check {
    let mut check = Check::default();
    let start = Instant::now();
    let (family, phi) = setup(&discrete_casimir(), 40);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut samples: Vec<RationalPoint> = (0..29).map(|_| random_rational(&mut rng, (-2, 1), (0, 1), 97)).collect();
    samples.push(pt(0, 1));
    for x in &samples {
        let a = analyze_at(&family, &phi, x).unwrap();
        check.ensure(definite_levels(&a).is_empty(), || format!("x = {x}: definite levels {:?}", definite_levels(&a)));
    }

    for m in 0..=4 {
        let x = pt(1, odd_square(m));
        let a = analyze_at(&family, &phi, &x).unwrap();
        let level1 = a.layers().get(&1).cloned().unwrap_or_default();
        let want: Vec<i64> = weights(-40, 40).into_iter().filter(|k| k.abs() > 2 * m).collect();
        check.ensure(level1 == want, || format!("m = {m}: level 1 is {level1:?}"));
        check.ensure(a.verdict(1).is_some_and(Verdict::is_definite), || format!("m = {m}: level 1 verdict {:?}", a.verdict(1)));
        let level0_definite = a.verdict(0).is_some_and(Verdict::is_definite);
        check.ensure(level0_definite == (m == 0), || format!("m = {m}: level 0 verdict {:?}", a.verdict(0)));
    }

    for _ in 0..10 {
        let x = random_rational(&mut rng, (1, 1), (5, 1), 97);
        let a = analyze_at(&family, &phi, &x).unwrap();
        check.ensure(a.is_trivial() && a.verdict(0).is_some_and(Verdict::is_definite), || format!("x = {x}: {:?}", a.verdicts()));
    }
    check.timed(start, Duration::from_secs(10));
    check
}

fn criterion_5() -> Check {
    let mut check = Check::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    // σ is an involutive ring morphism
    for case in 0..CASES {
        let a = random_ratfunc(&mut rng, false);
        let b = random_ratfunc(&mut rng, false);
        check.ensure(a.sigma().sigma() == a, || format!("sigma involution, case {case}: {a}"));
        check.ensure((&a + &b).sigma() == &a.sigma() + &b.sigma(), || format!("sigma additive, case {case}"));
        check.ensure((&a * &b).sigma() == &a.sigma() * &b.sigma(), || format!("sigma multiplicative, case {case}"));
        check.ensure(RatFunc::one().sigma() == RatFunc::one(), || "sigma(1) != 1".into());
    }

    // ord_x is additive and counts powers of (z - x)
    for case in 0..CASES {
        let x = random_rational(&mut rng, (-3, 1), (3, 1), 12);
        let e = rng.gen_range(-2i32..=2);
        let linear = RatFunc::from_poly(Poly::linear_root(x.value()));
        let a = &linear.pow(e) * &random_ratfunc(&mut rng, false);
        let b = random_ratfunc(&mut rng, false);
        let sum = match (a.ord_at(&x), b.ord_at(&x)) {
            (Order::Finite(p), Order::Finite(q)) => Order::Finite(p + q),
            _ => Order::Infinite,
        };
        check.ensure((&a * &b).ord_at(&x) == sum, || format!("ord additivity, case {case}: a = {a}, b = {b}, x = {x}"));
        check.ensure(linear.pow(e).ord_at(&x) == Order::Finite(i64::from(e)), || format!("ord of (z-x)^{e}"));
    }

    // family relations, Casimir scalar, recurrences, invariance
    for case in 0..CASES {
        let (c, family, phi) = random_family(&mut rng, 12);
        let report = family.verify_relations();
        check.ensure(report.passed(), || format!("relations, case {case}, c = {c}: {:?}", report.first_failure()));
        check.ensure(family.casimir_scalar().as_ref() == Ok(&c), || format!("Casimir scalar, case {case}, c = {c}"));
        let rec = phi.recurrence_failures(&family);
        check.ensure(rec.is_empty(), || format!("recurrences, case {case}, c = {c}: weights {rec:?}"));
        let inv = invariance_failures(&family, &phi);
        check.ensure(inv.is_empty(), || format!("invariance, case {case}, c = {c}: {} failures", inv.len()));
    }

    // exhaustiveness, partition and generic triviality
    let wide = RationalInterval::new(pt(-2, 1), pt(2, 1)).unwrap();
    for case in 0..CASES {
        let (c, family, phi) = random_family(&mut rng, 12);
        let (x, _) = random_point_for(&mut rng, &family, &phi);
        let a = analyze_at(&family, &phi, &x).unwrap();
        let mut seen: Vec<i64> = a.layers().values().flatten().copied().collect();
        seen.sort_unstable();
        let window: Vec<i64> = family.window().weights().collect();
        check.ensure(seen == window, || format!("partition, case {case}, c = {c}, x = {x}"));
        check.ensure(a.levels().next() == Some(0), || format!("min level, case {case}"));
        check.ensure(a.filtration_space(a.max_level() + 1).is_empty(), || format!("exhaustive, case {case}"));
        check.ensure(a.filtration_space(0) == window, || format!("level 0 span, case {case}"));
        let special = distinguished_points(&family, &phi, &wide).unwrap().points;
        check.ensure(special.contains(&x) || a.is_trivial(), || format!("generic triviality, case {case}, c = {c}, x = {x}"));
        if c.is_sigma_fixed() {
            check.ensure(a.form_values().values().all(GaussianRational::is_real), || format!("form reality, case {case}"));
        }
    }

    // scalar robustness
    for case in 0..CASES {
        let (_, family, phi) = random_family(&mut rng, 12);
        let (x, _) = random_point_for(&mut rng, &family, &phi);
        let r = loop {
            let r = random_ratfunc(&mut rng, true);
            if r.ord_at(&x) == Order::Finite(0) {
                break r;
            }
        };
        let rx = r.eval(&x).unwrap();
        let base = analyze_at(&family, &phi, &x).unwrap();
        let scaled = analyze_at(&family, &phi.scaled(&r).unwrap(), &x).unwrap();
        check.ensure(scaled.layers() == base.layers(), || format!("scalar layers, case {case}"));
        let values_ok = base.form_values().iter().all(|(k, v)| scaled.form_values()[k] == v * &rx);
        check.ensure(values_ok, || format!("scalar values, case {case}, r = {r}"));
        for (n, v) in base.verdicts() {
            let w = scaled.verdicts()[n];
            let want = match (rx.real_sign(), v) {
                (Some(-1), Verdict::PositiveDefinite) => Verdict::NegativeDefinite,
                (Some(-1), Verdict::NegativeDefinite) => Verdict::PositiveDefinite,
                _ => *v,
            };
            check.ensure(w == want, || format!("scalar verdict, case {case}, level {n}: {v} -> {w}"));
        }
    }

    // coordinate robustness
    for case in 0..CASES {
        let (_, family, phi) = random_family(&mut rng, 12);
        let (x, _) = random_point_for(&mut rng, &family, &phi);
        let s = BigRational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=9).into());
        let base = analyze_at(&family, &phi, &x).unwrap();
        let moved = analyze_with_coordinate(&family, &phi, &x, &s).unwrap();
        check.ensure(moved.layers() == base.layers() && moved.verdicts() == base.verdicts(), || {
            format!("coordinate verdicts, case {case}, s = {s}")
        });
        let values_ok = base.form_values().iter().all(|(&k, v)| {
            let n = base.raw_order(k).unwrap() as i32;
            moved.form_values()[&k] == v * &GaussianRational::real(s.pow(-n))
        });
        check.ensure(values_ok, || format!("coordinate values, case {case}, s = {s}"));
    }
    check
}

fn criterion_6() -> Check {
    let mut check = Check::default();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut special_hits = 0;
    for case in 0..100 {
        let (c, family, phi) = random_family(&mut rng, 12);
        let (x, special) = random_point_for(&mut rng, &family, &phi);
        special_hits += usize::from(special);
        let direct = analyze_at(&family, &phi, &x).unwrap();
        let oracle = filtration_oracle(&family, &phi, &x);
        check.ensure(oracle.as_ref() == Ok(&direct), || format!("case {case}: c = {c}, x = {x}, oracle {oracle:?}"));
    }
    check.ensure(special_hits >= 25, || format!("only {special_hits} distinguished points sampled"));
    check.timed(start, Duration::from_secs(30));
    check
}

fn marker_set(svg: &str) -> BTreeSet<(RationalPoint, i64)> {
    fn attr<'a>(line: &'a str, name: &str) -> Option<&'a str> {
        let start = line.find(&format!("{name}=\""))? + name.len() + 2;
        let len = line[start..].find('"')?;
        Some(&line[start..start + len])
    }
    svg.lines()
        .filter(|l| l.trim_start().starts_with("<circle") && l.contains("class=\"unitary"))
        .map(|l| (attr(l, "data-x").unwrap().parse().unwrap(), attr(l, "data-k").unwrap().parse().unwrap()))
        .collect()
}

fn criterion_7() -> Check {
    let mut check = Check::default();
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("contraction");
    let status = Command::new(env!("CARGO_BIN_EXE_jantzen"))
        .args(["sweep", "--casimir", "-(1+z)/z", "--range", "-1.2", "1", "--grid", "49", "--window", "40"])
        .args(["--format", "json", "--format", "svg", "--out"])
        .arg(&stem)
        .status()
        .unwrap();
    check.ensure(status.success(), || format!("sweep exited with {status}"));
    if !status.success() {
        return check;
    }
    let json = std::fs::read_to_string(stem.with_extension("json")).unwrap();
    let svg = std::fs::read_to_string(stem.with_extension("svg")).unwrap();
    let report = SpectrumReport::from_json(&json).unwrap();
    check.ensure(report.to_json() == json, || "JSON does not round-trip byte-identically".into());

    let library = jantzen_core::sweep(&SweepConfig::new("-(1+z)/z")).unwrap();
    check.ensure(library == report, || "CLI report differs from the library sweep".into());

    let markers = marker_set(&svg);
    check.ensure(markers == report.unitary_markers(), || {
        format!("{} SVG markers vs {} definite-layer weights", markers.len(), report.unitary_markers().len())
    });
    for m in 0..=9 {
        let x = pt(-1, odd_square(m));
        let at_x: Vec<i64> = markers.iter().filter(|(mx, _)| *mx == x).map(|(_, k)| *k).collect();
        check.ensure(at_x == weights(-2 * m, 2 * m), || format!("markers at x = {x}: {at_x:?}"));
    }
    let all = weights(-40, 40);
    for p in report.points.iter().filter(|p| p.x.signum() >= 0) {
        let at_x: Vec<i64> = markers.iter().filter(|(mx, _)| *mx == p.x).map(|(_, k)| *k).collect();
        check.ensure(at_x == all, || format!("markers at x = {}: {} weights", p.x, at_x.len()));
    }
    check
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("1 contraction-family spectrum", criterion_1),
        ("2 order table at x = -1/9", criterion_2),
        ("3 intertwiner closed form", criterion_3),
        ("4 discrete-series family spectrum", criterion_4),
        ("5 property suites", criterion_5),
        ("6 oracle equivalence", criterion_6),
        ("7 CLI contract", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let check = run();
        let took = start.elapsed();
        if check.failures.is_empty() {
            println!("PASS criterion {name} ({took:.2?})");
        } else {
            failed += 1;
            println!("FAIL criterion {name} ({took:.2?})");
            for f in &check.failures {
                println!("    {f}");
            }
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
