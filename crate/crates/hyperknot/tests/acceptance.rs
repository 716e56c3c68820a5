use hyperknot::dahajones::*;
use hyperknot::golden::{adjacency_tree, lift_inputs, load_cases, spectrum_table, GoldenCase, JdSource};
use hyperknot::hyperlift::*;
use hyperknot::qtcoeff::{TriPoly, Weight};
use hyperknot::rootsys::{CartanType, RootSystem};
use hyperknot::singularity::{
    completion_independent, milnor_number, parse_germ, spectra_adjacent, spectrum, verify_adjacency_tree,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use std::process::ExitCode;
use std::time::{Duration, Instant};

const KNOTS: [(i64, i64); 3] = [(3, 2), (5, 2), (4, 3)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { passed: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { passed: false, detail: detail.into() }
}

fn tag(k: (i64, i64)) -> String {
    format!("{}-{}", k.0, k.1)
}

fn cases() -> Vec<GoldenCase> {
    let mut v = load_cases("jd.json").unwrap();
    v.extend(load_cases("hyper.json").unwrap());
    v
}

fn expected(all: &[GoldenCase], id: &str) -> TriPoly {
    all.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("no case {id}")).expected_poly().unwrap()
}

fn system(t: CartanType, n: usize) -> RootSystem {
    RootSystem::new(t, n).unwrap()
}

fn summarize(rep: &Report, limit: usize) -> String {
    let f = rep.failures();
    let names: Vec<&str> = f.iter().take(limit).map(|c| c.name.as_str()).collect();
    format!("{}/{} checks fail: {}", f.len(), rep.checks.len(), names.join("; "))
}

fn jd_golden(all: &[GoldenCase]) -> Outcome {
    let e6 = system(CartanType::E6, 6);
    let d5 = system(CartanType::D, 5);
    let mut mismatched = vec![];
    let mut slowest = Duration::ZERO;
    for k in KNOTS {
        for (rs, w, id) in [(&e6, 1, "E6-w1"), (&e6, 6, "E6-w6"), (&d5, 1, "D5-w1")] {
            let start = Instant::now();
            let got = compute_jd(rs, &Weight::fundamental(rs.rank, w), k.0, k.1);
            let dt = start.elapsed();
            slowest = slowest.max(dt);
            let case = format!("jd/{id}/{}", tag(k));
            match got {
                Ok(p) if p == expected(all, &case) && dt <= Duration::from_secs(300) => {}
                _ => mismatched.push(case),
            }
        }
    }
    let detail = format!("{}/9 match, slowest case {:.2?}", 9 - mismatched.len(), slowest);
    if mismatched.is_empty() {
        ok(detail)
    } else {
        fail(format!("{detail}; differ: {}", mismatched.join(", ")))
    }
}

fn stabilization(all: &[GoldenCase]) -> Outcome {
    let start = Instant::now();
    let mut rep = Report::default();
    for k in KNOTS {
        rep.extend(superpoly_check(SuperFamily::A(1), k, &expected(all, &format!("super/A-w1/{}", tag(k))), &[1, 2, 3, 4]));
        rep.extend(superpoly_check(SuperFamily::DLast, k, &expected(all, &format!("super/D-wn/{}", tag(k))), &[4, 5]));
    }
    let dt = start.elapsed();
    if rep.passed() && dt <= Duration::from_secs(60) {
        ok(format!("{} checks in {dt:.2?}", rep.checks.len()))
    } else {
        fail(format!("{} in {dt:.2?}", summarize(&rep, 6)))
    }
}

fn axioms() -> Outcome {
    let mut rep = Report::default();
    let systems = [
        (system(CartanType::A, 1), Weight::fundamental(1, 1), Weight(vec![2]), &[(3, 2), (5, 2)][..]),
        (system(CartanType::A, 2), Weight::fundamental(2, 1), Weight(vec![1, 1]), &[(3, 2), (5, 2)]),
        (system(CartanType::D, 4), Weight::fundamental(4, 1), Weight(vec![1, 0, 0, 1]), &[(3, 2), (5, 2)]),
        (system(CartanType::D, 5), Weight::fundamental(5, 1), Weight(vec![1, 0, 0, 0, 1]), &[(3, 2)]),
        (system(CartanType::E6, 6), Weight::fundamental(6, 1), Weight(vec![2, 0, 0, 0, 0, 0]), &[(3, 2)]),
    ];
    for (rs, b, composite, knots) in &systems {
        rep.extend(jd_property_suite(rs, b, 8));
        for &(r, s) in *knots {
            rep.checks.push(Check::from_result(
                format!("{} {composite} ({r},{s}) q=1 factorization", rs.name()),
                evaluation_factorization(rs, composite, r, s),
            ));
        }
    }
    if rep.passed() {
        ok(format!("{} checks", rep.checks.len()))
    } else {
        fail(summarize(&rep, 6))
    }
}

fn reconstruction(all: &[GoldenCase]) -> Outcome {
    let mut notes = vec![];
    let mut good = true;
    for (k, terms) in KNOTS.into_iter().zip([Some(9), Some(23), None]) {
        let start = Instant::now();
        let [e6, d5, a6] = lift_inputs(k, JdSource::Golden).unwrap();
        let cs = e6_constraints(&e6, &d5, &a6);
        let got = lift(&e6, &cs);
        let dt = start.elapsed();
        let want = expected(all, &format!("hyper/HD/{}", tag(k)));
        let this = match &got {
            Ok(h) => {
                h.poly == want
                    && terms.is_none_or(|n| h.poly.len() == n)
                    && cs.len() == 5
                    && verify_specializations(&h.poly, &cs).passed()
                    && dt <= Duration::from_secs(120)
            }
            Err(_) => false,
        };
        good &= this;
        notes.push(format!("{:?} {} terms {dt:.2?}", k, got.map(|h| h.poly.len()).unwrap_or(0)));
    }
    Outcome { passed: good, detail: notes.join(", ") }
}

fn hyper_properties(all: &[GoldenCase]) -> Outcome {
    let mut rep = Report::default();
    for (k, dim) in KNOTS.into_iter().zip([9, 25, 121]) {
        let t = tag(k);
        let hd = HyperPoly::new(expected(all, &format!("hyper/HD/{t}")), Convention::Daha).unwrap();
        match hyper_evaluations(&hd, Some(&expected(all, &format!("super/A-w2/{t}")))) {
            Ok(ev) => {
                rep.checks.push(Check::new(format!("{t} dimension"), ev.dimension == dim, ev.dimension.to_string()));
                rep.checks.push(Check::new(
                    format!("{t} t=1 square"),
                    ev.at_t_one == expected(all, &format!("hyper/t1/{t}")),
                    ev.at_t_one.to_string(),
                ));
                rep.extend(ev.report);
            }
            Err(e) => rep.checks.push(Check::new(format!("{t} evaluations"), false, e.to_string())),
        }
        let [_, _, a6] = lift_inputs(k, JdSource::Golden).unwrap();
        match hat_specializations(&hd, &expected(all, &format!("jd/E6-w6/{t}")), &a6) {
            Ok(r) => rep.extend(r),
            Err(e) => rep.checks.push(Check::new(format!("{t} hat"), false, e.to_string())),
        }
        let qg = convention_change(&hd, Direction::DahaToQg).map(|h| h.poly);
        rep.checks.push(Check::new(
            format!("{t} QG display"),
            qg.as_ref().ok() == Some(&expected(all, &format!("hyper/QG/{t}"))),
            "",
        ));
    }
    if rep.passed() {
        ok(format!("{} checks", rep.checks.len()))
    } else {
        fail(summarize(&rep, 6))
    }
}

fn positive_poly() -> impl Strategy<Value = TriPoly> {
    prop::collection::vec((1i64..=3, 0i64..=4, 0i64..=20, 0i64..=2), 1..5).prop_map(|v| {
        let mut p = TriPoly::zero();
        for (c, q, t, a) in v {
            p.add_term(q, t, a, c);
        }
        p
    })
}

fn minimality(all: &[GoldenCase]) -> Outcome {
    let mut notes = vec![];
    let mut good = true;
    for k in KNOTS {
        let [e6, d5, a6] = lift_inputs(k, JdSource::Golden).unwrap();
        let cs = e6_constraints(&e6, &d5, &a6);
        let hd = expected(all, &format!("hyper/HD/{}", tag(k)));
        let minimal = minimality_certificate(&hd, &cs).is_minimal();
        let factor = cs.iter().fold(TriPoly::one(), |acc, c| &acc * &c.vanishing_factor());
        let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
        let padded = runner.run(&positive_poly(), |f| {
            let p = &hd + &(&f * &factor);
            prop_assert!(verify_specializations(&p, &cs).passed());
            prop_assert!(!minimality_certificate(&p, &cs).is_minimal());
            Ok(())
        });
        good &= minimal && padded.is_ok();
        notes.push(format!("{:?} minimal={minimal} padded={}", k, if padded.is_ok() { "detected" } else { "missed" }));
    }
    Outcome { passed: good, detail: notes.join(", ") }
}

fn spectra() -> Outcome {
    let start = Instant::now();
    let table = spectrum_table().unwrap();
    let tree = adjacency_tree().unwrap();
    let rep = verify_adjacency_tree(&tree, &table);
    let rows: Vec<_> = rep.checks.iter().filter(|c| !c.name.contains("->") && !c.name.starts_with("closure")).collect();
    let mut bad: Vec<String> = rows.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    for row in &table.rows {
        let indep = parse_germ(&row.normal_form).and_then(|g| completion_independent(&g, &[40, 60, 80]));
        if !matches!(indep, Ok(true)) {
            bad.push(format!("{} completion", row.name));
        }
    }
    let z = parse_germ("x^3*y + d*x^2*y^5 + a*x*y^10 + y^13").unwrap();
    let zs = spectrum(&z);
    let z_ok = milnor_number(&z).ok() == Some(27)
        && zs.as_ref().is_ok_and(|s| s.values.len() == 27 && *s == table.get("Z_{3,0}").unwrap().spectrum);
    if !z_ok {
        bad.push("Z_{3,0}".into());
    }
    let dt = start.elapsed();
    let detail = format!("{} rows, {dt:.2?}", rows.len());
    if bad.is_empty() && dt <= Duration::from_secs(30) {
        ok(detail)
    } else {
        fail(format!("{detail}; failing: {}", bad.join(", ")))
    }
}

fn adjacency() -> Outcome {
    let table = spectrum_table().unwrap();
    let tree = adjacency_tree().unwrap();
    let rep = verify_adjacency_tree(&tree, &table);
    let graph: Vec<_> = rep.checks.iter().filter(|c| c.name.contains("->") || c.name.starts_with("closure")).collect();
    let x10 = &table.get("X_{1,0}").unwrap().spectrum;
    let e8 = &table.get("E_{8}").unwrap().spectrum;
    let negative = spectra_adjacent(x10, e8);
    let good = graph.iter().all(|c| c.passed) && matches!(negative, Ok(false));
    let detail = format!("{} edge/closure checks, (X_{{1,0}}, E_8) -> {:?}", graph.len(), negative.ok());
    Outcome { passed: good, detail }
}

fn palindrome_normalized(p: &TriPoly) -> TriPoly {
    let top = p.iter().map(|(q, _, _, _)| q).max().unwrap_or(0);
    let mut out = TriPoly::zero();
    for (q, t, a, c) in p.iter() {
        out.add_term(top - q, t, a, c);
    }
    out
}

fn jones_consistency() -> Outcome {
    let mut rep = Report::default();
    let systems = [
        (system(CartanType::A, 1), 1),
        (system(CartanType::A, 2), 1),
        (system(CartanType::D, 4), 1),
        (system(CartanType::D, 5), 1),
        (system(CartanType::E6, 6), 1),
        (system(CartanType::E6, 6), 6),
    ];
    for (rs, w) in &systems {
        let b = Weight::fundamental(rs.rank, *w);
        for (r, s) in knots_up_to(8) {
            let name = format!("{} w{w} ({r},{s})", rs.name());
            let r1 = (|| -> hyperknot::Result<(bool, String)> {
                let j = jones_specialize(&compute_jd(rs, &b, r, s)?);
                let swapped = jones_specialize(&compute_jd(rs, &b, s, r)?);
                let m = compute_jd_raw(rs, &b, r, -s)?.t_to_q();
                let low = m.min_exps().map_or(0, |e| e.0);
                let mirror = m.shifted(&1.into(), -low, 0).to_tripoly()?;
                let shape = j.coeff(0, 0, 0) == 1
                    && j.iter().all(|(q, t, a, _)| q >= 0 && t == 0 && a == 0)
                    && j.eval(1, 1, 1)? == 1;
                let pal = mirror == palindrome_normalized(&j);
                Ok((shape && swapped == j && pal, j.to_string()))
            })();
            rep.checks.push(Check::from_result(name, r1));
        }
    }
    if rep.passed() {
        ok(format!("{} checks", rep.checks.len()))
    } else {
        fail(summarize(&rep, 6))
    }
}

fn main() -> ExitCode {
    let all = cases();
    let criteria: [(&str, Box<dyn Fn() -> Outcome>); 9] = [
        ("JD golden suite", Box::new(|| jd_golden(&all))),
        ("type A/D stabilization", Box::new(|| stabilization(&all))),
        ("JD axiom suite", Box::new(axioms)),
        ("hyperpolynomial reconstruction", Box::new(|| reconstruction(&all))),
        ("hyper properties", Box::new(|| hyper_properties(&all))),
        ("minimality certificates", Box::new(|| minimality(&all))),
        ("spectra suite", Box::new(spectra)),
        ("adjacency suite", Box::new(adjacency)),
        ("Jones specialization consistency", Box::new(jones_consistency)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        if !o.passed {
            failed += 1;
        }
        println!(
            "criterion {} {:<34} {}  [{:.2?}] {}",
            i + 1,
            name,
            if o.passed { "PASS" } else { "FAIL" },
            start.elapsed(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
