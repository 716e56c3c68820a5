use hyperknot::golden::*;
use std::collections::BTreeSet;

#[test]
fn suites_pass_from_bundled_data() {
    for (suite, total) in [("jd", 18), ("hyper", 18)] {
        let rep = verify_suite(suite, JdSource::Golden).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        assert_eq!(rep.outcomes.len(), total);
        assert!(rep.count(Status::Pass) >= 12);
    }
    let rep = verify_suite("spectrum", JdSource::Golden).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
    assert_eq!(rep.count(Status::Deviation), 0);
}

#[test]
fn engine_inputs_match_golden_inputs() {
    let a = verify_suite("hyper", JdSource::Golden).unwrap();
    let b = verify_suite("hyper", JdSource::Engine).unwrap();
    let st = |r: &SuiteReport| r.outcomes.iter().map(|o| (o.id.clone(), o.status)).collect::<Vec<_>>();
    assert_eq!(st(&a), st(&b));
}

#[test]
fn deviations_are_documented() {
    let cases = load_cases("jd.json").unwrap();
    let rep = verify_suite("jd", JdSource::Golden).unwrap();
    for o in rep.outcomes.iter().filter(|o| o.status == Status::Deviation) {
        let c = cases.iter().find(|c| c.id == o.id).unwrap();
        assert!(c.deviation.as_ref().is_some_and(|d| !d.reason.is_empty()), "{}", o.id);
    }
    let hyper = load_cases("hyper.json").unwrap();
    let fixed: Vec<_> = hyper.iter().filter(|c| c.deviation.as_ref().is_some_and(|d| d.corrected.is_some())).collect();
    assert_eq!(fixed.len(), 2);
}

#[test]
fn outcomes_are_sorted_and_unique() {
    for suite in SUITES {
        let rep = verify_suite(suite, JdSource::Golden).unwrap();
        let ids: Vec<&str> = rep.outcomes.iter().map(|o| o.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), ids.len());
    }
    assert!(verify_suite("nope", JdSource::Golden).is_err());
}

#[test]
fn checksums_track_file_contents() {
    let rep = verify_suite("hyper", JdSource::Golden).unwrap();
    assert_eq!(rep.checksums.len(), 3);
    for (f, sum) in &rep.checksums {
        assert_eq!(*sum, sha256_hex(&data_text(f).unwrap()));
        assert_eq!(sum.len(), 64);
    }
    assert_eq!(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    let j = rep.to_json();
    assert_eq!(j["fail"], 0);
    assert_eq!(j["cases"].as_array().unwrap().len(), rep.outcomes.len());
}

#[test]
fn every_case_cites_a_source() {
    for f in ["jd.json", "hyper.json"] {
        for c in load_cases(f).unwrap() {
            assert!(!c.source.is_empty(), "{}", c.id);
            c.expected_poly().unwrap();
        }
    }
    let table = spectrum_table().unwrap();
    assert_eq!(table.rows.len(), 82);
    assert_eq!(adjacency_tree().unwrap().root, "Z_{3,0}");
}
