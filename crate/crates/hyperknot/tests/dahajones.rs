use hyperknot::dahajones::*;
use hyperknot::qtcoeff::{parse_tri, TriPoly, Weight};
use hyperknot::rootsys::{CartanType, RootSystem};
use hyperknot::Error;

fn rs(t: CartanType, n: usize) -> RootSystem {
    RootSystem::new(t, n).unwrap()
}

fn mat(letters: &[(Tau, i64)]) -> [[i64; 2]; 2] {
    let mut m = [[1i64, 0], [0, 1]];
    for &(l, e) in letters {
        let x = match l {
            Tau::Plus => [[1, e], [0, 1]],
            Tau::Minus => [[1, 0], [e, 1]],
        };
        m = [
            [m[0][0] * x[0][0] + m[0][1] * x[1][0], m[0][0] * x[0][1] + m[0][1] * x[1][1]],
            [m[1][0] * x[0][0] + m[1][1] * x[1][0], m[1][0] * x[0][1] + m[1][1] * x[1][1]],
        ];
    }
    m
}

#[test]
fn gamma_words() {
    let w = gamma_word(3, 2).unwrap();
    assert_eq!(w.letters, vec![(Tau::Plus, 1), (Tau::Minus, 2)]);
    assert_eq!(w.matrix, [[3, 1], [2, 1]]);
    let w = gamma_word(2, 3).unwrap();
    assert_eq!(w.letters, vec![(Tau::Minus, 1), (Tau::Plus, 1), (Tau::Minus, 1)]);
    assert_eq!(w.matrix, [[2, 1], [3, 2]]);
    assert_eq!(gamma_word(2, 1).unwrap().matrix, [[2, 1], [1, 1]]);
    assert_eq!(gamma_word(4, 6), Err(Error::TorusLink(4, 6)));
    assert!(matches!(gamma_word(0, 1), Err(Error::Degenerate(_))));
    for r in -9i64..=9 {
        for s in -9i64..=9 {
            if r == 0 || s == 0 || num_gcd(r, s) != 1 {
                continue;
            }
            for w in [gamma_word(r, s).unwrap(), gamma_word_alt(r, s).unwrap()] {
                let m = mat(&w.letters);
                assert_eq!(m, w.matrix);
                assert_eq!((m[0][0], m[1][0]), (r, s));
                assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
            }
            assert_ne!(gamma_word(r, s).unwrap().letters, gamma_word_alt(r, s).unwrap().letters);
        }
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { num_gcd(b, a % b) }
}

#[test]
fn trefoils() {
    let cases = [
        (CartanType::A, 1, "1 + q*t - q*t^2"),
        (CartanType::A, 2, "1 + q*t - q*t^3"),
        (CartanType::D, 5, "1 + qt + qt^4 - qt^5 - qt^8 + q^2t^8 - q^2t^9 - q^2t^12 + q^2t^13"),
        (CartanType::E6, 6, "1 + qt + qt^4 - qt^9 - qt^12 + q^2t^8 - q^2t^13 - q^2t^16 + q^2t^21"),
    ];
    for (t, n, want) in cases {
        let r = rs(t, n);
        let got = compute_jd(&r, &Weight::fundamental(n, 1), 3, 2).unwrap();
        assert_eq!(got, parse_tri(want).unwrap(), "{}", r.name());
    }
}

#[test]
fn unknot_and_identity() {
    for (t, n) in [(CartanType::A, 1), (CartanType::A, 3), (CartanType::D, 4), (CartanType::D, 5), (CartanType::E6, 6)] {
        let r = rs(t, n);
        for k in 1..=6 {
            assert_eq!(compute_jd(&r, &Weight::fundamental(n, 1), k, 1).unwrap(), TriPoly::one(), "{} ({k},1)", r.name());
        }
    }
    let a1 = rs(CartanType::A, 1);
    let p = hyperknot::macdonald::macdonald(&a1, &Weight(vec![1])).unwrap();
    let id = TauWord::from_letters(vec![]);
    assert!(apply_gamma(&a1, &id, &p).unwrap().is_one());
}

// Two-strand torus knots in A_n for ω1:
// Σ_{i=0}^{k} q^i t^i - Σ_{i=1}^{k} q^i t^{i+n}.
#[test]
fn two_strand_family() {
    for n in 1..=3usize {
        let r = rs(CartanType::A, n);
        for k in 1..=4i64 {
            let mut want = TriPoly::zero();
            for i in 0..=k {
                want.add_term(i, i, 0, 1);
            }
            for i in 1..=k {
                want.add_term(i, i + n as i64, 0, -1);
            }
            assert_eq!(compute_jd(&r, &Weight::fundamental(n, 1), 2 * k + 1, 2).unwrap(), want, "A{n} k={k}");
        }
    }
}

#[test]
fn diagram_symmetries() {
    let e6 = rs(CartanType::E6, 6);
    for (r, s) in [(3, 2), (5, 2)] {
        assert_eq!(
            compute_jd(&e6, &Weight::fundamental(6, 1), r, s).unwrap(),
            compute_jd(&e6, &Weight::fundamental(6, 6), r, s).unwrap()
        );
    }
    let d4 = rs(CartanType::D, 4);
    let j1 = compute_jd(&d4, &Weight::fundamental(4, 1), 3, 2).unwrap();
    for i in [3, 4] {
        assert_eq!(compute_jd(&d4, &Weight::fundamental(4, i), 3, 2).unwrap(), j1);
    }
    assert_eq!(compute_jd(&d4, &Weight::fundamental(4, 1), 2, 3).unwrap(), j1);
}

#[test]
fn property_suite_small() {
    let a1 = rs(CartanType::A, 1);
    let rep = jd_property_suite(&a1, &Weight(vec![1]), 6);
    assert!(rep.passed(), "{:?}", rep.failures());
    let a2 = rs(CartanType::A, 2);
    let rep = jd_property_suite(&a2, &Weight(vec![1, 0]), 5);
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn evaluation_at_q_one() {
    let a2 = rs(CartanType::A, 2);
    assert_eq!(evaluation_factorization(&a2, &Weight(vec![1, 1]), 3, 2).unwrap().0, true);
    let a1 = rs(CartanType::A, 1);
    assert_eq!(evaluation_factorization(&a1, &Weight(vec![2]), 3, 2).unwrap().0, true);
    let d4 = rs(CartanType::D, 4);
    assert_eq!(evaluation_factorization(&d4, &Weight(vec![2, 0, 0, 0]), 3, 2).unwrap().0, true);
}

#[test]
fn superpolynomials() {
    let hd = parse_tri("1 + a q + q t").unwrap();
    assert!(superpoly_check(SuperFamily::A(1), (3, 2), &hd, &[1, 2, 3]).passed());
    let hd2 = parse_tri("1+a^2 q^2 t^-1+q t+q t^2+q^2 t^4+a (q+q t^-1+q^2 t+q^2 t^2)").unwrap();
    assert!(superpoly_check(SuperFamily::A(2), (3, 2), &hd2, &[2, 3, 4]).passed());
}

#[test]
fn jones_specialization() {
    let j = parse_tri("1 + q*t - q*t^2").unwrap();
    assert_eq!(jones_specialize(&j), parse_tri("1 + q^2 - q^3").unwrap());
    assert_eq!(jones_specialize(&TriPoly::one()), TriPoly::one());
    let e6 = rs(CartanType::E6, 6);
    let u = jones_specialize(&compute_jd(&e6, &Weight::fundamental(6, 1), 3, 2).unwrap());
    assert_eq!(u.coeff(0, 0, 0), 1);
    assert!(u.iter().all(|(_, t, a, _)| t == 0 && a == 0));
}

#[test]
fn mirror_raw() {
    let d4 = rs(CartanType::D, 4);
    let b = Weight::fundamental(4, 1);
    let a = compute_jd_raw(&d4, &b, 3, 2).unwrap();
    let m = compute_jd_raw(&d4, &b, 3, -2).unwrap();
    assert_eq!(m, a.invert_variables());
}
