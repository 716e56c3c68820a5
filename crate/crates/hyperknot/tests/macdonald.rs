use hyperknot::macdonald::*;
use hyperknot::polyrep::PolyRep;
use hyperknot::qtcoeff::{QTScalar, Rat, RatFunc, Weight, XPoly};
use hyperknot::rootsys::{CartanType, RootSystem};

fn rs(t: CartanType, n: usize) -> RootSystem {
    RootSystem::new(t, n).unwrap()
}

#[test]
fn minuscule_orbit_sums() {
    let a1 = rs(CartanType::A, 1);
    let p = macdonald_minuscule(&a1, &Weight(vec![1])).unwrap();
    assert_eq!(p.poly, XPoly::x(Weight(vec![1])).add(&XPoly::x(Weight(vec![-1]))));
    assert_eq!(macdonald_minuscule(&rs(CartanType::E6, 6), &Weight::fundamental(6, 1)).unwrap().poly.len(), 27);
    assert_eq!(macdonald_minuscule(&rs(CartanType::D, 5), &Weight::fundamental(5, 1)).unwrap().poly.len(), 10);
    assert!(macdonald_minuscule(&rs(CartanType::D, 5), &Weight::fundamental(5, 2)).is_err());
}

#[test]
fn evaluation_formula_matches_substitution() {
    let a1 = rs(CartanType::A, 1);
    let v = evaluation_value(&a1, &Weight(vec![1])).to_scalar().unwrap();
    let expect = &QTScalar::t_pow(Rat::new(-1, 2)) + &QTScalar::t_pow(Rat::new(1, 2));
    assert_eq!(v, expect);
    assert!(evaluation_value(&a1, &Weight(vec![0])).to_scalar().unwrap().is_one());
    for (t, n) in [(CartanType::A, 3), (CartanType::D, 4), (CartanType::D, 5), (CartanType::E6, 6)] {
        let r = rs(t, n);
        for &k in r.minuscule_indices() {
            let b = Weight::fundamental(n, k);
            let p = macdonald(&r, &b).unwrap();
            assert!(evaluation_value(&r, &b).equals(&p.eval_value), "{}", r.name());
        }
    }
}

#[test]
fn general_solve_rank_one_and_two() {
    let a1 = rs(CartanType::A, 1);
    let b = Weight(vec![2]);
    let p = macdonald_general(&a1, &b).unwrap();
    assert_eq!(p.poly.len(), 3);
    assert!(is_w_invariant(&a1, &p.poly));
    let pr = PolyRep::new(&a1);
    let om = Weight(vec![1]);
    let lhs = apply_lf(&pr, &om, &p.poly);
    assert_eq!(lhs, p.poly.scale(&lf_eigenvalue(&a1, &om, &b)));
    assert!(evaluation_value(&a1, &b).equals(&p.eval_value));

    let a2 = rs(CartanType::A, 2);
    for b in [Weight(vec![2, 0]), Weight(vec![1, 1]), Weight(vec![2, 1])] {
        let p = macdonald_general(&a2, &b).unwrap();
        assert!(is_w_invariant(&a2, &p.poly));
        let pr = PolyRep::new(&a2);
        let om = Weight(vec![1, 0]);
        assert_eq!(apply_lf(&pr, &om, &p.poly), p.poly.scale(&lf_eigenvalue(&a2, &om, &b)));
        assert!(evaluation_value(&a2, &b).equals(&p.eval_value), "{b}");
    }
    let p = macdonald_general(&a2, &Weight(vec![2, 0])).unwrap();
    let support: Vec<Weight> = p.poly.sorted_terms().into_iter().map(|(w, _)| w.clone()).filter(|w| w.is_dominant()).collect();
    assert_eq!(support, vec![Weight(vec![0, 1]), Weight(vec![2, 0])]);
}

#[test]
fn q_one_factorization() {
    let a2 = rs(CartanType::A, 2);
    let p11 = macdonald_general(&a2, &Weight(vec![1, 1])).unwrap();
    let at1 = |p: &MacdonaldPoly| -> XPoly {
        p.poly.map_scalars(|s| RatFunc::new(s.clone(), p.den.clone()).at_q_one().to_scalar().unwrap())
    };
    let p1 = macdonald(&a2, &Weight(vec![1, 0])).unwrap();
    let p2 = macdonald(&a2, &Weight(vec![0, 1])).unwrap();
    assert_eq!(at1(&p11), p1.poly.mul(&p2.poly));
}

#[test]
fn duality() {
    let a1 = rs(CartanType::A, 1);
    let a2 = rs(CartanType::A, 2);
    let d4 = rs(CartanType::D, 4);
    assert!(check_duality(&a1, &Weight(vec![1]), &Weight(vec![1])).unwrap());
    assert!(check_duality(&a2, &Weight(vec![1, 0]), &Weight(vec![0, 1])).unwrap());
    assert!(check_duality(&d4, &Weight::fundamental(4, 1), &Weight::fundamental(4, 1)).unwrap());
    assert!(check_duality(&d4, &Weight::fundamental(4, 1), &Weight::fundamental(4, 3)).unwrap());
    assert!(check_duality(&a1, &Weight(vec![1]), &Weight(vec![2])).unwrap());
    assert!(check_duality(&a2, &Weight(vec![1, 0]), &Weight(vec![1, 1])).unwrap());
    assert!(check_duality(&a2, &Weight(vec![2, 0]), &Weight(vec![0, 1])).unwrap());
}

#[test]
fn dominant_shift_reading_fails_off_the_diagonal() {
    let a1 = rs(CartanType::A, 1);
    assert!(check_duality_dominant_shift(&a1, &Weight(vec![1]), &Weight(vec![1])).unwrap());
    assert!(!check_duality_dominant_shift(&a1, &Weight(vec![1]), &Weight(vec![2])).unwrap());
}

#[test]
fn diagonal_matches_eigenvalue_formula() {
    let a2 = rs(CartanType::A, 2);
    let pr = PolyRep::new(&a2);
    let om = Weight(vec![1, 0]);
    for c in [Weight(vec![2, 0]), Weight(vec![0, 1]), Weight(vec![1, 1])] {
        let im = apply_lf(&pr, &om, &orbit_sum(&a2, &c));
        assert_eq!(im.coeff(&c), lf_eigenvalue(&a2, &om, &c));
    }
}
