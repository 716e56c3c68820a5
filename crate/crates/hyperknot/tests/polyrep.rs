use hyperknot::polyrep::PolyRep;
use hyperknot::qtcoeff::{QTScalar, Rat, Weight, XPoly};
use hyperknot::rootsys::{CartanType, RootSystem};

fn basis(n: usize, d: i32) -> Vec<Weight> {
    let mut out = vec![Weight::zero(n)];
    for _ in 0..d {
        let mut next = out.clone();
        for w in &out {
            for i in 0..n {
                for s in [-1, 1] {
                    let mut v = w.clone();
                    v.0[i] += s;
                    next.push(v);
                }
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

fn th() -> QTScalar {
    QTScalar::t_pow(Rat::new(1, 2))
}

fn systems() -> Vec<RootSystem> {
    vec![
        RootSystem::new(CartanType::A, 1).unwrap(),
        RootSystem::new(CartanType::A, 2).unwrap(),
        RootSystem::new(CartanType::D, 4).unwrap(),
    ]
}

#[test]
fn a1_examples() {
    let rs = RootSystem::new(CartanType::A, 1).unwrap();
    let pr = PolyRep::new(&rs);
    let x = XPoly::x(Weight(vec![1]));
    let expect = XPoly::monomial(Weight(vec![-1]), QTScalar::t_pow(Rat::new(-1, 2)));
    assert_eq!(pr.apply_t(1, &x), expect);
    let one = XPoly::one(1);
    assert_eq!(pr.apply_t(1, &one), XPoly::constant(1, th()));
    assert_eq!(pr.apply_y(&Weight(vec![1]), &one), XPoly::constant(1, th()));
    let sym = XPoly::x(Weight(vec![1])).add(&XPoly::x(Weight(vec![-1])));
    let ev = pr.evaluate_at_rho(&sym);
    assert_eq!(ev, &QTScalar::t_pow(Rat::new(-1, 2)) + &th());
    assert_eq!(pr.apply_t(1, &sym), sym.scale(&th()));
}

#[test]
fn y_on_constants_is_rho_eigenvalue() {
    for rs in systems() {
        let pr = PolyRep::new(&rs);
        for b in basis(rs.rank, 1) {
            let v = pr.apply_y(&b, &XPoly::one(rs.rank));
            assert_eq!(v, XPoly::constant(rs.rank, QTScalar::t_pow(rs.rho_pairing(&b))), "{b}");
        }
    }
}

#[test]
fn quadratic_relation_and_closed_form() {
    for rs in systems() {
        let pr = PolyRep::new(&rs);
        let d = if rs.rank <= 2 { 3 } else { 2 };
        for b in basis(rs.rank, d) {
            let f = XPoly::x(b.clone());
            for i in 0..=rs.rank {
                let tf = pr.apply_t(i, &f);
                let a = pr.apply_t(i, &tf).sub(&tf.scale(&th()));
                let lhs = a.add(&pr.apply_t(i, &f).scale(&QTScalar::t_pow(Rat::new(-1, 2))));
                let rhs = f.scale(&QTScalar::one());
                assert_eq!(lhs, rhs, "quadratic relation i={i} b={b}");
                assert_eq!(pr.apply_t_by_division(i, &f).unwrap(), tf, "closed form i={i} b={b}");
                assert_eq!(pr.apply_t_inv(i, &tf), f);
            }
        }
    }
}

fn affine_m(rs: &RootSystem, i: usize, j: usize) -> Option<usize> {
    let th = rs.theta_weight();
    let a = |k: usize| -> i64 { if k == 0 { 0 } else { 1 } };
    let _ = a;
    let p = match (i, j) {
        (0, 0) => 2,
        (0, k) | (k, 0) => -i64::from(th.0[k - 1]),
        (x, y) => rs.cartan[x - 1][y - 1],
    };
    match p {
        0 => Some(2),
        -1 => Some(3),
        _ => None,
    }
}

#[test]
fn braid_relations() {
    for rs in systems() {
        let pr = PolyRep::new(&rs);
        for b in basis(rs.rank, 2) {
            let f = XPoly::x(b);
            for i in 0..=rs.rank {
                for j in (i + 1)..=rs.rank {
                    let Some(m) = affine_m(&rs, i, j) else { continue };
                    let (mut l, mut r) = (f.clone(), f.clone());
                    for k in 0..m {
                        l = pr.apply_t(if k % 2 == 0 { i } else { j }, &l);
                        r = pr.apply_t(if k % 2 == 0 { j } else { i }, &r);
                    }
                    assert_eq!(l, r, "braid {i},{j}");
                }
            }
        }
    }
}

#[test]
fn y_operators_commute() {
    for rs in systems() {
        let pr = PolyRep::new(&rs);
        let n = rs.rank;
        for b in basis(n, 1) {
            let f = XPoly::x(b);
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let yi = Weight::fundamental(n, i);
                    let yj = Weight::fundamental(n, j);
                    let l = pr.apply_y(&yi, &pr.apply_y(&yj, &f));
                    let r = pr.apply_y(&yj, &pr.apply_y(&yi, &f));
                    assert_eq!(l, r);
                }
                let yi = Weight::fundamental(n, i);
                assert_eq!(pr.apply_y(&yi.neg(), &pr.apply_y(&yi, &f)), f);
            }
        }
    }
}

#[test]
fn pi_conjugates_t() {
    for rs in systems() {
        let pr = PolyRep::new(&rs);
        for &r in rs.minuscule_indices() {
            let perm = rs.pi_permutation(r).unwrap();
            for b in basis(rs.rank, 2) {
                let f = XPoly::x(b);
                for i in 0..=rs.rank {
                    let l = pr.apply_pi(r, &pr.apply_t(i, &pr.apply_pi_inv(r, &f).unwrap())).unwrap();
                    assert_eq!(l, pr.apply_t(perm[i], &f), "r={r} i={i}");
                }
            }
        }
    }
}

#[test]
fn pi_has_finite_order_on_x() {
    let rs = RootSystem::new(CartanType::E6, 6).unwrap();
    let pr = PolyRep::new(&rs);
    let x = XPoly::x(Weight::fundamental(6, 1));
    let mut g = x.clone();
    for _ in 0..3 {
        g = pr.apply_pi(1, &g).unwrap();
    }
    assert_eq!(g.len(), 1);
    assert!(g.coeff(&Weight::fundamental(6, 1)).len() == 1);
}

#[test]
fn t_x_relation() {
    for rs in systems() {
        let pr = PolyRep::new(&rs);
        let n = rs.rank;
        for b in basis(n, 1) {
            for i in 1..=n {
                if b.0[i - 1] != 1 {
                    continue;
                }
                let f = XPoly::x(Weight::fundamental(n, 1)).add(&XPoly::one(n));
                let l = pr.apply_t(i, &pr.apply_x(&b, &pr.apply_t(i, &f)));
                let r = pr.apply_x(&rs.reflect(&b, i), &f);
                assert_eq!(l, r);
            }
        }
    }
}
