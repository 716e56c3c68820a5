use hyperknot::qtcoeff::{parse_tri, QTScalar, RatFunc, TriPoly, Weight, XPoly};
use proptest::prelude::*;

fn tri() -> impl Strategy<Value = TriPoly> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3, 0i64..=2), 0..6).prop_map(|v| {
        let mut p = TriPoly::zero();
        for (c, q, t, a) in v {
            p.add_term(q, t, a, c);
        }
        p
    })
}

fn nonzero_tri() -> impl Strategy<Value = TriPoly> {
    tri().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(x in tri(), y in tri(), z in tri()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
    }

    #[test]
    fn display_parses_back(x in tri()) {
        prop_assert_eq!(parse_tri(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(TriPoly::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn specialization_is_multiplicative(x in tri(), y in tri()) {
        for (al, be, ga) in [(0, 0, 1), (0, 4, 1), (1, 9, 1), (1, 12, 1)] {
            let lhs = (&x * &y).specialize(al, be, ga).unwrap();
            let rhs = &x.specialize(al, be, ga).unwrap() * &y.specialize(al, be, ga).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluation_is_multiplicative(x in tri(), y in tri()) {
        for (q, t, a) in [(1, 1, 1), (1, -1, 1), (-1, 1, -1)] {
            prop_assert_eq!((&x * &y).eval(q, t, a).unwrap(), x.eval(q, t, a).unwrap() * y.eval(q, t, a).unwrap());
        }
    }

    #[test]
    fn exact_division_inverts_multiplication(x in tri(), y in nonzero_tri()) {
        let (x0, y0) = (x.specialize(0, 0, 1).unwrap(), y.specialize(0, 0, 1).unwrap());
        prop_assume!(!y0.is_zero());
        let (xs, ys) = (QTScalar::from_tripoly(&x0), QTScalar::from_tripoly(&y0));
        let prod = &xs * &ys;
        prop_assert_eq!(prod.exact_div(&ys).unwrap(), xs);
    }

    #[test]
    fn rational_functions_cancel(x in nonzero_tri(), y in nonzero_tri()) {
        let (x0, y0) = (x.specialize(0, 0, 1).unwrap(), y.specialize(0, 0, 1).unwrap());
        prop_assume!(!x0.is_zero() && !y0.is_zero());
        let (xs, ys) = (QTScalar::from_tripoly(&x0), QTScalar::from_tripoly(&y0));
        let f = RatFunc::new(&xs * &ys, ys.clone());
        prop_assert!(f.equals(&RatFunc::from_scalar(xs.clone())));
        prop_assert_eq!(f.reduce().to_scalar().unwrap(), xs);
    }

    #[test]
    fn x_polynomials_commute(a in -2i32..=2, b in -2i32..=2, c in -2i32..=2, d in -2i32..=2) {
        let u = XPoly::x(Weight(vec![a, b])).add(&XPoly::one(2));
        let v = XPoly::x(Weight(vec![c, d])).sub(&XPoly::x(Weight(vec![b, a])));
        prop_assert_eq!(u.mul(&v), v.mul(&u));
    }
}

#[test]
fn parses_table_syntax() {
    let p = parse_tri("1+q (t+t^4-t^9-t^{12})+q^2 (t^8-t^{13}-t^{16} +t^{21})").unwrap();
    assert_eq!(p.len(), 9);
    assert_eq!(p.coeff(2, 21, 0), 1);
    assert_eq!(parse_tri("(1+q+a q)^2").unwrap().eval(1, 1, 1).unwrap(), 9);
    assert_eq!(parse_tri("q^{-1} t^(-2)").unwrap(), TriPoly::monomial(1, -1, -2, 0));
    assert!(parse_tri("1 + x").is_err());
}

#[test]
fn tilde_normalization() {
    let p = parse_tri("q^-1 t^-2 + t^-2 - q^2").unwrap();
    assert!(p.tilde_normalize().is_ok());
    assert_eq!(TriPoly::monomial(-3, 2, 5, 0).tilde_normalize().unwrap(), TriPoly::monomial(-3, 0, 0, 0));
    assert!(parse_tri("q^2 t^-1 + q").unwrap().tilde_normalize().is_err());
}
