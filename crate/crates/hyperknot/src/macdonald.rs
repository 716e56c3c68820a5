//! Symmetric Macdonald polynomials: orbit sums for minuscule weights, a
//! triangular eigen-solve for general dominant weights, the evaluation
//! product formula and the duality identity.

use crate::polyrep::PolyRep;
use crate::qtcoeff::{scale, QTScalar, RatFunc, Weight, XPoly, Q, DEN};
use crate::rootsys::RootSystem;
use crate::{Error, Result};

/// `P_b = poly / den`.
#[derive(Clone, Debug)]
pub struct MacdonaldPoly {
    pub weight: Weight,
    pub poly: XPoly,
    pub den: QTScalar,
    /// `P_b(q^{-ρ_k})`.
    pub eval_value: RatFunc,
}

/// Orbit sum `m_b = Σ_{μ ∈ Wb} X_μ`.
pub fn orbit_sum(rs: &RootSystem, b: &Weight) -> XPoly {
    let mut p = XPoly::zero();
    for mu in rs.weyl_orbit(b) {
        p.add_term(mu, &QTScalar::one());
    }
    p
}

/// Fast path for a minuscule fundamental weight.
pub fn macdonald_minuscule(rs: &RootSystem, b: &Weight) -> Result<MacdonaldPoly> {
    minuscule_index(rs, b).ok_or_else(|| {
        Error::Precondition(format!("weight {b} is not minuscule; use macdonald_general"))
    })?;
    let poly = orbit_sum(rs, b);
    let pr = PolyRep::new(rs);
    let eval_value = RatFunc::from_scalar(pr.evaluate_at_rho(&poly));
    Ok(MacdonaldPoly { weight: b.clone(), poly, den: QTScalar::one(), eval_value })
}

/// Index `r` with `b = ω_r` minuscule, or `Some(0)` for the zero weight.
pub fn minuscule_index(rs: &RootSystem, b: &Weight) -> Option<usize> {
    if b.is_zero() {
        return Some(0);
    }
    let nz: Vec<usize> = (0..b.rank()).filter(|&i| b.0[i] != 0).collect();
    if nz.len() == 1 && b.0[nz[0]] == 1 && rs.is_minuscule(nz[0] + 1) {
        Some(nz[0] + 1)
    } else {
        None
    }
}

/// Apply `L_f` with `f = Σ_{μ ∈ Wω} Y_μ`.
pub fn apply_lf(pr: &PolyRep, omega: &Weight, g: &XPoly) -> XPoly {
    let mut out = XPoly::zero();
    for mu in pr.rs.weyl_orbit(omega) {
        out.add_assign(&pr.apply_y(&mu, g));
    }
    out
}

/// Eigenvalue of `L_f` on `P_c`: `Σ_{μ ∈ Wω} q^{(μ,c^*)} t^{(μ,ρ)}` with `c^* = -w_0 c`.
pub fn lf_eigenvalue(rs: &RootSystem, omega: &Weight, c: &Weight) -> QTScalar {
    let mut s = QTScalar::zero();
    let one = Q::from_integer(1);
    let cs = rs.dominant(&c.neg());
    for mu in rs.weyl_orbit(omega) {
        s.add_scaled_shifted(&QTScalar::one(), &one, scale(rs.pair(&mu, &cs)), scale(rs.rho_pairing(&mu)));
    }
    s
}

/// General dominant weight via the triangular eigenvector equation for `L_f`.
pub fn macdonald_general(rs: &RootSystem, b: &Weight) -> Result<MacdonaldPoly> {
    if !b.is_dominant() {
        return Err(Error::Precondition(format!("weight {b} is not dominant")));
    }
    if minuscule_index(rs, b).is_some() {
        return macdonald_minuscule(rs, b);
    }
    let pr = PolyRep::new(rs);
    let omega = Weight::fundamental(rs.rank, rs.minuscule_indices()[0]);
    let basis = rs.dominant_weights_below(b);
    let images: Vec<XPoly> = basis.iter().map(|c| apply_lf(&pr, &omega, &orbit_sum(rs, c))).collect();
    let diag: Vec<QTScalar> = basis.iter().zip(&images).map(|(c, im)| im.coeff(c)).collect();
    let lb = diag[0].clone();
    let mut coeffs: Vec<RatFunc> = vec![RatFunc::one()];
    for (k, c) in basis.iter().enumerate().skip(1) {
        let mut acc = RatFunc::zero();
        for (j, p) in coeffs.iter().enumerate() {
            let mcj = images[j].coeff(c);
            if !mcj.is_zero() {
                acc = acc.add(&p.mul(&RatFunc::from_scalar(mcj)));
            }
        }
        let gap = &lb - &diag[k];
        if gap.is_zero() {
            return Err(Error::Degenerate(format!("eigenvalue collision at {c}")));
        }
        coeffs.push(acc.div(&RatFunc::from_scalar(gap)));
    }
    let mut den = QTScalar::one();
    for c in &coeffs {
        if !c.den.is_one() && den.exact_div(&c.den).is_err() {
            den = &den * &c.den;
        }
    }
    let mut poly = XPoly::zero();
    for (c, p) in basis.iter().zip(&coeffs) {
        let num = RatFunc::from_scalar(den.clone()).mul(p).to_scalar()?;
        poly.add_assign(&orbit_sum(rs, c).scale(&num));
    }
    let eval_value = RatFunc::new(pr.evaluate_at_rho(&poly), den.clone());
    Ok(MacdonaldPoly { weight: b.clone(), poly, den, eval_value })
}

/// `P_b` by the fast path when possible.
pub fn macdonald(rs: &RootSystem, b: &Weight) -> Result<MacdonaldPoly> {
    if minuscule_index(rs, b).is_some() {
        macdonald_minuscule(rs, b)
    } else {
        macdonald_general(rs, b)
    }
}

/// Product formula for `P_b(q^{-ρ_k})`.
pub fn evaluation_value(rs: &RootSystem, b: &Weight) -> RatFunc {
    let mut num = QTScalar::t_pow(-rs.rho_pairing(b));
    let mut den = QTScalar::one();
    let one = Q::from_integer(1);
    for c in &rs.positive_roots {
        let h: i64 = c.iter().sum();
        let k = rs.pair_root(b, c);
        for j in 0..k {
            let mut f = QTScalar::one();
            f.add_scaled_shifted(&QTScalar::one(), &-one, j * DEN, (h + 1) * DEN);
            num = &num * &f;
            let mut g = QTScalar::one();
            g.add_scaled_shifted(&QTScalar::one(), &-one, j * DEN, h * DEN);
            den = &den * &g;
        }
    }
    RatFunc::new(num, den)
}

/// `P_b(q^{c - ρ_k})`.
pub fn evaluate_at_shift(rs: &RootSystem, p: &MacdonaldPoly, c: &Weight) -> RatFunc {
    let pr = PolyRep::new(rs);
    RatFunc::new(pr.evaluate_at(&p.poly, c), p.den.clone())
}

/// Antidominant representative `w_0 c` of the orbit of `c`.
pub fn antidominant(rs: &RootSystem, c: &Weight) -> Weight {
    rs.dominant(&c.neg()).neg()
}

/// `P_b(q^{c-ρ}) P_c(q^{-ρ}) = P_c(q^{b-ρ}) P_b(q^{-ρ})` with `b, c` read as the
/// antidominant representatives of the orbits of the given dominant weights.
pub fn check_duality(rs: &RootSystem, b: &Weight, c: &Weight) -> Result<bool> {
    duality_with(rs, b, c, true)
}

/// The same identity with the dominant weights substituted literally.
pub fn check_duality_dominant_shift(rs: &RootSystem, b: &Weight, c: &Weight) -> Result<bool> {
    duality_with(rs, b, c, false)
}

fn duality_with(rs: &RootSystem, b: &Weight, c: &Weight, anti: bool) -> Result<bool> {
    let pb = macdonald(rs, b)?;
    let pc = macdonald(rs, c)?;
    let (sb, sc) = if anti { (antidominant(rs, b), antidominant(rs, c)) } else { (b.clone(), c.clone()) };
    let lhs = evaluate_at_shift(rs, &pb, &sc).mul(&pc.eval_value);
    let rhs = evaluate_at_shift(rs, &pc, &sb).mul(&pb.eval_value);
    Ok(lhs.equals(&rhs))
}

/// `s_i(P) = P` for every simple reflection.
pub fn is_w_invariant(rs: &RootSystem, p: &XPoly) -> bool {
    let pr = PolyRep::new(rs);
    (1..=rs.rank).all(|i| pr.apply_s(i, p) == *p)
}
