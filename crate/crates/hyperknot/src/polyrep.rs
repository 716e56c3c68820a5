//! The polynomial representation of the double affine Hecke algebra on
//! [`XPoly`]: multiplication by `X_b`, the length-zero elements `π_r`,
//! Demazure–Lusztig operators `T_i` and the commuting operators `Y_b`.

use num_traits::Zero;

use crate::qtcoeff::{scale, QTScalar, Rat, Weight, XPoly, Q, DEN};
use crate::rootsys::{AffineElem, AffineWord, RootSystem};
use crate::{Error, Result};

/// A generator of the operator algebra acting on the polynomial representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    X(Weight),
    T(usize),
    TInv(usize),
    Pi(usize),
    PiInv(usize),
    Y(Weight),
    /// Multiplication by `q^e`.
    QPow(Rat),
}

/// Product of operators; the last entry acts first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OpWord(pub Vec<Op>);

impl OpWord {
    pub fn one() -> Self {
        OpWord(Vec::new())
    }

    pub fn then(mut self, o: &OpWord) -> Self {
        self.0.extend(o.0.iter().cloned());
        self
    }
}

pub struct PolyRep<'a> {
    pub rs: &'a RootSystem,
    theta: Weight,
    fund_words: Vec<AffineWord>,
    pis: Vec<Option<(AffineElem, AffineElem)>>,
}

const HALF: i64 = DEN / 2;

impl<'a> PolyRep<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        let n = rs.rank;
        let fund_words = (0..=n).map(|r| rs.translation_word(r).expect("index in range")).collect();
        let pis = (0..=n)
            .map(|r| {
                rs.pi_element(r).ok().map(|p| {
                    let inv = rs.inverse(&p);
                    (p, inv)
                })
            })
            .collect();
        Self { rs, theta: rs.theta_weight(), fund_words, pis }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn apply_x(&self, b: &Weight, f: &XPoly) -> XPoly {
        f.shift(b)
    }

    /// Action of a length-zero element `t_μ v`: `X_b ↦ q^{-(μ, vb)} X_{vb}`.
    pub fn apply_affine_pi(&self, p: &AffineElem, f: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for (b, c) in f.iter() {
            let vb = Weight(
                p.w.iter()
                    .map(|row| row.iter().zip(&b.0).map(|(x, y)| x * i64::from(*y)).sum::<i64>() as i32)
                    .collect(),
            );
            let e = -self.rs.pair(&p.lam, &vb);
            out.add_term_scaled(vb, c, &Q::from_integer(1), scale(e), 0);
        }
        out
    }

    fn pi_pair(&self, r: usize) -> Result<&(AffineElem, AffineElem)> {
        self.pis.get(r).and_then(|p| p.as_ref()).ok_or(Error::NotMinuscule(r))
    }

    pub fn apply_pi(&self, r: usize, f: &XPoly) -> Result<XPoly> {
        Ok(self.apply_affine_pi(&self.pi_pair(r)?.0, f))
    }

    pub fn apply_pi_inv(&self, r: usize, f: &XPoly) -> Result<XPoly> {
        Ok(self.apply_affine_pi(&self.pi_pair(r)?.1, f))
    }

    /// `(b, α_i^∨)` and the weight and `q`-power of `X_{α_i}`.
    fn simple_data(&self, i: usize, b: &Weight) -> (i64, Weight, i64) {
        if i == 0 {
            let n = -self.rs.pair_root(b, self.rs.theta_coords());
            (n, self.theta.neg(), 1)
        } else {
            (i64::from(b.0[i - 1]), self.rs.alpha(i), 0)
        }
    }

    /// Weyl reflection `s_i` (including `s_0`) acting on polynomials.
    pub fn apply_s(&self, i: usize, f: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        let one = Q::from_integer(1);
        for (b, c) in f.iter() {
            let (n, z, zq) = self.simple_data(i, b);
            out.add_term_scaled(b.add(&z.scale(-n as i32)), c, &one, -n * zq * DEN, 0);
        }
        out
    }

    /// Demazure–Lusztig operator `T_i`, `0 ≤ i ≤ n`.
    pub fn apply_t(&self, i: usize, f: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        let one = Q::from_integer(1);
        let mone = Q::from_integer(-1);
        for (b, c) in f.iter() {
            let (n, z, zq) = self.simple_data(i, b);
            let zk = |k: i64| (b.add(&z.scale(k as i32)), k * zq * DEN);
            if n == 0 {
                out.add_term_scaled(b.clone(), c, &one, 0, HALF);
            } else if n > 0 {
                let (w, dq) = zk(-n);
                out.add_term_scaled(w, c, &one, dq, -HALF);
                for k in 1..n {
                    let (w, dq) = zk(-k);
                    out.add_term_scaled(w.clone(), c, &mone, dq, HALF);
                    out.add_term_scaled(w, c, &one, dq, -HALF);
                }
            } else {
                let m = -n;
                let (w, dq) = zk(m);
                out.add_term_scaled(w, c, &one, dq, HALF);
                for k in 0..m {
                    let (w, dq) = zk(k);
                    out.add_term_scaled(w.clone(), c, &one, dq, HALF);
                    out.add_term_scaled(w, c, &mone, dq, -HALF);
                }
            }
        }
        out
    }

    /// `T_i^{-1} = T_i - t^{1/2} + t^{-1/2}`.
    pub fn apply_t_inv(&self, i: usize, f: &XPoly) -> XPoly {
        let mut out = self.apply_t(i, f);
        let one = Q::from_integer(1);
        for (b, c) in f.iter() {
            out.add_term_scaled(b.clone(), c, &-one, 0, HALF);
            out.add_term_scaled(b.clone(), c, &one, 0, -HALF);
        }
        out
    }

    /// Demazure–Lusztig operator evaluated literally from its defining
    /// formula, with an exact division by `X_{α_i} - 1` along root strings.
    pub fn apply_t_by_division(&self, i: usize, f: &XPoly) -> Result<XPoly> {
        let sf = self.apply_s(i, f);
        let diff = sf.sub(f);
        let quot = self.divide_by_root_binomial(i, &diff)?;
        let th = QTScalar::t_pow(Rat::new(1, 2));
        let coef = &th - &QTScalar::t_pow(Rat::new(-1, 2));
        Ok(sf.scale(&th).add(&quot.scale(&coef)))
    }

    /// Exact quotient of `g` by `X_{α_i} - 1`.
    pub fn divide_by_root_binomial(&self, i: usize, g: &XPoly) -> Result<XPoly> {
        // Synthetic division along each α_i-string from the top:
        // h = -(g + g Z + g Z^2 + ...) truncated, checked for termination.
        let (_, z, zq) = self.simple_data(i, &Weight::zero(self.rank()));
        let mut rem = g.clone();
        let mut quot = XPoly::zero();
        let one = Q::from_integer(1);
        let key = |b: &Weight| -> Rat {
            let r = self.rs.pair(b, &z);
            r
        };
        let mut guard = 0usize;
        while !rem.is_zero() {
            guard += 1;
            if guard > 1_000_000 {
                return Err(Error::InexactDivision("root-string division did not terminate".into()));
            }
            let (b, c) = rem
                .iter()
                .max_by(|x, y| key(x.0).cmp(&key(y.0)).then(x.0.cmp(y.0)))
                .map(|(b, c)| (b.clone(), c.clone()))
                .unwrap();
            // leading term c X_b = quotient term c X_b Z^{-1} times Z.
            let w = b.sub(&z);
            let qterm = XPoly::monomial(w.clone(), c.shifted(&one, -zq * DEN, 0));
            quot.add_assign(&qterm);
            rem = rem.sub(&qterm.shift(&z).map_scalars(|s| s.shifted(&one, zq * DEN, 0)));
            rem = rem.add(&qterm);
            let lowest = g.iter().map(|(b, _)| key(b)).min().unwrap();
            if rem.iter().any(|(b, _)| key(b) < lowest - key(&z) * Rat::from_integer(2)) {
                return Err(Error::InexactDivision("nonzero remainder along root string".into()));
            }
        }
        Ok(quot)
    }

    fn fund_word(&self, r: usize) -> &AffineWord {
        &self.fund_words[r]
    }

    /// `Y_{ω_r}`.
    pub fn apply_y_fund(&self, r: usize, f: &XPoly) -> XPoly {
        let w = self.fund_word(r);
        let mut g = f.clone();
        for &i in &w.letters {
            g = self.apply_t(i, &g);
        }
        self.apply_affine_pi(&w.pi, &g)
    }

    /// `Y_{ω_r}^{-1}`.
    pub fn apply_y_fund_inv(&self, r: usize, f: &XPoly) -> XPoly {
        let w = self.fund_word(r);
        let pinv = self.rs.inverse(&w.pi);
        let mut g = self.apply_affine_pi(&pinv, f);
        for &i in w.letters.iter().rev() {
            g = self.apply_t_inv(i, &g);
        }
        g
    }

    /// `Y_b` for an arbitrary weight, `Y_b = ∏ Y_{ω_i}^{l_i}`.
    pub fn apply_y(&self, b: &Weight, f: &XPoly) -> XPoly {
        let mut g = f.clone();
        for (i, &l) in b.0.iter().enumerate() {
            for _ in 0..l.unsigned_abs() {
                g = if l > 0 { self.apply_y_fund(i + 1, &g) } else { self.apply_y_fund_inv(i + 1, &g) };
            }
        }
        g
    }

    /// Substitute `X_b ↦ t^{-(b,ρ)}` and sum.
    pub fn evaluate_at_rho(&self, f: &XPoly) -> QTScalar {
        let mut s = QTScalar::zero();
        let one = Q::from_integer(1);
        for (b, c) in f.iter() {
            s.add_scaled_shifted(c, &one, 0, -scale(self.rs.rho_pairing(b)));
        }
        s
    }

    /// Substitute `X_b ↦ q^{(b,c)} t^{-(b,ρ)}`.
    pub fn evaluate_at(&self, f: &XPoly, c: &Weight) -> QTScalar {
        let mut s = QTScalar::zero();
        let one = Q::from_integer(1);
        for (b, v) in f.iter() {
            s.add_scaled_shifted(v, &one, scale(self.rs.pair(b, c)), -scale(self.rs.rho_pairing(b)));
        }
        s
    }

    /// Apply a generator.
    pub fn apply_op(&self, op: &Op, f: &XPoly) -> Result<XPoly> {
        Ok(match op {
            Op::X(b) => self.apply_x(b, f),
            Op::T(i) => self.apply_t(*i, f),
            Op::TInv(i) => self.apply_t_inv(*i, f),
            Op::Pi(r) => self.apply_pi(*r, f)?,
            Op::PiInv(r) => self.apply_pi_inv(*r, f)?,
            Op::Y(b) => self.apply_y(b, f),
            Op::QPow(e) => {
                if e.is_zero() {
                    f.clone()
                } else {
                    f.scale(&QTScalar::q_pow(*e))
                }
            }
        })
    }

    /// Apply a word, last generator first.
    pub fn apply_word(&self, w: &OpWord, f: &XPoly) -> Result<XPoly> {
        let mut g = f.clone();
        for op in w.0.iter().rev() {
            g = self.apply_op(op, &g)?;
        }
        Ok(g)
    }
}
