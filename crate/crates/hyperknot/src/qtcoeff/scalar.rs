use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use super::{fmt_exp, scale, unscale, Rat, TriPoly, Q, DEN};
use crate::{Error, Result};

/// Laurent polynomial in `q^{1/DEN}` and `t^{1/DEN}` with rational
/// coefficients. Exponents are stored scaled by [`DEN`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QTScalar {
    terms: Vec<((i64, i64), Q)>,
}

impl QTScalar {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::mono_scaled(c, 0, 0)
    }

    /// `c q^{eq} t^{et}` with exponents given as scaled integers.
    pub fn mono_scaled(c: Q, eq: i64, et: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: vec![((eq, et), c)] }
    }

    /// `c q^{eq} t^{et}` with rational exponents.
    pub fn mono(c: i128, eq: Rat, et: Rat) -> Self {
        Self::mono_scaled(Q::from_integer(c), scale(eq), scale(et))
    }

    pub fn q_pow(e: Rat) -> Self {
        Self::mono(1, e, Rat::zero())
    }

    pub fn t_pow(e: Rat) -> Self {
        Self::mono(1, Rat::zero(), e)
    }

    /// Build from arbitrary (possibly repeated) scaled terms.
    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Q)>>(it: I) -> Self {
        let mut map: FxHashMap<(i64, i64), Q> = FxHashMap::default();
        for (k, c) in it {
            *map.entry(k).or_insert_with(Q::zero) += c;
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(k, _)| *k);
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Scaled exponent pairs and coefficients in ascending `(e_q, e_t)` order.
    pub fn terms(&self) -> &[((i64, i64), Q)] {
        &self.terms
    }

    /// `self += c * q^{dq} t^{dt} * other`, by a linear merge.
    pub fn add_scaled_shifted(&mut self, other: &QTScalar, c: &Q, dq: i64, dt: i64) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|((eq, et), v)| ((eq + dq, et + dt), v * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        out.push(a.next().unwrap().clone());
                    } else if y.0 < x.0 {
                        out.push(b.next().unwrap());
                    } else {
                        let (k, v) = a.next().unwrap();
                        let (_, w) = b.next().unwrap();
                        let s = v + w;
                        if !s.is_zero() {
                            out.push((*k, s));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    /// Multiply by `c q^{dq} t^{dt}` with scaled exponents.
    pub fn shifted(&self, c: &Q, dq: i64, dt: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|((eq, et), v)| ((eq + dq, et + dt), v * c)).collect(),
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        self.shifted(c, 0, 0)
    }

    /// Lowest exponent of `q` and `t` separately, scaled.
    pub fn min_exps(&self) -> Option<(i64, i64)> {
        let mq = self.terms.iter().map(|t| t.0 .0).min()?;
        let mt = self.terms.iter().map(|t| t.0 .1).min()?;
        Some((mq, mt))
    }

    pub fn max_exps(&self) -> Option<(i64, i64)> {
        let mq = self.terms.iter().map(|t| t.0 .0).max()?;
        let mt = self.terms.iter().map(|t| t.0 .1).max()?;
        Some((mq, mt))
    }

    /// Coefficient of the scaled monomial `(eq, et)`.
    pub fn coeff(&self, eq: i64, et: i64) -> Q {
        match self.terms.binary_search_by_key(&(eq, et), |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => Q::zero(),
        }
    }

    /// Substitute `q -> q^{-1}`, `t -> t^{-1}`.
    pub fn invert_variables(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((eq, et), c)| ((-eq, -et), *c)))
    }

    /// Substitute `q -> 1`.
    pub fn at_q_one(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((_, et), c)| ((0, *et), *c)))
    }

    /// Substitute `t -> q`.
    pub fn t_to_q(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((eq, et), c)| ((eq + et, 0), *c)))
    }

    /// Exact division in the Laurent ring; fails when a remainder survives.
    pub fn exact_div(&self, y: &QTScalar) -> Result<QTScalar> {
        if y.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if y.terms.len() == 1 {
            let ((dq, dt), c) = &y.terms[0];
            return Ok(self.shifted(&c.recip(), -dq, -dt));
        }
        let (xlo, xhi) = (self.min_exps().unwrap(), self.max_exps().unwrap());
        let (ylo, yhi) = (y.min_exps().unwrap(), y.max_exps().unwrap());
        let qlo = (xlo.0 - ylo.0, xlo.1 - ylo.1);
        let qhi = (xhi.0 - yhi.0, xhi.1 - yhi.1);
        let (ylead_k, ylead_c) = y.terms.last().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        let budget = 4 * (self.terms.len() + 16) * (y.terms.len() + 16) + 1_000_000;
        for _ in 0..budget {
            let Some((rk, rc)) = rem.terms.last().cloned() else {
                return Ok(Self::from_terms(quot));
            };
            let k = (rk.0 - ylead_k.0, rk.1 - ylead_k.1);
            if k.0 < qlo.0 || k.0 > qhi.0 || k.1 < qlo.1 || k.1 > qhi.1 {
                return Err(Error::InexactDivision(format!("{self} / {y}")));
            }
            let c = rc / ylead_c;
            rem.add_scaled_shifted(y, &-c, k.0, k.1);
            quot.push((k, c));
        }
        Err(Error::InexactDivision(format!("step budget exhausted: {self} / {y}")))
    }

    /// Lowest monomial: minimal `e_t`, then minimal `e_q`.
    pub fn lowest_monomial(&self) -> Option<(i64, i64)> {
        self.terms.iter().map(|((eq, et), _)| (*et, *eq)).min().map(|(et, eq)| (eq, et))
    }

    /// Convert to an integer polynomial in `q,t` (a-degree 0).
    pub fn to_tripoly(&self) -> Result<TriPoly> {
        let mut out = TriPoly::zero();
        for ((eq, et), c) in &self.terms {
            if eq % DEN != 0 || et % DEN != 0 {
                return Err(Error::NonIntegral(format!("fractional exponent in {self}")));
            }
            if !c.is_integer() {
                return Err(Error::NonIntegral(format!("coefficient {c} in {self}")));
            }
            let v = i64::try_from(*c.numer()).map_err(|_| Error::NonIntegral("overflow".into()))?;
            out.add_term(eq / DEN, et / DEN, 0, v);
        }
        Ok(out)
    }

    pub fn from_tripoly(p: &TriPoly) -> Self {
        Self::from_terms(
            p.iter().map(|(q, t, _, c)| ((q * DEN, t * DEN), Q::from_integer(c as i128))),
        )
    }

    pub fn to_json(&self) -> Value {
        let mut dq = 1i64;
        let mut dt = 1i64;
        for ((eq, et), _) in &self.terms {
            dq = num_integer::lcm(dq, *unscale(*eq).denom());
            dt = num_integer::lcm(dt, *unscale(*et).denom());
        }
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((eq, et), c)| {
                json!({"e": [eq * dq / DEN, et * dt / DEN], "c": c.to_string()})
            })
            .collect();
        json!({"vars": ["q", "t"], "denoms": [dq, dt], "terms": terms})
    }
}

impl fmt::Display for QTScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((eq, et), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            if !a.is_one() {
                parts.push(if a.is_integer() { a.to_string() } else { format!("({a})") });
            }
            for (v, e) in [("q", *eq), ("t", *et)] {
                let r = unscale(e);
                if r.is_one() {
                    parts.push(v.to_string());
                } else if !r.is_zero() {
                    parts.push(format!("{v}^{}", fmt_exp(r)));
                }
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &QTScalar {
    type Output = QTScalar;
    fn add(self, o: &QTScalar) -> QTScalar {
        let mut r = self.clone();
        r.add_scaled_shifted(o, &Q::one(), 0, 0);
        r
    }
}

impl Sub for &QTScalar {
    type Output = QTScalar;
    fn sub(self, o: &QTScalar) -> QTScalar {
        let mut r = self.clone();
        r.add_scaled_shifted(o, &-Q::one(), 0, 0);
        r
    }
}

impl Neg for &QTScalar {
    type Output = QTScalar;
    fn neg(self) -> QTScalar {
        self.scaled(&-Q::one())
    }
}

impl Mul for &QTScalar {
    type Output = QTScalar;
    fn mul(self, o: &QTScalar) -> QTScalar {
        if self.terms.len() < o.terms.len() {
            return o * self;
        }
        if o.terms.len() <= 2 {
            let mut r = QTScalar::zero();
            for ((dq, dt), c) in &o.terms {
                r.add_scaled_shifted(self, c, *dq, *dt);
            }
            return r;
        }
        let mut map: FxHashMap<(i64, i64), Q> = FxHashMap::default();
        for ((aq, at), ac) in &self.terms {
            for ((bq, bt), bc) in &o.terms {
                *map.entry((aq + bq, at + bt)).or_insert_with(Q::zero) += ac * bc;
            }
        }
        QTScalar::from_terms(map)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QTScalar {
            type Output = QTScalar;
            fn $m(self, o: QTScalar) -> QTScalar {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
