use std::fmt;

use num_traits::Zero;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use super::{QTScalar, Q};

/// Element of the weight lattice in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ω_i` (1-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Finite sum of `X_b` monomials with [`QTScalar`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XPoly {
    terms: FxHashMap<Weight, QTScalar>,
}

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(rank: usize, c: QTScalar) -> Self {
        Self::monomial(Weight::zero(rank), c)
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, QTScalar::one())
    }

    pub fn monomial(b: Weight, c: QTScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(b, &c);
        p
    }

    pub fn x(b: Weight) -> Self {
        Self::monomial(b, QTScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &QTScalar)> {
        self.terms.iter()
    }

    /// Terms sorted by weight, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&Weight, &QTScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coeff(&self, b: &Weight) -> QTScalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, b: Weight, c: &QTScalar) {
        self.add_term_scaled(b, c, &Q::from_integer(1), 0, 0);
    }

    /// Add `k q^{dq} t^{dt} c X_b` (scaled exponents).
    pub fn add_term_scaled(&mut self, b: Weight, c: &QTScalar, k: &Q, dq: i64, dt: i64) {
        if c.is_zero() || k.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(e) => {
                e.add_scaled_shifted(c, k, dq, dt);
                if e.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.shifted(k, dq, dt));
            }
        }
    }

    pub fn add_assign(&mut self, o: &XPoly) {
        for (b, c) in o.iter() {
            self.add_term(b.clone(), c);
        }
    }

    pub fn add(&self, o: &XPoly) -> XPoly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &XPoly) -> XPoly {
        let mut r = self.clone();
        for (b, c) in o.iter() {
            r.add_term_scaled(b.clone(), c, &Q::from_integer(-1), 0, 0);
        }
        r
    }

    pub fn scale(&self, s: &QTScalar) -> XPoly {
        let mut r = XPoly::zero();
        for (b, c) in self.iter() {
            let v = c * s;
            if !v.is_zero() {
                r.terms.insert(b.clone(), v);
            }
        }
        r
    }

    /// Multiply by `X_b`.
    pub fn shift(&self, b: &Weight) -> XPoly {
        XPoly { terms: self.terms.iter().map(|(w, c)| (w.add(b), c.clone())).collect() }
    }

    pub fn mul(&self, o: &XPoly) -> XPoly {
        let mut r = XPoly::zero();
        for (b, c) in self.iter() {
            for (b2, c2) in o.iter() {
                r.add_term(b.add(b2), &(c * c2));
            }
        }
        r
    }

    pub fn map_scalars<F: Fn(&QTScalar) -> QTScalar>(&self, f: F) -> XPoly {
        let mut r = XPoly::zero();
        for (b, c) in self.iter() {
            r.add_term(b.clone(), &f(c));
        }
        r
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(b, c)| json!({"weight": b.0, "coeff": c.to_json()}))
            .collect();
        json!({"terms": terms})
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.sorted_terms().into_iter().map(|(b, c)| format!("({c})*X{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
