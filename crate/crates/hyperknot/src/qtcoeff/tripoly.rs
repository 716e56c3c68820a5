use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::{Error, Result};

/// Integer Laurent polynomial in `q`, `t`, `a`. Terms are kept in the
/// canonical order `(e_a, e_q, e_t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct TriPoly {
    terms: BTreeMap<(i64, i64, i64), i64>,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0, 0)
    }

    pub fn monomial(c: i64, q: i64, t: i64, a: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(q, t, a, c);
        p
    }

    pub fn add_term(&mut self, q: i64, t: i64, a: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((a, q, t)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(a, q, t));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(e_q, e_t, e_a, coefficient)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, i64, i64)> + '_ {
        self.terms.iter().map(|(&(a, q, t), &c)| (q, t, a, c))
    }

    pub fn coeff(&self, q: i64, t: i64, a: i64) -> i64 {
        self.terms.get(&(a, q, t)).copied().unwrap_or(0)
    }

    pub fn a_degree(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn min_a_degree(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn all_positive(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Sum of coefficients, i.e. the value at `q = t = a = 1`.
    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn abs_sum(&self) -> i64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Apply an affine-free linear map to exponent vectors `(q,t,a)`.
    pub fn map_exponents<F: Fn(i64, i64, i64) -> (i64, i64, i64)>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (q, t, a, c) in self.iter() {
            let (q2, t2, a2) = f(q, t, a);
            out.add_term(q2, t2, a2, c);
        }
        out
    }

    /// Multiply by the monomial `q^dq t^dt a^da`.
    pub fn shift(&self, dq: i64, dt: i64, da: i64) -> Self {
        self.map_exponents(|q, t, a| (q + dq, t + dt, a + da))
    }

    /// Substitute `a = sign * q^{al/ga} t^{be/ga}`; the exponents of every
    /// term must stay integral.
    pub fn substitute_a(&self, sign: i64, al: i64, be: i64, ga: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (q, t, a, c) in self.iter() {
            let (nq, nt) = (a * al, a * be);
            if nq % ga != 0 || nt % ga != 0 {
                return Err(Error::NonIntegral(format!(
                    "fractional exponent substituting a into term with a^{a}"
                )));
            }
            let s = if a.rem_euclid(2) == 1 && sign < 0 { -1 } else { 1 };
            out.add_term(q + nq / ga, t + nt / ga, 0, c * s);
        }
        Ok(out)
    }

    /// Substitute `a = -q^{-al/ga} t^{-be/ga}` for the differential degree `(al,be,ga)`.
    pub fn specialize(&self, al: i64, be: i64, ga: i64) -> Result<Self> {
        self.substitute_a(-1, -al, -be, ga)
    }

    /// Full numeric evaluation; negative exponents require unit values.
    pub fn eval(&self, q: i64, t: i64, a: i64) -> Result<i64> {
        let pw = |x: i64, e: i64| -> Result<i64> {
            if e >= 0 {
                Ok(x.pow(e as u32))
            } else if x == 1 || x == -1 {
                Ok(x.pow((-e) as u32))
            } else {
                Err(Error::NonIntegral(format!("{x}^{e}")))
            }
        };
        let mut s = 0;
        for (eq, et, ea, c) in self.iter() {
            s += c * pw(q, eq)? * pw(t, et)? * pw(a, ea)?;
        }
        Ok(s)
    }

    /// Substitute numeric values for `t` only.
    pub fn at_t(&self, tv: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (q, t, a, c) in self.iter() {
            let f = if t >= 0 {
                tv.pow(t as u32)
            } else if tv.abs() == 1 {
                tv.pow((-t) as u32)
            } else {
                return Err(Error::NonIntegral(format!("{tv}^{t}")));
            };
            out.add_term(q, 0, a, c * f);
        }
        Ok(out)
    }

    /// Substitute `t -> q` (a-degree kept).
    pub fn t_to_q(&self) -> Self {
        self.map_exponents(|q, t, a| (q + t, 0, a))
    }

    /// Substitute `q -> q^{-1}, t -> t^{-1}`.
    pub fn invert_qt(&self) -> Self {
        self.map_exponents(|q, t, a| (-q, -t, a))
    }

    /// Lowest monomial in the `(e_t, e_q)` lexicographic order (a-degree 0 inputs).
    pub fn lowest_qt(&self) -> Option<(i64, i64)> {
        self.iter().map(|(q, t, _, _)| (t, q)).min().map(|(t, q)| (q, t))
    }

    /// Divide by the lowest monomial so the constant term is present.
    pub fn tilde_normalize(&self) -> Result<Self> {
        let Some((lq, lt)) = self.lowest_qt() else {
            return Ok(Self::zero());
        };
        let minq = self.iter().map(|x| x.0).min().unwrap();
        if minq != lq {
            return Err(Error::AmbiguousNormalization(format!(
                "lowest t-monomial q^{lq}t^{lt} is not q-minimal in {self}"
            )));
        }
        Ok(self.shift(-lq, -lt, 0))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.iter().map(|(q, t, a, c)| json!({"e": [q, t, a], "c": c.to_string()})).collect();
        json!({"vars": ["q", "t", "a"], "denoms": [1, 1, 1], "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Data("malformed polynomial JSON".into());
        let mut out = Self::zero();
        for term in v.get("terms").and_then(Value::as_array).ok_or_else(bad)? {
            let e = term.get("e").and_then(Value::as_array).ok_or_else(bad)?;
            let e: Vec<i64> = e.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<Result<_>>()?;
            let c = match term.get("c").ok_or_else(bad)? {
                Value::String(s) => s.parse::<i64>().map_err(|_| bad())?,
                Value::Number(n) => n.as_i64().ok_or_else(bad)?,
                _ => return Err(bad()),
            };
            if e.len() != 3 {
                return Err(bad());
            }
            out.add_term(e[0], e[1], e[2], c);
        }
        Ok(out)
    }
}

fn push_var(parts: &mut Vec<String>, v: &str, e: i64) {
    match e {
        0 => {}
        1 => parts.push(v.to_string()),
        _ => parts.push(format!("{v}^{e}")),
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (q, t, a, c)) in self.iter().enumerate() {
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            if c.abs() != 1 {
                parts.push(c.abs().to_string());
            }
            push_var(&mut parts, "q", q);
            push_var(&mut parts, "t", t);
            push_var(&mut parts, "a", a);
            if parts.is_empty() {
                parts.push("1".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, o: &TriPoly) -> TriPoly {
        let mut r = self.clone();
        for (q, t, a, c) in o.iter() {
            r.add_term(q, t, a, c);
        }
        r
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, o: &TriPoly) -> TriPoly {
        let mut r = self.clone();
        for (q, t, a, c) in o.iter() {
            r.add_term(q, t, a, -c);
        }
        r
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        self.map_coeffs(|c| -c)
    }
}

impl TriPoly {
    fn map_coeffs<F: Fn(i64) -> i64>(&self, f: F) -> Self {
        let mut r = Self::zero();
        for (q, t, a, c) in self.iter() {
            r.add_term(q, t, a, f(c));
        }
        r
    }

    pub fn scale(&self, k: i64) -> Self {
        self.map_coeffs(|c| c * k)
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, o: &TriPoly) -> TriPoly {
        let mut r = TriPoly::zero();
        for (q1, t1, a1, c1) in self.iter() {
            for (q2, t2, a2, c2) in o.iter() {
                r.add_term(q1 + q2, t1 + t2, a1 + a2, c1 * c2);
            }
        }
        r
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TriPoly {
            type Output = TriPoly;
            fn $m(self, o: TriPoly) -> TriPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Parse a polynomial expression in `q`, `t`, `a` (and `u`, read as `a`).
/// Accepts `+ - * ^`, parentheses, integer exponents (possibly negative,
/// optionally braced) and juxtaposition as multiplication.
pub fn parse_tri(s: &str) -> Result<TriPoly> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<TriPoly> {
        let mut acc = TriPoly::zero();
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = &acc + &t.scale(sign);
            match self.peek() {
                Some(b'+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TriPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(c) if c == b'(' || c.is_ascii_digit() || b"qtau".contains(&c) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer overflow"))
    }

    fn exponent(&mut self) -> Result<i64> {
        let close = match self.peek() {
            Some(b'(') => Some(b')'),
            Some(b'{') => Some(b'}'),
            _ => None,
        };
        if close.is_some() {
            self.pos += 1;
        }
        let mut sign = 1;
        if self.peek() == Some(b'-') {
            sign = -1;
            self.pos += 1;
        }
        let v = sign * self.int()?;
        if let Some(c) = close {
            if self.peek() != Some(c) {
                return Err(self.err("unclosed exponent"));
            }
            self.pos += 1;
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<TriPoly> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => TriPoly::monomial(self.int()?, 0, 0, 0),
            Some(c) if b"qtau".contains(&c) => {
                self.pos += 1;
                match c {
                    b'q' => TriPoly::monomial(1, 1, 0, 0),
                    b't' => TriPoly::monomial(1, 0, 1, 0),
                    _ => TriPoly::monomial(1, 0, 0, 1),
                }
            }
            _ => return Err(self.err("expected factor")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            if e >= 0 {
                return Ok(base.pow(e as u32));
            }
            if base.len() != 1 {
                return Err(self.err("negative power of a non-monomial"));
            }
            let (q, t, a, c) = base.iter().next().unwrap();
            if c.abs() != 1 {
                return Err(self.err("negative power of a non-unit"));
            }
            let n = -e;
            return Ok(TriPoly::monomial(c.pow(n as u32), -q * n, -t * n, -a * n));
        }
        Ok(base)
    }
}
