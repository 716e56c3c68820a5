//! Plane-curve germs, Newton diagrams, Milnor numbers and spectra.

use crate::dahajones::{Check, Report};
use crate::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

pub type Rat = Ratio<i64>;
pub type Point = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Exact(Rat),
    Generic(String),
}

impl Coeff {
    fn mul(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a * b),
            (Coeff::Generic(a), Coeff::Exact(b)) | (Coeff::Exact(b), Coeff::Generic(a)) => {
                if b.is_one() {
                    Coeff::Generic(a.clone())
                } else {
                    Coeff::Generic(format!("{b}*{a}"))
                }
            }
            (Coeff::Generic(a), Coeff::Generic(b)) => Coeff::Generic(format!("{a}*{b}")),
        }
    }

    fn add(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a + b),
            (a, b) => Coeff::Generic(format!("{a}+{b}")),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Coeff::Exact(a) if a.is_zero())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Exact(a) => write!(f, "{a}"),
            Coeff::Generic(s) => write!(f, "{s}"),
        }
    }
}

/// Germ at the origin in two variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub vars: [String; 2],
    pub terms: BTreeMap<Point, Coeff>,
}

impl Germ {
    pub fn new(vars: [String; 2], terms: BTreeMap<Point, Coeff>) -> Result<Self> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::Degenerate("empty support".into()));
        }
        if terms.contains_key(&(0, 0)) {
            return Err(Error::Degenerate("constant term at the origin".into()));
        }
        if terms.keys().any(|&(i, j)| i < 0 || j < 0) {
            return Err(Error::Degenerate("negative exponent".into()));
        }
        Ok(Self { vars, terms })
    }

    pub fn support(&self) -> BTreeSet<Point> {
        self.terms.keys().copied().collect()
    }

    pub fn generic_tags(&self) -> usize {
        self.terms.values().filter(|c| matches!(c, Coeff::Generic(_))).count()
    }

    pub fn is_convenient(&self) -> bool {
        self.axis_power(0).is_some() && self.axis_power(1).is_some()
    }

    /// Smallest pure power on axis `k` (0 for x, 1 for y).
    pub fn axis_power(&self, k: usize) -> Option<i64> {
        self.terms
            .keys()
            .filter(|&&(i, j)| if k == 0 { j == 0 } else { i == 0 })
            .map(|&(i, j)| i + j)
            .min()
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|((i, j), _)| (std::cmp::Reverse(*i), *j));
        for (n, (&(i, j), c)) in terms.into_iter().enumerate() {
            let mut parts = vec![];
            match c {
                Coeff::Exact(r) if r.is_one() => {}
                Coeff::Exact(r) if *r == -Rat::one() => parts.push("-".to_string()),
                _ => parts.push(c.to_string()),
            }
            for (e, v) in [(i, &self.vars[0]), (j, &self.vars[1])] {
                match e {
                    0 => {}
                    1 => parts.push(v.clone()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            let mut s = parts.join("*").replace("-*", "-");
            if s.is_empty() || s == "-" {
                s.push('1');
            }
            if n > 0 {
                if let Some(rest) = s.strip_prefix('-') {
                    write!(f, " - {rest}")?;
                    continue;
                }
                write!(f, " + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

type Poly = Vec<(Point, Coeff)>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: [&'a str; 2],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip(&mut self) {
        loop {
            while self.pos < self.s.len() && matches!(self.s[self.pos], b' ' | b'\t' | b'$' | b'\n') {
                self.pos += 1;
            }
            if self.rest().starts_with(b"\\,") || self.rest().starts_with(b"\\;") {
                self.pos += 2;
            } else if self.rest().starts_with(b"\\cdot") {
                self.pos += 5;
            } else {
                break;
            }
        }
    }

    fn rest(&self) -> &'a [u8] {
        &self.s[self.pos..]
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip();
        let st = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if st == self.pos {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.s[st..self.pos]).unwrap().parse().or_else(|_| self.err("integer overflow"))
    }

    fn braced_integer(&mut self) -> Result<i64> {
        if self.peek() == Some(b'{') {
            self.pos += 1;
            let v = self.integer()?;
            if self.peek() != Some(b'}') {
                return self.err("expected '}'");
            }
            self.pos += 1;
            Ok(v)
        } else {
            self.skip();
            let st = self.pos;
            if self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
                if self.s[st] != b'0' {
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                }
                Ok(std::str::from_utf8(&self.s[st..self.pos]).unwrap().parse().unwrap())
            } else {
                self.err("expected exponent")
            }
        }
    }

    fn subscript(&mut self) -> Result<Option<i64>> {
        if self.s.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            Ok(Some(self.braced_integer()?))
        } else {
            Ok(None)
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut out: Poly = vec![];
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                None if !first => break,
                Some(b')') if !first => break,
                _ if first => 1,
                _ => return self.err("expected '+' or '-'"),
            };
            first = false;
            let t = self.term()?;
            let c = Coeff::Exact(Rat::from_integer(sign));
            out.extend(t.into_iter().map(|(p, k)| (p, c.mul(&k))));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc: Poly = vec![((0, 0), Coeff::Exact(Rat::one()))];
        let mut any = false;
        loop {
            match self.peek() {
                None | Some(b'+') | Some(b'-') | Some(b')') => break,
                Some(b'*') if any => {
                    self.pos += 1;
                    continue;
                }
                _ => {}
            }
            let f = self.factor()?;
            let f = self.power(f)?;
            acc = mul_poly(&acc, &f);
            any = true;
        }
        if !any {
            return self.err("expected term");
        }
        Ok(acc)
    }

    fn power(&mut self, f: Poly) -> Result<Poly> {
        if self.peek() != Some(b'^') {
            return Ok(f);
        }
        self.pos += 1;
        let e = self.braced_integer()?;
        let mut acc: Poly = vec![((0, 0), Coeff::Exact(Rat::one()))];
        for _ in 0..e {
            acc = mul_poly(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let c = self.peek().unwrap();
        let one = |p: Point| vec![(p, Coeff::Exact(Rat::one()))];
        if c.is_ascii_digit() {
            let n = self.integer()?;
            let mut r = Rat::from_integer(n);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let d = self.integer()?;
                if d == 0 {
                    return self.err("zero denominator");
                }
                r = Rat::new(n, d);
            }
            return Ok(vec![((0, 0), Coeff::Exact(r))]);
        }
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(b')') {
                return self.err("expected ')'");
            }
            self.pos += 1;
            return Ok(e);
        }
        if self.rest().starts_with(b"\\frac") {
            self.pos += 5;
            let part = |p: &mut Self| -> Result<i64> {
                if p.peek() != Some(b'{') {
                    return p.err("expected '{'");
                }
                p.pos += 1;
                let v = p.integer()?;
                if p.peek() != Some(b'}') {
                    return p.err("expected '}'");
                }
                p.pos += 1;
                Ok(v)
            };
            let n = part(self)?;
            let d = part(self)?;
            if d == 0 {
                return self.err("zero denominator");
            }
            return Ok(vec![((0, 0), Coeff::Exact(Rat::new(n, d)))]);
        }
        if self.rest().starts_with(b"\\mathbf{") {
            self.pos += 8;
            let st = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.s[st..self.pos]).unwrap().to_string();
            if self.peek() != Some(b'}') {
                return self.err("expected '}'");
            }
            self.pos += 1;
            return self.block(&name);
        }
        if c.is_ascii_alphabetic() {
            for (k, v) in self.vars.iter().enumerate() {
                let vb = v.as_bytes();
                if self.rest().starts_with(vb) {
                    let after = self.s.get(self.pos + vb.len()).copied();
                    let continues = vb.last().is_some_and(|b| b.is_ascii_alphabetic())
                        && after == Some(b'_');
                    if !continues && !after.is_some_and(|b| b.is_ascii_digit()) {
                        self.pos += vb.len();
                        return Ok(one(if k == 0 { (1, 0) } else { (0, 1) }));
                    }
                }
            }
            let st = self.pos;
            self.pos += 1;
            if c.is_ascii_uppercase() {
                let name = (c as char).to_ascii_lowercase().to_string();
                if self.s.get(self.pos) != Some(&b'_') {
                    self.pos = st;
                    return self.err(format!("unknown symbol '{}'", c as char));
                }
                return self.block(&name);
            }
            if (b'a'..=b'e').contains(&c) {
                let sub = self.subscript()?;
                let tag = match sub {
                    Some(k) => format!("{}{k}", c as char),
                    None => (c as char).to_string(),
                };
                return Ok(vec![((0, 0), Coeff::Generic(tag))]);
            }
            self.pos = st;
            return self.err(format!(
                "symbol '{}' is not one of the variables {}, {}; at most 2 variables are supported",
                c as char, self.vars[0], self.vars[1]
            ));
        }
        self.err(format!("unexpected character '{}'", c as char))
    }

    /// Bold block `A_k`: `a0 + a1 y + ... + a_{k-2} y^{k-2}`.
    fn block(&mut self, name: &str) -> Result<Poly> {
        let k = match self.subscript()? {
            Some(k) => k,
            None => return self.err("block needs a subscript"),
        };
        if k < 1 {
            return self.err("block subscript must be at least 1");
        }
        Ok((0..k - 1).map(|i| ((0, i), Coeff::Generic(format!("{name}{i}")))).collect())
    }
}

fn mul_poly(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![];
    for (p, c) in a {
        for (q, d) in b {
            out.push(((p.0 + q.0, p.1 + q.1), c.mul(d)));
        }
    }
    out
}

/// Parses a germ in the variables `x`, `y`.
pub fn parse_germ(text: &str) -> Result<Germ> {
    parse_germ_with(text, ["x", "y"])
}

/// Parses a germ in the given variables.
/// Letters `a`..`e` (optionally subscripted) are generic nonzero moduli;
/// `A_k` or `\mathbf{a}_k` expand to `a0 + a1 y + ... + a_{k-2} y^{k-2}` in the second variable.
pub fn parse_germ_with(text: &str, vars: [&str; 2]) -> Result<Germ> {
    for v in vars {
        if v.is_empty() || !v.as_bytes()[0].is_ascii_alphabetic() {
            return Err(Error::Parse { pos: 0, msg: format!("bad variable name '{v}'") });
        }
    }
    if vars[0] == vars[1] {
        return Err(Error::Parse { pos: 0, msg: "variables must differ".into() });
    }
    let mut p = Parser { s: text.as_bytes(), pos: 0, vars };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let mut terms: BTreeMap<Point, Coeff> = BTreeMap::new();
    for (pt, c) in poly {
        let e = terms.remove(&pt).map(|d| d.add(&c)).unwrap_or(c);
        terms.insert(pt, e);
    }
    Germ::new([vars[0].to_string(), vars[1].to_string()], terms)
}

/// Adds `x^M` and/or `y^M` where an axis lacks a pure power.
pub fn convenient_completion(g: &Germ, m: i64) -> Germ {
    let mut out = g.clone();
    if g.axis_power(0).is_none() {
        out.terms.insert((m, 0), Coeff::Exact(Rat::one()));
    }
    if g.axis_power(1).is_none() {
        out.terms.insert((0, m), Coeff::Exact(Rat::one()));
    }
    out
}

/// Isolated for generic coefficients: an axis without a pure power needs a term at distance one from it.
pub fn is_isolated(g: &Germ) -> bool {
    let near = |k: usize| g.terms.keys().any(|&(i, j)| if k == 0 { j == 1 } else { i == 1 });
    (g.axis_power(0).is_some() || near(0)) && (g.axis_power(1).is_some() || near(1))
}

/// Completion exponent `2 mu + 2`, with `mu` taken from a provisional completion.
pub fn default_completion_exponent(g: &Germ) -> Result<i64> {
    if !is_isolated(g) {
        return Err(Error::Degenerate(format!("{g} has a non-isolated critical point")));
    }
    if g.is_convenient() {
        return Ok(0);
    }
    let deg = g.terms.keys().map(|&(i, j)| i + j).max().unwrap();
    let provisional = convenient_completion(g, 2 * deg + 2);
    let mu = newton_diagram(&provisional)?.milnor_number();
    Ok(2 * mu + 2)
}

fn complete(g: &Germ) -> Result<Germ> {
    Ok(convenient_completion(g, default_completion_exponent(g)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub start: Point,
    pub end: Point,
    pub nu: (Rat, Rat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonDiagram {
    pub faces: Vec<Face>,
    pub intercepts: (i64, i64),
}

/// Compact faces of the Newton polyhedron, from the y axis to the x axis.
pub fn newton_diagram(g: &Germ) -> Result<NewtonDiagram> {
    let (Some(sx), Some(sy)) = (g.axis_power(0), g.axis_power(1)) else {
        return Err(Error::Precondition("germ is not convenient; complete it first".into()));
    };
    let pts: Vec<Point> = g.terms.keys().copied().collect();
    let mut keep: Vec<Point> = pts
        .iter()
        .copied()
        .filter(|&p| !pts.iter().any(|&q| q != p && q.0 <= p.0 && q.1 <= p.1))
        .collect();
    keep.sort();
    let mut hull: Vec<Point> = vec![];
    for p in keep {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let faces = hull
        .windows(2)
        .map(|w| {
            let ((x1, y1), (x2, y2)) = (w[0], w[1]);
            let det = x1 * y2 - x2 * y1;
            Face { start: w[0], end: w[1], nu: (Rat::new(y2 - y1, det), Rat::new(x1 - x2, det)) }
        })
        .collect();
    Ok(NewtonDiagram { faces, intercepts: (sx, sy) })
}

impl NewtonDiagram {
    /// `min_i <k, nu_i>`.
    pub fn degree(&self, k: Point) -> Rat {
        self.faces
            .iter()
            .map(|f| f.nu.0 * k.0 + f.nu.1 * k.1)
            .min()
            .unwrap_or_else(Rat::zero)
    }

    /// Twice the area under the diagram.
    fn double_area(&self) -> i64 {
        self.faces.iter().map(|f| (f.end.0 - f.start.0) * (f.start.1 + f.end.1)).sum()
    }

    /// Kouchnirenko number `2S - s_x - s_y + 1`.
    pub fn milnor_number(&self) -> i64 {
        self.double_area() - self.intercepts.0 - self.intercepts.1 + 1
    }

    /// Lattice points `p >= (1,1)` with degree at most 1, with their degrees.
    pub fn subdiagrammatic(&self) -> Vec<(Point, Rat)> {
        let (sx, sy) = self.intercepts;
        let mut out = vec![];
        for i in 1..sx {
            for j in 1..sy {
                let d = self.degree((i, j));
                if d <= Rat::one() {
                    out.push(((i, j), d));
                }
            }
        }
        out
    }
}

/// Newton degree of a monomial.
pub fn newton_degree(d: &NewtonDiagram, k: Point) -> Rat {
    d.degree(k)
}

/// Milnor number of a Newton-nondegenerate germ.
pub fn milnor_number(g: &Germ) -> Result<i64> {
    let mu = newton_diagram(&complete(g)?)?.milnor_number();
    if mu < 1 {
        return Err(Error::Degenerate(format!("non-isolated or smooth germ (mu = {mu})")));
    }
    Ok(mu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub values: Vec<Rat>,
    pub mu: usize,
}

impl Spectrum {
    pub fn new(mut values: Vec<Rat>) -> Self {
        values.sort();
        let mu = values.len();
        Self { values, mu }
    }

    pub fn is_symmetric(&self) -> bool {
        let half = Rat::new(1, 2);
        self.values.iter().zip(self.values.iter().rev()).all(|(a, b)| a + b == half + half)
    }

    pub fn to_json(&self) -> Value {
        json!({"mu": self.mu, "values": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()})
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{} (mu={})", v.join(", "), self.mu)
    }
}

/// Parses a comma separated list of rationals.
pub fn parse_spectrum(s: &str) -> Result<Spectrum> {
    let mut vals = vec![];
    for (n, part) in s.split(',').enumerate() {
        let t = part.trim();
        let r = match t.split_once('/') {
            Some((a, b)) => a.trim().parse::<i64>().ok().zip(b.trim().parse::<i64>().ok()).filter(|&(_, d)| d != 0).map(|(a, b)| Rat::new(a, b)),
            None => t.parse::<i64>().ok().map(Rat::from_integer),
        };
        match r {
            Some(r) => vals.push(r),
            None => return Err(Error::Parse { pos: n, msg: format!("bad spectral value '{t}'") }),
        }
    }
    Ok(Spectrum::new(vals))
}

/// Spectrum centered at 1/2: interior points give `deg - 1/2` and `3/2 - deg`,
/// points on the diagram give `1/2`.
pub fn spectrum(g: &Germ) -> Result<Spectrum> {
    spectrum_with(g, default_completion_exponent(g)?)
}

/// Spectrum on the completion with exponent `m`.
pub fn spectrum_with(g: &Germ, m: i64) -> Result<Spectrum> {
    if !is_isolated(g) {
        return Err(Error::Degenerate(format!("{g} has a non-isolated critical point")));
    }
    let d = newton_diagram(&convenient_completion(g, m))?;
    let mu = d.milnor_number();
    let half = Rat::new(1, 2);
    let mut vals = vec![];
    for (_, deg) in d.subdiagrammatic() {
        if deg == Rat::one() {
            vals.push(half);
        } else {
            vals.push(deg - half);
            vals.push(Rat::from_integer(3) / 2 - deg);
        }
    }
    if vals.len() as i64 != mu || mu < 1 {
        return Err(Error::Degenerate(format!("{} spectral values against mu = {mu}", vals.len())));
    }
    let s = Spectrum::new(vals);
    debug_assert!(s.is_symmetric());
    Ok(s)
}

/// Semicontinuity test: `L.values[i] <= K.values[i]` for `i < K.mu`.
pub fn spectra_adjacent(l: &Spectrum, k: &Spectrum) -> Result<bool> {
    if k.mu > l.mu {
        return Err(Error::Precondition(format!("target mu {} exceeds source mu {}", k.mu, l.mu)));
    }
    Ok(l.values.iter().zip(&k.values).all(|(a, b)| a <= b))
}

const PRIME: i64 = 2_147_483_629;

fn inv_mod(a: i64) -> i64 {
    let e = i128::from(a).extended_gcd(&i128::from(PRIME));
    e.x.rem_euclid(i128::from(PRIME)) as i64
}

fn to_mod(r: &Rat) -> i64 {
    let n = r.numer().rem_euclid(PRIME);
    let d = r.denom().rem_euclid(PRIME);
    ((n as i128 * inv_mod(d) as i128) % PRIME as i128) as i64
}

/// Deterministic values for generic moduli, distinct small primes from 3 on.
fn generic_values(g: &Germ) -> HashMap<String, i64> {
    let tags: BTreeSet<&String> = g
        .terms
        .values()
        .filter_map(|c| match c {
            Coeff::Generic(s) => Some(s),
            _ => None,
        })
        .collect();
    let primes = (3i64..).filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0));
    tags.into_iter().cloned().zip(primes).collect()
}

fn coeff_mod(c: &Coeff, vals: &HashMap<String, i64>) -> i64 {
    match c {
        Coeff::Exact(r) => to_mod(r),
        Coeff::Generic(s) => vals[s].rem_euclid(PRIME),
    }
}

/// Monomial basis of the local algebra `C[x,y]/(f_x, f_y)` at the origin,
/// computed mod a large prime with generic moduli fixed to distinct small primes.
pub fn local_algebra_basis(g: &Germ) -> Result<Vec<Point>> {
    let mu = milnor_number(g)?;
    local_algebra_basis_truncated(g, mu + 2)
}

fn local_algebra_basis_truncated(g: &Germ, n: i64) -> Result<Vec<Point>> {
    let vals = generic_values(g);
    let mut grads: [Vec<(Point, i64)>; 2] = [vec![], vec![]];
    for (&(i, j), c) in &g.terms {
        let v = coeff_mod(c, &vals);
        if i > 0 {
            grads[0].push(((i - 1, j), v * i % PRIME));
        }
        if j > 0 {
            grads[1].push(((i, j - 1), v * j % PRIME));
        }
    }
    let mut cols: Vec<Point> = (0..n).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect();
    cols.sort_by_key(|&(i, j)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
    let index: HashMap<Point, usize> = cols.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut pivots: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    for grad in &grads {
        for a in 0..n {
            for b in 0..n - a {
                let mut row = vec![0i64; cols.len()];
                let mut any = false;
                for &((i, j), v) in grad {
                    if let Some(&k) = index.get(&(i + a, j + b)) {
                        row[k] = (row[k] + v) % PRIME;
                        any = true;
                    }
                }
                if any {
                    reduce_insert(&mut pivots, row);
                }
            }
        }
    }
    let mut basis: Vec<Point> =
        cols.iter().enumerate().filter(|(k, _)| !pivots.contains_key(k)).map(|(_, &p)| p).collect();
    basis.sort_by_key(|&(i, j)| (i + j, i));
    Ok(basis)
}

fn reduce_insert(pivots: &mut BTreeMap<usize, Vec<i64>>, mut row: Vec<i64>) {
    loop {
        let Some(lead) = row.iter().position(|&v| v != 0) else { return };
        match pivots.get(&lead) {
            Some(p) => {
                let f = row[lead];
                for (r, q) in row.iter_mut().zip(p) {
                    if *q != 0 {
                        *r = ((*r as i128 - f as i128 * *q as i128).rem_euclid(PRIME as i128)) as i64;
                    }
                }
            }
            None => {
                let inv = inv_mod(row[lead]);
                for r in row.iter_mut() {
                    *r = ((*r as i128 * inv as i128) % PRIME as i128) as i64;
                }
                pivots.insert(lead, row);
                return;
            }
        }
    }
}

/// Monomial basis for a miniversal deformation; its size is checked against `mu`.
pub fn miniversal_monomials(g: &Germ) -> Result<Vec<Point>> {
    let mu = milnor_number(g)?;
    let basis = local_algebra_basis_truncated(g, mu + 2)?;
    if basis.len() as i64 != mu {
        return Err(Error::Degenerate(format!("local algebra has dimension {} against mu = {mu}", basis.len())));
    }
    Ok(basis)
}

#[derive(Clone, Debug)]
pub struct SpectrumRow {
    pub name: String,
    pub normal_form: String,
    pub mu: i64,
    pub spectrum: Spectrum,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SpectrumTable {
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        let rows = v["rows"].as_array().ok_or_else(|| Error::Data("missing rows".into()))?;
        let mut out = vec![];
        for r in rows {
            let s = |k: &str| r[k].as_str().map(str::to_string).ok_or_else(|| Error::Data(format!("row missing {k}")));
            out.push(SpectrumRow {
                name: s("name")?,
                normal_form: s("normal_form")?,
                mu: r["mu"].as_i64().ok_or_else(|| Error::Data("row missing mu".into()))?,
                spectrum: parse_spectrum(&s("spectrum")?)?,
                note: [r["note"].as_str(), r["spectrum_note"].as_str()]
                    .into_iter()
                    .flatten()
                    .map(str::to_string)
                    .reduce(|a, b| format!("{a}; {b}")),
            });
        }
        Ok(Self { rows: out })
    }

    pub fn get(&self, name: &str) -> Option<&SpectrumRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct AdjacencyTree {
    pub root: String,
    pub edges: Vec<(String, String)>,
    pub known_negative: Vec<(String, String)>,
}

impl AdjacencyTree {
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        let pairs = |k: &str| -> Result<Vec<(String, String)>> {
            v[k].as_array()
                .map(|a| a.as_slice())
                .unwrap_or_default()
                .iter()
                .map(|e| match (e[0].as_str(), e[1].as_str()) {
                    (Some(a), Some(b)) => Ok((a.to_string(), b.to_string())),
                    _ => Err(Error::Data(format!("bad edge {e}"))),
                })
                .collect()
        };
        Ok(Self {
            root: v["root"].as_str().ok_or_else(|| Error::Data("missing root".into()))?.to_string(),
            edges: pairs("edges")?,
            known_negative: pairs("known_negative")?,
        })
    }

    pub fn nodes(&self) -> BTreeSet<&str> {
        self.edges.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()]).collect()
    }

    /// All pairs `(a, b)` with a directed path from `a` to `b`, including the root edges.
    pub fn transitive_closure(&self) -> BTreeSet<(String, String)> {
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (a, b) in &self.edges {
            adj.entry(a.as_str()).or_default().push(b.as_str());
        }
        for n in self.nodes() {
            if n != self.root {
                adj.entry(self.root.as_str()).or_default().push(n);
            }
        }
        let mut out = BTreeSet::new();
        for &s in adj.keys() {
            let mut stack = vec![s];
            let mut seen = BTreeSet::new();
            while let Some(u) = stack.pop() {
                for &w in adj.get(u).map(Vec::as_slice).unwrap_or_default() {
                    if seen.insert(w) {
                        out.insert((s.to_string(), w.to_string()));
                        stack.push(w);
                    }
                }
            }
        }
        out
    }
}

/// Recomputes one table row from its normal form.
pub fn check_row(row: &SpectrumRow) -> Check {
    let r = (|| -> Result<(bool, String)> {
        let g = parse_germ(&row.normal_form)?;
        let mu = milnor_number(&g)?;
        let s = spectrum(&g)?;
        let mut bad = vec![];
        if mu != row.mu {
            bad.push(format!("mu {mu} != {}", row.mu));
        }
        if s != row.spectrum {
            bad.push(format!("spectrum {s} != {}", row.spectrum));
        }
        if row.spectrum.mu as i64 != row.mu {
            bad.push(format!("table lists {} values for mu = {}", row.spectrum.mu, row.mu));
        }
        Ok(if bad.is_empty() { (true, format!("mu = {mu}")) } else { (false, bad.join("; ")) })
    })();
    Check::from_result(format!("row {}", row.name), r)
}

/// Checks the spectra of every table row, every tree edge and the transitive closure from the root.
pub fn verify_adjacency_tree(tree: &AdjacencyTree, table: &SpectrumTable) -> Report {
    let mut report = Report::default();
    report.checks.extend(table.rows.par_iter().map(check_row).collect::<Vec<_>>());
    let pair = |a: &str, b: &str| -> Result<(bool, String)> {
        let l = table.get(a).ok_or_else(|| Error::Data(format!("no table row {a}")))?;
        let k = table.get(b).ok_or_else(|| Error::Data(format!("no table row {b}")))?;
        let ok = spectra_adjacent(&l.spectrum, &k.spectrum)?;
        Ok((ok, format!("mu {} -> {}", l.mu, k.mu)))
    };
    for (a, b) in &tree.edges {
        report.checks.push(Check::from_result(format!("edge {a} -> {b}"), pair(a, b)));
    }
    let closure = tree.transitive_closure();
    let failed: Vec<String> = closure
        .iter()
        .filter(|(a, b)| !matches!(pair(a, b), Ok((true, _))))
        .map(|(a, b)| format!("{a} -> {b}"))
        .collect();
    report.checks.push(Check::new(
        format!("closure from {}", tree.root),
        failed.is_empty(),
        if failed.is_empty() { format!("{} pairs", closure.len()) } else { failed.join(", ") },
    ));
    for (a, b) in &tree.known_negative {
        let r = pair(a, b).map(|(ok, d)| (!ok, format!("{d}, semicontinuity fails as expected")));
        report.checks.push(Check::from_result(format!("non-adjacent {a} -> {b}"), r));
    }
    report
}

/// Spectra computed on completions with each exponent in `ms` agree.
pub fn completion_independent(g: &Germ, ms: &[i64]) -> Result<bool> {
    let first = spectrum_with(g, ms[0])?;
    for &m in &ms[1..] {
        if spectrum_with(g, m)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}
