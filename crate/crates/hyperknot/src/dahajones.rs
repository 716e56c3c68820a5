//! DAHA-Jones polynomials of torus knots: `PSL_2(Z)` words in `τ_±`, their
//! action on words in `X_ω, Y_ω, T_i`, the evaluation coinvariant and the
//! tilde-normalization.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::macdonald::{macdonald, minuscule_index, MacdonaldPoly};
use crate::polyrep::{Op, OpWord, PolyRep};
use crate::qtcoeff::{scale, QTScalar, Rat, RatFunc, TriPoly, Weight, XPoly, Q};
use crate::rootsys::RootSystem;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tau {
    Plus,
    Minus,
}

/// Product of powers of `τ_±`; the rightmost letter acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauWord {
    pub letters: Vec<(Tau, i64)>,
    pub matrix: [[i64; 2]; 2],
}

fn mat_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn letter_matrix(l: Tau, e: i64) -> [[i64; 2]; 2] {
    match l {
        Tau::Plus => [[1, e], [0, 1]],
        Tau::Minus => [[1, 0], [e, 1]],
    }
}

impl TauWord {
    pub fn from_letters(raw: Vec<(Tau, i64)>) -> Self {
        let mut letters: Vec<(Tau, i64)> = Vec::new();
        for (l, e) in raw {
            if e == 0 {
                continue;
            }
            match letters.last_mut() {
                Some((pl, pe)) if *pl == l => {
                    *pe += e;
                    if *pe == 0 {
                        letters.pop();
                    }
                }
                _ => letters.push((l, e)),
            }
        }
        let mut matrix = [[1, 0], [0, 1]];
        for (l, e) in &letters {
            matrix = mat_mul(&matrix, &letter_matrix(*l, *e));
        }
        Self { letters, matrix }
    }

    pub fn first_column(&self) -> (i64, i64) {
        (self.matrix[0][0], self.matrix[1][0])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "letters": self.letters.iter().map(|(l, e)| json!([if *l == Tau::Plus { "+" } else { "-" }, e])).collect::<Vec<_>>(),
            "matrix": self.matrix,
        })
    }
}

impl fmt::Display for TauWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(l, e)| {
                let s = if *l == Tau::Plus { "τ+" } else { "τ-" };
                if *e == 1 { s.to_string() } else { format!("{s}^{e}") }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn sigma_letters() -> Vec<(Tau, i64)> {
    vec![(Tau::Plus, 1), (Tau::Minus, -1), (Tau::Plus, 1)]
}

fn check_pair(r: i64, s: i64) -> Result<()> {
    if r == 0 || s == 0 {
        return Err(Error::Degenerate(format!("torus knot ({r},{s})")));
    }
    if r.gcd(&s) != 1 {
        return Err(Error::TorusLink(r, s));
    }
    Ok(())
}

fn euclid_word(r: i64, s: i64, nearest: bool) -> Vec<(Tau, i64)> {
    let (mut x, mut y) = (r, s);
    let mut out = Vec::new();
    loop {
        match (x, y) {
            (1, 0) => break,
            (-1, 0) => {
                out.extend(sigma_letters());
                out.extend(sigma_letters());
                break;
            }
            (0, 1) => {
                out.extend([(Tau::Plus, -1), (Tau::Minus, 1)]);
                break;
            }
            (0, -1) => {
                out.extend([(Tau::Plus, 1), (Tau::Minus, -1)]);
                break;
            }
            _ => {}
        }
        let quot = |a: i64, b: i64| {
            if !nearest {
                return a / b;
            }
            let (a, b) = if b < 0 { (-a, -b) } else { (a, b) };
            (2 * a + b).div_euclid(2 * b)
        };
        if x.abs() >= y.abs() {
            let a = quot(x, y);
            out.push((Tau::Plus, a));
            x -= a * y;
        } else {
            let b = quot(y, x);
            out.push((Tau::Minus, b));
            y -= b * x;
        }
    }
    out
}

/// Euclidean continued-fraction word with first matrix column `(r, s)`.
pub fn gamma_word(r: i64, s: i64) -> Result<TauWord> {
    check_pair(r, s)?;
    let w = TauWord::from_letters(euclid_word(r, s, false));
    debug_assert_eq!(w.first_column(), (r, s));
    Ok(w)
}

/// A structurally different word with the same first column: the
/// nearest-integer expansion, padded by `σ^4` when it coincides with
/// [`gamma_word`].
pub fn gamma_word_alt(r: i64, s: i64) -> Result<TauWord> {
    check_pair(r, s)?;
    let std = gamma_word(r, s)?;
    let mut w = TauWord::from_letters(euclid_word(r, s, true));
    if w.letters == std.letters {
        let mut l = w.letters.clone();
        for _ in 0..4 {
            l.extend(sigma_letters());
        }
        w = TauWord::from_letters(l);
    }
    debug_assert_eq!(w.first_column(), (r, s));
    Ok(w)
}

/// An element of the double affine Hecke algebra written as `q^{qexp}` times
/// a word in `X_{±ω}`, `Y_{±ω}` and `T_i` with `ω` minuscule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HWord {
    pub qexp: Rat,
    pub ops: Vec<Op>,
}

impl HWord {
    pub fn x(b: &Weight) -> Self {
        Self { qexp: Rat::zero(), ops: vec![Op::X(b.clone())] }
    }

    fn push(&mut self, op: Op) {
        let cancels = match (self.ops.last(), &op) {
            (Some(Op::X(a)), Op::X(b)) | (Some(Op::Y(a)), Op::Y(b)) => a.add(b).is_zero(),
            (Some(Op::T(i)), Op::TInv(j)) | (Some(Op::TInv(i)), Op::T(j)) => i == j,
            _ => false,
        };
        if cancels {
            self.ops.pop();
        } else {
            self.ops.push(op);
        }
    }

    pub fn to_opword(&self) -> OpWord {
        let mut v = Vec::with_capacity(self.ops.len() + 1);
        if !self.qexp.is_zero() {
            v.push(Op::QPow(self.qexp));
        }
        v.extend(self.ops.iter().cloned());
        OpWord(v)
    }

    /// Apply `τ^e` for a single letter.
    pub fn apply_tau(&self, rs: &RootSystem, l: Tau, e: i64) -> Result<Self> {
        let mut w = self.clone();
        for _ in 0..e.abs() {
            w = w.tau_once(rs, l, e > 0)?;
        }
        Ok(w)
    }

    fn tau_once(&self, rs: &RootSystem, l: Tau, fwd: bool) -> Result<Self> {
        let mut out = HWord { qexp: self.qexp, ops: Vec::with_capacity(self.ops.len() * 2) };
        for op in &self.ops {
            let (b, is_x) = match op {
                Op::X(b) => (b, true),
                Op::Y(b) => (b, false),
                Op::T(_) | Op::TInv(_) => {
                    out.push(op.clone());
                    continue;
                }
                _ => return Err(Error::Precondition(format!("unexpected generator {op:?}"))),
            };
            let moving = match l {
                Tau::Plus => !is_x,
                Tau::Minus => is_x,
            };
            if !moving {
                out.push(op.clone());
                continue;
            }
            let pos = b.is_dominant();
            let w = if pos { b.clone() } else { b.neg() };
            let c = rs.pair(&w, &w) / 2;
            let (xp, xn, yp, yn) = (Op::X(w.clone()), Op::X(w.neg()), Op::Y(w.clone()), Op::Y(w.neg()));
            let (dq, seq) = match (l, fwd, pos) {
                (Tau::Plus, true, true) => (-c, vec![xp, yp]),
                (Tau::Plus, true, false) => (c, vec![yn, xn]),
                (Tau::Plus, false, true) => (c, vec![xn, yp]),
                (Tau::Plus, false, false) => (-c, vec![yn, xp]),
                (Tau::Minus, true, true) => (c, vec![yp, xp]),
                (Tau::Minus, true, false) => (-c, vec![xn, yn]),
                (Tau::Minus, false, true) => (-c, vec![yn, xp]),
                (Tau::Minus, false, false) => (c, vec![xn, yp]),
            };
            out.qexp += dq;
            for o in seq {
                out.push(o);
            }
        }
        Ok(out)
    }

    /// Apply every letter of `w`, rightmost first.
    pub fn apply_word(&self, rs: &RootSystem, w: &TauWord) -> Result<Self> {
        let mut h = self.clone();
        for (l, e) in w.letters.iter().rev() {
            h = h.apply_tau(rs, *l, *e)?;
        }
        Ok(h)
    }
}

/// Word `T_{i_k} … T_{i_1}` and dominant minuscule `ω` with
/// `X_μ = T_{i_k} … T_{i_1} X_ω T_{i_1} … T_{i_k}`.
fn orbit_path(rs: &RootSystem, mu: &Weight) -> Option<(Weight, Vec<usize>)> {
    let mut cur = mu.clone();
    let mut path = Vec::new();
    while !cur.is_dominant() {
        let i = (0..rs.rank).find(|&i| cur.0[i] == -1)?;
        if cur.0.iter().any(|&v| v < -1 || v > 1) {
            return None;
        }
        cur = rs.reflect(&cur, i + 1);
        path.push(i + 1);
    }
    minuscule_index(rs, &cur)?;
    Some((cur, path))
}

/// `X_μ` for `μ` in a minuscule orbit as a word in `T_i` and `X_ω`.
pub fn orbit_word(rs: &RootSystem, mu: &Weight) -> Result<HWord> {
    let (w, path) = orbit_path(rs, mu).ok_or_else(|| Error::NotMinuscule(0))?;
    let mut ops: Vec<Op> = path.iter().map(|&i| Op::T(i)).collect();
    ops.push(Op::X(w));
    ops.extend(path.iter().rev().map(|&i| Op::T(i)));
    Ok(HWord { qexp: Rat::zero(), ops })
}

/// Decompose an arbitrary weight as a short sum of minuscule-orbit weights.
pub fn minuscule_decomposition(rs: &RootSystem, c: &Weight) -> Result<Vec<Weight>> {
    Decomposer::new(rs)?.decompose(c)
}

struct Decomposer<'a> {
    rs: &'a RootSystem,
    pool: Vec<Weight>,
    fund: Vec<Vec<Weight>>,
}

impl<'a> Decomposer<'a> {
    fn new(rs: &'a RootSystem) -> Result<Self> {
        let mut pool = Vec::new();
        for &r in rs.minuscule_indices() {
            pool.extend(rs.weyl_orbit(&Weight::fundamental(rs.rank, r)));
        }
        let fund = (1..=rs.rank).map(|i| fundamental_decomposition(rs, i)).collect::<Result<_>>()?;
        Ok(Self { rs, pool, fund })
    }

    /// Greedy descent in the norm, falling back to fundamental weights.
    fn decompose(&self, c: &Weight) -> Result<Vec<Weight>> {
        let mut out = Vec::new();
        let mut cur = c.clone();
        while !cur.is_zero() {
            let n0 = self.rs.pair(&cur, &cur);
            let best = self
                .pool
                .iter()
                .map(|m| (self.rs.pair(&cur.sub(m), &cur.sub(m)), m))
                .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
            match best {
                Some((n1, m)) if n1 < n0 => {
                    out.push(m.clone());
                    cur = cur.sub(m);
                }
                _ => {
                    out.extend(decompose_with(&self.fund, &cur));
                    break;
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

fn decompose_with(fund: &[Vec<Weight>], c: &Weight) -> Vec<Weight> {
    let mut out = Vec::new();
    for (i, f) in fund.iter().enumerate() {
        let k = c.0[i];
        for _ in 0..k.abs() {
            for mu in f {
                out.push(if k > 0 { mu.clone() } else { mu.neg() });
            }
        }
    }
    out
}

fn fundamental_decomposition(rs: &RootSystem, i: usize) -> Result<Vec<Weight>> {
    let n = rs.rank;
    let target = Weight::fundamental(n, i);
    if rs.is_minuscule(i) {
        return Ok(vec![target]);
    }
    let mut pool: Vec<Weight> = Vec::new();
    for &r in rs.minuscule_indices() {
        pool.extend(rs.weyl_orbit(&Weight::fundamental(n, r)));
    }
    for k in 2..=4usize {
        if let Some(v) = search_sum(&pool, &target, k, 0) {
            return Ok(v);
        }
    }
    Err(Error::Precondition(format!("no minuscule decomposition of ω{i} in {}", rs.name())))
}

fn search_sum(pool: &[Weight], target: &Weight, k: usize, start: usize) -> Option<Vec<Weight>> {
    if k == 1 {
        return pool[start..].iter().find(|m| *m == target).map(|m| vec![m.clone()]);
    }
    for (j, m) in pool.iter().enumerate().skip(start) {
        if let Some(mut rest) = search_sum(pool, &target.sub(m), k - 1, j) {
            rest.push(m.clone());
            return Some(rest);
        }
    }
    None
}

fn scalar_factor(pr: &PolyRep, op: &Op, left: bool) -> Option<(Rat, Rat)> {
    let half = Rat::new(1, 2);
    match op {
        Op::T(_) => Some((Rat::zero(), half)),
        Op::TInv(_) => Some((Rat::zero(), -half)),
        Op::X(b) if left => Some((Rat::zero(), -pr.rs.rho_pairing(b))),
        Op::Y(b) if !left => Some((Rat::zero(), pr.rs.rho_pairing(b))),
        Op::QPow(e) => Some((*e, Rat::zero())),
        _ => None,
    }
}

/// `{A v}` with leading generators that act on the evaluation by scalars
/// peeled off first.
fn coinvariant_on(pr: &PolyRep, ops: &[Op], qexp: Rat, v: Option<&XPoly>) -> Result<QTScalar> {
    let (mut eq, mut et) = (qexp, Rat::zero());
    let mut lo = 0;
    let mut hi = ops.len();
    while lo < hi {
        match scalar_factor(pr, &ops[lo], true) {
            Some((a, b)) => {
                eq += a;
                et += b;
                lo += 1;
            }
            None => break,
        }
    }
    if v.is_none() {
        while lo < hi {
            match scalar_factor(pr, &ops[hi - 1], false) {
                Some((a, b)) => {
                    eq += a;
                    et += b;
                    hi -= 1;
                }
                None => break,
            }
        }
    }
    let one = XPoly::one(pr.rank());
    let w = pr.apply_word(&OpWord(ops[lo..hi].to_vec()), v.unwrap_or(&one))?;
    let e = pr.evaluate_at_rho(&w);
    Ok(e.shifted(&Q::from_integer(1), scale(eq), scale(et)))
}

/// Evaluation coinvariant `{A} = A(1)` at `X_b ↦ t^{-(b,ρ)}`.
pub fn coinvariant(pr: &PolyRep, h: &HWord) -> Result<QTScalar> {
    coinvariant_on(pr, &h.ops, h.qexp, None)
}

struct GammaCache<'a> {
    rs: &'a RootSystem,
    pr: PolyRep<'a>,
    w: &'a TauWord,
    images: FxHashMap<Weight, HWord>,
    vectors: FxHashMap<Vec<Weight>, XPoly>,
}

impl<'a> GammaCache<'a> {
    fn image(&mut self, mu: &Weight) -> Result<HWord> {
        if let Some(h) = self.images.get(mu) {
            return Ok(h.clone());
        }
        let h = orbit_word(self.rs, mu)?.apply_word(self.rs, self.w)?;
        self.images.insert(mu.clone(), h.clone());
        Ok(h)
    }

    /// `Π_{μ ∈ factors} γ̂(X_μ)` applied to `1`.
    fn vector(&mut self, factors: &[Weight]) -> Result<XPoly> {
        if factors.is_empty() {
            return Ok(XPoly::one(self.rs.rank));
        }
        if let Some(v) = self.vectors.get(factors) {
            return Ok(v.clone());
        }
        let inner = self.vector(&factors[1..])?;
        let h = self.image(&factors[0])?;
        let v = self.pr.apply_word(&h.to_opword(), &inner)?;
        self.vectors.insert(factors.to_vec(), v.clone());
        Ok(v)
    }

    fn value(&mut self, factors: &[Weight]) -> Result<QTScalar> {
        if factors.is_empty() {
            return Ok(QTScalar::one());
        }
        let h = self.image(&factors[0])?;
        if factors.len() == 1 {
            return coinvariant(&self.pr, &h);
        }
        let inner = self.vector(&factors[1..])?;
        coinvariant_on(&self.pr, &h.ops, h.qexp, Some(&inner))
    }
}

/// `{γ̂(P_b)} / P_b(q^{-ρ_k})` as an exact Laurent polynomial with
/// rational exponents.
pub fn apply_gamma(rs: &RootSystem, w: &TauWord, p: &MacdonaldPoly) -> Result<QTScalar> {
    let pr = PolyRep::new(rs);
    if let Some(r) = minuscule_index(rs, &p.weight) {
        if r == 0 {
            return Ok(QTScalar::one());
        }
        let h = HWord::x(&p.weight).apply_word(rs, w)?;
        let v = coinvariant(&pr, &h)?;
        return Ok(v.shifted(&Q::from_integer(1), 0, scale(rs.rho_pairing(&p.weight))));
    }
    let dec = Decomposer::new(rs)?;
    let mut cache = GammaCache { rs, pr, w, images: FxHashMap::default(), vectors: FxHashMap::default() };
    let mut total = QTScalar::zero();
    for (c, coef) in p.poly.sorted_terms() {
        let factors = dec.decompose(c)?;
        let v = cache.value(&factors)?;
        total = &total + &(&v * coef);
    }
    RatFunc::new(total, p.den.clone()).div(&p.eval_value).reduce().to_scalar()
}

/// Result of a DAHA-Jones computation.
#[derive(Clone, Debug)]
pub struct JDResult {
    pub root_system: String,
    pub weight: Weight,
    pub knot: (i64, i64),
    pub word: TauWord,
    pub raw: QTScalar,
    pub tilde: TriPoly,
    pub normalization_monomial: (Rat, Rat),
}

impl JDResult {
    pub fn to_json(&self) -> Value {
        json!({
            "root_system": self.root_system,
            "weight": self.weight.0,
            "knot": [self.knot.0, self.knot.1],
            "word": self.word.to_json(),
            "raw": self.raw.to_json(),
            "tilde": self.tilde.to_json(),
            "tilde_text": self.tilde.to_string(),
            "normalization_monomial": [self.normalization_monomial.0.to_string(), self.normalization_monomial.1.to_string()],
        })
    }
}

/// Divide by the lowest `(e_t, e_q)` monomial and convert to integer form.
pub fn tilde_normalize(raw: &QTScalar) -> Result<(TriPoly, (i64, i64))> {
    let (lq, lt) = raw.lowest_monomial().ok_or_else(|| Error::Degenerate("zero DAHA-Jones value".into()))?;
    let minq = raw.terms().iter().map(|((q, _), _)| *q).min().unwrap_or(lq);
    if minq != lq {
        return Err(Error::AmbiguousNormalization(format!("lowest t-monomial is not q-minimal in {raw}")));
    }
    let shifted = raw.shifted(&Q::from_integer(1), -lq, -lt);
    Ok((shifted.to_tripoly()?, (lq, lt)))
}

/// DAHA-Jones polynomial for the given word.
pub fn compute_jd_with_word(rs: &RootSystem, b: &Weight, w: &TauWord) -> Result<JDResult> {
    if !b.is_dominant() || b.rank() != rs.rank {
        return Err(Error::Precondition(format!("weight {b} is not a dominant weight of {}", rs.name())));
    }
    let p = macdonald(rs, b)?;
    let raw = apply_gamma(rs, w, &p)?;
    let (tilde, (lq, lt)) = tilde_normalize(&raw)?;
    Ok(JDResult {
        root_system: rs.name(),
        weight: b.clone(),
        knot: w.first_column(),
        word: w.clone(),
        raw,
        tilde,
        normalization_monomial: (crate::qtcoeff::unscale(-lq), crate::qtcoeff::unscale(-lt)),
    })
}

/// Un-normalized `JD_{r,s}(b)`.
pub fn compute_jd_raw(rs: &RootSystem, b: &Weight, r: i64, s: i64) -> Result<QTScalar> {
    let p = macdonald(rs, b)?;
    apply_gamma(rs, &gamma_word(r, s)?, &p)
}

/// Full result for the torus knot `T(r,s)`.
pub fn compute_jd_full(rs: &RootSystem, b: &Weight, r: i64, s: i64) -> Result<JDResult> {
    compute_jd_with_word(rs, b, &gamma_word(r, s)?)
}

/// Tilde-normalized DAHA-Jones polynomial of `T(r,s)`.
pub fn compute_jd(rs: &RootSystem, b: &Weight, r: i64, s: i64) -> Result<TriPoly> {
    Ok(compute_jd_full(rs, b, r, s)?.tilde)
}

/// Substitute `t ↦ q`; the result has a-degree 0 and `t`-exponent 0.
pub fn jones_specialize(jd: &TriPoly) -> TriPoly {
    jd.t_to_q()
}

/// One named check with a pass flag and a short detail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    pub fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((p, d)) => Self::new(name, p, d),
            Err(e) => Self::new(name, false, e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn extend(&mut self, o: Report) {
        self.checks.extend(o.checks);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

/// Knots `(r,s)` with `r, s ≥ 1`, `gcd = 1` and `r + s ≤ max_sum`.
pub fn knots_up_to(max_sum: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for r in 1..max_sum {
        for s in 1..=(max_sum - r) {
            if r.gcd(&s) == 1 {
                v.push((r, s));
            }
        }
    }
    v
}

/// Sum of coefficients at `q = 1`, as a polynomial in `t`.
pub fn at_q_one(p: &TriPoly) -> TriPoly {
    p.map_exponents(|_, t, a| (0, t, a))
}

fn eq_detail(a: &TriPoly, b: &TriPoly) -> (bool, String) {
    if a == b {
        (true, String::new())
    } else {
        (false, format!("{a} != {b}"))
    }
}

/// Properties (1)–(5) for every knot with `r + s ≤ max_sum`.
pub fn jd_property_suite(rs: &RootSystem, b: &Weight, max_sum: i64) -> Report {
    let name = format!("{} {}", rs.name(), b);
    let checks: Vec<Vec<Check>> = knots_up_to(max_sum)
        .into_par_iter()
        .map(|(r, s)| {
            let mut out = Vec::new();
            let base = compute_jd_full(rs, b, r, s);
            let base = match base {
                Ok(j) => j,
                Err(e) => return vec![Check::new(format!("{name} ({r},{s}) compute"), false, e.to_string())],
            };
            out.push(Check::new(
                format!("{name} ({r},{s}) integrality"),
                base.tilde.coeff(0, 0, 0) == 1 && base.tilde.iter().all(|(q, t, _, _)| q >= 0 && t >= 0),
                base.tilde.to_string(),
            ));
            out.push(Check::from_result(
                format!("{name} ({r},{s}) word independence"),
                gamma_word_alt(r, s).and_then(|w| compute_jd_with_word(rs, b, &w)).map(|j| eq_detail(&j.tilde, &base.tilde)),
            ));
            if s == 1 || r == 1 {
                out.push(Check::new(format!("{name} ({r},{s}) unknot"), base.tilde == TriPoly::one(), base.tilde.to_string()));
            }
            out.push(Check::from_result(
                format!("{name} ({r},{s}) r-s symmetry"),
                compute_jd(rs, b, s, r).map(|j| eq_detail(&j, &base.tilde)),
            ));
            out.push(Check::from_result(
                format!("{name} ({r},{s}) orientation"),
                compute_jd(rs, b, -r, -s).map(|j| eq_detail(&j, &base.tilde)),
            ));
            out.push(Check::from_result(
                format!("{name} ({r},{s}) mirror"),
                compute_jd_raw(rs, b, r, -s).map(|raw| {
                    let inv = base.raw.invert_variables();
                    if raw == inv {
                        (true, String::new())
                    } else {
                        (false, format!("{raw} != {inv}"))
                    }
                }),
            ));
            out
        })
        .collect();
    Report { checks: checks.into_iter().flatten().collect() }
}

/// `JD(Σ b_i ω_i; q=1) = Π JD(ω_i; q=1)^{b_i}`.
pub fn evaluation_factorization(rs: &RootSystem, b: &Weight, r: i64, s: i64) -> Result<(bool, String)> {
    let lhs = at_q_one(&compute_jd(rs, b, r, s)?);
    let mut rhs = TriPoly::one();
    for (i, &k) in b.0.iter().enumerate() {
        if k > 0 {
            let f = at_q_one(&compute_jd(rs, &Weight::fundamental(rs.rank, i + 1), r, s)?);
            rhs = &rhs * &f.pow(k as u32);
        }
    }
    Ok(eq_detail(&lhs, &rhs))
}

/// Family of a superpolynomial comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuperFamily {
    /// `A_n` with the given weight index, `a = -t^{n+1}`.
    A(usize),
    /// `D_n` with `ω_n`, `a = -t^{n-4}`.
    DLast,
}

/// Compare `compute_jd` with a superpolynomial specialized along a series.
pub fn superpoly_check(family: SuperFamily, knot: (i64, i64), hd: &TriPoly, ns: &[usize]) -> Report {
    let checks = ns
        .par_iter()
        .map(|&n| {
            let label = match family {
                SuperFamily::A(i) => format!("A{n} ω{i} {:?}", knot),
                SuperFamily::DLast => format!("D{n} ω{n} {:?}", knot),
            };
            let r = (|| {
                let (rs, b, be) = match family {
                    SuperFamily::A(i) => {
                        let rs = RootSystem::new(crate::rootsys::CartanType::A, n)?;
                        (rs, Weight::fundamental(n, i), -(n as i64 + 1))
                    }
                    SuperFamily::DLast => {
                        let rs = RootSystem::new(crate::rootsys::CartanType::D, n)?;
                        (rs, Weight::fundamental(n, n), -(n as i64 - 4))
                    }
                };
                let want = hd.specialize(0, be, 1)?.tilde_normalize()?;
                let got = compute_jd(&rs, &b, knot.0, knot.1)?;
                Ok(eq_detail(&got, &want))
            })();
            Check::from_result(label, r)
        })
        .collect();
    Report { checks }
}
