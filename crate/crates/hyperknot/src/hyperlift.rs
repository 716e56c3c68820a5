//! Positive three-variable lifts of DAHA-Jones polynomials under
//! specialization constraints, grading conventions, special evaluations and
//! differential diagrams.

use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dahajones::{Check, Report};
use crate::qtcoeff::{parse_tri, QTScalar, Rat, TriPoly};
use crate::{Error, Result};

/// Required value of a specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Explicit(TriPoly),
    /// Any single monomial with coefficient `±1`, solved during the lift.
    Monomial,
    /// Exactly `1`.
    Unit,
}

/// Row `a = -q^{-α/γ} t^{-β/γ}` with its required value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecConstraint {
    pub label: String,
    pub degree: (i64, i64, i64),
    pub target: Target,
}

impl SpecConstraint {
    pub fn new(label: impl Into<String>, degree: (i64, i64, i64), target: Target) -> Result<Self> {
        let (al, be, ga) = degree;
        if ga < 1 || al % ga != 0 || be % ga != 0 {
            return Err(Error::Precondition(format!("bad differential degree ({al},{be},{ga})")));
        }
        Ok(Self { label: label.into(), degree, target })
    }

    /// `(α/γ, β/γ)`.
    pub fn reduced(&self) -> (i64, i64) {
        (self.degree.0 / self.degree.2, self.degree.1 / self.degree.2)
    }

    /// The substitution node `-q^{-α/γ} t^{-β/γ}`.
    pub fn node(&self) -> QTScalar {
        let (al, be) = self.reduced();
        QTScalar::mono(-1, Rat::from_integer(-al), Rat::from_integer(-be))
    }

    pub fn apply(&self, hd: &TriPoly) -> Result<TriPoly> {
        let (al, be) = self.reduced();
        hd.specialize(al, be, 1)
    }

    /// `1 + q^{α/γ} t^{β/γ} a`, vanishing at the node.
    pub fn vanishing_factor(&self) -> TriPoly {
        let (al, be) = self.reduced();
        &TriPoly::one() + &TriPoly::monomial(1, al, be, 1)
    }

    pub fn accepts(&self, v: &TriPoly) -> bool {
        match &self.target {
            Target::Explicit(p) => v == p,
            Target::Unit => *v == TriPoly::one(),
            Target::Monomial => v.len() == 1 && v.iter().all(|(_, _, _, c)| c.abs() == 1),
        }
    }

    pub fn to_json(&self) -> Value {
        let target = match &self.target {
            Target::Explicit(p) => json!({"poly": p.to_string()}),
            Target::Monomial => json!("monomial"),
            Target::Unit => json!("unit"),
        };
        json!({"label": self.label, "degree": [self.degree.0, self.degree.1, self.degree.2], "target": target})
    }

    /// Parse a row; `{"ref": name}` targets are resolved by `resolve`.
    pub fn from_json(v: &Value, resolve: &dyn Fn(&str) -> Result<TriPoly>) -> Result<Self> {
        let bad = |m: &str| Error::Data(format!("constraint row: {m}"));
        let label = v["label"].as_str().ok_or_else(|| bad("label"))?;
        let d = v["degree"].as_array().ok_or_else(|| bad("degree"))?;
        if d.len() != 3 {
            return Err(bad("degree"));
        }
        let g = |i: usize| d[i].as_i64().ok_or_else(|| bad("degree"));
        let target = match &v["target"] {
            Value::String(s) if s == "unit" => Target::Unit,
            Value::String(s) if s == "monomial" => Target::Monomial,
            t if t.get("poly").is_some() => Target::Explicit(parse_tri(t["poly"].as_str().ok_or_else(|| bad("poly"))?)?),
            t if t.get("ref").is_some() => Target::Explicit(resolve(t["ref"].as_str().ok_or_else(|| bad("ref"))?)?),
            _ => return Err(bad("target")),
        };
        Self::new(label, (g(0)?, g(1)?, g(2)?), target)
    }
}

/// The five DAHA-convention rows for `(E6, ω1)`.
pub fn e6_constraints(jd_e6: &TriPoly, jd_d5: &TriPoly, jd_a6: &TriPoly) -> Vec<SpecConstraint> {
    vec![
        SpecConstraint { label: "E6,w1".into(), degree: (0, 0, 1), target: Target::Explicit(jd_e6.clone()) },
        SpecConstraint { label: "D5,w1".into(), degree: (0, 4, 1), target: Target::Explicit(jd_d5.clone()) },
        SpecConstraint { label: "A6,w1".into(), degree: (0, 5, 1), target: Target::Explicit(jd_a6.clone()) },
        SpecConstraint { label: "canceling".into(), degree: (0, 8, 1), target: Target::Unit },
        SpecConstraint { label: "canceling".into(), degree: (1, 12, 1), target: Target::Monomial },
    ]
}

/// Editable JSON form of the E6 table with named references to the targets.
pub fn e6_constraint_table() -> Value {
    json!({
        "convention": "daha",
        "rows": [
            {"label": "E6,w1", "degree": [0, 0, 1], "target": {"ref": "E6"}},
            {"label": "D5,w1", "degree": [0, 4, 1], "target": {"ref": "D5"}},
            {"label": "A6,w1", "degree": [0, 5, 1], "target": {"ref": "A6"}},
            {"label": "canceling", "degree": [0, 8, 1], "target": "unit"},
            {"label": "canceling", "degree": [1, 12, 1], "target": "monomial"},
        ]
    })
}

pub fn constraints_from_json(v: &Value, resolve: &dyn Fn(&str) -> Result<TriPoly>) -> Result<Vec<SpecConstraint>> {
    let rows = v["rows"].as_array().ok_or_else(|| Error::Data("constraint table without rows".into()))?;
    rows.iter().map(|r| SpecConstraint::from_json(r, resolve)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    Daha,
    Qg,
    Dgr,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Daha => "daha",
            Convention::Qg => "qg",
            Convention::Dgr => "dgr",
        })
    }
}

/// Positive polynomial in a named grading convention. In QG conventions the
/// third variable stands for `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperPoly {
    pub poly: TriPoly,
    pub convention: Convention,
}

impl HyperPoly {
    pub fn new(poly: TriPoly, convention: Convention) -> Result<Self> {
        if !poly.all_positive() {
            return Err(Error::Precondition(format!("hyperpolynomial has a non-positive coefficient: {poly}")));
        }
        Ok(Self { poly, convention })
    }

    pub fn to_json(&self) -> Value {
        json!({"convention": self.convention.to_string(), "poly": self.poly.to_json(), "text": self.to_string()})
    }
}

impl fmt::Display for HyperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.poly.to_string();
        if self.convention == Convention::Qg {
            write!(f, "{}", s.replace('a', "u"))
        } else {
            write!(f, "{s}")
        }
    }
}

/// Signs become `a`-parities: `c m ↦ |c| m a^{[c<0]}`.
pub fn parity_grading(jd: &TriPoly) -> TriPoly {
    let mut out = TriPoly::zero();
    for (q, t, a, c) in jd.iter() {
        out.add_term(q, t, a + i64::from(c < 0), c.abs());
    }
    out
}

/// Incremental Newton interpolation in `a` over the Laurent ring.
#[derive(Clone, Debug, Default)]
struct Newton {
    xs: Vec<QTScalar>,
    diag: Vec<QTScalar>,
    coeffs: Vec<QTScalar>,
}

impl Newton {
    fn push(&self, x: QTScalar, y: QTScalar) -> Result<Newton> {
        let n = self.xs.len();
        let mut d = vec![y];
        for j in 1..=n {
            let num = &d[j - 1] - &self.diag[j - 1];
            let den = &x - &self.xs[n - j];
            d.push(num.exact_div(&den)?);
        }
        let mut out = self.clone();
        out.coeffs.push(d[n].clone());
        out.xs.push(x);
        out.diag = d;
        Ok(out)
    }

    fn expand(&self) -> Result<TriPoly> {
        let n = self.coeffs.len();
        if n == 0 {
            return Ok(TriPoly::zero());
        }
        let mut p: Vec<QTScalar> = vec![self.coeffs[n - 1].clone()];
        for k in (0..n - 1).rev() {
            let mut np = vec![QTScalar::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                np[i + 1] = &np[i + 1] + c;
                np[i] = &np[i] - &(c * &self.xs[k]);
            }
            np[0] = &np[0] + &self.coeffs[k];
            p = np;
        }
        let mut out = TriPoly::zero();
        for (i, c) in p.iter().enumerate() {
            for (q, t, _, v) in c.to_tripoly()?.iter() {
                out.add_term(q, t, i as i64, v);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LiftOptions {
    /// Maximal number of canceling-pair monomials added to a signed interpolant.
    pub max_pairs: usize,
    /// Node budget of the pair search.
    pub node_budget: usize,
    /// Extra margin for the box of candidate monomial targets.
    pub box_margin: i64,
}

impl Default for LiftOptions {
    fn default() -> Self {
        Self { max_pairs: 6, node_budget: 500_000, box_margin: 2 }
    }
}

/// No `F · Π(1 + q^α t^β a)` with positive `F` fits under the lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub monomials_checked: usize,
    pub witness: Option<TriPoly>,
}

impl Certificate {
    pub fn is_minimal(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct LiftOutcome {
    pub hyper: HyperPoly,
    /// Values found for the monomial targets, by row index.
    pub solved: Vec<(usize, TriPoly)>,
    /// Pair monomials `F` added to the signed interpolant.
    pub added: TriPoly,
    pub certificate: Certificate,
    pub candidates: usize,
}

impl LiftOutcome {
    pub fn to_json(&self, constraints: &[SpecConstraint]) -> Value {
        json!({
            "hyper": self.hyper.to_json(),
            "terms": self.hyper.poly.len(),
            "dimension": self.hyper.poly.dimension(),
            "solved_targets": self.solved.iter().map(|(i, m)| json!({
                "row": i, "label": constraints[*i].label, "degree": [constraints[*i].degree.0, constraints[*i].degree.1, constraints[*i].degree.2], "value": m.to_string()
            })).collect::<Vec<_>>(),
            "added_pairs": self.added.to_string(),
            "minimal": self.certificate.is_minimal(),
            "monomials_checked": self.certificate.monomials_checked,
            "candidates": self.candidates,
        })
    }
}

pub fn lift(jd: &TriPoly, constraints: &[SpecConstraint]) -> Result<HyperPoly> {
    lift_with(jd, constraints, &LiftOptions::default()).map(|o| o.hyper)
}

/// Minimal positive lift: the interpolant of degree `< #rows` in `a` for every
/// admissible choice of monomial targets, completed by canceling pairs when
/// signed; the minimum dimension must be attained once.
pub fn lift_with(jd: &TriPoly, constraints: &[SpecConstraint], opts: &LiftOptions) -> Result<LiftOutcome> {
    if jd.iter().any(|(_, _, a, _)| a != 0) {
        return Err(Error::Precondition("input has a-dependence".into()));
    }
    let mut rows = constraints.to_vec();
    let base = rows
        .iter()
        .position(|c| c.reduced() == (0, 0))
        .ok_or_else(|| Error::Precondition("no a = -1 row".into()))?;
    match &rows[base].target {
        Target::Explicit(p) if p != jd => {
            return Err(Error::Precondition("a = -1 row target differs from the input".into()))
        }
        _ => rows[base].target = Target::Explicit(jd.clone()),
    }
    let known: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].target != Target::Monomial).collect();
    let unknown: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].target == Target::Monomial).collect();

    let mut newton = Newton::default();
    for &i in &known {
        let y = match &rows[i].target {
            Target::Explicit(p) => QTScalar::from_tripoly(p),
            _ => QTScalar::one(),
        };
        newton = newton.push(rows[i].node(), y).map_err(|_| {
            Error::Infeasible(format!("rows up to '{}' admit no polynomial lift", rows[i].label))
        })?;
    }

    let boxes = candidate_box(&rows, opts.box_margin);
    let mut assignments: Vec<(Newton, Vec<(usize, TriPoly)>)> = vec![(newton, vec![])];
    let mut candidates = 0usize;
    for &i in &unknown {
        let x = rows[i].node();
        let mut monos = Vec::new();
        for q in boxes.0 .0..=boxes.0 .1 {
            for t in boxes.1 .0..=boxes.1 .1 {
                for s in [1, -1] {
                    monos.push(TriPoly::monomial(s, q, t, 0));
                }
            }
        }
        candidates += monos.len() * assignments.len();
        assignments = assignments
            .par_iter()
            .flat_map_iter(|(nw, sol)| {
                let x = x.clone();
                monos
                    .iter()
                    .filter_map(move |m| {
                        let next = nw.push(x.clone(), QTScalar::from_tripoly(m)).ok()?;
                        let mut s = sol.clone();
                        s.push((i, m.clone()));
                        Some((next, s))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }

    let factor = rows.iter().fold(TriPoly::one(), |acc, c| &acc * &c.vanishing_factor());
    let mut found: Vec<(i64, TriPoly, TriPoly, Vec<(usize, TriPoly)>)> = Vec::new();
    let mut budget_hit = false;
    for (nw, sol) in assignments {
        let Ok(l) = nw.expand() else { continue };
        if l.all_positive() && !l.is_empty() {
            found.push((l.dimension(), l, TriPoly::zero(), sol));
            continue;
        }
        match complete_with_pairs(&l, &factor, opts) {
            Ok(sols) => {
                for (p, f) in sols {
                    found.push((p.dimension(), p, f, sol.clone()));
                }
            }
            Err(Error::BudgetExceeded(_)) => budget_hit = true,
            Err(_) => {}
        }
    }
    let Some(best) = found.iter().map(|f| f.0).min() else {
        if budget_hit {
            return Err(Error::BudgetExceeded("no positive lift within the node budget".into()));
        }
        return Err(Error::Infeasible("no positive lift satisfies every row".into()));
    };
    let mut winners: Vec<_> = found.into_iter().filter(|f| f.0 == best).collect();
    winners.sort_by(|a, b| a.1.cmp(&b.1));
    winners.dedup_by(|a, b| a.1 == b.1);
    if winners.len() > 1 {
        return Err(Error::NonUnique(winners[0].1.to_string(), winners[1].1.to_string()));
    }
    let (_, poly, added, solved) = winners.pop().unwrap();
    let certificate = minimality_certificate(&poly, &rows);
    Ok(LiftOutcome { hyper: HyperPoly::new(poly, Convention::Daha)?, solved, added, certificate, candidates })
}

fn candidate_box(rows: &[SpecConstraint], margin: i64) -> ((i64, i64), (i64, i64)) {
    let k = rows.len() as i64 - 1;
    let (mut qlo, mut qhi, mut tlo, mut thi) = (0i64, 0i64, 0i64, 0i64);
    for r in rows {
        if let Target::Explicit(p) = &r.target {
            for (q, t, _, _) in p.iter() {
                qlo = qlo.min(q);
                qhi = qhi.max(q);
                tlo = tlo.min(t);
                thi = thi.max(t);
            }
        }
    }
    let am = rows.iter().map(|r| r.reduced().0.abs()).max().unwrap_or(0);
    let bm = rows.iter().map(|r| r.reduced().1.abs()).max().unwrap_or(0);
    ((qlo - k * am - margin, qhi + k * am + margin), (tlo - k * bm - margin, thi + k * bm + margin))
}

/// All positive `l + F·factor` with the fewest pair monomials in `F`.
fn complete_with_pairs(l: &TriPoly, factor: &TriPoly, opts: &LiftOptions) -> Result<Vec<(TriPoly, TriPoly)>> {
    let mut nodes = 0usize;
    for depth in 1..=opts.max_pairs {
        let mut sols = Vec::new();
        dfs_pairs(l, &TriPoly::zero(), factor, depth, &mut nodes, opts.node_budget, &mut sols)?;
        if !sols.is_empty() {
            sols.sort();
            sols.dedup();
            return Ok(sols);
        }
    }
    Err(Error::Infeasible(format!("no completion with at most {} pairs", opts.max_pairs)))
}

fn dfs_pairs(
    p: &TriPoly,
    f: &TriPoly,
    factor: &TriPoly,
    depth: usize,
    nodes: &mut usize,
    budget: usize,
    out: &mut Vec<(TriPoly, TriPoly)>,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded(format!("{budget} nodes")));
    }
    let Some((nq, nt, na, _)) = p.iter().find(|x| x.3 < 0) else {
        out.push((p.clone(), f.clone()));
        return Ok(());
    };
    let deficit: i64 = p.iter().filter(|x| x.3 < 0).map(|x| -x.3).sum();
    if depth == 0 || (deficit as usize) > depth * factor.dimension() as usize {
        return Ok(());
    }
    for (uq, ut, ua, _) in factor.iter() {
        if na - ua < 0 {
            continue;
        }
        let m = TriPoly::monomial(1, nq - uq, nt - ut, na - ua);
        let np = p + &(&m * factor);
        dfs_pairs(&np, &(f + &m), factor, depth - 1, nodes, budget, out)?;
    }
    Ok(())
}

/// Exhaustive search for a monomial `m` with `m · Π(1 + q^α t^β a) ≤ hd`
/// coefficientwise; a positive `F` fitting under `hd` has such a monomial.
pub fn minimality_certificate(hd: &TriPoly, constraints: &[SpecConstraint]) -> Certificate {
    let factor = constraints.iter().fold(TriPoly::one(), |acc, c| &acc * &c.vanishing_factor());
    let mut checked = 0;
    for (q, t, a, _) in hd.iter() {
        checked += 1;
        let block = &TriPoly::monomial(1, q, t, a) * &factor;
        if block.iter().all(|(bq, bt, ba, c)| hd.coeff(bq, bt, ba) >= c) {
            return Certificate { monomials_checked: checked, witness: Some(block) };
        }
    }
    Certificate { monomials_checked: checked, witness: None }
}

/// Per-row check of the specializations with residuals on failure.
pub fn verify_specializations(hd: &TriPoly, constraints: &[SpecConstraint]) -> Report {
    let mut rep = Report::default();
    for c in constraints {
        let (al, be, ga) = c.degree;
        let name = format!("{} ({al},{be},{ga})", c.label);
        let check = match c.apply(hd) {
            Err(e) => Check::new(name, false, e.to_string()),
            Ok(v) if c.accepts(&v) => Check::new(name, true, v.to_string()),
            Ok(v) => {
                let residual = match &c.target {
                    Target::Explicit(p) => &v - p,
                    Target::Unit => &v - &TriPoly::one(),
                    Target::Monomial => v.clone(),
                };
                Check::new(name, false, format!("value {v}; residual {residual}"))
            }
        };
        rep.checks.push(check);
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    DahaToQg,
    QgToDaha,
    DahaToDgr,
}

/// Monomial-wise grading change. DAHA→QG is `a ↦ u t^{-1}, q ↦ q t^2, t ↦ q`;
/// DAHA→DGR is `t ↦ q^2, q ↦ q^2 t^2, a ↦ a^2 t`.
pub fn convention_change(hd: &HyperPoly, dir: Direction) -> Result<HyperPoly> {
    let (from, to) = match dir {
        Direction::DahaToQg => (Convention::Daha, Convention::Qg),
        Direction::QgToDaha => (Convention::Qg, Convention::Daha),
        Direction::DahaToDgr => (Convention::Daha, Convention::Dgr),
    };
    if hd.convention != from {
        return Err(Error::Precondition(format!("expected {from} convention, got {}", hd.convention)));
    }
    let mut out = TriPoly::zero();
    for (i, j, k, c) in hd.poly.iter() {
        let (a, b, e) = match dir {
            Direction::DahaToQg => (i + j, 2 * i - k, k),
            Direction::QgToDaha => {
                if (j + k) % 2 != 0 {
                    return Err(Error::NonIntegral(format!("q^{i}t^{j}u^{k} has no DAHA preimage")));
                }
                let qd = (j + k) / 2;
                (qd, i - qd, k)
            }
            Direction::DahaToDgr => (2 * i + 2 * j, 2 * i + k, 2 * k),
        };
        out.add_term(a, b, e, c);
    }
    Ok(HyperPoly { poly: out, convention: to })
}

/// `q ↦ q t^4, a ↦ a t^{-4}`.
pub fn hat_transform(hd: &HyperPoly) -> Result<TriPoly> {
    if hd.convention != Convention::Daha {
        return Err(Error::Precondition("hat transform needs DAHA conventions".into()));
    }
    Ok(hd.poly.map_exponents(|q, t, a| (q, t + 4 * q - 4 * a, a)))
}

/// Specializations of the hat transform at `a = -1, -t^{-1}, -t^{-4}, -q^{-1}t^{-12}`
/// against the `ω6` and `(A6, ω1)` polynomials.
pub fn hat_specializations(hd: &HyperPoly, jd_w6: &TriPoly, jd_a6: &TriPoly) -> Result<Report> {
    let hat = hat_transform(hd)?;
    let shifted_a6 = jd_a6.map_exponents(|q, t, a| (q, t + 4 * q, a));
    let mut rep = Report::default();
    let mut eq = |label: &str, deg: (i64, i64, i64), want: &TriPoly| -> Result<()> {
        let got = hat.specialize(deg.0, deg.1, deg.2)?;
        let detail = if got == *want { got.to_string() } else { format!("{got} != {want}") };
        rep.checks.push(Check::new(label, got == *want, detail));
        Ok(())
    };
    eq("hat a=-1 gives w6", (0, 0, 1), jd_w6)?;
    eq("hat a=-t^-1 gives A6 at q t^4", (0, 1, 1), &shifted_a6)?;
    eq("hat a=-t^-4 gives 1", (0, 4, 1), &TriPoly::one())?;
    let m = hat.specialize(1, 12, 1)?;
    let mono = m.len() == 1 && m.iter().all(|(_, _, _, c)| c == 1);
    rep.checks.push(Check::new("hat a=-q^-1 t^-12 gives a monomial", mono, m.to_string()));
    Ok(rep)
}

/// Square root of an integer polynomial with a positive lowest coefficient
/// under the `(a, q, t)` lexicographic order.
pub fn poly_sqrt(p: &TriPoly) -> Option<TriPoly> {
    let (q0, t0, a0, c0) = p.iter().next()?;
    let s0 = (c0 as f64).sqrt().round() as i64;
    if s0 * s0 != c0 || q0 % 2 != 0 || t0 % 2 != 0 || a0 % 2 != 0 {
        return None;
    }
    let lead = TriPoly::monomial(s0, q0 / 2, t0 / 2, a0 / 2);
    let (hq, ht, ha, _) = p.iter().last()?;
    let mut s = lead.clone();
    for _ in 0..=p.len() * 4 {
        let r = p - &(&s * &s);
        let Some((rq, rt, ra, rc)) = r.iter().next() else {
            return Some(s);
        };
        if (ra, rq, rt) > (ha, hq, ht) {
            return None;
        }
        let d = 2 * s0;
        if rc % d != 0 {
            return None;
        }
        s.add_term(rq - q0 / 2, rt - t0 / 2, ra - a0 / 2, rc / d);
    }
    None
}

#[derive(Clone, Debug)]
pub struct Evaluations {
    pub dimension: i64,
    pub dimension_root: Option<i64>,
    pub at_t_one: TriPoly,
    pub at_t_minus_one: TriPoly,
    pub at_t_one_root: Option<TriPoly>,
    pub a_special: TriPoly,
    pub report: Report,
}

impl Evaluations {
    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension,
            "dimension_root": self.dimension_root,
            "at_t_1": self.at_t_one.to_string(),
            "at_t_-1": self.at_t_minus_one.to_string(),
            "at_t_1_root": self.at_t_one_root.as_ref().map(|p| p.to_string()),
            "at_a_-q^-1t^-9": self.a_special.to_string(),
            "report": self.report.to_json(),
        })
    }
}

/// Dimension, values at `t = ±1` compared with the `(A, ω2)` lift when
/// given, and the specialization `a = -q^{-1} t^{-9}`.
pub fn hyper_evaluations(hd: &HyperPoly, omega2: Option<&TriPoly>) -> Result<Evaluations> {
    if hd.convention != Convention::Daha {
        return Err(Error::Precondition("evaluations need DAHA conventions".into()));
    }
    let p = &hd.poly;
    let dimension = p.eval(1, 1, 1)?;
    let r = (dimension as f64).sqrt().round() as i64;
    let dimension_root = (r * r == dimension).then_some(r);
    let at_t_one = p.at_t(1)?;
    let at_t_minus_one = p.at_t(-1)?;
    let at_t_one_root = poly_sqrt(&at_t_one);
    let a_special = p.specialize(1, 9, 1)?;
    let mut report = Report::default();
    report.checks.push(Check::new("dimension is a perfect square", dimension_root.is_some(), dimension.to_string()));
    report.checks.push(Check::new(
        "value at t=1 is a square",
        at_t_one_root.is_some(),
        at_t_one_root.as_ref().map(|s| format!("({s})^2")).unwrap_or_default(),
    ));
    if let Some(w2) = omega2 {
        for (tv, v) in [(1, &at_t_one), (-1, &at_t_minus_one)] {
            let other = w2.at_t(tv)?;
            let detail = if *v == other { v.to_string() } else { format!("{v} vs {other}") };
            report.checks.push(Check::new(format!("t={tv} agrees with (A, w2)"), *v == other, detail));
        }
    }
    Ok(Evaluations { dimension, dimension_root, at_t_one, at_t_minus_one, at_t_one_root, a_special, report })
}

/// A differential drawn in a diagram, with its QG degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub label: String,
    pub color: String,
    pub degree: (i64, i64, i64),
}

/// The four nontrivial colored differentials of the E6 proposal (QG degrees).
pub fn e6_differentials() -> Vec<Differential> {
    [("D5,10", "red", (4, -1, 1)), ("A6,7", "yellow", (5, -1, 1)), ("canceling", "green", (8, -1, 1)), ("canceling", "blue", (13, 1, 1))]
        .into_iter()
        .map(|(l, c, d)| Differential { label: l.into(), color: c.into(), degree: d })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub color: String,
    pub from: (i64, i64, i64),
    pub to: (i64, i64, i64),
    pub weight: i64,
}

#[derive(Clone, Debug)]
pub struct Diagram {
    pub nodes: Vec<((i64, i64, i64), i64)>,
    pub edges: Vec<Edge>,
}

/// Pair monomials along each chain `m, m·x, m·x^2, …` of every differential
/// degree `x`, greedily from the low end of the chain.
pub fn emit_diagram(hd: &HyperPoly, diffs: &[Differential]) -> Result<Diagram> {
    if hd.convention != Convention::Qg {
        return Err(Error::Precondition("diagrams use QG conventions".into()));
    }
    let p = &hd.poly;
    let nodes: Vec<((i64, i64, i64), i64)> = p.iter().map(|(q, t, u, c)| ((q, t, u), c)).collect();
    let mut edges = Vec::new();
    for d in diffs {
        let (x, y, z) = d.degree;
        let mut left: std::collections::BTreeMap<(i64, i64, i64), i64> = nodes.iter().cloned().collect();
        for &((q, t, u), _) in &nodes {
            if p.coeff(q - x, t - y, u - z) != 0 {
                continue;
            }
            let mut cur = (q, t, u);
            loop {
                let next = (cur.0 + x, cur.1 + y, cur.2 + z);
                let (a, b) = (left.get(&cur).copied().unwrap_or(0), left.get(&next).copied().unwrap_or(0));
                if p.coeff(next.0, next.1, next.2) == 0 {
                    break;
                }
                let w = a.min(b);
                if w > 0 {
                    edges.push(Edge { color: d.color.clone(), from: cur, to: next, weight: w });
                    *left.get_mut(&cur).unwrap() -= w;
                    *left.get_mut(&next).unwrap() -= w;
                }
                cur = next;
            }
        }
    }
    Ok(Diagram { nodes, edges })
}

impl Diagram {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph differentials {\n  node [shape=plaintext];\n");
        for ((q, t, u), c) in &self.nodes {
            let label = if *c == 1 { u.to_string() } else { format!("{u} (x{c})") };
            let _ = writeln!(s, "  \"{q},{t},{u}\" [label=\"{label}\", pos=\"{q},{t}!\"];");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  \"{},{},{}\" -- \"{},{},{}\" [color={}, penwidth={}];",
                e.from.0, e.from.1, e.from.2, e.to.0, e.to.1, e.to.2, e.color, e.weight
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("kind\tq\tt\tu\tmult\tcolor\tq2\tt2\tu2\n");
        for ((q, t, u), c) in &self.nodes {
            let _ = writeln!(s, "node\t{q}\t{t}\t{u}\t{c}\t\t\t\t");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "edge\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                e.from.0, e.from.1, e.from.2, e.weight, e.color, e.to.0, e.to.1, e.to.2
            );
        }
        s
    }
}
