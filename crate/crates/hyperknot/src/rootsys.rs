//! Simply-laced root systems of types `A_n`, `D_n` and `E6` in Bourbaki
//! numbering, with Weyl-group and extended-affine-Weyl machinery.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashSet;

use crate::qtcoeff::{Rat, Weight};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    D,
    E6,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A => write!(f, "A"),
            CartanType::D => write!(f, "D"),
            CartanType::E6 => write!(f, "E"),
        }
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "D" => Ok(CartanType::D),
            "E" | "E6" => Ok(CartanType::E6),
            _ => Err(Error::UnsupportedRootSystem(s.to_string())),
        }
    }
}

/// Integer matrix acting on fundamental-weight coordinates.
pub type Mat = Vec<Vec<i64>>;

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_vec(a: &Mat, v: &[i32]) -> Vec<i32> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * i64::from(*y)).sum::<i64>() as i32).collect()
}

/// Element `t_λ w` of the extended affine Weyl group; it sends the affine
/// root `[γ, k]` to `[wγ, k - (λ, wγ)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineElem {
    pub w: Mat,
    pub lam: Weight,
}

/// Reduced expression `π · s_{i_l} ⋯ s_{i_1}`; `letters` lists `i_1, …, i_l`,
/// the first letter acting first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWord {
    pub pi_index: usize,
    pub pi: AffineElem,
    pub letters: Vec<usize>,
}

#[derive(Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub cartan: Mat,
    /// Gram matrix of the fundamental weights (inverse Cartan matrix).
    pub gram: Vec<Vec<Rat>>,
    pub simple_roots: Vec<Vec<Rat>>,
    pub fund_weights: Vec<Vec<Rat>>,
    pub theta: Vec<Rat>,
    pub rho: Vec<Rat>,
    pub m: i64,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    theta_coords: Vec<i64>,
    minuscule: Vec<usize>,
    iota: Vec<usize>,
    u_words: BTreeMap<usize, Vec<usize>>,
    weyl_order: OnceLock<u64>,
}

fn cartan_matrix(ty: CartanType, n: usize) -> Mat {
    let mut a = identity(n).into_iter().map(|r| r.into_iter().map(|x| 2 * x).collect()).collect::<Mat>();
    let mut edge = |i: usize, j: usize| {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    match ty {
        CartanType::A => (1..n).for_each(|i| edge(i, i + 1)),
        CartanType::D => {
            (1..n - 1).for_each(|i| edge(i, i + 1));
            edge(n - 2, n);
        }
        CartanType::E6 => {
            for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)] {
                edge(i, j);
            }
        }
    }
    a
}

fn ambient_simple_roots(ty: CartanType, n: usize) -> Vec<Vec<Rat>> {
    let r = |x: i64| Rat::from_integer(x);
    let h = Rat::new(1, 2);
    match ty {
        CartanType::A => (0..n)
            .map(|i| (0..=n).map(|j| r(i64::from(j == i) - i64::from(j == i + 1))).collect())
            .collect(),
        CartanType::D => {
            let mut v: Vec<Vec<Rat>> = (0..n - 1)
                .map(|i| (0..n).map(|j| r(i64::from(j == i) - i64::from(j == i + 1))).collect())
                .collect();
            v.push((0..n).map(|j| r(i64::from(j >= n - 2))).collect());
            v
        }
        CartanType::E6 => {
            let e = |i: usize| -> Vec<Rat> { (1..=8).map(|j| r(i64::from(j == i))).collect() };
            let add = |a: &[Rat], b: &[Rat], s: i64| -> Vec<Rat> {
                a.iter().zip(b).map(|(x, y)| x + y * r(s)).collect()
            };
            let a1: Vec<Rat> = (1..=8).map(|j| if j == 1 || j == 8 { h } else { -h }).collect();
            vec![
                a1,
                add(&e(1), &e(2), 1),
                add(&e(2), &e(1), -1),
                add(&e(3), &e(2), -1),
                add(&e(4), &e(3), -1),
                add(&e(5), &e(4), -1),
            ]
        }
    }
}

fn invert(a: &Mat) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&x| Rat::from_integer(x))
                .chain((0..n).map(|j| Rat::from_integer(i64::from(i == j))))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("singular Cartan matrix");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                let row_c = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(row_c) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn combine(coeffs: &[Rat], vecs: &[Vec<Rat>]) -> Vec<Rat> {
    let d = vecs[0].len();
    (0..d).map(|k| coeffs.iter().zip(vecs).map(|(c, v)| c * v[k]).sum()).collect()
}

impl RootSystem {
    /// Build the root system of the given type and rank.
    pub fn new(ty: CartanType, rank: usize) -> Result<Self> {
        let ok = match ty {
            CartanType::A => (1..=15).contains(&rank),
            CartanType::D => (4..=16).contains(&rank),
            CartanType::E6 => rank == 6,
        };
        if !ok {
            return Err(Error::UnsupportedRootSystem(format!("{ty}{rank}")));
        }
        let n = rank;
        let cartan = cartan_matrix(ty, n);
        let gram = invert(&cartan);
        let simple_roots = ambient_simple_roots(ty, n);
        let fund_weights: Vec<Vec<Rat>> = gram.iter().map(|row| combine(row, &simple_roots)).collect();
        let rho = fund_weights.iter().fold(vec![Rat::zero(); simple_roots[0].len()], |acc, w| {
            acc.iter().zip(w).map(|(a, b)| a + b).collect()
        });
        let m = gram.iter().flatten().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));

        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let v: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
            seen.insert(v.clone());
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let p: i64 = (0..n).map(|k| v[k] * cartan[k][i]).sum();
                let mut w = v.clone();
                w[i] -= p;
                if w.iter().all(|&c| c >= 0) && !seen.contains(&w) {
                    seen.insert(w.clone());
                    queue.push_back(w);
                }
            }
        }
        let mut positive_roots: Vec<Vec<i64>> = seen.into_iter().collect();
        positive_roots.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
        let theta_coords = positive_roots.last().unwrap().clone();
        let theta = combine(&theta_coords.iter().map(|&x| Rat::from_integer(x)).collect::<Vec<_>>(), &simple_roots);
        let minuscule: Vec<usize> = (1..=n).filter(|&r| theta_coords[r - 1] == 1).collect();

        let mut rs = RootSystem {
            cartan_type: ty,
            rank: n,
            cartan,
            gram,
            simple_roots,
            fund_weights,
            theta,
            rho,
            m,
            positive_roots,
            theta_coords,
            minuscule: minuscule.clone(),
            iota: vec![0; n + 1],
            u_words: BTreeMap::new(),
            weyl_order: OnceLock::new(),
        };
        for &r in &minuscule {
            let mut mu = Weight::fundamental(n, r);
            let mut word = Vec::new();
            while let Some(i) = (0..n).find(|&i| mu.0[i] > 0) {
                mu = rs.reflect(&mu, i + 1);
                word.push(i + 1);
            }
            let j = (1..=n).find(|&j| mu == Weight::fundamental(n, j).neg()).expect("antidominant fundamental");
            rs.iota[r] = j;
            rs.u_words.insert(r, word);
        }
        Ok(rs)
    }

    pub fn name(&self) -> String {
        match self.cartan_type {
            CartanType::E6 => "E6".to_string(),
            t => format!("{t}{}", self.rank),
        }
    }

    /// Simple root `α_i` (1-based) in fundamental-weight coordinates.
    pub fn alpha(&self, i: usize) -> Weight {
        Weight(self.cartan[i - 1].iter().map(|&x| x as i32).collect())
    }

    /// Convert simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, c: &[i64]) -> Weight {
        let n = self.rank;
        Weight((0..n).map(|j| (0..n).map(|k| c[k] * self.cartan[k][j]).sum::<i64>() as i32).collect())
    }

    /// Highest root in fundamental-weight coordinates.
    pub fn theta_weight(&self) -> Weight {
        self.root_to_weight(&self.theta_coords)
    }

    pub fn theta_coords(&self) -> &[i64] {
        &self.theta_coords
    }

    /// Invariant form `(b, c)` on the weight lattice.
    pub fn pair(&self, b: &Weight, c: &Weight) -> Rat {
        let mut s = Rat::zero();
        for (i, &bi) in b.0.iter().enumerate() {
            if bi == 0 {
                continue;
            }
            for (j, &cj) in c.0.iter().enumerate() {
                if cj != 0 {
                    s += self.gram[i][j] * Rat::from_integer(i64::from(bi) * i64::from(cj));
                }
            }
        }
        s
    }

    /// `(b, α)` for a root given in simple-root coordinates.
    pub fn pair_root(&self, b: &Weight, c: &[i64]) -> i64 {
        b.0.iter().zip(c).map(|(x, y)| i64::from(*x) * y).sum()
    }

    /// `(b, ρ)`.
    pub fn rho_pairing(&self, b: &Weight) -> Rat {
        let mut s = Rat::zero();
        for (i, &bi) in b.0.iter().enumerate() {
            if bi != 0 {
                let row: Rat = self.gram[i].iter().sum();
                s += row * Rat::from_integer(i64::from(bi));
            }
        }
        s
    }

    /// Simple reflection `s_i` (1-based) on a weight.
    pub fn reflect(&self, b: &Weight, i: usize) -> Weight {
        let k = b.0[i - 1];
        if k == 0 {
            return b.clone();
        }
        Weight(b.0.iter().zip(&self.cartan[i - 1]).map(|(x, a)| x - k * (*a as i32)).collect())
    }

    pub fn weyl_orbit(&self, b: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(b.clone());
        queue.push_back(b.clone());
        while let Some(v) = queue.pop_front() {
            for i in 1..=self.rank {
                let w = self.reflect(&v, i);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Dominant representative of the orbit of `b`.
    pub fn dominant(&self, b: &Weight) -> Weight {
        let mut v = b.clone();
        while let Some(i) = (0..self.rank).find(|&i| v.0[i] < 0) {
            v = self.reflect(&v, i + 1);
        }
        v
    }

    pub fn minuscule_indices(&self) -> &[usize] {
        &self.minuscule
    }

    pub fn is_minuscule(&self, r: usize) -> bool {
        self.minuscule.contains(&r)
    }

    /// The involution with `π_r^{-1} = π_{ι(r)}`; `ι(0) = 0`.
    pub fn iota(&self, r: usize) -> usize {
        self.iota[r]
    }

    /// Reduced word of `u_r`, the shortest Weyl element sending `ω_r` to an
    /// antidominant weight; first letter acts first.
    pub fn u_word(&self, r: usize) -> Result<&[usize]> {
        self.u_words.get(&r).map(|v| v.as_slice()).ok_or(Error::NotMinuscule(r))
    }

    /// Order of the Weyl group, by breadth-first closure of root permutations.
    pub fn weyl_order(&self) -> u64 {
        *self.weyl_order.get_or_init(|| self.enumerate_weyl())
    }

    fn enumerate_weyl(&self) -> u64 {
        let mut roots: Vec<Vec<i64>> = self.positive_roots.clone();
        roots.extend(self.positive_roots.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        let index: BTreeMap<Vec<i64>, u16> = roots.iter().enumerate().map(|(i, v)| (v.clone(), i as u16)).collect();
        let n = self.rank;
        let gens: Vec<Vec<u16>> = (0..n)
            .map(|i| {
                roots
                    .iter()
                    .map(|v| {
                        let p: i64 = (0..n).map(|k| v[k] * self.cartan[k][i]).sum();
                        let mut w = v.clone();
                        w[i] -= p;
                        index[&w]
                    })
                    .collect()
            })
            .collect();
        let id: Vec<u16> = (0..roots.len() as u16).collect();
        let mut seen: FxHashSet<Vec<u16>> = FxHashSet::default();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &gens {
                    let h: Vec<u16> = g.iter().map(|&x| s[x as usize]).collect();
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        seen.len() as u64
    }

    /// Rank generating function of the orbit of a minuscule `ω_r`, graded by
    /// `(ω_r - μ, ρ)`; coefficient `k` counts orbit elements of height `k`.
    pub fn cominuscule_poincare(&self, r: usize) -> Result<Vec<i64>> {
        if !self.is_minuscule(r) {
            return Err(Error::NotMinuscule(r));
        }
        let w = Weight::fundamental(self.rank, r);
        let top = self.rho_pairing(&w);
        let mut coeffs: Vec<i64> = Vec::new();
        for mu in self.weyl_orbit(&w) {
            let h = top - self.rho_pairing(&mu);
            assert!(h.is_integer());
            let h = *h.numer() as usize;
            if coeffs.len() <= h {
                coeffs.resize(h + 1, 0);
            }
            coeffs[h] += 1;
        }
        Ok(coeffs)
    }

    /// Matrix of `s_i` on fundamental-weight coordinates (`i ≥ 1`).
    pub fn reflection_matrix(&self, i: usize) -> Mat {
        let n = self.rank;
        let mut m = identity(n);
        let a = &self.cartan[i - 1];
        for (row, &ar) in a.iter().enumerate() {
            m[row][i - 1] -= ar;
        }
        m
    }

    /// Matrix of the reflection in the highest root.
    pub fn theta_reflection_matrix(&self) -> Mat {
        let n = self.rank;
        let th = self.theta_weight();
        let mut m = identity(n);
        for row in 0..n {
            for col in 0..n {
                m[row][col] -= i64::from(th.0[row]) * self.theta_coords[col];
            }
        }
        m
    }

    fn root_is_negative(&self, g: &Weight) -> bool {
        self.rho_pairing(g).is_negative()
    }

    /// Apply `x` to the affine root `[γ, k]` (γ in weight coordinates).
    pub fn act_affine_root(&self, x: &AffineElem, g: &Weight, k: i64) -> (Weight, i64) {
        let wg = Weight(mat_vec(&x.w, &g.0));
        let p = self.pair(&x.lam, &wg);
        assert!(p.is_integer());
        (wg, k - p.numer())
    }

    fn affine_root_negative(&self, g: &Weight, k: i64) -> bool {
        k < 0 || (k == 0 && self.root_is_negative(g))
    }

    /// Affine simple root `α_i` as `(γ, k)`; `α_0 = [-θ, 1]`.
    pub fn affine_simple_root(&self, i: usize) -> (Weight, i64) {
        if i == 0 {
            (self.theta_weight().neg(), 1)
        } else {
            (self.alpha(i), 0)
        }
    }

    /// `x · s_i` for `0 ≤ i ≤ n`.
    pub fn right_mul_simple(&self, x: &AffineElem, i: usize) -> AffineElem {
        if i == 0 {
            let wt = Weight(mat_vec(&x.w, &self.theta_weight().0));
            AffineElem { w: mat_mul(&x.w, &self.theta_reflection_matrix()), lam: x.lam.add(&wt) }
        } else {
            AffineElem { w: mat_mul(&x.w, &self.reflection_matrix(i)), lam: x.lam.clone() }
        }
    }

    pub fn translation(&self, lam: &Weight) -> AffineElem {
        AffineElem { w: identity(self.rank), lam: lam.clone() }
    }

    /// Composition `x · y`.
    pub fn compose(&self, x: &AffineElem, y: &AffineElem) -> AffineElem {
        let wl = Weight(mat_vec(&x.w, &y.lam.0));
        AffineElem { w: mat_mul(&x.w, &y.w), lam: x.lam.add(&wl) }
    }

    pub fn inverse(&self, x: &AffineElem) -> AffineElem {
        let id = identity(self.rank);
        let mut p = x.w.clone();
        let mut inv = id.clone();
        while p != id {
            inv = p.clone();
            p = mat_mul(&p, &x.w);
        }
        if x.w == id {
            inv = id;
        }
        let lam = Weight(mat_vec(&inv, &x.lam.0)).neg();
        AffineElem { w: inv, lam }
    }

    /// Length: number of positive affine roots sent to negative ones.
    pub fn affine_length(&self, x: &AffineElem) -> usize {
        let mut count = 0;
        for c in &self.positive_roots {
            let g = self.root_to_weight(c);
            let (wg, k0) = self.act_affine_root(x, &g, 0);
            let p = -k0;
            let wneg = self.root_is_negative(&wg);
            let mut c = p.max(0) + i64::from(p >= 0 && wneg);
            c += (-p - 1).max(0) + i64::from(-p >= 1 && !wneg);
            count += c as usize;
        }
        count
    }

    /// Reduced word `π · s_{i_l} ⋯ s_{i_1}` of the translation by `λ`, by
    /// greedy right descent with lowest index first.
    pub fn translation_word_for(&self, lam: &Weight) -> AffineWord {
        let mut x = self.translation(lam);
        let mut letters = Vec::new();
        loop {
            let d = (0..=self.rank).find(|&i| {
                let (g, k) = self.affine_simple_root(i);
                let (g2, k2) = self.act_affine_root(&x, &g, k);
                self.affine_root_negative(&g2, k2)
            });
            match d {
                Some(i) => {
                    x = self.right_mul_simple(&x, i);
                    letters.push(i);
                }
                None => break,
            }
        }
        let pi_index = (1..=self.rank).find(|&r| x.lam == Weight::fundamental(self.rank, r)).unwrap_or(0);
        AffineWord { pi_index, pi: x, letters }
    }

    /// Reduced word for `Y_r = T_{ω_r}` (`r = 0` gives the identity).
    pub fn translation_word(&self, r: usize) -> Result<AffineWord> {
        if r > self.rank {
            return Err(Error::BadIndex(r));
        }
        if r == 0 {
            return Ok(AffineWord { pi_index: 0, pi: self.translation(&Weight::zero(self.rank)), letters: vec![] });
        }
        Ok(self.translation_word_for(&Weight::fundamental(self.rank, r)))
    }

    /// Reassemble the affine element of a word.
    pub fn word_element(&self, w: &AffineWord) -> AffineElem {
        let mut x = w.pi.clone();
        for &i in w.letters.iter().rev() {
            x = self.right_mul_simple(&x, i);
        }
        x
    }

    /// Length-zero element `π_r` for a minuscule `r`, or the identity for `0`.
    pub fn pi_element(&self, r: usize) -> Result<AffineElem> {
        if r == 0 {
            return Ok(self.translation(&Weight::zero(self.rank)));
        }
        if !self.is_minuscule(r) {
            return Err(Error::NotMinuscule(r));
        }
        Ok(self.translation_word(r)?.pi)
    }

    /// Permutation of affine simple roots induced by `π_r`.
    pub fn pi_permutation(&self, r: usize) -> Result<Vec<usize>> {
        let p = self.pi_element(r)?;
        (0..=self.rank)
            .map(|i| {
                let (g, k) = self.affine_simple_root(i);
                let img = self.act_affine_root(&p, &g, k);
                (0..=self.rank)
                    .find(|&j| self.affine_simple_root(j) == img)
                    .ok_or_else(|| Error::Inconsistent(format!("π_{r} does not permute simple roots")))
            })
            .collect()
    }

    /// Weights `c ≤ b` in dominance order that are dominant.
    pub fn dominant_weights_below(&self, b: &Weight) -> Vec<Weight> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(b.clone());
        queue.push_back(b.clone());
        while let Some(v) = queue.pop_front() {
            for c in &self.positive_roots {
                let w = v.sub(&self.root_to_weight(c));
                if w.is_dominant() && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort_by(|x, y| self.rho_pairing(y).cmp(&self.rho_pairing(x)).then(x.cmp(y)));
        out
    }

    /// Stable text dump with sorted root lists.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        s += &format!("type {}\nrank {}\nm {}\nweyl_order {}\n", self.name(), self.rank, self.m, self.weyl_order());
        s += "cartan\n";
        for row in &self.cartan {
            s += &format!("  {}\n", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        }
        s += &format!("minuscule {:?}\n", self.minuscule);
        s += &format!("theta {:?}\n", self.theta_coords);
        s += &format!("positive_roots {}\n", self.positive_roots.len());
        for r in &self.positive_roots {
            s += &format!("  {:?}\n", r);
        }
        s += "fundamental_weights\n";
        for (i, w) in self.fund_weights.iter().enumerate() {
            s += &format!("  w{} = ({})\n", i + 1, w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
        }
        s
    }

    pub fn one_rat() -> Rat {
        Rat::one()
    }
}
