//! Exact truncated formal characters: so(k) irreducibles by Freudenthal's
//! recursion, generalised Verma characters, and the Weyl-numerator
//! expressions χ^V, χ^BL, χ^BL₀ with their truncated expansions.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::Deref;
use std::sync::{Arc, RwLock};

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootdata::{so_dominant, OddRoot, RootSystem};
use crate::weight::{Coords, HalfInt, Weight};
use crate::weyl::{chamber_element, dominant_rep};

/// δ-levels from `top` down to `top − depth`, inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub top: HalfInt,
    pub depth: u32,
}

impl Window {
    pub fn new(top: HalfInt, depth: u32) -> Self {
        Window { top, depth }
    }

    /// Window with the given top reaching down to the given bottom (doubled).
    pub(crate) fn spanning(top_twice: i32, bottom_twice: i32) -> Self {
        Window {
            top: HalfInt::from_twice(top_twice),
            depth: ((top_twice - bottom_twice).max(0) / 2) as u32,
        }
    }

    pub fn top_twice(&self) -> i32 {
        self.top.twice()
    }

    pub fn bottom_twice(&self) -> i32 {
        self.top.twice() - 2 * self.depth as i32
    }

    pub fn contains_twice(&self, d: i32) -> bool {
        d <= self.top_twice() && d >= self.bottom_twice()
    }
}

/// Finitely supported map weight → integer, restricted to a window.
#[derive(Clone, Debug)]
pub struct FormalCharacter {
    window: Window,
    terms: HashMap<Weight, i64>,
}

impl PartialEq for FormalCharacter {
    fn eq(&self, o: &Self) -> bool {
        self.window == o.window && self.terms == o.terms
    }
}

impl Eq for FormalCharacter {}

impl FormalCharacter {
    pub fn zero(window: Window) -> Self {
        FormalCharacter {
            window,
            terms: HashMap::new(),
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Adds c·e^w; weights outside the window are dropped.
    pub fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 || !self.window.contains_twice(w.twice()[0]) {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    fn from_map(window: Window, mut terms: HashMap<Weight, i64>) -> Self {
        terms.retain(|w, c| *c != 0 && window.contains_twice(w.twice()[0]));
        FormalCharacter { window, terms }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn total_multiplicity(&self) -> i64 {
        self.terms.values().sum()
    }

    fn combine(&self, o: &Self, c: i64) -> Result<Self> {
        if self.window != o.window {
            return Err(Error::WindowMismatch);
        }
        let mut t = self.terms.clone();
        for (w, v) in &o.terms {
            *t.entry(w.clone()).or_insert(0) += c * v;
        }
        Ok(Self::from_map(self.window, t))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, -1)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_map(
            self.window,
            self.terms.iter().map(|(w, v)| (w.clone(), c * v)).collect(),
        )
    }

    pub fn restrict(&self, window: Window) -> Self {
        Self::from_map(window, self.terms.clone())
    }

    /// Terms sorted by descending δ, then ascending ε lexicographically.
    pub fn sorted_terms(&self) -> Vec<(Weight, i64)> {
        let mut v: Vec<(Weight, i64)> = self.terms.iter().map(|(w, c)| (w.clone(), *c)).collect();
        v.sort_by(|(a, _), (b, _)| {
            b.twice()[0]
                .cmp(&a.twice()[0])
                .then_with(|| a.eps_twice().cmp(b.eps_twice()))
        });
        v
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(w, c)| json!({"weight": w.to_string(), "mult": c}))
                .collect(),
        )
    }

    /// Multiplicities at each δ-level are invariant under W₀.
    pub fn is_w0_invariant(&self, rs: &RootSystem) -> bool {
        self.terms.iter().all(|(w, c)| {
            let rep = Weight::from_parts(w.twice()[0], &dominant_rep(w.eps_twice(), rs.series()));
            self.get(&rep) == *c
        })
    }

    /// Invariant under negating the δ-coordinate.
    pub fn is_delta_symmetric(&self) -> bool {
        self.terms.iter().all(|(w, c)| {
            let flipped = w.with_delta_twice(-w.twice()[0]);
            !self.window.contains_twice(flipped.twice()[0]) || self.get(&flipped) == *c
        })
    }
}

/// Sum of g0-irreducible characters: (δ-level | so(k) highest weight) → multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicCharacter {
    window: Window,
    parts: BTreeMap<Weight, i64>,
}

impl IsotypicCharacter {
    pub fn zero(window: Window) -> Self {
        IsotypicCharacter {
            window,
            parts: BTreeMap::new(),
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn add_part(&mut self, w: Weight, c: i64) {
        if c == 0 || !self.window.contains_twice(w.twice()[0]) {
            return;
        }
        let e = self.parts.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.parts.remove(&w);
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.parts.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.parts.iter()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.parts.values().all(|&c| c > 0)
    }

    fn combine(&self, o: &Self, c: i64) -> Result<Self> {
        if self.window != o.window {
            return Err(Error::WindowMismatch);
        }
        let mut out = self.clone();
        for (w, v) in &o.parts {
            out.add_part(w.clone(), c * v);
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, -1)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.window);
        for (w, v) in &self.parts {
            out.add_part(w.clone(), c * v);
        }
        out
    }

    /// Same parts on another window; parts outside it are dropped.
    pub fn restrict(&self, window: Window) -> Self {
        let mut out = Self::zero(window);
        for (w, v) in &self.parts {
            out.add_part(w.clone(), *v);
        }
        out
    }
}

/// Weight multiplicities of an so(k) irreducible.
#[derive(Clone, Debug)]
pub struct SoCharacter {
    pub highest: Coords,
    /// Dominant weights with multiplicities, in Freudenthal processing order.
    pub dominant: Vec<(Coords, i64)>,
    pub weights: Vec<(Coords, i64)>,
    pub dim: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WeylSum {
    /// Over W = W₀ × {1, σ}.
    Full,
    /// Over W₀ only.
    Even,
}

/// coeff · (1/R₀̄) Σ_w sign(w) w(e^{base} Π_{β ∈ odd} (1 + e^{−β})).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumeratorTerm {
    pub coeff: Ratio<i64>,
    pub base: Weight,
    pub odd: Vec<OddRoot>,
    pub sum: WeylSum,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NumeratorExpression {
    pub terms: Vec<NumeratorTerm>,
}

impl NumeratorExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(term: NumeratorTerm) -> Self {
        NumeratorExpression { terms: vec![term] }
    }
}

type Cache<K, V> = RwLock<HashMap<K, Arc<V>>>;

/// osp(k|2) together with the caches behind character computations.
pub struct Osp {
    rs: RootSystem,
    so_cache: Cache<Coords, SoCharacter>,
    /// Keyed by (weight, doubled window bottom).
    pub(crate) chl_cache: Cache<(Weight, i32), IsotypicCharacter>,
    pub(crate) verma_cache: Cache<(Weight, i32), IsotypicCharacter>,
}

impl Deref for Osp {
    type Target = RootSystem;
    fn deref(&self) -> &RootSystem {
        &self.rs
    }
}

pub(crate) fn cached<K, V, F>(cache: &Cache<K, V>, key: K, f: F) -> Result<Arc<V>>
where
    K: std::hash::Hash + Eq,
    F: FnOnce() -> Result<V>,
{
    if let Some(v) = cache.read().expect("cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(f()?);
    cache
        .write()
        .expect("cache poisoned")
        .entry(key)
        .or_insert_with(|| v.clone());
    Ok(v)
}

impl Osp {
    pub fn new(k: i64) -> Result<Self> {
        Ok(Osp {
            rs: RootSystem::new(k)?,
            so_cache: RwLock::default(),
            chl_cache: RwLock::default(),
            verma_cache: RwLock::default(),
        })
    }

    pub fn roots(&self) -> &RootSystem {
        &self.rs
    }

    pub(crate) fn so_irrep(&self, nu: &[i32]) -> Result<Arc<SoCharacter>> {
        if nu.len() != self.m() || !so_dominant(nu, self.series()) {
            return Err(Error::NotG0Dominant(format!("{nu:?}")));
        }
        cached(&self.so_cache, nu.iter().copied().collect(), || {
            Ok(self.freudenthal(nu))
        })
    }

    fn freudenthal(&self, nu: &[i32]) -> SoCharacter {
        let series = self.series();
        let roots: Vec<&[i32]> = self.so_positive().iter().map(|a| a.eps_twice()).collect();
        let rho = self.rho().eps_twice().to_vec();
        let dot = |a: &[i32], b: &[i32]| -> i64 {
            a.iter().zip(b).map(|(x, y)| *x as i64 * *y as i64).sum()
        };

        let top: Coords = nu.iter().copied().collect();
        let mut seen: HashSet<Coords> = HashSet::from([top.clone()]);
        let mut queue = vec![top.clone()];
        while let Some(mu) = queue.pop() {
            for a in &roots {
                let x: Coords = mu.iter().zip(a.iter()).map(|(p, q)| p - q).collect();
                if so_dominant(&x, series) && seen.insert(x.clone()) {
                    queue.push(x);
                }
            }
        }
        let mut order: Vec<Coords> = seen.into_iter().collect();
        order.sort_by(|a, b| dot(b, &rho).cmp(&dot(a, &rho)).then_with(|| b.cmp(a)));

        let shifted_norm = |x: &[i32]| -> i64 {
            x.iter()
                .zip(&rho)
                .map(|(p, r)| ((p + r) as i64).pow(2))
                .sum()
        };
        let top_norm = shifted_norm(nu);
        let mut mult: HashMap<Coords, i64> = HashMap::new();
        let mut dominant = Vec::with_capacity(order.len());
        for mu in order {
            let c = if mu == top {
                1
            } else {
                let mut num = 0i64;
                for a in &roots {
                    let mut j = 1;
                    loop {
                        let w: Coords = mu.iter().zip(a.iter()).map(|(p, q)| p + j * q).collect();
                        let rep = dominant_rep(&w, series);
                        let c = mult.get(&rep).copied().unwrap_or(0);
                        if c == 0 {
                            break;
                        }
                        num += c * dot(&w, a);
                        j += 1;
                    }
                }
                let den = top_norm - shifted_norm(&mu);
                debug_assert!(den > 0 && (2 * num) % den == 0);
                2 * num / den
            };
            if c > 0 {
                mult.insert(mu.clone(), c);
                dominant.push((mu, c));
            }
        }

        let mut weights = Vec::new();
        let mut dim = 0;
        for (d, c) in &dominant {
            let mut orbit: Vec<Coords> = self
                .w0()
                .iter()
                .map(|g| {
                    let mut out = Coords::from_elem(0, d.len());
                    g.act_eps(d, &mut out);
                    out
                })
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            dim += c * orbit.len() as i64;
            weights.extend(orbit.into_iter().map(|o| (o, *c)));
        }
        SoCharacter {
            highest: top,
            dominant,
            weights,
            dim,
        }
    }

    /// Character of the so(k) irreducible with highest weight ν, at δ-level 0.
    pub fn so_char(&self, nu: &[HalfInt]) -> Result<FormalCharacter> {
        let t: Vec<i32> = nu.iter().map(|x| x.twice()).collect();
        let so = self.so_irrep(&t)?;
        let mut ch = FormalCharacter::zero(Window::new(HalfInt::ZERO, 0));
        for (e, c) in &so.weights {
            ch.add_term(Weight::from_parts(0, e), *c);
        }
        Ok(ch)
    }

    /// Weyl dimension formula for so(k), on a dominant doubled highest weight.
    pub fn so_dim(&self, nu: &[i32]) -> i64 {
        let shifted: Vec<i32> = nu
            .iter()
            .zip(self.rho().eps_twice())
            .map(|(a, b)| a + b)
            .collect();
        let rho = self.rho().eps_twice();
        let mut num = Ratio::from_integer(1i128);
        for a in self.so_positive() {
            let a = a.eps_twice();
            let p: i128 = shifted.iter().zip(a).map(|(x, y)| (*x * *y) as i128).sum();
            let q: i128 = rho.iter().zip(a).map(|(x, y)| (*x * *y) as i128).sum();
            num *= Ratio::new(p, q);
        }
        debug_assert!(num.is_integer());
        num.to_integer() as i64
    }

    /// e^{λ₀δ}·ch L⁰(λ)·Π_{β∈Δ₁⁺}(1+e^{−β})·Σ_j e^{−2jδ}, on the window (λ₀, depth).
    pub fn verma_char(&self, lambda: &Weight, depth: u32) -> Result<FormalCharacter> {
        self.require_integral_g0(lambda)?;
        let window = Window::new(lambda.delta(), depth);
        let bottom = window.bottom_twice();
        let l0 = lambda.twice()[0];
        let so = self.so_irrep(lambda.eps_twice())?;
        let mut cur: HashMap<Weight, i64> = so
            .weights
            .iter()
            .map(|(e, c)| (Weight::from_parts(l0, e), *c))
            .collect();
        for beta in self.odd_weights() {
            let mut next = cur.clone();
            for (w, c) in &cur {
                let nw = w - beta;
                if nw.twice()[0] >= bottom {
                    *next.entry(nw).or_insert(0) += c;
                }
            }
            cur = next;
        }
        let mut out: HashMap<Weight, i64> = HashMap::with_capacity(cur.len() * 2);
        for (w, c) in cur {
            let mut d = w.twice()[0];
            while d >= bottom {
                *out.entry(w.with_delta_twice(d)).or_insert(0) += c;
                d -= 4;
            }
        }
        Ok(FormalCharacter::from_map(window, out))
    }

    fn term(&self, lambda: &Weight, drop: Option<OddRoot>, sum: WeylSum) -> NumeratorTerm {
        NumeratorTerm {
            coeff: Ratio::from_integer(1),
            base: lambda + self.rho_even(),
            odd: self
                .odd_positive()
                .iter()
                .copied()
                .filter(|r| Some(*r) != drop)
                .collect(),
            sum,
        }
    }

    /// χ^V_λ: all odd roots, summed over W.
    pub fn chi_v(&self, lambda: &Weight) -> Result<NumeratorExpression> {
        self.check_rank(lambda)?;
        if !self.is_integral(lambda) {
            return Err(Error::NotIntegral(lambda.to_string()));
        }
        Ok(NumeratorExpression::single(self.term(
            lambda,
            None,
            WeylSum::Full,
        )))
    }

    /// χ^BL_λ: the atypical root omitted, summed over W.
    pub fn chi_bl(&self, lambda: &Weight) -> Result<NumeratorExpression> {
        let d = self.require_atypical(lambda)?;
        Ok(NumeratorExpression::single(self.term(
            lambda,
            Some(d.root),
            WeylSum::Full,
        )))
    }

    /// χ^BL₀_λ: the atypical root omitted, summed over W₀ only.
    pub fn chi_bl0(&self, lambda: &Weight) -> Result<NumeratorExpression> {
        let d = self.require_atypical(lambda)?;
        Ok(NumeratorExpression::single(self.term(
            lambda,
            Some(d.root),
            WeylSum::Even,
        )))
    }

    /// Truncated expansion as a sum of g0-irreducibles. The division by
    /// R₀̄ factors as the Weyl denominator of so(k), handled by the Weyl
    /// character formula, times e^δ − e^{−δ}, expanded as a geometric series.
    pub fn expand_isotypic(
        &self,
        expr: &NumeratorExpression,
        window: Window,
    ) -> Result<IsotypicCharacter> {
        if expr.terms.is_empty() {
            return Ok(IsotypicCharacter::zero(window));
        }
        let highest = expr
            .terms
            .iter()
            .map(|t| t.base.twice()[0] - 2)
            .max()
            .unwrap_or(0);
        if window.top_twice() < highest {
            return Err(Error::InvalidWindow(format!(
                "top {} lies below the leading level {}",
                window.top,
                HalfInt::from_twice(highest)
            )));
        }
        let denom = expr
            .terms
            .iter()
            .fold(1i64, |acc, t| lcm(acc, *t.coeff.denom()));
        let rho_eps = self.rho().eps_twice();
        let bottom = window.bottom_twice();
        let top = window.top_twice();
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for term in &expr.terms {
            self.check_rank(&term.base)?;
            let c = (term.coeff * denom).to_integer();
            let odd: Vec<&Weight> = term
                .odd
                .iter()
                .map(|r| &self.odd_weights()[self.odd_index(*r).expect("odd root")])
                .collect();
            for mask in 0u32..(1 << odd.len()) {
                let mut eta = term.base.clone();
                for (i, b) in odd.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        eta = &eta - b;
                    }
                }
                let Some(g) = chamber_element(eta.eps_twice(), self.series()) else {
                    continue;
                };
                let mut nu = Coords::from_elem(0, self.m());
                g.act_eps(eta.eps_twice(), &mut nu);
                for (x, r) in nu.iter_mut().zip(rho_eps) {
                    *x -= r;
                }
                let sgn = g.sign() as i64;
                let n = eta.twice()[0];
                if n % 2 != 0 {
                    return Err(Error::Unsupported(format!(
                        "expansion of a half-integral δ-coordinate in {}",
                        term.base
                    )));
                }
                let (start, stop, lsign) = match term.sum {
                    WeylSum::Full if n > 0 => (n - 2, -n + 2, 1),
                    WeylSum::Full if n < 0 => (-n - 2, n + 2, -1),
                    WeylSum::Full => continue,
                    WeylSum::Even => (n - 2, bottom, 1),
                };
                let mut level = start;
                if level > top {
                    level -= (level - top + 3) / 4 * 4;
                }
                while level >= stop.max(bottom) {
                    let key = Weight::from_parts(level, &nu);
                    *acc.entry(key).or_insert(0) += c * sgn * lsign;
                    level -= 4;
                }
            }
        }
        let mut out = IsotypicCharacter::zero(window);
        for (w, v) in acc {
            if v % denom != 0 {
                return Err(Error::Internal(format!(
                    "non-integral multiplicity {v}/{denom} at {w}"
                )));
            }
            out.add_part(w, v / denom);
        }
        Ok(out)
    }

    pub fn expand(&self, expr: &NumeratorExpression, window: Window) -> Result<FormalCharacter> {
        let iso = self.expand_isotypic(expr, window)?;
        self.to_formal(&iso)
    }

    /// Full weight expansion of a sum of g0-irreducibles.
    pub fn to_formal(&self, iso: &IsotypicCharacter) -> Result<FormalCharacter> {
        let mut out: HashMap<Weight, i64> = HashMap::new();
        for (key, c) in iso.iter() {
            let so = self.so_irrep(key.eps_twice())?;
            let d = key.twice()[0];
            for (e, m) in &so.weights {
                *out.entry(Weight::from_parts(d, e)).or_insert(0) += c * m;
            }
        }
        Ok(FormalCharacter::from_map(iso.window(), out))
    }

    /// Total multiplicity of a sum of g0-irreducibles.
    pub fn total_multiplicity(&self, iso: &IsotypicCharacter) -> Result<i64> {
        let mut t = 0;
        for (key, c) in iso.iter() {
            t += c * self.so_irrep(key.eps_twice())?.dim;
        }
        Ok(t)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn h(v: &[i32]) -> Vec<HalfInt> {
        v.iter().map(|&x| HalfInt::from_twice(x)).collect()
    }

    #[test]
    fn so_char_examples() {
        let g = Osp::new(3).unwrap();
        let ch = g.so_char(&h(&[2])).unwrap();
        assert_eq!(ch.len(), 3);
        assert!(ch.iter().all(|(_, c)| *c == 1));
        let g = Osp::new(4).unwrap();
        let ch = g.so_char(&h(&[2, 0])).unwrap();
        assert_eq!(ch.len(), 4);
        assert_eq!(ch.get(&w("0|0,1")), 1);
        assert_eq!(ch.get(&w("0|0,0")), 0);
        let g = Osp::new(5).unwrap();
        assert_eq!(g.so_char(&h(&[2, 2])).unwrap().total_multiplicity(), 10);
        // spin representation of so(5)
        assert_eq!(g.so_char(&h(&[1, 1])).unwrap().total_multiplicity(), 4);
        assert!(g.so_char(&h(&[0, 2])).is_err());
    }

    #[test]
    fn so_char_matches_weyl_dimension() {
        for k in 3..=9 {
            let g = Osp::new(k).unwrap();
            let m = g.m();
            let odd = g.s_twice() == 1;
            for a in 0..4 {
                for b in 0..=a {
                    let mut nu = vec![0; m];
                    nu[0] = 2 * a + i32::from(odd);
                    if m > 1 {
                        nu[1] = 2 * b + i32::from(odd);
                    }
                    for x in nu.iter_mut().skip(2) {
                        *x = i32::from(odd);
                    }
                    let so = g.so_irrep(&nu).unwrap();
                    assert_eq!(so.dim, g.so_dim(&nu), "k={k} nu={nu:?}");
                }
            }
        }
    }

    #[test]
    fn verma_examples() {
        let g = Osp::new(3).unwrap();
        let l = w("1|0");
        let v0 = g.verma_char(&l, 0).unwrap();
        assert_eq!(v0.total_multiplicity(), 1);
        let level = |ch: &FormalCharacter, d: i32| -> i64 {
            ch.iter()
                .filter(|(x, _)| x.twice()[0] == d)
                .map(|(_, c)| c)
                .sum()
        };
        let v1 = g.verma_char(&l, 1).unwrap();
        assert_eq!(level(&v1, 0), 3);
        let v2 = g.verma_char(&l, 2).unwrap();
        assert_eq!(level(&v2, -2), 4);
        assert_eq!(v2.get(&l), 1);
        assert!(v2.is_w0_invariant(&g));
        assert!(g.verma_char(&w("1/2|0"), 2).is_err());
        assert!(g.verma_char(&w("1|1/2"), 2).is_ok());
    }

    #[test]
    fn chi_examples() {
        let g = Osp::new(3).unwrap();
        assert_eq!(g.chi_v(&w("2|0")).unwrap().terms[0].odd.len(), 3);
        let bl = g.chi_bl(&w("2|1")).unwrap();
        let mut odd = bl.terms[0].odd.clone();
        odd.sort();
        assert_eq!(odd, vec![OddRoot::DeltaMinusEps(1), OddRoot::Delta]);
        assert!(g.chi_bl(&w("2|0")).is_err());
        let adj = g
            .expand(
                &g.chi_v(&w("2|0")).unwrap(),
                Window::new(HalfInt::from_int(2), 6),
            )
            .unwrap();
        assert_eq!(adj.total_multiplicity(), 12);
        assert_eq!(adj.get(&w("2|0")), 1);
        assert!(adj.is_w0_invariant(&g) && adj.is_delta_symmetric());
        let z = g
            .expand(&NumeratorExpression::zero(), Window::new(HalfInt::ZERO, 3))
            .unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn non_regular_chi_v_vanishes() {
        let g = Osp::new(4).unwrap();
        let sing = w("2|0,1");
        assert!(!g.is_regular(&sing));
        let ch = g
            .expand(
                &g.chi_v(&sing).unwrap(),
                Window::new(HalfInt::from_int(2), 8),
            )
            .unwrap();
        assert!(ch.is_empty());
    }

    #[test]
    fn window_arithmetic() {
        let g = Osp::new(5).unwrap();
        let a = g.verma_char(&w("1|1,0"), 3).unwrap();
        assert!(a.sub(&a).unwrap().is_empty());
        assert_eq!(a.add(&a).unwrap(), a.scale(2));
        let b = g.verma_char(&w("1|1,0"), 2).unwrap();
        assert_eq!(a.add(&b), Err(Error::WindowMismatch));
        assert_eq!(a.restrict(b.window()), b);
    }

    /// The W₀-numerator route reproduces the product formula for Verma characters.
    #[test]
    fn verma_two_routes() {
        for k in 3..=7 {
            let g = Osp::new(k).unwrap();
            let m = g.m();
            let mut lams = vec![Weight::zero(m)];
            let mut t = vec![2; m + 1];
            t[0] = 4;
            t[m] = 0;
            lams.push(Weight::from_twice(t));
            if g.s_twice() == 1 {
                lams.push(Weight::from_twice(
                    (0..=m).map(|i| if i == 0 { -2 } else { 1 }),
                ));
            }
            for l in lams {
                let depth = 5;
                let v = g.verma_char(&l, depth).unwrap();
                let mut e = g.term(&l, None, WeylSum::Even);
                e.coeff = Ratio::from_integer(1);
                let x = g
                    .expand(&NumeratorExpression::single(e), v.window())
                    .unwrap();
                assert_eq!(x, v, "k={k} λ={l}");
            }
        }
    }

    /// Multiplying an expansion back by R₀̄ recovers the alternating sum.
    #[test]
    fn expansion_times_denominator() {
        for k in 3..=6 {
            let g = Osp::new(k).unwrap();
            let m = g.m();
            let lam = Weight::from_twice((0..=m).map(|i| if i <= 1 { 2 } else { 0 }));
            let win = Window::new(lam.delta(), 8);
            for sum in [WeylSum::Full, WeylSum::Even] {
                let t = g.term(&lam, None, sum);
                let ch = g
                    .expand(&NumeratorExpression::single(t.clone()), win)
                    .unwrap();
                // numerator Σ_w sign(w) e^{w(base − ΣB)}
                let group = match sum {
                    WeylSum::Full => g.weyl_elements(),
                    WeylSum::Even => g.w0().to_vec(),
                };
                let mut numer: HashMap<Weight, i64> = HashMap::new();
                for mask in 0u32..(1 << t.odd.len()) {
                    let mut eta = t.base.clone();
                    for (i, r) in t.odd.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            eta = &eta - &r.weight(m);
                        }
                    }
                    for x in &group {
                        *numer.entry(x.act(&eta)).or_insert(0) += x.sign() as i64;
                    }
                }
                // R₀̄ = Π (e^{α/2} − e^{−α/2})
                let mut rr: HashMap<Weight, i64> = HashMap::from([(Weight::zero(m), 1)]);
                for a in g.even_positive() {
                    let half = Weight::from_twice(a.twice().iter().map(|x| x / 2));
                    let mut next = HashMap::new();
                    for (x, c) in &rr {
                        *next.entry(x + &half).or_insert(0) += c;
                        *next.entry(x - &half).or_insert(0) -= c;
                    }
                    rr = next;
                }
                let mut prod: HashMap<Weight, i64> = HashMap::new();
                for (x, c) in ch.iter() {
                    for (y, d) in &rr {
                        *prod.entry(x + y).or_insert(0) += c * d;
                    }
                }
                let lo = win.bottom_twice() + 2;
                let hi = win.top_twice() - 2;
                let keys: HashSet<&Weight> = prod.keys().chain(numer.keys()).collect();
                for key in keys {
                    let d = key.twice()[0];
                    if d >= lo && d <= hi {
                        let a = prod.get(key).copied().unwrap_or(0);
                        let b = numer.get(key).copied().unwrap_or(0);
                        assert_eq!(a, b, "k={k} {sum:?} at {key}");
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_sp2_symmetry_for_finite() {
        let g = Osp::new(5).unwrap();
        let l = w("3|1,0");
        let ch = g
            .expand(&g.chi_v(&l).unwrap(), Window::new(l.delta(), 8))
            .unwrap();
        assert!(ch.is_w0_invariant(&g));
        assert!(ch.is_delta_symmetric());
        assert!(ch.total_multiplicity() > 0);
    }

    proptest! {
        #[test]
        fn verma_slices_are_so_characters(k in 3i64..8, a in 0i32..3, b in 0i32..3, l0 in -3i32..4) {
            let g = Osp::new(k).unwrap();
            let m = g.m();
            let half = i32::from(g.s_twice() == 1);
            let mut t = vec![2 * l0];
            t.push(2 * (a + b) + half);
            if m > 1 { t.push(2 * b + half); }
            for _ in 2..m { t.push(half); }
            let l = Weight::from_twice(t);
            let v = g.verma_char(&l, 4).unwrap();
            prop_assert!(v.is_w0_invariant(&g));
            prop_assert_eq!(v.get(&l), 1);
            prop_assert!(v.iter().all(|(_, c)| *c > 0));
        }
    }
}
