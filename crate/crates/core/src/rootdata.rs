//! Root data of osp(k|2): even and odd positive roots, simple roots, the
//! three ρ-vectors, the bilinear form and the weight conditions built on them.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weight::{HalfInt, Weight};
use crate::weyl::WeylElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Series {
    /// k odd, so(k) of type B.
    B,
    /// k even, so(k) of type D.
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlgebraData {
    pub k: u32,
    pub m: usize,
    pub series: Series,
}

impl AlgebraData {
    pub fn new(k: i64) -> Result<Self> {
        if !(3..=64).contains(&k) {
            return Err(Error::InvalidRank(k));
        }
        let series = if k % 2 == 0 { Series::D } else { Series::B };
        Ok(AlgebraData {
            k: k as u32,
            m: (k / 2) as usize,
            series,
        })
    }

    /// Twice s: 2 for D (s = 1), 1 for B (s = 1/2).
    pub fn s_twice(&self) -> i32 {
        match self.series {
            Series::D => 2,
            Series::B => 1,
        }
    }

    pub fn s(&self) -> HalfInt {
        HalfInt::from_twice(self.s_twice())
    }
}

/// Positive odd roots δ±ε_ℓ, and δ itself for the B-series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OddRoot {
    DeltaMinusEps(usize),
    DeltaPlusEps(usize),
    Delta,
}

impl OddRoot {
    pub fn weight(&self, m: usize) -> Weight {
        let mut w = Weight::zero(m);
        let t = w.twice_mut();
        t[0] = 2;
        match *self {
            OddRoot::DeltaMinusEps(l) => t[l] = -2,
            OddRoot::DeltaPlusEps(l) => t[l] = 2,
            OddRoot::Delta => {}
        }
        w
    }

    /// Index ℓ of the ε-coordinate involved, if any.
    pub fn ell(&self) -> Option<usize> {
        match *self {
            OddRoot::DeltaMinusEps(l) | OddRoot::DeltaPlusEps(l) => Some(l),
            OddRoot::Delta => None,
        }
    }
}

impl fmt::Display for OddRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OddRoot::DeltaMinusEps(l) => write!(f, "delta-eps{l}"),
            OddRoot::DeltaPlusEps(l) => write!(f, "delta+eps{l}"),
            OddRoot::Delta => f.write_str("delta"),
        }
    }
}

impl Serialize for OddRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightFlags {
    pub integral: bool,
    pub g0_dominant: bool,
    pub g_dominant: bool,
    pub regular: bool,
    pub typical: bool,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    alg: AlgebraData,
    /// 2δ followed by the so(k) positive roots.
    even_pos: Vec<Weight>,
    so_pos: Vec<Weight>,
    odd_pos: Vec<OddRoot>,
    odd_weights: Vec<Weight>,
    simple: Vec<Weight>,
    rho: Weight,
    rho_one: Weight,
    rho_even: Weight,
    w0: Vec<WeylElement>,
}

impl RootSystem {
    pub fn new(k: i64) -> Result<Self> {
        let alg = AlgebraData::new(k)?;
        let m = alg.m;
        let unit = |i: usize, c: i32| {
            let mut w = Weight::zero(m);
            w.twice_mut()[i] = 2 * c;
            w
        };
        let plus = |a: &Weight, b: &Weight| a + b;

        let mut so_pos = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                so_pos.push(plus(&unit(i, 1), &unit(j, -1)));
                so_pos.push(plus(&unit(i, 1), &unit(j, 1)));
            }
        }
        if alg.series == Series::B {
            for i in 1..=m {
                so_pos.push(unit(i, 1));
            }
        }
        let mut even_pos = vec![unit(0, 2)];
        even_pos.extend(so_pos.iter().cloned());

        let mut odd_pos = Vec::new();
        for l in 1..=m {
            odd_pos.push(OddRoot::DeltaMinusEps(l));
            odd_pos.push(OddRoot::DeltaPlusEps(l));
        }
        if alg.series == Series::B {
            odd_pos.push(OddRoot::Delta);
        }
        let odd_weights = odd_pos.iter().map(|r| r.weight(m)).collect();

        let mut simple = vec![OddRoot::DeltaMinusEps(1).weight(m)];
        for i in 1..m {
            simple.push(plus(&unit(i, 1), &unit(i + 1, -1)));
        }
        match alg.series {
            Series::D => simple.push(plus(&unit(m - 1, 1), &unit(m, 1))),
            Series::B => simple.push(unit(m, 1)),
        }

        let s2 = alg.s_twice();
        let mi = m as i32;
        // ρ = (s−m | m−s, m−s−1, …, 1−s)
        let mut rho_t = vec![s2 - 2 * mi];
        for i in 1..=mi {
            rho_t.push(2 * mi + 2 - s2 - 2 * i);
        }
        let rho = Weight::from_twice(rho_t);
        // ρ₁ = (m+1−s | 0, …, 0)
        let mut rho_one = Weight::zero(m);
        rho_one.twice_mut()[0] = 2 * mi + 2 - s2;
        let rho_even = &rho + &rho_one;

        let w0 = WeylElement::enumerate_w0(m, alg.series);
        Ok(RootSystem {
            alg,
            even_pos,
            so_pos,
            odd_pos,
            odd_weights,
            simple,
            rho,
            rho_one,
            rho_even,
            w0,
        })
    }

    pub fn algebra(&self) -> AlgebraData {
        self.alg
    }

    pub fn k(&self) -> u32 {
        self.alg.k
    }

    pub fn m(&self) -> usize {
        self.alg.m
    }

    pub fn series(&self) -> Series {
        self.alg.series
    }

    pub fn s_twice(&self) -> i32 {
        self.alg.s_twice()
    }

    /// Δ₀̄⁺: 2δ and the so(k) positive roots.
    pub fn even_positive(&self) -> &[Weight] {
        &self.even_pos
    }

    /// Δ₀⁺: the so(k) positive roots.
    pub fn so_positive(&self) -> &[Weight] {
        &self.so_pos
    }

    pub fn odd_positive(&self) -> &[OddRoot] {
        &self.odd_pos
    }

    pub fn odd_weights(&self) -> &[Weight] {
        &self.odd_weights
    }

    pub fn odd_index(&self, r: OddRoot) -> Option<usize> {
        self.odd_pos.iter().position(|&x| x == r)
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn rho_one(&self) -> &Weight {
        &self.rho_one
    }

    pub fn rho_even(&self) -> &Weight {
        &self.rho_even
    }

    pub fn w0(&self) -> &[WeylElement] {
        &self.w0
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.len() != self.m() + 1 {
            return Err(Error::RankMismatch {
                expected: self.m() + 1,
                got: w.len(),
            });
        }
        Ok(())
    }

    pub fn parse_weight(&self, s: &str) -> Result<Weight> {
        let w: Weight = s.parse()?;
        self.check_rank(&w)?;
        Ok(w)
    }

    /// Four times the bilinear form (μ,ν) = −μ₀ν₀ + Σ μᵢνᵢ, on doubled coordinates.
    pub fn form_x4(&self, a: &Weight, b: &Weight) -> i64 {
        let (a, b) = (a.twice(), b.twice());
        let mut acc = -(a[0] as i64) * (b[0] as i64);
        for i in 1..a.len() {
            acc += a[i] as i64 * b[i] as i64;
        }
        acc
    }

    pub fn form(&self, a: &Weight, b: &Weight) -> Result<Ratio<i64>> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        Ok(Ratio::new(self.form_x4(a, b), 4))
    }

    pub fn rho_shift(&self, w: &Weight) -> Weight {
        w + &self.rho
    }

    pub fn rho_unshift(&self, w: &Weight) -> Weight {
        w - &self.rho
    }

    /// λ₀ ∈ Z and the λᵢ uniformly in Z or uniformly in s+Z.
    pub fn is_integral(&self, w: &Weight) -> bool {
        let t = w.twice();
        if t[0] % 2 != 0 {
            return false;
        }
        let all_int = t[1..].iter().all(|x| x % 2 == 0);
        let all_shift = t[1..].iter().all(|x| (x - self.s_twice()) % 2 == 0);
        all_int || all_shift
    }

    /// λ₁ ≥ … ≥ λ_{m−1} ≥ |λ_m|, with λ_m ≥ 0 for the B-series. No condition on λ₀.
    pub fn is_g0_dominant(&self, w: &Weight) -> bool {
        so_dominant(w.eps_twice(), self.series())
    }

    pub fn is_g_dominant(&self, w: &Weight) -> bool {
        if !self.is_integral(w) || !self.is_g0_dominant(w) {
            return false;
        }
        let l0 = w.twice()[0];
        if l0 < 0 {
            return false;
        }
        let l0 = (l0 / 2) as usize;
        if l0 < self.m() {
            return w.eps_twice()[l0..].iter().all(|&x| x == 0);
        }
        true
    }

    /// (λ+ρ, α) ≠ 0 for every so(k) positive root α.
    pub fn is_regular(&self, w: &Weight) -> bool {
        let shifted = self.rho_shift(w);
        so_regular(shifted.eps_twice(), self.series())
    }

    pub fn classify(&self, w: &Weight) -> Result<WeightFlags> {
        self.check_rank(w)?;
        Ok(WeightFlags {
            integral: self.is_integral(w),
            g0_dominant: self.is_g0_dominant(w),
            g_dominant: self.is_g_dominant(w),
            regular: self.is_regular(w),
            typical: self.find_atypical(w).is_none(),
        })
    }

    /// μ ≤ λ: λ − μ is a non-negative integer combination of simple roots.
    pub fn leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        let d = lambda - mu;
        let d = d.twice();
        let m = self.m();
        // Running coefficients, doubled.
        let mut c = vec![0i64; m + 1];
        c[0] = d[0] as i64;
        let last_chain = match self.series() {
            Series::B => m,
            Series::D => m - 2,
        };
        for i in 1..=last_chain {
            c[i] = c[i - 1] + d[i] as i64;
        }
        if self.series() == Series::D {
            let t = c[m - 2] + d[m - 1] as i64;
            let dm = d[m] as i64;
            if (t + dm) % 2 != 0 {
                return false;
            }
            c[m - 1] = (t - dm) / 2;
            c[m] = (t + dm) / 2;
        }
        c.iter().all(|&x| x >= 0 && x % 2 == 0)
    }

    /// λ^σ = (−λ₀ + 2(m−s) | λ₁, …, λ_m).
    pub fn sigma_dual(&self, w: &Weight) -> Weight {
        let shift = 4 * self.m() as i32 - 2 * self.s_twice();
        w.with_delta_twice(-w.twice()[0] + shift)
    }

    pub(crate) fn require_integral_g0(&self, w: &Weight) -> Result<()> {
        self.check_rank(w)?;
        if !self.is_integral(w) {
            return Err(Error::NotIntegral(w.to_string()));
        }
        if !self.is_g0_dominant(w) {
            return Err(Error::NotG0Dominant(w.to_string()));
        }
        Ok(())
    }

    pub(crate) fn require_g_dominant(&self, w: &Weight) -> Result<()> {
        self.require_integral_g0(w)?;
        if !self.is_g_dominant(w) {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(())
    }
}

/// so(k)-dominance of doubled ε-coordinates.
pub(crate) fn so_dominant(x: &[i32], series: Series) -> bool {
    let m = x.len();
    for i in 0..m.saturating_sub(2) {
        if x[i] < x[i + 1] {
            return false;
        }
    }
    match series {
        Series::B => (m < 2 || x[m - 2] >= x[m - 1]) && x[m - 1] >= 0,
        Series::D => m < 2 || x[m - 2] >= x[m - 1].abs(),
    }
}

/// No so(k) root is orthogonal to x: distinct absolute values, and no zero for B.
pub(crate) fn so_regular(x: &[i32], series: Series) -> bool {
    for i in 0..x.len() {
        if series == Series::B && x[i] == 0 {
            return false;
        }
        for j in i + 1..x.len() {
            if x[i].abs() == x[j].abs() {
                return false;
            }
        }
    }
    true
}
