//! Atypical roots, atypicality types, the raising/lowering operators and the
//! chain λ⁽ⁱ⁾ enumerating a block.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rootdata::{so_regular, OddRoot, RootSystem, Series};
use crate::weight::{HalfInt, Weight};

/// The sorted multiset of |λ̃ᵢ|, i ≠ ℓ; descending, doubled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtypType(SmallVec<[i32; 8]>);

impl AtypType {
    /// Validates length m−1, strict decrease, non-negativity and the
    /// integrality class of the series (integers for D, half-odd for B).
    pub fn new(rs: &RootSystem, entries: &[HalfInt]) -> Result<Self> {
        let t: SmallVec<[i32; 8]> = entries.iter().map(|e| e.twice()).collect();
        Self::from_twice(rs, t)
    }

    pub fn from_twice(rs: &RootSystem, t: SmallVec<[i32; 8]>) -> Result<Self> {
        let bad = |why: &str| Error::MalformedType(format!("{}: {why}", AtypType(t.clone())));
        if t.len() + 1 != rs.m() {
            return Err(bad(&format!("expected {} entries", rs.m() - 1)));
        }
        if t.windows(2).any(|p| p[0] <= p[1]) {
            return Err(bad("entries must strictly decrease"));
        }
        if t.iter().any(|&x| x < 0) {
            return Err(bad("entries must be non-negative"));
        }
        let parity = match rs.series() {
            Series::D => 0,
            Series::B => 1,
        };
        if t.iter().any(|x| x.rem_euclid(2) != parity) {
            return Err(bad("wrong integrality class"));
        }
        Ok(AtypType(t))
    }

    pub fn twice(&self) -> &[i32] {
        &self.0
    }

    pub fn entries(&self) -> Vec<HalfInt> {
        self.0.iter().map(|&t| HalfInt::from_twice(t)).collect()
    }

    pub fn contains_zero(&self) -> bool {
        self.0.contains(&0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a comma-separated list, e.g. `"9/2, 3/2"`; empty for m = 1.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut v = Vec::new();
        if !s.trim().is_empty() {
            for part in s.split(',') {
                v.push(HalfInt::from_str(part)?);
            }
        }
        Self::new(rs, &v)
    }
}

impl fmt::Display for AtypType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", HalfInt::from_twice(*t))?;
        }
        f.write_str(")")
    }
}

impl Serialize for AtypType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtypicalData {
    pub root: OddRoot,
    pub ell: usize,
    pub tail: bool,
    pub lambda_bar: AtypType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
    None,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
            Branch::None => "none",
        })
    }
}

impl Serialize for Branch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChainPosition {
    pub index: i64,
    pub branch: Branch,
}

impl ChainPosition {
    pub fn new(index: i64, branch: Branch) -> Self {
        ChainPosition { index, branch }
    }

    pub fn unbranched(index: i64) -> Self {
        Self::new(index, Branch::None)
    }
}

impl fmt::Display for ChainPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.branch {
            Branch::None => write!(f, "{}", self.index),
            b => write!(f, "{}{}", self.index, b),
        }
    }
}

/// Shape of a block's chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainCase {
    /// B-series, or D-series with 0 ∈ S(λ̄): a single chain, σ sends i to 1−i.
    Single,
    /// D-series with 0 ∉ S(λ̄): two branches meeting at λ⁽⁰⁾, σ sends i to −i.
    Split,
}

impl RootSystem {
    /// The atypical root and index of an arbitrary weight, without
    /// preconditions. When λ̃₀ = λ̃_ℓ = 0 the root δ−ε_ℓ is chosen.
    pub(crate) fn find_atypical(&self, w: &Weight) -> Option<(OddRoot, usize)> {
        let sh = self.rho_shift(w);
        let t = sh.twice();
        for l in 1..=self.m() {
            if t[0] == -t[l] {
                return Some((OddRoot::DeltaMinusEps(l), l));
            }
            if t[0] == t[l] {
                return Some((OddRoot::DeltaPlusEps(l), l));
            }
        }
        None
    }

    pub fn atypical_data(&self, w: &Weight) -> Result<Option<AtypicalData>> {
        self.require_integral_g0(w)?;
        let Some((root, ell)) = self.find_atypical(w) else {
            return Ok(None);
        };
        let sh = self.rho_shift(w);
        let mut bar: SmallVec<[i32; 8]> = sh
            .eps_twice()
            .iter()
            .enumerate()
            .filter(|(i, _)| i + 1 != ell)
            .map(|(_, x)| x.abs())
            .collect();
        bar.sort_unstable_by(|a, b| b.cmp(a));
        let lambda_bar = AtypType::from_twice(self, bar)
            .map_err(|e| Error::Internal(format!("atypicality type of {w}: {e}")))?;
        Ok(Some(AtypicalData {
            root,
            ell,
            tail: matches!(root, OddRoot::DeltaMinusEps(_)),
            lambda_bar,
        }))
    }

    pub(crate) fn require_atypical(&self, w: &Weight) -> Result<AtypicalData> {
        self.atypical_data(w)?
            .ok_or_else(|| Error::Typical(w.to_string()))
    }

    pub fn chain_case(&self, bar: &AtypType) -> ChainCase {
        if self.series() == Series::D && !bar.contains_zero() {
            ChainCase::Split
        } else {
            ChainCase::Single
        }
    }

    /// Smallest a ≥ 1 with λ + sign·a·γ regular.
    pub fn step_size(&self, w: &Weight, root: OddRoot, sign: i32) -> Result<u32> {
        let sh = self.rho_shift(w);
        let g = root.weight(self.m());
        // 2·max|λ̃ᵢ| + m + 2
        let bound = sh.eps_twice().iter().map(|x| x.abs()).max().unwrap_or(0) + self.m() as i32 + 2;
        let mut eps: SmallVec<[i32; 8]> = sh.eps_twice().iter().copied().collect();
        for a in 1..=bound {
            for (e, gi) in eps.iter_mut().zip(g.eps_twice()) {
                *e += sign * gi;
            }
            if so_regular(&eps, self.series()) {
                return Ok(a as u32);
            }
        }
        Err(Error::Internal(format!(
            "no regular step from {w} along {root} within {bound}"
        )))
    }

    /// (λ + sign·a·γ)⁺ with the minimal a.
    pub fn shift_along(&self, w: &Weight, root: OddRoot, sign: i32) -> Result<Weight> {
        let a = self.step_size(w, root, sign)? as i32;
        let moved = w + &root.weight(self.m()).scaled(sign * a);
        Ok(self.dominant_conjugate(&moved)?.0)
    }

    pub fn raise(&self, w: &Weight) -> Result<Weight> {
        let d = self.require_atypical(w)?;
        self.shift_along(w, d.root, 1)
    }

    pub fn lower(&self, w: &Weight) -> Result<Weight> {
        let d = self.require_atypical(w)?;
        self.shift_along(w, d.root, -1)
    }

    /// Branch-aware raising at λ̃₀ = 0 (D-series): `Plus` uses δ+ε_m,
    /// `Minus` (equivalently `None`) the default δ−ε_m.
    pub fn raise_branch(&self, w: &Weight, branch: Branch) -> Result<Weight> {
        let root = self.branch_root(w, branch, Branch::Plus)?;
        self.shift_along(w, root, 1)
    }

    /// Branch-aware lowering at λ̃₀ = 0: `Minus` uses δ+ε_m, `Plus` (or
    /// `None`) the default δ−ε_m.
    pub fn lower_branch(&self, w: &Weight, branch: Branch) -> Result<Weight> {
        let root = self.branch_root(w, branch, Branch::Minus)?;
        self.shift_along(w, root, -1)
    }

    fn branch_root(&self, w: &Weight, branch: Branch, alt: Branch) -> Result<OddRoot> {
        let d = self.require_atypical(w)?;
        if branch == Branch::None {
            return Ok(d.root);
        }
        if self.rho_shift(w).twice()[0] != 0 {
            return Err(Error::InvalidBranch {
                branch: branch.to_string(),
                reason: format!("{w} has a unique atypical root"),
            });
        }
        Ok(if branch == alt {
            OddRoot::DeltaPlusEps(d.ell)
        } else {
            d.root
        })
    }

    /// λ⁽⁰⁾: ρ-shift (−a | λ̄ with a inserted in sorted position), where
    /// a = j+1−s for the smallest j ≥ 0 with a ∉ S(λ̄).
    pub fn chain_base(&self, bar: &AtypType) -> Result<Weight> {
        if bar.len() + 1 != self.m() {
            return Err(Error::MalformedType(format!(
                "{bar} has {} entries, expected {}",
                bar.len(),
                self.m() - 1
            )));
        }
        let s2 = self.s_twice();
        let mut a = 2 - s2;
        while bar.twice().contains(&a) {
            a += 2;
        }
        let mut eps: SmallVec<[i32; 8]> = bar.twice().iter().copied().collect();
        eps.push(a);
        eps.sort_unstable_by(|x, y| y.cmp(x));
        let shifted = Weight::from_parts(-a, &eps);
        Ok(self.rho_unshift(&shifted))
    }

    fn check_branch(&self, case: ChainCase, pos: ChainPosition) -> Result<()> {
        let bad = |why: &str| Error::InvalidBranch {
            branch: pos.branch.to_string(),
            reason: why.to_string(),
        };
        match (case, pos.branch) {
            (ChainCase::Single, Branch::Minus) => {
                Err(bad("the chain of this block does not split"))
            }
            (ChainCase::Split, Branch::Minus) if pos.index == 0 => {
                Err(bad("λ⁽⁰⁾ lies on both branches"))
            }
            (ChainCase::Split, Branch::None) if pos.index != 0 => {
                Err(bad("a split chain needs a branch away from index 0"))
            }
            _ => Ok(()),
        }
    }

    /// λ⁽ⁱ⁾, or λ⁽ⁱ⁾± on a split chain.
    pub fn chain_weight(&self, bar: &AtypType, pos: ChainPosition) -> Result<Weight> {
        let case = self.chain_case(bar);
        self.check_branch(case, pos)?;
        let mut cur = self.chain_base(bar)?;
        if pos.index == 0 {
            return Ok(cur);
        }
        let up = pos.index > 0;
        for step in 0..pos.index.unsigned_abs() {
            cur = if step == 0 && case == ChainCase::Split {
                if up {
                    self.raise_branch(&cur, pos.branch)?
                } else {
                    self.lower_branch(&cur, pos.branch)?
                }
            } else if up {
                self.raise(&cur)?
            } else {
                self.lower(&cur)?
            };
        }
        Ok(cur)
    }

    /// Position of λ on the chain of its block.
    pub fn chain_index(&self, w: &Weight) -> Result<(AtypType, ChainPosition)> {
        let data = self.require_atypical(w)?;
        let bar = data.lambda_bar;
        let base = self.chain_base(&bar)?;
        if &base == w {
            return Ok((bar, ChainPosition::unbranched(0)));
        }
        let case = self.chain_case(&bar);
        let branches: &[Branch] = match case {
            ChainCase::Single => &[Branch::None],
            ChainCase::Split => &[Branch::Plus, Branch::Minus],
        };
        let target = w.twice()[0];
        let up = target > base.twice()[0];
        for &b in branches {
            let mut cur = base.clone();
            let mut i = 0i64;
            loop {
                cur = if i == 0 && case == ChainCase::Split {
                    if up {
                        self.raise_branch(&cur, b)?
                    } else {
                        self.lower_branch(&cur, b)?
                    }
                } else if up {
                    self.raise(&cur)?
                } else {
                    self.lower(&cur)?
                };
                i += if up { 1 } else { -1 };
                if &cur == w {
                    return Ok((bar, ChainPosition::new(i, b)));
                }
                let d = cur.twice()[0];
                if (up && d >= target) || (!up && d <= target) {
                    break;
                }
            }
        }
        Err(Error::Internal(format!(
            "{w} not found on the chain of {bar}"
        )))
    }
}
