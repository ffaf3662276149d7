//! Brute-force cross-checks: level-by-level decomposition of truncated
//! characters into so(k)-irreducibles, multiplicities read off Verma
//! characters, and a per-block harness reconciling every formula.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::atypicality::{AtypType, Branch, ChainCase, ChainPosition};
use crate::charring::{FormalCharacter, IsotypicCharacter, Osp, Window};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::weight::{Coords, Weight};
use crate::weyl::dominant_rep;

/// g0-highest weights of a character with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub constituents: Vec<(Weight, i64)>,
    pub residual_ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CheckKind {
    VermaIdentity,
    MultiplicityFormula,
    MultiplicityBound,
    CandidateSet,
    ClosedFormula,
    TailIdentity,
    KacDichotomy,
    Dimension,
    KacDimension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub weight: Weight,
    pub index: i64,
    pub branch: Branch,
    pub check: CheckKind,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub k: u32,
    pub lambda_bar: AtypType,
    pub depth: u32,
    pub i_max: u32,
    pub records: Vec<CheckRecord>,
    /// Split chains only: whether V_{λ⁽¹⁾} has λ⁽⁻²⁾ as a fourth factor.
    pub d_case_i1_extra_factor_supported: Option<bool>,
    /// Whether χ^V at λ⁽²⁾ is the sum of the three factors λ⁽²⁾, λ⁽¹⁾, λ⁽⁰⁾.
    pub kac_i2_three_factors: Option<bool>,
}

impl BlockReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "lambda_bar": self.lambda_bar.to_string(),
            "depth": self.depth,
            "i_max": self.i_max,
            "all_pass": self.all_pass(),
            "d_case_i1_extra_factor_supported": self.d_case_i1_extra_factor_supported,
            "kac_i2_three_factors": self.kac_i2_three_factors,
            "records": self.records.iter().map(|r| json!({
                "weight": r.weight.to_string(),
                "index": r.index,
                "branch": r.branch.to_string(),
                "check": format!("{:?}", r.check),
                "pass": r.pass,
                "detail": r.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl Osp {
    /// Greedy peeling, level by level, of the lexicographically largest
    /// dominant weight. Fails when a peeled coefficient is negative.
    pub fn g0_decompose(&self, ch: &FormalCharacter) -> Result<Decomposition> {
        let (iso, residual_ok) = self.peel(ch)?;
        Ok(Decomposition {
            constituents: iso.iter().map(|(w, c)| (w.clone(), *c)).collect(),
            residual_ok,
        })
    }

    /// As [`Osp::g0_decompose`], but a nonzero residual is an error.
    pub(crate) fn decompose_isotypic(&self, ch: &FormalCharacter) -> Result<IsotypicCharacter> {
        let (iso, ok) = self.peel(ch)?;
        if !ok {
            return Err(Error::Internal("character is not W₀-invariant".into()));
        }
        Ok(iso)
    }

    fn peel(&self, ch: &FormalCharacter) -> Result<(IsotypicCharacter, bool)> {
        let series = self.series();
        let mut levels: BTreeMap<i32, BTreeMap<Coords, i64>> = BTreeMap::new();
        let mut invariant = true;
        for (w, &c) in ch.iter() {
            let rep = dominant_rep(w.eps_twice(), series);
            if rep.as_slice() == w.eps_twice() {
                levels.entry(w.twice()[0]).or_default().insert(rep, c);
            } else if ch.get(&Weight::from_parts(w.twice()[0], &rep)) != c {
                invariant = false;
            }
        }
        let mut out = IsotypicCharacter::zero(ch.window());
        for (d, mut dom) in levels {
            while let Some((top, &c)) = dom.iter().next_back() {
                let top = top.clone();
                if c < 0 {
                    return Err(Error::Internal(format!(
                        "negative multiplicity {c} at {} is not a module character",
                        Weight::from_parts(d, &top)
                    )));
                }
                let so = self.so_irrep(&top)?;
                for (e, m) in &so.dominant {
                    let slot = dom.entry(e.clone()).or_insert(0);
                    *slot -= c * m;
                    if *slot == 0 {
                        dom.remove(e);
                    }
                }
                out.add_part(Weight::from_parts(d, &top), c);
            }
        }
        Ok((out, invariant))
    }

    /// Multiplicity of L⁰_μ in V_λ, read off the decomposed Verma character.
    pub fn b_oracle(&self, lambda: &Weight, mu: &Weight, depth: u32) -> Result<i64> {
        self.require_integral_g0(lambda)?;
        self.check_rank(mu)?;
        let window = Window::new(lambda.delta(), depth);
        if !window.contains_twice(mu.twice()[0]) {
            return Err(Error::InvalidWindow(format!(
                "{mu} lies outside the window of depth {depth} below {lambda}"
            )));
        }
        Ok(self.verma_isotypic(lambda, window.bottom_twice())?.get(mu))
    }

    /// Chain positions with |i| ≤ i_max, both branches where they differ.
    fn sweep_positions(&self, bar: &AtypType, i_max: u32) -> Vec<ChainPosition> {
        let n = i_max as i64;
        let mut out = Vec::new();
        for i in (-n..=n).rev() {
            match self.chain_case(bar) {
                ChainCase::Split if i != 0 => {
                    out.push(ChainPosition::new(i, Branch::Plus));
                    out.push(ChainPosition::new(i, Branch::Minus));
                }
                _ => out.push(ChainPosition::unbranched(i)),
            }
        }
        out
    }

    /// Weights a Lemma allows as g0-highest weights of V_λ inside the block,
    /// and the lower neighbours μ for which b_{λ,μ} ≤ 1 is asserted.
    fn lemma_sets(
        &self,
        bar: &AtypType,
        pos: ChainPosition,
        tail: bool,
    ) -> Result<(Vec<Weight>, Vec<Weight>)> {
        let i = pos.index;
        let at = |j: i64, b: Branch| {
            let b = if j == 0 { Branch::None } else { b };
            self.chain_weight(bar, ChainPosition::new(j, b))
        };
        let b = pos.branch;
        let (cand, lower): (Vec<i64>, Vec<Weight>) = match self.chain_case(bar) {
            ChainCase::Single => {
                let lower = vec![at(i - 1, Branch::None)?];
                if tail {
                    (vec![i, i - 1], lower)
                } else {
                    (vec![i, i - 1, 1 - i, -i, 2 - i], lower)
                }
            }
            ChainCase::Split => match i {
                0 => {
                    let pm = vec![at(-1, Branch::Plus)?, at(-1, Branch::Minus)?];
                    let mut c = vec![at(0, Branch::None)?];
                    c.extend(pm.iter().cloned());
                    return Ok((c, pm));
                }
                i if i < 0 => (vec![i, i - 1], vec![at(i - 1, b)?]),
                // At i = 1 the three-weight list printed for this case misses
                // λ⁽⁻²⁾, which the Verma characters show with b = 1; the
                // general i > 1 list is used instead.
                _ => (vec![i, i - 1, 1 - i, -i, -i - 1], vec![at(i - 1, b)?]),
            },
        };
        let branch = match self.chain_case(bar) {
            ChainCase::Single => Branch::None,
            ChainCase::Split => b,
        };
        let cand = cand
            .into_iter()
            .map(|j| at(j, branch))
            .collect::<Result<_>>()?;
        Ok((cand, lower))
    }

    /// Runs every check for the chain weights of one block with |i| ≤ i_max.
    pub fn verify_block(
        &self,
        bar: &AtypType,
        i_max: u32,
        depth: u32,
        exec: Execution,
    ) -> Result<BlockReport> {
        let positions = self.sweep_positions(bar, i_max);
        let per: Vec<Result<Vec<CheckRecord>>> = par::map(exec, &positions, |&pos| {
            let w = self.chain_weight(bar, pos)?;
            self.verify_weight(bar, pos, &w, depth)
        });
        let mut records = Vec::new();
        for r in per {
            records.extend(r?);
        }
        let case = self.chain_case(bar);
        let kac_i2_three_factors = if i_max >= 2 {
            Some(self.kac_three_factors(bar, case, depth)?)
        } else {
            None
        };
        let d_case_i1_extra_factor_supported = match case {
            ChainCase::Split if i_max >= 1 => Some(self.d_case_extra_factor(bar, depth)?),
            _ => None,
        };
        Ok(BlockReport {
            k: self.k(),
            lambda_bar: bar.clone(),
            depth,
            i_max,
            records,
            d_case_i1_extra_factor_supported,
            kac_i2_three_factors,
        })
    }

    fn kac_three_factors(&self, bar: &AtypType, case: ChainCase, depth: u32) -> Result<bool> {
        let p = |j: i64| match (case, j) {
            (ChainCase::Split, j) if j != 0 => ChainPosition::new(j, Branch::Plus),
            _ => ChainPosition::unbranched(j),
        };
        let l2 = self.chain_weight(bar, p(2))?;
        let window = Window::new(l2.delta(), depth.max(l2.twice()[0] as u32 + 2));
        let mut sum = IsotypicCharacter::zero(window);
        for j in 0..=2 {
            let w = self.chain_weight(bar, p(j))?;
            sum = sum.add(&self.ch_l_closed_isotypic(&w, window)?)?;
        }
        Ok(self.expand_isotypic(&self.chi_v(&l2)?, window)? == sum)
    }

    fn d_case_extra_factor(&self, bar: &AtypType, depth: u32) -> Result<bool> {
        let l1 = self.chain_weight(bar, ChainPosition::new(1, Branch::Plus))?;
        let window = Window::new(l1.delta(), depth);
        let mut r = (*self.verma_isotypic(&l1, window.bottom_twice())?).clone();
        for pos in [
            ChainPosition::new(1, Branch::Plus),
            ChainPosition::unbranched(0),
            ChainPosition::new(-1, Branch::Plus),
        ] {
            let w = self.chain_weight(bar, pos)?;
            r = r.sub(&self.ch_l_closed_isotypic(&w, window)?)?;
        }
        let extra = self.chain_weight(bar, ChainPosition::new(-2, Branch::Plus))?;
        Ok(!r.is_empty() && r == self.ch_l_closed_isotypic(&extra, window)?)
    }

    fn verify_weight(
        &self,
        bar: &AtypType,
        pos: ChainPosition,
        w: &Weight,
        depth: u32,
    ) -> Result<Vec<CheckRecord>> {
        let mut out = Vec::new();
        let mut rec = |check, pass: bool, detail: String| {
            out.push(CheckRecord {
                weight: w.clone(),
                index: pos.index,
                branch: pos.branch,
                check,
                pass,
                detail,
            })
        };
        let window = Window::new(w.delta(), depth);
        let bottom = window.bottom_twice();
        let case = self.chain_case(bar);
        let data = self.require_atypical(w)?;
        let graph = self.verma_graph(w)?;
        let verma = self.verma_isotypic(w, bottom)?;

        // Verma character against the closed characters of the graph nodes.
        let mut sum = IsotypicCharacter::zero(window);
        for node in &graph.nodes {
            if node.weight.twice()[0] >= bottom {
                sum = sum.add(&self.ch_l_closed_isotypic(&node.weight, window)?)?;
            }
        }
        let diff = verma.sub(&sum)?;
        rec(
            CheckKind::VermaIdentity,
            diff.is_empty(),
            describe_diff(&diff, "V − Σ L"),
        );

        // Multiplicities over all block weights in the window.
        let mut block = Vec::new();
        for p in self.sweep_positions(bar, (pos.index.unsigned_abs() as u32) + depth + 2) {
            let mu = self.chain_weight(bar, p)?;
            if window.contains_twice(mu.twice()[0]) && !block.contains(&mu) {
                block.push(mu);
            }
        }
        let mut mismatches = Vec::new();
        let mut present = HashSet::new();
        for mu in &block {
            let formula = self.b_coeff(w, mu)?;
            let oracle = verma.get(mu);
            if formula != oracle {
                mismatches.push(format!("b({mu}) formula {formula} oracle {oracle}"));
            }
            if oracle > 0 {
                present.insert(mu.clone());
            }
        }
        rec(
            CheckKind::MultiplicityFormula,
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!("{} block weights agree", block.len())
            } else {
                mismatches.join("; ")
            },
        );

        let (cand, lower) = self.lemma_sets(bar, pos, data.tail)?;
        let mut bad = Vec::new();
        for node in &graph.nodes {
            if node.weight.twice()[0] >= bottom && verma.get(&node.weight) < 1 {
                bad.push(format!("factor {} has b = 0", node.weight));
            }
        }
        for mu in &lower {
            if window.contains_twice(mu.twice()[0]) && verma.get(mu) > 1 {
                bad.push(format!("b({mu}) = {} > 1", verma.get(mu)));
            }
        }
        rec(CheckKind::MultiplicityBound, bad.is_empty(), bad.join("; "));
        let outside: Vec<String> = present
            .iter()
            .filter(|mu| !cand.contains(mu))
            .map(|mu| mu.to_string())
            .collect();
        rec(
            CheckKind::CandidateSet,
            outside.is_empty(),
            if outside.is_empty() {
                format!("{} g0-highest weights in the block", present.len())
            } else {
                format!("unexpected g0-highest weights {}", outside.join(", "))
            },
        );

        let recursive = self.ch_l_isotypic(w, bottom)?;
        if pos.index >= 0 {
            let closed = self.expand_isotypic(&self.closed_char_l(w)?, window)?;
            let diff = closed.sub(&recursive)?;
            rec(
                CheckKind::ClosedFormula,
                diff.is_empty(),
                describe_diff(&diff, "closed − recursive"),
            );
        }
        let tail_range = match case {
            ChainCase::Single => pos.index <= 0,
            ChainCase::Split => pos.index < 0,
        };
        if tail_range {
            let bl0 = self.expand_isotypic(&self.chi_bl0(w)?, window)?;
            let diff = bl0.sub(&recursive)?;
            rec(
                CheckKind::TailIdentity,
                diff.is_empty(),
                describe_diff(&diff, "χ^BL₀ − L"),
            );
        }
        if pos.index == 0 {
            let factor = match case {
                ChainCase::Single => 2,
                ChainCase::Split => 1,
            };
            let bl = self.expand_isotypic(&self.chi_bl(w)?, window)?;
            let diff = bl.sub(&recursive.scale(factor))?;
            rec(
                CheckKind::TailIdentity,
                diff.is_empty(),
                describe_diff(&diff, &format!("χ^BL − {factor}·L")),
            );
        }

        if pos.index >= 0 {
            let full = Window::new(w.delta(), w.twice()[0] as u32 + 2);
            let l = self.ch_l_isotypic(w, full.bottom_twice())?;
            let (d, t) = (self.dim_l(w)?, self.total_multiplicity(&l)?);
            rec(
                CheckKind::Dimension,
                d == t,
                format!("formula {d}, character {t}"),
            );
            match self.ch_k_isotypic(w, full) {
                Ok(kac) => {
                    rec(CheckKind::KacDichotomy, true, String::new());
                    let (d, t) = (self.dim_k(w)?, self.total_multiplicity(&kac)?);
                    rec(
                        CheckKind::KacDimension,
                        d == t,
                        format!("formula {d}, character {t}"),
                    );
                }
                Err(e) if e.is_internal() => rec(CheckKind::KacDichotomy, false, e.to_string()),
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

fn describe_diff(diff: &IsotypicCharacter, what: &str) -> String {
    if diff.is_empty() {
        return String::new();
    }
    let shown: Vec<String> = diff
        .iter()
        .take(4)
        .map(|(w, c)| format!("{c}·[{w}]"))
        .collect();
    format!("{what} = {} ({} parts)", shown.join(" + "), diff.len())
}

/// All atypicality types whose entries are at most `max_twice / 2`.
pub fn atypicality_types(osp: &Osp, max_twice: i32) -> Vec<AtypType> {
    let parity = osp.s_twice() % 2;
    let values: Vec<i32> = (0..=max_twice)
        .rev()
        .filter(|x| x % 2 == parity % 2)
        .collect();
    let want = osp.m() - 1;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(values: &[i32], want: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == want {
            out.push(cur.clone());
            return;
        }
        for (j, &v) in values.iter().enumerate() {
            cur.push(v);
            rec(&values[j + 1..], want, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&values, want, &mut cur, &mut raw);
    for t in raw {
        if let Ok(a) = AtypType::from_twice(osp, t.into_iter().collect()) {
            out.push(a);
        }
    }
    out
}

/// Block reports for every k and every atypicality type with entries at
/// most `max_twice / 2`.
pub fn verify_sweep(
    ks: &[i64],
    max_twice: i32,
    i_max: u32,
    depth: u32,
    exec: Execution,
) -> Result<Vec<BlockReport>> {
    let mut out = Vec::new();
    for &k in ks {
        let osp = Osp::new(k)?;
        let types = atypicality_types(&osp, max_twice);
        let reports = par::map(exec, &types, |bar| {
            osp.verify_block(bar, i_max, depth, exec)
        });
        for r in reports {
            out.push(r?);
        }
    }
    Ok(out)
}

/// The full weight expansion of constituents, for round-trip checks.
pub fn recombine(osp: &Osp, window: Window, parts: &[(Weight, i64)]) -> Result<FormalCharacter> {
    let mut iso = IsotypicCharacter::zero(window);
    for (w, c) in parts {
        iso.add_part(w.clone(), *c);
    }
    osp.to_formal(&iso)
}
