//! Primitive weight graphs of generalised Verma and Kac modules, the
//! resulting recursive characters, the closed character formula and the
//! combinatorial g0-multiplicities b_{λ,μ}.

use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::atypicality::{AtypType, Branch, ChainCase, ChainPosition};
use crate::charring::{
    cached, IsotypicCharacter, NumeratorExpression, NumeratorTerm, Osp, WeylSum, Window,
};
use crate::error::{Error, Result};
use crate::weight::Weight;
use crate::weyl::chamber_element;
use crate::FormalCharacter;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    pub weight: Weight,
    pub position: ChainPosition,
}

/// Composition factors (each of multiplicity one) with the
/// "directly derived from" relation; node 0 is the highest weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveGraph {
    pub lambda_bar: AtypType,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<(usize, usize)>,
}

impl PrimitiveGraph {
    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.nodes.iter().map(|n| &n.weight)
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.weights().any(|x| x == w)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(|n| json!({
                "weight": n.weight.to_string(),
                "branch": n.position.branch.to_string(),
                "index": n.position.index,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

/// One entry of S_λ with its normalizer m_μ and θ-length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmEntry {
    pub weight: Weight,
    pub m: i64,
    pub theta_len: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmData {
    pub entries: Vec<SmEntry>,
}

/// Node positions and edges of the Verma graph at a chain position.
pub(crate) fn graph_shape(
    case: ChainCase,
    pos: ChainPosition,
) -> (Vec<ChainPosition>, Vec<(usize, usize)>) {
    let i = pos.index;
    match case {
        ChainCase::Single => {
            let p = ChainPosition::unbranched;
            match i {
                i if i <= 0 => (vec![p(i), p(i - 1)], vec![(0, 1)]),
                1 => (vec![p(1), p(-1)], vec![(0, 1)]),
                2 => (
                    vec![p(2), p(1), p(0), p(-1), p(-2)],
                    vec![(0, 1), (0, 2), (1, 3), (2, 3), (0, 4), (4, 3)],
                ),
                _ => (
                    vec![p(i), p(i - 1), p(1 - i), p(-i)],
                    vec![(0, 1), (1, 2), (0, 3), (3, 2)],
                ),
            }
        }
        ChainCase::Split => {
            let b = pos.branch;
            let p = |j: i64| {
                if j == 0 {
                    ChainPosition::unbranched(0)
                } else {
                    ChainPosition::new(j, b)
                }
            };
            match i {
                i if i < 0 => (vec![p(i), p(i - 1)], vec![(0, 1)]),
                0 => (
                    vec![
                        p(0),
                        ChainPosition::new(-1, Branch::Plus),
                        ChainPosition::new(-1, Branch::Minus),
                    ],
                    vec![(0, 1), (0, 2)],
                ),
                _ => (
                    vec![p(i), p(i - 1), p(-i), p(-i - 1)],
                    vec![(0, 1), (1, 2), (0, 3), (3, 2)],
                ),
            }
        }
    }
}

impl Osp {
    pub fn verma_graph(&self, lambda: &Weight) -> Result<PrimitiveGraph> {
        let (bar, pos) = self.chain_index(lambda)?;
        let (positions, edges) = graph_shape(self.chain_case(&bar), pos);
        let mut nodes = Vec::with_capacity(positions.len());
        for p in positions {
            nodes.push(GraphNode {
                weight: self.chain_weight(&bar, p)?,
                position: p,
            });
        }
        Ok(PrimitiveGraph {
            lambda_bar: bar,
            nodes,
            edges,
        })
    }

    /// The Verma graph with negative-index nodes deleted.
    pub fn kac_graph(&self, lambda: &Weight) -> Result<PrimitiveGraph> {
        self.require_g_dominant(lambda)?;
        let g = self.verma_graph(lambda)?;
        let keep: Vec<usize> = (0..g.nodes.len())
            .filter(|&i| g.nodes[i].position.index >= 0)
            .collect();
        let remap = |i: usize| keep.iter().position(|&k| k == i);
        let edges = g
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((remap(a)?, remap(b)?)))
            .collect();
        Ok(PrimitiveGraph {
            lambda_bar: g.lambda_bar,
            nodes: keep.iter().map(|&i| g.nodes[i].clone()).collect(),
            edges,
        })
    }

    /// Verma character as g0-irreducibles, on the window from λ₀ down to `bottom`.
    pub(crate) fn verma_isotypic(
        &self,
        lambda: &Weight,
        bottom: i32,
    ) -> Result<Arc<IsotypicCharacter>> {
        let top = lambda.twice()[0];
        cached(&self.verma_cache, (lambda.clone(), bottom), || {
            let depth = ((top - bottom).max(0) / 2) as u32;
            let ch = self.verma_char(lambda, depth)?;
            self.decompose_isotypic(&ch)
        })
    }

    /// ch L_λ by the graph recursion, on the window from λ₀ down to `bottom`.
    pub(crate) fn ch_l_isotypic(
        &self,
        lambda: &Weight,
        bottom: i32,
    ) -> Result<Arc<IsotypicCharacter>> {
        self.require_integral_g0(lambda)?;
        let top = lambda.twice()[0];
        let window = Window::spanning(top, bottom);
        if top < bottom {
            return Ok(Arc::new(IsotypicCharacter::zero(window)));
        }
        if self.atypical_data(lambda)?.is_none() {
            if !self.is_g_dominant(lambda) {
                return Err(Error::Unsupported(format!(
                    "irreducible character of the typical non-dominant weight {lambda}"
                )));
            }
            return Ok(Arc::new(
                self.expand_isotypic(&self.chi_v(lambda)?, window)?,
            ));
        }
        cached(&self.chl_cache, (lambda.clone(), bottom), || {
            let mut acc = (*self.verma_isotypic(lambda, bottom)?).clone();
            let graph = self.verma_graph(lambda)?;
            for node in &graph.nodes[1..] {
                if node.weight.twice()[0] < bottom {
                    continue;
                }
                let sub = self.ch_l_isotypic(&node.weight, bottom)?;
                acc = acc.sub(&sub.restrict(window))?;
            }
            Ok(acc)
        })
    }

    /// Irreducible character on the window (λ₀, depth).
    pub fn ch_l(&self, lambda: &Weight, depth: u32) -> Result<FormalCharacter> {
        let window = Window::new(lambda.delta(), depth);
        let iso = self.ch_l_isotypic(lambda, window.bottom_twice())?;
        self.to_formal(&iso)
    }

    pub(crate) fn ch_k_isotypic(
        &self,
        lambda: &Weight,
        window: Window,
    ) -> Result<IsotypicCharacter> {
        self.require_g_dominant(lambda)?;
        if self.atypical_data(lambda)?.is_none() {
            return self.expand_isotypic(&self.chi_v(lambda)?, window);
        }
        let bottom = window.bottom_twice();
        let mut acc = IsotypicCharacter::zero(window);
        for node in &self.kac_graph(lambda)?.nodes {
            if node.weight.twice()[0] >= bottom {
                acc = acc.add(&self.ch_l_isotypic(&node.weight, bottom)?.restrict(window))?;
            }
        }
        let dual = self.sigma_dual(lambda);
        if !self.is_g_dominant(&dual) {
            let typical = self.expand_isotypic(&self.chi_v(lambda)?, window)?;
            if typical != acc {
                return Err(Error::Internal(format!(
                    "Kac character of {lambda} differs from χ^V although λ^σ is not dominant"
                )));
            }
        }
        Ok(acc)
    }

    /// Kac module character on the window (λ₀, depth).
    pub fn ch_k(&self, lambda: &Weight, depth: u32) -> Result<FormalCharacter> {
        let iso = self.ch_k_isotypic(lambda, Window::new(lambda.delta(), depth))?;
        self.to_formal(&iso)
    }

    /// S_λ with m_μ and θ-lengths.
    pub fn s_m_theta(&self, lambda: &Weight) -> Result<SmData> {
        self.require_g_dominant(lambda)?;
        self.require_atypical(lambda)?;
        let mut s = vec![lambda.clone()];
        let dual = self.sigma_dual(lambda);
        if &dual != lambda && self.is_g_dominant(&dual) && self.leq(&dual, lambda) {
            s.push(dual);
        }
        let entries = s
            .into_iter()
            .enumerate()
            .map(|(theta, mu)| {
                let md = self.sigma_dual(&mu);
                let m = if md != mu && self.is_g_dominant(&md) && self.leq(&mu, &md) {
                    2
                } else {
                    1
                };
                SmEntry {
                    weight: mu,
                    m,
                    theta_len: theta as u32,
                }
            })
            .collect();
        Ok(SmData { entries })
    }

    /// Σ_{μ∈S_λ} (−1)^{|θ|}/m_μ · χ^BL_μ.
    pub fn closed_char_l(&self, lambda: &Weight) -> Result<NumeratorExpression> {
        let sm = self.s_m_theta(lambda)?;
        let mut terms = Vec::new();
        for e in sm.entries {
            let sign = if e.theta_len % 2 == 0 { 1 } else { -1 };
            let mut t: NumeratorTerm = self.chi_bl(&e.weight)?.terms.remove(0);
            t.coeff = Ratio::new(sign, e.m);
            t.sum = WeylSum::Full;
            terms.push(t);
        }
        Ok(NumeratorExpression { terms })
    }

    /// ch L_λ from the closed formulas alone: the closed formula for
    /// dominant weights, χ^V for typical ones, χ^BL₀ for tails below λ⁽⁰⁾.
    pub(crate) fn ch_l_closed_isotypic(
        &self,
        lambda: &Weight,
        window: Window,
    ) -> Result<IsotypicCharacter> {
        self.require_integral_g0(lambda)?;
        if self.is_g_dominant(lambda) {
            if self.atypical_data(lambda)?.is_none() {
                return self.expand_isotypic(&self.chi_v(lambda)?, window);
            }
            return self.expand_isotypic(&self.closed_char_l(lambda)?, window);
        }
        // Every non-dominant block weight sits below λ⁽⁰⁾ on its branch.
        self.expand_isotypic(&self.chi_bl0(lambda)?, window)
    }

    /// b_{λ,μ}: the multiplicity of the g0-irreducible L⁰_μ in V_λ from the
    /// Weyl character formula.
    pub fn b_coeff(&self, lambda: &Weight, mu: &Weight) -> Result<i64> {
        self.require_integral_g0(lambda)?;
        self.require_integral_g0(mu)?;
        let gap = lambda.twice()[0] - mu.twice()[0];
        if gap < 0 || gap % 2 != 0 {
            return Err(Error::InvalidWindow(format!(
                "{mu} is not an integral number of levels below {lambda}"
            )));
        }
        let gap = gap / 2;
        let odd = self.odd_weights();
        let rho = self.rho().eps_twice();
        let target = mu.eps_twice();
        let mut total = 0i64;
        for mask in 0u32..(1 << odd.len()) {
            let size = mask.count_ones() as i32;
            if size > gap || (gap - size) % 2 != 0 {
                continue;
            }
            let mut eps: Vec<i32> = lambda
                .eps_twice()
                .iter()
                .zip(rho)
                .map(|(a, r)| a + r)
                .collect();
            for (i, b) in odd.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    for (e, x) in eps.iter_mut().zip(b.eps_twice()) {
                        *e -= x;
                    }
                }
            }
            let Some(g) = chamber_element(&eps, self.series()) else {
                continue;
            };
            let mut dom = vec![0; eps.len()];
            g.act_eps(&eps, &mut dom);
            if dom
                .iter()
                .zip(rho)
                .map(|(a, r)| a - r)
                .eq(target.iter().copied())
            {
                total += g.sign() as i64;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn graph_examples() {
        let g = Osp::new(3).unwrap();
        let gr = g.verma_graph(&w("2|1")).unwrap();
        let idx: Vec<i64> = gr.nodes.iter().map(|n| n.position.index).collect();
        assert_eq!(idx, vec![2, 1, 0, -1, -2]);
        assert_eq!(
            gr.edges,
            vec![(0, 1), (0, 2), (1, 3), (2, 3), (0, 4), (4, 3)]
        );
        let gr = g.verma_graph(&w("-1|1")).unwrap();
        assert_eq!(gr.nodes.len(), 2);
        let k = g.kac_graph(&w("1|0")).unwrap();
        assert_eq!(k.nodes.len(), 1);
        let k = g.kac_graph(&w("2|1")).unwrap();
        assert_eq!(k.nodes.len(), 3);
        assert_eq!(k.edges, vec![(0, 1), (0, 2)]);
        assert!(g.verma_graph(&w("2|0")).is_err());
        assert!(g.kac_graph(&w("-1|1")).is_err());

        let g = Osp::new(4).unwrap();
        let gr = g.verma_graph(&w("1|0,0")).unwrap();
        assert_eq!(gr.nodes.len(), 3);
        assert_eq!(gr.nodes[1].position, ChainPosition::new(-1, Branch::Plus));
        assert_eq!(gr.nodes[2].position, ChainPosition::new(-1, Branch::Minus));
        assert_eq!(gr.edges, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn s_m_theta_examples() {
        let g = Osp::new(3).unwrap();
        let sm = g.s_m_theta(&w("1|0")).unwrap();
        assert_eq!(sm.entries.len(), 2);
        assert_eq!((sm.entries[0].m, sm.entries[0].theta_len), (1, 0));
        assert_eq!(sm.entries[1].weight, w("0|0"));
        assert_eq!((sm.entries[1].m, sm.entries[1].theta_len), (2, 1));
        let sm = g.s_m_theta(&w("2|1")).unwrap();
        assert_eq!(sm.entries.len(), 1);
        assert_eq!(sm.entries[0].m, 1);
        let sm = g.s_m_theta(&w("0|0")).unwrap();
        assert_eq!(sm.entries.len(), 1);
        assert_eq!(sm.entries[0].m, 2);
    }

    #[test]
    fn closed_formula_terms() {
        let g = Osp::new(3).unwrap();
        let e = g.closed_char_l(&w("2|1")).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].coeff, Ratio::from_integer(1));
        let e = g.closed_char_l(&w("1|0")).unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[1].coeff, Ratio::new(-1, 2));
        assert!(!e.terms[1].odd.contains(&crate::OddRoot::DeltaMinusEps(1)));
        assert!(g.closed_char_l(&w("2|0")).is_err());
    }

    #[test]
    fn small_characters() {
        let g = Osp::new(3).unwrap();
        assert_eq!(g.ch_l(&w("0|0"), 3).unwrap().total_multiplicity(), 1);
        assert_eq!(g.ch_l(&w("1|0"), 4).unwrap().total_multiplicity(), 5);
        assert_eq!(g.ch_l(&w("2|1"), 6).unwrap().total_multiplicity(), 30);
        assert_eq!(g.ch_k(&w("2|1"), 6).unwrap().total_multiplicity(), 36);
        assert_eq!(g.ch_k(&w("1|0"), 4).unwrap(), g.ch_l(&w("1|0"), 4).unwrap());
        assert_eq!(g.ch_k(&w("2|0"), 6).unwrap().total_multiplicity(), 12);
        let tail = w("-1|1");
        let win = Window::new(tail.delta(), 6);
        let x = g.expand(&g.chi_bl0(&tail).unwrap(), win).unwrap();
        assert_eq!(g.ch_l(&tail, 6).unwrap(), x);
    }

    #[test]
    fn b_coeff_examples() {
        let g = Osp::new(3).unwrap();
        let (l0, l1, l2) = (w("0|0"), w("1|0"), w("2|1"));
        assert_eq!(g.b_coeff(&l2, &l2).unwrap(), 1);
        assert_eq!(g.b_coeff(&l1, &l0).unwrap(), 0);
        assert_eq!(g.b_coeff(&l2, &l0).unwrap(), 1);
        assert!(g.b_coeff(&l0, &l1).is_err());
    }
}
