//! W₀ (signed permutations, even number of sign changes for D) and
//! W = W₀ × Z₂, their plain and dot actions, and dominantization.

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rootdata::{so_regular, RootSystem, Series};
use crate::weight::{Coords, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// ε-coordinate i is sent to position perm[i] (0-based).
    perm: SmallVec<[u8; 8]>,
    /// Sign applied to ε-coordinate i before it is moved.
    flips: SmallVec<[i8; 8]>,
    sigma: bool,
}

impl WeylElement {
    pub fn identity(m: usize) -> Self {
        WeylElement {
            perm: (0..m as u8).collect(),
            flips: SmallVec::from_elem(1, m),
            sigma: false,
        }
    }

    pub fn sigma(m: usize) -> Self {
        WeylElement {
            sigma: true,
            ..Self::identity(m)
        }
    }

    /// `perm` is 0-based; `flips` entries must be ±1.
    pub fn new(perm: &[usize], flips: &[i8], sigma: bool, series: Series) -> Result<Self> {
        let m = perm.len();
        let mut seen = vec![false; m];
        for &p in perm {
            if p >= m || seen[p] {
                return Err(Error::Internal(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if flips.len() != m || flips.iter().any(|f| f.abs() != 1) {
            return Err(Error::Internal(format!("bad sign vector {flips:?}")));
        }
        if series == Series::D && flips.iter().filter(|&&f| f < 0).count() % 2 == 1 {
            return Err(Error::Internal(
                "odd number of sign changes in a D-series Weyl element".into(),
            ));
        }
        Ok(WeylElement {
            perm: perm.iter().map(|&p| p as u8).collect(),
            flips: flips.iter().copied().collect(),
            sigma,
        })
    }

    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|&p| p as usize).collect()
    }

    pub fn flips(&self) -> &[i8] {
        &self.flips
    }

    pub fn has_sigma(&self) -> bool {
        self.sigma
    }

    pub fn with_sigma(&self, sigma: bool) -> Self {
        WeylElement {
            sigma,
            ..self.clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.sigma
            && self.flips.iter().all(|&f| f == 1)
            && self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Plain linear action.
    pub fn act(&self, w: &Weight) -> Weight {
        let t = w.twice();
        let mut out = Coords::from_elem(0, t.len());
        out[0] = if self.sigma { -t[0] } else { t[0] };
        self.act_eps(&t[1..], &mut out[1..]);
        Weight::from_twice(out)
    }

    pub(crate) fn act_eps(&self, x: &[i32], out: &mut [i32]) {
        for i in 0..x.len() {
            out[self.perm[i] as usize] = self.flips[i] as i32 * x[i];
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let m = self.perm.len();
        let mut perm = SmallVec::with_capacity(m);
        let mut flips = SmallVec::with_capacity(m);
        for i in 0..m {
            let mid = other.perm[i] as usize;
            perm.push(self.perm[mid]);
            flips.push(other.flips[i] * self.flips[mid]);
        }
        WeylElement {
            perm,
            flips,
            sigma: self.sigma ^ other.sigma,
        }
    }

    /// Determinant as an orthogonal map of the weight space.
    pub fn sign(&self) -> i32 {
        let mut s = perm_parity(&self.perm);
        for &f in &self.flips {
            s *= f as i32;
        }
        if self.sigma {
            -s
        } else {
            s
        }
    }

    /// All elements of W₀, lexicographic in (perm, flips) with −1 before +1.
    pub fn enumerate_w0(m: usize, series: Series) -> Vec<WeylElement> {
        let mut out = Vec::new();
        let mut perms = Vec::new();
        permutations(&mut (0..m as u8).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        for p in perms {
            for mask in 0..(1u32 << m) {
                // bit set (from the most significant position) means −1
                let flips: SmallVec<[i8; 8]> = (0..m)
                    .map(|i| {
                        if mask & (1 << (m - 1 - i)) == 0 {
                            -1
                        } else {
                            1
                        }
                    })
                    .collect();
                if series == Series::D && flips.iter().filter(|&&f| f < 0).count() % 2 == 1 {
                    continue;
                }
                out.push(WeylElement {
                    perm: p.iter().copied().collect(),
                    flips,
                    sigma: false,
                });
            }
        }
        out
    }
}

fn permutations(items: &mut Vec<u8>, start: usize, out: &mut Vec<Vec<u8>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

fn perm_parity(p: &[u8]) -> i32 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The W₀ element sending regular doubled ε-coordinates `x` into the
/// dominant chamber: absolute values sorted descending, all positive except
/// possibly the last for D, whose sign keeps the flip count even.
pub(crate) fn chamber_element(x: &[i32], series: Series) -> Option<WeylElement> {
    if !so_regular(x, series) {
        return None;
    }
    let m = x.len();
    let mut order: SmallVec<[usize; 8]> = (0..m).collect();
    order.sort_by(|&a, &b| x[b].abs().cmp(&x[a].abs()));
    let mut perm: SmallVec<[u8; 8]> = SmallVec::from_elem(0, m);
    for (pos, &i) in order.iter().enumerate() {
        perm[i] = pos as u8;
    }
    let mut flips: SmallVec<[i8; 8]> = x.iter().map(|&v| if v < 0 { -1 } else { 1 }).collect();
    if series == Series::D {
        let neg = flips.iter().filter(|&&f| f < 0).count();
        if neg % 2 == 1 {
            // fix parity on the coordinate landing last (smallest |x|)
            let last = order[m - 1];
            flips[last] = -flips[last];
        }
    }
    Some(WeylElement {
        perm,
        flips,
        sigma: false,
    })
}

/// Dominant representative of the W₀-orbit of arbitrary doubled
/// ε-coordinates (plain action), regular or not.
pub(crate) fn dominant_rep(x: &[i32], series: Series) -> Coords {
    let mut out: Coords = x.iter().map(|v| v.abs()).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    if series == Series::D {
        let neg = x.iter().filter(|&&v| v < 0).count();
        let has_zero = x.contains(&0);
        if neg % 2 == 1 && !has_zero {
            let l = out.len() - 1;
            out[l] = -out[l];
        }
    }
    out
}

impl RootSystem {
    /// W = W₀ × {1, σ}; W₀ first.
    pub fn weyl_elements(&self) -> Vec<WeylElement> {
        let mut v: Vec<WeylElement> = self.w0().to_vec();
        v.extend(self.w0().iter().map(|w| w.with_sigma(true)));
        v
    }

    pub fn w0_order(&self) -> usize {
        let m = self.m();
        let fact: usize = (1..=m).product();
        match self.series() {
            Series::B => (1 << m) * fact,
            Series::D => (1 << (m - 1)) * fact,
        }
    }

    /// w·λ = w(λ+ρ) − ρ.
    pub fn dot_act(&self, w: &WeylElement, lambda: &Weight) -> Weight {
        self.rho_unshift(&w.act(&self.rho_shift(lambda)))
    }

    /// The unique g0-dominant weight in the dot-orbit of a regular μ, with
    /// the W₀ element reaching it.
    pub fn dominant_conjugate(&self, mu: &Weight) -> Result<(Weight, WeylElement)> {
        self.check_rank(mu)?;
        let shifted = self.rho_shift(mu);
        let w = chamber_element(shifted.eps_twice(), self.series())
            .ok_or_else(|| Error::NotRegular(mu.to_string()))?;
        Ok((self.rho_unshift(&w.act(&shifted)), w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn group_orders() {
        for (k, n) in [(3, 2), (4, 4), (5, 8), (6, 24), (7, 48), (8, 192), (9, 384)] {
            let rs = RootSystem::new(k).unwrap();
            assert_eq!(rs.w0().len(), n, "k={k}");
            assert_eq!(rs.w0_order(), n);
            assert_eq!(rs.weyl_elements().len(), 2 * n);
        }
    }

    #[test]
    fn enumeration_distinct_and_ordered() {
        let rs = RootSystem::new(7).unwrap();
        let probe = w("0|3,2,1");
        let mut images: Vec<_> = rs.w0().iter().map(|g| g.act(&probe)).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 48);
        assert!(rs.w0()[0].perm() == vec![0, 1, 2]);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(WeylElement::identity(3).sign(), 1);
        assert_eq!(WeylElement::sigma(3).sign(), -1);
        let dbl = WeylElement::new(&[0, 1, 2], &[1, -1, -1], false, Series::D).unwrap();
        assert_eq!(dbl.sign(), 1);
        let single = WeylElement::new(&[0, 1], &[1, -1], false, Series::B).unwrap();
        assert_eq!(single.sign(), -1);
        assert!(WeylElement::new(&[0, 1], &[1, -1], false, Series::D).is_err());
    }

    #[test]
    fn action_examples() {
        let rs3 = RootSystem::new(3).unwrap();
        assert_eq!(WeylElement::sigma(1).act(&w("1/2|1/2")), w("-1/2|1/2"));
        assert_eq!(rs3.dot_act(&WeylElement::sigma(1), &w("2|1")), w("-1|1"));
        assert_eq!(rs3.dot_act(&WeylElement::sigma(1), &w("1|0")), w("0|0"));
        // transpose(2,3) after flipping coordinates 2 and 3
        let flip = WeylElement::new(&[0, 1, 2], &[1, -1, -1], false, Series::D).unwrap();
        let tr = WeylElement::new(&[0, 2, 1], &[1, 1, 1], false, Series::D).unwrap();
        assert_eq!(tr.compose(&flip).act(&w("-3|4,2,-3")), w("-3|4,3,-2"));
    }

    #[test]
    fn dominant_conjugate_examples() {
        let rs = RootSystem::new(6).unwrap();
        let (d, _) = rs
            .dominant_conjugate(&rs.rho_unshift(&w("-3|4,2,-3")))
            .unwrap();
        assert_eq!(rs.rho_shift(&d), w("-3|4,3,-2"));
        let rs = RootSystem::new(7).unwrap();
        let (d, _) = rs
            .dominant_conjugate(&rs.rho_unshift(&w("-5/2|9/2,3/2,5/2")))
            .unwrap();
        assert_eq!(rs.rho_shift(&d), w("-5/2|9/2,5/2,3/2"));
        let (d, g) = rs.dominant_conjugate(&w("1|2,0,0")).unwrap();
        assert_eq!(d, w("1|2,0,0"));
        assert!(g.is_identity());
        assert!(rs
            .dominant_conjugate(&rs.rho_unshift(&w("0|2,2,1")))
            .is_err());
    }

    fn regular_weight(k: i64) -> impl Strategy<Value = (RootSystem, Weight)> {
        let rs = RootSystem::new(k).unwrap();
        let m = rs.m();
        let s2 = rs.s_twice();
        proptest::collection::vec(-12i32..12, m + 1).prop_filter_map("regular", move |v| {
            let mut t = vec![2 * v[0]];
            t.extend(v[1..].iter().map(|x| 2 * x + if s2 == 1 { 1 } else { 0 }));
            let wt = Weight::from_twice(t);
            if rs.is_regular(&wt) {
                Some((rs.clone(), wt))
            } else {
                None
            }
        })
    }

    proptest! {
        #[test]
        fn sign_is_homomorphism(k in 3i64..9, a in 0usize..384, b in 0usize..384, sa: bool, sb: bool) {
            let rs = RootSystem::new(k).unwrap();
            let n = rs.w0().len();
            let x = rs.w0()[a % n].with_sigma(sa);
            let y = rs.w0()[b % n].with_sigma(sb);
            prop_assert_eq!(x.compose(&y).sign(), x.sign() * y.sign());
            let probe = Weight::from_twice((0..=rs.m() as i32).map(|i| 3 * i + 1));
            prop_assert_eq!(x.compose(&y).act(&probe), x.act(&y.act(&probe)));
        }

        #[test]
        fn dominantization_properties((rs, mu) in (3i64..8).prop_flat_map(regular_weight)) {
            let (d, g) = rs.dominant_conjugate(&mu).unwrap();
            prop_assert!(!g.has_sigma());
            prop_assert!(rs.is_g0_dominant(&d));
            prop_assert_eq!(rs.dot_act(&g, &mu), d.clone());
            let (d2, g2) = rs.dominant_conjugate(&d).unwrap();
            prop_assert_eq!(&d2, &d);
            prop_assert!(g2.is_identity());
            let mut a: Vec<i32> = rs.rho_shift(&mu).eps_twice().iter().map(|x| x.abs()).collect();
            let mut b: Vec<i32> = rs.rho_shift(&d).eps_twice().iter().map(|x| x.abs()).collect();
            a.sort(); b.sort();
            prop_assert_eq!(a, b);
            for x in rs.w0() {
                let (e, _) = rs.dominant_conjugate(&rs.dot_act(x, &mu)).unwrap();
                prop_assert_eq!(&e, &d);
            }
        }
    }
}
