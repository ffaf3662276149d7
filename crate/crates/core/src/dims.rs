//! Dimensions from numerator expressions through the Weyl-type product
//! over the even positive roots.

use num_rational::Ratio;

use crate::charring::{NumeratorExpression, Osp, WeylSum};
use crate::error::{Error, Result};
use crate::weight::Weight;

impl Osp {
    /// Σ_terms coeff · Σ_B Π_{α∈Δ₀̄⁺} (α, base − ΣB)/(α, ρ₀̄).
    pub fn dim_numerator(&self, expr: &NumeratorExpression) -> Result<Ratio<i128>> {
        let even = self.even_positive();
        let denoms: Vec<i128> = even
            .iter()
            .map(|a| self.form_x4(a, self.rho_even()) as i128)
            .collect();
        if denoms.contains(&0) {
            return Err(Error::Internal("even root orthogonal to ρ₀̄".into()));
        }
        let mut total = Ratio::from_integer(0i128);
        for term in &expr.terms {
            if term.sum != WeylSum::Full {
                return Err(Error::Unsupported(
                    "dimension of an expression summed over W₀ only".into(),
                ));
            }
            self.check_rank(&term.base)?;
            let odd: Vec<&Weight> = term
                .odd
                .iter()
                .map(|r| &self.odd_weights()[self.odd_index(*r).expect("odd root")])
                .collect();
            let mut sum = Ratio::from_integer(0i128);
            for mask in 0u32..(1 << odd.len()) {
                let mut eta = term.base.clone();
                for (i, b) in odd.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        eta = &eta - b;
                    }
                }
                let mut p = Ratio::from_integer(1i128);
                for (a, d) in even.iter().zip(&denoms) {
                    p *= Ratio::new(self.form_x4(a, &eta) as i128, *d);
                    if p == Ratio::from_integer(0) {
                        break;
                    }
                }
                sum += p;
            }
            let c = Ratio::new(*term.coeff.numer() as i128, *term.coeff.denom() as i128);
            total += c * sum;
        }
        Ok(total)
    }

    fn positive_dim(&self, lambda: &Weight, r: Ratio<i128>) -> Result<i64> {
        if !r.is_integer() || r <= Ratio::from_integer(0) {
            return Err(Error::Internal(format!(
                "dimension formula gives {r} for {lambda}"
            )));
        }
        i64::try_from(r.to_integer())
            .map_err(|_| Error::Internal(format!("dimension of {lambda} overflows")))
    }

    pub fn dim_l(&self, lambda: &Weight) -> Result<i64> {
        self.require_g_dominant(lambda)?;
        let expr = match self.atypical_data(lambda)? {
            Some(_) => self.closed_char_l(lambda)?,
            None => self.chi_v(lambda)?,
        };
        let r = self.dim_numerator(&expr)?;
        self.positive_dim(lambda, r)
    }

    pub fn dim_k(&self, lambda: &Weight) -> Result<i64> {
        self.require_g_dominant(lambda)?;
        let typical = self.atypical_data(lambda)?.is_none();
        if typical || !self.is_g_dominant(&self.sigma_dual(lambda)) {
            let r = self.dim_numerator(&self.chi_v(lambda)?)?;
            return self.positive_dim(lambda, r);
        }
        let mut total = 0;
        for node in &self.kac_graph(lambda)?.nodes {
            total += self.dim_l(&node.weight)?;
        }
        Ok(total)
    }
}
