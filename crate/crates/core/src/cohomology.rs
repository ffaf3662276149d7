//! First and second cohomology of osp(k|2) with coefficients in an
//! irreducible or a Kac module, as a lookup over the principal block.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::RootSystem;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficients {
    Irreducible,
    Kac,
}

impl RootSystem {
    /// Λ⁽⁰⁾ = 0 and Λ⁽ⁱ⁾ = (2m+i−1−2s | i−1, 0, …, 0) for i ≥ 1.
    pub fn cohomology_weight(&self, i: u32) -> Weight {
        let mut t = vec![0; self.m() + 1];
        if i > 0 {
            let i = i as i32;
            t[0] = 2 * (2 * self.m() as i32 + i - 1) - 2 * self.s_twice();
            t[1] = 2 * (i - 1);
        }
        Weight::from_twice(t)
    }

    /// dim H^degree(g, M_λ) for M = L or K.
    pub fn cohomology_dim(&self, degree: u32, coeff: Coefficients, lambda: &Weight) -> Result<u32> {
        if !(1..=2).contains(&degree) {
            return Err(Error::Parse {
                input: degree.to_string(),
                reason: "cohomological degree must be 1 or 2".into(),
            });
        }
        self.require_g_dominant(lambda)?;
        let zero = self
            .atypical_data(&Weight::zero(self.m()))?
            .map(|d| d.lambda_bar);
        let here = self.atypical_data(lambda)?.map(|d| d.lambda_bar);
        if here.is_none() || here != zero {
            return Ok(0);
        }
        let hit: &[u32] = match (degree, coeff) {
            (1, Coefficients::Irreducible) => &[2],
            (1, Coefficients::Kac) => &[3],
            (2, Coefficients::Irreducible) => &[1, 3],
            _ => &[1, 4],
        };
        Ok(hit.iter().any(|&i| &self.cohomology_weight(i) == lambda) as u32)
    }
}
