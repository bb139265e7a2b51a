//! The identity `(1+z)(1 − 𝔠(z)) Π_k (1 − Δ_k(z)) = 1 − Σ (−1)ⁿ (dₙ₋₁ − dₙ) zⁿ`.

use alloc::vec;
use alloc::vec::Vec;

use crate::codes::{CodeFamilies, ListCaps};
use crate::expansion::BoundsPair;

use super::MeasureError;

/// Coefficients of both sides through `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub degree: usize,
    /// `1 − Σ (−1)ⁿ (dₙ₋₁ − dₙ) zⁿ` with `d₀ = 0`.
    pub boundary_side: Vec<i128>,
    /// `(1+z)(1 − 𝔠(z))(1 − Δ₀(z)) Π_{k≥1} (1 − Δ_k(z))`.
    pub code_side: Vec<i128>,
    /// Indices `k ≥ 1` whose Δ_k has words of length `≤ degree`.
    pub delta_indices: Vec<usize>,
}

impl IdentityReport {
    pub fn first_mismatch(&self) -> Option<usize> {
        (0..=self.degree).find(|&n| self.boundary_side[n] != self.code_side[n])
    }

    pub fn holds(&self) -> bool {
        self.first_mismatch().is_none()
    }
}

fn mul_trunc(a: &[i128], b: &[i128], degree: usize) -> Vec<i128> {
    let mut out = vec![0i128; degree + 1];
    for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, &y) in b.iter().enumerate().take(degree + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus(census: &[u128], degree: usize) -> Vec<i128> {
    let mut out = vec![0i128; degree + 1];
    out[0] = 1;
    for (n, &c) in census.iter().enumerate().take(degree + 1).skip(1) {
        out[n] = -i128::try_from(c).expect("census fits");
    }
    out
}

/// Compares both sides coefficient by coefficient, using the structural boundary sequence.
pub fn series_identity_check(bounds: &BoundsPair, degree: usize) -> Result<IdentityReport, MeasureError> {
    let d = bounds.structural();
    let fam = CodeFamilies::new(d, degree.max(1))?;
    let census_only = ListCaps { list_len: 0, max_words: 0 };
    let dd = |k: usize| if k == 0 { 0 } else { i128::from(d.digit(k - 1).expect("known by the families")) };
    let mut boundary_side = vec![1i128];
    for n in 1..=degree {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        boundary_side.push(-sign * (dd(n - 1) - dd(n)));
    }
    let mut code_side = vec![0i128; degree + 1];
    code_side[0] = 1;
    if degree >= 1 {
        code_side[1] = 1;
    }
    code_side = mul_trunc(&code_side, &one_minus(&fam.cfrak(census_only).census, degree), degree);
    code_side = mul_trunc(&code_side, &one_minus(&fam.delta0(census_only).census, degree), degree);
    let delta_indices = fam.delta_indices();
    for &k in &delta_indices {
        code_side = mul_trunc(&code_side, &one_minus(&fam.delta(k, census_only).census, degree), degree);
    }
    Ok(IdentityReport { degree, boundary_side, code_side, delta_indices })
}
