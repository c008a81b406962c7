//! Ranks of positive equivariant symplectic homology for the prequantization
//! form on `L^{2n+1}_p(1, ..., 1)` over `CP^n`.
//!
//! Actions are carried as rational coefficients of `pi`.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::frac;
use crate::lens_core::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EshError {
    #[error("empty rank table")]
    EmptyTable,
    #[error("action bound {0} pi lies on the action spectrum")]
    OnSpectrum(Rational),
    #[error("invalid parameters: {0}")]
    BadParams(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRanks {
    pub n: i64,
    pub p: i64,
    pub j: i64,
    /// Coefficient of `pi`; `None` means unbounded.
    pub action_bound: Option<Rational>,
    pub entries: BTreeMap<Rational, u32>,
}

impl GradedRanks {
    pub fn to_json(&self) -> Value {
        let ranks: Vec<Value> = self
            .entries
            .iter()
            .map(|(d, r)| json!({"degree": frac::to_string(d), "rank": r}))
            .collect();
        json!({
            "context": {
                "n": self.n,
                "p": self.p,
                "class": self.j,
                "action_bound_pi": self.action_bound.as_ref().map(frac::to_string),
            },
            "ranks": ranks,
        })
    }

    pub fn total_rank(&self) -> u32 {
        self.entries.values().sum()
    }
}

fn check(n: i64, p: i64, j: i64) -> Result<(), EshError> {
    if n < 1 || p < 2 {
        return Err(EshError::BadParams("need n >= 1 and p >= 2"));
    }
    if j < 1 || j > p {
        return Err(EshError::BadParams("class j outside 1..=p"));
    }
    Ok(())
}

/// Index `(2n+2) k / p - n` of the `k`-th iterate of a simple fibre.
pub fn iterate_index(n: i64, p: i64, k: i64) -> Rational {
    Rational::new((2 * n + 2) * k, p) - n
}

fn add_ladder(entries: &mut BTreeMap<Rational, u32>, n: i64, p: i64, iterate: i64) {
    let base = iterate_index(n, p, iterate);
    for i in 0..=n {
        *entries.entry(base + 2 * i).or_insert(0) += 1;
    }
}

/// Direct sum over the first `k_max` fibre iterates in class `j`, namely
/// `(k - 1) p + j` for `k = 1..=k_max`.
pub fn graded_ranks(n: i64, p: i64, j: i64, k_max: i64) -> Result<GradedRanks, EshError> {
    check(n, p, j)?;
    if k_max < 1 {
        return Err(EshError::BadParams("k_max must be at least 1"));
    }
    let mut entries = BTreeMap::new();
    for k in 1..=k_max {
        add_ladder(&mut entries, n, p, (k - 1) * p + j);
    }
    Ok(GradedRanks { n, p, j, action_bound: None, entries })
}

pub fn min_degree(ranks: &GradedRanks) -> Result<Rational, EshError> {
    ranks.entries.keys().next().copied().ok_or(EshError::EmptyTable)
}

/// Action of the `iterate`-th fibre iterate at scale `t`, as a coefficient of `pi`.
pub fn fibre_action(p: i64, t: Rational, iterate: i64) -> Rational {
    t * t * Rational::new(iterate, p)
}

/// Filtered version keeping iterates with action below `bound` (coefficient of `pi`).
pub fn filtered_ranks(
    n: i64,
    p: i64,
    j: i64,
    t: Rational,
    bound: Rational,
) -> Result<GradedRanks, EshError> {
    check(n, p, j)?;
    if t <= Rational::from_integer(0) {
        return Err(EshError::BadParams("scale must be positive"));
    }
    let mut entries = BTreeMap::new();
    let mut k = 1;
    loop {
        let it = (k - 1) * p + j;
        let action = fibre_action(p, t, it);
        if action == bound {
            return Err(EshError::OnSpectrum(bound));
        }
        if action > bound {
            break;
        }
        add_ladder(&mut entries, n, p, it);
        k += 1;
    }
    Ok(GradedRanks { n, p, j, action_bound: Some(bound), entries })
}

/// Carrier degrees `(2n+2)/p - n + 2i` of the simple class and how many lie below `h_a = (2n+2)/p`.
pub fn carrier_degrees(n: i64, p: i64) -> (Vec<Rational>, usize) {
    let base = iterate_index(n, p, 1);
    let degrees: Vec<Rational> = (0..=n).map(|i| base + 2 * i).collect();
    let h = Rational::new(2 * n + 2, p);
    let below = degrees.iter().filter(|d| **d < h).count();
    (degrees, below)
}
