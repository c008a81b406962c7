use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LensError {
    #[error("modulus p = {0} must be at least 2")]
    BadModulus(i64),
    #[error("weight {weight} is not coprime with p = {p}")]
    NotCoprime { weight: i64, p: i64 },
    #[error("weight list is empty")]
    EmptyWeights,
    #[error("class index j = {j} outside 1..={p}")]
    OutOfRange { j: i64, p: i64 },
}

/// Representative of `x mod p` in the half-open window `(-p/2, p/2]`.
pub fn centered_residue(x: i64, p: i64) -> i64 {
    let r = x.rem_euclid(p);
    if 2 * r > p {
        r - p
    } else {
        r
    }
}

/// Inverse of `u` modulo `p`, if it exists.
pub fn mod_inverse(u: i64, p: i64) -> Option<i64> {
    let e = u.rem_euclid(p).extended_gcd(&p);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(p))
}

/// The lens space `L^{2n+1}_p(l_0, ..., l_n)` with normalized weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LensSpace {
    p: i64,
    weights: Vec<i64>,
}

impl LensSpace {
    pub fn new(p: i64, raw: &[i64]) -> Result<Self, LensError> {
        normalize_weights(p, raw)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().sum()
    }

    /// `L^{2n+1}_p(1, ..., 1)`.
    pub fn standard(p: i64, n: usize) -> Result<Self, LensError> {
        normalize_weights(p, &vec![1; n + 1])
    }
}

impl std::fmt::Display for LensSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "L^{}_{}({})", 2 * self.n() + 1, self.p, w.join(","))
    }
}

pub fn normalize_weights(p: i64, raw: &[i64]) -> Result<LensSpace, LensError> {
    if p < 2 {
        return Err(LensError::BadModulus(p));
    }
    if raw.is_empty() {
        return Err(LensError::EmptyWeights);
    }
    for &w in raw {
        if w.gcd(&p) != 1 {
            return Err(LensError::NotCoprime { weight: w, p });
        }
    }
    // raw[0] is a unit, checked above
    let inv = mod_inverse(raw[0], p).expect("unit");
    let weights = raw.iter().map(|&w| centered_residue(w * inv, p)).collect();
    Ok(LensSpace { p, weights })
}

/// A free homotopy class `a`, identified with the power `j` of the deck generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomotopyClass {
    pub j: i64,
    pub homotopy_weights: Vec<i64>,
}

impl HomotopyClass {
    pub fn is_trivial(&self) -> bool {
        self.homotopy_weights.iter().all(|&w| w == 0)
    }

    pub fn weight_sum(&self) -> i64 {
        self.homotopy_weights.iter().sum()
    }
}

pub fn homotopy_class(lens: &LensSpace, j: i64) -> Result<HomotopyClass, LensError> {
    if j < 1 || j > lens.p {
        return Err(LensError::OutOfRange { j, p: lens.p });
    }
    let homotopy_weights = lens
        .weights
        .iter()
        .map(|&l| centered_residue(j * l, lens.p))
        .collect();
    Ok(HomotopyClass { j, homotopy_weights })
}

/// Order of the first Chern class of the contact structure.
pub fn chern_order(lens: &LensSpace) -> i64 {
    let s = lens.weight_sum().rem_euclid(lens.p);
    lens.p / s.gcd(&lens.p)
}

pub fn classes(lens: &LensSpace) -> Vec<HomotopyClass> {
    (1..=lens.p)
        .map(|j| homotopy_class(lens, j).expect("j in range"))
        .collect()
}
