//! Conley-Zehnder indices and Bott functions of rotation-sum paths.
//!
//! A [`RotationPath`] is `t -> diag(e^{2 pi i w_1 t}, ..., e^{2 pi i w_d t})` on
//! `[0, duration]`. Degenerate endpoints use the lower semicontinuous extension,
//! so a constant planar block has index `-1`.

mod bott;
pub mod planar;
mod twist;

pub use bott::{block_bott, bott_function, BottFunction, Jump};
pub use twist::{
    ellipsoid_min_index, ellipsoid_min_index_scaled, eps_bound, eps_schedule, orbit_index,
    toric_lift_path, toric_orbit_index, toric_orbit_index_engine, twist_ga, twist_ga_eps,
};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lens_core::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("the trivial class has no twist path")]
    TrivialClass,
    #[error("eps must lie in (0, {bound}) for this class")]
    EpsTooLarge { bound: Rational },
    #[error("path dimension {got} does not match expected {expected}")]
    DimensionMismatch { expected: u32, got: u32 },
    #[error("j_a = {j} and m = {m} are not coprime")]
    NotCoprime { j: i64, m: i64 },
    #[error("invalid rotation path: {0}")]
    BadPath(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationPath {
    blocks: Vec<(Rational, u32)>,
    duration: Rational,
}

impl RotationPath {
    pub fn new(blocks: Vec<(Rational, u32)>, duration: Rational) -> Result<Self, IndexError> {
        if duration <= Rational::zero() {
            return Err(IndexError::BadPath("duration must be positive"));
        }
        if blocks.is_empty() {
            return Err(IndexError::BadPath("no blocks"));
        }
        if blocks.iter().any(|&(_, m)| m == 0) {
            return Err(IndexError::BadPath("zero multiplicity"));
        }
        Ok(Self { blocks, duration })
    }

    /// Ordered block speeds, consecutive equal speeds grouped.
    pub fn from_speeds(speeds: &[Rational], duration: Rational) -> Result<Self, IndexError> {
        let mut blocks: Vec<(Rational, u32)> = Vec::new();
        for &w in speeds {
            match blocks.last_mut() {
                Some((v, m)) if *v == w => *m += 1,
                _ => blocks.push((w, 1)),
            }
        }
        Self::new(blocks, duration)
    }

    pub fn blocks(&self) -> &[(Rational, u32)] {
        &self.blocks
    }

    pub fn duration(&self) -> Rational {
        self.duration
    }

    /// Half the symplectic dimension.
    pub fn half_dim(&self) -> u32 {
        self.blocks.iter().map(|&(_, m)| m).sum()
    }

    pub fn speeds(&self) -> Vec<Rational> {
        self.blocks
            .iter()
            .flat_map(|&(w, m)| std::iter::repeat(w).take(m as usize))
            .collect()
    }

    /// Total rotation in turns of each block, with multiplicity.
    pub fn rotations(&self) -> impl Iterator<Item = (Rational, u32)> + '_ {
        self.blocks.iter().map(move |&(w, m)| (w * self.duration, m))
    }

    /// The `k`-th iterate. Rotation paths have linear lifts, so this is a longer run.
    pub fn iterate(&self, k: u32) -> Self {
        Self {
            blocks: self.blocks.clone(),
            duration: self.duration * Rational::from_integer(k as i64),
        }
    }

    /// Pointwise product of two simultaneously diagonal paths of equal duration.
    pub fn compose(&self, other: &Self) -> Result<Self, IndexError> {
        if self.half_dim() != other.half_dim() {
            return Err(IndexError::DimensionMismatch {
                expected: self.half_dim(),
                got: other.half_dim(),
            });
        }
        if self.duration != other.duration {
            return Err(IndexError::BadPath("durations differ"));
        }
        let speeds: Vec<Rational> = self
            .speeds()
            .iter()
            .zip(other.speeds())
            .map(|(a, b)| *a + b)
            .collect();
        Self::from_speeds(&speeds, self.duration)
    }

    /// Adds `q` full loops per unit time to every block.
    pub fn shift_speeds(&self, q: Rational) -> Self {
        Self {
            blocks: self.blocks.iter().map(|&(w, m)| (w + q, m)).collect(),
            duration: self.duration,
        }
    }
}

/// Index of a single planar rotation by `x` turns.
pub fn block_cz(x: Rational) -> i64 {
    if x.is_integer() {
        2 * x.to_integer() - 1
    } else {
        2 * x.floor().to_integer() + 1
    }
}

pub fn cz_index(path: &RotationPath) -> i64 {
    path.rotations().map(|(x, m)| m as i64 * block_cz(x)).sum()
}

pub fn mean_index(path: &RotationPath) -> Rational {
    path.rotations()
        .map(|(x, m)| x * Rational::from_integer(2 * m as i64))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Elliptic certificate: `max B - B(1) >= n`.
pub fn elliptic_certificate(bott: &BottFunction, n: i64) -> bool {
    bott.max_over_circle() - bott.value_at_one >= n
}

pub(crate) fn half() -> Rational {
    Rational::new(1, 2)
}

pub(crate) fn one() -> Rational {
    Rational::one()
}
