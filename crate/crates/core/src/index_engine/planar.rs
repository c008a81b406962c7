//! Floating point oracle for planar symplectic paths.
//!
//! The index is read off from the winding interval `I(Phi)`: the set of
//! total turns `Delta(z)` that `Phi(t) z` makes, over all directions `z`.
//! `I(Phi)` contains an integer exactly when the endpoint has a positive real
//! eigenvalue, so the trace of the endpoint decides which branch applies.

use std::f64::consts::PI;

use thiserror::Error;

pub type Mat2 = [[f64; 2]; 2];

pub const IDENTITY: Mat2 = [[1.0, 0.0], [0.0, 1.0]];

const DET_TOL: f64 = 1e-9;
const DEGENERATE_TOL: f64 = 1e-6;
const GRID: usize = 360;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanarError {
    #[error("determinant drifts from 1 at sample {0}")]
    NotSymplectic(usize),
    #[error("path does not start at the identity")]
    NotAtIdentity,
    #[error("a test vector turns by a quarter turn or more at step {0}")]
    UnresolvedWinding(usize),
    #[error("need at least two samples")]
    TooFewSamples,
}

pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

pub fn det(a: &Mat2) -> f64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn inverse(a: &Mat2) -> Mat2 {
    let d = det(a);
    [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]
}

pub fn rotation(turns: f64) -> Mat2 {
    let (s, c) = (2.0 * PI * turns).sin_cos();
    [[c, -s], [s, c]]
}

fn apply(a: &Mat2, v: [f64; 2]) -> [f64; 2] {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPathSample {
    samples: Vec<Mat2>,
}

impl PlanarPathSample {
    pub fn new(samples: Vec<Mat2>) -> Result<Self, PlanarError> {
        if samples.len() < 2 {
            return Err(PlanarError::TooFewSamples);
        }
        let s0 = &samples[0];
        let off = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (s0[i][j] - IDENTITY[i][j]).abs())
            .fold(0.0, f64::max);
        if off > DET_TOL {
            return Err(PlanarError::NotAtIdentity);
        }
        for (k, m) in samples.iter().enumerate() {
            if (det(m) - 1.0).abs() > DET_TOL {
                return Err(PlanarError::NotSymplectic(k));
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[Mat2] {
        &self.samples
    }

    pub fn endpoint(&self) -> &Mat2 {
        self.samples.last().expect("nonempty")
    }
}

/// Total turns made by `Phi(t) v`.
pub fn winding(path: &PlanarPathSample, v: [f64; 2]) -> Result<f64, PlanarError> {
    let mut total = 0.0;
    let mut prev = v;
    for (k, m) in path.samples.iter().enumerate().skip(1) {
        let cur = apply(m, v);
        let cross = prev[0] * cur[1] - prev[1] * cur[0];
        let dot = prev[0] * cur[0] + prev[1] * cur[1];
        let step = cross.atan2(dot);
        if step.abs() >= PI / 2.0 {
            return Err(PlanarError::UnresolvedWinding(k));
        }
        total += step;
        prev = cur;
    }
    Ok(total / (2.0 * PI))
}

/// Real eigen-directions of `p`, when they exist.
fn eigen_directions(p: &Mat2) -> Vec<[f64; 2]> {
    let tr = p[0][0] + p[1][1];
    let disc = tr * tr - 4.0;
    if disc < 0.0 {
        return vec![];
    }
    let s = disc.sqrt();
    let mut out = vec![];
    for lambda in [(tr + s) / 2.0, (tr - s) / 2.0] {
        let a = [p[0][1], lambda - p[0][0]];
        let b = [lambda - p[1][1], p[1][0]];
        let na = a[0].hypot(a[1]);
        let nb = b[0].hypot(b[1]);
        let (v, nv) = if na >= nb { (a, na) } else { (b, nb) };
        if nv > 1e-12 {
            out.push([v[0] / nv, v[1] / nv]);
        }
    }
    out
}

/// Sampled winding interval `[min, max]`.
pub fn winding_interval(path: &PlanarPathSample) -> Result<(f64, f64), PlanarError> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for d in directions(path.endpoint()) {
        let w = winding(path, d)?;
        lo = lo.min(w);
        hi = hi.max(w);
    }
    Ok((lo, hi))
}

fn directions(p: &Mat2) -> Vec<[f64; 2]> {
    let mut dirs: Vec<[f64; 2]> = (0..GRID)
        .map(|i| {
            let a = PI * i as f64 / GRID as f64;
            [a.cos(), a.sin()]
        })
        .collect();
    dirs.extend(eigen_directions(p));
    dirs
}

/// `(mu_tilde, degenerate)`. For nondegenerate endpoints `mu_tilde` is the
/// Conley-Zehnder index; otherwise the index is `mu_tilde` or `mu_tilde - 1`.
pub fn planar_index_numeric(path: &PlanarPathSample) -> Result<(i64, bool), PlanarError> {
    let p = path.endpoint();
    let tr = p[0][0] + p[1][1];
    let degenerate = (2.0 - tr).abs() <= DEGENERATE_TOL;
    if tr >= 2.0 - DEGENERATE_TOL {
        let mut best = f64::INFINITY;
        let mut k = 0i64;
        for d in directions(p) {
            let w = winding(path, d)?;
            let dist = (w - w.round()).abs();
            if dist < best {
                best = dist;
                k = w.round() as i64;
            }
        }
        Ok((2 * k, degenerate))
    } else {
        let (lo, hi) = winding_interval(path)?;
        let k = ((lo + hi) / 2.0).floor() as i64;
        Ok((2 * k + 1, degenerate))
    }
}

/// Samples `S R(x t) S^{-1}` on `[0, 1]`.
pub fn conjugated_rotation(x: f64, s: &Mat2, steps: usize) -> Result<PlanarPathSample, PlanarError> {
    let si = inverse(s);
    let samples = (0..=steps)
        .map(|k| {
            let t = k as f64 / steps as f64;
            mul(&mul(s, &rotation(x * t)), &si)
        })
        .collect();
    PlanarPathSample::new(samples)
}

/// Symmetric generator `[[a, b], [b, d]]`.
pub type Sym2 = [f64; 3];

/// `exp(tau J A)` with `J = [[0, -1], [1, 0]]`.
pub fn exp_generator(a: &Sym2, tau: f64) -> Mat2 {
    let m = [[-tau * a[1], -tau * a[2]], [tau * a[0], tau * a[1]]];
    let d = tau * tau * (a[0] * a[2] - a[1] * a[1]);
    let (c, f) = if d > 1e-14 {
        let s = d.sqrt();
        (s.cos(), s.sin() / s)
    } else if d < -1e-14 {
        let s = (-d).sqrt();
        (s.cosh(), s.sinh() / s)
    } else {
        (1.0, 1.0)
    };
    [[c + f * m[0][0], f * m[0][1]], [f * m[1][0], c + f * m[1][1]]]
}

/// Solves `Phi' = J A(t) Phi` for piecewise constant `A`, equal-length pieces on `[0, 1]`.
pub fn integrate(pieces: &[Sym2], substeps: usize) -> Result<PlanarPathSample, PlanarError> {
    let tau = 1.0 / (pieces.len() * substeps) as f64;
    let mut samples = vec![IDENTITY];
    let mut cur = IDENTITY;
    for a in pieces {
        let e = exp_generator(a, tau);
        for _ in 0..substeps {
            cur = mul(&e, &cur);
            samples.push(cur);
        }
    }
    PlanarPathSample::new(samples)
}

/// Bott function of a sampled planar path, read from its endpoint type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NumericBott {
    /// Endpoint conjugate to a rotation; `turns` is the lifted total rotation.
    Elliptic { turns: f64 },
    Hyperbolic { index: i64 },
    NearParabolic,
}

impl NumericBott {
    /// Value at `e^{2 pi i theta}`. `None` within `tol` of a jump.
    pub fn eval(&self, theta: f64, tol: f64) -> Option<i64> {
        match *self {
            NumericBott::Hyperbolic { index } => Some(index),
            NumericBott::NearParabolic => None,
            NumericBott::Elliptic { turns } => {
                let fl = turns.floor();
                let f = turns - fl;
                let b1 = 2 * fl as i64 + 1;
                let t = theta - theta.floor();
                let t = t.min(1.0 - t);
                let edge = if f < 0.5 { f } else { 1.0 - f };
                if (t - edge).abs() < tol {
                    return None;
                }
                Some(match (f < 0.5, t < edge) {
                    (true, true) => b1,
                    (true, false) => b1 - 1,
                    (false, true) => b1,
                    (false, false) => b1 + 1,
                })
            }
        }
    }
}

pub fn numeric_bott(path: &PlanarPathSample) -> Result<NumericBott, PlanarError> {
    let p = path.endpoint();
    let tr = p[0][0] + p[1][1];
    if (tr.abs() - 2.0).abs() <= DEGENERATE_TOL {
        return Ok(NumericBott::NearParabolic);
    }
    let (mu, _) = planar_index_numeric(path)?;
    if tr.abs() > 2.0 {
        return Ok(NumericBott::Hyperbolic { index: mu });
    }
    let phi = (tr / 2.0).acos() / (2.0 * PI);
    let rho = if p[1][0] > 0.0 { phi } else { 1.0 - phi };
    // mu = 2 floor(x) + 1 pins down the lift of rho
    let fl = (mu - 1) / 2;
    Ok(NumericBott::Elliptic { turns: fl as f64 + rho })
}
