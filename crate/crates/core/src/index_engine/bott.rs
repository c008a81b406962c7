use num_traits::Zero;
use serde::Serialize;

use super::{block_cz, half, RotationPath};
use crate::lens_core::Rational;

/// Splitting numbers at `e^{2 pi i angle}`, with `angle` in `(0, 1/2]` turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Jump {
    #[serde(serialize_with = "crate::frac::serialize")]
    pub angle: Rational,
    pub s_plus: u32,
    pub s_minus: u32,
}

/// Bott function on the unit circle.
///
/// Only the closed upper half is stored. The lower half follows from
/// `B(z) = B(conj z)` with `S^+` and `S^-` swapped. Values are
/// `B(1) + S^+_1 + sum_{0 < phi < theta} (S^+_phi - S^-_phi) - S^-_theta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BottFunction {
    pub value_at_one: i64,
    pub s_plus_one: u32,
    pub s_minus_one: u32,
    pub jumps: Vec<Jump>,
}

impl BottFunction {
    pub fn zero() -> Self {
        Self {
            value_at_one: 0,
            s_plus_one: 0,
            s_minus_one: 0,
            jumps: vec![],
        }
    }

    fn canonicalize(mut self) -> Self {
        self.jumps.sort_by(|a, b| a.angle.cmp(&b.angle));
        let mut merged: Vec<Jump> = Vec::with_capacity(self.jumps.len());
        for j in self.jumps {
            match merged.last_mut() {
                Some(last) if last.angle == j.angle => {
                    last.s_plus += j.s_plus;
                    last.s_minus += j.s_minus;
                }
                _ => merged.push(j),
            }
        }
        merged.retain(|j| j.s_plus != 0 || j.s_minus != 0);
        self.jumps = merged;
        self
    }

    /// Bott function of a direct sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut jumps = self.jumps.clone();
        jumps.extend_from_slice(&other.jumps);
        Self {
            value_at_one: self.value_at_one + other.value_at_one,
            s_plus_one: self.s_plus_one + other.s_plus_one,
            s_minus_one: self.s_minus_one + other.s_minus_one,
            jumps,
        }
        .canonicalize()
    }

    /// Adds a constant to every value, as a loop of index `2c` does.
    pub fn shift(&self, c: i64) -> Self {
        let mut b = self.clone();
        b.value_at_one += c;
        b
    }

    fn generic_start(&self) -> i64 {
        self.value_at_one + self.s_plus_one as i64
    }

    /// Value at `e^{2 pi i theta}`, `theta` in turns.
    pub fn eval(&self, theta: Rational) -> i64 {
        let mut t = theta - theta.floor();
        if t.is_zero() {
            return self.value_at_one;
        }
        if t > half() {
            t = Rational::from_integer(1) - t;
        }
        let mut v = self.generic_start();
        for j in &self.jumps {
            if j.angle < t {
                v += j.s_plus as i64 - j.s_minus as i64;
            } else {
                if j.angle == t {
                    v -= j.s_minus as i64;
                }
                break;
            }
        }
        v
    }

    /// Open arcs of `(0, 1/2)` between jumps with their constant values.
    pub fn arcs(&self) -> Vec<(Rational, Rational, i64)> {
        let mut out = Vec::new();
        let mut start = Rational::zero();
        let mut v = self.generic_start();
        for j in &self.jumps {
            if j.angle > start {
                out.push((start, j.angle, v));
            }
            v += j.s_plus as i64 - j.s_minus as i64;
            start = j.angle;
        }
        if start < half() {
            out.push((start, half(), v));
        }
        out
    }

    /// Maximum over the circle minus the point 1.
    pub fn max_off_one(&self) -> i64 {
        let arcs = self.arcs().into_iter().map(|(_, _, v)| v);
        let at_jumps = self.jumps.iter().map(|j| self.eval(j.angle));
        arcs.chain(at_jumps)
            .chain(std::iter::once(self.eval(half())))
            .max()
            .expect("nonempty")
    }

    pub fn max_over_circle(&self) -> i64 {
        self.max_off_one().max(self.value_at_one)
    }

    pub fn min_over_circle(&self) -> i64 {
        let arcs = self.arcs().into_iter().map(|(_, _, v)| v);
        let at_jumps = self.jumps.iter().map(|j| self.eval(j.angle));
        arcs.chain(at_jumps)
            .chain([self.eval(half()), self.value_at_one])
            .min()
            .expect("nonempty")
    }

    /// Integral over the circle of unit length.
    pub fn integral(&self) -> Rational {
        self.arcs()
            .into_iter()
            .map(|(a, b, v)| (b - a) * Rational::from_integer(2 * v))
            .fold(Rational::zero(), |x, y| x + y)
    }

    /// `sum_{z^k = 1} B(z)`, which equals the index of the `k`-th iterate.
    pub fn root_sum(&self, k: u32) -> i64 {
        (0..k as i64).map(|m| self.eval(Rational::new(m, k as i64))).sum()
    }

    /// Splitting numbers `(S^+, S^-)` at `e^{2 pi i theta}`.
    pub fn splitting(&self, theta: Rational) -> (u32, u32) {
        let t = theta - theta.floor();
        if t.is_zero() {
            return (self.s_plus_one, self.s_minus_one);
        }
        let (t, flip) = if t > half() {
            (Rational::from_integer(1) - t, true)
        } else {
            (t, false)
        };
        let found = self.jumps.iter().find(|j| j.angle == t);
        let (sp, sm) = found.map_or((0, 0), |j| (j.s_plus, j.s_minus));
        if flip && t != half() {
            (sm, sp)
        } else {
            (sp, sm)
        }
    }

    /// CSV rows `(angle_turns, value, s_plus, s_minus)` over `[0, 1/2]`,
    /// values divided by `scale`.
    pub fn csv_rows(&self, scale: i64) -> Vec<(Rational, Rational, u32, u32)> {
        let sc = |v: i64| Rational::new(v, scale);
        let mut rows = vec![(Rational::zero(), sc(self.value_at_one), self.s_plus_one, self.s_minus_one)];
        for j in &self.jumps {
            rows.push((j.angle, sc(self.eval(j.angle)), j.s_plus, j.s_minus));
        }
        rows
    }
}

/// Bott function of one planar rotation by `x` turns.
pub fn block_bott(x: Rational) -> BottFunction {
    let fl = x.floor().to_integer();
    let f = x - x.floor();
    let mut b = BottFunction {
        value_at_one: block_cz(x),
        s_plus_one: 0,
        s_minus_one: 0,
        jumps: vec![],
    };
    if f.is_zero() {
        b.s_plus_one = 1;
        b.s_minus_one = 1;
        return b;
    }
    let jump = if f < half() {
        Jump { angle: f, s_plus: 0, s_minus: 1 }
    } else if f == half() {
        Jump { angle: f, s_plus: 1, s_minus: 1 }
    } else {
        Jump { angle: Rational::from_integer(1) - f, s_plus: 1, s_minus: 0 }
    };
    debug_assert_eq!(b.value_at_one, 2 * fl + 1);
    b.jumps.push(jump);
    b
}

pub fn bott_function(path: &RotationPath) -> BottFunction {
    let mut total = BottFunction::zero();
    for (x, m) in path.rotations() {
        let b = block_bott(x);
        for _ in 0..m {
            total = total.add(&b);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::super::cz_index;
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn single_block_three_tenths() {
        let g = RotationPath::new(vec![(r(3, 10), 1)], r(1, 1)).unwrap();
        let b = bott_function(&g);
        assert_eq!(b.value_at_one, 1);
        assert_eq!(b.eval(r(1, 10)), 1);
        assert_eq!(b.eval(r(3, 10)), 0);
        assert_eq!(b.eval(r(2, 5)), 0);
        assert_eq!(b.eval(r(1, 2)), 0);
        for k in 1..=50 {
            assert_eq!(cz_index(&g.iterate(k)), b.root_sum(k));
        }
    }

    #[test]
    fn every_block_type_satisfies_bott_formula() {
        for num in -40..=40 {
            for den in [1, 2, 3, 4, 5, 7, 10] {
                let g = RotationPath::new(vec![(r(num, den), 1)], r(1, 1)).unwrap();
                let b = bott_function(&g);
                for k in 1..=30 {
                    assert_eq!(cz_index(&g.iterate(k)), b.root_sum(k), "x={num}/{den} k={k}");
                }
                assert_eq!(b.integral(), r(2 * num, den));
            }
        }
    }

    #[test]
    fn symmetric_evaluation() {
        let g = RotationPath::from_speeds(&[r(2, 7), r(-1, 3), r(5, 2)], r(1, 1)).unwrap();
        let b = bott_function(&g);
        for t in 0..84 {
            assert_eq!(b.eval(r(t, 84)), b.eval(r(84 - t, 84)));
        }
    }

    #[test]
    fn max_off_one_sees_points_next_to_one() {
        let b = block_bott(r(0, 1));
        assert_eq!(b.value_at_one, -1);
        assert_eq!(b.max_off_one(), 0);
        assert_eq!(b.min_over_circle(), -1);
    }
}
