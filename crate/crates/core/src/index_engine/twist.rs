use num_integer::Integer;
use num_traits::Zero;

use super::{cz_index, half, one, IndexError, RotationPath};
use crate::lens_core::{chern_order, HomotopyClass, LensSpace, Rational};

/// Block speeds of `t -> phi^{G_a}_{-t}` shifted by `eps`, trivial class allowed.
fn twist_speeds(lens: &LensSpace, a: &HomotopyClass, eps: Rational) -> Vec<Rational> {
    let p = lens.p();
    let big_n = chern_order(lens);
    let n1 = lens.n() + 1;
    let total = (big_n as usize) * n1;
    let mut speeds = Vec::with_capacity(total);
    for b in 0..total {
        let w = a.homotopy_weights[b % n1];
        let w = if b + 1 == total {
            w - big_n * a.weight_sum()
        } else {
            w
        };
        speeds.push(Rational::new(-w, p) + eps);
    }
    speeds
}

pub fn twist_ga(lens: &LensSpace, a: &HomotopyClass) -> Result<RotationPath, IndexError> {
    if a.is_trivial() {
        return Err(IndexError::TrivialClass);
    }
    RotationPath::from_speeds(&twist_speeds(lens, a, Rational::zero()), one())
}

/// Upper bound for `eps`: a quarter of the least gap in `{|l^a_i|/p} u {0, 1/2}`.
pub fn eps_bound(lens: &LensSpace, a: &HomotopyClass) -> Rational {
    let mut pts: Vec<Rational> = a
        .homotopy_weights
        .iter()
        .map(|w| Rational::new(w.abs(), lens.p()))
        .collect();
    pts.push(Rational::zero());
    pts.push(half());
    pts.sort();
    pts.dedup();
    let gap = pts
        .windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .expect("0 and 1/2 are distinct");
    gap / 4
}

/// The perturbation used throughout: half of [`eps_bound`].
pub fn eps_schedule(lens: &LensSpace, a: &HomotopyClass) -> Rational {
    eps_bound(lens, a) / 2
}

pub fn twist_ga_eps(
    lens: &LensSpace,
    a: &HomotopyClass,
    eps: Rational,
) -> Result<RotationPath, IndexError> {
    if a.is_trivial() {
        return Err(IndexError::TrivialClass);
    }
    let bound = eps_bound(lens, a);
    if eps <= Rational::zero() || eps >= bound {
        return Err(IndexError::EpsTooLarge { bound });
    }
    RotationPath::from_speeds(&twist_speeds(lens, a, eps), one())
}

/// Index of a closed orbit whose lifted linearized flow (N copies) is `gamma_beta`.
pub fn orbit_index(
    lens: &LensSpace,
    a: &HomotopyClass,
    gamma_beta: &RotationPath,
) -> Result<Rational, IndexError> {
    let big_n = chern_order(lens);
    let expected = ((lens.n() + 1) as i64 * big_n) as u32;
    if gamma_beta.half_dim() != expected {
        return Err(IndexError::DimensionMismatch {
            expected,
            got: gamma_beta.half_dim(),
        });
    }
    if gamma_beta.duration() != one() {
        return Err(IndexError::BadPath("gamma_beta must have duration 1"));
    }
    let twist = RotationPath::from_speeds(&twist_speeds(lens, a, Rational::zero()), one())?;
    let composed = twist.compose(gamma_beta)?;
    Ok(Rational::new(cz_index(&composed), big_n) + 1)
}

fn n_copies(per_copy: &[Rational], big_n: i64) -> RotationPath {
    let speeds: Vec<Rational> = (0..big_n).flat_map(|_| per_copy.iter().copied()).collect();
    RotationPath::from_speeds(&speeds, one()).expect("nonempty")
}

/// Minimal orbit index in class `a` on the ellipsoid with coefficients
/// `c_0 = j_a/p` and `c_i = eps_i = 1/(p (n+2) 4^i 2^halvings)`.
pub fn ellipsoid_min_index_scaled(
    lens: &LensSpace,
    a: &HomotopyClass,
    halvings: u32,
) -> Result<Rational, IndexError> {
    if a.is_trivial() {
        return Err(IndexError::TrivialClass);
    }
    let p = lens.p();
    let n = lens.n();
    let big_n = chern_order(lens);
    let mut coeffs = vec![Rational::new(a.j, p)];
    for i in 1..=n {
        coeffs.push(Rational::new(1, p * (n as i64 + 2) * 4i64.pow(i as u32) * (1 << halvings)));
    }
    let mut best: Option<Rational> = None;
    for (i, &c) in coeffs.iter().enumerate() {
        let mut r = (a.j * lens.weights()[i]).rem_euclid(p);
        if r == 0 {
            r = p;
        }
        let period = Rational::new(r, p) / c;
        let per_copy: Vec<Rational> = coeffs.iter().map(|&ck| ck * period).collect();
        let idx = orbit_index(lens, a, &n_copies(&per_copy, big_n))?;
        best = Some(best.map_or(idx, |b| b.min(idx)));
    }
    Ok(best.expect("n + 1 families"))
}

pub fn ellipsoid_min_index(lens: &LensSpace, a: &HomotopyClass) -> Result<Rational, IndexError> {
    ellipsoid_min_index_scaled(lens, a, 0)
}

/// Representatives of the weights in `[1, p - 1]`.
fn hat_weights(lens: &LensSpace) -> Vec<i64> {
    lens.weights().iter().map(|w| w.rem_euclid(lens.p())).collect()
}

fn check_coprime(a: &HomotopyClass, m: i64) -> Result<(), IndexError> {
    if m < 1 || a.j.gcd(&m) != 1 {
        return Err(IndexError::NotCoprime { j: a.j, m });
    }
    Ok(())
}

/// Closed-form index of the simple orbit in class `a` of the toric form with parameter `m`.
pub fn toric_orbit_index(lens: &LensSpace, a: &HomotopyClass, m: i64) -> Result<Rational, IndexError> {
    check_coprime(a, m)?;
    let s: i64 = hat_weights(lens).iter().sum();
    Ok(Rational::new(2 * s * a.j, lens.p()) + 2 * m - lens.n() as i64)
}

/// Linearized flow of the toric form along that orbit, N copies.
pub fn toric_lift_path(lens: &LensSpace, a: &HomotopyClass, m: i64) -> Result<RotationPath, IndexError> {
    check_coprime(a, m)?;
    let p = lens.p();
    let hat = hat_weights(lens);
    let n = lens.n();
    let per_copy: Vec<Rational> = hat
        .iter()
        .enumerate()
        .map(|(i, &h)| {
            let base = Rational::new(h * a.j, p);
            if i == n {
                base + m
            } else {
                base
            }
        })
        .collect();
    Ok(n_copies(&per_copy, chern_order(lens)))
}

pub fn toric_orbit_index_engine(
    lens: &LensSpace,
    a: &HomotopyClass,
    m: i64,
) -> Result<Rational, IndexError> {
    orbit_index(lens, a, &toric_lift_path(lens, a, m)?)
}

#[cfg(test)]
mod tests {
    use super::super::{bott_function, elliptic_certificate};
    use super::*;
    use crate::class_invariants::{h_a, h_tilde_a, k_a, positivity};
    use crate::lens_core::{classes, homotopy_class};

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn twist_examples() {
        let l = LensSpace::standard(11, 2).unwrap();
        let a = homotopy_class(&l, 5).unwrap();
        let g = twist_ga(&l, &a).unwrap();
        assert_eq!(g.blocks(), &[(r(-5, 11), 32), (r(160, 11), 1)]);
        assert_eq!(cz_index(&g), -3);
        let e = twist_ga_eps(&l, &a, r(1, 100)).unwrap();
        assert_eq!(e.blocks(), &[(r(-5, 11) + r(1, 100), 32), (r(160, 11) + r(1, 100), 1)]);

        let l2 = LensSpace::standard(2, 1).unwrap();
        let a2 = homotopy_class(&l2, 1).unwrap();
        // weight sum 2 vanishes mod 2, so N = 1
        assert_eq!(chern_order(&l2), 1);
        assert_eq!(twist_ga(&l2, &a2).unwrap().speeds(), vec![r(-1, 2), r(1, 2)]);

        assert_eq!(twist_ga(&l, &homotopy_class(&l, 11).unwrap()), Err(IndexError::TrivialClass));
        assert!(matches!(twist_ga_eps(&l, &a, r(1, 2)), Err(IndexError::EpsTooLarge { .. })));
        assert!(matches!(twist_ga_eps(&l, &a, r(0, 1)), Err(IndexError::EpsTooLarge { .. })));
    }

    #[test]
    fn eleven_five_bott_profile() {
        let l = LensSpace::standard(11, 2).unwrap();
        let a = homotopy_class(&l, 5).unwrap();
        let b = bott_function(&twist_ga(&l, &a).unwrap());
        assert_eq!(b.value_at_one, -3);
        assert_eq!(b.eval(r(1, 11)), -3);
        assert_eq!(b.eval(r(5, 11)), -3);
        assert_eq!(b.eval(r(6, 13)), 30);
        assert_eq!(b.eval(r(1, 2)), 30);
        assert_eq!(b.max_off_one(), 30);
    }

    #[test]
    fn four_two_dips_at_minus_one() {
        let l = LensSpace::standard(4, 1).unwrap();
        let a = homotopy_class(&l, 2).unwrap();
        let b = bott_function(&twist_ga(&l, &a).unwrap());
        // N = 2 and nu_1 = 2
        assert_eq!(b.jumps.len(), 1);
        assert_eq!((b.jumps[0].angle, b.jumps[0].s_plus, b.jumps[0].s_minus), (r(1, 2), 4, 4));
        assert!(b.eval(r(1, 2)) < b.eval(r(1, 4)));
    }

    #[test]
    fn twist_structure_small_sweep() {
        for p in 2..=7 {
            for w1 in 1..p {
                let Ok(l) = LensSpace::new(p, &[1, w1]) else { continue };
                let big_n = chern_order(&l);
                for a in classes(&l).iter().filter(|a| !a.is_trivial()) {
                    let b = bott_function(&twist_ga(&l, a).unwrap());
                    assert_eq!(Rational::from_integer(b.value_at_one), (k_a(&l, a) - 1) * big_n);
                    assert_eq!(Rational::from_integer(b.max_off_one()), h_a(&l, a).unwrap() * big_n);
                    let e = eps_schedule(&l, a);
                    let be = bott_function(&twist_ga_eps(&l, a, e).unwrap());
                    assert_eq!(
                        Rational::from_integer(be.max_off_one()),
                        h_tilde_a(&l, a).unwrap() * big_n
                    );
                    if positivity(&l, a).unwrap().1 {
                        assert!(elliptic_certificate(&b, l.n() as i64 * big_n));
                    }
                }
            }
        }
    }

    #[test]
    fn ellipsoid_examples() {
        let l = LensSpace::new(5, &[1, 2]).unwrap();
        assert_eq!(ellipsoid_min_index(&l, &homotopy_class(&l, 1).unwrap()).unwrap(), r(1, 5));
        assert_eq!(ellipsoid_min_index(&l, &homotopy_class(&l, 4).unwrap()).unwrap(), r(9, 5));
        let l = LensSpace::standard(11, 2).unwrap();
        assert_eq!(ellipsoid_min_index(&l, &homotopy_class(&l, 5).unwrap()).unwrap(), r(8, 11));
    }

    #[test]
    fn contractible_round_orbit() {
        for (p, n) in [(3, 1), (4, 2), (5, 3)] {
            let l = LensSpace::standard(p, n).unwrap();
            let a = homotopy_class(&l, p).unwrap();
            let big_n = chern_order(&l);
            let full = RotationPath::new(vec![(one(), (n as u32 + 1) * big_n as u32)], one()).unwrap();
            assert_eq!(orbit_index(&l, &a, &full).unwrap(), r(n as i64 + 2, 1));
        }
    }

    #[test]
    fn toric_examples() {
        let l = LensSpace::standard(4, 1).unwrap();
        let a = homotopy_class(&l, 1).unwrap();
        assert_eq!(toric_orbit_index(&l, &a, 1).unwrap(), r(2, 1));
        let composed = twist_ga(&l, &a).unwrap().compose(&toric_lift_path(&l, &a, 1).unwrap()).unwrap();
        assert_eq!(composed.speeds(), vec![r(0, 1), r(1, 1), r(0, 1), r(2, 1)]);
        assert_eq!(toric_orbit_index_engine(&l, &a, 1).unwrap(), r(2, 1));

        let l = LensSpace::new(5, &[1, 2]).unwrap();
        let a = homotopy_class(&l, 2).unwrap();
        assert_eq!(toric_orbit_index(&l, &a, 3).unwrap(), r(37, 5));
        assert_eq!(toric_orbit_index_engine(&l, &a, 3).unwrap(), r(37, 5));
        assert_eq!(toric_orbit_index(&l, &a, 4), Err(IndexError::NotCoprime { j: 2, m: 4 }));

        for (p, n) in [(5, 1), (7, 2), (9, 3)] {
            let l = LensSpace::standard(p, n).unwrap();
            let a = homotopy_class(&l, p - 1).unwrap();
            let expected = Rational::new((2 * n as i64 + 2) * (p - 1), p) + 2 - n as i64;
            assert_eq!(toric_orbit_index(&l, &a, 1).unwrap(), expected);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let l = LensSpace::standard(4, 1).unwrap();
        let a = homotopy_class(&l, 1).unwrap();
        let bad = RotationPath::new(vec![(one(), 3)], one()).unwrap();
        assert!(matches!(orbit_index(&l, &a, &bad), Err(IndexError::DimensionMismatch { .. })));
    }
}
