use serde::Serialize;
use thiserror::Error;

use crate::lens_core::{chern_order, classes, HomotopyClass, LensSpace, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("the trivial class has no threshold or positivity data")]
    TrivialClass,
}

/// Multiplicities of the homotopy weights, indexed by increasing absolute value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightMultiplicities {
    pub abs_values: Vec<i64>,
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
    pub mu_tilde: Vec<u32>,
    pub nu_tilde: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInvariants {
    pub j: i64,
    pub homotopy_weights: Vec<i64>,
    pub w_plus: u32,
    pub w_minus: u32,
    #[serde(serialize_with = "crate::frac::serialize")]
    pub k_a: Rational,
    #[serde(serialize_with = "crate::frac::serialize")]
    pub h_a: Rational,
    #[serde(serialize_with = "crate::frac::serialize")]
    pub h_tilde_a: Rational,
    pub positive: bool,
    pub strictly_positive: bool,
    pub chern_order: i64,
}

fn nontrivial(a: &HomotopyClass) -> Result<(), InvariantError> {
    if a.is_trivial() {
        Err(InvariantError::TrivialClass)
    } else {
        Ok(())
    }
}

pub fn w_plus(a: &HomotopyClass) -> u32 {
    a.homotopy_weights.iter().filter(|&&w| w > 0).count() as u32
}

pub fn w_minus(a: &HomotopyClass) -> u32 {
    a.homotopy_weights.iter().filter(|&&w| w < 0).count() as u32
}

/// Minimal degree of the class-`a` equivariant homology. The trivial class gives `n + 2`.
pub fn k_a(lens: &LensSpace, a: &HomotopyClass) -> Rational {
    if a.is_trivial() {
        return Rational::from_integer(lens.n() as i64 + 2);
    }
    Rational::from_integer(w_minus(a) as i64 - w_plus(a) as i64 + 1)
        + Rational::new(2 * a.weight_sum(), lens.p())
}

pub fn multiplicities(
    lens: &LensSpace,
    a: &HomotopyClass,
) -> Result<WeightMultiplicities, InvariantError> {
    nontrivial(a)?;
    let p = lens.p();
    let w = &a.homotopy_weights;
    let mut abs_values: Vec<i64> = w.iter().map(|x| x.abs()).filter(|&x| x != 0).collect();
    abs_values.sort_unstable();
    abs_values.dedup();
    let count = |pred: &dyn Fn(i64) -> bool| w.iter().filter(|&&x| pred(x)).count() as u32;
    let mut m = WeightMultiplicities {
        abs_values: abs_values.clone(),
        mu: vec![],
        nu: vec![],
        mu_tilde: vec![],
        nu_tilde: vec![],
    };
    for &b in &abs_values {
        let half = 2 * b == p;
        m.mu.push(count(&|x| x == b && 2 * x != p));
        m.nu.push(count(&|x| x == -b || (half && x == b)));
        m.mu_tilde.push(count(&|x| x == b));
        m.nu_tilde.push(count(&|x| x == -b));
    }
    Ok(m)
}

pub fn h_a(lens: &LensSpace, a: &HomotopyClass) -> Result<Rational, InvariantError> {
    let m = multiplicities(lens, a)?;
    let base = k_a(lens, a) - 1;
    let mut best = base;
    let mut acc = 0i64;
    for i in 0..m.abs_values.len() {
        acc += m.mu[i] as i64 - m.nu[i] as i64;
        best = best.max(base + acc);
    }
    Ok(best)
}

pub fn h_tilde_a(lens: &LensSpace, a: &HomotopyClass) -> Result<Rational, InvariantError> {
    let m = multiplicities(lens, a)?;
    let base = k_a(lens, a) - 1;
    let mut best: Option<Rational> = None;
    let mut mu_acc = 0i64;
    let mut nu_acc = 0i64;
    for i in 0..m.abs_values.len() {
        mu_acc += m.mu_tilde[i] as i64;
        let v = base + (mu_acc - nu_acc);
        best = Some(best.map_or(v, |b| b.max(v)));
        nu_acc += m.nu_tilde[i] as i64;
    }
    Ok(best.expect("nontrivial class has a nonzero weight"))
}

/// `(positive, strictly_positive)`.
pub fn positivity(lens: &LensSpace, a: &HomotopyClass) -> Result<(bool, bool), InvariantError> {
    nontrivial(a)?;
    let positive = a.homotopy_weights.iter().all(|&w| w > 0);
    let strict = positive && a.homotopy_weights.iter().all(|&w| 2 * w != lens.p());
    Ok((positive, strict))
}

pub fn invariants(lens: &LensSpace, a: &HomotopyClass) -> Result<ClassInvariants, InvariantError> {
    let (positive, strictly_positive) = positivity(lens, a)?;
    Ok(ClassInvariants {
        j: a.j,
        homotopy_weights: a.homotopy_weights.clone(),
        w_plus: w_plus(a),
        w_minus: w_minus(a),
        k_a: k_a(lens, a),
        h_a: h_a(lens, a)?,
        h_tilde_a: h_tilde_a(lens, a)?,
        positive,
        strictly_positive,
        chern_order: chern_order(lens),
    })
}

pub fn find_positive_classes(lens: &LensSpace) -> Vec<(HomotopyClass, bool)> {
    classes(lens)
        .into_iter()
        .filter(|a| !a.is_trivial())
        .filter_map(|a| match positivity(lens, &a) {
            Ok((true, strict)) => Some((a, strict)),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens_core::homotopy_class;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn eleven_five() {
        let l = LensSpace::standard(11, 2).unwrap();
        let a = homotopy_class(&l, 5).unwrap();
        assert_eq!(k_a(&l, &a), r(8, 11));
        assert_eq!(h_a(&l, &a).unwrap(), r(30, 11));
        assert_eq!(h_tilde_a(&l, &a).unwrap(), r(30, 11));
        let m = multiplicities(&l, &a).unwrap();
        assert_eq!((m.mu[0], m.nu[0], m.mu_tilde[0], m.nu_tilde[0]), (3, 0, 3, 0));
        assert_eq!(positivity(&l, &a).unwrap(), (true, true));
    }

    #[test]
    fn four_one_one() {
        let l = LensSpace::standard(4, 1).unwrap();
        let a = homotopy_class(&l, 2).unwrap();
        let m = multiplicities(&l, &a).unwrap();
        assert_eq!(m.abs_values, vec![2]);
        assert_eq!((m.mu[0], m.nu[0], m.mu_tilde[0], m.nu_tilde[0]), (0, 2, 2, 0));
        assert_eq!(k_a(&l, &a), r(1, 1));
        assert_eq!(h_a(&l, &a).unwrap(), r(0, 1));
        assert_eq!(h_tilde_a(&l, &a).unwrap(), r(2, 1));
        assert_eq!(positivity(&l, &a).unwrap(), (true, false));
        let b = homotopy_class(&l, 1).unwrap();
        assert_eq!(k_a(&l, &b), r(0, 1));
        assert_eq!(h_a(&l, &b).unwrap(), r(1, 1));
        assert_eq!(h_tilde_a(&l, &b).unwrap(), r(1, 1));
        assert_eq!(positivity(&l, &b).unwrap(), (true, true));
    }

    #[test]
    fn trivial_class() {
        let l = LensSpace::standard(5, 3).unwrap();
        let a = homotopy_class(&l, 5).unwrap();
        assert_eq!(k_a(&l, &a), r(5, 1));
        assert_eq!(h_a(&l, &a), Err(InvariantError::TrivialClass));
        assert_eq!(positivity(&l, &a), Err(InvariantError::TrivialClass));
    }

    #[test]
    fn alternating_weights() {
        let l = LensSpace::new(6, &[1, -1, 1, -1]).unwrap();
        for a in classes(&l).iter().filter(|a| !a.is_trivial()) {
            assert_eq!(k_a(&l, a), r(1, 1));
            assert_eq!(h_a(&l, a).unwrap(), r(0, 1));
            let expected = if 2 * a.j % 6 == 0 { 4 } else { 2 };
            assert_eq!(h_tilde_a(&l, a).unwrap(), r(expected, 1));
        }
        let l = LensSpace::new(5, &[1, -1]).unwrap();
        assert!(find_positive_classes(&l).is_empty());
        let l = LensSpace::new(8, &[1, -1]).unwrap();
        let pos = find_positive_classes(&l);
        assert_eq!(pos.len(), 1);
        assert_eq!(pos[0].0.j, 4);
        assert!(!pos[0].1);
        let l = LensSpace::new(5, &[1, 2]).unwrap();
        assert!(find_positive_classes(&l).iter().any(|(a, s)| a.j == 1 && *s));
    }

    #[test]
    fn odd_p_with_opposite_weights_separates_thresholds() {
        // weights (3, -3): the same absolute value carried with both signs
        let l = LensSpace::new(9, &[1, 2]).unwrap();
        let a = homotopy_class(&l, 3).unwrap();
        assert_eq!(a.homotopy_weights, vec![3, -3]);
        assert_eq!(h_a(&l, &a).unwrap(), r(0, 1));
        assert_eq!(h_tilde_a(&l, &a).unwrap(), r(1, 1));
    }

    fn lens_strategy() -> impl Strategy<Value = LensSpace> {
        (2i64..=12, 1usize..=4).prop_flat_map(|(p, n)| {
            let units: Vec<i64> = (1..p).filter(|u| u.gcd(&p) == 1).collect();
            proptest::collection::vec(proptest::sample::select(units), n + 1)
                .prop_map(move |raw| LensSpace::new(p, &raw).unwrap())
        })
    }

    proptest! {
        #[test]
        fn threshold_relations(l in lens_strategy()) {
            let n = l.n() as i64;
            for a in classes(&l).iter().filter(|a| !a.is_trivial()) {
                let inv = invariants(&l, a).unwrap();
                prop_assert!(inv.h_a <= inv.h_tilde_a);
                let m = multiplicities(&l, a).unwrap();
                let two_signed = (0..m.abs_values.len()).any(|i| m.mu_tilde[i] > 0 && m.nu_tilde[i] > 0);
                if l.p() % 2 == 1 && !two_signed {
                    prop_assert_eq!(inv.h_a, inv.h_tilde_a);
                }
                if inv.positive {
                    prop_assert_eq!(inv.h_tilde_a, inv.k_a + n);
                }
                if inv.strictly_positive {
                    prop_assert!(inv.positive);
                    prop_assert_eq!(inv.h_a, inv.k_a + n);
                }
                prop_assert_eq!(l.p() % *inv.k_a.denom(), 0);
                let total: u32 = m.mu_tilde.iter().chain(&m.nu_tilde).sum();
                prop_assert_eq!(total as i64, n + 1);
                for i in 0..m.abs_values.len() {
                    prop_assert!(m.mu[i] <= m.mu_tilde[i] && m.nu[i] >= m.nu_tilde[i]);
                    if m.mu[i] != m.mu_tilde[i] || m.nu[i] != m.nu_tilde[i] {
                        prop_assert_eq!(2 * m.abs_values[i], l.p());
                        prop_assert_eq!(i + 1, m.abs_values.len());
                    }
                }
            }
        }

        #[test]
        fn k_a_ignores_tail_order(l in lens_strategy()) {
            let mut w = l.weights().to_vec();
            w[1..].rotate_left(1);
            let m = LensSpace::new(l.p(), &w).unwrap();
            for j in 1..=l.p() {
                let a = homotopy_class(&l, j).unwrap();
                let b = homotopy_class(&m, j).unwrap();
                prop_assert_eq!(k_a(&l, &a), k_a(&m, &b));
            }
        }
    }
}
