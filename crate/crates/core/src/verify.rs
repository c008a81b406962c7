//! Verification suites run by the command line front end.

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::class_invariants::{find_positive_classes, h_a, h_tilde_a, invariants, k_a};
use crate::dyn_verify::{
    check_main_theorem, delta_admissible, delta_search, hyperbolic_index_eq, multiplicity_guarantee,
    pinching_ok, presets, simplicity_certificate, cw_min_period, ConvexKind, PinchingData, Violation,
};
use crate::esh_ranks::{carrier_degrees, graded_ranks, min_degree};
use crate::index_engine::{
    bott_function, cz_index, ellipsoid_min_index, ellipsoid_min_index_scaled, eps_schedule,
    mean_index, toric_orbit_index, toric_orbit_index_engine, twist_ga, twist_ga_eps, RotationPath,
};
use crate::lens_core::{chern_order, classes, homotopy_class, LensSpace, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Examples,
    Sharpness,
    Counterexamples,
    Properties,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Examples => "examples",
            Suite::Sharpness => "sharpness",
            Suite::Counterexamples => "counterexamples",
            Suite::Properties => "properties",
        }
    }

    pub fn all() -> [Suite; 4] {
        [Suite::Examples, Suite::Sharpness, Suite::Counterexamples, Suite::Properties]
    }

    pub fn run(&self) -> Vec<CheckResult> {
        match self {
            Suite::Examples => examples(),
            Suite::Sharpness => sharpness(),
            Suite::Counterexamples => counterexamples(),
            Suite::Properties => properties(),
        }
    }
}

struct Recorder {
    suite: &'static str,
    out: Vec<CheckResult>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Self { suite, out: vec![] }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckResult {
            suite: self.suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records the first failure of a sweep, or a pass.
    fn sweep(&mut self, name: &str, failure: Option<String>, cases: usize) {
        match failure {
            Some(d) => self.check(name, false, d),
            None => self.check(name, true, format!("{cases} cases")),
        }
    }
}

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

fn all_weight_vectors(p: i64, n: usize) -> Vec<Vec<i64>> {
    let mut units: Vec<i64> = (1..p)
        .filter(|u| u.gcd(&p) == 1)
        .map(|u| crate::lens_core::centered_residue(u, p))
        .collect();
    units.sort_unstable();
    // tails kept sorted: the invariants do not see the order of l_1..l_n
    let mut out = vec![vec![1]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                let floor = if v.len() == 1 { i64::MIN } else { v[v.len() - 1] };
                units
                    .iter()
                    .filter(move |&&u| u >= floor)
                    .map(move |&u| {
                        let mut w = v.clone();
                        w.push(u);
                        w
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Every normalized lens space with tails sorted, `p <= p_max`, `n <= n_max`.
pub fn lens_sweep(p_max: i64, n_max: usize) -> Vec<LensSpace> {
    let mut out = vec![];
    for p in 2..=p_max {
        for n in 1..=n_max {
            for w in all_weight_vectors(p, n) {
                out.push(LensSpace::new(p, &w).expect("units"));
            }
        }
    }
    out
}

fn examples() -> Vec<CheckResult> {
    let mut rec = Recorder::new("examples");
    let mut fail = None;
    let mut cases = 0;
    for p in 2..=12i64 {
        for n in 1..=5i64 {
            let l = LensSpace::standard(p, n as usize).unwrap();
            for j in 1..p {
                let a = homotopy_class(&l, j).unwrap();
                let inv = invariants(&l, &a).unwrap();
                let k = r((2 * n + 2) * j, p) - n;
                let (h, ht) = match (2 * j).cmp(&p) {
                    std::cmp::Ordering::Less => (r((2 * n + 2) * j, p), r((2 * n + 2) * j, p)),
                    std::cmp::Ordering::Equal => (r(0, 1), r(n + 1, 1)),
                    std::cmp::Ordering::Greater => (k - 1, k - 1),
                };
                cases += 1;
                if (inv.k_a, inv.h_a, inv.h_tilde_a) != (k, h, ht) && fail.is_none() {
                    fail = Some(format!("L_{p}(1,..,1) n={n} j={j}: got {:?}", (inv.k_a, inv.h_a, inv.h_tilde_a)));
                }
            }
        }
    }
    rec.sweep("all-ones weights: k_a, h_a, h~_a", fail, cases);

    let mut fail = None;
    let mut cases = 0;
    for p in 3..=12i64 {
        for n in (1..=5i64).step_by(2) {
            let w: Vec<i64> = (0..=n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
            let l = LensSpace::new(p, &w).unwrap();
            for j in 1..p {
                let a = homotopy_class(&l, j).unwrap();
                let inv = invariants(&l, &a).unwrap();
                let ht = if (2 * j) % p == 0 { r(n + 1, 1) } else { r(n + 1, 2) };
                cases += 1;
                if (inv.k_a, inv.h_a, inv.h_tilde_a) != (r(1, 1), r(0, 1), ht) && fail.is_none() {
                    fail = Some(format!("alternating p={p} n={n} j={j}"));
                }
            }
        }
    }
    rec.sweep("alternating weights: k_a = 1, h_a = 0", fail, cases);

    let l = LensSpace::standard(11, 2).unwrap();
    let a = homotopy_class(&l, 5).unwrap();
    let inv = invariants(&l, &a).unwrap();
    let ok = chern_order(&l) == 11
        && inv.k_a == r(8, 11)
        && inv.h_a == r(30, 11)
        && inv.h_tilde_a == r(30, 11)
        && hyperbolic_index_eq(2, 11, 5) == inv.k_a
        && inv.k_a < inv.h_a;
    rec.check("L^5_11(1,1,1) class 5", ok, serde_json::to_string(&inv).unwrap());

    let l = LensSpace::standard(4, 1).unwrap();
    let a1 = invariants(&l, &homotopy_class(&l, 1).unwrap()).unwrap();
    let a2 = invariants(&l, &homotopy_class(&l, 2).unwrap()).unwrap();
    let ok = chern_order(&l) == 2
        && (a1.k_a, a1.h_a, a1.h_tilde_a, a1.strictly_positive) == (r(0, 1), r(1, 1), r(1, 1), true)
        && a1.k_a + 1 == r(1, 1)
        && (a2.k_a, a2.h_a, a2.h_tilde_a, a2.positive, a2.strictly_positive)
            == (r(1, 1), r(0, 1), r(2, 1), true, false);
    rec.check("L^3_4(1,1) classes 1 and 2", ok, format!("{} {}", serde_json::to_string(&a1).unwrap(), serde_json::to_string(&a2).unwrap()));
    rec.out
}

fn sharpness() -> Vec<CheckResult> {
    let mut rec = Recorder::new("sharpness");
    let mut fail = None;
    let mut cases = 0;
    for n in 1..=6 {
        for p in 2..=12 {
            let o = presets::prequantization_saddle_orbit(n, p).unwrap();
            for strict in [false, true] {
                cases += 1;
                let rep = check_main_theorem(&o, strict).unwrap();
                if !rep.violations.is_empty() && fail.is_none() {
                    fail = Some(format!("n={n} p={p} strict={strict}: {:?}", rep.violations));
                }
            }
        }
    }
    rec.sweep("hyperbolic orbit with index (2n+2)/p meets the thresholds", fail, cases);

    let o = presets::prequantization_saddle_orbit(1, 4).unwrap();
    let rep = check_main_theorem(&o, true).unwrap();
    rec.check(
        "L^3_4 hyperbolic orbit of index k_a + 1 = 1",
        rep.violations.is_empty() && o.index == rep.k_a + 1 && o.index == r(1, 1),
        format!("index {}", o.index),
    );

    let mut fail = None;
    let mut cases = 0;
    for l in lens_sweep(9, 3) {
        for j in 1..l.p() {
            let o = presets::ellipsoid_orbit(&l, j).unwrap();
            cases += 1;
            let rep = check_main_theorem(&o, true).unwrap();
            if !rep.violations.is_empty() && fail.is_none() {
                fail = Some(format!("{l} j={j}"));
            }
        }
    }
    rec.sweep("elliptic orbit at index k_a", fail, cases);
    rec.out
}

fn counterexamples() -> Vec<CheckResult> {
    let mut rec = Recorder::new("counterexamples");
    let mut fail = None;
    let mut cases = 0;
    for n in 1..=6 {
        for p in 3..=15 {
            let Some(d) = delta_search(n, p) else { continue };
            let o = presets::plug_constant_orbit(n, p, d, r(1, 4 * n * p)).unwrap();
            let rep = check_main_theorem(&o, true).unwrap();
            cases += 1;
            if rep.violations != vec![Violation::IndexBelowKA] && fail.is_none() {
                fail = Some(format!("n={n} p={p}: {:?}", rep.violations));
            }
        }
    }
    rec.sweep("plug orbit falls below k_a", fail, cases);

    let o = presets::toric_saddle_orbit(2, 11, 5).unwrap();
    let rep = check_main_theorem(&o, false).unwrap();
    rec.check(
        "L^5_11 class 5 hyperbolic orbit at index k_a",
        rep.violations == vec![Violation::HyperbolicBelowThreshold, Violation::PositiveClassNotElliptic]
            && o.index == r(8, 11),
        format!("{:?}", rep.violations),
    );

    let o = presets::toric_saddle_orbit(14, 5, 2).unwrap();
    let rep = check_main_theorem(&o, false).unwrap();
    rec.check(
        "L^29_5 class 2 hyperbolic orbit at h_a - 2",
        rep.violations == vec![Violation::HyperbolicBelowThreshold] && o.index == rep.h_a - 2,
        format!("{:?}", rep.violations),
    );

    let mut fail = None;
    let mut cases = 0;
    for n in 1..=10 {
        for p in 2..=30 {
            cases += 1;
            let expect = p >= 3 && !matches!((n, p), (1, 3) | (1, 4) | (2, 3));
            let got = delta_search(n, p);
            let ok = got.is_some() == expect && got.map_or(true, |d| delta_admissible(n, p, d));
            if !ok && fail.is_none() {
                fail = Some(format!("n={n} p={p}: {got:?}"));
            }
        }
    }
    rec.sweep("even Delta exists on the admissible set", fail, cases);
    rec.out
}

/// A random rotation path: up to 6 blocks, `|w| <= 20`, denominators up to 40.
pub fn random_rotation_path(rng: &mut StdRng) -> RotationPath {
    let blocks = rng.gen_range(1..=6);
    let speeds: Vec<Rational> = (0..blocks)
        .map(|_| {
            let den = rng.gen_range(1..=40i64);
            let num = rng.gen_range(-20 * den..=20 * den);
            Rational::new(num, den)
        })
        .collect();
    RotationPath::from_speeds(&speeds, r(1, 1)).unwrap()
}

fn properties() -> Vec<CheckResult> {
    let mut rec = Recorder::new("properties");
    let mut rng = StdRng::seed_from_u64(0x1e45);

    let mut fail = None;
    for case in 0..200 {
        let g = random_rotation_path(&mut rng);
        let b = bott_function(&g);
        for k in 1..=50u32 {
            if cz_index(&g.iterate(k)) != b.root_sum(k) && fail.is_none() {
                fail = Some(format!("case {case} k={k}: {g:?}"));
            }
        }
        if b.integral() != mean_index(&g) && fail.is_none() {
            fail = Some(format!("case {case} mean index"));
        }
    }
    rec.sweep("Bott iteration formula", fail, 200);

    let mut fail = None;
    let mut cases = 0;
    for l in lens_sweep(10, 3) {
        let big_n = chern_order(&l);
        for a in classes(&l).into_iter().filter(|a| !a.is_trivial()) {
            cases += 1;
            let b = bott_function(&twist_ga(&l, &a).unwrap());
            let be = bott_function(&twist_ga_eps(&l, &a, eps_schedule(&l, &a)).unwrap());
            let ok = Rational::from_integer(b.value_at_one) == (k_a(&l, &a) - 1) * big_n
                && Rational::from_integer(b.max_off_one()) == h_a(&l, &a).unwrap() * big_n
                && Rational::from_integer(be.max_off_one()) == h_tilde_a(&l, &a).unwrap() * big_n;
            if !ok && fail.is_none() {
                fail = Some(format!("{l} j={}", a.j));
            }
        }
    }
    rec.sweep("twist Bott function: B(1), max, perturbed max", fail, cases);

    let mut fail = None;
    let mut cases = 0;
    for l in lens_sweep(10, 3) {
        let ones = l.weights().iter().all(|&w| w == 1);
        for a in classes(&l).into_iter().filter(|a| !a.is_trivial()) {
            cases += 1;
            let k = k_a(&l, &a);
            let e = ellipsoid_min_index(&l, &a).unwrap();
            let e2 = ellipsoid_min_index_scaled(&l, &a, 1).unwrap();
            let esh_ok = !ones
                || min_degree(&graded_ranks(l.n() as i64, l.p(), a.j, 2).unwrap()).unwrap() == k;
            if (k != e || e != e2 || !esh_ok) && fail.is_none() {
                fail = Some(format!("{l} j={}: k_a={k} ellipsoid={e}", a.j));
            }
        }
    }
    rec.sweep("k_a = ellipsoid minimum = minimal homology degree", fail, cases);

    let mut fail = None;
    for p in 3..=30i64 {
        for q in 1..p {
            let Ok(l) = LensSpace::new(p, &[1, q]) else { continue };
            let pos = find_positive_classes(&l);
            let minus_one = q == p - 1;
            let ok = pos.is_empty() == (minus_one && p % 2 == 1)
                && (!minus_one || p % 2 == 1 || (pos.len() == 1 && pos[0].0.j == p / 2));
            if !ok && fail.is_none() {
                fail = Some(format!("p={p} q={q}"));
            }
        }
    }
    rec.sweep("positive classes of L(p, q)", fail, 28);

    let mut fail = None;
    let mut cases = 0;
    for l in lens_sweep(8, 3) {
        for j in 1..=l.p() {
            let a = homotopy_class(&l, j).unwrap();
            for m in 1..=5 {
                if j.gcd(&m) != 1 {
                    continue;
                }
                cases += 1;
                let x = toric_orbit_index(&l, &a, m).unwrap();
                let y = toric_orbit_index_engine(&l, &a, m).unwrap();
                if x != y && fail.is_none() {
                    fail = Some(format!("{l} j={j} m={m}: {x} vs {y}"));
                }
            }
        }
    }
    rec.sweep("toric closed form = engine", fail, cases);

    let mut fail = None;
    for n in 1..=10 {
        for p in 2..=12 {
            let (_, below) = carrier_degrees(n, p);
            if below as i64 != (n + 1) / 2 && fail.is_none() {
                fail = Some(format!("n={n} p={p}"));
            }
        }
    }
    rec.sweep("carrier count floor((n+1)/2)", fail, 110);

    let grid = [r(1, 1), r(5, 4), r(3, 2), r(7, 4), r(2, 1)];
    let mut fail = None;
    let mut cases = 0;
    for p in 1..=6 {
        for n in 1..=4 {
            for &rr in &grid {
                for &big in &grid {
                    let Ok(d) = PinchingData::new(n, p, rr, big) else { continue };
                    if !pinching_ok(&d) {
                        continue;
                    }
                    cases += 1;
                    let sc = (1..=20).all(|k| simplicity_certificate(&d, k, cw_min_period(&d)) == Ok(true));
                    let mult = multiplicity_guarantee(&d, ConvexKind::PinchedStrictlyConvex) == Ok(n + 1)
                        && (p < 2 || multiplicity_guarantee(&d, ConvexKind::HPinched) == Ok((n + 1) / 2));
                    if !(sc && mult) && fail.is_none() {
                        fail = Some(format!("n={n} p={p} r={rr} R={big}"));
                    }
                }
            }
        }
    }
    rec.sweep("pinching: simplicity and multiplicity", fail, cases);
    rec.out
}
