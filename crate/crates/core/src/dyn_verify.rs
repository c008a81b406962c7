//! Checkable consequences of convexity for closed Reeb orbits, plus the
//! parameter arithmetic behind the counterexample and pinching statements.
//!
//! Multiples of `pi` (actions, periods) are carried as rational coefficients.

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::class_invariants::{h_a, h_tilde_a, k_a, positivity};
use crate::frac;
use crate::index_engine::{block_bott, BottFunction};
use crate::lens_core::{homotopy_class, LensError, LensSpace, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("spectrum has total multiplicity {got}, expected {expected}")]
    BadSpectrum { expected: u32, got: u32 },
    #[error("the trivial class has no hyperbolicity thresholds")]
    TrivialClass,
    #[error("invalid parameters: {0}")]
    BadParams(&'static str),
    #[error("pinching ratio fails R^2 < (p+1) r^2")]
    PinchingFails,
    #[error(transparent)]
    Lens(#[from] LensError),
}

/// One eigenvalue type of a linearized return map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EigenDescriptor {
    /// The pair `e^{+-2 pi i turns}`, `turns` not in `{0, 1/2}`; counts twice.
    Rotation {
        #[serde(serialize_with = "crate::frac::serialize")]
        turns: Rational,
    },
    /// The pair `(lambda, 1/lambda)` with `|lambda| != 1`; counts twice.
    Hyperbolic { modulus: f64 },
    UnitMinusOne,
    UnitPlusOne,
}

impl EigenDescriptor {
    fn weight(&self) -> u32 {
        match self {
            EigenDescriptor::Rotation { .. } | EigenDescriptor::Hyperbolic { .. } => 2,
            EigenDescriptor::UnitMinusOne | EigenDescriptor::UnitPlusOne => 1,
        }
    }

    fn unit_modulus(&self) -> bool {
        !matches!(self, EigenDescriptor::Hyperbolic { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub lens: LensSpace,
    pub j: i64,
    /// Coefficient of `pi`.
    #[serde(serialize_with = "crate::frac::serialize")]
    pub action: Rational,
    #[serde(serialize_with = "crate::frac::serialize")]
    pub index: Rational,
    pub nullity: u32,
    pub spectrum: Vec<(EigenDescriptor, u32)>,
}

impl OrbitRecord {
    pub fn new(
        lens: LensSpace,
        j: i64,
        action: Rational,
        index: Rational,
        spectrum: Vec<(EigenDescriptor, u32)>,
    ) -> Result<Self, VerifyError> {
        homotopy_class(&lens, j)?;
        if action <= Rational::zero() {
            return Err(VerifyError::BadParams("action must be positive"));
        }
        let expected = 2 * lens.n() as u32;
        let got = spectrum.iter().map(|(d, m)| d.weight() * m).sum();
        if got != expected {
            return Err(VerifyError::BadSpectrum { expected, got });
        }
        let nullity = spectrum
            .iter()
            .filter(|(d, _)| *d == EigenDescriptor::UnitPlusOne)
            .map(|(_, m)| m)
            .sum();
        Ok(Self { lens, j, action, index, nullity, spectrum })
    }

    /// Degrees where the local homology can live.
    pub fn support_window(&self) -> (Rational, Rational) {
        (self.index, self.index + self.nullity as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitType {
    Elliptic,
    Hyperbolic,
    Neither,
}

pub fn classify(orbit: &OrbitRecord) -> OrbitType {
    let units = orbit.spectrum.iter().filter(|(d, _)| d.unit_modulus()).count();
    if units == orbit.spectrum.len() {
        OrbitType::Elliptic
    } else if units == 0 {
        OrbitType::Hyperbolic
    } else {
        OrbitType::Neither
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    IndexBelowKA,
    HyperbolicBelowThreshold,
    PositiveClassNotElliptic,
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::IndexBelowKA => "index_below_k_a",
            Violation::HyperbolicBelowThreshold => "hyperbolic_below_h_a",
            Violation::PositiveClassNotElliptic => "positive_class_not_elliptic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MainTheoremReport {
    pub orbit: OrbitRecord,
    pub strict: bool,
    pub orbit_type: OrbitType,
    pub k_a: Rational,
    pub h_a: Rational,
    pub h_tilde_a: Rational,
    pub violations: Vec<Violation>,
}

impl MainTheoremReport {
    pub fn to_json(&self) -> Value {
        json!({
            "orbit": serde_json::to_value(&self.orbit).expect("serializable"),
            "strict": self.strict,
            "orbit_type": self.orbit_type,
            "violations": self.violations.iter().map(|v| v.name()).collect::<Vec<_>>(),
            "thresholds": {
                "k_a": frac::to_string(&self.k_a),
                "h_a": frac::to_string(&self.h_a),
                "h_tilde_a": frac::to_string(&self.h_tilde_a),
            },
        })
    }
}

/// Checks an orbit against the index and type constraints a convex
/// (`strict`: strictly convex) form must satisfy.
pub fn check_main_theorem(orbit: &OrbitRecord, strict: bool) -> Result<MainTheoremReport, VerifyError> {
    let a = homotopy_class(&orbit.lens, orbit.j)?;
    if a.is_trivial() {
        return Err(VerifyError::TrivialClass);
    }
    let lens = &orbit.lens;
    let k = k_a(lens, &a);
    let h = h_a(lens, &a).map_err(|_| VerifyError::TrivialClass)?;
    let ht = h_tilde_a(lens, &a).map_err(|_| VerifyError::TrivialClass)?;
    let (pos, strict_pos) = positivity(lens, &a).map_err(|_| VerifyError::TrivialClass)?;
    let ty = classify(orbit);
    let mut violations = vec![];
    if orbit.index < k {
        violations.push(Violation::IndexBelowKA);
    }
    let threshold = if strict { ht } else { h };
    if orbit.index < threshold && ty == OrbitType::Hyperbolic {
        violations.push(Violation::HyperbolicBelowThreshold);
    }
    let positive_enough = if strict { pos } else { strict_pos };
    if positive_enough && orbit.index == k && ty != OrbitType::Elliptic {
        violations.push(Violation::PositiveClassNotElliptic);
    }
    Ok(MainTheoremReport {
        orbit: orbit.clone(),
        strict,
        orbit_type: ty,
        k_a: k,
        h_a: h,
        h_tilde_a: ht,
        violations,
    })
}

/// Least even `Delta` with `(4n+6)/p <= Delta < 2n+2`.
pub fn delta_search(n: i64, p: i64) -> Option<i64> {
    let lo = Rational::new(4 * n + 6, p).ceil().to_integer();
    let lo = lo + lo.rem_euclid(2);
    (lo < 2 * n + 2).then_some(lo)
}

/// `Delta` satisfies `(2n+4)/p <= Delta - (2n+2)/p < 2n+2 - (2n+2)/p`.
pub fn delta_admissible(n: i64, p: i64, delta: i64) -> bool {
    let shifted = Rational::from_integer(delta) - Rational::new(2 * n + 2, p);
    delta % 2 == 0
        && Rational::new(2 * n + 4, p) <= shifted
        && shifted < Rational::from_integer(2 * n + 2) - Rational::new(2 * n + 2, p)
}

pub fn delta_fn(x: Rational) -> i64 {
    if x.is_integer() {
        2 * x.to_integer() + 1
    } else {
        2 * x.ceil().to_integer() - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DcCheck {
    /// The inequality itself, evaluated exactly.
    pub direct: bool,
    /// The estimate chain: `(2n-1) eps < 2/p` and
    /// `Delta - (2n+3)/q - (2n-1) eps >= (2n+2)/p`.
    pub sufficient: bool,
}

pub fn dc_inequality_check(
    n: i64,
    p: i64,
    delta: i64,
    eps: Rational,
    q: i64,
    t_g: Rational,
) -> Result<DcCheck, VerifyError> {
    if q < p {
        return Err(VerifyError::BadParams("q must be at least p"));
    }
    if t_g <= Rational::zero() || t_g.ceil().to_integer() > q {
        return Err(VerifyError::BadParams("need 0 < T_G and ceil(T_G) <= q"));
    }
    if eps <= Rational::zero() {
        return Err(VerifyError::BadParams("eps must be positive"));
    }
    let c = (Rational::from_integer(2 * n + 4 - delta) + eps) / 2;
    let lhs = Rational::new(
        n + 2 + delta_fn(c * t_g) + (n - 1) * delta_fn(eps * t_g) + 1,
        q,
    );
    let rhs = Rational::from_integer(2 * n + 4) - Rational::new(2 * n + 2, p);
    let slack = eps * (2 * n - 1);
    let sufficient = slack < Rational::new(2, p)
        && Rational::from_integer(delta) - Rational::new(2 * n + 3, q) - slack
            >= Rational::new(2 * n + 2, p);
    Ok(DcCheck { direct: lhs <= rhs, sufficient })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DcSweep {
    pub cases: usize,
    /// `(q, T_G)` pairs failing the exact inequality with integral `T_G`.
    pub integral_failures: Vec<(i64, String)>,
    /// Same with `T_G` on the grid `k / den`.
    pub rational_failures: Vec<(i64, String)>,
    /// Whether the estimate chain closes for every `q` in the sweep.
    pub chain_closes: bool,
}

/// Runs the inequality over `q in p..=q_factor*p` and `T_G` in `(0, q]`.
pub fn dc_sweep(
    n: i64,
    p: i64,
    delta: i64,
    eps: Rational,
    q_factor: i64,
    den: i64,
) -> Result<DcSweep, VerifyError> {
    let mut out = DcSweep {
        cases: 0,
        integral_failures: vec![],
        rational_failures: vec![],
        chain_closes: true,
    };
    for q in p..=q_factor * p {
        for k in 1..=q * den {
            let t = Rational::new(k, den);
            let c = dc_inequality_check(n, p, delta, eps, q, t)?;
            out.cases += 1;
            out.chain_closes &= c.sufficient;
            if !c.direct {
                if t.is_integer() {
                    out.integral_failures.push((q, frac::to_string(&t)));
                }
                out.rational_failures.push((q, frac::to_string(&t)));
            }
        }
    }
    Ok(out)
}

/// Index `(2n+2) j_a / p - 2` of the hyperbolic orbit built on the toric form with `m = n - 1`.
pub fn hyperbolic_index_eq(n: i64, p: i64, j_a: i64) -> Rational {
    Rational::new((2 * n + 2) * j_a, p) - 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PinchingData {
    #[serde(serialize_with = "crate::frac::serialize")]
    pub r: Rational,
    #[serde(serialize_with = "crate::frac::serialize", rename = "R")]
    pub big_r: Rational,
    pub p: i64,
    pub n: i64,
}

impl PinchingData {
    pub fn new(n: i64, p: i64, r: Rational, big_r: Rational) -> Result<Self, VerifyError> {
        if n < 1 || p < 1 {
            return Err(VerifyError::BadParams("need n >= 1 and p >= 1"));
        }
        if r <= Rational::zero() || r > big_r {
            return Err(VerifyError::BadParams("need 0 < r <= R"));
        }
        Ok(Self { r, big_r, p, n })
    }
}

/// `R/r < sqrt(p+1)`, compared after squaring.
pub fn pinching_ok(d: &PinchingData) -> bool {
    d.big_r * d.big_r < d.r * d.r * (d.p + 1)
}

/// Lower bound `2 r^2 / p` (times `pi`) for the period of a class-`a` simple orbit.
pub fn cw_min_period(d: &PinchingData) -> Rational {
    d.r * d.r * 2 / d.p
}

/// Whether `(2/p) / ((kp+1) T) < 1/R^2`, with `T` a coefficient of `pi`.
pub fn simplicity_certificate(d: &PinchingData, k: i64, t: Rational) -> Result<bool, VerifyError> {
    if k < 1 {
        return Err(VerifyError::BadParams("k must be positive"));
    }
    if t < cw_min_period(d) {
        return Err(VerifyError::BadParams("period below the Croke-Weinstein bound"));
    }
    let lhs = Rational::new(2, d.p) / (t * (k * d.p + 1));
    Ok(lhs * d.big_r * d.big_r < Rational::from_integer(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvexKind {
    HPinched,
    PinchedStrictlyConvex,
}

/// Guaranteed number of geometrically distinct simple-class orbits:
/// non-hyperbolic ones for `HPinched`, all of them otherwise.
pub fn multiplicity_guarantee(d: &PinchingData, kind: ConvexKind) -> Result<i64, VerifyError> {
    if !pinching_ok(d) {
        return Err(VerifyError::PinchingFails);
    }
    match kind {
        ConvexKind::HPinched if d.p < 2 => Err(VerifyError::BadParams("H-pinched count needs p >= 2")),
        ConvexKind::HPinched => Ok((d.n + 1) / 2),
        ConvexKind::PinchedStrictlyConvex => Ok(d.n + 1),
    }
}

/// A return path made of planar rotations and hyperbolic planar blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnPath {
    /// `(total turns, multiplicity)`.
    pub rotations: Vec<(Rational, u32)>,
    /// `(index, modulus, multiplicity)`; the index of a hyperbolic planar path
    /// counts its half turns.
    pub hyperbolic: Vec<(i64, f64, u32)>,
}

impl ReturnPath {
    pub fn half_dim(&self) -> u32 {
        self.rotations.iter().map(|r| r.1).sum::<u32>() + self.hyperbolic.iter().map(|h| h.2).sum::<u32>()
    }

    pub fn index(&self) -> i64 {
        self.bott().value_at_one
    }

    pub fn bott(&self) -> BottFunction {
        let mut b = BottFunction::zero();
        for &(x, m) in &self.rotations {
            let bb = block_bott(x);
            for _ in 0..m {
                b = b.add(&bb);
            }
        }
        let shift: i64 = self.hyperbolic.iter().map(|&(h, _, m)| h * m as i64).sum();
        b.shift(shift)
    }

    pub fn spectrum(&self) -> Vec<(EigenDescriptor, u32)> {
        let mut out = vec![];
        for &(x, m) in &self.rotations {
            let f = x - x.floor();
            if f.is_zero() {
                out.push((EigenDescriptor::UnitPlusOne, 2 * m));
            } else if f == Rational::new(1, 2) {
                out.push((EigenDescriptor::UnitMinusOne, 2 * m));
            } else {
                out.push((EigenDescriptor::Rotation { turns: f }, m));
            }
        }
        for &(_, modulus, m) in &self.hyperbolic {
            out.push((EigenDescriptor::Hyperbolic { modulus }, m));
        }
        out
    }
}

/// Orbit records for the constructions that test the index and type constraints.
pub mod presets {
    use super::*;

    /// The constant orbit of the plug construction on `L^{2n+1}_p(1, ..., 1)`,
    /// class `j = p - 1`, index `Delta - (2n+2)/p - n`.
    pub fn plug_constant_orbit(n: i64, p: i64, delta: i64, eps: Rational) -> Result<OrbitRecord, VerifyError> {
        let lens = LensSpace::standard(p, n as usize)?;
        let index = Rational::from_integer(delta - n) - Rational::new(2 * n + 2, p);
        // rotation by -(2n+4-Delta+eps)/2 turns in z_1 and -eps in the others
        let first = -(Rational::from_integer(2 * n + 4 - delta) + eps) / 2;
        let first = first - first.floor();
        let rest = Rational::from_integer(1) - eps;
        let mut spectrum = vec![(EigenDescriptor::Rotation { turns: first }, 1)];
        if n > 1 {
            spectrum.push((EigenDescriptor::Rotation { turns: rest }, n as u32 - 1));
        }
        OrbitRecord::new(lens, p - 1, Rational::new(1, p), index, spectrum)
    }

    /// Hyperbolic orbit from a saddle inserted on the toric form with `m = n - 1`.
    pub fn toric_saddle_orbit(n: i64, p: i64, j: i64) -> Result<OrbitRecord, VerifyError> {
        let lens = LensSpace::standard(p, n as usize)?;
        let spectrum = vec![(EigenDescriptor::Hyperbolic { modulus: std::f64::consts::E }, n as u32)];
        OrbitRecord::new(lens, j, Rational::new(j, p), hyperbolic_index_eq(n, p, j), spectrum)
    }

    /// Hyperbolic orbit over a saddle on `CP^n` for the prequantization form, class `j = 1`.
    pub fn prequantization_saddle_orbit(n: i64, p: i64) -> Result<OrbitRecord, VerifyError> {
        let lens = LensSpace::standard(p, n as usize)?;
        let spectrum = vec![(EigenDescriptor::Hyperbolic { modulus: 2.0 }, n as u32)];
        OrbitRecord::new(lens, 1, Rational::new(1, p), Rational::new(2 * n + 2, p), spectrum)
    }

    /// The minimal-index ellipsoid orbit `gamma_a`: elliptic with index `k_a`.
    pub fn ellipsoid_orbit(lens: &LensSpace, j: i64) -> Result<OrbitRecord, VerifyError> {
        let a = homotopy_class(lens, j)?;
        let n = lens.n() as u32;
        let spectrum = vec![(EigenDescriptor::Rotation { turns: Rational::new(1, 7) }, n)];
        OrbitRecord::new(lens.clone(), j, Rational::new(j, lens.p()), k_a(lens, &a), spectrum)
    }
}

/// `max B - B(1)` over the rotation part, for inspection.
pub fn bott_excess(b: &BottFunction) -> i64 {
    b.max_over_circle() - b.value_at_one
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;
    use crate::index_engine::elliptic_certificate;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn names(rep: &MainTheoremReport) -> Vec<&'static str> {
        rep.violations.iter().map(|v| v.name()).collect()
    }

    #[test]
    fn classification() {
        let l = LensSpace::standard(5, 2).unwrap();
        let rot = EigenDescriptor::Rotation { turns: r(1, 3) };
        let hyp = EigenDescriptor::Hyperbolic { modulus: std::f64::consts::E };
        let o = |s| OrbitRecord::new(l.clone(), 1, r(1, 1), r(0, 1), s).unwrap();
        assert_eq!(classify(&o(vec![(rot, 2)])), OrbitType::Elliptic);
        assert_eq!(classify(&o(vec![(hyp, 2)])), OrbitType::Hyperbolic);
        assert_eq!(classify(&o(vec![(rot, 1), (hyp, 1)])), OrbitType::Neither);
        assert_eq!(classify(&o(vec![(hyp, 1), (rot, 1)])), OrbitType::Neither);
        let deg = o(vec![(EigenDescriptor::UnitPlusOne, 2), (rot, 1)]);
        assert_eq!(deg.nullity, 2);
        assert_eq!(deg.support_window(), (r(0, 1), r(2, 1)));
        assert_eq!(
            OrbitRecord::new(l.clone(), 1, r(1, 1), r(0, 1), vec![(rot, 1)]),
            Err(VerifyError::BadSpectrum { expected: 4, got: 2 })
        );
    }

    #[test]
    fn counterexample_reports() {
        let (n, p) = (2, 4);
        let delta = delta_search(n, p).unwrap();
        let g = plug_constant_orbit(n, p, delta, r(1, 20)).unwrap();
        let rep = check_main_theorem(&g, false).unwrap();
        assert_eq!(names(&rep), vec!["index_below_k_a"]);
        assert_eq!(rep.k_a, r(n + 2, 1) - r(2 * n + 2, p));

        let h = toric_saddle_orbit(2, 11, 5).unwrap();
        let rep = check_main_theorem(&h, false).unwrap();
        assert_eq!(h.index, r(8, 11));
        assert_eq!((rep.k_a, rep.h_a), (r(8, 11), r(30, 11)));
        assert_eq!(names(&rep), vec!["hyperbolic_below_h_a", "positive_class_not_elliptic"]);
        let js = rep.to_json();
        assert_eq!(js["thresholds"]["k_a"], "8/11");
        assert_eq!(js["thresholds"]["h_a"], "30/11");

        let big = toric_saddle_orbit(14, 5, 2).unwrap();
        let rep = check_main_theorem(&big, false).unwrap();
        assert_eq!(big.index, rep.h_a - 2);
        assert_eq!(names(&rep), vec!["hyperbolic_below_h_a"]);
    }

    #[test]
    fn sharpness_reports() {
        for n in 1..=5 {
            for p in 2..=9 {
                let o = prequantization_saddle_orbit(n, p).unwrap();
                for strict in [false, true] {
                    assert!(check_main_theorem(&o, strict).unwrap().violations.is_empty());
                }
            }
        }
        let o = prequantization_saddle_orbit(1, 4).unwrap();
        let rep = check_main_theorem(&o, true).unwrap();
        assert_eq!(o.index, rep.k_a + 1);
        assert_eq!(o.index, r(1, 1));
        let l = LensSpace::new(7, &[1, 3, -2]).unwrap();
        for j in 1..7 {
            let e = ellipsoid_orbit(&l, j).unwrap();
            assert!(check_main_theorem(&e, true).unwrap().violations.is_empty());
        }
        assert_eq!(
            check_main_theorem(&ellipsoid_orbit(&l, 7).unwrap(), false),
            Err(VerifyError::TrivialClass)
        );
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_search(2, 4), Some(4));
        assert_eq!(delta_search(1, 3), None);
        assert_eq!(delta_search(1, 4), None);
        assert_eq!(delta_search(2, 3), None);
        assert_eq!(delta_search(1, 5), Some(2));
        assert_eq!(delta_search(3, 2), None);
        assert_eq!(delta_fn(r(0, 1)), 1);
        assert_eq!(delta_fn(r(1, 2)), 1);
        assert_eq!(delta_fn(r(2, 1)), 5);
        assert_eq!(delta_fn(r(-1, 2)), -1);
    }

    #[test]
    fn dc_examples() {
        assert!(dc_inequality_check(2, 4, 4, r(1, 20), 4, r(3, 1)).unwrap().direct);
        assert!(dc_inequality_check(1, 5, 2, r(1, 20), 5, r(4, 1)).unwrap().direct);
        assert!(dc_inequality_check(2, 4, 4, r(1, 20), 3, r(3, 1)).is_err());
        assert!(dc_inequality_check(2, 4, 4, r(1, 20), 4, r(9, 2)).is_err());
        for (n, p) in [(2, 4), (1, 5), (3, 3), (2, 7)] {
            let d = delta_search(n, p).unwrap();
            let s = dc_sweep(n, p, d, r(1, 20 * n * p), 10, 1).unwrap();
            assert!(s.integral_failures.is_empty(), "{n} {p}");
        }
    }

    #[test]
    fn pinching_examples() {
        let d = PinchingData::new(3, 2, r(1, 1), r(3, 2)).unwrap();
        assert!(pinching_ok(&d));
        assert!(!pinching_ok(&PinchingData::new(3, 2, r(1, 1), r(2, 1)).unwrap()));
        assert_eq!(cw_min_period(&PinchingData::new(1, 3, r(1, 1), r(1, 1)).unwrap()), r(2, 3));
        assert!(simplicity_certificate(&PinchingData::new(1, 2, r(1, 1), r(3, 2)).unwrap(), 1, r(1, 1)).unwrap());
        let edge = PinchingData::new(1, 3, r(1, 1), r(2, 1)).unwrap();
        assert!(!simplicity_certificate(&edge, 1, cw_min_period(&edge)).unwrap());
        assert!(simplicity_certificate(&d, 1, r(1, 2)).is_err());
        assert_eq!(multiplicity_guarantee(&d, ConvexKind::HPinched), Ok(2));
        assert_eq!(multiplicity_guarantee(&d, ConvexKind::PinchedStrictlyConvex), Ok(4));
        let el = PinchingData::new(1, 1, r(1, 1), r(5, 4)).unwrap();
        assert_eq!(multiplicity_guarantee(&el, ConvexKind::PinchedStrictlyConvex), Ok(2));
        let bad = PinchingData::new(3, 2, r(1, 1), r(2, 1)).unwrap();
        assert_eq!(multiplicity_guarantee(&bad, ConvexKind::HPinched), Err(VerifyError::PinchingFails));
    }

    #[test]
    fn mixed_paths_and_certificate() {
        let path = ReturnPath {
            rotations: vec![(r(-5, 11), 1)],
            hyperbolic: vec![],
        };
        let b = path.bott();
        assert_eq!(b.value_at_one, -1);
        assert!(elliptic_certificate(&b, 1));
        let hyp = ReturnPath {
            rotations: vec![],
            hyperbolic: vec![(2, 3.0, 1)],
        };
        assert!(!elliptic_certificate(&hyp.bott(), 1));
        let mixed = ReturnPath {
            rotations: vec![(r(7, 3), 1)],
            hyperbolic: vec![(1, -2.0, 1)],
        };
        assert!(!elliptic_certificate(&mixed.bott(), 2));
        let l = LensSpace::standard(5, 2).unwrap();
        let o = OrbitRecord::new(l, 1, r(1, 1), r(mixed.index(), 1), mixed.spectrum()).unwrap();
        assert_eq!(classify(&o), OrbitType::Neither);
    }
}
