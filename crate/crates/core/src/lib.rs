//! Exact arithmetic for Reeb dynamics on lens spaces.
//!
//! Everything here works over integers and [`Rational`]s. Symplectic paths are
//! restricted to direct sums of planar rotations, which covers every linear
//! path that shows up when comparing a convex contact form with its model
//! twist. The only floating point lives in [`index_engine::planar`], which is
//! a numeric oracle for the exact engine.

pub mod class_invariants;
pub mod dyn_verify;
pub mod esh_ranks;
pub mod index_engine;
pub mod lens_core;
pub mod verify;

pub use lens_core::{HomotopyClass, LensError, LensSpace, Rational};

/// Serde helpers printing rationals as `"num/den"` strings.
pub mod frac {
    use crate::Rational;
    use serde::Serializer;

    pub fn to_string(r: &Rational) -> String {
        if *r.denom() == 1 {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn parse(s: &str) -> Option<Rational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().ok()?;
                let b: i64 = b.trim().parse().ok()?;
                if b == 0 {
                    return None;
                }
                Some(Rational::new(a, b))
            }
            None => s.parse::<i64>().ok().map(Rational::from_integer),
        }
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(r))
    }

    pub fn serialize_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&to_string(r)),
            None => s.serialize_none(),
        }
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn round_trip() {
            for (a, b) in [(8, 11), (-16, 11), (3, 1), (0, 5), (30, 11)] {
                let r = Rational::new(a, b);
                assert_eq!(parse(&to_string(&r)), Some(r));
            }
            assert_eq!(to_string(&Rational::new(4, 2)), "2");
            assert_eq!(parse("1/0"), None);
        }
    }
}
