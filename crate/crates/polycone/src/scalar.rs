//! The scalar abstraction underlying all geometric computation.
//!
//! Every algorithm in this crate (simplex, double description, distance
//! formulas, set predicates) is written against [`Scalar`], an ordered field
//! with total comparison on the values the algorithms produce. Two kinds of
//! instantiation are intended:
//!
//! * arbitrary-precision rationals ([`num_rational::BigRational`]) — every
//!   comparison and every reported value is exact, which is what the test
//!   suites and the classification certificates rely on;
//! * hardware floats (`f64`, `f32`) — the same code runs, but none of the
//!   exactness guarantees survive rounding; useful for quick experiments only.
//!
//! The crate root re-exports rational aliases (`Rational`, `RationalVector`,
//! ...) that the rest of the workspace uses almost exclusively.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// An ordered field scalar suitable for exact polyhedral computation.
///
/// `Signed` (from num-traits) brings in the full ring/field operator set plus
/// `abs` and sign predicates; the additional items cover construction,
/// deterministic total ordering and canonical ray scaling.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic in this type is exact (no rounding).
    const EXACT: bool;

    /// Embeds a machine integer.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer embeds into scalar")
    }

    /// Builds the fraction `num/den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    /// Nearest `f64` (used only for display and the float-quarantined oracles).
    fn to_f64_lossy(&self) -> f64;

    /// Total ordering; panics on incomparable values (NaN).
    fn cmp_total(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("scalar comparison")
    }

    /// Parses `"p/q"` or `"p"` with decimal integers and `q > 0`.
    fn parse_fraction(s: &str) -> Option<Self>;

    /// Rescales `coords` by a positive factor into the canonical representative
    /// of the ray it spans. The default divides by the absolute value of the
    /// first nonzero coordinate; exact rational scalars override this to yield
    /// primitive integer vectors instead.
    fn canonicalize_ray(coords: &mut [Self]) {
        let lead = match coords.iter().find(|c| !c.is_zero()) {
            Some(c) => c.abs(),
            None => return,
        };
        for c in coords.iter_mut() {
            *c = c.clone() / lead.clone();
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn parse_fraction(s: &str) -> Option<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = match den {
            Some(d) => d.parse().ok()?,
            None => BigInt::from(1),
        };
        if den <= BigInt::from(0) {
            return None;
        }
        Some(BigRational::new(num, den))
    }

    fn canonicalize_ray(coords: &mut [Self]) {
        // Scale to a primitive integer vector: clear denominators, then divide
        // by the gcd of the numerators. Sign is preserved (rays are oriented).
        let mut lcm = BigInt::from(1);
        for c in coords.iter() {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::from(0);
        for c in coords.iter() {
            let int = c.numer() * (&lcm / c.denom());
            gcd = gcd.gcd(&int);
        }
        if gcd.is_zero() {
            return;
        }
        let factor = BigRational::new(lcm, gcd);
        for c in coords.iter_mut() {
            *c = &*c * &factor;
        }
    }
}

macro_rules! impl_scalar_for_float {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }

            fn parse_fraction(s: &str) -> Option<Self> {
                let s = s.trim();
                match s.split_once('/') {
                    Some((n, d)) => {
                        let n: $t = n.trim().parse().ok()?;
                        let d: $t = d.trim().parse().ok()?;
                        if d <= 0.0 {
                            return None;
                        }
                        Some(n / d)
                    }
                    None => s.parse().ok(),
                }
            }
        }
    };
}

impl_scalar_for_float!(f64);
impl_scalar_for_float!(f32);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(BigRational::parse_fraction("3/4"), Some(q(3, 4)));
        assert_eq!(BigRational::parse_fraction("-7"), Some(q(-7, 1)));
        assert_eq!(BigRational::parse_fraction(" 2 / 6 "), Some(q(1, 3)));
        assert_eq!(BigRational::parse_fraction("1/0"), None);
        assert_eq!(BigRational::parse_fraction("1/-2"), None);
        assert_eq!(BigRational::parse_fraction("x"), None);
    }

    #[test]
    fn canonical_ray_is_primitive() {
        let mut v = vec![q(2, 3), q(-4, 3), q(0, 1)];
        BigRational::canonicalize_ray(&mut v);
        assert_eq!(v, vec![q(1, 1), q(-2, 1), q(0, 1)]);

        let mut w = vec![q(0, 1), q(-6, 1), q(9, 1)];
        BigRational::canonicalize_ray(&mut w);
        assert_eq!(w, vec![q(0, 1), q(-2, 1), q(3, 1)]);
    }

    #[test]
    fn float_ray_scaling_keeps_orientation() {
        let mut v: Vec<f64> = vec![-2.0, 4.0];
        f64::canonicalize_ray(&mut v);
        assert_eq!(v, vec![-1.0, 2.0]);
    }
}
