use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar the numerical kernels are written against.
///
/// Implemented for `f32` and `f64`. Tolerances throughout the crate are
/// stated for double precision and rescaled for narrower types through
/// [`Scalar::tol`].
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Rescales a tolerance written for `f64` to this type's precision.
    ///
    /// Multiplies by `sqrt(eps_self / eps_f64)`; identity for `f64`.
    #[inline]
    fn tol(base: f64) -> Self {
        let ratio = Self::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
        Self::lit(base * ratio.sqrt())
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_is_identity_in_double() {
        assert_eq!(<f64 as Scalar>::tol(1e-9), 1e-9);
    }

    #[test]
    fn tolerance_widens_in_single() {
        let t = <f32 as Scalar>::tol(1e-9);
        assert!(t > 1e-6 && t < 1e-4, "{t}");
    }
}
