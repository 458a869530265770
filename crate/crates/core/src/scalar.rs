//! Exact scalar types.
//!
//! All root-system quantities are exact. Floating point never enters: pairings
//! like `<alpha, e>` must be tested for integrality, which is meaningless
//! under rounding. The linear-algebra layer is generic over [`ExactField`] so
//! that the same code runs over machine-word rationals (fast, used by the
//! sweeps) and big rationals (used to cross-check overflow-prone paths).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

/// A commutative ring with exact arithmetic and a path in from `i64`.
pub trait ExactRing: Clone + Num + Signed + Debug + Display + PartialOrd + Send + Sync {
    fn from_int(v: i64) -> Self;
}

/// An exact field: division is exact and integrality is decidable.
pub trait ExactField: ExactRing {
    fn is_integral(&self) -> bool;

    /// Numerator and denominator in lowest terms, as `i128`, when they fit.
    fn to_fraction(&self) -> Option<(i128, i128)>;
}

macro_rules! ring_for_int {
    ($($t:ty),*) => {$(
        impl ExactRing for $t {
            fn from_int(v: i64) -> Self {
                v as $t
            }
        }
    )*};
}
ring_for_int!(i64, i128);

impl ExactRing for BigInt {
    fn from_int(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl<T> ExactRing for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + Debug + Display + Send + Sync,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer fits scalar"))
    }
}

impl<T> ExactField for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + Debug + Display + Send + Sync + TryInto<i128>,
{
    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_fraction(&self) -> Option<(i128, i128)> {
        let n: i128 = self.numer().clone().try_into().ok()?;
        let d: i128 = self.denom().clone().try_into().ok()?;
        Some((n, d))
    }
}

/// Machine rationals; the default scalar for every sweep.
pub type Rational = Ratio<i64>;
/// Wide machine rationals.
pub type Rational128 = Ratio<i128>;
/// Arbitrary-precision rationals.
pub type BigRational = Ratio<BigInt>;

pub(crate) fn zero<T: Zero>() -> T {
    T::zero()
}

pub(crate) fn one<T: One>() -> T {
    T::one()
}
