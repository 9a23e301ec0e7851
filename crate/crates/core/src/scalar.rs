//! Exact field scalars.
//!
//! The group law and the triple formulas only need field operations, exact
//! equality and (for a few checks) exact square roots, so they are written
//! against [`Scalar`]. Floating-point types are deliberately not implemented:
//! every predicate in this crate relies on exact equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

use crate::{numeric, Rat};

pub trait Scalar:
    Clone + PartialEq + Eq + PartialOrd + fmt::Debug + fmt::Display + Num + Signed + Send + Sync
{
    /// Embeds an integer, `None` when it does not fit.
    fn from_int(n: &BigInt) -> Option<Self>;

    /// Nonnegative exact square root, if one exists in the field.
    fn sqrt_exact(&self) -> Option<Self>;

    /// Lossless conversion into a big rational.
    fn to_rat(&self) -> Rat;

    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n)).expect("small integers embed in every scalar")
    }
}

impl Scalar for Rat {
    fn from_int(n: &BigInt) -> Option<Self> {
        Some(Rat::from_integer(n.clone()))
    }

    fn sqrt_exact(&self) -> Option<Self> {
        numeric::is_square(self)
    }

    fn to_rat(&self) -> Rat {
        self.clone()
    }
}

macro_rules! machine_ratio {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn from_int(n: &BigInt) -> Option<Self> {
                let v: $t = n.try_into().ok()?;
                Some(Ratio::from_integer(v))
            }

            fn sqrt_exact(&self) -> Option<Self> {
                if self.is_negative() {
                    return None;
                }
                let n = self.numer().sqrt();
                let d = self.denom().sqrt();
                (n * n == *self.numer() && d * d == *self.denom()).then(|| Ratio::new(n, d))
            }

            fn to_rat(&self) -> Rat {
                Rat::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    )*};
}

machine_ratio!(i64, i128);

/// Narrows a big rational into `F`, `None` when a component overflows.
pub fn from_rat<F: Scalar>(q: &Rat) -> Option<F> {
    let n = F::from_int(q.numer())?;
    let d = F::from_int(q.denom())?;
    Some(n / d)
}

/// Integer value of `q` if it is integral and fits an `i64`.
pub fn small_integer<F: Scalar>(q: &F) -> Option<i64> {
    let r = q.to_rat();
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}
