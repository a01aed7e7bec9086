//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
///
/// Everything the solvers need is logarithms, exponentials and ordered field
/// arithmetic, so any IEEE float works. Tolerances scale with the type's
/// machine epsilon so the same code paths are usable in single precision.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Default convergence tolerance: `1e-12`, floored at a few ulps.
    #[inline]
    fn default_tol() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(8.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

const PAIRWISE_BLOCK: usize = 8;

/// Pairwise (cascade) summation of `term(0) + ... + term(len - 1)`.
///
/// Blocks of up to eight terms are summed left to right, larger ranges are
/// split in half. Error grows as O(log n) instead of O(n).
pub fn pairwise_sum<T, F>(len: usize, term: F) -> T
where
    T: Scalar,
    F: Fn(usize) -> T,
{
    fn go<T: Scalar, F: Fn(usize) -> T>(lo: usize, hi: usize, term: &F) -> T {
        if hi - lo <= PAIRWISE_BLOCK {
            (lo..hi).fold(T::zero(), |acc, i| acc + term(i))
        } else {
            let mid = lo + (hi - lo) / 2;
            go(lo, mid, term) + go(mid, hi, term)
        }
    }
    go(0, len, &term)
}
