//! Coefficient types for the per-point inner loops.
//!
//! Per-point products have coefficients bounded by `2^s`, and a sum over `N`
//! points by `N · 2^s`. Nets hold fewer than `2^62` points, so for `s ≤ 62`
//! the hot loops run on `i128` and only the final combination uses `BigInt`.

use std::ops::{AddAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub(crate) trait Coeff:
    Clone
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + Into<BigInt>
{
}

impl Coeff for i64 {}
impl Coeff for i128 {}
impl Coeff for BigInt {}

pub(crate) fn to_big<C: Coeff>(v: Vec<C>) -> Vec<BigInt> {
    v.into_iter().map(Into::into).collect()
}

pub(crate) fn add_into<C: Coeff>(acc: &mut [C], other: &[C]) {
    for (a, o) in acc.iter_mut().zip(other) {
        *a += o;
    }
}
