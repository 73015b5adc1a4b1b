//! The polynomial families of the weight-enumerator identities.

use num_bigint::BigInt;
use num_traits::One;

use super::IntPoly;
use crate::coeff::Coeff;
use crate::error::{Error, Result};

fn pow(b: u32, a: usize) -> BigInt {
    num_traits::pow(BigInt::from(b), a)
}

/// `b^a - b^{a-1}` for `a ≥ 1`, and `1` for `a = 0`.
fn step(b: u32, a: usize) -> BigInt {
    if a == 0 {
        BigInt::one()
    } else {
        pow(b, a) - pow(b, a - 1)
    }
}

/// The per-coordinate polynomial `p(h; z)` of the MacWilliams identity at
/// digit depth `n`.
///
/// For `h > 0` this is `1 + ∑_{a<h} (b^a - b^{a-1}) z^a - b^{h-1} z^h`; for
/// `h = 0` it is `1 + ∑_{a=1}^{n} (b^a - b^{a-1}) z^a`.
pub fn p_poly(h: usize, n: usize, b: u32) -> Result<IntPoly> {
    if b < 2 {
        return Err(Error::InvalidArgument(format!("base {b} < 2")));
    }
    if h > n {
        return Err(Error::InvalidArgument(format!("h = {h} exceeds depth {n}")));
    }
    if h == 0 {
        return Ok(IntPoly::new((0..=n).map(|a| step(b, a)).collect()));
    }
    let mut coeffs: Vec<BigInt> = (0..h).map(|a| step(b, a)).collect();
    coeffs.push(-pow(b, h - 1));
    Ok(IntPoly::new(coeffs))
}

/// The closed form `(1 - z)(1 - (bz)^h) / (1 - bz)` for `h > 0`, and
/// `(1 - z)(1 - (bz)^{d+1}) / (1 - bz) + b^d z^{d+1}` for `h = 0`, computed
/// by exact division. Agrees with [`p_poly`] at depth `n = d`.
pub fn p_poly_closed(h: usize, depth: usize, b: u32) -> Result<IntPoly> {
    if b < 2 {
        return Err(Error::InvalidArgument(format!("base {b} < 2")));
    }
    if h > depth {
        return Err(Error::InvalidArgument(format!(
            "h = {h} exceeds depth {depth}"
        )));
    }
    let bz_pow = if h == 0 { depth + 1 } else { h };
    let one_minus_z = IntPoly::from_i64(&[1, -1]);
    let numerator = &one_minus_z * &(&IntPoly::one() - &IntPoly::monomial(pow(b, bz_pow), bz_pow));
    let quotient = numerator.div_one_minus(&BigInt::from(b))?;
    if h == 0 {
        Ok(&quotient + &IntPoly::monomial(pow(b, depth), depth + 1))
    } else {
        Ok(quotient)
    }
}

/// `1 + (b-1)z + (b^2-b)z^2 + ⋯ + (b^m - b^{m-1})z^m`, the expansion of
/// `(1 - z)/(1 - bz)` modulo `z^{m+1}`.
pub fn geometric_series(b: u32, m: usize) -> IntPoly {
    IntPoly::new((0..=m).map(|a| step(b, a)).collect()).with_cap(m)
}

/// `((1 - z)/(1 - bz))^s mod z^{m+1}`.
pub fn geometric_factor(b: u32, m: usize, s: usize) -> IntPoly {
    geometric_series(b, m).pow_trunc(s, m).with_cap(m)
}

/// `1 + ∑_{a=1}^{m} (b^a - b^{a-1}) z^a - b^m z^{m+1}`, the `p(0; z)` of the
/// inverse identity.
pub fn inverse_p0(b: u32, m: usize) -> IntPoly {
    let mut coeffs: Vec<BigInt> = (0..=m).map(|a| step(b, a)).collect();
    coeffs.push(-pow(b, m));
    IntPoly::new(coeffs)
}

/// The `m + 2` highest-degree coefficients of `∏_i (z^{μ_i} - z^{m+1})`.
///
/// Coefficient `j` of the returned polynomial is the coefficient of
/// `z^{(s-1)(m+1) + j}` in the product, for `j = 0 ..= m + 1`. It is computed
/// from the reciprocal product `∏_i (-1 + y^{m+1-μ_i}) mod y^{m+2}`.
pub fn top_window_product(mu: &[usize], m: usize) -> Result<IntPoly> {
    if let Some(&bad) = mu.iter().find(|&&x| x > m + 1) {
        return Err(Error::InvalidArgument(format!(
            "μ = {bad} exceeds m + 1 = {}",
            m + 1
        )));
    }
    let mut buf = vec![0i128; m + 2];
    reciprocal_window(mu.iter().map(|&x| m + 1 - x), &mut buf);
    Ok(IntPoly::new(buf.into_iter().rev().map(BigInt::from).collect()))
}

/// Writes the coefficients of `∏_d (-1 + y^d) mod y^{len}` into `buf`.
pub(crate) fn reciprocal_window<C: Coeff>(reversed: impl Iterator<Item = usize>, buf: &mut [C]) {
    for c in buf.iter_mut() {
        *c = C::zero();
    }
    if buf.is_empty() {
        return;
    }
    buf[0] = C::one();
    let mut top = 0usize;
    for d in reversed {
        if d == 0 {
            // factor (-1 + 1) kills the product
            for c in buf.iter_mut() {
                *c = C::zero();
            }
            return;
        }
        let new_top = (top + d).min(buf.len() - 1);
        for k in (0..=new_top).rev() {
            let mut v = if k <= top { -buf[k].clone() } else { C::zero() };
            if k >= d && k - d <= top {
                v += &buf[k - d];
            }
            buf[k] = v;
        }
        top = new_top;
    }
}

/// Writes `∏_ν (1 - Z^ν) mod Z^{len}` into `buf` and returns the degree
/// bound of the result. Every `ν` is at least 1; factors with `ν ≥ len` are
/// `1` modulo the truncation.
pub(crate) fn one_minus_product<C: Coeff>(nus: impl Iterator<Item = usize>, buf: &mut [C]) -> usize {
    for c in buf.iter_mut() {
        *c = C::zero();
    }
    if buf.is_empty() {
        return 0;
    }
    buf[0] = C::one();
    let mut top = 0usize;
    for nu in nus {
        debug_assert!(nu >= 1);
        if nu >= buf.len() {
            continue;
        }
        let new_top = (top + nu).min(buf.len() - 1);
        for k in (nu..=new_top).rev() {
            let lower = buf[k - nu].clone();
            buf[k] -= &lower;
        }
        top = new_top;
    }
    top
}

/// Schoolbook power, kept for cross-checking [`geometric_factor`].
#[cfg(test)]
pub(crate) fn naive_power(p: &IntPoly, s: usize, d: usize) -> IntPoly {
    (0..s).fold(IntPoly::one(), |acc, _| super::trunc_mul(&acc, p, d))
}
