//! Exact integer polynomials.
//!
//! [`IntPoly`] is a dense univariate polynomial with arbitrary-precision
//! coefficients and an optional truncation degree. [`MultiPoly`] is a sparse
//! multivariate polynomial with a total-degree cap. The polynomial families
//! used by the weight-enumerator identities live in [`families`].

pub mod families;
mod multi;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use families::{
    geometric_factor, geometric_series, inverse_p0, p_poly, p_poly_closed, top_window_product,
};
pub use multi::MultiPoly;

/// Dense univariate polynomial over the integers; `coeffs[a]` is the
/// coefficient of `z^a`.
///
/// Trailing zero coefficients are never stored. When `cap` is set, all
/// coefficients above `cap` are dropped by every operation.
#[derive(Clone, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
    cap: Option<usize>,
}

impl PartialEq for IntPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for IntPoly {}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")?;
        if let Some(cap) = self.cap {
            write!(f, " mod z^{}", cap + 1)?;
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs, cap: None };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// `c · z^a`.
    pub fn monomial(c: BigInt, a: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); a + 1];
        coeffs[a] = c;
        Self::new(coeffs)
    }

    /// Sets the truncation degree and drops everything above it.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self.normalize();
        self
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    fn normalize(&mut self) {
        if let Some(cap) = self.cap {
            self.coeffs.truncate(cap + 1);
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `z^a` (zero beyond the stored range).
    pub fn coeff(&self, a: usize) -> BigInt {
        self.coeffs.get(a).cloned().unwrap_or_default()
    }

    /// Highest index with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops all terms of degree above `d`.
    pub fn truncate(&self, d: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(d + 1);
        let mut p = IntPoly {
            coeffs,
            cap: self.cap,
        };
        p.normalize();
        p
    }

    fn product_degree(&self, other: &Self) -> usize {
        (self.coeffs.len() + other.coeffs.len()).saturating_sub(2)
    }

    fn combined_cap(&self, other: &Self) -> Option<usize> {
        match (self.cap, other.cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut p = IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            cap: self.cap,
        };
        p.normalize();
        p
    }

    /// `p(c·z)`: the coefficient of `z^a` is multiplied by `c^a`.
    pub fn substitute_scaled(&self, c: &BigInt) -> Self {
        let mut pow = BigInt::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x * &pow);
            pow *= c;
        }
        let mut p = IntPoly {
            coeffs,
            cap: self.cap,
        };
        p.normalize();
        p
    }

    /// `z^k · p`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        let mut p = IntPoly {
            coeffs,
            cap: self.cap,
        };
        p.normalize();
        p
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    /// `p^k mod z^{d+1}`.
    pub fn pow_trunc(&self, k: usize, d: usize) -> Self {
        let mut result = IntPoly::one();
        let mut base = self.truncate(d);
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = trunc_mul(&result, &base, d);
            }
            k >>= 1;
            if k > 0 {
                base = trunc_mul(&base, &base, d);
            }
        }
        result
    }

    /// Exact division by `1 - c·z`.
    ///
    /// Fails with [`Error::Internal`] if the division leaves a remainder.
    pub fn div_one_minus(&self, c: &BigInt) -> Result<Self> {
        if self.coeffs.is_empty() || c.is_zero() {
            return Ok(self.clone());
        }
        // p = (1 - cz) q  ⇒  q_k = p_k + c q_{k-1}
        let mut q = Vec::with_capacity(self.coeffs.len());
        let mut prev = BigInt::zero();
        for x in &self.coeffs {
            let cur = x + c * &prev;
            q.push(cur.clone());
            prev = cur;
        }
        // the last q coefficient must vanish for exactness
        let last = q.pop().unwrap();
        if !last.is_zero() {
            return Err(Error::Internal(format!(
                "division by (1 - {c}z) is not exact"
            )));
        }
        let mut p = IntPoly {
            coeffs: q,
            cap: self.cap,
        };
        p.normalize();
        Ok(p)
    }

    /// Index of the first nonzero coefficient in `lo..=hi`.
    pub fn first_nonzero_in(&self, lo: usize, hi: usize) -> Option<usize> {
        (lo..=hi).find(|&a| self.coeffs.get(a).is_some_and(|c| !c.is_zero()))
    }

    pub fn max_abs_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.abs().bits()).max().unwrap_or(0)
    }
}

/// Exact coefficients of `p · q` up to degree `d`.
pub fn trunc_mul(p: &IntPoly, q: &IntPoly, d: usize) -> IntPoly {
    let pn = p.coeffs.len().min(d + 1);
    let qn = q.coeffs.len().min(d + 1);
    if pn == 0 || qn == 0 {
        return IntPoly::zero();
    }
    let len = (pn + qn - 1).min(d + 1);
    let mut out = vec![BigInt::zero(); len];
    for (i, a) in p.coeffs[..pn].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, c) in q.coeffs[..qn.min(len - i)].iter().enumerate() {
            out[i + j] += a * c;
        }
    }
    let mut r = IntPoly {
        coeffs: out,
        cap: p.combined_cap(q),
    };
    r.normalize();
    r
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|a| match (self.coeffs.get(a), rhs.coeffs.get(a)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        let mut p = IntPoly {
            coeffs,
            cap: self.combined_cap(rhs),
        };
        p.normalize();
        p
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            cap: self.cap,
        }
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let d = match self.combined_cap(rhs) {
            Some(cap) => cap,
            None => self.product_degree(rhs),
        };
        trunc_mul(self, rhs, d)
    }
}
