use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;
use crate::error::{Error, Result};

/// Sparse multivariate integer polynomial in `z_1, …, z_s` with a total
/// degree cap. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    cap: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn new(nvars: usize, cap: usize) -> Self {
        MultiPoly {
            nvars,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · z^exps`; terms above the cap are discarded.
    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() || total_degree(&exps) > self.cap {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Multiplies by a univariate polynomial in variable `var`, dropping
    /// terms whose degree in `var` exceeds `var_cap` or whose total degree
    /// exceeds the cap. Fails once more than `term_limit` terms are held.
    pub fn mul_univariate(
        &self,
        var: usize,
        poly: &IntPoly,
        var_cap: usize,
        term_limit: usize,
    ) -> Result<MultiPoly> {
        let mut out = MultiPoly::new(self.nvars, self.cap);
        for (exps, c) in &self.terms {
            let deg = total_degree(exps);
            for (k, pk) in poly.coeffs().iter().enumerate() {
                if pk.is_zero() {
                    continue;
                }
                if deg + k > self.cap || exps[var] as usize + k > var_cap {
                    break;
                }
                let mut e = exps.clone();
                e[var] += k as u32;
                out.add_term(e, c * pk);
            }
            if out.len() > term_limit {
                return Err(Error::ResourceBound(format!(
                    "multivariate polynomial exceeds {term_limit} terms"
                )));
            }
        }
        Ok(out)
    }

    /// Substitutes `z_i ← z` for `i` in `keep` and `z_i ← 0` otherwise.
    pub fn specialize(&self, keep: &[bool]) -> IntPoly {
        assert_eq!(keep.len(), self.nvars);
        let mut coeffs = vec![BigInt::zero(); self.cap + 1];
        for (exps, c) in &self.terms {
            if exps.iter().zip(keep).all(|(&e, &k)| k || e == 0) {
                coeffs[total_degree(exps)] += c;
            }
        }
        IntPoly::new(coeffs).with_cap(self.cap)
    }

    /// Terms of total degree `d`.
    pub fn homogeneous(&self, d: usize) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms()
            .filter(move |(e, _)| total_degree(e) == d)
    }

    pub fn scale_down_exact(&self, divisor: &BigInt) -> Option<MultiPoly> {
        let mut out = MultiPoly::new(self.nvars, self.cap);
        for (e, c) in &self.terms {
            if !(c % divisor).is_zero() {
                return None;
            }
            out.terms.insert(e.clone(), c / divisor);
        }
        Some(out)
    }
}

pub(crate) fn total_degree(exps: &[u32]) -> usize {
    exps.iter().map(|&e| e as usize).sum()
}
