//! The multivariate enumerator `GW(z_1, …, z_s)` counting dual elements by
//! their per-row weights, and the projection enumerators read off from it.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::WeightEnumerator;
use crate::error::{Error, Result};
use crate::net::DigitalNet;
use crate::poly::{geometric_series, MultiPoly};

/// Resource guards for [`overline_gw_with`].
#[derive(Clone, Debug)]
pub struct GwOptions {
    /// Total degree cap; `None` means `m`.
    pub cap: Option<usize>,
    pub max_dims: usize,
    pub max_terms: usize,
}

impl Default for GwOptions {
    fn default() -> Self {
        GwOptions {
            cap: None,
            max_dims: 12,
            max_terms: 1 << 22,
        }
    }
}

/// `b^m · ∑_{K ∈ P⊥} ∏_i z_i^{μ(k_i)}`, truncated at total degree `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwPolynomial {
    poly: MultiPoly,
    scale: BigInt,
    base: u32,
    m: usize,
    n: usize,
}

impl GwPolynomial {
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn cap(&self) -> usize {
        self.poly.cap()
    }

    pub fn s(&self) -> usize {
        self.poly.nvars()
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

pub fn overline_gw(net: &DigitalNet) -> Result<GwPolynomial> {
    overline_gw_with(net, &GwOptions::default())
}

/// Builds `GW` as `∏_i G(z_i) · ∑_X ∏_i (1 - (b z_i)^{ν_i})` with
/// `G(z) = (1 - z)/(1 - bz)`, every variable truncated at degree `n`.
pub fn overline_gw_with(net: &DigitalNet, opts: &GwOptions) -> Result<GwPolynomial> {
    let (b, s, n) = (net.base(), net.s(), net.n());
    if s > opts.max_dims {
        return Err(Error::ResourceBound(format!(
            "s = {s} exceeds the dimension cap {}",
            opts.max_dims
        )));
    }
    let cap = opts.cap.unwrap_or(net.m());
    let vcap = cap.min(n);

    // multiplicities of the per-point exponent vectors (0 = no factor)
    let profiles = net.fold_mu_star(
        0..net.num_points(),
        HashMap::<Vec<u32>, u64>::new,
        |acc, mu| {
            let key = mu.iter().map(|&x| if x as usize <= vcap { x } else { 0 }).collect();
            *acc.entry(key).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        },
    );
    let profiles: BTreeMap<Vec<u32>, u64> = profiles.into_iter().collect();

    let mut sum = MultiPoly::new(s, cap);
    let mut exps = vec![0u32; s];
    for (nu, &count) in &profiles {
        expand_subsets(nu, 0, 0, false, &mut exps, cap, &BigInt::from(count), &mut sum);
        if sum.len() > opts.max_terms {
            return Err(term_error(opts.max_terms));
        }
    }

    // Z_i = b z_i
    let bb = BigInt::from(b);
    let mut poly = MultiPoly::new(s, cap);
    for (e, c) in sum.terms() {
        let deg: usize = e.iter().map(|&x| x as usize).sum();
        poly.add_term(e.to_vec(), c * num_traits::pow(bb.clone(), deg));
    }
    let g = geometric_series(b, vcap);
    for i in 0..s {
        poly = poly.mul_univariate(i, &g, vcap, opts.max_terms)?;
    }
    Ok(GwPolynomial {
        poly,
        scale: BigInt::from(net.num_points()),
        base: b,
        m: net.m(),
        n,
    })
}

fn term_error(limit: usize) -> Error {
    Error::ResourceBound(format!("multivariate polynomial exceeds {limit} terms"))
}

/// Adds `count · (-1)^{|S|} ∏_{i ∈ S} Z_i^{ν_i}` for every subset `S` of the
/// rows with `ν_i > 0` and total degree within `cap`.
#[allow(clippy::too_many_arguments)]
fn expand_subsets(
    nu: &[u32],
    i: usize,
    deg: usize,
    odd: bool,
    exps: &mut [u32],
    cap: usize,
    count: &BigInt,
    out: &mut MultiPoly,
) {
    if i == nu.len() {
        out.add_term(exps.to_vec(), if odd { -count.clone() } else { count.clone() });
        return;
    }
    expand_subsets(nu, i + 1, deg, odd, exps, cap, count, out);
    let v = nu[i] as usize;
    if v > 0 && deg + v <= cap {
        exps[i] = nu[i];
        expand_subsets(nu, i + 1, deg + v, !odd, exps, cap, count, out);
        exps[i] = 0;
    }
}

fn subset_mask(s: usize, u: &[usize]) -> Result<Vec<bool>> {
    if u.is_empty() {
        return Err(Error::InvalidArgument("empty coordinate subset".into()));
    }
    let mut keep = vec![false; s];
    for &i in u {
        if i == 0 || i > s {
            return Err(Error::InvalidArgument(format!("coordinate {i} outside 1..={s}")));
        }
        keep[i - 1] = true;
    }
    Ok(keep)
}

/// The truncated enumerator of the projection `P_u` (1-based coordinates),
/// by substituting `z_i ← z` for `i ∈ u` and `z_i ← 0` otherwise.
pub fn projection_wep(gw: &GwPolynomial, u: &[usize]) -> Result<WeightEnumerator> {
    let keep = subset_mask(gw.s(), u)?;
    Ok(WeightEnumerator {
        scaled: gw.poly.specialize(&keep),
        scale: gw.scale.clone(),
        base: gw.base,
        m: gw.m,
        s: keep.iter().filter(|&&k| k).count(),
        n: gw.n,
        valid_to: gw.cap(),
        full: false,
    })
}

/// A projection with the largest t-value among those of bounded dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorstProjection {
    /// 1-based coordinates.
    pub u: Vec<usize>,
    pub t: usize,
    /// The degree `d'` at which the witness was found; `None` when no dual
    /// element of degree `≤ cap` is supported on `s'` coordinates.
    pub degree: Option<usize>,
}

/// The largest t-value over projections to at most `s'` coordinates.
///
/// `c_d` is the smallest support among monomials of total degree `d`, and
/// `d'` is the least `d ≥ 1` with `c_d ≤ s'`; the projection to the support
/// of a witness has `t' = m + 1 - d'`. If no degree up to the cap qualifies
/// and the cap is at least `m`, every such projection has `t' = 0`.
pub fn worst_projection(gw: &GwPolynomial, s_prime: usize) -> Result<WorstProjection> {
    let s = gw.s();
    if s_prime == 0 || s_prime > s {
        return Err(Error::InvalidArgument(format!("s' = {s_prime} outside 1..={s}")));
    }
    let m = gw.m;
    let mut best: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
    for (e, c) in gw.poly.terms() {
        if c.is_zero() {
            continue;
        }
        let d: usize = e.iter().map(|&x| x as usize).sum();
        if d == 0 {
            continue;
        }
        let support: Vec<usize> = (0..s).filter(|&i| e[i] > 0).map(|i| i + 1).collect();
        let entry = best.entry(d).or_insert_with(|| (usize::MAX, Vec::new()));
        if support.len() < entry.0 {
            *entry = (support.len(), support);
        }
    }
    if let Some((&d, (_, u))) = best.iter().find(|(_, (c, _))| *c <= s_prime) {
        return Ok(WorstProjection {
            u: u.clone(),
            t: (m + 1).saturating_sub(d),
            degree: Some(d),
        });
    }
    if gw.cap() >= m {
        return Ok(WorstProjection {
            u: (1..=s_prime).collect(),
            t: 0,
            degree: None,
        });
    }
    Err(Error::CapTooLow { cap: gw.cap() })
}
