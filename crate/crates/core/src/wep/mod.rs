//! Weight enumerators of the dual net via the MacWilliams-type identity.
//!
//! Every point contributes `∏_i p(μ*(x_i); z)`, and the average over the
//! net is the weight enumerator `∑_a N_a z^a` of `P⊥`. Since
//! `p(h; z) = (1 - z)(1 - (bz)^h)/(1 - bz)` for `h > 0`, the per-point work
//! reduces to products `∏ (1 - Z^{ν_i})` with small integer coefficients;
//! the common factors are applied once at the end.
//!
//! Results are kept scaled by the number of points and are never divided:
//! every zero test runs on exact integers.

mod gw;

use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeff::{add_into, to_big, Coeff};
use crate::error::{Error, Result};
use crate::net::{mu_star, DigitMatrix, DigitalNet};
use crate::poly::families::one_minus_product;
use crate::poly::{geometric_factor, p_poly, trunc_mul, IntPoly};

pub use gw::{overline_gw, overline_gw_with, projection_wep, worst_projection, GwOptions, GwPolynomial, WorstProjection};

/// The weight enumerator of `P⊥`, scaled by the number of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    scaled: IntPoly,
    scale: BigInt,
    base: u32,
    m: usize,
    s: usize,
    n: usize,
    valid_to: usize,
    full: bool,
}

impl WeightEnumerator {
    /// `#points · ∑_a N_a z^a`.
    pub fn scaled(&self) -> &IntPoly {
        &self.scaled
    }

    pub fn scaled_coeff(&self, a: usize) -> BigInt {
        self.scaled.coeff(a)
    }

    /// The number of points the sum ran over, `b^m` for nets.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// The scale as `b^m`.
    pub fn scale_label(&self) -> String {
        format!("{}^{}", self.base, self.m)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Digit depth the enumerator refers to.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest degree with an exact coefficient.
    pub fn valid_to(&self) -> usize {
        self.valid_to
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// `N_0, …, N_{valid_to}`, or `None` if some scaled coefficient is not
    /// divisible by the scale (possible only for general point sets).
    pub fn counts(&self) -> Option<Vec<BigInt>> {
        (0..=self.valid_to)
            .map(|a| {
                let (q, r) = self.scaled.coeff(a).div_rem(&self.scale);
                r.is_zero().then_some(q)
            })
            .collect()
    }

    /// `min{a ≥ 1 : N_a ≠ 0}`, defaulting to `ns + 1` for full enumerators
    /// and to `valid_to + 1` otherwise.
    pub fn min_weight(&self) -> usize {
        match self.scaled.first_nonzero_in(1, self.valid_to.max(1)) {
            Some(a) if a <= self.valid_to => a,
            _ if self.full => self.n * self.s + 1,
            _ => self.valid_to + 1,
        }
    }

    /// `∑_a N_a`, scaled.
    pub fn scaled_total(&self) -> BigInt {
        self.scaled.coeffs().iter().sum()
    }

    fn truncated_to(&self, ell: usize) -> WeightEnumerator {
        WeightEnumerator {
            scaled: self.scaled.truncate(ell),
            valid_to: ell.min(self.valid_to),
            full: false,
            ..self.clone()
        }
    }
}

/// `t = m + 1 - min{a ≥ 1 : N_a ≠ 0}`, clamped at 0.
pub fn t_from_wep(w: &WeightEnumerator, m: usize) -> Result<usize> {
    if w.m != m {
        return Err(Error::ConfigMismatch(format!(
            "enumerator computed for m = {}, asked for m = {m}",
            w.m
        )));
    }
    Ok((m + 1).saturating_sub(w.min_weight()))
}

/// Sums of `∏ (1 - Z^{ν_i}) mod Z^{len}` over points.
struct TruncSum<C> {
    acc: Vec<C>,
    buf: Vec<C>,
}

impl<C: Coeff> TruncSum<C> {
    fn new(len: usize) -> Self {
        TruncSum {
            acc: vec![C::zero(); len],
            buf: vec![C::zero(); len],
        }
    }

    fn add(&mut self, mu: &[u32]) {
        let nus = mu.iter().filter(|&&x| x > 0).map(|&x| x as usize);
        let top = one_minus_product(nus, &mut self.buf);
        add_into(&mut self.acc[..=top], &self.buf[..=top]);
    }

    fn merge(mut self, other: Self) -> Self {
        add_into(&mut self.acc, &other.acc);
        self
    }
}

fn net_trunc_sums<C: Coeff>(net: &DigitalNet, range: Range<u64>, len: usize) -> Vec<BigInt> {
    let sum = net.fold_mu_star(
        range,
        || TruncSum::<C>::new(len),
        |a, mu| a.add(mu),
        TruncSum::merge,
    );
    to_big(sum.acc)
}

fn point_trunc_sums<C: Coeff>(mus: &[Vec<u32>], len: usize) -> Vec<BigInt> {
    let sum = mus
        .par_chunks(4096)
        .map(|chunk| {
            let mut a = TruncSum::<C>::new(len);
            chunk.iter().for_each(|mu| a.add(mu));
            a
        })
        .reduce(|| TruncSum::new(len), TruncSum::merge);
    to_big(sum.acc)
}

/// Applies the common factor: `Q_ℓ(z) · S(bz) mod z^{ℓ+1}`.
fn finish_truncated(b: u32, s: usize, ell: usize, sums: Vec<BigInt>) -> IntPoly {
    let sum = IntPoly::new(sums).substitute_scaled(&BigInt::from(b));
    trunc_mul(&geometric_factor(b, ell, s), &sum, ell)
}

/// Running sums for truncated enumerators over growing index prefixes.
///
/// Accumulating `[0, a)` and then `[a, c)` gives the same state as
/// accumulating `[0, c)`, so a net with `m_max` digits can be evaluated at
/// every `m ≤ m_max` with one pass over its points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Accumulator {
    base: u32,
    s: usize,
    ell: usize,
    partial: Vec<BigInt>,
    points_seen: u64,
}

impl Accumulator {
    pub fn new(base: u32, s: usize, ell: usize) -> Self {
        Accumulator {
            base,
            s,
            ell,
            partial: vec![BigInt::zero(); ell + 1],
            points_seen: 0,
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn points_seen(&self) -> u64 {
        self.points_seen
    }

    /// Unscaled sum of the per-point products, in the variable `Z = bz`.
    pub fn partial(&self) -> IntPoly {
        IntPoly::new(self.partial.clone())
    }

    /// Adds the points of `net` with indices in `range`, which must start
    /// where the previous call ended.
    pub fn accumulate(&mut self, net: &DigitalNet, range: Range<u64>) -> Result<()> {
        if net.base() != self.base || net.s() != self.s {
            return Err(Error::ConfigMismatch(format!(
                "accumulator for (b, s) = ({}, {}) given a net with ({}, {})",
                self.base,
                self.s,
                net.base(),
                net.s()
            )));
        }
        if self.ell > net.n() {
            return Err(Error::ConfigMismatch(format!(
                "truncation degree {} exceeds digit depth {}",
                self.ell,
                net.n()
            )));
        }
        if range.start != self.points_seen {
            return Err(Error::ConfigMismatch(format!(
                "range starts at {}, expected {}",
                range.start, self.points_seen
            )));
        }
        if range.end > net.num_points() {
            return Err(Error::InvalidArgument(format!(
                "range end {} exceeds {} points",
                range.end,
                net.num_points()
            )));
        }
        if range.is_empty() {
            return Ok(());
        }
        let len = self.ell + 1;
        let sums = if self.s <= 62 {
            net_trunc_sums::<i128>(net, range.clone(), len)
        } else {
            net_trunc_sums::<BigInt>(net, range.clone(), len)
        };
        add_into(&mut self.partial, &sums);
        self.points_seen = range.end;
        Ok(())
    }

    /// The truncated enumerator of the first `b^m` points, which must be
    /// exactly the points accumulated so far.
    pub fn finalize(&self, m: usize) -> Result<WeightEnumerator> {
        if m > self.ell {
            return Err(Error::ConfigMismatch(format!(
                "m = {m} exceeds the truncation degree {}",
                self.ell
            )));
        }
        let expected = (self.base as u64).checked_pow(m as u32);
        if expected != Some(self.points_seen) {
            return Err(Error::ConfigMismatch(format!(
                "{} points accumulated, m = {m} needs {}^{m}",
                self.points_seen, self.base
            )));
        }
        let sums = self.partial[..=m].to_vec();
        Ok(WeightEnumerator {
            scaled: finish_truncated(self.base, self.s, m, sums),
            scale: BigInt::from(self.points_seen),
            base: self.base,
            m,
            s: self.s,
            n: m,
            valid_to: m,
            full: false,
        })
    }
}

/// The enumerator of `P⊥` up to degree `ℓ`, computed on the `Q_ℓ` path.
///
/// Coefficients `N_1, …, N_ℓ` are exact. Degrees above the digit depth are
/// served by [`full_wep`].
pub fn truncated_wep(net: &DigitalNet, ell: usize) -> Result<WeightEnumerator> {
    if ell == 0 {
        return Err(Error::InvalidArgument("truncation degree must be ≥ 1".into()));
    }
    if ell > net.n() {
        return Ok(full_wep(net)?.truncated_to(ell));
    }
    let mut acc = Accumulator::new(net.base(), net.s(), ell);
    acc.accumulate(net, 0..net.num_points())?;
    let b = net.base();
    Ok(WeightEnumerator {
        scaled: finish_truncated(b, net.s(), ell, acc.partial),
        scale: BigInt::from(net.num_points()),
        base: b,
        m: net.m(),
        s: net.s(),
        n: net.n(),
        valid_to: ell,
        full: false,
    })
}

/// Per-point products bucketed by the number `r` of zero rows:
/// `A_r(Z) = ∑ ∏_{x_i ≠ 0} (1 - Z^{μ*(x_i)})`.
struct BucketSum<C> {
    buckets: Vec<Vec<C>>,
    buf: Vec<C>,
}

impl<C: Coeff> BucketSum<C> {
    fn new(s: usize, n: usize) -> Self {
        BucketSum {
            buckets: vec![vec![C::zero(); s * n + 1]; s + 1],
            buf: vec![C::zero(); s * n + 1],
        }
    }

    fn add(&mut self, mu: &[u32]) {
        let r = mu.iter().filter(|&&x| x == 0).count();
        let nus = mu.iter().filter(|&&x| x > 0).map(|&x| x as usize);
        let top = one_minus_product(nus, &mut self.buf);
        add_into(&mut self.buckets[r][..=top], &self.buf[..=top]);
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, o) in self.buckets.iter_mut().zip(&other.buckets) {
            add_into(a, o);
        }
        self
    }
}

fn bucket_sums<C: Coeff>(net: &DigitalNet) -> Vec<Vec<BigInt>> {
    let (s, n) = (net.s(), net.n());
    net.fold_mu_star(
        0..net.num_points(),
        || BucketSum::<C>::new(s, n),
        |a, mu| a.add(mu),
        BucketSum::merge,
    )
    .buckets
    .into_iter()
    .map(to_big)
    .collect()
}

fn point_bucket_sums<C: Coeff>(mus: &[Vec<u32>], s: usize, n: usize) -> Vec<Vec<BigInt>> {
    mus.par_chunks(4096)
        .map(|chunk| {
            let mut a = BucketSum::<C>::new(s, n);
            chunk.iter().for_each(|mu| a.add(mu));
            a
        })
        .reduce(|| BucketSum::new(s, n), BucketSum::merge)
        .buckets
        .into_iter()
        .map(to_big)
        .collect()
}

/// Combines bucket `r` with `p(0; z)^r (1 - z)^{s-r}` after exact division
/// by `(1 - Z)^{s-r}` and substitution `Z = bz`.
fn combine_buckets(b: u32, s: usize, n: usize, buckets: Vec<Vec<BigInt>>) -> Result<IntPoly> {
    let bb = BigInt::from(b);
    let p0 = p_poly(0, n, b)?;
    let one_minus_z = IntPoly::from_i64(&[1, -1]);
    let mut total = IntPoly::zero();
    for (r, bucket) in buckets.into_iter().enumerate() {
        let mut a = IntPoly::new(bucket);
        if a.is_zero() {
            continue;
        }
        for _ in r..s {
            a = a.div_one_minus(&BigInt::one())?;
        }
        let mut term = a.substitute_scaled(&bb);
        for _ in 0..r {
            term = &term * &p0;
        }
        for _ in r..s {
            term = &term * &one_minus_z;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// The complete enumerator `N_0, …, N_{ns}` of `P⊥`.
///
/// Per-point products are bucketed by their number of zero rows `r`; each
/// bucket is combined once with `p(0; z)^r (1 - z)^{s-r}` after exact
/// division by `(1 - Z)^{s-r}`.
pub fn full_wep(net: &DigitalNet) -> Result<WeightEnumerator> {
    let (b, s, n) = (net.base(), net.s(), net.n());
    let buckets = if s <= 62 {
        bucket_sums::<i128>(net)
    } else {
        bucket_sums::<BigInt>(net)
    };
    Ok(WeightEnumerator {
        scaled: combine_buckets(b, s, n, buckets)?,
        scale: BigInt::from(net.num_points()),
        base: b,
        m: net.m(),
        s,
        n,
        valid_to: n * s,
        full: true,
    })
}

/// The truncated enumerator `b^m ∑_a Ň_a z^a` (`a ≤ m`) of an arbitrary
/// multiset of `b^m` points, all of the same shape.
pub fn general_wep(points: &[DigitMatrix], b: u32, m: usize) -> Result<WeightEnumerator> {
    if b < 2 {
        return Err(Error::InvalidArgument(format!("base {b} < 2")));
    }
    let expected = (b as u64).checked_pow(m as u32);
    if expected != Some(points.len() as u64) {
        return Err(Error::InvalidArgument(format!(
            "{} points given, expected {b}^{m}",
            points.len()
        )));
    }
    let (s, n) = points[0].shape();
    if let Some(p) = points.iter().find(|p| p.shape() != (s, n)) {
        return Err(Error::Shape(format!(
            "point of shape {:?} among points of shape {:?}",
            p.shape(),
            (s, n)
        )));
    }
    if let Some(&d) = points.iter().flat_map(|p| p.digits()).find(|&&d| d as u32 >= b) {
        return Err(Error::DigitRange {
            digit: d as u64,
            base: b,
        });
    }
    let mus: Vec<Vec<u32>> = points
        .iter()
        .map(|p| (0..s).map(|i| mu_star(p.row(i)) as u32).collect())
        .collect();
    let ell = m.max(1);
    // the Q_ℓ shortcut needs ℓ ≤ n; deeper windows come from the full sum
    let scaled = if ell > n {
        let buckets = if s <= 62 {
            point_bucket_sums::<i128>(&mus, s, n)
        } else {
            point_bucket_sums::<BigInt>(&mus, s, n)
        };
        combine_buckets(b, s, n, buckets)?.truncate(ell)
    } else {
        let sums = if s <= 62 {
            point_trunc_sums::<i128>(&mus, ell + 1)
        } else {
            point_trunc_sums::<BigInt>(&mus, ell + 1)
        };
        finish_truncated(b, s, ell, sums)
    };
    Ok(WeightEnumerator {
        scaled,
        scale: BigInt::from(points.len()),
        base: b,
        m,
        s,
        n,
        valid_to: ell,
        full: false,
    })
}

/// Lower bound `m + 1 - min{a ≥ 1 : Ň_a ≠ 0}` on the t-value of an arbitrary
/// multiset of `b^m` points. For digital nets it is the exact t-value.
pub fn general_lower_bound(points: &[DigitMatrix], b: u32, m: usize) -> Result<usize> {
    let w = general_wep(points, b, m)?;
    t_from_wep(&w, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::net_from_matrices;

    fn vdc() -> DigitalNet {
        net_from_matrices(2, &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]]).unwrap()
    }

    fn rep1() -> DigitalNet {
        net_from_matrices(2, &[vec![vec![1]], vec![vec![1]]]).unwrap()
    }

    fn ints(w: &WeightEnumerator) -> Vec<i64> {
        w.counts()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn repeated_identity() {
        let net = rep1();
        let w = truncated_wep(&net, 1).unwrap();
        assert_eq!(w.scaled(), &IntPoly::from_i64(&[2]));
        assert_eq!(t_from_wep(&w, 1).unwrap(), 0);
        let f = full_wep(&net).unwrap();
        assert_eq!(ints(&f), vec![1, 0, 1]);
        assert_eq!(f.min_weight(), 2);
    }

    #[test]
    fn van_der_corput() {
        let net = vdc();
        assert_eq!(ints(&full_wep(&net).unwrap()), vec![1, 0, 0, 2, 1]);
        let w = truncated_wep(&net, 2).unwrap();
        assert_eq!(ints(&w), vec![1, 0, 0]);
        assert_eq!(t_from_wep(&w, 2).unwrap(), 0);
        assert!(t_from_wep(&w, 3).is_err());
        // ℓ beyond the depth goes through the full enumerator
        let w4 = truncated_wep(&net, 4).unwrap();
        assert_eq!(ints(&w4), vec![1, 0, 0, 2, 1]);
    }

    #[test]
    fn identity_has_trivial_dual() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let net = net_from_matrices(2, &[id]).unwrap();
        assert_eq!(ints(&truncated_wep(&net, 3).unwrap()), vec![1, 0, 0, 0]);
        let f = full_wep(&net).unwrap();
        assert_eq!(ints(&f), vec![1, 0, 0, 0]);
        assert_eq!(f.min_weight(), 4);
    }

    #[test]
    fn accumulator_is_additive() {
        let id: Vec<Vec<u64>> = (0..4).map(|i| (0..4).map(|j| (i <= j) as u64).collect()).collect();
        let pas: Vec<Vec<u64>> = (0..4).map(|i| (0..4).map(|j| (j >= i && (j - i) % 2 == 0) as u64).collect()).collect();
        let net = net_from_matrices(2, &[id, pas]).unwrap();
        let mut a = Accumulator::new(2, 2, 4);
        a.accumulate(&net, 0..8).unwrap();
        a.accumulate(&net, 8..8).unwrap();
        a.accumulate(&net, 8..16).unwrap();
        let mut b = Accumulator::new(2, 2, 4);
        b.accumulate(&net, 0..16).unwrap();
        assert_eq!(a, b);
        assert!(b.accumulate(&net, 3..4).is_err());
        assert!(a.finalize(3).is_err());
        assert_eq!(a.finalize(4).unwrap(), truncated_wep(&net, 4).unwrap());
    }

    #[test]
    fn zero_point_multiset_bound() {
        for (b, m) in [(2u32, 3usize), (3, 2)] {
            let pts = vec![DigitMatrix::zeros(2, m); (b as usize).pow(m as u32)];
            assert_eq!(general_lower_bound(&pts, b, m).unwrap(), m);
        }
    }
}
