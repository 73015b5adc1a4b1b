//! Finite abelian groups `G = Z_{q_1} × ⋯ × Z_{q_r}`, their character groups,
//! and the pairing between them.
//!
//! Character values are roots of unity of order dividing the exponent `e` of
//! the group, so every value is carried as an exponent `j` with value
//! `ζ_e^j`. Characters are indexed by group elements through the fixed
//! pairing
//!
//! ```text
//! ⟨k, x⟩ = ∑_i k_i · x_i · (e / q_i)  (mod e)
//! ```
//!
//! Digits in `{0, …, b-1}` correspond to group elements by a little-endian
//! mixed-radix decomposition in factor order, so digit `0` is the identity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::net::DigitMatrix;

/// A digit in `{0, …, b-1}`; equivalently a group element under the
/// mixed-radix identification.
pub type Digit = u16;

/// Largest supported group order (digits are stored as [`Digit`]).
pub const MAX_ORDER: u32 = 1 << 16;

/// Orders up to this bound get precomputed addition and pairing tables.
const TABLE_LIMIT: u32 = 256;

/// A finite abelian group given as a product of cyclic factors.
#[derive(Clone)]
pub struct GroupSpec {
    factors: Vec<u32>,
    order: u32,
    exponent: u32,
    tables: Option<Arc<Tables>>,
}

struct Tables {
    add: Vec<Digit>,
    pair: Vec<u32>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for GroupSpec {}

impl std::fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupSpec")
            .field("factors", &self.factors)
            .field("order", &self.order)
            .field("exponent", &self.exponent)
            .finish()
    }
}

/// An element of a [`GroupSpec`] as a residue tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    residues: Vec<u32>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl GroupSpec {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors".into()));
        }
        if let Some(q) = factors.iter().find(|&&q| q < 2) {
            return Err(Error::InvalidGroup(format!("cyclic order {q} < 2")));
        }
        let mut order: u64 = 1;
        for &q in &factors {
            order *= q as u64;
            if order > MAX_ORDER as u64 {
                return Err(Error::InvalidGroup(format!(
                    "group order exceeds {MAX_ORDER}"
                )));
            }
        }
        let exponent = factors.iter().fold(1u32, |acc, &q| acc.lcm(&q));
        let mut spec = GroupSpec {
            factors,
            order: order as u32,
            exponent,
            tables: None,
        };
        if spec.order <= TABLE_LIMIT {
            spec.tables = Some(Arc::new(spec.build_tables()));
        }
        Ok(spec)
    }

    /// The cyclic group `Z_b`.
    pub fn cyclic(b: u32) -> Result<Self> {
        Self::new(vec![b])
    }

    fn build_tables(&self) -> Tables {
        let b = self.order as usize;
        let mut add = Vec::with_capacity(b * b);
        let mut pair = Vec::with_capacity(b * b);
        for x in 0..b {
            for y in 0..b {
                add.push(self.add_digits_slow(x as Digit, y as Digit));
                pair.push(self.pair_digits_slow(x as Digit, y as Digit));
            }
        }
        Tables { add, pair }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    /// Group order `b = ∏ q_i`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Group exponent `e = lcm(q_i)`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.factors.len()],
        }
    }

    /// Builds an element, reducing each residue modulo its factor.
    pub fn element(&self, residues: &[u32]) -> Result<GroupElement> {
        self.check_arity(residues.len())?;
        Ok(GroupElement {
            residues: residues
                .iter()
                .zip(&self.factors)
                .map(|(&r, &q)| r % q)
                .collect(),
        })
    }

    fn check_arity(&self, got: usize) -> Result<()> {
        if got != self.factors.len() {
            return Err(Error::Arity {
                expected: self.factors.len(),
                got,
            });
        }
        Ok(())
    }

    /// Mixed-radix digit → element.
    pub fn decode(&self, digit: Digit) -> GroupElement {
        let mut rest = digit as u32;
        let residues = self
            .factors
            .iter()
            .map(|&q| {
                let r = rest % q;
                rest /= q;
                r
            })
            .collect();
        GroupElement { residues }
    }

    /// Element → mixed-radix digit.
    pub fn encode(&self, g: &GroupElement) -> Result<Digit> {
        self.check_arity(g.residues.len())?;
        let mut code = 0u32;
        for (&r, &q) in g.residues.iter().zip(&self.factors).rev() {
            if r >= q {
                return Err(Error::InvalidArgument(format!(
                    "residue {r} not reduced modulo {q}"
                )));
            }
            code = code * q + r;
        }
        Ok(code as Digit)
    }

    pub fn check_digit(&self, digit: u64) -> Result<Digit> {
        if digit >= self.order as u64 {
            return Err(Error::DigitRange {
                digit,
                base: self.order,
            });
        }
        Ok(digit as Digit)
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_arity(g.residues.len())?;
        self.check_arity(h.residues.len())?;
        Ok(GroupElement {
            residues: g
                .residues
                .iter()
                .zip(&h.residues)
                .zip(&self.factors)
                .map(|((&a, &c), &q)| (a + c) % q)
                .collect(),
        })
    }

    fn add_digits_slow(&self, x: Digit, y: Digit) -> Digit {
        let (mut x, mut y) = (x as u32, y as u32);
        let mut code = 0u32;
        let mut radix = 1u32;
        for &q in &self.factors {
            code += ((x % q + y % q) % q) * radix;
            x /= q;
            y /= q;
            radix *= q;
        }
        code as Digit
    }

    /// Group addition on digits.
    #[inline]
    pub fn add_digits(&self, x: Digit, y: Digit) -> Digit {
        if let Some(t) = &self.tables {
            return t.add[x as usize * self.order as usize + y as usize];
        }
        if self.factors.len() == 1 {
            let s = x as u32 + y as u32;
            return if s >= self.order {
                (s - self.order) as Digit
            } else {
                s as Digit
            };
        }
        self.add_digits_slow(x, y)
    }

    /// `k`-fold sum `x + ⋯ + x`.
    pub fn scale_digit(&self, k: u64, x: Digit) -> Digit {
        let mut rest = x as u32;
        let mut code = 0u32;
        let mut radix = 1u32;
        for &q in &self.factors {
            let r = rest % q;
            rest /= q;
            code += ((k % q as u64) as u32 * r % q) * radix;
            radix *= q;
        }
        code as Digit
    }

    /// Exponent `j` with `χ_k(x) = ζ_e^j`.
    pub fn pair_exponent(&self, k: &GroupElement, x: &GroupElement) -> Result<u32> {
        self.check_arity(k.residues.len())?;
        self.check_arity(x.residues.len())?;
        let e = self.exponent as u64;
        let j = k
            .residues
            .iter()
            .zip(&x.residues)
            .zip(&self.factors)
            .map(|((&ki, &xi), &q)| (ki as u64 * xi as u64 % q as u64) * (e / q as u64))
            .sum::<u64>()
            % e;
        Ok(j as u32)
    }

    fn pair_digits_slow(&self, k: Digit, x: Digit) -> u32 {
        let (mut k, mut x) = (k as u64, x as u64);
        let e = self.exponent as u64;
        let mut j = 0u64;
        for &q in &self.factors {
            let q = q as u64;
            j += (k % q) * (x % q) % q * (e / q);
            k /= q;
            x /= q;
        }
        (j % e) as u32
    }

    /// Pairing exponent on digits.
    #[inline]
    pub fn pair_digits(&self, k: Digit, x: Digit) -> u32 {
        match &self.tables {
            Some(t) => t.pair[k as usize * self.order as usize + x as usize],
            None => self.pair_digits_slow(k, x),
        }
    }

    /// Exponent of `K • X = ∏ χ_{k_ij}(x_ij)`.
    pub fn bullet_exponent(&self, k: &DigitMatrix, x: &DigitMatrix) -> Result<u32> {
        if k.shape() != x.shape() {
            return Err(Error::Shape(format!(
                "pairing {:?} with {:?}",
                k.shape(),
                x.shape()
            )));
        }
        let e = self.exponent as u64;
        let j = k
            .digits()
            .iter()
            .zip(x.digits())
            .map(|(&a, &c)| self.pair_digits(a, c) as u64)
            .sum::<u64>()
            % e;
        Ok(j as u32)
    }

    /// Iterates over all elements in digit order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |d| self.decode(d as Digit))
    }
}

/// Componentwise sum of two elements of `spec`.
pub fn group_add(g: &GroupElement, h: &GroupElement, spec: &GroupSpec) -> Result<GroupElement> {
    spec.add(g, h)
}

/// See [`GroupSpec::pair_exponent`].
pub fn pair_exponent(k: &GroupElement, x: &GroupElement, spec: &GroupSpec) -> Result<u32> {
    spec.pair_exponent(k, x)
}

/// See [`GroupSpec::bullet_exponent`].
pub fn bullet_exponent(k: &DigitMatrix, x: &DigitMatrix, spec: &GroupSpec) -> Result<u32> {
    spec.bullet_exponent(k, x)
}

/// Counts of summands `ζ_e^j`, indexed by `j mod e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentTally {
    counts: Vec<u64>,
}

impl ExponentTally {
    pub fn new(e: u32) -> Self {
        ExponentTally {
            counts: vec![0; e.max(1) as usize],
        }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        ExponentTally { counts }
    }

    pub fn record(&mut self, j: u32) {
        let e = self.counts.len();
        self.counts[j as usize % e] += 1;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// The `e`-th cyclotomic polynomial, coefficients in ascending degree.
pub fn cyclotomic_polynomial(e: u32) -> Vec<BigInt> {
    assert!(e >= 1);
    // Φ_e = (Y^e - 1) / ∏_{d | e, d < e} Φ_d
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = -BigInt::one();
    num[e as usize] = BigInt::one();
    for d in 1..e {
        if e.is_multiple_of(d) {
            let (q, r) = div_rem_monic(&num, &cyclotomic_polynomial(d));
            debug_assert!(r.iter().all(Zero::is_zero));
            num = q;
        }
    }
    num
}

/// Quotient and remainder of `num` by a monic `den`.
fn div_rem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    if num.len() <= dd {
        return (vec![BigInt::zero()], num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate().take(dd) {
            rem[i - dd + j] -= &c * dj;
        }
        quot[i - dd] = c;
    }
    rem.truncate(dd);
    (quot, rem)
}

/// Reduces `∑ counts[j] Y^j` modulo `Y^e - 1` and then modulo `Φ_e(Y)`.
///
/// The result is the canonical representative of the tallied sum in
/// `Z[ζ_e]` with respect to the basis `1, ζ_e, …, ζ_e^{φ(e)-1}`.
pub fn cyclotomic_remainder(tally: &ExponentTally, e: u32) -> Vec<BigInt> {
    let e = e.max(1) as usize;
    let mut folded = vec![BigInt::zero(); e];
    for (j, &c) in tally.counts().iter().enumerate() {
        folded[j % e] += c;
    }
    div_rem_monic(&folded, &cyclotomic_polynomial(e as u32)).1
}

/// Exactly decides whether `∑_j counts[j] · ζ_e^j = 0`.
pub fn char_sum_is_zero(tally: &ExponentTally, e: u32) -> bool {
    cyclotomic_remainder(tally, e).iter().all(Zero::is_zero)
}

/// The tallied sum as a rational integer, if it is one.
pub fn char_sum_integer(tally: &ExponentTally, e: u32) -> Option<BigInt> {
    let rem = cyclotomic_remainder(tally, e);
    if rem.iter().skip(1).all(Zero::is_zero) {
        Some(rem.into_iter().next().unwrap_or_default())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(q: &[u32]) -> GroupSpec {
        GroupSpec::new(q.to_vec()).unwrap()
    }

    #[test]
    fn spec_order_and_exponent() {
        let g = z(&[2, 3]);
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        let g = z(&[2, 2, 4]);
        assert_eq!(g.order(), 16);
        assert_eq!(g.exponent(), 4);
        assert!(GroupSpec::new(vec![1]).is_err());
        assert!(GroupSpec::new(vec![]).is_err());
        assert!(GroupSpec::new(vec![256, 257]).is_err());
    }

    #[test]
    fn group_add_examples() {
        let g = z(&[2, 3]);
        let a = g.element(&[1, 2]).unwrap();
        assert_eq!(group_add(&a, &a, &g).unwrap().residues(), &[0, 1]);
        assert_eq!(group_add(&a, &g.zero(), &g).unwrap(), a);
        let g5 = z(&[5]);
        let s = group_add(&g5.element(&[3]).unwrap(), &g5.element(&[4]).unwrap(), &g5).unwrap();
        assert_eq!(s.residues(), &[2]);
        assert!(matches!(
            group_add(&a, &g5.element(&[1]).unwrap(), &g),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn pair_exponent_examples() {
        let g2 = z(&[2]);
        let one = g2.element(&[1]).unwrap();
        assert_eq!(pair_exponent(&g2.zero(), &one, &g2).unwrap(), 0);
        assert_eq!(pair_exponent(&one, &one, &g2).unwrap(), 1);
        let g = z(&[2, 3]);
        let k = g.element(&[1, 1]).unwrap();
        let x = g.element(&[1, 2]).unwrap();
        assert_eq!(pair_exponent(&k, &x, &g).unwrap(), 1);
    }

    #[test]
    fn bullet_exponent_examples() {
        let g = z(&[2]);
        let m = |rows: &[&[Digit]]| DigitMatrix::from_rows(rows).unwrap();
        let x = m(&[&[1], &[1]]);
        assert_eq!(bullet_exponent(&m(&[&[0], &[0]]), &x, &g).unwrap(), 0);
        assert_eq!(bullet_exponent(&m(&[&[1], &[1]]), &x, &g).unwrap(), 0);
        assert_eq!(bullet_exponent(&m(&[&[1], &[0]]), &x, &g).unwrap(), 1);
        assert!(bullet_exponent(&m(&[&[1, 0]]), &x, &g).is_err());
    }

    #[test]
    fn digit_codec_is_mixed_radix() {
        let g = z(&[2, 3]);
        assert_eq!(g.decode(0), g.zero());
        assert_eq!(g.decode(5).residues(), &[1, 2]);
        for d in 0..6 {
            assert_eq!(g.encode(&g.decode(d)).unwrap(), d);
        }
    }

    #[test]
    fn digit_ops_agree_with_residue_ops() {
        for spec in [z(&[6]), z(&[2, 3]), z(&[2, 2, 2]), z(&[4, 2]), z(&[300])] {
            let b = spec.order().min(40);
            for x in 0..b as Digit {
                for y in 0..b as Digit {
                    let (gx, gy) = (spec.decode(x), spec.decode(y));
                    let sum = spec.add(&gx, &gy).unwrap();
                    assert_eq!(spec.add_digits(x, y), spec.encode(&sum).unwrap());
                    assert_eq!(spec.pair_digits(x, y), spec.pair_exponent(&gx, &gy).unwrap());
                }
                let mut acc = 0;
                for k in 0..7u64 {
                    assert_eq!(spec.scale_digit(k, x), acc);
                    acc = spec.add_digits(acc, x);
                }
            }
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        let to_i = |v: Vec<BigInt>| v.into_iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(to_i(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn char_sum_examples() {
        assert!(char_sum_is_zero(&ExponentTally::from_counts(vec![3; 5]), 5));
        assert!(!char_sum_is_zero(&ExponentTally::from_counts(vec![1, 0, 0, 0]), 4));
        assert!(char_sum_is_zero(&ExponentTally::from_counts(vec![1, 0, 1, 0]), 4));
        // 1 + ζ_6^2 + ζ_6^4 = 0, but 1 + ζ_6^3 = 0 too
        assert!(char_sum_is_zero(&ExponentTally::from_counts(vec![1, 0, 1, 0, 1, 0]), 6));
        assert!(!char_sum_is_zero(&ExponentTally::from_counts(vec![1, 1, 0, 0, 0, 0]), 6));
        // 2 + ζ_4 + ζ_4^3 = 2
        let t = ExponentTally::from_counts(vec![2, 1, 0, 1]);
        assert_eq!(char_sum_integer(&t, 4), Some(BigInt::from(2)));
    }

    #[test]
    fn tally_records_mod_e() {
        let mut t = ExponentTally::new(3);
        for j in 0..10 {
            t.record(j);
        }
        assert_eq!(t.counts(), &[4, 3, 3]);
        assert_eq!(t.total(), 10);
    }
}
