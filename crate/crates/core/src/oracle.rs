//! Brute-force ground truth: the dual group, its minimum NRT weight,
//! t-values by counting points in elementary intervals, and uniformity of
//! generalized `(T, M, s)`-nets.
//!
//! None of this shares code with the enumerator identities beyond the group
//! arithmetic and the net's point enumeration.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::abelian::{char_sum_integer, Digit, ExponentTally, GroupSpec};
use crate::error::{Error, Result};
use crate::net::{mu, DigitMatrix, DigitalNet};
use crate::poly::IntPoly;

/// Size limits for the brute-force searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBounds {
    /// Largest number of candidates or members the dual search may visit.
    pub max_duals: u64,
    /// Largest `#points × #compositions` for interval counting.
    pub max_point_compositions: u64,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_duals: 1 << 24,
            max_point_compositions: 1 << 20,
        }
    }
}

/// The dual net `P⊥` as a list of character-index matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSet {
    pub s: usize,
    pub n: usize,
    pub elements: Vec<DigitMatrix>,
    pub complete: bool,
}

fn checked_pow(b: u64, e: usize) -> Option<u64> {
    b.checked_pow(u32::try_from(e).ok()?)
}

/// All `K` with `K • X_i = 1` for every generator `X_i`.
///
/// Candidates for rows `1..s-1` are walked in odometer order with their
/// pairing exponents updated digit by digit, then joined against the last
/// row through a table keyed by its exponent vector.
pub fn dual_enumerate(net: &DigitalNet, bounds: &OracleBounds) -> Result<DualSet> {
    let spec = net.spec();
    let (s, n) = (net.s(), net.n());
    let b = spec.order() as u64;
    let e = spec.exponent();
    let gens = net.generators();
    let head_len = n * (s - 1);
    let too_big = |what: &str| {
        Error::ResourceBound(format!(
            "dual search over {what} exceeds {} candidates",
            bounds.max_duals
        ))
    };
    let head_count = checked_pow(b, head_len).ok_or_else(|| too_big("the leading rows"))?;
    let tail_count = checked_pow(b, n).ok_or_else(|| too_big("the last row"))?;
    if head_count > bounds.max_duals {
        return Err(too_big("the leading rows"));
    }
    if tail_count > bounds.max_duals {
        return Err(too_big("the last row"));
    }
    // the dual has at least b^{ns-m} members
    if let Some(size) = checked_pow(b, (n * s).saturating_sub(net.m())) {
        if size > bounds.max_duals {
            return Err(too_big("the members"));
        }
    }

    // last row: exponent vector → candidate rows
    let mut table: HashMap<Vec<u32>, Vec<Vec<Digit>>> = HashMap::new();
    let mut row = vec![0 as Digit; n];
    for _ in 0..tail_count {
        let key: Vec<u32> = gens
            .iter()
            .map(|g| {
                let x = g.row(s - 1);
                row.iter().zip(x).map(|(&k, &xd)| spec.pair_digits(k, xd)).sum::<u32>() % e
            })
            .collect();
        table.entry(key).or_default().push(row.clone());
        odometer(&mut row, b);
    }

    let mut elements = Vec::new();
    let mut head = vec![0 as Digit; head_len];
    let mut ex = vec![0u32; gens.len()];
    for step in 0..head_count {
        let want: Vec<u32> = ex.iter().map(|&x| (e - x) % e).collect();
        if let Some(rows) = table.get(&want) {
            for r in rows {
                let mut digits = head.clone();
                digits.extend_from_slice(r);
                elements.push(DigitMatrix::from_flat(s, n, digits)?);
            }
        }
        if step + 1 == head_count {
            break;
        }
        // advance the odometer, updating exponents for each changed digit
        for (p, digit) in head.iter_mut().enumerate() {
            let old = *digit;
            let new = if old as u64 + 1 == b { 0 } else { old + 1 };
            *digit = new;
            let (i, j) = (p / n, p % n);
            for (x, g) in ex.iter_mut().zip(gens) {
                let gd = g.get(i, j);
                *x = (*x + e - spec.pair_digits(old, gd) + spec.pair_digits(new, gd)) % e;
            }
            if new != 0 {
                break;
            }
        }
        if elements.len() as u64 > bounds.max_duals {
            return Err(too_big("the members"));
        }
    }
    Ok(DualSet {
        s,
        n,
        elements,
        complete: true,
    })
}

fn odometer(digits: &mut [Digit], b: u64) {
    for d in digits.iter_mut() {
        if (*d as u64) + 1 == b {
            *d = 0;
        } else {
            *d += 1;
            return;
        }
    }
}

/// NRT weight `μ(K) = ∑_i μ(k_i)`.
pub fn nrt_weight(k: &DigitMatrix) -> usize {
    let (s, _) = k.shape();
    (0..s).map(|i| mu(k.row(i))).sum()
}

/// Minimum NRT weight over nonzero members; `ns + 1` for the trivial dual.
pub fn min_nrt(dual: &DualSet) -> Result<usize> {
    if !dual.complete {
        return Err(Error::InvalidArgument("dual set is incomplete".into()));
    }
    Ok(dual
        .elements
        .iter()
        .filter(|k| !k.is_zero())
        .map(nrt_weight)
        .min()
        .unwrap_or(dual.n * dual.s + 1))
}

/// `∑_{K ∈ P⊥} z^{μ(K)}`.
pub fn dual_weight_enumerator(dual: &DualSet) -> IntPoly {
    let mut counts = vec![0u64; dual.n * dual.s + 1];
    for k in &dual.elements {
        counts[nrt_weight(k)] += 1;
    }
    IntPoly::new(counts.into_iter().map(BigInt::from).collect())
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.checked_mul(n - i)? / (i + 1);
    }
    Some(r)
}

/// Calls `f` on every `d ∈ N^s` with `∑ d = total`, lexicographically.
fn for_each_composition(total: usize, s: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(d: &mut Vec<usize>, left: usize, s: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if d.len() + 1 == s {
            d.push(left);
            let ok = f(d);
            d.pop();
            return ok;
        }
        for first in (0..=left).rev() {
            d.push(first);
            let ok = rec(d, left - first, s, f);
            d.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(&mut Vec::with_capacity(s), total, s, f)
}

/// Cell index of `x` in the elementary intervals with `d_i` digits in
/// coordinate `i`; digits beyond the stored depth are zero.
fn cell(x: &DigitMatrix, d: &[usize], b: u64) -> u64 {
    let mut key = 0u64;
    for (i, &di) in d.iter().enumerate() {
        let row = x.row(i);
        for j in 0..di {
            key = key * b + row.get(j).map_or(0, |&v| v as u64);
        }
    }
    key
}

fn check_shapes(points: &[DigitMatrix], s: usize, b: u32) -> Result<()> {
    for p in points {
        if p.shape().0 != s {
            return Err(Error::Shape(format!(
                "point with {} rows, expected {s}",
                p.shape().0
            )));
        }
        if let Some(&d) = p.digits().iter().find(|&&d| d as u32 >= b) {
            return Err(Error::DigitRange {
                digit: d as u64,
                base: b,
            });
        }
    }
    Ok(())
}

/// Whether every elementary interval with the digit split `d` holds
/// exactly `per_cell` points.
fn balanced(points: &[DigitMatrix], d: &[usize], b: u64, per_cell: u64) -> bool {
    let cells = checked_pow(b, d.iter().sum()).expect("cell count checked by caller");
    let mut counts = vec![0u64; cells as usize];
    for p in points {
        let c = &mut counts[cell(p, d, b) as usize];
        *c += 1;
        if *c > per_cell {
            return false;
        }
    }
    counts.iter().all(|&c| c == per_cell)
}

/// The smallest `t` such that every elementary interval of volume
/// `b^{t-m}` contains exactly `b^t` of the points.
pub fn t_by_intervals(
    points: &[DigitMatrix],
    b: u32,
    m: usize,
    s: usize,
    bounds: &OracleBounds,
) -> Result<usize> {
    let bb = b as u64;
    if checked_pow(bb, m) != Some(points.len() as u64) {
        return Err(Error::InvalidArgument(format!(
            "{} points given, expected {b}^{m}",
            points.len()
        )));
    }
    check_shapes(points, s, b)?;
    let work = binomial((m + s) as u64, s as u64)
        .and_then(|c| c.checked_mul(points.len() as u64))
        .filter(|&w| w <= bounds.max_point_compositions);
    if work.is_none() {
        return Err(Error::ResourceBound(format!(
            "interval counting for b^m = {} points, s = {s} exceeds {} point-compositions",
            points.len(),
            bounds.max_point_compositions
        )));
    }
    for t in 0..=m {
        let per_cell = bb.pow(t as u32);
        if for_each_composition(m - t, s, &mut |d| balanced(points, d, bb, per_cell)) {
            return Ok(t);
        }
    }
    unreachable!("t = m always holds")
}

/// [`t_by_intervals`] on the enumerated points of a net.
pub fn net_t_by_intervals(net: &DigitalNet, bounds: &OracleBounds) -> Result<usize> {
    let points: Vec<DigitMatrix> = net.points().map(|(_, x)| x).collect();
    t_by_intervals(&points, net.base(), net.m(), net.s(), bounds)
}

/// Whether `points` is a `(T, M, s)`-net in base `b`: `|points| = M` and
/// every split with `b^{∑d} · T ≤ M` puts `M / b^{∑d}` points in each cell.
pub fn is_tms_uniform(points: &[DigitMatrix], t_cap: u64, m_total: u64, b: u32) -> bool {
    if points.len() as u64 != m_total || b < 2 || t_cap == 0 {
        return false;
    }
    let Some(s) = points.first().map(|p| p.shape().0) else {
        return m_total == 0;
    };
    if check_shapes(points, s, b).is_err() {
        return false;
    }
    let bb = b as u64;
    let mut depth = 0usize;
    loop {
        let Some(cells) = checked_pow(bb, depth) else {
            return true;
        };
        match cells.checked_mul(t_cap) {
            Some(v) if v <= m_total => {}
            _ => return true,
        }
        if !m_total.is_multiple_of(cells) {
            return false;
        }
        let per_cell = m_total / cells;
        if !for_each_composition(depth, s, &mut |d| balanced(points, d, bb, per_cell)) {
            return false;
        }
        depth += 1;
    }
}

/// `#points · Ň_a` for `a = 0..=ns`, from the definition
/// `Ň_a = ∑_{μ(K) = a} (1/#P) ∑_X K • X`, summing characters exactly.
pub fn general_enumerator_bruteforce(
    points: &[DigitMatrix],
    spec: &GroupSpec,
    bounds: &OracleBounds,
) -> Result<IntPoly> {
    let Some(first) = points.first() else {
        return Ok(IntPoly::zero());
    };
    let (s, n) = first.shape();
    let b = spec.order() as u64;
    checked_pow(b, s * n)
        .and_then(|c| c.checked_mul(points.len() as u64))
        .filter(|&c| c <= bounds.max_duals)
        .ok_or_else(|| {
            Error::ResourceBound(format!(
                "character sum over b^(ns) · #points exceeds {}",
                bounds.max_duals
            ))
        })?;
    let e = spec.exponent();
    let mut tallies: Vec<ExponentTally> = (0..=s * n).map(|_| ExponentTally::new(e)).collect();
    let mut k = vec![0 as Digit; s * n];
    for _ in 0..b.pow((s * n) as u32) {
        let kk = DigitMatrix::from_flat(s, n, k.clone())?;
        let w = nrt_weight(&kk);
        for x in points {
            tallies[w].record(spec.bullet_exponent(&kk, x)?);
        }
        odometer(&mut k, b);
    }
    let coeffs = tallies
        .iter()
        .map(|t| {
            char_sum_integer(t, e)
                .ok_or_else(|| Error::Internal("weight class sum is not an integer".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::net_from_matrices;

    fn vdc() -> DigitalNet {
        net_from_matrices(2, &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]]).unwrap()
    }

    fn flat(d: &[Digit], s: usize) -> DigitMatrix {
        DigitMatrix::from_flat(s, d.len() / s, d.to_vec()).unwrap()
    }

    #[test]
    fn duals_of_small_nets() {
        let b = OracleBounds::default();
        let id = net_from_matrices(2, &[vec![vec![1, 0], vec![0, 1]]]).unwrap();
        let d = dual_enumerate(&id, &b).unwrap();
        assert_eq!(d.elements, vec![DigitMatrix::zeros(1, 2)]);
        assert_eq!(min_nrt(&d).unwrap(), 3);

        let rep = net_from_matrices(2, &[vec![vec![1]], vec![vec![1]]]).unwrap();
        let d = dual_enumerate(&rep, &b).unwrap();
        assert_eq!(d.elements, vec![flat(&[0, 0], 2), flat(&[1, 1], 2)]);
        assert_eq!(min_nrt(&d).unwrap(), 2);

        let d = dual_enumerate(&vdc(), &b).unwrap();
        let mut got: Vec<Vec<Digit>> = d.elements.iter().map(|k| k.digits().to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 0, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![1, 1, 1, 1]]);
        assert_eq!(min_nrt(&d).unwrap(), 3);
        assert_eq!(dual_weight_enumerator(&d), IntPoly::from_i64(&[1, 0, 0, 2, 1]));
    }

    #[test]
    fn interval_t_values() {
        let b = OracleBounds::default();
        assert_eq!(net_t_by_intervals(&vdc(), &b).unwrap(), 0);
        let rep = net_from_matrices(2, &[vec![vec![1]], vec![vec![1]]]).unwrap();
        assert_eq!(net_t_by_intervals(&rep, &b).unwrap(), 0);
        let zero = net_from_matrices(2, &[vec![vec![0, 0], vec![0, 0]], vec![vec![1, 0], vec![0, 1]]]).unwrap();
        assert_eq!(net_t_by_intervals(&zero, &b).unwrap(), 2);
        let tiny = OracleBounds { max_point_compositions: 4, ..b };
        assert!(net_t_by_intervals(&vdc(), &tiny).unwrap_err().is_resource());
    }

    #[test]
    fn tms_uniformity() {
        let pts = vec![flat(&[0], 1), flat(&[1], 1), flat(&[1], 1)];
        assert!(is_tms_uniform(&pts, 3, 3, 2));
        assert!(!is_tms_uniform(&pts, 1, 3, 2));
        assert!(!is_tms_uniform(&pts, 1, 4, 2));
        let net: Vec<DigitMatrix> = vdc().points().map(|(_, x)| x).collect();
        assert!(is_tms_uniform(&net, 1, 4, 2));
        let twice: Vec<DigitMatrix> = net.iter().chain(&net).cloned().collect();
        assert!(is_tms_uniform(&twice, 2, 8, 2));
        assert!(!is_tms_uniform(&twice, 1, 8, 2));
    }

    #[test]
    fn brute_general_enumerator_matches_dual_for_nets() {
        let net = vdc();
        let pts: Vec<DigitMatrix> = net.points().map(|(_, x)| x).collect();
        let g = general_enumerator_bruteforce(&pts, net.spec(), &OracleBounds::default()).unwrap();
        assert_eq!(g, IntPoly::from_i64(&[4, 0, 0, 8, 4]));
    }
}
