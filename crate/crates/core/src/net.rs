//! Digital nets as subgroups of `s × n` digit matrices.
//!
//! A net is given by `m` generator matrices `X_1, …, X_m`; point `l` with
//! base-`b` digits `l_0, l_1, …` (little-endian) is `X_l = ∑_r l_r · X_{r+1}`.
//! When the net comes from generating matrices `C_1, …, C_s`, row `j` of
//! `X_i` is the transpose of column `i` of `C_j`.

use std::ops::Range;

use rayon::prelude::*;

use crate::abelian::{Digit, GroupSpec};
use crate::error::{Error, Result};

/// An `rows × cols` matrix of digits, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitMatrix {
    rows: usize,
    cols: usize,
    digits: Vec<Digit>,
}

impl DigitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DigitMatrix {
            rows,
            cols,
            digits: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[&[Digit]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "ragged rows: expected length {cols}, got {}",
                bad.len()
            )));
        }
        Ok(DigitMatrix {
            rows: rows.len(),
            cols,
            digits: rows.concat(),
        })
    }

    pub fn from_flat(rows: usize, cols: usize, digits: Vec<Digit>) -> Result<Self> {
        if digits.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} digits for a {rows}×{cols} matrix",
                digits.len()
            )));
        }
        Ok(DigitMatrix { rows, cols, digits })
    }

    /// `(rows, cols)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn row(&self, i: usize) -> &[Digit] {
        &self.digits[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> Digit {
        self.digits[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn check(&self, spec: &GroupSpec) -> Result<()> {
        for &d in &self.digits {
            spec.check_digit(d as u64)?;
        }
        Ok(())
    }

    /// Entrywise group sum.
    pub fn add(&self, other: &DigitMatrix, spec: &GroupSpec) -> Result<DigitMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "adding {:?} to {:?}",
                other.shape(),
                self.shape()
            )));
        }
        let mut out = self.clone();
        out.add_assign(other, spec);
        Ok(out)
    }

    fn add_assign(&mut self, other: &DigitMatrix, spec: &GroupSpec) {
        for (a, &c) in self.digits.iter_mut().zip(&other.digits) {
            *a = spec.add_digits(*a, c);
        }
    }

    /// Keeps only the listed rows (0-based), in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> DigitMatrix {
        let mut digits = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            digits.extend_from_slice(self.row(r));
        }
        DigitMatrix {
            rows: rows.len(),
            cols: self.cols,
            digits,
        }
    }

    /// Keeps the first `cols` digits of every row.
    pub fn truncate_cols(&self, cols: usize) -> DigitMatrix {
        let cols = cols.min(self.cols);
        let mut digits = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            digits.extend_from_slice(&self.row(r)[..cols]);
        }
        DigitMatrix {
            rows: self.rows,
            cols,
            digits,
        }
    }
}

/// Index of the first nonzero digit (1-based), or 0 for the zero row.
pub fn mu_star(row: &[Digit]) -> usize {
    row.iter().position(|&d| d != 0).map_or(0, |j| j + 1)
}

/// Index of the last nonzero entry (1-based), or 0 for the zero row.
pub fn mu(row: &[Digit]) -> usize {
    row.iter().rposition(|&d| d != 0).map_or(0, |j| j + 1)
}

/// `μ(x · b^m)` for an `m`-digit row, i.e. the number of base-`b` digits of
/// the integer `x · b^m`, read off the digit scan.
pub fn mu_scaled(row: &[Digit], m: usize) -> usize {
    match mu_star(row) {
        0 => 0,
        j => m + 1 - j,
    }
}

/// Per-row statistics of one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuProfile {
    /// `ν*(x_i)`: `μ*(x_i)` when positive, `m + 1` otherwise.
    pub nu: Vec<usize>,
    /// `μ*(x_i)`.
    pub mu_star: Vec<usize>,
}

impl MuProfile {
    pub fn of(point: &DigitMatrix, m: usize) -> Self {
        let mu_star: Vec<usize> = (0..point.rows).map(|i| mu_star(point.row(i))).collect();
        let nu = mu_star
            .iter()
            .map(|&x| if x > 0 { x } else { m + 1 })
            .collect();
        MuProfile { nu, mu_star }
    }
}

/// How a net was specified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Matrices,
    Explicit,
}

/// A digital net over a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitalNet {
    spec: GroupSpec,
    s: usize,
    m: usize,
    n: usize,
    generators: Vec<DigitMatrix>,
    provenance: Provenance,
}

/// Builds a net over `Z_b` from `s` generating matrices of shape `n × m`.
pub fn net_from_matrices(b: u32, matrices: &[Vec<Vec<u64>>]) -> Result<DigitalNet> {
    DigitalNet::from_matrices(GroupSpec::cyclic(b)?, matrices)
}

impl DigitalNet {
    /// Builds a net from `s` generating matrices given as `n` rows of `m`
    /// digits each.
    pub fn from_matrices(spec: GroupSpec, matrices: &[Vec<Vec<u64>>]) -> Result<Self> {
        let s = matrices.len();
        if s == 0 {
            return Err(Error::Shape("no generating matrices".into()));
        }
        let n = matrices[0].len();
        let m = matrices[0].first().map_or(0, |r| r.len());
        for (j, c) in matrices.iter().enumerate() {
            if c.len() != n || c.iter().any(|r| r.len() != m) {
                return Err(Error::Shape(format!(
                    "matrix {} is not {n}×{m}",
                    j + 1
                )));
            }
        }
        if n == 0 && m > 0 {
            return Err(Error::Shape("matrices have no rows".into()));
        }
        let mut generators = Vec::with_capacity(m);
        for i in 0..m {
            let mut digits = Vec::with_capacity(s * n);
            for c in matrices {
                for row in c {
                    digits.push(spec.check_digit(row[i])?);
                }
            }
            generators.push(DigitMatrix {
                rows: s,
                cols: n,
                digits,
            });
        }
        Self::build(spec, s, m, n, generators, Provenance::Matrices)
    }

    /// Builds a net from explicit generators `X_1, …, X_m`, each `s × n`.
    pub fn from_generators(
        spec: GroupSpec,
        s: usize,
        n: usize,
        generators: Vec<DigitMatrix>,
    ) -> Result<Self> {
        let m = generators.len();
        for (i, g) in generators.iter().enumerate() {
            if g.shape() != (s, n) {
                return Err(Error::Shape(format!(
                    "generator {} has shape {:?}, expected ({s}, {n})",
                    i + 1,
                    g.shape()
                )));
            }
            g.check(&spec)?;
        }
        Self::build(spec, s, m, n, generators, Provenance::Explicit)
    }

    fn build(
        spec: GroupSpec,
        s: usize,
        m: usize,
        n: usize,
        generators: Vec<DigitMatrix>,
        provenance: Provenance,
    ) -> Result<Self> {
        if s == 0 {
            return Err(Error::Shape("dimension s must be at least 1".into()));
        }
        let fits = u32::try_from(m)
            .ok()
            .and_then(|m| (spec.order() as u64).checked_pow(m))
            .is_some_and(|p| p < 1 << 62);
        if !fits {
            return Err(Error::ResourceBound(format!(
                "b^m = {}^{m} points exceed the index range",
                spec.order()
            )));
        }
        Ok(DigitalNet {
            spec,
            s,
            m,
            n,
            generators,
            provenance,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn base(&self) -> u32 {
        self.spec.order()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[DigitMatrix] {
        &self.generators
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Number of enumerated points, `b^m`.
    pub fn num_points(&self) -> u64 {
        (self.base() as u64).pow(self.m as u32)
    }

    /// Point `X_l`.
    pub fn point(&self, l: u64) -> DigitMatrix {
        let b = self.base() as u64;
        let mut x = DigitMatrix::zeros(self.s, self.n);
        let mut rest = l;
        for g in &self.generators {
            let d = rest % b;
            rest /= b;
            if d != 0 {
                for (a, &c) in x.digits.iter_mut().zip(&g.digits) {
                    *a = self.spec.add_digits(*a, self.spec.scale_digit(d, c));
                }
            }
        }
        x
    }

    /// Points `X_l` for `l` in `range`, in index order.
    pub fn enumerate_points(&self, range: Range<u64>) -> PointIter<'_> {
        let end = range.end.min(self.num_points());
        PointIter {
            net: self,
            next: range.start,
            end,
            current: None,
            prefix: self.prefix_sums(),
        }
    }

    /// Every point, in index order.
    pub fn points(&self) -> PointIter<'_> {
        self.enumerate_points(0..self.num_points())
    }

    /// `S_r = X_1 + ⋯ + X_{r+1}`: moving from `l` to `l + 1` when the lowest
    /// `r` digits of `l` are `b - 1` adds `S_r`, since `-(b-1)X = X`.
    fn prefix_sums(&self) -> Vec<DigitMatrix> {
        let mut acc = DigitMatrix::zeros(self.s, self.n);
        self.generators
            .iter()
            .map(|g| {
                acc.add_assign(g, &self.spec);
                acc.clone()
            })
            .collect()
    }

    /// Restriction to the coordinates in `u` (1-based, in the given order).
    pub fn project(&self, u: &[usize]) -> Result<DigitalNet> {
        if u.is_empty() {
            return Err(Error::InvalidArgument("empty coordinate subset".into()));
        }
        if let Some(&bad) = u.iter().find(|&&i| i == 0 || i > self.s) {
            return Err(Error::InvalidArgument(format!(
                "coordinate {bad} outside 1..={}",
                self.s
            )));
        }
        let rows: Vec<usize> = u.iter().map(|&i| i - 1).collect();
        Ok(DigitalNet {
            spec: self.spec.clone(),
            s: u.len(),
            m: self.m,
            n: self.n,
            generators: self.generators.iter().map(|g| g.select_rows(&rows)).collect(),
            provenance: self.provenance,
        })
    }

    /// The net on the first `m'` generators with digit depth `n'`.
    pub fn restrict(&self, m: usize, n: usize) -> Result<DigitalNet> {
        if m > self.m || n > self.n {
            return Err(Error::InvalidArgument(format!(
                "cannot restrict (m, n) = ({}, {}) to ({m}, {n})",
                self.m, self.n
            )));
        }
        Ok(DigitalNet {
            spec: self.spec.clone(),
            s: self.s,
            m,
            n,
            generators: self.generators[..m]
                .iter()
                .map(|g| g.truncate_cols(n))
                .collect(),
            provenance: self.provenance,
        })
    }

    /// Parallel fold over the `μ*` vectors of the points in `range`.
    ///
    /// The range is split into chunks that do not depend on the thread
    /// count; the result is deterministic whenever `reduce` is associative.
    pub(crate) fn fold_mu_star<A, I, F, R>(&self, range: Range<u64>, init: I, fold: F, reduce: R) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(&mut A, &[u32]) + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        let range = range.start..range.end.min(self.num_points());
        if range.is_empty() {
            return init();
        }
        let len = range.end - range.start;
        let chunk = CHUNK.max(len.div_ceil(MAX_CHUNKS));
        let chunks: Vec<Range<u64>> = (0..len.div_ceil(chunk))
            .map(|c| {
                let lo = range.start + c * chunk;
                lo..(lo + chunk).min(range.end)
            })
            .collect();
        let parts: Vec<A> = chunks
            .into_par_iter()
            .map(|r| {
                let mut acc = init();
                self.walk_mu_star(r, |mu| fold(&mut acc, mu));
                acc
            })
            .collect();
        parts.into_iter().reduce(&reduce).unwrap_or_else(&init)
    }

    /// Sequential walk over the `μ*` vectors of the points in `range`.
    pub(crate) fn walk_mu_star(&self, range: Range<u64>, mut f: impl FnMut(&[u32])) {
        if range.is_empty() {
            return;
        }
        if self.base() == 2 && self.n <= 64 {
            self.walk_binary(range, &mut f);
        } else {
            self.walk_general(range, &mut f);
        }
    }

    fn walk_general(&self, range: Range<u64>, f: &mut impl FnMut(&[u32])) {
        let prefix = self.prefix_sums();
        let b = self.base() as u64;
        let mut x = self.point(range.start);
        let mut mu = vec![0u32; self.s];
        let mut l = range.start;
        loop {
            for (i, v) in mu.iter_mut().enumerate() {
                *v = mu_star(x.row(i)) as u32;
            }
            f(&mu);
            l += 1;
            if l >= range.end {
                break;
            }
            x.add_assign(&prefix[carry_index(l, b)], &self.spec);
        }
    }

    /// Binary nets: each row is packed with digit `j` at bit `n - j`, and
    /// group addition is XOR.
    fn walk_binary(&self, range: Range<u64>, f: &mut impl FnMut(&[u32])) {
        let n = self.n;
        let pack = |m: &DigitMatrix| -> Vec<u64> {
            (0..self.s)
                .map(|i| {
                    m.row(i)
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, &d)| acc | ((d as u64) << (n - 1 - j)))
                })
                .collect()
        };
        let prefix: Vec<Vec<u64>> = self.prefix_sums().iter().map(pack).collect();
        let mut x = pack(&self.point(range.start));
        let mut mu = vec![0u32; self.s];
        let mut l = range.start;
        loop {
            for (v, &r) in mu.iter_mut().zip(&x) {
                *v = if r == 0 {
                    0
                } else {
                    (n as u32) - (63 - r.leading_zeros())
                };
            }
            f(&mu);
            l += 1;
            if l >= range.end {
                break;
            }
            let p = &prefix[l.trailing_zeros() as usize];
            for (a, &c) in x.iter_mut().zip(p) {
                *a ^= c;
            }
        }
    }
}

const CHUNK: u64 = 1 << 12;
const MAX_CHUNKS: u64 = 1 << 10;

/// Number of trailing zero digits of `l` in base `b` (`l ≥ 1`).
fn carry_index(l: u64, b: u64) -> usize {
    if b == 2 {
        return l.trailing_zeros() as usize;
    }
    let mut r = 0;
    let mut l = l;
    while l.is_multiple_of(b) {
        l /= b;
        r += 1;
    }
    r
}

/// Iterator over `(l, X_l)`.
pub struct PointIter<'a> {
    net: &'a DigitalNet,
    next: u64,
    end: u64,
    current: Option<DigitMatrix>,
    prefix: Vec<DigitMatrix>,
}

impl Iterator for PointIter<'_> {
    type Item = (u64, DigitMatrix);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let l = self.next;
        let x = match self.current.take() {
            None => self.net.point(l),
            Some(mut x) => {
                let r = carry_index(l, self.net.base() as u64);
                x.add_assign(&self.prefix[r], &self.net.spec);
                x
            }
        };
        self.current = Some(x.clone());
        self.next += 1;
        Some((l, x))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = (self.end - self.next) as usize;
        (k, Some(k))
    }
}
