//! Sobol' direction numbers and the binary generating matrices built from
//! them.
//!
//! Direction files use the common text layout: a header line, then one line
//! `d s a m_1 … m_s` per dimension `d ≥ 2`, where `s` is the degree of the
//! primitive polynomial, `a` encodes its middle coefficients (most
//! significant bit first) and `m_i` are the initial direction integers.
//! Dimension 1 is the identity matrix and is not listed.

use crate::error::{Error, Result};

/// The first 256 dimensions of the Joe–Kuo `new-joe-kuo-6.21201` table.
pub const JOE_KUO_6: &str = include_str!("../data/new-joe-kuo-6.256.txt");

/// The 40-dimensional Bratley–Fox table, in the same layout.
pub const BRATLEY_FOX: &str = include_str!("../data/bratley-fox-40.txt");

/// Largest supported number of digits per coordinate.
pub const MAX_DIGITS: usize = 64;

/// One dimension of a direction-number table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionEntry {
    pub d: usize,
    pub degree: usize,
    pub a: u64,
    pub m: Vec<u64>,
}

impl DirectionEntry {
    /// The implicit first dimension.
    pub fn first() -> Self {
        DirectionEntry {
            d: 1,
            degree: 0,
            a: 0,
            m: Vec::new(),
        }
    }

    fn validate(&self, line: usize) -> Result<()> {
        let err = |msg: String| Err(Error::Parse { line, msg });
        if self.degree == 0 {
            return err("polynomial degree must be at least 1".into());
        }
        if self.degree > MAX_DIGITS {
            return err(format!("polynomial degree {} is too large", self.degree));
        }
        if self.m.len() != self.degree {
            return err(format!(
                "expected {} direction integers, found {}",
                self.degree,
                self.m.len()
            ));
        }
        if self.degree > 1 && self.a >> (self.degree - 1) != 0 {
            return err(format!("a = {} has more than {} bits", self.a, self.degree - 1));
        }
        for (i, &mi) in self.m.iter().enumerate() {
            if mi % 2 == 0 {
                return err(format!("m_{} = {mi} is even", i + 1));
            }
            if (mi as u128) >= 1u128 << (i + 1) {
                return err(format!("m_{} = {mi} is not below 2^{}", i + 1, i + 1));
            }
        }
        Ok(())
    }
}

/// Parses a direction-number table. The result starts with the implicit
/// first dimension; listed dimensions must be consecutive from 2.
pub fn parse_direction_file(text: &str) -> Result<Vec<DirectionEntry>> {
    let mut entries = vec![DirectionEntry::first()];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields[0].parse::<u64>().is_err() {
            if line == 1 {
                continue; // header
            }
            return Err(Error::Parse {
                line,
                msg: format!("unexpected token {:?}", fields[0]),
            });
        }
        let nums = fields
            .iter()
            .map(|f| f.parse::<u64>())
            .collect::<std::result::Result<Vec<u64>, _>>()
            .map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        if nums.len() < 3 {
            return Err(Error::Parse {
                line,
                msg: "expected `d s a m_1 … m_s`".into(),
            });
        }
        let entry = DirectionEntry {
            d: nums[0] as usize,
            degree: nums[1] as usize,
            a: nums[2],
            m: nums[3..].to_vec(),
        };
        if entry.d != entries.len() + 1 {
            return Err(Error::Parse {
                line,
                msg: format!("dimension {} out of sequence, expected {}", entry.d, entries.len() + 1),
            });
        }
        entry.validate(line)?;
        entries.push(entry);
    }
    Ok(entries)
}

/// Direction integers `m_1, …, m_count` (with `m_k < 2^k`) of one dimension.
pub fn direction_integers(entry: &DirectionEntry, count: usize) -> Vec<u128> {
    if entry.degree == 0 {
        return (1..=count).map(|_| 1).collect();
    }
    let deg = entry.degree;
    let mut m: Vec<u128> = entry.m.iter().take(count).map(|&x| x as u128).collect();
    for k in deg..count {
        // m_k = 2^deg m_{k-deg} ⊕ m_{k-deg} ⊕ ⨁_j 2^j a_j m_{k-j}
        let mut v = (m[k - deg] << deg) ^ m[k - deg];
        for j in 1..deg {
            if (entry.a >> (deg - 1 - j)) & 1 == 1 {
                v ^= m[k - j] << j;
            }
        }
        m.push(v);
    }
    m
}

/// The first `s` generating matrices with `m` digits, each `m × m` with
/// entries in `{0, 1}`. Column `k` holds the binary digits of `m_k / 2^k`,
/// most significant in row 1.
pub fn build_matrices(entries: &[DirectionEntry], s: usize, m: usize) -> Result<Vec<Vec<Vec<u64>>>> {
    if s > entries.len() {
        return Err(Error::InvalidArgument(format!(
            "{s} dimensions requested, table has {}",
            entries.len()
        )));
    }
    if m > MAX_DIGITS {
        return Err(Error::InvalidArgument(format!(
            "{m} digits requested, at most {MAX_DIGITS} supported"
        )));
    }
    Ok(entries[..s]
        .iter()
        .map(|e| {
            let mk = direction_integers(e, m);
            (1..=m)
                .map(|r| {
                    (1..=m)
                        .map(|k| if r <= k { ((mk[k - 1] >> (k - r)) & 1) as u64 } else { 0 })
                        .collect()
                })
                .collect()
        })
        .collect())
}
