//! Net, point-set and direction-table inputs.

use std::fs;
use std::path::Path;

use netquality::sobol::{parse_direction_file, DirectionEntry, BRATLEY_FOX, JOE_KUO_6};
use netquality::{Digit, DigitMatrix, DigitalNet, GroupSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A net file: the group as `b` or `group`, and either `matrices` (`s`
/// matrices of `n` rows by `m` columns) or `generators` (`m` matrices of
/// `s` rows by `n` columns).
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct NetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<u32>>,
    pub s: usize,
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<u64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<u64>>>>,
}

/// A raw point multiset: each point an `s × n` digit matrix.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PointsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<u32>>,
    /// `log_b` of the number of points; inferred when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub points: Vec<Vec<Vec<u64>>>,
}

/// A validated point multiset.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub spec: GroupSpec,
    pub m: usize,
    pub s: usize,
    pub n: usize,
    pub points: Vec<DigitMatrix>,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn group_of(b: Option<u32>, group: Option<Vec<u32>>) -> Result<GroupSpec, CliError> {
    let spec = match (b, group) {
        (Some(b), None) => GroupSpec::cyclic(b)?,
        (None, Some(g)) => GroupSpec::new(g)?,
        (Some(_), Some(_)) => return Err(input("give either `b` or `group`, not both")),
        (None, None) => return Err(input("missing `b` or `group`")),
    };
    Ok(spec)
}

fn digit_matrix(spec: &GroupSpec, rows: &[Vec<u64>], what: &str) -> Result<DigitMatrix, CliError> {
    let digits: Vec<Vec<Digit>> = rows
        .iter()
        .map(|r| r.iter().map(|&d| spec.check_digit(d)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let refs: Vec<&[Digit]> = digits.iter().map(Vec::as_slice).collect();
    DigitMatrix::from_rows(&refs).map_err(|e| input(format!("{what}: {e}")))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

impl NetFile {
    pub fn load(path: &Path) -> Result<DigitalNet, CliError> {
        parse_json::<NetFile>(path)?.build()
    }

    pub fn build(self) -> Result<DigitalNet, CliError> {
        let spec = group_of(self.b, self.group)?;
        let (s, m, n) = (self.s, self.m, self.n);
        let net = match (self.matrices, self.generators) {
            (Some(mats), None) => {
                if mats.len() != s {
                    return Err(CliError::Core(netquality::Error::Shape(format!(
                        "{} matrices for s = {s}",
                        mats.len()
                    ))));
                }
                for (j, c) in mats.iter().enumerate() {
                    if c.len() != n || c.iter().any(|r| r.len() != m) {
                        return Err(CliError::Core(netquality::Error::Shape(format!(
                            "matrix {} is not {n}×{m}",
                            j + 1
                        ))));
                    }
                }
                DigitalNet::from_matrices(spec, &mats)?
            }
            (None, Some(gens)) => {
                if gens.len() != m {
                    return Err(CliError::Core(netquality::Error::Shape(format!(
                        "{} generators for m = {m}",
                        gens.len()
                    ))));
                }
                let gens = gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| digit_matrix(&spec, g, &format!("generator {}", i + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                DigitalNet::from_generators(spec, s, n, gens)?
            }
            (Some(_), Some(_)) => return Err(input("give either `matrices` or `generators`, not both")),
            (None, None) => return Err(input("missing `matrices` or `generators`")),
        };
        if (net.s(), net.m(), net.n()) != (s, m, n) {
            return Err(CliError::Core(netquality::Error::Shape(format!(
                "declared (s, m, n) = ({s}, {m}, {n}) but data has ({}, {}, {})",
                net.s(),
                net.m(),
                net.n()
            ))));
        }
        Ok(net)
    }

    /// The matrix form of a net over `Z_b`.
    pub fn from_matrices(b: u32, matrices: Vec<Vec<Vec<u64>>>) -> Self {
        let s = matrices.len();
        let n = matrices.first().map_or(0, Vec::len);
        let m = matrices.first().and_then(|c| c.first()).map_or(0, Vec::len);
        NetFile {
            b: Some(b),
            s,
            m,
            n,
            matrices: Some(matrices),
            ..Default::default()
        }
    }
}

impl PointsFile {
    pub fn load(path: &Path) -> Result<PointSet, CliError> {
        parse_json::<PointsFile>(path)?.build()
    }

    pub fn build(self) -> Result<PointSet, CliError> {
        let spec = group_of(self.b, self.group)?;
        let b = spec.order() as u64;
        if self.points.is_empty() {
            return Err(input("empty point list"));
        }
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| digit_matrix(&spec, p, &format!("point {}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let (s, n) = points[0].shape();
        if s == 0 {
            return Err(input("points have no coordinates"));
        }
        if let Some(i) = points.iter().position(|p| p.shape() != (s, n)) {
            return Err(CliError::Core(netquality::Error::Shape(format!(
                "point {} has shape {:?}, expected ({s}, {n})",
                i + 1,
                points[i].shape()
            ))));
        }
        let count = points.len() as u64;
        let m = match self.m {
            Some(m) => m,
            None => (0..64).find(|&m| b.checked_pow(m) == Some(count)).map(|m| m as usize).ok_or_else(|| {
                input(format!("{count} points is not a power of {b}"))
            })?,
        };
        if b.checked_pow(m as u32) != Some(count) {
            return Err(input(format!("{count} points given, expected {b}^{m}")));
        }
        Ok(PointSet { spec, m, s, n, points })
    }
}

/// A direction table by builtin name or path.
pub fn direction_table(name: &str) -> Result<(String, Vec<DirectionEntry>), CliError> {
    let (label, text) = match name {
        "joe-kuo" | "joe-kuo-6" => ("joe-kuo-6".to_string(), JOE_KUO_6.to_string()),
        "bratley-fox" => ("bratley-fox".to_string(), BRATLEY_FOX.to_string()),
        path => (path.to_string(), read(Path::new(path))?),
    };
    Ok((label, parse_direction_file(&text)?))
}

/// An inclusive range `a..b` (also `a..=b`) or a single value `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InclusiveRange {
    pub lo: usize,
    pub hi: usize,
}

impl InclusiveRange {
    pub fn single(v: usize) -> Self {
        InclusiveRange { lo: v, hi: v }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    pub fn as_single(&self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

impl std::str::FromStr for InclusiveRange {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let r = match text.split_once("..") {
            Some((a, b)) => InclusiveRange {
                lo: num(a)?,
                hi: num(b.strip_prefix('=').unwrap_or(b))?,
            },
            None => InclusiveRange::single(num(text)?),
        };
        if r.lo > r.hi {
            return Err(format!("empty range {text}"));
        }
        Ok(r)
    }
}
