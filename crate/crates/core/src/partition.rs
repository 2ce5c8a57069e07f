//! Integer partitions and the `l x m` box they live in.
//!
//! A [`Partition`] never stores trailing zeros, so two partitions are equal
//! exactly when their part vectors are equal. Textual form is `[4,2,1]`, with
//! `[]` for the empty partition.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("partition {partition} does not fit in a {rows}x{cols} box")]
    DoesNotFit {
        partition: Partition,
        rows: usize,
        cols: usize,
    },
    #[error("box dimensions must be positive, got {rows}x{cols}")]
    EmptyBox { rows: usize, cols: usize },
    #[error("cannot parse partition from {0:?}: expected e.g. [4,2,1]")]
    Syntax(String),
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Rejects increasing input.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Self::from_sorted(parts))
    }

    /// `parts` must already be weakly decreasing and free of zeros.
    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last() != Some(&0));
        let size = parts.iter().sum();
        Self { parts, size }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_sorted(alloc::vec![n])
        }
    }

    /// The two-row partition `(n - k, k)`. Requires `2k <= n`.
    pub fn two_row(n: usize, k: usize) -> Option<Self> {
        if 2 * k > n {
            return None;
        }
        Some(Self::from_sorted(
            [n - k, k].into_iter().filter(|&p| p > 0).collect(),
        ))
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i`, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Self::from_sorted(parts)
    }

    /// Diagram containment `self ⊆ outer`.
    pub fn is_contained_in(&self, outer: &Partition) -> bool {
        self.len() <= outer.len() && self.parts.iter().zip(&outer.parts).all(|(a, b)| a <= b)
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || PartitionError::Syntax(s.into());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(syntax)?
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| syntax()))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.contains(&0) {
            return Err(syntax());
        }
        Self::new(parts)
    }
}

/// The `rows x cols` rectangle, i.e. `l` rows of length `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxShape {
    rows: usize,
    cols: usize,
}

impl BoxShape {
    pub fn new(rows: usize, cols: usize) -> Result<Self, PartitionError> {
        if rows == 0 || cols == 0 {
            return Err(PartitionError::EmptyBox { rows, cols });
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
        }
    }
}

/// The rectangular partition `(m^l)`.
pub fn rectangle(shape: BoxShape) -> Partition {
    Partition::from_sorted(alloc::vec![shape.cols; shape.rows])
}

pub fn fits_in_box(p: &Partition, shape: BoxShape) -> bool {
    p.len() <= shape.rows && p.part(0) <= shape.cols
}

/// Complement of `p` inside the box, rotated by 180 degrees.
pub fn complement_in_box(p: &Partition, shape: BoxShape) -> Result<Partition, PartitionError> {
    if !fits_in_box(p, shape) {
        return Err(PartitionError::DoesNotFit {
            partition: p.clone(),
            rows: shape.rows,
            cols: shape.cols,
        });
    }
    let parts = (0..shape.rows)
        .map(|i| shape.cols - p.part(shape.rows - 1 - i))
        .filter(|&x| x > 0)
        .collect();
    Ok(Partition::from_sorted(parts))
}

/// Part-wise sum, padding the shorter partition with zeros.
pub fn add(p: &Partition, q: &Partition) -> Partition {
    let len = p.len().max(q.len());
    Partition::from_sorted((0..len).map(|i| p.part(i) + q.part(i)).collect())
}

/// All partitions of `k` inside the box, lexicographically decreasing.
pub fn enumerate_in_box(shape: BoxShape, k: usize) -> Vec<Partition> {
    enumerate_bounded(&alloc::vec![shape.cols; shape.rows], k)
}

/// All partitions of `k` whose diagram lies inside `outer`, lexicographically
/// decreasing.
pub fn enumerate_contained(outer: &Partition, k: usize) -> Vec<Partition> {
    enumerate_bounded(outer.parts(), k)
}

/// All partitions of `n`, lexicographically decreasing.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    enumerate_bounded(&alloc::vec![n; n], n)
}

/// Partitions `p` of `k` with `p[i] <= bounds[i]` and `len(p) <= bounds.len()`.
/// `bounds` must be weakly decreasing.
fn enumerate_bounded(bounds: &[usize], k: usize) -> Vec<Partition> {
    // suffix[i] = sum of bounds[i..]
    let mut suffix = alloc::vec![0; bounds.len() + 1];
    for i in (0..bounds.len()).rev() {
        suffix[i] = suffix[i + 1] + bounds[i];
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(bounds, &suffix, k, usize::MAX, &mut current, &mut out);
    out
}

fn fill(
    bounds: &[usize],
    suffix: &[usize],
    remaining: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    let row = current.len();
    if row >= bounds.len() || suffix[row] < remaining {
        return;
    }
    let rows_left = bounds.len() - row;
    let top = bounds[row].min(max_part).min(remaining);
    for part in (1..=top).rev() {
        // Remaining rows can hold at most `part` each.
        if part.saturating_mul(rows_left) < remaining {
            break;
        }
        current.push(part);
        fill(bounds, suffix, remaining - part, part, current, out);
        current.pop();
    }
}
