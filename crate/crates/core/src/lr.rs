//! Littlewood-Richardson coefficients `c^λ_{αβ}`.
//!
//! The general route counts LR tableaux of skew shape `λ/α` with content
//! `β`: rows weakly increase, columns strictly increase, and the reverse
//! reading word (rows top to bottom, each read right to left) is a lattice
//! word. Cells are filled in that same reading order so the lattice
//! condition is checked one letter at a time.
//!
//! Inside a rectangle `(m^l)` the coefficient is 1 exactly for complementary
//! pairs, which [`lr_rectangle`] answers without enumeration.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::partition::{complement_in_box, fits_in_box, BoxShape, Partition};

/// Default guard on `|λ|` for tableau enumeration.
pub const DEFAULT_SIZE_BOUND: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LrError {
    #[error("instance too large: |outer| = {size} exceeds bound {bound}")]
    TooLarge { size: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LrQuery {
    pub outer: Partition,
    pub left: Partition,
    pub right: Partition,
}

impl LrQuery {
    pub fn new(outer: Partition, left: Partition, right: Partition) -> Self {
        Self { outer, left, right }
    }
}

/// Uncached LR coefficient with the default size guard.
pub fn lr(query: &LrQuery) -> Result<u64, LrError> {
    lr_bounded(query, DEFAULT_SIZE_BOUND)
}

pub fn lr_bounded(query: &LrQuery, bound: usize) -> Result<u64, LrError> {
    let LrQuery { outer, left, right } = query;
    if outer.size() > bound {
        return Err(LrError::TooLarge {
            size: outer.size(),
            bound,
        });
    }
    if left.size() + right.size() != outer.size()
        || !left.is_contained_in(outer)
        || !right.is_contained_in(outer)
    {
        return Ok(0);
    }
    Ok(count_tableaux(outer, left, right))
}

/// `1` iff `beta` is the complement of `alpha` in the box.
pub fn lr_rectangle(shape: BoxShape, alpha: &Partition, beta: &Partition) -> u64 {
    if !fits_in_box(alpha, shape) {
        return 0;
    }
    match complement_in_box(alpha, shape) {
        Ok(c) if &c == beta => 1,
        _ => 0,
    }
}

/// Memoizing wrapper keyed on the canonical `(λ, α, β)`.
#[derive(Debug, Clone)]
pub struct LrCache {
    bound: usize,
    memo: BTreeMap<LrQuery, u64>,
}

impl Default for LrCache {
    fn default() -> Self {
        Self::new(DEFAULT_SIZE_BOUND)
    }
}

impl LrCache {
    pub fn new(bound: usize) -> Self {
        Self {
            bound,
            memo: BTreeMap::new(),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn lr(&mut self, query: &LrQuery) -> Result<u64, LrError> {
        if let Some(&v) = self.memo.get(query) {
            return Ok(v);
        }
        let v = lr_bounded(query, self.bound)?;
        self.memo.insert(query.clone(), v);
        Ok(v)
    }

    pub fn coefficient(
        &mut self,
        outer: &Partition,
        left: &Partition,
        right: &Partition,
    ) -> Result<u64, LrError> {
        self.lr(&LrQuery::new(outer.clone(), left.clone(), right.clone()))
    }
}

struct Filler<'a> {
    outer: &'a [usize],
    inner: Vec<usize>,
    content: &'a [usize],
    /// Letters placed so far, 0-based.
    counts: Vec<usize>,
    /// `grid[row][col]`, 0 for cells of the inner shape or not yet filled.
    grid: Vec<Vec<u8>>,
}

fn count_tableaux(outer: &Partition, inner: &Partition, content: &Partition) -> u64 {
    if content.is_empty() {
        return 1;
    }
    let rows = outer.len();
    let mut filler = Filler {
        outer: outer.parts(),
        inner: (0..rows).map(|i| inner.part(i)).collect(),
        content: content.parts(),
        counts: alloc::vec![0; content.len()],
        grid: outer.parts().iter().map(|&w| alloc::vec![0; w]).collect(),
    };
    filler.fill(0, filler.outer.first().copied().unwrap_or(0))
}

impl Filler<'_> {
    /// Fills cell `(row, col - 1)`; `col` counts down to the inner boundary.
    fn fill(&mut self, row: usize, col: usize) -> u64 {
        if row == self.outer.len() {
            return 1;
        }
        if col == self.inner[row] {
            let next = row + 1;
            let start = self.outer.get(next).copied().unwrap_or(0);
            return self.fill(next, start);
        }
        let c = col - 1;
        // Weakly increasing rows: bounded by the cell to the right.
        let max_letter = if col < self.outer[row] {
            self.grid[row][col] as usize
        } else {
            // Column strictness forces letter <= row + 1 as well.
            self.content.len().min(row + 1)
        };
        // Strictly increasing columns: above the cell above, if it is skew.
        let min_letter = if row > 0 && c >= self.inner[row - 1] {
            self.grid[row - 1][c] as usize + 1
        } else {
            1
        };
        let mut total = 0;
        for letter in min_letter..=max_letter {
            let v = letter - 1;
            if self.counts[v] >= self.content[v] {
                continue;
            }
            if v > 0 && self.counts[v] + 1 > self.counts[v - 1] {
                continue;
            }
            self.counts[v] += 1;
            self.grid[row][c] = letter as u8;
            total += self.fill(row, c);
            self.grid[row][c] = 0;
            self.counts[v] -= 1;
        }
        total
    }
}
