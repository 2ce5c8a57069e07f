//! Kronecker coefficients `g(λ, μ, ν)` of the symmetric group.
//!
//! Two independent routes:
//!
//! * the two-row formula `g(λ, μ, (n-k, k)) = a_k(λ, μ) - a_{k-1}(λ, μ)` with
//!   `a_k(λ, μ) = Σ_{α ⊢ k, β ⊢ n-k} c^λ_{αβ} c^μ_{αβ}` built on [`crate::lr`];
//! * a character oracle `g = (1/n!) Σ_ρ |C_ρ| χ^λ(ρ) χ^μ(ρ) χ^ν(ρ)` over a
//!   full character table computed by the Murnaghan-Nakayama rule.
//!
//! The second route shares no code with the first and is what the two-row
//! formula and the box identity `g(m^l, m^l, τ_k) = p_k - p_{k-1}` are tested
//! against. Non-negativity of `a_k - a_{k-1}` for arbitrary `λ, μ` comes from
//! representation theory; a negative value is reported as an internal
//! consistency error.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::lr::{LrCache, LrError};
use crate::partition::{add, enumerate_contained, partitions_of, rectangle, BoxShape, Partition};
use crate::qbinomial::gaussian;

/// Default largest `n` for which character tables are built.
pub const DEFAULT_ORACLE_BOUND: usize = 18;

/// Hard ceiling: class sizes and the oracle sum stay within `i128`.
pub const MAX_ORACLE_BOUND: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KroneckerError {
    #[error("partitions must have equal size, got {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("k = {k} is out of range for n = {n}: (n-k, k) is not a partition")]
    InvalidTwoRow { n: usize, k: usize },
    #[error("oracle out of range: n = {n} exceeds bound {bound}")]
    OracleOutOfRange { n: usize, bound: usize },
    #[error("internal consistency error: {0}")]
    Consistency(&'static str),
    #[error(
        "internal consistency error: a_k - a_(k-1) = {value} < 0 for λ={lambda}, μ={mu}, k={k}"
    )]
    NegativeTwoRow {
        lambda: Partition,
        mu: Partition,
        k: usize,
        value: i64,
    },
    #[error(transparent)]
    Lr(#[from] LrError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    TwoRowFormula,
    CharacterOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KroneckerValue {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub value: u64,
    pub route: Route,
}

/// `a_k(λ, μ)`: sum of `c^λ_{αβ} c^μ_{αβ}` over `α ⊢ k`, `β ⊢ n - k`.
pub fn a_k(
    lambda: &Partition,
    mu: &Partition,
    k: usize,
    lr: &mut LrCache,
) -> Result<u64, KroneckerError> {
    let n = same_size(lambda, mu)?;
    if k > n {
        return Ok(0);
    }
    // Both factors must sit inside λ and inside μ.
    let meet = Partition::new(
        (0..lambda.len().min(mu.len()))
            .map(|i| lambda.part(i).min(mu.part(i)))
            .collect(),
    )
    .map_err(|_| KroneckerError::Consistency("meet of partitions is not a partition"))?;
    let alphas = enumerate_contained(&meet, k);
    let betas = enumerate_contained(&meet, n - k);
    let mut total = 0;
    for alpha in &alphas {
        for beta in &betas {
            let x = lr.coefficient(lambda, alpha, beta)?;
            if x == 0 {
                continue;
            }
            total += x * lr.coefficient(mu, alpha, beta)?;
        }
    }
    Ok(total)
}

/// `g(λ, μ, (n-k, k))` by the two-row formula.
pub fn g_two_row(
    lambda: &Partition,
    mu: &Partition,
    k: usize,
    lr: &mut LrCache,
) -> Result<u64, KroneckerError> {
    let n = same_size(lambda, mu)?;
    if 2 * k > n {
        return Err(KroneckerError::InvalidTwoRow { n, k });
    }
    let current = a_k(lambda, mu, k, lr)? as i64;
    let previous = match k {
        0 => 0,
        _ => a_k(lambda, mu, k - 1, lr)? as i64,
    };
    let value = current - previous;
    if value < 0 {
        return Err(KroneckerError::NegativeTwoRow {
            lambda: lambda.clone(),
            mu: mu.clone(),
            k,
            value,
        });
    }
    Ok(value as u64)
}

pub fn g_two_row_value(
    lambda: &Partition,
    mu: &Partition,
    k: usize,
    lr: &mut LrCache,
) -> Result<KroneckerValue, KroneckerError> {
    let value = g_two_row(lambda, mu, k, lr)?;
    Ok(KroneckerValue {
        lambda: lambda.clone(),
        mu: mu.clone(),
        nu: Partition::two_row(lambda.size(), k).expect("checked by g_two_row"),
        value,
        route: Route::TwoRowFormula,
    })
}

fn same_size(a: &Partition, b: &Partition) -> Result<usize, KroneckerError> {
    if a.size() != b.size() {
        return Err(KroneckerError::SizeMismatch(a.size(), b.size()));
    }
    Ok(a.size())
}

/// Irreducible characters of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    /// Irreducibles and conjugacy classes share this order.
    partitions: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
    /// `values[λ][ρ] = χ^λ(ρ)`.
    values: Vec<Vec<i64>>,
    class_sizes: Vec<u128>,
    order: u128,
}

impl CharacterTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn group_order(&self) -> u128 {
        self.order
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `χ^λ(ρ)`, or `None` when either is not a partition of `n`.
    pub fn value(&self, lambda: &Partition, class: &Partition) -> Option<i64> {
        Some(self.values[self.position(lambda)?][self.position(class)?])
    }

    pub fn class_size(&self, class: &Partition) -> Option<u128> {
        Some(self.class_sizes[self.position(class)?])
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[i64]> {
        Some(&self.values[self.position(lambda)?])
    }

    pub fn class_sizes(&self) -> &[u128] {
        &self.class_sizes
    }

    pub fn dimension(&self, lambda: &Partition) -> Option<i64> {
        self.value(lambda, &Partition::new(alloc::vec![1; self.n]).ok()?)
    }

    /// `Σ_ρ |C_ρ| χ^λ(ρ) χ^μ(ρ)`, which is `n!` for `λ = μ` and 0 otherwise.
    pub fn inner_product_sum(&self, lambda: &Partition, mu: &Partition) -> Option<i128> {
        let a = self.row(lambda)?;
        let b = self.row(mu)?;
        let mut total: i128 = 0;
        for ((&x, &y), &size) in a.iter().zip(b).zip(&self.class_sizes) {
            let term = (size as i128).checked_mul(x as i128 * y as i128)?;
            total = total.checked_add(term)?;
        }
        Some(total)
    }

    /// `g(λ, μ, ν)` from the table. All three must be partitions of `n`.
    pub fn kronecker(
        &self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<u64, KroneckerError> {
        for p in [lambda, mu, nu] {
            if p.size() != self.n {
                return Err(KroneckerError::SizeMismatch(p.size(), self.n));
            }
        }
        let (a, b, c) = (
            self.row(lambda).expect("size checked"),
            self.row(mu).expect("size checked"),
            self.row(nu).expect("size checked"),
        );
        let overflow = KroneckerError::Consistency("character sum overflowed i128");
        let mut total: i128 = 0;
        for i in 0..self.partitions.len() {
            let chars = (a[i] as i128)
                .checked_mul(b[i] as i128)
                .and_then(|x| x.checked_mul(c[i] as i128))
                .ok_or(overflow.clone())?;
            let term = chars
                .checked_mul(self.class_sizes[i] as i128)
                .ok_or(overflow.clone())?;
            total = total.checked_add(term).ok_or(overflow.clone())?;
        }
        let order = self.order as i128;
        if total % order != 0 {
            return Err(KroneckerError::Consistency(
                "character sum not divisible by n!",
            ));
        }
        let g = total / order;
        u64::try_from(g).map_err(|_| KroneckerError::Consistency("negative character multiplicity"))
    }
}

/// Builds the character table of `S_n`, refusing `n > bound`.
pub fn character_table(n: usize, bound: usize) -> Result<CharacterTable, KroneckerError> {
    let bound = bound.min(MAX_ORACLE_BOUND);
    if n > bound {
        return Err(KroneckerError::OracleOutOfRange { n, bound });
    }
    let partitions = partitions_of(n);
    let index = partitions
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut memo = BTreeMap::new();
    let values = partitions
        .iter()
        .map(|lambda| {
            partitions
                .iter()
                .map(|rho| murnaghan_nakayama(lambda.parts(), rho.parts(), &mut memo))
                .collect()
        })
        .collect();
    let order: u128 = (1..=n as u128).product();
    let class_sizes = partitions
        .iter()
        .map(|rho| order / centralizer_order(rho))
        .collect();
    Ok(CharacterTable {
        n,
        partitions,
        index,
        values,
        class_sizes,
        order,
    })
}

/// `z_ρ = Π_i i^{m_i} m_i!` where `m_i` counts parts equal to `i`.
fn centralizer_order(rho: &Partition) -> u128 {
    let mut z: u128 = 1;
    let parts = rho.parts();
    let mut i = 0;
    while i < parts.len() {
        let part = parts[i];
        let mut mult = 0u128;
        while i < parts.len() && parts[i] == part {
            mult += 1;
            z *= part as u128 * mult;
            i += 1;
        }
    }
    z
}

/// `χ^shape(class)`. Strips the largest remaining part of `class` as a rim
/// hook, which on beta-sets is moving one bead down by the hook length.
fn murnaghan_nakayama(
    shape: &[usize],
    class: &[usize],
    memo: &mut BTreeMap<(Vec<usize>, Vec<usize>), i64>,
) -> i64 {
    let Some((&hook, rest)) = class.split_first() else {
        return i64::from(shape.is_empty());
    };
    if shape.len() == 1 || shape.is_empty() {
        // A one-row shape is the trivial character.
        return i64::from(!shape.is_empty());
    }
    let key = (shape.to_vec(), class.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = shape.len();
    // Beta numbers, strictly decreasing.
    let beta: Vec<usize> = (0..len).map(|i| shape[i] + len - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let Some(target) = b.checked_sub(hook) else {
            continue;
        };
        if beta.contains(&target) {
            continue;
        }
        // Beads strictly between target and b give the leg length.
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let smaller: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&smaller, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Character tables built on demand and kept for reuse.
#[derive(Debug, Clone)]
pub struct KroneckerOracle {
    bound: usize,
    tables: BTreeMap<usize, CharacterTable>,
}

impl Default for KroneckerOracle {
    fn default() -> Self {
        Self::new(DEFAULT_ORACLE_BOUND)
    }
}

impl KroneckerOracle {
    pub fn new(bound: usize) -> Self {
        Self {
            bound: bound.min(MAX_ORACLE_BOUND),
            tables: BTreeMap::new(),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn table(&mut self, n: usize) -> Result<&CharacterTable, KroneckerError> {
        if n > self.bound {
            return Err(KroneckerError::OracleOutOfRange {
                n,
                bound: self.bound,
            });
        }
        if !self.tables.contains_key(&n) {
            let table = character_table(n, self.bound)?;
            self.tables.insert(n, table);
        }
        Ok(&self.tables[&n])
    }

    /// Installs a table built elsewhere, e.g. on another thread.
    pub fn insert_table(&mut self, table: CharacterTable) {
        self.tables.insert(table.n(), table);
    }

    pub fn g(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<u64, KroneckerError> {
        let n = same_size(lambda, mu)?;
        same_size(lambda, nu)?;
        self.table(n)?.kronecker(lambda, mu, nu)
    }

    pub fn g_value(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<KroneckerValue, KroneckerError> {
        Ok(KroneckerValue {
            value: self.g(lambda, mu, nu)?,
            lambda: lambda.clone(),
            mu: mu.clone(),
            nu: nu.clone(),
            route: Route::CharacterOracle,
        })
    }
}

/// Outcome of checking `g(m^l, m^l, τ_k) = p_k(l,m) - p_{k-1}(l,m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleIdentityOutcome {
    pub ell: usize,
    pub m: usize,
    pub holds: bool,
    /// First `k` where the oracle and the coefficient difference disagree.
    pub offending_k: Option<usize>,
    pub checked: usize,
}

pub fn rectangle_identity_check(
    ell: usize,
    m: usize,
    oracle: &mut KroneckerOracle,
) -> Result<RectangleIdentityOutcome, KroneckerError> {
    let n = ell * m;
    if n > oracle.bound() {
        return Err(KroneckerError::OracleOutOfRange {
            n,
            bound: oracle.bound(),
        });
    }
    let poly = gaussian(ell, m);
    let rect = BoxShape::new(ell, m)
        .map(rectangle)
        .unwrap_or_else(|_| Partition::empty());
    let table = oracle.table(n)?;
    let mut offending_k = None;
    for k in 0..=n / 2 {
        let tau = Partition::two_row(n, k).expect("k <= n/2");
        let g = table.kronecker(&rect, &rect, &tau)?;
        let diff = num_bigint::BigInt::from(poly.coefficient(k as i64))
            - num_bigint::BigInt::from(poly.coefficient(k as i64 - 1));
        if num_bigint::BigInt::from(g) != diff {
            offending_k = Some(k);
            break;
        }
    }
    Ok(RectangleIdentityOutcome {
        ell,
        m,
        holds: offending_k.is_none(),
        offending_k,
        checked: n / 2 + 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

impl Triple {
    pub fn new(lambda: Partition, mu: Partition, nu: Partition) -> Self {
        Self { lambda, mu, nu }
    }

    pub fn size(&self) -> usize {
        self.lambda.size()
    }

    pub fn plus(&self, other: &Triple) -> Triple {
        Triple {
            lambda: add(&self.lambda, &other.lambda),
            mu: add(&self.mu, &other.mu),
            nu: add(&self.nu, &other.nu),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupCase {
    pub first: Triple,
    pub second: Triple,
    pub g_first: u64,
    pub g_second: u64,
    pub g_sum: u64,
}

impl SemigroupCase {
    /// `g(sum) > 0` and `g(sum) >= max(g_first, g_second)`.
    pub fn holds(&self) -> bool {
        self.g_sum > 0 && self.g_sum >= self.g_first.max(self.g_second)
    }
}

/// Evaluates one pair of triples; both need positive coefficients.
pub fn semigroup_case(
    first: &Triple,
    second: &Triple,
    oracle: &mut KroneckerOracle,
) -> Result<Option<SemigroupCase>, KroneckerError> {
    let g_first = oracle.g(&first.lambda, &first.mu, &first.nu)?;
    let g_second = oracle.g(&second.lambda, &second.mu, &second.nu)?;
    if g_first == 0 || g_second == 0 {
        return Ok(None);
    }
    let sum = first.plus(second);
    let g_sum = oracle.g(&sum.lambda, &sum.mu, &sum.nu)?;
    Ok(Some(SemigroupCase {
        first: first.clone(),
        second: second.clone(),
        g_first,
        g_second,
        g_sum,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupSpec {
    /// Number of accepted pairs (both coefficients positive).
    pub samples: usize,
    /// Largest `|first| + |second|`; at most the oracle bound.
    pub max_total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupReport {
    pub checked: usize,
    pub rejected_draws: usize,
    pub violations: Vec<SemigroupCase>,
}

/// Samples pairs of triples with positive coefficients and records every
/// case where the sum fails positivity or the max bound.
pub fn semigroup_check<R: Rng>(
    spec: &SemigroupSpec,
    rng: &mut R,
    oracle: &mut KroneckerOracle,
) -> Result<SemigroupReport, KroneckerError> {
    let max_total = spec.max_total.min(oracle.bound());
    if max_total < 2 {
        return Err(KroneckerError::OracleOutOfRange {
            n: spec.max_total,
            bound: oracle.bound(),
        });
    }
    let shapes: Vec<Vec<Partition>> = (0..=max_total).map(partitions_of).collect();
    let draw = |n: usize, rng: &mut R| {
        let pool = &shapes[n];
        let pick = |rng: &mut R| pool[rng.gen_range(0..pool.len())].clone();
        Triple::new(pick(rng), pick(rng), pick(rng))
    };
    let mut report = SemigroupReport {
        checked: 0,
        rejected_draws: 0,
        violations: Vec::new(),
    };
    while report.checked < spec.samples {
        let n1 = rng.gen_range(1..max_total);
        let n2 = rng.gen_range(1..=max_total - n1);
        let first = draw(n1, rng);
        let second = draw(n2, rng);
        match semigroup_case(&first, &second, oracle)? {
            Some(case) => {
                report.checked += 1;
                if !case.holds() {
                    report.violations.push(case);
                }
            }
            None => report.rejected_draws += 1,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Hook length formula.
    fn dimension_by_hooks(lambda: &Partition) -> u128 {
        let conj = lambda.conjugate();
        let mut hooks: u128 = 1;
        for (i, &row) in lambda.parts().iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j + conj.part(j) - i - 1) as u128;
            }
        }
        (1..=lambda.size() as u128).product::<u128>() / hooks
    }

    #[test]
    fn small_tables() {
        let t1 = character_table(1, 18).unwrap();
        assert_eq!(t1.value(&p(&[1]), &p(&[1])), Some(1));
        let t3 = character_table(3, 18).unwrap();
        let chi = |c: &[usize]| t3.value(&p(&[2, 1]), &p(c)).unwrap();
        assert_eq!((chi(&[1, 1, 1]), chi(&[2, 1]), chi(&[3])), (2, 0, -1));
        let t4 = character_table(4, 18).unwrap();
        assert_eq!(t4.dimension(&p(&[2, 2])), Some(2));
        assert_eq!(t4.class_size(&p(&[2, 1, 1])), Some(6));
        assert_eq!(t4.class_size(&p(&[2, 2])), Some(3));
        assert!(matches!(
            character_table(19, 18),
            Err(KroneckerError::OracleOutOfRange { n: 19, bound: 18 })
        ));
    }

    #[test]
    fn s5_row_against_standard_table() {
        // Classes in canonical order: [5],[4,1],[3,2],[3,1,1],[2,2,1],[2,1,1,1],[1^5].
        let t = character_table(5, 18).unwrap();
        assert_eq!(t.row(&p(&[3, 1, 1])).unwrap(), [1, 0, 0, 0, -2, 0, 6]);
        assert_eq!(t.row(&p(&[3, 2])).unwrap(), [0, -1, 1, -1, 1, 1, 5]);
        assert_eq!(t.row(&p(&[2, 2, 1])).unwrap(), [0, 1, -1, -1, 1, -1, 5]);
    }

    #[test]
    fn orthogonality_and_dimensions() {
        for n in 1..=12 {
            let t = character_table(n, 18).unwrap();
            let order = t.group_order() as i128;
            assert_eq!(t.class_sizes().iter().sum::<u128>(), t.group_order());
            for a in t.partitions() {
                assert_eq!(t.dimension(a).unwrap() as u128, dimension_by_hooks(a));
                for b in t.partitions() {
                    let expected = if a == b { order } else { 0 };
                    assert_eq!(t.inner_product_sum(a, b), Some(expected), "n={n} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let mut oracle = KroneckerOracle::default();
        let s = p(&[2, 2]);
        assert_eq!(oracle.g(&s, &s, &p(&[1, 1, 1, 1])).unwrap(), 1);
        assert_eq!(oracle.g(&s, &s, &p(&[4])).unwrap(), 1);
        assert_eq!(oracle.g(&s, &s, &s).unwrap(), 1);
        assert_eq!(oracle.g(&s, &s, &p(&[3, 1])).unwrap(), 0);
        let h = p(&[3, 1]);
        assert_eq!(oracle.g(&h, &h, &h).unwrap(), 1);
        for n in 1..=8 {
            let parts = partitions_of(n);
            for mu in &parts {
                for nu in &parts {
                    let g = oracle.g(&Partition::row(n), mu, nu).unwrap();
                    assert_eq!(g, u64::from(mu == nu));
                }
            }
        }
        assert!(matches!(
            oracle.g(&p(&[2]), &p(&[1]), &p(&[1])),
            Err(KroneckerError::SizeMismatch(2, 1))
        ));
    }

    #[test]
    fn oracle_is_symmetric() {
        let mut oracle = KroneckerOracle::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let parts = partitions_of(n);
            let mut pick = || parts[rng.gen_range(0..parts.len())].clone();
            let (a, b, c) = (pick(), pick(), pick());
            let g = oracle.g(&a, &b, &c).unwrap();
            for (x, y, z) in [
                (&a, &c, &b),
                (&b, &a, &c),
                (&b, &c, &a),
                (&c, &a, &b),
                (&c, &b, &a),
            ] {
                assert_eq!(oracle.g(x, y, z).unwrap(), g);
            }
        }
    }

    #[test]
    fn a_k_examples() {
        let mut lr = LrCache::default();
        let s = p(&[2, 2]);
        assert_eq!(a_k(&s, &s, 1, &mut lr).unwrap(), 1);
        assert_eq!(a_k(&s, &s, 2, &mut lr).unwrap(), 2);
        for lambda in partitions_of(6) {
            assert_eq!(a_k(&lambda, &lambda, 0, &mut lr).unwrap(), 1);
            for mu in partitions_of(6) {
                for k in 0..=6 {
                    assert_eq!(
                        a_k(&lambda, &mu, k, &mut lr).unwrap(),
                        a_k(&lambda, &mu, 6 - k, &mut lr).unwrap()
                    );
                }
            }
        }
        assert!(matches!(
            a_k(&p(&[2]), &p(&[1]), 0, &mut lr),
            Err(KroneckerError::SizeMismatch(2, 1))
        ));
    }

    #[test]
    fn two_row_examples() {
        let mut lr = LrCache::default();
        let s = p(&[2, 2]);
        assert_eq!(g_two_row(&s, &s, 0, &mut lr).unwrap(), 1);
        assert_eq!(g_two_row(&s, &s, 1, &mut lr).unwrap(), 0);
        assert_eq!(g_two_row(&s, &s, 2, &mut lr).unwrap(), 1);
        assert!(matches!(
            g_two_row(&s, &s, 3, &mut lr),
            Err(KroneckerError::InvalidTwoRow { n: 4, k: 3 })
        ));
        let v = g_two_row_value(&s, &s, 2, &mut lr).unwrap();
        assert_eq!(v.nu, s);
        assert_eq!(v.route, Route::TwoRowFormula);
    }

    #[test]
    fn routes_agree_small() {
        let mut lr = LrCache::default();
        let mut oracle = KroneckerOracle::default();
        for n in 1..=7 {
            for lambda in partitions_of(n) {
                for mu in partitions_of(n) {
                    for k in 0..=n / 2 {
                        let tau = Partition::two_row(n, k).unwrap();
                        assert_eq!(
                            g_two_row(&lambda, &mu, k, &mut lr).unwrap(),
                            oracle.g(&lambda, &mu, &tau).unwrap(),
                            "{lambda} {mu} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rectangle_identity_examples() {
        let mut oracle = KroneckerOracle::default();
        for (ell, m) in [(2, 2), (1, 4), (3, 4), (2, 5), (4, 4)] {
            let out = rectangle_identity_check(ell, m, &mut oracle).unwrap();
            assert!(out.holds, "({ell},{m}) failed at {:?}", out.offending_k);
        }
        assert!(rectangle_identity_check(4, 5, &mut oracle).is_err());
    }

    #[test]
    fn semigroup_examples() {
        let mut oracle = KroneckerOracle::default();
        let s = Triple::new(p(&[2, 2]), p(&[2, 2]), p(&[2, 2]));
        let case = semigroup_case(&s, &s, &mut oracle).unwrap().unwrap();
        assert_eq!(
            case.g_sum,
            oracle.g(&p(&[4, 4]), &p(&[4, 4]), &p(&[4, 4])).unwrap()
        );
        assert!(case.holds());
        let rows = |n| Triple::new(Partition::row(n), Partition::row(n), Partition::row(n));
        let case = semigroup_case(&rows(3), &rows(5), &mut oracle)
            .unwrap()
            .unwrap();
        assert_eq!((case.g_first, case.g_second, case.g_sum), (1, 1, 1));
        let zero = Triple::new(p(&[2, 2]), p(&[2, 2]), p(&[3, 1]));
        assert_eq!(semigroup_case(&zero, &s, &mut oracle).unwrap(), None);
    }

    #[test]
    fn semigroup_sampling_is_deterministic() {
        let spec = SemigroupSpec {
            samples: 40,
            max_total: 10,
        };
        let mut oracle = KroneckerOracle::default();
        let a = semigroup_check(
            &spec,
            &mut rand_chacha::ChaCha8Rng::seed_from_u64(0),
            &mut oracle,
        )
        .unwrap();
        let b = semigroup_check(
            &spec,
            &mut rand_chacha::ChaCha8Rng::seed_from_u64(0),
            &mut oracle,
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.checked, 40);
        assert!(a.violations.is_empty());
    }
}
