//! Additivity certificates for strict unimodality.
//!
//! Deduction rule: if `(l, m1)` and `(l, m2)` are strictly unimodal, at
//! least one of `l, m1, m2` is even and at least one is `>= 3` (all three
//! being `>= 2`), then `(l, m1 + m2)` is strictly unimodal. Together with
//! the symmetry `(l, m) <-> (m, l)` this derives every strict pair with
//! `min(l, m) >= 5` from a finite base of directly checked pairs.
//!
//! A [`Certificate`] is the derivation tree. [`verify`] replays it without
//! trusting its producer: base leaves are recomputed from coefficients and
//! every addition step has its side conditions checked.
//!
//! Base region (both orientations):
//!
//! * `8 <= l, m <= 15`;
//! * `l in 5..=7`, `5 <= m <= 22`.
//!
//! Construction always adds `m2 = 8` to a window leaf: `m = 8a + b` with
//! `b in 8..=15` when `l >= 8`, and `b in 15..=22` when `l in 5..=7`. For
//! `l >= 16` the leaves `(l, b)` are themselves transposed chains.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::unimodality::{check_strict, is_exception, EXCEPTIONS};

/// Every chain step adds this many columns.
pub const STEP: usize = 8;

/// `l * m` above this is refused by [`cross_validate`].
pub const CROSS_VALIDATE_LIMIT: usize = 3600;

/// Human-readable base region; part of the registry digest.
pub const BASE_RECIPE: &str = "8<=l,m<=15; l in 5..=7 with 5<=m<=22; both orientations";

const SQUARE: core::ops::RangeInclusive<usize> = 8..=15;
const NARROW_ROWS: core::ops::RangeInclusive<usize> = 5..=7;
const NARROW_COLS: core::ops::RangeInclusive<usize> = 5..=22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("({ell},{m}) is trivial: a side of length 1 gives a constant sequence")]
    Trivial { ell: usize, m: usize },
    #[error("({ell},{m}) has a side below 5 and is not certifiable by additivity")]
    SmallSide { ell: usize, m: usize },
    #[error("({ell},{m}) is an exception pair and not strictly unimodal")]
    ExceptionPair { ell: usize, m: usize },
    #[error("base pair ({ell},{m}) is missing from the registry")]
    Unregistered { ell: usize, m: usize },
    #[error("base verification failed at ({ell},{m})")]
    BaseVerification { ell: usize, m: usize },
    #[error("registry digest mismatch: stored {stored}, computed {computed}")]
    DigestMismatch { stored: String, computed: String },
    #[error("pair ({ell},{m}) is outside the base region")]
    OutsideRegion { ell: usize, m: usize },
    #[error("l*m = {area} exceeds the direct-computation budget {limit}")]
    BudgetExceeded { area: usize, limit: usize },
}

/// One of the three integers an addition step talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Member {
    Ell,
    M1,
    M2,
}

impl Member {
    fn pick(self, ell: usize, m1: usize, m2: usize) -> usize {
        match self {
            Member::Ell => ell,
            Member::M1 => m1,
            Member::M2 => m2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pair {
    pub ell: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Node {
    /// A directly computed pair from the base region.
    Base { ell: usize, m: usize },
    /// `(ell, m1) + (ell, m2) -> (ell, m1 + m2)`.
    Add {
        ell: usize,
        left: Box<Node>,
        right: Box<Node>,
        even_witness: Member,
        geq3_witness: Member,
    },
    /// `(a, b) -> (b, a)`.
    Transpose(Box<Node>),
}

impl Node {
    /// The pair this subtree claims, read off its structure alone.
    pub fn conclusion(&self) -> (usize, usize) {
        match self {
            Node::Base { ell, m } => (*ell, *m),
            Node::Add {
                ell, left, right, ..
            } => (*ell, left.conclusion().1 + right.conclusion().1),
            Node::Transpose(inner) => {
                let (a, b) = inner.conclusion();
                (b, a)
            }
        }
    }

    fn count(&self, base: &mut usize, add: &mut usize) {
        match self {
            Node::Base { .. } => *base += 1,
            Node::Add { left, right, .. } => {
                *add += 1;
                left.count(base, add);
                right.count(base, add);
            }
            Node::Transpose(inner) => inner.count(base, add),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub conclusion: Pair,
    pub node: Node,
    /// The tree concludes `(m, l)` rather than `(l, m)`.
    pub transposed: bool,
}

impl Certificate {
    /// Numbers of base leaves and addition steps.
    pub fn counts(&self) -> (usize, usize) {
        let (mut base, mut add) = (0, 0);
        self.node.count(&mut base, &mut add);
        (base, add)
    }
}

pub fn in_base_region(ell: usize, m: usize) -> bool {
    let (lo, hi) = (ell.min(m), ell.max(m));
    (SQUARE.contains(&lo) && SQUARE.contains(&hi))
        || (NARROW_ROWS.contains(&lo) && NARROW_COLS.contains(&hi))
}

/// All ordered pairs of the base region, sorted.
pub fn base_region() -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for a in 5..=22 {
        for b in 5..=22 {
            if in_base_region(a, b) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Base pairs whose strict unimodality was checked from coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseRegistry {
    pairs: BTreeSet<(usize, usize)>,
    digest: String,
}

impl BaseRegistry {
    /// Builds from `(pair, strict)` verdicts covering the whole base region.
    /// The non-strict pairs must be exactly the exception list.
    pub fn assemble<I>(verdicts: I) -> Result<Self, CertifyError>
    where
        I: IntoIterator<Item = ((usize, usize), bool)>,
    {
        let verdicts: BTreeMap<(usize, usize), bool> = verdicts.into_iter().collect();
        let mut pairs = BTreeSet::new();
        for (ell, m) in base_region() {
            let key = (ell.min(m), ell.max(m));
            let strict = *verdicts
                .get(&(ell, m))
                .or_else(|| verdicts.get(&key))
                .ok_or(CertifyError::Unregistered { ell, m })?;
            if strict == is_exception(ell, m) {
                return Err(CertifyError::BaseVerification { ell, m });
            }
            if strict {
                pairs.insert((ell, m));
            }
        }
        let digest = registry_digest(&pairs);
        Ok(Self { pairs, digest })
    }

    /// Rebuilds from stored content, rejecting it unless the digest matches
    /// and every pair lies in the base region.
    pub fn from_stored(pairs: Vec<(usize, usize)>, digest: &str) -> Result<Self, CertifyError> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        if let Some(&(ell, m)) = pairs.iter().find(|&&(a, b)| !in_base_region(a, b)) {
            return Err(CertifyError::OutsideRegion { ell, m });
        }
        let computed = registry_digest(&pairs);
        if computed != digest {
            return Err(CertifyError::DigestMismatch {
                stored: digest.into(),
                computed,
            });
        }
        Ok(Self {
            pairs,
            digest: computed,
        })
    }

    pub fn contains(&self, ell: usize, m: usize) -> bool {
        self.pairs.contains(&(ell, m))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Hex SHA-256 over the recipe and the sorted pair list.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn recipe(&self) -> &'static str {
        BASE_RECIPE
    }

    /// Recomputes every registered pair; returns the first that fails.
    pub fn reverify(&self) -> Result<(), CertifyError> {
        for &(ell, m) in &self.pairs {
            if ell <= m && !check_strict(ell, m).strict {
                return Err(CertifyError::BaseVerification { ell, m });
            }
        }
        Ok(())
    }
}

fn registry_digest(pairs: &BTreeSet<(usize, usize)>) -> String {
    let mut text = String::from(BASE_RECIPE);
    for (a, b) in pairs {
        let _ = write!(text, ";{a},{b}");
    }
    let mut hex = String::with_capacity(64);
    for byte in Sha256::digest(text.as_bytes()) {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

/// Checks every base pair from its coefficients, one orientation each.
pub fn build_base_registry() -> Result<BaseRegistry, CertifyError> {
    let verdicts = base_region()
        .into_iter()
        .filter(|&(a, b)| a <= b)
        .map(|(a, b)| ((a, b), check_strict(a, b).strict));
    BaseRegistry::assemble(verdicts)
}

/// Derives a certificate for `(ell, m)` from the registry.
pub fn certify(ell: usize, m: usize, registry: &BaseRegistry) -> Result<Certificate, CertifyError> {
    let (lo, hi) = (ell.min(m), ell.max(m));
    if lo < 2 {
        return Err(CertifyError::Trivial { ell, m });
    }
    if lo < 5 {
        return Err(CertifyError::SmallSide { ell, m });
    }
    if in_base_region(lo, hi) && !registry.contains(lo, hi) {
        return Err(if is_exception(lo, hi) {
            CertifyError::ExceptionPair { ell, m }
        } else {
            CertifyError::Unregistered { ell: lo, m: hi }
        });
    }
    Ok(Certificate {
        conclusion: Pair { ell, m },
        node: chain(lo, hi, registry)?,
        transposed: ell > m,
    })
}

/// Node for `(rows, cols)`, adding `STEP` columns at a time.
fn chain(rows: usize, cols: usize, registry: &BaseRegistry) -> Result<Node, CertifyError> {
    let window_start = if rows < *SQUARE.start() { 15 } else { 8 };
    if cols < window_start + STEP {
        return leaf(rows, cols, registry);
    }
    let offset = (cols - window_start) % STEP;
    let mut width = window_start + offset;
    let mut node = leaf(rows, width, registry)?;
    let step = leaf(rows, STEP, registry)?;
    while width < cols {
        let even_witness = if rows.is_multiple_of(2) {
            Member::Ell
        } else if width.is_multiple_of(2) {
            Member::M1
        } else {
            Member::M2
        };
        node = Node::Add {
            ell: rows,
            left: Box::new(node),
            right: Box::new(step.clone()),
            even_witness,
            geq3_witness: Member::Ell,
        };
        width += STEP;
    }
    Ok(node)
}

fn leaf(rows: usize, cols: usize, registry: &BaseRegistry) -> Result<Node, CertifyError> {
    if in_base_region(rows, cols) {
        if !registry.contains(rows, cols) {
            return Err(CertifyError::Unregistered { ell: rows, m: cols });
        }
        return Ok(Node::Base { ell: rows, m: cols });
    }
    // rows >= 16 and cols in 8..=15: grow the short side instead.
    Ok(Node::Transpose(Box::new(chain(cols, rows, registry)?)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyFailure {
    /// Dotted path from the certificate root, e.g. `node.add.left.base`.
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub accepted: bool,
    pub failure: Option<VerifyFailure>,
    /// Distinct base pairs recomputed from coefficients.
    pub base_checks: usize,
}

/// Replays a certificate from scratch.
pub fn verify(cert: &Certificate) -> Verification {
    let mut memo = BTreeMap::new();
    let expected = if cert.transposed {
        (cert.conclusion.m, cert.conclusion.ell)
    } else {
        (cert.conclusion.ell, cert.conclusion.m)
    };
    let mut path = alloc::vec!["node"];
    let result = check_node(&cert.node, &mut path, &mut memo).and_then(|got| {
        if got == expected {
            return Ok(());
        }
        Err(VerifyFailure {
            path: "node".into(),
            reason: format!(
                "tree concludes ({},{}) but the certificate claims ({},{}) with transposed={}",
                got.0, got.1, cert.conclusion.ell, cert.conclusion.m, cert.transposed
            ),
        })
    });
    Verification {
        accepted: result.is_ok(),
        failure: result.err(),
        base_checks: memo.len(),
    }
}

/// Checks a subtree and returns the pair it proves. `path` is a stack of
/// segments, joined only when reporting a failure.
fn check_node(
    node: &Node,
    path: &mut Vec<&'static str>,
    memo: &mut BTreeMap<(usize, usize), bool>,
) -> Result<(usize, usize), VerifyFailure> {
    let fail = |path: &[&str], reason: String| {
        Err(VerifyFailure {
            path: path.join("."),
            reason,
        })
    };
    match node {
        Node::Base { ell, m } => {
            path.push("base");
            if !in_base_region(*ell, *m) {
                return fail(
                    path,
                    format!("({ell},{m}) is outside the base region {BASE_RECIPE}"),
                );
            }
            let key = (*ell.min(m), *ell.max(m));
            let strict = *memo
                .entry(key)
                .or_insert_with(|| check_strict(key.0, key.1).strict);
            if !strict {
                let report = check_strict(key.0, key.1);
                return fail(
                    path,
                    format!(
                        "({ell},{m}) is not strictly unimodal: equal coefficients at {:?}",
                        report.plateaus
                    ),
                );
            }
            path.pop();
            Ok((*ell, *m))
        }
        Node::Add {
            ell,
            left,
            right,
            even_witness,
            geq3_witness,
        } => {
            path.push("add");
            path.push("left");
            let (l1, m1) = check_node(left, path, memo)?;
            path.pop();
            path.push("right");
            let (l2, m2) = check_node(right, path, memo)?;
            path.pop();
            if l1 != *ell || l2 != *ell {
                return fail(
                    path,
                    format!("children conclude ({l1},{m1}) and ({l2},{m2}); both need l = {ell}"),
                );
            }
            if *ell < 2 || m1 < 2 || m2 < 2 {
                return fail(path, format!("l={ell}, m1={m1}, m2={m2} must all be >= 2"));
            }
            let even = even_witness.pick(*ell, m1, m2);
            if even % 2 != 0 {
                let any = [*ell, m1, m2].iter().any(|x| x % 2 == 0);
                let reason = if any {
                    format!("even witness {even_witness:?} = {even} is odd")
                } else {
                    format!("none of l={ell}, m1={m1}, m2={m2} is even")
                };
                return fail(path, reason);
            }
            let big = geq3_witness.pick(*ell, m1, m2);
            if big < 3 {
                return fail(
                    path,
                    format!("size witness {geq3_witness:?} = {big} is below 3"),
                );
            }
            path.pop();
            Ok((*ell, m1 + m2))
        }
        Node::Transpose(inner) => {
            path.push("transpose");
            let (a, b) = check_node(inner, path, memo)?;
            path.pop();
            Ok((b, a))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub ell: usize,
    pub m: usize,
    /// `None` when a certificate was produced, otherwise why not.
    pub refusal: Option<String>,
    pub verified: bool,
    pub direct_strict: bool,
    /// Certified-and-verified exactly when directly strict.
    pub agree: bool,
}

/// Compares the certificate route with direct expansion.
pub fn cross_validate(
    ell: usize,
    m: usize,
    registry: &BaseRegistry,
) -> Result<CrossValidation, CertifyError> {
    if ell * m > CROSS_VALIDATE_LIMIT {
        return Err(CertifyError::BudgetExceeded {
            area: ell * m,
            limit: CROSS_VALIDATE_LIMIT,
        });
    }
    let (refusal, verified) = match certify(ell, m, registry) {
        Ok(cert) => (None, verify(&cert).accepted),
        Err(e) => (Some(format!("{e}")), false),
    };
    let direct_strict = check_strict(ell, m).strict;
    Ok(CrossValidation {
        ell,
        m,
        refusal,
        verified,
        direct_strict,
        agree: verified == direct_strict,
    })
}

/// Normalized exception pairs; re-exported for callers that sweep them.
pub fn exceptions() -> &'static [(usize, usize)] {
    &EXCEPTIONS
}
