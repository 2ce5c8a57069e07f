//! Strict unimodality of `p_1(l,m), ..., p_{lm-1}(l,m)` and the
//! classification of box dimensions.
//!
//! The chain starts at index 1 (`p_0 = p_1 = 1` always) and ends at `lm - 1`:
//!
//! ```text
//! p_1 < ... < p_{floor(n/2)} = p_{ceil(n/2)} > ... > p_{n-1},   n = l*m
//! ```
//!
//! For even `n` the two middle indices coincide and the equality is vacuous.

use alloc::vec::Vec;
use core::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::certify::{self, BaseRegistry};
use crate::qbinomial::{gaussian, QPolynomial};

/// Pairs `(l, m)`, `5 <= l <= m`, that are not strictly unimodal. All but
/// `(6, 6)` have their middle three coefficients equal; `(6, 6)` instead has
/// `p_16 = p_17 = 55 < p_18 = 58 > p_19 = p_20 = 55`.
pub const EXCEPTIONS: [(usize, usize); 9] = [
    (5, 6),
    (5, 10),
    (5, 14),
    (6, 6),
    (6, 7),
    (6, 9),
    (6, 11),
    (6, 13),
    (7, 10),
];

/// Pairs with `l * m` at most this are classified from their coefficients;
/// larger ones go through a verified certificate.
pub const DIRECT_CLASSIFY_LIMIT: usize = 3600;

pub fn is_exception(ell: usize, m: usize) -> bool {
    let key = (ell.min(m), ell.max(m));
    EXCEPTIONS.contains(&key)
}

/// Maximal run of equal coefficients, inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plateau {
    pub start: usize,
    pub end: usize,
}

impl Plateau {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: usize) -> bool {
        (self.start..=self.end).contains(&k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodalityReport {
    pub ell: usize,
    pub m: usize,
    pub n: usize,
    pub strict: bool,
    /// Runs of length at least two within `1..=n-1`, sorted.
    pub plateaus: Vec<Plateau>,
    /// Smallest `k >= 2` on the ascent with `p_{k-1} >= p_k`; failing that,
    /// the first non-strict step of the descent.
    pub first_violation: Option<usize>,
}

impl UnimodalityReport {
    /// The equality `p_{floor(n/2)} = p_{ceil(n/2)}` forced for odd `n`.
    pub fn forced_middle(&self) -> Option<Plateau> {
        (self.n % 2 == 1 && self.n >= 3).then(|| Plateau {
            start: self.n / 2,
            end: self.n / 2 + 1,
        })
    }

    /// Plateaus other than the forced middle pair.
    pub fn unforced_plateaus(&self) -> impl Iterator<Item = &Plateau> + '_ {
        let forced = self.forced_middle();
        self.plateaus.iter().filter(move |p| Some(**p) != forced)
    }

    /// True when the only plateau is the three indices around `n/2`.
    pub fn fails_only_at_middle_three(&self) -> bool {
        self.n.is_multiple_of(2)
            && self.n >= 4
            && self.plateaus
                == [Plateau {
                    start: self.n / 2 - 1,
                    end: self.n / 2 + 1,
                }]
    }
}

pub fn check_strict(ell: usize, m: usize) -> UnimodalityReport {
    check_strict_poly(ell, m, &gaussian(ell, m))
}

/// Same as [`check_strict`] on an already expanded `binom(l+m, m)_q`.
pub fn check_strict_poly(ell: usize, m: usize, poly: &QPolynomial) -> UnimodalityReport {
    let p = poly.coeffs();
    let n = poly.degree();
    debug_assert_eq!(n, ell * m);

    let mut plateaus = Vec::new();
    let mut k = 1;
    while k + 1 < n {
        let start = k;
        while k + 1 < n && p[k] == p[k + 1] {
            k += 1;
        }
        if k > start {
            plateaus.push(Plateau { start, end: k });
        }
        k += 1;
    }

    let lo = n / 2;
    let hi = n.div_ceil(2);
    let ascent = (2..=lo).find(|&k| p[k - 1] >= p[k]);
    let descent = (hi + 1..n).find(|&k| p[k - 1] <= p[k]);
    let middle_ok = n < 2 || p[lo] == p[hi];
    let strict = ascent.is_none() && descent.is_none() && middle_ok;

    UnimodalityReport {
        ell,
        m,
        n,
        strict,
        plateaus,
        first_violation: ascent.or(descent),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    /// `l = m = 2`.
    StrictSmall,
    /// Strictly unimodal with `min(l, m) >= 5`.
    Strict,
    /// `min(l, m) >= 5` but not strict; see [`EXCEPTIONS`].
    Exception,
    /// `min(l, m) = 2`, other than `(2, 2)`; `p_{2i} = p_{2i+1}` below the middle.
    EllTwo,
    /// `min(l, m)` is 3 or 4; never strict.
    EllThreeFour,
    /// `l = 1` or `m = 1`: all coefficients are 1. Outside the
    /// classification; answered for totality.
    Trivial,
}

impl PairClass {
    pub fn is_strict(self) -> bool {
        matches!(self, PairClass::Strict | PairClass::StrictSmall)
    }

    pub fn name(self) -> &'static str {
        match self {
            PairClass::StrictSmall => "strict-small",
            PairClass::Strict => "strict",
            PairClass::Exception => "exception",
            PairClass::EllTwo => "ell-two",
            PairClass::EllThreeFour => "ell-three-four",
            PairClass::Trivial => "trivial",
        }
    }
}

/// Classifies `(l, m)`. Builds a base registry only when the pair is too
/// large to decide from its coefficients.
pub fn classify(ell: usize, m: usize) -> PairClass {
    classify_lazy(ell, m, &mut None)
}

fn classify_lazy(ell: usize, m: usize, registry: &mut Option<BaseRegistry>) -> PairClass {
    if let Some(class) = classify_small(ell, m) {
        return class;
    }
    let registry = registry.get_or_insert_with(|| {
        certify::build_base_registry().expect("base registry failed verification")
    });
    classify_with(ell, m, registry)
}

/// Classifies `(l, m)` using an existing registry for large pairs.
pub fn classify_with(ell: usize, m: usize, registry: &BaseRegistry) -> PairClass {
    if let Some(class) = classify_small(ell, m) {
        return class;
    }
    let certified = certify::certify(ell, m, registry)
        .ok()
        .is_some_and(|cert| certify::verify(&cert).accepted);
    if certified {
        PairClass::Strict
    } else {
        direct_class(ell, m)
    }
}

fn classify_small(ell: usize, m: usize) -> Option<PairClass> {
    let lo = ell.min(m);
    match lo {
        0 | 1 => Some(PairClass::Trivial),
        2 if ell == m => Some(PairClass::StrictSmall),
        2 => Some(PairClass::EllTwo),
        3 | 4 => Some(PairClass::EllThreeFour),
        _ if ell * m <= DIRECT_CLASSIFY_LIMIT => Some(direct_class(ell, m)),
        _ => None,
    }
}

fn direct_class(ell: usize, m: usize) -> PairClass {
    if check_strict(ell, m).strict {
        PairClass::Strict
    } else {
        PairClass::Exception
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub ell: usize,
    pub m: usize,
    pub class: PairClass,
}

/// Distinct normalized pairs `(min, max)` from the product, sorted.
pub fn scan_pairs(
    ell_range: RangeInclusive<usize>,
    m_range: RangeInclusive<usize>,
) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = ell_range
        .flat_map(|a| m_range.clone().map(move |b| (a.min(b), a.max(b))))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

pub fn scan(ell_range: RangeInclusive<usize>, m_range: RangeInclusive<usize>) -> Vec<ScanEntry> {
    let mut registry = None;
    scan_pairs(ell_range, m_range)
        .into_iter()
        .map(|(ell, m)| ScanEntry {
            ell,
            m,
            class: classify_lazy(ell, m, &mut registry),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_is_strict() {
        let r = check_strict(2, 2);
        assert!(r.strict);
        assert!(r.plateaus.is_empty());
        assert_eq!(r.first_violation, None);
    }

    #[test]
    fn five_by_six_fails_at_the_middle() {
        let r = check_strict(5, 6);
        assert!(!r.strict);
        assert!(r.fails_only_at_middle_three());
        assert!(r
            .plateaus
            .iter()
            .any(|p| p.contains(14) && p.contains(15) && p.contains(16)));
        assert_eq!(r.first_violation, Some(15));
    }

    #[test]
    fn eight_by_eight_is_strict() {
        assert!(check_strict(8, 8).strict);
    }

    #[test]
    fn odd_degree_keeps_forced_middle() {
        // 5 x 9: n = 45 is odd.
        let r = check_strict(5, 9);
        assert!(r.strict);
        assert_eq!(r.plateaus, [Plateau { start: 22, end: 23 }]);
        assert_eq!(r.unforced_plateaus().count(), 0);
    }

    #[test]
    fn ell_two_has_paired_plateaus() {
        let r = check_strict(2, 9);
        assert!(!r.strict);
        // p_{2i} = p_{2i+1} for 2i+1 < n/2.
        for i in 1..(18 / 4) {
            assert!(r
                .plateaus
                .iter()
                .any(|p| p.contains(2 * i) && p.contains(2 * i + 1)));
        }
        assert_eq!(classify(2, 9), PairClass::EllTwo);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(6, 7), PairClass::Exception);
        assert_eq!(classify(7, 10), PairClass::Exception);
        assert_eq!(classify(10, 7), PairClass::Exception);
        assert_eq!(classify(2, 2), PairClass::StrictSmall);
        assert_eq!(classify(1, 9), PairClass::Trivial);
        assert_eq!(classify(4, 17), PairClass::EllThreeFour);
        assert_eq!(classify(5, 7), PairClass::Strict);
    }

    #[test]
    fn large_pairs_classify_through_certificates() {
        assert_eq!(classify(61, 70), PairClass::Strict);
        assert_eq!(classify(5, 800), PairClass::Strict);
    }

    #[test]
    fn classification_is_symmetric() {
        for a in 1..=16 {
            for b in 1..=16 {
                assert_eq!(classify(a, b), classify(b, a), "({a},{b})");
            }
        }
    }

    #[test]
    fn exhaustive_up_to_area_400() {
        for ell in 5..=80 {
            for m in ell..=(400 / ell) {
                let r = check_strict(ell, m);
                assert_eq!(r.strict, !is_exception(ell, m), "({ell},{m})");
                if (ell, m) == (6, 6) {
                    // p_16 = p_17 = 55 < p_18 = 58 > p_19 = p_20 = 55
                    assert_eq!(
                        r.plateaus,
                        [
                            Plateau { start: 16, end: 17 },
                            Plateau { start: 19, end: 20 }
                        ]
                    );
                    assert_eq!(r.first_violation, Some(17));
                } else if !r.strict {
                    assert!(r.fails_only_at_middle_three(), "({ell},{m})");
                }
            }
        }
    }

    #[test]
    fn three_and_four_are_never_strict() {
        for ell in [3, 4] {
            for m in 3..=30 {
                let r = check_strict(ell, m);
                assert!(!r.strict, "({ell},{m})");
                let middle_long = r.forced_middle().is_none_or(|f| {
                    r.plateaus
                        .iter()
                        .any(|p| p.start <= f.start && p.end >= f.end && p.len() > 2)
                });
                assert!(r.unforced_plateaus().count() > 0 || middle_long);
            }
        }
    }

    #[test]
    fn scan_examples() {
        let exceptions: Vec<(usize, usize)> = scan(5..=7, 5..=20)
            .into_iter()
            .filter(|e| e.class == PairClass::Exception)
            .map(|e| (e.ell, e.m))
            .collect();
        assert_eq!(exceptions, EXCEPTIONS);
        assert!(scan(8..=15, 8..=15)
            .iter()
            .all(|e| e.class == PairClass::Strict));
        assert!(scan(2..=2, 3..=6)
            .iter()
            .all(|e| e.class == PairClass::EllTwo));
        let normalized = scan(3..=4, 1..=3);
        assert_eq!(
            normalized.iter().map(|e| (e.ell, e.m)).collect::<Vec<_>>(),
            [(1, 3), (1, 4), (2, 3), (2, 4), (3, 3), (3, 4)]
        );
    }

    #[test]
    fn trivial_pairs() {
        let r = check_strict(1, 5);
        assert!(!r.strict);
        assert_eq!(r.plateaus, [Plateau { start: 1, end: 4 }]);
        assert_eq!(classify(1, 1), PairClass::Trivial);
    }
}
