//! Reproducible experiments behind `repro` and `props`.
//!
//! Every claim is deterministic: parameters are explicit and the only
//! randomness comes from a ChaCha stream seeded by the caller.

use std::fmt::Write as _;

use qunimodal_core::certify::{certify, verify};
use qunimodal_core::kronecker::{
    character_table, g_two_row, rectangle_identity_check, semigroup_check, KroneckerOracle,
    SemigroupSpec, MAX_ORACLE_BOUND,
};
use qunimodal_core::partition::partitions_of;
use qunimodal_core::qbinomial::gaussian;
use qunimodal_core::unimodality::{check_strict, is_exception, scan_pairs, EXCEPTIONS};
use qunimodal_core::{BaseRegistry, LrCache, Partition};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Exceptions,
    Ell2,
    Ell34,
    #[serde(rename = "lemma12")]
    #[value(name = "lemma12")]
    RectangleIdentity,
    Routes,
    Semigroup,
    CertifySweep,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::Exceptions,
        Claim::Ell2,
        Claim::Ell34,
        Claim::RectangleIdentity,
        Claim::Routes,
        Claim::Semigroup,
        Claim::CertifySweep,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Exceptions => "exceptions",
            Claim::Ell2 => "ell2",
            Claim::Ell34 => "ell34",
            Claim::RectangleIdentity => "lemma12",
            Claim::Routes => "routes",
            Claim::Semigroup => "semigroup",
            Claim::CertifySweep => "certify-sweep",
        }
    }

    /// Size parameter used when none is given.
    pub fn default_limit(self) -> usize {
        match self {
            Claim::Exceptions => 20,
            Claim::Ell2 => 50,
            Claim::Ell34 => 30,
            Claim::RectangleIdentity => 16,
            Claim::Routes => 10,
            Claim::Semigroup => 18,
            Claim::CertifySweep => 40,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReproOptions {
    /// Claim-specific size bound; see [`Claim::default_limit`].
    pub limit: Option<usize>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for ReproOptions {
    fn default() -> Self {
        Self {
            limit: None,
            seed: 0,
            samples: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: Claim,
    pub passed: bool,
    pub limit: usize,
    /// Number of individual checks performed.
    pub checked: usize,
    pub findings: Vec<String>,
    pub counterexamples: Vec<String>,
}

impl ClaimReport {
    fn new(claim: Claim, limit: usize) -> Self {
        Self {
            claim,
            passed: false,
            limit,
            checked: 0,
            findings: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.counterexamples.is_empty();
        self
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "claim {} (limit {})", self.claim.id(), self.limit);
        let _ = writeln!(s, "checked {}", self.checked);
        for f in &self.findings {
            let _ = writeln!(s, "  {f}");
        }
        for c in &self.counterexamples {
            let _ = writeln!(s, "  counterexample: {c}");
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

/// Runs `claim`. `registry` is only called for the certificate sweep.
pub fn run(
    claim: Claim,
    opts: &ReproOptions,
    pool: &ThreadPool,
    registry: impl FnOnce() -> Result<BaseRegistry, CliError>,
) -> Result<ClaimReport, CliError> {
    let limit = opts.limit.unwrap_or(claim.default_limit());
    match claim {
        Claim::Exceptions => Ok(exceptions(pool)),
        Claim::Ell2 => Ok(ell_two(limit)),
        Claim::Ell34 => Ok(ell_three_four(limit)),
        Claim::RectangleIdentity => rectangle_identity(limit, pool),
        Claim::Routes => routes(limit, pool),
        Claim::Semigroup => semigroup(limit, opts.seed, opts.samples),
        Claim::CertifySweep => Ok(certify_sweep(limit, &registry()?, pool)),
    }
}

/// The finite region whose failures are exactly the exception list.
pub fn exception_region() -> Vec<(usize, usize)> {
    let mut pairs = scan_pairs(5..=7, 5..=20);
    pairs.extend(scan_pairs(8..=15, 8..=15));
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

fn exceptions(pool: &ThreadPool) -> ClaimReport {
    let region = exception_region();
    let mut report = ClaimReport::new(Claim::Exceptions, 20);
    let reports: Vec<_> = pool.install(|| {
        region
            .par_iter()
            .map(|&(a, b)| check_strict(a, b))
            .collect()
    });
    report.checked = reports.len();
    let failing: Vec<_> = reports.iter().filter(|r| !r.strict).collect();
    let found: Vec<(usize, usize)> = failing.iter().map(|r| (r.ell, r.m)).collect();
    for r in &failing {
        let plateaus: Vec<String> = r
            .plateaus
            .iter()
            .map(|p| format!("[{},{}]", p.start, p.end))
            .collect();
        report.findings.push(format!(
            "({},{}) n={} plateaus {}",
            r.ell,
            r.m,
            r.n,
            plateaus.join(" ")
        ));
        if !r.fails_only_at_middle_three() {
            report.counterexamples.push(format!(
                "({},{}) does not fail only at the middle three indices {}..={}",
                r.ell,
                r.m,
                r.n / 2 - 1,
                r.n / 2 + 1
            ));
        }
    }
    for &pair in EXCEPTIONS.iter().filter(|p| !found.contains(p)) {
        report.counterexamples.push(format!(
            "({},{}) expected non-strict but is strict",
            pair.0, pair.1
        ));
    }
    for &pair in found.iter().filter(|p| !EXCEPTIONS.contains(p)) {
        report.counterexamples.push(format!(
            "({},{}) is non-strict but not listed",
            pair.0, pair.1
        ));
    }
    report
        .findings
        .insert(0, format!("{} non-strict pairs in the region", found.len()));
    report.finish()
}

fn ell_two(max_m: usize) -> ClaimReport {
    let mut report = ClaimReport::new(Claim::Ell2, max_m);
    for m in 1..=max_m {
        let p = gaussian(2, m);
        let n = 2 * m;
        let mut i = 0;
        while 4 * i < n {
            report.checked += 1;
            if p.coefficient(2 * i as i64) != p.coefficient(2 * i as i64 + 1) {
                report
                    .counterexamples
                    .push(format!("(2,{m}): p_{} != p_{}", 2 * i, 2 * i + 1));
            }
            i += 1;
        }
    }
    report.finish()
}

fn ell_three_four(max_m: usize) -> ClaimReport {
    let mut report = ClaimReport::new(Claim::Ell34, max_m);
    for ell in [3, 4] {
        for m in 3..=max_m {
            report.checked += 1;
            let r = check_strict(ell, m);
            if r.strict || r.unforced_plateaus().next().is_none() {
                report.counterexamples.push(format!(
                    "({ell},{m}): strict={} plateaus={:?}",
                    r.strict, r.plateaus
                ));
            }
        }
    }
    report.finish()
}

fn oracle_limit(n: usize) -> Result<(), CliError> {
    if n > MAX_ORACLE_BOUND {
        return Err(CliError::usage(format!(
            "character oracle supports n <= {MAX_ORACLE_BOUND}, got {n}"
        )));
    }
    Ok(())
}

fn rectangle_identity(max_area: usize, pool: &ThreadPool) -> Result<ClaimReport, CliError> {
    oracle_limit(max_area)?;
    let mut report = ClaimReport::new(Claim::RectangleIdentity, max_area);
    let pairs: Vec<(usize, usize)> = (1..=max_area)
        .flat_map(|ell| (1..=max_area / ell).map(move |m| (ell, m)))
        .collect();
    let outcomes = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(ell, m)| rectangle_identity_check(ell, m, &mut KroneckerOracle::new(ell * m)))
            .collect::<Result<Vec<_>, _>>()
    })?;
    for o in outcomes {
        report.checked += o.checked;
        if let Some(k) = o.offending_k {
            report
                .counterexamples
                .push(format!("({},{}) at k={k}", o.ell, o.m));
        }
    }
    report
        .findings
        .push(format!("{} pairs with l*m <= {max_area}", pairs.len()));
    Ok(report.finish())
}

fn routes(max_n: usize, pool: &ThreadPool) -> Result<ClaimReport, CliError> {
    oracle_limit(max_n)?;
    let mut report = ClaimReport::new(Claim::Routes, max_n);
    for n in 1..=max_n {
        let table = character_table(n, max_n)?;
        let shapes = partitions_of(n);
        let rows: Vec<(usize, Vec<String>)> = pool.install(|| {
            shapes
                .par_iter()
                .map_init(
                    || LrCache::new(n.max(1)),
                    |lr, lambda| {
                        let mut checked = 0;
                        let mut bad = Vec::new();
                        for mu in &shapes {
                            for k in 0..=n / 2 {
                                checked += 1;
                                let nu = Partition::two_row(n, k).expect("k <= n/2");
                                let direct = g_two_row(lambda, mu, k, lr);
                                let oracle = table.kronecker(lambda, mu, &nu);
                                match (direct, oracle) {
                                    (Ok(a), Ok(b)) if a == b => {}
                                    (a, b) => bad.push(format!(
                                        "g({lambda},{mu},{nu}): two-row {a:?}, oracle {b:?}"
                                    )),
                                }
                            }
                        }
                        (checked, bad)
                    },
                )
                .collect()
        });
        for (checked, bad) in rows {
            report.checked += checked;
            report.counterexamples.extend(bad);
        }
    }
    Ok(report.finish())
}

fn semigroup(max_total: usize, seed: u64, samples: usize) -> Result<ClaimReport, CliError> {
    oracle_limit(max_total)?;
    let mut report = ClaimReport::new(Claim::Semigroup, max_total);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = KroneckerOracle::new(max_total);
    let spec = SemigroupSpec { samples, max_total };
    let outcome = semigroup_check(&spec, &mut rng, &mut oracle)?;
    report.checked = outcome.checked;
    report.findings.push(format!(
        "seed {seed}: {} accepted pairs, {} draws rejected for a zero coefficient",
        outcome.checked, outcome.rejected_draws
    ));
    for case in &outcome.violations {
        report.counterexamples.push(format!(
            "({},{},{}) + ({},{},{}): g = {}, {} -> {}",
            case.first.lambda,
            case.first.mu,
            case.first.nu,
            case.second.lambda,
            case.second.mu,
            case.second.nu,
            case.g_first,
            case.g_second,
            case.g_sum
        ));
    }
    Ok(report.finish())
}

fn certify_sweep(max_m: usize, registry: &BaseRegistry, pool: &ThreadPool) -> ClaimReport {
    let mut report = ClaimReport::new(Claim::CertifySweep, max_m);
    let pairs = scan_pairs(5..=max_m, 5..=max_m);
    let verdicts: Vec<Option<String>> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(ell, m)| sweep_one(ell, m, registry))
            .collect()
    });
    report.checked = pairs.len();
    report
        .counterexamples
        .extend(verdicts.into_iter().flatten());
    let exceptions = pairs.iter().filter(|&&(a, b)| is_exception(a, b)).count();
    report.findings.push(format!(
        "{} certified, {} exceptions refused",
        pairs.len() - exceptions,
        exceptions
    ));
    report.finish()
}

/// `None` when the pair behaves as expected, otherwise what went wrong.
fn sweep_one(ell: usize, m: usize, registry: &BaseRegistry) -> Option<String> {
    let direct = check_strict(ell, m).strict;
    let cert = certify(ell, m, registry);
    if is_exception(ell, m) {
        return match (cert, direct) {
            (Err(_), false) => None,
            (Ok(_), _) => Some(format!("({ell},{m}): exception was certified")),
            (Err(_), true) => Some(format!("({ell},{m}): exception is directly strict")),
        };
    }
    match cert {
        Err(e) => Some(format!("({ell},{m}): certify refused: {e}")),
        Ok(cert) => {
            let v = verify(&cert);
            if !v.accepted {
                Some(format!("({ell},{m}): verify rejected: {:?}", v.failure))
            } else if !direct {
                Some(format!("({ell},{m}): verified but not directly strict"))
            } else {
                None
            }
        }
    }
}
