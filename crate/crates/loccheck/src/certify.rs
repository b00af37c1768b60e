//! Exact certification of the two reference counterexamples.
//!
//! Two concrete state pairs are known for which one copy of the source
//! cannot convert to the target, two copies can, and three copies cannot
//! again — refuting the idea that extra copies can only help. This module
//! re-derives all four facts for each pair in exact rational arithmetic
//! from the published decimal spectra, pinning not just the verdicts but
//! the first violated prefix and the exact mass gap there, so any drift in
//! the fixtures or the arithmetic is caught.

use num_rational::BigRational;
use thiserror::Error;

use crate::copies::{necessary_condition, transformable_k, CopiesError};
use crate::spectra::{Spectrum, StatePair};
use crate::weight::Weight;

/// Copy count at which both reference pairs must convert.
pub const SUCCEEDS_AT_COPIES: u32 = 2;
/// Copy count at which both reference pairs must fail again.
pub const FAILS_AT_COPIES: u32 = 3;

/// Expected first failure of a majorization check: the smallest violated
/// prefix length, and the exact amount (as a decimal literal) by which the
/// source prefix mass exceeds the target prefix mass there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedViolation {
    pub prefix: usize,
    pub mass_gap: &'static str,
}

/// One reference pair: spectra as published decimal literals, plus the
/// violation fingerprints its certification must reproduce exactly.
#[derive(Debug, Clone, Copy)]
pub struct ReferencePair<'a> {
    pub label: &'a str,
    pub psi: &'a [&'a str],
    pub phi: &'a [&'a str],
    pub single_copy_violation: ExpectedViolation,
    pub multi_copy_violation: ExpectedViolation,
}

/// The two published counterexample pairs.
pub const REFERENCE_PAIRS: &[ReferencePair<'static>] = &[
    ReferencePair {
        label: "dimension-5 pair",
        psi: &["0.493", "0.284", "0.158", "0.035", "0.030"],
        phi: &["0.598", "0.145", "0.129", "0.125", "0.003"],
        single_copy_violation: ExpectedViolation {
            prefix: 2,
            mass_gap: "0.034",
        },
        multi_copy_violation: ExpectedViolation {
            prefix: 22,
            mass_gap: "0.000631663",
        },
    },
    ReferencePair {
        label: "dimension-6 pair",
        psi: &["0.24", "0.22", "0.22", "0.19", "0.10", "0.03"],
        phi: &["0.27", "0.25", "0.16", "0.16", "0.15", "0.01"],
        single_copy_violation: ExpectedViolation {
            prefix: 4,
            mass_gap: "0.03",
        },
        multi_copy_violation: ExpectedViolation {
            prefix: 62,
            mass_gap: "0.000006",
        },
    },
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("{label}: cannot parse entry {text:?} as an exact rational")]
    InvalidEntry { label: String, text: String },
    #[error("{label}: {source}")]
    BadSpectrum {
        label: String,
        source: crate::spectra::SpectrumError,
    },
    #[error("{label}: source and target dimensions differ")]
    MismatchedPair { label: String },
    #[error(transparent)]
    Copies(#[from] CopiesError),
}

/// Outcome of one certification check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationCheck {
    pub pair_label: String,
    pub name: String,
    pub passed: bool,
    /// What was observed, in exact terms.
    pub detail: String,
}

/// All checks for a set of reference pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certification {
    pub checks: Vec<CertificationCheck>,
}

impl Certification {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CertificationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Certifies the built-in reference pairs.
pub fn certify_reference_pairs() -> Result<Certification, CertifyError> {
    certify_pairs(REFERENCE_PAIRS)
}

/// Certifies an arbitrary table of pairs against their expected violation
/// fingerprints, entirely in exact rational arithmetic.
pub fn certify_pairs(pairs: &[ReferencePair<'_>]) -> Result<Certification, CertifyError> {
    let mut checks = Vec::with_capacity(pairs.len() * 4);
    for reference in pairs {
        let pair = parse_reference(reference)?;
        checks.push(check_necessary(reference, &pair));
        checks.push(check_fails_at(reference, &pair, 1, &reference.single_copy_violation)?);
        checks.push(check_holds_at(reference, &pair, SUCCEEDS_AT_COPIES)?);
        checks.push(check_fails_at(
            reference,
            &pair,
            FAILS_AT_COPIES,
            &reference.multi_copy_violation,
        )?);
    }
    Ok(Certification { checks })
}

fn parse_reference(reference: &ReferencePair<'_>) -> Result<StatePair<BigRational>, CertifyError> {
    let parse_side = |entries: &[&str]| -> Result<Spectrum<BigRational>, CertifyError> {
        let mut values = Vec::with_capacity(entries.len());
        for text in entries {
            values.push(BigRational::parse_decimal(text).ok_or_else(|| {
                CertifyError::InvalidEntry {
                    label: reference.label.to_owned(),
                    text: (*text).to_owned(),
                }
            })?);
        }
        Spectrum::new(values).map_err(|source| CertifyError::BadSpectrum {
            label: reference.label.to_owned(),
            source,
        })
    };
    StatePair::new(parse_side(reference.psi)?, parse_side(reference.phi)?).map_err(|_| {
        CertifyError::MismatchedPair {
            label: reference.label.to_owned(),
        }
    })
}

fn check_necessary(reference: &ReferencePair<'_>, pair: &StatePair<BigRational>) -> CertificationCheck {
    let passed = necessary_condition(pair);
    CertificationCheck {
        pair_label: reference.label.to_owned(),
        name: "extreme entries admissible".to_owned(),
        passed,
        detail: format!(
            "largest {} vs {}, smallest {} vs {}",
            pair.psi().largest(),
            pair.phi().largest(),
            pair.psi().smallest(),
            pair.phi().smallest()
        ),
    }
}

fn check_holds_at(
    reference: &ReferencePair<'_>,
    pair: &StatePair<BigRational>,
    copies: u32,
) -> Result<CertificationCheck, CertifyError> {
    let verdict = transformable_k(pair, copies)?;
    let detail = match verdict.first_violation {
        None => format!("all {} prefixes dominated", pair.dim().pow(copies)),
        Some(m) => format!("violated at prefix {m}"),
    };
    Ok(CertificationCheck {
        pair_label: reference.label.to_owned(),
        name: format!("{copies} {} must convert", copy_noun(copies)),
        passed: verdict.holds,
        detail,
    })
}

fn copy_noun(copies: u32) -> &'static str {
    if copies == 1 {
        "copy"
    } else {
        "copies"
    }
}

fn check_fails_at(
    reference: &ReferencePair<'_>,
    pair: &StatePair<BigRational>,
    copies: u32,
    expected: &ExpectedViolation,
) -> Result<CertificationCheck, CertifyError> {
    let source = crate::copies::tensor_power(pair.psi(), copies)?;
    let target = crate::copies::tensor_power(pair.phi(), copies)?;
    let verdict = target
        .majorizes(&source)
        .expect("tensor powers of an equal-dimension pair share a dimension");
    let expected_gap = BigRational::parse_decimal(expected.mass_gap).ok_or_else(|| {
        CertifyError::InvalidEntry {
            label: reference.label.to_owned(),
            text: expected.mass_gap.to_owned(),
        }
    })?;
    let (passed, detail) = match verdict.first_violation {
        None => (false, "no prefix violated".to_owned()),
        Some(m) => {
            let gap = source.prefix_sums().at(m).clone() - target.prefix_sums().at(m).clone();
            let matches = m == expected.prefix && gap == expected_gap;
            (
                matches,
                format!(
                    "first violated prefix {m} (expected {}), source mass exceeds target by {gap} (expected {expected_gap})",
                    expected.prefix
                ),
            )
        }
    };
    Ok(CertificationCheck {
        pair_label: reference.label.to_owned(),
        name: format!("{copies} {} must not convert", copy_noun(copies)),
        passed,
        detail,
    })
}
