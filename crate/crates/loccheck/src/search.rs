//! Monte Carlo search for copy-nonmonotonicity.
//!
//! The search samples oriented state pairs and looks for two nested events:
//!
//! * **event I** — one copy of psi cannot convert to phi, but `k_success`
//!   copies can. More copies genuinely helped.
//! * **event II** — event I holds, yet `k_fail` (> `k_success`) copies
//!   cannot convert. More copies helped and then stopped helping, a
//!   counterexample to "if k copies convert, so do more than k".
//!
//! Classification runs in f64 for speed; in the default `RationalConfirm`
//! mode every event-II candidate is re-checked in exact rational arithmetic
//! before it is counted, so reported counterexamples carry no floating-point
//! caveat. Work is distributed with rayon over per-sample RNG streams, which
//! makes reports bit-identical across thread counts.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::copies::{necessary_condition, transformable_k, CopiesError, DEFAULT_TENSOR_CAP};
use crate::sampler::{sample_oriented_pair, RngStream, SpectrumDistribution};
use crate::spectra::{Spectrum, StatePair};
use crate::weight::Weight;

/// How the search arbitrates event-II candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Trust the f64 classification as-is.
    Float,
    /// Re-verify every event-II candidate in exact rational arithmetic on
    /// the exact lift of the sampled floats; candidates that fail exact
    /// re-verification are reported as rejected, not counted.
    #[default]
    RationalConfirm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("search dimension must be at least 2, got {dim}")]
    DimensionTooSmall { dim: usize },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("k-success must be at least 2, got {k_success}")]
    KSuccessTooSmall { k_success: u32 },
    #[error("k-fail ({k_fail}) must exceed k-success ({k_success})")]
    KFailNotLarger { k_success: u32, k_fail: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Copies(#[from] CopiesError),
    #[error("pair dimension {found} does not match the configured dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("standard error is undefined for zero trials")]
    ZeroTrials,
}

/// Full parameterization of one search run. Serialized into every report,
/// so a report is a replayable record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dim: usize,
    pub samples: u64,
    pub seed: u64,
    /// Copy count at which conversion must succeed for event I.
    pub k_success: u32,
    /// Copy count at which conversion must fail for event II.
    pub k_fail: u32,
    pub mode: SearchMode,
    pub distribution: SpectrumDistribution,
    /// Cap on counterexamples stored in the report; counts are unaffected.
    pub max_counterexamples_stored: usize,
}

impl SearchConfig {
    pub fn new(dim: usize, samples: u64, seed: u64) -> Self {
        Self {
            dim,
            samples,
            seed,
            k_success: 2,
            k_fail: 3,
            mode: SearchMode::default(),
            distribution: SpectrumDistribution::default(),
            max_counterexamples_stored: 1000,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.dim < 2 {
            return Err(ConfigError::DimensionTooSmall { dim: self.dim }.into());
        }
        if self.samples == 0 {
            return Err(ConfigError::NoSamples.into());
        }
        if self.k_success < 2 {
            return Err(ConfigError::KSuccessTooSmall {
                k_success: self.k_success,
            }
            .into());
        }
        if self.k_fail <= self.k_success {
            return Err(ConfigError::KFailNotLarger {
                k_success: self.k_success,
                k_fail: self.k_fail,
            }
            .into());
        }
        // surface an impossible tensor size now, not after hours of sampling
        let max_copies = self.k_fail;
        let fits = (self.dim as u128)
            .checked_pow(max_copies)
            .is_some_and(|needed| needed <= DEFAULT_TENSOR_CAP as u128);
        if !fits {
            return Err(CopiesError::SizeCapExceeded {
                dim: self.dim,
                copies: max_copies,
                cap: DEFAULT_TENSOR_CAP,
            }
            .into());
        }
        Ok(())
    }
}

/// Where one pair landed in the event hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassification {
    pub event_i: bool,
    pub event_ii: bool,
}

impl PairClassification {
    const NEITHER: Self = Self {
        event_i: false,
        event_ii: false,
    };
}

/// Classifies one pair, using the extreme-entry necessary condition to skip
/// tensor powers for the bulk of samples it already rules out.
pub fn classify_pair<W: Weight>(
    pair: &StatePair<W>,
    config: &SearchConfig,
) -> Result<PairClassification, SearchError> {
    classify_inner(pair, config, true)
}

/// Classification without the necessary-condition fast path; must agree
/// with [`classify_pair`] on every input.
pub fn classify_pair_without_fast_path<W: Weight>(
    pair: &StatePair<W>,
    config: &SearchConfig,
) -> Result<PairClassification, SearchError> {
    classify_inner(pair, config, false)
}

fn classify_inner<W: Weight>(
    pair: &StatePair<W>,
    config: &SearchConfig,
    use_fast_path: bool,
) -> Result<PairClassification, SearchError> {
    if pair.dim() != config.dim {
        return Err(SearchError::DimensionMismatch {
            expected: config.dim,
            found: pair.dim(),
        });
    }
    if use_fast_path && !necessary_condition(pair) {
        // fails at every copy count, so neither event can occur
        return Ok(PairClassification::NEITHER);
    }
    if transformable_k(pair, 1)?.holds {
        return Ok(PairClassification::NEITHER);
    }
    if !transformable_k(pair, config.k_success)?.holds {
        return Ok(PairClassification::NEITHER);
    }
    let event_ii = !transformable_k(pair, config.k_fail)?.holds;
    Ok(PairClassification {
        event_i: true,
        event_ii,
    })
}

/// One stored event-II hit: the sampled pair and the stream that produced
/// it, enough to replay the classification from scratch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub sample_index: u64,
    pub psi: Spectrum<f64>,
    pub phi: Spectrum<f64>,
}

impl Counterexample {
    pub fn pair(&self) -> StatePair<f64> {
        StatePair::new(self.psi.clone(), self.phi.clone())
            .expect("stored counterexample spectra share a dimension")
    }
}

/// Outcome of a search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub n_sampled: u64,
    /// Pairs where one copy fails but `k_success` copies succeed.
    pub n_event_i: u64,
    /// Event-I pairs where `k_fail` copies fail again (confirmed ones only
    /// under `RationalConfirm`).
    pub n_event_ii_given_i: u64,
    /// Event-II candidates discarded by exact rational re-verification.
    pub n_confirmation_rejected: u64,
    pub fraction_i: f64,
    pub stderr_i: f64,
    /// Conditional fraction of event II among event-I pairs; `None` when no
    /// event-I pair was seen.
    pub fraction_ii_given_i: Option<f64>,
    pub stderr_ii_given_i: Option<f64>,
    pub counterexamples: Vec<Counterexample>,
    /// Wall-clock time; informational only, excluded from equality.
    pub duration_seconds: f64,
}

impl SearchReport {
    /// Everything except wall-clock time, which legitimately varies between
    /// otherwise identical runs.
    pub fn deterministic_eq(&self, other: &Self) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.duration_seconds = 0.0;
        b.duration_seconds = 0.0;
        a == b
    }
}

/// Binomial standard error sqrt(p(1-p)/n) of a success fraction.
pub fn binomial_stderr(successes: u64, trials: u64) -> Result<f64, SearchError> {
    if trials == 0 {
        return Err(SearchError::ZeroTrials);
    }
    let p = successes as f64 / trials as f64;
    Ok((p * (1.0 - p) / trials as f64).sqrt())
}

#[derive(Default)]
struct Tally {
    event_i: u64,
    event_ii: u64,
    rejected: u64,
    hits: Vec<Counterexample>,
}

impl Tally {
    /// Merges two tallies whose sample-index ranges are adjacent with
    /// `self` first, so concatenation preserves global sample order and the
    /// stored prefix is independent of how rayon split the work.
    fn merge(mut self, right: Self, cap: usize) -> Self {
        self.event_i += right.event_i;
        self.event_ii += right.event_ii;
        self.rejected += right.rejected;
        self.hits.extend(right.hits);
        self.hits.truncate(cap);
        self
    }
}

/// Runs the search described by `config`. Deterministic given the config:
/// thread count and scheduling cannot change any reported number except
/// `duration_seconds`.
pub fn run_search(config: &SearchConfig) -> Result<SearchReport, SearchError> {
    config.validate()?;
    let started = Instant::now();
    let cap = config.max_counterexamples_stored;

    let tally = (0..config.samples)
        .into_par_iter()
        .try_fold(Tally::default, |mut tally, sample_index| -> Result<Tally, SearchError> {
            let mut stream = RngStream::new(config.seed, sample_index);
            let pair = sample_oriented_pair(config.dim, config.distribution, &mut stream);
            let classification = classify_pair(&pair, config)?;
            if classification.event_i {
                tally.event_i += 1;
            }
            if classification.event_ii {
                let confirmed = match config.mode {
                    SearchMode::Float => true,
                    SearchMode::RationalConfirm => {
                        let exact = classify_pair(&pair.to_exact(), config)?;
                        exact.event_i && exact.event_ii
                    }
                };
                if confirmed {
                    tally.event_ii += 1;
                    if tally.hits.len() < cap {
                        tally.hits.push(Counterexample {
                            sample_index,
                            psi: pair.psi().clone(),
                            phi: pair.phi().clone(),
                        });
                    }
                } else {
                    tally.rejected += 1;
                }
            }
            Ok(tally)
        })
        .try_reduce(Tally::default, |left, right| Ok(left.merge(right, cap)))?;

    let fraction_i = tally.event_i as f64 / config.samples as f64;
    let stderr_i = binomial_stderr(tally.event_i, config.samples)?;
    let (fraction_ii_given_i, stderr_ii_given_i) = if tally.event_i > 0 {
        (
            Some(tally.event_ii as f64 / tally.event_i as f64),
            Some(binomial_stderr(tally.event_ii, tally.event_i)?),
        )
    } else {
        (None, None)
    };

    Ok(SearchReport {
        config: config.clone(),
        n_sampled: config.samples,
        n_event_i: tally.event_i,
        n_event_ii_given_i: tally.event_ii,
        n_confirmation_rejected: tally.rejected,
        fraction_i,
        stderr_i,
        fraction_ii_given_i,
        stderr_ii_given_i,
        counterexamples: tally.hits,
        duration_seconds: started.elapsed().as_secs_f64(),
    })
}
