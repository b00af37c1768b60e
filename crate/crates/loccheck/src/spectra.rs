//! Schmidt spectra and the majorization criterion.
//!
//! A bipartite pure state is classified, for the purposes of exact
//! deterministic LOCC conversion, entirely by its Schmidt spectrum: the
//! descending-sorted probability vector of squared Schmidt coefficients.
//! |psi> converts to |phi> by LOCC exactly when the target spectrum
//! majorizes the source spectrum, i.e. every prefix sum of the target
//! dominates the matching prefix sum of the source.
//!
//! [`Spectrum`] enforces the representation invariants (descending order,
//! nonnegative entries, unit total mass) at construction, so the checks in
//! the rest of the crate never re-validate.

use std::ops::Add;

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::weight::{NumericMode, Weight};

/// Rejected spectrum input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("spectrum has no entries")]
    Empty,
    #[error("entry {index} is negative")]
    NegativeEntry { index: usize },
    #[error("entry {index} is not finite")]
    NonFiniteEntry { index: usize },
    #[error("entries sum to zero, cannot normalize")]
    ZeroTotalMass,
    #[error("cannot parse {text:?} as a {mode} spectrum entry")]
    InvalidLiteral { text: String, mode: NumericMode },
}

/// Two spectra were combined that do not share a dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("spectra have different dimensions ({left} vs {right})")]
pub struct DimensionMismatch {
    pub left: usize,
    pub right: usize,
}

/// A Schmidt spectrum: descending, nonnegative, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<W: Weight> {
    values: Vec<W>,
}

impl<W: Weight> Spectrum<W> {
    /// Builds a spectrum from raw squared Schmidt coefficients.
    ///
    /// Entries are validated, normalized to unit total mass, and sorted
    /// descending. In float mode a total within 1e-9 of one is accepted
    /// as-is (no division), so constructing from an already-normalized
    /// vector is the identity; in rational mode normalization is exact.
    pub fn new(mut values: Vec<W>) -> Result<Self, SpectrumError> {
        if values.is_empty() {
            return Err(SpectrumError::Empty);
        }
        for (index, value) in values.iter().enumerate() {
            if !value.is_finite_value() {
                return Err(SpectrumError::NonFiniteEntry { index });
            }
            if *value < W::zero() {
                return Err(SpectrumError::NegativeEntry { index });
            }
        }
        let total = values.iter().cloned().fold(W::zero(), Add::add);
        if total.is_zero() {
            return Err(SpectrumError::ZeroTotalMass);
        }
        if !W::total_is_unit(&total) {
            for value in &mut values {
                *value = value.clone() / total.clone();
            }
        }
        values.sort_unstable_by(|a, b| b.partial_cmp(a).expect("entries are finite"));
        Ok(Self { values })
    }

    /// Parses one spectrum from a line of whitespace- or comma-separated
    /// decimal literals, e.g. `0.493 0.284 0.158 0.035 0.030`.
    pub fn parse_line(line: &str) -> Result<Self, SpectrumError> {
        let mut entries = Vec::new();
        for token in line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|token| !token.is_empty())
        {
            let value = W::parse_decimal(token).ok_or_else(|| SpectrumError::InvalidLiteral {
                text: token.to_owned(),
                mode: W::MODE,
            })?;
            entries.push(value);
        }
        Self::new(entries)
    }

    /// Trusted constructor for entries that are already nonnegative with
    /// unit total mass (tensor products, zero-padding). Only re-sorts.
    pub(crate) fn from_unit_mass(mut values: Vec<W>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.iter().all(|v| *v >= W::zero()));
        values.sort_unstable_by(|a, b| b.partial_cmp(a).expect("entries are finite"));
        Self { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Entries in descending order.
    pub fn values(&self) -> &[W] {
        &self.values
    }

    pub fn largest(&self) -> &W {
        &self.values[0]
    }

    pub fn smallest(&self) -> &W {
        &self.values[self.values.len() - 1]
    }

    /// Number of strictly positive entries (the Schmidt rank).
    pub fn support_len(&self) -> usize {
        self.values.iter().take_while(|v| !v.is_zero()).count()
    }

    pub fn prefix_sums(&self) -> PrefixSums<W> {
        let mut partial = Vec::with_capacity(self.values.len());
        let mut running = W::zero();
        for value in &self.values {
            running = running + value.clone();
            partial.push(running.clone());
        }
        PrefixSums { partial }
    }

    /// Shannon entropy of the spectrum in bits (the entanglement entropy
    /// of the state). Always computed in f64; terms with p = 0 contribute 0.
    pub fn entropy_bits(&self) -> f64 {
        self.values
            .iter()
            .map(Weight::to_f64_lossy)
            .filter(|p| *p > 0.0)
            .map(|p| -p * p.log2())
            .sum()
    }

    /// Whether `self` majorizes `source`: every prefix sum of `self`
    /// dominates the matching prefix sum of `source`. This is exactly the
    /// condition for `source` to be convertible into `self` by LOCC.
    ///
    /// Prefixes past the longer of the two supports compare total mass
    /// against total mass — 1 against 1 by the unit-sum invariant — so they
    /// are skipped rather than recomputed; in float mode recomputing them
    /// would turn an exact tie into a rounding coin flip.
    pub fn majorizes(&self, source: &Self) -> Result<MajorizationVerdict, DimensionMismatch> {
        if self.dim() != source.dim() {
            return Err(DimensionMismatch {
                left: self.dim(),
                right: source.dim(),
            });
        }
        let active = self.support_len().max(source.support_len());
        let mut target_prefix = W::zero();
        let mut source_prefix = W::zero();
        for m in 1..active {
            target_prefix = target_prefix + self.values[m - 1].clone();
            source_prefix = source_prefix + source.values[m - 1].clone();
            if source_prefix > target_prefix {
                return Ok(MajorizationVerdict {
                    holds: false,
                    first_violation: Some(m),
                });
            }
        }
        Ok(MajorizationVerdict {
            holds: true,
            first_violation: None,
        })
    }
}

impl Spectrum<f64> {
    /// Exact rational spectrum equal to these binary float values,
    /// renormalized to exact unit mass.
    pub fn to_exact(&self) -> Spectrum<BigRational> {
        let values = self
            .values
            .iter()
            .map(|v| BigRational::from_f64_exact(*v).expect("spectrum entries are finite"))
            .collect();
        Spectrum::new(values).expect("a valid float spectrum lifts to a valid rational spectrum")
    }
}

// Float spectra serialize as 17-significant-digit decimal strings, which
// reparse to the same bits (the constructor's 1e-9 window skips
// renormalization, so the round trip is lossless).
impl Serialize for Spectrum<f64> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.values.iter().map(|v| v.render_exact()))
    }
}

impl<'de> Deserialize<'de> for Spectrum<f64> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rendered = Vec::<String>::deserialize(deserializer)?;
        let mut values = Vec::with_capacity(rendered.len());
        for text in &rendered {
            values.push(f64::parse_decimal(text).ok_or_else(|| {
                D::Error::custom(format!("invalid spectrum entry {text:?}"))
            })?);
        }
        Spectrum::new(values).map_err(D::Error::custom)
    }
}

/// Running prefix sums of a spectrum, 1-based: `at(m)` is the mass of the
/// `m` largest entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixSums<W: Weight> {
    partial: Vec<W>,
}

impl<W: Weight> PrefixSums<W> {
    pub fn len(&self) -> usize {
        self.partial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partial.is_empty()
    }

    /// Sum of the `m` largest entries, `1 <= m <= len`.
    pub fn at(&self, m: usize) -> &W {
        &self.partial[m - 1]
    }

    /// Total mass; exactly 1 in rational mode.
    pub fn total(&self) -> &W {
        &self.partial[self.partial.len() - 1]
    }
}

/// Verdict of one majorization check.
///
/// `first_violation` is the smallest prefix length `m` (1-based) at which
/// the source mass exceeds the target mass, when the check fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

/// An ordered pair of equal-dimension spectra: `psi` is the source state,
/// `phi` the target of the attempted conversion.
#[derive(Debug, Clone)]
pub struct StatePair<W: Weight> {
    psi: Spectrum<W>,
    phi: Spectrum<W>,
    oriented: bool,
}

/// Pair identity is the two spectra in order; whether the canonical
/// orientation rule produced them is bookkeeping, not identity.
impl<W: Weight> PartialEq for StatePair<W> {
    fn eq(&self, other: &Self) -> bool {
        self.psi == other.psi && self.phi == other.phi
    }
}

impl<W: Weight> StatePair<W> {
    pub fn new(psi: Spectrum<W>, phi: Spectrum<W>) -> Result<Self, DimensionMismatch> {
        if psi.dim() != phi.dim() {
            return Err(DimensionMismatch {
                left: psi.dim(),
                right: phi.dim(),
            });
        }
        Ok(Self {
            psi,
            phi,
            oriented: false,
        })
    }

    /// Pairs two spectra with the canonical search orientation: the one
    /// with the smaller largest entry becomes the source `psi`. A single
    /// copy of psi then cannot convert to phi only if some later prefix
    /// flips, which is the interesting direction to probe. Ties keep the
    /// argument order.
    pub fn oriented(first: Spectrum<W>, second: Spectrum<W>) -> Result<Self, DimensionMismatch> {
        let mut pair = if first.largest() > second.largest() {
            Self::new(second, first)?
        } else {
            Self::new(first, second)?
        };
        pair.oriented = true;
        Ok(pair)
    }

    pub fn psi(&self) -> &Spectrum<W> {
        &self.psi
    }

    pub fn phi(&self) -> &Spectrum<W> {
        &self.phi
    }

    pub fn dim(&self) -> usize {
        self.psi.dim()
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }
}

impl StatePair<f64> {
    /// Lifts both spectra to exact rationals, preserving orientation.
    pub fn to_exact(&self) -> StatePair<BigRational> {
        StatePair {
            psi: self.psi.to_exact(),
            phi: self.phi.to_exact(),
            oriented: self.oriented,
        }
    }
}
