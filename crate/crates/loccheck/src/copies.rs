//! Tensor powers and multi-copy convertibility.
//!
//! The spectrum of k copies of a state is the k-fold tensor power of its
//! single-copy spectrum: all k-fold products of entries, re-sorted
//! descending. Convertibility of k copies is then the ordinary majorization
//! check on the two d^k-entry power spectra. Because d^k grows fast, every
//! tensor power goes through an explicit entry cap.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::spectra::{MajorizationVerdict, Spectrum, StatePair};
use crate::weight::Weight;

/// Default ceiling on tensor-power size, in spectrum entries.
pub const DEFAULT_TENSOR_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CopiesError {
    #[error("copy count must be at least 1")]
    ZeroCopies,
    #[error(
        "tensor power of a dimension-{dim} spectrum at {copies} copies exceeds the cap of {cap} entries"
    )]
    SizeCapExceeded { dim: usize, copies: u32, cap: usize },
    #[error("cannot embed a dimension-{from} spectrum into dimension {to}")]
    EmbedShrink { from: usize, to: usize },
}

/// The k-fold tensor power of a spectrum, under [`DEFAULT_TENSOR_CAP`].
pub fn tensor_power<W: Weight>(spectrum: &Spectrum<W>, copies: u32) -> Result<Spectrum<W>, CopiesError> {
    tensor_power_capped(spectrum, copies, DEFAULT_TENSOR_CAP)
}

/// The k-fold tensor power of a spectrum, refused if it would exceed `cap`
/// entries.
pub fn tensor_power_capped<W: Weight>(
    spectrum: &Spectrum<W>,
    copies: u32,
    cap: usize,
) -> Result<Spectrum<W>, CopiesError> {
    if copies == 0 {
        return Err(CopiesError::ZeroCopies);
    }
    let cap_exceeded = CopiesError::SizeCapExceeded {
        dim: spectrum.dim(),
        copies,
        cap,
    };
    let needed = (spectrum.dim() as u128)
        .checked_pow(copies)
        .ok_or(cap_exceeded)?;
    if needed > cap as u128 {
        return Err(cap_exceeded);
    }
    let mut products = vec![W::one()];
    for _ in 0..copies {
        let mut next = Vec::with_capacity(products.len() * spectrum.dim());
        for acc in &products {
            for value in spectrum.values() {
                next.push(acc.clone() * value.clone());
            }
        }
        products = next;
    }
    Ok(Spectrum::from_unit_mass(products))
}

/// Whether k copies of the source convert to k copies of the target:
/// majorization on the k-fold tensor powers.
pub fn transformable_k<W: Weight>(
    pair: &StatePair<W>,
    copies: u32,
) -> Result<MajorizationVerdict, CopiesError> {
    let source = tensor_power(pair.psi(), copies)?;
    let target = tensor_power(pair.phi(), copies)?;
    Ok(target
        .majorizes(&source)
        .expect("tensor powers of an equal-dimension pair share a dimension"))
}

/// Necessary condition for k-copy convertibility at *any* k: the largest
/// source entry must not exceed the largest target entry, and the smallest
/// source entry must not fall below the smallest target entry. Both compare
/// extreme tensor-power prefixes, which scale as k-th powers, so a strict
/// failure here rules out every copy count at once.
pub fn necessary_condition<W: Weight>(pair: &StatePair<W>) -> bool {
    pair.psi().largest() <= pair.phi().largest() && pair.psi().smallest() >= pair.phi().smallest()
}

/// Pads a spectrum with exact zeros up to `target_dim`, embedding the state
/// in a larger Hilbert space without changing it physically.
pub fn embed<W: Weight>(spectrum: &Spectrum<W>, target_dim: usize) -> Result<Spectrum<W>, CopiesError> {
    if target_dim < spectrum.dim() {
        return Err(CopiesError::EmbedShrink {
            from: spectrum.dim(),
            to: target_dim,
        });
    }
    let mut values = spectrum.values().to_vec();
    values.resize(target_dim, W::zero());
    Ok(Spectrum::from_unit_mass(values))
}

/// Majorization verdicts for a set of copy counts on one state pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyVerdicts {
    per_copy: BTreeMap<u32, MajorizationVerdict>,
}

impl CopyVerdicts {
    /// Runs [`transformable_k`] for each requested copy count.
    pub fn evaluate<W: Weight>(
        pair: &StatePair<W>,
        copy_counts: &[u32],
    ) -> Result<Self, CopiesError> {
        let mut per_copy = BTreeMap::new();
        for &copies in copy_counts {
            per_copy.insert(copies, transformable_k(pair, copies)?);
        }
        Ok(Self { per_copy })
    }

    pub fn verdict(&self, copies: u32) -> Option<&MajorizationVerdict> {
        self.per_copy.get(&copies)
    }

    pub fn all_hold(&self) -> bool {
        self.per_copy.values().all(|v| v.holds)
    }

    /// Verdicts in increasing copy order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &MajorizationVerdict)> {
        self.per_copy.iter().map(|(k, v)| (*k, v))
    }
}
