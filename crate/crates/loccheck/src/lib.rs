//! Exact LOCC convertibility of bipartite pure states.
//!
//! Whether one bipartite pure state can be converted into another by local
//! operations and classical communication — deterministically, exactly, and
//! without asymptotics — is decided entirely by majorization of the two
//! Schmidt spectra: the conversion exists precisely when every prefix sum
//! of the target spectrum dominates the matching prefix sum of the source.
//! This crate implements that check, extends it to k copies via tensor
//! powers, and provides two tools built on top of it:
//!
//! * a reproducible Monte Carlo search ([`search`]) for state pairs where
//!   one copy cannot convert but two copies can (event I), and where three
//!   copies then cannot again (event II) — counterexamples to the intuition
//!   that extra copies can only help;
//! * an exact-arithmetic certifier ([`certify`]) that re-derives the two
//!   published reference counterexamples from their decimal spectra with
//!   no floating point anywhere.
//!
//! Spectra are generic over the arithmetic ([`weight::Weight`]): `f64` for
//! the search hot path, arbitrary-precision rationals for certificates.
//! Randomness is counter-based — one RNG stream per sample index — so
//! search reports are bit-identical across thread counts.
//!
//! ```
//! use loccheck::spectra::{Spectrum, StatePair};
//! use loccheck::copies::transformable_k;
//!
//! let psi: Spectrum<f64> = Spectrum::parse_line("0.5 0.3 0.2").unwrap();
//! let phi: Spectrum<f64> = Spectrum::parse_line("0.6 0.3 0.1").unwrap();
//! let pair = StatePair::new(psi, phi).unwrap();
//! assert!(transformable_k(&pair, 1).unwrap().holds);
//! ```

pub mod certify;
pub mod cli;
pub mod copies;
pub mod report;
pub mod sampler;
pub mod search;
pub mod spectra;
pub mod weight;

pub use certify::{
    certify_pairs, certify_reference_pairs, Certification, ReferencePair, REFERENCE_PAIRS,
};
pub use copies::{
    embed, necessary_condition, tensor_power, tensor_power_capped, transformable_k, CopyVerdicts,
    DEFAULT_TENSOR_CAP,
};
pub use report::{CheckReport, ReportBody, ReportDocument, SCHEMA_VERSION};
pub use sampler::{sample_oriented_pair, sample_spectrum, RngStream, SpectrumDistribution};
pub use search::{
    binomial_stderr, classify_pair, run_search, PairClassification, SearchConfig, SearchMode,
    SearchReport,
};
pub use spectra::{MajorizationVerdict, PrefixSums, Spectrum, StatePair};
pub use weight::{NumericMode, Weight};
