//! Property-based invariants over the public API.
//!
//! Order-theoretic laws (transitivity, antisymmetry, Schur concavity,
//! copy monotonicity) are exercised in exact rational arithmetic, where
//! they are theorems rather than approximations; float-mode properties are
//! limited to facts that hold bit-for-bit (identical summation order,
//! monotone rounding) or carry the documented tolerances.

use loccheck::copies::{embed, necessary_condition, tensor_power, transformable_k};
use loccheck::sampler::{sample_oriented_pair, RngStream, SpectrumDistribution};
use loccheck::spectra::{Spectrum, StatePair};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn raw_weights(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..10.0, dim..=dim)
        .prop_filter("positive mass", |v| v.iter().sum::<f64>() > 0.0)
}

fn float_spectrum(dim: usize) -> impl Strategy<Value = Spectrum<f64>> {
    raw_weights(dim).prop_map(|v| Spectrum::new(v).unwrap())
}

fn rational_spectrum(dim: usize) -> impl Strategy<Value = Spectrum<BigRational>> {
    float_spectrum(dim).prop_map(|s| s.to_exact())
}

fn float_pair() -> impl Strategy<Value = StatePair<f64>> {
    (2usize..=6).prop_flat_map(|dim| {
        (float_spectrum(dim), float_spectrum(dim))
            .prop_map(|(a, b)| StatePair::new(a, b).unwrap())
    })
}

fn rational_pair(max_dim: usize) -> impl Strategy<Value = StatePair<BigRational>> {
    (2usize..=max_dim).prop_flat_map(|dim| {
        (rational_spectrum(dim), rational_spectrum(dim))
            .prop_map(|(a, b)| StatePair::new(a, b).unwrap())
    })
}

/// A Robin Hood transfer: moves `sixteenths/16` of half the gap from a
/// larger entry to a smaller one. The result is strictly flatter, hence
/// majorized by the input; it majorizes the input only if nothing moved.
fn robin_hood(
    s: &Spectrum<BigRational>,
    give: usize,
    take: usize,
    sixteenths: u32,
) -> Spectrum<BigRational> {
    let mut values = s.values().to_vec();
    let (hi, lo) = (give.min(take), give.max(take));
    let gap = values[hi].clone() - values[lo].clone();
    let delta = gap * BigRational::new(sixteenths.into(), 32.into());
    values[hi] = values[hi].clone() - delta.clone();
    values[lo] = values[lo].clone() + delta;
    Spectrum::new(values).unwrap()
}

/// Transfer parameters: two distinct indices and a transfer size.
fn transfer(dim: usize) -> impl Strategy<Value = (usize, usize, u32)> {
    (0..dim, 0..dim, 1u32..=16).prop_filter("distinct indices", |(a, b, _)| a != b)
}

fn rational_chain() -> impl Strategy<Value = (Spectrum<BigRational>, (usize, usize, u32), (usize, usize, u32))>
{
    (2usize..=9).prop_flat_map(|dim| (rational_spectrum(dim), transfer(dim), transfer(dim)))
}

/// `parts` summing to 1000 — spectra on the 3-decimal-digit grid.
fn milli_parts(dim: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=1000, dim - 1).prop_map(|mut cuts| {
        cuts.push(0);
        cuts.push(1000);
        cuts.sort_unstable();
        cuts.windows(2).map(|w| w[1] - w[0]).collect()
    })
}

fn milli_line(parts: &[u32]) -> String {
    parts
        .iter()
        .map(|p| format!("{}.{:03}", p / 1000, p % 1000))
        .collect::<Vec<_>>()
        .join(" ")
}

fn milli_pair_lines() -> impl Strategy<Value = (String, String)> {
    (2usize..=6).prop_flat_map(|dim| {
        (milli_parts(dim), milli_parts(dim))
            .prop_map(|(a, b)| (milli_line(&a), milli_line(&b)))
    })
}

proptest! {
    #[test]
    fn construction_invariants(weights in (1usize..=9).prop_flat_map(raw_weights)) {
        let s = Spectrum::new(weights).unwrap();
        prop_assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(s.values().iter().all(|v| *v >= 0.0));
        let total: f64 = s.values().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-9);
        // reconstruction from an already-valid spectrum changes nothing
        let again = Spectrum::new(s.values().to_vec()).unwrap();
        prop_assert_eq!(&again, &s);
    }

    #[test]
    fn normalization_lands_within_1e12(weights in (1usize..=9).prop_flat_map(raw_weights)) {
        // force an actual division by pushing the sum far from one
        let scaled: Vec<f64> = weights.iter().map(|w| w * 3.0 + 0.125).collect();
        let s = Spectrum::new(scaled).unwrap();
        let total: f64 = s.values().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12, "total {total}");
    }

    #[test]
    fn prefix_sums_are_monotone_and_exhaustive(s in (1usize..=9).prop_flat_map(rational_spectrum)) {
        let p = s.prefix_sums();
        prop_assert_eq!(p.len(), s.dim());
        for m in 2..=p.len() {
            prop_assert!(p.at(m - 1) <= p.at(m));
        }
        prop_assert!(p.total().is_one());
    }

    #[test]
    fn majorization_is_reflexive(s in (1usize..=9).prop_flat_map(float_spectrum)) {
        prop_assert!(s.majorizes(&s).unwrap().holds);
        let exact = s.to_exact();
        prop_assert!(exact.majorizes(&exact).unwrap().holds);
    }

    #[test]
    fn robin_hood_transfers_are_majorized(
        (s, t, _) in rational_chain()
    ) {
        let flattened = robin_hood(&s, t.0, t.1, t.2);
        prop_assert!(s.majorizes(&flattened).unwrap().holds);
        // the reverse direction holds only when nothing actually moved
        if flattened.majorizes(&s).unwrap().holds {
            prop_assert_eq!(flattened.values(), s.values());
        }
    }

    #[test]
    fn majorization_is_transitive((a, t1, t2) in rational_chain()) {
        let b = robin_hood(&a, t1.0, t1.1, t1.2);
        let c = robin_hood(&b, t2.0, t2.1, t2.2);
        prop_assert!(a.majorizes(&b).unwrap().holds);
        prop_assert!(b.majorizes(&c).unwrap().holds);
        prop_assert!(a.majorizes(&c).unwrap().holds);
    }

    #[test]
    fn mutual_majorization_implies_equality(pair in rational_pair(6)) {
        let forward = pair.phi().majorizes(pair.psi()).unwrap().holds;
        let backward = pair.psi().majorizes(pair.phi()).unwrap().holds;
        if forward && backward {
            prop_assert_eq!(pair.psi().values(), pair.phi().values());
        }
    }

    #[test]
    fn tensor_power_laws(s in (2usize..=4).prop_flat_map(float_spectrum), k in 1u32..=3) {
        let power = tensor_power(&s, k).unwrap();
        prop_assert_eq!(power.dim(), s.dim().pow(k));
        prop_assert!(power.values().windows(2).all(|w| w[0] >= w[1]));
        let total: f64 = power.values().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-9 * power.dim() as f64);
        // extreme entries are the k-th powers of the extremes, bit for bit
        let chain = |v: f64| (0..k).fold(1.0f64, |acc, _| acc * v);
        prop_assert_eq!(*power.largest(), chain(*s.largest()));
        prop_assert_eq!(*power.smallest(), chain(*s.smallest()));

        let exact = tensor_power(&s.to_exact(), k).unwrap();
        prop_assert!(exact.prefix_sums().total().is_one());
        let chain_exact = (0..k).fold(BigRational::one(), |acc, _| acc * s.to_exact().largest().clone());
        prop_assert_eq!(exact.largest().clone(), chain_exact);
    }

    #[test]
    fn single_tensor_power_is_identity(s in (1usize..=9).prop_flat_map(float_spectrum)) {
        prop_assert_eq!(tensor_power(&s, 1).unwrap(), s);
    }

    #[test]
    fn padding_never_changes_verdicts(pair in float_pair(), extra in 1usize..=3) {
        let padded = StatePair::new(
            embed(pair.psi(), pair.dim() + extra).unwrap(),
            embed(pair.phi(), pair.dim() + extra).unwrap(),
        )
        .unwrap();
        for k in 1..=2 {
            let original = transformable_k(&pair, k).unwrap();
            let after = transformable_k(&padded, k).unwrap();
            prop_assert_eq!(original, after);
        }
        // zero entries contribute nothing to entropy, bit for bit
        prop_assert_eq!(pair.psi().entropy_bits(), embed(pair.psi(), pair.dim() + extra).unwrap().entropy_bits());
    }

    #[test]
    fn failed_necessary_condition_blocks_every_copy_count(pair in rational_pair(4)) {
        if !necessary_condition(&pair) {
            for k in 1..=3 {
                prop_assert!(!transformable_k(&pair, k).unwrap().holds);
            }
        }
    }

    #[test]
    fn single_copy_success_extends_to_more_copies((a, t) in
        (2usize..=4).prop_flat_map(|d| (rational_spectrum(d), transfer(d)))
    ) {
        // psi = flattened phi converts in one copy by construction
        let phi = a;
        let psi = robin_hood(&phi, t.0, t.1, t.2);
        let pair = StatePair::new(psi, phi).unwrap();
        prop_assert!(transformable_k(&pair, 1).unwrap().holds);
        prop_assert!(transformable_k(&pair, 2).unwrap().holds);
        prop_assert!(transformable_k(&pair, 3).unwrap().holds);
    }

    #[test]
    fn three_dimensional_pairs_never_gain_from_copies(pair in rational_pair(3)) {
        if pair.dim() == 3 && !transformable_k(&pair, 1).unwrap().holds {
            prop_assert!(!transformable_k(&pair, 2).unwrap().holds);
            prop_assert!(!transformable_k(&pair, 3).unwrap().holds);
        }
    }

    #[test]
    fn entropy_is_bounded_and_schur_concave((a, t) in
        (2usize..=9).prop_flat_map(|d| (rational_spectrum(d), transfer(d)))
    ) {
        let flattened = robin_hood(&a, t.0, t.1, t.2);
        let peaked_entropy = a.entropy_bits();
        let flat_entropy = flattened.entropy_bits();
        let log_dim = (a.dim() as f64).log2();
        prop_assert!(peaked_entropy >= 0.0 && peaked_entropy <= log_dim + 1e-12);
        // a majorizes flattened, so its entropy cannot be larger
        prop_assert!(flat_entropy >= peaked_entropy - 1e-9);
    }

    #[test]
    fn grid_spectra_agree_across_arithmetic((psi_line, phi_line) in milli_pair_lines()) {
        let psi_r: Spectrum<BigRational> = Spectrum::parse_line(&psi_line).unwrap();
        let phi_r: Spectrum<BigRational> = Spectrum::parse_line(&phi_line).unwrap();
        let rational = phi_r.majorizes(&psi_r).unwrap();

        // a prefix tie is below every float tolerance; there the rational
        // verdict is authoritative and the float one is unasserted
        let active = psi_r.support_len().max(phi_r.support_len());
        let source_prefix = psi_r.prefix_sums();
        let target_prefix = phi_r.prefix_sums();
        let tied = (1..active).any(|m| source_prefix.at(m) == target_prefix.at(m));
        if !tied {
            let psi_f: Spectrum<f64> = Spectrum::parse_line(&psi_line).unwrap();
            let phi_f: Spectrum<f64> = Spectrum::parse_line(&phi_line).unwrap();
            let float = phi_f.majorizes(&psi_f).unwrap();
            prop_assert_eq!(float.holds, rational.holds);
            prop_assert_eq!(float.first_violation, rational.first_violation);
        }
    }

    #[test]
    fn sampled_pairs_obey_orientation(seed in 0u64..1000, index in 0u64..1000) {
        let mut stream = RngStream::new(seed, index);
        let pair = sample_oriented_pair(5, SpectrumDistribution::UniformWeights, &mut stream);
        prop_assert!(pair.psi().largest() <= pair.phi().largest());
        prop_assert!(pair.is_oriented());
        let mut replay = RngStream::new(seed, index);
        prop_assert_eq!(sample_oriented_pair(5, SpectrumDistribution::UniformWeights, &mut replay), pair);
    }

    #[test]
    fn float_spectra_survive_json_round_trip(s in (1usize..=9).prop_flat_map(float_spectrum)) {
        let json = serde_json::to_string(&s).unwrap();
        let back: Spectrum<f64> = serde_json::from_str(&json).unwrap();
        for (a, b) in s.values().iter().zip(back.values()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
