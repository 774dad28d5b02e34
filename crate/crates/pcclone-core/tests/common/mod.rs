//! Shared generators for the integration tests.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::Rng;

use pcclone_core::channels::{make_channel, KrausChannel};
use pcclone_core::qlinalg::ComplexMatrix;

/// Random phase-covariant qubit channel.
///
/// The family is parametrized by ground/excited retention probabilities
/// p, q ∈ [0,1] and a complex coherence factor z with |z|² ≤ pq; four
/// Kraus operators (retention, decay, excitation, residual dephasing)
/// realize exactly the channel whose diagonal action is
/// |0⟩⟨0| ↦ diag(p, 1−p), |1⟩⟨1| ↦ diag(1−q, q) and whose off-diagonal
/// action is |1⟩⟨0| ↦ z·|1⟩⟨0|. Every phase-covariant qubit channel
/// arises this way.
pub fn random_covariant_channel(rng: &mut StdRng, real_coherence: bool) -> KrausChannel {
    let p: f64 = rng.gen_range(0.05..0.95);
    let q: f64 = rng.gen_range(0.05..0.95);
    let zmag = (p * q).sqrt() * rng.gen_range(0.0..0.999f64);
    let phase = if real_coherence {
        0.0
    } else {
        rng.gen_range(0.0..std::f64::consts::TAU)
    };
    let z = Complex64::from_polar(zmag, phase);
    covariant_channel_from(p, q, z)
}

/// The explicit four-operator Kraus realization for given (p, q, z).
pub fn covariant_channel_from(p: f64, q: f64, z: Complex64) -> KrausChannel {
    let zero = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    let retention = ComplexMatrix::new(2, 2, vec![re(p.sqrt()), zero, zero, z / p.sqrt()]).unwrap();
    let decay = ComplexMatrix::new(2, 2, vec![zero, re((1.0 - q).sqrt()), zero, zero]).unwrap();
    let excitation =
        ComplexMatrix::new(2, 2, vec![zero, zero, re((1.0 - p).sqrt()), zero]).unwrap();
    let dephasing = ComplexMatrix::new(
        2,
        2,
        vec![zero, zero, zero, re((q - z.norm_sqr() / p).max(0.0).sqrt())],
    )
    .unwrap();
    make_channel(1, 1, vec![retention, decay, excitation, dephasing]).unwrap()
}

/// Random pure single-qubit state, uniformly over the Bloch sphere.
pub fn random_pure_qubit(rng: &mut StdRng) -> pcclone_core::states::PureState {
    let cos_theta: f64 = rng.gen_range(-1.0..1.0f64);
    let theta = cos_theta.acos();
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    pcclone_core::states::PureState::new(vec![
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ])
    .unwrap()
}
