//! Equatorial qubit states, the BB84 quartet, N-copy products, and the
//! symmetric (Dicke) subspace.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::binom::binomial;
use crate::qlinalg::{outer, ComplexMatrix};
use crate::{Error, Result};

/// Which great circle of the Bloch sphere carries the one-parameter
/// equatorial family.
///
/// `Xy`: `(|0> + e^{iφ}|1>)/√2`, Bloch vector `(cos φ, sin φ, 0)`.
/// `Xz`: `cos(φ/2)|0> + sin(φ/2)|1>`, Bloch vector `(sin φ, 0, cos φ)`;
/// here φ is the rotation angle about the y-axis, measured from `|0>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquatorConvention {
    Xy,
    Xz,
}

/// Normalized pure state of an n-qubit register, amplitudes in
/// computational-basis order (qubit 0 = most significant bit).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Build from amplitudes; the length must be a power of two and the
    /// norm must be 1 within 1e-10 (the stored vector is renormalized to
    /// machine precision).
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector length {len} is not a power of two"
            )));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-10 {
            return Err(Error::NormalizationViolated(norm_sq));
        }
        let norm = norm_sq.sqrt();
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Computational basis state `|index>` on `n_qubits` qubits.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, n_qubits });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "inner product of dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Projector |self><self| as a dense matrix.
    pub fn density(&self) -> ComplexMatrix {
        outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        PureState {
            n_qubits: self.n_qubits + other.n_qubits,
            amplitudes,
        }
    }
}

/// Single-qubit state at phase angle `phi` on the chosen equator; `phi`
/// is reduced mod 2π first, so the returned amplitudes are periodic in
/// `phi` (including the XZ case, whose half-angle form would otherwise
/// flip sign after one turn).
pub fn equatorial_state(phi: f64, convention: EquatorConvention) -> PureState {
    let phi = phi.rem_euclid(TAU);
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let amplitudes = match convention {
        EquatorConvention::Xy => vec![
            Complex64::new(half, 0.0),
            Complex64::from_polar(half, phi),
        ],
        EquatorConvention::Xz => vec![
            Complex64::new((0.5 * phi).cos(), 0.0),
            Complex64::new((0.5 * phi).sin(), 0.0),
        ],
    };
    PureState {
        n_qubits: 1,
        amplitudes,
    }
}

/// The four BB84 signal states `|0>, |1>, (|0>+|1>)/√2, (|0>-|1>)/√2`,
/// in that order. All four lie on the XZ equator.
pub fn bb84_states() -> [PureState; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mk = |a: f64, b: f64| PureState {
        n_qubits: 1,
        amplitudes: vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
    };
    [mk(1.0, 0.0), mk(0.0, 1.0), mk(h, h), mk(h, -h)]
}

/// n-fold tensor power of a single-qubit state.
pub fn product_copies(psi: &PureState, n: u32) -> Result<PureState> {
    if psi.n_qubits() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "copies are built from a single-qubit state, got {} qubits",
            psi.n_qubits()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidN(0));
    }
    let mut out = psi.clone();
    for _ in 1..n {
        out = out.tensor(psi);
    }
    Ok(out)
}

/// Orthonormal basis of the symmetric subspace of n qubits: element `l`
/// is the equal-weight superposition of all basis states with exactly
/// `l` ones.
pub fn dicke_basis(n: u32) -> Vec<PureState> {
    let n_us = n as usize;
    let dim = 1usize << n_us;
    (0..=n_us)
        .map(|l| {
            let coeff = 1.0 / binomial(n as u64, l as u64).sqrt();
            let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
            for (idx, amp) in amplitudes.iter_mut().enumerate() {
                if idx.count_ones() as usize == l {
                    *amp = Complex64::new(coeff, 0.0);
                }
            }
            PureState {
                n_qubits: n_us,
                amplitudes,
            }
        })
        .collect()
}

/// Projector onto the symmetric subspace of n qubits.
pub fn symmetric_projector(n: u32) -> ComplexMatrix {
    let dim = 1usize << (n as usize);
    let mut p = ComplexMatrix::zeros(dim, dim);
    for d in dicke_basis(n) {
        p = p.add(&d.density()).unwrap();
    }
    p
}

/// Trace norm of `(I-P) ρ (I-P)` with `P` the symmetric projector:
/// zero (within tolerance) exactly when ρ is supported on the symmetric
/// subspace.
pub fn symmetric_support_residual(rho: &ComplexMatrix, n: u32) -> Result<f64> {
    let dim = 1usize << (n as usize);
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "expected {dim}x{dim} matrix for {n} qubits, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    let q = ComplexMatrix::identity(dim).sub(&symmetric_projector(n))?;
    let qrq = q.mul(rho)?.mul(&q)?;
    qrq.trace_norm_hermitian()
}

/// Fixed unitary `W = (1/√2)[[1,1],[i,-i]]` carrying the XY equator onto
/// the XZ equator: `W |ψ_φ^{XY}> = e^{iφ/2} |ψ_φ^{XZ}>`. Conjugating a
/// channel by `W` (input pushed through `W`, output pulled back through
/// `W†`) re-expresses XZ-equator physics in the XY convention.
pub fn xy_to_xz_frame() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(h, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(0.0, h),
            Complex64::new(0.0, -h),
        ],
    )
    .unwrap()
}
