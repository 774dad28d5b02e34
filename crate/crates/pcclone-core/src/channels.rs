//! Kraus channels and the Γ-matrix machinery for phase-covariant maps.
//!
//! A channel maps N input qubits to M output qubits through a Kraus set
//! `{A_k}` with `Σ A_k† A_k = I`. For cloning analysis, what matters is the
//! *effective single-qubit action*: feed `|ψ>^{⊗N}` in, keep one output
//! qubit. That action is expanded in the matrix-unit basis
//!
//! ```text
//! σ0 = |0><1|,  σ1 = |1><0|,  σ2 = |0><0|,  σ3 = |1><1|
//! ```
//!
//! (equivalently σ0 = (σx+iσy)/2, σ1 = (σx−iσy)/2, σ2 = (1+σz)/2,
//! σ3 = (1−σz)/2), giving the 4×4 Gram matrix `Γ^{αβ} = Σ_k c_k^α c_k^{β*}`
//! of expansion coefficients. Phase covariance about the z-axis forces the
//! ten entries coupling {0,1} to {2,3} (and 0 to 1) to vanish, and the
//! surviving data reduce to two shrink factors, a phase offset, and a
//! z-offset — the quantities this module extracts.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::qlinalg::{outer, partial_trace_keep_one, ComplexMatrix};
use crate::states::{equatorial_state, product_copies, EquatorConvention, PureState};
use crate::{Error, Result};

/// Trace-preserving quantum channel in Kraus form, mapping `in_qubits`
/// qubits to `out_qubits` qubits.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    in_qubits: u32,
    out_qubits: u32,
    kraus_ops: Vec<ComplexMatrix>,
}

/// Validate and build a channel from its Kraus operators. The completeness
/// sum `Σ A† A` must equal the identity within 1e-10 (Frobenius norm).
pub fn make_channel(
    in_qubits: u32,
    out_qubits: u32,
    kraus_ops: Vec<ComplexMatrix>,
) -> Result<KrausChannel> {
    let din = 1usize << in_qubits;
    let dout = 1usize << out_qubits;
    if kraus_ops.is_empty() {
        return Err(Error::DimensionMismatch("empty Kraus set".into()));
    }
    for op in &kraus_ops {
        if op.rows() != dout || op.cols() != din {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operator is {}x{}, expected {dout}x{din}",
                op.rows(),
                op.cols()
            )));
        }
    }
    let mut sum = ComplexMatrix::zeros(din, din);
    for op in &kraus_ops {
        sum = sum.add(&op.adjoint().mul(op)?)?;
    }
    let residual = sum.sub(&ComplexMatrix::identity(din))?.frobenius_norm();
    if residual > 1e-10 {
        return Err(Error::NotTracePreserving(residual));
    }
    Ok(KrausChannel {
        in_qubits,
        out_qubits,
        kraus_ops,
    })
}

impl KrausChannel {
    pub fn in_qubits(&self) -> u32 {
        self.in_qubits
    }

    pub fn out_qubits(&self) -> u32 {
        self.out_qubits
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    /// `ρ ↦ Σ_k A_k ρ A_k†`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let din = 1usize << self.in_qubits;
        if rho.rows() != din || rho.cols() != din {
            return Err(Error::DimensionMismatch(format!(
                "channel expects {din}x{din} input, got {}x{}",
                rho.rows(),
                rho.cols()
            )));
        }
        let dout = 1usize << self.out_qubits;
        let mut out = ComplexMatrix::zeros(dout, dout);
        for op in &self.kraus_ops {
            out = out.add(&op.mul(rho)?.mul(&op.adjoint())?)?;
        }
        Ok(out)
    }

    /// Channel applied to a pure input, `Σ_k (A_k|ψ>)(A_k|ψ>)†`.
    pub fn apply_pure(&self, psi: &PureState) -> Result<ComplexMatrix> {
        if psi.n_qubits() != self.in_qubits as usize {
            return Err(Error::DimensionMismatch(format!(
                "channel expects {} input qubit(s), state has {}",
                self.in_qubits,
                psi.n_qubits()
            )));
        }
        let dout = 1usize << self.out_qubits;
        let mut out = ComplexMatrix::zeros(dout, dout);
        for op in &self.kraus_ops {
            let v = op.matvec(psi.amplitudes())?;
            out = out.add(&outer(&v, &v))?;
        }
        Ok(out)
    }
}

/// Run `first`, then `second`; Kraus set `{B_j A_k}`.
pub fn compose(first: &KrausChannel, second: &KrausChannel) -> Result<KrausChannel> {
    if first.out_qubits != second.in_qubits {
        return Err(Error::DimensionMismatch(format!(
            "cannot feed {} output qubit(s) into a channel expecting {}",
            first.out_qubits, second.in_qubits
        )));
    }
    let mut ops = Vec::with_capacity(first.kraus_ops.len() * second.kraus_ops.len());
    for b in &second.kraus_ops {
        for a in &first.kraus_ops {
            ops.push(b.mul(a)?);
        }
    }
    make_channel(first.in_qubits, second.out_qubits, ops)
}

pub fn identity_channel(n_qubits: u32) -> KrausChannel {
    KrausChannel {
        in_qubits: n_qubits,
        out_qubits: n_qubits,
        kraus_ops: vec![ComplexMatrix::identity(1 << n_qubits)],
    }
}

/// Channel `ρ ↦ UρU†` for a unitary on a qubit register.
pub fn unitary_channel(u: &ComplexMatrix) -> Result<KrausChannel> {
    if !u.is_square() || !u.rows().is_power_of_two() {
        return Err(Error::DimensionMismatch(format!(
            "unitary must be square with power-of-two dimension, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let n = u.rows().trailing_zeros();
    make_channel(n, n, vec![u.clone()])
}

/// Completely depolarizing qubit channel `ρ ↦ I/2`, as the four
/// equal-weight Pauli Kraus operators.
pub fn depolarizing_qubit_channel() -> KrausChannel {
    let half = Complex64::new(0.5, 0.0);
    let ops = vec![
        ComplexMatrix::identity(2).scale(half),
        crate::qlinalg::pauli_x().scale(half),
        crate::qlinalg::pauli_y().scale(half),
        crate::qlinalg::pauli_z().scale(half),
    ];
    KrausChannel {
        in_qubits: 1,
        out_qubits: 1,
        kraus_ops: ops,
    }
}

/// The phase rotation `U_χ = diag(1, e^{iχ})`, which advances the Bloch
/// azimuth of the XY convention by χ.
pub fn phase_unitary(chi: f64) -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(1.0, chi),
        ],
    )
    .unwrap()
}

/// 4×4 Gram matrix of Kraus-coefficient overlaps in the σ-basis,
/// `Γ^{αβ} = Σ_k c_k^α c_k^{β*}`.
///
/// Invariants (validated at construction): Hermitian; real diagonal in
/// [0,1]; trace preservation forces `Γ^{11} = 1 − Γ^{22}` and
/// `Γ^{00} = 1 − Γ^{33}`.
#[derive(Debug, Clone)]
pub struct GammaMatrix {
    m: ComplexMatrix,
}

impl GammaMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "Γ must be 4x4, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_hermitian(1e-12) {
            return Err(Error::DimensionMismatch("Γ must be Hermitian".into()));
        }
        // Symmetrize away representation noise.
        let m = m.add(&m.adjoint()).unwrap().scale(Complex64::new(0.5, 0.0));
        for a in 0..4 {
            let d = m[(a, a)].re;
            if !(-1e-12..=1.0 + 1e-12).contains(&d) {
                return Err(Error::DimensionMismatch(format!(
                    "Γ^{{{a}{a}}} = {d} out of [0,1]"
                )));
            }
        }
        let tp1 = (m[(1, 1)].re - (1.0 - m[(2, 2)].re)).abs();
        let tp0 = (m[(0, 0)].re - (1.0 - m[(3, 3)].re)).abs();
        let tp = tp1.max(tp0);
        if tp > 1e-10 {
            return Err(Error::NotTracePreserving(tp));
        }
        Ok(Self { m })
    }

    /// Entry `Γ^{αβ}`.
    pub fn entry(&self, alpha: usize, beta: usize) -> Complex64 {
        self.m[(alpha, beta)]
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    /// `max(0, |Γ^{32}|² − Γ^{22}Γ^{33})`. Zero for every map realized by
    /// a genuine single-qubit Kraus set (Cauchy–Schwarz on the coefficient
    /// vectors). The equatorial restriction of a many-copy channel is not
    /// such a map and may exceed the bound; the excess is reported here,
    /// never enforced.
    pub fn gram_bound_residual(&self) -> f64 {
        (self.m[(3, 2)].norm_sqr() - self.m[(2, 2)].re * self.m[(3, 3)].re).max(0.0)
    }
}

/// Largest magnitude among the ten Γ entries that phase covariance forces
/// to zero (every entry coupling index set {0,1} to {2,3}, plus the 01/10
/// pair).
pub fn covariance_constraint_residual(g: &GammaMatrix) -> f64 {
    const ZEROS: [(usize, usize); 10] = [
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 0),
        (1, 2),
        (1, 3),
        (2, 0),
        (2, 1),
        (3, 0),
        (3, 1),
    ];
    ZEROS
        .iter()
        .map(|&(a, b)| g.entry(a, b).norm())
        .fold(0.0, f64::max)
}

/// Bloch-space summary of a phase-covariant single-qubit action.
///
/// `eta_xy` contracts the equatorial plane, `eta_z` the z-axis;
/// `phi_rot` is the azimuthal advance applied to every output, and
/// `z_offset` the constant z-shift (`Γ^{22} − Γ^{33}`, zero for unital
/// symmetric maps). For actions realized by a completely positive
/// single-qubit channel, `eta_xy² ≤ Γ^{22}Γ^{33}` additionally holds; see
/// [`GammaMatrix::gram_bound_residual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShrinkFactors {
    pub eta_xy: f64,
    pub eta_z: f64,
    pub phi_rot: f64,
    pub z_offset: f64,
}

/// Read the shrink factors off a Γ matrix: `eta_xy = |Γ^{32}|`,
/// `phi_rot = arg Γ^{32}`, `eta_z = Γ^{33} + Γ^{22} − 1`,
/// `z_offset = Γ^{22} − Γ^{33}`. Requires the covariance constraints to
/// hold within 1e-8.
pub fn shrink_from_gamma(g: &GammaMatrix) -> Result<ShrinkFactors> {
    let residual = covariance_constraint_residual(g);
    if residual > 1e-8 {
        return Err(Error::NotPhaseCovariant(residual));
    }
    let g32 = g.entry(3, 2);
    Ok(ShrinkFactors {
        eta_xy: g32.norm(),
        eta_z: g.entry(3, 3).re + g.entry(2, 2).re - 1.0,
        phi_rot: g32.arg(),
        z_offset: g.entry(2, 2).re - g.entry(3, 3).re,
    })
}

/// Single-qubit output predicted from Γ under the covariance constraints.
/// Writing the input as δ = ρ00, γ = ρ01, the surviving terms of the
/// σ-basis expansion give
///
/// ```text
/// [ (1−Γ^{33})(1−δ) + Γ^{22}δ      γ · conj(Γ^{32}) ]
/// [ conj(γ) · Γ^{32}               (1−Γ^{22})δ + Γ^{33}(1−δ) ]
/// ```
///
/// (the off-diagonal pairing follows from Σ_{αβ} Γ^{αβ} σ_α ρ σ_β† with
/// Γ^{23} = conj(Γ^{32}); a phase unitary diag(1, e^{iχ}) has Γ^{32} =
/// e^{iχ} and must advance the Bloch azimuth by +χ, which pins the
/// conjugation).
pub fn predicted_reduced_output(g: &GammaMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    crate::qlinalg::check_density_2x2(rho)?;
    let delta = rho[(0, 0)].re;
    let gamma = rho[(0, 1)];
    let g22 = g.entry(2, 2).re;
    let g33 = g.entry(3, 3).re;
    let g32 = g.entry(3, 2);
    let mut out = ComplexMatrix::zeros(2, 2);
    out[(0, 0)] = Complex64::new((1.0 - g33) * (1.0 - delta) + g22 * delta, 0.0);
    out[(0, 1)] = gamma * g32.conj();
    out[(1, 0)] = gamma.conj() * g32;
    out[(1, 1)] = Complex64::new((1.0 - g22) * delta + g33 * (1.0 - delta), 0.0);
    Ok(out)
}

/// Coefficients of a 2×2 operator in the σ-basis. The basis is
/// orthonormal under the Hilbert–Schmidt inner product (it is the
/// matrix-unit basis in disguise), so the dual basis coincides with the
/// basis itself and each coefficient is `tr(σ_α† A)`.
fn sigma_coefficients(a: &ComplexMatrix) -> [Complex64; 4] {
    [a[(0, 1)], a[(1, 0)], a[(0, 0)], a[(1, 1)]]
}

/// Γ matrix of a single-qubit channel from its Kraus coefficients:
/// expand each operator as `A_k = Σ_α c_k^α σ_α` and form
/// `Γ^{αβ} = Σ_k c_k^α c_k^{β*}`.
pub fn gamma_from_kraus(ch: &KrausChannel) -> Result<GammaMatrix> {
    if ch.in_qubits != 1 || ch.out_qubits != 1 {
        return Err(Error::DimensionMismatch(format!(
            "σ-basis expansion needs a 1→1 map, got {}→{}",
            ch.in_qubits, ch.out_qubits
        )));
    }
    let mut m = ComplexMatrix::zeros(4, 4);
    for op in &ch.kraus_ops {
        let c = sigma_coefficients(op);
        for alpha in 0..4 {
            for beta in 0..4 {
                m[(alpha, beta)] += c[alpha] * c[beta].conj();
            }
        }
    }
    GammaMatrix::new(m)
}

/// Images of the matrix units under the effective single-qubit action of
/// an N→M channel: returns (Θ(E00), Θ(E01), Θ(E10), Θ(E11)).
///
/// Θ(E00) and Θ(E11) come from the pole inputs |0…0> and |1…1>. The
/// off-diagonal images come from the first Fourier harmonic of the
/// equatorial outputs out(φ) = reduce(T(|ψ_φ>^{⊗N})): a uniform grid of
/// 2N+5 points isolates the ±1 harmonics exactly (the integrand has
/// harmonics at most ±N). For N = 1 this is full process tomography; for
/// N > 1 it is the operational restriction to the copy family, which is
/// all the shrink-factor machinery consumes.
fn effective_action(ch: &KrausChannel) -> Result<[ComplexMatrix; 4]> {
    let n = ch.in_qubits;
    let reduce = |rho: &ComplexMatrix| -> Result<ComplexMatrix> {
        partial_trace_keep_one(rho, ch.out_qubits as usize, 0)
    };
    let pole0 = PureState::basis_state(n as usize, 0)?;
    let pole1 = PureState::basis_state(n as usize, (1usize << n) - 1)?;
    let theta00 = reduce(&ch.apply_pure(&pole0)?)?;
    let theta11 = reduce(&ch.apply_pure(&pole1)?)?;

    let l = 2 * n as usize + 5;
    let mut theta01 = ComplexMatrix::zeros(2, 2);
    let mut theta10 = ComplexMatrix::zeros(2, 2);
    for j in 0..l {
        let phi = TAU * j as f64 / l as f64;
        let copies = product_copies(&equatorial_state(phi, EquatorConvention::Xy), n)?;
        let out = reduce(&ch.apply_pure(&copies)?)?;
        let wp = Complex64::from_polar(2.0 / l as f64, phi);
        theta01 = theta01.add(&out.scale(wp))?;
        theta10 = theta10.add(&out.scale(wp.conj()))?;
    }
    Ok([theta00, theta01, theta10, theta11])
}

/// Γ matrix of the effective single-qubit action of any N→M channel,
/// obtained by re-indexing the action images: with P = Θ(E00),
/// Q = Θ(E11), R = Θ(E01), S = Θ(E10),
///
/// ```text
/// Γ^{22}=P00  Γ^{11}=P11  Γ^{21}=P01  Γ^{12}=P10
/// Γ^{00}=Q00  Γ^{33}=Q11  Γ^{03}=Q01  Γ^{30}=Q10
/// Γ^{20}=R00  Γ^{23}=R01  Γ^{10}=R10  Γ^{13}=R11
/// Γ^{02}=S00  Γ^{01}=S01  Γ^{32}=S10  Γ^{31}=S11
/// ```
///
/// For a 1→1 channel this agrees with [`gamma_from_kraus`].
pub fn gamma_from_channel(ch: &KrausChannel) -> Result<GammaMatrix> {
    let [p, r, s, q] = {
        let [t00, t01, t10, t11] = effective_action(ch)?;
        [t00, t01, t10, t11]
    };
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(2, 2)] = p[(0, 0)];
    m[(1, 1)] = p[(1, 1)];
    m[(2, 1)] = p[(0, 1)];
    m[(1, 2)] = p[(1, 0)];
    m[(0, 0)] = q[(0, 0)];
    m[(3, 3)] = q[(1, 1)];
    m[(0, 3)] = q[(0, 1)];
    m[(3, 0)] = q[(1, 0)];
    m[(2, 0)] = r[(0, 0)];
    m[(2, 3)] = r[(0, 1)];
    m[(1, 0)] = r[(1, 0)];
    m[(1, 3)] = r[(1, 1)];
    m[(0, 2)] = s[(0, 0)];
    m[(0, 1)] = s[(0, 1)];
    m[(3, 2)] = s[(1, 0)];
    m[(3, 1)] = s[(1, 1)];
    GammaMatrix::new(m)
}

/// Synthesize the effective single-qubit action of `ch` as an explicit
/// 1→1 Kraus channel. `n_in` must match the channel's input width.
///
/// The action's Choi matrix is eigendecomposed; eigenvectors with
/// positive weight become Kraus operators. For N = 1 this always
/// succeeds. For N > 1 the equatorial restriction need not extend to a
/// completely positive qubit map (measure-and-prepare channels on two or
/// more copies are the standard example), in which case the Choi matrix
/// has a negative eigenvalue and `NotCompletelyPositive` is returned —
/// use [`gamma_from_channel`] for shrink extraction instead.
pub fn reduced_single_qubit_map(ch: &KrausChannel, n_in: u32) -> Result<KrausChannel> {
    if n_in != ch.in_qubits {
        return Err(Error::DimensionMismatch(format!(
            "channel has {} input qubit(s), caller claimed {n_in}",
            ch.in_qubits
        )));
    }
    let [t00, t01, t10, t11] = effective_action(ch)?;
    // Choi matrix C = Σ_{ij} Θ(E_ij) ⊗ E_ij, row index = 2·out + in.
    let images = [[&t00, &t01], [&t10, &t11]];
    let mut choi = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            let th = images[i][j];
            for ro in 0..2 {
                for co in 0..2 {
                    choi[(2 * ro + i, 2 * co + j)] = th[(ro, co)];
                }
            }
        }
    }
    let (vals, vecs) = choi.hermitian_eigen()?;
    if let Some(&min) = vals.last() {
        if min < -1e-9 {
            return Err(Error::NotCompletelyPositive(min));
        }
    }
    let mut ops = Vec::new();
    for (k, &lambda) in vals.iter().enumerate() {
        if lambda <= 1e-12 {
            continue;
        }
        let w = lambda.sqrt();
        let mut a = ComplexMatrix::zeros(2, 2);
        for ro in 0..2 {
            for ri in 0..2 {
                a[(ro, ri)] = vecs[(2 * ro + ri, k)] * w;
            }
        }
        ops.push(a);
    }
    make_channel(1, 1, ops)
}

/// Result of a phase-covariance audit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceReport {
    pub max_residual: f64,
    pub pass: bool,
}

/// Check that rotating the input copies about the z-axis rotates the
/// reduced output the same way: compares
/// `U_χ · reduce(T(|ψ>^{⊗N})) · U_χ†` with `reduce(T((U_χ|ψ>)^{⊗N}))`
/// for χ on a uniform grid of `n_samples` points and a fixed set of
/// equatorial, polar, and tilted pure inputs. The residual is the largest
/// spectral-norm difference; everything is deterministic.
pub fn check_phase_covariance(
    ch: &KrausChannel,
    n_samples: u32,
    tol: f64,
) -> Result<CovarianceReport> {
    let n = ch.in_qubits;
    let mut inputs: Vec<PureState> = Vec::new();
    for k in 0..5 {
        inputs.push(equatorial_state(TAU * k as f64 / 5.0, EquatorConvention::Xy));
    }
    inputs.push(PureState::basis_state(1, 0)?);
    inputs.push(PureState::basis_state(1, 1)?);
    for &theta in &[0.4f64, 1.1, 2.0, 2.8] {
        for &phi0 in &[0.0f64, 2.0] {
            let c = (0.5 * theta).cos();
            let s = (0.5 * theta).sin();
            inputs.push(PureState::new(vec![
                Complex64::new(c, 0.0),
                Complex64::from_polar(s, phi0),
            ])?);
        }
    }

    let mut max_residual = 0.0f64;
    for psi in &inputs {
        let base_out = partial_trace_keep_one(
            &ch.apply_pure(&product_copies(psi, n)?)?,
            ch.out_qubits as usize,
            0,
        )?;
        for j in 0..n_samples {
            let chi = TAU * j as f64 / n_samples as f64;
            let u = phase_unitary(chi);
            let rotated_in = PureState::new(u.matvec(psi.amplitudes())?)?;
            let lhs = u.mul(&base_out)?.mul(&u.adjoint())?;
            let rhs = partial_trace_keep_one(
                &ch.apply_pure(&product_copies(&rotated_in, n)?)?,
                ch.out_qubits as usize,
                0,
            )?;
            let diff = lhs.sub(&rhs)?.spectral_norm_hermitian()?;
            max_residual = max_residual.max(diff);
        }
    }
    Ok(CovarianceReport {
        max_residual,
        pass: max_residual <= tol,
    })
}

/// Equal mixture of a single-qubit map and its basis-relabeled twin
/// (conjugation by σ_x on input and output, which swaps σ2↔σ3 and
/// σ0↔σ1). The output satisfies Γ^{22} = Γ^{33} and keeps the original
/// |Γ^{32}| whenever Γ^{32}'s conjugate-symmetric part survives — in
/// particular always for real Γ^{32}, the case of every optimal cloner
/// here (a complex Γ^{32} has its phase partially averaged by the
/// mixture, which is one reason optimal maps take phi_rot = 0).
pub fn symmetrize_channel(ch: &KrausChannel) -> Result<KrausChannel> {
    if ch.in_qubits != 1 || ch.out_qubits != 1 {
        return Err(Error::DimensionMismatch(format!(
            "symmetrization is defined for 1→1 maps, got {}→{}",
            ch.in_qubits, ch.out_qubits
        )));
    }
    let x = crate::qlinalg::pauli_x();
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut ops = Vec::with_capacity(2 * ch.kraus_ops.len());
    for a in &ch.kraus_ops {
        ops.push(a.scale(h));
    }
    for a in &ch.kraus_ops {
        ops.push(x.mul(a)?.mul(&x)?.scale(h));
    }
    make_channel(1, 1, ops)
}
