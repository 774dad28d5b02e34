//! Cloning bounds and the explicit optimal 1→2 cloner for equatorial
//! qubits.
//!
//! The tight upper bound on the equatorial shrink factor of any N→M
//! phase-covariant cloner is the ratio of phase-estimation shrinks,
//!
//! ```text
//! η̃(N,M) = 2^{M−N} S(N)/S(M),   S(K) = Σ_{l=0}^{K−1} √(C(K,l) C(K,l+1)),
//! ```
//!
//! with fidelity (1+η̃)/2; as M→∞ it collapses to the pure estimation
//! shrink 2^{−N}S(N). For N=1, M=2 the bound is reached by an explicit
//! isometry on two clone qubits and one ancilla qubit, built from
//! amplitudes a = ½+√⅛, b = √⅛, c = ½−√⅛.

use num_complex::Complex64;

use crate::channels::{
    check_phase_covariance, compose, gamma_from_channel, make_channel, shrink_from_gamma,
    KrausChannel,
};
use crate::estimation::mean_estimation_shrink;
use crate::qlinalg::{fidelity_pure, kron, partial_trace_keep_one, ComplexMatrix};
use crate::states::{equatorial_state, xy_to_xz_frame, EquatorConvention, PureState};
use crate::{Error, Result};

/// Number of output copies requested from a cloning bound: a finite count
/// or the estimation limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputCopies {
    Finite(u32),
    Infinite,
}

impl std::fmt::Display for OutputCopies {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OutputCopies::Finite(m) => write!(f, "{m}"),
            OutputCopies::Infinite => write!(f, "inf"),
        }
    }
}

fn check_range(n: u32, m: OutputCopies) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidRange(format!("n must be ≥ 1, got {n}")));
    }
    match m {
        OutputCopies::Finite(m) if m < n => Err(Error::InvalidRange(format!(
            "need n ≤ m, got n={n}, m={m}"
        ))),
        OutputCopies::Finite(m) if m > 64 => Err(Error::InvalidRange(format!(
            "m ≤ 64 required for direct binomial evaluation, got {m}"
        ))),
        _ if n > 64 => Err(Error::InvalidRange(format!(
            "n ≤ 64 required for direct binomial evaluation, got {n}"
        ))),
        _ => Ok(()),
    }
}

/// Tight upper bound on the equatorial shrink factor of an N→M
/// phase-covariant cloner; `η̃(n,m) = 2^{m−n} S(n)/S(m)`, and the
/// estimation shrink `2^{−n}S(n)` when `m` is infinite.
pub fn bound_eta(n: u32, m: OutputCopies) -> Result<f64> {
    check_range(n, m)?;
    match m {
        OutputCopies::Finite(m) => {
            let sn = crate::binom::root_binomial_sum(n as u64);
            let sm = crate::binom::root_binomial_sum(m as u64);
            Ok(2f64.powi((m - n) as i32) * (sn / sm))
        }
        OutputCopies::Infinite => mean_estimation_shrink(n),
    }
}

/// Fidelity form of [`bound_eta`]: `(1 + η̃)/2`.
pub fn bound_fidelity(n: u32, m: OutputCopies) -> Result<f64> {
    Ok(0.5 * (1.0 + bound_eta(n, m)?))
}

/// Optimal fidelity of *universal* (point-symmetric) N→M cloning,
/// `F = (M(N+1)+N)/(M(N+2))`, with limit `(N+1)/(N+2)`. The closed form
/// is a standard reference value quoted for comparison plots; this
/// toolkit only relies on its N=1 anchor points.
pub fn universal_fidelity(n: u32, m: OutputCopies) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidRange(format!("n must be ≥ 1, got {n}")));
    }
    match m {
        OutputCopies::Finite(m) => {
            if m < n {
                return Err(Error::InvalidRange(format!(
                    "need n ≤ m, got n={n}, m={m}"
                )));
            }
            let (n, m) = (n as f64, m as f64);
            Ok((m * (n + 1.0) + n) / (m * (n + 2.0)))
        }
        OutputCopies::Infinite => {
            let n = n as f64;
            Ok((n + 1.0) / (n + 2.0))
        }
    }
}

/// One line of a bound table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub n_in: u32,
    pub m_out: OutputCopies,
    pub eta_bound: f64,
    pub f_pcc_bound: f64,
    pub f_universal: f64,
}

/// Bound rows for m ∈ {n..m_max} followed by the m→∞ row.
pub fn bound_table(n: u32, m_max: u32) -> Result<Vec<BoundRow>> {
    check_range(n, OutputCopies::Finite(m_max))?;
    let mut rows = Vec::with_capacity((m_max - n + 2) as usize);
    let mut emit = |m: OutputCopies| -> Result<()> {
        rows.push(BoundRow {
            n_in: n,
            m_out: m,
            eta_bound: bound_eta(n, m)?,
            f_pcc_bound: bound_fidelity(n, m)?,
            f_universal: universal_fidelity(n, m)?,
        });
        Ok(())
    };
    for m in n..=m_max {
        emit(OutputCopies::Finite(m))?;
    }
    emit(OutputCopies::Infinite)?;
    Ok(rows)
}

/// Amplitudes of the optimal 1→2 equatorial cloner:
/// `(½+√⅛, √⅛, ½−√⅛)`.
pub fn optimal_coefficients() -> (f64, f64, f64) {
    let r = 0.125f64.sqrt();
    (0.5 + r, r, 0.5 - r)
}

/// Symmetric-ansatz cloning isometry (8×2) with the canonical basis-state
/// ancilla assignment; columns are orthogonal by construction, so the
/// result is an isometry exactly when a² + 2b² + c² = 1:
///
/// ```text
/// |0> ↦ a|00>|0> + b(|01>+|10>)|1> + c|11>|0>
/// |1> ↦ c|00>|1> + b(|01>+|10>)|0> + a|11>|1>
/// ```
///
/// Qubit order: clone, clone, ancilla (last).
pub fn ansatz_isometry(a: f64, b: f64, c: f64) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(8, 2);
    let re = |x: f64| Complex64::new(x, 0.0);
    v[(0, 0)] = re(a); // |00>|0>
    v[(3, 0)] = re(b); // |01>|1>
    v[(5, 0)] = re(b); // |10>|1>
    v[(6, 0)] = re(c); // |11>|0>
    v[(1, 1)] = re(c); // |00>|1>
    v[(2, 1)] = re(b); // |01>|0>
    v[(4, 1)] = re(b); // |10>|0>
    v[(7, 1)] = re(a); // |11>|1>
    v
}

/// The optimal 1→2 cloner as an explicit isometry channel: one qubit in,
/// three out (clone, clone, ancilla; the ancilla qubit is last). In the
/// cloner's native basis the invariant family is the XZ equator
/// `cos(φ/2)|0> + sin(φ/2)|1>`.
pub fn optimal_12_channel() -> KrausChannel {
    let (a, b, c) = optimal_coefficients();
    make_channel(1, 3, vec![ansatz_isometry(a, b, c)])
        .expect("isometry columns are orthonormal by construction")
}

/// Clones-only variant of [`optimal_12_channel`], with the input and both
/// outputs expressed in the XY convention (so the whole Γ/shrink pipeline
/// applies directly) and the ancilla traced out. Kraus operators are the
/// two ancilla slices of the frame-conjugated isometry.
pub fn optimal_12_clones_channel() -> Result<KrausChannel> {
    let w = xy_to_xz_frame();
    let wd = w.adjoint();
    let iso = match optimal_12_channel().kraus_ops() {
        [v] => kron(&kron(&wd, &wd), &ComplexMatrix::identity(2)).mul(&v.mul(&w)?)?,
        _ => unreachable!("the isometry channel has exactly one Kraus operator"),
    };
    let mut ops = Vec::with_capacity(2);
    for anc in 0..2 {
        let mut k = ComplexMatrix::zeros(4, 2);
        for row in 0..4 {
            for col in 0..2 {
                k[(row, col)] = iso[(2 * row + anc, col)];
            }
        }
        ops.push(k);
    }
    make_channel(1, 2, ops)
}

/// Output of cloning one equatorial state.
#[derive(Debug, Clone)]
pub struct CloneResult {
    pub input_phi: f64,
    pub clone_a: ComplexMatrix,
    pub clone_b: ComplexMatrix,
    pub ancilla: ComplexMatrix,
    pub fidelity: f64,
}

/// Run the optimal cloner on `equatorial_state(phi, convention)` and
/// reduce each output. XY inputs are carried into the cloner's native XZ
/// frame, cloned, and the clone reductions carried back, so `clone_a` /
/// `clone_b` live in the caller's convention; the ancilla is reported in
/// the cloner's native basis. Both clones are identical and their
/// fidelity to the input is (1+1/√2)/2 for every phi.
pub fn clone(phi: f64, convention: EquatorConvention) -> Result<CloneResult> {
    let cloner = optimal_12_channel();
    let input = equatorial_state(phi, convention);
    let fed = match convention {
        EquatorConvention::Xz => input.clone(),
        EquatorConvention::Xy => PureState::new(xy_to_xz_frame().matvec(input.amplitudes())?)?,
    };
    let out = cloner.apply_pure(&fed)?;
    let mut clone_a = partial_trace_keep_one(&out, 3, 0)?;
    let mut clone_b = partial_trace_keep_one(&out, 3, 1)?;
    let ancilla = partial_trace_keep_one(&out, 3, 2)?;
    if convention == EquatorConvention::Xy {
        let w = xy_to_xz_frame();
        let wd = w.adjoint();
        clone_a = wd.mul(&clone_a)?.mul(&w)?;
        clone_b = wd.mul(&clone_b)?.mul(&w)?;
    }
    let fidelity = fidelity_pure(&input, &clone_a)?;
    Ok(CloneResult {
        input_phi: phi,
        clone_a,
        clone_b,
        ancilla,
        fidelity,
    })
}

/// Closed-form fidelity of the symmetric cloning ansatz with amplitudes
/// (a,b,c) on the equatorial input `α|0> + β|1>`, `β = √(1−α²)`:
///
/// ```text
/// F(α) = (α⁴+β⁴)a² + b² + 2α²β²c² + 4α²β² b(a+c)
/// ```
///
/// For the optimal amplitudes this is constant in α — the cloner treats
/// the whole equator alike even though the formula does not look
/// α-independent.
pub fn equator_fidelity_closed(alpha: f64, a: f64, b: f64, c: f64) -> Result<f64> {
    let a2 = alpha * alpha;
    if a2 > 1.0 + 1e-12 {
        return Err(Error::InvalidRange(format!(
            "need α² ≤ 1, got α = {alpha}"
        )));
    }
    let norm = a * a + 2.0 * b * b + c * c;
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NormalizationViolated(norm));
    }
    let b2 = 1.0 - a2.min(1.0);
    let cross = a2 * b2;
    Ok((a2 * a2 + b2 * b2) * a * a
        + b * b
        + 2.0 * cross * c * c
        + 4.0 * cross * b * (a + c))
}

/// Multiplicativity audit for composed covariant channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcatenationReport {
    /// Product of the two individually extracted equatorial shrinks.
    pub eta_product: f64,
    /// Equatorial shrink extracted from the composite channel.
    pub eta_measured: f64,
    /// `|eta_product − eta_measured|`.
    pub residual: f64,
}

/// Verify that equatorial shrink factors multiply under composition:
/// extract `eta_xy` from `first`, `second`, and `second ∘ first` and
/// compare. Both channels must individually pass a phase-covariance
/// audit within 1e-8.
pub fn concatenation_check(
    first: &KrausChannel,
    second: &KrausChannel,
) -> Result<ConcatenationReport> {
    for ch in [first, second] {
        let report = check_phase_covariance(ch, 12, 1e-8)?;
        if !report.pass {
            return Err(Error::NotPhaseCovariant(report.max_residual));
        }
    }
    let eta_of = |ch: &KrausChannel| -> Result<f64> {
        Ok(shrink_from_gamma(&gamma_from_channel(ch)?)?.eta_xy)
    };
    let composite = compose(first, second)?;
    let eta_product = eta_of(first)? * eta_of(second)?;
    let eta_measured = eta_of(&composite)?;
    Ok(ConcatenationReport {
        eta_product,
        eta_measured,
        residual: (eta_product - eta_measured).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{covariance_constraint_residual, identity_channel};
    use crate::estimation::{default_nodes, measure_prepare_channel, pe_fidelity_closed};
    use crate::qlinalg::bloch_from_density;
    use std::f64::consts::TAU;

    const F_OPT: f64 = 0.8535533905932737622004;
    const ETA_OPT: f64 = 0.7071067811865475244008;

    #[test]
    fn bound_values() {
        assert_eq!(bound_eta(1, OutputCopies::Finite(1)).unwrap(), 1.0);
        assert!((bound_eta(1, OutputCopies::Finite(2)).unwrap() - ETA_OPT).abs() < 1e-14);
        // 4/(3+2√3)
        let expect = 4.0 / (3.0 + 2.0 * 3f64.sqrt());
        assert!((bound_eta(1, OutputCopies::Finite(3)).unwrap() - expect).abs() < 1e-14);
        assert!(
            (bound_fidelity(1, OutputCopies::Finite(3)).unwrap() - 0.8094010767585030580366)
                .abs()
                < 1e-14
        );
        assert!((bound_fidelity(1, OutputCopies::Infinite).unwrap() - 0.75).abs() < 1e-15);
        assert!((bound_fidelity(1, OutputCopies::Finite(2)).unwrap() - F_OPT).abs() < 1e-14);
    }

    #[test]
    fn bound_matches_estimation_ratio() {
        for n in 1..=12u32 {
            for m in n..=12 {
                let direct = bound_eta(n, OutputCopies::Finite(m)).unwrap();
                let ratio = (2.0 * pe_fidelity_closed(n).unwrap() - 1.0)
                    / (2.0 * pe_fidelity_closed(m).unwrap() - 1.0);
                assert!((direct - ratio).abs() < 1e-12, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn bound_range_validation() {
        assert!(matches!(
            bound_eta(0, OutputCopies::Finite(1)),
            Err(Error::InvalidRange(_))
        ));
        assert!(matches!(
            bound_eta(3, OutputCopies::Finite(2)),
            Err(Error::InvalidRange(_))
        ));
        assert!(matches!(
            bound_eta(1, OutputCopies::Finite(65)),
            Err(Error::InvalidRange(_))
        ));
        assert!(bound_eta(64, OutputCopies::Finite(64)).is_ok());
        assert!(bound_eta(1, OutputCopies::Infinite).is_ok());
    }

    #[test]
    fn universal_values() {
        assert_eq!(universal_fidelity(1, OutputCopies::Finite(1)).unwrap(), 1.0);
        assert!(
            (universal_fidelity(1, OutputCopies::Finite(2)).unwrap() - 5.0 / 6.0).abs() < 1e-15
        );
        assert!(
            (universal_fidelity(1, OutputCopies::Infinite).unwrap() - 2.0 / 3.0).abs() < 1e-15
        );
    }

    #[test]
    fn bound_table_shape_and_ordering() {
        let rows = bound_table(1, 30).unwrap();
        assert_eq!(rows.len(), 31);
        for row in &rows {
            assert!((row.f_pcc_bound - 0.5 * (1.0 + row.eta_bound)).abs() < 1e-12);
            if row.m_out != OutputCopies::Finite(1) {
                assert!(row.f_pcc_bound > row.f_universal);
            }
        }
        // Monotone decrease toward the asymptotes.
        for pair in rows.windows(2) {
            assert!(pair[1].f_pcc_bound < pair[0].f_pcc_bound + 1e-15);
            assert!(pair[1].f_universal < pair[0].f_universal + 1e-15);
        }
        let last = rows.last().unwrap();
        assert_eq!(last.m_out, OutputCopies::Infinite);
        assert_eq!(last.f_pcc_bound, 0.75);
    }

    #[test]
    fn isometry_is_literal() {
        let ch = optimal_12_channel();
        let (a, b, c) = optimal_coefficients();
        let v = &ch.kraus_ops()[0];
        assert!((v[(0, 0)].re - a).abs() < 1e-15);
        assert!((v[(6, 0)].re - c).abs() < 1e-15);
        assert!((v[(1, 1)].re - c).abs() < 1e-15);
        assert!((v[(3, 0)].re - b).abs() < 1e-15);
        let gram = v.adjoint().mul(v).unwrap();
        assert!(
            gram.sub(&ComplexMatrix::identity(2)).unwrap().max_abs_entry() < 1e-15,
            "isometry property"
        );
    }

    #[test]
    fn clone_matches_advertised_reductions() {
        // phi = 0 in the XZ convention is |0>.
        let r = clone(0.0, EquatorConvention::Xz).unwrap();
        let (a, b, _) = optimal_coefficients();
        let f = a * a + b * b;
        assert!((r.clone_a[(0, 0)].re - f).abs() < 1e-14);
        assert!((r.clone_a[(1, 1)].re - (1.0 - f)).abs() < 1e-14);
        assert!(r.clone_a[(0, 1)].norm() < 1e-14);
        assert!((r.fidelity - F_OPT).abs() < 1e-12);

        // phi = π/2 in XZ is (|0>+|1>)/√2.
        let r = clone(std::f64::consts::FRAC_PI_2, EquatorConvention::Xz).unwrap();
        assert!((r.fidelity - F_OPT).abs() < 1e-12);
    }

    #[test]
    fn clone_constancy_over_both_conventions() {
        for k in 0..128 {
            let phi = TAU * k as f64 / 128.0;
            for conv in [EquatorConvention::Xy, EquatorConvention::Xz] {
                let r = clone(phi, conv).unwrap();
                assert!((r.fidelity - F_OPT).abs() < 1e-12, "phi={phi}, {conv:?}");
                assert!(
                    r.clone_a.sub(&r.clone_b).unwrap().max_abs_entry() < 1e-12,
                    "clone symmetry"
                );
            }
        }
    }

    #[test]
    fn clones_channel_shrink_factors() {
        let ch = optimal_12_clones_channel().unwrap();
        let g = gamma_from_channel(&ch).unwrap();
        assert!(covariance_constraint_residual(&g) < 1e-10);
        let s = shrink_from_gamma(&g).unwrap();
        assert!((s.eta_xy - ETA_OPT).abs() < 1e-10);
        // The axial contraction is 2b(a−c) = 1/2: the native-frame action
        // contracts its equator isotropically by 1/√2 and the remaining
        // axis by 1/2, and conjugation carries that axis onto z.
        assert!((s.eta_z - 0.5).abs() < 1e-10, "eta_z = {}", s.eta_z);
        assert!(s.phi_rot.abs() < 1e-10);
        assert!(s.z_offset.abs() < 1e-10);
        // Per-clone fidelity on the equator reaches the bound.
        let f = 0.5 * (1.0 + s.eta_xy);
        assert!((f - F_OPT).abs() < 1e-12);
    }

    #[test]
    fn clones_channel_agrees_with_full_isometry() {
        let pair = optimal_12_clones_channel().unwrap();
        for &phi in &[0.0, 1.1, 2.9, 4.6] {
            let direct = clone(phi, EquatorConvention::Xy).unwrap();
            let out = pair
                .apply_pure(&equatorial_state(phi, EquatorConvention::Xy))
                .unwrap();
            let a = partial_trace_keep_one(&out, 2, 0).unwrap();
            let b = partial_trace_keep_one(&out, 2, 1).unwrap();
            assert!(a.sub(&direct.clone_a).unwrap().max_abs_entry() < 1e-12);
            assert!(b.sub(&direct.clone_b).unwrap().max_abs_entry() < 1e-12);
        }
    }

    #[test]
    fn closed_form_fidelity_constancy() {
        let (a, b, c) = optimal_coefficients();
        for k in 0..100 {
            let alpha = k as f64 / 99.0;
            let f = equator_fidelity_closed(alpha, a, b, c).unwrap();
            assert!((f - F_OPT).abs() < 1e-12, "alpha={alpha}");
        }
        assert!((equator_fidelity_closed(1.0, 1.0, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            equator_fidelity_closed(0.5, 0.9, 0.9, 0.9),
            Err(Error::NormalizationViolated(_))
        ));
        assert!(matches!(
            equator_fidelity_closed(1.5, a, b, c),
            Err(Error::InvalidRange(_))
        ));
    }

    #[test]
    fn closed_form_matches_simulation() {
        let (a, b, c) = optimal_coefficients();
        for k in 0..25 {
            let alpha = k as f64 / 24.0;
            let phi = 2.0 * alpha.clamp(0.0, 1.0).acos();
            let closed = equator_fidelity_closed(alpha, a, b, c).unwrap();
            let simulated = clone(phi, EquatorConvention::Xz).unwrap().fidelity;
            assert!((closed - simulated).abs() < 1e-10, "alpha={alpha}");
        }
    }

    #[test]
    fn concatenation_multiplicativity() {
        let id = identity_channel(1);
        let r = concatenation_check(&id, &id).unwrap();
        assert!((r.eta_measured - 1.0).abs() < 1e-12 && r.residual < 1e-12);

        // Optimal cloner into two-copy estimate-and-reprepare: the chain
        // collapses to the single-copy estimation shrink 1/2.
        let cloner = optimal_12_clones_channel().unwrap();
        let mp21 = measure_prepare_channel(2, 1, default_nodes(2)).unwrap();
        let r = concatenation_check(&cloner, &mp21).unwrap();
        assert!(r.residual < 1e-8, "residual {}", r.residual);
        assert!((r.eta_measured - 0.5).abs() < 1e-8);

        let mp12 = measure_prepare_channel(1, 2, default_nodes(1)).unwrap();
        let r = concatenation_check(&mp12, &mp21).unwrap();
        assert!(r.residual < 1e-8);
        assert!((r.eta_measured - 0.5 * ETA_OPT).abs() < 1e-8);

        // A non-covariant channel is rejected.
        let flip = crate::channels::unitary_channel(&crate::qlinalg::pauli_x()).unwrap();
        assert!(matches!(
            concatenation_check(&flip, &id),
            Err(Error::NotPhaseCovariant(_))
        ));
    }

    #[test]
    fn clone_outputs_are_valid_states_off_equator_too() {
        // The cloner accepts any phi; its optimality claim is equatorial,
        // but outputs must always be physical.
        for &phi in &[0.3, 2.0, 5.9] {
            let r = clone(phi, EquatorConvention::Xy).unwrap();
            for m in [&r.clone_a, &r.clone_b, &r.ancilla] {
                let b = bloch_from_density(m).unwrap();
                assert!(b.norm() <= 1.0 + 1e-12);
            }
        }
    }
}
