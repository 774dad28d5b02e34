//! Dense complex linear algebra sized for few-qubit problems.
//!
//! Everything here works on small matrices (dimension at most a few hundred),
//! so the implementations favour clarity over asymptotics: row-major storage,
//! straightforward O(n^3) products and a cyclic Jacobi eigensolver for
//! Hermitian matrices.
//!
//! Conventions used throughout the crate:
//!
//! * Tensor factors are ordered left to right, with the leftmost qubit the
//!   most significant bit of a basis index (`|q0 q1 q2>` has index
//!   `q0*4 + q1*2 + q2`).
//! * Bloch components of a qubit state ρ are `x = 2 Re ρ01`,
//!   `y = -2 Im ρ01`, `z = 2 ρ00 - 1`, so the equatorial state
//!   `(|0> + e^{iφ}|1>)/√2` sits at `(cos φ, sin φ, 0)`.

use num_complex::Complex64;

use crate::states::PureState;
use crate::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major data; the length must equal `rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from rows of real numbers (convenience for tests and constants).
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(r, c, data).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..self.cols).map(|j| self[(i, j)] * v[j]).sum();
        }
        Ok(out)
    }

    /// Eigenvalues and eigenvectors of a Hermitian matrix by the cyclic
    /// Jacobi method. Eigenvalues are returned in descending order; column
    /// `k` of the returned matrix is the eigenvector for eigenvalue `k`.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "eigendecomposition needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let scale = self.frobenius_norm().max(1.0);
        if !self.is_hermitian(1e-9 * scale) {
            return Err(Error::DimensionMismatch(
                "eigendecomposition input is not Hermitian".into(),
            ));
        }
        let mut a = self.clone();
        // Symmetrize away representation noise so the rotations see an
        // exactly Hermitian matrix.
        for i in 0..n {
            a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let avg = 0.5 * (a[(i, j)] + a[(j, i)].conj());
                a[(i, j)] = avg;
                a[(j, i)] = avg.conj();
            }
        }
        let mut v = ComplexMatrix::identity(n);

        for _sweep in 0..200 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= 1e-14 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let r = apq.norm();
                    if r <= 1e-300 {
                        continue;
                    }
                    let phase = apq / r;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let tau = (app - aqq) / (2.0 * r);
                    // Small-magnitude root of t^2 - 2 tau t - 1 = 0.
                    let t = if tau >= 0.0 {
                        -1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Unitary J = I except J[p,p]=c, J[p,q]=s*phase,
                    // J[q,p]=-s*conj(phase), J[q,q]=c; apply A <- J† A J.
                    let sp = Complex64::new(s, 0.0) * phase;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - sp.conj() * akq;
                        a[(k, q)] = sp * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - sp * aqk;
                        a[(q, k)] = sp.conj() * apk + c * aqk;
                    }
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = c * vkp - sp.conj() * vkq;
                        v[(k, q)] = sp * vkp + c * vkq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
        let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let mut vectors = ComplexMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for k in 0..n {
                vectors[(k, new_col)] = v[(k, old_col)];
            }
        }
        Ok((values, vectors))
    }

    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.hermitian_eigen()?.0)
    }

    /// Operator (spectral) norm of a Hermitian matrix.
    pub fn spectral_norm_hermitian(&self) -> Result<f64> {
        Ok(self
            .hermitian_eigenvalues()?
            .iter()
            .map(|l| l.abs())
            .fold(0.0, f64::max))
    }

    /// Trace norm (sum of |eigenvalues|) of a Hermitian matrix.
    pub fn trace_norm_hermitian(&self) -> Result<f64> {
        Ok(self.hermitian_eigenvalues()?.iter().map(|l| l.abs()).sum())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product; the left factor is the more significant one.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Outer product u v†.
pub fn outer(u: &[Complex64], v: &[Complex64]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(u.len(), v.len());
    for (i, &ui) in u.iter().enumerate() {
        for (j, &vj) in v.iter().enumerate() {
            out[(i, j)] = ui * vj.conj();
        }
    }
    out
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Reduce an `n_qubits`-qubit density matrix to the single qubit `keep`
/// (0 = leftmost / most significant), tracing out all others.
pub fn partial_trace_keep_one(
    rho: &ComplexMatrix,
    n_qubits: usize,
    keep: usize,
) -> Result<ComplexMatrix> {
    let dim = 1usize << n_qubits;
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "expected {dim}x{dim} density matrix for {n_qubits} qubit(s), got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    if keep >= n_qubits {
        return Err(Error::IndexOutOfRange {
            index: keep,
            n_qubits,
        });
    }
    let shift = n_qubits - 1 - keep; // bit position of the kept qubit
    let env = 1usize << (n_qubits - 1);
    let low_mask = (1usize << shift) - 1;
    let mut out = ComplexMatrix::zeros(2, 2);
    for r in 0..2usize {
        for c in 0..2usize {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..env {
                let hi = j >> shift;
                let lo = j & low_mask;
                let row = (hi << (shift + 1)) | (r << shift) | lo;
                let col = (hi << (shift + 1)) | (c << shift) | lo;
                acc += rho[(row, col)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Bloch vector of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

pub(crate) fn check_density_2x2(rho: &ComplexMatrix) -> Result<()> {
    if rho.rows() != 2 || rho.cols() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected 2x2 matrix, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    if !rho.is_hermitian(1e-10) {
        return Err(Error::NotDensityMatrix("not Hermitian".into()));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
        return Err(Error::NotDensityMatrix(format!("trace = {tr}")));
    }
    // 2x2 Hermitian eigenvalues in closed form.
    let m = 0.5 * (rho[(0, 0)].re + rho[(1, 1)].re);
    let det = (rho[(0, 0)] * rho[(1, 1)] - rho[(0, 1)] * rho[(1, 0)]).re;
    let disc = (m * m - det).max(0.0).sqrt();
    if m - disc < -1e-12 {
        return Err(Error::NotDensityMatrix(format!(
            "negative eigenvalue {}",
            m - disc
        )));
    }
    Ok(())
}

/// Bloch vector of a 2x2 density matrix:
/// `(2 Re ρ01, -2 Im ρ01, 2 ρ00 - 1)`.
pub fn bloch_from_density(rho: &ComplexMatrix) -> Result<BlochVector> {
    check_density_2x2(rho)?;
    Ok(BlochVector::new(
        2.0 * rho[(0, 1)].re,
        -2.0 * rho[(0, 1)].im,
        2.0 * rho[(0, 0)].re - 1.0,
    ))
}

/// Inverse of [`bloch_from_density`]: ρ = (I + s·σ)/2.
pub fn density_from_bloch(s: &BlochVector) -> Result<ComplexMatrix> {
    let n = s.norm();
    if n > 1.0 + 1e-12 {
        return Err(Error::BlochVectorTooLong(n));
    }
    let mut rho = ComplexMatrix::zeros(2, 2);
    rho[(0, 0)] = Complex64::new(0.5 * (1.0 + s.z), 0.0);
    rho[(1, 1)] = Complex64::new(0.5 * (1.0 - s.z), 0.0);
    rho[(0, 1)] = Complex64::new(0.5 * s.x, -0.5 * s.y);
    rho[(1, 0)] = Complex64::new(0.5 * s.x, 0.5 * s.y);
    Ok(rho)
}

/// `<ψ|ρ|ψ>` for a normalized pure state and a density matrix of the same
/// dimension.
pub fn fidelity_pure(psi: &PureState, rho: &ComplexMatrix) -> Result<f64> {
    let amps = psi.amplitudes();
    if rho.rows() != amps.len() || rho.cols() != amps.len() {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} vs matrix {}x{}",
            amps.len(),
            rho.rows(),
            rho.cols()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..amps.len() {
        for j in 0..amps.len() {
            acc += amps[i].conj() * rho[(i, j)] * amps[j];
        }
    }
    Ok(acc.re)
}
