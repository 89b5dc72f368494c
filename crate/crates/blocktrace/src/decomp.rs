//! Matrix factorizations: LU determinant with log-magnitude bookkeeping,
//! cyclic Jacobi eigenvalues for Hermitian matrices, and the PSD verdict
//! built on them.

use serde::Serialize;

use crate::matrix::{Complex64, ComplexMatrix};
use crate::{Error, Result};

/// Default relative tolerance for positive-semidefiniteness verdicts.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Relative Hermitian-defect threshold before Hermitian routines refuse input.
pub const HERMITIAN_REL_TOL: f64 = 1e-12;

/// A pivot below this magnitude is treated as an exact zero determinant.
const PIVOT_UNDERFLOW: f64 = 1e-300;

/// Off-diagonal sweep threshold for the Jacobi iteration, relative to the
/// input's max-norm.
const JACOBI_REL_TOL: f64 = 1e-13;

const MAX_JACOBI_SWEEPS: usize = 60;

/// Determinant carried in three redundant forms so that exponentiations of
/// the magnitude never overflow: `value = exp(log_abs) * sign_phase`
/// whenever the exponential is representable.
#[derive(Debug, Clone, Copy)]
pub struct DetResult {
    pub value: Complex64,
    /// `ln |det|`; `-inf` for singular input.
    pub log_abs: f64,
    /// Unit-modulus phase of the determinant (1 for singular input).
    pub sign_phase: Complex64,
}

impl DetResult {
    pub fn is_singular(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    /// Real part of the sign: +1/-1 for (numerically) real determinants,
    /// 0 for singular ones.
    pub fn real_sign(&self) -> f64 {
        if self.is_singular() {
            0.0
        } else if self.sign_phase.re >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Determinant via LU with partial pivoting.
pub fn det(a: &ComplexMatrix) -> DetResult {
    let d = a.dim();
    let mut lu: Vec<Complex64> = a.entries().to_vec();
    let mut swaps = 0usize;
    let mut log_abs = 0.0f64;
    let mut phase = Complex64::new(1.0, 0.0);
    let mut product = Complex64::new(1.0, 0.0);

    for col in 0..d {
        let mut pivot_row = col;
        let mut pivot_mag = lu[col * d + col].norm();
        for row in (col + 1)..d {
            let mag = lu[row * d + col].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag < PIVOT_UNDERFLOW {
            return DetResult {
                value: Complex64::new(0.0, 0.0),
                log_abs: f64::NEG_INFINITY,
                sign_phase: Complex64::new(1.0, 0.0),
            };
        }
        if pivot_row != col {
            for j in 0..d {
                lu.swap(col * d + j, pivot_row * d + j);
            }
            swaps += 1;
        }
        let pivot = lu[col * d + col];
        log_abs += pivot_mag.ln();
        phase *= pivot / pivot_mag;
        product *= pivot;
        for row in (col + 1)..d {
            let factor = lu[row * d + col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in (col + 1)..d {
                let upper = lu[col * d + j];
                lu[row * d + j] -= factor * upper;
            }
        }
    }

    if swaps % 2 == 1 {
        phase = -phase;
        product = -product;
    }
    // Renormalize drift in the accumulated phase.
    let phase_mag = phase.norm();
    if phase_mag > 0.0 {
        phase /= phase_mag;
    }
    // The direct pivot product is the most accurate value as long as it
    // stays representable; log_abs carries the magnitude past that point.
    let value = if product.re.is_finite() && product.im.is_finite() {
        product
    } else {
        phase * f64::MAX
    };
    DetResult { value, log_abs, sign_phase: phase }
}

/// Checks the Hermitian-defect gate and returns the symmetrized matrix.
fn symmetrized_checked(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_REL_TOL * a.max_norm() {
        return Err(Error::Domain(format!(
            "matrix is not Hermitian: defect {:.3e} exceeds {:.3e}",
            defect,
            HERMITIAN_REL_TOL * a.max_norm()
        )));
    }
    Ok(a.hermitian_part())
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// The input is symmetrized first and rejected if its Hermitian defect is
/// above tolerance.
pub fn hermitian_eigs(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let m = symmetrized_checked(a)?;
    let (eigs, _) = jacobi(m, false);
    Ok(eigs)
}

/// Eigenvalues (descending) and a unitary whose columns are the matching
/// eigenvectors.
pub fn hermitian_eig_decomp(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let m = symmetrized_checked(a)?;
    let (eigs, v) = jacobi(m, true);
    Ok((eigs, v.expect("vectors requested")))
}

/// Cyclic Jacobi on a Hermitian matrix. Rotations zero one off-diagonal
/// pair at a time; convergence is quadratic once the off-diagonal mass is
/// small.
fn jacobi(mut a: ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let d = a.dim();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(d));
    let threshold = JACOBI_REL_TOL * a.max_norm();

    if d > 1 && threshold > 0.0 {
        for _ in 0..MAX_JACOBI_SWEEPS {
            let mut off_max = 0.0f64;
            for p in 0..d - 1 {
                for q in p + 1..d {
                    let apq = a.get(p, q);
                    let r = apq.norm();
                    off_max = off_max.max(r);
                    if r <= threshold {
                        continue;
                    }
                    let alpha = a.get(p, p).re;
                    let beta = a.get(q, q).re;
                    let phi = apq / r;
                    // Solve t^2 - 2*delta*t - 1 = 0 for the smaller-magnitude
                    // root; that choice keeps the rotation angle <= pi/4.
                    let delta = (alpha - beta) / (2.0 * r);
                    let t = if delta >= 0.0 {
                        -1.0 / (delta + (1.0 + delta * delta).sqrt())
                    } else {
                        1.0 / (-delta + (1.0 + delta * delta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // Unitary plane rotation J: J[p,p]=c, J[p,q]=s*phi,
                    // J[q,p]=-s*conj(phi), J[q,q]=c. Apply A <- J* A J.
                    for i in 0..d {
                        let aip = a.get(i, p);
                        let aiq = a.get(i, q);
                        a.set(i, p, aip * c - aiq * s * phi.conj());
                        a.set(i, q, aip * s * phi + aiq * c);
                    }
                    for j in 0..d {
                        let apj = a.get(p, j);
                        let aqj = a.get(q, j);
                        a.set(p, j, apj * c - aqj * s * phi);
                        a.set(q, j, apj * s * phi.conj() + aqj * c);
                    }
                    // Clean the pair we just annihilated and keep the
                    // diagonal exactly real.
                    a.set(p, q, Complex64::new(0.0, 0.0));
                    a.set(q, p, Complex64::new(0.0, 0.0));
                    let app = a.get(p, p);
                    let aqq = a.get(q, q);
                    a.set(p, p, Complex64::new(app.re, 0.0));
                    a.set(q, q, Complex64::new(aqq.re, 0.0));

                    if let Some(v) = v.as_mut() {
                        for i in 0..d {
                            let vip = v.get(i, p);
                            let viq = v.get(i, q);
                            v.set(i, p, vip * c - viq * s * phi.conj());
                            v.set(i, q, vip * s * phi + viq * c);
                        }
                    }
                }
            }
            if off_max <= threshold {
                break;
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    let diag: Vec<f64> = (0..d).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));
    let eigs: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let v = v.map(|v| {
        ComplexMatrix::from_fn(d, |i, j| v.get(i, order[j]))
    });
    (eigs, v)
}

/// Outcome of a positive-semidefiniteness test.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eig: f64,
    pub max_eig: f64,
    pub tol_used: f64,
}

/// Tests positive semidefiniteness of a Hermitian matrix:
/// `min_eig >= -tol * max(1, max_eig)`.
pub fn psd_test(a: &ComplexMatrix, tol: f64) -> Result<PsdVerdict> {
    let eigs = hermitian_eigs(a)?;
    let max_eig = eigs.first().copied().unwrap_or(0.0);
    let min_eig = eigs.last().copied().unwrap_or(0.0);
    Ok(PsdVerdict {
        is_psd: min_eig >= -tol * max_eig.max(1.0),
        min_eig,
        max_eig,
        tol_used: tol,
    })
}

/// Singular values of an arbitrary matrix, descending: square roots of the
/// eigenvalues of `a* a`, clamped at zero.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let gram = a.adjoint().matmul(a).expect("square inputs");
    hermitian_eigs(&gram)
        .expect("Gram matrix is Hermitian")
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect()
}
