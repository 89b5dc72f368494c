//! Cartesian decomposition and sector analysis: membership of the numerical
//! range in the sector `S_alpha = { z : Re z > 0, |Im z| <= tan(alpha) Re z }`
//! and the minimal such angle.

use crate::decomp::{hermitian_eig_decomp, hermitian_eigs, psd_test};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::{Error, Result};

/// Relative strictness threshold for "Re A is positive definite".
pub const PD_STRICT_REL_TOL: f64 = 1e-10;

/// Largest sector angle the generators and CLI accept; secant powers stay
/// within double range below this.
pub const ALPHA_CAP: f64 = 1.45;

/// Cartesian data of a matrix together with its minimal sector angle.
#[derive(Debug, Clone)]
pub struct SectorReport {
    pub re_part: ComplexMatrix,
    pub im_part: ComplexMatrix,
    pub re_min_eig: f64,
    /// Minimal angle in `[0, pi/2)`, or `+inf` when `Re A` is not positive
    /// definite.
    pub alpha_min: f64,
}

/// Splits `a` into Hermitian parts with `a = re + i*im`.
pub fn cartesian(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let re = a.hermitian_part();
    // Im A = (A - A*) / (2i); build it directly so both parts are exactly
    // Hermitian by construction.
    let im = a.sub(&re).expect("same dimension").scale(Complex64::new(0.0, -1.0)).hermitian_part();
    (re, im)
}

fn re_positive_definite(re: &ComplexMatrix) -> Result<(bool, f64, f64)> {
    let eigs = hermitian_eigs(re)?;
    let max_eig = eigs.first().copied().unwrap_or(0.0);
    let min_eig = eigs.last().copied().unwrap_or(0.0);
    Ok((min_eig > PD_STRICT_REL_TOL * max_eig.max(1.0), min_eig, max_eig))
}

/// Whether the numerical range of `a` lies in `S_alpha`: requires `Re a`
/// positive definite and both `tan(alpha) Re a - Im a` and
/// `tan(alpha) Re a + Im a` positive semidefinite, which together encode
/// `|Im(x* a x)| <= tan(alpha) Re(x* a x)` for every unit vector `x`.
pub fn sector_membership(a: &ComplexMatrix, alpha: f64, tol: f64) -> Result<bool> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&alpha) {
        return Err(Error::Usage(format!(
            "sector angle must lie in [0, pi/2), got {alpha}"
        )));
    }
    let (re, im) = cartesian(a);
    let (pd, _, _) = re_positive_definite(&re)?;
    if !pd {
        return Ok(false);
    }
    let scaled = re.scale_real(alpha.tan());
    let upper = psd_test(&scaled.sub(&im)?, tol)?;
    let lower = psd_test(&scaled.add(&im)?, tol)?;
    Ok(upper.is_psd && lower.is_psd)
}

/// Minimal sector angle: `arctan` of the spectral radius of
/// `R^{-1/2} (Im a) R^{-1/2}` with `R = Re a`, or `+inf` when `R` fails the
/// positive-definiteness gate.
pub fn sector_angle(a: &ComplexMatrix) -> SectorReport {
    let (re, im) = cartesian(a);
    let (pd, re_min_eig, _) = re_positive_definite(&re).expect("hermitian by construction");
    if !pd {
        return SectorReport { re_part: re, im_part: im, re_min_eig, alpha_min: f64::INFINITY };
    }
    let (eigs, v) = hermitian_eig_decomp(&re).expect("hermitian by construction");
    let d = re.dim();
    let inv_sqrt = ComplexMatrix::from_fn(d, |i, j| {
        if i == j {
            Complex64::new(1.0 / eigs[i].sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let r_inv_half = v
        .matmul(&inv_sqrt)
        .and_then(|m| m.matmul(&v.adjoint()))
        .expect("square matrices");
    let pencil = r_inv_half
        .matmul(&im)
        .and_then(|m| m.matmul(&r_inv_half))
        .expect("square matrices");
    let radius = hermitian_eigs(&pencil)
        .expect("congruence of a Hermitian matrix")
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max);
    SectorReport { re_part: re, im_part: im, re_min_eig, alpha_min: radius.atan() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockops::tests::{eq3_matrix, random_block};
    use crate::decomp::DEFAULT_PSD_TOL;
    use crate::randgen::{GenClass, GenSpec};
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cartesian_of_hermitian_has_zero_imaginary_part() {
        let h = random_block(GenClass::Hermitian, 2, 2, 4).mat;
        let (re, im) = cartesian(&h);
        assert!(re.sub(&h).unwrap().max_norm() < 1e-15);
        assert!(im.max_norm() < 1e-15);
    }

    #[test]
    fn cartesian_of_i_times_identity() {
        let a = ComplexMatrix::identity(3).scale(c(0.0, 1.0));
        let (re, im) = cartesian(&a);
        assert!(re.max_norm() == 0.0);
        assert!(im.sub(&ComplexMatrix::identity(3)).unwrap().max_norm() == 0.0);
    }

    #[test]
    fn cartesian_reconstructs_random_input() {
        let a = random_block(GenClass::General, 2, 3, 8).mat;
        let (re, im) = cartesian(&a);
        let recon = re.add(&im.scale(c(0.0, 1.0))).unwrap();
        assert!(recon.sub(&a).unwrap().max_norm() <= 1e-14 * a.max_norm());
    }

    #[test]
    fn positive_definite_hermitian_is_in_the_zero_sector() {
        let spec = GenSpec::new(GenClass::Sector, 2, 2, 3);
        let a = spec.generate().unwrap().mat; // alpha = 0: Hermitian PD
        assert!(sector_membership(&a, 0.0, DEFAULT_PSD_TOL).unwrap());
        let report = sector_angle(&a);
        assert!(report.alpha_min.abs() < 1e-9);
    }

    #[test]
    fn diagonal_phase_matrix_boundary_angle() {
        let a = ComplexMatrix::identity(2).scale(c(1.0, 1.0));
        assert!(sector_membership(&a, FRAC_PI_4, DEFAULT_PSD_TOL).unwrap());
        assert!(!sector_membership(&a, FRAC_PI_4 - 0.01, DEFAULT_PSD_TOL).unwrap());
        let report = sector_angle(&a);
        assert!((report.alpha_min - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn singular_psd_matrix_is_never_a_sector_matrix() {
        let a = eq3_matrix().mat;
        for alpha in [0.0, 0.5, 1.0, 1.4] {
            assert!(!sector_membership(&a, alpha, DEFAULT_PSD_TOL).unwrap());
        }
        assert_eq!(sector_angle(&a).alpha_min, f64::INFINITY);
    }

    #[test]
    fn membership_is_monotone_in_alpha() {
        let a = GenSpec::new(GenClass::Sector, 2, 2, 17)
            .with_alpha(0.6)
            .generate()
            .unwrap()
            .mat;
        assert!(sector_membership(&a, 0.6, DEFAULT_PSD_TOL).unwrap());
        for alpha in [0.7, 0.9, 1.2, 1.45] {
            assert!(sector_membership(&a, alpha, DEFAULT_PSD_TOL).unwrap());
        }
    }

    #[test]
    fn generated_sector_matrices_attain_their_angle() {
        for seed in 0..20u64 {
            let alpha = 0.5;
            let a = GenSpec::new(GenClass::Sector, 2, 2, seed)
                .with_alpha(alpha)
                .generate()
                .unwrap()
                .mat;
            let report = sector_angle(&a);
            assert!(
                (report.alpha_min - alpha).abs() <= 1e-6,
                "seed {seed}: alpha_min {}",
                report.alpha_min
            );
            assert!(sector_membership(&a, report.alpha_min + 1e-8, DEFAULT_PSD_TOL).unwrap());
        }
    }

    #[test]
    fn partial_traces_stay_in_the_sector() {
        for seed in 0..20u64 {
            let alpha = 0.7;
            let h = GenSpec::new(GenClass::Sector, 3, 2, seed)
                .with_alpha(alpha)
                .generate()
                .unwrap();
            assert!(sector_membership(&h.mat, alpha, DEFAULT_PSD_TOL).unwrap());
            assert!(
                sector_membership(&h.partial_trace_1(), alpha, DEFAULT_PSD_TOL).unwrap(),
                "seed {seed}: first partial trace left the sector"
            );
            assert!(
                sector_membership(&h.partial_trace_2(), alpha, DEFAULT_PSD_TOL).unwrap(),
                "seed {seed}: second partial trace left the sector"
            );
        }
    }

    #[test]
    fn sector_determinant_bound_holds() {
        // |det A| <= sec(alpha_min)^dim * det(Re A) on random sector draws.
        for seed in 0..20u64 {
            let a = GenSpec::new(GenClass::Sector, 2, 2, seed)
                .with_alpha(0.9)
                .generate()
                .unwrap()
                .mat;
            let report = sector_angle(&a);
            let lhs = crate::decomp::det(&a).value.norm();
            let sec = 1.0 / report.alpha_min.cos();
            let rhs = sec.powi(a.dim() as i32) * crate::decomp::det(&report.re_part).value.re;
            assert!(lhs <= rhs * (1.0 + 1e-8), "seed {seed}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn real_part_eigenvalues_below_singular_values() {
        // For any X: lambda_i(Re X) <= sigma_i(X); with Re X positive
        // definite additionally det Re X + |det Im X| <= |det X|.
        for seed in 0..20u64 {
            let x = GenSpec::new(GenClass::Sector, 2, 2, seed)
                .with_alpha(1.0)
                .generate()
                .unwrap()
                .mat;
            let (re, im) = cartesian(&x);
            let lam = hermitian_eigs(&re).unwrap();
            let sig = crate::decomp::singular_values(&x);
            for (l, s) in lam.iter().zip(&sig) {
                assert!(*l <= s + 1e-9 * s.abs().max(1.0), "seed {seed}");
            }
            let lhs = crate::decomp::det(&re).value.re
                + crate::decomp::det(&im).value.norm();
            let rhs = crate::decomp::det(&x).value.norm();
            assert!(lhs <= rhs * (1.0 + 1e-8), "seed {seed}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn alpha_out_of_range_is_a_usage_error() {
        let a = ComplexMatrix::identity(2);
        assert!(sector_membership(&a, -0.1, DEFAULT_PSD_TOL).is_err());
        assert!(sector_membership(&a, std::f64::consts::FRAC_PI_2, DEFAULT_PSD_TOL).is_err());
    }
}
