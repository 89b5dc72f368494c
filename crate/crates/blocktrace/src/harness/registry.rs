//! The case table: every determinant, trace, norm and Löwner-ordering
//! statement the harness can check, keyed by a stable id.
//!
//! Scalar determinant/trace cases rescale their input to trace `n*k` first
//! (every such statement is homogeneous, so margins are unchanged and the
//! dimension-exponent terms stay within double range); the Kittaneh-Lin
//! trace family reports raw values since its degree does not grow with the
//! dimensions. Löwner cases report the minimum eigenvalue of LHS - RHS.

use std::sync::OnceLock;

use crate::blockops::{Axis, BlockMatrix, PhiSign};
use crate::decomp::{self, hermitian_eig_decomp, hermitian_eigs, singular_values};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::sector::cartesian;
use crate::spectral::{compound_power, schatten_norm, symmetric_power};
use crate::{Error, Result};

use super::logdomain::{compare_sides, LogScalar, SideSum};
use super::{CheckOutcome, CheckParams, Hypothesis, InequalityCase, ParamKind};

pub(super) fn registry() -> &'static [InequalityCase] {
    static REGISTRY: OnceLock<Vec<InequalityCase>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

/// Rescales to trace `n*k`; the common prelude of the homogeneous scalar
/// cases. The factor is the real `d / |tr H|`, which preserves every
/// hypothesis class.
fn trace_normalized(h: &BlockMatrix) -> BlockMatrix {
    let t = h.mat.trace().norm();
    if t > 0.0 {
        h.scale_real(h.dim() as f64 / t)
    } else {
        h.clone()
    }
}

fn det_real(m: &ComplexMatrix) -> LogScalar {
    LogScalar::from_det_real(&decomp::det(m))
}

fn det_abs(m: &ComplexMatrix) -> LogScalar {
    LogScalar::from_det_abs(&decomp::det(m))
}

/// Clamps roundoff-negative determinants of mathematically PSD quantities.
fn nonneg(x: LogScalar) -> LogScalar {
    if x.sign < 0.0 {
        LogScalar::zero()
    } else {
        x
    }
}

fn scalar(lhs: Vec<LogScalar>, rhs: Vec<LogScalar>, tol: f64) -> CheckOutcome {
    compare_sides(&SideSum::new(lhs), &SideSum::new(rhs), tol)
}

fn lowner(lhs: &ComplexMatrix, rhs: &ComplexMatrix, tol: f64) -> Result<CheckOutcome> {
    let diff = lhs.sub(rhs)?;
    let eigs = hermitian_eigs(&diff)?;
    let margin = eigs.last().copied().unwrap_or(0.0);
    let scale = 1.0f64.max(lhs.max_norm()).max(rhs.max_norm());
    Ok(CheckOutcome {
        lhs: margin,
        rhs: 0.0,
        margin,
        scale,
        pass: margin >= -tol * scale,
        log_domain: false,
        detail: Some(eigs),
    })
}

fn identity_residual(residual: f64, scale: f64, tol: f64) -> CheckOutcome {
    let scale = scale.max(1.0);
    CheckOutcome {
        lhs: 0.0,
        rhs: residual,
        margin: -residual,
        scale,
        pass: residual <= tol * scale,
        log_domain: false,
        detail: None,
    }
}

/// The sub-inequality with the smallest normalized margin; with a uniform
/// tolerance it passes exactly when all of them do.
fn binding(outcomes: Vec<CheckOutcome>) -> CheckOutcome {
    outcomes
        .into_iter()
        .min_by(|a, b| {
            a.normalized_margin()
                .partial_cmp(&b.normalized_margin())
                .expect("margins are never NaN")
        })
        .expect("at least one sub-inequality")
}

pub(super) fn embed_tr1(h: &BlockMatrix) -> Result<ComplexMatrix> {
    ComplexMatrix::identity(h.n).kron(&h.partial_trace_1())
}

pub(super) fn embed_tr2(h: &BlockMatrix) -> Result<ComplexMatrix> {
    h.partial_trace_2().kron(&ComplexMatrix::identity(h.k))
}

fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (eigs, v) = hermitian_eig_decomp(m)?;
    let d = m.dim();
    let s = ComplexMatrix::from_fn(d, |i, j| {
        if i == j {
            Complex64::new(eigs[i].max(0.0).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    v.matmul(&s)?.matmul(&v.adjoint())
}

/// `D m D` for the positive diagonal ramp `D = diag(1 + (i+1)/d)`;
/// congruence, so PSD inputs stay PSD.
fn ramp_congruence(m: &ComplexMatrix) -> ComplexMatrix {
    let d = m.dim();
    ComplexMatrix::from_fn(d, |i, j| {
        let fi = 1.0 + (i + 1) as f64 / d as f64;
        let fj = 1.0 + (j + 1) as f64 / d as f64;
        m.get(i, j) * (fi * fj)
    })
}

/// Conjugation by the cyclic shift permutation.
fn cycle_congruence(m: &ComplexMatrix) -> ComplexMatrix {
    let d = m.dim();
    ComplexMatrix::from_fn(d, |i, j| m.get((i + 1) % d, (j + 1) % d))
}

/// Conjugation by the order-reversing permutation.
fn reverse_congruence(m: &ComplexMatrix) -> ComplexMatrix {
    let d = m.dim();
    ComplexMatrix::from_fn(d, |i, j| m.get(d - 1 - i, d - 1 - j))
}

/// `(1/n) * sum_{l,j} (X^l Y^j (x) I_k) H (X^l Y^j (x) I_k)*` for the shift
/// and clock unitaries on the block index; equals `I_n (x) tr_1 H`.
pub(super) fn pauli_average(h: &BlockMatrix) -> Result<ComplexMatrix> {
    let n = h.n;
    let shift = ComplexMatrix::from_fn(n, |i, j| {
        if i == (j + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let clock = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            let theta = 2.0 * std::f64::consts::PI * (j + 1) as f64 / n as f64;
            Complex64::new(theta.cos(), theta.sin())
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eye_k = ComplexMatrix::identity(h.k);
    let mut acc = ComplexMatrix::zeros(h.dim());
    let mut shift_power = shift.clone();
    for _ in 0..n {
        let mut unitary = shift_power.matmul(&clock)?;
        for _ in 0..n {
            let big = unitary.kron(&eye_k)?;
            let term = big.matmul(&h.mat)?.matmul(&big.adjoint())?;
            acc = acc.add(&term)?;
            unitary = unitary.matmul(&clock)?;
        }
        shift_power = shift_power.matmul(&shift)?;
    }
    Ok(acc.scale_real(1.0 / n as f64))
}

/// Max-norm commutation residual of the trace-embedding maps over all four
/// sign pairs, with the magnitude of the compositions as scale.
pub(super) fn phi_commutation_residual(h: &BlockMatrix) -> Result<(f64, f64)> {
    let mut residual = 0.0f64;
    let mut scale = 1.0f64;
    for s1 in [PhiSign::Plus, PhiSign::Minus] {
        for s2 in [PhiSign::Plus, PhiSign::Minus] {
            let ab = h.phi_map(Axis::Two, s2).phi_map(Axis::One, s1);
            let ba = h.phi_map(Axis::One, s1).phi_map(Axis::Two, s2);
            residual = residual.max(ab.mat.sub(&ba.mat)?.max_norm());
            scale = scale.max(ab.mat.max_norm());
        }
    }
    Ok((residual, scale))
}

struct Blocks2x2 {
    a: ComplexMatrix,
    b: ComplexMatrix,
    c: ComplexMatrix,
}

fn two_by_two(h: &BlockMatrix) -> Blocks2x2 {
    Blocks2x2 { a: h.block(0, 0), b: h.block(0, 1), c: h.block(1, 1) }
}

fn build() -> Vec<InequalityCase> {
    use Hypothesis::{Any, Psd, PsdTwoBlocks, Sector};
    use ParamKind::{Alpha, None as NoParam, SchattenExponent, SymmetricOrder, TensorOrder};

    let mut cases = vec![
        // (tr A) I + A >= I (x) tr1 A + (tr2 A) (x) I
        InequalityCase::new("ando-lowner", Psd, NoParam, |h, p| {
            let tr = h.mat.trace().re;
            let lhs = ComplexMatrix::identity(h.dim()).scale_real(tr).add(&h.mat)?;
            let rhs = embed_tr1(h)?.add(&embed_tr2(h)?)?;
            lowner(&lhs, &rhs, p.tol)
        }),
        // tr A + ||A||_q >= ||tr1 A||_q + ||tr2 A||_q
        InequalityCase::new("audenaert", Psd, SchattenExponent, |h, p| {
            let q = p.require_q()?;
            let h = trace_normalized(h);
            let lhs = h.mat.trace().re + schatten_norm(&h.mat, q);
            let rhs =
                schatten_norm(&h.partial_trace_1(), q) + schatten_norm(&h.partial_trace_2(), q);
            Ok(CheckOutcome::from_scalars(lhs, rhs, p.tol))
        }),
        // det(tr1 H) >= tr(det2 H) and det(tr2 H) >= tr(det1 H)
        InequalityCase::new("choi-cross", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let first = scalar(
                vec![det_real(&h.partial_trace_1())],
                vec![LogScalar::from_real(h.partial_det_2().trace().re)],
                p.tol,
            );
            let second = scalar(
                vec![det_real(&h.partial_trace_2())],
                vec![LogScalar::from_real(h.partial_det_1().trace().re)],
                p.tol,
            );
            Ok(binding(vec![first, second]))
        }),
        // (tr det1 H / k)^k >= det H and (tr det2 H / n)^n >= det H
        InequalityCase::new("choi-fm", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let det = det_real(&h.mat);
            let first = scalar(
                vec![nonneg(LogScalar::from_real(
                    h.partial_det_1().trace().re / h.k as f64,
                ))
                .powi(h.k as u32)],
                vec![det],
                p.tol,
            );
            let second = scalar(
                vec![nonneg(LogScalar::from_real(
                    h.partial_det_2().trace().re / h.n as f64,
                ))
                .powi(h.n as u32)],
                vec![det],
                p.tol,
            );
            Ok(binding(vec![first, second]))
        }),
        // I (x) tr1(A^tau) >= A^tau (the "minus" map is positive)
        InequalityCase::new("choi-lowner-1-minus", Psd, NoParam, |h, p| {
            let tau = h.partial_transpose();
            lowner(&embed_tr1(&tau)?, &tau.mat, p.tol)
        }),
        // I (x) tr1(A^tau) >= -A^tau
        InequalityCase::new("choi-lowner-1-plus", Psd, NoParam, |h, p| {
            let tau = h.partial_transpose();
            lowner(&embed_tr1(&tau)?, &tau.mat.scale_real(-1.0), p.tol)
        }),
        // (tr2 A^tau) (x) I >= A^tau
        InequalityCase::new("choi-lowner-2-minus", Psd, NoParam, |h, p| {
            let tau = h.partial_transpose();
            lowner(&embed_tr2(&tau)?, &tau.mat, p.tol)
        }),
        // (tr2 A^tau) (x) I >= -A^tau
        InequalityCase::new("choi-lowner-2-plus", Psd, NoParam, |h, p| {
            let tau = h.partial_transpose();
            lowner(&embed_tr2(&tau)?, &tau.mat.scale_real(-1.0), p.tol)
        }),
        // Entrywise-absolute partial-determinant bounds with the cosine factor.
        InequalityCase::new("choi-sector", Sector, Alpha, |h, p| {
            let alpha = p.require_alpha()?;
            let h = trace_normalized(h);
            let d = h.dim();
            let cos_factor = LogScalar::from_pow(alpha.cos(), d as f64);
            let rhs_term = cos_factor.mul(det_abs(&h.mat));
            let abs_trace = |m: &ComplexMatrix| -> f64 {
                (0..m.dim()).map(|i| m.get(i, i).norm()).sum()
            };
            let first = scalar(
                vec![LogScalar::from_real(abs_trace(&h.partial_det_1()) / h.k as f64)
                    .powi(h.k as u32)],
                vec![rhs_term],
                p.tol,
            );
            let second = scalar(
                vec![LogScalar::from_real(abs_trace(&h.partial_det_2()) / h.n as f64)
                    .powi(h.n as u32)],
                vec![rhs_term],
                p.tol,
            );
            Ok(binding(vec![first, second]))
        }),
        // det(A+B+C) + det C >= det(A+C) + det(B+C) on derived PSD triples.
        InequalityCase::new("det-3sum", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let a = h.mat.clone();
            let b = cycle_congruence(&a);
            let c = reverse_congruence(&a);
            Ok(scalar(
                vec![det_real(&a.add(&b)?.add(&c)?), det_real(&c)],
                vec![det_real(&a.add(&c)?), det_real(&b.add(&c)?)],
                p.tol,
            ))
        }),
        // det(average of diagonal blocks) >= geometric mean of their dets.
        InequalityCase::new("fan-ky", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let avg = h.partial_trace_1().scale_real(1.0 / h.n as f64);
            let mut prod = LogScalar::from_real(1.0);
            for i in 0..h.n {
                prod = prod.mul(nonneg(det_real(&h.block(i, i))));
            }
            Ok(scalar(
                vec![det_real(&avg)],
                vec![prod.pow_real(1.0 / h.n as f64)],
                p.tol,
            ))
        }),
        // prod det H_ii >= det H
        InequalityCase::new("fischer", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let mut prod = LogScalar::from_real(1.0);
            for i in 0..h.n {
                prod = prod.mul(det_real(&h.block(i, i)));
            }
            Ok(scalar(vec![prod], vec![det_real(&h.mat)], p.tol))
        }),
        // (det tr2 H / k)^k >= det H
        InequalityCase::new("fm", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let lhs = det_real(&h.partial_trace_2())
                .mul(LogScalar::from_pow(h.k as f64, -1.0))
                .powi(h.k as u32);
            Ok(scalar(vec![lhs], vec![det_real(&h.mat)], p.tol))
        }),
        // (det tr2 H / k^n)^k >= det H
        InequalityCase::new("fm-strong", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let lhs = det_real(&h.partial_trace_2())
                .mul(LogScalar::from_pow(h.k as f64, -(h.n as f64)))
                .powi(h.k as u32);
            Ok(scalar(vec![lhs], vec![det_real(&h.mat)], p.tol))
        }),
        // Complete-symmetric-function analogue of the trace inequalities.
        InequalityCase::new("kl-complete-t", PsdTwoBlocks, SymmetricOrder, |h, p| {
            let t = p.require_t()? as usize;
            if t > h.k {
                return Err(Error::Usage(format!(
                    "t must satisfy 1 <= t <= k = {}, got {t}",
                    h.k
                )));
            }
            let blocks = two_by_two(h);
            let va = symmetric_power(&blocks.a, t)?;
            let vb = symmetric_power(&blocks.b, t)?;
            let vc = symmetric_power(&blocks.c, t)?;
            kittaneh_lin_outcome(&va, &vb, &vc, p.tol)
        }),
        // Elementary-symmetric-function analogue via compound matrices.
        InequalityCase::new("kl-elem-t", PsdTwoBlocks, SymmetricOrder, |h, p| {
            let t = p.require_t()? as usize;
            if t > h.k {
                return Err(Error::Usage(format!(
                    "t must satisfy 1 <= t <= k = {}, got {t}",
                    h.k
                )));
            }
            let blocks = two_by_two(h);
            let wa = compound_power(&blocks.a, t)?;
            let wb = compound_power(&blocks.b, t)?;
            let wc = compound_power(&blocks.c, t)?;
            kittaneh_lin_outcome(&wa, &wb, &wc, p.tol)
        }),
        // r-th power analogue via tensor powers.
        InequalityCase::new("kl-tensor-r", PsdTwoBlocks, TensorOrder, |h, p| {
            let r = p.require_r()?;
            let blocks = two_by_two(h);
            let ta = blocks.a.trace().re;
            let tc = blocks.c.trace().re;
            let tb_sq = blocks.b.trace().norm_sqr();
            let tac = blocks.a.matmul(&blocks.c)?.trace();
            let tbb = blocks.b.frobenius_sq();
            let prod_r = (ta * tc).powi(r as i32);
            let cross_r = tb_sq.powi(r as i32);
            let tac_r = tac.powu(r);
            let tbb_r = tbb.powi(r as i32);
            let first = scalar(
                vec![LogScalar::from_real(prod_r), LogScalar::from_real(-cross_r)],
                vec![LogScalar::from_real((tac_r - Complex64::new(tbb_r, 0.0)).norm())],
                p.tol,
            );
            let second = scalar(
                vec![LogScalar::from_real(prod_r), LogScalar::from_real(cross_r)],
                vec![LogScalar::from_real(tac_r.re + tbb_r)],
                p.tol,
            );
            Ok(binding(vec![first, second]))
        }),
        // tr A tr C - tr B* tr B >= |tr AC - tr B*B|
        InequalityCase::new("kl-trace-1", PsdTwoBlocks, NoParam, |h, p| {
            let blocks = two_by_two(h);
            let lhs_main = blocks.a.trace().re * blocks.c.trace().re;
            let cross = blocks.b.trace().norm_sqr();
            let tac = blocks.a.matmul(&blocks.c)?.trace();
            let tbb = blocks.b.frobenius_sq();
            Ok(scalar(
                vec![LogScalar::from_real(lhs_main), LogScalar::from_real(-cross)],
                vec![LogScalar::from_real((tac - Complex64::new(tbb, 0.0)).norm())],
                p.tol,
            ))
        }),
        // tr A tr C + tr B* tr B >= tr AC + tr B*B
        InequalityCase::new("kl-trace-2", PsdTwoBlocks, NoParam, |h, p| {
            let blocks = two_by_two(h);
            let lhs_main = blocks.a.trace().re * blocks.c.trace().re;
            let cross = blocks.b.trace().norm_sqr();
            let tac = blocks.a.matmul(&blocks.c)?.trace().re;
            let tbb = blocks.b.frobenius_sq();
            Ok(scalar(
                vec![LogScalar::from_real(lhs_main), LogScalar::from_real(cross)],
                vec![LogScalar::from_real(tac + tbb)],
                p.tol,
            ))
        }),
        // |det tr1 H / n|^n >= cos^{(3n-2)k}(alpha) |det H|
        InequalityCase::new("kuai-tr1", Sector, Alpha, |h, p| {
            let alpha = p.require_alpha()?;
            let h = trace_normalized(h);
            let lhs = det_abs(&h.partial_trace_1())
                .mul(LogScalar::from_pow(h.n as f64, -1.0))
                .powi(h.n as u32);
            let exponent = ((3 * h.n - 2) * h.k) as f64;
            let rhs = LogScalar::from_pow(alpha.cos(), exponent).mul(det_abs(&h.mat));
            Ok(scalar(vec![lhs], vec![rhs], p.tol))
        }),
        // |det tr2 H / k^n|^k >= cos^{nk}(alpha) |det H|
        InequalityCase::new("kuai-tr2", Sector, Alpha, |h, p| {
            let alpha = p.require_alpha()?;
            let h = trace_normalized(h);
            let lhs = det_abs(&h.partial_trace_2())
                .mul(LogScalar::from_pow(h.k as f64, -(h.n as f64)))
                .powi(h.k as u32);
            let rhs =
                LogScalar::from_pow(alpha.cos(), h.dim() as f64).mul(det_abs(&h.mat));
            Ok(scalar(vec![lhs], vec![rhs], p.tol))
        }),
        // |det tr1 H / n^k|^n >= cos^{nk}(alpha) |det H|
        InequalityCase::new("li-sector-tr1", Sector, Alpha, |h, p| {
            let alpha = p.require_alpha()?;
            let h = trace_normalized(h);
            let lhs = det_abs(&h.partial_trace_1())
                .mul(LogScalar::from_pow(h.n as f64, -(h.k as f64)))
                .powi(h.n as u32);
            let rhs =
                LogScalar::from_pow(alpha.cos(), h.dim() as f64).mul(det_abs(&h.mat));
            Ok(scalar(vec![lhs], vec![rhs], p.tol))
        }),
        // (tr A)^{nk} + det A >= det(tr1 A)^n + det(tr2 A)^k
        InequalityCase::new("lin-det-sum", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let d = h.dim() as u32;
            Ok(scalar(
                vec![
                    LogScalar::from_real(h.mat.trace().re).powi(d),
                    det_real(&h.mat),
                ],
                vec![
                    det_real(&h.partial_trace_1()).powi(h.n as u32),
                    det_real(&h.partial_trace_2()).powi(h.k as u32),
                ],
                p.tol,
            ))
        }),
        // Conditional determinant lemma on a quadruple derived from the
        // input: X = W + P1 >= W, Z = X^{1/2} C X^{1/2} <= X for a PSD
        // contraction C, and Y = Z + Q2 keeps X + Y >= W + Z.
        InequalityCase::new("lin-lemma", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let w = h.mat.clone();
            let p1 = ramp_congruence(&w);
            let q2 = cycle_congruence(&w);
            let x = w.add(&p1)?;
            let c0 = reverse_congruence(&w);
            let c_max = hermitian_eigs(&c0)?.first().copied().unwrap_or(0.0);
            let contraction = if c_max > 0.0 {
                c0.scale_real(1.0 / c_max)
            } else {
                c0
            };
            let x_half = psd_sqrt(&x)?;
            let z = x_half.matmul(&contraction)?.matmul(&x_half)?;
            let y = z.add(&q2)?;
            Ok(scalar(
                vec![det_real(&x), det_real(&y)],
                vec![det_real(&w), det_real(&z)],
                p.tol,
            ))
        }),
        // (det tr1 H / n^k)^n >= det H
        InequalityCase::new("lin-strong", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let lhs = det_real(&h.partial_trace_1())
                .mul(LogScalar::from_pow(h.n as f64, -(h.k as f64)))
                .powi(h.n as u32);
            Ok(scalar(vec![lhs], vec![det_real(&h.mat)], p.tol))
        }),
        // (det tr1 H / n)^n >= det H
        InequalityCase::new("lin-tr1", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let lhs = det_real(&h.partial_trace_1())
                .mul(LogScalar::from_pow(h.n as f64, -1.0))
                .powi(h.n as u32);
            Ok(scalar(vec![lhs], vec![det_real(&h.mat)], p.tol))
        }),
        // sec^dim(alpha) det(Re A) >= |det A|
        InequalityCase::new("lin15-sector-det", Sector, Alpha, |h, p| {
            let alpha = p.require_alpha()?;
            let h = trace_normalized(h);
            let (re, _) = cartesian(&h.mat);
            let lhs = LogScalar::from_pow(alpha.cos(), -(h.dim() as f64))
                .mul(nonneg(det_real(&re)));
            Ok(scalar(vec![lhs], vec![det_abs(&h.mat)], p.tol))
        }),
        // (tr A) I - (tr2 A) (x) I >= A - I (x) tr1 A
        InequalityCase::new("llh-lowner-1", Psd, NoParam, |h, p| {
            let tr = h.mat.trace().re;
            let eye = ComplexMatrix::identity(h.dim());
            let lhs = eye.scale_real(tr).sub(&embed_tr2(h)?)?;
            let rhs = h.mat.sub(&embed_tr1(h)?)?;
            lowner(&lhs, &rhs, p.tol)
        }),
        // (tr A) I + (tr2 A) (x) I >= A + I (x) tr1 A
        InequalityCase::new("llh-lowner-2", Psd, NoParam, |h, p| {
            let tr = h.mat.trace().re;
            let eye = ComplexMatrix::identity(h.dim());
            let lhs = eye.scale_real(tr).add(&embed_tr2(h)?)?;
            let rhs = h.mat.add(&embed_tr1(h)?)?;
            lowner(&lhs, &rhs, p.tol)
        }),
        // Averaging over the shift/clock conjugations projects onto
        // I (x) tr1 H; exact identity for arbitrary input.
        InequalityCase::new("pauli-identity", Any, NoParam, |h, p| {
            let avg = pauli_average(h)?;
            let target = embed_tr1(h)?;
            let residual = avg.sub(&target)?.max_norm();
            Ok(identity_residual(residual, target.max_norm(), p.tol))
        }),
        // The two trace-embedding maps commute for every input and sign pair.
        InequalityCase::new("phi-commute", Any, NoParam, |h, p| {
            let (residual, scale) = phi_commutation_residual(h)?;
            Ok(identity_residual(residual, scale, p.tol))
        }),
        // (tr A)^{nk} + det(tr1 A)^n >= det A + det(tr2 A)^k
        InequalityCase::new("prop46-1", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let d = h.dim() as u32;
            Ok(scalar(
                vec![
                    LogScalar::from_real(h.mat.trace().re).powi(d),
                    det_real(&h.partial_trace_1()).powi(h.n as u32),
                ],
                vec![
                    det_real(&h.mat),
                    det_real(&h.partial_trace_2()).powi(h.k as u32),
                ],
                p.tol,
            ))
        }),
        // (tr A)^{nk} + det(tr2 A)^k >= det A + det(tr1 A)^n
        InequalityCase::new("prop46-2", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let d = h.dim() as u32;
            Ok(scalar(
                vec![
                    LogScalar::from_real(h.mat.trace().re).powi(d),
                    det_real(&h.partial_trace_2()).powi(h.k as u32),
                ],
                vec![
                    det_real(&h.mat),
                    det_real(&h.partial_trace_1()).powi(h.n as u32),
                ],
                p.tol,
            ))
        }),
        // lambda_i(Re X) <= sigma_i(X) for every i; and with Re X positive
        // definite, det Re X + |det Im X| <= |det X|.
        InequalityCase::new("rotfeld-parts", Sector, Alpha, |h, p| {
            let h = trace_normalized(h);
            let (re, im) = cartesian(&h.mat);
            let lambdas = hermitian_eigs(&re)?;
            let sigmas = singular_values(&h.mat);
            let mut outcomes: Vec<CheckOutcome> = lambdas
                .iter()
                .zip(&sigmas)
                .map(|(&l, &s)| CheckOutcome::from_scalars(s, l, p.tol))
                .collect();
            outcomes.push(scalar(
                vec![det_abs(&h.mat)],
                vec![nonneg(det_real(&re)), det_abs(&im)],
                p.tol,
            ));
            Ok(binding(outcomes))
        }),
        // Both partial traces of a sector matrix stay in the same sector.
        InequalityCase::new("sector-preserve", Sector, Alpha, |h, p| {
            let alpha = p.require_alpha()?;
            let tan = alpha.tan();
            let mut margin = f64::INFINITY;
            let mut scale = 1.0f64;
            let mut pass = true;
            for t in [h.partial_trace_1(), h.partial_trace_2()] {
                let (re, im) = cartesian(&t);
                margin = margin.min(hermitian_eigs(&re)?.last().copied().unwrap_or(0.0));
                let scaled = re.scale_real(tan);
                for cert in [scaled.sub(&im)?, scaled.add(&im)?] {
                    let eigs = hermitian_eigs(&cert)?;
                    margin = margin.min(eigs.last().copied().unwrap_or(0.0));
                    scale = scale.max(cert.max_norm());
                }
                pass &= crate::sector::sector_membership(&t, alpha, crate::decomp::DEFAULT_PSD_TOL)?;
            }
            Ok(CheckOutcome {
                lhs: margin,
                rhs: 0.0,
                margin,
                scale,
                pass,
                log_domain: false,
                detail: None,
            })
        }),
        // (tr A)^{nk} + det(tr1 A)^n >= n^{nk} (det A + det(tr2 A)^k)
        InequalityCase::new("thm47-1", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let d = h.dim() as u32;
            let factor = LogScalar::from_pow(h.n as f64, h.dim() as f64);
            Ok(scalar(
                vec![
                    LogScalar::from_real(h.mat.trace().re).powi(d),
                    det_real(&h.partial_trace_1()).powi(h.n as u32),
                ],
                vec![
                    factor.mul(det_real(&h.mat)),
                    factor.mul(det_real(&h.partial_trace_2()).powi(h.k as u32)),
                ],
                p.tol,
            ))
        }),
        // (tr A)^{nk} + det(tr2 A)^k >= k^{nk} (det A + det(tr1 A)^n)
        InequalityCase::new("thm47-2", Psd, NoParam, |h, p| {
            let h = trace_normalized(h);
            let d = h.dim() as u32;
            let factor = LogScalar::from_pow(h.k as f64, h.dim() as f64);
            Ok(scalar(
                vec![
                    LogScalar::from_real(h.mat.trace().re).powi(d),
                    det_real(&h.partial_trace_2()).powi(h.k as u32),
                ],
                vec![
                    factor.mul(det_real(&h.mat)),
                    factor.mul(det_real(&h.partial_trace_1()).powi(h.n as u32)),
                ],
                p.tol,
            ))
        }),
        // (tr|A|)^{nk} + |det tr1 A|^n >= (n cos alpha)^{nk} (det|A| + |det tr2 A|^k)
        InequalityCase::new("thm48-1", Sector, Alpha, |h, p| {
            let alpha = p.require_alpha()?;
            let h = trace_normalized(h);
            let d = h.dim();
            let tr_abs: f64 = singular_values(&h.mat).iter().sum();
            let factor = LogScalar::from_pow(h.n as f64 * alpha.cos(), d as f64);
            Ok(scalar(
                vec![
                    LogScalar::from_real(tr_abs).powi(d as u32),
                    det_abs(&h.partial_trace_1()).powi(h.n as u32),
                ],
                vec![
                    factor.mul(det_abs(&h.mat)),
                    factor.mul(det_abs(&h.partial_trace_2()).powi(h.k as u32)),
                ],
                p.tol,
            ))
        }),
        // (tr|A|)^{nk} + |det tr2 A|^k >= (k cos alpha)^{nk} (det|A| + |det tr1 A|^n)
        InequalityCase::new("thm48-2", Sector, Alpha, |h, p| {
            let alpha = p.require_alpha()?;
            let h = trace_normalized(h);
            let d = h.dim();
            let tr_abs: f64 = singular_values(&h.mat).iter().sum();
            let factor = LogScalar::from_pow(h.k as f64 * alpha.cos(), d as f64);
            Ok(scalar(
                vec![
                    LogScalar::from_real(tr_abs).powi(d as u32),
                    det_abs(&h.partial_trace_2()).powi(h.k as u32),
                ],
                vec![
                    factor.mul(det_abs(&h.mat)),
                    factor.mul(det_abs(&h.partial_trace_1()).powi(h.n as u32)),
                ],
                p.tol,
            ))
        }),
        // (tr A) I_n >= lambda_max(tr2 A) I_n >= tr2 A
        InequalityCase::new("trace-bound", Psd, NoParam, |h, p| {
            let tr = h.mat.trace().re;
            let tr2 = h.partial_trace_2();
            let lambda_max = hermitian_eigs(&tr2)?.first().copied().unwrap_or(0.0);
            let first = CheckOutcome::from_scalars(tr, lambda_max, p.tol);
            let second = lowner(
                &ComplexMatrix::identity(h.n).scale_real(lambda_max),
                &tr2,
                p.tol,
            )?;
            Ok(binding(vec![first, second]))
        }),
        // (tr|A|)^{nk} + det|A| >= cos^{nk}(alpha) (|det tr1 A|^n + |det tr2 A|^k)
        InequalityCase::new("ylc-sector", Sector, Alpha, |h, p| {
            let alpha = p.require_alpha()?;
            let h = trace_normalized(h);
            let d = h.dim();
            let tr_abs: f64 = singular_values(&h.mat).iter().sum();
            let cos_factor = LogScalar::from_pow(alpha.cos(), d as f64);
            Ok(scalar(
                vec![
                    LogScalar::from_real(tr_abs).powi(d as u32),
                    det_abs(&h.mat),
                ],
                vec![
                    cos_factor.mul(det_abs(&h.partial_trace_1()).powi(h.n as u32)),
                    cos_factor.mul(det_abs(&h.partial_trace_2()).powi(h.k as u32)),
                ],
                p.tol,
            ))
        }),
    ];

    cases.sort_by(|a, b| a.id.cmp(b.id));
    for pair in cases.windows(2) {
        assert!(pair[0].id != pair[1].id, "duplicate registry id {}", pair[0].id);
    }
    cases
}

/// Shared body of the Kittaneh-Lin family: given the (already powered)
/// images of the three blocks, evaluate both the difference and the sum
/// forms and report the binding one.
fn kittaneh_lin_outcome(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    tol: f64,
) -> Result<CheckOutcome> {
    let fa = a.trace().re;
    let fc = c.trace().re;
    let fb_sq = b.trace().norm_sqr();
    let fac = a.matmul(c)?.trace();
    let fbb = b.frobenius_sq();
    let first = scalar(
        vec![LogScalar::from_real(fa * fc), LogScalar::from_real(-fb_sq)],
        vec![LogScalar::from_real((fac - Complex64::new(fbb, 0.0)).norm())],
        tol,
    );
    let second = scalar(
        vec![LogScalar::from_real(fa * fc), LogScalar::from_real(fb_sq)],
        vec![LogScalar::from_real(fac.re + fbb)],
        tol,
    );
    Ok(binding(vec![first, second]))
}
