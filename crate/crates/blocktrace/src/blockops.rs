//! Block structure over [`ComplexMatrix`]: partial traces, partial
//! transpose, reshuffling, partial determinants, the PPT test and the
//! trace-embedding maps built from them.

use serde::Serialize;

use crate::decomp::{self, DetResult, PsdVerdict};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::{Error, Result};

/// Which tensor factor an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// The block index (result lives in the k-by-k factor).
    One,
    /// The within-block index (result lives in the n-by-n factor).
    Two,
}

impl Axis {
    pub fn from_index(i: u32) -> Result<Self> {
        match i {
            1 => Ok(Axis::One),
            2 => Ok(Axis::Two),
            other => Err(Error::Usage(format!("axis must be 1 or 2, got {other}"))),
        }
    }
}

/// Sign selector for the trace-embedding maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiSign {
    Plus,
    Minus,
}

impl PhiSign {
    fn factor(self) -> f64 {
        match self {
            PhiSign::Plus => 1.0,
            PhiSign::Minus => -1.0,
        }
    }
}

/// A complex matrix of order `n*k` carrying its declared block structure:
/// `n` blocks per side, each of order `k`. Block `(i, j)` is the k-by-k
/// submatrix starting at row `i*k`, column `j*k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    pub n: usize,
    pub k: usize,
    pub mat: ComplexMatrix,
}

/// Joint verdict for a matrix and its partial transpose.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PptVerdict {
    pub psd: PsdVerdict,
    pub psd_tau: PsdVerdict,
}

impl PptVerdict {
    pub fn is_ppt(&self) -> bool {
        self.psd.is_psd && self.psd_tau.is_psd
    }
}

impl BlockMatrix {
    pub fn new(n: usize, k: usize, mat: ComplexMatrix) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::Usage("block counts must be positive".into()));
        }
        if mat.dim() != n * k {
            return Err(Error::Size(format!(
                "matrix dimension {} does not equal n*k = {}",
                mat.dim(),
                n * k
            )));
        }
        Ok(Self { n, k, mat })
    }

    pub fn dim(&self) -> usize {
        self.n * self.k
    }

    /// Copies block `(i, j)` out as a k-by-k matrix.
    pub fn block(&self, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.k, |l, m| self.mat.get(i * self.k + l, j * self.k + m))
    }

    /// First partial trace: the sum of the diagonal blocks, a k-by-k matrix.
    pub fn partial_trace_1(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.k);
        for i in 0..self.n {
            for l in 0..self.k {
                for m in 0..self.k {
                    let v = out.get(l, m) + self.mat.get(i * self.k + l, i * self.k + m);
                    out.set(l, m, v);
                }
            }
        }
        out
    }

    /// Second partial trace: the n-by-n matrix of block traces.
    pub fn partial_trace_2(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| {
            (0..self.k)
                .map(|l| self.mat.get(i * self.k + l, j * self.k + l))
                .sum()
        })
    }

    pub fn partial_trace(&self, axis: Axis) -> ComplexMatrix {
        match axis {
            Axis::One => self.partial_trace_1(),
            Axis::Two => self.partial_trace_2(),
        }
    }

    /// Partial transpose: block `(i, j)` of the result is block `(j, i)` of
    /// the input, with block interiors untouched.
    pub fn partial_transpose(&self) -> Self {
        let mat = ComplexMatrix::from_fn(self.dim(), |row, col| {
            let (i, l) = (row / self.k, row % self.k);
            let (j, m) = (col / self.k, col % self.k);
            self.mat.get(j * self.k + l, i * self.k + m)
        });
        Self { n: self.n, k: self.k, mat }
    }

    /// The permutation realizing [`BlockMatrix::reshuffle`] as a similarity:
    /// entry `a = i*k + l` is sent to `perm[a] = l*n + i`. The same object
    /// serves as the perfect-shuffle matrix when materialized.
    pub fn shuffle_permutation(n: usize, k: usize) -> Vec<usize> {
        let mut perm = vec![0usize; n * k];
        for i in 0..n {
            for l in 0..k {
                perm[i * k + l] = l * n + i;
            }
        }
        perm
    }

    /// Exchanges the roles of block index and within-block index, producing
    /// a matrix in the k-blocks-of-order-n structure. Equals `S * mat * S^T`
    /// for the perfect-shuffle permutation `S`, so it is unitarily similar
    /// to the input.
    pub fn reshuffle(&self) -> Self {
        let perm = Self::shuffle_permutation(self.n, self.k);
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d);
        for row in 0..d {
            for col in 0..d {
                out.set(perm[row], perm[col], self.mat.get(row, col));
            }
        }
        Self { n: self.k, k: self.n, mat: out }
    }

    /// Second partial determinant: the n-by-n matrix of block determinants.
    pub fn partial_det_2(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| det_value(&self.block(i, j)))
    }

    /// First partial determinant: block determinants of the reshuffled
    /// matrix, a k-by-k matrix.
    pub fn partial_det_1(&self) -> ComplexMatrix {
        self.reshuffle().partial_det_2()
    }

    pub fn partial_det(&self, axis: Axis) -> ComplexMatrix {
        match axis {
            Axis::One => self.partial_det_1(),
            Axis::Two => self.partial_det_2(),
        }
    }

    /// PSD verdicts for the matrix and its partial transpose.
    pub fn ppt_test(&self, tol: f64) -> Result<PptVerdict> {
        Ok(PptVerdict {
            psd: decomp::psd_test(&self.mat, tol)?,
            psd_tau: decomp::psd_test(&self.partial_transpose().mat, tol)?,
        })
    }

    /// Trace-embedding maps. Axis two is
    /// `(tr_2 X^tau) (x) I_k + sign * X^tau`; axis one is
    /// `I_n (x) (tr_1 X^tau) + sign * X^tau`. Inputs need not be Hermitian.
    pub fn phi_map(&self, axis: Axis, sign: PhiSign) -> Self {
        let tau = self.partial_transpose();
        let embedded = match axis {
            Axis::One => ComplexMatrix::identity(self.n)
                .kron(&tau.partial_trace_1())
                .expect("dimension preserved"),
            Axis::Two => tau
                .partial_trace_2()
                .kron(&ComplexMatrix::identity(self.k))
                .expect("dimension preserved"),
        };
        let mat = embedded
            .add(&tau.mat.scale_real(sign.factor()))
            .expect("equal dimensions");
        Self { n: self.n, k: self.k, mat }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self { n: self.n, k: self.k, mat: self.mat.scale_real(factor) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::Size("block structure mismatch".into()));
        }
        Ok(Self { n: self.n, k: self.k, mat: self.mat.add(&other.mat)? })
    }

    pub fn det(&self) -> DetResult {
        decomp::det(&self.mat)
    }
}

fn det_value(m: &ComplexMatrix) -> Complex64 {
    decomp::det(m).value
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::decomp::{hermitian_eigs, psd_test, DEFAULT_PSD_TOL};
    use crate::randgen::{GenClass, GenSpec};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The 2x2-block counterexample separating positivity from PPT:
    /// rank-one, eigenvalues {2,0,0,0}, partial transpose indefinite.
    pub(crate) fn eq3_matrix() -> BlockMatrix {
        let mat = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        BlockMatrix::new(2, 2, mat).unwrap()
    }

    pub(crate) fn random_block(class: GenClass, n: usize, k: usize, seed: u64) -> BlockMatrix {
        GenSpec::new(class, n, k, seed).generate().unwrap()
    }

    #[test]
    fn partial_traces_of_eq3_are_identity() {
        let a = eq3_matrix();
        let tr1 = a.partial_trace_1();
        let tr2 = a.partial_trace_2();
        assert!(tr1.sub(&ComplexMatrix::identity(2)).unwrap().max_norm() < 1e-15);
        assert!(tr2.sub(&ComplexMatrix::identity(2)).unwrap().max_norm() < 1e-15);
    }

    #[test]
    fn partial_traces_of_identity() {
        let h = BlockMatrix::new(3, 2, ComplexMatrix::identity(6)).unwrap();
        let tr1 = h.partial_trace_1();
        let tr2 = h.partial_trace_2();
        assert!(tr1.sub(&ComplexMatrix::identity(2).scale_real(3.0)).unwrap().max_norm() == 0.0);
        assert!(tr2.sub(&ComplexMatrix::identity(3).scale_real(2.0)).unwrap().max_norm() == 0.0);
    }

    #[test]
    fn partial_transpose_of_eq3_matches_display() {
        let tau = eq3_matrix().partial_transpose();
        let expect = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(tau.mat, expect);
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let h = random_block(GenClass::General, 3, 2, 7);
        let twice = h.partial_transpose().partial_transpose();
        assert_eq!(twice.mat, h.mat);
    }

    #[test]
    fn partial_transpose_preserves_trace_and_block_diagonals() {
        let h = random_block(GenClass::General, 2, 3, 11);
        let tau = h.partial_transpose();
        assert!((h.mat.trace() - tau.mat.trace()).norm() < 1e-15);
        for i in 0..h.n {
            assert_eq!(h.block(i, i).entries(), tau.block(i, i).entries());
        }
    }

    #[test]
    fn reshuffle_of_identity_is_identity() {
        let h = BlockMatrix::new(3, 2, ComplexMatrix::identity(6)).unwrap();
        let r = h.reshuffle();
        assert_eq!(r.n, 2);
        assert_eq!(r.k, 3);
        assert_eq!(r.mat, ComplexMatrix::identity(6));
    }

    #[test]
    fn reshuffle_swaps_partial_traces() {
        let h = random_block(GenClass::General, 3, 2, 3);
        let lhs = h.reshuffle().partial_trace_2();
        let rhs = h.partial_trace_1();
        assert!(lhs.sub(&rhs).unwrap().max_norm() < 1e-15);
    }

    #[test]
    fn reshuffle_is_permutation_similarity() {
        let h = random_block(GenClass::General, 2, 3, 5);
        let perm = BlockMatrix::shuffle_permutation(2, 3);
        let d = h.dim();
        let mut s = ComplexMatrix::zeros(d);
        for (from, &to) in perm.iter().enumerate() {
            s.set(to, from, c(1.0, 0.0));
        }
        let via_perm = s.matmul(&h.mat).unwrap().matmul(&s.transpose()).unwrap();
        assert_eq!(via_perm, h.reshuffle().mat);
    }

    #[test]
    fn reshuffle_preserves_determinant_and_spectrum() {
        for seed in 0..10u64 {
            let h = random_block(GenClass::Hermitian, 2, 3, seed);
            let r = h.reshuffle();
            let dh = h.det();
            let dr = r.det();
            assert!(
                (dh.value - dr.value).norm() <= 1e-10 * dh.value.norm().max(1.0),
                "seed {seed}"
            );
            let eh = hermitian_eigs(&h.mat).unwrap();
            let er = hermitian_eigs(&r.mat).unwrap();
            for (a, b) in eh.iter().zip(&er) {
                assert!((a - b).abs() <= 1e-9 * h.mat.max_norm().max(1.0));
            }
        }
    }

    #[test]
    fn partial_det_of_eq3_blocks_vanishes() {
        let d2 = eq3_matrix().partial_det_2();
        assert!(d2.max_norm() == 0.0, "all four blocks are singular");
    }

    #[test]
    fn partial_det_of_identity() {
        let h = BlockMatrix::new(3, 2, ComplexMatrix::identity(6)).unwrap();
        let d2 = h.partial_det_2();
        assert!(d2.sub(&ComplexMatrix::identity(3)).unwrap().max_norm() == 0.0);
    }

    #[test]
    fn partial_det_axes_agree_through_reshuffle() {
        let h = random_block(GenClass::General, 2, 3, 9);
        let lhs = h.partial_det_1();
        let rhs = h.reshuffle().partial_det_2();
        assert_eq!(lhs.entries(), rhs.entries());
    }

    #[test]
    fn partial_dets_of_psd_input_are_psd() {
        for seed in 0..10u64 {
            let h = random_block(GenClass::Psd, 2, 3, seed);
            for axis in [Axis::One, Axis::Two] {
                let pd = h.partial_det(axis);
                assert!(
                    psd_test(&pd, DEFAULT_PSD_TOL).unwrap().is_psd,
                    "seed {seed} axis {axis:?}"
                );
            }
        }
    }

    #[test]
    fn ppt_verdicts_for_eq3_and_identity() {
        let v = eq3_matrix().ppt_test(DEFAULT_PSD_TOL).unwrap();
        assert!(v.psd.is_psd);
        assert!(!v.psd_tau.is_psd);
        assert!(!v.is_ppt());

        let id = BlockMatrix::new(2, 2, ComplexMatrix::identity(4)).unwrap();
        assert!(id.ppt_test(DEFAULT_PSD_TOL).unwrap().is_ppt());
    }

    #[test]
    fn separable_sums_are_ppt() {
        for seed in 0..10u64 {
            let h = random_block(GenClass::Ppt, 2, 3, seed);
            assert!(h.ppt_test(DEFAULT_PSD_TOL).unwrap().is_ppt(), "seed {seed}");
        }
    }

    #[test]
    fn phi_minus_on_identity() {
        // axis two on I: tr_2 I = k I_n, embedding gives k I - I = (k-1) I.
        let id = BlockMatrix::new(2, 3, ComplexMatrix::identity(6)).unwrap();
        let out = id.phi_map(Axis::Two, PhiSign::Minus);
        let expect = ComplexMatrix::identity(6).scale_real(2.0);
        assert!(out.mat.sub(&expect).unwrap().max_norm() == 0.0);
    }

    #[test]
    fn phi_maps_commute_on_arbitrary_input() {
        let x = random_block(GenClass::General, 2, 3, 21);
        for s1 in [PhiSign::Plus, PhiSign::Minus] {
            for s2 in [PhiSign::Plus, PhiSign::Minus] {
                let a = x.phi_map(Axis::Two, s2).phi_map(Axis::One, s1);
                let b = x.phi_map(Axis::One, s1).phi_map(Axis::Two, s2);
                assert!(
                    a.mat.sub(&b.mat).unwrap().max_norm() <= 1e-12 * x.mat.max_norm(),
                    "signs {s1:?} {s2:?}"
                );
            }
        }
    }

    #[test]
    fn phi_composition_of_psd_is_psd() {
        for seed in 0..10u64 {
            let a = random_block(GenClass::Psd, 2, 2, seed);
            let out = a.phi_map(Axis::Two, PhiSign::Minus).phi_map(Axis::One, PhiSign::Minus);
            assert!(
                psd_test(&out.mat, DEFAULT_PSD_TOL).unwrap().is_psd,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn adjoint_characterization_of_partial_traces() {
        for seed in 0..20u64 {
            let h = random_block(GenClass::General, 3, 2, seed);
            let x = random_block(GenClass::General, 1, 2, seed + 500).mat;
            let y = random_block(GenClass::General, 1, 3, seed + 900).mat;

            let lhs = ComplexMatrix::identity(3).kron(&x).unwrap().hs_inner(&h.mat).unwrap();
            let rhs = x.hs_inner(&h.partial_trace_1()).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10 * h.mat.max_norm().max(1.0));

            let lhs = y.kron(&ComplexMatrix::identity(2)).unwrap().hs_inner(&h.mat).unwrap();
            let rhs = y.hs_inner(&h.partial_trace_2()).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10 * h.mat.max_norm().max(1.0));
        }
    }

    #[test]
    fn partial_traces_share_the_full_trace() {
        let h = random_block(GenClass::General, 4, 3, 2);
        let t = h.mat.trace();
        assert!((h.partial_trace_1().trace() - t).norm() < 1e-12);
        assert!((h.partial_trace_2().trace() - t).norm() < 1e-12);
    }

    proptest! {
        // Linearity of the partial maps over random pairs.
        #[test]
        fn partial_maps_are_linear(seed1 in 0u64..1000, seed2 in 1000u64..2000) {
            let x = random_block(GenClass::General, 2, 2, seed1);
            let y = random_block(GenClass::General, 2, 2, seed2);
            let (alpha, beta) = (0.75, -1.25);
            let combo = BlockMatrix::new(
                2,
                2,
                x.mat.scale_real(alpha).add(&y.mat.scale_real(beta)).unwrap(),
            ).unwrap();

            let direct = combo.partial_trace_1();
            let split = x.partial_trace_1().scale_real(alpha)
                .add(&y.partial_trace_1().scale_real(beta)).unwrap();
            prop_assert!(direct.sub(&split).unwrap().max_norm() <= 1e-12);

            let direct = combo.partial_transpose();
            let split = x.partial_transpose().mat.scale_real(alpha)
                .add(&y.partial_transpose().mat.scale_real(beta)).unwrap();
            prop_assert!(direct.mat.sub(&split).unwrap().max_norm() <= 1e-12);
        }

        // Double reshuffle returns to the original block structure.
        #[test]
        fn reshuffle_twice_is_identity(seed in 0u64..500) {
            let h = random_block(GenClass::General, 3, 2, seed);
            let back = h.reshuffle().reshuffle();
            prop_assert_eq!(back.mat, h.mat);
        }
    }
}
