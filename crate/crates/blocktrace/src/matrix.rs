//! Dense square complex matrices: arithmetic, Kronecker products and the
//! Hilbert-Schmidt inner product.

use crate::{Error, Result};

pub use num_complex::Complex64;

/// Largest dimension a Kronecker product may produce.
pub const KRON_DIM_CAP: usize = 4096;

/// Dense square matrix of complex scalars, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Usage("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Size(format!(
                "expected {} entries for dimension {}, got {}",
                dim * dim,
                dim,
                entries.len()
            )));
        }
        if let Some(idx) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite entry at row {}, column {}",
                idx / dim,
                idx % dim
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    /// Convenience constructor from real row slices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Size("rows must form a square matrix".into()));
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(dim, entries)
    }

    pub fn scalar(value: Complex64) -> Self {
        Self { dim: 1, entries: vec![value] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Entrywise transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    /// Entrywise complex modulus, as a real matrix.
    pub fn entrywise_abs(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest modulus of `self[i,j] - conj(self[j,i])`; zero iff Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                defect = defect.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        defect
    }

    /// Hermitian part `(self + self*)/2`, with the diagonal forced real.
    pub fn hermitian_part(&self) -> Self {
        let mut m = Self::from_fn(self.dim, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        });
        for i in 0..self.dim {
            let d = m.get(i, i);
            m.set(i, i, Complex64::new(d.re, 0.0));
        }
        m
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Size(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for l in 0..d {
                let a = self.entries[i * d + l];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += a * other.entries[l * d + j];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product. Entry `((i*s + l), (j*s + m))` of the result is
    /// `a[i,j] * b[l,m]` with `s = b.dim()`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let out_dim = self.dim.checked_mul(other.dim).ok_or_else(|| {
            Error::Size("Kronecker product dimension overflows usize".into())
        })?;
        if out_dim > KRON_DIM_CAP {
            return Err(Error::Size(format!(
                "Kronecker product dimension {} exceeds cap {}",
                out_dim, KRON_DIM_CAP
            )));
        }
        let s = other.dim;
        let mut out = Self::zeros(out_dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for l in 0..s {
                    for m in 0..s {
                        out.entries[(i * s + l) * out_dim + (j * s + m)] = a * other.get(l, m);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Hilbert-Schmidt inner product `tr(self* other)`, conjugate-linear in
    /// the first argument.
    pub fn hs_inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Squared Frobenius norm, `hs_inner(self, self)` up to roundoff.
    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }
}
