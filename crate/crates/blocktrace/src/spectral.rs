//! Scalar spectral functionals (elementary and complete symmetric functions
//! of the eigenvalues, Schatten norms) and the induced operator powers:
//! r-fold tensor power, t-th compound (antisymmetric) power and t-th induced
//! symmetric power.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decomp::{self, hermitian_eigs, singular_values};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::{Error, Result};

/// Largest dimension an induced power construction may produce.
pub const POWER_DIM_CAP: usize = 512;

/// Supported Schatten exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchattenQ {
    One,
    Two,
    Three,
    Inf,
}

impl FromStr for SchattenQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(SchattenQ::One),
            "2" => Ok(SchattenQ::Two),
            "3" => Ok(SchattenQ::Three),
            "inf" | "Inf" | "INF" => Ok(SchattenQ::Inf),
            other => Err(Error::Usage(format!(
                "unsupported Schatten exponent {other:?}; expected 1, 2, 3 or inf"
            ))),
        }
    }
}

impl fmt::Display for SchattenQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchattenQ::One => write!(f, "1"),
            SchattenQ::Two => write!(f, "2"),
            SchattenQ::Three => write!(f, "3"),
            SchattenQ::Inf => write!(f, "inf"),
        }
    }
}

/// t-th elementary symmetric function of the eigenvalues of a Hermitian
/// matrix, read off the characteristic polynomial built from its spectrum.
pub fn elem_sym(x: &ComplexMatrix, t: usize) -> Result<f64> {
    let d = x.dim();
    if t == 0 || t > d {
        return Err(Error::Usage(format!(
            "elementary symmetric order must satisfy 1 <= t <= dim, got t={t}, dim={d}"
        )));
    }
    let eigs = hermitian_eigs(x)?;
    // Incrementally multiply out prod_i (z + lambda_i); coeffs[j] holds e_j.
    let mut coeffs = vec![0.0f64; d + 1];
    coeffs[0] = 1.0;
    for (i, lambda) in eigs.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            coeffs[j] += lambda * coeffs[j - 1];
        }
    }
    Ok(coeffs[t])
}

/// t-th complete homogeneous symmetric polynomial of the eigenvalues of a
/// Hermitian matrix, from power sums `p_j = tr(x^j)` via the Newton-style
/// recurrence `h_t = (1/t) * sum_{j=1..t} p_j h_{t-j}`.
pub fn complete_sym(x: &ComplexMatrix, t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::Usage("complete symmetric order must be >= 1".into()));
    }
    let sym = {
        // Reuse the Hermitian gate from the eigenvalue path.
        hermitian_eigs(x)?;
        x.hermitian_part()
    };
    let mut power = sym.clone();
    let mut p = Vec::with_capacity(t);
    p.push(power.trace().re);
    for _ in 1..t {
        power = power.matmul(&sym)?;
        p.push(power.trace().re);
    }
    let mut h = vec![0.0f64; t + 1];
    h[0] = 1.0;
    for m in 1..=t {
        let mut acc = 0.0;
        for j in 1..=m {
            acc += p[j - 1] * h[m - j];
        }
        h[m] = acc / m as f64;
    }
    Ok(h[t])
}

/// r-fold Kronecker power.
pub fn tensor_power(x: &ComplexMatrix, r: usize) -> Result<ComplexMatrix> {
    if r == 0 {
        return Err(Error::Usage("tensor power order must be >= 1".into()));
    }
    check_induced_dim(x.dim().checked_pow(r as u32))?;
    let mut out = x.clone();
    for _ in 1..r {
        out = out.kron(x)?;
    }
    Ok(out)
}

/// t-th compound: rows and columns indexed by the size-t index subsets in
/// lexicographic order, entries the corresponding t-by-t minors.
pub fn compound_power(x: &ComplexMatrix, t: usize) -> Result<ComplexMatrix> {
    let d = x.dim();
    if t == 0 || t > d {
        return Err(Error::Usage(format!(
            "compound order must satisfy 1 <= t <= dim, got t={t}, dim={d}"
        )));
    }
    let index_sets = subsets(d, t);
    check_induced_dim(Some(index_sets.len()))?;
    let m = index_sets.len();
    let mut out = ComplexMatrix::zeros(m);
    for (a, rows) in index_sets.iter().enumerate() {
        for (b, cols) in index_sets.iter().enumerate() {
            let minor = ComplexMatrix::from_fn(t, |i, j| x.get(rows[i], cols[j]));
            out.set(a, b, decomp::det(&minor).value);
        }
    }
    Ok(out)
}

/// t-th induced symmetric power: the compression of the t-fold tensor power
/// to the symmetric subspace, in the orthonormal basis of normalized
/// monomial symmetric tensors ordered lexicographically by multiset.
pub fn symmetric_power(x: &ComplexMatrix, t: usize) -> Result<ComplexMatrix> {
    if t == 0 {
        return Err(Error::Usage("symmetric power order must be >= 1".into()));
    }
    let d = x.dim();
    let index_multisets = multisets(d, t);
    check_induced_dim(Some(index_multisets.len()))?;
    let big = {
        // The intermediate tensor power answers to the Kronecker cap, not
        // the induced-dimension cap.
        let mut out = x.clone();
        for _ in 1..t {
            out = out.kron(x)?;
        }
        out
    };

    // Each basis vector is the equal-weight sum over the distinct
    // arrangements of its multiset, normalized by the arrangement count.
    let columns: Vec<Vec<usize>> = index_multisets
        .iter()
        .map(|ms| {
            arrangements(ms)
                .into_iter()
                .map(|word| word.iter().fold(0usize, |acc, &i| acc * d + i))
                .collect()
        })
        .collect();

    let m = columns.len();
    let mut out = ComplexMatrix::zeros(m);
    for (a, rows_a) in columns.iter().enumerate() {
        for (b, rows_b) in columns.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &ra in rows_a {
                for &rb in rows_b {
                    acc += big.get(ra, rb);
                }
            }
            // One combined normalization keeps exactly-representable cases
            // exact (the divisor is the square root of an integer).
            let norm = ((rows_a.len() * rows_b.len()) as f64).sqrt();
            out.set(a, b, acc / norm);
        }
    }
    Ok(out)
}

/// Schatten q-norm from singular values; `Inf` returns the largest one.
pub fn schatten_norm(x: &ComplexMatrix, q: SchattenQ) -> f64 {
    let sv = singular_values(x);
    match q {
        SchattenQ::One => sv.iter().sum(),
        SchattenQ::Two => sv.iter().map(|s| s * s).sum::<f64>().sqrt(),
        SchattenQ::Three => sv.iter().map(|s| s * s * s).sum::<f64>().cbrt(),
        SchattenQ::Inf => sv.first().copied().unwrap_or(0.0),
    }
}

fn check_induced_dim(dim: Option<usize>) -> Result<()> {
    match dim {
        Some(d) if d <= POWER_DIM_CAP => Ok(()),
        Some(d) => Err(Error::Size(format!(
            "induced dimension {d} exceeds cap {POWER_DIM_CAP}"
        ))),
        None => Err(Error::Size("induced dimension overflows usize".into())),
    }
}

/// Size-t subsets of `0..d`, lexicographic.
fn subsets(d: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(t);
    fn rec(start: usize, d: usize, t: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == t {
            out.push(current.clone());
            return;
        }
        let remaining = t - current.len();
        for i in start..=d.saturating_sub(remaining) {
            current.push(i);
            rec(i + 1, d, t, current, out);
            current.pop();
        }
    }
    rec(0, d, t, &mut current, &mut out);
    out
}

/// Size-t multisets of `0..d` (nondecreasing words), lexicographic.
fn multisets(d: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(t);
    fn rec(start: usize, d: usize, t: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == t {
            out.push(current.clone());
            return;
        }
        for i in start..d {
            current.push(i);
            rec(i, d, t, current, out);
            current.pop();
        }
    }
    rec(0, d, t, &mut current, &mut out);
    out
}

/// Distinct rearrangements of a nondecreasing word.
fn arrangements(multiset: &[usize]) -> Vec<Vec<usize>> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &v in multiset {
        match counts.iter_mut().find(|(x, _)| *x == v) {
            Some((_, c)) => *c += 1,
            None => counts.push((v, 1)),
        }
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(multiset.len());
    fn rec(
        counts: &mut Vec<(usize, usize)>,
        word: &mut Vec<usize>,
        len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if word.len() == len {
            out.push(word.clone());
            return;
        }
        for idx in 0..counts.len() {
            if counts[idx].1 == 0 {
                continue;
            }
            counts[idx].1 -= 1;
            word.push(counts[idx].0);
            rec(counts, word, len, out);
            word.pop();
            counts[idx].1 += 1;
        }
    }
    let len = multiset.len();
    rec(&mut counts, &mut word, len, &mut out);
    out
}
