//! Seeded generators for the hypothesis classes the harness draws from:
//! PSD block matrices, PPT matrices built separably, sector matrices with a
//! prescribed angle, density matrices, and plain Hermitian/general noise.
//!
//! Randomness comes from an in-repo 64-bit counter generator (splitmix-style
//! shift-xor-multiply avalanche) so that a given [`GenSpec`] produces
//! bit-identical output on every platform and in every host language bound
//! to this library.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blockops::BlockMatrix;
use crate::decomp::{hermitian_eig_decomp, hermitian_eigs, DEFAULT_PSD_TOL};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::sector::ALPHA_CAP;
use crate::{Error, Result};

/// Largest matrix order the generators produce.
pub const GEN_DIM_CAP: usize = 64;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Bounded retries for the optional rejection-sampled PPT construction.
const PPT_REJECTION_LIMIT: u32 = 10_000;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `trial_index` of a campaign keyed by `master_seed`.
/// Distinct indices yield distinct seeds (the avalanche is a bijection and
/// the golden-ratio multiples are distinct).
pub fn derive_trial_seed(master_seed: u64, trial_index: u64) -> u64 {
    mix64(master_seed ^ trial_index.wrapping_mul(GOLDEN_GAMMA))
}

/// Counter-based stream: state advances by the golden-ratio increment and
/// each output is the avalanche of the new state.
#[derive(Debug, Clone)]
pub struct SeedStream {
    state: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard complex normal (`E|z|^2 = 1`) via Box-Muller.
    pub fn complex_normal(&mut self) -> Complex64 {
        // First uniform shifted into (0, 1] so the logarithm is finite.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.uniform();
        let radius = (-u1.ln()).sqrt(); // scaled so that E|z|^2 = 1
        let angle = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(radius * angle.cos(), radius * angle.sin())
    }

    fn general(&mut self, dim: usize) -> ComplexMatrix {
        let entries = (0..dim * dim).map(|_| self.complex_normal()).collect();
        ComplexMatrix::new(dim, entries).expect("normal entries are finite")
    }

    fn hermitian(&mut self, dim: usize) -> ComplexMatrix {
        self.general(dim).hermitian_part()
    }

    /// Gram construction `G* G`; PSD with unbounded but finite condition
    /// numbers.
    fn psd(&mut self, dim: usize) -> ComplexMatrix {
        let g = self.general(dim);
        g.adjoint().matmul(&g).expect("square")
    }

    /// Well-conditioned PSD variant: normalized Gram matrix plus `0.1 I`,
    /// used where an inverse square root must stay tame.
    fn psd_ridged(&mut self, dim: usize) -> ComplexMatrix {
        let gram = self.psd(dim).scale_real(1.0 / dim as f64);
        gram.add(&ComplexMatrix::identity(dim).scale_real(0.1)).expect("square")
    }
}

/// Hypothesis classes the generator can realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenClass {
    Psd,
    Ppt,
    Sector,
    Density,
    Hermitian,
    General,
}

impl FromStr for GenClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psd" => Ok(GenClass::Psd),
            "ppt" => Ok(GenClass::Ppt),
            "sector" => Ok(GenClass::Sector),
            "density" => Ok(GenClass::Density),
            "hermitian" => Ok(GenClass::Hermitian),
            "general" => Ok(GenClass::General),
            other => Err(Error::Usage(format!(
                "unknown generator class {other:?}; expected psd, ppt, sector, density, hermitian or general"
            ))),
        }
    }
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GenClass::Psd => "psd",
            GenClass::Ppt => "ppt",
            GenClass::Sector => "sector",
            GenClass::Density => "density",
            GenClass::Hermitian => "hermitian",
            GenClass::General => "general",
        };
        write!(f, "{name}")
    }
}

/// Full description of one generated matrix; equal specs yield bit-identical
/// matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenSpec {
    pub class: GenClass,
    pub n: usize,
    pub k: usize,
    #[serde(default)]
    pub alpha: f64,
    pub seed: u64,
    #[serde(default = "default_scale")]
    pub scale: f64,
    /// Diversity-study switch: draw PPT matrices by rejection sampling from
    /// the PSD class instead of the separable construction.
    #[serde(default)]
    pub ppt_rejection: bool,
}

fn default_scale() -> f64 {
    1.0
}

impl GenSpec {
    pub fn new(class: GenClass, n: usize, k: usize, seed: u64) -> Self {
        Self { class, n, k, alpha: 0.0, seed, scale: 1.0, ppt_rejection: false }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 {
            return Err(Error::Usage("block dimensions must be positive".into()));
        }
        if self.n * self.k > GEN_DIM_CAP {
            return Err(Error::Usage(format!(
                "generated dimension {} exceeds cap {GEN_DIM_CAP}",
                self.n * self.k
            )));
        }
        if !(0.0..=ALPHA_CAP).contains(&self.alpha) {
            return Err(Error::Usage(format!(
                "sector angle must lie in [0, {ALPHA_CAP}], got {}",
                self.alpha
            )));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::Usage("scale must be a positive finite real".into()));
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<BlockMatrix> {
        generate(self)
    }
}

/// Draws the matrix described by `spec`.
pub fn generate(spec: &GenSpec) -> Result<BlockMatrix> {
    spec.validate()?;
    let d = spec.n * spec.k;
    let mut rng = SeedStream::new(spec.seed);
    let mat = match spec.class {
        GenClass::General => rng.general(d).scale_real(spec.scale),
        GenClass::Hermitian => rng.hermitian(d).scale_real(spec.scale),
        GenClass::Psd => rng.psd(d).scale_real(spec.scale),
        GenClass::Density => {
            let m = rng.psd(d);
            let tr = m.trace().re;
            m.scale_real(1.0 / tr)
        }
        GenClass::Ppt => {
            if spec.ppt_rejection {
                ppt_by_rejection(&mut rng, spec)?
            } else {
                // Separable sum of three Kronecker products of PSD factors;
                // PPT by construction.
                let mut acc = ComplexMatrix::zeros(d);
                for _ in 0..3 {
                    let b = rng.psd(spec.n);
                    let c = rng.psd(spec.k);
                    acc = acc.add(&b.kron(&c)?)?;
                }
                acc.scale_real(spec.scale)
            }
        }
        GenClass::Sector => sector_matrix(&mut rng, d, spec.alpha, spec.scale),
    };
    BlockMatrix::new(spec.n, spec.k, mat)
}

/// `R^{1/2} (I + i tan(alpha) S) R^{1/2}`, with `R` well-conditioned positive
/// definite and `S` a Hermitian contraction of spectral radius exactly one,
/// so the minimal sector angle is attained at `alpha`.
fn sector_matrix(rng: &mut SeedStream, d: usize, alpha: f64, scale: f64) -> ComplexMatrix {
    let r = rng.psd_ridged(d);
    let (eigs, v) = hermitian_eig_decomp(&r).expect("ridged Gram matrix is Hermitian");
    let sqrt = ComplexMatrix::from_fn(d, |i, j| {
        if i == j {
            Complex64::new(eigs[i].max(0.0).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let r_half = v.matmul(&sqrt).and_then(|m| m.matmul(&v.adjoint())).expect("square");
    if alpha == 0.0 {
        return r.scale_real(scale);
    }

    let s0 = rng.hermitian(d);
    let radius = hermitian_eigs(&s0)
        .expect("hermitian by construction")
        .into_iter()
        .map(f64::abs)
        .fold(0.0f64, f64::max);
    let s = if radius > 0.0 { s0.scale_real(1.0 / radius) } else { ComplexMatrix::identity(d) };

    let core = ComplexMatrix::identity(d)
        .add(&s.scale(Complex64::new(0.0, alpha.tan())))
        .expect("square");
    r_half
        .matmul(&core)
        .and_then(|m| m.matmul(&r_half))
        .expect("square")
        .scale_real(scale)
}

fn ppt_by_rejection(rng: &mut SeedStream, spec: &GenSpec) -> Result<ComplexMatrix> {
    let d = spec.n * spec.k;
    for _ in 0..PPT_REJECTION_LIMIT {
        let candidate = rng.psd(d).scale_real(spec.scale);
        let block = BlockMatrix::new(spec.n, spec.k, candidate.clone())?;
        if block.ppt_test(DEFAULT_PSD_TOL)?.is_ppt() {
            return Ok(candidate);
        }
    }
    Err(Error::Usage(format!(
        "rejection sampling found no PPT draw in {PPT_REJECTION_LIMIT} attempts for n={}, k={}",
        spec.n, spec.k
    )))
}
