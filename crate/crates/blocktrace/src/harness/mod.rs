//! The inequality registry and its drivers: one named check per statement,
//! an exact-identity suite, and a seeded fuzz loop whose reports are
//! deterministic functions of `(case, spec, trials)`.

mod identities;
mod logdomain;
mod registry;

use rayon::prelude::*;
use serde::Serialize;

use crate::blockops::BlockMatrix;
use crate::decomp::{psd_test, DEFAULT_PSD_TOL};
use crate::io::MatrixFile;
use crate::randgen::{derive_trial_seed, GenClass, GenSpec};
use crate::sector::sector_membership;
use crate::spectral::SchattenQ;
use crate::{Error, Result};

pub use identities::identity_suite;
pub use logdomain::{compare_sides, LogScalar, SideSum};

/// Default relative slack for inequality margins.
pub const DEFAULT_SLACK: f64 = 1e-8;

/// Normalized margins below this count as near-equality exhibits.
pub const NEAR_EQUALITY_REL: f64 = 1e-6;

/// Hypothesis class a registry case demands of its input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// Positive semidefinite.
    Psd,
    /// Positive semidefinite with exactly two block rows.
    PsdTwoBlocks,
    /// Numerical range inside the sector of the `alpha` parameter.
    Sector,
    /// No constraint; identities hold for arbitrary input.
    Any,
}

impl Hypothesis {
    /// Re-verifies the hypothesis on a concrete input, naming the failed
    /// predicate on rejection.
    pub fn verify(&self, h: &BlockMatrix, params: &CheckParams) -> Result<()> {
        match self {
            Hypothesis::Any => Ok(()),
            Hypothesis::Psd => verify_psd(h),
            Hypothesis::PsdTwoBlocks => {
                if h.n != 2 {
                    return Err(Error::Domain(format!(
                        "hypothesis requires a 2x2 block partition, input has n = {}",
                        h.n
                    )));
                }
                verify_psd(h)
            }
            Hypothesis::Sector => {
                let alpha = params.require_alpha()?;
                if !sector_membership(&h.mat, alpha, DEFAULT_PSD_TOL)? {
                    return Err(Error::Domain(format!(
                        "input is not a sector matrix at angle {alpha} (tol {DEFAULT_PSD_TOL})"
                    )));
                }
                Ok(())
            }
        }
    }

    /// The generator class that natively realizes this hypothesis.
    pub fn natural_class(&self) -> GenClass {
        match self {
            Hypothesis::Psd | Hypothesis::PsdTwoBlocks => GenClass::Psd,
            Hypothesis::Sector => GenClass::Sector,
            Hypothesis::Any => GenClass::General,
        }
    }

    /// Whether draws from `class` satisfy this hypothesis by construction.
    pub fn admits(&self, class: GenClass) -> bool {
        match self {
            Hypothesis::Any => true,
            Hypothesis::Psd | Hypothesis::PsdTwoBlocks => {
                matches!(class, GenClass::Psd | GenClass::Ppt | GenClass::Density)
            }
            Hypothesis::Sector => matches!(class, GenClass::Sector),
        }
    }
}

fn verify_psd(h: &BlockMatrix) -> Result<()> {
    let verdict = psd_test(&h.mat, DEFAULT_PSD_TOL)?;
    if !verdict.is_psd {
        return Err(Error::Domain(format!(
            "input not PSD at tol {DEFAULT_PSD_TOL} (min eigenvalue {:.6e})",
            verdict.min_eig
        )));
    }
    Ok(())
}

/// Which extra parameter a case consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    None,
    Alpha,
    SchattenExponent,
    TensorOrder,
    SymmetricOrder,
}

/// Parameters shared by every evaluator; unused fields are ignored.
#[derive(Debug, Clone, Copy)]
pub struct CheckParams {
    pub alpha: Option<f64>,
    pub q: Option<SchattenQ>,
    pub r: Option<u32>,
    pub t: Option<u32>,
    /// Relative slack for the pass verdict.
    pub tol: f64,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self { alpha: None, q: None, r: None, t: None, tol: DEFAULT_SLACK }
    }
}

impl CheckParams {
    pub fn require_alpha(&self) -> Result<f64> {
        self.alpha
            .ok_or_else(|| Error::Usage("this case requires the alpha parameter".into()))
    }

    pub fn require_q(&self) -> Result<SchattenQ> {
        self.q
            .ok_or_else(|| Error::Usage("this case requires the q parameter".into()))
    }

    pub fn require_r(&self) -> Result<u32> {
        match self.r {
            Some(r) if r >= 1 => Ok(r),
            Some(_) => Err(Error::Usage("r must be at least 1".into())),
            None => Err(Error::Usage("this case requires the r parameter".into())),
        }
    }

    pub fn require_t(&self) -> Result<u32> {
        match self.t {
            Some(t) if t >= 1 => Ok(t),
            Some(_) => Err(Error::Usage("t must be at least 1".into())),
            None => Err(Error::Usage("this case requires the t parameter".into())),
        }
    }
}

/// One evaluated inequality: `lhs >= rhs` with `margin = lhs - rhs`, passing
/// when `margin >= -tol * scale`. Löwner checks report the minimum
/// eigenvalue of the difference as the margin (and its full spectrum in
/// `detail`); identity checks report the residual as `rhs`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Normalization denominator used by the pass rule.
    pub scale: f64,
    pub pass: bool,
    /// Set when lhs/rhs/margin are log-domain quantities.
    pub log_domain: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Vec<f64>>,
}

impl CheckOutcome {
    pub fn normalized_margin(&self) -> f64 {
        self.margin / self.scale
    }

    /// Scalar comparison with the standard relative-slack pass rule; the
    /// building block for externally constructed (e.g. mutated) cases.
    pub fn from_scalars(lhs: f64, rhs: f64, tol: f64) -> Self {
        compare_sides(&SideSum::of_value(lhs), &SideSum::of_value(rhs), tol)
    }
}

type EvalFn = Box<dyn Fn(&BlockMatrix, &CheckParams) -> Result<CheckOutcome> + Send + Sync>;

/// A registry entry: identifier, hypothesis class, parameter kind and the
/// evaluator producing `(lhs, rhs, margin)`.
pub struct InequalityCase {
    pub id: &'static str,
    pub hypothesis: Hypothesis,
    pub param: ParamKind,
    eval: EvalFn,
}

impl InequalityCase {
    pub fn new(
        id: &'static str,
        hypothesis: Hypothesis,
        param: ParamKind,
        eval: impl Fn(&BlockMatrix, &CheckParams) -> Result<CheckOutcome> + Send + Sync + 'static,
    ) -> Self {
        Self { id, hypothesis, param, eval: Box::new(eval) }
    }

    /// Verifies the hypothesis, then evaluates.
    pub fn check(&self, h: &BlockMatrix, params: &CheckParams) -> Result<CheckOutcome> {
        self.hypothesis.verify(h, params)?;
        (self.eval)(h, params)
    }
}

/// The full case registry, sorted by id.
pub fn registry() -> &'static [InequalityCase] {
    registry::registry()
}

/// Looks up a case by id.
pub fn find_case(id: &str) -> Result<&'static InequalityCase> {
    let cases = registry();
    cases
        .binary_search_by(|c| c.id.cmp(id))
        .map(|i| &cases[i])
        .map_err(|_| Error::Usage(format!("unknown inequality id {id:?}")))
}

/// Verifies the hypothesis of `id` on `h` and evaluates it.
pub fn evaluate_check(id: &str, h: &BlockMatrix, params: &CheckParams) -> Result<CheckOutcome> {
    find_case(id)?.check(h, params)
}

/// Aggregated fuzz campaign result for one case.
#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub schema_version: u32,
    pub case: String,
    pub trials: u64,
    pub failures: u64,
    /// Smallest normalized margin seen across all trials.
    pub min_margin: f64,
    pub near_equality_count: u64,
    /// Replayable worst input; present only when there were failures.
    pub worst_input: Option<MatrixFile>,
}

/// Runs `trials` independent draws of `spec` through a case. Trial seeds
/// derive from the spec seed by index, so the report does not depend on
/// scheduling; `threads == 1` forces the serial path, `threads == 0` uses
/// the global thread pool.
pub fn fuzz_case(
    case: &InequalityCase,
    spec: &GenSpec,
    trials: u64,
    params: &CheckParams,
    threads: usize,
) -> Result<FuzzReport> {
    if trials == 0 {
        return Err(Error::Usage("trial count must be at least 1".into()));
    }
    let run_trial = |i: u64| -> Result<(f64, bool)> {
        let trial_spec = spec.clone().with_seed(derive_trial_seed(spec.seed, i));
        let h = trial_spec.generate()?;
        let outcome = case.check(&h, params)?;
        Ok((outcome.normalized_margin(), outcome.pass))
    };

    let results: Vec<(f64, bool)> = match threads {
        1 => (0..trials).map(run_trial).collect::<Result<_>>()?,
        0 => (0..trials).into_par_iter().map(run_trial).collect::<Result<_>>()?,
        n => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Usage(format!("cannot build thread pool: {e}")))?;
            pool.install(|| (0..trials).into_par_iter().map(run_trial).collect::<Result<_>>())?
        }
    };

    let mut failures = 0u64;
    let mut near_equality = 0u64;
    let mut min_margin = f64::INFINITY;
    let mut worst_index = 0u64;
    for (i, (margin, pass)) in results.iter().enumerate() {
        if !pass {
            failures += 1;
        }
        if *margin < NEAR_EQUALITY_REL {
            near_equality += 1;
        }
        if *margin < min_margin {
            min_margin = *margin;
            worst_index = i as u64;
        }
    }

    let worst_input = if failures > 0 {
        let worst_spec = spec.clone().with_seed(derive_trial_seed(spec.seed, worst_index));
        Some(MatrixFile::from_block(&worst_spec.generate()?))
    } else {
        None
    };

    Ok(FuzzReport {
        schema_version: crate::io::SCHEMA_VERSION,
        case: case.id.to_string(),
        trials,
        failures,
        min_margin,
        near_equality_count: near_equality,
        worst_input,
    })
}

/// Fuzzes the registry case named `id`.
pub fn fuzz(
    id: &str,
    spec: &GenSpec,
    trials: u64,
    params: &CheckParams,
    threads: usize,
) -> Result<FuzzReport> {
    fuzz_case(find_case(id)?, spec, trials, params, threads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockops::tests::eq3_matrix;
    use crate::matrix::ComplexMatrix;

    fn psd_params() -> CheckParams {
        CheckParams::default()
    }

    fn sector_params(alpha: f64) -> CheckParams {
        CheckParams { alpha: Some(alpha), ..CheckParams::default() }
    }

    #[test]
    fn registry_is_sorted_and_unique() {
        let cases = registry();
        assert!(cases.len() >= 35, "expected the full statement registry, got {}", cases.len());
        for pair in cases.windows(2) {
            assert!(pair[0].id < pair[1].id, "registry must be strictly sorted by id");
        }
    }

    #[test]
    fn unknown_id_is_a_usage_error() {
        let h = eq3_matrix();
        assert!(matches!(
            evaluate_check("no-such-case", &h, &psd_params()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn hypothesis_violation_names_the_predicate() {
        let h = eq3_matrix().partial_transpose(); // indefinite
        let err = evaluate_check("fm", &h, &psd_params()).unwrap_err();
        assert!(err.to_string().contains("not PSD"), "{err}");

        // Eq3 is PSD but singular, hence never a sector matrix.
        let err = evaluate_check("li-sector-tr1", &eq3_matrix(), &sector_params(0.5)).unwrap_err();
        assert!(err.to_string().contains("sector"), "{err}");
    }

    #[test]
    fn fm_strong_on_identity_is_tight() {
        let h = BlockMatrix::new(2, 2, ComplexMatrix::identity(4)).unwrap();
        let out = evaluate_check("fm-strong", &h, &psd_params()).unwrap();
        assert!(out.pass);
        assert!((out.lhs - 1.0).abs() < 1e-12);
        assert!((out.rhs - 1.0).abs() < 1e-12);
        assert!(out.margin.abs() < 1e-12);
    }

    #[test]
    fn kl_trace_1_on_eq3_is_an_equality_case() {
        let out = evaluate_check("kl-trace-1", &eq3_matrix(), &psd_params()).unwrap();
        assert!(out.pass);
        assert!((out.lhs - 1.0).abs() < 1e-12, "lhs {}", out.lhs);
        assert!((out.rhs - 1.0).abs() < 1e-12, "rhs {}", out.rhs);
        assert!(out.margin.abs() < 1e-12);
    }

    #[test]
    fn lin_det_sum_on_identity() {
        let h = BlockMatrix::new(2, 2, ComplexMatrix::identity(4)).unwrap();
        let out = evaluate_check("lin-det-sum", &h, &psd_params()).unwrap();
        assert!(out.pass);
        assert!((out.lhs - 257.0).abs() < 1e-9, "lhs {}", out.lhs);
        assert!((out.rhs - 32.0).abs() < 1e-9, "rhs {}", out.rhs);
    }

    #[test]
    fn fuzz_report_is_deterministic_and_scheduling_independent() {
        let spec = GenSpec::new(GenClass::Psd, 2, 2, 42);
        let serial = fuzz("fm", &spec, 50, &psd_params(), 1).unwrap();
        let parallel = fuzz("fm", &spec, 50, &psd_params(), 4).unwrap();
        let again = fuzz("fm", &spec, 50, &psd_params(), 0).unwrap();
        let s = serde_json::to_string(&serial).unwrap();
        assert_eq!(s, serde_json::to_string(&parallel).unwrap());
        assert_eq!(s, serde_json::to_string(&again).unwrap());
        assert_eq!(serial.failures, 0);
    }

    #[test]
    fn mutated_case_produces_failures() {
        // Same shape as fm but with the denominator constant corrupted.
        let mutant = InequalityCase::new("fm-mutant", Hypothesis::Psd, ParamKind::None, |h, p| {
            let k = h.k as f64;
            let lhs = crate::decomp::det(&h.partial_trace_2()).value.re / (k + 1.0);
            let out = CheckOutcome::from_scalars(
                lhs.powi(h.k as i32),
                crate::decomp::det(&h.mat).value.re,
                p.tol,
            );
            Ok(out)
        });
        let spec = GenSpec::new(GenClass::Psd, 2, 2, 7);
        let report = fuzz_case(&mutant, &spec, 200, &psd_params(), 0).unwrap();
        assert!(report.failures > 0, "corrupted constant must be caught");
        assert!(report.worst_input.is_some());
    }

    #[test]
    fn scalar_cases_are_scale_invariant_after_normalization() {
        // Trace normalization cancels any positive rescaling of the input
        // for the homogeneous determinant/trace cases.
        let spec = GenSpec::new(GenClass::Psd, 2, 3, 3);
        let h = spec.generate().unwrap();
        let scaled = h.scale_real(3.7);
        for id in [
            "fischer", "fan-ky", "fm", "fm-strong", "lin-tr1", "lin-strong", "choi-cross",
            "choi-fm", "audenaert", "lin-det-sum", "lin-lemma", "det-3sum", "prop46-1",
            "prop46-2", "thm47-1", "thm47-2",
        ] {
            let params = CheckParams { q: Some(SchattenQ::Two), ..psd_params() };
            let a = evaluate_check(id, &h, &params).unwrap();
            let b = evaluate_check(id, &scaled, &params).unwrap();
            assert!(
                (a.normalized_margin() - b.normalized_margin()).abs() <= 1e-7,
                "{id}: {} vs {}",
                a.normalized_margin(),
                b.normalized_margin()
            );
            assert_eq!(a.pass, b.pass, "{id}");
        }
    }

    #[test]
    fn tighter_bound_statistics_for_the_first_partial_trace() {
        // Both sector bounds for tr_1 must hold on every draw. Rearranged as
        // upper bounds on |det H|, tally which is smaller per draw; no
        // pointwise dominance is asserted (the cosine exponents reorder the
        // bounds as alpha and the dimensions vary).
        let mut newer_tighter = 0u32;
        let mut older_tighter = 0u32;
        for &alpha in &[0.3, 0.9, 1.3] {
            for &(n, k) in &[(2usize, 2usize), (3, 2), (2, 3)] {
                for seed in 0..10u64 {
                    let spec = GenSpec::new(GenClass::Sector, n, k, seed).with_alpha(alpha);
                    let h = spec.generate().unwrap();
                    let params = sector_params(alpha);
                    let li = evaluate_check("li-sector-tr1", &h, &params).unwrap();
                    let kuai = evaluate_check("kuai-tr1", &h, &params).unwrap();
                    assert!(li.pass && kuai.pass, "alpha {alpha} n {n} k {k} seed {seed}");

                    let dt1 = crate::decomp::det(&h.partial_trace_1()).value.norm();
                    let (nf, kf) = (n as f64, k as f64);
                    let bound_new = (dt1 / nf.powi(k as i32)).powi(n as i32)
                        / alpha.cos().powi((n * k) as i32);
                    let bound_old = (dt1 / nf).powi(n as i32)
                        / alpha.cos().powi(((3 * n - 2) * k) as i32);
                    let _ = kf;
                    if bound_new <= bound_old {
                        newer_tighter += 1;
                    } else {
                        older_tighter += 1;
                    }
                }
            }
        }
        println!(
            "tr1 sector bounds over 90 draws: improved bound tighter on {newer_tighter}, \
             earlier bound tighter on {older_tighter}"
        );
    }
}
