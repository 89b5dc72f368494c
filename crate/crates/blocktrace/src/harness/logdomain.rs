//! Signed log-magnitude scalars and overflow-safe comparison of inequality
//! sides. Sides are sums of terms; as long as every term's log magnitude
//! stays below [`LOG_LINEAR_MAX`] the comparison happens in plain doubles,
//! otherwise both sides move to log-sum-exp.

use crate::decomp::DetResult;

use super::CheckOutcome;

/// Above this log magnitude, linear evaluation would overflow doubles.
pub const LOG_LINEAR_MAX: f64 = 700.0;

/// A real number carried as `sign * exp(log_abs)`.
#[derive(Debug, Clone, Copy)]
pub struct LogScalar {
    /// -1, 0 or +1.
    pub sign: f64,
    pub log_abs: f64,
}

impl LogScalar {
    pub fn zero() -> Self {
        Self { sign: 0.0, log_abs: f64::NEG_INFINITY }
    }

    pub fn from_real(x: f64) -> Self {
        if x == 0.0 {
            Self::zero()
        } else {
            Self { sign: x.signum(), log_abs: x.abs().ln() }
        }
    }

    /// `base^exp` for positive `base`, built directly in log space.
    pub fn from_pow(base: f64, exp: f64) -> Self {
        debug_assert!(base > 0.0, "from_pow needs a positive base");
        Self { sign: 1.0, log_abs: exp * base.ln() }
    }

    /// Determinant as a signed real; meaningful when the phase is real up
    /// to roundoff (Hermitian inputs).
    pub fn from_det_real(d: &DetResult) -> Self {
        Self { sign: d.real_sign(), log_abs: d.log_abs }
    }

    /// Determinant modulus.
    pub fn from_det_abs(d: &DetResult) -> Self {
        if d.is_singular() {
            Self::zero()
        } else {
            Self { sign: 1.0, log_abs: d.log_abs }
        }
    }

    pub fn mul(self, other: Self) -> Self {
        let sign = self.sign * other.sign;
        if sign == 0.0 {
            Self::zero()
        } else {
            Self { sign, log_abs: self.log_abs + other.log_abs }
        }
    }

    /// Integer power, `e >= 1`.
    pub fn powi(self, e: u32) -> Self {
        debug_assert!(e >= 1);
        if self.sign == 0.0 {
            Self::zero()
        } else {
            let sign = if e % 2 == 0 { self.sign * self.sign } else { self.sign };
            Self { sign, log_abs: self.log_abs * e as f64 }
        }
    }

    /// Real power of a nonnegative scalar.
    pub fn pow_real(self, e: f64) -> Self {
        debug_assert!(self.sign >= 0.0, "pow_real needs a nonnegative base");
        if self.sign == 0.0 {
            Self::zero()
        } else {
            Self { sign: 1.0, log_abs: self.log_abs * e }
        }
    }

    /// Linear value; overflows to infinity past the double range.
    pub fn value(&self) -> f64 {
        self.sign * self.log_abs.exp()
    }
}

/// One side of an inequality as a sum of signed log-scalars.
#[derive(Debug, Clone)]
pub struct SideSum {
    terms: Vec<LogScalar>,
}

impl SideSum {
    pub fn new(terms: Vec<LogScalar>) -> Self {
        Self { terms }
    }

    pub fn of_value(x: f64) -> Self {
        Self { terms: vec![LogScalar::from_real(x)] }
    }

    fn max_log(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.sign != 0.0)
            .map(|t| t.log_abs)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn linear(&self) -> f64 {
        self.terms.iter().map(LogScalar::value).sum()
    }

    /// Signed log-sum-exp: factor out the peak magnitude, sum signs in the
    /// shifted domain, fold the peak back in.
    fn signed_lse(&self) -> LogScalar {
        let peak = self.max_log();
        if peak == f64::NEG_INFINITY {
            return LogScalar::zero();
        }
        let shifted: f64 = self
            .terms
            .iter()
            .filter(|t| t.sign != 0.0)
            .map(|t| t.sign * (t.log_abs - peak).exp())
            .sum();
        if shifted == 0.0 {
            LogScalar::zero()
        } else {
            LogScalar { sign: shifted.signum(), log_abs: peak + shifted.abs().ln() }
        }
    }
}

/// Compares `lhs >= rhs` with relative slack `tol`. Linear when safe; in the
/// log-domain branch the outcome's `lhs`/`rhs`/`margin` are log quantities
/// and `log_domain` is set.
pub fn compare_sides(lhs: &SideSum, rhs: &SideSum, tol: f64) -> CheckOutcome {
    if lhs.max_log().max(rhs.max_log()) <= LOG_LINEAR_MAX {
        let l = lhs.linear();
        let r = rhs.linear();
        let scale = 1.0f64.max(l.abs()).max(r.abs());
        let margin = l - r;
        return CheckOutcome {
            lhs: l,
            rhs: r,
            margin,
            scale,
            pass: margin >= -tol * scale,
            log_domain: false,
            detail: None,
        };
    }

    let l = lhs.signed_lse();
    let r = rhs.signed_lse();
    let (l_repr, r_repr, pass) = if l.sign > 0.0 && r.sign > 0.0 {
        (l.log_abs, r.log_abs, l.log_abs - r.log_abs >= -tol)
    } else {
        // Degenerate sign patterns at astronomical magnitude: decide by the
        // sign ordering and report order-preserving pseudo-logs.
        (signed_pseudo_log(l), signed_pseudo_log(r), match l.sign.partial_cmp(&r.sign) {
            Some(std::cmp::Ordering::Less) => false,
            Some(std::cmp::Ordering::Greater) => true,
            _ => {
                // Equal signs: zero-zero passes, negative pairs compare
                // magnitudes the other way round.
                l.sign == 0.0 || r.log_abs - l.log_abs >= -tol
            }
        })
    };
    CheckOutcome {
        lhs: l_repr,
        rhs: r_repr,
        margin: l_repr - r_repr,
        scale: 1.0,
        pass,
        log_domain: true,
        detail: None,
    }
}

/// Monotone embedding of signed log-magnitudes into plain floats: zero maps
/// to zero, positives to `log + offset`, negatives mirrored.
fn signed_pseudo_log(x: LogScalar) -> f64 {
    const OFFSET: f64 = 760.0; // below exp(-760) everything underflows anyway
    if x.sign == 0.0 {
        0.0
    } else {
        x.sign * (x.log_abs + OFFSET).max(0.0)
    }
}
