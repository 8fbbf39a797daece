//! Terminating generalized hypergeometric series `rFs`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::DoubleDouble;

/// `rFs(upper; lower; argument)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricTerm {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub argument: f64,
}

impl HypergeometricTerm {
    pub fn new(upper: Vec<f64>, lower: Vec<f64>, argument: f64) -> Self {
        Self {
            upper,
            lower,
            argument,
        }
    }

    /// Index of the last nonzero term: `n` for the first upper parameter equal to `-n`.
    pub fn termination(&self) -> Option<usize> {
        termination(&self.upper)
    }

    pub fn eval(&self) -> Result<f64> {
        hyp_terminating(self)
    }
}

pub(crate) fn nonpositive_integer(a: f64) -> Option<usize> {
    (a <= 0.0 && a == a.round() && a > -((1u64 << 52) as f64)).then(|| (-a) as usize)
}

fn termination(upper: &[f64]) -> Option<usize> {
    upper.iter().filter_map(|&a| nonpositive_integer(a)).min()
}

/// Series coefficients `t_k = prod (a_i)_k / prod (b_j)_k / k!` for `k = 0..=n`.
pub fn hyp_coefficients(upper: &[f64], lower: &[f64]) -> Result<Vec<DoubleDouble>> {
    let up: Vec<DoubleDouble> = upper.iter().map(|&a| DoubleDouble::new(a)).collect();
    let lo: Vec<DoubleDouble> = lower.iter().map(|&b| DoubleDouble::new(b)).collect();
    hyp_coefficients_dd(&up, &lo)
}

/// [`hyp_coefficients`] with parameters given in double-double, so that sums
/// such as `n + alpha + beta + 1` enter the series without rounding.
pub fn hyp_coefficients_dd(upper: &[DoubleDouble], lower: &[DoubleDouble]) -> Result<Vec<DoubleDouble>> {
    let n = upper
        .iter()
        .filter(|a| a.lo == 0.0)
        .filter_map(|a| nonpositive_integer(a.hi))
        .min()
        .ok_or(Error::NonTerminating)?;
    for b in lower {
        if b.lo != 0.0 {
            continue;
        }
        if let Some(m) = nonpositive_integer(b.hi) {
            if m < n {
                return Err(Error::ParameterPole {
                    parameter: b.hi,
                    term: m + 1,
                });
            }
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut t = DoubleDouble::ONE;
    out.push(t);
    for k in 0..n {
        let kf = k as f64;
        for &a in upper {
            t *= a + kf;
        }
        for &b in lower {
            t = t / (b + kf);
        }
        t = t / (kf + 1.0);
        out.push(t);
    }
    Ok(out)
}

/// Terminating `rFs` at a double-double argument, summed by Horner's rule.
pub fn hyp_terminating_dd(upper: &[f64], lower: &[f64], z: DoubleDouble) -> Result<DoubleDouble> {
    Ok(horner(&hyp_coefficients(upper, lower)?, z))
}

/// Terminating `rFs` with double-double parameters and argument.
pub fn hyp_terminating_ddp(upper: &[DoubleDouble], lower: &[DoubleDouble], z: DoubleDouble) -> Result<DoubleDouble> {
    Ok(horner(&hyp_coefficients_dd(upper, lower)?, z))
}

fn horner(coeffs: &[DoubleDouble], z: DoubleDouble) -> DoubleDouble {
    let mut acc = DoubleDouble::ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

pub fn hyp_terminating(spec: &HypergeometricTerm) -> Result<f64> {
    Ok(hyp_terminating_dd(&spec.upper, &spec.lower, DoubleDouble::new(spec.argument))?.to_f64())
}

/// Residual of the argument reflection
/// `2F1(-n, n+a+b+1; a+1; z) = (-1)^n (b+1)_n / (a+1)_n 2F1(-n, n+a+b+1; b+1; 1-z)`,
/// relative to the larger side.
pub fn reflection_residual(n: usize, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    let nf = n as f64;
    let d = DoubleDouble::new;
    let up = [d(-nf), d(nf) + alpha + beta + 1.0];
    let lhs = hyp_terminating_ddp(&up, &[d(alpha) + 1.0], d(z))?;
    let one_minus = DoubleDouble::ONE - z;
    let mut rhs = hyp_terminating_ddp(&up, &[d(beta) + 1.0], one_minus)?
        * crate::numeric::special::pochhammer_ratio_dd(beta + 1.0, alpha + 1.0, n);
    if n % 2 == 1 {
        rhs = -rhs;
    }
    let scale = lhs.to_f64().abs().max(rhs.to_f64().abs()).max(f64::MIN_POSITIVE);
    Ok((lhs - rhs).to_f64().abs() / scale)
}
