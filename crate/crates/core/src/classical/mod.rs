//! Jacobi, Laguerre and Hermite polynomials and the Jacobi special cases
//! (Gegenbauer, Legendre, Chebyshev of the first and second kind).
//!
//! Values come from the explicit hypergeometric series summed in
//! double-double, so they are an independent check on the three-term
//! recurrences returned by [`FamilySpec::recurrence`].

pub mod hyp;
pub mod identities;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{named, Measure};
use crate::numeric::poly::DdPoly;
use crate::numeric::special::{gamma, ln_gamma, pochhammer_ratio_dd};
use crate::numeric::DoubleDouble;
use crate::recurrence::{Coefficients, Form, RecurrenceSystem};

pub use hyp::{hyp_terminating, HypergeometricTerm};
pub use identities::*;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Jacobi { alpha: f64, beta: f64 },
    Laguerre { alpha: f64 },
    Hermite,
    Gegenbauer { lambda: f64 },
    Legendre,
    ChebyshevT,
    ChebyshevU,
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Jacobi { .. } => "jacobi",
            FamilySpec::Laguerre { .. } => "laguerre",
            FamilySpec::Hermite => "hermite",
            FamilySpec::Gegenbauer { .. } => "gegenbauer",
            FamilySpec::Legendre => "legendre",
            FamilySpec::ChebyshevT => "chebyshev_t",
            FamilySpec::ChebyshevU => "chebyshev_u",
        }
    }

    /// Parameter domain in which the family is orthogonal for a positive weight.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Jacobi { alpha, beta } => {
                check(alpha > -1.0, "alpha", alpha, "must exceed -1")?;
                check(beta > -1.0, "beta", beta, "must exceed -1")
            }
            FamilySpec::Laguerre { alpha } => check(alpha > -1.0, "alpha", alpha, "must exceed -1"),
            FamilySpec::Gegenbauer { lambda } => {
                check(lambda > -0.5, "lambda", lambda, "must exceed -1/2")?;
                check(lambda != 0.0, "lambda", lambda, "lambda = 0 is excluded")
            }
            _ => Ok(()),
        }
    }

    /// `(alpha, beta)` and the factor `c_n` with `p_n = c_n P_n^(alpha,beta)`,
    /// for the Jacobi family and its special cases.
    pub fn jacobi_parameters(&self, n: usize) -> Option<(f64, f64, DoubleDouble)> {
        match *self {
            FamilySpec::Jacobi { alpha, beta } => Some((alpha, beta, DoubleDouble::ONE)),
            FamilySpec::Legendre => Some((0.0, 0.0, DoubleDouble::ONE)),
            FamilySpec::Gegenbauer { lambda } => Some((
                lambda - 0.5,
                lambda - 0.5,
                pochhammer_ratio_dd(2.0 * lambda, lambda + 0.5, n),
            )),
            FamilySpec::ChebyshevT => Some((-0.5, -0.5, pochhammer_ratio_dd(1.0, 0.5, n))),
            FamilySpec::ChebyshevU => Some((0.5, 0.5, pochhammer_ratio_dd(2.0, 1.5, n))),
            _ => None,
        }
    }

    pub fn eval_dd(&self, n: usize, x: DoubleDouble) -> Result<DoubleDouble> {
        match *self {
            FamilySpec::Laguerre { alpha } => laguerre_dd(n, alpha, x),
            FamilySpec::Hermite => Ok(hermite_poly(n).eval_dd(x)),
            _ => {
                let (a, b, c) = self.jacobi_parameters(n).expect("Jacobi-type family");
                Ok(jacobi_dd(n, a, b, x)? * c)
            }
        }
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.eval_dd(n, DoubleDouble::new(x))?.to_f64())
    }

    /// `p_n` as an explicit polynomial with double-double coefficients.
    pub fn series_poly(&self, n: usize) -> Result<DdPoly> {
        match *self {
            FamilySpec::Laguerre { alpha } => laguerre_poly(n, alpha),
            FamilySpec::Hermite => Ok(hermite_poly(n)),
            _ => {
                let (a, b, c) = self.jacobi_parameters(n).expect("Jacobi-type family");
                Ok(jacobi_poly(n, a, b)?.scaled(c))
            }
        }
    }

    /// Three-term recurrence in the family's standard normalization, `p_0 = 1`.
    pub fn recurrence(&self) -> RecurrenceSystem {
        let sys = match *self {
            FamilySpec::Jacobi { alpha, beta } => {
                RecurrenceSystem::from_fn(Form::General, 1.0, move |n| jacobi_coefficients(n, alpha, beta))
            }
            FamilySpec::Laguerre { alpha } => RecurrenceSystem::from_fn(Form::General, 1.0, move |n| {
                let n = n as f64;
                Coefficients::new(-(n + 1.0), 2.0 * n + alpha + 1.0, -(n + alpha))
            }),
            FamilySpec::Hermite => {
                RecurrenceSystem::from_fn(Form::General, 1.0, |n| Coefficients::new(0.5, 0.0, n as f64))
            }
            FamilySpec::Gegenbauer { lambda } => RecurrenceSystem::from_fn(Form::General, 1.0, move |n| {
                let n = n as f64;
                let d = 2.0 * (n + lambda);
                Coefficients::new((n + 1.0) / d, 0.0, (n + 2.0 * lambda - 1.0) / d)
            }),
            FamilySpec::Legendre => RecurrenceSystem::from_fn(Form::General, 1.0, |n| {
                let n = n as f64;
                Coefficients::new((n + 1.0) / (2.0 * n + 1.0), 0.0, n / (2.0 * n + 1.0))
            }),
            FamilySpec::ChebyshevT => RecurrenceSystem::from_fn(Form::General, 1.0, |n| {
                if n == 0 {
                    Coefficients::new(1.0, 0.0, 0.0)
                } else {
                    Coefficients::new(0.5, 0.0, 0.5)
                }
            }),
            FamilySpec::ChebyshevU => {
                RecurrenceSystem::from_fn(Form::General, 1.0, |_| Coefficients::new(0.5, 0.0, 0.5))
            }
        };
        sys.with_label(self.name())
    }

    /// Orthogonality weight without any normalizer.
    pub fn measure(&self) -> Result<Measure> {
        self.validate()?;
        Ok(match *self {
            FamilySpec::Jacobi { alpha, beta } => named::jacobi(alpha, beta)?,
            FamilySpec::Laguerre { alpha } => named::laguerre(alpha)?,
            FamilySpec::Hermite => named::hermite(),
            FamilySpec::Gegenbauer { lambda } => {
                let e = lambda - 0.5;
                named::jacobi(e, e)?.with_label("gegenbauer")
            }
            FamilySpec::Legendre => named::legendre(),
            FamilySpec::ChebyshevT => named::chebyshev_t(),
            FamilySpec::ChebyshevU => named::chebyshev_u(),
        })
    }

    /// Quadratic norm `h_n` against [`FamilySpec::measure`].
    pub fn norm(&self, n: usize) -> f64 {
        match *self {
            FamilySpec::Laguerre { alpha } => (ln_gamma(n as f64 + alpha + 1.0) - ln_gamma(n as f64 + 1.0)).exp(),
            FamilySpec::Hermite => (0.5 * PI.ln() + n as f64 * 2f64.ln() + ln_gamma(n as f64 + 1.0)).exp(),
            _ => {
                let (a, b, c) = self.jacobi_parameters(n).expect("Jacobi-type family");
                let c = c.to_f64();
                jacobi_norm(n, a, b) * c * c
            }
        }
    }

    /// Total mass of the unnormalized weight.
    pub fn mu0(&self) -> f64 {
        self.norm(0)
    }

    /// Convex hull of the support.
    pub fn support(&self) -> (f64, f64) {
        match self {
            FamilySpec::Laguerre { .. } => (0.0, f64::INFINITY),
            FamilySpec::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            _ => (-1.0, 1.0),
        }
    }

    /// Whether the weight is even.
    pub fn is_symmetric(&self) -> bool {
        match *self {
            FamilySpec::Jacobi { alpha, beta } => alpha == beta,
            FamilySpec::Laguerre { .. } => false,
            _ => true,
        }
    }
}

fn check(ok: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason })
    }
}

/// Jacobi recurrence row for `P_n^(alpha,beta)`.
pub fn jacobi_coefficients(n: usize, alpha: f64, beta: f64) -> Coefficients {
    let (a, b) = (alpha, beta);
    let nf = n as f64;
    let s = 2.0 * nf + a + b;
    if n == 0 {
        return Coefficients::new(2.0 / (a + b + 2.0), (b - a) / (a + b + 2.0), 0.0);
    }
    Coefficients::new(
        2.0 * (nf + 1.0) * (nf + a + b + 1.0) / ((s + 1.0) * (s + 2.0)),
        (b * b - a * a) / (s * (s + 2.0)),
        2.0 * (nf + a) * (nf + b) / (s * (s + 1.0)),
    )
}

/// `h_n` for `P_n^(alpha,beta)` with weight `(1-x)^alpha (1+x)^beta`.
pub fn jacobi_norm(n: usize, alpha: f64, beta: f64) -> f64 {
    let (a, b) = (alpha, beta);
    let pow = 2f64.powf(a + b + 1.0);
    if n == 0 {
        return pow * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
    }
    if n > 300 {
        let nf = n as f64;
        let ln = (a + b + 1.0) * 2f64.ln() + ln_gamma(nf + a + 1.0) + ln_gamma(nf + b + 1.0)
            - ln_gamma(nf + a + b + 1.0)
            - ln_gamma(nf + 1.0);
        return ln.exp() / (2.0 * nf + a + b + 1.0);
    }
    // h_1 avoids the removable 0/0 at n + a + b + 1 = 0
    let mut h = pow * gamma(a + 2.0) * gamma(b + 2.0) / (gamma(a + b + 2.0) * (a + b + 3.0));
    for k in 1..n {
        let k = k as f64;
        h *= (k + a + 1.0) * (k + b + 1.0) * (2.0 * k + a + b + 1.0)
            / ((k + a + b + 1.0) * (k + 1.0) * (2.0 * k + a + b + 3.0));
    }
    h
}

/// Upper and lower `2F1` parameters of `P_n^(alpha,beta)`, formed without rounding.
fn jacobi_parameters_dd(n: usize, alpha: f64, beta: f64) -> ([DoubleDouble; 2], [DoubleDouble; 1]) {
    let d = DoubleDouble::new;
    let nf = n as f64;
    ([d(-nf), d(nf) + alpha + beta + 1.0], [d(alpha) + 1.0])
}

/// `P_n^(alpha,beta)` as a polynomial in `s = (1 - x)/2`.
pub fn jacobi_poly(n: usize, alpha: f64, beta: f64) -> Result<DdPoly> {
    let (up, lo) = jacobi_parameters_dd(n, alpha, beta);
    let series = hyp::hyp_coefficients_dd(&up, &lo)?;
    let pref = pochhammer_ratio_dd(alpha + 1.0, 1.0, n);
    Ok(DdPoly::in_basis(series.into_iter().map(|c| c * pref).collect(), 1.0, -2.0))
}

/// `P_n^(alpha,beta)(x)`, expanded about the endpoint nearer to `x`.
pub fn jacobi_dd(n: usize, alpha: f64, beta: f64, x: DoubleDouble) -> Result<DoubleDouble> {
    // the series in (1-x)/2 cancels badly near x = -1
    if x.to_f64() < 0.0 && alpha > -1.0 && beta > -1.0 {
        let v = jacobi_about_one(n, beta, alpha, -x)?;
        return Ok(if n % 2 == 1 { -v } else { v });
    }
    jacobi_about_one(n, alpha, beta, x)
}

fn jacobi_about_one(n: usize, alpha: f64, beta: f64, x: DoubleDouble) -> Result<DoubleDouble> {
    let (up, lo) = jacobi_parameters_dd(n, alpha, beta);
    let s = (DoubleDouble::ONE - x) / 2.0;
    let f = hyp::hyp_terminating_ddp(&up, &lo, s)?;
    Ok(f * pochhammer_ratio_dd(alpha + 1.0, 1.0, n))
}

/// `P_n^(alpha,beta)(x)` from the terminating `2F1`.
pub fn jacobi_eval(n: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    Ok(jacobi_dd(n, alpha, beta, DoubleDouble::new(x))?.to_f64())
}

pub fn laguerre_poly(n: usize, alpha: f64) -> Result<DdPoly> {
    let nf = n as f64;
    let series = hyp::hyp_coefficients_dd(&[DoubleDouble::new(-nf)], &[DoubleDouble::new(alpha) + 1.0])?;
    let pref = pochhammer_ratio_dd(alpha + 1.0, 1.0, n);
    Ok(DdPoly::new(series.into_iter().map(|c| c * pref).collect()))
}

pub fn laguerre_dd(n: usize, alpha: f64, x: DoubleDouble) -> Result<DoubleDouble> {
    let nf = n as f64;
    let f = hyp::hyp_terminating_ddp(&[DoubleDouble::new(-nf)], &[DoubleDouble::new(alpha) + 1.0], x)?;
    Ok(f * pochhammer_ratio_dd(alpha + 1.0, 1.0, n))
}

/// `L_n^alpha(x)` from the terminating `1F1`.
pub fn laguerre_eval(n: usize, alpha: f64, x: f64) -> Result<f64> {
    Ok(laguerre_dd(n, alpha, DoubleDouble::new(x))?.to_f64())
}

/// `H_n` in the monomial basis, leading coefficient `2^n`.
pub fn hermite_poly(n: usize) -> DdPoly {
    let mut coeffs = vec![DoubleDouble::ZERO; n + 1];
    let mut t = DoubleDouble::new(2f64.powi(n as i32));
    for j in 0..=n / 2 {
        coeffs[n - 2 * j] = t;
        let m = (n - 2 * j) as f64;
        t = -(t * (m * (m - 1.0))) / (4.0 * (j as f64 + 1.0));
    }
    DdPoly::new(coeffs)
}

pub fn hermite_eval(n: usize, x: f64) -> f64 {
    hermite_poly(n).eval(x)
}

/// Gegenbauer, Legendre or Chebyshev polynomial through its Jacobi rescaling.
pub fn special_case_eval(family: &FamilySpec, n: usize, x: f64) -> Result<f64> {
    if family.jacobi_parameters(n).is_none() {
        return Err(Error::Invalid(format!("{} is not a Jacobi special case", family.name())));
    }
    family.validate()?;
    family.eval(n, x)
}

/// Monic Jacobi polynomial `p_n^(alpha,beta)`, from the series divided by
/// its leading coefficient `(n+alpha+beta+1)_n / (2^n n!)`.
pub fn monic_jacobi_poly(n: usize, alpha: f64, beta: f64) -> Result<DdPoly> {
    let p = jacobi_poly(n, alpha, beta)?;
    let lc = p.leading_coefficient();
    Ok(p.scaled(DoubleDouble::ONE / lc))
}

pub fn monic_laguerre_poly(n: usize, alpha: f64) -> Result<DdPoly> {
    let p = laguerre_poly(n, alpha)?;
    let lc = p.leading_coefficient();
    Ok(p.scaled(DoubleDouble::ONE / lc))
}

pub fn monic_hermite_poly(n: usize) -> DdPoly {
    hermite_poly(n).scaled(DoubleDouble::ONE / 2f64.powi(n as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::special::pochhammer;

    #[test]
    fn jacobi_at_one() {
        let (a, b) = (0.7, -0.3);
        for n in 0..8 {
            let expect = pochhammer(a + 1.0, n) / pochhammer(1.0, n);
            assert!((jacobi_eval(n, a, b, 1.0).unwrap() - expect).abs() < 1e-14 * expect.abs());
        }
    }

    #[test]
    fn jacobi_symmetry() {
        let (a, b, x) = (1.3, 0.2, 0.41);
        for n in 0..10 {
            let l = jacobi_eval(n, a, b, -x).unwrap();
            let r = if n % 2 == 0 { 1.0 } else { -1.0 } * jacobi_eval(n, b, a, x).unwrap();
            assert!((l - r).abs() < 1e-13 * (1.0 + r.abs()));
        }
    }

    #[test]
    fn laguerre_examples() {
        assert!((laguerre_eval(1, 0.0, 2.0).unwrap() + 1.0).abs() < 1e-16);
        assert_eq!(laguerre_eval(0, 3.0, 7.0).unwrap(), 1.0);
        let a = 1.5;
        for n in 0..6 {
            let expect = pochhammer(a + 1.0, n) / pochhammer(1.0, n);
            assert!((laguerre_eval(n, a, 0.0).unwrap() - expect).abs() < 1e-14 * expect);
        }
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite_eval(2, 1.0), 2.0);
        assert_eq!(hermite_eval(0, 0.3), 1.0);
        assert_eq!(hermite_eval(3, 0.0), 0.0);
        assert_eq!(hermite_poly(5).leading_coefficient().to_f64(), 32.0);
    }

    #[test]
    fn special_cases() {
        let t = special_case_eval(&FamilySpec::ChebyshevT, 3, 0.4f64.cos()).unwrap();
        assert!((t - 1.2f64.cos()).abs() < 1e-14);
        for n in 0..6 {
            assert!((special_case_eval(&FamilySpec::Legendre, n, 1.0).unwrap() - 1.0).abs() < 1e-14);
        }
        let x = 0.35;
        assert!((special_case_eval(&FamilySpec::ChebyshevU, 1, x).unwrap() - 2.0 * x).abs() < 1e-15);
        let th = 0.9f64;
        let u = special_case_eval(&FamilySpec::ChebyshevU, 5, th.cos()).unwrap();
        assert!((u - (6.0 * th).sin() / th.sin()).abs() < 1e-13);
        assert!(special_case_eval(&FamilySpec::Gegenbauer { lambda: 0.0 }, 2, 0.1).is_err());
        assert!(special_case_eval(&FamilySpec::Hermite, 2, 0.1).is_err());
    }

    #[test]
    fn gegenbauer_recurrence_matches_series() {
        let fam = FamilySpec::Gegenbauer { lambda: 1.7 };
        let sys = fam.recurrence();
        for n in 0..12 {
            let s = fam.eval(n, 0.33).unwrap();
            let r = sys.eval(n, 0.33).unwrap();
            assert!((s - r).abs() < 1e-12 * (1.0 + s.abs()), "n={n}: {s} vs {r}");
        }
    }

    #[test]
    fn jacobi_pole_rejected() {
        assert!(matches!(jacobi_eval(3, -2.0, 0.0, 0.1), Err(Error::ParameterPole { .. })));
    }

    #[test]
    fn closed_form_norms() {
        for n in 0..10 {
            let nf = n as f64;
            assert!((FamilySpec::Legendre.norm(n) - 2.0 / (2.0 * nf + 1.0)).abs() < 1e-14);
            let t = if n == 0 { PI } else { PI / 2.0 };
            assert!((FamilySpec::ChebyshevT.norm(n) - t).abs() < 1e-13);
            assert!((FamilySpec::ChebyshevU.norm(n) - PI / 2.0).abs() < 1e-13);
        }
        let g = FamilySpec::Gegenbauer { lambda: 1.0 };
        assert!((g.norm(4) - PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn serde_tags() {
        let s = serde_json::to_string(&FamilySpec::ChebyshevT).unwrap();
        assert_eq!(s, r#"{"family":"chebyshev_t"}"#);
        let j: FamilySpec = serde_json::from_str(r#"{"family":"jacobi","alpha":0.5,"beta":1}"#).unwrap();
        assert_eq!(j, FamilySpec::Jacobi { alpha: 0.5, beta: 1.0 });
    }
}
