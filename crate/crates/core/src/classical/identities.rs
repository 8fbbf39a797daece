//! Residual checks for the structural identities of the classical families:
//! differential equations, shift operators, Rodrigues formulas, quadratic
//! transformations, even-weight splitting, limit relations and the
//! electrostatic equilibrium of Jacobi zeros.
//!
//! Every derivative is taken on series coefficients, never by differencing.

use serde::{Deserialize, Serialize};

use super::{
    hermite_poly, jacobi_poly, laguerre_poly, monic_hermite_poly, monic_jacobi_poly, monic_laguerre_poly,
    FamilySpec,
};
use crate::error::{Error, Result};
use crate::measures::named;
use crate::numeric::special::{ln_gamma, pochhammer_dd, pochhammer_ratio_dd};
use crate::numeric::DoubleDouble;
use crate::recurrence::{Coefficients, Form, RecurrenceSystem};

/// Residual of an identity together with the magnitude of the terms it balances.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub value: f64,
    pub scale: f64,
}

impl Residual {
    pub(crate) fn new(value: DoubleDouble, scale: f64) -> Self {
        Self {
            value: value.to_f64(),
            scale,
        }
    }

    /// `|value| / scale`, or `|value|` when the scale vanishes.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.value.abs() / self.scale
        } else {
            self.value.abs()
        }
    }
}

fn dd(x: f64) -> DoubleDouble {
    DoubleDouble::new(x)
}

fn abs(x: DoubleDouble) -> f64 {
    x.to_f64().abs()
}

/// `sigma p'' + tau p' + lambda_n p` for the family's second-order equation.
pub fn ode_residual(family: &FamilySpec, n: usize, x: f64) -> Result<Residual> {
    let p = family.series_poly(n)?;
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let xd = dd(x);
    let (v0, v1, v2) = (p.eval_dd(xd), d1.eval_dd(xd), d2.eval_dd(xd));
    let nf = n as f64;
    let (sigma, tau, lambda) = match family.jacobi_parameters(n) {
        Some((a, b, _)) => (
            DoubleDouble::ONE - xd * xd,
            dd(b - a) - xd * (a + b + 2.0),
            nf * (nf + a + b + 1.0),
        ),
        None => match *family {
            FamilySpec::Laguerre { alpha } => (xd, dd(alpha + 1.0) - xd, nf),
            _ => (DoubleDouble::ONE, -(xd * 2.0), 2.0 * nf),
        },
    };
    let terms = [sigma * v2, tau * v1, v0 * lambda];
    Ok(Residual::new(
        terms[0] + terms[1] + terms[2],
        terms.iter().map(|t| abs(*t)).sum(),
    ))
}

/// Which shift-operator identity to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftDirection {
    /// `d/dx` lowers the degree (and raises the parameters).
    Forward,
    /// The weighted adjoint raises the degree (and lowers the parameters).
    Backward,
}

/// Residual of the forward or backward shift relation at `x`.
///
/// Jacobi special cases are checked through their Jacobi parameters.
pub fn shift_check(family: &FamilySpec, n: usize, direction: ShiftDirection, x: f64) -> Result<Residual> {
    if n == 0 {
        return Ok(Residual { value: 0.0, scale: 0.0 });
    }
    let xd = dd(x);
    let nf = n as f64;
    let terms: Vec<DoubleDouble> = match (family.jacobi_parameters(n), *family, direction) {
        (Some((a, b, _)), _, ShiftDirection::Forward) => {
            let d = jacobi_poly(n, a, b)?.derivative().eval_dd(xd);
            let lower = jacobi_poly(n - 1, a + 1.0, b + 1.0)?.eval_dd(xd);
            vec![d, -(lower * (0.5 * (nf + a + b + 1.0)))]
        }
        (Some((a, b, _)), _, ShiftDirection::Backward) => {
            let q = jacobi_poly(n - 1, a + 1.0, b + 1.0)?;
            let p = jacobi_poly(n, a, b)?.eval_dd(xd);
            vec![
                (DoubleDouble::ONE - xd * xd) * q.derivative().eval_dd(xd),
                (dd(b - a) - xd * (a + b + 2.0)) * q.eval_dd(xd),
                p * (2.0 * nf),
            ]
        }
        (None, FamilySpec::Laguerre { alpha }, ShiftDirection::Forward) => {
            let d = laguerre_poly(n, alpha)?.derivative().eval_dd(xd);
            vec![d, laguerre_poly(n - 1, alpha + 1.0)?.eval_dd(xd)]
        }
        (None, FamilySpec::Laguerre { alpha }, ShiftDirection::Backward) => {
            let q = laguerre_poly(n - 1, alpha + 1.0)?;
            vec![
                xd * q.derivative().eval_dd(xd),
                (dd(alpha + 1.0) - xd) * q.eval_dd(xd),
                -(laguerre_poly(n, alpha)?.eval_dd(xd) * nf),
            ]
        }
        (None, _, ShiftDirection::Forward) => vec![
            hermite_poly(n).derivative().eval_dd(xd),
            -(hermite_poly(n - 1).eval_dd(xd) * (2.0 * nf)),
        ],
        (None, _, ShiftDirection::Backward) => {
            let q = hermite_poly(n - 1);
            vec![
                q.derivative().eval_dd(xd),
                -(xd * 2.0 * q.eval_dd(xd)),
                hermite_poly(n).eval_dd(xd),
            ]
        }
    };
    let sum = terms.iter().fold(DoubleDouble::ZERO, |acc, t| acc + *t);
    Ok(Residual::new(sum, terms.iter().map(|t| abs(*t)).sum()))
}

/// Coefficient vector (monomial basis) helpers for the Rodrigues recursion.
fn deriv(c: &[DoubleDouble]) -> Vec<DoubleDouble> {
    c.iter().enumerate().skip(1).map(|(k, v)| *v * k as f64).collect()
}

fn add_into(acc: &mut Vec<DoubleDouble>, c: &[DoubleDouble], shift: usize, factor: f64) {
    if acc.len() < c.len() + shift {
        acc.resize(c.len() + shift, DoubleDouble::ZERO);
    }
    for (k, v) in c.iter().enumerate() {
        acc[k + shift] += *v * factor;
    }
}

fn horner(c: &[DoubleDouble], x: DoubleDouble) -> DoubleDouble {
    c.iter().rev().fold(DoubleDouble::ZERO, |acc, v| acc * x + *v)
}

/// `p_n(x)` from the Rodrigues formula. The `k`-th derivative of
/// `X^n w` is carried as `w X^{n-k} q_k` with `q_k` a polynomial, so the
/// recursion is exact in the coefficients.
pub fn rodrigues_eval(family: &FamilySpec, n: usize, x: f64) -> Result<f64> {
    let xd = dd(x);
    let nf = n as f64;
    let mut q = vec![DoubleDouble::ONE];
    let value = match (family.jacobi_parameters(n), *family) {
        (Some((a, b, c)), _) => {
            for k in 0..n {
                let big_a = a + nf - k as f64;
                let big_b = b + nf - k as f64;
                // (1 - x^2) q' + (B (1 - x) - A (1 + x)) q
                let dq = deriv(&q);
                let mut next = Vec::new();
                add_into(&mut next, &dq, 0, 1.0);
                add_into(&mut next, &dq, 2, -1.0);
                add_into(&mut next, &q, 0, big_b - big_a);
                add_into(&mut next, &q, 1, -(big_a + big_b));
                q = next;
            }
            let mut pref = DoubleDouble::ONE;
            for k in 1..=n {
                pref = pref / (-2.0 * k as f64);
            }
            horner(&q, xd) * pref * c
        }
        (None, FamilySpec::Laguerre { alpha }) => {
            for k in 0..n {
                let big_a = nf + alpha - k as f64;
                // x q' + (A - x) q
                let dq = deriv(&q);
                let mut next = Vec::new();
                add_into(&mut next, &dq, 1, 1.0);
                add_into(&mut next, &q, 0, big_a);
                add_into(&mut next, &q, 1, -1.0);
                q = next;
            }
            horner(&q, xd) / pochhammer_dd(1.0, n)
        }
        (None, _) => {
            for _ in 0..n {
                // q' - 2 x q
                let dq = deriv(&q);
                let mut next = Vec::new();
                add_into(&mut next, &dq, 0, 1.0);
                add_into(&mut next, &q, 1, -2.0);
                q = next;
            }
            let v = horner(&q, xd);
            if n % 2 == 1 {
                -v
            } else {
                v
            }
        }
    };
    Ok(value.to_f64())
}

/// Residuals of the even and odd quadratic transformations between
/// `P^(alpha,alpha)` and `P^(alpha,-1/2)`, `P^(alpha,1/2)`.
pub fn quadratic_transform_check(n: usize, alpha: f64, x: f64) -> Result<(f64, f64)> {
    let xd = dd(x);
    let y = xd * xd * 2.0 - 1.0;
    let one = DoubleDouble::ONE;
    let ratio = |m: usize, a: f64, b: f64, at: DoubleDouble| -> Result<DoubleDouble> {
        let p = jacobi_poly(m, a, b)?;
        Ok(p.eval_dd(at) / p.eval_dd(one))
    };
    let even = ratio(2 * n, alpha, alpha, xd)? - ratio(n, alpha, -0.5, y)?;
    let odd = ratio(2 * n + 1, alpha, alpha, xd)? - xd * ratio(n, alpha, 0.5, y)?;
    Ok((abs(even), abs(odd)))
}

/// Monic recurrences `(q, r)` of an even system: `p_{2n}(x) = q_n(x^2)` and
/// `p_{2n+1}(x) = x r_n(x^2)` for the monic companion of `sys`.
#[derive(Clone, Debug)]
pub struct SplitSystems {
    pub q: RecurrenceSystem,
    pub r: RecurrenceSystem,
}

pub fn split_even_system(sys: &RecurrenceSystem, n_max: usize) -> Result<SplitSystems> {
    for n in 0..=2 * n_max + 1 {
        let b = sys.coeffs(n)?.b;
        if b != 0.0 {
            return Err(Error::NotEven { index: n, value: b });
        }
    }
    let monic = sys.to_monic();
    let c = {
        let m = monic.clone();
        move |k: usize| if k == 0 { 0.0 } else { m.coeffs(k).map(|r| r.c).unwrap_or(f64::NAN) }
    };
    let cq = c.clone();
    let q = RecurrenceSystem::from_fn(Form::Monic, 1.0, move |n| {
        let cc = if n == 0 { 0.0 } else { cq(2 * n - 1) * cq(2 * n) };
        Coefficients::new(1.0, cq(2 * n) + cq(2 * n + 1), cc)
    })
    .with_label(&format!("{} (even part)", sys.label()));
    let r = RecurrenceSystem::from_fn(Form::Monic, 1.0, move |n| {
        let cc = if n == 0 { 0.0 } else { c(2 * n) * c(2 * n + 1) };
        Coefficients::new(1.0, c(2 * n + 1) + c(2 * n + 2), cc)
    })
    .with_label(&format!("{} (odd part)", sys.label()));
    let (q, r) = match monic.len() {
        Some(len) => (q.with_len(len / 2), r.with_len(len.saturating_sub(1) / 2)),
        None => (q, r),
    };
    Ok(SplitSystems { q, r })
}

/// Largest relative mismatch of `p_{2n}(x) = q_n(x^2)`, `p_{2n+1}(x) = x r_n(x^2)`.
pub fn split_check(sys: &RecurrenceSystem, split: &SplitSystems, n_max: usize, samples: &[f64]) -> Result<f64> {
    let monic = sys.to_monic();
    let mut worst = 0.0f64;
    for &x in samples {
        let p = monic.eval_all(2 * n_max + 1, DoubleDouble::new(x))?;
        let y = DoubleDouble::new(x) * x;
        let q = split.q.eval_all(n_max, y)?;
        let r = split.r.eval_all(n_max, y)?;
        for n in 0..=n_max {
            let e = p[2 * n] - q[n];
            let o = p[2 * n + 1] - r[n] * x;
            let scale_e = abs(p[2 * n]).max(1e-300);
            let scale_o = abs(p[2 * n + 1]).max(1e-300);
            worst = worst.max(abs(e) / scale_e.max(1.0)).max(abs(o) / scale_o.max(1.0));
        }
    }
    Ok(worst)
}

/// The three classical limit transitions between monic families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitRelation {
    /// `alpha^{n/2} p_n^(alpha,alpha)(x / sqrt(alpha)) -> h_n(x)` as `alpha -> inf`.
    JacobiToHermite,
    /// `(-beta/2)^n p_n^(alpha,beta)(1 - 2x/beta) -> l_n^alpha(x)` as `beta -> inf`.
    JacobiToLaguerre,
    /// `(2 alpha)^{-n/2} l_n^alpha(sqrt(2 alpha) x + alpha) -> h_n(x)` as `alpha -> inf`.
    LaguerreToHermite,
}

/// `|scaled polynomial - limit polynomial|` at `x` for parameter value `param`.
/// `fixed` is the Laguerre `alpha` kept constant in the Jacobi-to-Laguerre limit.
pub fn limit_check(which: LimitRelation, n: usize, param: f64, fixed: f64, x: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let xd = dd(x);
    let diff = match which {
        LimitRelation::JacobiToHermite => {
            let p = monic_jacobi_poly(n, param, param)?;
            let s = param.sqrt();
            p.eval_dd(xd / s) * s.powi(n as i32) - monic_hermite_poly(n).eval_dd(xd)
        }
        LimitRelation::JacobiToLaguerre => {
            let p = monic_jacobi_poly(n, fixed, param)?;
            let arg = DoubleDouble::ONE - xd * 2.0 / param;
            p.eval_dd(arg) * (-param / 2.0).powi(n as i32) - monic_laguerre_poly(n, fixed)?.eval_dd(xd)
        }
        LimitRelation::LaguerreToHermite => {
            let l = monic_laguerre_poly(n, param)?;
            let s = (2.0 * param).sqrt();
            l.eval_dd(xd * s + param) * s.powf(-nf) - monic_hermite_poly(n).eval_dd(xd)
        }
    };
    Ok(abs(diff))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitSchedule {
    pub parameters: Vec<f64>,
    pub errors: Vec<f64>,
    /// Errors strictly decrease along the schedule until they reach
    /// [`LIMIT_NOISE_FLOOR`].
    pub monotone: bool,
}

impl LimitSchedule {
    pub fn new(parameters: Vec<f64>, errors: Vec<f64>) -> Self {
        let monotone = errors.windows(2).all(|w| w[1] < w[0] || w[1] <= LIMIT_NOISE_FLOOR);
        Self {
            parameters,
            errors,
            monotone,
        }
    }
}

/// Relative error below which a limit is considered attained.
pub const LIMIT_NOISE_FLOOR: f64 = 1e-12;

/// [`limit_check`] along `start, 2 start, 4 start, ...` (`steps` values).
pub fn limit_schedule(which: LimitRelation, n: usize, start: f64, steps: usize, fixed: f64, x: f64) -> Result<LimitSchedule> {
    let parameters: Vec<f64> = (0..steps).map(|k| start * 2f64.powi(k as i32)).collect();
    let errors = parameters
        .iter()
        .map(|&p| limit_check(which, n, p, fixed, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitSchedule::new(parameters, errors))
}

/// Residuals of the monic Jacobi chain `p_n' = n q_{n-1}` and
/// `((1-x^2) d/dx + tau) q_{n-1} = -(n+alpha+beta+1) p_n`, where
/// `q = p^(alpha+1,beta+1)`.
pub fn monic_chain_check(n: usize, alpha: f64, beta: f64, x: f64) -> Result<(Residual, Residual)> {
    if n == 0 {
        let z = Residual { value: 0.0, scale: 0.0 };
        return Ok((z, z));
    }
    let xd = dd(x);
    let nf = n as f64;
    let p = monic_jacobi_poly(n, alpha, beta)?;
    let q = monic_jacobi_poly(n - 1, alpha + 1.0, beta + 1.0)?;
    let d = p.derivative().eval_dd(xd);
    let qn = q.eval_dd(xd) * nf;
    let r12 = Residual::new(d - qn, abs(d) + abs(qn));
    let t = [
        (DoubleDouble::ONE - xd * xd) * q.derivative().eval_dd(xd),
        (dd(beta - alpha) - xd * (alpha + beta + 2.0)) * q.eval_dd(xd),
        p.eval_dd(xd) * (nf + alpha + beta + 1.0),
    ];
    let r13 = Residual::new(t[0] + t[1] + t[2], t.iter().map(|v| abs(*v)).sum());
    Ok((r12, r13))
}

/// Monic Jacobi value at 1 by iterating the lowering relation at `x = 1`:
/// `2^n (alpha+1)_n / (n+alpha+beta+1)_n`.
pub fn monic_jacobi_at_one(n: usize, alpha: f64, beta: f64) -> f64 {
    (pochhammer_ratio_dd(alpha + 1.0, n as f64 + alpha + beta + 1.0, n) * 2f64.powi(n as i32)).to_f64()
}

/// `h_n / k_n^2` for Jacobi, iterating
/// `int p_n^2 w = n/(n+alpha+beta+1) int q_{n-1}^2 w_1` down to degree 0.
pub fn jacobi_monic_norm(n: usize, alpha: f64, beta: f64) -> f64 {
    let mut factor = 1.0;
    for k in 0..n {
        let m = (n - k) as f64;
        let (a, b) = (alpha + k as f64, beta + k as f64);
        factor *= m / (m + a + b + 1.0);
    }
    let (a, b) = (alpha + n as f64, beta + n as f64);
    let h0 = ((a + b + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp();
    factor * h0
}

/// Relative residual of `n int q_{n-1}^2 w_1 = (n+alpha+beta+1) int p_n^2 w`
/// with both sides integrated numerically.
pub fn monic_norm_ratio_check(n: usize, alpha: f64, beta: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let p = monic_jacobi_poly(n, alpha, beta)?;
    let q = monic_jacobi_poly(n - 1, alpha + 1.0, beta + 1.0)?;
    let lhs = named::jacobi(alpha + 1.0, beta + 1.0)?.integrate(|x| q.eval(x).powi(2))? * n as f64;
    let rhs = named::jacobi(alpha, beta)?.integrate(|x| p.eval(x).powi(2))? * (n as f64 + alpha + beta + 1.0);
    Ok((lhs - rhs).abs() / rhs.abs())
}

/// Gradient of the logarithmic potential of unit charges at `zeros` with
/// charges `p` at `1` and `q` at `-1`.
pub fn electrostatic_gradient(n: usize, p: f64, q: f64, zeros: &[f64]) -> Result<Vec<f64>> {
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::InvalidParameter {
            name: "p/q",
            value: p.min(q),
            reason: "endpoint charges must be positive",
        });
    }
    if zeros.len() != n {
        return Err(Error::Invalid(format!("expected {n} points, got {}", zeros.len())));
    }
    for (k, &x) in zeros.iter().enumerate() {
        if !(x > -1.0 && x < 1.0) {
            return Err(Error::OutsideSupport { x });
        }
        if k > 0 && !(zeros[k - 1] < x) {
            return Err(Error::CoincidentPoints { i: k - 1, j: k });
        }
    }
    Ok(zeros
        .iter()
        .enumerate()
        .map(|(k, &xk)| {
            let mut g: f64 = zeros
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, &xj)| 1.0 / (xk - xj))
                .sum();
            g += p / (xk - 1.0) + q / (xk + 1.0);
            g
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ode_examples() {
        let jac = FamilySpec::Jacobi { alpha: 0.5, beta: 1.5 };
        assert!(ode_residual(&jac, 4, 0.3).unwrap().relative() < 1e-14);
        for fam in [jac, FamilySpec::Hermite, FamilySpec::Laguerre { alpha: 2.0 }] {
            assert_eq!(ode_residual(&fam, 0, 0.7).unwrap().value, 0.0);
        }
        assert!(ode_residual(&FamilySpec::Hermite, 3, -0.8).unwrap().relative() < 1e-15);
    }

    #[test]
    fn shift_examples() {
        let r = shift_check(&FamilySpec::Hermite, 4, ShiftDirection::Forward, 0.2).unwrap();
        assert!(r.relative() < 1e-15);
        let jac = FamilySpec::Jacobi { alpha: 0.3, beta: -0.4 };
        assert!(shift_check(&jac, 1, ShiftDirection::Forward, 0.9).unwrap().relative() < 1e-15);
        assert_eq!(shift_check(&jac, 0, ShiftDirection::Backward, 0.9).unwrap().value, 0.0);
        for dir in [ShiftDirection::Forward, ShiftDirection::Backward] {
            for fam in [jac, FamilySpec::Laguerre { alpha: 0.7 }, FamilySpec::Hermite] {
                assert!(shift_check(&fam, 6, dir, 0.35).unwrap().relative() < 1e-14, "{fam:?} {dir:?}");
            }
        }
    }

    #[test]
    fn rodrigues_examples() {
        assert!((rodrigues_eval(&FamilySpec::Hermite, 2, 1.0).unwrap() - 2.0).abs() < 1e-15);
        let leg = FamilySpec::Jacobi { alpha: 0.0, beta: 0.0 };
        assert!((rodrigues_eval(&leg, 1, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(rodrigues_eval(&FamilySpec::Laguerre { alpha: 1.0 }, 0, 3.0).unwrap(), 1.0);
        for fam in [
            FamilySpec::Jacobi { alpha: 1.5, beta: -0.5 },
            FamilySpec::Laguerre { alpha: 0.4 },
            FamilySpec::Hermite,
            FamilySpec::ChebyshevU,
        ] {
            let x = 0.6;
            let r = rodrigues_eval(&fam, 7, x).unwrap();
            let s = fam.eval(7, x).unwrap();
            assert!((r - s).abs() <= 1e-12 * s.abs().max(1.0), "{fam:?}: {r} vs {s}");
        }
    }

    #[test]
    fn quadratic_examples() {
        let (e, o) = quadratic_transform_check(1, 0.0, 0.6).unwrap();
        assert!(e < 1e-15 && o < 1e-15);
        let (e, o) = quadratic_transform_check(3, 0.7, 1.0).unwrap();
        assert!(e < 1e-15 && o < 1e-15);
        let (e, _) = quadratic_transform_check(4, -0.3, -1.0).unwrap();
        assert!(e < 1e-14);
    }

    #[test]
    fn split_hermite_gives_laguerre() {
        let herm = FamilySpec::Hermite.recurrence();
        let split = split_even_system(&herm, 6).unwrap();
        // monic Laguerre alpha=-1/2 in y = x^2: b_n = 2n + 1/2, c_n = n(n - 1/2)
        for n in 0..6 {
            let co = split.q.coeffs(n).unwrap();
            let nf = n as f64;
            assert!((co.b - (2.0 * nf + 0.5)).abs() < 1e-14);
            assert!((co.c - nf * (nf - 0.5)).abs() < 1e-13);
        }
        assert_eq!(split.r.eval(0, 3.0).unwrap(), 1.0);
        assert!(split_check(&herm, &split, 6, &[0.3, 1.1, -2.0]).unwrap() < 1e-13);
    }

    #[test]
    fn split_legendre_q1() {
        let sys = FamilySpec::Legendre.recurrence();
        let split = split_even_system(&sys, 3).unwrap();
        assert!((split.q.eval(1, 0.5).unwrap() - (0.5 - 1.0 / 3.0)).abs() < 1e-15);
        let odd = FamilySpec::Laguerre { alpha: 0.0 }.recurrence();
        assert!(matches!(split_even_system(&odd, 2), Err(Error::NotEven { index: 0, .. })));
    }

    #[test]
    fn limit_examples() {
        assert!(limit_check(LimitRelation::JacobiToHermite, 2, 1e4, 0.0, 0.5).unwrap() < 1e-3);
        assert_eq!(limit_check(LimitRelation::JacobiToHermite, 0, 10.0, 0.0, 0.5).unwrap(), 0.0);
        assert!(limit_check(LimitRelation::JacobiToLaguerre, 1, 1e6, 0.5, 1.0).unwrap() < 1e-5);
        for which in [
            LimitRelation::JacobiToHermite,
            LimitRelation::JacobiToLaguerre,
            LimitRelation::LaguerreToHermite,
        ] {
            for n in 1..=4 {
                let s = limit_schedule(which, n, 100.0, 4, 0.5, 0.4).unwrap();
                assert!(s.monotone, "{which:?} n={n}: {:?}", s.errors);
            }
        }
    }

    #[test]
    fn monic_chain() {
        let (r12, r13) = monic_chain_check(5, 0.5, 1.5, 0.2).unwrap();
        assert!(r12.relative() < 1e-14 && r13.relative() < 1e-14);
        for n in 0..8 {
            let p = monic_jacobi_poly(n, 0.5, 1.5).unwrap().eval(1.0);
            assert!((p - monic_jacobi_at_one(n, 0.5, 1.5)).abs() < 1e-13 * p.abs());
        }
        assert!(monic_norm_ratio_check(4, 0.5, -0.5).unwrap() < 1e-9);
    }

    #[test]
    fn monic_norm_agrees_with_standard() {
        let (a, b) = (0.5, 1.5);
        for n in 0..10 {
            let k = jacobi_poly(n, a, b).unwrap().leading_coefficient().to_f64();
            let expect = super::super::jacobi_norm(n, a, b) / (k * k);
            assert!((jacobi_monic_norm(n, a, b) - expect).abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn electrostatics() {
        assert_eq!(electrostatic_gradient(1, 0.5, 0.5, &[0.0]).unwrap(), vec![0.0]);
        let z = 1.0 / 3f64.sqrt();
        let g = electrostatic_gradient(2, 0.5, 0.5, &[-z, z]).unwrap();
        assert!(g.iter().all(|v| v.abs() < 1e-14));
        let g = electrostatic_gradient(2, 0.5, 0.5, &[-z + 0.01, z + 0.01]).unwrap();
        assert!(g.iter().fold(0.0f64, |m, v| m.max(v.abs())) > 0.01);
        assert!(matches!(
            electrostatic_gradient(2, 0.5, 0.5, &[0.1, 0.1]),
            Err(Error::CoincidentPoints { .. })
        ));
    }
}
