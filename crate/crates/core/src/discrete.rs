//! Krawtchouk, Hahn, Meixner and Charlier polynomials on the integer lattice.
//!
//! Each family is evaluated from its terminating hypergeometric series; the
//! three-term recurrence and the second-order difference equation
//! `A(x) p(x-1) + B(x) p(x) + C(x) p(x+1) = lambda_n p(x)` are carried as
//! closed forms and checked against the series.
//!
//! Difference-equation coefficients (with `B = -(A + C)` throughout):
//!
//! | family      | `A(x)`          | `C(x)`                   | `lambda_n`         |
//! |-------------|-----------------|--------------------------|--------------------|
//! | Krawtchouk  | `(1-p) x`       | `p (N - x)`              | `-n`               |
//! | Hahn        | `x (x-beta-N-1)`| `(x+alpha+1)(x-N)`       | `n (n+alpha+beta+1)` |
//! | Meixner     | `x`             | `c (x + beta)`           | `n (c - 1)`        |
//! | Charlier    | `x`             | `a`                      | `-n`               |

use serde::{Deserialize, Serialize};

use crate::classical::hyp::hyp_terminating_ddp;
use crate::classical::{LimitSchedule, Residual, LIMIT_NOISE_FLOOR};
use crate::error::{Error, Result};
use crate::measures::{GramReport, Measure};
use crate::numeric::integrate::{integrate_plain, Tolerance};
use crate::numeric::special::{binomial, ln_factorial, ln_gamma, ln_pochhammer, pochhammer};
use crate::numeric::DoubleDouble;
use crate::par::{self, Execution};
use crate::recurrence::{Coefficients, Form, RecurrenceSystem};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DiscreteFamily {
    /// `K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)` on `{0, ..., N}`.
    Krawtchouk {
        p: f64,
        #[serde(rename = "N")]
        big_n: usize,
    },
    /// `Q_n(x; alpha, beta, N) = 3F2(-n, n+alpha+beta+1, -x; alpha+1, -N; 1)` on `{0, ..., N}`.
    Hahn {
        alpha: f64,
        beta: f64,
        #[serde(rename = "N")]
        big_n: usize,
    },
    /// `M_n(x; beta, c) = 2F1(-n, -x; beta; 1 - 1/c)` on `{0, 1, 2, ...}`.
    Meixner { beta: f64, c: f64 },
    /// `C_n(x; a) = 2F0(-n, -x; ; -1/a)` on `{0, 1, 2, ...}`.
    Charlier { a: f64 },
}

/// Coefficients of the difference equation at one lattice point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DifferenceCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub lambda: f64,
}

fn dd(x: f64) -> DoubleDouble {
    DoubleDouble::new(x)
}

fn check(ok: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason })
    }
}

impl DiscreteFamily {
    pub fn name(&self) -> &'static str {
        match self {
            DiscreteFamily::Krawtchouk { .. } => "krawtchouk",
            DiscreteFamily::Hahn { .. } => "hahn",
            DiscreteFamily::Meixner { .. } => "meixner",
            DiscreteFamily::Charlier { .. } => "charlier",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DiscreteFamily::Krawtchouk { p, big_n } => {
                check(p > 0.0 && p < 1.0, "p", p, "must lie in (0, 1)")?;
                check(big_n >= 1, "N", big_n as f64, "must be a positive integer")
            }
            DiscreteFamily::Hahn { alpha, beta, big_n } => {
                check(alpha > -1.0, "alpha", alpha, "must exceed -1")?;
                check(beta > -1.0, "beta", beta, "must exceed -1")?;
                check(big_n >= 1, "N", big_n as f64, "must be a positive integer")
            }
            DiscreteFamily::Meixner { beta, c } => {
                check(beta > 0.0, "beta", beta, "must be positive")?;
                check(c > 0.0 && c < 1.0, "c", c, "must lie in (0, 1)")
            }
            DiscreteFamily::Charlier { a } => check(a > 0.0, "a", a, "must be positive"),
        }
    }

    /// Largest node `N` for the finite families.
    pub fn support_end(&self) -> Option<usize> {
        match *self {
            DiscreteFamily::Krawtchouk { big_n, .. } | DiscreteFamily::Hahn { big_n, .. } => Some(big_n),
            _ => None,
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        match self.support_end() {
            Some(max) if n > max => Err(Error::DegreeOutOfRange { n, max }),
            _ => Ok(()),
        }
    }

    fn check_node(&self, x: usize) -> Result<()> {
        match self.support_end() {
            Some(max) if x > max => Err(Error::OutsideSupport { x: x as f64 }),
            _ => Ok(()),
        }
    }

    /// `p_n(x)` from the hypergeometric series, summed in double-double.
    pub fn eval_dd(&self, n: usize, x: f64) -> Result<DoubleDouble> {
        self.validate()?;
        self.check_degree(n)?;
        let nn = dd(-(n as f64));
        let mx = dd(-x);
        match *self {
            DiscreteFamily::Krawtchouk { p, big_n } => {
                hyp_terminating_ddp(&[nn, mx], &[dd(-(big_n as f64))], DoubleDouble::ONE / p)
            }
            DiscreteFamily::Hahn { alpha, beta, big_n } => hyp_terminating_ddp(
                &[nn, dd(n as f64) + alpha + beta + 1.0, mx],
                &[dd(alpha) + 1.0, dd(-(big_n as f64))],
                DoubleDouble::ONE,
            ),
            DiscreteFamily::Meixner { beta, c } => {
                hyp_terminating_ddp(&[nn, mx], &[dd(beta)], DoubleDouble::ONE - DoubleDouble::ONE / c)
            }
            DiscreteFamily::Charlier { a } => hyp_terminating_ddp(&[nn, mx], &[], -(DoubleDouble::ONE / a)),
        }
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.eval_dd(n, x)?.to_f64())
    }

    /// Natural logarithm of the weight `w_x`.
    fn ln_weight(&self, x: usize) -> f64 {
        let xf = x as f64;
        match *self {
            DiscreteFamily::Krawtchouk { p, big_n } => {
                binomial(big_n, x).ln() + xf * p.ln() + (big_n - x) as f64 * (-p).ln_1p()
            }
            DiscreteFamily::Hahn { alpha, beta, big_n } => {
                ln_pochhammer(alpha + 1.0, x).ln_abs - ln_factorial(x)
                    + ln_pochhammer(beta + 1.0, big_n - x).ln_abs
                    - ln_factorial(big_n - x)
            }
            DiscreteFamily::Meixner { beta, c } => ln_pochhammer(beta, x).ln_abs + xf * c.ln() - ln_factorial(x),
            DiscreteFamily::Charlier { a } => xf * a.ln() - ln_factorial(x),
        }
    }

    /// Orthogonality weight `w_x`. Krawtchouk: `C(N,x) p^x (1-p)^(N-x)`;
    /// Hahn: `(alpha+1)_x/x! (beta+1)_(N-x)/(N-x)!`; Meixner: `(beta)_x c^x/x!`;
    /// Charlier: `a^x/x!`.
    pub fn weight(&self, x: usize) -> Result<f64> {
        self.validate()?;
        self.check_node(x)?;
        Ok(self.ln_weight(x).exp())
    }

    /// Bound on `sum_{j > k} w_j` for the infinite families, from a geometric
    /// majorant of the weight ratios; infinite while the ratio bound is `>= 1`.
    pub fn tail_bound(&self, k: usize) -> f64 {
        let kf = k as f64;
        let ratio = match *self {
            DiscreteFamily::Meixner { beta, c } => c * f64::max(1.0, (kf + 1.0 + beta) / (kf + 2.0)),
            DiscreteFamily::Charlier { a } => a / (kf + 2.0),
            _ => return 0.0,
        };
        if ratio >= 1.0 {
            f64::INFINITY
        } else {
            self.ln_weight(k + 1).exp() / (1.0 - ratio)
        }
    }

    /// Orthogonality measure without normalizer.
    pub fn measure(&self) -> Result<Measure> {
        self.validate()?;
        let m = match self.support_end() {
            Some(big_n) => {
                let nodes = (0..=big_n).map(|x| x as f64).collect();
                let weights = (0..=big_n).map(|x| self.ln_weight(x).exp()).collect();
                Measure::discrete_finite(nodes, weights)?
            }
            None => {
                let (w, t) = (*self, *self);
                Measure::discrete_infinite(|k| k as f64, move |k| w.ln_weight(k).exp(), move |k| t.tail_bound(k))
            }
        };
        Ok(m.with_label(self.name()))
    }

    /// `sum_x w_x p_n(x)^2` in closed form.
    pub fn norm(&self, n: usize) -> Result<f64> {
        self.validate()?;
        self.check_degree(n)?;
        let nf = n as f64;
        Ok(match *self {
            DiscreteFamily::Krawtchouk { p, big_n } => {
                let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * pochhammer(1.0, n) / pochhammer(-(big_n as f64), n) * ((1.0 - p) / p).powi(n as i32)
            }
            DiscreteFamily::Hahn { alpha, beta, big_n } => {
                let s = alpha + beta + 1.0;
                let big = big_n as f64;
                let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
                if n == 0 {
                    // sum of weights: (alpha+beta+2)_N / N!
                    return Ok((ln_pochhammer(s + 1.0, big_n).ln_abs - ln_factorial(big_n)).exp());
                }
                // (n+s)_(N+1) / N! = Gamma(n+s+N+1) / (Gamma(n+s) N!)
                let head = (ln_gamma(nf + s + big + 1.0) - ln_gamma(nf + s) - ln_factorial(big_n)).exp();
                sign * head * pochhammer(beta + 1.0, n) * pochhammer(1.0, n)
                    / ((2.0 * nf + s) * pochhammer(alpha + 1.0, n) * pochhammer(-big, n))
            }
            DiscreteFamily::Meixner { beta, c } => {
                pochhammer(1.0, n) / (c.powi(n as i32) * pochhammer(beta, n) * (1.0 - c).powf(beta))
            }
            DiscreteFamily::Charlier { a } => a.powi(-(n as i32)) * a.exp() * pochhammer(1.0, n),
        })
    }

    /// Three-term recurrence `x p_n = a_n p_{n+1} + b_n p_n + c_n p_{n-1}`,
    /// `p_0 = 1`. Finite families stop at `n = N - 1`.
    pub fn recurrence(&self) -> Result<RecurrenceSystem> {
        self.validate()?;
        let sys = match *self {
            DiscreteFamily::Krawtchouk { p, big_n } => {
                let big = big_n as f64;
                RecurrenceSystem::from_fn(Form::General, 1.0, move |n| {
                    let n = n as f64;
                    let up = p * (big - n);
                    let down = n * (1.0 - p);
                    Coefficients::new(-up, up + down, -down)
                })
                .with_len(big_n)
            }
            DiscreteFamily::Hahn { alpha, beta, big_n } => {
                let big = big_n as f64;
                RecurrenceSystem::from_fn(Form::General, 1.0, move |n| {
                    let (up, down) = hahn_ac(n as f64, alpha, beta, big);
                    Coefficients::new(-up, up + down, -down)
                })
                .with_len(big_n)
            }
            DiscreteFamily::Meixner { beta, c } => RecurrenceSystem::from_fn(Form::General, 1.0, move |n| {
                let n = n as f64;
                Coefficients::new(c * (n + beta) / (c - 1.0), (n + (n + beta) * c) / (1.0 - c), n / (c - 1.0))
            }),
            DiscreteFamily::Charlier { a } => RecurrenceSystem::from_fn(Form::General, 1.0, move |n| {
                let n = n as f64;
                Coefficients::new(-a, n + a, -n)
            }),
        };
        Ok(sys.with_label(self.name()))
    }

    /// `A(x), B(x), C(x), lambda_n` of the difference equation.
    pub fn difference_coefficients(&self, n: usize, x: f64) -> DifferenceCoefficients {
        let nf = n as f64;
        let (a, c, lambda) = match *self {
            DiscreteFamily::Krawtchouk { p, big_n } => ((1.0 - p) * x, p * (big_n as f64 - x), -nf),
            DiscreteFamily::Hahn { alpha, beta, big_n } => {
                let big = big_n as f64;
                (
                    x * (x - beta - big - 1.0),
                    (x + alpha + 1.0) * (x - big),
                    nf * (nf + alpha + beta + 1.0),
                )
            }
            DiscreteFamily::Meixner { beta, c } => (x, c * (x + beta), nf * (c - 1.0)),
            DiscreteFamily::Charlier { a } => (x, a, -nf),
        };
        DifferenceCoefficients {
            a,
            b: -(a + c),
            c,
            lambda,
        }
    }

    /// `A p_n(x-1) + B p_n(x) + C p_n(x+1) - lambda_n p_n(x)` with the sum of
    /// absolute terms as scale. At the lattice ends the coefficient of the
    /// missing neighbour vanishes and that term is dropped.
    pub fn difference_residual(&self, n: usize, x: f64) -> Result<Residual> {
        let k = self.difference_coefficients(n, x);
        let p = self.eval_dd(n, x)?;
        let left = if k.a == 0.0 { DoubleDouble::ZERO } else { self.eval_dd(n, x - 1.0)? };
        let right = if k.c == 0.0 { DoubleDouble::ZERO } else { self.eval_dd(n, x + 1.0)? };
        // A (p(x-1) - p(x)) + C (p(x+1) - p(x)) - lambda p(x), since B = -(A + C)
        let terms = [(left - p) * k.a, (right - p) * k.c, -(p * k.lambda)];
        let value = terms.iter().fold(DoubleDouble::ZERO, |s, t| s + *t);
        let scale = (left * k.a).to_f64().abs()
            + (p * k.b).to_f64().abs()
            + (right * k.c).to_f64().abs()
            + (p * k.lambda).to_f64().abs();
        Ok(Residual::new(value, scale))
    }

    /// Gram matrix `sum_x w_x p_i(x) p_j(x)`, `i, j <= n`, from series values.
    pub fn gram(&self, n: usize) -> Result<GramReport> {
        self.check_degree(n)?;
        let fam = *self;
        self.measure()?.gram_with(n, move |i, x| fam.eval(i, x).unwrap_or(f64::NAN))
    }
}

/// Hahn recurrence pieces `A_n, C_n` in `-x Q_n = A_n Q_{n+1} - (A_n + C_n) Q_n + C_n Q_{n-1}`.
fn hahn_ac(n: f64, alpha: f64, beta: f64, big: f64) -> (f64, f64) {
    let s = 2.0 * n + alpha + beta;
    let up = (n + alpha + beta + 1.0) * (n + alpha + 1.0) * (big - n) / ((s + 1.0) * (s + 2.0));
    let down = if n == 0.0 {
        0.0
    } else {
        n * (n + alpha + beta + big + 1.0) * (n + beta) / (s * (s + 1.0))
    };
    (up, down)
}

/// `|Q_n(N x; alpha, beta, N) - 2F1(-n, n+alpha+beta+1; alpha+1; x)|`.
pub fn hahn_to_jacobi_limit(n: usize, alpha: f64, beta: f64, big_n: usize, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutsideSupport { x });
    }
    let hahn = DiscreteFamily::Hahn { alpha, beta, big_n }.eval_dd(n, big_n as f64 * x)?;
    let jac = hyp_terminating_ddp(
        &[dd(-(n as f64)), dd(n as f64) + alpha + beta + 1.0],
        &[dd(alpha) + 1.0],
        dd(x),
    )?;
    Ok((hahn - jac).to_f64().abs())
}

/// [`hahn_to_jacobi_limit`] along `N = start, 2 start, 4 start, ...`.
pub fn hahn_limit_schedule(n: usize, alpha: f64, beta: f64, start: usize, steps: usize, x: f64) -> Result<LimitSchedule> {
    let sizes: Vec<usize> = (0..steps).map(|k| start << k).collect();
    let errors = sizes
        .iter()
        .map(|&big_n| hahn_to_jacobi_limit(n, alpha, beta, big_n, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitSchedule::new(sizes.iter().map(|&s| s as f64).collect(), errors))
}

/// Riemann sum of Hahn polynomials on the grid `x = k/N` against the Jacobi
/// integral on `(0, 1)` with weight `x^alpha (1-x)^beta`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HahnRiemannReport {
    pub sizes: Vec<usize>,
    pub sums: Vec<f64>,
    pub integral: f64,
    pub errors: Vec<f64>,
    pub monotone: bool,
}

/// The sum `N^-1 sum_x Q_m(Nx) Q_n(Nx) w_(Nx)`, rescaled by
/// `Gamma(alpha+1) Gamma(beta+1) / N^(alpha+beta)` so that it tends to
/// `int_0^1 F_m F_n x^alpha (1-x)^beta dx` with `F_n = 2F1(-n, n+alpha+beta+1; alpha+1; x)`.
pub fn hahn_riemann_orthogonality(
    m: usize,
    n: usize,
    alpha: f64,
    beta: f64,
    sizes: &[usize],
) -> Result<HahnRiemannReport> {
    let f = |k: usize, x: f64| -> f64 {
        hyp_terminating_ddp(
            &[dd(-(k as f64)), dd(k as f64) + alpha + beta + 1.0],
            &[dd(alpha) + 1.0],
            dd(x),
        )
        .map(|v| v.to_f64())
        .unwrap_or(f64::NAN)
    };
    let integral = integrate_plain(
        |x| {
            if x <= 0.0 || x >= 1.0 {
                0.0
            } else {
                f(m, x) * f(n, x) * x.powf(alpha) * (1.0 - x).powf(beta)
            }
        },
        0.0,
        1.0,
        Tolerance::absolute(1e-14).with_rel(1e-13),
    )?
    .value;
    let ln_scale = ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0);
    let sums = par::try_map_range(Execution::default(), 0..sizes.len(), |i| {
        let big_n = sizes[i];
        let fam = DiscreteFamily::Hahn { alpha, beta, big_n };
        let big = big_n as f64;
        let shift = ln_scale - (alpha + beta + 1.0) * big.ln();
        let mut acc = crate::numeric::CompensatedSum::new();
        for x in 0..=big_n {
            let w = (fam.ln_weight(x) + shift).exp();
            acc.add(fam.eval(m, x as f64)? * fam.eval(n, x as f64)? * w);
        }
        Ok(acc.value())
    })?;
    let errors: Vec<f64> = sums.iter().map(|s| (s - integral).abs()).collect();
    let monotone = errors.windows(2).all(|w| w[1] < w[0] || w[1] <= LIMIT_NOISE_FLOOR);
    Ok(HahnRiemannReport {
        sizes: sizes.to_vec(),
        sums,
        integral,
        errors,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Precision;

    fn families() -> Vec<DiscreteFamily> {
        vec![
            DiscreteFamily::Krawtchouk { p: 0.3, big_n: 10 },
            DiscreteFamily::Hahn {
                alpha: 0.5,
                beta: 1.5,
                big_n: 9,
            },
            DiscreteFamily::Meixner { beta: 1.7, c: 0.4 },
            DiscreteFamily::Charlier { a: 1.3 },
        ]
    }

    #[test]
    fn trivial_values() {
        let k = DiscreteFamily::Krawtchouk { p: 0.3, big_n: 7 };
        assert_eq!(k.eval(4, 0.0).unwrap(), 1.0);
        assert!((k.eval(1, 2.0).unwrap() - (1.0 - 2.0 / (0.3 * 7.0))).abs() < 1e-15);
        assert_eq!(DiscreteFamily::Charlier { a: 2.0 }.eval(5, 0.0).unwrap(), 1.0);
        assert!(matches!(k.eval(8, 1.0), Err(Error::DegreeOutOfRange { n: 8, max: 7 })));
    }

    #[test]
    fn weights() {
        let k = DiscreteFamily::Krawtchouk { p: 0.3, big_n: 7 };
        assert!((k.weight(0).unwrap() - 0.7f64.powi(7)).abs() < 1e-15);
        assert!((DiscreteFamily::Charlier { a: 1.0 }.weight(0).unwrap() - 1.0).abs() < 1e-15);
        let h = DiscreteFamily::Hahn {
            alpha: 0.0,
            beta: 0.0,
            big_n: 6,
        };
        for x in 0..=6 {
            assert!((h.weight(x).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!(matches!(h.weight(7), Err(Error::OutsideSupport { .. })));
    }

    #[test]
    fn recurrence_matches_series() {
        for fam in families() {
            let sys = fam.recurrence().unwrap();
            // p_n(x) ~ 1 while intermediate terms reach n!/a^n near x = 0: the
            // rounding of b_n = n + a is amplified accordingly
            let top = fam.support_end().unwrap_or(8);
            for n in 0..=top.min(12) {
                for &x in &[0.0, 1.0, 2.5, 4.0] {
                    let s = fam.eval(n, x).unwrap();
                    let r = sys.eval_real(n, x, Precision::DoubleDouble).unwrap();
                    assert!((s - r).abs() <= 1e-10 * (1.0 + s.abs()), "{fam:?} n={n} x={x}: {s} vs {r}");
                }
            }
        }
    }

    #[test]
    fn difference_equation() {
        for fam in families() {
            assert_eq!(fam.difference_residual(0, 2.0).unwrap().value, 0.0);
            for n in 1..=6 {
                for x in 0..=5 {
                    let r = fam.difference_residual(n, x as f64).unwrap();
                    assert!(r.relative() < 1e-12, "{fam:?} n={n} x={x}: {r:?}");
                }
            }
        }
        let r = DiscreteFamily::Charlier { a: 1.0 }.difference_residual(2, 3.0).unwrap();
        assert!(r.relative() < 1e-14);
    }

    #[test]
    fn orthogonality_and_norms() {
        for fam in families() {
            let n = fam.support_end().unwrap_or(8).min(8);
            let g = fam.gram(n).unwrap();
            assert!(g.max_off_diagonal < 1e-10, "{fam:?}: {}", g.max_off_diagonal);
            for (k, row) in g.gram.iter().enumerate() {
                let h = fam.norm(k).unwrap();
                assert!((row[k] - h).abs() < 1e-10 * h, "{fam:?} n={k}: {} vs {h}", row[k]);
            }
        }
    }

    #[test]
    fn charlier_diagonal_with_normalizer() {
        for &a in &[0.5, 1.0, 3.0] {
            let fam = DiscreteFamily::Charlier { a };
            let m = fam.measure().unwrap().with_normalizer((-a).exp()).unwrap();
            let g = m.gram_with(6, |i, x| fam.eval(i, x).unwrap()).unwrap();
            for n in 0..=6 {
                let want = a.powi(-(n as i32)) * pochhammer(1.0, n);
                assert!((g.gram[n][n] - want).abs() < 1e-10 * want);
            }
        }
    }

    #[test]
    fn hahn_limits() {
        assert_eq!(hahn_to_jacobi_limit(0, 0.3, 0.4, 100, 0.5).unwrap(), 0.0);
        assert!(hahn_to_jacobi_limit(1, 0.0, 0.0, 10_000, 0.5).unwrap() < 1e-3);
        assert!(hahn_to_jacobi_limit(2, 1.0, 2.0, 100_000, 0.25).unwrap() < 1e-3);
        for n in 1..=4 {
            let s = hahn_limit_schedule(n, 0.5, 1.5, 50, 4, 0.3).unwrap();
            assert!(s.monotone, "n={n}: {:?}", s.errors);
        }
    }

    #[test]
    fn hahn_riemann_sum() {
        let r = hahn_riemann_orthogonality(2, 2, 0.5, 1.0, &[25, 50, 100, 200]).unwrap();
        assert!(r.monotone, "{:?}", r.errors);
        assert!(r.errors[3] < 0.1 * r.integral);
        let off = hahn_riemann_orthogonality(1, 3, 0.5, 1.0, &[25, 50, 100, 200]).unwrap();
        // both sides vanish: Hahn orthogonality is exact on the lattice
        assert!(off.integral.abs() < 1e-12);
        assert!(off.errors.iter().all(|e| *e < 1e-12), "{:?}", off.errors);
    }

    #[test]
    fn tail_bounds_dominate() {
        for fam in [DiscreteFamily::Meixner { beta: 2.5, c: 0.6 }, DiscreteFamily::Charlier { a: 3.0 }] {
            for k in [2usize, 5, 10, 20] {
                let tail: f64 = (k + 1..k + 400).map(|j| fam.weight(j).unwrap()).sum();
                assert!(fam.tail_bound(k) >= tail * (1.0 - 1e-12), "{fam:?} k={k}");
            }
        }
    }
}
