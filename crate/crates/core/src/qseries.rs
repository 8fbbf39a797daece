//! q-numbers, q-shifted factorials, basic hypergeometric series, the
//! q-derivative and q-integral, Askey–Wilson polynomials and the continuous
//! q-ultraspherical polynomials with their weight and generating function.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::{FamilySpec, LimitSchedule};
use crate::error::{Error, Result};
use crate::measures::GramReport;
use crate::numeric::integrate::{integrate_plain, Tolerance};
use crate::numeric::{CompensatedSum, DoubleDouble};
use crate::par::{self, Execution};

/// Base `q` with truncation controls for infinite q-series and products.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QContext {
    pub q: f64,
    pub series_tol: f64,
    pub max_terms: usize,
}

/// Value of a possibly infinite series with the bound used to stop it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    /// Bound on the omitted remainder; zero for terminated series.
    pub tail_bound: f64,
}

/// Largest `sum |terms| / |sum|` accepted from the double-double Askey–Wilson
/// series (about 1e-16 relative accuracy left).
pub const AW_MAX_CANCELLATION: f64 = 1e15;

/// `q^m = a` for an integer `m <= 0`, to within a few ulps.
fn q_power_index(a: f64, q: f64) -> Option<usize> {
    if a < 1.0 {
        return None;
    }
    let m = (a.ln() / q.ln()).round();
    if !(-1e6..=0.0).contains(&m) {
        return None;
    }
    let n = (-m) as usize;
    ((a * q.powi(n as i32) - 1.0).abs() <= 64.0 * f64::EPSILON).then_some(n)
}

impl QContext {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::QOutOfRange { q });
        }
        Ok(Self {
            q,
            series_tol: 1e-16,
            max_terms: 1_000_000,
        })
    }

    pub fn with_tolerance(mut self, series_tol: f64) -> Self {
        self.series_tol = series_tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::QOutOfRange { q: self.q });
        }
        Ok(())
    }

    /// `[a]_q = (1 - q^a) / (1 - q)`, computed without cancellation near `q = 1`.
    pub fn q_number(&self, a: f64) -> f64 {
        let l = self.q.ln();
        (a * l).exp_m1() / l.exp_m1()
    }

    /// `(a; q)_n`.
    pub fn q_pochhammer(&self, a: f64, n: usize) -> f64 {
        let mut acc = 1.0;
        let mut qk = 1.0;
        for _ in 0..n {
            acc *= 1.0 - a * qk;
            qk *= self.q;
        }
        acc
    }

    pub fn q_pochhammer_complex(&self, a: Complex64, n: usize) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        let mut qk = 1.0;
        for _ in 0..n {
            acc *= 1.0 - a * qk;
            qk *= self.q;
        }
        acc
    }

    /// First `k` with `|a| q^k / ((1 - q)(1 - |a| q^k)) < series_tol`: from there
    /// on the logarithm of the remaining product is below `series_tol`.
    fn infinite_cutoff(&self, modulus: f64) -> Result<usize> {
        let mut t = modulus;
        for k in 0..self.max_terms {
            if t < 1.0 && t / ((1.0 - self.q) * (1.0 - t)) < self.series_tol {
                return Ok(k);
            }
            t *= self.q;
        }
        Err(Error::NonConvergent {
            terms: self.max_terms,
            last_term: t,
        })
    }

    /// `(a; q)_inf`, as a compensated sum of logarithms.
    pub fn q_pochhammer_inf(&self, a: f64) -> Result<f64> {
        self.validate()?;
        let cut = self.infinite_cutoff(a.abs())?;
        let mut ln = CompensatedSum::new();
        let mut sign = 1.0;
        let mut qk = 1.0;
        for _ in 0..cut {
            let f = -a * qk;
            if f == -1.0 {
                return Ok(0.0);
            }
            if f < -1.0 {
                sign = -sign;
                ln.add((-(1.0 + f)).ln());
            } else {
                ln.add(f.ln_1p());
            }
            qk *= self.q;
        }
        Ok(sign * ln.value().exp())
    }

    pub fn q_pochhammer_inf_complex(&self, a: Complex64) -> Result<Complex64> {
        self.validate()?;
        let cut = self.infinite_cutoff(a.norm())?;
        Ok(self.q_pochhammer_complex(a, cut))
    }

    /// `(D_q f)(x) = (f(x) - f(qx)) / ((1 - q) x)`.
    pub fn q_derivative<F: Fn(f64) -> f64>(&self, f: F, x: f64) -> Result<f64> {
        self.validate()?;
        if x == 0.0 {
            return Err(Error::InvalidParameter {
                name: "x",
                value: x,
                reason: "q-derivative needs x != 0",
            });
        }
        Ok((f(x) - f(self.q * x)) / ((1.0 - self.q) * x))
    }

    /// `int_0^1 f d_q x = (1 - q) sum_k f(q^k) q^k` for `f` bounded near 0. The
    /// remainder after `k` is estimated by `q^(k+1)` times the largest `|f|` seen.
    pub fn q_integral<F: Fn(f64) -> f64>(&self, f: F) -> Result<SeriesSum> {
        self.validate()?;
        let mut acc = CompensatedSum::new();
        let mut qk = 1.0;
        let mut sup = 0.0f64;
        for k in 0..self.max_terms {
            let v = f(qk);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand { x: qk });
            }
            sup = sup.max(v.abs());
            acc.add(v * qk);
            qk *= self.q;
            // sum_(j > k) |f(q^j)| q^j (1 - q) <= sup q^(k+1)
            let tail = sup * qk;
            if tail <= self.series_tol * ((1.0 - self.q) * acc.value()).abs().max(1.0) {
                return Ok(SeriesSum {
                    value: (1.0 - self.q) * acc.value(),
                    terms: k + 1,
                    tail_bound: tail,
                });
            }
        }
        Err(Error::NonConvergent {
            terms: self.max_terms,
            last_term: sup * qk,
        })
    }

    /// `r phi s (upper; lower; q, z)` with the `(-1)^k q^(k(k-1)/2)` factor of the
    /// general definition omitted, which is the balanced case `r = s + 1` used
    /// throughout. Parameters equal to `q^(-n)` terminate the series after the
    /// `n`-th term.
    pub fn basic_hyp(&self, upper: &[f64], lower: &[f64], z: f64) -> Result<f64> {
        let s = self.basic_hyp_sum(upper, lower, z, self.max_terms)?;
        if s.tail_bound > self.series_tol * s.value.abs() {
            return Err(Error::NonConvergent {
                terms: s.terms,
                last_term: s.tail_bound,
            });
        }
        Ok(s.value)
    }

    /// [`QContext::basic_hyp`] with an explicit term budget and the remainder bound.
    pub fn basic_hyp_sum(&self, upper: &[f64], lower: &[f64], z: f64, max_terms: usize) -> Result<SeriesSum> {
        self.validate()?;
        let q = self.q;
        let stop = upper.iter().filter_map(|&a| q_power_index(a, q)).min();
        for &b in lower {
            if let Some(m) = q_power_index(b, q) {
                if stop.is_none_or(|n| m < n) {
                    return Err(Error::ParameterPole {
                        parameter: b,
                        term: m + 1,
                    });
                }
            }
        }
        if stop.is_none() && upper.len() > lower.len() + 1 && z != 0.0 {
            return Err(Error::NonTerminating);
        }
        let mut acc = CompensatedSum::new();
        let mut t = 1.0f64;
        let mut qk = 1.0f64;
        for k in 0..max_terms {
            acc.add(t);
            if stop == Some(k) {
                return Ok(SeriesSum {
                    value: acc.value(),
                    terms: k + 1,
                    tail_bound: 0.0,
                });
            }
            let mut ratio = z / (1.0 - qk * q);
            for &a in upper {
                ratio *= 1.0 - a * qk;
            }
            for &b in lower {
                ratio /= 1.0 - b * qk;
            }
            t *= ratio;
            qk *= q;
            if stop.is_none() {
                // every later term ratio is bounded by rho
                let mut rho = z.abs() / (1.0 - qk * q);
                for &a in upper {
                    rho *= 1.0 + a.abs() * qk;
                }
                for &b in lower {
                    let d = 1.0 - b.abs() * qk;
                    if d <= 0.0 {
                        rho = f64::INFINITY;
                    }
                    rho /= d;
                }
                if rho < 1.0 {
                    let tail = t.abs() / (1.0 - rho);
                    if tail <= self.series_tol * acc.value().abs() || k + 1 == max_terms {
                        return Ok(SeriesSum {
                            value: acc.value(),
                            terms: k + 1,
                            tail_bound: tail,
                        });
                    }
                }
            }
        }
        Err(Error::NonConvergent {
            terms: max_terms,
            last_term: t,
        })
    }

    /// Askey–Wilson `p_n(cos theta; a, b, c, d | q)` in double-double, summed as
    /// `a^-n sum_k (q^-n, abcd q^(n-1), a e^(i theta), a e^(-i theta); q)_k q^k / (q; q)_k
    /// * (ab q^k, ac q^k, ad q^k; q)_(n-k)`, which clears the lower parameters.
    pub fn askey_wilson_eval(&self, n: usize, params: [f64; 4], theta: f64) -> Result<f64> {
        Ok(self.askey_wilson_terms(n, params, theta)?.0)
    }

    /// Askey–Wilson value with the cancellation ratio `sum |terms| / |sum|`.
    fn askey_wilson_terms(&self, n: usize, params: [f64; 4], theta: f64) -> Result<(f64, f64)> {
        self.validate()?;
        let [a, b, c, d] = params;
        if a == 0.0 {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
                reason: "Askey-Wilson normalization divides by a^n",
            });
        }
        let qd = DoubleDouble::new(self.q);
        let mut qpow = vec![DoubleDouble::ONE; 2 * n + 1];
        for j in 1..qpow.len() {
            qpow[j] = qpow[j - 1] * qd;
        }
        let (ad_, bd, cd, dd_) = (
            DoubleDouble::new(a),
            DoubleDouble::new(b),
            DoubleDouble::new(c),
            DoubleDouble::new(d),
        );
        let lower = [ad_ * bd, ad_ * cd, ad_ * dd_];
        for l in lower {
            for (j, qj) in qpow.iter().take(n).enumerate() {
                if (DoubleDouble::ONE - l * *qj).to_f64().abs() < 1e-14 {
                    return Err(Error::ParameterPole {
                        parameter: l.to_f64(),
                        term: j + 1,
                    });
                }
            }
        }
        let x = DoubleDouble::new(theta.cos());
        let abcd = ad_ * bd * cd * dd_;
        let top = if n == 0 {
            DoubleDouble::ZERO
        } else {
            abcd * qpow[n - 1]
        };
        // (l q^k; q)_(n-k) for each lower parameter, for all k
        let tails: Vec<[DoubleDouble; 3]> = (0..=n)
            .map(|k| {
                lower.map(|l| {
                    (k..n).fold(DoubleDouble::ONE, |acc, j| acc * (DoubleDouble::ONE - l * qpow[j]))
                })
            })
            .collect();
        let mut sum = DoubleDouble::ZERO;
        let mut magnitude = 0.0;
        let mut head = DoubleDouble::ONE;
        for k in 0..=n {
            let [t1, t2, t3] = tails[k];
            let term = head * t1 * t2 * t3;
            magnitude += term.to_f64().abs();
            sum += term;
            if k == n {
                break;
            }
            let qk = qpow[k];
            let q_minus = DoubleDouble::ONE / qpow[n - k];
            let pair = DoubleDouble::ONE - ad_ * x * qk * 2.0 + ad_ * ad_ * qpow[2 * k];
            head = head * (DoubleDouble::ONE - q_minus) * (DoubleDouble::ONE - top * qk) * pair * qd
                / (DoubleDouble::ONE - qpow[k + 1]);
        }
        let mut scale = DoubleDouble::ONE;
        for _ in 0..n {
            scale *= ad_;
        }
        let cancellation = magnitude / sum.to_f64().abs().max(f64::MIN_POSITIVE);
        Ok(((sum / scale).to_f64(), cancellation))
    }

    /// Largest relative spread of [`QContext::askey_wilson_eval`] over the 24
    /// orderings of `(a, b, c, d)`.
    pub fn askey_wilson_symmetry(&self, n: usize, params: [f64; 4], theta: f64) -> Result<f64> {
        let values = permutations(params)
            .into_iter()
            .map(|p| self.askey_wilson_eval(n, p, theta))
            .collect::<Result<Vec<_>>>()?;
        let reference = values[0];
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        Ok(values.iter().map(|v| (v - reference).abs()).fold(0.0, f64::max) / scale)
    }

    /// `g_k = (beta; q)_k / (q; q)_k` for `k <= n`.
    fn ultraspherical_g(&self, n: usize, beta: f64) -> Vec<f64> {
        let mut g = Vec::with_capacity(n + 1);
        let mut acc = 1.0;
        let mut qk = 1.0;
        g.push(acc);
        for _ in 0..n {
            acc *= (1.0 - beta * qk) / (1.0 - qk * self.q);
            qk *= self.q;
            g.push(acc);
        }
        g
    }

    /// Continuous q-ultraspherical `C_n(cos theta; beta | q)` from the Fourier
    /// expansion `sum_k g_k g_(n-k) cos((n - 2k) theta)`.
    pub fn cq_ultraspherical_fourier(&self, n: usize, beta: f64, theta: f64) -> Result<f64> {
        self.validate()?;
        let g = self.ultraspherical_g(n, beta);
        Ok((0..=n)
            .map(|k| g[k] * g[n - k] * ((n as f64 - 2.0 * k as f64) * theta).cos())
            .collect::<CompensatedSum>()
            .value())
    }

    /// Factor `kappa_n` with `C_n(x; beta | q) = kappa_n p_n(x; a, b, -a, -b | q)`,
    /// `a = beta^(1/2)`, `b = (q beta)^(1/2)`: the ratio of leading coefficients
    /// `(beta; q)_n / (q; q)_n` and `(abcd q^(n-1); q)_n = (beta^2 q^n; q)_n`.
    pub fn ultraspherical_constant(&self, n: usize, beta: f64) -> f64 {
        let qn = self.q.powi(n as i32);
        self.q_pochhammer(beta, n) / (self.q_pochhammer(self.q, n) * self.q_pochhammer(beta * beta * qn, n))
    }

    /// `C_n(cos theta; beta | q)`. For `0 < beta < 1` this is the Askey–Wilson
    /// specialization times [`QContext::ultraspherical_constant`]; otherwise, or
    /// when the terminating series cancels beyond [`AW_MAX_CANCELLATION`], the
    /// Fourier expansion.
    pub fn cq_ultraspherical(&self, n: usize, beta: f64, theta: f64) -> Result<f64> {
        self.validate()?;
        if !(beta.abs() < 1.0) {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                reason: "must satisfy |beta| < 1",
            });
        }
        if beta <= 0.0 {
            return self.cq_ultraspherical_fourier(n, beta, theta);
        }
        let a = beta.sqrt();
        let b = (self.q * beta).sqrt();
        let (value, cancellation) = self.askey_wilson_terms(n, [a, b, -a, -b], theta)?;
        if cancellation > AW_MAX_CANCELLATION {
            return self.cq_ultraspherical_fourier(n, beta, theta);
        }
        Ok(value * self.ultraspherical_constant(n, beta))
    }

    /// Weight `|(e^(2i theta); q)_inf / (beta e^(2i theta); q)_inf|^2` on `(0, pi)`.
    pub fn cq_weight(&self, beta: f64, theta: f64) -> Result<f64> {
        let e = Complex64::from_polar(1.0, 2.0 * theta);
        let num = self.q_pochhammer_inf_complex(e)?;
        let den = self.q_pochhammer_inf_complex(e * beta)?;
        Ok((num / den).norm_sqr())
    }

    /// Gram matrix of `C_0, ..., C_n` against [`QContext::cq_weight`] on `(0, pi)`.
    pub fn cq_gram(&self, n: usize, beta: f64) -> Result<GramReport> {
        let ctx = *self;
        let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
        let values = par::try_map_range(Execution::default(), 0..pairs.len(), |p| {
            let (i, j) = pairs[p];
            integrate_plain(
                |t| {
                    let ci = ctx.cq_ultraspherical(i, beta, t).unwrap_or(f64::NAN);
                    let cj = ctx.cq_ultraspherical(j, beta, t).unwrap_or(f64::NAN);
                    ci * cj * ctx.cq_weight(beta, t).unwrap_or(f64::NAN)
                },
                0.0,
                std::f64::consts::PI,
                Tolerance::absolute(1e-13).with_rel(1e-12),
            )
            .map(|r| r.value)
        })?;
        let mut gram = vec![vec![0.0; n + 1]; n + 1];
        for (&(i, j), v) in pairs.iter().zip(values) {
            gram[i][j] = v;
            gram[j][i] = v;
        }
        let mut max_off = 0.0f64;
        for i in 0..=n {
            for j in 0..=n {
                if i != j {
                    max_off = max_off.max(gram[i][j].abs() / (gram[i][i] * gram[j][j]).sqrt());
                }
            }
        }
        Ok(GramReport {
            gram,
            max_off_diagonal: max_off,
        })
    }

    /// Partial sum `sum_(n <= N) C_n(cos theta; beta | q) t^n` against
    /// `|(beta e^(i theta) t; q)_inf / (e^(i theta) t; q)_inf|^2`. With
    /// `|g_k| <= M = (-|beta|; q)_inf / (q; q)_inf` we have `|C_n| <= (n+1) M^2`, so the
    /// remainder is at most `M^2 |t|^(N+1) ((N+2) - (N+1)|t|) / (1 - |t|)^2`.
    pub fn gen_fn_check(&self, beta: f64, theta: f64, t: f64, n_terms: usize) -> Result<GenFnReport> {
        self.validate()?;
        if !(t.abs() < 1.0) {
            return Err(Error::InvalidParameter {
                name: "t",
                value: t,
                reason: "generating function needs |t| < 1",
            });
        }
        let e = Complex64::from_polar(t, theta);
        let closed = (self.q_pochhammer_inf_complex(e * beta)? / self.q_pochhammer_inf_complex(e)?).norm_sqr();
        let mut acc = CompensatedSum::new();
        let mut tn = 1.0;
        for n in 0..=n_terms {
            acc.add(self.cq_ultraspherical(n, beta, theta)? * tn);
            tn *= t;
        }
        let m = self.q_pochhammer_inf(-beta.abs())? / self.q_pochhammer_inf(self.q)?;
        let r = t.abs();
        let nf = n_terms as f64;
        let tail = m * m * r.powi(n_terms as i32 + 1) * ((nf + 2.0) - (nf + 1.0) * r) / ((1.0 - r) * (1.0 - r));
        Ok(GenFnReport::new(acc.value(), closed, tail))
    }
}

/// Partial sum of a generating function against its closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenFnReport {
    pub partial_sum: f64,
    pub closed_form: f64,
    pub residual: f64,
    pub tail_bound: f64,
    /// `residual <= tail_bound` up to rounding of the two sides.
    pub within_bound: bool,
}

impl GenFnReport {
    fn new(partial_sum: f64, closed_form: f64, tail_bound: f64) -> Self {
        let residual = (partial_sum - closed_form).abs();
        let rounding = 1e-14 * closed_form.abs().max(1.0);
        Self {
            partial_sum,
            closed_form,
            residual,
            tail_bound,
            within_bound: residual <= tail_bound + rounding,
        }
    }
}

/// `sum_(n <= N) C_n^lambda(x) t^n` against `(1 - 2xt + t^2)^-lambda` for
/// `lambda > 0`, `|x| <= 1`. The bound uses `|C_n^lambda(x)| <= (2 lambda)_n / n!`
/// and the geometric majorant of that sequence beyond `N`.
pub fn gegenbauer_gen_fn_check(lambda: f64, x: f64, t: f64, n_terms: usize) -> Result<GenFnReport> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            reason: "tail bound needs lambda > 0",
        });
    }
    if !(x.abs() <= 1.0) {
        return Err(Error::OutsideSupport { x });
    }
    if !(t.abs() < 1.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "generating function needs |t| < 1",
        });
    }
    let fam = FamilySpec::Gegenbauer { lambda };
    let mut acc = CompensatedSum::new();
    let mut tn = 1.0;
    for n in 0..=n_terms {
        acc.add(fam.eval(n, x)? * tn);
        tn *= t;
    }
    let closed = (1.0 - 2.0 * x * t + t * t).powf(-lambda);
    let r = t.abs();
    // majorant term (2 lambda)_(N+1) / (N+1)! r^(N+1), ratios at most rho beyond it
    let mut first = 1.0;
    for k in 0..=n_terms {
        first *= (k as f64 + 2.0 * lambda) / (k as f64 + 1.0) * r;
    }
    let nf = n_terms as f64;
    let rho = r * f64::max(1.0, (nf + 1.0 + 2.0 * lambda) / (nf + 2.0));
    let tail = if rho < 1.0 { first / (1.0 - rho) } else { f64::INFINITY };
    Ok(GenFnReport::new(acc.value(), closed, tail))
}

/// `|C_n(x; q^lambda | q) - C_n^lambda(x)|`.
pub fn cq_to_gegenbauer(n: usize, lambda: f64, x: f64, q: f64) -> Result<f64> {
    let ctx = QContext::new(q)?;
    let qc = ctx.cq_ultraspherical(n, q.powf(lambda), x.acos())?;
    Ok((qc - FamilySpec::Gegenbauer { lambda }.eval(n, x)?).abs())
}

/// [`cq_to_gegenbauer`] along a schedule of `q` values approaching 1.
pub fn cq_limit_schedule(n: usize, lambda: f64, x: f64, qs: &[f64]) -> Result<LimitSchedule> {
    let errors = qs
        .iter()
        .map(|&q| cq_to_gegenbauer(n, lambda, x, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitSchedule::new(qs.to_vec(), errors))
}

/// All 24 orderings of four parameters.
pub fn permutations(p: [f64; 4]) -> Vec<[f64; 4]> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                if i != j && j != k && i != k {
                    out.push([p[i], p[j], p[k], p[6 - i - j - k]]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::hyp_terminating;
    use crate::classical::HypergeometricTerm;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn primitives() {
        assert!(matches!(QContext::new(1.0), Err(Error::QOutOfRange { .. })));
        for &q in &[0.1, 0.5, 0.9] {
            assert!((ctx(q).q_number(1.0) - 1.0).abs() < 1e-15);
            assert_eq!(ctx(q).q_pochhammer(0.3, 0), 1.0);
        }
        assert!((ctx(0.999_999).q_number(2.5) - 2.5).abs() < 1e-5);
        let c = ctx(0.5);
        assert!((c.q_pochhammer(0.25, 3) - 0.75 * 0.875 * 0.9375).abs() < 1e-16);
        let d = c.q_derivative(|x| x * x * x, 0.8).unwrap();
        assert!((d - (1.0 + 0.5 + 0.25) * 0.64).abs() < 1e-15);
        assert!(c.q_derivative(|x| x, 0.0).is_err());
    }

    #[test]
    fn q_integral_of_x() {
        for &q in &[0.3, 0.9, 0.999] {
            let v = ctx(q).q_integral(|x| x).unwrap();
            assert!((v.value - 1.0 / (1.0 + q)).abs() < 1e-12, "q={q}: {v:?}");
        }
    }

    #[test]
    fn infinite_product() {
        // Euler: (q; q)_inf (q; q^2)_inf... check (a; q)_inf = (a; q)_n (a q^n; q)_inf
        let c = ctx(0.7);
        let full = c.q_pochhammer_inf(0.4).unwrap();
        let split = c.q_pochhammer(0.4, 5) * c.q_pochhammer_inf(0.4 * 0.7f64.powi(5)).unwrap();
        assert!((full - split).abs() < 1e-15);
        // q-binomial theorem: sum z^k/(q;q)_k = 1/(z;q)_inf
        let s = c.basic_hyp(&[0.0], &[], 0.3).unwrap();
        assert!((s - 1.0 / c.q_pochhammer_inf(0.3).unwrap()).abs() < 1e-14);
        let z = c.q_pochhammer_inf_complex(Complex64::new(0.2, 0.3)).unwrap();
        assert!(z.norm() > 0.0);
    }

    #[test]
    fn basic_hyp_examples() {
        let c = ctx(0.6);
        assert_eq!(c.basic_hyp(&[1.0, 0.4], &[0.2], 0.7).unwrap(), 1.0);
        let z = 0.37;
        let v = c.basic_hyp(&[1.0 / 0.6], &[], z).unwrap();
        assert!((v - (1.0 - z / 0.6)).abs() < 1e-15);
        assert!(matches!(
            c.basic_hyp(&[0.6f64.powi(-3), 0.5], &[1.0 / 0.6], 0.5),
            Err(Error::ParameterPole { term: 2, .. })
        ));
    }

    #[test]
    fn q_hypergeometric_limit() {
        // 2phi1(q^a, q^b; q^c; q, z) -> 2F1(a, b; c; z) for a = -3
        let (a, b, cc, z) = (-3.0, 1.5, 2.5, 0.4);
        let exact = hyp_terminating(&HypergeometricTerm::new(vec![a, b], vec![cc], z)).unwrap();
        let mut prev = f64::INFINITY;
        for &q in &[0.9, 0.99, 0.999] {
            let v = ctx(q).basic_hyp(&[q.powf(a), q.powf(b)], &[q.powf(cc)], z).unwrap();
            let err = (v - exact).abs();
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn askey_wilson() {
        let c = ctx(0.4);
        assert_eq!(c.askey_wilson_eval(0, [0.2, 0.3, 0.4, 0.5], 1.0).unwrap(), 1.0);
        for n in 0..=6 {
            let s = c.askey_wilson_symmetry(n, [0.5, -0.3, 0.7, 0.2], 0.9).unwrap();
            assert!(s < 1e-12, "n={n}: {s}");
        }
        assert!(c.askey_wilson_eval(2, [0.0, 0.3, 0.4, 0.5], 1.0).is_err());
        assert!(matches!(
            c.askey_wilson_eval(3, [2.5, 1.0, 0.1, 0.1], 1.0),
            Err(Error::ParameterPole { term: 2, .. })
        ));
    }

    #[test]
    fn ultraspherical_routes_agree() {
        let c = ctx(0.55);
        for n in 0..=20 {
            for &th in &[0.2, 1.1, 2.9] {
                let a = c.cq_ultraspherical(n, 0.35, th).unwrap();
                let f = c.cq_ultraspherical_fourier(n, 0.35, th).unwrap();
                if n <= 8 {
                    let (r, s) = (0.35f64.sqrt(), (0.55f64 * 0.35).sqrt());
                    assert!(c.askey_wilson_terms(n, [r, s, -r, -s], th).unwrap().1 < AW_MAX_CANCELLATION);
                }
                assert!((a - f).abs() < 1e-12 * (1.0 + f.abs()), "n={n} th={th}: {a} vs {f}");
            }
        }
    }

    #[test]
    fn ultraspherical_orthogonality() {
        let g = ctx(0.5).cq_gram(5, 0.3).unwrap();
        assert!(g.max_off_diagonal < 1e-10, "{}", g.max_off_diagonal);
    }

    #[test]
    fn generating_functions() {
        let x: f64 = 0.3;
        let r = ctx(0.6).gen_fn_check(0.4, x.acos(), 0.2, 20).unwrap();
        assert!(r.within_bound, "{r:?}");
        assert!(r.residual < 1e-12);
        let g = gegenbauer_gen_fn_check(1.0, 0.3, 0.2, 25).unwrap();
        assert!(g.within_bound && g.residual < 1e-10, "{g:?}");
        assert!(ctx(0.5).gen_fn_check(0.4, 1.0, 1.0, 5).is_err());
    }

    #[test]
    fn q_to_one() {
        assert!(cq_to_gegenbauer(3, 1.0, 0.5, 0.999).unwrap() < 1e-2);
        for n in 1..=4 {
            let s = cq_limit_schedule(n, 1.0, 0.3, &[0.9, 0.99, 0.999]).unwrap();
            assert!(s.monotone, "n={n}: {:?}", s.errors);
        }
    }

    #[test]
    fn twenty_four_orderings() {
        let p = permutations([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(p.len(), 24);
        let mut sorted: Vec<_> = p.iter().map(|v| v.map(|x| x as u8)).collect();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
    }
}
