//! Hamburger moment-problem diagnostics: numerator polynomials and continued
//! fractions, Markov convergence of the Stieltjes transform, Carleman sums,
//! `rho(z)`, the Nevanlinna functions, the true interval of orthogonality,
//! support bounds from recurrence limits and the Stieltjes–Wigert moments.
//!
//! Divergence of an infinite sum is decided from finitely many terms by the
//! log-log growth exponent of its partial sums over `N in [N_max/100, N_max]`.
//! The rule is a heuristic and every report carries the fitted exponents.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{Measure, MomentSequence};
use crate::numeric::integrate::{integrate, Range, Tolerance};
use crate::numeric::{fit_slope, ComplexDD};
use crate::par::Execution;
use crate::quadrature::{ChainReport, ZeroTable};
use crate::recurrence::{Coefficients, Form, RecurrenceSystem};

/// Growth exponents inside `(-GROWTH_BAND, GROWTH_BAND)` do not count as divergence.
pub const GROWTH_BAND: f64 = 0.05;

/// `p^(1)_n`: the recurrence shifted by one index, `p^(1)_0 = 1`.
pub fn numerator_polys(sys: &RecurrenceSystem) -> Result<RecurrenceSystem> {
    if sys.form() == Form::General {
        return Err(Error::Invalid("numerator polynomials need a monic or orthonormal system".into()));
    }
    let src = sys.clone();
    let mut out = RecurrenceSystem::from_fn(sys.form(), 1.0, move |n| {
        let co = src.coeffs(n + 1).unwrap_or(Coefficients::new(f64::NAN, f64::NAN, f64::NAN));
        Coefficients::new(co.a, co.b, if n == 0 { 0.0 } else { co.c })
    })
    .with_label(&format!("{} (numerator)", sys.label()));
    if let Some(len) = sys.len() {
        out = out.with_len(len.saturating_sub(1));
    }
    Ok(out)
}

/// `(1 / mu_0) int (p_n(y) - p_n(x)) / (y - x) dmu(x)`, which equals `p^(1)_{n-1}(y)`
/// for a monic system.
pub fn numerator_integral(sys: &RecurrenceSystem, m: &Measure, n: usize, y: f64) -> Result<f64> {
    let mu0 = m.integrate(|_| 1.0)?;
    let v = m.integrate(|x| sys.divided_differences(n, x, y).map_or(f64::NAN, |d| d[n]))?;
    Ok(v / mu0)
}

/// `F_n(z)` by the two routes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContinuedFraction {
    /// Backward evaluation from the deepest level.
    pub bottom_up: Complex64,
    /// `p^(1)_{n-1}(z) / p_n(z)`.
    pub ratio: Complex64,
}

impl ContinuedFraction {
    pub fn relative_gap(&self) -> f64 {
        (self.bottom_up - self.ratio).norm() / self.bottom_up.norm().max(self.ratio.norm()).max(f64::MIN_POSITIVE)
    }
}

fn monic(sys: &RecurrenceSystem) -> Result<()> {
    if sys.form() != Form::Monic {
        return Err(Error::Invalid("a monic system is required".into()));
    }
    Ok(())
}

fn is_zero(z: ComplexDD) -> bool {
    z.re.to_f64() == 0.0 && z.im.to_f64() == 0.0
}

/// Bottom-up evaluation of `F_n(z)`, `n >= 1`.
pub fn continued_fraction_bottom_up(sys: &RecurrenceSystem, n: usize, z: Complex64) -> Result<Complex64> {
    monic(sys)?;
    if n == 0 {
        return Err(Error::Invalid("F_n is defined for n >= 1".into()));
    }
    let zd = ComplexDD::from(z);
    let shift = |k: usize| -> Result<ComplexDD> { Ok(zd - ComplexDD::from(Complex64::new(sys.coeffs(k)?.b, 0.0))) };
    let mut t = shift(n - 1)?;
    for k in (0..n - 1).rev() {
        if is_zero(t) {
            return Err(Error::Pole { n: k + 1 });
        }
        let c = ComplexDD::from(Complex64::new(sys.coeffs(k + 1)?.c, 0.0));
        t = shift(k)? - c / t;
    }
    if is_zero(t) {
        return Err(Error::Pole { n });
    }
    Ok((ComplexDD::from(Complex64::new(1.0, 0.0)) / t).to_c64())
}

/// `F_n(z)` by both routes.
pub fn continued_fraction(sys: &RecurrenceSystem, n: usize, z: Complex64) -> Result<ContinuedFraction> {
    let bottom_up = continued_fraction_bottom_up(sys, n, z)?;
    let num = numerator_polys(sys)?.eval(n - 1, ComplexDD::from(z))?;
    let den = sys.eval(n, ComplexDD::from(z))?;
    if is_zero(den) {
        return Err(Error::Pole { n });
    }
    Ok(ContinuedFraction {
        bottom_up,
        ratio: (num / den).to_c64(),
    })
}

/// `F_n(z)` along a degree schedule against `(1 / mu_0) int dmu(x) / (z - x)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarkovReport {
    pub degrees: Vec<usize>,
    pub values: Vec<Complex64>,
    /// `|F_{n_i} - F_{n_{i-1}}|`.
    pub increments: Vec<f64>,
    pub oracle: Complex64,
    /// `|F_{n_i} - oracle|`.
    pub errors: Vec<f64>,
    /// Increments decrease along the schedule.
    pub cauchy: bool,
}

/// Stieltjes transform `(1 / mu_0) int dmu(x) / (z - x)` by adaptive quadrature.
pub fn stieltjes_transform(m: &Measure, z: Complex64) -> Result<Complex64> {
    let (lower, upper) = m.support_hull();
    if z.im == 0.0 && z.re >= lower && z.re <= upper {
        return Err(Error::InsideSupport { x: z.re, lower, upper });
    }
    let mu0 = m.integrate(|_| 1.0)?;
    let re = m.integrate(|x| (1.0 / (z - x)).re)?;
    let im = m.integrate(|x| (1.0 / (z - x)).im)?;
    Ok(Complex64::new(re, im) / mu0)
}

pub fn markov_transform(sys: &RecurrenceSystem, m: &Measure, z: Complex64, schedule: &[usize]) -> Result<MarkovReport> {
    let oracle = stieltjes_transform(m, z)?;
    let values = schedule
        .iter()
        .map(|&n| continued_fraction_bottom_up(sys, n, z))
        .collect::<Result<Vec<_>>>()?;
    let increments: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    Ok(MarkovReport {
        degrees: schedule.to_vec(),
        errors: values.iter().map(|v| (v - oracle).norm()).collect(),
        cauchy: increments.windows(2).all(|w| w[1] <= w[0]),
        increments,
        values,
        oracle,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Diverges,
    Converges,
    Inconclusive,
}

/// Partial sums of a positive series with the fitted growth exponents.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesVerdict {
    /// `S_N` for `N = 1..=N_max`.
    pub partial_sums: Vec<f64>,
    /// Slope of `log S_N` against `log N` over `[N_max/100, N_max]`.
    pub growth_exponent: f64,
    /// Slope of `-log t_N` against `log N` over the same window.
    pub decay_exponent: f64,
    pub verdict: Verdict,
}

/// Diverges when `S_N` grows like a positive power of `N`; converges when
/// the growth is flat and the terms decay faster than `N^(-1-GROWTH_BAND)`.
pub fn classify_series(log_terms: &[f64]) -> SeriesVerdict {
    let n_max = log_terms.len();
    let mut partial_sums = Vec::with_capacity(n_max);
    let mut acc = 0.0;
    for lt in log_terms {
        acc += lt.exp();
        partial_sums.push(acc);
    }
    let start = (n_max / 100).max(1);
    let mut idx: Vec<usize> = (0..=60)
        .map(|i| {
            let t = i as f64 / 60.0;
            ((start as f64).ln() * (1.0 - t) + (n_max as f64).ln() * t).exp().round() as usize
        })
        .filter(|&n| n >= 1 && n <= n_max)
        .collect();
    idx.dedup();
    let ln_n: Vec<f64> = idx.iter().map(|&n| (n as f64).ln()).collect();
    let ln_s: Vec<f64> = idx.iter().map(|&n| partial_sums[n - 1].ln()).collect();
    let ln_t: Vec<f64> = idx.iter().map(|&n| -log_terms[n - 1]).collect();
    let growth_exponent = fit_slope(&ln_n, &ln_s);
    let decay_exponent = fit_slope(&ln_n, &ln_t);
    let verdict = if growth_exponent > GROWTH_BAND {
        Verdict::Diverges
    } else if growth_exponent.abs() < GROWTH_BAND && decay_exponent > 1.0 + GROWTH_BAND {
        Verdict::Converges
    } else {
        Verdict::Inconclusive
    };
    SeriesVerdict {
        partial_sums,
        growth_exponent,
        decay_exponent,
        verdict,
    }
}

/// Carleman sums `sum mu_{2n}^(-1/(2n))` and `sum 1/a_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentDiagnostics {
    pub moments: Option<MomentSequence>,
    pub carleman_partial_even: Option<SeriesVerdict>,
    pub carleman_partial_a: Option<SeriesVerdict>,
}

impl MomentDiagnostics {
    /// `log_even_moments[n - 1] = log mu_{2n}` for `n = 1..=N_max`.
    pub fn from_log_even_moments(log_even_moments: &[f64]) -> Self {
        let lt: Vec<f64> = log_even_moments
            .iter()
            .enumerate()
            .map(|(i, l)| -l / (2.0 * (i + 1) as f64))
            .collect();
        Self {
            moments: None,
            carleman_partial_even: Some(classify_series(&lt)),
            carleman_partial_a: None,
        }
    }

    pub fn from_moments(ms: &MomentSequence) -> Self {
        let logs: Vec<f64> = (1..)
            .map(|n| 2 * n)
            .take_while(|&k| k < ms.mu.len())
            .map(|k| ms.mu[k].ln())
            .collect();
        Self {
            moments: Some(ms.clone()),
            ..Self::from_log_even_moments(&logs)
        }
    }

    /// Adds the sum `sum_{n >= 1} 1/a_n` of an orthonormal system.
    pub fn with_orthonormal(mut self, sys: &RecurrenceSystem, n_max: usize) -> Result<Self> {
        self.carleman_partial_a = Some(carleman_recurrence(sys, n_max)?);
        Ok(self)
    }

    /// Uniqueness is certified when either sum diverges.
    pub fn verdict(&self) -> Verdict {
        let v = [&self.carleman_partial_even, &self.carleman_partial_a];
        let vs: Vec<Verdict> = v.iter().filter_map(|s| s.as_ref().map(|s| s.verdict)).collect();
        if vs.contains(&Verdict::Diverges) {
            Verdict::Diverges
        } else if !vs.is_empty() && vs.iter().all(|v| *v == Verdict::Converges) {
            Verdict::Converges
        } else {
            Verdict::Inconclusive
        }
    }
}

/// `sum_{n=1}^{N} 1/a_n` for an orthonormal system, stopping early at the
/// first non-finite `a_n`.
pub fn carleman_recurrence(sys: &RecurrenceSystem, n_max: usize) -> Result<SeriesVerdict> {
    if sys.form() != Form::Orthonormal {
        return Err(Error::Invalid("the a_n test needs an orthonormal system".into()));
    }
    let mut lt = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let a = sys.coeffs(n)?.a;
        // coefficients of fast-growing chains overflow long before n_max
        if !(a.is_finite() && a > 0.0) {
            break;
        }
        lt.push(-a.ln());
    }
    Ok(classify_series(&lt))
}

/// Estimate of `rho(z) = (sum |p_n(z)|^2)^(-1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhoReport {
    pub degrees: Vec<usize>,
    /// `S_N = sum_{n <= N} |p_n(z)|^2` at each scheduled `N`.
    pub partial_sums: Vec<f64>,
    pub growth_exponent: f64,
    /// `0` when the sum diverges, `1 / S_N` otherwise.
    pub rho: f64,
    pub verdict: Verdict,
}

/// Partial sums beyond this are treated as divergent.
pub const RHO_CAP: f64 = 1e280;

/// `S_N` along `schedule` (increasing degrees) for an orthonormal system.
/// Converges when the last relative increment is below `1e-10`; diverges
/// when `S_N` grows with exponent above [`GROWTH_BAND`] or passes [`RHO_CAP`].
pub fn rho(sys: &RecurrenceSystem, z: Complex64, schedule: &[usize]) -> Result<RhoReport> {
    if sys.form() != Form::Orthonormal {
        return Err(Error::Invalid("rho needs an orthonormal system".into()));
    }
    let n_max = schedule.iter().copied().max().unwrap_or(0);
    let p = sys.eval_all(n_max, z)?;
    let mut sums = Vec::with_capacity(n_max + 1);
    let mut acc = 0.0;
    for v in &p {
        acc += v.norm_sqr();
        sums.push(acc);
    }
    let partial_sums: Vec<f64> = schedule.iter().map(|&n| sums[n]).collect();
    let window: Vec<usize> = schedule.iter().copied().filter(|&n| n >= (n_max / 100).max(1)).collect();
    let growth_exponent = fit_slope(
        &window.iter().map(|&n| (n as f64).ln()).collect::<Vec<_>>(),
        &window.iter().map(|&n| sums[n].ln()).collect::<Vec<_>>(),
    );
    let last = *partial_sums.last().unwrap_or(&f64::NAN);
    let settled = partial_sums.len() >= 2 && {
        let prev = partial_sums[partial_sums.len() - 2];
        (last - prev).abs() <= 1e-10 * last
    };
    let verdict = if !last.is_finite() || last > RHO_CAP || growth_exponent > GROWTH_BAND {
        Verdict::Diverges
    } else if settled {
        Verdict::Converges
    } else {
        Verdict::Inconclusive
    };
    Ok(RhoReport {
        degrees: schedule.to_vec(),
        partial_sums,
        growth_exponent,
        rho: if verdict == Verdict::Diverges { 0.0 } else { 1.0 / last },
        verdict,
    })
}

/// Truncations of `A, B, C, D` at index `N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Nevanlinna {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    /// Magnitudes of the index-`N` terms of the four sums.
    pub last_terms: [f64; 4],
    /// `A D - B C`, reported and never asserted.
    pub determinant: Complex64,
}

/// `A(z) = z sum p^(1)_n(0) p^(1)_n(z)`, `B(z) = -1 + z sum_{n>=1} p^(1)_{n-1}(0) p_n(z)`,
/// `C(z) = 1 + z sum_{n>=1} p_n(0) p^(1)_{n-1}(z)`, `D(z) = z sum p_n(0) p_n(z)`,
/// truncated at `n = N`, for an orthonormal system taken with `p_0 = 1`.
/// The numerator polynomials enter divided by `a_0` (the polynomials of the
/// second kind); for `a_0 = 1` this is the plain display.
pub fn nevanlinna_abcd(sys: &RecurrenceSystem, z: Complex64, n: usize) -> Result<Nevanlinna> {
    if sys.form() != Form::Orthonormal {
        return Err(Error::Invalid("the Nevanlinna functions need an orthonormal system".into()));
    }
    let num = numerator_polys(sys)?;
    let zero = Complex64::new(0.0, 0.0);
    // second-kind polynomials p^(1)_n / a_0, so that mu_0 = 1 fixes everything
    let a0 = sys.coeffs(0)?.a;
    let scale = |v: Vec<Complex64>| -> Vec<Complex64> { v.into_iter().map(|q| q / a0).collect() };
    let p0: Vec<Complex64> = sys.eval_all(n, zero)?.into_iter().map(|p| p / sys.p0()).collect();
    let pz: Vec<Complex64> = sys.eval_all(n, z)?.into_iter().map(|p| p / sys.p0()).collect();
    let q0 = scale(num.eval_all(n, zero)?);
    let qz = scale(num.eval_all(n, z)?);
    let mut sa = zero;
    let mut sd = zero;
    let mut sb = zero;
    let mut sc = zero;
    for k in 0..=n {
        sa += q0[k] * qz[k];
        sd += p0[k] * pz[k];
        if k >= 1 {
            sb += q0[k - 1] * pz[k];
            sc += p0[k] * qz[k - 1];
        }
    }
    let last_terms = [
        (q0[n] * qz[n] * z).norm(),
        if n >= 1 { (q0[n - 1] * pz[n] * z).norm() } else { 0.0 },
        if n >= 1 { (p0[n] * qz[n - 1] * z).norm() } else { 0.0 },
        (p0[n] * pz[n] * z).norm(),
    ];
    let one = Complex64::new(1.0, 0.0);
    let (a, b, c, d) = (z * sa, z * sb - one, one + z * sc, z * sd);
    Ok(Nevanlinna {
        a,
        b,
        c,
        d,
        last_terms,
        determinant: a * d - b * c,
    })
}

/// Extreme zeros per degree and the extrapolated ends of the true interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrueIntervalEstimate {
    /// `x_{n,1}` for `n = 1..=n_max`.
    pub xi1_sequence: Vec<f64>,
    /// `x_{n,n}` for `n = 1..=n_max`.
    pub eta1_sequence: Vec<f64>,
    pub chains: ChainReport,
    /// Extrapolated `(xi_1, eta_1)`, infinite when the extremes keep growing.
    pub limits: (f64, f64),
}

/// Extrapolate a monotone sequence `s[n-1]` from its values at degrees
/// `n/8, n/4, n/2, n`: increments shrinking by a ratio `r < 0.9` give the
/// geometric limit `s_n + d r / (1 - r)`; otherwise the sequence diverges.
fn extrapolate(s: &[f64], towards: f64) -> f64 {
    let n = s.len();
    if n < 8 {
        return s[n - 1];
    }
    let at = |k: usize| s[k - 1];
    let (a, b, c, d) = (at(n / 8), at(n / 4), at(n / 2), at(n));
    let d1 = b - a;
    let d2 = c - b;
    let d3 = d - c;
    if d3 == 0.0 {
        return d;
    }
    let r = d3 / d2;
    if !(r < 0.9 && d2 / d1 < 0.9) {
        return towards;
    }
    d + d3 * r / (1.0 - r)
}

pub fn true_interval(sys: &RecurrenceSystem, n_max: usize, exec: Execution) -> Result<TrueIntervalEstimate> {
    let table = ZeroTable::new(sys, n_max, exec)?;
    let xi = table.smallest();
    let eta = table.largest();
    Ok(TrueIntervalEstimate {
        limits: (extrapolate(&xi, f64::NEG_INFINITY), extrapolate(&eta, f64::INFINITY)),
        chains: table.chains(),
        xi1_sequence: xi,
        eta1_sequence: eta,
    })
}

/// Support information read off the monic coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum SupportClass {
    /// `b_n -> b`, `c_n -> c`: `b +- 2 sqrt(c)` are limit points of the support.
    Limits { b: f64, c: f64, lower: f64, upper: f64 },
    /// `b_n` bounded, `c_n` unbounded: the true interval is the whole line.
    Unbounded,
    /// Both sequences bounded without detected limits.
    Bounded { b_max: f64, c_max: f64 },
    Inconclusive,
}

/// Spread allowed in the last quarter of the coefficients for a limit.
pub const LIMIT_SPREAD: f64 = 1e-3;

pub fn support_bound_criteria(sys: &RecurrenceSystem, n_max: usize) -> Result<SupportClass> {
    monic(sys)?;
    if n_max < 8 {
        return Ok(SupportClass::Inconclusive);
    }
    let rows = (1..=n_max).map(|n| sys.coeffs(n)).collect::<Result<Vec<_>>>()?;
    let b: Vec<f64> = rows.iter().map(|r| r.b).collect();
    let c: Vec<f64> = rows.iter().map(|r| r.c).collect();
    let tail = |v: &[f64]| {
        let t = &v[3 * v.len() / 4..];
        let lo = t.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = t.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi, t[t.len() - 1])
    };
    let growth = |v: &[f64]| {
        let idx: Vec<usize> = (n_max / 4..n_max).collect();
        fit_slope(
            &idx.iter().map(|&i| ((i + 1) as f64).ln()).collect::<Vec<_>>(),
            &idx.iter().map(|&i| v[i].abs().max(f64::MIN_POSITIVE).ln()).collect::<Vec<_>>(),
        )
    };
    let (blo, bhi, blast) = tail(&b);
    let (clo, chi, clast) = tail(&c);
    let b_converges = bhi - blo <= LIMIT_SPREAD * (1.0 + blast.abs());
    let c_converges = chi - clo <= LIMIT_SPREAD * (1.0 + clast.abs());
    let b_unbounded = growth(&b) > GROWTH_BAND && bhi.abs().max(blo.abs()) > 1.0;
    let c_unbounded = growth(&c) > GROWTH_BAND && chi > 1.0;
    Ok(if b_converges && c_converges {
        let r = 2.0 * clast.max(0.0).sqrt();
        SupportClass::Limits {
            b: blast,
            c: clast,
            lower: blast - r,
            upper: blast + r,
        }
    } else if c_unbounded && !b_unbounded {
        SupportClass::Unbounded
    } else if !b_unbounded && !c_unbounded {
        SupportClass::Bounded {
            b_max: b.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            c_max: c.iter().fold(0.0f64, |m, v| m.max(*v)),
        }
    } else {
        SupportClass::Inconclusive
    })
}

/// `q = e^(-1/2)` for the Stieltjes–Wigert moments `mu_k = e^(k(k+2)/4)`.
pub fn stieltjes_wigert_q() -> f64 {
    (-0.5f64).exp()
}

/// Monic recurrence for the moments `mu_k = e^(k(k+2)/4)`:
/// `b_n = q^(-2n-3/2)(1 + q - q^(n+1))`, `c_n = q^(-4n)(1 - q^n)`.
pub fn stieltjes_wigert_monic() -> RecurrenceSystem {
    let q = stieltjes_wigert_q();
    RecurrenceSystem::from_fn(Form::Monic, 1.0, move |n| {
        let nf = n as f64;
        let b = q.powf(-2.0 * nf - 1.5) * (1.0 + q - q.powi(n as i32 + 1));
        let c = if n == 0 { 0.0 } else { q.powf(-4.0 * nf) * (1.0 - q.powi(n as i32)) };
        Coefficients::new(1.0, b, c)
    })
    .with_label("stieltjes_wigert")
}

/// `log mu_k` for the Stieltjes–Wigert moments.
pub fn stieltjes_wigert_log_moment(k: usize) -> f64 {
    let k = k as f64;
    k * (k + 2.0) / 4.0
}

/// Numeric moments of `(1 + C sin(2 pi log x)) e^(-log^2 x) / (sqrt(pi) e^(1/4))`
/// on `(0, inf)` and the lattice sum with weights `e^(-(k+1)^2/4)` at `e^(-k/2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StieltjesWigertReport {
    pub cs: Vec<f64>,
    /// `moments[i][n]` for `C = cs[i]`.
    pub moments: Vec<Vec<f64>>,
    /// `e^(n(n+2)/4)`.
    pub expected: Vec<f64>,
    /// Largest relative deviation from `expected`.
    pub max_deviation: f64,
    /// Largest relative deviation between two values of `C`.
    pub max_pairwise_deviation: f64,
    /// Normalized lattice sums.
    pub discrete: Vec<f64>,
    /// Rigorous relative truncation bound of the lattice sums.
    pub discrete_bound: f64,
    pub discrete_max_deviation: f64,
    pub tolerance: f64,
}

/// Quadrature tolerance for the continuous moments.
pub const SW_TOLERANCE: f64 = 1e-10;

/// Moment `n` of the density with parameter `c`, integrated in `t = log x`.
pub fn stieltjes_wigert_moment(c: f64, n: usize) -> Result<f64> {
    if !(c > -1.0 && c < 1.0) {
        return Err(Error::InvalidParameter {
            name: "C",
            value: c,
            reason: "must lie in (-1, 1)",
        });
    }
    // x^n e^{-log^2 x} dx = e^{(n+1) t - t^2} dt; the peak value is factored out
    let centre = (n as f64 + 1.0) / 2.0;
    let peak = centre * centre;
    let tol = Tolerance {
        abs: 1e-300,
        rel: SW_TOLERANCE,
        max_panels: 20_000,
    };
    let v = integrate(
        |t| ((n as f64 + 1.0) * t - t * t - peak).exp() * (1.0 + c * (2.0 * PI * t).sin()),
        Range::Whole,
        tol,
    )?;
    Ok(v.value * (peak - 0.25).exp() / PI.sqrt())
}

/// `sum_{j > J} e^(-j^2/4)`, bounded by a geometric majorant.
fn gauss_tail(j: i64) -> f64 {
    let j = j.max(0) as f64;
    (-(j + 1.0).powi(2) / 4.0).exp() / (1.0 - (-(2.0 * j + 3.0) / 4.0).exp())
}

/// Normalized lattice sum for moment `n`, truncated to `|k| <= k_max`, and
/// its relative truncation bound.
pub fn stieltjes_wigert_lattice(n: usize, k_max: i64) -> (f64, f64) {
    let nf = n as f64;
    let theta: f64 = (-k_max..=k_max).map(|k| (-(k * k) as f64 / 4.0).exp()).sum();
    let num: f64 = (-k_max..=k_max)
        .map(|k| {
            let k = k as f64;
            (-0.5 * k * nf - (k + 1.0).powi(2) / 4.0).exp()
        })
        .sum();
    let ni = n as i64;
    // relative to e^{n(n+2)/4}, the omitted numerator terms are e^{-j^2/4} with |j| beyond these
    let bound_num = gauss_tail(k_max + ni + 1) + gauss_tail(k_max - ni - 1);
    let bound_den = 2.0 * gauss_tail(k_max);
    (num / theta, (bound_num + bound_den) / theta)
}

pub fn stieltjes_wigert_demo(cs: &[f64], n_max: usize) -> Result<StieltjesWigertReport> {
    let expected: Vec<f64> = (0..=n_max).map(|n| stieltjes_wigert_log_moment(n).exp()).collect();
    let moments = cs
        .iter()
        .map(|&c| (0..=n_max).map(|n| stieltjes_wigert_moment(c, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let mut max_deviation = 0.0f64;
    let mut max_pairwise_deviation = 0.0f64;
    for (i, row) in moments.iter().enumerate() {
        for n in 0..=n_max {
            max_deviation = max_deviation.max(rel(row[n], expected[n]));
            for other in &moments[i + 1..] {
                max_pairwise_deviation = max_pairwise_deviation.max(rel(row[n], other[n]));
            }
        }
    }
    let k_max = 40 + 2 * n_max as i64;
    let lattice: Vec<(f64, f64)> = (0..=n_max).map(|n| stieltjes_wigert_lattice(n, k_max)).collect();
    let discrete: Vec<f64> = lattice.iter().map(|l| l.0).collect();
    let discrete_bound = lattice.iter().map(|l| l.1).fold(0.0, f64::max);
    let discrete_max_deviation = discrete
        .iter()
        .zip(&expected)
        .map(|(d, e)| rel(*d, *e))
        .fold(0.0, f64::max);
    Ok(StieltjesWigertReport {
        cs: cs.to_vec(),
        moments,
        expected,
        max_deviation,
        max_pairwise_deviation,
        discrete,
        discrete_bound,
        discrete_max_deviation,
        tolerance: SW_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::FamilySpec;
    use crate::measures::{moments_from_recurrence, named};

    fn cheb_t_monic() -> RecurrenceSystem {
        FamilySpec::ChebyshevT.recurrence().to_monic()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn numerator_examples() {
        let num = numerator_polys(&cheb_t_monic()).unwrap();
        assert_eq!(num.eval(0, 0.4).unwrap(), 1.0);
        assert_eq!(num.eval(1, 0.4).unwrap(), 0.4);
        assert!(num.validate_favard(10).all_pass);
        let leg = FamilySpec::Legendre.recurrence().to_monic();
        let v = numerator_integral(&leg, &named::legendre(), 2, 2.0).unwrap();
        let want = numerator_polys(&leg).unwrap().eval(1, 2.0).unwrap();
        assert!((v - want).abs() < 1e-10, "{v} {want}");
    }

    #[test]
    fn continued_fraction_examples() {
        let t = cheb_t_monic();
        let f1 = continued_fraction(&t, 1, c(0.7, 0.2)).unwrap();
        assert!((f1.bottom_up - 1.0 / c(0.7, 0.2)).norm() < 1e-15);
        let f2 = continued_fraction(&t, 2, c(2.0, 0.0)).unwrap();
        assert!((f2.bottom_up.re - 4.0 / 7.0).abs() < 1e-15 && f2.relative_gap() < 1e-15);
        let leg = FamilySpec::Legendre.recurrence().to_monic();
        assert!(continued_fraction(&leg, 6, c(1.5, 0.5)).unwrap().relative_gap() < 1e-10);
        assert!(matches!(continued_fraction(&leg, 1, c(0.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn markov_examples() {
        let t = cheb_t_monic();
        let rep = markov_transform(&t, &named::chebyshev_t(), c(2.0, 0.0), &[5, 10, 20, 40]).unwrap();
        assert!((rep.oracle.re - 1.0 / 3f64.sqrt()).abs() < 1e-10);
        assert!(rep.errors[3] < 1e-8 && rep.cauchy);
        let big = continued_fraction_bottom_up(&t, 8, c(1e8, 0.0)).unwrap();
        assert!((big.re * 1e8 - 1.0).abs() < 1e-12);
        let leg = FamilySpec::Legendre.recurrence().to_monic();
        let d = continued_fraction_bottom_up(&leg, 20, c(3.0, 0.0)).unwrap()
            - continued_fraction_bottom_up(&leg, 40, c(3.0, 0.0)).unwrap();
        assert!(d.norm() < 1e-10);
        assert!(markov_transform(&t, &named::chebyshev_t(), c(0.5, 0.0), &[4]).is_err());
    }

    #[test]
    fn carleman_examples() {
        let herm = (1..=2000).map(|n| crate::numeric::special::ln_gamma(n as f64 + 0.5)).collect::<Vec<_>>();
        assert_eq!(MomentDiagnostics::from_log_even_moments(&herm).verdict(), Verdict::Diverges);
        let lag = FamilySpec::Laguerre { alpha: 0.0 };
        let on = lag.recurrence().to_orthonormal(lag.mu0());
        assert_eq!(carleman_recurrence(&on, 5000).unwrap().verdict, Verdict::Diverges);
        let sw = (1..=1000).map(|n| stieltjes_wigert_log_moment(2 * n)).collect::<Vec<_>>();
        let d = MomentDiagnostics::from_log_even_moments(&sw);
        let s = d.carleman_partial_even.as_ref().unwrap();
        assert_eq!(s.verdict, Verdict::Converges);
        assert!(s.partial_sums.windows(2).all(|w| w[1] >= w[0]));
        let limit = (-1.0f64).exp() / (1.0 - (-0.5f64).exp());
        assert!((s.partial_sums[999] - limit).abs() < 1e-12);
    }

    #[test]
    fn stieltjes_wigert_chain_matches_moments() {
        let sys = stieltjes_wigert_monic();
        let ms = moments_from_recurrence(&sys, 8, 1.0).unwrap();
        for k in 0..=8 {
            let want = stieltjes_wigert_log_moment(k).exp();
            assert!((ms.mu[k] - want).abs() < 1e-11 * want, "{k}: {} {want}", ms.mu[k]);
        }
        let on = sys.to_orthonormal(1.0);
        // a_{n-1}^2 = e^{2n}(1 - e^{-n/2})
        for n in 1..6 {
            let a = on.coeffs(n - 1).unwrap().a;
            let nf = n as f64;
            assert!((a * a / ((2.0 * nf).exp() * (1.0 - (-nf / 2.0).exp())) - 1.0).abs() < 1e-13);
        }
        assert_eq!(carleman_recurrence(&on, 300).unwrap().verdict, Verdict::Converges);
    }

    #[test]
    fn rho_examples() {
        let h = FamilySpec::Hermite;
        let on = h.recurrence().to_orthonormal(h.mu0());
        let r = rho(&on, c(0.3, 0.0), &[10, 100, 1000, 10000]).unwrap();
        assert_eq!(r.verdict, Verdict::Diverges);
        assert_eq!(r.rho, 0.0);
        let r0 = rho(&on, c(0.3, 0.0), &[0]).unwrap();
        assert!((r0.partial_sums[0] - on.p0().powi(2)).abs() < 1e-16);
        let sw = stieltjes_wigert_monic().to_orthonormal(1.0);
        let r = rho(&sw, c(1.0, 0.0), &[20, 40, 80, 160]).unwrap();
        assert_eq!(r.verdict, Verdict::Converges);
        assert!(r.rho > 0.0);
    }

    #[test]
    fn nevanlinna_examples() {
        let sw = stieltjes_wigert_monic().to_orthonormal(1.0);
        let at0 = nevanlinna_abcd(&sw, c(0.0, 0.0), 10).unwrap();
        assert_eq!((at0.a, at0.b, at0.c, at0.d), (c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)));
        let z = c(0.4, -1.2);
        assert_eq!(nevanlinna_abcd(&sw, z, 0).unwrap().d, z);
        let lt: Vec<f64> = [10, 20, 40, 80]
            .iter()
            .map(|&n| nevanlinna_abcd(&sw, c(1.0, 1.0), n).unwrap().last_terms[3])
            .collect();
        assert!(lt.windows(2).all(|w| w[1] < w[0]), "{lt:?}");
        let det = nevanlinna_abcd(&sw, c(1.0, 1.0), 80).unwrap().determinant;
        assert!((det - 1.0).norm() < 1e-10, "{det}");
    }

    #[test]
    fn true_interval_examples() {
        let leg = FamilySpec::Legendre.recurrence();
        let est = true_interval(&leg, 40, Execution::Parallel).unwrap();
        assert!(est.chains.all());
        assert!((est.limits.0 + 1.0).abs() < 2e-3 && (est.limits.1 - 1.0).abs() < 2e-3, "{:?}", est.limits);
        let her = true_interval(&FamilySpec::Hermite.recurrence(), 40, Execution::Sequential).unwrap();
        assert_eq!(her.limits, (f64::NEG_INFINITY, f64::INFINITY));
        let one = true_interval(&leg, 1, Execution::Sequential).unwrap();
        assert_eq!((one.xi1_sequence.len(), one.eta1_sequence.len()), (1, 1));
        assert!(one.chains.all());
    }

    #[test]
    fn support_examples() {
        for (a, b) in [(0.0, 0.0), (1.5, 0.5), (-0.5, 2.0)] {
            let m = FamilySpec::Jacobi { alpha: a, beta: b }.recurrence().to_monic();
            match support_bound_criteria(&m, 200).unwrap() {
                SupportClass::Limits { lower, upper, .. } => {
                    assert!((lower + 1.0).abs() < 1e-3 && (upper - 1.0).abs() < 1e-3)
                }
                other => panic!("{other:?}"),
            }
        }
        let h = FamilySpec::Hermite.recurrence().to_monic();
        assert_eq!(support_bound_criteria(&h, 200).unwrap(), SupportClass::Unbounded);
        let k = RecurrenceSystem::from_fn(Form::Monic, 1.0, |n| Coefficients::new(1.0, 5.0, if n == 0 { 0.0 } else { 1.0 }));
        assert_eq!(
            support_bound_criteria(&k, 50).unwrap(),
            SupportClass::Limits {
                b: 5.0,
                c: 1.0,
                lower: 3.0,
                upper: 7.0
            }
        );
    }

    #[test]
    fn stieltjes_wigert_examples() {
        assert!((stieltjes_wigert_moment(0.0, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((stieltjes_wigert_moment(0.5, 2).unwrap() / 2f64.exp() - 1.0).abs() < 1e-8);
        let (v, bound) = stieltjes_wigert_lattice(1, 40);
        assert!((v - 0.75f64.exp()).abs() <= (bound + 1e-15) * v);
        let rep = stieltjes_wigert_demo(&[-0.5, 0.0, 0.5], 4).unwrap();
        assert!(rep.max_deviation < 1e-9 && rep.max_pairwise_deviation < 2e-9);
        assert!(rep.discrete_max_deviation < 1e-14);
    }
}
