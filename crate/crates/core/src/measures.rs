//! Orthogonality measures, inner products, moments and the Stieltjes procedure.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::integrate::{integrate_with_ends, Range, Tolerance};
use crate::numeric::linalg::determinant;
use crate::numeric::poly::Poly;
use crate::numeric::{CompensatedSum, DoubleDouble, Precision};
use crate::par::{self, Execution};
use crate::recurrence::{Coefficients, Form, NormData, RecurrenceSystem};

/// Density as a function of `(x, x - lower, upper - x)`.
pub type WeightFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;
pub type IndexFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum MeasureKind {
    /// Density `weight` on `(lower, upper)`; either end may be infinite.
    Continuous { weight: WeightFn, lower: f64, upper: f64 },
    DiscreteFinite { nodes: Vec<f64>, weights: Vec<f64> },
    /// Masses `weight(k)` at `node(k)`, `k = 0, 1, ...`; `tail_bound(k)` bounds
    /// the total mass with index above `k`.
    DiscreteInfinite {
        node: IndexFn,
        weight: IndexFn,
        tail_bound: IndexFn,
    },
}

/// A positive measure `normalizer * mu`.
#[derive(Clone)]
pub struct Measure {
    kind: MeasureKind,
    normalizer: f64,
    symmetric: bool,
    tolerance: Tolerance,
    max_terms: usize,
    label: Arc<str>,
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            MeasureKind::Continuous { lower, upper, .. } => format!("continuous on ({lower}, {upper})"),
            MeasureKind::DiscreteFinite { nodes, .. } => format!("discrete, {} nodes", nodes.len()),
            MeasureKind::DiscreteInfinite { .. } => "discrete, infinite".to_string(),
        };
        f.debug_struct("Measure")
            .field("label", &self.label)
            .field("kind", &kind)
            .field("normalizer", &self.normalizer)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentSequence {
    pub mu: Vec<f64>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HankelReport {
    /// `Delta_0, ..., Delta_n`.
    pub minors: Vec<f64>,
    pub all_positive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramReport {
    pub gram: Vec<Vec<f64>>,
    /// Largest `|<p_i, p_j>| / sqrt(h_i h_j)` over `i != j`.
    pub max_off_diagonal: f64,
}

impl Measure {
    fn build(kind: MeasureKind) -> Self {
        Self {
            kind,
            normalizer: 1.0,
            symmetric: false,
            tolerance: Tolerance::default(),
            max_terms: 100_000,
            label: Arc::from("measure"),
        }
    }

    pub fn continuous<W>(weight: W, lower: f64, upper: f64) -> Result<Self>
    where
        W: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::continuous_with_ends(move |x, _, _| weight(x), lower, upper)
    }

    /// Density given as `weight(x, x - lower, upper - x)`. The distances keep
    /// full relative accuracy next to the ends, which an algebraic endpoint
    /// factor needs; an infinite end gives an infinite distance.
    pub fn continuous_with_ends<W>(weight: W, lower: f64, upper: f64) -> Result<Self>
    where
        W: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    {
        if !(lower < upper) {
            return Err(Error::Invalid(format!("empty support ({lower}, {upper})")));
        }
        Ok(Self::build(MeasureKind::Continuous {
            weight: Arc::new(weight),
            lower,
            upper,
        }))
    }

    pub fn discrete_finite(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(Error::Invalid("nodes and weights must be nonempty and of equal length".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0)) {
            return Err(Error::InvalidParameter {
                name: "weight",
                value: *w,
                reason: "discrete weights must be positive",
            });
        }
        let mut sorted = nodes.clone();
        sorted.sort_by(f64::total_cmp);
        let symmetric = sorted
            .iter()
            .zip(sorted.iter().rev())
            .all(|(a, b)| a == &-b)
            && {
                let mut pairs: Vec<(f64, f64)> = nodes.iter().copied().zip(weights.iter().copied()).collect();
                pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
                pairs.iter().zip(pairs.iter().rev()).all(|(a, b)| a.1 == b.1)
            };
        let mut m = Self::build(MeasureKind::DiscreteFinite { nodes, weights });
        m.symmetric = symmetric;
        Ok(m)
    }

    pub fn discrete_infinite<N, W, T>(node: N, weight: W, tail_bound: T) -> Self
    where
        N: Fn(usize) -> f64 + Send + Sync + 'static,
        W: Fn(usize) -> f64 + Send + Sync + 'static,
        T: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        Self::build(MeasureKind::DiscreteInfinite {
            node: Arc::new(node),
            weight: Arc::new(weight),
            tail_bound: Arc::new(tail_bound),
        })
    }

    pub fn with_normalizer(mut self, normalizer: f64) -> Result<Self> {
        if !(normalizer > 0.0) || !normalizer.is_finite() {
            return Err(Error::InvalidParameter {
                name: "normalizer",
                value: normalizer,
                reason: "must be positive and finite",
            });
        }
        self.normalizer = normalizer;
        Ok(self)
    }

    /// Declare the measure even (`mu(-A) = mu(A)`): odd moments and all `b_n` are then exactly zero.
    pub fn with_symmetry(mut self, symmetric: bool) -> Self {
        self.symmetric = symmetric;
        self
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Arc::from(label);
        self
    }

    pub fn kind(&self) -> &MeasureKind {
        &self.kind
    }

    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Convex hull of the support, possibly unbounded.
    pub fn support_hull(&self) -> (f64, f64) {
        match &self.kind {
            MeasureKind::Continuous { lower, upper, .. } => (*lower, *upper),
            MeasureKind::DiscreteFinite { nodes, .. } => nodes
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(*x), hi.max(*x))),
            MeasureKind::DiscreteInfinite { node, .. } => {
                let (x0, x1) = (node(0), node(1));
                if x1 >= x0 {
                    (x0, f64::INFINITY)
                } else {
                    (f64::NEG_INFINITY, x0)
                }
            }
        }
    }

    /// Number of support points, `None` when infinite.
    pub fn support_size(&self) -> Option<usize> {
        match &self.kind {
            MeasureKind::DiscreteFinite { nodes, .. } => Some(nodes.len()),
            _ => None,
        }
    }

    /// `int f dmu` with the measure's default tolerance.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        self.integrate_with(f, self.tolerance)
    }

    /// `int f dmu`; `tol` applies to the normalized value.
    pub fn integrate_with<F: Fn(f64) -> f64>(&self, f: F, tol: Tolerance) -> Result<f64> {
        let scaled = Tolerance {
            abs: tol.abs / self.normalizer,
            ..tol
        };
        let raw = match &self.kind {
            MeasureKind::Continuous { weight, lower, upper } => {
                integrate_with_ends(
                    |x, lo, hi| {
                        let w = weight(x, lo, hi);
                        if w == 0.0 {
                            0.0
                        } else {
                            f(x) * w
                        }
                    },
                    Range::from_bounds(*lower, *upper),
                    scaled,
                )?
                .value
            }
            MeasureKind::DiscreteFinite { nodes, weights } => nodes
                .iter()
                .zip(weights)
                .map(|(x, w)| w * f(*x))
                .collect::<CompensatedSum>()
                .value(),
            MeasureKind::DiscreteInfinite {
                node,
                weight,
                tail_bound,
            } => self.sum_infinite(&f, node, weight, tail_bound, scaled)?,
        };
        Ok(self.normalizer * raw)
    }

    /// Sum over an infinite lattice. The remainder after index `k` is bounded
    /// by `tail_bound(k)` times the largest `|f|` sampled on `[k+1, 2k+2]`.
    fn sum_infinite<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        node: &IndexFn,
        weight: &IndexFn,
        tail_bound: &IndexFn,
        tol: Tolerance,
    ) -> Result<f64> {
        let mut acc = CompensatedSum::new();
        let mut last = 0.0;
        for k in 0..self.max_terms {
            let term = weight(k) * f(node(k));
            if !term.is_finite() {
                return Err(Error::NonFiniteIntegrand { x: node(k) });
            }
            acc.add(term);
            last = term;
            if k % 4 != 3 {
                continue;
            }
            let tb = tail_bound(k);
            if !(tb.is_finite()) {
                continue;
            }
            let growth = [k + 1, (3 * k) / 2 + 2, 2 * k + 2]
                .iter()
                .map(|&j| f(node(j)).abs())
                .fold(1.0f64, f64::max);
            let target = tol.abs.max(tol.rel * acc.value().abs());
            if tb * growth <= target {
                return Ok(acc.value());
            }
        }
        Err(Error::NonConvergent {
            terms: self.max_terms,
            last_term: last,
        })
    }

    pub fn inner_product(&self, f: &Poly, g: &Poly) -> Result<f64> {
        let (fm, gm) = (f.to_monomial(), g.to_monomial());
        self.integrate(|x| fm.eval(x) * gm.eval(x))
    }

    /// `mu_k = int x^k dmu` for `k = 0..=n_max`.
    pub fn moments(&self, n_max: usize) -> Result<MomentSequence> {
        self.moments_with(n_max, Execution::default())
    }

    pub fn moments_with(&self, n_max: usize, exec: Execution) -> Result<MomentSequence> {
        let mu = par::try_map_range(exec, 0..n_max + 1, |k| {
            if self.symmetric && k % 2 == 1 {
                return Ok(0.0);
            }
            // relative accuracy matters for the fast-growing high moments
            let tol = Tolerance {
                abs: self.tolerance.abs.min(1e-300),
                ..self.tolerance
            };
            self.integrate_with(|x| x.powi(k as i32), tol)
        })?;
        Ok(MomentSequence {
            mu,
            source: self.label.to_string(),
        })
    }

    /// Gram matrix `<p_i, p_j>` of the system for `i, j <= n`.
    pub fn gram(&self, sys: &RecurrenceSystem, n: usize) -> Result<GramReport> {
        self.gram_with(n, |i, x| sys.eval(i, x).unwrap_or(f64::NAN))
    }

    /// Gram matrix of `p(i, x)`, `i <= n`, for polynomials given by any evaluator.
    pub fn gram_with<P>(&self, n: usize, p: P) -> Result<GramReport>
    where
        P: Fn(usize, f64) -> f64 + Sync,
    {
        let mut gram = vec![vec![0.0; n + 1]; n + 1];
        let rows = par::try_map_range(Execution::default(), 0..n + 1, |i| {
            (i..=n)
                .map(|j| {
                    let tol = Tolerance {
                        abs: 1e-300,
                        ..self.tolerance
                    };
                    self.integrate_with(|x| p(i, x) * p(j, x), tol)
                })
                .collect::<Result<Vec<f64>>>()
        })?;
        for (i, row) in rows.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                gram[i][i + off] = v;
                gram[i + off][i] = v;
            }
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

    /// Monic recurrence coefficients by the Stieltjes procedure, with norms `h_n`
    /// for `n = 0..=n_max`. Double-double evaluation is used automatically
    /// beyond degree 30.
    pub fn recurrence(&self, n_max: usize) -> Result<(RecurrenceSystem, NormData)> {
        let precision = if n_max > 30 {
            Precision::DoubleDouble
        } else {
            Precision::Double
        };
        self.recurrence_with(n_max, precision)
    }

    pub fn recurrence_with(&self, n_max: usize, precision: Precision) -> Result<(RecurrenceSystem, NormData)> {
        if let Some(size) = self.support_size() {
            if n_max >= size {
                return Err(Error::DegreeOutOfRange { n: n_max, max: size - 1 });
            }
        }
        let mut rows: Vec<Coefficients> = Vec::with_capacity(n_max + 1);
        let mut h: Vec<f64> = Vec::with_capacity(n_max + 1);
        let hull = self.support_hull();
        let span = hull.0.abs().max(hull.1.abs());
        let span = if span.is_finite() { span.max(1.0) } else { 1.0 };
        for n in 0..=n_max {
            let partial = RecurrenceSystem::from_coefficients(Form::Monic, 1.0, rows.clone());
            let pn = |x: f64| -> f64 {
                match precision {
                    Precision::Double => partial.eval(n, x).unwrap_or(f64::NAN),
                    Precision::DoubleDouble => partial
                        .eval(n, DoubleDouble::new(x))
                        .map(|v| v.to_f64())
                        .unwrap_or(f64::NAN),
                }
            };
            let rel_tol = Tolerance {
                abs: 1e-300,
                ..self.tolerance
            };
            let hn = self.integrate_with(
                |x| {
                    let p = pn(x);
                    p * p
                },
                rel_tol,
            )?;
            if !(hn > 0.0) {
                return Err(Error::NonPositiveNorm { index: n, value: hn });
            }
            let b = if self.symmetric {
                0.0
            } else {
                // <x p_n, p_n> may vanish; judge it against h_n
                let tol = Tolerance {
                    abs: self.tolerance.rel * hn * span,
                    ..self.tolerance
                };
                self.integrate_with(
                    |x| {
                        let p = pn(x);
                        x * p * p
                    },
                    tol,
                )? / hn
            };
            let c = if n == 0 { 0.0 } else { hn / h[n - 1] };
            h.push(hn);
            rows.push(Coefficients::new(1.0, b, c));
        }
        let sys = RecurrenceSystem::from_coefficients(Form::Monic, 1.0, rows).with_label(&self.label);
        let k = vec![1.0; h.len()];
        Ok((sys, NormData { h, k }))
    }
}

impl MomentSequence {
    pub fn new(mu: Vec<f64>, source: &str) -> Result<Self> {
        match mu.first() {
            Some(m0) if *m0 > 0.0 => Ok(Self {
                mu,
                source: source.to_string(),
            }),
            Some(m0) => Err(Error::InvalidParameter {
                name: "mu_0",
                value: *m0,
                reason: "must be positive",
            }),
            None => Err(Error::InsufficientMoments { needed: 1, available: 0 }),
        }
    }
}

/// Hankel determinants `Delta_n = det(mu_{i+j})_{i,j<=n}` for `n = 0..=n_max`.
pub fn hankel_minors(ms: &MomentSequence, n_max: usize) -> Result<HankelReport> {
    let needed = 2 * n_max + 1;
    if ms.mu.len() < needed {
        return Err(Error::InsufficientMoments {
            needed,
            available: ms.mu.len(),
        });
    }
    let minors: Vec<f64> = (0..=n_max)
        .map(|n| {
            let m = (0..=n).map(|i| (0..=n).map(|j| ms.mu[i + j]).collect()).collect();
            determinant(m)
        })
        .collect();
    Ok(HankelReport {
        all_positive: minors.iter().all(|d| *d > 0.0),
        minors,
    })
}

/// Moments of the measure of a monic system, fixed by `mu_0`.
///
/// Expands `x^k` in the monic basis via the recurrence and reads off the
/// constant coefficient; no measure is needed.
pub fn moments_from_recurrence(sys: &RecurrenceSystem, n_max: usize, mu0: f64) -> Result<MomentSequence> {
    if sys.form() != Form::Monic {
        return Err(Error::Invalid("moments_from_recurrence needs a monic system".into()));
    }
    // entries j > n_max - k can no longer reach the constant term, so only
    // rows 0..=(n_max + 1) / 2 are read
    let rows: Vec<Coefficients> = (0..=n_max.div_ceil(2)).map(|n| sys.coeffs(n)).collect::<Result<_>>()?;
    let mut alpha = vec![0.0; n_max + 2];
    alpha[0] = 1.0;
    let mut mu = Vec::with_capacity(n_max + 1);
    mu.push(mu0);
    for k in 1..=n_max {
        let mut next = vec![0.0; n_max + 2];
        let top = k.min(n_max - k);
        for j in 0..=top {
            let mut v = rows[j].b * alpha[j];
            if j > 0 {
                v += alpha[j - 1];
            }
            if j < k && j + 1 < rows.len() {
                v += rows[j + 1].c * alpha[j + 1];
            }
            next[j] = v;
        }
        alpha = next;
        mu.push(mu0 * alpha[0]);
    }
    Ok(MomentSequence {
        mu,
        source: format!("recurrence {}", sys.label()),
    })
}

/// Named continuous measures with the density written out explicitly.
pub mod named {
    use super::*;
    use std::f64::consts::PI;

    /// `(1-x)^alpha (1+x)^beta` on `(-1, 1)`.
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Measure> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha/beta",
                value: alpha.min(beta),
                reason: "Jacobi weight needs alpha, beta > -1",
            });
        }
        Ok(Measure::continuous_with_ends(
            move |_, lo, hi| hi.powf(alpha) * lo.powf(beta),
            -1.0,
            1.0,
        )?
        .with_symmetry(alpha == beta)
        .with_label("jacobi"))
    }

    pub fn legendre() -> Measure {
        Measure::continuous(|_| 1.0, -1.0, 1.0)
            .expect("valid support")
            .with_symmetry(true)
            .with_label("legendre")
    }

    /// `(1 - x^2)^{-1/2}`, total mass `pi`.
    pub fn chebyshev_t() -> Measure {
        Measure::continuous_with_ends(|_, lo, hi| 1.0 / (lo * hi).sqrt(), -1.0, 1.0)
            .expect("valid support")
            .with_symmetry(true)
            .with_label("chebyshev_t")
    }

    /// `(1 - x^2)^{1/2}`, total mass `pi/2`.
    pub fn chebyshev_u() -> Measure {
        Measure::continuous_with_ends(|_, lo, hi| (lo * hi).sqrt(), -1.0, 1.0)
            .expect("valid support")
            .with_symmetry(true)
            .with_label("chebyshev_u")
    }

    /// `x^alpha e^{-x}` on `(0, inf)`.
    pub fn laguerre(alpha: f64) -> Result<Measure> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "Laguerre weight needs alpha > -1",
            });
        }
        Ok(Measure::continuous(
            move |x| if x <= 0.0 { 0.0 } else { x.powf(alpha) * (-x).exp() },
            0.0,
            f64::INFINITY,
        )?
        .with_label("laguerre"))
    }

    /// `e^{-x^2}` on the real line.
    pub fn hermite() -> Measure {
        Measure::continuous(|x| (-x * x).exp(), f64::NEG_INFINITY, f64::INFINITY)
            .expect("valid support")
            .with_symmetry(true)
            .with_label("hermite")
    }

    /// Hermite weight normalized to unit mass.
    pub fn hermite_normalized() -> Measure {
        hermite().with_normalizer(1.0 / PI.sqrt()).expect("positive")
    }
}
