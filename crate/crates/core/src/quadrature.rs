//! Zeros of orthogonal polynomials and Gauss quadrature rules.
//!
//! Zeros are the eigenvalues of the symmetric Jacobi matrix, refined by one
//! double-double Newton step on `p_n`. Weights come from the Christoffel
//! function `lambda_k = 1 / K_{n-1}(x_k, x_k)`, a sum of positive terms, and are
//! cross-checked against the first eigenvector components.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{Measure, MomentSequence};
use crate::numeric::linalg::{solve, symmetric_tridiagonal_eigen};
use crate::numeric::{sum_compensated, DoubleDouble};
use crate::par::{self, Execution};
use crate::recurrence::{NormData, RecurrenceSystem};

/// Largest accepted gap `|lambda_christoffel - lambda_eigenvector| / mu_0`.
pub const WEIGHT_CROSSCHECK: f64 = 1e-8;

/// An `n`-point Gauss rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub exactness_degree: usize,
    pub mu0: f64,
    /// Label of the recurrence the rule was built from.
    pub source: String,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        sum_compensated(self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)))
    }

    /// `sum_k lambda_k x_k^j` in double-double.
    pub fn moment(&self, j: usize) -> f64 {
        let mut acc = DoubleDouble::ZERO;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += DoubleDouble::new(x).powi(j as u32) * w;
        }
        acc.to_f64()
    }
}

/// Zeros of `p_n` in increasing order.
pub fn zeros(sys: &RecurrenceSystem, n: usize) -> Result<Vec<f64>> {
    Ok(eigen(sys, n)?.0)
}

/// Polished eigenvalues and first eigenvector components of the Jacobi matrix.
fn eigen(sys: &RecurrenceSystem, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Ok((vec![], vec![]));
    }
    let (diag, off) = sys.jacobi_matrix(n)?;
    let e = symmetric_tridiagonal_eigen(&diag, &off)?;
    let mut x = e.values;
    polish(sys, n, &mut x)?;
    if is_even(sys, n)? {
        mirror_nodes(&mut x);
    }
    Ok((x, e.first_components))
}

fn is_even(sys: &RecurrenceSystem, n: usize) -> Result<bool> {
    for j in 0..n {
        if sys.coeffs(j)?.b != 0.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nodes of an even system: `x_{n-1-k} = -x_k`.
fn mirror_nodes(x: &mut [f64]) {
    let n = x.len();
    for k in 0..n / 2 {
        let s = 0.5 * (x[n - 1 - k] - x[k]);
        x[k] = -s;
        x[n - 1 - k] = s;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
}

/// Weights of an even system: `w_{n-1-k} = w_k`.
fn mirror_weights(w: &mut [f64]) {
    let n = w.len();
    for k in 0..n / 2 {
        let s = 0.5 * (w[k] + w[n - 1 - k]);
        w[k] = s;
        w[n - 1 - k] = s;
    }
}

/// One Newton step per zero, kept only when it stays well inside the gap to
/// the neighbouring zeros.
fn polish(sys: &RecurrenceSystem, n: usize, x: &mut [f64]) -> Result<()> {
    let orig = x.to_vec();
    for k in 0..n {
        let v = sys.eval_with_derivative(n, DoubleDouble::new(orig[k]))?;
        let (p, d) = v[n];
        if d.to_f64() == 0.0 || !d.is_finite() {
            continue;
        }
        let step = (p / d).to_f64();
        let gap = [k.checked_sub(1).map(|j| orig[k] - orig[j]), orig.get(k + 1).map(|y| y - orig[k])]
            .into_iter()
            .flatten()
            .fold(f64::INFINITY, f64::min);
        if step.is_finite() && step.abs() < 1e-6 * gap.min(1.0 + orig[k].abs()) {
            x[k] = orig[k] - step;
        }
    }
    Ok(())
}

/// Largest Newton correction `|p_n(x) / p_n'(x)| / (1 + |x|)` over the given zeros.
pub fn zero_residual(sys: &RecurrenceSystem, n: usize, zeros: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &z in zeros {
        let v = sys.eval_with_derivative(n, DoubleDouble::new(z))?;
        let (p, d) = v[n];
        worst = worst.max((p / d).to_f64().abs() / (1.0 + z.abs()));
    }
    Ok(worst)
}

/// `upper` (n+1 points) strictly interlaces `lower` (n points).
pub fn interlaces(lower: &[f64], upper: &[f64]) -> bool {
    upper.len() == lower.len() + 1 && lower.iter().enumerate().all(|(k, &x)| upper[k] < x && x < upper[k + 1])
}

/// Zeros of `p_1, ..., p_{n_max}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroTable {
    /// `zeros[m - 1]` holds the `m` zeros of `p_m`.
    pub zeros: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    /// Every consecutive pair `p_m, p_{m+1}` interlaces.
    pub interlacing: bool,
    /// `x_{m,i}` strictly decreases in `m` for every fixed `i`.
    pub lower_chains: bool,
    /// `x_{m, m-j+1}` strictly increases in `m` for every fixed `j`.
    pub upper_chains: bool,
}

impl ChainReport {
    pub fn all(&self) -> bool {
        self.interlacing && self.lower_chains && self.upper_chains
    }
}

impl ZeroTable {
    pub fn new(sys: &RecurrenceSystem, n_max: usize, exec: Execution) -> Result<Self> {
        let zeros = par::try_map_range(exec, 1..n_max + 1, |m| zeros(sys, m))?;
        Ok(Self { zeros })
    }

    pub fn n_max(&self) -> usize {
        self.zeros.len()
    }

    /// Smallest zero of each degree.
    pub fn smallest(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z[0]).collect()
    }

    /// Largest zero of each degree.
    pub fn largest(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z[z.len() - 1]).collect()
    }

    pub fn chains(&self) -> ChainReport {
        let interlacing = self.zeros.windows(2).all(|w| interlaces(&w[0], &w[1]));
        let mut lower_chains = true;
        let mut upper_chains = true;
        for w in self.zeros.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let m = a.len();
            for i in 0..m {
                lower_chains &= b[i] < a[i];
                upper_chains &= b[i + 1] > a[i];
            }
        }
        ChainReport {
            interlacing,
            lower_chains,
            upper_chains,
        }
    }
}

/// Gauss rule with `n` nodes for a system with norms `norms` (at least `n`
/// entries); `mu_0 = h_0 / p_0^2`.
pub fn gauss_rule(sys: &RecurrenceSystem, norms: &NormData, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Invalid("a Gauss rule needs at least one node".into()));
    }
    if norms.h.len() < n {
        return Err(Error::InsufficientMoments {
            needed: n,
            available: norms.h.len(),
        });
    }
    let p0 = sys.p0();
    let mu0 = norms.h[0] / (p0 * p0);
    let (nodes, first) = eigen(sys, n)?;
    let mut weights = christoffel_weights(sys, &norms.h[..n], &nodes)?;
    let gap = weights
        .iter()
        .zip(&first)
        .map(|(w, v)| (w - mu0 * v * v).abs() / mu0)
        .fold(0.0, f64::max);
    if !(gap <= WEIGHT_CROSSCHECK) {
        return Err(Error::WeightMismatch { gap });
    }
    if is_even(sys, n)? {
        mirror_weights(&mut weights);
    }
    if let Some(k) = weights.iter().position(|w| !(*w > 0.0)) {
        return Err(Error::NonPositiveNorm {
            index: k,
            value: weights[k],
        });
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        exactness_degree: 2 * n - 1,
        mu0,
        source: sys.label().to_string(),
    })
}

/// `lambda_k = 1 / sum_{j < n} p_j(x_k)^2 / h_j`.
pub fn christoffel_weights(sys: &RecurrenceSystem, h: &[f64], nodes: &[f64]) -> Result<Vec<f64>> {
    let n = h.len();
    nodes
        .iter()
        .map(|&x| {
            let p = sys.eval_all(n - 1, DoubleDouble::new(x))?;
            let mut s = DoubleDouble::ZERO;
            for j in 0..n {
                s += p[j] * p[j] / h[j];
            }
            Ok((DoubleDouble::ONE / s).to_f64())
        })
        .collect()
}

/// `lambda_k = int l_k dmu` with the Lagrange basis `l_k` on `nodes`, by
/// integrating against the measure.
pub fn lagrange_weights(nodes: &[f64], m: &Measure) -> Result<Vec<f64>> {
    (0..nodes.len())
        .map(|k| {
            let xk = nodes[k];
            m.integrate(|x| {
                nodes
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, &xj)| (x - xj) / (xk - xj))
                    .product()
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactnessReport {
    /// Largest `|Q(x^j) - mu_j| / (|mu_j| + mu_0)` for `j <= 2n - 1`.
    pub max_error: f64,
    /// Every `j <= 2n - 1` satisfies `|Q(x^j) - mu_j| <= rel |mu_j| + abs`.
    pub exact: bool,
    /// `mu_{2n} - Q(x^{2n})`.
    pub defect: f64,
    /// `int phat_n^2 dmu`, the exact value of the defect.
    pub expected_defect: f64,
    /// `defect >= expected_defect / 2`.
    pub sharp: bool,
}

/// Compare a rule against moments through degree `2n`. `monic_norm` is
/// `int phat_n^2 dmu` for the monic `phat_n`.
pub fn exactness(rule: &QuadratureRule, moments: &MomentSequence, monic_norm: f64, rel: f64, abs: f64) -> Result<ExactnessReport> {
    let n = rule.len();
    let needed = 2 * n + 1;
    if moments.mu.len() < needed {
        return Err(Error::InsufficientMoments {
            needed,
            available: moments.mu.len(),
        });
    }
    let mut max_error = 0.0f64;
    let mut exact = true;
    for j in 0..2 * n {
        let err = (rule.moment(j) - moments.mu[j]).abs();
        exact &= err <= rel * moments.mu[j].abs() + abs;
        max_error = max_error.max(err / (moments.mu[j].abs() + rule.mu0));
    }
    let defect = moments.mu[2 * n] - rule.moment(2 * n);
    Ok(ExactnessReport {
        max_error,
        exact,
        defect,
        expected_defect: monic_norm,
        sharp: defect >= 0.5 * monic_norm,
    })
}

/// `int phat_n^2 dmu = h_n / k_n^2`.
pub fn monic_norm(norms: &NormData, n: usize) -> f64 {
    norms.h[n] / (norms.k[n] * norms.k[n])
}

/// The zeros of `p_n` as a finite orthogonality set for `p_0, ..., p_{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteSystemReport {
    /// `sum_k lambda_k p_i(x_k) p_j(x_k)` for `i, j < n`.
    pub gram: Vec<Vec<f64>>,
    /// Largest `|G_ij - h_j delta_ij| / sqrt(h_i h_j)`.
    pub max_gram_error: f64,
    /// Solution of `sum_k lambda_k p_j(x_k) = delta_j0 h_0 / p_0`.
    pub recovered_weights: Vec<f64>,
    /// Largest relative gap between recovered and rule weights.
    pub weight_gap: f64,
}

pub fn finite_discrete_system(rule: &QuadratureRule, sys: &RecurrenceSystem, norms: &NormData) -> Result<DiscreteSystemReport> {
    let n = rule.len();
    if norms.h.len() < n {
        return Err(Error::InsufficientMoments {
            needed: n,
            available: norms.h.len(),
        });
    }
    let p: Vec<Vec<DoubleDouble>> = rule
        .nodes
        .iter()
        .map(|&x| sys.eval_all(n - 1, DoubleDouble::new(x)))
        .collect::<Result<_>>()?;
    let mut gram = vec![vec![0.0; n]; n];
    let mut max_gram_error = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = DoubleDouble::ZERO;
            for k in 0..n {
                acc += p[k][i] * p[k][j] * rule.weights[k];
            }
            let g = acc.to_f64();
            gram[i][j] = g;
            let target = if i == j { norms.h[j] } else { 0.0 };
            max_gram_error = max_gram_error.max((g - target).abs() / (norms.h[i] * norms.h[j]).sqrt());
        }
    }
    // rows scaled by sqrt(h_j) so that every equation has unit size
    let a: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|k| p[k][j].to_f64() / norms.h[j].sqrt()).collect())
        .collect();
    let mut b = vec![0.0; n];
    b[0] = norms.h[0] / sys.p0() / norms.h[0].sqrt();
    let recovered_weights = solve(a, b)?;
    let weight_gap = recovered_weights
        .iter()
        .zip(&rule.weights)
        .map(|(r, w)| (r - w).abs() / w)
        .fold(0.0, f64::max);
    Ok(DiscreteSystemReport {
        gram,
        max_gram_error,
        recovered_weights,
        weight_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::FamilySpec;
    use crate::discrete::DiscreteFamily;
    use crate::measures::named;

    fn legendre(n: usize) -> (RecurrenceSystem, NormData) {
        let sys = FamilySpec::Legendre.recurrence();
        let norms = sys.norms_for_mass(2.0, n).unwrap();
        (sys, norms)
    }

    #[test]
    fn zero_examples() {
        let r = 1.0 / 3f64.sqrt();
        let z = zeros(&FamilySpec::Legendre.recurrence(), 2).unwrap();
        assert!((z[0] + r).abs() < 2e-16 && (z[1] - r).abs() < 2e-16);
        let h = FamilySpec::Hermite.recurrence();
        assert_eq!(zeros(&h, 1).unwrap(), vec![0.0]);
        let z = zeros(&h, 2).unwrap();
        assert!((z[1] - 0.5f64.sqrt()).abs() < 1e-16 && z[0] == -z[1]);
        assert!(zero_residual(&h, 30, &zeros(&h, 30).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn interlacing_and_chains() {
        let sys = FamilySpec::Jacobi { alpha: 1.5, beta: -0.5 }.recurrence();
        let t = ZeroTable::new(&sys, 30, Execution::Parallel).unwrap();
        assert!(t.chains().all());
        assert_eq!(t, ZeroTable::new(&sys, 30, Execution::Sequential).unwrap());
        assert!(!interlaces(&[0.0, 1.0], &[-1.0, 1.5, 2.0]));
    }

    #[test]
    fn rule_examples() {
        let (sys, norms) = legendre(4);
        let rule = gauss_rule(&sys, &norms, 2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((rule.nodes[1] - r).abs() < 2e-16);
        assert!(rule.weights.iter().all(|w| (w - 1.0).abs() < 1e-15));
        assert_eq!(rule.exactness_degree, 3);
        assert!((rule.moment(4) - 2.0 / 9.0).abs() < 1e-15);

        let one = gauss_rule(&sys, &norms, 1).unwrap();
        assert_eq!(one.nodes, vec![0.0]);
        assert!((one.weights[0] - 2.0).abs() < 1e-15);

        let lag = FamilySpec::Laguerre { alpha: 0.5 };
        let lsys = lag.recurrence();
        let lrule = gauss_rule(&lsys, &lsys.norms_for_mass(lag.mu0(), 1).unwrap(), 1).unwrap();
        assert!((lrule.nodes[0] - 1.5).abs() < 1e-15 && (lrule.weights[0] - lag.mu0()).abs() < 1e-15);
    }

    #[test]
    fn exact_and_sharp() {
        let (sys, norms) = legendre(12);
        let ms = MomentSequence::new(
            (0..=24).map(|j| if j % 2 == 1 { 0.0 } else { 2.0 / (j as f64 + 1.0) }).collect(),
            "legendre",
        )
        .unwrap();
        for n in [2, 5, 10] {
            let rule = gauss_rule(&sys, &norms, n).unwrap();
            let rep = exactness(&rule, &ms, monic_norm(&norms, n), 1e-13, 1e-15).unwrap();
            assert!(rep.exact && rep.sharp, "{n}: {rep:?}");
            assert!((rep.defect - rep.expected_defect).abs() < 1e-13);
        }
        let rule = gauss_rule(&sys, &norms, 2).unwrap();
        let rep = exactness(&rule, &ms, monic_norm(&norms, 2), 1e-13, 1e-15).unwrap();
        assert!((rep.defect - (0.4 - 2.0 / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn lagrange_crosscheck() {
        let fam = FamilySpec::Jacobi { alpha: 0.5, beta: 2.0 };
        let sys = fam.recurrence();
        let rule = gauss_rule(&sys, &sys.norms_for_mass(fam.mu0(), 8).unwrap(), 6).unwrap();
        let lw = lagrange_weights(&rule.nodes, &fam.measure().unwrap()).unwrap();
        for (a, b) in lw.iter().zip(&rule.weights) {
            assert!((a - b).abs() < 1e-11 * rule.mu0, "{a} {b}");
        }
        let m = named::hermite();
        let hs = FamilySpec::Hermite.recurrence();
        let rule = gauss_rule(&hs, &hs.norms_for_mass(FamilySpec::Hermite.mu0(), 8).unwrap(), 5).unwrap();
        let lw = lagrange_weights(&rule.nodes, &m).unwrap();
        for (a, b) in lw.iter().zip(&rule.weights) {
            assert!((a - b).abs() < 1e-11, "{a} {b}");
        }
    }

    #[test]
    fn discrete_system() {
        let (sys, norms) = legendre(4);
        let rule = gauss_rule(&sys, &norms, 2).unwrap();
        let rep = finite_discrete_system(&rule, &sys, &norms).unwrap();
        assert!((rep.gram[0][0] - 2.0).abs() < 1e-15);
        assert!(rep.recovered_weights.iter().all(|w| (w - 1.0).abs() < 1e-14));

        let ch = DiscreteFamily::Charlier { a: 1.0 };
        let csys = ch.recurrence().unwrap();
        let cn = csys.norms_for_mass(1.0, 4).unwrap();
        let rule = gauss_rule(&csys, &cn, 3).unwrap();
        let rep = finite_discrete_system(&rule, &csys, &cn).unwrap();
        for (j, h) in [1.0, 1.0, 2.0].iter().enumerate() {
            assert!((rep.gram[j][j] - h).abs() < 1e-13, "{:?}", rep.gram);
        }
        assert!(rep.max_gram_error < 1e-13 && rep.weight_gap < 1e-12);
    }

    #[test]
    fn serde_round_trip() {
        let (sys, norms) = legendre(4);
        let rule = gauss_rule(&sys, &norms, 3).unwrap();
        let s = serde_json::to_string(&rule).unwrap();
        assert_eq!(serde_json::from_str::<QuadratureRule>(&s).unwrap(), rule);
    }
}
