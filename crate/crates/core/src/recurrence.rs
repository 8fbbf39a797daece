//! Orthogonal polynomial systems defined by a three-term recurrence
//!
//! ```text
//! x p_n(x) = a_n p_{n+1}(x) + b_n p_n(x) + c_n p_{n-1}(x),   p_{-1} = 0,  p_0 = const.
//! ```
//!
//! Coefficients are supplied as a function of `n` (closed forms for the named
//! families) or as a finite table, optionally with a cached prefix. Evaluation
//! is generic over [`Scalar`], so the same code path serves real, complex and
//! double-double arguments.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{DoubleDouble, Precision, Scalar};

/// One row `(a_n, b_n, c_n)` of the recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Coefficients {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    General,
    /// `a_n = 1` for all `n`.
    Monic,
    /// `c_{n+1} = a_n` for all `n`.
    Orthonormal,
}

type CoeffFn = Arc<dyn Fn(usize) -> Coefficients + Send + Sync>;

/// A polynomial system given by its recurrence coefficients.
#[derive(Clone)]
pub struct RecurrenceSystem {
    coeff_fn: CoeffFn,
    cache: Option<Arc<[Coefficients]>>,
    form: Form,
    p0: f64,
    /// Number of defined coefficient indices, when finite.
    len: Option<usize>,
    label: Arc<str>,
}

impl fmt::Debug for RecurrenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RecurrenceSystem")
            .field("label", &self.label)
            .field("form", &self.form)
            .field("p0", &self.p0)
            .field("len", &self.len)
            .finish()
    }
}

/// Quadratic norms `h_n = <p_n, p_n>` and leading coefficients `k_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormData {
    pub h: Vec<f64>,
    pub k: Vec<f64>,
}

impl NormData {
    pub fn len(&self) -> usize {
        self.h.len().min(self.k.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Check `h_n > 0`, `h_{n+1}/h_n = c_{n+1}/a_n`, `k_{n+1} = k_n/a_n` and
    /// `k_0 = p_0` against `sys`, to relative accuracy `rel`.
    pub fn check_against(&self, sys: &RecurrenceSystem, rel: f64) -> Result<()> {
        for (n, &h) in self.h.iter().enumerate() {
            if !(h > 0.0) {
                return Err(Error::NonPositiveNorm { index: n, value: h });
            }
        }
        if let Some(&k0) = self.k.first() {
            if !close(k0, sys.p0(), rel) {
                return Err(Error::InconsistentNorms {
                    index: 0,
                    detail: format!("k_0 = {k0} but p_0 = {}", sys.p0()),
                });
            }
        }
        for n in 0..self.len().saturating_sub(1) {
            let co = sys.coeffs(n)?;
            let cn1 = sys.coeffs(n + 1)?.c;
            let ratio = self.h[n + 1] / self.h[n];
            if !close(ratio, cn1 / co.a, rel) {
                return Err(Error::InconsistentNorms {
                    index: n + 1,
                    detail: format!("h ratio {ratio} vs c/a {}", cn1 / co.a),
                });
            }
            if !close(self.k[n + 1], self.k[n] / co.a, rel) {
                return Err(Error::InconsistentNorms {
                    index: n + 1,
                    detail: format!("k_(n+1) = {} vs k_n/a_n = {}", self.k[n + 1], self.k[n] / co.a),
                });
            }
        }
        Ok(())
    }
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Target normalization for [`RecurrenceSystem::convert_form`].
#[derive(Clone, Debug, PartialEq)]
pub enum Normalization {
    Monic,
    Orthonormal,
    /// General form with the given leading coefficients `k_0, k_1, ...`.
    LeadingCoefficients(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FavardEntry {
    pub index: usize,
    /// `a_n c_{n+1}`
    pub product: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FavardReport {
    pub entries: Vec<FavardEntry>,
    pub all_pass: bool,
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    /// All `b_n` vanish through the tested degree.
    pub applicable: bool,
    pub max_deviation: f64,
    pub max_relative_deviation: f64,
}

/// Serializable coefficient table (`schema: 1`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceTable {
    pub schema: u32,
    pub form: Form,
    pub p0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl RecurrenceSystem {
    pub fn from_fn<F>(form: Form, p0: f64, f: F) -> Self
    where
        F: Fn(usize) -> Coefficients + Send + Sync + 'static,
    {
        Self {
            coeff_fn: Arc::new(f),
            cache: None,
            form,
            p0,
            len: None,
            label: Arc::from("recurrence"),
        }
    }

    /// System with finitely many coefficient rows; indices past the end are undefined.
    pub fn from_coefficients(form: Form, p0: f64, rows: Vec<Coefficients>) -> Self {
        let len = rows.len();
        let rows: Arc<[Coefficients]> = rows.into();
        let table = rows.clone();
        Self {
            coeff_fn: Arc::new(move |n| table[n]),
            cache: Some(rows),
            form,
            p0,
            len: Some(len),
            label: Arc::from("table"),
        }
    }

    pub fn from_table(table: &RecurrenceTable) -> Result<Self> {
        if table.schema != 1 {
            return Err(Error::Invalid(format!("unsupported recurrence schema {}", table.schema)));
        }
        if table.a.len() != table.b.len() || table.b.len() != table.c.len() {
            return Err(Error::Invalid("recurrence arrays a, b, c must have equal length".into()));
        }
        let rows = (0..table.a.len())
            .map(|i| Coefficients::new(table.a[i], table.b[i], table.c[i]))
            .collect();
        let sys = Self::from_coefficients(table.form, table.p0, rows);
        Ok(match &table.label {
            Some(l) => sys.with_label(l),
            None => sys,
        })
    }

    pub fn to_table(&self, len: usize) -> Result<RecurrenceTable> {
        let rows = (0..len).map(|n| self.coeffs(n)).collect::<Result<Vec<_>>>()?;
        Ok(RecurrenceTable {
            schema: 1,
            form: self.form,
            p0: self.p0,
            a: rows.iter().map(|r| r.a).collect(),
            b: rows.iter().map(|r| r.b).collect(),
            c: rows.iter().map(|r| r.c).collect(),
            label: Some(self.label.to_string()),
        })
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Arc::from(label);
        self
    }

    /// Restrict the system to its first `len` coefficient indices.
    pub fn with_len(mut self, len: usize) -> Self {
        self.len = Some(self.len.map_or(len, |l| l.min(len)));
        self
    }

    /// Precompute and keep the first `n` coefficient rows.
    pub fn with_cached_prefix(mut self, n: usize) -> Self {
        let n = self.len.map_or(n, |l| l.min(n));
        let rows: Vec<Coefficients> = (0..n).map(|i| (self.coeff_fn)(i)).collect();
        self.cache = Some(rows.into());
        self
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of defined coefficient indices, `None` when unbounded.
    pub fn len(&self) -> Option<usize> {
        self.len
    }

    pub fn coeffs(&self, n: usize) -> Result<Coefficients> {
        if let Some(len) = self.len {
            if n >= len {
                return Err(Error::UndefinedCoefficient { index: n, available: len });
            }
        }
        if let Some(cache) = &self.cache {
            if n < cache.len() {
                return Ok(cache[n]);
            }
        }
        Ok((self.coeff_fn)(n))
    }

    fn step_coeffs(&self, k: usize) -> Result<Coefficients> {
        let co = self.coeffs(k)?;
        if co.a == 0.0 {
            return Err(Error::ZeroLeadingCoefficient { index: k });
        }
        Ok(co)
    }

    /// `p_0(x), ..., p_n(x)` by forward recurrence.
    pub fn eval_all<T: Scalar>(&self, n: usize, x: T) -> Result<Vec<T>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(T::from_f64(self.p0));
        let mut prev = T::from_f64(0.0);
        for k in 0..n {
            let co = self.step_coeffs(k)?;
            let cur = out[k];
            let mut next = (x - T::from_f64(co.b)) * cur;
            if k > 0 {
                next = next - T::from_f64(co.c) * prev;
            }
            prev = cur;
            out.push(next / T::from_f64(co.a));
        }
        Ok(out)
    }

    /// `p_n(x)` by forward recurrence.
    pub fn eval<T: Scalar>(&self, n: usize, x: T) -> Result<T> {
        let mut prev = T::from_f64(0.0);
        let mut cur = T::from_f64(self.p0);
        for k in 0..n {
            let co = self.step_coeffs(k)?;
            let mut next = (x - T::from_f64(co.b)) * cur;
            if k > 0 {
                next = next - T::from_f64(co.c) * prev;
            }
            prev = cur;
            cur = next / T::from_f64(co.a);
        }
        Ok(cur)
    }

    /// Real evaluation in the requested working precision.
    pub fn eval_real(&self, n: usize, x: f64, precision: Precision) -> Result<f64> {
        match precision {
            Precision::Double => self.eval(n, x),
            Precision::DoubleDouble => Ok(self.eval(n, DoubleDouble::new(x))?.to_f64()),
        }
    }

    /// `(p_k(x), p_k'(x))` for `k = 0..=n`, with derivatives from the
    /// differentiated recurrence.
    pub fn eval_with_derivative<T: Scalar>(&self, n: usize, x: T) -> Result<Vec<(T, T)>> {
        let zero = T::from_f64(0.0);
        let mut out = Vec::with_capacity(n + 1);
        out.push((T::from_f64(self.p0), zero));
        let (mut p_prev, mut d_prev) = (zero, zero);
        for k in 0..n {
            let co = self.step_coeffs(k)?;
            let (p, d) = out[k];
            let xb = x - T::from_f64(co.b);
            let mut pn = xb * p;
            let mut dn = xb * d + p;
            if k > 0 {
                pn = pn - T::from_f64(co.c) * p_prev;
                dn = dn - T::from_f64(co.c) * d_prev;
            }
            p_prev = p;
            d_prev = d;
            let a = T::from_f64(co.a);
            out.push((pn / a, dn / a));
        }
        Ok(out)
    }

    /// Divided differences `D_k = (p_k(x) - p_k(y)) / (x - y)` for `k = 0..=n`,
    /// computed by their own recurrence so that no cancellation occurs as
    /// `y -> x`; at `x = y` they are the derivatives `p_k'(x)`.
    pub fn divided_differences(&self, n: usize, x: f64, y: f64) -> Result<Vec<f64>> {
        let py = self.eval_all(n, y)?;
        let mut out = Vec::with_capacity(n + 1);
        out.push(0.0);
        let mut d_prev = 0.0;
        for k in 0..n {
            let co = self.step_coeffs(k)?;
            let mut d = (x - co.b) * out[k] + py[k];
            if k > 0 {
                d -= co.c * d_prev;
            }
            d_prev = out[k];
            out.push(d / co.a);
        }
        Ok(out)
    }

    /// Positivity of `a_n c_{n+1}` for `n = 0..upto`.
    pub fn validate_favard(&self, upto: usize) -> FavardReport {
        let mut entries = Vec::with_capacity(upto);
        for n in 0..upto {
            let product = match (self.coeffs(n), self.coeffs(n + 1)) {
                (Ok(c0), Ok(c1)) => c0.a * c1.c,
                _ => f64::NAN,
            };
            entries.push(FavardEntry {
                index: n,
                product,
                pass: product > 0.0,
            });
        }
        let first_failure = entries.iter().find(|e| !e.pass).map(|e| e.index);
        FavardReport {
            all_pass: first_failure.is_none(),
            first_failure,
            entries,
        }
    }

    /// Build `h_n`, `k_n` for `n = 0..=upto` from `h_0`, `k_0` via
    /// `h_{n+1} = h_n c_{n+1} / a_n` and `k_{n+1} = k_n / a_n`.
    pub fn norms_from_recurrence(&self, h0: f64, k0: f64, upto: usize) -> Result<NormData> {
        if !(h0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "h0",
                value: h0,
                reason: "must be positive",
            });
        }
        if k0 == 0.0 || !k0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "k0",
                value: k0,
                reason: "must be finite and nonzero",
            });
        }
        let mut h = Vec::with_capacity(upto + 1);
        let mut k = Vec::with_capacity(upto + 1);
        h.push(h0);
        k.push(k0);
        for n in 0..upto {
            let co = self.step_coeffs(n)?;
            let c_next = self.coeffs(n + 1)?.c;
            let h_next = h[n] * c_next / co.a;
            if !(h_next > 0.0) {
                return Err(Error::FavardViolation {
                    index: n,
                    product: co.a * c_next,
                });
            }
            h.push(h_next);
            k.push(k[n] / co.a);
        }
        Ok(NormData { h, k })
    }

    /// Norms with `k_0 = p_0` and `h_0 = p_0^2 mu_0`.
    pub fn norms_for_mass(&self, mu0: f64, upto: usize) -> Result<NormData> {
        self.norms_from_recurrence(self.p0 * self.p0 * mu0, self.p0, upto)
    }

    /// Monic companion `p_n / k_n`: coefficients `(1, b_n, a_{n-1} c_n)`.
    pub fn to_monic(&self) -> RecurrenceSystem {
        if self.form == Form::Monic && self.p0 == 1.0 {
            return self.clone();
        }
        let src = self.clone();
        let mut out = RecurrenceSystem::from_fn(Form::Monic, 1.0, move |n| {
            let co = (src.coeff_fn)(n);
            let c = if n == 0 { 0.0 } else { (src.coeff_fn)(n - 1).a * co.c };
            Coefficients::new(1.0, co.b, c)
        })
        .with_label(&format!("{} (monic)", self.label));
        out.len = self.len;
        out
    }

    /// Orthonormal companion with positive leading coefficients:
    /// `a_n -> sqrt(a_n c_{n+1})`, `c_n -> sqrt(a_{n-1} c_n)`.
    pub fn to_orthonormal(&self, h0: f64) -> RecurrenceSystem {
        let src = self.clone();
        let p0 = self.p0.abs() / h0.sqrt();
        let mut out = RecurrenceSystem::from_fn(Form::Orthonormal, p0, move |n| {
            let co = (src.coeff_fn)(n);
            let a = (co.a * (src.coeff_fn)(n + 1).c).sqrt();
            let c = if n == 0 {
                0.0
            } else {
                ((src.coeff_fn)(n - 1).a * co.c).sqrt()
            };
            Coefficients::new(a, co.b, c)
        })
        .with_label(&format!("{} (orthonormal)", self.label));
        // a_n needs c_{n+1}
        out.len = self.len.map(|l| l.saturating_sub(1));
        out
    }

    /// Renormalize the system. `norms` must describe `self`.
    pub fn convert_form(&self, norms: &NormData, target: &Normalization) -> Result<(RecurrenceSystem, NormData)> {
        norms.check_against(self, 1e-10)?;
        match target {
            Normalization::Monic => {
                let h = norms.h.iter().zip(&norms.k).map(|(h, k)| h / (k * k)).collect();
                let k = vec![1.0; norms.len()];
                Ok((self.to_monic(), NormData { h, k }))
            }
            Normalization::Orthonormal => {
                let k = norms
                    .h
                    .iter()
                    .zip(&norms.k)
                    .map(|(h, k)| k.abs() / h.sqrt())
                    .collect();
                let h = vec![1.0; norms.len()];
                Ok((self.to_orthonormal(norms.h[0]), NormData { h, k }))
            }
            Normalization::LeadingCoefficients(target_k) => {
                if target_k.iter().any(|k| *k == 0.0 || !k.is_finite()) {
                    return Err(Error::Invalid("target leading coefficients must be finite and nonzero".into()));
                }
                let m = target_k.len().min(norms.len());
                let h = (0..m)
                    .map(|n| norms.h[n] * (target_k[n] / norms.k[n]).powi(2))
                    .collect();
                let src = self.clone();
                let kk: Arc<[f64]> = target_k.clone().into();
                let mut out = RecurrenceSystem::from_fn(Form::General, target_k[0], move |n| {
                    let co = (src.coeff_fn)(n);
                    let a = kk[n] / kk[n + 1];
                    let c = if n == 0 {
                        0.0
                    } else {
                        co.c * (src.coeff_fn)(n - 1).a * kk[n] / kk[n - 1]
                    };
                    Coefficients::new(a, co.b, c)
                })
                .with_label(&format!("{} (rescaled)", self.label));
                let defined = target_k.len().saturating_sub(1);
                out.len = Some(self.len.map_or(defined, |l| l.min(defined)));
                Ok((
                    out,
                    NormData {
                        h,
                        k: target_k[..m].to_vec(),
                    },
                ))
            }
        }
    }

    /// Compare `p_n(-x)` with `(-1)^n p_n(x)` over `n <= n_max` and the samples.
    pub fn check_even_symmetry(&self, n_max: usize, samples: &[f64]) -> Result<SymmetryReport> {
        let mut applicable = true;
        for n in 0..n_max {
            if self.coeffs(n)?.b != 0.0 {
                applicable = false;
            }
        }
        let mut max_dev = 0.0f64;
        let mut max_rel = 0.0f64;
        for &x in samples {
            let plus = self.eval_all(n_max, x)?;
            let minus = self.eval_all(n_max, -x)?;
            for n in 0..=n_max {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let dev = (minus[n] - sign * plus[n]).abs();
                max_dev = max_dev.max(dev);
                let scale = plus[n].abs().max(minus[n].abs());
                if scale > 0.0 {
                    max_rel = max_rel.max(dev / scale);
                }
            }
        }
        Ok(SymmetryReport {
            applicable,
            max_deviation: max_dev,
            max_relative_deviation: max_rel,
        })
    }

    /// Diagonal and off-diagonal of the `n x n` symmetric Jacobi matrix:
    /// `b_j` and `sqrt(a_j c_{j+1})`.
    pub fn jacobi_matrix(&self, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut diag = Vec::with_capacity(n);
        let mut off = Vec::with_capacity(n.saturating_sub(1));
        for j in 0..n {
            diag.push(self.coeffs(j)?.b);
            if j + 1 < n {
                let prod = self.coeffs(j)?.a * self.coeffs(j + 1)?.c;
                if !(prod > 0.0) {
                    return Err(Error::FavardViolation { index: j, product: prod });
                }
                off.push(prod.sqrt());
            }
        }
        Ok((diag, off))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn legendre() -> RecurrenceSystem {
        RecurrenceSystem::from_fn(Form::General, 1.0, |n| {
            let n = n as f64;
            Coefficients::new((n + 1.0) / (2.0 * n + 1.0), 0.0, n / (2.0 * n + 1.0))
        })
    }

    fn hermite() -> RecurrenceSystem {
        RecurrenceSystem::from_fn(Form::General, 1.0, |n| Coefficients::new(0.5, 0.0, n as f64))
    }

    #[test]
    fn legendre_at_one() {
        assert!((legendre().eval(3, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degree_zero_is_p0() {
        let sys = RecurrenceSystem::from_fn(Form::General, 2.5, |_| Coefficients::new(1.0, 0.0, 1.0));
        assert_eq!(sys.eval(0, 0.3).unwrap(), 2.5);
    }

    #[test]
    fn hermite_h2_at_one() {
        assert!((hermite().eval(2, 1.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn undefined_index_and_zero_a() {
        let sys = RecurrenceSystem::from_coefficients(Form::Monic, 1.0, vec![Coefficients::new(1.0, 0.0, 0.0)]);
        assert!(matches!(sys.eval(2, 0.5), Err(Error::UndefinedCoefficient { index: 1, .. })));
        let bad = RecurrenceSystem::from_fn(Form::General, 1.0, |_| Coefficients::new(0.0, 0.0, 1.0));
        assert!(matches!(bad.eval(1, 0.5), Err(Error::ZeroLeadingCoefficient { index: 0 })));
    }

    #[test]
    fn complex_and_dd_agree_with_real() {
        let sys = legendre();
        let r = sys.eval(7, 0.3).unwrap();
        let c = sys.eval(7, Complex64::new(0.3, 0.0)).unwrap();
        let d = sys.eval_real(7, 0.3, Precision::DoubleDouble).unwrap();
        assert!((r - c.re).abs() < 1e-15 && c.im == 0.0);
        assert!((r - d).abs() < 1e-15);
    }

    #[test]
    fn orthonormal_to_monic_squares_a() {
        let sys = RecurrenceSystem::from_fn(Form::Orthonormal, 1.0, |n| {
            let c = if n == 0 { 0.0 } else { 2.0 };
            Coefficients::new(2.0, 0.0, c)
        });
        let norms = sys.norms_from_recurrence(1.0, 1.0, 5).unwrap();
        let (monic, _) = sys.convert_form(&norms, &Normalization::Monic).unwrap();
        assert_eq!(monic.coeffs(3).unwrap().c, 4.0);
    }

    #[test]
    fn monic_to_monic_is_identity() {
        let sys = RecurrenceSystem::from_fn(Form::Monic, 1.0, |n| Coefficients::new(1.0, 0.3, 0.25 * n as f64));
        let norms = sys.norms_from_recurrence(1.0, 1.0, 6).unwrap();
        let (monic, n2) = sys.convert_form(&norms, &Normalization::Monic).unwrap();
        for n in 0..6 {
            assert_eq!(monic.coeffs(n).unwrap(), sys.coeffs(n).unwrap());
        }
        assert_eq!(n2, norms);
    }

    #[test]
    fn hermite_monic_c_is_n_over_two() {
        let sys = hermite();
        let norms = sys.norms_from_recurrence(std::f64::consts::PI.sqrt(), 1.0, 8).unwrap();
        let (monic, _) = sys.convert_form(&norms, &Normalization::Monic).unwrap();
        for n in 1..8 {
            assert!((monic.coeffs(n).unwrap().c - n as f64 / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn favard_reports() {
        let leg = legendre().validate_favard(10);
        assert!(leg.all_pass);
        let zero_c = RecurrenceSystem::from_fn(Form::General, 1.0, |_| Coefficients::new(1.0, 0.0, 0.0));
        assert_eq!(zero_c.validate_favard(3).first_failure, Some(0));
        let neg = RecurrenceSystem::from_fn(Form::General, 1.0, |_| Coefficients::new(1.0, 0.0, -1.0));
        let rep = neg.validate_favard(3);
        assert_eq!(rep.first_failure, Some(0));
        assert_eq!(rep.entries[0].product, -1.0);
    }

    #[test]
    fn hermite_norms() {
        let sp = std::f64::consts::PI.sqrt();
        let norms = hermite().norms_from_recurrence(sp, 1.0, 10).unwrap();
        let mut fact = 1.0;
        for n in 0..=10 {
            if n > 0 {
                fact *= n as f64;
            }
            let expect = 2f64.powi(n as i32) * fact * sp;
            assert!((norms.h[n] - expect).abs() / expect < 1e-14);
            assert_eq!(norms.k[n], 2f64.powi(n as i32));
        }
    }

    #[test]
    fn constant_c_norms() {
        let sys = RecurrenceSystem::from_fn(Form::Monic, 1.0, |_| Coefficients::new(1.0, 0.0, 0.25));
        let norms = sys.norms_from_recurrence(1.0, 1.0, 6).unwrap();
        for n in 0..=6 {
            assert!((norms.h[n] - 0.25f64.powi(n as i32)).abs() < 1e-16);
        }
        let zero = sys.norms_from_recurrence(3.0, 2.0, 0).unwrap();
        assert_eq!(zero.h, vec![3.0]);
        assert_eq!(zero.k, vec![2.0]);
    }

    #[test]
    fn favard_violation_in_norms() {
        let neg = RecurrenceSystem::from_fn(Form::General, 1.0, |_| Coefficients::new(1.0, 0.0, -1.0));
        assert!(matches!(
            neg.norms_from_recurrence(1.0, 1.0, 3),
            Err(Error::FavardViolation { index: 0, .. })
        ));
    }

    #[test]
    fn even_symmetry() {
        let rep = hermite().check_even_symmetry(3, &[0.7]).unwrap();
        assert!(rep.applicable);
        assert!(rep.max_deviation < 1e-14);
        let rep = legendre().check_even_symmetry(4, &[0.3]).unwrap();
        assert!(rep.max_deviation <= 1e-14);
        let rep = legendre().check_even_symmetry(0, &[0.3]).unwrap();
        assert_eq!(rep.max_deviation, 0.0);
    }

    #[test]
    fn inconsistent_norms_rejected() {
        let sys = legendre();
        let mut norms = sys.norms_from_recurrence(2.0, 1.0, 4).unwrap();
        norms.h[2] *= 1.5;
        assert!(matches!(
            sys.convert_form(&norms, &Normalization::Monic),
            Err(Error::InconsistentNorms { .. })
        ));
        norms.h[2] = -1.0;
        assert!(matches!(
            sys.convert_form(&norms, &Normalization::Monic),
            Err(Error::NonPositiveNorm { index: 2, .. })
        ));
    }

    #[test]
    fn divided_differences_match_derivative_at_coincidence() {
        let sys = legendre();
        let dd = sys.divided_differences(6, 0.4, 0.4).unwrap();
        let der = sys.eval_with_derivative(6, 0.4).unwrap();
        for k in 0..=6 {
            assert!((dd[k] - der[k].1).abs() < 1e-13);
        }
        let dd = sys.divided_differences(5, 0.4, -0.2).unwrap();
        let direct = (sys.eval(5, 0.4).unwrap() - sys.eval(5, -0.2).unwrap()) / 0.6;
        assert!((dd[5] - direct).abs() < 1e-14);
    }

    #[test]
    fn table_roundtrip() {
        let t = legendre().to_table(5).unwrap();
        let back = RecurrenceSystem::from_table(&t).unwrap();
        assert_eq!(back.len(), Some(5));
        assert!((back.eval(5, 0.3).unwrap() - legendre().eval(5, 0.3).unwrap()).abs() < 1e-15);
    }
}
