//! Christoffel–Darboux kernels, orthogonal projections and kernel polynomials.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{GramReport, Measure};
use crate::numeric::poly::Poly;
use crate::numeric::DoubleDouble;
use crate::recurrence::{NormData, RecurrenceSystem};

/// Below `|x - y| < KERNEL_SWITCH * (1 + |x|)` the closed form is evaluated
/// through divided differences instead of the quotient.
pub const KERNEL_SWITCH: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelPath {
    /// `(p_{n+1}(x) p_n(y) - p_n(x) p_{n+1}(y)) / (x - y)`.
    Quotient,
    /// The same quotient expanded in divided differences; at `x = y` this is
    /// `p_{n+1}'(x) p_n(x) - p_n'(x) p_{n+1}(x)`.
    Confluent,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelValue {
    /// `sum_{j <= n} p_j(x) p_j(y) / h_j`.
    pub direct: f64,
    pub closed: f64,
    pub path: KernelPath,
}

impl KernelValue {
    pub fn relative_gap(&self) -> f64 {
        (self.direct - self.closed).abs() / self.direct.abs().max(self.closed.abs()).max(f64::MIN_POSITIVE)
    }
}

/// `K_n(x, y)` of a system with known norms.
#[derive(Clone, Debug)]
pub struct CdKernel {
    sys: RecurrenceSystem,
    h: Vec<f64>,
    n: usize,
}

impl CdKernel {
    pub fn new(sys: &RecurrenceSystem, norms: &NormData, n: usize) -> Result<Self> {
        if norms.h.len() <= n {
            return Err(Error::InsufficientMoments {
                needed: n + 1,
                available: norms.h.len(),
            });
        }
        if let Some((index, &value)) = norms.h[..=n].iter().enumerate().find(|(_, h)| !(**h > 0.0)) {
            return Err(Error::NonPositiveNorm { index, value });
        }
        Ok(Self {
            sys: sys.clone(),
            h: norms.h[..=n].to_vec(),
            n,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn direct(&self, x: f64, y: f64) -> Result<f64> {
        let px = self.sys.eval_all(self.n, DoubleDouble::new(x))?;
        let py = self.sys.eval_all(self.n, DoubleDouble::new(y))?;
        let mut acc = DoubleDouble::ZERO;
        for j in 0..=self.n {
            acc += px[j] * py[j] / self.h[j];
        }
        Ok(acc.to_f64())
    }

    /// Closed form with prefactor `k_n / (k_{n+1} h_n) = a_n / h_n`.
    pub fn closed(&self, x: f64, y: f64) -> Result<(f64, KernelPath)> {
        let n = self.n;
        let pref = self.sys.coeffs(n)?.a / self.h[n];
        if (x - y).abs() < KERNEL_SWITCH * (1.0 + x.abs()) {
            let d = self.sys.divided_differences(n + 1, x, y)?;
            let py = self.sys.eval_all(n + 1, y)?;
            let v = d[n + 1] * py[n] - d[n] * py[n + 1];
            return Ok((pref * v, KernelPath::Confluent));
        }
        let px = self.sys.eval_all(n + 1, DoubleDouble::new(x))?;
        let py = self.sys.eval_all(n + 1, DoubleDouble::new(y))?;
        let num = px[n + 1] * py[n] - px[n] * py[n + 1];
        Ok(((num / (x - y)).to_f64() * pref, KernelPath::Quotient))
    }

    /// `K_n(x, x)` from derivatives: `(a_n / h_n)(p_{n+1}' p_n - p_n' p_{n+1})`.
    pub fn diagonal(&self, x: f64) -> Result<f64> {
        let n = self.n;
        let v = self.sys.eval_with_derivative(n + 1, DoubleDouble::new(x))?;
        let (pn, dn) = v[n];
        let (pn1, dn1) = v[n + 1];
        Ok((dn1 * pn - dn * pn1).to_f64() * self.sys.coeffs(n)?.a / self.h[n])
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<KernelValue> {
        let direct = self.direct(x, y)?;
        let (closed, path) = self.closed(x, y)?;
        Ok(KernelValue { direct, closed, path })
    }
}

/// `K_n(x, y)` by both the direct sum and the closed form.
pub fn cd_kernel(sys: &RecurrenceSystem, norms: &NormData, n: usize, x: f64, y: f64) -> Result<KernelValue> {
    CdKernel::new(sys, norms, n)?.eval(x, y)
}

/// Orthogonal projection `Pi_n f = sum_{j <= n} (<f, p_j> / h_j) p_j`.
#[derive(Clone, Debug)]
pub struct Projection {
    sys: RecurrenceSystem,
    /// `<f, p_j> / h_j`.
    pub coefficients: Vec<f64>,
}

impl Projection {
    pub fn new(sys: &RecurrenceSystem, norms: &NormData, n: usize, f: &Poly, m: &Measure) -> Result<Self> {
        if norms.h.len() <= n {
            return Err(Error::InsufficientMoments {
                needed: n + 1,
                available: norms.h.len(),
            });
        }
        let fm = f.to_monomial();
        let coefficients = (0..=n)
            .map(|j| Ok(m.integrate(|x| fm.eval(x) * sys.eval(j, x).unwrap_or(f64::NAN))? / norms.h[j]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            sys: sys.clone(),
            coefficients,
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let p = self.sys.eval_all(self.coefficients.len() - 1, x)?;
        Ok(p.iter().zip(&self.coefficients).map(|(p, c)| p * c).sum())
    }
}

/// `(Pi_n f)(x) = int K_n(x, y) f(y) dmu(y)`.
pub fn project(sys: &RecurrenceSystem, norms: &NormData, n: usize, f: &Poly, m: &Measure, x: f64) -> Result<f64> {
    Projection::new(sys, norms, n, f, m)?.eval(x)
}

/// Kernel polynomials `q_n(x) = K_n(x, y)` for a fixed `y` outside the support,
/// orthogonal with respect to `|y - x| dmu(x)`.
#[derive(Clone, Debug)]
pub struct KernelPolynomials {
    sys: RecurrenceSystem,
    h: Vec<f64>,
    k: Vec<f64>,
    y: f64,
    /// `p_j(y) / h_j`.
    weights: Vec<f64>,
}

impl KernelPolynomials {
    /// `y` may lie on either side of the support hull but not strictly inside.
    pub fn new(sys: &RecurrenceSystem, norms: &NormData, m: &Measure, y: f64, n_max: usize) -> Result<Self> {
        let (lower, upper) = m.support_hull();
        if y > lower && y < upper {
            return Err(Error::InsideSupport { x: y, lower, upper });
        }
        if norms.len() <= n_max + 1 {
            return Err(Error::InsufficientMoments {
                needed: n_max + 2,
                available: norms.len(),
            });
        }
        let py = sys.eval_all(n_max + 1, y)?;
        let weights = (0..=n_max).map(|j| py[j] / norms.h[j]).collect();
        Ok(Self {
            sys: sys.clone(),
            h: norms.h.clone(),
            k: norms.k.clone(),
            y,
            weights,
        })
    }

    pub fn n_max(&self) -> usize {
        self.weights.len() - 1
    }

    /// `q_0(x), ..., q_n(x)` by the partial sums `q_n - q_{n-1} = p_n(y) p_n(x) / h_n`.
    pub fn eval_all(&self, n: usize, x: f64) -> Result<Vec<f64>> {
        let p = self.sys.eval_all(n, x)?;
        let mut acc = 0.0;
        Ok(p.iter()
            .zip(&self.weights)
            .map(|(p, w)| {
                acc += w * p;
                acc
            })
            .collect())
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.eval_all(n, x)?[n])
    }

    /// `p_n(y) p_{n+1}(x) - p_{n+1}(y) p_n(x) - (h_n k_{n+1} / k_n)(x - y) q_n(x)`,
    /// relative to the largest term.
    pub fn bilinear_residual(&self, n: usize, x: f64) -> Result<f64> {
        let px = self.sys.eval_all(n + 1, x)?;
        let py = self.sys.eval_all(n + 1, self.y)?;
        let lhs = py[n] * px[n + 1] - py[n + 1] * px[n];
        let rhs = self.h[n] * self.k[n + 1] / self.k[n] * (x - self.y) * self.eval(n, x)?;
        let scale = (py[n] * px[n + 1]).abs().max((py[n + 1] * px[n]).abs()).max(rhs.abs());
        Ok((lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE))
    }

    /// Gram matrix of `q_0..q_n` against `|y - x| dmu(x)`.
    pub fn gram(&self, m: &Measure, n: usize) -> Result<GramReport> {
        let y = self.y;
        let mut gram = vec![vec![0.0; n + 1]; n + 1];
        for i in 0..=n {
            for j in i..=n {
                let v = m.integrate(|x| {
                    let q = self.eval_all(j, x).unwrap_or_else(|_| vec![f64::NAN; j + 1]);
                    q[i] * q[j] * (y - x).abs()
                })?;
                gram[i][j] = v;
                gram[j][i] = v;
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
}

/// [`KernelPolynomials::new`] as a free function.
pub fn kernel_polys(
    sys: &RecurrenceSystem,
    norms: &NormData,
    m: &Measure,
    y: f64,
    n_max: usize,
) -> Result<KernelPolynomials> {
    KernelPolynomials::new(sys, norms, m, y, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::FamilySpec;
    use crate::measures::named;

    fn legendre_half() -> (RecurrenceSystem, NormData, Measure) {
        let sys = FamilySpec::Legendre.recurrence();
        let norms = sys.norms_for_mass(1.0, 30).unwrap();
        let m = named::legendre().with_normalizer(0.5).unwrap();
        (sys, norms, m)
    }

    #[test]
    fn examples() {
        let (sys, norms, _) = legendre_half();
        let k0 = cd_kernel(&sys, &norms, 0, 0.3, -0.7).unwrap();
        assert!((k0.direct - 1.0).abs() < 1e-15 && (k0.closed - 1.0).abs() < 1e-15);
        let k1 = cd_kernel(&sys, &norms, 1, 1.0, 1.0).unwrap();
        assert_eq!(k1.path, KernelPath::Confluent);
        assert!((k1.direct - 4.0).abs() < 1e-14 && (k1.closed - 4.0).abs() < 1e-14);
        // without the normalizer h_j = 2/(2j+1) and K_1(1, 1) = (1 + 3)/2
        let plain = sys.norms_for_mass(2.0, 3).unwrap();
        let k1 = cd_kernel(&sys, &plain, 1, 1.0, 1.0).unwrap();
        assert!((k1.closed - 2.0).abs() < 1e-14);
        for &(x, y) in &[(0.3, -0.2), (0.9, 0.1), (0.5, 0.5 + 1e-9), (-0.4, -0.4)] {
            let v = cd_kernel(&sys, &norms, 7, x, y).unwrap();
            assert!(v.relative_gap() < 1e-12, "{x} {y}: {v:?}");
        }
        let k = CdKernel::new(&sys, &norms, 7).unwrap();
        assert!((k.diagonal(0.37).unwrap() - k.direct(0.37, 0.37).unwrap()).abs() < 1e-12 * k.direct(0.37, 0.37).unwrap());
        assert_eq!(k.direct(0.2, 0.6).unwrap(), k.direct(0.6, 0.2).unwrap());
    }

    #[test]
    fn hermite_kernel_paths() {
        let sys = FamilySpec::Hermite.recurrence();
        let norms = sys.norms_for_mass(std::f64::consts::PI.sqrt(), 30).unwrap();
        for &(x, y) in &[(1.3, -2.0), (0.2, 0.2 + 5e-7), (3.0, 3.0)] {
            let v = cd_kernel(&sys, &norms, 12, x, y).unwrap();
            assert!(v.relative_gap() < 1e-11, "{x} {y}: {v:?}");
        }
    }

    #[test]
    fn projection() {
        let (sys, norms, m) = legendre_half();
        let p2 = FamilySpec::Legendre.series_poly(2).unwrap().to_poly();
        for &x in &[-0.8, 0.1, 0.6] {
            assert!((project(&sys, &norms, 3, &p2, &m, x).unwrap() - p2.eval(x)).abs() < 1e-13);
            assert!((project(&sys, &norms, 2, &Poly::constant(1.0), &m, x).unwrap() - 1.0).abs() < 1e-14);
            let got = project(&sys, &norms, 2, &Poly::monomial(3), &m, x).unwrap();
            assert!((got - 0.6 * x).abs() < 1e-13, "{got}");
        }
    }

    #[test]
    fn kernel_polynomials() {
        let (sys, norms, m) = legendre_half();
        let kp = kernel_polys(&sys, &norms, &m, 1.0, 6).unwrap();
        assert!((kp.eval(0, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!((kp.eval(1, 0.3).unwrap() - (1.0 + 3.0 * 0.3)).abs() < 1e-14);
        for &x in &[-0.9, 0.2, 0.75] {
            assert!(kp.bilinear_residual(2, x).unwrap() < 1e-12);
        }
        let g = kp.gram(&m, 5).unwrap();
        assert!(g.max_off_diagonal < 1e-10, "{}", g.max_off_diagonal);
        assert!(matches!(
            kernel_polys(&sys, &norms, &m, 0.5, 3),
            Err(Error::InsideSupport { .. })
        ));
    }
}
