//! Dense real polynomials.
//!
//! Coefficients are stored in powers of `s = (x - center) / scale`. Families whose
//! explicit series is naturally written around a point (Jacobi around `x = 1`)
//! keep that basis so that derivatives stay exact in the coefficients and
//! evaluation avoids the cancellation of a monomial expansion.

use std::ops::{Add, Mul, Neg, Sub};

use super::{DoubleDouble, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
    center: f64,
    scale: f64,
}

impl Poly {
    /// Polynomial in the monomial basis `sum c_k x^k`.
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self::in_basis(coeffs, 0.0, 1.0)
    }

    /// Polynomial `sum c_k ((x - center)/scale)^k`.
    pub fn in_basis(mut coeffs: Vec<f64>, center: f64, scale: f64) -> Self {
        assert!(scale != 0.0, "polynomial basis scale must be nonzero");
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self {
            coeffs,
            center,
            scale,
        }
    }

    pub fn zero() -> Self {
        Self::new(vec![0.0])
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![0.0, 1.0])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monomial_basis(&self) -> bool {
        self.center == 0.0 && self.scale == 1.0
    }

    /// Leading coefficient with respect to `x`.
    pub fn leading_coefficient(&self) -> f64 {
        self.coeffs[self.degree()] / self.scale.powi(self.degree() as i32)
    }

    /// Horner evaluation in double-double.
    pub fn eval_dd(&self, x: f64) -> DoubleDouble {
        let s = (DoubleDouble::new(x) - self.center) / self.scale;
        let mut acc = DoubleDouble::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_dd(x).to_f64()
    }

    /// Horner evaluation over any scalar (complex arguments included).
    pub fn eval_scalar<T: Scalar>(&self, x: T) -> T {
        let s = (x - T::from_f64(self.center)) / T::from_f64(self.scale);
        let mut acc = T::from_f64(0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + T::from_f64(c);
        }
        acc
    }

    /// Sum of `|c_k| |s|^k`, the magnitude scale of an evaluation at `x`.
    pub fn eval_abs(&self, x: f64) -> f64 {
        let s = ((x - self.center) / self.scale).abs();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c.abs())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::in_basis(vec![0.0], self.center, self.scale);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c / self.scale)
            .collect();
        Self::in_basis(coeffs, self.center, self.scale)
    }

    /// Re-expand in the monomial basis.
    pub fn to_monomial(&self) -> Self {
        if self.is_monomial_basis() {
            return self.clone();
        }
        // powers of the linear map s = (x - center)/scale in monomial form
        let lin = Self::new(vec![-self.center / self.scale, 1.0 / self.scale]);
        let mut out = Self::zero();
        let mut power = Self::constant(1.0);
        for &c in &self.coeffs {
            out = &out + &(&power * c);
            power = &power * &lin;
        }
        out
    }

    pub fn mul_x(&self) -> Self {
        self * &Self::x()
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if self.center == other.center && self.scale == other.scale {
            (Cow::Borrowed(self), Cow::Borrowed(other))
        } else {
            (Cow::Owned(self.to_monomial()), Cow::Owned(other.to_monomial()))
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (a, b) = self.aligned(rhs);
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|k| a.coeffs.get(k).copied().unwrap_or(0.0) + b.coeffs.get(k).copied().unwrap_or(0.0))
            .collect();
        Poly::in_basis(coeffs, a.center, a.scale)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self * -1.0
    }
}

impl Mul<f64> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: f64) -> Poly {
        Poly::in_basis(self.coeffs.iter().map(|c| c * rhs).collect(), self.center, self.scale)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let (a, b) = self.aligned(rhs);
        let mut coeffs = vec![0.0; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        Poly::in_basis(coeffs, a.center, a.scale)
    }
}

/// Polynomial with double-double coefficients in powers of `s = (x - center) / scale`.
///
/// Used for explicit series whose terms cancel heavily: the coefficients keep
/// about 32 significant digits, so derivatives and values stay accurate where
/// a double-precision expansion would not.
#[derive(Clone, Debug, PartialEq)]
pub struct DdPoly {
    coeffs: Vec<DoubleDouble>,
    center: f64,
    scale: f64,
}

impl DdPoly {
    pub fn in_basis(mut coeffs: Vec<DoubleDouble>, center: f64, scale: f64) -> Self {
        assert!(scale != 0.0, "polynomial basis scale must be nonzero");
        while coeffs.len() > 1 && coeffs.last().unwrap().hi == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(DoubleDouble::ZERO);
        }
        Self {
            coeffs,
            center,
            scale,
        }
    }

    pub fn new(coeffs: Vec<DoubleDouble>) -> Self {
        Self::in_basis(coeffs, 0.0, 1.0)
    }

    pub fn coeffs(&self) -> &[DoubleDouble] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    fn basis_arg(&self, x: DoubleDouble) -> DoubleDouble {
        (x - self.center) / self.scale
    }

    pub fn eval_dd(&self, x: DoubleDouble) -> DoubleDouble {
        let s = self.basis_arg(x);
        let mut acc = DoubleDouble::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_dd(DoubleDouble::new(x)).to_f64()
    }

    /// Sum of `|c_k| |s|^k`: the magnitude of the terms being cancelled.
    pub fn eval_abs(&self, x: f64) -> f64 {
        let s = self.basis_arg(DoubleDouble::new(x)).to_f64().abs();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c.to_f64().abs())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::in_basis(vec![DoubleDouble::ZERO], self.center, self.scale);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64 / self.scale)
            .collect();
        Self::in_basis(coeffs, self.center, self.scale)
    }

    pub fn scaled(&self, factor: DoubleDouble) -> Self {
        Self::in_basis(self.coeffs.iter().map(|&c| c * factor).collect(), self.center, self.scale)
    }

    /// Leading coefficient with respect to `x`.
    pub fn leading_coefficient(&self) -> DoubleDouble {
        let mut lc = self.coeffs[self.degree()];
        for _ in 0..self.degree() {
            lc = lc / self.scale;
        }
        lc
    }

    /// Round the coefficients to double precision.
    pub fn to_poly(&self) -> Poly {
        Poly::in_basis(self.coeffs.iter().map(|c| c.to_f64()).collect(), self.center, self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_basis_expands_correctly() {
        // (x - 1)^2 / 4 = (x^2 - 2x + 1)/4
        let p = Poly::in_basis(vec![0.0, 0.0, 1.0], 1.0, 2.0);
        let m = p.to_monomial();
        assert_eq!(m.coeffs(), &[0.25, -0.5, 0.25]);
        assert!((p.eval(3.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_respects_scale() {
        let p = Poly::in_basis(vec![0.0, 0.0, 1.0], 1.0, 2.0);
        // d/dx ((x-1)/2)^2 = (x-1)/2
        assert!((p.derivative().eval(5.0) - 2.0).abs() < 1e-15);
        assert!((p.leading_coefficient() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn products_and_sums() {
        let p = Poly::new(vec![1.0, 1.0]);
        let q = &p * &p;
        assert_eq!(q.coeffs(), &[1.0, 2.0, 1.0]);
        let r = &q - &Poly::monomial(2);
        assert_eq!(r.coeffs(), &[1.0, 2.0]);
        assert_eq!(Poly::zero().degree(), 0);
    }

    #[test]
    fn dd_poly_derivative_and_lead() {
        let c = vec![DoubleDouble::ZERO, DoubleDouble::ZERO, DoubleDouble::ONE];
        let p = DdPoly::in_basis(c, 1.0, 2.0);
        assert!((p.eval(3.0) - 1.0).abs() < 1e-15);
        assert!((p.derivative().eval(5.0) - 2.0).abs() < 1e-15);
        assert_eq!(p.leading_coefficient().to_f64(), 0.25);
        assert_eq!(p.to_poly().coeffs(), &[0.0, 0.0, 1.0]);
    }
}
