//! Shifted factorials, factorials and gamma-function helpers.

use super::DoubleDouble;

/// Above this length, products are accumulated as a sum of logarithms.
const LOG_SPACE_THRESHOLD: usize = 20;

/// Sign and logarithm of a magnitude: the value is `sign * exp(ln_abs)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLog {
    pub sign: f64,
    pub ln_abs: f64,
}

impl SignedLog {
    pub fn value(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }
}

/// `(a)_n` in signed log form.
pub fn ln_pochhammer(a: f64, n: usize) -> SignedLog {
    let mut sign = 1.0;
    let mut ln_abs = 0.0;
    for k in 0..n {
        let f = a + k as f64;
        if f == 0.0 {
            return SignedLog {
                sign: 0.0,
                ln_abs: f64::NEG_INFINITY,
            };
        }
        if f < 0.0 {
            sign = -sign;
        }
        ln_abs += f.abs().ln();
    }
    SignedLog { sign, ln_abs }
}

/// Shifted factorial `(a)_n = a (a+1) ... (a+n-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    if n <= LOG_SPACE_THRESHOLD {
        (0..n).map(|k| a + k as f64).product()
    } else {
        ln_pochhammer(a, n).value()
    }
}

/// `(a)_n` accumulated in double-double.
pub fn pochhammer_dd(a: f64, n: usize) -> DoubleDouble {
    let mut acc = DoubleDouble::ONE;
    for k in 0..n {
        acc *= DoubleDouble::new(a) + k as f64;
    }
    acc
}

/// `(a)_n / (b)_n` as a running product of ratios, which never overflows
/// for moderate parameters even when both factors would.
pub fn pochhammer_ratio_dd(a: f64, b: f64, n: usize) -> DoubleDouble {
    let mut acc = DoubleDouble::ONE;
    for k in 0..n {
        acc *= (DoubleDouble::new(a) + k as f64) / (DoubleDouble::new(b) + k as f64);
    }
    acc
}

pub fn factorial(n: usize) -> f64 {
    pochhammer(1.0, n)
}

pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Integer arguments use the factorial product, exact through `gamma(23)`.
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 && x <= 171.0 && x.fract() == 0.0 {
        return (1..x as usize).fold(1.0, |acc, k| acc * k as f64);
    }
    statrs::function::gamma::gamma(x)
}

/// Binomial coefficient `C(n, k)` for integers, as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc.round()
}
