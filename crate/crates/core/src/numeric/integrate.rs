//! Globally adaptive Gauss–Kronrod (10/21 point) integration.
//!
//! Finite intervals use the double-exponential substitution
//! `x = a + (b - a)(1 + tanh(pi/2 sinh u))/2` with `u = t/(1-t^2)`, under
//! which any algebraic endpoint factor decays double-exponentially in `t`.
//! Half-lines use `x = a + (t/(1-t))^2` and the real line `x = t/(1-t^2)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_600_525_263,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// Gauss weights for the odd-indexed Kronrod abscissae
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// Error control for adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-12,
            rel: 1e-12,
            max_panels: 4000,
        }
    }
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Self {
            abs,
            ..Self::default()
        }
    }

    pub fn with_rel(mut self, rel: f64) -> Self {
        self.rel = rel;
        self
    }
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    /// Integral of `|f|`, the scale against which roundoff is judged.
    pub abs_value: f64,
    pub panels: usize,
}

/// Integration range, possibly unbounded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Range {
    Finite(f64, f64),
    LowerBounded(f64),
    UpperBounded(f64),
    Whole,
}

impl Range {
    pub fn from_bounds(a: f64, b: f64) -> Self {
        match (a.is_finite(), b.is_finite()) {
            (true, true) => Range::Finite(a, b),
            (true, false) => Range::LowerBounded(a),
            (false, true) => Range::UpperBounded(b),
            (false, false) => Range::Whole,
        }
    }

    /// Maps `t` in the unit-like parameter interval to `(x, dx/dt)`.
    /// `(x, dx/dt, x - lower, upper - x)` at parameter `t`. The distances
    /// are formed without cancellation; an infinite end gives infinity.
    fn map(&self, t: f64) -> (f64, f64, f64, f64) {
        match *self {
            Range::Finite(a, b) => {
                let w = b - a;
                let d = 1.0 - t * t;
                let u = t / d;
                let s = FRAC_PI_2 * u.sinh();
                // e = exp(-2|s|), so both distances are products, never differences
                let e = (-2.0 * s.abs()).exp();
                if e == 0.0 || !u.is_finite() {
                    let x = if t < 0.0 { a } else { b };
                    return (x, 0.0, x - a, b - x);
                }
                let (near, far) = (w * e / (1.0 + e), w / (1.0 + e));
                let (lo, hi) = if s >= 0.0 { (near, far) } else { (far, near) };
                let x = if lo <= hi { a + lo } else { b - hi };
                let jac = 2.0 * w * e / ((1.0 + e) * (1.0 + e)) * FRAC_PI_2 * u.cosh() * (1.0 + t * t) / (d * d);
                (x, jac, lo, hi)
            }
            Range::LowerBounded(a) => {
                let r = t / (1.0 - t);
                (a + r * r, 2.0 * t / ((1.0 - t) * (1.0 - t) * (1.0 - t)), r * r, f64::INFINITY)
            }
            Range::UpperBounded(b) => {
                let r = t / (1.0 - t);
                (b - r * r, 2.0 * t / ((1.0 - t) * (1.0 - t) * (1.0 - t)), f64::INFINITY, r * r)
            }
            Range::Whole => {
                let d = 1.0 - t * t;
                (t / d, (1.0 + t * t) / (d * d), f64::INFINITY, f64::INFINITY)
            }
        }
    }

    fn parameter_interval(&self) -> (f64, f64) {
        match self {
            Range::Whole | Range::Finite(..) => (-1.0, 1.0),
            _ => (0.0, 1.0),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(Error::NonFiniteIntegrand { x: center });
    }
    let mut resg = 0.0;
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        if !f1.is_finite() {
            return Err(Error::NonFiniteIntegrand { x: center - dx });
        }
        if !f2.is_finite() {
            return Err(Error::NonFiniteIntegrand { x: center + dx });
        }
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    error = error.max(floor);
    Ok(Panel {
        a,
        b,
        value,
        error,
        abs_value: resabs,
        floor,
    })
}

/// Integrate `f` over `[a, b]` in the parameter variable without any substitution.
pub fn integrate_plain<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral> {
    let first = kronrod21(&f, a, b)?;
    let (mut value, mut error, mut abs_value, mut floor) =
        (first.value, first.error, first.abs_value, first.floor);
    let mut heap = BinaryHeap::new();
    heap.push(first);
    loop {
        let target = tol.abs.max(tol.rel * value.abs()).max(2.0 * floor);
        if error <= target {
            // running totals drift; confirm with a fresh pass
            let exact_error: f64 = heap.iter().map(|p| p.error).sum();
            if exact_error <= target {
                return Ok(Integral {
                    value: crate::numeric::sum_compensated(heap.iter().map(|p| p.value)),
                    error: exact_error,
                    abs_value,
                    panels: heap.len(),
                });
            }
            error = exact_error;
        }
        if heap.len() >= tol.max_panels {
            return Err(Error::IntegrationFailed {
                error,
                tolerance: target,
                panels: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel can no longer be split; its error is final
            return Err(Error::IntegrationFailed {
                error,
                tolerance: target,
                panels: heap.len() + 1,
            });
        }
        let left = kronrod21(&f, worst.a, mid)?;
        let right = kronrod21(&f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        error = (error + left.error + right.error - worst.error).max(0.0);
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
    }
}

/// Integrate `f` over a possibly unbounded range.
pub fn integrate<F: Fn(f64) -> f64>(f: F, range: Range, tol: Tolerance) -> Result<Integral> {
    integrate_with_ends(|x, _, _| f(x), range, tol)
}

/// Like [`integrate`], with `f(x, x - lower, upper - x)`.
///
/// The two distances are computed from the substitution parameter, so they
/// keep full relative accuracy where `x` itself has rounded onto an endpoint.
/// Weights with algebraic endpoint factors should be written in terms of them.
/// Infinite ends give an infinite distance.
pub fn integrate_with_ends<F: Fn(f64, f64, f64) -> f64>(f: F, range: Range, tol: Tolerance) -> Result<Integral> {
    let (t0, t1) = range.parameter_interval();
    integrate_plain(
        |t| {
            let (x, jac, lo, hi) = range.map(t);
            // an end reached to machine range carries no mass
            if jac == 0.0 || !jac.is_finite() || !x.is_finite() || lo == 0.0 || hi == 0.0 {
                return 0.0;
            }
            let v = f(x, lo, hi);
            if v == 0.0 {
                0.0
            } else {
                v * jac
            }
        },
        t0,
        t1,
        tol,
    )
}
