//! Globally adaptive Gauss-Kronrod (G10/K21) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

// Kronrod abscissae; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_223_253,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// A complex value with an error estimate and the number of integrand calls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub n_evals: u64,
}

impl QuadResult {
    pub fn exact(value: Complex64) -> Self {
        Self {
            value,
            abs_err: 0.0,
            n_evals: 0,
        }
    }

    pub fn scale(self, c: Complex64) -> Self {
        Self {
            value: self.value * c,
            abs_err: self.abs_err * c.norm(),
            n_evals: self.n_evals,
        }
    }
}

impl std::ops::Add for QuadResult {
    type Output = QuadResult;
    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            abs_err: self.abs_err + rhs.abs_err,
            n_evals: self.n_evals + rhs.n_evals,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Cap on the number of live subintervals per integral.
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_intervals: 200_000,
        }
    }
}

impl QuadConfig {
    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        Self { abs_tol, ..self }
    }

    pub fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Outcome of one adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub result: QuadResult,
    /// Integral of the modulus; drives the roundoff floor of `abs_err`.
    pub abs_mass: f64,
    pub converged: bool,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    mass: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
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
        self.err.total_cmp(&other.err)
    }
}

fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut mass = fc.norm() * WGK[10];
    let mut samples = [Complex64::new(0.0, 0.0); 21];
    samples[20] = fc;
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        samples[2 * j] = f1;
        samples[2 * j + 1] = f2;
        kronrod += (f1 + f2) * WGK[j];
        mass += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        asc += WGK[j] * ((samples[2 * j] - mean).norm() + (samples[2 * j + 1] - mean).norm());
    }
    let h = half.abs();
    let value = kronrod * half;
    let mass = mass * h;
    let asc = asc * h;
    let mut err = ((kronrod - gauss) * half).norm();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * mass;
    if roundoff > f64::MIN_POSITIVE {
        err = err.max(roundoff);
    }
    if !err.is_finite() || !value.re.is_finite() || !value.im.is_finite() {
        err = f64::INFINITY;
    }
    Panel {
        a,
        b,
        value,
        err,
        mass,
    }
}

/// Nodes of the 21-point rule on `[a, b]` in increasing order, as
/// `(x, kronrod_weight, gauss_weight)`; Gauss weights are zero off the 10-point subset.
pub fn kronrod_nodes(a: f64, b: f64) -> Vec<(f64, f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = Vec::with_capacity(21);
    for j in 0..10 {
        let g = if j % 2 == 1 { WG[j / 2] } else { 0.0 };
        out.push((center - half * XGK[j], WGK[j] * half, g * half));
    }
    out.push((center, WGK[10] * half, 0.0));
    for j in (0..10).rev() {
        let g = if j % 2 == 1 { WG[j / 2] } else { 0.0 };
        out.push((center + half * XGK[j], WGK[j] * half, g * half));
    }
    out
}

/// Integrate `f` over `[knots[0], knots.last()]`, starting from one panel per knot interval.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, knots: &[f64], cfg: &QuadConfig) -> Integral {
    assert!(knots.len() >= 2, "need at least two knots");
    let mut heap = BinaryHeap::with_capacity(knots.len() * 2);
    let mut evals = 0u64;
    for w in knots.windows(2) {
        if w[1] > w[0] {
            heap.push(gk21(&f, w[0], w[1]));
            evals += 21;
        }
    }
    loop {
        let total: Complex64 = heap.iter().map(|p| p.value).sum();
        let err: f64 = heap.iter().map(|p| p.err).sum();
        let mass: f64 = heap.iter().map(|p| p.mass).sum();
        // once the roundoff floor dominates, refining cannot help
        let converged = err <= cfg.target(total).max(64.0 * f64::EPSILON * mass);
        if converged || heap.len() >= cfg.max_intervals {
            return Integral {
                result: QuadResult {
                    value: total,
                    abs_err: err,
                    n_evals: evals,
                },
                abs_mass: mass,
                converged,
            };
        }
        // refine in batches so the bookkeeping above stays cheap
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            let worst = match heap.pop() {
                Some(p) => p,
                None => break,
            };
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                // cannot split further; keep it and stop refining this panel
                heap.push(Panel {
                    err: worst.err,
                    ..worst
                });
                let total: Complex64 = heap.iter().map(|p| p.value).sum();
                let err: f64 = heap.iter().map(|p| p.err).sum();
                let mass = heap.iter().map(|p| p.mass).sum();
                return Integral {
                    result: QuadResult {
                        value: total,
                        abs_err: err,
                        n_evals: evals,
                    },
                    abs_mass: mass,
                    converged: err <= cfg.target(total),
                };
            }
            heap.push(gk21(&f, worst.a, mid));
            heap.push(gk21(&f, mid, worst.b));
            evals += 42;
        }
    }
}

/// Knots on `[a, b]` spaced so that `rate(t) * spacing <= per_piece`.
///
/// Returns `None` when more than `max_knots` would be needed.
pub fn rate_knots<R: Fn(f64) -> f64>(
    a: f64,
    b: f64,
    rate: R,
    per_piece: f64,
    max_knots: usize,
) -> Option<Vec<f64>> {
    let mut knots = vec![a];
    let mut t = a;
    let min_step = (b - a).abs() * 1e-12;
    while t < b {
        let r = rate(t).abs();
        let mut dt = if r > 0.0 { per_piece / r } else { b - a };
        dt = dt.max(min_step);
        // look ahead so a growing rate does not overshoot
        let r2 = rate((t + dt).min(b)).abs();
        if r2 > r && r2 > 0.0 {
            dt = dt.min(per_piece / r2).max(min_step);
        }
        t = (t + dt).min(b);
        knots.push(t);
        if knots.len() > max_knots {
            return None;
        }
    }
    Some(knots)
}
