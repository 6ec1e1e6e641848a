//! Adaptive one-dimensional quadrature and nested multi-dimensional integration.
//!
//! The 1-D integrator is a globally adaptive 21-point Gauss–Kronrod scheme run on
//! a smoothed variable: the interval `[lo, hi]` is mapped from `t ∈ [0, 1]` through
//! `u(t) = 3t² − 2t³`, whose derivative vanishes at both ends. Integrable
//! endpoint singularities of logarithmic or inverse-square-root type turn into
//! bounded integrands, so plain bisection converges quickly. Nodes are always
//! interior, the endpoints themselves are never evaluated.
//!
//! Each half of the `t` range is measured from its own endpoint so that integrands
//! with a singularity at `hi` can be evaluated from the exact offset
//! [`Abscissa::from_hi`] instead of the rounded difference `hi − x`.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

/// Default ceiling on integrand evaluations for a single 1-D call.
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

/// Requested accuracy: a result is accepted once its error estimate is below
/// `max(abs, rel·|value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const MIN_REL: f64 = 1e-14;
    pub const MAX_REL: f64 = 1e-2;

    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(Self::MIN_REL..=Self::MAX_REL).contains(&rel) {
            return Err(domain(format!(
                "relative tolerance {rel} outside [{}, {}]",
                Self::MIN_REL,
                Self::MAX_REL
            )));
        }
        if !(abs >= 0.0) || !abs.is_finite() {
            return Err(domain(format!(
                "absolute tolerance {abs} must be finite and >= 0"
            )));
        }
        Ok(Self { rel, abs })
    }

    /// Relative-only tolerance with the default absolute floor.
    pub fn rel(rel: f64) -> Result<Self> {
        Self::new(rel, Self::default().abs)
    }

    /// Tolerance handed to the next level of a nested integral.
    pub fn tightened(self) -> Self {
        Self {
            rel: (self.rel / 10.0).max(Self::MIN_REL),
            abs: self.abs / 10.0,
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-10,
            abs: 1e-14,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// An integration node together with its exact distances to both ends of the
/// interval. Near an endpoint the distance is accurate to full relative
/// precision even when `x` itself has rounded onto the endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_lo: f64,
    pub from_hi: f64,
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
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
    0.123_491_976_262_065_851_077_208_980_251_208,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ...
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One Gauss–Kronrod panel on `[a, b]`: (integral, error estimate, whether the
/// estimate sits at the rounding floor).
fn gauss_kronrod_21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, bool) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_k = WGK[10] * f_center;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let mut at_floor = false;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && floor >= err {
        err = floor;
        at_floor = true;
    }
    (result, err, at_floor)
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Lo,
    Hi,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    side: Side,
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    at_floor: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
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

fn smooth_step(t: f64) -> f64 {
    t * t * (3.0 - 2.0 * t)
}

fn smooth_step_slope(t: f64) -> f64 {
    6.0 * t * (1.0 - t)
}

/// Integrates `f` over `[lo, hi]`.
pub fn integrate_1d<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    integrate_1d_offsets(|p: Abscissa| f(p.x), lo, hi, tol)
}

/// Like [`integrate_1d`], but the integrand receives the node's exact
/// distances to both endpoints.
pub fn integrate_1d_offsets<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<IntegralResult>
where
    F: Fn(Abscissa) -> f64,
{
    integrate_1d_budget(f, lo, hi, tol, DEFAULT_MAX_EVALUATIONS)
}

/// Full-control entry point with an explicit evaluation budget.
pub fn integrate_1d_budget<F>(
    f: F,
    lo: f64,
    hi: f64,
    tol: Tolerance,
    max_evaluations: usize,
) -> Result<IntegralResult>
where
    F: Fn(Abscissa) -> f64,
{
    if !lo.is_finite() || !hi.is_finite() {
        return Err(domain(format!(
            "integration limits must be finite, got [{lo}, {hi}]"
        )));
    }
    if lo > hi {
        return Err(domain(format!("lower limit {lo} exceeds upper limit {hi}")));
    }
    let length = hi - lo;
    if length == 0.0 {
        return Ok(IntegralResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }

    let evaluations = Cell::new(0usize);
    let bad_value = Cell::new(None::<(f64, f64)>);
    let eval = |side: Side, t: f64| -> f64 {
        evaluations.set(evaluations.get() + 1);
        let near = length * smooth_step(t);
        let far = length * smooth_step(1.0 - t);
        let p = match side {
            Side::Lo => Abscissa {
                x: lo + near,
                from_lo: near,
                from_hi: far,
            },
            Side::Hi => Abscissa {
                x: hi - near,
                from_lo: far,
                from_hi: near,
            },
        };
        let y = f(p);
        if !y.is_finite() && bad_value.get().is_none() {
            bad_value.set(Some((p.x, y)));
        }
        y * length * smooth_step_slope(t)
    };

    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    for side in [Side::Lo, Side::Hi] {
        let (v, e, at_floor) = gauss_kronrod_21(&mut |t| eval(side, t), 0.0, 0.5);
        value += v;
        error += e;
        heap.push(Panel {
            side,
            a: 0.0,
            b: 0.5,
            value: v,
            error: e,
            at_floor,
        });
    }
    if let Some((x, y)) = bad_value.get() {
        return Err(domain(format!("integrand returned {y} at x = {x}")));
    }

    // Panels that can no longer be split (width at machine resolution) or whose
    // error is already at the rounding floor are parked here.
    let mut settled: Vec<Panel> = Vec::new();
    let mut settled_error = 0.0;
    while error > tol.target(value) && settled_error <= tol.target(value) {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if evaluations.get() + 42 > max_evaluations {
            heap.push(worst);
            break;
        }
        let unsplittable = !(mid > worst.a && mid < worst.b)
            || worst.b - worst.a < 4.0 * f64::EPSILON * worst.b
            || smooth_step(worst.a + 0.001 * (worst.b - worst.a)) == 0.0;
        if worst.at_floor || unsplittable {
            settled_error += worst.error;
            settled.push(worst);
            continue;
        }
        let side = worst.side;
        let (v1, e1, f1) = gauss_kronrod_21(&mut |t| eval(side, t), worst.a, mid);
        let (v2, e2, f2) = gauss_kronrod_21(&mut |t| eval(side, t), mid, worst.b);
        if let Some((x, y)) = bad_value.get() {
            return Err(domain(format!("integrand returned {y} at x = {x}")));
        }
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Panel {
            side,
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
            at_floor: f1,
        });
        heap.push(Panel {
            side,
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
            at_floor: f2,
        });
    }

    // Resum from scratch to drop the drift of the running totals.
    let panels = heap.into_vec();
    let value: f64 = panels.iter().chain(&settled).map(|p| p.value).sum();
    let error: f64 = panels.iter().chain(&settled).map(|p| p.error).sum();
    let evaluations = evaluations.get();
    if error <= tol.target(value) {
        Ok(IntegralResult {
            value,
            error_estimate: error,
            evaluations,
        })
    } else {
        Err(Error::Convergence {
            best: value,
            error_estimate: error,
            evaluations,
        })
    }
}

/// Upper limit of one inner level, as a function of the already-fixed outer
/// variables (outermost first).
pub type BoundFn<'a> = dyn Fn(&[f64]) -> f64 + 'a;

/// Nested integral `∫_{outer} ∫_0^{bounds[0](x₁)} ∫_0^{bounds[1](x₁,x₂)} … integrand(x₁..x_m)`.
///
/// `bounds.len() + 1` is the number of variables `m`; each inner level runs at
/// [`Tolerance::tightened`] of the level enclosing it.
pub fn integrate_nested(
    integrand: &dyn Fn(&[f64]) -> f64,
    outer: (f64, f64),
    bounds: &[&BoundFn<'_>],
    tol: Tolerance,
) -> Result<IntegralResult> {
    if bounds.is_empty() {
        return Err(domain("nested integration needs at least two variables"));
    }
    let evaluations = Cell::new(0usize);
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let nested = Nested {
        integrand,
        bounds,
        evaluations: &evaluations,
        failure: &failure,
    };
    let result = nested.level(&[], outer.0, outer.1, tol);
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    Ok(IntegralResult {
        evaluations: evaluations.get(),
        ..result?
    })
}

struct Nested<'a, 'b> {
    integrand: &'a dyn Fn(&[f64]) -> f64,
    bounds: &'a [&'a BoundFn<'b>],
    evaluations: &'a Cell<usize>,
    failure: &'a RefCell<Option<Error>>,
}

impl Nested<'_, '_> {
    /// Integrates the variable at position `outer_vars.len()`.
    fn level(
        &self,
        outer_vars: &[f64],
        lo: f64,
        hi: f64,
        tol: Tolerance,
    ) -> Result<IntegralResult> {
        let depth = outer_vars.len();
        let inner_tol = tol.tightened();
        let f = |x: f64| -> f64 {
            if self.failure.borrow().is_some() {
                return 0.0;
            }
            let mut vars = Vec::with_capacity(self.bounds.len() + 1);
            vars.extend_from_slice(outer_vars);
            vars.push(x);
            if depth == self.bounds.len() {
                self.evaluations.set(self.evaluations.get() + 1);
                return (self.integrand)(&vars);
            }
            let upper = (self.bounds[depth])(&vars);
            if !(upper >= 0.0) || !upper.is_finite() {
                *self.failure.borrow_mut() = Some(domain(format!(
                    "inner bound {upper} at level {} is not a finite non-negative value",
                    depth + 1
                )));
                return 0.0;
            }
            match self.level(&vars, 0.0, upper, inner_tol) {
                Ok(r) => r.value,
                Err(e) => {
                    *self.failure.borrow_mut() = Some(e);
                    0.0
                }
            }
        };
        integrate_1d(f, lo, hi, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol(rel: f64) -> Tolerance {
        Tolerance::new(rel, 1e-15).unwrap()
    }

    #[test]
    fn kronrod_weights_are_consistent() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert_abs_diff_eq!(k, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g, 2.0, epsilon = 1e-15);
        // Kronrod is exact to degree 31, Gauss-10 to degree 19.
        let (v, _, _) = gauss_kronrod_21(&mut |x: f64| x.powi(30), -1.0, 1.0);
        assert_abs_diff_eq!(v, 2.0 / 31.0, epsilon = 1e-15);
        let mut g18 = 0.0;
        for j in 0..5 {
            g18 += 2.0 * WG[j] * XGK[2 * j + 1].powi(18);
        }
        assert_abs_diff_eq!(g18, 2.0 / 19.0, epsilon = 1e-15);
    }

    #[test]
    fn polynomial_and_log_examples() {
        let r = integrate_1d(|x| x, 0.0, 1.0, tol(1e-12)).unwrap();
        assert_abs_diff_eq!(r.value, 0.5, epsilon = 1e-14);
        let r = integrate_1d(f64::ln, 0.0, 1.0, tol(1e-12)).unwrap();
        assert_abs_diff_eq!(r.value, -1.0, epsilon = 1e-12);
        assert!(r.error_estimate <= 1e-12);
    }

    #[test]
    fn log_sine_over_half_period_vanishes() {
        let r = integrate_1d(
            |z| -(2.0 * z.sin()).abs().ln(),
            0.0,
            std::f64::consts::PI,
            Tolerance::new(1e-10, 1e-12).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(r.value, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn singular_endpoints() {
        let r = integrate_1d(|x| (1.0 / x).ln(), 0.0, 1.0, tol(1e-12)).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-9);
        let r = integrate_1d(|x| x.powf(-0.5), 0.0, 1.0, tol(1e-12)).unwrap();
        assert!((r.value - 2.0).abs() <= 2e-9);
        // Singularity at the upper end, evaluated through the exact offset.
        let r = integrate_1d_offsets(|p| -p.from_hi.ln(), 0.0, 1.0, tol(1e-12)).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn empty_and_reversed_intervals() {
        let r = integrate_1d(|x| x, 2.0, 2.0, Tolerance::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(matches!(
            integrate_1d(|x| x, 1.0, 0.0, Tolerance::default()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            integrate_1d(|x| x, 0.0, f64::INFINITY, Tolerance::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn nan_integrand_is_a_domain_error() {
        let r = integrate_1d(
            |x| if x > 0.5 { f64::NAN } else { x },
            0.0,
            1.0,
            Tolerance::default(),
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let r = integrate_1d_budget(|p| (1.0 / p.x).sin(), 0.0, 1.0, tol(1e-14), 2_000);
        match r {
            Err(Error::Convergence {
                best, evaluations, ..
            }) => {
                assert!(best.is_finite());
                assert!(evaluations <= 2_000);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(1e-15, 0.0).is_err());
        assert!(Tolerance::new(0.1, 0.0).is_err());
        assert!(Tolerance::new(1e-8, -1.0).is_err());
        let t = Tolerance::new(1e-14, 1e-14).unwrap().tightened();
        assert_eq!(t.rel, 1e-14);
    }

    #[test]
    fn nested_triangle_area() {
        let bound = |v: &[f64]| v[0];
        let r = integrate_nested(&|_| 1.0, (0.0, 1.0), &[&bound], Tolerance::default()).unwrap();
        assert_abs_diff_eq!(r.value, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn nested_three_levels() {
        // Volume of the unit-corner simplex x + y + z <= 1 is 1/6.
        let b1 = |v: &[f64]| 1.0 - v[0];
        let b2 = |v: &[f64]| 1.0 - v[0] - v[1];
        let r = integrate_nested(&|_| 1.0, (0.0, 1.0), &[&b1, &b2], Tolerance::default()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0 / 6.0, epsilon = 1e-11);
        assert!(r.evaluations > 0);
    }

    #[test]
    fn nested_negative_bound_is_rejected() {
        let b = |v: &[f64]| v[0] - 0.5;
        let r = integrate_nested(&|_| 1.0, (0.0, 1.0), &[&b], Tolerance::default());
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
