//! Lobachevsky and Clausen functions.
//!
//! `Λ(x) = −∫₀ˣ ln|2 sin ζ| dζ` and `Cl₂(x) = Im Li₂(e^{ix}) = 2Λ(x/2)`.
//!
//! Both are evaluated from the expansion
//!
//! ```text
//! Cl₂(θ) = θ − θ ln|θ| + Σ_{k≥1} ζ(2k) / (k(2k+1)) · θ (θ/2π)^{2k},   |θ| < 2π
//! ```
//!
//! after reducing `θ` into `[−π, π]`, where the series ratio is at most 1/4.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use crate::error::{domain, Result};
use crate::quadrature::{integrate_1d_offsets, Tolerance};

const SERIES_TERMS: usize = 30;

fn series_coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut c = [0.0; SERIES_TERMS];
        for (i, slot) in c.iter_mut().enumerate() {
            let k = (i + 1) as f64;
            *slot = zeta_even(i + 1) / (k * (2.0 * k + 1.0));
        }
        c
    })
}

/// ζ(2k) for k ≥ 1.
fn zeta_even(k: usize) -> f64 {
    let pi2 = PI * PI;
    match k {
        1 => pi2 / 6.0,
        2 => pi2 * pi2 / 90.0,
        3 => pi2 * pi2 * pi2 / 945.0,
        4 => pi2.powi(4) / 9450.0,
        5 => pi2.powi(5) / 93555.0,
        // n^{-12} tail beyond 60 is below 1e-21
        _ => (1..=60).rev().map(|n| (n as f64).powi(-2 * k as i32)).sum(),
    }
}

/// Reduces `x` to `[−π, π]` modulo 2π.
fn reduce_two_pi(x: f64) -> f64 {
    let r = x - TAU * (x / TAU).round();
    r.clamp(-PI, PI)
}

fn clausen_reduced(theta: f64) -> f64 {
    if theta == 0.0 {
        return 0.0;
    }
    let w = (theta / TAU) * (theta / TAU);
    let mut power = 1.0;
    let mut sum = 0.0;
    for &c in series_coefficients() {
        power *= w;
        let term = c * power;
        sum += term;
        if term < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    theta * (1.0 - theta.abs().ln() + sum)
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("argument {x} is not finite")))
    }
}

/// Clausen function `Cl₂(x) = Σ sin(nx)/n²`.
pub fn clausen2(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(clausen_reduced(reduce_two_pi(x)))
}

/// Imaginary part of `Li₂(e^{ix})` for real `x`; identical to [`clausen2`].
pub fn im_li2_unit(x: f64) -> Result<f64> {
    clausen2(x)
}

/// Lobachevsky function `Λ(x)`; odd and π-periodic.
pub fn lobachevsky(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(0.5 * clausen_reduced(reduce_two_pi(2.0 * x)))
}

/// `Λ(x)` from its defining integral, using only oddness and π-periodicity
/// to bring `x` into `[0, π/2]`. Slower, but independent of the series path.
pub fn lobachevsky_by_quadrature(x: f64) -> Result<f64> {
    check_finite(x)?;
    let mut r = x - PI * (x / PI).round();
    let sign = if r < 0.0 { -1.0 } else { 1.0 };
    r = r.abs();
    if r == 0.0 {
        return Ok(0.0);
    }
    // ln(2 sin ζ) written through the exact offset from 0 near the singular end.
    let integrand = |p: crate::quadrature::Abscissa| -(2.0 * p.from_lo.sin()).ln();
    let tol = Tolerance::new(1e-13, 2e-14)?;
    let res = integrate_1d_offsets(integrand, 0.0, r, tol)?;
    Ok(sign * res.value)
}
