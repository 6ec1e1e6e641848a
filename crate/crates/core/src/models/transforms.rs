//! Coordinate changes between the five systems and the Klein-ball distance.

use std::f64::consts::TAU;

use super::ln_cosh;
use super::points::{
    Curvature, PointHalfspace, PointKlein, PointOrthogonal, PointParacycle, PointSpherical,
};
use crate::error::{domain, Result};

/// Half-chord `s = k sinh(d/k)` and sagitta-like distance `z = k ln cosh(d/k)`
/// of a paracycle arc whose halving points are `d` apart along the axis.
pub fn chord_arc(d: f64, k: Curvature) -> Result<(f64, f64)> {
    if !(d >= 0.0) || !d.is_finite() {
        return Err(domain(format!("length {d} must be finite and >= 0")));
    }
    let kk = k.get();
    Ok((kk * (d / kk).sinh(), kk * ln_cosh(d / kk)))
}

/// Half-space chart `xᵢ = ξᵢ (i < n)`, `xₙ = e^{ξₙ/k}`.
pub fn paracycle_to_halfspace(p: &PointParacycle, k: Curvature) -> PointHalfspace {
    let mut c = p.coords().to_vec();
    let n = c.len();
    c[n - 1] = (c[n - 1] / k.get()).exp();
    PointHalfspace::new(c).expect("finite image of a finite point")
}

pub fn halfspace_to_paracycle(p: &PointHalfspace, k: Curvature) -> Result<PointParacycle> {
    let mut c = p.coords().to_vec();
    let n = c.len();
    if !(c[n - 1] > 0.0) {
        return Err(domain(format!(
            "half-space height {} must be positive",
            c[n - 1]
        )));
    }
    c[n - 1] = k.get() * c[n - 1].ln();
    PointParacycle::new(c)
}

pub fn orthogonal_to_paracycle(p: &PointOrthogonal, k: Curvature) -> PointParacycle {
    let kk = k.get();
    let x = p.coords();
    let n = x.len();
    let xi_n = x[n - 1] - kk * x[..n - 1].iter().map(|xi| ln_cosh(xi / kk)).sum::<f64>();
    let scale = (xi_n / kk).exp();
    let mut out = vec![0.0; n];
    out[n - 1] = xi_n;
    let mut chain = 1.0;
    for i in (0..n - 1).rev() {
        out[i] = scale * kk * chain * (x[i] / kk).sinh();
        chain *= (x[i] / kk).cosh();
    }
    PointParacycle::new(out).expect("finite image of a finite point")
}

/// Inverse of [`orthogonal_to_paracycle`], solving the triangular system from
/// `x_{n−1}` downward.
pub fn paracycle_to_orthogonal(p: &PointParacycle, k: Curvature) -> PointOrthogonal {
    let kk = k.get();
    let xi = p.coords();
    let n = xi.len();
    let scale = (-xi[n - 1] / kk).exp();
    let mut x = vec![0.0; n];
    let mut chain = 1.0;
    let mut log_chain = 0.0;
    for i in (0..n - 1).rev() {
        let t = (scale * xi[i] / kk / chain).asinh();
        x[i] = kk * t;
        chain *= t.cosh();
        log_chain += ln_cosh(t);
    }
    x[n - 1] = xi[n - 1] + kk * log_chain;
    PointOrthogonal::new(x).expect("finite image of a finite point")
}

/// Spatial hyperboloid components of an orthogonal point, lengths in units of `k`.
fn hyperboloid_from_orthogonal(x: &[f64], kk: f64) -> Vec<f64> {
    let n = x.len();
    let mut y = vec![0.0; n];
    let mut chain = 1.0;
    for i in (0..n - 1).rev() {
        y[i] = chain * (x[i] / kk).sinh();
        chain *= (x[i] / kk).cosh();
    }
    y[n - 1] = chain * (x[n - 1] / kk).sinh();
    y
}

fn orthogonal_from_hyperboloid(y: &[f64], kk: f64) -> Vec<f64> {
    let n = y.len();
    let mut x = vec![0.0; n];
    let mut chain = 1.0;
    for i in (0..n - 1).rev() {
        let t = (y[i] / chain).asinh();
        x[i] = kk * t;
        chain *= t.cosh();
    }
    x[n - 1] = kk * (y[n - 1] / chain).asinh();
    x
}

/// Unit direction from `[φ₁, …, φ_{n−1}]`.
fn direction_from_angles(phi: &[f64]) -> Vec<f64> {
    let n = phi.len() + 1;
    let mut u = vec![0.0; n];
    let mut s = 1.0;
    for j in (1..n - 1).rev() {
        u[j] = s * phi[j].cos();
        s *= phi[j].sin();
    }
    u[0] = s * phi[0].cos();
    u[n - 1] = s * phi[0].sin();
    u
}

/// Angles of a (not necessarily normalised) direction; zero vector gives the
/// conventional `φ₁ = 0, φⱼ = π/2`.
fn angles_from_direction(u: &[f64]) -> Vec<f64> {
    let n = u.len();
    let mut phi = vec![0.0; n - 1];
    let mut rest = u[0] * u[0] + u[n - 1] * u[n - 1];
    let mut partial = vec![0.0; n];
    for j in 1..n - 1 {
        partial[j] = rest;
        rest += u[j] * u[j];
    }
    for j in 1..n - 1 {
        phi[j] = partial[j].sqrt().atan2(u[j]);
    }
    let mut azimuth = u[n - 1].atan2(u[0]);
    if azimuth < 0.0 {
        azimuth += TAU;
    }
    if azimuth >= TAU {
        azimuth = 0.0;
    }
    phi[0] = azimuth;
    phi
}

pub fn orthogonal_to_spherical(p: &PointOrthogonal, k: Curvature) -> PointSpherical {
    let kk = k.get();
    let y = hyperboloid_from_orthogonal(p.coords(), kk);
    let norm = y.iter().map(|c| c * c).sum::<f64>().sqrt();
    PointSpherical::new(kk * norm.asinh(), angles_from_direction(&y))
        .expect("finite image of a finite point")
}

pub fn spherical_to_orthogonal(p: &PointSpherical, k: Curvature) -> PointOrthogonal {
    let kk = k.get();
    let sh = (p.r() / kk).sinh();
    let y: Vec<f64> = direction_from_angles(p.angles())
        .iter()
        .map(|u| sh * u)
        .collect();
    PointOrthogonal::new(orthogonal_from_hyperboloid(&y, kk))
        .expect("finite image of a finite point")
}

pub fn spherical_to_klein(p: &PointSpherical, k: Curvature) -> PointKlein {
    let radius = k.get() * (p.r() / k.get()).tanh();
    let x = direction_from_angles(p.angles())
        .iter()
        .map(|u| radius * u)
        .collect();
    PointKlein::new(x).expect("finite image of a finite point")
}

pub fn klein_to_spherical(p: &PointKlein, k: Curvature) -> Result<PointSpherical> {
    let kk = k.get();
    let radius = p.radius();
    if !(radius < kk) {
        return Err(domain(format!(
            "Klein point of norm {radius} is not inside the ball of radius {kk}"
        )));
    }
    PointSpherical::new(
        kk * (radius / kk).atanh(),
        angles_from_direction(p.coords()),
    )
}

pub fn orthogonal_to_klein(p: &PointOrthogonal, k: Curvature) -> PointKlein {
    let kk = k.get();
    let y = hyperboloid_from_orthogonal(p.coords(), kk);
    let y0 = (1.0 + y.iter().map(|c| c * c).sum::<f64>()).sqrt();
    PointKlein::new(y.iter().map(|c| kk * c / y0).collect())
        .expect("finite image of a finite point")
}

fn hyperboloid_from_klein(p: &PointKlein, kk: f64) -> Result<(f64, Vec<f64>)> {
    let s: f64 = p.coords().iter().map(|x| (x / kk).powi(2)).sum();
    if !(s < 1.0) {
        return Err(domain(format!(
            "Klein point with |X/k|² = {s} is not inside the ball"
        )));
    }
    let y0 = 1.0 / (1.0 - s).sqrt();
    Ok((y0, p.coords().iter().map(|x| y0 * x / kk).collect()))
}

pub fn klein_to_orthogonal(p: &PointKlein, k: Curvature) -> Result<PointOrthogonal> {
    let (_, y) = hyperboloid_from_klein(p, k.get())?;
    PointOrthogonal::new(orthogonal_from_hyperboloid(&y, k.get()))
}

/// Hyperbolic distance between two points of the Klein ball.
pub fn klein_distance(p: &PointKlein, q: &PointKlein, k: Curvature) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(domain(format!(
            "dimension mismatch {} vs {}",
            p.dim(),
            q.dim()
        )));
    }
    let kk = k.get();
    let (p0, py) = hyperboloid_from_klein(p, kk)?;
    let (q0, qy) = hyperboloid_from_klein(q, kk)?;
    // Minkowski norm of the difference is 2 sinh(d/2k).
    let spatial: f64 = py.iter().zip(&qy).map(|(a, b)| (a - b) * (a - b)).sum();
    let t = p0 - q0;
    let chord = (spatial - t * t).max(0.0).sqrt();
    Ok(2.0 * kk * (0.5 * chord).asinh())
}
