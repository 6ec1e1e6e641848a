//! Volume densities of the five coordinate systems.

use super::points::{
    check_dim, Curvature, PointHalfspace, PointKlein, PointOrthogonal, PointParacycle,
    PointSpherical,
};
use crate::error::{domain, Result};

/// `e^{−(n−1)ξₙ/k}`.
pub fn density_paracycle(p: &PointParacycle, k: Curvature) -> f64 {
    paracycle_raw(p.coords(), k.get())
}

pub(crate) fn paracycle_raw(xi: &[f64], k: f64) -> f64 {
    let n = xi.len() as f64;
    (-(n - 1.0) * xi[xi.len() - 1] / k).exp()
}

/// Volume of the paracycle sector `[0,a₁]×…×[0,a_{n−1}]×[0,aₙ]`:
/// `k/(n−1) · Π_{i<n} aᵢ · (1 − e^{−(n−1)aₙ/k})`. `aₙ` may be `+∞`.
pub fn paracycle_brick_volume(sides: &[f64], k: Curvature) -> Result<f64> {
    check_dim(sides.len())?;
    let n = sides.len();
    let (base, height) = sides.split_at(n - 1);
    if let Some(bad) = base.iter().find(|a| !(**a > 0.0) || !a.is_finite()) {
        return Err(domain(format!(
            "base side {bad} must be finite and positive"
        )));
    }
    let h = height[0];
    if !(h > 0.0) {
        return Err(domain(format!("sector height {h} must be positive")));
    }
    let m = (n - 1) as f64;
    let area: f64 = base.iter().product();
    Ok(k.get() / m * area * -(-(m * h) / k.get()).exp_m1())
}

/// Half-space integrand `k / xₙⁿ`.
pub fn density_halfspace(p: &PointHalfspace, k: Curvature) -> Result<f64> {
    let height = p.coords()[p.dim() - 1];
    if !(height > 0.0) {
        return Err(domain(format!(
            "half-space height {height} must be positive"
        )));
    }
    Ok(halfspace_raw(p.coords(), k.get()))
}

pub(crate) fn halfspace_raw(x: &[f64], k: f64) -> f64 {
    k / x[x.len() - 1].powi(x.len() as i32)
}

/// `Π_{i=1}^{n−1} cosh^i(xᵢ/k)`.
pub fn density_orthogonal(p: &PointOrthogonal, k: Curvature) -> f64 {
    orthogonal_raw(p.coords(), k.get())
}

pub(crate) fn orthogonal_raw(x: &[f64], k: f64) -> f64 {
    x[..x.len() - 1]
        .iter()
        .enumerate()
        .map(|(i, xi)| (xi / k).cosh().powi(i as i32 + 1))
        .product()
}

/// `k^{n−1} sinh^{n−1}(r/k) · sin^{n−2}φ_{n−1} ⋯ sin φ₂`.
pub fn density_spherical(p: &PointSpherical, k: Curvature) -> f64 {
    spherical_raw(p.r(), p.angles(), k.get())
}

pub(crate) fn spherical_raw(r: f64, angles: &[f64], k: f64) -> f64 {
    let radial = (k * (r / k).sinh()).powi(angles.len() as i32);
    let angular: f64 = angles
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, phi)| phi.sin().powi(i as i32))
        .product();
    radial * angular
}

/// `(1 − |X/k|²)^{−(n+1)/2}`; defined strictly inside the ball.
pub fn density_klein(p: &PointKlein, k: Curvature) -> Result<f64> {
    klein_raw(p.coords(), k.get()).ok_or_else(|| {
        domain(format!(
            "Klein point of norm {} is not inside the ball",
            p.radius()
        ))
    })
}

/// `None` outside the open ball.
pub(crate) fn klein_raw(x: &[f64], k: f64) -> Option<f64> {
    let n = x.len() as f64;
    let s: f64 = x.iter().map(|c| (c / k).powi(2)).sum();
    (s < 1.0).then(|| (1.0 - s).powf(-(n + 1.0) / 2.0))
}
