//! Volumes of regions described in one of the coordinate systems, by nested
//! quadrature of the system's density.

use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use serde::Serialize;

use super::density::{halfspace_raw, klein_raw, orthogonal_raw, paracycle_raw, spherical_raw};
use super::points::{check_dim, Curvature};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_nested, BoundFn, IntegralResult, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordinateSystem {
    Paracycle,
    Halfspace,
    Orthogonal,
    Spherical,
    Klein,
}

impl FromStr for CoordinateSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paracycle" => Ok(Self::Paracycle),
            "halfspace" | "half-space" => Ok(Self::Halfspace),
            "orthogonal" => Ok(Self::Orthogonal),
            "spherical" => Ok(Self::Spherical),
            "klein" | "projective" => Ok(Self::Klein),
            other => Err(domain(format!("unknown coordinate system '{other}'"))),
        }
    }
}

/// A region `{ lo ≤ v₀ ≤ hi, 0 ≤ v₁ ≤ f₁(v₀), 0 ≤ v₂ ≤ f₂(v₀, v₁), … }` where
/// `v_j` is coordinate number `order[j]`.
///
/// Spherical coordinates use the layout `[r, φ₁, …, φ_{n−1}]`.
pub struct CoordinateRegion<'a> {
    dim: usize,
    order: Vec<usize>,
    outer: (f64, f64),
    bounds: Vec<Box<BoundFn<'a>>>,
}

impl<'a> CoordinateRegion<'a> {
    pub fn new(
        order: Vec<usize>,
        outer: (f64, f64),
        bounds: Vec<Box<BoundFn<'a>>>,
    ) -> Result<Self> {
        let dim = order.len();
        check_dim(dim)?;
        let mut seen = vec![false; dim];
        for &i in &order {
            if i >= dim || seen[i] {
                return Err(domain(format!(
                    "integration order {order:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        if bounds.len() + 1 != dim {
            return Err(domain(format!(
                "{dim} coordinates need {} inner bounds",
                dim - 1
            )));
        }
        if !(outer.0.is_finite() && outer.1.is_finite()) {
            return Err(domain("outer limits must be finite"));
        }
        Ok(Self {
            dim,
            order,
            outer,
            bounds,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Replaces the range of the outermost variable.
    pub fn with_outer(mut self, lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(domain("outer limits must be finite"));
        }
        self.outer = (lo, hi);
        Ok(self)
    }

    /// Coordinate box `[0, a₁] × … × [0, aₙ]`, last coordinate outermost.
    pub fn brick(sides: &[f64]) -> Result<CoordinateRegion<'static>> {
        check_dim(sides.len())?;
        if let Some(bad) = sides.iter().find(|a| !(**a >= 0.0) || !a.is_finite()) {
            return Err(domain(format!("side {bad} must be finite and >= 0")));
        }
        let n = sides.len();
        let mut order = vec![n - 1];
        order.extend(0..n - 1);
        let bounds = sides[..n - 1]
            .iter()
            .map(|&a| Box::new(move |_: &[f64]| a) as Box<BoundFn<'static>>)
            .collect();
        CoordinateRegion::new(order, (0.0, sides[n - 1]), bounds)
    }

    /// Ball of the given radius about the origin, in spherical coordinates.
    pub fn spherical_ball(n: usize, radius: f64) -> Result<CoordinateRegion<'static>> {
        check_dim(n)?;
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(domain(format!("radius {radius} must be finite and >= 0")));
        }
        let mut order = vec![0];
        order.extend((1..n).rev());
        let bounds = (1..n)
            .rev()
            .map(|j| {
                let top = if j == 1 { TAU } else { PI };
                Box::new(move |_: &[f64]| top) as Box<BoundFn<'static>>
            })
            .collect();
        CoordinateRegion::new(order, (0.0, radius), bounds)
    }

    /// Positive orthant of a Euclidean ball of radius `R` in Klein coordinates.
    pub fn klein_ball_orthant(n: usize, radius: f64) -> Result<CoordinateRegion<'static>> {
        check_dim(n)?;
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(domain(format!("radius {radius} must be finite and >= 0")));
        }
        let r2 = radius * radius;
        let bounds = (1..n)
            .map(|_| {
                Box::new(move |v: &[f64]| {
                    (r2 - v.iter().map(|x| x * x).sum::<f64>()).max(0.0).sqrt()
                }) as Box<BoundFn<'static>>
            })
            .collect();
        CoordinateRegion::new((0..n).collect(), (0.0, radius), bounds)
    }

    /// Orthoscheme with orthogonal edges `a₁, …, aₙ` in orthogonal coordinates:
    /// vertices `0`, `aₙeₙ`, then `x₁ = a₁`, then `x₂ = a₂`, … switched on one
    /// at a time. Faces are (lengths in units of `k`)
    /// `tanh x₁ = (tanh a₁ / sinh aₙ) sinh xₙ` and
    /// `tanh xⱼ = (tanh aⱼ / sinh a_{j−1}) sinh x_{j−1}`.
    pub fn orthoscheme(edges: &[f64], k: Curvature) -> Result<CoordinateRegion<'static>> {
        check_dim(edges.len())?;
        if let Some(bad) = edges.iter().find(|a| !(**a > 0.0) || !a.is_finite()) {
            return Err(domain(format!("edge {bad} must be finite and positive")));
        }
        let n = edges.len();
        let mut order = vec![n - 1];
        order.extend(0..n - 1);
        let mut bounds: Vec<Box<BoundFn<'static>>> = Vec::with_capacity(n - 1);
        for j in 0..n - 1 {
            let prev = if j == 0 { edges[n - 1] } else { edges[j - 1] };
            let kk = k.get();
            let ratio = (edges[j] / kk).tanh() / (prev / kk).sinh();
            bounds.push(Box::new(move |v: &[f64]| {
                let t = ratio * (v[v.len() - 1] / kk).sinh();
                kk * t.clamp(0.0, 1.0).atanh()
            }));
        }
        CoordinateRegion::new(order, (0.0, edges[n - 1]), bounds)
    }
}

/// Volume of `region` measured with the density of `system`.
pub fn coordinate_volume(
    system: CoordinateSystem,
    region: &CoordinateRegion<'_>,
    k: Curvature,
    tol: Tolerance,
) -> Result<IntegralResult> {
    let kk = k.get();
    let n = region.dim;
    let integrand = |v: &[f64]| -> f64 {
        let mut c = [0.0; super::MAX_DIM];
        for (slot, value) in region.order.iter().zip(v) {
            c[*slot] = *value;
        }
        let c = &c[..n];
        match system {
            CoordinateSystem::Paracycle => paracycle_raw(c, kk),
            CoordinateSystem::Halfspace if c[n - 1] > 0.0 => halfspace_raw(c, kk),
            CoordinateSystem::Halfspace => f64::NAN,
            CoordinateSystem::Orthogonal => orthogonal_raw(c, kk),
            CoordinateSystem::Spherical => spherical_raw(c[0], &c[1..], kk),
            CoordinateSystem::Klein => klein_raw(c, kk).unwrap_or(f64::NAN),
        }
    };
    let bounds: Vec<&BoundFn<'_>> = region.bounds.iter().map(|b| b.as_ref()).collect();
    integrate_nested(&integrand, region.outer, &bounds, tol)
}
