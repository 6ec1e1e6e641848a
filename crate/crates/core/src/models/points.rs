use serde::Serialize;

use crate::error::{domain, Result};

/// Smallest supported dimension.
pub const MIN_DIM: usize = 2;
/// Largest supported dimension.
pub const MAX_DIM: usize = 8;

/// Space constant `k > 0`; sectional curvature is `−1/k²`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Curvature(f64);

impl Curvature {
    pub const UNIT: Curvature = Curvature(1.0);

    pub fn new(k: f64) -> Result<Self> {
        if k > 0.0 && k.is_finite() {
            Ok(Self(k))
        } else {
            Err(domain(format!(
                "curvature parameter k must be finite and positive, got {k}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for Curvature {
    fn default() -> Self {
        Self::UNIT
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(domain(format!(
            "dimension {n} outside supported range {MIN_DIM}..={MAX_DIM}"
        )))
    }
}

fn check_coords(coords: &[f64]) -> Result<()> {
    check_dim(coords.len())?;
    if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
        return Err(domain(format!("coordinate {bad} is not finite")));
    }
    Ok(())
}

macro_rules! cartesian_point {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Serialize)]
        pub struct $name(Vec<f64>);

        impl $name {
            pub fn new(coords: Vec<f64>) -> Result<Self> {
                check_coords(&coords)?;
                Ok(Self(coords))
            }

            pub fn origin(n: usize) -> Result<Self> {
                Self::new(vec![0.0; n])
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[f64] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<f64> {
                self.0
            }
        }
    };
}

cartesian_point!(
    /// Paracycle coordinates `(ξ₁, …, ξₙ)`: arc lengths along the paracycles
    /// through the origin, and the signed distance `ξₙ` to the base parasphere.
    PointParacycle
);
cartesian_point!(
    /// Half-space model coordinates; the last one is the height `xₙ > 0`.
    PointHalfspace
);
cartesian_point!(
    /// Hyperbolic orthogonal coordinates `(x₁, …, xₙ)` obtained by successive
    /// orthogonal projections onto coordinate subspaces.
    PointOrthogonal
);
cartesian_point!(
    /// Euclidean Cartesian coordinates in the Klein ball of radius `k`.
    PointKlein
);

impl PointKlein {
    /// Euclidean norm `Rₙ`.
    pub fn radius(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Hyperbolic spherical coordinates: radius `r ≥ 0`, azimuth `φ₁ ∈ [0, 2π)`
/// and polar angles `φ₂, …, φ_{n−1} ∈ [0, π]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSpherical {
    r: f64,
    angles: Vec<f64>,
}

impl PointSpherical {
    pub fn new(r: f64, angles: Vec<f64>) -> Result<Self> {
        check_dim(angles.len() + 1)?;
        if !(r >= 0.0) || !r.is_finite() {
            return Err(domain(format!(
                "spherical radius {r} must be finite and >= 0"
            )));
        }
        if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(domain(format!("angle {bad} is not finite")));
        }
        Ok(Self { r, angles })
    }

    pub fn dim(&self) -> usize {
        self.angles.len() + 1
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// `[φ₁, …, φ_{n−1}]`.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Coordinate vector in integration layout `[r, φ₁, …, φ_{n−1}]`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.dim());
        v.push(self.r);
        v.extend_from_slice(&self.angles);
        v
    }
}
