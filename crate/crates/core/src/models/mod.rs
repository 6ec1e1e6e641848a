//! Coordinate systems on hyperbolic n-space: paracycle (horospherical),
//! Poincaré half-space, hyperbolic orthogonal, hyperbolic spherical and the
//! projective (Cayley–Klein) ball.
//!
//! Every routine carries the curvature parameter `k` explicitly and fixes the
//! volume normalisation constant to 1, so a paraspherical sector over a unit
//! base has volume `k/(n−1)`.
//!
//! Internally the orthogonal, spherical and Klein coordinates are linked through
//! the hyperboloid model: a point with orthogonal coordinates `x` has spatial
//! hyperboloid components
//!
//! ```text
//! Y_{n−1} = sinh x_{n−1}
//! Y_j     = cosh x_{n−1} ⋯ cosh x_{j+1} · sinh x_j        (1 ≤ j ≤ n−2)
//! Y_n     = cosh x_{n−1} ⋯ cosh x_1 · sinh x_n
//! ```
//!
//! (all lengths divided by `k`), so that `cosh r = Π cosh x_i` and the Klein
//! point is `k·Y / sqrt(1 + |Y|²)`.

mod density;
mod points;
mod transforms;
mod volume;

pub use density::{
    density_halfspace, density_klein, density_orthogonal, density_paracycle, density_spherical,
    paracycle_brick_volume,
};
pub(crate) use points::check_dim;
pub use points::{
    Curvature, PointHalfspace, PointKlein, PointOrthogonal, PointParacycle, PointSpherical,
    MAX_DIM, MIN_DIM,
};
pub use transforms::{
    chord_arc, halfspace_to_paracycle, klein_distance, klein_to_orthogonal, klein_to_spherical,
    orthogonal_to_klein, orthogonal_to_paracycle, orthogonal_to_spherical, paracycle_to_halfspace,
    paracycle_to_orthogonal, spherical_to_klein, spherical_to_orthogonal,
};
pub use volume::{coordinate_volume, CoordinateRegion, CoordinateSystem};

/// `ln cosh x` without overflow for large `|x|`.
pub(crate) fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    if a < 20.0 {
        a.cosh().ln()
    } else {
        a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
    }
}
