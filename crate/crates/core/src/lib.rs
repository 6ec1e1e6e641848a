#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod mc;
pub mod models;
pub mod orthoscheme;
pub mod quadrature;
pub mod solids;
pub mod specfun;
pub mod tetrahedra;

pub use error::{Error, Result};
pub use mc::{McEstimate, Region};
pub use models::Curvature;
pub use models::{PointKlein, PointOrthogonal};
pub use orthoscheme::{NdimOrthoscheme, OrthoschemeAngles, OrthoschemeEdges};
pub use quadrature::{IntegralResult, Tolerance};
pub use tetrahedra::{LambertCubeAngles, OctahedronAngles, TetraDihedrals};
