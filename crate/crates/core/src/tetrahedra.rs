//! Tetrahedron and polyhedron volumes from dihedral angles: Milnor's ideal
//! tetrahedron, the Lambert cube, the ideal symmetric octahedron, and general
//! tetrahedra by the Derevnin–Mednykh integral and the Murakami–Yano formula.
//!
//! Angles `A..F` are dihedral angles with `(A, D)`, `(B, E)`, `(C, F)` at
//! opposite edges. The triples `{A,B,C}`, `{A,E,F}`, `{B,D,F}`, `{C,D,E}` meet
//! at the four vertices.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::Serialize;

use crate::error::{domain, not_realizable, Result};
use crate::quadrature::{integrate_1d, IntegralResult, Tolerance};
use crate::specfun::{clausen2, lobachevsky};

type LambdaFn = fn(f64) -> Result<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TetraDihedrals {
    angles: [f64; 6],
}

impl TetraDihedrals {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self> {
        Self::from_array([a, b, c, d, e, f])
    }

    pub fn from_array(angles: [f64; 6]) -> Result<Self> {
        for (name, v) in ["A", "B", "C", "D", "E", "F"].iter().zip(angles) {
            if !(v > 0.0 && v < PI) {
                return Err(domain(format!(
                    "dihedral angle {name} = {v} must lie in (0, π)"
                )));
            }
        }
        Ok(Self { angles })
    }

    /// Ideal tetrahedron with `A = D`, `B = E`, `C = F`.
    pub fn ideal_symmetric(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a, b, c, a, b, c)
    }

    pub fn angles(&self) -> [f64; 6] {
        self.angles
    }

    /// The same tetrahedron with the two vertices on edge `A` exchanged
    /// (`B ↔ E`, `C ↔ F`).
    pub fn relabel_across_a(&self) -> Self {
        let [a, b, c, d, e, f] = self.angles;
        Self {
            angles: [a, e, f, d, b, c],
        }
    }

    fn vertex_triples(&self) -> [[f64; 3]; 4] {
        let [a, b, c, d, e, f] = self.angles;
        [[a, b, c], [a, e, f], [b, d, f], [c, d, e]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DmCoefficients {
    pub s: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub z1: f64,
    pub z2: f64,
}

fn raw_coefficients(t: &TetraDihedrals) -> (f64, f64, f64, f64, f64) {
    let [a, b, c, d, e, f] = t.angles;
    let s = a + b + c + d + e + f;
    let args = [
        s,
        a + d,
        b + e,
        c + f,
        d + e + f,
        d + b + c,
        a + e + c,
        a + b + f,
    ];
    let k1 = -args.iter().map(|x| x.cos()).sum::<f64>();
    let k2 = args.iter().map(|x| x.sin()).sum::<f64>();
    let k3 = 2.0 * (a.sin() * d.sin() + b.sin() * e.sin() + c.sin() * f.sin());
    (s, k1, k2, k3, k1 * k1 + k2 * k2 - k3 * k3)
}

/// `ln` of each factor of the integrand's argument, numerator first.
fn log_factors(t: &TetraDihedrals, z: f64) -> f64 {
    let [a, b, c, d, e, f] = t.angles;
    let num = [a + b + c + z, a + e + f + z, b + d + f + z, c + d + e + z]
        .iter()
        .map(|x| (0.5 * x).cos().abs().ln())
        .sum::<f64>();
    let den = [a + b + d + e + z, a + c + d + f + z, b + c + e + f + z, z]
        .iter()
        .map(|x| (0.5 * x).sin().abs().ln())
        .sum::<f64>();
    num - den
}

/// Argument of the logarithm in the Derevnin–Mednykh integrand; equals 1 at
/// the roots `z₁`, `z₂`.
pub fn dm_log_argument(t: &TetraDihedrals, z: f64) -> f64 {
    let [a, b, c, d, e, f] = t.angles;
    let h = |x: f64| 0.5 * x;
    let num = h(a + b + c + z).cos()
        * h(a + e + f + z).cos()
        * h(b + d + f + z).cos()
        * h(c + d + e + z).cos();
    let den = h(a + b + d + e + z).sin()
        * h(a + c + d + f + z).sin()
        * h(b + c + e + f + z).sin()
        * h(z).sin();
    num / den
}

const PROBE_POINTS: usize = 64;

/// Coefficients and roots of the Derevnin–Mednykh integrand, with the
/// realizability checks: `k₄` real, every vertex triple a spherical (or
/// Euclidean, for ideal vertices) triangle, and the log argument in `(0, 1]`
/// between the roots.
pub fn dm_coefficients(t: &TetraDihedrals) -> Result<DmCoefficients> {
    let (s, k1, k2, k3, disc) = raw_coefficients(t);
    if !(disc >= 0.0) {
        return Err(not_realizable(format!(
            "k₁² + k₂² − k₃² = {disc} is negative"
        )));
    }
    for [x, y, z] in t.vertex_triples() {
        if x + y + z < PI - 1e-12 {
            return Err(not_realizable(format!(
                "vertex angles {x}, {y}, {z} sum below π"
            )));
        }
        if x + y - z >= PI || y + z - x >= PI || z + x - y >= PI {
            return Err(not_realizable(format!(
                "vertex angles {x}, {y}, {z} violate the link inequalities"
            )));
        }
    }
    let k4 = disc.sqrt();
    let base = k2.atan2(k1);
    let half = k4.atan2(k3);
    let co = DmCoefficients {
        s,
        k1,
        k2,
        k3,
        k4,
        z1: base - half,
        z2: base + half,
    };
    if !(co.z1 < co.z2) {
        return Err(not_realizable("integrand roots coincide"));
    }
    for i in 1..PROBE_POINTS {
        let z = co.z1 + (co.z2 - co.z1) * i as f64 / PROBE_POINTS as f64;
        let r = dm_log_argument(t, z);
        if !(r > 0.0 && r <= 1.0 + 1e-12) {
            return Err(not_realizable(format!(
                "log argument {r} at z = {z} is outside (0, 1]"
            )));
        }
    }
    Ok(co)
}

/// `−¼ ∫_{z₁}^{z₂} log(…) dz`.
pub fn derevnin_mednykh(t: &TetraDihedrals, tol: Tolerance) -> Result<IntegralResult> {
    let co = dm_coefficients(t)?;
    let mut r = integrate_1d(|z| log_factors(t, z), co.z1, co.z2, tol)?;
    r.value *= -0.25;
    r.error_estimate *= 0.25;
    Ok(r)
}

/// `½ (U(z₁) − U(z₂))` with `U` the Clausen-function combination (the imaginary
/// part of the dilogarithm sum on the unit circle).
pub fn murakami_yano(t: &TetraDihedrals) -> Result<f64> {
    let co = dm_coefficients(t)?;
    let [a, b, c, d, e, f] = t.angles;
    let u = |z: f64| -> Result<f64> {
        let plus = clausen2(z)?
            + clausen2(a + b + d + e + z)?
            + clausen2(a + c + d + f + z)?
            + clausen2(b + c + e + f + z)?;
        let minus = clausen2(PI + a + b + c + z)?
            + clausen2(PI + a + e + f + z)?
            + clausen2(PI + b + d + f + z)?
            + clausen2(PI + c + d + e + z)?;
        Ok(0.5 * (plus - minus))
    };
    Ok(0.5 * (u(co.z1)? - u(co.z2)?))
}

/// `Λ(A) + Λ(B) + Λ(C)` for the ideal tetrahedron, `A + B + C = π`.
pub fn milnor_ideal(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(domain(format!("angles {a}, {b}, {c} must be positive")));
    }
    if (a + b + c - PI).abs() > 1e-9 {
        return Err(domain(format!(
            "ideal tetrahedron angles must sum to π, got {}",
            a + b + c
        )));
    }
    Ok(lobachevsky(a)? + lobachevsky(b)? + lobachevsky(c)?)
}

/// How the auxiliary angle `θ` of the Lambert cube is supplied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LambertTheta {
    Angle(f64),
    /// `θ = atan(√(cosh²V₁ − sin²w₀ sin²w₂) / (cos w₀ cos w₂))`.
    Auxiliary(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambertCubeAngles {
    w: [f64; 3],
    theta: f64,
}

impl LambertCubeAngles {
    pub fn new(w: [f64; 3], theta: LambertTheta) -> Result<Self> {
        for (i, v) in w.iter().enumerate() {
            if !(*v > 0.0 && *v < FRAC_PI_2) {
                return Err(domain(format!(
                    "essential angle w{i} = {v} must lie in (0, π/2)"
                )));
            }
        }
        let theta = match theta {
            LambertTheta::Angle(t) => t,
            LambertTheta::Auxiliary(v1) => {
                if !v1.is_finite() {
                    return Err(domain(format!("auxiliary parameter {v1} is not finite")));
                }
                let radicand = v1.cosh().powi(2) - (w[0].sin() * w[2].sin()).powi(2);
                (radicand.sqrt() / (w[0].cos() * w[2].cos())).atan()
            }
        };
        if !(theta > 0.0 && theta <= FRAC_PI_2) {
            return Err(domain(format!("θ = {theta} must lie in (0, π/2]")));
        }
        Ok(Self { w, theta })
    }

    pub fn w(&self) -> [f64; 3] {
        self.w
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

fn lambert_with(l: LambdaFn, c: &LambertCubeAngles) -> Result<f64> {
    let th = c.theta;
    let mut s = 0.0;
    for w in c.w {
        s += l(w + th)? - l(w - th)?;
    }
    Ok(0.25 * (s - l(2.0 * th)? + 2.0 * l(FRAC_PI_2 - th)?))
}

/// `¼{Σ(Λ(wᵢ+θ) − Λ(wᵢ−θ)) − Λ(2θ) + 2Λ(π/2−θ)}`. The sign is not checked:
/// an arbitrary `θ` need not belong to an actual cube.
pub fn lambert_cube(c: &LambertCubeAngles) -> Result<f64> {
    lambert_with(lobachevsky, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OctahedronAngles {
    a: f64,
    b: f64,
    e: f64,
}

impl OctahedronAngles {
    /// Free angles `A, B, E`; the others are `C = π − A`, `D = π − B`, `F = π − E`.
    pub fn new(a: f64, b: f64, e: f64) -> Result<Self> {
        for (name, v) in [("A", a), ("B", b), ("E", e)] {
            if !(v > 0.0 && v < PI) {
                return Err(domain(format!(
                    "octahedron angle {name} = {v} must lie in (0, π)"
                )));
            }
        }
        Ok(Self { a, b, e })
    }

    pub fn angles(&self) -> [f64; 3] {
        [self.a, self.b, self.e]
    }
}

fn octahedron_with(l: LambdaFn, o: &OctahedronAngles) -> Result<f64> {
    let (a, b, e) = (o.a, o.b, o.e);
    let s = l(0.5 * (PI + a + b + e))?
        + l(0.5 * (PI - a - b + e))?
        + l(0.5 * (PI + a - b - e))?
        + l(0.5 * (PI - a + b - e))?;
    Ok(2.0 * s)
}

/// Ideal symmetric octahedron:
/// `2[Λ((π+A+B+E)/2) + Λ((π−A−B+E)/2) + Λ((π+A−B−E)/2) + Λ((π−A+B−E)/2)]`.
pub fn mohanty_octahedron(o: &OctahedronAngles) -> Result<f64> {
    octahedron_with(lobachevsky, o)
}

/// Realizable tetrahedra near the ideal symmetric family: `A + B + C = π`
/// with `A, B ∈ (0.6, 1.4)`, `C ≥ 0.3`, each of the six angles then shifted
/// by at most `0.05`; only inputs accepted by [`dm_coefficients`] are kept.
pub fn realizable_samples<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<TetraDihedrals> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (a, b) = (rng.gen_range(0.6..1.4), rng.gen_range(0.6..1.4));
        let c = PI - a - b;
        if c < 0.3 {
            continue;
        }
        let mut angles = [a, b, c, a, b, c];
        for x in angles.iter_mut() {
            *x += rng.gen_range(-0.05..0.05);
        }
        if let Ok(t) = TetraDihedrals::from_array(angles) {
            if dm_coefficients(&t).is_ok() {
                out.push(t);
            }
        }
    }
    out
}
