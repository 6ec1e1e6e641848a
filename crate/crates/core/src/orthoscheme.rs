//! Volume of the three-dimensional orthoscheme (birectangular tetrahedron)
//! from its orthogonal edges `a, b, c` and from its non-right dihedral angles.
//!
//! Geometry, with `k = 1`: the orthoscheme `P₀P₁P₂P₃` has `P₀P₁ = a`,
//! `P₁P₂ = b`, `P₂P₃ = c`, each edge orthogonal to the previous ones. The
//! three non-right dihedral angles sit at the edges `a` (angle `α`), `c`
//! (angle `γ`) and the long diagonal `P₀P₃` of length `Z`,
//! `cosh Z = cosh a cosh b cosh c` (angle `β`). The auxiliary angle `δ`
//! satisfies
//!
//! ```text
//! tan δ = tanh a · tan α = tanh c · tan γ = tanh a tanh c / sinh b.
//! ```

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use serde::Serialize;

use crate::error::{domain, not_realizable, Error, Result};
use crate::models::{coordinate_volume, CoordinateRegion, CoordinateSystem, Curvature};
use crate::quadrature::{integrate_1d, integrate_1d_offsets, Abscissa, IntegralResult, Tolerance};
use crate::specfun::lobachevsky;

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} = {v} must be finite and positive")))
    }
}

fn scale(mut r: IntegralResult, c: f64) -> IntegralResult {
    r.value *= c;
    r.error_estimate *= c.abs();
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoschemeEdges {
    a: f64,
    b: f64,
    c: f64,
}

impl OrthoschemeEdges {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        positive("a", a)?;
        positive("b", b)?;
        positive("c", c)?;
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Hypotenuse `z` of the right-angled face: `cosh z = cosh a cosh b`.
    pub fn hypotenuse(&self) -> f64 {
        (self.a.cosh() * self.b.cosh()).acosh()
    }

    /// Long diagonal `Z`: `cosh Z = cosh a cosh b cosh c`.
    pub fn diagonal(&self) -> f64 {
        (self.a.cosh() * self.b.cosh() * self.c.cosh()).acosh()
    }

    /// Edges multiplied by `f`.
    pub fn scaled(&self, f: f64) -> Result<Self> {
        Self::new(self.a * f, self.b * f, self.c * f)
    }
}

/// Dihedral angles `α` (edge `a`), `β` (diagonal), `γ` (edge `c`) and the
/// derived `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoschemeAngles {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
}

impl OrthoschemeAngles {
    /// Validates `cos²β > sin²α sin²γ` and `δ < α, γ, π/2 − β`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let delta = delta_from_angles(alpha, beta, gamma)?;
        if !(delta < alpha && delta < gamma && delta < FRAC_PI_2 - beta) {
            return Err(not_realizable(format!(
                "δ = {delta} must be below α = {alpha}, γ = {gamma} and π/2 − β = {}",
                FRAC_PI_2 - beta
            )));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// `tan δ = √(cos²β − sin²α sin²γ) / (cos α cos γ)`.
pub fn delta_from_angles(alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    for (name, v) in [("α", alpha), ("β", beta), ("γ", gamma)] {
        if !(v > 0.0 && v < FRAC_PI_2) {
            return Err(domain(format!("{name} = {v} must lie in (0, π/2)")));
        }
    }
    let radicand = beta.cos().powi(2) - (alpha.sin() * gamma.sin()).powi(2);
    if !(radicand > 0.0) {
        return Err(not_realizable(format!(
            "cos²β − sin²α sin²γ = {radicand} is not positive"
        )));
    }
    Ok((radicand.sqrt() / (alpha.cos() * gamma.cos())).atan())
}

pub fn edges_to_angles(e: &OrthoschemeEdges) -> OrthoschemeAngles {
    let (a, b, c) = (e.a, e.b, e.c);
    let sb = b.sinh();
    let tan_delta = a.tanh() * c.tanh() / sb;
    OrthoschemeAngles {
        alpha: (c.tanh() / sb).atan(),
        beta: (e.diagonal().tanh() / tan_delta).atan(),
        gamma: (a.tanh() / sb).atan(),
        delta: tan_delta.atan(),
    }
}

pub fn angles_to_edges(ang: &OrthoschemeAngles) -> Result<OrthoschemeEdges> {
    let d = ang.delta;
    let half_log = |x: f64, y: f64| 0.5 * (x / y).ln();
    let a = half_log((ang.alpha + d).sin(), (ang.alpha - d).sin());
    let c = half_log((ang.gamma + d).sin(), (ang.gamma - d).sin());
    let diag = half_log((ang.beta - d).cos(), (ang.beta + d).cos());
    let ratio = diag.cosh() / (a.cosh() * c.cosh());
    if !(ratio >= 1.0 - 1e-12) {
        return Err(not_realizable(format!(
            "cosh Z = {} is below cosh a cosh c = {}",
            diag.cosh(),
            a.cosh() * c.cosh()
        )));
    }
    // Same b as acosh(ratio), without its loss of precision near b = 0.
    let b = (a.tanh() * c.tanh() / d.tan()).asinh();
    OrthoschemeEdges::new(a, b, c).map_err(|e| match e {
        Error::Domain(m) => not_realizable(m),
        other => other,
    })
}

/// `ln[(sinh b + t sinh λ)/(sinh b − t sinh λ)]` with `t = tanh c`, written so
/// that the denominator keeps full precision as `λ → b` and `t → 1`.
fn log_ratio(b: f64, tanh_c: f64, one_minus_tanh_c: f64, p: Abscissa) -> f64 {
    let sl = p.x.sinh();
    let num = b.sinh() + tanh_c * sl;
    let den = 2.0 * (0.5 * (b + p.x)).cosh() * (0.5 * p.from_hi).sinh() + one_minus_tanh_c * sl;
    num.ln() - den.ln()
}

fn one_minus_tanh(c: f64) -> f64 {
    2.0 / ((2.0 * c).exp() + 1.0)
}

/// Orthoscheme volume from its edges (`k = 1`):
///
/// ```text
/// v = ¼ ∫₀^b tanh λ sinh a / √(tanh²b cosh²λ + sinh²a sinh²λ)
///       · ln[(sinh b + tanh c sinh λ)/(sinh b − tanh c sinh λ)] dλ
/// ```
pub fn volume_edges(e: &OrthoschemeEdges, tol: Tolerance) -> Result<IntegralResult> {
    let (a, b, c) = (e.a, e.b, e.c);
    let (tc, omt) = (c.tanh(), one_minus_tanh(c));
    let q = b.tanh() / a.sinh();
    let f = |p: Abscissa| {
        let l = p.x;
        let w = l.tanh() / ((q * l.cosh()).powi(2) + l.sinh().powi(2)).sqrt();
        if w == 0.0 {
            return 0.0;
        }
        w * log_ratio(b, tc, omt, p)
    };
    Ok(scale(integrate_1d_offsets(f, 0.0, b, tol)?, 0.25))
}

/// `v_k(a, b, c) = k³ v₁(a/k, b/k, c/k)`.
pub fn volume_edges_k(
    e: &OrthoschemeEdges,
    k: Curvature,
    tol: Tolerance,
) -> Result<IntegralResult> {
    let kk = k.get();
    Ok(scale(volume_edges(&e.scaled(1.0 / kk)?, tol)?, kk.powi(3)))
}

/// Lobachevsky-function closed form
/// `¼[Λ(α+δ) − Λ(α−δ) − Λ(π/2−β+δ) + Λ(π/2−β−δ) + Λ(γ+δ) − Λ(γ−δ) + 2Λ(π/2−δ)]`.
pub fn volume_angles(ang: &OrthoschemeAngles) -> Result<f64> {
    let (al, be, ga, d) = (ang.alpha, ang.beta, ang.gamma, ang.delta);
    let l = lobachevsky;
    let s = l(al + d)? - l(al - d)? - l(FRAC_PI_2 - be + d)? + l(FRAC_PI_2 - be - d)? + l(ga + d)?
        - l(ga - d)?
        + 2.0 * l(FRAC_PI_2 - d)?;
    Ok(0.25 * s)
}

/// Bolyai's first integral, running along edge `c`:
///
/// ```text
/// v = tan γ_p / (2 tan β_p) ∫₀^c z sinh z / ((cosh²z/cos²α − 1) √(cosh²z/cos²γ_p − 1)) dz
/// ```
///
/// with `α` the dihedral angle at `a`, `tan β_p = tanh b / sinh a` and
/// `tan γ_p = tanh c / sinh z₀`, `z₀` the hypotenuse of the `(a, b)` face.
pub fn bolyai_integral_1(e: &OrthoschemeEdges, tol: Tolerance) -> Result<IntegralResult> {
    let (a, b, c) = (e.a, e.b, e.c);
    let alpha = (c.tanh() / b.sinh()).atan();
    let beta_p = (b.tanh() / a.sinh()).atan();
    let gamma_p = (c.tanh() / e.hypotenuse().sinh()).atan();
    let (sa, ca) = alpha.sin_cos();
    let (sg, cg) = gamma_p.sin_cos();
    // cosh²z/cos²θ − 1 = (sinh²z + sin²θ)/cos²θ
    let f = |z: f64| {
        let s2 = z.sinh().powi(2);
        z * z.sinh() * ca * ca * cg / ((s2 + sa * sa) * (s2 + sg * sg).sqrt())
    };
    let pre = gamma_p.tan() / (2.0 * beta_p.tan());
    Ok(scale(integrate_1d(f, 0.0, c, tol)?, pre))
}

/// Orthoscheme with the vertex at the end of `a` ideal (`a → ∞`).
pub fn volume_one_ideal(b: f64, c: f64, tol: Tolerance) -> Result<IntegralResult> {
    positive("b", b)?;
    positive("c", c)?;
    let (tc, omt) = (c.tanh(), one_minus_tanh(c));
    let f = |p: Abscissa| log_ratio(b, tc, omt, p) / p.x.cosh();
    Ok(scale(integrate_1d_offsets(f, 0.0, b, tol)?, 0.25))
}

/// Orthoscheme with two ideal vertices (`a, c → ∞`).
pub fn volume_two_ideal(b: f64, tol: Tolerance) -> Result<IntegralResult> {
    positive("b", b)?;
    let f = |p: Abscissa| log_ratio(b, 1.0, 0.0, p) / p.x.cosh();
    Ok(scale(integrate_1d_offsets(f, 0.0, b, tol)?, 0.25))
}

/// Ideal tetrahedron assembled from four copies of the two-ideal orthoscheme.
pub fn volume_ideal_tetrahedron_b(b: f64, tol: Tolerance) -> Result<IntegralResult> {
    Ok(scale(volume_two_ideal(b, tol)?, 4.0))
}

/// `(sin 2α / 4) ∫₀^c z / (cosh²z − cos²α) dz`; equals
/// [`volume_one_ideal`]`(b, c)` for `tan α = tanh c / sinh b`.
pub fn bolyai_asymptotic_1(alpha: f64, c: f64, tol: Tolerance) -> Result<IntegralResult> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(domain(format!("α = {alpha} must lie in (0, π/2)")));
    }
    positive("c", c)?;
    let s2 = alpha.sin().powi(2);
    let f = |z: f64| z / (z.sinh().powi(2) + s2);
    Ok(scale(
        integrate_1d(f, 0.0, c, tol)?,
        (2.0 * alpha).sin() / 4.0,
    ))
}

/// `½ ∫₀^{α_max} ln(cos φ / √(cos²φ − tanh²b)) dφ`; equals
/// [`volume_one_ideal`]`(b, c)` for `tan α_max = tanh c / sinh b`.
pub fn bolyai_asymptotic_2(alpha_max: f64, b: f64, tol: Tolerance) -> Result<IntegralResult> {
    if !(0.0..FRAC_PI_2).contains(&alpha_max) {
        return Err(domain(format!("α_max = {alpha_max} must lie in [0, π/2)")));
    }
    if !(b >= 0.0 && b.is_finite()) {
        return Err(domain(format!("b = {b} must be finite and >= 0")));
    }
    let t2 = b.tanh().powi(2);
    if !(alpha_max.cos().powi(2) > t2) {
        return Err(domain(format!(
            "cos α_max = {} must exceed tanh b = {}",
            alpha_max.cos(),
            b.tanh()
        )));
    }
    let f = |phi: f64| -0.25 * (-t2 / phi.cos().powi(2)).ln_1p();
    integrate_1d(f, 0.0, alpha_max, tol)
}

/// Area of the right triangle with legs `a` and `b` by integrating
/// `∫₀^a ∫₀^{φ(x)} cosh y dy dx`, `tanh φ(x) = (tanh b / sinh a) sinh x`,
/// with the inner integral done analytically.
pub fn area_right_triangle(a: f64, b: f64, tol: Tolerance) -> Result<IntegralResult> {
    positive("a", a)?;
    positive("b", b)?;
    let q = b.tanh() / a.sinh();
    let f = |x: f64| {
        let t = q * x.sinh();
        t / ((1.0 - t) * (1.0 + t)).sqrt()
    };
    integrate_1d(f, 0.0, a, tol)
}

/// Angle defect `π/2 − α − β` of the right triangle with legs `a`, `b`.
pub fn right_triangle_defect(a: f64, b: f64) -> Result<f64> {
    Ok(FRAC_PI_2 - lemma_angle(b, a)? - lemma_angle(a, b)?)
}

/// `atan(tanh t / sinh s)`: the angle at the end of leg `s` of a right
/// triangle whose other leg is `t`.
pub fn lemma_angle(t: f64, s: f64) -> Result<f64> {
    if !(t >= 0.0) || t.is_nan() {
        return Err(domain(format!("t = {t} must be >= 0")));
    }
    if !(s > 0.0) {
        return Err(domain(format!("s = {s} must be positive")));
    }
    Ok((t.tanh() / s.sinh()).atan())
}

/// Largest dimension accepted by [`volume_ndim`].
pub const NDIM_MAX: usize = 4;

/// n-dimensional orthoscheme with orthogonal edges `a₁, …, aₙ`; for `n = 3`
/// `(a₁, a₂, a₃) = (b, c, a)`, for `n = 2` the legs `(a₁, a₂) = (b, a)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NdimOrthoscheme {
    edges: Vec<f64>,
}

impl NdimOrthoscheme {
    pub fn new(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(domain("an orthoscheme needs at least two edges"));
        }
        for (i, &e) in edges.iter().enumerate() {
            positive(&format!("a{}", i + 1), e)?;
        }
        Ok(Self { edges })
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }
}

/// Nested n-fold integral of `Π cosh^i xᵢ` over the orthoscheme (`k = 1`).
pub fn volume_ndim(o: &NdimOrthoscheme, tol: Tolerance) -> Result<IntegralResult> {
    if o.dim() > NDIM_MAX {
        return Err(Error::Unsupported(format!(
            "n-dimensional orthoscheme volume supports n ≤ {NDIM_MAX}, got {}",
            o.dim()
        )));
    }
    let region = CoordinateRegion::orthoscheme(&o.edges, Curvature::UNIT)?;
    coordinate_volume(CoordinateSystem::Orthogonal, &region, Curvature::UNIT, tol)
}

/// Draws angle triples uniformly from `(0.2, 1.2)³`, keeping those with `δ`
/// at least `0.05` below `α`, `γ` and `π/2 − β`.
pub fn sample_valid_angles<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<OrthoschemeAngles> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (al, be, ga) = (
            rng.gen_range(0.2..1.2),
            rng.gen_range(0.2..1.2),
            rng.gen_range(0.2..1.2),
        );
        if let Ok(ang) = OrthoschemeAngles::new(al, be, ga) {
            let d = ang.delta;
            if d < al.min(ga).min(FRAC_PI_2 - be) - 0.05 {
                out.push(ang);
            }
        }
    }
    out
}
