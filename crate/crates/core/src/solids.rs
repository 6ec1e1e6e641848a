//! Closed-form volumes of classical solids: equidistant body, paraspherical
//! sector, ball, barrel, barrel wedge and circular cones.
//!
//! Parameters: `p` is a base area (equidistant body, sector), a segment length
//! (barrel) or a meridian arc (wedge); `q` a distance; `x` a ball radius; `b` a
//! cone base radius and `β` the cone half-angle at the apex.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::models::Curvature;
use crate::quadrature::{integrate_1d, IntegralResult, Tolerance};

fn non_negative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} = {v} must be finite and >= 0")))
    }
}

/// `sinh t − t` without cancellation for small `t`.
fn sinh_minus_identity(t: f64) -> f64 {
    if t.abs() > 0.5 {
        return t.sinh() - t;
    }
    let t2 = t * t;
    let mut term = t * t2 / 6.0;
    let mut sum = term;
    let mut m = 1.0;
    while term.abs() > 1e-18 * sum.abs() {
        term *= t2 / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
        sum += term;
        m += 1.0;
    }
    sum
}

/// Points within distance `q` on one side of a plane region of area `p`:
/// `¼pk sinh(2q/k) + ½pq`.
pub fn equidistant_body(p: f64, q: f64, k: Curvature) -> Result<f64> {
    non_negative("p", p)?;
    non_negative("q", q)?;
    let kk = k.get();
    Ok(0.25 * p * kk * (2.0 * q / kk).sinh() + 0.5 * p * q)
}

/// `p ∫₀^q cosh²(t/k) dt`.
pub fn equidistant_body_by_quadrature(
    p: f64,
    q: f64,
    k: Curvature,
    tol: Tolerance,
) -> Result<IntegralResult> {
    non_negative("p", p)?;
    non_negative("q", q)?;
    let kk = k.get();
    let mut r = integrate_1d(|t| (t / kk).cosh().powi(2), 0.0, q, tol)?;
    r.value *= p;
    r.error_estimate *= p;
    Ok(r)
}

/// Sector of parallel half-lines over a base of area `p`: `pk/2`.
pub fn paraspherical_sector(p: f64, k: Curvature) -> Result<f64> {
    non_negative("p", p)?;
    Ok(0.5 * p * k.get())
}

/// Ball of radius `x`: `πk³ sinh(2x/k) − 2πk²x`.
pub fn sphere_volume(x: f64, k: Curvature) -> Result<f64> {
    non_negative("x", x)?;
    let kk = k.get();
    Ok(PI * kk.powi(3) * sinh_minus_identity(2.0 * x / kk))
}

/// `4πk² ∫₀ˣ sinh²(r/k) dr`.
pub fn sphere_volume_by_quadrature(x: f64, k: Curvature, tol: Tolerance) -> Result<IntegralResult> {
    non_negative("x", x)?;
    let kk = k.get();
    let c = 4.0 * PI * kk * kk;
    let mut r = integrate_1d(|t| (t / kk).sinh().powi(2), 0.0, x, tol)?;
    r.value *= c;
    r.error_estimate *= c;
    Ok(r)
}

/// Points within distance `q` of a segment of length `p`, without the end
/// caps: `πk²p sinh²(q/k)`.
pub fn barrel(p: f64, q: f64, k: Curvature) -> Result<f64> {
    non_negative("p", p)?;
    non_negative("q", q)?;
    let kk = k.get();
    Ok(PI * kk * kk * p * (q / kk).sinh().powi(2))
}

/// `2πkp ∫₀^q sinh(t/k) cosh(t/k) dt`.
pub fn barrel_by_quadrature(
    p: f64,
    q: f64,
    k: Curvature,
    tol: Tolerance,
) -> Result<IntegralResult> {
    non_negative("p", p)?;
    non_negative("q", q)?;
    let kk = k.get();
    let c = 2.0 * PI * kk * p;
    let mut r = integrate_1d(|t| (t / kk).sinh() * (t / kk).cosh(), 0.0, q, tol)?;
    r.value *= c;
    r.error_estimate *= c;
    Ok(r)
}

/// Barrel sector between two meridian planes: `pT/2` for meridian arc `p`
/// and meridian area `T`.
pub fn barrel_wedge(p: f64, t: f64) -> Result<f64> {
    non_negative("p", p)?;
    non_negative("T", t)?;
    Ok(0.5 * p * t)
}

fn check_cone(b: f64, beta: f64) -> Result<()> {
    non_negative("b", b)?;
    if !(beta > 0.0 && beta < PI / 2.0) {
        return Err(domain(format!(
            "cone half-angle {beta} must lie in (0, π/2)"
        )));
    }
    Ok(())
}

/// Right circular cone with base radius `b` and half-angle `β` at the apex, `k = 1`:
/// `π ∫₀^b sinh²y / (cosh y · √(cosh²y/cos²β − 1)) dy`.
pub fn circular_cone(b: f64, beta: f64, tol: Tolerance) -> Result<IntegralResult> {
    check_cone(b, beta)?;
    let (sin_b, cos_b) = beta.sin_cos();
    // cosh²y/cos²β − 1 = (sinh²y + sin²β)/cos²β
    let f = |y: f64| {
        let s = y.sinh();
        s * s * cos_b / (y.cosh() * (s * s + sin_b * sin_b).sqrt())
    };
    let mut r = integrate_1d(f, 0.0, b, tol)?;
    r.value *= PI;
    r.error_estimate *= PI;
    Ok(r)
}

/// [`circular_cone`] at curvature `k`, via `v_k(b, β) = k³ v₁(b/k, β)`.
pub fn circular_cone_k(b: f64, beta: f64, k: Curvature, tol: Tolerance) -> Result<IntegralResult> {
    let kk = k.get();
    let c = kk.powi(3);
    let mut r = circular_cone(b / kk, beta, tol)?;
    r.value *= c;
    r.error_estimate *= c;
    Ok(r)
}

/// Height `h` of the cone: `sinh h = tanh b / tan β`.
pub fn cone_height(b: f64, beta: f64) -> Result<f64> {
    check_cone(b, beta)?;
    Ok((b.tanh() / beta.tan()).asinh())
}

/// Cone over a disk of radius `b` with ideal apex, `k = 1`: `π ln cosh b`.
pub fn asymptotic_cone(b: f64) -> Result<f64> {
    non_negative("b", b)?;
    Ok(PI * crate::models::ln_cosh(b))
}

/// [`asymptotic_cone`] at curvature `k`: `πk³ ln cosh(b/k)`.
pub fn asymptotic_cone_k(b: f64, k: Curvature) -> Result<f64> {
    Ok(k.get().powi(3) * asymptotic_cone(b / k.get())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn k(v: f64) -> Curvature {
        Curvature::new(v).unwrap()
    }

    fn tol() -> Tolerance {
        Tolerance::new(1e-12, 1e-14).unwrap()
    }

    #[test]
    fn equidistant_examples() {
        assert_eq!(equidistant_body(1.0, 0.0, k(1.0)).unwrap(), 0.0);
        assert_abs_diff_eq!(
            equidistant_body(1.0, 1.0, k(1.0)).unwrap(),
            1.406_715_101_961_754_7,
            epsilon = 1e-14
        );
        let q = 1e-3;
        assert_relative_eq!(
            equidistant_body(2.0, q, k(1.0)).unwrap(),
            2.0 * q,
            max_relative = 1e-6
        );
        let quad = equidistant_body_by_quadrature(1.0, 1.0, k(1.0), tol()).unwrap();
        assert_abs_diff_eq!(quad.value, 1.406_715_101_961_754_7, epsilon = 1e-12);
    }

    #[test]
    fn sector_examples() {
        assert_eq!(paraspherical_sector(0.0, k(1.0)).unwrap(), 0.0);
        assert_eq!(paraspherical_sector(2.0, k(3.0)).unwrap(), 3.0);
        let brick =
            crate::models::paracycle_brick_volume(&[1.0, 1.0, f64::INFINITY], k(1.0)).unwrap();
        assert_eq!(paraspherical_sector(1.0, k(1.0)).unwrap(), brick);
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_volume(0.0, k(1.0)).unwrap(), 0.0);
        assert_abs_diff_eq!(
            sphere_volume(1.0, k(1.0)).unwrap(),
            5.110_932_705_708_289,
            epsilon = 1e-13
        );
        let small = 0.01;
        let euclid = 4.0 / 3.0 * PI * small * small * small;
        assert_relative_eq!(
            sphere_volume(small, k(1.0)).unwrap(),
            euclid,
            max_relative = 1e-4
        );
        // No cancellation far below the crossover.
        assert_relative_eq!(
            sphere_volume(1e-6, k(1.0)).unwrap(),
            4.0 / 3.0 * PI * 1e-18,
            max_relative = 1e-10
        );
        let quad = sphere_volume_by_quadrature(1.0, k(1.0), tol()).unwrap();
        assert_abs_diff_eq!(quad.value, 5.110_932_705_708_289, epsilon = 1e-11);
    }

    #[test]
    fn sinh_series_crossover() {
        for t in [0.49f64, 0.5, 0.51, 0.3, 1e-4] {
            let direct = t.sinh() - t;
            assert_relative_eq!(sinh_minus_identity(t), direct, max_relative = 1e-11);
        }
    }

    #[test]
    fn barrel_examples() {
        assert_eq!(barrel(1.0, 0.0, k(1.0)).unwrap(), 0.0);
        assert_abs_diff_eq!(
            barrel(1.0, 1.0, k(1.0)).unwrap(),
            4.338_846_845_442_859,
            epsilon = 1e-13
        );
        let q = 1e-3;
        assert_relative_eq!(
            barrel(3.0, q, k(1.0)).unwrap(),
            PI * q * q * 3.0,
            max_relative = 1e-6
        );
        let quad = barrel_by_quadrature(1.0, 1.0, k(1.0), tol()).unwrap();
        assert_abs_diff_eq!(quad.value, 4.338_846_845_442_859, epsilon = 1e-11);
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(barrel_wedge(2.0, 0.0).unwrap(), 0.0);
        assert_eq!(barrel_wedge(2.0, 3.0).unwrap(), 3.0);
        assert!(barrel_wedge(-1.0, 3.0).is_err());
    }

    #[test]
    fn cone_examples() {
        let t = Tolerance::default();
        assert_eq!(circular_cone(0.0, 0.7, t).unwrap().value, 0.0);
        assert_abs_diff_eq!(
            circular_cone(1.0, PI / 4.0, t).unwrap().value,
            0.639_876_809_466_869_2,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            circular_cone(0.5, 0.6, t).unwrap().value,
            0.154_196_030_360_231_02,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            circular_cone(2.0, 1.2, t).unwrap().value,
            1.202_688_817_270_992_3,
            epsilon = 1e-9
        );
        let flat = circular_cone(1.0, PI / 2.0 - 1e-9, t).unwrap().value;
        assert!(flat < 1e-8);
        assert!(circular_cone(1.0, PI / 2.0, t).is_err());
        assert!(circular_cone(1.0, 0.0, t).is_err());
    }

    #[test]
    fn cone_matches_euclidean_cone() {
        // Small cone: base radius b, height h with tan β = b/h.
        let (b, beta) = (1e-3, 0.6f64);
        let h = b / beta.tan();
        let v = circular_cone(b, beta, Tolerance::default()).unwrap().value;
        assert_relative_eq!(v, PI * b * b * h / 3.0, max_relative = 1e-5);
    }

    #[test]
    fn cone_with_receding_apex() {
        for b in [0.3, 1.0, 2.5] {
            let v = circular_cone(b, 1e-7, Tolerance::default()).unwrap().value;
            assert_relative_eq!(v, asymptotic_cone(b).unwrap(), max_relative = 1e-6);
        }
    }

    #[test]
    fn asymptotic_cone_examples() {
        assert_eq!(asymptotic_cone(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            asymptotic_cone(1.0).unwrap(),
            1.362_762_670_313_557_7,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            asymptotic_cone(1e-4).unwrap(),
            PI * 1e-8 / 2.0,
            max_relative = 1e-8
        );
        assert_relative_eq!(
            asymptotic_cone_k(2.0, k(2.0)).unwrap(),
            8.0 * asymptotic_cone(1.0).unwrap()
        );
    }

    #[test]
    fn cone_height_examples() {
        assert_abs_diff_eq!(
            cone_height(1.0, PI / 4.0).unwrap(),
            1.0f64.tanh().asinh(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn euclidean_limits_at_one_percent() {
        let e = 1e-2;
        assert_relative_eq!(
            equidistant_body(1.0, e, k(1.0)).unwrap(),
            e,
            max_relative = 1e-3
        );
        assert_relative_eq!(
            sphere_volume(e, k(1.0)).unwrap(),
            4.0 / 3.0 * PI * e.powi(3),
            max_relative = 1e-3
        );
        assert_relative_eq!(
            barrel(1.0, e, k(1.0)).unwrap(),
            PI * e * e,
            max_relative = 1e-3
        );
        assert_relative_eq!(
            asymptotic_cone(e).unwrap(),
            PI * e * e / 2.0,
            max_relative = 1e-3
        );
    }

    #[test]
    fn negative_inputs_rejected() {
        assert!(equidistant_body(-1.0, 1.0, k(1.0)).is_err());
        assert!(sphere_volume(f64::NAN, k(1.0)).is_err());
        assert!(barrel(1.0, -0.1, k(1.0)).is_err());
        assert!(asymptotic_cone(-1.0).is_err());
    }

    proptest! {
        #[test]
        fn closed_forms_match_quadrature(p in 0.0f64..3.0, q in 0.0f64..3.0, kk in 0.5f64..3.0) {
            let (k, t) = (k(kk), tol());
            prop_assert!((sphere_volume(q, k).unwrap() - sphere_volume_by_quadrature(q, k, t).unwrap().value).abs() <= 1e-8);
            prop_assert!((equidistant_body(p, q, k).unwrap() - equidistant_body_by_quadrature(p, q, k, t).unwrap().value).abs() <= 1e-8);
            prop_assert!((barrel(p, q, k).unwrap() - barrel_by_quadrature(p, q, k, t).unwrap().value).abs() <= 1e-8);
        }

        #[test]
        fn k_scaling(p in 0.1f64..3.0, q in 0.1f64..3.0, kk in 0.3f64..4.0) {
            let (c, one) = (kk.powi(3), k(1.0));
            let s = sphere_volume(q, k(kk)).unwrap();
            prop_assert!((s / (c * sphere_volume(q / kk, one).unwrap()) - 1.0).abs() <= 1e-10);
            let e = equidistant_body(p, q, k(kk)).unwrap();
            prop_assert!((e / (c * equidistant_body(p / (kk * kk), q / kk, one).unwrap()) - 1.0).abs() <= 1e-10);
            let b = barrel(p, q, k(kk)).unwrap();
            prop_assert!((b / (c * barrel(p / kk, q / kk, one).unwrap()) - 1.0).abs() <= 1e-10);
        }

        #[test]
        fn monotone(p in 0.1f64..3.0, q in 0.1f64..3.0, d in 1e-3f64..0.5) {
            let k = k(1.0);
            prop_assert!(sphere_volume(q + d, k).unwrap() > sphere_volume(q, k).unwrap());
            prop_assert!(equidistant_body(p + d, q, k).unwrap() > equidistant_body(p, q, k).unwrap());
            prop_assert!(equidistant_body(p, q + d, k).unwrap() > equidistant_body(p, q, k).unwrap());
            prop_assert!(barrel(p + d, q, k).unwrap() > barrel(p, q, k).unwrap());
            prop_assert!(barrel(p, q + d, k).unwrap() > barrel(p, q, k).unwrap());
            prop_assert!(asymptotic_cone(q + d).unwrap() > asymptotic_cone(q).unwrap());
            let t = Tolerance::default();
            prop_assert!(circular_cone(q + d, 0.7, t).unwrap().value > circular_cone(q, 0.7, t).unwrap().value);
        }

        #[test]
        fn cone_k_scaling(b in 0.1f64..2.0, beta in 0.1f64..1.4, kk in 0.5f64..3.0) {
            let t = Tolerance::default();
            let direct = circular_cone_k(b, beta, k(kk), t).unwrap().value;
            let one = circular_cone(b / kk, beta, t).unwrap().value;
            prop_assert!((direct / (kk.powi(3) * one) - 1.0).abs() <= 1e-12);
        }
    }
}
