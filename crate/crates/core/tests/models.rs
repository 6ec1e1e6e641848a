use hypervol_core::models::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Central-difference Jacobian determinant of `f` at `s`.
fn fd_jacobian(f: impl Fn(&[f64]) -> Vec<f64>, s: &[f64]) -> f64 {
    let h = 1e-5;
    let mut m = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut up = s.to_vec();
        let mut dn = s.to_vec();
        up[j] += h;
        dn[j] -= h;
        let (fu, fd) = (f(&up), f(&dn));
        for i in 0..3 {
            m[i][j] = (fu[i] - fd[i]) / (2.0 * h);
        }
    }
    det3(m).abs()
}

fn random_spherical(rng: &mut ChaCha8Rng) -> Vec<f64> {
    vec![
        rng.gen_range(0.1..2.0),
        rng.gen_range(0.1..6.1),
        rng.gen_range(0.1..3.0),
    ]
}

fn to_spherical(s: &[f64]) -> PointSpherical {
    PointSpherical::new(s[0], s[1..].to_vec()).unwrap()
}

#[test]
fn orthogonal_density_transforms_to_spherical() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for kk in [1.0, 2.5] {
        let k = Curvature::new(kk).unwrap();
        for _ in 0..100 {
            let s = random_spherical(&mut rng);
            let map = |v: &[f64]| spherical_to_orthogonal(&to_spherical(v), k).into_coords();
            let x = PointOrthogonal::new(map(&s)).unwrap();
            let lhs = density_orthogonal(&x, k) * fd_jacobian(map, &s);
            let rhs = density_spherical(&to_spherical(&s), k);
            assert!((lhs / rhs - 1.0).abs() <= 1e-8, "{s:?}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn klein_density_transforms_to_spherical() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for kk in [1.0, 0.7] {
        let k = Curvature::new(kk).unwrap();
        for _ in 0..100 {
            let s = random_spherical(&mut rng);
            let map = |v: &[f64]| spherical_to_klein(&to_spherical(v), k).into_coords();
            let x = PointKlein::new(map(&s)).unwrap();
            let lhs = density_klein(&x, k).unwrap() * fd_jacobian(map, &s);
            let rhs = density_spherical(&to_spherical(&s), k);
            assert!((lhs / rhs - 1.0).abs() <= 1e-8, "{s:?}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn orthogonal_density_transforms_to_paracycle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let k = Curvature::new(1.3).unwrap();
    for _ in 0..100 {
        let xi: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.5..1.5)).collect();
        let map = |v: &[f64]| {
            paracycle_to_orthogonal(&PointParacycle::new(v.to_vec()).unwrap(), k).into_coords()
        };
        let x = PointOrthogonal::new(map(&xi)).unwrap();
        let lhs = density_orthogonal(&x, k) * fd_jacobian(map, &xi);
        let rhs = density_paracycle(&PointParacycle::new(xi.clone()).unwrap(), k);
        assert!((lhs / rhs - 1.0).abs() <= 1e-8, "{xi:?}: {lhs} vs {rhs}");
    }
}

#[test]
fn orthoscheme_vertex_distance() {
    let k = Curvature::UNIT;
    let img = orthogonal_to_klein(&PointOrthogonal::new(vec![1.0, 1.0, 0.0]).unwrap(), k);
    let back = klein_to_orthogonal(&img, k).unwrap();
    assert!((back.coords()[0] - 1.0).abs() < 1e-12 && (back.coords()[1] - 1.0).abs() < 1e-12);
    let d = klein_distance(&PointKlein::origin(3).unwrap(), &img, k).unwrap();
    assert!((d - (1.0f64.cosh().powi(2)).acosh()).abs() <= 1e-10);
}
