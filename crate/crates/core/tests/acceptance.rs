use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::Instant;

use hypervol_core::mc::{estimate, orthoscheme_vertices, McEstimate, Region};
use hypervol_core::orthoscheme::*;
use hypervol_core::solids::*;
use hypervol_core::specfun::{clausen2, lobachevsky, lobachevsky_by_quadrature};
use hypervol_core::tetrahedra::*;
use hypervol_core::{Curvature, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const K1: Curvature = Curvature::UNIT;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn edges(a: f64, b: f64, c: f64) -> OrthoschemeEdges {
    OrthoschemeEdges::new(a, b, c).unwrap()
}

fn flagship() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let cases = sample_valid_angles(&mut rng, 24);
    for ang in &cases {
        let by_angles = volume_angles(ang).map_err(|e| e.to_string())?;
        let e = angles_to_edges(ang).map_err(|e| e.to_string())?;
        let by_edges = volume_edges(&e, tol()).map_err(|e| e.to_string())?.value;
        worst = worst.max((by_angles - by_edges).abs() / by_angles.abs().max(1.0));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(
        worst <= 1e-6 && secs <= 30.0,
        format!(
            "{} angle triples, max scaled |Δ| = {worst:.2e}, {secs:.2} s",
            cases.len()
        ),
    )
}

fn bolyai() -> Outcome {
    let grid = [0.5, 1.0, 1.5];
    let mut worst = 0.0f64;
    for a in grid {
        for b in grid {
            for c in grid {
                let e = edges(a, b, c);
                let x = bolyai_integral_1(&e, tol())
                    .map_err(|e| e.to_string())?
                    .value;
                let y = volume_edges(&e, tol()).map_err(|e| e.to_string())?.value;
                worst = worst.max((x - y).abs());
            }
        }
    }
    ensure(
        worst <= 1e-6,
        format!("27 grid points, max |Δ| = {worst:.2e}"),
    )
}

fn euclidean_limit() -> Outcome {
    let eps = 1e-2;
    let v = volume_edges(&edges(eps, 2.0 * eps, 3.0 * eps), tol())
        .map_err(|e| e.to_string())?
        .value;
    let ratio = v / eps.powi(3);
    ensure(
        (ratio - 1.0).abs() <= 1e-3,
        format!("v/(ε³·6/6) = {ratio:.8}"),
    )
}

fn defect_2d() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (a, b) = (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0));
        let q = area_right_triangle(a, b, tol())
            .map_err(|e| e.to_string())?
            .value;
        let d = right_triangle_defect(a, b).map_err(|e| e.to_string())?;
        worst = worst.max((q - d).abs());
    }
    ensure(
        worst <= 1e-8,
        format!("10 random legs, max |Δ| = {worst:.2e}"),
    )
}

fn solids_vs_quadrature() -> Outcome {
    let grid = [0.2, 0.5, 1.0, 1.7, 2.5];
    let t = Tolerance::rel(1e-12).unwrap();
    let mut worst = 0.0f64;
    for x in grid {
        let pairs = [
            (
                sphere_volume(x, K1),
                sphere_volume_by_quadrature(x, K1, t).map(|r| r.value),
            ),
            (
                equidistant_body(1.3, x, K1),
                equidistant_body_by_quadrature(1.3, x, K1, t).map(|r| r.value),
            ),
            (
                barrel(0.8, x, K1),
                barrel_by_quadrature(0.8, x, K1, t).map(|r| r.value),
            ),
        ];
        for (a, b) in pairs {
            let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
            worst = worst.max((a - b).abs());
        }
    }
    ensure(
        worst <= 1e-8,
        format!("sphere, equidistant body, barrel on 5 points, max |Δ| = {worst:.2e}"),
    )
}

fn monte_carlo() -> Outcome {
    let start = Instant::now();
    let samples = 1_000_000;
    let ortho = orthoscheme_vertices(1.0, 1.0, 1.0, K1).map_err(|e| e.to_string())?;
    let cases: Vec<(&str, Region, f64)> = vec![
        (
            "ball",
            Region::ball(3, 1.0, K1).unwrap(),
            sphere_volume(1.0, K1).unwrap(),
        ),
        (
            "barrel",
            Region::barrel(1.0, 1.0, K1).unwrap(),
            barrel(1.0, 1.0, K1).unwrap(),
        ),
        (
            "cone",
            Region::cone(1.0, FRAC_PI_4, K1).unwrap(),
            circular_cone(1.0, FRAC_PI_4, tol()).unwrap().value,
        ),
        (
            "orthoscheme",
            Region::simplex(&ortho, K1).unwrap(),
            volume_edges(&edges(1.0, 1.0, 1.0), tol()).unwrap().value,
        ),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (i, (name, region, exact)) in cases.iter().enumerate() {
        let seed = 100 + i as u64;
        let e: McEstimate = estimate(region, samples, seed, K1).map_err(|e| e.to_string())?;
        let again = estimate(region, samples, seed, K1).map_err(|e| e.to_string())?;
        let z = e.z_score(*exact);
        ok &=
            z.abs() <= 4.0 && e.stderr <= 0.015 * exact && e.mean.to_bits() == again.mean.to_bits();
        parts.push(format!(
            "{name} z={z:+.2} rel.se={:.2}%",
            100.0 * e.stderr / exact
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(
        ok && secs <= 60.0,
        format!("{}, {secs:.1} s", parts.join(", ")),
    )
}

fn tetrahedra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst_cross = 0.0f64;
    for t in realizable_samples(&mut rng, 12) {
        let dm = derevnin_mednykh(&t, tol())
            .map_err(|e| e.to_string())?
            .value;
        let my = murakami_yano(&t).map_err(|e| e.to_string())?;
        worst_cross = worst_cross.max((dm - my).abs());
    }
    let mut worst_ideal = 0.0f64;
    for (a, b) in [(PI / 3.0, PI / 3.0), (0.9, 1.1), (0.7, 1.3), (1.2, 1.2)] {
        let c = PI - a - b;
        let t = TetraDihedrals::ideal_symmetric(a, b, c).map_err(|e| e.to_string())?;
        let m = milnor_ideal(a, b, c).map_err(|e| e.to_string())?;
        let dm = derevnin_mednykh(&t, tol())
            .map_err(|e| e.to_string())?
            .value;
        let my = murakami_yano(&t).map_err(|e| e.to_string())?;
        worst_ideal = worst_ideal.max((dm - m).abs()).max((my - m).abs());
    }
    let regular = milnor_ideal(PI / 3.0, PI / 3.0, PI / 3.0).map_err(|e| e.to_string())?;
    ensure(
        worst_cross <= 1e-6 && worst_ideal <= 1e-5 && (regular - 1.0149416).abs() <= 1e-5,
        format!("12 samples DM vs MY max |Δ| = {worst_cross:.2e}; ideal vs Milnor max |Δ| = {worst_ideal:.2e}; regular = {regular:.10}"),
    )
}

fn octahedron() -> Outcome {
    let o = OctahedronAngles::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).map_err(|e| e.to_string())?;
    let v = mohanty_octahedron(&o).map_err(|e| e.to_string())?;
    let series = 8.0 * lobachevsky(FRAC_PI_4).map_err(|e| e.to_string())?;
    let quad = 8.0 * lobachevsky_by_quadrature(FRAC_PI_4).map_err(|e| e.to_string())?;
    let worst = (v - series).abs().max((v - quad).abs());
    ensure(
        worst <= 1e-9,
        format!("v = {v:.12}, max |Δ| over both Λ paths = {worst:.2e}"),
    )
}

fn asymptotic_chain() -> Outcome {
    let mut worst = 0.0f64;
    for b in [0.5, 1.0] {
        for c in [0.5, 1.0] {
            let far = volume_edges(&edges(20.0, b, c), tol())
                .map_err(|e| e.to_string())?
                .value;
            let one = volume_one_ideal(b, c, tol())
                .map_err(|e| e.to_string())?
                .value;
            worst = worst.max((far - one).abs());
        }
        let one = volume_one_ideal(b, 30.0, tol())
            .map_err(|e| e.to_string())?
            .value;
        let two = volume_two_ideal(b, tol()).map_err(|e| e.to_string())?.value;
        worst = worst.max((one - two).abs());
    }
    ensure(
        worst <= 1e-5,
        format!("max |Δ| along the chain = {worst:.2e}"),
    )
}

fn dimension_coherence() -> Outcome {
    let t = Tolerance::rel(1e-11).unwrap();
    let mut worst = 0.0f64;
    for (a, b, c) in [(0.7, 1.1, 0.5), (1.3, 0.4, 0.9)] {
        let nd = NdimOrthoscheme::new(vec![b, c, a]).map_err(|e| e.to_string())?;
        let x = volume_ndim(&nd, t).map_err(|e| e.to_string())?.value;
        let y = volume_edges(&edges(a, b, c), t)
            .map_err(|e| e.to_string())?
            .value;
        worst = worst.max((x - y).abs());
    }
    for (a, b) in [(0.6, 1.4), (2.0, 0.3)] {
        let nd = NdimOrthoscheme::new(vec![b, a]).map_err(|e| e.to_string())?;
        let x = volume_ndim(&nd, t).map_err(|e| e.to_string())?.value;
        let y = area_right_triangle(a, b, t)
            .map_err(|e| e.to_string())?
            .value;
        worst = worst.max((x - y).abs());
    }
    ensure(
        worst <= 1e-8,
        format!("n = 3 and n = 2, max |Δ| = {worst:.2e}"),
    )
}

fn special_functions() -> Outcome {
    let l = |x: f64| lobachevsky(x).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = rng.gen_range(-10.0..10.0);
        worst = worst
            .max((l(-x) + l(x)).abs())
            .max((l(x + PI) - l(x)).abs())
            .max((l(2.0 * x) - 2.0 * l(x) - 2.0 * l(x + FRAC_PI_2)).abs());
    }
    let cl = clausen2(FRAC_PI_2).map_err(|e| e.to_string())?;
    ensure(
        worst <= 1e-11 && (cl - 0.9159655941).abs() <= 1e-10,
        format!("identities max |Δ| = {worst:.2e}, Cl₂(π/2) = {cl:.12}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("orthoscheme angles vs edges", flagship),
        ("Bolyai integral vs edges", bolyai),
        ("Euclidean limit", euclidean_limit),
        ("2-D angle defect", defect_2d),
        ("solids vs quadrature", solids_vs_quadrature),
        ("Monte Carlo oracle", monte_carlo),
        ("tetrahedra", tetrahedra),
        ("regular ideal octahedron", octahedron),
        ("asymptotic chain", asymptotic_chain),
        ("dimension coherence", dimension_coherence),
        ("special functions", special_functions),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("[PASS] {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
