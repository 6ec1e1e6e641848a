use hypervol_core::mc::{estimate, orthoscheme_vertices, orthoscheme_vertices_centered, Region};
use hypervol_core::models::{orthogonal_to_klein, PointKlein, PointOrthogonal};
use hypervol_core::orthoscheme::{
    volume_edges, volume_ndim, volume_one_ideal, NdimOrthoscheme, OrthoschemeEdges,
};
use hypervol_core::solids::{barrel, circular_cone, equidistant_body, sphere_volume};
use hypervol_core::{Curvature, Tolerance};
use std::f64::consts::FRAC_PI_4;

const N: u64 = 1_000_000;
const K1: Curvature = Curvature::UNIT;

fn check(name: &str, region: &Region, exact: f64, seed: u64) {
    let e = estimate(region, N, seed, K1).unwrap();
    let z = e.z_score(exact);
    assert!(
        z.abs() <= 4.0,
        "{name}: {} ± {} vs {exact} (z = {z})",
        e.mean,
        e.stderr
    );
    assert!(
        e.stderr <= 0.015 * exact,
        "{name}: stderr {} too large",
        e.stderr
    );
}

#[test]
fn ball() {
    check(
        "ball",
        &Region::ball(3, 1.0, K1).unwrap(),
        sphere_volume(1.0, K1).unwrap(),
        1,
    );
}

#[test]
fn barrel_without_caps() {
    check(
        "barrel",
        &Region::barrel(1.0, 1.0, K1).unwrap(),
        barrel(1.0, 1.0, K1).unwrap(),
        2,
    );
}

#[test]
fn cone() {
    let exact = circular_cone(1.0, FRAC_PI_4, Tolerance::default())
        .unwrap()
        .value;
    check("cone", &Region::cone(1.0, FRAC_PI_4, K1).unwrap(), exact, 3);
}

#[test]
fn slab() {
    check(
        "slab",
        &Region::slab(2.0, 0.5, K1).unwrap(),
        equidistant_body(2.0, 0.5, K1).unwrap(),
        4,
    );
}

#[test]
fn orthoscheme() {
    let v = orthoscheme_vertices(1.0, 1.0, 1.0, K1).unwrap();
    let e = OrthoschemeEdges::new(1.0, 1.0, 1.0).unwrap();
    let exact = volume_edges(&e, Tolerance::default()).unwrap().value;
    check("orthoscheme", &Region::simplex(&v, K1).unwrap(), exact, 5);
    let w = orthoscheme_vertices(0.7, 1.2, 0.9, K1).unwrap();
    let e = OrthoschemeEdges::new(0.7, 1.2, 0.9).unwrap();
    let exact = volume_edges(&e, Tolerance::default()).unwrap().value;
    check("orthoscheme 2", &Region::simplex(&w, K1).unwrap(), exact, 6);
}

#[test]
fn four_dimensional_orthoscheme() {
    let a = [0.6, 0.5, 0.7, 0.4];
    let corners = [
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, a[3]],
        [a[0], 0.0, 0.0, a[3]],
        [a[0], a[1], 0.0, a[3]],
        [a[0], a[1], a[2], a[3]],
    ];
    let v: Vec<PointKlein> = corners
        .iter()
        .map(|c| orthogonal_to_klein(&PointOrthogonal::new(c.to_vec()).unwrap(), K1))
        .collect();
    let o = NdimOrthoscheme::new(a.to_vec()).unwrap();
    let exact = volume_ndim(&o, Tolerance::rel(1e-8).unwrap())
        .unwrap()
        .value;
    check("4-orthoscheme", &Region::simplex(&v, K1).unwrap(), exact, 7);
}

#[test]
fn one_ideal_orthoscheme_truncation() {
    let v = orthoscheme_vertices_centered(f64::INFINITY, 1.0, 1.0, K1).unwrap();
    let fine = Region::simplex_ideal(&v, K1).unwrap();
    let coarse = fine.clone().with_truncation(1.0 - 1e-5).unwrap();
    let ef = estimate(&fine, N, 8, K1).unwrap();
    let ec = estimate(&coarse, N, 8, K1).unwrap();
    assert!((ef.mean - ec.mean).abs() < ef.stderr, "{ef:?} vs {ec:?}");
    let exact = volume_one_ideal(1.0, 1.0, Tolerance::default())
        .unwrap()
        .value;
    assert!(ef.z_score(exact).abs() <= 4.0, "{ef:?} vs {exact}");
}
