use std::f64::consts::PI;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use hypervol_core::orthoscheme::{
    bolyai_integral_1, edges_to_angles, volume_angles, volume_edges, volume_ndim, NdimOrthoscheme,
    OrthoschemeEdges,
};
use hypervol_core::solids::{
    barrel, barrel_by_quadrature, equidistant_body, equidistant_body_by_quadrature, sphere_volume,
    sphere_volume_by_quadrature,
};
use hypervol_core::tetrahedra::{
    derevnin_mednykh, milnor_ideal, murakami_yano, realizable_samples, TetraDihedrals,
};
use hypervol_core::{Curvature, Tolerance};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orthoscheme,
    Tetrahedra,
    Solids,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    Coarse,
    Fine,
}

fn row(
    suite: &str,
    case: usize,
    inputs: Value,
    values: Vec<(&str, f64)>,
    threshold: f64,
) -> Map<String, Value> {
    let mut delta = 0.0f64;
    for (i, (_, x)) in values.iter().enumerate() {
        for (_, y) in &values[i + 1..] {
            delta = delta.max((x - y).abs());
        }
    }
    let pass = delta <= threshold && values.iter().all(|(_, v)| v.is_finite());
    let values: Map<String, Value> = values
        .into_iter()
        .map(|(n, v)| (n.to_string(), json!(v)))
        .collect();
    let mut m = Map::new();
    m.insert("suite".into(), json!(suite));
    m.insert("case".into(), json!(case));
    m.insert("inputs".into(), inputs);
    m.insert("values".into(), Value::Object(values));
    m.insert("max_delta".into(), json!(delta));
    m.insert("threshold".into(), json!(threshold));
    m.insert("pass".into(), json!(pass));
    m
}

fn orthoscheme(grid: Grid) -> Result<Vec<Map<String, Value>>, CliError> {
    let points: Vec<f64> = match grid {
        Grid::Coarse => vec![0.5, 1.0, 1.5],
        Grid::Fine => (1..=8).map(|i| 0.25 * i as f64).collect(),
    };
    let tol = Tolerance::rel(1e-10)?;
    let mut rows = Vec::new();
    for &a in &points {
        for &b in &points {
            for &c in &points {
                let e = OrthoschemeEdges::new(a, b, c)?;
                let mut values = vec![
                    ("edges", volume_edges(&e, tol)?.value),
                    ("angles", volume_angles(&edges_to_angles(&e))?),
                    ("bolyai-1", bolyai_integral_1(&e, tol)?.value),
                ];
                if grid == Grid::Coarse {
                    let nd = NdimOrthoscheme::new(vec![b, c, a])?;
                    values.push(("ndim", volume_ndim(&nd, Tolerance::rel(1e-9)?)?.value));
                }
                rows.push(row(
                    "orthoscheme",
                    rows.len(),
                    json!({"a": a, "b": b, "c": c}),
                    values,
                    1e-6,
                ));
            }
        }
    }
    Ok(rows)
}

fn tetrahedra(grid: Grid) -> Result<Vec<Map<String, Value>>, CliError> {
    let (count, ideal_steps) = match grid {
        Grid::Coarse => (12, 3),
        Grid::Fine => (50, 8),
    };
    let tol = Tolerance::rel(1e-10)?;
    let mut rows = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for t in realizable_samples(&mut rng, count) {
        let values = vec![
            ("derevnin-mednykh", derevnin_mednykh(&t, tol)?.value),
            ("murakami-yano", murakami_yano(&t)?),
        ];
        let [a, b, c, d, e, f] = t.angles();
        let inputs = json!({"A": a, "B": b, "C": c, "D": d, "E": e, "F": f});
        rows.push(row("tetrahedra", rows.len(), inputs, values, 1e-6));
    }
    for i in 1..=ideal_steps {
        for j in 1..=ideal_steps {
            let a = PI * i as f64 / (ideal_steps + 2) as f64;
            let b = PI * j as f64 / (ideal_steps + 2) as f64;
            let c = PI - a - b;
            if c <= 0.05 {
                continue;
            }
            let t = TetraDihedrals::ideal_symmetric(a, b, c)?;
            let values = vec![
                ("milnor", milnor_ideal(a, b, c)?),
                ("derevnin-mednykh", derevnin_mednykh(&t, tol)?.value),
                ("murakami-yano", murakami_yano(&t)?),
            ];
            let inputs = json!({"A": a, "B": b, "C": c, "D": a, "E": b, "F": c});
            rows.push(row("tetrahedra", rows.len(), inputs, values, 1e-6));
        }
    }
    Ok(rows)
}

fn solids(grid: Grid) -> Result<Vec<Map<String, Value>>, CliError> {
    let points: Vec<f64> = match grid {
        Grid::Coarse => vec![0.2, 0.5, 1.0, 1.7, 2.5],
        Grid::Fine => (1..=20).map(|i| 0.15 * i as f64).collect(),
    };
    let tol = Tolerance::rel(1e-12)?;
    let mut rows = Vec::new();
    for kk in [1.0, 2.0] {
        let k = Curvature::new(kk)?;
        for &x in &points {
            let cases = [
                (
                    "sphere",
                    json!({"x": x, "k": kk}),
                    sphere_volume(x, k)?,
                    sphere_volume_by_quadrature(x, k, tol)?.value,
                ),
                (
                    "equidistant",
                    json!({"p": 1.3, "q": x, "k": kk}),
                    equidistant_body(1.3, x, k)?,
                    equidistant_body_by_quadrature(1.3, x, k, tol)?.value,
                ),
                (
                    "barrel",
                    json!({"p": 0.8, "q": x, "k": kk}),
                    barrel(0.8, x, k)?,
                    barrel_by_quadrature(0.8, x, k, tol)?.value,
                ),
            ];
            for (shape, mut inputs, closed, quad) in cases {
                inputs["shape"] = json!(shape);
                rows.push(row(
                    "solids",
                    rows.len(),
                    inputs,
                    vec![("closed", closed), ("quadrature", quad)],
                    1e-8,
                ));
            }
        }
    }
    Ok(rows)
}

pub fn run(suite: Suite, grid: Grid) -> Result<Vec<Map<String, Value>>, CliError> {
    Ok(match suite {
        Suite::Orthoscheme => orthoscheme(grid)?,
        Suite::Tetrahedra => tetrahedra(grid)?,
        Suite::Solids => solids(grid)?,
        Suite::All => {
            let mut rows = orthoscheme(grid)?;
            rows.extend(tetrahedra(grid)?);
            rows.extend(solids(grid)?);
            rows
        }
    })
}
