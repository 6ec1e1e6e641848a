use clap::{Args, ValueEnum};
use serde::{Deserialize, Deserializer};
use serde_json::{json, Map, Value};

use hypervol_core::mc::{self, orthoscheme_vertices, orthoscheme_vertices_centered, Region};
use hypervol_core::orthoscheme as ortho;
use hypervol_core::solids;
use hypervol_core::tetrahedra::{
    self as tetra, LambertCubeAngles, LambertTheta, OctahedronAngles, TetraDihedrals,
};
use hypervol_core::{Curvature, IntegralResult, Tolerance};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Sphere,
    Barrel,
    BarrelWedge,
    Equidistant,
    Sector,
    Cone,
    AsymptoticCone,
    OrthoschemeEdges,
    OrthoschemeAngles,
    OrthoschemeOneIdeal,
    OrthoschemeTwoIdeal,
    IdealTetraB,
    #[value(name = "bolyai-1")]
    Bolyai1,
    #[value(name = "bolyai-asym-1")]
    BolyaiAsym1,
    #[value(name = "bolyai-asym-2")]
    BolyaiAsym2,
    NdimOrthoscheme,
    Milnor,
    DerevninMednykh,
    MurakamiYano,
    LambertCube,
    Mohanty,
    #[value(name = "triangle-2d")]
    Triangle2d,
}

impl Shape {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }

    fn required(self) -> &'static [&'static str] {
        use Shape::*;
        match self {
            Sphere => &["x"],
            Barrel | Equidistant => &["p", "q"],
            BarrelWedge => &["p", "t"],
            Sector => &["p"],
            Cone => &["b", "beta"],
            AsymptoticCone | OrthoschemeTwoIdeal | IdealTetraB => &["b"],
            OrthoschemeEdges | Bolyai1 => &["a", "b", "c"],
            OrthoschemeAngles => &["alpha", "beta", "gamma"],
            OrthoschemeOneIdeal => &["b", "c"],
            BolyaiAsym1 => &["alpha", "c"],
            BolyaiAsym2 => &["amax", "b"],
            NdimOrthoscheme => &[],
            Milnor => &["A", "B", "C"],
            DerevninMednykh | MurakamiYano => &["A", "B", "C", "D", "E", "F"],
            LambertCube => &["w0", "w1", "w2"],
            Mohanty => &["A", "B", "E"],
            Triangle2d => &["a", "b"],
        }
    }
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Shape::from_str(&s, false).map_err(serde::de::Error::custom)
    }
}

const ANGLES: [&str; 14] = [
    "alpha", "beta", "gamma", "amax", "A", "B", "C", "D", "E", "F", "w0", "w1", "w2", "theta",
];

fn default_k() -> f64 {
    1.0
}

/// One volume job: a shape and its parameters. Field names match the flags.
#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[arg(value_enum)]
    pub shape: Shape,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub gamma: Option<f64>,
    /// Upper angle of the second asymptotic Bolyai integral.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub amax: Option<f64>,
    /// Orthogonal edges of an n-dimensional orthoscheme, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(default)]
    pub edges: Option<Vec<f64>>,
    #[arg(long = "A", allow_hyphen_values = true)]
    #[serde(default, rename = "A")]
    pub angle_a: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    #[serde(default, rename = "B")]
    pub angle_b: Option<f64>,
    #[arg(long = "C", allow_hyphen_values = true)]
    #[serde(default, rename = "C")]
    pub angle_c: Option<f64>,
    #[arg(long = "D", allow_hyphen_values = true)]
    #[serde(default, rename = "D")]
    pub angle_d: Option<f64>,
    #[arg(long = "E", allow_hyphen_values = true)]
    #[serde(default, rename = "E")]
    pub angle_e: Option<f64>,
    #[arg(long = "F", allow_hyphen_values = true)]
    #[serde(default, rename = "F")]
    pub angle_f: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub w0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub w1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub w2: Option<f64>,
    /// Auxiliary angle of the Lambert cube.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub theta: Option<f64>,
    /// Auxiliary parameter determining the Lambert cube angle θ.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub v1: Option<f64>,
    /// Curvature radius; the curvature is −1/k².
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    #[serde(default = "default_k")]
    pub k: f64,
    /// Relative quadrature tolerance (default 1e-10, 1e-8 for nested integrals).
    #[arg(long)]
    #[serde(default)]
    pub reltol: Option<f64>,
    /// Angles are given in degrees.
    #[arg(long)]
    #[serde(default)]
    pub degrees: bool,
    /// Monte Carlo sample count.
    #[arg(long)]
    #[serde(default)]
    pub samples: Option<u64>,
    /// Monte Carlo seed.
    #[arg(long)]
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A validated job: angles in radians, parameters complete for the shape.
#[derive(Debug, Clone)]
pub struct Job {
    pub shape: Shape,
    params: Vec<(&'static str, f64)>,
    edges: Option<Vec<f64>>,
    k: Curvature,
    reltol: Option<f64>,
    pub samples: u64,
    pub seed: u64,
}

pub struct Evaluation {
    pub volume: f64,
    pub method: &'static str,
    pub error_estimate: f64,
}

impl JobSpec {
    fn scalars(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("x", self.x),
            ("p", self.p),
            ("q", self.q),
            ("t", self.t),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("amax", self.amax),
            ("A", self.angle_a),
            ("B", self.angle_b),
            ("C", self.angle_c),
            ("D", self.angle_d),
            ("E", self.angle_e),
            ("F", self.angle_f),
            ("w0", self.w0),
            ("w1", self.w1),
            ("w2", self.w2),
            ("theta", self.theta),
            ("v1", self.v1),
        ]
    }

    pub fn validate(&self) -> Result<Job, CliError> {
        let shape = self.shape;
        let invalid = |m: String| Err(CliError::Invalid(format!("{}: {m}", shape.name())));
        let mut allowed: Vec<&str> = shape.required().to_vec();
        if shape == Shape::LambertCube {
            match (self.theta, self.v1) {
                (Some(_), None) => allowed.push("theta"),
                (None, Some(_)) => allowed.push("v1"),
                _ => return invalid("exactly one of --theta and --v1 is required".into()),
            }
        }
        let mut params = Vec::new();
        for (name, v) in self.scalars() {
            match (allowed.contains(&name), v) {
                (true, Some(v)) => {
                    if !v.is_finite() {
                        return invalid(format!("--{name} must be finite"));
                    }
                    let v = if self.degrees && ANGLES.contains(&name) {
                        v.to_radians()
                    } else {
                        v
                    };
                    params.push((name, v));
                }
                (true, None) => return invalid(format!("missing --{name}")),
                (false, Some(_)) => {
                    return invalid(format!("--{name} does not apply to this shape"))
                }
                (false, None) => {}
            }
        }
        let edges = match (shape == Shape::NdimOrthoscheme, &self.edges) {
            (true, Some(e)) => Some(e.clone()),
            (true, None) => return invalid("missing --edges".into()),
            (false, Some(_)) => return invalid("--edges does not apply to this shape".into()),
            (false, None) => None,
        };
        let k = Curvature::new(self.k).map_err(|e| CliError::Invalid(e.to_string()))?;
        if let Some(r) = self.reltol {
            Tolerance::rel(r).map_err(|e| CliError::Invalid(e.to_string()))?;
        }
        Ok(Job {
            shape,
            params,
            edges,
            k,
            reltol: self.reltol,
            samples: self.samples.unwrap_or(1_000_000),
            seed: self.seed.unwrap_or(0),
        })
    }
}

fn scaled(r: IntegralResult, f: f64) -> (f64, f64) {
    (r.value * f, r.error_estimate * f)
}

impl Job {
    fn get(&self, name: &str) -> f64 {
        self.params
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
            .expect("validated parameter")
    }

    fn tol(&self, nested: bool) -> Tolerance {
        let r = self.reltol.unwrap_or(if nested { 1e-8 } else { 1e-10 });
        Tolerance::rel(r).expect("validated tolerance")
    }

    pub fn params_json(&self) -> Value {
        let mut m = Map::new();
        for (n, v) in &self.params {
            m.insert((*n).into(), json!(v));
        }
        if let Some(e) = &self.edges {
            m.insert("edges".into(), json!(e));
        }
        m.insert("k".into(), json!(self.k.get()));
        Value::Object(m)
    }

    fn tetra(&self) -> Result<TetraDihedrals, CliError> {
        let g = |n| self.get(n);
        Ok(TetraDihedrals::new(
            g("A"),
            g("B"),
            g("C"),
            g("D"),
            g("E"),
            g("F"),
        )?)
    }

    pub fn evaluate(&self) -> Result<Evaluation, CliError> {
        use Shape::*;
        let k = self.k;
        let kk = k.get();
        let k3 = kk.powi(3);
        let tol = self.tol(false);
        let g = |n| self.get(n);
        let closed = |v: f64, check: IntegralResult| (v, (v - check.value).abs(), "closed form");
        let quad = |r: IntegralResult, f: f64| {
            let (v, e) = scaled(r, f);
            (v, e, "quadrature")
        };
        let (volume, error_estimate, method) = match self.shape {
            Sphere => closed(
                solids::sphere_volume(g("x"), k)?,
                solids::sphere_volume_by_quadrature(g("x"), k, tol)?,
            ),
            Barrel => closed(
                solids::barrel(g("p"), g("q"), k)?,
                solids::barrel_by_quadrature(g("p"), g("q"), k, tol)?,
            ),
            Equidistant => closed(
                solids::equidistant_body(g("p"), g("q"), k)?,
                solids::equidistant_body_by_quadrature(g("p"), g("q"), k, tol)?,
            ),
            BarrelWedge => (solids::barrel_wedge(g("p"), g("t"))?, 0.0, "closed form"),
            Sector => (solids::paraspherical_sector(g("p"), k)?, 0.0, "closed form"),
            Cone => quad(solids::circular_cone_k(g("b"), g("beta"), k, tol)?, 1.0),
            AsymptoticCone => (solids::asymptotic_cone_k(g("b"), k)?, 0.0, "closed form"),
            OrthoschemeEdges => quad(ortho::volume_edges_k(&self.ortho_edges()?, k, tol)?, 1.0),
            OrthoschemeAngles => {
                let ang = ortho::OrthoschemeAngles::new(g("alpha"), g("beta"), g("gamma"))?;
                let v = ortho::volume_angles(&ang)?;
                let check = ortho::volume_edges(&ortho::angles_to_edges(&ang)?, tol)?;
                (k3 * v, k3 * (v - check.value).abs(), "lobachevsky")
            }
            OrthoschemeOneIdeal => {
                quad(ortho::volume_one_ideal(g("b") / kk, g("c") / kk, tol)?, k3)
            }
            OrthoschemeTwoIdeal => quad(ortho::volume_two_ideal(g("b") / kk, tol)?, k3),
            IdealTetraB => quad(ortho::volume_ideal_tetrahedron_b(g("b") / kk, tol)?, k3),
            Bolyai1 => {
                let e = ortho::OrthoschemeEdges::new(g("a") / kk, g("b") / kk, g("c") / kk)?;
                quad(ortho::bolyai_integral_1(&e, tol)?, k3)
            }
            BolyaiAsym1 => quad(
                ortho::bolyai_asymptotic_1(g("alpha"), g("c") / kk, tol)?,
                k3,
            ),
            BolyaiAsym2 => quad(ortho::bolyai_asymptotic_2(g("amax"), g("b") / kk, tol)?, k3),
            NdimOrthoscheme => {
                let edges = self.edges.as_ref().expect("validated edges");
                let o = ortho::NdimOrthoscheme::new(edges.iter().map(|e| e / kk).collect())?;
                quad(
                    ortho::volume_ndim(&o, self.tol(true))?,
                    kk.powi(edges.len() as i32),
                )
            }
            Milnor => (
                k3 * tetra::milnor_ideal(g("A"), g("B"), g("C"))?,
                0.0,
                "lobachevsky",
            ),
            DerevninMednykh => quad(tetra::derevnin_mednykh(&self.tetra()?, tol)?, k3),
            MurakamiYano => (k3 * tetra::murakami_yano(&self.tetra()?)?, 0.0, "clausen"),
            LambertCube => {
                let theta = match self.params.iter().find(|(n, _)| *n == "theta") {
                    Some((_, t)) => LambertTheta::Angle(*t),
                    None => LambertTheta::Auxiliary(g("v1")),
                };
                let c = LambertCubeAngles::new([g("w0"), g("w1"), g("w2")], theta)?;
                (k3 * tetra::lambert_cube(&c)?, 0.0, "lobachevsky")
            }
            Mohanty => {
                let o = OctahedronAngles::new(g("A"), g("B"), g("E"))?;
                (k3 * tetra::mohanty_octahedron(&o)?, 0.0, "lobachevsky")
            }
            Triangle2d => {
                let (a, b) = (g("a") / kk, g("b") / kk);
                let r = ortho::area_right_triangle(a, b, tol)?;
                let defect = ortho::right_triangle_defect(a, b)?;
                (
                    kk * kk * r.value,
                    kk * kk * (r.value - defect).abs(),
                    "quadrature",
                )
            }
        };
        Ok(Evaluation {
            volume,
            method,
            error_estimate,
        })
    }

    fn ortho_edges(&self) -> Result<ortho::OrthoschemeEdges, CliError> {
        Ok(ortho::OrthoschemeEdges::new(
            self.get("a"),
            self.get("b"),
            self.get("c"),
        )?)
    }

    /// Monte Carlo region and the analytic value it is compared with.
    pub fn mc_region(&self) -> Result<(Region, f64), CliError> {
        use Shape::*;
        let k = self.k;
        let g = |n| self.get(n);
        let region = match self.shape {
            Sphere => Region::ball(3, g("x"), k)?,
            Barrel => Region::barrel(g("p"), g("q"), k)?,
            Cone => Region::cone(g("b"), g("beta"), k)?,
            Equidistant => Region::slab(g("p"), g("q"), k)?,
            OrthoschemeEdges => Region::simplex(&orthoscheme_vertices(g("a"), g("b"), g("c"), k)?, k)?,
            OrthoschemeOneIdeal => {
                Region::simplex_ideal(&orthoscheme_vertices_centered(f64::INFINITY, g("b"), g("c"), k)?, k)?
            }
            other => {
                return Err(CliError::Invalid(format!(
                    "{}: no Monte Carlo region for this shape (supported: sphere, barrel, cone, equidistant, orthoscheme-edges, orthoscheme-one-ideal)",
                    other.name()
                )))
            }
        };
        Ok((region, self.evaluate()?.volume))
    }

    pub fn run_mc(&self) -> Result<(f64, mc::McEstimate), CliError> {
        let (region, analytic) = self.mc_region()?;
        Ok((
            analytic,
            mc::estimate(&region, self.samples, self.seed, self.k)?,
        ))
    }
}
