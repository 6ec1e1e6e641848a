//! Monte Carlo volume oracle in the Klein model.
//!
//! Points are drawn uniformly from a Euclidean box and weighted by the Klein
//! density. Geodesics and hyperplanes of the Klein model are Euclidean lines
//! and planes, so every membership test is elementary.
//!
//! Regions are stored in the unit ball (Klein coordinates divided by `k`);
//! [`estimate`] rescales by `kⁿ`. Work is split into a fixed number of
//! shards; shard `i` draws from the ChaCha8 stream `i` of the seed, and shard
//! sums are merged in shard order, so the result is a pure function of
//! `(region, samples, seed, shards)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::models::{orthogonal_to_klein, Curvature, PointKlein, PointOrthogonal};

pub const DEFAULT_SHARDS: u64 = 64;
pub const MIN_SAMPLES: u64 = 10_000;
/// Largest unit-ball radius a region may reach without explicit truncation.
pub const MAX_RADIUS: f64 = 1.0 - 1e-9;

const GOLDEN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Empty,
    Box,
    Ball {
        radius: f64,
    },
    Barrel {
        half: f64,
        bracket: f64,
        cosh_q: f64,
    },
    Cone {
        cos_beta: f64,
        top: f64,
    },
    Slab {
        base: f64,
        sinh_q: f64,
    },
    Simplex {
        origin: Vec<f64>,
        inverse: Vec<Vec<f64>>,
    },
}

/// A membership predicate with a bounding box inside the unit Klein ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    dim: usize,
    lo: Vec<f64>,
    hi: Vec<f64>,
    truncation: f64,
    shape: Shape,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
    pub shards: u64,
}

impl McEstimate {
    /// `(mean − reference) / stderr`; zero when both sides agree exactly.
    pub fn z_score(&self, reference: f64) -> f64 {
        let d = self.mean - reference;
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum()
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} = {v} must be positive and finite")))
    }
}

fn check_compact(radius: f64) -> Result<()> {
    if radius < MAX_RADIUS {
        Ok(())
    } else {
        Err(domain(format!(
            "region reaches Klein radius {radius}, too close to the boundary; use a truncated region"
        )))
    }
}

/// Golden-section minimizer of a unimodal `f` on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// `cosh` of the distance between unit-ball points `x` and `s·e₁`, up to the
/// factor `1/√(1−|x|²)`.
fn axis_cosh(x: &[f64], s: f64) -> f64 {
    (1.0 - x[0] * s) / (1.0 - s * s).sqrt()
}

fn invert(m: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let scale = m.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let mut a: Vec<Vec<f64>> = m
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if !(a[piv][col].abs() > 1e-12 * scale) {
            return None;
        }
        a.swap(col, piv);
        let p = a[col][col];
        a[col].iter_mut().for_each(|v| *v /= p);
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            let f = row[col];
            if r != col && f != 0.0 {
                row.iter_mut()
                    .zip(&pivot_row)
                    .for_each(|(v, p)| *v -= f * p);
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl Region {
    fn build(lo: Vec<f64>, hi: Vec<f64>, shape: Shape) -> Self {
        Self {
            dim: lo.len(),
            lo,
            hi,
            truncation: MAX_RADIUS,
            shape,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Bounding box in unit-ball coordinates, clipped to the truncation radius.
    pub fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        let t = self.truncation;
        (
            self.lo.iter().map(|v| v.max(-t)).collect(),
            self.hi.iter().map(|v| v.min(t)).collect(),
        )
    }

    pub fn truncation(&self) -> f64 {
        self.truncation
    }

    /// Restricts the region to the ball `|X| ≤ t·k`, `0 < t < 1`.
    pub fn with_truncation(mut self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t < 1.0) {
            return Err(domain(format!("truncation radius {t} must lie in (0, 1)")));
        }
        self.truncation = t;
        Ok(self)
    }

    /// Region with no points.
    pub fn empty(dim: usize) -> Self {
        Self::build(vec![0.0; dim], vec![0.0; dim], Shape::Empty)
    }

    /// The axis-aligned box `[lo, hi]` of Klein coordinates (radius-`k` ball).
    pub fn klein_box(lo: &[f64], hi: &[f64], k: Curvature) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(domain("box corners must have equal, nonzero dimension"));
        }
        if lo.iter().zip(hi).any(|(l, h)| !(l < h)) {
            return Err(domain("box must satisfy lo < hi in every coordinate"));
        }
        let kk = k.get();
        let lo: Vec<f64> = lo.iter().map(|v| v / kk).collect();
        let hi: Vec<f64> = hi.iter().map(|v| v / kk).collect();
        let far: f64 = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| l.abs().max(h.abs()).powi(2))
            .sum();
        check_compact(far.sqrt())?;
        Ok(Self::build(lo, hi, Shape::Box))
    }

    /// Hyperbolic ball of radius `x` centred at the origin.
    pub fn ball(dim: usize, x: f64, k: Curvature) -> Result<Self> {
        check_positive("radius", x)?;
        crate::models::check_dim(dim)?;
        let radius = (x / k.get()).tanh();
        check_compact(radius)?;
        Ok(Self::build(
            vec![-radius; dim],
            vec![radius; dim],
            Shape::Ball { radius },
        ))
    }

    /// Points within distance `q` of a segment of length `p` on the first axis,
    /// centred at the origin, whose foot lies on the segment (no end caps).
    pub fn barrel(p: f64, q: f64, k: Curvature) -> Result<Self> {
        check_positive("segment length", p)?;
        check_positive("distance", q)?;
        let (hp, qq) = (0.5 * p / k.get(), q / k.get());
        let half = hp.tanh();
        let rim = (half * half + (qq.tanh() / hp.cosh()).powi(2)).sqrt();
        check_compact(rim)?;
        let side = qq.tanh();
        Ok(Self::build(
            vec![-half, -side, -side],
            vec![half, side, side],
            Shape::Barrel {
                half,
                bracket: (hp + 1.0).tanh(),
                cosh_q: qq.cosh(),
            },
        ))
    }

    /// Right circular cone with apex at the origin, axis `e₃`, base disk of
    /// radius `b` and half-angle `β` at the apex.
    pub fn cone(b: f64, beta: f64, k: Curvature) -> Result<Self> {
        check_positive("base radius", b)?;
        if !(beta > 0.0 && beta < std::f64::consts::FRAC_PI_2) {
            return Err(domain(format!(
                "apex half-angle {beta} must lie in (0, π/2)"
            )));
        }
        let bb = b / k.get();
        let h = (bb.tanh() / beta.tan()).asinh();
        let top = h.tanh();
        check_compact((h.cosh() * bb.cosh()).acosh().tanh())?;
        let side = top * beta.tan();
        Ok(Self::build(
            vec![-side, -side, 0.0],
            vec![side, side, top],
            Shape::Cone {
                cos_beta: beta.cos(),
                top,
            },
        ))
    }

    /// Points on one side of a disk of area `p` in the plane `X₃ = 0`, within
    /// distance `q` of it and with foot of the perpendicular inside the disk.
    pub fn slab(p: f64, q: f64, k: Curvature) -> Result<Self> {
        check_positive("base area", p)?;
        check_positive("distance", q)?;
        let kk = k.get();
        let rho = (1.0 + p / (2.0 * std::f64::consts::PI * kk * kk)).acosh();
        let qq = q / kk;
        let base = rho.tanh();
        check_compact((base * base + (qq.tanh() / rho.cosh()).powi(2)).sqrt())?;
        Ok(Self::build(
            vec![-base, -base, 0.0],
            vec![base, base, qq.tanh()],
            Shape::Slab {
                base,
                sinh_q: qq.sinh(),
            },
        ))
    }

    /// Simplex spanned by `n + 1` Klein points strictly inside the ball.
    pub fn simplex(vertices: &[PointKlein], k: Curvature) -> Result<Self> {
        Self::simplex_impl(vertices, k, false)
    }

    /// Simplex whose vertices may lie on the sphere at infinity; the region is
    /// cut at the truncation radius (default `1 − 10⁻⁶`).
    pub fn simplex_ideal(vertices: &[PointKlein], k: Curvature) -> Result<Self> {
        Self::simplex_impl(vertices, k, true)?.with_truncation(1.0 - 1e-6)
    }

    fn simplex_impl(vertices: &[PointKlein], k: Curvature, ideal: bool) -> Result<Self> {
        let n = vertices.first().map(PointKlein::dim).unwrap_or(0);
        if vertices.len() != n + 1 || vertices.iter().any(|v| v.dim() != n) {
            return Err(domain(format!(
                "a simplex in dimension {n} needs {} vertices",
                n + 1
            )));
        }
        let kk = k.get();
        let pts: Vec<Vec<f64>> = vertices
            .iter()
            .map(|v| v.coords().iter().map(|c| c / kk).collect())
            .collect();
        for p in &pts {
            let r = norm2(p).sqrt();
            if ideal {
                if r > 1.0 + 1e-12 {
                    return Err(domain(format!(
                        "vertex at Klein radius {r} lies outside the ball"
                    )));
                }
            } else {
                check_compact(r)?;
            }
        }
        let origin = pts[0].clone();
        let m: Vec<Vec<f64>> = (0..n)
            .map(|i| (1..=n).map(|j| pts[j][i] - origin[i]).collect())
            .collect();
        let inverse = invert(m).ok_or_else(|| domain("degenerate simplex"))?;
        let lo = (0..n)
            .map(|i| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min))
            .collect();
        let hi = (0..n)
            .map(|i| pts.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max))
            .collect();
        Ok(Self::build(lo, hi, Shape::Simplex { origin, inverse }))
    }

    /// Membership of a unit-ball point.
    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim
            || x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .any(|(v, (l, h))| v < l || v > h)
        {
            return false;
        }
        let r2 = norm2(x);
        if r2 > self.truncation * self.truncation {
            return false;
        }
        match &self.shape {
            Shape::Empty => false,
            Shape::Box => true,
            Shape::Ball { radius } => r2 <= radius * radius,
            Shape::Barrel {
                half,
                bracket,
                cosh_q,
            } => {
                let s = golden_min(|s| axis_cosh(x, s), -bracket, *bracket, GOLDEN_TOL);
                s.abs() <= *half && axis_cosh(x, s) <= cosh_q * (1.0 - r2).sqrt()
            }
            Shape::Cone { cos_beta, top } => x[2] <= *top && x[2] >= r2.sqrt() * cos_beta,
            Shape::Slab { base, sinh_q } => {
                x[2] >= 0.0
                    && x[0] * x[0] + x[1] * x[1] <= base * base
                    && x[2] <= sinh_q * (1.0 - r2).sqrt()
            }
            Shape::Simplex { origin, inverse } => {
                let d: Vec<f64> = x.iter().zip(origin).map(|(a, b)| a - b).collect();
                let mut total = 0.0;
                for row in inverse {
                    let l: f64 = row.iter().zip(&d).map(|(a, b)| a * b).sum();
                    if l < -1e-12 {
                        return false;
                    }
                    total += l;
                }
                total <= 1.0 + 1e-12
            }
        }
    }

    /// Membership of a point of the radius-`k` Klein ball.
    pub fn contains_point(&self, p: &PointKlein, k: Curvature) -> bool {
        let x: Vec<f64> = p.coords().iter().map(|c| c / k.get()).collect();
        self.contains(&x)
    }
}

/// Vertices of the orthoscheme with orthogonal edges `a, b, c`: `V₀` at the
/// origin, `V₀V₁ = a ⊥ V₁V₂ = b`, and `V₂V₃ = c` perpendicular to the plane
/// `V₀V₁V₂`.
pub fn orthoscheme_vertices(a: f64, b: f64, c: f64, k: Curvature) -> Result<[PointKlein; 4]> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        check_positive(name, v)?;
    }
    let map =
        |x: [f64; 3]| orthogonal_to_klein(&PointOrthogonal::new(x.to_vec()).expect("finite"), k);
    Ok([
        map([0.0, 0.0, 0.0]),
        map([0.0, 0.0, a]),
        map([b, 0.0, a]),
        map([b, c, a]),
    ])
}

/// Orthoscheme vertices with `V₁` at the origin; `a` and `c` may be infinite,
/// which puts `V₀` resp. `V₃` on the sphere at infinity.
pub fn orthoscheme_vertices_centered(
    a: f64,
    b: f64,
    c: f64,
    k: Curvature,
) -> Result<[PointKlein; 4]> {
    for (name, v) in [("a", a), ("c", c)] {
        if !(v > 0.0) {
            return Err(domain(format!("{name} = {v} must be positive")));
        }
    }
    check_positive("b", b)?;
    let kk = k.get();
    let (ta, tb, tc) = ((a / kk).tanh(), (b / kk).tanh(), (c / kk).tanh());
    let p = |x: [f64; 3]| PointKlein::new(x.iter().map(|v| kk * v).collect()).expect("finite");
    Ok([
        p([ta, 0.0, 0.0]),
        p([0.0, 0.0, 0.0]),
        p([0.0, tb, 0.0]),
        p([0.0, tb, tc / (b / kk).cosh()]),
    ])
}

#[derive(Default, Clone, Copy)]
struct ShardSum {
    hits: u64,
    w: f64,
    w2: f64,
}

fn run_shard(region: &Region, lo: &[f64], hi: &[f64], n: u64, seed: u64, shard: u64) -> ShardSum {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    let exponent = -0.5 * (region.dim as f64 + 1.0);
    let mut x = vec![0.0; region.dim];
    let mut acc = ShardSum::default();
    for _ in 0..n {
        for (i, v) in x.iter_mut().enumerate() {
            *v = lo[i] + (hi[i] - lo[i]) * rng.gen::<f64>();
        }
        if region.contains(&x) {
            let w = (1.0 - norm2(&x)).powf(exponent);
            acc.hits += 1;
            acc.w += w;
            acc.w2 += w * w;
        }
    }
    acc
}

/// Monte Carlo estimate of the hyperbolic volume of `region` with
/// [`DEFAULT_SHARDS`] shards.
pub fn estimate(region: &Region, samples: u64, seed: u64, k: Curvature) -> Result<McEstimate> {
    estimate_sharded(region, samples, seed, k, DEFAULT_SHARDS)
}

pub fn estimate_sharded(
    region: &Region,
    samples: u64,
    seed: u64,
    k: Curvature,
    shards: u64,
) -> Result<McEstimate> {
    if samples < MIN_SAMPLES {
        return Err(domain(format!(
            "at least {MIN_SAMPLES} samples are required, got {samples}"
        )));
    }
    if shards == 0 || shards > samples {
        return Err(domain(format!(
            "shard count {shards} must lie in 1..={samples}"
        )));
    }
    let (lo, hi) = region.bbox();
    let corner: f64 = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| l.abs().max(h.abs()).powi(2))
        .sum();
    let nearest: f64 = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| {
            if *l > 0.0 {
                l * l
            } else if *h < 0.0 {
                h * h
            } else {
                0.0
            }
        })
        .sum();
    if nearest.sqrt() >= region.truncation || corner.is_nan() {
        return Err(domain("bounding box lies outside the sampled ball"));
    }
    let empty = lo.iter().zip(&hi).any(|(l, h)| !(l < h)) || region.shape == Shape::Empty;
    let base = samples / shards;
    let extra = samples % shards;
    let parts: Vec<ShardSum> = if empty {
        Vec::new()
    } else {
        (0..shards)
            .into_par_iter()
            .map(|i| run_shard(region, &lo, &hi, base + u64::from(i < extra), seed, i))
            .collect()
    };
    let (mut w, mut w2, mut hits) = (0.0, 0.0, 0);
    for p in &parts {
        w += p.w;
        w2 += p.w2;
        hits += p.hits;
    }
    let box_volume: f64 = if empty {
        0.0
    } else {
        lo.iter().zip(&hi).map(|(l, h)| h - l).product()
    };
    let n = samples as f64;
    let mean_w = w / n;
    let var_w = ((w2 / n - mean_w * mean_w) * n / (n - 1.0)).max(0.0);
    let scale = box_volume * k.get().powi(region.dim as i32);
    Ok(McEstimate {
        mean: scale * mean_w,
        stderr: scale * (var_w / n).sqrt(),
        samples,
        hits,
        seed,
        shards,
    })
}
