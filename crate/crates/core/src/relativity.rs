//! Special-relativistic kinematics and cosmological line elements.
//!
//! Boosts are along the `x` axis between parallel frames. The time component
//! of the boost uses `t' = γ(t - v x / c²)`; printed variants with `v/c` in
//! place of `v/c²` agree with it in units where `c = 1`.

use nalgebra::DMatrix;
use thiserror::Error;

/// Symmetry tolerance for metric matrices.
pub const METRIC_SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Default band inside which a scale-factor derivative counts as zero.
pub const DEFAULT_ZERO_BAND: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelativityError {
    #[error("light speed must be positive and finite, got {0}")]
    InvalidLightSpeed(f64),
    #[error("boost velocity |v| = {v} must be below c = {c}")]
    Superluminal { v: f64, c: f64 },
    #[error("velocity composition denominator vanishes (1 - v u_x / c^2 = 0)")]
    VanishingDenominator,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("metric is not symmetric: |g[{i}][{j}] - g[{j}][{i}]| = {gap:e}")]
    AsymmetricMetric { i: usize, j: usize, gap: f64 },
    #[error("coordinate singularity: 1 - K r^2 = {0} is not positive")]
    CoordinateSingularity(f64),
    #[error("scale factor must be positive and finite, got a({t}) = {value}")]
    InvalidScaleFactor { t: f64, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, RelativityError>;

/// Event `(x₁, x₂, x₃ | t)` of an absolute spacetime with independent time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsoluteEvent {
    pub x: [f64; 3],
    pub t: f64,
}

/// Event `(x₁, x₂, x₃, t)` of a relative spacetime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeEvent {
    pub x: [f64; 3],
    pub t: f64,
}

impl RelativeEvent {
    pub const ORIGIN: RelativeEvent = RelativeEvent { x: [0.0; 3], t: 0.0 };

    pub fn new(x: f64, y: f64, z: f64, t: f64) -> Self {
        Self { x: [x, y, z], t }
    }
}

/// Relative velocity `v` along `x` and light speed `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParams {
    v: f64,
    c: f64,
}

impl BoostParams {
    pub fn new(v: f64, c: f64) -> Result<Self> {
        check_light_speed(c)?;
        if !v.is_finite() || v.abs() >= c {
            return Err(RelativityError::Superluminal { v, c });
        }
        Ok(Self { v, c })
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn beta(&self) -> f64 {
        self.v / self.c
    }

    pub fn gamma(&self) -> f64 {
        1.0 / self.inverse_gamma()
    }

    fn inverse_gamma(&self) -> f64 {
        let beta = self.beta();
        ((1.0 - beta) * (1.0 + beta)).sqrt()
    }

    /// Parameters of the single boost equal to `self` followed by `next`.
    pub fn compose(&self, next: &BoostParams) -> Result<BoostParams> {
        if self.c != next.c {
            return Err(RelativityError::InvalidParameter(format!(
                "cannot compose boosts with light speeds {} and {}",
                self.c, next.c
            )));
        }
        let (b1, b2) = (self.beta(), next.beta());
        BoostParams::new(self.c * (b1 + b2) / (1.0 + b1 * b2), self.c)
    }
}

fn check_light_speed(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(RelativityError::InvalidLightSpeed(c))
    }
}

fn euclidean(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

/// Signed time interval `t₁ - t₂` and spatial distance between two events.
pub fn interval_absolute(a1: &AbsoluteEvent, a2: &AbsoluteEvent) -> (f64, f64) {
    (a1.t - a2.t, euclidean(&a1.x, &a2.x))
}

/// `Δ²s = -c²Δt² + Δ²`.
pub fn spacetime_interval_sq(b1: &RelativeEvent, b2: &RelativeEvent, c: f64) -> Result<f64> {
    check_light_speed(c)?;
    let dt = b1.t - b2.t;
    let d = euclidean(&b1.x, &b2.x);
    Ok(-c * c * dt * dt + d * d)
}

/// Coordinates of `e` in the frame moving with velocity `v` along `x`.
pub fn lorentz_boost(e: &RelativeEvent, b: &BoostParams) -> RelativeEvent {
    let inv_gamma = b.inverse_gamma();
    let [x, y, z] = e.x;
    RelativeEvent {
        x: [(x - b.v * e.t) / inv_gamma, y, z],
        t: (e.t - b.v / (b.c * b.c) * x) / inv_gamma,
    }
}

/// Velocity `u` measured in the boosted frame.
///
/// Evaluated in units of `c`, which makes `±c` along the boost axis an exact
/// fixed point.
pub fn velocity_transform(u: [f64; 3], b: &BoostParams) -> Result<[f64; 3]> {
    let c = b.c;
    let beta = b.beta();
    let w = [u[0] / c, u[1] / c, u[2] / c];
    let denom = 1.0 - beta * w[0];
    if denom == 0.0 || !denom.is_finite() {
        return Err(RelativityError::VanishingDenominator);
    }
    let inv_gamma = b.inverse_gamma();
    Ok([
        c * ((w[0] - beta) / denom),
        c * (w[1] * inv_gamma / denom),
        c * (w[2] * inv_gamma / denom),
    ])
}

/// Returns the anti-vector `-v`, so that `v + anti_vector(v) = 0` exactly.
pub fn anti_vector(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| -x).collect()
}

/// Position-dependent metric tensor `g_{μν}(x)`.
pub struct MetricForm {
    dimension: usize,
    g: MetricFn,
}

type MetricFn = Box<dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync>;

impl std::fmt::Debug for MetricForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetricForm")
            .field("dimension", &self.dimension)
            .finish()
    }
}

impl MetricForm {
    pub fn new<G>(dimension: usize, g: G) -> Self
    where
        G: Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'static,
    {
        Self {
            dimension,
            g: Box::new(g),
        }
    }

    /// Constant diagonal metric.
    pub fn diagonal(entries: &[f64]) -> Self {
        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries));
        Self::new(entries.len(), move |_| diag.clone())
    }

    /// `diag(-c², 1, 1, 1)` in coordinates `(t, x, y, z)`.
    pub fn minkowski(c: f64) -> Self {
        Self::diagonal(&[-c * c, 1.0, 1.0, 1.0])
    }

    /// Friedmann metric in coordinates `(t, r, θ, φ)`. Where `1 - K r² <= 0`
    /// the radial entry is non-finite; use [`friedmann_interval_sq`] for a
    /// checked evaluation.
    pub fn friedmann(params: FriedmannParams) -> Self {
        Self::new(4, move |x| {
            let (t, r, theta) = (x[0], x[1], x[2]);
            let a = (params.a)(t);
            let a2 = a * a;
            let c = params.c;
            let radial = 1.0 - params.k * r * r;
            let radial_entry = if radial > 0.0 { a2 / radial } else { f64::NAN };
            DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[
                -c * c,
                radial_entry,
                a2 * r * r,
                a2 * r * r * theta.sin().powi(2),
            ]))
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Metric at `x`, checked for shape and symmetry.
    pub fn at(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        if x.len() != self.dimension {
            return Err(RelativityError::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            });
        }
        let g = (self.g)(x);
        if g.nrows() != self.dimension || g.ncols() != self.dimension {
            return Err(RelativityError::DimensionMismatch {
                expected: self.dimension,
                found: g.nrows().max(g.ncols()),
            });
        }
        for i in 0..self.dimension {
            for j in (i + 1)..self.dimension {
                let gap = (g[(i, j)] - g[(j, i)]).abs();
                if gap > METRIC_SYMMETRY_TOLERANCE || gap.is_nan() {
                    return Err(RelativityError::AsymmetricMetric { i, j, gap });
                }
            }
        }
        Ok(g)
    }
}

/// `ds² = g_{μν}(x) dx^μ dx^ν`.
pub fn general_interval_sq(m: &MetricForm, x: &[f64], dx: &[f64]) -> Result<f64> {
    if dx.len() != m.dimension {
        return Err(RelativityError::DimensionMismatch {
            expected: m.dimension,
            found: dx.len(),
        });
    }
    let g = m.at(x)?;
    let mut sum = 0.0;
    for i in 0..m.dimension {
        for j in 0..m.dimension {
            sum += g[(i, j)] * dx[i] * dx[j];
        }
    }
    Ok(sum)
}

/// Scale factor as a function of time.
pub type ScaleFactor = std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Curvature parameter `K`, scale factor `a(t)` and light speed `c` of a
/// Friedmann cosmos.
#[derive(Clone)]
pub struct FriedmannParams {
    pub k: f64,
    pub a: ScaleFactor,
    pub c: f64,
}

impl std::fmt::Debug for FriedmannParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FriedmannParams")
            .field("k", &self.k)
            .field("c", &self.c)
            .finish()
    }
}

impl FriedmannParams {
    pub fn new<A>(k: f64, a: A, c: f64) -> Result<Self>
    where
        A: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_light_speed(c)?;
        Ok(Self {
            k,
            a: std::sync::Arc::new(a),
            c,
        })
    }
}

/// Friedmann line element
/// `-c²dt² + a²(t)[dr²/(1 - K r²) + r²(dθ² + sin²θ dφ²)]`.
pub fn friedmann_interval_sq(p: &FriedmannParams, coords: [f64; 4], d: [f64; 4]) -> Result<f64> {
    let [t, r, theta, _] = coords;
    let [dt, dr, dtheta, dphi] = d;
    let radial = 1.0 - p.k * r * r;
    if radial <= 0.0 || radial.is_nan() {
        return Err(RelativityError::CoordinateSingularity(radial));
    }
    let a = (p.a)(t);
    if !(a.is_finite() && a > 0.0) {
        return Err(RelativityError::InvalidScaleFactor { t, value: a });
    }
    let sin = theta.sin();
    let spatial = dr * dr / radial + r * r * (dtheta * dtheta + sin * sin * dphi * dphi);
    Ok(-p.c * p.c * dt * dt + a * a * spatial)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosmosClass {
    Static,
    Contracting,
    Expanding,
}

impl std::fmt::Display for CosmosClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CosmosClass::Static => "Static",
            CosmosClass::Contracting => "Contracting",
            CosmosClass::Expanding => "Expanding",
        })
    }
}

/// Default central-difference step at `t`.
pub fn default_step(t: f64) -> f64 {
    1e-5 * t.abs().max(1.0)
}

/// Central-difference estimate of `da/dt`.
pub fn scale_factor_rate<A: Fn(f64) -> f64>(a: A, t: f64, h: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(RelativityError::InvalidParameter(format!(
            "step must be positive, got {h}"
        )));
    }
    let (lo, hi) = (a(t - h), a(t + h));
    for (s, v) in [(t - h, lo), (t + h, hi)] {
        if !v.is_finite() {
            return Err(RelativityError::InvalidScaleFactor { t: s, value: v });
        }
    }
    Ok((hi - lo) / (2.0 * h))
}

/// Static, contracting or expanding by the sign of `da/dt` at `t`, with
/// `|da/dt| <= zero_band` counted as static.
pub fn classify_cosmos<A: Fn(f64) -> f64>(a: A, t: f64, h: f64, zero_band: f64) -> Result<CosmosClass> {
    if zero_band < 0.0 || zero_band.is_nan() {
        return Err(RelativityError::InvalidParameter(format!(
            "zero band must be nonnegative, got {zero_band}"
        )));
    }
    let rate = scale_factor_rate(a, t, h)?;
    Ok(if rate.abs() <= zero_band {
        CosmosClass::Static
    } else if rate > 0.0 {
        CosmosClass::Expanding
    } else {
        CosmosClass::Contracting
    })
}
