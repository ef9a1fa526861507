//! Pseudo-faces of Euclidean spaces.
//!
//! A pseudo-face of `R^m` in a pseudo-metric space `(R^n, ω)` is the image of
//! a continuous map `p: R^m -> (R^n, ω)`. This module evaluates such maps,
//! certifies uniform continuity of `ω ∘ p` empirically on a sampling grid,
//! transports self-maps of `R^m` through a chosen section of `p`, and
//! computes the pseudo-shapes of balls under the scaled and angle
//! deformations.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use thiserror::Error;

/// Boxed vector-valued map used for `p`, `ω` and sections.
pub type VectorMap = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Samples per axis used when no resolution is given.
pub const DEFAULT_GRID_RESOLUTION: usize = 64;

/// Tolerance for `p(section(y)) = y`.
pub const SECTION_TOLERANCE: f64 = 1e-9;

/// Tolerance for a point to count as lying on the unit sphere.
pub const SPHERE_TOLERANCE: f64 = 1e-9;

/// Grid refinement stops once a level would hold more points than this.
const MAX_GRID_POINTS: usize = 1 << 20;

/// Upper bound on pair comparisons spent scanning one grid level.
const MAX_PAIR_CHECKS: usize = 1 << 26;

/// A certified δ is sharpened until it spans this many grid cells.
const SHARPEN_CELLS: f64 = 12.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PseudoFaceError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid domain box: {0}")]
    InvalidBox(String),
    #[error("singular slice at t = 0")]
    SingularSlice,
    #[error("empty slice: |t| = {t} exceeds the ball radius {radius}")]
    EmptySlice { t: f64, radius: f64 },
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("point is off the unit sphere (norm {norm})")]
    OffSphere { norm: f64 },
    #[error("map returned a non-finite value at {point:?}")]
    NonFinite { point: Vec<f64> },
    #[error("pseudo-face map has no section")]
    MissingSection,
    #[error("section is not a right inverse of p: residual {residual:e} at {point:?}")]
    SectionMismatch { point: Vec<f64>, residual: f64 },
}

pub type Result<T> = std::result::Result<T, PseudoFaceError>;

/// A continuous map `p: R^m -> (R^n, ω)` together with the deformation `ω` of
/// the target and an optional right inverse of `p`.
pub struct PseudoFaceMap {
    source_dim: usize,
    target_dim: usize,
    omega: VectorMap,
    p: VectorMap,
    section: Option<VectorMap>,
}

impl std::fmt::Debug for PseudoFaceMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PseudoFaceMap")
            .field("source_dim", &self.source_dim)
            .field("target_dim", &self.target_dim)
            .field("has_section", &self.section.is_some())
            .finish()
    }
}

impl PseudoFaceMap {
    /// Map with the identity deformation on the target.
    pub fn new<P>(source_dim: usize, target_dim: usize, p: P) -> Result<Self>
    where
        P: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        if source_dim == 0 || target_dim == 0 {
            return Err(PseudoFaceError::InvalidParameter(
                "source and target dimensions must be at least 1".into(),
            ));
        }
        Ok(Self {
            source_dim,
            target_dim,
            omega: Box::new(|y: &[f64]| y.to_vec()),
            p: Box::new(p),
            section: None,
        })
    }

    pub fn with_omega<W>(mut self, omega: W) -> Self
    where
        W: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        self.omega = Box::new(omega);
        self
    }

    pub fn with_section<S>(mut self, section: S) -> Self
    where
        S: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        self.section = Some(Box::new(section));
        self
    }

    /// Coordinate projection `R^m -> R^n` keeping the first `n` coordinates,
    /// with the zero-padding section.
    pub fn projection(source_dim: usize, target_dim: usize) -> Result<Self> {
        if target_dim > source_dim {
            return Err(PseudoFaceError::InvalidParameter(format!(
                "cannot project R^{source_dim} onto R^{target_dim}"
            )));
        }
        let map = Self::new(source_dim, target_dim, move |x: &[f64]| {
            x[..target_dim].to_vec()
        })?;
        Ok(map.with_section(move |y: &[f64]| {
            let mut x = y.to_vec();
            x.resize(source_dim, 0.0);
            x
        }))
    }

    /// The ball deformation `p(x_1..x_n, t) = ς t (x_1..x_n)` on `R^{n+1}`.
    pub fn scaled_ball(n: usize, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(PseudoFaceError::InvalidParameter(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        Self::new(n + 1, n, move |x: &[f64]| {
            let t = x[n];
            x[..n].iter().map(|xi| sigma * t * xi).collect()
        })
    }

    /// The angle deformation `p(P) = 2∠(OP, Ot)` on `R^{n+1}`.
    pub fn angle(n: usize) -> Result<Self> {
        Self::new(n + 1, 1, |x: &[f64]| {
            vec![angle_field_sample(x).unwrap_or(f64::NAN)]
        })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn has_section(&self) -> bool {
        self.section.is_some()
    }

    fn check_source(&self, point: &[f64]) -> Result<()> {
        if point.len() != self.source_dim {
            return Err(PseudoFaceError::DimensionMismatch {
                expected: self.source_dim,
                found: point.len(),
            });
        }
        Ok(())
    }

    fn apply_p(&self, point: &[f64]) -> Result<Vec<f64>> {
        let y = (self.p)(point);
        if y.len() != self.target_dim {
            return Err(PseudoFaceError::DimensionMismatch {
                expected: self.target_dim,
                found: y.len(),
            });
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(PseudoFaceError::NonFinite {
                point: point.to_vec(),
            });
        }
        Ok(y)
    }

    /// `ω(p(x))`, the quantity whose continuity decides existence.
    pub fn deformed(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.check_source(point)?;
        let y = self.apply_p(point)?;
        let w = (self.omega)(&y);
        if w.iter().any(|v| !v.is_finite()) {
            return Err(PseudoFaceError::NonFinite {
                point: point.to_vec(),
            });
        }
        Ok(w)
    }

    /// Apply the section and verify it is a right inverse of `p` at `y`.
    pub fn lift(&self, y: &[f64]) -> Result<Vec<f64>> {
        let section = self.section.as_ref().ok_or(PseudoFaceError::MissingSection)?;
        if y.len() != self.target_dim {
            return Err(PseudoFaceError::DimensionMismatch {
                expected: self.target_dim,
                found: y.len(),
            });
        }
        let x = section(y);
        self.check_source(&x)?;
        let back = self.apply_p(&x)?;
        let residual = distance(&back, y);
        if residual > SECTION_TOLERANCE {
            return Err(PseudoFaceError::SectionMismatch {
                point: y.to_vec(),
                residual,
            });
        }
        Ok(x)
    }

    /// Checks `p(section(y)) = y` on every sample.
    pub fn validate_section(&self, samples: &[Vec<f64>]) -> Result<()> {
        samples.iter().try_for_each(|y| self.lift(y).map(|_| ()))
    }
}

/// Image of `point` in the pseudo-face.
pub fn evaluate_pseudo_face(map: &PseudoFaceMap, point: &[f64]) -> Result<Vec<f64>> {
    map.check_source(point)?;
    map.apply_p(point)
}

/// Axis-aligned sampling region for continuity checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
    grid_resolution: usize,
}

impl DomainBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, grid_resolution: usize) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(PseudoFaceError::InvalidBox(format!(
                "bounds have lengths {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (axis, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(PseudoFaceError::InvalidBox(format!(
                    "axis {axis}: need finite lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        if grid_resolution < 2 {
            return Err(PseudoFaceError::InvalidBox(
                "grid resolution must be at least 2".into(),
            ));
        }
        Ok(Self {
            lower,
            upper,
            grid_resolution,
        })
    }

    pub fn with_default_resolution(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        Self::new(lower, upper, DEFAULT_GRID_RESOLUTION)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn grid_resolution(&self) -> usize {
        self.grid_resolution
    }

    fn diameter(&self) -> f64 {
        distance(&self.lower, &self.upper)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub image_distance: f64,
}

/// Outcome of a grid-scale uniform-continuity search.
///
/// `passed` means every sampled pair closer than `delta_estimate` has image
/// distance below `epsilon`, and the grid resolved that δ by more than one
/// cell. On failure `delta_estimate` is twice the finest cell diagonal and the
/// counterexample lies within a single cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityReport {
    pub passed: bool,
    pub epsilon: f64,
    pub delta_estimate: f64,
    pub counterexample: Option<Counterexample>,
    /// Samples per axis of the grid that produced the verdict.
    pub grid_resolution: usize,
    pub grid_spacing: Vec<f64>,
}

struct Grid {
    resolution: usize,
    spacing: Vec<f64>,
    points: Vec<Vec<f64>>,
    images: Vec<Vec<f64>>,
}

impl Grid {
    fn build(map: &PseudoFaceMap, domain: &DomainBox, resolution: usize) -> Result<Self> {
        let dim = domain.dim();
        let spacing: Vec<f64> = (0..dim)
            .map(|a| (domain.upper[a] - domain.lower[a]) / (resolution - 1) as f64)
            .collect();
        let count = resolution.pow(dim as u32);
        let mut points = Vec::with_capacity(count);
        let mut images = Vec::with_capacity(count);
        let mut index = vec![0usize; dim];
        for _ in 0..count {
            let point: Vec<f64> = (0..dim)
                .map(|a| {
                    let frac = index[a] as f64 / (resolution - 1) as f64;
                    domain.lower[a] + (domain.upper[a] - domain.lower[a]) * frac
                })
                .collect();
            images.push(map.deformed(&point)?);
            points.push(point);
            // odometer, last axis fastest
            for a in (0..dim).rev() {
                index[a] += 1;
                if index[a] < resolution {
                    break;
                }
                index[a] = 0;
            }
        }
        Ok(Self {
            resolution,
            spacing,
            points,
            images,
        })
    }

    fn cell_diagonal(&self) -> f64 {
        self.spacing.iter().map(|h| h * h).sum::<f64>().sqrt()
    }
}

struct Violation {
    distance: f64,
    a: usize,
    b: usize,
    gap: f64,
}

enum Scan {
    Violation(Violation),
    /// No violation among pairs closer than the contained distance.
    Clean(f64),
}

/// Lexicographically positive integer offsets with every |component| <= radius,
/// sorted by physical length.
fn offsets_within(radius: usize, spacing: &[f64]) -> Vec<(f64, Vec<isize>)> {
    let dim = spacing.len();
    let r = radius as isize;
    let side = (2 * radius + 1).pow(dim as u32);
    let mut out = Vec::new();
    let mut o = vec![-r; dim];
    for _ in 0..side {
        let first_nonzero = o.iter().find(|&&c| c != 0);
        if matches!(first_nonzero, Some(&c) if c > 0) {
            let norm = o
                .iter()
                .zip(spacing)
                .map(|(&c, h)| (c as f64 * h).powi(2))
                .sum::<f64>()
                .sqrt();
            out.push((norm, o.clone()));
        }
        for a in (0..dim).rev() {
            o[a] += 1;
            if o[a] <= r {
                break;
            }
            o[a] = -r;
        }
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    out
}

fn scan_grid(grid: &Grid, epsilon: f64, diameter: f64) -> Scan {
    let dim = grid.spacing.len();
    let k = grid.resolution;
    let h_min = grid.spacing.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut strides = vec![1usize; dim];
    for a in (0..dim.saturating_sub(1)).rev() {
        strides[a] = strides[a + 1] * k;
    }
    // Every offset shorter than or equal to `done_below` has been scanned.
    let mut done_below = 0.0_f64;
    let mut checks = 0usize;
    let mut radius = 2usize;
    loop {
        let complete = radius >= k - 1;
        let r = radius.min(k - 1);
        // Offsets up to this length are all present in the candidate list.
        let bound = if complete {
            f64::INFINITY
        } else {
            r as f64 * h_min
        };
        for (norm, offset) in offsets_within(r, &grid.spacing) {
            if norm <= done_below || norm > bound {
                continue;
            }
            if checks >= MAX_PAIR_CHECKS {
                return Scan::Clean(norm);
            }
            for base in 0..grid.points.len() {
                let mut other = base as isize;
                let mut inside = true;
                let mut rem = base;
                for a in 0..dim {
                    let idx = (rem / strides[a]) as isize;
                    rem %= strides[a];
                    let moved = idx + offset[a];
                    if moved < 0 || moved >= k as isize {
                        inside = false;
                        break;
                    }
                    other += offset[a] * strides[a] as isize;
                }
                if !inside {
                    continue;
                }
                checks += 1;
                let other = other as usize;
                let gap = distance(&grid.images[base], &grid.images[other]);
                if gap >= epsilon {
                    return Scan::Violation(Violation {
                        distance: norm,
                        a: base,
                        b: other,
                        gap,
                    });
                }
            }
        }
        if complete {
            return Scan::Clean(diameter);
        }
        done_below = bound;
        radius *= 2;
    }
}

/// Empirical uniform-continuity certificate for `ω ∘ p` on `domain`.
///
/// Pairs of grid samples are scanned in order of increasing separation. The
/// first separation at which some pair's images differ by at least `epsilon`
/// bounds δ. When that violation sits inside a single grid cell the grid
/// cannot resolve δ, so it is refined (nested, spacing halved) until the
/// violation is resolved or the point budget runs out. A resolved δ is further
/// sharpened by refinement until it spans several cells.
pub fn check_uniform_continuity(
    map: &PseudoFaceMap,
    domain: &DomainBox,
    epsilon: f64,
) -> Result<ContinuityReport> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(PseudoFaceError::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if domain.dim() != map.source_dim {
        return Err(PseudoFaceError::DimensionMismatch {
            expected: map.source_dim,
            found: domain.dim(),
        });
    }
    let dim = domain.dim();
    let diameter = domain.diameter();
    let mut resolution = domain.grid_resolution;
    loop {
        let grid = Grid::build(map, domain, resolution)?;
        let diag = grid.cell_diagonal();
        let next = 2 * resolution - 1;
        let can_refine = next
            .checked_pow(dim as u32)
            .is_some_and(|n| n <= MAX_GRID_POINTS);
        let report = |passed: bool, delta: f64, cx: Option<Counterexample>| ContinuityReport {
            passed,
            epsilon,
            delta_estimate: delta,
            counterexample: cx,
            grid_resolution: grid.resolution,
            grid_spacing: grid.spacing.clone(),
        };
        match scan_grid(&grid, epsilon, diameter) {
            Scan::Clean(delta) => return Ok(report(true, delta, None)),
            Scan::Violation(v) if v.distance > diag * (1.0 + 1e-12) => {
                if v.distance >= SHARPEN_CELLS * diag || !can_refine {
                    return Ok(report(true, v.distance, None));
                }
            }
            Scan::Violation(v) => {
                if !can_refine {
                    let cx = Counterexample {
                        u: grid.points[v.a].clone(),
                        v: grid.points[v.b].clone(),
                        image_distance: v.gap,
                    };
                    return Ok(report(false, 2.0 * diag, Some(cx)));
                }
            }
        }
        resolution = next;
    }
}

/// `p ∘ g ∘ section`, the self-map of the pseudo-face induced by `g`.
pub struct ConjugateTransport<'a, G> {
    map: &'a PseudoFaceMap,
    g: G,
}

impl<G> ConjugateTransport<'_, G>
where
    G: Fn(&[f64]) -> Vec<f64>,
{
    pub fn apply(&self, y: &[f64]) -> Result<Vec<f64>> {
        let x = self.map.lift(y)?;
        let moved = (self.g)(&x);
        self.map.check_source(&moved)?;
        self.map.apply_p(&moved)
    }
}

pub fn conjugate_transport<G>(g: G, map: &PseudoFaceMap) -> Result<ConjugateTransport<'_, G>>
where
    G: Fn(&[f64]) -> Vec<f64>,
{
    if map.section.is_none() {
        return Err(PseudoFaceError::MissingSection);
    }
    Ok(ConjugateTransport { map, g })
}

/// Slice of a ball's pseudo-shape at parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoShapeSlice {
    pub t: f64,
    pub radius: f64,
}

fn check_ball(radius: f64, t: f64) -> Result<()> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(PseudoFaceError::InvalidParameter(format!(
            "ball radius must be positive, got {radius}"
        )));
    }
    if !t.is_finite() {
        return Err(PseudoFaceError::InvalidParameter(format!(
            "slice parameter must be finite, got {t}"
        )));
    }
    if t.abs() > radius {
        return Err(PseudoFaceError::EmptySlice { t, radius });
    }
    Ok(())
}

/// `√(R² − t²)` evaluated as `√((R − |t|)(R + |t|))`.
fn half_chord(radius: f64, t: f64) -> f64 {
    let a = t.abs();
    ((radius - a) * (radius + a)).max(0.0).sqrt()
}

/// Pseudo-shape slice under `ω(x) = ς t x`: a ball of radius
/// `√(R² − t²) / (ς|t|)`. The absolute value keeps radii nonnegative on the
/// lower half of the ball.
pub fn ball_pseudo_shape_scaled(radius: f64, t: f64, sigma: f64) -> Result<PseudoShapeSlice> {
    check_ball(radius, t)?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(PseudoFaceError::InvalidParameter(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    if t == 0.0 {
        return Err(PseudoFaceError::SingularSlice);
    }
    Ok(PseudoShapeSlice {
        t,
        radius: half_chord(radius, t) / (sigma * t.abs()),
    })
}

/// Pseudo-shape slice under the angle deformation: radius `√(R² − t²)`.
pub fn ball_pseudo_shape_angle(radius: f64, t: f64) -> Result<PseudoShapeSlice> {
    check_ball(radius, t)?;
    Ok(PseudoShapeSlice {
        t,
        radius: half_chord(radius, t),
    })
}

/// Symmetric sample grid on `[-R, R]`; the middle sample of an odd grid is
/// exactly zero and mirrored samples are exact negatives.
fn symmetric_samples(radius: f64, count: usize) -> impl Iterator<Item = f64> {
    let span = (count - 1) as f64;
    (0..count).map(move |k| {
        let num = 2.0 * k as f64 - span;
        if num == 0.0 {
            0.0
        } else {
            radius * num / span
        }
    })
}

fn check_profile(radius: f64, count: usize) -> Result<()> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(PseudoFaceError::InvalidParameter(format!(
            "ball radius must be positive, got {radius}"
        )));
    }
    if count < 3 {
        return Err(PseudoFaceError::InvalidParameter(format!(
            "sample count must be at least 3, got {count}"
        )));
    }
    Ok(())
}

/// Profile of the scaled pseudo-shape over `t ∈ [-R, R] \ {0}`.
///
/// With `figure_mode` the slice radius is `√(R² − t²)`; otherwise it is
/// `√(R² − t²)/(ς|t|)`.
pub fn ball_profile_scaled(
    radius: f64,
    sigma: f64,
    sample_count: usize,
    figure_mode: bool,
) -> Result<Vec<PseudoShapeSlice>> {
    check_profile(radius, sample_count)?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(PseudoFaceError::InvalidParameter(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    symmetric_samples(radius, sample_count)
        .filter(|t| *t != 0.0)
        .map(|t| {
            if figure_mode {
                ball_pseudo_shape_angle(radius, t)
            } else {
                ball_pseudo_shape_scaled(radius, t, sigma)
            }
        })
        .collect()
}

/// Profile of the angle pseudo-shape over `t ∈ [-R, R]`.
pub fn ball_profile_angle(radius: f64, sample_count: usize) -> Result<Vec<PseudoShapeSlice>> {
    check_profile(radius, sample_count)?;
    symmetric_samples(radius, sample_count)
        .map(|t| ball_pseudo_shape_angle(radius, t))
        .collect()
}

/// Norm with scaling by the largest component, so a vector on a coordinate
/// axis has norm exactly equal to that coordinate's magnitude.
fn scaled_norm(v: &[f64]) -> f64 {
    let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    scale * v.iter().map(|x| (x / scale).powi(2)).sum::<f64>().sqrt()
}

/// Twice the angle between `OP` and the positive `t`-axis, where `t` is the
/// last coordinate of `P`. Lies in `[0, 2π]`.
pub fn angle_field_sample(point: &[f64]) -> Result<f64> {
    let t = *point.last().ok_or(PseudoFaceError::ZeroVector)?;
    let norm = scaled_norm(point);
    if norm == 0.0 {
        return Err(PseudoFaceError::ZeroVector);
    }
    if !norm.is_finite() {
        return Err(PseudoFaceError::NonFinite {
            point: point.to_vec(),
        });
    }
    let cos = (t / norm).clamp(-1.0, 1.0);
    Ok((2.0 * cos.acos()).clamp(0.0, 2.0 * PI))
}

/// Pseudo-plane coordinates `(z(u), t)` of a point `u` on the unit sphere,
/// where `z(u)` is the `z` component of the outward unit normal.
pub fn sphere_pseudo_plane(point: [f64; 3], t: f64) -> Result<[f64; 2]> {
    let norm = scaled_norm(&point);
    if (norm - 1.0).abs() > SPHERE_TOLERANCE {
        return Err(PseudoFaceError::OffSphere { norm });
    }
    Ok([point[2] / norm, t])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceLink {
    pub dimension: usize,
    /// Coordinate axes (0-based) spanning the link.
    pub basis: BTreeSet<usize>,
}

/// Chain of subspaces through a point, dimensions `n, n-1, …, 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceChain {
    anchor: Vec<f64>,
    links: Vec<SubspaceLink>,
}

impl SubspaceChain {
    pub fn anchor(&self) -> &[f64] {
        &self.anchor
    }

    pub fn links(&self) -> &[SubspaceLink] {
        &self.links
    }

    /// Whether `v` differs from the anchor only along the link's basis axes.
    pub fn contains(&self, link: usize, v: &[f64]) -> Result<bool> {
        if v.len() != self.anchor.len() {
            return Err(PseudoFaceError::DimensionMismatch {
                expected: self.anchor.len(),
                found: v.len(),
            });
        }
        let link = self.links.get(link).ok_or_else(|| {
            PseudoFaceError::InvalidParameter(format!("no link with index {link}"))
        })?;
        Ok(v
            .iter()
            .zip(&self.anchor)
            .enumerate()
            .all(|(axis, (x, a))| link.basis.contains(&axis) || x == a))
    }
}

/// Canonical subspace chain at `anchor`: link `i` is spanned by the first
/// `n - i` coordinate axes, ending at the point itself.
pub fn subspace_chain(anchor: &[f64]) -> Result<SubspaceChain> {
    let n = anchor.len();
    if n == 0 {
        return Err(PseudoFaceError::InvalidParameter(
            "anchor must have at least one coordinate".into(),
        ));
    }
    let links = (0..=n)
        .rev()
        .map(|dimension| SubspaceLink {
            dimension,
            basis: (0..dimension).collect(),
        })
        .collect();
    Ok(SubspaceChain {
        anchor: anchor.to_vec(),
        links,
    })
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}
