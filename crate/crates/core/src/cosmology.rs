//! Scale factors of compactified cosmologies.
//!
//! Two families are covered. The Kasner metric
//! `-dt² + t^{2μ} ds²(R³) + t^{2ν} ds²(T^m)` solves the `4+m` dimensional
//! vacuum equations exactly when `3μ + mν = 1` and `3μ² + mν² = 1`. The
//! Townsend-Wohlfarth solution from compactification on an `m`-dimensional
//! hyperbolic space has a four-dimensional scale factor `S(t)` with proper
//! time `dς = S³ dt`, and expands with acceleration on a finite window.
//!
//! The exponent pair returned by [`kasner_exponents`] is
//!
//! ```text
//! μ = (3 ± √(3m(m+2))) / (3(m+3))
//! ν = (m ∓ √(3m(m+2))) / (m(m+3))
//! ```
//!
//! The form `ν = (3 ∓ √(3m(m+2))) / (3(m+3))`, which circulates alongside the
//! μ formula, satisfies the sum rules only at `m = 3`; ν here is solved from
//! `3μ + mν = 1` instead.

use std::f64::consts::PI;

use thiserror::Error;

use crate::quadrature::{adaptive_simpson, QuadratureError, SimpsonOptions};

/// Expansion factor quoted for `m = 7`.
pub const REFERENCE_EXPANSION_FACTOR_M7: f64 = 3.04;

/// Minimum grid size for the acceleration-window scan.
pub const MIN_SCAN_RESOLUTION: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CosmologyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("t = {t} is outside the valid domain ({lo}, {hi})")]
    OutsideDomain { t: f64, lo: f64, hi: f64 },
    #[error("no accelerating expansion found at scan resolution {0}")]
    NoAcceleratingWindow(usize),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

pub type Result<T> = std::result::Result<T, CosmologyError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KasnerBranch {
    Plus,
    Minus,
}

impl KasnerBranch {
    fn sign(self) -> f64 {
        match self {
            KasnerBranch::Plus => 1.0,
            KasnerBranch::Minus => -1.0,
        }
    }
}

impl std::str::FromStr for KasnerBranch {
    type Err = CosmologyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(KasnerBranch::Plus),
            "minus" | "-" => Ok(KasnerBranch::Minus),
            other => Err(CosmologyError::InvalidParameter(format!(
                "branch must be plus or minus, got {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for KasnerBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KasnerBranch::Plus => "plus",
            KasnerBranch::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KasnerSolution {
    pub m: u32,
    pub branch: KasnerBranch,
    pub mu: f64,
    pub nu: f64,
}

impl KasnerSolution {
    /// Residuals `(3μ + mν - 1, 3μ² + mν² - 1)` of the vacuum sum rules.
    pub fn sum_rule_residuals(&self) -> (f64, f64) {
        let m = self.m as f64;
        (
            3.0 * self.mu + m * self.nu - 1.0,
            3.0 * self.mu * self.mu + m * self.nu * self.nu - 1.0,
        )
    }
}

/// Kasner exponents for `m` extra dimensions on the given branch.
///
/// On the minus branch `μ < 0` for every `m >= 2`; at `m = 1` the square root
/// is exactly 3 and the minus branch degenerates to `(μ, ν) = (0, 1)`.
pub fn kasner_exponents(m: u32, branch: KasnerBranch) -> Result<KasnerSolution> {
    if m < 1 {
        return Err(CosmologyError::InvalidParameter(
            "need at least one extra dimension".into(),
        ));
    }
    let mf = m as f64;
    let root = (3.0 * mf * (mf + 2.0)).sqrt();
    let s = branch.sign();
    Ok(KasnerSolution {
        m,
        branch,
        mu: (3.0 + s * root) / (3.0 * (mf + 3.0)),
        nu: (mf - s * root) / (mf * (mf + 3.0)),
    })
}

/// A scale factor with its first two time derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleKinematics {
    pub a: f64,
    pub da_dt: f64,
    pub d2a_dt2: f64,
}

impl ScaleKinematics {
    pub fn is_accelerating_expansion(&self) -> bool {
        self.da_dt > 0.0 && self.d2a_dt2 > 0.0
    }
}

/// `a = t^μ` and its derivatives.
pub fn kasner_acceleration_check(mu: f64, t: f64) -> Result<ScaleKinematics> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(CosmologyError::InvalidParameter(format!(
            "Kasner time must be positive, got {t}"
        )));
    }
    Ok(ScaleKinematics {
        a: t.powf(mu),
        da_dt: mu * t.powf(mu - 1.0),
        d2a_dt2: mu * (mu - 1.0) * t.powf(mu - 2.0),
    })
}

/// Time-reversed power law `a = (t_∞ - t)^μ` and its derivatives.
pub fn time_shift_scale(mu: f64, t_inf: f64, t: f64) -> Result<ScaleKinematics> {
    if !t.is_finite() || !t_inf.is_finite() || t >= t_inf {
        return Err(CosmologyError::InvalidParameter(format!(
            "need t < t_inf, got t = {t}, t_inf = {t_inf}"
        )));
    }
    let tau = t_inf - t;
    Ok(ScaleKinematics {
        a: tau.powf(mu),
        da_dt: -mu * tau.powf(mu - 1.0),
        d2a_dt2: mu * (mu - 1.0) * tau.powf(mu - 2.0),
    })
}

/// Townsend-Wohlfarth cosmology with `m` hyperbolic extra dimensions:
///
/// ```text
/// K(t)  = λ₀ ζ r_c / ((m-1) sin(λ₀ ζ |t + t₁|))
/// φ(t)  = (ln K(t) - 3 λ₀ t) / (m-1)
/// S²(t) = K^{m/(m-1)} exp(-(m+2)/(m-1) λ₀ t),      ζ = √(3 + 6/m)
/// ```
///
/// Only the first sine branch `t + t₁ ∈ (0, π/(λ₀ζ))` is supported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwCosmology {
    m: u32,
    lambda0: f64,
    r_c: f64,
    t1: f64,
    zeta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwState {
    pub t: f64,
    pub k: f64,
    pub phi: f64,
    pub s: f64,
}

impl TwCosmology {
    pub fn new(m: u32, lambda0: f64, r_c: f64, t1: f64) -> Result<Self> {
        if m < 2 {
            return Err(CosmologyError::InvalidParameter(format!(
                "need m >= 2 hyperbolic dimensions, got {m}"
            )));
        }
        for (name, v) in [("lambda0", lambda0), ("r_c", r_c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CosmologyError::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !t1.is_finite() {
            return Err(CosmologyError::InvalidParameter(format!("t1 must be finite, got {t1}")));
        }
        Ok(Self {
            m,
            lambda0,
            r_c,
            t1,
            zeta: (3.0 + 6.0 / m as f64).sqrt(),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn r_c(&self) -> f64 {
        self.r_c
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// Open interval of valid times.
    pub fn domain(&self) -> (f64, f64) {
        let lo = -self.t1;
        (lo, lo + PI / (self.lambda0 * self.zeta))
    }

    fn check(&self, t: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        let x = self.phase(t);
        if !(t > lo && t < hi) || !(x > 0.0 && x < PI) {
            return Err(CosmologyError::OutsideDomain { t, lo, hi });
        }
        Ok(())
    }

    fn phase(&self, t: f64) -> f64 {
        self.lambda0 * self.zeta * (t + self.t1).abs()
    }

    fn mf(&self) -> f64 {
        self.m as f64
    }

    fn k_unchecked(&self, t: f64) -> f64 {
        self.lambda0 * self.zeta * self.r_c / ((self.mf() - 1.0) * self.phase(t).sin())
    }

    /// `ln S(t)`.
    fn ln_s(&self, t: f64) -> f64 {
        let m = self.mf();
        0.5 * (m / (m - 1.0) * self.k_unchecked(t).ln() - (m + 2.0) / (m - 1.0) * self.lambda0 * t)
    }

    /// `d ln S / dt`.
    fn log_rate(&self, t: f64) -> f64 {
        let m = self.mf();
        let lz = self.lambda0 * self.zeta;
        let x = self.phase(t);
        0.5 * (-(m / (m - 1.0)) * lz * x.cos() / x.sin() - (m + 2.0) / (m - 1.0) * self.lambda0)
    }

    /// `d² ln S / dt²`.
    fn log_curvature(&self, t: f64) -> f64 {
        let m = self.mf();
        let lz = self.lambda0 * self.zeta;
        let s = self.phase(t).sin();
        0.5 * (m / (m - 1.0)) * lz * lz / (s * s)
    }

    /// `S(t)`.
    pub fn scale(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.ln_s(t).exp())
    }

    /// `dS/dς = S'/S³ = (ln S)' / S²`.
    pub fn ds_dproper(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.log_rate(t) * (-2.0 * self.ln_s(t)).exp())
    }

    /// `d²S/dς² = (S''S - 3S'²)/S⁷ = ((ln S)'' - 2(ln S)'²) / S⁵`.
    pub fn d2s_dproper2(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        let rate = self.log_rate(t);
        Ok((self.log_curvature(t) - 2.0 * rate * rate) * (-5.0 * self.ln_s(t)).exp())
    }

    /// Central-difference `dS/dς` with step `h` on the closed form of `S`.
    pub fn ds_dproper_central(&self, t: f64, h: f64) -> Result<f64> {
        let (lo, hi) = (self.scale(t - h)?, self.scale(t + h)?);
        Ok((hi - lo) / (2.0 * h) / self.scale(t)?.powi(3))
    }

    /// Central-difference `d²S/dς²` built from [`Self::ds_dproper_central`].
    pub fn d2s_dproper2_central(&self, t: f64, h: f64) -> Result<f64> {
        let lo = self.ds_dproper_central(t - h, h)?;
        let hi = self.ds_dproper_central(t + h, h)?;
        Ok((hi - lo) / (2.0 * h) / self.scale(t)?.powi(3))
    }

    fn accelerating(&self, t: f64) -> bool {
        let rate = self.log_rate(t);
        rate > 0.0 && self.log_curvature(t) - 2.0 * rate * rate > 0.0
    }
}

/// `K`, `φ` and `S` at time `t`.
pub fn tw_state(cfg: &TwCosmology, t: f64) -> Result<TwState> {
    cfg.check(t)?;
    let m = cfg.mf();
    let k = cfg.k_unchecked(t);
    let phi = (k.ln() - 3.0 * cfg.lambda0 * t) / (m - 1.0);
    let s2 = k.powf(m / (m - 1.0)) * (-(m + 2.0) / (m - 1.0) * cfg.lambda0 * t).exp();
    Ok(TwState { t, k, phi, s: s2.sqrt() })
}

/// Relative tolerance of proper-time quadrature. Far below `1e-8`, so that
/// integrals over adjacent intervals add up to `1e-10`.
pub const PROPER_TIME_REL_TOL: f64 = 1e-12;

/// `∫ s³(t) dt` over `[t0, t1]` for an arbitrary scale factor `s`.
pub fn proper_time_of<S: Fn(f64) -> f64>(s: S, t0: f64, t1: f64) -> Result<f64> {
    let opts = SimpsonOptions {
        rel_tol: PROPER_TIME_REL_TOL,
        ..SimpsonOptions::default()
    };
    Ok(adaptive_simpson(|t| s(t).powi(3), t0, t1, &opts)?.value)
}

/// Proper time `ς(t1) - ς(t0) = ∫ S³ dt` of the Townsend-Wohlfarth solution.
pub fn proper_time(cfg: &TwCosmology, t0: f64, t1: f64) -> Result<f64> {
    cfg.check(t0)?;
    cfg.check(t1)?;
    proper_time_of(|t| cfg.ln_s(t).exp(), t0, t1)
}

/// What ends an acceleration window on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowLimit {
    /// `dS/dς` changes sign.
    Expansion,
    /// `d²S/dς²` changes sign.
    Acceleration,
    /// The window runs into the edge of the valid domain.
    DomainEdge,
}

/// Maximal interval of accelerating expansion, `dS/dς > 0` and
/// `d²S/dς² > 0`, with `expansion_factor = S(t_exit) / S(t_enter)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelerationWindow {
    pub t_enter: f64,
    pub t_exit: f64,
    pub s_enter: f64,
    pub s_exit: f64,
    pub expansion_factor: f64,
    pub enter_limit: WindowLimit,
    pub exit_limit: WindowLimit,
}

/// Locates the acceleration window on a uniform interior grid and refines its
/// endpoints by bisection.
///
/// The sign tests use closed-form derivatives of `ln S`, so the window and the
/// expansion factor do not depend on `r_c`, and shift rigidly with `t₁`.
pub fn tw_acceleration_window(cfg: &TwCosmology, scan_resolution: usize) -> Result<AccelerationWindow> {
    if scan_resolution < MIN_SCAN_RESOLUTION {
        return Err(CosmologyError::InvalidParameter(format!(
            "scan resolution must be at least {MIN_SCAN_RESOLUTION}, got {scan_resolution}"
        )));
    }
    let (lo, hi) = cfg.domain();
    let width = hi - lo;
    let sample = |i: usize| lo + width * (i + 1) as f64 / (scan_resolution + 1) as f64;

    // Longest run of accelerating samples; ties keep the earliest.
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for i in 0..=scan_resolution {
        let inside = i < scan_resolution && cfg.accelerating(sample(i));
        match (inside, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if best.is_none_or(|(bs, be)| i - s > be - bs) {
                    best = Some((s, i));
                }
                start = None;
            }
            _ => {}
        }
    }
    let (first, end) = best.ok_or(CosmologyError::NoAcceleratingWindow(scan_resolution))?;
    let last = end - 1;

    let (t_enter, enter_limit) = if first == 0 {
        (lo, WindowLimit::DomainEdge)
    } else {
        let t = bisect(|t| cfg.accelerating(t), sample(first - 1), sample(first));
        (t, limit_at(cfg, t))
    };
    let (t_exit, exit_limit) = if last == scan_resolution - 1 {
        (hi, WindowLimit::DomainEdge)
    } else {
        let t = bisect(|t| cfg.accelerating(t), sample(last + 1), sample(last));
        (t, limit_at(cfg, t))
    };
    if enter_limit == WindowLimit::DomainEdge || exit_limit == WindowLimit::DomainEdge {
        // S diverges at the edges of the sine branch.
        return Err(CosmologyError::NoAcceleratingWindow(scan_resolution));
    }
    let (ln_enter, ln_exit) = (cfg.ln_s(t_enter), cfg.ln_s(t_exit));
    Ok(AccelerationWindow {
        t_enter,
        t_exit,
        s_enter: ln_enter.exp(),
        s_exit: ln_exit.exp(),
        expansion_factor: (ln_exit - ln_enter).exp(),
        enter_limit,
        exit_limit,
    })
}

/// Bisects between a point where `inside` fails and one where it holds until
/// the bracket stops shrinking. Returns the point on the `inside` side.
fn bisect<P: Fn(f64) -> bool>(inside: P, mut outside_t: f64, mut inside_t: f64) -> f64 {
    loop {
        let mid = 0.5 * (outside_t + inside_t);
        if mid == outside_t || mid == inside_t {
            return inside_t;
        }
        if inside(mid) {
            inside_t = mid;
        } else {
            outside_t = mid;
        }
    }
}

fn limit_at(cfg: &TwCosmology, t: f64) -> WindowLimit {
    let rate = cfg.log_rate(t);
    let accel = cfg.log_curvature(t) - 2.0 * rate * rate;
    // The condition closer to its zero is the one that flips here.
    if rate.abs() <= accel.abs() {
        WindowLimit::Expansion
    } else {
        WindowLimit::Acceleration
    }
}
