//! Adaptive Simpson quadrature.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("integrand is not finite at t = {0}")]
    NonFinite(f64),
    #[error("no convergence after {0} subdivisions")]
    NotConverged(usize),
    #[error("invalid interval [{0}, {1}]")]
    InvalidInterval(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpsonOptions {
    /// Target relative error of the whole integral.
    pub rel_tol: f64,
    /// Floor on the absolute error target, for integrals near zero.
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub max_depth: u32,
}

impl Default for SimpsonOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-300,
            max_subdivisions: 1 << 20,
            max_depth: 60,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Sum of the local Richardson error estimates.
    pub error_estimate: f64,
    pub subdivisions: usize,
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    depth: u32,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrates `f` over `[a, b]` (either orientation).
///
/// The target for a panel is split in proportion to its width, and accepted
/// panels contribute their Richardson-corrected value. The global target is
/// `rel_tol` times the magnitude of a coarse estimate of the integral; the
/// error estimate is a scaled sum of absolute panel errors, so the achieved
/// accuracy is usually much better than requested.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, opts: &SimpsonOptions) -> Result<Integral, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(QuadratureError::InvalidInterval(a, b));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions: 0,
        });
    }
    if b < a {
        let r = adaptive_simpson(f, b, a, opts)?;
        return Ok(Integral {
            value: -r.value,
            ..r
        });
    }
    let eval = |t: f64| {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadratureError::NonFinite(t))
        }
    };

    // Coarse 16-panel composite Simpson sets the scale of the error target.
    let coarse_panels = 16;
    let width = b - a;
    let mut samples = Vec::with_capacity(2 * coarse_panels + 1);
    for i in 0..=2 * coarse_panels {
        let t = if i == 2 * coarse_panels {
            b
        } else {
            a + width * i as f64 / (2 * coarse_panels) as f64
        };
        samples.push((t, eval(t)?));
    }
    let mut stack = Vec::with_capacity(64);
    let mut scale = 0.0;
    for i in (0..coarse_panels).rev() {
        let (pa, fa) = samples[2 * i];
        let (_, fm) = samples[2 * i + 1];
        let (pb, fb) = samples[2 * i + 2];
        let whole = simpson(pa, pb, fa, fm, fb);
        scale += whole.abs();
        stack.push(Panel {
            a: pa,
            b: pb,
            fa,
            fm,
            fb,
            whole,
            depth: 0,
        });
    }
    let target = (opts.rel_tol * scale).max(opts.abs_tol);

    let mut value = 0.0;
    let mut compensation = 0.0;
    let mut error = 0.0;
    let mut subdivisions = 0usize;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = eval(lm)?;
        let frm = eval(rm)?;
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let diff = left + right - p.whole;
        let local_target = target * (p.b - p.a) / width;
        if diff.abs() <= 15.0 * local_target || p.depth >= opts.max_depth || m <= p.a || m >= p.b {
            if diff.abs() > 15.0 * local_target {
                return Err(QuadratureError::NotConverged(subdivisions));
            }
            // Kahan summation keeps additivity tight across many panels.
            let term = left + right + diff / 15.0 - compensation;
            let next = value + term;
            compensation = (next - value) - term;
            value = next;
            error += diff.abs() / 15.0;
            continue;
        }
        subdivisions += 1;
        if subdivisions > opts.max_subdivisions {
            return Err(QuadratureError::NotConverged(subdivisions));
        }
        stack.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            depth: p.depth + 1,
        });
        stack.push(Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
            depth: p.depth + 1,
        });
    }
    Ok(Integral {
        value,
        error_estimate: error,
        subdivisions,
    })
}
