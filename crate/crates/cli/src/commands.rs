use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use multispace::cosmology::{self, KasnerBranch, TwCosmology, WindowLimit};
use multispace::graphphase::{self, GraphPhase, LabelTransform};
use multispace::multicosmos::{self, GluingFailureKind, GluingReport, MultiCosmosModel};
use multispace::pseudoface;
use multispace::relativity::{self, BoostParams, FriedmannParams, RelativeEvent};
use serde::Serialize;

use crate::format::{list, num, rounded};
use crate::schema::{BraneRecord, CosmosDocument, GraphDocument, InteractionRecord};
use crate::*;

type Outcome = Result<String, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Computation(e.to_string())
}

fn finite(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("--{name} must be finite, got {x}")))
    }
}

fn positive(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("--{name} must be positive and finite, got {x}")))
    }
}

fn at_least(name: &str, x: usize, min: usize) -> Result<(), CliError> {
    if x >= min {
        Ok(())
    } else {
        Err(invalid(format!("--{name} must be at least {min}, got {x}")))
    }
}

fn subluminal(v: f64, c: f64) -> Result<(), CliError> {
    positive("c", c)?;
    finite("v", v)?;
    if v.abs() < c {
        Ok(())
    } else {
        Err(invalid(format!("--v must satisfy |v| < c, got v = {v}, c = {c}")))
    }
}

fn branch(s: &str) -> Result<KasnerBranch, CliError> {
    s.parse().map_err(|_| invalid(format!("--branch must be plus or minus, got {s:?}")))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::PseudoShape(a) => pseudo_shape(a),
        Command::AngleShape(a) => angle_shape(a),
        Command::Lorentz(a) => lorentz(a),
        Command::VelocityAdd(a) => velocity_add(a),
        Command::Friedmann(a) => friedmann(a),
        Command::Classify(a) => classify(a),
        Command::Kasner(a) => kasner(a),
        Command::TimeShift(a) => time_shift(a),
        Command::TwState(a) => tw_state(a),
        Command::TwWindow(a) => tw_window(a),
        Command::GraphTransform(a) => graph_transform(a),
        Command::CosmosCheck(a) => cosmos_check(a),
    }
}

fn profile_csv(rows: &[pseudoface::PseudoShapeSlice]) -> String {
    let mut s = String::from("t,radius\n");
    for r in rows {
        let _ = writeln!(s, "{},{}", num(r.t), num(r.radius));
    }
    s
}

fn pseudo_shape(a: &PseudoShapeArgs) -> Outcome {
    positive("R", a.radius)?;
    positive("sigma", a.sigma)?;
    at_least("samples", a.samples, 3)?;
    let rows = pseudoface::ball_profile_scaled(a.radius, a.sigma, a.samples, a.figure_mode).map_err(failed)?;
    Ok(profile_csv(&rows))
}

fn angle_shape(a: &AngleShapeArgs) -> Outcome {
    positive("R", a.radius)?;
    at_least("samples", a.samples, 3)?;
    let rows = pseudoface::ball_profile_angle(a.radius, a.samples).map_err(failed)?;
    Ok(profile_csv(&rows))
}

fn read_events(path: &Path) -> Result<Vec<[f64; 4]>, CliError> {
    let text = read_input(path)?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| invalid(format!("{}: {e}", path.display())))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["x", "y", "z", "t"] {
        return Err(invalid(format!("{}: expected header x,y,z,t", path.display())));
    }
    let mut events = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let mut e = [0.0; 4];
        for (slot, field) in e.iter_mut().zip(record.iter()) {
            *slot = field
                .parse()
                .map_err(|_| invalid(format!("{}: row {}: {field:?} is not a number", path.display(), line + 1)))?;
        }
        events.push(e);
    }
    Ok(events)
}

fn lorentz(a: &LorentzArgs) -> Outcome {
    subluminal(a.v, a.c)?;
    let mut events = a.events.clone();
    if let Some(path) = &a.input {
        events.extend(read_events(path)?);
    }
    if events.is_empty() {
        return Err(invalid("no events given; use --event x,y,z,t or --input"));
    }
    for e in &events {
        for x in e {
            finite("event", *x)?;
        }
    }
    let boost = BoostParams::new(a.v, a.c).map_err(failed)?;
    let mut s = String::from("x,y,z,t,x_prime,y_prime,z_prime,t_prime\n");
    for e in events {
        let p = relativity::lorentz_boost(&RelativeEvent::new(e[0], e[1], e[2], e[3]), &boost);
        let _ = writeln!(s, "{},{},{}", list(&e), list(&p.x), num(p.t));
    }
    Ok(s)
}

fn velocity_add(a: &VelocityAddArgs) -> Outcome {
    subluminal(a.v, a.c)?;
    for x in a.u {
        finite("u", x)?;
    }
    let speed = a.u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if speed > a.c {
        return Err(invalid(format!("--u must not exceed c, got |u| = {speed}")));
    }
    let boost = BoostParams::new(a.v, a.c).map_err(failed)?;
    let w = relativity::velocity_transform(a.u, &boost).map_err(failed)?;
    let mut s = String::new();
    let _ = writeln!(s, "v={}", num(a.v));
    let _ = writeln!(s, "c={}", num(a.c));
    let _ = writeln!(s, "gamma={}", num(boost.gamma()));
    let _ = writeln!(s, "u={}", list(&a.u));
    let _ = writeln!(s, "u_prime={}", list(&w));
    let _ = writeln!(s, "speed={}", num(speed));
    let _ = writeln!(s, "speed_prime={}", num(w.iter().map(|x| x * x).sum::<f64>().sqrt()));
    Ok(s)
}

fn scale_factor(a: &ScaleFactorArgs) -> Result<impl Fn(f64) -> f64 + Send + Sync + Copy + 'static, CliError> {
    positive("a0", a.a0)?;
    finite("rate", a.rate)?;
    finite("power", a.power)?;
    let (a0, rate, power) = (a.a0, a.rate, a.power);
    Ok(move |t: f64| a0 * (1.0 + rate * t).powf(power))
}

fn friedmann(a: &FriedmannArgs) -> Outcome {
    finite("k", a.k)?;
    positive("c", a.c)?;
    let scale = scale_factor(&a.scale)?;
    for x in a.at.iter().chain(&a.delta) {
        finite("at/--delta", *x)?;
    }
    let params = FriedmannParams::new(a.k, scale, a.c).map_err(failed)?;
    let ds2 = relativity::friedmann_interval_sq(&params, a.at, a.delta).map_err(failed)?;
    let t = a.at[0];
    let class = relativity::classify_cosmos(scale, t, relativity::default_step(t), relativity::DEFAULT_ZERO_BAND)
        .map_err(failed)?;
    let mut s = String::new();
    let _ = writeln!(s, "k={}", num(a.k));
    let _ = writeln!(s, "c={}", num(a.c));
    let _ = writeln!(s, "at={}", list(&a.at));
    let _ = writeln!(s, "delta={}", list(&a.delta));
    let _ = writeln!(s, "a={}", num(scale(t)));
    let _ = writeln!(s, "ds2={}", num(ds2));
    let kind = if ds2 < 0.0 {
        "timelike"
    } else if ds2 > 0.0 {
        "spacelike"
    } else {
        "null"
    };
    let _ = writeln!(s, "separation={kind}");
    let _ = writeln!(s, "class={class}");
    Ok(s)
}

fn classify(a: &ClassifyArgs) -> Outcome {
    let scale = scale_factor(&a.scale)?;
    finite("t", a.t)?;
    if !(a.band >= 0.0 && a.band.is_finite()) {
        return Err(invalid(format!("--band must be nonnegative and finite, got {}", a.band)));
    }
    let h = relativity::default_step(a.t);
    let rate = relativity::scale_factor_rate(scale, a.t, h).map_err(failed)?;
    let class = relativity::classify_cosmos(scale, a.t, h, a.band).map_err(failed)?;
    let mut s = String::new();
    let _ = writeln!(s, "t={}", num(a.t));
    let _ = writeln!(s, "a={}", num(scale(a.t)));
    let _ = writeln!(s, "da_dt={}", num(rate));
    let _ = writeln!(s, "band={}", num(a.band));
    let _ = writeln!(s, "class={class}");
    Ok(s)
}

fn kasner(a: &KasnerArgs) -> Outcome {
    at_least("m", a.m as usize, 1)?;
    let branch = branch(&a.branch)?;
    let k = cosmology::kasner_exponents(a.m, branch).map_err(failed)?;
    let (linear, quadratic) = k.sum_rule_residuals();
    let mut s = String::new();
    let _ = writeln!(s, "m={}", a.m);
    let _ = writeln!(s, "branch={branch}");
    let _ = writeln!(s, "mu={}", num(k.mu));
    let _ = writeln!(s, "nu={}", num(k.nu));
    let _ = writeln!(s, "residual_linear={}", num(linear));
    let _ = writeln!(s, "residual_quadratic={}", num(quadratic));
    let ok = linear.abs() <= 1e-12 && quadratic.abs() <= 1e-12;
    let _ = writeln!(s, "sum_rules={}", if ok { "PASS" } else { "FAIL" });
    Ok(s)
}

fn time_shift(a: &TimeShiftArgs) -> Outcome {
    finite("t-inf", a.t_inf)?;
    let t_start = a.t_start.unwrap_or(a.t_inf - 10.0);
    finite("t-start", t_start)?;
    if t_start >= a.t_inf {
        return Err(invalid(format!("--t-start must be below --t-inf, got {t_start} >= {}", a.t_inf)));
    }
    at_least("samples", a.samples, 1)?;
    let mu = match (a.m, a.mu) {
        (_, Some(mu)) => {
            finite("mu", mu)?;
            mu
        }
        (Some(m), None) => {
            at_least("m", m as usize, 1)?;
            let branch = branch(&a.branch)?;
            cosmology::kasner_exponents(m, branch).map_err(failed)?.mu
        }
        (None, None) => return Err(invalid("one of --m or --mu is required")),
    };
    let mut s = String::from("t,a,da_dt,d2a_dt2\n");
    let step = (a.t_inf - t_start) / a.samples as f64;
    for i in 0..a.samples {
        let t = t_start + step * i as f64;
        let k = cosmology::time_shift_scale(mu, a.t_inf, t).map_err(failed)?;
        let _ = writeln!(s, "{},{},{},{}", num(t), num(k.a), num(k.da_dt), num(k.d2a_dt2));
    }
    Ok(s)
}

fn tw_config(a: &TwArgs) -> Result<TwCosmology, CliError> {
    at_least("m", a.m as usize, 2)?;
    positive("lambda0", a.lambda0)?;
    positive("rc", a.rc)?;
    finite("t1", a.t1)?;
    TwCosmology::new(a.m, a.lambda0, a.rc, a.t1).map_err(failed)
}

fn tw_state(a: &TwStateArgs) -> Outcome {
    at_least("samples", a.samples, 1)?;
    let cfg = tw_config(&a.tw)?;
    let (lo, hi) = cfg.domain();
    let mut s = String::from("t,K,phi,S\n");
    for i in 1..=a.samples {
        let t = lo + (hi - lo) * i as f64 / (a.samples + 1) as f64;
        let st = cosmology::tw_state(&cfg, t).map_err(failed)?;
        let _ = writeln!(s, "{},{},{},{}", num(st.t), num(st.k), num(st.phi), num(st.s));
    }
    Ok(s)
}

fn limit_name(l: WindowLimit) -> &'static str {
    match l {
        WindowLimit::Expansion => "dS/dvs=0",
        WindowLimit::Acceleration => "d2S/dvs2=0",
        WindowLimit::DomainEdge => "domain-edge",
    }
}

fn tw_window(a: &TwWindowArgs) -> Outcome {
    at_least("resolution", a.resolution, cosmology::MIN_SCAN_RESOLUTION)?;
    let cfg = tw_config(&a.tw)?;
    let w = cosmology::tw_acceleration_window(&cfg, a.resolution).map_err(failed)?;
    let duration = cosmology::proper_time(&cfg, w.t_enter, w.t_exit).map_err(failed)?;
    let (lo, hi) = cfg.domain();
    let (band_lo, band_hi) = EXPANSION_BAND;
    let reference = cosmology::REFERENCE_EXPANSION_FACTOR_M7;
    let mut s = String::new();
    let _ = writeln!(s, "m={}", cfg.m());
    let _ = writeln!(s, "lambda0={}", num(cfg.lambda0()));
    let _ = writeln!(s, "rc={}", num(cfg.r_c()));
    let _ = writeln!(s, "t1={}", num(cfg.t1()));
    let _ = writeln!(s, "zeta={}", num(cfg.zeta()));
    let _ = writeln!(s, "domain={},{}", num(lo), num(hi));
    let _ = writeln!(s, "resolution={}", a.resolution);
    let _ = writeln!(s, "t_enter={}", num(w.t_enter));
    let _ = writeln!(s, "t_exit={}", num(w.t_exit));
    let _ = writeln!(s, "enter_condition={}", limit_name(w.enter_limit));
    let _ = writeln!(s, "exit_condition={}", limit_name(w.exit_limit));
    let _ = writeln!(s, "S_enter={}", num(w.s_enter));
    let _ = writeln!(s, "S_exit={}", num(w.s_exit));
    let _ = writeln!(s, "proper_duration={}", num(duration));
    let _ = writeln!(s, "expansion_factor={}", num(w.expansion_factor));
    let _ = writeln!(s, "reference_expansion_factor={}", num(reference));
    let verdict = if (band_lo..=band_hi).contains(&w.expansion_factor) { "PASS" } else { "FAIL" };
    let _ = writeln!(
        s,
        "{verdict}: expansion_factor {} against band [{}, {}] (reference {})",
        num(w.expansion_factor),
        num(band_lo),
        num(band_hi),
        num(reference)
    );
    Ok(s)
}

#[derive(Serialize)]
struct TransformOutput {
    dimension: usize,
    embeddable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation: Option<BTreeMap<String, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    faces: Option<Vec<Vec<String>>>,
    branes: Vec<BraneRecord>,
    interactions: Vec<InteractionRecord>,
}

fn labels(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|&x| rounded(x)).collect()
}

fn graph_transform(a: &GraphTransformArgs) -> Outcome {
    at_least("n", a.n, 1)?;
    for (name, x) in [
        ("omega-scale", a.omega_scale),
        ("omega-shift", a.omega_shift),
        ("lambda-scale", a.lambda_scale),
        ("lambda-shift", a.lambda_shift),
    ] {
        finite(name, x)?;
    }
    let doc: GraphDocument = serde_json::from_str(&read_input(&a.input)?)
        .map_err(|e| invalid(format!("{}: {e}", a.input.display())))?;
    let (branes, interactions) = doc.into_parts();
    let phase = graphphase::build_graph_phase(branes, interactions).map_err(failed)?;
    let verdict = graphphase::is_embeddable(&phase, a.n).map_err(failed)?;
    let tau = LabelTransform::affine(a.omega_scale, a.omega_shift, a.lambda_scale, a.lambda_shift);
    let image = graphphase::transform_phase(&phase, &tau, a.n).map_err(|e| match &verdict.obstruction {
        Some(o) => CliError::Computation(format!("{e}; branch vertices {}", o.branch_vertices.join(","))),
        None => failed(e),
    })?;
    let witness = verdict.witness.as_ref();
    let output = TransformOutput {
        dimension: a.n,
        embeddable: verdict.embeddable,
        rotation: witness.map(|w| {
            w.rotation()
                .into_iter()
                .map(|(k, v)| (k.to_owned(), v.into_iter().map(str::to_owned).collect()))
                .collect()
        }),
        faces: witness.map(|w| {
            w.faces()
                .into_iter()
                .map(|f| f.into_iter().map(str::to_owned).collect())
                .collect()
        }),
        branes: phase_branes(&image),
        interactions: phase_interactions(&image),
    };
    let mut text = serde_json::to_string_pretty(&output).map_err(failed)?;
    text.push('\n');
    Ok(text)
}

fn phase_branes(g: &GraphPhase) -> Vec<BraneRecord> {
    g.branes()
        .iter()
        .map(|b| BraneRecord {
            id: b.id.clone(),
            omega: labels(&b.omega),
        })
        .collect()
}

fn phase_interactions(g: &GraphPhase) -> Vec<InteractionRecord> {
    g.interactions()
        .iter()
        .map(|e| InteractionRecord {
            a: e.a.clone(),
            b: e.b.clone(),
            lambda: labels(&e.lambda),
        })
        .collect()
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cosmos_check(a: &CosmosCheckArgs) -> Outcome {
    let doc: CosmosDocument = serde_json::from_str(&read_input(&a.input)?)
        .map_err(|e| invalid(format!("{}: {e}", a.input.display())))?;
    let parts = doc.into_parts();
    let mut model = MultiCosmosModel::new(parts.subcosmoses, &parts.order, parts.restrictions, parts.intersections)
        .map_err(failed)?;
    for (id, table) in &parts.operations {
        model = model.with_operation(id, table).map_err(failed)?;
    }
    let top = match &a.top {
        Some(t) => t.clone(),
        None => match model.maximal_ids().as_slice() {
            [only] => only.to_string(),
            many => {
                return Err(invalid(format!(
                    "model has {} maximal sub-cosmoses ({}); choose one with --top",
                    many.len(),
                    many.join(",")
                )))
            }
        },
    };
    let report = multicosmos::validate_sheaf_conditions(&model, &top, a.trials, a.seed).map_err(failed)?;

    let mut s = String::new();
    let _ = writeln!(s, "top={top}");
    let _ = writeln!(s, "subcosmoses={}", model.subcosmoses().len());
    let _ = writeln!(s, "below_top={}", model.below(&top).map_err(failed)?.join(","));
    let _ = writeln!(s, "trials={}", a.trials);
    let _ = writeln!(s, "seed={}", a.seed);

    let c = &report.composition;
    let _ = writeln!(s, "composition={} chains={}", pass(c.passed), c.chains_checked);
    for v in &c.violations {
        let _ = writeln!(
            s,
            "  composition_violation chain={} element={} direct={} composite={}",
            v.chain.join(">"),
            v.element,
            v.direct,
            v.composite
        );
    }

    let sep = &report.separated;
    let _ = writeln!(s, "separated={} pairs={}", pass(sep.passed), sep.pairs_checked);
    for (g, h) in &sep.violations {
        let _ = writeln!(s, "  separated_violation pair={g},{h}");
    }

    match &report.gluing {
        GluingReport::Skipped => {
            let _ = writeln!(s, "gluing=SKIPPED");
        }
        GluingReport::Checked {
            families,
            exhaustive,
            failures,
        } => {
            let _ = writeln!(
                s,
                "gluing={} families={families} exhaustive={exhaustive}",
                pass(failures.is_empty())
            );
            for f in failures {
                let family = f
                    .family
                    .assignments
                    .iter()
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect::<Vec<_>>()
                    .join(",");
                let kind = match f.kind {
                    GluingFailureKind::NoAmalgam => "no-amalgam".to_owned(),
                    GluingFailureKind::Ambiguous(n) => format!("ambiguous({n})"),
                };
                let _ = writeln!(s, "  gluing_failure kind={kind} family={family}");
            }
        }
    }

    match &report.operations {
        None => {
            let _ = writeln!(s, "operations=NONE");
        }
        Some(o) => {
            let _ = writeln!(s, "operations={} restrictions={}", pass(o.passed), o.restrictions_checked);
            for v in &o.violations {
                let _ = writeln!(s, "  operation_violation restriction={}>{} pair={},{}", v.src, v.dst, v.x, v.y);
            }
        }
    }
    let _ = writeln!(s, "verdict={}", pass(report.passed()));
    Ok(s)
}
