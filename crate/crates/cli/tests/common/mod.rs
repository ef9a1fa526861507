//! Golden-file cases shared by the golden tests and the acceptance target.

use std::path::{Path, PathBuf};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
}

pub const CASES: &[Case] = &[
    Case { name: "pseudo_shape_figure", args: &["pseudo-shape", "--R", "1", "--sigma", "0.5", "--samples", "5", "--paper-figure-mode"] },
    Case { name: "pseudo_shape_scaled", args: &["pseudo-shape", "--R", "2", "--sigma", "0.25", "--samples", "9"] },
    Case { name: "angle_shape", args: &["angle-shape", "--R", "1", "--samples", "9"] },
    Case { name: "lorentz_events", args: &["lorentz", "--v", "0.6", "--event", "1,2,3,4", "--event", "-1,0,0,2"] },
    Case { name: "lorentz_csv", args: &["lorentz", "--v", "-0.8", "--c", "2", "--input", "data/events.csv"] },
    Case { name: "velocity_add", args: &["velocity-add", "--u", "0.5,0.2,0", "--v", "-0.6"] },
    Case { name: "velocity_add_light", args: &["velocity-add", "--u", "1,0,0", "--v", "0.9"] },
    Case { name: "friedmann_closed", args: &["friedmann", "--k", "0.1", "--rate", "0.5", "--at", "1,0.5,1.2,0", "--delta", "0.1,0.2,0,0.3"] },
    Case { name: "friedmann_singular", args: &["friedmann", "--k", "4", "--at", "0,0.5,0,0", "--delta", "1,0,0,0"] },
    Case { name: "classify_expanding", args: &["classify", "--rate", "0.3", "--power", "0.5", "--t", "2"] },
    Case { name: "classify_static", args: &["classify", "--t", "5"] },
    Case { name: "classify_contracting", args: &["classify", "--rate", "-0.2", "--t", "1"] },
    Case { name: "kasner_m7_minus", args: &["kasner", "--m", "7", "--branch", "minus"] },
    Case { name: "kasner_m7_plus", args: &["kasner", "--m", "7", "--branch", "plus"] },
    Case { name: "kasner_m1_minus", args: &["kasner", "--m", "1"] },
    Case { name: "kasner_m0", args: &["kasner", "--m", "0"] },
    Case { name: "time_shift_m7", args: &["time-shift", "--m", "7", "--t-inf", "1", "--t-start", "-9", "--samples", "10"] },
    Case { name: "time_shift_mu", args: &["time-shift", "--mu", "-0.5", "--samples", "5"] },
    Case { name: "tw_state_m7", args: &["tw-state", "--m", "7", "--lambda0", "1", "--rc", "1", "--t1", "0", "--samples", "9"] },
    Case { name: "tw_window_m7", args: &["tw-window", "--m", "7", "--lambda0", "1", "--rc", "1", "--t1", "0"] },
    Case { name: "tw_window_m7_rc10", args: &["tw-window", "--m", "7", "--lambda0", "1", "--rc", "10", "--t1", "0"] },
    Case { name: "tw_window_m1", args: &["tw-window", "--m", "1"] },
    Case { name: "graph_tetrahedron", args: &["graph-transform", "--input", "data/graph_tetrahedron.json", "--omega-scale", "2", "--lambda-shift", "-0.5"] },
    Case { name: "graph_chain_line", args: &["graph-transform", "--input", "data/graph_string_chain.json", "--n", "1", "--omega-shift", "0.1"] },
    Case { name: "graph_k5_plane", args: &["graph-transform", "--input", "data/graph_k5.json"] },
    Case { name: "graph_k33_plane", args: &["graph-transform", "--input", "data/graph_k33.json"] },
    Case { name: "graph_k5_space", args: &["graph-transform", "--input", "data/graph_k5.json", "--n", "3", "--lambda-scale", "3"] },
    Case { name: "cosmos_newton", args: &["cosmos-check", "--input", "data/cosmos_newton.json"] },
    Case { name: "cosmos_einstein", args: &["cosmos-check", "--input", "data/cosmos_einstein.json"] },
    Case { name: "cosmos_m_theory", args: &["cosmos-check", "--input", "data/cosmos_m_theory.json", "--trials", "4", "--seed", "11"] },
    Case { name: "cosmos_m_theory_twisted", args: &["cosmos-check", "--input", "data/cosmos_m_theory_twisted.json", "--trials", "3", "--seed", "7"] },
    Case { name: "cosmos_newton_collapsed", args: &["cosmos-check", "--input", "data/cosmos_newton_collapsed.json"] },
    Case { name: "cosmos_skip_gluing", args: &["cosmos-check", "--input", "data/cosmos_newton.json", "--trials", "0"] },
    Case { name: "unknown_flag", args: &["kasner", "--m", "7", "--bogus", "1"] },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs a case from the crate directory and renders it as golden text:
/// standard output on success, otherwise the exit code and standard error.
pub fn render(case: &Case) -> String {
    let dir = crate_dir();
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| if a.starts_with("data/") { dir.join(a).to_string_lossy().into_owned() } else { a.to_string() })
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = multispace_cli::run(&args, &mut out, &mut err);
    let text = if code == 0 {
        String::from_utf8(out).expect("utf-8 output")
    } else {
        format!("exit {code}\n{}", String::from_utf8(err).expect("utf-8 output"))
    };
    // absolute data paths would make goldens machine-specific
    text.replace(&format!("{}/", dir.to_string_lossy()), "")
}

pub fn golden_path(case: &Case) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{}.txt", case.name))
}

/// Checks every case against its golden file and for rerun stability; with
/// `update` the golden files are rewritten instead.
pub fn check_goldens(update: bool) -> Result<usize, String> {
    let mut subcommands = std::collections::BTreeSet::new();
    for case in CASES {
        let first = render(case);
        let second = render(case);
        if first != second {
            return Err(format!("{}: output differs between runs", case.name));
        }
        let path = golden_path(case);
        if update {
            std::fs::write(&path, &first).map_err(|e| format!("{}: {e}", path.display()))?;
        } else {
            let expected = read(&path)?;
            if expected != first {
                return Err(format!("{}: output does not match {}\n--- got ---\n{first}", case.name, path.display()));
            }
        }
        if !first.starts_with("exit ") {
            subcommands.insert(case.args[0]);
        }
    }
    if subcommands.len() != 12 {
        return Err(format!("only {} subcommands have a successful golden", subcommands.len()));
    }
    Ok(CASES.len())
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}
