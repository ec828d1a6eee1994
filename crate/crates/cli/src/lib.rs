//! Command implementations behind the `embcomp` binary.
//!
//! Each command returns the text it prints on standard output, or a
//! [`CliError`] whose [`CliError::exit_code`] is the process exit status.

pub mod demos;
pub mod replay;

use std::path::Path;

use embcomp_core::data::{allowed_composites, RelationshipKind};
use embcomp_core::intent::Thresholds;
use embcomp_core::io::{load_manifest, load_trace, save_composites};
use embcomp_core::{CompositeType, Manifest};

pub use replay::{replay, summary, Replay, ReplayError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    /// Bad arguments, unreadable files, malformed or invalid inputs.
    #[error("{0}")]
    Input(String),
    /// The engine rejected an event.
    #[error("{0}")]
    Engine(String),
    /// A demo did not produce what it should.
    #[error("{0}")]
    Expectation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Engine(_) => 3,
            CliError::Expectation(_) => 4,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_manifest(path: &Path) -> Result<Manifest, CliError> {
    load_manifest(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_thresholds(path: &Path) -> Result<Thresholds, CliError> {
    let th: Thresholds = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if let Some(msg) = th.validate().into_iter().next() {
        return Err(CliError::Input(format!("{}: {msg}", path.display())));
    }
    Ok(th)
}

/// Output of a replay: the summary lines and the canonical composite array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayOutput {
    pub summary: String,
    pub composites: String,
}

/// Replays trace text against a manifest.
pub fn replay_text(
    manifest: &Manifest,
    trace: &str,
    thresholds: Option<Thresholds>,
) -> Result<(Replay, ReplayOutput), CliError> {
    let events = load_trace(trace).map_err(|e| CliError::Input(format!("trace: {e}")))?;
    let th = thresholds.or(manifest.thresholds).unwrap_or_default();
    let r = replay(manifest, th, &events).map_err(|e| CliError::Engine(e.to_string()))?;
    let mut summary = String::new();
    for (t, cmd) in &r.commands {
        summary.push_str(&replay::summary(*t, cmd));
        summary.push('\n');
    }
    let composites = save_composites(&r.committed());
    Ok((r, ReplayOutput { summary, composites }))
}

/// `replay`: writes the committed composites to `out` (or returns them when
/// there is no `out`) and returns the summary.
pub fn run_replay(
    manifest: &Path,
    trace: &Path,
    out: Option<&Path>,
    thresholds: Option<&Path>,
) -> Result<String, CliError> {
    let m = read_manifest(manifest)?;
    let th = thresholds.map(read_thresholds).transpose()?;
    let text = read(trace)?;
    let (_, output) = replay_text(&m, &text, th)?;
    match out {
        Some(path) => {
            std::fs::write(path, &output.composites)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok(output.summary)
        }
        None => Ok(output.summary + &output.composites),
    }
}

/// `demo`: replays a bundled case and checks the expected composite.
pub fn run_demo(case: &str, thresholds: Option<&Path>) -> Result<String, CliError> {
    let d = demos::demo(case).ok_or_else(|| {
        CliError::Input(format!(
            "unknown case \"{case}\"; expected one of {}",
            demos::CASES.join(", ")
        ))
    })?;
    let m = load_manifest(d.manifest)
        .map_err(|e| CliError::Expectation(format!("bundled manifest: {e}")))?;
    let th = thresholds.map(read_thresholds).transpose()?;
    let (r, output) = replay_text(&m, d.trace, th)?;
    let committed = r.committed();
    let spec = committed
        .iter()
        .find(|c| c.ty == d.expected)
        .ok_or_else(|| {
            CliError::Expectation(format!(
                "{case}: no {} composite was committed",
                d.expected.as_str()
            ))
        })?;
    let check = demos::check_structure(spec, &m)
        .map_err(|e| CliError::Expectation(format!("{case}: {e}")))?;
    Ok(format!(
        "{}{case}: {} committed, {check}\n{}",
        output.summary,
        d.expected.as_str(),
        embcomp_core::save_composite(spec)
    ))
}

/// `matrix`: one line per relationship kind listing admissible types.
pub fn run_matrix() -> String {
    let mut s = String::new();
    for kind in RelationshipKind::ALL {
        let allowed = allowed_composites(kind);
        let names: Vec<&str> = CompositeType::ALL
            .iter()
            .filter(|t| allowed.contains(t))
            .map(|t| t.as_str())
            .collect();
        s.push_str(&format!("{}: {}\n", kind.as_str(), names.join(", ")));
    }
    s
}

/// `infer`: the resolved relationship of every table pair.
pub fn run_infer(manifest: &Path) -> Result<String, CliError> {
    let m = read_manifest(manifest)?;
    let data = m.dataset();
    let mut s = String::new();
    for r in data.pairs() {
        let keys = match (&r.a_key, &r.b_key) {
            (Some(a), Some(b)) => format!(" on {}.{a} = {}.{b}", r.table_a, r.table_b),
            _ => String::new(),
        };
        let source = serde_json::to_value(r.source)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        s.push_str(&format!(
            "{} ~ {}: {}{keys} ({source})\n",
            r.table_a,
            r.table_b,
            r.kind.as_str()
        ));
    }
    Ok(s)
}

/// `validate`: parses and validates whichever files are given.
pub fn run_validate(manifest: Option<&Path>, trace: Option<&Path>) -> Result<String, CliError> {
    if manifest.is_none() && trace.is_none() {
        return Err(CliError::Input("validate needs --manifest and/or --trace".into()));
    }
    let mut s = String::new();
    if let Some(p) = manifest {
        let m = read_manifest(p)?;
        s.push_str(&format!(
            "{}: ok ({} tables, {} views)\n",
            p.display(),
            m.tables.len(),
            m.views.len()
        ));
    }
    if let Some(p) = trace {
        let events = load_trace(&read(p)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
        s.push_str(&format!("{}: ok ({} events)\n", p.display(), events.len()));
    }
    Ok(s)
}
