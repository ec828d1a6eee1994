use embcomp_core::compose::Payload;
use embcomp_core::intent::{Command, InteractionEvent, InvalidEvent, Thresholds};
use embcomp_core::{CompositeSpec, Manifest, Session};

/// Result of applying a whole trace.
#[derive(Debug, Clone)]
pub struct Replay {
    pub session: Session,
    /// Every command fired, with the time of the release that fired it.
    pub commands: Vec<(f64, Command)>,
}

impl Replay {
    /// Composites in commit order.
    pub fn committed(&self) -> Vec<CompositeSpec> {
        self.commands
            .iter()
            .filter_map(|(_, c)| match c {
                Command::Compose { composite, .. } => Some(composite.clone()),
                Command::Decompose { .. } => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplayError {
    /// 1-based index of the rejected event among the trace's events.
    pub event: usize,
    pub t: f64,
    pub error: InvalidEvent,
}

impl std::fmt::Display for ReplayError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "event {} (t={}): {}", self.event, self.t, self.error)
    }
}

pub fn replay(
    manifest: &Manifest,
    thresholds: Thresholds,
    events: &[InteractionEvent],
) -> Result<Replay, ReplayError> {
    let mut session = manifest.session_with(thresholds);
    let mut commands = Vec::new();
    for (i, e) in events.iter().enumerate() {
        match session.apply(e) {
            Ok(Some(cmd)) => commands.push((e.t, cmd)),
            Ok(None) => {}
            Err(error) => {
                return Err(ReplayError {
                    event: i + 1,
                    t: e.t,
                    error,
                })
            }
        }
    }
    Ok(Replay { session, commands })
}

/// One human-readable line describing a command.
pub fn summary(t: f64, cmd: &Command) -> String {
    match cmd {
        Command::Compose {
            composite,
            replaces,
        } => {
            let detail = match &composite.payload {
                Payload::Links(l) => format!("{} links", l.len()),
                Payload::Anchors(a) => format!("{} anchors", a.entries.len()),
                Payload::Nests(n) => format!("{} placements", n.entries.len()),
                Payload::Overload(o) => format!(
                    "{} points, polylines hidden between axes {} and {}",
                    o.scatter_points.len(),
                    o.hidden_polyline_segments[0],
                    o.hidden_polyline_segments[1]
                ),
                Payload::Layout(l) => format!("{} panels", l.panels.len()),
            };
            let mut line = format!(
                "t={t:.3} compose {} {} [{}] ({detail})",
                composite.id,
                composite.ty.as_str(),
                composite.constituent_ids().join(", "),
            );
            if !replaces.is_empty() {
                line.push_str(&format!(" replacing {}", replaces.join(", ")));
            }
            line
        }
        Command::Decompose {
            composite,
            trigger,
            views,
            remaining,
        } => {
            let ids: Vec<&str> = views.iter().map(|v| v.id.as_str()).collect();
            let mut line = format!(
                "t={t:.3} decompose {composite} ({}) restoring [{}]",
                serde_json::to_value(trigger)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_owned))
                    .unwrap_or_default(),
                ids.join(", ")
            );
            if let Some(r) = remaining {
                line.push_str(&format!(", {} keeps [{}]", r.id, r.constituent_ids().join(", ")));
            }
            line
        }
    }
}
