use crate::intent::InteractionEvent;

use super::{to_canonical_line, LoadError};

/// Parses a JSONL trace. Blank lines are skipped; errors carry the 1-based
/// line number of the offending line.
pub fn load_trace(text: &str) -> Result<Vec<InteractionEvent>, LoadError> {
    let mut out: Vec<InteractionEvent> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let e: InteractionEvent = serde_json::from_str(line).map_err(|err| LoadError::Parse {
            line: i + 1,
            column: err.column(),
            message: super::strip_position(&err.to_string()),
        })?;
        if out.last().is_some_and(|prev| e.t < prev.t) {
            return Err(LoadError::Order { line: i + 1 });
        }
        out.push(e);
    }
    Ok(out)
}

pub fn save_trace(events: &[InteractionEvent]) -> String {
    let mut s = String::new();
    for e in events {
        s.push_str(&to_canonical_line(e));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intent::Hand;
    use crate::scene::{Part, Pose};

    const THREE: &str = r#"{"t":0,"event":"grab","hand":"left","target":{"view":"a","part":"body"}}
{"t":0.1,"event":"move","hand":"left","pose":{"pos":[0,0,0],"rot":[0,0,0,1],"scale":1}}

{"t":0.2,"event":"release","hand":"left"}
"#;

    #[test]
    fn reads_lines_and_skips_blanks() {
        let events = load_trace(THREE).unwrap();
        assert_eq!(events.len(), 3);
        assert_eq!(events[0], InteractionEvent::grab(0.0, Hand::Left, "a", Part::Body));
        assert!(events[2].is_release());
    }

    #[test]
    fn reports_order_and_parse_lines() {
        let back = "{\"t\":1,\"event\":\"tick\"}\n{\"t\":0.5,\"event\":\"tick\"}\n";
        assert_eq!(load_trace(back), Err(LoadError::Order { line: 2 }));
        let bad = "{\"t\":1,\"event\":\"tick\"}\n\n{\"t\":2,\"event\":\"jump\"}\n";
        assert!(matches!(load_trace(bad), Err(LoadError::Parse { line: 3, .. })));
    }

    #[test]
    fn save_then_load() {
        let events = vec![
            InteractionEvent::grab(0.0, Hand::Right, "v", Part::AxisHandleX),
            InteractionEvent::moved(0.5, Hand::Right, Pose::at(0.25, 0.0, -1.0)),
            InteractionEvent::release(1.0, Hand::Right),
            InteractionEvent::tick(1.5),
        ];
        let text = save_trace(&events);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(load_trace(&text).unwrap(), events);
    }
}
