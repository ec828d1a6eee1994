use serde::{Deserialize, Serialize};

use crate::scene::{Part, Pose};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hand {
    Left,
    Right,
}

impl Hand {
    pub fn other(self) -> Hand {
        match self {
            Hand::Left => Hand::Right,
            Hand::Right => Hand::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Target {
    pub view: String,
    pub part: Part,
}

impl Target {
    pub fn new(view: impl Into<String>, part: Part) -> Self {
        Self {
            view: view.into(),
            part,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EventKind {
    Grab { hand: Hand, target: Target },
    /// Absolute world pose of the hand.
    Move { hand: Hand, pose: Pose },
    Release { hand: Hand },
    Tick,
}

/// One line of an interaction trace.
///
/// Wire form: `{"t":0.5,"event":"move","hand":"left","pose":{...}}`; `target`
/// only on grab, `pose` only on move, no `hand` on tick.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEvent", into = "RawEvent")]
pub struct InteractionEvent {
    pub t: f64,
    pub kind: EventKind,
}

impl InteractionEvent {
    pub fn grab(t: f64, hand: Hand, view: &str, part: Part) -> Self {
        Self {
            t,
            kind: EventKind::Grab {
                hand,
                target: Target::new(view, part),
            },
        }
    }

    pub fn moved(t: f64, hand: Hand, pose: Pose) -> Self {
        Self {
            t,
            kind: EventKind::Move { hand, pose },
        }
    }

    pub fn release(t: f64, hand: Hand) -> Self {
        Self {
            t,
            kind: EventKind::Release { hand },
        }
    }

    pub fn tick(t: f64) -> Self {
        Self {
            t,
            kind: EventKind::Tick,
        }
    }

    pub fn hand(&self) -> Option<Hand> {
        match &self.kind {
            EventKind::Grab { hand, .. } | EventKind::Move { hand, .. } | EventKind::Release { hand } => {
                Some(*hand)
            }
            EventKind::Tick => None,
        }
    }

    pub fn is_release(&self) -> bool {
        matches!(self.kind, EventKind::Release { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawKind {
    Grab,
    Move,
    Release,
    Tick,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvent {
    t: f64,
    event: RawKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hand: Option<Hand>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<Target>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pose: Option<Pose>,
}

impl TryFrom<RawEvent> for InteractionEvent {
    type Error = String;

    fn try_from(raw: RawEvent) -> Result<Self, Self::Error> {
        if !raw.t.is_finite() {
            return Err("t must be finite".into());
        }
        let name = match raw.event {
            RawKind::Grab => "grab",
            RawKind::Move => "move",
            RawKind::Release => "release",
            RawKind::Tick => "tick",
        };
        if raw.target.is_some() && raw.event != RawKind::Grab {
            return Err(format!("{name} events take no target"));
        }
        if raw.pose.is_some() && raw.event != RawKind::Move {
            return Err(format!("{name} events take no pose"));
        }
        let hand = || raw.hand.ok_or_else(|| format!("{name} events need a hand"));
        let kind = match raw.event {
            RawKind::Grab => EventKind::Grab {
                hand: hand()?,
                target: raw.target.ok_or("grab events need a target")?,
            },
            RawKind::Move => EventKind::Move {
                hand: hand()?,
                pose: raw.pose.ok_or("move events need a pose")?,
            },
            RawKind::Release => EventKind::Release { hand: hand()? },
            RawKind::Tick => {
                if raw.hand.is_some() {
                    return Err("tick events take no hand".into());
                }
                EventKind::Tick
            }
        };
        Ok(InteractionEvent { t: raw.t, kind })
    }
}

impl From<InteractionEvent> for RawEvent {
    fn from(e: InteractionEvent) -> Self {
        let mut raw = RawEvent {
            t: e.t,
            event: RawKind::Tick,
            hand: None,
            target: None,
            pose: None,
        };
        match e.kind {
            EventKind::Grab { hand, target } => {
                raw.event = RawKind::Grab;
                raw.hand = Some(hand);
                raw.target = Some(target);
            }
            EventKind::Move { hand, pose } => {
                raw.event = RawKind::Move;
                raw.hand = Some(hand);
                raw.pose = Some(pose);
            }
            EventKind::Release { hand } => {
                raw.event = RawKind::Release;
                raw.hand = Some(hand);
            }
            EventKind::Tick => {}
        }
        raw
    }
}
