use embcomp_core::intent::{Command, InteractionEvent};
use embcomp_core::io::load_manifest;
use embcomp_core::Session;

use crate::protocol::{ClientMessage, ErrorCode, ServerMessage, PROTOCOL_VERSION};

/// Protocol state of one connection.
///
/// Events are applied strictly in arrival order; a rejected message leaves
/// the session as it was.
#[derive(Debug, Clone)]
pub struct SessionHandler {
    id: String,
    greeted: bool,
    session: Option<Session>,
}

impl SessionHandler {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            greeted: false,
            session: None,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn session(&self) -> Option<&Session> {
        self.session.as_ref()
    }

    /// Parses and handles one text frame.
    pub fn handle_text(&mut self, text: &str) -> Vec<ServerMessage> {
        match serde_json::from_str::<ClientMessage>(text) {
            Ok(msg) => self.handle(msg),
            Err(e) => vec![ServerMessage::error(
                ErrorCode::BadEvent,
                format!("unreadable message: {e}"),
            )],
        }
    }

    pub fn handle(&mut self, msg: ClientMessage) -> Vec<ServerMessage> {
        match msg {
            ClientMessage::Hello { protocol_version } => {
                if self.greeted {
                    return vec![ServerMessage::error(ErrorCode::OutOfOrder, "already greeted")];
                }
                if protocol_version != PROTOCOL_VERSION {
                    return vec![ServerMessage::error(
                        ErrorCode::BadEvent,
                        format!("unsupported protocol version {protocol_version}"),
                    )];
                }
                self.greeted = true;
                vec![ServerMessage::Welcome {
                    session_id: self.id.clone(),
                    protocol_version: PROTOCOL_VERSION,
                }]
            }
            _ if !self.greeted => vec![ServerMessage::error(
                ErrorCode::OutOfOrder,
                "send hello first",
            )],
            ClientMessage::Load { manifest } => {
                if self.session.is_some() {
                    return vec![ServerMessage::error(
                        ErrorCode::OutOfOrder,
                        "a manifest is already loaded",
                    )];
                }
                match load_manifest(&manifest.to_string()) {
                    Ok(m) => {
                        let session = m.session();
                        let out = vec![state(&session)];
                        self.session = Some(session);
                        out
                    }
                    Err(e) => vec![ServerMessage::error(
                        ErrorCode::BadEvent,
                        format!("manifest rejected: {e}"),
                    )],
                }
            }
            ClientMessage::Event { event } => self.apply(&event),
        }
    }

    fn apply(&mut self, event: &InteractionEvent) -> Vec<ServerMessage> {
        let Some(session) = self.session.as_ref() else {
            return vec![ServerMessage::error(ErrorCode::NoManifest, "load a manifest first")];
        };
        let (next, cmd) = match session.step(event) {
            Ok(r) => r,
            Err(e) => return vec![ServerMessage::error(ErrorCode::BadEvent, e.to_string())],
        };
        let mut out = vec![state(&next)];
        let candidates = if event.is_release() {
            next.considered().to_vec()
        } else {
            next.candidates()
        };
        if !candidates.is_empty() {
            out.push(ServerMessage::Candidates { candidates });
        }
        match cmd {
            Some(Command::Compose { composite, .. }) => {
                out.push(ServerMessage::Committed { composite });
            }
            Some(Command::Decompose {
                composite,
                trigger,
                views,
                remaining,
            }) => out.push(ServerMessage::Decomposed {
                composite,
                trigger,
                views,
                remaining,
            }),
            None => {}
        }
        self.session = Some(next);
        out
    }
}

fn state(session: &Session) -> ServerMessage {
    let mut v = serde_json::to_value(session.snapshot()).expect("snapshot serializes");
    if let Some(obj) = v.as_object_mut() {
        obj.insert("applied".into(), session.applied().into());
    }
    ServerMessage::State(v)
}
