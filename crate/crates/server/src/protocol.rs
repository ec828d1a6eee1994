use embcomp_core::compose::{CompositeSpec, DecomposeTrigger};
use embcomp_core::intent::{CandidateIntent, InteractionEvent};
use embcomp_core::ViewSpec;
use serde::{Deserialize, Serialize};

pub const PROTOCOL_VERSION: u32 = 1;

/// Messages a client sends, one per text frame.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ClientMessage {
    Hello {
        #[serde(rename = "protocolVersion")]
        protocol_version: u32,
    },
    /// The manifest document, validated on receipt.
    Load { manifest: serde_json::Value },
    Event { event: InteractionEvent },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorCode {
    OutOfOrder,
    BadEvent,
    NoManifest,
}

/// Messages the server sends.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ServerMessage {
    Welcome {
        #[serde(rename = "sessionId")]
        session_id: String,
        #[serde(rename = "protocolVersion")]
        protocol_version: u32,
    },
    /// Full session snapshot: `t`, `applied`, `views`, `composites`,
    /// `relations`, `latched`, `regions`.
    State(serde_json::Value),
    Candidates { candidates: Vec<CandidateIntent> },
    Committed { composite: CompositeSpec },
    Decomposed {
        composite: String,
        trigger: DecomposeTrigger,
        views: Vec<ViewSpec>,
        #[serde(skip_serializing_if = "Option::is_none")]
        remaining: Option<CompositeSpec>,
    },
    Error { code: ErrorCode, message: String },
}

impl ServerMessage {
    pub fn error(code: ErrorCode, message: impl Into<String>) -> Self {
        ServerMessage::Error {
            code,
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ServerMessage::Welcome { .. } => "welcome",
            ServerMessage::State(_) => "state",
            ServerMessage::Candidates { .. } => "candidates",
            ServerMessage::Committed { .. } => "committed",
            ServerMessage::Decomposed { .. } => "decomposed",
            ServerMessage::Error { .. } => "error",
        }
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string(self).expect("server messages serialize")
    }
}
