//! WebSocket session service for the composition engine.
//!
//! Each connection to `/session` owns one in-memory [`SessionHandler`]. The
//! client greets with `hello`, sends a `load` carrying a manifest, then
//! streams `event` messages. After every applied event the server answers
//! with a full `state` snapshot, the ranked `candidates` when there are any,
//! and `committed` or `decomposed` when the event changed a composite.
//! Every message is a JSON object with a `"kind"` field, one per text frame.

mod handler;
mod protocol;

use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::State;
use axum::response::Response;
use axum::routing::get;
use axum::Router;
use tokio::net::TcpListener;

pub use handler::SessionHandler;
pub use protocol::{ClientMessage, ErrorCode, ServerMessage, PROTOCOL_VERSION};

#[derive(Debug, Default)]
struct Shared {
    next_session: AtomicU64,
}

/// Router exposing the `/session` WebSocket endpoint.
pub fn router() -> Router {
    Router::new()
        .route("/session", get(upgrade))
        .with_state(Arc::new(Shared::default()))
}

async fn upgrade(ws: WebSocketUpgrade, State(shared): State<Arc<Shared>>) -> Response {
    let n = shared.next_session.fetch_add(1, Ordering::Relaxed) + 1;
    ws.on_upgrade(move |socket| run(socket, SessionHandler::new(format!("s{n}"))))
}

async fn run(mut socket: WebSocket, mut handler: SessionHandler) {
    tracing::debug!(session = handler.id(), "connected");
    while let Some(Ok(msg)) = socket.recv().await {
        let replies = match msg {
            Message::Text(text) => handler.handle_text(text.as_str()),
            Message::Binary(_) => vec![ServerMessage::error(
                ErrorCode::BadEvent,
                "binary frames are not part of the protocol",
            )],
            Message::Close(_) => break,
            Message::Ping(_) | Message::Pong(_) => continue,
        };
        for reply in replies {
            if socket.send(Message::Text(reply.to_text().into())).await.is_err() {
                return;
            }
        }
    }
    tracing::debug!(session = handler.id(), "disconnected");
}

/// Binds `addr` and returns the bound address with the serving future.
pub async fn bind(
    addr: SocketAddr,
) -> std::io::Result<(SocketAddr, impl std::future::Future<Output = std::io::Result<()>>)> {
    let listener = TcpListener::bind(addr).await?;
    let local = listener.local_addr()?;
    Ok((local, async move { axum::serve(listener, router()).await }))
}

/// Serves until the process is stopped.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let (local, fut) = bind(addr).await?;
    tracing::info!("listening on ws://{local}/session");
    fut.await
}
