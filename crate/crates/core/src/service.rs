//! JSON over HTTP.
//!
//! `GET /{op}?key=value&...` runs [`crate::interface::handle`] with the query
//! parameters and answers with the same bytes the CLI prints. Domain errors
//! are 422, malformed requests 400, unknown paths 404. Çark expansions are
//! kept in a small LRU cache keyed by the normalised query.

use std::net::SocketAddr;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex};

use axum::extract::rejection::QueryRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use lru::LruCache;
use serde_json::json;
use tokio::net::TcpListener;

use crate::interface::{render, respond, ApiError, Params, OPERATIONS};

pub const CARK_CACHE_CAPACITY: usize = 256;

struct AppState {
    cark_cache: Mutex<LruCache<Params, String>>,
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error_response(e: &ApiError) -> Response {
    let status = StatusCode::from_u16(e.http_status()).unwrap_or(StatusCode::BAD_REQUEST);
    json_response(status, render(&e.to_json()))
}

async fn dispatch(
    State(state): State<Arc<AppState>>,
    Path(op): Path<String>,
    query: Result<Query<Params>, QueryRejection>,
) -> Response {
    if !OPERATIONS.contains(&op.as_str()) {
        let body = render(&json!({ "code": "not_found", "message": format!("no endpoint /{op}") }));
        return json_response(StatusCode::NOT_FOUND, body);
    }
    let params = match query {
        Ok(Query(p)) => p,
        Err(e) => return error_response(&ApiError::usage(e.body_text())),
    };

    let cacheable = op == "cark";
    if cacheable {
        if let Some(body) = state.cark_cache.lock().expect("cache lock").get(&params) {
            return json_response(StatusCode::OK, body.clone());
        }
    }

    let key = params.clone();
    let op_name = op.clone();
    let outcome = tokio::task::spawn_blocking(move || respond(&op_name, &params)).await;
    match outcome {
        Ok((Ok(()), body)) => {
            if cacheable {
                state
                    .cark_cache
                    .lock()
                    .expect("cache lock")
                    .put(key, body.clone());
            }
            json_response(StatusCode::OK, body)
        }
        Ok((Err(e), body)) => {
            let status = StatusCode::from_u16(e.http_status()).unwrap_or(StatusCode::BAD_REQUEST);
            json_response(status, body)
        }
        Err(join) => {
            let body = render(&json!({ "code": "internal", "message": join.to_string() }));
            json_response(StatusCode::INTERNAL_SERVER_ERROR, body)
        }
    }
}

pub fn router() -> Router {
    let state = Arc::new(AppState {
        cark_cache: Mutex::new(LruCache::new(
            NonZeroUsize::new(CARK_CACHE_CAPACITY).expect("nonzero capacity"),
        )),
    });
    Router::new()
        .route("/{op}", get(dispatch))
        .with_state(state)
}

/// Serves on an already bound listener until the process ends.
pub async fn serve_on(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = TcpListener::bind(addr).await?;
    serve_on(listener).await
}
