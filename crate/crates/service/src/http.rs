//! JSON-over-HTTP routes for the session store.

use std::sync::Arc as Shared;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use infgon::arcs::Arc;
use infgon::mutation::MutationOption;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{ErrorCode, ServiceError};
use crate::store::{CreateRequest, SessionStore};

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.code.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self.to_json())).into_response()
    }
}

fn parse_body<T: DeserializeOwned>(body: &Bytes, code: ErrorCode) -> Result<T, ServiceError> {
    serde_json::from_slice(body).map_err(|e| ServiceError::new(code, e.to_string()))
}

fn ok<T: Serialize>(status: StatusCode, value: T) -> Response {
    (status, Json(value)).into_response()
}

#[derive(Deserialize)]
struct OptionsQuery {
    arc: Option<String>,
}

async fn create(State(store): State<Shared<SessionStore>>, body: Bytes) -> Result<Response, ServiceError> {
    let request: CreateRequest = parse_body(&body, ErrorCode::BadRequest)?;
    Ok(ok(StatusCode::CREATED, store.create(request)?))
}

async fn state(State(store): State<Shared<SessionStore>>, Path(id): Path<String>) -> Result<Response, ServiceError> {
    Ok(ok(StatusCode::OK, store.state(&id)?))
}

async fn options(
    State(store): State<Shared<SessionStore>>,
    Path(id): Path<String>,
    Query(query): Query<OptionsQuery>,
) -> Result<Response, ServiceError> {
    let raw = query.arc.ok_or_else(|| ServiceError::new(ErrorCode::BadRequest, "missing query parameter `arc`"))?;
    let arc: Arc = raw.parse().map_err(|e: infgon::ArcError| ServiceError::new(ErrorCode::BadRequest, e.to_string()))?;
    Ok(ok(StatusCode::OK, store.options(&id, arc)?))
}

async fn apply(
    State(store): State<Shared<SessionStore>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ServiceError> {
    let option: MutationOption = parse_body(&body, ErrorCode::BadRequest)?;
    Ok(ok(StatusCode::OK, store.apply(&id, option)?))
}

async fn undo(State(store): State<Shared<SessionStore>>, Path(id): Path<String>) -> Result<Response, ServiceError> {
    Ok(ok(StatusCode::OK, store.undo(&id)?))
}

async fn fallback() -> ServiceError {
    ServiceError::new(ErrorCode::BadRequest, "no such route")
}

pub fn router(store: Shared<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(state))
        .route("/sessions/{id}/options", get(options))
        .route("/sessions/{id}/apply", post(apply))
        .route("/sessions/{id}/undo", post(undo))
        .fallback(fallback)
        .with_state(store)
}
