//! HTTP API over the profiles under one home directory.
//!
//! Mutations of a profile are serialized by its writer lock and published as
//! a new immutable snapshot; reads clone the current snapshot and never wait
//! on a writer.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, Request, State};
use axum::http::{header, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use entrench_core::agent::Document;
use entrench_core::{parse_formula, AgentProfile, Error as CoreError};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::CliError;
use crate::store::{valid_profile_id, ProfileDir};
use crate::views::{
    net_changes, BeliefsView, ConfigView, Defaults, FeedbackRequest, FeedbackResponse, FilterRequest, FilterResponse,
    HistoryView, QueueView, QueuedDocument,
};

pub const POLL_INTERVAL_MS: u64 = 2000;

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    Unauthorized,
    NotFound(String),
    Conflict(String),
    Internal(String),
}

impl ApiError {
    fn status(&self) -> StatusCode {
        match self {
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::Unauthorized => StatusCode::UNAUTHORIZED,
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::Conflict(_) => StatusCode::CONFLICT,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl From<CliError> for ApiError {
    fn from(e: CliError) -> Self {
        ApiError::Internal(e.to_string())
    }
}

#[derive(Serialize)]
struct ErrorBody {
    status: u16,
    message: String,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = self.status();
        let message = match self {
            ApiError::Unauthorized => "missing or wrong bearer token".to_string(),
            ApiError::BadRequest(m) | ApiError::NotFound(m) | ApiError::Conflict(m) | ApiError::Internal(m) => m,
        };
        (status, Json(ErrorBody { status: status.as_u16(), message })).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

struct Snapshot {
    profile: AgentProfile,
    queue: Vec<Document>,
}

struct Slot {
    dir: ProfileDir,
    writer: tokio::sync::Mutex<()>,
    current: RwLock<Arc<Snapshot>>,
}

impl Slot {
    fn snapshot(&self) -> Arc<Snapshot> {
        self.current.read().expect("snapshot lock").clone()
    }

    /// Persist, then publish. Callers hold the writer lock.
    fn commit(&self, next: Snapshot, profile_changed: bool, queue_changed: bool) -> ApiResult<Arc<Snapshot>> {
        if profile_changed {
            self.dir.save(&next.profile)?;
        }
        if queue_changed {
            self.dir.save_queue(&next.queue)?;
        }
        let next = Arc::new(next);
        *self.current.write().expect("snapshot lock") = next.clone();
        Ok(next)
    }
}

pub struct AppState {
    home: PathBuf,
    token: Option<String>,
    slots: Mutex<HashMap<String, Arc<Slot>>>,
}

impl AppState {
    pub fn new(home: impl Into<PathBuf>, token: Option<String>) -> Self {
        AppState { home: home.into(), token: token.filter(|t| !t.is_empty()), slots: Mutex::new(HashMap::new()) }
    }

    fn slot(&self, id: &str) -> ApiResult<Arc<Slot>> {
        if !valid_profile_id(id) {
            return Err(ApiError::NotFound(format!("no profile {id:?}")));
        }
        let mut slots = self.slots.lock().expect("slot table lock");
        if let Some(slot) = slots.get(id) {
            return Ok(slot.clone());
        }
        let dir = ProfileDir::new(self.home.join(id));
        if !dir.exists() {
            return Err(ApiError::NotFound(format!("no profile {id:?}")));
        }
        let snapshot = Snapshot { profile: dir.load()?, queue: dir.load_queue()? };
        let slot = Arc::new(Slot {
            dir,
            writer: tokio::sync::Mutex::new(()),
            current: RwLock::new(Arc::new(snapshot)),
        });
        slots.insert(id.to_string(), slot.clone());
        Ok(slot)
    }

    /// Ids of the profile directories under the home, sorted.
    fn profile_ids(&self) -> Vec<String> {
        let Ok(entries) = fs::read_dir(&self.home) else {
            return Vec::new();
        };
        let mut ids: Vec<String> = entries
            .filter_map(|e| e.ok())
            .filter_map(|e| e.file_name().into_string().ok())
            .filter(|id| valid_profile_id(id) && ProfileDir::new(self.home.join(id)).exists())
            .collect();
        ids.sort();
        ids
    }

    fn authorized(&self, header_value: Option<&str>) -> bool {
        let Some(token) = &self.token else {
            return true;
        };
        let Some(given) = header_value.and_then(|v| v.strip_prefix("Bearer ")) else {
            return false;
        };
        // Length leaks; contents do not.
        given.len() == token.len() && given.bytes().zip(token.bytes()).fold(0u8, |acc, (a, b)| acc | (a ^ b)) == 0
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    let profiles = Router::new()
        .route("/profiles/{id}/beliefs", get(beliefs))
        .route("/profiles/{id}/feedback", post(feedback))
        .route("/profiles/{id}/filter", post(filter))
        .route("/profiles/{id}/queue", get(queue).post(enqueue))
        .route("/profiles/{id}/history", get(history))
        .route_layer(middleware::from_fn_with_state(state.clone(), require_token));
    Router::new().route("/config", get(config)).merge(profiles).with_state(state)
}

pub async fn serve(listener: tokio::net::TcpListener, state: Arc<AppState>) -> std::io::Result<()> {
    axum::serve(listener, router(state)).await
}

async fn require_token(State(state): State<Arc<AppState>>, request: Request, next: Next) -> Response {
    let given = request.headers().get(header::AUTHORIZATION).and_then(|v| v.to_str().ok());
    if state.authorized(given) {
        next.run(request).await
    } else {
        ApiError::Unauthorized.into_response()
    }
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(format!("malformed request body: {e}")))
}

fn bad_input(e: CoreError) -> ApiError {
    ApiError::BadRequest(e.to_string())
}

async fn config(State(state): State<Arc<AppState>>) -> Json<ConfigView> {
    Json(ConfigView {
        version: env!("CARGO_PKG_VERSION").to_string(),
        auth: if state.token.is_some() { "bearer" } else { "none" }.to_string(),
        poll_interval_ms: POLL_INTERVAL_MS,
        profiles: state.profile_ids(),
        defaults: Defaults::default(),
    })
}

async fn beliefs(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<BeliefsView>> {
    let snap = state.slot(&id)?.snapshot();
    Ok(Json(BeliefsView::of(&snap.profile)))
}

async fn history(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<HistoryView>> {
    let snap = state.slot(&id)?.snapshot();
    Ok(Json(HistoryView { version: snap.profile.version(), reports: snap.profile.history().to_vec() }))
}

async fn queue(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<QueueView>> {
    let snap = state.slot(&id)?.snapshot();
    Ok(Json(QueueView { documents: snap.queue.iter().map(QueuedDocument::from).collect() }))
}

async fn enqueue(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<(StatusCode, Json<QueueView>)> {
    let slot = state.slot(&id)?;
    let req: QueuedDocument = parse_body(&body)?;
    let doc = new_document(&req.id, &req.keywords)?;
    let _writer = slot.writer.lock().await;
    let snap = slot.snapshot();
    if snap.queue.iter().any(|d| d.id == doc.id) {
        return Err(ApiError::Conflict(format!("document {:?} is already pending", doc.id)));
    }
    let mut queue = snap.queue.clone();
    queue.push(doc);
    let next = slot.commit(Snapshot { profile: snap.profile.clone(), queue }, false, true)?;
    Ok((StatusCode::CREATED, Json(QueueView { documents: next.queue.iter().map(QueuedDocument::from).collect() })))
}

fn new_document(id: &str, keywords: &[String]) -> ApiResult<Document> {
    let id = id.trim();
    if id.is_empty() || id.chars().any(|c| c.is_control()) {
        return Err(ApiError::BadRequest(format!("invalid document id {id:?}")));
    }
    Document::new(id, keywords).map_err(bad_input)
}

async fn feedback(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<FeedbackResponse>> {
    let slot = state.slot(&id)?;
    let req: FeedbackRequest = parse_body(&body)?;
    let doc = new_document(&req.doc_id, &req.keywords)?;
    let _writer = slot.writer.lock().await;
    let snap = slot.snapshot();
    if let Some(seen) = req.base_version {
        if seen != snap.profile.version() {
            return Err(ApiError::Conflict(format!(
                "profile is at version {}, request was based on {seen}",
                snap.profile.version()
            )));
        }
    }
    let (profile, reports) = snap.profile.learn(&doc, req.judgment).map_err(|e| match e {
        CoreError::ProtectedConflict(_) => ApiError::Conflict(e.to_string()),
        e => bad_input(e),
    })?;
    if cfg!(debug_assertions) {
        let replayed = reports.iter().fold(snap.profile.ranking.clone(), |b, r| r.apply(&b));
        if replayed != profile.ranking {
            return Err(ApiError::Internal("adjustment reports do not reproduce the new ranking".into()));
        }
    }
    let queue: Vec<Document> = snap.queue.iter().filter(|d| d.id != doc.id).cloned().collect();
    let queue_changed = queue.len() != snap.queue.len();
    let next = slot.commit(Snapshot { profile, queue }, true, queue_changed)?;
    Ok(Json(FeedbackResponse {
        doc_id: doc.id,
        judgment: req.judgment,
        version: next.profile.version(),
        diff: net_changes(&snap.profile.ranking, &next.profile.ranking),
        reports,
        beliefs: BeliefsView::of(&next.profile),
    }))
}

async fn filter(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<FilterResponse>> {
    let slot = state.slot(&id)?;
    let req: FilterRequest = parse_body(&body)?;
    let query = match req.formula {
        Some(text) => parse_formula(&text).map_err(|e| bad_input(e.into()))?,
        None => Document::new("query", &req.keywords).map_err(bad_input)?.formula(),
    };
    let snap = slot.snapshot();
    let verdict = snap.profile.filter_formula(&query);
    Ok(Json(FilterResponse { query: query.into(), verdict }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bearer_token_must_match_exactly() {
        let state = AppState::new("unused", Some("abc".into()));
        assert!(state.authorized(Some("Bearer abc")));
        assert!(!state.authorized(Some("Bearer abd")));
        assert!(!state.authorized(Some("Bearer ab")));
        assert!(!state.authorized(Some("abc")));
        assert!(!state.authorized(None));
    }

    #[test]
    fn empty_token_disables_auth() {
        assert!(AppState::new("unused", Some(String::new())).authorized(None));
        assert!(AppState::new("unused", None).authorized(None));
    }

    #[test]
    fn unknown_profiles_are_not_found() {
        let home = tempfile::tempdir().unwrap();
        let state = AppState::new(home.path(), None);
        assert!(matches!(state.slot("ghost"), Err(ApiError::NotFound(_))));
        assert!(matches!(state.slot("../etc"), Err(ApiError::NotFound(_))));
        assert!(state.profile_ids().is_empty());
    }
}
