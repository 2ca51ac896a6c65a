//! HTTP service exposing debugger sessions.
//!
//! Every session sits behind its own lock; stepping runs on the blocking
//! pool so a long `run` does not stall other sessions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{Duration, Instant};

use asjust_core::debugger::{Pause, Session, DEFAULT_CHECKPOINT_CAP};
use asjust_core::solver::{SignOrder, SolveOptions};
use asjust_core::{Error, Program};
use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

use crate::json::{self, BreakpointJson, CheckpointJson, DigestJson, InterpJson, PauseJson};

pub const DEFAULT_IDLE_TIMEOUT: Duration = Duration::from_secs(30 * 60);

#[derive(Clone, Debug)]
pub struct Config {
    pub idle_timeout: Duration,
    pub checkpoint_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            idle_timeout: DEFAULT_IDLE_TIMEOUT,
            checkpoint_cap: DEFAULT_CHECKPOINT_CAP,
        }
    }
}

struct Entry {
    session: Mutex<Session>,
    touched: Mutex<Instant>,
}

impl Entry {
    fn lock(&self) -> MutexGuard<'_, Session> {
        *self.touched.lock().unwrap_or_else(|e| e.into_inner()) = Instant::now();
        self.session.lock().unwrap_or_else(|e| e.into_inner())
    }
}

struct Inner {
    config: Config,
    sessions: Mutex<HashMap<Uuid, Arc<Entry>>>,
}

/// Shared server state: the session registry.
#[derive(Clone)]
pub struct AppState(Arc<Inner>);

impl AppState {
    pub fn new(config: Config) -> Self {
        AppState(Arc::new(Inner {
            config,
            sessions: Mutex::new(HashMap::new()),
        }))
    }

    pub fn config(&self) -> &Config {
        &self.0.config
    }

    fn registry(&self) -> MutexGuard<'_, HashMap<Uuid, Arc<Entry>>> {
        self.0.sessions.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Opens a session over `text`.
    pub fn create(&self, text: &str, opts: SolveOptions) -> Result<Uuid, Error> {
        let p = Arc::new(asjust_core::load_program(text)?);
        let session = Session::with_capacity(p, opts, self.0.config.checkpoint_cap);
        let id = Uuid::new_v4();
        self.registry().insert(
            id,
            Arc::new(Entry {
                session: Mutex::new(session),
                touched: Mutex::new(Instant::now()),
            }),
        );
        Ok(id)
    }

    fn entry(&self, id: &str) -> Result<Arc<Entry>, ApiError> {
        let unknown = || ApiError::new(StatusCode::NOT_FOUND, format!("unknown session {id}"));
        let uuid = Uuid::parse_str(id).map_err(|_| unknown())?;
        self.registry().get(&uuid).cloned().ok_or_else(unknown)
    }

    pub fn session_count(&self) -> usize {
        self.registry().len()
    }

    /// Drops sessions idle for longer than the timeout; returns how many.
    pub fn sweep(&self, now: Instant) -> usize {
        let timeout = self.0.config.idle_timeout;
        let mut reg = self.registry();
        let before = reg.len();
        reg.retain(|_, e| {
            let t = *e.touched.lock().unwrap_or_else(|e| e.into_inner());
            now.saturating_duration_since(t) <= timeout
        });
        before - reg.len()
    }
}

/// Periodically expires idle sessions.
pub fn spawn_sweeper(state: AppState) -> tokio::task::JoinHandle<()> {
    let period =
        (state.config().idle_timeout / 4).clamp(Duration::from_millis(10), Duration::from_secs(60));
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(period);
        loop {
            tick.tick().await;
            state.sweep(Instant::now());
        }
    })
}

#[derive(Serialize, Debug)]
struct ErrorBody {
    error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            body: ErrorBody {
                error: message.into(),
                line: None,
                column: None,
            },
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, message)
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::UnsafeVariable { .. } | Error::NoConstants => {
                StatusCode::BAD_REQUEST
            }
            Error::UnknownAtom(_)
            | Error::NodeNotFound
            | Error::UnknownCheckpoint(_)
            | Error::UnknownBreakpoint(_) => StatusCode::NOT_FOUND,
            Error::Exhausted => StatusCode::CONFLICT,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let (line, column) = match e {
            Error::Syntax { line, column, .. } | Error::UnsafeVariable { line, column, .. } => {
                (Some(line), Some(column))
            }
            _ => (None, None),
        };
        let message = match e {
            Error::Exhausted => "session is done".to_string(),
            other => other.to_string(),
        };
        ApiError {
            status,
            body: ErrorBody {
                error: message,
                line,
                column,
            },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid body: {e}")))
}

fn parse_order(s: &str) -> ApiResult<SignOrder> {
    match s {
        "tf" => Ok(SignOrder::TrueFirst),
        "ft" => Ok(SignOrder::FalseFirst),
        _ => Err(ApiError::bad_request(format!("unknown sign order `{s}`"))),
    }
}

/// Runs `f` on the session from the blocking pool.
async fn with_session<T: Send + 'static>(
    entry: Arc<Entry>,
    f: impl FnOnce(&mut Session) -> ApiResult<T> + Send + 'static,
) -> ApiResult<T> {
    tokio::task::spawn_blocking(move || f(&mut entry.lock()))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
}

fn encode_pause(s: &Session, x: &Pause) -> PauseJson {
    json::pause(s.program(), x)
}

#[derive(Deserialize, Default)]
#[serde(rename_all = "camelCase")]
struct CreateQuery {
    sign_order: Option<String>,
    #[serde(default)]
    kill_false: bool,
    max_models: Option<usize>,
}

#[derive(Serialize)]
struct Created {
    id: String,
    atoms: Vec<String>,
}

async fn create_session(
    State(st): State<AppState>,
    Query(q): Query<CreateQuery>,
    body: String,
) -> ApiResult<(StatusCode, Json<Created>)> {
    let opts = SolveOptions {
        max_models: q.max_models,
        sign_order: q
            .sign_order
            .as_deref()
            .map(parse_order)
            .transpose()?
            .unwrap_or_default(),
        trace: true,
        kill_false: q.kill_false,
    };
    let id = st.create(&body, opts)?;
    let entry = st.entry(&id.to_string())?;
    let atoms = {
        let s = entry.lock();
        let p: &Program = s.program();
        p.atoms().iter().map(|(_, n)| n.to_string()).collect()
    };
    Ok((
        StatusCode::CREATED,
        Json(Created {
            id: id.to_string(),
            atoms,
        }),
    ))
}

#[derive(Serialize)]
struct BpCreated {
    #[serde(rename = "bpId")]
    bp_id: u32,
}

async fn add_breakpoint(
    State(st): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<(StatusCode, Json<BpCreated>)> {
    let bp: BreakpointJson = parse_body(&body)?;
    let entry = st.entry(&id)?;
    let mut s = entry.lock();
    let resolved = bp.resolve(s.program())?;
    let bp_id = s.add_breakpoint(resolved);
    Ok((StatusCode::CREATED, Json(BpCreated { bp_id })))
}

async fn remove_breakpoint(
    State(st): State<AppState>,
    Path((id, bp)): Path<(String, String)>,
) -> ApiResult<StatusCode> {
    let bp: u32 = bp
        .parse()
        .map_err(|_| ApiError::new(StatusCode::NOT_FOUND, format!("unknown breakpoint {bp}")))?;
    st.entry(&id)?.lock().remove_breakpoint(bp)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn run(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<PauseJson>> {
    let entry = st.entry(&id)?;
    with_session(entry, |s| {
        let x = s.run()?;
        Ok(Json(encode_pause(s, &x)))
    })
    .await
}

async fn step(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<PauseJson>> {
    let entry = st.entry(&id)?;
    with_session(entry, |s| {
        let x = s.step()?;
        Ok(Json(encode_pause(s, &x)))
    })
    .await
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct ResumeBody {
    checkpoint: u64,
    sign_order: Option<String>,
}

async fn resume(
    State(st): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<PauseJson>> {
    let req: ResumeBody = parse_body(&body)?;
    let order = req.sign_order.as_deref().map(parse_order).transpose()?;
    let entry = st.entry(&id)?;
    with_session(entry, move |s| {
        let x = s.resume_from(req.checkpoint, order)?;
        Ok(Json(encode_pause(s, &x)))
    })
    .await
}

#[derive(Serialize)]
struct BreakpointEntry {
    id: u32,
    #[serde(flatten)]
    breakpoint: BreakpointJson,
}

#[derive(Serialize)]
struct StateView {
    #[serde(flatten)]
    digest: DigestJson,
    breakpoints: Vec<BreakpointEntry>,
}

async fn state(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<StateView>> {
    let entry = st.entry(&id)?;
    let s = entry.lock();
    let p = s.program();
    Ok(Json(StateView {
        digest: json::digest(p, &s.digest()),
        breakpoints: s
            .breakpoints()
            .map(|(id, b)| BreakpointEntry {
                id,
                breakpoint: BreakpointJson::encode(p, &b),
            })
            .collect(),
    }))
}

async fn snapshot(
    State(st): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<json::SnapshotJson>> {
    let entry = st.entry(&id)?;
    let (p, snap) = {
        let s = entry.lock();
        (Arc::clone(s.program()), s.snapshot().clone())
    };
    Ok(Json(json::snapshot(&p, &snap)))
}

#[derive(Deserialize)]
struct JustificationQuery {
    atom: String,
    sign: Option<String>,
    format: Option<String>,
}

async fn justification(
    State(st): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<JustificationQuery>,
) -> ApiResult<Response> {
    let sign = match q.sign.as_deref() {
        None => asjust_core::online::Sign::Plus,
        Some(s) => json::parse_sign(s)
            .ok_or_else(|| ApiError::bad_request(format!("unknown sign `{s}`")))?,
    };
    let dot = match q.format.as_deref() {
        None | Some("json") => false,
        Some("dot") => true,
        Some(f) => return Err(ApiError::bad_request(format!("unknown format `{f}`"))),
    };
    let entry = st.entry(&id)?;
    let (p, g) = {
        let s = entry.lock();
        let p = Arc::clone(s.program());
        let atom = p
            .atom(&q.atom)
            .ok_or_else(|| Error::UnknownAtom(q.atom.clone()))?;
        let g = s.justification(atom, sign.is_plus()).map_err(|e| match e {
            Error::NodeNotFound => ApiError::new(
                StatusCode::NOT_FOUND,
                format!("no graph for {}{} in the current snapshot", q.atom, sign),
            ),
            other => other.into(),
        })?;
        (p, g)
    };
    Ok(if dot {
        (
            [(header::CONTENT_TYPE, "text/vnd.graphviz; charset=utf-8")],
            crate::dot::egraph(&p, &g),
        )
            .into_response()
    } else {
        Json(json::egraph(&p, &g)).into_response()
    })
}

async fn checkpoints(
    State(st): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<Vec<CheckpointJson>>> {
    let entry = st.entry(&id)?;
    let s = entry.lock();
    let p = s.program();
    Ok(Json(
        s.checkpoints()
            .iter()
            .map(|(id, d)| CheckpointJson {
                id: *id,
                state: json::digest(p, d),
            })
            .collect(),
    ))
}

#[derive(Serialize)]
struct ModelView {
    index: usize,
    #[serde(flatten)]
    model: InterpJson,
}

async fn models(
    State(st): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<Vec<ModelView>>> {
    let entry = st.entry(&id)?;
    let s = entry.lock();
    let p = s.program();
    Ok(Json(
        s.models()
            .iter()
            .map(|m| ModelView {
                index: m.index,
                model: json::interp(p, &m.model),
            })
            .collect(),
    ))
}

pub fn router(app: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/breakpoints", post(add_breakpoint))
        .route("/sessions/{id}/breakpoints/{bp}", delete(remove_breakpoint))
        .route("/sessions/{id}/run", post(run))
        .route("/sessions/{id}/step", post(step))
        .route("/sessions/{id}/resume", post(resume))
        .route("/sessions/{id}/state", get(state))
        .route("/sessions/{id}/snapshot", get(snapshot))
        .route("/sessions/{id}/justification", get(justification))
        .route("/sessions/{id}/checkpoints", get(checkpoints))
        .route("/sessions/{id}/models", get(models))
        .with_state(app)
}

/// Serves until the listener fails.
pub async fn serve(listener: tokio::net::TcpListener, state: AppState) -> std::io::Result<()> {
    let sweeper = spawn_sweeper(state.clone());
    let out = axum::serve(listener, router(state)).await;
    sweeper.abort();
    out
}
