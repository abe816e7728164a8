//! JSON API over an append-only table of immutable polygon snapshots.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use cpos_core::edit::project_vertex;
use cpos_core::io::{self, Refusal};
use cpos_core::polygon::CposPolygon;
use cpos_core::scene::{parse_features, scene, Mu, Params};
use serde_json::{json, Value};

use crate::app::load_polygon_text;

#[derive(Clone, Default)]
pub struct AppState {
    snapshots: Arc<Mutex<Vec<CposPolygon>>>,
}

impl AppState {
    pub fn new() -> Self {
        Self::default()
    }

    fn insert(&self, p: CposPolygon) -> String {
        let mut table = self.snapshots.lock().expect("snapshot table poisoned");
        table.push(p);
        table.len().to_string()
    }

    fn get(&self, id: &str) -> Option<CposPolygon> {
        let k: usize = id.parse().ok()?;
        let table = self.snapshots.lock().expect("snapshot table poisoned");
        k.checked_sub(1).and_then(|i| table.get(i).cloned())
    }
}

struct Json(StatusCode, Value);

impl IntoResponse for Json {
    fn into_response(self) -> Response {
        (
            self.0,
            [("content-type", "application/json")],
            io::to_string(&self.1),
        )
            .into_response()
    }
}

fn bad_request(msg: impl std::fmt::Display) -> Json {
    Json(
        StatusCode::BAD_REQUEST,
        json!({ "error": { "kind": "MalformedInput", "message": msg.to_string() } }),
    )
}

fn not_found(id: &str) -> Json {
    Json(
        StatusCode::NOT_FOUND,
        json!({ "error": { "kind": "UnknownId", "message": format!("no snapshot {id}") } }),
    )
}

fn refused(r: &Refusal) -> Json {
    Json(StatusCode::UNPROCESSABLE_ENTITY, r.to_json())
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/polygon", post(create))
        .route("/api/polygon/{id}", get(fetch))
        .route("/api/scene/{id}", get(scene_doc))
        .route("/api/project", post(project))
        .with_state(state)
}

async fn health() -> Json {
    Json(
        StatusCode::OK,
        json!({ "status": "ok", "name": "cpos", "version": env!("CARGO_PKG_VERSION") }),
    )
}

async fn create(State(st): State<AppState>, body: String) -> Json {
    match load_polygon_text(&body) {
        Ok(p) => Json(StatusCode::OK, json!({ "id": st.insert(p) })),
        Err(Ok(m)) => bad_request(m),
        Err(Err(r)) => refused(&r),
    }
}

async fn fetch(State(st): State<AppState>, Path(id): Path<String>) -> Json {
    match st.get(&id) {
        Some(p) => Json(StatusCode::OK, io::polygon(&p)),
        None => not_found(&id),
    }
}

fn scene_params(
    q: &HashMap<String, String>,
) -> Result<(Vec<cpos_core::scene::Feature>, Params), String> {
    let features = parse_features(q.get("features").map(String::as_str).unwrap_or("ae,css"))
        .map_err(|e| e.to_string())?;
    let rational = |key: &str| -> Result<_, String> {
        q.get(key)
            .map(|s| {
                cpos_core::kernel::parse_rational(s).map_err(|_| format!("invalid {key}: {s}"))
            })
            .transpose()
    };
    let mu = q
        .get("mu")
        .map(|s| s.parse::<Mu>().map_err(|e| e.to_string()))
        .transpose()?;
    Ok((
        features,
        Params {
            t: rational("t")?,
            level: rational("level")?,
            mu,
        },
    ))
}

async fn scene_doc(
    State(st): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Json {
    let Some(p) = st.get(&id) else {
        return not_found(&id);
    };
    let (features, params) = match scene_params(&q) {
        Ok(x) => x,
        Err(m) => return bad_request(m),
    };
    let doc = tokio::task::spawn_blocking(move || scene(&id, &p, &features, &params)).await;
    match doc {
        Ok(v) => Json(StatusCode::OK, v),
        Err(e) => Json(
            StatusCode::INTERNAL_SERVER_ERROR,
            json!({ "error": { "kind": "Internal", "message": e.to_string() } }),
        ),
    }
}

async fn project(State(st): State<AppState>, body: String) -> Json {
    let req: Value = match serde_json::from_str(&body) {
        Ok(v) => v,
        Err(e) => return bad_request(e),
    };
    let id = match &req["id"] {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return bad_request("missing id"),
    };
    let Some(k) = req["vertex"].as_u64() else {
        return bad_request("missing vertex");
    };
    let target = match io::parse_point_value(&req["target"]) {
        Ok(t) => t,
        Err(e) => return bad_request(e),
    };
    let Some(p) = st.get(&id) else {
        return not_found(&id);
    };
    match project_vertex(&p, k as usize, &target) {
        Ok(r) => {
            let polygon = io::polygon(&r.polygon);
            let new_id = st.insert(r.polygon);
            Json(
                StatusCode::OK,
                json!({ "id": new_id, "polygon": polygon, "clamped": r.clamped }),
            )
        }
        Err(e) => refused(&Refusal::from(e)),
    }
}

/// Serves until interrupted.
pub async fn serve(bind: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((bind, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new()))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
