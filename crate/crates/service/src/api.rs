//! HTTP routes. Every response is derived from the registry's artifacts.

use std::path::Path;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use pareto_robust::artifact::RunArtifact;
use pareto_robust::builtin;
use pareto_robust::navigate::{navigate, worstcase_subset, NavigateRequest};
use pareto_robust::run::RunConfig;
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

use crate::registry::{Registry, RunStatus};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: String,
    pub message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        Self {
            status,
            code: code.into(),
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }

    fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }
}

impl From<pareto_robust::Error> for ApiError {
    fn from(e: pareto_robust::Error) -> Self {
        match e {
            pareto_robust::Error::UnknownPoint(_) => Self::not_found(e.to_string()),
            e if e.is_validation() => Self::bad_request(e.to_string()),
            e => Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunInfo {
    pub id: String,
    pub status: RunStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub artifact: Option<RunArtifact>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorstCaseRequest {
    pub scenario_ids: Vec<usize>,
}

/// API routes, plus static files from `ui_dir` under `/` when given.
pub fn router(registry: Arc<Registry>, ui_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/problems", get(list_problems))
        .route("/api/runs", post(create_run))
        .route("/api/runs/{id}", get(get_run))
        .route("/api/runs/{id}/front", get(get_front))
        .route("/api/runs/{id}/points/{pid}", get(get_point))
        .route("/api/runs/{id}/navigate", post(post_navigate))
        .route("/api/runs/{id}/worstcase", post(post_worstcase))
        .with_state(registry);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

async fn list_problems() -> Json<Vec<builtin::ProblemDescriptor>> {
    Json(builtin::descriptors())
}

fn parse<T: serde::de::DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid body: {e}")))
}

async fn create_run(State(reg): State<Arc<Registry>>, body: Bytes) -> Result<(StatusCode, Json<RunInfo>), ApiError> {
    let text = std::str::from_utf8(&body).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let mut config = RunConfig::from_json(text)?;
    config.output = None;
    config.validate()?;
    let (id, status) = reg.submit(config);
    Ok((
        StatusCode::ACCEPTED,
        Json(RunInfo {
            id,
            status,
            error: None,
            artifact: None,
        }),
    ))
}

async fn get_run(State(reg): State<Arc<Registry>>, UrlPath(id): UrlPath<String>) -> ApiResult<RunInfo> {
    let entry = reg.get(&id).ok_or_else(|| unknown_run(&id))?;
    Ok(Json(RunInfo {
        id,
        status: entry.status,
        error: entry.error,
        artifact: entry.artifact.map(|a| (*a).clone()),
    }))
}

fn unknown_run(id: &str) -> ApiError {
    ApiError::not_found(format!("unknown run id {id}"))
}

fn done(reg: &Registry, id: &str) -> Result<Arc<RunArtifact>, ApiError> {
    let entry = reg.get(id).ok_or_else(|| unknown_run(id))?;
    match (entry.status, entry.artifact) {
        (RunStatus::Done, Some(a)) => Ok(a),
        (status, _) => Err(ApiError::new(
            StatusCode::CONFLICT,
            "not_done",
            format!("run {id} is {status:?}, not Done"),
        )),
    }
}

async fn get_front(
    State(reg): State<Arc<Registry>>,
    UrlPath(id): UrlPath<String>,
) -> ApiResult<pareto_robust::artifact::FrontSummary> {
    Ok(Json(done(&reg, &id)?.front_summary()))
}

async fn get_point(
    State(reg): State<Arc<Registry>>,
    UrlPath((id, pid)): UrlPath<(String, usize)>,
) -> ApiResult<pareto_robust::artifact::ArtifactPoint> {
    Ok(Json(done(&reg, &id)?.point(pid)?.clone()))
}

async fn post_navigate(
    State(reg): State<Arc<Registry>>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> ApiResult<pareto_robust::navigate::NavigateResponse> {
    let artifact = done(&reg, &id)?;
    let req: NavigateRequest = parse(&body)?;
    Ok(Json(navigate(&artifact, &req)?))
}

async fn post_worstcase(
    State(reg): State<Arc<Registry>>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> ApiResult<pareto_robust::navigate::SubsetResponse> {
    let artifact = done(&reg, &id)?;
    let req: WorstCaseRequest = parse(&body)?;
    Ok(Json(worstcase_subset(&artifact, &req.scenario_ids)?))
}
