//! HTTP/JSON server over an in-memory resource store.
//!
//! | method | route | body | response |
//! |---|---|---|---|
//! | POST | `/circuits` | rcir text, `{"rcir": ..}`, `{"real": ..}` or a placement list | `{id, circuit}` |
//! | GET | `/circuits/{id}` | | `{id, circuit}` |
//! | GET | `/circuits/{id}/table` | | `{reversible, projected}` |
//! | GET | `/circuits/{id}/symmetry` | | symmetry report |
//! | GET | `/circuits/{id}/metrics` | | metrics |
//! | POST | `/tables` | rtab text or `{"rtab": ..}` | `{id, table}` |
//! | GET | `/tables/{id}` | | `{id, table}` |
//! | GET | `/tables/{id}/symmetry` | | symmetry report |
//! | POST | `/fabrics` | `{n, realization}` | `{id, doc}` |
//! | GET | `/fabrics/{id}` | | `{id, doc}` |
//! | POST | `/fabrics/{id}/configure` | `{report}`, `{table}`, `{circuit}` or `{rtab}` | `{id, doc, resources}` |
//! | GET | `/configs/{id}` | | `{id, doc, resources}` |
//! | POST | `/configs/{id}/eval` | `{input}` | fabric evaluation |
//! | POST | `/sessions` | `{config}` or `{fabric}` | `{id, render}` |
//! | GET | `/sessions/{id}` | | render model |
//! | POST | `/sessions/{id}/actions` | `{action: apply, input}`, `{action: next}`, `prev`, `reset`, `{action: load, config}` | render model |
//!
//! Errors are `{"error": <code>, "message": ..}` with status 404 for unknown
//! ids, 400 for malformed bodies and 422 for domain errors.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::circuit::Circuit;
use crate::error::Error;
use crate::fabric::{build, configure, Configuration, Fabric, Realization};
use crate::gate;
use crate::io;
use crate::session::Session;
use crate::sim;
use crate::symmetry::{analyze, SymmetryReport};
use crate::table::{metrics, IrreversibleTruthTable};
use crate::word::Word;

#[derive(Default)]
pub struct ResourceStore {
    next: AtomicU64,
    circuits: RwLock<HashMap<String, Arc<Circuit>>>,
    tables: RwLock<HashMap<String, Arc<IrreversibleTruthTable>>>,
    fabrics: RwLock<HashMap<String, Arc<Fabric>>>,
    configs: RwLock<HashMap<String, Arc<Configuration>>>,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
}

impl ResourceStore {
    fn id(&self, prefix: &str) -> String {
        format!("{prefix}{}", self.next.fetch_add(1, Ordering::Relaxed) + 1)
    }

    fn insert<T>(&self, map: &RwLock<HashMap<String, T>>, prefix: &str, value: T) -> String {
        let id = self.id(prefix);
        map.write().expect("store lock").insert(id.clone(), value);
        id
    }

    fn get<T: Clone>(map: &RwLock<HashMap<String, T>>, kind: &str, id: &str) -> Result<T, ApiError> {
        map.read()
            .expect("store lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(kind, id))
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: String,
    message: String,
}

impl ApiError {
    fn not_found(kind: &str, id: &str) -> Self {
        ApiError { status: StatusCode::NOT_FOUND, code: "NotFound".into(), message: format!("no {kind} `{id}`") }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, code: "BadRequest".into(), message: message.into() }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Format(_) => StatusCode::BAD_REQUEST,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError { status, code: e.code().into(), message: e.to_string() }
    }
}

impl From<io::FormatError> for ApiError {
    fn from(e: io::FormatError) -> Self {
        Error::Format(e).into()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.code, "message": self.message }))).into_response()
    }
}

type ApiResult<T = Json<Value>> = Result<T, ApiError>;
type Store = State<Arc<ResourceStore>>;

fn parse_json<T: DeserializeOwned>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid body: {e}")))
}

fn body_text(body: &Bytes) -> ApiResult<&str> {
    std::str::from_utf8(body).map_err(|_| ApiError::bad_request("body is not UTF-8"))
}

fn is_json(body: &Bytes) -> bool {
    body.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{')
}

pub fn router(store: Arc<ResourceStore>) -> Router {
    Router::new()
        .route("/circuits", post(create_circuit))
        .route("/circuits/{id}", get(get_circuit))
        .route("/circuits/{id}/table", get(circuit_table))
        .route("/circuits/{id}/symmetry", get(circuit_symmetry))
        .route("/circuits/{id}/metrics", get(circuit_metrics))
        .route("/tables", post(create_table))
        .route("/tables/{id}", get(get_table))
        .route("/tables/{id}/symmetry", get(table_symmetry))
        .route("/fabrics", post(create_fabric))
        .route("/fabrics/{id}", get(get_fabric))
        .route("/fabrics/{id}/configure", post(configure_fabric))
        .route("/configs/{id}", get(get_config))
        .route("/configs/{id}/eval", post(eval_config))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/actions", post(session_action))
        .with_state(store)
}

pub fn app() -> Router {
    router(Arc::new(ResourceStore::default()))
}

/// Serves on `127.0.0.1:port` until interrupted.
pub fn serve(port: u16) -> std::io::Result<()> {
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
        log::info!("listening on {}", listener.local_addr()?);
        axum::serve(listener, app())
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
    })
}

#[derive(Deserialize)]
struct PlacementBody {
    slot: usize,
    gate: String,
    pins: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CircuitBody {
    Rcir {
        rcir: String,
    },
    Real {
        real: String,
    },
    Placements {
        lines: usize,
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        names: Vec<String>,
        #[serde(default)]
        constants: BTreeMap<String, u8>,
        #[serde(default)]
        garbage: BTreeSet<usize>,
        #[serde(default)]
        outputs: BTreeMap<String, String>,
        placements: Vec<PlacementBody>,
    },
}

// map keys arrive as strings once buffered by the untagged enum
fn line_key(key: &str) -> ApiResult<usize> {
    key.parse().map_err(|_| ApiError::bad_request(format!("bad line index {key:?}")))
}

fn circuit_from_body(body: CircuitBody) -> ApiResult<Circuit> {
    Ok(match body {
        CircuitBody::Rcir { rcir } => io::parse_rcir(&rcir)?,
        CircuitBody::Real { real } => io::parse_real(&real)?,
        CircuitBody::Placements { lines, name, names, constants, garbage, outputs, placements } => {
            let mut c = Circuit::new(lines)?;
            if let Some(name) = name {
                c.set_name(name);
            }
            for (i, n) in names.into_iter().enumerate() {
                c.set_line_name(i, n)?;
            }
            for (line, v) in constants {
                let line = line_key(&line)?;
                if v > 1 {
                    return Err(ApiError::bad_request(format!("constant on line {line} must be 0 or 1")));
                }
                c.set_constant(line, v == 1)?;
            }
            for line in garbage {
                c.set_garbage(line)?;
            }
            for (line, o) in outputs {
                let line = line_key(&line)?;
                c.set_output_name(line, o)?;
            }
            for p in placements {
                c.place_gate(p.slot, gate::lookup(&p.gate)?, &p.pins)?;
            }
            c
        }
    })
}

fn circuit_json(id: &str, c: &Circuit) -> Json<Value> {
    Json(json!({
        "id": id,
        "circuit": {
            "name": c.name(),
            "lines": c.width(),
            "depth": c.depth(),
            "free_inputs": c.free_inputs(),
            "rcir": io::emit_rcir(c),
        }
    }))
}

async fn create_circuit(State(store): Store, body: Bytes) -> ApiResult<(StatusCode, Json<Value>)> {
    let c = if is_json(&body) {
        circuit_from_body(parse_json(&body)?)?
    } else {
        io::parse_rcir(body_text(&body)?)?
    };
    let id = store.insert(&store.circuits, "c", Arc::new(c.clone()));
    Ok((StatusCode::CREATED, circuit_json(&id, &c)))
}

async fn get_circuit(State(store): Store, Path(id): Path<String>) -> ApiResult {
    let c = ResourceStore::get(&store.circuits, "circuit", &id)?;
    Ok(circuit_json(&id, &c))
}

async fn circuit_table(State(store): Store, Path(id): Path<String>) -> ApiResult {
    let c = ResourceStore::get(&store.circuits, "circuit", &id)?;
    let full = sim::full_table(&c)?;
    let projected = crate::table::project(&full, &c.roles())?;
    let reversible: Vec<Value> = full.rows().map(|(i, o)| json!({ "input": i, "output": o })).collect();
    Ok(Json(json!({ "reversible": reversible, "projected": projected })))
}

async fn circuit_symmetry(State(store): Store, Path(id): Path<String>) -> ApiResult<Json<SymmetryReport>> {
    let c = ResourceStore::get(&store.circuits, "circuit", &id)?;
    Ok(Json(analyze(&sim::projected_table(&c)?)))
}

async fn circuit_metrics(State(store): Store, Path(id): Path<String>) -> ApiResult<Json<crate::table::Metrics>> {
    let c = ResourceStore::get(&store.circuits, "circuit", &id)?;
    Ok(Json(metrics(&c)))
}

#[derive(Deserialize)]
struct TableBody {
    rtab: String,
}

async fn create_table(State(store): Store, body: Bytes) -> ApiResult<(StatusCode, Json<Value>)> {
    let text = if is_json(&body) { parse_json::<TableBody>(&body)?.rtab } else { body_text(&body)?.to_string() };
    let t = io::parse_rtab(&text)?;
    let id = store.insert(&store.tables, "t", Arc::new(t.clone()));
    Ok((StatusCode::CREATED, Json(json!({ "id": id, "table": t }))))
}

async fn get_table(State(store): Store, Path(id): Path<String>) -> ApiResult {
    let t = ResourceStore::get(&store.tables, "table", &id)?;
    Ok(Json(json!({ "id": id, "table": *t })))
}

async fn table_symmetry(State(store): Store, Path(id): Path<String>) -> ApiResult<Json<SymmetryReport>> {
    let t = ResourceStore::get(&store.tables, "table", &id)?;
    Ok(Json(analyze(&t)))
}

#[derive(Deserialize)]
struct FabricBody {
    n: usize,
    #[serde(default = "default_realization")]
    realization: Realization,
}

fn default_realization() -> Realization {
    Realization::Kerntopf
}

async fn create_fabric(State(store): Store, body: Bytes) -> ApiResult<(StatusCode, Json<Value>)> {
    let req: FabricBody = parse_json(&body)?;
    let fabric = Arc::new(build(req.n, req.realization)?);
    let doc = io::fabric_doc(&fabric.unconfigured());
    let id = store.insert(&store.fabrics, "f", fabric);
    Ok((StatusCode::CREATED, Json(json!({ "id": id, "doc": doc }))))
}

async fn get_fabric(State(store): Store, Path(id): Path<String>) -> ApiResult {
    let fabric = ResourceStore::get(&store.fabrics, "fabric", &id)?;
    Ok(Json(json!({ "id": id, "doc": io::fabric_doc(&fabric.unconfigured()) })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigureBody {
    report: Option<SymmetryReport>,
    table: Option<String>,
    circuit: Option<String>,
    rtab: Option<String>,
}

fn config_json(id: &str, config: &Configuration) -> Json<Value> {
    Json(json!({ "id": id, "doc": io::fabric_doc(config), "resources": config.resource_report() }))
}

async fn configure_fabric(State(store): Store, Path(id): Path<String>, body: Bytes) -> ApiResult<(StatusCode, Json<Value>)> {
    let fabric = ResourceStore::get(&store.fabrics, "fabric", &id)?;
    let req: ConfigureBody = parse_json(&body)?;
    let report = match req {
        ConfigureBody { report: Some(r), table: None, circuit: None, rtab: None } => r,
        ConfigureBody { table: Some(t), report: None, circuit: None, rtab: None } => {
            analyze(&*ResourceStore::get(&store.tables, "table", &t)?)
        }
        ConfigureBody { circuit: Some(c), report: None, table: None, rtab: None } => {
            analyze(&sim::projected_table(&*ResourceStore::get(&store.circuits, "circuit", &c)?)?)
        }
        ConfigureBody { rtab: Some(text), report: None, table: None, circuit: None } => analyze(&io::parse_rtab(&text)?),
        _ => return Err(ApiError::bad_request("give exactly one of report, table, circuit or rtab")),
    };
    let config = configure(&fabric, &report)?;
    let cid = store.insert(&store.configs, "k", Arc::new(config.clone()));
    Ok((StatusCode::CREATED, config_json(&cid, &config)))
}

async fn get_config(State(store): Store, Path(id): Path<String>) -> ApiResult {
    let config = ResourceStore::get(&store.configs, "configuration", &id)?;
    Ok(config_json(&id, &config))
}

#[derive(Deserialize)]
struct InputBody {
    input: String,
}

fn parse_input(s: &str) -> ApiResult<Word> {
    s.parse().map_err(|e| ApiError::bad_request(format!("input: {e}")))
}

async fn eval_config(State(store): Store, Path(id): Path<String>, body: Bytes) -> ApiResult<Json<crate::fabric::FabricEval>> {
    let config = ResourceStore::get(&store.configs, "configuration", &id)?;
    let req: InputBody = parse_json(&body)?;
    Ok(Json(config.eval(&parse_input(&req.input)?)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SessionBody {
    config: Option<String>,
    fabric: Option<String>,
}

async fn create_session(State(store): Store, body: Bytes) -> ApiResult<(StatusCode, Json<Value>)> {
    let req: SessionBody = parse_json(&body)?;
    let session = match (req.config, req.fabric) {
        (Some(k), None) => Session::with_config(ResourceStore::get(&store.configs, "configuration", &k)?),
        (None, Some(f)) => Session::start(ResourceStore::get(&store.fabrics, "fabric", &f)?),
        _ => return Err(ApiError::bad_request("give exactly one of config or fabric")),
    };
    let render = session.snapshot();
    let id = store.insert(&store.sessions, "s", Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(json!({ "id": id, "render": render }))))
}

async fn get_session(State(store): Store, Path(id): Path<String>) -> ApiResult<Json<crate::RenderModel>> {
    let s = ResourceStore::get(&store.sessions, "session", &id)?;
    let snapshot = s.lock().expect("session lock").snapshot();
    Ok(Json(snapshot))
}

#[derive(Deserialize)]
#[serde(tag = "action", rename_all = "lowercase")]
enum Action {
    Apply { input: String },
    Next,
    Prev,
    Reset,
    Load { config: String },
}

async fn session_action(State(store): Store, Path(id): Path<String>, body: Bytes) -> ApiResult<Json<crate::RenderModel>> {
    let s = ResourceStore::get(&store.sessions, "session", &id)?;
    let action: Action = parse_json(&body)?;
    let config = match &action {
        Action::Load { config } => Some(ResourceStore::get(&store.configs, "configuration", config)?),
        _ => None,
    };
    let mut session = s.lock().expect("session lock");
    let render = match action {
        Action::Apply { input } => session.apply_input(&parse_input(&input)?)?,
        Action::Next => session.next()?,
        Action::Prev => session.prev()?,
        Action::Reset => session.reset(),
        Action::Load { .. } => session.load_config(config.expect("looked up above"))?,
    };
    Ok(Json(render))
}
