//! JSON over HTTP for exploring the fiber of a polycon: scenarios hold a base polycon and a
//! composed basis change; deformations, geometry and reports are served under `/v1`.

pub mod geometry;
pub mod report;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use adjugate_core::adjoint::compute_adjoint;
use adjugate_core::detrep::{deform_adjugate, ldr_from_polycon, AdjugateMatrix, BasisChange};
use adjugate_core::exactalg::{parse_rat, Poly, RatMatrix};
use adjugate_core::io::{basis_change_from_json, basis_change_to_json, polycon_from_json, Chart, MatrixJson, PolyconJson};
use adjugate_core::polycon::{check_regularity, Polycon, Verdict};
use adjugate_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use geometry::{LayerKind, RenderSpec, Viewport};

pub struct Scenario {
    pub id: String,
    pub base: Polycon,
    /// Absent when the polycon has no determinantal representation (not three conics).
    pub base_adjugate: Option<AdjugateMatrix>,
    pub alpha: Poly,
    pub t: BasisChange,
    pub current: Polycon,
    pub adjugate: Option<AdjugateMatrix>,
    pub verdict: Verdict,
}

impl Scenario {
    fn load(id: String, base: Polycon) -> adjugate_core::Result<Self> {
        let verdict = check_regularity(&base, None, None)?.verdict;
        let (adjugate, alpha) = match ldr_from_polycon(&base) {
            Ok(r) => (Some(r.adjugate), r.alpha),
            Err(_) => (None, compute_adjoint(&base, true)?.poly),
        };
        Ok(Scenario {
            id,
            current: base.clone(),
            base,
            base_adjugate: adjugate.clone(),
            adjugate,
            alpha,
            t: BasisChange::identity(),
            verdict,
        })
    }

    fn summary(&self) -> Value {
        json!({
            "scenario": self.id,
            "precision": "exact",
            "polycon": report::polycon_value(&self.current, Chart::Projective),
            "basis-change": basis_change_to_json(&self.t),
            "regularity": self.verdict,
            "adjoint": report::poly_value(&self.alpha, Chart::Projective),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Snapshot {
    scenarios: Vec<SnapshotEntry>,
}

#[derive(Serialize, Deserialize)]
struct SnapshotEntry {
    id: String,
    polycon: PolyconJson,
    t: MatrixJson,
}

/// In-memory scenarios. Mutations lock the one scenario they touch.
#[derive(Default)]
pub struct Store {
    scenarios: RwLock<HashMap<String, Arc<Mutex<Scenario>>>>,
    next: AtomicU64,
    snapshot: Option<PathBuf>,
}

#[derive(Debug)]
pub struct Response {
    pub status: u16,
    pub body: String,
}

impl Response {
    fn json(status: u16, v: &Value) -> Self {
        Response { status, body: serde_json::to_string_pretty(v).expect("serializable") }
    }

    fn error(status: u16, kind: &str, message: impl Into<String>) -> Self {
        Response::json(status, &json!({ "error": { "kind": kind, "message": message.into() } }))
    }

    fn from_core(e: Error) -> Self {
        match e {
            Error::LeavesChart(cert) => Response::json(
                422,
                &json!({ "error": { "kind": "leaves-chart", "message": "the deformed matrix does not read as a polycon", "certificate": cert } }),
            ),
            Error::Parse { .. } => Response::error(400, "parse", e.to_string()),
            e => Response::error(422, "computation", e.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeformRequest {
    gamma: Option<String>,
    matrix: Option<MatrixJson>,
    #[serde(default = "yes")]
    check_fiber: bool,
}

fn yes() -> bool {
    true
}

fn compose(a: &BasisChange, b: &BasisChange) -> BasisChange {
    let m = RatMatrix::from_3x3(&a.matrix).mul(&RatMatrix::from_3x3(&b.matrix)).to_3x3();
    BasisChange::new(m).expect("product of invertible matrices")
}

fn query_param<'a>(query: &'a str, key: &str) -> Option<&'a str> {
    query.split('&').find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
}

fn percent_decode(s: &str) -> String {
    let b = s.as_bytes();
    let mut out = Vec::with_capacity(b.len());
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'%' && i + 2 < b.len() {
            if let Ok(v) = u8::from_str_radix(&s[i + 1..i + 3], 16) {
                out.push(v);
                i += 3;
                continue;
            }
        }
        out.push(if b[i] == b'+' { b' ' } else { b[i] });
        i += 1;
    }
    String::from_utf8_lossy(&out).into_owned()
}

impl Store {
    pub fn new() -> Self {
        Store::default()
    }

    /// A store that writes every change to `path` and starts from its contents if present.
    pub fn with_snapshot(path: PathBuf) -> adjugate_core::Result<Self> {
        let store = Store { snapshot: Some(path.clone()), ..Store::default() };
        if let Ok(text) = std::fs::read_to_string(&path) {
            let snap: Snapshot = adjugate_core::io::parse_json(&text)?;
            let mut max = 0;
            for e in snap.scenarios {
                let mut s = Scenario::load(e.id.clone(), polycon_from_json(&e.polycon)?)?;
                let t = basis_change_from_json(&e.t)?;
                if let (false, Some(base)) = (t.is_identity(), &s.base_adjugate) {
                    let (adj, q) = deform_adjugate(base, &t)?;
                    s.verdict = check_regularity(&q, None, None)?.verdict;
                    s.adjugate = Some(adj);
                    s.current = q;
                    s.t = t;
                }
                if let Some(n) = e.id.strip_prefix('s').and_then(|n| n.parse::<u64>().ok()) {
                    max = max.max(n);
                }
                store.scenarios.write().unwrap().insert(e.id, Arc::new(Mutex::new(s)));
            }
            store.next.store(max, Ordering::SeqCst);
        }
        Ok(store)
    }

    fn persist(&self) {
        let Some(path) = &self.snapshot else { return };
        let map = self.scenarios.read().unwrap();
        let mut entries: Vec<SnapshotEntry> = map
            .values()
            .map(|s| {
                let s = s.lock().unwrap();
                SnapshotEntry {
                    id: s.id.clone(),
                    polycon: adjugate_core::io::polycon_to_json(&s.base, Chart::Projective),
                    t: basis_change_to_json(&s.t),
                }
            })
            .collect();
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let text = serde_json::to_string_pretty(&Snapshot { scenarios: entries }).expect("serializable");
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("snapshot to {}: {e}", path.display());
        }
    }

    fn get(&self, id: &str) -> Option<Arc<Mutex<Scenario>>> {
        self.scenarios.read().unwrap().get(id).cloned()
    }

    fn create(&self, body: &str) -> Response {
        let j: PolyconJson = match adjugate_core::io::parse_json(body) {
            Ok(j) => j,
            Err(e) => return Response::from_core(e),
        };
        let p = match polycon_from_json(&j) {
            Ok(p) => p,
            Err(e) => return Response::from_core(e),
        };
        let id = format!("s{:06}", self.next.fetch_add(1, Ordering::SeqCst) + 1);
        let s = match Scenario::load(id.clone(), p) {
            Ok(s) => s,
            Err(e) => return Response::from_core(e),
        };
        let out = s.summary();
        self.scenarios.write().unwrap().insert(id, Arc::new(Mutex::new(s)));
        self.persist();
        Response::json(201, &out)
    }

    fn deform(&self, id: &str, body: &str) -> Response {
        let Some(cell) = self.get(id) else { return Response::error(404, "not-found", format!("no scenario {id}")) };
        let req: DeformRequest = match adjugate_core::io::parse_json(body) {
            Ok(r) => r,
            Err(e) => return Response::from_core(e),
        };
        let t = match (&req.gamma, &req.matrix) {
            (Some(g), None) => match parse_rat(g) {
                Ok(g) => BasisChange::t_gamma(g),
                Err(e) => return Response::error(400, "parse", format!("gamma: {e}")),
            },
            (None, Some(m)) => match basis_change_from_json(m) {
                Ok(t) => t,
                Err(e) => return Response::error(400, "parse", format!("matrix: {e}")),
            },
            _ => return Response::error(400, "parse", "give exactly one of gamma and matrix"),
        };
        let mut s = cell.lock().unwrap();
        let Some(adjugate) = &s.adjugate else {
            return Response::error(422, "unsupported", "only polycons of three conics have a determinantal representation");
        };
        let d = match report::deformation(adjugate, &t, &s.alpha, req.check_fiber, Chart::Projective) {
            Ok(d) => d,
            Err(e) => return Response::from_core(e),
        };
        s.t = compose(&t, &s.t);
        s.adjugate = Some(d.adjugate);
        s.current = d.polycon;
        s.verdict = d.verdict;
        let mut body = d.report.body;
        body["scenario"] = json!(s.id);
        body["composed-basis-change"] = json!(basis_change_to_json(&s.t));
        drop(s);
        self.persist();
        Response::json(200, &body)
    }

    fn geometry(&self, id: &str, query: &str) -> Response {
        let Some(cell) = self.get(id) else { return Response::error(404, "not-found", format!("no scenario {id}")) };
        let p = cell.lock().unwrap().current.clone();
        let mut spec = RenderSpec::default_for(&p);
        if let Some(v) = query_param(query, "viewport") {
            match Viewport::parse(&percent_decode(v)) {
                Ok(v) => spec.viewport = v,
                Err(e) => return Response::from_core(e),
            }
        }
        if let Some(r) = query_param(query, "resolution") {
            match r.parse::<usize>() {
                Ok(r) if r >= 16 => spec.resolution = r,
                _ => return Response::error(400, "parse", "resolution must be an integer of at least 16"),
            }
        }
        if let Some(l) = query_param(query, "layers") {
            let parsed: Result<Vec<LayerKind>, _> = percent_decode(l).split(',').map(LayerKind::parse).collect();
            match parsed {
                Ok(v) => spec.layers = v,
                Err(e) => return Response::from_core(e),
            }
        }
        match geometry::scene(&p, &spec) {
            Ok(scene) => {
                let mut v = serde_json::to_value(&scene).expect("serializable");
                v["scenario"] = json!(id);
                v["viewport-exact"] = json!(spec.viewport.describe());
                Response::json(200, &v)
            }
            Err(e) => Response::from_core(e),
        }
    }

    fn report(&self, id: &str) -> Response {
        let Some(cell) = self.get(id) else { return Response::error(404, "not-found", format!("no scenario {id}")) };
        let s = cell.lock().unwrap();
        match report::full(&s.current, Chart::Projective, false) {
            Ok(r) => {
                let mut body = r.body;
                body["scenario"] = json!(s.id);
                body["basis-change"] = json!(basis_change_to_json(&s.t));
                let unchanged = compute_adjoint(&s.current, true).map(|a| a.poly.is_proportional(&s.alpha));
                body["adjoint-unchanged"] = json!(unchanged.unwrap_or(false));
                Response::json(200, &body)
            }
            Err(e) => Response::from_core(e),
        }
    }

    /// Routes one request. `path` may carry a query string.
    pub fn handle(&self, method: &str, path: &str, body: &str) -> Response {
        let (path, query) = path.split_once('?').unwrap_or((path, ""));
        let parts: Vec<&str> = path.trim_matches('/').split('/').collect();
        match (method, parts.as_slice()) {
            ("POST", ["v1", "scenario"]) => self.create(body),
            ("POST", ["v1", "scenario", id, "deform"]) => self.deform(id, body),
            ("GET", ["v1", "scenario", id, "geometry"]) => self.geometry(id, query),
            ("GET", ["v1", "scenario", id, "report"]) => self.report(id),
            ("GET", ["v1", "scenario", id]) => match self.get(id) {
                Some(s) => Response::json(200, &s.lock().unwrap().summary()),
                None => Response::error(404, "not-found", format!("no scenario {id}")),
            },
            _ => Response::error(404, "not-found", format!("no route {method} {path}")),
        }
    }
}

async fn dispatch(
    axum::extract::State(store): axum::extract::State<Arc<Store>>,
    method: axum::http::Method,
    uri: axum::http::Uri,
    body: String,
) -> axum::response::Response {
    use axum::response::IntoResponse;
    let path = uri.path_and_query().map(|p| p.as_str().to_string()).unwrap_or_default();
    let r = tokio::task::spawn_blocking(move || store.handle(method.as_str(), &path, &body)).await;
    match r {
        Ok(r) => (
            axum::http::StatusCode::from_u16(r.status).unwrap_or(axum::http::StatusCode::INTERNAL_SERVER_ERROR),
            [(axum::http::header::CONTENT_TYPE, "application/json")],
            r.body,
        )
            .into_response(),
        Err(e) => (axum::http::StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

pub fn router(store: Arc<Store>) -> axum::Router {
    axum::Router::new().fallback(dispatch).with_state(store)
}

/// Serves on `127.0.0.1:port` until interrupted.
pub fn serve(port: u16, store: Store) -> std::io::Result<()> {
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    rt.block_on(async move {
        let addr = SocketAddr::from(([127, 0, 0, 1], port));
        let listener = tokio::net::TcpListener::bind(addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(Arc::new(store))).await
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_exit_carries_its_certificate() {
        let r = Response::from_core(Error::LeavesChart("vertex 2 not identifiable".into()));
        assert_eq!(r.status, 422);
        let v: Value = serde_json::from_str(&r.body).unwrap();
        assert_eq!(v["error"]["kind"], "leaves-chart");
        assert_eq!(v["error"]["certificate"], "vertex 2 not identifiable");
    }

    #[test]
    fn query_parameters_decode() {
        assert_eq!(query_param("a=1&viewport=0%2C1", "viewport"), Some("0%2C1"));
        assert_eq!(percent_decode("-1%2F2,3"), "-1/2,3");
        assert_eq!(query_param("viewports=1", "viewport"), None);
    }
}
