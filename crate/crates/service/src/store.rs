//! In-memory sessions: a current diagram, its undo stack and a window.

use std::collections::HashMap;
use std::sync::{Arc as Shared, RwLock};

use infgon::arcs::Arc;
use infgon::diagram::{ArcDiagram, DiagramError, ValidationReport};
use infgon::mutation::{enumerate_mutations, mutate, MutationError, MutationOption};
use infgon::presets::{t_ell_diagram, try_canonical_fountain, try_zigzag, PresetError};
use serde::{Deserialize, Serialize};

use crate::error::{ErrorCode, ServiceError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum PresetDescriptor {
    #[serde(rename = "fountain")]
    Fountain {
        d: i64,
        #[serde(default)]
        anchor: i64,
    },
    #[serde(rename = "zigzag")]
    Zigzag { d: i64 },
    #[serde(rename = "theoremB")]
    TEll { d: i64, ell: i64 },
}

impl PresetDescriptor {
    pub fn build(&self) -> Result<ArcDiagram, PresetError> {
        match *self {
            PresetDescriptor::Fountain { d, anchor } => try_canonical_fountain(d, anchor),
            PresetDescriptor::Zigzag { d } => try_zigzag(d),
            PresetDescriptor::TEll { d, ell } => t_ell_diagram(d, ell),
        }
    }
}

/// Body of `POST /sessions`: exactly one of `preset` and `diagram`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateRequest {
    #[serde(default)]
    pub preset: Option<PresetDescriptor>,
    #[serde(default)]
    pub diagram: Option<serde_json::Value>,
    #[serde(default)]
    pub window: Option<[i64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcOptions {
    pub arc: Arc,
    /// `null` when the options cannot be determined.
    pub options: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionState {
    pub id: String,
    pub diagram: ArcDiagram,
    pub report: ValidationReport,
    pub window: [i64; 2],
    pub arcs: Vec<ArcOptions>,
    pub undo_depth: usize,
}

#[derive(Debug, Clone)]
struct Session {
    current: ArcDiagram,
    window: (i64, i64),
    /// Earlier diagrams with the windows they were shown on.
    history: Vec<(ArcDiagram, (i64, i64))>,
}

/// Sessions keyed by id. A session's lock serializes its writers and lets
/// readers share.
#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Shared<RwLock<Session>>>>,
}

/// Widest window a session will validate; validation is quadratic in the span.
pub const MAX_WINDOW_SPAN: i64 = 4096;

fn check_span(window: (i64, i64)) -> Result<(), ServiceError> {
    if window.1.saturating_sub(window.0) > MAX_WINDOW_SPAN {
        return Err(ServiceError::new(
            ErrorCode::BadRequest,
            format!("window [{},{}] is wider than {MAX_WINDOW_SPAN}", window.0, window.1),
        ));
    }
    Ok(())
}

fn default_window(diagram: &ArcDiagram) -> (i64, i64) {
    let (lo, hi) = diagram.min_window();
    let pad = 2 * (diagram.d() + 1);
    (lo - pad, hi + pad)
}

/// Grows `window` to cover the diagram's minimum window if needed.
fn fitted_window(diagram: &ArcDiagram, window: (i64, i64)) -> (i64, i64) {
    let (lo, hi) = diagram.min_window();
    (window.0.min(lo), window.1.max(hi))
}

fn verified_report(diagram: &ArcDiagram, window: (i64, i64)) -> Result<ValidationReport, ServiceError> {
    let report = diagram.validate(window.0, window.1).map_err(ServiceError::from)?;
    if !report.weakly_cluster_tilting {
        return Err(ServiceError::new(
            ErrorCode::InvalidUpload,
            format!("diagram is not a (d+2)-angulation on [{},{}]", window.0, window.1),
        ));
    }
    Ok(report)
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    fn session(&self, id: &str) -> Result<Shared<RwLock<Session>>, ServiceError> {
        self.sessions
            .read()
            .expect("session map lock poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::new(ErrorCode::UnknownSession, format!("no session {id}")))
    }

    pub fn create(&self, request: CreateRequest) -> Result<SessionState, ServiceError> {
        let diagram = match (request.preset, request.diagram) {
            (Some(p), None) => p.build().map_err(|e| ServiceError::new(ErrorCode::BadRequest, e.to_string()))?,
            (None, Some(value)) => serde_json::from_value::<ArcDiagram>(value)
                .map_err(|e| ServiceError::new(ErrorCode::InvalidUpload, e.to_string()))?,
            _ => {
                return Err(ServiceError::new(ErrorCode::BadRequest, "give exactly one of `preset` and `diagram`"));
            }
        };
        let window = match request.window {
            Some([lo, hi]) => {
                diagram.check_window(lo, hi).map_err(ServiceError::from)?;
                (lo, hi)
            }
            None => default_window(&diagram),
        };
        check_span(window)?;
        verified_report(&diagram, window)?;
        let id = uuid::Uuid::new_v4().to_string();
        let session = Session { current: diagram, history: Vec::new(), window };
        self.sessions
            .write()
            .expect("session map lock poisoned")
            .insert(id.clone(), Shared::new(RwLock::new(session)));
        self.state(&id)
    }

    pub fn state(&self, id: &str) -> Result<SessionState, ServiceError> {
        let handle = self.session(id)?;
        let session = handle.read().expect("session lock poisoned");
        Self::describe(id, &session)
    }

    fn describe(id: &str, session: &Session) -> Result<SessionState, ServiceError> {
        let (lo, hi) = session.window;
        let report = session.current.validate(lo, hi).map_err(ServiceError::from)?;
        let arcs = session
            .current
            .arcs_within(lo, hi)
            .into_iter()
            .map(|arc| ArcOptions { arc, options: enumerate_mutations(&session.current, arc).ok().map(|o| o.len()) })
            .collect();
        Ok(SessionState {
            id: id.to_string(),
            diagram: session.current.clone(),
            report,
            window: [lo, hi],
            arcs,
            undo_depth: session.history.len(),
        })
    }

    pub fn options(&self, id: &str, arc: Arc) -> Result<Vec<MutationOption>, ServiceError> {
        let handle = self.session(id)?;
        let session = handle.read().expect("session lock poisoned");
        enumerate_mutations(&session.current, arc).map_err(ServiceError::from)
    }

    pub fn apply(&self, id: &str, option: MutationOption) -> Result<SessionState, ServiceError> {
        let handle = self.session(id)?;
        let mut session = handle.write().expect("session lock poisoned");
        let next = mutate(&session.current, option).map_err(ServiceError::from)?;
        let window = fitted_window(&next, session.window);
        check_span(window)?;
        verified_report(&next, window)?;
        let previous = std::mem::replace(&mut session.current, next);
        let previous_window = std::mem::replace(&mut session.window, window);
        session.history.push((previous, previous_window));
        Self::describe(id, &session)
    }

    pub fn undo(&self, id: &str) -> Result<SessionState, ServiceError> {
        let handle = self.session(id)?;
        let mut session = handle.write().expect("session lock poisoned");
        let previous = session
            .history
            .pop()
            .ok_or_else(|| ServiceError::new(ErrorCode::NothingToUndo, "history is empty"))?;
        (session.current, session.window) = previous;
        Self::describe(id, &session)
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session map lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<DiagramError> for ServiceError {
    fn from(e: DiagramError) -> Self {
        let code = match &e {
            DiagramError::WindowTooSmall { .. } => ErrorCode::WindowTooSmall,
            DiagramError::EmptyWindow { .. } | DiagramError::WindowOutOfRange { .. } => ErrorCode::BadRequest,
            _ => ErrorCode::InvalidUpload,
        };
        ServiceError::new(code, e.to_string())
    }
}

impl From<MutationError> for ServiceError {
    fn from(e: MutationError) -> Self {
        let code = match &e {
            MutationError::StaleOption(_) => ErrorCode::StaleOption,
            MutationError::InvalidOption { .. } => ErrorCode::InvalidOption,
            MutationError::NotPresent(_) | MutationError::InvalidSteps(_) => ErrorCode::BadRequest,
            MutationError::NotVerified { .. } => ErrorCode::NotVerified,
            MutationError::Diagram(d) => return d.clone().into(),
        };
        ServiceError::new(code, e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(t: i64, u: i64) -> Arc {
        Arc::new(t, u).unwrap()
    }

    fn preset(p: PresetDescriptor) -> CreateRequest {
        CreateRequest { preset: Some(p), ..Default::default() }
    }

    #[test]
    fn t_ell_session_has_one_option() {
        let store = SessionStore::new();
        let s = store.create(preset(PresetDescriptor::TEll { d: 3, ell: 1 })).unwrap();
        assert!(s.report.weakly_cluster_tilting);
        let opts = store.options(&s.id, arc(0, 4)).unwrap();
        assert_eq!(opts, vec![MutationOption { removed: arc(0, 4), added: arc(1, 5) }]);
    }

    #[test]
    fn apply_then_undo_restores_state() {
        let store = SessionStore::new();
        let s = store.create(preset(PresetDescriptor::Fountain { d: 2, anchor: 0 })).unwrap();
        let before = serde_json::to_string(&s).unwrap();
        let opts = store.options(&s.id, arc(0, 3)).unwrap();
        assert_eq!(opts.len(), 2);
        let after = store.apply(&s.id, opts[0]).unwrap();
        assert!(after.report.weakly_cluster_tilting);
        assert_eq!(after.undo_depth, 1);
        let err = store.apply(&s.id, opts[1]).unwrap_err();
        assert_eq!(err.code, ErrorCode::StaleOption);
        let undone = store.undo(&s.id).unwrap();
        assert_eq!(serde_json::to_string(&undone).unwrap(), before);
        assert_eq!(store.undo(&s.id).unwrap_err().code, ErrorCode::NothingToUndo);
    }

    #[test]
    fn arc_counts_match_option_lists() {
        let store = SessionStore::new();
        let s = store.create(preset(PresetDescriptor::Zigzag { d: 2 })).unwrap();
        assert!(!s.arcs.is_empty());
        for a in &s.arcs {
            assert_eq!(a.options, Some(store.options(&s.id, a.arc).unwrap().len()));
        }
    }

    #[test]
    fn creation_errors() {
        let store = SessionStore::new();
        let both = CreateRequest {
            preset: Some(PresetDescriptor::Zigzag { d: 1 }),
            diagram: Some(serde_json::json!({})),
            window: None,
        };
        assert_eq!(store.create(both).unwrap_err().code, ErrorCode::BadRequest);
        let bad = CreateRequest { diagram: Some(serde_json::json!({"d": 2, "core": [[0, 4]]})), ..Default::default() };
        assert_eq!(store.create(bad).unwrap_err().code, ErrorCode::InvalidUpload);
        let sparse = CreateRequest { diagram: Some(serde_json::json!({"d": 2, "core": [[0, 3]]})), ..Default::default() };
        assert_eq!(store.create(sparse).unwrap_err().code, ErrorCode::InvalidUpload);
        let small = CreateRequest { window: Some([0, 1]), ..preset(PresetDescriptor::Fountain { d: 2, anchor: 0 }) };
        assert_eq!(store.create(small).unwrap_err().code, ErrorCode::WindowTooSmall);
        let wide = CreateRequest { window: Some([-5000, 5000]), ..preset(PresetDescriptor::Zigzag { d: 1 }) };
        assert_eq!(store.create(wide).unwrap_err().code, ErrorCode::BadRequest);
        let huge_d = preset(PresetDescriptor::Fountain { d: 1 << 20, anchor: 0 });
        assert_eq!(store.create(huge_d).unwrap_err().code, ErrorCode::BadRequest);
        assert_eq!(store.state("nope").unwrap_err().code, ErrorCode::UnknownSession);
        assert!(store.is_empty());
    }
}
