use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use infgon_service::{router, SessionStore};
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let body = body.map_or_else(Body::empty, |v| Body::from(v.to_string()));
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body)
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

fn app() -> Router {
    router(Arc::new(SessionStore::new()))
}

#[tokio::test]
async fn t_ell_session_lists_one_option() {
    let app = app();
    let (status, state) = call(&app, "POST", "/sessions", Some(json!({"preset": {"kind": "theoremB", "d": 3, "ell": 1}}))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(state["report"]["weakly_cluster_tilting"], json!(true));
    assert_eq!(state["report"]["cluster_tilting"], json!(false));
    let id = state["id"].as_str().unwrap();
    let (status, options) = call(&app, "GET", &format!("/sessions/{id}/options?arc=0,4"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(options, json!([{"removed": [0, 4], "added": [1, 5]}]));
}

#[tokio::test]
async fn apply_and_undo_round_trip() {
    let app = app();
    let (_, created) = call(&app, "POST", "/sessions", Some(json!({"preset": {"kind": "fountain", "d": 2}}))).await;
    let id = created["id"].as_str().unwrap().to_string();
    let (_, options) = call(&app, "GET", &format!("/sessions/{id}/options?arc=(0,3)"), None).await;
    assert_eq!(options.as_array().unwrap().len(), 2);

    let (status, applied) = call(&app, "POST", &format!("/sessions/{id}/apply"), Some(options[0].clone())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(applied["report"]["weakly_cluster_tilting"], json!(true));
    assert_eq!(applied["undo_depth"], json!(1));
    for entry in applied["arcs"].as_array().unwrap() {
        let arc = &entry["arc"];
        let uri = format!("/sessions/{id}/options?arc={},{}", arc[0], arc[1]);
        let (_, listed) = call(&app, "GET", &uri, None).await;
        assert_eq!(entry["options"], json!(listed.as_array().unwrap().len()));
    }

    let (status, stale) = call(&app, "POST", &format!("/sessions/{id}/apply"), Some(options[1].clone())).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(stale["error"]["code"], json!("stale_option"));

    let (_, undone) = call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(undone, created);
    let (status, err) = call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"]["code"], json!("nothing_to_undo"));
}

#[tokio::test]
async fn uploaded_diagram_session() {
    let app = app();
    let diagram = json!({
        "d": 1,
        "core": [],
        "left_tail": {"kind": "periodic", "motif": [[-1, 2]], "period": 1, "direction": "outward"},
        "right_tail": {"kind": "periodic", "motif": [[0, 2]], "period": 1, "direction": "outward"}
    });
    let (status, state) = call(&app, "POST", "/sessions", Some(json!({"diagram": diagram, "window": [-8, 8]}))).await;
    assert_eq!(status, StatusCode::CREATED, "{state}");
    assert_eq!(state["window"], json!([-8, 8]));
    assert!(state["arcs"].as_array().unwrap().iter().all(|a| a["options"] == json!(1)));
}

#[tokio::test]
async fn structured_errors() {
    let app = app();
    let cases = [
        ("GET", "/sessions/missing".to_string(), None, StatusCode::NOT_FOUND, "unknown_session"),
        ("POST", "/sessions".to_string(), Some(json!({"diagram": {"d": 2, "core": [[0, 4]]}})), StatusCode::UNPROCESSABLE_ENTITY, "invalid_upload"),
        ("POST", "/sessions".to_string(), Some(json!({"bogus": 1})), StatusCode::BAD_REQUEST, "bad_request"),
        ("POST", "/sessions".to_string(), Some(json!({"preset": {"kind": "fountain", "d": 2}, "window": [0, 2]})), StatusCode::UNPROCESSABLE_ENTITY, "window_too_small"),
        ("GET", "/nowhere".to_string(), None, StatusCode::BAD_REQUEST, "bad_request"),
    ];
    for (method, uri, body, status, code) in cases {
        let (got, err) = call(&app, method, &uri, body).await;
        assert_eq!(got, status, "{uri}: {err}");
        assert_eq!(err["error"]["code"], json!(code));
        assert!(err["error"]["message"].is_string());
    }

    let (_, created) = call(&app, "POST", "/sessions", Some(json!({"preset": {"kind": "zigzag", "d": 2}}))).await;
    let id = created["id"].as_str().unwrap();
    let (status, err) = call(&app, "GET", &format!("/sessions/{id}/options?arc=zz"), None).await;
    assert_eq!((status, &err["error"]["code"]), (StatusCode::BAD_REQUEST, &json!("bad_request")));
    let (status, err) = call(&app, "POST", &format!("/sessions/{id}/apply"), Some(json!({"removed": [0, 3], "added": [9, 12]}))).await;
    assert_eq!((status, &err["error"]["code"]), (StatusCode::UNPROCESSABLE_ENTITY, &json!("invalid_option")));
}
