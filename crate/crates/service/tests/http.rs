use std::io::{Read, Write};
use std::sync::Arc;

use adjugate_core::io::COUNTEREXAMPLE_JSON;
use adjugate_service::{router, Store};

fn request(addr: std::net::SocketAddr, method: &str, path: &str, body: &str) -> (u16, String) {
    let mut s = std::net::TcpStream::connect(addr).unwrap();
    write!(
        s,
        "{method} {path} HTTP/1.1\r\nHost: localhost\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
    let mut out = String::new();
    s.read_to_string(&mut out).unwrap();
    let status = out.split(' ').nth(1).unwrap().parse().unwrap();
    let body = out.split_once("\r\n\r\n").unwrap().1.to_string();
    (status, body)
}

#[test]
fn routes_over_a_socket() {
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build().unwrap();
    let listener = rt.block_on(tokio::net::TcpListener::bind("127.0.0.1:0")).unwrap();
    let addr = listener.local_addr().unwrap();
    rt.spawn(async move { axum::serve(listener, router(Arc::new(Store::new()))).await });

    let (status, body) = request(addr, "POST", "/v1/scenario", COUNTEREXAMPLE_JSON);
    assert_eq!(status, 201);
    let id = serde_json::from_str::<serde_json::Value>(&body).unwrap()["scenario"].as_str().unwrap().to_string();
    let (status, body) = request(addr, "POST", &format!("/v1/scenario/{id}/deform"), r#"{"gamma":"1/10"}"#);
    assert_eq!(status, 200, "{body}");
    assert!(body.contains("\"adjoint-unchanged\""));
    let (status, _) = request(addr, "GET", "/v1/scenario/missing/report", "");
    assert_eq!(status, 404);
}
