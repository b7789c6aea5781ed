//! Serves the HTTP API on 127.0.0.1, port from the first argument (default 8080).
//!
//!     cargo run --example api_server 8080
//!     curl -X POST localhost:8080/fabrics -d '{"n": 3}'

fn main() -> std::io::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let port = std::env::args().nth(1).and_then(|p| p.parse().ok()).unwrap_or(8080);
    rpga::server::serve(port)
}
