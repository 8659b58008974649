//! Lookups against a one-shot local HTTP server with canned responses.

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::thread;
use std::time::Duration;

use permprob_core::oeis::{OeisClient, OeisError};

const FOUND: &str = "# Greetings from The On-Line Encyclopedia of Integer Sequences!\n\
Search: seq:1,2,9,44,265\n\
Showing 1-2 of 2\n\
\n\
%I A000166 M1937 N0766\n\
%S A000166 1,0,1,2,9,44,265,1854,14833\n\
%N A000166 Subfactorial or rencontres numbers, or derangements.\n\
\n\
%I A000240\n\
%S A000240 1,0,3,8,45,264,2119\n";

/// Serves one request and returns the base URL plus a handle yielding the request line.
fn serve_once(status: &'static str, body: &'static str) -> (String, thread::JoinHandle<String>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let handle = thread::spawn(move || {
        let (stream, _) = listener.accept().unwrap();
        let mut reader = BufReader::new(stream.try_clone().unwrap());
        let mut request_line = String::new();
        reader.read_line(&mut request_line).unwrap();
        let mut header = String::new();
        while reader.read_line(&mut header).unwrap() > 2 {
            header.clear();
        }
        let mut stream = stream;
        write!(
            stream,
            "HTTP/1.1 {status}\r\nContent-Type: text/plain\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
            body.len()
        )
        .unwrap();
        request_line
    });
    (base, handle)
}

fn client(base: &str) -> OeisClient {
    OeisClient::new(base, Duration::from_secs(5))
}

#[test]
fn found_sequences_are_listed() {
    let (base, server) = serve_once("200 OK", FOUND);
    let ids = client(&base).lookup(&[1u32, 2, 9, 44, 265]).unwrap();
    assert_eq!(ids, ["A000166", "A000240"]);
    let request = server.join().unwrap();
    assert!(request.starts_with("GET /search?"), "{request}");
    assert!(
        request.contains("q=1%2C2%2C9%2C44%2C265") || request.contains("q=1,2,9,44,265"),
        "{request}"
    );
    assert!(request.contains("fmt=text"), "{request}");
}

#[test]
fn no_match_is_empty() {
    let (base, server) = serve_once("200 OK", "Search: seq:7,7,7,7\nNo results.\n");
    assert!(client(&base).lookup(&[7, 7, 7, 7]).unwrap().is_empty());
    server.join().unwrap();
}

#[test]
fn garbage_body_is_malformed() {
    let (base, server) = serve_once("200 OK", "<html>maintenance</html>");
    let err = client(&base).lookup(&[1, 2, 3, 4]).unwrap_err();
    assert!(matches!(err, OeisError::Malformed(_)), "{err}");
    assert!(!err.is_soft());
    server.join().unwrap();
}

#[test]
fn http_error_status_is_reported() {
    let (base, server) = serve_once("503 Service Unavailable", "busy");
    let err = client(&base).lookup(&[1, 2, 3, 4]).unwrap_err();
    assert!(matches!(err, OeisError::Status(503)), "{err}");
    server.join().unwrap();
}

#[test]
fn refused_connection_is_soft() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let err = client(&format!("http://127.0.0.1:{port}"))
        .lookup(&[1, 2, 3, 4])
        .unwrap_err();
    assert!(err.is_soft(), "{err}");
}

#[test]
fn short_prefix_is_rejected_without_a_request() {
    let err = client("http://127.0.0.1:1").lookup(&[1, 2, 3]).unwrap_err();
    assert!(matches!(err, OeisError::PrefixTooShort(3)));
}
