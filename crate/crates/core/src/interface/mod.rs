//! One request handler behind the CLI, the HTTP service and the C ABI.
//!
//! A request is an operation name plus string parameters, exactly as they
//! arrive in a query string. [`handle`] returns the JSON body, and
//! [`render`] turns it into the bytes that every front end emits, so the
//! same query gives the same output everywhere.

pub mod json;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cark::{expand_cark, path_on_spine, revolve_around_spine, spine_signature};
use crate::error::Error;
use crate::geometry::{geodesic_of_element, geodesic_of_form, sample_geodesic, Model};
use crate::modular_group::{
    letters_to_string, matrix_to_word, parse_letters, word_to_matrix, GroupElement, Word,
};
use crate::quadratic_forms::{form_of_element, FormKind, QuadForm};
use crate::reduction::{cark_reduce_path, gauss_reduce, lagrange_reduce, ReductionPath};
use crate::representation::{automorph, enumerate_solutions, solve_definite, solve_form_report};
use crate::sunburst::{max_depth, recenter, DEFAULT_DEPTH};

/// Every operation name understood by [`handle`].
pub const OPERATIONS: &[&str] = &[
    "classify",
    "form-of",
    "reduce",
    "spine",
    "signature",
    "path-on-spine",
    "solve",
    "geodesic",
    "sunburst",
    "cark",
];

pub const DEFAULT_SAMPLES: usize = 64;
pub const MAX_SAMPLES: usize = 100_000;
pub const MAX_COUNT: usize = 10_000;
pub const DEFAULT_CARK_DEPTH: usize = 2;

pub type Params = BTreeMap<String, String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed request: HTTP 400, exit status 2.
    Usage,
    /// Well-formed request outside an operation's domain: HTTP 422, exit 1.
    Domain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub kind: ErrorKind,
    pub code: String,
    pub message: String,
}

impl ApiError {
    pub fn usage(message: impl Into<String>) -> Self {
        ApiError {
            kind: ErrorKind::Usage,
            code: "usage".into(),
            message: message.into(),
        }
    }

    pub fn http_status(&self) -> u16 {
        match self.kind {
            ErrorKind::Usage => 400,
            ErrorKind::Domain => 422,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Usage => 2,
            ErrorKind::Domain => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "code": self.code, "message": self.message })
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError {
            kind: ErrorKind::Domain,
            code: e.code().into(),
            message: e.to_string(),
        }
    }
}

pub type ApiResult = std::result::Result<Value, ApiError>;

/// The exact bytes written for a response body.
pub fn render(v: &Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

/// Runs a request and renders either the result or the error body.
pub fn respond(op: &str, params: &Params) -> (std::result::Result<(), ApiError>, String) {
    match handle(op, params) {
        Ok(v) => (Ok(()), render(&v)),
        Err(e) => {
            let body = render(&e.to_json());
            (Err(e), body)
        }
    }
}

fn required<'a>(params: &'a Params, key: &str) -> std::result::Result<&'a str, ApiError> {
    params
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| ApiError::usage(format!("missing parameter '{key}'")))
}

pub fn parse_form(text: &str) -> std::result::Result<QuadForm, ApiError> {
    text.parse::<QuadForm>()
        .map_err(|_| ApiError::usage(format!("expected a form 'a,b,c', got {text:?}")))
}

fn parse_int(text: &str, what: &str) -> std::result::Result<BigInt, ApiError> {
    text.trim()
        .parse::<BigInt>()
        .map_err(|_| ApiError::usage(format!("expected an integer for {what}, got {text:?}")))
}

fn parse_usize(params: &Params, key: &str, default: usize) -> std::result::Result<usize, ApiError> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v.trim().parse::<usize>().map_err(|_| {
            ApiError::usage(format!(
                "expected a non-negative integer for {key}, got {v:?}"
            ))
        }),
    }
}

/// A group element given as `p,q,r,s` or as a word such as `LSLLS`.
pub fn parse_element(text: &str) -> std::result::Result<GroupElement, ApiError> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    if t.contains(',') || t.contains(';') {
        let parts: Vec<&str> = t.split([',', ';']).map(str::trim).collect();
        if parts.len() != 4 {
            return Err(ApiError::usage(format!(
                "expected a matrix 'p,q,r,s', got {text:?}"
            )));
        }
        let mut v = Vec::with_capacity(4);
        for p in parts {
            v.push(parse_int(p, "a matrix entry")?);
        }
        let [p, q, r, s]: [BigInt; 4] = v.try_into().expect("four entries");
        return Ok(GroupElement::new(p, q, r, s)?);
    }
    Ok(word_to_matrix(&parse_word_letters(t)?))
}

fn parse_word_letters(
    text: &str,
) -> std::result::Result<Vec<crate::modular_group::Letter>, ApiError> {
    let t = text.trim();
    if t.is_empty() || t == "I" || t == "e" {
        return Ok(Vec::new());
    }
    parse_letters(t)
        .map_err(|_| ApiError::usage(format!("expected a word over S, L, got {text:?}")))
}

fn parse_word(text: &str) -> std::result::Result<Word, ApiError> {
    Ok(matrix_to_word(&word_to_matrix(&parse_word_letters(text)?)))
}

fn parse_model(text: Option<&String>) -> std::result::Result<Model, ApiError> {
    match text.map(|s| s.trim()) {
        None | Some("h") | Some("H") | Some("half-plane") => Ok(Model::HalfPlane),
        Some("disk") | Some("d") | Some("D") => Ok(Model::Disk),
        Some(other) => Err(ApiError::usage(format!(
            "unknown model {other:?}, use h or disk"
        ))),
    }
}

fn check_depth(depth: usize) -> std::result::Result<(), ApiError> {
    let max = max_depth();
    if depth > max {
        return Err(Error::DepthExceeded { depth, max }.into());
    }
    Ok(())
}

/// Dispatches one request.
pub fn handle(op: &str, params: &Params) -> ApiResult {
    match op {
        "classify" => classify(params),
        "form-of" => form_of(params),
        "reduce" => reduce(params),
        "spine" => spine(params),
        "signature" => signature(params),
        "path-on-spine" => spine_path(params),
        "solve" => solve(params),
        "geodesic" => geodesic(params),
        "sunburst" => sunburst(params),
        "cark" => cark(params),
        _ => Err(ApiError::usage(format!(
            "unknown operation {op:?}; expected one of {}",
            OPERATIONS.join(", ")
        ))),
    }
}

fn classify(params: &Params) -> ApiResult {
    if let Some(text) = params.get("form") {
        let f = parse_form(text)?;
        return Ok(json!({ "class": f.classify().as_str() }));
    }
    let m = parse_element(required(params, "element")?)?;
    Ok(json!({ "class": m.classify().as_str() }))
}

fn form_of(params: &Params) -> ApiResult {
    let m = parse_element(required(params, "element")?)?;
    let f = form_of_element(&m)?;
    Ok(json!({
        "form": json::form(&f),
        "element": json::element(&m),
        "word": json::word(&m.to_word()),
        "discriminant": json::int(&f.discriminant()),
    }))
}

fn reduction_json(path: &ReductionPath, letters: String) -> Value {
    json!({
        "start": json::form(&path.start),
        "end": json::form(&path.end),
        "letters": letters,
        "matrix": json::element(&path.total_matrix),
        "steps": path.steps.iter().map(|s| json::form(&s.form)).collect::<Vec<_>>(),
    })
}

fn reduce(params: &Params) -> ApiResult {
    let f = parse_form(required(params, "form")?)?;
    let method = params.get("method").map(String::as_str).unwrap_or("gauss");
    let path = match method {
        "gauss" => gauss_reduce(&f)?,
        "cark" => {
            let path = cark_reduce_path(&f)?;
            let letters = letters_to_string(&path.letters());
            return Ok(reduction_json(&path, letters));
        }
        "lagrange" => lagrange_reduce(&f)?,
        other => {
            return Err(ApiError::usage(format!(
                "unknown method {other:?}, use gauss, cark or lagrange"
            )))
        }
    };
    let letters = matrix_to_word(&path.total_matrix).to_string();
    Ok(reduction_json(&path, letters))
}

fn spine(params: &Params) -> ApiResult {
    let f = parse_form(required(params, "form")?)?;
    let cycle = revolve_around_spine(&f)?;
    Ok(json::spine(&cycle, &spine_signature(&cycle)))
}

fn signature(params: &Params) -> ApiResult {
    let f = parse_form(required(params, "form")?)?;
    let cycle = revolve_around_spine(&f)?;
    Ok(json!({
        "signature": spine_signature(&cycle).to_string(),
        "turns": cycle.turns.to_string(),
    }))
}

fn spine_path(params: &Params) -> ApiResult {
    let from = parse_form(required(params, "from")?)?;
    let to = parse_form(required(params, "to")?)?;
    let w = path_on_spine(&from, &to)?;
    Ok(json!({ "word": json::word(&w), "matrix": json::element(&w.to_matrix()) }))
}

fn solve(params: &Params) -> ApiResult {
    let f = parse_form(required(params, "form")?)?;
    let n = parse_int(required(params, "n")?, "n")?;
    let count = parse_usize(params, "count", 1)?;
    if count == 0 || count > MAX_COUNT {
        return Err(ApiError::usage(format!(
            "count must lie in 1..={MAX_COUNT}"
        )));
    }
    if matches!(
        f.classify(),
        FormKind::PositiveDefinite | FormKind::NegativeDefinite
    ) {
        let all = solve_definite(&f, &n)?;
        return Ok(json!({ "solutions": all.iter().map(json::solution).collect::<Vec<_>>() }));
    }
    let report = solve_form_report(&f, &n)?;
    if report.solution.is_none() {
        return Ok(json!({ "solutions": [] }));
    }
    let solutions = enumerate_solutions(&f, &n, count)?;
    Ok(json!({
        "solutions": solutions.iter().map(json::solution).collect::<Vec<_>>(),
        "automorph": json::element(&automorph(&f)?),
        "path_letters": report.path_string(),
    }))
}

fn geodesic(params: &Params) -> ApiResult {
    let model = parse_model(params.get("model"))?;
    let samples = parse_usize(params, "samples", DEFAULT_SAMPLES)?;
    if samples > MAX_SAMPLES {
        return Err(ApiError::usage(format!(
            "samples must be at most {MAX_SAMPLES}"
        )));
    }
    let g = match (params.get("form"), params.get("element")) {
        (Some(text), _) => geodesic_of_form(&parse_form(text)?)?,
        (None, Some(text)) => geodesic_of_element(&parse_element(text)?)?,
        (None, None) => return Err(ApiError::usage("missing parameter 'form' or 'element'")),
    };
    let points = sample_geodesic(&g, samples, model)?;
    Ok(json::geodesic(&g, model, &points))
}

fn sunburst(params: &Params) -> ApiResult {
    let depth = parse_usize(params, "depth", DEFAULT_DEPTH)?;
    let center = parse_word(params.get("center").map(String::as_str).unwrap_or(""))?;
    check_depth(depth)?;
    Ok(json::layout(&recenter(&center, depth)?))
}

fn cark(params: &Params) -> ApiResult {
    let f = parse_form(required(params, "form")?)?;
    let depth = parse_usize(params, "depth", DEFAULT_CARK_DEPTH)?;
    check_depth(depth)?;
    Ok(json::cark(&expand_cark(&f, depth)?))
}
