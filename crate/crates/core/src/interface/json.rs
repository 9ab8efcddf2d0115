//! JSON encodings shared by the CLI, the HTTP service and the C ABI.
//!
//! Integers travel as decimal strings so that large coefficients survive
//! consumers that read JSON numbers as doubles. Plot coordinates are plain
//! numbers.

use num_bigint::BigInt;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::cark::{CarkGraph, Signature, SpineCycle};
use crate::geometry::{geodesic_to_disk, DiskShape, Geodesic, Model};
use crate::modular_group::{GroupElement, Word};
use crate::quadratic_forms::QuadForm;
use crate::representation::Solution;
use crate::sunburst::Layout;

pub fn int(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn form(f: &QuadForm) -> Value {
    json!({ "a": int(&f.a), "b": int(&f.b), "c": int(&f.c) })
}

pub fn element(m: &GroupElement) -> Value {
    let [p, q, r, s] = m.entries();
    json!({ "p": int(p), "q": int(q), "r": int(r), "s": int(s) })
}

pub fn word(w: &Word) -> Value {
    Value::String(w.to_string())
}

pub fn solution(s: &Solution) -> Value {
    json!([int(&s.x), int(&s.y)])
}

pub fn point(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn spine(cycle: &SpineCycle, signature: &Signature) -> Value {
    json!({
        "forms": cycle.forms.iter().map(form).collect::<Vec<_>>(),
        "turns": cycle.turns.to_string(),
        "signature": signature.to_string(),
        "base_index": cycle.base_index,
    })
}

pub fn cark(graph: &CarkGraph) -> Value {
    let nodes: Vec<Value> = graph
        .nodes
        .iter()
        .map(|n| json!({ "id": n.id, "kind": n.kind.as_str() }))
        .collect();
    let edges: Vec<Value> = graph
        .edges
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "from": e.from,
                "to": e.to,
                "form": form(&e.form),
                "on_spine": e.on_spine,
                "depth": e.depth,
                "marked": e.marked,
            })
        })
        .collect();
    json!({ "nodes": nodes, "edges": edges, "signature": graph.signature.to_string() })
}

/// Plot payload for a geodesic plus its exact description.
pub fn geodesic(g: &Geodesic, model: Model, samples: &[Complex64]) -> Value {
    let exact = json!({
        "center": g.center.to_string(),
        "radius_squared": g.radius_squared.to_string(),
        "endpoints": [g.endpoints.0.to_string(), g.endpoints.1.to_string()],
    });
    let (center, radius, endpoints) = match model {
        Model::HalfPlane => {
            let (lo, hi) = g.endpoints_f64();
            (
                json!([g.center_f64(), 0.0]),
                json!(g.radius_f64()),
                json!([[lo, 0.0], [hi, 0.0]]),
            )
        }
        Model::Disk => {
            let disk = geodesic_to_disk(g);
            let ends = json!([point(disk.endpoints.0), point(disk.endpoints.1)]);
            match disk.shape {
                DiskShape::Circle { center, radius } => (point(center), json!(radius), ends),
                DiskShape::Diameter => (Value::Null, Value::Null, ends),
            }
        }
    };
    json!({
        "model": model.as_str(),
        "center": center,
        "radius": radius,
        "endpoints": endpoints,
        "samples": samples.iter().map(|z| point(*z)).collect::<Vec<_>>(),
        "exact": exact,
    })
}

pub fn layout(l: &Layout) -> Value {
    let cells: Vec<Value> = l
        .cells
        .iter()
        .map(|c| {
            json!({
                "word": word(&c.word),
                "annulus": c.annulus,
                "a0": c.angle_start(),
                "a1": c.angle_end(),
                "parent": c.parent.map(|p| word(&l.cells[p].word)),
            })
        })
        .collect();
    json!({ "cells": cells, "depth": l.depth, "center": word(&l.center) })
}
