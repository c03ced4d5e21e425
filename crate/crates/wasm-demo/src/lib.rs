//! Browser bindings for a few `grzh-core` operations. Every export returns a
//! JSON string; the `*_json` functions hold the logic so they can be tested
//! natively.

use grzh_core::extremal::{alpha_bounds, clique_number};
use grzh_core::matrix::{inner_rank, mccoy_rank, normal_form as smith_form};
use grzh_core::subspace::{count_subspaces, dual};
use grzh_core::{GraphSpec, MatrixZh, RingContext, Subspace};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

// Keep the page responsive: local brute force only on tiny graphs.
const LOCAL_VERTEX_CAP: u64 = 64;
const NODE_BUDGET: u64 = 100_000;
const MAX_MODULUS: u64 = 1 << 20;
const MAX_DIM: usize = 12;

fn big(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn ring(h: u64) -> Result<RingContext, String> {
    if h > MAX_MODULUS {
        return Err(format!("modulus {h} is too large for the demo (max {MAX_MODULUS})"));
    }
    RingContext::new(h).map_err(|e| e.to_string())
}

fn factor_list(ctx: &RingContext) -> Value {
    ctx.factors().iter().map(|f| json!({ "p": f.prime, "s": f.exponent })).collect()
}

pub fn graph_stats_json(h: u64, n: usize, m: usize, r: usize) -> Result<String, String> {
    if n > MAX_DIM {
        return Err(format!("n = {n} is too large for the demo (max {MAX_DIM})"));
    }
    let ctx = ring(h)?;
    let spec = GraphSpec::new(ctx.clone(), n, m, r).map_err(|e| e.to_string())?;
    let bounds = alpha_bounds(&spec, None, LOCAL_VERTEX_CAP, Some(NODE_BUDGET)).map_err(|e| e.to_string())?;
    let report = json!({
        "h": h,
        "n": n,
        "m": m,
        "r": r,
        "factors": factor_list(&ctx),
        "vertices": big(&spec.vertex_count()),
        "complete_graph": spec.is_complete(),
        "omega": big(&clique_number(&spec)),
        "bounds": serde_json::to_value(&bounds).map_err(|e| e.to_string())?,
    });
    Ok(report.to_string())
}

/// Accepts the matrix text format (`h rows cols` header, then rows).
pub fn normal_form_json(text: &str) -> Result<String, String> {
    let a = MatrixZh::parse(text).map_err(|e| e.to_string())?;
    if a.rows() > MAX_DIM || a.cols() > MAX_DIM {
        return Err(format!("matrix is larger than {MAX_DIM}x{MAX_DIM}"));
    }
    let ctx = ring(a.modulus())?;
    let nf = smith_form(&ctx, &a).map_err(|e| e.to_string())?;
    let diagonal: Vec<u64> = nf.omega.iter().map(|e| ctx.ideal_generator(e)).collect();
    let inner = inner_rank(&ctx, &a).map_err(|e| e.to_string())?;
    // from_matrix rejects rows that do not span a free submodule
    let subspace = match Subspace::from_matrix(&ctx, &a) {
        Ok(s) => {
            let d = dual(&ctx, &s).map_err(|e| e.to_string())?;
            json!({
                "dim": s.dim(),
                "canonical": s.rep().row_vecs(),
                "dual": d.rep().row_vecs(),
            })
        }
        Err(_) => Value::Null,
    };
    let report = json!({
        "h": a.modulus(),
        "rows": a.rows(),
        "cols": a.cols(),
        "factors": factor_list(&ctx),
        "diagonal": diagonal,
        "inner_rank": inner,
        "mccoy_rank": mccoy_rank(&ctx, &a).map_err(|e| e.to_string())?,
        "subspace": subspace,
    });
    Ok(report.to_string())
}

/// Number of `k`-subspaces of `Z_h^n` for every `k`.
pub fn count_table_json(h: u64, n: usize) -> Result<String, String> {
    if n > 64 {
        return Err(format!("n = {n} is too large for the demo (max 64)"));
    }
    let ctx = ring(h)?;
    let rows: Vec<Value> = (0..=n).map(|k| json!({ "k": k, "count": big(&count_subspaces(&ctx, n, k)) })).collect();
    Ok(json!({ "h": h, "n": n, "rows": rows }).to_string())
}

#[wasm_bindgen]
pub fn graph_stats(h: u32, n: u32, m: u32, r: u32) -> Result<String, JsError> {
    graph_stats_json(h.into(), n as usize, m as usize, r as usize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn normal_form(text: &str) -> Result<String, JsError> {
    normal_form_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn count_table(h: u32, n: u32) -> Result<String, JsError> {
    count_table_json(h.into(), n as usize).map_err(|e| JsError::new(&e))
}
