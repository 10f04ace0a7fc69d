//! Browser bindings: draw a Tangle, count a table, browse free Tangles.
//!
//! Every export takes and returns plain strings and numbers; structured
//! results are JSON text.

use std::collections::BTreeSet;

use serde_json::json;
use wasm_bindgen::prelude::*;

use tangles_core::document::{table_csv, GraphDocument};
use tangles_core::enumerator::{count_tables, enumerate_graphs};
use tangles_core::geometry::{check_smooth_simple, numeric_area, render_svg, trace, GeometryConfig, RenderOptions};
use tangles_core::grid::canonical_under;
use tangles_core::{DualGraph, SymmetryGroup};

/// Largest size the page may ask for; larger tables take too long on one thread.
pub const BROWSER_MAX_SIZE: u32 = 8;

fn drawing(g: &DualGraph, radius: f64, show_dual: bool, show_packing: bool) -> Result<serde_json::Value, String> {
    let cfg = GeometryConfig::with_radius(radius).map_err(|e| e.to_string())?;
    let curve = trace(g, &cfg).map_err(|e| e.to_string())?;
    let area = numeric_area(&curve).map_err(|e| e.to_string())?;
    Ok(json!({
        "svg": render_svg(&curve, &cfg, RenderOptions { show_dual, show_packing }),
        "m": g.size(),
        "k": g.count_squares(),
        "c": g.class(),
        "arcs": curve.len(),
        "convex": curve.convex_count(),
        "concave": curve.concave_count(),
        "length": curve.length(),
        "area": area,
        "smooth_and_simple": check_smooth_simple(&curve).passes(),
        "document": GraphDocument::new(g.clone()).to_json().trim_end(),
    }))
}

/// Draws a graph document. Errors come back as `{"error": ...}`.
pub fn render_document(doc: &str, radius: f64, show_dual: bool, show_packing: bool) -> String {
    GraphDocument::from_json(doc)
        .map_err(|e| e.to_string())
        .and_then(|d| drawing(&d.graph, radius, show_dual, show_packing))
        .unwrap_or_else(|e| json!({ "error": e }))
        .to_string()
}

/// CSV count table up to `max_size` (clamped to [`BROWSER_MAX_SIZE`]).
pub fn table(max_size: u32) -> String {
    table_csv(&count_tables(max_size.min(BROWSER_MAX_SIZE)))
}

/// One representative per free Tangle of size `m` and class `c`, in a fixed
/// order.
pub fn free_representatives(m: u32, c: u32) -> Vec<DualGraph> {
    let m = m.min(BROWSER_MAX_SIZE);
    let mut seen = BTreeSet::new();
    enumerate_graphs(m)
        .into_iter()
        .filter(|g| g.size() == m as usize && g.class() == c as usize)
        .filter_map(|g| {
            let key = canonical_under(g.edges(), SymmetryGroup::Full);
            seen.insert(key.clone()).then(|| if g.is_circle() { g } else { DualGraph::new(key).expect("image of a dual graph") })
        })
        .collect()
}

/// The `index`-th free Tangle of size `m` and class `c` (wrapping around),
/// drawn, with the total under `"total"`.
pub fn browse_free(m: u32, c: u32, index: u32, radius: f64) -> String {
    let reps = free_representatives(m, c);
    if reps.is_empty() {
        return json!({ "total": 0, "error": format!("no Tangles with m = {m} and c = {c}") }).to_string();
    }
    let i = index as usize % reps.len();
    match drawing(&reps[i], radius, true, false) {
        Ok(mut v) => {
            v["total"] = json!(reps.len());
            v["index"] = json!(i);
            v.to_string()
        }
        Err(e) => json!({ "error": e }).to_string(),
    }
}

#[wasm_bindgen(js_name = renderDocument)]
pub fn render_document_js(doc: &str, radius: f64, show_dual: bool, show_packing: bool) -> String {
    render_document(doc, radius, show_dual, show_packing)
}

#[wasm_bindgen(js_name = countTable)]
pub fn count_table_js(max_size: u32) -> String {
    table(max_size)
}

#[wasm_bindgen(js_name = browseFree)]
pub fn browse_free_js(m: u32, c: u32, index: u32, radius: f64) -> String {
    browse_free(m, c, index, radius)
}
