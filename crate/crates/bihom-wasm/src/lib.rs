//! Browser bindings: verify algebra documents, polarize/depolarize, and
//! twist, all returning JSON strings for the demo page.

use wasm_bindgen::prelude::*;

use bihom_core::algebra::LinearMap;
use bihom_core::axioms::{check_admissible, verify_algebra};
use bihom_core::catalog::{catalog_entries, catalog_entry};
use bihom_core::constructions;
use bihom_core::document::{document_to_json, dump_algebra, load_algebra, AlgebraDocument};
use bihom_core::expr::parse_scalar;
use bihom_core::numeric::confirm_failures;
use bihom_core::rng::Rng;
use bihom_core::{BiHomAlgebra, Report, DEFAULT_SEED};

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn parse_document(doc_json: &str) -> Result<BiHomAlgebra, JsValue> {
    let doc: AlgebraDocument = serde_json::from_str(doc_json).map_err(err)?;
    load_algebra(&doc).map_err(err)
}

fn report_json(algebra: &BiHomAlgebra, mut report: Report) -> Result<String, JsValue> {
    let mut rng = Rng::new(DEFAULT_SEED);
    confirm_failures(algebra, &mut report, &mut rng, 3).map_err(err)?;
    Ok(report.to_json().to_string())
}

/// Catalog metadata: id, dimension, source and notes for every entry.
#[wasm_bindgen]
pub fn catalog_ids() -> String {
    let items: Vec<serde_json::Value> = catalog_entries()
        .iter()
        .map(|e| {
            serde_json::json!({
                "dimension": e.document.dimension,
                "id": e.id,
                "notes": e.editorial_notes,
                "source": e.source,
            })
        })
        .collect();
    serde_json::to_string(&items).unwrap()
}

/// The algebra document of one catalog entry, pretty-printed.
#[wasm_bindgen]
pub fn catalog_document(id: &str) -> Result<String, JsValue> {
    let entry = catalog_entry(id).map_err(err)?;
    Ok(document_to_json(&entry.document))
}

/// Kind-appropriate verification of a document, with oracle-confirmed
/// failures; returns the report as JSON.
#[wasm_bindgen]
pub fn verify_document(doc_json: &str) -> Result<String, JsValue> {
    let algebra = parse_document(doc_json)?;
    let report = verify_algebra(&algebra).map_err(err)?;
    report_json(&algebra, report)
}

/// Polarize a single-product document; returns {document, report}.
#[wasm_bindgen]
pub fn polarize_document(doc_json: &str) -> Result<String, JsValue> {
    let algebra = parse_document(doc_json)?;
    let polarized = constructions::polarize(&algebra).map_err(err)?;
    let report = verify_algebra(&polarized).map_err(err)?;
    let out = serde_json::json!({
        "document": dump_algebra(&polarized),
        "report": serde_json::from_str::<serde_json::Value>(&report_json(&polarized, report)?).unwrap(),
    });
    Ok(out.to_string())
}

/// Depolarize a poisson document and check admissibility of the result.
#[wasm_bindgen]
pub fn depolarize_document(doc_json: &str) -> Result<String, JsValue> {
    let algebra = parse_document(doc_json)?;
    let plain = constructions::depolarize(&algebra).map_err(err)?;
    let report = check_admissible(&plain).map_err(err)?;
    let out = serde_json::json!({
        "document": dump_algebra(&plain),
        "report": serde_json::from_str::<serde_json::Value>(&report_json(&plain, report)?).unwrap(),
    });
    Ok(out.to_string())
}

/// Twist a document along two matrices of scalar expressions (JSON
/// arrays of rows); returns {document, report}.
#[wasm_bindgen]
pub fn twist_document(
    doc_json: &str,
    alpha_json: &str,
    beta_json: &str,
) -> Result<String, JsValue> {
    let algebra = parse_document(doc_json)?;
    let parse_matrix = |text: &str| -> Result<LinearMap, JsValue> {
        let rows: Vec<Vec<String>> = serde_json::from_str(text).map_err(err)?;
        if rows.len() != algebra.dim || rows.iter().any(|r| r.len() != algebra.dim) {
            return Err(err(format!("matrix must be {0}x{0}", algebra.dim)));
        }
        let mut map = LinearMap::zero(&algebra.params, algebra.dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                map.entries[i][j] = parse_scalar(entry, &algebra.params).map_err(err)?;
            }
        }
        Ok(map)
    };
    let alpha = parse_matrix(alpha_json)?;
    let beta = parse_matrix(beta_json)?;
    let twisted = constructions::yau_twist(&algebra, &alpha, &beta).map_err(err)?;
    let report = verify_algebra(&twisted).map_err(err)?;
    let out = serde_json::json!({
        "document": dump_algebra(&twisted),
        "report": serde_json::from_str::<serde_json::Value>(&report_json(&twisted, report)?).unwrap(),
    });
    Ok(out.to_string())
}
