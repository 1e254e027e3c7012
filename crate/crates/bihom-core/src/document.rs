//! JSON documents describing algebras and representations.
//!
//! Structure constants are sparse lists of `[i, j, k, "expr"]` with
//! 1-based indices; unlisted entries and unlisted matrix cells are zero.
//! Sub/superscript pairs flatten as indices-then-superscript, e.g. the
//! coefficient of `e_2` in `mu(e_2, e_2)` is written `c22_2`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{BiHomAlgebra, BilinearMap, Kind, LinearMap};
use crate::error::{Error, Result};
use crate::expr::parse_scalar;
use crate::poly::Params;
use crate::representations::Representation;
use crate::scalar::Scalar;

pub type SparseEntry = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub dimension: usize,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub assumptions_nonzero: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<SparseEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<SparseEntry>>,
    #[serde(default)]
    pub alpha: Vec<Vec<String>>,
    #[serde(default)]
    pub beta: Vec<Vec<String>>,
    pub kind: Kind,
}

/// Extends an algebra document with module data: per-basis-element
/// action matrices and the module twisting maps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationDocument {
    pub module_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_bracket: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_mu: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    pub gamma: Vec<Vec<String>>,
    #[serde(default)]
    pub nu: Vec<Vec<String>>,
}

fn parse_grid(grid: &[Vec<String>], dim: usize, params: &Params, path: &str) -> Result<LinearMap> {
    if grid.len() > dim {
        return Err(Error::DimensionMismatch(format!(
            "{path} has {} rows in a dimension-{dim} document",
            grid.len()
        )));
    }
    let mut out = LinearMap::zero(params, dim);
    for (i, row) in grid.iter().enumerate() {
        if row.len() > dim {
            return Err(Error::DimensionMismatch(format!(
                "{path}[{i}] has {} columns in a dimension-{dim} document",
                row.len()
            )));
        }
        for (j, text) in row.iter().enumerate() {
            out.entries[i][j] =
                parse_scalar(text, params).map_err(|e| e.at(format!("{path}[{i}][{j}]")))?;
        }
    }
    Ok(out)
}

fn parse_sparse(
    entries: &[SparseEntry],
    dim: usize,
    params: &Params,
    path: &str,
) -> Result<BilinearMap> {
    let mut out = BilinearMap::zero(params, dim);
    let mut seen = BTreeSet::new();
    for (n, (i, j, k, text)) in entries.iter().enumerate() {
        for (label, idx) in [("i", i), ("j", j), ("k", k)] {
            if *idx < 1 || *idx > dim {
                return Err(Error::DimensionMismatch(format!(
                    "{path}[{n}]: index {label}={idx} outside 1..{dim}"
                )));
            }
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(Error::InvalidDocument(format!(
                "{path}[{n}]: duplicate entry ({i},{j},{k})"
            )));
        }
        out.constants[i - 1][j - 1][k - 1] =
            parse_scalar(text, params).map_err(|e| e.at(format!("{path}[{n}]")))?;
    }
    Ok(out)
}

pub fn load_algebra(doc: &AlgebraDocument) -> Result<BiHomAlgebra> {
    if doc.dimension == 0 {
        return Err(Error::InvalidDocument("dimension must be positive".into()));
    }
    let mut unique = BTreeSet::new();
    for p in &doc.parameters {
        if !unique.insert(p.clone()) {
            return Err(Error::InvalidDocument(format!("duplicate parameter `{p}`")));
        }
    }
    for a in &doc.assumptions_nonzero {
        if !unique.contains(a) {
            return Err(Error::InvalidDocument(format!(
                "assumption names unknown parameter `{a}`"
            )));
        }
    }
    match doc.kind {
        Kind::Associative | Kind::Plain => {
            if doc.mu.is_none() {
                return Err(Error::KindMismatch(format!(
                    "kind={} requires mu",
                    doc.kind
                )));
            }
            if doc.bracket.is_some() {
                return Err(Error::KindMismatch(format!(
                    "kind={} forbids a bracket",
                    doc.kind
                )));
            }
        }
        Kind::Lie => {
            if doc.bracket.is_none() {
                return Err(Error::KindMismatch("kind=lie requires a bracket".into()));
            }
            if doc.mu.is_some() {
                return Err(Error::KindMismatch("kind=lie forbids mu".into()));
            }
        }
        Kind::Poisson => {
            if doc.mu.is_none() || doc.bracket.is_none() {
                return Err(Error::KindMismatch(
                    "kind=poisson requires both mu and bracket".into(),
                ));
            }
        }
    }
    let params = Params::new(doc.parameters.clone());
    let dim = doc.dimension;
    let mu = doc
        .mu
        .as_ref()
        .map(|m| parse_sparse(m, dim, &params, "mu"))
        .transpose()?;
    let bracket = doc
        .bracket
        .as_ref()
        .map(|b| parse_sparse(b, dim, &params, "bracket"))
        .transpose()?;
    let alpha = parse_grid(&doc.alpha, dim, &params, "alpha")?;
    let beta = parse_grid(&doc.beta, dim, &params, "beta")?;
    Ok(BiHomAlgebra {
        dim,
        params,
        assumptions_nonzero: doc.assumptions_nonzero.iter().cloned().collect(),
        mu,
        bracket,
        alpha,
        beta,
        kind: doc.kind,
    })
}

fn dump_sparse(map: &BilinearMap) -> Vec<SparseEntry> {
    let mut out = Vec::new();
    for i in 0..map.dim {
        for j in 0..map.dim {
            for k in 0..map.dim {
                let c = &map.constants[i][j][k];
                if !c.is_zero() {
                    out.push((i + 1, j + 1, k + 1, c.to_string()));
                }
            }
        }
    }
    out
}

fn dump_grid(map: &LinearMap) -> Vec<Vec<String>> {
    map.entries
        .iter()
        .map(|row| row.iter().map(Scalar::to_string).collect())
        .collect()
}

pub fn dump_algebra(a: &BiHomAlgebra) -> AlgebraDocument {
    AlgebraDocument {
        dimension: a.dim,
        parameters: a.params.names().to_vec(),
        assumptions_nonzero: a.assumptions_nonzero.iter().cloned().collect(),
        mu: a.mu.as_ref().map(dump_sparse),
        bracket: a.bracket.as_ref().map(dump_sparse),
        alpha: dump_grid(&a.alpha),
        beta: dump_grid(&a.beta),
        kind: a.kind,
    }
}

/// Attach module data from a representation document to a loaded algebra.
pub fn load_representation(
    doc: &RepresentationDocument,
    algebra: &BiHomAlgebra,
) -> Result<Representation> {
    if doc.module_dim == 0 {
        return Err(Error::InvalidDocument("module_dim must be positive".into()));
    }
    let params = &algebra.params;
    let parse_rho = |name: &str, grids: &Vec<Vec<Vec<String>>>| -> Result<Vec<LinearMap>> {
        if grids.len() != algebra.dim {
            return Err(Error::ShapeMismatch(format!(
                "{name} must list one matrix per basis element ({} expected, {} given)",
                algebra.dim,
                grids.len()
            )));
        }
        grids
            .iter()
            .enumerate()
            .map(|(i, g)| parse_grid(g, doc.module_dim, params, &format!("{name}[{i}]")))
            .collect()
    };
    let rho_bracket = doc
        .rho_bracket
        .as_ref()
        .map(|g| parse_rho("rho_bracket", g))
        .transpose()?;
    let rho_mu = doc
        .rho_mu
        .as_ref()
        .map(|g| parse_rho("rho_mu", g))
        .transpose()?;
    if algebra.bracket.is_some() && rho_bracket.is_none() && algebra.kind == Kind::Poisson {
        return Err(Error::ShapeMismatch(
            "poisson representation requires rho_bracket".into(),
        ));
    }
    if algebra.mu.is_some() && rho_mu.is_none() && algebra.kind == Kind::Poisson {
        return Err(Error::ShapeMismatch(
            "poisson representation requires rho_mu".into(),
        ));
    }
    let gamma = parse_grid(&doc.gamma, doc.module_dim, params, "gamma")?;
    let nu = parse_grid(&doc.nu, doc.module_dim, params, "nu")?;
    Ok(Representation {
        algebra: algebra.clone(),
        module_dim: doc.module_dim,
        rho_bracket,
        rho_mu,
        gamma,
        nu,
    })
}

pub fn algebra_from_json(text: &str) -> Result<BiHomAlgebra> {
    let doc: AlgebraDocument =
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))?;
    load_algebra(&doc)
}

pub fn document_to_json(doc: &AlgebraDocument) -> String {
    serde_json::to_string_pretty(doc).expect("document serialization")
}
