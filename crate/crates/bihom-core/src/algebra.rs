//! Linear and bilinear maps over the scalar field, and the central
//! structure-constant algebra value.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Params;
use crate::scalar::Scalar;

/// Element of the underlying vector space, in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub coords: Vec<Scalar>,
}

impl Vector {
    pub fn zero(params: &Params, dim: usize) -> Vector {
        Vector {
            coords: vec![Scalar::zero(params); dim],
        }
    }

    pub fn basis(params: &Params, dim: usize, idx: usize) -> Vector {
        let mut v = Vector::zero(params, dim);
        v.coords[idx] = Scalar::one(params);
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            coords: self.coords.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }
}

/// Square matrix of scalars; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub dim: usize,
    pub entries: Vec<Vec<Scalar>>,
}

impl LinearMap {
    pub fn zero(params: &Params, dim: usize) -> LinearMap {
        LinearMap {
            dim,
            entries: vec![vec![Scalar::zero(params); dim]; dim],
        }
    }

    pub fn identity(params: &Params, dim: usize) -> LinearMap {
        let mut m = LinearMap::zero(params, dim);
        for i in 0..dim {
            m.entries[i][i] = Scalar::one(params);
        }
        m
    }

    pub fn diagonal(params: &Params, diag: &[Scalar]) -> LinearMap {
        let mut m = LinearMap::zero(params, diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.entries[i][i] = d.clone();
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "map of dimension {} applied to vector of dimension {}",
                self.dim,
                v.dim()
            )));
        }
        let params = v.coords[0].params().clone();
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut acc = Scalar::zero(&params);
            for j in 0..self.dim {
                if self.entries[i][j].is_zero() || v.coords[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.entries[i][j].mul(&v.coords[j]));
            }
            out.push(acc);
        }
        Ok(Vector { coords: out })
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "composing maps of dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let params = self.entries[0][0].params().clone();
        let mut entries = vec![vec![Scalar::zero(&params); self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = Scalar::zero(&params);
                for k in 0..self.dim {
                    if self.entries[i][k].is_zero() || other.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                entries[i][j] = acc;
            }
        }
        Ok(LinearMap {
            dim: self.dim,
            entries,
        })
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.add(b)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.sub(b)).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> LinearMap {
        LinearMap {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(Scalar::neg).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.mul(c)).collect())
                .collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector {
            coords: (0..self.dim).map(|i| self.entries[i][j].clone()).collect(),
        }
    }

    /// Determinant by cofactor expansion; dimensions stay small here.
    pub fn determinant(&self) -> Scalar {
        let params = self.entries[0][0].params().clone();
        det_rec(&self.entries, &params)
    }

    /// Inverse via adjugate over determinant; exact in the scalar field.
    pub fn invert(&self) -> Result<LinearMap> {
        let det = self.determinant();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let params = self.entries[0][0].params().clone();
        let n = self.dim;
        let mut entries = vec![vec![Scalar::zero(&params); n]; n];
        for i in 0..n {
            for j in 0..n {
                // adjugate: cofactor of (j, i)
                let minor = minor_matrix(&self.entries, j, i);
                let mut c = det_rec(&minor, &params);
                if (i + j) % 2 == 1 {
                    c = c.neg();
                }
                entries[i][j] = c.div(&det).expect("nonzero determinant");
            }
        }
        Ok(LinearMap { dim: n, entries })
    }

    /// Kronecker product, row-major in the left factor.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        let n = self.dim;
        let m = other.dim;
        let params = self.entries[0][0].params().clone();
        let mut entries = vec![vec![Scalar::zero(&params); n * m]; n * m];
        for i in 0..n {
            for k in 0..n {
                for j in 0..m {
                    for l in 0..m {
                        entries[i * m + j][k * m + l] =
                            self.entries[i][k].mul(&other.entries[j][l]);
                    }
                }
            }
        }
        LinearMap {
            dim: n * m,
            entries,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &LinearMap) -> LinearMap {
        let params = self.entries[0][0].params().clone();
        let n = self.dim + other.dim;
        let mut entries = vec![vec![Scalar::zero(&params); n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                entries[self.dim + i][self.dim + j] = other.entries[i][j].clone();
            }
        }
        LinearMap { dim: n, entries }
    }

    pub fn map_params(&self, new_params: &Params, index_map: &[usize]) -> LinearMap {
        LinearMap {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| e.map_params(new_params, index_map))
                        .collect()
                })
                .collect(),
        }
    }
}

fn minor_matrix(m: &[Vec<Scalar>], drop_row: usize, drop_col: usize) -> Vec<Vec<Scalar>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != drop_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != drop_col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

fn det_rec(m: &[Vec<Scalar>], params: &Params) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one(params);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Scalar::zero(params);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor = minor_matrix(m, 0, j);
        let mut term = m[0][j].mul(&det_rec(&minor, params));
        if j % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc
}

/// Structure-constant tensor: `c[i][j][k]` is the coefficient of `e_k`
/// in `product(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    pub dim: usize,
    pub constants: Vec<Vec<Vec<Scalar>>>,
}

impl BilinearMap {
    pub fn zero(params: &Params, dim: usize) -> BilinearMap {
        BilinearMap {
            dim,
            constants: vec![vec![vec![Scalar::zero(params); dim]; dim]; dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constants
            .iter()
            .flatten()
            .flatten()
            .all(Scalar::is_zero)
    }

    /// Product of two basis elements, as a vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        Vector {
            coords: self.constants[i][j].clone(),
        }
    }

    /// Full bilinear evaluation `sum_ij v_i w_j product(e_i, e_j)`.
    pub fn apply(&self, v: &Vector, w: &Vector) -> Result<Vector> {
        if v.dim() != self.dim || w.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "bilinear map of dimension {} applied to vectors of dimensions {} and {}",
                self.dim,
                v.dim(),
                w.dim()
            )));
        }
        let params = v.coords[0].params().clone();
        let mut out = vec![Scalar::zero(&params); self.dim];
        for i in 0..self.dim {
            if v.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if w.coords[j].is_zero() {
                    continue;
                }
                let weight = v.coords[i].mul(&w.coords[j]);
                for (k, out_k) in out.iter_mut().enumerate() {
                    let c = &self.constants[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    *out_k = out_k.add(&weight.mul(c));
                }
            }
        }
        Ok(Vector { coords: out })
    }

    pub fn add(&self, other: &BilinearMap) -> BilinearMap {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    out.constants[i][j][k] = out.constants[i][j][k].add(&other.constants[i][j][k]);
                }
            }
        }
        out
    }

    pub fn map_params(&self, new_params: &Params, index_map: &[usize]) -> BilinearMap {
        BilinearMap {
            dim: self.dim,
            constants: self
                .constants
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|r| {
                            r.iter()
                                .map(|e| e.map_params(new_params, index_map))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Associative,
    Lie,
    Poisson,
    Plain,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Associative => "associative",
            Kind::Lie => "lie",
            Kind::Poisson => "poisson",
            Kind::Plain => "plain",
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite-dimensional algebra with up to two products and two twisting
/// maps, all given by scalars over a shared parameter list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHomAlgebra {
    pub dim: usize,
    pub params: Params,
    pub assumptions_nonzero: BTreeSet<String>,
    pub mu: Option<BilinearMap>,
    pub bracket: Option<BilinearMap>,
    pub alpha: LinearMap,
    pub beta: LinearMap,
    pub kind: Kind,
}

impl BiHomAlgebra {
    pub fn basis(&self, idx: usize) -> Vector {
        Vector::basis(&self.params, self.dim, idx)
    }

    pub fn mu(&self) -> Result<&BilinearMap> {
        self.mu
            .as_ref()
            .ok_or_else(|| Error::KindMismatch("algebra has no multiplication".into()))
    }

    pub fn bracket(&self) -> Result<&BilinearMap> {
        self.bracket
            .as_ref()
            .ok_or_else(|| Error::KindMismatch("algebra has no bracket".into()))
    }

    /// Both twisting maps are invertible over the scalar field.
    pub fn is_regular(&self) -> bool {
        !self.alpha.determinant().is_zero() && !self.beta.determinant().is_zero()
    }

    /// Image of `alpha` on basis element `j`.
    pub fn alpha_basis(&self, j: usize) -> Vector {
        self.alpha.column(j)
    }

    pub fn beta_basis(&self, j: usize) -> Vector {
        self.beta.column(j)
    }
}
