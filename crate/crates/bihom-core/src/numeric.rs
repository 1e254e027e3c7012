//! Independent numeric oracle.
//!
//! Re-implements every identity check with naive nested loops over plain
//! rational matrices and tensors, sharing no code with the symbolic
//! path. Used to confirm symbolic failures at random parameter points
//! and to verify fully-numeric structures in the search.

use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::BiHomAlgebra;
use crate::document::AlgebraDocument;
use crate::error::{Error, Result};
use crate::poly::{rat_int, Rational};
use crate::report::{Check, OracleConfirmation, Report, Verdict};
use crate::rng::Rng;

pub type Matrix = Vec<Vec<Rational>>;
pub type Tensor = Vec<Vec<Vec<Rational>>>;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericAlgebra {
    pub dim: usize,
    pub mu: Option<Tensor>,
    pub bracket: Option<Tensor>,
    pub alpha: Matrix,
    pub beta: Matrix,
}

fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

fn mat_zero(n: usize) -> Matrix {
    vec![zeros(n); n]
}

fn tensor_zero(n: usize) -> Tensor {
    vec![mat_zero(n); n]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = mat_zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Rational::zero();
            for k in 0..n {
                acc += &a[i][k] * &b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat_id(n: usize) -> Matrix {
    let mut m = mat_zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

fn column(m: &Matrix, j: usize) -> Vec<Rational> {
    m.iter().map(|row| row[j].clone()).collect()
}

fn basis_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// sum_ij u_i v_j c[i][j][.]
fn tensor_apply(c: &Tensor, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let n = u.len();
    let mut out = zeros(n);
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if v[j].is_zero() {
                continue;
            }
            let w = &u[i] * &v[j];
            for (k, out_k) in out.iter_mut().enumerate() {
                if !c[i][j][k].is_zero() {
                    *out_k += &w * &c[i][j][k];
                }
            }
        }
    }
    out
}

fn mat_apply(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    let n = v.len();
    let mut out = zeros(n);
    for i in 0..n {
        let mut acc = Rational::zero();
        for j in 0..n {
            if !m[i][j].is_zero() && !v[j].is_zero() {
                acc += &m[i][j] * &v[j];
            }
        }
        out[i] = acc;
    }
    out
}

/// Gaussian elimination over the rationals.
fn mat_inv(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = mat_id(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

impl NumericAlgebra {
    pub fn mu(&self) -> Result<&Tensor> {
        self.mu
            .as_ref()
            .ok_or_else(|| Error::KindMismatch("numeric algebra has no multiplication".into()))
    }

    pub fn bracket(&self) -> Result<&Tensor> {
        self.bracket
            .as_ref()
            .ok_or_else(|| Error::KindMismatch("numeric algebra has no bracket".into()))
    }
}

// ---------------------------------------------------------------------------
// identity checks
// ---------------------------------------------------------------------------

fn fail_from(identity: &str, witness: Vec<usize>, residual: Vec<Rational>) -> Check {
    let scalars = residual
        .iter()
        .map(|r| crate::scalar::Scalar::constant(&crate::poly::Params::empty(), r.clone()))
        .collect();
    Check::fail(identity, witness, scalars)
}

fn check_commuting(n: &NumericAlgebra) -> Check {
    let ab = mat_mul(&n.alpha, &n.beta);
    let ba = mat_mul(&n.beta, &n.alpha);
    for i in 0..n.dim {
        for j in 0..n.dim {
            if ab[i][j] != ba[i][j] {
                let res: Vec<Rational> = (0..n.dim).map(|r| &ab[r][j] - &ba[r][j]).collect();
                return fail_from("commuting_maps", vec![i + 1, j + 1], res);
            }
        }
    }
    Check::pass("commuting_maps")
}

fn check_mult(n: &NumericAlgebra) -> Check {
    let products: Vec<(&str, &Tensor)> = [("mu", n.mu.as_ref()), ("bracket", n.bracket.as_ref())]
        .into_iter()
        .filter_map(|(name, t)| t.map(|t| (name, t)))
        .collect();
    for (pname, c) in products {
        for (mname, m) in [("alpha", &n.alpha), ("beta", &n.beta)] {
            for i in 0..n.dim {
                for j in 0..n.dim {
                    let lhs = mat_apply(m, &c[i][j]);
                    let rhs = tensor_apply(c, &column(m, i), &column(m, j));
                    let res: Vec<Rational> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                    if !vec_is_zero(&res) {
                        return fail_from("multiplicativity", vec![i + 1, j + 1], res)
                            .with_detail(format!("{mname} with {pname}"));
                    }
                }
            }
        }
    }
    Check::pass("multiplicativity")
}

fn check_assoc(n: &NumericAlgebra) -> Result<Check> {
    let mu = n.mu()?;
    for i in 0..n.dim {
        for j in 0..n.dim {
            for k in 0..n.dim {
                let lhs = tensor_apply(mu, &column(&n.alpha, i), &mu[j][k]);
                let rhs = tensor_apply(mu, &mu[i][j], &column(&n.beta, k));
                let res: Vec<Rational> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                if !vec_is_zero(&res) {
                    return Ok(fail_from(
                        "bihom_associativity",
                        vec![i + 1, j + 1, k + 1],
                        res,
                    ));
                }
            }
        }
    }
    Ok(Check::pass("bihom_associativity"))
}

fn check_comm(n: &NumericAlgebra) -> Result<Check> {
    let mu = n.mu()?;
    for i in 0..n.dim {
        for j in 0..n.dim {
            let lhs = tensor_apply(mu, &column(&n.beta, i), &column(&n.alpha, j));
            let rhs = tensor_apply(mu, &column(&n.beta, j), &column(&n.alpha, i));
            let res: Vec<Rational> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            if !vec_is_zero(&res) {
                return Ok(fail_from("bihom_commutativity", vec![i + 1, j + 1], res));
            }
        }
    }
    Ok(Check::pass("bihom_commutativity"))
}

fn check_skew(n: &NumericAlgebra) -> Result<Check> {
    let bk = n.bracket()?;
    for i in 0..n.dim {
        for j in 0..n.dim {
            let lhs = tensor_apply(bk, &column(&n.beta, i), &column(&n.alpha, j));
            let rhs = tensor_apply(bk, &column(&n.beta, j), &column(&n.alpha, i));
            let res: Vec<Rational> = lhs.iter().zip(&rhs).map(|(a, b)| a + b).collect();
            if !vec_is_zero(&res) {
                return Ok(fail_from("bihom_skew_symmetry", vec![i + 1, j + 1], res));
            }
        }
    }
    Ok(Check::pass("bihom_skew_symmetry"))
}

fn check_jacobi(n: &NumericAlgebra) -> Result<Check> {
    let bk = n.bracket()?;
    let beta2 = mat_mul(&n.beta, &n.beta);
    let term = |x: usize, y: usize, z: usize| -> Vec<Rational> {
        let inner = tensor_apply(bk, &column(&n.beta, y), &column(&n.alpha, z));
        tensor_apply(bk, &column(&beta2, x), &inner)
    };
    for i in 0..n.dim {
        for j in 0..n.dim {
            for k in 0..n.dim {
                let t1 = term(i, j, k);
                let t2 = term(j, k, i);
                let t3 = term(k, i, j);
                let res: Vec<Rational> = (0..n.dim).map(|t| &t1[t] + &t2[t] + &t3[t]).collect();
                if !vec_is_zero(&res) {
                    return Ok(fail_from("bihom_jacobi", vec![i + 1, j + 1, k + 1], res));
                }
            }
        }
    }
    Ok(Check::pass("bihom_jacobi"))
}

fn check_jacobi_regular(n: &NumericAlgebra) -> Result<Option<Check>> {
    let bk = n.bracket()?;
    let Some(alpha_inv) = mat_inv(&n.alpha) else {
        return Ok(None);
    };
    let beta2 = mat_mul(&n.beta, &n.beta);
    let ainv_b2 = mat_mul(&alpha_inv, &beta2);
    let ab = mat_mul(&n.alpha, &n.beta);
    for i in 0..n.dim {
        for j in 0..n.dim {
            for k in 0..n.dim {
                let lhs = tensor_apply(
                    bk,
                    &column(&beta2, i),
                    &tensor_apply(bk, &column(&n.beta, j), &column(&n.alpha, k)),
                );
                let t1 = tensor_apply(
                    bk,
                    &tensor_apply(bk, &column(&ainv_b2, i), &column(&n.beta, j)),
                    &column(&ab, k),
                );
                let t2 = tensor_apply(
                    bk,
                    &column(&beta2, j),
                    &tensor_apply(bk, &column(&n.beta, i), &column(&n.alpha, k)),
                );
                let res: Vec<Rational> = (0..n.dim).map(|t| &lhs[t] - &t1[t] - &t2[t]).collect();
                if !vec_is_zero(&res) {
                    return Ok(Some(fail_from(
                        "jacobi_regular_form",
                        vec![i + 1, j + 1, k + 1],
                        res,
                    )));
                }
            }
        }
    }
    Ok(Some(Check::pass("jacobi_regular_form")))
}

fn check_leibniz(n: &NumericAlgebra) -> Result<Check> {
    let mu = n.mu()?;
    let bk = n.bracket()?;
    let ab = mat_mul(&n.alpha, &n.beta);
    for i in 0..n.dim {
        for j in 0..n.dim {
            for k in 0..n.dim {
                let lhs = tensor_apply(bk, &mu[i][j], &column(&ab, k));
                let t1 = tensor_apply(
                    mu,
                    &tensor_apply(bk, &basis_vec(n.dim, i), &column(&n.beta, k)),
                    &column(&n.alpha, j),
                );
                let t2 = tensor_apply(
                    mu,
                    &column(&n.alpha, i),
                    &tensor_apply(bk, &basis_vec(n.dim, j), &column(&n.alpha, k)),
                );
                let res: Vec<Rational> = (0..n.dim).map(|t| &lhs[t] - &t1[t] - &t2[t]).collect();
                if !vec_is_zero(&res) {
                    return Ok(fail_from("bihom_leibniz", vec![i + 1, j + 1, k + 1], res));
                }
            }
        }
    }
    Ok(Check::pass("bihom_leibniz"))
}

fn numeric_associator(
    mu: &Tensor,
    n: &NumericAlgebra,
    x: &[Rational],
    y: &[Rational],
    z: &[Rational],
) -> Vec<Rational> {
    let lhs = tensor_apply(mu, &tensor_apply(mu, x, y), &mat_apply(&n.beta, z));
    let rhs = tensor_apply(mu, &mat_apply(&n.alpha, x), &tensor_apply(mu, y, z));
    lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect()
}

fn check_admissibility(n: &NumericAlgebra) -> Result<Check> {
    let mu = n.mu()?;
    let third = rat_int(1) / rat_int(3);
    let alpha2 = mat_mul(&n.alpha, &n.alpha);
    let ab = mat_mul(&n.alpha, &n.beta);
    let beta2 = mat_mul(&n.beta, &n.beta);
    let alpha2_beta = mat_mul(&alpha2, &n.beta);
    for i in 0..n.dim {
        for j in 0..n.dim {
            for k in 0..n.dim {
                let bx = column(&n.beta, i);
                let ay = column(&n.alpha, j);
                let a2z = column(&alpha2, k);
                let lhs = numeric_associator(mu, n, &bx, &ay, &a2z);
                let t1 = tensor_apply(
                    mu,
                    &tensor_apply(mu, &bx, &column(&ab, k)),
                    &column(&alpha2, j),
                );
                let t2 = tensor_apply(
                    mu,
                    &tensor_apply(mu, &column(&beta2, k), &column(&n.alpha, i)),
                    &column(&alpha2, j),
                );
                let t3 = tensor_apply(
                    mu,
                    &tensor_apply(mu, &column(&n.beta, j), &column(&ab, k)),
                    &column(&alpha2, i),
                );
                let t4 = tensor_apply(
                    mu,
                    &tensor_apply(mu, &column(&n.beta, j), &column(&n.alpha, i)),
                    &column(&alpha2_beta, k),
                );
                let res: Vec<Rational> = (0..n.dim)
                    .map(|t| &lhs[t] - &third * (&t1[t] - &t2[t] + &t3[t] - &t4[t]))
                    .collect();
                if !vec_is_zero(&res) {
                    return Ok(fail_from("admissibility", vec![i + 1, j + 1, k + 1], res));
                }
            }
        }
    }
    Ok(Check::pass("admissibility"))
}

fn check_admissibility_regular(n: &NumericAlgebra) -> Result<Option<Check>> {
    let mu = n.mu()?;
    let (Some(ai), Some(bi)) = (mat_inv(&n.alpha), mat_inv(&n.beta)) else {
        return Ok(None);
    };
    let third = rat_int(1) / rat_int(3);
    let ainv_b = mat_mul(&ai, &n.beta);
    let ainv2_b2 = mat_mul(&mat_mul(&ai, &ai), &mat_mul(&n.beta, &n.beta));
    let a_binv = mat_mul(&n.alpha, &bi);
    let a2_binv = mat_mul(&mat_mul(&n.alpha, &n.alpha), &bi);
    for i in 0..n.dim {
        for j in 0..n.dim {
            for k in 0..n.dim {
                let lhs = numeric_associator(
                    mu,
                    n,
                    &basis_vec(n.dim, i),
                    &basis_vec(n.dim, j),
                    &basis_vec(n.dim, k),
                );
                let t1 = tensor_apply(
                    mu,
                    &tensor_apply(mu, &basis_vec(n.dim, i), &column(&ainv_b, k)),
                    &column(&n.alpha, j),
                );
                let t2 = tensor_apply(
                    mu,
                    &tensor_apply(mu, &column(&ainv2_b2, k), &column(&a_binv, i)),
                    &column(&n.alpha, j),
                );
                let t3 = tensor_apply(
                    mu,
                    &tensor_apply(mu, &column(&ainv_b, j), &column(&ainv_b, k)),
                    &column(&a2_binv, i),
                );
                let t4 = tensor_apply(
                    mu,
                    &tensor_apply(mu, &column(&ainv_b, j), &column(&a_binv, i)),
                    &column(&n.beta, k),
                );
                let res: Vec<Rational> = (0..n.dim)
                    .map(|t| &lhs[t] - &third * (&t1[t] - &t2[t] + &t3[t] - &t4[t]))
                    .collect();
                if !vec_is_zero(&res) {
                    return Ok(Some(fail_from(
                        "admissibility_regular_form",
                        vec![i + 1, j + 1, k + 1],
                        res,
                    )));
                }
            }
        }
    }
    Ok(Some(Check::pass("admissibility_regular_form")))
}

/// Full seven-identity verification, mirroring the symbolic aggregate:
/// BiHom-commutativity is informational and only flips the label.
pub fn oracle_verify_numeric(n: &NumericAlgebra) -> Result<Report> {
    let mut report = Report::new();
    report.push(check_commuting(n));
    report.push(check_mult(n));
    report.push(check_assoc(n)?);
    let comm = check_comm(n)?;
    let commutative = comm.verdict == Verdict::Pass;
    report.push(comm.informational());
    report.push(check_skew(n)?);
    report.push(check_jacobi(n)?);
    report.push(check_leibniz(n)?);
    if report.passed() {
        report.label = Some(if commutative {
            "BiHom-Poisson".to_string()
        } else {
            "non-BiHom-commutative BiHom-Poisson".to_string()
        });
    }
    Ok(report)
}

/// Fast pass/fail for the search loop: cheapest identities first, early
/// exit, same acceptance rule as `oracle_verify_numeric`.
pub fn oracle_passes_quick(n: &NumericAlgebra) -> Result<bool> {
    if check_commuting(n).verdict == Verdict::Fail {
        return Ok(false);
    }
    if check_mult(n).verdict == Verdict::Fail {
        return Ok(false);
    }
    if check_skew(n)?.verdict == Verdict::Fail {
        return Ok(false);
    }
    if check_assoc(n)?.verdict == Verdict::Fail {
        return Ok(false);
    }
    if check_jacobi(n)?.verdict == Verdict::Fail {
        return Ok(false);
    }
    Ok(check_leibniz(n)?.verdict == Verdict::Pass)
}

/// Run one named identity; `None` when the identity needs an inverse
/// that does not exist at this point.
pub fn run_identity(n: &NumericAlgebra, identity: &str) -> Result<Option<Check>> {
    Ok(match identity {
        "commuting_maps" => Some(check_commuting(n)),
        "multiplicativity" => Some(check_mult(n)),
        "bihom_associativity" => Some(check_assoc(n)?),
        "bihom_commutativity" => Some(check_comm(n)?),
        "bihom_skew_symmetry" => Some(check_skew(n)?),
        "bihom_jacobi" => Some(check_jacobi(n)?),
        "bihom_leibniz" => Some(check_leibniz(n)?),
        "jacobi_regular_form" => check_jacobi_regular(n)?,
        "admissibility" => Some(check_admissibility(n)?),
        "admissibility_regular_form" => check_admissibility_regular(n)?,
        other => {
            return Err(Error::InvalidDocument(format!(
                "no numeric form of check `{other}`"
            )))
        }
    })
}

// ---------------------------------------------------------------------------
// bridges: documents and symbolic algebras to numeric data
// ---------------------------------------------------------------------------

fn parse_rational(text: &str) -> Result<Rational> {
    Rational::from_str(text.trim())
        .map_err(|_| Error::NotNumeric(format!("entry `{text}` is not a rational literal")))
}

/// Interpret a fully-numeric document; every expression must be a plain
/// rational literal.
pub fn numeric_from_document(doc: &AlgebraDocument) -> Result<NumericAlgebra> {
    if !doc.parameters.is_empty() {
        return Err(Error::NotNumeric(format!(
            "document declares {} parameters",
            doc.parameters.len()
        )));
    }
    let dim = doc.dimension;
    let tensor = |entries: &Option<Vec<(usize, usize, usize, String)>>| -> Result<Option<Tensor>> {
        match entries {
            None => Ok(None),
            Some(list) => {
                let mut t = tensor_zero(dim);
                for (i, j, k, text) in list {
                    if *i < 1 || *i > dim || *j < 1 || *j > dim || *k < 1 || *k > dim {
                        return Err(Error::DimensionMismatch(format!(
                            "index ({i},{j},{k}) outside 1..{dim}"
                        )));
                    }
                    t[i - 1][j - 1][k - 1] = parse_rational(text)?;
                }
                Ok(Some(t))
            }
        }
    };
    let grid = |rows: &Vec<Vec<String>>| -> Result<Matrix> {
        let mut m = mat_zero(dim);
        for (i, row) in rows.iter().enumerate() {
            if i >= dim || row.len() > dim {
                return Err(Error::DimensionMismatch(
                    "matrix larger than dimension".into(),
                ));
            }
            for (j, text) in row.iter().enumerate() {
                m[i][j] = parse_rational(text)?;
            }
        }
        Ok(m)
    };
    Ok(NumericAlgebra {
        dim,
        mu: tensor(&doc.mu)?,
        bracket: tensor(&doc.bracket)?,
        alpha: grid(&doc.alpha)?,
        beta: grid(&doc.beta)?,
    })
}

/// Verdict for a fully-numeric poisson document, by the naive path.
pub fn oracle_verify(doc: &AlgebraDocument) -> Result<Report> {
    let n = numeric_from_document(doc)?;
    if n.mu.is_none() || n.bracket.is_none() {
        return Err(Error::KindMismatch(
            "oracle verification needs both products".into(),
        ));
    }
    oracle_verify_numeric(&n)
}

/// Evaluate a symbolic algebra at a parameter point.
pub fn instantiate(a: &BiHomAlgebra, point: &[Rational]) -> Result<NumericAlgebra> {
    let tensor = |b: &crate::algebra::BilinearMap| -> Result<Tensor> {
        let mut t = tensor_zero(a.dim);
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    t[i][j][k] = b.constants[i][j][k].evaluate(point)?;
                }
            }
        }
        Ok(t)
    };
    let grid = |m: &crate::algebra::LinearMap| -> Result<Matrix> {
        let mut out = mat_zero(a.dim);
        for i in 0..a.dim {
            for j in 0..a.dim {
                out[i][j] = m.entries[i][j].evaluate(point)?;
            }
        }
        Ok(out)
    };
    Ok(NumericAlgebra {
        dim: a.dim,
        mu: a.mu.as_ref().map(&tensor).transpose()?,
        bracket: a.bracket.as_ref().map(&tensor).transpose()?,
        alpha: grid(&a.alpha)?,
        beta: grid(&a.beta)?,
    })
}

/// Random integer point respecting the nonzero assumptions; retries
/// until the instantiation is pole-free.
pub fn random_instantiation(
    a: &BiHomAlgebra,
    rng: &mut Rng,
) -> Result<(Vec<Rational>, NumericAlgebra)> {
    for _ in 0..500 {
        let mut point = Vec::with_capacity(a.params.len());
        for name in a.params.names() {
            let mut v = rng.int_in(-12, 12);
            while v == 0 && a.assumptions_nonzero.contains(name) {
                v = rng.int_in(-12, 12);
            }
            point.push(rat_int(v));
        }
        match instantiate(a, &point) {
            Ok(n) => return Ok((point, n)),
            Err(Error::PoleAtPoint) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::PoleAtPoint)
}

/// Confirm each symbolic FAIL in the report by running the same identity
/// numerically at `points` random pole-free parameter points.
pub fn confirm_failures(
    a: &BiHomAlgebra,
    report: &mut Report,
    rng: &mut Rng,
    points: usize,
) -> Result<()> {
    for check in &mut report.checks {
        if check.verdict != Verdict::Fail {
            continue;
        }
        let mut failing = 0;
        let mut total = 0;
        let mut guard = 0;
        while total < points && guard < points * 50 {
            guard += 1;
            let (_, numeric) = random_instantiation(a, rng)?;
            match run_identity(&numeric, &check.identity) {
                // no numeric form (e.g. representation conditions)
                Err(Error::InvalidDocument(_)) => break,
                Err(e) => return Err(e),
                Ok(None) => continue, // map not invertible at this point
                Ok(Some(c)) => {
                    total += 1;
                    if c.verdict == Verdict::Fail {
                        failing += 1;
                    }
                }
            }
        }
        if total == 0 && failing == 0 && guard < points * 50 {
            continue;
        }
        check.oracle = Some(OracleConfirmation {
            points_total: total,
            points_failing: failing,
        });
    }
    Ok(())
}
