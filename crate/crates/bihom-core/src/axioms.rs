//! Symbolic checks for every defining identity, on basis tuples.
//!
//! All identities in scope are multilinear, so holding on all basis
//! tuples is equivalent to holding on all elements. Each check scans
//! tuples in lexicographic order and reports the first failing tuple
//! together with the full residual vector there.

use crate::algebra::{BiHomAlgebra, BilinearMap, Kind, LinearMap, Vector};
use crate::error::{Error, Result};
use crate::poly::rat;
use crate::report::{Check, Report};
use crate::scalar::Scalar;

pub const POISSON_IDENTITIES: [&str; 7] = [
    "commuting_maps",
    "multiplicativity",
    "bihom_associativity",
    "bihom_commutativity",
    "bihom_skew_symmetry",
    "bihom_jacobi",
    "bihom_leibniz",
];

/// alpha beta = beta alpha, scanned entrywise; the witness is the first
/// differing matrix entry and the residual is that defect column.
pub fn check_commuting_maps(a: &BiHomAlgebra) -> Result<Report> {
    let ab = a.alpha.compose(&a.beta)?;
    let ba = a.beta.compose(&a.alpha)?;
    let defect = ab.sub(&ba);
    for i in 0..a.dim {
        for j in 0..a.dim {
            if !defect.entries[i][j].is_zero() {
                let check = Check::fail(
                    "commuting_maps",
                    vec![i + 1, j + 1],
                    defect.column(j).coords,
                );
                return Ok(Report::single(check));
            }
        }
    }
    Ok(Report::single(Check::pass("commuting_maps")))
}

/// Both twisting maps are endomorphisms of every product present.
pub fn check_multiplicativity(a: &BiHomAlgebra) -> Result<Report> {
    let products: Vec<(&str, &BilinearMap)> =
        [("mu", a.mu.as_ref()), ("bracket", a.bracket.as_ref())]
            .into_iter()
            .filter_map(|(name, p)| p.map(|p| (name, p)))
            .collect();
    for (pname, product) in &products {
        for (mname, map) in [("alpha", &a.alpha), ("beta", &a.beta)] {
            for i in 0..a.dim {
                for j in 0..a.dim {
                    let lhs = map.apply(&product.basis_product(i, j))?;
                    let rhs = product.apply(&map.column(i), &map.column(j))?;
                    let res = lhs.sub(&rhs);
                    if !res.is_zero() {
                        let check = Check::fail("multiplicativity", vec![i + 1, j + 1], res.coords)
                            .with_detail(format!("{mname} with {pname}"));
                        return Ok(Report::single(check));
                    }
                }
            }
        }
    }
    Ok(Report::single(Check::pass("multiplicativity")))
}

/// mu(alpha(x), mu(y, z)) = mu(mu(x, y), beta(z))
pub fn check_bihom_associativity(a: &BiHomAlgebra) -> Result<Report> {
    let mu = a.mu()?;
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let lhs = mu.apply(&a.alpha_basis(i), &mu.basis_product(j, k))?;
                let rhs = mu.apply(&mu.basis_product(i, j), &a.beta_basis(k))?;
                let res = lhs.sub(&rhs);
                if !res.is_zero() {
                    return Ok(Report::single(Check::fail(
                        "bihom_associativity",
                        vec![i + 1, j + 1, k + 1],
                        res.coords,
                    )));
                }
            }
        }
    }
    Ok(Report::single(Check::pass("bihom_associativity")))
}

/// mu(beta(x), alpha(y)) = mu(beta(y), alpha(x))
pub fn check_bihom_commutativity(a: &BiHomAlgebra) -> Result<Report> {
    let mu = a.mu()?;
    for i in 0..a.dim {
        for j in 0..a.dim {
            let lhs = mu.apply(&a.beta_basis(i), &a.alpha_basis(j))?;
            let rhs = mu.apply(&a.beta_basis(j), &a.alpha_basis(i))?;
            let res = lhs.sub(&rhs);
            if !res.is_zero() {
                return Ok(Report::single(Check::fail(
                    "bihom_commutativity",
                    vec![i + 1, j + 1],
                    res.coords,
                )));
            }
        }
    }
    Ok(Report::single(Check::pass("bihom_commutativity")))
}

/// {beta(x), alpha(y)} + {beta(y), alpha(x)} = 0, including x = y.
pub fn check_bihom_skew_symmetry(a: &BiHomAlgebra) -> Result<Report> {
    let bk = a.bracket()?;
    for i in 0..a.dim {
        for j in 0..a.dim {
            let lhs = bk.apply(&a.beta_basis(i), &a.alpha_basis(j))?;
            let rhs = bk.apply(&a.beta_basis(j), &a.alpha_basis(i))?;
            let res = lhs.add(&rhs);
            if !res.is_zero() {
                return Ok(Report::single(Check::fail(
                    "bihom_skew_symmetry",
                    vec![i + 1, j + 1],
                    res.coords,
                )));
            }
        }
    }
    Ok(Report::single(Check::pass("bihom_skew_symmetry")))
}

/// Cyclic sum of {beta^2(x), {beta(y), alpha(z)}} vanishes.
pub fn check_bihom_jacobi(a: &BiHomAlgebra) -> Result<Report> {
    let bk = a.bracket()?;
    let beta2 = a.beta.compose(&a.beta)?;
    let term = |x: usize, y: usize, z: usize| -> Result<Vector> {
        let inner = bk.apply(&a.beta_basis(y), &a.alpha_basis(z))?;
        bk.apply(&beta2.column(x), &inner)
    };
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let res = term(i, j, k)?.add(&term(j, k, i)?).add(&term(k, i, j)?);
                if !res.is_zero() {
                    return Ok(Report::single(Check::fail(
                        "bihom_jacobi",
                        vec![i + 1, j + 1, k + 1],
                        res.coords,
                    )));
                }
            }
        }
    }
    Ok(Report::single(Check::pass("bihom_jacobi")))
}

/// Rearranged Jacobi identity for bijective alpha:
/// [b^2 x, [b y, a z]] = [[a^-1 b^2 x, b y], a b z] + [b^2 y, [b x, a z]]
pub fn check_jacobi_regular_form(a: &BiHomAlgebra) -> Result<Report> {
    let bk = a.bracket()?;
    let alpha_inv = a.alpha.invert()?;
    let beta2 = a.beta.compose(&a.beta)?;
    let ainv_b2 = alpha_inv.compose(&beta2)?;
    let ab = a.alpha.compose(&a.beta)?;
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let lhs = bk.apply(
                    &beta2.column(i),
                    &bk.apply(&a.beta_basis(j), &a.alpha_basis(k))?,
                )?;
                let t1 = bk.apply(
                    &bk.apply(&ainv_b2.column(i), &a.beta_basis(j))?,
                    &ab.column(k),
                )?;
                let t2 = bk.apply(
                    &beta2.column(j),
                    &bk.apply(&a.beta_basis(i), &a.alpha_basis(k))?,
                )?;
                let res = lhs.sub(&t1).sub(&t2);
                if !res.is_zero() {
                    return Ok(Report::single(Check::fail(
                        "jacobi_regular_form",
                        vec![i + 1, j + 1, k + 1],
                        res.coords,
                    )));
                }
            }
        }
    }
    Ok(Report::single(Check::pass("jacobi_regular_form")))
}

/// {mu(x,y), alpha beta(z)} = mu({x, beta(z)}, alpha(y)) + mu(alpha(x), {y, alpha(z)})
pub fn check_bihom_leibniz(a: &BiHomAlgebra) -> Result<Report> {
    let mu = a.mu()?;
    let bk = a.bracket()?;
    let ab = a.alpha.compose(&a.beta)?;
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let lhs = bk.apply(&mu.basis_product(i, j), &ab.column(k))?;
                let t1 = mu.apply(&bk.apply(&a.basis(i), &a.beta_basis(k))?, &a.alpha_basis(j))?;
                let t2 = mu.apply(
                    &a.alpha_basis(i),
                    &bk.apply(&a.basis(j), &a.alpha_basis(k))?,
                )?;
                let res = lhs.sub(&t1).sub(&t2);
                if !res.is_zero() {
                    return Ok(Report::single(Check::fail(
                        "bihom_leibniz",
                        vec![i + 1, j + 1, k + 1],
                        res.coords,
                    )));
                }
            }
        }
    }
    Ok(Report::single(Check::pass("bihom_leibniz")))
}

/// The BiHom-associator as(x,y,z) = mu(mu(x,y), beta(z)) - mu(alpha(x), mu(y,z)).
pub fn bihom_associator(a: &BiHomAlgebra, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
    let mu = a.mu()?;
    let lhs = mu.apply(&mu.apply(x, y)?, &a.beta.apply(z)?)?;
    let rhs = mu.apply(&a.alpha.apply(x)?, &mu.apply(y, z)?)?;
    Ok(lhs.sub(&rhs))
}

/// Admissibility: as(beta(x), alpha(y), alpha^2(z)) equals one third of
/// the four-term right-hand side; when the algebra is regular the
/// equivalent untwisted-argument form is checked as well.
pub fn check_admissible(a: &BiHomAlgebra) -> Result<Report> {
    let mu = a.mu()?;
    let params = &a.params;
    let third = Scalar::constant(params, rat(1, 3));
    let alpha2 = a.alpha.compose(&a.alpha)?;
    let ab = a.alpha.compose(&a.beta)?;
    let beta2 = a.beta.compose(&a.beta)?;
    let alpha2_beta = alpha2.compose(&a.beta)?;

    let mut report = Report::new();
    let mut first_fail = None;
    'outer: for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let bx = a.beta_basis(i);
                let ay = a.alpha_basis(j);
                let a2z = alpha2.column(k);
                let lhs = bihom_associator(a, &bx, &ay, &a2z)?;
                let t1 = mu.apply(&mu.apply(&bx, &ab.column(k))?, &alpha2.column(j))?;
                let t2 = mu.apply(
                    &mu.apply(&beta2.column(k), &a.alpha_basis(i))?,
                    &alpha2.column(j),
                )?;
                let t3 = mu.apply(
                    &mu.apply(&a.beta_basis(j), &ab.column(k))?,
                    &alpha2.column(i),
                )?;
                let t4 = mu.apply(
                    &mu.apply(&a.beta_basis(j), &a.alpha_basis(i))?,
                    &alpha2_beta.column(k),
                )?;
                let rhs = t1.sub(&t2).add(&t3).sub(&t4).scale(&third);
                let res = lhs.sub(&rhs);
                if !res.is_zero() {
                    first_fail = Some((vec![i + 1, j + 1, k + 1], res.coords));
                    break 'outer;
                }
            }
        }
    }
    report.push(match first_fail {
        None => Check::pass("admissibility"),
        Some((w, r)) => Check::fail("admissibility", w, r),
    });

    if a.is_regular() {
        let alpha_inv = a.alpha.invert()?;
        let beta_inv = a.beta.invert()?;
        let ainv_b = alpha_inv.compose(&a.beta)?;
        let ainv2_b2 = alpha_inv.compose(&alpha_inv)?.compose(&beta2)?;
        let a_binv = a.alpha.compose(&beta_inv)?;
        let a2_binv = alpha2.compose(&beta_inv)?;
        let mut first_fail = None;
        'outer2: for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    let lhs = bihom_associator(a, &a.basis(i), &a.basis(j), &a.basis(k))?;
                    let t1 = mu.apply(
                        &mu.apply(&a.basis(i), &ainv_b.column(k))?,
                        &a.alpha_basis(j),
                    )?;
                    let t2 = mu.apply(
                        &mu.apply(&ainv2_b2.column(k), &a_binv.column(i))?,
                        &a.alpha_basis(j),
                    )?;
                    let t3 = mu.apply(
                        &mu.apply(&ainv_b.column(j), &ainv_b.column(k))?,
                        &a2_binv.column(i),
                    )?;
                    let t4 = mu.apply(
                        &mu.apply(&ainv_b.column(j), &a_binv.column(i))?,
                        &a.beta_basis(k),
                    )?;
                    let rhs = t1.sub(&t2).add(&t3).sub(&t4).scale(&third);
                    let res = lhs.sub(&rhs);
                    if !res.is_zero() {
                        first_fail = Some((vec![i + 1, j + 1, k + 1], res.coords));
                        break 'outer2;
                    }
                }
            }
        }
        report.push(match first_fail {
            None => Check::pass("admissibility_regular_form"),
            Some((w, r)) => Check::fail("admissibility_regular_form", w, r),
        });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismMode {
    Full,
    Weak,
}

/// f is a (weak) morphism from `a` to `b`: compatible with every product
/// present, and in full mode also intertwines the twisting maps.
pub fn check_morphism(
    f: &LinearMap,
    a: &BiHomAlgebra,
    b: &BiHomAlgebra,
    mode: MorphismMode,
) -> Result<Report> {
    if f.dim != a.dim || a.dim != b.dim {
        return Err(Error::DimensionMismatch(format!(
            "morphism check needs equal dimensions, got f:{}, source:{}, target:{}",
            f.dim, a.dim, b.dim
        )));
    }
    let mut report = Report::new();
    let pairs: [(&str, Option<&BilinearMap>, Option<&BilinearMap>); 2] = [
        ("morphism_bracket", a.bracket.as_ref(), b.bracket.as_ref()),
        ("morphism_mu", a.mu.as_ref(), b.mu.as_ref()),
    ];
    for (name, pa, pb) in pairs {
        let Some(pa) = pa else { continue };
        let Some(pb) = pb else {
            return Err(Error::KindMismatch(format!(
                "{name}: source has the product but the target does not"
            )));
        };
        let mut check = Check::pass(name);
        'scan: for i in 0..a.dim {
            for j in 0..a.dim {
                let lhs = f.apply(&pa.basis_product(i, j))?;
                let rhs = pb.apply(&f.column(i), &f.column(j))?;
                let res = lhs.sub(&rhs);
                if !res.is_zero() {
                    check = Check::fail(name, vec![i + 1, j + 1], res.coords);
                    break 'scan;
                }
            }
        }
        report.push(check);
    }
    if mode == MorphismMode::Full {
        for (name, ma, mb) in [
            ("morphism_alpha", &a.alpha, &b.alpha),
            ("morphism_beta", &a.beta, &b.beta),
        ] {
            let defect = f.compose(ma)?.sub(&mb.compose(f)?);
            let mut check = Check::pass(name);
            'scan2: for i in 0..a.dim {
                for j in 0..a.dim {
                    if !defect.entries[i][j].is_zero() {
                        check = Check::fail(name, vec![i + 1, j + 1], defect.column(j).coords);
                        break 'scan2;
                    }
                }
            }
            report.push(check);
        }
    }
    Ok(report)
}

/// All seven defining identities, in order. BiHom-commutativity is
/// informational: a failure flips the classification label instead of
/// the overall verdict.
pub fn verify_bihom_poisson(a: &BiHomAlgebra) -> Result<Report> {
    if a.kind != Kind::Poisson {
        return Err(Error::KindMismatch(format!(
            "verify_bihom_poisson requires kind=poisson, got {}",
            a.kind
        )));
    }
    let mut report = Report::new();
    report.merge(check_commuting_maps(a)?);
    report.merge(check_multiplicativity(a)?);
    report.merge(check_bihom_associativity(a)?);
    let mut comm = check_bihom_commutativity(a)?;
    for c in &mut comm.checks {
        c.informational = true;
    }
    let commutative = comm
        .checks
        .iter()
        .all(|c| c.verdict == crate::report::Verdict::Pass);
    report.merge(comm);
    report.merge(check_bihom_skew_symmetry(a)?);
    report.merge(check_bihom_jacobi(a)?);
    report.merge(check_bihom_leibniz(a)?);
    if report.passed() {
        report.label = Some(if commutative {
            "BiHom-Poisson".to_string()
        } else {
            "non-BiHom-commutative BiHom-Poisson".to_string()
        });
    }
    Ok(report)
}

pub fn verify_lie(a: &BiHomAlgebra) -> Result<Report> {
    let mut report = Report::new();
    report.merge(check_commuting_maps(a)?);
    report.merge(check_multiplicativity(a)?);
    report.merge(check_bihom_skew_symmetry(a)?);
    report.merge(check_bihom_jacobi(a)?);
    Ok(report)
}

pub fn verify_associative(a: &BiHomAlgebra) -> Result<Report> {
    let mut report = Report::new();
    report.merge(check_commuting_maps(a)?);
    report.merge(check_multiplicativity(a)?);
    report.merge(check_bihom_associativity(a)?);
    let mut comm = check_bihom_commutativity(a)?;
    for c in &mut comm.checks {
        c.informational = true;
    }
    report.merge(comm);
    Ok(report)
}

/// Kind-appropriate verification.
pub fn verify_algebra(a: &BiHomAlgebra) -> Result<Report> {
    match a.kind {
        Kind::Poisson => verify_bihom_poisson(a),
        Kind::Lie => verify_lie(a),
        Kind::Associative => verify_associative(a),
        Kind::Plain => {
            let mut report = Report::new();
            report.merge(check_commuting_maps(a)?);
            report.merge(check_multiplicativity(a)?);
            Ok(report)
        }
    }
}

/// Run one named check; used by the CLI `--checks` filter.
pub fn run_named_check(a: &BiHomAlgebra, name: &str) -> Result<Report> {
    match name {
        "commuting_maps" => check_commuting_maps(a),
        "multiplicativity" => check_multiplicativity(a),
        "bihom_associativity" => check_bihom_associativity(a),
        "bihom_commutativity" => check_bihom_commutativity(a),
        "bihom_skew_symmetry" => check_bihom_skew_symmetry(a),
        "bihom_jacobi" => check_bihom_jacobi(a),
        "bihom_leibniz" => check_bihom_leibniz(a),
        "jacobi_regular_form" => check_jacobi_regular_form(a),
        "admissibility" => check_admissible(a),
        other => Err(Error::InvalidDocument(format!("unknown check `{other}`"))),
    }
}
