//! Seeded random generators: scalars for kernel property tests, and
//! small random algebras (filtered through the numeric oracle) for the
//! construction-theorem exercises.

use crate::algebra::{BiHomAlgebra, BilinearMap, Kind, LinearMap};
use crate::constructions::yau_twist;
use crate::error::Result;
use crate::numeric::{NumericAlgebra, Tensor};
use crate::poly::{rat_int, Params, Polynomial, Rational};
use crate::rng::Rng;
use crate::scalar::Scalar;

pub fn random_polynomial(rng: &mut Rng, params: &Params, max_terms: usize) -> Polynomial {
    let mut acc = Polynomial::zero(params);
    let terms = rng.below(max_terms + 1);
    for _ in 0..terms {
        let mut mono = Polynomial::constant(params, rat_int(rng.int_in(-9, 9)));
        for v in 0..params.len() {
            let e = rng.below(3) as u32;
            if e > 0 {
                mono = mono.mul(&Polynomial::var(params, v).pow(e));
            }
        }
        acc = acc.add(&mono);
    }
    acc
}

/// Random canonical scalar; the denominator is resampled until nonzero.
pub fn random_scalar(rng: &mut Rng, params: &Params) -> Scalar {
    let num = random_polynomial(rng, params, 3);
    let mut den = random_polynomial(rng, params, 2);
    while den.is_zero() {
        den = random_polynomial(rng, params, 2);
    }
    Scalar::new(num, den).expect("nonzero denominator")
}

/// Random square matrix with small integer and parameter entries,
/// resampled until the determinant is a nonzero scalar.
pub fn random_invertible_map(rng: &mut Rng, params: &Params, dim: usize) -> LinearMap {
    loop {
        let mut m = LinearMap::zero(params, dim);
        for i in 0..dim {
            for j in 0..dim {
                m.entries[i][j] = if !params.is_empty() && rng.chance(1, 3) {
                    Scalar::param(params, rng.below(params.len()))
                } else {
                    Scalar::integer(params, rng.int_in(-3, 3))
                };
            }
        }
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Lift a numeric structure into a constant symbolic algebra of the
/// given kind.
pub fn algebra_from_numeric(n: &NumericAlgebra, kind: Kind) -> BiHomAlgebra {
    let params = Params::empty();
    let tensor = |t: &Tensor| -> BilinearMap {
        let mut out = BilinearMap::zero(&params, n.dim);
        for i in 0..n.dim {
            for j in 0..n.dim {
                for k in 0..n.dim {
                    out.constants[i][j][k] = Scalar::constant(&params, t[i][j][k].clone());
                }
            }
        }
        out
    };
    let map = |m: &crate::numeric::Matrix| -> LinearMap {
        let mut out = LinearMap::zero(&params, n.dim);
        for i in 0..n.dim {
            for j in 0..n.dim {
                out.entries[i][j] = Scalar::constant(&params, m[i][j].clone());
            }
        }
        out
    };
    let keep_mu = matches!(kind, Kind::Poisson | Kind::Associative | Kind::Plain);
    let keep_bracket = matches!(kind, Kind::Poisson | Kind::Lie);
    let mu = n.mu.as_ref().filter(|_| keep_mu).map(&tensor);
    let bracket = n.bracket.as_ref().filter(|_| keep_bracket).map(&tensor);
    let alpha = map(&n.alpha);
    let beta = map(&n.beta);
    BiHomAlgebra {
        dim: n.dim,
        params,
        assumptions_nonzero: Default::default(),
        mu,
        bracket,
        alpha,
        beta,
        kind,
    }
}

fn numeric_id(dim: usize) -> crate::numeric::Matrix {
    let mut m = vec![vec![Rational::from_integer(0.into()); dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::from_integer(1.into());
    }
    m
}

fn zero_tensor(dim: usize) -> Tensor {
    vec![vec![vec![Rational::from_integer(0.into()); dim]; dim]; dim]
}

/// Random 2-dimensional ordinary Poisson algebra: symmetric product,
/// skew bracket, coefficients from the grid, filtered through the
/// numeric oracle with identity maps.
pub fn random_ordinary_poisson_2d(rng: &mut Rng, grid: &[i64]) -> BiHomAlgebra {
    for _ in 0..200_000 {
        let mut mu = zero_tensor(2);
        // a zero product accepts any Lie bracket, so suppressing mu now
        // and then keeps nontrivial brackets in the sample
        if !rng.chance(1, 4) {
            for k in 0..2 {
                mu[0][0][k] = rat_int(*rng.pick(grid));
                mu[1][1][k] = rat_int(*rng.pick(grid));
                let c = rat_int(*rng.pick(grid));
                mu[0][1][k] = c.clone();
                mu[1][0][k] = c;
            }
        }
        let mut bracket = zero_tensor(2);
        for k in 0..2 {
            let d = rat_int(*rng.pick(grid));
            bracket[0][1][k] = d.clone();
            bracket[1][0][k] = -d;
        }
        let candidate = NumericAlgebra {
            dim: 2,
            mu: Some(mu),
            bracket: Some(bracket),
            alpha: numeric_id(2),
            beta: numeric_id(2),
        };
        if crate::numeric::oracle_passes_quick(&candidate).unwrap_or(false) {
            return algebra_from_numeric(&candidate, Kind::Poisson);
        }
    }
    unreachable!("the zero structure always passes the oracle")
}

/// Random 2-dimensional ordinary associative algebra (not necessarily
/// commutative), with identity maps.
pub fn random_ordinary_associative_2d(rng: &mut Rng, grid: &[i64]) -> BiHomAlgebra {
    for _ in 0..200_000 {
        let mut mu = zero_tensor(2);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    mu[i][j][k] = rat_int(*rng.pick(grid));
                }
            }
        }
        let candidate = NumericAlgebra {
            dim: 2,
            mu: Some(mu),
            bracket: None,
            alpha: numeric_id(2),
            beta: numeric_id(2),
        };
        let assoc = crate::numeric::run_identity(&candidate, "bihom_associativity")
            .ok()
            .flatten()
            .map(|c| c.verdict == crate::report::Verdict::Pass)
            .unwrap_or(false);
        if assoc {
            return algebra_from_numeric(&candidate, Kind::Associative);
        }
    }
    unreachable!("the zero product is associative")
}

/// Random diagonal pair of weak morphisms of every product of `a`
/// (entries from the grid; identity always qualifies so the loop
/// terminates).
pub fn random_weak_morphism_diag_pair(
    a: &BiHomAlgebra,
    rng: &mut Rng,
    grid: &[i64],
) -> Result<(LinearMap, LinearMap)> {
    let numeric = crate::numeric::instantiate(a, &[])?;
    let is_weak_morphism = |s: &[Rational; 2]| -> bool {
        for t in [&numeric.mu, &numeric.bracket].into_iter().flatten() {
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        // s_k c_ijk = s_i s_j c_ijk
                        let lhs = &s[k] * &t[i][j][k];
                        let rhs = &s[i] * &s[j] * &t[i][j][k];
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    };
    let mut draw = || -> LinearMap {
        loop {
            let s = [rat_int(*rng.pick(grid)), rat_int(*rng.pick(grid))];
            if is_weak_morphism(&s) {
                return LinearMap::diagonal(
                    &a.params,
                    &[
                        Scalar::constant(&a.params, s[0].clone()),
                        Scalar::constant(&a.params, s[1].clone()),
                    ],
                );
            }
            // bias toward termination: identity always works
            if rng.chance(1, 8) {
                return LinearMap::identity(&a.params, 2);
            }
        }
    };
    Ok((draw(), draw()))
}

/// Random regular BiHom-associative algebra: a random ordinary
/// associative algebra Yau-twisted by diagonal maps with symbolic
/// nonzero entries w^g_i, v^g_i along an integer grading of the product.
pub fn random_graded_bihom_associative_2d(rng: &mut Rng) -> Result<BiHomAlgebra> {
    const GRADINGS: [(i64, i64); 8] = [
        (0, 1),
        (1, 0),
        (1, 2),
        (2, 1),
        (1, -1),
        (-1, 1),
        (2, 3),
        (3, 2),
    ];
    loop {
        let base = random_ordinary_associative_2d(rng, &[-1, 0, 1, 2]);
        let mu = base.mu()?;
        let admits = |g: (i64, i64)| -> bool {
            let gr = [g.0, g.1];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        if !mu.constants[i][j][k].is_zero() && gr[i] + gr[j] != gr[k] {
                            return false;
                        }
                    }
                }
            }
            true
        };
        let viable: Vec<(i64, i64)> = GRADINGS.into_iter().filter(|g| admits(*g)).collect();
        if viable.is_empty() {
            continue;
        }
        let grading = *rng.pick(&viable);
        let params = Params::new(["w", "v"]);
        let with_params = BiHomAlgebra {
            dim: 2,
            params: params.clone(),
            assumptions_nonzero: ["w", "v"].iter().map(|s| s.to_string()).collect(),
            mu: Some(mu.map_params(&params, &[])),
            bracket: None,
            alpha: LinearMap::identity(&params, 2),
            beta: LinearMap::identity(&params, 2),
            kind: Kind::Associative,
        };
        let power = |p: &Params, var: usize, g: i64| -> Scalar {
            let base = Scalar::param(p, var);
            if g >= 0 {
                base.pow(g as u32)
            } else {
                base.pow((-g) as u32).inv().expect("parameter is nonzero")
            }
        };
        let alpha = LinearMap::diagonal(
            &params,
            &[power(&params, 0, grading.0), power(&params, 0, grading.1)],
        );
        let beta = LinearMap::diagonal(
            &params,
            &[power(&params, 1, grading.0), power(&params, 1, grading.1)],
        );
        return yau_twist(&with_params, &alpha, &beta);
    }
}

/// Random 2-dimensional regular plain algebra with commuting
/// multiplicative maps: either identity maps with an arbitrary product,
/// or an invertible diagonal pair with the product filtered for
/// multiplicativity.
pub fn random_plain_regular_2d(rng: &mut Rng) -> BiHomAlgebra {
    let coeffs = [-1i64, 0, 1, 2];
    let map_entries = [1i64, -1, 2];
    for _ in 0..200_000 {
        let identity_maps = rng.chance(2, 3);
        let (alpha, beta) = if identity_maps {
            (numeric_id(2), numeric_id(2))
        } else {
            let mut d = |_: ()| {
                let mut m = numeric_id(2);
                m[0][0] = rat_int(*rng.pick(&map_entries));
                m[1][1] = rat_int(*rng.pick(&map_entries));
                m
            };
            (d(()), d(()))
        };
        let mut mu = zero_tensor(2);
        for plane in mu.iter_mut() {
            for row in plane.iter_mut() {
                for e in row.iter_mut() {
                    *e = rat_int(*rng.pick(&coeffs));
                }
            }
        }
        let candidate = NumericAlgebra {
            dim: 2,
            mu: Some(mu),
            bracket: None,
            alpha,
            beta,
        };
        let ok = crate::numeric::run_identity(&candidate, "multiplicativity")
            .ok()
            .flatten()
            .map(|c| c.verdict == crate::report::Verdict::Pass)
            .unwrap_or(false);
        if ok {
            return algebra_from_numeric(&candidate, Kind::Plain);
        }
    }
    unreachable!("identity maps accept every product")
}

/// Random regular verified poisson algebra: an ordinary Poisson algebra,
/// optionally Yau-twisted by an invertible diagonal pair of weak
/// morphisms.
pub fn random_regular_verified_poisson_2d(rng: &mut Rng) -> Result<BiHomAlgebra> {
    let base = random_ordinary_poisson_2d(rng, &[-1, 0, 1, 2]);
    if rng.chance(1, 2) {
        return Ok(base);
    }
    // invertible entries only, so the twist stays regular
    let (alpha, beta) = random_weak_morphism_diag_pair(&base, rng, &[1, -1, 2])?;
    yau_twist(&base, &alpha, &beta)
}
