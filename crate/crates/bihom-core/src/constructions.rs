//! Building new algebras from old ones: commutator bracket, twists,
//! direct sums, tensor products, polarization and depolarization.

use std::collections::BTreeSet;

use crate::algebra::{BiHomAlgebra, BilinearMap, Kind, LinearMap};
use crate::axioms::{check_bihom_commutativity, check_morphism, MorphismMode};
use crate::error::{Error, Result};
use crate::poly::{rat, Params};
use crate::report::Verdict;
use crate::scalar::Scalar;

/// {x, y} = mu(x, y) - mu(alpha^-1 beta(y), alpha beta^-1(x)) on a
/// regular algebra; the result keeps mu and the maps and is tagged
/// poisson.
pub fn commutator_bracket(a: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    let mu = a.mu()?;
    if !a.is_regular() {
        return Err(Error::Singular);
    }
    let ainv_b = a.alpha.invert()?.compose(&a.beta)?;
    let a_binv = a.alpha.compose(&a.beta.invert()?)?;
    let mut bracket = BilinearMap::zero(&a.params, a.dim);
    for i in 0..a.dim {
        for j in 0..a.dim {
            let twisted = mu.apply(&ainv_b.column(j), &a_binv.column(i))?;
            let res = mu.basis_product(i, j).sub(&twisted);
            bracket.constants[i][j] = res.coords;
        }
    }
    Ok(BiHomAlgebra {
        bracket: Some(bracket),
        kind: Kind::Poisson,
        ..a.clone()
    })
}

/// The raw twist: every product p is replaced by p(a_new(x), b_new(y))
/// and the twisting maps become a_new ∘ alpha and b_new ∘ beta. No
/// morphism hypotheses are checked here.
pub fn yau_twist_unchecked(
    p: &BiHomAlgebra,
    alpha_new: &LinearMap,
    beta_new: &LinearMap,
) -> Result<BiHomAlgebra> {
    let twist = |product: &BilinearMap| -> Result<BilinearMap> {
        let mut out = BilinearMap::zero(&p.params, p.dim);
        for i in 0..p.dim {
            for j in 0..p.dim {
                out.constants[i][j] = product
                    .apply(&alpha_new.column(i), &beta_new.column(j))?
                    .coords;
            }
        }
        Ok(out)
    };
    Ok(BiHomAlgebra {
        dim: p.dim,
        params: p.params.clone(),
        assumptions_nonzero: p.assumptions_nonzero.clone(),
        mu: p.mu.as_ref().map(&twist).transpose()?,
        bracket: p.bracket.as_ref().map(&twist).transpose()?,
        alpha: alpha_new.compose(&p.alpha)?,
        beta: beta_new.compose(&p.beta)?,
        kind: p.kind,
    })
}

/// Twist along two commuting weak morphisms. The maps must commute with
/// each other and with the existing twisting maps, and each must be a
/// weak morphism of every product present.
pub fn yau_twist(
    p: &BiHomAlgebra,
    alpha_new: &LinearMap,
    beta_new: &LinearMap,
) -> Result<BiHomAlgebra> {
    let pairs: [(&str, &LinearMap, &str, &LinearMap); 5] = [
        ("alpha_new", alpha_new, "beta_new", beta_new),
        ("alpha_new", alpha_new, "alpha", &p.alpha),
        ("alpha_new", alpha_new, "beta", &p.beta),
        ("beta_new", beta_new, "alpha", &p.alpha),
        ("beta_new", beta_new, "beta", &p.beta),
    ];
    for (n1, m1, n2, m2) in pairs {
        if m1.compose(m2)? != m2.compose(m1)? {
            return Err(Error::NonCommutingMaps(format!("{n1} and {n2}")));
        }
    }
    for (name, map) in [("alpha_new", alpha_new), ("beta_new", beta_new)] {
        let report = check_morphism(map, p, p, MorphismMode::Weak)?;
        if let Some(c) = report.checks.iter().find(|c| c.verdict == Verdict::Fail) {
            return Err(Error::NotAMorphism {
                map: name.into(),
                condition: c.identity.clone(),
            });
        }
    }
    yau_twist_unchecked(p, alpha_new, beta_new)
}

/// Combine parameter lists: shared when identical, concatenated when
/// disjoint, otherwise renamed apart with `_L`/`_R` suffixes.
fn merge_params(
    a: &BiHomAlgebra,
    b: &BiHomAlgebra,
) -> (Params, Vec<usize>, Vec<usize>, BTreeSet<String>) {
    let left = a.params.names();
    let right = b.params.names();
    if left == right {
        let map: Vec<usize> = (0..left.len()).collect();
        let assumptions = a
            .assumptions_nonzero
            .union(&b.assumptions_nonzero)
            .cloned()
            .collect();
        return (a.params.clone(), map.clone(), map, assumptions);
    }
    let disjoint = left.iter().all(|n| !right.contains(n));
    let (lnames, rnames): (Vec<String>, Vec<String>) = if disjoint {
        (left.to_vec(), right.to_vec())
    } else {
        (
            left.iter().map(|n| format!("{n}_L")).collect(),
            right.iter().map(|n| format!("{n}_R")).collect(),
        )
    };
    let mut names = lnames.clone();
    names.extend(rnames.clone());
    let params = Params::new(names);
    let map_a: Vec<usize> = (0..left.len()).collect();
    let map_b: Vec<usize> = (0..right.len()).map(|i| left.len() + i).collect();
    let mut assumptions = BTreeSet::new();
    for n in &a.assumptions_nonzero {
        let idx = a.params.index_of(n).expect("assumption names a parameter");
        assumptions.insert(lnames[idx].clone());
    }
    for n in &b.assumptions_nonzero {
        let idx = b.params.index_of(n).expect("assumption names a parameter");
        assumptions.insert(rnames[idx].clone());
    }
    (params, map_a, map_b, assumptions)
}

/// Block-diagonal sum: products and maps act componentwise, cross-block
/// products vanish.
pub fn direct_sum(a: &BiHomAlgebra, b: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch(format!(
            "direct sum of kind={} with kind={}",
            a.kind, b.kind
        )));
    }
    let (params, map_a, map_b, assumptions) = merge_params(a, b);
    let dim = a.dim + b.dim;
    let sum_product = |pa: Option<&BilinearMap>, pb: Option<&BilinearMap>| -> Option<BilinearMap> {
        match (pa, pb) {
            (None, None) => None,
            _ => {
                let mut out = BilinearMap::zero(&params, dim);
                if let Some(pa) = pa {
                    let pa = pa.map_params(&params, &map_a);
                    for i in 0..a.dim {
                        for j in 0..a.dim {
                            for k in 0..a.dim {
                                out.constants[i][j][k] = pa.constants[i][j][k].clone();
                            }
                        }
                    }
                }
                if let Some(pb) = pb {
                    let pb = pb.map_params(&params, &map_b);
                    for i in 0..b.dim {
                        for j in 0..b.dim {
                            for k in 0..b.dim {
                                out.constants[a.dim + i][a.dim + j][a.dim + k] =
                                    pb.constants[i][j][k].clone();
                            }
                        }
                    }
                }
                Some(out)
            }
        }
    };
    Ok(BiHomAlgebra {
        dim,
        params: params.clone(),
        assumptions_nonzero: assumptions,
        mu: sum_product(a.mu.as_ref(), b.mu.as_ref()),
        bracket: sum_product(a.bracket.as_ref(), b.bracket.as_ref()),
        alpha: a
            .alpha
            .map_params(&params, &map_a)
            .direct_sum(&b.alpha.map_params(&params, &map_b)),
        beta: a
            .beta
            .map_params(&params, &map_a)
            .direct_sum(&b.beta.map_params(&params, &map_b)),
        kind: a.kind,
    })
}

/// Tensor product of a poisson algebra with a BiHom-commutative
/// associative algebra. Basis ordering is row-major: pair (i, j) maps to
/// index i*dim_b + j.
pub fn tensor_product(a: &BiHomAlgebra, b: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    if a.kind != Kind::Poisson {
        return Err(Error::KindMismatch(format!(
            "tensor product needs a poisson left factor, got {}",
            a.kind
        )));
    }
    if b.kind != Kind::Associative {
        return Err(Error::KindMismatch(format!(
            "tensor product needs an associative right factor, got {}",
            b.kind
        )));
    }
    if !check_bihom_commutativity(b)?.passed() {
        return Err(Error::CommutativityRequired);
    }
    let (params, map_a, map_b, assumptions) = merge_params(a, b);
    let na = a.dim;
    let nb = b.dim;
    let dim = na * nb;
    let mu_b = b.mu()?.map_params(&params, &map_b);
    let combine = |left: &BilinearMap| -> BilinearMap {
        let left = left.map_params(&params, &map_a);
        let mut out = BilinearMap::zero(&params, dim);
        for i in 0..na {
            for j in 0..nb {
                for k in 0..na {
                    for l in 0..nb {
                        for p in 0..na {
                            for q in 0..nb {
                                out.constants[i * nb + j][k * nb + l][p * nb + q] =
                                    left.constants[i][k][p].mul(&mu_b.constants[j][l][q]);
                            }
                        }
                    }
                }
            }
        }
        out
    };
    let mu = combine(a.mu()?);
    let bracket = combine(a.bracket()?);
    Ok(BiHomAlgebra {
        dim,
        params: params.clone(),
        assumptions_nonzero: assumptions,
        mu: Some(mu),
        bracket: Some(bracket),
        alpha: a
            .alpha
            .map_params(&params, &map_a)
            .kron(&b.alpha.map_params(&params, &map_b)),
        beta: a
            .beta
            .map_params(&params, &map_a)
            .kron(&b.beta.map_params(&params, &map_b)),
        kind: Kind::Poisson,
    })
}

/// Split one product into its halved skew and symmetric twisted parts:
/// {x,y} = (mu(x,y) - mu(ab(y), ba(x)))/2 and x.y = (mu(x,y) + mu(ab(y), ba(x)))/2
/// with ab = alpha^-1 beta and ba = alpha beta^-1.
pub fn polarize(a: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    if !matches!(a.kind, Kind::Plain | Kind::Associative) {
        return Err(Error::KindMismatch(format!(
            "polarization needs a single-product algebra, got kind={}",
            a.kind
        )));
    }
    let mu = a.mu()?;
    if !a.is_regular() {
        return Err(Error::Singular);
    }
    let half = Scalar::constant(&a.params, rat(1, 2));
    let ainv_b = a.alpha.invert()?.compose(&a.beta)?;
    let a_binv = a.alpha.compose(&a.beta.invert()?)?;
    let mut bracket = BilinearMap::zero(&a.params, a.dim);
    let mut product = BilinearMap::zero(&a.params, a.dim);
    for i in 0..a.dim {
        for j in 0..a.dim {
            let plain = mu.basis_product(i, j);
            let twisted = mu.apply(&ainv_b.column(j), &a_binv.column(i))?;
            bracket.constants[i][j] = plain.sub(&twisted).scale(&half).coords;
            product.constants[i][j] = plain.add(&twisted).scale(&half).coords;
        }
    }
    Ok(BiHomAlgebra {
        mu: Some(product),
        bracket: Some(bracket),
        kind: Kind::Poisson,
        ..a.clone()
    })
}

/// Recombine bracket and product into the single product bracket + mu.
pub fn depolarize(p: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    if p.kind != Kind::Poisson {
        return Err(Error::KindMismatch(format!(
            "depolarization needs kind=poisson, got {}",
            p.kind
        )));
    }
    let merged = p.bracket()?.add(p.mu()?);
    Ok(BiHomAlgebra {
        mu: Some(merged),
        bracket: None,
        kind: Kind::Plain,
        ..p.clone()
    })
}
