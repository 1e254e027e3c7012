//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Monomials are ordered graded-lexicographically over the declared
//! parameter list, which fixes leading terms and hence every canonical
//! form downstream. The gcd is a primitive subresultant remainder
//! sequence, recursing on the variable set through content/primitive-part
//! splitting.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The coefficient field: arbitrary-precision rationals.
pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Ordered list of parameter names, shared by every value of one algebra.
#[derive(Clone, Debug, Eq, Hash, PartialOrd, Ord)]
pub struct Params(Arc<Vec<String>>);

impl PartialEq for Params {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Params {
    pub fn new<I, S>(names: I) -> Params
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Params(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn empty() -> Params {
        Params(Arc::new(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Exponent vector; the length always matches the parameter list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise quotient, when it exists.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

/// Graded lexicographic order: total degree first, then lexicographic
/// with earlier parameters ranked higher.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    params: Params,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(params: &Params) -> Polynomial {
        Polynomial {
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: &Params) -> Polynomial {
        Polynomial::constant(params, Rational::one())
    }

    pub fn constant(params: &Params, c: Rational) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(params.len()), c);
        }
        Polynomial {
            params: params.clone(),
            terms,
        }
    }

    pub fn var(params: &Params, idx: usize) -> Polynomial {
        assert!(idx < params.len(), "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(params.len(), idx), Rational::one());
        Polynomial {
            params: params.clone(),
            terms,
        }
    }

    pub fn from_terms(params: &Params, terms: BTreeMap<Monomial, Rational>) -> Polynomial {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial {
            params: params.clone(),
            terms,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The value as a constant, if no parameter occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn used_vars(&self) -> BTreeSet<usize> {
        let mut set = BTreeSet::new();
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    set.insert(i);
                }
            }
        }
        set
    }

    fn assert_same_params(&self, other: &Polynomial) {
        assert!(
            self.params == other.params,
            "polynomials over different parameter lists"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_params(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(acc) => {
                    *acc += c;
                    if acc.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Polynomial {
            params: self.params.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_params(other);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(acc) => {
                        *acc += c;
                        if acc.is_zero() {
                            terms.remove(&m);
                        }
                    }
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            params: self.params.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.params);
        }
        Polynomial {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.params);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divide by the leading coefficient so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact multivariate division; `None` when the division is inexact.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.assert_same_params(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let (dm, dc) = divisor.leading().unwrap();
        let (dm, dc) = (dm.clone(), dc.clone());
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            let mut piece: BTreeMap<Monomial, Rational> = BTreeMap::new();
            piece.insert(qm.clone(), qc.clone());
            let piece = Polynomial {
                params: self.params.clone(),
                terms: piece,
            };
            rem = rem.sub(&piece.mul(divisor));
            quot.insert(qm, qc);
        }
        Some(Polynomial {
            params: self.params.clone(),
            terms: quot,
        })
    }

    /// Evaluate at a full assignment, indexed like the parameter list.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.params.len(), "point arity mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute rationals for a subset of the variables.
    pub fn partial_eval(&self, assign: &BTreeMap<usize, Rational>) -> Polynomial {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e = m.0.clone();
            for (&i, v) in assign {
                for _ in 0..e[i] {
                    coeff *= v;
                }
                e[i] = 0;
            }
            if coeff.is_zero() {
                continue;
            }
            let m = Monomial(e);
            match terms.get_mut(&m) {
                Some(acc) => {
                    *acc += coeff;
                    if acc.is_zero() {
                        terms.remove(&m);
                    }
                }
                None => {
                    terms.insert(m, coeff);
                }
            }
        }
        Polynomial {
            params: self.params.clone(),
            terms,
        }
    }

    /// The coefficient of `var^power`, as a polynomial with `var` erased.
    pub fn coeff_of(&self, var: usize, power: u32) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[var] == power {
                let mut e = m.0.clone();
                e[var] = 0;
                terms.insert(Monomial(e), c.clone());
            }
        }
        Polynomial {
            params: self.params.clone(),
            terms,
        }
    }

    /// Re-express over a new parameter list; `index_map[i]` is the new
    /// index of old variable `i`.
    pub fn map_params(&self, new_params: &Params, index_map: &[usize]) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; new_params.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                if exp > 0 {
                    e[index_map[i]] = exp;
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Polynomial {
            params: new_params.clone(),
            terms,
        }
    }
}

// ---------------------------------------------------------------------------
// gcd: primitive subresultant PRS
// ---------------------------------------------------------------------------

/// Univariate view: coefficients (index = power of the main variable) in
/// the polynomial ring over the remaining variables.
struct UniPoly {
    coeffs: Vec<Polynomial>,
}

impl UniPoly {
    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    fn lc(&self) -> &Polynomial {
        self.coeffs.last().expect("lc of zero polynomial")
    }

    fn scale(&self, c: &Polynomial) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|p| p.mul(c)).collect(),
        }
    }

    fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let params = self
            .coeffs
            .first()
            .or_else(|| other.coeffs.first())
            .map(|p| p.params().clone())
            .expect("sub of two zero polynomials");
        let zero = Polynomial::zero(&params);
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a.sub(b));
        }
        let mut out = UniPoly { coeffs };
        out.trim();
        out
    }

    /// `self * c * x^shift`
    fn shift_scale(&self, c: &Polynomial, shift: usize) -> UniPoly {
        let params = c.params().clone();
        let mut coeffs = vec![Polynomial::zero(&params); shift];
        coeffs.extend(self.coeffs.iter().map(|p| p.mul(c)));
        let mut out = UniPoly { coeffs };
        out.trim();
        out
    }

    fn exact_div_coeffs(&self, d: &Polynomial) -> UniPoly {
        UniPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.exact_div(d).expect("inexact subresultant division"))
                .collect(),
        }
    }
}

fn to_uni(p: &Polynomial, var: usize) -> UniPoly {
    let deg = p.degree_in(var);
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    for power in 0..=deg {
        coeffs.push(p.coeff_of(var, power));
    }
    let mut u = UniPoly { coeffs };
    u.trim();
    u
}

fn from_uni(u: &UniPoly, var: usize, params: &Params) -> Polynomial {
    let mut acc = Polynomial::zero(params);
    let x = Polynomial::var(params, var);
    for (power, coeff) in u.coeffs.iter().enumerate() {
        acc = acc.add(&coeff.mul(&x.pow(power as u32)));
    }
    acc
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let db = b.deg();
    let d = b.lc().clone();
    let mut r = UniPoly {
        coeffs: a.coeffs.clone(),
    };
    let mut e = (a.deg() - db + 1) as i64;
    while !r.is_zero() && r.deg() >= db {
        let lr = r.lc().clone();
        let k = r.deg() - db;
        r = r.scale(&d).sub(&b.shift_scale(&lr, k));
        e -= 1;
    }
    for _ in 0..e {
        r = r.scale(&d);
    }
    r
}

fn gcd_list(ps: &[Polynomial], params: &Params) -> Polynomial {
    let mut acc = Polynomial::zero(params);
    for p in ps {
        acc = gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Polynomial gcd, normalized so the leading coefficient is 1.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let params = a.params().clone();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a == b {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Polynomial::one(&params);
    }
    // Monomial fast path: the gcd is the common monomial factor.
    if a.num_terms() == 1 || b.num_terms() == 1 {
        let mut common: Option<Monomial> = None;
        for m in a.terms.keys().chain(b.terms.keys()) {
            common = Some(match common {
                None => m.clone(),
                Some(g) => g.gcd(m),
            });
        }
        let mut terms = BTreeMap::new();
        terms.insert(common.unwrap(), Rational::one());
        return Polynomial { params, terms };
    }
    let used_a = a.used_vars();
    let used_b = b.used_vars();
    if used_a.is_disjoint(&used_b) {
        return Polynomial::one(&params);
    }
    let var = *used_a.union(&used_b).next().unwrap();

    let ua = to_uni(a, var);
    let ub = to_uni(b, var);

    // Content/primitive split in the main variable.
    let cont_a = gcd_list(&ua.coeffs, &params);
    let cont_b = gcd_list(&ub.coeffs, &params);
    let pa = ua.exact_div_coeffs(&cont_a);
    let pb = ub.exact_div_coeffs(&cont_b);
    let cont = gcd(&cont_a, &cont_b);

    if pa.deg() == 0 || pb.deg() == 0 {
        // A primitive degree-0 polynomial is a unit times content.
        return cont.monic();
    }

    let (mut f, mut g) = if pa.deg() >= pb.deg() {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let mut coef_g = Polynomial::one(&params);
    let mut coef_h = Polynomial::one(&params);
    loop {
        let delta = f.deg() - g.deg();
        let r = prem(&f, &g);
        if r.is_zero() {
            break;
        }
        if r.deg() == 0 {
            // Primitive parts are coprime in the main variable.
            return cont.monic();
        }
        let divisor = coef_g.mul(&coef_h.pow(delta as u32));
        f = g;
        g = r.exact_div_coeffs(&divisor);
        coef_g = f.lc().clone();
        coef_h = match delta {
            0 => coef_h,
            1 => coef_g.clone(),
            _ => coef_g
                .pow(delta as u32)
                .exact_div(&coef_h.pow(delta as u32 - 1))
                .expect("inexact subresultant h-update"),
        };
    }
    let cont_g = gcd_list(&g.coeffs, &params);
    let pp = g.exact_div_coeffs(&cont_g);
    cont.mul(&from_uni(&pp, var, &params)).monic()
}
