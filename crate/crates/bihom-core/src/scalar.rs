//! Canonical rational functions over the rationals in named parameters.
//!
//! A `Scalar` is a reduced fraction `num/den` of sparse polynomials with
//! a monic denominator under the graded lexicographic order, so equality
//! and the exact zero test are structural.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{gcd, Params, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    num: Polynomial,
    den: Polynomial,
}

impl Scalar {
    /// Canonicalize `num/den`: reduce by the gcd and make `den` monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let params = num.params().clone();
            return Ok(Scalar {
                num,
                den: Polynomial::one(&params),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd must divide numerator"),
                den.exact_div(&g).expect("gcd must divide denominator"),
            )
        };
        let lc = den.leading_coeff();
        let inv = lc.recip();
        Ok(Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(num: Polynomial) -> Scalar {
        let params = num.params().clone();
        Scalar {
            num,
            den: Polynomial::one(&params),
        }
    }

    pub fn zero(params: &Params) -> Scalar {
        Scalar::from_poly(Polynomial::zero(params))
    }

    pub fn one(params: &Params) -> Scalar {
        Scalar::from_poly(Polynomial::one(params))
    }

    pub fn constant(params: &Params, c: Rational) -> Scalar {
        Scalar::from_poly(Polynomial::constant(params, c))
    }

    pub fn integer(params: &Params, n: i64) -> Scalar {
        Scalar::constant(params, crate::poly::rat_int(n))
    }

    /// The parameter with the given index, as a scalar.
    pub fn param(params: &Params, idx: usize) -> Scalar {
        Scalar::from_poly(Polynomial::var(params, idx))
    }

    pub fn param_named(params: &Params, name: &str) -> Option<Scalar> {
        params.index_of(name).map(|i| Scalar::param(params, i))
    }

    pub fn params(&self) -> &Params {
        self.num.params()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Exact zero test; no tolerance is involved anywhere.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a constant when no parameter occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::new(num, den).expect("nonzero denominator product")
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Scalar::new(num, den).expect("nonzero denominator product")
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Scalar::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Scalar::new(self.den.clone(), self.num.clone())
    }

    /// Nonnegative integer power; canonical without re-reducing since
    /// coprimality and monicity are preserved by powers.
    pub fn pow(&self, e: u32) -> Scalar {
        if e == 0 {
            return Scalar::one(self.params());
        }
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        Scalar::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }

    /// Exact value at a point indexed like the parameter list.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        let den = self.den.evaluate(point);
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.evaluate(point) / den)
    }

    /// Exact value at a named assignment; every used parameter must be
    /// assigned.
    pub fn evaluate_map(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        let params = self.params();
        let mut point = Vec::with_capacity(params.len());
        let used: std::collections::BTreeSet<usize> = self
            .num
            .used_vars()
            .union(&self.den.used_vars())
            .copied()
            .collect();
        for (i, name) in params.names().iter().enumerate() {
            match assignment.get(name) {
                Some(v) => point.push(v.clone()),
                None if used.contains(&i) => {
                    return Err(Error::MissingAssignment(name.clone()));
                }
                None => point.push(Rational::from_integer(0.into())),
            }
        }
        self.evaluate(&point)
    }

    /// Re-express over a new parameter list; `index_map[i]` gives the new
    /// index of old variable `i`.
    pub fn map_params(&self, new_params: &Params, index_map: &[usize]) -> Scalar {
        Scalar {
            num: self.num.map_params(new_params, index_map),
            den: self.den.map_params(new_params, index_map),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};
    use num_traits::One;

    fn params() -> Params {
        Params::new(["a", "b", "x"])
    }

    fn var(i: usize) -> Scalar {
        Scalar::param(&params(), i)
    }

    #[test]
    fn rational_arith() {
        let p = params();
        let half = Scalar::constant(&p, rat(1, 2));
        let third = Scalar::constant(&p, rat(1, 3));
        assert_eq!(half.add(&third).as_constant().unwrap(), rat(5, 6));
    }

    #[test]
    fn quotient_is_canonical() {
        // (a*b) / (b) reduces to a
        let a = var(0);
        let b = var(1);
        let q = a.mul(&b).div(&b).unwrap();
        assert_eq!(q, a);
        // denominator is monic: (a) / (2*b) = (1/2 a) / b
        let two_b = b.scale(&rat_int(2));
        let q = a.div(&two_b).unwrap();
        assert!(q.den().leading_coeff().is_one());
        assert_eq!(q.mul(&two_b), a);
    }

    #[test]
    fn expansion_cancels() {
        // (x+1)(x-1) - x^2 = -1
        let p = params();
        let x = var(2);
        let one = Scalar::one(&p);
        let prod = x.add(&one).mul(&x.sub(&one));
        let diff = prod.sub(&x.mul(&x));
        assert_eq!(diff, Scalar::integer(&p, -1));
    }

    #[test]
    fn zero_test_is_exact() {
        let p = params();
        let x = var(2);
        assert!(Scalar::zero(&p).is_zero());
        assert!(x.mul(&x).sub(&x.pow(2)).is_zero());
        let a = var(0);
        let b = var(1);
        let ab_comm = a.mul(&b).sub(&b.mul(&a)).add(&Scalar::one(&p));
        assert!(!ab_comm.is_zero());
        // evaluating the nonzero witness at a = b = 0 gives 1
        assert_eq!(
            ab_comm
                .evaluate(&[rat_int(0), rat_int(0), rat_int(0)])
                .unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn canonical_idempotent() {
        let a = var(0);
        let b = var(1);
        let s = a.pow(2).sub(&b.pow(2)).div(&a.add(&b)).unwrap();
        assert_eq!(s, a.sub(&b));
        let again = Scalar::new(s.num().clone(), s.den().clone()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn division_errors() {
        let p = params();
        assert!(matches!(
            Scalar::one(&p).div(&Scalar::zero(&p)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn pole_and_missing_assignment() {
        let p = params();
        let b = var(1);
        let inv = Scalar::one(&p).div(&b).unwrap();
        assert!(matches!(
            inv.evaluate(&[rat_int(1), rat_int(0), rat_int(5)]),
            Err(Error::PoleAtPoint)
        ));
        let mut m = BTreeMap::new();
        m.insert("a".to_string(), rat_int(1));
        assert!(matches!(
            inv.evaluate_map(&m),
            Err(Error::MissingAssignment(name)) if name == "b"
        ));
        m.insert("b".to_string(), rat_int(2));
        assert_eq!(inv.evaluate_map(&m).unwrap(), rat(1, 2));
    }

    #[test]
    fn evaluation_is_homomorphic() {
        let p = params();
        let a = var(0);
        let b = var(1);
        let s = a.add(&b.pow(2)).div(&b.add(&Scalar::one(&p))).unwrap();
        let t = b.sub(&a.scale(&rat_int(3)));
        let pt = [rat(3, 2), rat_int(2), rat_int(0)];
        for (symbolic, plain) in [
            (
                s.add(&t),
                s.evaluate(&pt).unwrap() + t.evaluate(&pt).unwrap(),
            ),
            (
                s.mul(&t),
                s.evaluate(&pt).unwrap() * t.evaluate(&pt).unwrap(),
            ),
            (
                s.sub(&t),
                s.evaluate(&pt).unwrap() - t.evaluate(&pt).unwrap(),
            ),
        ] {
            assert_eq!(symbolic.evaluate(&pt).unwrap(), plain);
        }
    }
}
