//! Exact univariate polynomials and rational functions in `q` over the rationals.
//!
//! Coefficients are arbitrary-precision rationals; there is no floating point anywhere in
//! this module. Polynomials are stored densely with trailing zeros trimmed, so structural
//! equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial in `q` with exact rational coefficients, indexed by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^exp`
    pub fn monomial(c: BigRational, exp: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); exp + 1];
        coeffs[exp] = c;
        Self::from_coeffs(coeffs)
    }

    /// `q^exp`
    pub fn q_pow(exp: usize) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    /// `q^exp + sign`, the building block of every degree formula.
    pub fn q_pow_plus(exp: usize, sign: i64) -> Self {
        &Self::q_pow(exp) + &Self::constant(rat(sign))
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = quotient * divisor + remainder`, `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Monic greatest common divisor over the rationals; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is non-zero");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, q0: i64) -> BigRational {
        self.eval(&rat(q0))
    }

    /// Evaluation that must land on an integer, as character degrees do.
    pub fn eval_integer(&self, q0: i64) -> Option<BigInt> {
        let v = self.eval_int(q0);
        v.is_integer().then(|| v.to_integer())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        RatPoly::from_coeffs(coeffs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        RatPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl std::iter::Sum for RatPoly {
    fn sum<I: Iterator<Item = RatPoly>>(iter: I) -> RatPoly {
        iter.fold(RatPoly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for RatPoly {
    fn product<I: Iterator<Item = RatPoly>>(iter: I) -> RatPoly {
        iter.fold(RatPoly::one(), |acc, p| &acc * &p)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = abs.is_one();
            if e == 0 || !unit {
                write!(f, "{abs}")?;
                if e > 0 {
                    write!(f, "*")?;
                }
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(RatPoly::from_coeffs(coeffs))
    }
}

/// Parses `"n/d"` or `"n"`.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// A rational function `num / den` in canonical form: coprime, `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: RatPoly,
    den: RatPoly,
}

impl RatFunc {
    /// Builds the canonical reduced representative of `num / den`.
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: RatPoly::one(),
            });
        }
        // Degree formulas almost always divide exactly; skip the gcd in that case.
        let (quot, rem) = num.div_rem(&den)?;
        if rem.is_zero() {
            return Ok(RatFunc {
                num: quot,
                den: RatPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lc = den.leading().expect("non-zero").recip();
        Ok(RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: RatPoly) -> Self {
        RatFunc {
            num: p,
            den: RatPoly::one(),
        }
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Asserts the function is a polynomial; the error carries the remainder of
    /// `num` modulo `den` as witness.
    pub fn to_poly(&self) -> Result<RatPoly> {
        if self.is_poly() {
            return Ok(self.num.clone());
        }
        let (_, remainder) = self.num.div_rem(&self.den)?;
        Err(Error::NotAPolynomial { remainder })
    }

    pub fn mul(&self, other: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.num * &other.den, &self.den * &other.num)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let r = RatFunc::new(p(&[-1, 0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(r.num(), &p(&[-1, 1]));
        assert!(r.den().is_one());
    }

    #[test]
    fn normalize_geometric_series() {
        let r = RatFunc::new(p(&[-1, 0, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r.num(), &p(&[1, 1, 1]));
        assert!(r.is_poly());
    }

    #[test]
    fn normalize_with_rational_content() {
        // (q^2-1)(q^3-1) / 2(q+1) = (q-1)(q^3-1)/2
        let num = &p(&[-1, 0, 1]) * &p(&[-1, 0, 0, 1]);
        let den = p(&[2, 2]);
        let r = RatFunc::new(num, den).unwrap();
        let expected = (&p(&[-1, 1]) * &p(&[-1, 0, 0, 1])).scale(&half());
        assert_eq!(r.num(), &expected);
        assert!(r.den().is_one());
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let err = RatFunc::new(p(&[1]), RatPoly::zero()).unwrap_err();
        assert_eq!(err.to_string(), "division by zero polynomial");
    }

    #[test]
    fn non_polynomial_quotient_reports_remainder() {
        let r = RatFunc::new(p(&[0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(r.den(), &p(&[1, 1]));
        match r.to_poly() {
            Err(Error::NotAPolynomial { remainder }) => assert_eq!(remainder, p(&[-1])),
            other => panic!("expected NotAPolynomial, got {other:?}"),
        }
    }

    #[test]
    fn non_exact_quotient_is_reduced_and_monic() {
        // 2q(q-1) / (4(q-1)(q+1)) = (q/2) / (q+1)
        let num = p(&[0, -2, 2]);
        let den = p(&[-4, 0, 4]);
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.den(), &p(&[1, 1]));
        assert_eq!(r.num(), &RatPoly::q_pow(1).scale(&half()));
    }

    #[test]
    fn t20_degree_simplifies() {
        // q(q-1)^2(q+1) / 2(q+1) = q(q-1)^2/2
        let num = &(&p(&[0, 1]) * &p(&[-1, 1]).pow(2)) * &p(&[1, 1]);
        let r = RatFunc::new(num, p(&[2, 2])).unwrap();
        let expected = (&p(&[0, 1]) * &p(&[-1, 1]).pow(2)).scale(&half());
        assert_eq!(r.to_poly().unwrap(), expected);
        assert_eq!(expected.eval_int(3), rat(6));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[-1, 0, 1]).eval_int(3), rat(8));
        assert_eq!(RatPoly::q_pow(9).eval_int(2), rat(512));
        assert_eq!(RatPoly::zero().eval_int(5), rat(0));
    }

    #[test]
    fn display_and_json() {
        let poly = p(&[-1, 0, 2]);
        assert_eq!(poly.to_string(), "2*q^2 - 1");
        assert_eq!(p(&[0, 1]).to_string(), "q");
        assert_eq!(
            serde_json::to_string(&poly).unwrap(),
            r#"["-1/1","0/1","2/1"]"#
        );
        let back: RatPoly = serde_json::from_str(r#"["-1/1","0","4/2"]"#).unwrap();
        assert_eq!(back, poly);
    }

    fn arb_poly() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-20i64..20, 1i64..5), 0..6).prop_map(|v| {
            RatPoly::from_coeffs(
                v.into_iter()
                    .map(|(n, d)| BigRational::new(n.into(), d.into()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn normalize_idempotent_and_canonical(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let r = RatFunc::new(a.clone(), b.clone()).unwrap();
            let again = RatFunc::new(r.num().clone(), r.den().clone()).unwrap();
            prop_assert_eq!(&again, &r);
            // multiplying through by a common factor changes nothing
            let scaled = RatFunc::new(&a * &c, &b * &c).unwrap();
            prop_assert_eq!(scaled, r);
        }

        #[test]
        fn cyclotomic_quotients_are_polynomial(d in 1usize..7, m in 1usize..5, q0 in 2i64..12) {
            let r = RatFunc::new(RatPoly::q_pow_plus(d * m, -1), RatPoly::q_pow_plus(d, -1)).unwrap();
            let poly = r.to_poly().unwrap();
            let v = poly.eval_integer(q0).unwrap();
            prop_assert!(v > BigInt::zero());
        }
    }
}
