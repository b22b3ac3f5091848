use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{self, Poly};
use super::{forward_owned, LaurentPoly};
use crate::error::{Error, Result};

/// An element of `Q(q)` in lowest terms.
///
/// Internally `num / den` with `num` a Laurent polynomial and `den` an
/// integer polynomial with nonzero constant term and positive leading
/// coefficient, coprime to `num` in `Z[q]`. Laurent elements have
/// `den == 1`, which is the fast path for every operation.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: Poly,
}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

fn unit_den() -> Poly {
    vec![BigInt::one()]
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: unit_den() }
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    pub fn q_pow(k: i64) -> Self {
        LaurentPoly::monomial(k, 1).into()
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPoly::from(c).into()
    }

    /// `num / den`, reduced to lowest terms.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (dlow, dcoeffs) = den.dense();
        let mut d: Poly = dcoeffs.to_vec();
        let num = num.shift(-dlow);
        let (nlow, ncoeffs) = num.dense();
        let mut n: Poly = ncoeffs.to_vec();
        if d.len() > 1 {
            let g = poly::gcd(&n, &d);
            if g.len() > 1 {
                n = poly::div_exact(&n, &g);
                d = poly::div_exact(&d, &g);
            }
        }
        let mut c = poly::content(&n).gcd(&poly::content(&d));
        if d.last().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            for x in n.iter_mut() {
                *x = &*x / &c;
            }
            for x in d.iter_mut() {
                *x = &*x / &c;
            }
        }
        RatFunc { num: LaurentPoly::from_dense(nlow, n), den: d }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_laurent() && self.num.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.len() == 1 && self.den[0].is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.is_laurent().then(|| self.num.clone())
    }

    /// Numerator and denominator as ordinary polynomials in `q`,
    /// coefficients from degree zero upwards.
    pub fn num_den(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let (low, coeffs) = self.num.dense();
        if self.is_zero() {
            return (Vec::new(), unit_den());
        }
        if low >= 0 {
            let mut n = vec![BigInt::zero(); low as usize];
            n.extend_from_slice(coeffs);
            (n, self.den.clone())
        } else {
            let mut d = vec![BigInt::zero(); (-low) as usize];
            d.extend_from_slice(&self.den);
            (coeffs.to_vec(), d)
        }
    }

    pub fn bar(&self) -> Self {
        if self.is_laurent() {
            return self.num.bar().into();
        }
        let den = LaurentPoly::from_dense(0, self.den.clone()).bar();
        Self::reduce(self.num.bar(), den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::reduce(LaurentPoly::from_dense(0, self.den.clone()), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        RatFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    /// Regular at `q = 0` (lies in the local ring `A_0`).
    pub fn is_regular_at_zero(&self) -> bool {
        self.num.valuation().map_or(true, |v| v >= 0)
    }

    /// Value at `q = 0`; `None` if there is a pole.
    pub fn value_at_zero(&self) -> Option<BigRational> {
        if !self.is_regular_at_zero() {
            return None;
        }
        Some(BigRational::new(self.num.coeff(0), self.den[0].clone()))
    }

    /// `q`-adic valuation (`None` for zero).
    pub fn valuation(&self) -> Option<i64> {
        self.num.valuation()
    }

    /// Evaluation at `q = t` modulo the prime `p`; `None` if the
    /// denominator vanishes there.
    pub fn eval_mod(&self, t: u64, p: u64) -> Option<u64> {
        let n = self.num.eval_mod(t, p);
        let d = LaurentPoly::from_dense(0, self.den.clone()).eval_mod(t, p);
        if d == 0 {
            return None;
        }
        Some((n as u128 * crate::linalg::mod_inv(d, p) as u128 % p as u128) as u64)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(num: LaurentPoly) -> Self {
        RatFunc { num, den: unit_den() }
    }
}

impl From<&LaurentPoly> for RatFunc {
    fn from(num: &LaurentPoly) -> Self {
        num.clone().into()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.is_laurent() {
                return (&self.num + &rhs.num).into();
            }
            let den = LaurentPoly::from_dense(0, self.den.clone());
            return RatFunc::reduce(&self.num + &rhs.num, den);
        }
        let d1 = LaurentPoly::from_dense(0, self.den.clone());
        let d2 = LaurentPoly::from_dense(0, rhs.den.clone());
        RatFunc::reduce(&(&self.num * &d2) + &(&rhs.num * &d1), &d1 * &d2)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_laurent() && rhs.is_laurent() {
            return (&self.num * &rhs.num).into();
        }
        let den = LaurentPoly::from_dense(0, poly::mul(&self.den, &rhs.den));
        RatFunc::reduce(&self.num * &rhs.num, den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on a zero divisor; use [`RatFunc::checked_div`] to recover.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("zero divisor")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

forward_owned!(RatFunc, Add, add);
forward_owned!(RatFunc, Sub, sub);
forward_owned!(RatFunc, Mul, mul);
forward_owned!(RatFunc, Div, div);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            let d = LaurentPoly::from_dense(0, self.den.clone());
            write!(f, "({}) / ({})", self.num, d)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (n, d) = self.num_den();
        RatFuncRepr {
            num: n.iter().map(|c| c.to_string()).collect(),
            den: d.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        let parse = |v: &[String]| -> std::result::Result<Vec<BigInt>, D::Error> {
            v.iter().map(|s| s.parse::<BigInt>().map_err(D::Error::custom)).collect()
        };
        let num = LaurentPoly::from_dense(0, parse(&r.num)?);
        let den = LaurentPoly::from_dense(0, parse(&r.den)?);
        RatFunc::new(num, den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn factor_cancels() {
        let a = RatFunc::new(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(a.to_laurent(), Some(lp(&[(1, 1), (0, 1)])));
    }

    #[test]
    fn zero_divisor_is_reported() {
        assert!(matches!(RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()), Err(Error::ZeroDivisor)));
        assert!(matches!(RatFunc::zero().inv(), Err(Error::ZeroDivisor)));
    }

    #[test]
    fn additive_identity() {
        let a = RatFunc::new(lp(&[(0, 3), (1, 1)]), lp(&[(0, 1), (2, 1)])).unwrap();
        assert_eq!(&a + &RatFunc::zero(), a);
    }

    #[test]
    fn rational_constants_are_canonical() {
        let half = RatFunc::new(LaurentPoly::from(1), LaurentPoly::from(2)).unwrap();
        let also = RatFunc::new(LaurentPoly::from(-3), LaurentPoly::from(-6)).unwrap();
        assert_eq!(half, also);
        assert_eq!(&half + &half, RatFunc::one());
    }

    #[test]
    fn json_shape() {
        let a = RatFunc::new(LaurentPoly::one(), lp(&[(1, 1), (-1, 1)])).unwrap();
        // 1/(q + q^-1) = q/(1 + q^2)
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"num":["0","1"],"den":["1","0","1"]}"#);
        let back: RatFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-3i64..4, -4i64..5), 0..4).prop_map(LaurentPoly::from_terms)
    }

    fn arb_rat() -> impl Strategy<Value = RatFunc> {
        (arb_laurent(), arb_laurent())
            .prop_filter_map("nonzero den", |(n, d)| RatFunc::new(n, d).ok())
    }

    proptest! {
        #[test]
        fn agrees_with_laurent(a in arb_laurent(), b in arb_laurent()) {
            let ra: RatFunc = a.clone().into();
            let rb: RatFunc = b.clone().into();
            prop_assert_eq!((&ra + &rb).to_laurent(), Some(&a + &b));
            prop_assert_eq!((&ra * &rb).to_laurent(), Some(&a * &b));
            prop_assert_eq!((&ra - &rb).to_laurent(), Some(&a - &b));
            if !b.is_zero() {
                let prod = &a * &b;
                let back = RatFunc::from(prod).checked_div(&rb).unwrap();
                prop_assert_eq!(back.to_laurent(), Some(a.clone()));
            }
        }

        #[test]
        fn field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn json_roundtrip(a in arb_rat()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: RatFunc = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
