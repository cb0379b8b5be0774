//! Exact scalars: the rationals and prime fields.
//!
//! A [`Scalar`] is either a rational number or a residue modulo a prime.
//! Integer and rational constants (such as `0`, `1`, `-1`) are created as
//! rationals and coerce into the prime field the first time they meet a
//! residue, so generic code can write `Scalar::one()` without knowing which
//! field it works over.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn residue(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        Scalar::Residue {
            value: v as u64,
            modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue { modulus, .. } => Some(*modulus),
        }
    }

    /// Image of this scalar in `F_p`. Fails when a rational has a
    /// denominator divisible by `p`.
    pub fn to_residue(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Residue { modulus, .. } if *modulus == p => Ok(self.clone()),
            Scalar::Residue { modulus, .. } => Err(Error::FieldMismatch {
                left: *modulus,
                right: p,
            }),
            Scalar::Rational(r) => {
                let pb = BigInt::from(p);
                let num = r.numer().mod_floor(&pb).to_u64().unwrap_or(0);
                let den = r.denom().mod_floor(&pb).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Residue {
                    value: mul_mod(num, inv_mod(den, p), p),
                    modulus: p,
                })
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn align<'a>(a: &'a Scalar, b: &'a Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Rational(_), Scalar::Residue { modulus, .. }) => (
                a.to_residue(*modulus).expect("constant not representable mod p"),
                b.clone(),
            ),
            (Scalar::Residue { modulus, .. }, Scalar::Rational(_)) => (
                a.clone(),
                b.to_residue(*modulus).expect("constant not representable mod p"),
            ),
            _ => (a.clone(), b.clone()),
        }
    }

    fn binary(
        a: &Scalar,
        b: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        res: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(rat(x, y)),
            (
                Scalar::Residue { value: x, modulus: p },
                Scalar::Residue { value: y, modulus: q },
            ) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Residue {
                    value: res(*x, *y, *p),
                    modulus: *p,
                }
            }
            _ => {
                let (x, y) = Scalar::align(a, b);
                Scalar::binary(&x, &y, rat, res)
            }
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x == y,
            (
                Scalar::Residue { value: x, modulus: p },
                Scalar::Residue { value: y, modulus: q },
            ) => p == q && x == y,
            _ => (self - other).is_zero(),
        }
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar::binary(self, rhs, |x, y| x + y, |x, y, p| (x + y) % p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar::binary(self, rhs, |x, y| x - y, |x, y, p| (x + p - y) % p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        Scalar::binary(self, rhs, |x, y| x * y, mul_mod)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (&mut *self, rhs) {
            *x += y;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (&mut *self, rhs) {
            *x -= y;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

/// Which ground field the computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
}

impl FromStr for FieldKind {
    type Err = Error;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(FieldKind::Rationals);
        }
        if let Some(p) = t.strip_prefix("Fp:").or_else(|| t.strip_prefix("F:")) {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidField(s.to_string()))?;
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            return Ok(FieldKind::PrimeField(p));
        }
        Err(Error::InvalidField(s.to_string()))
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// The ground field together with the chosen nonzero parameter `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    kind: FieldKind,
    lambda: Scalar,
}

impl FieldSpec {
    pub fn new(kind: FieldKind, lambda: Scalar) -> Result<Self> {
        if let FieldKind::PrimeField(p) = kind {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        let spec = FieldSpec {
            kind,
            lambda: Scalar::zero(),
        };
        let lambda = spec.embed(&lambda)?;
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        Ok(FieldSpec { kind, lambda })
    }

    pub fn rationals(lambda: i64) -> Result<Self> {
        FieldSpec::new(FieldKind::Rationals, Scalar::from_int(lambda))
    }

    pub fn prime(p: u64, lambda: i64) -> Result<Self> {
        FieldSpec::new(FieldKind::PrimeField(p), Scalar::from_int(lambda))
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    /// Maps a scalar into this field.
    pub fn embed(&self, x: &Scalar) -> Result<Scalar> {
        match self.kind {
            FieldKind::Rationals => match x {
                Scalar::Rational(_) => Ok(x.clone()),
                Scalar::Residue { modulus, .. } => Err(Error::FieldMismatch {
                    left: *modulus,
                    right: 0,
                }),
            },
            FieldKind::PrimeField(p) => x.to_residue(p),
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::from_int(n),
            FieldKind::PrimeField(p) => Scalar::residue(n, p),
        }
    }

    /// Parses `a`, `-a`, or `a/b` into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::InvalidScalar(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.embed(&Scalar::Rational(BigRational::new(num, den)))
    }

    /// Human-readable note recorded in every report.
    pub fn closure_note(&self) -> String {
        format!(
            "ground field {} (prime field of K); all verified statements are ranks and \
             identities over this field and do not use algebraic closure",
            self.kind
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (lambda = {})", self.kind, self.lambda)
    }
}

/// `|x|` for rationals, used when printing signed coefficients.
pub(crate) fn is_negative(x: &Scalar) -> bool {
    match x {
        Scalar::Rational(r) => r.is_negative(),
        Scalar::Residue { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_addition() {
        let a = Scalar::ratio(1, 2).unwrap();
        let b = Scalar::ratio(1, 3).unwrap();
        assert_eq!(&a + &b, Scalar::ratio(5, 6).unwrap());
    }

    #[test]
    fn inverse_in_f5() {
        let two = Scalar::residue(2, 5);
        assert_eq!(two.inv().unwrap(), Scalar::residue(3, 5));
    }

    #[test]
    fn lambda_times_inverse() {
        for spec in [FieldSpec::rationals(-3).unwrap(), FieldSpec::prime(7, 4).unwrap()] {
            let l = spec.lambda();
            assert!((l * &l.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(Scalar::residue(7, 7).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn constants_coerce_into_prime_field() {
        let x = Scalar::residue(3, 5);
        assert_eq!(&x + &Scalar::one(), Scalar::residue(4, 5));
        assert_eq!(&x * &Scalar::ratio(1, 2).unwrap(), Scalar::residue(4, 5));
        assert_eq!(Scalar::from_int(-1), Scalar::residue(4, 5));
    }

    #[test]
    fn field_spec_validation() {
        assert!(matches!(FieldSpec::rationals(0), Err(Error::ZeroLambda)));
        assert!(matches!(FieldSpec::prime(5, 10), Err(Error::ZeroLambda)));
        assert!(matches!(FieldSpec::prime(6, 1), Err(Error::NotPrime(6))));
        assert_eq!("Fp:5".parse::<FieldKind>().unwrap(), FieldKind::PrimeField(5));
        assert!("Fp:9".parse::<FieldKind>().is_err());
        assert_eq!("Q".parse::<FieldKind>().unwrap(), FieldKind::Rationals);
    }

    #[test]
    fn parse_scalars() {
        let q = FieldSpec::rationals(1).unwrap();
        assert_eq!(q.parse_scalar("-3/6").unwrap(), Scalar::ratio(-1, 2).unwrap());
        let f = FieldSpec::prime(5, 1).unwrap();
        assert_eq!(f.parse_scalar("1/2").unwrap(), Scalar::residue(3, 5));
        assert!(f.parse_scalar("1/5").is_err());
    }

    fn rat() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..9).prop_map(|(n, d)| Scalar::ratio(n, d).unwrap())
    }

    fn res() -> impl Strategy<Value = Scalar> {
        (0i64..13).prop_map(|v| Scalar::residue(v, 13))
    }

    fn axioms(a: Scalar, b: Scalar, c: Scalar) {
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a + &b) - &b, a);
        assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
            axioms(a, b, c);
        }

        #[test]
        fn prime_field_axioms(a in res(), b in res(), c in res()) {
            axioms(a, b, c);
        }
    }
}
