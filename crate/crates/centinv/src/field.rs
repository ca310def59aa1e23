//! Exact coefficient fields: arbitrary-precision rationals and prime fields
//! with a runtime modulus.
//!
//! Elements of `Fp` carry their modulus, so two different primes cannot be
//! mixed silently; doing so is a caller bug and panics. Constructors that
//! have no element at hand take a [`Field::Ctx`] handle (the prime for
//! `Fp`, nothing for `Rat`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Operations every exact coefficient field must supply.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + 'static {
    /// Context needed to build elements from scratch (the prime for `Fp`).
    type Ctx: Copy + PartialEq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_i64(ctx: Self::Ctx, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Characteristic of the field (0 for rationals).
    fn characteristic(ctx: Self::Ctx) -> u64;
}

/// Exact rational number.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_parts(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rat {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}
    fn zero(_: ()) -> Self {
        Rat(BigRational::zero())
    }
    fn one(_: ()) -> Self {
        Rat(BigRational::one())
    }
    fn from_i64(_: (), v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
    fn characteristic(_: ()) -> u64 {
        0
    }
}

/// Element of the prime field F_p with runtime modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        debug_assert!(p >= 2);
        let m = v.rem_euclid(p as i64) as u64;
        Fp { v: m, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "field mismatch: F_{} vs F_{}", self.p, rhs.p);
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn zero(p: u64) -> Self {
        Fp { v: 0, p }
    }
    fn one(p: u64) -> Self {
        Fp { v: 1 % p, p }
    }
    fn from_i64(p: u64, v: i64) -> Self {
        Fp::new(v, p)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = self.v + rhs.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = self.v + self.p - rhs.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp {
            v: ((self.v as u128 * rhs.v as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            // p prime, so Fermat's little theorem applies.
            Some(self.pow(self.p - 2))
        }
    }
    fn characteristic(p: u64) -> u64 {
        p
    }
}

/// Runtime choice of coefficient field, as parsed from CLI input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    /// Parse "q" or "fp:`<prime>`".
    pub fn parse(s: &str) -> crate::Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "q" {
            return Ok(FieldSpec::Q);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| crate::Error::Usage(format!("bad prime in field spec '{s}'")))?;
            if p < 2 || !is_prime(p) {
                return Err(crate::Error::Usage(format!("{p} is not prime")));
            }
            return Ok(FieldSpec::Fp(p));
        }
        Err(crate::Error::Usage(format!(
            "field must be 'q' or 'fp:<prime>', got '{s}'"
        )))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::Fp(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "q"),
            FieldSpec::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rational sign helper used by constructions whose coefficients are `±1`.
pub fn sign<F: Field>(ctx: F::Ctx, s: i64) -> F {
    F::from_i64(ctx, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic_round_trip() {
        let p = 7;
        for a in 0..p {
            let x = Fp::new(a as i64, p);
            if !x.is_zero() {
                let inv = x.inv().unwrap();
                assert_eq!(x.mul(&inv), Fp::one(p));
            }
            assert_eq!(x.add(&x.neg()), Fp::zero(p));
        }
    }

    #[test]
    fn rat_display() {
        assert_eq!(Rat::from_parts(3, 2).to_string(), "3/2");
        assert_eq!(Rat::from_parts(4, 2).to_string(), "2");
        assert_eq!(Rat::from_parts(-1, 3).to_string(), "-1/3");
    }

    #[test]
    fn field_spec_parse() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Q);
        assert_eq!(FieldSpec::parse("fp:5").unwrap(), FieldSpec::Fp(5));
        assert!(FieldSpec::parse("fp:6").is_err());
        assert!(FieldSpec::parse("r64").is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn fp_modulus_mismatch_panics() {
        let _ = Fp::new(1, 3).add(&Fp::new(1, 5));
    }
}
