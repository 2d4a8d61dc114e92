//! Exact rationals, prime-field elements and prime selection for
//! multi-modular linear algebra.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ArithError;

/// Lower bound for sampled primes. Primes live in `(2^30, 2^31)` so that
/// the product of two reduced residues fits in a `u64` with room to spare.
pub const PRIME_LOWER: u64 = 1 << 30;
pub const PRIME_UPPER: u64 = 1 << 31;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_f4ee_d1c0_2016;

/// Reduced rational number with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in lowest terms.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), e as usize))
    }

    /// Image of `self` in `F_p`; fails when `p` divides the denominator.
    pub fn reduce_mod(&self, p: u64) -> Result<FpElem, ArithError> {
        let pb = BigInt::from(p);
        let den = self.denom().mod_floor(&pb).to_u64().unwrap();
        if den == 0 {
            return Err(ArithError::BadPrime(p));
        }
        let num = self.numer().mod_floor(&pb).to_u64().unwrap();
        Ok(FpElem::new(mul_mod(num, inv_mod(den, p), p), p))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| ArithError::Malformed(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::from_int(parse(s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    assert!(r1 != 0, "inverse of zero mod {p}");
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: u64,
}

impl FpElem {
    pub fn new(value: u64, modulus: u64) -> Self {
        FpElem {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| FpElem::new(inv_mod(self.value, self.modulus), self.modulus))
    }

    pub fn pow(self, e: u64) -> Self {
        FpElem::new(pow_mod(self.value, e, self.modulus), self.modulus)
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElem::new(add_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElem::new(sub_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElem::new(mul_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem::new(sub_mod(0, self.value, self.modulus), self.modulus)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Anything that can hand out primes for multi-modular work.
pub trait PrimeSource {
    fn next_prime(&mut self, exclude: &HashSet<u64>) -> u64;
}

/// Seeded pseudo-random sampler of primes in `(2^30, 2^31)`.
#[derive(Clone, Debug)]
pub struct PrimeSampler {
    rng: ChaCha8Rng,
}

impl PrimeSampler {
    pub fn new(seed: u64) -> Self {
        PrimeSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A prime `> 2^30` outside `exclude`.
    pub fn fresh_prime(&mut self, exclude: &HashSet<u64>) -> u64 {
        for _ in 0..10_000_000 {
            let candidate = self.rng.gen_range(PRIME_LOWER + 1..PRIME_UPPER) | 1;
            if !exclude.contains(&candidate) && is_prime(candidate) {
                return candidate;
            }
        }
        panic!("prime pool exhausted after excluding {} primes", exclude.len());
    }
}

impl Default for PrimeSampler {
    fn default() -> Self {
        PrimeSampler::new(DEFAULT_SEED)
    }
}

impl PrimeSource for PrimeSampler {
    fn next_prime(&mut self, exclude: &HashSet<u64>) -> u64 {
        self.fresh_prime(exclude)
    }
}

/// Replays a fixed list of primes, then falls back to a sampler.
#[derive(Clone, Debug)]
pub struct ScriptedPrimes {
    script: std::collections::VecDeque<u64>,
    fallback: PrimeSampler,
}

impl ScriptedPrimes {
    pub fn new(script: impl IntoIterator<Item = u64>, fallback: PrimeSampler) -> Self {
        ScriptedPrimes {
            script: script.into_iter().collect(),
            fallback,
        }
    }
}

impl PrimeSource for ScriptedPrimes {
    fn next_prime(&mut self, exclude: &HashSet<u64>) -> u64 {
        while let Some(p) = self.script.pop_front() {
            if !exclude.contains(&p) {
                return p;
            }
        }
        self.fallback.fresh_prime(exclude)
    }
}

/// `n choose 2` with the convention that it vanishes for `n < 2`.
pub fn choose2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(3, -6).to_string(), "-1/2");
        let z = q(0, 7);
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(Rational::new(1, 0), Err(ArithError::ZeroDenominator));
    }

    #[test]
    fn reduce_mod_examples() {
        assert_eq!(q(1, 2).reduce_mod(7).unwrap().value(), 4);
        assert_eq!(q(-1, 2).reduce_mod(7).unwrap().value(), 3);
        assert_eq!(q(3, 1).reduce_mod(5).unwrap().value(), 3);
        assert_eq!(q(1, 14).reduce_mod(7), Err(ArithError::BadPrime(7)));
    }

    #[test]
    fn fresh_prime_contract() {
        let mut s = PrimeSampler::new(1);
        let p1 = s.fresh_prime(&HashSet::new());
        assert!(p1 > PRIME_LOWER && is_prime(p1));
        let mut again = PrimeSampler::new(1);
        let p2 = again.fresh_prime(&HashSet::from([p1]));
        assert_ne!(p1, p2);
        assert!(is_prime(p2));
    }

    #[test]
    fn miller_rabin_small_table() {
        let brute = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..2000 {
            assert_eq!(is_prime(n), brute(n), "n = {n}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn inverse_mod() {
        let p = 1_000_000_007;
        for a in [1u64, 2, 3, 999, 123_456_789] {
            assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
        }
    }

    #[test]
    fn parse_rational() {
        assert_eq!("6/-4".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!("17".parse::<Rational>().unwrap(), q(17, 1));
        assert!("1/0".parse::<Rational>().is_err());
    }
}
