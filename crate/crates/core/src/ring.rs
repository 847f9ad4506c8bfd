//! Base coefficient rings: the integers, integers modulo `n`, and prime fields.
//!
//! Every scalar is kept in a canonical representation (an arbitrary-precision
//! integer, reduced into `[0, n)` for the modular rings), and all arithmetic
//! goes through [`BaseRing`] so canonicity is preserved by construction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A canonical scalar: over `Z` any integer, over `Z/n` and `F_p` the residue
/// in `[0, n)`. Constructed and combined only through [`BaseRing`] methods.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigInt);

impl Scalar {
    /// Decimal string form, used by the JSON document formats.
    pub fn to_decimal(&self) -> String {
        self.0.to_str_radix(10)
    }

    /// Raw integer value of the canonical representative.
    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let value = text
            .parse::<BigInt>()
            .map_err(|e| serde::de::Error::custom(format!("bad scalar {text:?}: {e}")))?;
        Ok(Scalar(value))
    }
}

/// Errors raised when constructing a base ring from raw data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(BigInt),
    #[error("characteristic {0} is not prime")]
    NotPrime(BigInt),
    #[error("modulus {0} does not fit in 64 bits")]
    ModulusTooLarge(BigInt),
}

/// One of the three supported coefficient rings.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BaseRing {
    Integers,
    IntegersMod { modulus: Scalar },
    PrimeField { p: Scalar },
}

impl fmt::Debug for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::IntegersMod { modulus } => write!(f, "Z/{}", modulus),
            BaseRing::PrimeField { p } => write!(f, "F_{}", p),
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul_mod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow_mod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base);
            }
            base = mul_mod(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl BaseRing {
    pub fn integers() -> BaseRing {
        BaseRing::Integers
    }

    pub fn integers_mod(n: impl Into<BigInt>) -> Result<BaseRing, RingError> {
        let n = n.into();
        if n < BigInt::from(2) {
            return Err(RingError::ModulusTooSmall(n));
        }
        Ok(BaseRing::IntegersMod { modulus: Scalar(n) })
    }

    pub fn prime_field(p: impl Into<BigInt>) -> Result<BaseRing, RingError> {
        let p = p.into();
        let small: u64 = p
            .to_string()
            .parse()
            .map_err(|_| RingError::ModulusTooLarge(p.clone()))?;
        if !is_prime_u64(small) {
            return Err(RingError::NotPrime(p));
        }
        Ok(BaseRing::PrimeField { p: Scalar(p) })
    }

    /// The modulus for the modular rings, `None` over `Z`.
    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            BaseRing::Integers => None,
            BaseRing::IntegersMod { modulus } => Some(&modulus.0),
            BaseRing::PrimeField { p } => Some(&p.0),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, BaseRing::PrimeField { .. })
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    /// Number of elements for the finite rings, `None` over `Z`.
    pub fn element_count(&self) -> Option<BigInt> {
        self.modulus().cloned()
    }

    /// Reduce an arbitrary integer into canonical form.
    pub fn canon(&self, value: BigInt) -> Scalar {
        match self.modulus() {
            None => Scalar(value),
            Some(n) => Scalar(value.mod_floor(n)),
        }
    }

    pub fn scalar_from_i64(&self, value: i64) -> Scalar {
        self.canon(BigInt::from(value))
    }

    /// Parse a decimal string (leading `-` allowed) into a canonical scalar.
    pub fn parse_scalar(&self, text: &str) -> Option<Scalar> {
        text.parse::<BigInt>().ok().map(|v| self.canon(v))
    }

    pub fn zero(&self) -> Scalar {
        Scalar(BigInt::zero())
    }

    pub fn one(&self) -> Scalar {
        self.canon(BigInt::one())
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.canon(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.canon(&a.0 - &b.0)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.canon(-&a.0)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.canon(&a.0 * &b.0)
    }

    /// True when the scalar has a multiplicative inverse.
    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self.modulus() {
            None => a.0.abs().is_one(),
            Some(n) => a.0.gcd(n).is_one(),
        }
    }

    /// Multiplicative inverse, when one exists.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match self.modulus() {
            None => {
                if a.0.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            Some(n) => {
                let ext = a.0.extended_gcd(n);
                if ext.gcd.is_one() {
                    Some(self.canon(ext.x))
                } else {
                    None
                }
            }
        }
    }

    /// Exact division `a / b`, when `b` divides `a` in the ring.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        match self.modulus() {
            None => {
                if b.0.is_zero() {
                    return a.0.is_zero().then(|| self.zero());
                }
                let (q, r) = a.0.div_rem(&b.0);
                r.is_zero().then(|| Scalar(q))
            }
            Some(_) => {
                // Solve b*x = a by scaling the inverse of the unit part of b.
                let (unit, g) = self.unit_times_divisor(b)?;
                // b = unit*g, so x exists iff g | a (as ideals); pick x = unit^-1 * a/g.
                if g.0.is_zero() {
                    return a.0.is_zero().then(|| self.zero());
                }
                let (q, r) = a.0.div_rem(&g.0);
                if !r.is_zero() {
                    return None;
                }
                let inv = self.inv(&unit).expect("unit part is invertible");
                Some(self.mul(&inv, &self.canon(q)))
            }
        }
    }

    /// Write a modular scalar as `unit * g` with `g = gcd(a, n)` a divisor of
    /// the modulus. Every element of `Z/n` factors this way; the unit makes
    /// diagonal normal forms canonical. Returns `None` over `Z`.
    pub fn unit_times_divisor(&self, a: &Scalar) -> Option<(Scalar, Scalar)> {
        let n = self.modulus()?;
        if a.0.is_zero() {
            return Some((self.one(), self.zero()));
        }
        let g = a.0.gcd(n);
        let step = n / &g;
        let base = &a.0 / &g;
        let mut candidate = base.mod_floor(n);
        loop {
            if candidate.gcd(n).is_one() {
                return Some((Scalar(candidate), Scalar(g)));
            }
            candidate = (candidate + &step).mod_floor(n);
        }
    }

    /// All elements of a finite ring, in canonical order. Panics over `Z`.
    pub fn elements(&self) -> Vec<Scalar> {
        let n = self
            .modulus()
            .expect("cannot enumerate the infinite ring Z");
        let mut out = Vec::new();
        let mut i = BigInt::zero();
        while &i < n {
            out.push(Scalar(i.clone()));
            i += 1;
        }
        out
    }
}
