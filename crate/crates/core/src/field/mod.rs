//! Exact arithmetic in prime fields and small extension fields.
//!
//! Elements of `GF(p^k)` are stored as an index `sum c_i p^i` over the
//! coefficients of their polynomial representative, so `0` is the additive
//! zero, `1` the multiplicative one, and in a prime field the index is the
//! residue itself. Multiplication goes through exp/log tables keyed by a
//! fixed primitive element.

mod gf8;
mod quadratic;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use gf8::{gf8_labeling, gf8_labeling_with_modulus, Gf8Cubic, Gf8Labeling};
pub use quadratic::{quadratic_classes, QuadraticClasses};

/// Largest field order the table-driven representation accepts.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    TooLarge(u64),
    #[error("modulus must be monic of degree at least 1 with coefficients below p")]
    BadModulus,
    #[error("modulus polynomial is reducible over GF({0})")]
    ReduciblePolynomial(u32),
    #[error("zero has no multiplicative inverse")]
    InversionOfZero,
    #[error("element index {index} out of range for a field of order {order}")]
    IndexOutOfRange { index: u32, order: u32 },
}

/// Characteristic, degree and defining polynomial of a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic defining polynomial, lowest degree coefficient first (length `k + 1`).
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

/// An element of a [`Field`], identified by its table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field with precomputed exp/log tables.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so products of logs index directly.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    generator: FieldElem,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

/// Smallest positive generator of `(Z/p)*`.
pub fn primitive_root(p: u32) -> Result<u32, FieldError> {
    if !is_prime(p as u64) {
        return Err(FieldError::NotPrime(p as u64));
    }
    if p == 2 {
        return Ok(1);
    }
    let order = p as u64 - 1;
    let found = (2..p as u64).find(|&g| {
        let mut x = 1u64;
        for i in 1..=order {
            x = x * g % p as u64;
            if x == 1 {
                return i == order;
            }
        }
        false
    });
    Ok(found.expect("(Z/p)* is cyclic") as u32)
}

// Polynomials over Z/p, lowest degree first, trailing zeros trimmed.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] as u64 * lead_inv as u64 % p as u64;
        for (i, &c) in m.iter().enumerate() {
            let sub = factor * c as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = poly_trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    poly_trim(out.into_iter().map(|c| c as u32).collect())
}

fn mod_inv(a: u32, p: u32) -> u32 {
    mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn index_to_poly(mut index: u64, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::new();
    while index > 0 {
        coeffs.push((index % p as u64) as u32);
        index /= p as u64;
    }
    coeffs
}

fn poly_to_index(coeffs: &[u32], p: u32) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Trial division of a monic `modulus` by every monic polynomial of degree
/// `1 ..= deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let base = (p as u64).pow(d as u32);
        for low in 0..base {
            let mut divisor = index_to_poly(low, p);
            divisor.resize(d, 0);
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lowest monic irreducible polynomial of degree `k` over `Z/p`, ordered by
/// the integer `sum c_i p^i` of its coefficients.
pub fn lowest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let base = (p as u64).pow(k);
    (0..base)
        .map(|low| {
            let mut m = index_to_poly(low, p);
            m.resize(k as usize, 0);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds the field described by `spec`, checking primality, the
    /// modulus shape, and irreducibility.
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let FieldSpec { p, k, ref modulus } = spec;
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        let order = spec.order();
        if k == 0 || order > MAX_FIELD_ORDER as u64 {
            return Err(FieldError::TooLarge(order));
        }
        if modulus.len() != k as usize + 1
            || modulus[k as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(FieldError::BadModulus);
        }
        if !is_irreducible(modulus, p) {
            return Err(FieldError::ReduciblePolynomial(p));
        }
        let q = order as u32;

        let mul_slow = |a: u32, b: u32| -> u32 {
            let prod = poly_mul(&index_to_poly(a as u64, p), &index_to_poly(b as u64, p), p);
            poly_to_index(&poly_rem(&prod, modulus, p), p) as u32
        };
        let generator = (1..q)
            .find(|&g| {
                let mut x = 1;
                for i in 1..q {
                    x = mul_slow(x, g);
                    if x == 1 {
                        return i == q - 1;
                    }
                }
                false
            })
            .expect("multiplicative group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = mul_slow(x, generator);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }

        Ok(Field {
            spec,
            q,
            exp,
            log,
            generator: FieldElem(generator),
        })
    }

    /// The prime field `Z/p`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        Field::new(FieldSpec {
            p,
            k: 1,
            modulus: vec![0, 1],
        })
    }

    /// The field of order `q`, using the lowest irreducible polynomial when
    /// `q` is a proper prime power.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        if q > MAX_FIELD_ORDER as u64 {
            return Err(FieldError::TooLarge(q));
        }
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if k == 1 {
            return Field::prime(p);
        }
        Field::new(FieldSpec {
            p,
            k,
            modulus: lowest_irreducible(p, k),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.spec.k == 1
    }

    /// The primitive element the tables are keyed by.
    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn elem(&self, index: u32) -> Result<FieldElem, FieldError> {
        if index < self.q {
            Ok(FieldElem(index))
        } else {
            Err(FieldError::IndexOutOfRange {
                index,
                order: self.q,
            })
        }
    }

    /// The image of an integer under `Z -> F`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return FieldElem((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return FieldElem((p - a.0) % p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[i as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::InversionOfZero);
        }
        let n = self.q - 1;
        Ok(FieldElem(
            self.exp[((n - self.log[a.0 as usize]) % n) as usize],
        ))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e`; negative exponents need `a != 0`.
    pub fn pow(&self, a: FieldElem, e: i64) -> Result<FieldElem, FieldError> {
        if a.0 == 0 {
            return match e {
                0 => Ok(FieldElem::ONE),
                e if e > 0 => Ok(FieldElem::ZERO),
                _ => Err(FieldError::InversionOfZero),
            };
        }
        let n = (self.q - 1) as i64;
        let l = (self.log[a.0 as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Ok(FieldElem(self.exp[l as usize]))
    }

    /// Discrete logarithm to the base [`Field::generator`].
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElem) -> Option<u32> {
        let l = self.log(a)?;
        let n = self.q - 1;
        Some(n / gcd(n.max(1), l))
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        match self.log(a) {
            None => true,
            Some(l) => self.spec.p == 2 || l % 2 == 0,
        }
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
