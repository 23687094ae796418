//! Exact arithmetic over GF(p) and GF(2^e).
//!
//! Elements are stored as a single canonical integer. For prime fields this is
//! the residue in `[0, p)`; for binary extension fields it is the coefficient
//! bit mask of the element's polynomial representative modulo a fixed
//! irreducible polynomial. Extension-field multiplication is carry-less
//! multiplication followed by reduction, so every degree up to 16 goes
//! through the same code path.

mod poly;

pub use poly::{lagrange_interpolate, Degree, Polynomial};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// A field element, canonical for the field it was created in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A finite field GF(q), q = p^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    order: u32,
    characteristic: u32,
    degree: u32,
    /// Irreducible modulus over GF(2) as a bit mask including the x^e term.
    modulus: Option<u32>,
}

impl Field {
    /// Builds GF(q). Binary extension fields use the numerically smallest
    /// irreducible polynomial of degree e as modulus (e.g. x^4 + x + 1 for
    /// GF(16)).
    pub fn new(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        if q > MAX_ORDER as u64 || (e > 1 && p != 2) {
            return Err(Error::UnsupportedField(q));
        }
        let modulus = (e > 1).then(|| smallest_irreducible(e));
        Ok(Field {
            order: q as u32,
            characteristic: p as u32,
            degree: e,
            modulus,
        })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    #[inline]
    pub fn extension_degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.characteristic == 2
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.order as u64 {
            Ok(FieldElement(value as u32))
        } else {
            Err(Error::InvalidElement {
                value,
                order: self.order,
            })
        }
    }

    /// Reduces an arbitrary integer into the field. Only meaningful for prime
    /// fields; for extension fields the value is taken modulo q as a bit mask.
    pub fn reduce(&self, value: u64) -> FieldElement {
        FieldElement((value % self.order as u64) as u32)
    }

    /// All elements in canonical (integer) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.modulus.is_some() || self.characteristic == 2 {
            FieldElement(a.0 ^ b.0)
        } else {
            let s = a.0 + b.0;
            FieldElement(if s >= self.order { s - self.order } else { s })
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.characteristic == 2 || a.0 == 0 {
            a
        } else {
            FieldElement(self.order - a.0)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self.modulus {
            None => FieldElement(((a.0 as u64 * b.0 as u64) % self.order as u64) as u32),
            Some(modulus) => FieldElement(reduce_clmul(clmul(a.0, b.0), modulus, self.degree)),
        }
    }

    pub fn arith(&self, op: ArithOp, a: FieldElement, b: FieldElement) -> FieldElement {
        match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
        }
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut ord = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            ord += 1;
        }
        Some(ord)
    }

    /// Smallest integer-encoded generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let group = self.order - 1;
        let factors = prime_factors(group as u64);
        self.elements()
            .skip(1)
            .find(|&a| {
                factors
                    .iter()
                    .all(|&f| self.pow(a, group as u64 / f) != FieldElement::ONE)
            })
            .expect("every finite field has a primitive element")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "GF({})", self.order)
        } else {
            write!(f, "GF(2^{})", self.degree)
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `(p, e)` with `q = p^e` if q is a prime power.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        e += 1;
    }
    Some((p, e))
}

/// Carry-less product of two GF(2)[x] polynomials.
#[inline]
fn clmul(a: u32, b: u32) -> u64 {
    let mut acc = 0u64;
    let a = a as u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

#[inline]
fn reduce_clmul(mut x: u64, modulus: u32, degree: u32) -> u32 {
    let modulus = modulus as u64;
    let mut top = 63 - x.leading_zeros().min(63) as i64;
    while x != 0 && top >= degree as i64 {
        if x >> top & 1 == 1 {
            x ^= modulus << (top - degree as i64);
        }
        top -= 1;
    }
    x as u32
}

fn gf2_degree(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

/// Remainder of a modulo b over GF(2).
fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = gf2_degree(b);
    while a != 0 && gf2_degree(a) >= db {
        a ^= b << (gf2_degree(a) - db);
    }
    a
}

/// Exhaustive trial division by every polynomial of degree 1..=e/2.
pub(crate) fn is_irreducible_gf2(poly: u64) -> bool {
    let e = gf2_degree(poly);
    if e < 1 {
        return false;
    }
    for d in 1..=e / 2 {
        for divisor in (1u64 << d)..(1u64 << (d + 1)) {
            if gf2_rem(poly, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(e: u32) -> u32 {
    ((1u32 << e)..(1u32 << (e + 1)))
        .find(|&p| is_irreducible_gf2(p as u64))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &Field, v: u64) -> FieldElement {
        f.element(v).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        let f = Field::new(13).unwrap();
        assert_eq!((f.order(), f.characteristic(), f.extension_degree()), (13, 13, 1));
        assert_eq!(f.modulus(), None);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(matches!(Field::new(12), Err(Error::NotAPrimePower(12))));
        assert!(matches!(Field::new(1), Err(Error::NotAPrimePower(1))));
        assert!(matches!(Field::new(0), Err(Error::NotAPrimePower(0))));
        assert!(matches!(Field::new(9), Err(Error::UnsupportedField(9))));
        assert!(matches!(Field::new(1 << 17), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn gf16_modulus_is_smallest_irreducible_quartic() {
        // Oracle: enumerate monic quartics over GF(2) in integer order and keep
        // the first one with no root and no quadratic factor.
        let mut expected = None;
        for poly in 16u64..32 {
            let has_root = poly & 1 == 0 || poly.count_ones() % 2 == 0;
            let quadratic_factor = gf2_rem(poly, 0b111) == 0;
            if !has_root && !quadratic_factor {
                expected = Some(poly as u32);
                break;
            }
        }
        assert_eq!(expected, Some(0b10011));
        assert_eq!(Field::new(16).unwrap().modulus(), expected);
    }

    #[test]
    fn every_modulus_is_irreducible() {
        for e in 2..=16 {
            let f = Field::new(1 << e).unwrap();
            let m = f.modulus().unwrap();
            assert_eq!(gf2_degree(m as u64), e);
            assert!(is_irreducible_gf2(m as u64));
        }
    }

    #[test]
    fn prime_field_arith() {
        let f = Field::new(13).unwrap();
        assert_eq!(f.mul(el(&f, 5), el(&f, 8)), el(&f, 1));
        assert_eq!(f.add(el(&f, 12), el(&f, 1)), el(&f, 0));
        assert_eq!(f.arith(ArithOp::Sub, el(&f, 3), el(&f, 5)), el(&f, 11));
        assert_eq!(f.inv(el(&f, 5)).unwrap(), el(&f, 8));
        assert_eq!(f.inv(el(&f, 1)).unwrap(), el(&f, 1));
        assert!(matches!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero)));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = Field::new(13).unwrap();
        assert_eq!(f.pow(el(&f, 2), 4), el(&f, 3));
        let four = el(&f, 4);
        let repeated = (0..4).fold(FieldElement::ONE, |acc, _| f.mul(acc, four));
        assert_eq!(repeated, el(&f, 9));
        assert_eq!(f.pow(four, 4), repeated);
        assert_eq!(f.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        for q in [13u64, 16, 17, 256] {
            let f = Field::new(q).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, q - 1), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn gf16_characteristic_two_and_inverses() {
        let f = Field::new(16).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, a), FieldElement::ZERO);
            assert_eq!(f.neg(a), a);
        }
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(f.inv(a).unwrap(), a), FieldElement::ONE);
        }
        // x * x^3 = x^4 = x + 1 under x^4 + x + 1.
        assert_eq!(f.mul(el(&f, 0b10), el(&f, 0b1000)), el(&f, 0b11));
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::new(13).unwrap().primitive_element(), FieldElement(2));
        assert_eq!(Field::new(17).unwrap().primitive_element(), FieldElement(3));
        let f = Field::new(16).unwrap();
        let g = f.primitive_element();
        assert_eq!(f.multiplicative_order(g), Some(15));
    }

    #[test]
    fn field_axioms_small_fields() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let primes = (2u64..=257).filter(|&n| prime_factors(n) == vec![n]);
        let binaries = (1..=8).map(|e| 1u64 << e);
        for q in primes.chain(binaries) {
            let f = Field::new(q).unwrap();
            for _ in 0..200 {
                let a = el(&f, rng.gen_range(0..q));
                let b = el(&f, rng.gen_range(0..q));
                let c = el(&f, rng.gen_range(0..q));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
            for a in f.elements().skip(1) {
                assert_eq!(f.inv(f.inv(a).unwrap()).unwrap(), a);
            }
        }
    }
}
