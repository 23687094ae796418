use std::fmt;

use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// Polynomial degree; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => d.fmt(f),
        }
    }
}

/// Univariate polynomial, coefficients lowest degree first, with no trailing
/// zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x^d`
    pub fn monomial(c: FieldElement, d: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    /// `x - root`
    pub fn linear_root(field: &Field, root: FieldElement) -> Self {
        Self::from_coeffs(vec![field.neg(root), FieldElement::ONE])
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Monic polynomial vanishing exactly on `roots`.
    pub fn from_roots(field: &Field, roots: &[FieldElement]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| acc.mul(&Self::linear_root(field, r), field))
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, other: &Polynomial, field: &Field) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| field.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Polynomial, field: &Field) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: FieldElement, field: &Field) -> Polynomial {
        Self::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Polynomial, field: &Field) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: usize) -> Polynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; shift];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut e: u32, field: &Field) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field);
            }
        }
        acc
    }
}

/// Unique polynomial of degree `< points.len()` through all `(x, y)` pairs.
///
/// Barycentric form: with `M(x) = prod (x - x_i)`, the result is
/// `sum y_i / M'(x_i) * M(x) / (x - x_i)`, which is `O(n^2)`.
pub fn lagrange_interpolate(field: &Field, points: &[(FieldElement, FieldElement)]) -> Result<Polynomial> {
    if points.is_empty() {
        return Err(Error::NoPoints);
    }
    let mut xs: Vec<u32> = points.iter().map(|p| p.0.value()).collect();
    xs.sort_unstable();
    if let Some(w) = xs.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateAbscissa(w[0]));
    }

    let xs: Vec<FieldElement> = points.iter().map(|p| p.0).collect();
    let master = Polynomial::from_roots(field, &xs);
    let n = points.len();
    let mut acc = vec![FieldElement::ZERO; n];
    for &(xi, yi) in points {
        if yi.is_zero() {
            continue;
        }
        // Synthetic division of M(x) by (x - xi).
        let top = master.coeffs.len() - 1;
        let mut quotient = vec![FieldElement::ZERO; top];
        let mut carry = FieldElement::ZERO;
        for d in (0..top).rev() {
            carry = field.add(master.coeffs[d + 1], field.mul(carry, xi));
            quotient[d] = carry;
        }
        let denom = quotient
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |a, &c| field.add(field.mul(a, xi), c));
        let weight = field.div(yi, denom)?;
        for (slot, &c) in acc.iter_mut().zip(&quotient) {
            *slot = field.add(*slot, field.mul(c, weight));
        }
    }
    Ok(Polynomial::from_coeffs(acc))
}
