//! Table-driven KAJ transform over a fixed function basis.
//!
//! Time-domain expressions are finite sums of exact-rational-weighted basis
//! atoms in `t`; images are the same kind of sum over canonical atoms in the
//! transform variable `c`, parameterized by a symbolic order `m`. The order
//! never takes a numeric value anywhere in this module: it only appears as an
//! exponent offset inside [`ImageAtom`].
//!
//! The transform is a rewrite table, not an integral. The monomial rule is
//!
//! ```text
//! t^p  ->  p! / c^(m+p+1)
//! ```
//!
//! and the remaining entries follow the fixed seven-row table implemented by
//! [`TimeAtom::transform`]. The inverse table undoes it exactly, so
//! `invert(transform(e)) == e` for every normalized expression.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::Error;
use crate::{Rational, Result};

/// `n!` in arbitrary precision.
pub(crate) fn factorial(n: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=u64::from(n) {
        acc *= i;
    }
    acc
}

fn rational_from_biguint(value: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// A basis function of the time variable `t`.
///
/// The frequency/rate parameter is an exact rational throughout.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum TimeAtom {
    /// The constant function 1.
    Const,
    /// `t^p` with `p >= 1`; `Power(0)` normalizes to `Const`.
    Power(u32),
    /// `e^(a*t)`.
    Exp(Rational),
    /// `sin(a*t)` with `a != 0`; `Sin(0)` is the zero function.
    Sin(Rational),
    /// `cos(a*t)`.
    Cos(Rational),
    /// `sinh(a*t)` with `a != 0`; `Sinh(0)` is the zero function.
    Sinh(Rational),
    /// `cosh(a*t)`.
    Cosh(Rational),
}

impl TimeAtom {
    /// Canonical form. `Power(0)` collapses to `Const`; `Sin(0)` and
    /// `Sinh(0)` are identically zero and normalize away.
    fn normalized(self) -> Option<TimeAtom> {
        match self {
            TimeAtom::Power(0) => Some(TimeAtom::Const),
            TimeAtom::Sin(a) | TimeAtom::Sinh(a) if a.is_zero() => None,
            other => Some(other),
        }
    }

    /// Forward table entry: the exact scale factor and image atom for this
    /// basis function.
    ///
    /// | time atom   | scale | image atom                          |
    /// |-------------|-------|-------------------------------------|
    /// | `1`         | `1`   | `1/c^(m+1)`                         |
    /// | `t^p`       | `p!`  | `1/c^(m+p+1)`                       |
    /// | `e^(a*t)`   | `1`   | `c/(c^m*(c-a))`                     |
    /// | `sin(a*t)`  | `a`   | `1/(c^(m-1)*(c^2+a^2))`             |
    /// | `cos(a*t)`  | `1`   | `1/(c^(m-2)*(c^2+a^2))`             |
    /// | `sinh(a*t)` | `a`   | `1/(c^(m-1)*(c^2-a^2))`             |
    /// | `cosh(a*t)` | `1`   | `1/(c^(m-2)*(c^2-a^2))`             |
    pub fn transform(&self) -> (Rational, ImageAtom) {
        match self {
            TimeAtom::Const => (Rational::one(), ImageAtom::InvPow(1)),
            TimeAtom::Power(p) => (
                rational_from_biguint(factorial(*p)),
                ImageAtom::InvPow(p + 1),
            ),
            TimeAtom::Exp(a) => (Rational::one(), ImageAtom::Exp(a.clone())),
            TimeAtom::Sin(a) => (a.clone(), ImageAtom::Sin(a.clone())),
            TimeAtom::Cos(a) => (Rational::one(), ImageAtom::Cos(a.clone())),
            TimeAtom::Sinh(a) => (a.clone(), ImageAtom::Sinh(a.clone())),
            TimeAtom::Cosh(a) => (Rational::one(), ImageAtom::Cosh(a.clone())),
        }
    }
}

/// A canonical image-domain atom in the variable `c` with symbolic order `m`.
///
/// No atom ever holds a numeric `m`; the order is carried structurally as an
/// exponent offset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ImageAtom {
    /// `1/c^(m+e)` with offset `e >= 1`.
    InvPow(u32),
    /// `c/(c^m*(c-a))`.
    Exp(Rational),
    /// `1/(c^(m-1)*(c^2+a^2))`.
    Sin(Rational),
    /// `1/(c^(m-2)*(c^2+a^2))`.
    Cos(Rational),
    /// `1/(c^(m-1)*(c^2-a^2))`.
    Sinh(Rational),
    /// `1/(c^(m-2)*(c^2-a^2))`.
    Cosh(Rational),
}

impl ImageAtom {
    /// Inverse table entry: the exact scale factor and time atom whose
    /// forward transform reproduces this atom.
    ///
    /// `1/c^(m+p+1)` maps to `(1/p!, t^p)`, the trig/hyperbolic-sine images
    /// map to `(1/a, ...)`, and the rest carry scale 1, so that inverting a
    /// forward-transformed term is the identity.
    ///
    /// Fails with [`Error::MalformedImage`] on atoms outside the table:
    /// `InvPow(0)` or a sin/sinh image with zero frequency.
    pub fn invert(&self) -> Result<(Rational, TimeAtom)> {
        match self {
            ImageAtom::InvPow(0) => Err(Error::MalformedImage(
                "1/c^(m+0) is outside the inverse table (offset must be >= 1)".into(),
            )),
            ImageAtom::InvPow(1) => Ok((Rational::one(), TimeAtom::Const)),
            ImageAtom::InvPow(e) => {
                let p = e - 1;
                let scale = Rational::new(BigInt::one(), BigInt::from(factorial(p)));
                Ok((scale, TimeAtom::Power(p)))
            }
            ImageAtom::Exp(a) => Ok((Rational::one(), TimeAtom::Exp(a.clone()))),
            ImageAtom::Sin(a) => {
                if a.is_zero() {
                    return Err(Error::MalformedImage(
                        "sin image with zero frequency has no preimage".into(),
                    ));
                }
                Ok((a.recip(), TimeAtom::Sin(a.clone())))
            }
            ImageAtom::Cos(a) => Ok((Rational::one(), TimeAtom::Cos(a.clone()))),
            ImageAtom::Sinh(a) => {
                if a.is_zero() {
                    return Err(Error::MalformedImage(
                        "sinh image with zero frequency has no preimage".into(),
                    ));
                }
                Ok((a.recip(), TimeAtom::Sinh(a.clone())))
            }
            ImageAtom::Cosh(a) => Ok((Rational::one(), TimeAtom::Cosh(a.clone()))),
        }
    }
}

fn merge_terms<A: Ord>(terms: impl IntoIterator<Item = (Rational, A)>) -> Vec<(Rational, A)> {
    let mut merged: BTreeMap<A, Rational> = BTreeMap::new();
    for (coeff, atom) in terms {
        *merged.entry(atom).or_insert_with(Rational::zero) += coeff;
    }
    merged
        .into_iter()
        .filter(|(_, coeff)| !coeff.is_zero())
        .map(|(atom, coeff)| (coeff, atom))
        .collect()
}

/// A finite sum of rational-weighted time-domain atoms, kept normalized:
/// atoms are canonical, duplicates merged, zero coefficients dropped, terms
/// in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TimeExpr {
    terms: Vec<(Rational, TimeAtom)>,
}

impl TimeExpr {
    pub fn new(terms: impl IntoIterator<Item = (Rational, TimeAtom)>) -> Self {
        let normalized = terms
            .into_iter()
            .filter_map(|(coeff, atom)| atom.normalized().map(|atom| (coeff, atom)));
        TimeExpr {
            terms: merge_terms(normalized),
        }
    }

    pub fn zero() -> Self {
        TimeExpr::default()
    }

    pub fn term(coeff: Rational, atom: TimeAtom) -> Self {
        TimeExpr::new([(coeff, atom)])
    }

    pub fn terms(&self) -> &[(Rational, TimeAtom)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TimeExpr) -> TimeExpr {
        TimeExpr::new(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn scaled(&self, factor: &Rational) -> TimeExpr {
        if factor.is_zero() {
            return TimeExpr::zero();
        }
        TimeExpr {
            terms: self
                .terms
                .iter()
                .map(|(coeff, atom)| (coeff * factor, atom.clone()))
                .collect(),
        }
    }

    /// Termwise forward transform. Linear by construction:
    /// `(a*f + b*g).transform() == f.transform().scaled(a) + g.transform().scaled(b)`.
    pub fn transform(&self) -> ImageExpr {
        ImageExpr::new(self.terms.iter().map(|(coeff, atom)| {
            let (scale, image) = atom.transform();
            (coeff * scale, image)
        }))
    }
}

/// The image-domain counterpart of [`TimeExpr`], under the same
/// normalization rules.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ImageExpr {
    terms: Vec<(Rational, ImageAtom)>,
}

impl ImageExpr {
    pub fn new(terms: impl IntoIterator<Item = (Rational, ImageAtom)>) -> Self {
        ImageExpr {
            terms: merge_terms(terms),
        }
    }

    pub fn zero() -> Self {
        ImageExpr::default()
    }

    pub fn term(coeff: Rational, atom: ImageAtom) -> Self {
        ImageExpr::new([(coeff, atom)])
    }

    pub fn terms(&self) -> &[(Rational, ImageAtom)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ImageExpr) -> ImageExpr {
        ImageExpr::new(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn scaled(&self, factor: &Rational) -> ImageExpr {
        if factor.is_zero() {
            return ImageExpr::zero();
        }
        ImageExpr {
            terms: self
                .terms
                .iter()
                .map(|(coeff, atom)| (coeff * factor, atom.clone()))
                .collect(),
        }
    }

    /// The coefficient carried by `atom`, or zero when absent.
    pub fn coefficient_of(&self, atom: &ImageAtom) -> Rational {
        self.terms
            .iter()
            .find(|(_, a)| a == atom)
            .map(|(coeff, _)| coeff.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Termwise inverse transform; exact inverse of [`TimeExpr::transform`].
    pub fn invert(&self) -> Result<TimeExpr> {
        let terms = self
            .terms
            .iter()
            .map(|(coeff, image)| {
                let (scale, atom) = image.invert()?;
                Ok((coeff * scale, atom))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TimeExpr::new(terms))
    }
}

/// The carrier polynomial for a byte message: term `k` (1-based) is
/// `F_k * beta^(k-1)/(k-1)! * t^(k+1)`, the truncated series of
/// `F*t^2*e^(beta*t)` with one byte hosted per term.
///
/// Zero bytes drop out of the normalized sum, but their positions stay
/// recoverable from the exponent `k+1` of the surviving terms.
pub fn expand_carrier_series(message: &[u8], beta: &BigUint) -> Result<TimeExpr> {
    if message.is_empty() {
        return Err(Error::EmptyMessage);
    }
    if beta.is_zero() {
        return Err(Error::InvalidParams("beta must be at least 1".into()));
    }
    let mut power = BigUint::one(); // beta^(k-1)
    let mut fact = BigUint::one(); // (k-1)!
    let mut terms = Vec::with_capacity(message.len());
    for (index, &byte) in message.iter().enumerate() {
        let k = index + 1;
        if k > 1 {
            power *= beta;
            fact *= (k - 1) as u64;
        }
        let coeff = Rational::new(BigInt::from(&power * byte), BigInt::from(fact.clone()));
        let exponent = u32::try_from(k + 1).expect("message too long for exponent range");
        terms.push((coeff, TimeAtom::Power(exponent)));
    }
    Ok(TimeExpr::new(terms))
}
