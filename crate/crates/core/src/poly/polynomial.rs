use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::multi_index::{monomials_up_to, MultiIndex};
use super::point::Point;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{check_dim, Error, Result};

/// Sparse polynomial in `dim` variables with exact rational coefficients.
///
/// Zero coefficients are never stored. [`Polynomial::terms`] iterates in
/// descending grlex order, so the first term is the leading term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

/// `b (b−1) ⋯ (b−a+1)`, the factor picked up by `d^a/dx^a x^b`.
fn falling(b: u32, a: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..a {
        out *= b - i;
    }
    out
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Polynomial::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, value: Rational) -> Self {
        Polynomial::monomial(MultiIndex::zero(dim), value)
    }

    pub fn monomial(alpha: MultiIndex, coeff: Rational) -> Self {
        let dim = alpha.dim();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(alpha, coeff);
        }
        Polynomial { dim, terms }
    }

    /// The coordinate function `x_{axis+1}`.
    pub fn variable(dim: usize, axis: usize) -> Self {
        Polynomial::monomial(MultiIndex::unit(dim, axis), Rational::one())
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut poly = Polynomial::zero(dim);
        for (alpha, coeff) in terms {
            check_dim(dim, alpha.dim())?;
            poly.add_term(alpha, coeff);
        }
        Ok(poly)
    }

    fn add_term(&mut self, alpha: MultiIndex, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().next_back().map_or(-1, |alpha| i64::from(alpha.degree()))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            out.add_term(alpha.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            out.add_term(alpha.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut acc: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *acc.entry(a.add(b)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial { dim: self.dim, terms: acc })
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial { dim: self.dim, terms: self.terms.iter().map(|(a, c)| (a.clone(), c * factor)).collect() }
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut out = Polynomial::one(self.dim);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// The mixed partial derivative `∂^α f`.
    pub fn differentiate(&self, alpha: &MultiIndex) -> Result<Polynomial> {
        check_dim(self.dim, alpha.dim())?;
        let mut out = Polynomial::zero(self.dim);
        for (beta, c) in &self.terms {
            if let Some(rest) = alpha.quotient_of(beta) {
                let factor: BigInt =
                    alpha.exponents().iter().zip(beta.exponents()).map(|(&a, &b)| falling(b, a)).product();
                out.add_term(rest, c * Rational::from_integer(factor));
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        check_dim(self.dim, point.dim())?;
        let powers = point.power_table(self.max_exponent());
        Ok(self.evaluate_with(&powers, &MultiIndex::zero(self.dim)))
    }

    /// `(∂^α f)(X)` without materializing the derivative.
    pub fn derivative_at(&self, alpha: &MultiIndex, point: &Point) -> Result<Rational> {
        check_dim(self.dim, alpha.dim())?;
        check_dim(self.dim, point.dim())?;
        let powers = point.power_table(self.max_exponent());
        Ok(self.evaluate_with(&powers, alpha))
    }

    fn max_exponent(&self) -> u32 {
        self.terms.keys().flat_map(|a| a.exponents().iter().copied()).max().unwrap_or(0)
    }

    fn evaluate_with(&self, powers: &[Vec<Rational>], alpha: &MultiIndex) -> Rational {
        let mut sum = Rational::zero();
        for (beta, c) in &self.terms {
            if !alpha.divides(beta) {
                continue;
            }
            let mut factor = BigInt::one();
            let mut value = c.clone();
            for (axis, (&a, &b)) in alpha.exponents().iter().zip(beta.exponents()).enumerate() {
                factor *= falling(b, a);
                let e = (b - a) as usize;
                if e > 0 {
                    value *= &powers[axis][e];
                }
            }
            if !value.is_zero() {
                sum += value * Rational::from_integer(factor);
            }
        }
        sum
    }

    /// True iff every partial derivative of order at most `order` vanishes at `point`.
    pub fn vanishes_to_order(&self, point: &Point, order: u32) -> Result<bool> {
        check_dim(self.dim, point.dim())?;
        if self.is_zero() {
            return Ok(true);
        }
        let powers = point.power_table(self.max_exponent());
        Ok(monomials_up_to(self.dim, order).iter().all(|alpha| self.evaluate_with(&powers, alpha).is_zero()))
    }

    /// Parses the text format produced by `Display`, e.g. `3/2*x1^2*x3 - x2 + 1`.
    pub fn parse(dim: usize, text: &str) -> Result<Polynomial> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces: Vec<String> = Vec::new();
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                pieces.push(String::new());
            }
            match pieces.last_mut() {
                Some(p) => p.push(ch),
                None => pieces.push(ch.to_string()),
            }
        }
        let mut poly = Polynomial::zero(dim);
        for piece in pieces {
            let (negative, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; dim];
            for (k, factor) in body.split('*').enumerate() {
                if let Some(var) = factor.strip_prefix('x') {
                    let (index, power) = match var.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (var, "1"),
                    };
                    let index: usize =
                        index.parse().map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
                    let power: u32 =
                        power.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    if index == 0 || index > dim {
                        return Err(Error::Parse(format!("variable x{index} outside 1..={dim}")));
                    }
                    exps[index - 1] += power;
                } else if k == 0 {
                    coeff = parse_rational(factor)?;
                } else {
                    return Err(Error::Parse(format!("misplaced coefficient {factor:?}")));
                }
            }
            if negative {
                coeff = -coeff;
            }
            poly.add_term(MultiIndex::new(exps), coeff);
        }
        Ok(poly)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, alpha: &MultiIndex) -> fmt::Result {
    let mut first = true;
    for (i, &e) in alpha.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (alpha, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            if alpha.is_zero() {
                write!(f, "{}", format_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write_monomial(f, alpha)?;
            } else {
                write!(f, "{}*", format_rational(&magnitude))?;
                write_monomial(f, alpha)?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial dimensions differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial dimensions differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial dimensions differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { dim: self.dim, terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect() }
    }
}
