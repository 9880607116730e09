//! Sparse multivariate polynomials with exact Gaussian-rational coefficients.
//!
//! Variables are either state amplitudes `a[i1...im]` or Plücker coordinates
//! `P[i1,...,ik]`. Terms are kept in a sorted map with no zero coefficients,
//! so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussRat, Scalar};

/// A polynomial variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    /// State amplitude at a 0-based multi-index.
    State(Vec<usize>),
    /// Plücker coordinate on a strictly increasing 1-based subset.
    Plu(Vec<usize>),
}

impl VarId {
    /// A state variable, checked against the mode dimensions.
    pub fn state(index: Vec<usize>, dims: &[usize]) -> Result<VarId> {
        if index.len() != dims.len() || index.iter().zip(dims).any(|(&i, &d)| i >= d) {
            return Err(Error::IndexOutOfRange(format!("multi-index {index:?} for dims {dims:?}")));
        }
        Ok(VarId::State(index))
    }

    /// A Plücker variable, checked to be a strictly increasing subset of `1..=n`.
    pub fn plu(subset: Vec<usize>, n: usize) -> Result<VarId> {
        let increasing = subset.windows(2).all(|w| w[0] < w[1]);
        if !increasing || subset.first().is_some_and(|&i| i == 0) || subset.last().is_some_and(|&i| i > n) {
            return Err(Error::IndexOutOfRange(format!("subset {subset:?} of 1..={n}")));
        }
        Ok(VarId::Plu(subset))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::State(index) => {
                let sep = if index.iter().any(|&i| i >= 10) { "," } else { "" };
                let parts: Vec<String> = index.iter().map(usize::to_string).collect();
                write!(f, "a[{}]", parts.join(sep))
            }
            VarId::Plu(subset) => {
                let parts: Vec<String> = subset.iter().map(usize::to_string).collect();
                write!(f, "P[{}]", parts.join(","))
            }
        }
    }
}

/// A product of variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Monomial {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (VarId, u32)>>(factors: I) -> Monomial {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_default() += e;
        }
        Monomial {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (&self.factors[i], &other.factors[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }
}

/// Lexicographic order on the expanded variable sequence `v1 v1 v2 ...`,
/// with a proper prefix ordered first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (i, (a, b)) in self.factors.iter().zip(&other.factors).enumerate() {
            match a.0.cmp(&b.0) {
                Ordering::Equal => {}
                ord => return ord,
            }
            if a.1 != b.1 {
                // The side with the larger exponent repeats the shared variable where
                // the other moves on to a later variable, or ends.
                let (big_is_self, small) = if a.1 > b.1 { (true, other) } else { (false, self) };
                let small_continues = small.factors.len() > i + 1;
                let self_first = big_is_self == small_continues;
                return if self_first { Ordering::Less } else { Ordering::Greater };
            }
        }
        self.factors.len().cmp(&other.factors.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Result of a homogeneity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Degree(u32),
    /// The zero polynomial, homogeneous of every degree.
    AnyDegree,
    Inhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn constant(c: GaussRat) -> MultiPoly {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> MultiPoly {
        MultiPoly::term(GaussRat::one(), Monomial::var(v))
    }

    pub fn term(c: GaussRat, m: Monomial) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussRat)>>(terms: I) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Homogeneity::AnyDegree,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    pub fn scale(&self, c: &GaussRat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by -1 if needed so the first term's coefficient is positive:
    /// positive real part, or zero real part and positive imaginary part.
    pub fn sign_canonical(&self) -> MultiPoly {
        match self.terms.values().next() {
            Some(lead) if lead.re.is_negative() || (lead.re.is_zero() && lead.im.is_negative()) => -self.clone(),
            _ => self.clone(),
        }
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vars: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(v, _)| v.clone()))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Evaluates with values supplied by `lookup`; a `None` is a missing variable.
    pub fn evaluate_with<T, F>(&self, lookup: F) -> Result<T>
    where
        T: Scalar,
        F: Fn(&VarId) -> Option<T>,
    {
        let mut total = T::zero();
        for (m, c) in &self.terms {
            let mut value = T::from_gauss(c);
            for (v, e) in &m.factors {
                let x = lookup(v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                for _ in 0..*e {
                    value = value * x.clone();
                }
            }
            total = total + value;
        }
        Ok(total)
    }

    /// Replaces every variable by a polynomial, expanding the result.
    pub fn substitute<F: Fn(&VarId) -> MultiPoly>(&self, image: F) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut value = MultiPoly::constant(c.clone());
            for (v, e) in &m.factors {
                let x = image(v);
                for _ in 0..*e {
                    value = &value * &x;
                }
            }
            out = &out + &value;
        }
        out
    }

    pub fn evaluate<T: Scalar>(&self, assignment: &BTreeMap<VarId, T>) -> Result<T> {
        self.evaluate_with(|v| assignment.get(v).cloned())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs.clone())
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

/// Line format: `a[00]*a[11] - a[01]*a[10]`, `1/2*P[1,2] + (1+2*i)*P[1,3]^2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = if c.re.is_zero() { c.im.is_negative() } else { c.is_real() && c.re.is_negative() };
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coef = if magnitude.re.is_zero() || magnitude.im.is_zero() {
                magnitude.to_string()
            } else {
                format!("({magnitude})")
            };
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coef}*{m}")?;
            }
        }
        Ok(())
    }
}
