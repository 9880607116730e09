//! Arithmetic backends.
//!
//! Every state, flattening and Plücker computation is generic over [`Scalar`].
//! Two backends are provided: [`Complex64`] for fast numerics and [`GaussRat`],
//! exact complex numbers `a + b·i` with arbitrary-precision rational parts.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A complex coefficient field usable by the state, poly and Plücker code.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for backends whose arithmetic is exact.
    const EXACT: bool;

    fn conj(&self) -> Self;

    /// `z * conj(z)`, a real value carried in the same backend.
    fn norm_sqr(&self) -> Self;

    /// `|z|` as a double; approximate for the exact backend.
    fn modulus(&self) -> f64;

    fn is_finite(&self) -> bool;

    fn from_gauss(g: &GaussRat) -> Self;

    fn to_complex(&self) -> Complex64;

    /// Real part as a double.
    fn re_f64(&self) -> f64 {
        self.to_complex().re
    }

    /// Representative of the projective class of a nonzero vector.
    ///
    /// Floats are scaled to unit 2-norm. Exact vectors are scaled so the first
    /// nonzero entry is 1, which needs no square roots.
    fn projective_rep(v: &[Self]) -> Vec<Self>;
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn norm_sqr(&self) -> Self {
        Complex64::new(Complex64::norm_sqr(self), 0.0)
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn is_finite(&self) -> bool {
        Complex64::is_finite(*self)
    }

    fn from_gauss(g: &GaussRat) -> Self {
        g.to_complex64()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn projective_rep(v: &[Self]) -> Vec<Self> {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter().map(|z| z / norm).collect()
    }
}

/// Exact Gaussian rational `re + im·i`.
///
/// Both parts are kept as reduced [`BigRational`]s, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    /// `(re_num/re_den) + (im_num/im_den)·i`. Panics on a zero denominator.
    pub fn from_fracs(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussRat {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Exact conversion of a finite double. Returns `None` for NaN/Inf.
    pub fn from_complex64(z: Complex64) -> Option<Self> {
        Some(GaussRat {
            re: BigRational::from_float(z.re)?,
            im: BigRational::from_float(z.im)?,
        })
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: divide through big integers.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    /// Panics on division by zero, like the rational parts do.
    fn div(self, rhs: GaussRat) -> GaussRat {
        let den = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let num = &self * &rhs.conj();
        GaussRat {
            re: num.re / &den,
            im: num.im / den,
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Scalar for GaussRat {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn norm_sqr(&self) -> Self {
        GaussRat::real(&self.re * &self.re + &self.im * &self.im)
    }

    fn modulus(&self) -> f64 {
        self.to_complex64().norm()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn from_gauss(g: &GaussRat) -> Self {
        g.clone()
    }

    fn to_complex(&self) -> Complex64 {
        self.to_complex64()
    }

    fn projective_rep(v: &[Self]) -> Vec<Self> {
        match v.iter().find(|z| !z.is_zero()) {
            Some(lead) => {
                let lead = lead.clone();
                v.iter().map(|z| z.clone() / lead.clone()).collect()
            }
            None => v.to_vec(),
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Prints `p/q+r/s*i`, omitting zero parts and unit denominators.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rat(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*i", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational number from {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"`, `"p"`, or a plain decimal such as `"-0.125"` or `"1e-3"`,
/// all exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    parse_decimal(t).ok_or_else(err)
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Some(value)
}

impl FromStr for GaussRat {
    type Err = ParseRationalError;

    /// Accepts the [`Display`](fmt::Display) format: `a`, `b*i`, `a+b*i`, `a-b*i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        let Some(body) = t.strip_suffix("*i") else {
            return Ok(GaussRat::real(parse_rational(t)?));
        };
        // Split at the last sign that is not a leading sign or an exponent sign.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
        match split {
            Some(p) => {
                let re = parse_rational(&body[..p])?;
                let im_text = if bytes[p] == b'+' { &body[p + 1..] } else { &body[p..] };
                let im = parse_rational(im_text)?;
                Ok(GaussRat { re, im })
            }
            None if !body.is_empty() => Ok(GaussRat {
                re: BigRational::zero(),
                im: parse_rational(body)?,
            }),
            None => Err(err()),
        }
    }
}
