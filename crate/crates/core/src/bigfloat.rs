//! Arbitrary-precision complex numbers.
//!
//! Reals are binary `dashu` floats; every operation is rounded through the
//! context of a [`ComplexField`], so a value's precision is whatever the domain
//! that produced it says it is. Conversions to and from decimal strings go
//! through exact rationals, which makes printing and re-parsing at a stated
//! number of significant digits an identity.

use std::cmp::Ordering;
use std::fmt;

use dashu_base::Abs;
use dashu_float::round::mode::HalfEven;
use dashu_float::{Context, FBig};
use dashu_int::IBig;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

pub type Real = FBig<HalfEven, 2>;

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: usize = 32;

/// Working precision, stored in bits but usually specified in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision {
    bits: usize,
}

impl Precision {
    pub fn from_digits(digits: usize) -> Self {
        Precision {
            bits: (digits as f64 * LOG2_10).ceil() as usize + GUARD_BITS,
        }
    }

    pub fn from_bits(bits: usize) -> Self {
        Precision { bits: bits.max(16) }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Decimal digits carried (guard bits excluded).
    pub fn digits(&self) -> usize {
        ((self.bits.saturating_sub(GUARD_BITS)) as f64 / LOG2_10).floor() as usize
    }
}

pub(crate) fn ibig_from(n: &BigInt) -> IBig {
    IBig::from_le_bytes(&n.to_signed_bytes_le())
}

pub(crate) fn bigint_from(n: &IBig) -> BigInt {
    BigInt::from_signed_bytes_le(&n.to_le_bytes())
}

/// Exact rational value of a binary float.
pub fn real_to_rational(x: &Real) -> BigRational {
    let sig = bigint_from(x.repr().significand());
    let exp = x.repr().exponent();
    if exp >= 0 {
        BigRational::from_integer(sig << exp as usize)
    } else {
        BigRational::new(sig, BigInt::one() << (-exp) as usize)
    }
}

fn real_is_zero(x: &Real) -> bool {
    x.repr().is_zero()
}

/// `floor(log2 |x|)` estimate; `None` for zero.
pub fn real_log2(x: &Real) -> Option<i64> {
    if real_is_zero(x) {
        return None;
    }
    let sig = x.repr().significand();
    let bits = bigint_from(sig).bits() as i64;
    Some(bits - 1 + x.repr().exponent() as i64)
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: Real,
    pub im: Real,
}

impl BigComplex {
    pub fn zero() -> Self {
        BigComplex {
            re: Real::ZERO,
            im: Real::ZERO,
        }
    }

    pub fn is_zero(&self) -> bool {
        real_is_zero(&self.re) && real_is_zero(&self.im)
    }

    pub fn is_real(&self) -> bool {
        real_is_zero(&self.im)
    }

    /// Approximate `log10 |z|` (for reports); `None` for zero.
    pub fn log10_abs(&self) -> Option<f64> {
        let a = real_log2(&self.re);
        let b = real_log2(&self.im);
        let top = a.max(b)?;
        // scale both into f64 range relative to 2^top
        let scale = |x: &Real| -> f64 {
            let q = real_to_rational(x);
            let shifted = if top >= 0 {
                q / BigRational::from_integer(BigInt::one() << top as usize)
            } else {
                q * BigRational::from_integer(BigInt::one() << (-top) as usize)
            };
            shifted.to_f64().unwrap_or(0.0)
        };
        let (r, i) = (scale(&self.re), scale(&self.im));
        Some(((r * r + i * i).sqrt()).log10() + top as f64 * std::f64::consts::LOG10_2)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            real_to_rational(&self.re).to_f64().unwrap_or(f64::NAN),
            real_to_rational(&self.im).to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (format_real(&self.re, 20), format_real(&self.im, 20));
        write!(f, "{re},{im}")
    }
}

/// The domain of complex floats at a fixed working precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexField {
    prec: Precision,
}

impl ComplexField {
    pub fn new(prec: Precision) -> Self {
        ComplexField { prec }
    }

    pub fn with_digits(digits: usize) -> Self {
        ComplexField::new(Precision::from_digits(digits))
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn digits(&self) -> usize {
        self.prec.digits()
    }

    fn ctx(&self) -> Context<HalfEven> {
        Context::new(self.prec.bits)
    }

    pub fn real_from_int(&self, n: &BigInt) -> Real {
        self.round_real(&Real::from(ibig_from(n)))
    }

    pub fn real_from_rational(&self, q: &BigRational) -> Real {
        let n = Real::from(ibig_from(q.numer()));
        let d = Real::from(ibig_from(q.denom()));
        self.ctx().div(n.repr(), d.repr()).value()
    }

    fn round_real(&self, x: &Real) -> Real {
        // adding zero rounds through the context
        self.ctx().add(x.repr(), Real::ZERO.repr()).value()
    }

    pub fn complex(&self, re: &BigRational, im: &BigRational) -> BigComplex {
        BigComplex {
            re: self.real_from_rational(re),
            im: self.real_from_rational(im),
        }
    }

    pub fn from_real(&self, re: Real) -> BigComplex {
        BigComplex {
            re: self.round_real(&re),
            im: Real::ZERO,
        }
    }

    /// Re-rounds a value produced at another precision.
    pub fn coerce(&self, z: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.round_real(&z.re),
            im: self.round_real(&z.im),
        }
    }

    pub fn radd(&self, a: &Real, b: &Real) -> Real {
        self.ctx().add(a.repr(), b.repr()).value()
    }
    pub fn rsub(&self, a: &Real, b: &Real) -> Real {
        self.ctx().sub(a.repr(), b.repr()).value()
    }
    pub fn rmul(&self, a: &Real, b: &Real) -> Real {
        self.ctx().mul(a.repr(), b.repr()).value()
    }
    pub fn rdiv(&self, a: &Real, b: &Real) -> Real {
        self.ctx().div(a.repr(), b.repr()).value()
    }
    pub fn rsqrt(&self, a: &Real) -> Real {
        if real_is_zero(a) {
            return Real::ZERO;
        }
        self.ctx().sqrt(a.repr()).value()
    }

    pub fn abs_sq(&self, z: &BigComplex) -> Real {
        self.radd(&self.rmul(&z.re, &z.re), &self.rmul(&z.im, &z.im))
    }

    pub fn abs(&self, z: &BigComplex) -> Real {
        self.rsqrt(&self.abs_sq(z))
    }

    pub fn scale_real(&self, z: &BigComplex, r: &Real) -> BigComplex {
        BigComplex {
            re: self.rmul(&z.re, r),
            im: self.rmul(&z.im, r),
        }
    }

    pub fn conj(&self, z: &BigComplex) -> BigComplex {
        BigComplex {
            re: z.re.clone(),
            im: -z.im.clone(),
        }
    }

    /// `10^k` as a real.
    pub fn pow10(&self, k: i64) -> Real {
        let t = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
        if k >= 0 {
            self.real_from_int(&t)
        } else {
            self.real_from_rational(&BigRational::new(BigInt::one(), t))
        }
    }

    pub fn pow(&self, z: &BigComplex, k: usize) -> BigComplex {
        let mut acc = self.one();
        let mut base = z.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Parses `re,im` or a single real decimal.
    pub fn parse(&self, s: &str) -> Result<BigComplex> {
        let s = s.trim();
        let (re, im) = match s.split_once(',') {
            Some((a, b)) => (parse_decimal(a)?, parse_decimal(b)?),
            None => (parse_decimal(s)?, BigRational::zero()),
        };
        Ok(self.complex(&re, &im))
    }

    /// `|a - b| <= tol * max(1, |a|, |b|)`.
    pub fn approx_eq(&self, a: &BigComplex, b: &BigComplex, tol: &Real) -> bool {
        let d = self.abs_sq(&self.sub(a, b));
        let one = self.real_from_int(&BigInt::one());
        let mut scale = one;
        for v in [self.abs_sq(a), self.abs_sq(b)] {
            if v > scale {
                scale = v;
            }
        }
        d <= self.rmul(&self.rmul(tol, tol), &scale)
    }
}

impl Field for ComplexField {
    type Elem = BigComplex;

    fn zero(&self) -> BigComplex {
        BigComplex::zero()
    }
    fn one(&self) -> BigComplex {
        BigComplex {
            re: self.real_from_int(&BigInt::one()),
            im: Real::ZERO,
        }
    }
    fn is_zero(&self, a: &BigComplex) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.radd(&a.re, &b.re),
            im: self.radd(&a.im, &b.im),
        }
    }
    fn sub(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.rsub(&a.re, &b.re),
            im: self.rsub(&a.im, &b.im),
        }
    }
    fn mul(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        if a.is_real() && b.is_real() {
            return BigComplex {
                re: self.rmul(&a.re, &b.re),
                im: Real::ZERO,
            };
        }
        BigComplex {
            re: self.rsub(&self.rmul(&a.re, &b.re), &self.rmul(&a.im, &b.im)),
            im: self.radd(&self.rmul(&a.re, &b.im), &self.rmul(&a.im, &b.re)),
        }
    }
    fn neg(&self, a: &BigComplex) -> BigComplex {
        BigComplex {
            re: -a.re.clone(),
            im: -a.im.clone(),
        }
    }
    fn inv(&self, a: &BigComplex) -> Option<BigComplex> {
        if a.is_zero() {
            return None;
        }
        let n = self.abs_sq(a);
        Some(BigComplex {
            re: self.rdiv(&a.re, &n),
            im: -self.rdiv(&a.im, &n),
        })
    }
    fn from_rational(&self, q: &BigRational) -> BigComplex {
        BigComplex {
            re: self.real_from_rational(q),
            im: Real::ZERO,
        }
    }
    fn render(&self, a: &BigComplex) -> String {
        let d = self.digits().min(30);
        if a.is_real() {
            format_real(&a.re, d)
        } else {
            format!("({}{}{}*I)", format_real(&a.re, d), sign_prefix(&a.im), format_real(&a.im.clone().abs(), d))
        }
    }
    fn is_compound(&self, _a: &BigComplex) -> bool {
        false
    }
}

fn sign_prefix(x: &Real) -> &'static str {
    if *x.repr().significand() < IBig::ZERO {
        "-"
    } else {
        "+"
    }
}


/// Parses a decimal literal (`-1.25e-3`, `42`, `.5`) into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed decimal `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let e = exp - fp.len() as i64;
    let ten = BigInt::from(10u32);
    let mut q = if e >= 0 {
        BigRational::from_integer(n * ten.pow(e as u32))
    } else {
        BigRational::new(n, ten.pow((-e) as u32))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Number of decimal digits of a positive integer.
fn decimal_len(n: &BigInt) -> usize {
    n.to_string().trim_start_matches('-').len()
}

/// Scientific notation with `sig` significant digits, e.g. `-1.2345e-7`; `0`
/// for zero. Rounding is half-to-even on the exact binary value.
pub fn format_rational_sci(q: &BigRational, sig: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let neg = q.is_negative();
    let a = q.abs();
    // estimate e10 = floor(log10 a)
    let mut e10 = decimal_len(&(a.numer() / a.denom()).max(BigInt::zero())) as i64 - 1;
    if a < BigRational::one() {
        let inv = a.denom() / a.numer();
        e10 = -(decimal_len(&inv) as i64);
    }
    let ten = BigInt::from(10u32);
    let scaled_int = |e10: i64| -> BigInt {
        let shift = sig as i64 - 1 - e10;
        let s = if shift >= 0 {
            &a * BigRational::from_integer(ten.pow(shift as u32))
        } else {
            &a / BigRational::from_integer(ten.pow((-shift) as u32))
        };
        round_half_even(&s)
    };
    let mut m = scaled_int(e10);
    let lo = ten.pow(sig as u32 - 1);
    let hi = ten.pow(sig as u32);
    // correct the estimate by at most a step either way
    for _ in 0..3 {
        if m >= hi {
            e10 += 1;
            m = scaled_int(e10);
        } else if m < lo {
            e10 -= 1;
            m = scaled_int(e10);
        } else {
            break;
        }
    }
    if m >= hi {
        // rounding carried into a new digit (9.99.. -> 10.0)
        m /= &ten;
        e10 += 1;
    }
    let ds = m.to_string();
    let (head, tail) = ds.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if e10 != 0 {
        out.push_str(&format!("e{e10}"));
    }
    out
}

pub fn round_half_even(q: &BigRational) -> BigInt {
    let (n, d) = (q.numer(), q.denom());
    let (fl, r) = n.div_mod_floor(d);
    let twice = &r * 2u32;
    match twice.cmp(d) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1u32,
        Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1u32
            }
        }
    }
}

pub fn format_real(x: &Real, sig: usize) -> String {
    format_rational_sci(&real_to_rational(x), sig)
}

/// Nearest integer to a real.
pub fn round_to_int(x: &Real) -> BigInt {
    round_half_even(&real_to_rational(x))
}

pub fn real_sign(x: &Real) -> Sign {
    let s = bigint_from(x.repr().significand());
    s.sign()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn decimal_roundtrip_exact_digits() {
        let cf = ComplexField::with_digits(40);
        for s in ["1.234567890123456789012345678901234567891", "-3.3e-17", "7", "9.99999e300", "-1e-400"] {
            let q = parse_decimal(s).unwrap();
            let x = cf.real_from_rational(&q);
            let printed = format_real(&x, 40);
            let again = cf.real_from_rational(&parse_decimal(&printed).unwrap());
            assert_eq!(format_real(&again, 40), printed);
        }
    }

    #[test]
    fn format_carries() {
        assert_eq!(format_rational_sci(&rat(9999, 1000), 3), "1e1");
        assert_eq!(format_rational_sci(&rat(1, 3), 4), "3.333e-1");
        assert_eq!(format_rational_sci(&rat(-25, 1), 1), "-2e1");
        assert_eq!(format_rational_sci(&rat(1, 1), 5), "1");
    }

    #[test]
    fn arithmetic_and_inverse() {
        let cf = ComplexField::with_digits(50);
        let z = cf.complex(&rat(3, 1), &rat(4, 1));
        let w = cf.mul(&z, &cf.inv(&z).unwrap());
        let tol = cf.pow10(-45);
        assert!(cf.approx_eq(&w, &cf.one(), &tol));
        let a = cf.abs(&z);
        assert_eq!(round_to_int(&a), BigInt::from(5));
        assert!((z.log10_abs().unwrap() - 5f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn sqrt_two_digits() {
        let cf = ComplexField::with_digits(60);
        let two = cf.real_from_int(&BigInt::from(2));
        let r = cf.rsqrt(&two);
        assert!(format_real(&r, 30).starts_with("1.41421356237309504880168872421"), "{}", format_real(&r, 30));
    }

    #[test]
    fn bigint_conversion_roundtrip() {
        for n in ["0", "-1", "123456789012345678901234567890", "-98765432109876543210987654321"] {
            let b: BigInt = n.parse().unwrap();
            assert_eq!(bigint_from(&ibig_from(&b)), b);
        }
    }

    #[test]
    fn malformed_decimals_rejected() {
        for s in ["", "1.2.3", "abc", "1e", "--1", "."] {
            assert!(parse_decimal(s).is_err(), "{s}");
        }
    }
}
