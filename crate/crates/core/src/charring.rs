//! Virtual characters of the circle with half-integer weights.
//!
//! A character is a finite Laurent polynomial in `s = z^(1/2)` with integer
//! coefficients. Exponents are stored in `s`-units, so the exponent `k`
//! stands for `z^(k/2)`. A character lies in the honest representation ring
//! exactly when every stored exponent is even, see
//! [`VirtualCharacter::is_integral`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Finitely supported map from `s`-exponent to a nonzero integer coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VirtualCharacter {
    terms: BTreeMap<i64, BigInt>,
}

impl VirtualCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `coeff * s^exp`, i.e. `coeff * z^(exp/2)`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, coeff.into());
        out
    }

    /// Builds a character from `(s-exponent, coefficient)` pairs; repeated
    /// exponents are collected.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (exp, c) in terms {
            out.add_term(exp, c.into());
        }
        out
    }

    /// `s^w - s^(-w)`, the Weyl-type denominator attached to a rotation
    /// weight `w` (in `z`-units).
    pub fn weyl_binomial(w: i64) -> Self {
        Self::from_terms([(w, 1), (-w, -1)])
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `s`-exponent `exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is even, i.e. the character has no genuine
    /// half-integer weights.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|e| e.is_even())
    }

    /// Multiplicity of the trivial representation.
    pub fn invariant_part(&self) -> BigInt {
        self.coeff(0)
    }

    /// Multiplies by `s^by`.
    pub fn shift(&self, by: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Returns the unique `q` with `q * den == self`.
    ///
    /// Both operands are shifted to lowest exponent zero and divided as
    /// ordinary integer polynomials; any nonzero remainder or non-integral
    /// leading quotient is reported as [`Error::NotDivisible`].
    pub fn exact_quotient(&self, den: &VirtualCharacter) -> Result<VirtualCharacter> {
        let (Some(den_lo), Some(den_hi)) = (den.min_exp(), den.max_exp()) else {
            return Err(Error::NotDivisible("division by the zero character".into()));
        };
        let Some(num_lo) = self.min_exp() else {
            return Ok(Self::zero());
        };
        let den_deg = den_hi - den_lo;
        let den_lead = den.terms[&den_hi].clone();

        // Remainder as a shifted polynomial; keys are degrees >= 0.
        let mut rem: BTreeMap<i64, BigInt> =
            self.terms.iter().map(|(e, c)| (e - num_lo, c.clone())).collect();
        let mut quot: BTreeMap<i64, BigInt> = BTreeMap::new();

        while let Some((&top, top_coeff)) = rem.iter().next_back() {
            if top < den_deg {
                break;
            }
            let (q, r) = top_coeff.div_rem(&den_lead);
            if !r.is_zero() {
                return Err(not_divisible(self, den));
            }
            let shift = top - den_deg;
            for (e, c) in den.terms.iter() {
                let slot = rem.entry(e - den_lo + shift).or_insert_with(BigInt::zero);
                *slot -= c * &q;
                if slot.is_zero() {
                    let key = e - den_lo + shift;
                    rem.remove(&key);
                }
            }
            quot.insert(shift, q);
        }
        if !rem.is_empty() {
            return Err(not_divisible(self, den));
        }
        let offset = num_lo - den_lo;
        Ok(Self {
            terms: quot.into_iter().map(|(e, c)| (e + offset, c)).collect(),
        })
    }
}

fn not_divisible(num: &VirtualCharacter, den: &VirtualCharacter) -> Error {
    Error::NotDivisible(format!("({num}) is not a multiple of ({den})"))
}

impl Add for &VirtualCharacter {
    type Output = VirtualCharacter;

    fn add(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &VirtualCharacter {
    type Output = VirtualCharacter;

    fn sub(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &VirtualCharacter {
    type Output = VirtualCharacter;

    fn mul(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        let mut out = VirtualCharacter::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &VirtualCharacter {
    type Output = VirtualCharacter;

    fn neg(self) -> VirtualCharacter {
        VirtualCharacter {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for VirtualCharacter {
            type Output = VirtualCharacter;
            fn $method(self, rhs: VirtualCharacter) -> VirtualCharacter {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&VirtualCharacter> for VirtualCharacter {
            type Output = VirtualCharacter;
            fn $method(self, rhs: &VirtualCharacter) -> VirtualCharacter {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for VirtualCharacter {
    type Output = VirtualCharacter;
    fn neg(self) -> VirtualCharacter {
        -&self
    }
}

impl std::iter::Sum for VirtualCharacter {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

pub fn char_sum(a: &VirtualCharacter, b: &VirtualCharacter) -> VirtualCharacter {
    a + b
}

pub fn char_product(a: &VirtualCharacter, b: &VirtualCharacter) -> VirtualCharacter {
    a * b
}

pub fn exact_quotient(num: &VirtualCharacter, den: &VirtualCharacter) -> Result<VirtualCharacter> {
    num.exact_quotient(den)
}

pub fn invariant_part(a: &VirtualCharacter) -> BigInt {
    a.invariant_part()
}

pub fn canonical_string(a: &VirtualCharacter) -> String {
    a.to_string()
}

fn write_power(f: &mut fmt::Formatter<'_>, exp: i64) -> fmt::Result {
    if exp.is_even() {
        match exp / 2 {
            1 => write!(f, "z"),
            e => write!(f, "z^{e}"),
        }
    } else {
        write!(f, "z^({exp}/2)")
    }
}

/// Canonical rendering: terms in increasing exponent order, unit
/// coefficients suppressed except on the constant term, `"0"` for zero.
impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exp, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if *exp == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write_power(f, *exp)?;
        }
        Ok(())
    }
}

impl fmt::Debug for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VirtualCharacter({self})")
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn signed_int(&mut self) -> Option<i64> {
        let neg = self.eat("-");
        let digits = self.digits()?;
        let v: i64 = digits.parse().ok()?;
        Some(if neg { -v } else { v })
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} in {:?}", self.pos, self.src))
    }

    /// `"z"` followed by an optional exponent; returns the `s`-exponent.
    fn power(&mut self) -> Result<i64> {
        if !self.eat("z") {
            return Err(self.err("expected 'z'"));
        }
        if !self.eat("^") {
            return Ok(2);
        }
        if self.eat("(") {
            let num = self.signed_int().ok_or_else(|| self.err("expected exponent"))?;
            if !self.eat("/2)") {
                return Err(self.err("expected '/2)'"));
            }
            if num.is_even() {
                return Err(self.err("half exponent must have an odd numerator"));
            }
            Ok(num)
        } else {
            let e = self.signed_int().ok_or_else(|| self.err("expected exponent"))?;
            e.checked_mul(2).ok_or_else(|| self.err("exponent overflow"))
        }
    }

    fn term(&mut self) -> Result<(i64, BigInt)> {
        if self.peek() == Some('z') {
            return Ok((self.power()?, BigInt::one()));
        }
        let digits = self.digits().ok_or_else(|| self.err("expected coefficient or 'z'"))?;
        let coeff: BigInt = digits.parse().map_err(|_| self.err("bad coefficient"))?;
        if self.eat("*") {
            Ok((self.power()?, coeff))
        } else {
            Ok((0, coeff))
        }
    }
}

impl FromStr for VirtualCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { src: s.trim(), pos: 0 };
        let mut out = VirtualCharacter::zero();
        let mut negative = cur.eat("-");
        cur.skip_ws();
        loop {
            let (exp, c) = cur.term()?;
            out.add_term(exp, if negative { -c } else { c });
            cur.skip_ws();
            if cur.pos == cur.src.len() {
                break;
            }
            negative = match cur.peek() {
                Some('+') => false,
                Some('-') => true,
                _ => return Err(cur.err("expected '+' or '-'")),
            };
            cur.pos += 1;
            cur.skip_ws();
        }
        Ok(out)
    }
}

/// Quotient of two virtual characters with a nonzero denominator.
///
/// Equality is by cross-multiplication, so different representatives of the
/// same fraction compare equal.
#[derive(Clone, Debug)]
pub struct RationalCharacter {
    numerator: VirtualCharacter,
    denominator: VirtualCharacter,
}

impl RationalCharacter {
    pub fn new(numerator: VirtualCharacter, denominator: VirtualCharacter) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::NotDivisible("rational character with zero denominator".into()));
        }
        Ok(Self { numerator, denominator })
    }

    pub fn zero() -> Self {
        Self::from(VirtualCharacter::zero())
    }

    pub fn numerator(&self) -> &VirtualCharacter {
        &self.numerator
    }

    pub fn denominator(&self) -> &VirtualCharacter {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Certifies the fraction is a genuine virtual character.
    pub fn to_virtual(&self) -> Result<VirtualCharacter> {
        self.numerator.exact_quotient(&self.denominator)
    }
}

impl From<VirtualCharacter> for RationalCharacter {
    fn from(numerator: VirtualCharacter) -> Self {
        Self { numerator, denominator: VirtualCharacter::one() }
    }
}

impl PartialEq for RationalCharacter {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl Eq for RationalCharacter {}

impl Add for &RationalCharacter {
    type Output = RationalCharacter;

    fn add(self, rhs: &RationalCharacter) -> RationalCharacter {
        if self.denominator == rhs.denominator {
            return RationalCharacter {
                numerator: &self.numerator + &rhs.numerator,
                denominator: self.denominator.clone(),
            };
        }
        RationalCharacter {
            numerator: &self.numerator * &rhs.denominator + &rhs.numerator * &self.denominator,
            denominator: &self.denominator * &rhs.denominator,
        }
    }
}

impl Add for RationalCharacter {
    type Output = RationalCharacter;
    fn add(self, rhs: RationalCharacter) -> RationalCharacter {
        &self + &rhs
    }
}

impl Neg for RationalCharacter {
    type Output = RationalCharacter;
    fn neg(self) -> RationalCharacter {
        RationalCharacter { numerator: -self.numerator, denominator: self.denominator }
    }
}

impl std::iter::Sum for RationalCharacter {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vc(s: &str) -> VirtualCharacter {
        s.parse().unwrap()
    }

    #[test]
    fn sums() {
        assert!((vc("z") + vc("-z")).is_zero());
        assert_eq!(vc("z^(1/2) + 1") + vc("z^(1/2)"), VirtualCharacter::from_terms([(1, 2), (0, 1)]));
        assert_eq!(vc("-z^2") + vc("-z^3"), VirtualCharacter::from_terms([(4, -1), (6, -1)]));
    }

    #[test]
    fn products() {
        assert_eq!(vc("z^(1/2) - z^(-1/2)") * vc("z^(1/2) + z^(-1/2)"), vc("z - z^-1"));
        let a = vc("-3*z^(-1/2) + 2 + z^2");
        assert_eq!(VirtualCharacter::one() * &a, a);
        // Telescoping: (s - 1/s)(s^2 + 1 + s^-2) = s^3 - s^-3.
        assert_eq!(
            vc("z^(1/2) - z^(-1/2)") * vc("z + 1 + z^-1"),
            VirtualCharacter::from_terms([(3, 1), (-3, -1)])
        );
    }

    #[test]
    fn quotients() {
        let num = VirtualCharacter::from_terms([(3, 1), (-3, -1)]);
        let den = VirtualCharacter::weyl_binomial(1);
        assert_eq!(num.exact_quotient(&den).unwrap(), vc("z + 1 + z^-1"));

        let a = vc("-3*z^(-1/2) + 2 + z^2");
        assert_eq!(a.exact_quotient(&VirtualCharacter::one()).unwrap(), a);

        let lone = VirtualCharacter::monomial(1, 1);
        assert!(matches!(lone.exact_quotient(&den), Err(Error::NotDivisible(_))));
        assert!(matches!(a.exact_quotient(&VirtualCharacter::zero()), Err(Error::NotDivisible(_))));
        assert!(VirtualCharacter::zero().exact_quotient(&den).unwrap().is_zero());
    }

    #[test]
    fn quotient_with_non_unit_leading_coefficient() {
        let den = vc("2*z - 1");
        let q = vc("z^(-1/2) + 3");
        assert_eq!((&q * &den).exact_quotient(&den).unwrap(), q);
        assert!(vc("z").exact_quotient(&den).is_err());
    }

    #[test]
    fn invariant_parts() {
        assert_eq!(vc("z + 2 + z^-1").invariant_part(), BigInt::from(2));
        assert_eq!(VirtualCharacter::zero().invariant_part(), BigInt::zero());
        assert_eq!((-vc("z + 1 + z^-1")).invariant_part(), BigInt::from(-1));
    }

    #[test]
    fn rendering() {
        assert_eq!(VirtualCharacter::zero().to_string(), "0");
        assert_eq!(vc("-z^2 + 3").to_string(), "3 - z^2");
        assert_eq!(VirtualCharacter::monomial(1, 1).to_string(), "z^(1/2)");
        assert_eq!(
            VirtualCharacter::from_terms([(-1, -3), (0, 2), (4, 1)]).to_string(),
            "-3*z^(-1/2) + 2 + z^2"
        );
        assert_eq!((-vc("z + 1 + z^-1")).to_string(), "-z^-1 - 1 - z");
        assert_eq!(VirtualCharacter::monomial(0, 1).to_string(), "1");
        assert_eq!(VirtualCharacter::monomial(0, -1).to_string(), "-1");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "z^(2/2)", "3 +", "x", "z^", "2*", "1 2"] {
            assert!(bad.parse::<VirtualCharacter>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn integrality_query() {
        assert!(vc("z + 1 + z^-1").is_integral());
        assert!(!vc("z^(1/2)").is_integral());
    }

    #[test]
    fn rational_equality_by_cross_multiplication() {
        let den = VirtualCharacter::weyl_binomial(1);
        let a = RationalCharacter::new(VirtualCharacter::from_terms([(3, 1), (-3, -1)]), den.clone()).unwrap();
        let b = RationalCharacter::from(vc("z + 1 + z^-1"));
        assert_eq!(a, b);
        assert_eq!(a.to_virtual().unwrap(), vc("z + 1 + z^-1"));
        assert!(RationalCharacter::new(vc("1"), VirtualCharacter::zero()).is_err());
    }
}
