//! Exact arithmetic over GF(2), GF(p) and the rationals.
//!
//! Every [`FieldElement`] carries the [`FieldSpec`] it belongs to. Values are
//! kept in canonical form: residues in `[0, p)`, fractions reduced with a
//! positive denominator. Combining elements of two different fields is an
//! error.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported prime modulus. Products of two residues fit in a `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// GF(2).
    Binary,
    /// GF(p) for an odd prime `p`.
    Prime(u32),
    /// The rationals, standing in for the reals on integer matrices.
    Rational,
}

impl FieldSpec {
    /// Builds GF(p), checking primality. `p = 2` normalizes to [`FieldSpec::Binary`].
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if !(2..=MAX_MODULUS).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(if p == 2 {
            FieldSpec::Binary
        } else {
            FieldSpec::Prime(p as u32)
        })
    }

    /// The modulus of a finite field, `None` for the rationals.
    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldSpec::Binary => Some(2),
            FieldSpec::Prime(p) => Some(u64::from(p)),
            FieldSpec::Rational => None,
        }
    }

    pub fn is_finite(self) -> bool {
        self.modulus().is_some()
    }

    /// Short tag used in matrix files: `gf2`, `gf<p>` or `q`.
    pub fn tag(self) -> String {
        match self.modulus() {
            Some(p) => format!("gf{p}"),
            None => "q".to_string(),
        }
    }

    pub fn zero(self) -> FieldElement {
        FieldElement::zero(self)
    }

    pub fn one(self) -> FieldElement {
        FieldElement::one(self)
    }

    /// All elements of a finite field in residue order.
    pub fn elements(self) -> Option<Vec<FieldElement>> {
        let p = self.modulus()?;
        Some(
            (0..p)
                .map(|v| FieldElement {
                    spec: self,
                    repr: Repr::Residue(v),
                })
                .collect(),
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let tag = s.trim().to_ascii_lowercase();
        if tag == "q" {
            return Ok(FieldSpec::Rational);
        }
        let digits = tag
            .strip_prefix("gf")
            .ok_or_else(|| Error::UnknownFieldTag(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::UnknownFieldTag(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// Deterministic trial division; moduli are capped at 2^31 - 1.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Residue(u64),
    Rational(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    repr: Repr,
}

impl FieldElement {
    pub fn zero(spec: FieldSpec) -> FieldElement {
        FieldElement::from_i64(spec, 0)
    }

    pub fn one(spec: FieldSpec) -> FieldElement {
        FieldElement::from_i64(spec, 1)
    }

    /// The image of an integer under the canonical ring map into `spec`.
    pub fn from_i64(spec: FieldSpec, value: i64) -> FieldElement {
        FieldElement::from_bigint(spec, &BigInt::from(value))
    }

    pub fn from_bigint(spec: FieldSpec, value: &BigInt) -> FieldElement {
        let repr = match spec.modulus() {
            Some(p) => {
                let r = value.mod_floor(&BigInt::from(p));
                Repr::Residue(r.to_u64().expect("residue below modulus"))
            }
            None => Repr::Rational(BigRational::from_integer(value.clone())),
        };
        FieldElement { spec, repr }
    }

    /// A rational element `numer / denom`. Fails on a zero denominator.
    pub fn from_ratio(numer: i64, denom: i64) -> Result<FieldElement> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement {
            spec: FieldSpec::Rational,
            repr: Repr::Rational(BigRational::new(numer.into(), denom.into())),
        })
    }

    /// Parses a literal: `-3` or `7/2` over the rationals, integers (reduced
    /// modulo p) over prime fields.
    pub fn parse(spec: FieldSpec, literal: &str) -> Result<FieldElement> {
        let invalid = || Error::InvalidLiteral {
            literal: literal.to_string(),
            spec,
        };
        let text = literal.trim();
        match spec {
            FieldSpec::Rational => {
                let value = match text.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.parse().map_err(|_| invalid())?;
                        let d: BigInt = d.parse().map_err(|_| invalid())?;
                        if d.is_zero() {
                            return Err(invalid());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(text.parse().map_err(|_| invalid())?),
                };
                Ok(FieldElement {
                    spec,
                    repr: Repr::Rational(value),
                })
            }
            _ => {
                let n: BigInt = text.parse().map_err(|_| invalid())?;
                Ok(FieldElement::from_bigint(spec, &n))
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Residue(v) => *v == 0,
            Repr::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Residue(v) => *v == 1,
            Repr::Rational(q) => q.is_one(),
        }
    }

    /// The residue of a finite-field element.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(v) => Some(*v),
            Repr::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Residue(_) => None,
        }
    }

    /// The integer this element denotes: its residue for prime fields, the
    /// numerator of a rational with denominator 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        match &self.repr {
            Repr::Residue(v) => Some(BigInt::from(*v)),
            Repr::Rational(q) if q.is_integer() => Some(q.numer().clone()),
            Repr::Rational(_) => None,
        }
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::MixedFields {
                left: self.spec,
                right: other.spec,
            })
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.sum(other))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.difference(other))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.product(other))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.product(&other.inv()?))
    }

    pub fn neg(&self) -> FieldElement {
        let repr = match (&self.repr, self.spec.modulus()) {
            (Repr::Residue(v), Some(p)) => Repr::Residue((p - v) % p),
            (Repr::Rational(q), _) => Repr::Rational(-q),
            _ => unreachable!("representation matches spec"),
        };
        FieldElement {
            spec: self.spec,
            repr,
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match (&self.repr, self.spec.modulus()) {
            (Repr::Residue(v), Some(p)) => Repr::Residue(inv_mod(*v, p)),
            (Repr::Rational(q), _) => Repr::Rational(q.recip()),
            _ => unreachable!("representation matches spec"),
        };
        Ok(FieldElement {
            spec: self.spec,
            repr,
        })
    }

    // Same-spec arithmetic used where the caller already guarantees a shared
    // field (e.g. all entries of one matrix).

    pub(crate) fn sum(&self, other: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.spec, other.spec);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.spec.modulus().expect("finite");
                Repr::Residue((a + b) % p)
            }
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            _ => unreachable!("operands share a spec"),
        };
        FieldElement {
            spec: self.spec,
            repr,
        }
    }

    pub(crate) fn difference(&self, other: &FieldElement) -> FieldElement {
        self.sum(&other.neg())
    }

    pub(crate) fn product(&self, other: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.spec, other.spec);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.spec.modulus().expect("finite");
                Repr::Residue(a * b % p)
            }
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            _ => unreachable!("operands share a spec"),
        };
        FieldElement {
            spec: self.spec,
            repr,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Residue(v) => write!(f, "{v}"),
            Repr::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => {
                let sign = if q.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", q.numer().abs(), q.denom())
            }
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let egcd = (a as i64).extended_gcd(&(p as i64));
    debug_assert_eq!(egcd.gcd, 1);
    egcd.x.rem_euclid(p as i64) as u64
}
