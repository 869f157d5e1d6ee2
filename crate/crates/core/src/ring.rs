//! Exact coefficient rings: the rationals, prime fields `F_p`, truncated
//! p-adic rings `Z/p^M` and equal-characteristic truncations `k[h]/h^M`.
//!
//! Every ring admitted here has odd (or zero) residue characteristic, so `2`
//! is always a unit. Elements are stored in canonical form, which makes
//! equality a plain representation comparison:
//!
//! * rationals are fully reduced with a positive denominator,
//! * residues modulo `p^M` lie in `[0, p^M)`,
//! * elements of `k[h]/h^M` are coefficient vectors of length exactly `M`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::CommRing;

/// Largest admissible `p^M`; residues are kept in machine words.
pub const MAX_MODULUS: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("truncation exponent must be at least 1")]
    InvalidModulus,
    #[error("modulus {p}^{m} does not fit in 62 bits")]
    ModulusTooLarge { p: u64, m: u32 },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingSpec, right: RingSpec },
    #[error("{0} is not a local ring with a nontrivial maximal ideal")]
    NotLocalRing(RingSpec),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("Teichmuller iteration did not reach a fixed point")]
    TeichmullerDiverged,
}

/// Residue field of an equal-characteristic truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rational,
    Prime(u64),
}

impl BaseField {
    pub fn spec(self) -> RingSpec {
        match self {
            BaseField::Rational => RingSpec::Rational,
            BaseField::Prime(p) => RingSpec::PrimeField(p),
        }
    }
}

/// Description of a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rational,
    PrimeField(u64),
    /// `Z/p^M`, the precision-`M` model of the p-adic integers.
    PadicTrunc(u64, u32),
    /// `k[h]/h^M`, the precision-`M` model of `k[[h]]`.
    HbarTrunc(BaseField, u32),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_odd_prime(p: u64) -> Result<(), RingError> {
    if p == 2 {
        return Err(RingError::CharacteristicTwo);
    }
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    Ok(())
}

fn checked_prime_power(p: u64, m: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..m {
        acc = acc.checked_mul(p)?;
        if acc > MAX_MODULUS {
            return None;
        }
    }
    Some(acc)
}

impl RingSpec {
    pub fn validate(&self) -> Result<(), RingError> {
        match *self {
            RingSpec::Rational => Ok(()),
            RingSpec::PrimeField(p) => check_odd_prime(p),
            RingSpec::PadicTrunc(p, m) => {
                check_odd_prime(p)?;
                if m < 1 {
                    return Err(RingError::InvalidModulus);
                }
                checked_prime_power(p, m)
                    .map(|_| ())
                    .ok_or(RingError::ModulusTooLarge { p, m })
            }
            RingSpec::HbarTrunc(base, m) => {
                if let BaseField::Prime(p) = base {
                    check_odd_prime(p)?;
                }
                if m < 1 {
                    return Err(RingError::InvalidModulus);
                }
                Ok(())
            }
        }
    }

    /// Modulus of a residue ring (`p` or `p^M`).
    fn modulus(&self) -> Option<u64> {
        match *self {
            RingSpec::PrimeField(p) => Some(p),
            RingSpec::PadicTrunc(p, m) => checked_prime_power(p, m),
            _ => None,
        }
    }

    /// The residue field of a local ring kind.
    pub fn residue_field(&self) -> Option<RingSpec> {
        match *self {
            RingSpec::PadicTrunc(p, _) => Some(RingSpec::PrimeField(p)),
            RingSpec::HbarTrunc(base, _) => Some(base.spec()),
            _ => None,
        }
    }

    /// `p` for rings with residue field `F_p`, `0` for residue field `Q`.
    pub fn residue_characteristic(&self) -> u64 {
        match *self {
            RingSpec::Rational | RingSpec::HbarTrunc(BaseField::Rational, _) => 0,
            RingSpec::PrimeField(p)
            | RingSpec::PadicTrunc(p, _)
            | RingSpec::HbarTrunc(BaseField::Prime(p), _) => p,
        }
    }

    /// Truncation exponent `M` of the maximal-ideal direction (1 for fields).
    pub fn truncation(&self) -> u32 {
        match *self {
            RingSpec::PadicTrunc(_, m) | RingSpec::HbarTrunc(_, m) => m,
            _ => 1,
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            RingSpec::Rational | RingSpec::PrimeField(_) => true,
            RingSpec::PadicTrunc(_, m) | RingSpec::HbarTrunc(_, m) => m == 1,
        }
    }

    /// Every ring here is local; fields are the only integral domains.
    pub fn is_domain(&self) -> bool {
        self.is_field()
    }

    /// Number of elements, when finite and representable.
    pub fn order(&self) -> Option<u128> {
        match *self {
            RingSpec::Rational | RingSpec::HbarTrunc(BaseField::Rational, _) => None,
            RingSpec::PrimeField(_) | RingSpec::PadicTrunc(..) => self.modulus().map(u128::from),
            RingSpec::HbarTrunc(BaseField::Prime(p), m) => {
                let mut acc: u128 = 1;
                for _ in 0..m {
                    acc = acc.checked_mul(u128::from(p))?;
                }
                Some(acc)
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RingSpec::Rational => write!(f, "rational"),
            RingSpec::PrimeField(p) => write!(f, "prime:{p}"),
            RingSpec::PadicTrunc(p, m) => write!(f, "padic:{p}:{m}"),
            RingSpec::HbarTrunc(BaseField::Prime(p), m) => write!(f, "hbar:{p}:{m}"),
            RingSpec::HbarTrunc(BaseField::Rational, m) => write!(f, "hbar:rational:{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    /// Grammar: `rational | prime:<p> | padic:<p>:<M> | hbar:<p>:<M> | hbar:rational:<M>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| RingError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad("expected a nonnegative integer"));
        let exp = |t: &str| t.trim().parse::<u32>().map_err(|_| bad("expected a truncation exponent"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["rational"] => RingSpec::Rational,
            ["prime", p] => RingSpec::PrimeField(num(p)?),
            ["padic", p, m] => RingSpec::PadicTrunc(num(p)?, exp(m)?),
            ["hbar", "rational", m] => RingSpec::HbarTrunc(BaseField::Rational, exp(m)?),
            ["hbar", p, m] => RingSpec::HbarTrunc(BaseField::Prime(num(p)?), exp(m)?),
            _ => return Err(bad("unknown ring kind")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Res(u64),
    /// Coefficients in `h`, each a `Rat` or `Res` of the base field.
    Ser(Vec<Repr>),
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

fn bigint_mod(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

mod repr {
    use super::*;

    pub(super) fn zero(spec: RingSpec) -> Repr {
        match spec {
            RingSpec::Rational => Repr::Rat(BigRational::zero()),
            RingSpec::PrimeField(_) | RingSpec::PadicTrunc(..) => Repr::Res(0),
            RingSpec::HbarTrunc(base, m) => Repr::Ser(vec![zero(base.spec()); m as usize]),
        }
    }

    pub(super) fn int(spec: RingSpec, n: &BigInt) -> Repr {
        match spec {
            RingSpec::Rational => Repr::Rat(BigRational::from_integer(n.clone())),
            RingSpec::PrimeField(_) | RingSpec::PadicTrunc(..) => {
                Repr::Res(bigint_mod(n, spec.modulus().expect("validated")))
            }
            RingSpec::HbarTrunc(base, m) => {
                let mut v = vec![zero(base.spec()); m as usize];
                v[0] = int(base.spec(), n);
                Repr::Ser(v)
            }
        }
    }

    pub(super) fn is_zero(r: &Repr) -> bool {
        match r {
            Repr::Rat(q) => q.is_zero(),
            Repr::Res(v) => *v == 0,
            Repr::Ser(cs) => cs.iter().all(is_zero),
        }
    }

    pub(super) fn add(spec: RingSpec, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
            (Repr::Res(x), Repr::Res(y)) => {
                let m = spec.modulus().expect("residue ring");
                Repr::Res(((*x as u128 + *y as u128) % m as u128) as u64)
            }
            (Repr::Ser(xs), Repr::Ser(ys)) => {
                let base = base_of(spec);
                Repr::Ser(xs.iter().zip(ys).map(|(x, y)| add(base, x, y)).collect())
            }
            _ => unreachable!("representation kinds disagree"),
        }
    }

    pub(super) fn neg(spec: RingSpec, a: &Repr) -> Repr {
        match a {
            Repr::Rat(x) => Repr::Rat(-x),
            Repr::Res(x) => {
                let m = spec.modulus().expect("residue ring");
                Repr::Res(if *x == 0 { 0 } else { m - x })
            }
            Repr::Ser(xs) => {
                let base = base_of(spec);
                Repr::Ser(xs.iter().map(|x| neg(base, x)).collect())
            }
        }
    }

    pub(super) fn mul(spec: RingSpec, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x * y),
            (Repr::Res(x), Repr::Res(y)) => {
                let m = spec.modulus().expect("residue ring");
                Repr::Res(((*x as u128 * *y as u128) % m as u128) as u64)
            }
            (Repr::Ser(xs), Repr::Ser(ys)) => {
                let base = base_of(spec);
                let n = xs.len();
                let mut out = vec![zero(base); n];
                for (i, x) in xs.iter().enumerate() {
                    if is_zero(x) {
                        continue;
                    }
                    for (j, y) in ys.iter().take(n - i).enumerate() {
                        out[i + j] = add(base, &out[i + j], &mul(base, x, y));
                    }
                }
                Repr::Ser(out)
            }
            _ => unreachable!("representation kinds disagree"),
        }
    }

    pub(super) fn inverse(spec: RingSpec, a: &Repr) -> Option<Repr> {
        match a {
            Repr::Rat(x) => (!x.is_zero()).then(|| Repr::Rat(x.recip())),
            Repr::Res(x) => mod_inverse(*x, spec.modulus().expect("residue ring")).map(Repr::Res),
            Repr::Ser(xs) => {
                let base = base_of(spec);
                let b0 = inverse(base, &xs[0])?;
                let mut out: Vec<Repr> = Vec::with_capacity(xs.len());
                out.push(b0.clone());
                for k in 1..xs.len() {
                    let mut acc = zero(base);
                    for i in 1..=k {
                        acc = add(base, &acc, &mul(base, &xs[i], &out[k - i]));
                    }
                    out.push(neg(base, &mul(base, &b0, &acc)));
                }
                Some(Repr::Ser(out))
            }
        }
    }

    pub(super) fn base_of(spec: RingSpec) -> RingSpec {
        match spec {
            RingSpec::HbarTrunc(base, _) => base.spec(),
            _ => unreachable!("only h-truncations have a base field"),
        }
    }

    pub(super) fn fmt_scalar(r: &Repr) -> String {
        match r {
            Repr::Rat(q) => q.to_string(),
            Repr::Res(v) => v.to_string(),
            Repr::Ser(_) => unreachable!(),
        }
    }
}

/// An element of one of the rings described by [`RingSpec`].
///
/// Arithmetic through the operator traits panics when the operands live in
/// different rings; the `checked_*` methods report [`RingError::RingMismatch`]
/// instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingSpec,
    repr: Repr,
}

/// Handle to a validated coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    spec: RingSpec,
}

pub fn make_ring(spec: RingSpec) -> Result<Ring, RingError> {
    spec.validate()?;
    Ok(Ring { spec })
}

impl Ring {
    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: self.spec, repr: repr::zero(self.spec) }
    }

    pub fn one(&self) -> RingElement {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> RingElement {
        self.bigint(&BigInt::from(n))
    }

    pub fn bigint(&self, n: &BigInt) -> RingElement {
        RingElement { ring: self.spec, repr: repr::int(self.spec, n) }
    }

    /// Image of a rational number; fails when the denominator is not a unit.
    pub fn rational(&self, q: &BigRational) -> Result<RingElement, RingError> {
        let num = self.bigint(q.numer());
        let den = self.bigint(q.denom());
        Ok(num * den.inverse()?)
    }

    /// `sum_i c_i h^i` in `k[h]/h^M`; coefficients beyond `M` are dropped.
    pub fn hbar_series(&self, coeffs: &[RingElement]) -> Result<RingElement, RingError> {
        let RingSpec::HbarTrunc(base, m) = self.spec else {
            return Err(RingError::NotLocalRing(self.spec));
        };
        let mut v = vec![repr::zero(base.spec()); m as usize];
        for (slot, c) in v.iter_mut().zip(coeffs) {
            if c.ring != base.spec() {
                return Err(RingError::RingMismatch { left: base.spec(), right: c.ring });
            }
            *slot = c.repr.clone();
        }
        Ok(RingElement { ring: self.spec, repr: Repr::Ser(v) })
    }

    /// The uniformizer (`p` or `h`) of a local ring kind.
    pub fn uniformizer(&self) -> Result<RingElement, RingError> {
        match self.spec {
            RingSpec::PadicTrunc(p, _) => Ok(self.int(p as i64)),
            RingSpec::HbarTrunc(base, _) => {
                let b = make_ring(base.spec())?;
                self.hbar_series(&[b.zero(), b.one()])
            }
            other => Err(RingError::NotLocalRing(other)),
        }
    }

    pub fn order(&self) -> Option<u128> {
        self.spec.order()
    }

    /// All elements in canonical order, when the ring is finite.
    pub fn elements(&self) -> Option<Box<dyn Iterator<Item = RingElement>>> {
        let spec = self.spec;
        match spec {
            RingSpec::PrimeField(_) | RingSpec::PadicTrunc(..) => {
                let m = spec.modulus()?;
                Some(Box::new((0..m).map(move |v| RingElement { ring: spec, repr: Repr::Res(v) })))
            }
            RingSpec::HbarTrunc(BaseField::Prime(p), m) => {
                let total = spec.order()?;
                Some(Box::new((0..total).map(move |mut idx| {
                    let digits = (0..m)
                        .map(|_| {
                            let d = (idx % p as u128) as u64;
                            idx /= p as u128;
                            Repr::Res(d)
                        })
                        .collect();
                    RingElement { ring: spec, repr: Repr::Ser(digits) }
                })))
            }
            _ => None,
        }
    }

    /// Parse an element written in the ring's text form: an integer or
    /// fraction for scalar rings, `c0 + c1*h + c2*h^2` for `k[h]/h^M`.
    pub fn parse(&self, s: &str) -> Result<RingElement, RingError> {
        match self.spec {
            RingSpec::HbarTrunc(base, _) => {
                let b = make_ring(base.spec())?;
                let coeffs = parse_hbar_terms(s, &b)?;
                self.hbar_series(&coeffs)
            }
            _ => {
                let q = parse_rational(s)?;
                self.rational(&q)
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, RingError> {
    let t = s.trim();
    let bad = || RingError::Parse { input: s.to_string(), reason: "expected an integer or fraction".into() };
    let q = if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        BigRational::new(n, d)
    } else {
        BigRational::from_integer(t.parse().map_err(|_| bad())?)
    };
    Ok(q)
}

fn parse_hbar_terms(s: &str, base: &Ring) -> Result<Vec<RingElement>, RingError> {
    let bad = |reason: &str| RingError::Parse { input: s.to_string(), reason: reason.to_string() };
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty element"));
    }
    // split into signed terms
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<RingElement> = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coef_txt, deg) = match body.find('h') {
            None => (body, 0usize),
            Some(pos) => {
                let coef = body[..pos].trim_end_matches('*');
                let rest = &body[pos + 1..];
                let deg = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|d| d.parse::<usize>().ok())
                        .ok_or_else(|| bad("bad exponent of h"))?
                };
                (coef, deg)
            }
        };
        let q = if coef_txt.is_empty() {
            BigRational::one()
        } else {
            parse_rational(coef_txt)?
        };
        let c = base.rational(&(q * BigRational::from_integer(BigInt::from(sign))))?;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, base.zero());
        }
        coeffs[deg] = coeffs[deg].clone() + c;
    }
    Ok(coeffs)
}

impl RingElement {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn ring_handle(&self) -> Ring {
        Ring { spec: self.ring }
    }

    pub fn is_zero(&self) -> bool {
        repr::is_zero(&self.repr)
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring_handle().one()
    }

    pub fn is_unit(&self) -> bool {
        repr::inverse(self.ring, &self.repr).is_some()
    }

    pub fn inverse(&self) -> Result<RingElement, RingError> {
        repr::inverse(self.ring, &self.repr)
            .map(|repr| RingElement { ring: self.ring, repr })
            .ok_or_else(|| RingError::NotAUnit(self.to_string()))
    }

    pub fn pow(&self, e: u64) -> RingElement {
        self.pow_u(e)
    }

    fn same_ring(&self, other: &RingElement) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch { left: self.ring, right: other.ring })
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        Ok(RingElement { ring: self.ring, repr: repr::add(self.ring, &self.repr, &other.repr) })
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        let n = repr::neg(self.ring, &other.repr);
        Ok(RingElement { ring: self.ring, repr: repr::add(self.ring, &self.repr, &n) })
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        Ok(RingElement { ring: self.ring, repr: repr::mul(self.ring, &self.repr, &other.repr) })
    }

    /// Canonical residue in `[0, p^M)` for the residue-ring kinds.
    pub fn residue_value(&self) -> Option<u64> {
        match self.repr {
            Repr::Res(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(q) => Some(q),
            _ => None,
        }
    }

    /// Coefficients in `h` of an element of `k[h]/h^M`.
    pub fn hbar_coefficients(&self) -> Option<Vec<RingElement>> {
        match (&self.repr, self.ring) {
            (Repr::Ser(cs), RingSpec::HbarTrunc(base, _)) => Some(
                cs.iter()
                    .map(|c| RingElement { ring: base.spec(), repr: c.clone() })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Reduction modulo the maximal ideal (mod `p` or mod `h`).
    pub fn residue(&self) -> Result<RingElement, RingError> {
        match (self.ring, &self.repr) {
            (RingSpec::PadicTrunc(p, _), Repr::Res(v)) => {
                Ok(RingElement { ring: RingSpec::PrimeField(p), repr: Repr::Res(v % p) })
            }
            (RingSpec::HbarTrunc(base, _), Repr::Ser(cs)) => {
                Ok(RingElement { ring: base.spec(), repr: cs[0].clone() })
            }
            (other, _) => Err(RingError::NotLocalRing(other)),
        }
    }

    /// Reduction to the residue field, or the element itself for fields.
    pub fn residue_or_self(&self) -> RingElement {
        self.residue().unwrap_or_else(|_| self.clone())
    }

    /// Whether the element lies in the maximal ideal. For fields the maximal
    /// ideal is `0`.
    pub fn in_maximal_ideal(&self) -> bool {
        self.residue_or_self().is_zero()
    }

    /// Valuation with respect to the uniformizer, `None` for zero. Fields
    /// report `Some(0)` for nonzero elements.
    pub fn valuation(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        match (&self.repr, self.ring) {
            (Repr::Res(v), RingSpec::PadicTrunc(p, _)) => {
                let (mut v, mut k) = (*v, 0);
                while v % p == 0 {
                    v /= p;
                    k += 1;
                }
                Some(k)
            }
            (Repr::Ser(cs), _) => cs.iter().position(|c| !repr::is_zero(c)).map(|k| k as u32),
            _ => Some(0),
        }
    }

    /// Map `Z/p^M -> Z/p^M'` for `M' <= M`, or `k[h]/h^M -> k[h]/h^M'`.
    pub fn reduce_to(&self, target: RingSpec) -> Result<RingElement, RingError> {
        let mismatch = || RingError::RingMismatch { left: self.ring, right: target };
        target.validate()?;
        match (self.ring, target, &self.repr) {
            (a, b, _) if a == b => Ok(self.clone()),
            (RingSpec::PadicTrunc(p, m), RingSpec::PadicTrunc(q, n), Repr::Res(v)) if p == q && n <= m => {
                let md = target.modulus().expect("validated");
                Ok(RingElement { ring: target, repr: Repr::Res(v % md) })
            }
            (RingSpec::PadicTrunc(p, _), RingSpec::PrimeField(q), _) if p == q => self.residue(),
            (RingSpec::HbarTrunc(a, m), RingSpec::HbarTrunc(b, n), Repr::Ser(cs)) if a == b && n <= m => {
                Ok(RingElement { ring: target, repr: Repr::Ser(cs[..n as usize].to_vec()) })
            }
            _ => Err(mismatch()),
        }
    }
}

/// Teichmuller lift `F_p -> Z/p^M`: the unique `w` with `w = a (mod p)` and
/// `w^p = w`, found by iterating `x -> x^p` from the canonical lift of `a`.
pub fn teichmuller_lift(a: &RingElement, m: u32) -> Result<RingElement, RingError> {
    let RingSpec::PrimeField(p) = a.ring else {
        return Err(RingError::RingMismatch { left: a.ring, right: RingSpec::PrimeField(0) });
    };
    let target = make_ring(RingSpec::PadicTrunc(p, m))?;
    let modulus = target.order().expect("finite") as f64;
    let cap = (m as u64) * (modulus.log2().ceil() as u64).max(1);
    let mut w = target.int(a.residue_value().expect("residue") as i64);
    for _ in 0..=cap {
        let next = w.pow(p);
        if next == w {
            return Ok(w);
        }
        w = next;
    }
    Err(RingError::TeichmullerDiverged)
}

/// Lift a residue-field element into `target`: Teichmuller lift into
/// `Z/p^M`, the constant inclusion into `k[h]/h^M`, identity otherwise.
pub fn lift_residue(a: &RingElement, target: RingSpec) -> Result<RingElement, RingError> {
    if a.ring == target {
        return Ok(a.clone());
    }
    match (a.ring, target) {
        (RingSpec::PrimeField(p), RingSpec::PadicTrunc(q, m)) if p == q => teichmuller_lift(a, m),
        (base, RingSpec::HbarTrunc(b, _)) if b.spec() == base => {
            make_ring(target)?.hbar_series(std::slice::from_ref(a))
        }
        _ => Err(RingError::RingMismatch { left: a.ring, right: target }),
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Ser(cs) => {
                let mut out = String::new();
                for (i, c) in cs.iter().enumerate() {
                    if repr::is_zero(c) {
                        continue;
                    }
                    let mut txt = repr::fmt_scalar(c);
                    let negative = txt.starts_with('-');
                    if negative {
                        txt.remove(0);
                    }
                    if out.is_empty() {
                        if negative {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if negative { " - " } else { " + " });
                    }
                    match i {
                        0 => out.push_str(&txt),
                        _ => {
                            if txt != "1" {
                                out.push_str(&txt);
                                out.push('*');
                            }
                            out.push('h');
                            if i > 1 {
                                out.push_str(&format!("^{i}"));
                            }
                        }
                    }
                }
                if out.is_empty() {
                    out.push('0');
                }
                f.write_str(&out)
            }
            other => f.write_str(&repr::fmt_scalar(other)),
        }
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                self.$checked(&rhs).expect("arithmetic across different rings")
            }
        }
        impl<'a> $tr<&'a RingElement> for &'a RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &'a RingElement) -> RingElement {
                self.$checked(rhs).expect("arithmetic across different rings")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { ring: self.ring, repr: repr::neg(self.ring, &self.repr) }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { ring: self.ring, repr: repr::neg(self.ring, &self.repr) }
    }
}

impl CommRing for RingElement {
    fn zero_like(&self) -> Self {
        RingElement { ring: self.ring, repr: repr::zero(self.ring) }
    }

    fn one_like(&self) -> Self {
        self.ring_handle().one()
    }

    fn int_like(&self, n: &BigInt) -> Self {
        self.ring_handle().bigint(n)
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.ring == other.ring
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        make_ring(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn constructors_enforce_odd_characteristic() {
        assert_eq!(make_ring(RingSpec::PrimeField(7)).unwrap().order(), Some(7));
        assert_eq!(make_ring(RingSpec::PrimeField(2)), Err(RingError::CharacteristicTwo));
        assert_eq!(make_ring(RingSpec::PadicTrunc(2, 3)), Err(RingError::CharacteristicTwo));
        assert_eq!(
            make_ring(RingSpec::HbarTrunc(BaseField::Prime(2), 3)),
            Err(RingError::CharacteristicTwo)
        );
        assert_eq!(make_ring(RingSpec::PadicTrunc(7, 2)).unwrap().order(), Some(49));
        assert_eq!(make_ring(RingSpec::PadicTrunc(7, 0)), Err(RingError::InvalidModulus));
        assert_eq!(make_ring(RingSpec::PrimeField(9)), Err(RingError::NotPrime(9)));
        assert!(matches!(
            make_ring(RingSpec::PadicTrunc(7, 40)),
            Err(RingError::ModulusTooLarge { .. })
        ));
    }

    #[test]
    fn residue_map_examples() {
        let z49 = ring("padic:7:2");
        let r = z49.int(30).residue().unwrap();
        assert_eq!(r.ring(), RingSpec::PrimeField(7));
        assert_eq!(r.residue_value(), Some(2));
        assert!(z49.zero().residue().unwrap().is_zero());

        let h = ring("hbar:7:2");
        let e = h.parse("3 + 5*h").unwrap();
        assert_eq!(e.residue().unwrap(), ring("prime:7").int(3));

        assert_eq!(ring("prime:7").int(3).residue(), Err(RingError::NotLocalRing(RingSpec::PrimeField(7))));
        assert!(ring("rational").int(3).residue().is_err());
    }

    #[test]
    fn teichmuller_examples() {
        let f7 = ring("prime:7");
        assert_eq!(teichmuller_lift(&f7.int(1), 2).unwrap().residue_value(), Some(1));
        assert_eq!(teichmuller_lift(&f7.int(0), 2).unwrap().residue_value(), Some(0));
        let w = teichmuller_lift(&f7.int(2), 2).unwrap();
        assert_eq!(w.pow(7), w);
        assert_eq!(w.residue().unwrap(), f7.int(2));
        // 2^7 = 128 = 30 mod 49 and 30^7 = 30 mod 49
        assert_eq!(w.residue_value(), Some(30));
    }

    #[test]
    fn cross_ring_arithmetic_is_an_error() {
        let a = ring("prime:7").int(3);
        let b = ring("prime:5").int(3);
        assert!(matches!(a.checked_add(&b), Err(RingError::RingMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(RingError::RingMismatch { .. })));
    }

    #[test]
    fn hbar_arithmetic_and_inverse() {
        let h = ring("hbar:5:3");
        let one_plus_h = h.parse("1 + h").unwrap();
        let inv = one_plus_h.inverse().unwrap();
        assert_eq!(inv, h.parse("1 - h + h^2").unwrap());
        assert_eq!(inv.to_string(), "1 + 4*h + h^2");
        let x0 = one_plus_h.clone() + inv;
        assert_eq!(x0, h.parse("2 + h^2").unwrap());
        assert!(!h.uniformizer().unwrap().is_unit());
        assert_eq!(h.uniformizer().unwrap().pow(3), h.zero());
    }

    #[test]
    fn text_forms_round_trip() {
        for spec in ["rational", "prime:7", "padic:7:4", "hbar:5:3", "hbar:rational:2"] {
            let s: RingSpec = spec.parse().unwrap();
            assert_eq!(s.to_string(), spec);
        }
        let q = ring("rational");
        assert_eq!(q.parse("-6/4").unwrap().to_string(), "-3/2");
        let hq = ring("hbar:rational:3");
        let e = hq.parse("1 - 1/2*h + 3h^2").unwrap();
        assert_eq!(e.to_string(), "1 - 1/2*h + 3*h^2");
        assert_eq!(hq.parse(&e.to_string()).unwrap(), e);
        assert!("padic:4:2".parse::<RingSpec>().is_err());
        assert!("complex".parse::<RingSpec>().is_err());
    }

    #[test]
    fn two_is_a_unit_everywhere() {
        for spec in ["rational", "prime:3", "prime:7", "padic:3:4", "padic:11:2", "hbar:3:3", "hbar:rational:4"] {
            let r = ring(spec);
            assert!(r.int(2).is_unit(), "{spec}");
        }
    }

    #[test]
    fn finite_rings_enumerate_every_element_once() {
        let r = ring("hbar:3:2");
        let all: Vec<_> = r.elements().unwrap().collect();
        assert_eq!(all.len(), 9);
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 9);
        assert!(ring("rational").elements().is_none());
    }

    #[test]
    fn valuation_and_reduction() {
        let z = ring("padic:3:4");
        assert_eq!(z.int(18).valuation(), Some(2));
        assert_eq!(z.zero().valuation(), None);
        let r = z.int(80).reduce_to(RingSpec::PadicTrunc(3, 2)).unwrap();
        assert_eq!(r.residue_value(), Some(8));
    }
}
