//! Truncated power series in `z = x - 2` (or `s` with `s^2 = z`) over a
//! [`RingSpec`] ring, with explicit precision tracking.
//!
//! A series of precision `N` is known modulo `var^N`. Binary operations keep
//! the smaller precision; dividing by `var^k` loses `k` coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::CommRing;
use crate::poly::BiPoly;
use crate::ring::{lift_residue, make_ring, Ring, RingElement, RingError, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("series variables differ: {left} vs {right}")]
    VarMismatch { left: SeriesVar, right: SeriesVar },
    #[error("constant term {0} is not a unit")]
    NonUnitConstantTerm(String),
    #[error("no square root of the constant term {0} available")]
    NoSquareRootOfConstant(String),
    #[error("coefficient of {var}^{index} is nonzero, cannot divide by {var}^{k}")]
    NotDivisible { var: SeriesVar, index: usize, k: usize },
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("u0 is not a root of F(2, u) in the residue field")]
    NotAResidualRoot,
    #[error("dF/du(2, u0) is not a unit")]
    NonSimpleRoot,
    #[error("Newton iteration did not converge within {0} steps")]
    NoConvergence(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesVar {
    Z,
    S,
}

impl SeriesVar {
    pub fn name(self) -> &'static str {
        match self {
            SeriesVar::Z => "z",
            SeriesVar::S => "s",
        }
    }
}

impl fmt::Display for SeriesVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `c_0 + c_1 var + ... + c_{N-1} var^{N-1} + O(var^N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    ring: RingSpec,
    var: SeriesVar,
    coeffs: Vec<RingElement>,
}

impl TruncSeries {
    pub fn from_coeffs(
        ring: RingSpec,
        var: SeriesVar,
        coeffs: Vec<RingElement>,
    ) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::ZeroPrecision);
        }
        if let Some(bad) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(RingError::RingMismatch { left: ring, right: bad.ring() }.into());
        }
        Ok(TruncSeries { ring, var, coeffs })
    }

    /// Integer coefficients, convenient in tests and examples.
    pub fn from_ints(ring: &Ring, var: SeriesVar, coeffs: &[i64]) -> Result<Self, SeriesError> {
        Self::from_coeffs(ring.spec(), var, coeffs.iter().map(|&c| ring.int(c)).collect())
    }

    pub fn constant(c: RingElement, var: SeriesVar, precision: usize) -> Result<Self, SeriesError> {
        if precision == 0 {
            return Err(SeriesError::ZeroPrecision);
        }
        let ring = c.ring();
        let zero = c.ring_handle().zero();
        let mut coeffs = vec![zero; precision];
        coeffs[0] = c;
        Ok(TruncSeries { ring, var, coeffs })
    }

    /// The series `var` itself.
    pub fn variable(ring: &Ring, var: SeriesVar, precision: usize) -> Result<Self, SeriesError> {
        let mut s = Self::constant(ring.zero(), var, precision)?;
        if precision > 1 {
            s.coeffs[1] = ring.one();
        }
        Ok(s)
    }

    /// `x = 2 + z`.
    pub fn x(ring: &Ring, precision: usize) -> Result<Self, SeriesError> {
        let mut s = Self::variable(ring, SeriesVar::Z, precision)?;
        s.coeffs[0] = ring.int(2);
        Ok(s)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn var(&self) -> SeriesVar {
        self.var
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RingElement {
        &self.coeffs[i]
    }

    pub fn constant_term(&self) -> &RingElement {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElement::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn handle(&self) -> Ring {
        make_ring(self.ring).expect("validated on construction")
    }

    fn zeros(&self, n: usize) -> Vec<RingElement> {
        vec![self.handle().zero(); n]
    }

    /// Drop coefficients beyond `precision` (no-op when already shorter).
    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.clamp(1, self.precision());
        TruncSeries { ring: self.ring, var: self.var, coeffs: self.coeffs[..n].to_vec() }
    }

    /// Pad with zero coefficients up to `precision`. The caller asserts the
    /// extra coefficients are known to vanish.
    pub fn extend_exact(&self, precision: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if precision > coeffs.len() {
            coeffs.extend(self.zeros(precision - coeffs.len()));
        }
        TruncSeries { ring: self.ring, var: self.var, coeffs }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring != other.ring {
            return Err(RingError::RingMismatch { left: self.ring, right: other.ring }.into());
        }
        if self.var != other.var {
            return Err(SeriesError::VarMismatch { left: self.var, right: other.var });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        TruncSeries { ring: self.ring, var: self.var, coeffs }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let mut coeffs = self.zeros(n);
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncSeries { ring: self.ring, var: self.var, coeffs }
    }

    fn neg_ref(&self) -> Self {
        TruncSeries { ring: self.ring, var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &RingElement) -> Result<Self, SeriesError> {
        if c.ring() != self.ring {
            return Err(RingError::RingMismatch { left: self.ring, right: c.ring() }.into());
        }
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Ok(TruncSeries { ring: self.ring, var: self.var, coeffs })
    }

    /// Multiply by `var^k`; the result is known to `precision + k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = self.zeros(k);
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries { ring: self.ring, var: self.var, coeffs }
    }

    /// Exact division by `var^k`; precision drops by `k`.
    pub fn divide_by_var_power(&self, k: usize) -> Result<Self, SeriesError> {
        if k >= self.precision() {
            return Err(SeriesError::ZeroPrecision);
        }
        if let Some(index) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisible { var: self.var, index, k });
        }
        Ok(TruncSeries { ring: self.ring, var: self.var, coeffs: self.coeffs[k..].to_vec() })
    }

    /// Newton doubling `g <- g (2 - f g)` from the inverse of the constant term.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        let inv0 = c0.inverse().map_err(|_| SeriesError::NonUnitConstantTerm(c0.to_string()))?;
        let two = self.handle().int(2);
        let mut g = Self::constant(inv0, self.var, 1)?;
        let mut k = 1;
        while k < self.precision() {
            k = (2 * k).min(self.precision());
            let g_ext = g.extend_exact(k);
            let fg = self.truncate(k).mul_unchecked(&g_ext);
            let two_minus = Self::constant(two.clone(), self.var, k)?.add_unchecked(&fg.neg_ref());
            g = g_ext.mul_unchecked(&two_minus);
        }
        Ok(g)
    }

    /// Square root with constant term 1; the constant term must be 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let one = self.handle().one();
        if !self.constant_term().is_one() {
            return Err(SeriesError::NoSquareRootOfConstant(self.constant_term().to_string()));
        }
        self.sqrt_with_root(&one)
    }

    /// Square root whose constant term is the supplied `root`, which must
    /// square to the constant term exactly. Newton `g <- (g + f/g) / 2`.
    pub fn sqrt_with_root(&self, root: &RingElement) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if root.ring() != self.ring || root.clone() * root.clone() != *c0 {
            return Err(SeriesError::NoSquareRootOfConstant(c0.to_string()));
        }
        let half = self.handle().int(2).inverse()?;
        let mut g = Self::constant(root.clone(), self.var, 1)?;
        let mut k = 1;
        while k < self.precision() {
            k = (2 * k).min(self.precision());
            let g_ext = g.extend_exact(k);
            let ratio = self.truncate(k).mul_unchecked(&g_ext.invert()?);
            g = g_ext.add_unchecked(&ratio).scale(&half)?;
        }
        Ok(g)
    }

    /// Reinterpret a series in `z` as a series in `s` with `z = s^2`. A
    /// series known mod `z^N` is known mod `s^(2N)`.
    pub fn z_to_s(&self) -> Result<Self, SeriesError> {
        if self.var != SeriesVar::Z {
            return Err(SeriesError::VarMismatch { left: self.var, right: SeriesVar::Z });
        }
        let zero = self.handle().zero();
        let mut coeffs = Vec::with_capacity(2 * self.precision());
        for c in &self.coeffs {
            coeffs.push(c.clone());
            coeffs.push(zero.clone());
        }
        Ok(TruncSeries { ring: self.ring, var: SeriesVar::S, coeffs })
    }

    /// `sum_i c_i a^i` over all known coefficients.
    pub fn evaluate_at(&self, a: &RingElement) -> Result<RingElement, SeriesError> {
        if a.ring() != self.ring {
            return Err(RingError::RingMismatch { left: self.ring, right: a.ring() }.into());
        }
        let mut acc = self.handle().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a.clone() + c.clone();
        }
        Ok(acc)
    }

    /// Coefficients printed with the ring's text form.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn to_wire(&self) -> SeriesWire {
        SeriesWire {
            ring: self.ring,
            var: self.var,
            precision: self.precision(),
            coeffs: self.coefficient_strings(),
        }
    }

    pub fn from_wire(w: &SeriesWire) -> Result<Self, SeriesError> {
        let ring = make_ring(w.ring)?;
        if w.coeffs.len() != w.precision {
            return Err(RingError::Parse {
                input: format!("{} coefficients", w.coeffs.len()),
                reason: format!("precision field says {}", w.precision),
            }
            .into());
        }
        let coeffs = w.coeffs.iter().map(|c| ring.parse(c)).collect::<Result<Vec<_>, _>>()?;
        Self::from_coeffs(w.ring, w.var, coeffs)
    }
}

/// JSON form of a series: ring, variable, precision and coefficient strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesWire {
    pub ring: RingSpec,
    pub var: SeriesVar,
    pub precision: usize,
    pub coeffs: Vec<String>,
}

impl Serialize for TruncSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, mag) = match text.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ if text.contains(' ') => (false, format!("({text})")),
                _ => (false, text),
            };
            let monomial = match i {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{i}"),
            };
            let body = match (i, mag.as_str()) {
                (0, _) => mag.clone(),
                (_, "1") => monomial,
                _ => format!("{mag}*{monomial}"),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} + O({v}^{})", self.precision())
    }
}

macro_rules! series_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &TruncSeries {
            type Output = TruncSeries;
            fn $method(self, rhs: &TruncSeries) -> TruncSeries {
                self.$checked(rhs).expect("series arithmetic across different rings or variables")
            }
        }

        impl $tr for TruncSeries {
            type Output = TruncSeries;
            fn $method(self, rhs: TruncSeries) -> TruncSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

series_op!(Add, add, checked_add);
series_op!(Sub, sub, checked_sub);
series_op!(Mul, mul, checked_mul);

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.neg_ref()
    }
}

impl Neg for TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.neg_ref()
    }
}

impl CommRing for TruncSeries {
    fn zero_like(&self) -> Self {
        TruncSeries { ring: self.ring, var: self.var, coeffs: self.zeros(self.precision()) }
    }

    fn one_like(&self) -> Self {
        self.int_like(&BigInt::from(1))
    }

    fn int_like(&self, n: &BigInt) -> Self {
        Self::constant(self.handle().bigint(n), self.var, self.precision()).expect("precision >= 1")
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn try_inverse(&self) -> Option<Self> {
        self.invert().ok()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.ring == other.ring && self.var == other.var
    }
}

/// How [`newton_root_with`] schedules its iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonSchedule {
    /// Solve exactly for the constant term in the ring first, then double
    /// the `z`-precision each step.
    Doubling,
    /// Iterate at full precision from the lifted residual root until the
    /// residual vanishes.
    FullPrecision,
}

/// Result of a Newton lift together with the number of Newton steps taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonRun {
    pub root: TruncSeries,
    pub iterations: usize,
}

/// Iteration budget `ceil(log2 N) + M + 2` for precision `N` over a ring of
/// truncation level `M`.
pub fn newton_iteration_bound(precision: usize, ring: RingSpec) -> usize {
    let log = usize::BITS - (precision.max(1) - 1).leading_zeros();
    log as usize + ring.truncation() as usize + 2
}

/// The unique series `u(z)` with `F(2 + z, u) = 0 mod z^N` whose constant
/// term reduces to `u0`.
pub fn newton_root(
    f: &BiPoly,
    u0: &RingElement,
    ring: RingSpec,
    precision: usize,
) -> Result<TruncSeries, SeriesError> {
    newton_root_with(f, u0, ring, precision, NewtonSchedule::Doubling).map(|r| r.root)
}

pub fn newton_root_with(
    f: &BiPoly,
    u0: &RingElement,
    ring: RingSpec,
    precision: usize,
    schedule: NewtonSchedule,
) -> Result<NewtonRun, SeriesError> {
    if precision == 0 {
        return Err(SeriesError::ZeroPrecision);
    }
    let r = make_ring(ring)?;
    let start = lift_residue(u0, ring)?;
    let df = f.derivative(1);
    let two = r.int(2);
    if !f.eval(&two, &start).in_maximal_ideal() {
        return Err(SeriesError::NotAResidualRoot);
    }
    if df.eval(&two, &start).in_maximal_ideal() {
        return Err(SeriesError::NonSimpleRoot);
    }
    let bound = newton_iteration_bound(precision, ring);
    let mut iterations = 0;
    match schedule {
        NewtonSchedule::Doubling => {
            let mut c = start;
            loop {
                let value = f.eval(&two, &c);
                if value.is_zero() {
                    break;
                }
                if iterations == bound {
                    return Err(SeriesError::NoConvergence(bound));
                }
                let step = value * df.eval(&two, &c).inverse()?;
                c = c - step;
                iterations += 1;
            }
            let mut u = TruncSeries::constant(c, SeriesVar::Z, 1)?;
            let mut k = 1;
            while k < precision {
                if iterations == bound {
                    return Err(SeriesError::NoConvergence(bound));
                }
                k = (2 * k).min(precision);
                u = newton_step(f, &df, &r, &u.extend_exact(k))?;
                iterations += 1;
            }
            Ok(NewtonRun { root: u, iterations })
        }
        NewtonSchedule::FullPrecision => {
            let mut u = TruncSeries::constant(start, SeriesVar::Z, precision)?;
            let x = TruncSeries::x(&r, precision)?;
            while !f.eval(&x, &u).is_zero() {
                if iterations == bound {
                    return Err(SeriesError::NoConvergence(bound));
                }
                u = newton_step(f, &df, &r, &u)?;
                iterations += 1;
            }
            Ok(NewtonRun { root: u, iterations })
        }
    }
}

fn newton_step(f: &BiPoly, df: &BiPoly, r: &Ring, u: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    let x = TruncSeries::x(r, u.precision())?;
    let value = f.eval(&x, u);
    let slope = df.eval(&x, u).invert()?;
    Ok(u - &(&value * &slope))
}
