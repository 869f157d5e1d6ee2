//! Sparse polynomials with integer coefficients: Laurent polynomials in
//! `(t, u)`, ordinary bivariate polynomials, the three-variable trace
//! polynomials and dense univariate polynomials.
//!
//! Coefficients are always integers; evaluation maps them into any
//! [`CommRing`] through the canonical map `Z -> R`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::CommRing;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable mismatch: {left:?} vs {right:?}")]
    VarnameMismatch { left: Vec<Var>, right: Vec<Var> },
    #[error("no shift t^l makes the Laurent polynomial symmetric under t -> 1/t")]
    NotSymmetrizable,
    #[error("discriminant of a constant polynomial")]
    ConstantPolynomial,
    #[error("the value assigned to t is not a unit")]
    NonUnitLaurentBase,
    #[error("no value assigned to variable {0}")]
    UnassignedVariable(Var),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    U,
    X,
    Y,
    Z,
    S,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::U => "u",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::S => "s",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector of a monomial.
pub trait Monomial: Copy + Ord + Hash + fmt::Debug {
    fn one() -> Self;
    fn mul(self, other: Self) -> Self;
    fn inverse(self) -> Option<Self>;
    fn exponents(self) -> Vec<i64>;
}

impl<const N: usize> Monomial for [u32; N] {
    fn one() -> Self {
        [0; N]
    }

    fn mul(self, other: Self) -> Self {
        let mut out = self;
        for (o, e) in out.iter_mut().zip(other) {
            *o += e;
        }
        out
    }

    fn inverse(self) -> Option<Self> {
        (self == [0; N]).then_some(self)
    }

    fn exponents(self) -> Vec<i64> {
        self.iter().map(|&e| e as i64).collect()
    }
}

/// `t^t u^u` with `t` an integer (Laurent) exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentExp {
    pub t: i32,
    pub u: u32,
}

impl Monomial for LaurentExp {
    fn one() -> Self {
        LaurentExp { t: 0, u: 0 }
    }

    fn mul(self, other: Self) -> Self {
        LaurentExp { t: self.t + other.t, u: self.u + other.u }
    }

    fn inverse(self) -> Option<Self> {
        (self.u == 0).then_some(LaurentExp { t: -self.t, u: 0 })
    }

    fn exponents(self) -> Vec<i64> {
        vec![self.t as i64, self.u as i64]
    }
}

/// Sparse integer polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<M: Monomial> {
    terms: BTreeMap<M, BigInt>,
}

pub type LaurentBiPoly = SparsePoly<LaurentExp>;

impl<M: Monomial> SparsePoly<M> {
    pub fn zero() -> Self {
        SparsePoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, M::one())
    }

    pub fn monomial(c: impl Into<BigInt>, m: M) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (M, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: M, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &M) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Text form in graded order (total degree descending, then exponent
    /// vectors descending lexicographically).
    pub fn to_text(&self, names: &[&str]) -> String {
        let mut items: Vec<(Vec<i64>, &BigInt)> =
            self.terms.iter().map(|(m, c)| (m.exponents(), c)).collect();
        items.sort_by(|(a, _), (b, _)| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        format_terms(items.into_iter(), names)
    }
}

fn format_terms<'a>(items: impl Iterator<Item = (Vec<i64>, &'a BigInt)>, names: &[&str]) -> String {
    let mut out = String::new();
    for (exps, c) in items {
        let factors: Vec<String> = exps
            .iter()
            .zip(names)
            .filter(|(e, _)| **e != 0)
            .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
            .collect();
        let mag = c.abs();
        let body = if factors.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            factors.join("*")
        } else {
            format!("{}*{}", mag, factors.join("*"))
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<M: Monomial> Add for &SparsePoly<M> {
    type Output = SparsePoly<M>;
    fn add(self, rhs: Self) -> SparsePoly<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<M: Monomial> Sub for &SparsePoly<M> {
    type Output = SparsePoly<M>;
    fn sub(self, rhs: Self) -> SparsePoly<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<M: Monomial> Mul for &SparsePoly<M> {
    type Output = SparsePoly<M>;
    fn mul(self, rhs: Self) -> SparsePoly<M> {
        let mut out = SparsePoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(*b), x * y);
            }
        }
        out
    }
}

impl<M: Monomial> Neg for &SparsePoly<M> {
    type Output = SparsePoly<M>;
    fn neg(self) -> SparsePoly<M> {
        SparsePoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl<M: Monomial> $tr for SparsePoly<M> {
            type Output = SparsePoly<M>;
            fn $method(self, rhs: SparsePoly<M>) -> SparsePoly<M> {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl<M: Monomial> Neg for SparsePoly<M> {
    type Output = SparsePoly<M>;
    fn neg(self) -> SparsePoly<M> {
        -&self
    }
}

impl<M: Monomial> CommRing for SparsePoly<M> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::constant(1)
    }

    fn int_like(&self, n: &BigInt) -> Self {
        Self::constant(n.clone())
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    /// Units are the monomials `+-m` with `m` invertible.
    fn try_inverse(&self) -> Option<Self> {
        let mut it = self.terms.iter();
        let (m, c) = it.next()?;
        if it.next().is_some() || c.abs() != BigInt::one() {
            return None;
        }
        Some(Self::monomial(c.clone(), m.inverse()?))
    }
}

fn power_table<R: CommRing>(base: &R, max: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(base.one_like());
    for i in 0..max {
        let next = out[i].clone() * base.clone();
        out.push(next);
    }
    out
}

impl<const N: usize> SparsePoly<[u32; N]> {
    /// Evaluate at `vals`, mapping integer coefficients into the target ring.
    pub fn eval<R: CommRing>(&self, vals: &[R; N]) -> R {
        let mut maxdeg = [0usize; N];
        for m in self.terms.keys() {
            for (d, e) in maxdeg.iter_mut().zip(m) {
                *d = (*d).max(*e as usize);
            }
        }
        let tables: Vec<Vec<R>> = vals.iter().zip(maxdeg).map(|(v, d)| power_table(v, d)).collect();
        let mut acc = vals[0].zero_like();
        for (m, c) in &self.terms {
            let mut term = vals[0].int_like(c);
            for (i, e) in m.iter().enumerate() {
                if *e > 0 {
                    term = term * tables[i][*e as usize].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m[var] > 0).map(|(m, c)| {
            let mut d = *m;
            d[var] -= 1;
            (d, c * BigInt::from(m[var]))
        }))
    }
}

impl LaurentBiPoly {
    pub fn t() -> Self {
        Self::monomial(1, LaurentExp { t: 1, u: 0 })
    }

    pub fn t_inv() -> Self {
        Self::monomial(1, LaurentExp { t: -1, u: 0 })
    }

    pub fn u() -> Self {
        Self::monomial(1, LaurentExp { t: 0, u: 1 })
    }

    pub fn t_pow(k: i32) -> Self {
        Self::monomial(1, LaurentExp { t: k, u: 0 })
    }

    /// Multiply by `t^k`.
    pub fn shift_t(&self, k: i32) -> Self {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (LaurentExp { t: m.t + k, u: m.u }, c.clone())).collect(),
        }
    }

    /// Evaluate at `t = t0`, `u = u0`; `t0` must be a unit.
    pub fn eval<R: CommRing>(&self, t0: &R, u0: &R) -> Result<R, PolyError> {
        let t_inv = t0.try_inverse().ok_or(PolyError::NonUnitLaurentBase)?;
        let (mut tmax, mut tmin, mut umax) = (0i32, 0i32, 0u32);
        for m in self.terms.keys() {
            tmax = tmax.max(m.t);
            tmin = tmin.min(m.t);
            umax = umax.max(m.u);
        }
        let tp = power_table(t0, tmax as usize);
        let tn = power_table(&t_inv, (-tmin) as usize);
        let up = power_table(u0, umax as usize);
        let mut acc = t0.zero_like();
        for (m, c) in &self.terms {
            let tpart = if m.t >= 0 { &tp[m.t as usize] } else { &tn[(-m.t) as usize] };
            acc = acc + t0.int_like(c) * tpart.clone() * up[m.u as usize].clone();
        }
        Ok(acc)
    }

    pub fn text(&self) -> String {
        self.to_text(&["t", "u"])
    }
}

/// `p_n(x)` with `p_n(t + 1/t) = t^n + t^-n`: `p_0 = 2`, `p_1 = x`,
/// `p_{n+1} = x p_n - p_{n-1}`. Returned as dense coefficients in `x`.
pub fn symmetric_basis(n: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)]];
    if n >= 1 {
        out.push(vec![BigInt::zero(), BigInt::one()]);
    }
    for k in 1..n {
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, c) in out[k].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in out[k - 1].iter().enumerate() {
            next[i] -= c;
        }
        out.push(next);
    }
    out
}

/// Rewrite `f(t, u)` as `Phi(t + 1/t, u) = t^l f(t, u)`.
///
/// Each nonzero `u`-slice of `f` must become palindromic in `t` after the
/// same shift `t^l`; otherwise there is no such `Phi`.
pub fn symmetric_reduce(f: &LaurentBiPoly) -> Result<(BiPoly, i32), PolyError> {
    if f.is_zero() {
        return Ok((BiPoly::zero([Var::X, Var::U]), 0));
    }
    let mut slices: BTreeMap<u32, BTreeMap<i32, BigInt>> = BTreeMap::new();
    for (m, c) in f.terms() {
        slices.entry(m.u).or_default().insert(m.t, c.clone());
    }
    let mut shift: Option<i32> = None;
    for slice in slices.values() {
        let lo = *slice.keys().next().expect("nonempty");
        let hi = *slice.keys().next_back().expect("nonempty");
        if (lo + hi) % 2 != 0 {
            return Err(PolyError::NotSymmetrizable);
        }
        let l = -(lo + hi) / 2;
        match shift {
            None => shift = Some(l),
            Some(s) if s != l => return Err(PolyError::NotSymmetrizable),
            _ => {}
        }
    }
    let l = shift.expect("nonzero input");
    let top = slices
        .values()
        .map(|s| (s.keys().next_back().expect("nonempty") + l) as usize)
        .max()
        .unwrap_or(0);
    let basis = symmetric_basis(top);
    let mut phi = SparsePoly::<[u32; 2]>::zero();
    for (ue, slice) in &slices {
        for (te, c) in slice {
            let k = te + l;
            let mirror = slice.get(&(-k - l)).cloned().unwrap_or_default();
            if &mirror != c {
                return Err(PolyError::NotSymmetrizable);
            }
            if k < 0 {
                continue;
            }
            if k == 0 {
                phi.add_term([0, *ue], c.clone());
            } else {
                for (i, b) in basis[k as usize].iter().enumerate() {
                    phi.add_term([i as u32, *ue], b * c);
                }
            }
        }
    }
    Ok((BiPoly { vars: [Var::X, Var::U], poly: phi }, l))
}

/// Polynomial in two named variables with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    vars: [Var; 2],
    poly: SparsePoly<[u32; 2]>,
}

impl BiPoly {
    pub fn zero(vars: [Var; 2]) -> Self {
        BiPoly { vars, poly: SparsePoly::zero() }
    }

    pub fn new(vars: [Var; 2], poly: SparsePoly<[u32; 2]>) -> Self {
        BiPoly { vars, poly }
    }

    /// Build from `(e1, e2, coefficient)` triples.
    pub fn from_terms(vars: [Var; 2], terms: &[(u32, u32, i64)]) -> Self {
        BiPoly {
            vars,
            poly: SparsePoly::from_terms(terms.iter().map(|&(a, b, c)| ([a, b], BigInt::from(c)))),
        }
    }

    pub fn constant(vars: [Var; 2], c: i64) -> Self {
        BiPoly { vars, poly: SparsePoly::constant(c) }
    }

    pub fn var(vars: [Var; 2], which: usize) -> Self {
        let mut e = [0, 0];
        e[which] = 1;
        BiPoly { vars, poly: SparsePoly::monomial(1, e) }
    }

    pub fn vars(&self) -> [Var; 2] {
        self.vars
    }

    pub fn poly(&self) -> &SparsePoly<[u32; 2]> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> BigInt {
        self.poly.coeff(&[e1, e2])
    }

    pub fn degree_in(&self, which: usize) -> u32 {
        self.poly.degree_in(which)
    }

    fn check_vars(&self, other: &BiPoly) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarnameMismatch { left: self.vars.to_vec(), right: other.vars.to_vec() })
        }
    }

    pub fn checked_add(&self, other: &BiPoly) -> Result<BiPoly, PolyError> {
        self.check_vars(other)?;
        Ok(BiPoly { vars: self.vars, poly: &self.poly + &other.poly })
    }

    pub fn checked_sub(&self, other: &BiPoly) -> Result<BiPoly, PolyError> {
        self.check_vars(other)?;
        Ok(BiPoly { vars: self.vars, poly: &self.poly - &other.poly })
    }

    pub fn checked_mul(&self, other: &BiPoly) -> Result<BiPoly, PolyError> {
        self.check_vars(other)?;
        Ok(BiPoly { vars: self.vars, poly: &self.poly * &other.poly })
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { vars: self.vars, poly: -&self.poly }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        BiPoly { vars: self.vars, poly: self.poly.pow(e) }
    }

    pub fn eval<R: CommRing>(&self, a: &R, b: &R) -> R {
        self.poly.eval(&[a.clone(), b.clone()])
    }

    /// Evaluate from a variable assignment; every variable must be bound.
    pub fn evaluate<R: CommRing>(&self, assignment: &[(Var, R)]) -> Result<R, PolyError> {
        let lookup = |v: Var| {
            assignment
                .iter()
                .find(|(w, _)| *w == v)
                .map(|(_, r)| r.clone())
                .ok_or(PolyError::UnassignedVariable(v))
        };
        Ok(self.eval(&lookup(self.vars[0])?, &lookup(self.vars[1])?))
    }

    pub fn derivative(&self, which: usize) -> BiPoly {
        BiPoly { vars: self.vars, poly: self.poly.derivative(which) }
    }

    /// Specialize the first variable to an integer.
    pub fn at_first(&self, value: i64) -> UniPoly {
        let v = BigInt::from(value);
        let mut coeffs = vec![BigInt::zero(); self.degree_in(1) as usize + 1];
        for (m, c) in self.poly.terms() {
            coeffs[m[1] as usize] += c * v.pow(m[0]);
        }
        UniPoly::new(self.vars[1], coeffs)
    }

    /// Whether `self = +-other`.
    pub fn equals_up_to_sign(&self, other: &BiPoly) -> bool {
        self.vars == other.vars && (self.poly == other.poly || self.poly == -&other.poly)
    }

    pub fn text(&self) -> String {
        self.poly.to_text(&[self.vars[0].name(), self.vars[1].name()])
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Substitute `u <- y - x^2 + 2` in a polynomial in `(x, u)`.
pub fn substitute_u(f: &BiPoly) -> Result<BiPoly, PolyError> {
    if f.vars != [Var::X, Var::U] {
        return Err(PolyError::VarnameMismatch { left: f.vars.to_vec(), right: vec![Var::X, Var::U] });
    }
    let q = SparsePoly::from_terms([
        ([0u32, 1u32], BigInt::one()),
        ([2, 0], BigInt::from(-1)),
        ([0, 0], BigInt::from(2)),
    ]);
    let powers = {
        let mut v = vec![SparsePoly::constant(1)];
        for j in 0..f.degree_in(1) as usize {
            let next = &v[j] * &q;
            v.push(next);
        }
        v
    };
    let mut out = SparsePoly::zero();
    for (m, c) in f.poly.terms() {
        let xpart = SparsePoly::monomial(c.clone(), [m[0], 0]);
        out = &out + &(&xpart * &powers[m[1] as usize]);
    }
    Ok(BiPoly { vars: [Var::X, Var::Y], poly: out })
}

/// Dense univariate integer polynomial, canonical (no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn from_i64(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        UniPoly::new(self.var, coeffs)
    }

    pub fn eval<R: CommRing>(&self, at: &R) -> R {
        let mut acc = at.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + at.int_like(c);
        }
        acc
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// `disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<BigInt, PolyError> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(PolyError::ConstantPolynomial),
        };
        let res = resultant(self, &self.derivative());
        let (q, r) = res.div_rem(&self.leading_coeff());
        debug_assert!(r.is_zero(), "lc(f) divides Res(f, f')");
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
    }

    pub fn text(&self) -> String {
        let items = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (vec![i as i64], c));
        format_terms(items, &[self.var.name()])
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Resultant as the determinant of the Sylvester matrix, computed with
/// fraction-free (Bareiss) elimination.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> BigInt {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingSpec};

    fn xu(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms([Var::X, Var::U], terms)
    }

    #[test]
    fn laurent_arithmetic_examples() {
        let s = &LaurentBiPoly::t() + &LaurentBiPoly::t_inv();
        let sq = &s * &s;
        let expected = &(&LaurentBiPoly::t_pow(2) + &LaurentBiPoly::constant(2)) + &LaurentBiPoly::t_pow(-2);
        assert_eq!(sq, expected);
        assert_eq!(sq.text(), "t^2 + 2 + t^-2");
        assert!((&s + &(-&s)).is_zero());
        let f = xu(&[(2, 0, 1), (0, 1, 1), (0, 0, -3)]);
        assert_eq!(f.checked_mul(&BiPoly::constant([Var::X, Var::U], 1)).unwrap(), f);
        assert_eq!(f.text(), "x^2 + u - 3");
    }

    #[test]
    fn varname_mismatch_is_reported() {
        let a = xu(&[(1, 0, 1)]);
        let b = BiPoly::from_terms([Var::X, Var::Y], &[(1, 0, 1)]);
        assert!(matches!(a.checked_add(&b), Err(PolyError::VarnameMismatch { .. })));
        assert!(matches!(substitute_u(&b), Err(PolyError::VarnameMismatch { .. })));
    }

    #[test]
    fn symmetric_reduce_examples() {
        let s = &LaurentBiPoly::t() + &LaurentBiPoly::t_inv();
        assert_eq!(symmetric_reduce(&s).unwrap(), (xu(&[(1, 0, 1)]), 0));
        let s2 = &LaurentBiPoly::t_pow(2) + &LaurentBiPoly::t_pow(-2);
        assert_eq!(symmetric_reduce(&s2).unwrap(), (xu(&[(2, 0, 1), (0, 0, -2)]), 0));
        let trefoil = &(&s2 + &LaurentBiPoly::u()) - &LaurentBiPoly::constant(1);
        assert_eq!(symmetric_reduce(&trefoil).unwrap(), (xu(&[(2, 0, 1), (0, 1, 1), (0, 0, -3)]), 0));
        // the t^2 factor is absorbed by the shift
        let (phi, l) = symmetric_reduce(&trefoil.shift_t(2)).unwrap();
        assert_eq!((phi, l), (xu(&[(2, 0, 1), (0, 1, 1), (0, 0, -3)]), -2));
    }

    #[test]
    fn non_symmetric_inputs_are_rejected() {
        let f = &LaurentBiPoly::t_pow(2) + &LaurentBiPoly::t();
        assert_eq!(symmetric_reduce(&f), Err(PolyError::NotSymmetrizable));
        let g = &(&LaurentBiPoly::t() + &LaurentBiPoly::t_inv()) + &LaurentBiPoly::u().shift_t(1);
        assert_eq!(symmetric_reduce(&g), Err(PolyError::NotSymmetrizable));
        let h = &LaurentBiPoly::t_pow(2) + &LaurentBiPoly::t_pow(-2).scale(&BigInt::from(3));
        assert_eq!(symmetric_reduce(&h), Err(PolyError::NotSymmetrizable));
        let k = &(&LaurentBiPoly::t_pow(3) + &LaurentBiPoly::t_inv()) + &LaurentBiPoly::constant(2);
        assert_eq!(symmetric_reduce(&k), Err(PolyError::NotSymmetrizable));
    }

    #[test]
    fn substitute_u_examples() {
        let trefoil = xu(&[(2, 0, 1), (0, 1, 1), (0, 0, -3)]);
        assert_eq!(substitute_u(&trefoil).unwrap(), BiPoly::from_terms([Var::X, Var::Y], &[(0, 1, 1), (0, 0, -1)]));
        // u^2 + (x^2 - 5)u - (x^2 - 5)
        let fig8 = xu(&[(0, 2, 1), (2, 1, 1), (0, 1, -5), (2, 0, -1), (0, 0, 5)]);
        let expected = BiPoly::from_terms([Var::X, Var::Y], &[(0, 2, 1), (0, 1, -1), (2, 1, -1), (2, 0, 2), (0, 0, -1)]);
        assert_eq!(substitute_u(&fig8).unwrap(), expected);
        let u = xu(&[(0, 1, 1)]);
        let expected_u = BiPoly::from_terms([Var::X, Var::Y], &[(0, 1, 1), (2, 0, -1), (0, 0, 2)]);
        assert_eq!(substitute_u(&u).unwrap(), expected_u);
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(UniPoly::from_i64(Var::U, &[1, 1]).discriminant().unwrap(), BigInt::from(1));
        assert_eq!(UniPoly::from_i64(Var::U, &[1, -1, 1]).discriminant().unwrap(), BigInt::from(-3));
        assert_eq!(UniPoly::from_i64(Var::U, &[-1, 0, 1]).discriminant().unwrap(), BigInt::from(4));
        assert_eq!(UniPoly::from_i64(Var::U, &[5]).discriminant(), Err(PolyError::ConstantPolynomial));
        assert_eq!(UniPoly::from_i64(Var::U, &[]).discriminant(), Err(PolyError::ConstantPolynomial));
    }

    #[test]
    fn discriminant_matches_cubic_formula() {
        // b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd for a x^3 + b x^2 + c x + d
        for (a, b, c, d) in [(1i64, 0, -3, 2), (2, -1, 4, 7), (-3, 5, 0, -2), (1, 1, 1, 1)] {
            let f = UniPoly::from_i64(Var::U, &[d, c, b, a]);
            let expected = b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
            assert_eq!(f.discriminant().unwrap(), BigInt::from(expected), "{f}");
        }
    }

    #[test]
    fn evaluate_examples() {
        let q = make_ring(RingSpec::Rational).unwrap();
        let f = xu(&[(2, 0, 1), (0, 1, 1), (0, 0, -3)]);
        assert!(f.evaluate(&[(Var::X, q.int(2)), (Var::U, q.int(-1))]).unwrap().is_zero());
        assert_eq!(f.evaluate(&[(Var::X, q.int(2))]), Err(PolyError::UnassignedVariable(Var::U)));
        let f7 = make_ring(RingSpec::PrimeField(7)).unwrap();
        assert!(UniPoly::from_i64(Var::U, &[1, -1, 1]).eval(&f7.int(3)).is_zero());
        let s = &LaurentBiPoly::t() + &LaurentBiPoly::t_inv();
        assert_eq!(s.eval(&q.int(1), &q.int(0)).unwrap(), q.int(2));
        assert_eq!(s.eval(&f7.int(0), &f7.int(0)), Err(PolyError::NonUnitLaurentBase));
    }

    #[test]
    fn basis_recursion_expands_correctly() {
        let basis = symmetric_basis(30);
        let s = &LaurentBiPoly::t() + &LaurentBiPoly::t_inv();
        for (n, p) in basis.iter().enumerate() {
            let as_poly = BiPoly::new(
                [Var::X, Var::U],
                SparsePoly::from_terms(p.iter().enumerate().map(|(i, c)| ([i as u32, 0], c.clone()))),
            );
            let expanded = as_poly.eval(&s, &LaurentBiPoly::u());
            let expected = &LaurentBiPoly::t_pow(n as i32) + &LaurentBiPoly::t_pow(-(n as i32));
            assert_eq!(expanded, expected, "n = {n}");
        }
    }
}
