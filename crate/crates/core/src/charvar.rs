//! Character varieties of two-bridge knot groups and trace polynomials of
//! words in two generators.
//!
//! Traces are expressed in `x = tr a`, `z = tr b`, `y = tr ab`. For a knot
//! group `a` and `b` are conjugate, so `z = x` there.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::CommRing;
use crate::knot::TwoBridgeKnot;
use crate::poly::{substitute_u, symmetric_basis, BiPoly, SparsePoly, Var};
use crate::riley::{riley_data, RileyError};
use crate::ring::{RingElement, RingError};
use crate::word::{FreeWord, Gen};

/// The curve `(y - x^2 + 2) Phi(x, y - x^2 + 2) = 0` in the `(x, y)` plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    pub knot: TwoBridgeKnot,
    pub reducible_factor: BiPoly,
    pub irreducible_factor: BiPoly,
    pub product: BiPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Any,
    Reducible,
    Irreducible,
}

pub fn reducible_line() -> BiPoly {
    BiPoly::from_terms([Var::X, Var::Y], &[(0, 1, 1), (2, 0, -1), (0, 0, 2)])
}

pub fn curve_model(knot: TwoBridgeKnot) -> Result<CurveModel, RileyError> {
    let data = riley_data(knot)?;
    let reducible_factor = reducible_line();
    let irreducible_factor = substitute_u(&data.big_phi)?;
    let product = reducible_factor.checked_mul(&irreducible_factor)?;
    Ok(CurveModel { knot, reducible_factor, irreducible_factor, product })
}

impl CurveModel {
    pub fn contains_point(&self, x: &RingElement, y: &RingElement, which: Component) -> bool {
        let f = match which {
            Component::Any => &self.product,
            Component::Reducible => &self.reducible_factor,
            Component::Irreducible => &self.irreducible_factor,
        };
        f.eval(x, y).is_zero()
    }

    /// `(y - x^2 + 2)*(...) = 0`.
    pub fn equation(&self) -> String {
        format!("({})*({}) = 0", self.reducible_factor, self.irreducible_factor)
    }

    pub fn wire(&self) -> CurveWire {
        CurveWire {
            knot: self.knot,
            reducible_factor: self.reducible_factor.text(),
            irreducible_factor: self.irreducible_factor.text(),
            product: self.product.text(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveWire {
    pub knot: TwoBridgeKnot,
    pub reducible_factor: String,
    pub irreducible_factor: String,
    pub product: String,
}

/// `(alpha + 1/alpha, alpha^2 + 1/alpha^2 + beta)`, the `(tr a, tr ab)`
/// coordinates of the Riley representation of type `(alpha, beta)`.
pub fn character_point(alpha: &RingElement, beta: &RingElement) -> Result<(RingElement, RingElement), RingError> {
    let inv = alpha.inverse()?;
    let x = alpha.clone() + inv.clone();
    let y = alpha.clone() * alpha.clone() + inv.clone() * inv + beta.clone();
    Ok((x, y))
}

/// Polynomial in `(x, z, y)` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TracePolynomial {
    poly: SparsePoly<[u32; 3]>,
}

impl TracePolynomial {
    pub fn from_terms(terms: &[(u32, u32, u32, i64)]) -> Self {
        TracePolynomial {
            poly: SparsePoly::from_terms(terms.iter().map(|&(a, b, c, k)| ([a, b, c], BigInt::from(k)))),
        }
    }

    pub fn poly(&self) -> &SparsePoly<[u32; 3]> {
        &self.poly
    }

    pub fn eval<R: CommRing>(&self, x: &R, z: &R, y: &R) -> R {
        self.poly.eval(&[x.clone(), z.clone(), y.clone()])
    }

    /// Substitute `z = x`, giving a polynomial in `(x, y)`.
    pub fn knot_specialization(&self) -> BiPoly {
        let poly = SparsePoly::from_terms(self.poly.terms().map(|(m, c)| ([m[0] + m[1], m[2]], c.clone())));
        BiPoly::new([Var::X, Var::Y], poly)
    }
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.to_text(&["x", "z", "y"]))
    }
}

type P3 = SparsePoly<[u32; 3]>;

/// Memoized trace reduction; reuse one reducer across many words to share
/// intermediate results.
#[derive(Debug, Default)]
pub struct TraceReducer {
    memo: HashMap<Vec<(Gen, i64)>, P3>,
}

fn gen_var(g: Gen) -> usize {
    match g {
        Gen::A => 0,
        Gen::B => 1,
    }
}

fn letters_word(letters: &[(Gen, i64)]) -> FreeWord {
    FreeWord::from_syllables(letters.iter().copied())
}

impl TraceReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reduce(&mut self, w: &FreeWord) -> TracePolynomial {
        TracePolynomial { poly: self.trace(w) }
    }

    /// Canonical representative of the conjugacy class of `w` and `w^-1`:
    /// the smallest letter rotation of either.
    fn key(w: &FreeWord) -> Vec<(Gen, i64)> {
        let mut best: Option<Vec<(Gen, i64)>> = None;
        for v in [w.clone(), w.inverse()] {
            let letters = v.letters();
            for k in 0..letters.len().max(1) {
                let mut rot = letters[k.min(letters.len())..].to_vec();
                rot.extend_from_slice(&letters[..k.min(letters.len())]);
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }

    fn trace(&mut self, w: &FreeWord) -> P3 {
        let w = w.cyclically_reduced();
        let key = Self::key(&w);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let result = self.compute(&w);
        self.memo.insert(key, result.clone());
        result
    }

    fn compute(&mut self, w: &FreeWord) -> P3 {
        let syl = w.syllables();
        match syl {
            [] => return P3::constant(2),
            [(g, e)] => return chebyshev(gen_var(*g), e.unsigned_abs() as usize),
            [(Gen::A, e), (Gen::B, f)] | [(Gen::B, f), (Gen::A, e)] if e.abs() == 1 && f.abs() == 1 => {
                let y = P3::monomial(1, [0, 0, 1]);
                return if e == f {
                    y
                } else {
                    &P3::monomial(1, [1, 1, 0]) - &y
                };
            }
            _ => {}
        }
        let letters = w.letters();
        let n = letters.len();
        if let Some(pos) = syl.iter().position(|(_, e)| e.abs() >= 2) {
            // tr(h^k v) = tr(h) tr(h^(k-1) v) - tr(h^(k-2) v) with h = g^(+-1)
            let mut rot = syl[pos..].to_vec();
            rot.extend_from_slice(&syl[..pos]);
            let (g, e) = rot[0];
            let h = e.signum();
            let rest = &rot[1..];
            let with = |k: i64| FreeWord::from_syllables(std::iter::once((g, k)).chain(rest.iter().copied()));
            let tg = chebyshev(gen_var(g), 1);
            let first = &tg * &self.trace(&with(e - h));
            return &first - &self.trace(&with(e - 2 * h));
        }
        // all exponents +-1: split at two occurrences of the same letter
        for i in 0..n {
            for j in i + 1..n {
                if letters[i] == letters[j] {
                    let mut rot = letters[i..].to_vec();
                    rot.extend_from_slice(&letters[..i]);
                    return self.split(&rot, j - i);
                }
            }
        }
        self.split(&letters, n / 2)
    }

    /// `tr(UV) = tr(U) tr(V) - tr(U^-1 V)` with `U = letters[..k]`.
    fn split(&mut self, letters: &[(Gen, i64)], k: usize) -> P3 {
        let u = letters_word(&letters[..k]);
        let v = letters_word(&letters[k..]);
        let uv = &self.trace(&u) * &self.trace(&v);
        &uv - &self.trace(&u.inverse().multiply(&v))
    }
}

/// `p_n(var)` with `p_n(t + 1/t) = t^n + t^-n`.
fn chebyshev(var: usize, n: usize) -> P3 {
    let basis = symmetric_basis(n);
    SparsePoly::from_terms(basis[n].iter().enumerate().map(|(i, c)| {
        let mut m = [0u32; 3];
        m[var] = i as u32;
        (m, c.clone())
    }))
}

/// Trace polynomial `P` with `tr rho(w) = P(tr rho(a), tr rho(b), tr rho(ab))`
/// for every SL2 representation `rho` over any commutative ring.
pub fn trace_reduce(w: &FreeWord) -> TracePolynomial {
    TraceReducer::new().reduce(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingSpec};

    fn tr(s: &str) -> TracePolynomial {
        trace_reduce(&s.parse().unwrap())
    }

    fn xy(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms([Var::X, Var::Y], terms)
    }

    #[test]
    fn trace_examples() {
        assert_eq!(tr("ab"), TracePolynomial::from_terms(&[(0, 0, 1, 1)]));
        assert_eq!(tr("aa"), TracePolynomial::from_terms(&[(2, 0, 0, 1), (0, 0, 0, -2)]));
        let commutator = TracePolynomial::from_terms(&[
            (2, 0, 0, 1),
            (0, 2, 0, 1),
            (0, 0, 2, 1),
            (1, 1, 1, -1),
            (0, 0, 0, -2),
        ]);
        assert_eq!(tr("a b a^-1 b^-1"), commutator);
        assert_eq!(tr("1"), TracePolynomial::from_terms(&[(0, 0, 0, 2)]));
        assert_eq!(tr("a^-1"), TracePolynomial::from_terms(&[(1, 0, 0, 1)]));
        assert_eq!(tr("a b^-1"), TracePolynomial::from_terms(&[(1, 1, 0, 1), (0, 0, 1, -1)]));
    }

    #[test]
    fn curve_examples() {
        let trefoil = curve_model(TwoBridgeKnot::new(3, 1).unwrap()).unwrap();
        assert_eq!(trefoil.reducible_factor, xy(&[(0, 1, 1), (2, 0, -1), (0, 0, 2)]));
        assert!(trefoil.irreducible_factor.equals_up_to_sign(&xy(&[(0, 1, 1), (0, 0, -1)])));
        let fig8 = curve_model(TwoBridgeKnot::new(5, 3).unwrap()).unwrap();
        let expected = xy(&[(0, 2, 1), (0, 1, -1), (2, 1, -1), (2, 0, 2), (0, 0, -1)]);
        assert!(fig8.irreducible_factor.equals_up_to_sign(&expected), "{}", fig8.irreducible_factor);
        assert_eq!(
            fig8.product,
            fig8.reducible_factor.checked_mul(&fig8.irreducible_factor).unwrap()
        );
    }

    #[test]
    fn point_examples() {
        let q = make_ring(RingSpec::Rational).unwrap();
        assert_eq!(character_point(&q.one(), &q.int(-1)).unwrap(), (q.int(2), q.int(1)));
        assert_eq!(character_point(&q.one(), &q.zero()).unwrap(), (q.int(2), q.int(2)));
        let m = curve_model(TwoBridgeKnot::new(3, 1).unwrap()).unwrap();
        assert!(m.contains_point(&q.int(2), &q.int(1), Component::Irreducible));
        assert!(m.contains_point(&q.int(0), &q.int(-2), Component::Reducible));
        assert!(!m.contains_point(&q.int(0), &q.int(0), Component::Any));
    }

    #[test]
    fn knot_specialization_sets_z_to_x() {
        let p = tr("a b^-1");
        assert_eq!(p.knot_specialization(), xy(&[(2, 0, 1), (0, 1, -1)]));
    }
}
