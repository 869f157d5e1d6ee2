//! 2x2 matrices over any [`CommRing`], the determinant-one subtype and word
//! evaluation.

use std::ops::Mul;

use crate::algebra::CommRing;
use crate::word::{FreeWord, Gen};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("determinant is not 1")]
    DeterminantNotOne,
    #[error("matrix entries live in different rings")]
    RingMismatch,
}

/// `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

impl<R: CommRing> Mat2<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity_like(r: &R) -> Self {
        Mat2::new(r.one_like(), r.zero_like(), r.zero_like(), r.one_like())
    }

    pub fn zero_like(r: &R) -> Self {
        Mat2::new(r.zero_like(), r.zero_like(), r.zero_like(), r.zero_like())
    }

    pub fn entries(&self) -> [&R; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> Mat2<S> {
        Mat2 { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }

    /// Whether all entries are mutually compatible.
    pub fn is_consistent(&self) -> bool {
        self.entries().iter().all(|e| self.a.compatible(e))
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.a.compatible(&other.a)
    }

    pub fn det(&self) -> R {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> R {
        self.a.clone() + self.d.clone()
    }

    /// `[[d, -b], [-c, a]]`, the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Mat2::new(
            self.a.clone() - other.a.clone(),
            self.b.clone() - other.b.clone(),
            self.c.clone() - other.c.clone(),
            self.d.clone() - other.d.clone(),
        )
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|e| e.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|e| e.is_zero_elem())
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.det().try_inverse()?;
        Some(self.adjugate().scale(&inv))
    }
}

impl<R: CommRing> Mul for &Mat2<R> {
    type Output = Mat2<R>;
    fn mul(self, o: &Mat2<R>) -> Mat2<R> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Mat2::new(
            a.clone() * o.a.clone() + b.clone() * o.c.clone(),
            a.clone() * o.b.clone() + b.clone() * o.d.clone(),
            c.clone() * o.a.clone() + d.clone() * o.c.clone(),
            c.clone() * o.b.clone() + d.clone() * o.d.clone(),
        )
    }
}

impl<R: CommRing> Mul for Mat2<R> {
    type Output = Mat2<R>;
    fn mul(self, o: Mat2<R>) -> Mat2<R> {
        &self * &o
    }
}

/// A 2x2 matrix whose determinant was checked to equal 1 (to the known
/// precision, for series entries).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SL2Matrix<R>(Mat2<R>);

impl<R: CommRing> SL2Matrix<R> {
    pub fn new(m: Mat2<R>) -> Result<Self, MatrixError> {
        if !m.is_consistent() {
            return Err(MatrixError::RingMismatch);
        }
        if !(m.det() - m.a.one_like()).is_zero_elem() {
            return Err(MatrixError::DeterminantNotOne);
        }
        Ok(SL2Matrix(m))
    }

    pub fn from_entries(a: R, b: R, c: R, d: R) -> Result<Self, MatrixError> {
        Self::new(Mat2::new(a, b, c, d))
    }

    pub fn identity_like(r: &R) -> Self {
        SL2Matrix(Mat2::identity_like(r))
    }

    pub fn mat(&self) -> &Mat2<R> {
        &self.0
    }

    pub fn into_mat(self) -> Mat2<R> {
        self.0
    }

    pub fn trace(&self) -> R {
        self.0.trace()
    }

    pub fn inverse(&self) -> Self {
        SL2Matrix(self.0.adjugate())
    }

    pub fn mul(&self, other: &Self) -> Self {
        SL2Matrix(&self.0 * &other.0)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut sq = base;
        let mut acc = SL2Matrix::identity_like(&self.0.a);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }
}

impl<R: CommRing> Mul for &SL2Matrix<R> {
    type Output = SL2Matrix<R>;
    fn mul(self, o: &SL2Matrix<R>) -> SL2Matrix<R> {
        SL2Matrix::mul(self, o)
    }
}

/// The image of `w` under `a -> ma`, `b -> mb`.
pub fn evaluate_word<R: CommRing>(
    w: &FreeWord,
    ma: &SL2Matrix<R>,
    mb: &SL2Matrix<R>,
) -> Result<SL2Matrix<R>, MatrixError> {
    if !ma.0.compatible(&mb.0) {
        return Err(MatrixError::RingMismatch);
    }
    let mut acc = SL2Matrix::identity_like(&ma.0.a);
    for &(g, e) in w.syllables() {
        let m = match g {
            Gen::A => ma,
            Gen::B => mb,
        };
        acc = acc.mul(&m.pow(e));
    }
    Ok(acc)
}
