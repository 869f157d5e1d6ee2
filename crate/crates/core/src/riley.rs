//! Riley representations of two-bridge knot groups.
//!
//! `a -> C(t) = [[t, 1], [0, 1/t]]`, `b -> D(t, u) = [[t, 0], [u, 1/t]]`.
//! With `W = W(t, u)` the image of the Schubert word, the relation
//! `W C = D W` holds exactly when `Phi(t + 1/t, u) = 0`, where
//! `Phi(t + 1/t, u) = t^l (w11 + (1/t - t) w12)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::CommRing;
use crate::knot::TwoBridgeKnot;
use crate::matrix::{evaluate_word, MatrixError, Mat2, SL2Matrix};
use crate::poly::{symmetric_reduce, BiPoly, LaurentBiPoly, PolyError, UniPoly};
use crate::ring::{is_prime, make_ring, RingElement, RingError, RingSpec};
use crate::word::FreeWord;

/// Largest prime accepted by [`riley_roots`]; roots are found by scanning.
pub const MAX_SCAN_PRIME: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RileyError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("characteristic {p} is excluded: {reason}")]
    BadCharacteristic { p: u64, reason: String },
    #[error("prime {0} exceeds the scan limit {MAX_SCAN_PRIME}")]
    PrimeTooLarge(u64),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("coefficient ring {0} is not a field")]
    NotAField(RingSpec),
    #[error("no conjugator: {0}")]
    NoConjugator(String),
    #[error("representation is not absolutely irreducible")]
    NotIrreducible,
    #[error("root {0} of Phi(2,u) is zero or not simple")]
    DegenerateRoot(String),
}

pub fn c_matrix<R: CommRing>(t: &R) -> Result<SL2Matrix<R>, RileyError> {
    let t_inv = t.try_inverse().ok_or_else(|| RingError::NotAUnit(format!("{t:?}")))?;
    Ok(SL2Matrix::from_entries(t.clone(), t.one_like(), t.zero_like(), t_inv)?)
}

pub fn d_matrix<R: CommRing>(t: &R, u: &R) -> Result<SL2Matrix<R>, RileyError> {
    let t_inv = t.try_inverse().ok_or_else(|| RingError::NotAUnit(format!("{t:?}")))?;
    Ok(SL2Matrix::from_entries(t.clone(), t.zero_like(), u.clone(), t_inv)?)
}

/// Symbolic Riley data of a knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RileyData {
    pub knot: TwoBridgeKnot,
    pub w: SL2Matrix<LaurentBiPoly>,
    pub phi: LaurentBiPoly,
    pub big_phi: BiPoly,
    pub l: i32,
    pub phi2: UniPoly,
}

pub fn riley_data(knot: TwoBridgeKnot) -> Result<RileyData, RileyError> {
    let t = LaurentBiPoly::t();
    let u = LaurentBiPoly::u();
    let w = evaluate_word(&knot.schubert_word(), &c_matrix(&t)?, &d_matrix(&t, &u)?)?;
    let m = w.mat();
    let phi = &m.a + &(&(&LaurentBiPoly::t_inv() - &t) * &m.b);
    let (big_phi, l) = symmetric_reduce(&phi)?;
    let phi2 = big_phi.at_first(2);
    Ok(RileyData { knot, w, phi, big_phi, l, phi2 })
}

/// A homomorphism from the free group on `a, b` given by two SL2 images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub ring: RingSpec,
    pub a: SL2Matrix<RingElement>,
    pub b: SL2Matrix<RingElement>,
}

impl Representation {
    pub fn new(a: SL2Matrix<RingElement>, b: SL2Matrix<RingElement>) -> Result<Self, RileyError> {
        let ring = a.mat().a.ring();
        if b.mat().a.ring() != ring {
            return Err(RingError::RingMismatch { left: ring, right: b.mat().a.ring() }.into());
        }
        Ok(Representation { ring, a, b })
    }

    pub fn image(&self, w: &FreeWord) -> SL2Matrix<RingElement> {
        evaluate_word(w, &self.a, &self.b).expect("images share a ring")
    }

    pub fn trace(&self, w: &FreeWord) -> RingElement {
        self.image(w).trace()
    }

    /// `(tr a, tr b, tr ab)`.
    pub fn character(&self) -> (RingElement, RingElement, RingElement) {
        (self.a.trace(), self.b.trace(), self.a.mul(&self.b).trace())
    }
}

impl RileyData {
    /// `Phi(alpha + 1/alpha, beta)`.
    pub fn phi_at(&self, alpha: &RingElement, beta: &RingElement) -> Result<RingElement, RileyError> {
        let x = alpha.clone() + alpha.inverse()?;
        Ok(self.big_phi.eval(&x, beta))
    }

    /// Whether `W(alpha, beta) C(alpha) = D(alpha, beta) W(alpha, beta)`.
    pub fn relator_holds(&self, alpha: &RingElement, beta: &RingElement) -> Result<bool, RileyError> {
        let c = c_matrix(alpha)?;
        let d = d_matrix(alpha, beta)?;
        let w = evaluate_word(&self.knot.schubert_word(), &c, &d)?;
        Ok(w.mul(&c) == d.mul(&w))
    }

    pub fn representation(&self, alpha: &RingElement, beta: &RingElement) -> Result<Representation, RileyError> {
        let value = self.phi_at(alpha, beta)?;
        if !value.is_zero() {
            return Err(RileyError::NotARepresentation(format!("Phi(alpha + 1/alpha, beta) = {value}")));
        }
        if !self.relator_holds(alpha, beta)? {
            return Err(RileyError::NotARepresentation("W C != D W".into()));
        }
        Representation::new(c_matrix(alpha)?, d_matrix(alpha, beta)?)
    }

    pub fn discriminant(&self) -> Result<BigInt, RileyError> {
        Ok(self.phi2.discriminant()?)
    }
}

/// The Riley representation `a -> C(alpha)`, `b -> D(alpha, beta)`, after
/// checking that it factors through the knot group.
pub fn riley_rep(knot: TwoBridgeKnot, alpha: &RingElement, beta: &RingElement) -> Result<Representation, RileyError> {
    riley_data(knot)?.representation(alpha, beta)
}

/// All roots of `Phi(2, u)` in `F_p`, by exhaustive scan.
pub fn riley_roots(knot: TwoBridgeKnot, p: u64) -> Result<Vec<RingElement>, RileyError> {
    riley_data(knot)?.roots_mod(p)
}

impl RileyData {
    pub fn roots_mod(&self, p: u64) -> Result<Vec<RingElement>, RileyError> {
        if p == 2 {
            return Err(RileyError::BadCharacteristic { p, reason: "characteristic 2".into() });
        }
        if p > MAX_SCAN_PRIME {
            return Err(RileyError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(RingError::NotPrime(p).into());
        }
        let disc = self.discriminant()?;
        if disc.mod_floor(&BigInt::from(p)).is_zero() {
            return Err(RileyError::BadCharacteristic { p, reason: format!("p divides disc = {disc}") });
        }
        let field = make_ring(RingSpec::PrimeField(p))?;
        let dphi2 = self.phi2.derivative();
        let mut roots = Vec::new();
        for v in 0..p {
            let beta = field.int(v as i64);
            if self.phi2.eval(&beta).is_zero() {
                if beta.is_zero() || dphi2.eval(&beta).is_zero() {
                    return Err(RileyError::DegenerateRoot(beta.to_string()));
                }
                roots.push(beta);
            }
        }
        Ok(roots)
    }
}

/// `Delta = x^2 + z^2 + y^2 - x z y - 4` from the traces of `a`, `b`, `ab`;
/// nonzero exactly when the pair is absolutely irreducible.
pub fn irreducibility_discriminant(rho: &Representation) -> RingElement {
    let (x, z, y) = rho.character();
    let four = x.small_int_like(4);
    x.clone() * x.clone() + z.clone() * z.clone() + y.clone() * y.clone() - x * z * y - four
}

pub fn is_abs_irreducible(rho: &Representation) -> Result<bool, RileyError> {
    if !rho.ring.is_field() {
        return Err(RileyError::NotAField(rho.ring));
    }
    Ok(!irreducibility_discriminant(rho).is_zero())
}

/// Basis of the solution space of `rows * v = 0` over a field.
fn nullspace(mut rows: Vec<Vec<RingElement>>, ncols: usize, zero: &RingElement) -> Vec<Vec<RingElement>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].inverse().expect("nonzero field element");
        rows[r] = rows[r].iter().map(|e| e.clone() * inv.clone()).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (e, p) in rows[i].iter_mut().zip(pivot_row) {
                    *e = e.clone() - f.clone() * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let one = zero.one_like();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); ncols];
            v[free] = one.clone();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

/// Conjugator `gamma` with `rho2(g) = gamma^-1 rho1(g) gamma`, normalized so
/// its first nonzero entry (row-major) is 1.
pub fn find_conjugator(rho1: &Representation, rho2: &Representation) -> Result<Mat2<RingElement>, RileyError> {
    if rho1.ring != rho2.ring {
        return Err(RingError::RingMismatch { left: rho1.ring, right: rho2.ring }.into());
    }
    if !is_abs_irreducible(rho1)? {
        return Err(RileyError::NotIrreducible);
    }
    if rho1.character() != rho2.character() {
        return Err(RileyError::NoConjugator("traces of a, b, ab differ".into()));
    }
    let zero = make_ring(rho1.ring)?.zero();
    // rho1(g) gamma - gamma rho2(g) = 0, unknowns (g11, g12, g21, g22)
    let mut rows = Vec::new();
    for (m1, m2) in [(&rho1.a, &rho2.a), (&rho1.b, &rho2.b)] {
        let (p, q) = (m1.mat(), m2.mat());
        for i in 0..2 {
            for j in 0..2 {
                let mut row = vec![zero.clone(); 4];
                for k in 0..2 {
                    row[2 * k + j] = row[2 * k + j].clone() + entry(p, i, k);
                    row[2 * i + k] = row[2 * i + k].clone() - entry(q, k, j);
                }
                rows.push(row);
            }
        }
    }
    let basis = nullspace(rows, 4, &zero);
    let candidate = basis
        .into_iter()
        .map(|v| Mat2::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
        .find(|g| !g.det().is_zero())
        .ok_or_else(|| RileyError::NoConjugator("every solution is singular".into()))?;
    let lead = candidate.entries().into_iter().find(|e| !e.is_zero()).expect("nonzero").inverse()?;
    let gamma = candidate.scale(&lead);
    for w in FreeWord::all_up_to(4) {
        if rho1.image(&w).mat() * &gamma != &gamma * rho2.image(&w).mat() {
            return Err(RileyError::NoConjugator(format!("conjugacy fails on {w}")));
        }
    }
    Ok(gamma)
}

fn entry(m: &Mat2<RingElement>, i: usize, j: usize) -> RingElement {
    match (i, j) {
        (0, 0) => m.a.clone(),
        (0, 1) => m.b.clone(),
        (1, 0) => m.c.clone(),
        _ => m.d.clone(),
    }
}

/// Summary of the symbolic data in printable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RileySummary {
    pub knot: TwoBridgeKnot,
    pub word: String,
    pub phi: String,
    #[serde(rename = "Phi")]
    pub big_phi: String,
    pub l: i32,
    #[serde(rename = "Phi2")]
    pub phi2: String,
    pub disc: String,
}

impl RileyData {
    pub fn summary(&self) -> Result<RileySummary, RileyError> {
        Ok(RileySummary {
            knot: self.knot,
            word: self.knot.schubert_word().to_string(),
            phi: self.phi.text(),
            big_phi: self.big_phi.text(),
            l: self.l,
            phi2: self.phi2.text(),
            disc: self.discriminant()?.to_string(),
        })
    }

    /// `Phi(x,u) = ...; Phi(2,u) = ...; disc = ...`.
    pub fn text(&self) -> Result<String, RileyError> {
        Ok(format!(
            "Phi(x,u) = {}; Phi(2,u) = {}; disc = {}",
            self.big_phi,
            self.phi2,
            self.discriminant()?
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use crate::ring::Ring;

    fn knot(m: i64, n: i64) -> TwoBridgeKnot {
        TwoBridgeKnot::new(m, n).unwrap()
    }

    fn xu(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms([Var::X, Var::U], terms)
    }

    fn field(p: u64) -> Ring {
        make_ring(RingSpec::PrimeField(p)).unwrap()
    }

    #[test]
    fn trefoil_data() {
        let d = riley_data(knot(3, 1)).unwrap();
        assert!(d.big_phi.equals_up_to_sign(&xu(&[(2, 0, 1), (0, 1, 1), (0, 0, -3)])));
        assert_eq!(d.phi2, UniPoly::from_i64(Var::U, &[1, 1]));
        assert_eq!(d.text().unwrap(), "Phi(x,u) = x^2 + u - 3; Phi(2,u) = u + 1; disc = 1");
    }

    #[test]
    fn figure_eight_data() {
        let d = riley_data(knot(5, 3)).unwrap();
        let expected = xu(&[(0, 2, 1), (2, 1, 1), (0, 1, -5), (2, 0, -1), (0, 0, 5)]);
        assert!(d.big_phi.equals_up_to_sign(&expected), "{}", d.big_phi);
        let p2 = UniPoly::from_i64(Var::U, &[1, -1, 1]);
        assert!(d.phi2 == p2 || d.phi2 == p2.neg());
    }

    #[test]
    fn roots_examples() {
        let f7 = field(7);
        assert_eq!(riley_roots(knot(3, 1), 7).unwrap(), vec![f7.int(6)]);
        assert_eq!(riley_roots(knot(5, 3), 7).unwrap(), vec![f7.int(3), f7.int(5)]);
        assert_eq!(riley_roots(knot(5, 3), 5).unwrap(), vec![]);
        assert!(matches!(riley_roots(knot(5, 3), 3), Err(RileyError::BadCharacteristic { .. })));
        assert!(matches!(riley_roots(knot(3, 1), 2), Err(RileyError::BadCharacteristic { .. })));
        assert!(matches!(riley_roots(knot(3, 1), 10_007), Err(RileyError::PrimeTooLarge(_))));
    }

    #[test]
    fn rep_examples() {
        let q = make_ring(RingSpec::Rational).unwrap();
        assert!(riley_rep(knot(3, 1), &q.one(), &q.int(-1)).is_ok());
        assert!(matches!(riley_rep(knot(3, 1), &q.one(), &q.zero()), Err(RileyError::NotARepresentation(_))));
        let f7 = field(7);
        assert!(riley_rep(knot(5, 3), &f7.one(), &f7.int(3)).is_ok());
    }

    #[test]
    fn irreducibility_examples() {
        let f5 = field(5);
        let rho = riley_rep(knot(3, 1), &f5.one(), &f5.int(-1)).unwrap();
        assert_eq!(irreducibility_discriminant(&rho), f5.one());
        assert!(is_abs_irreducible(&rho).unwrap());
        let id = SL2Matrix::identity_like(&f5.zero());
        let trivial = Representation::new(id.clone(), id.clone()).unwrap();
        assert!(!is_abs_irreducible(&trivial).unwrap());
        let reducible = Representation::new(c_matrix(&f5.one()).unwrap(), d_matrix(&f5.one(), &f5.zero()).unwrap()).unwrap();
        assert!(!is_abs_irreducible(&reducible).unwrap());
        let z49 = make_ring(RingSpec::PadicTrunc(7, 2)).unwrap();
        let idp = SL2Matrix::identity_like(&z49.zero());
        let over_ring = Representation::new(idp.clone(), idp).unwrap();
        assert!(matches!(is_abs_irreducible(&over_ring), Err(RileyError::NotAField(_))));
    }

    #[test]
    fn conjugator_examples() {
        let f7 = field(7);
        let rho = riley_rep(knot(5, 3), &f7.one(), &f7.int(3)).unwrap();
        let id = Mat2::identity_like(&f7.zero());
        assert_eq!(find_conjugator(&rho, &rho).unwrap(), id);

        let g0 = SL2Matrix::from_entries(f7.one(), f7.one(), f7.zero(), f7.one()).unwrap();
        let conj = |m: &SL2Matrix<RingElement>| g0.inverse().mul(m).mul(&g0);
        let rho2 = Representation::new(conj(&rho.a), conj(&rho.b)).unwrap();
        assert_eq!(find_conjugator(&rho, &rho2).unwrap(), g0.mat().clone());

        let one = SL2Matrix::identity_like(&f7.zero());
        let unipotent = c_matrix(&f7.one()).unwrap();
        let r1 = Representation::new(unipotent, one.clone()).unwrap();
        let r2 = Representation::new(one.clone(), one).unwrap();
        assert_eq!(find_conjugator(&r1, &r2), Err(RileyError::NotIrreducible));
    }

    #[test]
    fn det_w_is_one() {
        for k in [knot(3, 1), knot(5, 3), knot(7, 3), knot(9, 5)] {
            let d = riley_data(k).unwrap();
            assert!(d.w.mat().det().is_one_elem());
        }
    }
}
