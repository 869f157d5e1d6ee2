//! The universal deformation of a residual Riley representation over
//! `O[[z]]`, `z = x - 2`.
//!
//! Given a simple nonzero root `beta` of `Phi(2, u)` in the residue field,
//! `u(x)` is the Hensel lift of `beta`, `v = sqrt(1 + (x^2 - 4)/u)` and
//!
//! ```text
//! A = [[x/2, 1], [(x^2-4)/4, x/2]]
//! B = [[x/2, (1-v)^2 u/(x^2-4)], [(1+v)^2 u/4, x/2]]
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::CommRing;
use crate::knot::TwoBridgeKnot;
use crate::matrix::{Mat2, MatrixError, SL2Matrix};
use crate::riley::{c_matrix, d_matrix, riley_data, Representation, RileyError};
use crate::ring::{make_ring, Ring, RingElement, RingError, RingSpec};
use crate::series::{newton_root, SeriesError, SeriesVar, SeriesWire, TruncSeries};
use crate::word::{FreeWord, Gen};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformError {
    #[error(transparent)]
    Riley(#[from] RileyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("beta = 0 gives a reducible residual representation")]
    BetaZero,
    #[error("residue characteristic {p} divides disc Phi(2,u) = {disc}")]
    BadCharacteristic { p: u64, disc: String },
    #[error("Hensel lift has non-unit constant term {0}")]
    NonUnitU(String),
    #[error("x0 - 2 = {0} is not in the maximal ideal")]
    NotInMaximalIdeal(String),
    #[error("(x0 - 2)^{precision} is nonzero; the series are too short to evaluate")]
    InsufficientPrecision { precision: usize },
    #[error("invalid deformation JSON: {0}")]
    Json(String),
}

fn residue_ring(spec: RingSpec) -> RingSpec {
    spec.residue_field().unwrap_or(spec)
}

/// Hensel lift `u(x)` of the residual root `beta` to precision `N` over
/// `coeff_ring`.
pub fn hensel_u(knot: TwoBridgeKnot, beta: &RingElement, coeff_ring: RingSpec, n: usize) -> Result<TruncSeries, DeformError> {
    coeff_ring.validate()?;
    let residue = residue_ring(coeff_ring);
    if beta.ring() != residue {
        return Err(RingError::RingMismatch { left: residue, right: beta.ring() }.into());
    }
    if beta.is_zero() {
        return Err(DeformError::BetaZero);
    }
    let data = riley_data(knot)?;
    let p = coeff_ring.residue_characteristic();
    if p != 0 {
        let disc = data.discriminant()?;
        if (&disc % num_bigint::BigInt::from(p)) == num_bigint::BigInt::from(0) {
            return Err(DeformError::BadCharacteristic { p, disc: disc.to_string() });
        }
    }
    let u = newton_root(&data.big_phi, beta, coeff_ring, n)?;
    if !u.constant_term().is_unit() {
        return Err(DeformError::NonUnitU(u.constant_term().to_string()));
    }
    Ok(u)
}

/// `v`, `A` and `B` from the Hensel lift `u`. The off-diagonal entry of `B`
/// containing `x^2 - 4` in the denominator is known to one fewer coefficient.
pub fn deformation_matrices(
    u: &TruncSeries,
) -> Result<(TruncSeries, SL2Matrix<TruncSeries>, SL2Matrix<TruncSeries>), DeformError> {
    let ring = make_ring(u.ring())?;
    let n = u.precision();
    let half = ring.int(2).inverse()?;
    let quarter = half.clone() * half.clone();
    let x = TruncSeries::x(&ring, n)?;
    let z = TruncSeries::variable(&ring, SeriesVar::Z, n)?;
    let one = x.one_like();
    let z_plus_4 = &z + &x.small_int_like(4);
    let x2_minus_4 = &z * &z_plus_4;
    let v = (&one + &(&x2_minus_4 * &u.invert()?)).sqrt()?;
    assert!(v.constant_term().is_one(), "v(2) = 1 by construction");

    let x_half = x.scale(&half)?;
    let a = SL2Matrix::from_entries(x_half.clone(), one.clone(), x2_minus_4.scale(&quarter)?, x_half.clone())?;

    let one_minus_v = &one - &v;
    let one_plus_v = &one + &v;
    let top = (&(&one_minus_v * &one_minus_v) * u).divide_by_var_power(1)?;
    let b12 = &top * &z_plus_4.truncate(top.precision()).invert()?;
    let b21 = (&(&one_plus_v * &one_plus_v) * u).scale(&quarter)?;
    let b = SL2Matrix::from_entries(x_half.clone(), b12, b21, x_half)?;
    Ok((v, a, b))
}

/// One line of a verification report. `precision` is the `var`-adic
/// precision of the data the check compared; `failing_index` is the lowest
/// coefficient index at which a compared difference is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub precision: usize,
    pub status: CheckStatus,
    pub failing_index: Option<usize>,
}

impl CheckOutcome {
    fn new(name: &str, precision: usize, failing_index: Option<usize>) -> Self {
        let status = if failing_index.is_none() { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckOutcome { name: name.into(), precision, status, failing_index }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DeformationReport {
    pub checks: Vec<CheckOutcome>,
}

impl DeformationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn min_precision(&self) -> usize {
        self.checks.iter().map(|c| c.precision).min().unwrap_or(0)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push_diff(&mut self, name: &str, diff: &[TruncSeries]) {
        let precision = diff.iter().map(TruncSeries::precision).min().unwrap_or(0);
        let failing_index = diff.iter().filter_map(|d| d.truncate(precision).first_nonzero()).min();
        self.checks.push(CheckOutcome::new(name, precision, failing_index));
    }
}

impl fmt::Display for DeformationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            write!(f, "{}: {} (precision {})", c.name, status, c.precision)?;
            if let Some(i) = c.failing_index {
                write!(f, ", first bad coefficient {i}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn mat_entries(m: &Mat2<TruncSeries>) -> Vec<TruncSeries> {
    m.entries().into_iter().cloned().collect()
}

/// Word evaluation that tolerates matrices whose determinant is not 1, so
/// corrupted data can still be checked. Inverses are adjugates.
fn evaluate_word_mat(w: &FreeWord, a: &Mat2<TruncSeries>, b: &Mat2<TruncSeries>) -> Mat2<TruncSeries> {
    let (ai, bi) = (a.adjugate(), b.adjugate());
    let mut acc = Mat2::identity_like(&a.a);
    for (g, e) in w.letters() {
        let m = match (g, e > 0) {
            (Gen::A, true) => a,
            (Gen::A, false) => &ai,
            (Gen::B, true) => b,
            (Gen::B, false) => &bi,
        };
        acc = &acc * m;
    }
    acc
}

/// The four deformation checks: the knot relator `W A = B W`, `det = 1`,
/// reduction to `C(1)`, `D(1, beta)`, and `tr A = x`.
pub fn verify_deformation(
    knot: TwoBridgeKnot,
    a: &Mat2<TruncSeries>,
    b: &Mat2<TruncSeries>,
    beta: &RingElement,
) -> DeformationReport {
    let mut report = DeformationReport::default();
    let w = evaluate_word_mat(&knot.schubert_word(), a, b);
    let relator = (&w * a).sub(&(b * &w));
    report.push_diff("relator", &mat_entries(&relator));

    let one = a.a.one_like();
    report.push_diff("determinant", &[&a.det() - &one, &b.det() - &one]);

    let precision = mat_entries(a).iter().chain(&mat_entries(b)).map(TruncSeries::precision).min().unwrap_or(0);
    let reduce = |s: &TruncSeries| s.constant_term().residue_or_self();
    let residual_ok = |m: &Mat2<TruncSeries>, expected: [RingElement; 4]| {
        m.entries().into_iter().zip(expected).all(|(e, x)| reduce(e) == x)
    };
    let k = beta.ring_handle();
    let passed = beta.ring() == reduce(&a.a).ring()
        && residual_ok(a, [k.one(), k.one(), k.zero(), k.one()])
        && residual_ok(b, [k.one(), k.zero(), beta.clone(), k.one()]);
    report.checks.push(CheckOutcome::new("residual", precision, (!passed).then_some(0)));

    let ring = make_ring(a.a.ring()).expect("series ring is valid");
    let x = TruncSeries::x(&ring, a.a.precision().max(a.d.precision())).expect("precision >= 1");
    report.push_diff("trace_a", &[&a.trace() - &x]);
    report
}

fn to_s(f: &TruncSeries, n_s: usize) -> Result<TruncSeries, SeriesError> {
    Ok(f.z_to_s()?.truncate(n_s))
}

/// Rebuild `A` and `B` as `U C(t) U^-1` and `U D(t, u) U^-1` in `O[[s]]`,
/// `s^2 = x - 2`, with `t + 1/t = x`, `t = 1 + s + O(s^2)`, modulo `s^n_s`.
pub fn ramified_check(u: &TruncSeries, n_s: usize) -> Result<DeformationReport, DeformError> {
    let ring = make_ring(u.ring())?;
    let half = ring.int(2).inverse()?;
    let (v, a, b) = deformation_matrices(u)?;
    let s = TruncSeries::variable(&ring, SeriesVar::S, n_s)?;
    let one = s.one_like();
    let x = &s.small_int_like(2) + &(&s * &s);
    // sqrt(x^2 - 4) = s sqrt(s^2 + 4) = 2 s sqrt(1 + s^2/4)
    let root4 = (&one + &(&s * &s).scale(&(half.clone() * half.clone()))?).sqrt()?.scale(&ring.int(2))?;
    let r = root4.shift(1).truncate(n_s);
    let t = (&x + &r).scale(&half)?;

    let mut report = DeformationReport::default();
    let t_inv = t.invert()?;
    report.push_diff("t_plus_inverse", &[&(&t + &t_inv) - &x]);

    let v_s = to_s(&v, n_s)?;
    let inv_sqrt_v = v_s.sqrt()?.invert()?;
    let u12 = &(&(&one - &v_s).divide_by_var_power(1)? * &root4.invert()?) * &inv_sqrt_v;
    let u21 = (&r * &inv_sqrt_v).scale(&half)?;
    let u22 = (&(&one + &v_s) * &inv_sqrt_v).scale(&half)?;
    let big_u = Mat2::new(inv_sqrt_v.clone(), u12, u21, u22);
    report.push_diff("det_u", &[&big_u.det() - &one]);
    report.push_diff("u_at_zero", &mat_entries(&big_u.sub(&Mat2::identity_like(&one))).iter().map(|e| e.truncate(1)).collect::<Vec<_>>());

    let u_inv = big_u.adjugate();
    let conj = |m: &Mat2<TruncSeries>| &(&big_u * m) * &u_inv;
    let a_s = Mat2::new(to_s(&a.mat().a, n_s)?, to_s(&a.mat().b, n_s)?, to_s(&a.mat().c, n_s)?, to_s(&a.mat().d, n_s)?);
    let b_s = Mat2::new(to_s(&b.mat().a, n_s)?, to_s(&b.mat().b, n_s)?, to_s(&b.mat().c, n_s)?, to_s(&b.mat().d, n_s)?);
    let u_s = to_s(u, n_s)?;
    let c_t = c_matrix(&t)?.into_mat();
    let d_t = d_matrix(&t, &u_s)?.into_mat();
    report.push_diff("conjugates_c", &mat_entries(&conj(&c_t).sub(&a_s)));
    report.push_diff("conjugates_d", &mat_entries(&conj(&d_t).sub(&b_s)));
    Ok(report)
}

/// Substitute `z = x0 - 2` into every entry. `x0 - 2` must lie in the
/// maximal ideal and vanish to the power of the series precision.
pub fn specialize(
    knot: TwoBridgeKnot,
    a: &SL2Matrix<TruncSeries>,
    b: &SL2Matrix<TruncSeries>,
    x0: &RingElement,
) -> Result<Representation, DeformError> {
    let spec = a.mat().a.ring();
    if x0.ring() != spec {
        return Err(RingError::RingMismatch { left: spec, right: x0.ring() }.into());
    }
    let eps = x0.clone() - x0.ring_handle().int(2);
    if !eps.in_maximal_ideal() {
        return Err(DeformError::NotInMaximalIdeal(eps.to_string()));
    }
    let precision = a.mat().entries().into_iter().chain(b.mat().entries()).map(TruncSeries::precision).min().unwrap_or(0);
    if !eps.pow(precision as u64).is_zero() {
        return Err(DeformError::InsufficientPrecision { precision });
    }
    let at = |m: &SL2Matrix<TruncSeries>| -> Result<SL2Matrix<RingElement>, DeformError> {
        let e = m.mat();
        Ok(SL2Matrix::from_entries(
            e.a.evaluate_at(&eps)?,
            e.b.evaluate_at(&eps)?,
            e.c.evaluate_at(&eps)?,
            e.d.evaluate_at(&eps)?,
        )?)
    };
    let rho = Representation::new(at(a)?, at(b)?)?;
    let w = rho.image(&knot.schubert_word());
    if w.mul(&rho.a) != rho.b.mul(&w) {
        return Err(RileyError::NotARepresentation("W A != B W after specialization".into()).into());
    }
    Ok(rho)
}

/// A computed deformation together with its verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationData {
    pub knot: TwoBridgeKnot,
    pub coeff_ring: RingSpec,
    pub beta: RingElement,
    pub precision: usize,
    pub u: TruncSeries,
    pub v: TruncSeries,
    pub a: SL2Matrix<TruncSeries>,
    pub b: SL2Matrix<TruncSeries>,
    pub verification: DeformationReport,
}

impl DeformationData {
    pub fn compute(knot: TwoBridgeKnot, beta: &RingElement, coeff_ring: RingSpec, n: usize) -> Result<Self, DeformError> {
        let u = hensel_u(knot, beta, coeff_ring, n)?;
        let (v, a, b) = deformation_matrices(&u)?;
        let verification = verify_deformation(knot, a.mat(), b.mat(), beta);
        Ok(DeformationData { knot, coeff_ring, beta: beta.clone(), precision: n, u, v, a, b, verification })
    }

    pub fn specialize(&self, x0: &RingElement) -> Result<Representation, DeformError> {
        specialize(self.knot, &self.a, &self.b, x0)
    }

    pub fn ramified_check(&self, n_s: usize) -> Result<DeformationReport, DeformError> {
        ramified_check(&self.u, n_s)
    }

    pub fn to_wire(&self) -> DeformationWire {
        let m = |s: &SL2Matrix<TruncSeries>| s.mat().entries().map(TruncSeries::to_wire);
        DeformationWire {
            knot: self.knot,
            ring: self.coeff_ring,
            beta: self.beta.to_string(),
            precision: self.precision,
            u: self.u.to_wire(),
            v: self.v.to_wire(),
            a: m(&self.a),
            b: m(&self.b),
            verification: self.verification.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_wire()).expect("serializable")
    }

    /// Parse and re-verify; the stored report is replaced by a fresh one.
    pub fn from_wire(w: &DeformationWire) -> Result<Self, DeformError> {
        let residue: Ring = make_ring(residue_ring(w.ring))?;
        let beta = residue.parse(&w.beta)?;
        let series = |s: &SeriesWire| -> Result<TruncSeries, DeformError> {
            let f = TruncSeries::from_wire(s)?;
            if f.ring() != w.ring || f.var() != SeriesVar::Z {
                return Err(DeformError::Json(format!("series over {} in {}", f.ring(), f.var())));
            }
            Ok(f)
        };
        let mat = |e: &[SeriesWire; 4]| -> Result<SL2Matrix<TruncSeries>, DeformError> {
            Ok(SL2Matrix::from_entries(series(&e[0])?, series(&e[1])?, series(&e[2])?, series(&e[3])?)?)
        };
        let (a, b) = (mat(&w.a)?, mat(&w.b)?);
        let verification = verify_deformation(w.knot, a.mat(), b.mat(), &beta);
        Ok(DeformationData {
            knot: w.knot,
            coeff_ring: w.ring,
            beta,
            precision: w.precision,
            u: series(&w.u)?,
            v: series(&w.v)?,
            a,
            b,
            verification,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, DeformError> {
        let w: DeformationWire = serde_json::from_str(text).map_err(|e| DeformError::Json(e.to_string()))?;
        Self::from_wire(&w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationWire {
    pub knot: TwoBridgeKnot,
    pub ring: RingSpec,
    pub beta: String,
    pub precision: usize,
    pub u: SeriesWire,
    pub v: SeriesWire,
    pub a: [SeriesWire; 4],
    pub b: [SeriesWire; 4],
    pub verification: DeformationReport,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvar::curve_model;
    use crate::pseudo::{check_axioms_c, check_axioms_p, trace_table, WordSet};
    use std::sync::Arc;

    fn knot(m: i64, n: i64) -> TwoBridgeKnot {
        TwoBridgeKnot::new(m, n).unwrap()
    }

    fn ring(s: &str) -> Ring {
        make_ring(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn trefoil_u_is_three_minus_x_squared() {
        let q = ring("rational");
        let u = hensel_u(knot(3, 1), &q.int(-1), RingSpec::Rational, 6).unwrap();
        assert_eq!(u, TruncSeries::from_ints(&q, SeriesVar::Z, &[-1, -4, -1, 0, 0, 0]).unwrap());
    }

    #[test]
    fn figure_eight_u_over_z_mod_7_4() {
        let z = ring("padic:7:4");
        let f7 = ring("prime:7");
        let u = hensel_u(knot(5, 3), &f7.int(3), z.spec(), 8).unwrap();
        assert_eq!(u.constant_term().residue().unwrap(), f7.int(3));
        let data = riley_data(knot(5, 3)).unwrap();
        let x = TruncSeries::x(&z, 8).unwrap();
        assert!(data.big_phi.eval(&x, &u).is_zero());
        // (2u - 5 + x^2)^2 = (x^2 - 1)(x^2 - 5)
        let x2 = &x * &x;
        let lhs = &(&u.scale(&z.int(2)).unwrap() - &x.small_int_like(5)) + &x2;
        let rhs = &(&x2 - &x.small_int_like(1)) * &(&x2 - &x.small_int_like(5));
        assert_eq!(&lhs * &lhs, rhs);
    }

    #[test]
    fn boundary_errors() {
        let f7 = ring("prime:7");
        assert_eq!(hensel_u(knot(3, 1), &f7.int(0), f7.spec(), 4), Err(DeformError::BetaZero));
        let f3 = ring("prime:3");
        // disc Phi(2,u) = -3 for the figure-eight
        assert!(matches!(
            hensel_u(knot(5, 3), &f3.int(1), ring("padic:3:2").spec(), 4),
            Err(DeformError::BadCharacteristic { p: 3, .. })
        ));
        assert!(matches!(
            hensel_u(knot(3, 1), &f7.int(2), f7.spec(), 4),
            Err(DeformError::Series(SeriesError::NotAResidualRoot))
        ));
    }

    #[test]
    fn trefoil_v_and_residual_matrices() {
        let q = ring("rational");
        let u = hensel_u(knot(3, 1), &q.int(-1), RingSpec::Rational, 10).unwrap();
        let (v, a, b) = deformation_matrices(&u).unwrap();
        // v^2 (x^2 - 3) = 1
        let x = TruncSeries::x(&q, 10).unwrap();
        assert!((&(&v * &v) * &(&(&x * &x) - &x.small_int_like(3))).is_one_elem());
        let at0 = |m: &SL2Matrix<TruncSeries>| m.mat().map(|e| e.constant_term().clone());
        assert_eq!(at0(&a), Mat2::new(q.int(1), q.int(1), q.int(0), q.int(1)));
        assert_eq!(at0(&b), Mat2::new(q.int(1), q.int(0), q.int(-1), q.int(1)));
        assert_eq!(b.mat().b.precision(), 9);
    }

    #[test]
    fn verification_passes_and_catches_corruption() {
        let q = ring("rational");
        let data = DeformationData::compute(knot(3, 1), &q.int(-1), RingSpec::Rational, 16).unwrap();
        assert!(data.verification.passed(), "{}", data.verification);
        assert!(data.verification.min_precision() >= 15);

        let mut bad = data.b.mat().clone();
        let mut coeffs = bad.c.coeffs().to_vec();
        coeffs[5] = coeffs[5].clone() + q.one();
        bad.c = TruncSeries::from_coeffs(q.spec(), SeriesVar::Z, coeffs).unwrap();
        let report = verify_deformation(knot(3, 1), data.a.mat(), &bad, &q.int(-1));
        let relator = report.get("relator").unwrap();
        assert!(!relator.passed());
        assert_eq!(relator.failing_index, Some(5));
    }

    #[test]
    fn figure_eight_over_z_mod_7_4() {
        let f7 = ring("prime:7");
        for beta in [3, 5] {
            let data = DeformationData::compute(knot(5, 3), &f7.int(beta), "padic:7:4".parse().unwrap(), 8).unwrap();
            assert!(data.verification.passed(), "{}", data.verification);
            assert!(data.verification.min_precision() >= 7);
        }
    }

    #[test]
    fn ramified_conjugation() {
        let q = ring("rational");
        let u = hensel_u(knot(3, 1), &q.int(-1), RingSpec::Rational, 8).unwrap();
        let report = ramified_check(&u, 12).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.get("t_plus_inverse").unwrap().precision, 12);
        assert!(report.get("conjugates_d").unwrap().precision >= 11);
    }

    #[test]
    fn specialization_over_hbar() {
        let f5 = ring("prime:5");
        let o = ring("hbar:5:3");
        let data = DeformationData::compute(knot(3, 1), &f5.int(-1), o.spec(), 4).unwrap();
        let h = o.uniformizer().unwrap();
        let one_h = o.one() + h.clone();
        let x0 = one_h.clone() + one_h.inverse().unwrap();
        assert_eq!(x0, o.int(2) + h.clone() * h.clone());
        let rho = data.specialize(&x0).unwrap();
        let tbl = trace_table(&rho, Arc::new(WordSet::up_to(2)));
        assert!(check_axioms_p(&tbl).passed());
        assert!(check_axioms_c(&tbl).passed());
        let residual = crate::riley::riley_rep(knot(3, 1), &f5.one(), &f5.int(-1)).unwrap();
        let residual_tbl = trace_table(&residual, tbl.words().clone());
        for (got, want) in tbl.values().iter().zip(residual_tbl.values()) {
            assert_eq!(&got.residue().unwrap(), want);
        }

        let at2 = data.specialize(&o.int(2)).unwrap();
        assert_eq!(at2.a.mat().b, o.one());
        assert_eq!(data.specialize(&o.int(3)).unwrap_err(), DeformError::NotInMaximalIdeal("1".into()));
    }

    #[test]
    fn character_lies_on_the_curve() {
        let f7 = ring("prime:7");
        let data = DeformationData::compute(knot(5, 3), &f7.int(3), "padic:7:3".parse().unwrap(), 6).unwrap();
        let ab = data.a.mul(&data.b);
        let curve = curve_model(knot(5, 3)).unwrap();
        let value = curve.irreducible_factor.eval(&data.a.trace(), &ab.trace());
        assert!(value.is_zero());
        assert_eq!(value.precision(), 5);
    }

    #[test]
    fn json_round_trip_reverifies() {
        let q = ring("rational");
        let data = DeformationData::compute(knot(3, 1), &q.int(-1), RingSpec::Rational, 6).unwrap();
        let back = DeformationData::from_json(&data.to_json()).unwrap();
        assert_eq!(back, data);
    }
}
