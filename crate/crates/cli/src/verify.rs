//! The `verify-all` invariant suite. Each knot is processed independently
//! (in parallel); rows come back in `(m, n, p)` order.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use knotdeform::fuzz::random_representation;
use knotdeform::{
    check_axioms_c, check_axioms_p, curve_model, make_ring, riley_data, trace_table, DeformationData,
    FreeWord, RileyData, RingElement, RingSpec, TraceReducer, TruncSeries, TwoBridgeKnot, WordSet,
};

use crate::{residual_point_on_curve, residual_table};

/// Truncation exponent of `Z/p^M` used for the deformation checks.
pub const DEFORM_TRUNCATION: u32 = 3;
/// `z`-precision used for the deformation checks.
pub const DEFORM_PRECISION: usize = 6;
/// Random representations per row when a seed is given.
pub const RANDOM_REPS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_m: i64,
    pub primes: Vec<u64>,
    pub seed: Option<u64>,
}

/// `None` means the check did not apply.
pub type Cell = Option<bool>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRow {
    pub knot: TwoBridgeKnot,
    pub prime: u64,
    pub note: Option<String>,
    pub roots: usize,
    /// Leading coefficient of `Phi(2,u)` is a unit and its discriminant is odd.
    pub prop: Cell,
    /// `Phi(alpha + 1/alpha, beta) = 0` iff `W C = D W` on all of `F_p^x x F_p`.
    pub riley: Cell,
    /// Residual characters lie on the irreducible component.
    pub curve: Cell,
    /// Deformations over `Z/p^M` verify and their characters stay on the curve.
    pub deform: Cell,
    /// Residual and specialized trace tables satisfy both axiom families.
    pub pseudo: Cell,
    /// Trace reduction of the knot words matches random matrices.
    pub trace: Cell,
}

impl VerifyRow {
    fn cells(&self) -> [Cell; 6] {
        [self.prop, self.riley, self.curve, self.deform, self.pseudo, self.trace]
    }

    pub fn passed(&self) -> bool {
        self.cells().iter().all(|c| *c != Some(false))
    }

    pub fn checks(&self) -> usize {
        self.cells().iter().filter(|c| c.is_some()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub rows: Vec<VerifyRow>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(VerifyRow::passed)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().flat_map(|r| r.cells()).filter(|c| *c == Some(false)).count()
    }

    pub fn render(&self, color: bool) -> String {
        let mut out = String::new();
        let paint = |ok: bool| -> String {
            match (ok, color) {
                (true, true) => "\x1b[32mPASS\x1b[0m".into(),
                (false, true) => "\x1b[31mFAIL\x1b[0m".into(),
                (true, false) => "PASS".into(),
                (false, false) => "FAIL".into(),
            }
        };
        let cell = |c: Cell| match c {
            None => "-",
            Some(true) => "ok",
            Some(false) => "FAIL",
        };
        let _ = writeln!(
            out,
            "{:<10} {:>3} {:>5}  {:<5} {:<5} {:<5} {:<6} {:<6} {:<5} status",
            "knot", "p", "roots", "prop", "riley", "curve", "deform", "pseudo", "trace"
        );
        for r in &self.rows {
            let _ = write!(
                out,
                "{:<10} {:>3} {:>5}  {:<5} {:<5} {:<5} {:<6} {:<6} {:<5} {}",
                r.knot.to_string(),
                r.prime,
                r.roots,
                cell(r.prop),
                cell(r.riley),
                cell(r.curve),
                cell(r.deform),
                cell(r.pseudo),
                cell(r.trace),
                paint(r.passed())
            );
            if let Some(note) = &r.note {
                let _ = write!(out, "  ({note})");
            }
            out.push('\n');
        }
        let checks: usize = self.rows.iter().map(VerifyRow::checks).sum();
        let _ = writeln!(out, "verify-all: {} rows, {} checks, {} failures", self.rows.len(), checks, self.failures());
        out
    }
}

pub fn verify_all(opts: &VerifyOptions) -> VerifySummary {
    let knots = TwoBridgeKnot::all_up_to(opts.max_m);
    let rows = knots.par_iter().flat_map_iter(|&k| verify_knot(k, opts)).collect();
    VerifySummary { rows }
}

fn prop_holds(data: &RileyData) -> bool {
    let lead = data.phi2.leading_coeff();
    let unit = lead.magnitude() == &1u32.into();
    let odd = data.discriminant().map(|d| d.bit(0)).unwrap_or(false);
    unit && odd
}

fn verify_knot(knot: TwoBridgeKnot, opts: &VerifyOptions) -> Vec<VerifyRow> {
    let data = match riley_data(knot) {
        Ok(d) => d,
        Err(e) => {
            return opts
                .primes
                .iter()
                .map(|&p| VerifyRow {
                    knot,
                    prime: p,
                    note: Some(e.to_string()),
                    roots: 0,
                    prop: Some(false),
                    riley: None,
                    curve: None,
                    deform: None,
                    pseudo: None,
                    trace: None,
                })
                .collect();
        }
    };
    let prop = Some(prop_holds(&data));
    opts.primes.iter().map(|&p| verify_pair(&data, p, prop, opts.seed)).collect()
}

fn verify_pair(data: &RileyData, p: u64, prop: Cell, seed: Option<u64>) -> VerifyRow {
    let knot = data.knot;
    let mut row =
        VerifyRow { knot, prime: p, note: None, roots: 0, prop, riley: None, curve: None, deform: None, pseudo: None, trace: None };
    let roots = match data.roots_mod(p) {
        Ok(r) => r,
        Err(e) => {
            row.note = Some(e.to_string());
            return row;
        }
    };
    row.roots = roots.len();
    let field = make_ring(RingSpec::PrimeField(p)).expect("validated prime");

    row.riley = Some(brute_force(data, &field));
    if !roots.is_empty() {
        row.curve = Some(roots.iter().all(|b| residual_point_on_curve(knot, b).unwrap_or(false)));
        row.deform = Some(roots.iter().all(|b| deformation_ok(knot, b, p)));
        row.pseudo = Some(roots.iter().all(|b| pseudo_ok(knot, b, p)));
    }
    if let Some(seed) = seed {
        let stream = seed ^ ((knot.m() as u64) << 40) ^ (((knot.n() + knot.m()) as u64) << 20) ^ p;
        row.trace = Some(trace_oracle(knot, &field, stream));
    }
    row
}

fn brute_force(data: &RileyData, field: &knotdeform::Ring) -> bool {
    let elements: Vec<RingElement> = field.elements().expect("finite field").collect();
    elements.iter().filter(|a| !a.is_zero()).all(|alpha| {
        elements.iter().all(|beta| {
            let vanishes = data.phi_at(alpha, beta).map(|v| v.is_zero());
            let relator = data.relator_holds(alpha, beta);
            matches!((vanishes, relator), (Ok(a), Ok(b)) if a == b)
        })
    })
}

fn deformation_ok(knot: TwoBridgeKnot, beta: &RingElement, p: u64) -> bool {
    let ring = RingSpec::PadicTrunc(p, DEFORM_TRUNCATION);
    let Ok(d) = DeformationData::compute(knot, beta, ring, DEFORM_PRECISION) else {
        return false;
    };
    if !d.verification.passed() {
        return false;
    }
    let Ok(curve) = curve_model(knot) else { return false };
    let ab = d.a.mul(&d.b);
    let value: TruncSeries = curve.irreducible_factor.eval(&d.a.trace(), &ab.trace());
    value.is_zero() && value.precision() + 1 >= DEFORM_PRECISION
}

fn pseudo_ok(knot: TwoBridgeKnot, beta: &RingElement, p: u64) -> bool {
    let words = Arc::new(WordSet::up_to(2));
    let Ok(residual) = residual_table(knot, beta, words.clone()) else { return false };
    if !(check_axioms_p(&residual).passed() && check_axioms_c(&residual).passed()) {
        return false;
    }
    let ring = RingSpec::PadicTrunc(p, DEFORM_TRUNCATION);
    let Ok(d) = DeformationData::compute(knot, beta, ring, DEFORM_PRECISION) else {
        return false;
    };
    let o = make_ring(ring).expect("valid ring");
    let Ok(rho) = d.specialize(&o.int(2 + p as i64)) else { return false };
    let tbl = trace_table(&rho, words);
    check_axioms_p(&tbl).passed()
        && check_axioms_c(&tbl).passed()
        && tbl.values().iter().zip(residual.values()).all(|(t, r)| t.residue().as_ref() == Ok(r))
}

fn trace_oracle(knot: TwoBridgeKnot, field: &knotdeform::Ring, stream: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let w = knot.schubert_word();
    let relator = w.multiply(&FreeWord::a()).multiply(&w.inverse()).multiply(&FreeWord::b().inverse());
    let mut reducer = TraceReducer::new();
    let polys = [reducer.reduce(&w), reducer.reduce(&relator)];
    (0..RANDOM_REPS).all(|_| {
        let rho = random_representation(field, &mut rng);
        let (x, z, y) = rho.character();
        [&w, &relator].iter().zip(&polys).all(|(word, poly)| poly.eval(&x, &z, &y) == rho.trace(word))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let summary = verify_all(&VerifyOptions { max_m: 7, primes: vec![3, 5, 7], seed: Some(1) });
        assert!(summary.passed(), "{}", summary.render(false));
        assert_eq!(summary.rows.len(), TwoBridgeKnot::all_up_to(7).len() * 3);
    }

    #[test]
    fn figure_eight_skips_three() {
        let summary = verify_all(&VerifyOptions { max_m: 5, primes: vec![3], seed: None });
        let row = summary.rows.iter().find(|r| r.knot == TwoBridgeKnot::new(5, 3).unwrap()).unwrap();
        assert!(row.note.as_deref().unwrap().contains("divides"));
        assert_eq!(row.riley, None);
    }
}
