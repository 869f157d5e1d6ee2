//! Random representations and tables for property tests and the pseudo-rep
//! equivalence harness. All draws go through a caller-supplied RNG so runs
//! are reproducible from a seed.

use std::sync::Arc;

use rand::Rng;

use crate::matrix::SL2Matrix;
use crate::pseudo::{PseudoRepTable, WordSet};
use crate::riley::Representation;
use crate::ring::{make_ring, BaseField, Ring, RingElement, RingSpec};

/// Bound on integer draws for rings without a finite element list.
pub const RATIONAL_RANGE: i64 = 5;

/// A uniform element of a finite ring, or an integer in `[-5, 5]` for `Q`
/// and coefficientwise for `Q[h]/h^M`.
pub fn random_element<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> RingElement {
    match ring.spec() {
        RingSpec::Rational => ring.int(rng.gen_range(-RATIONAL_RANGE..=RATIONAL_RANGE)),
        RingSpec::HbarTrunc(base, m) => {
            let b = make_ring(base.spec()).expect("valid base");
            let coeffs: Vec<_> = (0..m).map(|_| random_element(&b, rng)).collect();
            ring.hbar_series(&coeffs).expect("coefficients in the base field")
        }
        spec => {
            let order = spec.order().expect("finite ring") as i64;
            ring.int(rng.gen_range(0..order))
        }
    }
}

fn random_unit<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> RingElement {
    loop {
        let e = random_element(ring, rng);
        if e.is_unit() {
            return e;
        }
    }
}

/// A random determinant-one matrix: draw four entries until the determinant
/// is a unit, then divide the first column by it.
pub fn random_sl2<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> SL2Matrix<RingElement> {
    loop {
        let [a, b, c, d] = [(); 4].map(|_| random_element(ring, rng));
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        let Ok(inv) = det.inverse() else { continue };
        return SL2Matrix::from_entries(a * inv.clone(), b, c * inv, d).expect("determinant scaled to one");
    }
}

pub fn random_representation<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> Representation {
    Representation::new(random_sl2(ring, rng), random_sl2(ring, rng)).expect("same ring")
}

/// A table with `T(1) = 2` and independent random values elsewhere.
pub fn random_table<R: Rng + ?Sized>(ring: &Ring, words: Arc<WordSet>, rng: &mut R) -> PseudoRepTable {
    let values = (0..words.len()).map(|i| if i == 0 { ring.int(2) } else { random_element(ring, rng) }).collect();
    PseudoRepTable::new(words, values).expect("one value per word")
}

/// Add a random unit to one randomly chosen entry.
pub fn mutate_entry<R: Rng + ?Sized>(tbl: &PseudoRepTable, rng: &mut R) -> PseudoRepTable {
    let ring = make_ring(tbl.ring()).expect("valid ring");
    let i = rng.gen_range(0..tbl.words().len());
    let mut values = tbl.values().to_vec();
    values[i] = values[i].clone() + random_unit(&ring, rng);
    PseudoRepTable::new(tbl.words().clone(), values).expect("same shape")
}

/// The coefficient rings the property tests sweep.
pub fn test_rings() -> Vec<RingSpec> {
    let mut out: Vec<RingSpec> = [3, 5, 7, 11].map(RingSpec::PrimeField).to_vec();
    out.push(RingSpec::Rational);
    out.push(RingSpec::HbarTrunc(BaseField::Prime(5), 3));
    out
}
