//! Pseudo-SL2-representations on a finite window of the free group.
//!
//! A table assigns a ring element to every word of a [`WordSet`]. The axiom
//! checkers evaluate an instance of an axiom only when every word it
//! mentions lies in the window, and report how many instances were covered.
//!
//! (P1) `T(1) = 2`
//! (P2) `T(g1 g2) = T(g2 g1)`
//! (P3) `T(g1)T(g2)T(g3) + T(g1g2g3) + T(g1g3g2) - T(g1g2)T(g3) - T(g2g3)T(g1) - T(g1g3)T(g2) = 0`
//! (P4) `T(g)^2 - T(g^2) = 2`
//! (C1) `T(1) = 2`
//! (C2) `T(g1)T(g2) = T(g1 g2) + T(g1^-1 g2)`

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::riley::Representation;
use crate::ring::{make_ring, teichmuller_lift, Ring, RingElement, RingError, RingSpec};
use crate::word::{FreeWord, WordParseError};

/// Witnesses kept per axiom in a report.
pub const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PseudoError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Word(#[from] WordParseError),
    #[error("coefficient ring {0} is not an integral domain")]
    NotIntegralDomain(RingSpec),
    #[error("no value for word {0}")]
    MissingEntry(String),
    #[error("word {0} listed twice")]
    DuplicateEntry(String),
    #[error("invalid table JSON: {0}")]
    Json(String),
}

/// A finite set of reduced words containing the empty word.
#[derive(Debug)]
pub struct WordSet {
    words: Vec<FreeWord>,
    index: HashMap<FreeWord, usize>,
    products: OnceLock<Vec<Vec<Option<usize>>>>,
    inverses: OnceLock<Vec<Option<usize>>>,
}

impl WordSet {
    pub fn new(words: impl IntoIterator<Item = FreeWord>) -> Self {
        let mut list = vec![FreeWord::empty()];
        let mut index = HashMap::from([(FreeWord::empty(), 0)]);
        for w in words {
            if !index.contains_key(&w) {
                index.insert(w.clone(), list.len());
                list.push(w);
            }
        }
        WordSet { words: list, index, products: OnceLock::new(), inverses: OnceLock::new() }
    }

    /// All reduced words with at most `max_len` letters.
    pub fn up_to(max_len: usize) -> Self {
        Self::new(FreeWord::all_up_to(max_len))
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[FreeWord] {
        &self.words
    }

    pub fn contains(&self, w: &FreeWord) -> bool {
        self.index.contains_key(w)
    }

    pub fn index_of(&self, w: &FreeWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// `product(i, j)` is the index of `w_i w_j`, if it lies in the set.
    fn products(&self) -> &Vec<Vec<Option<usize>>> {
        self.products.get_or_init(|| {
            self.words
                .iter()
                .map(|u| self.words.iter().map(|v| self.index_of(&u.multiply(v))).collect())
                .collect()
        })
    }

    fn inverses(&self) -> &Vec<Option<usize>> {
        self.inverses.get_or_init(|| self.words.iter().map(|w| self.index_of(&w.inverse())).collect())
    }

    fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.products()[i][j]
    }
}

/// A map from the words of a [`WordSet`] to a coefficient ring.
#[derive(Debug, Clone)]
pub struct PseudoRepTable {
    ring: RingSpec,
    words: Arc<WordSet>,
    values: Vec<RingElement>,
}

impl PseudoRepTable {
    pub fn new(words: Arc<WordSet>, values: Vec<RingElement>) -> Result<Self, PseudoError> {
        let ring = values.first().map(RingElement::ring).ok_or_else(|| PseudoError::MissingEntry("1".into()))?;
        if values.len() != words.len() {
            let missing = words.words().get(values.len()).map(ToString::to_string).unwrap_or_default();
            return Err(PseudoError::MissingEntry(missing));
        }
        if let Some(bad) = values.iter().find(|v| v.ring() != ring) {
            return Err(RingError::RingMismatch { left: ring, right: bad.ring() }.into());
        }
        Ok(PseudoRepTable { ring, words, values })
    }

    pub fn constant(words: Arc<WordSet>, value: RingElement) -> Self {
        let values = vec![value.clone(); words.len()];
        PseudoRepTable { ring: value.ring(), words, values }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn words(&self) -> &Arc<WordSet> {
        &self.words
    }

    pub fn values(&self) -> &[RingElement] {
        &self.values
    }

    pub fn get(&self, w: &FreeWord) -> Option<&RingElement> {
        self.words.index_of(w).map(|i| &self.values[i])
    }

    pub fn set(&mut self, w: &FreeWord, value: RingElement) -> Result<(), PseudoError> {
        let i = self.words.index_of(w).ok_or_else(|| PseudoError::MissingEntry(w.to_string()))?;
        if value.ring() != self.ring {
            return Err(RingError::RingMismatch { left: self.ring, right: value.ring() }.into());
        }
        self.values[i] = value;
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&FreeWord, &RingElement)> {
        self.words.words().iter().zip(&self.values)
    }

    pub fn to_wire(&self) -> TableWire {
        TableWire {
            ring: self.ring,
            entries: self.entries().map(|(w, v)| (w.to_string(), v.to_string())).collect(),
        }
    }

    pub fn from_wire(wire: &TableWire) -> Result<Self, PseudoError> {
        let ring = make_ring(wire.ring)?;
        let mut parsed: Vec<(FreeWord, RingElement)> = Vec::with_capacity(wire.entries.len());
        let mut seen = HashMap::new();
        for (w, v) in &wire.entries {
            let word: FreeWord = w.parse()?;
            if seen.insert(word.clone(), ()).is_some() {
                return Err(PseudoError::DuplicateEntry(word.to_string()));
            }
            parsed.push((word, ring.parse(v)?));
        }
        let words = Arc::new(WordSet::new(parsed.iter().map(|(w, _)| w.clone())));
        let lookup: HashMap<&FreeWord, &RingElement> = parsed.iter().map(|(w, v)| (w, v)).collect();
        let values = words
            .words()
            .iter()
            .map(|w| lookup.get(w).map(|v| (*v).clone()).ok_or_else(|| PseudoError::MissingEntry(w.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PseudoRepTable { ring: wire.ring, words, values })
    }

    pub fn from_json(text: &str) -> Result<Self, PseudoError> {
        let wire: TableWire = serde_json::from_str(text).map_err(|e| PseudoError::Json(e.to_string()))?;
        Self::from_wire(&wire)
    }
}

/// JSON form `{"ring": spec, "entries": [["word", "value"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableWire {
    pub ring: RingSpec,
    pub entries: Vec<(String, String)>,
}

/// `T(w) = tr rho(w)` on every word of `words`.
pub fn trace_table(rho: &Representation, words: Arc<WordSet>) -> PseudoRepTable {
    // evaluate prefixes once; every reduced word extends a shorter one
    let mut cache: HashMap<FreeWord, crate::matrix::SL2Matrix<RingElement>> = HashMap::new();
    let values = words
        .words()
        .iter()
        .map(|w| {
            let m = image_cached(rho, w, &mut cache);
            m.trace()
        })
        .collect();
    PseudoRepTable { ring: rho.ring, words, values }
}

fn image_cached(
    rho: &Representation,
    w: &FreeWord,
    cache: &mut HashMap<FreeWord, crate::matrix::SL2Matrix<RingElement>>,
) -> crate::matrix::SL2Matrix<RingElement> {
    if let Some(m) = cache.get(w) {
        return m.clone();
    }
    let letters = w.letters();
    let m = match letters.split_last() {
        None => rho.image(w),
        Some((&last, init)) => {
            let prefix = FreeWord::from_syllables(init.iter().copied());
            let head = image_cached(rho, &prefix, cache);
            head.mul(&rho.image(&FreeWord::from_syllables([last])))
        }
    };
    cache.insert(w.clone(), m.clone());
    m
}

/// Instances checked and violated for one axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub checked: usize,
    pub violated: usize,
    pub witnesses: Vec<Vec<String>>,
}

impl AxiomCheck {
    fn new(axiom: &'static str) -> Self {
        AxiomCheck { axiom, checked: 0, violated: 0, witnesses: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<String>) {
        self.checked += 1;
        if !ok {
            self.violated += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violated == 0)
    }

    /// Every axiom had at least one covered instance.
    pub fn fully_covered(&self) -> bool {
        self.checks.iter().all(|c| c.checked > 0)
    }

    pub fn checked(&self) -> usize {
        self.checks.iter().map(|c| c.checked).sum()
    }

    pub fn violated(&self) -> usize {
        self.checks.iter().map(|c| c.violated).sum()
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}: {} checked, {} violated", c.axiom, c.checked, c.violated)?;
            for w in &c.witnesses {
                writeln!(f, "  witness ({})", w.join(", "))?;
            }
        }
        Ok(())
    }
}

fn names(tbl: &PseudoRepTable, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| tbl.words.words()[i].to_string()).collect()
}

pub fn check_axioms_p(tbl: &PseudoRepTable) -> AxiomReport {
    let ws = &tbl.words;
    let t = &tbl.values;
    let n = ws.len();
    let two = t[0].ring_handle().int(2);
    let mut p1 = AxiomCheck::new("P1");
    let mut p2 = AxiomCheck::new("P2");
    let mut p3 = AxiomCheck::new("P3");
    let mut p4 = AxiomCheck::new("P4");
    p1.record(t[0] == two, || vec!["1".into()]);
    for i in 0..n {
        for j in 0..n {
            if let (Some(ij), Some(ji)) = (ws.product(i, j), ws.product(j, i)) {
                p2.record(t[ij] == t[ji], || names(tbl, &[i, j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let Some(ij) = ws.product(i, j) else { continue };
            for l in 0..n {
                let (Some(il), Some(jl), Some(ijl)) = (ws.product(i, l), ws.product(j, l), ws.product(ij, l)) else {
                    continue;
                };
                let Some(ilj) = ws.product(il, j) else { continue };
                let lhs = t[i].clone() * t[j].clone() * t[l].clone() + t[ijl].clone() + t[ilj].clone();
                let rhs = t[ij].clone() * t[l].clone() + t[jl].clone() * t[i].clone() + t[il].clone() * t[j].clone();
                p3.record(lhs == rhs, || names(tbl, &[i, j, l]));
            }
        }
    }
    for i in 0..n {
        if let Some(ii) = ws.product(i, i) {
            p4.record(t[i].clone() * t[i].clone() - t[ii].clone() == two, || names(tbl, &[i]));
        }
    }
    AxiomReport { checks: vec![p1, p2, p3, p4] }
}

pub fn check_axioms_c(tbl: &PseudoRepTable) -> AxiomReport {
    let ws = &tbl.words;
    let t = &tbl.values;
    let n = ws.len();
    let two = t[0].ring_handle().int(2);
    let mut c1 = AxiomCheck::new("C1");
    let mut c2 = AxiomCheck::new("C2");
    c1.record(t[0] == two, || vec!["1".into()]);
    let inv = ws.inverses();
    for i in 0..n {
        let Some(ii) = inv[i] else { continue };
        for j in 0..n {
            if let (Some(ij), Some(iij)) = (ws.product(i, j), ws.product(ii, j)) {
                c2.record(t[i].clone() * t[j].clone() == t[ij].clone() + t[iij].clone(), || names(tbl, &[i, j]));
            }
        }
    }
    AxiomReport { checks: vec![c1, c2] }
}

/// Both axiom families on the same table, with whether the verdicts agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub p: AxiomReport,
    pub c: AxiomReport,
    pub fully_covered: bool,
    pub agree: bool,
}

/// Run both checkers; only meaningful over integral domains of odd
/// characteristic (`Q`, `F_p`).
pub fn equivalence_harness(tbl: &PseudoRepTable) -> Result<Verdict, PseudoError> {
    if !tbl.ring.is_domain() {
        return Err(PseudoError::NotIntegralDomain(tbl.ring));
    }
    let p = check_axioms_p(tbl);
    let c = check_axioms_c(tbl);
    let fully_covered = p.fully_covered() && c.fully_covered();
    let agree = p.passed() == c.passed();
    Ok(Verdict { p, c, fully_covered, agree })
}

/// Polynomial in the variables `X_w` (indexed by word) with coefficients in
/// a residue ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPoly {
    ring: RingSpec,
    terms: BTreeMap<Vec<(usize, u32)>, RingElement>,
}

impl WordPoly {
    fn constant(c: RingElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c.clone());
        }
        WordPoly { ring: c.ring(), terms }
    }

    fn var(ring: &Ring, i: usize) -> Self {
        WordPoly { ring: ring.spec(), terms: BTreeMap::from([(vec![(i, 1)], ring.one())]) }
    }

    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let sum = terms.get(m).cloned().map_or_else(|| c.clone(), |v| v + c.clone());
            if sum.is_zero() {
                terms.remove(m);
            } else {
                terms.insert(m.clone(), sum);
            }
        }
        WordPoly { ring: self.ring, terms }
    }

    fn neg(&self) -> Self {
        WordPoly { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = WordPoly { ring: self.ring, terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut exps: BTreeMap<usize, u32> = a.iter().copied().collect();
                for &(v, e) in b {
                    *exps.entry(v).or_default() += e;
                }
                let m = WordPoly { ring: self.ring, terms: BTreeMap::from([(exps.into_iter().collect(), x.clone() * y.clone())]) };
                out = out.add(&m);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial given as `(word index, exponent)` pairs
    /// sorted by index.
    pub fn coeff(&self, monomial: &[(usize, u32)]) -> Option<&RingElement> {
        self.terms.get(monomial)
    }

    /// Evaluate with `X_w` replaced by `value(w)`.
    pub fn eval(&self, value: impl Fn(usize) -> RingElement) -> RingElement {
        let ring = make_ring(self.ring).expect("valid ring");
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m {
                term = term * value(v).pow(e as u64);
            }
            acc = acc + term;
        }
        acc
    }

    pub fn text(&self, words: &WordSet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .map(|&(v, e)| {
                        let name = format!("X[{}]", words.words()[v]);
                        if e == 1 { name } else { format!("{name}^{e}") }
                    })
                    .collect();
                match (vars.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => vars.join("*"),
                    (false, false) => format!("{}*{}", c, vars.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationKind {
    P1,
    P2,
    P3,
    P4,
}

/// One generator of the truncated relation ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationGenerator {
    pub kind: RelationKind,
    pub witnesses: Vec<FreeWord>,
    pub polynomial: WordPoly,
}

/// Generators of types (P1)-(P4) in the variables `X_w` over `Z/p^M`,
/// with `T_w = X_w + omega(Tbar(w))` and `omega` the Teichmuller lift.
/// Instances whose words leave the window are skipped, as are generators
/// that vanish identically.
pub fn relation_ideal_truncated(tbar: &PseudoRepTable, m: u32) -> Result<Vec<RelationGenerator>, PseudoError> {
    let RingSpec::PrimeField(p) = tbar.ring else {
        return Err(RingError::RingMismatch { left: tbar.ring, right: RingSpec::PrimeField(0) }.into());
    };
    let ring = make_ring(RingSpec::PadicTrunc(p, m))?;
    let ws = &tbar.words;
    let n = ws.len();
    let tw: Vec<WordPoly> = (0..n)
        .map(|i| Ok(WordPoly::var(&ring, i).add(&WordPoly::constant(teichmuller_lift(&tbar.values[i], m)?))))
        .collect::<Result<_, RingError>>()?;
    let two = WordPoly::constant(ring.int(2));
    let word = |i: usize| ws.words()[i].clone();
    let mut out = Vec::new();
    let mut emit = |kind, witnesses: Vec<FreeWord>, polynomial: WordPoly| {
        if !polynomial.is_zero() {
            out.push(RelationGenerator { kind, witnesses, polynomial });
        }
    };
    emit(RelationKind::P1, vec![word(0)], tw[0].sub(&two));
    for i in 0..n {
        for j in 0..n {
            if let (Some(ij), Some(ji)) = (ws.product(i, j), ws.product(j, i)) {
                emit(RelationKind::P2, vec![word(i), word(j)], tw[ij].sub(&tw[ji]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let Some(ij) = ws.product(i, j) else { continue };
            for l in 0..n {
                let (Some(il), Some(jl), Some(ijl)) = (ws.product(i, l), ws.product(j, l), ws.product(ij, l)) else {
                    continue;
                };
                let Some(ilj) = ws.product(il, j) else { continue };
                let poly = tw[i]
                    .mul(&tw[j])
                    .mul(&tw[l])
                    .add(&tw[ijl])
                    .add(&tw[ilj])
                    .sub(&tw[ij].mul(&tw[l]))
                    .sub(&tw[jl].mul(&tw[i]))
                    .sub(&tw[il].mul(&tw[j]));
                emit(RelationKind::P3, vec![word(i), word(j), word(l)], poly);
            }
        }
    }
    for i in 0..n {
        if let Some(ii) = ws.product(i, i) {
            emit(RelationKind::P4, vec![word(i)], tw[i].mul(&tw[i]).sub(&tw[ii]).sub(&two));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::TwoBridgeKnot;
    use crate::matrix::SL2Matrix;
    use crate::riley::riley_rep;

    fn field(p: u64) -> Ring {
        make_ring(RingSpec::PrimeField(p)).unwrap()
    }

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    fn rep(r: &Ring, a: [i64; 4], b: [i64; 4]) -> Representation {
        let m = |e: [i64; 4]| SL2Matrix::from_entries(r.int(e[0]), r.int(e[1]), r.int(e[2]), r.int(e[3])).unwrap();
        Representation::new(m(a), m(b)).unwrap()
    }

    #[test]
    fn constant_two_passes_everything() {
        let f7 = field(7);
        let words = Arc::new(WordSet::up_to(2));
        let tbl = PseudoRepTable::constant(words, f7.int(2));
        let p = check_axioms_p(&tbl);
        let c = check_axioms_c(&tbl);
        assert!(p.passed() && p.fully_covered());
        assert!(c.passed() && c.fully_covered());
        let v = equivalence_harness(&tbl).unwrap();
        assert!(v.agree && v.fully_covered);
    }

    #[test]
    fn bad_identity_value_is_reported() {
        let f7 = field(7);
        let mut tbl = PseudoRepTable::constant(Arc::new(WordSet::up_to(1)), f7.int(2));
        tbl.set(&FreeWord::empty(), f7.int(3)).unwrap();
        let p = check_axioms_p(&tbl);
        assert_eq!(p.get("P1").unwrap().violated, 1);
        assert_eq!(p.get("P1").unwrap().witnesses, vec![vec!["1".to_string()]]);
    }

    #[test]
    fn c2_violation_names_its_witness() {
        let f7 = field(7);
        let words = Arc::new(WordSet::new([w("a"), w("a^2"), w("a^-1"), w("a^-2")]));
        let mut tbl = PseudoRepTable::constant(words, f7.int(2));
        tbl.set(&w("a^2"), f7.int(5)).unwrap();
        let c = check_axioms_c(&tbl);
        assert!(c.get("C2").unwrap().witnesses.contains(&vec!["a".to_string(), "a".to_string()]));
    }

    #[test]
    fn trace_tables_pass_both_families() {
        let f7 = field(7);
        let rho = rep(&f7, [2, 3, 1, 2], [1, 0, 4, 1]);
        let tbl = trace_table(&rho, Arc::new(WordSet::up_to(3)));
        assert!(check_axioms_p(&tbl).passed());
        assert!(check_axioms_c(&tbl).passed());
        for (word, value) in tbl.entries() {
            assert_eq!(tbl.get(&word.inverse()).unwrap(), value);
        }
    }

    #[test]
    fn trefoil_trace_table() {
        let q = make_ring(RingSpec::Rational).unwrap();
        let rho = riley_rep(TwoBridgeKnot::new(3, 1).unwrap(), &q.one(), &q.int(-1)).unwrap();
        let words = Arc::new(WordSet::new([w("a"), w("b"), w("ab")]));
        let tbl = trace_table(&rho, words);
        let values: Vec<_> = tbl.values().to_vec();
        assert_eq!(values, vec![q.int(2), q.int(2), q.int(2), q.int(1)]);
    }

    #[test]
    fn harness_rejects_non_domains() {
        let z49 = make_ring(RingSpec::PadicTrunc(7, 2)).unwrap();
        let tbl = PseudoRepTable::constant(Arc::new(WordSet::up_to(1)), z49.int(2));
        assert_eq!(equivalence_harness(&tbl).unwrap_err(), PseudoError::NotIntegralDomain(RingSpec::PadicTrunc(7, 2)));
    }

    #[test]
    fn relation_generator_examples() {
        let f7 = field(7);
        let rho = rep(&f7, [2, 3, 1, 2], [1, 0, 4, 1]);
        let words = Arc::new(WordSet::new([w("a"), w("b"), w("ab"), w("ba"), w("a^2")]));
        let tbar = trace_table(&rho, words.clone());
        let gens = relation_ideal_truncated(&tbar, 2).unwrap();
        let z49 = make_ring(RingSpec::PadicTrunc(7, 2)).unwrap();
        let omega = |v: &RingElement| teichmuller_lift(v, 2).unwrap();

        let g1 = gens.iter().find(|g| g.kind == RelationKind::P1).unwrap();
        let omega2 = omega(&f7.int(2));
        assert_eq!(omega2, z49.int(30));
        assert_eq!(g1.polynomial, WordPoly::var(&z49, 0).add(&WordPoly::constant(omega2 - z49.int(2))));

        let (iab, iba, ia, ia2) = (
            words.index_of(&w("ab")).unwrap(),
            words.index_of(&w("ba")).unwrap(),
            words.index_of(&w("a")).unwrap(),
            words.index_of(&w("a^2")).unwrap(),
        );
        let g2 = gens.iter().find(|g| g.kind == RelationKind::P2 && g.witnesses == vec![w("a"), w("b")]).unwrap();
        assert_eq!(g2.polynomial, WordPoly::var(&z49, iab).sub(&WordPoly::var(&z49, iba)));

        let g4 = gens.iter().find(|g| g.kind == RelationKind::P4 && g.witnesses == vec![w("a")]).unwrap();
        let ta = WordPoly::var(&z49, ia).add(&WordPoly::constant(omega(tbar.get(&w("a")).unwrap())));
        let ta2 = WordPoly::var(&z49, ia2).add(&WordPoly::constant(omega(tbar.get(&w("a^2")).unwrap())));
        let expected = ta.mul(&ta).sub(&ta2).sub(&WordPoly::constant(z49.int(2)));
        assert_eq!(g4.polynomial, expected);
    }

    #[test]
    fn table_json_round_trip() {
        let f7 = field(7);
        let rho = rep(&f7, [2, 3, 1, 2], [1, 0, 4, 1]);
        let tbl = trace_table(&rho, Arc::new(WordSet::up_to(2)));
        let json = serde_json::to_string(&tbl.to_wire()).unwrap();
        let back = PseudoRepTable::from_json(&json).unwrap();
        assert_eq!(back.values(), tbl.values());
        assert!(matches!(
            PseudoRepTable::from_json(r#"{"ring":"prime:7","entries":[["a","1"]]}"#),
            Err(PseudoError::MissingEntry(_))
        ));
    }
}
