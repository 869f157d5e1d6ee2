use std::sync::Arc;

use proptest::prelude::*;

use knotdeform::{
    make_ring, newton_root_with, relation_ideal_truncated, riley_data, riley_rep, teichmuller_lift, trace_table,
    DeformationData, NewtonSchedule, RingSpec, TwoBridgeKnot, WordSet,
};

const KNOTS: [(i64, i64); 5] = [(3, 1), (5, 3), (5, 1), (7, 3), (9, 5)];

fn knot(m: i64, n: i64) -> TwoBridgeKnot {
    TwoBridgeKnot::new(m, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn newton_schedules_agree(k in prop::sample::select(KNOTS.to_vec()), p in prop::sample::select(vec![5u64, 7, 11, 13]), m in 1u32..4, n in 1usize..10) {
        let data = riley_data(knot(k.0, k.1)).unwrap();
        let Ok(roots) = data.roots_mod(p) else { return Ok(()) };
        let ring = RingSpec::PadicTrunc(p, m);
        for beta in roots {
            let fast = newton_root_with(&data.big_phi, &beta, ring, n, NewtonSchedule::Doubling);
            let slow = newton_root_with(&data.big_phi, &beta, ring, n, NewtonSchedule::FullPrecision);
            match (fast, slow) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.root, b.root),
                (Err(a), Err(b)) => prop_assert_eq!(a.to_string(), b.to_string()),
                (a, b) => prop_assert!(false, "schedules disagree: {:?} vs {:?}", a, b),
            }
        }
    }
}

#[test]
fn hensel_lift_is_compatible_with_truncation() {
    let data = riley_data(knot(5, 3)).unwrap();
    let f7 = make_ring(RingSpec::PrimeField(7)).unwrap();
    let beta = f7.int(3);
    let fine = newton_root_with(&data.big_phi, &beta, RingSpec::PadicTrunc(7, 4), 8, NewtonSchedule::Doubling).unwrap();
    let coarse = newton_root_with(&data.big_phi, &beta, RingSpec::PadicTrunc(7, 2), 5, NewtonSchedule::Doubling).unwrap();
    for i in 0..5 {
        assert_eq!(fine.root.coeff(i).reduce_to(RingSpec::PadicTrunc(7, 2)).unwrap(), *coarse.root.coeff(i));
    }
}

#[test]
fn specialized_traces_satisfy_the_relation_ideal() {
    for (m, n, p) in [(3, 1, 5), (5, 3, 7), (7, 3, 5)] {
        let k = knot(m, n);
        let field = make_ring(RingSpec::PrimeField(p)).unwrap();
        let words = Arc::new(WordSet::up_to(2));
        for beta in riley_data(k).unwrap().roots_mod(p).unwrap() {
            let residual = trace_table(&riley_rep(k, &field.one(), &beta).unwrap(), words.clone());
            let trunc = 3;
            let ring = RingSpec::PadicTrunc(p, trunc);
            let o = make_ring(ring).unwrap();
            let d = DeformationData::compute(k, &beta, ring, 6).unwrap();
            let rho = d.specialize(&o.int(2 + p as i64)).unwrap();
            let lifted = trace_table(&rho, words.clone());
            let shift: Vec<_> = lifted
                .values()
                .iter()
                .zip(residual.values())
                .map(|(t, r)| t.clone() - teichmuller_lift(r, trunc).unwrap())
                .collect();
            let gens = relation_ideal_truncated(&residual, trunc).unwrap();
            assert!(!gens.is_empty());
            for g in gens {
                let value = g.polynomial.eval(|i| shift[i].clone());
                assert!(value.is_zero(), "{k} p={p}: {:?} {:?} gives {value}", g.kind, g.witnesses);
            }
        }
    }
}

#[test]
fn perturbed_traces_violate_the_relation_ideal() {
    let k = knot(5, 3);
    let f7 = make_ring(RingSpec::PrimeField(7)).unwrap();
    let words = Arc::new(WordSet::up_to(2));
    let residual = trace_table(&riley_rep(k, &f7.one(), &f7.int(3)).unwrap(), words.clone());
    let o = make_ring(RingSpec::PadicTrunc(7, 2)).unwrap();
    let gens = relation_ideal_truncated(&residual, 2).unwrap();
    let mut shift = vec![o.zero(); words.len()];
    shift[0] = o.int(7);
    assert!(gens.iter().any(|g| !g.polynomial.eval(|i| shift[i].clone()).is_zero()));
}
