//! Property tests for the oracle layer: matroid axioms per representation,
//! rank against an exhaustive oracle, fundamental-circuit minimality and
//! uniqueness, and restriction transparency.

mod common;

use common::{brute_circuits, brute_rank};
use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;
use serex_core::{ElementId, ElementSet, Matroid};

fn arb_uniform() -> impl Strategy<Value = Matroid> {
    (0u32..=4, 0u32..=4)
        .prop_map(|(k, extra)| Matroid::uniform(k, k + extra.max(1)).unwrap())
}

fn arb_graphic() -> impl Strategy<Value = Matroid> {
    (2u32..=5).prop_flat_map(|v| {
        proptest::collection::vec((0..v, 0..v), 1..=8)
            .prop_map(move |edges| Matroid::graphic(v, edges).unwrap())
    })
}

fn arb_gf2() -> impl Strategy<Value = Matroid> {
    (1u32..=5).prop_flat_map(|rows| {
        let mask = (1u64 << rows) - 1;
        proptest::collection::vec(any::<u64>(), 1..=8)
            .prop_map(move |cols| {
                Matroid::linear_gf2(rows, cols.into_iter().map(|c| c & mask).collect()).unwrap()
            })
    })
}

fn arb_rational() -> impl Strategy<Value = Matroid> {
    (1usize..=3, 1usize..=5).prop_flat_map(|(height, width)| {
        proptest::collection::vec(
            proptest::collection::vec((-3i64..=3, 1i64..=3), width..=width),
            height..=height,
        )
        .prop_map(|rows| {
            let rows = rows
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|(p, q)| Ratio::new(BigInt::from(p), BigInt::from(q)))
                        .collect()
                })
                .collect();
            Matroid::linear_rational(rows).unwrap()
        })
    })
}

fn arb_matroid() -> impl Strategy<Value = Matroid> {
    prop_oneof![arb_uniform(), arb_graphic(), arb_gf2(), arb_rational()]
}

fn subset_of(m: &Matroid, bits: u64) -> ElementSet {
    ElementSet::from_bits(bits & m.ground_set().bits())
}

fn greedy_independent(m: &Matroid, s: ElementSet) -> ElementSet {
    let mut cur = ElementSet::EMPTY;
    for e in s.iter() {
        if m.is_independent(cur.with(e)).unwrap() {
            cur = cur.with(e);
        }
    }
    cur
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hereditary_axiom(m in arb_matroid(), bits in any::<u64>()) {
        let s = subset_of(&m, bits);
        if m.is_independent(s).unwrap() {
            for y in s.iter() {
                prop_assert!(m.is_independent(s.without(y)).unwrap());
            }
        }
    }

    #[test]
    fn exchange_axiom(m in arb_matroid(), bits1 in any::<u64>(), bits2 in any::<u64>()) {
        let s = greedy_independent(&m, subset_of(&m, bits1));
        let t = greedy_independent(&m, subset_of(&m, bits2));
        let (small, big) = if s.len() < t.len() { (s, t) } else { (t, s) };
        if small.len() < big.len() {
            let found = big
                .difference(small)
                .iter()
                .any(|x| m.is_independent(small.with(x)).unwrap());
            prop_assert!(found, "no exchange element from {big} into {small}");
        }
    }

    #[test]
    fn rank_matches_exhaustive_oracle(m in arb_matroid(), bits in any::<u64>()) {
        let s = subset_of(&m, bits);
        prop_assert_eq!(m.rank_of(s).unwrap(), brute_rank(&m, s));
    }

    #[test]
    fn rank_monotone_and_submodular(m in arb_matroid(), bits1 in any::<u64>(), bits2 in any::<u64>()) {
        let s = subset_of(&m, bits1);
        let t = subset_of(&m, bits2);
        let (rs, rt) = (m.rank_of(s).unwrap(), m.rank_of(t).unwrap());
        let ru = m.rank_of(s.union(t)).unwrap();
        let ri = m.rank_of(s.intersection(t)).unwrap();
        prop_assert!(rs <= ru && rt <= ru);
        prop_assert!(ru + ri <= rs + rt);
    }

    #[test]
    fn fundamental_circuit_is_the_unique_circuit(m in arb_matroid(), bits in any::<u64>()) {
        let i = greedy_independent(&m, subset_of(&m, bits));
        for x in m.ground_set().difference(i).iter() {
            if m.is_independent(i.with(x)).unwrap() {
                prop_assert!(m.fundamental_circuit(i, x).is_err());
                continue;
            }
            let circuit = m.fundamental_circuit(i, x).unwrap();
            prop_assert!(circuit.support().is_subset(i));
            prop_assert_eq!(circuit.members(), circuit.support().with(x));
            // dependent, and minimal under single deletions
            prop_assert!(!m.is_independent(circuit.members()).unwrap());
            for y in circuit.members().iter() {
                prop_assert!(m.is_independent(circuit.members().without(y)).unwrap());
            }
            // the one and only circuit inside i + x
            let all = brute_circuits(&m, i.with(x));
            prop_assert_eq!(all, vec![circuit.members()]);
        }
    }

    #[test]
    fn restriction_is_transparent(m in arb_matroid(), bits1 in any::<u64>(), bits2 in any::<u64>()) {
        let s = subset_of(&m, bits1);
        let r = m.restrict(s).unwrap();
        prop_assert_eq!(r.matroid().ground_size(), s.len());
        let t_parent = s.intersection(subset_of(&m, bits2));
        let t_child = r.from_parent(t_parent).unwrap();
        prop_assert_eq!(
            r.matroid().is_independent(t_child).unwrap(),
            m.is_independent(t_parent).unwrap()
        );
        prop_assert_eq!(r.to_parent(t_child), t_parent);
        prop_assert_eq!(r.matroid().rank_of(t_child).unwrap(), m.rank_of(t_parent).unwrap());
    }
}

#[test]
fn rank_zero_edge_cases() {
    let m = Matroid::uniform(0, 3).unwrap();
    assert_eq!(m.full_rank(), 0);
    assert!(!m.is_independent(ElementSet::from_bits(0b1)).unwrap());
    assert!(m.is_base(ElementSet::EMPTY).unwrap());

    // a graphic matroid of loops has rank 0
    let loops = Matroid::graphic(1, vec![(0, 0), (0, 0)]).unwrap();
    assert_eq!(loops.full_rank(), 0);
    assert_eq!(brute_rank(&loops, loops.ground_set()), 0);

    // the zero column is a loop in a linear matroid
    let z = Matroid::linear_gf2(2, vec![0, 1]).unwrap();
    assert!(!z.is_independent(ElementSet::from_bits(0b01)).unwrap());
    assert_eq!(z.full_rank(), 1);
    let c = z
        .fundamental_circuit(ElementSet::EMPTY, ElementId(0))
        .unwrap();
    assert!(c.support().is_empty());
    assert_eq!(c.members(), ElementSet::from_bits(0b01));
}
