#![allow(dead_code)] // each test binary uses a different subset

//! Brute-force oracles used to cross-check the library. Everything here
//! goes through `is_independent` only, never through the code paths under
//! test (rank, supports, constructive exchanges).

use serex_core::{ElementSet, Matroid};

/// Rank by exhaustive enumeration of all subsets.
pub fn brute_rank(m: &Matroid, s: ElementSet) -> u32 {
    let bits = s.bits();
    let mut best = 0;
    let mut sub = bits;
    loop {
        let t = ElementSet::from_bits(sub);
        if m.is_independent(t).unwrap() {
            best = best.max(t.len());
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    best
}

/// All minimal dependent subsets of `within` (dependent, every single
/// deletion independent).
pub fn brute_circuits(m: &Matroid, within: ElementSet) -> Vec<ElementSet> {
    let bits = within.bits();
    let mut out = Vec::new();
    let mut sub = bits;
    loop {
        let s = ElementSet::from_bits(sub);
        if !s.is_empty() && !m.is_independent(s).unwrap() {
            let minimal = s.iter().all(|y| m.is_independent(s.without(y)).unwrap());
            if minimal {
                out.push(s);
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    out.sort_unstable();
    out
}

/// Whether the orderings form a serial symmetric exchange, straight from
/// the definition.
pub fn brute_is_serial_symmetric(
    m: &Matroid,
    a: ElementSet,
    b: ElementSet,
    a_order: &[serex_core::ElementId],
    b_order: &[serex_core::ElementId],
) -> bool {
    if a_order.len() != b_order.len() {
        return false;
    }
    let mut a_side = a;
    let mut b_side = b;
    for (&x, &y) in a_order.iter().zip(b_order) {
        a_side = a_side.without(x).with(y);
        b_side = b_side.without(y).with(x);
        if !m.is_base(a_side).unwrap() || !m.is_base(b_side).unwrap() {
            return false;
        }
    }
    true
}
