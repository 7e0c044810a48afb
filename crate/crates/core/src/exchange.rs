//! Symmetric exchanges between two disjoint bases.
//!
//! The central operation is [`BasePair::pair_serial_exchange`]: for any two
//! elements of base `A` it constructs two elements of base `B` and orderings
//! under which the four prefix swaps all stay bases. Full serial exchanges
//! are constructed for ranks 3 and 4. A pruned depth-first search doubles as
//! an independent oracle for all constructive routines.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matroid::Matroid;
use crate::set::{ElementId, ElementSet};

/// Step budget for the exhaustive searches. One unit is spent per node of a
/// search tree; exhaustion raises [`Error::BudgetExhausted`] rather than
/// returning a partial answer.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    initial: u64,
    remaining: u64,
}

impl Budget {
    pub fn new(steps: u64) -> Self {
        Budget {
            initial: steps,
            remaining: steps,
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    #[inline]
    pub fn spend(&mut self) -> Result<(), Error> {
        if self.remaining == 0 {
            Err(Error::BudgetExhausted { steps: self.initial })
        } else {
            self.remaining -= 1;
            Ok(())
        }
    }
}

/// Paired orderings `(a_order, b_order)` of one serial exchange.
pub type OrderPair = (Vec<ElementId>, Vec<ElementId>);

/// A symmetric exchange as the pair `(a, b)`.
pub type Exchange = (ElementId, ElementId);

/// Which of the two bases a one-sided check is relative to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Prefix sets `(A \ {a_1..a_i}) ∪ {b_1..b_i}` must be bases.
    A,
    /// Prefix sets `(B \ {b_1..b_i}) ∪ {a_1..a_i}` must be bases.
    B,
}

/// An ordered pair `(A, B)` of disjoint bases of one matroid; the context
/// for every exchange operation. Disjointness and base-ness are validated
/// eagerly at construction.
#[derive(Clone, Copy, Debug)]
pub struct BasePair<'m> {
    matroid: &'m Matroid,
    a: ElementSet,
    b: ElementSet,
}

/// A serial symmetric exchange: paired orderings of equal length together
/// with the certificate of all intermediate sets, two per step (the A side,
/// then the B side). Every certificate entry was checked against the oracle
/// when the value was built.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExchangeSequence {
    a_order: Vec<ElementId>,
    b_order: Vec<ElementId>,
    certificate: Vec<ElementSet>,
}

impl ExchangeSequence {
    /// Builds and verifies a sequence from the given orderings. Structural
    /// problems (length mismatch, repeats, membership) are `Structure`
    /// errors; orderings whose intermediate sets fail the oracle are
    /// `Precondition` errors.
    pub fn new_verified(
        pair: &BasePair<'_>,
        a_order: Vec<ElementId>,
        b_order: Vec<ElementId>,
    ) -> Result<Self, Error> {
        match pair.certificate_for(&a_order, &b_order)? {
            Some(certificate) => Ok(ExchangeSequence {
                a_order,
                b_order,
                certificate,
            }),
            None => Err(Error::Precondition(
                "orderings do not form a serial symmetric exchange".to_string(),
            )),
        }
    }

    /// Reassembles a sequence from parts without consulting any oracle;
    /// meant for deserialized data that will be re-verified.
    pub fn from_parts(
        a_order: Vec<ElementId>,
        b_order: Vec<ElementId>,
        certificate: Vec<ElementSet>,
    ) -> Self {
        ExchangeSequence {
            a_order,
            b_order,
            certificate,
        }
    }

    pub fn len(&self) -> usize {
        self.a_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_order.is_empty()
    }

    pub fn a_order(&self) -> &[ElementId] {
        &self.a_order
    }

    pub fn b_order(&self) -> &[ElementId] {
        &self.b_order
    }

    /// Intermediate sets: entries `2i` and `2i+1` are the A and B sides
    /// after step `i+1`.
    pub fn certificate(&self) -> &[ElementSet] {
        &self.certificate
    }

    /// The exchanged pairs `(a_i, b_i)` in order.
    pub fn steps(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.a_order
            .iter()
            .copied()
            .zip(self.b_order.iter().copied())
    }
}

impl<'m> BasePair<'m> {
    pub fn new(matroid: &'m Matroid, a: ElementSet, b: ElementSet) -> Result<Self, Error> {
        if !matroid.is_base(a)? {
            return Err(Error::InvalidBasePair(format!("{a} is not a base")));
        }
        if !matroid.is_base(b)? {
            return Err(Error::InvalidBasePair(format!("{b} is not a base")));
        }
        if !a.is_disjoint(b) {
            return Err(Error::InvalidBasePair(format!(
                "bases overlap on {}",
                a.intersection(b)
            )));
        }
        Ok(BasePair { matroid, a, b })
    }

    pub fn matroid(&self) -> &'m Matroid {
        self.matroid
    }

    pub fn a_base(&self) -> ElementSet {
        self.a
    }

    pub fn b_base(&self) -> ElementSet {
        self.b
    }

    /// Rank of the matroid, i.e. the size of each base.
    pub fn rank(&self) -> u32 {
        self.matroid.full_rank()
    }

    /// The same pair with the roles of `A` and `B` reversed.
    pub fn swapped(&self) -> BasePair<'m> {
        BasePair {
            matroid: self.matroid,
            a: self.b,
            b: self.a,
        }
    }

    fn require_in_a(&self, e: ElementId) -> Result<(), Error> {
        if self.a.contains(e) {
            Ok(())
        } else {
            Err(Error::NotInBase { id: e, base: 'A' })
        }
    }

    fn require_in_b(&self, e: ElementId) -> Result<(), Error> {
        if self.b.contains(e) {
            Ok(())
        } else {
            Err(Error::NotInBase { id: e, base: 'B' })
        }
    }

    /// Whether `(a, b)` is a symmetric exchange: both `A - a + b` and
    /// `B - b + a` are bases, equivalently `a ∈ C(A, b)` and `b ∈ C(B, a)`.
    pub fn is_symmetric_exchange(&self, a: ElementId, b: ElementId) -> Result<bool, Error> {
        self.require_in_a(a)?;
        self.require_in_b(b)?;
        Ok(self.exchange_ok(a, b))
    }

    #[inline]
    fn exchange_ok(&self, a: ElementId, b: ElementId) -> bool {
        self.matroid.is_base_unchecked(self.a.without(a).with(b))
            && self.matroid.is_base_unchecked(self.b.without(b).with(a))
    }

    /// The smallest-id element of `B` symmetrically exchangeable with `a`.
    /// One always exists for a working oracle, so an exhausted search is an
    /// internal-consistency error rather than an absence.
    pub fn find_symmetric_partner(&self, a: ElementId) -> Result<ElementId, Error> {
        self.require_in_a(a)?;
        self.b
            .iter()
            .find(|&b| self.exchange_ok(a, b))
            .ok_or_else(|| {
                Error::InternalConsistency(format!("no symmetric partner for element {a}"))
            })
    }

    /// Two symmetric exchanges `(a, b)`, `(a', b')` with `a ≠ a'` and
    /// `b ≠ b'`, the lexicographically first such pair. Requires rank > 1.
    pub fn find_two_disjoint_exchanges(
        &self,
    ) -> Result<(Exchange, Exchange), Error> {
        if self.rank() <= 1 {
            return Err(Error::Precondition(
                "two disjoint exchanges require rank > 1".to_string(),
            ));
        }
        let mut exchanges = Vec::new();
        for a in self.a.iter() {
            for b in self.b.iter() {
                if self.exchange_ok(a, b) {
                    exchanges.push((a, b));
                }
            }
        }
        for (i, &first) in exchanges.iter().enumerate() {
            for &second in &exchanges[i + 1..] {
                if first.0 != second.0 && first.1 != second.1 {
                    return Ok((first, second));
                }
            }
        }
        Err(Error::InternalConsistency(
            "no two disjoint symmetric exchanges found".to_string(),
        ))
    }

    /// The connector set from `src` to `tgt` (both in `A`): the elements
    /// `b ∈ B` with `b ∈ C(B, src)` and `tgt ∈ C(A, b)`.
    pub fn conn_set(&self, src: ElementId, tgt: ElementId) -> Result<ConnSet, Error> {
        self.require_in_a(src)?;
        self.require_in_a(tgt)?;
        if src == tgt {
            return Err(Error::DuplicateElement { id: src });
        }
        let reached_from_src = self.matroid.support(self.b, src)?;
        let mut members = ElementSet::EMPTY;
        for b in reached_from_src.iter() {
            if self.matroid.support(self.a, b)?.contains(tgt) {
                members = members.with(b);
            }
        }
        Ok(ConnSet {
            source: src,
            target: tgt,
            members,
        })
    }

    /// Derives the intermediate sets for the given orderings, checking each
    /// against the oracle. `Err` for structural problems, `Ok(None)` when
    /// some intermediate set is not a base, `Ok(Some(certificate))` when the
    /// orderings form a serial symmetric exchange.
    fn certificate_for(
        &self,
        a_order: &[ElementId],
        b_order: &[ElementId],
    ) -> Result<Option<Vec<ElementSet>>, Error> {
        if a_order.len() != b_order.len() {
            return Err(Error::Structure(format!(
                "order lengths differ: {} vs {}",
                a_order.len(),
                b_order.len()
            )));
        }
        let a_used = ElementSet::from_ids(a_order.iter().copied());
        let b_used = ElementSet::from_ids(b_order.iter().copied());
        if a_used.len() as usize != a_order.len() || b_used.len() as usize != b_order.len() {
            return Err(Error::Structure("repeated element in ordering".to_string()));
        }
        if !a_used.is_subset(self.a) {
            return Err(Error::Structure(format!(
                "{} not drawn from base A",
                a_used.difference(self.a)
            )));
        }
        if !b_used.is_subset(self.b) {
            return Err(Error::Structure(format!(
                "{} not drawn from base B",
                b_used.difference(self.b)
            )));
        }
        let mut a_side = self.a;
        let mut b_side = self.b;
        let mut certificate = Vec::with_capacity(2 * a_order.len());
        for (&a, &b) in a_order.iter().zip(b_order) {
            a_side = a_side.without(a).with(b);
            b_side = b_side.without(b).with(a);
            if !self.matroid.is_base_unchecked(a_side) || !self.matroid.is_base_unchecked(b_side) {
                return Ok(None);
            }
            certificate.push(a_side);
            certificate.push(b_side);
        }
        Ok(Some(certificate))
    }

    /// Re-derives every intermediate set of `seq` and checks base-ness
    /// through the oracle. Structural violations (repeats, membership, a
    /// certificate that does not match the orders) are errors, distinct
    /// from a plain `false`.
    pub fn verify_sequence(&self, seq: &ExchangeSequence) -> Result<bool, Error> {
        match self.certificate_for(&seq.a_order, &seq.b_order)? {
            Some(derived) => {
                if !seq.certificate.is_empty() && seq.certificate != derived {
                    return Err(Error::Structure(
                        "certificate does not match the orderings".to_string(),
                    ));
                }
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// One-sided validity: only the chosen side's prefix sets must be bases
    /// (a serial exchange relative to one base).
    pub fn verify_one_sided(&self, seq: &ExchangeSequence, side: Side) -> Result<bool, Error> {
        // reuse the structural checks
        if seq.a_order.len() != seq.b_order.len() {
            return Err(Error::Structure("order lengths differ".to_string()));
        }
        let a_used = ElementSet::from_ids(seq.a_order.iter().copied());
        let b_used = ElementSet::from_ids(seq.b_order.iter().copied());
        if a_used.len() as usize != seq.a_order.len()
            || b_used.len() as usize != seq.b_order.len()
        {
            return Err(Error::Structure("repeated element in ordering".to_string()));
        }
        if !a_used.is_subset(self.a) || !b_used.is_subset(self.b) {
            return Err(Error::Structure("ordering not drawn from its base".to_string()));
        }
        let mut a_side = self.a;
        let mut b_side = self.b;
        for (&a, &b) in seq.a_order.iter().zip(&seq.b_order) {
            a_side = a_side.without(a).with(b);
            b_side = b_side.without(b).with(a);
            let checked = match side {
                Side::A => a_side,
                Side::B => b_side,
            };
            if !self.matroid.is_base_unchecked(checked) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serial symmetric exchange of `{a1, a2}` with a constructed pair of
    /// `B`-elements. The construction works in the restriction of the
    /// matroid to `A ∪ B`, anchors on the smaller id, and resolves every
    /// choice smallest-id-first, so its output is deterministic. The result
    /// is re-verified against the oracle before return; a verification
    /// failure (impossible for a correct oracle) surfaces as an
    /// internal-consistency error.
    pub fn pair_serial_exchange(
        &self,
        a1: ElementId,
        a2: ElementId,
    ) -> Result<ExchangeSequence, Error> {
        self.require_in_a(a1)?;
        self.require_in_a(a2)?;
        if a1 == a2 {
            return Err(Error::DuplicateElement { id: a1 });
        }
        let restriction = self.matroid.restrict(self.a.union(self.b))?;
        let sub = BasePair::new(
            restriction.matroid(),
            restriction.from_parent(self.a).unwrap(),
            restriction.from_parent(self.b).unwrap(),
        )?;
        let (mut x1, mut x2) = (
            restriction.child_of(a1).unwrap(),
            restriction.child_of(a2).unwrap(),
        );
        if x2 < x1 {
            core::mem::swap(&mut x1, &mut x2);
        }
        let (a_ord, b_ord) = sub.pair_serial_orders(x1, x2)?;
        let a_ord: Vec<ElementId> = a_ord.into_iter().map(|e| restriction.parent_of(e)).collect();
        let b_ord: Vec<ElementId> = b_ord.into_iter().map(|e| restriction.parent_of(e)).collect();
        ExchangeSequence::new_verified(self, a_ord, b_ord).map_err(|e| match e {
            Error::Precondition(_) => Error::InternalConsistency(
                "constructed pair exchange failed verification".to_string(),
            ),
            other => other,
        })
    }

    /// The two-element construction proper, on a pair whose ground set is
    /// exactly `A ∪ B`.
    fn pair_serial_orders(
        &self,
        a1: ElementId,
        a2: ElementId,
    ) -> Result<OrderPair, Error> {
        let m = self.matroid;
        let b1 = self.find_symmetric_partner(a1)?;
        let a_prime = self.a.without(a1).with(b1);
        let b_prime = self.b.without(b1).with(a1);
        let stepped = BasePair::new(m, a_prime, b_prime)?;

        // If a2 exchanges with anything in B' other than a1, two plain
        // exchanges in order settle it.
        for b in b_prime.without(a1).iter() {
            if stepped.exchange_ok(a2, b) {
                return Ok((vec![a1, a2], vec![b1, b]));
            }
        }

        // Otherwise a2 must pair with a1 itself.
        let partner = stepped.find_symmetric_partner(a2)?;
        if partner != a1 {
            return Err(Error::InternalConsistency(format!(
                "element {a2} skipped partner {partner} in the scan"
            )));
        }

        // Both connector sets contain a1, so by the non-singleton property
        // each offers a second member.
        let from_b1 = stepped.conn_set(b1, a2)?.members().without(a1);
        let b2 = from_b1.smallest().ok_or_else(|| {
            Error::InternalConsistency(format!("connector set of ({b1},{a2}) is a singleton"))
        })?;
        let from_a2 = stepped.conn_set(a2, b1)?.members().without(a1);
        let b3 = from_a2.smallest().ok_or_else(|| {
            Error::InternalConsistency(format!("connector set of ({a2},{b1}) is a singleton"))
        })?;
        if b2 == b3 {
            return Err(Error::InternalConsistency(format!(
                "connector choices coincide at {b2}"
            )));
        }

        // Case split on whether b1 and b2 are symmetrically exchangeable
        // relative to (A', B'); b2 ∈ C(B', b1) already holds.
        if m.support(a_prime, b2)?.contains(b1) {
            // exchanges (a1, b2) then (a2, b3)
            Ok((vec![a1, a2], vec![b2, b3]))
        } else {
            // exchanges (a2, b2) then (a1, b3)
            Ok((vec![a2, a1], vec![b2, b3]))
        }
    }

    /// Full serial symmetric exchange for rank 3: two disjoint exchanges
    /// open and close the sequence and the leftover pair sits in between.
    pub fn full_serial_exchange_rank3(&self) -> Result<ExchangeSequence, Error> {
        if self.rank() != 3 {
            return Err(Error::Precondition(format!(
                "rank is {}, expected 3",
                self.rank()
            )));
        }
        let ((a1, b1), (a3, b3)) = self.find_two_disjoint_exchanges()?;
        let a2 = self.a.without(a1).without(a3).smallest().unwrap();
        let b2 = self.b.without(b1).without(b3).smallest().unwrap();
        ExchangeSequence::new_verified(self, vec![a1, a2, a3], vec![b1, b2, b3]).map_err(|e| {
            match e {
                Error::Precondition(_) => Error::InternalConsistency(
                    "rank-3 construction failed verification".to_string(),
                ),
                other => other,
            }
        })
    }

    /// Full serial symmetric exchange for rank 4, built from a two-element
    /// serial exchange plus one leftover symmetric exchange, interleaved as
    /// first-two / other-leftover / exchanged-leftover.
    pub fn full_serial_exchange_rank4(&self) -> Result<ExchangeSequence, Error> {
        if self.rank() != 4 {
            return Err(Error::Precondition(format!(
                "rank is {}, expected 4",
                self.rank()
            )));
        }
        let a_sorted = self.a.to_vec();
        let opening = self.pair_serial_exchange(a_sorted[0], a_sorted[1])?;
        let (a1, a2) = (opening.a_order[0], opening.a_order[1]);
        let (b1, b2) = (opening.b_order[0], opening.b_order[1]);
        let left_a = self.a.without(a1).without(a2);
        let left_b = self.b.without(b1).without(b2);

        if let Some(seq) = self.close_rank4(&[a1, a2], &[b1, b2], left_a, left_b)? {
            return Ok(seq);
        }

        // No leftover exchange: serially exchange the remaining A-pair; its
        // B-pair must reuse at least one of b1, b2, freeing a leftover of
        // the original B whose partner sits in {a1, a2}.
        let la = left_a.to_vec();
        let second = self.pair_serial_exchange(la[0], la[1])?;
        let second_b = ElementSet::from_ids(second.b_order.iter().copied());
        if second_b.is_disjoint(ElementSet::from_ids([b1, b2])) {
            return Err(Error::InternalConsistency(
                "second pair exchange avoided both replaced elements".to_string(),
            ));
        }
        let rem_a = self.a.difference(ElementSet::from_ids(second.a_order.iter().copied()));
        let rem_b = self.b.difference(second_b);
        match self.close_rank4(&second.a_order, &second.b_order, rem_a, rem_b)? {
            Some(seq) => Ok(seq),
            None => Err(Error::InternalConsistency(
                "no closing exchange among the leftover elements".to_string(),
            )),
        }
    }

    /// Closes a rank-4 sequence: given a length-2 serial exchange and the
    /// leftover elements, looks for a symmetric exchange `(a', b')` among
    /// the leftovers relative to the *original* pair and, if found, emits
    /// the verified order `(head, other, exchanged)`.
    fn close_rank4(
        &self,
        a_head: &[ElementId],
        b_head: &[ElementId],
        left_a: ElementSet,
        left_b: ElementSet,
    ) -> Result<Option<ExchangeSequence>, Error> {
        for a_last in left_a.iter() {
            for b_last in left_b.iter() {
                if !self.exchange_ok(a_last, b_last) {
                    continue;
                }
                let a_third = left_a.without(a_last).smallest().unwrap();
                let b_third = left_b.without(b_last).smallest().unwrap();
                let a_order = vec![a_head[0], a_head[1], a_third, a_last];
                let b_order = vec![b_head[0], b_head[1], b_third, b_last];
                let seq =
                    ExchangeSequence::new_verified(self, a_order, b_order).map_err(|e| match e {
                        Error::Precondition(_) => Error::InternalConsistency(
                            "rank-4 interleaving failed verification".to_string(),
                        ),
                        other => other,
                    })?;
                return Ok(Some(seq));
            }
        }
        Ok(None)
    }

    /// Exhaustive search for a serial symmetric exchange of `subset ⊆ A`
    /// with some equally sized subset of `B`. Returns the first sequence in
    /// depth-first order (choices interleaved `a_1, b_1, a_2, b_2, ...`,
    /// each scanned ascending), or `None` — which for a full-size subset
    /// would be a counterexample to the cyclic base-order property.
    pub fn brute_force_serial_exchange(
        &self,
        subset: ElementSet,
    ) -> Result<Option<ExchangeSequence>, Error> {
        self.brute_force_serial_exchange_budgeted(subset, &mut Budget::unlimited())
    }

    pub fn brute_force_serial_exchange_budgeted(
        &self,
        subset: ElementSet,
        budget: &mut Budget,
    ) -> Result<Option<ExchangeSequence>, Error> {
        if !subset.is_subset(self.a) {
            let stray = subset.difference(self.a).smallest().unwrap();
            return Err(Error::NotInBase { id: stray, base: 'A' });
        }
        let mut search = SerialSearch {
            pair: self,
            subset,
            a_order: Vec::new(),
            b_order: Vec::new(),
            found: Vec::new(),
            stop_at_first: true,
            base_memo: BTreeMap::new(),
        };
        search.run(self.a, self.b, budget)?;
        match search.found.pop() {
            Some((a_order, b_order)) => {
                Ok(Some(ExchangeSequence::new_verified(self, a_order, b_order)?))
            }
            None => Ok(None),
        }
    }

    /// All `(a_order, b_order)` pairs that form a serial symmetric exchange
    /// of `subset`, in depth-first order. The solution *set* is what the
    /// constructive routines are validated against.
    pub fn enumerate_serial_exchanges(
        &self,
        subset: ElementSet,
    ) -> Result<Vec<OrderPair>, Error> {
        self.enumerate_serial_exchanges_budgeted(subset, &mut Budget::unlimited())
    }

    pub fn enumerate_serial_exchanges_budgeted(
        &self,
        subset: ElementSet,
        budget: &mut Budget,
    ) -> Result<Vec<OrderPair>, Error> {
        if !subset.is_subset(self.a) {
            let stray = subset.difference(self.a).smallest().unwrap();
            return Err(Error::NotInBase { id: stray, base: 'A' });
        }
        let mut search = SerialSearch {
            pair: self,
            subset,
            a_order: Vec::new(),
            b_order: Vec::new(),
            found: Vec::new(),
            stop_at_first: false,
            base_memo: BTreeMap::new(),
        };
        search.run(self.a, self.b, budget)?;
        Ok(search.found)
    }

    /// The serial-support identity: for a sequence that is a serial
    /// exchange relative to `B` and any prefix length `k`, the union of the
    /// original supports `C(B, a_i)` equals the union of the serial
    /// supports `C((B \ B_{i-1}) ∪ A_{i-1}, a_i)` intersected with `B`.
    pub fn serial_support_identity_check(
        &self,
        seq: &ExchangeSequence,
        k: usize,
    ) -> Result<bool, Error> {
        if !self.verify_one_sided(seq, Side::B)? {
            return Err(Error::Precondition(
                "sequence is not a serial exchange relative to B".to_string(),
            ));
        }
        if k == 0 || k > seq.len() {
            return Err(Error::Precondition(format!(
                "k = {k} outside 1..={}",
                seq.len()
            )));
        }
        let m = self.matroid;
        let mut original_union = ElementSet::EMPTY;
        let mut serial_union = ElementSet::EMPTY;
        let mut b_side = self.b;
        for i in 0..k {
            let a_i = seq.a_order[i];
            original_union = original_union.union(m.support(self.b, a_i)?);
            serial_union = serial_union.union(m.support(b_side, a_i)?);
            b_side = b_side.without(seq.b_order[i]).with(a_i);
        }
        Ok(original_union == serial_union.intersection(self.b))
    }

    /// Support stability under one exchange: given distinct `a1, a2 ∈ A`
    /// and `b1, b2 ∈ B` with `B - b1 + a1` a base and `b2 ∉ C(B, a1)` or
    /// `b1 ∉ C(B, a2)`, membership of `b2` in the support of `a2` is the
    /// same before and after the exchange. A `false` would convict the
    /// oracle, not the statement.
    pub fn support_stability_check(
        &self,
        a1: ElementId,
        a2: ElementId,
        b1: ElementId,
        b2: ElementId,
    ) -> Result<bool, Error> {
        self.require_in_a(a1)?;
        self.require_in_a(a2)?;
        self.require_in_b(b1)?;
        self.require_in_b(b2)?;
        if a1 == a2 {
            return Err(Error::DuplicateElement { id: a1 });
        }
        if b1 == b2 {
            return Err(Error::DuplicateElement { id: b1 });
        }
        let m = self.matroid;
        let exchanged = self.b.without(b1).with(a1);
        if !m.is_base_unchecked(exchanged) {
            return Err(Error::Precondition(format!(
                "B - {b1} + {a1} is not a base"
            )));
        }
        let in_c_a1 = m.support(self.b, a1)?.contains(b2);
        let in_c_a2_of_b1 = m.support(self.b, a2)?.contains(b1);
        if in_c_a1 && in_c_a2_of_b1 {
            return Err(Error::Precondition(
                "hypothesis needs b2 ∉ C(B,a1) or b1 ∉ C(B,a2)".to_string(),
            ));
        }
        let before = m.support(self.b, a2)?.contains(b2);
        let after = m.support(exchanged, a2)?.contains(b2);
        Ok(before == after)
    }

    /// Support inheritance after a symmetric exchange `(a, b)`:
    /// (i) `C(B - b + a, b) = C(B, a) - b + a`, and (ii) for `b' ∈ B - b`,
    /// `b ∈ C(A - a + b, b')` iff `a ∈ C(A, b')`.
    pub fn support_inheritance_check(
        &self,
        a: ElementId,
        b: ElementId,
        b_prime: ElementId,
    ) -> Result<bool, Error> {
        self.require_in_a(a)?;
        self.require_in_b(b)?;
        self.require_in_b(b_prime)?;
        if b == b_prime {
            return Err(Error::DuplicateElement { id: b });
        }
        if !self.exchange_ok(a, b) {
            return Err(Error::Precondition(format!(
                "({a},{b}) is not a symmetric exchange"
            )));
        }
        let m = self.matroid;
        let b_new = self.b.without(b).with(a);
        let part_one =
            m.support(b_new, b)? == m.support(self.b, a)?.without(b).with(a);
        let a_new = self.a.without(a).with(b);
        let part_two =
            m.support(a_new, b_prime)?.contains(b) == m.support(self.a, b_prime)?.contains(a);
        Ok(part_one && part_two)
    }
}

/// Depth-first search for serial symmetric exchanges with prefix pruning.
/// Decisions alternate between the next `a` (drawn from the subset,
/// ascending) and its matching `b` (drawn from `B`, ascending); a branch is
/// cut as soon as either intermediate set stops being a base.
struct SerialSearch<'p, 'm> {
    pair: &'p BasePair<'m>,
    subset: ElementSet,
    a_order: Vec<ElementId>,
    b_order: Vec<ElementId>,
    found: Vec<OrderPair>,
    stop_at_first: bool,
    /// Base-ness results keyed by set bits; intermediate sets recur across
    /// branches, so each is pushed through the oracle only once per search.
    base_memo: BTreeMap<u64, bool>,
}

impl SerialSearch<'_, '_> {
    fn is_base_cached(&mut self, set: ElementSet) -> bool {
        if let Some(&known) = self.base_memo.get(&set.bits()) {
            return known;
        }
        let verdict = self.pair.matroid.is_base_unchecked(set);
        self.base_memo.insert(set.bits(), verdict);
        verdict
    }

    fn run(
        &mut self,
        a_side: ElementSet,
        b_side: ElementSet,
        budget: &mut Budget,
    ) -> Result<bool, Error> {
        budget.spend()?;
        if self.a_order.len() == self.subset.len() as usize {
            self.found.push((self.a_order.clone(), self.b_order.clone()));
            return Ok(self.stop_at_first);
        }
        let used_a = ElementSet::from_ids(self.a_order.iter().copied());
        for a in self.subset.difference(used_a).iter() {
            let used_b = ElementSet::from_ids(self.b_order.iter().copied());
            for b in self.pair.b.difference(used_b).iter() {
                let next_a_side = a_side.without(a).with(b);
                let next_b_side = b_side.without(b).with(a);
                if !self.is_base_cached(next_a_side) || !self.is_base_cached(next_b_side) {
                    continue;
                }
                self.a_order.push(a);
                self.b_order.push(b);
                let done = self.run(next_a_side, next_b_side, budget)?;
                self.a_order.pop();
                self.b_order.pop();
                if done {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// The connector set `Conn(src, tgt, A, B)`: middle elements of directed
/// two-step paths from `src` to `tgt` through `B` in the exchangeability
/// digraph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConnSet {
    source: ElementId,
    target: ElementId,
    members: ElementSet,
}

impl ConnSet {
    pub fn source(&self) -> ElementId {
        self.source
    }

    pub fn target(&self) -> ElementId {
        self.target
    }

    pub fn members(&self) -> ElementSet {
        self.members
    }

    pub fn len(&self) -> u32 {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
