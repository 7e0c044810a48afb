//! Immutable matroid representations behind one independence-oracle
//! interface.
//!
//! A [`Matroid`] is constructed once, validates its data eagerly, memoizes
//! the rank of the full ground set, and never changes afterwards. Every
//! query is a pure function of the value, so repeated queries on equal sets
//! always give equal answers and values can be shared across threads.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{self};
use crate::set::{ElementId, ElementSet, MAX_GROUND};

pub use crate::linalg::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    /// Independent iff `|s| <= k`.
    Uniform { k: u32 },
    /// Elements are edges of a multigraph; independent iff the edge set
    /// is a forest. Loops are dependent singletons.
    Graphic { vertices: u32, edges: Vec<(u32, u32)> },
    /// Elements are columns over GF(2), bit-packed (bit r = row r).
    LinearGf2 { rows: u32, cols: Vec<u64> },
    /// Elements are columns of an exact rational matrix (row-major).
    LinearRational { rows: Vec<Vec<Rational>> },
    /// Test double: a uniform oracle that lies about the listed sets.
    #[cfg(test)]
    Sabotaged { k: u32, lies: Vec<u64> },
}

/// An immutable independence oracle over a dense ground set
/// `{0, .., ground_size - 1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matroid {
    repr: Repr,
    ground: u32,
    full_rank: u32,
}

impl Matroid {
    fn build(repr: Repr, ground: usize) -> Result<Self, Error> {
        if ground > MAX_GROUND as usize {
            return Err(Error::GroundTooLarge { size: ground });
        }
        let ground = ground as u32;
        let mut m = Matroid {
            repr,
            ground,
            full_rank: 0,
        };
        m.full_rank = m.rank_unchecked(ElementSet::full(ground));
        Ok(m)
    }

    /// The uniform matroid `U(k, n)`: independent sets are those of size at
    /// most `k`.
    pub fn uniform(k: u32, n: u32) -> Result<Self, Error> {
        if k > n {
            return Err(Error::Construction(format!(
                "uniform rank {k} exceeds ground size {n}"
            )));
        }
        Self::build(Repr::Uniform { k }, n as usize)
    }

    /// The cycle matroid of a multigraph on vertices `0..vertices`; one
    /// element per edge, in the order given. Parallel edges and loops are
    /// allowed.
    pub fn graphic(vertices: u32, edges: Vec<(u32, u32)>) -> Result<Self, Error> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::Construction(format!(
                    "edge {i} endpoint out of range (vertices: {vertices})"
                )));
            }
        }
        let n = edges.len();
        Self::build(Repr::Graphic { vertices, edges }, n)
    }

    /// A linear matroid over GF(2): one element per column, columns packed
    /// into `u64`s with bit `r` holding row `r`.
    pub fn linear_gf2(rows: u32, cols: Vec<u64>) -> Result<Self, Error> {
        if rows > 64 {
            return Err(Error::Construction(format!("{rows} rows exceed 64")));
        }
        let mask = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
        for (i, &c) in cols.iter().enumerate() {
            if c & !mask != 0 {
                return Err(Error::Construction(format!(
                    "column {i} has bits above row {rows}"
                )));
            }
        }
        let n = cols.len();
        Self::build(Repr::LinearGf2 { rows, cols }, n)
    }

    /// A linear matroid over the rationals: one element per column of a
    /// row-major matrix of exact fractions.
    pub fn linear_rational(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::Construction("ragged matrix".to_string()));
        }
        Self::build(Repr::LinearRational { rows }, width)
    }

    #[cfg(test)]
    pub(crate) fn sabotaged_uniform(k: u32, n: u32, lies: Vec<u64>) -> Self {
        Self::build(Repr::Sabotaged { k, lies }, n as usize).unwrap()
    }

    /// Number of elements in the ground set.
    #[inline]
    pub fn ground_size(&self) -> u32 {
        self.ground
    }

    /// The full ground set `{0, .., ground_size - 1}`.
    #[inline]
    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.ground)
    }

    /// Rank of the whole ground set (memoized at construction).
    #[inline]
    pub fn full_rank(&self) -> u32 {
        self.full_rank
    }

    fn validate(&self, s: ElementSet) -> Result<(), Error> {
        if s.is_subset(self.ground_set()) {
            Ok(())
        } else {
            let id = s.difference(self.ground_set()).smallest().unwrap();
            Err(Error::InvalidElement {
                id,
                ground: self.ground,
            })
        }
    }

    fn validate_element(&self, e: ElementId) -> Result<(), Error> {
        if e.0 < self.ground {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                id: e,
                ground: self.ground,
            })
        }
    }

    pub(crate) fn indep_unchecked(&self, s: ElementSet) -> bool {
        match &self.repr {
            Repr::Uniform { k } => s.len() <= *k,
            Repr::Graphic { vertices, edges } => {
                // Union-find forest check with path halving.
                let mut parent: Vec<u32> = (0..*vertices).collect();
                fn find(parent: &mut [u32], mut x: u32) -> u32 {
                    while parent[x as usize] != x {
                        parent[x as usize] = parent[parent[x as usize] as usize];
                        x = parent[x as usize];
                    }
                    x
                }
                for e in s.iter() {
                    let (u, v) = edges[e.index()];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru == rv {
                        return false;
                    }
                    parent[ru as usize] = rv;
                }
                true
            }
            Repr::LinearGf2 { cols, .. } => {
                linalg::gf2_rank(s.iter().map(|e| cols[e.index()])) == s.len()
            }
            Repr::LinearRational { rows } => {
                let picked: Vec<usize> = s.iter().map(ElementId::index).collect();
                linalg::rational_rank(rows, &picked) == s.len()
            }
            #[cfg(test)]
            Repr::Sabotaged { k, lies } => {
                let honest = s.len() <= *k;
                if lies.contains(&s.bits()) {
                    !honest
                } else {
                    honest
                }
            }
        }
    }

    /// Whether `s` is independent.
    pub fn is_independent(&self, s: ElementSet) -> Result<bool, Error> {
        self.validate(s)?;
        Ok(self.indep_unchecked(s))
    }

    pub(crate) fn rank_unchecked(&self, s: ElementSet) -> u32 {
        // Greedy grows a maximal independent subset; correct in any matroid.
        let mut cur = ElementSet::EMPTY;
        for e in s.iter() {
            if self.indep_unchecked(cur.with(e)) {
                cur = cur.with(e);
            }
        }
        cur.len()
    }

    /// Rank of `s`: the size of a maximal independent subset.
    pub fn rank_of(&self, s: ElementSet) -> Result<u32, Error> {
        self.validate(s)?;
        Ok(self.rank_unchecked(s))
    }

    /// Whether `s` is a base (independent of full rank).
    pub fn is_base(&self, s: ElementSet) -> Result<bool, Error> {
        self.validate(s)?;
        Ok(s.len() == self.full_rank && self.indep_unchecked(s))
    }

    pub(crate) fn is_base_unchecked(&self, s: ElementSet) -> bool {
        s.len() == self.full_rank && self.indep_unchecked(s)
    }

    /// The fundamental circuit of `x` with respect to the independent set
    /// `i`: the unique circuit inside `i + x`, presented as its support
    /// `C(i, x)` in `i` plus the spanned element `x`.
    ///
    /// Errors: `DependentInput` if `i` is dependent, `ElementPresent` if
    /// `x ∈ i`, and `NotSpanned` if `i + x` is independent (callers use the
    /// latter to detect that `x` is outside the span of `i`).
    pub fn fundamental_circuit(&self, i: ElementSet, x: ElementId) -> Result<Circuit, Error> {
        self.validate(i)?;
        self.validate_element(x)?;
        if i.contains(x) {
            return Err(Error::ElementPresent { id: x });
        }
        if !self.indep_unchecked(i) {
            return Err(Error::DependentInput);
        }
        let extended = i.with(x);
        if self.indep_unchecked(extended) {
            return Err(Error::NotSpanned { id: x });
        }
        // y lies on the unique circuit of i + x exactly when deleting y
        // breaks it, i.e. (i + x) - y is independent.
        let support = i
            .iter()
            .filter(|&y| self.indep_unchecked(extended.without(y)))
            .collect();
        Ok(Circuit {
            support,
            element: x,
        })
    }

    /// Support of `x` in `i`; shorthand for
    /// `fundamental_circuit(i, x)?.support()`.
    pub fn support(&self, i: ElementSet, x: ElementId) -> Result<ElementSet, Error> {
        Ok(self.fundamental_circuit(i, x)?.support())
    }

    /// The restriction of the matroid to `s`, with elements densely
    /// re-labeled in ascending order of their parent ids.
    pub fn restrict(&self, s: ElementSet) -> Result<Restriction, Error> {
        self.validate(s)?;
        let parent_ids: Vec<ElementId> = s.to_vec();
        let repr = match &self.repr {
            Repr::Uniform { k } => Repr::Uniform {
                k: (*k).min(s.len()),
            },
            Repr::Graphic { vertices, edges } => Repr::Graphic {
                vertices: *vertices,
                edges: parent_ids.iter().map(|e| edges[e.index()]).collect(),
            },
            Repr::LinearGf2 { rows, cols } => Repr::LinearGf2 {
                rows: *rows,
                cols: parent_ids.iter().map(|e| cols[e.index()]).collect(),
            },
            Repr::LinearRational { rows } => Repr::LinearRational {
                rows: rows
                    .iter()
                    .map(|row| parent_ids.iter().map(|e| row[e.index()].clone()).collect())
                    .collect(),
            },
            #[cfg(test)]
            Repr::Sabotaged { .. } => panic!("restriction of a test double"),
        };
        let matroid = Matroid::build(repr, parent_ids.len())?;
        Ok(Restriction { matroid, parent_ids })
    }

    /// A short human-readable tag for reports: `uniform(2,4)`,
    /// `graphic(4v,6e)`, `linear-gf2(3x6)`, `linear-rational(2x5)`.
    pub fn kind_tag(&self) -> String {
        match &self.repr {
            Repr::Uniform { k } => format!("uniform({},{})", k, self.ground),
            Repr::Graphic { vertices, .. } => format!("graphic({}v,{}e)", vertices, self.ground),
            Repr::LinearGf2 { rows, .. } => format!("linear-gf2({}x{})", rows, self.ground),
            Repr::LinearRational { rows } => {
                format!("linear-rational({}x{})", rows.len(), self.ground)
            }
            #[cfg(test)]
            Repr::Sabotaged { .. } => "sabotaged".to_string(),
        }
    }
}

/// A fundamental circuit `C⁺(i, x)`, kept as the support `C(i, x) ⊆ i`
/// together with the spanned element `x`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Circuit {
    support: ElementSet,
    element: ElementId,
}

impl Circuit {
    /// `C(i, x)`: the members of `i` spanning `x`.
    #[inline]
    pub fn support(&self) -> ElementSet {
        self.support
    }

    /// The spanned element `x`.
    #[inline]
    pub fn element(&self) -> ElementId {
        self.element
    }

    /// `C⁺(i, x) = C(i, x) + x`: the circuit itself.
    #[inline]
    pub fn members(&self) -> ElementSet {
        self.support.with(self.element)
    }
}

/// A matroid restricted to a subset, with the child-to-parent id mapping.
#[derive(Clone, Debug)]
pub struct Restriction {
    matroid: Matroid,
    parent_ids: Vec<ElementId>,
}

impl Restriction {
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// Parent ids of the restriction's elements, indexed by child id.
    pub fn parent_ids(&self) -> &[ElementId] {
        &self.parent_ids
    }

    pub fn parent_of(&self, child: ElementId) -> ElementId {
        self.parent_ids[child.index()]
    }

    /// Child id of a parent element, if it survived the restriction.
    pub fn child_of(&self, parent: ElementId) -> Option<ElementId> {
        self.parent_ids
            .binary_search(&parent)
            .ok()
            .map(|i| ElementId(i as u32))
    }

    pub fn to_parent(&self, s: ElementSet) -> ElementSet {
        s.iter().map(|e| self.parent_of(e)).collect()
    }

    /// Maps a parent-side set down; `None` if it has elements outside the
    /// restriction.
    pub fn from_parent(&self, s: ElementSet) -> Option<ElementSet> {
        let mut out = ElementSet::EMPTY;
        for e in s.iter() {
            out = out.with(self.child_of(e)?);
        }
        Some(out)
    }
}

/// Serializable construction data for a matroid. Conversion back through
/// [`Matroid`]'s constructors re-validates every invariant, so a
/// deserialized witness is as trustworthy as a freshly built value.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MatroidData {
    Uniform {
        k: u32,
        n: u32,
    },
    Graphic {
        vertices: u32,
        edges: Vec<(u32, u32)>,
    },
    /// Rows of bit characters, e.g. `"10110"`; row 0 first.
    LinearGf2 {
        rows: Vec<String>,
    },
    /// Rows of exact fractions rendered as `p/q` (or plain integers).
    LinearRational {
        rows: Vec<Vec<String>>,
    },
    #[cfg(test)]
    Sabotaged {
        k: u32,
        n: u32,
        lies: Vec<u64>,
    },
}

/// Parses an exact rational from `p/q` or plain-integer notation.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::Construction(format!("invalid rational '{text}'"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigIntWrap = num.trim().parse().map_err(|_| bad())?;
    let den: BigIntWrap = den.trim().parse().map_err(|_| bad())?;
    if den.0.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num.0, den.0))
}

struct BigIntWrap(num_bigint::BigInt);

impl core::str::FromStr for BigIntWrap {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        s.parse().map(BigIntWrap).map_err(|_| ())
    }
}

impl TryFrom<MatroidData> for Matroid {
    type Error = Error;

    fn try_from(data: MatroidData) -> Result<Self, Error> {
        match data {
            MatroidData::Uniform { k, n } => Matroid::uniform(k, n),
            MatroidData::Graphic { vertices, edges } => Matroid::graphic(vertices, edges),
            MatroidData::LinearGf2 { rows } => {
                let height = rows.len() as u32;
                let width = rows.first().map_or(0, String::len);
                let mut cols = alloc::vec![0u64; width];
                for (r, row) in rows.iter().enumerate() {
                    if row.len() != width {
                        return Err(Error::Construction("ragged matrix".to_string()));
                    }
                    for (c, ch) in row.chars().enumerate() {
                        match ch {
                            '0' => {}
                            '1' => cols[c] |= 1u64 << r,
                            _ => {
                                return Err(Error::Construction(format!(
                                    "invalid bit character '{ch}'"
                                )))
                            }
                        }
                    }
                }
                Matroid::linear_gf2(height, cols)
            }
            MatroidData::LinearRational { rows } => {
                let parsed = rows
                    .iter()
                    .map(|row| row.iter().map(|s| parse_rational(s)).collect())
                    .collect::<Result<Vec<Vec<Rational>>, Error>>()?;
                Matroid::linear_rational(parsed)
            }
            #[cfg(test)]
            MatroidData::Sabotaged { k, n, lies } => Ok(Matroid::sabotaged_uniform(k, n, lies)),
        }
    }
}

impl From<&Matroid> for MatroidData {
    fn from(m: &Matroid) -> MatroidData {
        match &m.repr {
            Repr::Uniform { k } => MatroidData::Uniform { k: *k, n: m.ground },
            Repr::Graphic { vertices, edges } => MatroidData::Graphic {
                vertices: *vertices,
                edges: edges.clone(),
            },
            Repr::LinearGf2 { rows, cols } => {
                let rendered = (0..*rows)
                    .map(|r| {
                        cols.iter()
                            .map(|c| if c >> r & 1 == 1 { '1' } else { '0' })
                            .collect()
                    })
                    .collect();
                MatroidData::LinearGf2 { rows: rendered }
            }
            Repr::LinearRational { rows } => MatroidData::LinearRational {
                rows: rows
                    .iter()
                    .map(|row| row.iter().map(ToString::to_string).collect())
                    .collect(),
            },
            #[cfg(test)]
            Repr::Sabotaged { k, lies } => MatroidData::Sabotaged {
                k: *k,
                n: m.ground,
                lies: lies.clone(),
            },
        }
    }
}

impl Serialize for Matroid {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatroidData::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matroid {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let data = MatroidData::deserialize(deserializer)?;
        Matroid::try_from(data).map_err(serde::de::Error::custom)
    }
}
