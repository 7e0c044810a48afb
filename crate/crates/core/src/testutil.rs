//! Shared fixtures for unit tests.

use alloc::vec;

use crate::matroid::Matroid;
use crate::set::{ElementId, ElementSet};

pub fn ids(list: &[u32]) -> ElementSet {
    list.iter().copied().map(ElementId).collect()
}

/// K4 on vertices 0..4 with the edge order 01, 12, 23, 02, 13, 03
/// (elements 0..6). {0,1,2} is the path 0-1-2-3 and {3,4,5} the tree
/// {02, 13, 03}; they are disjoint spanning trees.
pub fn k4() -> Matroid {
    Matroid::graphic(4, vec![(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)]).unwrap()
}

/// [I3 | I3]: columns e1, e2, e3, e1, e2, e3.
pub fn i3i3() -> Matroid {
    Matroid::linear_gf2(3, vec![1, 2, 4, 1, 2, 4]).unwrap()
}

/// [I4 | I4]: parallel pairs across the two halves.
pub fn i4i4() -> Matroid {
    Matroid::linear_gf2(4, vec![1, 2, 4, 8, 1, 2, 4, 8]).unwrap()
}

/// [I4 | 1100, 0110, 0011, 1000] — the right block is invertible but has
/// no parallel elements with the identity.
pub fn i4block() -> Matroid {
    Matroid::linear_gf2(4, vec![1, 2, 4, 8, 0b0011, 0b0110, 0b1100, 0b0001]).unwrap()
}
