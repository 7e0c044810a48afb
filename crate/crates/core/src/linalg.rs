//! Rank computation for the two linear representations: bit-packed
//! elimination over GF(2) and exact fraction elimination over Q.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;

pub type Rational = Ratio<BigInt>;

/// Rank of a collection of GF(2) column vectors, each packed into a `u64`
/// (bit r = row r). Incremental insertion into an echelon basis keyed by the
/// leading bit.
pub fn gf2_rank<I: IntoIterator<Item = u64>>(cols: I) -> u32 {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in cols {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = v;
                rank += 1;
                break;
            }
            v ^= basis[lead];
        }
    }
    rank
}

/// Rank of selected columns of a row-major rational matrix.
pub fn rational_rank(rows: &[Vec<Rational>], cols: &[usize]) -> u32 {
    // Work on the transposed selection: one Vec per chosen column.
    let mut vecs: Vec<Vec<Rational>> = cols
        .iter()
        .map(|&c| rows.iter().map(|row| row[c].clone()).collect())
        .collect();
    let height = rows.len();
    let mut rank = 0u32;
    let mut pivot_of_row: Vec<Option<usize>> = alloc::vec![None; height];
    for i in 0..vecs.len() {
        let mut r = 0;
        while r < height {
            if vecs[i][r].is_zero() {
                r += 1;
                continue;
            }
            match pivot_of_row[r] {
                Some(p) => {
                    let factor = &vecs[i][r] / &vecs[p][r];
                    let pivot_tail: Vec<Rational> = vecs[p][r..].to_vec();
                    for (target, pivot) in vecs[i][r..].iter_mut().zip(&pivot_tail) {
                        *target -= pivot * &factor;
                    }
                    r += 1;
                }
                None => {
                    pivot_of_row[r] = Some(i);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn gf2_rank_basics() {
        assert_eq!(gf2_rank([]), 0);
        assert_eq!(gf2_rank([0b001, 0b010, 0b100]), 3);
        // parallel columns
        assert_eq!(gf2_rank([0b001, 0b001]), 1);
        // 7 = 1 ^ 2 ^ 4: dependent triple plus itself
        assert_eq!(gf2_rank([0b001, 0b010, 0b100, 0b111]), 3);
        assert_eq!(gf2_rank([0b011, 0b110, 0b101]), 2);
        // zero vector contributes nothing
        assert_eq!(gf2_rank([0, 0b1]), 1);
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_rank_exact() {
        // [[1, 1/2, 3/2], [0, 1/3, 1/3]] — col2 = col0/? no: col2 = col0*3/2? check:
        // col2 = (3/2, 1/3); col0*(3/2) = (3/2, 0) no; col1+col0? (3/2, 1/3) = col0 + col1 ⇒ dependent triple.
        let rows = alloc::vec![
            alloc::vec![q(1, 1), q(1, 2), q(3, 2)],
            alloc::vec![q(0, 1), q(1, 3), q(1, 3)],
        ];
        assert_eq!(rational_rank(&rows, &[0]), 1);
        assert_eq!(rational_rank(&rows, &[0, 1]), 2);
        assert_eq!(rational_rank(&rows, &[0, 1, 2]), 2);
        assert_eq!(rational_rank(&rows, &[]), 0);
        // scalar multiples collapse
        let rows2 = alloc::vec![alloc::vec![q(2, 3), q(4, 3)], alloc::vec![q(1, 5), q(2, 5)]];
        assert_eq!(rational_rank(&rows2, &[0, 1]), 1);
        let one = Rational::one();
        assert!(one.is_one());
    }
}
