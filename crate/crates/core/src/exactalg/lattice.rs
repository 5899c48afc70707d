//! Integer lattices in Z^k kept in Hermite normal form.

use std::fmt;

use crate::error::{Error, Result};

/// A sublattice of Z^k with canonical HNF basis: rows in echelon form,
/// positive pivots, entries above each pivot reduced into `0..pivot`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntLattice {
    ambient_rank: usize,
    basis: Vec<Vec<i64>>,
}

impl IntLattice {
    pub fn zero(k: usize) -> Self {
        IntLattice {
            ambient_rank: k,
            basis: Vec::new(),
        }
    }

    pub fn full(k: usize) -> Self {
        let basis = (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                e
            })
            .collect();
        IntLattice {
            ambient_rank: k,
            basis,
        }
    }

    /// The lattice generated by `rows`, each of length `k`.
    pub fn from_rows(k: usize, rows: &[Vec<i64>]) -> Result<Self> {
        hnf(k, rows)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Whether `w` pairs to zero with every basis vector.
    pub fn is_orthogonal_to(&self, w: &[i64]) -> bool {
        self.basis.iter().all(|b| dot(b, w) == 0)
    }

    /// Membership in the lattice itself (not its rational span).
    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        let mut r: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for row in &self.basis {
            let (piv, &pv) = row
                .iter()
                .enumerate()
                .find(|(_, &x)| x != 0)
                .expect("basis rows are nonzero");
            let pv = pv as i128;
            if r[piv] % pv != 0 {
                return false;
            }
            let q = r[piv] / pv;
            for (x, &b) in r.iter_mut().zip(row) {
                *x -= q * b as i128;
            }
        }
        r.iter().all(|&x| x == 0)
    }

    pub fn is_saturated(&self) -> bool {
        saturate(self) == *self
    }

    pub fn saturate(&self) -> IntLattice {
        saturate(self)
    }

    pub fn orthogonal(&self) -> IntLattice {
        integer_orthogonal(self)
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "{{0}}");
        }
        write!(f, "span_Z{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Unimodular row reduction restricted to the first `cols` columns. Rows are
/// permuted and combined over Z; on return the first `rank` rows are in HNF on
/// those columns and every later row is zero there. Returns `rank`.
fn hermite_reduce(rows: &mut [Vec<i128>], cols: usize) -> usize {
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        // Euclid across rows r.. until a single nonzero entry remains in `col`.
        loop {
            let pick = (r..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].abs());
            let Some(pick) = pick else { break };
            rows.swap(r, pick);
            let pv = rows[r][col];
            let mut done = true;
            for i in r + 1..rows.len() {
                let c = rows[i][col];
                if c == 0 {
                    continue;
                }
                let q = c.div_euclid(pv);
                let pivot_row = rows[r].clone();
                for (x, b) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= q * b;
                }
                if rows[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col] == 0 {
            continue;
        }
        if rows[r][col] < 0 {
            for x in rows[r].iter_mut() {
                *x = -*x;
            }
        }
        let pivot_row = rows[r].clone();
        let pv = pivot_row[col];
        for row in rows[..r].iter_mut() {
            let q = row[col].div_euclid(pv);
            if q != 0 {
                for (x, b) in row.iter_mut().zip(&pivot_row) {
                    *x -= q * b;
                }
            }
        }
        r += 1;
    }
    r
}

fn to_i64(v: &[i128]) -> Vec<i64> {
    v.iter()
        .map(|&x| i64::try_from(x).expect("lattice entry overflowed i64"))
        .collect()
}

/// Hermite normal form of the row lattice of `rows`.
pub fn hnf(k: usize, rows: &[Vec<i64>]) -> Result<IntLattice> {
    for r in rows {
        if r.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: r.len(),
            });
        }
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rank = hermite_reduce(&mut m, k);
    Ok(IntLattice {
        ambient_rank: k,
        basis: m[..rank].iter().map(|r| to_i64(r)).collect(),
    })
}

/// `{ w in Z^k : <w, l> = 0 for all l in L }`, always saturated.
///
/// Computed as the integer kernel of the basis matrix: reduce the rows of
/// `[B^T | I_k]` on the `B^T` block; rows whose `B^T` part vanishes carry a
/// Z-basis of the kernel in their identity part.
pub fn integer_orthogonal(l: &IntLattice) -> IntLattice {
    let k = l.ambient_rank;
    let r = l.rank();
    let mut m: Vec<Vec<i128>> = (0..k)
        .map(|i| {
            let mut row: Vec<i128> = l.basis.iter().map(|b| b[i] as i128).collect();
            row.extend((0..k).map(|j| i128::from(i == j)));
            row
        })
        .collect();
    let pivots = hermite_reduce(&mut m, r);
    let kernel: Vec<Vec<i64>> = m[pivots..].iter().map(|row| to_i64(&row[r..])).collect();
    hnf(k, &kernel).expect("kernel rows have length k")
}

/// Smallest primitive lattice containing `l`: its rational span intersected
/// with Z^k.
pub fn saturate(l: &IntLattice) -> IntLattice {
    integer_orthogonal(&integer_orthogonal(l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(k: usize, rows: &[&[i64]]) -> IntLattice {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntLattice::from_rows(k, &rows).unwrap()
    }

    #[test]
    fn hnf_examples() {
        let l = lat(2, &[&[2, 0], &[0, 1]]);
        assert_eq!(l.basis(), &[vec![2, 0], vec![0, 1]]);
        assert_eq!(l.rank(), 2);

        let l = lat(2, &[&[1, 1], &[1, 1]]);
        assert_eq!(l.basis(), &[vec![1, 1]]);

        assert_eq!(lat(3, &[]).rank(), 0);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let l = lat(2, &[&[3, 5], &[0, 2]]);
        assert_eq!(l.basis(), &[vec![3, 1], vec![0, 2]]);
        let l = lat(2, &[&[-4, 6], &[6, -9]]);
        // gcd structure: both rows are multiples of (2,-3)
        assert_eq!(l.basis(), &[vec![2, -3]]);
    }

    #[test]
    fn hnf_rejects_ragged_rows() {
        assert!(IntLattice::from_rows(2, &[vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(lat(2, &[&[2, 0], &[0, 1]]).saturate(), IntLattice::full(2));
        assert_eq!(lat(2, &[&[1, 1]]).saturate(), lat(2, &[&[1, 1]]));
        assert_eq!(lat(2, &[&[2, 2]]).saturate(), lat(2, &[&[1, 1]]));
    }

    #[test]
    fn saturate_needs_more_than_per_vector_content() {
        // each generator is primitive but together they span an index-2 sublattice
        let l = lat(3, &[&[1, 1, 0], &[1, -1, 0]]);
        assert!(!l.is_saturated());
        assert_eq!(l.saturate(), lat(3, &[&[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn orthogonal_examples() {
        assert_eq!(lat(2, &[&[0, 1]]).orthogonal(), lat(2, &[&[1, 0]]));
        assert_eq!(IntLattice::zero(3).orthogonal(), IntLattice::full(3));
        assert_eq!(IntLattice::full(3).orthogonal(), IntLattice::zero(3));
        let o = lat(3, &[&[2, 3, 0]]).orthogonal();
        assert_eq!(o.rank(), 2);
        assert!(o.basis().iter().all(|b| dot(b, &[2, 3, 0]) == 0));
        assert!(o.contains(&[3, -2, 0]));
    }

    #[test]
    fn contains_respects_index() {
        let l = lat(2, &[&[2, 0], &[0, 1]]);
        assert!(l.contains(&[4, 7]));
        assert!(!l.contains(&[1, 0]));
    }
}
