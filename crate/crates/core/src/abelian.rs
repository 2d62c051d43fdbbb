//! The induced action on the abelianization `F/[F,F] ≅ Z^rank` and on its
//! reduction mod 2.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::automorphisms::{Automorphism, Endomorphism};
use crate::error::{Error, Result};
use crate::words::Word;

/// Exponent-sum vector of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|e| e % 2 == 0)
    }

    /// Gcd of the absolute values of the entries (0 for the zero vector).
    pub fn content(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |g, &e| num_integer::gcd(g, e.unsigned_abs()))
    }
}

/// Square integer matrix stored by columns; column `i` is the image of
/// the `i`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rank: usize,
    columns: Vec<IntVector>,
}

pub fn abelianize_word(w: &Word) -> IntVector {
    let mut v = vec![0i64; w.rank()];
    for l in w.letters() {
        v[l.index() - 1] += l.sign() as i64;
    }
    IntVector(v)
}

pub fn induced_matrix(f: &Endomorphism) -> IntMatrix {
    IntMatrix {
        rank: f.rank(),
        columns: f.images().iter().map(abelianize_word).collect(),
    }
}

impl IntMatrix {
    /// Panics unless `columns` is square.
    pub fn from_columns(columns: Vec<IntVector>) -> IntMatrix {
        let rank = columns.len();
        assert!(
            columns.iter().all(|c| c.len() == rank),
            "matrix must be square"
        );
        IntMatrix { rank, columns }
    }

    pub fn identity(rank: usize) -> IntMatrix {
        IntMatrix::scalar(rank, 1)
    }

    pub fn scalar(rank: usize, s: i64) -> IntMatrix {
        IntMatrix {
            rank,
            columns: (0..rank)
                .map(|i| {
                    let mut c = vec![0; rank];
                    c[i] = s;
                    IntVector(c)
                })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn columns(&self) -> &[IntVector] {
        &self.columns
    }

    /// Entry in 0-based `row`, `col`.
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns[col].0[row]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// Matrix product `self · other`, matching composition `self ∘ other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                IntVector(
                    (0..self.rank)
                        .map(|r| {
                            col.0
                                .iter()
                                .enumerate()
                                .map(|(k, &v)| self.get(r, k) * v)
                                .sum()
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(IntMatrix {
            rank: self.rank,
            columns,
        })
    }

    pub fn trace(&self) -> i64 {
        (0..self.rank).map(|i| self.get(i, i)).sum()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.rank;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_identity_mod2(&self) -> bool {
        (0..self.rank).all(|r| {
            (0..self.rank).all(|c| (self.get(r, c) - i64::from(r == c)).rem_euclid(2) == 0)
        })
    }

    /// JSON array of row arrays.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.rows()).expect("serializable")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Whether the involution `f` acts trivially on `A/2A`.
pub fn is_soft(f: &Automorphism) -> Result<bool> {
    if !f.is_involution() {
        return Err(Error::NotInvolution);
    }
    Ok(induced_matrix(f.forward()).is_identity_mod2())
}

/// Number of blocks `(rank - trace) / 2` of a soft involution.
pub fn block_count_from_trace(f: &Automorphism) -> Result<usize> {
    if !is_soft(f).map_err(|_| Error::NotSoftInvolution)? {
        return Err(Error::NotSoftInvolution);
    }
    let diff = f.rank() as i64 - induced_matrix(f.forward()).trace();
    if diff % 2 != 0 || diff < 0 {
        return Err(Error::Parity(diff));
    }
    Ok((diff / 2) as usize)
}
