//! Shift-invariant directed categories with a precomputed composition table.
//!
//! Both the B-side and the A-side categories of a circuit only depend on the
//! difference `k - j` of their objects, so bases are stored per difference
//! and the composition table is keyed by the pair of differences.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graded<T> {
    pub value: T,
    pub degree: i64,
}

/// A signed basis element, `None` standing for zero.
pub type Product = Option<(i8, usize)>;

#[derive(Debug, Clone)]
pub struct DirectedCategory<T> {
    n: usize,
    homs: Vec<Vec<Graded<T>>>,
    index: Vec<HashMap<T, usize>>,
    // table[w0][w1][left * dim(w0) + right], for w0 + w1 < n
    table: Vec<Vec<Vec<Product>>>,
}

/// A failure of `(z y) x = z (y x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityWitness {
    pub diffs: (usize, usize, usize),
    pub basis: (usize, usize, usize),
    pub left_first: Product,
    pub right_first: Product,
}

impl<T: Clone + Eq + Hash> DirectedCategory<T> {
    /// `hom(w)` lists the basis of any `Hom(j, j + w)`; `compose(left, right)`
    /// returns the signed composite `left ∘ right` or `None` for zero.
    pub fn build<H, C>(n: usize, hom: H, compose: C) -> Result<Self>
    where
        H: Fn(usize) -> Result<Vec<Graded<T>>>,
        C: Fn(&T, usize, &T, usize) -> Result<Option<(i8, T)>>,
    {
        if n == 0 {
            return Err(Error::out_of_range("a directed category needs n >= 1"));
        }
        let homs: Vec<Vec<Graded<T>>> = (0..n).map(&hom).collect::<Result<_>>()?;
        let index: Vec<HashMap<T, usize>> = homs
            .iter()
            .map(|basis| {
                basis
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (g.value.clone(), i))
                    .collect()
            })
            .collect();
        for (w, basis) in homs.iter().enumerate() {
            if index[w].len() != basis.len() {
                return Err(Error::WrongHom {
                    what: format!("repeated basis element in difference {w}"),
                });
            }
        }

        let mut table = Vec::with_capacity(n);
        for w0 in 0..n {
            let mut row = Vec::with_capacity(n - w0);
            for w1 in 0..n - w0 {
                let target = &index[w0 + w1];
                let mut cell = Vec::with_capacity(homs[w0].len() * homs[w1].len());
                for left in &homs[w1] {
                    for right in &homs[w0] {
                        let product = match compose(&left.value, w1, &right.value, w0)? {
                            None => None,
                            Some((sign, value)) => {
                                let idx = target.get(&value).ok_or_else(|| Error::WrongHom {
                                    what: format!(
                                        "composite of differences {w1} and {w0} is not a basis element"
                                    ),
                                })?;
                                Some((sign, *idx))
                            }
                        };
                        cell.push(product);
                    }
                }
                row.push(cell);
            }
            table.push(row);
        }
        Ok(DirectedCategory {
            n,
            homs,
            index,
            table,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, j: usize, k: usize) -> Result<()> {
        if j >= self.n || k >= self.n {
            return Err(Error::out_of_range(format!(
                "objects ({j}, {k}) with n = {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Basis of `Hom(j, k)`; empty when `j > k`.
    pub fn hom(&self, j: usize, k: usize) -> Result<&[Graded<T>]> {
        self.check(j, k)?;
        Ok(if j > k { &[] } else { &self.homs[k - j] })
    }

    pub fn hom_by_diff(&self, w: usize) -> &[Graded<T>] {
        &self.homs[w]
    }

    pub fn position(&self, w: usize, value: &T) -> Option<usize> {
        self.index.get(w)?.get(value).copied()
    }

    /// `left ∘ right` for `right` in `Hom(i, j)` and `left` in `Hom(j, k)`.
    pub fn compose(
        &self,
        i: usize,
        j: usize,
        k: usize,
        left: usize,
        right: usize,
    ) -> Result<Product> {
        self.check(i, k)?;
        self.check(j, j)?;
        if i > j || j > k {
            return Err(Error::BadOrder {
                j: i as i64,
                k: k as i64,
            });
        }
        Ok(self.compose_diff(j - i, k - j, left, right))
    }

    pub fn compose_diff(&self, w0: usize, w1: usize, left: usize, right: usize) -> Product {
        self.table[w0][w1][left * self.homs[w0].len() + right]
    }

    /// Number of composable basis pairs over all object triples `i <= j <= k`.
    pub fn composable_pairs(&self) -> u64 {
        let mut total = 0u64;
        for w0 in 0..self.n {
            for w1 in 0..self.n - w0 {
                let copies = (self.n - w0 - w1) as u64;
                total += copies * (self.homs[w0].len() * self.homs[w1].len()) as u64;
            }
        }
        total
    }

    /// Checks every composable triple, returning the first failure.
    pub fn check_associativity(&self) -> std::result::Result<u64, AssociativityWitness> {
        let mut checked = 0u64;
        for w0 in 0..self.n {
            for w1 in 0..self.n - w0 {
                for w2 in 0..self.n - w0 - w1 {
                    for z in 0..self.homs[w2].len() {
                        for y in 0..self.homs[w1].len() {
                            for x in 0..self.homs[w0].len() {
                                let left_first =
                                    self.compose_diff(w1, w2, z, y).and_then(|(s, zy)| {
                                        self.compose_diff(w0, w1 + w2, zy, x)
                                            .map(|(t, r)| (s * t, r))
                                    });
                                let right_first =
                                    self.compose_diff(w0, w1, y, x).and_then(|(s, yx)| {
                                        self.compose_diff(w0 + w1, w2, z, yx)
                                            .map(|(t, r)| (s * t, r))
                                    });
                                if left_first != right_first {
                                    return Err(AssociativityWitness {
                                        diffs: (w0, w1, w2),
                                        basis: (x, y, z),
                                        left_first,
                                        right_first,
                                    });
                                }
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(checked)
    }

    /// Checks that identities act as units on both sides.
    pub fn check_unital(&self) -> bool {
        if self.homs[0].len() != 1 {
            return false;
        }
        (0..self.n).all(|w| {
            (0..self.homs[w].len()).all(|x| {
                self.compose_diff(w, 0, 0, x) == Some((1, x))
                    && self.compose_diff(0, w, x, 0) == Some((1, x))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // polynomial ring in one variable, basis t^w in difference w
    fn line(n: usize) -> DirectedCategory<u32> {
        DirectedCategory::build(
            n,
            |w| {
                Ok(vec![Graded {
                    value: w as u32,
                    degree: 0,
                }])
            },
            |l, _, r, _| Ok(Some((1, l + r))),
        )
        .unwrap()
    }

    #[test]
    fn table_shape() {
        let cat = line(4);
        assert_eq!(cat.hom(0, 3).unwrap().len(), 1);
        assert!(cat.hom(3, 0).unwrap().is_empty());
        assert_eq!(cat.compose(0, 1, 3, 0, 0).unwrap(), Some((1, 0)));
        assert!(cat.hom(0, 4).is_err());
        assert!(cat.compose(2, 1, 3, 0, 0).is_err());
        assert!(cat.check_unital());
        assert_eq!(cat.check_associativity(), Ok(20));
    }

    #[test]
    fn detects_non_associativity() {
        let cat: DirectedCategory<u32> = DirectedCategory::build(
            3,
            |w| {
                Ok(vec![Graded {
                    value: w as u32,
                    degree: 0,
                }])
            },
            |l, wl, r, wr| {
                let sign = if *l == 1 && *r == 1 && wl == 1 && wr == 1 {
                    -1
                } else {
                    1
                };
                Ok(Some((sign, l + r)))
            },
        )
        .unwrap();
        assert!(cat.check_associativity().is_ok());

        let bad: DirectedCategory<u32> = DirectedCategory::build(
            4,
            |w| {
                Ok(vec![Graded {
                    value: w as u32,
                    degree: 0,
                }])
            },
            |l, _, r, _| {
                Ok(if *l == 2 && *r == 1 {
                    None
                } else {
                    Some((1, l + r))
                })
            },
        )
        .unwrap();
        assert!(bad.check_associativity().is_err());
    }

    #[test]
    fn rejects_foreign_composites() {
        let result: Result<DirectedCategory<u32>> = DirectedCategory::build(
            2,
            |w| {
                Ok(vec![Graded {
                    value: w as u32,
                    degree: 0,
                }])
            },
            |l, _, r, _| Ok(Some((1, l + r + 7))),
        );
        assert!(matches!(result, Err(Error::WrongHom { .. })));
    }
}
