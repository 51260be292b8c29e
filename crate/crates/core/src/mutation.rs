//! Gram matrices of exceptional collections and the braid group action on
//! them by mutations.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::balgebra::{grading, monomials_of_weight};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Upper unitriangular matrix of Euler pairings `chi(E_j, E_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GramMatrix {
    rows: Vec<Vec<i64>>,
}

impl GramMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<GramMatrix> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n || row[i] != 1 || row[..i].iter().any(|&x| x != 0) {
                return Err(Error::NotUnitriangular);
            }
        }
        Ok(GramMatrix { rows })
    }

    pub fn identity(n: usize) -> GramMatrix {
        GramMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, j: usize, k: usize) -> i64 {
        self.rows[j][k]
    }

    /// `B^T G B` where column `x` of `B` is `basis[x]` in old coordinates.
    fn change_basis(&self, basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = self.size();
        let gb: Vec<Vec<i64>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|y| (0..n).map(|t| self.rows[r][t] * basis[y][t]).sum())
                    .collect()
            })
            .collect();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..n).map(|r| basis[x][r] * gb[r][y]).sum())
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Euler,
    Poincare,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "euler" => Ok(Mode::Euler),
            "poincare" => Ok(Mode::Poincare),
            other => Err(Error::Parse(format!(
                "unknown mode {other:?}, expected euler or poincare"
            ))),
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::out_of_range("a collection needs n >= 1"));
    }
    Ok(())
}

/// Euler pairings of `R(0), ..., R(n-1)`: signed count of Hom basis
/// elements by degree parity.
pub fn gram_of_collection(c: &Circuit, n: usize) -> Result<GramMatrix> {
    check_size(n)?;
    let by_diff: Vec<i64> = (0..n)
        .map(|w| {
            monomials_of_weight(c, w as u64)
                .iter()
                .map(|x| {
                    if grading(c, x).degree.rem_euclid(2) == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum()
        })
        .collect();
    Ok(GramMatrix {
        rows: (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| if k < j { 0 } else { by_diff[k - j] })
                    .collect()
            })
            .collect(),
    })
}

/// Laurent polynomial in `t`, exponent to coefficient.
pub type Poincare = BTreeMap<i64, i64>;

/// Graded dimensions `sum_x t^deg(x)` of each Hom space.
pub fn poincare_of_collection(c: &Circuit, n: usize) -> Result<Vec<Vec<Poincare>>> {
    check_size(n)?;
    let by_diff: Vec<Poincare> = (0..n)
        .map(|w| {
            let mut p = Poincare::new();
            for x in monomials_of_weight(c, w as u64) {
                *p.entry(grading(c, &x).degree).or_default() += 1;
            }
            p
        })
        .collect();
    Ok((0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    if k < j {
                        Poincare::new()
                    } else {
                        by_diff[k - j].clone()
                    }
                })
                .collect()
        })
        .collect())
}

pub fn format_poincare(p: &Poincare) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .map(|(&e, &c)| match (e, c) {
            (0, c) => c.to_string(),
            (e, 1) => format!("t^{e}"),
            (e, c) => format!("{c}t^{e}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn check_position(g: &GramMatrix, i: usize) -> Result<usize> {
    if i == 0 || i >= g.size() {
        return Err(Error::BadPosition {
            position: i,
            size: g.size(),
        });
    }
    Ok(i - 1)
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|t| i64::from(t == i)).collect()
}

/// Left mutation of the pair at 1-based positions `(i, i + 1)`: the pair
/// `(E, F)` becomes `(L_E F, E)` with `[L_E F] = chi(E, F) [E] - [F]`.
pub fn mutate_left(g: &GramMatrix, i: usize) -> Result<GramMatrix> {
    let p = check_position(g, i)?;
    let n = g.size();
    let c = g.get(p, p + 1);
    let mut basis: Vec<Vec<i64>> = (0..n).map(|t| unit(n, t)).collect();
    basis[p] = (0..n)
        .map(|t| c * i64::from(t == p) - i64::from(t == p + 1))
        .collect();
    basis[p + 1] = unit(n, p);
    GramMatrix::new(g.change_basis(&basis))
}

/// Inverse of [`mutate_left`]: `(E, F)` becomes `(F, R_F E)` with
/// `[R_F E] = chi(E, F) [F] - [E]`.
pub fn mutate_right(g: &GramMatrix, i: usize) -> Result<GramMatrix> {
    let p = check_position(g, i)?;
    let n = g.size();
    let c = g.get(p, p + 1);
    let mut basis: Vec<Vec<i64>> = (0..n).map(|t| unit(n, t)).collect();
    basis[p] = unit(n, p + 1);
    basis[p + 1] = (0..n)
        .map(|t| c * i64::from(t == p + 1) - i64::from(t == p))
        .collect();
    GramMatrix::new(g.change_basis(&basis))
}

/// Positions of the braid word `(s1)(s2 s1)...(s_{n-1} ... s1)` in the
/// order they are applied.
pub fn half_twist_word(n: usize) -> Vec<usize> {
    (1..n).flat_map(|len| (1..=len).rev()).collect()
}

pub fn half_twist(g: &GramMatrix) -> GramMatrix {
    half_twist_word(g.size())
        .into_iter()
        .fold(g.clone(), |acc, i| {
            mutate_left(&acc, i).expect("braid word positions are in range")
        })
}

/// Whether `D a D = b` for some diagonal `D` with entries `±1`.
pub fn equal_up_to_signs(a: &GramMatrix, b: &GramMatrix) -> bool {
    let n = a.size();
    if b.size() != n {
        return false;
    }
    for j in 0..n {
        for k in 0..n {
            if a.get(j, k).abs() != b.get(j, k).abs() {
                return false;
            }
        }
    }
    // two-colour the support graph: an edge flips colour iff the signs differ
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            #[allow(clippy::needless_range_loop)]
            for v in 0..n {
                let (x, y) = if u < v { (u, v) } else { (v, u) };
                if u == v || a.get(x, y) == 0 {
                    continue;
                }
                let want = cu ^ (a.get(x, y) != b.get(x, y));
                match colour[v] {
                    None => {
                        colour[v] = Some(want);
                        queue.push_back(v);
                    }
                    Some(cv) if cv != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub gram: GramMatrix,
    pub twisted: GramMatrix,
    pub dual: GramMatrix,
    pub holds: bool,
}

pub fn koszul_duality_report(c: &Circuit, n: usize) -> Result<DualityReport> {
    let gram = gram_of_collection(c, n)?;
    let twisted = half_twist(&gram);
    let dual = gram_of_collection(&c.negate(), n)?;
    let holds = equal_up_to_signs(&twisted, &dual);
    Ok(DualityReport {
        gram,
        twisted,
        dual,
        holds,
    })
}

/// The half-twisted Gram matrix of `c` agrees with that of `-c` up to
/// signs of the objects.
pub fn check_koszul_duality(c: &Circuit, n: usize) -> bool {
    koszul_duality_report(c, n)
        .map(|r| r.holds)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::validate_circuit;
    use proptest::prelude::*;

    fn g(rows: &[&[i64]]) -> GramMatrix {
        GramMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn c(a: &[i64]) -> Circuit {
        validate_circuit(a, &vec![0; a.len()]).unwrap()
    }

    #[test]
    fn grams() {
        assert_eq!(
            gram_of_collection(&c(&[1, 1, -2]), 2).unwrap(),
            g(&[&[1, 2], &[0, 1]])
        );
        assert_eq!(
            gram_of_collection(&c(&[-1, -1, 2]), 2).unwrap(),
            g(&[&[1, -2], &[0, 1]])
        );
        assert_eq!(
            gram_of_collection(&c(&[1, 2, 3, -1, -5]), 5)
                .unwrap()
                .get(0, 2),
            1
        );
        assert!(gram_of_collection(&c(&[1, 1, -2]), 0).is_err());
    }

    #[test]
    fn poincare_series() {
        let p = poincare_of_collection(&c(&[1, 2, 3, -1, -5]), 3).unwrap();
        assert_eq!(format_poincare(&p[0][2]), "2 + t^1");
        assert_eq!(format_poincare(&p[2][0]), "0");
    }

    #[test]
    fn rejects_non_unitriangular() {
        assert_eq!(
            GramMatrix::new(vec![vec![1, 0], vec![1, 1]]),
            Err(Error::NotUnitriangular)
        );
        assert_eq!(GramMatrix::new(vec![vec![2]]), Err(Error::NotUnitriangular));
    }

    #[test]
    fn two_object_mutations() {
        let beilinson = g(&[&[1, 2], &[0, 1]]);
        assert_eq!(mutate_left(&beilinson, 1).unwrap(), beilinson);
        assert_eq!(
            mutate_left(&GramMatrix::identity(2), 1).unwrap(),
            GramMatrix::identity(2)
        );
        for k in -6..=6 {
            let m = g(&[&[1, k], &[0, 1]]);
            assert_eq!(mutate_left(&m, 1).unwrap(), m);
        }
        assert_eq!(
            mutate_right(&mutate_left(&beilinson, 1).unwrap(), 1).unwrap(),
            beilinson
        );
        assert_eq!(
            mutate_right(&GramMatrix::identity(2), 1).unwrap(),
            GramMatrix::identity(2)
        );
        assert_eq!(
            mutate_left(&beilinson, 2),
            Err(Error::BadPosition {
                position: 2,
                size: 2
            })
        );
        assert!(mutate_right(&beilinson, 0).is_err());
    }

    #[test]
    fn half_twists() {
        assert_eq!(
            half_twist(&GramMatrix::identity(1)),
            GramMatrix::identity(1)
        );
        let beilinson = g(&[&[1, 2], &[0, 1]]);
        assert_eq!(half_twist(&beilinson), beilinson);
        assert_eq!(half_twist_word(4), vec![1, 2, 1, 3, 2, 1]);
    }

    #[test]
    fn sign_equivalence() {
        let a = g(&[&[1, 2], &[0, 1]]);
        let b = g(&[&[1, -2], &[0, 1]]);
        assert!(equal_up_to_signs(&a, &b));
        // a triangle with an odd number of sign flips is not a conjugation
        let t = g(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]);
        let u = g(&[&[1, -1, 1], &[0, 1, 1], &[0, 0, 1]]);
        assert!(!equal_up_to_signs(&t, &u));
        let v = g(&[&[1, -1, -1], &[0, 1, 1], &[0, 0, 1]]);
        assert!(equal_up_to_signs(&t, &v));
    }

    #[test]
    fn duality_examples() {
        assert!(check_koszul_duality(&c(&[1, 1, -2]), 2));
        assert!(check_koszul_duality(&c(&[2, 3, -5]), 1));
        assert!(check_koszul_duality(&c(&[2, 3, -5]), 5));
        assert!(check_koszul_duality(&c(&[1, 1, 1, -3]), 3));
        assert!(check_koszul_duality(&c(&[1, 2, 3, -1, -5]), 5));
    }

    fn arb_gram(max: usize) -> impl Strategy<Value = GramMatrix> {
        (2..=max).prop_flat_map(|n| {
            prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
                GramMatrix::new(
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .map(|k| match k.cmp(&j) {
                                    std::cmp::Ordering::Less => 0,
                                    std::cmp::Ordering::Equal => 1,
                                    std::cmp::Ordering::Greater => v[j * n + k],
                                })
                                .collect()
                        })
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn left_right_inverse(m in arb_gram(6), seed in 0usize..100) {
            let i = 1 + seed % (m.size() - 1);
            let l = mutate_left(&m, i).unwrap();
            prop_assert_eq!(mutate_right(&l, i).unwrap(), m.clone());
            prop_assert_eq!(mutate_left(&mutate_right(&m, i).unwrap(), i).unwrap(), m);
        }

        #[test]
        fn braid_relation(m in arb_gram(6), seed in 0usize..100) {
            prop_assume!(m.size() >= 3);
            let i = 1 + seed % (m.size() - 2);
            let apply = |word: &[usize]| word.iter().fold(m.clone(), |acc, &p| mutate_left(&acc, p).unwrap());
            prop_assert_eq!(apply(&[i, i + 1, i]), apply(&[i + 1, i, i + 1]));
        }
    }
}
