//! The bigraded super-symmetric algebra of a circuit and the B-side directed
//! category built from it.
//!
//! Generator `v_i` has weight `|a_i|` and degree `2 nu_i` (even) when
//! `a_i > 0`, `2 nu_i + 1` (odd) when `a_i < 0`. `Hom(R(j), R(k))` has the
//! monomials of weight `k - j` as basis and composition is multiplication.

use serde::Serialize;
use serde_json::{json, Value};

use crate::circuit::Circuit;
use crate::directed::{DirectedCategory, Graded};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Bigrading {
    pub degree: i64,
    pub weight: u64,
}

/// Product of two monomials. `sign == 0` marks the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub sign: i8,
    pub monomial: Monomial,
}

impl Monomial {
    pub fn identity(len: usize) -> Monomial {
        Monomial {
            exponents: vec![0; len],
        }
    }

    pub fn generator(len: usize, i: usize) -> Monomial {
        let mut exponents = vec![0; len];
        exponents[i] = 1;
        Monomial { exponents }
    }

    pub fn from_exponents(exponents: &[u32]) -> Monomial {
        Monomial {
            exponents: exponents.to_vec(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `v0^2*v3`-style name; `1` for the identity.
    pub fn name(&self, letter: char) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match e {
                1 => format!("{letter}{i}"),
                _ => format!("{letter}{i}^{e}"),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl SignedMonomial {
    pub fn zero(len: usize) -> SignedMonomial {
        SignedMonomial {
            sign: 0,
            monomial: Monomial::identity(len),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

/// Checks length and the exterior caps on odd generators.
pub fn check_monomial(c: &Circuit, x: &Monomial) -> Result<()> {
    if x.len() != c.len() {
        return Err(Error::WrongHom {
            what: format!(
                "monomial has {} exponents, circuit has {}",
                x.len(),
                c.len()
            ),
        });
    }
    for (index, &e) in x.exponents.iter().enumerate() {
        if c.is_odd(index) && e > 1 {
            return Err(Error::ExteriorOverflow { index, exponent: e });
        }
    }
    Ok(())
}

pub fn grading(c: &Circuit, x: &Monomial) -> Bigrading {
    let mut degree = 0i64;
    let mut weight = 0u64;
    for (i, &e) in x.exponents.iter().enumerate() {
        degree += c.degree_of(i) * e as i64;
        weight += c.weight_of(i) as u64 * e as u64;
    }
    Bigrading { degree, weight }
}

pub fn odd_count(c: &Circuit, x: &Monomial) -> u32 {
    x.exponents
        .iter()
        .enumerate()
        .filter(|(i, _)| c.is_odd(*i))
        .map(|(_, &e)| e)
        .sum()
}

/// Every monomial of weight `w`, in descending lexicographic order of
/// exponent vectors (so `v0^2` comes before `v0*v3` before `v1`).
pub fn monomials_of_weight(c: &Circuit, w: u64) -> Vec<Monomial> {
    let weights: Vec<u64> = (0..c.len()).map(|i| c.weight_of(i) as u64).collect();
    let caps: Vec<u64> = (0..c.len())
        .map(|i| if c.is_odd(i) { 1 } else { u64::MAX })
        .collect();
    let mut out = Vec::new();
    let mut current = vec![0u32; c.len()];
    knapsack(&weights, &caps, 0, w, &mut current, &mut out);
    out
}

fn knapsack(
    weights: &[u64],
    caps: &[u64],
    i: usize,
    remaining: u64,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if i == weights.len() {
        if remaining == 0 {
            out.push(Monomial {
                exponents: current.clone(),
            });
        }
        return;
    }
    let top = (remaining / weights[i]).min(caps[i]);
    for e in (0..=top).rev() {
        current[i] = e as u32;
        knapsack(
            weights,
            caps,
            i + 1,
            remaining - e * weights[i],
            current,
            out,
        );
    }
    current[i] = 0;
}

/// `x * y` with the Koszul sign for moving the odd generators of `y` past
/// those of `x` into ascending generator order.
pub fn multiply(c: &Circuit, x: &Monomial, y: &Monomial) -> SignedMonomial {
    let len = c.len();
    let mut inversions = 0u32;
    let mut odd_in_x_after = 0u32;
    // walk from the top index down, counting odd x generators above each odd y
    for i in (0..len).rev() {
        if !c.is_odd(i) {
            continue;
        }
        if x.exponents[i] > 0 && y.exponents[i] > 0 {
            return SignedMonomial::zero(len);
        }
        if y.exponents[i] > 0 {
            inversions += odd_in_x_after;
        }
        odd_in_x_after += x.exponents[i];
    }
    let exponents = x
        .exponents
        .iter()
        .zip(&y.exponents)
        .map(|(a, b)| a + b)
        .collect();
    SignedMonomial {
        sign: if inversions.is_multiple_of(2) { 1 } else { -1 },
        monomial: Monomial { exponents },
    }
}

/// Basis of `Hom(R(j), R(k))` with gradings.
pub fn hom_basis(c: &Circuit, n: usize, j: usize, k: usize) -> Result<Vec<(Monomial, Bigrading)>> {
    if j >= n || k >= n {
        return Err(Error::out_of_range(format!(
            "objects ({j}, {k}) with n = {n}"
        )));
    }
    if j > k {
        return Ok(Vec::new());
    }
    Ok(monomials_of_weight(c, (k - j) as u64)
        .into_iter()
        .map(|x| {
            let g = grading(c, &x);
            (x, g)
        })
        .collect())
}

/// The B-side directed category on `R(0), ..., R(n-1)`.
#[derive(Debug, Clone)]
pub struct BCategory {
    circuit: Circuit,
    cat: DirectedCategory<Monomial>,
}

pub fn build_bcategory(c: &Circuit, n: usize) -> Result<BCategory> {
    let cat = DirectedCategory::build(
        n,
        |w| {
            Ok(monomials_of_weight(c, w as u64)
                .into_iter()
                .map(|x| {
                    let degree = grading(c, &x).degree;
                    Graded { value: x, degree }
                })
                .collect())
        },
        |left, _, right, _| {
            let p = multiply(c, left, right);
            Ok(if p.is_zero() {
                None
            } else {
                Some((p.sign, p.monomial))
            })
        },
    )?;
    Ok(BCategory {
        circuit: c.clone(),
        cat,
    })
}

impl BCategory {
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn n(&self) -> usize {
        self.cat.n()
    }

    pub fn category(&self) -> &DirectedCategory<Monomial> {
        &self.cat
    }

    pub fn hom(&self, j: usize, k: usize) -> Result<&[Graded<Monomial>]> {
        self.cat.hom(j, k)
    }

    pub fn to_json(&self) -> Value {
        let n = self.n();
        let mut homs = Vec::new();
        let mut compositions = Vec::new();
        for j in 0..n {
            for k in j..n {
                let basis: Vec<Value> = self
                    .cat
                    .hom_by_diff(k - j)
                    .iter()
                    .map(|g| {
                        json!({
                            "exp": g.value.exponents,
                            "deg": g.degree,
                            "wt": k - j,
                        })
                    })
                    .collect();
                homs.push(json!({ "src": j, "dst": k, "basis": basis }));
            }
        }
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let rights = self.cat.hom_by_diff(j - i);
                    let lefts = self.cat.hom_by_diff(k - j);
                    let targets = self.cat.hom_by_diff(k - i);
                    for (l, left) in lefts.iter().enumerate() {
                        for (r, right) in rights.iter().enumerate() {
                            let (sign, result) = match self.cat.compose_diff(j - i, k - j, l, r) {
                                Some((s, idx)) => (s, json!(targets[idx].value.exponents)),
                                None => (0, Value::Null),
                            };
                            compositions.push(json!({
                                "i": i,
                                "j": j,
                                "k": k,
                                "left": left.value.exponents,
                                "right": right.value.exponents,
                                "sign": sign,
                                "result": result,
                            }));
                        }
                    }
                }
            }
        }
        json!({
            "circuit": self.circuit.to_string(),
            "objects": n,
            "homs": homs,
            "compositions": compositions,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub generator: usize,
    pub label: String,
}

/// Single-generator morphisms `v_r : R(i) -> R(i + |a_r|)`, sorted by
/// generator then source.
pub fn quiver(c: &Circuit, n: usize) -> Result<Vec<Arrow>> {
    if n == 0 {
        return Err(Error::out_of_range("a quiver needs n >= 1"));
    }
    let mut arrows = Vec::new();
    for r in 0..c.len() {
        let step = c.weight_of(r) as usize;
        for source in 0..n {
            let target = source + step;
            if target >= n {
                break;
            }
            arrows.push(Arrow {
                source,
                target,
                generator: r,
                label: format!("v{r}"),
            });
        }
    }
    Ok(arrows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::validate_circuit;
    use proptest::prelude::*;

    fn c(a: &[i64]) -> Circuit {
        validate_circuit(a, &vec![0; a.len()]).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn gradings() {
        let five = c(&[1, 2, 3, -1, -5]);
        assert_eq!(
            grading(&five, &mono(&[0, 0, 0, 1, 0])),
            Bigrading {
                degree: 1,
                weight: 1
            }
        );
        assert_eq!(
            grading(&c(&[2, 3, -5]), &mono(&[2, 0, 0])),
            Bigrading {
                degree: 0,
                weight: 4
            }
        );
        let charged = validate_circuit(&[2, 3, -5], &[1, 0, -1]).unwrap();
        assert_eq!(
            grading(&charged, &mono(&[1, 0, 1])),
            Bigrading {
                degree: 1,
                weight: 7
            }
        );
    }

    #[test]
    fn weight_enumeration() {
        assert_eq!(
            monomials_of_weight(&c(&[1, 1, -2]), 1),
            vec![mono(&[1, 0, 0]), mono(&[0, 1, 0])]
        );
        assert!(monomials_of_weight(&c(&[2, 3, -5]), 1).is_empty());
        assert_eq!(
            monomials_of_weight(&c(&[1, 2, 3, -1, -5]), 2),
            vec![
                mono(&[2, 0, 0, 0, 0]),
                mono(&[1, 0, 0, 1, 0]),
                mono(&[0, 1, 0, 0, 0])
            ]
        );
        assert_eq!(
            monomials_of_weight(&c(&[2, 3, -5]), 0),
            vec![mono(&[0, 0, 0])]
        );
    }

    #[test]
    fn koszul_signs() {
        let five = c(&[1, 2, 3, -1, -5]);
        let v = |i| Monomial::generator(5, i);
        assert_eq!(
            multiply(&five, &v(0), &v(0)).monomial,
            mono(&[2, 0, 0, 0, 0])
        );
        assert_eq!(multiply(&five, &v(0), &v(0)).sign, 1);
        assert_eq!(multiply(&five, &v(4), &v(3)).sign, -1);
        assert_eq!(multiply(&five, &v(3), &v(4)).sign, 1);
        assert!(multiply(&five, &v(3), &v(3)).is_zero());
        assert_eq!(
            multiply(&five, &v(4), &v(3)).monomial,
            mono(&[0, 0, 0, 1, 1])
        );
    }

    #[test]
    fn hom_bases() {
        let wp = c(&[2, 3, -5]);
        let basis = hom_basis(&wp, 5, 0, 2).unwrap();
        assert_eq!(
            basis,
            vec![(
                mono(&[1, 0, 0]),
                Bigrading {
                    degree: 0,
                    weight: 2
                }
            )]
        );
        assert!(hom_basis(&wp, 5, 1, 0).unwrap().is_empty());
        assert!(hom_basis(&wp, 5, 0, 5).is_err());

        let five = c(&[1, 2, 3, -1, -5]);
        let degrees: Vec<i64> = hom_basis(&five, 5, 0, 2)
            .unwrap()
            .iter()
            .map(|(_, g)| g.degree)
            .collect();
        assert_eq!(degrees, vec![0, 1, 0]);
    }

    #[test]
    fn categories() {
        let b = build_bcategory(&c(&[1, 1, -2]), 2).unwrap();
        assert_eq!(b.hom(0, 1).unwrap().len(), 2);
        let b = build_bcategory(&c(&[2, 3, -5]), 5).unwrap();
        let top = b.hom(0, 4).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].value, mono(&[2, 0, 0]));
        let one = build_bcategory(&c(&[1, 2, 3, -1, -5]), 1).unwrap();
        assert_eq!(one.hom(0, 0).unwrap().len(), 1);
        assert!(one.category().check_unital());
        assert!(build_bcategory(&c(&[1, 1, -2]), 0).is_err());
    }

    #[test]
    fn json_dump_shape() {
        let b = build_bcategory(&c(&[1, 1, -2]), 2).unwrap();
        let v = b.to_json();
        assert_eq!(v["objects"], 2);
        assert_eq!(v["homs"].as_array().unwrap().len(), 3);
        // identities on 0 and 1 (twice each for the two triples touching them) plus 2 arrows
        let comps = v["compositions"].as_array().unwrap();
        assert_eq!(comps.len(), 1 + 2 + 2 + 1);
    }

    #[test]
    fn quivers() {
        assert_eq!(quiver(&c(&[1, 1, -2]), 2).unwrap().len(), 2);
        let arrows = quiver(&c(&[2, 3, -5]), 5).unwrap();
        let pairs: Vec<(usize, usize, &str)> = arrows
            .iter()
            .map(|a| (a.source, a.target, a.label.as_str()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                (0, 2, "v0"),
                (1, 3, "v0"),
                (2, 4, "v0"),
                (0, 3, "v1"),
                (1, 4, "v1")
            ]
        );
        assert_eq!(quiver(&c(&[1, 2, 3, -1, -5]), 5).unwrap().len(), 13);
    }

    fn arb_circuit() -> impl Strategy<Value = Circuit> {
        (
            prop::collection::vec(1i64..5, 1..4),
            prop::collection::vec(1i64..5, 1..3),
            prop::collection::vec(-1i64..=1, 6),
        )
            .prop_filter_map("valid", |(pos, neg, nu)| {
                let mut a = pos;
                a.extend(neg.iter().map(|x| -x));
                let s: i64 = a.iter().sum();
                if s != 0 {
                    a.push(-s);
                }
                let mut nu = nu[..a.len().min(6) - 1].to_vec();
                if a.len() > 6 {
                    return None;
                }
                nu.push(-nu.iter().sum::<i64>());
                validate_circuit(&a, &nu).ok()
            })
    }

    proptest! {
        #[test]
        fn super_commutative(c in arb_circuit(), w0 in 0u64..6, w1 in 0u64..6) {
            for x in monomials_of_weight(&c, w0) {
                for y in monomials_of_weight(&c, w1) {
                    let xy = multiply(&c, &x, &y);
                    let yx = multiply(&c, &y, &x);
                    prop_assert_eq!(xy.is_zero(), yx.is_zero());
                    if !xy.is_zero() {
                        let parity = (grading(&c, &x).degree * grading(&c, &y).degree).rem_euclid(2);
                        let expected = if parity == 0 { yx.sign } else { -yx.sign };
                        prop_assert_eq!(xy.sign, expected);
                        prop_assert_eq!(xy.monomial, yx.monomial);
                    }
                }
            }
        }

        #[test]
        fn grading_parity_and_weight(c in arb_circuit(), w in 0u64..9) {
            for x in monomials_of_weight(&c, w) {
                let g = grading(&c, &x);
                prop_assert_eq!(g.weight, w);
                prop_assert_eq!(g.degree.rem_euclid(2), (odd_count(&c, &x) % 2) as i64);
                prop_assert!(check_monomial(&c, &x).is_ok());
            }
        }

        #[test]
        fn b_category_associative(c in arb_circuit(), n in 1usize..8) {
            let b = build_bcategory(&c, n).unwrap();
            prop_assert!(b.category().check_associativity().is_ok());
            prop_assert!(b.category().check_unital());
        }

        #[test]
        fn hom_dims_shift_invariant(c in arb_circuit(), n in 1usize..8) {
            for j in 0..n {
                for k in j..n {
                    let basis = hom_basis(&c, n, j, k).unwrap();
                    prop_assert_eq!(basis.len(), hom_basis(&c, n, 0, k - j).unwrap().len());
                }
            }
        }
    }
}
