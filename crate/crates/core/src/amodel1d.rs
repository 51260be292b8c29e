//! The one-dimensional A-model: lifted paths `mu_k`, their intersection
//! points `z^m`, and the products between them.
//!
//! After shearing, `mu_k` is the segment `t -> (t, k t)` for
//! `t in [-1/a0, 1/a1]`, and its lift is taken modulo the integer lattice in
//! the second coordinate. Two lifts `mu_j`, `mu_k` meet once for every
//! integer `m` with `-(k-j)/a0 <= m <= (k-j)/a1`.

use num_rational::Ratio;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};

type Q = Ratio<i64>;

/// Lifted path `mu_k` in sheared coordinates, as an exact segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftedSegment {
    pub a0: i64,
    pub a1: i64,
    pub k: i64,
    /// Vertical lattice translate.
    pub shift: i64,
}

impl LiftedSegment {
    pub fn endpoints(&self) -> ((Q, Q), (Q, Q)) {
        let left = Q::new(-1, self.a0);
        let right = Q::new(1, self.a1);
        let y = |x: Q| x * self.k + self.shift;
        ((left, y(left)), (right, y(right)))
    }

    /// Exact intersection point with another segment, if the two cross.
    pub fn intersect(&self, other: &LiftedSegment) -> Option<(Q, Q)> {
        let (p, p2) = self.endpoints();
        let (q, q2) = other.endpoints();
        let r = (p2.0 - p.0, p2.1 - p.1);
        let s = (q2.0 - q.0, q2.1 - q.1);
        let cross = |u: (Q, Q), v: (Q, Q)| u.0 * v.1 - u.1 * v.0;
        let denom = cross(r, s);
        if denom == Q::from_integer(0) {
            return None;
        }
        let qp = (q.0 - p.0, q.1 - p.1);
        let t = cross(qp, s) / denom;
        let u = cross(qp, r) / denom;
        let unit = Q::from_integer(0)..=Q::from_integer(1);
        if unit.contains(&t) && unit.contains(&u) {
            Some((p.0 + r.0 * t, p.1 + r.1 * t))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntersectionPoint {
    pub j: i64,
    pub k: i64,
    pub m: i64,
}

fn check_slopes(a0: i64, a1: i64) -> Result<()> {
    if a0 < 1 || a1 < 1 {
        return Err(Error::out_of_range(format!(
            "one-dimensional model needs a0, a1 >= 1, got ({a0}, {a1})"
        )));
    }
    Ok(())
}

/// Inclusive range of spectral indices between `mu_j` and `mu_k`.
pub fn bounds(a0: i64, a1: i64, j: i64, k: i64) -> Result<(i64, i64)> {
    check_slopes(a0, a1)?;
    if j > k {
        return Err(Error::BadOrder { j, k });
    }
    Ok((-(k - j) / a0, (k - j) / a1))
}

pub fn intersection_indices(a0: i64, a1: i64, j: i64, k: i64) -> Result<Vec<i64>> {
    let (lo, hi) = bounds(a0, a1, j, k)?;
    Ok((lo..=hi).collect())
}

pub fn intersection_count(a0: i64, a1: i64, j: i64, k: i64) -> Result<i64> {
    check_slopes(a0, a1)?;
    if j > k {
        return Err(Error::BadOrder { j, k });
    }
    Ok((k - j) / a0 + (k - j) / a1 + 1)
}

/// Spectral indices found by intersecting `mu_k` with every lattice
/// translate of `mu_j` in exact rational arithmetic.
pub fn geometric_oracle(a0: i64, a1: i64, j: i64, k: i64) -> Result<Vec<i64>> {
    check_slopes(a0, a1)?;
    if j > k {
        return Err(Error::BadOrder { j, k });
    }
    if j == k {
        // the two lifts coincide; only the untranslated copy is the same path
        return Ok(vec![0]);
    }
    let upper = LiftedSegment {
        a0,
        a1,
        k,
        shift: 0,
    };
    // |m| <= k - j because both segments live over [-1, 1]
    let span = k - j;
    Ok((-span..=span)
        .filter(|&m| {
            let lower = LiftedSegment {
                a0,
                a1,
                k: j,
                shift: m,
            };
            upper.intersect(&lower).is_some()
        })
        .collect())
}

/// All intersection points `z^m` between `mu_j` and `mu_k`.
pub fn intersection_points(a0: i64, a1: i64, j: i64, k: i64) -> Result<Vec<IntersectionPoint>> {
    Ok(intersection_indices(a0, a1, j, k)?
        .into_iter()
        .map(|m| IntersectionPoint { j, k, m })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Interior,
    ThroughPuncture,
}

/// The unique directed triangle with corners `z^{n1}` (between `mu_{k0}`,
/// `mu_{k1}`) and `z^{n2}` (between `mu_{k1}`, `mu_{k2}`).
pub fn triangle_product(
    a0: i64,
    a1: i64,
    k0: i64,
    k1: i64,
    k2: i64,
    n1: i64,
    n2: i64,
) -> Result<(i64, Region)> {
    let in_range = |j: i64, k: i64, m: i64| -> Result<()> {
        let (lo, hi) = bounds(a0, a1, j, k)?;
        if m < lo || m > hi {
            return Err(Error::OutOfBounds { j, k, m });
        }
        Ok(())
    };
    in_range(k0, k1, n1)?;
    in_range(k1, k2, n2)?;
    let n = n1 + n2;
    in_range(k0, k2, n)?;
    let region = if n1 * n2 >= 0 {
        Region::Interior
    } else {
        Region::ThroughPuncture
    };
    Ok((n, region))
}

/// Basis element of a one-dimensional Hom space: the identity or the
/// intersection point `p_r^s` on branch `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Hom1dElement {
    Identity,
    Point { branch: u8, power: u32, degree: i64 },
}

impl Hom1dElement {
    /// `p_0^s` sits at `m = -s`, `p_1^s` at `m = s`.
    pub fn spectral_index(&self) -> i64 {
        match *self {
            Hom1dElement::Identity => 0,
            Hom1dElement::Point {
                branch: 0, power, ..
            } => -(power as i64),
            Hom1dElement::Point { power, .. } => power as i64,
        }
    }

    pub fn degree(&self) -> i64 {
        match *self {
            Hom1dElement::Identity => 0,
            Hom1dElement::Point { degree, .. } => degree,
        }
    }

    pub fn weight(&self, a0: i64, a1: i64) -> i64 {
        match *self {
            Hom1dElement::Identity => 0,
            Hom1dElement::Point { branch, power, .. } => {
                power as i64 * if branch == 0 { a0 } else { a1 }
            }
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Hom1dElement::Identity => "id".into(),
            Hom1dElement::Point {
                branch, power: 1, ..
            } => format!("p{branch}"),
            Hom1dElement::Point { branch, power, .. } => format!("p{branch}^{power}"),
        }
    }
}

pub(crate) fn point(c: &Circuit, branch: u8, power: u32) -> Hom1dElement {
    Hom1dElement::Point {
        branch,
        power,
        degree: 2 * c.nu()[branch as usize] * power as i64,
    }
}

fn check_one_dim(c: &Circuit) -> Result<()> {
    if c.d() != 1 {
        return Err(Error::out_of_range(format!(
            "one-dimensional model needs d = 1, got d = {}",
            c.d()
        )));
    }
    if c.positive_count() != 2 {
        return Err(Error::NeedTwoPositives);
    }
    Ok(())
}

/// Basis of `Hom(L_j, L_k)` for a difference `w = k - j`.
pub(crate) fn hom_1d_by_diff(c: &Circuit, w: i64) -> Vec<Hom1dElement> {
    if w == 0 {
        return vec![Hom1dElement::Identity];
    }
    let mut out = Vec::new();
    for branch in 0..2u8 {
        let a = c.a()[branch as usize];
        if w % a == 0 {
            out.push(point(c, branch, (w / a) as u32));
        }
    }
    out
}

pub fn hom_basis_1d(c: &Circuit, n: usize, j: usize, k: usize) -> Result<Vec<Hom1dElement>> {
    check_one_dim(c)?;
    if n as i64 >= c.volume() {
        return Err(Error::VolumeBound {
            n,
            volume: c.volume(),
        });
    }
    if j >= n || k >= n {
        return Err(Error::out_of_range(format!(
            "objects ({j}, {k}) with n = {n}"
        )));
    }
    if j > k {
        return Ok(Vec::new());
    }
    Ok(hom_1d_by_diff(c, (k - j) as i64))
}

/// `x ∘ y`.
pub fn compose_1d(x: &Hom1dElement, y: &Hom1dElement) -> Result<Hom1dElement> {
    match (*x, *y) {
        (Hom1dElement::Identity, other) | (other, Hom1dElement::Identity) => Ok(other),
        (
            Hom1dElement::Point {
                branch: l,
                power: s,
                degree: ds,
            },
            Hom1dElement::Point {
                branch: r,
                power: t,
                degree: dt,
            },
        ) => {
            if l != r {
                return Err(Error::BranchMismatch { left: l, right: r });
            }
            Ok(Hom1dElement::Point {
                branch: l,
                power: s + t,
                degree: ds + dt,
            })
        }
    }
}

/// `1` exactly on the generator `p_r` of `Hom(L_0, L_{a_r})`.
pub fn kappa_1d(c: &Circuit, r: usize, x: &Hom1dElement) -> Result<u8> {
    check_one_dim(c)?;
    if r > 1 {
        return Err(Error::out_of_range(format!("branch {r}")));
    }
    let target = c.a()[r];
    if x.weight(c.a()[0], c.a()[1]) != target {
        return Err(Error::WrongHom {
            what: format!("{} is not in Hom(L0, L{target})", x.name()),
        });
    }
    Ok(u8::from(*x == point(c, r as u8, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balgebra::{grading, monomials_of_weight, Monomial};
    use crate::circuit::validate_circuit;
    use proptest::prelude::*;

    #[test]
    fn indices() {
        assert_eq!(
            intersection_indices(2, 3, 0, 5).unwrap(),
            vec![-2, -1, 0, 1]
        );
        assert_eq!(intersection_indices(4, 7, 3, 3).unwrap(), vec![0]);
        assert_eq!(
            intersection_indices(1, 4, 0, 3).unwrap(),
            vec![-3, -2, -1, 0]
        );
        assert_eq!(
            intersection_indices(1, 1, 2, 1),
            Err(Error::BadOrder { j: 2, k: 1 })
        );
    }

    #[test]
    fn counts() {
        assert_eq!(intersection_count(2, 3, 0, 5).unwrap(), 4);
        assert_eq!(intersection_count(1, 1, 0, 1).unwrap(), 3);
        assert_eq!(intersection_count(5, 7, 0, 1).unwrap(), 1);
    }

    #[test]
    fn oracle_points() {
        assert_eq!(geometric_oracle(2, 3, 0, 5).unwrap(), vec![-2, -1, 0, 1]);
        assert_eq!(geometric_oracle(1, 1, 0, 2).unwrap(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(geometric_oracle(3, 2, 0, 1).unwrap(), vec![0]);
    }

    #[test]
    fn segment_intersection_is_on_both() {
        let upper = LiftedSegment {
            a0: 2,
            a1: 3,
            k: 5,
            shift: 0,
        };
        let lower = LiftedSegment {
            a0: 2,
            a1: 3,
            k: 0,
            shift: -2,
        };
        let (x, y) = upper.intersect(&lower).unwrap();
        assert_eq!(x, Q::new(-2, 5));
        assert_eq!(y, Q::from_integer(-2));
    }

    #[test]
    fn triangles() {
        assert_eq!(
            triangle_product(2, 3, 0, 2, 4, 1, 1),
            Err(Error::OutOfBounds { j: 0, k: 2, m: 1 })
        );
        assert_eq!(
            triangle_product(2, 3, 0, 3, 6, 1, 1).unwrap(),
            (2, Region::Interior)
        );
        assert_eq!(
            triangle_product(1, 1, 0, 1, 2, 1, -1).unwrap(),
            (0, Region::ThroughPuncture)
        );
        assert_eq!(
            triangle_product(4, 5, 0, 2, 3, 0, 0).unwrap(),
            (0, Region::Interior)
        );
    }

    #[test]
    fn one_dim_homs() {
        let wp = validate_circuit(&[2, 3, -5], &[0, 0, 0]).unwrap();
        // n = 5 reaches the volume, so Hom(L0, L4) is read off by difference
        let top = hom_1d_by_diff(&wp, 4);
        assert_eq!(top, vec![point(&wp, 0, 2)]);
        assert_eq!(top[0].degree(), 0);
        assert_eq!(hom_basis_1d(&wp, 4, 0, 3).unwrap(), vec![point(&wp, 1, 1)]);
        assert!(hom_basis_1d(&wp, 4, 0, 1).unwrap().is_empty());
        assert!(hom_basis_1d(&wp, 4, 2, 1).unwrap().is_empty());
        assert!(matches!(
            hom_basis_1d(&wp, 4, 0, 4),
            Err(Error::OutOfRange { .. })
        ));
        assert_eq!(
            hom_basis_1d(&wp, 5, 0, 1),
            Err(Error::VolumeBound { n: 5, volume: 5 })
        );

        let beilinson = validate_circuit(&[1, 1, -2], &[0, 0, 0]).unwrap();
        assert_eq!(
            hom_basis_1d(&beilinson, 1, 0, 0).unwrap(),
            vec![Hom1dElement::Identity]
        );
    }

    #[test]
    fn composition() {
        let wp = validate_circuit(&[2, 3, -5], &[1, 0, -1]).unwrap();
        let p0 = point(&wp, 0, 1);
        let p0sq = point(&wp, 0, 2);
        assert_eq!(compose_1d(&p0, &p0).unwrap(), p0sq);
        let p1sq = point(&wp, 1, 2);
        assert_eq!(compose_1d(&Hom1dElement::Identity, &p1sq).unwrap(), p1sq);
        let composite = compose_1d(&p0, &p0sq).unwrap();
        assert_eq!(composite.degree(), p0.degree() + p0sq.degree());
        assert_eq!(
            compose_1d(&p0, &point(&wp, 1, 1)),
            Err(Error::BranchMismatch { left: 0, right: 1 })
        );
    }

    #[test]
    fn kappa_lookup() {
        let c = validate_circuit(&[1, 2, -3], &[0, 0, 0]).unwrap();
        assert_eq!(kappa_1d(&c, 1, &point(&c, 1, 1)).unwrap(), 1);
        assert_eq!(kappa_1d(&c, 1, &point(&c, 0, 2)).unwrap(), 0);
        assert!(kappa_1d(&c, 1, &point(&c, 0, 1)).is_err());
        let wp = validate_circuit(&[2, 3, -5], &[0, 0, 0]).unwrap();
        assert_eq!(kappa_1d(&wp, 0, &point(&wp, 0, 1)).unwrap(), 1);
    }

    #[test]
    fn degrees_match_b_side() {
        for nu0 in -2..=2 {
            for nu1 in -2..=2 {
                let c = validate_circuit(&[2, 3, -5], &[nu0, nu1, -nu0 - nu1]).unwrap();
                for w in 1..5 {
                    let a_side = hom_1d_by_diff(&c, w);
                    let b_side = monomials_of_weight(&c, w as u64);
                    assert_eq!(a_side.len(), b_side.len());
                    for p in a_side {
                        let Hom1dElement::Point {
                            branch,
                            power,
                            degree,
                        } = p
                        else {
                            unreachable!()
                        };
                        let mut e = vec![0; 3];
                        e[branch as usize] = power;
                        assert_eq!(degree, grading(&c, &Monomial::from_exponents(&e)).degree);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn formula_agrees_with_geometry(a0 in 1i64..13, a1 in 1i64..13, j in 0i64..5, w in 0i64..40) {
            let k = j + w;
            let idx = intersection_indices(a0, a1, j, k).unwrap();
            prop_assert_eq!(idx.len() as i64, intersection_count(a0, a1, j, k).unwrap());
            prop_assert_eq!(geometric_oracle(a0, a1, j, k).unwrap(), idx);
        }

        #[test]
        fn bounds_close_under_sum(a0 in 1i64..8, a1 in 1i64..8, w0 in 0i64..20, w1 in 0i64..20) {
            for n1 in intersection_indices(a0, a1, 0, w0).unwrap() {
                for n2 in intersection_indices(a0, a1, w0, w0 + w1).unwrap() {
                    let (n, _) = triangle_product(a0, a1, 0, w0, w0 + w1, n1, n2).unwrap();
                    prop_assert_eq!(n, n1 + n2);
                }
            }
        }
    }
}
