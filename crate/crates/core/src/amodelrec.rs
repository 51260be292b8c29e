//! The A-side category of a circuit, built by induction on dimension.
//!
//! Merging the first two positive entries gives the lower-rank circuit `b`.
//! A morphism `L_j -> L_k` is a pair `(m, y)`: an intersection point `z^m` of
//! the one-dimensional model in the `(a_0, a_1)` plane, and a morphism `y` of
//! the `b`-level category from `j` to `k - sigma_w(m)`. At the bottom of the
//! recursion sits either the one-dimensional model of [`crate::amodel1d`] or,
//! when fewer than two positive entries remain, the B-side algebra of that
//! leaf circuit (a "dual leaf").

use serde::Serialize;
use serde_json::{json, Value};

use crate::amodel1d::{self, Hom1dElement, Region};
use crate::balgebra::{self, build_bcategory, grading, monomials_of_weight, multiply, Monomial};
use crate::circuit::Circuit;
use crate::directed::{DirectedCategory, Graded, Product};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShiftPair {
    pub sigma_w: i64,
    pub sigma_d: i64,
}

/// `m = m1 - m0` with `m0 * m1 = 0`.
pub fn m_split(m: i64) -> (i64, i64) {
    (0.max(-m), 0.max(m))
}

pub fn sigma_shifts(c: &Circuit, m: i64) -> Result<ShiftPair> {
    if c.positive_count() < 2 {
        return Err(Error::NeedTwoPositives);
    }
    Ok(shifts(c, m))
}

fn shifts(c: &Circuit, m: i64) -> ShiftPair {
    let (m0, m1) = m_split(m);
    let (a, nu) = (c.a(), c.nu());
    ShiftPair {
        sigma_w: a[0] * m0 + a[1] * m1,
        sigma_d: 2 * (nu[0] * m0 + nu[1] * m1),
    }
}

/// Splits `x` into a spectral index and a monomial over the generators
/// `w_0, ..., w_d` of `b`, identifying `v_0 v_1` with `w_0`.
pub fn chi(c: &Circuit, x: &Monomial) -> Result<(i64, Monomial)> {
    if c.positive_count() < 2 {
        return Err(Error::NeedTwoPositives);
    }
    if x.len() != c.len() {
        return Err(Error::WrongHom {
            what: format!(
                "monomial has {} exponents, circuit has {}",
                x.len(),
                c.len()
            ),
        });
    }
    let r = &x.exponents;
    let e = r[0].min(r[1]);
    let m = r[1] as i64 - r[0] as i64;
    let mut inner = Vec::with_capacity(r.len() - 1);
    inner.push(e);
    inner.extend_from_slice(&r[2..]);
    Ok((m, Monomial { exponents: inner }))
}

pub fn chi_inv(c: &Circuit, m: i64, inner: &Monomial) -> Result<Monomial> {
    if c.positive_count() < 2 {
        return Err(Error::NeedTwoPositives);
    }
    if inner.len() + 1 != c.len() {
        return Err(Error::WrongHom {
            what: format!(
                "inner monomial has {} exponents, expected {}",
                inner.len(),
                c.len() - 1
            ),
        });
    }
    for (i, &exponent) in inner.exponents.iter().enumerate().skip(1) {
        if c.is_odd(i + 1) && exponent > 1 {
            return Err(Error::ExteriorOverflow { index: i, exponent });
        }
    }
    let (m0, m1) = m_split(m);
    let e = inner.exponents[0];
    let mut r = Vec::with_capacity(c.len());
    r.push(e + m0 as u32);
    r.push(e + m1 as u32);
    r.extend_from_slice(&inner.exponents[1..]);
    Ok(Monomial { exponents: r })
}

/// A basis morphism of some level of the recursion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AElement {
    Point(Hom1dElement),
    Leaf(Monomial),
    Split(Box<AMorphism>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AMorphism {
    pub m: i64,
    pub inner: AElement,
}

impl AElement {
    pub fn split(m: i64, inner: AElement) -> AElement {
        AElement::Split(Box::new(AMorphism { m, inner }))
    }

    /// Spectral index at the top level, if the element has one.
    pub fn spectral_index(&self) -> Option<i64> {
        match self {
            AElement::Point(p) => Some(p.spectral_index()),
            AElement::Leaf(_) => None,
            AElement::Split(s) => Some(s.m),
        }
    }

    pub fn name(&self) -> String {
        match self {
            AElement::Point(p) => p.name(),
            AElement::Leaf(x) => x.name('u'),
            AElement::Split(s) => format!("z^{}({})", s.m, s.inner.name()),
        }
    }
}

#[derive(Debug, Clone)]
enum LevelKind {
    OneDim,
    Recursive(Box<ALevel>),
    DualLeaf,
}

/// One level of the recursion, with Hom bases for every difference up to
/// `max_diff`.
#[derive(Debug, Clone)]
pub struct ALevel {
    circuit: Circuit,
    kind: LevelKind,
    homs: Vec<Vec<AElement>>,
}

impl ALevel {
    pub fn new(c: &Circuit, max_diff: usize) -> Result<ALevel> {
        let kind = if c.positive_count() < 2 {
            LevelKind::DualLeaf
        } else if c.d() == 1 {
            LevelKind::OneDim
        } else {
            let (b, _) = c.decompose().map_err(|_| Error::NeedBaseCase {
                circuit: c.to_string(),
            })?;
            LevelKind::Recursive(Box::new(ALevel::new(&b, max_diff)?))
        };
        let mut level = ALevel {
            circuit: c.clone(),
            kind,
            homs: Vec::new(),
        };
        level.homs = (0..=max_diff).map(|w| level.compute_hom(w)).collect();
        Ok(level)
    }

    fn compute_hom(&self, w: usize) -> Vec<AElement> {
        match &self.kind {
            LevelKind::OneDim => amodel1d::hom_1d_by_diff(&self.circuit, w as i64)
                .into_iter()
                .map(AElement::Point)
                .collect(),
            LevelKind::DualLeaf => monomials_of_weight(&self.circuit, w as u64)
                .into_iter()
                .map(AElement::Leaf)
                .collect(),
            LevelKind::Recursive(b) => {
                let (a0, a1) = (self.circuit.a()[0], self.circuit.a()[1]);
                let w = w as i64;
                let mut out = Vec::new();
                for m in -w / a0..=w / a1 {
                    let inner_w = (w - shifts(&self.circuit, m).sigma_w) as usize;
                    out.extend(
                        b.homs[inner_w]
                            .iter()
                            .map(|y| AElement::split(m, y.clone())),
                    );
                }
                out
            }
        }
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn max_diff(&self) -> usize {
        self.homs.len() - 1
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            LevelKind::OneDim => "one-dimensional",
            LevelKind::Recursive(_) => "recursive",
            LevelKind::DualLeaf => "dual-leaf",
        }
    }

    pub fn lower(&self) -> Option<&ALevel> {
        match &self.kind {
            LevelKind::Recursive(b) => Some(b),
            _ => None,
        }
    }

    /// Circuits at which the recursion fell back to a B-side leaf.
    pub fn dual_leaves(&self) -> Vec<String> {
        match &self.kind {
            LevelKind::DualLeaf => vec![self.circuit.to_string()],
            LevelKind::OneDim => Vec::new(),
            LevelKind::Recursive(b) => b.dual_leaves(),
        }
    }

    pub fn hom(&self, w: usize) -> Result<&[AElement]> {
        self.homs.get(w).map(Vec::as_slice).ok_or_else(|| {
            Error::out_of_range(format!("difference {w} beyond {}", self.max_diff()))
        })
    }

    pub fn identity(&self) -> AElement {
        match &self.kind {
            LevelKind::OneDim => AElement::Point(Hom1dElement::Identity),
            LevelKind::DualLeaf => AElement::Leaf(Monomial::identity(self.circuit.len())),
            LevelKind::Recursive(b) => AElement::split(0, b.identity()),
        }
    }

    pub fn degree(&self, x: &AElement) -> Result<i64> {
        match (&self.kind, x) {
            (LevelKind::OneDim, AElement::Point(p)) => Ok(p.degree()),
            (LevelKind::DualLeaf, AElement::Leaf(y)) => Ok(grading(&self.circuit, y).degree),
            (LevelKind::Recursive(b), AElement::Split(s)) => {
                Ok(b.degree(&s.inner)? + shifts(&self.circuit, s.m).sigma_d)
            }
            _ => Err(self.foreign(x)),
        }
    }

    pub fn weight(&self, x: &AElement) -> Result<i64> {
        match (&self.kind, x) {
            (LevelKind::OneDim, AElement::Point(p)) => {
                Ok(p.weight(self.circuit.a()[0], self.circuit.a()[1]))
            }
            (LevelKind::DualLeaf, AElement::Leaf(y)) => Ok(grading(&self.circuit, y).weight as i64),
            (LevelKind::Recursive(b), AElement::Split(s)) => {
                Ok(b.weight(&s.inner)? + shifts(&self.circuit, s.m).sigma_w)
            }
            _ => Err(self.foreign(x)),
        }
    }

    fn foreign(&self, x: &AElement) -> Error {
        Error::WrongHom {
            what: format!(
                "{} is not a morphism of the {} level",
                x.name(),
                self.kind_name()
            ),
        }
    }

    /// The morphism `L_0 -> L_{|a_r|}` attached to generator `v_r`.
    pub fn generator(&self, r: usize) -> Result<AElement> {
        if r >= self.circuit.len() {
            return Err(Error::out_of_range(format!("generator {r}")));
        }
        match &self.kind {
            LevelKind::DualLeaf => Ok(AElement::Leaf(Monomial::generator(self.circuit.len(), r))),
            LevelKind::OneDim => match r {
                0 | 1 => Ok(AElement::Point(amodel1d::point(&self.circuit, r as u8, 1))),
                _ => Err(Error::out_of_range(format!(
                    "generator {r} has weight equal to the volume"
                ))),
            },
            LevelKind::Recursive(b) => match r {
                0 => Ok(AElement::split(-1, b.identity())),
                1 => Ok(AElement::split(1, b.identity())),
                _ => Ok(AElement::split(0, b.generator(r - 1)?)),
            },
        }
    }

    /// `left ∘ right` for `right` of difference `w0` and `left` of
    /// difference `w1`, computed from the triangle combinatorics only.
    pub fn compose(
        &self,
        left: &AElement,
        w1: usize,
        right: &AElement,
        w0: usize,
    ) -> Result<Option<(i8, AElement)>> {
        match (&self.kind, left, right) {
            (LevelKind::OneDim, AElement::Point(x), AElement::Point(y)) => {
                Ok(Some((1, AElement::Point(amodel1d::compose_1d(x, y)?))))
            }
            (LevelKind::DualLeaf, AElement::Leaf(x), AElement::Leaf(y)) => {
                let p = multiply(&self.circuit, x, y);
                Ok((!p.is_zero()).then_some((p.sign, AElement::Leaf(p.monomial))))
            }
            (LevelKind::Recursive(b), AElement::Split(l), AElement::Split(r)) => {
                self.compose_split(b, l, w1, r, w0)
            }
            _ => Err(Error::WrongHom {
                what: format!("cannot compose {} with {}", left.name(), right.name()),
            }),
        }
    }

    fn compose_split(
        &self,
        b: &ALevel,
        left: &AMorphism,
        w1: usize,
        right: &AMorphism,
        w0: usize,
    ) -> Result<Option<(i8, AElement)>> {
        let c = &self.circuit;
        let (a0, a1) = (c.a()[0], c.a()[1]);
        let (w0i, w1i) = (w0 as i64, w1 as i64);
        let (m, region) = amodel1d::triangle_product(a0, a1, 0, w0i, w0i + w1i, right.m, left.m)?;
        let d0 = (w0i - shifts(c, right.m).sigma_w) as usize;
        let d1 = (w1i - shifts(c, left.m).sigma_w) as usize;
        let Some((mut sign, mut acc)) = b.compose(&left.inner, d1, &right.inner, d0)? else {
            return Ok(None);
        };
        if region == Region::ThroughPuncture {
            // Write each morphism as its flat part after |m| unit steps along
            // its branch. Flat parts commute past steps, and every adjacent
            // pair of opposite steps rewrites to the flat morphism w_0.
            let cancelled = left.m.abs().min(right.m.abs());
            let w_gen = b.generator(0)?;
            let w_step = (a0 + a1) as usize;
            let mut acc_w = d0 + d1;
            for _ in 0..cancelled {
                let Some((s, next)) = b.compose(&acc, acc_w, &w_gen, w_step)? else {
                    return Ok(None);
                };
                sign *= s;
                acc = next;
                acc_w += w_step;
            }
        }
        Ok(Some((sign, AElement::split(m, acc))))
    }

    /// The mirror map on basis monomials.
    pub fn xi(&self, x: &Monomial) -> Result<AElement> {
        match &self.kind {
            LevelKind::DualLeaf => {
                balgebra::check_monomial(&self.circuit, x)?;
                Ok(AElement::Leaf(x.clone()))
            }
            LevelKind::OneDim => {
                if x.len() != 3 {
                    return Err(Error::WrongHom {
                        what: format!("{} is not a monomial of {}", x.name('v'), self.circuit),
                    });
                }
                match x.exponents[..] {
                    [0, 0, 0] => Ok(AElement::Point(Hom1dElement::Identity)),
                    [s, 0, 0] => Ok(AElement::Point(amodel1d::point(&self.circuit, 0, s))),
                    [0, s, 0] => Ok(AElement::Point(amodel1d::point(&self.circuit, 1, s))),
                    _ => Err(Error::WrongHom {
                        what: format!(
                            "{} has weight at least the volume of {}",
                            x.name('v'),
                            self.circuit
                        ),
                    }),
                }
            }
            LevelKind::Recursive(b) => {
                let (m, inner) = chi(&self.circuit, x)?;
                Ok(AElement::split(m, b.xi(&inner)?))
            }
        }
    }

    pub fn xi_inv(&self, x: &AElement) -> Result<Monomial> {
        match (&self.kind, x) {
            (LevelKind::DualLeaf, AElement::Leaf(y)) => Ok(y.clone()),
            (LevelKind::OneDim, AElement::Point(p)) => {
                let mut e = vec![0u32; 3];
                if let Hom1dElement::Point { branch, power, .. } = *p {
                    e[branch as usize] = power;
                }
                Ok(Monomial { exponents: e })
            }
            (LevelKind::Recursive(b), AElement::Split(s)) => {
                chi_inv(&self.circuit, s.m, &b.xi_inv(&s.inner)?)
            }
            _ => Err(self.foreign(x)),
        }
    }

    /// Reference composition: pull back to monomials, multiply, push forward.
    pub fn transport_compose(
        &self,
        left: &AElement,
        right: &AElement,
    ) -> Result<Option<(i8, AElement)>> {
        let x = self.xi_inv(left)?;
        let y = self.xi_inv(right)?;
        let p = multiply(&self.circuit, &x, &y);
        if p.is_zero() {
            return Ok(None);
        }
        Ok(Some((p.sign, self.xi(&p.monomial)?)))
    }
}

fn check_volume(c: &Circuit, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::out_of_range("n must be at least 1"));
    }
    if n as i64 >= c.volume() {
        return Err(Error::VolumeBound {
            n,
            volume: c.volume(),
        });
    }
    Ok(())
}

/// One summand of `Hom(L_j, L_k)`: the `b`-level morphisms sitting over the
/// intersection point `z^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub m: i64,
    pub shift: ShiftPair,
    /// Target of the `b`-level Hom space, which always starts at `j`.
    pub inner_target: i64,
    pub basis: Vec<AElement>,
}

pub fn hom_decomposition(c: &Circuit, n: usize, j: usize, k: usize) -> Result<Vec<Summand>> {
    check_volume(c, n)?;
    if c.positive_count() < 2 {
        return Err(Error::NeedTwoPositives);
    }
    if j >= n || k >= n {
        return Err(Error::out_of_range(format!(
            "objects ({j}, {k}) with n = {n}"
        )));
    }
    if j > k {
        return Err(Error::BadOrder {
            j: j as i64,
            k: k as i64,
        });
    }
    let level = ALevel::new(c, k - j)?;
    let w = (k - j) as i64;
    let (a0, a1) = (c.a()[0], c.a()[1]);
    let mut out = Vec::new();
    for m in amodel1d::intersection_indices(a0, a1, 0, w)? {
        let shift = shifts(c, m);
        let basis = match &level.kind {
            LevelKind::Recursive(b) => b.hom((w - shift.sigma_w) as usize)?.to_vec(),
            _ => level
                .hom(k - j)?
                .iter()
                .filter(|x| x.spectral_index() == Some(m))
                .map(|_| AElement::Point(Hom1dElement::Identity))
                .collect(),
        };
        out.push(Summand {
            m,
            shift,
            inner_target: j as i64 + w - shift.sigma_w,
            basis,
        });
    }
    Ok(out)
}

/// The A-side directed category on `L_0, ..., L_{n-1}`.
#[derive(Debug, Clone)]
pub struct ACategory {
    level: ALevel,
    cat: DirectedCategory<AElement>,
}

pub fn build_acategory(c: &Circuit, n: usize) -> Result<ACategory> {
    check_volume(c, n)?;
    let level = ALevel::new(c, n - 1)?;
    let cat = DirectedCategory::build(
        n,
        |w| {
            level
                .hom(w)?
                .iter()
                .map(|x| {
                    Ok(Graded {
                        value: x.clone(),
                        degree: level.degree(x)?,
                    })
                })
                .collect()
        },
        |left, w1, right, w0| level.compose(left, w1, right, w0),
    )?;
    Ok(ACategory { level, cat })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralWitness {
    pub diffs: (usize, usize),
    pub left: String,
    pub right: String,
    pub detail: String,
}

impl ACategory {
    pub fn circuit(&self) -> &Circuit {
        self.level.circuit()
    }

    pub fn n(&self) -> usize {
        self.cat.n()
    }

    pub fn level(&self) -> &ALevel {
        &self.level
    }

    pub fn category(&self) -> &DirectedCategory<AElement> {
        &self.cat
    }

    pub fn hom(&self, j: usize, k: usize) -> Result<&[Graded<AElement>]> {
        self.cat.hom(j, k)
    }

    pub fn compose(
        &self,
        i: usize,
        j: usize,
        k: usize,
        left: usize,
        right: usize,
    ) -> Result<Product> {
        self.cat.compose(i, j, k, left, right)
    }

    /// Checks that spectral indices add under composition and that the sum
    /// stays inside the intersection bounds. Returns the number of pairs.
    pub fn check_spectral_additivity(&self) -> std::result::Result<u64, SpectralWitness> {
        let c = self.circuit();
        if c.positive_count() < 2 {
            return Ok(0);
        }
        let (a0, a1) = (c.a()[0], c.a()[1]);
        let n = self.n();
        let mut checked = 0u64;
        for w0 in 0..n {
            for w1 in 0..n - w0 {
                let rights = self.cat.hom_by_diff(w0);
                let lefts = self.cat.hom_by_diff(w1);
                let targets = self.cat.hom_by_diff(w0 + w1);
                for (l, left) in lefts.iter().enumerate() {
                    for (r, right) in rights.iter().enumerate() {
                        let witness = |detail: String| SpectralWitness {
                            diffs: (w0, w1),
                            left: left.value.name(),
                            right: right.value.name(),
                            detail,
                        };
                        let (ml, mr) =
                            match (left.value.spectral_index(), right.value.spectral_index()) {
                                (Some(ml), Some(mr)) => (ml, mr),
                                _ => return Err(witness("missing spectral index".into())),
                            };
                        let (sum, _) = amodel1d::triangle_product(
                            a0,
                            a1,
                            0,
                            w0 as i64,
                            (w0 + w1) as i64,
                            mr,
                            ml,
                        )
                        .map_err(|e| witness(e.to_string()))?;
                        if let Some((_, idx)) = self.cat.compose_diff(w0, w1, l, r) {
                            let m = targets[idx].value.spectral_index();
                            if m != Some(sum) || sum != ml + mr {
                                return Err(witness(format!(
                                    "result index {m:?}, expected {}",
                                    ml + mr
                                )));
                            }
                        }
                        checked += 1;
                    }
                }
            }
        }
        Ok(checked)
    }
}

/// `1` exactly when `x` is the morphism attached to generator `v_j`.
pub fn kappa(cat: &ACategory, j: usize, x: &AElement) -> Result<u8> {
    let c = cat.circuit();
    if j < c.len() && c.weight_of(j) as usize >= cat.n() {
        return Err(Error::out_of_range(format!(
            "Hom(L0, L{}) needs n > {0}, have n = {}",
            c.weight_of(j),
            cat.n()
        )));
    }
    cat.level().kappa(j, x)
}

impl ALevel {
    /// Lookup form of [`kappa`] on a bare level, for any difference the
    /// level has bases for.
    pub fn kappa(&self, j: usize, x: &AElement) -> Result<u8> {
        if j >= self.circuit.len() {
            return Err(Error::out_of_range(format!("generator {j}")));
        }
        let w = self.circuit.weight_of(j) as usize;
        if !self.hom(w)?.contains(x) {
            return Err(Error::WrongHom {
                what: format!("{} is not in Hom(L0, L{w})", x.name()),
            });
        }
        Ok(u8::from(*x == self.generator(j)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub circuit: String,
    pub n: usize,
    pub pairs_checked: u64,
    pub compositions_checked: u64,
    pub dims_match: bool,
    pub degrees_match: bool,
    pub compositions_match: bool,
    pub dual_leaves: Vec<String>,
    pub witness: Option<Value>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.dims_match && self.degrees_match && self.compositions_match
    }
}

/// Compares the B-side and A-side categories through the mirror map: Hom
/// bases in bijection, degrees preserved, and every composite agreeing with
/// both the rewriting engine and the transport evaluator.
pub fn verify_iso(c: &Circuit, n: usize) -> Result<IsoReport> {
    check_volume(c, n)?;
    let bcat = build_bcategory(c, n)?;
    let acat = build_acategory(c, n)?;
    let level = acat.level();
    let (b, a) = (bcat.category(), acat.category());

    let mut report = IsoReport {
        circuit: c.to_string(),
        n,
        pairs_checked: 0,
        compositions_checked: 0,
        dims_match: true,
        degrees_match: true,
        compositions_match: true,
        dual_leaves: level.dual_leaves(),
        witness: None,
    };

    // images[w][i] = position in the A basis of the image of B basis element i
    let mut images: Vec<Vec<usize>> = Vec::with_capacity(n);
    for w in 0..n {
        let (bb, ab) = (b.hom_by_diff(w), a.hom_by_diff(w));
        let mut row = Vec::with_capacity(bb.len());
        let mut hit = vec![false; ab.len()];
        for g in bb {
            let image = level.xi(&g.value)?;
            match a.position(w, &image) {
                Some(idx) if !hit[idx] => {
                    hit[idx] = true;
                    if ab[idx].degree != g.degree && report.degrees_match {
                        report.degrees_match = false;
                        report.witness.get_or_insert_with(|| {
                            json!({
                                "kind": "degree",
                                "diff": w,
                                "monomial": g.value.exponents,
                                "b_degree": g.degree,
                                "a_degree": ab[idx].degree,
                            })
                        });
                    }
                    row.push(idx);
                }
                _ => {
                    report.dims_match = false;
                    report.witness.get_or_insert_with(|| {
                        json!({
                            "kind": "bijection",
                            "diff": w,
                            "monomial": g.value.exponents,
                            "image": image.name(),
                        })
                    });
                    row.push(usize::MAX);
                }
            }
        }
        if bb.len() != ab.len() {
            report.dims_match = false;
            report.witness.get_or_insert_with(
                || json!({ "kind": "dimension", "diff": w, "b_dim": bb.len(), "a_dim": ab.len() }),
            );
        }
        report.pairs_checked += (n - w) as u64;
        images.push(row);
    }
    if !report.dims_match {
        return Ok(report);
    }

    for w0 in 0..n {
        for w1 in 0..n - w0 {
            let triples = (n - w0 - w1) as u64;
            for (l, left) in b.hom_by_diff(w1).iter().enumerate() {
                for (r, right) in b.hom_by_diff(w0).iter().enumerate() {
                    let expected = b
                        .compose_diff(w0, w1, l, r)
                        .map(|(s, idx)| (s, images[w0 + w1][idx]));
                    let engine = a.compose_diff(w0, w1, images[w1][l], images[w0][r]);
                    let left_a = &a.hom_by_diff(w1)[images[w1][l]].value;
                    let right_a = &a.hom_by_diff(w0)[images[w0][r]].value;
                    let transport = level
                        .transport_compose(left_a, right_a)?
                        .map(|(s, x)| (s, a.position(w0 + w1, &x).unwrap_or(usize::MAX)));
                    if engine != expected || transport != expected {
                        report.compositions_match = false;
                        let show = |p: Product| match p {
                            Some((s, idx)) => json!({
                                "sign": s,
                                "result": a.hom_by_diff(w0 + w1).get(idx).map(|x| x.value.name()),
                            }),
                            None => Value::Null,
                        };
                        report.witness.get_or_insert_with(|| {
                            json!({
                                "kind": "composition",
                                "diffs": [w0, w1],
                                "left": left.value.exponents,
                                "right": right.value.exponents,
                                "b_product": show(expected),
                                "engine": show(engine),
                                "transport": show(transport),
                            })
                        });
                    }
                    report.compositions_checked += triples;
                }
            }
        }
    }
    Ok(report)
}
