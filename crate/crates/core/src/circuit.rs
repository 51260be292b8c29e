//! Circuits: balanced integer vectors `a` with a balanced charge vector `nu`.
//!
//! A [`Circuit`] is always stored in internal order: positive entries first,
//! then negative entries, each block sorted by ascending magnitude (stable on
//! ties). The permutation back to the caller's input order is kept in
//! [`Circuit::perm`]. Every downstream formula indexes generators in this
//! internal order, so `v_0, v_1` are the two smallest positive entries.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

const ENTRY_CAP: i64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    a: Vec<i64>,
    nu: Vec<i64>,
    perm: Vec<usize>,
}

/// The three kinds of elementary birational cobordism a circuit describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    WeightedProjective,
    BlowUp,
    Flip,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::WeightedProjective => "weighted-projective",
            Kind::BlowUp => "blow-up",
            Kind::Flip => "flip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CobordismKind {
    pub kind: Kind,
    /// Number of exceptional objects, `-a_{d+1}`.
    pub mu: i64,
    pub x_plus: String,
    pub x_minus: String,
}

/// Validate `(a, nu)` and bring it into internal order.
pub fn validate_circuit(a: &[i64], nu: &[i64]) -> Result<Circuit> {
    if a.len() < 3 {
        return Err(Error::TooShort { len: a.len() });
    }
    if nu.len() != a.len() {
        return Err(Error::LengthMismatch {
            a: a.len(),
            nu: nu.len(),
        });
    }
    for (index, &value) in a.iter().chain(nu.iter()).enumerate() {
        if value.unsigned_abs() > ENTRY_CAP as u64 {
            return Err(Error::Overflow {
                index: index % a.len(),
                value,
            });
        }
    }
    if let Some(index) = a.iter().position(|&x| x == 0) {
        return Err(Error::ZeroEntry { index });
    }
    let sum: i64 = a.iter().sum();
    if sum != 0 {
        return Err(Error::UnbalancedA { sum });
    }
    let sum: i64 = nu.iter().sum();
    if sum != 0 {
        return Err(Error::UnbalancedNu { sum });
    }

    let mut perm: Vec<usize> = (0..a.len()).collect();
    perm.sort_by_key(|&i| (a[i] < 0, a[i].abs()));
    Ok(Circuit {
        a: perm.iter().map(|&i| a[i]).collect(),
        nu: perm.iter().map(|&i| nu[i]).collect(),
        perm,
    })
}

impl Circuit {
    /// Builds a circuit that is already in "positives first" order without
    /// re-sorting. Used for the lower-rank circuits produced by
    /// [`Circuit::decompose`], whose generator `w_0` must stay first.
    pub(crate) fn from_internal(a: Vec<i64>, nu: Vec<i64>) -> Result<Circuit> {
        let checked = validate_circuit(&a, &nu)?;
        let p = a.iter().take_while(|&&x| x > 0).count();
        if a[p..].iter().any(|&x| x > 0) {
            return Err(Error::Parse(format!(
                "internal order requires positives first: {a:?}"
            )));
        }
        let perm = (0..a.len()).collect();
        debug_assert_eq!(checked.a.len(), a.len());
        Ok(Circuit { a, nu, perm })
    }

    /// Parses the textual form `a=1,2,3,-1,-5;nu=0,0,0,0,0` (nu optional).
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut a = None;
        let mut nu = None;
        for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let values = parse_list(value)?;
            match key.trim() {
                "a" => a = Some(values),
                "nu" => nu = Some(values),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let a = a.ok_or_else(|| Error::Parse("missing a=...".into()))?;
        let nu = nu.unwrap_or_else(|| vec![0; a.len()]);
        validate_circuit(&a, &nu)
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn nu(&self) -> &[i64] {
        &self.nu
    }

    /// `perm[i]` is the input position of internal entry `i`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Dimension `d`; the circuit has `d + 2` entries.
    pub fn d(&self) -> usize {
        self.a.len() - 2
    }

    pub fn positive_count(&self) -> usize {
        self.a.iter().filter(|&&x| x > 0).count()
    }

    /// `(p, q)` with `p + 1` positive and `q + 1` negative entries.
    pub fn signature(&self) -> (i64, i64) {
        let pos = self.positive_count() as i64;
        (pos - 1, self.a.len() as i64 - pos - 1)
    }

    pub fn volume(&self) -> i64 {
        self.a.iter().filter(|&&x| x > 0).sum()
    }

    /// Whether generator `i` is odd (comes from a negative entry).
    pub fn is_odd(&self, i: usize) -> bool {
        self.a[i] < 0
    }

    pub fn weight_of(&self, i: usize) -> i64 {
        self.a[i].abs()
    }

    pub fn degree_of(&self, i: usize) -> i64 {
        if self.a[i] > 0 {
            2 * self.nu[i]
        } else {
            2 * self.nu[i] + 1
        }
    }

    /// The Koszul dual circuit `(-a, -nu)`, re-normalized.
    pub fn negate(&self) -> Circuit {
        let a: Vec<i64> = self.a.iter().map(|x| -x).collect();
        let nu: Vec<i64> = self.nu.iter().map(|x| -x).collect();
        let mut out = validate_circuit(&a, &nu).expect("negation preserves validity");
        out.perm = out.perm.iter().map(|&i| self.perm[i]).collect();
        out
    }

    /// Same `a`, new `nu` given in internal order.
    pub fn with_nu(&self, nu: &[i64]) -> Result<Circuit> {
        if nu.len() != self.a.len() {
            return Err(Error::LengthMismatch {
                a: self.a.len(),
                nu: nu.len(),
            });
        }
        let sum: i64 = nu.iter().sum();
        if sum != 0 {
            return Err(Error::UnbalancedNu { sum });
        }
        Ok(Circuit {
            a: self.a.clone(),
            nu: nu.to_vec(),
            perm: self.perm.clone(),
        })
    }

    pub fn classify(&self) -> CobordismKind {
        let p1 = self.positive_count();
        let positives = &self.a[..p1];
        // the distinguished negative is the last entry in internal order
        let others = &self.a[p1..self.a.len() - 1];
        let mu = -self.a[self.a.len() - 1];
        let (p, q) = self.signature();
        let d = self.d() as i64;
        let pos_list = join(positives);
        if (p, q) == (d, 0) {
            CobordismKind {
                kind: Kind::WeightedProjective,
                mu,
                x_plus: format!("P({pos_list})"),
                x_minus: "∅".to_string(),
            }
        } else if (p, q) == (d - 1, 1) {
            let e = others[0];
            let x_minus = if e == -1 {
                format!("C^{p1}")
            } else {
                format!("C^{p1}/Z_{}", -e)
            };
            CobordismKind {
                kind: Kind::BlowUp,
                mu,
                x_plus: format!("O_P({pos_list})({e})"),
                x_minus,
            }
        } else {
            let neg_weights: Vec<i64> = others.iter().map(|x| -x).collect();
            let plus_bundles: Vec<String> = others.iter().map(|e| format!("O({e})")).collect();
            let minus_bundles: Vec<String> = positives.iter().map(|e| format!("O({e})")).collect();
            CobordismKind {
                kind: Kind::Flip,
                mu,
                x_plus: format!("Tot({} -> P({pos_list}))", plus_bundles.join("⊕")),
                x_minus: format!(
                    "Tot({} -> P({}))",
                    minus_bundles.join("⊕"),
                    join(&neg_weights)
                ),
            }
        }
    }

    /// Merges the first two positive entries: returns `(b, c)` with
    /// `b = (a_0 + a_1, a_2, ..., a_{d+1})` and `c = (a_0, a_1, -a_0 - a_1)`.
    ///
    /// Neither output is re-sorted, so generator `w_0` of `b` is the merged
    /// entry and `w_i` corresponds to `v_{i+1}`. For `d = 1` the merged
    /// vector has two entries and is rejected as too short.
    pub fn decompose(&self) -> Result<(Circuit, Circuit)> {
        if self.positive_count() < 2 {
            return Err(Error::NeedTwoPositives);
        }
        let (a, nu) = (&self.a, &self.nu);
        let mut b = vec![a[0] + a[1]];
        b.extend_from_slice(&a[2..]);
        let mut nu_b = vec![nu[0] + nu[1]];
        nu_b.extend_from_slice(&nu[2..]);
        let b = Circuit::from_internal(b, nu_b)?;
        let c = Circuit::from_internal(
            vec![a[0], a[1], -a[0] - a[1]],
            vec![nu[0], nu[1], -nu[0] - nu[1]],
        )?;
        Ok((b, c))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={};nu={}", join(&self.a), join(&self.nu))
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Circuit::parse(s)
    }
}

pub fn signature(c: &Circuit) -> (i64, i64) {
    c.signature()
}

pub fn volume(c: &Circuit) -> i64 {
    c.volume()
}

pub fn negate(c: &Circuit) -> Circuit {
    c.negate()
}

pub fn classify(c: &Circuit) -> CobordismKind {
    c.classify()
}

pub fn decompose(c: &Circuit) -> Result<(Circuit, Circuit)> {
    c.decompose()
}

pub(crate) fn parse_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
        })
        .collect()
}

fn join(values: &[i64]) -> String {
    values
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// All balanced circuits with `3 <= len <= max_d + 2` and nonzero entries in
/// `[-max_entry, max_entry]`, one per multiset, with `nu = 0`.
///
/// Output is sorted by length, then by internal entries.
pub fn enumerate_circuits(max_d: usize, max_entry: i64) -> Vec<Circuit> {
    let values: Vec<i64> = (-max_entry..=max_entry).filter(|&v| v != 0).collect();
    let mut out = Vec::new();
    for len in 3..=max_d + 2 {
        let mut current = Vec::with_capacity(len);
        multisets(&values, 0, len, &mut current, &mut |entries| {
            if entries.iter().sum::<i64>() == 0 {
                let c = validate_circuit(entries, &vec![0; entries.len()])
                    .expect("enumerated entries are valid");
                out.push(c);
            }
        });
    }
    out.sort_by(|x, y| (x.len(), &x.a).cmp(&(y.len(), &y.a)));
    out.dedup_by(|x, y| x.a == y.a);
    out
}

fn multisets(
    values: &[i64],
    start: usize,
    len: usize,
    current: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[i64]),
) {
    if current.len() == len {
        visit(current);
        return;
    }
    for i in start..values.len() {
        current.push(values[i]);
        multisets(values, i, len, current, visit);
        current.pop();
    }
}

/// Every balanced `nu` of the given length with entries in `[-bound, bound]`.
pub fn balanced_nus(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![0; len];
    fn rec(i: usize, bound: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == current.len() {
            if current.iter().sum::<i64>() == 0 {
                out.push(current.clone());
            }
            return;
        }
        for v in -bound..=bound {
            current[i] = v;
            rec(i + 1, bound, current, out);
        }
    }
    rec(0, bound, &mut current, &mut out);
    out
}
