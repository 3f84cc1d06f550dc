//! Truncated two-variable series `Σ c z^u q^e` with integer `u` and rational `e`.
//!
//! The `z` exponent is an integer label: a generator count for the algebra
//! characters, or a charge measured in units of `1/√(2m)` for Fock sectors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::{format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<(i64, Rational), BigInt>,
    /// Every coefficient with q-exponent `<= bound` is final; `None` means exact.
    bound: Option<Rational>,
}

impl QSeries {
    pub fn zero() -> Self {
        QSeries { terms: BTreeMap::new(), bound: None }
    }

    pub fn one() -> Self {
        Self::monomial(0, int(0), BigInt::one())
    }

    pub fn monomial(z: i64, q: Rational, coeff: BigInt) -> Self {
        let mut s = Self::zero();
        s.add_term(z, q, coeff);
        s
    }

    /// `Σ_e coeffs[e] q^e` with charge label `z`.
    pub fn from_q_coeffs(z: i64, coeffs: &[BigInt]) -> Self {
        let mut s = Self::zero();
        for (e, c) in coeffs.iter().enumerate() {
            s.add_term(z, int(e as i64), c.clone());
        }
        s
    }

    pub fn bound(&self) -> Option<&Rational> {
        self.bound.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, z: i64, q: Rational, coeff: BigInt) {
        if self.bound.as_ref().is_some_and(|b| &q > b) || coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((z, q)) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Drops terms above `bound` and records it.
    pub fn truncate(mut self, bound: Rational) -> Self {
        let b = match self.bound.take() {
            Some(old) if old < bound => old,
            _ => bound,
        };
        self.terms.retain(|(_, q), _| q <= &b);
        self.bound = Some(b);
        self
    }

    pub fn coeff(&self, z: i64, q: &Rational) -> BigInt {
        self.terms.get(&(z, q.clone())).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational, &BigInt)> {
        self.terms.iter().map(|((z, q), c)| (*z, q, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn low_q(&self) -> Option<Rational> {
        self.terms.keys().map(|(_, q)| q).min().cloned()
    }

    /// Multiplies by `z^dz q^dq`; the bound shifts along.
    pub fn shift(&self, dz: i64, dq: &Rational) -> Self {
        QSeries {
            terms: self.terms.iter().map(|((z, q), c)| ((z + dz, q + dq), c.clone())).collect(),
            bound: self.bound.as_ref().map(|b| b + dq),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        out.bound = self.bound.clone();
        for ((z, q), v) in &self.terms {
            out.add_term(*z, q.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let bound = match (&self.bound, &other.bound) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        let mut out = QSeries { terms: self.terms.clone(), bound: None };
        for ((z, q), c) in &other.terms {
            out.add_term(*z, q.clone(), c.clone());
        }
        match bound {
            Some(b) => out.truncate(b),
            None => out,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let low = |s: &Self| s.low_q().or_else(|| s.bound.clone());
        let bound = match (&self.bound, &other.bound) {
            (None, None) => None,
            (Some(a), None) => low(other).map(|l| a + l),
            (None, Some(b)) => low(self).map(|l| b + l),
            (Some(a), Some(b)) => match (low(self), low(other)) {
                (Some(la), Some(lb)) => Some((a + lb).min(b + la)),
                _ => Some(a.min(b).clone()),
            },
        };
        let mut acc: BTreeMap<(i64, Rational), BigInt> = BTreeMap::new();
        for ((z1, q1), c1) in &self.terms {
            for ((z2, q2), c2) in &other.terms {
                let q = q1 + q2;
                if bound.as_ref().is_some_and(|b| &q > b) {
                    continue;
                }
                *acc.entry((z1 + z2, q)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        QSeries { terms: acc, bound }
    }

    /// Sum of all coefficients (the value at `z = q = 1` of a polynomial).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Sum of coefficients with the given `z` label.
    pub fn z_total(&self, z: i64) -> BigInt {
        self.terms.iter().filter(|((zz, _), _)| *zz == z).map(|(_, c)| c).sum()
    }

    /// Restriction to the given `z` label.
    pub fn z_component(&self, z: i64) -> Self {
        QSeries {
            terms: self.terms.iter().filter(|((zz, _), _)| *zz == z).map(|(k, c)| (k.clone(), c.clone())).collect(),
            bound: self.bound.clone(),
        }
    }

    /// Distinct `z` labels in increasing order.
    pub fn z_labels(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.terms.keys().map(|(z, _)| *z).collect();
        v.dedup();
        v
    }

    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Coefficients as wire records, sorted by `(z, q)`.
    pub fn records(&self) -> Vec<SeriesTerm> {
        self.terms
            .iter()
            .map(|((z, q), c)| SeriesTerm {
                z_charge_units: *z,
                q_exponent: format_rational(q),
                coeff: c.to_i64().map(CoeffRepr::Small).unwrap_or_else(|| CoeffRepr::Big(c.to_string())),
            })
            .collect()
    }
}

/// A coefficient on the wire; falls back to a decimal string past `i64`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRepr {
    Small(i64),
    Big(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub z_charge_units: i64,
    pub q_exponent: String,
    pub coeff: CoeffRepr,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.records().serialize(s)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, ((z, q), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if *z != 0 {
                write!(f, "·z^{z}")?;
            }
            if !q.is_zero() {
                write!(f, "·q^{q}")?;
            }
        }
        if let Some(b) = &self.bound {
            write!(f, " + O(q^>{b})")?;
        }
        Ok(())
    }
}

/// Coefficients of the Gaussian binomial `[a choose b]_q`, lowest degree first.
pub fn qbinomial_coeffs(a: usize, b: usize) -> Vec<BigInt> {
    if b > a {
        return Vec::new();
    }
    // row[j] = [i choose j]_q as coefficient vectors
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=a {
        let mut next = Vec::with_capacity(i + 1);
        for j in 0..=i.min(b) {
            let mut c: Vec<BigInt> = if j < i { row[j].clone() } else { Vec::new() };
            if j >= 1 {
                // + q^{i-j} [i-1 choose j-1]
                let shift = i - j;
                let prev = &row[j - 1];
                if c.len() < prev.len() + shift {
                    c.resize(prev.len() + shift, BigInt::zero());
                }
                for (e, v) in prev.iter().enumerate() {
                    c[e + shift] += v;
                }
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(b)
}

/// Gaussian binomial `[a choose b]_q` as an exact polynomial in `q`.
///
/// Zero when `a < b`; negative arguments are a domain error.
pub fn qbinomial(a: i64, b: i64) -> Result<QSeries> {
    if a < 0 || b < 0 {
        return domain(format!("qbinomial({a}, {b}) needs nonnegative arguments"));
    }
    Ok(QSeries::from_q_coeffs(0, &qbinomial_coeffs(a as usize, b as usize)))
}

/// `1/((1-q)…(1-q^k))` to q-degree `bound`, as integer coefficients.
pub fn inv_qpoch_coeffs(k: usize, bound: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); bound + 1];
    c[0] = BigInt::one();
    for part in 1..=k {
        for e in part..=bound {
            let v = c[e - part].clone();
            c[e] += v;
        }
    }
    c
}

/// `1/(q;q)_∞` to q-degree `bound`.
pub fn inv_qpoch_inf_coeffs(bound: usize) -> Vec<BigInt> {
    inv_qpoch_coeffs(bound, bound)
}

/// Number of partitions of `n` into at most `k` parts.
pub fn partitions_at_most_k_parts(n: i64, k: usize) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    inv_qpoch_coeffs(k, n as usize).swap_remove(n as usize)
}
