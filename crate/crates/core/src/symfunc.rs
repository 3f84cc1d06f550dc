//! Symmetric functions in the monomial and power-sum bases, the deformed
//! power-sum pairing, derivatives `∂/∂p_k` and the first-variable extraction
//! operators `T_n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::factorial;
use crate::error::{domain, Error, Result};
use crate::mvpoly::MvPoly;
use crate::partition::{partitions, Partition};
use crate::scalar::{format_rational, Field, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "p")]
    PowerSum,
}

/// A finite combination of `m_λ` or of `p_λ`; inhomogeneous values are allowed.
#[derive(Clone, PartialEq)]
pub struct SymFunc<F> {
    basis: Basis,
    terms: BTreeMap<Partition, F>,
}

impl<F: Field> SymFunc<F> {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn constant(basis: Basis, c: F) -> Self {
        Self::from_terms(basis, [(Partition::empty(), c)])
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        Self::from_terms(basis, [(lambda, F::one())])
    }

    /// `m_λ`.
    pub fn m(lambda: Partition) -> Self {
        Self::basis_element(Basis::Monomial, lambda)
    }

    /// `p_λ`.
    pub fn p(lambda: Partition) -> Self {
        Self::basis_element(Basis::PowerSum, lambda)
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, F)>) -> Self {
        let mut f = Self::zero(basis);
        for (l, c) in terms {
            f.add_term(l, c);
        }
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, F> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> F {
        self.terms.get(lambda).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: F) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(lambda) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// Largest `|λ|` in the support; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut sizes = self.terms.keys().map(Partition::size);
        match sizes.next() {
            Some(d) => sizes.all(|s| s == d),
            None => true,
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        SymFunc {
            basis: self.basis,
            terms: self.terms.iter().filter(|(l, _)| l.size() == d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_terms(self.basis, self.terms.iter().map(|(l, c)| (l.clone(), c.clone() * s.clone())))
    }

    /// Sum, expressed in the basis of `self`.
    pub fn add(&self, other: &Self) -> Self {
        let other = other.to_basis(self.basis);
        let mut out = self.clone();
        for (l, c) in other.terms {
            out.add_term(l, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    /// Same element of `Λ` in the `target` basis.
    pub fn to_basis(&self, target: Basis) -> Self {
        if self.basis == target {
            return self.clone();
        }
        let mut out = Self::zero(target);
        let mut by_degree: BTreeMap<usize, Vec<(&Partition, &F)>> = BTreeMap::new();
        for (l, c) in &self.terms {
            by_degree.entry(l.size()).or_default().push((l, c));
        }
        for (d, items) in by_degree {
            let t = transition(d);
            for (l, c) in items {
                let row = match target {
                    Basis::Monomial => &t.p_to_m[l],
                    Basis::PowerSum => &t.m_to_p[l],
                };
                for (mu, v) in row {
                    out.add_term(mu.clone(), c.clone() * F::from_rational(v));
                }
            }
        }
        out
    }

    pub fn to_power_sum(&self) -> Self {
        self.to_basis(Basis::PowerSum)
    }

    pub fn to_monomial(&self) -> Self {
        self.to_basis(Basis::Monomial)
    }

    /// Product in `Λ`, computed in power sums and returned in the basis of `self`.
    pub fn multiply(&self, other: &Self) -> Self {
        let a = self.to_power_sum();
        let b = other.to_power_sum();
        let mut out = Self::zero(Basis::PowerSum);
        for (l, c) in &a.terms {
            for (mu, d) in &b.terms {
                out.add_term(l.union(mu), c.clone() * d.clone());
            }
        }
        out.to_basis(self.basis)
    }

    /// `∂/∂p_k`, returned in power sums.
    pub fn d_powersum(&self, k: usize) -> Self {
        let f = self.to_power_sum();
        let mut out = Self::zero(Basis::PowerSum);
        for (l, c) in &f.terms {
            let mult = l.multiplicity(k);
            if mult > 0 {
                out.add_term(l.remove_part(k).unwrap(), c.clone() * F::from_i64(mult as i64));
            }
        }
        out
    }

    /// `∂^κ = ∏ ∂/∂p_{κ_i}`, returned in power sums.
    pub fn d_multi(&self, kappa: &Partition) -> Self {
        let f = self.to_power_sum();
        let mut out = Self::zero(Basis::PowerSum);
        for (l, c) in &f.terms {
            if let Some((coef, rest)) = d_multi_on_basis(l, kappa) {
                out.add_term(rest, c.clone() * F::from_bigint(&coef));
            }
        }
        out
    }

    /// Multiplication by `p_k`, returned in power sums.
    pub fn times_p(&self, k: usize) -> Self {
        let f = self.to_power_sum();
        let pk = Partition::new(vec![k]).expect("positive part");
        Self::from_terms(Basis::PowerSum, f.terms.iter().map(|(l, c)| (l.union(&pk), c.clone())))
    }

    /// Realization in `N` variables.
    pub fn realize(&self, nvars: usize) -> MvPoly<F> {
        let mut out = MvPoly::zero(nvars);
        for (l, c) in &self.terms {
            let b = match self.basis {
                Basis::PowerSum => MvPoly::power_sum_product(nvars, l),
                Basis::Monomial => MvPoly::monomial_symmetric(nvars, l),
            };
            out = out.add(&b.scale(c));
        }
        out
    }

    /// Reads a symmetric polynomial back; faithful only when `N ≥` its degree.
    pub fn from_polynomial(poly: &MvPoly<F>) -> Self {
        Self::from_terms(Basis::Monomial, poly.symmetric_coefficients())
    }

    /// `T_n f`, computed directly: realize in `N` variables, differentiate `n`
    /// times in `x_1`, set `x_1 = 0` and relabel. Returned in the basis of `f`.
    pub fn t_extract(&self, n: usize, nvars: usize) -> Result<Self> {
        let d = self.degree().unwrap_or(0);
        if nvars < d + 1 {
            return Err(Error::Faithfulness(format!(
                "T_{n} on degree {d} needs at least {} variables, got {nvars}",
                d + 1
            )));
        }
        let mut poly = self.realize(nvars);
        for _ in 0..n {
            poly = poly.derivative(0);
        }
        let rest = poly.drop_variable_at_zero(0);
        Ok(Self::from_polynomial(&rest).to_basis(self.basis))
    }

    /// `T_n f = Σ_κ b_n(κ) ∂^κ f` from the cached coefficient table; power sums.
    pub fn t_powersum(&self, n: usize) -> Self {
        let table = b_table(n);
        let f = self.to_power_sum();
        let mut out = Self::zero(Basis::PowerSum);
        for (kappa, b) in table.iter() {
            let b = F::from_bigint(b);
            for (l, c) in &f.terms {
                if let Some((coef, rest)) = d_multi_on_basis(l, kappa) {
                    out.add_term(rest, c.clone() * b.clone() * F::from_bigint(&coef));
                }
            }
        }
        out
    }

    /// Substitutes `p_k ↦ images[k-1]` (a ring homomorphism in power sums).
    pub fn substitute(&self, images: &[SymFunc<F>]) -> Self {
        let f = self.to_power_sum();
        let mut out = Self::zero(Basis::PowerSum);
        for (l, c) in &f.terms {
            let mut term = Self::constant(Basis::PowerSum, c.clone());
            for &k in l.parts() {
                term = term.multiply(&images[k - 1]);
            }
            out = out.add(&term);
        }
        out
    }
}

/// `⟨f, g⟩_α` with `⟨p_λ, p_λ⟩ = α^{-l(λ)} z_λ`.
pub fn inner_alpha<F: Field>(f: &SymFunc<F>, g: &SymFunc<F>, alpha: &F) -> Result<F> {
    if alpha.is_zero() {
        return domain("inner product needs a nonzero coupling");
    }
    let a = f.to_power_sum();
    let b = g.to_power_sum();
    let inv = F::one() / alpha.clone();
    let mut acc = F::zero();
    for (l, c) in &a.terms {
        let d = b.coeff(l);
        if d.is_zero() {
            continue;
        }
        let w = crate::scalar::pow(&inv, l.len() as i64) * F::from_bigint(&l.z_factor());
        acc = acc + c.clone() * d * w;
    }
    Ok(acc)
}

/// `∂^κ p_λ = coef · p_{λ∖κ}`, or `None` if it vanishes.
pub fn d_multi_on_basis(lambda: &Partition, kappa: &Partition) -> Option<(BigInt, Partition)> {
    let mut coef = BigInt::one();
    for (k, c) in kappa.multiplicities() {
        let have = lambda.multiplicity(k);
        if have < c {
            return None;
        }
        for j in 0..c {
            coef *= BigInt::from(have - j);
        }
    }
    Some((coef, lambda.difference(kappa)?))
}

struct Transition {
    /// `p_λ = Σ P[λ][μ] m_μ`
    p_to_m: HashMap<Partition, Vec<(Partition, Rational)>>,
    /// `m_μ = Σ Q[μ][λ] p_λ`
    m_to_p: HashMap<Partition, Vec<(Partition, Rational)>>,
}

fn transition(d: usize) -> Arc<Transition> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Transition>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&d) {
        return t.clone();
    }
    let t = Arc::new(build_transition(d));
    cache.write().unwrap().entry(d).or_insert(t).clone()
}

/// Number of ways to distribute the parts of `lambda` into rows with the given capacities.
fn distributions(parts: &[usize], caps: &mut Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), BigInt>) -> BigInt {
    if parts.is_empty() {
        return if caps.iter().all(|&c| c == 0) { BigInt::one() } else { BigInt::zero() };
    }
    let mut key_caps = caps.clone();
    key_caps.sort_unstable();
    let key = (parts.len(), key_caps);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for i in 0..caps.len() {
        if caps[i] >= parts[0] {
            caps[i] -= parts[0];
            total += distributions(&parts[1..], caps, memo);
            caps[i] += parts[0];
        }
    }
    memo.insert(key, total.clone());
    total
}

fn build_transition(d: usize) -> Transition {
    let ps = partitions(d);
    let mut p_to_m: HashMap<Partition, Vec<(Partition, Rational)>> = HashMap::new();
    for l in &ps {
        let mut row = Vec::new();
        for mu in &ps {
            let mut memo = HashMap::new();
            let c = distributions(l.parts(), &mut mu.parts().to_vec(), &mut memo);
            if !c.is_zero() {
                row.push((mu.clone(), Rational::from_integer(c)));
            }
        }
        p_to_m.insert(l.clone(), row);
    }
    // p_μ = P[μ][μ] m_μ + Σ_{ν > μ} P[μ][ν] m_ν; solve from the top of the order down
    let mut m_to_p: HashMap<Partition, Vec<(Partition, Rational)>> = HashMap::new();
    for mu in ps.iter().rev() {
        let row = &p_to_m[mu];
        let mut acc: BTreeMap<Partition, Rational> = BTreeMap::new();
        acc.insert(mu.clone(), Rational::one());
        let mut diag = Rational::zero();
        for (nu, c) in row {
            if nu == mu {
                diag = c.clone();
            } else {
                for (l, v) in &m_to_p[nu] {
                    *acc.entry(l.clone()).or_insert_with(Rational::zero) -= c * v;
                }
            }
        }
        let inv = Rational::one() / diag;
        let out: Vec<(Partition, Rational)> = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(l, v)| (l, v * &inv))
            .collect();
        m_to_p.insert(mu.clone(), out);
    }
    Transition { p_to_m, m_to_p }
}

type BTable = Arc<Vec<(Partition, BigInt)>>;

/// The table `b_n(κ)` with `T_n = Σ_{κ ⊢ n} b_n(κ) ∂^κ`, keyed by sorted tuples.
///
/// Built by iterating `d/dx_1` on `f(p_k + x_1^k)`: each step either lowers
/// the power of `x_1` or appends a new `∂/∂p_k` with factor `k x_1^{k-1}`.
pub fn b_table(n: usize) -> BTable {
    static CACHE: OnceLock<RwLock<HashMap<usize, BTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&n) {
        return t.clone();
    }
    // state: ordered tuple of derivative indices -> coefficient of x^{Σ - t}
    let mut states: HashMap<Vec<usize>, BigInt> = HashMap::new();
    states.insert(Vec::new(), BigInt::one());
    for t in 0..n {
        let mut next: HashMap<Vec<usize>, BigInt> = HashMap::new();
        for (tuple, c) in &states {
            let sum: usize = tuple.iter().sum();
            if sum > t {
                *next.entry(tuple.clone()).or_insert_with(BigInt::zero) += c * BigInt::from(sum - t);
            }
            for k in 1..=(n - sum) {
                let mut tk = tuple.clone();
                tk.push(k);
                *next.entry(tk).or_insert_with(BigInt::zero) += c * BigInt::from(k);
            }
        }
        next.retain(|_, c| !c.is_zero());
        states = next;
    }
    let mut sym: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for (tuple, c) in states {
        if tuple.iter().sum::<usize>() == n {
            *sym.entry(Partition::from_parts(tuple)).or_insert_with(BigInt::zero) += c;
        }
    }
    let table = Arc::new(sym.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>());
    cache.write().unwrap().entry(n).or_insert(table).clone()
}

/// Operators as polynomials in generators, written in power-sum notation:
/// `p_k` stands for `∂/∂p_k` (or for `T_k`).
///
/// Returns `T_1, …, T_N` in terms of the `∂`s.
pub fn t_in_terms_of_d(n_max: usize) -> Vec<SymFunc<Rational>> {
    (1..=n_max)
        .map(|n| {
            SymFunc::from_terms(
                Basis::PowerSum,
                b_table(n).iter().map(|(k, b)| (k.clone(), Rational::from_integer(b.clone()))),
            )
        })
        .collect()
}

/// `∂/∂p_1, …, ∂/∂p_N` in terms of the `T`s, by solving the triangular system
/// `T_n = n! ∂_n + (terms in ∂_1, …, ∂_{n-1})`.
pub fn d_in_terms_of_t(n_max: usize) -> Vec<SymFunc<Rational>> {
    let t = t_in_terms_of_d(n_max);
    let mut d: Vec<SymFunc<Rational>> = Vec::new();
    for n in 1..=n_max {
        let lead = Partition::new(vec![n]).expect("positive");
        let nf = Rational::from_integer(factorial(n as u64));
        // lower part of T_n, as a polynomial in ∂_1..∂_{n-1}
        let mut lower = t[n - 1].clone();
        lower.terms.remove(&lead);
        let lower_in_t = lower.substitute(&d);
        let tn = SymFunc::p(lead);
        d.push(tn.sub(&lower_in_t).scale(&(Rational::one() / nf)));
    }
    d
}

/// Checks both directions of the equality of operator algebras up to `n_max`:
/// substituting `T ↦ T(∂)` into `∂(T)` must give back `∂_n`.
pub fn verify_operator_algebra(n_max: usize) -> bool {
    let t = t_in_terms_of_d(n_max);
    let d = d_in_terms_of_t(n_max);
    d.iter().enumerate().all(|(i, dn)| {
        let back = dn.substitute(&t);
        back == SymFunc::p(Partition::new(vec![i + 1]).unwrap())
    })
}

impl<F: Field> fmt::Debug for SymFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.basis {
            Basis::Monomial => "m",
            Basis::PowerSum => "p",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}·{b}{l}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SymFunc<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.basis {
            Basis::Monomial => "m",
            Basis::PowerSum => "p",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{b}{l}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    partition: Partition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymFuncRecord {
    basis: Basis,
    terms: Vec<TermRecord>,
}

impl Serialize for SymFunc<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncRecord {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| TermRecord { partition: l.clone(), coeff: format_rational(c) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SymFuncRecord::deserialize(d)?;
        let mut terms = Vec::with_capacity(r.terms.len());
        for t in r.terms {
            let c = crate::scalar::parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            terms.push((t.partition, c));
        }
        Ok(SymFunc::from_terms(r.basis, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;
    use crate::partition::partitions_up_to;
    use crate::scalar::{int, rat};

    type S = SymFunc<Rational>;

    #[test]
    fn basis_change_examples() {
        assert_eq!(S::m(partition![1]).to_power_sum(), S::p(partition![1]));
        let m11 = S::m(partition![1, 1]).to_power_sum();
        assert_eq!(m11.coeff(&partition![1, 1]), rat(1, 2));
        assert_eq!(m11.coeff(&partition![2]), rat(-1, 2));
        assert_eq!(S::m(partition![2]).to_power_sum(), S::p(partition![2]));
    }

    #[test]
    fn round_trip_all_partitions() {
        for l in partitions_up_to(10) {
            let f = S::m(l.clone());
            assert_eq!(f.to_power_sum().to_monomial(), f);
            let g = S::p(l);
            assert_eq!(g.to_monomial().to_power_sum(), g);
        }
    }

    #[test]
    fn products() {
        let f = S::m(partition![2, 1]).add(&S::m(partition![1]));
        assert_eq!(S::one(Basis::Monomial).multiply(&f), f);
        let p1 = S::p(partition![1]);
        let sq = p1.multiply(&p1).to_monomial();
        assert_eq!(sq, S::m(partition![2]).add(&S::m(partition![1, 1]).scale(&int(2))));
        let prod = S::m(partition![1]).multiply(&S::m(partition![1, 1]));
        assert_eq!(prod, S::m(partition![2, 1]).add(&S::m(partition![1, 1, 1]).scale(&int(3))));
    }

    #[test]
    fn pairing_examples() {
        let a = int(3);
        let p1 = S::p(partition![1]);
        assert_eq!(inner_alpha(&p1, &p1, &a).unwrap(), rat(1, 3));
        assert_eq!(inner_alpha(&S::p(partition![2]), &S::p(partition![1, 1]), &a).unwrap(), int(0));
        let p11 = S::p(partition![1, 1]);
        assert_eq!(inner_alpha(&p11, &p11, &a).unwrap(), rat(2, 9));
        assert!(inner_alpha(&p1, &p1, &int(0)).is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(S::p(partition![1, 1]).d_powersum(1), S::p(partition![1]).scale(&int(2)));
        assert!(S::p(partition![1, 1, 1]).d_powersum(2).is_zero());
    }

    #[test]
    fn b_table_small() {
        let t2 = b_table(2);
        let get = |k: &Partition| t2.iter().find(|(x, _)| x == k).map(|(_, b)| b.clone());
        assert_eq!(get(&partition![2]), Some(BigInt::from(2)));
        assert_eq!(get(&partition![1, 1]), Some(BigInt::from(1)));
    }

    #[test]
    fn t_examples() {
        for n in 1..=5 {
            let pn = S::p(Partition::new(vec![n]).unwrap());
            assert_eq!(pn.t_powersum(n), S::constant(Basis::PowerSum, Rational::from_integer(factorial(n as u64))));
        }
        let p11 = S::p(partition![1, 1]);
        assert_eq!(p11.t_extract(2, 4).unwrap(), S::constant(Basis::PowerSum, int(2)));
        assert_eq!(p11.t_powersum(2), S::constant(Basis::PowerSum, int(2)));
        assert!(S::one(Basis::PowerSum).t_extract(3, 2).unwrap().is_zero());
        assert!(p11.t_extract(1, 2).is_err());
    }

    #[test]
    fn t1_is_d1() {
        for l in partitions_up_to(6) {
            let f = S::p(l);
            assert_eq!(f.t_extract(1, f.degree().unwrap() + 1).unwrap(), f.d_powersum(1));
        }
    }

    #[test]
    fn operator_algebra_certificate() {
        assert!(verify_operator_algebra(6));
        let d = d_in_terms_of_t(2);
        // ∂_2 = (T_2 - T_1^2) / 2
        let expect = S::p(partition![2]).sub(&S::p(partition![1, 1])).scale(&rat(1, 2));
        assert_eq!(d[1], expect);
    }

    #[test]
    fn serde_round_trip() {
        let f = S::m(partition![2, 1]).scale(&rat(-3, 2));
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"basis":"m","terms":[{"partition":[2,1],"coeff":"-3/2"}]}"#);
        let g: S = serde_json::from_str(&j).unwrap();
        assert_eq!(f, g);
    }
}
