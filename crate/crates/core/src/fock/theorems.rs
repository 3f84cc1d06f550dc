//! Jack-basis statements: rectangular Jacks as `a_0^k v_p`, the Heisenberg
//! closure, reconstruction from Heisenberg matrix coefficients, the
//! quadratic relations and shift independence.

use std::collections::BTreeMap;

use serde::Serialize;

use super::principal::{level_index, principal_space, Window};
use super::{a_apply_word, extremal, h_apply, FockVector, Lattice};
use crate::combinat::falling_factorial;
use crate::error::{domain, Error, Result};
use crate::jack::jack;
use crate::partition::{partitions, subdiagrams, Partition};
use crate::scalar::{int, serde_rational, Rational};
use crate::symfunc::Basis;
use crate::{Echelon, SymFunc};

/// The rectangle `((p - m(k-1) - 1)^k)` matched by `a_0^k v_p`.
pub fn rectangle(m: i64, p: i64, k: usize) -> Result<Partition> {
    if m < 1 || p < 1 || k < 1 {
        return domain(format!("need m, p, k positive, got m = {m}, p = {p}, k = {k}"));
    }
    let w = p - m * (k as i64 - 1) - 1;
    if w < 0 {
        return domain(format!("negative rectangle width {w} for m = {m}, p = {p}, k = {k}"));
    }
    Ok(Partition::rectangle(w as usize, k))
}

fn jack_vector(m: i64, charge: i64, mu: &Partition) -> Result<FockVector> {
    let j = jack(mu, &int(m))?;
    Ok(FockVector::new(Lattice::even(m)?, charge, j.expansion))
}

/// `Ĵ` of the rectangle `((p - m(k-1) - 1)^k)` at coupling `m`, in sector `-p + 2mk`.
pub fn rect_jack_vector(m: i64, p: i64, k: usize) -> Result<FockVector> {
    let rect = rectangle(m, p, k)?;
    jack_vector(m, -p + 2 * m * k as i64, &rect)
}

fn a0_power(m: i64, p: i64, k: usize) -> Result<FockVector> {
    a_apply_word(&vec![0; k], &extremal(Lattice::even(m)?, p))
}

#[derive(Clone, Debug, Serialize)]
pub struct MainReport {
    pub m: i64,
    pub p: i64,
    pub k: usize,
    pub rectangle: Partition,
    #[serde(with = "serde_rational::option")]
    pub constant: Option<Rational>,
    pub matches: bool,
    /// first power-sum term where `a_0^k v_p` and `C·Ĵ` differ
    pub first_difference: Option<Partition>,
}

/// Tests `a_0^k v_p = C · Ĵ_rect` with `C ≠ 0`.
pub fn verify_theorem_main(m: i64, p: i64, k: usize) -> Result<MainReport> {
    let rect = rectangle(m, p, k)?;
    let lhs = a0_power(m, p, k)?;
    let rhs = rect_jack_vector(m, p, k)?;
    let (lead, jc) = rhs.poly.terms().iter().next_back().expect("Jack polynomials are nonzero");
    let c = lhs.poly.coeff(lead) / jc;
    let diff = lhs.poly.sub(&rhs.poly.scale(&c));
    let first_difference = diff.terms().keys().next().cloned();
    let matches = first_difference.is_none() && c != int(0) && lhs.charge == rhs.charge;
    Ok(MainReport {
        m,
        p,
        k,
        rectangle: rect,
        constant: (c != int(0)).then_some(c),
        matches,
        first_difference,
    })
}

fn to_row(f: &SymFunc, level: usize) -> crate::SparseVec {
    let index = level_index(level);
    crate::SparseVec::from_pairs(
        f.to_power_sum()
            .terms()
            .iter()
            .filter(|(l, _)| l.size() == level)
            .map(|(l, c)| (index[l], c.clone()))
            .collect(),
    )
}

fn from_row(row: &crate::SparseVec, level: usize) -> SymFunc {
    let parts = partitions(level);
    SymFunc::from_terms(Basis::PowerSum, row.entries().iter().map(|(i, c)| (parts[*i].clone(), c.clone())))
}

/// Span of `∂^κ f` for a homogeneous `f`, per level, using `op(i, ·)` as the
/// lowering operator of degree `i`.
fn lowering_closure(f: &SymFunc, op: &dyn Fn(usize, &SymFunc) -> Result<SymFunc>) -> Result<BTreeMap<usize, Echelon>> {
    let top = match f.degree() {
        Some(d) => d,
        None => return Ok(BTreeMap::new()),
    };
    let mut out: BTreeMap<usize, Echelon> = BTreeMap::new();
    out.insert(top, Echelon::from_rows(partitions(top).len(), [to_row(f, top)]));
    for level in (0..top).rev() {
        let mut ech = Echelon::new(partitions(level).len());
        for i in 1..=top - level {
            for row in out[&(level + i)].rows() {
                let g = op(i, &from_row(row, level + i))?;
                ech.insert(to_row(&g, level));
            }
        }
        out.insert(level, ech);
    }
    Ok(out)
}

fn heisenberg_closure(v: &FockVector) -> Result<BTreeMap<usize, Echelon>> {
    let op = |i: usize, g: &SymFunc| -> Result<SymFunc> {
        Ok(h_apply(i as i64, &FockVector { poly: g.clone(), ..v.clone() })?.poly)
    };
    lowering_closure(&v.poly, &op)
}

fn jack_span(m: i64, rect: &Partition) -> Result<BTreeMap<usize, Echelon>> {
    let mut out: BTreeMap<usize, Echelon> =
        (0..=rect.size()).map(|l| (l, Echelon::new(partitions(l).len()))).collect();
    for mu in subdiagrams(rect.part(0), rect.len()) {
        let j = jack(&mu, &int(m))?;
        out.get_mut(&mu.size()).unwrap().insert(to_row(&j.expansion, mu.size()));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelSpan {
    pub level: usize,
    #[serde(with = "serde_rational")]
    pub energy: Rational,
    pub closure_dim: usize,
    pub jack_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JackSpanReport {
    pub m: i64,
    pub p: i64,
    pub k: usize,
    pub rectangle: Partition,
    pub levels: Vec<LevelSpan>,
    /// the same statement for `J_rect` in symmetric functions
    pub base_equal: bool,
    pub matches: bool,
    pub offending_level: Option<usize>,
}

/// Compares `C[h_1, h_2, …] a_0^k v_p` with `span{Ĵ_μ : μ ⊂ rect}` per bidegree.
pub fn verify_theorem_jack(m: i64, p: i64, k: usize) -> Result<JackSpanReport> {
    let rect = rectangle(m, p, k)?;
    let v = a0_power(m, p, k)?;
    let closure = heisenberg_closure(&v)?;
    let jacks = jack_span(m, &rect)?;
    let j = jack(&rect, &int(m))?.expansion.to_power_sum();
    let base = lowering_closure(&j, &|i, g: &SymFunc| Ok(g.d_powersum(i)))?;
    let lattice = Lattice::even(m)?;
    let mut levels = Vec::new();
    let mut offending_level = None;
    let mut base_equal = true;
    for (level, je) in &jacks {
        let empty = Echelon::new(je.ncols());
        let ce = closure.get(level).unwrap_or(&empty);
        let be = base.get(level).unwrap_or(&empty);
        let equal = ce.same_span(je);
        base_equal &= be.same_span(je);
        if !equal && offending_level.is_none() {
            offending_level = Some(*level);
        }
        levels.push(LevelSpan {
            level: *level,
            energy: lattice.base_energy(v.charge) + int(*level as i64),
            closure_dim: ce.rank(),
            jack_dim: je.rank(),
            equal,
        });
    }
    let extra = closure.iter().any(|(l, e)| !jacks.contains_key(l) && e.rank() > 0);
    let matches = offending_level.is_none() && !extra && base_equal;
    Ok(JackSpanReport { m, p, k, rectangle: rect, levels, base_equal, matches, offending_level })
}

/// Every `a_{i_1} ⋯ a_{i_k} v_p` with `0 ≤ i_j ≤ p - 1` lies in `C[h_1, …] a_0^k v_p`.
pub fn verify_heis_closure(m: i64, p: i64, k: usize) -> Result<bool> {
    let v = a0_power(m, p, k)?;
    let closure = heisenberg_closure(&v)?;
    let lattice = Lattice::even(m)?;
    for idx in crate::combinat::multisets(p as usize, k) {
        let word: Vec<i64> = idx.iter().rev().map(|&i| i as i64).collect();
        let w = a_apply_word(&word, &extremal(lattice, p))?;
        let Some(level) = w.level() else {
            if w.is_zero() {
                continue;
            }
            return Err(Error::Internal("monomial vector is not homogeneous".into()));
        };
        match closure.get(&level) {
            Some(e) if e.contains(&to_row(&w.poly, level)) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

fn distinct_orderings(parts: &[usize]) -> Vec<Vec<usize>> {
    let mut v = parts.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

/// Recovers `J_μ(m)` from the numbers `c(i_1, …, i_r)` with
/// `h_{i_1} ⋯ h_{i_r} Ĵ_μ = c(i_1, …, i_r) v_{p - 2mk}`.
pub fn reconstruct_jack(m: i64, p: i64, k: usize, mu: &Partition) -> Result<SymFunc> {
    let rect = rectangle(m, p, k)?;
    if !rect.contains(mu) {
        return domain(format!("{mu} is not inside the rectangle {rect}"));
    }
    let charge = -p + 2 * m * k as i64;
    let v = jack_vector(m, charge, mu)?;
    let closure = heisenberg_closure(&a0_power(m, p, k)?)?;
    let d = mu.size();
    if !closure.get(&d).is_some_and(|e| e.contains(&to_row(&v.poly, d))) {
        return Err(Error::Internal(format!("Ĵ_{mu} is not in the Heisenberg closure")));
    }
    let mut out = SymFunc::zero(Basis::PowerSum);
    for rho in partitions(d) {
        let mut value: Option<Rational> = None;
        for word in distinct_orderings(rho.parts()) {
            let mut w = v.clone();
            for &i in &word {
                w = h_apply(i as i64, &w)?;
            }
            let c = w.poly.coeff(&Partition::empty());
            if value.as_ref().is_some_and(|x| x != &c) {
                return Err(Error::Internal(format!("Heisenberg modes disagree on orderings of {rho}")));
            }
            value = Some(c);
        }
        let c = value.unwrap_or_else(|| int(0));
        out.add_term(rho.clone(), c / Rational::from_integer(rho.z_factor()));
    }
    Ok(out.to_monomial())
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub i: u32,
    pub s: usize,
    /// some single product in the relation is nonzero on `v_{1-m}`
    pub nontrivial: bool,
    pub vanishes: bool,
}

/// Applies `Σ_{α_1+α_2=s} (α_1)_i (α_2)_i a_{-m-α_1} a_{-m-α_2}` to `v_{1-m}`.
pub fn verify_relations(m: i64, s_max: usize) -> Result<Vec<RelationCheck>> {
    let lattice = Lattice::even(m)?;
    let v = extremal(lattice, 1 - m);
    let mut out = Vec::new();
    for i in 0..m as u32 {
        for s in 0..=s_max {
            let mut total = FockVector::zero(lattice, v.charge + 2 * lattice.norm);
            let mut nontrivial = false;
            for a1 in 0..=s {
                let a2 = s - a1;
                let c = falling_factorial(a1 as i64, i) * falling_factorial(a2 as i64, i);
                let w = a_apply_word(&[-m - a2 as i64, -m - a1 as i64], &v)?;
                nontrivial |= !w.is_zero();
                if c != 0 {
                    total = total.add(&w.scale(&int(c)))?;
                }
            }
            out.push(RelationCheck { i, s, nontrivial, vanishes: total.is_zero() });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftReport {
    pub m: i64,
    pub n: usize,
    pub dims: Vec<(i64, BTreeMap<String, usize>)>,
    pub independent: bool,
}

/// Per-`(k, weight)` dimensions of `V_(m),p(n)` for several `p`.
pub fn shift_independence(m: i64, n: usize, ps: &[i64]) -> Result<ShiftReport> {
    let mut dims = Vec::new();
    let mut first: Option<BTreeMap<(usize, i64), usize>> = None;
    let mut independent = true;
    for &p in ps {
        let d = principal_space(m, p, Window::Finite(n), None)?.dims_by_weight();
        if let Some(f) = &first {
            independent &= f == &d;
        } else {
            first = Some(d.clone());
        }
        dims.push((p, d.into_iter().map(|((k, s), c)| (format!("{k},{s}"), c)).collect()));
    }
    Ok(ShiftReport { m, n, dims, independent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;

    #[test]
    fn main_theorem_small() {
        for (m, p, k) in [(1, 1, 1), (1, 2, 1), (2, 4, 2), (1, 3, 2), (2, 3, 1)] {
            let r = verify_theorem_main(m, p, k).unwrap();
            assert!(r.matches, "{m} {p} {k}: {:?}", r.first_difference);
        }
        assert!(rect_jack_vector(2, 2, 2).is_err());
        assert_eq!(rectangle(1, 3, 2).unwrap(), partition![1, 1]);
    }

    #[test]
    fn jack_spans() {
        let r = verify_theorem_jack(2, 4, 1).unwrap();
        assert!(r.matches);
        assert_eq!(r.levels.iter().map(|l| l.jack_dim).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        let r = verify_theorem_jack(1, 3, 2).unwrap();
        assert_eq!(r.levels.iter().map(|l| l.closure_dim).sum::<usize>(), 3);
    }

    #[test]
    fn reconstruction() {
        assert_eq!(reconstruct_jack(1, 2, 1, &Partition::empty()).unwrap(), SymFunc::one(Basis::Monomial));
        assert_eq!(reconstruct_jack(1, 2, 1, &partition![1]).unwrap(), SymFunc::p(partition![1]).to_monomial());
        let mu = partition![2];
        assert_eq!(reconstruct_jack(2, 4, 1, &mu).unwrap(), jack(&mu, &int(2)).unwrap().expansion);
    }

    #[test]
    fn relations_and_closure() {
        for m in 1..=2 {
            assert!(verify_relations(m, 4).unwrap().iter().all(|r| r.vanishes));
        }
        assert!(verify_heis_closure(1, 3, 2).unwrap());
        assert!(shift_independence(1, 3, &[3, 4, 6]).unwrap().independent);
    }
}
