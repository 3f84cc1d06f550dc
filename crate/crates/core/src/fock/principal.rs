//! Principal subspaces `C[a_{p-1}, a_{p-2}, …] v_p` and their finitizations,
//! row reduced per bidegree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{a_apply, extremal, FockVector, Lattice};
use crate::error::{domain, Error, Result};
use crate::partition::{partitions, Partition};
use crate::qseries::QSeries;
use crate::scalar::{int, serde_rational, Rational};
use crate::Echelon;

/// Which modes generate: `a_{p-1}, …, a_{p-n}` or all `a_j` with `j < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Window {
    Finite(usize),
    Infinite,
}

/// One bidegree of a graded subspace.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    /// number of generators applied
    pub k: usize,
    /// sector charge in units of `1/√β`
    pub charge: i64,
    #[serde(with = "serde_rational")]
    pub energy: Rational,
    /// power-sum degree inside the sector
    pub level: usize,
    /// `Σ (p - 1 - i_α)` for the generating monomials
    pub weight: i64,
    pub dim: usize,
    /// mode indices of the monomials kept as basis, in application order
    pub basis_labels: Vec<Vec<i64>>,
    #[serde(skip)]
    pub echelon: Echelon,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedSubspace {
    pub lattice: Lattice,
    pub p: i64,
    pub window: Window,
    #[serde(with = "serde_rational::option")]
    pub cutoff: Option<Rational>,
    pub components: Vec<Component>,
}

impl GradedSubspace {
    pub fn dim(&self) -> usize {
        self.components.iter().map(|c| c.dim).sum()
    }

    /// `Σ dim · z^charge q^energy`, final up to the cutoff.
    pub fn character(&self) -> QSeries {
        let mut s = QSeries::zero();
        for c in &self.components {
            s.add_term(c.charge, c.energy.clone(), BigInt::from(c.dim));
        }
        match &self.cutoff {
            Some(b) => s.truncate(b.clone()),
            None => s,
        }
    }

    /// Dimensions keyed by `(k, weight)`, the grading of the quadratic algebra.
    pub fn dims_by_weight(&self) -> BTreeMap<(usize, i64), usize> {
        self.components.iter().filter(|c| c.dim > 0).map(|c| ((c.k, c.weight), c.dim)).collect()
    }

    pub fn component(&self, k: usize, energy: &Rational) -> Option<&Component> {
        self.components.iter().find(|c| c.k == k && &c.energy == energy)
    }
}

pub(crate) fn level_index(level: usize) -> Arc<HashMap<Partition, usize>> {
    Arc::new(partitions(level).into_iter().enumerate().map(|(i, l)| (l, i)).collect())
}

pub(crate) struct Generated {
    pub(crate) k: usize,
    pub(crate) label: Vec<i64>,
    pub(crate) vector: FockVector,
}

/// Spans monomials in the modes `indices` (listed in decreasing order, possibly
/// lazily infinite) applied to `v_p`, weakly decreasing when `repeat`, strictly
/// otherwise. Returns every nonzero monomial vector up to the cutoff.
pub(crate) fn generate(
    lattice: Lattice,
    p: i64,
    indices: &dyn Fn(usize) -> Option<i64>,
    cutoff: Option<&Rational>,
    repeat: bool,
    max_k: usize,
) -> Result<Vec<Generated>> {
    let mut out = Vec::new();
    let v = extremal(lattice, p);
    let d0 = v.deg_q().expect("extremal vector is homogeneous");
    out.push(Generated { k: 0, label: Vec::new(), vector: v.clone() });
    #[allow(clippy::too_many_arguments)]
    fn rec(
        v: &FockVector,
        deg: &Rational,
        start: usize,
        label: &mut Vec<i64>,
        indices: &dyn Fn(usize) -> Option<i64>,
        cutoff: Option<&Rational>,
        repeat: bool,
        max_k: usize,
        out: &mut Vec<Generated>,
    ) -> Result<()> {
        let mut pos = start;
        while let Some(j) = indices(pos) {
            let d = deg - int(j);
            if cutoff.is_some_and(|c| &d > c) {
                break;
            }
            let w = a_apply(j, v)?;
            if !w.is_zero() {
                if label.len() + 1 > max_k {
                    return Err(Error::Truncation(format!(
                        "more than {max_k} generators give nonzero vectors; raise the bound"
                    )));
                }
                label.push(j);
                out.push(Generated { k: label.len(), label: label.clone(), vector: w.clone() });
                rec(&w, &d, if repeat { pos } else { pos + 1 }, label, indices, cutoff, repeat, max_k, out)?;
                label.pop();
            }
            pos += 1;
        }
        Ok(())
    }
    rec(&v, &d0, 0, &mut Vec::new(), indices, cutoff, repeat, max_k, &mut out)?;
    Ok(out)
}

/// Row reduces generated vectors per bidegree.
pub(crate) fn reduce_components(lattice: Lattice, p: i64, generated: Vec<Generated>) -> Vec<Component> {
    let mut groups: BTreeMap<(usize, usize), Vec<Generated>> = BTreeMap::new();
    for g in generated {
        let level = g.vector.level().expect("monomial vectors are homogeneous");
        groups.entry((g.k, level)).or_default().push(g);
    }
    let groups: Vec<((usize, usize), Vec<Generated>)> = groups.into_iter().collect();
    let mut comps: Vec<Component> = groups
        .into_par_iter()
        .map(|((k, level), gens)| {
            let index = level_index(level);
            let charge = -p + lattice.norm * k as i64;
            let mut ech = Echelon::new(index.len());
            let mut labels = Vec::new();
            let mut weight = 0;
            for g in &gens {
                weight = g.label.iter().map(|i| p - 1 - i).sum();
                if ech.insert(g.vector.coordinates(level, &index)) {
                    labels.push(g.label.clone());
                }
            }
            Component {
                k,
                charge,
                energy: lattice.base_energy(charge) + int(level as i64),
                level,
                weight,
                dim: ech.rank(),
                basis_labels: labels,
                echelon: ech,
            }
        })
        .collect();
    comps.sort_by(|a, b| (a.k, &a.energy).cmp(&(b.k, &b.energy)));
    comps
}

/// `V_(m),p(n) = C[a_{p-1}, …, a_{p-n}] v_p` or, for an infinite window,
/// `V_(m),p` truncated at `L_0 ≤ cutoff`.
pub fn principal_space(m: i64, p: i64, window: Window, cutoff: Option<Rational>) -> Result<GradedSubspace> {
    let lattice = Lattice::even(m)?;
    let (max_k, indices): (usize, Box<dyn Fn(usize) -> Option<i64> + Sync>) = match window {
        Window::Finite(n) => (n + 1, Box::new(move |pos| (pos < n).then(|| p - 1 - pos as i64))),
        Window::Infinite => {
            if cutoff.is_none() {
                return domain("an infinite window needs a finite cutoff");
            }
            (usize::MAX, Box::new(move |pos| Some(p - 1 - pos as i64)))
        }
    };
    let generated = generate(lattice, p, &*indices, cutoff.as_ref(), true, max_k)?;
    let components = reduce_components(lattice, p, generated);
    Ok(GradedSubspace { lattice, p, window, cutoff, components })
}
