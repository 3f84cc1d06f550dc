//! Heisenberg Fock sectors of the rank-one lattice `Z l`, realized on
//! symmetric functions, and the modes of the lattice vertex operator.
//!
//! A sector is labelled by an integer charge `c`: the highest weight is
//! `c/√β` with `β = ⟨l, l⟩`, so `v_p` has `c = -p`. Vectors are stored as
//! their images under `h_{-i_1}…h_{-i_k}|s⟩ ↦ (√β/2)^k p_{i_1}…p_{i_k}`.
//! In that picture the vertex operator is rational:
//!
//! ```text
//! Γ(z) = e^l z^c exp((β/2) Σ p_k z^k / k) exp(-2 Σ z^{-k} ∂/∂p_k),   Γ(z) = Σ a_n z^{-n-1}
//! ```
//!
//! and `a_{p-1} v_p = v_{p-β}` holds with `e^l` acting trivially on polynomials.
//! Heisenberg operators are used in the rational form `H_i = i ∂/∂p_i`,
//! `H_{-i} = p_i` (so `[H_i, H_{-i}] = i`); they differ from the oscillators
//! by the scalars `√(2/m)` and `√(m/2)`, and `[H_i, a_j] = (β/2) a_{i+j}` for
//! `i > 0`, `[H_i, a_j] = 2 a_{i+j}` for `i < 0`.

pub mod odd;
pub mod principal;
pub mod theorems;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::combinat::binomial;
use crate::error::{domain, Error, Result};
use crate::partition::{partitions, Partition};
use crate::scalar::{int, pow, rat, Rational};
use crate::symfunc::Basis;
use crate::SymFunc;

pub use principal::{principal_space, Component, GradedSubspace, Window};
pub use theorems::*;

/// The lattice `Z l` with `⟨l, l⟩ = norm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lattice {
    pub norm: i64,
}

impl Lattice {
    /// `⟨l, l⟩ = 2m`.
    pub fn even(m: i64) -> Result<Self> {
        if m < 1 {
            return domain(format!("lattice parameter must be positive, got m = {m}"));
        }
        Ok(Lattice { norm: 2 * m })
    }

    /// `⟨l, l⟩ = 2m - 1`.
    pub fn odd(m: i64) -> Result<Self> {
        if m < 1 {
            return domain(format!("lattice parameter must be positive, got m = {m}"));
        }
        Ok(Lattice { norm: 2 * m - 1 })
    }

    pub fn is_even(&self) -> bool {
        self.norm % 2 == 0
    }

    /// Lowest `L_0` eigenvalue in sector `c`: `c²/2β + (2-β)c/2β`.
    ///
    /// For `β = 2m` and `c = -p` this is `p²/4m + p(m-1)/2m`.
    pub fn base_energy(&self, c: i64) -> Rational {
        let b = self.norm;
        rat(c * c, 2 * b) + rat((2 - b) * c, 2 * b)
    }
}

/// A vector in the sector of charge `charge`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FockVector {
    pub lattice: Lattice,
    pub charge: i64,
    /// polynomial in power sums
    pub poly: SymFunc,
}

impl FockVector {
    pub fn zero(lattice: Lattice, charge: i64) -> Self {
        FockVector { lattice, charge, poly: SymFunc::zero(Basis::PowerSum) }
    }

    pub fn new(lattice: Lattice, charge: i64, poly: SymFunc) -> Self {
        FockVector { lattice, charge, poly: poly.to_power_sum() }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Levels present in the vector.
    pub fn levels(&self) -> Vec<usize> {
        let set: std::collections::BTreeSet<usize> = self.poly.terms().keys().map(Partition::size).collect();
        set.into_iter().collect()
    }

    /// The level if the vector is homogeneous and nonzero.
    pub fn level(&self) -> Option<usize> {
        match self.levels().as_slice() {
            [l] => Some(*l),
            _ => None,
        }
    }

    /// `L_0` eigenvalue of a homogeneous vector.
    pub fn deg_q(&self) -> Option<Rational> {
        self.level().map(|l| self.lattice.base_energy(self.charge) + int(l as i64))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        FockVector { poly: self.poly.scale(s), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.charge != other.charge || self.lattice != other.lattice {
            return domain("adding vectors from different sectors");
        }
        Ok(FockVector { poly: self.poly.add(&other.poly), ..self.clone() })
    }

    /// Coordinates over `partitions(level)` for a homogeneous vector.
    pub fn coordinates(&self, level: usize, index: &HashMap<Partition, usize>) -> crate::SparseVec {
        crate::SparseVec::from_pairs(
            self.poly
                .terms()
                .iter()
                .filter(|(l, _)| l.size() == level)
                .map(|(l, c)| (index[l], c.clone()))
                .collect(),
        )
    }
}

/// `v_p`, the highest-weight vector of charge `-p`.
pub fn extremal(lattice: Lattice, p: i64) -> FockVector {
    FockVector { lattice, charge: -p, poly: SymFunc::one(Basis::PowerSum) }
}

/// `H_i` for `i ≠ 0`: `i ∂/∂p_i` for `i > 0`, multiplication by `p_{-i}` for `i < 0`.
pub fn h_apply(i: i64, v: &FockVector) -> Result<FockVector> {
    let poly = match i {
        0 => return domain("h_apply needs a nonzero mode"),
        i if i > 0 => v.poly.d_powersum(i as usize).scale(&int(i)),
        i => v.poly.times_p((-i) as usize),
    };
    Ok(FockVector { poly, ..v.clone() })
}

/// `S_d = Σ_{λ ⊢ d} (β/2)^{l(λ)} p_λ / z_λ`, the `z^d` coefficient of the creation exponential.
fn creation_coefficient(norm: i64, d: usize) -> Arc<SymFunc> {
    type Cache = RwLock<HashMap<(i64, usize), Arc<SymFunc>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.read().unwrap().get(&(norm, d)) {
        return s.clone();
    }
    let half = rat(norm, 2);
    let s = SymFunc::from_terms(
        Basis::PowerSum,
        partitions(d)
            .into_iter()
            .map(|l| {
                let c = pow(&half, l.len() as i64) / Rational::from_integer(l.z_factor());
                (l, c)
            }),
    );
    let s = Arc::new(s);
    cache.write().unwrap().entry((norm, d)).or_insert(s).clone()
}

/// All sub-multisets `κ ⊂ ρ` with the factor `∏_k C(m_k(ρ), m_k(κ))`.
fn sub_multisets(rho: &Partition) -> Vec<(Partition, BigInt)> {
    let mults = rho.multiplicities();
    let mut out = vec![(Vec::<usize>::new(), BigInt::one())];
    for (part, c) in mults {
        let mut next = Vec::with_capacity(out.len() * (c + 1));
        for (parts, w) in &out {
            for j in 0..=c {
                let mut p2 = parts.clone();
                p2.extend(std::iter::repeat_n(part, j));
                next.push((p2, w * BigInt::from(binomial(c as u64, j as u64))));
            }
        }
        out = next;
    }
    out.into_iter().map(|(p, w)| (Partition::from_parts(p), w)).collect()
}

/// The mode `a_n`: charge `c ↦ c + β`, level `N ↦ N - c - 1 - n`, `L_0` lowered by `n`.
pub fn a_apply(n: i64, v: &FockVector) -> Result<FockVector> {
    let beta = v.lattice.norm;
    let c = v.charge;
    let mut out = SymFunc::zero(Basis::PowerSum);
    let minus_two = int(-2);
    for (rho, coef) in v.poly.terms() {
        for (kappa, w) in sub_multisets(rho) {
            let d = kappa.size() as i64 - c - n - 1;
            if d < 0 {
                continue;
            }
            let rest = rho.difference(&kappa).expect("sub-multiset");
            let factor = coef * Rational::from_integer(w) * pow(&minus_two, kappa.len() as i64);
            let s = creation_coefficient(beta, d as usize);
            for (lam, sc) in s.terms() {
                out.add_term(lam.union(&rest), &factor * sc);
            }
        }
    }
    let res = FockVector { lattice: v.lattice, charge: c + beta, poly: out };
    // grading bookkeeping: every term must sit at L_0 = (input) - n
    let e_in = v.lattice.base_energy(c);
    let e_out = v.lattice.base_energy(c + beta);
    for l_in in v.levels() {
        let l_out = l_in as i64 - c - 1 - n;
        if l_out >= 0 && e_out.clone() + int(l_out) != e_in.clone() + int(l_in as i64) - int(n) {
            return Err(Error::Internal(format!("a_{n} broke the grading at level {l_in}")));
        }
    }
    for l in res.levels() {
        if !v.levels().iter().any(|&l_in| l as i64 == l_in as i64 - c - 1 - n) {
            return Err(Error::Internal(format!("a_{n} produced an unexpected level {l}")));
        }
    }
    Ok(res)
}

/// Applies `a_{i_r} ⋯ a_{i_1}` (the first index acts first).
pub fn a_apply_word(indices: &[i64], v: &FockVector) -> Result<FockVector> {
    let mut w = v.clone();
    for &i in indices {
        if w.is_zero() {
            break;
        }
        w = a_apply(i, &w)?;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;

    fn lat(m: i64) -> Lattice {
        Lattice::even(m).unwrap()
    }

    #[test]
    fn extremal_degrees() {
        for m in 1..=3 {
            for p in -4..=6 {
                let d = extremal(lat(m), p).deg_q().unwrap();
                assert_eq!(d, rat(p * p, 4 * m) + rat(p * (m - 1), 2 * m));
            }
        }
        assert_eq!(extremal(lat(1), 0).deg_q().unwrap(), int(0));
        let diff = extremal(lat(2), 2).deg_q().unwrap() - extremal(lat(2), -2).deg_q().unwrap();
        assert_eq!(diff, int(1));
    }

    #[test]
    fn heisenberg() {
        let vac = extremal(lat(1), 0);
        let w = h_apply(1, &h_apply(-1, &vac).unwrap()).unwrap();
        assert_eq!(w, vac);
        assert!(h_apply(2, &extremal(lat(2), 3)).unwrap().is_zero());
        assert!(h_apply(0, &vac).is_err());
    }

    #[test]
    fn modes_on_extremal_vectors() {
        for m in 1..=3 {
            for p in 1..=5 {
                let v = extremal(lat(m), p);
                for i in p..p + 3 {
                    assert!(a_apply(i, &v).unwrap().is_zero());
                }
                assert_eq!(a_apply(p - 1, &v).unwrap(), extremal(lat(m), p - 2 * m));
            }
        }
    }

    #[test]
    fn small_products() {
        // m = 1: a_0 v_2 = p_1, a_0^2 v_3 ∝ p_2 - p_1^2
        let l = lat(1);
        let w = a_apply(0, &extremal(l, 2)).unwrap();
        assert_eq!(w.poly, SymFunc::p(partition![1]));
        let w = a_apply_word(&[0, 0], &extremal(l, 3)).unwrap();
        let expect = SymFunc::p(partition![2]).sub(&SymFunc::p(partition![1, 1]));
        let ratio = w.poly.coeff(&partition![2]);
        assert_eq!(w.poly, expect.scale(&ratio));
    }

    #[test]
    fn sub_multiset_weights() {
        let s = sub_multisets(&partition![1, 1]);
        let total: BigInt = s.iter().map(|(_, w)| w.clone()).sum();
        assert_eq!(total, BigInt::from(4));
    }
}
