//! Polynomials in finitely many variables `x_1, …, x_N`, used to realize
//! symmetric functions concretely.

use std::collections::HashMap;

use crate::partition::Partition;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct MvPoly<F> {
    nvars: usize,
    terms: HashMap<Vec<u32>, F>,
}

impl<F: Field> MvPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MvPoly { nvars, terms: HashMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &HashMap<Vec<u32>, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: F) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(exps) {
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

    pub fn coeff(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    /// `p_k(x_1, …, x_N)`.
    pub fn power_sum(nvars: usize, k: u32) -> Self {
        let mut p = Self::zero(nvars);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = k;
            p.add_term(e, F::one());
        }
        p
    }

    /// `p_λ(x_1, …, x_N)`.
    pub fn power_sum_product(nvars: usize, lambda: &Partition) -> Self {
        lambda
            .parts()
            .iter()
            .fold(Self::one(nvars), |acc, &k| acc.mul(&Self::power_sum(nvars, k as u32)))
    }

    /// `m_λ(x_1, …, x_N)`; zero if `l(λ) > N`.
    pub fn monomial_symmetric(nvars: usize, lambda: &Partition) -> Self {
        let mut p = Self::zero(nvars);
        if lambda.len() > nvars {
            return p;
        }
        let mut exps: Vec<u32> = lambda.parts().iter().map(|&x| x as u32).collect();
        exps.resize(nvars, 0);
        exps.sort_unstable();
        // iterate over distinct permutations
        loop {
            p.add_term(exps.clone(), F::one());
            if !next_permutation(&mut exps) {
                break;
            }
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// `∂/∂x_var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c.clone() * F::from_i64(e[var] as i64));
            }
        }
        out
    }

    /// Sets `x_var = 0` and removes that variable, shifting the later ones down.
    pub fn drop_variable_at_zero(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                let mut e2 = e.clone();
                e2.remove(var);
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Multiplies by `x_var^k` after inserting a new variable at position `var`.
    pub fn insert_variable_power(&self, var: usize, k: u32) -> Self {
        let mut out = Self::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.insert(var, k);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Reads off the coefficients of `m_λ` from a symmetric polynomial.
    pub fn symmetric_coefficients(&self) -> Vec<(Partition, F)> {
        let mut out: Vec<(Partition, F)> = self
            .terms
            .iter()
            .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
            .map(|(e, c)| (Partition::from_parts(e.iter().map(|&x| x as usize).collect()), c.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            let mut s = e.clone();
            s.sort_unstable_by(|a, b| b.cmp(a));
            self.coeff(&s) == *c
        })
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl<F: Field> MvPoly<F> {
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;
    use crate::scalar::{int, Rational};

    #[test]
    fn monomial_and_power_sums() {
        let m21 = MvPoly::<Rational>::monomial_symmetric(3, &partition![2, 1]);
        assert_eq!(m21.terms().len(), 6);
        let p11 = MvPoly::<Rational>::power_sum_product(3, &partition![1, 1]);
        let expect = MvPoly::monomial_symmetric(3, &partition![2])
            .add(&MvPoly::monomial_symmetric(3, &partition![1, 1]).scale(&int(2)));
        assert_eq!(p11, expect);
        assert!(p11.is_symmetric());
        assert_eq!(p11.derivative(0).derivative(0).drop_variable_at_zero(0), MvPoly::constant(2, int(2)));
    }
}
