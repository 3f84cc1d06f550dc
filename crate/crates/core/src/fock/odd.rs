//! Exterior principal subspaces for odd lattices.
//!
//! For `⟨l, l⟩ = 2m - 1` the modes anticommute, so `U(n)` is spanned by
//! strictly decreasing words `a_{i_1} ⋯ a_{i_k} v_n`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::principal::{generate, reduce_components};
use super::Lattice;
use crate::combinat::fibonacci_m;
use crate::error::{domain, Result};

#[derive(Clone, Debug, Serialize)]
pub struct OddReport {
    pub m: i64,
    pub n: usize,
    pub dim: usize,
    pub conjectured: u128,
    pub agrees: bool,
    /// dimensions keyed by `"k,weight"`
    pub dims: BTreeMap<String, usize>,
}

/// `dim U(n)` with `U(n) = Λ(a_{n-1}, …, a_0) v_n`, next to `F_n^(m)`.
pub fn odd_principal_dim(m: i64, n: usize) -> Result<OddReport> {
    if n == 0 {
        return domain("window must be positive");
    }
    let lattice = Lattice::odd(m)?;
    let p = n as i64;
    let indices = move |pos: usize| (pos < n).then(|| p - 1 - pos as i64);
    let generated = generate(lattice, p, &indices, None, false, n)?;
    let comps = reduce_components(lattice, p, generated);
    let dim = comps.iter().map(|c| c.dim).sum();
    let dims = comps
        .iter()
        .filter(|c| c.dim > 0)
        .map(|c| (format!("{},{}", c.k, c.weight), c.dim))
        .collect();
    let conjectured = fibonacci_m(m as usize, n);
    Ok(OddReport { m, n, dim, conjectured, agrees: dim as u128 == conjectured, dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{a_apply_word, extremal};

    #[test]
    fn modes_anticommute() {
        for m in 1..=2 {
            let v = extremal(Lattice::odd(m).unwrap(), 3);
            let x = a_apply_word(&[1, 0], &v).unwrap();
            let y = a_apply_word(&[0, 1], &v).unwrap();
            assert!(x.add(&y).unwrap().is_zero());
            assert!(a_apply_word(&[1, 1], &v).unwrap().is_zero());
        }
    }

    #[test]
    fn first_values() {
        let r = odd_principal_dim(1, 1).unwrap();
        assert_eq!((r.dim, r.conjectured), (2, 2));
        let r = odd_principal_dim(1, 2).unwrap();
        assert_eq!(r.conjectured, 4);
    }
}
