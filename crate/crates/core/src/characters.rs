//! Closed-form characters and the semi-infinite labelling of `L_(m),i`.
//!
//! Apart from `ch_a`, whose `z` exponent counts generators, series carry
//! `z` in charge units: the sector of highest weight `c/√2m` has label `c`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::fock::Lattice;
use crate::qseries::{inv_qpoch_coeffs, inv_qpoch_inf_coeffs, qbinomial_coeffs, QSeries};
use crate::scalar::{int, serde_rational, Rational};

fn lattice(m: i64) -> Result<Lattice> {
    Lattice::even(m)
}

/// `floor(b - low)` as a nonnegative count of `q` steps, or `None` if negative.
fn steps(bound: &Rational, low: &Rational) -> Option<usize> {
    let d = bound - low;
    (d >= int(0)).then(|| d.floor().to_integer().to_usize().expect("small bound"))
}

fn add_scaled(s: &mut QSeries, z: i64, low: &Rational, coeffs: &[BigInt]) {
    for (e, c) in coeffs.iter().enumerate() {
        s.add_term(z, low + int(e as i64), c.clone());
    }
}

/// `Σ_{k ≤ k_max} z^k q^{mk(k-1)} / (q)_k` up to `q^{q_max}`.
pub fn ch_a(m: i64, k_max: usize, q_max: usize) -> Result<QSeries> {
    lattice(m)?;
    let mut s = QSeries::zero();
    for k in 0..=k_max {
        let low = m as usize * k * k.saturating_sub(1);
        if low > q_max {
            break;
        }
        add_scaled(&mut s, k as i64, &int(low as i64), &inv_qpoch_coeffs(k, q_max - low));
    }
    Ok(s.truncate(int(q_max as i64)))
}

/// `Σ_k z^{m-1+2mk} q^{-(m-1)²/4m + mk²} / (q)_k` up to `q^{q_max}` (absolute exponent).
pub fn ch_principal(m: i64, k_max: usize, q_max: &Rational) -> Result<QSeries> {
    let l = lattice(m)?;
    let base = l.base_energy(m - 1);
    let mut s = QSeries::zero();
    for k in 0..=k_max as i64 {
        let low = &base + int(m * k * k);
        let Some(n) = steps(q_max, &low) else { break };
        add_scaled(&mut s, m - 1 + 2 * m * k, &low, &inv_qpoch_coeffs(k as usize, n));
    }
    Ok(s.truncate(q_max.clone()))
}

/// `z^{-p} Σ_k z^{2mk} q^{deg v_{p-2mk}} [p-(m-1)(k-1) choose k]`, a polynomial.
pub fn ch_finite(m: i64, p: i64) -> Result<QSeries> {
    let l = lattice(m)?;
    if p < 0 {
        return domain(format!("ch_finite needs p >= 0, got {p}"));
    }
    let mut s = QSeries::zero();
    for k in 0..=p {
        let top = p - (m - 1) * (k - 1);
        if top < k {
            continue;
        }
        let low = l.base_energy(-(p - 2 * m * k));
        add_scaled(&mut s, -p + 2 * m * k, &low, &qbinomial_coeffs(top as usize, k as usize));
    }
    Ok(s)
}

/// `z^{m-1} q^{-(m-1)²/4m} Σ_k z^{2mk} q^{mk²} [n-(2m-1)(k-1) choose k]`.
pub fn ch_coinv(m: i64, n: i64) -> Result<QSeries> {
    let l = lattice(m)?;
    if n < 0 {
        return domain(format!("ch_coinv needs n >= 0, got {n}"));
    }
    let base = l.base_energy(m - 1);
    let mut s = QSeries::zero();
    for k in 0..=n + 1 {
        let top = n - (2 * m - 1) * (k - 1);
        if top < k {
            continue;
        }
        let low = &base + int(m * k * k);
        add_scaled(&mut s, m - 1 + 2 * m * k, &low, &qbinomial_coeffs(top as usize, k as usize));
    }
    Ok(s)
}

/// `ch(n) = ch(n-1) + z^{2m} q^{m+n-1} ch(n-2m)` for `n ≥ 2m`.
pub fn coinv_recursion_holds(m: i64, n: i64) -> Result<bool> {
    if n < 2 * m {
        return domain(format!("the recursion needs n >= 2m, got n = {n}"));
    }
    let rhs = ch_coinv(m, n - 1)?.add(&ch_coinv(m, n - 2 * m)?.shift(2 * m, &int(m + n - 1)));
    Ok(ch_coinv(m, n)? == rhs)
}

/// `Σ_t z^{2mt+i} q^{Δ(2mt+i)} / (q)_∞` up to `q^{q_max}`.
pub fn ch_l(m: i64, i: i64, q_max: &Rational) -> Result<QSeries> {
    let l = lattice(m)?;
    if !(0..2 * m).contains(&i) {
        return domain(format!("need 0 <= i < 2m, got i = {i}"));
    }
    let mut s = QSeries::zero();
    for c in sector_charges(l, i, q_max) {
        let low = l.base_energy(c);
        let n = steps(q_max, &low).expect("charge selected below the bound");
        add_scaled(&mut s, c, &low, &inv_qpoch_inf_coeffs(n));
    }
    Ok(s.truncate(q_max.clone()))
}

/// Charges `c ≡ i (mod 2m)` with `Δ(c) ≤ q_max`; `Δ` is convex with minimum at `m - 1`.
fn sector_charges(l: Lattice, i: i64, q_max: &Rational) -> Vec<i64> {
    let b = l.norm;
    let mid = b / 2 - 1;
    let start = mid - (mid - i).rem_euclid(b);
    let mut out: Vec<i64> = (0..).map(|t| start - t * b).take_while(|&c| l.base_energy(c) <= *q_max).collect();
    out.extend((1..).map(|t| start + t * b).take_while(|&c| l.base_energy(c) <= *q_max));
    out.sort_unstable();
    out
}

/// A basis label of `L_(m),i`: ones at `-i + 2mk - 1` for `k ≥ n`, plus the
/// finite set `deviations` below the tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiInfiniteSequence {
    pub n: i64,
    /// positions `j` with `s_j = 1` below `-i + 2mn - 1`, decreasing
    pub deviations: Vec<i64>,
    pub charge: i64,
    #[serde(with = "serde_rational")]
    pub energy: Rational,
}

impl SemiInfiniteSequence {
    /// `s_j` for a single position.
    pub fn value(&self, m: i64, i: i64, j: i64) -> u8 {
        let tail = -i + 2 * m * self.n - 1;
        if j >= tail {
            u8::from((j + i + 1).rem_euclid(2 * m) == 0)
        } else {
            u8::from(self.deviations.contains(&j))
        }
    }

    /// The mode word attached to the sequence on `v_{-i+2m(n-1)}`, first mode acting first.
    pub fn word(&self) -> Vec<i64> {
        let mut w = self.deviations.clone();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }

    /// Base point `p` of the attached vector `∏ a_j v_p`.
    pub fn base_point(&self, m: i64, i: i64) -> i64 {
        -i + 2 * m * (self.n - 1)
    }
}

/// All labels with energy at most `q_max`, each in its canonical form
/// (`n` minimal, so `s_{-i+2m(n-1)-1} = 0`).
pub fn enumerate_semiinfinite(m: i64, i: i64, q_max: &Rational) -> Result<Vec<SemiInfiniteSequence>> {
    let l = lattice(m)?;
    if !(0..2 * m).contains(&i) {
        return domain(format!("need 0 <= i < 2m, got i = {i}"));
    }
    let gap = 2 * m;
    let mut out = Vec::new();
    for c in sector_charges(l, i, q_max) {
        let room = steps(q_max, &l.base_energy(c)).expect("charge selected below the bound") as i64;
        // k deviations contribute level k + (Σι - k - mk(k-1)) with ξ-indices ι ≥ 1
        for k in 0..=room {
            let p = 2 * m * k - c;
            let max_sum = room + m * k * (k - 1);
            let mut sets = Vec::new();
            gap_sets(k as usize, 1, gap, max_sum, &mut Vec::new(), &mut sets);
            for iota in sets {
                let level = iota.iter().sum::<i64>() - m * k * (k - 1);
                let deviations: Vec<i64> = iota.iter().map(|x| p - 1 - x).collect();
                out.push(SemiInfiniteSequence {
                    n: (p + i) / (2 * m) + 1,
                    deviations,
                    charge: c,
                    energy: l.base_energy(c) + int(level),
                });
            }
        }
    }
    out.sort_by(|a, b| (a.charge, &a.energy, &a.deviations).cmp(&(b.charge, &b.energy, &b.deviations)));
    Ok(out)
}

/// Increasing `k`-sets in `[lo, ∞)` with gaps `≥ gap` and sum `≤ max_sum`.
fn gap_sets(k: usize, lo: i64, gap: i64, max_sum: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if k == 0 {
        out.push(cur.clone());
        return;
    }
    let kk = k as i64;
    let mut x = lo;
    // the remaining k entries are at least x, x+gap, …
    while kk * x + gap * kk * (kk - 1) / 2 <= max_sum {
        cur.push(x);
        gap_sets(k - 1, x + gap, gap, max_sum - x, cur, out);
        cur.pop();
        x += 1;
    }
}

/// Counts of `enumerate_semiinfinite` per `(charge, energy)` as a series.
pub fn semiinfinite_series(m: i64, i: i64, q_max: &Rational) -> Result<QSeries> {
    let mut s = QSeries::zero();
    for seq in enumerate_semiinfinite(m, i, q_max)? {
        s.add_term(seq.charge, seq.energy, BigInt::from(1));
    }
    Ok(s.truncate(q_max.clone()))
}

/// `Σ_k C(p-(m-1)(k-1), k)`, the value of `ch_finite` at `z = q = 1`.
pub fn finite_dim_formula(m: i64, p: i64) -> Result<BigInt> {
    Ok(ch_finite(m, p)?.eval_at_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::fibonacci_m;

    #[test]
    fn character_of_a() {
        let s = ch_a(1, 4, 12).unwrap();
        assert_eq!(s.coeff(0, &int(0)), BigInt::from(1));
        assert_eq!(s.coeff(2, &int(2)), BigInt::from(1));
        let s = ch_principal(1, 3, &int(5)).unwrap();
        assert_eq!(s.coeff(2, &int(1)), BigInt::from(1));
        assert_eq!(s.coeff(2, &int(4)), BigInt::from(1));
        let s = ch_principal(2, 2, &int(5)).unwrap();
        assert_eq!(s.coeff(1, &crate::scalar::rat(-1, 8)), BigInt::from(1));
    }

    #[test]
    fn finite_dimensions() {
        for m in 1..=3 {
            for p in 0..=10 {
                assert_eq!(finite_dim_formula(m, p).unwrap(), BigInt::from(fibonacci_m(m as usize, p as usize)));
            }
        }
        assert_eq!(finite_dim_formula(1, 2).unwrap(), BigInt::from(4));
    }

    #[test]
    fn coinvariants() {
        for m in 1..=2 {
            for n in 0..=8 {
                let d = ch_coinv(m, n).unwrap().eval_at_one();
                assert_eq!(d, BigInt::from(fibonacci_m(2 * m as usize, n as usize)));
            }
            for n in 2 * m..=8 {
                assert!(coinv_recursion_holds(m, n).unwrap());
            }
        }
        let s = ch_coinv(1, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(2, &int(1)), BigInt::from(1));
    }

    #[test]
    fn lattice_modules() {
        let s = ch_l(1, 0, &int(4)).unwrap();
        assert_eq!(s.coeff(0, &int(0)), BigInt::from(1));
        assert_eq!(s.coeff(2, &int(1)), BigInt::from(1));
        assert_eq!(s.coeff(-2, &int(4)), BigInt::from(3));
        for m in 1..=2 {
            for i in 0..2 * m {
                let b = int(5);
                assert_eq!(semiinfinite_series(m, i, &b).unwrap(), ch_l(m, i, &b).unwrap(), "m={m} i={i}");
            }
        }
    }

    #[test]
    fn sequence_conditions() {
        let (m, i) = (1, 1);
        for seq in enumerate_semiinfinite(m, i, &int(4)).unwrap() {
            for j in -20..20 {
                let w: u8 = (j..j + 2 * m).map(|t| seq.value(m, i, t)).sum();
                assert!(w <= 1);
            }
            assert_eq!(seq.value(m, i, seq.base_point(m, i) - 1), 0);
        }
    }
}
