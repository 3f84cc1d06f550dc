use prinspace::characters::{ch_a, ch_finite, ch_principal};
use prinspace::fock::{a_apply, extremal, h_apply, principal_space, verify_relations, FockVector, Lattice, Window};
use prinspace::presentation::graded_dim;
use prinspace::scalar::int;
use prinspace::{Rational, SymFunc};

#[test]
fn principal_character_matches_fermionic_formula() {
    for m in 1..=2i64 {
        let cutoff = Rational::from_integer(5.into());
        let v = principal_space(m, 1 - m, Window::Infinite, Some(cutoff.clone())).unwrap();
        let ch = ch_principal(m, 6, &cutoff).unwrap();
        assert_eq!(v.character(), ch, "m={m}");
    }
}

#[test]
fn finite_windows_match_q_binomial_formula() {
    for (m, p) in [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
        let v = principal_space(m, p, Window::Finite(p as usize), None).unwrap();
        assert_eq!(v.character(), ch_finite(m, p).unwrap(), "m={m} p={p}");
    }
}

#[test]
fn quadratic_algebra_matches_fock_modes() {
    // ξ_α ↔ a_{-m-α} on v_{1-m}; weights agree with the algebra grading
    for m in 1..=2i64 {
        let v = principal_space(m, 1 - m, Window::Infinite, Some(int(7))).unwrap();
        let ch = ch_a(m, 4, 12).unwrap();
        for ((k, s), dim) in v.dims_by_weight() {
            assert_eq!(dim, graded_dim(m as usize, k, s as usize), "m={m} k={k} s={s}");
            assert_eq!(ch.coeff(k as i64, &int(s)), dim.into());
        }
    }
}

#[test]
fn relations_vanish_on_the_base_point() {
    for m in 1..=2 {
        for r in verify_relations(m, 5).unwrap() {
            assert!(r.vanishes, "m={m} i={} s={}", r.i, r.s);
        }
    }
}

fn sample(l: Lattice) -> FockVector {
    let poly = SymFunc::p(prinspace::partition![2, 1]).add(&SymFunc::p(prinspace::partition![1]).scale(&int(3)));
    FockVector::new(l, -3, poly)
}

#[test]
fn heisenberg_mode_commutator() {
    for m in 1..=3 {
        let l = Lattice::even(m).unwrap();
        let v = sample(l);
        for i in [-2i64, -1, 1, 2, 3] {
            for j in -2..=2i64 {
                let x = h_apply(i, &a_apply(j, &v).unwrap()).unwrap();
                let y = a_apply(j, &h_apply(i, &v).unwrap()).unwrap();
                let lhs = x.add(&y.scale(&int(-1))).unwrap();
                let factor = if i > 0 { m } else { 2 };
                let rhs = a_apply(i + j, &v).unwrap().scale(&int(factor));
                assert_eq!(lhs.poly.to_power_sum(), rhs.poly.to_power_sum(), "m={m} i={i} j={j}");
            }
        }
    }
}

#[test]
fn top_mode_lowers_extremal_vectors() {
    for m in 1..=3 {
        let l = Lattice::even(m).unwrap();
        for p in 1..=6 {
            let w = a_apply(p - 1, &extremal(l, p)).unwrap();
            assert_eq!(w, extremal(l, p - 2 * m));
            assert_eq!(w.deg_q(), extremal(l, p).deg_q().map(|d| d - int(p - 1)));
        }
    }
}
