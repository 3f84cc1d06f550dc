use prinspace::jack::jack;
use prinspace::partition::{dominated_by, partitions, Partition};
use prinspace::scalar::{int, rat};
use prinspace::symfunc::{inner_alpha, Basis};
use prinspace::{Rational, SymFunc};

fn h(n: i64) -> SymFunc {
    if n < 0 {
        return SymFunc::zero(Basis::Monomial);
    }
    SymFunc::from_terms(Basis::Monomial, partitions(n as usize).into_iter().map(|l| (l, int(1))))
}

fn det(a: &[Vec<SymFunc>]) -> SymFunc {
    if a.is_empty() {
        return SymFunc::one(Basis::Monomial);
    }
    let mut acc = SymFunc::zero(Basis::Monomial);
    for j in 0..a.len() {
        let minor: Vec<Vec<SymFunc>> =
            a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = a[0][j].multiply(&det(&minor)).to_monomial();
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn schur(l: &Partition) -> SymFunc {
    let n = l.len();
    let a: Vec<Vec<SymFunc>> =
        (0..n).map(|i| (0..n).map(|j| h(l.part(i) as i64 - i as i64 + j as i64)).collect()).collect();
    det(&a)
}

#[test]
fn alpha_one_gives_schur_functions() {
    for n in 0..=6 {
        for l in partitions(n) {
            assert_eq!(jack(&l, &int(1)).unwrap().expansion.to_monomial(), schur(&l), "{l:?}");
        }
    }
}

/// Laplace-Beltrami operator in power sums with Macdonald's parameter `a`:
/// `(a/2) Σ ij p_{i+j} ∂_i∂_j + ½ Σ (i+j) p_i p_j ∂_{i+j} + ((a-1)/2) Σ i(i-1) p_i ∂_i`.
fn laplace_beltrami(f: &SymFunc, a: &Rational) -> SymFunc {
    let f = f.to_power_sum();
    let d = f.degree().unwrap_or(0);
    let mut out = SymFunc::zero(Basis::PowerSum);
    for i in 1..d {
        for j in 1..=d - i {
            let t = f.d_powersum(i).d_powersum(j).times_p(i + j);
            out = out.add(&t.scale(&(a * int((i * j) as i64) / int(2))));
            let t = f.d_powersum(i + j).times_p(i).times_p(j);
            out = out.add(&t.scale(&rat((i + j) as i64, 2)));
        }
    }
    for i in 1..=d {
        let t = f.d_powersum(i).times_p(i);
        out = out.add(&t.scale(&((a - int(1)) * int((i * (i - 1)) as i64) / int(2))));
    }
    out
}

#[test]
fn jacks_are_laplace_beltrami_eigenfunctions() {
    for alpha in [int(2), int(3), rat(1, 2), rat(5, 3)] {
        let a = Rational::from_integer(1.into()) / &alpha;
        for n in 1..=6 {
            for l in partitions(n) {
                let j = jack(&l, &alpha).unwrap().expansion.to_power_sum();
                let dj = laplace_beltrami(&j, &a);
                let lead = l.clone();
                let c = dj.to_monomial().coeff(&lead) / j.to_monomial().coeff(&lead);
                assert_eq!(dj.to_monomial(), j.scale(&c).to_monomial(), "{l:?} alpha={alpha}");
            }
        }
    }
}

#[test]
fn monic_triangular_and_orthogonal() {
    for alpha in [int(1), int(2), int(3), rat(2, 7)] {
        for n in 1..=5 {
            let ps = partitions(n);
            let js: Vec<SymFunc> = ps.iter().map(|l| jack(l, &alpha).unwrap().expansion.to_monomial()).collect();
            for (l, j) in ps.iter().zip(&js) {
                assert_eq!(j.coeff(l), int(1));
                for mu in j.terms().keys() {
                    assert!(dominated_by(mu, l), "{mu:?} not below {l:?}");
                }
            }
            for a in 0..js.len() {
                for b in a + 1..js.len() {
                    assert_eq!(inner_alpha(&js[a], &js[b], &alpha).unwrap(), int(0));
                }
            }
        }
    }
}

#[test]
fn single_column_is_elementary() {
    for n in 1..=6 {
        let l = Partition::from_parts(vec![1; n]);
        for alpha in [int(1), int(4), rat(3, 2)] {
            assert_eq!(jack(&l, &alpha).unwrap().expansion.to_monomial(), SymFunc::m(l.clone()));
        }
    }
}
