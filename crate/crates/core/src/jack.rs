//! Jack polynomials `J_λ(α; x)`: monic in `m_λ`, dominance triangular and
//! orthogonal for `⟨p_λ, p_λ⟩ = α^{-l(λ)} z_λ`.
//!
//! With this pairing `α` is the reciprocal of the coupling in Macdonald's
//! book: `J_(2) = m_2 + 2α/(α+1) m_11`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinat::factorial;
use crate::error::{domain, Error, Result};
use crate::mvpoly::MvPoly;
use crate::partition::{is_single_row_difference, partitions, Partition};
use crate::scalar::{pow, serde_rational, Rational};
use crate::symfunc::{inner_alpha, Basis};
use crate::SymFunc;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JackPolynomial {
    pub partition: Partition,
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    #[serde(rename = "monomial_expansion")]
    pub expansion: SymFunc,
}

struct JackDegree {
    /// partitions of `n` in ascending order, with `J` in monomials and `⟨J, J⟩`
    items: Vec<(Partition, SymFunc, Rational)>,
    index: HashMap<Partition, usize>,
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if !alpha.is_positive() {
        return domain(format!("Jack polynomials need a positive coupling, got {alpha}"));
    }
    Ok(())
}

fn jack_degree(n: usize, alpha: &Rational) -> Result<Arc<JackDegree>> {
    type Cache = RwLock<HashMap<(usize, Rational), Arc<JackDegree>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    check_alpha(alpha)?;
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, alpha.clone());
    if let Some(d) = cache.read().unwrap().get(&key) {
        return Ok(d.clone());
    }
    let built = Arc::new(gram_schmidt(n, alpha)?);
    Ok(cache.write().unwrap().entry(key).or_insert(built).clone())
}

fn gram_schmidt(n: usize, alpha: &Rational) -> Result<JackDegree> {
    let ps = partitions(n);
    let col: HashMap<&Partition, usize> = ps.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let inv = Rational::one() / alpha;
    let weight: Vec<Rational> = ps
        .iter()
        .map(|l| pow(&inv, l.len() as i64) * Rational::from_integer(l.z_factor()))
        .collect();
    let dot = |a: &[Rational], b: &[Rational]| -> Rational {
        a.iter().zip(b).zip(&weight).fold(Rational::zero(), |acc, ((x, y), w)| {
            if x.is_zero() || y.is_zero() {
                acc
            } else {
                acc + x * y * w
            }
        })
    };
    let mut built: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(ps.len());
    let mut items = Vec::with_capacity(ps.len());
    for lambda in &ps {
        let m = SymFunc::m(lambda.clone()).to_power_sum();
        let mut v = vec![Rational::zero(); ps.len()];
        for (l, c) in m.terms() {
            v[col[l]] = c.clone();
        }
        let base = v.clone();
        for (j, nj) in &built {
            let c = dot(&base, j) / nj;
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(j) {
                    *x -= &c * y;
                }
            }
        }
        let norm = dot(&v, &v);
        if norm.is_zero() {
            return Err(Error::Internal(format!("singular Gram matrix in degree {n} at {lambda}")));
        }
        let j = SymFunc::from_terms(Basis::PowerSum, ps.iter().cloned().zip(v.iter().cloned())).to_monomial();
        items.push((lambda.clone(), j, norm.clone()));
        built.push((v, norm));
    }
    let index = ps.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    Ok(JackDegree { items, index })
}

/// `J_λ(α)` in the monomial basis.
pub fn jack(lambda: &Partition, alpha: &Rational) -> Result<JackPolynomial> {
    let d = jack_degree(lambda.size(), alpha)?;
    let (_, j, _) = &d.items[d.index[lambda]];
    Ok(JackPolynomial { partition: lambda.clone(), alpha: alpha.clone(), expansion: j.clone() })
}

/// `⟨J_λ, J_λ⟩_α`.
pub fn jack_norm_sq(lambda: &Partition, alpha: &Rational) -> Result<Rational> {
    let d = jack_degree(lambda.size(), alpha)?;
    Ok(d.items[d.index[lambda]].2.clone())
}

/// Coefficients of a homogeneous `f` of degree `n` in the Jack basis.
pub fn jack_expand(f: &SymFunc, n: usize, alpha: &Rational) -> Result<BTreeMap<Partition, Rational>> {
    let d = jack_degree(n, alpha)?;
    let f = f.homogeneous_component(n);
    let mut out = BTreeMap::new();
    for (l, j, norm) in &d.items {
        let c = inner_alpha(&f, j, alpha)? / norm;
        if !c.is_zero() {
            out.insert(l.clone(), c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkewCoefficients {
    pub lambda: Partition,
    pub mu: Partition,
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    /// nonzero `f^λ_{μν}` keyed by `ν`
    #[serde(serialize_with = "serialize_table")]
    pub table: BTreeMap<Partition, Rational>,
}

fn serialize_table<S: serde::Serializer>(t: &BTreeMap<Partition, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    #[derive(Serialize)]
    struct Entry<'a> {
        nu: &'a Partition,
        #[serde(with = "serde_rational")]
        coeff: &'a Rational,
    }
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for (nu, coeff) in t {
        seq.serialize_element(&Entry { nu, coeff })?;
    }
    seq.end()
}

/// `f^λ_{μν} = ⟨J_μ J_ν, J_λ⟩ / (⟨J_μ, J_μ⟩⟨J_ν, J_ν⟩)` for all `ν ⊢ |λ| - |μ|`.
pub fn skew_coefficients(lambda: &Partition, mu: &Partition, alpha: &Rational) -> Result<SkewCoefficients> {
    check_alpha(alpha)?;
    if mu.size() > lambda.size() {
        return domain(format!("|{mu}| exceeds |{lambda}|"));
    }
    let r = lambda.size() - mu.size();
    let jl = jack(lambda, alpha)?.expansion;
    let jm = jack(mu, alpha)?.expansion;
    let nm = jack_norm_sq(mu, alpha)?;
    let mut table = BTreeMap::new();
    for nu in partitions(r) {
        let jn = jack(&nu, alpha)?.expansion;
        let nn = jack_norm_sq(&nu, alpha)?;
        let f = inner_alpha(&jm.multiply(&jn), &jl, alpha)? / (&nm * &nn);
        if !f.is_zero() {
            table.insert(nu, f);
        }
    }
    Ok(SkewCoefficients { lambda: lambda.clone(), mu: mu.clone(), alpha: alpha.clone(), table })
}

/// `J_{λ/μ} = Σ_ν f^λ_{μν} J_ν` in monomials.
pub fn skew_jack(lambda: &Partition, mu: &Partition, alpha: &Rational) -> Result<SymFunc> {
    let sc = skew_coefficients(lambda, mu, alpha)?;
    let mut out = SymFunc::zero(Basis::Monomial);
    for (nu, f) in &sc.table {
        out = out.add(&jack(nu, alpha)?.expansion.scale(f));
    }
    Ok(out)
}

/// `J_{λ/μ}(x_1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SkewOneVar {
    /// `μ ⊄ λ`.
    NotContained,
    /// Contained, but the single-variable specialization vanishes.
    Zero,
    /// `φ x_1^e`.
    Term {
        #[serde(with = "serde_rational")]
        coeff: Rational,
        exponent: usize,
    },
}

impl SkewOneVar {
    pub fn coeff(&self) -> Rational {
        match self {
            SkewOneVar::Term { coeff, .. } => coeff.clone(),
            _ => Rational::zero(),
        }
    }
}

/// Only one-row `ν` survive in one variable, and `J_(r)(x_1) = x_1^r`.
pub fn skew_onevar(lambda: &Partition, mu: &Partition, alpha: &Rational) -> Result<SkewOneVar> {
    check_alpha(alpha)?;
    if !lambda.contains(mu) {
        return Ok(SkewOneVar::NotContained);
    }
    let r = lambda.size() - mu.size();
    let nu = if r == 0 { Partition::empty() } else { Partition::new(vec![r])? };
    let sc = skew_coefficients(lambda, mu, alpha)?;
    Ok(match sc.table.get(&nu) {
        Some(c) => SkewOneVar::Term { coeff: c.clone(), exponent: r },
        None => SkewOneVar::Zero,
    })
}

/// Checks `J_λ(x_1, …, x_N) = Σ_μ J_{λ/μ}(x_1) J_μ(x_2, …, x_N)` exactly.
pub fn verify_branching(lambda: &Partition, alpha: &Rational, nvars: usize) -> Result<bool> {
    if nvars == 0 {
        return domain("branching needs at least one variable");
    }
    let lhs = jack(lambda, alpha)?.expansion.realize(nvars);
    let mut rhs = MvPoly::zero(nvars);
    for mu in crate::partition::subpartitions(lambda) {
        if let SkewOneVar::Term { coeff, exponent } = skew_onevar(lambda, &mu, alpha)? {
            let rest = jack(&mu, alpha)?.expansion.realize(nvars - 1);
            rhs = rhs.add(&rest.insert_variable_power(0, exponent as u32).scale(&coeff));
        }
    }
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PieriEntry {
    pub mu: Partition,
    /// coefficient of `J_μ` in `T_k J_λ / k!`
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    /// `φ_λμ`
    #[serde(with = "serde_rational")]
    pub phi: Rational,
    pub single_row: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PieriReport {
    pub lambda: Partition,
    pub k: usize,
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    /// `T_k J_λ = k! Σ φ_λμ J_μ` with `μ` ranging over single-row removals only.
    pub single_row_sum_holds: bool,
    /// The same identity with `μ` ranging over every `μ ⊂ λ` with `|μ| = |λ| - k`.
    pub full_sum_holds: bool,
    pub entries: Vec<PieriEntry>,
}

/// Computes `T_k J_λ` in the Jack basis and compares with the `φ` coefficients.
pub fn pieri_tj_check(lambda: &Partition, k: usize, alpha: &Rational) -> Result<PieriReport> {
    if k == 0 || k > lambda.part(0) {
        return domain(format!("need 1 <= k <= {}, got k = {k}", lambda.part(0)));
    }
    let n = lambda.size() - k;
    let lhs = jack(lambda, alpha)?.expansion.t_powersum(k);
    let kf = Rational::from_integer(factorial(k as u64));
    let lhs_j = jack_expand(&lhs, n, alpha)?;
    let mut entries = Vec::new();
    let mut single = SymFunc::zero(Basis::Monomial);
    let mut full = SymFunc::zero(Basis::Monomial);
    for mu in partitions(n) {
        let phi = if lambda.contains(&mu) { skew_onevar(lambda, &mu, alpha)?.coeff() } else { Rational::zero() };
        let l = lhs_j.get(&mu).cloned().unwrap_or_default() / &kf;
        let single_row = lambda.contains(&mu) && is_single_row_difference(lambda, &mu);
        if phi.is_zero() && l.is_zero() && !single_row {
            continue;
        }
        let j = jack(&mu, alpha)?.expansion;
        full = full.add(&j.scale(&(&phi * &kf)));
        if single_row {
            single = single.add(&j.scale(&(&phi * &kf)));
        }
        entries.push(PieriEntry { mu, lhs: l, phi, single_row });
    }
    let lhs_m = lhs.to_monomial();
    Ok(PieriReport {
        lambda: lambda.clone(),
        k,
        alpha: alpha.clone(),
        single_row_sum_holds: lhs_m == single,
        full_sum_holds: lhs_m == full,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;
    use crate::scalar::{int, rat};

    #[test]
    fn small_jacks() {
        let a = int(3);
        assert_eq!(jack(&partition![1], &a).unwrap().expansion, SymFunc::m(partition![1]));
        assert_eq!(jack(&partition![1, 1], &a).unwrap().expansion, SymFunc::m(partition![1, 1]));
        let j2 = jack(&partition![2], &a).unwrap().expansion;
        assert_eq!(j2.coeff(&partition![1, 1]), rat(6, 4));
        let j2 = jack(&partition![2], &int(1)).unwrap().expansion;
        assert_eq!(j2, SymFunc::m(partition![2]).add(&SymFunc::m(partition![1, 1])));
        assert!(jack(&partition![1], &int(0)).is_err());
    }

    #[test]
    fn norms() {
        assert_eq!(jack_norm_sq(&partition![1], &int(5)).unwrap(), rat(1, 5));
        // (p_2 + p_1^2)/2 has norm (2 + 2)/4
        assert_eq!(jack_norm_sq(&partition![2], &int(1)).unwrap(), int(1));
    }

    #[test]
    fn skew_examples() {
        let a = int(2);
        let l = partition![2, 1];
        let sc = skew_coefficients(&l, &l, &a).unwrap();
        assert_eq!(sc.table.get(&Partition::empty()), Some(&int(1)));
        let sc = skew_coefficients(&partition![2], &partition![1], &int(1)).unwrap();
        assert_eq!(sc.table.get(&partition![1]), Some(&int(1)));
        assert_eq!(skew_onevar(&partition![2, 2], &partition![1, 1], &a).unwrap(), SkewOneVar::Zero);
        assert_eq!(
            skew_onevar(&partition![2, 1], &partition![1, 1], &int(1)).unwrap(),
            SkewOneVar::Term { coeff: int(1), exponent: 1 }
        );
        assert_eq!(skew_onevar(&partition![1], &partition![2], &a).unwrap(), SkewOneVar::NotContained);
    }

    #[test]
    fn horizontal_strip_in_one_variable() {
        // s_{21/1}(x_1) = x_1^2 although two rows differ
        let v = skew_onevar(&partition![2, 1], &partition![1], &int(1)).unwrap();
        assert_eq!(v, SkewOneVar::Term { coeff: int(1), exponent: 2 });
    }

    #[test]
    fn pieri_trivial_case() {
        let r = pieri_tj_check(&partition![1], 1, &int(1)).unwrap();
        assert!(r.single_row_sum_holds && r.full_sum_holds);
        let r = pieri_tj_check(&partition![2, 2], 1, &int(2)).unwrap();
        assert!(r.single_row_sum_holds);
    }
}
