//! The commutative algebra `A_(m) = C[ξ_0, ξ_1, …] / ⟨(ξ(z)^{(i)})^2⟩_{i<m}`,
//! handled one bidegree `(k, s)` at a time.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combinat::{falling_factorial, weak_compositions, weak_sequences};
use crate::error::{domain, Error, Result};
use crate::qseries::partitions_at_most_k_parts;
use crate::scalar::{format_rational, int, Rational};
use crate::{Echelon, SparseVec};

/// `ξ_{i_1} ⋯ ξ_{i_k}` with `i_1 ≤ … ≤ i_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct XiMonomial(Vec<usize>);

impl XiMonomial {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        XiMonomial(indices)
    }

    pub fn one() -> Self {
        XiMonomial(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.0.len(), self.0.iter().sum())
    }

    pub fn is_admissible(&self, m: usize) -> bool {
        self.0.windows(2).all(|w| w[1] - w[0] >= 2 * m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        XiMonomial::new(v)
    }

    /// `ξ_{i_1} ⋯ ξ_{i_k} ↦ ξ_0 ξ_{i_1+2m} ⋯ ξ_{i_k+2m}`.
    pub fn shift(&self, m: usize) -> Self {
        let mut v = vec![0];
        v.extend(self.0.iter().map(|i| i + 2 * m));
        XiMonomial(v)
    }
}

impl fmt::Display for XiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|i| format!("ξ{i}")).collect();
        write!(f, "{}", s.join("·"))
    }
}

/// A finite linear combination of `ξ`-monomials.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct XiPoly {
    terms: BTreeMap<XiMonomial, Rational>,
}

impl XiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(mono: XiMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(mono, int(1));
        p
    }

    pub fn xi(i: usize) -> Self {
        Self::monomial(XiMonomial(vec![i]))
    }

    pub fn terms(&self) -> &BTreeMap<XiMonomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &XiMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(|| int(0))
    }

    pub fn add_term(&mut self, mono: XiMonomial, c: Rational) {
        if c == int(0) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == int(0) {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    fn by_bidegree(&self) -> BTreeMap<(usize, usize), Vec<(&XiMonomial, &Rational)>> {
        let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.bidegree()).or_default().push((k, c));
        }
        out
    }
}

impl fmt::Display for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.terms.iter().map(|(k, c)| format!("{}·{k}", c)).collect();
        write!(f, "{}", s.join(" + "))
    }
}

impl Serialize for XiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            indices: &'a [usize],
            coeff: String,
        }
        let terms: Vec<Term> =
            self.terms.iter().map(|(k, c)| Term { indices: k.indices(), coeff: format_rational(c) }).collect();
        let mut st = s.serialize_struct("XiPoly", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// `Σ_{α_1+α_2=s} (α_1)_i (α_2)_i ξ_{α_1} ξ_{α_2}` for `i < m`: the coefficients of `(ξ(z)^{(i)})^2`.
pub fn relation_generators(m: usize, s: usize) -> Vec<(u32, XiPoly)> {
    (0..m as u32)
        .map(|i| {
            let mut r = XiPoly::zero();
            for a1 in 0..=s {
                let c = falling_factorial(a1 as i64, i) * falling_factorial((s - a1) as i64, i);
                r.add_term(XiMonomial::new(vec![a1, s - a1]), int(c));
            }
            (i, r)
        })
        .filter(|(_, r)| !r.is_zero())
        .collect()
}

/// Partitions of `s - mk(k-1)` into at most `k` parts.
pub fn graded_dim(m: usize, k: usize, s: usize) -> usize {
    let n = s as i64 - (m * k * k.saturating_sub(1)) as i64;
    partitions_at_most_k_parts(n, k).to_usize().expect("dimension fits in usize")
}

pub fn admissible_count(m: usize, k: usize, s: usize) -> usize {
    weak_sequences(k, s).into_iter().filter(|v| XiMonomial(v.clone()).is_admissible(m)).count()
}

/// One bidegree: monomials with the non-admissible ones first, and the
/// reduced relation subspace.
struct Bidegree {
    monomials: Vec<XiMonomial>,
    index: HashMap<XiMonomial, usize>,
    relations: Echelon,
}

impl Bidegree {
    fn row(&self, p: &XiPoly) -> SparseVec {
        SparseVec::from_pairs(p.terms.iter().map(|(k, c)| (self.index[k], c.clone())).collect())
    }

    fn poly(&self, row: &SparseVec) -> XiPoly {
        let mut p = XiPoly::zero();
        for (i, c) in row.entries() {
            p.add_term(self.monomials[*i].clone(), c.clone());
        }
        p
    }
}

fn monomials_ordered(m: usize, k: usize, s: usize) -> Vec<XiMonomial> {
    let all: Vec<XiMonomial> = weak_sequences(k, s).into_iter().map(XiMonomial).collect();
    let (adm, non): (Vec<_>, Vec<_>) = all.into_iter().partition(|x| x.is_admissible(m));
    non.into_iter().chain(adm).collect()
}

fn bidegree(m: usize, k: usize, s: usize) -> Arc<Bidegree> {
    type Cache = RwLock<HashMap<(usize, usize, usize), Arc<Bidegree>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.read().unwrap().get(&(m, k, s)) {
        return b.clone();
    }
    let monomials = monomials_ordered(m, k, s);
    let index: HashMap<XiMonomial, usize> = monomials.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut b = Bidegree { relations: Echelon::new(monomials.len()), monomials, index };
    if k >= 2 {
        for t in 0..=s {
            let gens = relation_generators(m, t);
            for rest in weak_sequences(k - 2, s - t) {
                let rest = XiPoly::monomial(XiMonomial(rest));
                for (_, g) in &gens {
                    let row = b.row(&g.mul(&rest));
                    b.relations.insert(row);
                }
            }
        }
    }
    let b = Arc::new(b);
    cache.write().unwrap().entry((m, k, s)).or_insert(b).clone()
}

/// `dim A^{k,s}` as the number of monomials minus the rank of the relations.
pub fn graded_dim_by_reduction(m: usize, k: usize, s: usize) -> usize {
    let b = bidegree(m, k, s);
    b.monomials.len() - b.relations.rank()
}

/// The image of `w` in `A_(m)`, written in admissible monomials.
pub fn normal_form(m: usize, w: &XiPoly) -> Result<XiPoly> {
    let mut out = XiPoly::zero();
    for ((k, s), terms) in w.by_bidegree() {
        let b = bidegree(m, k, s);
        let row = SparseVec::from_pairs(terms.iter().map(|(x, c)| (b.index[*x], (*c).clone())).collect());
        let r = b.poly(&b.relations.reduce(&row));
        if let Some(x) = r.terms.keys().find(|x| !x.is_admissible(m)) {
            return Err(Error::Internal(format!("non-admissible monomial {x} survives reduction")));
        }
        out = out.add(&r);
    }
    Ok(out)
}

/// An ordered product of fermions `ψ_c(j)`, stored sorted by `(color, mode)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FermionWord(Vec<(u8, usize)>);

impl FermionWord {
    pub fn letters(&self) -> &[(u8, usize)] {
        &self.0
    }

    /// Sorted concatenation with its sign, or `None` if a letter repeats.
    fn mul(&self, other: &Self) -> Option<(FermionWord, bool)> {
        let mut odd = false;
        for b in &other.0 {
            let mut greater = 0;
            for a in &self.0 {
                match a.cmp(b) {
                    std::cmp::Ordering::Equal => return None,
                    std::cmp::Ordering::Greater => greater += 1,
                    _ => {}
                }
            }
            odd ^= greater % 2 == 1;
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Some((FermionWord(v), odd))
    }
}

pub type FermionPoly = BTreeMap<FermionWord, Rational>;

fn fermion_mul(a: &FermionPoly, b: &FermionPoly) -> FermionPoly {
    let mut out = FermionPoly::new();
    for (x, c) in a {
        for (y, d) in b {
            if let Some((w, odd)) = x.mul(y) {
                let v = if odd { -(c * d) } else { c * d };
                let e = out.entry(w).or_insert_with(|| int(0));
                *e += v;
            }
        }
    }
    out.retain(|_, c| *c != int(0));
    out
}

/// `ξ̃_i = Σ_{β_1+…+β_{2m}=i} ψ_1(β_1) ⋯ ψ_{2m}(β_{2m})`.
fn fermion_xi(m: usize, i: usize) -> FermionPoly {
    weak_compositions(i, 2 * m)
        .into_iter()
        .map(|beta| (FermionWord(beta.into_iter().enumerate().map(|(c, j)| (c as u8, j)).collect()), int(1)))
        .collect()
}

/// `ξ̃_{i_1} ⋯ ξ̃_{i_k}` in the exterior algebra on `ψ_c(j)`, `0 ≤ j ≤ cutoff`.
pub fn fermion_xi_product(m: usize, indices: &[usize], cutoff: usize) -> Result<FermionPoly> {
    if let Some(&i) = indices.iter().max() {
        if i > cutoff {
            return Err(Error::Truncation(format!("mode cutoff {cutoff} is below the index {i}")));
        }
    }
    let mut out: FermionPoly = [(FermionWord(Vec::new()), int(1))].into_iter().collect();
    for &i in indices {
        out = fermion_mul(&out, &fermion_xi(m, i));
        if out.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// `∏_s ψ_1([i_s/2m]) ψ_2([(i_s+1)/2m]) ⋯ ψ_{2m}([(i_s+2m-1)/2m])`, sorted, with its sign.
pub fn marker_word(m: usize, indices: &[usize]) -> Option<(FermionWord, bool)> {
    let mut w = FermionWord(Vec::new());
    let mut odd = false;
    for &i in indices {
        let f = FermionWord((0..2 * m).map(|t| (t as u8, (i + t) / (2 * m))).collect());
        let (w2, o) = w.mul(&f)?;
        w = w2;
        odd ^= o;
    }
    Some((w, odd))
}

fn fermion_poly_of(m: usize, p: &XiPoly) -> FermionPoly {
    let mut out = FermionPoly::new();
    for (x, c) in p.terms() {
        let cutoff = x.indices().iter().copied().max().unwrap_or(0);
        for (w, d) in fermion_xi_product(m, x.indices(), cutoff).expect("cutoff covers indices") {
            *out.entry(w).or_insert_with(|| int(0)) += c * d;
        }
    }
    out.retain(|_, c| *c != int(0));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FermionicReport {
    pub m: usize,
    /// `(k, s, admissible count, rank of their fermionic images)`
    pub bidegrees: Vec<(usize, usize, usize, usize)>,
    pub independent: bool,
    pub markers_present: bool,
    /// `(i, s)` of relation coefficients with nonzero fermionic image
    pub nonvanishing_relations: Vec<(u32, usize)>,
}

/// Independence of admissible monomials under `ξ ↦ ξ̃`, and vanishing of
/// `(ξ̃(z)^{(i)})^2` up to `z`-degree `z_max`.
pub fn fermionic_check(m: usize, k_max: usize, s_max: usize, z_max: usize) -> FermionicReport {
    let cells: Vec<(usize, usize)> = (0..=k_max).flat_map(|k| (0..=s_max).map(move |s| (k, s))).collect();
    let results: Vec<((usize, usize, usize, usize), bool)> = cells
        .par_iter()
        .map(|&(k, s)| {
            let adm: Vec<XiMonomial> =
                weak_sequences(k, s).into_iter().map(XiMonomial).filter(|x| x.is_admissible(m)).collect();
            let mut words: HashMap<FermionWord, usize> = HashMap::new();
            let mut rows = Vec::new();
            let mut markers = true;
            for x in &adm {
                let f = fermion_poly_of(m, &XiPoly::monomial(x.clone()));
                markers &= marker_word(m, x.indices()).is_some_and(|(w, _)| f.contains_key(&w));
                let pairs = f
                    .into_iter()
                    .map(|(w, c)| {
                        let n = words.len();
                        (*words.entry(w).or_insert(n), c)
                    })
                    .collect();
                rows.push(SparseVec::from_pairs(pairs));
            }
            let r = crate::linalg::rank(&rows, words.len());
            ((k, s, adm.len(), r), markers)
        })
        .collect();
    let independent = results.iter().all(|((_, _, n, r), _)| n == r);
    let markers_present = results.iter().all(|(_, b)| *b);
    let mut nonvanishing_relations = Vec::new();
    for i in 0..m as u32 {
        for d in 0..=z_max {
            let s = d + 2 * i as usize;
            if let Some((_, r)) = relation_generators(m, s).into_iter().find(|(j, _)| *j == i) {
                if !fermion_poly_of(m, &r).is_empty() {
                    nonvanishing_relations.push((i, s));
                }
            }
        }
    }
    FermionicReport {
        m,
        bidegrees: results.into_iter().map(|(b, _)| b).collect(),
        independent,
        markers_present,
        nonvanishing_relations,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantBidegree {
    pub k: usize,
    pub s: usize,
    pub quotient_dim: usize,
    pub basis: Vec<XiMonomial>,
    pub independent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantReport {
    pub m: usize,
    pub n_top: usize,
    pub bidegrees: Vec<CoinvariantBidegree>,
    pub dim: usize,
    pub matches: bool,
}

/// `A_(m) / span{ξ_i A_(m) : i > N}` against admissible monomials with `i_k ≤ N`.
///
/// Every bidegree with `k ≤ N/2m + 2` and `s ≤ kN` is checked; beyond `s = kN`
/// every monomial has an index above `N`.
pub fn coinvariant_basis(m: usize, n_top: usize) -> Result<CoinvariantReport> {
    if m == 0 {
        return domain("m must be positive");
    }
    let k_max = n_top / (2 * m) + 2;
    let cells: Vec<(usize, usize)> = (0..=k_max).flat_map(|k| (0..=k * n_top).map(move |s| (k, s))).collect();
    let bidegrees: Vec<CoinvariantBidegree> = cells
        .par_iter()
        .map(|&(k, s)| {
            let b = bidegree(m, k, s);
            let mut sub = b.relations.clone();
            for x in &b.monomials {
                if x.indices().last().is_some_and(|&i| i > n_top) {
                    sub.insert(SparseVec::unit(b.index[x]));
                }
            }
            let quotient_dim = b.monomials.len() - sub.rank();
            let basis: Vec<XiMonomial> = b
                .monomials
                .iter()
                .filter(|x| x.is_admissible(m) && x.indices().last().is_none_or(|&i| i <= n_top))
                .cloned()
                .collect();
            let mut ext = sub.clone();
            let independent = basis.iter().all(|x| ext.insert(SparseVec::unit(b.index[x])));
            CoinvariantBidegree { k, s, quotient_dim, basis, independent }
        })
        .filter(|c| c.quotient_dim > 0 || !c.basis.is_empty())
        .collect();
    let dim = bidegrees.iter().map(|c| c.quotient_dim).sum();
    let matches = bidegrees.iter().all(|c| c.independent && c.quotient_dim == c.basis.len());
    Ok(CoinvariantReport { m, n_top, bidegrees, dim, matches })
}

#[derive(Clone, Debug, Serialize)]
pub struct Finitization {
    pub m: usize,
    pub n: usize,
    pub dim: usize,
    /// monomials in `ξ_0, …, ξ_{n-1}` whose images form a basis
    pub basis: Vec<XiMonomial>,
    /// `(k, s, dim)` for the nonzero bidegrees
    pub dims: Vec<(usize, usize, usize)>,
}

/// The subalgebra of `A_(m)` generated by `ξ_0, …, ξ_{n-1}`, layer by layer
/// in `k` until two consecutive layers vanish.
pub fn finitization_dim(m: usize, n: usize) -> Result<Finitization> {
    if m == 0 || n == 0 {
        return domain("m and n must be positive");
    }
    let mut basis = Vec::new();
    let mut dims = Vec::new();
    let mut zero_layers = 0;
    let mut k = 0;
    while zero_layers < 2 {
        let layer: Vec<(usize, Vec<XiMonomial>)> = (0..=k * (n - 1))
            .into_par_iter()
            .map(|s| {
                let b = bidegree(m, k, s);
                let mut ech = b.relations.clone();
                let kept: Vec<XiMonomial> = weak_sequences(k, s)
                    .into_iter()
                    .filter(|v| v.last().is_none_or(|&i| i < n))
                    .map(XiMonomial)
                    .filter(|x| ech.insert(SparseVec::unit(b.index[x])))
                    .collect();
                (s, kept)
            })
            .collect();
        let mut layer_dim = 0;
        for (s, kept) in layer {
            if !kept.is_empty() {
                layer_dim += kept.len();
                dims.push((k, s, kept.len()));
                basis.extend(kept);
            }
        }
        zero_layers = if layer_dim == 0 { zero_layers + 1 } else { 0 };
        k += 1;
    }
    Ok(Finitization { m, n, dim: basis.len(), basis, dims })
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbedReport {
    pub m: usize,
    pub kills: bool,
    pub bijective: bool,
    /// `(k, s)` of the target bidegrees checked
    pub checked: Vec<(usize, usize)>,
}

/// `ξ_0 ξ_i = 0` for `i < 2m`, and the shift maps the admissible basis of
/// `A^{k,s}` onto a basis of `ξ_0 A^{k,s+2mk}` for `k ≤ k_max`, `s ≤ s_max`.
pub fn embed_shift_check(m: usize, k_max: usize, s_max: usize) -> Result<EmbedReport> {
    let mut kills = true;
    for i in 0..2 * m {
        kills &= normal_form(m, &XiPoly::monomial(XiMonomial::new(vec![0, i])))?.is_zero();
    }
    let mut bijective = true;
    let mut checked = Vec::new();
    for k in 0..=k_max {
        for s in 0..=s_max {
            let t = s + 2 * m * k;
            let target = bidegree(m, k + 1, t);
            let mut image = Echelon::new(target.monomials.len());
            for x in weak_sequences(k, t) {
                let w = XiPoly::monomial(XiMonomial(x).mul(&XiMonomial(vec![0])));
                image.insert(target.row(&normal_form(m, &w)?));
            }
            let shifted: Vec<XiMonomial> = weak_sequences(k, s)
                .into_iter()
                .map(XiMonomial)
                .filter(|x| x.is_admissible(m))
                .map(|x| x.shift(m))
                .collect();
            let mut span = Echelon::new(target.monomials.len());
            for x in &shifted {
                bijective &= x.is_admissible(m) && span.insert(SparseVec::unit(target.index[x]));
            }
            bijective &= span.same_span(&image);
            checked.push((k + 1, t));
        }
    }
    Ok(EmbedReport { m, kills, bijective, checked })
}
