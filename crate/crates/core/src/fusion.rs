//! Fusion ideals: the rings `R_(m)(n)`, the kernel ideals `Ĩ_(m),Z(n)`, the
//! ideals `I_(m),Z(n)` generated by products of evaluation currents, and their
//! degreewise limits as `Z` collapses to `0` along a one-parameter family.
//!
//! Limits are taken in the Grassmannian of each degree component. A spanning
//! set with entries in `Q[ε]` is brought to a basis whose reduction at `ε = 0`
//! has full rank; that reduction spans the limit.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{fibonacci_m, gap_subsets, multisets};
use crate::error::{domain, Result};
use crate::presentation::{normal_form, XiMonomial, XiPoly};
use crate::scalar::{format_rational, int, rat, Rational};
use crate::{Echelon, EpsPoly, SparseVec};

/// `C[y_1, …, y_n] / ⟨y_i y_j⟩_{|i-j| < m}`; basis elements are gap subsets (0-based).
#[derive(Clone, Debug, Serialize)]
pub struct GapRing {
    pub m: usize,
    pub n: usize,
    pub basis: Vec<Vec<usize>>,
}

impl GapRing {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return domain("m must be positive");
        }
        let mut basis = gap_subsets(n, m);
        basis.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(GapRing { m, n, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `y_S · y_T`, or `None` when it vanishes.
    pub fn mul(&self, s: &[usize], t: &[usize]) -> Option<Vec<usize>> {
        let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
        u.sort_unstable();
        u.windows(2).all(|w| w[1] - w[0] >= self.m).then_some(u)
    }

    pub fn degree(&self, k: usize) -> Vec<Vec<usize>> {
        self.basis.iter().filter(|b| b.len() == k).cloned().collect()
    }

    pub fn expected_dim(&self) -> u128 {
        fibonacci_m(self.m, self.n)
    }
}

/// Points `z_1(ε), …, z_n(ε)`.
#[derive(Clone, Debug)]
pub struct EpsilonFamily {
    pub name: String,
    pub z: Vec<EpsPoly>,
}

impl Serialize for EpsilonFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EpsilonFamily", 2)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("z", &self.z.iter().map(|p| p.to_string()).collect::<Vec<_>>())?;
        st.end()
    }
}

impl fmt::Display for EpsilonFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.z.iter().map(|p| p.to_string()).collect();
        write!(f, "{} ({})", self.name, z.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyConditions {
    /// distinct points, all tending to 0
    pub distinct_to_zero: bool,
    /// successive differences have strictly increasing order of vanishing
    pub ratios_to_zero: bool,
}

impl EpsilonFamily {
    /// `z_i = ε + ε² + … + ε^i`.
    pub fn canonical(n: usize) -> Self {
        Self::weighted(n, &vec![int(1); n]).map(|f| EpsilonFamily { name: "canonical".into(), ..f }).unwrap()
    }

    /// `z_i = w_1 ε + … + w_i ε^i` with nonzero weights.
    pub fn weighted(n: usize, weights: &[Rational]) -> Result<Self> {
        if weights.len() < n || weights.iter().take(n).any(Zero::is_zero) {
            return domain(format!("need {n} nonzero weights"));
        }
        let z = (1..=n)
            .map(|i| {
                let mut c = vec![int(0)];
                c.extend(weights[..i].iter().cloned());
                EpsPoly::new(c)
            })
            .collect();
        let w: Vec<String> = weights[..n].iter().map(format_rational).collect();
        Ok(EpsilonFamily { name: format!("weighted[{}]", w.join(",")), z })
    }

    /// A user family; the conditions are checked but not enforced.
    pub fn custom(name: impl Into<String>, z: Vec<EpsPoly>) -> Self {
        EpsilonFamily { name: name.into(), z }
    }

    /// Conditions on the family, read off from orders of vanishing.
    pub fn conditions(&self) -> FamilyConditions {
        let n = self.z.len();
        let mut distinct = self.z.iter().all(|z| z.at_zero().is_zero());
        for i in 0..n {
            for j in i + 1..n {
                distinct &= self.z[i] != self.z[j];
            }
        }
        let val = |p: &EpsPoly| p.valuation();
        let mut ratios = true;
        if n >= 2 {
            let d: Vec<EpsPoly> = (1..n).map(|i| self.z[i].clone() - self.z[i - 1].clone()).collect();
            let mut prev = val(&self.z[0]);
            for di in &d {
                let v = val(di);
                ratios &= match (prev, v) {
                    (Some(a), Some(b)) => b > a,
                    _ => false,
                };
                prev = v;
            }
        }
        FamilyConditions { distinct_to_zero: distinct, ratios_to_zero: ratios }
    }
}

/// Fixed distinct rationals used as a generic point.
pub fn generic_point(n: usize) -> Vec<Rational> {
    (1..=n as i64).map(|i| rat(7 * i * i + 3, 2 * i + 9)).collect()
}

fn check_distinct(z: &[Rational]) -> Result<()> {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if z[i] == z[j] {
                return domain(format!("coordinates {} and {} coincide", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// One degree of an ideal in `C[x_0, …, x_{n-1}]`, on the basis `multisets(n, k)`.
#[derive(Clone, Debug, Serialize)]
pub struct IdealComponent {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub ambient_dim: usize,
    pub dim: usize,
    /// rows that hit an iteration cap during limit extraction
    pub inconclusive: bool,
    #[serde(skip)]
    pub echelon: Echelon,
}

impl IdealComponent {
    fn new(m: usize, n: usize, k: usize, echelon: Echelon, inconclusive: bool) -> Self {
        IdealComponent { m, n, k, ambient_dim: echelon.ncols(), dim: echelon.rank(), inconclusive, echelon }
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim - self.dim
    }

    pub fn monomials(&self) -> Vec<Vec<usize>> {
        multisets(self.n, self.k)
    }

    /// Rows as polynomials in `ξ_0, …, ξ_{n-1}`.
    pub fn rows(&self) -> Vec<XiPoly> {
        let mons = self.monomials();
        self.echelon
            .rows()
            .iter()
            .map(|r| {
                let mut p = XiPoly::zero();
                for (i, c) in r.entries() {
                    p.add_term(XiMonomial::new(mons[*i].clone()), c.clone());
                }
                p
            })
            .collect()
    }

    /// Renames `x_i ↦ x_{n-1-i}`.
    pub fn reversed(&self) -> Self {
        let mons = self.monomials();
        let index: HashMap<Vec<usize>, usize> = mons.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let perm: Vec<usize> = mons
            .iter()
            .map(|x| {
                let mut y: Vec<usize> = x.iter().map(|i| self.n - 1 - i).collect();
                y.sort_unstable();
                index[&y]
            })
            .collect();
        let ech = Echelon::from_rows(self.ambient_dim, self.echelon.rows().iter().map(|r| r.map_columns(|c| perm[c])));
        IdealComponent::new(self.m, self.n, self.k, ech, self.inconclusive)
    }
}

/// `Π_a (Σ_b z_b^{i_a} y_b)` in the degree-`k` part of the gap ring: for each
/// `k`-subset `S`, the permanent of `(z_s^{i_a})`.
fn evaluation_images(ring: &GapRing, powers: &[Vec<EpsPoly>], k: usize) -> (Vec<Vec<usize>>, Vec<Vec<EpsPoly>>) {
    let mons = multisets(ring.n, k);
    let targets = ring.degree(k);
    let images = mons
        .iter()
        .map(|mon| {
            targets
                .iter()
                .map(|s| {
                    fn perm(mon: &[usize], s: &[usize], used: &mut Vec<bool>, powers: &[Vec<EpsPoly>]) -> EpsPoly {
                        let Some((&i, rest)) = mon.split_first() else { return EpsPoly::one() };
                        let mut acc = EpsPoly::zero();
                        for (t, &b) in s.iter().enumerate() {
                            if !used[t] {
                                used[t] = true;
                                acc = acc + powers[b][i].clone() * perm(rest, s, used, powers);
                                used[t] = false;
                            }
                        }
                        acc
                    }
                    perm(mon, s, &mut vec![false; s.len()], powers)
                })
                .collect()
        })
        .collect();
    (mons, images)
}

fn power_table(z: &[EpsPoly], n: usize) -> Vec<Vec<EpsPoly>> {
    z.iter()
        .map(|zb| {
            let mut row = vec![EpsPoly::one()];
            for _ in 1..n {
                let next = row.last().unwrap().clone() * zb.clone();
                row.push(next);
            }
            row
        })
        .collect()
}

fn constant_points(z: &[Rational]) -> Vec<EpsPoly> {
    z.iter().map(|c| EpsPoly::constant(c.clone())).collect()
}

fn at_zero_row(r: &[EpsPoly]) -> SparseVec {
    SparseVec::from_pairs(r.iter().enumerate().map(|(i, p)| (i, p.at_zero())).collect())
}

/// The annihilator of the span of `rows` in `Q^ncols`.
fn annihilator(rows: &[SparseVec], ncols: usize) -> Echelon {
    let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (c, v) in r.entries() {
            cols[*c].push((i, v.clone()));
        }
    }
    let vecs: Vec<SparseVec> = cols.into_iter().map(SparseVec::from_pairs).collect();
    Echelon::from_rows(ncols, crate::linalg::left_kernel(&vecs, rows.len()))
}

/// `Ĩ_(m),Z(n)` in degree `k`: the kernel of `C[a_0, …, a_{n-1}]_k → R_(m)(n)`.
pub fn kernel_component(m: usize, n: usize, z: &[Rational], k: usize) -> Result<IdealComponent> {
    check_distinct(z)?;
    if z.len() != n {
        return domain(format!("need {n} coordinates, got {}", z.len()));
    }
    let ring = GapRing::new(m, n)?;
    let (mons, images) = evaluation_images(&ring, &power_table(&constant_points(z), n), k);
    let rows: Vec<SparseVec> = images.iter().map(|r| at_zero_row(r)).collect();
    let kernel = crate::linalg::left_kernel(&rows, ring.degree(k).len());
    Ok(IdealComponent::new(m, n, k, Echelon::from_rows(mons.len(), kernel), false))
}

/// `L_b = Σ_l z_b^l ξ_l` multiplied pairwise for `|b - b'| < m`, times all monomials of degree `k - 2`.
fn xi_ideal_rows(m: usize, n: usize, z: &[EpsPoly], k: usize) -> Vec<Vec<EpsPoly>> {
    if k < 2 {
        return Vec::new();
    }
    let mons = multisets(n, k);
    let index: HashMap<Vec<usize>, usize> = mons.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let powers = power_table(z, n);
    let mut rows = Vec::new();
    for b in 0..n {
        for b2 in b..n.min(b + m) {
            for rest in multisets(n, k - 2) {
                let mut row = vec![EpsPoly::zero(); mons.len()];
                for l in 0..n {
                    for l2 in 0..n {
                        let mut x = rest.clone();
                        x.push(l);
                        x.push(l2);
                        x.sort_unstable();
                        let c = powers[b][l].clone() * powers[b2][l2].clone();
                        let e = &mut row[index[&x]];
                        *e = e.clone() + c;
                    }
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// `I_(m),Z(n)` in degree `k`.
pub fn xi_ideal_component(m: usize, n: usize, z: &[Rational], k: usize) -> Result<IdealComponent> {
    check_distinct(z)?;
    if z.len() != n || m == 0 {
        return domain(format!("need m >= 1 and {n} coordinates"));
    }
    let rows = xi_ideal_rows(m, n, &constant_points(z), k);
    let ncols = multisets(n, k).len();
    let ech = Echelon::from_rows(ncols, rows.iter().map(|r| at_zero_row(r)));
    Ok(IdealComponent::new(m, n, k, ech, false))
}

/// Rows over `Q[ε]` whose values at `ε = 0` stay independent.
struct LeadingSpan {
    ncols: usize,
    rows: Vec<Vec<EpsPoly>>,
    degrees: usize,
    /// reduced rows at `ε = 0`, each with its expression in `rows`
    reduced: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
    max_steps: usize,
    inconclusive: bool,
}

impl LeadingSpan {
    fn new(ncols: usize, max_steps: usize) -> Self {
        LeadingSpan { ncols, rows: Vec::new(), degrees: 0, reduced: Vec::new(), max_steps, inconclusive: false }
    }

    /// Coefficients `c` with `v = Σ c_j rows_j(0)`, if any.
    fn express(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let mut r = v.to_vec();
        let mut c = vec![int(0); self.rows.len()];
        for (p, row, combo) in &self.reduced {
            let x = r[*p].clone();
            if x.is_zero() {
                continue;
            }
            for (a, b) in r.iter_mut().zip(row) {
                *a -= &x * b;
            }
            for (a, b) in c.iter_mut().zip(combo) {
                *a += &x * b;
            }
        }
        r.iter().all(Zero::is_zero).then_some(c)
    }

    fn push_reduced(&mut self, v: Vec<Rational>) {
        let idx = self.rows.len() - 1;
        let mut r = v;
        let mut combo = vec![int(0); self.rows.len()];
        combo[idx] = int(1);
        for (p, row, cb) in &self.reduced {
            let x = r[*p].clone();
            if x.is_zero() {
                continue;
            }
            for (a, b) in r.iter_mut().zip(row) {
                *a -= &x * b;
            }
            for (a, b) in combo.iter_mut().zip(cb) {
                *a -= &x * b;
            }
        }
        let p = r.iter().position(|x| !x.is_zero()).expect("independent at zero");
        let inv = r[p].recip();
        for a in r.iter_mut() {
            *a *= &inv;
        }
        for a in combo.iter_mut() {
            *a *= &inv;
        }
        for (_, row, cb) in self.reduced.iter_mut() {
            cb.push(int(0));
            let x = row[p].clone();
            if x.is_zero() {
                continue;
            }
            for (a, b) in row.iter_mut().zip(&r) {
                *a -= &x * b;
            }
            for (a, b) in cb.iter_mut().zip(&combo) {
                *a -= &x * b;
            }
        }
        self.reduced.push((p, r, combo));
    }

    /// Adds a row; returns whether it was independent of the current rows over `Q(ε)`.
    ///
    /// Subtracting combinations of the current rows and dividing by `ε` lowers the
    /// order of vanishing of every maximal minor by one, so more divisions than the
    /// total degree certify dependence.
    fn insert(&mut self, mut r: Vec<EpsPoly>) -> bool {
        let deg = |row: &[EpsPoly]| row.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        let bound = self.degrees + deg(&r);
        let mut divisions = 0;
        let mut steps = 0;
        loop {
            let Some(v) = r.iter().filter_map(|p| p.valuation()).min() else { return false };
            if v > 0 {
                r = r.iter().map(|p| if p.is_zero() { p.clone() } else { p.shift_down(v) }).collect();
                divisions += v;
            }
            if divisions > bound {
                return false;
            }
            steps += 1;
            if steps > self.max_steps {
                self.inconclusive = true;
                return false;
            }
            let r0: Vec<Rational> = r.iter().map(|p| p.at_zero()).collect();
            match self.express(&r0) {
                None => {
                    self.degrees += deg(&r);
                    self.rows.push(r);
                    self.push_reduced(r0);
                    return true;
                }
                Some(c) => {
                    for (j, cj) in c.iter().enumerate() {
                        if cj.is_zero() {
                            continue;
                        }
                        for (a, b) in r.iter_mut().zip(&self.rows[j]) {
                            *a = a.clone() - b.scale(cj);
                        }
                    }
                }
            }
        }
    }

    fn limit(&self) -> Echelon {
        Echelon::from_rows(
            self.ncols,
            self.rows.iter().map(|r| SparseVec::from_pairs(r.iter().enumerate().map(|(i, p)| (i, p.at_zero())).collect())),
        )
    }
}

const MAX_STEPS: usize = 100_000;

fn check_family(family: &EpsilonFamily, n: usize) -> Result<()> {
    if family.z.len() != n {
        return domain(format!("family {} has {} points, need {n}", family.name, family.z.len()));
    }
    Ok(())
}

fn determinant(a: &[Vec<EpsPoly>]) -> EpsPoly {
    match a.len() {
        0 => EpsPoly::one(),
        1 => a[0][0].clone(),
        n => {
            let mut acc = EpsPoly::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<EpsPoly>> =
                    a[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = a[0][j].clone() * determinant(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// `adj(V)` transposed for `V_{bl} = z_b^l`, so that `ξ_l = det(V)^{-1} Σ_b table[b][l] L_b`.
fn inverse_vandermonde_table(z: &[EpsPoly]) -> Vec<Vec<EpsPoly>> {
    let n = z.len();
    let v = power_table(z, n);
    (0..n)
        .map(|b| {
            (0..n)
                .map(|l| {
                    let minor: Vec<Vec<EpsPoly>> = (0..n)
                        .filter(|&r| r != b)
                        .map(|r| (0..n).filter(|&c| c != l).map(|c| v[r][c].clone()).collect())
                        .collect();
                    let d = determinant(&minor);
                    if (b + l) % 2 == 0 { d } else { EpsPoly::zero() - d }
                })
                .collect()
        })
        .collect()
}

/// `lim_{ε→0} I_(m),Z(ε)(n)` in degree `k`.
///
/// The forms `L_b` are a change of coordinates, so `I_(m),Z` is the kernel of
/// `ξ_l ↦ Σ_b adj(V)_{lb} y_b` onto the gap ring, and its limit is the
/// annihilator of the limit image.
pub fn limit_component(m: usize, n: usize, family: &EpsilonFamily, k: usize) -> Result<IdealComponent> {
    check_family(family, n)?;
    let ring = GapRing::new(m, n)?;
    let (mons, images) = evaluation_images(&ring, &inverse_vandermonde_table(&family.z), k);
    let ntarget = ring.degree(k).len();
    let mut span = LeadingSpan::new(mons.len(), MAX_STEPS);
    for s in 0..ntarget {
        span.insert(images.iter().map(|row| row[s].clone()).collect());
    }
    let image = span.limit();
    Ok(IdealComponent::new(m, n, k, annihilator(image.rows(), mons.len()), span.inconclusive))
}

#[cfg(test)]
fn limit_component_by_generators(m: usize, n: usize, family: &EpsilonFamily, k: usize) -> IdealComponent {
    let mut span = LeadingSpan::new(multisets(n, k).len(), MAX_STEPS);
    for row in xi_ideal_rows(m, n, &family.z, k) {
        span.insert(row);
    }
    IdealComponent::new(m, n, k, span.limit(), span.inconclusive)
}

/// `lim_{ε→0} Ĩ_(m),Z(ε)(n)` in degree `k`, as the annihilator of the limit image.
pub fn kernel_limit_component(m: usize, n: usize, family: &EpsilonFamily, k: usize) -> Result<IdealComponent> {
    check_family(family, n)?;
    let ring = GapRing::new(m, n)?;
    let (mons, images) = evaluation_images(&ring, &power_table(&family.z, n), k);
    let ntarget = ring.degree(k).len();
    let mut span = LeadingSpan::new(mons.len(), MAX_STEPS);
    for s in 0..ntarget {
        span.insert(images.iter().map(|row| row[s].clone()).collect());
    }
    let image = span.limit();
    Ok(IdealComponent::new(m, n, k, annihilator(image.rows(), mons.len()), span.inconclusive))
}

/// `I_(m)(n)` in degree `k`: the kernel of `C[ξ_0, …, ξ_{n-1}]_k → A_(m)`.
pub fn defining_component(m: usize, n: usize, k: usize) -> Result<IdealComponent> {
    if m == 0 || n == 0 {
        return domain("m and n must be positive");
    }
    let mons = multisets(n, k);
    let mut cols: HashMap<XiMonomial, usize> = HashMap::new();
    let mut rows = Vec::with_capacity(mons.len());
    for x in &mons {
        let nf = normal_form(m, &XiPoly::monomial(XiMonomial::new(x.clone())))?;
        let pairs = nf
            .terms()
            .iter()
            .map(|(y, c)| {
                let len = cols.len();
                (*cols.entry(y.clone()).or_insert(len), c.clone())
            })
            .collect();
        rows.push(SparseVec::from_pairs(pairs));
    }
    let kernel = crate::linalg::left_kernel(&rows, cols.len());
    Ok(IdealComponent::new(m, n, k, Echelon::from_rows(mons.len(), kernel), false))
}

/// Sum over `k` of `dim C[a]_k / Ĩ_Z`, stopping after the top degree of the gap ring.
pub fn kernel_quotient_dims(m: usize, n: usize, z: &[Rational]) -> Result<Vec<usize>> {
    let top = GapRing::new(m, n)?.basis.iter().map(Vec::len).max().unwrap_or(0);
    (0..=top + 1).into_par_iter().map(|k| Ok(kernel_component(m, n, z, k)?.quotient_dim())).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equal,
    LimitLarger,
    LimitSmaller,
    Incomparable,
    Inconclusive,
}

fn compare(limit: &IdealComponent, defining: &IdealComponent) -> Verdict {
    if limit.inconclusive {
        return Verdict::Inconclusive;
    }
    let a = limit.echelon.is_subspace_of(&defining.echelon);
    let b = defining.echelon.is_subspace_of(&limit.echelon);
    match (a, b) {
        (true, true) => Verdict::Equal,
        (false, true) => Verdict::LimitLarger,
        (true, false) => Verdict::LimitSmaller,
        (false, false) => Verdict::Incomparable,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeVerdict {
    pub k: usize,
    pub generic_dim: usize,
    pub limit_dim: usize,
    pub defining_dim: usize,
    pub verdict: Verdict,
    /// `dim lim ≥ dim` at the generic point
    pub semicontinuity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyScan {
    pub family: EpsilonFamily,
    pub conditions: FamilyConditions,
    pub degrees: Vec<DegreeVerdict>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub m: usize,
    pub n: usize,
    pub k_max: usize,
    pub families: Vec<FamilyScan>,
    /// all families give the same limit in every degree
    pub family_independent: bool,
}

/// Degreewise comparison of `lim I_(m),Z(ε)(n)` with `I_(m)(n)` for each family.
pub fn conjecture_scan(m: usize, n: usize, k_max: usize, families: &[EpsilonFamily]) -> Result<ScanReport> {
    let z = generic_point(n);
    let defining: Vec<IdealComponent> =
        (0..=k_max).into_par_iter().map(|k| defining_component(m, n, k)).collect::<Result<_>>()?;
    let generic: Vec<IdealComponent> =
        (0..=k_max).into_par_iter().map(|k| xi_ideal_component(m, n, &z, k)).collect::<Result<_>>()?;
    let mut scans = Vec::new();
    let mut limits: Vec<Vec<IdealComponent>> = Vec::new();
    for fam in families {
        let lim: Vec<IdealComponent> =
            (0..=k_max).into_par_iter().map(|k| limit_component(m, n, fam, k)).collect::<Result<_>>()?;
        let degrees: Vec<DegreeVerdict> = (0..=k_max)
            .map(|k| DegreeVerdict {
                k,
                generic_dim: generic[k].dim,
                limit_dim: lim[k].dim,
                defining_dim: defining[k].dim,
                verdict: compare(&lim[k], &defining[k]),
                semicontinuity: lim[k].dim >= generic[k].dim,
            })
            .collect();
        let verdict = aggregate(degrees.iter().map(|d| d.verdict));
        scans.push(FamilyScan { family: fam.clone(), conditions: fam.conditions(), degrees, verdict });
        limits.push(lim);
    }
    let family_independent = limits
        .windows(2)
        .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a.echelon.same_span(&b.echelon)));
    Ok(ScanReport { m, n, k_max, families: scans, family_independent })
}

fn aggregate(vs: impl Iterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::Equal;
    for v in vs {
        out = match (out, v) {
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            (Verdict::Equal, x) => x,
            (x, Verdict::Equal) => x,
            (x, y) if x == y => x,
            _ => Verdict::Incomparable,
        };
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct InvCheck {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub defining_dim: usize,
    pub limit_dim: usize,
    /// `I_(m)(n)` renamed by `ξ_i ↦ a_{n-1-i}` equals `lim Ĩ_(m),Z(ε)(n)`
    pub equal: bool,
    /// the same comparison against `Ĩ_(m),Z(n)` at the generic point
    pub equal_at_generic_point: bool,
    /// `lim I_(m),Z(ε)(n)` renamed by `ξ_i ↦ a_{n-1-i}` equals `lim Ĩ_(m),Z(ε)(n)`
    pub limits_correspond: bool,
    pub inconclusive: bool,
}

/// The renaming `ξ_i ↦ a_{n-1-i}` identifies `I_(m)(n)` with the limit kernel ideal.
pub fn inv_check(m: usize, n: usize, k: usize, family: &EpsilonFamily) -> Result<InvCheck> {
    let def = defining_component(m, n, k)?.reversed();
    let lim = kernel_limit_component(m, n, family, k)?;
    let gen = kernel_component(m, n, &generic_point(n), k)?;
    let xi_lim = limit_component(m, n, family, k)?.reversed();
    Ok(InvCheck {
        m,
        n,
        k,
        defining_dim: def.dim,
        limit_dim: lim.dim,
        equal: !lim.inconclusive && def.echelon.same_span(&lim.echelon),
        equal_at_generic_point: def.echelon.same_span(&gen.echelon),
        limits_correspond: xi_lim.echelon.same_span(&lim.echelon),
        inconclusive: lim.inconclusive || xi_lim.inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono_row(ideal: &IdealComponent, x: &[usize]) -> SparseVec {
        let i = ideal.monomials().iter().position(|y| y == x).unwrap();
        SparseVec::unit(i)
    }

    #[test]
    fn gap_rings() {
        assert_eq!(GapRing::new(1, 4).unwrap().dim(), 16);
        let r = GapRing::new(2, 3).unwrap();
        assert_eq!(r.basis, vec![vec![], vec![0], vec![1], vec![2], vec![0, 2]]);
        assert_eq!(GapRing::new(3, 1).unwrap().dim(), 2);
        for m in 1..=4 {
            for n in 0..=10 {
                let r = GapRing::new(m, n).unwrap();
                assert_eq!(r.dim() as u128, r.expected_dim());
            }
        }
    }

    #[test]
    fn kernels() {
        let z = [int(1), int(2)];
        assert_eq!(kernel_component(1, 2, &z, 2).unwrap().dim, 2);
        assert_eq!(kernel_component(1, 2, &z, 0).unwrap().dim, 0);
        assert!(kernel_component(1, 2, &[int(1), int(1)], 2).is_err());
        for m in 1..=2 {
            for n in 1..=4 {
                let d: usize = kernel_quotient_dims(m, n, &generic_point(n)).unwrap().iter().sum();
                assert_eq!(d as u128, fibonacci_m(m, n));
            }
        }
    }

    #[test]
    fn xi_ideals() {
        let z = [int(1), int(2)];
        let c = xi_ideal_component(1, 2, &z, 2).unwrap();
        assert_eq!(c.dim, 2);
        assert_eq!(xi_ideal_component(1, 2, &z, 1).unwrap().dim, 0);
        let lim = limit_component(1, 2, &EpsilonFamily::canonical(2), 2).unwrap();
        assert!(lim.echelon.contains(&mono_row(&lim, &[0, 0])));
        assert!(lim.echelon.contains(&mono_row(&lim, &[0, 1])));
    }

    #[test]
    fn limit_routes_agree() {
        for m in 1..=2 {
            for n in 1..=3 {
                let z = generic_point(n);
                let fixed = EpsilonFamily::custom("generic", z.iter().map(|c| EpsPoly::constant(c.clone())).collect());
                let fam = EpsilonFamily::canonical(n);
                for k in 0..=3 {
                    let direct = xi_ideal_component(m, n, &z, k).unwrap();
                    assert!(limit_component(m, n, &fixed, k).unwrap().echelon.same_span(&direct.echelon));
                    let a = limit_component(m, n, &fam, k).unwrap();
                    let b = limit_component_by_generators(m, n, &fam, k);
                    assert!(!b.inconclusive && a.echelon.same_span(&b.echelon), "m={m} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn defining_ideal() {
        let d: Vec<usize> = (0..=3).map(|k| defining_component(1, 2, k).unwrap().quotient_dim()).collect();
        assert_eq!(d, vec![1, 2, 1, 0]);
        let c = defining_component(1, 2, 3).unwrap();
        assert!(c.echelon.contains(&mono_row(&c, &[1, 1, 1])));
        assert_eq!(defining_component(2, 3, 1).unwrap().dim, 0);
    }

    #[test]
    fn families() {
        let f = EpsilonFamily::canonical(3);
        assert_eq!(f.conditions(), FamilyConditions { distinct_to_zero: true, ratios_to_zero: true });
        let bad = EpsilonFamily::custom("linear", vec![EpsPoly::eps(), EpsPoly::eps().scale(&int(2))]);
        assert!(!bad.conditions().ratios_to_zero);
    }

    #[test]
    fn proved_case_and_inverse() {
        for n in 1..=3 {
            let r = conjecture_scan(1, n, 3, &[EpsilonFamily::canonical(n)]).unwrap();
            assert_eq!(r.families[0].verdict, Verdict::Equal, "n={n}");
            for k in 0..=3 {
                assert!(inv_check(1, n, k, &EpsilonFamily::canonical(n)).unwrap().equal, "n={n} k={k}");
            }
        }
        assert!(!inv_check(1, 2, 2, &EpsilonFamily::canonical(2)).unwrap().equal_at_generic_point);
    }
}
