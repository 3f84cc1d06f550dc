use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use prinspace::characters::{
    ch_a, ch_coinv, ch_finite, ch_l, ch_principal, coinv_recursion_holds, enumerate_semiinfinite,
    semiinfinite_series,
};
use prinspace::combinat::fibonacci_m;
use prinspace::fock::odd::odd_principal_dim;
use prinspace::fock::{
    principal_space, reconstruct_jack, rectangle, verify_relations, verify_theorem_jack, verify_theorem_main, Window,
};
use prinspace::fusion::{conjecture_scan, generic_point, inv_check, kernel_quotient_dims, EpsilonFamily};
use prinspace::jack::{jack, jack_norm_sq};
use prinspace::partition::{dominated_by, partitions, subdiagrams, Partition};
use prinspace::presentation::{
    admissible_count, coinvariant_basis, embed_shift_check, fermionic_check, finitization_dim, graded_dim_by_reduction,
    normal_form, XiMonomial, XiPoly,
};
use prinspace::qseries::QSeries;
use prinspace::scalar::{format_rational, int};
use prinspace::symfunc::inner_alpha;
use prinspace::{Rational, SymFunc};

use crate::report::{timed, Check, Report};
use crate::{CharArgs, CoinvArgs, FusionArgs, GridArgs, JackArgs, JackBasisArgs, OddArgs, PresArgs, SemiArgs};

pub type Params = BTreeMap<String, String>;

fn params(pairs: &[(&str, String)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn positive(r: &crate::range::Range, name: &str) -> Result<(), String> {
    r.at_least(1, name)
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad partition part {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    prinspace::scalar::parse_rational(s).map_err(|e| e.to_string())
}

fn expansion_json(f: &SymFunc) -> BTreeMap<String, String> {
    f.terms().iter().map(|(l, c)| (l.to_string(), format_rational(c))).collect()
}

fn same_monomial_form(a: &SymFunc, b: &SymFunc) -> bool {
    a.to_monomial() == b.to_monomial()
}

// jack

pub fn jack_campaign(a: &JackArgs, seed: u64) -> Result<Report, String> {
    let alphas = a.alpha.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
    if alphas.iter().any(|x| x <= &Rational::zero()) {
        return Err("--alpha must be positive".into());
    }
    let mut groups: Vec<Vec<Partition>> = Vec::new();
    if let Some(l) = &a.lambda {
        groups.push(vec![parse_partition(l)?]);
    }
    if let Some(n) = &a.n {
        n.at_least(0, "n")?;
        if n.max() > 9 {
            return Err("--n is limited to 9".into());
        }
        groups.extend(n.values().iter().map(|&d| partitions(d as usize)));
    }
    if groups.is_empty() {
        return Err("give --lambda or --n".into());
    }
    let cells: Vec<(Vec<Partition>, Rational)> =
        groups.iter().flat_map(|g| alphas.iter().map(move |x| (g.clone(), x.clone()))).collect();
    let basis = a.basis;
    let checks: Vec<Check> = cells
        .par_iter()
        .flat_map_iter(|(group, alpha)| {
            let mut out: Vec<Check> = group
                .iter()
                .map(|l| {
                    timed("jack", "jack", format!("lambda={l},alpha={alpha}"), |c| {
                        let j = jack(l, alpha)?;
                        let monic = j.expansion.coeff(l) == int(1);
                        let triangular = j.expansion.terms().keys().all(|mu| dominated_by(mu, l));
                        let norm = jack_norm_sq(l, alpha)?;
                        let expansion = match basis {
                            BasisArg::M => j.expansion.clone(),
                            BasisArg::P => j.expansion.to_power_sum(),
                        };
                        Ok(c.status(monic && triangular)
                            .summary(format!("{} terms, norm {norm}", expansion.terms().len()))
                            .values(&json!({
                                "partition": l,
                                "alpha": format_rational(alpha),
                                "expansion": expansion_json(&expansion),
                                "norm_sq": format_rational(&norm),
                                "monic": monic,
                                "triangular": triangular,
                            })))
                    })
                })
                .collect();
            if group.len() > 1 {
                let n = group[0].size();
                out.push(timed("jack", "orthogonality", format!("n={n},alpha={alpha}"), |c| {
                    let js = group.iter().map(|l| jack(l, alpha).map(|j| j.expansion)).collect::<Result<Vec<_>, _>>()?;
                    let mut bad = Vec::new();
                    for i in 0..js.len() {
                        for j in i + 1..js.len() {
                            if !inner_alpha(&js[i], &js[j], alpha)?.is_zero() {
                                bad.push((group[i].to_string(), group[j].to_string()));
                            }
                        }
                    }
                    Ok(c.status(bad.is_empty()).summary(format!("{} pairs, {} nonzero", js.len() * (js.len() - 1) / 2, bad.len())))
                }));
            }
            out
        })
        .collect();
    let mut p = params(&[("alpha", a.alpha.join(",")), ("basis", format!("{basis:?}").to_lowercase())]);
    if let Some(l) = &a.lambda {
        p.insert("lambda".into(), l.clone());
    }
    if let Some(n) = &a.n {
        p.insert("n".into(), n.to_string());
    }
    Ok(Report::new("jack", p, seed, checks))
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum BasisArg {
    M,
    P,
}

// char

fn series_rows(label: &str, m: i64, extra: &str, s: &QSeries) -> Vec<Vec<String>> {
    s.records()
        .into_iter()
        .map(|t| {
            let coeff = match t.coeff {
                prinspace::qseries::CoeffRepr::Small(c) => c.to_string(),
                prinspace::qseries::CoeffRepr::Big(c) => c,
            };
            vec![label.to_string(), m.to_string(), extra.to_string(), t.z_charge_units.to_string(), t.q_exponent, coeff]
        })
        .collect()
}

fn restrict_charges(s: &QSeries, max_charge: i64, bound: &Rational) -> QSeries {
    let mut out = QSeries::zero();
    for (z, q, c) in s.terms() {
        if z <= max_charge {
            out.add_term(z, q.clone(), c.clone());
        }
    }
    out.truncate(bound.clone())
}

pub fn char_campaign(a: &CharArgs, seed: u64) -> Result<Report, String> {
    positive(&a.m, "m")?;
    let qmax = parse_rational(&a.qmax)?;
    let kind = a.kind();
    let mut cells: Vec<(i64, i64)> = Vec::new();
    for &m in a.m.values() {
        match kind {
            "A" | "principal" => cells.push((m, 0)),
            "finite" => {
                let p = a.p.as_ref().ok_or("--finite needs --p")?;
                p.at_least(0, "p")?;
                cells.extend(p.values().iter().map(|&p| (m, p)));
            }
            "coinv" => {
                let n = a.n.as_ref().ok_or("--coinv needs --n")?;
                n.at_least(0, "n")?;
                cells.extend(n.values().iter().map(|&n| (m, n)));
            }
            _ => {
                let is: Vec<i64> = match &a.i {
                    Some(r) => r.values().to_vec(),
                    None => (0..2 * m).collect(),
                };
                if let Some(bad) = is.iter().find(|&&i| i < 0 || i >= 2 * m) {
                    return Err(format!("--i must lie in 0..{} for m = {m}, got {bad}", 2 * m - 1));
                }
                cells.extend(is.into_iter().map(|i| (m, i)));
            }
        }
    }
    if kind == "A" && (qmax.denom() != &1.into() || qmax < Rational::zero()) {
        return Err("--qmax must be a nonnegative integer for --A".into());
    }
    let kmax = a.kmax;
    let results: Vec<(Check, Vec<Vec<String>>)> = cells
        .par_iter()
        .map(|&(m, x)| {
            let mut rows = Vec::new();
            let check = match kind {
                "A" => timed("char", "A", format!("m={m}"), |c| {
                    let q = qmax.to_integer().try_into().unwrap_or(0usize);
                    let s = ch_a(m, kmax, q)?;
                    let mut bad = Vec::new();
                    for k in 0..=kmax {
                        for w in 0..=q {
                            let f = s.coeff(k as i64, &int(w as i64));
                            let r = graded_dim_by_reduction(m as usize, k, w);
                            let n = admissible_count(m as usize, k, w);
                            if f != r.into() || r != n {
                                bad.push((k, w));
                            }
                        }
                    }
                    rows = series_rows("A", m, "", &s);
                    Ok(c.status(bad.is_empty())
                        .summary(format!("{} terms; formula = reduction = admissible count: {}", s.len(), bad.is_empty()))
                        .values(&json!({ "series": s, "mismatches": bad })))
                }),
                "principal" => timed("char", "principal", format!("m={m}"), |c| {
                    let s = ch_principal(m, kmax, &qmax)?;
                    rows = series_rows("principal", m, "", &s);
                    let c = c.values(&json!({ "series": s }));
                    if qmax > int(6) {
                        return Ok(c.summary(format!("{} terms; Fock cross-check needs qmax <= 6", s.len())));
                    }
                    let v = principal_space(m, 1 - m, Window::Infinite, Some(qmax.clone()))?;
                    let fock = restrict_charges(&v.character(), m - 1 + 2 * m * kmax as i64, &qmax);
                    let ok = fock == s;
                    Ok(c.status(ok).summary(format!("{} terms; equals Fock character: {ok}", s.len())))
                }),
                "finite" => timed("char", "finite", format!("m={m},p={x}"), |c| {
                    let s = ch_finite(m, x)?;
                    rows = series_rows("finite", m, &x.to_string(), &s);
                    let dim = s.eval_at_one();
                    let mut ok = dim == fibonacci_m(m as usize, x as usize).into();
                    let mut note = format!("dim {dim}");
                    if (1..=5).contains(&x) {
                        let v = principal_space(m, x, Window::Finite(x as usize), None)?;
                        let same = v.character() == s;
                        ok &= same;
                        note.push_str(&format!("; equals Fock character: {same}"));
                    }
                    Ok(c.status(ok).summary(note).values(&json!({ "series": s, "dim": dim.to_string() })))
                }),
                "coinv" => timed("char", "coinv", format!("m={m},n={x}"), |c| {
                    let s = ch_coinv(m, x)?;
                    rows = series_rows("coinv", m, &x.to_string(), &s);
                    let dim = s.eval_at_one();
                    let mut ok = dim == fibonacci_m(2 * m as usize, x as usize).into();
                    let rec = if x >= 2 * m { Some(coinv_recursion_holds(m, x)?) } else { None };
                    ok &= rec != Some(false);
                    Ok(c.status(ok)
                        .summary(format!("dim {dim}; recursion {}", rec.map_or("n/a".into(), |r| r.to_string())))
                        .values(&json!({ "series": s, "dim": dim.to_string(), "recursion": rec })))
                }),
                _ => timed("char", "L", format!("m={m},i={x}"), |c| {
                    let s = ch_l(m, x, &qmax)?;
                    rows = series_rows("L", m, &x.to_string(), &s);
                    let sequences = semiinfinite_series(m, x, &qmax)?;
                    let ok = sequences == s;
                    Ok(c.status(ok)
                        .summary(format!("{} terms; equals sequence count: {ok}", s.len()))
                        .values(&json!({ "series": s })))
                }),
            };
            (check, rows)
        })
        .collect();
    let mut table = Vec::new();
    let mut checks = Vec::new();
    for (c, rows) in results {
        checks.push(c);
        table.extend(rows);
    }
    let mut p = params(&[("kind", kind.to_string()), ("m", a.m.to_string()), ("kmax", kmax.to_string()), ("qmax", a.qmax.clone())]);
    for (k, v) in [("p", &a.p), ("n", &a.n), ("i", &a.i)] {
        if let Some(v) = v {
            p.insert(k.into(), v.to_string());
        }
    }
    let mut r = Report::new("char", p, seed, checks);
    r.table_header = ["series", "m", "index", "z_charge_units", "q_exponent", "coeff"].map(String::from).to_vec();
    r.table = table;
    Ok(r)
}

// verify-main, verify-jack-basis

fn grid_cells(a: &GridArgs) -> Result<Vec<(i64, i64, usize)>, String> {
    positive(&a.m, "m")?;
    positive(&a.p, "p")?;
    positive(&a.k, "k")?;
    let mut cells = Vec::new();
    for &m in a.m.values() {
        for &p in a.p.values() {
            for &k in a.k.values() {
                cells.push((m, p, k as usize));
            }
        }
    }
    Ok(cells)
}

pub fn main_campaign(a: &GridArgs, seed: u64) -> Result<Report, String> {
    let cells = grid_cells(a)?;
    let checks = cells
        .par_iter()
        .map(|&(m, p, k)| {
            timed("verify-main", "proportionality", format!("m={m},p={p},k={k}"), |c| {
                if rectangle(m, p, k).is_err() {
                    return Ok(c.skip("no rectangle (p < m(k-1)+1)"));
                }
                let r = verify_theorem_main(m, p, k)?;
                let nonzero = r.constant.as_ref().is_some_and(|x| !x.is_zero());
                let constant = r.constant.as_ref().map_or("none".into(), |x| x.to_string());
                Ok(c.status(r.matches && nonzero).summary(format!("rectangle {}, C = {constant}", r.rectangle)).values(&r))
            })
        })
        .collect();
    let p = params(&[("m", a.m.to_string()), ("p", a.p.to_string()), ("k", a.k.to_string())]);
    Ok(Report::new("verify-main", p, seed, checks))
}

pub fn jack_basis_campaign(a: &JackBasisArgs, seed: u64) -> Result<Report, String> {
    let cells = grid_cells(&a.grid)?;
    let reconstruct = a.reconstruct;
    let checks: Vec<Check> = cells
        .par_iter()
        .flat_map_iter(|&(m, p, k)| {
            let cell = format!("m={m},p={p},k={k}");
            let Ok(rect) = rectangle(m, p, k) else {
                return vec![Check::new("verify-jack-basis", "span", cell).skip("no rectangle (p < m(k-1)+1)")];
            };
            let mut out = vec![timed("verify-jack-basis", "span", cell.clone(), |c| {
                let r = verify_theorem_jack(m, p, k)?;
                let ok = r.matches && r.base_equal;
                let dims: usize = r.levels.iter().map(|l| l.jack_dim).sum();
                Ok(c.status(ok).summary(format!("rectangle {}, {} levels, {dims} Jack vectors", r.rectangle, r.levels.len())).values(&r))
            })];
            if reconstruct {
                out.push(timed("verify-jack-basis", "reconstruction", cell, |c| {
                    let mut bad = Vec::new();
                    let mus = subdiagrams(rect.part(0), k);
                    for mu in &mus {
                        let got = reconstruct_jack(m, p, k, mu)?;
                        if !same_monomial_form(&got, &jack(mu, &int(m))?.expansion) {
                            bad.push(mu.to_string());
                        }
                    }
                    Ok(c.status(bad.is_empty())
                        .summary(format!("{} Jack polynomials, {} differ", mus.len(), bad.len()))
                        .values(&json!({ "differ": bad })))
                }));
            }
            out
        })
        .collect();
    let mut p = params(&[("m", a.grid.m.to_string()), ("p", a.grid.p.to_string()), ("k", a.grid.k.to_string())]);
    p.insert("reconstruct".into(), reconstruct.to_string());
    Ok(Report::new("verify-jack-basis", p, seed, checks))
}

// presentation

fn random_xi_poly(rng: &mut ChaCha8Rng) -> XiPoly {
    let mut p = XiPoly::zero();
    for _ in 0..rng.gen_range(1..5) {
        let len = rng.gen_range(0..4);
        let idx: Vec<usize> = (0..len).map(|_| rng.gen_range(0..6)).collect();
        p.add_term(XiMonomial::new(idx), int(rng.gen_range(-5..=5)));
    }
    p
}

pub fn presentation_campaign(a: &PresArgs, seed: u64) -> Result<Report, String> {
    positive(&a.m, "m")?;
    if a.m.max() > 3 || a.kmax > 6 || a.smax > 20 {
        return Err("presentation grid is limited to m <= 3, kmax <= 6, smax <= 20".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(XiPoly, XiPoly, i64)> =
        (0..a.samples).map(|_| (random_xi_poly(&mut rng), random_xi_poly(&mut rng), rng.gen_range(-3..=3))).collect();
    let (kmax, smax, zmax) = (a.kmax, a.smax, a.zmax);
    let jobs: Vec<(usize, &str)> = a
        .m
        .values()
        .iter()
        .flat_map(|&m| ["graded-dims", "relations", "fermionic", "embedding", "normal-form"].map(|j| (m as usize, j)))
        .collect();
    let checks = jobs
        .par_iter()
        .map(|&(m, job)| {
            let cell = format!("m={m}");
            match job {
                "graded-dims" => timed("presentation", job, cell, |c| {
                    let ch = ch_a(m as i64, kmax, smax)?;
                    let mut bad = Vec::new();
                    for k in 0..=kmax {
                        for s in 0..=smax {
                            let f = ch.coeff(k as i64, &int(s as i64));
                            let r = graded_dim_by_reduction(m, k, s);
                            let n = admissible_count(m, k, s);
                            if f != r.into() || r != n {
                                bad.push((k, s));
                            }
                        }
                    }
                    let n = (kmax + 1) * (smax + 1);
                    Ok(c.status(bad.is_empty())
                        .summary(format!("{n} bidegrees, {} mismatches", bad.len()))
                        .values(&json!({ "mismatches": bad })))
                }),
                "relations" => timed("presentation", job, cell, |c| {
                    let r = verify_relations(m as i64, smax.min(6))?;
                    let ok = r.iter().all(|x| x.vanishes);
                    Ok(c.status(ok).summary(format!("{} relations vanish on the base point: {ok}", r.len())).values(&r))
                }),
                "fermionic" => timed("presentation", job, cell, |c| {
                    let r = fermionic_check(m, kmax.min(3), smax.min(10), zmax);
                    let ok = r.independent && r.markers_present && r.nonvanishing_relations.is_empty();
                    Ok(c.status(ok)
                        .summary(format!(
                            "independent {}, markers {}, nonvanishing squares {}",
                            r.independent,
                            r.markers_present,
                            r.nonvanishing_relations.len()
                        ))
                        .values(&r))
                }),
                "embedding" => timed("presentation", job, cell, |c| {
                    let r = embed_shift_check(m, kmax.min(2), smax.min(6))?;
                    Ok(c.status(r.kills && r.bijective)
                        .summary(format!("kills {}, bijective {}", r.kills, r.bijective))
                        .values(&r))
                }),
                _ => timed("presentation", job, cell, |c| {
                    let mut bad = 0;
                    for (x, y, t) in &samples {
                        let nx = normal_form(m, x)?;
                        let ny = normal_form(m, y)?;
                        let idem = normal_form(m, &nx)? == nx;
                        let admissible = nx.terms().keys().all(|w| w.is_admissible(m));
                        let linear = normal_form(m, &x.add(&y.scale(&int(*t))))? == nx.add(&ny.scale(&int(*t)));
                        if !(idem && admissible && linear) {
                            bad += 1;
                        }
                    }
                    Ok(c.status(bad == 0).summary(format!("{} random samples, {bad} violations", samples.len())))
                }),
            }
        })
        .collect();
    let p = params(&[
        ("m", a.m.to_string()),
        ("kmax", kmax.to_string()),
        ("smax", smax.to_string()),
        ("zmax", zmax.to_string()),
        ("samples", a.samples.to_string()),
    ]);
    Ok(Report::new("presentation", p, seed, checks))
}

// coinvariants

pub fn coinvariant_campaign(a: &CoinvArgs, seed: u64) -> Result<Report, String> {
    positive(&a.m, "m")?;
    a.top.at_least(0, "N")?;
    positive(&a.n, "n")?;
    if a.m.max() > 3 || a.top.max() > 8 || a.n.max() > 8 {
        return Err("coinvariant grid is limited to m <= 3, N <= 8, n <= 8".into());
    }
    let mut jobs = Vec::new();
    for &m in a.m.values() {
        jobs.extend(a.top.values().iter().map(|&t| (m as usize, t as usize, true)));
        jobs.extend(a.n.values().iter().map(|&n| (m as usize, n as usize, false)));
    }
    let checks = jobs
        .par_iter()
        .map(|&(m, x, coinv)| {
            if coinv {
                timed("coinvariants", "basis", format!("m={m},N={x}"), |c| {
                    let r = coinvariant_basis(m, x)?;
                    let ch = ch_coinv(m as i64, x as i64 + 1)?.eval_at_one();
                    let ok = r.matches && ch == r.dim.into();
                    Ok(c.status(ok).summary(format!("dim {}, character {ch}, bases match {}", r.dim, r.matches)).values(&r))
                })
            } else {
                timed("coinvariants", "finitization", format!("m={m},n={x}"), |c| {
                    let r = finitization_dim(m, x)?;
                    let f = fibonacci_m(m, x);
                    Ok(c.status(r.dim as u128 == f).summary(format!("dim {}, F = {f}", r.dim)).values(&r))
                })
            }
        })
        .collect();
    let p = params(&[("m", a.m.to_string()), ("N", a.top.to_string()), ("n", a.n.to_string())]);
    Ok(Report::new("coinvariants", p, seed, checks))
}

// semiinfinite

pub fn semiinfinite_campaign(a: &SemiArgs, seed: u64) -> Result<Report, String> {
    positive(&a.m, "m")?;
    let qmax = parse_rational(&a.qmax)?;
    if qmax > int(12) {
        return Err("--qmax is limited to 12".into());
    }
    let cells: Vec<(i64, i64)> = a.m.values().iter().flat_map(|&m| (0..2 * m).map(move |i| (m, i))).collect();
    let checks = cells
        .par_iter()
        .map(|&(m, i)| {
            timed("semiinfinite", "basis-count", format!("m={m},i={i}"), |c| {
                let seqs = enumerate_semiinfinite(m, i, &qmax)?;
                let counted = semiinfinite_series(m, i, &qmax)?;
                let ch = ch_l(m, i, &qmax)?;
                let ok = counted == ch;
                Ok(c.status(ok)
                    .summary(format!("{} sequences; counts equal character: {ok}", seqs.len()))
                    .values(&json!({ "character": ch, "sequences": seqs.len() })))
            })
        })
        .collect();
    let p = params(&[("m", a.m.to_string()), ("qmax", a.qmax.clone())]);
    Ok(Report::new("semiinfinite", p, seed, checks))
}

// fusion-scan

fn parse_family(spec: &str, n: usize) -> Result<EpsilonFamily, String> {
    if spec == "canonical" {
        return Ok(EpsilonFamily::canonical(n));
    }
    let Some(w) = spec.strip_prefix("weighted:") else {
        return Err(format!("unknown family {spec:?}; use canonical or weighted:w1,w2,..."));
    };
    let weights = w.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    EpsilonFamily::weighted(n, &weights).map_err(|e| format!("family {spec:?}: {e}"))
}

pub fn fusion_campaign(a: &FusionArgs, seed: u64) -> Result<Report, String> {
    positive(&a.m, "m")?;
    positive(&a.n, "n")?;
    if a.m.max() > 3 || a.n.max() > 5 || a.kmax > 5 {
        return Err("fusion grid is limited to m <= 3, n <= 5, kmax <= 5".into());
    }
    let nmax = a.n.max() as usize;
    let mut specs = a.family.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..a.random_families {
        let w: Vec<String> = (0..nmax)
            .map(|_| {
                let v: i64 = rng.gen_range(1..=5);
                (if rng.gen_bool(0.5) { v } else { -v }).to_string()
            })
            .collect();
        specs.push(format!("weighted:{}", w.join(",")));
    }
    for s in &specs {
        parse_family(s, nmax)?;
    }
    let kmax = a.kmax;
    let mut jobs = Vec::new();
    for &m in a.m.values() {
        for &n in a.n.values() {
            jobs.push((m as usize, n as usize, "scan"));
            jobs.push((m as usize, n as usize, "inverse"));
            jobs.push((m as usize, n as usize, "generic-quotient"));
        }
    }
    let checks = jobs
        .par_iter()
        .map(|&(m, n, job)| {
            let families: Vec<EpsilonFamily> = specs.iter().map(|s| parse_family(s, n).expect("validated")).collect();
            let cell = format!("m={m},n={n}");
            let c = match job {
                "scan" => timed("fusion-scan", "limit-vs-defining", cell, |c| {
                    let r = conjecture_scan(m, n, kmax, &families)?;
                    let verdicts: Vec<String> = r.families.iter().map(|f| format!("{}: {:?}", f.family.name, f.verdict)).collect();
                    let semi = r.families.iter().flat_map(|f| &f.degrees).all(|d| d.semicontinuity);
                    Ok(c.summary(format!(
                        "{}; family independent {}; semicontinuity {semi}",
                        verdicts.join(", "),
                        r.family_independent
                    ))
                    .values(&r))
                }),
                "inverse" => timed("fusion-scan", "reversed-ideal", cell, |c| {
                    let rs = (0..=kmax).map(|k| inv_check(m, n, k, &families[0])).collect::<prinspace::Result<Vec<_>>>()?;
                    let equal = rs.iter().all(|r| r.equal);
                    let limits = rs.iter().all(|r| r.limits_correspond);
                    let differ: Vec<usize> = rs.iter().filter(|r| !r.equal).map(|r| r.k).collect();
                    Ok(c.summary(format!(
                        "reversed defining ideal = limit kernel ideal: {equal}{}; reversed limit ideal = limit kernel ideal: {limits}",
                        if differ.is_empty() { String::new() } else { format!(" (differs at k = {differ:?})") }
                    ))
                    .values(&rs))
                }),
                _ => timed("fusion-scan", "generic-quotient", cell, |c| {
                    let dims = kernel_quotient_dims(m, n, &generic_point(n))?;
                    let total: usize = dims.iter().sum();
                    let f = fibonacci_m(m, n);
                    Ok(c.summary(format!("quotient dims {dims:?}, total {total}, F = {f}"))
                        .values(&json!({ "dims": dims, "total": total, "fibonacci": f.to_string() })))
                }),
            };
            c.report()
        })
        .collect();
    let p = params(&[
        ("m", a.m.to_string()),
        ("n", a.n.to_string()),
        ("kmax", kmax.to_string()),
        ("families", specs.join(" ")),
    ]);
    Ok(Report::new("fusion-scan", p, seed, checks))
}

// odd-scan

pub fn odd_campaign(a: &OddArgs, seed: u64) -> Result<Report, String> {
    positive(&a.m, "m")?;
    positive(&a.n, "n")?;
    if a.n.max() > 7 {
        return Err("--n is limited to 7".into());
    }
    let cells: Vec<(i64, usize)> =
        a.m.values().iter().flat_map(|&m| a.n.values().iter().map(move |&n| (m, n as usize))).collect();
    let checks = cells
        .par_iter()
        .map(|&(m, n)| {
            timed("odd-scan", "exterior-dimension", format!("m={m},n={n}"), |c| {
                let r = odd_principal_dim(m, n)?;
                Ok(c.summary(format!("dim {}, F = {}, agrees {}", r.dim, r.conjectured, r.agrees)).values(&r))
            })
            .report()
        })
        .collect();
    let p = params(&[("m", a.m.to_string()), ("n", a.n.to_string())]);
    Ok(Report::new("odd-scan", p, seed, checks))
}

