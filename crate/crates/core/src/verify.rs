//! Theorem-verification suites over exhaustive small sweeps.

use crate::catalog::{by_name, catalog, quaternion};
use crate::classify::{
    actions, d8_q_pair, enumerate_mncg, enumerate_mnk, family_iii_units, is_mncg, mncg_family_i, mncg_family_ii,
    mncg_family_iii, mnk_invariant_audit, negation_z4_triple, prime_field_triple, triples_isomorphic, Bounds,
    ClassificationRun, Filter,
};
use crate::cocycle::{cocycle_search, Cocycle, Triple};
use crate::connexion::{augmentation_check, composition_check, dual_module, pairing_check, verify_cogalois_connexion};
use crate::error::{Error, Result};
use crate::group::{factorize, find_isomorphism, is_prime, FiniteGroup};
use crate::kneser::{classify_ideals, is_cogalois_triple, is_surjective_multi, pronil_criterion};
use crate::operator::GammaGroup;
use crate::report::Report;
use crate::rings::{
    build_local_ring, eta_param_kernel, field_triple, principal_unit_triples, quadratic_family, EisensteinData,
    LocalKind, ParamModel, MnkRingCase, RingClass,
};
use crate::selfaction::{adequate_units, adequate_units_brute, adequate_units_criterion, deform, deformation_classes, SelfAction, UnitMethod};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

pub const SUITES: [&str; 13] = [
    "connexion-laws",
    "pairing",
    "composition",
    "augmentation",
    "adequate-units",
    "pronil",
    "ab1",
    "ab2",
    "character",
    "mncg",
    "d8q",
    "selfact-8",
    "quad-family",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub workers: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { workers: 1, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub passed: bool,
    pub report: Report,
    pub notes: Vec<String>,
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| Error::BadParameters(e.to_string()))
}

/// Inconsistent verdicts become violations; anything else aborts.
fn absorb(r: &mut Report, res: Result<Report>) -> Result<()> {
    match res {
        Ok(x) => r.merge(x),
        Err(Error::Inconsistent(s)) => r.fail(s),
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Runs `f` on every (Γ, 𝔊, action, cocycle) over the given group lists, in parallel over pairs.
fn sweep<F>(gammas: &[Arc<FiniteGroup>], gs: &[Arc<FiniteGroup>], workers: usize, f: F) -> Result<Vec<Report>>
where
    F: Fn(&Triple) -> Result<Vec<Report>> + Sync,
{
    let pairs: Vec<(&Arc<FiniteGroup>, &Arc<FiniteGroup>)> = gammas.iter().flat_map(|a| gs.iter().map(move |b| (a, b))).collect();
    let bounds = Bounds::new(24, 24);
    let per_pair: Vec<Result<Vec<Report>>> = pool(workers)?.install(|| {
        pairs
            .par_iter()
            .map(|(a, b)| {
                let mut acc: Vec<Report> = Vec::new();
                for gg in actions(a, b, Filter::All, &bounds)? {
                    let mut err = None;
                    cocycle_search(&gg, &mut |v| {
                        let t = Triple::new_unchecked(gg.clone(), Cocycle { values: v.to_vec() });
                        match f(&t) {
                            Ok(rs) => {
                                acc.resize(acc.len().max(rs.len()), Report::new());
                                for (slot, r) in acc.iter_mut().zip(rs) {
                                    slot.merge(r);
                                }
                                true
                            }
                            Err(e) => {
                                err = Some(e);
                                false
                            }
                        }
                    });
                    if let Some(e) = err {
                        return Err(e);
                    }
                }
                Ok(acc)
            })
            .collect()
    });
    let mut out: Vec<Report> = Vec::new();
    for rs in per_pair {
        let rs = rs?;
        out.resize(out.len().max(rs.len()), Report::new());
        for (slot, r) in out.iter_mut().zip(rs) {
            slot.merge(r);
        }
    }
    Ok(out.into_iter().map(Report::finish).collect())
}

fn small(max: usize) -> Vec<Arc<FiniteGroup>> {
    catalog().iter().filter(|g| g.order() <= max).cloned().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnexionSweep {
    pub triples: usize,
    /// J/S laws; J∘S = id on Kneser triples
    pub laws: Report,
    /// omitting criteria vs direct Kneser/coGalois verdicts
    pub criteria: Report,
    /// surjectivity witnesses and (Γ:Δ) = |𝔊|
    pub surjectivity: Report,
}

/// All generating triples with |Γ|, |𝔊| ≤ max over the catalog and all actions.
pub fn connexion_sweep(max: usize, workers: usize) -> Result<ConnexionSweep> {
    let groups = small(max);
    let rs = sweep(&groups, &groups, workers, |t| {
        if !t.generating {
            return Ok(vec![]);
        }
        let mut count = Report::new();
        count.check(true, String::new);
        let mut laws = Report::new();
        absorb(&mut laws, verify_cogalois_connexion(t))?;
        let mut criteria = Report::new();
        absorb(&mut criteria, classify_ideals(t).map(|c| c.check()))?;
        absorb(&mut criteria, is_cogalois_triple(t).map(|_| Report::new()))?;
        let mut surj = Report::new();
        let multi = is_surjective_multi(t).map(|k| {
            let mut r = Report::new();
            if k.surjective {
                r.check(k.index == t.g().order(), || format!("(Γ:Δ) = {} ≠ |𝔊| = {}", k.index, t.g().order()));
            }
            r
        });
        absorb(&mut surj, multi)?;
        Ok(vec![count, laws, criteria, surj])
    })?;
    let mut it = rs.into_iter();
    let mut next = || it.next().unwrap_or_default();
    Ok(ConnexionSweep { triples: next().checked, laws: next(), criteria: next(), surjectivity: next() })
}

/// p-primary criterion on every triple with nilpotent, non-primary 𝔊 of order ≤ 24 and |Γ| ≤ max_gamma.
pub fn pronil_sweep(max_gamma: usize, workers: usize) -> Result<(usize, Report)> {
    let gs: Vec<Arc<FiniteGroup>> = catalog()
        .iter()
        .filter(|g| g.order() <= 24 && factorize(g.order()).len() > 1 && g.is_nilpotent())
        .cloned()
        .collect();
    let rs = sweep(&small(max_gamma), &gs, workers, |t| {
        let mut r = Report::new();
        absorb(&mut r, pronil_criterion(t).map(|_| Report::new()))?;
        if r.checked == 0 {
            r.check(true, String::new);
        }
        Ok(vec![r])
    })?;
    let r = rs.into_iter().next().unwrap_or_default();
    Ok((r.checked, r))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleSweep {
    pub modules: usize,
    pub pairing: Report,
    pub composition: Report,
    pub equivariance: Report,
    pub augmentation: Report,
    /// modules over elementary abelian A, where the F_p[Γ] model applies
    pub augmentation_modules: usize,
}

/// Every Γ of order ≤ max_gamma and abelian A of order ≤ max_a, all actions.
pub fn module_sweep(max_gamma: usize, max_a: usize, workers: usize) -> Result<ModuleSweep> {
    let gammas = small(max_gamma);
    let mods: Vec<Arc<FiniteGroup>> = catalog().iter().filter(|g| g.order() <= max_a && g.is_abelian()).cloned().collect();
    let bounds = Bounds::new(24, 24);
    let mut ggs: Vec<Arc<GammaGroup>> = Vec::new();
    for a in &gammas {
        for m in &mods {
            ggs.extend(actions(a, m, Filter::All, &bounds)?);
        }
    }
    let per: Vec<Result<[Report; 5]>> = pool(workers)?.install(|| {
        ggs.par_iter()
            .map(|gg| {
                let mut out: [Report; 5] = Default::default();
                let d = dual_module(gg.clone())?;
                absorb(&mut out[0], pairing_check(&d))?;
                absorb(&mut out[1], composition_check(&d))?;
                out[2].merge(d.z1.check_action());
                out[2].merge(d.structure_check());
                let g = gg.g();
                if g.order() > 1 && factorize(g.exponent()).len() == 1 && is_prime(g.exponent()) {
                    absorb(&mut out[3], augmentation_check(gg, g.exponent()))?;
                    out[4].check(true, String::new);
                }
                Ok(out)
            })
            .collect()
    });
    let mut acc: [Report; 5] = Default::default();
    for r in per {
        for (slot, x) in acc.iter_mut().zip(r?) {
            slot.merge(x);
        }
    }
    let [pairing, composition, equivariance, augmentation, aug_count] = acc;
    Ok(ModuleSweep {
        modules: ggs.len(),
        pairing: pairing.finish(),
        composition: composition.finish(),
        equivariance: equivariance.finish(),
        augmentation: augmentation.finish(),
        augmentation_modules: aug_count.checked,
    })
}

/// Criterion and gcd-power law agree for 2 ≤ n ≤ max; U_4 and U_8 exactly.
pub fn adequate_units_suite(max: usize) -> Result<Report> {
    let mut r = Report::new();
    for n in 2..=max {
        let (b, c) = (adequate_units_brute(n), adequate_units_criterion(n));
        r.check(b == c, || format!("n={n}: brute {b:?} vs criterion {c:?}"));
        if n <= crate::selfaction::ADEQUACY_CROSSCHECK_LIMIT {
            absorb(&mut r, adequate_units(n, UnitMethod::Both).map(|_| Report::new()))?;
        }
    }
    r.check(adequate_units(4, UnitMethod::Both)? == [1, 3], || "U_4^ad ≠ {1,3}".into());
    r.check(adequate_units(8, UnitMethod::Both)? == [1, 3, 5, 7], || "U_8^ad ≠ {1,3,5,7}".into());
    Ok(r.finish())
}

fn names(gamma: &Arc<FiniteGroup>) -> Result<Vec<String>> {
    let mut v: Vec<String> =
        deformation_classes(gamma)?.into_iter().map(|c| c.name.unwrap_or_else(|| "?".into())).collect();
    v.sort();
    Ok(v)
}

/// Deformation classes of Z/4 and Z/8, and the connexion types of the Z/8 deformations.
pub fn selfact_suite() -> Result<Report> {
    let mut r = Report::new();
    let z4 = names(&Arc::new(crate::group::cyclic(4)))?;
    r.check(z4 == ["V4", "Z4"], || format!("Z/4 classes {z4:?}"));
    let z8 = names(&Arc::new(crate::group::cyclic(8)))?;
    r.check(z8 == ["D8", "Q8", "Z8"], || format!("Z/8 classes {z8:?}"));
    let d8 = by_name("D8").ok_or_else(|| Error::Inconsistent("D8 missing".into()))?;
    for (u, target) in [(7, d8.as_ref().clone()), (3, quaternion())] {
        let d = deform(&SelfAction::cyclic_unit(8, u)?)?;
        r.check(find_isomorphism(&d.bullet, &target).is_some(), || format!("Γ_{u} has the wrong type"));
        r.merge(d.check());
        let f = is_cogalois_triple(&d.forward)?;
        r.check(f.cogalois, || format!("(Γ, Γ_{u}, η) is not coGalois"));
        let b = is_cogalois_triple(&d.backward)?;
        r.check(d.backward.is_surjective() && !b.cogalois, || format!("(Γ_{u}, Γ, η⁻¹) is not Kneser-not-coGalois"));
    }
    Ok(r.finish())
}

#[derive(Clone, Debug, Serialize)]
pub struct D8qOutcome {
    pub bijective: bool,
    pub inverse_is_cocycle: bool,
    pub forward_mncg: bool,
    pub backward_mncg: bool,
    pub backward_cogalois: bool,
}

pub fn d8q_check() -> Result<D8qOutcome> {
    let (fwd, back) = d8_q_pair()?;
    Ok(D8qOutcome {
        bijective: fwd.is_injective() && fwd.is_surjective(),
        inverse_is_cocycle: back.is_surjective() && back.is_injective(),
        forward_mncg: is_mncg(&fwd)?.mncg,
        backward_mncg: is_mncg(&back)?.mncg,
        backward_cogalois: is_cogalois_triple(&back)?.cogalois,
    })
}

fn d8q_suite() -> Result<Report> {
    let o = d8q_check()?;
    let mut r = Report::new();
    r.check(o.bijective, || "η not bijective".into());
    r.check(o.inverse_is_cocycle, || "η⁻¹ is not a cocycle".into());
    r.check(o.forward_mncg, || "(D8, Q, η) is not mncG".into());
    r.check(o.backward_mncg, || format!("(Q, D8, η⁻¹) is not mncG (coGalois: {})", o.backward_cogalois));
    Ok(r)
}

/// Field triples for prime fields and extension fields; each must be mnK and pass the audit.
pub fn ab1_suite() -> Result<(Vec<Triple>, Report)> {
    let mut r = Report::new();
    let mut found = Vec::new();
    for p in [3, 5, 7, 11, 13] {
        for rr in (2..p).filter(|d| (p - 1) % d == 0) {
            let t = field_triple(p, rr)?;
            let q = prime_field_triple(p, rr)?;
            r.check(triples_isomorphic(&t, &q)?, || format!("F_{p} builders disagree at r={rr}"));
            found.push(t);
        }
    }
    for (p, rr) in [(2, 3), (2, 5), (2, 7), (2, 15), (3, 4), (3, 5), (3, 8), (5, 3), (5, 6), (7, 4)] {
        found.push(field_triple(p, rr)?);
    }
    absorb(&mut r, mnk_invariant_audit(found.iter()))?;
    Ok((found, r.finish()))
}

/// Principal rings within bounds: mnK exists iff one of the three cases applies; redundancy and duality.
pub fn ab2_suite() -> Result<(Vec<Triple>, Report)> {
    let mut r = Report::new();
    let mut found = Vec::new();
    let mut data: Vec<EisensteinData> = Vec::new();
    for (p, m) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)] {
        data.push(EisensteinData::truncated_polynomial(p, m));
    }
    for (p, n, e, t, a) in [
        (2, 2, 1, 1, vec![1]),
        (2, 3, 1, 1, vec![1]),
        (3, 2, 1, 1, vec![1]),
        (5, 2, 1, 1, vec![1]),
        (2, 2, 2, 1, vec![1, 0]),
        (2, 2, 2, 2, vec![1, 0]),
        (2, 2, 2, 2, vec![1, 1]),
        (2, 2, 3, 1, vec![1, 0, 0]),
        (2, 2, 3, 2, vec![1, 0, 0]),
        (3, 2, 2, 1, vec![1, 0]),
    ] {
        data.push(EisensteinData::new(p, n, e, t, a)?);
    }
    for d in &data {
        let ring = build_local_ring(d)?;
        let u = principal_unit_triples(&ring)?;
        let RingClass::Principal { case, .. } = u.class.clone() else {
            r.fail(format!("{d:?} is not principal"));
            continue;
        };
        let tag = format!("{d:?} ({})", u.class);
        r.check(case.is_some() == (u.mnk_count() > 0), || format!("{tag}: {} mnK cocycles", u.mnk_count()));
        if u.mnk_count() > 0 {
            r.check(u.mnk_classes() == 1, || format!("{tag}: {} redundancy classes hold mnK", u.mnk_classes()));
            r.check(u.predicted_mnk_count == Some(u.mnk_count()), || {
                format!("{tag}: {} mnK vs predicted {:?}", u.mnk_count(), u.predicted_mnk_count)
            });
            r.check(u.pairing_nondegenerate, || format!("{tag}: R^+ ≇ R^∨"));
            for t in u.mnk_triples() {
                r.check(t.g().order() == ring.len(), || format!("{tag}: |𝔊| ≠ |R|"));
            }
            if let Some(c) = &u.theta_canonical {
                let first = u.mnk_triples().next().map(|t| t.eta.clone());
                let same = first.is_some_and(|f| u.class_of(c).is_some() && u.class_of(c) == u.class_of(&f));
                r.check(same, || format!("{tag}: canonical cocycle outside the mnK redundancy class"));
            }
            found.extend(u.mnk_triples().cloned());
        }
        if matches!(case, Some(MnkRingCase::II)) && ring.len() == 4 {
            let remark = negation_z4_triple();
            for t in u.mnk_triples() {
                r.check(triples_isomorphic(t, &remark)?, || "Z/4 triple differs from the negation triple".into());
            }
        }
    }
    for (kind, n, m) in [
        (LocalKind::Equal { p: 2 }, 1, 2),
        (LocalKind::Equal { p: 2 }, 1, 3),
        (LocalKind::Equal { p: 2 }, 2, 3),
        (LocalKind::Equal { p: 3 }, 1, 2),
        (LocalKind::Mixed { p: 2, e: 1, a: vec![1] }, 1, 3),
        (LocalKind::Mixed { p: 2, e: 1, a: vec![1] }, 2, 4),
        (LocalKind::Mixed { p: 3, e: 1, a: vec![1] }, 1, 2),
        (LocalKind::Mixed { p: 2, e: 2, a: vec![1, 0] }, 1, 3),
    ] {
        let model = ParamModel::new(&kind, n, m)?;
        for alpha in model.alphas() {
            for a in 0..model.g().order() {
                let c = eta_param_kernel(&model, a, &alpha)?;
                r.check(c.holds(), || format!("{kind:?} n={n} m={m} a={a}: {c:?}"));
            }
        }
    }
    absorb(&mut r, mnk_invariant_audit(found.iter()))?;
    Ok((found, r.finish()))
}

/// Expected character-filter mnK list: (Z/2, Z/4) and (Z/r, F_p) for p ≤ 13, r | p − 1.
pub fn character_expected(max: usize) -> Result<Vec<Triple>> {
    let mut v = vec![negation_z4_triple()];
    for p in (3..=max).filter(|&p| is_prime(p)) {
        for r in (2..p).filter(|r| (p - 1) % r == 0) {
            v.push(prime_field_triple(p, r)?);
        }
    }
    Ok(v)
}

/// Each expected triple matches exactly one class and every class is expected.
fn match_classes(run: &ClassificationRun, expected: &[Triple], r: &mut Report) -> Result<()> {
    r.check(run.classes.len() == expected.len(), || format!("{} classes, expected {}", run.classes.len(), expected.len()));
    for (i, e) in expected.iter().enumerate() {
        let hits = run.classes.iter().filter(|c| triples_isomorphic(&c.rep, e).unwrap_or(false)).count();
        r.check(hits == 1, || format!("expected #{i} (|Γ|={}, |𝔊|={}) matched {hits} classes", e.gamma().order(), e.g().order()));
    }
    for c in &run.classes {
        let ok = expected.iter().any(|e| triples_isomorphic(&c.rep, e).unwrap_or(false));
        r.check(ok, || format!("unexpected class (|Γ|={}, |𝔊|={})", c.rep.gamma().order(), c.rep.g().order()));
    }
    r.merge(run.report.clone());
    Ok(())
}

pub fn character_suite(workers: usize) -> Result<(ClassificationRun, Report)> {
    let run = enumerate_mnk(&Bounds::new(16, 16), Filter::Character, workers)?;
    let mut r = Report::new();
    match_classes(&run, &character_expected(16)?, &mut r)?;
    absorb(&mut r, mnk_invariant_audit(run.triples()))?;
    Ok((run, r.finish()))
}

/// Families (i), (ii), (iii) with |Γ| ≤ 16 and exponent ≤ 15.
pub fn mncg_expected() -> Result<Vec<Triple>> {
    let mut v = vec![mncg_family_i(), mncg_family_ii()?];
    for (p, r) in [(3, 2), (5, 2), (7, 2), (7, 3), (5, 4), (13, 2)] {
        if p * r > 15 {
            continue;
        }
        if let Some(&u) = family_iii_units(p, r).first() {
            v.push(mncg_family_iii(p, r, u)?);
        }
    }
    Ok(v)
}

pub fn mncg_suite(workers: usize) -> Result<(ClassificationRun, Report)> {
    let bounds = Bounds { max_exponent: Some(15), ..Bounds::new(16, 16) };
    let run = enumerate_mncg(&bounds, Filter::Character, workers)?;
    let mut r = Report::new();
    match_classes(&run, &mncg_expected()?, &mut r)?;
    for (p, rr) in [(3, 2), (5, 2), (7, 2)] {
        let us = family_iii_units(p, rr);
        let reps: Vec<Triple> = us.iter().map(|&u| mncg_family_iii(p, rr, u)).collect::<Result<_>>()?;
        for t in &reps[1..] {
            r.check(triples_isomorphic(&reps[0], t)?, || format!("family (iii) ({p},{rr}) splits over u"));
        }
    }
    Ok((run, r.finish()))
}

fn sym_from(p: usize, s: usize, code: usize) -> Vec<Vec<usize>> {
    let mut m = vec![vec![0; s]; s];
    let mut c = code;
    for i in 0..s {
        for j in i..s {
            m[i][j] = c % p;
            m[j][i] = c % p;
            c /= p;
        }
    }
    m
}

/// Iso classes among the given triples by pairwise search against representatives.
fn bucket(ts: &[Triple]) -> Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    for (i, t) in ts.iter().enumerate() {
        let mut hit = false;
        for &k in &reps {
            if triples_isomorphic(&ts[k], t)? {
                hit = true;
                break;
            }
        }
        if !hit {
            reps.push(i);
        }
    }
    Ok(reps)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadOutcome {
    pub s2_inputs: usize,
    pub s2_classes: usize,
    pub s3_inputs: usize,
    pub s3_classes: usize,
    #[serde(skip)]
    pub mnk: Vec<Triple>,
}

/// p = 3: s = 2 exhaustive over (Λ, λ0); s = 3 over `samples` seeded Λ plus every singular Λ.
pub fn quad_suite(seed: u64, samples: usize) -> Result<(QuadOutcome, Report)> {
    let p = 3;
    let mut r = Report::new();
    let mut s2 = Vec::new();
    let mut s2_inputs = 0;
    for code in 0..27 {
        let lam = sym_from(p, 2, code);
        for l0 in 0..9 {
            let v = quadratic_family(p, 2, &[l0 % 3, l0 / 3], &lam)?;
            s2_inputs += 1;
            r.check(v.agree(), || format!("s=2 Λ={lam:?} λ0={l0}: mnK {} vs det {}", v.mnk, v.det));
            if v.mnk {
                s2.push(v);
            }
        }
    }
    let ts: Vec<Triple> = s2.iter().map(|v| v.triple.clone()).collect();
    let reps = bucket(&ts)?;
    for v in &s2 {
        let cls: Vec<bool> = reps.iter().map(|&k| triples_isomorphic(&ts[k], &v.triple).unwrap_or(false)).collect();
        let owner = cls.iter().position(|&b| b).map(|i| s2[reps[i]].square_discriminant);
        r.check(owner == Some(v.square_discriminant), || "s=2 class is not the square class of det Λ".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inputs: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
    for _ in 0..samples {
        let lam = sym_from(p, 3, rng.gen_range(0..729));
        inputs.push(((0..3).map(|_| rng.gen_range(0..p)).collect(), lam));
    }
    for code in 0..729 {
        let lam = sym_from(p, 3, code);
        if crate::rings::det_mod_p(&lam, p) == 0 {
            inputs.push(((0..3).map(|_| rng.gen_range(0..p)).collect(), lam));
        }
    }
    let mut s3 = Vec::new();
    for (l0, lam) in &inputs {
        let v = quadratic_family(p, 3, l0, lam)?;
        r.check(v.agree(), || format!("s=3 Λ={lam:?}: mnK {} vs det {}", v.mnk, v.det));
        if v.mnk {
            s3.push(v.triple);
        }
    }
    let reps3 = bucket(&s3)?;
    r.check(reps.len() == 2, || format!("s=2: {} iso classes", reps.len()));
    r.check(reps3.len() == 1, || format!("s=3: {} iso classes", reps3.len()));
    let mut mnk: Vec<Triple> = reps.iter().map(|&k| ts[k].clone()).collect();
    mnk.extend(reps3.iter().map(|&k| s3[k].clone()));
    let all: Vec<&Triple> = ts.iter().chain(s3.iter()).collect();
    absorb(&mut r, mnk_invariant_audit(all))?;
    let out = QuadOutcome { s2_inputs, s2_classes: reps.len(), s3_inputs: inputs.len(), s3_classes: reps3.len(), mnk };
    Ok((out, r.finish()))
}

pub fn run_suite(id: &str, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut notes = Vec::new();
    let report = match id {
        "connexion-laws" => {
            let s = connexion_sweep(8, cfg.workers)?;
            notes.push(format!("{} generating triples", s.triples));
            let mut r = s.laws;
            r.merge(s.criteria);
            r.merge(s.surjectivity);
            r
        }
        "pairing" | "composition" | "augmentation" => {
            let s = module_sweep(8, 9, cfg.workers)?;
            notes.push(format!("{} modules, {} over elementary abelian A", s.modules, s.augmentation_modules));
            match id {
                "pairing" => {
                    let mut r = s.pairing;
                    r.merge(s.equivariance);
                    r
                }
                "composition" => s.composition,
                _ => s.augmentation,
            }
        }
        "adequate-units" => adequate_units_suite(500)?,
        "pronil" => {
            let (n, r) = pronil_sweep(8, cfg.workers)?;
            notes.push(format!("{n} triples"));
            r
        }
        "ab1" => ab1_suite()?.1,
        "ab2" => ab2_suite()?.1,
        "character" => {
            let (run, r) = character_suite(cfg.workers)?;
            notes.push(format!("{} classes: {:?}", run.classes.len(), run.shapes()));
            r
        }
        "mncg" => {
            let (run, r) = mncg_suite(cfg.workers)?;
            notes.push(format!("{} classes: {:?}", run.classes.len(), run.shapes()));
            r
        }
        "d8q" => d8q_suite()?,
        "selfact-8" => selfact_suite()?,
        "quad-family" => {
            let (o, r) = quad_suite(cfg.seed, 200)?;
            notes.push(format!("s=2: {} inputs, {} classes; s=3: {} inputs, {} classes", o.s2_inputs, o.s2_classes, o.s3_inputs, o.s3_classes));
            r
        }
        other => return Err(Error::Parse(format!("unknown suite {other}"))),
    };
    Ok(SuiteOutcome { suite: id.to_string(), passed: report.passed(), report, notes })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealFlags {
    pub members: Vec<usize>,
    pub kneser: bool,
    pub cogalois: bool,
}

/// The `check` report of a single triple.
#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub gamma_order: usize,
    pub g_order: usize,
    pub generating: bool,
    pub normalized: bool,
    pub kneser: bool,
    pub cogalois: Option<bool>,
    pub ideals: Vec<IdealFlags>,
    pub nk_max: Vec<Vec<usize>>,
    pub ncg_max: Vec<Vec<usize>>,
    pub mnk: Option<bool>,
    pub mncg: Option<bool>,
    pub violations: Vec<String>,
}

pub fn triple_report(t: &Triple) -> Result<TripleReport> {
    let mut rep = TripleReport {
        gamma_order: t.gamma().order(),
        g_order: t.g().order(),
        generating: t.generating,
        normalized: t.is_normalized(),
        kneser: t.is_surjective(),
        cogalois: None,
        ideals: Vec::new(),
        nk_max: Vec::new(),
        ncg_max: Vec::new(),
        mnk: None,
        mncg: None,
        violations: Vec::new(),
    };
    rep.cogalois = Some(is_cogalois_triple(t)?.cogalois);
    if t.generating {
        let c = classify_ideals(t)?;
        rep.ideals = (0..c.ideals.len())
            .map(|i| IdealFlags { members: c.ideals.nodes[i].to_vec(), kneser: c.kneser[i], cogalois: c.cogalois[i] })
            .collect();
        rep.nk_max = c.nk_max.iter().map(|&i| c.ideals.nodes[i].to_vec()).collect();
        rep.ncg_max = c.ncg_max.iter().map(|&i| c.ideals.nodes[i].to_vec()).collect();
        rep.violations = c.check().violations;
        rep.mnk = Some(crate::classify::is_mnk(t)?.mnk);
    }
    if t.is_surjective() {
        rep.mncg = Some(is_mncg(t)?.mncg);
    }
    Ok(rep)
}
