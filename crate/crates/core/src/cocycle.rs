//! 1-cocycles η: Γ → 𝔊 with η(στ) = η(σ)·σ(η(τ)), and the triples they define.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMorphism, DEFAULT_ORDER_BOUND};
use crate::operator::{quotient_gamma, semidirect, GammaGroup, GammaGroupJson, Ideal, SemidirectData};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cocycle {
    pub values: Vec<u32>,
}

impl Cocycle {
    #[inline]
    pub fn at(&self, gamma: usize) -> usize {
        self.values[gamma] as usize
    }

    pub fn trivial(gamma_order: usize) -> Self {
        Cocycle { values: vec![0; gamma_order] }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.values.iter().map(|&v| v as usize).collect()
    }
}

pub fn check_cocycle_law(gg: &GammaGroup, values: &[usize]) -> Result<()> {
    let (gamma, g) = (gg.gamma(), gg.g());
    if values.len() != gamma.order() {
        return Err(Error::BadLength { expected: gamma.order(), got: values.len() });
    }
    if let Some(i) = values.iter().position(|&v| v >= g.order()) {
        return Err(Error::CocycleLawViolated(i, i));
    }
    for s in 0..gamma.order() {
        for t in 0..gamma.order() {
            if values[gamma.mul(s, t)] != g.mul(values[s], gg.act(s, values[t])) {
                return Err(Error::CocycleLawViolated(s, t));
            }
        }
    }
    Ok(())
}

/// Validated cocycle; also asserts η(1) = 1 and η(γ⁻¹) = γ⁻¹η(γ)⁻¹.
pub fn make_cocycle(gg: &GammaGroup, values: &[usize]) -> Result<Cocycle> {
    check_cocycle_law(gg, values)?;
    let (gamma, g) = (gg.gamma(), gg.g());
    if values[0] != 0 {
        return Err(Error::Inconsistent("η(1) ≠ 1".into()));
    }
    for c in 0..gamma.order() {
        let ci = gamma.inv(c);
        if values[ci] != gg.act(ci, g.inv(values[c])) {
            return Err(Error::Inconsistent(format!("η(γ⁻¹) identity fails at {c}")));
        }
    }
    Ok(Cocycle { values: values.iter().map(|&v| v as u32).collect() })
}

const UNSET: u32 = u32::MAX;

fn propagate(gg: &GammaGroup, gens: &[usize], vals: &[usize], eta: &mut Vec<u32>) -> bool {
    let (gamma, g) = (gg.gamma(), gg.g());
    eta.clear();
    eta.resize(gamma.order(), UNSET);
    eta[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let ex = eta[x] as usize;
        for (k, &s) in gens.iter().enumerate() {
            let z = gamma.mul(x, s);
            let w = g.mul(ex, gg.act(x, vals[k])) as u32;
            if eta[z] == UNSET {
                eta[z] = w;
                queue.push_back(z);
            } else if eta[z] != w {
                return false;
            }
        }
    }
    true
}

/// Backtracking over values at the generators of Γ; `visit` returns false to stop.
pub fn cocycle_search(gg: &GammaGroup, visit: &mut dyn FnMut(&[u32]) -> bool) {
    let gens = gg.gamma().generators().to_vec();
    let mut vals = Vec::with_capacity(gens.len());
    let mut scratch = Vec::new();
    search_rec(gg, &gens, &mut vals, &mut scratch, visit);
}

fn search_rec(
    gg: &GammaGroup,
    gens: &[usize],
    vals: &mut Vec<usize>,
    scratch: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    let k = vals.len();
    if k == gens.len() {
        propagate(gg, gens, vals, scratch);
        return visit(scratch);
    }
    for y in 0..gg.g().order() {
        vals.push(y);
        if propagate(gg, &gens[..=k], vals, scratch) && !search_rec(gg, gens, vals, scratch, visit) {
            vals.pop();
            return false;
        }
        vals.pop();
    }
    true
}

/// All of Z¹(Γ, 𝔊), sorted lexicographically on value arrays.
pub fn enumerate_cocycles(gg: &GammaGroup) -> Result<Vec<Cocycle>> {
    for o in [gg.gamma().order(), gg.g().order()] {
        if o > DEFAULT_ORDER_BOUND {
            return Err(Error::OrderBoundExceeded { order: o, bound: DEFAULT_ORDER_BOUND });
        }
    }
    let mut out = Vec::new();
    cocycle_search(gg, &mut |v| {
        out.push(Cocycle { values: v.to_vec() });
        true
    });
    out.sort();
    Ok(out)
}

/// Cocycle determined by its values at chosen elements of Γ.
pub fn cocycle_from_generators(gg: &GammaGroup, images: &[(usize, usize)]) -> Result<Cocycle> {
    let gens: Vec<usize> = images.iter().map(|p| p.0).collect();
    let vals: Vec<usize> = images.iter().map(|p| p.1).collect();
    let mut eta = Vec::new();
    if !propagate(gg, &gens, &vals, &mut eta) || eta.contains(&UNSET) {
        return Err(Error::CocycleLawViolated(gens.first().copied().unwrap_or(0), 0));
    }
    make_cocycle(gg, &eta.iter().map(|&v| v as usize).collect::<Vec<_>>())
}

/// A triple (Γ, 𝔊, η) with its kernel data cached.
#[derive(Clone, Debug)]
pub struct Triple {
    pub gg: Arc<GammaGroup>,
    pub eta: Cocycle,
    pub delta: ElemSet,
    pub delta_tilde: ElemSet,
    pub image: ElemSet,
    pub generating: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleJson {
    pub gamma_group: GammaGroupJson,
    pub cocycle: Vec<usize>,
}

impl Triple {
    /// Caller guarantees the cocycle law.
    pub fn new_unchecked(gg: Arc<GammaGroup>, eta: Cocycle) -> Self {
        let (m, n) = (gg.gamma().order(), gg.g().order());
        let delta = ElemSet::from_iter(m, (0..m).filter(|&c| eta.at(c) == 0));
        let delta_tilde = delta.intersection(&gg.fix);
        let image = ElemSet::from_iter(n, eta.values.iter().map(|&v| v as usize));
        let generating = image.len() == n || gg.g().closure(&image.to_vec()).len() == n;
        Triple { gg, eta, delta, delta_tilde, image, generating }
    }

    pub fn new(gg: Arc<GammaGroup>, values: &[usize]) -> Result<Self> {
        let eta = make_cocycle(&gg, values)?;
        Ok(Self::new_unchecked(gg, eta))
    }

    pub fn from_json(j: &TripleJson) -> Result<Self> {
        let gg = Arc::new(GammaGroup::from_json(&j.gamma_group)?);
        Self::new(gg, &j.cocycle)
    }

    pub fn to_json(&self) -> TripleJson {
        TripleJson { gamma_group: self.gg.to_json(), cocycle: self.eta.to_vec() }
    }

    #[inline]
    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        self.gg.gamma()
    }

    #[inline]
    pub fn g(&self) -> &Arc<FiniteGroup> {
        self.gg.g()
    }

    #[inline]
    pub fn eta(&self, c: usize) -> usize {
        self.eta.at(c)
    }

    pub fn fix(&self) -> &ElemSet {
        &self.gg.fix
    }

    pub fn is_surjective(&self) -> bool {
        self.image.len() == self.g().order()
    }

    pub fn is_injective(&self) -> bool {
        self.delta.len() == 1
    }

    pub fn is_normalized(&self) -> bool {
        self.delta_tilde.len() == 1
    }

    /// η(Λ)
    pub fn image_of(&self, lam: &ElemSet) -> ElemSet {
        ElemSet::from_iter(self.g().order(), lam.iter().map(|c| self.eta(c)))
    }

    /// η⁻¹(a)
    pub fn preimage(&self, a: &ElemSet) -> ElemSet {
        let m = self.gamma().order();
        ElemSet::from_iter(m, (0..m).filter(|&c| a.contains(self.eta(c))))
    }

    /// ∩_γ γΔγ⁻¹
    pub fn core_of_kernel(&self) -> ElemSet {
        let gamma = self.gamma();
        ElemSet::from_iter(
            gamma.order(),
            self.delta.iter().filter(|&x| (0..gamma.order()).all(|c| self.delta.contains(gamma.conj(c, x)))),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelInvariants {
    pub delta: ElemSet,
    pub delta_prime: ElemSet,
    pub delta_second: ElemSet,
    pub delta_bar: ElemSet,
    pub delta_tilde: ElemSet,
}

fn ensure(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistent(what.to_string()))
    }
}

/// Δ, Δ′, Δ″, Δ̄, Δ̃ with the structural identities among them checked.
pub fn kernel_invariants(t: &Triple) -> Result<KernelInvariants> {
    let (gamma, g) = (t.gamma(), t.g());
    let m = gamma.order();
    let delta_second = ElemSet::from_iter(
        m,
        (0..m).filter(|&s| (0..m).all(|c| t.gg.act(c, t.eta(s)) == t.eta(gamma.conj(c, s)))),
    );
    ensure(gamma.is_subgroup(&delta_second) && gamma.is_normal(&delta_second), "Δ″ normal subgroup")?;
    if g.is_abelian() {
        ensure(t.fix().is_subset(&delta_second), "Δ′ ⊆ Δ″ for abelian 𝔊")?;
    }
    let delta_bar = t.fix().intersection(&delta_second);
    ensure(gamma.is_normal(&delta_bar), "Δ̄ normal")?;
    let img = t.image_of(&delta_bar);
    let center = g.center();
    ensure(img.is_subset(&center), "η(Δ̄) central")?;
    ensure(t.gg.is_ideal(&img), "η(Δ̄) ideal")?;
    ensure(t.gg.ideal_closure(&img) == img, "J(Δ̄) = η(Δ̄)")?;
    ensure(delta_bar == t.fix().intersection(&t.preimage(&center)), "Δ̄ = Δ′ ∩ S(C(𝔊))")?;
    ensure(t.delta_tilde.is_subset(&delta_bar), "Δ̃ ⊆ Δ̄")?;
    for x in delta_bar.iter() {
        for y in delta_bar.iter() {
            ensure(t.eta(gamma.mul(x, y)) == g.mul(t.eta(x), t.eta(y)), "η|Δ̄ homomorphism")?;
        }
    }
    ensure(delta_bar.len() == t.delta_tilde.len() * img.len(), "Δ̄/Δ̃ ≅ η(Δ̄)")?;
    if t.generating {
        ensure(t.delta_tilde == t.core_of_kernel(), "Δ ∩ Δ′ = ∩ γΔγ⁻¹")?;
    }
    Ok(KernelInvariants {
        delta: t.delta.clone(),
        delta_prime: t.fix().clone(),
        delta_second,
        delta_bar,
        delta_tilde: t.delta_tilde.clone(),
    })
}

/// Replace Γ by Γ/Δ̃.
pub fn normalize(t: &Triple) -> Triple {
    let gamma = t.gamma();
    let (q, _) = gamma.quotient(&t.delta_tilde).expect("Δ̃ is normal");
    let (_, reps) = gamma.coset_labels(&t.delta_tilde);
    let q = Arc::new(q);
    let gg = GammaGroup::from_fn_unchecked(q, t.g().clone(), |k, x| t.gg.act(reps[k], x));
    let eta = Cocycle { values: reps.iter().map(|&r| t.eta.values[r]).collect() };
    Triple::new_unchecked(Arc::new(gg), eta)
}

/// η_a : Γ → 𝔊/a.
pub fn induced_cocycle(t: &Triple, a: &Ideal) -> Result<Triple> {
    let (qg, proj) = quotient_gamma(&t.gg, a)?;
    let eta = Cocycle { values: t.eta.values.iter().map(|&v| proj.map[v as usize] as u32).collect() };
    Ok(Triple::new_unchecked(Arc::new(qg), eta))
}

/// γ ↦ γg − g.
pub fn coboundary(gg: &GammaGroup, g: usize) -> Result<Cocycle> {
    if !gg.g().is_abelian() {
        return Err(Error::NotAbelian);
    }
    let grp = gg.g();
    let values: Vec<usize> = (0..gg.gamma().order()).map(|c| grp.mul(gg.act(c, g), grp.inv(g))).collect();
    make_cocycle(gg, &values)
}

/// Γ = 𝔊 acting on itself by conjugation.
pub fn inner_gamma_group(g: Arc<FiniteGroup>) -> GammaGroup {
    let h = g.clone();
    GammaGroup::from_fn_unchecked(g.clone(), g, move |c, x| h.conj(c, x))
}

/// γ ↦ [g, γ] = gγg⁻¹γ⁻¹ for the inner action.
pub fn inner_coboundary(gg: &GammaGroup, g: usize) -> Result<Cocycle> {
    let grp = gg.g();
    let inner = gg.gamma().order() == grp.order()
        && (0..grp.order()).all(|c| (0..grp.order()).all(|x| gg.act(c, x) == grp.conj(c, x)));
    if !inner {
        return Err(Error::BadParameters("action is not inner".into()));
    }
    let values: Vec<usize> =
        (0..grp.order()).map(|c| grp.mul(grp.mul(g, c), grp.mul(grp.inv(g), grp.inv(c)))).collect();
    make_cocycle(gg, &values)
}

/// s₂(γ) = η(γ)s₁(γ) in 𝔊 ⋊ Γ.
pub fn section_s2(t: &Triple) -> Result<(SemidirectData, GroupMorphism)> {
    let sd = semidirect(&t.gg)?;
    let s2 = GroupMorphism { map: (0..t.gamma().order()).map(|c| sd.code(t.eta(c), c)).collect() };
    ensure(s2.is_morphism(t.gamma(), &sd.e), "s₂ is a morphism")?;
    ensure((0..t.gamma().order()).all(|c| sd.p.map[s2.map[c]] == c), "p ∘ s₂ = id")?;
    Ok((sd, s2))
}

/// Z¹ and B¹ for abelian 𝔊.
pub fn abelian_cohomology(gg: &GammaGroup) -> Result<(Vec<Cocycle>, Vec<Cocycle>)> {
    if !gg.g().is_abelian() {
        return Err(Error::NotAbelian);
    }
    let z1 = enumerate_cocycles(gg)?;
    let mut b1: Vec<Cocycle> = (0..gg.g().order()).map(|x| coboundary(gg, x)).collect::<Result<_>>()?;
    b1.sort();
    b1.dedup();
    Ok((z1, b1))
}

/// Number of cohomology classes: orbits of Z¹ under η ↦ (γ ↦ g⁻¹η(γ)γ(g)). Experimental.
pub fn cohomology_class_count(gg: &GammaGroup) -> Result<usize> {
    let z1 = enumerate_cocycles(gg)?;
    let index: HashMap<&Cocycle, usize> = z1.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let grp = gg.g();
    let mut seen = HashSet::new();
    let mut classes = 0;
    for (i, eta) in z1.iter().enumerate() {
        if !seen.insert(i) {
            continue;
        }
        classes += 1;
        for x in 0..grp.order() {
            let tw = Cocycle {
                values: (0..gg.gamma().order())
                    .map(|c| grp.mul(grp.mul(grp.inv(x), eta.at(c)), gg.act(c, x)) as u32)
                    .collect(),
            };
            seen.insert(index[&tw]);
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian, cyclic};
    use crate::operator::make_gamma_group;

    pub(crate) fn negation_z4() -> Arc<GammaGroup> {
        Arc::new(
            make_gamma_group(Arc::new(cyclic(2)), Arc::new(cyclic(4)), &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]])
                .unwrap(),
        )
    }

    fn brute_count(gg: &GammaGroup) -> usize {
        let (m, n) = (gg.gamma().order(), gg.g().order());
        let total = n.pow(m as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let vals: Vec<usize> = (0..m)
                    .map(|_| {
                        let v = c % n;
                        c /= n;
                        v
                    })
                    .collect();
                check_cocycle_law(gg, &vals).is_ok()
            })
            .count()
    }

    #[test]
    fn negation_cocycles() {
        let gg = negation_z4();
        assert!(make_cocycle(&gg, &[0, 1]).is_ok());
        let t = Triple::new(gg.clone(), &[0, 2]).unwrap();
        assert!(!t.generating);
        assert_eq!(enumerate_cocycles(&gg).unwrap().len(), 4);
        assert_eq!(make_cocycle(&gg, &[1, 1]).unwrap_err(), Error::CocycleLawViolated(0, 0));
        assert_eq!(coboundary(&gg, 1).unwrap().to_vec(), vec![0, 2]);
    }

    #[test]
    fn enumeration_matches_brute_force_filter() {
        let cat = crate::catalog::groups_up_to(4);
        for gamma in &cat {
            for g in &cat {
                if g.order().pow(gamma.order() as u32) > 4096 {
                    continue;
                }
                let auts = crate::group::AutGroup::of(g).unwrap();
                for hom in crate::group::homomorphisms(gamma, &auts) {
                    let gg = GammaGroup::from_hom(gamma.clone(), g.clone(), &auts.maps, &hom);
                    let z = enumerate_cocycles(&gg).unwrap();
                    assert_eq!(z.len(), brute_count(&gg));
                    for c in &z {
                        assert!(make_cocycle(&gg, &c.to_vec()).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_data_of_remark_triple() {
        let t = Triple::new(negation_z4(), &[0, 1]).unwrap();
        let k = kernel_invariants(&t).unwrap();
        assert_eq!(k.delta.len(), 1);
        assert_eq!(k.delta_prime.len(), 1);
        assert_eq!(k.delta_tilde.len(), 1);
        let tr = Triple::new(negation_z4(), &[0, 0]).unwrap();
        let k = kernel_invariants(&tr).unwrap();
        assert_eq!(k.delta.len(), 2);
        assert_eq!(k.delta_tilde, k.delta_prime);
    }

    #[test]
    fn normalization_collapses_core() {
        // Z4 acting through Z4/2Z4 by negation, η(1) = 1
        let z4 = Arc::new(cyclic(4));
        let neg = vec![0, 3, 2, 1];
        let id: Vec<usize> = (0..4).collect();
        let gg = Arc::new(
            make_gamma_group(z4.clone(), z4.clone(), &[id.clone(), neg.clone(), id.clone(), neg.clone()]).unwrap(),
        );
        let eta = cocycle_from_generators(&gg, &[(1, 1)]).unwrap();
        let t = Triple::new_unchecked(gg, eta);
        assert_eq!(t.delta_tilde.to_vec(), vec![0, 2]);
        let n = normalize(&t);
        assert_eq!(n.gamma().order(), 2);
        assert!(n.is_normalized());
        assert_eq!(n.eta.to_vec(), vec![0, 1]);
        let triv = Triple::new(Arc::new(GammaGroup::trivial(Arc::new(abelian(&[2, 2])), z4)), &[0; 4]).unwrap();
        assert_eq!(normalize(&triv).gamma().order(), 1);
    }

    #[test]
    fn induced_and_section() {
        let t = Triple::new(negation_z4(), &[0, 1]).unwrap();
        let a = ElemSet::from_iter(4, [0, 2]);
        let ta = induced_cocycle(&t, &a).unwrap();
        assert!(ta.is_surjective() && ta.is_injective());
        assert_eq!(ta.delta, t.preimage(&a));
        let (sd, s2) = section_s2(&t).unwrap();
        assert_eq!(s2.map[1], sd.code(1, 1));
        assert_eq!(sd.e.elem_order(s2.map[1]), 2);
    }

    #[test]
    fn abelian_h1_and_inner() {
        let (z1, b1) = abelian_cohomology(&negation_z4()).unwrap();
        assert_eq!((z1.len(), b1.len()), (4, 2));
        let s3 = crate::catalog::by_name("S3").unwrap();
        let inner = inner_gamma_group(s3);
        for x in 0..6 {
            assert!(inner_coboundary(&inner, x).is_ok());
        }
        assert_eq!(cohomology_class_count(&negation_z4()).unwrap(), 2);
    }
}
