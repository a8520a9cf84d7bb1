use crate::bitset::ElemSet;
use crate::cocycle::{abelian_cohomology, Cocycle, Triple};
use crate::error::{Error, Result};
use crate::group::{enumerate_subgroups, homomorphisms, FiniteGroup, DEFAULT_ORDER_BOUND};
use crate::operator::{GammaGroup, Ideal};
use crate::report::Report;
use std::collections::HashMap;
use std::sync::Arc;

const Z1_SUBGROUP_CAP: usize = 2000;

/// Z¹(Γ, A) as a finite abelian Γ-module.
pub struct Z1Module {
    pub base: Arc<GammaGroup>,
    pub cocycles: Vec<Cocycle>,
    index: HashMap<Vec<u32>, usize>,
    /// pointwise addition; Γ acts by σα = α + f_{α(σ)}
    pub module: Arc<GammaGroup>,
    pub b1: ElemSet,
}

fn check_abelian(m: &GammaGroup) -> Result<()> {
    if m.g().is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}

pub fn z1_module(m: Arc<GammaGroup>) -> Result<Z1Module> {
    check_abelian(&m)?;
    let (z1, b1) = abelian_cohomology(&m)?;
    if z1.len() > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded { order: z1.len(), bound: DEFAULT_ORDER_BOUND });
    }
    let a = m.g();
    let gam = m.gamma();
    let index: HashMap<Vec<u32>, usize> = z1.iter().enumerate().map(|(i, c)| (c.values.clone(), i)).collect();
    let look = |v: Vec<u32>| index[&v];
    let z = z1.len();
    let add = |i: usize, j: usize| {
        look((0..gam.order()).map(|c| a.mul(z1[i].at(c), z1[j].at(c)) as u32).collect())
    };
    let group = Arc::new(FiniteGroup::from_fn_unchecked(z, add));
    let act = |s: usize, i: usize| {
        let al = &z1[i];
        let x = al.at(s);
        look(
            (0..gam.order())
                .map(|c| a.mul(al.at(c), a.mul(m.act(c, x), a.inv(x))) as u32)
                .collect(),
        )
    };
    let module = Arc::new(GammaGroup::from_fn_unchecked(gam.clone(), group, act));
    let b1 = ElemSet::from_iter(z, b1.iter().map(|c| index[&c.values]));
    Ok(Z1Module { base: m, cocycles: z1, index, module, b1 })
}

impl Z1Module {
    pub fn order(&self) -> usize {
        self.cocycles.len()
    }

    pub fn h1_order(&self) -> usize {
        self.order() / self.b1.len()
    }

    pub fn index_of(&self, values: &[u32]) -> Option<usize> {
        self.index.get(values).copied()
    }

    pub fn eval(&self, alpha: usize, gamma: usize) -> usize {
        self.cocycles[alpha].at(gamma)
    }

    /// Λ^⊥ = {α : α|Λ = 0}
    pub fn perp_up(&self, lam: &ElemSet) -> ElemSet {
        ElemSet::from_iter(self.order(), (0..self.order()).filter(|&i| lam.iter().all(|c| self.eval(i, c) == 0)))
    }

    /// G^⊥ = ∩ Ker α
    pub fn perp_down(&self, g: &ElemSet) -> ElemSet {
        let n = self.base.gamma().order();
        ElemSet::from_iter(n, (0..n).filter(|&c| g.iter().all(|i| self.eval(i, c) == 0)))
    }

    /// Twisted action against the conjugation formula σ·α(σ⁻¹γσ).
    pub fn check_action(&self) -> Report {
        let mut r = Report::new();
        let (gam, a) = (self.base.gamma(), self.base.g());
        for s in 0..gam.order() {
            for i in 0..self.order() {
                let j = self.module.act(s, i);
                for c in 0..gam.order() {
                    let conj = gam.mul(gam.mul(gam.inv(s), c), s);
                    r.check(self.eval(j, c) == self.base.act(s, self.eval(i, conj)), || {
                        format!("σα formula at σ={s}, α={i}, γ={c}")
                    });
                }
                let diff: Vec<u32> =
                    (0..gam.order()).map(|c| a.mul(self.eval(j, c), a.inv(self.eval(i, c))) as u32).collect();
                r.check(self.index_of(&diff).is_some_and(|k| self.b1.contains(k)), || {
                    format!("σα − α ∉ B¹ at σ={s}, α={i}")
                });
            }
        }
        r
    }

    /// All subgroups of Z¹, or cyclic and 2-generated ones when there are too many.
    pub fn subgroups(&self) -> (Vec<ElemSet>, bool) {
        let g = self.module.g();
        if let Some(all) = enumerate_subgroups(g, Some(Z1_SUBGROUP_CAP)) {
            return (all, true);
        }
        let mut out: Vec<ElemSet> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for x in 0..g.order() {
            for y in x..g.order() {
                let h = g.closure(&[x, y]);
                if seen.insert(h.clone()) {
                    out.push(h);
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(b)));
        (out, false)
    }
}

/// 𝔊 = ⟨η_γ⟩ ⊆ Hom(Z¹, A) with its two Γ-actions.
pub struct DualModule {
    pub z1: Z1Module,
    /// elements as value vectors over the cocycles of `z1`; zero at index 0
    pub funcs: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    pub triple: Triple,
    /// ^σφ(α) = σ·φ(σ⁻¹α), as a row per σ
    pub second_action: Vec<Vec<u32>>,
}

pub fn dual_module(m: Arc<GammaGroup>) -> Result<DualModule> {
    let z1 = z1_module(m)?;
    let (gam, a) = (z1.base.gamma().clone(), z1.base.g().clone());
    let z = z1.order();
    let eta_vec = |c: usize| (0..z).map(|i| z1.eval(i, c) as u32).collect::<Vec<u32>>();
    let add = |u: &[u32], v: &[u32]| u.iter().zip(v).map(|(&x, &y)| a.mul(x as usize, y as usize) as u32).collect::<Vec<u32>>();
    let gens: Vec<Vec<u32>> = (0..gam.order()).map(eta_vec).collect();
    let mut funcs = vec![vec![0u32; z]];
    let mut seen: std::collections::HashSet<Vec<u32>> = funcs.iter().cloned().collect();
    let mut i = 0;
    while i < funcs.len() {
        for g in &gens {
            let f = add(&funcs[i], g);
            if seen.insert(f.clone()) {
                if funcs.len() >= DEFAULT_ORDER_BOUND {
                    return Err(Error::OrderBoundExceeded { order: funcs.len() + 1, bound: DEFAULT_ORDER_BOUND });
                }
                funcs.push(f);
            }
        }
        i += 1;
    }
    funcs.sort();
    let index: HashMap<Vec<u32>, usize> = funcs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let n = funcs.len();
    let group = Arc::new(FiniteGroup::from_fn_unchecked(n, |i, j| index[&add(&funcs[i], &funcs[j])]));
    let act = |c: usize, i: usize| index[&funcs[i].iter().map(|&x| z1.base.act(c, x as usize) as u32).collect::<Vec<_>>()];
    let gg = Arc::new(GammaGroup::from_fn_unchecked(gam.clone(), group, act));
    let eta = Cocycle { values: gens.iter().map(|g| index[g] as u32).collect() };
    let triple = Triple::new_unchecked(gg, eta);
    let second_action = (0..gam.order())
        .map(|s| {
            let sinv = gam.inv(s);
            (0..n)
                .map(|i| {
                    let f: Vec<u32> = (0..z)
                        .map(|al| z1.base.act(s, funcs[i][z1.module.act(sinv, al)] as usize) as u32)
                        .collect();
                    index.get(&f).map(|&k| k as u32).ok_or(Error::Inconsistent("^σφ ∉ 𝔊".into()))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    Ok(DualModule { z1, funcs, index, triple, second_action })
}

impl DualModule {
    pub fn order(&self) -> usize {
        self.funcs.len()
    }

    pub fn index_of(&self, f: &[u32]) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn second(&self, s: usize, phi: usize) -> usize {
        self.second_action[s][phi] as usize
    }

    fn pair(&self, phi: usize, alpha: usize) -> usize {
        self.funcs[phi][alpha] as usize
    }

    /// a_⊥ = {α : φ(α) = 0 for all φ ∈ a}
    pub fn lower_perp_ideal(&self, a: &ElemSet) -> ElemSet {
        let z = self.z1.order();
        ElemSet::from_iter(z, (0..z).filter(|&al| a.iter().all(|phi| self.pair(phi, al) == 0)))
    }

    /// G_⊥ = {φ : φ(α) = 0 for all α ∈ G}
    pub fn lower_perp_z1(&self, g: &ElemSet) -> Ideal {
        let n = self.order();
        ElemSet::from_iter(n, (0..n).filter(|&phi| g.iter().all(|al| self.pair(phi, al) == 0)))
    }

    /// Structural checks: η is a generating cocycle, ^ση_γ = η_{σγσ⁻¹}, Ker η = (Z¹)^⊥.
    pub fn structure_check(&self) -> Report {
        let mut r = Report::new();
        let t = &self.triple;
        let gam = t.gamma();
        r.check(crate::cocycle::check_cocycle_law(&t.gg, &t.eta.to_vec()).is_ok(), || "η is a cocycle".into());
        r.check(t.gg.ideal_closure(&t.image) == t.g().full(), || "η generating".into());
        for s in 0..gam.order() {
            for c in 0..gam.order() {
                r.check(self.second(s, t.eta(c)) == t.eta(gam.conj(s, c)), || format!("^ση_γ at σ={s}, γ={c}"));
            }
            for phi in 0..self.order() {
                for psi in 0..self.order() {
                    let sum = t.g().mul(phi, psi);
                    r.check(self.second(s, sum) == t.g().mul(self.second(s, phi), self.second(s, psi)), || {
                        format!("^σ additive at σ={s}")
                    });
                }
            }
        }
        r.check(t.delta == self.z1.perp_down(&self.z1.module.g().full()), || "Ker η = (Z¹)^⊥".into());
        r
    }
}

/// Equivariant homomorphisms 𝔊 → A by filtering all homomorphisms.
pub fn equivariant_homs(d: &DualModule) -> Vec<Vec<u32>> {
    let gg = &d.triple.gg;
    let base = &d.z1.base;
    homomorphisms(gg.g(), base.g().as_ref())
        .into_iter()
        .filter(|psi| {
            base.gamma().generators().iter().all(|&s| {
                (0..d.order()).all(|phi| psi[gg.act(s, phi)] as usize == base.act(s, psi[phi] as usize))
            })
        })
        .collect()
}

pub fn pairing_check(d: &DualModule) -> Result<Report> {
    let mut r = d.structure_check();
    let (gam, gg, z1) = (d.triple.gamma(), &d.triple.gg, &d.z1);
    for s in 0..gam.order() {
        for phi in 0..d.order() {
            for al in 0..z1.order() {
                let v = z1.base.act(s, d.pair(phi, al));
                r.check(d.pair(gg.act(s, phi), al) == v, || format!("⟨σφ,α⟩ at σ={s}"));
                r.check(d.pair(d.second(s, phi), z1.module.act(s, al)) == v, || format!("⟨^σφ,σα⟩ at σ={s}"));
            }
        }
    }
    // λ(α) = (φ ↦ φ(α)), μ(ψ) = ψ ∘ η
    let homs = equivariant_homs(d);
    let hom_index: HashMap<&Vec<u32>, usize> = homs.iter().enumerate().map(|(i, h)| (h, i)).collect();
    r.check(homs.len() == z1.order(), || format!("|Hom_Γ(𝔊,A)| = {} ≠ |Z¹| = {}", homs.len(), z1.order()));
    let mu = |psi: &Vec<u32>| -> Option<usize> {
        let v: Vec<u32> = (0..gam.order()).map(|c| psi[d.triple.eta(c)]).collect();
        z1.index_of(&v)
    };
    for al in 0..z1.order() {
        let lam: Vec<u32> = (0..d.order()).map(|phi| d.pair(phi, al) as u32).collect();
        match hom_index.get(&lam) {
            Some(_) => r.check(mu(&lam) == Some(al), || format!("μλ ≠ id at α={al}")),
            None => r.fail(format!("λ(α) not an equivariant homomorphism at α={al}")),
        }
    }
    for psi in &homs {
        match mu(psi) {
            Some(al) => {
                let back: Vec<u32> = (0..d.order()).map(|phi| d.pair(phi, al) as u32).collect();
                r.check(&back == psi, || "λμ ≠ id".into());
            }
            None => r.fail("μ(ψ) not a cocycle".into()),
        }
    }
    Ok(r)
}

/// Both Galois connexions, their equivariance, and the composition identities.
pub fn composition_check(d: &DualModule) -> Result<Report> {
    let mut r = Report::new();
    let t = &d.triple;
    let (gam, z1) = (t.gamma(), &d.z1);
    let subs = gam.subgroups()?;
    let (zsubs, _complete) = z1.subgroups();
    let ideals = t.gg.ideals()?;
    for lam in subs.iter() {
        let up = z1.perp_up(lam);
        r.check(z1.module.g().is_subgroup(&up), || "Λ^⊥ subgroup".into());
        r.check(lam.is_subset(&z1.perp_down(&up)), || "Λ ⊆ Λ^⊥⊥".into());
        let j = t.gg.ideal_closure(&t.image_of(lam));
        r.check(up == d.lower_perp_ideal(&j), || format!("Λ^⊥ ≠ J(Λ)_⊥ for Λ={lam:?}"));
        for s in 0..gam.order() {
            let conj = ElemSet::from_iter(gam.order(), lam.iter().map(|c| gam.conj(s, c)));
            let moved = ElemSet::from_iter(z1.order(), up.iter().map(|al| z1.module.act(s, al)));
            r.check(z1.perp_up(&conj) == moved, || format!("(σΛσ⁻¹)^⊥ ≠ σΛ^⊥ at σ={s}"));
        }
    }
    for g in &zsubs {
        let down = z1.perp_down(g);
        r.check(gam.is_subgroup(&down), || "G^⊥ subgroup".into());
        r.check(g.is_subset(&z1.perp_up(&down)), || "G ⊆ G^⊥⊥".into());
        let gl = d.lower_perp_z1(g);
        r.check(t.gg.is_ideal(&gl), || "G_⊥ ideal".into());
        r.check(g.is_subset(&d.lower_perp_ideal(&gl)), || "G ⊆ G_⊥⊥".into());
        r.check(down == t.preimage(&gl), || format!("G^⊥ ≠ S(G_⊥) for G={g:?}"));
        for s in 0..gam.order() {
            let moved = ElemSet::from_iter(z1.order(), g.iter().map(|al| z1.module.act(s, al)));
            let lhs = d.lower_perp_z1(&moved);
            let rhs = ElemSet::from_iter(d.order(), gl.iter().map(|phi| d.second(s, phi)));
            r.check(lhs == rhs, || format!("(σG)_⊥ ≠ ^σ(G_⊥) at σ={s}"));
        }
    }
    for a in &ideals.nodes {
        let al = d.lower_perp_ideal(a);
        r.check(a.is_subset(&d.lower_perp_z1(&al)), || "a ⊆ a_⊥⊥".into());
        for s in 0..gam.order() {
            let sa = ElemSet::from_iter(d.order(), a.iter().map(|phi| d.second(s, phi)));
            let moved = ElemSet::from_iter(z1.order(), al.iter().map(|x| z1.module.act(s, x)));
            r.check(d.lower_perp_ideal(&sa) == moved, || format!("(^σa)_⊥ ≠ σ(a_⊥) at σ={s}"));
        }
    }
    Ok(r)
}

/// E^Γ, coG(E) = E/E^Γ and θ: E → Z¹(Γ, E).
pub struct CogData {
    pub fixed: ElemSet,
    pub cog: FiniteGroup,
    pub z1: Z1Module,
    pub theta: Vec<usize>,
}

impl CogData {
    pub fn image(&self) -> ElemSet {
        ElemSet::from_iter(self.z1.order(), self.theta.iter().copied())
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new();
        let e = &self.z1.base;
        let ker = ElemSet::from_iter(e.g().order(), (0..e.g().order()).filter(|&x| self.theta[x] == 0));
        r.check(ker == self.fixed, || "Ker θ ≠ E^Γ".into());
        r.check(self.image() == self.z1.b1, || "θ(E) ≠ B¹".into());
        for s in 0..e.gamma().order() {
            for x in 0..e.g().order() {
                r.check(self.theta[e.act(s, x)] == self.z1.module.act(s, self.theta[x]), || {
                    format!("θ not equivariant at σ={s}, x={x}")
                });
            }
        }
        r.check(self.cog.order() == self.z1.b1.len(), || "|coG(E)| ≠ |B¹|".into());
        let iso = self.cog.order() == self.z1.order()
            && crate::group::find_isomorphism(&self.cog, self.z1.module.g()).is_some();
        r.check(iso == (self.z1.h1_order() == 1), || "coG(E) ≅ Z¹ ⇔ H¹ = 0 fails".into());
        r
    }
}

pub fn cog_group(e: Arc<GammaGroup>) -> Result<CogData> {
    check_abelian(&e)?;
    let fixed = e.fixed_points();
    let (cog, _) = e.g().quotient(&fixed)?;
    let z1 = z1_module(e.clone())?;
    let gam = e.gamma();
    let theta = (0..e.g().order())
        .map(|x| {
            let v: Vec<u32> =
                (0..gam.order()).map(|c| e.g().mul(e.act(c, x), e.g().inv(x)) as u32).collect();
            z1.index_of(&v).ok_or(Error::Inconsistent("θ(x) not a cocycle".into()))
        })
        .collect::<Result<_>>()?;
    Ok(CogData { fixed, cog, z1, theta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, abelian};
    use crate::operator::make_gamma_group;

    pub(crate) fn negation_z4() -> Arc<GammaGroup> {
        Arc::new(
            make_gamma_group(Arc::new(cyclic(2)), Arc::new(cyclic(4)), &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).unwrap(),
        )
    }

    #[test]
    fn z1_examples() {
        let m = z1_module(Arc::new(GammaGroup::trivial(Arc::new(cyclic(2)), Arc::new(cyclic(2))))).unwrap();
        assert_eq!(m.order(), 2);
        let m = z1_module(negation_z4()).unwrap();
        assert_eq!((m.order(), m.b1.len(), m.h1_order()), (4, 2, 2));
        assert!(m.check_action().passed());
        assert_eq!(m.perp_up(&m.base.gamma().full()).len(), 1);
        assert_eq!(m.perp_down(&m.module.g().trivial()).len(), 2);
    }

    #[test]
    fn dual_examples() {
        let d = dual_module(Arc::new(GammaGroup::trivial(Arc::new(cyclic(2)), Arc::new(cyclic(2))))).unwrap();
        assert_eq!(d.order(), 2);
        assert!(d.triple.is_injective() && d.triple.is_surjective());
        let d = dual_module(negation_z4()).unwrap();
        assert!(pairing_check(&d).unwrap().passed());
        assert_eq!(equivariant_homs(&d).len(), 4);
        assert!(composition_check(&d).unwrap().passed());
    }

    #[test]
    fn trivial_action_dual_is_isomorphic() {
        let gam = Arc::new(abelian(&[2, 2]));
        let d = dual_module(Arc::new(GammaGroup::trivial(gam.clone(), Arc::new(cyclic(2))))).unwrap();
        assert_eq!(d.order(), 4);
        assert!(d.triple.is_injective());
    }

    #[test]
    fn cog_examples() {
        let c = cog_group(Arc::new(GammaGroup::trivial(Arc::new(cyclic(3)), Arc::new(cyclic(4))))).unwrap();
        assert_eq!(c.cog.order(), 1);
        assert!(c.check().passed());
        let c = cog_group(negation_z4()).unwrap();
        assert_eq!(c.fixed.to_vec(), vec![0, 2]);
        assert_eq!(c.cog.order(), 2);
        assert!(c.check().passed());
    }
}
