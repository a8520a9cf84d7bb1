//! Surjectivity of cocycles, Kneser and coGalois ideals.

use crate::bitset::ElemSet;
use crate::cocycle::{induced_cocycle, kernel_invariants, Triple};
use crate::connexion::CoGaloisConnexion;
use crate::error::{Error, Result};
use crate::group::gcd;
use crate::operator::{semidirect, IdealLattice};
use crate::report::Report;
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Debug, Serialize)]
pub struct KneserReport {
    pub is_kneser: bool,
    /// η(Γ) = 𝔊
    pub surjective: bool,
    /// Γ/Δ → 𝔊 bijective
    pub quotient_bijective: bool,
    /// 𝔈 = Γ₁Γ₂
    pub factorization: bool,
    /// (γ, g) ↦ η(γ)·γg transitive with stabilizer Δ
    pub transitive_action: bool,
    /// some element outside η(Γ)
    pub missing: Option<usize>,
    pub index: usize,
}

fn left_cosets(gamma: &crate::group::FiniteGroup, h: &ElemSet) -> Vec<usize> {
    let mut seen = ElemSet::empty(gamma.order());
    let mut reps = Vec::new();
    for c in 0..gamma.order() {
        if !seen.contains(c) {
            reps.push(c);
            for x in h.iter() {
                seen.insert(gamma.mul(c, x));
            }
        }
    }
    reps
}

pub fn is_surjective_multi(t: &Triple) -> Result<KneserReport> {
    let (gamma, g) = (t.gamma(), t.g());
    let n = g.order();
    let surjective = t.is_surjective();
    let missing = (0..n).find(|&x| !t.image.contains(x));

    let reps = left_cosets(gamma, &t.delta);
    let mut hit = ElemSet::empty(n);
    for &r in &reps {
        hit.insert(t.eta(r));
    }
    let quotient_bijective = hit.len() == reps.len() && reps.len() == n;

    let sd = semidirect(&t.gg)?;
    let e = &sd.e;
    let s1: Vec<usize> = (0..gamma.order()).map(|c| sd.code(0, c)).collect();
    let s2: Vec<usize> = (0..gamma.order()).map(|c| sd.code(t.eta(c), c)).collect();
    let mut prod = ElemSet::empty(e.order());
    for &a in &s1 {
        for &b in &s2 {
            prod.insert(e.mul(a, b));
        }
    }
    let factorization = prod.len() == e.order();

    let act = |c: usize, x: usize| g.mul(t.eta(c), t.gg.act(c, x));
    let mut is_action = true;
    'outer: for a in gamma.generators().iter().copied() {
        for b in 0..gamma.order() {
            for x in 0..n {
                if act(gamma.mul(a, b), x) != act(a, act(b, x)) {
                    is_action = false;
                    break 'outer;
                }
            }
        }
    }
    let mut orbit = ElemSet::from_iter(n, [0]);
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        for &c in gamma.generators() {
            let y = act(c, x);
            if orbit.insert(y) {
                queue.push(y);
            }
        }
    }
    let stab = ElemSet::from_iter(gamma.order(), (0..gamma.order()).filter(|&c| act(c, 0) == 0));
    if stab != t.delta || !is_action {
        return Err(Error::Inconsistent("Γ-action on 𝔊 through η".into()));
    }
    let transitive_action = orbit.len() == n;

    let flags = [surjective, quotient_bijective, factorization, transitive_action];
    if flags.iter().any(|&f| f != surjective) {
        return Err(Error::Inconsistent(format!("surjectivity characterizations disagree: {flags:?}")));
    }
    let index = gamma.order() / t.delta.len();
    if surjective {
        let g1 = ElemSet::from_iter(e.order(), s1.iter().copied());
        let g2 = ElemSet::from_iter(e.order(), s2.iter().copied());
        let both = g1.intersection(&g2).len();
        let ok = index == n
            && gamma.order() / both == n
            && e.order() / gamma.order() == n;
        if !ok {
            return Err(Error::Inconsistent("(Γ:Δ) = |𝔊| index identities".into()));
        }
    }
    Ok(KneserReport { is_kneser: surjective, surjective, quotient_bijective, factorization, transitive_action, missing, index })
}

/// Surjectivity via the p-primary quotients 𝔊_p.
pub fn pronil_criterion(t: &Triple) -> Result<bool> {
    let g = t.g();
    if !g.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut verdict = true;
    for (p, _) in crate::group::factorize(g.order()) {
        let coprime = ElemSet::from_iter(g.order(), (0..g.order()).filter(|&x| gcd(g.elem_order(x), p) == 1));
        let tp = induced_cocycle(t, &coprime)?;
        verdict &= tp.is_surjective();
    }
    if verdict != t.is_surjective() {
        return Err(Error::Inconsistent("p-primary criterion disagrees with direct check".into()));
    }
    Ok(verdict)
}

/// Surjectivity of η from that of η_a with a = η(Λ) an ideal.
pub fn ideal_surjectivity_criterion(t: &Triple, lam: &ElemSet) -> Result<bool> {
    let a = t.image_of(lam);
    if !t.gg.is_ideal(&a) {
        return Err(Error::ImageNotIdeal);
    }
    let verdict = induced_cocycle(t, &a)?.is_surjective();
    if verdict != t.is_surjective() {
        return Err(Error::Inconsistent("ideal criterion disagrees with direct check".into()));
    }
    Ok(verdict)
}

/// The special case a = η(Δ̄).
pub fn central_ideal_criterion(t: &Triple) -> Result<bool> {
    let k = kernel_invariants(t)?;
    ideal_surjectivity_criterion(t, &k.delta_bar)
}

#[derive(Clone, Debug)]
pub struct IdealClassification {
    pub ideals: Arc<IdealLattice>,
    pub kneser: Vec<bool>,
    pub cogalois: Vec<bool>,
    pub nk_max: Vec<usize>,
    pub ncg_max: Vec<usize>,
}

/// For each ideal a: is η_a surjective, and is (Γ, 𝔊/a, η_a) coGalois.
pub fn classify_ideals(t: &Triple) -> Result<IdealClassification> {
    if !t.generating {
        return Err(Error::NotGenerating);
    }
    let ideals = t.gg.ideals()?;
    let g = t.g();
    let subs = t.gamma().subgroups()?;
    let mut kneser = Vec::with_capacity(ideals.len());
    let mut cogalois = Vec::with_capacity(ideals.len());
    for a in &ideals.nodes {
        let (label, reps) = g.coset_labels(a);
        let covered = ElemSet::from_iter(reps.len(), t.eta.values.iter().map(|&v| label[v as usize]));
        let k = covered.len() == reps.len();
        let s = t.preimage(a);
        let cg = k
            && subs.iter().filter(|lam| s.is_subset(lam)).all(|lam| {
                let mut full = ElemSet::empty(g.order());
                for y in t.image_of(lam).iter() {
                    for x in a.iter() {
                        full.insert(g.mul(y, x));
                    }
                }
                ideals.index_of(&full).is_some()
            });
        kneser.push(k);
        cogalois.push(cg);
    }
    let nk_max = ideals.maximal_among(|i| !kneser[i]);
    let ncg_max = ideals.maximal_among(|i| !cogalois[i]);
    Ok(IdealClassification { ideals, kneser, cogalois, nk_max, ncg_max })
}

impl IdealClassification {
    fn omits(&self, maxes: &[usize], a: usize) -> bool {
        maxes.iter().all(|&m| !self.ideals.nodes[a].is_subset(&self.ideals.nodes[m]))
    }

    pub fn kneser_by_criterion(&self, a: usize) -> bool {
        self.omits(&self.nk_max, a)
    }

    pub fn cogalois_by_criterion(&self, a: usize) -> bool {
        self.omits(&self.ncg_max, a)
    }

    pub fn kneser_set(&self) -> Vec<&ElemSet> {
        (0..self.ideals.len()).filter(|&i| self.kneser[i]).map(|i| &self.ideals.nodes[i]).collect()
    }

    pub fn cogalois_set(&self) -> Vec<&ElemSet> {
        (0..self.ideals.len()).filter(|&i| self.cogalois[i]).map(|i| &self.ideals.nodes[i]).collect()
    }

    /// Upper sets, CG ⊆ K, omitting criteria, and minimal elements.
    pub fn check(&self) -> Report {
        let mut r = Report::new();
        let l = &self.ideals;
        for a in 0..l.len() {
            r.check(self.kneser_by_criterion(a) == self.kneser[a], || format!("Kneser criterion at ideal {a}"));
            r.check(self.cogalois_by_criterion(a) == self.cogalois[a], || format!("coGalois criterion at ideal {a}"));
            r.check(!self.cogalois[a] || self.kneser[a], || format!("CG ⊄ K at ideal {a}"));
            for b in 0..l.len() {
                if l.nodes[a].is_subset(&l.nodes[b]) {
                    r.check(!self.kneser[a] || self.kneser[b], || "K not an upper set".into());
                    r.check(!self.cogalois[a] || self.cogalois[b], || "CG not an upper set".into());
                }
            }
        }
        let kmin = l.minimal_among(|i| self.kneser[i]);
        for a in (0..l.len()).filter(|&a| self.kneser[a]) {
            r.check(kmin.iter().any(|&m| l.nodes[m].is_subset(&l.nodes[a])), || "no minimal Kneser ideal below".into());
        }
        for &x in &kmin {
            for &y in &kmin {
                r.check(x == y || !l.nodes[x].is_subset(&l.nodes[y]), || "minimal Kneser ideals comparable".into());
            }
        }
        r
    }
}

pub fn kneser_criterion(t: &Triple, a: &ElemSet) -> Result<bool> {
    let c = classify_ideals(t)?;
    let i = c.ideals.index_of(a).ok_or(Error::NotAnIdeal)?;
    let v = c.kneser_by_criterion(i);
    if v != c.kneser[i] {
        return Err(Error::Inconsistent("Kneser criterion disagrees".into()));
    }
    Ok(v)
}

pub fn cogalois_criterion(t: &Triple, a: &ElemSet) -> Result<bool> {
    if !t.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let c = classify_ideals(t)?;
    let i = c.ideals.index_of(a).ok_or(Error::NotAnIdeal)?;
    let v = c.cogalois_by_criterion(i);
    if v != c.cogalois[i] {
        return Err(Error::Inconsistent("coGalois criterion disagrees".into()));
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoGaloisVerdict {
    pub cogalois: bool,
    /// S∘J = id
    pub sj_identity: bool,
    pub j_injective: bool,
    pub s_surjective: bool,
    /// η(Λ) = J(Λ)
    pub image_is_j: bool,
    /// η(Λ) an ideal
    pub image_is_ideal: bool,
}

pub fn is_cogalois_triple(t: &Triple) -> Result<CoGaloisVerdict> {
    let c = CoGaloisConnexion::new(t)?;
    let sur = t.is_surjective();
    let nd = c.domain.len();
    let sj_identity = sur && (0..nd).all(|i| c.s_table[c.j_table[i]] == i);
    let mut js = c.j_table.clone();
    js.sort_unstable();
    js.dedup();
    let j_injective = sur && js.len() == nd;
    let mut ss = c.s_table.clone();
    ss.sort_unstable();
    ss.dedup();
    let s_surjective = sur && ss.len() == nd;
    let image_is_j = c.domain.iter().zip(&c.j_table).all(|(lam, &j)| t.image_of(lam) == c.ideals.nodes[j]);
    let image_is_ideal = c.domain.iter().all(|lam| c.ideals.index_of(&t.image_of(lam)).is_some());
    let cogalois = sur && c.is_perfect();
    let mut flags = vec![sj_identity, j_injective, s_surjective];
    if t.generating {
        flags.extend([image_is_j, image_is_ideal]);
    }
    if flags.iter().any(|&f| f != cogalois) {
        return Err(Error::Inconsistent(format!("coGalois characterizations disagree: {flags:?}")));
    }
    Ok(CoGaloisVerdict { cogalois, sj_identity, j_injective, s_surjective, image_is_j, image_is_ideal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::cocycle_from_generators;
    use crate::group::{abelian, cyclic};
    use crate::operator::{make_gamma_group, GammaGroup};

    fn set(n: usize, v: &[usize]) -> ElemSet {
        ElemSet::from_iter(n, v.iter().copied())
    }

    fn negation_triple() -> Triple {
        let gg = make_gamma_group(Arc::new(cyclic(2)), Arc::new(cyclic(4)), &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).unwrap();
        Triple::new(Arc::new(gg), &[0, 1]).unwrap()
    }

    fn klein_on_z4() -> Triple {
        let gg = Arc::new(GammaGroup::character(Arc::new(abelian(&[2, 2])), Arc::new(cyclic(4)), &[1, 1, 3, 3]));
        let eta = cocycle_from_generators(&gg, &[(2, 1), (1, 2)]).unwrap();
        Triple::new_unchecked(gg, eta)
    }

    #[test]
    fn surjectivity_examples() {
        let gg = Arc::new(GammaGroup::trivial(Arc::new(cyclic(2)), Arc::new(cyclic(3))));
        let r = is_surjective_multi(&Triple::new(gg, &[0, 0]).unwrap()).unwrap();
        assert!(!r.is_kneser && r.missing == Some(1));
        let r = is_surjective_multi(&klein_on_z4()).unwrap();
        assert!(r.is_kneser && r.index == 4);
        let t = negation_triple();
        assert_eq!(t.image.len(), 2);
        assert!(!is_surjective_multi(&t).unwrap().is_kneser);
    }

    #[test]
    fn pronil_examples() {
        let gg = Arc::new(GammaGroup::trivial(Arc::new(cyclic(2)), Arc::new(cyclic(6))));
        let t = Triple::new(gg, &[0, 3]).unwrap();
        assert!(!pronil_criterion(&t).unwrap());
        let gg = Arc::new(GammaGroup::trivial(Arc::new(cyclic(6)), Arc::new(cyclic(6))));
        let t = Triple::new(gg, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(pronil_criterion(&t).unwrap());
        let gg = Arc::new(GammaGroup::trivial(Arc::new(cyclic(3)), Arc::new(crate::catalog::dihedral(3))));
        assert!(matches!(pronil_criterion(&Triple::new(gg, &[0, 0, 0]).unwrap()), Err(Error::NotNilpotent)));
    }

    #[test]
    fn ideal_criterion_examples() {
        let t = klein_on_z4();
        assert!(ideal_surjectivity_criterion(&t, &t.delta).unwrap());
        assert!(ideal_surjectivity_criterion(&t, &t.gamma().full()).unwrap());
        assert!(central_ideal_criterion(&t).unwrap());
        let t = negation_triple();
        assert!(!central_ideal_criterion(&t).unwrap());
    }

    #[test]
    fn ideal_spaces() {
        let c = classify_ideals(&negation_triple()).unwrap();
        let mut k: Vec<Vec<usize>> = c.kneser_set().iter().map(|s| s.to_vec()).collect();
        k.sort_by_key(|v| v.len());
        assert_eq!(k, vec![vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(c.nk_max.iter().map(|&i| c.ideals.nodes[i].to_vec()).collect::<Vec<_>>(), vec![vec![0]]);
        assert!(c.check().passed());
        assert!(kneser_criterion(&negation_triple(), &set(4, &[0, 2])).unwrap());

        let t = klein_on_z4();
        let c = classify_ideals(&t).unwrap();
        assert_eq!(c.kneser_set().len(), 3);
        let mut cg: Vec<Vec<usize>> = c.cogalois_set().iter().map(|s| s.to_vec()).collect();
        cg.sort_by_key(|v| v.len());
        assert_eq!(cg, vec![vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(c.ncg_max.iter().map(|&i| c.ideals.nodes[i].to_vec()).collect::<Vec<_>>(), vec![vec![0]]);
        assert!(c.check().passed());
        assert!(cogalois_criterion(&t, &set(4, &[0, 2])).unwrap());
        assert!(!is_cogalois_triple(&t).unwrap().cogalois);
    }

    #[test]
    fn trivial_action_isomorphism_is_cogalois() {
        let gam = Arc::new(abelian(&[2, 2]));
        let gg = Arc::new(GammaGroup::trivial(gam.clone(), gam));
        let t = Triple::new(gg, &[0, 1, 2, 3]).unwrap();
        assert!(is_cogalois_triple(&t).unwrap().cogalois);
    }
}
