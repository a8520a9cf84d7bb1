//! The J/S coGalois connexion and the abelian-module connexions.

mod augment;
mod module;

pub use augment::{augmentation_check, augmentation_hom_count, augmentation_model};
pub use module::{
    cog_group, composition_check, dual_module, equivariant_homs, pairing_check, z1_module, CogData, DualModule, Z1Module,
};

use crate::bitset::ElemSet;
use crate::cocycle::{induced_cocycle, Triple};
use crate::error::{Error, Result};
use crate::operator::{Ideal, IdealLattice};
use crate::report::Report;
use std::collections::HashMap;
use std::sync::Arc;

/// J(Λ): the ideal generated by η(Λ).
pub fn op_j(t: &Triple, lam: &ElemSet) -> Result<Ideal> {
    if !t.delta.is_subset(lam) {
        return Err(Error::NotAboveKernel);
    }
    Ok(t.gg.ideal_closure(&t.image_of(lam)))
}

/// S(a) = η⁻¹(a), checked against the kernel of the induced cocycle.
pub fn op_s(t: &Triple, a: &Ideal) -> Result<ElemSet> {
    let s = t.preimage(a);
    let ta = induced_cocycle(t, a)?;
    if ta.delta != s {
        return Err(Error::Inconsistent("S(a) ≠ Ker η_a".into()));
    }
    Ok(s)
}

/// Tabulated J and S between L(Γ | Δ) and L(𝔊).
pub struct CoGaloisConnexion {
    pub domain: Vec<ElemSet>,
    domain_index: HashMap<ElemSet, usize>,
    pub ideals: Arc<IdealLattice>,
    pub j_table: Vec<usize>,
    pub s_table: Vec<usize>,
}

impl CoGaloisConnexion {
    pub fn new(t: &Triple) -> Result<Self> {
        let subs = t.gamma().subgroups()?;
        let domain: Vec<ElemSet> = subs.iter().filter(|h| t.delta.is_subset(h)).cloned().collect();
        let domain_index: HashMap<ElemSet, usize> =
            domain.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let ideals = t.gg.ideals()?;
        let j_table = domain.iter().map(|lam| ideals.smallest_containing(&t.image_of(lam))).collect();
        let s_table = ideals
            .nodes
            .iter()
            .map(|a| {
                domain_index
                    .get(&t.preimage(a))
                    .copied()
                    .ok_or_else(|| Error::Inconsistent("S(a) not a subgroup over Δ".into()))
            })
            .collect::<Result<_>>()?;
        Ok(CoGaloisConnexion { domain, domain_index, ideals, j_table, s_table })
    }

    pub fn domain_join(&self, t: &Triple, i: usize, j: usize) -> usize {
        let u: Vec<usize> = self.domain[i].union(&self.domain[j]).iter().collect();
        self.domain_index[&t.gamma().closure(&u)]
    }

    pub fn domain_meet(&self, i: usize, j: usize) -> usize {
        self.domain_index[&self.domain[i].intersection(&self.domain[j])]
    }

    /// S ∘ J = id on L(Γ | Δ) and J ∘ S = id on L(𝔊).
    pub fn is_perfect(&self) -> bool {
        (0..self.domain.len()).all(|i| self.s_table[self.j_table[i]] == i)
            && (0..self.ideals.len()).all(|a| self.j_table[self.s_table[a]] == a)
    }
}

/// Exhaustive check of the connexion laws on one triple.
pub fn verify_cogalois_connexion(t: &Triple) -> Result<Report> {
    let c = CoGaloisConnexion::new(t)?;
    let mut r = Report::new();
    let (d, l) = (&c.domain, &c.ideals);
    let tag = |s: &str| format!("{s} (|Γ|={}, |𝔊|={}, η={:?})", t.gamma().order(), t.g().order(), t.eta.values);
    for i in 0..d.len() {
        let j = c.j_table[i];
        r.check(t.gg.ideal_closure(&t.image_of(&d[i])) == l.nodes[j], || tag("J via closure"));
        r.check(d[i].is_subset(&d[c.s_table[j]]), || tag("Λ ⊆ SJ(Λ)"));
        r.check(c.j_table[c.s_table[j]] == j, || tag("JSJ = J"));
        for k in 0..d.len() {
            if d[i].is_subset(&d[k]) {
                r.check(l.nodes[j].is_subset(&l.nodes[c.j_table[k]]), || tag("J monotone"));
            }
            let jn = c.domain_join(t, i, k);
            r.check(c.j_table[jn] == l.join(j, c.j_table[k]), || tag("J preserves joins"));
        }
    }
    let kneser = t.is_surjective();
    for a in 0..l.len() {
        let s = c.s_table[a];
        r.check(l.nodes[c.j_table[s]].is_subset(&l.nodes[a]), || tag("JS(a) ⊆ a"));
        r.check(c.s_table[c.j_table[s]] == s, || tag("SJS = S"));
        if kneser {
            r.check(c.j_table[s] == a, || tag("JS = id on Kneser triple"));
        }
        for b in 0..l.len() {
            if l.nodes[a].is_subset(&l.nodes[b]) {
                r.check(d[s].is_subset(&d[c.s_table[b]]), || tag("S monotone"));
            }
            r.check(c.s_table[l.meet(a, b)] == c.domain_meet(s, c.s_table[b]), || tag("S preserves meets"));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::cocycle_from_generators;
    use crate::group::{abelian, cyclic};
    use crate::operator::GammaGroup;

    fn type_i() -> Triple {
        let v4 = Arc::new(abelian(&[2, 2]));
        let gg = Arc::new(GammaGroup::character(v4, Arc::new(cyclic(4)), &[1, 1, 3, 3]));
        // σ = 2, τ = 1
        let eta = cocycle_from_generators(&gg, &[(2, 1), (1, 2)]).unwrap();
        Triple::new_unchecked(gg, eta)
    }

    #[test]
    fn j_and_s_examples() {
        let t = type_i();
        assert_eq!(op_j(&t, &t.delta).unwrap().len(), 1);
        assert_eq!(op_j(&t, &t.gamma().full()).unwrap().len(), 4);
        let sigma = t.gamma().closure(&[2]);
        assert_eq!(op_j(&t, &sigma).unwrap().len(), 4);
        assert_eq!(op_s(&t, &t.g().trivial()).unwrap(), t.delta);
        assert_eq!(op_s(&t, &t.g().full()).unwrap().len(), 4);
        let r = verify_cogalois_connexion(&t).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        let c = CoGaloisConnexion::new(&t).unwrap();
        assert!(!c.is_perfect());
    }

    #[test]
    fn negation_triple_s_operator() {
        let gg = Arc::new(
            crate::operator::make_gamma_group(
                Arc::new(cyclic(2)),
                Arc::new(cyclic(4)),
                &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
            )
            .unwrap(),
        );
        let t = Triple::new(gg, &[0, 1]).unwrap();
        assert_eq!(op_s(&t, &ElemSet::from_iter(4, [0, 2])).unwrap().to_vec(), vec![0]);
        assert!(verify_cogalois_connexion(&t).unwrap().passed());
    }

    #[test]
    fn trivial_cocycle_laws() {
        let gg = Arc::new(GammaGroup::trivial(Arc::new(cyclic(4)), Arc::new(cyclic(2))));
        let t = Triple::new(gg, &[0; 4]).unwrap();
        let c = CoGaloisConnexion::new(&t).unwrap();
        assert!(c.j_table.iter().all(|&j| c.ideals.nodes[j].len() == 1));
        assert!(verify_cogalois_connexion(&t).unwrap().passed());
    }
}
