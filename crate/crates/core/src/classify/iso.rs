use crate::cocycle::Triple;
use crate::group::{hom_search, GroupMorphism};
use std::collections::VecDeque;

const UNSET: u32 = u32::MAX;

/// An isomorphism in Z¹: φ: Γ → Γ′, ψ: 𝔊 → 𝔊′ with ψ(γg) = φ(γ)ψ(g) and ψ∘η = η′∘φ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleIso {
    pub phi: GroupMorphism,
    pub psi: GroupMorphism,
}

impl TripleIso {
    pub fn verify(&self, t1: &Triple, t2: &Triple) -> bool {
        let (phi, psi) = (&self.phi.map, &self.psi.map);
        self.phi.is_morphism(t1.gamma(), t2.gamma())
            && self.phi.is_bijective(t2.gamma().order())
            && self.psi.is_morphism(t1.g(), t2.g())
            && self.psi.is_bijective(t2.g().order())
            && (0..t1.gamma().order()).all(|c| {
                psi[t1.eta(c)] == t2.eta(phi[c])
                    && (0..t1.g().order()).all(|x| psi[t1.gg.act(c, x)] == t2.gg.act(phi[c], psi[x]))
            })
    }
}

/// Cheap isomorphism invariants; equal for isomorphic triples.
pub fn triple_invariants(t: &Triple) -> Vec<usize> {
    let (gamma, g) = (t.gamma(), t.g());
    let mut k = vec![
        gamma.order(),
        g.order(),
        t.delta.len(),
        t.image.len(),
        t.fix().len(),
        t.gg.fixed_points().len(),
        usize::from(t.generating),
        usize::from(gamma.is_abelian()),
        usize::from(g.is_abelian()),
    ];
    let mut og = gamma.element_orders().to_vec();
    og.sort_unstable();
    k.extend(og);
    let mut oh = g.element_orders().to_vec();
    oh.sort_unstable();
    k.extend(oh);
    let mut per: Vec<usize> = (0..gamma.order())
        .map(|c| (gamma.elem_order(c) * 64 + g.elem_order(t.eta(c))) * 2 + usize::from(t.fix().contains(c)))
        .collect();
    per.sort_unstable();
    k.extend(per);
    if let Ok(l) = t.gg.ideals() {
        let mut sizes: Vec<usize> = l.nodes.iter().map(|a| a.len() * 4096 + t.preimage(a).len()).collect();
        sizes.sort_unstable();
        k.push(usize::MAX);
        k.extend(sizes);
    }
    k
}

fn psi_from_generating(t1: &Triple, t2: &Triple, phi: &[u32]) -> Option<Vec<u32>> {
    let (g1, g2) = (t1.g(), t2.g());
    let mut psi = vec![UNSET; g1.order()];
    for c in 0..t1.gamma().order() {
        let (x, y) = (t1.eta(c), t2.eta(phi[c] as usize) as u32);
        if psi[x] != UNSET && psi[x] != y {
            return None;
        }
        psi[x] = y;
    }
    let gens: Vec<usize> = t1.image.iter().filter(|&x| x != 0).collect();
    let mut queue: VecDeque<usize> = (0..g1.order()).filter(|&x| psi[x] != UNSET).collect();
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let z = g1.mul(x, s);
            let w = g2.mul(psi[x] as usize, psi[s] as usize) as u32;
            if psi[z] == UNSET {
                psi[z] = w;
                queue.push_back(z);
            } else if psi[z] != w {
                return None;
            }
        }
    }
    psi.iter().all(|&v| v != UNSET).then_some(psi)
}

fn candidate(t1: &Triple, t2: &Triple, phi: &[u32], psi: &[u32]) -> Option<TripleIso> {
    let iso = TripleIso {
        phi: GroupMorphism { map: phi.iter().map(|&v| v as usize).collect() },
        psi: GroupMorphism { map: psi.iter().map(|&v| v as usize).collect() },
    };
    iso.verify(t1, t2).then_some(iso)
}

/// First isomorphism t1 → t2 in search order; the identity is tried first when the tables coincide.
pub fn find_triple_iso(t1: &Triple, t2: &Triple) -> Option<TripleIso> {
    if t1.gamma().order() != t2.gamma().order()
        || t1.g().order() != t2.g().order()
        || t1.delta.len() != t2.delta.len()
        || t1.image.len() != t2.image.len()
        || t1.generating != t2.generating
    {
        return None;
    }
    if t1.gamma().as_ref() == t2.gamma().as_ref() && t1.g().as_ref() == t2.g().as_ref() {
        let id_g: Vec<u32> = (0..t1.gamma().order() as u32).collect();
        let id_h: Vec<u32> = (0..t1.g().order() as u32).collect();
        if let Some(iso) = candidate(t1, t2, &id_g, &id_h) {
            return Some(iso);
        }
    }
    let psis: Option<Vec<Vec<u32>>> = (!t1.generating).then(|| {
        let mut out = Vec::new();
        hom_search(t1.g(), t2.g().as_ref(), true, &mut |m| {
            out.push(m.to_vec());
            true
        });
        out
    });
    let mut found = None;
    hom_search(t1.gamma(), t2.gamma().as_ref(), true, &mut |phi| {
        if (0..t1.gamma().order()).any(|c| t1.fix().contains(c) != t2.fix().contains(phi[c] as usize)) {
            return true;
        }
        found = match &psis {
            None => psi_from_generating(t1, t2, phi).and_then(|psi| candidate(t1, t2, phi, &psi)),
            Some(list) => list.iter().find_map(|psi| {
                (0..t1.gamma().order())
                    .all(|c| psi[t1.eta(c)] as usize == t2.eta(phi[c] as usize))
                    .then(|| candidate(t1, t2, phi, psi))
                    .flatten()
            }),
        };
        found.is_none()
    });
    found
}

pub fn triples_isomorphic(t1: &Triple, t2: &Triple) -> crate::Result<bool> {
    Ok(find_triple_iso(t1, t2).is_some())
}
