//! mnK and mncG triples, isomorphism in Z¹, and exhaustive classification runs.

mod audit;
mod enumerate;
mod families;
mod iso;

pub use audit::{generated_ring, mnk_invariant_audit, EndRing};
pub use enumerate::{
    actions, enumerate_mncg, enumerate_mnk, units_group, Bounds, Certificate, ClassJson, ClassRecord, ClassificationRun, Filter,
    RunJson, RunKind,
};
pub use families::{
    d8_q_pair, family_iii_units, mncg_family_i, mncg_family_ii, mncg_family_iii, negation_z4_triple, prime_field_triple,
};
pub use iso::{find_triple_iso, triple_invariants, triples_isomorphic, TripleIso};

use crate::cocycle::Triple;
use crate::error::{Error, Result};
use crate::kneser::classify_ideals;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct IndexPair {
    pub ideal: Vec<usize>,
    /// (Γ : η⁻¹(a))
    pub gamma_index: usize,
    /// (𝔊 : a)
    pub g_index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MnkVerdict {
    pub mnk: bool,
    pub surjective: bool,
    pub normalized: bool,
    pub indices: Vec<IndexPair>,
}

pub fn is_mnk(t: &Triple) -> Result<MnkVerdict> {
    if !t.generating {
        return Err(Error::NotGenerating);
    }
    let ideals = t.gg.ideals()?;
    let (m, n) = (t.gamma().order(), t.g().order());
    let indices: Vec<IndexPair> = ideals
        .nodes
        .iter()
        .filter(|a| a.len() > 1)
        .map(|a| IndexPair { ideal: a.to_vec(), gamma_index: m / t.preimage(a).len(), g_index: n / a.len() })
        .collect();
    let surjective = t.is_surjective();
    let normalized = t.is_normalized();
    let mnk = !surjective && normalized && indices.iter().all(|p| p.gamma_index == p.g_index);
    Ok(MnkVerdict { mnk, surjective, normalized, indices })
}

/// Short-circuiting form of `is_mnk`.
pub fn is_mnk_fast(t: &Triple) -> Result<bool> {
    if !t.generating {
        return Err(Error::NotGenerating);
    }
    if t.is_surjective() || !t.is_normalized() {
        return Ok(false);
    }
    let (m, n) = (t.gamma().order(), t.g().order());
    Ok(t.gg.ideals()?.nodes.iter().filter(|a| a.len() > 1).all(|a| m / t.preimage(a).len() == n / a.len()))
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientVerdict {
    pub ideal: Vec<usize>,
    pub cogalois: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MncgVerdict {
    pub mncg: bool,
    pub normalized: bool,
    /// some Λ ⊇ Δ with η(Λ) not an ideal
    pub witness: Option<Vec<usize>>,
    pub quotients: Vec<QuotientVerdict>,
}

pub fn is_mncg(t: &Triple) -> Result<MncgVerdict> {
    if !t.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let c = classify_ideals(t)?;
    let bottom = c.ideals.bottom();
    let witness = t
        .gamma()
        .subgroups()?
        .iter()
        .find(|lam| t.delta.is_subset(lam) && !t.gg.is_ideal(&t.image_of(lam)))
        .map(|lam| lam.to_vec());
    if witness.is_some() == c.cogalois[bottom] {
        return Err(Error::Inconsistent("coGalois witness disagrees with ideal classification".into()));
    }
    let quotients: Vec<QuotientVerdict> = (0..c.ideals.len())
        .filter(|&i| i != bottom)
        .map(|i| QuotientVerdict { ideal: c.ideals.nodes[i].to_vec(), cogalois: c.cogalois[i] })
        .collect();
    let normalized = t.is_normalized();
    let mncg = witness.is_some() && normalized && quotients.iter().all(|q| q.cogalois);
    Ok(MncgVerdict { mncg, normalized, witness, quotients })
}

pub fn is_mncg_fast(t: &Triple) -> Result<bool> {
    if !t.is_surjective() {
        return Err(Error::NotSurjective);
    }
    if !t.is_normalized() {
        return Ok(false);
    }
    let c = classify_ideals(t)?;
    let bottom = c.ideals.bottom();
    Ok(!c.cogalois[bottom] && (0..c.ideals.len()).all(|i| i == bottom || c.cogalois[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remark_triple_is_mnk_with_non_simple_module() {
        let t = negation_z4_triple();
        let v = is_mnk(&t).unwrap();
        assert!(v.mnk);
        assert_eq!(v.indices.len(), 2);
        assert!(v.indices.iter().all(|p| p.gamma_index == p.g_index));
        assert_eq!(t.gg.ideals().unwrap().len(), 3);
    }

    #[test]
    fn field_triple_f3() {
        let t = prime_field_triple(3, 2).unwrap();
        assert!(is_mnk(&t).unwrap().mnk);
        let t7 = prime_field_triple(7, 3).unwrap();
        assert!(is_mnk(&t7).unwrap().mnk);
    }

    #[test]
    fn kneser_triples_are_not_mnk() {
        let t = mncg_family_i();
        assert!(t.is_surjective());
        assert!(!is_mnk(&t).unwrap().mnk);
    }

    #[test]
    fn mncg_families() {
        for t in [mncg_family_i(), mncg_family_ii().unwrap()] {
            let v = is_mncg(&t).unwrap();
            assert!(v.mncg, "{v:?}");
            assert!(is_mncg_fast(&t).unwrap());
        }
        for (p, r) in [(3, 2), (5, 2), (7, 2), (7, 3), (5, 4)] {
            for u in family_iii_units(p, r) {
                let t = mncg_family_iii(p, r, u).unwrap();
                assert!(is_mncg(&t).unwrap().mncg, "p={p} r={r} u={u}");
            }
        }
    }

    #[test]
    fn d8_q_forward_mncg_backward_cogalois() {
        let (a, b) = d8_q_pair().unwrap();
        assert!(a.is_injective() && a.is_surjective());
        assert!(is_mncg(&a).unwrap().mncg);
        // every subgroup of Q maps onto a normal invariant subgroup of D8
        let v = is_mncg(&b).unwrap();
        assert!(v.witness.is_none() && !v.mncg);
        assert!(crate::kneser::is_cogalois_triple(&b).unwrap().cogalois);
    }

    #[test]
    fn errors() {
        assert_eq!(is_mncg(&negation_z4_triple()).unwrap_err(), Error::NotSurjective);
    }

    #[test]
    fn iso_basics() {
        let t = negation_z4_triple();
        let iso = find_triple_iso(&t, &t).unwrap();
        assert_eq!(iso.phi.map, vec![0, 1]);
        assert_eq!(iso.psi.map, vec![0, 1, 2, 3]);
        assert!(find_triple_iso(&mncg_family_i(), &mncg_family_ii().unwrap()).is_none());
    }

    #[test]
    fn field_coboundaries_isomorphic() {
        use crate::cocycle::coboundary;
        use std::sync::Arc;
        let t = prime_field_triple(7, 3).unwrap();
        for g in 1..7 {
            let eta = coboundary(&t.gg, g).unwrap();
            let s = Triple::new_unchecked(Arc::clone(&t.gg), eta);
            let iso = find_triple_iso(&t, &s).expect("coboundaries differ by a unit");
            assert!(iso.verify(&t, &s));
        }
    }
}
