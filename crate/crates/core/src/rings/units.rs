use super::FiniteLocalRing;
use crate::bitset::ElemSet;
use crate::classify::{is_mnk_fast, triples_isomorphic};
use crate::cocycle::{cocycle_from_generators, enumerate_cocycles, Cocycle, Triple};
use crate::error::{Error, Result};
use crate::group::gcd;
use crate::operator::GammaGroup;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MnkRingCase {
    /// n = 1, m ≥ 2, (m, p) = 1
    I,
    /// p = n = 2, m = 2e
    II,
    /// p = n = 2, e ≥ 2, 0 < t < e, m = e + t odd
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RingClass {
    Principal { n: usize, m: usize, e: usize, t: usize, case: Option<MnkRingCase> },
    /// F_p ⊕ W with W² = 0, dim W = s ≥ 2
    Quadratic { s: usize },
    Unclassified,
}

impl std::fmt::Display for RingClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingClass::Principal { n, m, e, t, case } => {
                write!(f, "principal n={n} m={m} e={e} t={t}")?;
                match case {
                    Some(c) => write!(f, " case {c:?}"),
                    None => write!(f, " no case"),
                }
            }
            RingClass::Quadratic { s } => write!(f, "quadratic s={s}"),
            RingClass::Unclassified => write!(f, "UNCLASSIFIED"),
        }
    }
}

pub fn ring_class(r: &FiniteLocalRing) -> RingClass {
    let (p, n, m) = (r.p, r.n, r.nilpotency());
    if r.is_principal() {
        let e = if n == 1 { m } else { r.ramification() };
        let t = m - (n - 1) * e;
        let case = if n == 1 && m >= 2 && gcd(m, p) == 1 {
            Some(MnkRingCase::I)
        } else if p == 2 && n == 2 && m == 2 * e {
            Some(MnkRingCase::II)
        } else if p == 2 && n == 2 && e >= 2 && 0 < t && t < e && m % 2 == 1 {
            Some(MnkRingCase::III)
        } else {
            None
        };
        return RingClass::Principal { n, m, e, t, case };
    }
    if n == 1 && p % 2 == 1 && m == 2 && r.residue_size() == p {
        let s = r.maximal.len().ilog(p) as usize;
        return RingClass::Quadratic { s };
    }
    RingClass::Unclassified
}

/// Injective cocycles on (1 + 𝔪, R^+) and their redundancy classes.
#[derive(Clone, Debug)]
pub struct UnitTriples {
    pub class: RingClass,
    pub gg: Arc<GammaGroup>,
    /// lexicographic order; the first is the canonical one
    pub injective: Vec<Triple>,
    pub mnk: Vec<bool>,
    /// orbits under η ↦ uη (u ∈ R^×) and η ↦ η + β (β: Γ → 𝔊^Γ), as indices into `injective`
    pub redundancy_classes: Vec<Vec<usize>>,
    /// |R^×|·|Hom(Γ/⟨1+θ⟩Γ^p, Z/p)| when R is principal
    pub predicted_mnk_count: Option<usize>,
    /// mnK triples bucketed up to isomorphism in Z¹
    pub iso_classes: Vec<Vec<usize>>,
    /// a character of R^+ whose kernel contains no nonzero ideal, making R^+ ≅ R^∨
    pub pairing_nondegenerate: bool,
    /// η(1+θ^i) = θ^{i−1}, when p > m and this defines a cocycle
    pub theta_canonical: Option<Cocycle>,
}

impl UnitTriples {
    pub fn mnk_count(&self) -> usize {
        self.mnk.iter().filter(|&&b| b).count()
    }

    pub fn mnk_triples(&self) -> impl Iterator<Item = &Triple> {
        self.injective.iter().zip(&self.mnk).filter(|p| *p.1).map(|p| p.0)
    }

    /// Redundancy classes containing an mnK cocycle.
    pub fn mnk_classes(&self) -> usize {
        self.redundancy_classes.iter().filter(|c| c.iter().any(|&i| self.mnk[i])).count()
    }

    pub fn class_of(&self, eta: &Cocycle) -> Option<usize> {
        let i = self.injective.iter().position(|t| t.eta == *eta)?;
        self.redundancy_classes.iter().position(|c| c.contains(&i))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Whether R^+ carries a character ψ with (x, y) ↦ ψ(xy) nondegenerate.
pub fn pairing_nondegenerate(r: &FiniteLocalRing) -> Result<bool> {
    let add = r.additive_group();
    let nonzero_ideals: Vec<ElemSet> = (1..r.len()).map(|x| r.principal_ideal(x)).collect();
    for h in add.subgroups()?.iter() {
        if nonzero_ideals.iter().any(|i| i.is_subset(h)) {
            continue;
        }
        let (q, _) = add.quotient(h)?;
        if q.exponent() == q.order() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn hom_dual_rank(r: &FiniteLocalRing, gamma: &crate::group::FiniteGroup, elems: &[usize]) -> Option<usize> {
    let theta = r.theta?;
    let idx = elems.iter().position(|&x| x == r.add(r.one, theta))?;
    let mut seed = vec![idx];
    seed.extend((0..gamma.order()).map(|g| gamma.pow(g, r.p)));
    let sub = gamma.closure(&seed);
    Some(gamma.order() / sub.len())
}

pub fn principal_unit_triples(r: &FiniteLocalRing) -> Result<UnitTriples> {
    let (gamma, elems) = r.principal_units();
    let gamma = Arc::new(gamma.named("1+m"));
    let g = Arc::new(r.additive_group());
    let gg = Arc::new(GammaGroup::from_fn_unchecked(gamma.clone(), g, |c, x| r.mul(elems[c], x)));
    let all = enumerate_cocycles(&gg)?;
    let index: HashMap<&[u32], usize> = all.iter().enumerate().map(|(i, c)| (c.values.as_slice(), i)).collect();
    let g_fixed = ElemSet::from_iter(r.len(), (0..r.len()).filter(|&x| (0..gamma.order()).all(|c| gg.act(c, x) == x)));
    let betas: Vec<&Cocycle> = all.iter().filter(|c| c.values.iter().all(|&v| g_fixed.contains(v as usize))).collect();
    let (units, unit_elems) = r.unit_group();
    let unit_gens: Vec<usize> = units.generators().iter().map(|&i| unit_elems[i]).collect();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    for (i, c) in all.iter().enumerate() {
        let mut images: Vec<Vec<u32>> = unit_gens.iter().map(|&u| c.values.iter().map(|&v| r.mul(u, v as usize) as u32).collect()).collect();
        images.extend(betas.iter().map(|b| c.values.iter().zip(&b.values).map(|(&x, &y)| r.add(x as usize, y as usize) as u32).collect()));
        for img in images {
            let j = *index.get(img.as_slice()).ok_or_else(|| Error::Inconsistent("redundancy action leaves Z¹".into()))?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut injective = Vec::new();
    let mut roots = Vec::new();
    for (i, c) in all.iter().enumerate() {
        let t = Triple::new_unchecked(gg.clone(), c.clone());
        if t.is_injective() {
            injective.push(t);
            roots.push(find(&mut parent, i));
        }
    }
    let mut by_root: Vec<(usize, Vec<usize>)> = Vec::new();
    for (k, &root) in roots.iter().enumerate() {
        match by_root.iter_mut().find(|e| e.0 == root) {
            Some(e) => e.1.push(k),
            None => by_root.push((root, vec![k])),
        }
    }
    let redundancy_classes = by_root.into_iter().map(|e| e.1).collect();
    let mnk: Vec<bool> = injective.iter().map(|t| t.generating && is_mnk_fast(t).unwrap_or(false)).collect();
    let mut iso_classes: Vec<Vec<usize>> = Vec::new();
    for (k, t) in injective.iter().enumerate().filter(|p| mnk[p.0]) {
        let mut placed = false;
        for class in iso_classes.iter_mut() {
            if triples_isomorphic(&injective[class[0]], t)? {
                class.push(k);
                placed = true;
                break;
            }
        }
        if !placed {
            iso_classes.push(vec![k]);
        }
    }
    let predicted_mnk_count = hom_dual_rank(r, &gamma, &elems).map(|d| units.order() * d);
    let m = r.nilpotency();
    let theta_canonical = match r.theta {
        Some(theta) if r.p > m && m >= 2 => {
            let images: Vec<(usize, usize)> = (1..m)
                .map(|i| {
                    let x = r.add(r.one, r.pow(theta, i));
                    (elems.iter().position(|&y| y == x).expect("principal unit"), r.pow(theta, i - 1))
                })
                .collect();
            cocycle_from_generators(&gg, &images).ok()
        }
        _ => None,
    };
    Ok(UnitTriples {
        class: ring_class(r),
        gg,
        injective,
        mnk,
        redundancy_classes,
        predicted_mnk_count,
        iso_classes,
        pairing_nondegenerate: pairing_nondegenerate(r)?,
        theta_canonical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{negation_z4_triple, triples_isomorphic};
    use crate::rings::{build_local_ring, EisensteinData};

    fn poly(p: usize, m: usize) -> FiniteLocalRing {
        build_local_ring(&EisensteinData::truncated_polynomial(p, m)).unwrap()
    }

    #[test]
    fn case_i_rings_have_mnk() {
        for (p, m) in [(3, 2), (5, 2), (2, 3)] {
            let u = principal_unit_triples(&poly(p, m)).unwrap();
            assert!(matches!(u.class, RingClass::Principal { case: Some(MnkRingCase::I), .. }));
            assert!(u.mnk_count() > 0);
            assert_eq!(u.mnk_classes(), 1);
            assert_eq!(Some(u.mnk_count()), u.predicted_mnk_count);
            assert!(u.pairing_nondegenerate);
        }
    }

    #[test]
    fn f3_x2_generating_injective_are_mnk() {
        let u = principal_unit_triples(&poly(3, 2)).unwrap();
        assert_eq!(u.injective.len(), 8);
        for (t, &m) in u.injective.iter().zip(&u.mnk) {
            assert_eq!(m, t.generating);
        }
        assert_eq!(u.iso_classes.len(), 1);
        let c = u.theta_canonical.clone().unwrap();
        assert_eq!(u.class_of(&c), u.class_of(&u.injective[0].eta));
    }

    #[test]
    fn p_divides_m_has_none() {
        for (p, m) in [(3, 3), (2, 2), (2, 4)] {
            let u = principal_unit_triples(&poly(p, m)).unwrap();
            assert!(matches!(u.class, RingClass::Principal { case: None, .. }));
            assert_eq!(u.mnk_count(), 0, "F_{p}[x]/(x^{m})");
        }
    }

    #[test]
    fn z4_is_the_negation_triple() {
        let r = build_local_ring(&EisensteinData::new(2, 2, 1, 1, vec![1]).unwrap()).unwrap();
        let u = principal_unit_triples(&r).unwrap();
        assert!(matches!(u.class, RingClass::Principal { case: Some(MnkRingCase::II), .. }));
        assert_eq!(u.mnk_count(), 2);
        let remark = negation_z4_triple();
        for t in u.mnk_triples() {
            assert!(triples_isomorphic(t, &remark).unwrap());
        }
    }

    #[test]
    fn cases_ii_and_iii_and_excluded() {
        let case = |d: EisensteinData| {
            let r = build_local_ring(&d).unwrap();
            let u = principal_unit_triples(&r).unwrap();
            let RingClass::Principal { case, .. } = u.class else { panic!() };
            (case, u.mnk_count() > 0)
        };
        assert_eq!(case(EisensteinData::new(2, 2, 2, 2, vec![1, 1]).unwrap()), (Some(MnkRingCase::II), true));
        assert_eq!(case(EisensteinData::truncation(2, 2, vec![1, 0], 3)), (Some(MnkRingCase::III), true));
        assert_eq!(case(EisensteinData::new(2, 3, 1, 1, vec![1]).unwrap()), (None, false));
        assert_eq!(case(EisensteinData::new(3, 2, 1, 1, vec![1]).unwrap()), (None, false));
    }
}
