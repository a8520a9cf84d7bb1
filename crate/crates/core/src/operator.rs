//! Operator groups: Γ acting on 𝔊 by automorphisms, ideals, semidirect products.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{semidirect_product, FiniteGroup, GroupJson, GroupMorphism, DEFAULT_ORDER_BOUND};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

pub type Ideal = ElemSet;

#[derive(Clone, Debug)]
pub struct GroupAction {
    pub gamma: Arc<FiniteGroup>,
    pub g: Arc<FiniteGroup>,
    act: Vec<u32>,
}

impl GroupAction {
    #[inline]
    pub fn apply(&self, gamma: usize, x: usize) -> usize {
        self.act[gamma * self.g.order() + x] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.gamma.order())
            .map(|c| (0..self.g.order()).map(|x| self.apply(c, x)).collect())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct GammaGroup {
    pub action: GroupAction,
    pub fix: ElemSet,
    ideals: OnceLock<Arc<IdealLattice>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaGroupJson {
    pub gamma: GroupJson,
    pub g: GroupJson,
    pub action: Vec<Vec<usize>>,
}

/// Validated operator group.
pub fn make_gamma_group(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>, act: &[Vec<usize>]) -> Result<GammaGroup> {
    let (m, n) = (gamma.order(), g.order());
    if act.len() != m {
        return Err(Error::BadLength { expected: m, got: act.len() });
    }
    for (c, row) in act.iter().enumerate() {
        if row.len() != n || row.iter().any(|&v| v >= n) {
            return Err(Error::NotAutomorphism(c));
        }
        if ElemSet::from_iter(n, row.iter().copied()).len() != n {
            return Err(Error::NotAutomorphism(c));
        }
        for x in 0..n {
            for y in 0..n {
                if row[g.mul(x, y)] != g.mul(row[x], row[y]) {
                    return Err(Error::NotAutomorphism(c));
                }
            }
        }
    }
    if act[0].iter().enumerate().any(|(x, &v)| v != x) {
        return Err(Error::NotAnAction(0, 0));
    }
    for s in 0..m {
        for t in 0..m {
            let st = gamma.mul(s, t);
            if (0..n).any(|x| act[st][x] != act[s][act[t][x]]) {
                return Err(Error::NotAnAction(s, t));
            }
        }
    }
    let flat = act.iter().flat_map(|r| r.iter().map(|&v| v as u32)).collect();
    Ok(GammaGroup::from_flat_unchecked(gamma, g, flat))
}

impl GammaGroup {
    pub(crate) fn from_flat_unchecked(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>, act: Vec<u32>) -> Self {
        let n = g.order();
        let fix = ElemSet::from_iter(
            gamma.order(),
            (0..gamma.order()).filter(|&c| (0..n).all(|x| act[c * n + x] as usize == x)),
        );
        GammaGroup { action: GroupAction { gamma, g, act }, fix, ideals: OnceLock::new() }
    }

    pub fn from_fn_unchecked(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>, f: impl Fn(usize, usize) -> usize) -> Self {
        let (m, n) = (gamma.order(), g.order());
        let mut act = vec![0u32; m * n];
        for c in 0..m {
            for x in 0..n {
                act[c * n + x] = f(c, x) as u32;
            }
        }
        Self::from_flat_unchecked(gamma, g, act)
    }

    pub fn trivial(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>) -> Self {
        Self::from_fn_unchecked(gamma, g, |_, x| x)
    }

    /// Action from a homomorphism Γ → Aut(𝔊) given by automorphism image arrays.
    pub fn from_hom(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>, auts: &[Vec<u32>], hom: &[u32]) -> Self {
        let n = g.order();
        let mut act = Vec::with_capacity(gamma.order() * n);
        for c in 0..gamma.order() {
            act.extend_from_slice(&auts[hom[c] as usize]);
        }
        Self::from_flat_unchecked(gamma, g, act)
    }

    /// Action determined by automorphisms at chosen elements of Γ (usually generators).
    pub fn from_generators(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>, images: &[(usize, Vec<usize>)]) -> Result<Self> {
        let n = g.order();
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; gamma.order()];
        rows[0] = Some((0..n).collect());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, img) in images {
                let z = gamma.mul(x, *s);
                let rx = rows[x].clone().unwrap();
                let w: Vec<usize> = (0..n).map(|y| rx[img[y]]).collect();
                match &rows[z] {
                    None => {
                        rows[z] = Some(w);
                        queue.push_back(z);
                    }
                    Some(r) if *r != w => return Err(Error::NotAnAction(x, *s)),
                    _ => {}
                }
            }
        }
        let rows: Vec<Vec<usize>> = rows.into_iter().map(|r| r.ok_or(Error::NotAnAction(0, 0))).collect::<Result<_>>()?;
        make_gamma_group(gamma, g, &rows)
    }

    /// Character action on an abelian group: γ acts as x ↦ x^{χ(γ)}.
    pub fn character(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>, chi: &[usize]) -> Self {
        let gg = g.clone();
        Self::from_fn_unchecked(gamma, g, move |c, x| gg.pow(x, chi[c]))
    }

    pub fn from_json(j: &GammaGroupJson) -> Result<Self> {
        let gamma = Arc::new(FiniteGroup::from_json(&j.gamma)?);
        let g = Arc::new(FiniteGroup::from_json(&j.g)?);
        make_gamma_group(gamma, g, &j.action)
    }

    pub fn to_json(&self) -> GammaGroupJson {
        GammaGroupJson { gamma: self.gamma().to_json(), g: self.g().to_json(), action: self.action.rows() }
    }

    #[inline]
    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.action.gamma
    }

    #[inline]
    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.action.g
    }

    #[inline]
    pub fn act(&self, gamma: usize, x: usize) -> usize {
        self.action.apply(gamma, x)
    }

    pub fn is_invariant(&self, s: &ElemSet) -> bool {
        self.gamma().generators().iter().all(|&c| s.iter().all(|x| s.contains(self.act(c, x))))
    }

    pub fn is_ideal(&self, s: &ElemSet) -> bool {
        self.g().is_subgroup(s) && self.g().is_normal(s) && self.is_invariant(s)
    }

    /// 𝔊^Γ
    pub fn fixed_points(&self) -> ElemSet {
        let gens = self.gamma().generators();
        ElemSet::from_iter(self.g().order(), (0..self.g().order()).filter(|&x| gens.iter().all(|&c| self.act(c, x) == x)))
    }

    /// Least ideal containing a set: normal and Γ-invariant closure.
    pub fn ideal_closure(&self, seed: &ElemSet) -> Ideal {
        let g = self.g();
        let mut gens: Vec<usize> = seed.iter().filter(|&x| x != 0).collect();
        let mut h = g.closure(&gens);
        loop {
            let mut grew = false;
            let snapshot = gens.clone();
            for &x in &snapshot {
                let cands = g
                    .generators()
                    .iter()
                    .map(|&s| g.conj(s, x))
                    .chain(self.gamma().generators().iter().map(|&c| self.act(c, x)))
                    .collect::<Vec<_>>();
                for y in cands {
                    if !h.contains(y) {
                        gens.push(y);
                        h = g.closure(&gens);
                        grew = true;
                    }
                }
            }
            if !grew {
                return h;
            }
        }
    }

    pub fn ideals(&self) -> Result<Arc<IdealLattice>> {
        if let Some(l) = self.ideals.get() {
            return Ok(l.clone());
        }
        let l = all_ideals(self)?;
        Ok(self.ideals.get_or_init(|| Arc::new(l)).clone())
    }
}

/// Ideals of a Γ-group with cached meet and join tables.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    pub nodes: Vec<Ideal>,
    index: HashMap<Ideal, usize>,
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
    /// node indices sorted by increasing size
    pub by_size: Vec<usize>,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, s: &ElemSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.nodes.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.nodes.len() + j]
    }

    pub fn bottom(&self) -> usize {
        self.by_size[0]
    }

    pub fn top(&self) -> usize {
        *self.by_size.last().unwrap()
    }

    /// Smallest ideal containing `s`.
    pub fn smallest_containing(&self, s: &ElemSet) -> usize {
        *self.by_size.iter().find(|&&i| s.is_subset(&self.nodes[i])).expect("top contains everything")
    }

    /// Maximal ideals among a subset given by a predicate.
    pub fn maximal_among(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        let sel: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        sel.iter()
            .copied()
            .filter(|&i| {
                !sel.iter().any(|&j| j != i && self.nodes[i].is_subset(&self.nodes[j]))
            })
            .collect()
    }

    pub fn minimal_among(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        let sel: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        sel.iter()
            .copied()
            .filter(|&i| {
                !sel.iter().any(|&j| j != i && self.nodes[j].is_subset(&self.nodes[i]))
            })
            .collect()
    }
}

pub fn all_ideals(gg: &GammaGroup) -> Result<IdealLattice> {
    let g = gg.g();
    if g.order() > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded { order: g.order(), bound: DEFAULT_ORDER_BOUND });
    }
    let nodes: Vec<Ideal> = g
        .subgroups()?
        .iter()
        .filter(|h| gg.is_invariant(h) && g.is_normal(h))
        .cloned()
        .collect();
    let index: HashMap<Ideal, usize> = nodes.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let k = nodes.len();
    let mut meet = vec![0; k * k];
    let mut join = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            meet[i * k + j] = index[&nodes[i].intersection(&nodes[j])];
            // product of normal subgroups
            let u: Vec<usize> = nodes[i].union(&nodes[j]).iter().collect();
            join[i * k + j] = index[&g.closure(&u)];
        }
    }
    let mut by_size: Vec<usize> = (0..k).collect();
    by_size.sort_by_key(|&i| nodes[i].len());
    Ok(IdealLattice { nodes, index, meet, join, by_size })
}

pub struct SemidirectData {
    pub e: Arc<FiniteGroup>,
    pub p: GroupMorphism,
    pub s1: GroupMorphism,
}

impl SemidirectData {
    /// Pair code of (x, γ).
    pub fn code(&self, x: usize, gamma: usize) -> usize {
        x * self.s1.map.len() + gamma
    }
}

/// 𝔊 ⋊ Γ on pairs coded x·|Γ| + γ.
pub fn semidirect(gg: &GammaGroup) -> Result<SemidirectData> {
    let (m, n) = (gg.gamma().order(), gg.g().order());
    if m * n > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded { order: m * n, bound: DEFAULT_ORDER_BOUND });
    }
    let e = semidirect_product(gg.g(), gg.gamma(), |c, y| gg.act(c, y));
    let p = GroupMorphism { map: (0..m * n).map(|z| z % m).collect() };
    let s1 = GroupMorphism { map: (0..m).collect() };
    Ok(SemidirectData { e: Arc::new(e), p, s1 })
}

/// Recover the action by conjugating the kernel with s1(Γ).
pub fn action_from_semidirect(sd: &SemidirectData, gamma_order: usize, g_order: usize) -> Vec<Vec<usize>> {
    (0..gamma_order)
        .map(|c| {
            (0..g_order)
                .map(|x| sd.e.conj(sd.s1.map[c], x * gamma_order) / gamma_order)
                .collect()
        })
        .collect()
}

/// Quotient Γ-group 𝔊/a with the induced action.
pub fn quotient_gamma(gg: &GammaGroup, a: &Ideal) -> Result<(GammaGroup, GroupMorphism)> {
    if !gg.is_ideal(a) {
        return Err(Error::NotAnIdeal);
    }
    let (q, proj) = gg.g().quotient(a)?;
    let (_, reps) = gg.g().coset_labels(a);
    let q = Arc::new(q);
    let qg = GammaGroup::from_fn_unchecked(gg.gamma().clone(), q, |c, k| proj.map[gg.act(c, reps[k])]);
    Ok((qg, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::{abelian, cyclic, find_isomorphism};

    fn negation_z4() -> GammaGroup {
        let z2 = Arc::new(cyclic(2));
        let z4 = Arc::new(cyclic(4));
        make_gamma_group(z2, z4, &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).unwrap()
    }

    #[test]
    fn fix_examples() {
        let gg = GammaGroup::trivial(Arc::new(cyclic(3)), Arc::new(cyclic(4)));
        assert_eq!(gg.fix.len(), 3);
        assert_eq!(negation_z4().fix.to_vec(), vec![0]);
        // V4 = ⟨σ, τ⟩ with σ = 2 (first factor), τ = 1; χ(σ) = −1, χ(τ) = 1
        let v4 = Arc::new(abelian(&[2, 2]));
        let chi = [1, 1, 3, 3];
        let gg = GammaGroup::character(v4, Arc::new(cyclic(4)), &chi);
        assert_eq!(gg.fix.to_vec(), vec![0, 1]);
    }

    #[test]
    fn rejects_bad_actions() {
        let z2 = Arc::new(cyclic(2));
        let z4 = Arc::new(cyclic(4));
        assert_eq!(
            make_gamma_group(z2.clone(), z4.clone(), &[vec![0, 1, 2, 3], vec![0, 2, 1, 3]]).unwrap_err(),
            Error::NotAutomorphism(1)
        );
        let z3 = Arc::new(cyclic(3));
        // order-3 element cannot act by an involution
        assert!(matches!(
            make_gamma_group(z3, z4, &[vec![0, 1, 2, 3], vec![0, 3, 2, 1], vec![0, 3, 2, 1]]),
            Err(Error::NotAnAction(..))
        ));
    }

    #[test]
    fn semidirect_negation_is_d8() {
        let gg = negation_z4();
        let sd = semidirect(&gg).unwrap();
        assert!(find_isomorphism(&sd.e, &catalog::dihedral(4)).is_some());
        assert_eq!(action_from_semidirect(&sd, 2, 4), gg.action.rows());
        let tr = GammaGroup::trivial(Arc::new(cyclic(2)), Arc::new(cyclic(4)));
        let sd = semidirect(&tr).unwrap();
        assert!(find_isomorphism(&sd.e, &abelian(&[4, 2])).is_some());
    }

    #[test]
    fn ideals_of_negation() {
        let gg = negation_z4();
        let l = gg.ideals().unwrap();
        assert_eq!(l.len(), 3);
        let (q, _) = quotient_gamma(&gg, &ElemSet::from_iter(4, [0, 2])).unwrap();
        assert_eq!(q.g().order(), 2);
        assert_eq!(q.fix.len(), 2);
        let (q, _) = quotient_gamma(&gg, &ElemSet::full(4)).unwrap();
        assert_eq!(q.g().order(), 1);
        assert_eq!(quotient_gamma(&gg, &ElemSet::from_iter(4, [0, 1])).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn ideal_lattices_are_modular() {
        let z2 = Arc::new(cyclic(2));
        for g in catalog::groups_up_to(8) {
            let gg = GammaGroup::trivial(z2.clone(), g.clone());
            let l = gg.ideals().unwrap();
            for a in 0..l.len() {
                for b in 0..l.len() {
                    for c in 0..l.len() {
                        if l.nodes[a].is_subset(&l.nodes[c]) {
                            assert_eq!(l.join(a, l.meet(b, c)), l.meet(l.join(a, b), c));
                        }
                    }
                }
            }
            for i in 0..l.len() {
                assert_eq!(gg.ideal_closure(&l.nodes[i]), l.nodes[i]);
            }
        }
    }
}
