use super::FiniteGroup;
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

/// All subgroups by cyclic extension, canonically sorted.
/// Returns None when more than `cap` subgroups turn up.
pub fn enumerate_subgroups(g: &FiniteGroup, cap: Option<usize>) -> Option<Vec<ElemSet>> {
    let n = g.order();
    let mut cyclic_gens: Vec<usize> = Vec::new();
    let mut seen: HashMap<ElemSet, Vec<usize>> = HashMap::new();
    for x in 0..n {
        let c = g.closure(&[x]);
        if !seen.contains_key(&c) {
            seen.insert(c, vec![x]);
            cyclic_gens.push(x);
        }
    }
    let cyclic: Vec<ElemSet> = cyclic_gens.iter().map(|&x| g.closure(&[x])).collect();
    let mut frontier: Vec<ElemSet> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            let hg = seen[h].clone();
            for (ci, c) in cyclic.iter().enumerate() {
                if c.is_subset(h) {
                    continue;
                }
                let mut gens = hg.clone();
                gens.push(cyclic_gens[ci]);
                let k = g.closure(&gens);
                if !seen.contains_key(&k) {
                    seen.insert(k.clone(), gens);
                    next.push(k);
                    if cap.is_some_and(|c| seen.len() > c) {
                        return None;
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<ElemSet> = seen.into_keys().collect();
    out.sort_by(|a, b| a.lex_cmp(b));
    Some(out)
}

/// Subgroups, optionally restricted to those over a base subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub parent: Arc<FiniteGroup>,
    pub nodes: Vec<ElemSet>,
    index: HashMap<ElemSet, usize>,
}

impl SubgroupLattice {
    pub fn new(parent: Arc<FiniteGroup>, nodes: Vec<ElemSet>) -> Self {
        let index = nodes.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        SubgroupLattice { parent, nodes, index }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, s: &ElemSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.index_of(&self.nodes[i].intersection(&self.nodes[j]))
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let u = self.nodes[i].union(&self.nodes[j]);
        let gens: Vec<usize> = u.iter().collect();
        self.index_of(&self.parent.closure(&gens))
    }

    pub fn bottom(&self) -> usize {
        (0..self.nodes.len()).min_by_key(|&i| self.nodes[i].len()).unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.nodes.len()).max_by_key(|&i| self.nodes[i].len()).unwrap()
    }
}

pub fn all_subgroups(g: &Arc<FiniteGroup>, above: Option<&ElemSet>, bound: usize) -> Result<SubgroupLattice> {
    if g.order() > bound {
        return Err(Error::OrderBoundExceeded { order: g.order(), bound });
    }
    let all = g.subgroups_bounded(bound)?;
    let nodes = match above {
        Some(b) => all.iter().filter(|h| b.is_subset(h)).cloned().collect(),
        None => all.as_ref().clone(),
    };
    Ok(SubgroupLattice::new(g.clone(), nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, DEFAULT_ORDER_BOUND};

    fn brute_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u32..(1 << n))
            .filter(|&mask| {
                let s = ElemSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1));
                g.is_subgroup(&s)
            })
            .count()
    }

    #[test]
    fn small_lattices() {
        let z4 = Arc::new(cyclic(4));
        let l = all_subgroups(&z4, None, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(l.len(), 3);
        let v4 = Arc::new(direct_product(&cyclic(2), &cyclic(2)));
        assert_eq!(all_subgroups(&v4, None, DEFAULT_ORDER_BOUND).unwrap().len(), 5);
        let above = ElemSet::from_iter(4, [0, 2]);
        assert_eq!(all_subgroups(&z4, Some(&above), DEFAULT_ORDER_BOUND).unwrap().len(), 2);
        assert!(all_subgroups(&z4, None, 3).is_err());
    }

    #[test]
    fn cyclic_extension_matches_subset_scan() {
        for g in [cyclic(6), cyclic(8), direct_product(&cyclic(2), &cyclic(4)), direct_product(&cyclic(2), &cyclic(6))] {
            let l = enumerate_subgroups(&g, None).unwrap();
            assert_eq!(l.len(), brute_subgroup_count(&g));
        }
    }

    #[test]
    fn meet_and_join_closed() {
        let g = Arc::new(direct_product(&cyclic(2), &cyclic(4)));
        let l = all_subgroups(&g, None, DEFAULT_ORDER_BOUND).unwrap();
        for i in 0..l.len() {
            for j in 0..l.len() {
                assert!(l.meet(i, j).is_some());
                assert!(l.join(i, j).is_some());
            }
        }
    }
}
