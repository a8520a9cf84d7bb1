use super::{FiniteGroup, GroupMorphism};
use crate::error::Result;
use std::collections::{HashMap, VecDeque};

/// Anything homomorphisms can land in.
pub trait Target {
    fn size(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
    fn order_of(&self, a: usize) -> usize;
}

impl Target for FiniteGroup {
    fn size(&self) -> usize {
        self.order()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.mul(a, b)
    }
    fn order_of(&self, a: usize) -> usize {
        self.elem_order(a)
    }
}

/// A group of automorphisms of some group, composed as (a∘b)(x) = a(b(x)).
pub struct AutGroup {
    pub maps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    orders: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl AutGroup {
    pub fn new(maps: Vec<Vec<u32>>) -> Self {
        let index: HashMap<Vec<u32>, usize> =
            maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let k = maps.len();
        let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { b.iter().map(|&x| a[x as usize]).collect() };
        let table = (k <= 1024).then(|| {
            let mut t = vec![0u32; k * k];
            for i in 0..k {
                for j in 0..k {
                    t[i * k + j] = index[&compose(&maps[i], &maps[j])] as u32;
                }
            }
            t
        });
        let id: Vec<u32> = (0..maps[0].len() as u32).collect();
        let orders = maps
            .iter()
            .map(|m| {
                let mut cur = m.clone();
                let mut o = 1;
                while cur != id {
                    cur = compose(m, &cur);
                    o += 1;
                }
                o
            })
            .collect();
        AutGroup { maps, index, orders, table }
    }

    pub fn of(g: &FiniteGroup) -> Result<Self> {
        Ok(Self::new(g.automorphism_list()?.as_ref().clone()))
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

impl Target for AutGroup {
    fn size(&self) -> usize {
        self.maps.len()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.maps.len() + b] as usize,
            None => {
                let (x, y) = (&self.maps[a], &self.maps[b]);
                let c: Vec<u32> = y.iter().map(|&v| x[v as usize]).collect();
                self.index[&c]
            }
        }
    }
    fn order_of(&self, a: usize) -> usize {
        self.orders[a]
    }
}

const UNSET: u32 = u32::MAX;

/// Extend generator images to the generated subgroup; None if inconsistent.
fn extend<T: Target>(src: &FiniteGroup, dst: &T, gens: &[usize], imgs: &[usize], img: &mut Vec<u32>) -> bool {
    img.clear();
    img.resize(src.order(), UNSET);
    img[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = img[x] as usize;
        for (k, &s) in gens.iter().enumerate() {
            let z = src.mul(x, s);
            let w = dst.op(fx, imgs[k]) as u32;
            if img[z] == UNSET {
                img[z] = w;
                queue.push_back(z);
            } else if img[z] != w {
                return false;
            }
        }
    }
    true
}

/// Backtracking search over images of the greedy generators of `src`.
/// `visit` returns false to stop early.
pub fn hom_search<T: Target>(
    src: &FiniteGroup,
    dst: &T,
    bijective: bool,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) {
    if bijective && src.order() != dst.size() {
        return;
    }
    let gens = src.generators().to_vec();
    let mut imgs = Vec::with_capacity(gens.len());
    let mut scratch = Vec::new();
    rec(src, dst, bijective, &gens, &mut imgs, &mut scratch, visit);
}

fn rec<T: Target>(
    src: &FiniteGroup,
    dst: &T,
    bijective: bool,
    gens: &[usize],
    imgs: &mut Vec<usize>,
    scratch: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    let k = imgs.len();
    if k == gens.len() {
        if !extend(src, dst, gens, imgs, scratch) {
            return true;
        }
        return visit(scratch);
    }
    let og = src.elem_order(gens[k]);
    for y in 0..dst.size() {
        let oy = dst.order_of(y);
        if (bijective && oy != og) || og % oy != 0 {
            continue;
        }
        imgs.push(y);
        let ok = extend(src, dst, &gens[..=k], imgs, scratch) && (!bijective || injective_on_domain(scratch));
        if ok && !rec(src, dst, bijective, gens, imgs, scratch, visit) {
            imgs.pop();
            return false;
        }
        imgs.pop();
    }
    true
}

fn injective_on_domain(img: &[u32]) -> bool {
    let mut seen = std::collections::HashSet::new();
    img.iter().filter(|&&v| v != UNSET).all(|&v| seen.insert(v))
}

pub fn homomorphisms<T: Target>(src: &FiniteGroup, dst: &T) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    hom_search(src, dst, false, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

/// All automorphisms as image arrays, sorted lexicographically (identity first).
pub fn automorphisms(g: &FiniteGroup) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    hom_search(g, g, true, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out.sort();
    Ok(out)
}

pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupMorphism> {
    if g.order() != h.order() {
        return None;
    }
    let mut a = g.element_orders().to_vec();
    let mut b = h.element_orders().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b || g.is_abelian() != h.is_abelian() {
        return None;
    }
    let mut found = None;
    hom_search(g, h, true, &mut |m| {
        found = Some(GroupMorphism { map: m.iter().map(|&v| v as usize).collect() });
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product};

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&cyclic(4)).unwrap().len(), 2);
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(automorphisms(&v4).unwrap().len(), 6);
        let a8 = automorphisms(&cyclic(8)).unwrap();
        let images_of_one: Vec<u32> = a8.iter().map(|m| m[1]).collect();
        assert_eq!(images_of_one, vec![1, 3, 5, 7]);
    }

    #[test]
    fn isomorphism_basics() {
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert!(find_isomorphism(&cyclic(4), &v4).is_none());
        let z6 = cyclic(6);
        let p = direct_product(&cyclic(2), &cyclic(3));
        let iso = find_isomorphism(&z6, &p).unwrap();
        assert!(iso.is_morphism(&z6, &p) && iso.is_bijective(6));
    }

    #[test]
    fn hom_counts_match_brute_force() {
        // |Hom(Z_m, Z_n)| = gcd(m, n)
        for m in 1..=8 {
            for n in 1..=8 {
                let homs = homomorphisms(&cyclic(m), &cyclic(n));
                assert_eq!(homs.len(), crate::group::gcd(m, n));
            }
        }
    }
}
