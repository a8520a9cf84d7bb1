//! Finite groups as multiplication tables.

mod hom;
mod lattice;

pub use hom::{automorphisms, find_isomorphism, hom_search, homomorphisms, AutGroup, Target};
pub use lattice::{all_subgroups, enumerate_subgroups, SubgroupLattice};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub const DEFAULT_ORDER_BOUND: usize = 1024;

pub type Subgroup = ElemSet;

#[derive(Clone)]
pub struct FiniteGroup {
    name: Option<String>,
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    orders: OnceLock<Vec<usize>>,
    gens: OnceLock<Vec<usize>>,
    subgroups: OnceLock<Arc<Vec<ElemSet>>>,
    autos: OnceLock<Arc<Vec<Vec<u32>>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name.as_deref().unwrap_or("?"), self.n)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}
impl Eq for FiniteGroup {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMorphism {
    pub map: Vec<usize>,
}

impl GroupMorphism {
    pub fn is_morphism(&self, src: &FiniteGroup, dst: &FiniteGroup) -> bool {
        self.map.len() == src.order()
            && self.map[0] == 0
            && (0..src.order()).all(|x| {
                (0..src.order()).all(|y| self.map[src.mul(x, y)] == dst.mul(self.map[x], self.map[y]))
            })
    }

    pub fn is_bijective(&self, dst_order: usize) -> bool {
        self.map.len() == dst_order && ElemSet::from_iter(dst_order, self.map.iter().copied()).len() == dst_order
    }

    pub fn kernel(&self) -> ElemSet {
        ElemSet::from_iter(self.map.len(), (0..self.map.len()).filter(|&x| self.map[x] == 0))
    }
}

/// Validate a table and build a group.
pub fn make_group(table: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::BadTable(0, 0));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::BadTable(i, row.len()));
        }
        if let Some(j) = row.iter().position(|&v| v >= n) {
            return Err(Error::BadTable(i, j));
        }
    }
    for x in 0..n {
        if table[0][x] != x || table[x][0] != x {
            return Err(Error::NoIdentity(x));
        }
    }
    let mut inv = vec![0u32; n];
    for x in 0..n {
        match (0..n).find(|&y| table[x][y] == 0 && table[y][x] == 0) {
            Some(y) => inv[x] = y as u32,
            None => return Err(Error::NoInverse(x)),
        }
    }
    let flat: Vec<u32> = table.iter().flat_map(|r| r.iter().map(|&v| v as u32)).collect();
    let at = |a: usize, b: usize| flat[a * n + b] as usize;
    let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
    if n <= 64 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
    } else {
        // Latin property first, then a deterministic sample of triples.
        for a in 0..n {
            let mut row = ElemSet::empty(n);
            let mut col = ElemSet::empty(n);
            for b in 0..n {
                row.insert(at(a, b));
                col.insert(at(b, a));
            }
            if row.len() != n || col.len() != n {
                return Err(Error::NoInverse(a));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..200_000 {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if !assoc(a, b, c) {
                return Err(Error::NotAssociative(a, b, c));
            }
        }
    }
    Ok(FiniteGroup::from_flat_unchecked(n, flat, inv))
}

impl FiniteGroup {
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<u32>, inv: Vec<u32>) -> Self {
        FiniteGroup {
            name: None,
            n,
            table,
            inv,
            orders: OnceLock::new(),
            gens: OnceLock::new(),
            subgroups: OnceLock::new(),
            autos: OnceLock::new(),
        }
    }

    /// Build from a closure known to define a group law with identity 0.
    pub(crate) fn from_fn_unchecked(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = f(a, b) as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("inverse") as u32;
        }
        Self::from_flat_unchecked(n, table, inv)
    }

    pub fn from_json(j: &GroupJson) -> Result<FiniteGroup> {
        if j.order != j.table.len() {
            return Err(Error::BadTable(j.table.len(), j.order));
        }
        let mut g = make_group(&j.table)?;
        g.name = j.name.clone();
        Ok(g)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson { name: self.name.clone(), order: self.n, table: self.table_rows() }
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    /// g x g⁻¹
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elem_order(&self, a: usize) -> usize {
        self.element_orders()[a]
    }

    pub fn element_orders(&self) -> &[usize] {
        self.orders.get_or_init(|| {
            (0..self.n)
                .map(|a| {
                    let mut k = 1;
                    let mut x = a;
                    while x != 0 {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn exponent(&self) -> usize {
        self.element_orders().iter().fold(1, |l, &o| lcm(l, o))
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn full(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn trivial(&self) -> ElemSet {
        ElemSet::from_iter(self.n, [0])
    }

    /// Closure of a generator list, starting from the identity.
    pub fn closure(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::empty(self.n);
        set.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn generated_subgroup(&self, seed: &[usize]) -> Subgroup {
        self.closure(seed)
    }

    pub fn is_subgroup(&self, s: &ElemSet) -> bool {
        s.contains(0) && s.iter().all(|a| s.iter().all(|b| s.contains(self.mul(a, b))))
    }

    /// Greedy minimal generating set: repeatedly take the element enlarging the span most.
    pub fn generators(&self) -> &[usize] {
        self.gens.get_or_init(|| greedy_generators(self, &self.full()))
    }

    /// A small generating list for a subgroup.
    pub fn subgroup_generators(&self, h: &ElemSet) -> Vec<usize> {
        greedy_generators(self, h)
    }

    pub fn is_normal(&self, h: &ElemSet) -> bool {
        let hg = self.subgroup_generators(h);
        self.generators().iter().all(|&g| hg.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        ElemSet::from_iter(
            self.n,
            (0..self.n).filter(|&x| gens.iter().all(|&g| self.mul(g, x) == self.mul(x, g))),
        )
    }

    pub fn is_p_group(&self) -> Option<usize> {
        let f = factorize(self.n);
        if f.len() == 1 {
            Some(f[0].0)
        } else {
            None
        }
    }

    pub fn subgroups(&self) -> Result<Arc<Vec<ElemSet>>> {
        self.subgroups_bounded(DEFAULT_ORDER_BOUND)
    }

    pub fn subgroups_bounded(&self, bound: usize) -> Result<Arc<Vec<ElemSet>>> {
        if let Some(s) = self.subgroups.get() {
            return Ok(s.clone());
        }
        if self.n > bound {
            return Err(Error::OrderBoundExceeded { order: self.n, bound });
        }
        let list = enumerate_subgroups(self, None).expect("uncapped");
        Ok(self.subgroups.get_or_init(|| Arc::new(list)).clone())
    }

    pub fn normal_subgroups(&self) -> Result<Vec<ElemSet>> {
        Ok(self.subgroups()?.iter().filter(|h| self.is_normal(h)).cloned().collect())
    }

    pub fn automorphism_list(&self) -> Result<Arc<Vec<Vec<u32>>>> {
        if let Some(a) = self.autos.get() {
            return Ok(a.clone());
        }
        if self.n > DEFAULT_ORDER_BOUND {
            return Err(Error::OrderBoundExceeded { order: self.n, bound: DEFAULT_ORDER_BOUND });
        }
        let list = automorphisms(self)?;
        Ok(self.autos.get_or_init(|| Arc::new(list)).clone())
    }

    /// Sylow p-subgroup when it is normal (unique), as the set of p-elements.
    pub fn normal_sylow(&self, p: usize) -> Option<ElemSet> {
        let set = ElemSet::from_iter(
            self.n,
            (0..self.n).filter(|&x| factorize(self.elem_order(x)).iter().all(|&(q, _)| q == p)),
        );
        let pk = p.pow(factorize(self.n).iter().find(|&&(q, _)| q == p).map_or(0, |&(_, k)| k as u32));
        (set.len() == pk && self.is_subgroup(&set)).then_some(set)
    }

    pub fn is_nilpotent(&self) -> bool {
        factorize(self.n).iter().all(|&(p, _)| self.normal_sylow(p).is_some())
    }

    /// Cosets gN keyed by least representative; returns (coset id per element, representatives).
    pub fn coset_labels(&self, nsub: &ElemSet) -> (Vec<usize>, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if label[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for h in nsub.iter() {
                label[self.mul(x, h)] = id;
            }
        }
        (label, reps)
    }

    /// Quotient by a normal subgroup, with projection.
    pub fn quotient(&self, nsub: &ElemSet) -> Result<(FiniteGroup, GroupMorphism)> {
        if !self.is_subgroup(nsub) || !self.is_normal(nsub) {
            return Err(Error::NotNormal);
        }
        let (label, reps) = self.coset_labels(nsub);
        let k = reps.len();
        let q = FiniteGroup::from_fn_unchecked(k, |a, b| label[self.mul(reps[a], reps[b])]);
        Ok((q, GroupMorphism { map: label }))
    }

    pub fn image_set(&self, map: &[usize], s: &ElemSet, target_order: usize) -> ElemSet {
        ElemSet::from_iter(target_order, s.iter().map(|x| map[x]))
    }
}

fn greedy_generators(g: &FiniteGroup, h: &ElemSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.trivial();
    while span.len() < h.len() {
        let mut best = None;
        let mut best_len = 0;
        for x in h.iter() {
            if span.contains(x) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let l = g.closure(&trial).len();
            if l > best_len {
                best_len = l;
                best = Some(x);
                if l == h.len() {
                    break;
                }
            }
        }
        gens.push(best.expect("span grows"));
        span = g.closure(&gens);
    }
    gens
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let m = b.order();
    FiniteGroup::from_fn_unchecked(a.order() * m, |x, y| {
        a.mul(x / m, y / m) * m + b.mul(x % m, y % m)
    })
}

pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_fn_unchecked(n, |a, b| (a + b) % n).named(format!("Z{n}"))
}

/// Abelian group Z/n1 × Z/n2 × ...
pub fn abelian(factors: &[usize]) -> FiniteGroup {
    let mut g = cyclic(1);
    for &f in factors {
        g = direct_product(&g, &cyclic(f));
    }
    let name = factors.iter().map(|f| format!("Z{f}")).collect::<Vec<_>>().join("x");
    g.named(if factors.is_empty() { "Z1".to_string() } else { name })
}

/// ⟨a, b | a^n = 1, b^m = a^t, b a b⁻¹ = a^r⟩ on elements a^i b^j coded i·m + j.
pub fn metacyclic(n: usize, m: usize, r: usize, t: usize) -> Result<FiniteGroup> {
    let mut rm = 1;
    for _ in 0..m {
        rm = rm * r % n.max(1);
    }
    if n > 1 && (rm != 1 % n || (t * r) % n != t % n || gcd(r, n) != 1) {
        return Err(Error::BadParameters(format!("metacyclic({n},{m},{r},{t})")));
    }
    let rpow: Vec<usize> = (0..m)
        .scan(1usize, |acc, _| {
            let v = *acc;
            *acc = *acc * r % n.max(1);
            Some(v)
        })
        .collect();
    let g = FiniteGroup::from_fn_unchecked(n * m, |x, y| {
        let (i, j) = (x / m, x % m);
        let (k, l) = (y / m, y % m);
        let mut e = i + k * rpow[j];
        let mut f = j + l;
        if f >= m {
            f -= m;
            e += t;
        }
        (e % n) * m + f
    });
    Ok(g)
}

/// N ⋊ H on pairs coded x·|H| + h, with product (x, g)(y, d) = (x·g(y), gd).
pub fn semidirect_product(n: &FiniteGroup, h: &FiniteGroup, act: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let k = h.order();
    FiniteGroup::from_fn_unchecked(n.order() * k, |p, q| {
        let (x, g) = (p / k, p % k);
        let (y, d) = (q / k, q % k);
        n.mul(x, act(g, y)) * k + h.mul(g, d)
    })
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn factorize(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_table() -> Vec<Vec<usize>> {
        // permutations of {0,1,2}, composed as (a∘b)(i) = a(b(i))
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect()
    }

    #[test]
    fn trivial_and_cyclic() {
        let g = make_group(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let z4: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        let g = make_group(&z4).unwrap();
        assert_eq!(g.inv(1), 3);
    }

    #[test]
    fn perturbed_s3_is_rejected() {
        let mut t = s3_table();
        assert!(make_group(&t).is_ok());
        // swap two entries of a row to keep it Latin but break associativity
        let (a, b) = (t[1][2], t[1][3]);
        t[1][2] = b;
        t[1][3] = a;
        assert!(matches!(make_group(&t), Err(Error::NotAssociative(..)) | Err(Error::NoInverse(_))));
        let mut t = s3_table();
        t[0][1] = 2;
        assert_eq!(make_group(&t).unwrap_err(), Error::NoIdentity(1));
    }

    #[test]
    fn generated() {
        let z4 = cyclic(4);
        assert_eq!(z4.generated_subgroup(&[]).to_vec(), vec![0]);
        assert_eq!(z4.generated_subgroup(&[2]).to_vec(), vec![0, 2]);
        let s3 = make_group(&s3_table()).unwrap();
        assert_eq!(s3.generated_subgroup(&[1, 4]).len(), 6);
    }

    #[test]
    fn quotients() {
        let z4 = cyclic(4);
        let (q, p) = z4.quotient(&ElemSet::from_iter(4, [0, 2])).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(p.kernel().to_vec(), vec![0, 2]);
        let s3 = make_group(&s3_table()).unwrap();
        let a3 = s3.generated_subgroup(&[4]);
        assert_eq!(s3.quotient(&a3).unwrap().0.order(), 2);
        assert_eq!(s3.quotient(&s3.generated_subgroup(&[1])).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(is_prime(13));
        assert!(!is_prime(1));
    }
}
