//! Finite commutative local rings and the triples built from them.

mod eisenstein;
mod field;
mod param;
mod quadratic;
mod units;

pub use eisenstein::{build_local_ring, EisensteinData};
pub use field::{field_triple, finite_field};
pub use param::{eta_param_kernel, KernelCheck, LocalKind, ParamModel};
pub use quadratic::{det_mod_p, quadratic_family, quadratic_ring, QuadVerdict};
pub use units::{principal_unit_triples, ring_class, MnkRingCase, RingClass, UnitTriples};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{factorize, FiniteGroup, DEFAULT_ORDER_BOUND};

/// Element-indexed tables with 0 the zero element.
#[derive(Clone, Debug)]
pub struct FiniteLocalRing {
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    pub one: usize,
    pub p: usize,
    /// characteristic p^n
    pub n: usize,
    pub maximal: ElemSet,
    /// 𝔪^0 = R, 𝔪^1 = 𝔪, ..., 𝔪^m = 0
    pub powers: Vec<ElemSet>,
    pub theta: Option<usize>,
}

impl FiniteLocalRing {
    /// Validates ring axioms (exhaustively up to 64 elements) and locality.
    pub fn from_tables(size: usize, add: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if size > DEFAULT_ORDER_BOUND {
            return Err(Error::OrderBoundExceeded { order: size, bound: DEFAULT_ORDER_BOUND });
        }
        let mut at = vec![0u32; size * size];
        let mut mt = vec![0u32; size * size];
        for x in 0..size {
            for y in 0..size {
                at[x * size + y] = add(x, y) as u32;
                mt[x * size + y] = mul(x, y) as u32;
            }
        }
        let a = |x: usize, y: usize| at[x * size + y] as usize;
        let m = |x: usize, y: usize| mt[x * size + y] as usize;
        let one = (0..size)
            .find(|&e| (0..size).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| Error::BadShape("no multiplicative identity".into()))?;
        if (0..size).any(|x| a(0, x) != x) {
            return Err(Error::BadShape("0 is not the additive identity".into()));
        }
        let exhaustive = size <= 64;
        for x in 0..size {
            for y in 0..size {
                if a(x, y) != a(y, x) || m(x, y) != m(y, x) {
                    return Err(Error::BadShape(format!("not commutative at ({x}, {y})")));
                }
                if exhaustive {
                    for z in 0..size {
                        if a(a(x, y), z) != a(x, a(y, z))
                            || m(m(x, y), z) != m(x, m(y, z))
                            || m(x, a(y, z)) != a(m(x, y), m(x, z))
                        {
                            return Err(Error::BadShape(format!("ring axiom fails at ({x}, {y}, {z})")));
                        }
                    }
                }
            }
        }
        let units = ElemSet::from_iter(size, (0..size).filter(|&x| (0..size).any(|y| m(x, y) == one)));
        let maximal = ElemSet::from_iter(size, (0..size).filter(|&x| !units.contains(x)));
        if maximal.iter().any(|x| maximal.iter().any(|y| units.contains(a(x, y)))) {
            return Err(Error::NotLocal);
        }
        let f = factorize(size);
        if f.len() > 1 {
            return Err(Error::NotLocal);
        }
        let p = f.first().map_or(1, |&(q, _)| q);
        let mut char_order = 1;
        let mut acc = one;
        while acc != 0 {
            acc = a(acc, one);
            char_order += 1;
        }
        let n = factorize(char_order).first().map_or(0, |&(_, k)| k);
        let mut ring = FiniteLocalRing { size, add: at, mul: mt, one, p, n, maximal, powers: Vec::new(), theta: None };
        ring.powers = ring.ideal_powers();
        ring.theta = ring.maximal.iter().find(|&t| ring.principal_ideal(t) == ring.maximal);
        Ok(ring)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y] as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.size).find(|&y| self.add(x, y) == 0).expect("additive inverse")
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    /// k·1
    pub fn int(&self, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, self.one))
    }

    pub fn is_unit(&self, x: usize) -> bool {
        !self.maximal.contains(x)
    }

    pub fn inv(&self, x: usize) -> Option<usize> {
        (0..self.size).find(|&y| self.mul(x, y) == self.one)
    }

    /// Nilpotency index m of 𝔪.
    pub fn nilpotency(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn residue_size(&self) -> usize {
        self.size / self.maximal.len()
    }

    pub fn is_principal(&self) -> bool {
        self.theta.is_some()
    }

    pub fn additive_group(&self) -> FiniteGroup {
        FiniteGroup::from_fn_unchecked(self.size, |x, y| self.add(x, y))
    }

    fn additive_span(&self, seed: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut set = ElemSet::from_iter(self.size, [0]);
        let mut frontier: Vec<usize> = vec![0];
        let gens: Vec<usize> = seed.into_iter().filter(|&x| x != 0).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.add(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn principal_ideal(&self, x: usize) -> ElemSet {
        ElemSet::from_iter(self.size, (0..self.size).map(|y| self.mul(x, y)))
    }

    fn ideal_powers(&self) -> Vec<ElemSet> {
        let mut out = vec![ElemSet::full(self.size), self.maximal.clone()];
        while out.last().unwrap().len() > 1 {
            let last = out.last().unwrap();
            let next = self.additive_span(
                last.iter().flat_map(|x| self.maximal.iter().map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)),
            );
            if next == *last {
                break;
            }
            out.push(next);
        }
        out
    }

    /// A subgroup of R^× as a group with `one` at index 0; returns the element list.
    pub fn unit_subgroup(&self, members: &ElemSet) -> (FiniteGroup, Vec<usize>) {
        let mut elems: Vec<usize> = vec![self.one];
        elems.extend(members.iter().filter(|&x| x != self.one));
        let mut index = vec![usize::MAX; self.size];
        for (i, &x) in elems.iter().enumerate() {
            index[x] = i;
        }
        let g = FiniteGroup::from_fn_unchecked(elems.len(), |a, b| index[self.mul(elems[a], elems[b])]);
        (g, elems)
    }

    pub fn unit_group(&self) -> (FiniteGroup, Vec<usize>) {
        let units = ElemSet::from_iter(self.size, (0..self.size).filter(|&x| self.is_unit(x)));
        self.unit_subgroup(&units)
    }

    /// U^(k) = 1 + 𝔪^k
    pub fn unit_level(&self, k: usize) -> ElemSet {
        let ideal = &self.powers[k.min(self.nilpotency())];
        ElemSet::from_iter(self.size, ideal.iter().map(|x| self.add(self.one, x)))
    }

    /// Γ = 1 + 𝔪
    pub fn principal_units(&self) -> (FiniteGroup, Vec<usize>) {
        self.unit_subgroup(&self.unit_level(1))
    }

    /// Largest e ≤ m with p·1 ∈ 𝔪^e.
    pub fn ramification(&self) -> usize {
        let pe = self.int(self.p);
        (0..=self.nilpotency()).rev().find(|&i| self.powers[i].contains(pe)).unwrap_or(0)
    }

    /// Largest i ≤ m with x ∈ 𝔪^i.
    pub fn valuation(&self, x: usize) -> usize {
        (0..=self.nilpotency()).rev().find(|&i| self.powers[i].contains(x)).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_mod_9() {
        let r = FiniteLocalRing::from_tables(9, |x, y| (x + y) % 9, |x, y| x * y % 9).unwrap();
        assert_eq!((r.p, r.n, r.nilpotency(), r.ramification()), (3, 2, 2, 1));
        assert_eq!(r.principal_units().0.order(), 3);
        assert!(r.is_principal());
        assert_eq!(r.unit_group().0.order(), 6);
    }

    #[test]
    fn product_ring_is_not_local() {
        let e = FiniteLocalRing::from_tables(6, |x, y| (x + y) % 6, |x, y| x * y % 6).unwrap_err();
        assert_eq!(e, Error::NotLocal);
    }
}
