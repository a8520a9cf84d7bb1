//! Built-in small groups: every group of order at most 16, plus the
//! nilpotent groups of orders 17..=24 that are not of prime-power order.

use crate::group::{abelian, cyclic, direct_product, metacyclic, semidirect_product, FiniteGroup};
use std::sync::{Arc, OnceLock};

fn meta(n: usize, m: usize, r: usize, t: usize, name: &str) -> FiniteGroup {
    metacyclic(n, m, r, t).expect("catalog parameters").named(name)
}

pub fn dihedral(n: usize) -> FiniteGroup {
    meta(n, 2, n - 1, 0, &format!("D{}", 2 * n))
}

pub fn quaternion() -> FiniteGroup {
    meta(4, 2, 3, 2, "Q8")
}

pub fn alternating4() -> FiniteGroup {
    // V4 coded 2a+b; the Z3 generator cycles 1 -> 2 -> 3 -> 1
    let v4 = abelian(&[2, 2]);
    let z3 = cyclic(3);
    let rot = |k: usize, x: usize| {
        let mut x = x;
        for _ in 0..k {
            x = if x == 0 { 0 } else { x % 3 + 1 };
        }
        x
    };
    semidirect_product(&v4, &z3, rot).named("A4")
}

fn order16_three() -> FiniteGroup {
    // (Z4 × Z2) ⋊ Z2 with c: (a, b) ↦ (a, b + a)
    let n = abelian(&[4, 2]);
    let z2 = cyclic(2);
    semidirect_product(&n, &z2, |c, x| {
        if c == 0 {
            x
        } else {
            let (a, b) = (x / 2, x % 2);
            a * 2 + (b + a) % 2
        }
    })
    .named("(Z4xZ2):Z2")
}

fn pauli() -> FiniteGroup {
    // (D8 × Z4) / ⟨(r², 2)⟩
    let p = direct_product(&dihedral(4), &cyclic(4));
    let z = 2 * 2; // r² in metacyclic coding
    let c = p.closure(&[z * 4 + 2]);
    p.quotient(&c).expect("central").0.named("Z4oD8")
}

fn build() -> Vec<Arc<FiniteGroup>> {
    let list: Vec<FiniteGroup> = vec![
        cyclic(1),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        abelian(&[2, 2]).named("V4"),
        cyclic(5),
        cyclic(6),
        dihedral(3).named("S3"),
        cyclic(7),
        cyclic(8),
        abelian(&[4, 2]),
        abelian(&[2, 2, 2]),
        dihedral(4).named("D8"),
        quaternion(),
        cyclic(9),
        abelian(&[3, 3]),
        cyclic(10),
        dihedral(5),
        cyclic(11),
        cyclic(12),
        abelian(&[6, 2]),
        dihedral(6),
        alternating4(),
        meta(3, 4, 2, 0, "Dic12"),
        cyclic(13),
        cyclic(14),
        dihedral(7),
        cyclic(15),
        cyclic(16),
        abelian(&[4, 4]),
        abelian(&[8, 2]),
        abelian(&[4, 2, 2]),
        abelian(&[2, 2, 2, 2]),
        dihedral(8),
        meta(8, 2, 3, 0, "SD16"),
        meta(8, 2, 7, 4, "Q16"),
        meta(8, 2, 5, 0, "M16"),
        meta(4, 4, 3, 0, "Z4:Z4"),
        direct_product(&dihedral(4), &cyclic(2)).named("D8xZ2"),
        direct_product(&quaternion(), &cyclic(2)).named("Q8xZ2"),
        order16_three(),
        pauli(),
        // nilpotent, not of prime-power order, 17..=24
        cyclic(18),
        abelian(&[6, 3]),
        cyclic(20),
        abelian(&[10, 2]),
        cyclic(21),
        cyclic(22),
        cyclic(24),
        abelian(&[12, 2]),
        abelian(&[6, 2, 2]),
        direct_product(&dihedral(4), &cyclic(3)).named("D8xZ3"),
        direct_product(&quaternion(), &cyclic(3)).named("Q8xZ3"),
    ];
    list.into_iter().map(Arc::new).collect()
}

pub fn catalog() -> &'static [Arc<FiniteGroup>] {
    static CAT: OnceLock<Vec<Arc<FiniteGroup>>> = OnceLock::new();
    CAT.get_or_init(build)
}

/// All groups of order at most `max` (complete for max ≤ 16).
pub fn groups_up_to(max: usize) -> Vec<Arc<FiniteGroup>> {
    catalog().iter().filter(|g| g.order() <= max.min(16)).cloned().collect()
}

pub fn by_name(name: &str) -> Option<Arc<FiniteGroup>> {
    catalog().iter().find(|g| g.name() == Some(name)).cloned()
}

/// Catalog index of the group isomorphic to `g`, if any.
pub fn identify(g: &FiniteGroup) -> Option<usize> {
    catalog()
        .iter()
        .position(|h| h.order() == g.order() && crate::group::find_isomorphism(g, h).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{find_isomorphism, make_group};

    #[test]
    fn counts_per_order() {
        let expected = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];
        for (i, &c) in expected.iter().enumerate() {
            let n = i + 1;
            assert_eq!(catalog().iter().filter(|g| g.order() == n).count(), c, "order {n}");
        }
    }

    #[test]
    fn tables_are_groups_and_pairwise_distinct() {
        for g in catalog() {
            if g.order() <= 24 {
                make_group(&g.table_rows()).unwrap_or_else(|e| panic!("{:?}: {e}", g.name()));
            }
        }
        let cat = catalog();
        for i in 0..cat.len() {
            for j in i + 1..cat.len() {
                if cat[i].order() == cat[j].order() {
                    assert!(
                        find_isomorphism(&cat[i], &cat[j]).is_none(),
                        "{:?} ~ {:?}",
                        cat[i].name(),
                        cat[j].name()
                    );
                }
            }
        }
    }

    #[test]
    fn extras_are_nilpotent_non_prime_power() {
        for g in catalog().iter().filter(|g| g.order() > 16) {
            assert!(g.is_nilpotent() && g.is_p_group().is_none(), "{:?}", g.name());
        }
    }
}
