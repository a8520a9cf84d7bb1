use cogalois::catalog::{by_name, dihedral, groups_up_to, quaternion};
use cogalois::cocycle::{enumerate_cocycles, Triple};
use cogalois::group::{abelian, automorphisms, cyclic, gcd, make_group, metacyclic, FiniteGroup};
use cogalois::operator::GammaGroup;
use cogalois::Error;
use proptest::prelude::*;
use std::sync::Arc;

fn brute_cocycles(gg: &GammaGroup) -> Vec<Vec<usize>> {
    let (n, m) = (gg.gamma().order(), gg.g().order());
    let (gamma, g) = (gg.gamma(), gg.g());
    let mut out = Vec::new();
    let mut eta = vec![0usize; n];
    let total = m.pow(n as u32);
    for mut code in 0..total {
        for v in eta.iter_mut() {
            *v = code % m;
            code /= m;
        }
        let law = (0..n).all(|s| (0..n).all(|t| eta[gamma.mul(s, t)] == g.mul(eta[s], gg.act(s, eta[t]))));
        if law {
            out.push(eta.clone());
        }
    }
    out
}

fn brute_automorphism_count(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    fn rec(i: usize, perm: &mut Vec<usize>, g: &FiniteGroup, count: &mut usize) {
        let n = perm.len();
        if i == n {
            if (0..n).all(|a| (0..n).all(|b| perm[g.mul(a, b)] == g.mul(perm[a], perm[b]))) {
                *count += 1;
            }
            return;
        }
        for j in i..n {
            perm.swap(i, j);
            rec(i + 1, perm, g, count);
            perm.swap(i, j);
        }
    }
    rec(0, &mut perm, g, &mut count);
    count
}

#[test]
fn cocycles_match_exhaustive_maps() {
    for (gamma, g) in [(2, 4), (2, 3), (3, 3), (4, 2), (2, 6), (3, 4)] {
        for a in groups_up_to(g).into_iter().filter(|x| x.order() == g) {
            let ga = Arc::new(cyclic(gamma));
            let auts = automorphisms(&a).unwrap();
            for hom in cogalois::group::homomorphisms(&ga, &aut_group(&a, &auts)) {
                let gg = GammaGroup::from_hom(ga.clone(), a.clone(), &auts, &hom);
                let mut fast: Vec<Vec<usize>> =
                    enumerate_cocycles(&gg).unwrap().iter().map(|c| c.to_vec()).collect();
                fast.sort();
                let mut slow = brute_cocycles(&gg);
                slow.sort();
                assert_eq!(fast, slow, "Z/{gamma} on {:?}", a.name());
            }
        }
    }
}

fn aut_group(a: &FiniteGroup, auts: &[Vec<u32>]) -> FiniteGroup {
    let idx = |p: &[u32]| auts.iter().position(|q| q == p).unwrap();
    let n = auts.len();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| idx(&(0..a.order()).map(|x| auts[i][auts[j][x] as usize]).collect::<Vec<_>>())).collect())
        .collect();
    make_group(&table).unwrap()
}

#[test]
fn automorphism_counts() {
    for (g, want) in [
        (cyclic(8), 4),
        (abelian(&[2, 2]), 6),
        (abelian(&[2, 4]), 8),
        (dihedral(4), 8),
        (quaternion(), 24),
        (dihedral(3), 6),
    ] {
        assert_eq!(automorphisms(&g).unwrap().len(), want);
        assert_eq!(brute_automorphism_count(&g), want);
    }
}

#[test]
fn catalog_counts_by_order() {
    let counts: Vec<usize> = (1..=16).map(|n| groups_up_to(16).iter().filter(|g| g.order() == n).count()).collect();
    assert_eq!(counts, [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]);
    assert!(by_name("Q8").is_some());
}

#[test]
fn malformed_tables_rejected() {
    assert!(matches!(make_group(&[vec![0, 1], vec![1, 1]]), Err(Error::NoInverse(_) | Error::BadTable(..))));
    assert!(matches!(make_group(&[vec![1, 0], vec![0, 1]]), Err(Error::NoIdentity(_))));
    assert!(make_group(&[vec![0, 1, 2], vec![1, 2, 0]]).is_err());
}

#[test]
fn kneser_means_index_equals_order() {
    for t in small_triples() {
        let ker = t.preimage(&t.g().trivial()).len();
        assert_eq!(t.is_surjective(), t.gamma().order() / ker == t.g().order());
    }
}

fn small_triples() -> Vec<Triple> {
    let mut v = Vec::new();
    for (n, g) in [(2usize, cyclic(4)), (3, cyclic(7)), (2, abelian(&[2, 2])), (4, cyclic(5))] {
        let ga = Arc::new(cyclic(n));
        let g = Arc::new(g);
        let auts = automorphisms(&g).unwrap();
        let target = aut_group(&g, &auts);
        for hom in cogalois::group::homomorphisms(&ga, &target) {
            let gg = Arc::new(GammaGroup::from_hom(ga.clone(), g.clone(), &auts, &hom));
            for c in enumerate_cocycles(&gg).unwrap() {
                v.push(Triple::new_unchecked(gg.clone(), c));
            }
        }
    }
    v
}

proptest! {
    #[test]
    fn abelian_tables_are_groups(factors in prop::collection::vec(2usize..5, 1..4)) {
        let g = abelian(&factors);
        let n: usize = factors.iter().product();
        prop_assert_eq!(g.order(), n);
        prop_assert!(g.is_abelian());
        prop_assert!(make_group(&g.table_rows()).is_ok());
        let e = factors.iter().fold(1, |a, &b| a / gcd(a, b) * b);
        prop_assert_eq!(g.exponent(), e);
    }

    #[test]
    fn metacyclic_associative(n in 2usize..9, m in 1usize..5, r in 1usize..9) {
        if let Ok(g) = metacyclic(n, m, r % n, 0) {
            let k = g.order();
            prop_assert_eq!(k, n * m);
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_pow_and_order(n in 1usize..40, a in 0usize..40) {
        let g = cyclic(n);
        let a = a % n;
        prop_assert_eq!(g.elem_order(a), n / gcd(a, n));
        prop_assert_eq!(g.pow(a, n), 0);
    }
}
