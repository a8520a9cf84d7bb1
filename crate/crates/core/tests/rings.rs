use cogalois::rings::{build_local_ring, field_triple, finite_field, principal_unit_triples, EisensteinData, FiniteLocalRing};
use cogalois::rings::{ring_class, RingClass};

/// Z/p^k by plain integer arithmetic.
fn z_mod(q: usize) -> FiniteLocalRing {
    FiniteLocalRing::from_tables(q, |a, b| (a + b) % q, |a, b| a * b % q).unwrap()
}

#[test]
fn unramified_eisenstein_is_z_mod_pn() {
    for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
        let r = build_local_ring(&EisensteinData::new(p, n, 1, 1, vec![1]).unwrap()).unwrap();
        let z = z_mod(p.pow(n as u32));
        assert_eq!(r.len(), z.len());
        assert_eq!(r.nilpotency(), z.nilpotency());
        assert_eq!(r.unit_group().0.order(), z.unit_group().0.order());
        assert_eq!(r.additive_group().exponent(), p.pow(n as u32));
    }
}

#[test]
fn truncated_polynomial_ring_has_exponent_p() {
    for (p, m) in [(2, 3), (3, 2), (3, 3), (5, 2)] {
        let r = build_local_ring(&EisensteinData::truncated_polynomial(p, m)).unwrap();
        assert_eq!(r.len(), p.pow(m as u32));
        assert_eq!(r.additive_group().exponent(), p);
        assert_eq!(r.nilpotency(), m);
        assert!(r.is_principal());
    }
}

#[test]
fn fields_have_cyclic_unit_group() {
    for (p, f) in [(2, 2), (2, 3), (3, 2)] {
        let k = finite_field(p, f).unwrap();
        let (u, _) = k.unit_group();
        let q = p.pow(f as u32);
        assert_eq!(u.order(), q - 1);
        assert!(u.element_orders().contains(&(q - 1)));
    }
}

#[test]
fn extension_field_triple_is_mnk() {
    let t = field_triple(2, 3).unwrap();
    assert_eq!(t.g().order(), 4);
    assert!(t.generating);
    assert!(cogalois::classify::is_mnk_fast(&t).unwrap());
}

#[test]
fn z_mod_9_excluded_from_classification() {
    let r = z_mod(9);
    assert!(matches!(ring_class(&r), RingClass::Principal { case: None, .. }));
    let u = principal_unit_triples(&r).unwrap();
    assert_eq!(u.mnk_count(), 0);
}

#[test]
fn product_ring_rejected() {
    let r = FiniteLocalRing::from_tables(6, |a, b| (a + b) % 6, |a, b| a * b % 6);
    assert!(r.is_err());
}
