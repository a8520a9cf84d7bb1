use crate::catalog::{dihedral, quaternion};
use crate::cocycle::{cocycle_from_generators, Triple};
use crate::error::{Error, Result};
use crate::group::{abelian, cyclic, factorize, gcd, is_prime, metacyclic, FiniteGroup};
use crate::operator::{make_gamma_group, GammaGroup};
use std::sync::Arc;

fn pow_mod(b: usize, e: usize, m: usize) -> usize {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}

fn mult_order(u: usize, m: usize) -> usize {
    (1..=m).find(|&k| pow_mod(u, k, m) == 1).unwrap_or(0)
}

/// Z/2 acting on Z/4 by negation, η(1) = 1.
pub fn negation_z4_triple() -> Triple {
    let gg = make_gamma_group(Arc::new(cyclic(2)), Arc::new(cyclic(4)), &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]])
        .expect("valid action");
    Triple::new(Arc::new(gg), &[0, 1]).expect("valid cocycle")
}

/// The order-r subgroup of F_p^× acting on F_p^+, with η(u) = u − 1.
pub fn prime_field_triple(p: usize, r: usize) -> Result<Triple> {
    if !is_prime(p) || r < 2 || (p - 1) % r != 0 {
        return Err(Error::BadParameters(format!("p={p}, r={r}")));
    }
    let g = (2..p).find(|&g| mult_order(g, p) == p - 1).unwrap_or(1);
    let u = pow_mod(g, (p - 1) / r, p);
    let chi: Vec<usize> = (0..r).map(|j| pow_mod(u, j, p)).collect();
    let gg = GammaGroup::character(Arc::new(cyclic(r)), Arc::new(cyclic(p)), &chi);
    let eta: Vec<usize> = chi.iter().map(|&x| (x + p - 1) % p).collect();
    Triple::new(Arc::new(gg), &eta)
}

/// Z/2 × Z/2 on Z/4: χ(σ) = −1, χ(τ) = 1, η(σ) = 1, η(τ) = 2.
pub fn mncg_family_i() -> Triple {
    let gg = Arc::new(GammaGroup::character(Arc::new(abelian(&[2, 2]).named("V4")), Arc::new(cyclic(4)), &[1, 1, 3, 3]));
    let eta = cocycle_from_generators(&gg, &[(2, 1), (1, 2)]).expect("valid cocycle");
    Triple::new_unchecked(gg, eta)
}

/// D8 on Z/2·e₁ ⊕ Z/4·e₂: χ(σ) = −1, χ(τ) = 1, η(σ) = e₂, η(τ) = e₁ + e₂.
pub fn mncg_family_ii() -> Result<Triple> {
    let d8 = Arc::new(dihedral(4).named("D8"));
    let chi: Vec<usize> = (0..8).map(|x| if x % 2 == 1 { 3 } else { 1 }).collect();
    let g = Arc::new(abelian(&[2, 4]));
    let rows: Vec<Vec<usize>> = chi.iter().map(|&k| (0..8).map(|x| g.pow(x, k)).collect()).collect();
    let gg = Arc::new(make_gamma_group(d8, g, &rows)?);
    // σ = b = 1, τ = a = 2; e₂ = 1, e₁ = 4
    let eta = cocycle_from_generators(&gg, &[(1, 1), (2, 5)])?;
    Ok(Triple::new_unchecked(gg, eta))
}

fn family_iii_ok(p: usize, r: usize, u: usize) -> bool {
    let k = p * r;
    gcd(u % k, k) == 1
        && mult_order(u % p, p) == r
        && factorize(r).iter().all(|&(l, _)| l == 2 || (u + k - 1) % l == 0)
        && (r % 4 != 0 || (u + k - 1) % 4 == 0)
}

/// Units u mod pr admissible for the Z/p ⋊_u Z/r family.
pub fn family_iii_units(p: usize, r: usize) -> Vec<usize> {
    if !is_prime(p) || p == 2 || r < 2 || (p - 1) % r != 0 {
        return Vec::new();
    }
    (1..p * r).filter(|&u| family_iii_ok(p, r, u)).collect()
}

/// Γ = ⟨σ, τ | σ^r = τ^p = 1, στσ⁻¹ = τ^u⟩ on Z/pr with χ(σ) = u, χ(τ) = 1, η(σ) = p, η(τ) = r.
pub fn mncg_family_iii(p: usize, r: usize, u: usize) -> Result<Triple> {
    if !is_prime(p) || p == 2 || r < 2 || (p - 1) % r != 0 || !family_iii_ok(p, r, u) {
        return Err(Error::BadParameters(format!("p={p}, r={r}, u={u}")));
    }
    let k = p * r;
    // a = τ, b = σ; a^i b^j coded i·r + j
    let gamma = Arc::new(metacyclic(p, r, u % p, 0)?.named(format!("Z{p}:Z{r}")));
    let g = Arc::new(cyclic(k));
    let rows: Vec<Vec<usize>> =
        (0..k).map(|x| pow_mod(u, x % r, k)).map(|c| (0..k).map(|y| y * c % k).collect()).collect();
    let gg = Arc::new(make_gamma_group(gamma, g, &rows)?);
    let eta = cocycle_from_generators(&gg, &[(1, p), (r, r)])?;
    Ok(Triple::new_unchecked(gg, eta))
}

/// a^i b^j ↦ A^i B^j on a two-generator metacyclic table.
fn metacyclic_map(g: &FiniteGroup, a: usize, b: usize) -> Vec<usize> {
    (0..g.order()).map(|x| g.mul(g.pow(a, x / 2), g.pow(b, x % 2))).collect()
}

/// The deformation pair (D8, Q, η) and (Q, D8, η⁻¹).
pub fn d8_q_pair() -> Result<(Triple, Triple)> {
    let d8 = Arc::new(dihedral(4).named("D8"));
    let q = Arc::new(quaternion());
    let id: Vec<usize> = (0..8).collect();
    // D8: σ = b = 1, τ = a = 2.  Q: ρ = b = 1, θ = a = 2.
    let sigma_on_q = metacyclic_map(&q, 2, q.inv(1));
    let on_q = GammaGroup::from_generators(d8.clone(), q.clone(), &[(1, sigma_on_q), (2, id.clone())])?;
    let rho_on_d8 = metacyclic_map(&d8, 2, d8.mul(d8.pow(2, 2), 1));
    let on_d8 = GammaGroup::from_generators(q.clone(), d8.clone(), &[(1, rho_on_d8), (2, id)])?;
    let on_q = Arc::new(on_q);
    let eta = cocycle_from_generators(&on_q, &[(1, 1), (2, 2)])?;
    let fwd = Triple::new_unchecked(on_q, eta);
    if !(fwd.is_injective() && fwd.is_surjective()) {
        return Err(Error::Inconsistent("η is not bijective".into()));
    }
    let mut inv = vec![0; 8];
    for c in 0..8 {
        inv[fwd.eta(c)] = c;
    }
    let back = Triple::new(Arc::new(on_d8), &inv)?;
    Ok((fwd, back))
}
