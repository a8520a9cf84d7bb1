use super::FiniteLocalRing;
use crate::classify::is_mnk_fast;
use crate::cocycle::{cocycle_from_generators, Triple};
use crate::error::{Error, Result};
use crate::group::{abelian, is_prime, DEFAULT_ORDER_BOUND};
use crate::operator::GammaGroup;
use std::sync::Arc;

fn digits(mut x: usize, p: usize, len: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    for d in v.iter_mut().rev() {
        *d = x % p;
        x /= p;
    }
    v
}

fn undigits(v: &[usize], p: usize) -> usize {
    v.iter().fold(0, |acc, &d| acc * p + d % p)
}

/// F_p ⊕ W, dim W = s, with (x ⊕ y)(x′ ⊕ y′) = xx′ ⊕ (xy′ + x′y).
pub fn quadratic_ring(p: usize, s: usize) -> Result<FiniteLocalRing> {
    let size = p.checked_pow(s as u32 + 1).unwrap_or(usize::MAX);
    if size > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded { order: size, bound: DEFAULT_ORDER_BOUND });
    }
    let add = |a: usize, b: usize| {
        let (u, v) = (digits(a, p, s + 1), digits(b, p, s + 1));
        undigits(&u.iter().zip(&v).map(|(x, y)| x + y).collect::<Vec<_>>(), p)
    };
    let mul = |a: usize, b: usize| {
        let (u, v) = (digits(a, p, s + 1), digits(b, p, s + 1));
        let mut w = vec![u[0] * v[0]];
        w.extend((1..=s).map(|i| u[0] * v[i] + v[0] * u[i]));
        undigits(&w, p)
    };
    FiniteLocalRing::from_tables(size, add, mul)
}

/// Determinant over F_p.
pub fn det_mod_p(m: &[Vec<usize>], p: usize) -> usize {
    let n = m.len();
    let mut a: Vec<Vec<usize>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut det = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else { return 0 };
        if piv != col {
            a.swap(piv, col);
            det = (p - det) % p;
        }
        det = det * a[col][col] % p;
        let inv = (1..p).find(|&x| x * a[col][col] % p == 1).unwrap();
        for r in col + 1..n {
            let f = a[r][col] * inv % p;
            for c in col..n {
                a[r][c] = (a[r][c] + p * p - f * a[col][c] % p) % p;
            }
        }
    }
    det
}

fn is_square(x: usize, p: usize) -> bool {
    (0..p).any(|y| y * y % p == x % p)
}

#[derive(Clone, Debug)]
pub struct QuadVerdict {
    pub triple: Triple,
    pub det: usize,
    /// det Λ ≠ 0
    pub mnk_by_det: bool,
    pub mnk: bool,
    /// whether det Λ is a nonzero square
    pub square_discriminant: bool,
}

impl QuadVerdict {
    pub fn agree(&self) -> bool {
        self.mnk == self.mnk_by_det
    }
}

/// Γ = 1 + W on 𝔊 = R^∨ = ⊕ F_p θ_j^∨ (θ_0 acting as 1, θ_i θ_j^∨ = δ_ij θ_0^∨),
/// η(1 + θ_i) = λ0_i θ_0^∨ + Σ_j Λ_ij θ_j^∨.
pub fn quadratic_family(p: usize, s: usize, lambda0: &[usize], lam: &[Vec<usize>]) -> Result<QuadVerdict> {
    if !is_prime(p) || p == 2 || s < 2 {
        return Err(Error::BadParameters(format!("p={p}, s={s}")));
    }
    if lambda0.len() != s || lam.len() != s || lam.iter().any(|r| r.len() != s) {
        return Err(Error::BadShape(format!("need λ0 of length {s} and Λ of shape {s}×{s}")));
    }
    if (0..s).any(|i| (0..s).any(|j| lam[i][j] % p != lam[j][i] % p)) {
        return Err(Error::BadShape("Λ is not symmetric".into()));
    }
    let size = p.checked_pow(s as u32 + 1).unwrap_or(usize::MAX);
    if size > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded { order: size, bound: DEFAULT_ORDER_BOUND });
    }
    let gamma = Arc::new(abelian(&vec![p; s]).named(format!("1+W({p},{s})")));
    let g = Arc::new(abelian(&vec![p; s + 1]));
    let gg = Arc::new(GammaGroup::from_fn_unchecked(gamma, g, |c, x| {
        let w = digits(c, p, s);
        let mut v = digits(x, p, s + 1);
        v[0] += (0..s).map(|i| w[i] * v[i + 1]).sum::<usize>();
        undigits(&v, p)
    }));
    let images: Vec<(usize, usize)> = (0..s)
        .map(|i| {
            let mut v = vec![lambda0[i]];
            v.extend(lam[i].iter().copied());
            (p.pow((s - 1 - i) as u32), undigits(&v, p))
        })
        .collect();
    let eta = cocycle_from_generators(&gg, &images)?;
    let triple = Triple::new_unchecked(gg, eta);
    let mnk = triple.generating && is_mnk_fast(&triple)?;
    let det = det_mod_p(lam, p);
    Ok(QuadVerdict { triple, det, mnk_by_det: det != 0, mnk, square_discriminant: det != 0 && is_square(det, p) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::triples_isomorphic;
    use crate::rings::{ring_class, RingClass};

    fn sym2(a: usize, b: usize, c: usize) -> Vec<Vec<usize>> {
        vec![vec![a, b], vec![b, c]]
    }

    #[test]
    fn ring_shape() {
        let r = quadratic_ring(3, 2).unwrap();
        assert_eq!((r.len(), r.nilpotency(), r.residue_size()), (27, 2, 3));
        assert!(!r.is_principal());
        assert_eq!(ring_class(&r), RingClass::Quadratic { s: 2 });
    }

    #[test]
    fn det() {
        assert_eq!(det_mod_p(&sym2(1, 0, 1), 3), 1);
        assert_eq!(det_mod_p(&sym2(1, 1, 1), 3), 0);
        assert_eq!(det_mod_p(&sym2(0, 1, 0), 3), 2);
        assert_eq!(det_mod_p(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]], 5), 4);
    }

    #[test]
    fn identity_and_zero() {
        assert!(quadratic_family(3, 2, &[0, 0], &sym2(1, 0, 1)).unwrap().mnk);
        let z = quadratic_family(3, 2, &[1, 2], &sym2(0, 0, 0)).unwrap();
        assert!(!z.mnk && z.agree());
    }

    #[test]
    fn s2_all_agree_two_classes() {
        let mut reps: Vec<QuadVerdict> = Vec::new();
        for code in 0..27 * 9 {
            let d = digits(code, 3, 5);
            let v = quadratic_family(3, 2, &d[3..], &sym2(d[0], d[1], d[2])).unwrap();
            assert!(v.agree(), "{d:?}");
            if !v.mnk {
                continue;
            }
            let hit = reps.iter().position(|r| triples_isomorphic(&r.triple, &v.triple).unwrap());
            match hit {
                Some(i) => assert_eq!(reps[i].square_discriminant, v.square_discriminant),
                None => reps.push(v),
            }
        }
        assert_eq!(reps.len(), 2);
    }

    #[test]
    fn asymmetric_rejected() {
        let e = quadratic_family(3, 2, &[0, 0], &[vec![1, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(e, Error::BadShape(_)));
    }
}
