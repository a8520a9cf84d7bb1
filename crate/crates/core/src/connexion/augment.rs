use crate::cocycle::{check_cocycle_law, enumerate_cocycles, Cocycle};
use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, DEFAULT_ORDER_BOUND};
use crate::operator::GammaGroup;
use crate::report::Report;
use std::sync::Arc;

/// I = ker(ε: F_p[Γ] → F_p) with the universal cocycle ω(γ) = γ − 1.
///
/// A vector v is coded by its coordinates at γ ≠ 1 in base p; v[1] = −Σ others.
pub fn augmentation_model(gamma: Arc<FiniteGroup>, p: usize) -> Result<(GammaGroup, Cocycle)> {
    if !is_prime(p) {
        return Err(Error::BadParameters(format!("{p} is not prime")));
    }
    let n = gamma.order();
    let size = (p as u128).checked_pow((n - 1) as u32).filter(|&s| s <= DEFAULT_ORDER_BOUND as u128);
    let size = size.ok_or(Error::OrderBoundExceeded { order: usize::MAX, bound: DEFAULT_ORDER_BOUND })? as usize;
    let decode = |mut c: usize| {
        let mut v = vec![0usize; n];
        for slot in v.iter_mut().skip(1) {
            *slot = c % p;
            c /= p;
        }
        v[0] = (p - v.iter().sum::<usize>() % p) % p;
        v
    };
    let encode = |v: &[usize]| v.iter().skip(1).rev().fold(0, |acc, &x| acc * p + x);
    let group = Arc::new(FiniteGroup::from_fn_unchecked(size, |a, b| {
        let (u, w) = (decode(a), decode(b));
        encode(&u.iter().zip(&w).map(|(x, y)| (x + y) % p).collect::<Vec<_>>())
    }));
    let gg = GammaGroup::from_fn_unchecked(gamma.clone(), group, |c, a| {
        let v = decode(a);
        let mut w = vec![0; n];
        for (d, &x) in v.iter().enumerate() {
            w[gamma.mul(c, d)] = x;
        }
        encode(&w)
    });
    let omega = Cocycle {
        values: (0..n)
            .map(|c| {
                let mut v = vec![0; n];
                if c != 0 {
                    v[c] = 1;
                }
                encode(&v) as u32
            })
            .collect(),
    };
    check_cocycle_law(&gg, &omega.to_vec())?;
    let image = crate::bitset::ElemSet::from_iter(size, omega.values.iter().map(|&x| x as usize));
    if gg.ideal_closure(&image).len() != size {
        return Err(Error::NotGenerating);
    }
    Ok((gg, omega))
}

fn nullity(mut rows: Vec<Vec<usize>>, ncols: usize, p: usize) -> usize {
    let inv = |a: usize| (1..p).find(|&b| a * b % p == 1).expect("unit");
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let k = inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = *x * k % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    rows[r][c] = (rows[r][c] + (p - f) * rows[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    ncols - rank
}

/// F_p-coordinates of an elementary abelian p-group.
struct Coords {
    dim: usize,
    of: Vec<Vec<usize>>,
}

fn coordinates(a: &FiniteGroup, p: usize) -> Result<Coords> {
    if !a.is_abelian() || (0..a.order()).any(|x| a.pow(x, p) != 0) {
        return Err(Error::BadParameters(format!("module is not elementary abelian of exponent {p}")));
    }
    let mut basis: Vec<usize> = Vec::new();
    for x in 0..a.order() {
        if !a.closure(&basis).contains(x) {
            basis.push(x);
        }
    }
    let dim = basis.len();
    let mut of = vec![Vec::new(); a.order()];
    for code in 0..p.pow(dim as u32) {
        let (mut c, mut x) = (code, 0);
        let mut v = vec![0; dim];
        for (i, &b) in basis.iter().enumerate() {
            v[i] = c % p;
            x = a.mul(x, a.pow(b, v[i]));
            c /= p;
        }
        of[x] = v;
    }
    Ok(Coords { dim, of })
}

/// ρ_I(σ) on the basis u_γ = γ − 1 (γ ≠ 1): σu_γ = u_{σγ} − u_σ.
fn rho_i(gamma: &FiniteGroup, s: usize, p: usize) -> Vec<Vec<usize>> {
    let m = gamma.order() - 1;
    let mut r = vec![vec![0; m]; m];
    for c in 1..gamma.order() {
        let sc = gamma.mul(s, c);
        if sc != 0 {
            r[sc - 1][c - 1] = (r[sc - 1][c - 1] + 1) % p;
        }
        if s != 0 {
            r[s - 1][c - 1] = (r[s - 1][c - 1] + p - 1) % p;
        }
    }
    r
}

fn rho_a(a: &GammaGroup, co: &Coords, s: usize) -> Vec<Vec<usize>> {
    let basis: Vec<usize> =
        (0..co.dim).map(|i| (0..a.g().order()).find(|&x| co.of[x].iter().enumerate().all(|(j, &v)| v == usize::from(i == j))).unwrap()).collect();
    let mut r = vec![vec![0; co.dim]; co.dim];
    for (j, &b) in basis.iter().enumerate() {
        for (i, &v) in co.of[a.act(s, b)].iter().enumerate() {
            r[i][j] = v;
        }
    }
    r
}

fn matmul(x: &[Vec<usize>], y: &[Vec<usize>], p: usize) -> Vec<Vec<usize>> {
    let (n, k, m) = (x.len(), y.len(), y.first().map_or(0, |r| r.len()));
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|t| x[i][t] * y[t][j]).sum::<usize>() % p).collect()).collect()
}

/// |Hom_Γ(I, A)| by solving M ρ_I(σ) = ρ_A(σ) M over F_p.
pub fn augmentation_hom_count(a: &GammaGroup, p: usize) -> Result<u128> {
    let co = coordinates(a.g(), p)?;
    let gamma = a.gamma();
    let (d, m) = (co.dim, gamma.order() - 1);
    let var = |i: usize, k: usize| i * m + k;
    let mut rows = Vec::new();
    for &s in gamma.generators() {
        let (ri, ra) = (rho_i(gamma, s, p), rho_a(a, &co, s));
        for i in 0..d {
            for j in 0..m {
                let mut row = vec![0; d * m];
                for k in 0..m {
                    row[var(i, k)] = (row[var(i, k)] + ri[k][j]) % p;
                }
                for k in 0..d {
                    row[var(k, j)] = (row[var(k, j)] + p - ra[i][k]) % p;
                }
                rows.push(row);
            }
        }
    }
    Ok((p as u128).pow(nullity(rows, d * m, p) as u32))
}

/// |Z¹(Γ, A)| = |Hom_Γ(I, A)|, and each α gives an equivariant map γ − 1 ↦ α(γ).
pub fn augmentation_check(a: &GammaGroup, p: usize) -> Result<Report> {
    let mut r = Report::new();
    let co = coordinates(a.g(), p)?;
    let gamma = a.gamma();
    let z1 = enumerate_cocycles(a)?;
    let count = augmentation_hom_count(a, p)?;
    r.check(z1.len() as u128 == count, || format!("|Z¹| = {} but |Hom_Γ(I,A)| = {count}", z1.len()));
    for (idx, al) in z1.iter().enumerate() {
        let mat: Vec<Vec<usize>> =
            (0..co.dim).map(|i| (1..gamma.order()).map(|c| co.of[al.at(c)][i]).collect()).collect();
        for &s in gamma.generators() {
            let lhs = matmul(&mat, &rho_i(gamma, s, p), p);
            let rhs = matmul(&rho_a(a, &co, s), &mat, p);
            r.check(lhs == rhs, || format!("map from cocycle #{idx} not equivariant at σ={s}"));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian, cyclic};

    #[test]
    fn trivial_gamma_gives_zero_module() {
        let (gg, _) = augmentation_model(Arc::new(cyclic(1)), 3).unwrap();
        assert_eq!(gg.g().order(), 1);
    }

    #[test]
    fn z2_over_f2() {
        let gam = Arc::new(cyclic(2));
        let (gg, omega) = augmentation_model(gam.clone(), 2).unwrap();
        assert_eq!(gg.g().order(), 2);
        assert_eq!(gg.fix.len(), 2);
        assert_eq!(omega.values, vec![0, 1]);
        let a = GammaGroup::trivial(gam, Arc::new(cyclic(2)));
        assert_eq!(augmentation_hom_count(&a, 2).unwrap(), 2);
        assert_eq!(enumerate_cocycles(&a).unwrap().len(), 2);
    }

    #[test]
    fn counts_match_on_small_modules() {
        let gam = Arc::new(cyclic(3));
        let a = GammaGroup::from_generators(gam, Arc::new(abelian(&[2, 2])), &[(1, vec![0, 2, 3, 1])]).unwrap();
        assert!(augmentation_check(&a, 2).unwrap().passed());
    }

    #[test]
    fn model_matches_cocycle_universality() {
        // Hom_Γ(I, A) counted directly on the model table
        let gam = Arc::new(cyclic(3));
        let (i_mod, omega) = augmentation_model(gam.clone(), 3).unwrap();
        let a = GammaGroup::trivial(gam, Arc::new(cyclic(3)));
        let homs = crate::group::homomorphisms(i_mod.g(), a.g().as_ref());
        let eq: Vec<_> = homs
            .into_iter()
            .filter(|h| (0..3).all(|c| (0..i_mod.g().order()).all(|x| h[i_mod.act(c, x)] as usize == a.act(c, h[x] as usize))))
            .collect();
        assert_eq!(eq.len() as u128, augmentation_hom_count(&a, 3).unwrap());
        let z1 = enumerate_cocycles(&a).unwrap();
        let mut via: Vec<Vec<u32>> = eq.iter().map(|h| omega.values.iter().map(|&w| h[w as usize]).collect()).collect();
        via.sort();
        assert_eq!(via, z1.iter().map(|c| c.values.clone()).collect::<Vec<_>>());
    }
}
