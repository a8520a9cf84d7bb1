use super::FiniteLocalRing;
use crate::classify::is_mnk;
use crate::cocycle::Triple;
use crate::error::{Error, Result};
use crate::group::{cyclic, is_prime, DEFAULT_ORDER_BOUND};
use crate::operator::GammaGroup;
use std::sync::Arc;

fn poly_rem(mut a: Vec<usize>, b: &[usize], p: usize) -> Vec<usize> {
    let db = b.len() - 1;
    let lead_inv = (1..p).find(|&x| x * b[db] % p == 1).unwrap_or(1);
    while a.len() > db {
        let c = a.pop().unwrap() * lead_inv % p;
        let off = a.len() - db;
        for (i, &bi) in b[..db].iter().enumerate() {
            a[off + i] = (a[off + i] + p * p - c * bi % p) % p;
        }
    }
    a
}

fn monic(p: usize, deg: usize, code: usize) -> Vec<usize> {
    let mut c = code;
    let mut v: Vec<usize> = (0..deg)
        .map(|_| {
            let r = c % p;
            c /= p;
            r
        })
        .collect();
    v.push(1);
    v
}

fn is_irreducible(g: &[usize], p: usize) -> bool {
    let f = g.len() - 1;
    (1..=f / 2).all(|d| (0..p.pow(d as u32)).all(|c| poly_rem(g.to_vec(), &monic(p, d, c), p).iter().any(|&x| x != 0)))
}

/// F_{p^f} as F_p[x]/(g), coefficient vectors coded in base p with c_0 least significant.
pub fn finite_field(p: usize, f: usize) -> Result<FiniteLocalRing> {
    if !is_prime(p) || f == 0 {
        return Err(Error::BadParameters(format!("F_{p}^{f}")));
    }
    let q = p.checked_pow(f as u32).unwrap_or(usize::MAX);
    if q > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded { order: q, bound: DEFAULT_ORDER_BOUND });
    }
    let g = (0..q).map(|c| monic(p, f, c)).find(|g| is_irreducible(g, p)).expect("irreducible polynomials exist");
    let decode = |x: usize| monic(p, f, x)[..f].to_vec();
    let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * p + c);
    let add = |x: usize, y: usize| encode(&decode(x).iter().zip(decode(y)).map(|(a, b)| (a + b) % p).collect::<Vec<_>>());
    let mul = |x: usize, y: usize| {
        let (a, b) = (decode(x), decode(y));
        let mut prod = vec![0; 2 * f - 1];
        for i in 0..f {
            for j in 0..f {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        let mut r = poly_rem(prod, &g, p);
        r.resize(f, 0);
        encode(&r)
    };
    let k = FiniteLocalRing::from_tables(q, add, mul)?;
    if k.maximal.len() != 1 {
        return Err(Error::Inconsistent(format!("F_{p}[x]/{g:?} is not a field")));
    }
    Ok(k)
}

/// Γ the order-r subgroup of F_q^× (q = p^f, f = ord_r p) acting on F_q^+, η(u) = u − 1.
pub fn field_triple(p: usize, r: usize) -> Result<Triple> {
    if !is_prime(p) || r < 2 || r % p == 0 {
        return Err(Error::BadParameters(format!("p={p}, r={r}")));
    }
    let f = (1..=r).find(|&f| mod_pow(p, f, r) == 1).unwrap_or(0);
    if f == 0 || (p == 2 && f < 2) {
        return Err(Error::BadParameters(format!("p={p}, r={r}")));
    }
    let k = finite_field(p, f)?;
    let q = k.len();
    let gen = (2..q)
        .find(|&x| (1..q - 1).all(|j| (q - 1) % j != 0 || k.pow(x, j) != k.one))
        .unwrap_or(k.one);
    let u = k.pow(gen, (q - 1) / r);
    let elems: Vec<usize> = (0..r).map(|j| k.pow(u, j)).collect();
    let gg = GammaGroup::from_fn_unchecked(Arc::new(cyclic(r)), Arc::new(k.additive_group()), |j, x| k.mul(elems[j], x));
    let eta: Vec<usize> = elems.iter().map(|&x| k.sub(x, k.one)).collect();
    let t = Triple::new(Arc::new(gg), &eta)?;
    if !is_mnk(&t)?.mnk {
        return Err(Error::Inconsistent(format!("field triple ({p}, {r}) is not mnK")));
    }
    Ok(t)
}

fn mod_pow(b: usize, e: usize, m: usize) -> usize {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}
