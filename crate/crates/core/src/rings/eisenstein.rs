use super::FiniteLocalRing;
use crate::error::{Error, Result};
use crate::group::{is_prime, DEFAULT_ORDER_BOUND};
use serde::{Deserialize, Serialize};

/// f(x) = x^e − p(a_{e−1}x^{e−1} + ⋯ + a_0) over Z/p^n, truncated by p^{n−1}x^t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinData {
    pub p: usize,
    pub n: usize,
    pub e: usize,
    pub t: usize,
    pub a: Vec<usize>,
}

impl EisensteinData {
    pub fn new(p: usize, n: usize, e: usize, t: usize, a: Vec<usize>) -> Result<Self> {
        let d = EisensteinData { p, n, e, t, a };
        d.validate()?;
        Ok(d)
    }

    /// F_p[x]/(x^m)
    pub fn truncated_polynomial(p: usize, m: usize) -> Self {
        let mut a = vec![0; m];
        a[0] = 1;
        EisensteinData { p, n: 1, e: m, t: m, a }
    }

    /// The quotient of a ramified extension of Z_p with uniformizer π (π^e = p·Σa_iπ^i) by π^m.
    pub fn truncation(p: usize, e: usize, a: Vec<usize>, m: usize) -> Self {
        let n = m.div_ceil(e);
        EisensteinData { p, n, e, t: m - (n - 1) * e, a }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::BadParameters(format!("{s}: {self:?}")));
        if !is_prime(self.p) {
            return bad("p must be prime");
        }
        if self.n == 0 || self.e == 0 {
            return bad("n, e must be positive");
        }
        if self.t == 0 || self.t > self.e {
            return bad("need 1 ≤ t ≤ e");
        }
        if self.a.len() != self.e {
            return bad("need e coefficients");
        }
        if self.a[0] % self.p == 0 {
            return bad("a_0 must be a unit");
        }
        Ok(())
    }

    /// m = (n−1)e + t
    pub fn nilpotency(&self) -> usize {
        (self.n - 1) * self.e + self.t
    }

    fn moduli(&self) -> Vec<usize> {
        let pn = self.p.pow(self.n as u32);
        (0..self.e).map(|i| if i < self.t { pn } else { pn / self.p }).collect()
    }

    pub fn order(&self) -> Option<usize> {
        self.moduli().iter().try_fold(1usize, |acc, &m| acc.checked_mul(m))
    }
}

struct Codec {
    moduli: Vec<usize>,
}

impl Codec {
    fn decode(&self, mut x: usize) -> Vec<usize> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = x % m;
                x /= m;
                c
            })
            .collect()
    }

    fn encode(&self, c: &[usize]) -> usize {
        self.moduli.iter().zip(c).rev().fold(0, |acc, (&m, &ci)| acc * m + ci % m)
    }
}

/// Quotient-ring tables in normal form c_0 + c_1θ + ⋯ + c_{e−1}θ^{e−1}.
pub fn build_local_ring(d: &EisensteinData) -> Result<FiniteLocalRing> {
    d.validate()?;
    let size = d.order().unwrap_or(usize::MAX);
    if size > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded { order: size, bound: DEFAULT_ORDER_BOUND });
    }
    let codec = Codec { moduli: d.moduli() };
    let pn = d.p.pow(d.n as u32);
    let e = d.e;
    let mul = |x: usize, y: usize| {
        let (cx, cy) = (codec.decode(x), codec.decode(y));
        let mut prod = vec![0usize; 2 * e - 1];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + cx[i] * cy[j]) % pn;
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            for (i, &ai) in d.a.iter().enumerate() {
                prod[k - e + i] = (prod[k - e + i] + c * d.p % pn * ai) % pn;
            }
        }
        codec.encode(&prod[..e])
    };
    let add = |x: usize, y: usize| {
        let s: Vec<usize> = codec.decode(x).iter().zip(codec.decode(y)).map(|(a, b)| a + b).collect();
        codec.encode(&s)
    };
    let ring = FiniteLocalRing::from_tables(size, add, mul)?;
    if ring.nilpotency() != d.nilpotency() || ring.residue_size() != d.p || ring.one != 1 % size {
        return Err(Error::Inconsistent(format!(
            "ring from {d:?}: nilpotency {} residue {}",
            ring.nilpotency(),
            ring.residue_size()
        )));
    }
    Ok(ring)
}
