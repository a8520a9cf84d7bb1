use super::is_mnk_fast;
use crate::cocycle::Triple;
use crate::error::{Error, Result};
use crate::operator::GammaGroup;
use crate::report::Report;
use std::collections::{HashSet, VecDeque};

const RING_BOUND: usize = 1 << 14;

/// The subring of End(𝔊) spanned additively by the action maps.
#[derive(Clone, Debug)]
pub struct EndRing {
    pub elems: Vec<Vec<u32>>,
}

pub fn generated_ring(gg: &GammaGroup) -> Result<EndRing> {
    let g = gg.g();
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = g.order();
    let gens: Vec<Vec<u32>> = (0..gg.gamma().order()).map(|c| (0..n).map(|x| gg.act(c, x) as u32).collect()).collect();
    let zero = vec![0u32; n];
    let mut seen: HashSet<Vec<u32>> = HashSet::from([zero.clone()]);
    let mut elems = vec![zero.clone()];
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y: Vec<u32> = (0..n).map(|i| g.mul(x[i] as usize, s[i] as usize) as u32).collect();
            if seen.insert(y.clone()) {
                if elems.len() >= RING_BOUND {
                    return Err(Error::OrderBoundExceeded { order: elems.len() + 1, bound: RING_BOUND });
                }
                elems.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    elems.sort();
    Ok(EndRing { elems })
}

impl EndRing {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Only the trivial idempotents 0 and 1.
    pub fn is_local(&self) -> bool {
        self.elems.iter().all(|e| {
            let idempotent = e.iter().all(|&v| e[v as usize] == v);
            let zero = e.iter().all(|&v| v == 0);
            let one = e.iter().enumerate().all(|(x, &v)| v as usize == x);
            !idempotent || zero || one
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.elems.iter().all(|a| {
            self.elems.iter().all(|b| a.iter().map(|&v| b[v as usize]).eq(b.iter().map(|&v| a[v as usize])))
        })
    }
}

/// Necessary conditions on mnK triples.
pub fn mnk_invariant_audit<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> Result<Report> {
    let mut r = Report::new();
    for (i, t) in triples.into_iter().enumerate() {
        let (gamma, g) = (t.gamma(), t.g());
        let tag = |s: &str| format!("triple #{i} (|Γ|={}, |𝔊|={}): {s}", gamma.order(), g.order());
        r.check(is_mnk_fast(t)?, || tag("not mnK"));
        let p = g.is_p_group();
        if g.is_nilpotent() {
            r.check(p.is_some(), || tag("nilpotent 𝔊 is not a p-group"));
        }
        let pre = t.preimage(&g.center());
        r.check(t.fix().intersection(&pre).len() == 1, || tag("Fix ∩ η⁻¹(C(𝔊)) ≠ 1"));
        if !(g.is_abelian() && gamma.is_abelian()) {
            continue;
        }
        let Some(p) = p else { continue };
        r.check(t.fix().len() == 1, || tag("action not faithful"));
        r.check(t.is_injective(), || tag("η not injective"));
        let fixed = t.gg.fixed_points().len();
        let gamma_p = gamma.order() == 1 || gamma.is_p_group() == Some(p);
        let flags = [gamma_p, fixed > 1, fixed == p, g.order() == p * gamma.order()];
        r.check(flags.iter().all(|&f| f == flags[0]), || tag(&format!("p-group equivalences disagree: {flags:?}")));
        let l = t.gg.ideals()?;
        let mins = l.minimal_among(|a| l.nodes[a].len() > 1);
        r.check(mins.len() == 1, || tag(&format!("{} minimal nonzero submodules", mins.len())));
        let ring = generated_ring(&t.gg)?;
        r.check(ring.is_local(), || tag("endomorphism ring not local"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian, cyclic};
    use std::sync::Arc;

    #[test]
    fn rings_of_small_actions() {
        let neg = crate::operator::make_gamma_group(
            Arc::new(cyclic(2)),
            Arc::new(cyclic(4)),
            &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
        )
        .unwrap();
        let r = generated_ring(&neg).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.is_local() && r.is_commutative());
        // swap on F_2², R = F_2[C_2] ≅ F_2[x]/(x²): local
        let swap = GammaGroup::from_generators(Arc::new(cyclic(2)), Arc::new(abelian(&[2, 2])), &[(1, vec![0, 2, 1, 3])])
            .unwrap();
        assert!(generated_ring(&swap).unwrap().is_local());
        // F_3 ⊕ F_3 with σ = diag(1, −1): R ≅ F_3 × F_3
        let diag = GammaGroup::from_generators(
            Arc::new(cyclic(2)),
            Arc::new(abelian(&[3, 3])),
            &[(1, (0..9).map(|x| (x / 3) * 3 + (3 - x % 3) % 3).collect())],
        )
        .unwrap();
        let d = generated_ring(&diag).unwrap();
        assert_eq!(d.len(), 9);
        assert!(!d.is_local());
    }
}
