use super::{build_local_ring, EisensteinData, FiniteLocalRing};
use crate::bitset::ElemSet;
use crate::cocycle::Triple;
use crate::error::{Error, Result};
use crate::group::{homomorphisms, FiniteGroup};
use crate::operator::GammaGroup;
use serde::Serialize;
use std::sync::Arc;

/// Which complete local ring O is truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalKind {
    /// F_p[[π]]
    Equal { p: usize },
    /// Z_p[π] with π^e = p·Σ a_i π^i; e = 1, a = [1] is Z_p itself
    Mixed { p: usize, e: usize, a: Vec<usize> },
}

/// U^(n) acting on O_m = O/π^m, realized through R = O/π^{n+m}, where Γ = U^(n)/U^(n+m).
#[derive(Clone, Debug)]
pub struct ParamModel {
    pub n: usize,
    pub m: usize,
    pub ring: FiniteLocalRing,
    pub gamma_elems: Vec<usize>,
    pub gg: Arc<GammaGroup>,
    label: Vec<usize>,
    reps: Vec<usize>,
    /// π^{−n}(x − 1) ∈ O_m for x ∈ Γ
    quot: Vec<usize>,
}

impl ParamModel {
    pub fn new(kind: &LocalKind, n: usize, m: usize) -> Result<Self> {
        if n == 0 || m <= n {
            return Err(Error::ModelUnavailable(format!("need m > n ≥ 1, got n={n}, m={m}")));
        }
        let d = match kind {
            LocalKind::Equal { p } => EisensteinData::truncated_polynomial(*p, n + m),
            LocalKind::Mixed { p, e, a } => EisensteinData::truncation(*p, *e, a.clone(), n + m),
        };
        let ring = build_local_ring(&d).map_err(|e| Error::ModelUnavailable(e.to_string()))?;
        let pi = ring.theta.ok_or_else(|| Error::ModelUnavailable("not principal".into()))?;
        let (gamma, gamma_elems) = ring.unit_subgroup(&ring.unit_level(n));
        let add = ring.additive_group();
        let (label, reps) = add.coset_labels(&ring.powers[m]);
        let g = FiniteGroup::from_fn_unchecked(reps.len(), |x, y| label[ring.add(reps[x], reps[y])]);
        let gg = Arc::new(GammaGroup::from_fn_unchecked(Arc::new(gamma), Arc::new(g), |c, x| {
            label[ring.mul(gamma_elems[c], reps[x])]
        }));
        let pin = ring.pow(pi, n);
        let quot = gamma_elems
            .iter()
            .map(|&x| {
                let d = ring.sub(x, ring.one);
                let y = (0..ring.len()).find(|&y| ring.mul(pin, y) == d).expect("x − 1 ∈ π^n R");
                label[y]
            })
            .collect();
        Ok(ParamModel { n, m, ring, gamma_elems, gg, label, reps, quot })
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        self.gg.gamma()
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        self.gg.g()
    }

    /// The class of 1 + π^n in Γ.
    pub fn one_plus_pi_n(&self) -> usize {
        let x = self.ring.add(self.ring.one, self.ring.pow(self.ring.theta.unwrap(), self.n));
        self.gamma_elems.iter().position(|&y| y == x).unwrap()
    }

    /// π^i O_m
    pub fn ideal(&self, i: usize) -> ElemSet {
        ElemSet::from_iter(self.reps.len(), self.ring.powers[i.min(self.m)].iter().map(|x| self.label[x]))
    }

    /// max{i ≤ m : a ∈ π^i O_m}
    pub fn v_m(&self, a: usize) -> usize {
        self.ring.valuation(self.reps[a]).min(self.m)
    }

    /// U^(k)/U^(n+m) inside Γ
    pub fn level(&self, k: usize) -> ElemSet {
        let u = self.ring.unit_level(k);
        ElemSet::from_iter(self.gamma_elems.len(), (0..self.gamma_elems.len()).filter(|&c| u.contains(self.gamma_elems[c])))
    }

    /// Element of O_m from a ring element of R.
    pub fn reduce(&self, x: usize) -> usize {
        self.label[x]
    }

    /// x ↦ π^{−n}(x − 1)a
    pub fn eta_a(&self, a: usize) -> Vec<usize> {
        self.quot.iter().map(|&q| self.label[self.ring.mul(self.reps[q], self.reps[a])]).collect()
    }

    /// Hom(Γ/V, π^{m−n}O_m) as value arrays on Γ.
    pub fn alphas(&self) -> Vec<Vec<usize>> {
        let target = self.ideal(self.m - self.n);
        let (sub, elems) = subgroup_as_group(self.g(), &target);
        let v = self.one_plus_pi_n();
        homomorphisms(self.gamma(), &sub)
            .into_iter()
            .filter(|h| h[v] == 0)
            .map(|h| h.iter().map(|&i| elems[i as usize]).collect())
            .collect()
    }

    pub fn eta(&self, a: usize, alpha: &[usize]) -> Result<Triple> {
        let g = self.g();
        let values: Vec<usize> = self.eta_a(a).iter().zip(alpha).map(|(&x, &y)| g.mul(y, x)).collect();
        Triple::new(self.gg.clone(), &values)
    }
}

fn subgroup_as_group(g: &FiniteGroup, s: &ElemSet) -> (FiniteGroup, Vec<usize>) {
    let elems = s.to_vec();
    let mut index = vec![usize::MAX; g.order()];
    for (i, &x) in elems.iter().enumerate() {
        index[x] = i;
    }
    (FiniteGroup::from_fn_unchecked(elems.len(), |a, b| index[g.mul(elems[a], elems[b])]), elems)
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelCheck {
    pub v: usize,
    pub r: usize,
    pub kernel: Vec<usize>,
    /// {x : α(x) = π^{−n}(1 − x)a}
    pub eq_set: Vec<usize>,
    pub kernel_in_level: bool,
    /// U^(r) = η⁻¹(π^{m−n}O_m)
    pub level_is_preimage: bool,
    pub hom_on_level: bool,
    /// largest k with η restricted to U^(k) a homomorphism
    pub max_hom_level: usize,
    pub is_hom: bool,
    /// η(1 + π^n) ∈ π^{m−n}O_m
    pub hom_criterion: bool,
}

impl KernelCheck {
    pub fn holds(&self) -> bool {
        self.kernel == self.eq_set
            && self.kernel_in_level
            && self.level_is_preimage
            && self.hom_on_level
            && self.is_hom == self.hom_criterion
    }
}

fn hom_on(t: &Triple, h: &ElemSet) -> bool {
    let (gamma, g) = (t.gamma(), t.g());
    h.iter().all(|x| h.iter().all(|y| t.eta(gamma.mul(x, y)) == g.mul(t.eta(x), t.eta(y))))
}

/// Builds η_{a,α}, scans its kernel and compares with the predicted description.
pub fn eta_param_kernel(model: &ParamModel, a: usize, alpha: &[usize]) -> Result<KernelCheck> {
    let (gamma, g) = (model.gamma(), model.g());
    if a >= g.order() || alpha.len() != gamma.order() {
        return Err(Error::BadParameters("a or α out of range".into()));
    }
    let top = model.ideal(model.m - model.n);
    let v1 = model.one_plus_pi_n();
    if alpha.iter().any(|&x| !top.contains(x))
        || alpha[v1] != 0
        || (0..gamma.order()).any(|x| (0..gamma.order()).any(|y| alpha[gamma.mul(x, y)] != g.mul(alpha[x], alpha[y])))
    {
        return Err(Error::BadParameters("α ∉ Hom(U^(n)/V, π^{m−n}O_m)".into()));
    }
    let t = model.eta(a, alpha)?;
    let v = model.v_m(a);
    let r = model.n.max(model.m - v);
    let kernel = t.delta.to_vec();
    let eta_a = model.eta_a(a);
    let eq_set: Vec<usize> = (0..gamma.order()).filter(|&x| alpha[x] == g.inv(eta_a[x])).collect();
    let level = model.level(r);
    let kernel_in_level = t.delta.is_subset(&level);
    let level_is_preimage = t.preimage(&top) == level;
    let hom_on_level = hom_on(&t, &level);
    let max_hom_level = (model.n..=model.n + model.m).find(|&k| hom_on(&t, &model.level(k))).unwrap_or(model.n + model.m);
    let is_hom = hom_on(&t, &gamma.full());
    let hom_criterion = top.contains(t.eta(v1));
    Ok(KernelCheck { v, r, kernel, eq_set, kernel_in_level, level_is_preimage, hom_on_level, max_hom_level, is_hom, hom_criterion })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn models() -> Vec<ParamModel> {
        let mut out = Vec::new();
        for (n, m) in [(1, 2), (1, 3), (2, 3)] {
            out.push(ParamModel::new(&LocalKind::Equal { p: 2 }, n, m).unwrap());
            out.push(ParamModel::new(&LocalKind::Mixed { p: 2, e: 1, a: vec![1] }, n, m).unwrap());
        }
        out.push(ParamModel::new(&LocalKind::Equal { p: 3 }, 1, 2).unwrap());
        out.push(ParamModel::new(&LocalKind::Mixed { p: 3, e: 1, a: vec![1] }, 1, 2).unwrap());
        out.push(ParamModel::new(&LocalKind::Mixed { p: 2, e: 2, a: vec![1, 0] }, 1, 3).unwrap());
        out
    }

    #[test]
    fn every_parameter_pair() {
        for model in models() {
            let alphas = model.alphas();
            assert!(!alphas.is_empty());
            for a in 0..model.g().order() {
                for alpha in &alphas {
                    let c = eta_param_kernel(&model, a, alpha).unwrap();
                    assert!(c.holds(), "n={} m={} a={a}: {c:?}", model.n, model.m);
                }
            }
        }
    }

    #[test]
    fn a_zero_is_alpha() {
        let model = ParamModel::new(&LocalKind::Equal { p: 2 }, 1, 3).unwrap();
        for alpha in model.alphas() {
            let c = eta_param_kernel(&model, 0, &alpha).unwrap();
            assert!(c.is_hom);
            let ker: Vec<usize> = (0..alpha.len()).filter(|&x| alpha[x] == 0).collect();
            assert_eq!(c.kernel, ker);
        }
    }

    #[test]
    fn boundary_valuation() {
        let model = ParamModel::new(&LocalKind::Mixed { p: 2, e: 1, a: vec![1] }, 1, 3).unwrap();
        let a = (0..model.g().order()).find(|&a| model.v_m(a) == model.m - model.n).unwrap();
        let c = eta_param_kernel(&model, a, &vec![0; model.gamma().order()]).unwrap();
        assert_eq!(c.r, model.n);
        assert!(c.is_hom && c.holds());
    }

    #[test]
    fn unit_a_has_small_kernel() {
        let model = ParamModel::new(&LocalKind::Equal { p: 3 }, 1, 2).unwrap();
        let a = model.reduce(model.ring.one);
        let c = eta_param_kernel(&model, a, &vec![0; model.gamma().order()]).unwrap();
        assert_eq!((c.v, c.r), (0, 2));
        assert!(!c.is_hom && c.holds());
    }

    #[test]
    fn hom_level_can_be_larger_than_r() {
        let model = ParamModel::new(&LocalKind::Equal { p: 2 }, 1, 3).unwrap();
        let a = model.reduce(model.ring.one);
        let c = eta_param_kernel(&model, a, &vec![0; model.gamma().order()]).unwrap();
        assert_eq!((c.r, c.max_hom_level), (3, 2));
    }

    #[test]
    fn unavailable() {
        assert!(matches!(ParamModel::new(&LocalKind::Equal { p: 2 }, 2, 2), Err(Error::ModelUnavailable(_))));
        assert!(matches!(ParamModel::new(&LocalKind::Equal { p: 2 }, 5, 6), Err(Error::ModelUnavailable(_))));
    }
}
