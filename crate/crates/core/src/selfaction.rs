//! Self-actions, deformations Γ_ω and adequate units.

use crate::bitset::ElemSet;
use crate::cocycle::{check_cocycle_law, Cocycle, Triple};
use crate::error::{Error, Result};
use crate::group::{factorize, find_isomorphism, gcd, homomorphisms, make_group, AutGroup, FiniteGroup, DEFAULT_ORDER_BOUND};
use crate::operator::GammaGroup;
use crate::report::Report;
use std::sync::Arc;

/// ω : Γ → Aut(Γ), stored as one image array per element.
#[derive(Clone, Debug)]
pub struct SelfAction {
    pub gamma: Arc<FiniteGroup>,
    pub maps: Vec<Vec<u32>>,
}

impl SelfAction {
    pub fn new(gamma: Arc<FiniteGroup>, maps: Vec<Vec<u32>>) -> Result<Self> {
        let n = gamma.order();
        if maps.len() != n || maps.iter().any(|m| m.len() != n) {
            return Err(Error::BadLength { expected: n, got: maps.len() });
        }
        for (i, m) in maps.iter().enumerate() {
            let mm: Vec<usize> = m.iter().map(|&v| v as usize).collect();
            let g = crate::group::GroupMorphism { map: mm };
            if !g.is_bijective(n) || !g.is_morphism(&gamma, &gamma) {
                return Err(Error::NotAutomorphism(i));
            }
        }
        let sa = SelfAction { gamma, maps };
        for a in 0..n {
            for b in 0..n {
                let ab = sa.gamma.mul(a, b);
                if (0..n).any(|x| sa.apply(ab, x) != sa.apply(a, sa.apply(b, x))) {
                    return Err(Error::NotAnAction(a, b));
                }
            }
        }
        Ok(sa)
    }

    pub fn trivial(gamma: Arc<FiniteGroup>) -> Self {
        let id: Vec<u32> = (0..gamma.order() as u32).collect();
        SelfAction { maps: vec![id; gamma.order()], gamma }
    }

    /// ω_u(x)(y) = u^x·y on Z/n.
    pub fn cyclic_unit(n: usize, u: usize) -> Result<Self> {
        if gcd(u % n, n) != 1 && n > 1 {
            return Err(Error::BadParameters(format!("{u} is not a unit mod {n}")));
        }
        let gamma = Arc::new(crate::group::cyclic(n));
        let mut maps = Vec::with_capacity(n);
        let mut ux = 1 % n;
        for _ in 0..n {
            maps.push((0..n).map(|y| (ux * y % n) as u32).collect());
            ux = ux * u % n;
        }
        if ux != 1 % n {
            return Err(Error::BadParameters(format!("{u}^{n} ≢ 1 mod {n}")));
        }
        Self::new(gamma, maps)
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.maps[g][x] as usize
    }

    fn inverse_map(&self, g: usize) -> Vec<usize> {
        let mut inv = vec![0; self.gamma.order()];
        for (x, &y) in self.maps[g].iter().enumerate() {
            inv[y as usize] = x;
        }
        inv
    }

    /// Kernel of ω.
    pub fn kernel(&self) -> ElemSet {
        let n = self.gamma.order();
        ElemSet::from_iter(n, (0..n).filter(|&g| (0..n).all(|x| self.apply(g, x) == x)))
    }

    /// ω(θ(γ)) = θ∘ω(γ)∘θ⁻¹ for θ ∈ ω(Γ).
    pub fn adequate_by_conjugation(&self) -> bool {
        let n = self.gamma.order();
        let mut thetas: Vec<usize> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for g in 0..n {
            if seen.insert(&self.maps[g]) {
                thetas.push(g);
            }
        }
        thetas.iter().all(|&t| {
            let tinv = self.inverse_map(t);
            (0..n).all(|c| {
                let lhs = &self.maps[self.apply(t, c)];
                (0..n).all(|x| lhs[x] as usize == self.apply(t, self.apply(c, tinv[x])))
            })
        })
    }

    /// γ•δ = γ·ω(γ)⁻¹(δ)
    pub fn bullet_table(&self) -> Vec<Vec<usize>> {
        let n = self.gamma.order();
        (0..n)
            .map(|g| {
                let inv = self.inverse_map(g);
                (0..n).map(|d| self.gamma.mul(g, inv[d])).collect()
            })
            .collect()
    }

    pub fn adequate_by_associativity(&self) -> bool {
        let t = self.bullet_table();
        let n = t.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
    }

    pub fn is_adequate(&self) -> Result<bool> {
        let a = self.adequate_by_conjugation();
        if a != self.adequate_by_associativity() {
            return Err(Error::Inconsistent("adequacy tests disagree".into()));
        }
        Ok(a)
    }
}

pub struct Deformation {
    pub base: SelfAction,
    /// Γ_ω on the carrier of Γ
    pub bullet: Arc<FiniteGroup>,
    /// (Γ, Γ_ω, id) with Γ acting by ω(γ)
    pub forward: Triple,
    /// (Γ_ω, Γ, id) with γ acting by ω(γ)⁻¹
    pub backward: Triple,
}

pub fn deform(sa: &SelfAction) -> Result<Deformation> {
    if !sa.is_adequate()? {
        return Err(Error::NotAdequate);
    }
    let n = sa.gamma.order();
    let bullet = Arc::new(make_group(&sa.bullet_table())?);
    let id = Cocycle { values: (0..n as u32).collect() };
    let fwd = GammaGroup::from_fn_unchecked(sa.gamma.clone(), bullet.clone(), |g, x| sa.apply(g, x));
    crate::operator::make_gamma_group(sa.gamma.clone(), bullet.clone(), &fwd.action.rows())?;
    check_cocycle_law(&fwd, &id.to_vec())?;
    let invs: Vec<Vec<usize>> = (0..n).map(|g| sa.inverse_map(g)).collect();
    let bwd = GammaGroup::from_fn_unchecked(bullet.clone(), sa.gamma.clone(), |g, x| invs[g][x]);
    crate::operator::make_gamma_group(bullet.clone(), sa.gamma.clone(), &bwd.action.rows())?;
    check_cocycle_law(&bwd, &id.to_vec())?;
    let forward = Triple::new_unchecked(Arc::new(fwd), id.clone());
    let backward = Triple::new_unchecked(Arc::new(bwd), id);
    Ok(Deformation { base: sa.clone(), bullet, forward, backward })
}

impl Deformation {
    /// Ker ω: a common subgroup, normal in both laws, where • = ·.
    pub fn check(&self) -> Report {
        let mut r = Report::new();
        let k = self.base.kernel();
        let g = &self.base.gamma;
        r.check(self.bullet.order() == g.order(), || "|Γ_ω| ≠ |Γ|".into());
        r.check(g.is_normal(&k), || "Ker ω not normal in Γ".into());
        r.check(self.bullet.is_subgroup(&k) && self.bullet.is_normal(&k), || "Ker ω not normal in Γ_ω".into());
        for a in k.iter() {
            for b in k.iter() {
                r.check(self.bullet.mul(a, b) == g.mul(a, b), || "• ≠ · on Ker ω".into());
            }
        }
        r
    }
}

/// U_n^ad by u^{r_u} ≡ 1 (mod n), r_u = gcd(n, u − 1).
pub fn adequate_units_brute(n: usize) -> Vec<usize> {
    (1..n.max(2)).filter(|&u| gcd(u, n) == 1 && pow_mod(u, gcd(n, u - 1), n) == 1 % n).collect()
}

fn pow_mod(mut b: usize, mut e: usize, m: usize) -> usize {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn vp(mut n: usize, p: usize) -> usize {
    let mut k = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// Odd primes of n, with 2 when 4 | n.
fn special_primes(n: usize) -> Vec<usize> {
    factorize(n).into_iter().filter(|&(p, k)| p != 2 || k >= 2).map(|(p, _)| p).collect()
}

fn mult_order(u: usize, m: usize) -> usize {
    let mut k = 1;
    let mut x = u % m;
    while x != 1 % m {
        x = x * u % m;
        k += 1;
    }
    k
}

/// Conditions (i)-(iv) on the primary components of u.
pub fn is_adequate_unit_criterion(n: usize, u: usize) -> bool {
    if gcd(u, n) != 1 {
        return false;
    }
    let r = gcd(n, (u + n - 1) % n);
    if r == 1 {
        return false;
    }
    let pr = special_primes(r);
    for p in special_primes(n) {
        if pr.contains(&p) {
            if vp(n, p) > 2 * vp(r, p) {
                return false;
            }
        } else if p != 2 {
            let q = p.pow(vp(n, p) as u32);
            let o = mult_order(u, q);
            if o < 2 || gcd(r, p - 1) % o != 0 {
                return false;
            }
        } else {
            let m = 1usize << (vp(n, 2) - 1);
            if (u + 1) % m != 0 {
                return false;
            }
        }
    }
    true
}

pub fn adequate_units_criterion(n: usize) -> Vec<usize> {
    (1..n.max(2)).filter(|&u| is_adequate_unit_criterion(n, u)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitMethod {
    Brute,
    Criterion,
    Both,
}

/// Largest n for which the brute-force list is also checked against `is_adequate` on Z/n.
pub const ADEQUACY_CROSSCHECK_LIMIT: usize = 64;

pub fn adequate_units(n: usize, method: UnitMethod) -> Result<Vec<usize>> {
    if n < 2 {
        return Err(Error::BadParameters("n must be at least 2".into()));
    }
    if n > 1_000_000 {
        return Err(Error::OrderBoundExceeded { order: n, bound: 1_000_000 });
    }
    let brute = || -> Result<Vec<usize>> {
        let b = adequate_units_brute(n);
        if n <= ADEQUACY_CROSSCHECK_LIMIT {
            for u in (1..n).filter(|&u| gcd(u, n) == 1 && pow_mod(u, n, n) == 1 % n) {
                let ad = SelfAction::cyclic_unit(n, u)?.is_adequate()?;
                if ad != b.contains(&u) {
                    return Err(Error::Inconsistent(format!("u={u} mod {n}: gcd-power law vs adequacy")));
                }
            }
        }
        Ok(b)
    };
    match method {
        UnitMethod::Brute => brute(),
        UnitMethod::Criterion => Ok(adequate_units_criterion(n)),
        UnitMethod::Both => {
            let b = brute()?;
            if b != adequate_units_criterion(n) {
                return Err(Error::Inconsistent(format!("adequate units of {n}: methods disagree")));
            }
            Ok(b)
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeformationClass {
    pub group: Arc<FiniteGroup>,
    pub name: Option<String>,
    /// number of adequate self-actions landing in this class
    pub actions: usize,
    pub example: SelfAction,
}

/// All adequate self-actions of Γ, deformed and bucketed up to isomorphism.
pub fn adequate_self_actions(gamma: &Arc<FiniteGroup>) -> Result<Vec<SelfAction>> {
    if gamma.order() > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded { order: gamma.order(), bound: DEFAULT_ORDER_BOUND });
    }
    let aut = AutGroup::of(gamma)?;
    let mut out = Vec::new();
    for h in homomorphisms(gamma, &aut) {
        let maps = h.iter().map(|&i| aut.maps[i as usize].clone()).collect();
        let sa = SelfAction { gamma: gamma.clone(), maps };
        if sa.is_adequate()? {
            out.push(sa);
        }
    }
    Ok(out)
}

pub fn deformation_classes(gamma: &Arc<FiniteGroup>) -> Result<Vec<DeformationClass>> {
    let mut classes: Vec<DeformationClass> = Vec::new();
    for sa in adequate_self_actions(gamma)? {
        let d = deform(&sa)?;
        match classes.iter_mut().find(|c| find_isomorphism(&d.bullet, &c.group).is_some()) {
            Some(c) => c.actions += 1,
            None => {
                let name = crate::catalog::identify(&d.bullet)
                    .and_then(|i| crate::catalog::catalog()[i].name().map(str::to_string));
                classes.push(DeformationClass { group: d.bullet, name, actions: 1, example: sa });
            }
        }
    }
    Ok(classes)
}

pub fn is_rigid(classes: &[DeformationClass], gamma: &FiniteGroup) -> bool {
    classes.len() == 1 && find_isomorphism(&classes[0].group, gamma).is_some()
}

/// The group law on Γ/Δ transported from 𝔊 through η.
pub struct KneserStructure {
    pub reps: Vec<usize>,
    /// coset index of each element of Γ
    pub label: Vec<usize>,
    pub law: Vec<Vec<usize>>,
}

pub fn kneser_structure(t: &Triple) -> Result<KneserStructure> {
    if !t.is_surjective() {
        return Err(Error::NotKneser);
    }
    let (gamma, g) = (t.gamma(), t.g());
    let m = gamma.order();
    let mut label = vec![usize::MAX; m];
    let mut reps = Vec::new();
    for c in 0..m {
        if label[c] == usize::MAX {
            for d in t.delta.iter() {
                label[gamma.mul(c, d)] = reps.len();
            }
            reps.push(c);
        }
    }
    let mut of_g = vec![0; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        of_g[t.eta(r)] = i;
    }
    let law = (0..reps.len())
        .map(|x| (0..reps.len()).map(|y| of_g[g.mul(t.eta(reps[x]), t.eta(reps[y]))]).collect())
        .collect();
    Ok(KneserStructure { reps, label, law })
}

impl KneserStructure {
    pub fn size(&self) -> usize {
        self.reps.len()
    }

    /// γ·(x•y) = (γ·x)•I(γ̂)•(γ·y) and γ·I(x) = γ̂•I(γ·x)•γ̂.
    pub fn check(&self, gamma: &FiniteGroup) -> Report {
        let mut r = Report::new();
        let grp = make_group(&self.law);
        r.check(grp.is_ok(), || "• is not a group law".into());
        let Ok(grp) = grp else { return r };
        let act = |c: usize, x: usize| self.label[gamma.mul(c, self.reps[x])];
        let n = self.size();
        for c in 0..gamma.order() {
            let hat = self.label[c];
            let ihat = grp.inv(hat);
            for x in 0..n {
                for y in 0..n {
                    let lhs = act(c, self.law[x][y]);
                    let rhs = grp.mul(grp.mul(act(c, x), ihat), act(c, y));
                    r.check(lhs == rhs, || format!("axiom at γ={c}, x={x}, y={y}"));
                }
                let lhs = act(c, grp.inv(x));
                let rhs = grp.mul(grp.mul(hat, grp.inv(act(c, x))), hat);
                r.check(lhs == rhs, || format!("inverse identity at γ={c}, x={x}"));
            }
        }
        r
    }
}

/// An adequate self-action of Γ whose forward triple is isomorphic to t, if any.
pub fn induced_by_self_action(t: &Triple) -> Result<Option<SelfAction>> {
    if !(t.is_injective() && t.is_surjective()) {
        return Err(Error::BadShape("cocycle is not bijective".into()));
    }
    for sa in adequate_self_actions(t.gamma())? {
        let d = deform(&sa)?;
        if crate::classify::triples_isomorphic(&d.forward, t)? {
            return Ok(Some(sa));
        }
    }
    Ok(None)
}
