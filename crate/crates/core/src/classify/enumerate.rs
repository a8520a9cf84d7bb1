use super::iso::{find_triple_iso, triple_invariants};
use super::{is_mncg, is_mncg_fast, is_mnk, is_mnk_fast, MncgVerdict, MnkVerdict};
use crate::catalog::groups_up_to;
use crate::cocycle::{cocycle_search, Cocycle, Triple};
use crate::error::{Error, Result};
use crate::group::{gcd, homomorphisms, AutGroup, FiniteGroup, GroupJson};
use crate::kneser::classify_ideals;
use crate::operator::GammaGroup;
use crate::report::Report;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Largest order for which the built-in catalog is complete.
const CATALOG_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    All,
    Abelian,
    Character,
}

impl FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Filter::All),
            "abelian" => Ok(Filter::Abelian),
            "character" => Ok(Filter::Character),
            _ => Err(Error::Parse(format!("unknown filter {s:?}"))),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::All => "all",
            Filter::Abelian => "abelian",
            Filter::Character => "character",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_gamma: usize,
    pub max_g: usize,
    /// exponent of 𝔊
    pub max_exponent: Option<usize>,
    /// require gcd(|Γ|, |𝔊|) = 1
    pub coprime: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_gamma: 16, max_g: 16, max_exponent: None, coprime: false }
    }
}

impl Bounds {
    pub fn new(max_gamma: usize, max_g: usize) -> Self {
        Bounds { max_gamma, max_g, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.max_gamma == 0 || self.max_g == 0 {
            return Err(Error::BadParameters("bounds must be positive".into()));
        }
        let worst = self.max_gamma.max(self.max_g);
        if worst > CATALOG_LIMIT {
            return Err(Error::OrderBoundExceeded { order: worst, bound: CATALOG_LIMIT });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunKind {
    Mnk,
    Mncg,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Certificate {
    Mnk(MnkVerdict),
    Mncg(MncgVerdict),
}

#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub rep: Triple,
    /// enumerated triples in this class
    pub members: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub struct ClassificationRun {
    pub kind: RunKind,
    pub bounds: Bounds,
    pub filter: Filter,
    pub examined: usize,
    pub hits: usize,
    pub classes: Vec<ClassRecord>,
    /// bucketing soundness and per-class set checks
    pub report: Report,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassJson {
    pub gamma: GroupJson,
    pub g: GroupJson,
    pub action: Vec<Vec<usize>>,
    pub cocycle: Vec<usize>,
    pub members: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunJson {
    pub kind: RunKind,
    pub bounds: Bounds,
    pub filter: Filter,
    pub examined: usize,
    pub hits: usize,
    pub classes: Vec<ClassJson>,
}

impl ClassificationRun {
    pub fn to_json(&self) -> RunJson {
        RunJson {
            kind: self.kind,
            bounds: self.bounds.clone(),
            filter: self.filter,
            examined: self.examined,
            hits: self.hits,
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    gamma: c.rep.gamma().to_json(),
                    g: c.rep.g().to_json(),
                    action: c.rep.gg.action.rows(),
                    cocycle: c.rep.eta.to_vec(),
                    members: c.members,
                    certificate: c.certificate.clone(),
                })
                .collect(),
        }
    }

    /// (|Γ|, |𝔊|) of every class, sorted.
    pub fn shapes(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.classes.iter().map(|c| (c.rep.gamma().order(), c.rep.g().order())).collect();
        v.sort_unstable();
        v
    }

    pub fn triples(&self) -> impl Iterator<Item = &Triple> {
        self.classes.iter().map(|c| &c.rep)
    }
}

/// (Z/k)^× with 1 at index 0; `units[i]` is the residue of element i.
pub fn units_group(k: usize) -> (FiniteGroup, Vec<usize>) {
    if k <= 2 {
        return (FiniteGroup::from_fn_unchecked(1, |_, _| 0), vec![1 % k.max(1)]);
    }
    let units: Vec<usize> = (1..k).filter(|&u| gcd(u, k) == 1).collect();
    let mut index = vec![usize::MAX; k];
    for (i, &u) in units.iter().enumerate() {
        index[u] = i;
    }
    let grp = FiniteGroup::from_fn_unchecked(units.len(), |a, b| index[units[a] * units[b] % k]);
    (grp, units)
}

/// Operator groups on (Γ, 𝔊) admitted by the filter and bounds.
pub fn actions(gamma: &Arc<FiniteGroup>, g: &Arc<FiniteGroup>, filter: Filter, bounds: &Bounds) -> Result<Vec<Arc<GammaGroup>>> {
    let k = g.exponent();
    let allowed = match filter {
        Filter::All => true,
        Filter::Abelian => gamma.is_abelian() && g.is_abelian(),
        Filter::Character => g.is_abelian(),
    } && bounds.max_exponent.map_or(true, |e| k <= e)
        && (!bounds.coprime || gcd(gamma.order(), g.order()) == 1);
    if !allowed {
        return Ok(Vec::new());
    }
    Ok(match filter {
        Filter::Character => {
            let (units, residues) = units_group(k);
            homomorphisms(gamma, &units)
                .into_iter()
                .map(|h| {
                    let chi: Vec<usize> = h.iter().map(|&i| residues[i as usize]).collect();
                    Arc::new(GammaGroup::character(gamma.clone(), g.clone(), &chi))
                })
                .collect()
        }
        _ => {
            let aut = AutGroup::of(g)?;
            homomorphisms(gamma, &aut)
                .into_iter()
                .map(|h| Arc::new(GammaGroup::from_hom(gamma.clone(), g.clone(), &aut.maps, &h)))
                .collect()
        }
    })
}

fn scan_pair(
    gamma: &Arc<FiniteGroup>,
    g: &Arc<FiniteGroup>,
    kind: RunKind,
    filter: Filter,
    bounds: &Bounds,
) -> Result<(usize, Vec<Triple>)> {
    let (m, n) = (gamma.order(), g.order());
    if kind == RunKind::Mncg && (n > m || m % n != 0) {
        return Ok((0, Vec::new()));
    }
    let mut examined = 0;
    let mut hits = Vec::new();
    for gg in actions(gamma, g, filter, bounds)? {
        let mut err = None;
        cocycle_search(&gg, &mut |vals| {
            examined += 1;
            let t = Triple::new_unchecked(gg.clone(), Cocycle { values: vals.to_vec() });
            let verdict = match kind {
                RunKind::Mnk => {
                    if !t.generating || t.is_surjective() || !t.is_normalized() {
                        return true;
                    }
                    is_mnk_fast(&t)
                }
                RunKind::Mncg => {
                    if !t.is_surjective() || !t.is_normalized() {
                        return true;
                    }
                    is_mncg_fast(&t)
                }
            };
            match verdict {
                Ok(true) => hits.push(t),
                Ok(false) => {}
                Err(e) => {
                    err = Some(e);
                    return false;
                }
            }
            true
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok((examined, hits))
}

fn run(kind: RunKind, bounds: &Bounds, filter: Filter, workers: usize) -> Result<ClassificationRun> {
    bounds.validate()?;
    let gammas = groups_up_to(bounds.max_gamma);
    let gs = groups_up_to(bounds.max_g);
    let pairs: Vec<(Arc<FiniteGroup>, Arc<FiniteGroup>)> =
        gammas.iter().flat_map(|a| gs.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::BadParameters(e.to_string()))?;
    let scanned: Vec<Result<(usize, Vec<Triple>)>> =
        pool.install(|| pairs.par_iter().map(|(a, b)| scan_pair(a, b, kind, filter, bounds)).collect());

    let mut examined = 0;
    let mut hits = 0;
    let mut report = Report::new();
    let mut classes: Vec<ClassRecord> = Vec::new();
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for res in scanned {
        let (e, found) = res?;
        examined += e;
        for t in found {
            hits += 1;
            let key = triple_invariants(&t);
            let slot = buckets.entry(key).or_default();
            let matches: Vec<usize> =
                slot.iter().copied().filter(|&c| find_triple_iso(&classes[c].rep, &t).is_some()).collect();
            report.check(matches.len() <= 1, || format!("triple matches {} representatives", matches.len()));
            match matches.first() {
                Some(&c) => classes[c].members += 1,
                None => {
                    let certificate = match kind {
                        RunKind::Mnk => Certificate::Mnk(is_mnk(&t)?),
                        RunKind::Mncg => Certificate::Mncg(is_mncg(&t)?),
                    };
                    slot.push(classes.len());
                    classes.push(ClassRecord { rep: t, members: 1, certificate });
                }
            }
        }
    }
    for c in &classes {
        let ci = classify_ideals(&c.rep)?;
        let bottom = ci.ideals.bottom();
        let bad = match kind {
            RunKind::Mnk => (0..ci.ideals.len()).any(|i| ci.kneser[i] == (i == bottom)),
            RunKind::Mncg => (0..ci.ideals.len()).any(|i| ci.cogalois[i] == (i == bottom)),
        };
        report.check(!bad, || "non-Kneser / non-coGalois set is not exactly {1}".into());
        let ok = match &c.certificate {
            Certificate::Mnk(v) => v.mnk,
            Certificate::Mncg(v) => v.mncg,
        };
        report.check(ok, || "certificate disagrees with fast verdict".into());
    }
    Ok(ClassificationRun { kind, bounds: bounds.clone(), filter, examined, hits, classes, report: report.finish() })
}

pub fn enumerate_mnk(bounds: &Bounds, filter: Filter, workers: usize) -> Result<ClassificationRun> {
    run(RunKind::Mnk, bounds, filter, workers)
}

pub fn enumerate_mncg(bounds: &Bounds, filter: Filter, workers: usize) -> Result<ClassificationRun> {
    run(RunKind::Mncg, bounds, filter, workers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units() {
        let (u8g, res) = units_group(8);
        assert_eq!(res, vec![1, 3, 5, 7]);
        assert_eq!(u8g.exponent(), 2);
        assert_eq!(units_group(2).1, vec![1]);
    }

    #[test]
    fn tiny_sweeps() {
        let r = enumerate_mnk(&Bounds::new(2, 4), Filter::All, 2).unwrap();
        assert!(r.report.passed());
        assert_eq!(r.shapes(), vec![(2, 3), (2, 4)]);
        let c = enumerate_mncg(&Bounds::new(4, 4), Filter::All, 2).unwrap();
        assert_eq!(c.shapes(), vec![(4, 4)]);
    }

    #[test]
    fn deterministic_across_workers() {
        let a = enumerate_mnk(&Bounds::new(6, 7), Filter::Character, 1).unwrap();
        let b = enumerate_mnk(&Bounds::new(6, 7), Filter::Character, 4).unwrap();
        assert_eq!(
            serde_json::to_string(&a.to_json()).unwrap(),
            serde_json::to_string(&b.to_json()).unwrap()
        );
    }

    #[test]
    fn bound_errors() {
        assert!(enumerate_mnk(&Bounds::new(17, 4), Filter::All, 1).unwrap_err().is_bound());
    }
}
