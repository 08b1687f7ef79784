//! Law audit suites over instance files or seeded random instances.

use endokat_core::dimension::SplitGroup;
use endokat_core::instances::{
    random_characteristic_bound, random_endogeny, random_group, random_negligible, random_sharp_family, random_subgroup,
    split_bimodule, Rng, GENERATION_BUDGET,
};
use endokat_core::laws::{self, Checks};
use endokat_core::oracle::abelian_groups;
use endokat_core::{Ambient, Endogeny, EndogenySet, Error, FinAbGroup, NegligibilityBound, Subgroup};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::json::{load_subgroup, AuditItem, EndogenySetJson, LoadError, SplitJson, FORMAT_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Prering,
    Equivalence,
    Sharp,
    Invariance,
    Katakernel,
    Dimension,
    Connectedness,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Prering => "prering",
            Suite::Equivalence => "equivalence",
            Suite::Sharp => "sharp",
            Suite::Invariance => "invariance",
            Suite::Katakernel => "katakernel",
            Suite::Dimension => "dimension",
            Suite::Connectedness => "connectedness",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_order: u128,
    pub max_closure: usize,
}

/// Default closure cap for audits. Prering closures cost a quadratic number
/// of graph operations, so audits sample past this size.
pub const AUDIT_CLOSURE: usize = 256;

/// Largest group drawn by the random generators.
pub const RANDOM_ORDER: u64 = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub law: String,
    pub instance: usize,
    pub counterexample: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactJson {
    pub instance: usize,
    pub name: String,
    pub value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub format_version: u32,
    pub kind: String,
    pub suite: Suite,
    pub oracle: bool,
    pub instances_run: usize,
    pub laws_evaluated: usize,
    pub laws_skipped: usize,
    pub violations: Vec<ViolationJson>,
    pub facts: Vec<FactJson>,
    pub runtime: u128,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Triples drawn from the item's endogenies; all of them when there are at
/// most five, otherwise consecutive windows.
fn triples(k: usize) -> Vec<(usize, usize, usize)> {
    if k == 0 {
        return Vec::new();
    }
    if k <= 5 {
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    out.push((i, j, l));
                }
            }
        }
        out
    } else {
        (0..k).map(|i| (i, (i + 1) % k, (i + 2) % k)).collect()
    }
}

struct Loaded {
    ambient: Ambient,
    bound: NegligibilityBound,
    es: Vec<Endogeny>,
    subgroups: Vec<Subgroup>,
    gamma: Vec<usize>,
    delta: Vec<usize>,
    split: Option<SplitGroup>,
}

fn load(item: &AuditItem, limits: Limits) -> Result<Loaded, LoadError> {
    let (ambient, bound, es) = item.set.load(limits.max_order)?;
    let subgroups = item
        .subgroups
        .iter()
        .map(|s| load_subgroup(&ambient, s))
        .collect::<Result<Vec<_>, _>>()?;
    let k = es.len();
    let gamma = item.gamma.clone().unwrap_or_else(|| if k > 0 { vec![0] } else { vec![] });
    let delta = item
        .delta
        .clone()
        .unwrap_or_else(|| (0..k).filter(|i| !gamma.contains(i)).collect());
    if gamma.iter().chain(&delta).any(|&i| i >= k) {
        return Err(LoadError::Invalid(Error::InvalidInput("ring generator index out of range".into())));
    }
    let split = match &item.split {
        Some(s) => {
            let s = s.load(limits.max_order)?;
            if s.ambient() != &ambient || s.bound() != &bound {
                return Err(LoadError::Invalid(Error::AmbientMismatch(
                    "split structure does not match the group and bound".into(),
                )));
            }
            Some(s)
        }
        None => None,
    };
    Ok(Loaded {
        ambient,
        bound,
        es,
        subgroups,
        gamma,
        delta,
        split,
    })
}

/// Runs one suite on one item.
pub fn run_item(suite: Suite, item: &AuditItem, oracle: bool, limits: Limits) -> Result<Checks, LoadError> {
    let l = load(item, limits)?;
    let es = &l.es;
    let mut c = Checks::new();
    match suite {
        Suite::Prering => {
            for (i, j, k) in triples(es.len()) {
                c.merge(laws::prering_laws(&es[i], &es[j], &es[k]));
            }
        }
        Suite::Equivalence => {
            let partner = |i: usize| -> Result<Endogeny, Error> {
                match (0..es.len()).find(|&m| m != i && es[i].equivalent(&es[m]).unwrap_or(false)) {
                    Some(m) => Ok(es[m].clone()),
                    None => es[i].add(&Endogeny::z(l.bound.n_max(), &l.bound)?),
                }
            };
            for (i, j, k) in triples(es.len()) {
                let (pi, pj) = match (partner(i), partner(j)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => {
                        c.skipped += 1;
                        continue;
                    }
                };
                c.merge(laws::equivalence_laws(&es[i], &pi, &es[j], &pj, &es[k]));
            }
        }
        Suite::Sharp => {
            for (i, j, k) in triples(es.len()) {
                c.merge(laws::sharp_laws(&es[i], &es[j], &es[k]));
            }
        }
        Suite::Invariance => {
            for i in 0..es.len() {
                for j in 0..es.len() {
                    let cands = laws::candidate_subgroups(&es[i], &es[j], &l.subgroups);
                    c.merge(laws::invariance_laws(&es[i], &es[j], &cands));
                }
            }
        }
        Suite::Katakernel => {
            let pick = |ix: &[usize]| ix.iter().map(|&i| es[i].clone()).collect::<Vec<_>>();
            let g = EndogenySet::new(&l.ambient, &l.bound, pick(&l.gamma))?;
            let d = EndogenySet::new(&l.ambient, &l.bound, pick(&l.delta))?;
            c.merge(laws::katakernel_laws(&g, &d, limits.max_closure));
            if let Some(s) = &l.split {
                c.guard("split-pipeline", |c| {
                    match endokat_core::dimension::split_pipeline(s, &g, &d, limits.max_closure) {
                        Ok(r) => {
                            c.check("bikat-model-finite", r.bikat_model_finite);
                            c.check("induced-maps-commute", r.induced_commute);
                            if let Some(q) = r.quasi_projections {
                                c.check("quasi-projections-commute-sharply", q.sharp_with_delta);
                                c.check("quasi-projections-fix-their-images", q.restricts_to_identity);
                                c.check("quasi-projections-sum-to-identity", q.sum_equivalent_to_identity);
                            }
                            Ok(())
                        }
                        Err(Error::NotSharplyCommuting(_)) => {
                            c.skipped += 1;
                            Ok(())
                        }
                        Err(e) => Err(e),
                    }
                });
            }
        }
        Suite::Dimension | Suite::Connectedness => {
            let Some(s) = &l.split else {
                return Err(LoadError::Invalid(Error::InvalidInput(format!(
                    "the {} suite needs a split group",
                    suite.name()
                ))));
            };
            let mut bs = l.subgroups.clone();
            bs.push(Subgroup::whole(&l.ambient));
            for e in es {
                bs.push(e.ker());
                bs.push(e.im());
            }
            bs.sort();
            bs.dedup();
            for (i, e) in es.iter().enumerate() {
                if suite == Suite::Dimension {
                    c.merge(laws::dimension_laws(s, e, &bs));
                } else {
                    for d in es.iter().skip(i + 1) {
                        c.merge(laws::connectedness_laws(s, e, d, &bs));
                    }
                    c.merge(laws::connectedness_laws(s, e, e, &bs));
                }
            }
        }
    }
    if oracle {
        for i in 0..es.len() {
            let j = (i + 1) % es.len();
            let bs = laws::candidate_subgroups(&es[i], &es[j], &l.subgroups);
            c.merge(laws::oracle_agreement(&es[i], &es[j], &bs));
        }
    }
    Ok(c)
}

/// Runs a suite over all items on the current rayon pool and merges the
/// results in item order.
pub fn run(suite: Suite, items: &[AuditItem], oracle: bool, limits: Limits) -> Result<AuditReport, LoadError> {
    let start = std::time::Instant::now();
    let results: Vec<Result<Checks, LoadError>> = items.par_iter().map(|it| run_item(suite, it, oracle, limits)).collect();
    let mut report = AuditReport {
        format_version: FORMAT_VERSION,
        kind: "audit_report".into(),
        suite,
        oracle,
        instances_run: items.len(),
        laws_evaluated: 0,
        laws_skipped: 0,
        violations: Vec::new(),
        facts: Vec::new(),
        runtime: 0,
    };
    for (idx, r) in results.into_iter().enumerate() {
        let c = r?;
        report.laws_evaluated += c.evaluated;
        report.laws_skipped += c.skipped;
        report.violations.extend(c.violations.into_iter().map(|v| ViolationJson {
            law: v.law.into(),
            instance: idx,
            counterexample: v.detail,
        }));
        report.facts.extend(c.facts.into_iter().map(|f| FactJson {
            instance: idx,
            name: f.name.into(),
            value: f.value,
        }));
    }
    report.runtime = start.elapsed().as_millis();
    Ok(report)
}

fn item(a: &Ambient, bound: &NegligibilityBound, es: &[Endogeny], subgroups: &[Subgroup]) -> AuditItem {
    AuditItem {
        set: EndogenySetJson::of(a, bound, es),
        subgroups: subgroups.iter().map(crate::json::subgroup_json).collect(),
        gamma: None,
        delta: None,
        split: None,
    }
}

/// Seeded random items for a suite; item `i` depends only on
/// `(suite, seed, i)`.
pub fn random_items(suite: Suite, count: usize, seed: u64, limits: Limits) -> Result<Vec<AuditItem>, Error> {
    (0..count)
        .into_par_iter()
        .map(|i| random_item(suite, &mut Rng::new(seed.wrapping_add(i as u64)), limits))
        .collect()
}

fn random_item(suite: Suite, rng: &mut Rng, limits: Limits) -> Result<AuditItem, Error> {
    let max = (RANDOM_ORDER as u128).min(limits.max_order) as u64;
    match suite {
        Suite::Prering | Suite::Equivalence | Suite::Sharp | Suite::Invariance => {
            let a = random_group(max.max(1), rng).ambient();
            let bound = random_characteristic_bound(&a, rng);
            let whole = Subgroup::whole(&a);
            let subs = vec![random_subgroup(&whole, rng), random_subgroup(&whole, rng)];
            let es = match suite {
                Suite::Prering => (0..3).map(|_| random_endogeny(&a, &bound, rng)).collect::<Result<Vec<_>, _>>()?,
                Suite::Equivalence => {
                    let g1 = random_endogeny(&a, &bound, rng)?;
                    let g2 = random_endogeny(&a, &bound, rng)?;
                    let d = random_endogeny(&a, &bound, rng)?;
                    let g1p = g1.add(&random_negligible(&a, &bound, rng)?)?;
                    let g2p = g2.add(&random_negligible(&a, &bound, rng)?)?;
                    vec![g1, g1p, g2, g2p, d]
                }
                _ => random_sharp_family(&a, &bound, 3, rng, GENERATION_BUDGET)?,
            };
            Ok(item(&a, &bound, &es, &subs))
        }
        Suite::Katakernel => {
            let p = [2u32, 3][rng.below(2) as usize];
            let torsion = random_coprime_torsion(p, 9, rng);
            let (k, m) = [(1, 1), (1, 2), (2, 1)][rng.below(3) as usize];
            let si = split_bimodule(p, k, m, &torsion, rng.next_u64() | 1)?;
            let mut es = si.gamma.clone();
            es.extend(si.delta.iter().cloned());
            let s = &si.group;
            let mut it = item(s.ambient(), s.bound(), &es, &[]);
            it.gamma = Some((0..si.gamma.len()).collect());
            it.delta = Some((si.gamma.len()..es.len()).collect());
            it.split = Some(SplitJson::of(s));
            Ok(it)
        }
        Suite::Dimension | Suite::Connectedness => {
            let p = [2u32, 3][rng.below(2) as usize];
            let n = 1 + rng.below(4) as usize;
            let torsion = random_coprime_torsion(p, 27, rng);
            let s = SplitGroup::new(p, n, &torsion)?;
            let es = if suite == Suite::Dimension {
                (0..3).map(|_| random_endogeny(s.ambient(), s.bound(), rng)).collect::<Result<Vec<_>, _>>()?
            } else {
                random_sharp_family(s.ambient(), s.bound(), 2, rng, GENERATION_BUDGET)?
            };
            let whole = Subgroup::whole(s.ambient());
            let subs = vec![random_subgroup(&whole, rng), random_subgroup(&whole, rng)];
            let mut it = item(s.ambient(), s.bound(), &es, &subs);
            it.split = Some(SplitJson::of(&s));
            Ok(it)
        }
    }
}

/// A random group of order at most `max` and prime to `p`.
pub fn random_coprime_torsion(p: u32, max: u64, rng: &mut Rng) -> FinAbGroup {
    let all: Vec<Vec<u64>> = abelian_groups(max)
        .into_iter()
        .filter(|f| f.iter().product::<u64>() % p as u64 != 0)
        .collect();
    FinAbGroup::from_invariant_factors(&all[rng.below(all.len() as u64) as usize]).expect("canonical list")
}
