//! Instance files from the seeded generators.

use endokat_core::instances::{
    fixture_nonliftable, fixture_z_f, matrix_bimodule, random_characteristic_bound, random_endogeny, random_group,
    random_sharp_pair, split_bimodule, split_bimodule_planted, Rng, GENERATION_BUDGET,
};
use endokat_core::{Ambient, Error, FinAbGroup, NegligibilityBound};
use serde_json::{json, Map, Value};

use crate::audit::{random_items, Limits, Suite};
use crate::json::{load_subgroup, EndogenyJson, EndogenySetJson, GroupJson, Instance, InstanceFile, LoadError, Provenance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Kind {
    RandomGroup,
    RandomEndogeny,
    SharpPair,
    SplitBimodule,
    MatrixBimodule,
    FixtureNonliftable,
    #[value(name = "fixture_z_f")]
    FixtureZF,
    AuditInstances,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::RandomGroup => "random_group",
            Kind::RandomEndogeny => "random_endogeny",
            Kind::SharpPair => "sharp_pair",
            Kind::SplitBimodule => "split_bimodule",
            Kind::MatrixBimodule => "matrix_bimodule",
            Kind::FixtureNonliftable => "fixture_nonliftable",
            Kind::FixtureZF => "fixture_z_f",
            Kind::AuditInstances => "audit_instances",
        }
    }
}

/// Every knob any generator reads; unused ones are ignored and not recorded.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub p: Option<u32>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub order: Option<u64>,
    pub moduli: Option<Vec<u64>>,
    pub torsion: Option<Vec<u64>>,
    pub subgroup: Option<Vec<Vec<i64>>>,
    pub planted: bool,
    pub suite: Option<Suite>,
    pub count: Option<usize>,
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T, LoadError> {
    v.clone().ok_or_else(|| LoadError::Malformed(format!("--{name} is required for this kind")))
}

fn bad(e: Error) -> LoadError {
    LoadError::Malformed(e.to_string())
}

pub fn generate(kind: Kind, seed: u64, params: &Params, limits: Limits) -> Result<InstanceFile, LoadError> {
    let mut rec = Map::new();
    let mut rng = Rng::new(seed);
    let group_of = |rec: &mut Map<String, Value>, rng: &mut Rng| -> Result<Ambient, LoadError> {
        match &params.moduli {
            Some(m) => {
                rec.insert("moduli".into(), json!(m));
                GroupJson { moduli: m.clone() }.load(limits.max_order).map_err(|e| match e {
                    LoadError::Invalid(e) => bad(e),
                    e => e,
                })
            }
            None => {
                let order = params.order.unwrap_or(64);
                rec.insert("order".into(), json!(order));
                Ok(random_group(order.min(limits.max_order.min(u64::MAX as u128) as u64), rng).ambient())
            }
        }
    };
    let body = match kind {
        Kind::RandomGroup => {
            let order = params.order.unwrap_or(64);
            rec.insert("order".into(), json!(order));
            let g = random_group(order, &mut rng);
            Instance::Group {
                group: GroupJson {
                    moduli: g.invariant_factors().to_vec(),
                },
            }
        }
        Kind::RandomEndogeny => {
            let a = group_of(&mut rec, &mut rng)?;
            let bound = random_characteristic_bound(&a, &mut rng);
            let e = random_endogeny(&a, &bound, &mut rng).map_err(bad)?;
            Instance::Endogeny {
                endogeny: EndogenyJson::of(&e),
            }
        }
        Kind::SharpPair => {
            let a = group_of(&mut rec, &mut rng)?;
            let bound = random_characteristic_bound(&a, &mut rng);
            let (g, d) = random_sharp_pair(&a, &bound, &mut rng, GENERATION_BUDGET).map_err(bad)?;
            Instance::EndogenySet {
                set: EndogenySetJson::of(&a, &bound, &[g, d]),
            }
        }
        Kind::SplitBimodule => {
            let p = need(&params.p, "p")?;
            let k = params.k.unwrap_or(1);
            let torsion = params.torsion.clone().unwrap_or_default();
            rec.insert("p".into(), json!(p));
            rec.insert("k".into(), json!(k));
            rec.insert("torsion".into(), json!(torsion));
            let t = FinAbGroup::new(&torsion.iter().map(|&x| x as i64).collect::<Vec<_>>()).map_err(bad)?;
            let si = if params.planted {
                rec.insert("planted".into(), json!(true));
                split_bimodule_planted(p, k, &t, seed).map_err(bad)?
            } else {
                let m = params.m.unwrap_or(2);
                rec.insert("m".into(), json!(m));
                split_bimodule(p, k, m, &t, seed).map_err(bad)?
            };
            Instance::split(&si)
        }
        Kind::MatrixBimodule => {
            let p = need(&params.p, "p")?;
            let k = need(&params.k, "k")?;
            let m = need(&params.m, "m")?;
            rec.insert("p".into(), json!(p));
            rec.insert("k".into(), json!(k));
            rec.insert("m".into(), json!(m));
            Instance::matrix(&matrix_bimodule(p, k, m, seed).map_err(bad)?)
        }
        Kind::FixtureNonliftable => {
            let p = need(&params.p, "p")?;
            rec.insert("p".into(), json!(p));
            let (_, _, e) = fixture_nonliftable(p as u64).map_err(bad)?;
            Instance::Endogeny {
                endogeny: EndogenyJson::of(&e),
            }
        }
        Kind::FixtureZF => {
            let moduli = need(&params.moduli, "moduli")?;
            let f = need(&params.subgroup, "subgroup")?;
            rec.insert("moduli".into(), json!(moduli));
            rec.insert("subgroup".into(), json!(f));
            let a = Ambient::new(moduli).map_err(bad)?;
            let f = load_subgroup(&a, &f)?;
            let e = fixture_z_f(&f, &NegligibilityBound::new(f.clone())).map_err(bad)?;
            Instance::Endogeny {
                endogeny: EndogenyJson::of(&e),
            }
        }
        Kind::AuditInstances => {
            let suite = need(&params.suite, "suite")?;
            let count = params.count.unwrap_or(10);
            rec.insert("suite".into(), json!(suite));
            rec.insert("count".into(), json!(count));
            Instance::AuditInstances {
                instances: random_items(suite, count, seed, limits).map_err(bad)?,
            }
        }
    };
    Ok(InstanceFile::new(
        body,
        Some(Provenance {
            generator: kind.name().into(),
            seed,
            parameters: rec,
        }),
    ))
}
