//! Parsing plus the validity predicate of each instance kind; the result is
//! the normalized file, with every graph in canonical generators.

use endokat_core::Error;

use crate::audit::Limits;
use crate::json::{
    load_matrices, load_split, EndogenyJson, EndogenySetJson, GroupJson, Instance, InstanceFile, LoadError,
};

pub fn validate(text: &str, limits: Limits) -> Result<InstanceFile, LoadError> {
    let file = InstanceFile::parse(text)?;
    let body = match &file.body {
        Instance::Group { group } => {
            let a = group.load(limits.max_order)?;
            Instance::Group { group: GroupJson::of(&a) }
        }
        Instance::Endogeny { endogeny } => Instance::Endogeny {
            endogeny: EndogenyJson::of(&endogeny.load(limits.max_order)?),
        },
        Instance::EndogenySet { set } => {
            let (a, b, es) = set.load(limits.max_order)?;
            Instance::EndogenySet {
                set: EndogenySetJson::of(&a, &b, &es),
            }
        }
        Instance::SplitBimodule {
            split,
            gamma,
            delta,
            planted,
        } => {
            let ls = load_split(split, gamma, delta, planted.as_ref(), limits.max_order)?;
            for (i, g) in ls.gamma.iter().enumerate() {
                for (j, d) in ls.delta.iter().enumerate() {
                    if !g.sharp_commutes(d)? {
                        return Err(LoadError::Invalid(Error::NotSharplyCommuting(format!(
                            "gamma {i} and delta {j}"
                        ))));
                    }
                }
            }
            if let Some(w) = &ls.planted {
                for g in ls.gamma.iter().chain(&ls.delta) {
                    if !g.weakly_invariant(w)? {
                        return Err(LoadError::Invalid(Error::NotWeaklyInvariant));
                    }
                }
            }
            let gg = |es: &[endokat_core::Endogeny]| es.iter().map(|e| EndogenyJson::of(e).graph_generators).collect();
            Instance::SplitBimodule {
                split: split.clone(),
                gamma: gg(&ls.gamma),
                delta: gg(&ls.delta),
                planted: ls.planted.as_ref().map(crate::json::subgroup_json),
            }
        }
        Instance::MatrixBimodule {
            p,
            n,
            gamma,
            delta,
            truth,
        } => {
            let g = load_matrices(*p, *n, gamma)?;
            let d = load_matrices(*p, *n, delta)?;
            for (i, x) in g.iter().enumerate() {
                for (j, y) in d.iter().enumerate() {
                    if !x.commutes_with(y) {
                        return Err(LoadError::Invalid(Error::HypothesisViolation {
                            reason: format!("gamma {i} does not commute with delta {j}"),
                            witness: None,
                        }));
                    }
                }
            }
            Instance::MatrixBimodule {
                p: *p,
                n: *n,
                gamma: g.iter().map(crate::json::matrix_rows).collect(),
                delta: d.iter().map(crate::json::matrix_rows).collect(),
                truth: truth.clone(),
            }
        }
        Instance::AuditInstances { instances } => {
            let mut out = Vec::with_capacity(instances.len());
            for it in instances {
                let (a, b, es) = it.set.load(limits.max_order)?;
                if let Some(s) = &it.split {
                    let s = s.load(limits.max_order)?;
                    if s.ambient() != &a || s.bound() != &b {
                        return Err(LoadError::Invalid(Error::AmbientMismatch(
                            "split structure does not match the group and bound".into(),
                        )));
                    }
                }
                let mut it = it.clone();
                it.set = EndogenySetJson::of(&a, &b, &es);
                out.push(it);
            }
            Instance::AuditInstances { instances: out }
        }
    };
    Ok(InstanceFile::new(body, file.generated_by))
}
