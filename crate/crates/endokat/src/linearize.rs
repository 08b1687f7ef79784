//! The two pipelines behind `endokat linearize`.

use endokat_core::dimension::{is_minimal_bimodule, split_pipeline};
use endokat_core::linearize::{decompose, extract_field, lines, FieldReport, Matrix, MatrixAlgebra};
use endokat_core::{EndogenySet, Error};
use serde::{Deserialize, Serialize};

use crate::json::{matrix_rows, to_json, subgroup_json, Coords, LoadedSplit, SubgroupJson, TruthJson, FORMAT_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub order: u128,
    pub degree: usize,
    pub vs_dimension: usize,
    pub field_basis: Vec<Vec<Vec<i64>>>,
    pub k_basis_of_v: Vec<Vec<u32>>,
}

impl FieldJson {
    fn of(r: &FieldReport) -> Self {
        FieldJson {
            order: r.order,
            degree: r.degree,
            vs_dimension: r.vs_dimension,
            field_basis: r.field_basis.iter().map(matrix_rows).collect(),
            k_basis_of_v: r.k_basis_of_v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub line_dimension: usize,
    pub lines: Vec<Vec<Vec<u32>>>,
    pub certificate: String,
    pub projections: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub format_version: u32,
    pub kind: String,
    pub p: u32,
    pub n: usize,
    pub field: FieldJson,
    pub decomposition: DecompositionJson,
    pub invariants_hold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth: Option<TruthJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_matches: Option<bool>,
    pub runtime: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedJson {
    pub quotient: Vec<u64>,
    pub gamma: Vec<Vec<Coords>>,
    pub delta: Vec<Vec<Coords>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiJson {
    pub lines: usize,
    pub line_dimension: usize,
    pub projections: Vec<Vec<(Coords, Coords)>>,
    pub sharp_with_delta: bool,
    pub restricts_to_identity: bool,
    pub sum_equivalent_to_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub format_version: u32,
    pub kind: String,
    pub moduli: Vec<u64>,
    pub kat_gamma: SubgroupJson,
    pub kat_delta: SubgroupJson,
    pub bikat: SubgroupJson,
    pub full_closure: bool,
    pub elements_checked: usize,
    pub kat_gamma_fully_gamma_invariant: bool,
    pub bikat_fully_invariant: bool,
    pub preimages_fully_delta_invariant: bool,
    pub bikat_model_finite: bool,
    pub induced: InducedJson,
    pub induced_commute: bool,
    pub minimal: bool,
    pub minimality_exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_projections: Option<QuasiJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shadow_field: Option<FieldJson>,
    pub runtime: u128,
}

/// A failed run: the error kind, a message and an optional witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub format_version: u32,
    pub kind: String,
    pub error: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Diagnostic {
    pub fn from_error(e: &Error) -> Self {
        let witness = match e {
            Error::HypothesisViolation { witness: Some(w), .. } => Some(serde_json::json!(w)),
            _ => None,
        };
        Diagnostic {
            format_version: FORMAT_VERSION,
            kind: "diagnostic".into(),
            error: e.kind().into(),
            message: e.to_string(),
            witness,
        }
    }
}

pub enum Outcome {
    Matrix(MatrixReport),
    Split(SplitReport),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Matrix(r) => r.invariants_hold && r.truth_matches != Some(false),
            Outcome::Split(r) => {
                r.kat_gamma_fully_gamma_invariant
                    && r.bikat_fully_invariant
                    && r.preimages_fully_delta_invariant
                    && r.induced_commute
                    && r.bikat_model_finite
                    && r.quasi_projections.as_ref().is_none_or(|q| {
                        q.sharp_with_delta && q.restricts_to_identity && q.sum_equivalent_to_identity
                    })
            }
        }
    }

    pub fn to_pretty(&self) -> String {
        match self {
            Outcome::Matrix(r) => to_json(r),
            Outcome::Split(r) => to_json(r),
        }
    }
}

pub fn run_matrix(
    p: u32,
    n: usize,
    gamma: &[Matrix],
    delta: &[Matrix],
    truth: Option<TruthJson>,
    cap: usize,
) -> Result<MatrixReport, Error> {
    let start = std::time::Instant::now();
    let field = extract_field(p, n, gamma, delta, cap)?;
    let mut ok = field.verify(gamma, delta).is_ok();
    let g = MatrixAlgebra::centralizer(p, n, delta)?;
    let d = MatrixAlgebra::centralizer(p, n, g.basis())?;
    let ls = lines(&g, cap)?;
    let dec = decompose(&g, d.basis(), cap)?;
    ok &= dec.verify(ls.k, d.basis()).is_ok();
    ok &= dec.lines.len() * ls.k == n;
    let truth_matches = truth
        .as_ref()
        .map(|t| t.order as u128 == field.order && t.vs_dimension == field.vs_dimension && dec.lines.len() == t.vs_dimension);
    Ok(MatrixReport {
        format_version: FORMAT_VERSION,
        kind: "field_report".into(),
        p,
        n,
        field: FieldJson::of(&field),
        decomposition: DecompositionJson {
            line_dimension: ls.k,
            lines: dec.lines.iter().map(|l| l.subspace.basis().to_vec()).collect(),
            certificate: format!("{:?}", ls.certificate).to_lowercase(),
            projections: dec.projections.iter().map(matrix_rows).collect(),
        },
        invariants_hold: ok,
        truth,
        truth_matches,
        runtime: start.elapsed().as_millis(),
    })
}

pub fn run_split(ls: &LoadedSplit, cap: usize) -> Result<SplitReport, Error> {
    let start = std::time::Instant::now();
    let s = &ls.group;
    let m = is_minimal_bimodule(s, &ls.gamma, &ls.delta)?;
    if let Some(w) = &m.witness {
        return Err(Error::HypothesisViolation {
            reason: format!("weakly invariant subgroup of dimension {} found", s.dim(w)?),
            witness: Some(
                w.generators()
                    .into_iter()
                    .map(|g| g.coords.iter().map(|&c| c as u32).collect())
                    .collect(),
            ),
        });
    }
    let g = EndogenySet::new(s.ambient(), s.bound(), ls.gamma.clone())?;
    let d = EndogenySet::new(s.ambient(), s.bound(), ls.delta.clone())?;
    let r = split_pipeline(s, &g, &d, cap)?;
    let shadow_field = if s.n() > 0 {
        let gv: Vec<Matrix> = ls.gamma.iter().map(|e| s.shadow(e)).collect::<Result<_, _>>()?;
        let dv: Vec<Matrix> = ls.delta.iter().map(|e| s.shadow(e)).collect::<Result<_, _>>()?;
        Some(FieldJson::of(&extract_field(s.p(), s.n(), &gv, &dv, cap)?))
    } else {
        None
    };
    let homs = |hs: &[endokat_core::Hom]| hs.iter().map(|h| h.images().iter().map(|x| x.coords.clone()).collect()).collect();
    Ok(SplitReport {
        format_version: FORMAT_VERSION,
        kind: "bimodule_report".into(),
        moduli: s.ambient().moduli().to_vec(),
        kat_gamma: subgroup_json(&r.kat_gamma),
        kat_delta: subgroup_json(&r.kat_delta),
        bikat: subgroup_json(&r.bikat),
        full_closure: r.full_closure,
        elements_checked: r.elements_checked,
        kat_gamma_fully_gamma_invariant: r.kat_gamma_fully_gamma_invariant,
        bikat_fully_invariant: r.bikat_fully_invariant,
        preimages_fully_delta_invariant: r.preimages_fully_delta_invariant,
        bikat_model_finite: r.bikat_model_finite,
        induced: InducedJson {
            quotient: r.induced.quotient.target().ambient().moduli().to_vec(),
            gamma: homs(&r.induced.gamma),
            delta: homs(&r.induced.delta),
        },
        induced_commute: r.induced_commute,
        minimal: m.minimal,
        minimality_exhaustive: m.exhaustive,
        quasi_projections: r.quasi_projections.map(|q| QuasiJson {
            lines: q.lines,
            line_dimension: q.line_dim,
            projections: q
                .projections
                .iter()
                .map(|e| crate::json::EndogenyJson::of(e).graph_generators)
                .collect(),
            sharp_with_delta: q.sharp_with_delta,
            restricts_to_identity: q.restricts_to_identity,
            sum_equivalent_to_identity: q.sum_equivalent_to_identity,
        }),
        shadow_field,
        runtime: start.elapsed().as_millis(),
    })
}
