//! On-disk formats. Every file is one JSON object with `format_version` and
//! `kind`; the layouts are described in `docs/formats.md`.

use endokat_core::dimension::SplitGroup;
use endokat_core::instances::{MatrixInstance, SplitInstance};
use endokat_core::linearize::Matrix;
use endokat_core::{Ambient, Endogeny, Error, FinAbGroup, GroupElement, NegligibilityBound, Subgroup};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const FORMAT_VERSION: u32 = 1;

pub type Coords = Vec<i64>;
pub type SubgroupJson = Vec<Coords>;

/// Why a file could not be turned into library values.
#[derive(Debug)]
pub enum LoadError {
    /// Unreadable, not JSON, wrong shape, or above a configured cap.
    Malformed(String),
    /// Well-formed but mathematically invalid.
    Invalid(Error),
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => LoadError::Malformed(e.to_string()),
            e => LoadError::Invalid(e),
        }
    }
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Malformed(m) => write!(f, "malformed input: {m}"),
            LoadError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub moduli: Vec<u64>,
}

impl GroupJson {
    pub fn of(a: &Ambient) -> Self {
        GroupJson { moduli: a.moduli().to_vec() }
    }

    pub fn load(&self, max_order: u128) -> Result<Ambient, LoadError> {
        let a = Ambient::new(self.moduli.clone())?;
        if a.order() > max_order {
            return Err(LoadError::Malformed(format!("group of order {} above --max-order {max_order}", a.order())));
        }
        Ok(a)
    }
}

pub fn subgroup_json(h: &Subgroup) -> SubgroupJson {
    h.generators().into_iter().map(|g| g.coords).collect()
}

pub fn load_element(a: &Ambient, c: &[i64]) -> Result<GroupElement, LoadError> {
    Ok(a.element(c)?)
}

pub fn load_subgroup(a: &Ambient, gens: &[Coords]) -> Result<Subgroup, LoadError> {
    let els = gens.iter().map(|c| load_element(a, c)).collect::<Result<Vec<_>, _>>()?;
    Ok(Subgroup::generated(a, &els)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndogenyJson {
    pub source: GroupJson,
    pub target: GroupJson,
    pub graph_generators: Vec<(Coords, Coords)>,
    pub n_max: SubgroupJson,
}

impl EndogenyJson {
    pub fn of(e: &Endogeny) -> Self {
        EndogenyJson {
            source: GroupJson::of(e.source()),
            target: GroupJson::of(e.target()),
            graph_generators: e.graph_generators().into_iter().map(|(a, b)| (a.coords, b.coords)).collect(),
            n_max: subgroup_json(e.bound().n_max()),
        }
    }

    pub fn load(&self, max_order: u128) -> Result<Endogeny, LoadError> {
        let s = self.source.load(max_order)?;
        let t = self.target.load(max_order)?;
        let bound = NegligibilityBound::new(load_subgroup(&t, &self.n_max)?);
        self.load_with(&s, &t, &bound)
    }

    fn load_with(&self, s: &Ambient, t: &Ambient, bound: &NegligibilityBound) -> Result<Endogeny, LoadError> {
        let gens = self
            .graph_generators
            .iter()
            .map(|(a, b)| Ok((load_element(s, a)?, load_element(t, b)?)))
            .collect::<Result<Vec<_>, LoadError>>()?;
        Ok(Endogeny::validate(s, t, &gens, bound)?)
    }
}

/// Endogenies of one group sharing one bound, written by their graph
/// generators only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndogenySetJson {
    pub ambient: GroupJson,
    pub n_max: SubgroupJson,
    pub generators: Vec<Vec<(Coords, Coords)>>,
}

impl EndogenySetJson {
    pub fn of(a: &Ambient, bound: &NegligibilityBound, es: &[Endogeny]) -> Self {
        EndogenySetJson {
            ambient: GroupJson::of(a),
            n_max: subgroup_json(bound.n_max()),
            generators: es.iter().map(|e| EndogenyJson::of(e).graph_generators).collect(),
        }
    }

    pub fn load(&self, max_order: u128) -> Result<(Ambient, NegligibilityBound, Vec<Endogeny>), LoadError> {
        let a = self.ambient.load(max_order)?;
        let bound = NegligibilityBound::new(load_subgroup(&a, &self.n_max)?);
        let es = self
            .generators
            .iter()
            .map(|g| {
                EndogenyJson {
                    source: self.ambient.clone(),
                    target: self.ambient.clone(),
                    graph_generators: g.clone(),
                    n_max: self.n_max.clone(),
                }
                .load_with(&a, &a, &bound)
            })
            .collect::<Result<_, _>>()?;
        Ok((a, bound, es))
    }
}

/// `F_p^n ⊕ T` with `T` given by its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitJson {
    pub p: u32,
    pub n: usize,
    pub torsion: Vec<u64>,
}

impl SplitJson {
    pub fn of(s: &SplitGroup) -> Self {
        SplitJson {
            p: s.p(),
            n: s.n(),
            torsion: s.torsion().invariant_factors().to_vec(),
        }
    }

    pub fn load(&self, max_order: u128) -> Result<SplitGroup, LoadError> {
        let t = FinAbGroup::from_invariant_factors(&self.torsion)?;
        let s = SplitGroup::new(self.p, self.n, &t)?;
        if s.ambient().order() > max_order {
            return Err(LoadError::Malformed(format!("split group above --max-order {max_order}")));
        }
        Ok(s)
    }
}

/// One unit of work for `audit`: endogenies of a group plus optional
/// subgroups, ring generators and split structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditItem {
    pub set: EndogenySetJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subgroups: Vec<SubgroupJson>,
    /// Indices into `set.generators` generating `Γ`; defaults to `[0]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<usize>>,
    /// Defaults to every other index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthJson {
    pub order: u64,
    pub vs_dimension: usize,
}

/// The body of an instance file, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Instance {
    Group {
        group: GroupJson,
    },
    Endogeny {
        endogeny: EndogenyJson,
    },
    EndogenySet {
        set: EndogenySetJson,
    },
    /// Two endogeny families on a split group.
    SplitBimodule {
        split: SplitJson,
        gamma: Vec<Vec<(Coords, Coords)>>,
        delta: Vec<Vec<(Coords, Coords)>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        planted: Option<SubgroupJson>,
    },
    /// Matrix generators over `F_p`, one list of rows per matrix.
    MatrixBimodule {
        p: u32,
        n: usize,
        gamma: Vec<Vec<Vec<i64>>>,
        delta: Vec<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        truth: Option<TruthJson>,
    },
    AuditInstances {
        instances: Vec<AuditItem>,
    },
}

/// What produced a generated file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub generator: String,
    pub seed: u64,
    pub parameters: serde_json::Map<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_by: Option<Provenance>,
    #[serde(flatten)]
    pub body: Instance,
}

impl InstanceFile {
    pub fn new(body: Instance, generated_by: Option<Provenance>) -> Self {
        InstanceFile {
            format_version: FORMAT_VERSION,
            generated_by,
            body,
        }
    }

    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let f: InstanceFile = serde_json::from_str(text).map_err(|e| LoadError::Malformed(e.to_string()))?;
        if f.format_version != FORMAT_VERSION {
            return Err(LoadError::Malformed(format!("unsupported format_version {}", f.format_version)));
        }
        Ok(f)
    }

    pub fn to_pretty(&self) -> String {
        to_json(self)
    }
}

/// Two-space indented JSON with a trailing newline. Arrays and objects that
/// hold no objects stay on one line when short.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let v = serde_json::to_value(v).expect("serializable");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

const INLINE_WIDTH: usize = 72;

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(xs) => xs.iter().any(has_object),
        _ => false,
    }
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let compact = serde_json::to_string(v).expect("serializable");
    let nested = matches!(v, Value::Object(m) if !m.is_empty()) || matches!(v, Value::Array(xs) if has_object(v) && !xs.is_empty());
    if !v.is_array() && !v.is_object() || !nested && compact.len() <= INLINE_WIDTH {
        out.push_str(&compact);
        return;
    }
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
        }
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("serializable"));
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
        }
        _ => unreachable!("scalars are always inline"),
    }
    out.push_str(&"  ".repeat(depth));
    out.push(if v.is_array() { ']' } else { '}' });
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<i64>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect()
}

pub fn load_matrices(p: u32, n: usize, ms: &[Vec<Vec<i64>>]) -> Result<Vec<Matrix>, LoadError> {
    ms.iter()
        .map(|rows| {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(LoadError::Invalid(Error::InvalidInput(format!("matrix is not {n} x {n}"))));
            }
            Ok(Matrix::from_rows(p, rows)?)
        })
        .collect()
}

impl Instance {
    pub fn matrix(mi: &MatrixInstance) -> Self {
        Instance::MatrixBimodule {
            p: mi.p,
            n: mi.n,
            gamma: mi.gamma.iter().map(matrix_rows).collect(),
            delta: mi.delta.iter().map(matrix_rows).collect(),
            truth: mi.truth.map(|(order, vs_dimension)| TruthJson { order: u64::try_from(order).unwrap_or(u64::MAX), vs_dimension }),
        }
    }

    pub fn split(si: &SplitInstance) -> Self {
        let gg = |es: &[Endogeny]| es.iter().map(|e| EndogenyJson::of(e).graph_generators).collect();
        Instance::SplitBimodule {
            split: SplitJson::of(&si.group),
            gamma: gg(&si.gamma),
            delta: gg(&si.delta),
            planted: si.planted.as_ref().map(subgroup_json),
        }
    }
}

/// A loaded split bi-module.
pub struct LoadedSplit {
    pub group: SplitGroup,
    pub gamma: Vec<Endogeny>,
    pub delta: Vec<Endogeny>,
    pub planted: Option<Subgroup>,
}

pub fn load_split(
    split: &SplitJson,
    gamma: &[Vec<(Coords, Coords)>],
    delta: &[Vec<(Coords, Coords)>],
    planted: Option<&SubgroupJson>,
    max_order: u128,
) -> Result<LoadedSplit, LoadError> {
    let s = split.load(max_order)?;
    let set = |gens: &[Vec<(Coords, Coords)>]| {
        EndogenySetJson {
            ambient: GroupJson::of(s.ambient()),
            n_max: subgroup_json(s.t()),
            generators: gens.to_vec(),
        }
        .load(max_order)
        .map(|(_, _, es)| es)
    };
    let gamma = set(gamma)?;
    let delta = set(delta)?;
    let planted = planted.map(|p| load_subgroup(s.ambient(), p)).transpose()?;
    Ok(LoadedSplit {
        group: s,
        gamma,
        delta,
        planted,
    })
}
