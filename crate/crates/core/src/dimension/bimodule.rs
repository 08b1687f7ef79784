//! The pipeline for a sharply commuting pair of endogeny families on a
//! split group: bi-katakernel, its invariance properties, the induced
//! action, and quasi-projections onto the lines of the `V`-shadow.

use alloc::format;
use alloc::vec::Vec;

use super::SplitGroup;
use crate::endogeny::{bikat, global_kat, induced_action, prering_closure, Endogeny, EndogenySet, InducedAction};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linearize::algebra::MatrixAlgebra;
use crate::linearize::fp::Matrix;
use crate::linearize::lines::decompose;
use crate::linearize::spin::common_invariant_subspace;
use crate::subgroup::Subgroup;

#[derive(Clone, Debug)]
pub struct QuasiProjectionReport {
    pub lines: usize,
    pub line_dim: usize,
    pub projections: Vec<Endogeny>,
    /// Every quasi-projection commutes sharply with every `Δ` generator.
    pub sharp_with_delta: bool,
    /// `π[b] ∋ b` for every `b` in the image.
    pub restricts_to_identity: bool,
    pub sum_equivalent_to_identity: bool,
}

#[derive(Clone, Debug)]
pub struct BimoduleReport {
    pub kat_gamma: Subgroup,
    pub kat_delta: Subgroup,
    pub bikat: Subgroup,
    /// Whether the invariance checks ran over the full generated prerings or
    /// over generators and their pairwise sums and products.
    pub full_closure: bool,
    pub elements_checked: usize,
    pub kat_gamma_fully_gamma_invariant: bool,
    pub bikat_fully_invariant: bool,
    pub preimages_fully_delta_invariant: bool,
    pub induced: InducedAction,
    /// The induced maps commute and have trivial katakernel.
    pub induced_commute: bool,
    /// Always true here: katakernels lie in `T`.
    pub bikat_model_finite: bool,
    /// `None` when the shadow pair on `V` is reducible or `V = 0`.
    pub quasi_projections: Option<QuasiProjectionReport>,
}

fn sample(gens: &EndogenySet, cap: usize) -> Result<(Vec<Endogeny>, bool)> {
    match prering_closure(gens, cap) {
        Ok(c) => Ok((c.elements().to_vec(), true)),
        Err(Error::ClosureCapExceeded(_)) => {
            let g = gens.elements();
            let mut out = g.to_vec();
            for (i, a) in g.iter().enumerate() {
                for b in &g[i..] {
                    out.push(a.add(b)?);
                    out.push(a.compose(b)?);
                    out.push(b.compose(a)?);
                }
            }
            Ok((out, false))
        }
        Err(e) => Err(e),
    }
}

pub fn split_pipeline(s: &SplitGroup, gamma: &EndogenySet, delta: &EndogenySet, cap: usize) -> Result<BimoduleReport> {
    if gamma.ambient() != s.ambient() || gamma.bound() != s.bound() {
        return Err(Error::mismatch("gamma lives on another group"));
    }
    let induced = induced_action(gamma, delta)?;
    let kg = global_kat(gamma)?;
    let kd = global_kat(delta)?;
    let k = bikat(gamma, delta)?;
    let (gs, full_g) = sample(gamma, cap)?;
    let (ds, full_d) = sample(delta, cap)?;
    let mut kat_gamma_inv = true;
    let mut bikat_inv = true;
    let mut preimage_inv = true;
    for g in &gs {
        kat_gamma_inv &= g.fully_invariant(&kg)?;
        bikat_inv &= g.fully_invariant(&k)?;
        let pre = g.preimage(&k)?;
        for d in delta.elements() {
            preimage_inv &= d.fully_invariant(&pre)?;
        }
    }
    for d in &ds {
        bikat_inv &= d.fully_invariant(&k)?;
    }
    let induced_commute = induced.gamma.iter().all(|g| {
        induced.delta.iter().all(|d| g.compose(d) == d.compose(g))
    });
    let quasi_projections = quasi_projections(s, gamma, delta, &k, cap)?;
    Ok(BimoduleReport {
        bikat_model_finite: s.is_model_finite(&k)?,
        kat_gamma: kg,
        kat_delta: kd,
        bikat: k,
        full_closure: full_g && full_d,
        elements_checked: gs.len() + ds.len(),
        kat_gamma_fully_gamma_invariant: kat_gamma_inv,
        bikat_fully_invariant: bikat_inv,
        preimages_fully_delta_invariant: preimage_inv,
        induced,
        induced_commute,
        quasi_projections,
    })
}

/// `π̃_i = (π_i ⊕ 0) + z_K` for the projections `π_i` of a decomposition of
/// `V` under `C(Δ_V)`.
fn quasi_projections(
    s: &SplitGroup,
    gamma: &EndogenySet,
    delta: &EndogenySet,
    k: &Subgroup,
    cap: usize,
) -> Result<Option<QuasiProjectionReport>> {
    let (p, n) = (s.p(), s.n());
    if n == 0 {
        return Ok(None);
    }
    let gv: Vec<Matrix> = gamma.elements().iter().map(|g| s.shadow(g)).collect::<Result<_>>()?;
    let dv: Vec<Matrix> = delta.elements().iter().map(|g| s.shadow(g)).collect::<Result<_>>()?;
    let all: Vec<Matrix> = gv.iter().chain(&dv).cloned().collect();
    if common_invariant_subspace(p, n, &all)?.is_some() {
        return Ok(None);
    }
    let cg = MatrixAlgebra::centralizer(p, n, &dv)?;
    let dec = decompose(&cg, &dv, cap)?;
    let a = s.ambient();
    let mut projections = Vec::new();
    for pi in &dec.projections {
        let images: Vec<GroupElement> = (0..a.rank())
            .map(|j| if j < n { s.vector(&pi.column(j)) } else { a.zero() })
            .collect();
        projections.push(Endogeny::pullback(a, k, &images, s.bound())?);
    }
    let mut sharp = true;
    let mut restricts = true;
    for q in &projections {
        for d in delta.elements() {
            sharp &= q.sharp_commutes(d)?;
        }
        for b in q.im().generators() {
            restricts &= q.apply(&b)?.contains(&b)?;
        }
    }
    let mut sum = Endogeny::zero(a, s.bound());
    for q in &projections {
        sum = sum.add(q)?;
    }
    let sum_ok = sum.equivalent(&Endogeny::identity(a, s.bound()))?;
    if dec.lines.is_empty() {
        return Err(Error::HypothesisViolation {
            reason: format!("empty decomposition of F_{p}^{n}"),
            witness: None,
        });
    }
    Ok(Some(QuasiProjectionReport {
        lines: dec.lines.len(),
        line_dim: dec.lines[0].dim(),
        projections,
        sharp_with_delta: sharp,
        restricts_to_identity: restricts,
        sum_equivalent_to_identity: sum_ok,
    }))
}
