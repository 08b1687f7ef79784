//! Split groups `A = V ⊕ T` with `V = F_p^n` and `|T|` prime to `p`.
//!
//! Here "finite" means "inside `T`", the dimension of a subgroup is the
//! `p`-rank of its `p`-part, and the connected component is the `p`-part.
//! Every subgroup splits uniquely along `V ⊕ T`, so all of these notions are
//! computed exactly.

mod bimodule;

pub use bimodule::{split_pipeline, BimoduleReport, QuasiProjectionReport};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::endogeny::{Endogeny, NegligibilityBound};
use crate::error::{Error, Result};
use crate::group::{Ambient, FinAbGroup, GroupElement};
use crate::linearize::fp::{projective_points, Matrix, Subspace};
use crate::linearize::spin::common_invariant_subspace;
use crate::subgroup::Subgroup;

/// Largest `p^n` for which minimality is decided by listing subspaces.
pub const MINIMALITY_EXHAUSTIVE: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitGroup {
    p: u32,
    n: usize,
    torsion: FinAbGroup,
    ambient: Ambient,
    bound: NegligibilityBound,
    v: Subgroup,
}

impl SplitGroup {
    pub fn new(p: u32, n: usize, torsion: &FinAbGroup) -> Result<Self> {
        crate::linearize::fp::check_prime(p)?;
        let t = torsion.order();
        if t % p as u128 == 0 {
            return Err(Error::invalid(format!("torsion of order {t} is not prime to {p}")));
        }
        let mut moduli = vec![p as u64; n];
        moduli.extend_from_slice(torsion.invariant_factors());
        let ambient = Ambient::new(moduli)?;
        let v_gens: Vec<GroupElement> = (0..n).map(|i| ambient.unit(i)).collect();
        let t_gens: Vec<GroupElement> = (n..ambient.rank()).map(|i| ambient.unit(i)).collect();
        let v = Subgroup::generated(&ambient, &v_gens)?;
        let bound = NegligibilityBound::new(Subgroup::generated(&ambient, &t_gens)?);
        Ok(SplitGroup {
            p,
            n,
            torsion: torsion.clone(),
            ambient,
            bound,
            v,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn torsion(&self) -> &FinAbGroup {
        &self.torsion
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn bound(&self) -> &NegligibilityBound {
        &self.bound
    }

    pub fn v(&self) -> &Subgroup {
        &self.v
    }

    pub fn t(&self) -> &Subgroup {
        self.bound.n_max()
    }

    fn check(&self, h: &Subgroup) -> Result<()> {
        if h.ambient() != &self.ambient {
            return Err(Error::mismatch("subgroup of another group"));
        }
        Ok(())
    }

    /// `H = H_p ⊕ H_T` with `H_p = |T|·H` and `H_T = p·H`.
    pub fn split(&self, h: &Subgroup) -> Result<(Subgroup, Subgroup)> {
        self.check(h)?;
        let t = self.torsion.order() as i64;
        Ok((h.scaled(t), h.scaled(self.p as i64)))
    }

    pub fn dim(&self, h: &Subgroup) -> Result<usize> {
        let (hp, _) = self.split(h)?;
        let mut order = hp.order();
        let mut d = 0;
        while order > 1 {
            order /= self.p as u128;
            d += 1;
        }
        Ok(d)
    }

    pub fn connected_component(&self, h: &Subgroup) -> Result<Subgroup> {
        Ok(self.split(h)?.0)
    }

    pub fn is_model_finite(&self, h: &Subgroup) -> Result<bool> {
        self.check(h)?;
        Ok(h.le(self.t()))
    }

    /// `H1 ≫ H2`: `H2 ≤ H1` with infinite index.
    pub fn strictly_bigger(&self, h1: &Subgroup, h2: &Subgroup) -> Result<bool> {
        Ok(h2.leq(h1)? && self.dim(h1)? > self.dim(h2)?)
    }

    /// `v ∈ V` as an element of `A`.
    pub fn vector(&self, v: &[u32]) -> GroupElement {
        let mut c: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        c.resize(self.ambient.rank(), 0);
        GroupElement::new(c)
    }

    /// `W ⊕ 0`.
    pub fn subspace(&self, w: &Subspace) -> Subgroup {
        let gens: Vec<GroupElement> = w.basis().iter().map(|v| self.vector(v)).collect();
        Subgroup::generated(&self.ambient, &gens).expect("vectors of V lie in A")
    }

    /// The `p`-part of `H` as a subspace of `F_p^n`.
    pub fn p_subspace(&self, h: &Subgroup) -> Result<Subspace> {
        let (hp, _) = self.split(h)?;
        Ok(Subspace::span(
            self.p,
            self.n,
            hp.generators().into_iter().map(|g| self.v_coords(&g)),
        ))
    }

    fn v_coords(&self, g: &GroupElement) -> Vec<u32> {
        g.coords[..self.n].iter().map(|&x| x.rem_euclid(self.p as i64) as u32).collect()
    }

    /// The linear map induced on `V`: `kat γ ≤ T` and morphisms between
    /// `V` and `T` vanish, so the `V`-coordinates of representatives are
    /// well defined and additive.
    pub fn shadow(&self, g: &Endogeny) -> Result<Matrix> {
        if g.source() != &self.ambient || g.target() != &self.ambient {
            return Err(Error::mismatch("endogeny of another group"));
        }
        let cols: Vec<Vec<u32>> = (0..self.n).map(|j| self.v_coords(&g.image_rep(&self.ambient.unit(j)))).collect();
        Ok(Matrix::from_columns(self.p, self.n, &cols))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionCheck {
    pub dim_ker: usize,
    pub dim_im: usize,
    pub dim_a: usize,
    pub holds: bool,
}

/// `dim ker γ + dim im γ = dim A`.
pub fn dimension_lemma_check(s: &SplitGroup, g: &Endogeny) -> Result<DimensionCheck> {
    let dim_ker = s.dim(&g.ker())?;
    let dim_im = s.dim(&g.im())?;
    let dim_a = s.n();
    Ok(DimensionCheck {
        dim_ker,
        dim_im,
        dim_a,
        holds: dim_ker + dim_im == dim_a,
    })
}

/// `γ[B°] = γ[B]° + kat γ`.
pub fn connectedness_lemma_check(s: &SplitGroup, g: &Endogeny, b: &Subgroup) -> Result<bool> {
    let lhs = g.apply_set(&s.connected_component(b)?)?;
    let rhs = s.connected_component(&g.apply_set(b)?)?.plus(g.kat());
    Ok(lhs == rhs)
}

/// For sharply commuting `γ, δ`: is `(ker γ)°` weakly `δ`-invariant?
/// `None` when the pair does not commute sharply.
pub fn kernel_component_check(s: &SplitGroup, g: &Endogeny, d: &Endogeny) -> Result<Option<bool>> {
    if !g.sharp_commutes(d)? {
        return Ok(None);
    }
    let k0 = s.connected_component(&g.ker())?;
    Ok(Some(d.weakly_invariant(&k0)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimality {
    pub minimal: bool,
    /// A weakly invariant `W ⊕ T` with `0 < dim W < n`.
    pub witness: Option<Subgroup>,
    pub exhaustive: bool,
}

/// Searches for a subgroup `H` with `0 < dim H < n` that is weakly
/// invariant under every generator.
///
/// If such an `H` exists then so does `H° ⊕ T`, so the search runs over
/// subspaces `W` of `V`. When `p^n` is small every `W` is tested against the
/// endogenies directly; otherwise the shadows on `V` go through the spin-up
/// search for a common invariant subspace.
pub fn is_minimal_bimodule(s: &SplitGroup, gamma: &[Endogeny], delta: &[Endogeny]) -> Result<Minimality> {
    let gens: Vec<&Endogeny> = gamma.iter().chain(delta).collect();
    for g in &gens {
        if g.source() != s.ambient() || g.bound() != s.bound() {
            return Err(Error::mismatch("generator on another group or bound"));
        }
    }
    let (p, n) = (s.p(), s.n());
    let with_t = |w: &Subspace| s.subspace(w).plus(s.t());
    if n <= 1 {
        return Ok(Minimality {
            minimal: true,
            witness: None,
            exhaustive: true,
        });
    }
    let small = (p as u64).checked_pow(n as u32).is_some_and(|c| c <= MINIMALITY_EXHAUSTIVE);
    if small {
        for w in proper_subspaces(p, n) {
            let h = with_t(&w);
            let mut ok = true;
            for g in &gens {
                if !g.weakly_invariant(&h)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Minimality {
                    minimal: false,
                    witness: Some(h),
                    exhaustive: true,
                });
            }
        }
        return Ok(Minimality {
            minimal: true,
            witness: None,
            exhaustive: true,
        });
    }
    let shadows: Vec<Matrix> = gens.iter().map(|g| s.shadow(g)).collect::<Result<_>>()?;
    let w = common_invariant_subspace(p, n, &shadows)?;
    Ok(Minimality {
        minimal: w.is_none(),
        witness: w.map(|w| with_t(&w)),
        exhaustive: false,
    })
}

/// Nonzero proper subspaces of `F_p^n`, by dimension and then canonical
/// basis.
pub fn proper_subspaces(p: u32, n: usize) -> Vec<Subspace> {
    let mut layer: BTreeSet<Subspace> = BTreeSet::new();
    layer.insert(Subspace::zero(p, n));
    let mut out = Vec::new();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for s in &layer {
            for v in projective_points(p, n) {
                if !s.contains(&v) {
                    next.insert(Subspace::span(p, n, s.basis().iter().cloned().chain([v])));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests;
