use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::endogeny::EndogenySet;
use crate::instances::{matrix_bimodule, split_bimodule, split_bimodule_planted, Rng};
use crate::linearize::algebra::CLOSURE_CAP;

fn two_two_three() -> SplitGroup {
    SplitGroup::new(2, 2, &FinAbGroup::from_invariant_factors(&[3]).unwrap()).unwrap()
}

fn sub(s: &SplitGroup, gens: &[&[i64]]) -> Subgroup {
    let a = s.ambient();
    Subgroup::generated(a, &gens.iter().map(|g| a.element(g).unwrap()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn splitting_of_subgroups() {
    let s = two_two_three();
    let h = sub(&s, &[&[1, 0, 1]]);
    let (hp, ht) = s.split(&h).unwrap();
    assert_eq!(hp, sub(&s, &[&[1, 0, 0]]));
    assert_eq!(ht, sub(&s, &[&[0, 0, 1]]));
    assert_eq!(s.dim(&h).unwrap(), 1);
    assert!(s.is_model_finite(&ht).unwrap());
    assert!(!s.is_model_finite(&h).unwrap());
    assert!(s.strictly_bigger(&h, &ht).unwrap());
    assert!(!s.strictly_bigger(&ht, &Subgroup::trivial(s.ambient())).unwrap());
    assert!(SplitGroup::new(3, 1, &FinAbGroup::from_invariant_factors(&[3]).unwrap()).is_err());
}

#[test]
fn dimension_of_identity_and_blur() {
    let s = two_two_three();
    let id = Endogeny::identity(s.ambient(), s.bound());
    assert_eq!(
        dimension_lemma_check(&s, &id).unwrap(),
        DimensionCheck { dim_ker: 0, dim_im: 2, dim_a: 2, holds: true }
    );
    let zt = Endogeny::z(s.t(), s.bound()).unwrap();
    let c = dimension_lemma_check(&s, &zt).unwrap();
    assert_eq!((c.dim_ker, c.dim_im), (2, 0));
    let b = sub(&s, &[&[1, 1, 1]]);
    assert!(connectedness_lemma_check(&s, &zt, &b).unwrap());
    assert!(connectedness_lemma_check(&s, &id, &b).unwrap());
}

#[test]
fn shadows_read_the_linear_part() {
    let s = two_two_three();
    let a = s.ambient();
    let swap = [a.element(&[0, 1, 1]).unwrap(), a.element(&[1, 0, 0]).unwrap(), a.element(&[0, 0, 2]).unwrap()];
    let g = Endogeny::pullback(a, s.t(), &swap, s.bound()).unwrap();
    assert_eq!(s.shadow(&g).unwrap().to_rows(), vec![vec![0, 1], vec![1, 0]]);
}

#[test]
fn minimality() {
    let s = two_two_three();
    let id = Endogeny::identity(s.ambient(), s.bound());
    let m = is_minimal_bimodule(&s, &[id.clone()], &[id]).unwrap();
    assert!(!m.minimal && m.exhaustive);
    assert_eq!(s.dim(&m.witness.unwrap()).unwrap(), 1);

    let t = FinAbGroup::from_invariant_factors(&[3]).unwrap();
    let si = split_bimodule(2, 1, 2, &t, 3).unwrap();
    let m = is_minimal_bimodule(&si.group, &si.gamma, &si.delta).unwrap();
    assert!(m.minimal);

    let pl = split_bimodule_planted(2, 2, &t, 11).unwrap();
    let m = is_minimal_bimodule(&pl.group, &pl.gamma, &pl.delta).unwrap();
    assert!(!m.minimal);
    assert_eq!(m.witness, pl.planted);
}

#[test]
fn subspace_counts() {
    // Gaussian binomials: 3 + 3 for F_2^3, 4 for F_3^2.
    assert_eq!(proper_subspaces(2, 3).len(), 14);
    assert_eq!(proper_subspaces(3, 2).len(), 4);
    assert!(proper_subspaces(2, 1).is_empty());
}

#[test]
fn pipeline_on_split_instances() {
    let t = FinAbGroup::from_invariant_factors(&[3]).unwrap();
    for seed in 1..4 {
        let si = split_bimodule(2, 1, 2, &t, seed).unwrap();
        let s = &si.group;
        let g = EndogenySet::new(s.ambient(), s.bound(), si.gamma.clone()).unwrap();
        let d = EndogenySet::new(s.ambient(), s.bound(), si.delta.clone()).unwrap();
        let r = split_pipeline(s, &g, &d, 2000).unwrap();
        assert!(r.kat_gamma_fully_gamma_invariant);
        assert!(r.bikat_fully_invariant);
        assert!(r.preimages_fully_delta_invariant);
        assert!(r.induced_commute && r.bikat_model_finite);
        let q = r.quasi_projections.expect("irreducible");
        assert_eq!((q.lines, q.line_dim), (2, 1));
        assert!(q.sharp_with_delta && q.restricts_to_identity && q.sum_equivalent_to_identity);
    }
}

#[test]
fn kernel_components_under_sharp_commutation() {
    let t = FinAbGroup::from_invariant_factors(&[5]).unwrap();
    let s = SplitGroup::new(3, 2, &t).unwrap();
    let mut rng = Rng::new(9);
    let mut decided = 0;
    for _ in 0..40 {
        let (g, d) = crate::instances::random_sharp_pair(s.ambient(), s.bound(), &mut rng, 64).unwrap();
        if let Some(ok) = kernel_component_check(&s, &g, &d).unwrap() {
            assert!(ok);
            decided += 1;
        }
    }
    assert!(decided > 0);
}

#[test]
fn matrix_instances_are_irreducible_for_the_pipeline() {
    let mi = matrix_bimodule(3, 1, 2, 5).unwrap();
    let all: Vec<_> = mi.gamma.iter().chain(&mi.delta).cloned().collect();
    assert!(common_invariant_subspace(3, 2, &all).unwrap().is_none());
    let _ = CLOSURE_CAP;
}
