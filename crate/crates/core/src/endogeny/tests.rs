use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::oracle::{dense_subgroup, enumerate_homomorphisms, DenseEndogeny, DenseGroup, ORACLE_CAP};

fn amb(m: &[u64]) -> Ambient {
    Ambient::new(m.to_vec()).unwrap()
}

fn el(a: &Ambient, c: &[i64]) -> GroupElement {
    a.element(c).unwrap()
}

fn sub(a: &Ambient, gens: &[&[i64]]) -> Subgroup {
    let g: Vec<GroupElement> = gens.iter().map(|c| el(a, c)).collect();
    Subgroup::generated(a, &g).unwrap()
}

/// `[p, p²]`, blurred by `⟨(0, p)⟩`, lifting `(a, b) ↦ (b mod p, a)`.
fn nonliftable(p: i64) -> (Ambient, Endogeny) {
    let a = amb(&[p as u64, (p * p) as u64]);
    let f = sub(&a, &[&[0, p]]);
    let bound = NegligibilityBound::new(f.clone());
    let g = Endogeny::pullback(&a, &f, &[el(&a, &[0, 1]), el(&a, &[1, 0])], &bound).unwrap();
    (a, g)
}

#[test]
fn identity_and_z_f_validate() {
    let a = amb(&[4]);
    let zero = NegligibilityBound::zero(&a);
    let id = Endogeny::validate(&a, &a, &[(el(&a, &[1]), el(&a, &[1]))], &zero).unwrap();
    assert!(id.kat().is_trivial());
    assert_eq!(id, Endogeny::identity(&a, &zero));

    let f = sub(&a, &[&[2]]);
    let bound = NegligibilityBound::new(f.clone());
    let z = Endogeny::z(&f, &bound).unwrap();
    assert_eq!(z.kat(), &f);
    assert_eq!(z.graph().order(), 8);
    assert_eq!(
        Endogeny::validate(&a, &a, &[(el(&a, &[0]), el(&a, &[2])), (el(&a, &[1]), el(&a, &[0]))], &bound).unwrap(),
        z
    );
}

#[test]
fn non_global_and_bound_errors() {
    let a = amb(&[4]);
    let zero = NegligibilityBound::zero(&a);
    let e = Endogeny::validate(&a, &a, &[(el(&a, &[2]), el(&a, &[1]))], &zero);
    assert_eq!(e.unwrap_err(), Error::NotGlobal);
    let e = Endogeny::validate(&a, &a, &[(el(&a, &[1]), el(&a, &[1])), (el(&a, &[0]), el(&a, &[2]))], &zero);
    assert_eq!(e.unwrap_err(), Error::KatakernelExceedsBound);
}

#[test]
fn nonliftable_kat_ker_im() {
    let (a, g) = nonliftable(2);
    let f = sub(&a, &[&[0, 2]]);
    assert_eq!(g.kat(), &f);
    assert_eq!(g.ker(), f);
    assert!(g.im().is_whole());
    let c = g.apply(&el(&a, &[1, 0])).unwrap();
    assert!(c.contains(&el(&a, &[0, 1])).unwrap());
    assert!(c.contains(&el(&a, &[0, 3])).unwrap());
    assert!(!c.contains(&el(&a, &[0, 0])).unwrap());

    let d = DenseEndogeny::from_core(&g).unwrap();
    let dg = DenseGroup::new(a.moduli(), ORACLE_CAP).unwrap();
    assert_eq!(d.kat(), dense_subgroup(&dg, &f));
    assert_eq!(d.ker(), dense_subgroup(&dg, &f));
    assert_eq!(d.im(), dg.whole());
    assert!(d.is_global());
}

#[test]
fn nonliftable_is_not_a_morphism_up_to_equivalence() {
    for p in [2i64, 3] {
        let (a, g) = nonliftable(p);
        let dg = DenseGroup::new(a.moduli(), ORACLE_CAP).unwrap();
        let homs = enumerate_homomorphisms(&dg, &dg, 10_000).unwrap();
        assert_eq!(homs.len(), if p == 2 { 32 } else { 243 });
        let dense = DenseEndogeny::from_core(&g).unwrap();
        let n_max = dense.kat();
        for h in &homs {
            let images: Vec<GroupElement> = h.iter().map(|&y| el(&a, &dg.decode(y))).collect();
            let f = Endogeny::from_hom(&Hom::new(&a, &a, images).unwrap(), g.bound()).unwrap();
            assert!(!g.equivalent(&f).unwrap());
            let df = DenseEndogeny::from_core(&f).unwrap();
            assert_eq!(dense.equivalent(&df, &n_max, 100).unwrap(), None);
        }
    }
}

#[test]
fn z_f_absorbs_morphisms_on_the_right() {
    let a = amb(&[2, 4]);
    let f = sub(&a, &[&[0, 2]]);
    let bound = NegligibilityBound::new(f.clone());
    let z = Endogeny::z(&f, &bound).unwrap();
    let dg = DenseGroup::new(a.moduli(), ORACLE_CAP).unwrap();
    let dz = DenseEndogeny::from_core(&z).unwrap();
    for h in enumerate_homomorphisms(&dg, &dg, 100).unwrap() {
        let images: Vec<GroupElement> = h.iter().map(|&y| el(&a, &dg.decode(y))).collect();
        let m = Endogeny::from_hom(&Hom::new(&a, &a, images).unwrap(), &bound).unwrap();
        assert_eq!(z.compose(&m).unwrap(), z);
        assert_eq!(dz.compose(&DenseEndogeny::from_core(&m).unwrap()), dz);
    }
}

#[test]
fn additive_identities() {
    let (_, g) = nonliftable(2);
    let a = g.source().clone();
    let zero = Endogeny::zero(&a, g.bound());
    assert_eq!(g.add(&zero).unwrap(), g);
    assert_eq!(g.sub(&g).unwrap(), Endogeny::z(g.kat(), g.bound()).unwrap());
    assert_eq!(Endogeny::identity(&a, g.bound()).compose(&g).unwrap(), g);
    assert!(Endogeny::z(g.kat(), g.bound()).unwrap().equivalent(&zero).unwrap());
    assert!(g.equivalent(&g).unwrap());
}

#[test]
fn z_f_and_swap_do_not_commute_sharply() {
    let a = amb(&[2, 2]);
    let f = sub(&a, &[&[1, 0]]);
    let bound = NegligibilityBound::new(f.clone());
    let z = Endogeny::z(&f, &bound).unwrap();
    let swap = Endogeny::from_hom(&Hom::new(&a, &a, vec![el(&a, &[0, 1]), el(&a, &[1, 0])]).unwrap(), &bound).unwrap();
    assert!(!z.sharp_commutes(&swap).unwrap());
    assert!(z.sharp_commutes(&Endogeny::identity(&a, &bound)).unwrap());
    let (dz, ds) = (DenseEndogeny::from_core(&z).unwrap(), DenseEndogeny::from_core(&swap).unwrap());
    assert!(!dz.sharp_commutes(&ds));
    let sigma = dz.compose(&ds).sub(&ds.compose(&dz));
    assert_eq!(sigma.im().count(), 4);
}

#[test]
fn preceq_examples() {
    let a = amb(&[2, 4]);
    let f = sub(&a, &[&[0, 2]]);
    let bound = NegligibilityBound::new(f.clone());
    let m = Endogeny::from_hom(&Hom::new(&a, &a, vec![el(&a, &[1, 0]), el(&a, &[1, 1])]).unwrap(), &bound).unwrap();
    let blurred = m.add(&Endogeny::z(&f, &bound).unwrap()).unwrap();
    assert!(m.preceq(&blurred).unwrap());
    assert!(blurred.preceq(&m).unwrap());

    let zero = NegligibilityBound::zero(&a);
    let f1 = Endogeny::identity(&a, &zero);
    let f2 = f1.neg();
    assert!(!f1.preceq(&f2).unwrap());
}

#[test]
fn restriction_of_identity_and_z_f() {
    let a = amb(&[2, 4]);
    let f = sub(&a, &[&[0, 2]]);
    let bound = NegligibilityBound::new(f.clone());
    let b = sub(&a, &[&[1, 1]]);
    let (rho, iso) = Endogeny::identity(&a, &bound).restrict(&b).unwrap();
    assert_eq!(rho, Endogeny::identity(rho.source(), rho.bound()));
    assert_eq!(iso.group().invariant_factors(), &[4]);

    let z = Endogeny::z(&f, &bound).unwrap();
    let (rz, iso) = z.restrict(&b).unwrap();
    let fb = f.meet(&b);
    let fb_coords: Vec<GroupElement> = fb.generators().iter().map(|g| iso.coords(g).unwrap()).collect();
    let expect = Subgroup::generated(rz.source(), &fb_coords).unwrap();
    assert_eq!(rz, Endogeny::z(&expect, rz.bound()).unwrap());

    let not_inv = sub(&a, &[&[1, 0]]);
    let swapish = nonliftable(2).1;
    assert_eq!(swapish.restrict(&not_inv).unwrap_err(), Error::NotWeaklyInvariant);
}

#[test]
fn prering_closure_small_cases() {
    let a = amb(&[2, 2]);
    let zero = NegligibilityBound::zero(&a);
    let gens = EndogenySet::new(&a, &zero, vec![Endogeny::identity(&a, &zero)]).unwrap();
    let c = prering_closure(&gens, 100).unwrap();
    assert_eq!(c.len(), 2);

    let z5 = amb(&[5]);
    let zb = NegligibilityBound::zero(&z5);
    let c = prering_closure(&EndogenySet::new(&z5, &zb, vec![]).unwrap(), 100).unwrap();
    assert_eq!(c.len(), 5);
    assert!(matches!(
        prering_closure(&EndogenySet::new(&z5, &zb, vec![]).unwrap(), 3),
        Err(Error::ClosureCapExceeded(3))
    ));

    let a = amb(&[4]);
    let f = sub(&a, &[&[2]]);
    let bound = NegligibilityBound::new(f.clone());
    let z = Endogeny::z(&f, &bound).unwrap();
    let c = prering_closure(&EndogenySet::new(&a, &bound, vec![z.clone()]).unwrap(), 100).unwrap();
    let one_plus = Endogeny::identity(&a, &bound).add(&z).unwrap();
    assert!(c.elements().contains(&z));
    assert!(c.elements().contains(&one_plus));
    assert_eq!(global_kat(&EndogenySet::new(&a, &bound, vec![z]).unwrap()).unwrap(), f);
}

#[test]
fn closure_matches_literal_closure() {
    let (a, g) = nonliftable(2);
    let set = EndogenySet::new(&a, g.bound(), vec![g.clone()]).unwrap();
    let core = prering_closure(&set, 1000).unwrap();
    let dg = DenseGroup::new(a.moduli(), ORACLE_CAP).unwrap();
    let lit = crate::oracle::endo::closure(&dg, &[DenseEndogeny::from_core(&g).unwrap()], 1000).unwrap();
    assert_eq!(core.len(), lit.len());
    for e in core.elements() {
        assert!(lit.contains(&DenseEndogeny::from_core(e).unwrap()));
    }
    let k = crate::oracle::endo::kat_sum(&dg, &lit);
    assert_eq!(dense_subgroup(&dg, &global_kat(&set).unwrap()), k);
}

#[test]
fn induced_action_of_morphisms_is_unchanged() {
    let a = amb(&[3, 3]);
    let zero = NegligibilityBound::zero(&a);
    let m = Endogeny::from_hom(&Hom::new(&a, &a, vec![el(&a, &[1, 1]), el(&a, &[0, 1])]).unwrap(), &zero).unwrap();
    let gam = EndogenySet::new(&a, &zero, vec![m.clone()]).unwrap();
    let del = EndogenySet::new(&a, &zero, vec![m.compose(&m).unwrap()]).unwrap();
    let act = induced_action(&gam, &del).unwrap();
    assert!(act.bikat.is_trivial());
    assert_eq!(act.quotient.target().invariant_factors(), &[3, 3]);
    assert_eq!(act.gamma.len(), 1);
    let q = &act.quotient;
    for x in a.elements() {
        assert_eq!(act.gamma[0].apply(&q.map(&x)), q.map(&m.image_rep(&x)));
    }
}

#[test]
fn induced_action_rejects_non_commuting() {
    let a = amb(&[2, 2]);
    let f = sub(&a, &[&[1, 0]]);
    let bound = NegligibilityBound::new(f.clone());
    let z = Endogeny::z(&f, &bound).unwrap();
    let swap = Endogeny::from_hom(&Hom::new(&a, &a, vec![el(&a, &[0, 1]), el(&a, &[1, 0])]).unwrap(), &bound).unwrap();
    let g = EndogenySet::new(&a, &bound, vec![z]).unwrap();
    let d = EndogenySet::new(&a, &bound, vec![swap]).unwrap();
    assert!(matches!(induced_action(&g, &d), Err(Error::NotSharplyCommuting(_))));
}
