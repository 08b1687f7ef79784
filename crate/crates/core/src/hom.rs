//! Group homomorphisms between cyclic presentations.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{Ambient, GroupElement};

/// A homomorphism, stored by the images of the unit vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hom {
    source: Ambient,
    target: Ambient,
    images: Vec<GroupElement>,
}

impl Hom {
    /// Checks that every image lies in the target and is killed by the
    /// order of its unit vector.
    pub fn new(source: &Ambient, target: &Ambient, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::invalid(format!(
                "{} images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        for (j, img) in images.iter().enumerate() {
            target.check(img)?;
            if !target.scale(source.moduli()[j] as i64, img).is_zero() {
                return Err(Error::invalid(format!(
                    "image {:?} of generator {j} is not killed by {}",
                    img.coords,
                    source.moduli()[j]
                )));
            }
        }
        Ok(Hom {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub(crate) fn new_unchecked(source: &Ambient, target: &Ambient, images: Vec<GroupElement>) -> Self {
        Hom {
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    pub fn identity(a: &Ambient) -> Self {
        Hom::new_unchecked(a, a, (0..a.rank()).map(|j| a.unit(j)).collect())
    }

    pub fn zero(source: &Ambient, target: &Ambient) -> Self {
        Hom::new_unchecked(source, target, (0..source.rank()).map(|_| target.zero()).collect())
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn target(&self) -> &Ambient {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        let m = self.target.moduli();
        let mut acc = alloc::vec![0i128; self.target.rank()];
        for (x, img) in a.coords.iter().zip(&self.images) {
            if *x == 0 {
                continue;
            }
            for (k, c) in acc.iter_mut().enumerate() {
                *c = (*c + *x as i128 * img.coords[k] as i128).rem_euclid(m[k] as i128);
            }
        }
        self.target.reduce(&acc)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Hom) -> Hom {
        debug_assert_eq!(other.target, self.source);
        Hom::new_unchecked(
            &other.source,
            &self.target,
            other.images.iter().map(|b| self.apply(b)).collect(),
        )
    }

    pub fn add(&self, other: &Hom) -> Hom {
        Hom::new_unchecked(
            &self.source,
            &self.target,
            self.images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| self.target.add(a, b))
                .collect(),
        )
    }

    pub fn neg(&self) -> Hom {
        Hom::new_unchecked(
            &self.source,
            &self.target,
            self.images.iter().map(|a| self.target.neg(a)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity_and_composition() {
        let z2 = Ambient::new(alloc::vec![2]).unwrap();
        let z4 = Ambient::new(alloc::vec![4]).unwrap();
        assert!(Hom::new(&z2, &z4, alloc::vec![z4.element(&[2]).unwrap()]).is_ok());
        assert!(Hom::new(&z2, &z4, alloc::vec![z4.element(&[1]).unwrap()]).is_err());
        let dbl = Hom::new(&z4, &z4, alloc::vec![z4.element(&[2]).unwrap()]).unwrap();
        assert_eq!(dbl.compose(&dbl), Hom::zero(&z4, &z4));
        assert_eq!(dbl.add(&Hom::identity(&z4)).apply(&z4.unit(0)).coords, alloc::vec![3]);
    }
}
