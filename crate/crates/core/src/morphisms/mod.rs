//! Semigroup morphisms, and the Hom-set machinery for right groups.
//!
//! [`Morphism`] is a plain total map that has been checked to preserve
//! multiplication. Submodules hold the brute-force Hom enumeration used as
//! an oracle ([`hom`]), the triplet parametrization and the structured
//! enumeration built on it ([`triplet`]), and kernels, preimages and the
//! right inverses of the quotient projection ([`kernel`]).

pub mod hom;
pub mod kernel;
pub mod triplet;

use std::fmt;

use crate::congruence::Partition;
use crate::error::{Error, Result};
use crate::semigroup::{parse_ids, ElementId, FiniteSemigroup};

pub use hom::{enumerate_hom_bruteforce, enumerate_hom_bruteforce_with, HomSearch, DEFAULT_BUDGET};
pub use kernel::{
    induced_group_morphism, kernel_pair, preimage, right_inverses_of_projection, KernelPair,
};
pub use triplet::{
    enumerate_hom_pointed, enumerate_hom_structured, morphism_of_triplet, triplet_of_morphism,
    triplets_equivalent, MorphismTriplet,
};

/// A total map `dom -> cod` with `f(ab) = f(a)f(b)`. Equality is extensional.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    dom: FiniteSemigroup,
    cod: FiniteSemigroup,
    map: Vec<ElementId>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Morphism({} -> {}: {:?})",
            self.dom.order(),
            self.cod.order(),
            self.map
        )
    }
}

impl Morphism {
    pub fn new(dom: FiniteSemigroup, cod: FiniteSemigroup, map: Vec<ElementId>) -> Result<Self> {
        check_total(&dom, &cod, &map)?;
        if let Some((a, b)) = first_multiplicativity_failure(&dom, &cod, &map) {
            return Err(Error::NotAMorphism { a, b });
        }
        Ok(Morphism { dom, cod, map })
    }

    /// For maps that preserve multiplication by construction. Checked in
    /// debug builds.
    pub(crate) fn new_unchecked(
        dom: FiniteSemigroup,
        cod: FiniteSemigroup,
        map: Vec<ElementId>,
    ) -> Self {
        debug_assert!(check_total(&dom, &cod, &map).is_ok());
        debug_assert!(first_multiplicativity_failure(&dom, &cod, &map).is_none());
        Morphism { dom, cod, map }
    }

    pub fn identity(s: &FiniteSemigroup) -> Self {
        Morphism {
            dom: s.clone(),
            cod: s.clone(),
            map: s.elements().collect(),
        }
    }

    /// The map constantly equal to `value`; a morphism iff `value` is idempotent.
    pub fn constant(
        dom: &FiniteSemigroup,
        cod: &FiniteSemigroup,
        value: ElementId,
    ) -> Result<Self> {
        if value >= cod.order() {
            return Err(Error::InvalidMap(format!("{value} is not in the codomain")));
        }
        Morphism::new(dom.clone(), cod.clone(), vec![value; dom.order()])
    }

    pub fn dom(&self) -> &FiniteSemigroup {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSemigroup {
        &self.cod
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    pub fn into_map(self) -> Vec<ElementId> {
        self.map
    }

    #[inline]
    pub fn apply(&self, a: ElementId) -> ElementId {
        self.map[a]
    }

    /// `self ∘ first`, i.e. apply `first` and then `self`.
    pub fn after(&self, first: &Morphism) -> Result<Morphism> {
        if !first.cod.same_as(&self.dom) {
            return Err(Error::MismatchedCarrier);
        }
        Ok(Morphism {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        next.after(self)
    }

    pub fn image(&self) -> Vec<ElementId> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.cod.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Kernel partition: `a ~ b` iff `f(a) = f(b)`.
    pub fn kernel(&self) -> Partition {
        Partition::from_labels(&self.map)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Some(Morphism::new_unchecked(
            self.cod.clone(),
            self.dom.clone(),
            inv,
        ))
    }

    /// `dom_size cod_size image_0 ... image_{n-1}`.
    pub fn to_line(&self) -> String {
        let mut parts = vec![self.dom.order().to_string(), self.cod.order().to_string()];
        parts.extend(self.map.iter().map(|v| v.to_string()));
        parts.join(" ")
    }

    /// Reads the one-line format produced by [`Morphism::to_line`].
    pub fn parse_line(text: &str, dom: &FiniteSemigroup, cod: &FiniteSemigroup) -> Result<Self> {
        let (line, content) = crate::semigroup::content_lines(text)
            .next()
            .ok_or(Error::Parse {
                line: 0,
                msg: "empty morphism".into(),
            })?;
        let ids = parse_ids(line, content)?;
        if ids.len() < 2 || ids[0] != dom.order() || ids[1] != cod.order() {
            return Err(Error::Parse {
                line,
                msg: format!(
                    "morphism header must read `{} {}`",
                    dom.order(),
                    cod.order()
                ),
            });
        }
        Morphism::new(dom.clone(), cod.clone(), ids[2..].to_vec())
    }
}

fn check_total(dom: &FiniteSemigroup, cod: &FiniteSemigroup, map: &[ElementId]) -> Result<()> {
    if map.len() != dom.order() {
        return Err(Error::InvalidMap(format!(
            "map has {} entries, domain has {} elements",
            map.len(),
            dom.order()
        )));
    }
    if let Some(&v) = map.iter().find(|&&v| v >= cod.order()) {
        return Err(Error::InvalidMap(format!("{v} is not in the codomain")));
    }
    Ok(())
}

pub(crate) fn first_multiplicativity_failure(
    dom: &FiniteSemigroup,
    cod: &FiniteSemigroup,
    map: &[ElementId],
) -> Option<(ElementId, ElementId)> {
    for a in dom.elements() {
        for b in dom.elements() {
            if map[dom.mul(a, b)] != cod.mul(map[a], map[b]) {
                return Some((a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_morphisms_need_idempotents() {
        let z2 = FiniteSemigroup::cyclic(2);
        let rz = FiniteSemigroup::right_zero(2);
        assert!(Morphism::constant(&rz, &z2, 0).is_ok());
        assert!(matches!(
            Morphism::constant(&rz, &z2, 1),
            Err(Error::NotAMorphism { .. })
        ));
    }

    #[test]
    fn composition_and_inverse() {
        let z4 = FiniteSemigroup::cyclic(4);
        let neg = Morphism::new(z4.clone(), z4.clone(), vec![0, 3, 2, 1]).unwrap();
        assert_eq!(neg.after(&neg).unwrap(), Morphism::identity(&z4));
        assert_eq!(neg.inverse().unwrap(), neg);
        let double = Morphism::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        assert!(double.inverse().is_none());
        assert_eq!(double.kernel().num_blocks(), 2);
        assert_eq!(double.image(), vec![0, 2]);
    }

    #[test]
    fn line_format() {
        let z4 = FiniteSemigroup::cyclic(4);
        let z2 = FiniteSemigroup::cyclic(2);
        let m = Morphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(m.to_line(), "4 2 0 1 0 1");
        assert_eq!(Morphism::parse_line(&m.to_line(), &z4, &z2).unwrap(), m);
        assert!(Morphism::parse_line("4 2 0 1 1 1", &z4, &z2).is_err());
        assert!(Morphism::parse_line("3 2 0 1 0", &z4, &z2).is_err());
    }
}
