//! Morphisms between right groups as triplets `(ε, e₀, ψ)`: a set map on
//! idempotents, a base idempotent, and a group morphism `Se₀ -> S'ε(e₀)`.

use super::Morphism;
use crate::error::{Error, Result};
use crate::group::group_homomorphisms;
use crate::rightgroup::{PointedRightGroup, RightGroup, Subgroup};
use crate::semigroup::ElementId;

#[derive(Clone, Debug)]
pub struct MorphismTriplet {
    pub dom: RightGroup,
    pub cod: RightGroup,
    /// Image of `dom.idempotents()[i]`, as an idempotent of `cod`.
    pub epsilon: Vec<ElementId>,
    pub e0: ElementId,
    /// `Se₀` in the domain.
    pub source: Subgroup,
    /// `S'ε(e₀)` in the codomain.
    pub target: Subgroup,
    /// Group morphism between the standalone tables of `source` and `target`.
    pub psi: Morphism,
}

impl MorphismTriplet {
    pub fn new(
        dom: &RightGroup,
        cod: &RightGroup,
        epsilon: Vec<ElementId>,
        e0: ElementId,
        psi: Morphism,
    ) -> Result<Self> {
        if epsilon.len() != dom.idempotents().len() {
            return Err(Error::InvalidMap(format!(
                "epsilon has {} entries for {} idempotents",
                epsilon.len(),
                dom.idempotents().len()
            )));
        }
        if let Some(&bad) = epsilon.iter().find(|&&f| cod.idempotent_index(f).is_none()) {
            return Err(Error::NotAnIdempotent(bad));
        }
        let e0_index = dom.idempotent_index(e0).ok_or(Error::NotAnIdempotent(e0))?;
        let source = dom.subgroup_se(e0)?;
        let target = cod.subgroup_se(epsilon[e0_index])?;
        if !psi.dom().same_as(source.semigroup()) || !psi.cod().same_as(target.semigroup()) {
            return Err(Error::MismatchedCarrier);
        }
        // a semigroup morphism between groups preserves the identity
        assert_eq!(
            target.embed(psi.apply(source.group.identity())),
            epsilon[e0_index],
            "psi(e0) must equal epsilon(e0)"
        );
        Ok(MorphismTriplet {
            dom: dom.clone(),
            cod: cod.clone(),
            epsilon,
            e0,
            source,
            target,
            psi,
        })
    }

    /// `ε` as a map on ambient ids.
    pub fn epsilon_of(&self, e: ElementId) -> ElementId {
        self.epsilon[self.dom.idempotent_index(e).expect("idempotent")]
    }

    /// `ψ` on ambient ids of `Se₀`.
    pub fn psi_of(&self, x: ElementId) -> ElementId {
        self.target.embed(self.psi.apply(self.source.local(x)))
    }
}

/// `φ(s) = ψ(s e₀) ε(π_E(s))`.
pub fn morphism_of_triplet(t: &MorphismTriplet) -> Morphism {
    let (s, s2) = (&t.dom, &t.cod);
    let map = s
        .semigroup()
        .elements()
        .map(|x| s2.mul(t.psi_of(s.mul(x, t.e0)), t.epsilon_of(s.pi_e(x))))
        .collect();
    Morphism::new(s.semigroup().clone(), s2.semigroup().clone(), map)
        .expect("a triplet always yields a morphism")
}

/// Reads `φ` at the base idempotent `e0` of its domain.
pub fn triplet_of_morphism(phi: &Morphism, e0: ElementId) -> Result<MorphismTriplet> {
    let dom = RightGroup::new(phi.dom())?;
    let cod = RightGroup::new(phi.cod())?;
    triplet_of_morphism_in(phi, &dom, &cod, e0)
}

/// [`triplet_of_morphism`] with the right-group structures supplied.
pub fn triplet_of_morphism_in(
    phi: &Morphism,
    dom: &RightGroup,
    cod: &RightGroup,
    e0: ElementId,
) -> Result<MorphismTriplet> {
    if !phi.dom().same_as(dom.semigroup()) || !phi.cod().same_as(cod.semigroup()) {
        return Err(Error::MismatchedCarrier);
    }
    if dom.idempotent_index(e0).is_none() {
        return Err(Error::NotAnIdempotent(e0));
    }
    let epsilon: Vec<ElementId> = dom.idempotents().iter().map(|&e| phi.apply(e)).collect();
    let source = dom.subgroup_se(e0)?;
    let target = cod.subgroup_se(phi.apply(e0))?;
    let psi_map = (0..source.order())
        .map(|x| target.local(phi.apply(source.embed(x))))
        .collect();
    let psi = Morphism::new(
        source.semigroup().clone(),
        target.semigroup().clone(),
        psi_map,
    )
    .expect("restriction of a morphism");
    let t = MorphismTriplet::new(dom, cod, epsilon, e0, psi)?;
    assert_eq!(&morphism_of_triplet(&t), phi, "triplet round trip");
    Ok(t)
}

/// Same `ε`, and `r_{ε(e₂)} ∘ ψ₁ = ψ₂ ∘ r_{e₂}` on `Se₁`.
pub fn triplets_equivalent(t1: &MorphismTriplet, t2: &MorphismTriplet) -> Result<bool> {
    if t1.dom != t2.dom || t1.cod != t2.cod {
        return Err(Error::MismatchedCarrier);
    }
    if t1.epsilon != t2.epsilon {
        return Ok(false);
    }
    let (s, s2) = (&t1.dom, &t1.cod);
    let f = t2.epsilon_of(t2.e0);
    Ok(t1
        .source
        .sub
        .embed
        .iter()
        .all(|&x| s2.mul(t1.psi_of(x), f) == t2.psi_of(s.mul(x, t2.e0))))
}

/// Every morphism `dom -> cod`, one per pair (set map `E -> E'`, group
/// morphism `S/∼ -> S'/∼`), sorted by map.
pub fn enumerate_hom_structured(dom: &RightGroup, cod: &RightGroup) -> Vec<Morphism> {
    let (g, proj) = dom.quotient_group();
    let (g2, _) = cod.quotient_group();
    let reps2 = cod.sim().partition().representatives();
    let group_homs = group_homomorphisms(&g, &g2);
    let e0 = dom.e0();
    let source = dom.subgroup_se(e0).expect("e0 is idempotent");
    let (k, k2) = (dom.idempotents().len(), cod.idempotents().len());

    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let epsilon: Vec<ElementId> = choice.iter().map(|&i| cod.idempotents()[i]).collect();
        let base = epsilon[0];
        let target = cod.subgroup_se(base).expect("idempotent");
        for theta in &group_homs {
            // x ↦ rep(θ([x])) ε(e₀), landing in S'ε(e₀)
            let psi_map = (0..source.order())
                .map(|x| {
                    let class = theta.apply(proj.apply(source.embed(x)));
                    target.local(cod.mul(reps2[class], base))
                })
                .collect();
            let psi = Morphism::new(
                source.semigroup().clone(),
                target.semigroup().clone(),
                psi_map,
            )
            .expect("composite of group morphisms");
            let t =
                MorphismTriplet::new(dom, cod, epsilon.clone(), e0, psi).expect("valid triplet");
            out.push(morphism_of_triplet(&t));
        }
        let mut i = k;
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.map().cmp(b.map()));
                let before = out.len();
                out.dedup();
                assert_eq!(before, out.len(), "distinct triplets gave equal morphisms");
                let expected = k2.pow(k as u32) * group_homs.len();
                assert_eq!(out.len(), expected);
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < k2 {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Morphisms of pointed right groups: those sending the point to the point.
/// There are `|E'|^(|E| - 1) · |Hom(S/∼, S'/∼)|`, since a morphism acts on
/// idempotents through its set map `E -> E'`.
pub fn enumerate_hom_pointed(dom: &PointedRightGroup, cod: &PointedRightGroup) -> Vec<Morphism> {
    let out: Vec<Morphism> = enumerate_hom_structured(&dom.rg, &cod.rg)
        .into_iter()
        .filter(|m| m.apply(dom.point) == cod.point)
        .collect();
    let (g, _) = dom.rg.quotient_group();
    let (g2, _) = cod.rg.quotient_group();
    let (k, k2) = (dom.rg.idempotents().len(), cod.rg.idempotents().len());
    assert_eq!(
        out.len(),
        k2.pow(k as u32 - 1) * group_homomorphisms(&g, &g2).len()
    );
    out
}
