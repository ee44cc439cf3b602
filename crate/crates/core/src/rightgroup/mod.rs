//! Right groups: recognition, the canonical projections and congruences,
//! and the decomposition `S ≅ Se₀ × E`.
//!
//! A right group is a nonempty semigroup that is right simple and left
//! cancellative. Its idempotents `E` are all left identities and form a
//! right zero semigroup; for any `e ∈ E` the left ideal `Se` is a group with
//! identity `e`, and `s ↦ (se, π_E(s))` is an isomorphism onto `Se × E`.

pub mod universal;

use serde::{Deserialize, Serialize};

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::morphisms::Morphism;
use crate::semigroup::{ElementId, FiniteSemigroup, ProductCodec, Subsemigroup};

pub use universal::{
    biproduct_compatible, check_coproduct_cocone, check_coproduct_pointed, check_product,
    check_product_cone, check_product_quotients, coproduct_counterexample,
    coproduct_counterexample_with, CoproductClash, Probe, UniversalCheck,
};

/// Outcome of one condition, with the element ids that witness it (when it
/// holds existentially) or refute it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub holds: bool,
    pub witness: Vec<ElementId>,
    pub detail: String,
}

impl Condition {
    fn yes(witness: Vec<ElementId>, detail: impl Into<String>) -> Self {
        Condition {
            holds: true,
            witness,
            detail: detail.into(),
        }
    }

    fn no(witness: Vec<ElementId>, detail: impl Into<String>) -> Self {
        Condition {
            holds: false,
            witness,
            detail: detail.into(),
        }
    }
}

/// The five independently evaluated characterizations of a right group.
/// Condition (d), the product decomposition, is realized by
/// [`RightGroup::decompose`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// right simple and left cancellative
    pub cond_a: Condition,
    /// `ax = b` has exactly one solution for all `a, b`
    pub cond_b: Condition,
    /// right simple and has an idempotent
    pub cond_c: Condition,
    /// some left identity `e` such that every element has a right inverse w.r.t. `e`
    pub cond_e: Condition,
    /// a left identity exists, and every element has a right inverse w.r.t. every left identity
    pub cond_f: Condition,
}

impl ConditionReport {
    pub fn conditions(&self) -> [(&'static str, &Condition); 5] {
        [
            ("a", &self.cond_a),
            ("b", &self.cond_b),
            ("c", &self.cond_c),
            ("e", &self.cond_e),
            ("f", &self.cond_f),
        ]
    }

    pub fn all_agree(&self) -> bool {
        let first = self.cond_a.holds;
        self.conditions().iter().all(|(_, c)| c.holds == first)
    }

    /// True when every condition holds.
    pub fn is_right_group(&self) -> bool {
        self.conditions().iter().all(|(_, c)| c.holds)
    }
}

fn right_simple_failure(s: &FiniteSemigroup) -> Option<ElementId> {
    let n = s.order();
    s.elements().find(|&a| {
        let mut seen = vec![false; n];
        s.elements().for_each(|x| seen[s.mul(a, x)] = true);
        seen.contains(&false)
    })
}

fn has_right_inverse(s: &FiniteSemigroup, a: ElementId, e: ElementId) -> bool {
    s.elements().any(|x| s.mul(a, x) == e)
}

/// Evaluates conditions (a), (b), (c), (e), (f) by separate exhaustive
/// procedures; none of them is derived from another.
pub fn check_right_group(s: &FiniteSemigroup) -> Result<ConditionReport> {
    if s.is_empty() {
        return Err(Error::EmptySemigroup);
    }

    let cond_a = match (right_simple_failure(s), s.first_left_cancellation_failure()) {
        (Some(a), _) => Condition::no(vec![a], "aS != S"),
        (None, Some((a, b, c))) => Condition::no(vec![a, b, c], "ab = ac with b != c"),
        (None, None) => Condition::yes(vec![], "right simple and left cancellative"),
    };

    let cond_b = {
        let mut bad = None;
        'outer: for a in s.elements() {
            for b in s.elements() {
                let solutions = s.elements().filter(|&x| s.mul(a, x) == b).count();
                if solutions != 1 {
                    bad = Some((a, b, solutions));
                    break 'outer;
                }
            }
        }
        match bad {
            None => Condition::yes(vec![], "every ax = b has a unique solution"),
            Some((a, b, k)) => Condition::no(vec![a, b], format!("ax = b has {k} solutions")),
        }
    };

    let cond_c = {
        let idem = s.elements().find(|&e| s.mul(e, e) == e);
        match (right_simple_failure(s), idem) {
            (Some(a), _) => Condition::no(vec![a], "aS != S"),
            (None, None) => Condition::no(vec![], "no idempotent"),
            (None, Some(e)) => Condition::yes(vec![e], "right simple with idempotent"),
        }
    };

    let is_left_identity = |e: ElementId| s.elements().all(|x| s.mul(e, x) == x);

    let cond_e = match s
        .elements()
        .find(|&e| is_left_identity(e) && s.elements().all(|a| has_right_inverse(s, a, e)))
    {
        Some(e) => Condition::yes(vec![e], "left identity admitting right inverses"),
        None => Condition::no(vec![], "no left identity admits all right inverses"),
    };

    let cond_f = {
        let lefts: Vec<ElementId> = s.elements().filter(|&e| is_left_identity(e)).collect();
        if lefts.is_empty() {
            Condition::no(vec![], "no left identity")
        } else {
            let missing = lefts.iter().find_map(|&e| {
                s.elements()
                    .find(|&a| !has_right_inverse(s, a, e))
                    .map(|a| (e, a))
            });
            match missing {
                None => Condition::yes(lefts, "right inverses w.r.t. every left identity"),
                Some((e, a)) => Condition::no(vec![e, a], "a has no right inverse w.r.t. e"),
            }
        }
    };

    Ok(ConditionReport {
        cond_a,
        cond_b,
        cond_c,
        cond_e,
        cond_f,
    })
}

/// A group `Se` (for `e ∈ E`) as a standalone table together with its
/// embedding into the right group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub sub: Subsemigroup,
    pub group: FiniteGroup,
    /// Ambient id of the identity.
    pub identity: ElementId,
}

impl Subgroup {
    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.sub.semigroup
    }

    pub fn order(&self) -> usize {
        self.sub.order()
    }

    pub fn embed(&self, local: ElementId) -> ElementId {
        self.sub.embed[local]
    }

    /// Local id of an ambient element of the subgroup.
    pub fn local(&self, ambient: ElementId) -> ElementId {
        self.sub
            .local_id(ambient)
            .unwrap_or_else(|| panic!("{ambient} is outside the subgroup"))
    }
}

/// A validated right group with its idempotents cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RightGroup {
    semigroup: FiniteSemigroup,
    idempotents: Vec<ElementId>,
}

impl RightGroup {
    pub fn new(s: &FiniteSemigroup) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptySemigroup);
        }
        if !s.is_right_simple() || !s.is_left_cancellative() {
            return Err(Error::NotARightGroup);
        }
        let idempotents = s.idempotents();
        assert!(
            !idempotents.is_empty(),
            "finite right group without idempotent"
        );
        assert!(
            idempotents.iter().all(|&e| s.is_left_identity(e)),
            "idempotent of a right simple semigroup that is not a left identity"
        );
        Ok(RightGroup {
            semigroup: s.clone(),
            idempotents,
        })
    }

    /// `E x G` for a right zero semigroup of size `e_count` and a group `g`.
    pub fn from_parts(e_count: usize, g: &FiniteSemigroup) -> Result<Self> {
        let (s, _) = FiniteSemigroup::right_zero(e_count).direct_product(g);
        Self::new(&s)
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn order(&self) -> usize {
        self.semigroup.order()
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.semigroup.mul(a, b)
    }

    /// `E`, increasing.
    pub fn idempotents(&self) -> &[ElementId] {
        &self.idempotents
    }

    /// Canonical base idempotent: the smallest one.
    pub fn e0(&self) -> ElementId {
        self.idempotents[0]
    }

    pub fn idempotent_index(&self, e: ElementId) -> Option<usize> {
        self.idempotents.binary_search(&e).ok()
    }

    fn require_idempotent(&self, e: ElementId) -> Result<()> {
        if e < self.order() && self.semigroup.is_idempotent(e) {
            Ok(())
        } else {
            Err(Error::NotAnIdempotent(e))
        }
    }

    /// The unique `x` with `ax = e`.
    pub fn right_inverse(&self, a: ElementId, e: ElementId) -> Result<ElementId> {
        self.require_idempotent(e)?;
        self.semigroup.solve_right(a, e)
    }

    /// The unique `f ∈ E` with `sf = s`.
    pub fn pi_e(&self, s: ElementId) -> ElementId {
        let mut found = self
            .idempotents
            .iter()
            .copied()
            .filter(|&f| self.mul(s, f) == s);
        let f = found.next().expect("some idempotent fixes s on the right");
        assert!(found.next().is_none(), "pi_E(s) is not unique");
        f
    }

    /// `s e₀`, which equals the double right inverse of `s` w.r.t. `e₀`.
    pub fn pi_g(&self, s: ElementId) -> ElementId {
        let e0 = self.e0();
        let direct = self.mul(s, e0);
        let inv = self.semigroup.solve_right(s, e0).expect("right group");
        let double = self.semigroup.solve_right(inv, e0).expect("right group");
        assert_eq!(direct, double, "(s^-1)^-1 != s e0");
        direct
    }

    /// Kernel of right multiplication by `e`.
    pub fn sim_at(&self, e: ElementId) -> Result<Congruence> {
        self.require_idempotent(e)?;
        let labels: Vec<ElementId> = self.semigroup.elements().map(|s| self.mul(s, e)).collect();
        Ok(Congruence::new_unchecked(
            &self.semigroup,
            crate::congruence::Partition::from_labels(&labels),
        ))
    }

    /// `x ∼ y` iff `x e₀ = y e₀`; the class of `x` is `xE`.
    pub fn sim(&self) -> Congruence {
        let labels: Vec<ElementId> = self.semigroup.elements().map(|s| self.pi_g(s)).collect();
        Congruence::new_unchecked(
            &self.semigroup,
            crate::congruence::Partition::from_labels(&labels),
        )
    }

    /// Kernel of `π_E`; its classes are the groups `Se`.
    pub fn equiv(&self) -> Congruence {
        let labels: Vec<ElementId> = self.semigroup.elements().map(|s| self.pi_e(s)).collect();
        Congruence::new_unchecked(
            &self.semigroup,
            crate::congruence::Partition::from_labels(&labels),
        )
    }

    /// `S/∼` as a group, with the projection `S -> S/∼`.
    pub fn quotient_group(&self) -> (FiniteGroup, Morphism) {
        let (q, proj) = self.sim().quotient();
        let g = FiniteGroup::from_semigroup(&q).expect("S/~ is a group");
        (g, proj)
    }

    /// `E` with the induced (right zero) operation.
    pub fn idempotent_subsemigroup(&self) -> Subsemigroup {
        let sub = self
            .semigroup
            .restrict(&self.idempotents)
            .expect("E is closed");
        debug_assert_eq!(
            sub.semigroup,
            FiniteSemigroup::right_zero(self.idempotents.len())
        );
        sub
    }

    /// The left ideal `Se`, a group with identity `e`.
    pub fn subgroup_se(&self, e: ElementId) -> Result<Subgroup> {
        self.require_idempotent(e)?;
        let carrier: Vec<ElementId> = self.semigroup.elements().map(|s| self.mul(s, e)).collect();
        let sub = self.semigroup.restrict(&carrier).expect("Se is closed");
        let group = FiniteGroup::from_semigroup(&sub.semigroup).expect("Se is a group");
        assert_eq!(sub.embed[group.identity()], e, "identity of Se must be e");
        Ok(Subgroup {
            sub,
            group,
            identity: e,
        })
    }

    /// `r_f : Se -> Sf`, `x ↦ xf`, between the standalone group tables.
    pub fn translate_rf(&self, e: ElementId, f: ElementId) -> Result<Morphism> {
        let (se, sf) = (self.subgroup_se(e)?, self.subgroup_se(f)?);
        let forward = self.translate_between(&se, &sf);
        let back = self.translate_between(&sf, &se);
        assert_eq!(
            back.after(&forward).expect("composable"),
            Morphism::identity(se.semigroup()),
            "r_e ∘ r_f must be the identity on Se"
        );
        Ok(forward)
    }

    pub(crate) fn translate_between(&self, from: &Subgroup, to: &Subgroup) -> Morphism {
        let map = (0..from.order())
            .map(|x| to.local(self.mul(from.embed(x), to.identity)))
            .collect();
        Morphism::new(from.semigroup().clone(), to.semigroup().clone(), map)
            .expect("r_f is a group morphism")
    }

    pub fn decompose(&self) -> Decomposition {
        let e0 = self.e0();
        let group_part = self.subgroup_se(e0).expect("e0 is idempotent");
        let rzs = FiniteSemigroup::right_zero(self.idempotents.len());
        let (product, codec) = group_part.semigroup().direct_product(&rzs);
        let phi: Vec<(ElementId, usize)> = self
            .semigroup
            .elements()
            .map(|s| {
                let g = group_part.local(self.mul(s, e0));
                let e = self
                    .idempotent_index(self.pi_e(s))
                    .expect("pi_E lands in E");
                (g, e)
            })
            .collect();
        let phi_map: Vec<ElementId> = phi.iter().map(|&(g, e)| codec.encode(g, e)).collect();
        let phi_morphism = Morphism::new(self.semigroup.clone(), product.clone(), phi_map)
            .expect("phi is a semigroup morphism");
        assert!(phi_morphism.is_bijective(), "phi must be bijective");
        let phi_inv: Vec<ElementId> = (0..codec.len())
            .map(|id| {
                let (g, e) = codec.decode(id);
                self.mul(group_part.embed(g), self.idempotents[e])
            })
            .collect();
        for s in self.semigroup.elements() {
            assert_eq!(phi_inv[phi_morphism.apply(s)], s, "phi_inv ∘ phi != id");
        }
        let sim = self.sim();
        let equiv = self.equiv();
        assert!(sim.meet(&equiv).expect("same carrier").is_identity());
        assert!(sim.compose(&equiv).expect("same carrier").is_universal());
        Decomposition {
            e0,
            sim,
            equiv,
            group_part,
            rzs_part: self.idempotents.clone(),
            phi,
            phi_inv,
            product,
            codec,
        }
    }

    /// An isomorphism `(S, e) -> (S, f)` of pointed right groups, built from
    /// the triplet (ε swapping `e` and `f`, `e`, `r_f`).
    pub fn pointed_iso(&self, e: ElementId, f: ElementId) -> Result<Morphism> {
        self.require_idempotent(e)?;
        self.require_idempotent(f)?;
        let epsilon: Vec<ElementId> = self
            .idempotents
            .iter()
            .map(|&x| match x {
                x if x == e => f,
                x if x == f => e,
                x => x,
            })
            .collect();
        let source = self.subgroup_se(e)?;
        let target = self.subgroup_se(f)?;
        let psi = self.translate_between(&source, &target);
        let triplet = crate::morphisms::MorphismTriplet::new(self, self, epsilon, e, psi)?;
        let iso = crate::morphisms::morphism_of_triplet(&triplet);
        assert!(iso.is_bijective(), "pointed_iso must be bijective");
        assert_eq!(iso.apply(e), f, "pointed_iso must carry the point");
        Ok(iso)
    }
}

/// A right group with a chosen idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedRightGroup {
    pub rg: RightGroup,
    pub point: ElementId,
}

impl PointedRightGroup {
    pub fn new(rg: RightGroup, point: ElementId) -> Result<Self> {
        rg.require_idempotent(point)?;
        Ok(PointedRightGroup { rg, point })
    }

    /// Every choice of point.
    pub fn all_pointings(rg: &RightGroup) -> Vec<PointedRightGroup> {
        rg.idempotents()
            .iter()
            .map(|&p| PointedRightGroup {
                rg: rg.clone(),
                point: p,
            })
            .collect()
    }
}

/// `S ≅ Se₀ × E` with both congruences.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub e0: ElementId,
    /// `∼`, kernel of `π_G`.
    pub sim: Congruence,
    /// `≡`, kernel of `π_E`.
    pub equiv: Congruence,
    /// `Se₀` as a standalone group.
    pub group_part: Subgroup,
    /// `E`, increasing.
    pub rzs_part: Vec<ElementId>,
    /// `φ(s) = (local id of s e₀ in Se₀, index of π_E(s) in E)`.
    pub phi: Vec<(ElementId, usize)>,
    /// Indexed by `codec.encode(g, e)`.
    pub phi_inv: Vec<ElementId>,
    /// `Se₀ × E` with `E` as a right zero semigroup.
    pub product: FiniteSemigroup,
    pub codec: ProductCodec,
}
