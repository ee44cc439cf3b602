//! Group actions on finite (pointed) sets and the functor sending
//! `(G, X, φ)` to the right group on `X × G` with
//! `(x, g)(x', g') = (φ_g(x'), gg')`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{group_homomorphisms, FiniteGroup};
use crate::morphisms::Morphism;
use crate::rightgroup::{PointedRightGroup, RightGroup};
use crate::semigroup::{
    content_lines, parse_ids, read_single, read_table, ElementId, FiniteSemigroup,
};

/// `p ∘ q`: apply `q`, then `p`.
pub fn compose_perms(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn is_permutation(p: &[usize], k: usize) -> bool {
    let mut seen = vec![false; k];
    p.len() == k
        && p.iter()
            .all(|&i| i < k && !std::mem::replace(&mut seen[i], true))
}

/// A left action `g ↦ φ_g` of a finite group on `{0, .., set_size - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    set_size: usize,
    perms: Vec<Vec<usize>>,
    point: Option<usize>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, perms: Vec<Vec<usize>>, point: Option<usize>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} permutations for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        let set_size = perms.first().map_or(0, Vec::len);
        if set_size == 0 {
            return Err(Error::EmptySet);
        }
        if let Some(g) = perms.iter().position(|p| !is_permutation(p, set_size)) {
            return Err(Error::InvalidAction(format!(
                "image of {g} is not a permutation"
            )));
        }
        let id: Vec<usize> = (0..set_size).collect();
        if perms[group.identity()] != id {
            return Err(Error::InvalidAction("identity acts nontrivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if perms[group.mul(g, h)] != compose_perms(&perms[g], &perms[h]) {
                    return Err(Error::InvalidAction(format!(
                        "phi({g}*{h}) != phi({g}) o phi({h})"
                    )));
                }
            }
        }
        if let Some(x0) = point {
            if x0 >= set_size {
                return Err(Error::InvalidAction(format!(
                    "point {x0} is outside the set"
                )));
            }
            if let Some(g) = group.elements().find(|&g| perms[g][x0] != x0) {
                return Err(Error::InvalidAction(format!("{g} moves the point {x0}")));
            }
        }
        Ok(GroupAction {
            group,
            set_size,
            perms,
            point,
        })
    }

    /// `𝟙`: every element acts as the identity.
    pub fn trivial(group: FiniteGroup, set_size: usize) -> Result<Self> {
        if set_size == 0 {
            return Err(Error::EmptySet);
        }
        let perms = vec![(0..set_size).collect(); group.order()];
        Ok(GroupAction {
            group,
            set_size,
            perms,
            point: None,
        })
    }

    pub fn with_point(self, point: usize) -> Result<Self> {
        GroupAction::new(self.group, self.perms, Some(point))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn point(&self) -> Option<usize> {
        self.point
    }

    pub fn perm(&self, g: ElementId) -> &[usize] {
        &self.perms[g]
    }

    pub fn act(&self, g: ElementId, x: usize) -> usize {
        self.perms[g][x]
    }

    pub fn is_trivial(&self) -> bool {
        self.perms
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &v)| i == v))
    }

    /// Group table, set size, one permutation line per group element, then
    /// the point if any.
    pub fn to_text(&self) -> String {
        let mut out = self.group.semigroup().to_text();
        out.push_str(&format!("{}\n", self.set_size));
        for p in &self.perms {
            let line: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        if let Some(x0) = self.point {
            out.push_str(&format!("{x0}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let table = read_table(&mut lines)?;
        let group = FiniteGroup::from_semigroup(&FiniteSemigroup::validate(table)?)?;
        let set_size = read_single(&mut lines, "set size")?;
        if set_size == 0 {
            return Err(Error::EmptySet);
        }
        let mut perms = Vec::with_capacity(group.order());
        for g in group.elements() {
            let (line, s) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: format!("missing permutation for {g}"),
            })?;
            let p = parse_ids(line, s)?;
            if p.len() != set_size {
                return Err(Error::Parse {
                    line,
                    msg: format!("permutation has {} entries, expected {set_size}", p.len()),
                });
            }
            perms.push(p);
        }
        let point = match lines.next() {
            None => None,
            Some((line, s)) => match parse_ids(line, s)?.as_slice() {
                [x0] => Some(*x0),
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: "expected a single point".into(),
                    })
                }
            },
        };
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                msg: "unexpected content after action".into(),
            });
        }
        GroupAction::new(group, perms, point)
    }
}

/// Every action of `group` on a set of size `set_size`, one per group
/// morphism into the symmetric group.
pub fn enumerate_actions(group: &FiniteGroup, set_size: usize) -> Result<Vec<GroupAction>> {
    if set_size == 0 {
        return Err(Error::EmptySet);
    }
    let (sym, perms) = FiniteGroup::symmetric(set_size);
    Ok(group_homomorphisms(group, &sym)
        .into_iter()
        .map(|h| GroupAction {
            group: group.clone(),
            set_size,
            perms: group
                .elements()
                .map(|g| perms[h.apply(g)].clone())
                .collect(),
            point: None,
        })
        .collect())
}

/// `(Φ, f)`: a group morphism and an equivariant map of sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMorphism {
    pub source: GroupAction,
    pub target: GroupAction,
    pub hom: Morphism,
    pub map: Vec<usize>,
}

impl ActionMorphism {
    pub fn new(
        source: &GroupAction,
        target: &GroupAction,
        hom: Morphism,
        map: Vec<usize>,
    ) -> Result<Self> {
        if !hom.dom().same_as(source.group.semigroup())
            || !hom.cod().same_as(target.group.semigroup())
        {
            return Err(Error::MismatchedCarrier);
        }
        if map.len() != source.set_size || map.iter().any(|&y| y >= target.set_size) {
            return Err(Error::InvalidMap("set map has the wrong shape".into()));
        }
        for g in source.group.elements() {
            for x in 0..source.set_size {
                if target.act(hom.apply(g), map[x]) != map[source.act(g, x)] {
                    return Err(Error::InvalidActionMorphism { g, x });
                }
            }
        }
        if let (Some(x0), Some(y0)) = (source.point, target.point) {
            if map[x0] != y0 {
                return Err(Error::InvalidMap(
                    "set map does not preserve the point".into(),
                ));
            }
        }
        Ok(ActionMorphism {
            source: source.clone(),
            target: target.clone(),
            hom,
            map,
        })
    }

    pub fn identity(action: &GroupAction) -> Self {
        ActionMorphism {
            source: action.clone(),
            target: action.clone(),
            hom: Morphism::identity(action.group.semigroup()),
            map: (0..action.set_size).collect(),
        }
    }
}

/// All action morphisms between two actions, by exhaustive search over
/// group morphisms and set maps.
pub fn enumerate_action_morphisms(
    source: &GroupAction,
    target: &GroupAction,
) -> Vec<ActionMorphism> {
    let homs = group_homomorphisms(&source.group, &target.group);
    let (k, m) = (source.set_size, target.set_size);
    let mut out = Vec::new();
    for hom in homs {
        let mut map = vec![0usize; k];
        loop {
            if let Ok(am) = ActionMorphism::new(source, target, hom.clone(), map.clone()) {
                out.push(am);
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                map[i] += 1;
                if map[i] < m {
                    break;
                }
                map[i] = 0;
            }
            if map.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    out
}

/// `F(G, X, φ)` on the carrier `X × G`, element `(x, g)` at `x·|G| + g`.
pub fn functor_f(action: &GroupAction) -> RightGroup {
    let gsize = action.group.order();
    let n = action.set_size * gsize;
    let table = crate::semigroup::CayleyTable::from_fn(n, |a, b| {
        let (g, (x2, g2)) = (a % gsize, (b / gsize, b % gsize));
        action.act(g, x2) * gsize + action.group.mul(g, g2)
    })
    .expect("in range");
    let s = FiniteSemigroup::validate(table).expect("F(G, X, phi) is associative");
    assert!(
        crate::rightgroup::check_right_group(&s)
            .expect("nonempty")
            .is_right_group(),
        "F(G, X, phi) must be a right group"
    );
    RightGroup::new(&s).expect("right group")
}

/// `F` of a pointed action, pointed at `(x₀, 1_G)`.
pub fn functor_f_pointed(action: &GroupAction) -> Result<PointedRightGroup> {
    let x0 = action
        .point
        .ok_or_else(|| Error::InvalidAction("action has no point".into()))?;
    let rg = functor_f(action);
    let point = x0 * action.group.order() + action.group.identity();
    PointedRightGroup::new(rg, point)
}

/// `F(Φ, f)(x, g) = (f(x), Φ(g))`.
pub fn functor_f_morphism(m: &ActionMorphism) -> Morphism {
    let (src, dst) = (functor_f(&m.source), functor_f(&m.target));
    let (gs, hs) = (m.source.group.order(), m.target.group.order());
    let map = (0..src.order())
        .map(|a| m.map[a / gs] * hs + m.hom.apply(a % gs))
        .collect();
    Morphism::new(src.semigroup().clone(), dst.semigroup().clone(), map)
        .expect("F(Phi, f) is a morphism")
}

/// `η(x, g) = (φ_g(x), g)`, an isomorphism `F(G, X, 𝟙) -> F(G, X, φ)`.
pub fn eta_iso(action: &GroupAction) -> Morphism {
    let trivial = GroupAction::trivial(action.group.clone(), action.set_size).expect("nonempty");
    let (src, dst) = (functor_f(&trivial), functor_f(action));
    let gs = action.group.order();
    let map = (0..src.order())
        .map(|a| {
            let (x, g) = (a / gs, a % gs);
            action.act(g, x) * gs + g
        })
        .collect();
    let eta = Morphism::new(src.semigroup().clone(), dst.semigroup().clone(), map)
        .expect("eta is a morphism");
    assert!(eta.is_bijective(), "eta must be bijective");
    eta
}

/// The trivial action of `S/∼` on `E`, with an isomorphism
/// `F(S/∼, E, 𝟙) -> S`, `(x, c) ↦ rep(c)·e_x`.
pub fn essential_surjectivity_witness(rg: &RightGroup) -> (GroupAction, Morphism) {
    let (g, _) = rg.quotient_group();
    let reps = rg.sim().partition().representatives();
    let action = GroupAction::trivial(g.clone(), rg.idempotents().len()).expect("E nonempty");
    let f = functor_f(&action);
    let gs = g.order();
    let map = (0..f.order())
        .map(|a| rg.mul(reps[a % gs], rg.idempotents()[a / gs]))
        .collect();
    let iso = Morphism::new(f.semigroup().clone(), rg.semigroup().clone(), map)
        .expect("witness map is a morphism");
    assert!(iso.is_bijective(), "F(S/~, E, 1) must be isomorphic to S");
    (action, iso)
}

/// The images under `F` of a nontrivial action and the trivial action are
/// isomorphic, though the actions are not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonFullnessReport {
    pub group_order: usize,
    pub set_size: usize,
    /// `η: F(G, X, 𝟙) -> F(G, X, φ)` verified bijective and multiplicative.
    pub images_isomorphic: bool,
    /// Pairs `(Φ, f)` with `Φ` a group endomorphism and `f` a bijection.
    pub candidates_checked: usize,
    /// How many of them satisfy compatibility from `φ` to `𝟙`.
    pub compatible_from_action: usize,
    /// Isomorphisms of actions found in either direction.
    pub action_isos_found: usize,
}

impl NonFullnessReport {
    pub fn witnesses_non_fullness(&self) -> bool {
        self.images_isomorphic && self.compatible_from_action == 0 && self.action_isos_found == 0
    }
}

/// The swap action of `Z₂` on two points.
pub fn swap_action() -> GroupAction {
    GroupAction::new(FiniteGroup::cyclic(2), vec![vec![0, 1], vec![1, 0]], None).expect("valid")
}

pub fn non_fullness_witness() -> NonFullnessReport {
    non_fullness_witness_for(&swap_action()).expect("swap is nontrivial")
}

pub fn non_fullness_witness_for(action: &GroupAction) -> Result<NonFullnessReport> {
    if action.is_trivial() {
        return Err(Error::NotApplicable("the action is already trivial".into()));
    }
    let trivial = GroupAction::trivial(action.group.clone(), action.set_size)?;
    let eta = eta_iso(action);
    let images_isomorphic = eta.is_bijective();

    let (_, perms) = FiniteGroup::symmetric(action.set_size);
    let endos = group_homomorphisms(&action.group, &action.group);
    let mut candidates_checked = 0;
    let mut compatible_from_action = 0;
    let mut action_isos_found = 0;
    for hom in &endos {
        for f in &perms {
            candidates_checked += 1;
            let forward = ActionMorphism::new(action, &trivial, hom.clone(), f.clone()).is_ok();
            let backward = ActionMorphism::new(&trivial, action, hom.clone(), f.clone()).is_ok();
            if forward {
                compatible_from_action += 1;
            }
            if hom.is_bijective() && (forward || backward) {
                action_isos_found += 1;
            }
        }
    }
    Ok(NonFullnessReport {
        group_order: action.group.order(),
        set_size: action.set_size,
        images_isomorphic,
        candidates_checked,
        compatible_from_action,
        action_isos_found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_convention_on_s3() {
        let (s3, perms) = FiniteGroup::symmetric(3);
        // element g acts on 3 points by its own permutation
        let action = GroupAction::new(s3.clone(), perms.clone(), None).unwrap();
        let (a, b) = (1, 2);
        let ab = s3.mul(a, b);
        assert_ne!(s3.mul(a, b), s3.mul(b, a));
        for x in 0..3 {
            assert_eq!(action.act(ab, x), action.act(a, action.act(b, x)));
        }
        assert_eq!(compose_perms(&[1, 2, 0], &[1, 0, 2]), vec![2, 1, 0]);
    }

    #[test]
    fn rejects_non_actions() {
        let z2 = FiniteGroup::cyclic(2);
        assert!(matches!(
            GroupAction::new(z2.clone(), vec![vec![1, 0], vec![0, 1]], None),
            Err(Error::InvalidAction(_))
        ));
        assert!(matches!(
            GroupAction::new(z2.clone(), vec![vec![0, 1], vec![1, 0]], Some(0)),
            Err(Error::InvalidAction(_))
        ));
        assert_eq!(GroupAction::trivial(z2, 0), Err(Error::EmptySet));
    }

    #[test]
    fn functor_examples() {
        let rz = functor_f(&GroupAction::trivial(FiniteGroup::trivial(), 3).unwrap());
        assert_eq!(rz.semigroup(), &FiniteSemigroup::right_zero(3));
        let z2 = functor_f(&GroupAction::trivial(FiniteGroup::cyclic(2), 1).unwrap());
        assert_eq!(z2.semigroup(), &FiniteSemigroup::cyclic(2));
        let swapped = functor_f(&swap_action());
        assert_eq!(swapped.order(), 4);
        assert_eq!(swapped.idempotents().len(), 2);
    }

    #[test]
    fn eta_examples() {
        let trivial = GroupAction::trivial(FiniteGroup::cyclic(3), 2).unwrap();
        let eta = eta_iso(&trivial);
        assert_eq!(eta.map(), (0..6).collect::<Vec<_>>().as_slice());
        let eta = eta_iso(&swap_action());
        assert_eq!(eta.map(), &[0, 3, 2, 1]);
    }

    #[test]
    fn action_morphisms() {
        let swap = swap_action();
        let id = ActionMorphism::identity(&swap);
        let f = functor_f_morphism(&id);
        assert_eq!(f, Morphism::identity(f.dom()));
        let z2 = FiniteGroup::cyclic(2);
        // Φ = id, f = swap is compatible with the swap action
        let m = ActionMorphism::new(&swap, &swap, Morphism::identity(z2.semigroup()), vec![1, 0]);
        assert!(m.is_ok());
        let trivial = GroupAction::trivial(z2.clone(), 2).unwrap();
        assert_eq!(
            ActionMorphism::new(
                &swap,
                &trivial,
                Morphism::identity(z2.semigroup()),
                vec![1, 0]
            ),
            Err(Error::InvalidActionMorphism { g: 1, x: 0 })
        );
        // Φ trivial, f constant: F of it is constant onto an idempotent
        let one = FiniteGroup::trivial();
        let point = GroupAction::trivial(one.clone(), 1).unwrap();
        let hom = Morphism::constant(z2.semigroup(), one.semigroup(), 0).unwrap();
        let c = functor_f_morphism(&ActionMorphism::new(&swap, &point, hom, vec![0, 0]).unwrap());
        assert_eq!(c.image().len(), 1);
    }

    #[test]
    fn essential_surjectivity() {
        let rg = RightGroup::from_parts(2, &FiniteSemigroup::cyclic(2)).unwrap();
        let (action, iso) = essential_surjectivity_witness(&rg);
        assert!(action.is_trivial());
        assert_eq!((action.group().order(), action.set_size()), (2, 2));
        assert!(iso.is_bijective());
        let rz = RightGroup::new(&FiniteSemigroup::right_zero(3)).unwrap();
        let (action, _) = essential_surjectivity_witness(&rz);
        assert_eq!((action.group().order(), action.set_size()), (1, 3));
    }

    #[test]
    fn non_fullness() {
        let r = non_fullness_witness();
        assert!(r.witnesses_non_fullness());
        assert_eq!(r.candidates_checked, 4);
        let z2 = FiniteGroup::cyclic(2);
        let three = GroupAction::new(z2.clone(), vec![vec![0, 1, 2], vec![1, 0, 2]], None).unwrap();
        assert!(non_fullness_witness_for(&three)
            .unwrap()
            .witnesses_non_fullness());
        let trivial = GroupAction::trivial(z2, 2).unwrap();
        assert!(matches!(
            non_fullness_witness_for(&trivial),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn enumerated_actions_and_text_format() {
        let z2 = FiniteGroup::cyclic(2);
        let acts = enumerate_actions(&z2, 3).unwrap();
        // identity plus the three transpositions
        assert_eq!(acts.len(), 4);
        let pointed = swap_action();
        let text = pointed.to_text();
        assert_eq!(GroupAction::parse(&text).unwrap(), pointed);
        let fixed = GroupAction::new(z2, vec![vec![0, 1, 2], vec![1, 0, 2]], Some(2)).unwrap();
        assert_eq!(GroupAction::parse(&fixed.to_text()).unwrap(), fixed);
        let pf = functor_f_pointed(&fixed).unwrap();
        assert_eq!(pf.point, 4);
        assert!(GroupAction::parse("2\n0 1\n1 0\n2\n0 1\n1 1\n").is_err());
    }
}
