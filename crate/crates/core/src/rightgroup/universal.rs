//! Product and coproduct universal properties of `(S, Se, E)`, checked by
//! exhaustive mediating-morphism search over a finite pool of probes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{PointedRightGroup, RightGroup};
use crate::error::{Error, Result};
use crate::morphisms::{HomSearch, Morphism};
use crate::semigroup::{ElementId, FiniteSemigroup};

/// Mediating maps found for each pair of legs.
type Mediators = HashMap<(Vec<ElementId>, Vec<ElementId>), Vec<Vec<ElementId>>>;

/// A test object for a universal property, optionally pointed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub semigroup: FiniteSemigroup,
    pub point: Option<ElementId>,
}

impl Probe {
    pub fn plain(semigroup: FiniteSemigroup) -> Self {
        Probe {
            semigroup,
            point: None,
        }
    }

    pub fn pointed(p: &PointedRightGroup) -> Self {
        Probe {
            semigroup: p.rg.semigroup().clone(),
            point: Some(p.point),
        }
    }
}

/// Outcome of a universal-property sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalCheck {
    pub holds: bool,
    pub probes_checked: usize,
    /// Pairs `(f1, f2)` for which a mediating morphism was sought.
    pub pairs_checked: usize,
    pub counterexample: Option<String>,
}

impl UniversalCheck {
    fn start() -> Self {
        UniversalCheck {
            holds: true,
            probes_checked: 0,
            pairs_checked: 0,
            counterexample: None,
        }
    }

    fn fail(mut self, why: String) -> Self {
        self.holds = false;
        self.counterexample = Some(why);
        self
    }
}

type Witness<'a> = &'a dyn Fn(&[ElementId], &[ElementId]) -> Vec<ElementId>;

fn homs(
    dom: &FiniteSemigroup,
    cod: &FiniteSemigroup,
    fix: Option<(ElementId, ElementId)>,
) -> Result<Vec<Vec<ElementId>>> {
    let mut search = HomSearch::new(dom, cod);
    if let Some((a, v)) = fix {
        search = search.fix(a, v);
    }
    let mut out = Vec::new();
    search.for_each(|m| out.push(m.to_vec()))?;
    Ok(out)
}

fn compose(first: &[ElementId], then: &[ElementId]) -> Vec<ElementId> {
    first.iter().map(|&x| then[x]).collect()
}

/// Checks that `(apex, p1, p2)` is a product: for each probe `T` and each
/// pair `f1: T -> A`, `f2: T -> B` exactly one `f: T -> apex` has
/// `p1 ∘ f = f1` and `p2 ∘ f = f2`. When `witness` is given, the unique
/// mediator must equal `witness(f1, f2)`.
pub fn check_product_cone(
    p1: &Morphism,
    p2: &Morphism,
    probes: &[FiniteSemigroup],
    witness: Option<Witness<'_>>,
) -> Result<UniversalCheck> {
    if !p1.dom().same_as(p2.dom()) {
        return Err(Error::MismatchedCarrier);
    }
    let apex = p1.dom();
    let mut report = UniversalCheck::start();
    for (idx, t) in probes.iter().enumerate() {
        let mut mediators: Mediators = HashMap::new();
        for f in homs(t, apex, None)? {
            let key = (compose(&f, p1.map()), compose(&f, p2.map()));
            mediators.entry(key).or_default().push(f);
        }
        let left = homs(t, p1.cod(), None)?;
        let right = homs(t, p2.cod(), None)?;
        for f1 in &left {
            for f2 in &right {
                report.pairs_checked += 1;
                let found = mediators
                    .get(&(f1.clone(), f2.clone()))
                    .map_or(&[][..], |v| v.as_slice());
                if found.len() != 1 {
                    return Ok(report.fail(format!(
                        "probe {idx}: pair {f1:?}, {f2:?} has {} mediating morphisms",
                        found.len()
                    )));
                }
                if let Some(w) = witness {
                    let built = w(f1, f2);
                    if built != found[0] {
                        return Ok(report.fail(format!(
                            "probe {idx}: witness {built:?} differs from mediator {:?}",
                            found[0]
                        )));
                    }
                }
            }
        }
        report.probes_checked += 1;
    }
    Ok(report)
}

/// Dual of [`check_product_cone`] for injections `i1: A -> apex`,
/// `i2: B -> apex`. When `apex_point` is set, every morphism must carry the
/// point of its domain to the probe's point; `A` and `B` are pointed by the
/// preimages of `apex_point`.
pub fn check_coproduct_cocone(
    i1: &Morphism,
    i2: &Morphism,
    apex_point: Option<ElementId>,
    probes: &[Probe],
    witness: Option<Witness<'_>>,
) -> Result<UniversalCheck> {
    if !i1.cod().same_as(i2.cod()) {
        return Err(Error::MismatchedCarrier);
    }
    let apex = i1.cod();
    let preimage_of_point = |i: &Morphism, pt: ElementId| {
        i.dom()
            .elements()
            .find(|&a| i.apply(a) == pt)
            .ok_or_else(|| {
                Error::InvalidMap(format!("point {pt} is not in the image of an injection"))
            })
    };
    let points = match apex_point {
        Some(pt) => Some((pt, preimage_of_point(i1, pt)?, preimage_of_point(i2, pt)?)),
        None => None,
    };
    let mut report = UniversalCheck::start();
    for (idx, probe) in probes.iter().enumerate() {
        let t = &probe.semigroup;
        let fixes = match (points, probe.point) {
            (None, _) => (None, None, None),
            (Some((s, a, b)), Some(tp)) => (Some((s, tp)), Some((a, tp)), Some((b, tp))),
            (Some(_), None) => {
                return Err(Error::InvalidMap(format!("probe {idx} has no point")));
            }
        };
        let mut mediators: Mediators = HashMap::new();
        for psi in homs(apex, t, fixes.0)? {
            let key = (compose(i1.map(), &psi), compose(i2.map(), &psi));
            mediators.entry(key).or_default().push(psi);
        }
        let left = homs(i1.dom(), t, fixes.1)?;
        let right = homs(i2.dom(), t, fixes.2)?;
        for f1 in &left {
            for f2 in &right {
                report.pairs_checked += 1;
                let found = mediators
                    .get(&(f1.clone(), f2.clone()))
                    .map_or(&[][..], |v| v.as_slice());
                if found.len() != 1 {
                    return Ok(report.fail(format!(
                        "probe {idx}: pair {f1:?}, {f2:?} has {} mediating morphisms",
                        found.len()
                    )));
                }
                if let Some(w) = witness {
                    let built = w(f1, f2);
                    if built != found[0] {
                        return Ok(report.fail(format!(
                            "probe {idx}: witness {built:?} differs from mediator {:?}",
                            found[0]
                        )));
                    }
                }
            }
        }
        report.probes_checked += 1;
    }
    Ok(report)
}

/// `r_e: S -> Se₀` and `π_E: S -> E`, onto the standalone tables.
pub(crate) fn canonical_projections(rg: &RightGroup) -> (Morphism, Morphism) {
    let se = rg.subgroup_se(rg.e0()).expect("e0 is idempotent");
    let e_sub = rg.idempotent_subsemigroup();
    let s = rg.semigroup();
    let r_e = Morphism::new(
        s.clone(),
        se.semigroup().clone(),
        s.elements().map(|x| se.local(rg.mul(x, rg.e0()))).collect(),
    )
    .expect("r_e is a morphism");
    let pi_e = Morphism::new(
        s.clone(),
        e_sub.semigroup.clone(),
        s.elements()
            .map(|x| rg.idempotent_index(rg.pi_e(x)).expect("in E"))
            .collect(),
    )
    .expect("pi_E is a morphism");
    (r_e, pi_e)
}

/// `ι: Se -> S` and `ι: E -> S`, from the standalone tables.
pub(crate) fn canonical_injections(rg: &RightGroup, e: ElementId) -> Result<(Morphism, Morphism)> {
    let se = rg.subgroup_se(e)?;
    let e_sub = rg.idempotent_subsemigroup();
    let s = rg.semigroup();
    let i_e = Morphism::new(se.semigroup().clone(), s.clone(), se.sub.embed.clone())
        .expect("inclusion of Se");
    let i_big_e = Morphism::new(e_sub.semigroup.clone(), s.clone(), e_sub.embed.clone())
        .expect("inclusion of E");
    Ok((i_e, i_big_e))
}

/// `(S, r_e, π_E)` is the product of `Se₀` and `E`, with mediator
/// `f(t) = f_e(t) f_E(t)`.
pub fn check_product(rg: &RightGroup, probes: &[FiniteSemigroup]) -> Result<UniversalCheck> {
    let (r_e, pi_e) = canonical_projections(rg);
    let se = rg.subgroup_se(rg.e0())?;
    let es = rg.idempotents();
    let witness = |f1: &[ElementId], f2: &[ElementId]| -> Vec<ElementId> {
        f1.iter()
            .zip(f2)
            .map(|(&g, &e)| rg.mul(se.embed(g), es[e]))
            .collect()
    };
    check_product_cone(&r_e, &pi_e, probes, Some(&witness))
}

/// `(S, π_∼, π_E)` is the product of `S/∼` and `E`.
pub fn check_product_quotients(
    rg: &RightGroup,
    probes: &[FiniteSemigroup],
) -> Result<UniversalCheck> {
    let (_, proj) = rg.quotient_group();
    let (_, pi_e) = canonical_projections(rg);
    let reps = rg.sim().partition().representatives();
    let es = rg.idempotents();
    let witness = |f1: &[ElementId], f2: &[ElementId]| -> Vec<ElementId> {
        f1.iter()
            .zip(f2)
            .map(|(&c, &e)| rg.mul(reps[c], es[e]))
            .collect()
    };
    check_product_cone(&proj, &pi_e, probes, Some(&witness))
}

/// `((S, e), ι_e, ι_E)` is the coproduct of `(Se, e)` and `(E, e)` among
/// pointed right groups, with mediator `ψ(s) = f_e(se) f_E(π_E(s))`.
pub fn check_coproduct_pointed(
    prg: &PointedRightGroup,
    probes: &[PointedRightGroup],
) -> Result<UniversalCheck> {
    let rg = &prg.rg;
    let e = prg.point;
    let (i_e, i_big_e) = canonical_injections(rg, e)?;
    let se = rg.subgroup_se(e)?;
    let probe_list: Vec<Probe> = probes.iter().map(Probe::pointed).collect();
    let probe_tables: Vec<&FiniteSemigroup> = probes.iter().map(|p| p.rg.semigroup()).collect();
    // the witness needs the probe's multiplication; evaluate per probe
    let mut total = UniversalCheck::start();
    for (probe, t) in probe_list.iter().zip(probe_tables) {
        let witness = |f1: &[ElementId], f2: &[ElementId]| -> Vec<ElementId> {
            rg.semigroup()
                .elements()
                .map(|s| {
                    let g = f1[se.local(rg.mul(s, e))];
                    let f = f2[rg.idempotent_index(rg.pi_e(s)).expect("in E")];
                    t.mul(g, f)
                })
                .collect()
        };
        let r = check_coproduct_cocone(
            &i_e,
            &i_big_e,
            Some(e),
            std::slice::from_ref(probe),
            Some(&witness),
        )?;
        total.pairs_checked += r.pairs_checked;
        if !r.holds {
            let why = r.counterexample.unwrap_or_default();
            let idx = total.probes_checked;
            return Ok(total.fail(format!("pointed probe {idx}: {why}")));
        }
        total.probes_checked += 1;
    }
    Ok(total)
}

/// `r_e ∘ ι_e = id` on `Se` and `π_E ∘ ι_E = id` on `E`, for the base
/// idempotent.
pub fn biproduct_compatible(rg: &RightGroup) -> bool {
    let (r_e, pi_e) = canonical_projections(rg);
    let (i_e, i_big_e) = canonical_injections(rg, rg.e0()).expect("e0 is idempotent");
    r_e.after(&i_e).expect("composable") == Morphism::identity(i_e.dom())
        && pi_e.after(&i_big_e).expect("composable") == Morphism::identity(i_big_e.dom())
}

/// Evidence that `S` is not the coproduct of `Se` and `E` among semigroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoproductClash {
    /// The idempotent shared by `Se` and `E`.
    pub element: ElementId,
    /// The two distinct values `ω(element)` would have to take.
    pub forced: (ElementId, ElementId),
    /// Order of the witness `T`.
    pub witness_order: usize,
    /// Maps `S -> T` inspected exhaustively (0 if the space was too large).
    pub maps_checked: u128,
    /// How many of them extend both constant maps; always 0.
    pub extensions: u128,
}

const CLASH_EXHAUSTIVE_LIMIT: u128 = 1 << 20;

/// [`coproduct_counterexample_with`] on the right zero semigroup of order 2.
pub fn coproduct_counterexample(rg: &RightGroup) -> Result<CoproductClash> {
    coproduct_counterexample_with(rg, &FiniteSemigroup::right_zero(2))
}

/// Sends `Se₀` constantly to one idempotent of `t` and `E` to another and
/// shows that no map `ω: S -> t`, morphism or not, restricts to both.
pub fn coproduct_counterexample_with(
    rg: &RightGroup,
    t: &FiniteSemigroup,
) -> Result<CoproductClash> {
    let t_idem = t.idempotents();
    if t_idem.len() < 2 {
        return Err(Error::NotApplicable(
            "the witness needs two distinct idempotents".into(),
        ));
    }
    let (tx, ty) = (t_idem[0], t_idem[1]);
    let e = rg.e0();
    let (i_e, i_big_e) = canonical_injections(rg, e)?;
    let f_e = Morphism::constant(i_e.dom(), t, tx)?;
    let f_big_e = Morphism::constant(i_big_e.dom(), t, ty)?;

    // required[s]: values forced on s by either restriction
    let n = rg.order();
    let mut required: Vec<Vec<ElementId>> = vec![Vec::new(); n];
    for a in i_e.dom().elements() {
        required[i_e.apply(a)].push(f_e.apply(a));
    }
    for a in i_big_e.dom().elements() {
        required[i_big_e.apply(a)].push(f_big_e.apply(a));
    }
    let clash = required
        .iter()
        .position(|vals| vals.iter().any(|&v| v != vals[0]))
        .expect("the point lies in both Se and E");
    assert_eq!(clash, e);

    let m = t.order() as u128;
    let maps = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(m));
    let (maps_checked, extensions) = match maps {
        Some(total) if total <= CLASH_EXHAUSTIVE_LIMIT => {
            let mut ext = 0u128;
            let mut omega = vec![0usize; n];
            for code in 0..total {
                let mut c = code;
                for slot in omega.iter_mut() {
                    *slot = (c % m) as usize;
                    c /= m;
                }
                if required
                    .iter()
                    .zip(&omega)
                    .all(|(r, &w)| r.iter().all(|&v| v == w))
                {
                    ext += 1;
                }
            }
            (total, ext)
        }
        _ => (0, 0),
    };
    assert_eq!(extensions, 0, "a map extending both constants exists");
    Ok(CoproductClash {
        element: clash,
        forced: (tx, ty),
        witness_order: t.order(),
        maps_checked,
        extensions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2z2() -> RightGroup {
        RightGroup::from_parts(2, &FiniteSemigroup::cyclic(2)).unwrap()
    }

    fn small_probes() -> Vec<FiniteSemigroup> {
        vec![
            FiniteSemigroup::trivial(),
            FiniteSemigroup::right_zero(2),
            FiniteSemigroup::left_zero(2),
            FiniteSemigroup::cyclic(2),
            FiniteSemigroup::from_rows(&[vec![0, 0], vec![0, 1]]).unwrap(),
            FiniteSemigroup::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap(),
        ]
    }

    #[test]
    fn product_on_trivial_probe_counts_idempotent_pairs() {
        let s = r2z2();
        let r = check_product(&s, &[FiniteSemigroup::trivial()]).unwrap();
        assert!(r.holds);
        // one idempotent in Se0, two in E
        assert_eq!(r.pairs_checked, 2);
    }

    #[test]
    fn product_and_quotient_product_hold() {
        let s = r2z2();
        assert!(check_product(&s, &small_probes()).unwrap().holds);
        assert!(check_product_quotients(&s, &small_probes()).unwrap().holds);
        assert!(biproduct_compatible(&s));
    }

    #[test]
    fn wrong_projection_breaks_product() {
        let s = r2z2();
        let (r_e, pi_e) = canonical_projections(&s);
        let constant = Morphism::constant(s.semigroup(), r_e.cod(), 0).unwrap();
        let r = check_product_cone(&constant, &pi_e, &small_probes(), None).unwrap();
        assert!(!r.holds);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn pointed_coproduct_holds_and_unpointed_fails() {
        let s = r2z2();
        let prg = PointedRightGroup::new(s.clone(), 0).unwrap();
        let probes: Vec<PointedRightGroup> = [
            RightGroup::new(&FiniteSemigroup::trivial()).unwrap(),
            RightGroup::new(&FiniteSemigroup::right_zero(2)).unwrap(),
            RightGroup::new(&FiniteSemigroup::cyclic(2)).unwrap(),
            s.clone(),
        ]
        .iter()
        .flat_map(PointedRightGroup::all_pointings)
        .collect();
        assert!(check_coproduct_pointed(&prg, &probes).unwrap().holds);

        let (i_e, i_big_e) = canonical_injections(&s, 0).unwrap();
        let unpointed = check_coproduct_cocone(
            &i_e,
            &i_big_e,
            None,
            &[Probe::plain(FiniteSemigroup::right_zero(2))],
            None,
        )
        .unwrap();
        assert!(!unpointed.holds);
    }

    #[test]
    fn self_probe_yields_identity() {
        let s = r2z2();
        let (i_e, i_big_e) = canonical_injections(&s, 0).unwrap();
        let probe = Probe {
            semigroup: s.semigroup().clone(),
            point: Some(0),
        };
        let mut mediators = Vec::new();
        HomSearch::new(s.semigroup(), s.semigroup())
            .fix(0, 0)
            .for_each(|psi| {
                if compose(i_e.map(), psi) == i_e.map()
                    && compose(i_big_e.map(), psi) == i_big_e.map()
                {
                    mediators.push(psi.to_vec());
                }
            })
            .unwrap();
        assert_eq!(mediators, vec![vec![0, 1, 2, 3]]);
        assert!(
            check_coproduct_cocone(&i_e, &i_big_e, Some(0), &[probe], None)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn clash_examples() {
        let c = coproduct_counterexample(&r2z2()).unwrap();
        assert_eq!(c.element, 0);
        assert_ne!(c.forced.0, c.forced.1);
        assert_eq!((c.maps_checked, c.extensions), (16, 0));
        let z3 = RightGroup::new(&FiniteSemigroup::cyclic(3)).unwrap();
        assert_eq!(coproduct_counterexample(&z3).unwrap().element, 0);
        assert!(matches!(
            coproduct_counterexample_with(&z3, &FiniteSemigroup::cyclic(2)),
            Err(Error::NotApplicable(_))
        ));
    }
}
