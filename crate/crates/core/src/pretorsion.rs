//! Trivial morphisms relative to the order-one semigroups, prekernels,
//! precokernels and the pretorsion theory (right zero semigroups, groups)
//! among right groups.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphisms::{HomSearch, Morphism};
use crate::rightgroup::{RightGroup, UniversalCheck};
use crate::semigroup::{ElementId, FiniteSemigroup};

/// Evidence that a morphism factors through an order-one semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialityCertificate {
    /// The constant idempotent value; `None` for an empty domain.
    pub value: Option<ElementId>,
}

/// Trivial iff the image is a single idempotent (or the domain is empty).
pub fn is_trivial_morphism(f: &Morphism) -> Option<TrivialityCertificate> {
    trivial_map(f.map(), f.cod())
}

fn trivial_map(map: &[ElementId], cod: &FiniteSemigroup) -> Option<TrivialityCertificate> {
    match map.first() {
        None => Some(TrivialityCertificate { value: None }),
        Some(&v) if map.iter().all(|&x| x == v) && cod.is_idempotent(v) => {
            Some(TrivialityCertificate { value: Some(v) })
        }
        Some(_) => None,
    }
}

/// One constant morphism per idempotent of `cod`.
pub fn trivial_morphisms(dom: &FiniteSemigroup, cod: &FiniteSemigroup) -> Vec<Morphism> {
    let out: Vec<Morphism> = cod
        .idempotents()
        .into_iter()
        .map(|e| Morphism::constant(dom, cod, e).expect("constant at an idempotent"))
        .collect();
    if !dom.is_empty() {
        assert_eq!(out.len(), cod.idempotents().len());
    }
    out
}

/// `K = f⁻¹(g₀)` with its inclusion, when `f(E) = {g₀}`.
#[derive(Clone, Debug)]
pub struct Prekernel {
    pub kernel: RightGroup,
    pub inclusion: Morphism,
}

pub fn prekernel(f: &Morphism) -> Result<Prekernel> {
    let dom = RightGroup::new(f.dom())?;
    RightGroup::new(f.cod())?;
    let es = dom.idempotents();
    let g0 = f.apply(es[0]);
    if let Some(&e2) = es.iter().find(|&&e| f.apply(e) != g0) {
        return Err(Error::NoPrekernel { e1: es[0], e2 });
    }
    let carrier: Vec<ElementId> = f.dom().elements().filter(|&s| f.apply(s) == g0).collect();
    let sub = f
        .dom()
        .restrict(&carrier)
        .expect("preimage of an idempotent is closed");
    let kernel = RightGroup::new(&sub.semigroup).expect("K is a right subgroup");
    let inclusion = Morphism::new(sub.semigroup.clone(), f.dom().clone(), sub.embed.clone())
        .expect("inclusion");
    Ok(Prekernel { kernel, inclusion })
}

/// Why `f` has no prekernel: the constant probes at `e1` and `e2` must both
/// factor through any candidate, which `f` would then separate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoPrekernelCertificate {
    pub e1: ElementId,
    pub e2: ElementId,
    pub f_e1: ElementId,
    pub f_e2: ElementId,
}

/// Checks the obstruction: two idempotents with distinct images. Both
/// constant maps from the trivial semigroup are morphisms whose composite
/// with `f` is trivial, so any prekernel `ε: X -> S` hits `e1` and `e2`,
/// contradicting `f ∘ ε` being constant.
pub fn no_prekernel_certificate(f: &Morphism) -> Option<NoPrekernelCertificate> {
    let es = f.dom().idempotents();
    let (&e1, &e2) = es
        .iter()
        .flat_map(|a| es.iter().map(move |b| (a, b)))
        .find(|(a, b)| f.apply(**a) != f.apply(**b))?;
    let one = FiniteSemigroup::trivial();
    for e in [e1, e2] {
        let lambda = Morphism::constant(&one, f.dom(), e).expect("idempotent");
        assert!(is_trivial_morphism(&f.after(&lambda).expect("composable")).is_some());
    }
    Some(NoPrekernelCertificate {
        e1,
        e2,
        f_e1: f.apply(e1),
        f_e2: f.apply(e2),
    })
}

fn homs(dom: &FiniteSemigroup, cod: &FiniteSemigroup) -> Result<Vec<Vec<ElementId>>> {
    let mut out = Vec::new();
    HomSearch::new(dom, cod).for_each(|m| out.push(m.to_vec()))?;
    Ok(out)
}

fn failed(mut r: UniversalCheck, why: String) -> UniversalCheck {
    r.holds = false;
    r.counterexample = Some(why);
    r
}

fn fresh() -> UniversalCheck {
    UniversalCheck {
        holds: true,
        probes_checked: 0,
        pairs_checked: 0,
        counterexample: None,
    }
}

/// `eps: X -> dom` is a prekernel of `f`: `f ∘ eps` is trivial and every
/// `λ: Y -> dom` with `f ∘ λ` trivial factors as `eps ∘ λ'` for exactly
/// one `λ'`. `pairs_checked` counts the `λ` examined.
pub fn verify_prekernel(
    f: &Morphism,
    eps: &Morphism,
    probes: &[FiniteSemigroup],
) -> Result<UniversalCheck> {
    let comp = f.after(eps)?;
    let report = fresh();
    if is_trivial_morphism(&comp).is_none() {
        return Ok(failed(
            report,
            format!("f o eps = {:?} is not trivial", comp.map()),
        ));
    }
    let mut report = report;
    for (idx, y) in probes.iter().enumerate() {
        let mut factored: HashMap<Vec<ElementId>, usize> = HashMap::new();
        for lp in homs(y, eps.dom())? {
            *factored
                .entry(lp.iter().map(|&x| eps.apply(x)).collect())
                .or_default() += 1;
        }
        for lambda in homs(y, f.dom())? {
            let through: Vec<ElementId> = lambda.iter().map(|&x| f.apply(x)).collect();
            if trivial_map(&through, f.cod()).is_none() {
                continue;
            }
            report.pairs_checked += 1;
            let count = factored.get(&lambda).copied().unwrap_or(0);
            if count != 1 {
                return Ok(failed(
                    report,
                    format!("probe {idx}: lambda {lambda:?} factors {count} times"),
                ));
            }
        }
        report.probes_checked += 1;
    }
    Ok(report)
}

/// `π: S -> S/∼`.
pub fn precokernel_canonical(rg: &RightGroup) -> Morphism {
    let (_, proj) = rg.quotient_group();
    proj
}

/// `eta: cod -> X` is a precokernel of `f`: `eta ∘ f` is trivial and every
/// `μ: cod -> Y` with `μ ∘ f` trivial factors as `μ' ∘ eta` for exactly
/// one `μ'`.
pub fn verify_precokernel(
    f: &Morphism,
    eta: &Morphism,
    probes: &[FiniteSemigroup],
) -> Result<UniversalCheck> {
    let comp = eta.after(f)?;
    let report = fresh();
    if is_trivial_morphism(&comp).is_none() {
        return Ok(failed(
            report,
            format!("eta o f = {:?} is not trivial", comp.map()),
        ));
    }
    let mut report = report;
    for (idx, y) in probes.iter().enumerate() {
        let mut factored: HashMap<Vec<ElementId>, usize> = HashMap::new();
        for mp in homs(eta.cod(), y)? {
            *factored
                .entry(eta.map().iter().map(|&x| mp[x]).collect())
                .or_default() += 1;
        }
        for mu in homs(f.cod(), y)? {
            let through: Vec<ElementId> = f.map().iter().map(|&x| mu[x]).collect();
            if trivial_map(&through, y).is_none() {
                continue;
            }
            report.pairs_checked += 1;
            let count = factored.get(&mu).copied().unwrap_or(0);
            if count != 1 {
                return Ok(failed(
                    report,
                    format!("probe {idx}: mu {mu:?} factors {count} times"),
                ));
            }
        }
        report.probes_checked += 1;
    }
    Ok(report)
}

/// `E ↪ S ↠ S/∼` with both universal properties checked.
#[derive(Clone, Debug)]
pub struct PreexactSequence {
    pub inclusion: Morphism,
    pub projection: Morphism,
    pub prekernel_check: UniversalCheck,
    pub precokernel_check: UniversalCheck,
}

impl PreexactSequence {
    pub fn holds(&self) -> bool {
        self.prekernel_check.holds && self.precokernel_check.holds
    }
}

pub fn canonical_preexact_sequence(
    rg: &RightGroup,
    probes: &[FiniteSemigroup],
) -> Result<PreexactSequence> {
    let e_sub = rg.idempotent_subsemigroup();
    let inclusion = Morphism::new(
        e_sub.semigroup.clone(),
        rg.semigroup().clone(),
        e_sub.embed.clone(),
    )
    .expect("inclusion of E");
    let projection = precokernel_canonical(rg);
    // the prekernel construction applied to π recovers E
    let pk = prekernel(&projection)?;
    assert_eq!(
        pk.inclusion.map(),
        inclusion.map(),
        "prekernel of pi must be E"
    );
    // torsion part is right zero, torsion-free part is a group
    assert_eq!(e_sub.semigroup, FiniteSemigroup::right_zero(e_sub.order()));
    crate::group::FiniteGroup::from_semigroup(projection.cod()).expect("S/~ is a group");
    let prekernel_check = verify_prekernel(&projection, &inclusion, probes)?;
    let precokernel_check = verify_precokernel(&inclusion, &projection, probes)?;
    Ok(PreexactSequence {
        inclusion,
        projection,
        prekernel_check,
        precokernel_check,
    })
}

/// One line of the pretorsion verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: u8,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PretorsionReport {
    pub pool_size: usize,
    pub probe_count: usize,
    pub checks: Vec<AxiomCheck>,
}

impl PretorsionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn describe(rg: &RightGroup) -> String {
    let (g, _) = rg.quotient_group();
    format!("|E|={} x {}", rg.idempotents().len(), g.label())
}

/// Axiom (1): every morphism from a right zero member to a group member is
/// trivial, and there is exactly one. Axiom (2): every member sits in a
/// verified canonical sequence.
pub fn verify_pretorsion_axioms(
    pool: &[RightGroup],
    probes: &[FiniteSemigroup],
) -> Result<PretorsionReport> {
    let mut checks = Vec::new();
    let right_zero: Vec<&RightGroup> = pool
        .iter()
        .filter(|rg| rg.idempotents().len() == rg.order())
        .collect();
    let groups: Vec<&RightGroup> = pool
        .iter()
        .filter(|rg| rg.idempotents().len() == 1)
        .collect();
    for t in &right_zero {
        for f in &groups {
            let homs = HomSearch::new(t.semigroup(), f.semigroup()).run()?;
            let all_trivial = homs.iter().all(|h| is_trivial_morphism(h).is_some());
            checks.push(AxiomCheck {
                axiom: 1,
                subject: format!("Hom(R{}, {})", t.order(), describe(f)),
                passed: all_trivial && homs.len() == 1,
                detail: format!("{} morphisms, all trivial: {all_trivial}", homs.len()),
            });
        }
    }
    for rg in pool {
        let seq = canonical_preexact_sequence(rg, probes)?;
        let detail = match (
            &seq.prekernel_check.counterexample,
            &seq.precokernel_check.counterexample,
        ) {
            (None, None) => format!(
                "E -> S -> S/~ with {} + {} factorizations",
                seq.prekernel_check.pairs_checked, seq.precokernel_check.pairs_checked
            ),
            (a, b) => a
                .as_deref()
                .or(b.as_deref())
                .unwrap_or_default()
                .to_string(),
        };
        checks.push(AxiomCheck {
            axiom: 2,
            subject: describe(rg),
            passed: seq.holds(),
            detail,
        });
    }
    Ok(PretorsionReport {
        pool_size: pool.len(),
        probe_count: probes.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2z2() -> RightGroup {
        RightGroup::from_parts(2, &FiniteSemigroup::cyclic(2)).unwrap()
    }

    fn probes() -> Vec<FiniteSemigroup> {
        vec![
            FiniteSemigroup::trivial(),
            FiniteSemigroup::right_zero(2),
            FiniteSemigroup::cyclic(2),
            FiniteSemigroup::cyclic(3),
            r2z2().semigroup().clone(),
        ]
    }

    #[test]
    fn triviality() {
        let s = r2z2();
        let c = Morphism::constant(s.semigroup(), s.semigroup(), 2).unwrap();
        assert_eq!(
            is_trivial_morphism(&c),
            Some(TrivialityCertificate { value: Some(2) })
        );
        assert!(is_trivial_morphism(&Morphism::identity(s.semigroup())).is_none());
        let r3 = FiniteSemigroup::right_zero(3);
        let z4 = FiniteSemigroup::cyclic(4);
        let homs = HomSearch::new(&r3, &z4).run().unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(is_trivial_morphism(&homs[0]).unwrap().value, Some(0));
        let empty = Morphism::new(FiniteSemigroup::empty(), z4.clone(), vec![]).unwrap();
        assert!(is_trivial_morphism(&empty).is_some());
    }

    #[test]
    fn trivial_morphism_counts() {
        let s = r2z2();
        assert_eq!(
            trivial_morphisms(s.semigroup(), &FiniteSemigroup::cyclic(3)).len(),
            1
        );
        assert_eq!(trivial_morphisms(s.semigroup(), s.semigroup()).len(), 2);
        assert_eq!(
            trivial_morphisms(s.semigroup(), &FiniteSemigroup::right_zero(5)).len(),
            5
        );
    }

    #[test]
    fn prekernels() {
        let s = r2z2();
        let pi = precokernel_canonical(&s);
        let pk = prekernel(&pi).unwrap();
        assert_eq!(pk.inclusion.map(), &[0, 2]);
        let r2 = FiniteSemigroup::right_zero(2);
        assert_eq!(
            prekernel(&Morphism::identity(&r2)).err(),
            Some(Error::NoPrekernel { e1: 0, e2: 1 })
        );
        assert!(no_prekernel_certificate(&Morphism::identity(&r2)).is_some());
        let c = Morphism::constant(s.semigroup(), s.semigroup(), 0).unwrap();
        assert_eq!(prekernel(&c).unwrap().kernel.order(), 4);
    }

    #[test]
    fn prekernel_verification() {
        let s = r2z2();
        let seq = canonical_preexact_sequence(&s, &probes()).unwrap();
        assert!(seq.holds());
        // a proper subset of E misses the constant probe at the other idempotent
        let one = FiniteSemigroup::trivial();
        let only_first = Morphism::new(one.clone(), s.semigroup().clone(), vec![0]).unwrap();
        assert!(
            !verify_prekernel(&seq.projection, &only_first, &probes())
                .unwrap()
                .holds
        );
        // identity is a prekernel of a trivial morphism
        let c = Morphism::constant(s.semigroup(), s.semigroup(), 0).unwrap();
        let id = Morphism::identity(s.semigroup());
        assert!(verify_prekernel(&c, &id, &probes()).unwrap().holds);
    }

    #[test]
    fn precokernel_verification() {
        let s = r2z2();
        let seq = canonical_preexact_sequence(&s, &probes()).unwrap();
        let z2 = seq.projection.cod().clone();
        let constant = Morphism::constant(s.semigroup(), &z2, 0).unwrap();
        assert!(
            !verify_precokernel(&seq.inclusion, &constant, &probes())
                .unwrap()
                .holds
        );
        let z3 = RightGroup::new(&FiniteSemigroup::cyclic(3)).unwrap();
        let seq = canonical_preexact_sequence(&z3, &probes()).unwrap();
        assert!(seq.holds());
        assert_eq!(seq.inclusion.dom().order(), 1);
        let rz = RightGroup::new(&FiniteSemigroup::right_zero(3)).unwrap();
        let seq = canonical_preexact_sequence(&rz, &probes()).unwrap();
        assert!(seq.holds());
        assert_eq!(seq.projection.cod().order(), 1);
    }

    #[test]
    fn axioms_on_small_pool() {
        let pool = vec![
            RightGroup::new(&FiniteSemigroup::trivial()).unwrap(),
            RightGroup::new(&FiniteSemigroup::right_zero(2)).unwrap(),
            RightGroup::new(&FiniteSemigroup::cyclic(2)).unwrap(),
            RightGroup::new(&FiniteSemigroup::right_zero(3)).unwrap(),
            RightGroup::new(&FiniteSemigroup::cyclic(4)).unwrap(),
            r2z2(),
        ];
        let report = verify_pretorsion_axioms(&pool, &probes()).unwrap();
        assert!(report.passed(), "{report:#?}");
        // 3 right zero members (including the trivial one) x 3 groups
        assert_eq!(report.checks.iter().filter(|c| c.axiom == 1).count(), 9);
    }
}
