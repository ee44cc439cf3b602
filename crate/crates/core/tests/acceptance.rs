//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p rightgroups --test acceptance`.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rightgroups::actions::{
    enumerate_actions, essential_surjectivity_witness, eta_iso, functor_f, non_fullness_witness,
};
use rightgroups::congruence::is_direct_product_pair;
use rightgroups::enumeration::{
    are_isomorphic_semigroups, census, enumerate_groups, enumerate_semigroups,
    for_each_associative_table, random_associative_tables, right_groups_up_to, ProbePool,
    TableSearch,
};
use rightgroups::group::{group_homomorphisms, group_isomorphism, FiniteGroup};
use rightgroups::morphisms::{
    enumerate_hom_bruteforce, enumerate_hom_structured, right_inverses_of_projection, Morphism,
};
use rightgroups::pretorsion::{
    canonical_preexact_sequence, is_trivial_morphism, no_prekernel_certificate, prekernel,
    verify_prekernel, verify_pretorsion_axioms,
};
use rightgroups::rightgroup::{
    check_coproduct_pointed, check_product, check_product_quotients, coproduct_counterexample,
};
use rightgroups::{check_right_group, CayleyTable, FiniteSemigroup, PointedRightGroup, RightGroup};

const RANDOM_TABLES: usize = 100_000;

/// Right simple and left cancellative, straight from the definition.
fn is_right_group_by_definition(s: &FiniteSemigroup) -> bool {
    let n = s.order();
    let right_simple = s.elements().all(|a| {
        let mut hit = vec![false; n];
        for x in s.elements() {
            hit[s.mul(a, x)] = true;
        }
        hit.iter().all(|&h| h)
    });
    let left_cancellative = s.elements().all(|a| {
        let mut seen = vec![false; n];
        s.elements()
            .all(|x| !std::mem::replace(&mut seen[s.mul(a, x)], true))
    });
    right_simple && left_cancellative
}

fn assert_conditions_and_decomposition(s: &FiniteSemigroup) -> bool {
    let report = check_right_group(s).unwrap();
    let holds: Vec<bool> = report.conditions().iter().map(|(_, c)| c.holds).collect();
    assert!(
        holds.iter().all(|&h| h == holds[0]),
        "conditions disagree on\n{}",
        s.to_text()
    );
    assert_eq!(
        holds[0],
        is_right_group_by_definition(s),
        "definition disagrees on\n{}",
        s.to_text()
    );
    match RightGroup::new(s) {
        Ok(rg) => {
            assert!(holds[0]);
            let d = rg.decompose();
            let map = d.phi.iter().map(|&(g, e)| d.codec.encode(g, e)).collect();
            let phi = Morphism::new(s.clone(), d.product.clone(), map).expect("phi is a morphism");
            assert!(phi.is_bijective());
            true
        }
        Err(_) => {
            assert!(!holds[0], "decompose failed on a right group");
            false
        }
    }
}

fn criterion_1() -> String {
    let mut exhaustive = 0;
    let mut right_groups = 0;
    for n in 1..=4 {
        for_each_associative_table(n, |s| {
            exhaustive += 1;
            right_groups += assert_conditions_and_decomposition(&s) as usize;
        })
        .unwrap();
    }
    assert_eq!(exhaustive, 1 + 8 + 113 + 3492);
    let random = random_associative_tables(&[5, 6], RANDOM_TABLES, 0);
    let mut random_right_groups = 0;
    for s in &random {
        random_right_groups += assert_conditions_and_decomposition(s) as usize;
    }
    format!(
        "{exhaustive} labeled tables of order <= 4 ({right_groups} right groups), \
         {} random tables of order 5-6 ({random_right_groups} right groups)",
        random.len()
    )
}

fn criterion_2() -> String {
    let pool = right_groups_up_to(12).unwrap();
    for rg in &pool {
        let d = rg.decompose();
        let map = d.phi.iter().map(|&(g, e)| d.codec.encode(g, e)).collect();
        let phi = Morphism::new(rg.semigroup().clone(), d.product.clone(), map).unwrap();
        assert!(phi.is_bijective());
        assert!(is_direct_product_pair(&d.sim, &d.equiv).unwrap());
        for &e in rg.idempotents() {
            let at_e = rg.sim_at(e).unwrap();
            assert_eq!(at_e.partition(), d.sim.partition());
            // x ~ y iff xe = ye
            for x in rg.semigroup().elements() {
                for y in rg.semigroup().elements() {
                    assert_eq!(at_e.related(x, y), rg.mul(x, e) == rg.mul(y, e));
                }
            }
        }
    }
    format!("{} right groups of order <= 12", pool.len())
}

fn sorted_maps(ms: &[Morphism]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = ms.iter().map(|m| m.map().to_vec()).collect();
    v.sort();
    v
}

fn criterion_3() -> String {
    let pool = right_groups_up_to(6).unwrap();
    let mut pairs = 0;
    let mut total = 0;
    for a in &pool {
        for b in &pool {
            let structured = enumerate_hom_structured(a, b);
            let brute = enumerate_hom_bruteforce(a.semigroup(), b.semigroup()).unwrap();
            assert_eq!(sorted_maps(&structured), sorted_maps(&brute));
            let (g, _) = a.quotient_group();
            let (h, _) = b.quotient_group();
            let expected = b.idempotents().len().pow(a.idempotents().len() as u32)
                * group_homomorphisms(&g, &h).len();
            assert_eq!(structured.len(), expected);
            pairs += 1;
            total += brute.len();
        }
    }
    format!("{pairs} ordered pairs, {total} morphisms")
}

fn criterion_4() -> String {
    let pool = right_groups_up_to(6).unwrap();
    for rg in &pool {
        let (g, proj) = rg.quotient_group();
        let id = Morphism::identity(g.semigroup());
        let brute: Vec<Morphism> = enumerate_hom_bruteforce(g.semigroup(), rg.semigroup())
            .unwrap()
            .into_iter()
            .filter(|sigma| proj.after(sigma).unwrap() == id)
            .collect();
        assert_eq!(brute.len(), rg.idempotents().len());
        assert_eq!(
            sorted_maps(&brute),
            sorted_maps(&right_inverses_of_projection(rg))
        );
    }
    format!("{} right groups of order <= 6", pool.len())
}

fn criterion_5() -> String {
    let pool = right_groups_up_to(5).unwrap();
    let probes = ProbePool {
        semigroup_order: 0,
        right_group_order: 4,
    }
    .semigroups()
    .unwrap();
    let mut with = 0;
    let mut without = 0;
    let mut candidates_refuted = 0;
    for a in &pool {
        for b in &pool {
            for f in enumerate_hom_bruteforce(a.semigroup(), b.semigroup()).unwrap() {
                let images: BTreeSet<usize> = a.idempotents().iter().map(|&e| f.apply(e)).collect();
                match prekernel(&f) {
                    Ok(pk) => {
                        assert_eq!(images.len(), 1);
                        let check = verify_prekernel(&f, &pk.inclusion, &probes).unwrap();
                        assert!(check.holds, "{:?}", check.counterexample);
                        with += 1;
                    }
                    Err(_) => {
                        assert!(images.len() > 1);
                        assert!(no_prekernel_certificate(&f).is_some());
                        // no morphism from a right group of order <= 4 is a prekernel
                        if a.order() <= 4 {
                            for x in &pool {
                                if x.order() > 4 {
                                    continue;
                                }
                                for eps in
                                    enumerate_hom_bruteforce(x.semigroup(), a.semigroup()).unwrap()
                                {
                                    if is_trivial_morphism(&f.after(&eps).unwrap()).is_some() {
                                        assert!(
                                            !verify_prekernel(&f, &eps, &probes).unwrap().holds
                                        );
                                        candidates_refuted += 1;
                                    }
                                }
                            }
                        }
                        without += 1;
                    }
                }
            }
        }
    }
    format!(
        "{with} morphisms with a prekernel, {without} without ({candidates_refuted} candidates refuted), \
         {} probes",
        probes.len()
    )
}

fn criterion_6() -> String {
    let pool = right_groups_up_to(5).unwrap();
    let probes = ProbePool {
        semigroup_order: 0,
        right_group_order: 4,
    }
    .semigroups()
    .unwrap();
    let report = verify_pretorsion_axioms(&pool, &probes).unwrap();
    assert!(
        report.passed(),
        "{:?}",
        report.checks.iter().find(|c| !c.passed)
    );
    let zeros: Vec<&RightGroup> = pool
        .iter()
        .filter(|rg| rg.idempotents().len() == rg.order())
        .collect();
    let groups: Vec<&RightGroup> = pool
        .iter()
        .filter(|rg| rg.idempotents().len() == 1)
        .collect();
    for z in &zeros {
        for g in &groups {
            let homs = enumerate_hom_bruteforce(z.semigroup(), g.semigroup()).unwrap();
            assert_eq!(homs.len(), 1);
            assert!(is_trivial_morphism(&homs[0]).is_some());
        }
    }
    for rg in &pool {
        assert!(canonical_preexact_sequence(rg, &probes).unwrap().holds());
    }
    format!(
        "{} checks over {} right groups, {} probes",
        report.checks.len(),
        pool.len(),
        probes.len()
    )
}

/// Groups of order `m` up to isomorphism, from every labeled group table.
fn group_count_unpruned(m: usize) -> usize {
    let search = TableSearch {
        n: m,
        latin: true,
        identity_zero: true,
        lnh: false,
    };
    let mut reps: Vec<FiniteGroup> = Vec::new();
    search.for_each(|t| {
        let s = FiniteSemigroup::validate(CayleyTable::new(m, t.to_vec()).unwrap()).unwrap();
        let g = FiniteGroup::from_semigroup(&s).unwrap();
        if !reps.iter().any(|r| group_isomorphism(r, &g).is_some()) {
            reps.push(g);
        }
        ControlFlow::Continue(())
    });
    reps.len()
}

fn criterion_7() -> String {
    let groups: Vec<usize> = (1..=8).map(group_count_unpruned).collect();
    assert_eq!(groups, vec![1, 1, 1, 2, 1, 2, 1, 5]);
    let pruned: Vec<usize> = (1..=8)
        .map(|m| enumerate_groups(m).unwrap().len())
        .collect();
    assert_eq!(pruned, groups);
    let rows = census(8).unwrap();
    let counts: Vec<usize> = rows.iter().map(|r| r.count_structured).collect();
    assert_eq!(counts, vec![1, 2, 2, 4, 2, 5, 2, 9]);
    for row in &rows[..4] {
        // right groups among all semigroups up to isomorphism
        let raw = enumerate_semigroups(row.order)
            .unwrap()
            .iter()
            .filter(|s| is_right_group_by_definition(s))
            .count();
        assert_eq!(row.count_raw, Some(raw));
        assert_eq!(raw, row.count_structured);
    }
    format!("right groups {counts:?}, groups {groups:?}")
}

fn criterion_8() -> String {
    let mut actions = 0;
    for m in 1..=4 {
        for g in enumerate_groups(m).unwrap() {
            for k in 1..=3 {
                for act in enumerate_actions(&g, k).unwrap() {
                    let f = functor_f(&act);
                    assert!(check_right_group(f.semigroup()).unwrap().is_right_group());
                    let eta = eta_iso(&act);
                    assert!(eta.is_bijective());
                    assert!(eta.cod().same_as(f.semigroup()));
                    actions += 1;
                }
            }
        }
    }
    let pool = right_groups_up_to(8).unwrap();
    for rg in &pool {
        let (act, iso) = essential_surjectivity_witness(rg);
        let f = functor_f(&act);
        assert!(iso.is_bijective());
        assert!(iso.dom().same_as(f.semigroup()) && iso.cod().same_as(rg.semigroup()));
        assert!(are_isomorphic_semigroups(f.semigroup(), rg.semigroup()));
    }
    let nf = non_fullness_witness();
    assert!(nf.images_isomorphic && nf.action_isos_found == 0);
    assert!(nf.witnesses_non_fullness());
    format!(
        "{actions} actions, {} right groups of order <= 8, swap witness ok",
        pool.len()
    )
}

fn criterion_9() -> String {
    let pool = right_groups_up_to(4).unwrap();
    let probes = ProbePool {
        semigroup_order: 3,
        right_group_order: 3,
    }
    .semigroups()
    .unwrap();
    let pointed_probes: Vec<PointedRightGroup> = right_groups_up_to(3)
        .unwrap()
        .iter()
        .flat_map(PointedRightGroup::all_pointings)
        .collect();
    let mut clashes = 0;
    for rg in &pool {
        let p = check_product(rg, &probes).unwrap();
        assert!(p.holds, "{:?}", p.counterexample);
        let q = check_product_quotients(rg, &probes).unwrap();
        assert!(q.holds, "{:?}", q.counterexample);
        for prg in PointedRightGroup::all_pointings(rg) {
            let c = check_coproduct_pointed(&prg, &pointed_probes).unwrap();
            assert!(c.holds, "{:?}", c.counterexample);
        }
        let clash = coproduct_counterexample(rg).unwrap();
        assert_eq!(clash.extensions, 0);
        assert_eq!(clash.witness_order, 2);
        clashes += 1;
    }
    format!(
        "{} right groups, {} plain and {} pointed probes, {clashes} coproduct clashes",
        pool.len(),
        probes.len(),
        pointed_probes.len()
    )
}

type Criterion = (&'static str, Duration, fn() -> String);

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1 condition equivalence",
            Duration::from_secs(60),
            criterion_1,
        ),
        (
            "2 decomposition soundness",
            Duration::from_secs(30),
            criterion_2,
        ),
        ("3 hom-set oracle", Duration::from_secs(300), criterion_3),
        (
            "4 right inverse count",
            Duration::from_secs(60),
            criterion_4,
        ),
        (
            "5 prekernel characterization",
            Duration::from_secs(300),
            criterion_5,
        ),
        ("6 pretorsion axioms", Duration::from_secs(300), criterion_6),
        ("7 census", Duration::from_secs(120), criterion_7),
        ("8 actions", Duration::from_secs(60), criterion_8),
        (
            "9 universal properties",
            Duration::from_secs(120),
            criterion_9,
        ),
    ];
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failures = 0;
    for (name, limit, run) in criteria {
        if filter.as_deref().is_some_and(|f| !name.contains(f)) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        match result {
            Ok(summary) if elapsed <= limit => {
                println!(
                    "PASS criterion {name} [{:.2}s]: {summary}",
                    elapsed.as_secs_f64()
                );
            }
            Ok(summary) => {
                failures += 1;
                println!(
                    "FAIL criterion {name} [{:.2}s, limit {}s]: {summary}",
                    elapsed.as_secs_f64(),
                    limit.as_secs()
                );
            }
            Err(_) => {
                failures += 1;
                println!(
                    "FAIL criterion {name} [{:.2}s]: assertion failed",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
