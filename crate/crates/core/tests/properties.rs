use std::sync::OnceLock;

use proptest::prelude::*;

use rightgroups::actions::{enumerate_actions, functor_f, GroupAction};
use rightgroups::congruence::Congruence;
use rightgroups::enumeration::{canonical_form, enumerate_groups, right_groups_up_to, TableSearch};
use rightgroups::morphisms::{
    enumerate_hom_structured, morphism_of_triplet, triplet_of_morphism, Morphism,
};
use rightgroups::pretorsion::{is_trivial_morphism, trivial_morphisms};
use rightgroups::{check_right_group, CayleyTable, FiniteSemigroup, RightGroup};

fn pool() -> &'static [RightGroup] {
    static POOL: OnceLock<Vec<RightGroup>> = OnceLock::new();
    POOL.get_or_init(|| right_groups_up_to(8).unwrap())
}

fn small_pool() -> &'static [RightGroup] {
    static POOL: OnceLock<Vec<RightGroup>> = OnceLock::new();
    POOL.get_or_init(|| right_groups_up_to(4).unwrap())
}

/// A pool member relabeled by a random permutation.
fn relabeled_right_group() -> impl Strategy<Value = (RightGroup, RightGroup)> {
    (0..pool().len()).prop_flat_map(|i| {
        let rg = pool()[i].clone();
        let n = rg.order();
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(move |perm| {
                let t = rg.semigroup().table().relabel(&perm);
                let relabeled = RightGroup::new(&FiniteSemigroup::validate(t).unwrap()).unwrap();
                (rg.clone(), relabeled)
            })
    })
}

fn random_table() -> impl Strategy<Value = FiniteSemigroup> {
    (2usize..=6, any::<u64>()).prop_map(|(n, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let t = loop {
            if let Some(t) = TableSearch::new(n).random_table(&mut rng, 200) {
                break t;
            }
        };
        FiniteSemigroup::validate(CayleyTable::new(n, t).unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_preserves_structure((rg, relabeled) in relabeled_right_group()) {
        let report = check_right_group(relabeled.semigroup()).unwrap();
        prop_assert!(report.all_agree() && report.is_right_group());
        prop_assert_eq!(rg.idempotents().len(), relabeled.idempotents().len());
        prop_assert_eq!(canonical_form(rg.semigroup()), canonical_form(relabeled.semigroup()));
        let (g, _) = rg.quotient_group();
        let (h, _) = relabeled.quotient_group();
        prop_assert_eq!(g.label(), h.label());
    }

    #[test]
    fn decomposition_is_an_isomorphism((_, rg) in relabeled_right_group()) {
        let d = rg.decompose();
        let map = d.phi.iter().map(|&(g, e)| d.codec.encode(g, e)).collect();
        let phi = Morphism::new(rg.semigroup().clone(), d.product.clone(), map).unwrap();
        prop_assert!(phi.is_bijective());
        for s in rg.semigroup().elements() {
            prop_assert_eq!(d.phi_inv[phi.apply(s)], s);
        }
        prop_assert!(d.sim.meet(&d.equiv).unwrap().is_identity());
        prop_assert!(d.sim.are_permutable(&d.equiv).unwrap());
        prop_assert!(d.sim.join(&d.equiv).unwrap().is_universal());
    }

    #[test]
    fn projections_and_inverses((_, rg) in relabeled_right_group()) {
        let e0 = rg.e0();
        for s in rg.semigroup().elements() {
            let f = rg.pi_e(s);
            prop_assert!(rg.semigroup().is_idempotent(f));
            prop_assert_eq!(rg.mul(s, f), s);
            prop_assert_eq!(rg.mul(rg.pi_g(s), e0), rg.pi_g(s));
            for &e in rg.idempotents() {
                let x = rg.right_inverse(s, e).unwrap();
                prop_assert_eq!(rg.mul(s, x), e);
            }
        }
        for &e in rg.idempotents() {
            prop_assert!(rg.semigroup().is_left_identity(e));
        }
    }

    #[test]
    fn morphisms_round_trip_through_triplets(i in 0..small_pool().len(), j in 0..small_pool().len(), k in any::<prop::sample::Index>()) {
        let (a, b) = (&small_pool()[i], &small_pool()[j]);
        let homs = enumerate_hom_structured(a, b);
        let phi = &homs[k.index(homs.len())];
        for &e0 in a.idempotents() {
            let t = triplet_of_morphism(phi, e0).unwrap();
            prop_assert_eq!(&morphism_of_triplet(&t), phi);
        }
        // composition stays in the Hom-set
        let back = enumerate_hom_structured(b, a);
        let psi = &back[k.index(back.len())];
        let comp = psi.after(phi).unwrap();
        prop_assert!(Morphism::new(comp.dom().clone(), comp.cod().clone(), comp.map().to_vec()).is_ok());
    }

    #[test]
    fn trivial_morphisms_are_constant_on_idempotents(i in 0..small_pool().len(), j in 0..small_pool().len()) {
        let (a, b) = (&small_pool()[i], &small_pool()[j]);
        let trivial = trivial_morphisms(a.semigroup(), b.semigroup());
        prop_assert_eq!(trivial.len(), b.idempotents().len());
        for t in &trivial {
            let cert = is_trivial_morphism(t).unwrap();
            let value = cert.value.unwrap();
            prop_assert!(b.semigroup().is_idempotent(value));
            prop_assert!(t.map().iter().all(|&v| v == value));
        }
    }

    #[test]
    fn table_text_round_trip(s in random_table()) {
        prop_assert!(s.table().first_non_associative_triple().is_none());
        let back = FiniteSemigroup::parse(&s.to_text()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn conditions_agree_on_random_tables(s in random_table()) {
        let report = check_right_group(&s).unwrap();
        prop_assert!(report.all_agree());
        prop_assert_eq!(report.is_right_group(), RightGroup::new(&s).is_ok());
    }

    #[test]
    fn congruence_and_morphism_lines_round_trip((_, rg) in relabeled_right_group()) {
        for c in [rg.sim(), rg.equiv()] {
            let back = Congruence::parse_line(rg.semigroup(), &c.to_line()).unwrap();
            prop_assert_eq!(back.partition(), c.partition());
        }
        let (g, proj) = rg.quotient_group();
        let line = proj.to_line();
        let back = Morphism::parse_line(&line, rg.semigroup(), g.semigroup()).unwrap();
        prop_assert_eq!(back, proj);
    }

    #[test]
    fn action_text_round_trip(m in 1usize..=4, k in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let groups = enumerate_groups(m).unwrap();
        let g = &groups[pick.index(groups.len())];
        let actions = enumerate_actions(g, k).unwrap();
        let act = &actions[pick.index(actions.len())];
        let back = GroupAction::parse(&act.to_text()).unwrap();
        prop_assert_eq!(back.set_size(), act.set_size());
        for x in 0..g.order() {
            prop_assert_eq!(back.perm(x), act.perm(x));
        }
        let f = functor_f(act);
        prop_assert_eq!(f.order(), m * k);
        prop_assert_eq!(f.idempotents().len(), k);
    }
}
