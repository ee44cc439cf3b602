//! Quotient-level views of a morphism between right groups: the induced
//! group morphism, its kernel pair, fibers, and the sections of `S -> S/∼`.

use super::Morphism;
use crate::congruence::Partition;
use crate::error::{Error, Result};
use crate::rightgroup::RightGroup;
use crate::semigroup::ElementId;

fn structures(psi: &Morphism) -> Result<(RightGroup, RightGroup)> {
    Ok((RightGroup::new(psi.dom())?, RightGroup::new(psi.cod())?))
}

/// `ψ̃ : S/∼ -> S'/∼`, `[s] ↦ [ψ(s)]`, between the tables of
/// [`RightGroup::quotient_group`].
pub fn induced_group_morphism(psi: &Morphism) -> Result<Morphism> {
    let (dom, cod) = structures(psi)?;
    Ok(induced_in(psi, &dom, &cod))
}

pub(crate) fn induced_in(psi: &Morphism, dom: &RightGroup, cod: &RightGroup) -> Morphism {
    let (g, proj) = dom.quotient_group();
    let (g2, proj2) = cod.quotient_group();
    let mut map = vec![usize::MAX; g.order()];
    for s in dom.semigroup().elements() {
        let (c, c2) = (proj.apply(s), proj2.apply(psi.apply(s)));
        assert!(
            map[c] == usize::MAX || map[c] == c2,
            "psi does not respect ~"
        );
        map[c] = c2;
    }
    Morphism::new(g.semigroup().clone(), g2.semigroup().clone(), map)
        .expect("induced map is a group morphism")
}

/// The sections of `π: S -> S/∼`: one per idempotent `e`, `[x] ↦ xe`.
pub fn right_inverses_of_projection(rg: &RightGroup) -> Vec<Morphism> {
    let (g, proj) = rg.quotient_group();
    let reps = rg.sim().partition().representatives();
    rg.idempotents()
        .iter()
        .map(|&e| {
            let map = (0..g.order()).map(|c| rg.mul(reps[c], e)).collect();
            let section = Morphism::new(g.semigroup().clone(), rg.semigroup().clone(), map)
                .expect("r_e induces a morphism on S/~");
            assert_eq!(
                proj.after(&section).expect("composable"),
                Morphism::identity(g.semigroup()),
                "section of the projection"
            );
            section
        })
        .collect()
}

/// `(fibers of ψ on E, kernel of ψ̃)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPair {
    /// Partition of the indices of `E`.
    pub e_kernel: Partition,
    /// Normal subgroup of `S/∼`, as sorted class ids.
    pub k: Vec<ElementId>,
}

pub fn kernel_pair(psi: &Morphism) -> Result<KernelPair> {
    let (dom, cod) = structures(psi)?;
    let images: Vec<ElementId> = dom.idempotents().iter().map(|&e| psi.apply(e)).collect();
    let e_kernel = Partition::from_labels(&images);
    let induced = induced_in(psi, &dom, &cod);
    let (g, _) = dom.quotient_group();
    let (g2, _) = cod.quotient_group();
    let k: Vec<ElementId> = g
        .elements()
        .filter(|&c| induced.apply(c) == g2.identity())
        .collect();
    let inside = |x: ElementId| k.binary_search(&x).is_ok();
    assert!(inside(g.identity()));
    for &a in &k {
        assert!(inside(g.inverse(a)));
        for &b in &k {
            assert!(inside(g.mul(a, b)));
        }
        for x in g.elements() {
            assert!(inside(g.mul(g.mul(x, a), g.inverse(x))), "K is not normal");
        }
    }
    Ok(KernelPair { e_kernel, k })
}

/// `ψ⁻¹(s')`, sorted, built as `{ae : [a] ∈ c₁K, e ∈ E, ψ(e) = π_E'(s')}`
/// where `ψ̃(c₁) = [s']`.
pub fn preimage(psi: &Morphism, target: ElementId) -> Result<Vec<ElementId>> {
    if target >= psi.cod().order() {
        return Err(Error::InvalidMap(format!(
            "{target} is not in the codomain"
        )));
    }
    let (dom, cod) = structures(psi)?;
    let induced = induced_in(psi, &dom, &cod);
    let (g, _) = dom.quotient_group();
    let (_, proj2) = cod.quotient_group();
    let reps = dom.sim().partition().representatives();
    let class2 = proj2.apply(target);
    let idem2 = cod.pi_e(target);

    let es: Vec<ElementId> = dom
        .idempotents()
        .iter()
        .copied()
        .filter(|&e| psi.apply(e) == idem2)
        .collect();
    let mut out = Vec::new();
    if let Some(c1) = g.elements().find(|&c| induced.apply(c) == class2) {
        if !es.is_empty() {
            let kp = kernel_pair(psi)?;
            for &k in &kp.k {
                let a = reps[g.mul(c1, k)];
                out.extend(es.iter().map(|&e| dom.mul(a, e)));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    let fiber: Vec<ElementId> = dom
        .semigroup()
        .elements()
        .filter(|&s| psi.apply(s) == target)
        .collect();
    assert_eq!(out, fiber, "structured preimage disagrees with the fiber");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::{enumerate_hom_bruteforce, HomSearch};
    use crate::semigroup::FiniteSemigroup;

    fn r2z2() -> RightGroup {
        RightGroup::from_parts(2, &FiniteSemigroup::cyclic(2)).unwrap()
    }

    #[test]
    fn induced_examples() {
        let s = r2z2();
        let id = Morphism::identity(s.semigroup());
        assert_eq!(induced_group_morphism(&id).unwrap().map(), &[0, 1]);
        let c = Morphism::constant(s.semigroup(), s.semigroup(), 2).unwrap();
        assert_eq!(induced_group_morphism(&c).unwrap().map(), &[0, 0]);
        let swap = Morphism::new(
            s.semigroup().clone(),
            s.semigroup().clone(),
            vec![2, 3, 0, 1],
        )
        .unwrap();
        assert_eq!(induced_group_morphism(&swap).unwrap().map(), &[0, 1]);
    }

    #[test]
    fn sections_match_brute_force() {
        let samples = [
            RightGroup::new(&FiniteSemigroup::cyclic(3)).unwrap(),
            RightGroup::new(&FiniteSemigroup::right_zero(3)).unwrap(),
            r2z2(),
            RightGroup::from_parts(3, &FiniteSemigroup::cyclic(2)).unwrap(),
        ];
        for rg in &samples {
            let sections = right_inverses_of_projection(rg);
            assert_eq!(sections.len(), rg.idempotents().len());
            let (g, proj) = rg.quotient_group();
            let id = Morphism::identity(g.semigroup());
            let brute: Vec<Morphism> = enumerate_hom_bruteforce(g.semigroup(), rg.semigroup())
                .unwrap()
                .into_iter()
                .filter(|m| proj.after(m).unwrap() == id)
                .collect();
            let mut got = sections.clone();
            got.sort_by(|a, b| a.map().cmp(b.map()));
            assert_eq!(got, brute);
        }
    }

    #[test]
    fn kernel_pairs() {
        let s = r2z2();
        let id = kernel_pair(&Morphism::identity(s.semigroup())).unwrap();
        assert_eq!(id.e_kernel.num_blocks(), 2);
        assert_eq!(id.k, vec![0]);
        let c = kernel_pair(&Morphism::constant(s.semigroup(), s.semigroup(), 0).unwrap()).unwrap();
        assert_eq!(c.e_kernel.num_blocks(), 1);
        assert_eq!(c.k, vec![0, 1]);
        let swap = Morphism::new(
            s.semigroup().clone(),
            s.semigroup().clone(),
            vec![2, 3, 0, 1],
        )
        .unwrap();
        let k = kernel_pair(&swap).unwrap();
        assert_eq!((k.e_kernel.num_blocks(), k.k.clone()), (2, vec![0]));
    }

    #[test]
    fn preimages_are_fibers() {
        let s = r2z2();
        let z2 = FiniteSemigroup::cyclic(2);
        // (rz, g) ↦ g
        let proj = Morphism::new(s.semigroup().clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(preimage(&proj, 0).unwrap(), vec![0, 2]);
        assert_eq!(preimage(&proj, 1).unwrap(), vec![1, 3]);
        let id = Morphism::identity(s.semigroup());
        for x in 0..4 {
            assert_eq!(preimage(&id, x).unwrap(), vec![x]);
        }
        let c = Morphism::constant(s.semigroup(), s.semigroup(), 2).unwrap();
        assert_eq!(preimage(&c, 2).unwrap(), vec![0, 1, 2, 3]);
        assert!(preimage(&c, 1).unwrap().is_empty());
        // every endomorphism, every target: asserted against the fiber inside
        HomSearch::new(s.semigroup(), s.semigroup())
            .run()
            .unwrap()
            .iter()
            .for_each(|m| (0..4).for_each(|x| drop(preimage(m, x).unwrap())));
    }
}
