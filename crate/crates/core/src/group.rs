//! Finite groups on top of [`FiniteSemigroup`], with generator-pruned
//! homomorphism and isomorphism search.

use crate::error::{Error, Result};
use crate::morphisms::Morphism;
use crate::semigroup::{CayleyTable, ElementId, FiniteSemigroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    semigroup: FiniteSemigroup,
    identity: ElementId,
    inverse: Vec<ElementId>,
}

impl FiniteGroup {
    pub fn from_semigroup(s: &FiniteSemigroup) -> Result<Self> {
        let identity = s
            .elements()
            .find(|&e| s.elements().all(|x| s.mul(e, x) == x && s.mul(x, e) == x))
            .ok_or(Error::NotAGroup)?;
        let inverse = s
            .elements()
            .map(|a| {
                s.elements()
                    .find(|&b| s.mul(a, b) == identity && s.mul(b, a) == identity)
                    .ok_or(Error::NotAGroup)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            semigroup: s.clone(),
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_semigroup(&FiniteSemigroup::cyclic(n)).expect("Z_n is a group")
    }

    /// Symmetric group on `k` points. Element `i` is the `i`-th permutation in
    /// lexicographic order; the product `p*q` is "apply `q`, then `p`".
    pub fn symmetric(k: usize) -> (Self, Vec<Vec<usize>>) {
        let perms = permutations(k);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let table = CayleyTable::from_fn(perms.len(), |a, b| {
            index(&crate::actions::compose_perms(&perms[a], &perms[b]))
        })
        .expect("closed");
        let g = Self::from_semigroup(&FiniteSemigroup::from_table_unchecked(table))
            .expect("Sym is a group");
        (g, perms)
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn order(&self) -> usize {
        self.semigroup.order()
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.semigroup.mul(a, b)
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    pub fn inverse(&self, a: ElementId) -> ElementId {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        self.semigroup.elements()
    }

    pub fn element_order(&self, a: ElementId) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[ElementId]) -> Vec<ElementId> {
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// Greedy generating set: repeatedly add the element outside the current
    /// subgroup with the largest order (ties to the smallest id).
    pub fn generators(&self) -> Vec<ElementId> {
        let mut gens = Vec::new();
        let mut sub = self.generated(&gens);
        while sub.len() < self.order() {
            let next = self
                .elements()
                .filter(|x| sub.binary_search(x).is_err())
                .max_by_key(|&x| (self.element_order(x), std::cmp::Reverse(x)))
                .expect("proper subgroup");
            gens.push(next);
            sub = self.generated(&gens);
        }
        gens
    }

    /// `(order, count)` pairs, ascending by order.
    pub fn order_statistics(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for a in self.elements() {
            *counts.entry(self.element_order(a)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Conventional name of the isomorphism class, from order statistics.
    /// Unambiguous for orders below 16.
    pub fn label(&self) -> String {
        let n = self.order();
        let count = |k: usize| {
            self.order_statistics()
                .iter()
                .find(|&&(o, _)| o == k)
                .map_or(0, |&(_, c)| c)
        };
        if n == 1 {
            return "1".into();
        }
        if count(n) > 0 {
            return format!("Z{n}");
        }
        let abelian = self.is_abelian();
        let name = match (n, abelian) {
            (4, true) => "V4",
            (6, false) => "S3",
            (8, true) if count(4) > 0 => "Z4xZ2",
            (8, true) => "Z2^3",
            (8, false) if count(2) == 5 => "D4",
            (8, false) => "Q8",
            (9, true) => "Z3xZ3",
            (10, false) => "D5",
            (12, true) => "Z6xZ2",
            (12, false) if count(6) == 0 => "A4",
            (12, false) if count(2) == 7 => "D6",
            (12, false) => "Dic3",
            (14, false) => "D7",
            _ => "",
        };
        if name.is_empty() {
            format!("G{n}{:?}", self.order_statistics())
        } else {
            name.into()
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Extends an assignment of generator images along right multiplication by
/// generators. Returns `None` if two words for one element disagree.
fn extend_from_generators(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[ElementId],
    images: &[ElementId],
) -> Option<Vec<ElementId>> {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&gen, &img) in gens.iter().zip(images) {
            let y = g.mul(x, gen);
            let fy = h.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

fn search_generator_images(
    g: &FiniteGroup,
    h: &FiniteGroup,
    injective_only: bool,
    first_only: bool,
) -> Vec<Morphism> {
    let gens = g.generators();
    let h_orders: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    let candidates: Vec<Vec<ElementId>> = gens
        .iter()
        .map(|&x| {
            let ox = g.element_order(x);
            h.elements()
                .filter(|&y| {
                    if injective_only {
                        h_orders[y] == ox
                    } else {
                        ox.is_multiple_of(h_orders[y])
                    }
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let images: Vec<ElementId> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_from_generators(g, h, &gens, &images) {
            let ok = !injective_only || {
                let mut seen = vec![false; h.order()];
                map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
            };
            if ok {
                out.push(Morphism::new_unchecked(
                    g.semigroup().clone(),
                    h.semigroup().clone(),
                    map,
                ));
                if first_only {
                    return out;
                }
            }
        }
        // odometer over candidate images
        let mut k = gens.len();
        loop {
            if k == 0 {
                out.sort_by(|a, b| a.map().cmp(b.map()));
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// All group homomorphisms `g -> h`, sorted by their maps.
pub fn group_homomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Morphism> {
    search_generator_images(g, h, false, false)
}

pub fn group_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Morphism> {
    if g.order() != h.order() || g.order_statistics() != h.order_statistics() {
        return None;
    }
    search_generator_images(g, h, true, true).pop()
}

pub fn are_isomorphic_groups(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    group_isomorphism(g, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::enumerate_hom_bruteforce;

    fn klein() -> FiniteGroup {
        let z2 = FiniteSemigroup::cyclic(2);
        FiniteGroup::from_semigroup(&z2.direct_product(&z2).0).unwrap()
    }

    #[test]
    fn recognizes_groups() {
        assert!(FiniteGroup::from_semigroup(&FiniteSemigroup::right_zero(2)).is_err());
        let z5 = FiniteGroup::cyclic(5);
        assert_eq!(z5.identity(), 0);
        assert_eq!(z5.inverse(2), 3);
        assert_eq!(z5.element_order(3), 5);
    }

    #[test]
    fn symmetric_group() {
        let (s3, perms) = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(perms[s3.identity()], vec![0, 1, 2]);
        assert_eq!(s3.label(), "S3");
    }

    #[test]
    fn homomorphisms_match_brute_force() {
        let (s3, _) = FiniteGroup::symmetric(3);
        let groups = [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            klein(),
            FiniteGroup::cyclic(6),
            s3,
        ];
        for g in &groups {
            for h in &groups {
                let structured = group_homomorphisms(g, h);
                let brute = enumerate_hom_bruteforce(g.semigroup(), h.semigroup()).unwrap();
                // semigroup morphisms between groups are group morphisms
                assert_eq!(structured, brute, "{} -> {}", g.label(), h.label());
            }
        }
    }

    #[test]
    fn isomorphism_and_labels() {
        assert!(group_isomorphism(&FiniteGroup::cyclic(4), &klein()).is_none());
        let z2 = FiniteSemigroup::cyclic(2);
        let z3 = FiniteSemigroup::cyclic(3);
        let z6 = FiniteGroup::from_semigroup(&z2.direct_product(&z3).0).unwrap();
        let iso = group_isomorphism(&FiniteGroup::cyclic(6), &z6).unwrap();
        assert!(iso.is_bijective());
        assert_eq!(klein().label(), "V4");
        assert_eq!(z6.label(), "Z6");
        assert_eq!(FiniteGroup::trivial().label(), "1");
    }
}
