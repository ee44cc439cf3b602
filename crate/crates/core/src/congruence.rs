//! Congruences as multiplication-compatible partitions, their lattice
//! operations, composite relations and the direct and semidirect product
//! criteria.
//!
//! A congruence is stored as a [`Partition`] in first-occurrence normal
//! form, so two congruences are equal exactly when their partitions are.
//! Compatibility is checked through one-sided translations: a partition is a
//! congruence iff `a ~ b` implies `xa ~ xb` and `ax ~ bx` for every `x`.

use crate::error::{Error, Result};
use crate::morphisms::Morphism;
use crate::semigroup::{parse_ids, CayleyTable, ElementId, FiniteSemigroup};

/// Enumerating every congruence is limited to this carrier size.
pub const CONGRUENCE_ENUMERATION_CAP: usize = 6;

/// A set partition of `0..n`. Block ids are contiguous and numbered in order
/// of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
    num_blocks: usize,
}

impl Partition {
    /// Normalizes arbitrary labels: elements with equal labels share a block.
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let block_of: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        Partition {
            num_blocks: seen.len(),
            block_of,
        }
    }

    /// Block ids must cover `0..k` for some `k`.
    pub fn new(block_of: Vec<usize>) -> Result<Self> {
        let k = block_of.iter().map(|&b| b + 1).max().unwrap_or(0);
        let mut used = vec![false; k];
        block_of.iter().for_each(|&b| used[b] = true);
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::InvalidPartition(format!("block {missing} is empty")));
        }
        Ok(Self::from_labels(&block_of))
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            block_of: (0..n).collect(),
            num_blocks: n,
        }
    }

    pub fn single(n: usize) -> Self {
        Partition {
            block_of: vec![0; n],
            num_blocks: usize::from(n > 0),
        }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    #[inline]
    pub fn block_of(&self, x: ElementId) -> usize {
        self.block_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn same_block(&self, a: ElementId, b: ElementId) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Members of each block, blocks in id order, members increasing.
    pub fn blocks(&self) -> Vec<Vec<ElementId>> {
        let mut blocks = vec![Vec::new(); self.num_blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    /// Smallest member of each block.
    pub fn representatives(&self) -> Vec<ElementId> {
        let mut reps = vec![usize::MAX; self.num_blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = x;
            }
        }
        reps
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let reps = self.representatives();
        self.block_of
            .iter()
            .enumerate()
            .all(|(x, &b)| coarser.same_block(x, reps[b]))
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let pairs: Vec<(usize, usize)> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::from_labels(&pairs)
    }

    pub fn to_line(&self) -> String {
        let ids: Vec<String> = self.block_of.iter().map(|b| b.to_string()).collect();
        ids.join(" ")
    }
}

/// A binary relation on `0..n` as a boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn contains(&self, a: ElementId, b: ElementId) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_universal(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn pairs(&self) -> Vec<(ElementId, ElementId)> {
        (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.contains(a, b))
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A partition of a semigroup's carrier compatible with multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    semigroup: FiniteSemigroup,
    partition: Partition,
}

impl Congruence {
    pub fn new(semigroup: &FiniteSemigroup, partition: Partition) -> Result<Self> {
        if partition.len() != semigroup.order() {
            return Err(Error::MismatchedCarrier);
        }
        if let Some((a, b, c, d)) = compatibility_failure(semigroup, &partition) {
            return Err(Error::NotACongruence { a, b, c, d });
        }
        Ok(Congruence {
            semigroup: semigroup.clone(),
            partition,
        })
    }

    pub(crate) fn new_unchecked(semigroup: &FiniteSemigroup, partition: Partition) -> Self {
        debug_assert!(compatibility_failure(semigroup, &partition).is_none());
        Congruence {
            semigroup: semigroup.clone(),
            partition,
        }
    }

    /// The equality relation `=`.
    pub fn identity(s: &FiniteSemigroup) -> Self {
        Self::new_unchecked(s, Partition::discrete(s.order()))
    }

    /// The universal relation ω.
    pub fn universal(s: &FiniteSemigroup) -> Self {
        Self::new_unchecked(s, Partition::single(s.order()))
    }

    /// `a ~ b` iff `f(a) = f(b)`.
    pub fn kernel_of(f: &Morphism) -> Self {
        Self::new_unchecked(f.dom(), f.kernel())
    }

    /// Smallest congruence containing the given pairs.
    pub fn generated_by(s: &FiniteSemigroup, pairs: &[(ElementId, ElementId)]) -> Self {
        let n = s.order();
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        // close under translations until nothing merges
        loop {
            let mut changed = false;
            for a in 0..n {
                let r = uf.find(a);
                if r == a {
                    continue;
                }
                for x in 0..n {
                    changed |= uf.union(s.mul(x, a), s.mul(x, r));
                    changed |= uf.union(s.mul(a, x), s.mul(r, x));
                }
            }
            if !changed {
                break;
            }
        }
        let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        Self::new_unchecked(s, Partition::from_labels(&labels))
    }

    pub fn parse_line(s: &FiniteSemigroup, text: &str) -> Result<Self> {
        let (line, content) = crate::semigroup::content_lines(text)
            .next()
            .ok_or(Error::Parse {
                line: 0,
                msg: "empty congruence".into(),
            })?;
        let ids = parse_ids(line, content)?;
        Self::new(s, Partition::new(ids)?)
    }

    pub fn to_line(&self) -> String {
        self.partition.to_line()
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn related(&self, a: ElementId, b: ElementId) -> bool {
        self.partition.same_block(a, b)
    }

    pub fn num_classes(&self) -> usize {
        self.partition.num_blocks()
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.semigroup.order()
    }

    pub fn is_universal(&self) -> bool {
        self.num_classes() <= 1
    }

    pub fn relation(&self) -> Relation {
        let n = self.semigroup.order();
        let bits = (0..n * n)
            .map(|i| self.partition.same_block(i / n, i % n))
            .collect();
        Relation { n, bits }
    }

    fn check_same(&self, other: &Congruence) -> Result<()> {
        if self.semigroup.same_as(&other.semigroup) {
            Ok(())
        } else {
            Err(Error::MismatchedCarrier)
        }
    }

    /// `{(a, b) : a self c and c other b for some c}`.
    pub fn compose(&self, other: &Congruence) -> Result<Relation> {
        self.check_same(other)?;
        let n = self.semigroup.order();
        // a and b are related iff the self-class of a meets the other-class of b
        let (k1, k2) = (self.num_classes(), other.num_classes());
        let mut meets = vec![false; k1 * k2];
        for c in 0..n {
            meets[self.partition.block_of(c) * k2 + other.partition.block_of(c)] = true;
        }
        let bits = (0..n * n)
            .map(|i| meets[self.partition.block_of(i / n) * k2 + other.partition.block_of(i % n)])
            .collect();
        Ok(Relation { n, bits })
    }

    pub fn are_permutable(&self, other: &Congruence) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    pub fn meet(&self, other: &Congruence) -> Result<Congruence> {
        self.check_same(other)?;
        Congruence::new(&self.semigroup, self.partition.meet(&other.partition))
    }

    pub fn join(&self, other: &Congruence) -> Result<Congruence> {
        self.check_same(other)?;
        let (r1, r2) = (
            self.partition.representatives(),
            other.partition.representatives(),
        );
        let pairs: Vec<(ElementId, ElementId)> = self
            .semigroup
            .elements()
            .flat_map(|x| {
                [
                    (x, r1[self.partition.block_of(x)]),
                    (x, r2[other.partition.block_of(x)]),
                ]
            })
            .collect();
        let joined = Congruence::generated_by(&self.semigroup, &pairs);
        debug_assert!(compatibility_failure(&self.semigroup, &joined.partition).is_none());
        Ok(joined)
    }

    pub fn refines(&self, other: &Congruence) -> bool {
        self.partition.refines(&other.partition)
    }

    /// `S/c` on the block ids, and the projection `a -> [a]`.
    pub fn quotient(&self) -> (FiniteSemigroup, Morphism) {
        let reps = self.partition.representatives();
        let k = reps.len();
        let p = &self.partition;
        let table =
            CayleyTable::from_fn(k, |x, y| p.block_of(self.semigroup.mul(reps[x], reps[y])))
                .expect("block ids are in range");
        // well-definedness of [a][b] = [ab] over all representatives
        for a in self.semigroup.elements() {
            for b in self.semigroup.elements() {
                assert_eq!(
                    p.block_of(self.semigroup.mul(a, b)),
                    table.get(p.block_of(a), p.block_of(b)),
                    "quotient by a non-congruence"
                );
            }
        }
        let q = FiniteSemigroup::from_table_unchecked(table);
        let proj = Morphism::new_unchecked(self.semigroup.clone(), q.clone(), p.labels().to_vec());
        (q, proj)
    }

    /// `a -> ([a]_self, [a]_other)` into `S/self x S/other`.
    pub fn product_map(&self, other: &Congruence) -> Result<Morphism> {
        self.check_same(other)?;
        let (q1, _) = self.quotient();
        let (q2, _) = other.quotient();
        let (prod, codec) = q1.direct_product(&q2);
        let map = self
            .semigroup
            .elements()
            .map(|a| codec.encode(self.partition.block_of(a), other.partition.block_of(a)))
            .collect();
        Ok(Morphism::new_unchecked(self.semigroup.clone(), prod, map))
    }
}

/// `(a, b, c, d)` with `a ~ b` but `c !~ d`, where `(c, d)` is a one-sided
/// translate of `(a, b)`.
fn compatibility_failure(
    s: &FiniteSemigroup,
    p: &Partition,
) -> Option<(ElementId, ElementId, ElementId, ElementId)> {
    let reps = p.representatives();
    for a in s.elements() {
        let r = reps[p.block_of(a)];
        if r == a {
            continue;
        }
        for x in s.elements() {
            let (c, d) = (s.mul(x, r), s.mul(x, a));
            if !p.same_block(c, d) {
                return Some((r, a, c, d));
            }
            let (c, d) = (s.mul(r, x), s.mul(a, x));
            if !p.same_block(c, d) {
                return Some((r, a, c, d));
            }
        }
    }
    None
}

/// Definition of an internal direct product of two quotients: the
/// congruences permute, their composite is ω and their meet is `=`.
pub fn is_direct_product_pair(c1: &Congruence, c2: &Congruence) -> Result<bool> {
    let c12 = c1.compose(c2)?;
    let c21 = c2.compose(c1)?;
    let holds = c12 == c21 && c12.is_universal() && c1.meet(c2)?.is_identity();
    if holds {
        assert!(
            c1.product_map(c2)?.is_bijective(),
            "complementary permutable congruences must give a bijective product map"
        );
    }
    Ok(holds)
}

/// n-fold version: pairwise permutable, meet of all is `=`, and each
/// `cs[i] ∨ (∧_{j≠i} cs[j])` is ω.
pub fn is_direct_product_n(s: &FiniteSemigroup, cs: &[Congruence]) -> Result<bool> {
    for c in cs {
        if !c.semigroup.same_as(s) {
            return Err(Error::MismatchedCarrier);
        }
    }
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            if !a.are_permutable(b)? {
                return Ok(false);
            }
        }
    }
    let meet_of = |skip: Option<usize>| -> Result<Congruence> {
        let mut acc = Congruence::universal(s);
        for (j, c) in cs.iter().enumerate() {
            if Some(j) != skip {
                acc = acc.meet(c)?;
            }
        }
        Ok(acc)
    };
    if !meet_of(None)?.is_identity() {
        return Ok(false);
    }
    for (i, c) in cs.iter().enumerate() {
        if !c.join(&meet_of(Some(i))?)?.is_universal() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `S = c ⋊ B`: `B` is a subsemigroup and `B -> S -> S/c` is bijective.
pub fn is_semidirect_product(c: &Congruence, subset: &[ElementId]) -> Result<bool> {
    let sub = c.semigroup.restrict(subset)?;
    let mut hit = vec![false; c.num_classes()];
    for &b in &sub.embed {
        let k = c.partition.block_of(b);
        if hit[k] {
            return Ok(false);
        }
        hit[k] = true;
    }
    Ok(hit.iter().all(|&h| h))
}

/// Every congruence of `s`, in lexicographic order of their normalized
/// partitions. Restricted-growth strings are extended one element at a time
/// and a prefix is abandoned as soon as a fully assigned translate breaks
/// compatibility.
pub fn enumerate_congruences(s: &FiniteSemigroup) -> Result<Vec<Congruence>> {
    let n = s.order();
    if n > CONGRUENCE_ENUMERATION_CAP {
        return Err(Error::OrderTooLarge {
            n,
            cap: CONGRUENCE_ENUMERATION_CAP,
        });
    }
    let mut out = Vec::new();
    let mut labels = vec![usize::MAX; n];
    fn consistent(s: &FiniteSemigroup, labels: &[usize], k: usize) -> bool {
        // check pairs (a, b) with a, b <= k whose translates are both labelled
        for a in 0..=k {
            for b in 0..a {
                if labels[a] != labels[b] {
                    continue;
                }
                for x in 0..s.order() {
                    for (c, d) in [(s.mul(x, a), s.mul(x, b)), (s.mul(a, x), s.mul(b, x))] {
                        if c <= k && d <= k && labels[c] != labels[d] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
    fn rec(
        s: &FiniteSemigroup,
        labels: &mut Vec<usize>,
        k: usize,
        used: usize,
        out: &mut Vec<Congruence>,
    ) {
        let n = s.order();
        if k == n {
            out.push(Congruence::new(s, Partition::from_labels(labels)).expect("complete check"));
            return;
        }
        for b in 0..=used {
            labels[k] = b;
            if consistent(s, labels, k) {
                rec(s, labels, k + 1, used.max(b + 1), out);
            }
        }
        labels[k] = usize::MAX;
    }
    if n == 0 {
        return Ok(vec![Congruence::identity(s)]);
    }
    rec(s, &mut labels, 0, 0, &mut out);
    Ok(out)
}
