//! Canonical forms and isomorphism search on raw Cayley tables.

use crate::semigroup::{CayleyTable, ElementId, FiniteSemigroup};

/// Per-element invariants preserved by every isomorphism.
fn element_signature(s: &FiniteSemigroup, a: ElementId) -> (bool, usize, usize, usize) {
    // index and period of the cyclic subsemigroup, idempotency, row image size
    let mut seen = vec![usize::MAX; s.order()];
    let mut x = a;
    let mut k = 0;
    while seen[x] == usize::MAX {
        seen[x] = k;
        x = s.mul(x, a);
        k += 1;
    }
    let index = seen[x];
    let period = k - index;
    let mut row: Vec<ElementId> = s.table().row(a).to_vec();
    row.sort_unstable();
    row.dedup();
    (s.is_idempotent(a), index, period, row.len())
}

/// Lexicographically smallest relabeled table over all permutations that
/// respect element signatures.
pub fn canonical_form(s: &FiniteSemigroup) -> CayleyTable {
    let n = s.order();
    if n == 0 {
        return s.table().clone();
    }
    let sig: Vec<_> = s.elements().map(|a| element_signature(s, a)).collect();
    let mut best: Option<Vec<ElementId>> = None;
    // perm[old] = new; the new label order follows the sorted signatures
    let mut sorted_sigs = sig.clone();
    sorted_sigs.sort_unstable();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        s: &FiniteSemigroup,
        sig: &[(bool, usize, usize, usize)],
        sorted_sigs: &[(bool, usize, usize, usize)],
        new: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut Option<Vec<ElementId>>,
    ) {
        let n = s.order();
        if new == n {
            let mut entries = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    entries[perm[a] * n + perm[b]] = perm[s.mul(a, b)];
                }
            }
            if best.as_ref().is_none_or(|b| entries < *b) {
                *best = Some(entries);
            }
            return;
        }
        for old in 0..n {
            if used[old] || sig[old] != sorted_sigs[new] {
                continue;
            }
            used[old] = true;
            perm[old] = new;
            rec(s, sig, sorted_sigs, new + 1, perm, used, best);
            used[old] = false;
            perm[old] = usize::MAX;
        }
    }
    rec(s, &sig, &sorted_sigs, 0, &mut perm, &mut used, &mut best);
    CayleyTable::new(n, best.expect("at least one labeling")).expect("relabeled table")
}

/// A bijection `f` with `f(ab) = f(a)f(b)`, as `f[a]`.
pub fn semigroup_isomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Option<Vec<ElementId>> {
    let n = s.order();
    if n != t.order() {
        return None;
    }
    let sig_s: Vec<_> = s.elements().map(|a| element_signature(s, a)).collect();
    let sig_t: Vec<_> = t.elements().map(|a| element_signature(t, a)).collect();
    let (mut a, mut b) = (sig_s.clone(), sig_t.clone());
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        s: &FiniteSemigroup,
        t: &FiniteSemigroup,
        sig_s: &[(bool, usize, usize, usize)],
        sig_t: &[(bool, usize, usize, usize)],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = s.order();
        if k == n {
            return true;
        }
        for y in 0..n {
            if used[y] || sig_s[k] != sig_t[y] {
                continue;
            }
            map[k] = y;
            let ok = (0..=k).all(|i| {
                [(i, k), (k, i)].iter().all(|&(p, q)| {
                    let r = s.mul(p, q);
                    r > k || map[r] == t.mul(map[p], map[q])
                })
            }) && (0..=k).all(|i| {
                // products landing on k whose factors are already mapped
                (0..=k).all(|j| s.mul(i, j) != k || map[k] == t.mul(map[i], map[j]))
            });
            if ok {
                used[y] = true;
                if rec(s, t, sig_s, sig_t, k + 1, map, used) {
                    return true;
                }
                used[y] = false;
            }
            map[k] = usize::MAX;
        }
        false
    }
    if rec(s, t, &sig_s, &sig_t, 0, &mut map, &mut used) {
        debug_assert!(s.elements().all(|x| s
            .elements()
            .all(|y| map[s.mul(x, y)] == t.mul(map[x], map[y]))));
        Some(map)
    } else {
        None
    }
}

pub fn are_isomorphic_semigroups(s: &FiniteSemigroup, t: &FiniteSemigroup) -> bool {
    semigroup_isomorphism(s, t).is_some()
}
