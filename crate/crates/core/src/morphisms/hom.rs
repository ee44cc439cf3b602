//! Brute-force Hom enumeration: every total map in mixed-radix
//! (lexicographic) order, with partial assignments pruned as soon as a
//! product among already-assigned elements is violated.

use super::Morphism;
use crate::error::{Error, Result};
use crate::semigroup::{ElementId, FiniteSemigroup};

/// Largest number of candidate maps `|T|^|S|` a search may span.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Configurable Hom search between two semigroups.
#[derive(Clone, Debug)]
pub struct HomSearch<'a> {
    dom: &'a FiniteSemigroup,
    cod: &'a FiniteSemigroup,
    budget: u128,
    fixed: Vec<Option<ElementId>>,
}

impl<'a> HomSearch<'a> {
    pub fn new(dom: &'a FiniteSemigroup, cod: &'a FiniteSemigroup) -> Self {
        HomSearch {
            dom,
            cod,
            budget: DEFAULT_BUDGET,
            fixed: vec![None; dom.order()],
        }
    }

    pub fn budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// Only maps sending `a` to `value`.
    pub fn fix(mut self, a: ElementId, value: ElementId) -> Self {
        self.fixed[a] = Some(value);
        self
    }

    pub fn candidates(&self) -> u128 {
        let base = self.cod.order() as u128;
        let mut total: u128 = 1;
        for _ in 0..self.dom.order() {
            total = total.saturating_mul(base);
        }
        total
    }

    /// Calls `visit` with each morphism's map, in lexicographic order.
    pub fn for_each(&self, mut visit: impl FnMut(&[ElementId])) -> Result<()> {
        let candidates = self.candidates();
        if candidates > self.budget {
            return Err(Error::BudgetExceeded {
                candidates,
                budget: self.budget,
            });
        }
        let (s, t) = (self.dom, self.cod);
        let n = s.order();
        if n == 0 {
            visit(&[]);
            return Ok(());
        }
        if t.order() == 0 {
            return Ok(());
        }
        // checks[k]: pairs whose constraint becomes decidable once k is assigned
        let mut checks: Vec<Vec<(ElementId, ElementId)>> = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                let k = a.max(b).max(s.mul(a, b));
                checks[k].push((a, b));
            }
        }
        let mut map = vec![0usize; n];
        let mut k = 0usize;
        let mut next_value = vec![0usize; n];
        // iterative DFS; next_value[k] is the next image to try for element k
        loop {
            let mut advanced = false;
            while next_value[k] < t.order() {
                let v = next_value[k];
                next_value[k] += 1;
                if self.fixed[k].is_some_and(|f| f != v) {
                    continue;
                }
                map[k] = v;
                if checks[k]
                    .iter()
                    .all(|&(a, b)| map[s.mul(a, b)] == t.mul(map[a], map[b]))
                {
                    advanced = true;
                    break;
                }
            }
            if advanced {
                if k + 1 == n {
                    visit(&map);
                } else {
                    k += 1;
                    next_value[k] = 0;
                }
            } else {
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
            }
        }
    }

    pub fn run(&self) -> Result<Vec<Morphism>> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(Morphism::new_unchecked(
                self.dom.clone(),
                self.cod.clone(),
                m.to_vec(),
            ))
        })?;
        Ok(out)
    }

    pub fn count(&self) -> Result<usize> {
        let mut c = 0;
        self.for_each(|_| c += 1)?;
        Ok(c)
    }
}

/// All morphisms `dom -> cod` in lexicographic order of their maps.
pub fn enumerate_hom_bruteforce(
    dom: &FiniteSemigroup,
    cod: &FiniteSemigroup,
) -> Result<Vec<Morphism>> {
    HomSearch::new(dom, cod).run()
}

pub fn enumerate_hom_bruteforce_with(
    dom: &FiniteSemigroup,
    cod: &FiniteSemigroup,
    budget: u128,
) -> Result<Vec<Morphism>> {
    HomSearch::new(dom, cod).budget(budget).run()
}
