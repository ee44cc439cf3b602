//! Small semigroups, groups and right groups up to isomorphism, the
//! right-group census, and random associative tables.

pub mod canonical;
pub mod search;

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::sync::{Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use canonical::{are_isomorphic_semigroups, canonical_form, semigroup_isomorphism};
pub use search::TableSearch;

use crate::error::{Error, Result};
use crate::group::{group_isomorphism, FiniteGroup};
use crate::rightgroup::{PointedRightGroup, RightGroup};
use crate::semigroup::{CayleyTable, FiniteSemigroup};

/// Largest order for semigroup enumeration up to isomorphism.
pub const SEMIGROUP_CAP: usize = 4;
/// Largest order for group enumeration.
pub const GROUP_CAP: usize = 12;
/// Largest order for structured right-group enumeration; bounded by the
/// group cap since `n` itself divides `n`.
pub const RIGHT_GROUP_CAP: usize = GROUP_CAP;
/// Largest order for raw right-group enumeration.
pub const RAW_RIGHT_GROUP_CAP: usize = SEMIGROUP_CAP;

fn cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::OrderTooLarge { n, cap })
    } else {
        Ok(())
    }
}

/// Every associative table of order `n` (labeled, no symmetry reduction).
pub fn for_each_associative_table(n: usize, mut visit: impl FnMut(FiniteSemigroup)) -> Result<()> {
    cap(n, SEMIGROUP_CAP)?;
    TableSearch::new(n).for_each(|t| {
        let table = CayleyTable::new(n, t.to_vec()).expect("in range");
        visit(FiniteSemigroup::from_table_unchecked(table));
        ControlFlow::Continue(())
    });
    Ok(())
}

pub fn count_associative_tables(n: usize) -> Result<usize> {
    cap(n, SEMIGROUP_CAP)?;
    Ok(TableSearch::new(n).count())
}

/// Semigroups of order `n` up to isomorphism, as canonical tables in
/// increasing order.
pub fn enumerate_semigroups(n: usize) -> Result<Vec<FiniteSemigroup>> {
    cap(n, SEMIGROUP_CAP)?;
    let mut forms = BTreeSet::new();
    TableSearch {
        n,
        lnh: true,
        ..TableSearch::default()
    }
    .for_each(|t| {
        let s = FiniteSemigroup::from_table_unchecked(
            CayleyTable::new(n, t.to_vec()).expect("in range"),
        );
        forms.insert(canonical_form(&s).entries().to_vec());
        ControlFlow::Continue(())
    });
    Ok(forms
        .into_iter()
        .map(|e| FiniteSemigroup::from_table_unchecked(CayleyTable::new(n, e).expect("in range")))
        .collect())
}

fn group_cache() -> &'static Mutex<HashMap<usize, Vec<FiniteGroup>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<FiniteGroup>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Groups of order `m` up to isomorphism: abelian first, then by label.
pub fn enumerate_groups(m: usize) -> Result<Vec<FiniteGroup>> {
    cap(m, GROUP_CAP)?;
    if m == 0 {
        return Ok(Vec::new());
    }
    if let Some(found) = group_cache().lock().expect("cache").get(&m) {
        return Ok(found.clone());
    }
    let mut reps: Vec<FiniteGroup> = Vec::new();
    TableSearch::groups(m).for_each(|t| {
        let s = FiniteSemigroup::from_table_unchecked(
            CayleyTable::new(m, t.to_vec()).expect("in range"),
        );
        let g = FiniteGroup::from_semigroup(&s).expect("latin table with identity");
        if !reps.iter().any(|r| group_isomorphism(r, &g).is_some()) {
            reps.push(g);
        }
        ControlFlow::Continue(())
    });
    reps.sort_by_cached_key(|g| {
        (
            !g.is_abelian(),
            g.label(),
            g.semigroup().table().entries().to_vec(),
        )
    });
    group_cache().lock().expect("cache").insert(m, reps.clone());
    Ok(reps)
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|&m| n.is_multiple_of(m)).collect()
}

/// `E × G` for every divisor `m` of `n` and every group `G` of order `m`,
/// with `|E| = n / m`; ordered by `|E|` descending.
pub fn enumerate_right_groups(n: usize) -> Result<Vec<RightGroup>> {
    cap(n, RIGHT_GROUP_CAP)?;
    let mut out = Vec::new();
    for m in divisors(n) {
        for g in enumerate_groups(m)? {
            out.push(RightGroup::from_parts(n / m, g.semigroup())?);
        }
    }
    Ok(out)
}

/// All structured right groups of order `1..=n`.
pub fn right_groups_up_to(n: usize) -> Result<Vec<RightGroup>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_right_groups(k)?);
    }
    Ok(out)
}

/// Every choice of point on every right group of order `1..=n`.
pub fn pointed_right_groups_up_to(n: usize) -> Result<Vec<PointedRightGroup>> {
    Ok(right_groups_up_to(n)?
        .iter()
        .flat_map(PointedRightGroup::all_pointings)
        .collect())
}

/// Right groups among all semigroups of order `n`, found by the condition
/// checks rather than by construction.
pub fn enumerate_right_groups_raw(n: usize) -> Result<Vec<RightGroup>> {
    cap(n, RAW_RIGHT_GROUP_CAP)?;
    Ok(enumerate_semigroups(n)?
        .into_iter()
        .filter(|s| {
            crate::rightgroup::check_right_group(s)
                .map(|r| r.is_right_group())
                .unwrap_or(false)
        })
        .map(|s| RightGroup::new(&s).expect("passed the checks"))
        .collect())
}

/// Equal numbers of idempotents and isomorphic quotient groups.
pub fn are_isomorphic_right_groups(s: &RightGroup, t: &RightGroup) -> bool {
    if s.order() != t.order() || s.idempotents().len() != t.idempotents().len() {
        return false;
    }
    let (g, _) = s.quotient_group();
    let (h, _) = t.quotient_group();
    group_isomorphism(&g, &h).is_some()
}

/// Bijection search on the full tables.
pub fn are_isomorphic_right_groups_raw(s: &RightGroup, t: &RightGroup) -> bool {
    are_isomorphic_semigroups(s.semigroup(), t.semigroup())
}

/// One isomorphism class in a census row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    pub idempotents: usize,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub order: usize,
    /// From the raw Cayley search, when the order allows it.
    pub count_raw: Option<usize>,
    pub count_structured: usize,
    pub classes: Vec<CensusClass>,
}

/// Right groups of each order `1..=n_max` up to isomorphism.
pub fn census(n_max: usize) -> Result<Vec<CensusRow>> {
    cap(n_max, RIGHT_GROUP_CAP)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let structured = enumerate_right_groups(n)?;
        let divisor_sum: usize = divisors(n)
            .into_iter()
            .map(|m| enumerate_groups(m).map(|g| g.len()))
            .sum::<Result<usize>>()?;
        assert_eq!(structured.len(), divisor_sum);
        let classes = structured
            .iter()
            .map(|rg| CensusClass {
                idempotents: rg.idempotents().len(),
                group: rg.quotient_group().0.label(),
            })
            .collect();
        let count_raw = if n <= RAW_RIGHT_GROUP_CAP {
            Some(enumerate_right_groups_raw(n)?.len())
        } else {
            None
        };
        if let Some(raw) = count_raw {
            assert_eq!(
                raw,
                structured.len(),
                "raw and structured census disagree at {n}"
            );
        }
        rows.push(CensusRow {
            order: n,
            count_raw,
            count_structured: structured.len(),
            classes,
        });
    }
    Ok(rows)
}

/// Nodes a single randomized search may visit before restarting.
const RANDOM_NODE_LIMIT: u64 = 200;

/// `count` associative tables, each the first leaf of a backtracking search
/// with shuffled value order; the order cycles through `orders`.
pub fn random_associative_tables(
    orders: &[usize],
    count: usize,
    seed: u64,
) -> Vec<FiniteSemigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let n = orders[i % orders.len()];
        let search = TableSearch::new(n);
        let t = loop {
            if let Some(t) = search.random_table(&mut rng, RANDOM_NODE_LIMIT) {
                break t;
            }
        };
        out.push(
            FiniteSemigroup::validate(CayleyTable::new(n, t).expect("in range"))
                .expect("associative"),
        );
    }
    out
}

/// Test objects for universal properties: all semigroups up to
/// isomorphism of order `1..=semigroup_order`, then all right groups of
/// order `1..=right_group_order` not already listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbePool {
    pub semigroup_order: usize,
    pub right_group_order: usize,
}

impl Default for ProbePool {
    fn default() -> Self {
        ProbePool {
            semigroup_order: 3,
            right_group_order: 4,
        }
    }
}

impl ProbePool {
    pub fn semigroups(&self) -> Result<Vec<FiniteSemigroup>> {
        let mut out = Vec::new();
        for n in 1..=self.semigroup_order {
            out.extend(enumerate_semigroups(n)?);
        }
        for rg in right_groups_up_to(self.right_group_order)? {
            if !out
                .iter()
                .any(|s| are_isomorphic_semigroups(s, rg.semigroup()))
            {
                out.push(rg.semigroup().clone());
            }
        }
        Ok(out)
    }

    pub fn right_groups(&self) -> Result<Vec<RightGroup>> {
        right_groups_up_to(self.right_group_order)
    }
}
