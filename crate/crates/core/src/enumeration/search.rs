//! Backtracking search for associative Cayley tables.
//!
//! Cells are filled shell by shell (all cells with `max(row, col) = k`
//! before those with `k + 1`), which lets the least-number heuristic prune
//! relabelings: a cell may only take a label already mentioned or the
//! smallest unmentioned one. Each assignment checks exactly the
//! associativity triples it completes.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::Rng;

const UNSET: usize = usize::MAX;

/// Reorders candidate values in place.
type ValueOrder<'a> = &'a mut dyn FnMut(&mut Vec<usize>);

/// Search configuration.
#[derive(Clone, Copy, Debug, Default)]
pub struct TableSearch {
    pub n: usize,
    /// Rows and columns are permutations.
    pub latin: bool,
    /// Element 0 is a two-sided identity.
    pub identity_zero: bool,
    /// Least-number symmetry breaking.
    pub lnh: bool,
}

struct State<'a> {
    cfg: TableSearch,
    t: Vec<usize>,
    cells: Vec<(usize, usize)>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    /// `mentioned[i]`: largest label mentioned once cells `0..i` are set.
    mentioned: Vec<usize>,
    order: Option<ValueOrder<'a>>,
    nodes: u64,
    node_limit: u64,
}

impl TableSearch {
    pub fn new(n: usize) -> Self {
        TableSearch {
            n,
            ..Default::default()
        }
    }

    pub fn groups(n: usize) -> Self {
        TableSearch {
            n,
            latin: true,
            identity_zero: true,
            lnh: true,
        }
    }

    fn cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::with_capacity(self.n * self.n);
        for k in 0..self.n {
            for j in 0..k {
                cells.push((k, j));
                cells.push((j, k));
            }
            cells.push((k, k));
        }
        cells
    }

    fn state<'a>(&self) -> State<'a> {
        assert!(self.n <= 64, "tables above order 64 are not supported");
        State {
            cfg: *self,
            t: vec![UNSET; self.n * self.n],
            cells: self.cells(),
            row_used: vec![0; self.n],
            col_used: vec![0; self.n],
            mentioned: vec![0; self.n * self.n + 1],
            order: None,
            nodes: 0,
            node_limit: u64::MAX,
        }
    }

    /// Calls `visit` on each complete table (row-major entries) until it
    /// breaks.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) {
        if self.n == 0 {
            let _ = visit(&[]);
            return;
        }
        let mut st = self.state();
        let _ = st.dfs(0, &mut visit);
    }

    pub fn count(&self) -> usize {
        let mut c = 0;
        self.for_each(|_| {
            c += 1;
            ControlFlow::Continue(())
        });
        c
    }

    /// The first table found when candidate values are tried in random
    /// order, or `None` if `node_limit` nodes pass without one.
    pub fn random_table<R: Rng>(&self, rng: &mut R, node_limit: u64) -> Option<Vec<usize>> {
        let mut st = self.state();
        st.node_limit = node_limit;
        let mut shuffle = |vals: &mut Vec<usize>| vals.shuffle(rng);
        st.order = Some(&mut shuffle);
        let mut found = None;
        let _ = st.dfs(0, &mut |t: &[usize]| {
            found = Some(t.to_vec());
            ControlFlow::Break(())
        });
        found
    }
}

impl State<'_> {
    #[inline]
    fn get(&self, a: usize, b: usize) -> usize {
        self.t[a * self.cfg.n + b]
    }

    /// Triples completed by setting `(a, b) = v` are all associative.
    fn consistent(&self, a: usize, b: usize, v: usize) -> bool {
        let n = self.cfg.n;
        for z in 0..n {
            // (a b) z = a (b z)
            let (l, q) = (self.get(v, z), self.get(b, z));
            if l != UNSET && q != UNSET {
                let r = self.get(a, q);
                if r != UNSET && r != l {
                    return false;
                }
            }
            // (x a) b = x (a b), with x = z
            let p = self.get(z, a);
            if p != UNSET {
                let (l, r) = (self.get(p, b), self.get(z, v));
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                // (x y) b = x (y b) where x y = a
                if self.get(x, y) == a {
                    let q = self.get(y, b);
                    if q != UNSET {
                        let r = self.get(x, q);
                        if r != UNSET && r != v {
                            return false;
                        }
                    }
                }
                // (a x) y = a (x y) where x y = b
                if self.get(x, y) == b {
                    let p = self.get(a, x);
                    if p != UNSET {
                        let l = self.get(p, y);
                        if l != UNSET && l != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn candidates(&self, idx: usize) -> Vec<usize> {
        let n = self.cfg.n;
        let (a, b) = self.cells[idx];
        if self.cfg.identity_zero && (a == 0 || b == 0) {
            return vec![if a == 0 { b } else { a }];
        }
        let hi = if self.cfg.lnh {
            let shell = a.max(b);
            (self.mentioned[idx].max(shell) + 1).min(n - 1)
        } else {
            n - 1
        };
        (0..=hi)
            .filter(|&v| {
                !self.cfg.latin
                    || (self.row_used[a] >> v & 1 == 0 && self.col_used[b] >> v & 1 == 0)
            })
            .collect()
    }

    fn dfs(
        &mut self,
        idx: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return ControlFlow::Break(());
        }
        if idx == self.cells.len() {
            return visit(&self.t);
        }
        let (a, b) = self.cells[idx];
        let mut vals = self.candidates(idx);
        if let Some(order) = self.order.as_mut() {
            order(&mut vals);
        }
        let n = self.cfg.n;
        for v in vals {
            if !self.consistent_with_self(a, b, v) {
                continue;
            }
            self.t[a * n + b] = v;
            if self.consistent(a, b, v) {
                self.row_used[a] |= 1 << v;
                self.col_used[b] |= 1 << v;
                self.mentioned[idx + 1] = self.mentioned[idx].max(a).max(b).max(v);
                let flow = self.dfs(idx + 1, visit);
                self.row_used[a] &= !(1 << v);
                self.col_used[b] &= !(1 << v);
                if flow.is_break() {
                    self.t[a * n + b] = UNSET;
                    return flow;
                }
            }
            self.t[a * n + b] = UNSET;
        }
        ControlFlow::Continue(())
    }

    /// With an identity at 0, `a b = b` forces `a = 0` and `a b = a` forces
    /// `b = 0`.
    fn consistent_with_self(&self, a: usize, b: usize, v: usize) -> bool {
        if !self.cfg.identity_zero || a == 0 || b == 0 {
            return true;
        }
        v != a && v != b
    }
}
