//! Finite semigroups stored as Cayley tables.
//!
//! Elements are the dense ids `0..n`. A [`CayleyTable`] is only a closed
//! binary operation; [`FiniteSemigroup`] additionally guarantees
//! associativity, checked exhaustively when it is built.
//!
//! Text format, used by the CLI and by `enumerate --emit`:
//!
//! ```text
//! # comment lines and blank lines are ignored
//! 2
//! 0 1
//! 1 0
//! ```
//!
//! The first content line is `n`; the next `n` lines hold row `i` of the
//! table, so column `j` of row `i` is `i*j`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of an element in the carrier of its semigroup.
pub type ElementId = usize;

/// An `n x n` table with every entry in `0..n`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    n: usize,
    entries: Vec<ElementId>,
}

impl CayleyTable {
    pub fn new(n: usize, entries: Vec<ElementId>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidMap(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|&v| v >= n) {
            return Err(Error::EntryOutOfRange {
                row: pos / n,
                col: pos % n,
                value: entries[pos],
                n,
            });
        }
        Ok(CayleyTable { n, entries })
    }

    pub fn from_rows(rows: &[Vec<ElementId>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse {
                    line: i + 2,
                    msg: format!("row {i} has {} entries, expected {n}", row.len()),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    pub fn from_fn(n: usize, f: impl Fn(ElementId, ElementId) -> ElementId) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::new(n, entries)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: ElementId, j: ElementId) -> ElementId {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[ElementId] {
        &self.entries
    }

    pub fn row(&self, i: ElementId) -> &[ElementId] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// First triple `(i, j, k)` in lexicographic order with `(ij)k != i(jk)`.
    pub fn first_non_associative_triple(&self) -> Option<(ElementId, ElementId, ElementId)> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let ij = self.get(i, j);
                for k in 0..n {
                    if self.get(ij, k) != self.get(i, self.get(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Table obtained by renaming each element `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[ElementId]) -> CayleyTable {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = perm[self.get(i, j)];
            }
        }
        CayleyTable { n, entries }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let table = read_table(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                msg: "unexpected content after table".into(),
            });
        }
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[ElementId]> = (0..self.n).map(|i| self.row(i)).collect();
        write!(f, "CayleyTable{rows:?}")
    }
}

/// Non-comment, non-blank lines paired with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_ids(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("`{tok}` is not a non-negative integer"),
            })
        })
        .collect()
}

pub(crate) fn read_single<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    what: &str,
) -> Result<usize> {
    let (line, s) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: format!("missing {what}"),
    })?;
    match parse_ids(line, s)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(Error::Parse {
            line,
            msg: format!("expected a single integer ({what})"),
        }),
    }
}

pub(crate) fn read_table<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<CayleyTable> {
    let n = read_single(lines, "table order")?;
    let mut entries = Vec::with_capacity(n * n);
    for row in 0..n {
        let (line, s) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: format!("missing table row {row}"),
        })?;
        let ids = parse_ids(line, s)?;
        if ids.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("row {row} has {} entries, expected {n}", ids.len()),
            });
        }
        for (col, &v) in ids.iter().enumerate() {
            if v >= n {
                return Err(Error::EntryOutOfRange {
                    row,
                    col,
                    value: v,
                    n,
                });
            }
        }
        entries.extend(ids);
    }
    CayleyTable::new(n, entries)
}

/// An associative Cayley table. Cloning is cheap; the table is shared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSemigroup {
    table: Arc<CayleyTable>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSemigroup({:?})", self.table)
    }
}

impl FiniteSemigroup {
    /// Checks associativity on every triple.
    pub fn validate(table: CayleyTable) -> Result<Self> {
        if let Some((i, j, k)) = table.first_non_associative_triple() {
            return Err(Error::NotAssociative { i, j, k });
        }
        Ok(FiniteSemigroup {
            table: Arc::new(table),
        })
    }

    /// For tables associative by construction (products, quotients,
    /// restrictions). Still checked in debug builds.
    pub(crate) fn from_table_unchecked(table: CayleyTable) -> Self {
        debug_assert!(table.first_non_associative_triple().is_none());
        FiniteSemigroup {
            table: Arc::new(table),
        }
    }

    pub fn from_rows(rows: &[Vec<ElementId>]) -> Result<Self> {
        Self::validate(CayleyTable::from_rows(rows)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::validate(CayleyTable::parse(text)?)
    }

    pub fn to_text(&self) -> String {
        self.table.to_text()
    }

    pub fn empty() -> Self {
        Self::from_table_unchecked(CayleyTable {
            n: 0,
            entries: vec![],
        })
    }

    pub fn trivial() -> Self {
        Self::right_zero(1)
    }

    /// `a*b = b`.
    pub fn right_zero(n: usize) -> Self {
        Self::from_table_unchecked(CayleyTable::from_fn(n, |_, b| b).expect("in range"))
    }

    /// `a*b = a`.
    pub fn left_zero(n: usize) -> Self {
        Self::from_table_unchecked(CayleyTable::from_fn(n, |a, _| a).expect("in range"))
    }

    /// Integers modulo `n` under addition.
    pub fn cyclic(n: usize) -> Self {
        Self::from_table_unchecked(CayleyTable::from_fn(n, |a, b| (a + b) % n).expect("in range"))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.n
    }

    pub fn is_empty(&self) -> bool {
        self.order() == 0
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table.get(a, b)
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.order()
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table)
    }

    /// Same carrier and operation (pointer or content equality).
    pub fn same_as(&self, other: &Self) -> bool {
        self.ptr_eq(other) || self == other
    }

    pub fn is_idempotent(&self, e: ElementId) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<ElementId> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    pub fn is_left_identity(&self, e: ElementId) -> bool {
        self.elements().all(|x| self.mul(e, x) == x)
    }

    pub fn left_identities(&self) -> Vec<ElementId> {
        self.elements()
            .filter(|&e| self.is_left_identity(e))
            .collect()
    }

    /// `aS = S` for every `a`. The empty semigroup is not right simple.
    pub fn is_right_simple(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        self.elements().all(|a| {
            seen.iter_mut().for_each(|s| *s = false);
            self.table.row(a).iter().for_each(|&x| seen[x] = true);
            seen.iter().all(|&s| s)
        })
    }

    /// `ab = ac` implies `b = c`, i.e. every row is injective.
    pub fn is_left_cancellative(&self) -> bool {
        self.first_left_cancellation_failure().is_none()
    }

    /// A triple `(a, b, c)` with `b != c` and `ab = ac`.
    pub fn first_left_cancellation_failure(&self) -> Option<(ElementId, ElementId, ElementId)> {
        let n = self.order();
        let mut first_col = vec![usize::MAX; n];
        for a in self.elements() {
            first_col.iter_mut().for_each(|s| *s = usize::MAX);
            for (c, &v) in self.table.row(a).iter().enumerate() {
                if first_col[v] != usize::MAX {
                    return Some((a, first_col[v], c));
                }
                first_col[v] = c;
            }
        }
        None
    }

    /// The unique `x` with `a*x = b`.
    pub fn solve_right(&self, a: ElementId, b: ElementId) -> Result<ElementId> {
        let mut found = None;
        for x in self.elements() {
            if self.mul(a, x) == b {
                if found.is_some() {
                    return Err(Error::NotUnique { a, b });
                }
                found = Some(x);
            }
        }
        found.ok_or(Error::NoSolution { a, b })
    }

    /// `{x : e*x = x*e}`.
    pub fn centralizer(&self, e: ElementId) -> Vec<ElementId> {
        self.elements()
            .filter(|&x| self.mul(e, x) == self.mul(x, e))
            .collect()
    }

    /// External direct product with componentwise multiplication.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> (FiniteSemigroup, ProductCodec) {
        let codec = ProductCodec {
            left: self.order(),
            right: other.order(),
        };
        let table = CayleyTable::from_fn(codec.len(), |p, q| {
            let (s1, t1) = codec.decode(p);
            let (s2, t2) = codec.decode(q);
            codec.encode(self.mul(s1, s2), other.mul(t1, t2))
        })
        .expect("in range");
        (FiniteSemigroup::from_table_unchecked(table), codec)
    }

    /// The subsemigroup on `subset` with the induced operation.
    pub fn restrict(&self, subset: &[ElementId]) -> Result<Subsemigroup> {
        let mut embed: Vec<ElementId> = subset.to_vec();
        embed.sort_unstable();
        embed.dedup();
        if let Some(&bad) = embed.iter().find(|&&x| x >= self.order()) {
            return Err(Error::InvalidMap(format!(
                "element {bad} is not in the carrier"
            )));
        }
        let mut local = vec![None; self.order()];
        for (i, &x) in embed.iter().enumerate() {
            local[x] = Some(i);
        }
        let k = embed.len();
        let mut entries = Vec::with_capacity(k * k);
        for &a in &embed {
            for &b in &embed {
                let p = self.mul(a, b);
                match local[p] {
                    Some(i) => entries.push(i),
                    None => return Err(Error::NotASubsemigroup { a, b, product: p }),
                }
            }
        }
        let semigroup = FiniteSemigroup::from_table_unchecked(CayleyTable { n: k, entries });
        Ok(Subsemigroup {
            semigroup,
            embed,
            local,
        })
    }
}

/// Row-major pairing of `(s, t)` with the flat id `s * |T| + t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductCodec {
    pub left: usize,
    pub right: usize,
}

impl ProductCodec {
    #[inline]
    pub fn encode(&self, s: ElementId, t: ElementId) -> ElementId {
        s * self.right + t
    }

    #[inline]
    pub fn decode(&self, id: ElementId) -> (ElementId, ElementId) {
        (id / self.right, id % self.right)
    }

    pub fn len(&self) -> usize {
        self.left * self.right
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A subset closed under multiplication, as a standalone table plus the
/// maps between local and ambient ids.
#[derive(Clone, Debug)]
pub struct Subsemigroup {
    pub semigroup: FiniteSemigroup,
    /// Local id -> ambient id, increasing.
    pub embed: Vec<ElementId>,
    local: Vec<Option<usize>>,
}

impl Subsemigroup {
    pub fn local_id(&self, ambient: ElementId) -> Option<ElementId> {
        self.local.get(ambient).copied().flatten()
    }

    pub fn contains(&self, ambient: ElementId) -> bool {
        self.local_id(ambient).is_some()
    }

    pub fn order(&self) -> usize {
        self.embed.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(FiniteSemigroup::validate(CayleyTable::from_fn(2, |_, j| j).unwrap()).is_ok());
        assert!(FiniteSemigroup::from_rows(&[vec![0, 1], vec![1, 0]]).is_ok());
        // 0*1 = 0, 1*0 = 1: (0*1)*0 = 0*0 = 0 but 0*(1*0) = 0*1 = 0;
        // (1*0)*1 = 1*1 = 0 but 1*(0*1) = 1*0 = 1.
        let err = FiniteSemigroup::from_rows(&[vec![0, 0], vec![1, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }), "{err:?}");
        if let Error::NotAssociative { i, j, k } = err {
            let t = [[0, 0], [1, 0]];
            assert_ne!(t[t[i][j]][k], t[i][t[j][k]]);
        }
    }

    #[test]
    fn out_of_range_entry() {
        let err = CayleyTable::from_rows(&[vec![0, 2], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::EntryOutOfRange {
                row: 0,
                col: 1,
                value: 2,
                n: 2
            }
        );
    }

    #[test]
    fn idempotents_and_left_identities() {
        assert_eq!(FiniteSemigroup::right_zero(2).idempotents(), vec![0, 1]);
        assert_eq!(z2().idempotents(), vec![0]);
        assert_eq!(FiniteSemigroup::left_zero(3).idempotents(), vec![0, 1, 2]);

        assert_eq!(FiniteSemigroup::right_zero(2).left_identities(), vec![0, 1]);
        assert_eq!(z2().left_identities(), vec![0]);
        assert!(FiniteSemigroup::left_zero(2).left_identities().is_empty());
    }

    #[test]
    fn right_simple_and_cancellative() {
        assert!(FiniteSemigroup::right_zero(2).is_right_simple());
        assert!(!FiniteSemigroup::left_zero(2).is_right_simple());
        assert!(FiniteSemigroup::cyclic(4).is_right_simple());
        assert!(!FiniteSemigroup::empty().is_right_simple());

        assert!(FiniteSemigroup::right_zero(2).is_left_cancellative());
        // null semigroup: every row constant
        let null = FiniteSemigroup::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(!null.is_left_cancellative());
        assert!(FiniteSemigroup::cyclic(5).is_left_cancellative());
    }

    #[test]
    fn solve_right_examples() {
        let rz = FiniteSemigroup::right_zero(3);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(rz.solve_right(a, b).unwrap(), b);
            }
        }
        assert_eq!(z2().solve_right(1, 0).unwrap(), 1);
        assert_eq!(
            FiniteSemigroup::left_zero(2).solve_right(0, 1),
            Err(Error::NoSolution { a: 0, b: 1 })
        );
        assert_eq!(
            FiniteSemigroup::left_zero(2).solve_right(0, 0),
            Err(Error::NotUnique { a: 0, b: 0 })
        );
    }

    #[test]
    fn direct_product_examples() {
        let (p, codec) = FiniteSemigroup::right_zero(2).direct_product(&z2());
        assert_eq!(p.order(), 4);
        assert_eq!(
            p.idempotents(),
            vec![codec.encode(0, 0), codec.encode(1, 0)]
        );

        let (q, _) = z2().direct_product(&FiniteSemigroup::trivial());
        assert_eq!(q, z2());

        let (v4, _) = z2().direct_product(&z2());
        // Klein four: every element squares to the identity 0.
        assert!(v4.elements().all(|x| v4.mul(x, x) == 0));
        assert!(v4
            .elements()
            .all(|x| v4.elements().all(|y| v4.mul(x, y) == v4.mul(y, x))));
    }

    #[test]
    fn centralizers() {
        assert_eq!(FiniteSemigroup::right_zero(2).centralizer(0), vec![0]);
        let z4 = FiniteSemigroup::cyclic(4);
        assert_eq!(z4.centralizer(2), vec![0, 1, 2, 3]);
        // R2 x Z2: the centralizer of an idempotent e is the block Se.
        let (p, codec) = FiniteSemigroup::right_zero(2).direct_product(&z2());
        for e in p.idempotents() {
            let se: Vec<_> = {
                let mut v: Vec<_> = p.elements().map(|s| p.mul(s, e)).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            assert_eq!(p.centralizer(e), se);
            let (ei, _) = codec.decode(e);
            assert!(se.iter().all(|&x| codec.decode(x).0 == ei));
        }
    }

    #[test]
    fn text_format() {
        let text = "# R2 x Z2\n\n4\n0 1 2 3\n1 0 3 2\n0 1 2 3\n1 0 3 2\n";
        let s = FiniteSemigroup::parse(text).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(FiniteSemigroup::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(
            FiniteSemigroup::parse("2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            FiniteSemigroup::parse("2\n0 1\n1 x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            FiniteSemigroup::parse("2\n0 1\n1 0\n1\n"),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn restrict_checks_closure() {
        let z4 = FiniteSemigroup::cyclic(4);
        let sub = z4.restrict(&[0, 2]).unwrap();
        assert_eq!(sub.semigroup, z2());
        assert_eq!(sub.local_id(2), Some(1));
        assert!(matches!(
            z4.restrict(&[0, 1]),
            Err(Error::NotASubsemigroup { .. })
        ));
    }
}
