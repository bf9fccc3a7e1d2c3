//! Finite posets given by their Hasse diagrams.
//!
//! Elements carry string ids at the boundary; internally they are dense
//! indices `0..len()` and all order queries go through precomputed
//! down-set and up-set bit rows.

mod construct;
mod dim;
mod map;
mod order;

pub use construct::*;
pub use dim::{dim, par_dim, DimBudget};
pub use map::MonotoneMap;
pub use order::Classification;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    down: Vec<BitSet>,
    up: Vec<BitSet>,
    topo: Vec<usize>,
}

/// What to do with a cover that is implied by transitivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverPolicy {
    Reject,
    Reduce,
}

impl Poset {
    /// Builds a poset from element ids and covers `(x, y)` meaning `x` is a
    /// parent of `y`.
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)], policy: CoverPolicy) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let mut edges = Vec::with_capacity(covers.len());
        for (x, y) in covers {
            let xi = *index.get(x.as_ref()).ok_or_else(|| Error::UnknownElement(x.as_ref().into()))?;
            let yi = *index.get(y.as_ref()).ok_or_else(|| Error::UnknownElement(y.as_ref().into()))?;
            if xi == yi {
                return Err(Error::CycleDetected(names[xi].clone()));
            }
            edges.push((xi, yi));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut parents = vec![Vec::new(); n];
        for &(x, y) in &edges {
            parents[y].push(x);
        }
        let topo = topological_order(&names, &parents)?;
        let mut down: Vec<BitSet> = vec![BitSet::new(n); n];
        for &y in &topo {
            let mut d = BitSet::new(n);
            d.insert(y);
            for &p in &parents[y] {
                d.union_with(&down[p]);
            }
            down[y] = d;
        }
        let up = transpose_rows(&down);
        for y in 0..n {
            let reduced = maximal_strictly_below(&down, &up, y);
            if reduced != parents[y] {
                if policy == CoverPolicy::Reject {
                    let x = parents[y].iter().find(|p| !reduced.contains(p)).unwrap();
                    return Err(Error::NotHasse(names[*x].clone(), names[y].clone()));
                }
                parents[y] = reduced;
            }
        }
        Ok(Self::assemble(names, index, parents, down, topo))
    }

    /// Builds a poset from a full order relation `leq(x, y)`, computing covers.
    pub fn from_order(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = names.len();
        let down: Vec<BitSet> = (0..n).map(|y| BitSet::from_iter(n, (0..n).filter(|&x| leq(x, y)))).collect();
        Self::from_down_sets(names, down)
    }

    /// Builds a poset from the down-set rows of a partial order.
    pub fn from_down_sets(names: Vec<String>, down: Vec<BitSet>) -> Result<Self> {
        let index = index_names(&names)?;
        let n = names.len();
        for x in 0..n {
            if !down[x].contains(x) {
                return Err(Error::NotPartialOrder(format!("`{}` is not below itself", names[x])));
            }
            for y in down[x].iter() {
                if y != x && down[y].contains(x) {
                    return Err(Error::CycleDetected(names[x].clone()));
                }
            }
        }
        let up = transpose_rows(&down);
        let parents: Vec<Vec<usize>> = (0..n).map(|y| maximal_strictly_below(&down, &up, y)).collect();
        let topo = topological_order(&names, &parents)?;
        // the relation is transitive iff it equals the closure of its covers
        for &y in &topo {
            let mut closure = BitSet::new(n);
            closure.insert(y);
            for &p in &parents[y] {
                closure.union_with(&down[p]);
            }
            if closure != down[y] {
                return Err(Error::NotPartialOrder(format!("not transitive below `{}`", names[y])));
            }
        }
        Ok(Self::assemble(names, index, parents, down, topo))
    }

    fn assemble(
        names: Vec<String>,
        index: HashMap<String, usize>,
        parents: Vec<Vec<usize>>,
        down: Vec<BitSet>,
        topo: Vec<usize>,
    ) -> Self {
        let n = names.len();
        let mut children = vec![Vec::new(); n];
        for (y, ps) in parents.iter().enumerate() {
            for &p in ps {
                children[p].push(y);
            }
        }
        let up = transpose_rows(&down);
        Poset { names, index, parents, children, down, up, topo }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn get(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Covers `(x, y)` with `x` a parent of `y`, grouped by `y`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.parents.iter().enumerate().flat_map(|(y, ps)| ps.iter().map(move |&x| (x, y))).collect()
    }

    pub fn parents(&self, x: usize) -> &[usize] {
        &self.parents[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `(I <= x)` as a bit row.
    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    /// `(x <= I)` as a bit row.
    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    /// Common ancestors of `s`; every element when `s` is empty.
    pub fn common_ancestors(&self, s: &[usize]) -> BitSet {
        let mut acc = BitSet::full(self.len());
        for &x in s {
            acc.intersect_with(&self.down[x]);
        }
        acc
    }

    /// Common descendents of `s`; every element when `s` is empty.
    pub fn common_descendents(&self, s: &[usize]) -> BitSet {
        let mut acc = BitSet::full(self.len());
        for &x in s {
            acc.intersect_with(&self.up[x]);
        }
        acc
    }

    pub fn has_ancestor(&self, s: &[usize]) -> bool {
        !self.common_ancestors(s).is_empty()
    }

    /// Minimal elements of a subset.
    pub fn minimal_of(&self, set: &BitSet) -> Vec<usize> {
        set.iter().filter(|&c| self.down[c].intersection(set).count() == 1).collect()
    }

    /// Maximal elements of a subset.
    pub fn maximal_of(&self, set: &BitSet) -> Vec<usize> {
        set.iter().filter(|&c| self.up[c].intersection(set).count() == 1).collect()
    }

    /// Global minimum of a subset, if it has one.
    pub fn minimum_of(&self, set: &BitSet) -> Option<usize> {
        set.iter().find(|&c| set.is_subset(&self.up[c]))
    }

    /// Global maximum of a subset, if it has one.
    pub fn maximum_of(&self, set: &BitSet) -> Option<usize> {
        set.iter().find(|&c| set.is_subset(&self.down[c]))
    }

    /// Minimal common descendents of `s`.
    pub fn sups(&self, s: &[usize]) -> Vec<usize> {
        self.minimal_of(&self.common_descendents(s))
    }

    /// Maximal common ancestors of `s`.
    pub fn infs(&self, s: &[usize]) -> Vec<usize> {
        self.maximal_of(&self.common_ancestors(s))
    }

    /// The sup of `s` lying below every descendent of `s`.
    pub fn coproduct(&self, s: &[usize]) -> Option<usize> {
        self.minimum_of(&self.common_descendents(s))
    }

    /// The inf of `s` lying above every ancestor of `s`.
    pub fn product(&self, s: &[usize]) -> Option<usize> {
        self.maximum_of(&self.common_ancestors(s))
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        if self.leq(x, y) {
            return Some(y);
        }
        if self.leq(y, x) {
            return Some(x);
        }
        self.coproduct(&[x, y])
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        if self.leq(x, y) {
            return Some(x);
        }
        if self.leq(y, x) {
            return Some(y);
        }
        self.product(&[x, y])
    }

    /// Elements of a bit row as a sorted vector.
    pub fn members(set: &BitSet) -> Vec<usize> {
        set.iter().collect()
    }

    /// Induced subposet on the given elements, keeping their ids.
    pub fn subposet(&self, elements: &[usize]) -> Result<Poset> {
        let names = elements.iter().map(|&x| self.names[x].clone()).collect();
        Poset::from_order(names, |i, j| self.leq(elements[i], elements[j]))
    }

    /// Parents of `y` sorted lexicographically by id.
    pub fn parents_by_id(&self, y: usize) -> Vec<usize> {
        let mut ps = self.parents[y].clone();
        ps.sort_by(|a, b| self.names[*a].cmp(&self.names[*b]));
        ps
    }
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

fn topological_order(names: &[String], parents: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = parents.len();
    let mut indeg: Vec<usize> = parents.iter().map(|p| p.len()).collect();
    let mut children = vec![Vec::new(); n];
    for (y, ps) in parents.iter().enumerate() {
        for &p in ps {
            children[p].push(y);
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = stack.pop() {
        order.push(x);
        for &c in children[x].iter().rev() {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                stack.push(c);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&x| indeg[x] > 0).unwrap();
        return Err(Error::CycleDetected(names[stuck].clone()));
    }
    Ok(order)
}

fn transpose_rows(rows: &[BitSet]) -> Vec<BitSet> {
    let n = rows.len();
    let mut out = vec![BitSet::new(n); n];
    for (y, r) in rows.iter().enumerate() {
        for x in r.iter() {
            out[x].insert(y);
        }
    }
    out
}

fn maximal_strictly_below(down: &[BitSet], up: &[BitSet], y: usize) -> Vec<usize> {
    let mut strict = down[y].clone();
    strict.remove(y);
    strict.iter().filter(|&x| up[x].intersection(&strict).count() == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::new(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], CoverPolicy::Reject)
            .unwrap()
    }

    #[test]
    fn diamond_queries() {
        let p = diamond();
        let [z, a, b, o] = [0, 1, 2, 3];
        assert!(p.leq(z, o));
        assert!(!p.comparable(a, b));
        assert_eq!(p.sups(&[a, b]), vec![o]);
        assert_eq!(p.coproduct(&[a, b]), Some(o));
        assert_eq!(p.product(&[a, b]), Some(z));
        assert_eq!(p.coproduct(&[]), Some(z));
        assert_eq!(p.parents(o), &[a, b]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")], CoverPolicy::Reject),
            Err(Error::CycleDetected(_))
        ));
        assert!(matches!(Poset::new(&["a"], &[("a", "z")], CoverPolicy::Reject), Err(Error::UnknownElement(_))));
        assert!(matches!(Poset::new(&["a", "a"], &[], CoverPolicy::Reject), Err(Error::DuplicateElement(_))));
        let chain_with_shortcut = [("a", "b"), ("b", "c"), ("a", "c")];
        assert!(matches!(
            Poset::new(&["a", "b", "c"], &chain_with_shortcut, CoverPolicy::Reject),
            Err(Error::NotHasse(x, y)) if x == "a" && y == "c"
        ));
        let reduced = Poset::new(&["a", "b", "c"], &chain_with_shortcut, CoverPolicy::Reduce).unwrap();
        assert_eq!(reduced.covers().len(), 2);
    }

    #[test]
    fn from_order_rejects_non_transitive() {
        let r = |x: usize, y: usize| x == y || (x, y) == (0, 1) || (x, y) == (1, 2);
        assert!(matches!(
            Poset::from_order(vec!["a".into(), "b".into(), "c".into()], r),
            Err(Error::NotPartialOrder(_))
        ));
    }

    #[test]
    fn two_sups_without_coproduct() {
        let p =
            Poset::new(&["x", "y", "u", "v"], &[("x", "u"), ("y", "u"), ("x", "v"), ("y", "v")], CoverPolicy::Reject)
                .unwrap();
        assert_eq!(p.sups(&[0, 1]), vec![2, 3]);
        assert_eq!(p.coproduct(&[0, 1]), None);
    }
}
