//! Order-theoretic predicates: consistency, semilattices, distributivity, trees.

use super::Poset;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Position of an element `x` relative to an element `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `a <= x`.
    Dependent,
    /// `a` is not below `x` but some parent of `a` is.
    Independent,
    /// No parent of `a` is below `x`.
    Inconsistent,
}

impl Classification {
    pub fn is_consistent(self) -> bool {
        self != Classification::Inconsistent
    }
}

impl Poset {
    pub fn classify(&self, a: usize, x: usize) -> Classification {
        if self.leq(a, x) {
            Classification::Dependent
        } else if self.parents(a).iter().any(|&p| self.leq(p, x)) {
            Classification::Independent
        } else {
            Classification::Inconsistent
        }
    }

    /// For all `a <= b`, every `b`-independent `x` sharing an ancestor with
    /// `a` is `a`-consistent.
    pub fn is_consistent(&self) -> bool {
        self.consistency_violation().is_none()
    }

    /// A triple `(a, b, x)` witnessing that the poset is not consistent.
    pub fn consistency_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for b in 0..n {
            let independent: Vec<usize> =
                (0..n).filter(|&x| self.classify(b, x) == Classification::Independent).collect();
            if independent.is_empty() {
                continue;
            }
            for a in self.down_set(b).iter() {
                for &x in &independent {
                    if self.down_set(x).intersects(self.down_set(a))
                        && self.classify(a, x) == Classification::Inconsistent
                    {
                        return Some((a, b, x));
                    }
                }
            }
        }
        None
    }

    /// Every pair of incomparable elements has a coproduct.
    pub fn is_upper_semilattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.join(x, y).is_some()))
    }

    /// Join of a non-empty set by folding binary joins.
    pub fn join_all(&self, s: &[usize]) -> Option<usize> {
        let (&first, rest) = s.split_first()?;
        rest.iter().try_fold(first, |acc, &x| self.join(acc, x))
    }

    /// Table of binary joins.
    pub fn join_table(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.len();
        (0..n).map(|x| (0..n).map(|y| self.join(x, y)).collect()).collect()
    }

    /// Table of binary meets.
    pub fn meet_table(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.len();
        (0..n).map(|x| (0..n).map(|y| self.meet(x, y)).collect()).collect()
    }

    /// Whenever `a ^ x` and `b ^ x` exist, `(a v b) ^ x` exists and equals
    /// `(a ^ x) v (b ^ x)`.
    pub fn is_distributive(&self) -> Result<bool> {
        Ok(self.distributivity_violation()?.is_none())
    }

    pub fn distributivity_violation(&self) -> Result<Option<(usize, usize, usize)>> {
        if !self.is_upper_semilattice() {
            return Err(Error::DistributivityRequiresSemilattice);
        }
        let n = self.len();
        let joins = self.join_table();
        let meets = self.meet_table();
        for x in self.elements() {
            for a in 0..n {
                let Some(ax) = meets[a][x] else { continue };
                for b in a + 1..n {
                    let Some(bx) = meets[b][x] else { continue };
                    let lhs = joins[a][b].and_then(|ab| meets[ab][x]);
                    if lhs != joins[ax][bx] {
                        return Ok(Some((a, b, x)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// No two incomparable elements share an ancestor.
    pub fn is_forest(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.comparable(x, y) || !self.down_set(x).intersects(self.down_set(y))))
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let mut seen = BitSet::new(self.len());
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(x) = stack.pop() {
            for &y in self.parents(x).iter().chain(self.children(x)) {
                if !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        seen.count() == self.len()
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.is_connected()
    }

    pub fn global_min(&self) -> Option<usize> {
        self.minimum_of(&BitSet::full(self.len()))
    }

    pub fn global_max(&self) -> Option<usize> {
        self.maximum_of(&BitSet::full(self.len()))
    }

    /// Every non-empty subset of `P(a)` that has an ancestor has a product.
    pub fn parents_have_products(&self, a: usize) -> bool {
        let ps = self.parents(a);
        let mut ok = true;
        self.for_each_ancestral_subset(ps, |s| {
            if !s.is_empty() && self.product(s).is_none() {
                ok = false;
            }
            ok
        });
        ok
    }

    /// Visits every subset of `items` (in increasing index order) that has
    /// an ancestor, including the empty set, until `visit` returns false.
    pub fn for_each_ancestral_subset(&self, items: &[usize], mut visit: impl FnMut(&[usize]) -> bool) {
        fn rec(
            poset: &Poset,
            items: &[usize],
            start: usize,
            chosen: &mut Vec<usize>,
            anc: &BitSet,
            visit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if !visit(chosen) {
                return false;
            }
            for i in start..items.len() {
                let next = anc.intersection(poset.down_set(items[i]));
                if next.is_empty() {
                    continue;
                }
                chosen.push(items[i]);
                let go_on = rec(poset, items, i + 1, chosen, &next, visit);
                chosen.pop();
                if !go_on {
                    return false;
                }
            }
            true
        }
        let anc = BitSet::full(self.len());
        rec(self, items, 0, &mut Vec::new(), &anc, &mut visit);
    }

    /// Down-closed subsets are those containing everything below their members.
    pub fn is_down_closed(&self, set: &BitSet) -> bool {
        set.iter().all(|x| self.down_set(x).is_subset(set))
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn pentagon_is_not_distributive_and_diamond_is() {
        let pentagon = Poset::new(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("0", "c"), ("b", "1"), ("c", "1")],
            CoverPolicy::Reject,
        )
        .unwrap();
        assert!(pentagon.is_upper_semilattice());
        assert!(!pentagon.is_distributive().unwrap());
        assert!(discrete_cube(&["x", "y"]).is_distributive().unwrap());
    }

    #[test]
    fn distributivity_needs_semilattice() {
        let p = Poset::new(&["a", "b"], &[] as &[(&str, &str)], CoverPolicy::Reject).unwrap();
        assert!(matches!(p.is_distributive(), Err(Error::DistributivityRequiresSemilattice)));
    }

    #[test]
    fn classification_in_a_chain_product() {
        let p = chain_product(4, 2);
        let a = p.index_of("1,1").unwrap();
        assert_eq!(p.classify(a, p.index_of("2,3").unwrap()), Classification::Dependent);
        assert_eq!(p.classify(a, p.index_of("0,3").unwrap()), Classification::Independent);
        assert_eq!(p.classify(a, p.index_of("0,0").unwrap()), Classification::Inconsistent);
    }

    #[test]
    fn trees_and_forests() {
        let t = Poset::new(&["r", "a", "b"], &[("a", "r"), ("b", "r")], CoverPolicy::Reject).unwrap();
        assert!(t.is_forest() && t.is_tree());
        let v = Poset::new(&["r", "a", "b"], &[("r", "a"), ("r", "b")], CoverPolicy::Reject).unwrap();
        assert!(!v.is_forest());
        let two = Poset::new(&["a", "b"], &[] as &[(&str, &str)], CoverPolicy::Reject).unwrap();
        assert!(two.is_forest() && !two.is_tree());
        assert!(!discrete_cube(&["x", "y"]).is_forest());
    }
}
