//! Dimension and parental dimension of elements.

use super::Poset;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Limits on the exhaustive searches behind [`dim`] and [`par_dim`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimBudget {
    /// Largest admissible `|(P <= x)|` for `dim`.
    pub max_down_set: usize,
    /// Largest admissible `|P(x)|` for `par_dim`.
    pub max_parents: usize,
}

impl Default for DimBudget {
    fn default() -> Self {
        DimBudget { max_down_set: 24, max_parents: 24 }
    }
}

impl DimBudget {
    pub fn unlimited() -> Self {
        DimBudget { max_down_set: usize::MAX, max_parents: usize::MAX }
    }
}

/// Largest `|U|` over subsets `U` of `(P <= x)` that have a proper ancestor,
/// have `x` as a sup, and have no non-empty proper subset with `x` as a sup.
///
/// A set with two comparable members always has a smaller subset with the
/// same sups, so only antichains of elements strictly below `x` are
/// searched. Being a sup is inherited by supersets within `(P <= x)`, which
/// lets the search stop as soon as `x` becomes a sup.
pub fn dim(p: &Poset, x: usize, budget: DimBudget) -> Result<usize> {
    let size = p.down_set(x).count();
    if size > budget.max_down_set {
        return Err(Error::SearchBudgetExceeded { size, budget: budget.max_down_set });
    }
    let local: Vec<usize> = p.down_set(x).iter().filter(|&y| y != x).collect();
    if local.is_empty() {
        return Ok(0);
    }
    let m = local.len();
    let restrict = |set: &BitSet| BitSet::from_iter(m, (0..m).filter(|&i| set.contains(local[i])));
    let mut strict_down = Vec::with_capacity(m);
    let mut up = Vec::with_capacity(m);
    let mut comparable = Vec::with_capacity(m);
    for (i, &y) in local.iter().enumerate() {
        let mut d = restrict(p.down_set(y));
        let u = restrict(p.up_set(y));
        let mut c = d.clone();
        c.union_with(&u);
        d.remove(i);
        strict_down.push(d);
        up.push(u);
        comparable.push(c);
    }
    let search = Search { strict_down: &strict_down, up: &up, comparable: &comparable, m };
    let mut best = 1;
    let mut chosen = Vec::new();
    search.run(0, &mut chosen, &BitSet::full(m), &BitSet::full(m), &BitSet::new(m), &mut best);
    Ok(best)
}

struct Search<'a> {
    strict_down: &'a [BitSet],
    up: &'a [BitSet],
    comparable: &'a [BitSet],
    m: usize,
}

impl Search<'_> {
    /// `ancestors` are the common proper ancestors of `chosen`, `above` the
    /// common descendents strictly below the target, `blocked` the elements
    /// comparable to something chosen.
    fn run(
        &self,
        start: usize,
        chosen: &mut Vec<usize>,
        ancestors: &BitSet,
        above: &BitSet,
        blocked: &BitSet,
        best: &mut usize,
    ) {
        for e in start..self.m {
            if blocked.contains(e) {
                continue;
            }
            let anc = ancestors.intersection(&self.strict_down[e]);
            if anc.is_empty() {
                continue;
            }
            let abv = above.intersection(&self.up[e]);
            chosen.push(e);
            if abv.is_empty() {
                if chosen.len() > *best && self.minimal(chosen) {
                    *best = chosen.len();
                }
            } else {
                let mut blk = blocked.clone();
                blk.union_with(&self.comparable[e]);
                self.run(e + 1, chosen, &anc, &abv, &blk, best);
            }
            chosen.pop();
        }
    }

    /// The target is a sup of no set obtained by dropping one element.
    fn minimal(&self, chosen: &[usize]) -> bool {
        (0..chosen.len()).all(|skip| {
            let mut acc = BitSet::full(self.m);
            for (i, &c) in chosen.iter().enumerate() {
                if i != skip {
                    acc.intersect_with(&self.up[c]);
                }
            }
            !acc.is_empty()
        })
    }
}

/// Largest `|S|` over subsets `S` of the parents of `x` that have an ancestor.
pub fn par_dim(p: &Poset, x: usize, budget: DimBudget) -> Result<usize> {
    let ps = p.parents(x);
    if ps.len() > budget.max_parents {
        return Err(Error::SearchBudgetExceeded { size: ps.len(), budget: budget.max_parents });
    }
    let mut best = 0;
    p.for_each_ancestral_subset(ps, |s| {
        best = best.max(s.len());
        best < ps.len()
    });
    Ok(best)
}

impl Poset {
    pub fn dim(&self, x: usize) -> Result<usize> {
        dim(self, x, DimBudget::default())
    }

    pub fn par_dim(&self, x: usize) -> Result<usize> {
        par_dim(self, x, DimBudget::default())
    }
}
