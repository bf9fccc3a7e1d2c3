//! Maps between posets and the homomorphism test.

use super::Poset;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MonotoneMap<'a> {
    pub source: &'a Poset,
    pub target: &'a Poset,
    pub mapping: Vec<usize>,
    is_functor: bool,
}

impl<'a> MonotoneMap<'a> {
    /// A functor: rejects maps that do not preserve the order.
    pub fn functor(source: &'a Poset, target: &'a Poset, mapping: Vec<usize>) -> Result<Self> {
        let m = Self::function(source, target, mapping)?;
        if let Some((x, y)) = m.monotonicity_violation() {
            return Err(Error::NotMonotone(source.name(x).into(), source.name(y).into()));
        }
        Ok(m)
    }

    /// Any function on elements; whether it is monotone is recorded.
    pub fn function(source: &'a Poset, target: &'a Poset, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != source.len() {
            return Err(Error::DimensionMismatch(format!(
                "map has {} values for {} elements",
                mapping.len(),
                source.len()
            )));
        }
        if let Some(&bad) = mapping.iter().find(|&&v| v >= target.len()) {
            return Err(Error::UnknownElement(format!("target index {bad}")));
        }
        let mut m = MonotoneMap { source, target, mapping, is_functor: false };
        m.is_functor = m.monotonicity_violation().is_none();
        Ok(m)
    }

    /// Builds a map from id pairs.
    pub fn from_names(source: &'a Poset, target: &'a Poset, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut mapping = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            mapping[source.index_of(x)?] = target.index_of(y)?;
        }
        if let Some(missing) = mapping.iter().position(|&v| v == usize::MAX) {
            return Err(Error::UnknownElement(format!("no image for `{}`", source.name(missing))));
        }
        Self::functor(source, target, mapping)
    }

    /// The inclusion of a subposet given by ids.
    pub fn inclusion(source: &'a Poset, target: &'a Poset) -> Result<Self> {
        let mapping = source.names().iter().map(|n| target.index_of(n)).collect::<Result<Vec<_>>>()?;
        Self::functor(source, target, mapping)
    }

    pub fn is_functor(&self) -> bool {
        self.is_functor
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        self.source.covers().into_iter().find(|&(x, y)| !self.target.leq(self.mapping[x], self.mapping[y]))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.mapping.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.mapping.iter().for_each(|&v| seen[v] = true);
        seen.iter().all(|&s| s)
    }

    /// `(f <= a)`: elements of the source mapped below `a`.
    pub fn preimage_below(&self, a: usize) -> Vec<usize> {
        self.source.elements().filter(|&x| self.target.leq(self.mapping[x], a)).collect()
    }

    /// Checks that the source is an upper semilattice and that `f(v S)` is a
    /// sup of `f(S)` for every finite non-empty `S`.
    ///
    /// Sets with comparable members reduce to their maximal elements, so it
    /// suffices to check monotonicity and all antichains of size at least two.
    pub fn homomorphism_violation(&self) -> Result<Option<Vec<usize>>> {
        if !self.source.is_upper_semilattice() {
            return Err(Error::NotSemilattice);
        }
        if let Some((x, y)) = self.monotonicity_violation() {
            return Ok(Some(vec![x, y]));
        }
        let n = self.source.len();
        let mut found = None;
        let mut chosen = Vec::new();
        self.antichains(0, n, &mut chosen, None, &mut found);
        Ok(found)
    }

    pub fn is_homomorphism(&self) -> Result<bool> {
        Ok(self.homomorphism_violation()?.is_none())
    }

    fn antichains(
        &self,
        start: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        join: Option<usize>,
        found: &mut Option<Vec<usize>>,
    ) {
        for e in start..n {
            if found.is_some() {
                return;
            }
            if chosen.iter().any(|&c| self.source.comparable(c, e)) {
                continue;
            }
            let j = match join {
                None => e,
                Some(j) => self.source.join(j, e).expect("semilattice has joins"),
            };
            chosen.push(e);
            if chosen.len() >= 2 {
                let images: Vec<usize> = chosen.iter().map(|&c| self.mapping[c]).collect();
                if !self.target.sups(&images).contains(&self.mapping[j]) {
                    *found = Some(chosen.clone());
                }
            }
            self.antichains(e + 1, n, chosen, Some(j), found);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn doubling_square_is_not_a_homomorphism() {
        let src = chain_product(1, 2);
        let tgt = chain_product(4, 2);
        let f = MonotoneMap::from_names(&src, &tgt, &[("0,0", "0,0"), ("1,0", "1,0"), ("0,1", "0,1"), ("1,1", "2,2")])
            .unwrap();
        assert!(f.is_functor());
        assert!(!f.is_homomorphism().unwrap());
        let g = MonotoneMap::inclusion(&src, &tgt).unwrap();
        assert!(g.is_homomorphism().unwrap());
        assert!(g.is_injective() && !g.is_surjective());
    }

    #[test]
    fn non_monotone_functor_is_rejected() {
        let c = chain(1);
        assert!(matches!(MonotoneMap::functor(&c, &c, vec![1, 0]), Err(Error::NotMonotone(_, _))));
        let f = MonotoneMap::function(&c, &c, vec![1, 0]).unwrap();
        assert!(!f.is_functor());
    }
}
