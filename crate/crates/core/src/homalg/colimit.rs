//! Colimits of a functor restricted to a subset of its poset.

use super::VectFunctor;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, PrimeField};
use std::collections::HashMap;

/// `colim_Q F` for a subset `Q` with the induced order, together with the
/// canonical maps `F(q) -> colim` for `q` in `Q`.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub dim: usize,
    pub index: Vec<usize>,
    pub projections: Vec<FpMatrix>,
    /// Set when `Q` has a maximum `t`; then the colimit is `F(t)`.
    pub terminal: Option<usize>,
    pub field: PrimeField,
}

impl Colimit {
    pub fn projection(&self, q: usize) -> Option<&FpMatrix> {
        self.index.iter().position(|&x| x == q).map(|i| &self.projections[i])
    }

    /// The map out of the colimit induced by a cocone `q -> target(q)`.
    pub fn induced_map(&self, target_dim: usize, mut target: impl FnMut(usize) -> FpMatrix) -> Result<FpMatrix> {
        let field = self.field;
        if self.index.is_empty() {
            return Ok(FpMatrix::zeros(field, target_dim, 0));
        }
        if let Some(t) = self.terminal {
            return Ok(target(t));
        }
        let e = FpMatrix::hstack(field, self.dim, &self.projections)?;
        let targets: Vec<FpMatrix> = self.index.iter().map(|&q| target(q)).collect();
        let e2 = FpMatrix::hstack(field, target_dim, &targets)?;
        // M E = E'  <=>  E^T M^T = E'^T
        let mt = e
            .transpose()
            .solve(&e2.transpose())?
            .ok_or_else(|| Error::PreconditionFailed("cocone does not factor through the colimit".into()))?;
        Ok(mt.transpose())
    }
}

/// Colimit over the subset `index` (any order) of the functor's poset.
pub fn colimit(f: &VectFunctor, index: &BitSet) -> Colimit {
    let p = f.poset();
    let field = f.field();
    let members: Vec<usize> = index.iter().collect();
    if members.is_empty() {
        return Colimit { dim: 0, index: members, projections: vec![], terminal: None, field };
    }
    if let Some(t) = p.maximum_of(index) {
        let maps = f.all_maps_from_into(&members, t);
        return Colimit { dim: f.dim(t), index: members, projections: maps, terminal: Some(t), field };
    }
    let mut offset = HashMap::new();
    let mut total = 0;
    for &q in &members {
        offset.insert(q, total);
        total += f.dim(q);
    }
    let mut columns = Vec::new();
    for &y in &members {
        let mut strict = p.down_set(y).intersection(index);
        strict.remove(y);
        for x in p.maximal_of(&strict) {
            let m = f.map(x, y);
            let mut block = FpMatrix::zeros(field, total, f.dim(x));
            block.set_block(offset[&y], 0, &m);
            let neg = FpMatrix::identity(field, f.dim(x)).neg();
            block.set_block(offset[&x], 0, &neg);
            columns.push(block);
        }
    }
    let relations = FpMatrix::hstack(field, total, &columns).expect("blocks have equal height");
    let coker = relations.cokernel();
    let projections = members.iter().map(|&q| coker.projection.block(0, offset[&q], coker.dim, f.dim(q))).collect();
    Colimit { dim: coker.dim, index: members, projections, terminal: None, field }
}

impl VectFunctor {
    /// `F(q <= t)` for each `q` in `from`.
    pub fn all_maps_from_into(&self, from: &[usize], t: usize) -> Vec<FpMatrix> {
        from.iter().map(|&q| self.map(q, t)).collect()
    }
}

/// Colimit over `(I < a)`, or with `cofinal` over the smaller subset of
/// products of parent sets that have an ancestor. The second needs an upper
/// semilattice.
pub fn colimit_below(f: &VectFunctor, a: usize, cofinal: bool) -> Result<Colimit> {
    let p = f.poset();
    if !cofinal {
        let mut strict = p.down_set(a).clone();
        strict.remove(a);
        return Ok(colimit(f, &strict));
    }
    if !p.is_upper_semilattice() {
        return Err(Error::NotSemilattice);
    }
    Ok(colimit(f, &products_of_parent_sets(p, a)))
}

/// `{ prod S : S a non-empty set of parents of a with an ancestor }`.
pub fn products_of_parent_sets(p: &crate::poset::Poset, a: usize) -> BitSet {
    let mut set = BitSet::new(p.len());
    p.for_each_ancestral_subset(p.parents(a), |s| {
        if !s.is_empty() {
            set.insert(p.product(s).expect("sets with an ancestor in a finite semilattice have products"));
        }
        true
    });
    set
}

/// The comparison map from the cofinal colimit to the full one below `a`;
/// it is an isomorphism whenever the cofinality argument applies.
pub fn cofinal_comparison(f: &VectFunctor, a: usize) -> Result<(Colimit, Colimit, FpMatrix)> {
    let small = colimit_below(f, a, true)?;
    let big = colimit_below(f, a, false)?;
    let m = small.induced_map(big.dim, |q| big.projection(q).expect("cofinal subset").clone())?;
    Ok((small, big, m))
}
