//! Free functors `F(a) = sum_{b <= a} K^{beta(b)}` and maps out of them.

use super::{NatTransformation, VectFunctor};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, PrimeField};
use crate::poset::Poset;
use std::collections::HashMap;
use std::sync::Arc;

/// A free functor described by its generators, each sitting at an element.
#[derive(Clone, Debug)]
pub struct FreeFunctor {
    poset: Arc<Poset>,
    field: PrimeField,
    /// Element of each generator, non-decreasing.
    generators: Vec<usize>,
}

impl FreeFunctor {
    /// `beta[b]` generators at each element `b`.
    pub fn new(poset: Arc<Poset>, field: PrimeField, beta: &[usize]) -> Self {
        let generators = beta.iter().enumerate().flat_map(|(b, &k)| std::iter::repeat_n(b, k)).collect();
        FreeFunctor { poset, field, generators }
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn betti(&self) -> Vec<usize> {
        let mut beta = vec![0; self.poset.len()];
        for &g in &self.generators {
            beta[g] += 1;
        }
        beta
    }

    /// Generators present at `a`, in order; their positions index the basis of `F(a)`.
    pub fn basis(&self, a: usize) -> Vec<usize> {
        (0..self.generators.len()).filter(|&g| self.poset.leq(self.generators[g], a)).collect()
    }

    pub fn to_functor(&self) -> VectFunctor {
        let bases: Vec<Vec<usize>> = self.poset.elements().map(|a| self.basis(a)).collect();
        let dims = bases.iter().map(|b| b.len()).collect();
        VectFunctor::from_cover_fn(self.poset.clone(), self.field, dims, |x, y| {
            let mut m = FpMatrix::zeros(self.field, bases[y].len(), bases[x].len());
            for (i, g) in bases[x].iter().enumerate() {
                let j = bases[y].binary_search(g).expect("generator persists upwards");
                m.set(j, i, 1);
            }
            m
        })
    }

    /// The natural transformation to `target` sending generator `g` to the
    /// vector `images[g]` in `target(generators[g])`.
    pub fn morphism_to(&self, target: &VectFunctor, images: &[Vec<u32>]) -> NatTransformation {
        let mut cache: HashMap<(usize, usize), FpMatrix> = HashMap::new();
        let components = self
            .poset
            .elements()
            .map(|a| {
                let basis = self.basis(a);
                let mut m = FpMatrix::zeros(self.field, target.dim(a), basis.len());
                for (i, &g) in basis.iter().enumerate() {
                    let b = self.generators[g];
                    let push = cache.entry((b, a)).or_insert_with(|| target.map(b, a));
                    let v = push.mul(&FpMatrix::column_vector(self.field, &images[g]));
                    for r in 0..v.rows() {
                        m.set(r, i, v.get(r, 0));
                    }
                }
                m
            })
            .collect();
        NatTransformation { components }
    }
}

pub fn free_functor(poset: Arc<Poset>, field: PrimeField, beta: &[usize]) -> VectFunctor {
    FreeFunctor::new(poset, field, beta).to_functor()
}

/// Dimensions of `G / rad G`, where `rad G(a)` is spanned by the images of
/// the maps from the parents of `a`.
pub fn radical_quotient_dims(g: &VectFunctor) -> Vec<usize> {
    g.poset()
        .elements()
        .map(|a| {
            let stacked = FpMatrix::hstack(g.field(), g.dim(a), g.maps_into(a)).expect("maps land in G(a)");
            g.dim(a) - stacked.rank()
        })
        .collect()
}

/// Recovers the generator multiplicities of a free functor.
pub fn betti_of_free(g: &VectFunctor) -> Result<Vec<usize>> {
    let beta = radical_quotient_dims(g);
    let p = g.poset();
    for a in p.elements() {
        let expected: usize = p.down_set(a).iter().map(|b| beta[b]).sum();
        if expected != g.dim(a) {
            return Err(Error::NotFree);
        }
    }
    Ok(beta)
}
