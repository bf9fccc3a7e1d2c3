//! Minimal covers and minimal free resolutions.

use super::free::FreeFunctor;
use super::functor::kernel;
use super::{NatTransformation, VectFunctor};
use crate::error::Result;
use crate::linalg::FpMatrix;

/// A minimal free cover `P -> G`: generators at `a` are standard basis
/// vectors completing a basis of the radical of `G(a)`.
pub fn minimal_cover(g: &VectFunctor) -> (FreeFunctor, NatTransformation) {
    let field = g.field();
    let p = g.poset();
    let mut beta = vec![0; p.len()];
    let mut images_at: Vec<Vec<Vec<u32>>> = vec![Vec::new(); p.len()];
    for a in p.elements() {
        let d = g.dim(a);
        let mut parts = g.maps_into(a).to_vec();
        let rad_cols: usize = parts.iter().map(|m| m.cols()).sum();
        parts.push(FpMatrix::identity(field, d));
        let aug = FpMatrix::hstack(field, d, &parts).expect("maps land in G(a)");
        let (_, pivots) = aug.rref();
        for c in pivots.into_iter().filter(|&c| c >= rad_cols) {
            let mut e = vec![0; d];
            e[c - rad_cols] = 1;
            images_at[a].push(e);
        }
        beta[a] = images_at[a].len();
    }
    let free = FreeFunctor::new(p.clone(), field, &beta);
    let images: Vec<Vec<u32>> = images_at.into_iter().flatten().collect();
    let pi = free.morphism_to(g, &images);
    debug_assert!(p.elements().all(|a| pi.components[a].rank() == g.dim(a)));
    (free, pi)
}

/// A minimal free resolution `... -> P_1 -> P_0 -> G` up to a given degree.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub terms: Vec<FreeFunctor>,
    pub functors: Vec<VectFunctor>,
    /// `differentials[i]` is `d_{i+1} : P_{i+1} -> P_i`.
    pub differentials: Vec<NatTransformation>,
    pub augmentation: NatTransformation,
}

impl Resolution {
    /// `beta^i` as multiplicities per element; zero beyond the computed range.
    pub fn betti(&self, i: usize) -> Vec<usize> {
        match self.terms.get(i) {
            Some(t) => t.betti(),
            None => vec![0; self.augmentation.components.len()],
        }
    }
}

pub fn minimal_resolution(g: &VectFunctor, max_degree: usize) -> Result<Resolution> {
    let (p0, aug) = minimal_cover(g);
    let f0 = p0.to_functor();
    let mut terms = vec![p0];
    let mut functors = vec![f0];
    let mut differentials = Vec::new();
    let mut last_cover = aug.clone();
    for _ in 0..max_degree {
        let prev = functors.last().expect("at least P_0");
        let (k, inclusion) = kernel(&last_cover, prev);
        if k.is_zero() {
            break;
        }
        let (next, cover) = minimal_cover(&k);
        let d = inclusion.compose(&cover);
        debug_assert!(differentials.last().is_none_or(|prev_d: &NatTransformation| prev_d.compose(&d).is_zero()));
        functors.push(next.to_functor());
        terms.push(next);
        differentials.push(d);
        last_cover = cover;
    }
    Ok(Resolution { terms, functors, differentials, augmentation: aug })
}

/// `beta^i G` computed from a minimal free resolution.
pub fn betti_resolution(g: &VectFunctor, i: usize) -> Result<Vec<usize>> {
    Ok(minimal_resolution(g, i)?.betti(i))
}
