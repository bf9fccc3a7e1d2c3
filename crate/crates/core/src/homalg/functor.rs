//! Functors from a finite poset to finite-dimensional vector spaces over F_p.

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, PrimeField};
use crate::poset::{MonotoneMap, Poset};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct VectFunctor {
    poset: Arc<Poset>,
    field: PrimeField,
    dims: Vec<usize>,
    /// `maps[y][k]` is the map from `parents(y)[k]` to `y`.
    maps: Vec<Vec<FpMatrix>>,
}

impl VectFunctor {
    /// Builds a functor from matrices on covers. Missing covers get zero
    /// matrices. Shapes are checked here; functoriality by [`validate`](Self::validate).
    pub fn new(
        poset: Arc<Poset>,
        field: PrimeField,
        dims: Vec<usize>,
        mut cover_maps: HashMap<(usize, usize), FpMatrix>,
    ) -> Result<Self> {
        if dims.len() != poset.len() {
            return Err(Error::DimensionMismatch(format!("{} dims for {} elements", dims.len(), poset.len())));
        }
        let mut maps = Vec::with_capacity(poset.len());
        for y in poset.elements() {
            let mut row = Vec::with_capacity(poset.parents(y).len());
            for &x in poset.parents(y) {
                let m = cover_maps.remove(&(x, y)).unwrap_or_else(|| FpMatrix::zeros(field, dims[y], dims[x]));
                if m.rows() != dims[y] || m.cols() != dims[x] || m.field() != field {
                    return Err(Error::ShapeMismatch(poset.name(x).into(), poset.name(y).into()));
                }
                row.push(m);
            }
            maps.push(row);
        }
        if let Some(&(x, y)) = cover_maps.keys().next() {
            return Err(Error::NotRelated(format!("{} (not a cover)", poset.name(x)), poset.name(y).to_string()));
        }
        Ok(VectFunctor { poset, field, dims, maps })
    }

    /// Builds a functor from a function giving the matrix on each cover.
    pub fn from_cover_fn(
        poset: Arc<Poset>,
        field: PrimeField,
        dims: Vec<usize>,
        mut map: impl FnMut(usize, usize) -> FpMatrix,
    ) -> Self {
        let maps = poset
            .elements()
            .map(|y| {
                poset
                    .parents(y)
                    .iter()
                    .map(|&x| {
                        let m = map(x, y);
                        debug_assert!(m.rows() == dims[y] && m.cols() == dims[x]);
                        m
                    })
                    .collect()
            })
            .collect();
        VectFunctor { poset, field, dims, maps }
    }

    pub fn zero(poset: Arc<Poset>, field: PrimeField) -> Self {
        let n = poset.len();
        Self::from_cover_fn(poset, field, vec![0; n], |_, _| FpMatrix::zeros(field, 0, 0))
    }

    /// The constant functor with value `K^dim` and identity maps.
    pub fn constant(poset: Arc<Poset>, field: PrimeField, dim: usize) -> Self {
        let n = poset.len();
        Self::from_cover_fn(poset, field, vec![dim; n], |_, _| FpMatrix::identity(field, dim))
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Matrix on the cover `x -> y`.
    pub fn cover_map(&self, x: usize, y: usize) -> &FpMatrix {
        let k = self.poset.parents(y).iter().position(|&p| p == x).expect("not a cover");
        &self.maps[y][k]
    }

    /// Matrices on the covers into `y`, aligned with `poset.parents(y)`.
    pub fn maps_into(&self, y: usize) -> &[FpMatrix] {
        &self.maps[y]
    }

    /// `F(x <= y)` composed along a chain of covers.
    pub fn map(&self, x: usize, y: usize) -> FpMatrix {
        assert!(self.poset.leq(x, y), "map requested between unrelated elements");
        let mut steps = Vec::new();
        let mut cur = y;
        while cur != x {
            let k = self.poset.parents(cur).iter().position(|&p| self.poset.leq(x, p)).expect("path exists");
            steps.push((cur, k));
            cur = self.poset.parents(cur)[k];
        }
        let mut m = FpMatrix::identity(self.field, self.dims[x]);
        for &(target, k) in steps.iter().rev() {
            m = self.maps[target][k].mul(&m);
        }
        m
    }

    /// `F(x <= z)` for every `z >= x`, checking that all cover paths agree.
    fn maps_from(&self, x: usize, check: bool) -> Result<HashMap<usize, FpMatrix>> {
        let p = &self.poset;
        let mut out: HashMap<usize, FpMatrix> = HashMap::new();
        out.insert(x, FpMatrix::identity(self.field, self.dims[x]));
        for &z in p.topological_order() {
            if z == x || !p.leq(x, z) {
                continue;
            }
            let mut value: Option<FpMatrix> = None;
            for (k, &y) in p.parents(z).iter().enumerate() {
                if !p.leq(x, y) {
                    continue;
                }
                let cand = self.maps[z][k].mul(&out[&y]);
                match &value {
                    None => value = Some(cand),
                    Some(v) if *v == cand => {}
                    Some(_) => return Err(Error::NotFunctorial(p.name(x).into(), p.name(z).into())),
                }
                if !check {
                    break;
                }
            }
            out.insert(z, value.expect("z above x has a parent above x"));
        }
        Ok(out)
    }

    /// Checks that every two cover paths between the same endpoints give the
    /// same composite.
    pub fn validate(&self) -> Result<()> {
        for x in self.poset.elements() {
            self.maps_from(x, true)?;
        }
        Ok(())
    }

    /// All maps out of `x`, keyed by target.
    pub fn all_maps_from(&self, x: usize) -> HashMap<usize, FpMatrix> {
        self.maps_from(x, false).expect("unchecked composition cannot fail")
    }

    /// Direct sum `F + G`, with `F` in the first coordinates.
    pub fn direct_sum(&self, other: &VectFunctor) -> VectFunctor {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        VectFunctor::from_cover_fn(self.poset.clone(), self.field, dims, |x, y| {
            self.cover_map(x, y).direct_sum(other.cover_map(x, y))
        })
    }

    /// `F o f` for a monotone map `f` into this functor's poset.
    pub fn restrict_along(&self, f: &MonotoneMap, source: Arc<Poset>) -> VectFunctor {
        let dims = source.elements().map(|x| self.dims[f.apply(x)]).collect();
        VectFunctor::from_cover_fn(source, self.field, dims, |x, y| self.map(f.apply(x), f.apply(y)))
    }

    /// Restriction to a poset whose ids all occur here, ordered as here.
    pub fn restrict_to(&self, sub: Arc<Poset>) -> Result<VectFunctor> {
        let inc = MonotoneMap::inclusion(&sub, &self.poset)?;
        let mapping = inc.mapping.clone();
        let dims = sub.elements().map(|x| self.dims[mapping[x]]).collect();
        Ok(VectFunctor::from_cover_fn(sub, self.field, dims, |x, y| self.map(mapping[x], mapping[y])))
    }

    /// The same functor over a poset with elements listed in another order.
    pub fn reindexed(&self, poset: Arc<Poset>) -> Result<VectFunctor> {
        self.restrict_to(poset)
    }
}

/// A natural transformation given by its components, one matrix per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    pub components: Vec<FpMatrix>,
}

impl NatTransformation {
    pub fn identity(f: &VectFunctor) -> Self {
        let components = f.dims.iter().map(|&d| FpMatrix::identity(f.field, d)).collect();
        NatTransformation { components }
    }

    pub fn zero(src: &VectFunctor, tgt: &VectFunctor) -> Self {
        let components = src.poset.elements().map(|x| FpMatrix::zeros(src.field, tgt.dims[x], src.dims[x])).collect();
        NatTransformation { components }
    }

    /// Checks shapes and naturality on every cover.
    pub fn check(&self, src: &VectFunctor, tgt: &VectFunctor) -> Result<()> {
        let p = &src.poset;
        for x in p.elements() {
            let c = &self.components[x];
            if c.rows() != tgt.dims[x] || c.cols() != src.dims[x] {
                return Err(Error::ShapeMismatch(p.name(x).into(), p.name(x).into()));
            }
        }
        for (x, y) in p.covers() {
            let lhs = tgt.cover_map(x, y).mul(&self.components[x]);
            let rhs = self.components[y].mul(src.cover_map(x, y));
            if lhs != rhs {
                return Err(Error::NotNatural(p.name(x).into(), p.name(y).into()));
            }
        }
        Ok(())
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &NatTransformation) -> NatTransformation {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.mul(b)).collect();
        NatTransformation { components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

/// Pointwise kernel of `phi : src -> tgt` with its inclusion into `src`.
pub fn kernel(phi: &NatTransformation, src: &VectFunctor) -> (VectFunctor, NatTransformation) {
    let bases: Vec<FpMatrix> = phi.components.iter().map(|c| c.kernel_basis()).collect();
    let dims = bases.iter().map(|b| b.cols()).collect();
    let k = VectFunctor::from_cover_fn(src.poset.clone(), src.field, dims, |x, y| {
        let pushed = src.cover_map(x, y).mul(&bases[x]);
        bases[y].solve(&pushed).expect("shapes agree").expect("kernel is a subfunctor")
    });
    (k, NatTransformation { components: bases })
}

/// Pointwise cokernel of `phi : src -> tgt` with its projection from `tgt`.
pub fn cokernel(phi: &NatTransformation, tgt: &VectFunctor) -> (VectFunctor, NatTransformation) {
    let projs: Vec<FpMatrix> = phi.components.iter().map(|c| c.cokernel().projection).collect();
    let sections: Vec<FpMatrix> = projs.iter().map(|q| q.right_inverse().expect("projection is onto")).collect();
    let dims = projs.iter().map(|q| q.rows()).collect();
    let c = VectFunctor::from_cover_fn(tgt.poset.clone(), tgt.field, dims, |x, y| {
        projs[y].mul(tgt.cover_map(x, y)).mul(&sections[x])
    });
    (c, NatTransformation { components: projs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain_product;

    fn square() -> Arc<Poset> {
        Arc::new(chain_product(1, 2))
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let p = square();
        let f2 = PrimeField::two();
        let one = FpMatrix::identity(f2, 1);
        let mut maps = HashMap::new();
        for (x, y) in p.covers() {
            let m = if p.name(y) == "1,1" && p.name(x) == "0,1" { FpMatrix::zeros(f2, 1, 1) } else { one.clone() };
            maps.insert((x, y), m);
        }
        let f = VectFunctor::new(p.clone(), f2, vec![1; 4], maps).unwrap();
        assert!(matches!(f.validate(), Err(Error::NotFunctorial(x, y)) if x == "0,0" && y == "1,1"));
        let c = VectFunctor::constant(p, f2, 2);
        c.validate().unwrap();
    }

    #[test]
    fn shape_errors() {
        let p = square();
        let f2 = PrimeField::two();
        let (x, y) = p.covers()[0];
        let maps = HashMap::from([((x, y), FpMatrix::zeros(f2, 2, 2))]);
        assert!(matches!(VectFunctor::new(p, f2, vec![1; 4], maps), Err(Error::ShapeMismatch(..))));
    }

    #[test]
    fn kernel_and_cokernel_of_identity_and_zero() {
        let p = square();
        let f5 = PrimeField::new(5).unwrap();
        let c = VectFunctor::constant(p.clone(), f5, 2);
        let id = NatTransformation::identity(&c);
        let (k, inc) = kernel(&id, &c);
        assert!(k.is_zero());
        inc.check(&k, &c).unwrap();
        let zero = NatTransformation::zero(&c, &c);
        let (q, proj) = cokernel(&zero, &c);
        assert_eq!(q.dims(), c.dims());
        q.validate().unwrap();
        proj.check(&c, &q).unwrap();
    }
}
