//! The transfer from the realisation onto a grid, and tame functors: functors
//! on the realisation determined by their values on a grid.

use crate::error::{Error, Result};
use crate::homalg::VectFunctor;
use crate::linalg::FpMatrix;
use crate::realisation::{Grid, GridSpec, RealPoint, Q};
use num_traits::Zero;

/// Closed-form transfer `R(I) -> R_{I<=d}(I, V)` for a consistent upper
/// semilattice `I`.
#[derive(Clone, Debug)]
pub struct GridTransfer {
    spec: GridSpec,
    top: usize,
}

impl GridTransfer {
    pub fn new(spec: &GridSpec) -> Result<Self> {
        let top =
            spec.principal_top().ok_or_else(|| Error::PreconditionFailed("grid domain must be (I <= d)".into()))?;
        if !spec.base.is_upper_semilattice() {
            return Err(Error::NotSemilattice);
        }
        if !spec.base.is_consistent() {
            return Err(Error::PreconditionFailed("base poset must be consistent".into()));
        }
        Ok(GridTransfer { spec: spec.clone(), top })
    }

    /// The largest grid point below `point`, or `None` for `-inf`.
    ///
    /// With `v0 = min V` (or `0`), let `S` be the parents where `f < v0` and
    /// `c = (prod S) ^ d` (or `a ^ d` if `S` is empty). At a parent `y` of
    /// `c`, let `Y` be the parents of `a` above `y`: the value is `0` when
    /// `c` lies below all of `Y`, and otherwise the largest value of
    /// `V u {0}` not exceeding `f` anywhere on `Y` away from `(c <= I)`.
    pub fn apply(&self, point: &RealPoint) -> Option<RealPoint> {
        let i = &*self.spec.base;
        let d = self.top;
        let a = point.base;
        // with empty support the point sits at a itself, so a must meet d
        let mut with_d = point.support();
        if with_d.is_empty() {
            with_d.push(a);
        }
        with_d.push(d);
        if !i.has_ancestor(&with_d) {
            return None;
        }
        let v0 = self.spec.v.first().copied().unwrap_or_else(Q::zero);
        let s: Vec<usize> = i.parents(a).iter().copied().filter(|&x| point.value(x) < v0).collect();
        let c = if s.is_empty() { i.meet(a, d) } else { i.product(&s).and_then(|m| i.meet(m, d)) }
            .expect("products exist below a common ancestor");
        let mut coords = Vec::new();
        for &y in i.parents(c) {
            let ys: Vec<usize> = i.parents(a).iter().copied().filter(|&x| i.leq(y, x)).collect();
            if ys.iter().all(|&x| i.leq(c, x)) {
                continue;
            }
            let bound = ys.iter().filter(|&&x| !i.leq(c, x)).map(|&x| point.value(x)).min().expect("non-empty");
            let h = self.spec.v.iter().copied().chain(std::iter::once(Q::zero())).filter(|&v| v <= bound).max();
            match h {
                Some(h) if !h.is_zero() => coords.push((y, h)),
                Some(_) => {}
                None => unreachable!("bound exceeds -1 and V contains nothing below -1"),
            }
        }
        Some(RealPoint::new(i, c, coords).expect("transfer lands in the grid"))
    }
}

pub fn grid_transfer(spec: &GridSpec, point: &RealPoint) -> Result<Option<RealPoint>> {
    Ok(GridTransfer::new(spec)?.apply(point))
}

/// A functor on the realisation given by its restriction to a grid; its
/// value at a point is the value at the transferred grid point (`0` at `-inf`).
#[derive(Clone, Debug)]
pub struct TameFunctor {
    pub grid: Grid,
    pub values: VectFunctor,
}

/// Value of a tame functor at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameValue {
    /// Grid element the point transfers to, `None` for `-inf`.
    pub grid_element: Option<usize>,
    pub dim: usize,
}

impl TameFunctor {
    pub fn new(grid: Grid, values: VectFunctor) -> Result<Self> {
        if values.poset().names() != grid.poset.names() {
            return Err(Error::PreconditionFailed("functor must live on the grid poset".into()));
        }
        Ok(TameFunctor { grid, values })
    }

    fn transfer(&self) -> Result<GridTransfer> {
        GridTransfer::new(&self.grid.spec)
    }

    fn locate(&self, t: &GridTransfer, p: &RealPoint) -> Option<usize> {
        t.apply(p).map(|g| self.grid.find(&g).expect("transfer lands in the grid"))
    }

    pub fn eval(&self, p: &RealPoint) -> Result<TameValue> {
        let t = self.transfer()?;
        let grid_element = self.locate(&t, p);
        Ok(TameValue { grid_element, dim: grid_element.map_or(0, |g| self.values.dim(g)) })
    }

    /// The map `F(p <= q)`.
    pub fn eval_map(&self, p: &RealPoint, q: &RealPoint) -> Result<FpMatrix> {
        let base = self.grid.base();
        if !crate::realisation::real_leq(base, p, q) {
            return Err(Error::NotRelated(p.encode(base), q.encode(base)));
        }
        let t = self.transfer()?;
        let field = self.values.field();
        Ok(match (self.locate(&t, p), self.locate(&t, q)) {
            (Some(x), Some(y)) => self.values.map(x, y),
            (None, y) => FpMatrix::zeros(field, y.map_or(0, |y| self.values.dim(y)), 0),
            (Some(_), None) => unreachable!("transfer is monotone"),
        })
    }
}

pub fn tame_eval(t: &TameFunctor, p: &RealPoint) -> Result<TameValue> {
    t.eval(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain_product;
    use std::sync::Arc;

    #[test]
    fn point_in_a_square_moves_down_to_the_grid() {
        let base = Arc::new(chain_product(4, 2));
        let d = base.index_of("2,2").unwrap();
        let spec = GridSpec::principal(base.clone(), d, vec![Q::new(-1, 2)]).unwrap();
        // the point with coordinates (0.7, 0.3)
        let p = RealPoint::from_names(&base, "1,1", &[("0,1", Q::new(-3, 10)), ("1,0", Q::new(-7, 10))]).unwrap();
        assert_eq!(crate::realisation::nat_coordinates(&base, &p).unwrap(), vec![Q::new(7, 10), Q::new(3, 10)]);
        let g = grid_transfer(&spec, &p).unwrap().unwrap();
        assert_eq!(crate::realisation::nat_coordinates(&base, &g).unwrap(), vec![Q::new(1, 2), Q::zero()]);
        // points outside the grid's shadow on a non-principal-bottom base go to -inf
        let far = RealPoint::at(base.index_of("4,4").unwrap());
        let top = grid_transfer(&spec, &far).unwrap().unwrap();
        assert_eq!(top.base, d);
    }
}
