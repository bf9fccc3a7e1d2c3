//! Finite grids `R_D(I, V)` inside the realisation.

use super::{real_leq, Coords, RealPoint, Q};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::Poset;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_GRID_CAP: usize = 20_000;

/// A base poset `I`, a subset `D` of elements and a finite set `V` of values
/// in `(-1, 0)`.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub base: Arc<Poset>,
    /// Sorted element indices.
    pub d: Vec<usize>,
    /// Sorted ascending, without duplicates.
    pub v: Vec<Q>,
}

impl GridSpec {
    pub fn new(base: Arc<Poset>, mut d: Vec<usize>, mut v: Vec<Q>) -> Result<Self> {
        if let Some(&bad) = d.iter().find(|&&x| x >= base.len()) {
            return Err(Error::UnknownElement(format!("index {bad}")));
        }
        d.sort_unstable();
        d.dedup();
        if let Some(bad) = v.iter().find(|&&x| x <= -Q::one() || x >= Q::zero()) {
            return Err(Error::ValueOutOfRange { parent: "V".into(), value: super::format_rational(*bad) });
        }
        v.sort();
        v.dedup();
        Ok(GridSpec { base, d, v })
    }

    /// `D = (I <= d)`.
    pub fn principal(base: Arc<Poset>, d: usize, v: Vec<Q>) -> Result<Self> {
        let down = base.down_set(d).iter().collect();
        GridSpec::new(base, down, v)
    }

    /// `D = I`.
    pub fn full(base: Arc<Poset>, v: Vec<Q>) -> Result<Self> {
        let all = base.elements().collect();
        GridSpec::new(base, all, v)
    }

    pub fn d_set(&self) -> BitSet {
        BitSet::from_iter(self.base.len(), self.d.iter().copied())
    }

    pub fn is_down_closed(&self) -> bool {
        self.base.is_down_closed(&self.d_set())
    }

    /// The element `d` with `D = (I <= d)`, if there is one.
    pub fn principal_top(&self) -> Option<usize> {
        let set = self.d_set();
        let top = self.base.maximum_of(&set)?;
        (self.base.down_set(top) == &set).then_some(top)
    }

    /// The same grid with one more value, placed halfway between `-1` and
    /// the current minimum of `V`.
    pub fn refined_below(&self) -> GridSpec {
        let lowest = self.v.first().copied().unwrap_or_else(Q::zero);
        let mut v = self.v.clone();
        v.insert(0, (lowest - Q::one()) / Q::from_integer(2));
        GridSpec { base: self.base.clone(), d: self.d.clone(), v }
    }

    /// Number of grid points, stopping early once it passes `cap`.
    pub fn size(&self, cap: usize) -> usize {
        let k = self.v.len();
        let mut total = 0usize;
        for &a in &self.d {
            self.base.for_each_ancestral_subset(self.base.parents(a), |s| {
                total = total.saturating_add(k.saturating_pow(s.len() as u32));
                total <= cap
            });
            if total > cap {
                break;
            }
        }
        total
    }
}

/// The grid as a poset, with each element labelled by its realisation point.
#[derive(Clone, Debug)]
pub struct Grid {
    pub spec: GridSpec,
    pub poset: Arc<Poset>,
    pub points: Vec<RealPoint>,
    index: HashMap<RealPoint, usize>,
}

impl Grid {
    pub fn build(spec: GridSpec) -> Result<Grid> {
        Grid::build_capped(spec, DEFAULT_GRID_CAP)
    }

    pub fn build_capped(spec: GridSpec, cap: usize) -> Result<Grid> {
        let size = spec.size(cap);
        if size > cap {
            return Err(Error::GridTooLarge { size, cap });
        }
        let base = spec.base.clone();
        let mut points = Vec::with_capacity(size);
        for &a in &spec.d {
            base.for_each_ancestral_subset(base.parents(a), |s| {
                if spec.v.is_empty() && !s.is_empty() {
                    return true;
                }
                let mut assignment = vec![0usize; s.len()];
                loop {
                    let coords: Coords = s.iter().zip(&assignment).map(|(&x, &i)| (x, spec.v[i])).collect();
                    points.push(RealPoint { base: a, coords });
                    // odometer over V^s
                    let mut pos = 0;
                    while pos < s.len() {
                        assignment[pos] += 1;
                        if assignment[pos] < spec.v.len() {
                            break;
                        }
                        assignment[pos] = 0;
                        pos += 1;
                    }
                    if pos == s.len() {
                        break;
                    }
                }
                true
            });
        }
        let n = points.len();
        let down: Vec<BitSet> = (0..n)
            .into_par_iter()
            .map(|j| {
                let y = &points[j];
                BitSet::from_iter(
                    n,
                    (0..n).filter(|&i| base.leq(points[i].base, y.base) && real_leq(&base, &points[i], y)),
                )
            })
            .collect();
        let names = points.iter().map(|p| p.encode(&base)).collect();
        let poset = Arc::new(Poset::from_down_sets(names, down)?);
        let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(Grid { spec, poset, points, index })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn find(&self, point: &RealPoint) -> Option<usize> {
        self.index.get(point).copied()
    }

    pub fn base(&self) -> &Poset {
        &self.spec.base
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{chain, chain_product};
    use crate::realisation::nat_coordinates;

    #[test]
    fn empty_values_give_back_d() {
        let base = Arc::new(chain_product(2, 2));
        let g = Grid::build(GridSpec::full(base.clone(), vec![]).unwrap()).unwrap();
        assert_eq!(g.len(), base.len());
        assert_eq!(g.poset.covers().len(), base.covers().len());
    }

    #[test]
    fn half_steps_on_a_chain() {
        let g = Grid::build(GridSpec::full(Arc::new(chain(1)), vec![Q::new(-1, 2)]).unwrap()).unwrap();
        assert_eq!(g.len(), 3);
        let names: Vec<&str> = g.poset.topological_order().iter().map(|&i| g.poset.name(i)).collect();
        assert_eq!(names, vec!["0", "1[0:-1/2]", "1"]);
        assert!(g.poset.is_connected() && g.poset.covers().len() == 2);
    }

    #[test]
    fn half_step_lattice_is_a_finer_square_grid() {
        let base = Arc::new(chain_product(2, 2));
        let g = Grid::build(GridSpec::full(base.clone(), vec![Q::new(-1, 2)]).unwrap()).unwrap();
        assert_eq!(g.len(), 25);
        let half = Q::new(1, 2);
        for x in g.poset.elements() {
            for y in g.poset.elements() {
                let cx = nat_coordinates(&base, &g.points[x]).unwrap();
                let cy = nat_coordinates(&base, &g.points[y]).unwrap();
                assert!(cx.iter().all(|c| (c / half).is_integer()));
                assert_eq!(g.poset.leq(x, y), cx.iter().zip(&cy).all(|(a, b)| a <= b));
            }
        }
    }

    #[test]
    fn cap_and_validation() {
        let base = Arc::new(chain_product(3, 2));
        let spec = GridSpec::full(base.clone(), vec![Q::new(-1, 2), Q::new(-1, 4)]).unwrap();
        assert!(matches!(Grid::build_capped(spec, 10), Err(Error::GridTooLarge { .. })));
        assert!(matches!(GridSpec::full(base, vec![Q::from_integer(0)]), Err(Error::ValueOutOfRange { .. })));
    }
}
