//! From a bounded metric dataset and a subset-valued functor on a poset to a
//! vector space valued functor on a grid: extend the subsets to the grid by
//! ball neighbourhoods, then count connected components at a fixed scale.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::homalg::{tame_betti, VectFunctor};
use crate::linalg::{FpMatrix, PrimeField};
use crate::poset::Poset;
use crate::realisation::{format_rational, Grid, GridSpec, Q};
use crate::transfer::tame::TameFunctor;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

/// Finitely many points with exact pairwise distances bounded by `m`.
/// The triangle inequality is not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricDataset {
    pub points: Vec<String>,
    pub dist: Vec<Vec<Q>>,
    pub m: Q,
}

impl MetricDataset {
    pub fn new(points: Vec<String>, dist: Vec<Vec<Q>>, m: Q) -> Result<Self> {
        let n = points.len();
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = points.iter().find(|p| !seen.insert(p.as_str())) {
            return Err(Error::InvalidDataset(format!("point {dup} listed twice")));
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidDataset(format!("distance matrix must be {n} x {n}")));
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(Error::InvalidDataset(format!("d({0}, {0}) is not 0", points[i])));
            }
            for j in 0..n {
                let d = dist[i][j];
                if d != dist[j][i] {
                    return Err(Error::InvalidDataset(format!("d({}, {}) is not symmetric", points[i], points[j])));
                }
                if d < Q::zero() || d > m {
                    return Err(Error::InvalidDataset(format!(
                        "d({}, {}) = {} lies outside [0, {}]",
                        points[i],
                        points[j],
                        format_rational(d),
                        format_rational(m)
                    )));
                }
            }
        }
        Ok(MetricDataset { points, dist, m })
    }

    /// Points on a line at the given positions, with `m` the largest gap
    /// (or 1 for a single point).
    pub fn on_a_line(points: &[(&str, Q)]) -> Result<Self> {
        let dist: Vec<Vec<Q>> = points
            .iter()
            .map(|(_, x)| points.iter().map(|(_, y)| num_traits::Signed::abs(&(x - y))).collect())
            .collect();
        let m = dist.iter().flatten().copied().max().filter(|m| !m.is_zero()).unwrap_or_else(Q::one);
        MetricDataset::new(points.iter().map(|(p, _)| p.to_string()).collect(), dist, m)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.points.iter().position(|p| p == id).ok_or_else(|| Error::InvalidDataset(format!("unknown point {id}")))
    }

    /// The open ball `{y | d(x, y) < r for some x in set}`.
    pub fn ball(&self, set: &BitSet, r: Q) -> BitSet {
        BitSet::from_iter(self.len(), (0..self.len()).filter(|&y| set.iter().any(|x| self.dist[x][y] < r)))
    }
}

/// A monotone assignment of non-empty point subsets to poset elements.
#[derive(Clone, Debug)]
pub struct SubsetFunctor {
    pub poset: Arc<Poset>,
    pub values: Vec<BitSet>,
}

impl SubsetFunctor {
    pub fn new(poset: Arc<Poset>, values: Vec<BitSet>) -> Result<Self> {
        if values.len() != poset.len() {
            return Err(Error::PreconditionFailed(format!("{} values for {} elements", values.len(), poset.len())));
        }
        if let Some(x) = poset.elements().find(|&x| values[x].is_empty()) {
            return Err(Error::EmptyValue(poset.name(x).into()));
        }
        if let Some(&(x, y)) = poset.covers().iter().find(|&&(x, y)| !values[x].is_subset(&values[y])) {
            return Err(Error::NotMonotone(poset.name(x).into(), poset.name(y).into()));
        }
        Ok(SubsetFunctor { poset, values })
    }

    /// Elements missing from `named` get the empty set and are rejected.
    pub fn from_names(poset: Arc<Poset>, data: &MetricDataset, named: &HashMap<String, Vec<String>>) -> Result<Self> {
        let mut values = vec![BitSet::new(data.len()); poset.len()];
        for (x, ids) in named {
            let x = poset.index_of(x)?;
            for id in ids {
                values[x].insert(data.index_of(id)?);
            }
        }
        SubsetFunctor::new(poset, values)
    }

    pub fn names(&self, data: &MetricDataset, x: usize) -> Vec<String> {
        self.values[x].iter().map(|i| data.points[i].clone()).collect()
    }
}

/// `U(a) n B(U(p), (1 + f(p)) m)` over the support of `f`, at every grid
/// point `(a, f)`.
pub fn extend_subsets(u: &SubsetFunctor, grid: &Grid, data: &MetricDataset) -> Result<SubsetFunctor> {
    if u.poset.names() != grid.base().names() {
        return Err(Error::PreconditionFailed("subset functor must live on the grid's base poset".into()));
    }
    let values: Vec<BitSet> = grid
        .points
        .par_iter()
        .map(|p| {
            let mut s = u.values[p.base].clone();
            for (&y, &v) in &p.coords {
                s.intersect_with(&data.ball(&u.values[y], (Q::one() + v) * data.m));
            }
            s
        })
        .collect();
    SubsetFunctor::new(grid.poset.clone(), values)
}

/// Connected components of `set` in the graph joining points at distance
/// at most `eps`, as a label per point (the smallest member of its
/// component) and the sorted list of labels.
fn components(set: &BitSet, data: &MetricDataset, eps: Q) -> (HashMap<usize, usize>, Vec<usize>) {
    let members: Vec<usize> = set.iter().collect();
    let mut uf = UnionFind::<usize>::new(members.len());
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate().skip(i + 1) {
            if data.dist[x][y] <= eps {
                uf.union(i, j);
            }
        }
    }
    let mut smallest: HashMap<usize, usize> = HashMap::new();
    for (i, &x) in members.iter().enumerate() {
        smallest.entry(uf.find_mut(i)).or_insert(x);
    }
    let label: HashMap<usize, usize> =
        members.iter().enumerate().map(|(i, &x)| (x, smallest[&uf.find_mut(i)])).collect();
    let mut labels: Vec<usize> = smallest.into_values().collect();
    labels.sort_unstable();
    (label, labels)
}

/// `H_0` of the scale-`eps` graph on each value of `s`, with basis the
/// components ordered by their smallest point.
pub fn h0_functor(s: &SubsetFunctor, data: &MetricDataset, eps: Q, field: PrimeField) -> Result<VectFunctor> {
    if eps < Q::zero() {
        return Err(Error::PreconditionFailed("scale must be non-negative".into()));
    }
    let comps: Vec<(HashMap<usize, usize>, Vec<usize>)> =
        s.values.par_iter().map(|v| components(v, data, eps)).collect();
    let dims = comps.iter().map(|(_, l)| l.len()).collect();
    let f = VectFunctor::from_cover_fn(s.poset.clone(), field, dims, |x, y| {
        let (_, src) = &comps[x];
        let (label, tgt) = &comps[y];
        let mut m = FpMatrix::zeros(field, tgt.len(), src.len());
        for (j, rep) in src.iter().enumerate() {
            let row = tgt.binary_search(&label[rep]).expect("labels are sorted");
            m.set(row, j, 1);
        }
        m
    });
    f.validate()?;
    Ok(f)
}

/// Everything a pipeline run needs.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub data: MetricDataset,
    pub subsets: SubsetFunctor,
    pub grid: GridSpec,
    pub epsilon: Q,
    pub field: PrimeField,
    pub max_degree: usize,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub grid: Grid,
    pub extended: SubsetFunctor,
    pub functor: VectFunctor,
    /// `betti[i][x]` is `beta^i` at grid point `x`.
    pub betti: Vec<Vec<usize>>,
}

pub fn pipeline_run(config: &PipelineConfig) -> Result<PipelineOutput> {
    let grid = Grid::build(config.grid.clone())?;
    let extended = extend_subsets(&config.subsets, &grid, &config.data)?;
    let functor = h0_functor(&extended, &config.data, config.epsilon, config.field)?;
    let tame = TameFunctor::new(grid, functor)?;
    let betti = (0..=config.max_degree).map(|i| tame_betti(&tame, i)).collect::<Result<Vec<_>>>()?;
    Ok(PipelineOutput { grid: tame.grid, extended, functor: tame.values, betti })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain;

    fn named(pairs: &[(&str, &[&str])]) -> HashMap<String, Vec<String>> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.iter().map(|s| s.to_string()).collect())).collect()
    }

    fn two_points() -> (MetricDataset, SubsetFunctor) {
        let data = MetricDataset::on_a_line(&[("p", Q::zero()), ("q", Q::one())]).unwrap();
        let u =
            SubsetFunctor::from_names(Arc::new(chain(1)), &data, &named(&[("0", &["p"]), ("1", &["p", "q"])])).unwrap();
        (data, u)
    }

    #[test]
    fn datasets_are_validated() {
        let q = |n| Q::from_integer(n);
        assert!(MetricDataset::new(vec!["a".into()], vec![vec![q(1)]], q(1)).is_err());
        let asym = vec![vec![q(0), q(1)], vec![q(2), q(0)]];
        assert!(MetricDataset::new(vec!["a".into(), "b".into()], asym, q(3)).is_err());
        let far = vec![vec![q(0), q(5)], vec![q(5), q(0)]];
        assert!(MetricDataset::new(vec!["a".into(), "b".into()], far, q(3)).is_err());
    }

    #[test]
    fn empty_and_shrinking_subsets_are_rejected() {
        let data = MetricDataset::on_a_line(&[("p", Q::zero()), ("q", Q::one())]).unwrap();
        let p = Arc::new(chain(1));
        assert!(matches!(
            SubsetFunctor::from_names(p.clone(), &data, &named(&[("1", &["p"])])),
            Err(Error::EmptyValue(_))
        ));
        assert!(matches!(
            SubsetFunctor::from_names(p, &data, &named(&[("0", &["p", "q"]), ("1", &["q"])])),
            Err(Error::NotMonotone(..))
        ));
    }

    #[test]
    fn extension_of_two_points() {
        let (data, u) = two_points();
        let grid = Grid::build(GridSpec::full(u.poset.clone(), vec![Q::new(-1, 2)]).unwrap()).unwrap();
        let ext = extend_subsets(&u, &grid, &data).unwrap();
        let at = |id: &str| ext.names(&data, grid.poset.index_of(id).unwrap());
        assert_eq!(at("0"), ["p"]);
        assert_eq!(at("1[0:-1/2]"), ["p"]);
        assert_eq!(at("1"), ["p", "q"]);
    }

    #[test]
    fn components_merge_along_the_fold_map() {
        let (data, u) = two_points();
        let f2 = PrimeField::two();
        let apart = h0_functor(&u, &data, Q::new(1, 2), f2).unwrap();
        assert_eq!(apart.dims(), &[1, 2]);
        assert_eq!(apart.cover_map(0, 1).to_rows(), vec![vec![1], vec![0]]);
        let joined = h0_functor(&u, &data, Q::one(), f2).unwrap();
        assert_eq!(joined.dims(), &[1, 1]);
    }

    #[test]
    fn clusters_on_a_line() {
        let data = MetricDataset::on_a_line(&[
            ("x0", Q::from_integer(0)),
            ("x1", Q::from_integer(1)),
            ("x2", Q::from_integer(2)),
            ("x3", Q::from_integer(3)),
        ])
        .unwrap();
        let data = MetricDataset { m: Q::from_integer(4), ..data };
        let base = Arc::new(chain(2));
        let u = SubsetFunctor::from_names(
            base.clone(),
            &data,
            &named(&[("0", &["x0"]), ("1", &["x0", "x3"]), ("2", &["x0", "x1", "x2", "x3"])]),
        )
        .unwrap();
        let config = PipelineConfig {
            data,
            subsets: u,
            grid: GridSpec::full(base, vec![Q::new(-1, 2)]).unwrap(),
            epsilon: Q::one(),
            field: PrimeField::two(),
            max_degree: 2,
        };
        let out = pipeline_run(&config).unwrap();
        let order: Vec<usize> = out.grid.poset.topological_order().to_vec();
        let along = |v: &[usize]| order.iter().map(|&x| v[x]).collect::<Vec<_>>();
        assert_eq!(along(out.functor.dims()), [1, 1, 2, 1, 1]);
        assert_eq!(along(&out.betti[0]), [1, 0, 1, 0, 0]);
        assert_eq!(along(&out.betti[1]), [0, 0, 0, 1, 0]);
        assert!(out.betti[2].iter().all(|&b| b == 0));
    }
}
