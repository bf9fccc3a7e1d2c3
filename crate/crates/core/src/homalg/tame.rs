//! Betti diagrams of tame functors, computed with Koszul complexes on the
//! grid that carries them.

use super::{betti_koszul, VectFunctor};
use crate::error::Result;
use crate::linalg::FpMatrix;
use crate::poset::MonotoneMap;
use crate::realisation::Grid;
use crate::transfer::kan::kan_extend_general;
use crate::transfer::tame::{GridTransfer, TameFunctor};
use rayon::prelude::*;

/// Whether the grid point `x` has no value of `V` strictly below all its
/// coordinates. Koszul homology above degree 2 is only trusted at points
/// where such a value exists.
pub fn lacks_lower_value(grid: &Grid, x: usize) -> bool {
    let p = &grid.points[x];
    let parents = grid.base().parents(p.base);
    match grid.spec.v.first() {
        Some(&eps) => parents.iter().any(|&y| p.value(y) <= eps),
        None => !parents.is_empty(),
    }
}

/// The same tame functor on the grid with one more value below `min V`,
/// together with the position of every old grid point in the new grid.
pub fn refine_tame(t: &TameFunctor) -> Result<(TameFunctor, Vec<usize>)> {
    let fine = Grid::build(t.grid.spec.refined_below())?;
    let embed: Vec<usize> =
        t.grid.points.iter().map(|p| fine.find(p).expect("refinement keeps the old grid points")).collect();
    let values = extend_to(t, &fine, &embed)?;
    Ok((TameFunctor::new(fine, values)?, embed))
}

fn extend_to(t: &TameFunctor, fine: &Grid, embed: &[usize]) -> Result<VectFunctor> {
    let g = &t.values;
    let field = g.field();
    if let Ok(tr) = GridTransfer::new(&t.grid.spec) {
        let located: Vec<Option<usize>> = fine
            .points
            .iter()
            .map(|p| tr.apply(p).map(|q| t.grid.find(&q).expect("transfer lands in the grid")))
            .collect();
        let dims = located.iter().map(|x| x.map_or(0, |x| g.dim(x))).collect();
        return Ok(VectFunctor::from_cover_fn(fine.poset.clone(), field, dims, |a, b| {
            match (located[a], located[b]) {
                (Some(x), Some(y)) => g.map(x, y),
                (None, y) => FpMatrix::zeros(field, y.map_or(0, |y| g.dim(y)), 0),
                (Some(_), None) => unreachable!("transfer is monotone"),
            }
        }));
    }
    let inclusion = MonotoneMap::functor(&t.grid.poset, &fine.poset, embed.to_vec())?;
    Ok(kan_extend_general(g, &inclusion, fine.poset.clone())?.functor)
}

/// `beta^i` of a tame functor at every grid point.
///
/// Degrees up to 2 are read off the Koszul complex on the grid. Above that,
/// points where every value of `V` is reached by some coordinate are computed
/// on the grid refined by one lower value, which is built once on demand.
pub fn tame_betti(t: &TameFunctor, i: usize) -> Result<Vec<usize>> {
    let n = t.grid.len();
    let needs: Vec<bool> = (0..n).map(|x| i > 2 && lacks_lower_value(&t.grid, x)).collect();
    let refined = if needs.iter().any(|&b| b) { Some(refine_tame(t)?) } else { None };
    (0..n)
        .into_par_iter()
        .map(|x| match (&refined, needs[x]) {
            (Some((fine, embed)), true) => betti_koszul(&fine.values, embed[x], i),
            _ => betti_koszul(&t.values, x, i),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{betti_resolution, free_functor};
    use crate::linalg::PrimeField;
    use crate::poset::{chain, discrete_cube, suspension};
    use crate::realisation::{GridSpec, Q};
    use std::sync::Arc;

    fn grid(base: crate::poset::Poset, v: Vec<Q>) -> Grid {
        Grid::build(GridSpec::full(Arc::new(base), v).unwrap()).unwrap()
    }

    /// The functor `K` on the points `x` with `lo <= x` and no `hi <= x`.
    fn bar(g: &Grid, lo: &str, his: &[&str]) -> VectFunctor {
        let p = &g.poset;
        let lo = p.index_of(lo).unwrap();
        let his: Vec<usize> = his.iter().map(|h| p.index_of(h).unwrap()).collect();
        let dims: Vec<usize> =
            p.elements().map(|x| usize::from(p.leq(lo, x) && his.iter().all(|&h| !p.leq(h, x)))).collect();
        let f = PrimeField::two();
        VectFunctor::from_cover_fn(p.clone(), f, dims.clone(), |x, y| {
            if dims[x] == 1 && dims[y] == 1 {
                FpMatrix::identity(f, 1)
            } else {
                FpMatrix::zeros(f, dims[y], dims[x])
            }
        })
    }

    #[test]
    fn free_functors_have_only_generators() {
        let g = grid(discrete_cube(&["a", "b"]), vec![Q::new(-1, 2)]);
        let mut beta = vec![0; g.len()];
        beta[g.poset.index_of("{a}").unwrap()] = 2;
        beta[g.poset.index_of("{a,b}[{a}:-1/2]").unwrap()] = 1;
        let t = TameFunctor::new(g.clone(), free_functor(g.poset.clone(), PrimeField::two(), &beta)).unwrap();
        assert_eq!(tame_betti(&t, 0).unwrap(), beta);
        for i in 1..4 {
            assert!(tame_betti(&t, i).unwrap().iter().all(|&b| b == 0));
        }
    }

    #[test]
    fn a_bar_on_a_line_is_born_and_dies() {
        let g = grid(chain(2), vec![Q::new(-1, 2)]);
        let t = TameFunctor::new(g.clone(), bar(&g, "1[0:-1/2]", &["2[1:-1/2]"])).unwrap();
        let born = g.poset.index_of("1[0:-1/2]").unwrap();
        let dies = g.poset.index_of("2[1:-1/2]").unwrap();
        let b0 = tame_betti(&t, 0).unwrap();
        let b1 = tame_betti(&t, 1).unwrap();
        for x in g.poset.elements() {
            assert_eq!(b0[x], usize::from(x == born));
            assert_eq!(b1[x], usize::from(x == dies));
        }
    }

    #[test]
    fn third_betti_number_after_refinement() {
        // the simple functor at the bottom of the cube needs three relations
        // at the top
        let g = grid(discrete_cube(&["a", "b", "c"]), vec![Q::new(-1, 2)]);
        let t = TameFunctor::new(g.clone(), bar(&g, "{}", &["{a}[{}:-1/2]", "{b}[{}:-1/2]", "{c}[{}:-1/2]"])).unwrap();
        let b3 = tame_betti(&t, 3).unwrap();
        assert_eq!(b3, betti_resolution(&t.values, 3).unwrap());
        let top = g.poset.index_of("{a,b,c}[{a,b}:-1/2;{a,c}:-1/2;{b,c}:-1/2]").unwrap();
        assert!(lacks_lower_value(&g, top));
        assert_eq!(b3.iter().sum::<usize>(), 1);
        assert_eq!(b3[top], 1);
    }

    #[test]
    fn refinement_agrees_with_resolutions_on_a_suspension() {
        let g = grid(suspension(&["x", "y", "z"]).unwrap(), vec![Q::new(-1, 2)]);
        let t = TameFunctor::new(g.clone(), bar(&g, "bottom", &["x[bottom:-1/2]", "y[bottom:-1/2]", "z[bottom:-1/2]"]))
            .unwrap();
        for i in 0..4 {
            assert_eq!(tame_betti(&t, i).unwrap(), betti_resolution(&t.values, i).unwrap(), "degree {i}");
        }
    }

    #[test]
    fn refinement_supplies_missing_products() {
        // two minima below three middle elements below a top: no products at all
        let covers: Vec<(&str, &str)> =
            ["x", "y", "w"].iter().flat_map(|m| [("u", *m), ("v", *m), (*m, "t")]).collect();
        let base =
            crate::poset::Poset::new(&["u", "v", "x", "y", "w", "t"], &covers, crate::poset::CoverPolicy::Reject)
                .unwrap();
        let g = grid(base, vec![Q::new(-1, 2)]);
        let x = g.poset.index_of("t[x:-1/2]").unwrap();
        assert!(!g.poset.parents_have_products(x));
        let t = TameFunctor::new(g.clone(), bar(&g, "u", &[])).unwrap();
        assert!(betti_koszul(&t.values, x, 3).is_err());
        let (fine, embed) = refine_tame(&t).unwrap();
        assert!(fine.grid.poset.parents_have_products(embed[x]));
        for i in 0..4 {
            assert_eq!(tame_betti(&t, i).unwrap(), betti_resolution(&t.values, i).unwrap(), "degree {i}");
        }
    }
}
